//! Drivers for the smooth/codominant correspondence: reduction of smooth
//! permutations, moment graphs, the modular relation, the search for a
//! codominant replacement of a singular permutation, and decomposition of
//! `ch(C'_w)` into codominant pieces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::character::{ch_cprime_scaled, ch_scaled_combination, MAX_TABLE_N};
use crate::csf::CsfBatch;
use crate::error::{Error, Result};
use crate::kl::KlTable;
use crate::perm::{HessenbergFunction, Permutation};
use crate::qring::{IntPoly, LaurentQ};
use crate::symfunc::{Basis, Partition, SymmetricFunction};

/// `sum c_w q^{l(w)/2} C'_w` as coefficient pairs.
pub type Combination = Vec<(Permutation, LaurentQ)>;

/// Identities are checked by full character computation up to this rank.
pub const VERIFY_MAX_N: usize = 6;

/// Shared per-rank state: KL tables and chromatic batches.
#[derive(Default)]
pub struct Lab {
    kl: BTreeMap<usize, KlTable>,
    csf: BTreeMap<usize, Arc<CsfBatch>>,
}

impl Lab {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kl(&mut self, n: usize) -> &mut KlTable {
        self.kl.entry(n).or_insert_with(|| KlTable::new(n))
    }

    pub fn insert_kl(&mut self, table: KlTable) {
        self.kl.insert(table.n(), table);
    }

    pub fn kl_tables(&self) -> impl Iterator<Item = &KlTable> {
        self.kl.values()
    }

    pub fn csf_batch(&mut self, n: usize) -> Arc<CsfBatch> {
        self.csf.entry(n).or_insert_with(|| Arc::new(CsfBatch::compute(n))).clone()
    }

    pub fn insert_csf(&mut self, batch: CsfBatch) {
        self.csf.insert(batch.n(), Arc::new(batch));
    }

    pub fn has_csf(&self, n: usize) -> bool {
        self.csf.contains_key(&n)
    }

    pub fn csf_batches(&self) -> impl Iterator<Item = &CsfBatch> {
        self.csf.values().map(|b| b.as_ref())
    }
}

/// The codominant permutation sharing the Hessenberg function of a smooth `w`.
pub fn smooth_reduce(w: &Permutation) -> Result<Permutation> {
    Ok(w.hessenberg_of_smooth()?.codominant_permutation())
}

/// Transpositions `t <= w`; the edges are `{u, ut}` for every `u` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentGraph {
    n: usize,
    transpositions: BTreeSet<(usize, usize)>,
}

impl MomentGraph {
    /// Fast path through `m_w` for smooth `w`, Bruhat tests otherwise.
    pub fn of(w: &Permutation) -> Self {
        match w.hessenberg_of_smooth() {
            Ok(m) => Self::of_hessenberg(&m),
            Err(_) => Self::of_bruhat(w),
        }
    }

    pub fn of_bruhat(w: &Permutation) -> Self {
        MomentGraph { n: w.n(), transpositions: w.transpositions_below() }
    }

    pub fn of_hessenberg(m: &HessenbergFunction) -> Self {
        let n = m.n();
        let transpositions = (1..=n).flat_map(|i| (i + 1..=m.get(i)).map(move |j| (i, j))).collect();
        MomentGraph { n, transpositions }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transpositions(&self) -> &BTreeSet<(usize, usize)> {
        &self.transpositions
    }

    /// Number of edges of the graph on all of `S_n`.
    pub fn edge_count(&self) -> usize {
        (1..=self.n).product::<usize>() * self.transpositions.len() / 2
    }

    pub fn has_edge(&self, u: &Permutation, v: &Permutation) -> bool {
        if u.n() != self.n || v.n() != self.n {
            return false;
        }
        let Ok(t) = u.inverse().compose(v) else {
            return false;
        };
        let moved: Vec<usize> = (1..=self.n).filter(|&i| t.get(i) != i).collect();
        moved.len() == 2 && self.transpositions.contains(&(moved[0], moved[1]))
    }
}

impl fmt::Display for MomentGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.transpositions.iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationCase {
    SmoothCase,
    SingularCase,
}

/// `C'_w C'_s` expanded for smooth `w` with `sw < w < ws`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularRelation {
    pub case: RelationCase,
    pub w: Permutation,
    pub s: usize,
    pub ws: Permutation,
    pub z: Option<Permutation>,
    /// `Some(result)` when checked by character computation, `None` when asserted.
    pub verified: Option<bool>,
}

impl ModularRelation {
    pub fn identity(&self) -> String {
        let mut rhs = format!("ch(C'_{})", self.ws);
        if let Some(z) = &self.z {
            rhs.push_str(&format!(" + ch(C'_{z})"));
        }
        format!("(q^(-1/2) + q^(1/2)) ch(C'_{}) = {rhs}", self.w)
    }

    /// Both sides rescaled: `(1+q) ch(q^{l/2}C'_w)` against `ch(q^{(l+1)/2}C'_{ws}) + q ch(q^{(l-1)/2}C'_z)`.
    pub fn scaled_sides(&self) -> (Combination, Combination) {
        let lhs = vec![(self.w, LaurentQ::from_q_coeffs([1.into(), 1.into()]))];
        let mut rhs = vec![(self.ws, LaurentQ::one())];
        if let Some(z) = self.z {
            rhs.push((z, LaurentQ::q()));
        }
        (lhs, rhs)
    }
}

impl fmt::Display for ModularRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = match self.case {
            RelationCase::SmoothCase => "smooth case",
            RelationCase::SingularCase => "singular case",
        };
        let check = match self.verified {
            Some(true) => "verified",
            Some(false) => "FAILED verification",
            None => "asserted",
        };
        write!(f, "{case}: {} [{check}]", self.identity())
    }
}

/// The relation for smooth `w` and `s = s_i` with `sw < w < ws`; checks the
/// identity by computing characters when `n <= verify_max_n`.
pub fn modular_relation(kl: &mut KlTable, w: &Permutation, i: usize, verify_max_n: usize) -> Result<ModularRelation> {
    let n = w.n();
    if kl.n() != n {
        return Err(Error::SizeMismatch { expected: kl.n(), found: n });
    }
    if i == 0 || i >= n {
        return Err(Error::OutOfRange(format!("simple transposition s_{i} in S_{n}")));
    }
    if !w.is_smooth() {
        return Err(Error::PreconditionViolated(format!("{w} is singular")));
    }
    if !w.has_left_descent(i) || w.has_right_descent(i) {
        return Err(Error::PreconditionViolated(format!("need s_{i} {w} < {w} < {w} s_{i}")));
    }
    let ws = w.mul_simple_right(i);
    let zs: Vec<Permutation> = w.lower_covers().into_iter().filter(|z| z.has_right_descent(i)).collect();
    let case = match (ws.is_smooth(), zs.as_slice()) {
        (true, [z]) if z.is_smooth() => RelationCase::SmoothCase,
        (false, []) => RelationCase::SingularCase,
        _ => {
            return Err(Error::InternalContradiction(format!(
                "w = {w}, s = s_{i}: ws smooth = {}, covers z with zs < z: {zs:?}",
                ws.is_smooth()
            )))
        }
    };
    let mut rel = ModularRelation { case, w: *w, s: i, ws, z: zs.first().copied(), verified: None };
    if n <= verify_max_n.min(MAX_TABLE_N) {
        let (lhs, rhs) = rel.scaled_sides();
        let a = ch_scaled_combination(kl, &lhs)?;
        let b = ch_scaled_combination(kl, &rhs)?;
        rel.verified = Some(a.same_function(&b));
    }
    Ok(rel)
}

/// A pair solving `(1+q) csf(m1) = q^shift csf(m0) + csf(m2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub m0: HessenbergFunction,
    pub m2: HessenbergFunction,
    pub shift: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub m1: HessenbergFunction,
    pub general: bool,
    pub edges: usize,
    /// Number of `(m0, shift)` candidates examined.
    pub examined: usize,
    pub solutions: Vec<Solution>,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        !self.solutions.is_empty()
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.solutions.is_empty() {
            return write!(f, "NOT FOUND");
        }
        write!(f, "FOUND")?;
        for s in &self.solutions {
            write!(f, "\n  m0 = {}, m2 = {}, shift = {}", s.m0, s.m2, s.shift)?;
        }
        Ok(())
    }
}

/// Searches `batch` for `m0, m2` with `(1+q) csf(m1) = q csf(m0) + csf(m2)`,
/// where `m0` has one edge fewer and `m2` one edge more than `m1`.
///
/// With `general`, every shift `0..=E` and every pair is tried with no edge
/// filter; the trivial solution `csf(m0) = csf(m2) = csf(m1)` at shift 1 is skipped.
pub fn counterexample_search(batch: &CsfBatch, m1: &HessenbergFunction, general: bool) -> Result<SearchReport> {
    if m1.n() != batch.n() {
        return Err(Error::SizeMismatch { expected: batch.n(), found: m1.n() });
    }
    let v1 = batch.get(m1).ok_or_else(|| Error::InvalidHessenberg(m1.to_string()))?;
    let edges = m1.edge_count();
    let target = v1.combine(1, 0, v1, 1, 1);
    let shifts: Vec<usize> = if general { (0..=edges).collect() } else { vec![1] };
    let mut examined = 0;
    let mut solutions = Vec::new();
    for &shift in &shifts {
        for (m0, v0) in batch.entries() {
            if !general && m0.edge_count() + 1 != edges {
                continue;
            }
            examined += 1;
            let rest = target.combine(1, 0, v0, -1, shift);
            for m2 in batch.lookup(&rest) {
                if !general && m2.edge_count() != edges + 1 {
                    continue;
                }
                if general && shift == 1 && v0 == v1 && rest == *v1 {
                    continue;
                }
                solutions.push(Solution { m0: m0.clone(), m2: m2.clone(), shift });
            }
        }
    }
    Ok(SearchReport { m1: m1.clone(), general, edges, examined, solutions })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DecompositionMethod {
    /// `w` is smooth and shares its character with its codominant reduction.
    SmoothReduction,
    /// `w` singular, `ws` smooth and `sws < w` for the simple transposition `s`.
    SingularReduction { s: usize, left: bool },
    /// Nonnegative solve over `q`-degree slices in the `h`-basis.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Decomposition {
    Found {
        /// `ch(q^{l(w)/2}C'_w) = sum c_i ch(q^{l(w_i)/2}C'_{w_i})`.
        terms: Vec<(Permutation, LaurentQ)>,
        method: DecompositionMethod,
        verified: Option<bool>,
    },
    Unknown {
        reason: String,
    },
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decomposition::Found { terms, verified, .. } => {
                let parts: Vec<String> = terms.iter().map(|(w, c)| format!("({c}) [{w}]")).collect();
                let check = match verified {
                    Some(true) => "verified",
                    Some(false) => "FAILED verification",
                    None => "by theorem",
                };
                write!(f, "{} [{check}]", parts.join(" + "))
            }
            Decomposition::Unknown { reason } => write!(f, "UNKNOWN ({reason})"),
        }
    }
}

/// Default node budget for [`decompose_codominant`].
pub const DECOMPOSE_BUDGET: usize = 5_000_000;

/// Writes `ch(q^{l(w)/2}C'_w)` as an `N[q]`-combination of codominant
/// characters. Identities are verified when `n <= verify_max_n`.
pub fn decompose_codominant(kl: &mut KlTable, w: &Permutation, verify_max_n: usize, budget: usize) -> Result<Decomposition> {
    let n = w.n();
    if kl.n() != n {
        return Err(Error::SizeMismatch { expected: kl.n(), found: n });
    }
    let verify = n <= verify_max_n.min(MAX_TABLE_N);
    let check = |kl: &mut KlTable, terms: &[(Permutation, LaurentQ)]| -> Result<Option<bool>> {
        if !verify {
            return Ok(None);
        }
        let lhs = ch_cprime_scaled(kl, w)?;
        Ok(Some(lhs.same_function(&ch_scaled_combination(kl, terms)?)))
    };
    if w.is_smooth() {
        let terms = vec![(smooth_reduce(w)?, LaurentQ::one())];
        let verified = check(kl, &terms)?;
        return Ok(Decomposition::Found { terms, method: DecompositionMethod::SmoothReduction, verified });
    }
    if let Some((s, left, v)) = singular_reduction(w) {
        let terms = vec![(smooth_reduce(&v)?, LaurentQ::from_q_coeffs([1.into(), 1.into()]))];
        let verified = check(kl, &terms)?;
        return Ok(Decomposition::Found { terms, method: DecompositionMethod::SingularReduction { s, left }, verified });
    }
    if n > MAX_TABLE_N {
        return Ok(Decomposition::Unknown { reason: format!("no reduction applies and n = {n} exceeds {MAX_TABLE_N}") });
    }
    let target = h_vector(&ch_cprime_scaled(kl, w)?)?;
    let l = w.length();
    let mut candidates = Vec::new();
    for m in HessenbergFunction::enumerate(n) {
        let c = m.codominant_permutation();
        if c.length() <= l {
            let v = h_vector(&ch_cprime_scaled(kl, &c)?)?;
            candidates.push(Candidate { w: c, vector: v, lo: 0, hi: l - c.length() });
        }
    }
    match solve_slices(&target, &candidates, budget) {
        SliceOutcome::Solved(coeffs) => {
            let terms: Vec<(Permutation, LaurentQ)> = candidates
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(cand, c)| (cand.w, c.to_laurent()))
                .collect();
            let verified = check(kl, &terms)?;
            Ok(Decomposition::Found { terms, method: DecompositionMethod::Search, verified })
        }
        SliceOutcome::Exhausted => Ok(Decomposition::Unknown { reason: "no nonnegative solution".into() }),
        SliceOutcome::Budget => Ok(Decomposition::Unknown { reason: format!("search budget of {budget} nodes spent") }),
        SliceOutcome::Unsupported(r) => Ok(Decomposition::Unknown { reason: r }),
    }
}

/// A simple `s` with `ws` smooth and `sws < w` (or the mirror with `sw`).
fn singular_reduction(w: &Permutation) -> Option<(usize, bool, Permutation)> {
    let n = w.n();
    for i in 1..n {
        if w.has_right_descent(i) {
            let v = w.mul_simple_right(i);
            let sws = v.mul_simple_left(i);
            if v.is_smooth() && sws != *w && sws.bruhat_le(w).unwrap_or(false) {
                return Some((i, false, v));
            }
        }
    }
    for i in 1..n {
        if w.has_left_descent(i) {
            let v = w.mul_simple_left(i);
            let sws = v.mul_simple_right(i);
            if v.is_smooth() && sws != *w && sws.bruhat_le(w).unwrap_or(false) {
                return Some((i, true, v));
            }
        }
    }
    None
}

/// Integer `h`-coordinates over `Partition::all(n)`, one polynomial in `q` each.
pub fn h_vector(f: &SymmetricFunction) -> Result<Vec<IntPoly>> {
    let h = f.to_basis(Basis::Homogeneous);
    Partition::all(f.degree())
        .iter()
        .map(|lam| {
            let c = h.coeff(lam);
            c.to_integral()
                .and_then(|c| IntPoly::from_laurent(&c))
                .ok_or_else(|| Error::InternalContradiction(format!("h-coefficient {c} at {lam} is not in Z[q]")))
        })
        .collect()
}

/// A basis vector for [`solve_slices`] whose coefficient may use degrees `lo..=hi`.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub w: Permutation,
    pub vector: Vec<IntPoly>,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceOutcome {
    Solved(Vec<IntPoly>),
    Exhausted,
    Budget,
    Unsupported(String),
}

/// Finds `c_i in N[q]`, `deg` within `lo..=hi`, with `sum c_i v_i = target`.
///
/// Works upward one `q`-degree at a time: the degree-`d` slice of the residual
/// must be a nonnegative combination of the constant terms of the candidates.
/// Requires every candidate's constant term to be nonzero and nonnegative.
pub fn solve_slices(target: &[IntPoly], candidates: &[Candidate], budget: usize) -> SliceOutcome {
    for c in candidates {
        let base: Vec<i64> = c.vector.iter().map(|p| p.coeff(0)).collect();
        if base.iter().any(|&x| x < 0) || base.iter().all(|&x| x == 0) {
            return SliceOutcome::Unsupported(format!("constant term of {} is not a nonzero nonnegative vector", c.w));
        }
    }
    let top = target.iter().filter_map(IntPoly::degree).max();
    let Some(top) = top else {
        return SliceOutcome::Solved(vec![IntPoly::zero(); candidates.len()]);
    };
    let prune = candidates.iter().all(|c| c.vector.iter().all(|p| p.coeffs().iter().all(|&x| x >= 0)));
    let mut state = Search { candidates, budget, prune, nodes: 0, coeffs: vec![Vec::new(); candidates.len()] };
    match state.degree(target.to_vec(), 0, top) {
        Some(true) => SliceOutcome::Solved(state.coeffs.iter().map(|c| IntPoly::from_coeffs(c.clone())).collect()),
        Some(false) => SliceOutcome::Exhausted,
        None => SliceOutcome::Budget,
    }
}

struct Search<'a> {
    candidates: &'a [Candidate],
    budget: usize,
    /// With nonnegative candidates the residual must stay nonnegative.
    prune: bool,
    nodes: usize,
    coeffs: Vec<Vec<i64>>,
}

impl Search<'_> {
    // Some(true): solved; Some(false): no solution below; None: out of budget.
    fn degree(&mut self, residual: Vec<IntPoly>, d: usize, top: usize) -> Option<bool> {
        if d > top {
            return Some(residual.iter().all(IntPoly::is_zero));
        }
        let slice: Vec<i64> = residual.iter().map(|p| p.coeff(d)).collect();
        if slice.iter().any(|&x| x < 0) {
            return Some(false);
        }
        let active: Vec<usize> = (0..self.candidates.len())
            .filter(|&k| self.candidates[k].lo <= d && d <= self.candidates[k].hi)
            .collect();
        let mut pick = vec![0i64; self.candidates.len()];
        self.slice(&residual, &slice, &active, 0, &mut pick, d, top)
    }

    #[allow(clippy::too_many_arguments)]
    fn slice(
        &mut self,
        residual: &[IntPoly],
        rest: &[i64],
        active: &[usize],
        pos: usize,
        pick: &mut [i64],
        d: usize,
        top: usize,
    ) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if pos == active.len() {
            if rest.iter().any(|&x| x != 0) {
                return Some(false);
            }
            let mut next = residual.to_vec();
            for &k in active {
                if pick[k] != 0 {
                    for (r, v) in next.iter_mut().zip(&self.candidates[k].vector) {
                        r.add_scaled(v, -pick[k], d);
                    }
                }
            }
            if self.prune && next.iter().any(|p| p.coeffs().iter().any(|&x| x < 0)) {
                return Some(false);
            }
            let saved = self.coeffs.clone();
            for &k in active {
                if pick[k] != 0 {
                    let c = &mut self.coeffs[k];
                    if c.len() <= d {
                        c.resize(d + 1, 0);
                    }
                    c[d] = pick[k];
                }
            }
            let r = self.degree(next, d + 1, top);
            if r != Some(true) {
                self.coeffs = saved;
            }
            return r;
        }
        let k = active[pos];
        let base: Vec<i64> = self.candidates[k].vector.iter().map(|p| p.coeff(0)).collect();
        let max = base.iter().zip(rest).filter(|(b, _)| **b > 0).map(|(b, r)| r / b).min().unwrap_or(0);
        for x in (0..=max).rev() {
            let next: Vec<i64> = rest.iter().zip(&base).map(|(r, b)| r - x * b).collect();
            pick[k] = x;
            match self.slice(residual, &next, active, pos + 1, pick, d, top) {
                Some(false) => {}
                other => {
                    pick[k] = 0;
                    return other;
                }
            }
        }
        pick[k] = 0;
        Some(false)
    }
}
