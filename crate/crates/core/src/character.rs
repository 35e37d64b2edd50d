//! Irreducible characters of the Hecke algebra `H_n` and the Frobenius map.
//!
//! Each irreducible is realized in Young's seminormal form with the quadratic
//! relation `(T_s - q)(T_s + 1) = 0`. Character values are polynomials in `q`;
//! they are obtained by evaluating traces at the integer points `q = 2, 3, ...`
//! and interpolating exactly.
//!
//! Single values use exact rational arithmetic along a reduced word. Full
//! tables evaluate the representation modulo several 31-bit primes and recover
//! each integer trace by the Chinese remainder theorem. The lift is exact
//! because at a real point `q0 > 1` the representation is conjugate to an
//! orthogonal form in which `T_s` is symmetric with eigenvalues `q0` and `-1`,
//! so `|chi(T_w)(q0)| <= f * q0^l(w)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::kl::KlTable;
use crate::perm::Permutation;
use crate::qring::{IntPoly, LaurentQ};
use crate::symfunc::{Basis, Partition, SymmetricFunction};

/// Largest `n` for which full character tables are built.
pub const MAX_TABLE_N: usize = 7;

/// Action of one simple generator on one standard tableau.
#[derive(Clone, Copy, Debug)]
enum Action {
    /// `i`, `i+1` in the same row: eigenvalue `q`.
    SameRow,
    /// `i`, `i+1` in the same column: eigenvalue `-1`.
    SameColumn,
    /// Swapping `i`, `i+1` gives tableau `partner`; `axial` is
    /// `content(i+1) - content(i)`. `upper` means `i` sits in a higher row than `i+1`.
    Pair { partner: usize, axial: i32, upper: bool },
}

/// Standard tableaux of one shape with the seminormal action data.
#[derive(Clone, Debug)]
pub struct SeminormalRep {
    lambda: Partition,
    dim: usize,
    actions: Vec<Vec<Action>>,
}

impl SeminormalRep {
    pub fn new(lambda: &Partition) -> Self {
        let n = lambda.size();
        let tableaux = lambda.standard_tableaux();
        let index: HashMap<Vec<usize>, usize> =
            tableaux.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let mut actions = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let acts = tableaux
                .iter()
                .map(|t| {
                    let (ra, rb) = (t[i - 1], t[i]);
                    let col = |k: usize| t[..k].iter().filter(|&&r| r == t[k]).count();
                    let (ca, cb) = (col(i - 1), col(i));
                    if ra == rb {
                        Action::SameRow
                    } else if ca == cb {
                        Action::SameColumn
                    } else {
                        let mut s = t.clone();
                        s.swap(i - 1, i);
                        let axial = (cb as i32 - rb as i32) - (ca as i32 - ra as i32);
                        Action::Pair { partner: index[&s], axial, upper: ra < rb }
                    }
                })
                .collect();
            actions.push(acts);
        }
        SeminormalRep { lambda: lambda.clone(), dim: tableaux.len(), actions }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generator matrices at `q = q0`, in sparse column form.
    fn generators<F: Field>(&self, q0: &F) -> Vec<Generator<F>> {
        let one = F::one();
        let q_minus_1 = q0.sub(&one);
        let q_inv = q0.inv();
        self.actions
            .iter()
            .map(|acts| {
                let mut diag = Vec::with_capacity(self.dim);
                let mut off = Vec::with_capacity(self.dim);
                for act in acts {
                    match *act {
                        Action::SameRow => {
                            diag.push(q0.clone());
                            off.push(None);
                        }
                        Action::SameColumn => {
                            diag.push(F::zero().sub(&one));
                            off.push(None);
                        }
                        Action::Pair { partner, axial, upper } => {
                            let a = diag_entry(q0, &q_inv, &q_minus_1, axial);
                            let a_partner = diag_entry(q0, &q_inv, &q_minus_1, -axial);
                            let coeff = if upper { one.clone() } else { q0.add(&a.mul(&a_partner)) };
                            diag.push(a);
                            off.push(Some((partner, coeff)));
                        }
                    }
                }
                Generator { diag, off }
            })
            .collect()
    }
}

// (q - 1) q^r / (q^r - 1)
fn diag_entry<F: Field>(q0: &F, q_inv: &F, q_minus_1: &F, r: i32) -> F {
    let base = if r > 0 { q0 } else { q_inv };
    let mut qr = F::one();
    for _ in 0..r.unsigned_abs() {
        qr = qr.mul(base);
    }
    q_minus_1.mul(&qr).mul(&qr.sub(&F::one()).inv())
}

/// Column `t` of the generator matrix: `diag[t] e_t + off[t].1 e_{off[t].0}`.
#[derive(Clone, Debug)]
struct Generator<F> {
    diag: Vec<F>,
    off: Vec<Option<(usize, F)>>,
}

impl<F: Field> Generator<F> {
    fn dense(&self) -> Vec<Vec<F>> {
        let d = self.diag.len();
        let mut m = vec![vec![F::zero(); d]; d];
        for t in 0..d {
            m[t][t] = self.diag[t].clone();
            if let Some((u, c)) = &self.off[t] {
                m[*u][t] = c.clone();
            }
        }
        m
    }

    /// `m <- m * G` for a row-major `d x d` matrix.
    fn right_multiply(&self, m: &[F], out: &mut [F]) {
        let d = self.diag.len();
        for r in 0..d {
            let row = &m[r * d..(r + 1) * d];
            let dst = &mut out[r * d..(r + 1) * d];
            for t in 0..d {
                let mut v = row[t].mul(&self.diag[t]);
                if let Some((u, c)) = &self.off[t] {
                    v = v.add(&row[*u].mul(c));
                }
                dst[t] = v;
            }
        }
    }
}

fn dense_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let d = a.len();
    let mut out = vec![vec![F::zero(); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

/// Check the quadratic, braid and commutation relations.
fn check_relations<F: Field>(gens: &[Generator<F>], q0: &F, lambda: &Partition) -> Result<()> {
    let dense: Vec<Vec<Vec<F>>> = gens.iter().map(|g| g.dense()).collect();
    let d = gens.first().map_or(0, |g| g.diag.len());
    let shift = |m: &[Vec<F>], c: &F| -> Vec<Vec<F>> {
        let mut out = m.to_vec();
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = row[i].add(c);
        }
        out
    };
    let fail = |what: String| Err(Error::InternalContradiction(format!("seminormal form of {lambda:?}: {what}")));
    let neg_q = F::zero().sub(q0);
    for (i, g) in dense.iter().enumerate() {
        let prod = dense_mul(&shift(g, &neg_q), &shift(g, &F::one()));
        if prod.iter().flatten().any(|x| !x.is_zero()) {
            return fail(format!("quadratic relation fails for s_{}", i + 1));
        }
    }
    for i in 0..dense.len() {
        for j in i + 1..dense.len() {
            let (a, b) = (&dense[i], &dense[j]);
            let ok = if j == i + 1 {
                dense_mul(&dense_mul(a, b), a) == dense_mul(&dense_mul(b, a), b)
            } else {
                dense_mul(a, b) == dense_mul(b, a)
            };
            if !ok {
                return fail(format!("braid relation fails for s_{}, s_{} (dim {d})", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Minimal field interface for the two evaluation routes.
pub(crate) trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Residue modulo the prime `P < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Fp<const P: u64>(u64);

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_u64(v: u64) -> Self {
        Fp(v % P)
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverting zero modulo {P}");
        Fp(inv_mod(self.0, P))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

pub(crate) const PRIMES: [u64; 8] =
    [2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497];

/// Sample points `q = 2, 3, ...`.
fn sample_point(k: usize) -> u64 {
    k as u64 + 2
}

/// Exact interpolation from values at `q = 2, 3, ..., len + 1`.
fn interpolate(values: &[BigInt]) -> Result<IntPoly> {
    let m = values.len();
    // forward differences; Newton coefficient d_k = Delta^k v_0 / k!
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(m);
    let mut fact = BigInt::one();
    for k in 0..m {
        if k > 0 {
            fact *= k;
            for j in 0..m - k {
                diffs[j] = &diffs[j + 1] - &diffs[j];
            }
        }
        let (quot, rem) = diffs[0].div_rem(&fact);
        if !rem.is_zero() {
            return Err(Error::Interpolation(format!("non-integral divided difference at order {k}")));
        }
        newton.push(quot);
    }
    // Horner: P = d_0 + (q - x_0)(d_1 + (q - x_1)(d_2 + ...))
    let mut poly: Vec<BigInt> = Vec::new();
    for k in (0..m).rev() {
        let x = BigInt::from(sample_point(k));
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &x;
        }
        next[0] += &newton[k];
        poly = next;
    }
    let coeffs: Option<Vec<i64>> = poly.iter().map(|c| c.to_i64()).collect();
    let coeffs = coeffs.ok_or_else(|| Error::Interpolation("coefficient exceeds 64 bits".into()))?;
    Ok(IntPoly::from_coeffs(coeffs))
}

/// `chi^lambda(T_w)` computed with exact rationals along the given word.
pub fn chi_along_word(lambda: &Partition, n: usize, word: &[usize]) -> Result<LaurentQ> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch { expected: n, found: lambda.size() });
    }
    if word.iter().any(|&i| i == 0 || i >= n) {
        return Err(Error::OutOfRange(format!("generator index in {word:?} for S_{n}")));
    }
    let rep = SeminormalRep::new(lambda);
    let d = rep.dim;
    // one extra point beyond the degree bound serves as a consistency check
    let points = word.len() + 2;
    let mut values = Vec::with_capacity(points);
    for k in 0..points {
        let q0 = BigRational::from_u64(sample_point(k));
        let gens = rep.generators(&q0);
        // dense rational relation checks are costly; the modular route checks every point
        if k == 0 {
            check_relations(&gens, &q0, lambda)?;
        }
        let mut m: Vec<BigRational> = (0..d * d)
            .map(|k| if k % (d + 1) == 0 { <BigRational as Field>::one() } else { <BigRational as Field>::zero() })
            .collect();
        let mut scratch = m.clone();
        for &i in word {
            gens[i - 1].right_multiply(&m, &mut scratch);
            std::mem::swap(&mut m, &mut scratch);
        }
        let trace = (0..d).fold(<BigRational as Field>::zero(), |acc, k| acc + &m[k * (d + 1)]);
        if !trace.is_integer() {
            return Err(Error::Interpolation(format!("non-integral trace {trace} at q = {}", sample_point(k))));
        }
        values.push(trace.to_integer());
    }
    let p = interpolate(&values)?;
    if p.degree().unwrap_or(0) > word.len() {
        return Err(Error::Interpolation(format!("degree exceeds word length {}", word.len())));
    }
    Ok(p.to_laurent())
}

/// `chi^lambda(T_w)`.
pub fn chi(lambda: &Partition, w: &Permutation) -> Result<LaurentQ> {
    chi_along_word(lambda, w.n(), &w.reduced_word())
}

/// Values `chi^lambda(T_w)` for every partition and permutation of a fixed `n`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// `values[lambda][w]`.
    values: Vec<Vec<IntPoly>>,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn value(&self, lambda_index: usize, w: &Permutation) -> &IntPoly {
        &self.values[lambda_index][self.index[w]]
    }

    pub fn chi(&self, lambda: &Partition, w: &Permutation) -> Result<LaurentQ> {
        let li = self
            .partitions
            .iter()
            .position(|p| p == lambda)
            .ok_or_else(|| Error::SizeMismatch { expected: self.n, found: lambda.size() })?;
        if w.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: w.n() });
        }
        Ok(self.value(li, w).to_laurent())
    }

    /// `sum_lambda (sum_w c_w chi^lambda(T_w)) s_lambda` for small-integer coefficients.
    pub fn frobenius_int(&self, terms: &[(Permutation, IntPoly)]) -> Vec<IntPoly> {
        self.partitions
            .iter()
            .enumerate()
            .map(|(li, _)| {
                let mut acc = IntPoly::zero();
                for (w, c) in terms {
                    acc.add_product(c, self.value(li, w));
                }
                acc
            })
            .collect()
    }

    pub fn to_json(&self) -> CharacterTableJson {
        CharacterTableJson {
            n: self.n,
            rows: self.partitions.clone(),
            cols: self.perms.clone(),
            values: self.values.iter().map(|row| row.iter().map(IntPoly::to_laurent).collect()).collect(),
        }
    }

    pub fn from_json(data: CharacterTableJson) -> Result<Self> {
        let n = data.n;
        if data.rows != Partition::all(n) || data.cols != Permutation::all(n) {
            return Err(Error::Cache("character table rows or columns out of order".into()));
        }
        let values = data
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| IntPoly::from_laurent(p).ok_or_else(|| Error::Cache("bad character value".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != data.rows.len() || values.iter().any(|r| r.len() != data.cols.len()) {
            return Err(Error::Cache("character table has the wrong shape".into()));
        }
        let index = data.cols.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        Ok(CharacterTable { n, partitions: data.rows, perms: data.cols, index, values })
    }
}

/// JSON form: `values[row][col]` is `chi^{rows[row]}(T_{cols[col]})`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub n: usize,
    pub rows: Vec<Partition>,
    pub cols: Vec<Permutation>,
    pub values: Vec<Vec<LaurentQ>>,
}

fn table_cache() -> &'static Mutex<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Install a table (e.g. loaded from disk) in the process-wide cache.
pub fn install_table(table: CharacterTable) -> Arc<CharacterTable> {
    let t = Arc::new(table);
    table_cache().lock().expect("character cache poisoned").insert(t.n, t.clone());
    t
}

/// The table for `n` if this process has already built or installed it.
pub fn cached_table(n: usize) -> Option<Arc<CharacterTable>> {
    table_cache().lock().expect("character cache poisoned").get(&n).cloned()
}

/// The full character table of `H_n`, built once per process.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    if n > MAX_TABLE_N {
        return Err(Error::TooLarge(format!("character tables are limited to n <= {MAX_TABLE_N}")));
    }
    if let Some(t) = table_cache().lock().expect("character cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let table = build_table(n)?;
    Ok(install_table(table))
}

/// Depth-first spanning tree of `S_n`: the parent of `w != e` is `w s` for
/// the smallest right descent `s` of `w`.
struct SpanningTree {
    /// `(node index, parent index, generator)` in depth-first order.
    order: Vec<(usize, usize, usize)>,
}

fn spanning_tree(n: usize, index: &HashMap<Permutation, usize>) -> SpanningTree {
    let e = Permutation::identity(n);
    let mut order = Vec::with_capacity(index.len());
    // (node, parent index, generator); recorded when popped so that every
    // parent precedes its subtree
    let mut stack = vec![(e, usize::MAX, 0)];
    while let Some((v, parent, gen)) = stack.pop() {
        let vi = index[&v];
        if parent != usize::MAX {
            order.push((vi, parent, gen));
        }
        for i in (1..n).rev() {
            if v.has_right_descent(i) {
                continue;
            }
            let child = v.mul_simple_right(i);
            if child.right_descents().first() == Some(&i) {
                stack.push((child, vi, i));
            }
        }
    }
    SpanningTree { order }
}

fn build_table(n: usize) -> Result<CharacterTable> {
    let perms = Permutation::all(n);
    let index: HashMap<Permutation, usize> = perms.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let partitions = Partition::all(n);
    let tree = spanning_tree(n, &index);
    let max_len = n * n.saturating_sub(1) / 2;
    let points = max_len + 2;

    let mut values = Vec::with_capacity(partitions.len());
    for lambda in &partitions {
        let rep = SeminormalRep::new(lambda);
        // |trace| <= dim * q0^len at every sample point
        let bound = BigInt::from(rep.dim) * BigInt::from(sample_point(points - 1)).pow(max_len as u32);
        let mut modulus = BigInt::one();
        let mut nprimes = 0;
        while modulus <= &bound * 2 {
            if nprimes == PRIMES.len() {
                return Err(Error::TooLarge(format!("trace bound for n = {n} exceeds available primes")));
            }
            modulus *= PRIMES[nprimes];
            nprimes += 1;
        }
        // residues[prime][point][w]
        let residues: Vec<Vec<Vec<u64>>> = (0..nprimes)
            .map(|pi| {
                (0..points)
                    .map(|k| traces_mod(pi, &rep, sample_point(k), &tree, perms.len()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut row = Vec::with_capacity(perms.len());
        for (wi, w) in perms.iter().enumerate() {
            let vals: Vec<BigInt> = (0..points)
                .map(|k| crt(&(0..nprimes).map(|pi| residues[pi][k][wi]).collect::<Vec<_>>()))
                .collect();
            let p = interpolate(&vals)?;
            if p.degree().unwrap_or(0) > w.length() {
                return Err(Error::Interpolation(format!("chi^{lambda:?}(T_{w}) exceeds degree {}", w.length())));
            }
            row.push(p);
        }
        values.push(row);
    }
    Ok(CharacterTable { n, partitions, perms, index, values })
}

fn traces_mod(prime_index: usize, rep: &SeminormalRep, q0: u64, tree: &SpanningTree, count: usize) -> Result<Vec<u64>> {
    macro_rules! dispatch {
        ($($k:literal),*) => {
            match prime_index {
                $($k => traces_mod_p::<{ PRIMES[$k] }>(rep, q0, tree, count),)*
                _ => unreachable!(),
            }
        };
    }
    dispatch!(0, 1, 2, 3, 4, 5, 6, 7)
}

fn traces_mod_p<const P: u64>(rep: &SeminormalRep, q0: u64, tree: &SpanningTree, count: usize) -> Result<Vec<u64>> {
    let d = rep.dim;
    let q = Fp::<P>::from_u64(q0);
    let gens = rep.generators(&q);
    check_relations(&gens, &q, &rep.lambda)?;
    let mut out = vec![0u64; count];
    let identity: Vec<Fp<P>> = (0..d * d).map(|k| if k % (d + 1) == 0 { Fp(1) } else { Fp(0) }).collect();
    out[0] = d as u64 % P;
    // matrices along the current root path, indexed by node
    let mut stack: Vec<(usize, Vec<Fp<P>>)> = vec![(0, identity)];
    for &(node, parent, gen) in &tree.order {
        while stack.last().map(|(v, _)| *v) != Some(parent) {
            stack.pop();
        }
        let mut next = vec![Fp(0); d * d];
        gens[gen - 1].right_multiply(&stack.last().expect("parent on stack").1, &mut next);
        let mut tr = Fp::<P>(0);
        for k in 0..d {
            tr = tr.add(&next[k * (d + 1)]);
        }
        out[node] = tr.0;
        stack.push((node, next));
    }
    Ok(out)
}

/// Symmetric residue of the integer with the given residues modulo `PRIMES[..k]`.
fn crt(residues: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (k, &r) in residues.iter().enumerate() {
        let p = BigInt::from(PRIMES[k]);
        // x + m t = r (mod p)
        let diff = (BigInt::from(r) - &x).mod_floor(&p);
        let m_inv = BigInt::from(inv_mod(m.mod_floor(&p).to_u64().expect("reduced below p"), PRIMES[k]));
        let t = (diff * m_inv).mod_floor(&p);
        x += &m * t;
        m *= p;
    }
    if &x * 2 > m {
        x - m
    } else {
        x
    }
}

// Fermat inverse modulo a prime below 2^32.
fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// `chi^lambda(a)` extended linearly over the `T`-basis.
pub fn chi_element(lambda: &Partition, a: &HeckeElement) -> Result<LaurentQ> {
    if lambda.size() != a.n() {
        return Err(Error::SizeMismatch { expected: a.n(), found: lambda.size() });
    }
    let table = if a.n() <= MAX_TABLE_N { Some(character_table(a.n())?) } else { None };
    let mut acc = LaurentQ::zero();
    for (w, c) in a.terms() {
        let v = match &table {
            Some(t) => t.chi(lambda, w)?,
            None => chi(lambda, w)?,
        };
        acc += &(c * &v);
    }
    Ok(acc)
}

/// `ch(a) = sum_lambda chi^lambda(a) s_lambda`.
pub fn frobenius_ch(a: &HeckeElement) -> Result<SymmetricFunction> {
    let n = a.n();
    let mut terms = Vec::new();
    for lambda in Partition::all(n) {
        terms.push((lambda.clone(), chi_element(&lambda, a)?));
    }
    SymmetricFunction::from_integer_terms(Basis::Schur, n, terms)
}

/// `ch(q^{l(w)/2} C'_w)` in the Schur basis, using the KL column of `w`.
pub fn ch_cprime_scaled(kl: &mut KlTable, w: &Permutation) -> Result<SymmetricFunction> {
    let n = w.n();
    let col = kl.column(w)?;
    if n <= MAX_TABLE_N {
        let table = character_table(n)?;
        let coeffs = table.frobenius_int(&col);
        let terms = table.partitions().iter().cloned().zip(coeffs.iter().map(IntPoly::to_laurent));
        return SymmetricFunction::from_integer_terms(Basis::Schur, n, terms);
    }
    let element = HeckeElement::from_terms(n, col.iter().map(|(z, p)| (*z, p.to_laurent())))?;
    frobenius_ch(&element)
}

/// `ch` of a combination of normalized `C'` elements, given in scaled form
/// `sum c_w q^{l(w)/2} C'_w` with polynomial `c_w`.
pub fn ch_scaled_combination(kl: &mut KlTable, coords: &[(Permutation, LaurentQ)]) -> Result<SymmetricFunction> {
    let n = coords.first().map_or(0, |(w, _)| w.n());
    let mut out = SymmetricFunction::zero(Basis::Schur, n);
    for (w, c) in coords {
        out = out.add(&ch_cprime_scaled(kl, w)?.scale_integer(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn primes_are_prime() {
        for &p in &PRIMES {
            assert!((2..=46341u64).all(|d| d * d > p || p % d != 0), "{p}");
        }
    }

    #[test]
    fn one_dimensional_characters() {
        for w in Permutation::all(4) {
            let l = w.length() as i64;
            assert_eq!(chi(&part("4"), &w).unwrap(), LaurentQ::monomial(1.into(), 2 * l));
            let sign = if l % 2 == 0 { 1 } else { -1 };
            assert_eq!(chi(&part("1111"), &w).unwrap(), LaurentQ::from_i64(sign));
        }
        assert_eq!(chi(&part("2"), &p("21")).unwrap(), LaurentQ::q());
        assert_eq!(chi(&part("11"), &p("21")).unwrap(), LaurentQ::from_i64(-1));
    }

    #[test]
    fn identity_gives_dimension() {
        for lam in Partition::all(5) {
            let v = chi(&lam, &Permutation::identity(5)).unwrap();
            assert_eq!(v, LaurentQ::constant(lam.num_standard_tableaux()));
        }
    }

    #[test]
    fn table_agrees_with_rational_route() {
        let t = character_table(4).unwrap();
        for lam in Partition::all(4) {
            for w in Permutation::all(4) {
                assert_eq!(t.chi(&lam, &w).unwrap(), chi(&lam, &w).unwrap(), "{lam:?} {w}");
            }
        }
    }

    #[test]
    fn small_frobenius_images() {
        let mut kl = KlTable::new(2);
        let ch = ch_cprime_scaled(&mut kl, &p("21")).unwrap();
        let expect = SymmetricFunction::basis_element(Basis::Homogeneous, part("2"))
            .scale_integer(&part("2").q_factorial());
        assert!(ch.same_function(&expect));
        let mut kl = KlTable::new(3);
        let ch = ch_cprime_scaled(&mut kl, &p("321")).unwrap();
        let expect = SymmetricFunction::basis_element(Basis::Homogeneous, part("3"))
            .scale_integer(&part("3").q_factorial());
        assert!(ch.same_function(&expect));
        let id = frobenius_ch(&HeckeElement::identity(3)).unwrap();
        assert!(id.same_function(&SymmetricFunction::basis_element(Basis::Homogeneous, part("111"))));
    }

    #[test]
    fn element_values() {
        let c = crate::kl::cprime(&p("21")).unwrap();
        assert_eq!(chi_element(&part("2"), &c).unwrap(), IntPoly::from_coeffs(vec![1, 1]).to_laurent());
        assert!(chi_element(&part("11"), &c).unwrap().is_zero());
        assert!(chi_element(&part("3"), &c).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let poly = [3i64, -1, 0, 4];
        let vals: Vec<BigInt> = (0..6)
            .map(|k| {
                let x = sample_point(k) as i64;
                BigInt::from(poly.iter().rev().fold(0i64, |acc, c| acc * x + c))
            })
            .collect();
        assert_eq!(interpolate(&vals).unwrap(), IntPoly::from_coeffs(poly.to_vec()));
        assert!(interpolate(&[BigInt::from(0), BigInt::from(1), BigInt::from(3)]).is_err());
    }
}
