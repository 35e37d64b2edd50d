//! Indifference graphs of Hessenberg functions and their chromatic
//! quasisymmetric functions, which are symmetric with coefficients in `N[q]`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::HessenbergFunction;
use crate::qring::IntPoly;
use crate::symfunc::{Basis, Partition, SymmetricFunction};

pub const CSF_BATCH_VERSION: u32 = 1;

/// Vertices `1..=n`; `{i, j}` with `i < j <= m(i)` are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndifferenceGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl IndifferenceGraph {
    pub fn new(m: &HessenbergFunction) -> Self {
        let n = m.n();
        let edges = (1..=n).flat_map(|i| (i + 1..=m.get(i)).map(move |j| (i, j))).collect();
        IndifferenceGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// For each vertex `j`, its neighbours `i < j`.
    fn earlier_neighbours(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n + 1];
        for &(i, j) in &self.edges {
            out[j].push(i);
        }
        out
    }
}

impl fmt::Display for IndifferenceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "n={} edges=[{}]", self.n, e.join(" "))
    }
}

/// Monomial coefficients of a chromatic function, one polynomial per
/// partition of `n` in [`Partition::all`] order. Hashable, used as a lookup key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CsfVector(pub Vec<IntPoly>);

impl CsfVector {
    pub fn to_symmetric(&self, n: usize) -> SymmetricFunction {
        let terms = Partition::all(n).into_iter().zip(self.0.iter().map(IntPoly::to_laurent));
        SymmetricFunction::from_integer_terms(Basis::Monomial, n, terms).expect("partitions of n")
    }

    /// `a q^{a_shift} self + b q^{b_shift} other`.
    pub fn combine(&self, a: i64, a_shift: usize, other: &CsfVector, b: i64, b_shift: usize) -> CsfVector {
        let v = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| {
                let mut p = IntPoly::zero();
                p.add_scaled(x, a, a_shift);
                p.add_scaled(y, b, b_shift);
                p
            })
            .collect();
        CsfVector(v)
    }

    /// `(sum_k c_k q^k) * self`.
    pub fn times(&self, poly: &IntPoly) -> CsfVector {
        CsfVector(self.0.iter().map(|x| x.mul(poly)).collect())
    }
}

/// Chromatic quasisymmetric function as a coefficient vector over `Partition::all(n)`.
pub fn csf_vector(m: &HessenbergFunction) -> CsfVector {
    let g = IndifferenceGraph::new(m);
    let nbrs = g.earlier_neighbours();
    let n = m.n();
    let coeffs = Partition::all(n)
        .iter()
        .map(|lam| {
            let mut counts = vec![0i64; g.edge_count() + 1];
            let mut caps: Vec<usize> = lam.parts().to_vec();
            let mut colour = vec![0usize; n + 1];
            colourings(1, n, &nbrs, &mut caps, &mut colour, 0, &mut counts);
            IntPoly::from_coeffs(counts)
        })
        .collect();
    CsfVector(coeffs)
}

// Colour vertices v..=n so that colour c is used exactly caps[c] more times.
fn colourings(
    v: usize,
    n: usize,
    nbrs: &[Vec<usize>],
    caps: &mut [usize],
    colour: &mut [usize],
    asc: usize,
    counts: &mut [i64],
) {
    if v > n {
        counts[asc] += 1;
        return;
    }
    for c in 0..caps.len() {
        if caps[c] == 0 || nbrs[v].iter().any(|&u| colour[u] == c) {
            continue;
        }
        let gained = nbrs[v].iter().filter(|&&u| colour[u] < c).count();
        caps[c] -= 1;
        colour[v] = c;
        colourings(v + 1, n, nbrs, caps, colour, asc + gained, counts);
        caps[c] += 1;
    }
}

/// `csf_q(G_m)` in the monomial basis.
pub fn csf(m: &HessenbergFunction) -> SymmetricFunction {
    csf_vector(m).to_symmetric(m.n())
}

/// Largest `n` accepted by [`csf_oracle`].
pub const ORACLE_MAX_N: usize = 6;

/// `csf_q(G_m)` by running over all `n^n` colourings with colours in `[n]`.
pub fn csf_oracle(m: &HessenbergFunction) -> Result<SymmetricFunction> {
    let n = m.n();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge(format!("colouring oracle is limited to n <= {ORACLE_MAX_N}")));
    }
    let g = IndifferenceGraph::new(m);
    let parts = Partition::all(n);
    let index: HashMap<Vec<usize>, usize> = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut v = p.parts().to_vec();
            v.resize(n, 0);
            (v, k)
        })
        .collect();
    let mut counts = vec![vec![0i64; g.edge_count() + 1]; parts.len()];
    let total = n.pow(n as u32);
    let mut kappa = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for slot in kappa.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        if g.edges.iter().any(|&(i, j)| kappa[i - 1] == kappa[j - 1]) {
            continue;
        }
        let mut content = vec![0usize; n];
        for &k in &kappa {
            content[k] += 1;
        }
        // only the monomial x^lambda itself carries the m_lambda coefficient
        if let Some(&k) = index.get(&content) {
            let asc = g.edges.iter().filter(|&&(i, j)| kappa[i - 1] < kappa[j - 1]).count();
            counts[k][asc] += 1;
        }
    }
    let vec = CsfVector(counts.into_iter().map(IntPoly::from_coeffs).collect());
    Ok(vec.to_symmetric(n))
}

/// Triples `(m0, m1, m2)` that agree away from one index `i`, with
/// `m0(i) = m1(i) - 1 = m2(i) - 2` and `m1(m1(i) + 1) = m1(m1(i))`.
pub fn modular_triples(n: usize) -> Vec<(HessenbergFunction, HessenbergFunction, HessenbergFunction)> {
    let mut out = Vec::new();
    for m1 in HessenbergFunction::enumerate(n) {
        if let Some(list) = modular_partners(&m1) {
            out.extend(list.into_iter().map(|(m0, m2)| (m0, m1.clone(), m2)));
        }
    }
    out
}

/// The `(m0, m2)` completing `m1` to a modular triple, for every admissible index.
pub fn modular_partners(m1: &HessenbergFunction) -> Option<Vec<(HessenbergFunction, HessenbergFunction)>> {
    let n = m1.n();
    let mut out = Vec::new();
    for i in 1..=n {
        let l = m1.get(i);
        if l + 1 > n || m1.get(l + 1) != m1.get(l) {
            continue;
        }
        let mut v0 = m1.values().to_vec();
        let mut v2 = v0.clone();
        v0[i - 1] = l - 1;
        v2[i - 1] = l + 1;
        if let (Ok(m0), Ok(m2)) = (HessenbergFunction::new(v0), HessenbergFunction::new(v2)) {
            out.push((m0, m2));
        }
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

/// Every Hessenberg function of one `n` with its chromatic function, plus a
/// reverse index from coefficient data to positions.
#[derive(Clone, Debug)]
pub struct CsfBatch {
    n: usize,
    entries: Vec<(HessenbergFunction, CsfVector)>,
    index: HashMap<CsfVector, Vec<usize>>,
}

impl CsfBatch {
    /// Computes all entries, in parallel on the current rayon pool.
    pub fn compute(n: usize) -> Self {
        let ms = HessenbergFunction::enumerate(n);
        let entries: Vec<(HessenbergFunction, CsfVector)> = ms
            .into_par_iter()
            .map(|m| {
                let v = csf_vector(&m);
                (m, v)
            })
            .collect();
        Self::from_entries(n, entries)
    }

    fn from_entries(n: usize, entries: Vec<(HessenbergFunction, CsfVector)>) -> Self {
        let mut index: HashMap<CsfVector, Vec<usize>> = HashMap::new();
        for (k, (_, v)) in entries.iter().enumerate() {
            index.entry(v.clone()).or_default().push(k);
        }
        CsfBatch { n, entries, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(HessenbergFunction, CsfVector)] {
        &self.entries
    }

    pub fn get(&self, m: &HessenbergFunction) -> Option<&CsfVector> {
        self.entries.iter().find(|(x, _)| x == m).map(|(_, v)| v)
    }

    /// Hessenberg functions whose chromatic function equals `v`.
    pub fn lookup(&self, v: &CsfVector) -> Vec<&HessenbergFunction> {
        self.index.get(v).map(|ks| ks.iter().map(|&k| &self.entries[k].0).collect()).unwrap_or_default()
    }

    pub fn to_json(&self) -> CsfBatchJson {
        CsfBatchJson {
            version: CSF_BATCH_VERSION,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(m, v)| CsfBatchEntry { m: m.clone(), csf: v.0.iter().map(|p| p.coeffs().to_vec()).collect() })
                .collect(),
        }
    }

    pub fn from_json(data: CsfBatchJson) -> Result<Self> {
        if data.version != CSF_BATCH_VERSION {
            return Err(Error::Cache(format!("csf batch version {} (expected {CSF_BATCH_VERSION})", data.version)));
        }
        let parts = Partition::all(data.n).len();
        let mut entries = Vec::with_capacity(data.entries.len());
        for e in data.entries {
            if e.m.n() != data.n || e.csf.len() != parts {
                return Err(Error::Cache("csf batch entry has the wrong size".into()));
            }
            entries.push((e.m, CsfVector(e.csf.into_iter().map(IntPoly::from_coeffs).collect())));
        }
        if entries.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>() != HessenbergFunction::enumerate(data.n) {
            return Err(Error::Cache("csf batch does not list every Hessenberg function in order".into()));
        }
        Ok(Self::from_entries(data.n, entries))
    }
}

/// On-disk batch: `csf[k]` is the coefficient list in `q` of `m_{lambda_k}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CsfBatchJson {
    pub version: u32,
    pub n: usize,
    pub entries: Vec<CsfBatchEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CsfBatchEntry {
    pub m: HessenbergFunction,
    pub csf: Vec<Vec<i64>>,
}
