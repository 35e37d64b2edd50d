//! Homogeneous symmetric functions with `q`-coefficients in the monomial,
//! elementary, complete homogeneous, power-sum and Schur bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qring::{LaurentQ, RatLaurent};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `lambda_i` with 1-based index, 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// All partitions of `n`, largest first in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> BigInt {
        let conj = self.conjugate();
        let mut denom = BigInt::one();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j - 1) + (conj.0[j] - i - 1) + 1;
                denom *= hook;
            }
        }
        factorial(self.size()) / denom
    }

    /// `prod_i [lambda_i]_q!`.
    pub fn q_factorial(&self) -> LaurentQ {
        let mut out = LaurentQ::one();
        for &k in &self.0 {
            for j in 1..=k {
                out = &out * &LaurentQ::from_q_coeffs((0..j).map(|_| BigInt::one()));
            }
        }
        out
    }

    /// Standard Young tableaux as row-index sequences: `rows[k]` is the row
    /// (0-based) holding entry `k + 1`.
    pub fn standard_tableaux(&self) -> Vec<Vec<usize>> {
        fn rec(shape: &[usize], filled: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == shape.iter().sum::<usize>() {
                out.push(cur.clone());
                return;
            }
            for r in 0..shape.len() {
                if filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]) {
                    filled[r] += 1;
                    cur.push(r);
                    rec(shape, filled, cur, out);
                    cur.pop();
                    filled[r] -= 1;
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.0, &mut vec![0; self.0.len()], &mut Vec::new(), &mut out);
        out
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(s.to_string())))
                .collect::<Result<Vec<_>>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidPartition(s.to_string())))
                .collect::<Result<Vec<_>>>()?
        };
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "e")]
    Elementary,
    #[serde(rename = "h")]
    Homogeneous,
    #[serde(rename = "p")]
    PowerSum,
    #[serde(rename = "s")]
    Schur,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::Monomial, Basis::Elementary, Basis::Homogeneous, Basis::PowerSum, Basis::Schur];

    pub fn letter(self) -> char {
        match self {
            Basis::Monomial => 'm',
            Basis::Elementary => 'e',
            Basis::Homogeneous => 'h',
            Basis::PowerSum => 'p',
            Basis::Schur => 's',
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "m" => Ok(Basis::Monomial),
            "e" => Ok(Basis::Elementary),
            "h" => Ok(Basis::Homogeneous),
            "p" => Ok(Basis::PowerSum),
            "s" => Ok(Basis::Schur),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }
}

type Matrix = Vec<Vec<BigRational>>;

/// Transition matrices for one degree; row `k` of `to_m[b]` expands
/// `b_{parts[k]}` in the monomial basis, and `from_m[b]` is its inverse.
struct Transitions {
    index: HashMap<Partition, usize>,
    parts: Vec<Partition>,
    to_m: Vec<Matrix>,
    from_m: Vec<Matrix>,
}

fn transitions(n: usize) -> Arc<Transitions> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transitions>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("transition cache poisoned").get(&n) {
        return t.clone();
    }
    let built = Arc::new(build_transitions(n));
    cache.lock().expect("transition cache poisoned").entry(n).or_insert(built).clone()
}

fn build_transitions(n: usize) -> Transitions {
    let parts = Partition::all(n);
    let index = parts.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let to_m: Vec<Matrix> = Basis::ALL
        .iter()
        .map(|&b| {
            parts
                .iter()
                .map(|lam| {
                    parts
                        .iter()
                        .map(|mu| BigRational::from_integer(monomial_coefficient(b, lam, mu)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let from_m = to_m.iter().map(|m| invert(m).expect("transition matrices are invertible")).collect();
    Transitions { index, parts, to_m, from_m }
}

/// Coefficient of `m_mu` in `b_lambda`.
fn monomial_coefficient(b: Basis, lam: &Partition, mu: &Partition) -> BigInt {
    match b {
        Basis::Monomial => BigInt::from(u8::from(lam == mu)),
        Basis::Elementary => count_matrices(lam.parts(), mu.parts(), true),
        Basis::Homogeneous => count_matrices(lam.parts(), mu.parts(), false),
        Basis::PowerSum => count_part_assignments(lam.parts(), mu.parts()),
        Basis::Schur => kostka(lam, mu),
    }
}

/// Matrices with row sums `rows` and column sums `cols`; entries in {0,1}
/// when `binary`, otherwise arbitrary nonnegative integers.
fn count_matrices(rows: &[usize], cols: &[usize], binary: bool) -> BigInt {
    fn rec(
        rows: &[usize],
        caps: Vec<usize>,
        binary: bool,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        let Some((&r, rest)) = rows.split_first() else {
            return BigInt::from(u8::from(caps.iter().all(|&c| c == 0)));
        };
        let key = (rows.len(), caps.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut cur = caps.clone();
        fill(0, r, &mut cur, binary, &mut |next: &[usize]| {
            let mut sorted = next.to_vec();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            total += rec(rest, sorted, binary, memo);
        });
        memo.insert(key, total.clone());
        total
    }
    // distribute `left` units over columns j.., bounded by remaining capacity
    fn fill(j: usize, left: usize, caps: &mut Vec<usize>, binary: bool, emit: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            emit(caps);
            return;
        }
        if j == caps.len() {
            return;
        }
        let room: usize = caps[j..].iter().map(|&c| if binary { c.min(1) } else { c }).sum();
        if room < left {
            return;
        }
        let max = if binary { caps[j].min(1) } else { caps[j] }.min(left);
        for take in 0..=max {
            caps[j] -= take;
            fill(j + 1, left - take, caps, binary, emit);
            caps[j] += take;
        }
    }
    let mut memo = HashMap::new();
    rec(rows, cols.to_vec(), binary, &mut memo)
}

/// Functions sending each part of `lam` to a part of `mu` so that the parts
/// landing on `mu_j` sum to `mu_j`.
fn count_part_assignments(lam: &[usize], mu: &[usize]) -> BigInt {
    fn rec(lam: &[usize], caps: &mut Vec<usize>) -> BigInt {
        let Some((&a, rest)) = lam.split_first() else {
            return BigInt::from(u8::from(caps.iter().all(|&c| c == 0)));
        };
        let mut total = BigInt::zero();
        for j in 0..caps.len() {
            if caps[j] >= a {
                caps[j] -= a;
                total += rec(rest, caps);
                caps[j] += a;
            }
        }
        total
    }
    rec(lam, &mut mu.to_vec())
}

/// Semistandard tableaux of shape `lam` and content `mu`, built one
/// horizontal strip at a time.
pub fn kostka(lam: &Partition, mu: &Partition) -> BigInt {
    fn rec(lam: &[usize], mu: &[usize], shape: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), BigInt>) -> BigInt {
        let Some((&k, rest)) = mu.split_first() else {
            return BigInt::from(u8::from(shape.as_slice() == lam));
        };
        let key = (mu.len(), shape.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut next = shape.clone();
        strips(lam, &shape, 0, k, &mut next, &mut |s: &[usize]| {
            total += rec(lam, rest, s.to_vec(), memo);
        });
        memo.insert(key, total.clone());
        total
    }
    fn strips(lam: &[usize], shape: &[usize], i: usize, left: usize, next: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            emit(next);
            return;
        }
        if i == lam.len() {
            return;
        }
        let upper = if i == 0 { lam[0] } else { lam[i].min(shape[i - 1]) };
        let max_add = upper.saturating_sub(shape[i]).min(left);
        for add in 0..=max_add {
            next[i] = shape[i] + add;
            strips(lam, shape, i + 1, left - add, next, emit);
        }
        next[i] = shape[i];
    }
    if lam.size() != mu.size() {
        return BigInt::zero();
    }
    let mut memo = HashMap::new();
    rec(lam.parts(), mu.parts(), vec![0; lam.len()], &mut memo)
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = &*d - &(&factor * s);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Homogeneous symmetric function of a fixed degree in one basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricFunction {
    basis: Basis,
    degree: usize,
    terms: BTreeMap<Partition, RatLaurent>,
}

/// Outcome of a positivity test; `witness` names a failing coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub positive: bool,
    pub witness: Option<(Partition, RatLaurent)>,
}

impl SymmetricFunction {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymmetricFunction { basis, degree, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: Basis, lam: Partition) -> Self {
        let mut out = Self::zero(basis, lam.size());
        out.terms.insert(lam, RatLaurent::one());
        out
    }

    pub fn from_terms(
        basis: Basis,
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, RatLaurent)>,
    ) -> Result<Self> {
        let mut out = Self::zero(basis, degree);
        for (lam, c) in terms {
            if lam.size() != degree {
                return Err(Error::SizeMismatch { expected: degree, found: lam.size() });
            }
            out.add_term(lam, &c);
        }
        Ok(out)
    }

    pub fn from_integer_terms(
        basis: Basis,
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, LaurentQ)>,
    ) -> Result<Self> {
        Self::from_terms(basis, degree, terms.into_iter().map(|(l, c)| (l, c.to_rational())))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lam: &Partition) -> RatLaurent {
        self.terms.get(lam).cloned().unwrap_or_else(RatLaurent::zero)
    }

    pub fn add_term(&mut self, lam: Partition, c: &RatLaurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lam.clone()).or_insert_with(RatLaurent::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lam);
        }
    }

    fn check_compatible(&self, other: &SymmetricFunction) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::SizeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Sum, expressed in the basis of `self`.
    pub fn add(&self, other: &SymmetricFunction) -> Result<SymmetricFunction> {
        self.check_compatible(other)?;
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (lam, c) in other.terms {
            out.add_term(lam, &c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymmetricFunction) -> Result<SymmetricFunction> {
        self.add(&other.scale(&RatLaurent::constant(-BigRational::one())))
    }

    pub fn scale(&self, c: &RatLaurent) -> SymmetricFunction {
        let mut out = Self::zero(self.basis, self.degree);
        for (lam, x) in &self.terms {
            out.add_term(lam.clone(), &(x * c));
        }
        out
    }

    pub fn scale_integer(&self, c: &LaurentQ) -> SymmetricFunction {
        self.scale(&c.to_rational())
    }

    /// The same function in another basis.
    pub fn to_basis(&self, target: Basis) -> SymmetricFunction {
        if target == self.basis {
            return self.clone();
        }
        let t = transitions(self.degree);
        let to_m = &t.to_m[self.basis.index()];
        let mut in_m: Vec<RatLaurent> = vec![RatLaurent::zero(); t.parts.len()];
        for (lam, c) in &self.terms {
            let row = &to_m[t.index[lam]];
            for (k, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    in_m[k] += &c.scale(a);
                }
            }
        }
        let mut out = Self::zero(target, self.degree);
        if target == Basis::Monomial {
            for (k, c) in in_m.into_iter().enumerate() {
                out.add_term(t.parts[k].clone(), &c);
            }
            return out;
        }
        let from_m = &t.from_m[target.index()];
        for (k, c) in in_m.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, a) in from_m[k].iter().enumerate() {
                if !a.is_zero() {
                    out.add_term(t.parts[j].clone(), &c.scale(a));
                }
            }
        }
        out
    }

    /// Equality as functions, regardless of basis.
    pub fn same_function(&self, other: &SymmetricFunction) -> bool {
        self.degree == other.degree && (self.is_zero() && other.is_zero() || self.to_basis(other.basis) == *other)
    }

    /// The involution exchanging `e_lambda` and `h_lambda`, returned in the basis of `self`.
    pub fn omega(&self) -> SymmetricFunction {
        let in_h = self.to_basis(Basis::Homogeneous);
        let swapped = SymmetricFunction { basis: Basis::Elementary, degree: self.degree, terms: in_h.terms };
        swapped.to_basis(self.basis)
    }

    /// Substitute `q = 1` in every coefficient.
    pub fn at_q_one(&self) -> SymmetricFunction {
        let mut out = Self::zero(self.basis, self.degree);
        for (lam, c) in &self.terms {
            out.add_term(lam.clone(), &RatLaurent::constant(c.at_one()));
        }
        out
    }

    /// Whether every coefficient in `basis` is a polynomial in `q^{1/2}` with
    /// nonnegative integer coefficients.
    pub fn positivity(&self, basis: Basis) -> Positivity {
        let f = self.to_basis(basis);
        for (lam, c) in &f.terms {
            let ok = c.terms().all(|(e, x)| e >= 0 && x.is_integer() && !x.is_negative());
            if !ok {
                return Positivity { positive: false, witness: Some((lam.clone(), c.clone())) };
            }
        }
        Positivity { positive: true, witness: None }
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_terms(&self) -> Option<Vec<(Partition, LaurentQ)>> {
        self.terms.iter().map(|(l, c)| c.to_integral().map(|c| (l.clone(), c))).collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(lam, c)| serde_json::json!({ "partition": lam, "coeff": c.to_json_value() }))
            .collect();
        serde_json::json!({ "basis": self.basis, "degree": self.degree, "terms": terms })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let basis: Basis = serde_json::from_value(v["basis"].clone())?;
        let degree: usize = serde_json::from_value(v["degree"].clone())?;
        let raw = v["terms"].as_array().ok_or_else(|| Error::Parse("terms must be an array".into()))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let lam: Partition = serde_json::from_value(t["partition"].clone())?;
            terms.push((lam, RatLaurent::from_json_value(&t["coeff"])?));
        }
        Self::from_terms(basis, degree, terms)
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(lam, c)| {
                let idx: Vec<String> = lam.parts().iter().map(|p| p.to_string()).collect();
                let sym = format!("{}_{{{}}}", self.basis.letter(), idx.join(","));
                if c == &RatLaurent::one() {
                    sym
                } else {
                    format!("\\left({}\\right) {sym}", c.to_latex())
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(lam, c)| {
                let sym = format!("{}[{lam}]", self.basis.letter());
                if c == &RatLaurent::one() {
                    sym
                } else {
                    format!("({c}) {sym}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricFunction(deg {}, {self})", self.degree)
    }
}

impl Serialize for SymmetricFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}
