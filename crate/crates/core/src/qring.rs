//! Exact Laurent polynomials in a formal square root `q^{1/2}`.
//!
//! Exponents are stored as integers counting powers of `q^{1/2}`, so `q^{l/2}`
//! prefactors are ordinary monomials. [`LaurentQ`] has arbitrary-precision
//! integer coefficients; [`RatLaurent`] allows rational coefficients (needed
//! for power-sum coordinates of symmetric functions). [`IntPoly`] is a dense
//! `i64` polynomial in `q` used on hot paths; it panics rather than wrapping
//! on overflow.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient ring requirements for [`Laurent`].
pub trait Coeff:
    Clone
    + Eq
    + Hash
    + Zero
    + One
    + Signed
    + PartialOrd
    + fmt::Display
    + FromStr
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Option<Self>;
    fn is_integral(&self) -> bool;
}

impl Coeff for BigInt {
    fn to_json(&self) -> serde_json::Value {
        match self.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(self.to_string()),
        }
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Number(x) => x.as_i64().map(BigInt::from),
            serde_json::Value::String(s) => s.parse().ok(),
            _ => None,
        }
    }

    fn is_integral(&self) -> bool {
        true
    }
}

impl Coeff for BigRational {
    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            if let Some(v) = self.numer().to_i64() {
                return serde_json::Value::from(v);
            }
        }
        serde_json::Value::String(self.to_string())
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Number(x) => x.as_i64().map(|i| BigRational::from_integer(i.into())),
            serde_json::Value::String(s) => s.parse().ok(),
            _ => None,
        }
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Sparse Laurent polynomial in `q^{1/2}`: half-exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

pub type LaurentQ = Laurent<BigInt>;
pub type RatLaurent = Laurent<BigRational>;

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^{half_exp / 2}`.
    pub fn monomial(c: C, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        Laurent { terms }
    }

    /// `q^{1/2}`.
    pub fn q_half() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn q() -> Self {
        Self::monomial(C::one(), 2)
    }

    /// `q^{-1/2} + q^{1/2}`.
    pub fn quantum_two() -> Self {
        Self::monomial(C::one(), -1) + Self::monomial(C::one(), 1)
    }

    /// Polynomial in `q` from coefficients `c_0, c_1, ...`.
    pub fn from_q_coeffs(coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            out.add_term(2 * k as i64, c);
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, half_exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(half_exp).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, half_exp: i64) -> C {
        self.terms.get(&half_exp).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `q^k` for integer `k`.
    pub fn coeff_q(&self, k: i64) -> C {
        self.coeff(2 * k)
    }

    /// `(half_exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_integer_powers(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// The scalar involution `q^{1/2} -> q^{-1/2}`.
    pub fn bar(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplication by `q^{half / 2}`.
    pub fn shift_half(&self, half: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (e + half, c.clone())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(&e, x)| (e, x.clone() * c.clone())).collect() }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))))
    }

    pub fn props(&self) -> PolyProps {
        PolyProps::of(self)
    }

    /// Canonical text: `c*q^(k/2)` terms joined by `+`, or `0`.
    pub fn to_canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms.iter().map(|(e, c)| format!("{c}*q^({e}/2)")).collect::<Vec<_>>().join("+")
    }

    pub fn parse_canonical(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in t.split('+') {
            let bad = || Error::Parse(format!("Laurent term {term:?}"));
            let (c, rest) = term.split_once("*q^(").ok_or_else(bad)?;
            let e = rest.strip_suffix("/2)").ok_or_else(bad)?;
            let c: C = c.trim().parse().map_err(|_| bad())?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.terms.iter().map(|(e, c)| (e.to_string(), c.to_json())).collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("Laurent JSON must be an object".into()))?;
        let mut out = Self::zero();
        for (k, c) in obj {
            let e: i64 = k.parse().map_err(|_| Error::Parse(format!("exponent key {k:?}")))?;
            let c = C::from_json(c).ok_or_else(|| Error::Parse(format!("coefficient {c}")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// LaTeX rendering, e.g. `1 + 2q + q^{3/2}`.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_text(e, latex);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else if a.is_integral() {
                out.push_str(&format!("{a}{mono}"));
            } else {
                out.push_str(&format!("({a}){mono}"));
            }
        }
        out
    }
}

fn monomial_text(half: i64, latex: bool) -> String {
    match half {
        0 => String::new(),
        2 => "q".to_string(),
        e if e % 2 == 0 => {
            if latex {
                format!("q^{{{}}}", e / 2)
            } else {
                format!("q^{}", e / 2)
            }
        }
        e => {
            if latex {
                format!("q^{{{e}/2}}")
            } else {
                format!("q^({e}/2)")
            }
        }
    }
}

impl LaurentQ {
    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn to_rational(&self) -> RatLaurent {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

impl RatLaurent {
    /// The same polynomial with integer coefficients, if every coefficient is integral.
    pub fn to_integral(&self) -> Option<LaurentQ> {
        if self.terms.values().all(|c| c.is_integer()) {
            Some(self.map_coeffs(|c| c.to_integer()))
        } else {
            None
        }
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.render(false))
    }
}

impl<C: Coeff> Serialize for Laurent<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Laurent<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &Laurent<C>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl<C: Coeff> Add<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Sub<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Mul<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: &Laurent<C>) -> Laurent<C> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

/// Shape statistics of a coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyProps {
    /// Smallest exponent, in units of `q^{1/2}`.
    pub min_half_exp: Option<i64>,
    pub max_half_exp: Option<i64>,
    pub nonnegative: bool,
    /// Coefficient vector equals its reverse.
    pub palindromic: bool,
    /// Coefficients weakly rise then weakly fall, with no internal zeros.
    pub unimodal: bool,
}

impl PolyProps {
    fn of<C: Coeff>(p: &Laurent<C>) -> Self {
        let (Some(lo), Some(hi)) = (p.min_half_exp(), p.max_half_exp()) else {
            return PolyProps {
                min_half_exp: None,
                max_half_exp: None,
                nonnegative: true,
                palindromic: true,
                unimodal: true,
            };
        };
        // step through exponents of one parity when every term shares it
        let step = if p.terms.keys().all(|e| (e - lo) % 2 == 0) { 2 } else { 1 };
        let seq: Vec<C> = (0..=(hi - lo) / step).map(|k| p.coeff(lo + k * step)).collect();
        let nonnegative = seq.iter().all(|c| !c.is_negative());
        let palindromic = seq.iter().eq(seq.iter().rev());
        PolyProps {
            min_half_exp: Some(lo),
            max_half_exp: Some(hi),
            nonnegative,
            palindromic,
            unimodal: is_unimodal(&seq),
        }
    }
}

fn is_unimodal<C: Coeff>(seq: &[C]) -> bool {
    let mut k = 0;
    while k + 1 < seq.len() && seq[k] <= seq[k + 1] {
        k += 1;
    }
    while k + 1 < seq.len() && seq[k] >= seq[k + 1] {
        k += 1;
    }
    k + 1 >= seq.len() && seq.iter().all(|c| !c.is_zero())
}

/// Dense polynomial in `q` with `i64` coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    c: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { c: vec![1] }
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        IntPoly { c }
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPoly { c: v }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    /// `self += k * q^shift * other`.
    pub fn add_scaled(&mut self, other: &IntPoly, k: i64, shift: usize) {
        if k == 0 || other.is_zero() {
            return;
        }
        let need = other.c.len() + shift;
        if self.c.len() < need {
            self.c.resize(need, 0);
        }
        for (i, &x) in other.c.iter().enumerate() {
            let prod = x.checked_mul(k).expect("IntPoly coefficient overflow");
            let slot = &mut self.c[i + shift];
            *slot = slot.checked_add(prod).expect("IntPoly coefficient overflow");
        }
        self.trim();
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &IntPoly, b: &IntPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let need = a.c.len() + b.c.len() - 1;
        if self.c.len() < need {
            self.c.resize(need, 0);
        }
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                let prod = x.checked_mul(y).expect("IntPoly coefficient overflow");
                let slot = &mut self.c[i + j];
                *slot = slot.checked_add(prod).expect("IntPoly coefficient overflow");
            }
        }
        self.trim();
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        out.add_product(self, other);
        out
    }

    pub fn to_laurent(&self) -> LaurentQ {
        LaurentQ::from_q_coeffs(self.c.iter().map(|&x| BigInt::from(x)))
    }

    /// Inverse of [`IntPoly::to_laurent`] for polynomials in `q` with small coefficients.
    pub fn from_laurent(p: &LaurentQ) -> Option<IntPoly> {
        let mut c = Vec::new();
        for (e, x) in p.terms() {
            if e < 0 || e % 2 != 0 {
                return None;
            }
            let k = (e / 2) as usize;
            if c.len() <= k {
                c.resize(k + 1, 0);
            }
            c[k] = x.to_i64()?;
        }
        Some(IntPoly::from_coeffs(c))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_laurent())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}
