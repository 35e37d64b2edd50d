//! Elements of the Iwahori–Hecke algebra of `S_n` in the standard `T`-basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::qring::LaurentQ;

/// Finite combination `sum a_w T_w` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentQ>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    /// The basis element `T_w`.
    pub fn t(w: Permutation) -> Self {
        let mut out = Self::zero(w.n());
        out.terms.insert(w, LaurentQ::one());
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::t(Permutation::identity(n))
    }

    /// `T_{s_i}`.
    pub fn t_simple(n: usize, i: usize) -> Result<Self> {
        Ok(Self::t(Permutation::simple(n, i)?))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, LaurentQ)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: w.n() });
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentQ {
        self.terms.get(w).cloned().unwrap_or_else(LaurentQ::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Permutation, c: &LaurentQ) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(LaurentQ::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.add(&other.scale(&LaurentQ::from_i64(-1)))
    }

    pub fn scale(&self, c: &LaurentQ) -> HeckeElement {
        let mut out = Self::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(*w, &(x * c));
        }
        out
    }

    fn check_n(&self, other: &HeckeElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// `self * T_{s_i}`.
    pub fn mul_t_simple_right(&self, i: usize) -> HeckeElement {
        let q = LaurentQ::q();
        let q_minus_1 = &q - &LaurentQ::one();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.mul_simple_right(i);
            if w.has_right_descent(i) {
                out.add_term(*w, &(c * &q_minus_1));
                out.add_term(ws, &(c * &q));
            } else {
                out.add_term(ws, c);
            }
        }
        out
    }

    /// `T_{s_i} * self`.
    pub fn mul_t_simple_left(&self, i: usize) -> HeckeElement {
        let q = LaurentQ::q();
        let q_minus_1 = &q - &LaurentQ::one();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let sw = w.mul_simple_left(i);
            if w.has_left_descent(i) {
                out.add_term(*w, &(c * &q_minus_1));
                out.add_term(sw, &(c * &q));
            } else {
                out.add_term(sw, c);
            }
        }
        out
    }

    /// `self * T_{s_i}^{-1}`, using `T_s^{-1} = q^{-1} T_s + (q^{-1} - 1) T_e`.
    pub fn mul_t_simple_inverse_right(&self, i: usize) -> HeckeElement {
        let q_inv = LaurentQ::monomial(BigInt::one(), -2);
        let shifted = self.mul_t_simple_right(i).scale(&q_inv);
        let rest = self.scale(&(&q_inv - &LaurentQ::one()));
        shifted.add(&rest).expect("same rank")
    }

    /// `self * T_w`.
    pub fn mul_t_right(&self, w: &Permutation) -> Result<HeckeElement> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: w.n() });
        }
        let mut out = self.clone();
        for i in w.reduced_word() {
            out = out.mul_t_simple_right(i);
        }
        Ok(out)
    }

    /// Product in the Hecke algebra.
    pub fn multiply(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (y, c) in &other.terms {
            let part = self.mul_t_right(y)?.scale(c);
            for (w, x) in part.terms {
                out.add_term(w, &x);
            }
        }
        Ok(out)
    }

    /// The ring involution with `q^{1/2} -> q^{-1/2}` and `T_w -> T_{w^{-1}}^{-1}`.
    pub fn iota(&self) -> HeckeElement {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let mut image = Self::identity(self.n);
            for i in w.reduced_word() {
                image = image.mul_t_simple_inverse_right(i);
            }
            let cb = c.bar();
            for (z, x) in image.terms {
                out.add_term(z, &(&x * &cb));
            }
        }
        out
    }

    /// Coefficients evaluated at `q = 1`, i.e. the image in the group algebra.
    /// Fails if a half-integer power of `q` appears.
    pub fn at_q_one(&self) -> Result<BTreeMap<Permutation, BigInt>> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            if !c.has_integer_powers() {
                return Err(Error::PreconditionViolated("half-integer power of q".into()));
            }
            let v = c.at_one();
            if v != BigInt::from(0) {
                out.insert(*w, v);
            }
        }
        Ok(out)
    }
}

impl HeckeElement {
    /// LaTeX rendering, e.g. `\left(1 + q\right) T_{213}`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("\\left({}\\right) T_{{{w}}}", c.to_latex())).collect();
        parts.join(" + ")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*T[{w}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement(n={}, {self})", self.n)
    }
}
