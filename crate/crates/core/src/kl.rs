//! Kazhdan–Lusztig polynomials and the `C'` basis.
//!
//! Everything is carried in scaled form: the column of `w` is
//! `q^{l(w)/2} C'_w = sum_z P_{z,w} T_z`, which has polynomial coefficients.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::perm::Permutation;
use crate::qring::{IntPoly, LaurentQ};

pub const KL_TABLE_VERSION: u32 = 1;

/// `(z, P_{z,w})` for every `z <= w`, sorted by `z`.
pub type Column = Arc<Vec<(Permutation, IntPoly)>>;

/// Memoized columns `P_{-,w}`, filled on demand.
#[derive(Clone, Debug)]
pub struct KlTable {
    n: usize,
    columns: HashMap<Permutation, Column>,
}

impl KlTable {
    pub fn new(n: usize) -> Self {
        KlTable { n, columns: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of memoized columns.
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    fn check(&self, w: &Permutation) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: w.n() });
        }
        Ok(())
    }

    /// The column of `w`: `P_{z,w}` for all `z <= w`.
    pub fn column(&mut self, w: &Permutation) -> Result<Column> {
        self.check(w)?;
        Ok(self.column_unchecked(w))
    }

    fn column_unchecked(&mut self, w: &Permutation) -> Column {
        if let Some(c) = self.columns.get(w) {
            return c.clone();
        }
        let col = match w.right_descents().first() {
            None => Arc::new(vec![(*w, IntPoly::one())]),
            Some(&s) => Arc::new(self.build_column(w, s)),
        };
        self.columns.insert(*w, col.clone());
        col
    }

    // w = v s with l(v) = l(w) - 1:
    // col(v) (T_e + T_s) = col(w) + sum_{z < v, zs < z} mu(z, v) q^{(l(w) - l(z))/2} col(z)
    fn build_column(&mut self, w: &Permutation, s: usize) -> Vec<(Permutation, IntPoly)> {
        let v = w.mul_simple_right(s);
        let col_v = self.column_unchecked(&v);
        let lw = w.length();
        let lv = lw - 1;

        let mut acc: HashMap<Permutation, IntPoly> = HashMap::with_capacity(col_v.len() * 2);
        let mut corrections = Vec::new();
        for (x, p) in col_v.iter() {
            let xs = x.mul_simple_right(s);
            let shift = usize::from(x.has_right_descent(s));
            acc.entry(*x).or_default().add_scaled(p, 1, shift);
            acc.entry(xs).or_default().add_scaled(p, 1, shift);
            if shift == 1 && x != &v {
                let gap = lv - x.length();
                if gap % 2 == 1 {
                    let m = p.coeff((gap - 1) / 2);
                    if m != 0 {
                        corrections.push((*x, m, (lw - x.length()) / 2));
                    }
                }
            }
        }
        for (z, m, shift) in corrections {
            let col_z = self.column_unchecked(&z);
            for (y, p) in col_z.iter() {
                acc.entry(*y).or_default().add_scaled(p, -m, shift);
            }
        }
        let mut out: Vec<(Permutation, IntPoly)> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        out.sort_unstable_by_key(|a| a.0);
        out
    }

    /// `P_{z,w}` as a small-integer polynomial; zero unless `z <= w`.
    pub fn p_int(&mut self, z: &Permutation, w: &Permutation) -> Result<IntPoly> {
        self.check(z)?;
        let col = self.column(w)?;
        Ok(match col.binary_search_by(|(y, _)| y.cmp(z)) {
            Ok(k) => col[k].1.clone(),
            Err(_) => IntPoly::zero(),
        })
    }

    pub fn p(&mut self, z: &Permutation, w: &Permutation) -> Result<LaurentQ> {
        Ok(self.p_int(z, w)?.to_laurent())
    }

    /// Coefficient of `q^{(l(w) - l(z) - 1)/2}` in `P_{z,w}`; 0 when `z` is not
    /// below `w` or the length gap is even.
    pub fn mu(&mut self, z: &Permutation, w: &Permutation) -> Result<i64> {
        let p = self.p_int(z, w)?;
        let (lz, lw) = (z.length(), w.length());
        if p.is_zero() || lw <= lz || (lw - lz) % 2 == 0 {
            return Ok(0);
        }
        Ok(p.coeff((lw - lz - 1) / 2))
    }

    /// `q^{l(w)/2} C'_w` in the `T`-basis.
    pub fn cprime_scaled(&mut self, w: &Permutation) -> Result<HeckeElement> {
        let col = self.column(w)?;
        HeckeElement::from_terms(self.n, col.iter().map(|(z, p)| (*z, p.to_laurent())))
    }

    /// `C'_w` itself, with the `q^{-l(w)/2}` prefactor applied.
    pub fn cprime_normalized(&mut self, w: &Permutation) -> Result<HeckeElement> {
        let prefactor = LaurentQ::monomial(BigInt::one(), -(w.length() as i64));
        Ok(self.cprime_scaled(w)?.scale(&prefactor))
    }

    /// `C'_w C'_{s_i}` in `C'`-coordinates (normalized basis elements).
    pub fn cprime_times_cs(&mut self, w: &Permutation, i: usize) -> Result<Vec<(Permutation, LaurentQ)>> {
        self.check(w)?;
        if i == 0 || i >= self.n {
            return Err(Error::OutOfRange(format!("simple transposition s_{i} in S_{}", self.n)));
        }
        if w.has_right_descent(i) {
            return Ok(vec![(*w, LaurentQ::quantum_two())]);
        }
        let mut out = vec![(w.mul_simple_right(i), LaurentQ::one())];
        let col = self.column(w)?;
        for (z, _) in col.iter() {
            if z != w && z.has_right_descent(i) {
                let m = self.mu(z, w)?;
                if m != 0 {
                    out.push((*z, LaurentQ::from_i64(m)));
                }
            }
        }
        out.sort_by_key(|a| a.0);
        Ok(out)
    }

    /// Fill columns for every `y <= w`.
    pub fn fill_interval(&mut self, w: &Permutation) -> Result<()> {
        self.check(w)?;
        for y in w.lower_interval() {
            self.column_unchecked(&y);
        }
        Ok(())
    }

    /// All stored `(z, w, P_{z,w})`, ordered by length of `w`, then `w`, then
    /// length of `z`, then `z`.
    pub fn entries(&self) -> Vec<(Permutation, Permutation, IntPoly)> {
        let mut ws: Vec<&Permutation> = self.columns.keys().collect();
        ws.sort_by_key(|w| (w.length(), **w));
        let mut out = Vec::new();
        for w in ws {
            let mut col: Vec<&(Permutation, IntPoly)> = self.columns[w].iter().collect();
            col.sort_by_key(|(z, _)| (z.length(), *z));
            out.extend(col.into_iter().map(|(z, p)| (*z, *w, p.clone())));
        }
        out
    }

    pub fn to_json(&self) -> KlTableJson {
        KlTableJson {
            version: KL_TABLE_VERSION,
            n: self.n,
            entries: self.entries().into_iter().map(|(z, w, p)| (z, w, p.coeffs().to_vec())).collect(),
        }
    }

    pub fn from_json(data: KlTableJson) -> Result<Self> {
        if data.version != KL_TABLE_VERSION {
            return Err(Error::Cache(format!("KL table version {} (expected {KL_TABLE_VERSION})", data.version)));
        }
        let mut cols: HashMap<Permutation, Vec<(Permutation, IntPoly)>> = HashMap::new();
        for (z, w, c) in data.entries {
            if z.n() != data.n || w.n() != data.n {
                return Err(Error::SizeMismatch { expected: data.n, found: z.n().max(w.n()) });
            }
            cols.entry(w).or_default().push((z, IntPoly::from_coeffs(c)));
        }
        let columns = cols
            .into_iter()
            .map(|(w, mut col)| {
                col.sort_unstable_by_key(|a| a.0);
                (w, Arc::new(col))
            })
            .collect();
        Ok(KlTable { n: data.n, columns })
    }
}

/// On-disk form of a [`KlTable`]; polynomials are coefficient lists in `q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KlTableJson {
    pub version: u32,
    pub n: usize,
    pub entries: Vec<(Permutation, Permutation, Vec<i64>)>,
}

/// `P_{z,w}` computed with a fresh table.
pub fn kl_polynomial(z: &Permutation, w: &Permutation) -> Result<LaurentQ> {
    KlTable::new(w.n()).p(z, w)
}

pub fn mu(z: &Permutation, w: &Permutation) -> Result<i64> {
    KlTable::new(w.n()).mu(z, w)
}

/// `q^{l(w)/2} C'_w` in the `T`-basis.
pub fn cprime(w: &Permutation) -> Result<HeckeElement> {
    KlTable::new(w.n()).cprime_scaled(w)
}

/// Expand a combination of normalized `C'` elements in the `T`-basis.
pub fn cprime_combination(table: &mut KlTable, coords: &[(Permutation, LaurentQ)]) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(table.n());
    for (w, c) in coords {
        out = out.add(&table.cprime_normalized(w)?.scale(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(c: &[i64]) -> LaurentQ {
        IntPoly::from_coeffs(c.to_vec()).to_laurent()
    }

    #[test]
    fn known_polynomials() {
        let e4 = Permutation::identity(4);
        assert_eq!(kl_polynomial(&e4, &p("3412")).unwrap(), poly(&[1, 1]));
        assert_eq!(kl_polynomial(&e4, &p("4231")).unwrap(), poly(&[1, 1]));
        assert_eq!(kl_polynomial(&p("2143"), &p("3412")).unwrap(), poly(&[1]));
        assert_eq!(kl_polynomial(&p("2143"), &p("4231")).unwrap(), poly(&[1, 1]));
        assert_eq!(kl_polynomial(&p("1324"), &p("4231")).unwrap(), poly(&[1]));
        let w = p("245361");
        assert_eq!(kl_polynomial(&w, &w).unwrap(), poly(&[1]));
        assert_eq!(kl_polynomial(&Permutation::identity(6), &w).unwrap(), poly(&[1]));
        // not comparable
        assert!(kl_polynomial(&p("2134"), &p("1243")).unwrap().is_zero());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&p("12"), &p("21")).unwrap(), 1);
        assert_eq!(mu(&p("123"), &p("321")).unwrap(), 0);
        assert_eq!(mu(&p("2134"), &p("1243")).unwrap(), 0);
        assert_eq!(mu(&p("2143"), &p("4231")).unwrap(), 1);
        assert_eq!(mu(&p("1324"), &p("3412")).unwrap(), 1);
        assert_eq!(mu(&Permutation::identity(4), &p("3412")).unwrap(), 0);
    }

    #[test]
    fn cprime_small() {
        assert_eq!(cprime(&p("123")).unwrap(), HeckeElement::identity(3));
        let s = p("21");
        let expect = HeckeElement::identity(2).add(&HeckeElement::t(s)).unwrap();
        assert_eq!(cprime(&s).unwrap(), expect);
    }

    #[test]
    fn product_rule_examples() {
        let mut t = KlTable::new(3);
        let got = t.cprime_times_cs(&p("231"), 1).unwrap();
        assert_eq!(got, vec![(p("213"), LaurentQ::one()), (p("321"), LaurentQ::one())]);
        let got = t.cprime_times_cs(&p("123"), 1).unwrap();
        assert_eq!(got, vec![(p("213"), LaurentQ::one())]);
        let got = t.cprime_times_cs(&p("213"), 1).unwrap();
        assert_eq!(got, vec![(p("213"), LaurentQ::quantum_two())]);
        assert!(t.cprime_times_cs(&p("213"), 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut t = KlTable::new(4);
        t.fill_interval(&p("4231")).unwrap();
        let j = t.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let mut back = KlTable::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.entries(), t.entries());
        assert_eq!(back.p(&Permutation::identity(4), &p("4231")).unwrap(), poly(&[1, 1]));
        let mut stale = j.clone();
        stale.version = 0;
        assert!(KlTable::from_json(stale).is_err());
    }
}
