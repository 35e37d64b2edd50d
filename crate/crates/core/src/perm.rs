//! Permutations of `[n]` in one-line notation, Bruhat order, pattern
//! containment, coessential sets and the Hessenberg/codominant dictionary.
//!
//! Multiplication convention: `(u * v)(i) = u(v(i))`. Right multiplication
//! by a simple transposition `s_i = (i, i+1)` swaps the *positions* `i` and
//! `i+1` of the one-line word; left multiplication swaps the *values* `i`
//! and `i+1`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported rank. Permutations are stored inline so they stay `Copy`.
pub const MAX_N: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    word: [u8; MAX_N],
}

impl Permutation {
    /// Builds a permutation from its one-line word (values in `1..=n`).
    pub fn new(word: &[usize]) -> Result<Self> {
        let n = word.len();
        if n > MAX_N {
            return Err(Error::TooLarge(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut seen = [false; MAX_N + 1];
        let mut w = [0u8; MAX_N];
        for (k, &v) in word.iter().enumerate() {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{word:?} is not a bijection on [{n}]"
                )));
            }
            seen[v] = true;
            w[k] = v as u8;
        }
        Ok(Permutation { n: n as u8, word: w })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        let mut w = [0u8; MAX_N];
        for (k, slot) in w.iter_mut().enumerate().take(n) {
            *slot = k as u8 + 1;
        }
        Permutation { n: n as u8, word: w }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::OutOfRange(format!("simple transposition s_{i} in S_{n}")));
        }
        Ok(Self::identity(n).mul_simple_right(i))
    }

    /// The transposition `(i, j)`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::OutOfRange(format!("transposition ({i},{j}) in S_{n}")));
        }
        Ok(Self::identity(n).swap_positions(i, j))
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_k}` of simple transpositions.
    pub fn from_simple_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::OutOfRange(format!("simple transposition s_{i} in S_{n}")));
            }
            w = w.mul_simple_right(i);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn word(&self) -> &[u8] {
        &self.word[..self.n as usize]
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.word().iter().map(|&v| v as usize).collect()
    }

    /// `w(i)` for `1 <= i <= n`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n());
        self.word[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.word().iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut w = [0u8; MAX_N];
        for (k, &v) in self.word().iter().enumerate() {
            w[v as usize - 1] = k as u8 + 1;
        }
        Permutation { n: self.n, word: w }
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        self.check_same_n(other)?;
        let mut w = [0u8; MAX_N];
        for k in 0..self.n() {
            w[k] = self.word[other.word[k] as usize - 1];
        }
        Ok(Permutation { n: self.n, word: w })
    }

    fn check_same_n(&self, other: &Permutation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    /// Right multiplication by the transposition `(i, j)`: swaps positions.
    #[inline]
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut out = *self;
        out.word.swap(i - 1, j - 1);
        out
    }

    /// `w * s_i`: swaps positions `i` and `i+1`.
    #[inline]
    pub fn mul_simple_right(&self, i: usize) -> Self {
        self.swap_positions(i, i + 1)
    }

    /// `s_i * w`: swaps the values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let mut out = *self;
        for v in out.word.iter_mut().take(self.n()) {
            if *v as usize == i {
                *v += 1;
            } else if *v as usize == i + 1 {
                *v -= 1;
            }
        }
        out
    }

    /// `w * s_i < w`.
    #[inline]
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.word[i - 1] > self.word[i]
    }

    /// `s_i * w < w`, i.e. `i+1` appears before `i` in the word.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let w = self.word();
        let pi = w.iter().position(|&v| v as usize == i).unwrap();
        let pj = w.iter().position(|&v| v as usize == i + 1).unwrap();
        pj < pi
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.has_right_descent(i)).collect()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = self.word();
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `r_{i,j}(w) = |{k <= i : w(k) <= j}|`.
    pub fn rank(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.n();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::OutOfRange(format!("rank index ({i},{j}) for n = {n}")));
        }
        Ok(self.word()[..i].iter().filter(|&&v| v as usize <= j).count())
    }

    /// Row-major `(n+1) x (n+1)` table of `r_{i,j}`, including the zero row and column.
    fn rank_table(&self) -> Vec<u8> {
        let n = self.n();
        let stride = n + 1;
        let mut r = vec![0u8; stride * stride];
        for i in 1..=n {
            let v = self.get(i);
            for j in 1..=n {
                r[i * stride + j] = r[(i - 1) * stride + j] + u8::from(v <= j);
            }
        }
        r
    }

    /// Bruhat order `self <= w` via the rank criterion `r_{i,j}(self) >= r_{i,j}(w)`.
    pub fn bruhat_le(&self, w: &Permutation) -> Result<bool> {
        self.check_same_n(w)?;
        Ok(self.bruhat_le_unchecked(w))
    }

    pub(crate) fn bruhat_le_unchecked(&self, w: &Permutation) -> bool {
        let rz = self.rank_table();
        let rw = w.rank_table();
        rz.iter().zip(&rw).all(|(a, b)| a >= b)
    }

    /// All `z = w * (i j)` with `l(z) = l(w) - 1`.
    pub fn lower_covers(&self) -> Vec<Permutation> {
        let w = self.word();
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] && !(i + 1..j).any(|k| w[k] > w[j] && w[k] < w[i]) {
                    out.push(self.swap_positions(i + 1, j + 1));
                }
            }
        }
        out.sort();
        out
    }

    /// The lower Bruhat interval `[e, w]`, sorted by length then lexicographically.
    pub fn lower_interval(&self) -> Vec<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(*self);
        let mut frontier = vec![*self];
        while let Some(x) = frontier.pop() {
            for z in x.lower_covers() {
                if seen.insert(z) {
                    frontier.push(z);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort_by_key(|p| (p.length(), *p));
        out
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.n();
        if k > self.n() {
            return false;
        }
        if k == 0 {
            return true;
        }
        let mut chosen = [0u8; MAX_N];
        self.embed(pattern.word(), 0, 0, &mut chosen)
    }

    fn embed(&self, pattern: &[u8], depth: usize, start: usize, chosen: &mut [u8; MAX_N]) -> bool {
        if depth == pattern.len() {
            return true;
        }
        let w = self.word();
        let remaining = pattern.len() - depth;
        for pos in start..=w.len() - remaining {
            let v = w[pos];
            let consistent = (0..depth).all(|t| (v > chosen[t]) == (pattern[depth] > pattern[t]));
            if consistent {
                chosen[depth] = v;
                if self.embed(pattern, depth + 1, pos + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains_pattern(pattern)
    }

    pub fn is_smooth(&self) -> bool {
        self.avoids(&PATTERN_3412) && self.avoids(&PATTERN_4231)
    }

    pub fn is_codominant(&self) -> bool {
        self.avoids(&PATTERN_312)
    }

    pub fn classify(&self) -> Classification {
        Classification { smooth: self.is_smooth(), codominant: self.is_codominant() }
    }

    /// Pairs `(i, j)` with `w(i) <= j < w(i+1)` and `w^{-1}(j) <= i < w^{-1}(j+1)`,
    /// using the boundary values `w(n+1) = w^{-1}(n+1) = n+1`.
    pub fn coessential_set(&self) -> CoessentialSet {
        let n = self.n();
        let inv = self.inverse();
        let w_at = |i: usize| if i > n { n + 1 } else { self.get(i) };
        let inv_at = |j: usize| if j > n { n + 1 } else { inv.get(j) };
        let mut pairs = BTreeSet::new();
        for i in 1..=n {
            for j in w_at(i)..w_at(i + 1) {
                if inv_at(j) <= i && i < inv_at(j + 1) {
                    pairs.insert((i, j));
                }
            }
        }
        CoessentialSet { pairs }
    }

    /// The Hessenberg function `m_w` of a smooth permutation, read off its
    /// coessential set and filled from right to left.
    pub fn hessenberg_of_smooth(&self) -> Result<HessenbergFunction> {
        if !self.is_smooth() {
            return Err(Error::NotSmooth(self.to_string()));
        }
        let n = self.n();
        let mut target: Vec<Option<usize>> = vec![None; n + 1];
        for &(a, b) in self.coessential_set().iter() {
            let (i, j) = if b >= a { (a, b) } else { (b, a) };
            target[i] = Some(target[i].map_or(j, |old: usize| old.max(j)));
        }
        let mut m = vec![0usize; n];
        let mut next = n;
        for i in (1..=n).rev() {
            let v = target[i].unwrap_or(next);
            m[i - 1] = v;
            next = v;
        }
        HessenbergFunction::new(m).map_err(|e| {
            Error::InternalContradiction(format!("m_w of smooth {self} is not Hessenberg: {e}"))
        })
    }

    /// Transpositions `(i, j)`, `i < j`, lying below `self` in Bruhat order.
    pub fn transpositions_below(&self) -> BTreeSet<(usize, usize)> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let t = Self::identity(n).swap_positions(i, j);
                if t.bruhat_le_unchecked(self) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// A reduced word, peeling off the smallest right descent at each step.
    pub fn reduced_word(&self) -> Vec<usize> {
        self.reduced_word_by(|w| w.right_descents().first().copied())
    }

    /// A second reduced word, peeling off the largest right descent.
    pub fn reduced_word_alt(&self) -> Vec<usize> {
        self.reduced_word_by(|w| w.right_descents().last().copied())
    }

    fn reduced_word_by(&self, pick: impl Fn(&Permutation) -> Option<usize>) -> Vec<usize> {
        let mut w = *self;
        let mut rev = Vec::with_capacity(self.length());
        while let Some(i) = pick(&w) {
            rev.push(i);
            w = w.mul_simple_right(i);
        }
        rev.reverse();
        rev
    }

    /// Every permutation of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self::new(&cur).expect("valid by construction"));
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| cur[l] > cur[k]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }

    /// Parses `s` as a permutation of `[n]`; `e` or `id` denotes the identity.
    pub fn parse_with_n(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t == "e" || t == "id" {
            return Ok(Self::identity(n));
        }
        let p: Permutation = t.parse()?;
        if p.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: p.n() });
        }
        Ok(p)
    }
}

pub const PATTERN_312: Permutation = Permutation::const_from([3, 1, 2]);
pub const PATTERN_3412: Permutation = Permutation::const_from([3, 4, 1, 2]);
pub const PATTERN_4231: Permutation = Permutation::const_from([4, 2, 3, 1]);

impl Permutation {
    const fn const_from<const K: usize>(w: [u8; K]) -> Self {
        let mut word = [0u8; MAX_N];
        let mut k = 0;
        while k < K {
            word[k] = w[k];
            k += 1;
        }
        Permutation { n: K as u8, word }
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in self.word() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word().iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let values: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("permutation {t:?}: {e}")))?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("permutation {t:?}: expected digits")))?
        };
        if values.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::new(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub smooth: bool,
    pub codominant: bool,
}

/// The coessential set of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoessentialSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl CoessentialSet {
    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.pairs.iter()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().copied().collect()
    }
}

/// A non-decreasing map `m: [n] -> [n]` with `m(i) >= i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HessenbergFunction {
    m: Vec<usize>,
}

impl HessenbergFunction {
    pub fn new(m: Vec<usize>) -> Result<Self> {
        let n = m.len();
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidHessenberg(format!("length {n} out of range")));
        }
        for (k, &v) in m.iter().enumerate() {
            let i = k + 1;
            if v < i || v > n {
                return Err(Error::InvalidHessenberg(format!("m({i}) = {v} violates {i} <= m({i}) <= {n}")));
            }
            if k > 0 && v < m[k - 1] {
                return Err(Error::InvalidHessenberg(format!("{m:?} is not non-decreasing")));
            }
        }
        Ok(HessenbergFunction { m })
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.m
    }

    /// `m(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        self.m[i - 1]
    }

    /// `sum_i (m(i) - i)`: the number of edges of the indifference graph.
    pub fn edge_count(&self) -> usize {
        self.m.iter().enumerate().map(|(k, &v)| v - (k + 1)).sum()
    }

    /// The lexicographically greatest permutation with `w(i) <= m(i)`,
    /// built greedily by taking the largest unused admissible value.
    pub fn codominant_permutation(&self) -> Permutation {
        let n = self.n();
        let mut used = [false; MAX_N + 1];
        let mut word = Vec::with_capacity(n);
        for &bound in &self.m {
            let v = (1..=bound).rev().find(|&v| !used[v]).expect("Hessenberg bound always leaves a free value");
            used[v] = true;
            word.push(v);
        }
        Permutation::new(&word).expect("greedy choice is a bijection")
    }

    /// All Hessenberg functions on `[n]` in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<HessenbergFunction> {
        fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<HessenbergFunction>) {
            let i = cur.len() + 1;
            if i > n {
                out.push(HessenbergFunction { m: cur.clone() });
                return;
            }
            let lo = i.max(cur.last().copied().unwrap_or(1));
            for v in lo..=n {
                cur.push(v);
                go(n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if (1..=MAX_N).contains(&n) {
            go(n, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hessenberg({self})")
    }
}

impl FromStr for HessenbergFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let m: Vec<usize> = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("Hessenberg function {s:?}: {e}")))?;
        HessenbergFunction::new(m)
    }
}

impl Serialize for HessenbergFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HessenbergFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Vec::<usize>::deserialize(d)?;
        HessenbergFunction::new(m).map_err(serde::de::Error::custom)
    }
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn subword_oracle(w: &Permutation) -> HashSet<Permutation> {
        let word = w.reduced_word();
        let n = w.n();
        let mut out = HashSet::new();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> =
                word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            out.insert(Permutation::from_simple_word(n, &sub).unwrap());
        }
        out
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p("245361").length(), 7);
        assert_eq!(p("21").length(), 1);
        assert_eq!(p("62754381").length(), 17);
        assert_eq!(p("26754381").length(), 16);
    }

    #[test]
    fn multiplication_conventions() {
        let w = p("26754381");
        assert_eq!(w.compose(&Permutation::identity(8)).unwrap(), w);
        assert_eq!(w.mul_simple_right(1), p("62754381"));
        let s1 = Permutation::simple(8, 1).unwrap();
        assert_eq!(w.compose(&s1).unwrap(), w.mul_simple_right(1));
        assert_eq!(s1.compose(&w).unwrap(), w.mul_simple_left(1));
        assert_eq!(w.mul_simple_left(1), p("16754382"));
        assert!(w.compose(&w.inverse()).unwrap().is_identity());
        assert!(w.compose(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn rank_examples() {
        let w = p("3142");
        assert_eq!(w.rank(2, 1).unwrap(), 1);
        assert_eq!(w.rank(2, 3).unwrap(), 2);
        let e = Permutation::identity(4);
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(e.rank(i, j).unwrap(), i.min(j));
            }
        }
        assert!(w.rank(0, 1).is_err());
        assert!(w.rank(1, 5).is_err());
    }

    #[test]
    fn bruhat_examples() {
        assert!(Permutation::identity(4).bruhat_le(&p("4321")).unwrap());
        assert!(p("2134").bruhat_le(&p("2314")).unwrap());
        assert!(!p("2134").bruhat_le(&p("1243")).unwrap());
        assert!(p("21").bruhat_le(&p("123")).is_err());
    }

    #[test]
    fn bruhat_agrees_with_subword_oracle() {
        for n in 1..=5 {
            let all = Permutation::all(n);
            for w in &all {
                let below = subword_oracle(w);
                for z in &all {
                    assert_eq!(z.bruhat_le(w).unwrap(), below.contains(z), "z={z} w={w}");
                }
                let interval: HashSet<_> = w.lower_interval().into_iter().collect();
                assert_eq!(interval, below);
            }
        }
    }

    #[test]
    fn lower_cover_examples() {
        assert!(Permutation::identity(3).lower_covers().is_empty());
        assert_eq!(p("231").lower_covers(), vec![p("132"), p("213")]);
        assert_eq!(p("21").lower_covers(), vec![p("12")]);
    }

    #[test]
    fn pattern_examples() {
        assert!(p("3412").contains_pattern(&p("3412")));
        assert!(p("62754381").contains_pattern(&p("4231")));
        assert!(!p("245361").contains_pattern(&p("312")));
        assert!(!p("12").contains_pattern(&p("123")));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(p("245361").classify(), Classification { smooth: true, codominant: true });
        assert_eq!(p("62754381").classify(), Classification { smooth: false, codominant: false });
        assert_eq!(p("3142").classify(), Classification { smooth: true, codominant: false });
    }

    #[test]
    fn coessential_examples() {
        let c = p("245361").coessential_set();
        assert_eq!(c.to_vec(), vec![(1, 2), (2, 4), (4, 5), (6, 6)]);
        let c = p("3142").coessential_set();
        assert_eq!(c.to_vec(), vec![(2, 1), (2, 3), (4, 4)]);
        let c = Permutation::identity(4).coessential_set();
        assert_eq!(c.to_vec(), vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn coessential_set_satisfies_definition() {
        for w in Permutation::all(5) {
            let inv = w.inverse();
            let n = 5;
            for &(i, j) in w.coessential_set().iter() {
                let w_next = if i == n { n + 1 } else { w.get(i + 1) };
                let inv_next = if j == n { n + 1 } else { inv.get(j + 1) };
                assert!(w.get(i) <= j && j < w_next);
                assert!(inv.get(j) <= i && i < inv_next);
            }
        }
    }

    #[test]
    fn hessenberg_of_smooth_examples() {
        assert_eq!(p("245361").hessenberg_of_smooth().unwrap().values(), &[2, 4, 5, 5, 6, 6]);
        assert_eq!(p("3142").hessenberg_of_smooth().unwrap().values(), &[2, 3, 4, 4]);
        assert_eq!(Permutation::identity(5).hessenberg_of_smooth().unwrap().values(), &[1, 2, 3, 4, 5]);
        assert!(matches!(p("4231").hessenberg_of_smooth(), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn codominant_of_hessenberg_examples() {
        let m = HessenbergFunction::new(vec![2, 4, 5, 5, 6, 6]).unwrap();
        assert_eq!(m.codominant_permutation(), p("245361"));
        let m: HessenbergFunction = "2,6,7,7,7,7,8,8".parse().unwrap();
        assert_eq!(m.codominant_permutation(), p("26754381"));
        let m = HessenbergFunction::new((1..=6).collect()).unwrap();
        assert!(m.codominant_permutation().is_identity());
    }

    #[test]
    fn transpositions_below_examples() {
        assert_eq!(p("21").transpositions_below().into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
        let t: Vec<_> = p("245361").transpositions_below().into_iter().collect();
        assert_eq!(t, vec![(1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (5, 6)]);
        assert!(Permutation::identity(4).transpositions_below().is_empty());
    }

    #[test]
    fn hessenberg_enumeration_counts() {
        assert_eq!(HessenbergFunction::enumerate(1).len(), 1);
        assert_eq!(HessenbergFunction::enumerate(4).len(), 14);
        assert_eq!(HessenbergFunction::enumerate(8).len(), 1430);
        for n in 1..=10 {
            assert_eq!(HessenbergFunction::enumerate(n).len() as u64, catalan(n));
        }
        let hs = HessenbergFunction::enumerate(5);
        assert!(hs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Permutation::new(&[1, 1]).is_err());
        assert!(Permutation::new(&[0, 1]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!(HessenbergFunction::new(vec![1, 1]).is_err());
        assert!(HessenbergFunction::new(vec![2, 1, 3]).is_err());
        assert!(HessenbergFunction::new(vec![3, 2, 3]).is_err());
        assert!(Permutation::parse_with_n("e", 4).unwrap().is_identity());
        assert!(Permutation::parse_with_n("123", 4).is_err());
    }

    #[test]
    fn display_round_trip() {
        let w = p("62754381");
        assert_eq!(w.to_string(), "62754381");
        let big = Permutation::new(&[10, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(big.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    #[test]
    fn reduced_words_have_length_letters() {
        for w in Permutation::all(5) {
            let a = w.reduced_word();
            let b = w.reduced_word_alt();
            assert_eq!(a.len(), w.length());
            assert_eq!(b.len(), w.length());
            assert_eq!(Permutation::from_simple_word(5, &a).unwrap(), w);
            assert_eq!(Permutation::from_simple_word(5, &b).unwrap(), w);
        }
    }
}
