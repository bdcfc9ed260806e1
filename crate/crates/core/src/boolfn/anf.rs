use std::fmt;

use super::{BoolFn, BLOCK_LO};
use crate::error::{Error, Result};

/// Algebraic normal form: bit `u` is the coefficient of `prod_{j in u} x_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    coeffs: BoolFn,
}

/// Binary Moebius transform in place. It is an involution.
fn moebius(words: &mut [u64]) {
    for (j, &lo) in BLOCK_LO.iter().enumerate() {
        let s = 1 << j;
        for w in words.iter_mut() {
            *w ^= (*w & lo) << s;
        }
    }
    let n = words.len();
    let mut step = 1;
    while step < n {
        for w in 0..n {
            if w & step != 0 {
                words[w] ^= words[w ^ step];
            }
        }
        step <<= 1;
    }
}

impl Anf {
    pub fn from_truth_table(f: &BoolFn) -> Self {
        let mut coeffs = f.clone();
        let m = coeffs.vars();
        moebius(coeffs.raw_words_mut());
        // in-word butterflies above position 2^m only ever see zeros, but keep
        // the tail clean regardless
        let words = coeffs.raw_words_mut();
        if m < 6 {
            words[0] &= (1u64 << (1 << m)) - 1;
        }
        Anf { coeffs }
    }

    /// Builds an ANF from the list of monomial masks with coefficient 1.
    pub fn from_monomials(m: usize, monomials: &[u32]) -> Result<Self> {
        let mut coeffs = BoolFn::zero(m)?;
        for &u in monomials {
            if u as usize >= coeffs.len() {
                return Err(Error::range("monomial mask", u, format!("< 2^{m}")));
            }
            let cur = coeffs.get(u);
            coeffs.set(u, !cur);
        }
        Ok(Anf { coeffs })
    }

    /// Interprets `bits` (bit `u` = coefficient of monomial `u`) as an ANF.
    pub fn from_coefficients(coeffs: BoolFn) -> Self {
        Anf { coeffs }
    }

    pub fn vars(&self) -> usize {
        self.coeffs.vars()
    }

    pub fn coefficient(&self, u: u32) -> bool {
        self.coeffs.get(u)
    }

    pub fn coefficients(&self) -> &BoolFn {
        &self.coeffs
    }

    /// Monomials with coefficient 1, ascending.
    pub fn monomials(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (wi, &w) in self.coeffs.words().iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros();
                out.push((wi as u32) << 6 | b);
                w &= w - 1;
            }
        }
        out
    }

    /// Maximum monomial weight; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.monomials()
            .into_iter()
            .map(|u| u.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// The monomials of weight exactly `i` (the degree-`i` homogeneous part).
    pub fn degree_slice(&self, i: usize) -> Result<Vec<u32>> {
        if i > self.vars() {
            return Err(Error::range("degree", i as u64, format!("0..={}", self.vars())));
        }
        Ok(self
            .monomials()
            .into_iter()
            .filter(|u| u.count_ones() as usize == i)
            .collect())
    }

    pub fn to_truth_table(&self) -> BoolFn {
        let mut f = self.coeffs.clone();
        moebius(f.raw_words_mut());
        let m = f.vars();
        if m < 6 {
            f.raw_words_mut()[0] &= (1u64 << (1 << m)) - 1;
        }
        f
    }
}

impl From<&BoolFn> for Anf {
    fn from(f: &BoolFn) -> Self {
        Anf::from_truth_table(f)
    }
}

impl fmt::Display for Anf {
    /// Polynomial notation, e.g. `x1*x2*x3 + x1*x4 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut monos = self.monomials();
        if monos.is_empty() {
            return f.write_str("0");
        }
        monos.sort_by_key(|u| (std::cmp::Reverse(u.count_ones()), *u));
        let terms: Vec<String> = monos
            .iter()
            .map(|&u| {
                if u == 0 {
                    "1".to_string()
                } else {
                    (0..32)
                        .filter(|j| (u >> j) & 1 == 1)
                        .map(|j| format!("x{}", j + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(m={}, {})", self.vars(), self)
    }
}
