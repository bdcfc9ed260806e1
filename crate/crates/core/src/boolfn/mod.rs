//! Boolean functions `f : F_2^m -> F_2` as bit-packed truth tables.
//!
//! Variable `x_{j+1}` is bit `j` of the table index, so index `x = 0b0101`
//! means `x_1 = x_3 = 1`. The same convention is used for ANF monomial masks,
//! derivative directions and component indices everywhere in the crate.

mod affine;
mod anf;
mod structure;
mod walsh;

use std::fmt;
use std::ops::{BitXor, Not};

pub use affine::affine_transform;
pub use anf::Anf;
pub use structure::{LinearStructureSpace, QuadCanonicalForm, QuadKind, ShapeProfile};
pub use walsh::WalshSpectrum;

use crate::error::{Error, Result};

pub const MIN_VARS: usize = 2;
pub const MAX_VARS: usize = 20;

/// Per-bit block masks used by in-word butterflies: bit `j` of every index
/// selected by `BLOCK_LO[j]` is zero.
const BLOCK_LO: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A Boolean function on `m` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    m: usize,
    words: Vec<u64>,
}

pub(crate) fn check_vars(m: usize) -> Result<()> {
    if !(MIN_VARS..=MAX_VARS).contains(&m) {
        return Err(Error::range(
            "variable count",
            m as u64,
            format!("{MIN_VARS}..={MAX_VARS}"),
        ));
    }
    Ok(())
}

#[inline]
fn word_count(m: usize) -> usize {
    if m >= 6 {
        1 << (m - 6)
    } else {
        1
    }
}

#[inline]
fn tail_mask(m: usize) -> u64 {
    if m >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << m)) - 1
    }
}

impl BoolFn {
    /// The all-zero function.
    pub fn zero(m: usize) -> Result<Self> {
        check_vars(m)?;
        Ok(BoolFn {
            m,
            words: vec![0; word_count(m)],
        })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut g = Self::zero(m)?;
        for x in 0..g.len() as u32 {
            if f(x) {
                g.set(x, true);
            }
        }
        Ok(g)
    }

    /// Builds a function from a table of bits; the length determines `m`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let m = log2_exact(bits.len())
            .ok_or_else(|| Error::domain(format!("table length {} is not a power of two", bits.len())))?;
        Self::from_fn(m, |x| bits[x as usize])
    }

    /// Builds a function from packed words (bit `x % 64` of word `x / 64`).
    pub fn from_words(m: usize, words: Vec<u64>) -> Result<Self> {
        check_vars(m)?;
        if words.len() != word_count(m) {
            return Err(Error::domain(format!(
                "expected {} words for m = {m}, got {}",
                word_count(m),
                words.len()
            )));
        }
        let mut f = BoolFn { m, words };
        f.words[0] &= tail_mask(m);
        Ok(f)
    }

    #[inline]
    pub fn vars(&self) -> usize {
        self.m
    }

    /// Table length `2^m`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.m
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        debug_assert!(x < self.len());
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, x: u32, v: bool) {
        let x = x as usize;
        let bit = 1u64 << (x & 63);
        if v {
            self.words[x >> 6] |= bit;
        } else {
            self.words[x >> 6] &= !bit;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    /// Hamming weight.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `sum_x (-1)^f(x) = 2^m - 2 wt(f)`.
    pub fn fourier_value(&self) -> i64 {
        (1i64 << self.m) - 2 * self.weight() as i64
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1 << (self.m - 1)
    }

    /// `Some(c)` when `f` is the constant `c`.
    pub fn constant_value(&self) -> Option<bool> {
        match self.weight() {
            0 => Some(false),
            w if w == self.len() as u64 => Some(true),
            _ => None,
        }
    }

    /// `D_a f(x) = f(x + a) + f(x)`.
    pub fn derivative(&self, a: u32) -> Result<BoolFn> {
        if a as usize >= self.len() {
            return Err(Error::range("direction", a, format!("< 2^{}", self.m)));
        }
        let mut g = self.translate(a);
        for (gw, fw) in g.words.iter_mut().zip(&self.words) {
            *gw ^= fw;
        }
        Ok(g)
    }

    /// `x -> f(x + a)`; `a` must be in range.
    pub(crate) fn translate(&self, a: u32) -> BoolFn {
        let a = a as usize;
        let hi = a >> 6;
        let mut words: Vec<u64> = (0..self.words.len()).map(|w| self.words[w ^ hi]).collect();
        for (j, &lo) in BLOCK_LO.iter().enumerate() {
            if (a >> j) & 1 == 1 {
                let s = 1 << j;
                for w in &mut words {
                    *w = ((*w & lo) << s) | ((*w >> s) & lo);
                }
            }
        }
        BoolFn { m: self.m, words }
    }

    pub fn to_anf(&self) -> Anf {
        Anf::from_truth_table(self)
    }

    /// Algebraic degree; the zero function has degree 0.
    pub fn degree(&self) -> usize {
        self.to_anf().degree()
    }

    pub fn walsh_spectrum(&self) -> WalshSpectrum {
        WalshSpectrum::of(self)
    }

    /// Parses the one-line `'0'`/`'1'` truth-table text form.
    pub fn parse_text(s: &str) -> Result<Self> {
        let line = s.trim();
        let mut bits = Vec::with_capacity(line.len());
        for (i, c) in line.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        let m = log2_exact(bits.len()).ok_or_else(|| Error::Parse {
            line: 1,
            column: bits.len() + 1,
            message: format!("length {} is not a power of two", bits.len()),
        })?;
        check_vars(m)?;
        Self::from_bits(&bits)
    }

    pub(crate) fn raw_words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}

impl fmt::Display for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m <= 8 {
            write!(f, "BoolFn(m={}, {})", self.m, self)
        } else {
            write!(f, "BoolFn(m={}, weight={})", self.m, self.weight())
        }
    }
}

impl BitXor for &BoolFn {
    type Output = BoolFn;

    fn bitxor(self, rhs: &BoolFn) -> BoolFn {
        assert_eq!(self.m, rhs.m, "variable counts differ");
        BoolFn {
            m: self.m,
            words: self.words.iter().zip(&rhs.words).map(|(a, b)| a ^ b).collect(),
        }
    }
}

impl Not for &BoolFn {
    type Output = BoolFn;

    fn not(self) -> BoolFn {
        let mut g = BoolFn {
            m: self.m,
            words: self.words.iter().map(|w| !w).collect(),
        };
        g.words[0] &= tail_mask(self.m);
        g
    }
}

pub(crate) fn log2_exact(n: usize) -> Option<usize> {
    (n.is_power_of_two()).then(|| n.trailing_zeros() as usize)
}
