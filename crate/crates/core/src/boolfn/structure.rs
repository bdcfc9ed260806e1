//! Derivative-based structure: linear structures, balanced derivatives,
//! bent / plateaued / partially bent classification and quadratic forms.

use serde::Serialize;

use super::BoolFn;
use crate::error::{Error, Result};
use crate::linalg::{echelon_basis, span, BitMatrix};

/// The subspace `V(f) = { a : D_a f is constant }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearStructureSpace {
    m: usize,
    basis: Vec<u32>,
    /// `(a, c)` with `D_a f = c`, for every nonzero `a` in the span, sorted by `a`.
    constants: Vec<(u32, bool)>,
}

impl LinearStructureSpace {
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// `k = dim V(f)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn constants(&self) -> &[(u32, bool)] {
        &self.constants
    }

    /// The constant value of `D_a f` if `a` is a linear structure.
    pub fn constant(&self, a: u32) -> Option<bool> {
        if a == 0 {
            return Some(false);
        }
        self.constants
            .binary_search_by_key(&a, |&(v, _)| v)
            .ok()
            .map(|i| self.constants[i].1)
    }

    pub fn contains(&self, a: u32) -> bool {
        self.constant(a).is_some()
    }

    /// All members including 0, ascending.
    pub fn members(&self) -> Vec<u32> {
        let mut s = span(&self.basis);
        s.sort_unstable();
        s
    }

    pub fn ambient_vars(&self) -> usize {
        self.m
    }
}

/// Spectral / derivative shape of a Boolean function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeProfile {
    pub bent: bool,
    /// Common nonzero `|W_f(u)|` when the function is plateaued.
    pub plateaued: Option<u32>,
    pub partially_bent: bool,
    /// `dim V(f)`.
    pub k: usize,
}

impl ShapeProfile {
    pub fn is_plateaued(&self) -> bool {
        self.plateaued.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadKind {
    /// `x1x2 + ... + x_{2l-1}x_{2l} + x_{2l+1}`
    Balanced,
    /// `x1x2 + ... + x_{2l-1}x_{2l}`
    LowWeight,
    /// `x1x2 + ... + x_{2l-1}x_{2l} + 1`
    HighWeight,
}

/// Affine-equivalence class of a quadratic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadCanonicalForm {
    pub m: usize,
    /// Number of disjoint products.
    pub l: usize,
    pub kind: QuadKind,
    /// `dim V(f) = m - 2l`.
    pub k: usize,
}

impl QuadCanonicalForm {
    /// The representative polynomial of this class.
    pub fn canonical_function(&self) -> BoolFn {
        let (l, kind) = (self.l, self.kind);
        BoolFn::from_fn(self.m, |x| {
            let mut v = (0..l).fold(0u32, |acc, i| acc ^ ((x >> (2 * i)) & (x >> (2 * i + 1)) & 1));
            match kind {
                QuadKind::Balanced => v ^= (x >> (2 * l)) & 1,
                QuadKind::HighWeight => v ^= 1,
                QuadKind::LowWeight => {}
            }
            v == 1
        })
        .expect("m already validated")
    }

    /// Weight implied by the class: `2^{m-1}` or `2^{m-1} -+ 2^{(m+k)/2 - 1}`.
    pub fn weight(&self) -> u64 {
        let half = 1u64 << (self.m - 1);
        let dev = 1u64 << ((self.m + self.k) / 2 - 1);
        match self.kind {
            QuadKind::Balanced => half,
            QuadKind::LowWeight => half - dev,
            QuadKind::HighWeight => half + dev,
        }
    }
}

impl BoolFn {
    pub fn linear_structures(&self) -> LinearStructureSpace {
        let full = 1i64 << self.vars();
        let ac = self.autocorrelation();
        let mut constants: Vec<(u32, bool)> = ac
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &v)| v.abs() == full)
            .map(|(a, &v)| (a as u32, v < 0))
            .collect();
        constants.sort_unstable_by_key(|&(a, _)| a);
        let vecs: Vec<u32> = constants.iter().map(|&(a, _)| a).collect();
        LinearStructureSpace {
            m: self.vars(),
            basis: echelon_basis(&vecs),
            constants,
        }
    }

    /// `Gamma(f) = { a : D_a f is balanced }`, ascending. Never contains 0.
    pub fn balanced_derivatives(&self) -> Vec<u32> {
        self.autocorrelation()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0)
            .map(|(a, _)| a as u32)
            .collect()
    }

    /// `|Gamma(f)|`.
    pub fn gamma_count(&self) -> usize {
        self.autocorrelation().iter().filter(|&&v| v == 0).count()
    }

    /// Bent iff every nonzero derivative is balanced; partially bent iff every
    /// derivative is balanced or constant.
    pub fn shape_profile(&self) -> ShapeProfile {
        let full = 1i64 << self.vars();
        let ac = self.autocorrelation();
        let bent = ac[1..].iter().all(|&v| v == 0);
        let partially_bent = ac.iter().all(|&v| v == 0 || v.abs() == full);
        let k = self.linear_structures().dim();
        ShapeProfile {
            bent,
            plateaued: self.walsh_spectrum().plateau(),
            partially_bent,
            k,
        }
    }

    /// Matrix of the bilinear form `f(x+y) + f(x) + f(y) + f(0)`; only
    /// meaningful for `deg f <= 2`.
    pub(crate) fn polar_form(&self) -> BitMatrix {
        let m = self.vars();
        let f0 = self.get(0);
        let rows = (0..m)
            .map(|i| {
                (0..m).fold(0u32, |row, j| {
                    let (ei, ej) = (1u32 << i, 1u32 << j);
                    let b = if i == j {
                        false
                    } else {
                        self.get(ei ^ ej) ^ self.get(ei) ^ self.get(ej) ^ f0
                    };
                    row | ((b as u32) << j)
                })
            })
            .collect();
        BitMatrix::from_rows(rows).expect("m <= 20")
    }

    /// Canonical form of a quadratic function; `Domain` error unless `deg f = 2`.
    pub fn quad_canonical(&self) -> Result<QuadCanonicalForm> {
        let d = self.degree();
        if d != 2 {
            return Err(Error::domain(format!("expected a quadratic function, degree is {d}")));
        }
        let m = self.vars();
        let rank = self.polar_form().rank();
        debug_assert!(rank.is_multiple_of(2), "alternating forms have even rank");
        let fv = self.fourier_value();
        let kind = match fv.signum() {
            0 => QuadKind::Balanced,
            1 => QuadKind::LowWeight,
            _ => QuadKind::HighWeight,
        };
        Ok(QuadCanonicalForm {
            m,
            l: rank / 2,
            kind,
            k: m - rank,
        })
    }
}
