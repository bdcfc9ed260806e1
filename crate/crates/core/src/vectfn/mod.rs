//! Vectorial Boolean functions `F : F_2^m -> F_2^m` (S-boxes) given as
//! lookup tables.

mod components;
mod ddt;
mod ea;
mod text;

use std::fmt;

pub use components::{
    ComponentProfile, ConstantDerivative, DegreeStats, StructuralFlags,
};
pub use ddt::{Ddt, WeakUniformity};
pub use ea::ea_transform;

use crate::boolfn::BoolFn;
use crate::error::{Error, Result};
use crate::linalg::dot;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectFn {
    m: usize,
    table: Vec<u8>,
}

pub(crate) fn check_dim(m: usize) -> Result<()> {
    if !(MIN_DIM..=MAX_DIM).contains(&m) {
        return Err(Error::range("dimension", m as u64, format!("{MIN_DIM}..={MAX_DIM}")));
    }
    Ok(())
}

impl VectFn {
    /// Builds an S-box from its table; the length (a power of two) fixes `m`.
    pub fn new(table: Vec<u32>) -> Result<Self> {
        let m = crate::boolfn::log2_exact(table.len())
            .ok_or_else(|| Error::domain(format!("table length {} is not a power of two", table.len())))?;
        check_dim(m)?;
        let n = table.len() as u32;
        if let Some((x, &y)) = table.iter().enumerate().find(|(_, &y)| y >= n) {
            return Err(Error::range("table entry", y, format!("< {n} (at index {x})")));
        }
        Ok(VectFn {
            m,
            table: table.into_iter().map(|y| y as u8).collect(),
        })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(u32) -> u32) -> Result<Self> {
        check_dim(m)?;
        Self::new((0..1u32 << m).map(&mut f).collect())
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::from_fn(m, |x| x)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// `2^m`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u32) -> u32 {
        self.table[x as usize] as u32
    }

    pub fn table(&self) -> Vec<u32> {
        self.table.iter().map(|&y| y as u32).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.table
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; 1 << MAX_DIM];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    /// The component `F_lambda(x) = lambda . F(x)`; `lambda = 0` is rejected.
    pub fn component(&self, lambda: u32) -> Result<BoolFn> {
        if lambda == 0 {
            return Err(Error::domain("the zero component is excluded"));
        }
        if lambda as usize >= self.len() {
            return Err(Error::range("component index", lambda, format!("1..2^{}", self.m)));
        }
        Ok(self.component_unchecked(lambda))
    }

    pub(crate) fn component_unchecked(&self, lambda: u32) -> BoolFn {
        BoolFn::from_fn(self.m, |x| dot(lambda, self.get(x)) == 1).expect("2 <= m <= 8")
    }

    /// Coordinate functions `f_1, ..., f_m` (components at the unit vectors).
    pub fn coordinates(&self) -> Vec<BoolFn> {
        (0..self.m).map(|i| self.component_unchecked(1 << i)).collect()
    }

    /// `D_a F(x) = F(x + a) + F(x)`.
    pub fn derivative(&self, a: u32) -> Result<VectFn> {
        if a as usize >= self.len() {
            return Err(Error::range("direction", a, format!("< 2^{}", self.m)));
        }
        Ok(VectFn {
            m: self.m,
            table: (0..self.len() as u32)
                .map(|x| (self.get(x ^ a) ^ self.get(x)) as u8)
                .collect(),
        })
    }

    /// `|Im(D_a F)|`.
    pub(crate) fn derivative_image(&self, a: u32) -> Vec<u32> {
        let mut seen = [false; 1 << MAX_DIM];
        let mut img = Vec::new();
        for x in 0..self.len() as u32 {
            let b = self.get(x ^ a) ^ self.get(x);
            if !std::mem::replace(&mut seen[b as usize], true) {
                img.push(b);
            }
        }
        img
    }
}

impl fmt::Debug for VectFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectFn(m={}, {:?})", self.m, self.table)
    }
}
