//! Concrete functions: power maps, two trace-based APN families in even
//! dimension, the open butterfly, and the bundled fixtures.

mod fixtures;
mod gf;

pub use fixtures::{load_fixture, Fixture, FIXTURE_NAMES};
pub use gf::{default_reduction, is_irreducible, GfContext};

use crate::error::{Error, Result};
use crate::vectfn::VectFn;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x -> x^e` over the field.
pub fn power_map(ctx: &GfContext, e: u64) -> Result<VectFn> {
    if e == 0 {
        return Err(Error::domain("exponent must be at least 1"));
    }
    VectFn::from_fn(ctx.degree(), |x| ctx.pow(x, e))
}

/// Gold map `x^{2^i + 1}`.
pub fn gold(ctx: &GfContext, i: u32) -> Result<VectFn> {
    if i == 0 || i as usize >= ctx.degree() {
        return Err(Error::range("gold parameter i", i, format!("1..{}", ctx.degree())));
    }
    power_map(ctx, (1u64 << i) + 1)
}

/// `x^{2^i+1} + (x^{2^i} + x + 1) Tr(x^{2^i+1})`, for `m` even and
/// `gcd(m, i) = 1`.
pub fn family_bc1(ctx: &GfContext, i: u32) -> Result<VectFn> {
    let m = ctx.degree();
    if !m.is_multiple_of(2) {
        return Err(Error::domain(format!("family requires even m, got {m}")));
    }
    if i == 0 || gcd(m as u64, i as u64) != 1 {
        return Err(Error::domain(format!("family requires gcd(m, i) = 1, got m = {m}, i = {i}")));
    }
    let q = 1u64 << i;
    VectFn::from_fn(m, |x| {
        let g = ctx.pow(x, q + 1);
        let t = ctx.trace(g);
        g ^ ctx.mul(ctx.pow(x, q) ^ x ^ 1, t)
    })
}

/// `x^3 + Tr(x^9) + (x^2 + x + 1) Tr(x^3)`, for `m` even.
pub fn family_bc2(ctx: &GfContext) -> Result<VectFn> {
    let m = ctx.degree();
    if !m.is_multiple_of(2) {
        return Err(Error::domain(format!("family requires even m, got {m}")));
    }
    VectFn::from_fn(m, |x| {
        let c = ctx.pow(x, 3);
        c ^ ctx.trace(ctx.pow(x, 9)) ^ ctx.mul(ctx.mul(x, x) ^ x ^ 1, ctx.trace(c))
    })
}

/// Open butterfly on `GF(2^n)^2` with `R_k(z) = (z + alpha k)^3 + beta k^3`:
/// `(x, y) -> (R_v(y), v)` where `v = R_y^{-1}(x)`. The input and output are
/// packed as `lo | hi << n`.
///
/// Requires `n` odd so that cubing permutes the field; the result is always
/// a permutation of `F_2^{2n}`.
pub fn open_butterfly(ctx: &GfContext, alpha: u32, beta: u32) -> Result<VectFn> {
    let n = ctx.degree();
    if n.is_multiple_of(2) {
        return Err(Error::domain("the butterfly needs cubing to be a permutation (odd n)"));
    }
    if 2 * n > crate::vectfn::MAX_DIM {
        return Err(Error::range("butterfly half width", n as u64, "at most 4"));
    }
    let size = ctx.size() as u32;
    if alpha >= size || beta >= size {
        return Err(Error::range("butterfly parameter", alpha.max(beta), format!("< {size}")));
    }
    let keyed = |k: u32, z: u32| ctx.pow(z ^ ctx.mul(alpha, k), 3) ^ ctx.mul(beta, ctx.pow(k, 3));
    let mut inverse = vec![0u32; (size * size) as usize];
    for k in 0..size {
        for z in 0..size {
            inverse[(k * size + keyed(k, z)) as usize] = z;
        }
    }
    VectFn::from_fn(2 * n, |packed| {
        let (x, y) = (packed & (size - 1), packed >> n);
        let v = inverse[(y * size + x) as usize];
        keyed(v, y) | (v << n)
    })
}
