use super::BoolFn;
use crate::error::{Error, Result};
use crate::linalg::{dot, BitMatrix};

/// `g(x) = f(A x + b) + c.x + d` with `A` invertible.
pub fn affine_transform(f: &BoolFn, a: &BitMatrix, b: u32, c: u32, d: bool) -> Result<BoolFn> {
    let m = f.vars();
    if a.dim() != m {
        return Err(Error::domain(format!("matrix is {0}x{0}, function has {m} variables", a.dim())));
    }
    if !a.is_invertible() {
        return Err(Error::domain("affine transform requires an invertible matrix"));
    }
    let limit = f.len() as u32;
    if b >= limit || c >= limit {
        return Err(Error::range("affine offset", b.max(c), format!("< 2^{m}")));
    }
    BoolFn::from_fn(m, |x| f.get(a.apply(x) ^ b) ^ (dot(c, x) == 1) ^ d)
}
