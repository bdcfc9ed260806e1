use super::VectFn;
use crate::error::{Error, Result};
use crate::linalg::{AffineMap, BitMatrix};

/// EA transform `F'(x) = A1 F(A2 x + b2) + b1 + L(x)`.
///
/// `A1` and `A2` must be invertible; `L` is an arbitrary affine map.
pub fn ea_transform(
    f: &VectFn,
    a1: &BitMatrix,
    b1: u32,
    a2: &BitMatrix,
    b2: u32,
    l: &AffineMap,
) -> Result<VectFn> {
    let m = f.dim();
    for mat in [a1, a2, &l.matrix] {
        if mat.dim() != m {
            return Err(Error::domain(format!("matrix dimension {} does not match m = {m}", mat.dim())));
        }
    }
    if !a1.is_invertible() || !a2.is_invertible() {
        return Err(Error::domain("EA transform requires invertible outer and inner matrices"));
    }
    let n = f.len() as u32;
    if b1 >= n || b2 >= n || l.offset >= n {
        return Err(Error::range("translation", b1.max(b2).max(l.offset), format!("< {n}")));
    }
    VectFn::from_fn(m, |x| a1.apply(f.get(a2.apply(x) ^ b2)) ^ b1 ^ l.apply(x))
}
