//! Small binary extension fields GF(2^m), `2 <= m <= 8`.
//!
//! Elements are integers in `[0, 2^m)` read as coefficient vectors in the
//! polynomial basis; multiplication goes through log/antilog tables.

use crate::error::{Error, Result};

/// Carry-less product of two polynomials over F_2.
fn clmul(a: u32, b: u32) -> u32 {
    (0..16).filter(|i| (b >> i) & 1 == 1).fold(0, |acc, i| acc ^ (a << i))
}

fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over F_2 by trial division with every polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(p: u32) -> bool {
    let Some(d) = poly_degree(p) else { return false };
    if d == 0 {
        return false;
    }
    (2u32..1 << (d / 2 + 1)).all(|q| poly_rem(p, q) != 0)
}

/// Smallest irreducible polynomial of degree `m`, as a mask including `x^m`.
pub fn default_reduction(m: usize) -> u32 {
    ((1u32 << m)..(2u32 << m))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfContext {
    m: usize,
    reduction: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GfContext {
    /// Field of size `2^m`; `reduction` (with the `x^m` bit set) defaults to
    /// the smallest irreducible polynomial of that degree.
    pub fn new(m: usize, reduction: Option<u32>) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::range("extension degree", m as u64, "2..=8"));
        }
        let reduction = reduction.unwrap_or_else(|| default_reduction(m));
        if poly_degree(reduction) != Some(m as u32) {
            return Err(Error::domain(format!("reduction polynomial {reduction:#b} does not have degree {m}")));
        }
        if !is_irreducible(reduction) {
            return Err(Error::domain(format!("reduction polynomial {reduction:#b} is reducible")));
        }
        let order = (1u32 << m) - 1;
        let slow_mul = |a: u32, b: u32| poly_rem(clmul(a, b), reduction);
        let generator = (2..=order.max(2))
            .find(|&g| {
                let mut x = 1;
                (1..=order).all(|k| {
                    x = slow_mul(x, g);
                    (x == 1) == (k == order)
                })
            })
            .expect("the multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; 1 << m];
        let mut x = 1;
        for k in 0..order {
            exp[k as usize] = x;
            exp[(k + order) as usize] = x;
            log[x as usize] = k;
            x = slow_mul(x, generator);
        }
        Ok(GfContext {
            m,
            reduction,
            generator,
            exp,
            log,
        })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        1 << self.m
    }

    pub fn reduction(&self) -> u32 {
        self.reduction
    }

    /// A primitive element.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    fn order(&self) -> u32 {
        (1u32 << self.m) - 1
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 * (e % self.order() as u64)) % self.order() as u64;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        Ok(self.exp[((self.order() - self.log[a as usize]) % self.order()) as usize])
    }

    /// Absolute trace `Tr(x) = sum_{j<m} x^{2^j}`, always 0 or 1.
    pub fn trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.m {
            acc ^= y;
            y = self.mul(y, y);
        }
        debug_assert!(acc <= 1);
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_polynomials() {
        assert_eq!(default_reduction(2), 0b111);
        assert_eq!(default_reduction(3), 0b1011);
        assert_eq!(default_reduction(4), 0b10011);
        assert_eq!(default_reduction(6), 0b1000011);
        assert_eq!(default_reduction(8), 0b1_0001_1011);
    }

    #[test]
    fn rejects_bad_polynomials() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(matches!(GfContext::new(4, Some(0b10101)), Err(Error::Domain(_))));
        assert!(GfContext::new(4, Some(0b1011)).is_err());
        assert!(GfContext::new(9, None).is_err());
        assert!(GfContext::new(1, None).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for m in 2..=8 {
            let f = GfContext::new(m, None).unwrap();
            let n = f.size() as u32;
            for a in 0..n {
                assert_eq!(f.mul(a, 1), a);
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // cross-check the tables against schoolbook reduction
                    assert_eq!(f.mul(a, b), poly_rem(clmul(a, b), f.reduction()));
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            for a in (0..n).step_by(3) {
                for b in (0..n).step_by(5) {
                    for c in (0..n).step_by(7) {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_properties() {
        assert_eq!(GfContext::new(3, None).unwrap().trace(1), 1);
        assert_eq!(GfContext::new(6, None).unwrap().trace(1), 0);
        let f4 = GfContext::new(4, None).unwrap();
        assert_eq!((0..16).filter(|&x| f4.trace(x) == 0).count(), 8);
        for m in 2..=6 {
            let f = GfContext::new(m, None).unwrap();
            let n = f.size() as u32;
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(f.trace(x ^ y), f.trace(x) ^ f.trace(y));
                }
            }
            assert_eq!((0..n).filter(|&x| f.trace(x) == 0).count(), (n / 2) as usize);
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = GfContext::new(5, None).unwrap();
        for a in 0..32 {
            let mut acc = 1;
            for e in 0..40u64 {
                assert_eq!(f.pow(a, e), acc, "a={a} e={e}");
                acc = f.mul(acc, a);
            }
        }
    }
}
