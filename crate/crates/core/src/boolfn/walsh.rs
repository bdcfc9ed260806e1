use std::ops::{Add, Sub};

use super::BoolFn;

/// Walsh spectrum `W_f(u) = sum_x (-1)^{f(x) + u.x}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    m: usize,
    values: Vec<i32>,
}

/// In-place unnormalized fast Walsh-Hadamard transform.
pub(crate) fn fwht<T: Copy + Add<Output = T> + Sub<Output = T>>(v: &mut [T]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

fn signs(f: &BoolFn) -> Vec<i32> {
    f.iter().map(|b| if b { -1 } else { 1 }).collect()
}

impl WalshSpectrum {
    pub fn of(f: &BoolFn) -> Self {
        let mut values = signs(f);
        fwht(&mut values);
        WalshSpectrum { m: f.vars(), values }
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn at(&self, u: u32) -> i32 {
        self.values[u as usize]
    }

    /// `sum_u W_f(u)^2`; always `2^{2m}`.
    pub fn energy(&self) -> i64 {
        self.values.iter().map(|&w| (w as i64) * (w as i64)).sum()
    }

    /// `max_u |W_f(u)|`.
    pub fn max_abs(&self) -> u32 {
        self.values.iter().map(|w| w.unsigned_abs()).max().unwrap_or(0)
    }

    /// The common nonzero magnitude if the spectrum lies in `{0, +-mu}`.
    pub fn plateau(&self) -> Option<u32> {
        let mut mu = None;
        for w in self.values.iter().map(|w| w.unsigned_abs()).filter(|&w| w != 0) {
            match mu {
                None => mu = Some(w),
                Some(prev) if prev != w => return None,
                _ => {}
            }
        }
        mu
    }
}

impl BoolFn {
    /// Fourier values of all derivatives: entry `a` is `F(D_a f)`.
    ///
    /// Computed through the spectrum as `2^-m sum_u W_f(u)^2 (-1)^{u.a}`,
    /// which costs two transforms instead of `2^m` derivative evaluations.
    pub fn autocorrelation(&self) -> Vec<i64> {
        let spec = self.walsh_spectrum();
        let mut sq: Vec<i64> = spec.values.iter().map(|&w| (w as i64) * (w as i64)).collect();
        fwht(&mut sq);
        let shift = self.vars();
        sq.iter_mut().for_each(|v| *v >>= shift);
        sq
    }
}
