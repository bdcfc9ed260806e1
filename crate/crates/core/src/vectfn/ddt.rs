use serde::Serialize;

use super::VectFn;

/// Difference distribution table: `count(a, b) = |{x : F(x+a) + F(x) = b}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ddt {
    m: usize,
    counts: Vec<u16>,
    delta: u32,
}

impl Ddt {
    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn count(&self, a: u32, b: u32) -> u32 {
        self.counts[(a as usize) << self.m | b as usize] as u32
    }

    pub fn row(&self, a: u32) -> &[u16] {
        let n = 1 << self.m;
        &self.counts[a as usize * n..(a as usize + 1) * n]
    }

    /// Differential uniformity: max over `a != 0` and all `b`.
    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn is_apn(&self) -> bool {
        self.delta == 2
    }
}

/// Weak differential uniformity data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakUniformity {
    pub delta_bar: u32,
    pub weakly_apn: bool,
    /// `|Im(D_a F)|` indexed by `a` (entry 0 is 1).
    pub image_sizes: Vec<u32>,
}

impl VectFn {
    pub fn ddt(&self) -> Ddt {
        let n = self.len();
        let mut counts = vec![0u16; n * n];
        let t = self.raw();
        for a in 0..n {
            let row = &mut counts[a * n..(a + 1) * n];
            for x in 0..n {
                row[(t[x ^ a] ^ t[x]) as usize] += 1;
            }
        }
        #[cfg(feature = "seeded-ddt-fault")]
        {
            let b = (0..n).max_by_key(|&b| counts[n + b]).unwrap_or(0);
            counts[n + b] += 2;
        }
        let delta = counts[n..].iter().copied().max().unwrap_or(0) as u32;
        Ddt {
            m: self.dim(),
            counts,
            delta,
        }
    }

    pub fn differential_uniformity(&self) -> u32 {
        self.ddt().delta()
    }

    pub fn is_apn(&self) -> bool {
        self.ddt().is_apn()
    }

    /// `max_{a != 0} min { d >= 1 : |Im(D_a F)| > 2^{m-1} / d }`.
    pub fn weak_differential_uniformity(&self) -> WeakUniformity {
        let half = 1u32 << (self.dim() - 1);
        let image_sizes: Vec<u32> = (0..self.len() as u32)
            .map(|a| self.derivative_image(a).len() as u32)
            .collect();
        let delta_bar = image_sizes[1..]
            .iter()
            .map(|&img| (1u32..).find(|&d| img * d > half).expect("img >= 1"))
            .max()
            .expect("m >= 2");
        WeakUniformity {
            delta_bar,
            weakly_apn: delta_bar == 2,
            image_sizes,
        }
    }
}
