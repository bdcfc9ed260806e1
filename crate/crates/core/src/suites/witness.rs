use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::vectfn::VectFn;

const M: usize = 4;

/// Random permutation of `F_2^4` whose first output coordinate is `x1`.
fn sample(rng: &mut ChaCha8Rng) -> VectFn {
    let mut even: Vec<u32> = (0..1 << M).filter(|y| y & 1 == 0).collect();
    let mut odd: Vec<u32> = (0..1 << M).filter(|y| y & 1 == 1).collect();
    even.shuffle(rng);
    odd.shuffle(rng);
    let table = (0..1u32 << M)
        .map(|x| if x & 1 == 0 { even[(x >> 1) as usize] } else { odd[(x >> 1) as usize] })
        .collect();
    VectFn::new(table).expect("valid table")
}

fn qualifies(f: &VectFn) -> bool {
    let weak = f.weak_differential_uniformity();
    weak.weakly_apn && f.degree_stats().n[1] == 1
}

/// Searches for a weakly-APN permutation in dimension 4 with exactly one
/// linear component, drawing at most `budget` candidates from a generator
/// seeded with `seed`. Such a function shows that the absence of linear
/// components is specific to APN functions.
pub fn find_weakly_apn_n1_witness(budget: u64, seed: u64) -> Result<Option<VectFn>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let f = sample(&mut rng);
        if qualifies(&f) {
            if !f.is_permutation() || f.is_apn() || f.component(1)?.degree() != 1 {
                return Err(Error::TheoremContradiction {
                    theorem: "a permutation in dimension 4 is not APN".into(),
                    witness: format!("{:?}", f.table()),
                });
            }
            return Ok(Some(f));
        }
    }
    Ok(None)
}
