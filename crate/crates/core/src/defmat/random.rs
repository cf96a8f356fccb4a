//! Random valid defining matrices for property suites.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{DefiningMatrix, SurfaceType};

/// Bounds for [`random_defining_matrix`].
#[derive(Clone, Copy, Debug)]
pub struct RandomBounds {
    pub max_r: usize,
    pub max_block: usize,
    pub max_l: i64,
    pub max_abs_d: i64,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds { max_r: 3, max_block: 3, max_l: 7, max_abs_d: 9 }
    }
}

const TYPES: [SurfaceType; 4] = [SurfaceType::EE, SurfaceType::PE, SurfaceType::EP, SurfaceType::PP];

/// Draws `r`, the block lengths, `l_ij` and coprime `d_ij` uniformly within
/// `bounds`, sorts every block by slope and retries until the data is valid.
pub fn random_defining_matrix<R: Rng + ?Sized>(rng: &mut R, bounds: RandomBounds) -> DefiningMatrix {
    loop {
        let kind = *TYPES.choose(rng).expect("nonempty");
        let r = rng.gen_range(1..=bounds.max_r);
        let mut l = Vec::with_capacity(r + 1);
        let mut d = Vec::with_capacity(r + 1);
        for _ in 0..=r {
            let len = rng.gen_range(1..=bounds.max_block);
            let mut block: Vec<(i64, i64)> = (0..len)
                .map(|_| {
                    let li = rng.gen_range(1..=bounds.max_l);
                    loop {
                        let di = rng.gen_range(-bounds.max_abs_d..=bounds.max_abs_d);
                        if li.gcd(&di) == 1 {
                            break (li, di);
                        }
                    }
                })
                .collect();
            // Decreasing slope d/l.
            block.sort_by(|a, b| (b.1 * a.0).cmp(&(a.1 * b.0)));
            l.push(block.iter().map(|x| BigInt::from(x.0)).collect());
            d.push(block.iter().map(|x| BigInt::from(x.1)).collect());
        }
        let dm = DefiningMatrix::new(kind, l, d).expect("well-shaped");
        if dm.is_valid() {
            return dm;
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn draws_are_valid_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_defining_matrix(&mut a, RandomBounds::default());
            assert!(x.is_valid());
            assert_eq!(x, random_defining_matrix(&mut b, RandomBounds::default()));
        }
    }
}
