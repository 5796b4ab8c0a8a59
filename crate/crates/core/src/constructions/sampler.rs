use alloc::string::String;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, Rational};

/// Default bound on numerators and denominators of sampled parameters.
pub const DEFAULT_HEIGHT: i64 = 97;
/// Default number of draws before a sampled build gives up.
pub const DEFAULT_BUDGET: u32 = 64;
/// Default cap on the size of iterated builds.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

/// A sampled free parameter `p/q + (r/s)i`, lifted to a working conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericParam {
    pub name: String,
    pub value: CycloNum,
    pub height: i64,
    /// Draws of this parameter until it was accepted, counting the accepted one.
    pub attempts: u32,
}

/// Seeded source of generic parameters plus the limits every build honours.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
    pub height: i64,
    pub budget: u32,
    pub size_cap: usize,
    draws: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            height: DEFAULT_HEIGHT,
            budget: DEFAULT_BUDGET,
            size_cap: DEFAULT_SIZE_CAP,
            draws: 0,
        }
    }

    pub fn with_height(mut self, height: i64) -> Sampler {
        self.height = height;
        self
    }

    pub fn with_budget(mut self, budget: u32) -> Sampler {
        self.budget = budget;
        self
    }

    pub fn with_size_cap(mut self, cap: usize) -> Sampler {
        self.size_cap = cap;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Total values drawn so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Uniform in `[-H, H] \ {0}`.
    pub fn nonzero(&mut self) -> i64 {
        self.draws += 1;
        let h = self.height;
        let v = self.rng.gen_range(1..=2 * h);
        if v <= h {
            v - h - 1
        } else {
            v - h
        }
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.nonzero();
        let q = self.nonzero();
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// A Gaussian rational in `Q(ζ_order)`; `order` must be a multiple of 4.
    pub fn gaussian(&mut self, order: u32) -> Result<CycloNum> {
        let re = self.rational();
        let im = self.rational();
        CycloNum::gaussian(order, &re, &im)
    }

    /// Uniform integer in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.draws += 1;
        self.rng.gen_range(0..n)
    }

    pub fn param(&mut self, name: &str, order: u32, attempts: u32) -> Result<GenericParam> {
        if order % 4 != 0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "parameter {name} needs a conductor divisible by 4, got {order}"
            )));
        }
        Ok(GenericParam { name: name.into(), value: self.gaussian(order)?, height: self.height, attempts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn deterministic_and_in_range() {
        let mut a = Sampler::new(5);
        let mut b = Sampler::new(5);
        for _ in 0..1000 {
            let x = a.nonzero();
            assert_eq!(x, b.nonzero());
            assert!(x != 0 && x.abs() <= DEFAULT_HEIGHT);
        }
        let g = a.gaussian(12).unwrap();
        assert_eq!(g, b.gaussian(12).unwrap());
        assert!(!g.conj().is_zero());
        assert!(a.rational().abs() <= Rational::from_integer(DEFAULT_HEIGHT.into()));
    }

    #[test]
    fn both_signs_appear() {
        let mut s = Sampler::new(0).with_height(2);
        let vals: alloc::vec::Vec<i64> = (0..200).map(|_| s.nonzero()).collect();
        for v in [-2, -1, 1, 2] {
            assert!(vals.contains(&v));
        }
    }
}
