//! Seeded draws of scalars and algebra elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Scalar, ScalarMode};

/// Deterministic source of random trial data.
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn new(seed: u64) -> Self {
        TrialRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Rationals `p/q` with `p` in `[-9, 9]` and `q` in `{1, 2, 3}`;
    /// residues uniformly.
    pub fn scalar(&mut self, mode: ScalarMode) -> Scalar {
        match mode {
            ScalarMode::Rational => {
                let p = self.0.random_range(-9i64..=9);
                let q = self.0.random_range(1i64..=3);
                mode.from_ratio(p, q).expect("nonzero denominator")
            }
            ScalarMode::Modular(m) => mode.from_i64(self.0.random_range(0..m) as i64),
        }
    }

    pub fn vector(&mut self, mode: ScalarMode, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.scalar(mode)).collect()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.0.random_range(0..n)
    }

    pub fn unit_f64(&mut self) -> f64 {
        self.0.random::<f64>() - 0.5
    }
}
