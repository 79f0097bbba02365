//! Seeded random exact data for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{blades, Form};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// p/q with p in [-9, 9] and q in [1, 9].
    pub fn rational(&mut self) -> Scalar {
        Scalar::frac(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=9))
    }

    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Positive p/q with p, q in [1, 9].
    pub fn positive(&mut self) -> Scalar {
        Scalar::frac(self.rng.gen_range(1..=9), self.rng.gen_range(1..=9))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vec<Scalar> {
        loop {
            let v = self.vector(n);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    /// Every coefficient drawn independently.
    pub fn form(&mut self, n: usize, k: usize) -> Form {
        let v: Vec<Scalar> = blades(n, k).iter().map(|_| self.rational()).collect();
        Form::from_vec(n, k, &v)
    }

    pub fn nonzero_form(&mut self, n: usize, k: usize) -> Form {
        loop {
            let f = self.form(n, k);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Orthogonal matrix with rational entries, via the Cayley transform of a random skew matrix.
    pub fn orthogonal(&mut self, n: usize) -> Matrix<Scalar> {
        let skew = self.form(n, 2).to_so().expect("2-form");
        let id = Matrix::identity(n);
        let inv = crate::matrix::inverse(&id.add(&skew)).expect("I + skew is invertible");
        id.sub(&skew).mul(&inv)
    }
}
