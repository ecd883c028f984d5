//! Fixed, seeded inputs shared by the benchmarks.

use fproots::corpus;
use fproots::{Poly, PrimeField};

pub const SEED: u64 = 0xbe7c;

pub fn field(p: u64) -> PrimeField {
    PrimeField::new(p).expect("benchmark modulus is prime")
}

/// Random polynomial of exact degree `deg`.
pub fn dense(p: u64, deg: usize) -> Poly {
    corpus::random_poly(&mut corpus::rng(SEED ^ deg as u64), field(p), deg)
}

/// Product of `k` distinct random linear factors.
pub fn split(p: u64, k: usize) -> Poly {
    corpus::random_split_poly(&mut corpus::rng(SEED ^ k as u64), field(p), k).0
}
