//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Independent sub-streams, one per experiment point, use
//! ChaCha's stream selector so that results do not depend on evaluation
//! order.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fp::{is_prime, PrimeField};
use crate::poly::Poly;

pub type CorpusRng = ChaCha8Rng;

/// Name recorded in experiment output.
pub const PRNG_NAME: &str = "chacha8";

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> CorpusRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform odd prime in `[lo, hi]` by rejection.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> Result<u64> {
    let lo = lo.max(3);
    if lo > hi {
        return Err(Error::InvalidConfig(format!(
            "empty prime range [{lo}, {hi}]"
        )));
    }
    for _ in 0..100_000 {
        let n = rng.gen_range(lo..=hi);
        if is_prime(n) {
            return Ok(n);
        }
    }
    Err(Error::InvalidConfig(format!(
        "no prime found in [{lo}, {hi}]"
    )))
}

/// `k` distinct residues, ascending.
pub fn distinct_residues<R: Rng + ?Sized>(rng: &mut R, field: PrimeField, k: usize) -> Vec<u64> {
    let p = field.modulus();
    assert!(k as u64 <= p, "cannot draw {k} distinct residues mod {p}");
    let mut set = BTreeSet::new();
    while set.len() < k {
        set.insert(rng.gen_range(0..p));
    }
    set.into_iter().collect()
}

/// Product of `k` distinct random linear factors, with its roots.
pub fn random_split_poly<R: Rng + ?Sized>(
    rng: &mut R,
    field: PrimeField,
    k: usize,
) -> (Poly, Vec<u64>) {
    let roots = distinct_residues(rng, field, k);
    (Poly::from_roots(field, &roots), roots)
}

/// Split polynomial with roots packed into a window of width `window`, so
/// that close pairs are common.
pub fn clustered_split_poly<R: Rng + ?Sized>(
    rng: &mut R,
    field: PrimeField,
    k: usize,
    window: u64,
) -> (Poly, Vec<u64>) {
    let p = field.modulus();
    let window = window.clamp(k as u64, p);
    let start = rng.gen_range(0..p);
    let mut set = BTreeSet::new();
    while set.len() < k {
        set.insert((start + rng.gen_range(0..window)) % p);
    }
    let roots: Vec<u64> = set.into_iter().collect();
    (Poly::from_roots(field, &roots), roots)
}

/// Random polynomial of exact degree `deg`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, field: PrimeField, deg: usize) -> Poly {
    let p = field.modulus();
    let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    coeffs.push(rng.gen_range(1..p));
    Poly::new(field, coeffs)
}

/// Random squarefree polynomial with degree uniform in `1..=max_deg`.
pub fn random_squarefree<R: Rng + ?Sized>(rng: &mut R, field: PrimeField, max_deg: usize) -> Poly {
    assert!(max_deg >= 1);
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let f = random_poly(rng, field, deg);
        if f.gcd(&f.derivative()).map(|g| g.is_one()).unwrap_or(false) {
            return f;
        }
    }
}
