//! Brute-force baselines. These are correctness anchors for tests and the
//! acceptance suite, written to share as little as possible with the fast
//! paths: no modular inverses, no bucketing, no Euler criterion.

use std::collections::HashSet;

use crate::charsum::{Interval, SpacedSet};
use crate::error::{Error, Result};
use crate::fp::{PrimeField, ENUMERATION_CAP};
use crate::poly::Poly;

/// Cap on nested-loop iterations.
pub const ITERATION_CAP: u128 = 100_000_000;

fn check_iterations(what: &'static str, size: u128) -> Result<()> {
    if size > ITERATION_CAP {
        return Err(Error::TooLarge {
            what,
            size,
            cap: ITERATION_CAP,
        });
    }
    Ok(())
}

/// `{a : f(a) = 0}` by evaluating at every field element.
pub fn brute_roots(f: &Poly) -> Result<Vec<u64>> {
    let p = f.field().modulus();
    if p > ENUMERATION_CAP {
        return Err(Error::FieldTooLarge {
            modulus: p,
            cap: ENUMERATION_CAP,
        });
    }
    let field = f.field();
    // Plain power-sum evaluation rather than Horner.
    Ok((0..p)
        .filter(|&x| {
            let mut pow = 1u64;
            let mut acc = 0u64;
            for &c in f.coeffs() {
                acc = field.add(acc, field.mul(c, pow));
                pow = field.mul(pow, x);
            }
            acc == 0
        })
        .collect())
}

/// Literal 6-fold loop over `(u1, u2, l1, l2, s1, s2)`, comparing
/// `(u1 + s1) l2 = (u2 + s2) l1` by cross-multiplication.
pub fn brute_count_w(interval: &Interval, primes: &[u64], set: &SpacedSet) -> Result<u64> {
    let f = set.field();
    let one_side = interval.len() as u128 * primes.len() as u128 * set.len() as u128;
    check_iterations("6-fold tuple loop", one_side * one_side)?;
    let mut count = 0;
    for u1 in interval.iter() {
        for u2 in interval.iter() {
            for &l1 in primes {
                for &l2 in primes {
                    for &s1 in set.elements() {
                        for &s2 in set.elements() {
                            let lhs = f.mul(f.reduce(u1 + s1), f.reduce(l2));
                            let rhs = f.mul(f.reduce(u2 + s2), f.reduce(l1));
                            count += (lhs == rhs) as u64;
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Literal 8-fold loop counting `(u1, u2, l1, l2, s1, t1, s2, t2)` with
/// `(u1 + s1)/l1 = (u2 + s2)/l2` and `(u1 + t1)/l1 = (u2 + t2)/l2`, which is
/// `sum W(x, y)^2`.
pub fn brute_sum_w_sq(interval: &Interval, primes: &[u64], set: &SpacedSet) -> Result<u64> {
    let f = set.field();
    let h = interval.len() as u128;
    let l = primes.len() as u128;
    let s = set.len() as u128;
    check_iterations("8-fold tuple loop", h * h * l * l * s * s * s * s)?;
    let same = |u1: u64, l1: u64, a: u64, u2: u64, l2: u64, b: u64| {
        f.mul(f.reduce(u1 + a), f.reduce(l2)) == f.mul(f.reduce(u2 + b), f.reduce(l1))
    };
    let mut count = 0;
    for u1 in interval.iter() {
        for u2 in interval.iter() {
            for &l1 in primes {
                for &l2 in primes {
                    for &s1 in set.elements() {
                        for &s2 in set.elements() {
                            if !same(u1, l1, s1, u2, l2, s2) {
                                continue;
                            }
                            for &t1 in set.elements() {
                                for &t2 in set.elements() {
                                    count += same(u1, l1, t1, u2, l2, t2) as u64;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// The set of nonzero squares, by squaring every element.
pub fn square_table(field: PrimeField) -> HashSet<u64> {
    (1..field.modulus()).map(|x| field.mul(x, x)).collect()
}

fn table_legendre(field: PrimeField, squares: &HashSet<u64>, a: u64) -> i64 {
    let a = field.reduce(a);
    if a == 0 {
        0
    } else if squares.contains(&a) {
        1
    } else {
        -1
    }
}

/// `T_chi` for the Legendre symbol, expanding `|sum|^2` into the double sum
/// over `(s1, s2)` and reading residuosity from a table of squares.
pub fn brute_t_legendre(interval: &Interval, set: &SpacedSet) -> u64 {
    let f = set.field();
    let squares = square_table(f);
    let mut total = 0i64;
    for u in interval.iter() {
        for &s1 in set.elements() {
            for &s2 in set.elements() {
                total += table_legendre(f, &squares, u + s1) * table_legendre(f, &squares, u + s2);
            }
        }
    }
    total as u64
}

/// `sum_x (F(x) / p)` from a table of squares.
pub fn brute_legendre_sum(poly: &Poly) -> i64 {
    let f = poly.field();
    let squares = square_table(f);
    (0..f.modulus())
        .map(|x| table_legendre(f, &squares, poly.eval(x)))
        .sum()
}

/// `O(n^2)` pairwise spacing check.
pub fn brute_is_h_spaced(field: PrimeField, set: &[u64], h: u64) -> bool {
    let p = field.modulus();
    for &a in set {
        for &b in set {
            if a % p == b % p {
                continue;
            }
            for k in 1..=h {
                if (a + k) % p == b % p {
                    return false;
                }
            }
        }
    }
    true
}
