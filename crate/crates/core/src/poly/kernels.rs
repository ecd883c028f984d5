//! Slice-level kernels. Inputs are reduced residues, lowest degree first;
//! outputs are trimmed (no trailing zeros).

use crate::fp::PrimeField;

/// Degree (length of the shorter operand) below which multiplication is
/// schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Products of residues below 2^32 fit in 64 bits, so `u128` accumulators
/// can absorb any realistic number of them before reduction. Above that we
/// reduce after every step.
#[inline]
fn lazy(field: PrimeField) -> bool {
    field.modulus() < 1 << 32
}

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn mul_schoolbook(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    if lazy(field) {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (slot, &bj) in acc[i..].iter_mut().zip(b) {
                *slot += (ai * bj) as u128;
            }
        }
    } else {
        let p = field.modulus() as u128;
        for (i, &ai) in a.iter().enumerate() {
            for (slot, &bj) in acc[i..].iter_mut().zip(b) {
                *slot = (*slot + ai as u128 * bj as u128) % p;
            }
        }
    }
    let mut out: Vec<u64> = acc.into_iter().map(|c| field.reduce_wide(c)).collect();
    trim(&mut out);
    out
}

fn add_into(field: PrimeField, dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.add(*d, s);
    }
}

fn sub_into(field: PrimeField, dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.sub(*d, s);
    }
}

fn sum(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(field, &mut out, short);
    out
}

/// Untrimmed product of length `a.len() + b.len() - 1`.
fn mul_rec(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (la, lb) = (a.len(), b.len());
    if la == 0 || lb == 0 {
        return Vec::new();
    }
    let out_len = la + lb - 1;
    if la.min(lb) < KARATSUBA_THRESHOLD {
        let mut out = mul_schoolbook(field, a, b);
        out.resize(out_len, 0);
        return out;
    }
    let (long, short) = if la >= lb { (a, b) } else { (b, a) };
    let half = long.len() / 2;
    if short.len() <= half {
        // Unbalanced: cut the long operand into short-sized blocks.
        let mut out = vec![0u64; out_len];
        for (k, block) in long.chunks(short.len()).enumerate() {
            let part = mul_rec(field, block, short);
            add_into(field, &mut out[k * short.len()..], &part);
        }
        return out;
    }
    let (a0, a1) = long.split_at(half);
    let (b0, b1) = short.split_at(half);
    let z0 = mul_rec(field, a0, b0);
    let z2 = mul_rec(field, a1, b1);
    let mut z1 = mul_rec(field, &sum(field, a0, a1), &sum(field, b0, b1));
    sub_into(field, &mut z1, &z0);
    sub_into(field, &mut z1, &z2);

    let mut out = vec![0u64; out_len];
    add_into(field, &mut out, &z0);
    add_into(field, &mut out[half..], &z1);
    add_into(field, &mut out[2 * half..], &z2);
    out
}

/// Product with Karatsuba splitting above [`KARATSUBA_THRESHOLD`].
pub fn mul(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = mul_rec(field, a, b);
    trim(&mut out);
    out
}

/// Division with remainder by a nonzero divisor `b` (trimmed).
///
/// `lc_inv` is the inverse of the leading coefficient of `b`. When
/// `want_quotient` is false the quotient is not materialised.
pub fn div_rem(
    field: PrimeField,
    a: &[u64],
    b: &[u64],
    lc_inv: u64,
    want_quotient: bool,
) -> (Vec<u64>, Vec<u64>) {
    debug_assert!(!b.is_empty() && *b.last().unwrap() != 0);
    if a.len() < b.len() {
        let mut r = a.to_vec();
        trim(&mut r);
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let q_len = a.len() - db;
    let mut quotient = if want_quotient {
        vec![0u64; q_len]
    } else {
        Vec::new()
    };
    let monic = lc_inv == 1;
    let body = &b[..db];

    if lazy(field) {
        let mut acc: Vec<u128> = a.iter().map(|&c| c as u128).collect();
        for k in (db..a.len()).rev() {
            let lead = field.reduce_wide(acc[k]);
            let q = if monic { lead } else { field.mul(lead, lc_inv) };
            if want_quotient {
                quotient[k - db] = q;
            }
            if q == 0 {
                continue;
            }
            let m = field.modulus() - q;
            for (slot, &bj) in acc[k - db..k].iter_mut().zip(body) {
                *slot += (m * bj) as u128;
            }
        }
        let mut r: Vec<u64> = acc[..db].iter().map(|&c| field.reduce_wide(c)).collect();
        trim(&mut r);
        (quotient, r)
    } else {
        let mut acc = a.to_vec();
        for k in (db..a.len()).rev() {
            let q = field.mul(acc[k], lc_inv);
            if want_quotient {
                quotient[k - db] = q;
            }
            if q == 0 {
                continue;
            }
            for (slot, &bj) in acc[k - db..k].iter_mut().zip(body) {
                *slot = field.sub(*slot, field.mul(q, bj));
            }
        }
        acc.truncate(db);
        trim(&mut acc);
        (quotient, acc)
    }
}

/// Remainder modulo a fixed polynomial, for repeated modular multiplication.
#[derive(Clone, Debug)]
pub struct ModulusPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
    lc_inv: u64,
}

impl ModulusPoly {
    /// `coeffs` must be trimmed with degree at least 1.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let lc_inv = field
            .inv(*coeffs.last().expect("nonzero modulus"))
            .expect("leading coefficient is nonzero");
        Self {
            field,
            coeffs,
            lc_inv,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn rem(&self, a: &[u64]) -> Vec<u64> {
        div_rem(self.field, a, &self.coeffs, self.lc_inv, false).1
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.rem(&mul(self.field, a, b))
    }

    /// `base^exp mod self` by left-to-right binary exponentiation.
    pub fn pow(&self, base: &[u64], exp: u64) -> Vec<u64> {
        let base = self.rem(base);
        let mut result = self.rem(&[1]);
        if exp == 0 {
            return result;
        }
        for bit in (0..64 - exp.leading_zeros()).rev() {
            result = self.mulmod(&result, &result);
            if (exp >> bit) & 1 == 1 {
                result = self.mulmod(&result, &base);
            }
        }
        result
    }
}
