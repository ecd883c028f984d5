//! Prime-field scalar arithmetic and multiplicative characters.
//!
//! Residues are stored as `u64` values in `[0, p)` with `p < 2^62`, so every
//! product fits in a `u128` intermediate. [`PrimeField`] is the modulus
//! context; [`FieldElement`] pairs a residue with its context for the typed
//! API. Hot loops elsewhere in the crate work on raw `u64` slices and call
//! the `PrimeField` methods directly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Moduli must stay below this bound.
pub const MODULUS_LIMIT: u64 = 1 << 62;

/// Largest modulus for which discrete-log tables and full-field enumeration
/// are allowed.
pub const ENUMERATION_CAP: u64 = 1 << 26;

/// Modulus context for `F_p`, `p` an odd prime below 2^62.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    /// Creates a context after certifying that `p` is an odd prime.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge(p));
        }
        if p < 3 {
            return Err(Error::ModulusTooSmall(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Wraps a raw value, reducing it modulo `p`.
    #[inline]
    pub fn elem(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.p,
            field: self,
        }
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i128(self, value: i128) -> u64 {
        value.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn reduce(self, value: u64) -> u64 {
        value % self.p
    }

    #[inline]
    pub fn reduce_wide(self, value: u128) -> u64 {
        (value % self.p as u128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.p < 1 << 32 {
            a * b % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut result = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i128(t0))
    }

    /// Legendre symbol by Euler's criterion.
    pub fn legendre(self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// `sqrt(p)` as a float, used for shift-range sizing.
    pub fn sqrt_p(self) -> f64 {
        (self.p as f64).sqrt()
    }
}

/// A residue modulo `p` together with its field context.
///
/// Ordering compares the residue first, so sorting elements of one field
/// sorts them in ascending order of their representatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        Ok(self.field)
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.add(self.value, other.value)))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.sub(self.value, other.value)))
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<Self> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    pub fn pow(self, exp: u64) -> Self {
        self.field.elem(self.field.pow(self.value, exp))
    }

    pub fn legendre(self) -> i8 {
        self.field.legendre(self.value)
    }
}

// The operator forms panic on mismatched moduli; use the `checked_*`
// methods when the operands come from different contexts.
impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.field.elem(self.field.neg(self.value))
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod_u64(result, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    result
}

/// Deterministic primality test for all `u64` inputs.
///
/// Strong-pseudoprime test to the first twelve prime bases, which has no
/// false positives below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in the closed interval `[lower, 2 * lower]`, by sieving.
pub fn primes_in_interval(lower: u64) -> Vec<u64> {
    let upper = lower.saturating_mul(2) as usize;
    if upper < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; upper + 1];
    let mut primes = Vec::new();
    for i in 2..=upper {
        if composite[i] {
            continue;
        }
        if i as u64 >= lower {
            primes.push(i as u64);
        }
        let mut j = i * i;
        while j <= upper {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Distinct prime factors of `n`, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root of `F_p^*`.
pub fn primitive_root(field: PrimeField) -> u64 {
    let p = field.modulus();
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| field.pow(g, (p - 1) / q) != 1))
        .expect("a prime field has a primitive root")
}

/// Value of a multiplicative character: zero, or the root of unity
/// `exp(2 pi i k / d)` identified by its index `k` in `Z/d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root(u64),
}

impl CharValue {
    pub fn to_complex(self, order: u64) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root(k) => {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / order as f64)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharKind {
    /// Legendre symbol, evaluated by Euler's criterion.
    Quadratic,
    /// Order-`d` character read off a discrete-log table.
    General,
}

#[derive(Debug)]
struct DiscreteLog {
    generator: u64,
    log: Vec<u32>,
}

impl DiscreteLog {
    fn build(field: PrimeField) -> Self {
        let p = field.modulus();
        let generator = primitive_root(field);
        let mut log = vec![0u32; p as usize];
        let mut x = 1u64;
        for k in 0..p - 1 {
            log[x as usize] = k as u32;
            x = field.mul(x, generator);
        }
        Self { generator, log }
    }
}

/// A multiplicative character of `F_p^*` of order `d`, extended by `chi(0) = 0`.
///
/// For the general kind, `chi(g^k) = exp(2 pi i k / d)` where `g` is the
/// smallest primitive root.
#[derive(Clone, Debug)]
pub struct Character {
    field: PrimeField,
    order: u64,
    kind: CharKind,
    table: Option<Arc<DiscreteLog>>,
}

impl Character {
    pub fn quadratic(field: PrimeField) -> Self {
        Self {
            field,
            order: 2,
            kind: CharKind::Quadratic,
            table: None,
        }
    }

    /// General order-`d` character. The discrete-log table is built only when
    /// `p <= 2^26`; above that, evaluation fails with [`Error::TableMissing`].
    pub fn general(field: PrimeField, order: u64) -> Result<Self> {
        let p = field.modulus();
        if order < 2 || (p - 1) % order != 0 {
            return Err(Error::InvalidCharacterOrder { order, modulus: p });
        }
        let table = (p <= ENUMERATION_CAP).then(|| Arc::new(DiscreteLog::build(field)));
        Ok(Self {
            field,
            order,
            kind: CharKind::General,
            table,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn kind(&self) -> CharKind {
        self.kind
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// The primitive root the table was built from, if any.
    pub fn generator(&self) -> Option<u64> {
        self.table.as_ref().map(|t| t.generator)
    }

    /// Evaluates the character at a raw residue.
    pub fn value(&self, a: u64) -> Result<CharValue> {
        let a = self.field.reduce(a);
        if a == 0 {
            return Ok(CharValue::Zero);
        }
        match self.kind {
            CharKind::Quadratic => Ok(match self.field.legendre(a) {
                1 => CharValue::Root(0),
                _ => CharValue::Root(1),
            }),
            CharKind::General => {
                let table = self.table.as_ref().ok_or(Error::TableMissing {
                    order: self.order,
                    modulus: self.field.modulus(),
                })?;
                let k = table.log[a as usize] as u64;
                // chi(g) = exp(2 pi i / d), so chi(g^k) has index k mod d.
                Ok(CharValue::Root(k % self.order))
            }
        }
    }

    pub fn value_of(&self, a: FieldElement) -> Result<CharValue> {
        if a.field() != self.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: a.field().modulus(),
            });
        }
        self.value(a.value())
    }

    pub fn complex_value(&self, a: u64) -> Result<Complex64> {
        Ok(self.value(a)?.to_complex(self.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn context_creation() {
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert!(PrimeField::new(1_000_003).is_ok());
        assert!(trial_division_is_prime(1_000_003));
        assert_eq!(PrimeField::new(2), Err(Error::ModulusTooSmall(2)));
        assert_eq!(
            PrimeField::new(1 << 62),
            Err(Error::ModulusTooLarge(1 << 62))
        );
        // 2^61 - 1 is a Mersenne prime.
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_division_is_prime(n), "n = {n}");
        }
        // Strong pseudoprimes to several small bases.
        for n in [
            3_215_031_751u64,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
        ] {
            assert!(!is_prime(n));
        }
    }

    #[test]
    fn scalar_examples() {
        let f7 = f(7);
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3).unwrap(), 5);
        assert_eq!(f7.pow(2, 6), 1);
        assert_eq!(f7.inv(0), Err(Error::DivisionByZero));

        let a = f7.elem(3);
        assert_eq!((a * f7.elem(5)).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 5);
        assert_eq!((-a).value(), 4);
        assert_eq!(
            a.checked_add(f(11).elem(1)),
            Err(Error::ModulusMismatch { left: 7, right: 11 })
        );
    }

    #[test]
    fn wide_modulus_arithmetic() {
        let p = (1u64 << 61) - 1;
        let fp = f(p);
        let a = p - 2;
        assert_eq!(fp.mul(a, a), 4);
        let inv = fp.inv(a).unwrap();
        assert_eq!(fp.mul(inv, a), 1);
        assert_eq!(fp.pow(123_456_789, p - 1), 1);
    }

    #[test]
    fn legendre_examples() {
        let f7 = f(7);
        assert_eq!(f7.legendre(2), 1);
        assert_eq!(f7.legendre(3), -1);
        assert_eq!(f7.legendre(0), 0);
    }

    #[test]
    fn legendre_exhaustive_small_primes() {
        for p in (3..500u64).filter(|&p| is_prime(p)) {
            let fp = f(p);
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| fp.mul(x, x)).collect();
            let mut residues = 0;
            for a in 1..p {
                let l = fp.legendre(a);
                assert_eq!(l == 1, squares.contains(&a));
                residues += (l == 1) as u64;
                for b in 1..p {
                    assert_eq!(fp.legendre(fp.mul(a, b)), l * fp.legendre(b));
                }
            }
            assert_eq!(residues, (p - 1) / 2);
        }
    }

    #[test]
    fn fermat_exhaustive() {
        for p in (3..200u64).filter(|&p| is_prime(p)) {
            let fp = f(p);
            for a in 1..p {
                assert_eq!(fp.pow(a, p - 1), 1);
                assert_eq!(fp.mul(fp.inv(a).unwrap(), a), 1);
            }
        }
    }

    #[test]
    fn primes_in_interval_examples() {
        assert_eq!(primes_in_interval(10), vec![11, 13, 17, 19]);
        assert_eq!(primes_in_interval(2), vec![2, 3]);
        assert_eq!(primes_in_interval(24), vec![29, 31, 37, 41, 43, 47]);
    }

    #[test]
    fn character_examples() {
        let f7 = f(7);
        let chi3 = Character::general(f7, 3).unwrap();
        assert_eq!(chi3.generator(), Some(3));
        assert_eq!(chi3.value(3).unwrap(), CharValue::Root(1));
        assert_eq!(chi3.value(1).unwrap(), CharValue::Root(0));
        assert_eq!(chi3.value(0).unwrap(), CharValue::Zero);
        assert!(Character::general(f7, 4).is_err());

        let chi2 = Character::quadratic(f7);
        assert_eq!(chi2.value(1).unwrap(), CharValue::Root(0));
        assert_eq!(chi2.value(3).unwrap(), CharValue::Root(1));
    }

    #[test]
    fn order_two_table_matches_legendre() {
        for p in (3..500u64).filter(|&p| is_prime(p)) {
            let fp = f(p);
            let chi = Character::general(fp, 2).unwrap();
            for a in 0..p {
                let expected = match fp.legendre(a) {
                    0 => CharValue::Zero,
                    1 => CharValue::Root(0),
                    _ => CharValue::Root(1),
                };
                assert_eq!(chi.value(a).unwrap(), expected, "p = {p}, a = {a}");
            }
        }
    }

    #[test]
    fn general_character_is_multiplicative() {
        let fp = f(13);
        for d in [2u64, 3, 4, 6, 12] {
            let chi = Character::general(fp, d).unwrap();
            for a in 1..13 {
                for b in 1..13 {
                    let (CharValue::Root(x), CharValue::Root(y), CharValue::Root(z)) = (
                        chi.value(a).unwrap(),
                        chi.value(b).unwrap(),
                        chi.value(fp.mul(a, b)).unwrap(),
                    ) else {
                        panic!("nonzero argument mapped to zero");
                    };
                    assert_eq!((x + y) % d, z);
                }
            }
        }
    }

    #[test]
    fn large_field_general_character_has_no_table() {
        let fp = f(67_108_879); // smallest prime above 2^26
        let chi = Character::general(fp, 2).unwrap();
        assert!(!chi.has_table());
        assert!(matches!(chi.value(5), Err(Error::TableMissing { .. })));
        assert_eq!(chi.value(0).unwrap(), CharValue::Zero);
    }
}
