//! Dense univariate polynomials over `F_p`.
//!
//! Coefficients are stored lowest degree first and kept trimmed, so the zero
//! polynomial is the empty coefficient list and its degree is `None`.
//!
//! The text form is a comma-separated list of decimal coefficients, constant
//! term first: `"6,0,0,1"` is `X^3 + 6`.

pub mod kernels;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fp::{FieldElement, PrimeField};

pub use kernels::{ModulusPoly, KARATSUBA_THRESHOLD};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.modulus(), self)
    }
}

/// Constant-term-first decimal list; the zero polynomial prints as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Poly {
    /// Builds a polynomial from raw coefficients, reducing each modulo `p`.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        kernels::trim(&mut coeffs);
        Self { field, coeffs }
    }

    /// Coefficients already known to be reduced; only trims.
    pub(crate) fn from_reduced(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        kernels::trim(&mut coeffs);
        Self { field, coeffs }
    }

    pub fn from_elements(elems: &[FieldElement]) -> Result<Self> {
        let Some(first) = elems.first() else {
            return Err(Error::Parse("no coefficients".into()));
        };
        let field = first.field();
        let mut coeffs = Vec::with_capacity(elems.len());
        for e in elems {
            if e.field() != field {
                return Err(Error::ModulusMismatch {
                    left: field.modulus(),
                    right: e.field().modulus(),
                });
            }
            coeffs.push(e.value());
        }
        Ok(Self::from_reduced(field, coeffs))
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `X`.
    pub fn x(field: PrimeField) -> Self {
        Self::from_reduced(field, vec![0, 1])
    }

    /// `X - r`.
    pub fn linear(field: PrimeField, r: u64) -> Self {
        Self::from_reduced(field, vec![field.neg(field.reduce(r)), 1])
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots(field: PrimeField, roots: &[u64]) -> Self {
        // Balanced product tree keeps the Karatsuba path busy on large inputs.
        fn tree(field: PrimeField, roots: &[u64]) -> Vec<u64> {
            match roots {
                [] => vec![1],
                [r] => vec![field.neg(field.reduce(*r)), 1],
                _ => {
                    let (lo, hi) = roots.split_at(roots.len() / 2);
                    kernels::mul(field, &tree(field, lo), &tree(field, hi))
                }
            }
        }
        Self::from_reduced(field, tree(field, roots))
    }

    /// Parses the constant-term-first decimal list. Negative and oversized
    /// coefficients are reduced modulo `p`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            let value: i128 = token
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {token:?}")))?;
            coeffs.push(field.from_i128(value));
        }
        Ok(Self::from_reduced(field, coeffs))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0. Only for callers
    /// that have already excluded zero.
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        let c = f.reduce(c);
        Self::from_reduced(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_reduced(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_reduced(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    /// Exact product; Karatsuba above [`KARATSUBA_THRESHOLD`], schoolbook below.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Self::from_reduced(
            self.field,
            kernels::mul(self.field, &self.coeffs, &other.coeffs),
        ))
    }

    /// Reference quadratic-time product.
    pub fn mul_schoolbook(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Self::from_reduced(
            self.field,
            kernels::mul_schoolbook(self.field, &self.coeffs, &other.coeffs),
        ))
    }

    /// Returns `(q, r)` with `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let lc = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.field.inv(lc)?;
        let (q, r) = kernels::div_rem(self.field, &self.coeffs, &divisor.coeffs, lc_inv, true);
        Ok((
            Self::from_reduced(self.field, q),
            Self::from_reduced(self.field, r),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.check_field(divisor)?;
        let lc = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.field.inv(lc)?;
        let (_, r) = kernels::div_rem(self.field, &self.coeffs, &divisor.coeffs, lc_inv, false);
        Ok(Self::from_reduced(self.field, r))
    }

    /// Quotient when `divisor` is known to divide `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd by the Euclidean remainder sequence, normalising each step.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        Ok(gcd_monic(
            self.field,
            self.monic().coeffs,
            other.monic().coeffs,
        ))
    }

    /// `self^exp mod modulus`, reduced below the modulus degree.
    pub fn powmod(&self, exp: u64, modulus: &Poly) -> Result<Poly> {
        self.check_field(modulus)?;
        match modulus.degree() {
            None | Some(0) => Err(Error::ModulusDegreeZero),
            Some(_) => {
                let m = ModulusPoly::new(self.field, modulus.coeffs.clone());
                Ok(Self::from_reduced(self.field, m.pow(&self.coeffs, exp)))
            }
        }
    }

    /// `f(X + u)`, by repeated synthetic division (Taylor shift).
    pub fn shift(&self, u: u64) -> Poly {
        let f = self.field;
        let u = f.reduce(u);
        let mut c = self.coeffs.clone();
        if u == 0 || c.len() <= 1 {
            return self.clone();
        }
        let n = c.len() - 1;
        for i in 0..n {
            for j in (i..n).rev() {
                c[j] = f.add(c[j], f.mul(u, c[j + 1]));
            }
        }
        Self::from_reduced(f, c)
    }

    /// Horner evaluation at a raw residue.
    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let x = f.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_at(&self, x: FieldElement) -> Result<FieldElement> {
        if x.field() != self.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: x.field().modulus(),
            });
        }
        Ok(self.field.elem(self.eval(x.value())))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Self::from_reduced(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.reduce(i as u64), c))
                .collect(),
        )
    }

    /// Squarefree decomposition `monic(self) = prod a_i^i` by Yun's algorithm,
    /// returned as `(a_i, i)` for the nonconstant `a_i`.
    ///
    /// Requires `deg self < p`, where the derivative detects every repeated
    /// factor.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, u32)>> {
        let n = self.degree().ok_or(Error::ZeroInput)?;
        if n as u64 >= self.field.modulus() {
            return Err(Error::TooLarge {
                what: "degree for squarefree decomposition",
                size: n as u128,
                cap: self.field.modulus() as u128 - 1,
            });
        }
        let mut out = Vec::new();
        if n == 0 {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d)?;
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Degree of the squarefree part, i.e. the number of distinct roots in
    /// the algebraic closure (valid for `deg self < p`).
    pub fn distinct_root_count(&self) -> Result<usize> {
        Ok(self
            .squarefree_decomposition()?
            .iter()
            .map(|(a, _)| a.deg())
            .sum())
    }
}

/// Euclid on monic inputs (either may be empty, not both).
pub(crate) fn gcd_monic(field: PrimeField, mut r0: Vec<u64>, mut r1: Vec<u64>) -> Poly {
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let lc_inv = field
            .inv(*r1.last().unwrap())
            .expect("nonzero leading coefficient");
        let (_, r) = kernels::div_rem(field, &r0, &r1, lc_inv, false);
        r0 = r1;
        r1 = r;
    }
    Poly::from_reduced(field, r0).monic()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_reduced(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn p7(text: &str) -> Poly {
        Poly::parse(f7(), text).unwrap()
    }

    #[test]
    fn text_form() {
        let f = p7("6,0,0,1");
        assert_eq!(f.degree(), Some(3));
        assert_eq!(f.to_string(), "6,0,0,1");
        assert_eq!(p7("0").to_string(), "0");
        assert_eq!(p7("0,0").degree(), None);
        assert_eq!(p7("-1, 8").coeffs(), &[6, 1]);
        assert!(Poly::parse(f7(), "").is_err());
        assert!(Poly::parse(f7(), "1,x").is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p7("1,1") * &p7("6,1"), p7("6,0,1"));
        let a = p7("3,4,5");
        assert_eq!(&a * &Poly::one(f7()), a);
        assert!((&a * &Poly::zero(f7())).is_zero());
        let g = Poly::parse(PrimeField::new(11).unwrap(), "1").unwrap();
        assert!(matches!(
            a.checked_mul(&g),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn div_rem_examples() {
        let (q, r) = p7("6,0,1").div_rem(&p7("6,1")).unwrap();
        assert_eq!(q, p7("1,1"));
        assert!(r.is_zero());

        let a = p7("2,5,3");
        let (q, r) = a.div_rem(&a).unwrap();
        assert!(q.is_one() && r.is_zero());

        let (q, r) = p7("2,1").div_rem(&p7("1,2,3")).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p7("2,1"));

        assert_eq!(a.div_rem(&Poly::zero(f7())), Err(Error::DivisionByZero));

        // Non-monic divisor.
        let (q, r) = p7("1,0,0,4").div_rem(&p7("3,2")).unwrap();
        assert_eq!(&(&q * &p7("3,2")) + &r, p7("1,0,0,4"));
        assert!(r.degree().is_none() || r.degree() < Some(1));
    }

    #[test]
    fn gcd_examples() {
        // X^2 + 6 = (X+1)(X+6), X^2 + 4X + 3 = (X+1)(X+3).
        assert_eq!(p7("6,0,1").gcd(&p7("3,4,1")).unwrap(), p7("1,1"));
        assert_eq!(p7("2,0,4").gcd(&Poly::zero(f7())).unwrap(), p7("4,0,1"));
        assert!(p7("2,0,4").gcd(&Poly::one(f7())).unwrap().is_one());
        assert_eq!(
            Poly::zero(f7()).gcd(&Poly::zero(f7())),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn powmod_examples() {
        let m = p7("6,0,0,1");
        let x = Poly::x(f7());
        assert!(x.powmod(3, &m).unwrap().is_one());
        assert!(x.powmod(0, &m).unwrap().is_one());
        assert_eq!(
            p7("1,2,3,4,5").powmod(1, &m).unwrap(),
            p7("1,2,3,4,5").rem(&m).unwrap()
        );
        assert_eq!(x.powmod(5, &Poly::one(f7())), Err(Error::ModulusDegreeZero));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p7("0,0,1").shift(1), p7("1,2,1"));
        assert_eq!(p7("3,1,4").shift(0), p7("3,1,4"));
        assert_eq!(p7("6,0,0,1").shift(3), p7("5,6,2,1"));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p7("6,0,0,1").eval(2), 0);
        assert_eq!(p7("5").eval(3), 5);
        assert_eq!(Poly::x(f7()).eval(4), 4);
        assert_eq!(Poly::zero(f7()).eval(4), 0);
    }

    #[test]
    fn from_roots_and_derivative() {
        let f = Poly::from_roots(f7(), &[1, 2, 4]);
        assert_eq!(f, p7("6,0,0,1"));
        assert_eq!(f.derivative(), p7("0,0,3"));
    }

    #[test]
    fn squarefree_decomposition_counts_multiplicity() {
        let f = PrimeField::new(101).unwrap();
        // (X - 1)^2 (X - 2)^3 (X - 5)
        let g = Poly::from_roots(f, &[1, 1, 2, 2, 2, 5]).scale(7);
        let parts = g.squarefree_decomposition().unwrap();
        assert_eq!(
            parts,
            vec![
                (Poly::linear(f, 5), 1),
                (Poly::linear(f, 1), 2),
                (Poly::linear(f, 2), 3)
            ]
        );
        assert_eq!(g.distinct_root_count().unwrap(), 3);
        // X^2 + 1 over F_7 is irreducible: two distinct roots in the closure.
        assert_eq!(p7("1,0,1").distinct_root_count().unwrap(), 2);
    }

    #[test]
    fn karatsuba_matches_schoolbook_on_large_wide_modulus() {
        let f = PrimeField::new((1 << 61) - 1).unwrap();
        let a = Poly::new(
            f,
            (0..300u64)
                .map(|i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15))
                .collect(),
        );
        let b = Poly::new(
            f,
            (0..170u64)
                .map(|i| i.wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
                .collect(),
        );
        assert_eq!(a.checked_mul(&b).unwrap(), a.mul_schoolbook(&b).unwrap());
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
    }
}
