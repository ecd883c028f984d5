//! Factor refinement: rewrite a family of polynomials over a pairwise-coprime
//! basis.
//!
//! The basis is grown by insertion. A new element is compared against the
//! current basis; whenever it shares a nontrivial gcd `g` with some basis
//! element `b`, both are replaced by the nonconstant members of
//! `{g, b/g, y/g}` and the pieces are reinserted. The total degree in play
//! drops by `deg g` each time, so insertion terminates, and the basis stays
//! pairwise coprime because an element only enters it after being checked
//! against every current member.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fp::{FieldElement, PrimeField};
use crate::poly::{gcd_monic, Poly};

/// Pairwise-coprime monic basis with `inputs[i] = units[i] * prod_j basis[j]^exponents[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedBasis {
    pub basis: Vec<Poly>,
    pub exponents: Vec<Vec<u32>>,
    pub units: Vec<FieldElement>,
}

impl RefinedBasis {
    /// Multiplies out row `i`.
    pub fn reconstruct(&self, i: usize) -> Poly {
        let unit = self.units[i];
        let mut acc = Poly::constant(unit.field(), unit.value());
        for (b, &e) in self.basis.iter().zip(&self.exponents[i]) {
            for _ in 0..e {
                acc = &acc * b;
            }
        }
        acc
    }
}

/// Degree first, then coefficients constant term first.
pub fn basis_order(a: &Poly, b: &Poly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Incremental coprime-basis builder.
#[derive(Clone, Debug)]
pub struct Refiner {
    field: PrimeField,
    basis: Vec<Poly>,
    gcds: u64,
}

impl Refiner {
    pub fn new(field: PrimeField) -> Self {
        Self {
            field,
            basis: Vec::new(),
            gcds: 0,
        }
    }

    /// Refines the basis against `x`. Constants are ignored.
    pub fn insert(&mut self, x: &Poly) -> Result<()> {
        if x.field() != self.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: x.field().modulus(),
            });
        }
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut pending = vec![x.monic()];
        while let Some(y) = pending.pop() {
            if y.is_constant() {
                continue;
            }
            let mut split = None;
            for (idx, b) in self.basis.iter().enumerate() {
                self.gcds += 1;
                let g = gcd_monic(self.field, y.coeffs().to_vec(), b.coeffs().to_vec());
                if !g.is_constant() {
                    split = Some((idx, g));
                    break;
                }
            }
            match split {
                None => self.basis.push(y),
                Some((idx, g)) => {
                    let b = self.basis.swap_remove(idx);
                    let b_rest = b.exact_div(&g)?;
                    let y_rest = y.exact_div(&g)?;
                    pending.push(g);
                    pending.push(b_rest);
                    pending.push(y_rest);
                }
            }
        }
        Ok(())
    }

    /// Current basis, in insertion-dependent order.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_all_linear(&self) -> bool {
        self.basis.iter().all(|b| b.degree() == Some(1))
    }

    /// Number of gcds computed so far.
    pub fn gcd_count(&self) -> u64 {
        self.gcds
    }

    /// Basis sorted by degree, then coefficients.
    pub fn into_sorted_basis(mut self) -> Vec<Poly> {
        self.basis.sort_by(basis_order);
        self.basis
    }
}

fn common_field(inputs: &[Poly]) -> Result<Option<PrimeField>> {
    let Some(first) = inputs.first() else {
        return Ok(None);
    };
    for p in inputs {
        if p.field() != first.field() {
            return Err(Error::ModulusMismatch {
                left: first.field().modulus(),
                right: p.field().modulus(),
            });
        }
        if p.is_zero() {
            return Err(Error::ZeroInput);
        }
    }
    Ok(Some(first.field()))
}

/// Refines a family of nonzero polynomials into a pairwise-coprime basis and
/// records each input's exponent vector over it.
pub fn factor_refine(inputs: &[Poly]) -> Result<RefinedBasis> {
    let Some(field) = common_field(inputs)? else {
        return Ok(RefinedBasis {
            basis: Vec::new(),
            exponents: Vec::new(),
            units: Vec::new(),
        });
    };
    let mut refiner = Refiner::new(field);
    for p in inputs {
        refiner.insert(p)?;
    }
    let basis = refiner.into_sorted_basis();

    let mut exponents = Vec::with_capacity(inputs.len());
    let mut units = Vec::with_capacity(inputs.len());
    for p in inputs {
        units.push(field.elem(p.leading_coeff().expect("nonzero input")));
        let mut row = Vec::with_capacity(basis.len());
        let mut rest = p.monic();
        for b in &basis {
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(b)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            row.push(e);
        }
        debug_assert!(rest.is_one());
        exponents.push(row);
    }
    Ok(RefinedBasis {
        basis,
        exponents,
        units,
    })
}

/// Coprime monic pieces covering `a * b`, sorted like [`factor_refine`]'s basis.
pub fn refine_pair(a: &Poly, b: &Poly) -> Result<Vec<Poly>> {
    let field = common_field(&[a.clone(), b.clone()])?.expect("two inputs");
    let mut refiner = Refiner::new(field);
    refiner.insert(a)?;
    refiner.insert(b)?;
    Ok(refiner.into_sorted_basis())
}
