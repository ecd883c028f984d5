//! Character sums and additive-energy counters over `F_p`.
//!
//! - [`t_chi`]: `T_chi(I, S) = sum_{u in I} |sum_{s in S} chi(u + s)|^2` for
//!   `I = {1..h}`.
//! - [`count_w`]: the number of 6-tuples `(u1, u2, l1, l2, s1, s2)` with
//!   `(u1 + s1)/l1 = (u2 + s2)/l2`.
//! - [`w_table`]: `W(x, y)`, the number of `(u, l, s, t)` with
//!   `(u + s)/l = x` and `(u + t)/l = y`.
//! - [`weil_sum`]: the complete sum `sum_x chi(F(x))` checked against
//!   `N sqrt(p)`.
//!
//! The bound reports evaluate the asymptotic upper bounds these quantities
//! are compared against with every implied constant set to 1 and `p^{o(1)}`
//! replaced by `ln p`. They record ratios only.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fp::{CharKind, CharValue, Character, PrimeField, ENUMERATION_CAP};
use crate::poly::Poly;

/// Cap on `(u, l, s)` triples for bucketing and on `(u, l, s, t)` tuples for
/// the `W` table.
pub const TUPLE_CAP: u128 = 100_000_000;

/// The interval `{1, ..., h}` of residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    field: PrimeField,
    h: u64,
}

impl Interval {
    pub fn new(field: PrimeField, h: u64) -> Result<Self> {
        if h == 0 || h >= field.modulus() {
            return Err(Error::InvalidInterval {
                h,
                modulus: field.modulus(),
            });
        }
        Ok(Self { field, h })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> u64 {
        self.h
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        1..=self.h
    }
}

/// True iff no `d1, d2` in `set` and integer `1 <= k <= h` satisfy
/// `d1 + k = d2` in `F_p`.
///
/// The smallest forward distance between distinct elements is attained by
/// cyclically consecutive elements, so sorting suffices.
pub fn is_h_spaced(field: PrimeField, set: &[u64], h: u64) -> bool {
    let p = field.modulus();
    let mut sorted: Vec<u64> = set.iter().map(|&x| x % p).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < 2 {
        return true;
    }
    let wrap = sorted[0] + p - sorted[sorted.len() - 1];
    sorted.windows(2).all(|w| w[1] - w[0] > h) && wrap > h
}

/// A set `S` in `F_p` certified to be `h`-spaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacedSet {
    field: PrimeField,
    elements: Vec<u64>,
    spacing: u64,
}

impl SpacedSet {
    pub fn new(
        field: PrimeField,
        elements: impl IntoIterator<Item = u64>,
        spacing: u64,
    ) -> Result<Self> {
        let mut elements: Vec<u64> = elements.into_iter().map(|x| field.reduce(x)).collect();
        elements.sort_unstable();
        elements.dedup();
        if !is_h_spaced(field, &elements, spacing) {
            return Err(Error::NotSpaced { h: spacing });
        }
        Ok(Self {
            field,
            elements,
            spacing,
        })
    }

    pub fn empty(field: PrimeField, spacing: u64) -> Self {
        Self {
            field,
            elements: Vec::new(),
            spacing,
        }
    }

    /// Draws `size` elements uniformly at random, rejecting any candidate
    /// within forward or backward distance `spacing` of an accepted one.
    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        size: usize,
        spacing: u64,
        rng: &mut R,
    ) -> Result<Self> {
        let p = field.modulus();
        if (size as u128) * (spacing as u128 + 1) > p as u128 {
            return Err(Error::InvalidConfig(format!(
                "cannot fit {size} elements with spacing {spacing} into F_{p}"
            )));
        }
        let mut chosen = BTreeSet::new();
        let max_attempts = 1000 + 200 * size;
        let mut attempts = 0;
        let clear = |a: u64, b: u64| {
            let d = a.abs_diff(b);
            d > spacing && p - d > spacing
        };
        while chosen.len() < size {
            attempts += 1;
            if attempts > max_attempts {
                return Err(Error::InvalidConfig(format!(
                    "gave up placing {size} elements with spacing {spacing} in F_{p}"
                )));
            }
            let x = rng.gen_range(0..p);
            let before = chosen
                .range(..=x)
                .next_back()
                .or_else(|| chosen.iter().next_back());
            let after = chosen.range(x..).next().or_else(|| chosen.iter().next());
            let ok = [before, after]
                .into_iter()
                .flatten()
                .all(|&y| y != x && clear(x, y));
            if ok {
                chosen.insert(x);
            }
        }
        Self::new(field, chosen, spacing)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn spacing(&self) -> u64 {
        self.spacing
    }
}

fn same_field(a: PrimeField, b: PrimeField) -> Result<()> {
    if a != b {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: b.modulus(),
        });
    }
    Ok(())
}

/// `|sum_k counts[k] * exp(2 pi i k / d)|^2`.
fn histogram_abs_sq(counts: &[i64], order: u64) -> f64 {
    let z: Complex64 = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| CharValue::Root(k as u64).to_complex(order) * c as f64)
        .sum();
    z.norm_sqr()
}

/// Exact `T_chi` for the Legendre symbol.
pub fn t_legendre(interval: &Interval, set: &SpacedSet) -> Result<u64> {
    same_field(interval.field(), set.field())?;
    let f = set.field();
    Ok(interval
        .iter()
        .map(|u| {
            let inner: i64 = set
                .elements()
                .iter()
                .map(|&s| f.legendre(u + s) as i64)
                .sum();
            (inner * inner) as u64
        })
        .sum())
}

/// `T_chi(I, S)` by direct `O(h * #S)` accumulation.
///
/// Inner sums are kept as integer histograms over the `d` root-of-unity
/// indices, so only the final modulus squared is floating point.
pub fn t_chi(interval: &Interval, set: &SpacedSet, chi: &Character) -> Result<f64> {
    same_field(interval.field(), chi.field())?;
    same_field(set.field(), chi.field())?;
    if chi.kind() == CharKind::Quadratic {
        return Ok(t_legendre(interval, set)? as f64);
    }
    let order = chi.order();
    let mut counts = vec![0i64; order as usize];
    let mut total = 0.0;
    for u in interval.iter() {
        counts.iter_mut().for_each(|c| *c = 0);
        for &s in set.elements() {
            if let CharValue::Root(k) = chi.value(u + s)? {
                counts[k as usize] += 1;
            }
        }
        total += histogram_abs_sq(&counts, order);
    }
    Ok(total)
}

/// Complete character sum of a polynomial, with the Weil bound check.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub sum: Complex64,
    /// The exact integer sum when `chi` is quadratic.
    pub integer_sum: Option<i64>,
    pub abs_sum: f64,
    /// Distinct roots of `F` in the algebraic closure.
    pub distinct_roots: usize,
    /// `N * sqrt(p)`.
    pub bound: f64,
    /// `F` is a constant times a `d`-th power; the bound does not apply.
    pub perfect_power: bool,
    /// `|sum| <= N sqrt(p)`, or the bound is exempt.
    pub within_bound: bool,
}

/// `sum_{x in F_p} chi(F(x))` by full enumeration, for `p <= 2^26` and
/// `deg F < p`.
pub fn weil_sum(poly: &Poly, chi: &Character) -> Result<WeilReport> {
    same_field(poly.field(), chi.field())?;
    let field = poly.field();
    let p = field.modulus();
    if p > ENUMERATION_CAP {
        return Err(Error::FieldTooLarge {
            modulus: p,
            cap: ENUMERATION_CAP,
        });
    }
    if poly.is_zero() {
        return Err(Error::ZeroInput);
    }
    let order = chi.order();
    let parts = poly.squarefree_decomposition()?;
    let distinct_roots: usize = parts.iter().map(|(a, _)| a.deg()).sum();
    let perfect_power = parts.iter().all(|&(_, e)| e as u64 % order == 0);

    let mut counts = vec![0i64; order as usize];
    for x in 0..p {
        if let CharValue::Root(k) = chi.value(poly.eval(x))? {
            counts[k as usize] += 1;
        }
    }
    let n = distinct_roots as f64;
    let bound = n * field.sqrt_p();
    let (sum, integer_sum, within) = if order == 2 {
        let s = counts[0] - counts[1];
        // |s| <= N sqrt(p)  <=>  s^2 <= N^2 p, decided in integers.
        let ok = (s as i128).pow(2) <= (distinct_roots as i128).pow(2) * p as i128;
        (Complex64::new(s as f64, 0.0), Some(s), ok)
    } else {
        let z: Complex64 = counts
            .iter()
            .enumerate()
            .map(|(k, &c)| CharValue::Root(k as u64).to_complex(order) * c as f64)
            .sum();
        let ok = z.norm_sqr() <= n * n * p as f64 * (1.0 + 1e-12) + 1e-9;
        (z, None, ok)
    };
    Ok(WeilReport {
        sum,
        integer_sum,
        abs_sum: sum.norm(),
        distinct_roots,
        bound,
        perfect_power,
        within_bound: perfect_power || within,
    })
}

fn inverse_primes(field: PrimeField, primes: &[u64]) -> Result<Vec<u64>> {
    primes
        .iter()
        .map(|&l| field.inv(l).map_err(|_| Error::NotInvertible(l)))
        .collect()
}

fn check_cap(what: &'static str, size: u128) -> Result<()> {
    if size > TUPLE_CAP {
        return Err(Error::TooLarge {
            what,
            size,
            cap: TUPLE_CAP,
        });
    }
    Ok(())
}

/// `#W` by bucketing `(u + s)/l` over all triples and summing squared
/// bucket sizes.
pub fn count_w(interval: &Interval, primes: &[u64], set: &SpacedSet) -> Result<u64> {
    same_field(interval.field(), set.field())?;
    let field = set.field();
    check_cap(
        "(u, l, s) triples",
        interval.len() as u128 * primes.len() as u128 * set.len() as u128,
    )?;
    let inverses = inverse_primes(field, primes)?;
    let mut values = Vec::with_capacity(interval.len() as usize * primes.len() * set.len());
    for u in interval.iter() {
        for &inv in &inverses {
            for &s in set.elements() {
                values.push(field.mul(field.add(field.reduce(u), s), inv));
            }
        }
    }
    values.sort_unstable();
    Ok(values
        .chunk_by(|a, b| a == b)
        .map(|run| (run.len() as u64).pow(2))
        .sum())
}

/// Sparse `W(x, y)` table, cells sorted by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WTable {
    cells: Vec<((u64, u64), u64)>,
}

impl WTable {
    pub fn cells(&self) -> &[((u64, u64), u64)] {
        &self.cells
    }

    pub fn get(&self, x: u64, y: u64) -> u64 {
        self.cells
            .binary_search_by_key(&(x, y), |&(k, _)| k)
            .map(|i| self.cells[i].1)
            .unwrap_or(0)
    }

    /// `sum W(x, y)`; equals `#I * #L * #S^2`.
    pub fn total(&self) -> u64 {
        self.cells.iter().map(|&(_, c)| c).sum()
    }

    /// `sum W(x, y)^2`.
    pub fn sum_squares(&self) -> u64 {
        self.cells.iter().map(|&(_, c)| c * c).sum()
    }
}

pub fn w_table(interval: &Interval, primes: &[u64], set: &SpacedSet) -> Result<WTable> {
    same_field(interval.field(), set.field())?;
    let field = set.field();
    let n = set.len() as u128;
    check_cap(
        "(u, l, s, t) tuples",
        interval.len() as u128 * primes.len() as u128 * n * n,
    )?;
    let inverses = inverse_primes(field, primes)?;
    let mut keys = Vec::with_capacity(interval.len() as usize * primes.len() * set.len().pow(2));
    let mut scaled = Vec::with_capacity(set.len());
    for u in interval.iter() {
        for &inv in &inverses {
            scaled.clear();
            scaled.extend(
                set.elements()
                    .iter()
                    .map(|&s| field.mul(field.add(field.reduce(u), s), inv)),
            );
            for &x in &scaled {
                for &y in &scaled {
                    keys.push((x, y));
                }
            }
        }
    }
    keys.sort_unstable();
    let cells = keys
        .chunk_by(|a, b| a == b)
        .map(|run| (run[0], run.len() as u64))
        .collect();
    Ok(WTable { cells })
}

/// Which bound a report compares against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `#W << (#S h L)^2 / p + #S h L p^{o(1)}`.
    TupleCount,
    /// `sum W^2 << #S^3 (h L)^2 / p + #S^2 h L p^{o(1)}`.
    TableSquares,
    /// `T_chi << #S^2 h p^{-eta}`; the ratio is `T_chi / (#S^2 h)`.
    DoubleSum,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub p: u64,
    pub h: u64,
    /// Lower end of the prime interval `[L, 2L]`.
    pub l: u64,
    pub set_size: usize,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub lhs: f64,
    pub rhs_terms: Vec<f64>,
    /// `lhs / max(rhs_terms)`, or 0 when both vanish.
    pub ratio: f64,
    pub params: BoundParams,
}

fn report(kind: BoundKind, lhs: f64, rhs_terms: Vec<f64>, params: BoundParams) -> BoundReport {
    let rhs = rhs_terms.iter().copied().fold(0.0, f64::max);
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    BoundReport {
        kind,
        lhs,
        rhs_terms,
        ratio,
        params,
    }
}

pub fn report_tuple_count(count: u64, params: BoundParams) -> BoundReport {
    let p = params.p as f64;
    let a = params.set_size as f64 * params.h as f64 * params.l as f64;
    report(
        BoundKind::TupleCount,
        count as f64,
        vec![a * a / p, a * p.ln()],
        params,
    )
}

pub fn report_table_squares(sum_squares: u64, params: BoundParams) -> BoundReport {
    let p = params.p as f64;
    let s = params.set_size as f64;
    let hl = params.h as f64 * params.l as f64;
    report(
        BoundKind::TableSquares,
        sum_squares as f64,
        vec![s.powi(3) * hl * hl / p, s * s * hl * p.ln()],
        params,
    )
}

pub fn report_double_sum(t: f64, params: BoundParams) -> BoundReport {
    let s = params.set_size as f64;
    report(
        BoundKind::DoubleSum,
        t,
        vec![s * s * params.h as f64],
        params,
    )
}
