//! Deterministic root finding for polynomials over `F_p`.
//!
//! Everything runs on the split part `gcd(f, X^p - X)`, the monic squarefree
//! divisor of `f` whose roots are exactly the `F_p`-roots of `f`.
//!
//! For a split squarefree `f` and a shift `u`, the residue part
//! `g_u = gcd(f, (X + u)^((p-1)/2) - 1)` collects the roots `a` with `a + u`
//! a nonzero quadratic residue. Two algorithms build on it:
//!
//! - [`find_all_roots`] computes `g_u` for `u = 0..=h` with `h ~ c_all * sqrt(p)`
//!   and refines `{f} ∪ {g_u}` into a coprime basis. Once every pair of
//!   roots is separated by some `g_u`, the basis is exactly the set of
//!   linear factors `X - a`.
//! - [`find_one_factor`] first looks for two roots at distance at most `h`
//!   via `gcd(f(X), f(X + u))`; if there are none the root set is
//!   `h`-spaced, and a sweep over `g_u` for `u = 1..=h` finds a shift where
//!   the Legendre pattern over the roots is not constant. [`find_one_root`]
//!   iterates it, halving the degree each time.
//!
//! Sweeps take the smallest `u` that works, so results are reproducible.

use crate::error::{Error, Result};
use crate::fp::{FieldElement, PrimeField};
use crate::poly::{gcd_monic, kernels, ModulusPoly, Poly};
use crate::refine::Refiner;

#[derive(Clone, Debug, PartialEq)]
pub struct RootFindConfig {
    /// All-roots shift range is `ceil(c_all * sqrt(p))`.
    pub c_all: f64,
    /// One-factor shift range is `floor((1 + sqrt(p)/n) * p^(delta/2))`.
    pub delta: f64,
    /// Below this modulus every entry point enumerates the field instead.
    pub small_p_cutoff: u64,
    /// Double the shift range until the sweep succeeds.
    pub fallback_doubling: bool,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        Self {
            c_all: 2.0,
            delta: 0.25,
            small_p_cutoff: 4096,
            fallback_doubling: true,
        }
    }
}

impl RootFindConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_all >= 1.0 && self.c_all.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "c_all must be at least 1, got {}",
                self.c_all
            )));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "delta must lie in (0, 0.5), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Initial all-roots shift range, `min(p - 1, ceil(c_all * sqrt(p)))`.
    pub fn all_roots_range(&self, field: PrimeField) -> u64 {
        let h = (self.c_all * field.sqrt_p()).ceil() as u64;
        h.clamp(1, field.modulus() - 1)
    }

    /// Initial one-factor shift range for a degree-`n` input.
    pub fn one_factor_range(&self, field: PrimeField, n: usize) -> u64 {
        let p = field.modulus() as f64;
        let h = ((1.0 + p.sqrt() / n as f64) * p.powf(self.delta / 2.0)).floor() as u64;
        h.clamp(1, field.modulus() - 1)
    }
}

/// Work counters recorded by the traced entry points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    /// Residue-part computations, one modular power `(X + u)^((p-1)/2)` each.
    /// The split-part preprocessing power is not counted.
    pub powmods: u64,
    /// All polynomial gcds, including those inside refinement.
    pub gcds: u64,
    /// Taylor shifts `f(X + u)` in the spacing phase.
    pub shifts: u64,
    /// Times the shift range was doubled.
    pub doublings: u32,
    /// Final shift range.
    pub shift_range: u64,
    /// Factor-finding rounds in the one-root algorithm.
    pub iterations: u32,
    /// Splits found by `gcd(f(X), f(X + u))`.
    pub spacing_splits: u32,
    /// Splits found by a residue part.
    pub residue_splits: u32,
    /// The small-field enumeration path was used.
    pub brute_force: bool,
}

fn x_minus(field: PrimeField) -> impl Fn(u64) -> Poly {
    move |r| Poly::linear(field, r)
}

fn enumerate_roots(f: &Poly) -> Vec<u64> {
    (0..f.field().modulus())
        .filter(|&x| f.eval(x) == 0)
        .collect()
}

/// Monic squarefree divisor of `f` carrying exactly its `F_p`-roots,
/// `gcd(f, X^p - X)`. Keeps the root 0.
pub fn split_part(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = f.field();
    if f.is_constant() {
        return Ok(Poly::one(field));
    }
    let m = ModulusPoly::new(field, f.coeffs().to_vec());
    let mut frob = m.pow(&[0, 1], field.modulus());
    // X^p - X mod f
    if frob.len() < 2 {
        frob.resize(2, 0);
    }
    frob[1] = field.sub(frob[1], 1);
    kernels::trim(&mut frob);
    Ok(gcd_monic(field, f.monic().into_coeffs(), frob))
}

/// `gcd(f, (X + u)^((p-1)/2) - 1)` against a precomputed modulus.
fn residue_part_with(m: &ModulusPoly, field: PrimeField, u: u64) -> Poly {
    let mut h = m.pow(&[field.reduce(u), 1], (field.modulus() - 1) / 2);
    if h.is_empty() {
        h.push(0);
    }
    h[0] = field.sub(h[0], 1);
    kernels::trim(&mut h);
    gcd_monic(field, m.coeffs().to_vec(), h)
}

/// The divisor of `f` whose roots `a` have `a + u` a nonzero quadratic
/// residue. `f` should be monic, squarefree and split.
pub fn residue_part(f: &Poly, u: u64) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_constant() {
        return Ok(Poly::one(f.field()));
    }
    let m = ModulusPoly::new(f.field(), f.coeffs().to_vec());
    Ok(residue_part_with(&m, f.field(), u))
}

/// All roots of `f` in `F_p`, ascending.
pub fn find_all_roots(f: &Poly, cfg: &RootFindConfig) -> Result<Vec<FieldElement>> {
    find_all_roots_traced(f, cfg).map(|(roots, _)| roots)
}

pub fn find_all_roots_traced(
    f: &Poly,
    cfg: &RootFindConfig,
) -> Result<(Vec<FieldElement>, SweepStats)> {
    cfg.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = f.field();
    let p = field.modulus();
    let mut stats = SweepStats::default();
    if p < cfg.small_p_cutoff {
        stats.brute_force = true;
        let roots = enumerate_roots(f)
            .into_iter()
            .map(|r| field.elem(r))
            .collect();
        return Ok((roots, stats));
    }

    let s = split_part(f)?;
    stats.gcds += 1;
    match s.degree() {
        Some(0) => return Ok((Vec::new(), stats)),
        Some(1) => return Ok((vec![field.elem(field.neg(s.coeff(0)))], stats)),
        _ => {}
    }

    let n = s.deg();
    let m = ModulusPoly::new(field, s.coeffs().to_vec());
    let mut refiner = Refiner::new(field);
    refiner.insert(&s)?;

    let mut h = cfg.all_roots_range(field);
    let mut next_u = 0;
    loop {
        for u in next_u..=h {
            let g = residue_part_with(&m, field, u);
            stats.powmods += 1;
            stats.gcds += 1;
            let useful = !g.is_constant() && g.deg() < n;
            if useful && !refiner.is_all_linear() {
                refiner.insert(&g)?;
            }
        }
        next_u = h + 1;
        if refiner.is_all_linear() {
            break;
        }
        if !cfg.fallback_doubling || h == p - 1 {
            return Err(Error::SweepExhausted { h });
        }
        h = (2 * h).min(p - 1);
        stats.doublings += 1;
    }
    stats.shift_range = h;
    stats.gcds += refiner.gcd_count();

    let mut roots: Vec<FieldElement> = refiner
        .basis()
        .iter()
        .map(|b| field.elem(field.neg(b.coeff(0))))
        .collect();
    roots.sort();
    Ok((roots, stats))
}

/// First `u` in `1..=h` (smallest wins) where `gcd(f(X), f(X + u))` is a
/// proper nontrivial factor; `None` certifies the root set is `h`-spaced.
pub fn spacing_split(f: &Poly, h: u64) -> Result<Option<Poly>> {
    let mut stats = SweepStats::default();
    spacing_split_counted(f, h, &mut stats)
}

fn spacing_split_counted(f: &Poly, h: u64, stats: &mut SweepStats) -> Result<Option<Poly>> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    let field = f.field();
    let f = f.monic();
    for u in 1..=h.min(field.modulus() - 1) {
        let shifted = f.shift(u);
        stats.shifts += 1;
        stats.gcds += 1;
        let g = gcd_monic(field, f.coeffs().to_vec(), shifted.into_coeffs());
        if !g.is_constant() && g.deg() < n {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn smaller_half(f: &Poly, g: Poly) -> Result<Poly> {
    if 2 * g.deg() <= f.deg() {
        Ok(g)
    } else {
        Ok(f.exact_div(&g)?.monic())
    }
}

/// A monic factor `g` of a split squarefree `f` with `1 <= deg g <= deg f / 2`.
pub fn find_one_factor(f: &Poly, cfg: &RootFindConfig) -> Result<Poly> {
    let mut stats = SweepStats::default();
    cfg.validate()?;
    one_factor(f, cfg, &mut stats)
}

pub fn find_one_factor_traced(f: &Poly, cfg: &RootFindConfig) -> Result<(Poly, SweepStats)> {
    let mut stats = SweepStats::default();
    cfg.validate()?;
    let g = one_factor(f, cfg, &mut stats)?;
    Ok((g, stats))
}

fn one_factor(f: &Poly, cfg: &RootFindConfig, stats: &mut SweepStats) -> Result<Poly> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    let field = f.field();
    let p = field.modulus();
    let f = f.monic();
    if p < cfg.small_p_cutoff {
        stats.brute_force = true;
        let r = (0..p).find(|&x| f.eval(x) == 0).ok_or(Error::NoRoot)?;
        return Ok(x_minus(field)(r));
    }

    let mut h = cfg.one_factor_range(field, n);
    if let Some(g) = spacing_split_counted(&f, h, stats)? {
        stats.spacing_splits += 1;
        stats.shift_range = h;
        return smaller_half(&f, g);
    }

    // The root set is now h-spaced.
    let m = ModulusPoly::new(field, f.coeffs().to_vec());
    let mut next_u = 1;
    loop {
        for u in next_u..=h {
            let g = residue_part_with(&m, field, u);
            stats.powmods += 1;
            stats.gcds += 1;
            if !g.is_constant() && g.deg() < n {
                stats.residue_splits += 1;
                stats.shift_range = h;
                return smaller_half(&f, g);
            }
        }
        next_u = h + 1;
        if !cfg.fallback_doubling || h == p - 1 {
            return Err(Error::SweepExhausted { h });
        }
        h = (2 * h).min(p - 1);
        stats.doublings += 1;
    }
}

/// One root of `f` in `F_p`.
pub fn find_one_root(f: &Poly, cfg: &RootFindConfig) -> Result<FieldElement> {
    find_one_root_traced(f, cfg).map(|(r, _)| r)
}

pub fn find_one_root_traced(f: &Poly, cfg: &RootFindConfig) -> Result<(FieldElement, SweepStats)> {
    cfg.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = f.field();
    let p = field.modulus();
    let mut stats = SweepStats::default();
    if p < cfg.small_p_cutoff {
        stats.brute_force = true;
        let r = (0..p).find(|&x| f.eval(x) == 0).ok_or(Error::NoRoot)?;
        return Ok((field.elem(r), stats));
    }
    let mut g = split_part(f)?;
    stats.gcds += 1;
    if g.is_constant() {
        return Err(Error::NoRoot);
    }
    while g.deg() > 1 {
        g = one_factor(&g, cfg, &mut stats)?;
        stats.iterations += 1;
    }
    let root = field.elem(field.neg(g.coeff(0)));
    debug_assert_eq!(f.eval(root.value()), 0);
    Ok((root, stats))
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

    /// Forces the sweep algorithms even at toy moduli.
    fn no_cutoff() -> RootFindConfig {
        RootFindConfig {
            small_p_cutoff: 0,
            ..RootFindConfig::default()
        }
    }

    fn values(v: &[FieldElement]) -> Vec<u64> {
        v.iter().map(|e| e.value()).collect()
    }

    #[test]
    fn split_part_examples() {
        // X^2 (X - 1)
        let f = Poly::from_roots(f7(), &[0, 0, 1]);
        assert_eq!(split_part(&f).unwrap(), p7("0,6,1"));
        let g = p7("6,0,0,1");
        assert_eq!(split_part(&g.scale(3)).unwrap(), g);
        assert!(split_part(&p7("1,0,1")).unwrap().is_one());
        assert_eq!(split_part(&Poly::zero(f7())), Err(Error::ZeroInput));
    }

    #[test]
    fn residue_part_examples() {
        let f = p7("6,0,0,1");
        assert_eq!(residue_part(&f, 0).unwrap(), f);
        assert_eq!(residue_part(&f, 1).unwrap(), p7("6,1"));
        // Roots {3, 5} with u = 0 are both non-residues mod 7.
        let g = Poly::from_roots(f7(), &[3, 5]);
        assert!(residue_part(&g, 0).unwrap().is_one());
    }

    #[test]
    fn residue_part_matches_legendre_pattern() {
        let field = PrimeField::new(101).unwrap();
        let roots = [0u64, 3, 17, 40, 41, 99];
        let f = Poly::from_roots(field, &roots);
        for u in 0..101 {
            let expected: Vec<u64> = roots
                .iter()
                .copied()
                .filter(|&a| field.legendre(a + u) == 1)
                .collect();
            let mut expected = expected;
            expected.sort();
            assert_eq!(
                residue_part(&f, u).unwrap(),
                Poly::from_roots(field, &expected)
            );
        }
    }

    #[test]
    fn all_roots_examples() {
        for cfg in [RootFindConfig::default(), no_cutoff()] {
            assert_eq!(
                values(&find_all_roots(&p7("6,0,0,1"), &cfg).unwrap()),
                [1, 2, 4]
            );
            assert_eq!(values(&find_all_roots(&p7("6,1"), &cfg).unwrap()), [1]);
            assert!(find_all_roots(&p7("1,0,1"), &cfg).unwrap().is_empty());
            assert!(find_all_roots(&p7("3"), &cfg).unwrap().is_empty());
            assert_eq!(
                find_all_roots(&Poly::zero(f7()), &cfg),
                Err(Error::ZeroInput)
            );
        }
    }

    #[test]
    fn all_roots_with_repeated_and_irreducible_factors() {
        let field = PrimeField::new(10_007).unwrap();
        let mut f = Poly::from_roots(field, &[5, 5, 5, 0, 9_000, 17]);
        f = &f * &Poly::parse(field, "1,0,1").unwrap(); // -1 is a non-residue since p = 3 mod 4
        assert_eq!(field.legendre(field.neg(1)), -1);
        let (roots, stats) = find_all_roots_traced(&f, &RootFindConfig::default()).unwrap();
        assert_eq!(values(&roots), [0, 5, 17, 9_000]);
        assert_eq!(stats.powmods, 202);
        assert_eq!(stats.doublings, 0);
    }

    #[test]
    fn all_roots_fallback_doubling() {
        // Find a pair of roots that no shift in 0..=ceil(sqrt p) separates.
        let mut found = 0;
        for p in (11..80u64).filter(|&p| crate::fp::is_prime(p)) {
            let field = PrimeField::new(p).unwrap();
            let h = (field.sqrt_p()).ceil() as u64;
            let in_part = |a: u64, u: u64| field.legendre(a + u) == 1;
            for a in 0..p {
                for b in a + 1..p {
                    if (0..=h).any(|u| in_part(a, u) != in_part(b, u)) {
                        continue;
                    }
                    found += 1;
                    let f = Poly::from_roots(field, &[a, b]);
                    let strict = RootFindConfig {
                        c_all: 1.0,
                        fallback_doubling: false,
                        small_p_cutoff: 0,
                        ..RootFindConfig::default()
                    };
                    assert_eq!(
                        find_all_roots(&f, &strict),
                        Err(Error::SweepExhausted { h })
                    );
                    let (roots, stats) = find_all_roots_traced(
                        &f,
                        &RootFindConfig {
                            fallback_doubling: true,
                            ..strict
                        },
                    )
                    .unwrap();
                    assert_eq!(values(&roots), [a, b]);
                    assert!(stats.doublings >= 1);
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn spacing_split_examples() {
        let field = PrimeField::new(101).unwrap();
        let f = Poly::from_roots(field, &[1, 2]);
        assert_eq!(spacing_split(&f, 1).unwrap(), Some(Poly::linear(field, 1)));
        let g = Poly::from_roots(field, &[1, 50]);
        assert_eq!(spacing_split(&g, 10).unwrap(), None);
        assert!(matches!(
            spacing_split(&Poly::linear(field, 3), 5),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn one_factor_examples() {
        let f = p7("6,0,0,1");
        for cfg in [RootFindConfig::default(), no_cutoff()] {
            let g = find_one_factor(&f, &cfg).unwrap();
            assert_eq!(g.degree(), Some(1));
            assert!(f.rem(&g).unwrap().is_zero());
        }
        let q = Poly::from_roots(f7(), &[2, 6]);
        assert_eq!(find_one_factor(&q, &no_cutoff()).unwrap().degree(), Some(1));
        assert!(matches!(
            find_one_factor(&p7("6,1"), &no_cutoff()),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn one_factor_phase_one_catches_close_roots() {
        let field = PrimeField::new(10_007).unwrap();
        let f = Poly::from_roots(field, &[500, 501, 4_000, 7_000]);
        let (g, stats) = find_one_factor_traced(&f, &RootFindConfig::default()).unwrap();
        assert_eq!(stats.spacing_splits, 1);
        assert_eq!(stats.residue_splits, 0);
        assert_eq!(g, Poly::linear(field, 500));
    }

    #[test]
    fn one_factor_phase_two_on_spaced_roots() {
        let field = PrimeField::new(10_007).unwrap();
        let f = Poly::from_roots(field, &[100, 2_000, 4_000, 7_000]);
        let (g, stats) = find_one_factor_traced(&f, &RootFindConfig::default()).unwrap();
        assert_eq!(stats.spacing_splits, 0);
        assert_eq!(stats.residue_splits, 1);
        assert!(g.degree() >= Some(1) && g.degree() <= Some(2));
        assert!(f.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn one_root_examples() {
        for cfg in [RootFindConfig::default(), no_cutoff()] {
            let r = find_one_root(&p7("6,0,0,1"), &cfg).unwrap();
            assert!([1, 2, 4].contains(&r.value()));
            assert_eq!(find_one_root(&p7("2,1"), &cfg).unwrap().value(), 5);
            assert_eq!(find_one_root(&p7("1,0,1"), &cfg), Err(Error::NoRoot));
            assert_eq!(
                find_one_root(&Poly::zero(f7()), &cfg),
                Err(Error::ZeroInput)
            );
        }
    }

    #[test]
    fn one_root_iterations_halve_degree() {
        let field = PrimeField::new(65_537).unwrap();
        let roots: Vec<u64> = (0..64).map(|i| (i * 977 + 13) % 65_537).collect();
        let f = Poly::from_roots(field, &roots);
        let (r, stats) = find_one_root_traced(&f, &RootFindConfig::default()).unwrap();
        assert_eq!(f.eval(r.value()), 0);
        assert!(stats.iterations <= 6, "{stats:?}");
    }

    #[test]
    fn config_validation() {
        let bad = RootFindConfig {
            delta: 0.5,
            ..RootFindConfig::default()
        };
        assert!(matches!(
            find_one_root(&p7("6,1"), &bad),
            Err(Error::InvalidConfig(_))
        ));
        let bad = RootFindConfig {
            c_all: 0.5,
            ..RootFindConfig::default()
        };
        assert!(matches!(
            find_all_roots(&p7("6,1"), &bad),
            Err(Error::InvalidConfig(_))
        ));
    }
}
