//! Experiment sweeps and benchmark rows.
//!
//! Each sweep is a list of points `(prime index, trial)`; every point draws
//! from its own ChaCha8 stream `(prime index << 32) | trial`, so a sweep can
//! be evaluated in any order (or in parallel) and still produce the same
//! rows. Rows render to CSV records through [`CsvRow`]: real values carry
//! six significant digits, counts are exact.

use std::time::Instant;

use crate::charsum::{
    count_w, report_double_sum, report_table_squares, report_tuple_count, t_chi, w_table, weil_sum,
    BoundParams, Interval, SpacedSet,
};
use crate::corpus::{random_split_poly, random_squarefree, stream_rng};
use crate::error::{Error, Result};
use crate::fp::{primes_in_interval, Character, PrimeField};
use crate::poly::Poly;
use crate::roots::{find_all_roots_traced, find_one_root_traced, RootFindConfig};

/// Formats like C's `%.6g`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_fraction(&fixed).to_string()
    } else {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A row that renders to one CSV record.
pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn record(&self) -> Vec<String>;
}

fn point_stream(p_index: usize, trial: usize) -> u64 {
    ((p_index as u64) << 32) | trial as u64
}

fn field_at(primes: &[u64], p_index: usize) -> Result<PrimeField> {
    let p = *primes
        .get(p_index)
        .ok_or_else(|| Error::InvalidConfig(format!("no prime at index {p_index}")))?;
    PrimeField::new(p)
}

/// `ceil(p^((1/2 + delta)/2))`: with `h` and `#S` both at this size,
/// `#S * h >= p^(1/2 + delta)`.
pub fn balanced_size(p: u64, delta: f64) -> u64 {
    (p as f64).powf((0.5 + delta) / 2.0).ceil() as u64
}

fn character(field: PrimeField, order: u64) -> Result<Character> {
    if order == 2 {
        Ok(Character::quadratic(field))
    } else {
        Character::general(field, order)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TchiParams {
    pub primes: Vec<u64>,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    /// Overrides the interval length.
    pub h: Option<u64>,
    /// Overrides `#S`.
    pub set_size: Option<usize>,
    pub order: u64,
}

impl Default for TchiParams {
    fn default() -> Self {
        Self {
            primes: Vec::new(),
            delta: 0.1,
            trials: 20,
            seed: 0,
            h: None,
            set_size: None,
            order: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TchiRow {
    pub p: u64,
    pub h: u64,
    pub set_size: usize,
    pub trial: usize,
    pub t: f64,
    /// `T / (#S^2 h)`.
    pub ratio: f64,
}

impl CsvRow for TchiRow {
    const HEADER: &'static [&'static str] = &["p", "h", "set_size", "trial", "T", "ratio"];
    fn record(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.h.to_string(),
            self.set_size.to_string(),
            self.trial.to_string(),
            format_real(self.t),
            format_real(self.ratio),
        ]
    }
}

/// One `T_chi` sample over a random `h`-spaced set.
pub fn tchi_point(params: &TchiParams, p_index: usize, trial: usize) -> Result<TchiRow> {
    let field = field_at(&params.primes, p_index)?;
    let p = field.modulus();
    let size = balanced_size(p, params.delta);
    let h = params.h.unwrap_or(size);
    let set_size = params.set_size.unwrap_or(size as usize);
    let mut rng = stream_rng(params.seed, point_stream(p_index, trial));
    let interval = Interval::new(field, h)?;
    let set = SpacedSet::random(field, set_size, h, &mut rng)?;
    let chi = character(field, params.order)?;
    let t = t_chi(&interval, &set, &chi)?;
    let report = report_double_sum(
        t,
        BoundParams {
            p,
            h,
            l: 0,
            set_size,
            order: params.order,
        },
    );
    Ok(TchiRow {
        p,
        h,
        set_size,
        trial,
        t,
        ratio: report.ratio,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyParams {
    pub primes: Vec<u64>,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub h: Option<u64>,
    /// Lower end of the prime interval `[L, 2L]`.
    pub l: Option<u64>,
    pub set_size: Option<usize>,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self {
            primes: Vec::new(),
            delta: 0.1,
            trials: 5,
            seed: 0,
            h: None,
            l: None,
            set_size: None,
        }
    }
}

/// The `(I, L, S)` triple for one energy point.
#[derive(Clone, Debug)]
pub struct EnergyInstance {
    pub interval: Interval,
    pub l: u64,
    pub primes: Vec<u64>,
    pub set: SpacedSet,
}

pub fn energy_instance(
    params: &EnergyParams,
    p_index: usize,
    trial: usize,
) -> Result<EnergyInstance> {
    let field = field_at(&params.primes, p_index)?;
    let p = field.modulus();
    let size = balanced_size(p, params.delta);
    let h = params.h.unwrap_or(size);
    let l = params
        .l
        .unwrap_or_else(|| ((h as f64).sqrt().floor() as u64).max(2));
    if l >= h || 2 * h * l >= p {
        return Err(Error::InvalidConfig(format!(
            "need L < h and 2hL < p, got L = {l}, h = {h}, p = {p}"
        )));
    }
    let set_size = params.set_size.unwrap_or(size as usize);
    let mut rng = stream_rng(params.seed, point_stream(p_index, trial));
    let set = SpacedSet::random(field, set_size, h, &mut rng)?;
    Ok(EnergyInstance {
        interval: Interval::new(field, h)?,
        l,
        primes: primes_in_interval(l)
            .into_iter()
            .filter(|&q| q != p)
            .collect(),
        set,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyRow {
    pub p: u64,
    pub h: u64,
    pub l: u64,
    pub set_size: usize,
    pub count_w: u64,
    pub sum_w_sq: u64,
    pub ratio_count: f64,
    pub ratio_squares: f64,
}

impl CsvRow for EnergyRow {
    const HEADER: &'static [&'static str] = &[
        "p", "h", "L", "set_size", "count_W", "sum_W_sq", "ratio22", "ratio23",
    ];
    fn record(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.h.to_string(),
            self.l.to_string(),
            self.set_size.to_string(),
            self.count_w.to_string(),
            self.sum_w_sq.to_string(),
            format_real(self.ratio_count),
            format_real(self.ratio_squares),
        ]
    }
}

pub fn energy_row(instance: &EnergyInstance) -> Result<EnergyRow> {
    let EnergyInstance {
        interval,
        l,
        primes,
        set,
    } = instance;
    let count = count_w(interval, primes, set)?;
    let sum_sq = w_table(interval, primes, set)?.sum_squares();
    let params = BoundParams {
        p: set.field().modulus(),
        h: interval.len(),
        l: *l,
        set_size: set.len(),
        order: 2,
    };
    Ok(EnergyRow {
        p: params.p,
        h: params.h,
        l: *l,
        set_size: set.len(),
        count_w: count,
        sum_w_sq: sum_sq,
        ratio_count: report_tuple_count(count, params).ratio,
        ratio_squares: report_table_squares(sum_sq, params).ratio,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilParams {
    pub primes: Vec<u64>,
    pub trials: usize,
    pub max_deg: usize,
    pub order: u64,
    pub seed: u64,
}

impl Default for WeilParams {
    fn default() -> Self {
        Self {
            primes: Vec::new(),
            trials: 100,
            max_deg: 5,
            order: 2,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilRow {
    pub p: u64,
    pub deg: usize,
    pub n: usize,
    pub abs_sum: f64,
    pub bound: f64,
    pub ok: bool,
}

impl CsvRow for WeilRow {
    const HEADER: &'static [&'static str] = &["p", "deg", "N", "abs_sum", "bound", "ok"];
    fn record(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.deg.to_string(),
            self.n.to_string(),
            format_real(self.abs_sum),
            format_real(self.bound),
            self.ok.to_string(),
        ]
    }
}

/// The random squarefree polynomial for one Weil point.
pub fn weil_instance(params: &WeilParams, p_index: usize, trial: usize) -> Result<Poly> {
    let field = field_at(&params.primes, p_index)?;
    if params.max_deg == 0 {
        return Err(Error::InvalidConfig("max degree must be at least 1".into()));
    }
    let mut rng = stream_rng(params.seed, point_stream(p_index, trial));
    Ok(random_squarefree(&mut rng, field, params.max_deg))
}

pub fn weil_point(params: &WeilParams, p_index: usize, trial: usize) -> Result<WeilRow> {
    let f = weil_instance(params, p_index, trial)?;
    let chi = character(f.field(), params.order)?;
    let report = weil_sum(&f, &chi)?;
    Ok(WeilRow {
        p: f.field().modulus(),
        deg: f.degree().unwrap_or(0),
        n: report.distinct_roots,
        abs_sum: report.abs_sum,
        bound: report.bound,
        ok: report.within_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchAlgo {
    /// All roots.
    Roots,
    /// One root.
    Root,
}

impl BenchAlgo {
    pub fn name(self) -> &'static str {
        match self {
            BenchAlgo::Roots => "roots",
            BenchAlgo::Root => "root",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algo: BenchAlgo,
    pub p: u64,
    pub degree: usize,
    pub trial: usize,
    pub wall_ms: f64,
    pub powmods: u64,
    pub gcds: u64,
    pub shifts: u64,
    pub doublings: u32,
    pub iterations: u32,
    pub shift_range: u64,
}

impl CsvRow for BenchRow {
    const HEADER: &'static [&'static str] = &[
        "algo",
        "p",
        "degree",
        "trial",
        "wall_ms",
        "powmods",
        "gcds",
        "shifts",
        "doublings",
        "iterations",
        "shift_range",
    ];
    fn record(&self) -> Vec<String> {
        vec![
            self.algo.name().to_string(),
            self.p.to_string(),
            self.degree.to_string(),
            self.trial.to_string(),
            format_real(self.wall_ms),
            self.powmods.to_string(),
            self.gcds.to_string(),
            self.shifts.to_string(),
            self.doublings.to_string(),
            self.iterations.to_string(),
            self.shift_range.to_string(),
        ]
    }
}

/// Product of `degree` distinct random linear factors for one benchmark point.
pub fn bench_instance(
    field: PrimeField,
    seed: u64,
    degree_index: usize,
    trial: usize,
    degree: usize,
) -> Poly {
    let mut rng = stream_rng(seed, point_stream(degree_index, trial));
    random_split_poly(&mut rng, field, degree).0
}

/// Times one run and re-verifies its output.
pub fn bench_point(
    algo: BenchAlgo,
    f: &Poly,
    cfg: &RootFindConfig,
    trial: usize,
) -> Result<BenchRow> {
    let degree = f.degree().unwrap_or(0);
    let start = Instant::now();
    let stats = match algo {
        BenchAlgo::Roots => {
            let (roots, stats) = find_all_roots_traced(f, cfg)?;
            if roots.len() != degree || roots.iter().any(|r| f.eval(r.value()) != 0) {
                return Err(Error::Verification(format!(
                    "all-roots returned {} roots for a split polynomial of degree {degree}",
                    roots.len()
                )));
            }
            stats
        }
        BenchAlgo::Root => {
            let (root, stats) = find_one_root_traced(f, cfg)?;
            if f.eval(root.value()) != 0 {
                return Err(Error::Verification(format!("{root} is not a root")));
            }
            stats
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(BenchRow {
        algo,
        p: f.field().modulus(),
        degree,
        trial,
        wall_ms,
        powmods: stats.powmods,
        gcds: stats.gcds,
        shifts: stats.shifts,
        doublings: stats.doublings,
        iterations: stats.iterations,
        shift_range: stats.shift_range,
    })
}
