use std::time::Instant;

use fproots::corpus::PRNG_NAME;
use fproots::experiment::{
    bench_instance, bench_point, energy_instance, energy_row, tchi_point, weil_point, BenchAlgo,
    EnergyParams, TchiParams, WeilParams,
};
use fproots::oracle::{brute_count_w, brute_sum_w_sq};
use fproots::roots::{find_all_roots_traced, find_one_root_traced, split_part};
use fproots::{factor_refine, Error, Poly, PrimeField, RootFindConfig, SweepStats};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{
    BenchArgs, BenchTarget, EnergyArgs, Experiment, PolyArgs, RefineArgs, RootArgs, RootsArgs,
    SweepArgs, SweepCommon, TchiArgs, WeilArgs,
};
use crate::output::{
    coeffs, csv_document, emit, to_json, CliResult, Counters, Failure, Parameters, RunRecord,
};

fn parse_input(args: &PolyArgs) -> CliResult<Poly> {
    let field = PrimeField::new(args.modulus)?;
    Ok(Poly::parse(field, &args.poly)?)
}

fn config(sweep: &SweepArgs, c_all: Option<f64>, delta: Option<f64>) -> CliResult<RootFindConfig> {
    let defaults = RootFindConfig::default();
    let cfg = RootFindConfig {
        c_all: c_all.unwrap_or(defaults.c_all),
        delta: delta.unwrap_or(defaults.delta),
        small_p_cutoff: sweep.small_p_cutoff,
        fallback_doubling: !sweep.no_fallback,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn counters(stats: &SweepStats) -> Counters {
    Counters {
        gcds: stats.gcds,
        powmods: stats.powmods,
        shifts: stats.shifts,
        doublings: stats.doublings,
        iterations: stats.iterations,
        brute_force: stats.brute_force,
    }
}

fn parameters(f: &Poly, cfg: &RootFindConfig, stats: &SweepStats, c_all: bool) -> Parameters {
    Parameters {
        p: f.field().modulus(),
        poly: coeffs(f),
        h: stats.shift_range,
        delta: (!c_all).then_some(cfg.delta),
        c_all: c_all.then_some(cfg.c_all),
        seed: None,
        small_p_cutoff: cfg.small_p_cutoff,
        fallback_doubling: cfg.fallback_doubling,
    }
}

pub fn roots(args: &RootsArgs) -> CliResult {
    let f = parse_input(&args.poly)?;
    let cfg = config(&args.sweep, Some(args.c_all), None)?;
    let start = Instant::now();
    let (found, stats) = find_all_roots_traced(&f, &cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let values: Vec<u64> = found.iter().map(|r| r.value()).collect();

    // Every root evaluates to zero, they are strictly ascending, and there
    // are exactly deg gcd(f, X^p - X) of them.
    if let Some(r) = values.iter().find(|&&r| f.eval(r) != 0) {
        return Err(Failure::verification(format!("f({r}) != 0")));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::verification("roots not strictly ascending"));
    }
    let expected = split_part(&f)?.degree().unwrap_or(0);
    if values.len() != expected {
        return Err(Failure::verification(format!(
            "found {} roots, split part has degree {expected}",
            values.len()
        )));
    }

    let text = if args.sweep.record {
        to_json(&RunRecord {
            command: "roots",
            parameters: parameters(&f, &cfg, &stats, true),
            counters: counters(&stats),
            wall_ms,
            outputs: &values,
        })
    } else if args.json {
        format!(
            "{}\n",
            serde_json::to_string(&values).expect("integers serialise")
        )
    } else {
        values.iter().map(|r| format!("{r}\n")).collect()
    };
    emit(&text, None)
}

pub fn root(args: &RootArgs) -> CliResult {
    let f = parse_input(&args.poly)?;
    let cfg = config(&args.sweep, None, Some(args.delta))?;
    let start = Instant::now();
    let result = find_one_root_traced(&f, &cfg);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (root, stats) = match result {
        Ok((r, stats)) => (Some(r.value()), stats),
        Err(Error::NoRoot) => (None, SweepStats::default()),
        Err(e) => return Err(e.into()),
    };
    match root {
        Some(r) if f.eval(r) != 0 => {
            return Err(Failure::verification(format!("f({r}) != 0")));
        }
        None if split_part(&f)?.degree() != Some(0) => {
            return Err(Failure::verification(
                "reported no root, but the split part is nontrivial",
            ));
        }
        _ => {}
    }
    let text = if args.sweep.record {
        to_json(&RunRecord {
            command: "root",
            parameters: parameters(&f, &cfg, &stats, false),
            counters: counters(&stats),
            wall_ms,
            outputs: root,
        })
    } else {
        match root {
            Some(r) => format!("{r}\n"),
            None => "no-root\n".to_string(),
        }
    };
    emit(&text, None)
}

#[derive(Serialize)]
struct RefineOutput {
    p: u64,
    basis: Vec<Vec<u64>>,
    exponents: Vec<Vec<u32>>,
    units: Vec<u64>,
}

pub fn refine(args: &RefineArgs) -> CliResult {
    let field = PrimeField::new(args.modulus)?;
    let inputs = args
        .polys
        .iter()
        .map(|text| Poly::parse(field, text))
        .collect::<Result<Vec<_>, _>>()?;
    let refined = factor_refine(&inputs)?;

    for (i, a) in refined.basis.iter().enumerate() {
        for b in &refined.basis[i + 1..] {
            if !a.gcd(b)?.is_one() {
                return Err(Failure::verification(format!(
                    "basis elements {a} and {b} share a factor"
                )));
            }
        }
    }
    for (i, x) in inputs.iter().enumerate() {
        if refined.reconstruct(i) != *x {
            return Err(Failure::verification(format!(
                "input {i} does not reconstruct"
            )));
        }
    }

    emit(
        &to_json(&RefineOutput {
            p: field.modulus(),
            basis: refined.basis.iter().map(coeffs).collect(),
            exponents: refined.exponents,
            units: refined.units.iter().map(|u| u.value()).collect(),
        }),
        None,
    )
}

/// Evaluates `point` over every `(prime index, trial)` pair, in that order,
/// on `threads` workers.
fn sweep<R, F>(common: &SweepCommon, trials: usize, point: F) -> CliResult<Vec<R>>
where
    R: Send,
    F: Fn(usize, usize) -> fproots::Result<R> + Sync,
{
    let points: Vec<(usize, usize)> = (0..common.p_list.len())
        .flat_map(|i| (0..trials).map(move |t| (i, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
        .map_err(|e| Failure {
            code: crate::output::EXIT_INPUT,
            message: format!("cannot start worker pool: {e}"),
        })?;
    let results: Vec<fproots::Result<R>> =
        pool.install(|| points.par_iter().map(|&(i, t)| point(i, t)).collect());
    results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::from)
}

fn check_primes(list: &[u64]) -> CliResult {
    for &p in list {
        PrimeField::new(p)?;
    }
    Ok(())
}

fn join(list: &[u64]) -> String {
    list.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "auto".to_string(), |v| v.to_string())
}

pub fn experiment(which: &Experiment) -> CliResult {
    match which {
        Experiment::Tchi(args) => tchi(args),
        Experiment::Energy(args) => energy(args),
        Experiment::Weil(args) => weil(args),
    }
}

fn tchi(args: &TchiArgs) -> CliResult {
    let c = &args.common;
    check_primes(&c.p_list)?;
    let params = TchiParams {
        primes: c.p_list.clone(),
        delta: args.delta,
        trials: args.trials,
        seed: c.seed,
        h: args.h,
        set_size: args.set_size,
        order: args.order,
    };
    let rows = sweep(c, args.trials, |i, t| tchi_point(&params, i, t))?;
    let comment = format!(
        "experiment=tchi prng={PRNG_NAME} seed={} p_list={} delta={} trials={} h={} set_size={} order={}",
        c.seed,
        join(&c.p_list),
        args.delta,
        args.trials,
        opt(args.h),
        opt(args.set_size),
        args.order
    );
    emit(&csv_document(&comment, &rows), c.out.as_deref())
}

fn energy(args: &EnergyArgs) -> CliResult {
    let c = &args.common;
    check_primes(&c.p_list)?;
    let params = EnergyParams {
        primes: c.p_list.clone(),
        delta: args.delta,
        trials: args.trials,
        seed: c.seed,
        h: args.h,
        l: args.l,
        set_size: args.set_size,
    };
    let verify = args.verify;
    let rows = sweep(c, args.trials, |i, t| {
        let instance = energy_instance(&params, i, t)?;
        let row = energy_row(&instance)?;
        if verify {
            let count = brute_count_w(&instance.interval, &instance.primes, &instance.set)?;
            let squares = brute_sum_w_sq(&instance.interval, &instance.primes, &instance.set)?;
            if count != row.count_w || squares != row.sum_w_sq {
                return Err(Error::Verification(format!(
                    "p = {}, trial {t}: counters ({}, {}) differ from oracle ({count}, {squares})",
                    row.p, row.count_w, row.sum_w_sq
                )));
            }
        }
        Ok(row)
    })?;
    let comment = format!(
        "experiment=energy prng={PRNG_NAME} seed={} p_list={} delta={} trials={} h={} L={} set_size={} verified={}",
        c.seed,
        join(&c.p_list),
        args.delta,
        args.trials,
        opt(args.h),
        opt(args.l),
        opt(args.set_size),
        verify
    );
    emit(&csv_document(&comment, &rows), c.out.as_deref())
}

fn weil(args: &WeilArgs) -> CliResult {
    let c = &args.common;
    check_primes(&c.p_list)?;
    let params = WeilParams {
        primes: c.p_list.clone(),
        trials: args.trials,
        max_deg: args.max_deg,
        order: args.order,
        seed: c.seed,
    };
    let rows = sweep(c, args.trials, |i, t| weil_point(&params, i, t))?;
    if let Some(bad) = rows.iter().find(|r| !r.ok) {
        return Err(Failure::verification(format!(
            "character sum {} exceeds N sqrt(p) = {} at p = {}",
            bad.abs_sum, bad.bound, bad.p
        )));
    }
    let comment = format!(
        "experiment=weil prng={PRNG_NAME} seed={} p_list={} trials={} max_deg={} order={}",
        c.seed,
        join(&c.p_list),
        args.trials,
        args.max_deg,
        args.order
    );
    emit(&csv_document(&comment, &rows), c.out.as_deref())
}

pub fn bench(args: &BenchArgs) -> CliResult {
    let field = PrimeField::new(args.modulus)?;
    let algo = match args.algo {
        BenchTarget::Roots => BenchAlgo::Roots,
        BenchTarget::Root => BenchAlgo::Root,
    };
    if let Some(&n) = args
        .degrees
        .iter()
        .find(|&&n| n == 0 || n as u64 > args.modulus)
    {
        return Err(Failure::from(Error::InvalidConfig(format!(
            "degree {n} must lie in [1, p]"
        ))));
    }
    let cfg = RootFindConfig::default();
    // Timed sequentially so that runs do not compete for cores.
    let mut rows = Vec::new();
    for (d, &n) in args.degrees.iter().enumerate() {
        for trial in 0..args.trials {
            let f = bench_instance(field, args.seed, d, trial, n);
            rows.push(bench_point(algo, &f, &cfg, trial)?);
        }
    }
    let comment = format!(
        "bench={} prng={PRNG_NAME} seed={} p={} degrees={} trials={}",
        algo.name(),
        args.seed,
        args.modulus,
        args.degrees
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(","),
        args.trials
    );
    emit(&csv_document(&comment, &rows), args.out.as_deref())
}
