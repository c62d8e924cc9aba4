//! The `verify` suite: deterministic analytic cross-checks, plus Monte Carlo
//! consistency checks at the `full` level.

use frog_bounds::analytic::{beta, classic_bounds, lambda_growth};
use frog_bounds::bounds::pbar_n;
use frog_bounds::phi::{char_roots, log_phi_scaled, phi_closed, phi_direct, phi_recurrence};
use frog_bounds::quartic::{discriminant_h0, isolate_root, pbar_closed, poly_q, poly_r};
use frog_bounds::sim::{
    estimate_child_probability, estimate_hit_probability, simulate_branching_offspring,
    simulate_frog_model, SimConfig,
};
use frog_bounds::{BranchRatio, Degree, Probability, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Measured deviation; a violation count for the all-or-nothing checks.
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn within(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.into(),
            passed: deviation <= tolerance,
            deviation,
            tolerance,
        }
    }

    fn violations(name: impl Into<String>, count: usize) -> Self {
        Self::within(name, count as f64, 0.0)
    }
}

const DEGREES: std::ops::RangeInclusive<u32> = 2..=200;
const MC_DEGREE: Degree = Degree::MIN;
const MC_P: f64 = 0.7;
const MC_TRIALS: u64 = 1_000_000;
const OFFSPRING_TRIALS: u64 = 100_000;
const SURVIVAL_TRIALS: u64 = 4_000;
const SURVIVAL_HORIZON: u32 = 200;
const SURVIVAL_CAP: usize = 2_000;
const CI_MULTIPLE: f64 = 4.0;

fn degrees() -> impl Iterator<Item = Degree> {
    DEGREES.map(|d| Degree::new(d).expect("degree range starts at 2"))
}

fn ratio_grid(d: Degree, points: u32) -> impl Iterator<Item = BranchRatio> {
    (0..points).map(move |i| {
        let t = f64::from(i) / f64::from(points - 1);
        BranchRatio::new(d, d.max_ratio() * t).expect("grid stays in [0, 1/d]")
    })
}

fn phi3_identity() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for b in ratio_grid(Degree::MIN, 201) {
        let x = b.get();
        let poly = x.powi(3) * (4.0 - 3.0 * x - x * x + x.powi(3));
        worst = worst.max((phi_direct(3, b)? - poly).abs());
    }
    Ok(CheckResult::within("phi3-identity", worst, 1e-14))
}

fn phi_three_way() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for d in [2, 3, 5, 10] {
        for b in ratio_grid(Degree::new(d)?, 101) {
            for n in 1..=12 {
                let (x, y, z) = (phi_direct(n, b)?, phi_recurrence(n, b), phi_closed(n, b));
                worst = worst
                    .max((x - y).abs())
                    .max((y - z).abs())
                    .max((x - z).abs());
            }
        }
    }
    Ok(CheckResult::within("phi-three-way", worst, 1e-11))
}

fn phi_vieta() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for b in ratio_grid(Degree::MIN, 101).skip(1) {
        let r = char_roots(b)?;
        let x = b.get();
        worst = worst
            .max((r.lambda_minus + r.lambda_plus - x * (2.0 - x * x)).abs())
            .max((r.lambda_minus * r.lambda_plus - x.powi(3) * (1.0 - x)).abs())
            .max((r.c1 + r.c2 - 1.0).abs());
    }
    Ok(CheckResult::within("phi-vieta", worst, 1e-13))
}

fn limit_law() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for x in [0.2, 0.3, 0.45] {
        let b = BranchRatio::new(Degree::MIN, x)?;
        let lambda = lambda_growth(b);
        let mut prev = f64::INFINITY;
        for n in [100, 1_000, 10_000, 100_000] {
            let gap = (log_phi_scaled(n, b)?.exp() - lambda).abs();
            monotone &= gap <= prev;
            prev = gap;
        }
        worst = worst.max(prev);
    }
    let mut c = CheckResult::within("limit-law", worst, 1e-3);
    c.passed &= monotone;
    Ok(c)
}

fn closed_form() -> Result<Vec<CheckResult>> {
    let (mut to_bisection, mut res_q, mut res_r): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut out_of_range = 0;
    for d in degrees() {
        let q = poly_q(d);
        let pbar = pbar_closed(d)?;
        to_bisection = to_bisection.max((pbar.get() - isolate_root(&q, 0.0, 1.0, 1e-12)?).abs());
        res_q = res_q.max(q.eval(pbar.get()).abs());
        let v = beta(d, pbar).get();
        out_of_range += usize::from(!(0.0..=d.max_ratio()).contains(&v));
        res_r = res_r.max(poly_r(d).eval(v).abs());
    }
    Ok(vec![
        CheckResult::within("pbar-closed-vs-bisection", to_bisection, 1e-9),
        CheckResult::within("residual-Q", res_q, 1e-9),
        CheckResult::within("residual-R", res_r, 1e-9),
        CheckResult::violations("vbar-range", out_of_range),
    ])
}

fn bound_chain() -> Result<CheckResult> {
    let mut bad = usize::from(classic_bounds(Degree::MIN).fmrt.get() != 0.720836);
    for d in degrees() {
        let c = classic_bounds(d);
        let pbar = pbar_closed(d)?.get();
        bad += usize::from(!(pbar < c.fmrt.get() && c.fmrt.get() < c.original.get()));
    }
    Ok(CheckResult::violations("bound-chain", bad))
}

fn h0_branch() -> CheckResult {
    let bad = degrees()
        .filter(|&d| (discriminant_h0(d) > 0.0) != (d.get() >= 10))
        .count();
    CheckResult::violations("h0-branch", bad)
}

fn bound_sequence() -> Result<Vec<CheckResult>> {
    let (mut first, mut last): (f64, f64) = (0.0, 0.0);
    let mut monotone = true;
    for d in [2, 3, 5, 10] {
        let d = Degree::new(d)?;
        first = first.max((pbar_n(d, 1, 1e-12)?.get() - 1.0).abs());
        let limit = pbar_closed(d)?.get();
        let mut prev = f64::INFINITY;
        for n in [10, 50, 200] {
            let gap = (pbar_n(d, n, 1e-12)?.get() - limit).abs();
            monotone &= gap <= prev;
            prev = gap;
        }
        last = last.max(prev);
    }
    let mut convergence = CheckResult::within("pbar-n-convergence", last, 1e-2);
    convergence.passed &= monotone;
    Ok(vec![
        CheckResult::within("pbar-1", first, 1e-12),
        convergence,
    ])
}

fn monte_carlo(seed: u64) -> Result<Vec<CheckResult>> {
    let p = Probability::new(MC_P)?;
    let b = beta(MC_DEGREE, p);
    let mut out = Vec::new();
    let mut stream = 0u64;
    let mut next_seed = || {
        stream += 1;
        seed.wrapping_add(stream)
    };

    for n in 1..=3u32 {
        let e = estimate_hit_probability(MC_DEGREE, p, n, MC_TRIALS, next_seed())?;
        out.push(CheckResult::within(
            format!("hit-prob-n{n}"),
            (e.point - b.get().powi(n as i32)).abs(),
            CI_MULTIPLE * e.ci95_halfwidth,
        ));
    }
    for n in 1..=4u32 {
        let e = estimate_child_probability(MC_DEGREE, p, n, MC_TRIALS, next_seed())?;
        out.push(CheckResult::within(
            format!("child-prob-n{n}"),
            (e.point - phi_recurrence(n as usize, b)).abs(),
            CI_MULTIPLE * e.ci95_halfwidth,
        ));
    }
    for n in 1..=2u32 {
        let e = simulate_branching_offspring(MC_DEGREE, p, n, OFFSPRING_TRIALS, next_seed())?;
        let target = f64::from(MC_DEGREE.get()).powi(n as i32) * phi_recurrence(n as usize, b);
        out.push(CheckResult::within(
            format!("offspring-mean-n{n}"),
            (e.mean - target).abs(),
            CI_MULTIPLE * e.ci95_halfwidth,
        ));
    }

    let survival_seed = next_seed();
    let survival = |p: f64| -> Result<_> {
        let cfg = SimConfig::new(
            MC_DEGREE,
            Probability::new(p)?,
            SURVIVAL_HORIZON,
            SURVIVAL_CAP,
            SURVIVAL_TRIALS,
            survival_seed,
        )?;
        Ok(simulate_frog_model(&cfg))
    };
    let endpoints = (survival(0.0)?.point - 0.0).abs() + (1.0 - survival(1.0)?.point).abs();
    out.push(CheckResult::within("sim-endpoints", endpoints, 0.0));

    let curve = [0.5, 0.6, 0.7, 0.8, 0.9]
        .into_iter()
        .map(survival)
        .collect::<Result<Vec<_>>>()?;
    // largest drop between neighbouring p beyond the allowed noise
    let excess = curve
        .windows(2)
        .map(|w| {
            w[0].point - w[1].point - CI_MULTIPLE * w[0].ci95_halfwidth.max(w[1].ci95_halfwidth)
        })
        .fold(0.0, f64::max);
    out.push(CheckResult::within("sim-monotone", excess, 0.0));
    Ok(out)
}

/// Runs the suite. The report depends only on `level` and `seed`.
pub fn run(level: Level, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = vec![
        phi3_identity()?,
        phi_three_way()?,
        phi_vieta()?,
        limit_law()?,
    ];
    out.extend(closed_form()?);
    out.push(bound_chain()?);
    out.push(h0_branch());
    out.extend(bound_sequence()?);
    if level == Level::Full {
        out.extend(monte_carlo(seed)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_passes_and_is_deterministic() {
        let a = run(Level::Fast, 1).unwrap();
        assert!(a.iter().all(|c| c.passed), "{a:?}");
        assert_eq!(a, run(Level::Fast, 2).unwrap());
        let names: Vec<&str> = a.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"phi3-identity"));
        assert!(names.contains(&"h0-branch"));
    }
}
