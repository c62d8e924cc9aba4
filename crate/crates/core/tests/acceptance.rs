//! Acceptance suite. Prints one PASS/FAIL line per criterion with the measured
//! deviation and wall time, and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use frog_bounds::analytic::{beta, classic_bounds, lambda_growth, FMRT_BOUND_D2};
use frog_bounds::bounds::pbar_n;
use frog_bounds::phi::{log_phi_scaled, phi_closed, phi_direct, phi_recurrence};
use frog_bounds::quartic::{
    descartes_constants, discriminant_h0, isolate_root, pbar_closed, poly_q, poly_r, CubicBranch,
};
use frog_bounds::sim::{
    estimate_child_probability, estimate_hit_probability, simulate_branching_offspring,
    simulate_frog_model, SimConfig, SurvivalEstimate,
};
use frog_bounds::{BranchRatio, Degree, Probability};

type Outcome = Result<String, String>;

fn deg(d: u32) -> Degree {
    Degree::new(d).unwrap()
}

fn prob(p: f64) -> Probability {
    Probability::new(p).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac01_phi3_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..=200 {
        let b = 0.5 * f64::from(i) / 200.0;
        let br = BranchRatio::new(Degree::MIN, b).unwrap();
        let poly = b.powi(3) * (4.0 - 3.0 * b - b * b + b.powi(3));
        worst = worst.max((phi_direct(3, br).unwrap() - poly).abs());
    }
    check(
        worst <= 1e-14,
        format!("max deviation {worst:.3e} (tol 1e-14)"),
    )
}

fn ac02_phi_three_way() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in [2, 3, 5, 10] {
        let d = deg(d);
        for i in 0..=100 {
            let br = BranchRatio::new(d, d.max_ratio() * (f64::from(i) / 100.0)).unwrap();
            for n in 1..=12 {
                let direct = phi_direct(n, br).unwrap();
                let rec = phi_recurrence(n, br);
                let closed = phi_closed(n, br);
                worst = worst
                    .max((direct - rec).abs())
                    .max((rec - closed).abs())
                    .max((direct - closed).abs());
            }
        }
    }
    check(
        worst <= 1e-11,
        format!("max pairwise deviation {worst:.3e} (tol 1e-11)"),
    )
}

fn ac03_limit_law() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for b in [0.2, 0.3, 0.45] {
        let br = BranchRatio::new(Degree::MIN, b).unwrap();
        let lambda = lambda_growth(br);
        let gaps: Vec<f64> = [100, 1_000, 10_000, 100_000]
            .iter()
            .map(|&n| (log_phi_scaled(n, br).unwrap().exp() - lambda).abs())
            .collect();
        ok &= gaps.windows(2).all(|w| w[1] <= w[0]) && gaps[3] <= 1e-3;
        parts.push(format!("b={b}: {:.2e}", gaps[3]));
    }
    check(
        ok,
        format!("gap at n=1e5 {} (monotone, tol 1e-3)", parts.join(", ")),
    )
}

fn ac04_closed_form() -> Outcome {
    let (mut to_bisect, mut residual): (f64, f64) = (0.0, 0.0);
    let mut branches = (false, false);
    for d in 2..=200 {
        let d = deg(d);
        let q = poly_q(d);
        let closed = pbar_closed(d).map_err(|e| e.to_string())?.get();
        let bisected = isolate_root(&q, 0.0, 1.0, 1e-12).map_err(|e| e.to_string())?;
        to_bisect = to_bisect.max((closed - bisected).abs());
        residual = residual.max(q.eval(closed).abs());
        match descartes_constants(d).unwrap().branch {
            CubicBranch::Cardano => branches.0 = true,
            CubicBranch::Trigonometric => branches.1 = true,
        }
    }
    check(
        to_bisect <= 1e-9 && residual <= 1e-9 && branches == (true, true),
        format!(
            "|closed - bisection| {to_bisect:.2e}, |Q(p̄)| {residual:.2e} (tol 1e-9), both branches"
        ),
    )
}

fn ac05_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut in_range = true;
    for d in 2..=200 {
        let d = deg(d);
        let v = beta(d, pbar_closed(d).map_err(|e| e.to_string())?);
        in_range &= (0.0..=d.max_ratio()).contains(&v.get());
        worst = worst.max(poly_r(d).eval(v.get()).abs());
    }
    check(
        in_range && worst <= 1e-9,
        format!("max |R(v̄)| {worst:.2e} (tol 1e-9), v̄ in [0, 1/d]"),
    )
}

fn ac06_bound_chain() -> Outcome {
    let mut min_margin = f64::INFINITY;
    let mut ok =
        classic_bounds(Degree::MIN).fmrt.get() == FMRT_BOUND_D2 && FMRT_BOUND_D2 == 0.720836;
    for d in 2..=200 {
        let d = deg(d);
        let c = classic_bounds(d);
        let pbar = pbar_closed(d).map_err(|e| e.to_string())?.get();
        ok &= pbar < c.fmrt.get() && c.fmrt.get() < c.original.get();
        min_margin = min_margin.min(c.fmrt.get() - pbar);
    }
    check(
        ok,
        format!("p̄ < p̂ < (d+1)/(2d) for d in 2..=200; min p̂ - p̄ = {min_margin:.3e}"),
    )
}

fn ac07_discriminant() -> Outcome {
    let signs: Vec<bool> = (2..=200).map(|d| discriminant_h0(deg(d)) > 0.0).collect();
    let negative_low = signs[..8].iter().all(|&s| !s);
    let positive_high = signs[8..].iter().all(|&s| s);
    let flips = signs.windows(2).filter(|w| w[0] != w[1]).count();
    check(
        negative_low && positive_high && flips == 1,
        format!("H0 < 0 on 2..=9, > 0 on 10..=200, {flips} sign change"),
    )
}

fn ac08_bound_sequence() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for d in [2, 3, 5, 10] {
        let d = deg(d);
        let one = pbar_n(d, 1, 1e-12).map_err(|e| e.to_string())?.get();
        ok &= (one - 1.0).abs() <= 1e-12;
        let limit = pbar_closed(d).unwrap().get();
        let mut gaps = Vec::new();
        for n in [10, 50, 200] {
            gaps.push((pbar_n(d, n, 1e-12).map_err(|e| e.to_string())?.get() - limit).abs());
        }
        ok &= gaps[0] >= gaps[1] && gaps[1] >= gaps[2] && gaps[2] <= 1e-2;
        parts.push(format!("d={d}: {:.2e}", gaps[2]));
    }
    check(
        ok,
        format!(
            "p̄1 = 1; |p̄200 - p̄| {} (monotone, tol 1e-2)",
            parts.join(", ")
        ),
    )
}

fn covered(label: &str, e: &SurvivalEstimate, target: f64) -> (bool, String) {
    let z = (e.point - target).abs() / e.ci95_halfwidth;
    (
        e.covers(target, 4.0),
        format!("{label}: {:.5} vs {target:.5} ({z:.2} ci)", e.point),
    )
}

fn ac09_edge_law() -> Outcome {
    let d = Degree::MIN;
    let p = prob(0.7);
    let b = beta(d, p).get();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let e = estimate_hit_probability(d, p, n, 1_000_000, 0x0009_0000 + u64::from(n)).unwrap();
        let (c, s) = covered(&format!("n={n}"), &e, b.powi(n as i32));
        ok &= c;
        parts.push(s);
    }
    check(ok, parts.join("; "))
}

fn ac10_child_law() -> Outcome {
    let d = Degree::MIN;
    let p = prob(0.7);
    let b = beta(d, p);
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=4 {
        let e = estimate_child_probability(d, p, n, 1_000_000, 0x000a_0000 + u64::from(n)).unwrap();
        let (c, s) = covered(&format!("n={n}"), &e, phi_recurrence(n as usize, b));
        ok &= c;
        parts.push(s);
    }
    check(ok, parts.join("; "))
}

fn ac11_offspring_mean() -> Outcome {
    let d = Degree::MIN;
    let p = prob(0.7);
    let b = beta(d, p);
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=2u32 {
        let e = simulate_branching_offspring(d, p, n, 100_000, 0x000b_0000 + u64::from(n)).unwrap();
        let target = 2f64.powi(n as i32) * phi_recurrence(n as usize, b);
        let z = (e.mean - target).abs() / e.ci95_halfwidth;
        ok &= e.covers(target, 4.0);
        parts.push(format!("n={n}: {:.5} vs {target:.5} ({z:.2} ci)", e.mean));
    }
    check(ok, parts.join("; "))
}

/// Awake-count cap for the survival runs; a replica with this many awake
/// frogs is counted as surviving.
const SURVIVAL_CAP: usize = 2_000;

fn survival(p: f64, trials: u64, seed: u64) -> SurvivalEstimate {
    let cfg = SimConfig::new(Degree::MIN, prob(p), 200, SURVIVAL_CAP, trials, seed).unwrap();
    simulate_frog_model(&cfg)
}

fn ac12_simulator() -> Outcome {
    let seed = 0x000c_0000;
    let zero = survival(0.0, 10_000, seed);
    let one = survival(1.0, 10_000, seed);
    let mut ok = zero.point == 0.0 && one.point == 1.0;

    let curve: Vec<SurvivalEstimate> = [0.5, 0.6, 0.7, 0.8, 0.9]
        .iter()
        .map(|&p| survival(p, 10_000, seed))
        .collect();
    for w in curve.windows(2) {
        ok &= w[1].point >= w[0].point - 4.0 * w[0].ci95_halfwidth.max(w[1].ci95_halfwidth);
    }

    let cfg = SimConfig::new(Degree::MIN, prob(0.75), 200, SURVIVAL_CAP, 2_000, seed).unwrap();
    let runs: Vec<SurvivalEstimate> = [1, 2, 4]
        .iter()
        .map(|&threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate_frog_model(&cfg))
        })
        .collect();
    let reproducible = runs.windows(2).all(|w| w[0] == w[1]);
    ok &= reproducible;

    let points: Vec<String> = curve.iter().map(|e| format!("{:.4}", e.point)).collect();
    check(
        ok,
        format!(
            "p=0 -> {}, p=1 -> {}, curve p=0.5..0.9 [{}], identical across 1/2/4 threads: {reproducible}",
            zero.point,
            one.point,
            points.join(", ")
        ),
    )
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "phi3 identity",
            budget: secs(1),
            run: ac01_phi3_identity,
        },
        Criterion {
            id: 2,
            name: "three-way phi equivalence",
            budget: secs(5),
            run: ac02_phi_three_way,
        },
        Criterion {
            id: 3,
            name: "limit law",
            budget: secs(5),
            run: ac03_limit_law,
        },
        Criterion {
            id: 4,
            name: "closed form vs bisection",
            budget: secs(2),
            run: ac04_closed_form,
        },
        Criterion {
            id: 5,
            name: "R equivalence",
            budget: secs(1),
            run: ac05_equivalence,
        },
        Criterion {
            id: 6,
            name: "bound chain",
            budget: secs(1),
            run: ac06_bound_chain,
        },
        Criterion {
            id: 7,
            name: "discriminant branch",
            budget: secs(1),
            run: ac07_discriminant,
        },
        Criterion {
            id: 8,
            name: "bound sequence",
            budget: secs(10),
            run: ac08_bound_sequence,
        },
        Criterion {
            id: 9,
            name: "MC edge law",
            budget: secs(60),
            run: ac09_edge_law,
        },
        Criterion {
            id: 10,
            name: "MC child law",
            budget: secs(60),
            run: ac10_child_law,
        },
        Criterion {
            id: 11,
            name: "MC offspring mean",
            budget: secs(120),
            run: ac11_offspring_mean,
        },
        Criterion {
            id: 12,
            name: "simulator endpoints and monotonicity",
            budget: secs(120),
            run: ac12_simulator,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= c.budget;
        let (passed, detail) = match outcome {
            Ok(detail) => (in_budget, detail),
            Err(detail) => (false, detail),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] AC{:02} {}: {} [{:.2}s / {}s budget{}]",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if in_budget { "" } else { ", over budget" }
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
