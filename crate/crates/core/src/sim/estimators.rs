//! Targeted estimators for the laws behind the bound: the edge law
//! `P[x → y] = β^dist(x,y)`, the child probability `φₙ(β)` and the mean
//! offspring `dⁿφₙ(β)` of the embedded branching process.

use std::collections::HashSet;

use rand::Rng;

use super::arena::{TreeArena, VertexId};
use super::{par_trials, trial_rng, SurvivalEstimate, Z95};
use crate::analytic::{beta, Degree, Probability};
use crate::error::{Error, Result};

/// A lone frog this far from everything it could still visit is treated as
/// gone; with `d ≥ 2` it returns with probability at most `2⁻⁶⁰`.
pub const ESCAPE_DISTANCE: u32 = 60;

/// Upper limit on `dⁿ` for [`simulate_branching_offspring`].
pub const MAX_OFFSPRING_TARGETS: u64 = 10_000;

/// Estimates `P[frog at x ever visits y]` for `dist(x, y) = n`.
///
/// On `T_d` exactly one neighbour of any vertex other than `y` is closer to
/// `y`, so the frog's distance to `y` is itself a Markov chain: each surviving
/// step moves it one closer with probability `1/(d+1)` and one further
/// otherwise.
pub fn estimate_hit_probability(
    d: Degree,
    p: Probability,
    n: u32,
    trials: u64,
    seed: u64,
) -> Result<SurvivalEstimate> {
    check_counts(n, trials)?;
    let arity = d.get() + 1;
    let p = p.get();
    let (hits, _) = par_trials(
        trials,
        || (),
        |_, t| {
            let mut rng = trial_rng(seed, t);
            let mut dist = n;
            loop {
                if rng.random::<f64>() >= p {
                    return 0;
                }
                if rng.random_range(0..arity) == 0 {
                    dist -= 1;
                    if dist == 0 {
                        return 1;
                    }
                } else {
                    dist += 1;
                    if dist > n + ESCAPE_DISTANCE {
                        return 0;
                    }
                }
            }
        },
    );
    Ok(SurvivalEstimate::from_counts(trials, hits))
}

/// Whether `x₀ ⇒ xₙ` given the forward reaches along the path `x₀, …, xₙ`.
///
/// `reach[j]` is how far down the path the frog from `x_j` gets: it visits
/// `x_k` iff `reach[j] ≥ k − j`, and it visits `x_{j+m}` but not `x_{j+m+1}`
/// iff `reach[j] == m`. Values at or beyond `n − j` are equivalent. The event
/// is built from the end of the path back:
///
/// - `x_j ⇒ xₙ` if the frog at `x_j` reaches `xₙ` directly,
/// - or it stops exactly at `x_{j+1}` and `x_{j+1} ⇒ xₙ`,
/// - or it stops exactly at `x_{j+m}`, `2 ≤ m < n − j`, and one of
///   `x_{j+m−1}`, `x_{j+m}` has `⇒ xₙ`.
pub fn descends(reach: &[usize]) -> bool {
    let n = reach.len();
    if n == 0 {
        return false;
    }
    // holds[j] = x_j ⇒ xₙ, filled from j = n − 1 down
    let mut holds = vec![false; n];
    for j in (0..n).rev() {
        let span = n - j;
        let m = reach[j];
        holds[j] = if m >= span {
            true
        } else if m == 1 {
            holds[j + 1]
        } else if m >= 2 {
            holds[j + m - 1] || holds[j + m]
        } else {
            false
        };
    }
    holds[0]
}

/// Draws `reach[j]`, `j < n`, independently with `P[reach ≥ ℓ] = bˡ`,
/// truncated at `n − j`.
pub fn sample_reaches<R: Rng>(rng: &mut R, b: f64, reach: &mut [usize]) {
    let n = reach.len();
    let log_b = b.ln();
    for (j, slot) in reach.iter_mut().enumerate() {
        let cap = n - j;
        *slot = if b <= 0.0 {
            0
        } else {
            // inversion: U ∈ (0, 1], M = ⌊ln U / ln b⌋
            let u = 1.0 - rng.random::<f64>();
            let m = (u.ln() / log_b).floor();
            if m >= cap as f64 {
                cap
            } else {
                m as usize
            }
        };
    }
}

/// Estimates `P[x₀ ⇒ xₙ]` by sampling one reach per path vertex.
pub fn estimate_child_probability(
    d: Degree,
    p: Probability,
    n: u32,
    trials: u64,
    seed: u64,
) -> Result<SurvivalEstimate> {
    check_counts(n, trials)?;
    let b = beta(d, p).get();
    let (hits, _) = par_trials(
        trials,
        || vec![0usize; n as usize],
        |reach, t| {
            let mut rng = trial_rng(seed, t);
            sample_reaches(&mut rng, b, reach);
            u64::from(descends(reach))
        },
    );
    Ok(SurvivalEstimate::from_counts(trials, hits))
}

/// A sample mean with its normal-approximation 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub trials: u64,
    pub mean: f64,
    pub ci95_halfwidth: f64,
}

impl MeanEstimate {
    pub fn from_sums(trials: u64, sum: u64, sum_sq: u64) -> Self {
        assert!(trials > 0);
        let t = trials as f64;
        let mean = sum as f64 / t;
        let var = if trials > 1 {
            ((sum_sq as f64 - t * mean * mean) / (t - 1.0)).max(0.0)
        } else {
            0.0
        };
        MeanEstimate {
            trials,
            mean,
            ci95_halfwidth: Z95 * (var / t).sqrt(),
        }
    }

    pub fn covers(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.ci95_halfwidth
    }
}

#[derive(Default)]
struct OffspringScratch {
    arena: Option<TreeArena>,
    visited: Vec<HashSet<VertexId>>,
    reach: Vec<usize>,
    path: Vec<Option<VertexId>>,
}

/// Mean number of children of the root in the `n`-step embedded branching
/// process, from explicit frog trajectories.
///
/// Every frog in `T_d⁺(ρ)` within depth `n − 1` walks on the whole of `T_d`
/// until it dies. A target `y ∈ Lₙ(ρ)` is a child when `ρ ⇒ y` holds for the
/// reaches read off the recorded visits along the path from `ρ` to `y`.
pub fn simulate_branching_offspring(
    d: Degree,
    p: Probability,
    n: u32,
    trials: u64,
    seed: u64,
) -> Result<MeanEstimate> {
    check_counts(n, trials)?;
    let targets = u64::from(d.get()).checked_pow(n);
    if targets.is_none_or(|t| t > MAX_OFFSPRING_TARGETS) {
        return Err(Error::InvalidArgument(format!(
            "d^n = {}^{} exceeds {MAX_OFFSPRING_TARGETS}",
            d.get(),
            n
        )));
    }
    let (sum, sum_sq) = par_trials(trials, OffspringScratch::default, |scratch, t| {
        offspring_count(d.get(), p.get(), n, seed, t, scratch)
    });
    Ok(MeanEstimate::from_sums(trials, sum, sum_sq))
}

fn offspring_count(d: u32, p: f64, n: u32, seed: u64, trial: u64, s: &mut OffspringScratch) -> u64 {
    let mut rng = trial_rng(seed, trial);
    let arity = d as usize + 1;
    let arena = s.arena.get_or_insert_with(|| TreeArena::new(d));
    arena.clear();

    // Frog origins: T_d⁺(ρ) down to depth n − 1, breadth first. They are the
    // first vertices created, so their ids are 0..origins.
    let mut level = vec![TreeArena::ROOT];
    for _ in 1..n {
        let mut below = Vec::with_capacity(level.len() * d as usize);
        for &v in &level {
            for slot in 1..arity {
                below.push(arena.neighbor(v, slot));
            }
        }
        level = below;
    }
    let origins = arena.len();

    s.visited.resize_with(origins, HashSet::new);
    for (x, seen) in s.visited.iter_mut().enumerate().take(origins) {
        seen.clear();
        let mut pos = x as VertexId;
        loop {
            if rng.random::<f64>() >= p {
                break;
            }
            pos = arena.neighbor(pos, rng.random_range(0..arity));
            let depth = arena.depth(pos);
            let gap = if !arena.is_inside(pos) {
                depth
            } else {
                depth.saturating_sub(n)
            };
            if gap == 0 {
                seen.insert(pos);
            } else if gap > ESCAPE_DISTANCE {
                break;
            }
        }
    }

    // Walk every target y ∈ Lₙ(ρ) as a base-d counter over child slots.
    let nu = n as usize;
    s.reach.resize(nu, 0);
    s.path.resize(nu + 1, None);
    let mut digits = vec![0usize; nu];
    let mut children = 0;
    loop {
        s.path[0] = Some(TreeArena::ROOT);
        for (k, &digit) in digits.iter().enumerate() {
            s.path[k + 1] = s.path[k].and_then(|v| arena.existing_neighbor(v, digit + 1));
        }
        for j in 0..nu {
            let frog = s.path[j].expect("origins exist") as usize;
            let seen = &s.visited[frog];
            s.reach[j] = (1..=nu - j)
                .rev()
                .find(|&m| s.path[j + m].is_some_and(|v| seen.contains(&v)))
                .unwrap_or(0);
        }
        children += u64::from(descends(&s.reach));

        // next target
        let mut k = nu;
        loop {
            if k == 0 {
                return children;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < d as usize {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn check_counts(n: u32, trials: u64) -> Result<()> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and trials >= 1, got n = {n}, trials = {trials}"
        )));
    }
    Ok(())
}
