//! Monte Carlo frog model on `T_d`.
//!
//! Each awake frog, at every step, first dies with probability `1 − p` and
//! otherwise jumps to a uniformly chosen neighbour. A sleeping frog woken at
//! step `t` takes its first step at `t + 1`. Survival to the horizon, or
//! reaching the awake-count cap, counts as survival.
//!
//! Trial `i` draws from ChaCha8 stream `i` of the configured seed, so every
//! estimate is a function of `(config, seed)` alone, independent of how rayon
//! schedules the trials.

mod arena;
mod estimators;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use arena::{FrogState, IntegrityError, TreeArena, VertexId};
pub use estimators::{
    descends, estimate_child_probability, estimate_hit_probability, sample_reaches,
    simulate_branching_offspring, MeanEstimate, ESCAPE_DISTANCE, MAX_OFFSPRING_TARGETS,
};

use crate::analytic::{Degree, Probability};
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_f00d_2718_2818;
pub const DEFAULT_HORIZON: u32 = 200;
pub const DEFAULT_AWAKE_CAP: usize = 1_000_000;

/// z-value for a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub d: Degree,
    pub p: Probability,
    pub horizon: u32,
    pub awake_cap: usize,
    pub trials: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(
        d: Degree,
        p: Probability,
        horizon: u32,
        awake_cap: usize,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        if horizon == 0 || awake_cap == 0 || trials == 0 {
            return Err(Error::InvalidArgument(format!(
                "horizon ({horizon}), awake_cap ({awake_cap}) and trials ({trials}) must be positive"
            )));
        }
        Ok(SimConfig {
            d,
            p,
            horizon,
            awake_cap,
            trials,
            seed,
        })
    }

    /// Default horizon, cap and seed.
    pub fn with_defaults(d: Degree, p: Probability, trials: u64) -> Result<Self> {
        Self::new(
            d,
            p,
            DEFAULT_HORIZON,
            DEFAULT_AWAKE_CAP,
            trials,
            DEFAULT_SEED,
        )
    }
}

/// A Bernoulli frequency with its normal-approximation 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalEstimate {
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    pub ci95_halfwidth: f64,
}

impl SurvivalEstimate {
    pub fn from_counts(trials: u64, successes: u64) -> Self {
        assert!(trials > 0 && successes <= trials);
        let point = successes as f64 / trials as f64;
        SurvivalEstimate {
            trials,
            successes,
            point,
            ci95_halfwidth: Z95 * (point * (1.0 - point) / trials as f64).sqrt(),
        }
    }

    /// Whether `target` lies within `k` half-widths of the point estimate.
    pub fn covers(&self, target: f64, k: f64) -> bool {
        (self.point - target).abs() <= k * self.ci95_halfwidth
    }
}

pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Sum of per-trial counts. Integer addition keeps the result independent of
/// how rayon splits the range.
pub(crate) fn par_trials<S, I, F>(trials: u64, init: I, run: F) -> (u64, u64)
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64) -> u64 + Sync + Send,
{
    (0..trials)
        .into_par_iter()
        .map_init(init, |state, t| {
            let c = run(state, t);
            (c, c * c)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicaOutcome {
    pub survived: bool,
    /// Steps executed before the replica stopped.
    pub steps: u32,
    pub peak_awake: usize,
}

/// Scratch buffers reused across replicas on one worker.
#[derive(Debug, Default)]
pub struct ReplicaScratch {
    awake: Vec<VertexId>,
    next: Vec<VertexId>,
    woken: Vec<VertexId>,
}

/// Runs trial `trial` of `config` in `arena`, which is cleared first and left
/// holding the final state.
pub fn run_replica(
    config: &SimConfig,
    trial: u64,
    arena: &mut TreeArena,
    scratch: &mut ReplicaScratch,
) -> ReplicaOutcome {
    let mut rng = trial_rng(config.seed, trial);
    let p = config.p.get();
    let arity = config.d.get() as usize + 1;

    arena.clear();
    arena.set_frog(TreeArena::ROOT, FrogState::Awake(TreeArena::ROOT));
    let ReplicaScratch { awake, next, woken } = scratch;
    awake.clear();
    awake.push(TreeArena::ROOT);
    let mut peak = 1;

    for step in 1..=config.horizon {
        if awake.len() >= config.awake_cap {
            return ReplicaOutcome {
                survived: true,
                steps: step - 1,
                peak_awake: peak,
            };
        }
        next.clear();
        woken.clear();
        for &frog in awake.iter() {
            if rng.random::<f64>() >= p {
                arena.set_frog(frog, FrogState::Dead);
                continue;
            }
            let FrogState::Awake(pos) = arena.frog(frog) else {
                unreachable!("awake list holds a non-awake frog");
            };
            let to = arena.neighbor(pos, rng.random_range(0..arity));
            arena.set_frog(frog, FrogState::Awake(to));
            next.push(frog);
            if arena.frog(to) == FrogState::Sleeping {
                arena.set_frog(to, FrogState::Awake(to));
                woken.push(to);
            }
        }
        next.extend_from_slice(woken);
        std::mem::swap(awake, next);
        peak = peak.max(awake.len());
        if awake.is_empty() {
            return ReplicaOutcome {
                survived: false,
                steps: step,
                peak_awake: peak,
            };
        }
    }
    ReplicaOutcome {
        survived: true,
        steps: config.horizon,
        peak_awake: peak,
    }
}

/// Fraction of `config.trials` replicas that are still alive at the horizon.
pub fn simulate_frog_model(config: &SimConfig) -> SurvivalEstimate {
    let d = config.d.get();
    let (successes, _) = par_trials(
        config.trials,
        || (TreeArena::new(d), ReplicaScratch::default()),
        |(arena, scratch), t| u64::from(run_replica(config, t, arena, scratch).survived),
    );
    SurvivalEstimate::from_counts(config.trials, successes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(p: f64, trials: u64) -> SimConfig {
        SimConfig::new(
            Degree::MIN,
            Probability::new(p).unwrap(),
            50,
            2_000,
            trials,
            7,
        )
        .unwrap()
    }

    #[test]
    fn config_validation() {
        let d = Degree::MIN;
        let p = Probability::ONE;
        assert!(SimConfig::new(d, p, 0, 1, 1, 0).is_err());
        assert!(SimConfig::new(d, p, 1, 0, 1, 0).is_err());
        assert!(SimConfig::new(d, p, 1, 1, 0, 0).is_err());
        assert!(SimConfig::new(d, p, 1, 1, 1, 0).is_ok());
    }

    #[test]
    fn estimate_arithmetic() {
        let e = SurvivalEstimate::from_counts(100, 25);
        assert_eq!(e.point, 0.25);
        assert!((e.ci95_halfwidth - 1.96 * (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
        assert!(e.covers(0.3, 2.0));
        assert!(!e.covers(0.4, 1.0));
        assert_eq!(SurvivalEstimate::from_counts(10, 0).ci95_halfwidth, 0.0);
    }

    #[test]
    fn endpoints_are_exact() {
        assert_eq!(simulate_frog_model(&config(0.0, 500)).point, 0.0);
        assert_eq!(simulate_frog_model(&config(1.0, 200)).point, 1.0);
    }

    #[test]
    fn zero_survival_dies_at_first_step() {
        let mut arena = TreeArena::new(2);
        let mut scratch = ReplicaScratch::default();
        let out = run_replica(&config(0.0, 1), 0, &mut arena, &mut scratch);
        assert_eq!(
            out,
            ReplicaOutcome {
                survived: false,
                steps: 1,
                peak_awake: 1
            }
        );
        assert_eq!(arena.len(), 1);
        assert_eq!(arena.frog(TreeArena::ROOT), FrogState::Dead);
    }

    #[test]
    fn replicas_leave_consistent_trees() {
        let mut arena = TreeArena::new(2);
        let mut scratch = ReplicaScratch::default();
        for (p, trial) in [(0.6, 0), (0.8, 1), (0.95, 2), (1.0, 3)] {
            let cfg = config(p, 1);
            let out = run_replica(&cfg, trial, &mut arena, &mut scratch);
            arena.check_integrity().unwrap();
            let awake = (0..arena.len() as VertexId)
                .filter(|&v| matches!(arena.frog(v), FrogState::Awake(_)))
                .count();
            if out.survived && out.steps == cfg.horizon {
                assert!(awake > 0);
            }
            // every created vertex has been visited, so its frog is no longer asleep
            assert!((0..arena.len() as VertexId).all(|v| arena.frog(v) != FrogState::Sleeping));
        }
    }

    #[test]
    fn cap_counts_as_survival() {
        let cfg = SimConfig::new(Degree::MIN, Probability::ONE, 1000, 5, 1, 3).unwrap();
        let mut arena = TreeArena::new(2);
        let out = run_replica(&cfg, 0, &mut arena, &mut ReplicaScratch::default());
        assert!(out.survived);
        assert!(out.steps < 1000);
        assert!(out.peak_awake >= 5);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cfg = config(0.8, 400);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate_frog_model(&cfg))
        };
        let a = run(1);
        assert_eq!(a, run(3));
        assert_eq!(a, run(4));
    }
}
