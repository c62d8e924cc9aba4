//! The bound sequence `p̄ₙ(d)` and the per-degree comparison of all bounds.

use rayon::prelude::*;

use crate::analytic::{beta, classic_bounds, BranchRatio, Degree, Probability};
use crate::error::{Error, Result};
use crate::phi::f_n_unchecked;
use crate::quartic::{bisect, pbar_closed, poly_q, poly_r};

/// Bisection tolerance for `p̄ₙ(d)` in tables.
pub const DEFAULT_TOL: f64 = 1e-12;

pub const DEFAULT_N_SAMPLES: [usize; 6] = [1, 2, 5, 10, 50, 200];

/// Root of `fₙ⁽ᵈ⁾` in `[0, 1]`: the smallest `p` at which the `n`-step
/// embedded branching process has mean offspring at least one.
pub fn pbar_n(d: Degree, n: usize, tol: f64) -> Result<Probability> {
    if n == 0 {
        return Err(Error::InvalidArgument("pbar_n needs n >= 1".into()));
    }
    let f = |p: f64| f_n_unchecked(d, n, Probability::saturating(p));
    let (f_lo, f_hi) = (f(0.0), f(1.0));
    if !(f_lo < 0.0 && f_hi >= 0.0) {
        return Err(Error::BracketFailure {
            lo: 0.0,
            hi: 1.0,
            f_lo,
            f_hi,
        });
    }
    let root = bisect(f, 0.0, 1.0, tol)?;
    Ok(Probability::saturating(root))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub d: Degree,
    pub ub_original: Probability,
    pub ub_fmrt: Probability,
    pub pbar: Probability,
    pub vbar: BranchRatio,
    pub pbar_n_samples: Vec<(usize, Probability)>,
    /// `|Q⁽ᵈ⁾(p̄)|`
    pub residual_q: f64,
    /// `|R⁽ᵈ⁾(v̄)|`
    pub residual_r: f64,
}

impl BoundsRow {
    /// `p̄ < p̂ < (d+1)/(2d)`.
    pub fn chain_holds(&self) -> bool {
        self.pbar.get() < self.ub_fmrt.get() && self.ub_fmrt.get() < self.ub_original.get()
    }
}

pub fn bounds_row(d: Degree, n_samples: &[usize]) -> Result<BoundsRow> {
    let classic = classic_bounds(d);
    let pbar = pbar_closed(d)?;
    let vbar = beta(d, pbar);
    let pbar_n_samples = n_samples
        .iter()
        .map(|&n| pbar_n(d, n, DEFAULT_TOL).map(|p| (n, p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsRow {
        d,
        ub_original: classic.original,
        ub_fmrt: classic.fmrt,
        pbar,
        vbar,
        pbar_n_samples,
        residual_q: poly_q(d).eval(pbar.get()).abs(),
        residual_r: poly_r(d).eval(vbar.get()).abs(),
    })
}

/// One row per degree in `d_min..=d_max`, ordered by degree. Rows are computed
/// in parallel; each is a pure function of its degree.
pub fn bounds_table(d_min: Degree, d_max: Degree, n_samples: &[usize]) -> Result<Vec<BoundsRow>> {
    if d_min > d_max {
        return Err(Error::InvalidArgument(format!(
            "empty degree range {d_min}..={d_max}"
        )));
    }
    (d_min.get()..=d_max.get())
        .into_par_iter()
        .map(|d| bounds_row(Degree::new(d)?, n_samples))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(d: u32) -> Degree {
        Degree::new(d).unwrap()
    }

    #[test]
    fn pbar_1_is_one() {
        for d in [2, 3, 5, 10, 77] {
            assert!((pbar_n(deg(d), 1, 1e-12).unwrap().get() - 1.0).abs() <= 1e-12);
        }
        assert!(pbar_n(deg(2), 0, 1e-12).is_err());
    }

    #[test]
    fn pbar_2_at_d2() {
        // mpmath: solve b²(2 − b) = 1/4, then p = 3b/(1 + 2b²)
        let p = pbar_n(deg(2), 2, 1e-12).unwrap().get();
        assert!((p - 0.902_713_290_094_181_9).abs() < 1e-11);
    }

    #[test]
    fn pbar_n_converges() {
        // |p̄ₙ − p̄| from 40-digit bisection: 0.0394, 0.00789, 0.00197 at d = 2
        for d in [2, 3, 5, 10] {
            let d = deg(d);
            let limit = pbar_closed(d).unwrap().get();
            let gaps: Vec<f64> = [10, 50, 200]
                .iter()
                .map(|&n| (pbar_n(d, n, 1e-12).unwrap().get() - limit).abs())
                .collect();
            assert!(gaps[0] >= gaps[1] && gaps[1] >= gaps[2], "{gaps:?}");
            assert!(gaps[2] <= 1e-2);
        }
        let p = pbar_n(deg(2), 200, 1e-12).unwrap().get();
        assert!((p - 0.719_814_430_312_129).abs() < 1e-10);
        let p = pbar_n(deg(10), 50, 1e-12).unwrap().get();
        assert!((p - 0.550_844_007_572_531).abs() < 1e-10);
    }

    #[test]
    fn row_examples() {
        let row = bounds_row(deg(2), &[1, 2]).unwrap();
        assert_eq!(row.ub_original.get(), 0.75);
        assert_eq!(row.ub_fmrt.get(), 0.720836);
        assert_eq!(row.pbar_n_samples.len(), 2);
        assert_eq!(row.pbar_n_samples[0].0, 1);
        assert!((row.pbar_n_samples[0].1.get() - 1.0).abs() < 1e-12);
        assert!((row.pbar_n_samples[1].1.get() - 0.902_713_290_094).abs() < 1e-11);
        assert!(row.chain_holds());
        assert!(row.residual_q <= 1e-9 && row.residual_r <= 1e-9);
    }

    #[test]
    fn table_shapes() {
        assert_eq!(bounds_table(deg(2), deg(2), &[]).unwrap().len(), 1);
        assert!(bounds_table(deg(5), deg(4), &[]).is_err());
        let straddle = bounds_table(deg(9), deg(10), &[]).unwrap();
        assert_eq!(straddle[0].d.get(), 9);
        assert_eq!(straddle[1].d.get(), 10);
        assert!(straddle.iter().all(|r| r.residual_q <= 1e-9));
    }

    #[test]
    fn full_table_invariants() {
        let rows = bounds_table(deg(2), deg(200), &[]).unwrap();
        assert_eq!(rows.len(), 199);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.d.get() as usize, i + 2);
            assert!(row.chain_holds(), "d = {}", row.d);
            assert!(row.vbar.get() <= row.d.max_ratio());
            assert!(row.residual_q <= 1e-9 && row.residual_r <= 1e-9);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let ns = [1, 5, 60];
        let par = bounds_table(deg(2), deg(30), &ns).unwrap();
        let seq: Vec<_> = (2..=30).map(|d| bounds_row(deg(d), &ns).unwrap()).collect();
        assert_eq!(par, seq);
    }
}
