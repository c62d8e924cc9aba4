//! Elementary closed forms: the edge law base `β⁽ᵈ⁾`, its inverse, `ψ`, `λ`
//! and the two earlier upper bounds for the critical probability.
//!
//! Domain checks live in the constructors of [`Degree`], [`Probability`] and
//! [`BranchRatio`]; the functions here assume their arguments are valid.

use std::fmt;

use crate::error::{Error, Result};

/// Branching number `d` of the homogeneous tree `T_d`; vertices have degree `d + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(u32);

impl Degree {
    pub const MIN: Degree = Degree(2);

    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDegree(d));
        }
        Ok(Degree(d))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }

    /// Upper end `1/d` of the branch-ratio domain.
    #[inline]
    pub fn max_ratio(self) -> f64 {
        1.0 / self.as_f64()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Survival parameter `p ∈ [0, 1]`: the chance an awake frog survives a step.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(Probability(p))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// Clamps a computed value into `[0, 1]`. Only for values known to be
    /// probabilities up to rounding.
    pub(crate) fn saturating(p: f64) -> Self {
        Probability(p.clamp(0.0, 1.0))
    }
}

/// A value `b ∈ [0, 1/d]` in the range of `β⁽ᵈ⁾`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchRatio {
    b: f64,
    d: Degree,
}

impl BranchRatio {
    pub fn new(d: Degree, b: f64) -> Result<Self> {
        if !(0.0..=d.max_ratio()).contains(&b) {
            return Err(Error::InvalidBranchRatio { b, d: d.get() });
        }
        Ok(BranchRatio { b, d })
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.b
    }

    #[inline]
    pub fn degree(self) -> Degree {
        self.d
    }
}

/// Probability that an awake frog ever visits a fixed neighbour of its
/// starting vertex.
///
/// Evaluated as `2p / ((d+1) + sqrt((d+1)² − 4dp²))`, which equals
/// `((d+1) − sqrt((d+1)² − 4dp²)) / (2dp)` for `p > 0` but avoids the
/// cancellation of the latter near `p = 0`.
pub fn beta(d: Degree, p: Probability) -> BranchRatio {
    let df = d.as_f64();
    let p = p.get();
    let disc = (df + 1.0) * (df + 1.0) - 4.0 * df * p * p;
    let b = 2.0 * p / ((df + 1.0) + disc.sqrt());
    BranchRatio {
        b: b.min(d.max_ratio()),
        d,
    }
}

/// `(d+1)v / (1 + dv²)`, the unique `p` with `β⁽ᵈ⁾(p) = v`.
pub fn beta_inverse(v: BranchRatio) -> Probability {
    let df = v.d.as_f64();
    let v = v.b;
    Probability::saturating((df + 1.0) * v / (1.0 + df * v * v))
}

#[inline]
pub(crate) fn psi_raw(b: f64) -> f64 {
    let b2 = b * b;
    (b2 * b2 - 4.0 * b + 4.0).sqrt()
}

#[inline]
pub(crate) fn lambda_raw(b: f64) -> f64 {
    0.5 * b * (2.0 - b * b + psi_raw(b))
}

/// `ψ(b) = sqrt(b⁴ − 4b + 4)`; strictly positive for `b ≤ 1/2`.
pub fn psi(b: BranchRatio) -> f64 {
    psi_raw(b.b)
}

/// Growth rate `λ(b) = (b/2)(2 − b² + ψ(b))`, the limit of `φₙ(b)^{1/n}`.
pub fn lambda_growth(b: BranchRatio) -> f64 {
    lambda_raw(b.b)
}

/// The published bound for `d = 2` from the renewal-theory argument.
pub const FMRT_BOUND_D2: f64 = 0.720836;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicBounds {
    /// `(d+1)/(2d)`.
    pub original: Probability,
    /// `p̂(d)`.
    pub fmrt: Probability,
}

/// The two upper bounds that predate `p̄(d)`.
pub fn classic_bounds(d: Degree) -> ClassicBounds {
    let df = d.as_f64();
    let original = Probability::saturating((df + 1.0) / (2.0 * df));
    let fmrt = if d.get() == 2 {
        FMRT_BOUND_D2
    } else {
        // With a = 7d - 1 and s = sqrt(a² - 14), a - s = 14/(a + s); substituting
        // this into numerator and denominator removes both cancellations.
        let a = 7.0 * df - 1.0;
        let gap = 14.0 / (a + (a * a - 14.0).sqrt());
        (df + 1.0) * gap / (df * a * gap - 7.0 * df + 2.0)
    };
    ClassicBounds {
        original,
        fmrt: Probability::saturating(fmrt),
    }
}
