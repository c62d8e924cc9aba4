//! The quartic families `R⁽ᵈ⁾(v)` and `Q⁽ᵈ⁾(p)`, the closed-form root of
//! `Q⁽ᵈ⁾` in `(0, 1)` via Descartes' method, and a bracketed root isolator.
//!
//! Shifting `p = z + (d+1)/(3d+1)` removes the cubic term of `Q⁽ᵈ⁾` and leaves
//! `z⁴ + Qz² + Rz + S`. With `K² = W` a nonzero root of the auxiliary cubic
//!
//! ```text
//! x³ + (Q/2)x² + ((Q² − 4S)/16)x − R²/64 = 0
//! ```
//!
//! the reduced quartic splits into two quadratics in `z`. The real root of the
//! cubic is taken by Cardano's formula while the cubic has one real root
//! (`2 ≤ d ≤ 9`) and by the trigonometric form in the irreducible case
//! (`d ≥ 10`).

use crate::analytic::{Degree, Probability};
use crate::error::{Error, Result};

/// Radicands and discriminants in `(−GUARD, 0)` are rounding noise.
const GUARD: f64 = 1e-12;

/// Largest degree whose auxiliary cubic has a single real root.
pub const LAST_CARDANO_DEGREE: u32 = 9;

/// A real polynomial of degree at most four, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::InvalidArgument(
                "polynomial needs a coefficient".into(),
            )),
            Some(_) if coeffs.len() > 5 => Err(Error::InvalidArgument(format!(
                "degree {} exceeds 4",
                coeffs.len() - 1
            ))),
            Some(&lead) if lead == 0.0 && coeffs.len() > 1 => {
                Err(Error::InvalidArgument("leading coefficient is zero".into()))
            }
            Some(_) => Ok(Polynomial { coeffs }),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// `R⁽ᵈ⁾(v) = d²v⁴ − d(d+1)v³ + 2dv − 1`.
pub fn poly_r(d: Degree) -> Polynomial {
    let d = d.as_f64();
    Polynomial {
        coeffs: vec![-1.0, 2.0 * d, 0.0, -d * (d + 1.0), d * d],
    }
}

/// `Q⁽ᵈ⁾(p)`, the monic quartic obtained from `R⁽ᵈ⁾(β⁽ᵈ⁾(p)) = 0`.
pub fn poly_q(d: Degree) -> Polynomial {
    let d = d.as_f64();
    let up = d + 1.0;
    let c = 3.0 * d + 1.0;
    Polynomial {
        coeffs: vec![
            -up.powi(4) / (d * c * c),
            up.powi(3) / (d * c),
            -2.0 * (d - 1.0) * up * up / (c * c),
            -4.0 * up / c,
            1.0,
        ],
    }
}

/// `(d+1)/(3d+1)`, the Tschirnhaus shift between `p` and `z`.
pub fn tschirnhaus_shift(d: Degree) -> f64 {
    let d = d.as_f64();
    (d + 1.0) / (3.0 * d + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicBranch {
    /// One real root; `2 ≤ d ≤ 9`.
    Cardano,
    /// Three real roots; `d ≥ 10`.
    Trigonometric,
}

impl CubicBranch {
    pub fn for_degree(d: Degree) -> Self {
        if d.get() <= LAST_CARDANO_DEGREE {
            CubicBranch::Cardano
        } else {
            CubicBranch::Trigonometric
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticConstants {
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub o: f64,
    pub p: f64,
    /// Radians, in `[0, π/3]`.
    pub theta: f64,
    /// Positive square root of the selected root of the auxiliary cubic.
    pub k: f64,
    pub branch: CubicBranch,
}

impl QuarticConstants {
    /// Auxiliary cubic evaluated at `x`.
    pub fn auxiliary_cubic(&self, x: f64) -> f64 {
        let (q, r, s) = (self.q, self.r, self.s);
        ((x + 0.5 * q) * x + (q * q - 4.0 * s) / 16.0) * x - r * r / 64.0
    }

    /// `|cubic(K²)|` divided by the sum of the magnitudes of its four terms.
    pub fn cubic_residual(&self) -> f64 {
        let (q, r, s) = (self.q, self.r, self.s);
        let w = self.k * self.k;
        let scale = (w * w * w).abs()
            + (0.5 * q * w * w).abs()
            + ((q * q - 4.0 * s) / 16.0 * w).abs()
            + (r * r / 64.0).abs();
        self.auxiliary_cubic(w).abs() / scale
    }

    /// The depressed quartic `z⁴ + Qz² + Rz + S`.
    pub fn reduced_quartic(&self, z: f64) -> f64 {
        let z2 = z * z;
        z2 * z2 + self.q * z2 + self.r * z + self.s
    }
}

pub fn descartes_constants(d: Degree) -> Result<QuarticConstants> {
    let branch = CubicBranch::for_degree(d);
    let d = d.as_f64();
    let up = d + 1.0;
    let down = d - 1.0;
    let c = 3.0 * d + 1.0;
    let c2 = c * c;
    let c4 = c2 * c2;

    let q = -2.0 * up * up * (d + 2.0) / c2;
    let r = up.powi(3) * (5.0 * d * d + 2.0 * d + 1.0) / (d * c2 * c);
    let s = -up.powi(4) * (2.0 * d + 1.0) / c4;
    let o = -down * down * up.powi(6) * (((16.0 * d - 259.0) * d - 162.0) * d - 27.0)
        / (3456.0 * d * d * c4 * c2);
    let p = -down * down * up.powi(4) / (36.0 * c4);

    let neg_p_cubed = -(p * p * p);
    let theta = (o / neg_p_cubed.sqrt()).clamp(-1.0, 1.0).acos() / 3.0;

    let inner = match branch {
        CubicBranch::Cardano => {
            let mut disc = o * o + p * p * p;
            if disc < 0.0 {
                if disc > -GUARD {
                    disc = 0.0;
                } else {
                    return Err(Error::NumericGuard(format!(
                        "Cardano discriminant {disc:e} is negative at d = {d}"
                    )));
                }
            }
            let root = disc.sqrt();
            // f64::cbrt is the real, sign-preserving cube root
            -q + 6.0 * ((o + root).cbrt() + (o - root).cbrt())
        }
        CubicBranch::Trigonometric => -q + 12.0 * (-p).sqrt() * theta.cos(),
    };
    if inner <= 0.0 {
        return Err(Error::NumericGuard(format!(
            "K² = {inner:e}/6 is not positive at d = {d}"
        )));
    }
    let k = (inner / 6.0).sqrt();

    Ok(QuarticConstants {
        q,
        r,
        s,
        o,
        p,
        theta,
        k,
        branch,
    })
}

fn guarded_radicand(x: f64, what: &str) -> Result<f64> {
    if x < -GUARD {
        return Err(Error::NumericGuard(format!(
            "{what} radicand {x:e} is negative"
        )));
    }
    Ok(x.max(0.0))
}

/// `p̄(d) = (d+1)/(3d+1) − K + sqrt(K(−4K³ − 2KQ + R)) / (2K)`.
pub fn pbar_closed(d: Degree) -> Result<Probability> {
    let c = descartes_constants(d)?;
    let k = c.k;
    let rad = guarded_radicand(k * (-4.0 * k * k * k - 2.0 * k * c.q + c.r), "p̄")?;
    let value = tschirnhaus_shift(d) - k + rad.sqrt() / (2.0 * k);
    Probability::new(value).map_err(|_| {
        Error::NumericGuard(format!("closed-form p̄({d}) = {value} is not a probability"))
    })
}

/// `H₀(d) = (d−1)⁴(d+1)¹²(32d³ − 275d² − 162d − 27)`; its sign is that of the
/// auxiliary cubic's discriminant.
pub fn discriminant_h0(d: Degree) -> f64 {
    let df = d.as_f64();
    (df - 1.0).powi(4) * (df + 1.0).powi(12) * h0_cubic_factor(d) as f64
}

/// The only factor of `H₀(d)` that can change sign, in exact integer arithmetic.
pub fn h0_cubic_factor(d: Degree) -> i64 {
    let d = i64::from(d.get());
    ((32 * d - 275) * d - 162) * d - 27
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedRoot {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl ReducedRoot {
    pub fn real(self) -> Option<f64> {
        match self {
            ReducedRoot::Real(x) => Some(x),
            ReducedRoot::Complex { .. } => None,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, ReducedRoot::Real(_))
    }
}

fn root_pair(centre: f64, radicand: f64, k: f64) -> [ReducedRoot; 2] {
    if radicand >= -GUARD {
        let half = radicand.max(0.0).sqrt() / (2.0 * k);
        [
            ReducedRoot::Real(centre - half),
            ReducedRoot::Real(centre + half),
        ]
    } else {
        let im = (-radicand).sqrt() / (2.0 * k);
        [
            ReducedRoot::Complex {
                re: centre,
                im: -im,
            },
            ReducedRoot::Complex { re: centre, im },
        ]
    }
}

/// The four roots `z₁..z₄` of the depressed quartic, as the roots of
/// `g₁(z) = z² + 2Kz + Q/2 + 2K² − R/(4K)` and
/// `g₂(z) = z² − 2Kz + Q/2 + 2K² + R/(4K)`.
pub fn quartic_roots_reduced(d: Degree) -> Result<[ReducedRoot; 4]> {
    let c = descartes_constants(d)?;
    let k = c.k;
    let k3 = k * k * k;
    let first = k * (-4.0 * k3 - 2.0 * k * c.q + c.r);
    let second = -k * (4.0 * k3 + 2.0 * k * c.q + c.r);
    guarded_radicand(first, "g₁")?;
    let [z1, z2] = root_pair(-k, first, k);
    let [z3, z4] = root_pair(k, second, k);
    Ok([z1, z2, z3, z4])
}

/// Bisection on a bracketing interval of a continuous function.
///
/// Returns the midpoint of the final bracket once it is at most `tol` wide, so
/// the returned point is within `tol` of a sign change. Fails when `f(lo)` and
/// `f(hi)` share a strict sign.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bisection needs lo < hi and tol > 0, got [{lo}, {hi}] with tol {tol}"
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }
    let lo_negative = f_lo < 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// [`bisect`] specialised to a [`Polynomial`].
pub fn isolate_root(poly: &Polynomial, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    bisect(|x| poly.eval(x), lo, hi, tol)
}
