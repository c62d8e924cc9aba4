//! The child-probability sequence `φₙ(b)`.
//!
//! `φₙ(b)` is the probability that a fixed vertex `n` levels below `x` becomes
//! a child of `x` in the embedded branching process, when each open edge of
//! length `ℓ` has probability `bℓ`. Three equivalent evaluations are provided:
//! the inductive sum ([`phi_direct`]), the second-order linear recurrence
//! ([`phi_recurrence`]) and the closed formula in the characteristic roots
//! ([`phi_closed`]). The first two are oracles for each other and for the third.

use crate::analytic::{beta, lambda_raw, psi_raw, BranchRatio, Degree, Probability};
use crate::error::{Error, Result};

/// Largest index accepted by [`phi_direct`], which costs `O(n²)`.
pub const DIRECT_MAX_N: usize = 2000;

/// Above this index `f_n` goes through [`log_phi_scaled`].
const LOG_PATH_MIN_N: usize = 51;

/// Rescale the recurrence state once it drops below this magnitude.
const RESCALE_BELOW: f64 = 1e-150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiForm {
    Direct,
    Recurrence,
    Closed,
}

impl PhiForm {
    pub const ALL: [PhiForm; 3] = [PhiForm::Direct, PhiForm::Recurrence, PhiForm::Closed];

    pub fn eval(self, n: usize, b: BranchRatio) -> Result<f64> {
        match self {
            PhiForm::Direct => phi_direct(n, b),
            PhiForm::Recurrence => Ok(phi_recurrence(n, b)),
            PhiForm::Closed => Ok(phi_closed(n, b)),
        }
    }
}

/// `φₙ(b)` from its defining sum:
///
/// ```text
/// φ₁ = b,  φ₂ = b²(2 − b),
/// φₙ = bⁿ + b(1−b)φₙ₋₁ + Σ_{ℓ=2}^{n−1} bˡ(1−b)[φₙ₋ₗ₊₁ + (1−b)φₙ₋ₗ],  n ≥ 3.
/// ```
pub fn phi_direct(n: usize, b: BranchRatio) -> Result<f64> {
    if n == 0 || n > DIRECT_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "phi_direct needs 1 <= n <= {DIRECT_MAX_N}, got {n}"
        )));
    }
    let b = b.get();
    let q = 1.0 - b;

    // pow[ℓ] = bˡ
    let mut pow = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    for _ in 0..=n {
        pow.push(acc);
        acc *= b;
    }

    // table[k] = φₖ; index 0 unused
    let mut table = vec![0.0; n + 1];
    table[1] = b;
    if n >= 2 {
        table[2] = b * b * (2.0 - b);
    }
    for k in 3..=n {
        let mut sum = pow[k] + b * q * table[k - 1];
        for l in 2..k {
            sum += pow[l] * q * (table[k - l + 1] + q * table[k - l]);
        }
        table[k] = sum;
    }
    Ok(table[n])
}

/// `φₙ(b)` by iterating `φₙ = b(2 − b²)φₙ₋₁ − b³(1 − b)φₙ₋₂` from `φ₀ = 1`, `φ₁ = b`.
pub fn phi_recurrence(n: usize, b: BranchRatio) -> f64 {
    let b = b.get();
    let (lin, quad) = recurrence_coefficients(b);
    let (mut prev, mut cur) = (1.0, b);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = lin * cur - quad * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[inline]
fn recurrence_coefficients(b: f64) -> (f64, f64) {
    (b * (2.0 - b * b), b * b * b * (1.0 - b))
}

/// `φₙ(b) = bⁿ/(2ⁿ⁺¹ψ) · [(ψ − b²)(2 − b² − ψ)ⁿ + (ψ + b²)(2 − b² + ψ)ⁿ]`.
///
/// Grouped as `c₁λ₋ⁿ + c₂λ₊ⁿ` so that the powers cannot overflow for large `n`.
pub fn phi_closed(n: usize, b: BranchRatio) -> f64 {
    let b = b.get();
    let psi = psi_raw(b);
    let b2 = b * b;
    let minus = 0.5 * b * (2.0 - b2 - psi);
    let plus = 0.5 * b * (2.0 - b2 + psi);
    let exp = n as i32;
    ((psi - b2) * minus.powi(exp) + (psi + b2) * plus.powi(exp)) / (2.0 * psi)
}

/// Roots of `λ² − b(2 − b²)λ + b³(1 − b) = 0` with the coefficients that
/// match `φ₀ = 1`, `φ₁ = b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRoots {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    /// Discriminant `b²(4 − 4b + b⁴)`.
    pub delta0: f64,
    pub c1: f64,
    pub c2: f64,
}

pub fn char_roots(b: BranchRatio) -> Result<CharRoots> {
    let b = b.get();
    if b == 0.0 {
        return Err(Error::InvalidArgument(
            "characteristic roots coincide at b = 0".into(),
        ));
    }
    let psi = psi_raw(b);
    let b2 = b * b;
    Ok(CharRoots {
        lambda_minus: 0.5 * b * (2.0 - b2 - psi),
        lambda_plus: lambda_raw(b),
        delta0: b2 * (4.0 - 4.0 * b + b2 * b2),
        c1: (psi - b2) / (2.0 * psi),
        c2: (psi + b2) / (2.0 * psi),
    })
}

/// `(1/n)·ln φₙ(b)` without underflow, for `n` far beyond the range where
/// `φₙ` itself is representable.
pub fn log_phi_scaled(n: usize, b: BranchRatio) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("log_phi_scaled needs n >= 1".into()));
    }
    let b = b.get();
    if b == 0.0 {
        return Err(Error::InvalidArgument("ln φₙ(0) is undefined".into()));
    }
    Ok(log_phi_scaled_raw(n, b))
}

fn log_phi_scaled_raw(n: usize, b: f64) -> f64 {
    let (lin, quad) = recurrence_coefficients(b);
    let (mut prev, mut cur) = (1.0_f64, b);
    let mut log_scale = 0.0;
    for _ in 1..n {
        let next = lin * cur - quad * prev;
        prev = cur;
        cur = next;
        if cur < RESCALE_BELOW {
            log_scale += cur.ln();
            prev /= cur;
            cur = 1.0;
        }
    }
    (log_scale + cur.ln()) / n as f64
}

/// `fₙ⁽ᵈ⁾(p) = φₙ(β⁽ᵈ⁾(p))^{1/n} − 1/d`.
pub fn f_n(d: Degree, n: usize, p: Probability) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("f_n needs n >= 1".into()));
    }
    Ok(f_n_unchecked(d, n, p))
}

/// [`f_n`] for a caller that has already checked `n >= 1`.
pub(crate) fn f_n_unchecked(d: Degree, n: usize, p: Probability) -> f64 {
    debug_assert!(n >= 1);
    let b = beta(d, p);
    let root = if b.get() == 0.0 {
        0.0
    } else if n < LOG_PATH_MIN_N {
        phi_recurrence(n, b).powf(1.0 / n as f64)
    } else {
        log_phi_scaled_raw(n, b.get()).exp()
    };
    root - d.max_ratio()
}

/// `f⁽ᵈ⁾(p) = λ(β⁽ᵈ⁾(p)) − 1/d`, the pointwise limit of `fₙ⁽ᵈ⁾`.
pub fn f_limit(d: Degree, p: Probability) -> f64 {
    lambda_raw(beta(d, p).get()) - d.max_ratio()
}
