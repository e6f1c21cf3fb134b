//! The physical model: a d-dimensional oscillator with an inverse-square
//! core and a rational bump,
//!
//!   V(r) = B²/r² + ω²r² + 2g(r² − a²)/(r² + a²)²,
//!
//! reduced to the radial problem −ψ″ + U(r)ψ = Eψ with the effective
//! centrifugal index k absorbing both B² and the angular barrier.
//! The gate deciding exact solvability (g = 2 and ωa² = k + ½) lives here.

use thiserror::Error;

use crate::scalar::{r64, rint, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("B² must be non-negative, got {0}")]
    NegativeB2(String),
    #[error("omega must be positive, got {0}")]
    NonPositiveOmega(String),
    #[error("a must be positive, got {0}")]
    NonPositiveA(String),
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("radial coordinate must be positive, got {0}")]
    NonPositiveRadius(String),
}

/// Parameters of the full potential plus the angular sector (d, ℓ).
///
/// Both `a` and `a2 = a²` are stored; formulas use `a2`, which is the
/// quantity the solvability condition constrains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams<R: Real> {
    pub b2: R,
    pub omega: R,
    pub g: R,
    pub a: R,
    pub a2: R,
    pub d: u32,
    pub ell: u32,
}

impl<R: Real> PotentialParams<R> {
    pub fn new(b2: R, omega: R, g: R, a: R, d: u32, ell: u32) -> Result<Self, ModelError> {
        Self::validate(b2, omega, a, d)?;
        Ok(Self { b2, omega, g, a, a2: a * a, d, ell })
    }

    /// Same, but parameterized by a² (the natural knob for the gate).
    pub fn with_a_squared(
        b2: R,
        omega: R,
        g: R,
        a2: R,
        d: u32,
        ell: u32,
    ) -> Result<Self, ModelError> {
        if a2 <= R::zero() {
            return Err(ModelError::NonPositiveA(format!("a² = {a2}")));
        }
        let a = a2.sqrt();
        Self::validate(b2, omega, a, d)?;
        Ok(Self { b2, omega, g, a, a2, d, ell })
    }

    fn validate(b2: R, omega: R, a: R, d: u32) -> Result<(), ModelError> {
        if b2 < R::zero() {
            return Err(ModelError::NegativeB2(format!("{b2}")));
        }
        if omega <= R::zero() {
            return Err(ModelError::NonPositiveOmega(format!("{omega}")));
        }
        if a <= R::zero() {
            return Err(ModelError::NonPositiveA(format!("{a}")));
        }
        if d < 2 {
            return Err(ModelError::DimensionTooSmall(d));
        }
        Ok(())
    }
}

/// Quantities derived by the radial reduction, plus the solvability verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams<R: Real> {
    /// Effective centrifugal index: U(r) carries k(k+1)/r².
    pub k: R,
    /// γ_d = k + ½, the combination the gate compares against ωa².
    pub gamma_d: R,
    pub solvable: bool,
    /// ω(2k+3), the additive constant of the first partner potential.
    pub shift1: R,
    /// ω(2k+5), the additive constant of the second partner potential.
    pub shift2: R,
}

/// k such that k(k+1)/r² collects B²/r² and the angular barrier:
/// k = √(B² + (ℓ + (d−2)/2)²) − ½.
///
/// The dependence on (d, ℓ) enters only through the integer 2ℓ + d − 2, so
/// sectors with equal 2ℓ + d produce bitwise-identical k (and hence
/// bitwise-identical exact energies).
pub fn effective_k<R: Real>(p: PotentialParams<R>) -> R {
    k_of(p.b2, p.d, p.ell)
}

fn k_of<R: Real>(b2: R, d: u32, ell: u32) -> R {
    let two = r64::<R>(2.0);
    let half_m = rint::<R>((2 * ell + d - 2) as usize) / two;
    (b2 + half_m * half_m).sqrt() - r64(0.5)
}

/// Effective radial potential U(r) = k(k+1)/r² + ω²r² + 2g(r²−a²)/(r²+a²)².
pub fn effective_potential<R: Real>(p: PotentialParams<R>, r: R) -> Result<R, ModelError> {
    if r <= R::zero() {
        return Err(ModelError::NonPositiveRadius(format!("{r}")));
    }
    let k = effective_k(p);
    let r2 = r * r;
    let two = r64::<R>(2.0);
    let denom = r2 + p.a2;
    Ok(k * (k + R::one()) / r2
        + p.omega * p.omega * r2
        + two * p.g * (r2 - p.a2) / (denom * denom))
}

/// Computes k, γ_d and the partner shifts, and decides solvability:
/// the spectrum is known in closed form iff g = 2 and ωa² = k + ½,
/// both to 1e−12 relative.
pub fn solvability_gate<R: Real>(p: PotentialParams<R>) -> EffectiveParams<R> {
    let k = effective_k(p);
    let half = r64::<R>(0.5);
    let two = r64::<R>(2.0);
    let gamma_d = k + half;
    let shift1 = p.omega * (two * k + r64(3.0));
    let shift2 = p.omega * (two * k + r64(5.0));
    let solvable = rel_close(p.g, two) && rel_close(p.omega * p.a2, gamma_d);
    EffectiveParams { k, gamma_d, solvable, shift1, shift2 }
}

/// Given (B², ω, d, ℓ), the unique a making the potential exactly solvable:
/// a = √((k+½)/ω). ω and B are physical inputs; a is the adjustable knob.
pub fn snap_a<R: Real>(b2: R, omega: R, d: u32, ell: u32) -> R {
    let k = k_of(b2, d, ell);
    ((k + r64(0.5)) / omega).sqrt()
}

fn rel_close<R: Real>(x: R, y: R) -> bool {
    (x - y).abs() <= r64::<R>(1e-12) * x.abs().max(y.abs())
}
