//! Factorization machinery: the superpotential ansatz
//!
//!   W(r) = k′/r + ω′r + sr/(r² + a²),
//!
//! the ladder operators A = d/dr + W and A† = −d/dr + W, the partner
//! potentials U₁ = W² − W′ and U₂ = W² + W′, and the state maps between the
//! partner Hamiltonians.
//!
//! Under the reduction s = 2, k′ = k, ω′ = ω, ωa² = k + ½ the pair
//! (U₁, U₂) collapses to the solvable isotonic pair, and A†/√E carries
//! eigenstates of H₂ onto eigenstates of H₁ with the same energy.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{r64, Real};

/// Radii below this floor are rejected by every 1/r evaluation.
pub const RADIUS_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SusyError {
    #[error("omega' must be positive, got {0}")]
    NonPositiveOmega(String),
    #[error("a must be positive, got {0}")]
    NonPositiveA(String),
    #[error("radius {0} below evaluation floor 1e-8")]
    RadiusBelowFloor(String),
}

/// The three-parameter superpotential family plus the length scale a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialAnsatz<R: Real> {
    pub k_prime: R,
    pub omega_prime: R,
    pub s: R,
    pub a: R,
}

impl<R: Real> SuperpotentialAnsatz<R> {
    pub fn new(k_prime: R, omega_prime: R, s: R, a: R) -> Result<Self, SusyError> {
        if omega_prime <= R::zero() {
            return Err(SusyError::NonPositiveOmega(format!("{omega_prime}")));
        }
        if a <= R::zero() {
            return Err(SusyError::NonPositiveA(format!("{a}")));
        }
        Ok(Self { k_prime, omega_prime, s, a })
    }

    /// The reduced ansatz (s = 2, k′ = k, ω′ = ω) with a fixed by the gate,
    /// a² = (k + ½)/ω. This is the only member whose partners are solvable.
    pub fn reduced(k: R, omega: R) -> Result<Self, SusyError> {
        let a = ((k + r64::<R>(0.5)) / omega).sqrt();
        Self::new(k, omega, r64(2.0), a)
    }

    fn w_parts(&self, r: R) -> (R, R) {
        let a2 = self.a * self.a;
        let denom = r * r + a2;
        let w = self.k_prime / r + self.omega_prime * r + self.s * r / denom;
        // W′ = −k′/r² + ω′ + s(a² − r²)/(r² + a²)²
        let wp = -self.k_prime / (r * r) + self.omega_prime
            + self.s * (a2 - r * r) / (denom * denom);
        (w, wp)
    }
}

/// A radial map r ↦ f(r) on (0, ∞), optionally carrying its analytic
/// derivative and the power-law exponent of its r → 0 behavior.
#[derive(Clone)]
pub struct RadialFunction<R: Real> {
    eval: Arc<dyn Fn(R) -> R + Send + Sync>,
    derivative: Option<Arc<dyn Fn(R) -> R + Send + Sync>>,
    pub description: String,
    /// x such that f(r) ~ c·r^x as r → 0⁺, when known.
    pub origin_exponent: Option<R>,
}

impl<R: Real> fmt::Debug for RadialFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction")
            .field("description", &self.description)
            .field("analytic_derivative", &self.derivative.is_some())
            .field("origin_exponent", &self.origin_exponent)
            .finish()
    }
}

impl<R: Real> RadialFunction<R> {
    pub fn new(
        eval: impl Fn(R) -> R + Send + Sync + 'static,
        description: impl Into<String>,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            derivative: None,
            description: description.into(),
            origin_exponent: None,
        }
    }

    pub fn with_derivative(
        mut self,
        derivative: impl Fn(R) -> R + Send + Sync + 'static,
    ) -> Self {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn with_origin_exponent(mut self, x: R) -> Self {
        self.origin_exponent = Some(x);
        self
    }

    pub fn value(&self, r: R) -> R {
        (self.eval)(r)
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// Analytic derivative when attached, otherwise central differences
    /// with step h = 1e−6·max(1, r).
    pub fn derivative_at(&self, r: R) -> R {
        match &self.derivative {
            Some(d) => d(r),
            None => {
                let h = r64::<R>(1e-6) * r.abs().max(R::one());
                ((self.eval)(r + h) - (self.eval)(r - h)) / (h + h)
            }
        }
    }
}

fn check_radius<R: Real>(r: R) -> Result<(), SusyError> {
    if r < r64(RADIUS_FLOOR) {
        return Err(SusyError::RadiusBelowFloor(format!("{r}")));
    }
    Ok(())
}

/// W(r) = k′/r + ω′r + sr/(r² + a²).
pub fn superpotential<R: Real>(w: SuperpotentialAnsatz<R>, r: R) -> Result<R, SusyError> {
    check_radius(r)?;
    Ok(w.w_parts(r).0)
}

/// (U₁, U₂) = (W² − W′, W² + W′) with the analytic W′.
///
/// The constant offsets the expanded closed forms carry, (2s + 2k′ ∓ 1)ω′,
/// are part of U₁/U₂ themselves; the shifted convenience forms live in
/// [`partner_v1`] and [`partner_v2`].
pub fn partner_potentials<R: Real>(
    w: SuperpotentialAnsatz<R>,
    r: R,
) -> Result<(R, R), SusyError> {
    check_radius(r)?;
    let (val, slope) = w.w_parts(r);
    let w2 = val * val;
    Ok((w2 - slope, w2 + slope))
}

/// Outcome of matching the ansatz to the rational potential: the s and g
/// it generates, and whether the parameters sit on the solvable line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction<R: Real> {
    pub s: R,
    pub g: R,
    pub valid: bool,
}

/// s = 4(ωa² − k) and g = 2(ωa² − k)(2ωa² + 1 − 2k); the match is valid
/// iff ωa² = k + ½ (to 1e−12 relative), which forces s = g = 2.
pub fn reduction_parameters<R: Real>(k: R, omega: R, a: R) -> Reduction<R> {
    let two = r64::<R>(2.0);
    let t = omega * a * a - k;
    let s = r64::<R>(4.0) * t;
    let g = two * t * (two * (omega * a * a) + R::one() - two * k);
    let half = r64::<R>(0.5);
    let valid = (t - half).abs() <= r64::<R>(1e-12) * (k.abs() + half);
    Reduction { s, g, valid }
}

/// A f = f′ + W f. The derivative of f is analytic when f carries one.
pub fn apply_a<R: Real>(
    w: SuperpotentialAnsatz<R>,
    f: &RadialFunction<R>,
) -> RadialFunction<R> {
    let g = f.clone();
    let description = format!("A[{}]", f.description);
    RadialFunction::new(
        move |r| g.derivative_at(r) + w.w_parts(r).0 * g.value(r),
        description,
    )
}

/// A† f = −f′ + W f.
pub fn apply_a_dagger<R: Real>(
    w: SuperpotentialAnsatz<R>,
    f: &RadialFunction<R>,
) -> RadialFunction<R> {
    let g = f.clone();
    let description = format!("A†[{}]", f.description);
    RadialFunction::new(
        move |r| -g.derivative_at(r) + w.w_parts(r).0 * g.value(r),
        description,
    )
}

/// The formal zero mode exp(−∫W) = r^{−k′} e^{−ω′r²/2} (r² + a²)^{−s/2},
/// annihilated by A but excluded from the spectrum: for k′ ≥ 0 it does not
/// vanish at the origin, so no eigenvalue of either partner is unpaired.
pub fn zero_mode<R: Real>(w: SuperpotentialAnsatz<R>) -> RadialFunction<R> {
    let half = r64::<R>(0.5);
    let value = move |r: R| {
        let a2 = w.a * w.a;
        r.powf(-w.k_prime)
            * (-half * w.omega_prime * r * r).exp()
            * (r * r + a2).powf(-half * w.s)
    };
    RadialFunction::new(value, "exp(-∫W)")
        .with_derivative(move |r| -w.w_parts(r).0 * value(r))
        .with_origin_exponent(-w.k_prime)
}

/// First member of the reduced pair:
/// V₁(r) = k(k+1)/r² + ω²r² + 4(r²−a²)/(r²+a²)² + ω(2k+3), with ωa² = k+½.
pub fn partner_v1<R: Real>(k: R, omega: R, a2: R, r: R) -> R {
    let two = r64::<R>(2.0);
    let r2 = r * r;
    let denom = r2 + a2;
    k * (k + R::one()) / r2
        + omega * omega * r2
        + r64::<R>(4.0) * (r2 - a2) / (denom * denom)
        + omega * (two * k + r64(3.0))
}

/// Second member: V₂(r) = k(k−1)/r² + ω²r² + ω(2k+5). A pure oscillator
/// form; its eigenfunctions carry the r^k branch at the origin, which for
/// k < ½ is the non-principal one.
pub fn partner_v2<R: Real>(k: R, omega: R, r: R) -> R {
    let two = r64::<R>(2.0);
    let r2 = r * r;
    k * (k - R::one()) / r2 + omega * omega * r2 + omega * (two * k + r64(5.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superpotential_values() {
        let w = SuperpotentialAnsatz::new(0.0, 1.0, 2.0, 0.5_f64.sqrt()).unwrap();
        let v = superpotential(w, 1.0).unwrap();
        assert!((v - 7.0 / 3.0).abs() < 1e-15);

        let osc = SuperpotentialAnsatz::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(superpotential(osc, 2.0).unwrap(), 2.0);

        let w3 = SuperpotentialAnsatz::new(1.0, 1.0, 2.0, 1.5_f64.sqrt()).unwrap();
        assert!((superpotential(w3, 1.0).unwrap() - 2.8).abs() < 1e-15);
    }

    #[test]
    fn superpotential_rejects_small_radius() {
        let w = SuperpotentialAnsatz::new(0.0, 1.0, 2.0, 1.0).unwrap();
        assert!(superpotential(w, 1e-9).is_err());
        assert!(superpotential(w, 0.0).is_err());
        assert!(partner_potentials(w, -0.5).is_err());
    }

    #[test]
    fn partner_values() {
        let w = SuperpotentialAnsatz::new(0.0, 1.0, 2.0, 0.5_f64.sqrt()).unwrap();
        let (u1, u2) = partner_potentials(w, 1.0).unwrap();
        assert!((u1 - 44.0 / 9.0).abs() < 1e-14);
        assert!((u2 - 6.0).abs() < 1e-14);

        let osc = SuperpotentialAnsatz::new(0.0_f64, 1.0, 0.0, 1.0).unwrap();
        let (u1, u2) = partner_potentials(osc, 1.0).unwrap();
        assert!(u1.abs() < 1e-15);
        assert!((u2 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reduction_values() {
        let r = reduction_parameters(0.0, 1.0, 0.5_f64.sqrt());
        assert!((r.s - 2.0).abs() < 1e-14 && (r.g - 2.0).abs() < 1e-14 && r.valid);

        let r = reduction_parameters(1.0, 1.0, 1.5_f64.sqrt());
        assert!((r.s - 2.0).abs() < 1e-13 && (r.g - 2.0).abs() < 1e-13 && r.valid);

        let r = reduction_parameters(0.0, 1.0, 1.0);
        assert_eq!(r.s, 4.0);
        assert_eq!(r.g, 6.0);
        assert!(!r.valid);
    }

    #[test]
    fn reduced_constructor_is_valid() {
        for &(k, omega) in &[(0.0, 1.0), (0.5, 2.0), (1.2320508075688772, 0.5)] {
            let w = SuperpotentialAnsatz::reduced(k, omega).unwrap();
            assert_eq!(w.s, 2.0);
            let red = reduction_parameters(k, omega, w.a);
            assert!(red.valid, "k={k} omega={omega}");
        }
    }

    #[test]
    fn oscillator_ground_state_annihilated() {
        let osc = SuperpotentialAnsatz::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let f = RadialFunction::new(|r: f64| (-r * r / 2.0).exp(), "gaussian")
            .with_derivative(|r| -r * (-r * r / 2.0).exp());
        let af = apply_a(osc, &f);
        for i in 1..=20 {
            let r = 0.25 * i as f64;
            assert!(af.value(r).abs() < 1e-15, "r={r}");
        }
    }

    #[test]
    fn a_dagger_raises_oscillator_ground_state() {
        let osc = SuperpotentialAnsatz::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let f = RadialFunction::new(|r: f64| (-r * r / 2.0).exp(), "gaussian");
        let raised = apply_a_dagger(osc, &f);
        // numeric derivative path: central differences, so ~1e-10 accuracy
        for i in 1..=20 {
            let r = 0.2 * i as f64;
            let want = 2.0 * r * (-r * r / 2.0).exp();
            assert!((raised.value(r) - want).abs() < 1e-9, "r={r}");
        }
    }

    #[test]
    fn zero_mode_is_annihilated_and_survives_at_origin() {
        let w = SuperpotentialAnsatz::reduced(0.5, 1.0).unwrap();
        let psi0 = zero_mode(w);
        let a_psi0 = apply_a(w, &psi0);
        for i in 1..=30 {
            let r = 0.2 * i as f64;
            assert!(a_psi0.value(r).abs() <= 1e-9 * psi0.value(r).abs().max(1e-300));
        }
        assert_eq!(psi0.origin_exponent, Some(-0.5));
        // r^{-k'} blows up toward the origin, so the mode is not a state
        assert!(psi0.value(1e-4) > psi0.value(1e-2));
    }

    #[test]
    fn linearity_on_zero_function() {
        let w = SuperpotentialAnsatz::new(1.0, 1.0, 2.0, 1.0).unwrap();
        let zero = RadialFunction::new(|_: f64| 0.0, "zero").with_derivative(|_| 0.0);
        let out = apply_a_dagger(w, &zero);
        for i in 1..=10 {
            assert_eq!(out.value(0.3 * i as f64), 0.0);
        }
    }

    #[test]
    fn partners_match_shifted_closed_forms() {
        // on the reduced line W²∓W′ collapse to the closed forms exactly,
        // constant terms included: the cross terms 2k′ω′ − ω′ plus the
        // 4ω′r²/(r²+a²) remainder rebuild ω(2k+3) and ω(2k+5)
        for &(k, omega) in &[(0.0, 1.0), (0.5, 1.0), (1.0, 2.0)] {
            let w = SuperpotentialAnsatz::reduced(k, omega).unwrap();
            let a2 = w.a * w.a;
            for i in 0..200 {
                let r = 1e-3 + 0.1 * i as f64;
                let (u1, u2) = partner_potentials(w, r).unwrap();
                let v1 = partner_v1(k, omega, a2, r);
                let v2 = partner_v2(k, omega, r);
                let scale = v1.abs().max(v2.abs()).max(1.0);
                assert!((u1 - v1).abs() <= 1e-10 * scale, "k={k} r={r}");
                assert!((u2 - v2).abs() <= 1e-10 * scale, "k={k} r={r}");
            }
        }
    }

    #[test]
    fn ansatz_rejects_bad_parameters() {
        assert!(SuperpotentialAnsatz::new(0.0, 0.0, 2.0, 1.0_f64).is_err());
        assert!(SuperpotentialAnsatz::new(0.0, 1.0, 2.0, 0.0_f64).is_err());
    }
}
