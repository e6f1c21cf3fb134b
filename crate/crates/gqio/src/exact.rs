//! Closed-form spectra and normalized wavefunctions: the
//! Gol'dman–Krivchenkov oscillator α/r² + βr², and the solvable rational
//! oscillator obtained from it by the factorization route.
//!
//! States evaluate to (φ, φ′, φ″) triples so eigenvalue residuals can be
//! checked with analytic second derivatives rather than finite differences.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::model::EffectiveParams;
use crate::scalar::{r64, rint, Real};
use crate::specfun::{gamma, laguerre, pochhammer};
use crate::susy::{apply_a_dagger, RadialFunction, SuperpotentialAnsatz};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("parameters are not exactly solvable: need g = 2 and ωa² = k + 1/2")]
    NotSolvable,
    #[error("alpha must be non-negative, got {0}")]
    NegativeAlpha(String),
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(String),
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("hermite form covers k=0, ω=1, a²=1/2 only; got a² = {0}")]
    HermiteFormDomain(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

/// Parameters of the Gol'dman–Krivchenkov potential α/r² + βr² in the
/// sector (d, ℓ), reduced to the single index γ_d = 1 + √(α + (Λ+½)²)
/// with Λ = ℓ + (d−3)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GkParams<R: Real> {
    pub alpha: R,
    pub beta: R,
    pub lambda: R,
    pub gamma_d: R,
}

impl<R: Real> GkParams<R> {
    pub fn new(alpha: R, beta: R, d: u32, ell: u32) -> Result<Self, ExactError> {
        if d < 2 {
            return Err(ExactError::DimensionTooSmall(d));
        }
        // Λ + ½ = (2ℓ + d − 2)/2, kept integer-exact so equal 2ℓ+d sectors
        // produce bitwise-identical γ_d
        let half = r64::<R>(0.5);
        let lam_half = rint::<R>((2 * ell + d - 2) as usize) / r64(2.0);
        Self::from_lambda(alpha, beta, lam_half - half)
    }

    pub fn from_lambda(alpha: R, beta: R, lambda: R) -> Result<Self, ExactError> {
        if alpha < R::zero() {
            return Err(ExactError::NegativeAlpha(format!("{alpha}")));
        }
        if beta <= R::zero() {
            return Err(ExactError::NonPositiveBeta(format!("{beta}")));
        }
        let half = r64::<R>(0.5);
        let lh = lambda + half;
        let gamma_d = R::one() + (alpha + lh * lh).sqrt();
        Ok(Self { alpha, beta, lambda, gamma_d })
    }
}

/// E_{nγ} = 2√β (2n + γ_d).
pub fn gk_energy<R: Real>(p: GkParams<R>, n: usize) -> R {
    let two = r64::<R>(2.0);
    two * p.beta.sqrt() * (two * rint::<R>(n) + p.gamma_d)
}

/// A normalized bound state with its closed-form derivatives.
#[derive(Clone)]
pub struct ExactState<R: Real> {
    /// Radial node count.
    pub n: usize,
    /// Effective centrifugal index of the operator the state solves.
    pub k: R,
    /// Eigenvalue of the (shifted, where applicable) radial operator.
    pub energy: R,
    pub norm_constant: R,
    /// Gaussian decay scale: φ ~ poly(r)·e^{−ωr²/2} at large r.
    pub omega: R,
    /// x with φ ~ c·r^x as r → 0⁺.
    pub origin_exponent: R,
    pub description: String,
    wave: Arc<dyn Fn(R) -> (R, R, R) + Send + Sync>,
}

impl<R: Real> fmt::Debug for ExactState<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactState")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("energy", &self.energy)
            .field("description", &self.description)
            .finish()
    }
}

impl<R: Real> ExactState<R> {
    pub fn evaluate(&self, r: R) -> R {
        (self.wave)(r).0
    }

    /// (φ, φ′, φ″) at r, all analytic.
    pub fn derivatives(&self, r: R) -> (R, R, R) {
        (self.wave)(r)
    }

    pub fn radial_function(&self) -> RadialFunction<R> {
        let w1 = self.wave.clone();
        let w2 = self.wave.clone();
        RadialFunction::new(move |r| w1(r).0, self.description.clone())
            .with_derivative(move |r| w2(r).1)
            .with_origin_exponent(self.origin_exponent)
    }
}

/// (f, f′, f″) pointwise product.
fn mul3<R: Real>(u: (R, R, R), v: (R, R, R)) -> (R, R, R) {
    let two = r64::<R>(2.0);
    (
        u.0 * v.0,
        u.1 * v.0 + u.0 * v.1,
        u.2 * v.0 + two * u.1 * v.1 + u.0 * v.2,
    )
}

fn power_triple<R: Real>(p: R, r: R) -> (R, R, R) {
    let v = r.powf(p);
    (v, p * v / r, p * (p - R::one()) * v / (r * r))
}

/// e^{−c r²/2} and its derivatives.
fn gaussian_triple<R: Real>(c: R, r: R) -> (R, R, R) {
    let v = (-c * r * r / r64(2.0)).exp();
    (v, -c * r * v, (c * c * r * r - c) * v)
}

/// 1/(r² + a²) and its derivatives.
fn rational_triple<R: Real>(a2: R, r: R) -> (R, R, R) {
    let two = r64::<R>(2.0);
    let eight = r64::<R>(8.0);
    let w = R::one() / (r * r + a2);
    (w, -two * r * w * w, -two * w * w + eight * r * r * w * w * w)
}

/// Σ cᵢ L_{nᵢ}^{αᵢ}(z) with z = c·r², differentiated through
/// dL_n^α/dz = −L_{n−1}^{α+1} and the chain rule.
fn laguerre_sum_triple<R: Real>(terms: &[(R, usize, R)], c: R, r: R) -> (R, R, R) {
    let two = r64::<R>(2.0);
    let z = c * r * r;
    let mut p = R::zero();
    let mut pz = R::zero();
    let mut pzz = R::zero();
    for &(coeff, deg, alpha) in terms {
        p += coeff * laguerre(deg, alpha, z);
        if deg >= 1 {
            pz -= coeff * laguerre(deg - 1, alpha + R::one(), z);
        }
        if deg >= 2 {
            pzz += coeff * laguerre(deg - 2, alpha + two, z);
        }
    }
    let dz = two * c * r;
    (p, pz * dz, pzz * dz * dz + pz * two * c)
}

/// Shared shape N r^{γ−½} e^{−√β r²/2} L_n^{γ−1}(√β r²) with the unit-norm
/// constant N = (−1)ⁿ √(2 β^{γ/2} n! / ((γ)_n Γ(γ))). Used both for the
/// principal GK states (γ ≥ 1) and, with the non-principal γ = k + ½, as
/// the seed the ladder operator maps onto the rational-oscillator states.
fn power_gaussian_laguerre_state<R: Real>(
    gamma_d: R,
    beta: R,
    n: usize,
    energy: R,
    k: R,
    description: String,
) -> ExactState<R> {
    let two = r64::<R>(2.0);
    let half = r64::<R>(0.5);
    let c = beta.sqrt();
    let g = gamma(gamma_d).expect("gamma_d > 0");
    let nf = pochhammer(R::one(), n);
    let sign = if n % 2 == 0 { R::one() } else { -R::one() };
    let norm = sign * (two * beta.powf(gamma_d / two) * nf / (pochhammer(gamma_d, n) * g)).sqrt();
    let p = gamma_d - half;
    let alpha = gamma_d - R::one();
    let wave = move |r: R| {
        let t = mul3(
            mul3(power_triple(p, r), gaussian_triple(c, r)),
            laguerre_sum_triple(&[(R::one(), n, alpha)], c, r),
        );
        (norm * t.0, norm * t.1, norm * t.2)
    };
    ExactState {
        n,
        k,
        energy,
        norm_constant: norm,
        omega: c,
        origin_exponent: p,
        description,
        wave: Arc::new(wave),
    }
}

/// Normalized GK eigenstate; the node count on (0, ∞) is n.
pub fn gk_wavefunction<R: Real>(p: GkParams<R>, n: usize) -> ExactState<R> {
    let energy = gk_energy(p, n);
    let k = p.gamma_d - r64(1.5);
    let description = format!("gk state n={n}, gamma_d={}", p.gamma_d);
    power_gaussian_laguerre_state(p.gamma_d, p.beta, n, energy, k, description)
}

/// ε_nk = 2ω(2n + 2k + 3), the spectrum of the shifted second partner
/// (and, by isospectrality, of the shifted first partner).
pub fn shifted_gk_spectrum<R: Real>(k: R, omega: R, n: usize) -> R {
    let two = r64::<R>(2.0);
    two * omega * (two * rint::<R>(n) + two * k + r64(3.0))
}

/// Eigenvalue of the shifted operator and of the bare Hamiltonian
/// −Δ + V (the shift ω(2k+3) removed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotonicEnergy<R: Real> {
    pub shifted: R,
    pub unshifted: R,
}

pub fn isotonic_spectrum<R: Real>(
    e: EffectiveParams<R>,
    omega: R,
    n: usize,
) -> Result<IsotonicEnergy<R>, ExactError> {
    if !e.solvable {
        return Err(ExactError::NotSolvable);
    }
    let shifted = shifted_gk_spectrum(e.k, omega, n);
    Ok(IsotonicEnergy { shifted, unshifted: shifted - e.shift1 })
}

fn isotonic_state_with_bracket<R: Real>(
    e: EffectiveParams<R>,
    omega: R,
    a: R,
    n: usize,
    third_coeff: R,
    description: String,
) -> Result<ExactState<R>, ExactError> {
    let energy = isotonic_spectrum(e, omega, n)?.shifted;
    let two = r64::<R>(2.0);
    let half = r64::<R>(0.5);
    let k = e.k;
    let a2 = a * a;
    let gam = k + half;
    let nf = pochhammer(R::one(), n);
    let g = gamma(gam).expect("k + 1/2 > 0");
    let sign = if n % 2 == 0 { R::one() } else { -R::one() };
    let norm =
        sign * (two * omega.powf(gam) * nf / (energy * pochhammer(gam, n) * g)).sqrt();
    let terms = [
        (two * k + two * rint::<R>(n) + r64(3.0), n, k - half),
        (-two * rint::<R>(n + 1), n + 1, k - half),
        (third_coeff, n, k + half),
    ];
    let wave = move |r: R| {
        let t = mul3(
            mul3(power_triple(k + R::one(), r), gaussian_triple(omega, r)),
            mul3(laguerre_sum_triple(&terms, omega, r), rational_triple(a2, r)),
        );
        (norm * t.0, norm * t.1, norm * t.2)
    };
    Ok(ExactState {
        n,
        k,
        energy,
        norm_constant: norm,
        omega,
        origin_exponent: k + R::one(),
        description,
        wave: Arc::new(wave),
    })
}

/// Normalized eigenstate of the shifted first partner,
///
///   φ_nk = C r^{k+1} e^{−ωr²/2}/(r²+a²)
///        · [(2k+2n+3) L_n^{k−½} − 2(n+1) L_{n+1}^{k−½} + (2k+1) L_n^{k+½}],
///
/// all Laguerre arguments ωr². C makes the L²([0,∞), dr) norm exactly 1;
/// its sign keeps the printed (−1)ⁿ convention of the source formulas,
/// which leaves the bracket's leading coefficient positive.
pub fn isotonic_wavefunction<R: Real>(
    e: EffectiveParams<R>,
    omega: R,
    a: R,
    n: usize,
) -> Result<ExactState<R>, ExactError> {
    let two = r64::<R>(2.0);
    isotonic_state_with_bracket(
        e,
        omega,
        a,
        n,
        two * e.k + R::one(),
        format!("isotonic state n={n}, k={}", e.k),
    )
}

/// Same state with the bracket's third coefficient written 2ωa² instead of
/// 2k+1, its form before the solvability substitution. Identical on the
/// solvable line; kept as an independent route for equivalence checks.
pub fn isotonic_wavefunction_unreduced<R: Real>(
    e: EffectiveParams<R>,
    omega: R,
    a: R,
    n: usize,
) -> Result<ExactState<R>, ExactError> {
    let two = r64::<R>(2.0);
    isotonic_state_with_bracket(
        e,
        omega,
        a,
        n,
        two * omega * a * a,
        format!("isotonic state (unreduced bracket) n={n}, k={}", e.k),
    )
}

/// Third route: ε_n^{−1/2} A† applied to the n-th eigenstate of the second
/// partner, evaluated operationally with no algebraic simplification.
/// The seed is the γ = k + ½ branch state r^k e^{−ωr²/2} L_n^{k−½}(ωr²);
/// for k < ½ that is the non-principal branch, which is exactly why the
/// partner spectrum keeps its lowest level.
pub fn isotonic_wavefunction_ladder<R: Real>(
    e: EffectiveParams<R>,
    omega: R,
    a: R,
    n: usize,
) -> Result<RadialFunction<R>, ExactError> {
    let energy = isotonic_spectrum(e, omega, n)?.shifted;
    let seed = power_gaussian_laguerre_state(
        e.k + r64(0.5),
        omega * omega,
        n,
        energy,
        e.k,
        format!("second-partner state n={n}, k={}", e.k),
    );
    let w = SuperpotentialAnsatz::new(e.k, omega, r64(2.0), a)
        .map_err(|err| ExactError::Invalid(err.to_string()))?;
    let raised = apply_a_dagger(w, &seed.radial_function());
    let scale = energy.sqrt().recip();
    Ok(
        RadialFunction::new(move |r| scale * raised.value(r), format!(
            "ladder route n={n}, k={}",
            e.k
        ))
        .with_origin_exponent(e.k + R::one()),
    )
}

/// The k = 0, ω = 1, a² = ½ states rewritten over Hermite polynomials:
///
///   φ_n = C̄ e^{−r²/2}/(r²+½)
///       · [4(2n+3) H_{2n+1} + 8n(2n+3) H_{2n−1} + H_{2n+3}] / (2^{2n+2} n!),
///
/// with C̄ = √(n!/((2n+3) Γ(n+½))) > 0. Only odd Hermite indices appear, so
/// the formal extension to r < 0 is odd. Agrees with the Laguerre route
/// pointwise, including sign.
pub fn isotonic_wavefunction_hermite_form<R: Real>(
    n: usize,
    a2: R,
) -> Result<ExactState<R>, ExactError> {
    let half = r64::<R>(0.5);
    if (a2 - half).abs() > r64(1e-12) {
        return Err(ExactError::HermiteFormDomain(format!("{a2}")));
    }
    let two = r64::<R>(2.0);
    let nf = pochhammer(R::one(), n);
    let two_n3 = two * rint::<R>(n) + r64(3.0);
    let g = gamma(rint::<R>(n) + half).expect("n + 1/2 > 0");
    let cbar = (nf / (two_n3 * g)).sqrt();
    let scale = cbar / (two.powi(2 * n as i32 + 2) * nf);
    let energy = shifted_gk_spectrum(R::zero(), R::one(), n);
    // coefficient, index pairs of the Hermite bracket
    let terms: Vec<(R, usize)> = if n == 0 {
        vec![(r64::<R>(4.0) * two_n3, 1), (R::one(), 3)]
    } else {
        vec![
            (r64::<R>(4.0) * two_n3, 2 * n + 1),
            (r64::<R>(8.0) * rint::<R>(n) * two_n3, 2 * n - 1),
            (R::one(), 2 * n + 3),
        ]
    };
    let wave = move |r: R| {
        let mut b = R::zero();
        let mut b1 = R::zero();
        let mut b2 = R::zero();
        for &(coeff, m) in &terms {
            // H′_m = 2m H_{m−1}, H″_m = 4m(m−1) H_{m−2}
            let mf = rint::<R>(m);
            b += coeff * crate::specfun::hermite(m, r);
            b1 += coeff * two * mf * crate::specfun::hermite(m - 1, r);
            if m >= 2 {
                b2 += coeff * r64::<R>(4.0) * mf * (mf - R::one())
                    * crate::specfun::hermite(m - 2, r);
            }
        }
        let t = mul3((b, b1, b2), mul3(gaussian_triple(R::one(), r), rational_triple(half, r)));
        (scale * t.0, scale * t.1, scale * t.2)
    };
    Ok(ExactState {
        n,
        k: R::zero(),
        energy,
        norm_constant: cbar,
        omega: R::one(),
        origin_exponent: R::one(),
        description: format!("isotonic state (hermite form) n={n}"),
        wave: Arc::new(wave),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{solvability_gate, PotentialParams};

    fn solvable(k_via: (f64, u32, u32), omega: f64, a2: f64) -> EffectiveParams<f64> {
        let (b2, d, ell) = k_via;
        let p = PotentialParams::with_a_squared(b2, omega, 2.0, a2, d, ell).unwrap();
        let e = solvability_gate(p);
        assert!(e.solvable);
        e
    }

    #[test]
    fn gk_energy_values() {
        let p = GkParams::new(0.0, 1.0, 3, 0).unwrap();
        assert_eq!(p.gamma_d, 1.5);
        assert_eq!(gk_energy(p, 0), 3.0);
        assert_eq!(gk_energy(p, 2), 11.0);

        let q = GkParams::new(2.0, 4.0, 4, 0).unwrap();
        assert!((q.gamma_d - (1.0 + 3.0_f64.sqrt())).abs() < 1e-15);
        assert!((gk_energy(q, 1) - 4.0 * (3.0 + 3.0_f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn gk_params_reject_bad_inputs() {
        assert!(GkParams::new(-1.0, 1.0, 3, 0).is_err());
        assert!(GkParams::new(0.0, 0.0, 3, 0).is_err());
        assert!(GkParams::new(0.0, 1.0, 1, 0).is_err());
    }

    #[test]
    fn gk_ground_state_is_oscillator_ground_state() {
        let p = GkParams::new(0.0, 1.0, 3, 0).unwrap();
        let st = gk_wavefunction(p, 0);
        let c = 2.0 / std::f64::consts::PI.powf(0.25);
        for i in 1..=30 {
            let r = 0.2 * i as f64;
            let want = c * r * (-r * r / 2.0).exp();
            assert!((st.evaluate(r) - want).abs() < 1e-14, "r={r}");
        }
        assert_eq!(st.n, 0);
        assert_eq!(st.k, 0.0);
        assert_eq!(st.energy, 3.0);
    }

    #[test]
    fn gk_derivatives_match_finite_differences() {
        let p = GkParams::new(2.0, 4.0, 4, 1).unwrap();
        let st = gk_wavefunction(p, 3);
        let h = 1e-5;
        for i in 1..=15 {
            let r = 0.3 * i as f64;
            let (v, d1, d2) = st.derivatives(r);
            let fd1 = (st.evaluate(r + h) - st.evaluate(r - h)) / (2.0 * h);
            let fd2 = (st.evaluate(r + h) - 2.0 * v + st.evaluate(r - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-6 * d1.abs().max(1.0), "r={r}");
            assert!((d2 - fd2).abs() < 1e-4 * d2.abs().max(1.0), "r={r}");
        }
    }

    #[test]
    fn shifted_spectrum_values() {
        assert_eq!(shifted_gk_spectrum(0.0, 1.0, 0), 6.0);
        assert_eq!(shifted_gk_spectrum(0.0, 1.0, 1), 10.0);
        assert_eq!(shifted_gk_spectrum(0.5, 2.0, 0), 16.0);
    }

    #[test]
    fn shifted_spectrum_consistent_with_gk_form() {
        // the second partner is GK with Λ(Λ+1) = k(k−1); for k ≥ ½ the
        // principal branch gives γ_d = k + ½ and the energies must agree
        // after adding back the shift ω(2k+5)
        for &k in &[0.5, 1.0, 1.2320508075688772_f64] {
            for &omega in &[0.5, 1.0, 2.0] {
                let p = GkParams::from_lambda(0.0, omega * omega, k - 1.0).unwrap();
                assert!((p.gamma_d - (k + 0.5)).abs() < 1e-14);
                for n in 0..6 {
                    let lhs = shifted_gk_spectrum(k, omega, n);
                    let rhs = gk_energy(p, n) + omega * (2.0 * k + 5.0);
                    assert!((lhs - rhs).abs() < 1e-12 * lhs, "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn isotonic_spectrum_values() {
        let e = solvable((0.0, 3, 0), 1.0, 0.5);
        let e0 = isotonic_spectrum(e, 1.0, 0).unwrap();
        assert_eq!((e0.shifted, e0.unshifted), (6.0, 3.0));
        let e1 = isotonic_spectrum(e, 1.0, 1).unwrap();
        assert_eq!((e1.shifted, e1.unshifted), (10.0, 7.0));
        assert_eq!(isotonic_spectrum(e, 1.0, 2).unwrap().unshifted, 11.0);
    }

    #[test]
    fn isotonic_spectrum_rejects_unsolvable() {
        let p = PotentialParams::with_a_squared(0.0, 1.0, 1.5, 0.5, 3, 0).unwrap();
        let e = solvability_gate(p);
        assert!(matches!(isotonic_spectrum(e, 1.0, 0), Err(ExactError::NotSolvable)));
        assert!(isotonic_wavefunction(e, 1.0, p.a, 0).is_err());
    }

    #[test]
    fn isotonic_ground_state_shape() {
        let e = solvable((0.0, 3, 0), 1.0, 0.5);
        let st = isotonic_wavefunction(e, 1.0, 0.5_f64.sqrt(), 0).unwrap();
        let c = 1.0 / (3.0 * std::f64::consts::PI.sqrt()).sqrt();
        assert!((st.norm_constant - c).abs() < 1e-15);
        for i in 1..=30 {
            let r = 0.25 * i as f64;
            let want = c * r * (-r * r / 2.0).exp() * (2.0 * r * r + 3.0) / (r * r + 0.5);
            assert!((st.evaluate(r) - want).abs() < 1e-14 * want.abs().max(1.0), "r={r}");
        }
        assert!(st.evaluate(1e-8).abs() < 1e-7);
        assert_eq!(st.energy, 6.0);
    }

    #[test]
    fn hermite_form_matches_laguerre_route() {
        let e = solvable((0.0, 3, 0), 1.0, 0.5);
        for n in 0..=4 {
            let lag = isotonic_wavefunction(e, 1.0, 0.5_f64.sqrt(), n).unwrap();
            let her = isotonic_wavefunction_hermite_form(n, 0.5).unwrap();
            for i in 1..=40 {
                let r = 0.2 * i as f64;
                let a = lag.evaluate(r);
                let b = her.evaluate(r);
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-3), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn hermite_form_ground_state_bracket() {
        // bracket 12H₁ + H₃ = 4r(2r² + 3)
        let her = isotonic_wavefunction_hermite_form(0, 0.5_f64).unwrap();
        let c = 1.0 / (3.0 * std::f64::consts::PI.sqrt()).sqrt();
        let r = 1.7;
        let want = c * (-r * r / 2.0_f64).exp() * 4.0 * r * (2.0 * r * r + 3.0)
            / (4.0 * (r * r + 0.5));
        assert!((her.evaluate(r) - want).abs() < 1e-15);
        assert!((her.norm_constant - c).abs() < 1e-15);
    }

    #[test]
    fn hermite_form_rejects_other_scales() {
        assert!(isotonic_wavefunction_hermite_form(1, 0.4_f64).is_err());
    }

    #[test]
    fn unreduced_bracket_identical_on_solvable_line() {
        // k = √3 − ½, so the gate wants a² = k + ½ = √3
        let a2 = 3.0_f64.sqrt();
        let e = solvable((2.0, 4, 0), 1.0, a2);
        let a = a2.sqrt();
        for n in 0..=3 {
            let s1 = isotonic_wavefunction(e, 1.0, a, n).unwrap();
            let s2 = isotonic_wavefunction_unreduced(e, 1.0, a, n).unwrap();
            for i in 1..=20 {
                let r = 0.35 * i as f64;
                let v1 = s1.evaluate(r);
                let v2 = s2.evaluate(r);
                assert!((v1 - v2).abs() <= 1e-12 * v1.abs().max(1e-6), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn ladder_route_matches_closed_form() {
        let e = solvable((0.0, 3, 0), 1.0, 0.5);
        let a = 0.5_f64.sqrt();
        for n in 0..=3 {
            let direct = isotonic_wavefunction(e, 1.0, a, n).unwrap();
            let ladder = isotonic_wavefunction_ladder(e, 1.0, a, n).unwrap();
            for i in 1..=25 {
                let r = 0.3 * i as f64;
                let v1 = direct.evaluate(r);
                let v2 = ladder.value(r);
                assert!((v1 - v2).abs() <= 1e-11 * v1.abs().max(1e-6), "n={n} r={r}");
            }
        }
    }
}
