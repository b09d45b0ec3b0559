//! Gauge and coordinate substitutions.
//!
//! Writing u(r) = ω(r)·v(r) with the right gauge factor ω absorbs the
//! singular potential term of the deficit into a clean first-order form,
//! and a matching change of radial variable r ↦ t turns that form into a
//! weighted Dirichlet integral on a half line:
//!
//! * gauge A (α ≥ 0, μ > −1/4): ω = (α − ln r)^{τ₀}, t = 2(α − ln r);
//!   the deficit with the α-shifted weight becomes
//!   2^{2−2τ₀} π ∫ w′(t)² t^{2τ₀} dt on (2α, ∞).
//! * gauge B: the α = 0 case, r = e^{−t/2} on (0, ∞).
//! * gauge C (μ = −1/4 only): ω = (−ln r)^{1/2}, r = e^{(1−e^t)/2};
//!   the critical deficit becomes 2π ∫ w′(t)² (1 − e^{−t}) dt, manifestly
//!   nonnegative.
//!
//! Here τ₀ = (1 − √(1+4μ))/2 is the root of τ² − τ − μ = 0 selected so that
//! all cross terms cancel.

use crate::config::LabConfig;
use crate::error::LabError;
use crate::profiles::{About, FamilyMeta, Frame, RadialProfile};
use crate::quadrature::integrate;
use crate::Result;
use std::f64::consts::PI;
use std::sync::Arc;

/// τ₀(μ) = (1 − √(1+4μ))/2.
pub fn tau0_of(mu: f64) -> f64 {
    (1.0 - (1.0 + 4.0 * mu).sqrt()) / 2.0
}

/// The constants attached to a deficit parameter μ ≥ −1/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConstants {
    pub mu: f64,
    /// Gauge exponent, root of τ² − τ − μ = 0.
    pub tau0: f64,
    /// σ_μ = 1 − 2τ₀ = √(1+4μ), the optimal ramp power.
    pub sigma: f64,
    /// m_μ = 4π√(1+4μ), the sharp radial Trudinger–Moser exponent.
    pub m: f64,
    /// ν_μ = (2^{2−2τ₀} π f_μ(σ_μ))^{−1/2}; undefined at μ = −1/4 where
    /// f_μ degenerates.
    pub nu: Option<f64>,
}

/// f_μ(σ) = σ² / (2σ + 2τ₀ − 1), minimized at σ_μ = 1 − 2τ₀.
pub fn f_mu(sigma: f64, tau0: f64) -> f64 {
    sigma * sigma / (2.0 * sigma + 2.0 * tau0 - 1.0)
}

/// Populate the constants for μ; `Domain` error below −1/4.
pub fn constants_for(mu: f64) -> Result<SpectralConstants> {
    if mu < -0.25 {
        return Err(LabError::domain(format!("mu = {mu} < -1/4")));
    }
    let tau0 = tau0_of(mu);
    let sigma = (1.0 + 4.0 * mu).sqrt();
    let m = 4.0 * PI * sigma;
    let nu = if sigma > 0.0 {
        let f = f_mu(sigma, tau0);
        Some((2.0f64.powf(2.0 - 2.0 * tau0) * PI * f).powf(-0.5))
    } else {
        None
    };
    Ok(SpectralConstants {
        mu,
        tau0,
        sigma,
        m,
        nu,
    })
}

/// Which substitution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaugeKind {
    /// ω = (α − ln r)^{τ₀}, t = 2(α − ln r).
    A { alpha: f64 },
    /// ω = (−ln r)^{τ₀}, t = −2 ln r.
    B,
    /// ω = (−ln r)^{1/2}, t = ln(1 − 2 ln r); requires μ = −1/4.
    C,
    /// No substitution at all; t is r itself.
    Identity,
}

/// A (coordinate map, gauge factor) pair tied to a deficit parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeTransform {
    pub kind: GaugeKind,
    pub mu: f64,
    pub tau0: f64,
}

impl GaugeTransform {
    pub fn gauge_a(alpha: f64, mu: f64) -> Result<Self> {
        if alpha < 0.0 {
            return Err(LabError::domain("gauge A requires alpha >= 0"));
        }
        if mu <= -0.25 && alpha == 0.0 {
            // α = 0 with μ = −1/4 degenerates exactly like gauge B does.
            return Err(LabError::domain("gauge A with alpha = 0 requires mu > -1/4"));
        }
        if mu < -0.25 {
            return Err(LabError::domain("mu < -1/4"));
        }
        Ok(GaugeTransform {
            kind: GaugeKind::A { alpha },
            mu,
            tau0: tau0_of(mu),
        })
    }

    pub fn gauge_b(mu: f64) -> Result<Self> {
        if mu <= -0.25 {
            return Err(LabError::domain("gauge B requires mu > -1/4"));
        }
        Ok(GaugeTransform {
            kind: GaugeKind::B,
            mu,
            tau0: tau0_of(mu),
        })
    }

    pub fn gauge_c() -> Self {
        GaugeTransform {
            kind: GaugeKind::C,
            mu: -0.25,
            tau0: 0.5,
        }
    }

    pub fn identity() -> Self {
        GaugeTransform {
            kind: GaugeKind::Identity,
            mu: 0.0,
            tau0: 0.0,
        }
    }

    fn alpha(&self) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => alpha,
            _ => 0.0,
        }
    }

    /// r ↦ t.
    pub fn forward(&self, r: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => 2.0 * (alpha - r.ln()),
            GaugeKind::B => -2.0 * r.ln(),
            GaugeKind::C => (-2.0 * r.ln()).ln_1p(),
            GaugeKind::Identity => r,
        }
    }

    /// t ↦ r.
    pub fn inverse(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => (alpha - t / 2.0).exp(),
            GaugeKind::B => (-t / 2.0).exp(),
            GaugeKind::C => (-t.exp_m1() / 2.0).exp(),
            GaugeKind::Identity => t,
        }
    }

    /// t-interval corresponding to r ∈ (0, 1).
    pub fn t_domain(&self) -> (f64, f64) {
        match self.kind {
            GaugeKind::A { alpha } => (2.0 * alpha, f64::INFINITY),
            GaugeKind::B | GaugeKind::C => (0.0, f64::INFINITY),
            GaugeKind::Identity => (0.0, 1.0),
        }
    }

    /// ℓ = ln(1/r) as a function of t; stays accurate long after r itself
    /// would underflow.
    pub fn ell(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => t / 2.0 - alpha,
            GaugeKind::B => t / 2.0,
            GaugeKind::C => t.exp_m1() / 2.0,
            GaugeKind::Identity => -t.ln(),
        }
    }

    /// Inverse of `ell`: the t at which ln(1/r) equals the given value.
    pub fn t_of_ell(&self, ell: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => 2.0 * (alpha + ell),
            GaugeKind::B => 2.0 * ell,
            GaugeKind::C => (2.0 * ell).ln_1p(),
            GaugeKind::Identity => (-ell).exp(),
        }
    }

    /// dℓ/dt.
    pub fn ell_prime(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { .. } | GaugeKind::B => 0.5,
            GaugeKind::C => t.exp() / 2.0,
            GaugeKind::Identity => -1.0 / t,
        }
    }

    /// Gauge factor ω as a function of r.
    pub fn omega(&self, r: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => (alpha - r.ln()).powf(self.tau0),
            GaugeKind::B => (-r.ln()).powf(self.tau0),
            GaugeKind::C => (-r.ln()).sqrt(),
            GaugeKind::Identity => 1.0,
        }
    }

    /// dω/dr in closed form.
    pub fn omega_prime(&self, r: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => {
                -self.tau0 * (alpha - r.ln()).powf(self.tau0 - 1.0) / r
            }
            GaugeKind::B => -self.tau0 * (-r.ln()).powf(self.tau0 - 1.0) / r,
            GaugeKind::C => -0.5 * (-r.ln()).powf(-0.5) / r,
            GaugeKind::Identity => 0.0,
        }
    }

    /// ω as a function of t.
    pub fn omega_t(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { .. } | GaugeKind::B => (t / 2.0).powf(self.tau0),
            GaugeKind::C => self.ell(t).sqrt(),
            GaugeKind::Identity => 1.0,
        }
    }

    /// dr/dt.
    pub fn dr_dt(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { .. } | GaugeKind::B => -self.inverse(t) / 2.0,
            GaugeKind::C => -self.inverse(t) * t.exp() / 2.0,
            GaugeKind::Identity => 1.0,
        }
    }

    /// Coefficient a(t) of the transformed deficit ∫ w′(t)² a(t) dt.
    pub fn energy_coeff(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { .. } | GaugeKind::B => {
                2.0f64.powf(2.0 - 2.0 * self.tau0) * PI * t.powf(2.0 * self.tau0)
            }
            GaugeKind::C => 2.0 * PI * (-(-t).exp_m1()), // 2π(1 − e^{−t})
            GaugeKind::Identity => 2.0 * PI * t, // plain Dirichlet density in r
        }
    }

    /// ln of the area density dπr²/dt, i.e. the measure e-exponent of
    /// ∫_{B₁} · dx written in the t variable.
    pub fn log_area_density(&self, t: f64) -> f64 {
        match self.kind {
            GaugeKind::A { alpha } => PI.ln() + 2.0 * alpha - t,
            GaugeKind::B => PI.ln() - t,
            GaugeKind::C => PI.ln() + 1.0 - t.exp() + t,
            GaugeKind::Identity => (2.0 * PI * t).ln(),
        }
    }

    /// Mass density in t for a weight W with P(ℓ) = W·r², such that
    /// ∫ u² W dx = ∫ w(t)² · density(t) dt.
    pub fn mass_density(&self, t: f64, p_of_ell: impl Fn(f64) -> f64) -> f64 {
        let ell = self.ell(t);
        2.0 * PI * self.omega_t(t).powi(2) * p_of_ell(ell) * self.ell_prime(t)
    }
}

/// Transport a u-frame profile to the gauge's w-frame: w(t) = u(r(t))/ω(r(t)).
///
/// The support may touch r = 0 only under gauge C (where ω blows up and the
/// quotient stays bounded for admissible profiles); it must stay away from
/// r = 1 whenever ω degenerates there.
pub fn push(profile: &RadialProfile, gauge: GaugeTransform) -> Result<RadialProfile> {
    if !matches!(profile.frame, Frame::U) {
        return Err(LabError::domain("push expects a u-frame profile"));
    }
    let (lo, hi) = profile.support();
    let omega_degenerate_at_one = !matches!(gauge.kind, GaugeKind::Identity)
        && !(matches!(gauge.kind, GaugeKind::A { .. } | GaugeKind::B) && gauge.tau0 == 0.0)
        && gauge.alpha() == 0.0;
    if hi >= 1.0 && omega_degenerate_at_one {
        return Err(LabError::domain(
            "support touches r = 1 where the gauge factor degenerates",
        ));
    }
    if lo <= 0.0 && !matches!(gauge.kind, GaugeKind::C) {
        return Err(LabError::domain(
            "support touches r = 0; only gauge C admits that end",
        ));
    }

    // r ↦ t reverses orientation for the logarithmic gauges.
    let (t_lo, t_hi) = if matches!(gauge.kind, GaugeKind::Identity) {
        (lo, hi)
    } else {
        (
            gauge.forward(hi),
            if lo > 0.0 { gauge.forward(lo) } else { f64::INFINITY },
        )
    };

    let src = Arc::new(profile.clone());
    let src_d = Arc::clone(&src);
    let g = gauge;
    let f = move |t: f64| {
        let r = g.inverse(t);
        src.eval(r) / g.omega(r)
    };
    let df = move |t: f64| {
        let r = g.inverse(t);
        let om = g.omega(r);
        let dw_dr = (src_d.deriv(r) * om - src_d.eval(r) * g.omega_prime(r)) / (om * om);
        dw_dr * g.dr_dt(t)
    };

    let mut kinks: Vec<f64> = profile
        .kinks()
        .iter()
        .filter(|&&r| r > 0.0 && r < 1.0)
        .map(|&r| gauge.forward(r))
        .collect();
    kinks.sort_by(|a, b| a.partial_cmp(b).unwrap());

    Ok(RadialProfile::closed(
        Frame::W {
            gauge,
            shift: 0.0,
            about: About::Origin,
        },
        (t_lo, t_hi),
        kinks,
        Arc::new(f),
        Arc::new(df),
        profile.meta.clone().map(|m| FamilyMeta {
            name: format!("{}/pushed", m.name),
            params: m.params,
        }),
    ))
}

/// Transport a w-frame profile back to the u-frame: u(r) = ω(r)·w(t(r)).
pub fn pull(profile: &RadialProfile) -> Result<RadialProfile> {
    let (gauge, shift) = match profile.frame {
        Frame::W {
            gauge,
            shift,
            about: About::Origin,
        } => (gauge, shift),
        Frame::W { .. } => {
            return Err(LabError::domain("cannot pull an off-center profile"))
        }
        Frame::U => return Err(LabError::domain("pull expects a w-frame profile")),
    };
    let (t_lo, t_hi) = profile.support();
    let r_hi = gauge.inverse(t_lo + shift);
    let r_lo = if t_hi.is_finite() {
        gauge.inverse(t_hi + shift)
    } else {
        0.0
    };

    let src = Arc::new(profile.clone());
    let src_d = Arc::clone(&src);
    let g = gauge;
    let f = move |r: f64| g.omega(r) * src.eval(g.forward(r) - shift);
    let df = move |r: f64| {
        let t = g.forward(r) - shift;
        g.omega_prime(r) * src_d.eval(t) + g.omega(r) * src_d.deriv(t) / g.dr_dt(t + shift)
    };

    let mut kinks: Vec<f64> = profile
        .kinks()
        .iter()
        .map(|&t| g.inverse(t + shift))
        .filter(|&r| r > 0.0 && r < 1.0)
        .collect();
    kinks.sort_by(|a, b| a.partial_cmp(b).unwrap());

    Ok(RadialProfile::closed(
        Frame::U,
        (r_lo, r_hi),
        kinks,
        Arc::new(f),
        Arc::new(df),
        profile.meta.clone().map(|m| FamilyMeta {
            name: format!("{}/pulled", m.name),
            params: m.params,
        }),
    ))
}

/// Relative mismatch between the u-frame deficit and its gauge-frame form.
///
/// The left side is ℐ_{α,μ}(u) = 2π ∫ (u′² − ... ) r dr computed directly;
/// the right side is the transformed integral for the matching gauge.
/// Profiles that fail to vanish fast enough at r = 0 acquire a boundary
/// term that this residual reports rather than corrects.
pub fn energy_identity_residual(
    u: &RadialProfile,
    gauge: GaugeTransform,
    mu: f64,
    cfg: &LabConfig,
) -> Result<f64> {
    if !matches!(u.frame, Frame::U) {
        return Err(LabError::domain("residual check expects a u-frame profile"));
    }
    match gauge.kind {
        GaugeKind::C => {
            if mu != -0.25 {
                return Err(LabError::GaugeMismatch(format!(
                    "gauge C encodes mu = -1/4, got {mu}"
                )));
            }
        }
        GaugeKind::A { .. } | GaugeKind::B => {
            if (gauge.mu - mu).abs() > 1e-14 {
                return Err(LabError::GaugeMismatch(format!(
                    "gauge carries mu = {}, got {mu}",
                    gauge.mu
                )));
            }
        }
        GaugeKind::Identity => {}
    }

    let (lo, hi) = u.support();
    if lo <= 0.0 || hi >= 1.0 {
        return Err(LabError::domain(
            "identity check needs compact support inside (0,1)",
        ));
    }
    let alpha = gauge.alpha();
    let mut bps = u.kinks().to_vec();
    bps.push((-1.0f64).exp());
    let lhs = integrate(
        |r: f64| {
            let shifted = alpha - r.ln();
            let du = u.deriv(r);
            let val = u.eval(r);
            2.0 * PI * (du * du + mu * val * val / (r * r * shifted * shifted)) * r
        },
        lo,
        hi,
        &bps,
        cfg,
    );

    if matches!(gauge.kind, GaugeKind::Identity) {
        // Both sides are literally the same integral.
        return Ok(0.0);
    }

    let rhs = match gauge.kind {
        GaugeKind::A { .. } => {
            // r-space form 2π ∫ w′(r)² (α − ln r)^{2τ₀} r dr.
            integrate(
                |r: f64| {
                    let om = gauge.omega(r);
                    let dw = (u.deriv(r) * om - u.eval(r) * gauge.omega_prime(r)) / (om * om);
                    2.0 * PI * dw * dw * (alpha - r.ln()).powf(2.0 * gauge.tau0) * r
                },
                lo,
                hi,
                &bps,
                cfg,
            )
        }
        GaugeKind::B | GaugeKind::C => {
            let w = push(u, gauge)?;
            let (t_lo, t_hi) = w.deriv_support();
            let t_kinks = w.kinks().to_vec();
            integrate(
                |t: f64| {
                    let dw = w.deriv(t);
                    dw * dw * gauge.energy_coeff(t)
                },
                t_lo,
                t_hi,
                &t_kinks,
                cfg,
            )
        }
        GaugeKind::Identity => unreachable!(),
    };

    Ok((lhs.value - rhs.value).abs() / lhs.value.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles;
    use crate::rng::SplitMix64;

    fn cfg() -> LabConfig {
        LabConfig::default()
    }

    #[test]
    fn constants_at_zero() {
        let c = constants_for(0.0).unwrap();
        assert_eq!(c.tau0, 0.0);
        assert_eq!(c.sigma, 1.0);
        assert!((c.m - 4.0 * PI).abs() < 1e-12);
        assert!((c.nu.unwrap() - (4.0 * PI).powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn constants_at_quarter_and_three_sixteenths() {
        let c = constants_for(-0.25).unwrap();
        assert_eq!(c.m, 0.0);
        assert_eq!(c.tau0, 0.5);
        assert!(c.nu.is_none());

        let c = constants_for(-3.0 / 16.0).unwrap();
        assert!((c.tau0 - 0.25).abs() < 1e-15);
        assert!((c.sigma - 0.5).abs() < 1e-15);
        assert!((c.m - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn constants_reject_below_quarter() {
        assert!(constants_for(-0.26).is_err());
    }

    #[test]
    fn tau0_satisfies_its_quadratic() {
        for &mu in &[-0.25, -0.1875, -0.1, 0.0, 0.3, 0.75, 2.0] {
            let t = tau0_of(mu);
            assert!((t * t - t - mu).abs() < 1e-13, "mu = {mu}");
        }
    }

    #[test]
    fn nu_consistent_with_f_mu() {
        for &mu in &[-0.1875, -0.05, 0.0, 0.75] {
            let c = constants_for(mu).unwrap();
            let nu = c.nu.unwrap();
            let expect =
                (2.0f64.powf(2.0 - 2.0 * c.tau0) * PI * f_mu(c.sigma, c.tau0)).powf(-0.5);
            assert!((nu - expect).abs() < 1e-15);
            // σ_μ minimizes f: nearby σ give larger f.
            assert!(f_mu(c.sigma + 0.05, c.tau0) > f_mu(c.sigma, c.tau0));
            assert!(f_mu(c.sigma - 0.05 + 1e-9, c.tau0) >= f_mu(c.sigma, c.tau0) - 1e-9);
        }
    }

    #[test]
    fn round_trip_on_random_radii() {
        let gauges = [
            GaugeTransform::gauge_a(1.0, -0.1).unwrap(),
            GaugeTransform::gauge_b(0.0).unwrap(),
            GaugeTransform::gauge_b(0.75).unwrap(),
            GaugeTransform::gauge_c(),
        ];
        let mut rng = SplitMix64::new(2024);
        for g in gauges {
            for _ in 0..100_000 {
                let r = rng.in_range(1e-8, 1.0 - 1e-8);
                let back = g.inverse(g.forward(r));
                assert!(
                    (back - r).abs() / r < 1e-13,
                    "{:?}: r = {r}, back = {back}",
                    g.kind
                );
            }
        }
    }

    #[test]
    fn gauge_c_t_domain_and_ell() {
        let g = GaugeTransform::gauge_c();
        // r → 1⁻ maps to t → 0⁺.
        assert!(g.forward(1.0 - 1e-12) < 1e-11);
        // ℓ(t) = (e^t − 1)/2.
        assert!((g.ell(1.0) - (1.0f64.exp() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn gauge_b_mu_zero_is_identity_gauge_factor() {
        let g = GaugeTransform::gauge_b(0.0).unwrap();
        for &r in &[0.1, 0.5, 0.9] {
            assert_eq!(g.omega(r), 1.0);
            assert_eq!(g.omega_prime(r), 0.0);
        }
        // Energy coefficient degenerates to the plain 4π of the Dirichlet
        // integral in t.
        assert!((g.energy_coeff(3.7) - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn push_divides_out_gauge_factor() {
        // u ≡ ω on an annulus pushes to w ≡ 1 there.
        let g = GaugeTransform::gauge_b(-0.1875).unwrap();
        let u = profiles::RadialProfile::closed(
            Frame::U,
            (0.2, 0.7),
            vec![],
            Arc::new(move |r: f64| g.omega(r)),
            Arc::new(move |r: f64| g.omega_prime(r)),
            None,
        );
        let w = push(&u, g).unwrap();
        let (t_lo, t_hi) = w.support();
        for i in 1..40 {
            let t = t_lo + (t_hi - t_lo) * i as f64 / 40.0;
            assert!((w.eval(t) - 1.0).abs() < 1e-12, "w({t}) = {}", w.eval(t));
        }
    }

    #[test]
    fn push_with_trivial_gauge_factor_is_composition() {
        // For gauge B at μ = 0 the push is just w(t) = u(e^{−t/2}).
        let g = GaugeTransform::gauge_b(0.0).unwrap();
        let u = profiles::random_profile(11, Frame::U, profiles::Smoothness::SmoothBumpSum);
        let w = push(&u, g).unwrap();
        for i in 0..60 {
            let t = 0.1 + 0.2 * i as f64;
            assert!((w.eval(t) - u.eval((-t / 2.0f64).exp())).abs() < 1e-13);
        }
    }

    #[test]
    fn push_pull_round_trip() {
        for gauge in [
            GaugeTransform::gauge_b(0.75).unwrap(),
            GaugeTransform::gauge_b(-0.1875).unwrap(),
            GaugeTransform::gauge_c(),
            GaugeTransform::gauge_a(1.0, -0.25).unwrap(),
        ] {
            let u = profiles::random_profile(99, Frame::U, profiles::Smoothness::SmoothBumpSum);
            let w = push(&u, gauge).unwrap();
            let back = pull(&w).unwrap();
            let (lo, hi) = u.support();
            for i in 1..50 {
                let r = lo + (hi - lo) * i as f64 / 50.0;
                let a = u.eval(r);
                let b = back.eval(r);
                assert!(
                    (a - b).abs() <= 1e-10 * a.abs().max(1.0),
                    "round trip at r = {r}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn h0_pushes_to_plain_cutoff_in_gauge_c() {
        // h₀ = (−ln r)^{1/2} η₀(2r) divided by ω = (−ln r)^{1/2} leaves the
        // cutoff composed with r(t); the oracle composes the closed forms.
        let h0 = profiles::h0_profile();
        let g = GaugeTransform::gauge_c();
        let w = push(&h0, g).unwrap();
        for i in 0..80 {
            let t = 0.05 + i as f64 * 0.05;
            let r = (-t.exp_m1() / 2.0f64).exp();
            let oracle = profiles::eta0(2.0 * r);
            assert!(
                (w.eval(t) - oracle).abs() < 1e-12,
                "t = {t}: {} vs {oracle}",
                w.eval(t)
            );
            assert!(w.eval(t) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn identity_residual_is_exactly_zero() {
        let u = profiles::random_profile(5, Frame::U, profiles::Smoothness::PiecewiseLinear);
        let res = energy_identity_residual(&u, GaugeTransform::identity(), 0.0, &cfg()).unwrap();
        assert_eq!(res, 0.0);
    }

    #[test]
    fn residual_small_for_smooth_bumps_all_gauges() {
        for (gauge, mu) in [
            (GaugeTransform::gauge_b(0.0).unwrap(), 0.0),
            (GaugeTransform::gauge_b(0.75).unwrap(), 0.75),
            (GaugeTransform::gauge_b(-0.1875).unwrap(), -0.1875),
            (GaugeTransform::gauge_c(), -0.25),
            (GaugeTransform::gauge_a(1.0, -0.25).unwrap(), -0.25),
            (GaugeTransform::gauge_a(0.0, 0.75).unwrap(), 0.75),
        ] {
            for seed in 0..20u64 {
                let u = profiles::random_profile(
                    1000 + seed,
                    Frame::U,
                    profiles::Smoothness::SmoothBumpSum,
                );
                let res = energy_identity_residual(&u, gauge, mu, &cfg()).unwrap();
                assert!(
                    res < 1e-6,
                    "{:?} mu={mu} seed={seed}: residual {res}",
                    gauge.kind
                );
            }
        }
    }

    #[test]
    fn residual_rejects_mismatched_mu() {
        let u = profiles::random_profile(5, Frame::U, profiles::Smoothness::SmoothBumpSum);
        let g = GaugeTransform::gauge_b(0.5).unwrap();
        assert!(matches!(
            energy_identity_residual(&u, g, 0.0, &cfg()),
            Err(LabError::GaugeMismatch(_))
        ));
        assert!(matches!(
            energy_identity_residual(&u, GaugeTransform::gauge_c(), 0.0, &cfg()),
            Err(LabError::GaugeMismatch(_))
        ));
    }
}
