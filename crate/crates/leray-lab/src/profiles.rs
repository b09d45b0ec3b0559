//! Radial trial and extremal profiles.
//!
//! A [`RadialProfile`] carries a radially symmetric function either in the
//! u-frame (argument r ∈ (0,1)) or in a gauge's w-frame (argument t). The
//! explicit families all have piecewise closed forms, so profiles hold value
//! and derivative closures plus the kink locations; the node grid is a
//! sampling used for finite-difference cross-checks and table output, never
//! for the quadrature itself.
//!
//! Families:
//!
//! * [`zeta_t1`] — the ramp C_{t₁}(t^{1−2τ₀} − 2^{1−2τ₀}) that saturates the
//!   normalized tail energy 𝒥_{t₁} = 1.
//! * [`moser_family`] — ν_μ n^{1/2−τ₀} ζ_{σ_μ}(t/n), unit gauge-B energy.
//! * [`cutoff_eta`] / [`wkappa_family`] — smooth plateau cutoffs and their
//!   normalized integrals, the μ = −1/4 blow-up family.
//! * [`plateau_family`] — √(n/4π)·min(t/n, 1), the off-center concentration
//!   family with t-energy exactly 1.
//! * [`concentrating_family`] — the two-piece t^{√(1+4μ)} family for
//!   μ ∈ (−1/4, 0), energy 1 + O(n^{−(1−2τ₀)}).
//! * [`h0_profile`] — (−ln r)^{1/2} η₀(2r), finite deficit but divergent
//!   Dirichlet energy.
//! * [`random_profile`] — seeded piecewise-linear or bump-sum profiles.

use crate::error::LabError;
use crate::rng::SplitMix64;
use crate::transforms::{constants_for, GaugeTransform};
use crate::Result;
use std::f64::consts::PI;
use std::sync::Arc;

/// Where an off-origin bump lives: `Offset` means the profile argument is
/// t = −2 ln(ρ/radius) with ρ the distance to `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum About {
    Origin,
    Offset { center: f64, radius: f64 },
}

/// Which frame the profile's argument lives in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frame {
    /// Radius r ∈ (0, 1).
    U,
    /// Gauge coordinate t; `shift` means the physical coordinate is
    /// t + shift (shifted gauge-B frames).
    W {
        gauge: GaugeTransform,
        shift: f64,
        about: About,
    },
}

/// Family name and parameters, carried for reporting and reproducibility.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMeta {
    pub name: String,
    pub params: Vec<(String, f64)>,
}

impl FamilyMeta {
    pub fn new(name: &str, params: &[(&str, f64)]) -> Self {
        FamilyMeta {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

type ValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Shape {
    Closed { f: ValueFn, df: ValueFn },
    PiecewiseLinear,
}

/// A radially symmetric trial function on a 1-D grid.
#[derive(Clone)]
pub struct RadialProfile {
    pub frame: Frame,
    nodes: Vec<f64>,
    values: Vec<f64>,
    shape: Shape,
    support: (f64, f64),
    deriv_support: (f64, f64),
    kinks: Vec<f64>,
    pub meta: Option<FamilyMeta>,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("frame", &self.frame)
            .field("support", &self.support)
            .field("nodes", &self.nodes.len())
            .field("meta", &self.meta)
            .finish()
    }
}

fn build_nodes(support: (f64, f64), kinks: &[f64]) -> Vec<f64> {
    let lo = support.0;
    let hi = if support.1.is_finite() {
        support.1
    } else {
        let k = kinks.iter().cloned().fold(lo, f64::max);
        (k.max(lo) + 1.0) * 1.5
    };
    let n = 256usize;
    let mut nodes: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    nodes.extend(kinks.iter().copied().filter(|&k| k > lo && k < hi));
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes.dedup();
    nodes
}

impl RadialProfile {
    /// Profile from closure value/derivative handles.
    pub fn closed(
        frame: Frame,
        support: (f64, f64),
        kinks: Vec<f64>,
        f: ValueFn,
        df: ValueFn,
        meta: Option<FamilyMeta>,
    ) -> Self {
        let nodes = build_nodes(support, &kinks);
        let values = nodes
            .iter()
            .map(|&x| {
                if x > support.0 && x < support.1 {
                    f(x)
                } else {
                    0.0
                }
            })
            .collect();
        RadialProfile {
            frame,
            nodes,
            values,
            shape: Shape::Closed { f, df },
            support,
            deriv_support: support,
            kinks,
            meta,
        }
    }

    /// Same, but the derivative is known to vanish beyond `deriv_support`
    /// (plateau families). Energy integrals then stay finite-interval.
    pub fn closed_with_plateau(
        frame: Frame,
        support: (f64, f64),
        deriv_support: (f64, f64),
        kinks: Vec<f64>,
        f: ValueFn,
        df: ValueFn,
        meta: Option<FamilyMeta>,
    ) -> Self {
        let mut p = Self::closed(frame, support, kinks, f, df, meta);
        p.deriv_support = deriv_support;
        p
    }

    /// Piecewise-linear profile through (nodes, values); values must vanish
    /// at the first and last node.
    pub fn piecewise_linear(
        frame: Frame,
        nodes: Vec<f64>,
        values: Vec<f64>,
        meta: Option<FamilyMeta>,
    ) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() < 2 {
            return Err(LabError::domain("piecewise profile needs matching grids"));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabError::domain("nodes must be strictly increasing"));
        }
        if values[0] != 0.0 || *values.last().unwrap() != 0.0 {
            return Err(LabError::domain("profile must vanish at support ends"));
        }
        let support = (nodes[0], *nodes.last().unwrap());
        Ok(RadialProfile {
            frame,
            kinks: nodes.clone(),
            nodes,
            values,
            shape: Shape::PiecewiseLinear,
            support,
            deriv_support: support,
            meta,
        })
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Interval outside which the derivative vanishes identically.
    pub fn deriv_support(&self) -> (f64, f64) {
        self.deriv_support
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at a point; identically 0 outside the support.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.support.0 || x >= self.support.1 {
            // Plateau families keep their value out to infinity.
            if x >= self.support.1 && self.support.1.is_infinite() {
            } else {
                return 0.0;
            }
        }
        match &self.shape {
            Shape::Closed { f, .. } => f(x),
            Shape::PiecewiseLinear => {
                let i = match self
                    .nodes
                    .binary_search_by(|a| a.partial_cmp(&x).unwrap())
                {
                    Ok(i) => return self.values[i],
                    Err(i) => i,
                };
                if i == 0 || i >= self.nodes.len() {
                    return 0.0;
                }
                let (x0, x1) = (self.nodes[i - 1], self.nodes[i]);
                let s = (x - x0) / (x1 - x0);
                self.values[i - 1] * (1.0 - s) + self.values[i] * s
            }
        }
    }

    /// Derivative at a point; 0 outside `deriv_support`.
    pub fn deriv(&self, x: f64) -> f64 {
        if x <= self.deriv_support.0 || x >= self.deriv_support.1 {
            return 0.0;
        }
        match &self.shape {
            Shape::Closed { df, .. } => df(x),
            Shape::PiecewiseLinear => {
                let i = match self
                    .nodes
                    .binary_search_by(|a| a.partial_cmp(&x).unwrap())
                {
                    Ok(i) => i.max(1),
                    Err(i) => i,
                };
                if i == 0 || i >= self.nodes.len() {
                    return 0.0;
                }
                (self.values[i] - self.values[i - 1]) / (self.nodes[i] - self.nodes[i - 1])
            }
        }
    }

    /// Copy re-anchored as a bump of given radius about an off-center point;
    /// the t-coordinate becomes −2 ln(ρ/radius).
    pub fn with_offset(&self, center: f64, radius: f64) -> Result<Self> {
        let Frame::W { gauge, shift, .. } = self.frame else {
            return Err(LabError::domain("offset profiles live in a w-frame"));
        };
        if !(radius > 0.0 && center > 0.0) || center + radius >= 1.0 || radius > center {
            return Err(LabError::Geometry(format!(
                "bump B_{radius}({center}) must sit inside the unit disk away from the origin"
            )));
        }
        let mut p = self.clone();
        p.frame = Frame::W {
            gauge,
            shift,
            about: About::Offset { center, radius },
        };
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// smooth cutoff building blocks
// ---------------------------------------------------------------------------

/// Quintic smoothstep 6x⁵ − 15x⁴ + 10x³ on [0,1]; C² when glued to the
/// constants 0 and 1.
pub fn smoothstep(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
    }
}

pub fn smoothstep_prime(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        30.0 * x * x * (1.0 - x) * (1.0 - x)
    }
}

/// ∫₀^x smoothstep = x⁶ − 3x⁵ + 2.5x⁴ on [0,1].
fn smoothstep_int(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        0.5
    } else {
        x.powi(4) * (2.5 + x * (-3.0 + x))
    }
}

/// ∫₀¹ smoothstep² = 181/462.
const SMOOTHSTEP_SQ_INT: f64 = 181.0 / 462.0;

/// η₀: 1 on |x| ≤ 1/2, quintic descent to 0 on 1/2 ≤ |x| ≤ 1.
pub fn eta0(x: f64) -> f64 {
    let a = x.abs();
    if a <= 0.5 {
        1.0
    } else if a >= 1.0 {
        0.0
    } else {
        smoothstep(2.0 * (1.0 - a))
    }
}

pub fn eta0_prime(x: f64) -> f64 {
    let a = x.abs();
    if a <= 0.5 || a >= 1.0 {
        0.0
    } else {
        -2.0 * smoothstep_prime(2.0 * (1.0 - a)) * x.signum()
    }
}

/// η_κ: 0 below 1, quintic rise on [1,2], 1 on [2, κ−1], quintic fall on
/// [κ−1, κ], 0 beyond.
pub fn eta_kappa(t: f64, kappa: f64) -> f64 {
    if t <= 1.0 || t >= kappa {
        0.0
    } else if t < 2.0 {
        smoothstep(t - 1.0)
    } else if t <= kappa - 1.0 {
        1.0
    } else {
        smoothstep(kappa - t)
    }
}

pub fn eta_kappa_prime(t: f64, kappa: f64) -> f64 {
    if t <= 1.0 || t >= kappa {
        0.0
    } else if t < 2.0 {
        smoothstep_prime(t - 1.0)
    } else if t <= kappa - 1.0 {
        0.0
    } else {
        -smoothstep_prime(kappa - t)
    }
}

/// ∫₁^x η_κ in closed form.
fn eta_kappa_int(x: f64, kappa: f64) -> f64 {
    if x <= 1.0 {
        0.0
    } else if x < 2.0 {
        smoothstep_int(x - 1.0)
    } else if x <= kappa - 1.0 {
        0.5 + (x - 2.0)
    } else if x < kappa {
        b1_kappa(kappa) - smoothstep_int(kappa - x)
    } else {
        b1_kappa(kappa)
    }
}

/// b₁(κ) = ∫₁^κ η_κ = κ − 2 for the quintic realization.
pub fn b1_kappa(kappa: f64) -> f64 {
    kappa - 2.0
}

/// b₂(κ) = √(4π ∫₁^κ η_κ²).
pub fn b2_kappa(kappa: f64) -> f64 {
    (4.0 * PI * (kappa - 3.0 + 2.0 * SMOOTHSTEP_SQ_INT)).sqrt()
}

// ---------------------------------------------------------------------------
// families
// ---------------------------------------------------------------------------

/// Ramp ζ_{t₁}(t) = C_{t₁}(t^{1−2τ₀} − 2^{1−2τ₀}) on [2, t₁], constant
/// beyond, with C_{t₁} = (t₁^{1−2τ₀} − 2^{1−2τ₀})^{−1/2}; this normalizes
/// 𝒥_{t₁}(ζ) = (1−2τ₀)^{−1} ∫₂^∞ ζ′² t^{2τ₀} dt to exactly 1.
pub fn zeta_t1(t1: f64, tau0: f64) -> Result<RadialProfile> {
    if !(t1 > 2.0) {
        return Err(LabError::domain("zeta_t1 requires t1 > 2"));
    }
    if !(tau0 < 0.5) {
        return Err(LabError::domain("zeta_t1 requires tau0 < 1/2"));
    }
    let mu = tau0 * tau0 - tau0;
    let gauge = GaugeTransform::gauge_b(mu)?;
    let pow = 1.0 - 2.0 * tau0;
    let base = 2.0f64.powf(pow);
    let c = (t1.powf(pow) - base).powf(-0.5);
    let top = c * (t1.powf(pow) - base);
    let f = move |t: f64| {
        if t <= 2.0 {
            0.0
        } else if t < t1 {
            c * (t.powf(pow) - base)
        } else {
            top
        }
    };
    let df = move |t: f64| {
        if t <= 2.0 || t >= t1 {
            0.0
        } else {
            c * pow * t.powf(pow - 1.0)
        }
    };
    Ok(RadialProfile::closed_with_plateau(
        Frame::W {
            gauge,
            shift: 0.0,
            about: About::Origin,
        },
        (2.0, f64::INFINITY),
        (2.0, t1),
        vec![2.0, t1],
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new("zeta-t1", &[("t1", t1), ("tau0", tau0)])),
    ))
}

/// ν_μ n^{1/2−τ₀} ζ_{σ_μ}(t/n) with ζ_σ(s) = s^σ below 1 and 1 beyond;
/// its gauge-B energy 2^{2−2τ₀} π ∫ w′² t^{2τ₀} dt equals 1 in closed form.
pub fn moser_family(n: u32, mu: f64) -> Result<RadialProfile> {
    if n < 2 {
        return Err(LabError::domain("moser family requires n >= 2"));
    }
    if mu <= -0.25 {
        return Err(LabError::domain("moser family requires mu > -1/4"));
    }
    let c = constants_for(mu)?;
    let gauge = GaugeTransform::gauge_b(mu)?;
    let nu = c.nu.expect("mu > -1/4");
    let nf = n as f64;
    let amp = nu * nf.powf(0.5 - c.tau0);
    let sigma = c.sigma;
    let f = move |t: f64| {
        if t <= 0.0 {
            0.0
        } else if t < nf {
            amp * (t / nf).powf(sigma)
        } else {
            amp
        }
    };
    let df = move |t: f64| {
        if t <= 0.0 || t >= nf {
            0.0
        } else {
            amp * sigma * (t / nf).powf(sigma - 1.0) / nf
        }
    };
    Ok(RadialProfile::closed_with_plateau(
        Frame::W {
            gauge,
            shift: 0.0,
            about: About::Origin,
        },
        (0.0, f64::INFINITY),
        (0.0, nf),
        vec![nf],
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new("moser", &[("n", nf), ("mu", mu)])),
    ))
}

/// The smooth cutoff η_κ itself as a gauge-C profile.
pub fn cutoff_eta(kappa: f64) -> Result<RadialProfile> {
    if !(kappa > 4.0) {
        return Err(LabError::domain("cutoff requires kappa > 4"));
    }
    let f = move |t: f64| eta_kappa(t, kappa);
    let df = move |t: f64| eta_kappa_prime(t, kappa);
    Ok(RadialProfile::closed(
        Frame::W {
            gauge: GaugeTransform::gauge_c(),
            shift: 0.0,
            about: About::Origin,
        },
        (1.0, kappa),
        vec![1.0, 2.0, kappa - 1.0, kappa],
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new("eta", &[("kappa", kappa)])),
    ))
}

/// w_κ(t) = b₂(κ)^{−1} ∫₀^t (η_κ(s) − η_κ(s − 2κ)) ds: rises to the plateau
/// b₁/b₂ on [κ, 2κ], descends back to 0 by 3κ. Its gauge-C energy is
/// strictly below 1.
pub fn wkappa_family(kappa: f64) -> Result<RadialProfile> {
    if !(kappa > 4.0) {
        return Err(LabError::domain("wkappa requires kappa > 4"));
    }
    let b2 = b2_kappa(kappa);
    let f = move |t: f64| (eta_kappa_int(t, kappa) - eta_kappa_int(t - 2.0 * kappa, kappa)) / b2;
    let df = move |t: f64| (eta_kappa(t, kappa) - eta_kappa(t - 2.0 * kappa, kappa)) / b2;
    let kinks = vec![
        1.0,
        2.0,
        kappa - 1.0,
        kappa,
        2.0 * kappa + 1.0,
        2.0 * kappa + 2.0,
        3.0 * kappa - 1.0,
        3.0 * kappa,
    ];
    Ok(RadialProfile::closed(
        Frame::W {
            gauge: GaugeTransform::gauge_c(),
            shift: 0.0,
            about: About::Origin,
        },
        (1.0, 3.0 * kappa),
        kinks,
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new("wkappa", &[("kappa", kappa)])),
    ))
}

/// Plateau concentration profile w_n(t) = √(n/4π) · min(t/n, 1).
///
/// The ramp is exactly the energy minimizer among profiles rising from
/// w(0) = 0 to the plateau at t = n, so the t-energy 4π ∫ w′² dt equals 1
/// identically — which is what pins the blow-up threshold of the off-center
/// Moser functional at 4π. Any variant vanishing on an initial segment
/// [0, cn] is forced above energy 1/(1−c) by Cauchy–Schwarz and shifts the
/// apparent threshold to 4π/(1−c).
pub fn plateau_family(n: u32) -> Result<RadialProfile> {
    if n < 8 {
        return Err(LabError::domain("plateau family requires n >= 8"));
    }
    let nf = n as f64;
    let amp = (nf / (4.0 * PI)).sqrt();
    let f = move |t: f64| {
        if t <= 0.0 {
            0.0
        } else if t < nf {
            amp * t / nf
        } else {
            amp
        }
    };
    let df = move |t: f64| if t > 0.0 && t < nf { amp / nf } else { 0.0 };
    Ok(RadialProfile::closed_with_plateau(
        Frame::W {
            gauge: GaugeTransform::gauge_b(0.0)?,
            shift: 0.0,
            about: About::Origin,
        },
        (0.0, f64::INFINITY),
        (0.0, nf),
        vec![nf],
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new("plateau", &[("n", nf)])),
    ))
}

/// Two-piece concentrating family for μ ∈ (−1/4, 0): a linear segment below
/// t = 1 glued to ν₀ n^{1/2−τ₀} (t/n)^{√(1+4μ)}, plateau beyond t = n, in a
/// gauge-B frame shifted by t_ε. With t_ε = 0 the shifted energy is exactly
/// 1 + [4τ₀²/(1−4τ₀²)]·n^{−(1−2τ₀)}.
pub fn concentrating_family(n: u32, mu: f64, t_eps: f64) -> Result<RadialProfile> {
    if n < 2 {
        return Err(LabError::domain("concentrating family requires n >= 2"));
    }
    if !(mu > -0.25 && mu < 0.0) {
        return Err(LabError::domain(
            "concentrating family requires mu in (-1/4, 0)",
        ));
    }
    if t_eps < 0.0 {
        return Err(LabError::domain("t_eps must be nonnegative"));
    }
    let c = constants_for(mu)?;
    let gauge = GaugeTransform::gauge_b(mu)?;
    let nu = c.nu.expect("mu > -1/4");
    let nf = n as f64;
    let amp = nu * nf.powf(0.5 - c.tau0);
    let sigma = c.sigma;
    let slope = amp * nf.powf(-sigma); // amp·ζ(1/n), the linear piece slope
    let f = move |t: f64| {
        if t <= 0.0 {
            0.0
        } else if t < 1.0 {
            slope * t
        } else if t < nf {
            amp * (t / nf).powf(sigma)
        } else {
            amp
        }
    };
    let df = move |t: f64| {
        if t <= 0.0 || t >= nf {
            0.0
        } else if t < 1.0 {
            slope
        } else {
            amp * sigma * (t / nf).powf(sigma - 1.0) / nf
        }
    };
    Ok(RadialProfile::closed_with_plateau(
        Frame::W {
            gauge,
            shift: t_eps,
            about: About::Origin,
        },
        (0.0, f64::INFINITY),
        (0.0, nf),
        vec![1.0, nf],
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new(
            "conc",
            &[("n", nf), ("mu", mu), ("t_eps", t_eps)],
        )),
    ))
}

/// h₀(r) = (−ln r)^{1/2} η₀(2r): identically (−ln r)^{1/2} below r = 1/4,
/// supported in r ≤ 1/2. Finite μ = −1/4 deficit, divergent Dirichlet
/// integral.
pub fn h0_profile() -> RadialProfile {
    let f = |r: f64| (-r.ln()).sqrt() * eta0(2.0 * r);
    let df = |r: f64| {
        let l = -r.ln();
        -0.5 * l.powf(-0.5) / r * eta0(2.0 * r) + l.sqrt() * 2.0 * eta0_prime(2.0 * r)
    };
    RadialProfile::closed(
        Frame::U,
        (0.0, 0.5),
        vec![0.25, 0.5],
        Arc::new(f),
        Arc::new(df),
        Some(FamilyMeta::new("h0", &[])),
    )
}

/// Smoothness class for seeded random profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothness {
    PiecewiseLinear,
    SmoothBumpSum,
}

fn default_support(frame: &Frame, rng: &mut SplitMix64) -> (f64, f64) {
    match frame {
        Frame::U => {
            let lo = rng.in_range(0.04, 0.25);
            let hi = (lo + rng.in_range(0.2, 0.6)).min(0.93);
            (lo, hi)
        }
        Frame::W { gauge, .. } => {
            let (t0, _) = gauge.t_domain();
            let lo = t0 + rng.in_range(0.3, 2.0);
            let hi = lo + rng.in_range(1.0, 8.0);
            (lo, hi)
        }
    }
}

/// Seeded reproducible profile with compact support strictly inside the
/// frame's domain; zero at both support endpoints; same seed, same bits.
pub fn random_profile(seed: u64, frame: Frame, smoothness: Smoothness) -> RadialProfile {
    let mut rng = SplitMix64::new(seed);
    let support = default_support(&frame, &mut rng);
    random_in(&mut rng, seed, frame, smoothness, support, None)
}

/// Same, with the support prescribed (e.g. inside B_{1/4}).
pub fn random_profile_in(
    seed: u64,
    frame: Frame,
    smoothness: Smoothness,
    support: (f64, f64),
) -> RadialProfile {
    let mut rng = SplitMix64::new(seed);
    random_in(&mut rng, seed, frame, smoothness, support, None)
}

/// Bump-sum profile with a prescribed bump count (0 gives the zero profile).
pub fn random_bump_sum(seed: u64, frame: Frame, bumps: usize) -> RadialProfile {
    let mut rng = SplitMix64::new(seed);
    let support = default_support(&frame, &mut rng);
    random_in(
        &mut rng,
        seed,
        frame,
        Smoothness::SmoothBumpSum,
        support,
        Some(bumps),
    )
}

fn random_in(
    rng: &mut SplitMix64,
    seed: u64,
    frame: Frame,
    smoothness: Smoothness,
    support: (f64, f64),
    bump_count: Option<usize>,
) -> RadialProfile {
    let (lo, hi) = support;
    let meta = Some(FamilyMeta::new("random", &[("seed", seed as f64)]));
    match smoothness {
        Smoothness::PiecewiseLinear => {
            let k = rng.int_in(3, 9);
            let mut interior: Vec<f64> = (0..k).map(|_| rng.in_range(0.0, 1.0)).collect();
            interior.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut nodes = vec![lo];
            for u in interior {
                let x = lo + (hi - lo) * (0.05 + 0.9 * u);
                if x - nodes.last().unwrap() > 1e-3 * (hi - lo) {
                    nodes.push(x);
                }
            }
            nodes.push(hi);
            let mut values = vec![0.0];
            for _ in 1..nodes.len() - 1 {
                values.push(rng.in_range(0.1, 1.0));
            }
            values.push(0.0);
            RadialProfile::piecewise_linear(frame, nodes, values, meta)
                .expect("construction is valid by design")
        }
        Smoothness::SmoothBumpSum => {
            let n_bumps = bump_count.unwrap_or_else(|| rng.int_in(1, 4));
            let mut bumps: Vec<(f64, f64, f64)> = Vec::with_capacity(n_bumps);
            for _ in 0..n_bumps {
                let c = rng.in_range(lo + 0.15 * (hi - lo), hi - 0.15 * (hi - lo));
                let w_max = (c - lo).min(hi - c) * 0.95;
                let w = rng.in_range(0.3 * w_max, w_max);
                let a = rng.in_range(0.2, 1.0);
                bumps.push((a, c, w));
            }
            let bumps2 = bumps.clone();
            // (1 − x²)³ bump: C² and compactly supported.
            let f = move |x: f64| {
                bumps
                    .iter()
                    .map(|&(a, c, w)| {
                        let s = (x - c) / w;
                        if s.abs() < 1.0 {
                            a * (1.0 - s * s).powi(3)
                        } else {
                            0.0
                        }
                    })
                    .sum::<f64>()
            };
            let df = move |x: f64| {
                bumps2
                    .iter()
                    .map(|&(a, c, w)| {
                        let s = (x - c) / w;
                        if s.abs() < 1.0 {
                            -6.0 * a * s * (1.0 - s * s).powi(2) / w
                        } else {
                            0.0
                        }
                    })
                    .sum::<f64>()
            };
            RadialProfile::closed(frame, support, vec![], Arc::new(f), Arc::new(df), meta)
        }
    }
}
