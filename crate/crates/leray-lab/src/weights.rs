//! Singular radial weights on the unit disk.
//!
//! Every potential here depends on the radius alone and blows up at r = 0,
//! at r = 1, or both. Internally each weight is kept in the factored form
//!
//! ```text
//!   W(r) = P(ℓ) / r²,      ℓ = ln(1/r),
//! ```
//!
//! because that is what the gauge frames consume: the 1/r² cancels against
//! the area element and the coordinate Jacobian, so downstream quadrature
//! never forms the raw singularity (and never underflows r itself).
//!
//! The catalogue:
//!
//! * `LerayQuarter`    — 1 / (4 r² ln(1/r)²), the weight whose coefficient
//!   1/4 is critical at both r = 0 and r = 1.
//! * `LerayNormalized` — 4 × the above; the density of the μ-norm.
//! * `WangYe`          — (1 − r²)^{-2}, regular at the origin.
//! * `Tintarev`        — LerayQuarter / max(√ln(1/r), 1).
//! * `PsaradakisSpector` — 1 / (4 r² (1 − ln r)²), decreasing on (0, 1].
//! * `Remainder2`      — 1 / (r² ln(1/r)² (1 + |ln ln(1/r)|)²).
//! * `RemainderQ(q)`   — 1 / (r² [ln(1/r)(1 + |ln ln(1/r)|)]^{1+q/2}).
//! * `IteratedLogSeries(K)` — (1/4) r^{-2} Σ_{i=2}^K Π_{j=1}^i X_j(r)².
//! * `Custom`          — tabulated, interpolated linearly in ln ln(1/r).

use crate::error::LabError;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Chain of iterated-log values X₁(r), …, X_k(r) with
/// X₁(r) = 1/ln(e/r) and X_k = X₁ ∘ X_{k−1}. Each value lies in (0, 1]
/// for r ∈ (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct IterChain {
    pub values: Vec<f64>,
}

impl IterChain {
    pub fn depth(&self) -> usize {
        self.values.len()
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("depth >= 1")
    }
}

/// X₁(r) = (ln(e/r))^{-1} = 1/(1 − ln r).
fn x1(r: f64) -> f64 {
    1.0 / (1.0 - r.ln())
}

/// Evaluate the chain X₁(r), …, X_k(r).
pub fn iterated_log(k: u32, r: f64) -> Result<IterChain> {
    if k < 1 {
        return Err(LabError::domain("iterated_log requires k >= 1"));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(LabError::domain(format!(
            "iterated_log requires r in (0,1], got {r}"
        )));
    }
    let mut values = Vec::with_capacity(k as usize);
    let mut x = x1(r);
    values.push(x);
    for _ in 1..k {
        x = x1(x);
        values.push(x);
    }
    Ok(IterChain { values })
}

/// Remainder-series weight (1/4) r^{-2} Σ_{i=2}^K Π_{j=1}^i X_j(r)².
/// Partial sums are nondecreasing in K.
pub fn remainder_series_weight(r: f64, k_terms: u32) -> Result<f64> {
    if k_terms < 2 {
        return Err(LabError::domain("remainder series requires K >= 2"));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(LabError::domain(format!(
            "remainder series defined on (0,1), got r = {r}"
        )));
    }
    Ok(series_sum(r, k_terms) / (4.0 * r * r))
}

/// Σ_{i=2}^K Π_{j=1}^i X_j(r)², the dimensionless part of the series weight.
fn series_sum(r: f64, k_terms: u32) -> f64 {
    let mut x = x1(r);
    let mut prod = x * x;
    let mut sum = 0.0;
    for _ in 2..=k_terms {
        x = x1(x);
        prod *= x * x;
        sum += prod;
    }
    sum
}

/// Tabulated weight, stored against y = ln ln(1/r), where every weight in
/// this catalogue is monotone-friendly. Strictly increasing y, linear
/// interpolation, no extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomTable {
    /// Knots in the y = ln ln(1/r) frame, strictly increasing.
    pub y: Vec<f64>,
    /// Weight values at the knots.
    pub v: Vec<f64>,
}

impl CustomTable {
    /// Build from (r, value) pairs with strictly increasing r in (0, 1).
    pub fn from_radii(pairs: &[(f64, f64)]) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(LabError::domain("custom table needs at least 2 knots"));
        }
        let mut y = Vec::with_capacity(pairs.len());
        let mut v = Vec::with_capacity(pairs.len());
        // y(r) = ln ln(1/r) is strictly decreasing in r, so reverse.
        for &(r, val) in pairs.iter().rev() {
            if !(r > 0.0 && r < 1.0) {
                return Err(LabError::domain("custom knots must lie in (0,1)"));
            }
            if val < 0.0 {
                return Err(LabError::domain("custom weights must be nonnegative"));
            }
            y.push((-r.ln()).ln());
            v.push(val);
        }
        if y.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabError::domain(
                "custom knots must be strictly increasing in r",
            ));
        }
        Ok(CustomTable { y, v })
    }

    fn eval_y(&self, y: f64) -> Result<f64> {
        let n = self.y.len();
        if y < self.y[0] || y > self.y[n - 1] {
            return Err(LabError::domain(format!(
                "custom table queried outside its hull (y = {y})"
            )));
        }
        let idx = match self.y.binary_search_by(|a| a.partial_cmp(&y).unwrap()) {
            Ok(i) => return Ok(self.v[i]),
            Err(i) => i - 1,
        };
        let (y0, y1) = (self.y[idx], self.y[idx + 1]);
        let s = (y - y0) / (y1 - y0);
        Ok(self.v[idx] * (1.0 - s) + self.v[idx + 1] * s)
    }
}

/// Which singular weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PotentialKind {
    LerayQuarter,
    LerayNormalized,
    WangYe,
    Tintarev,
    PsaradakisSpector,
    Remainder2,
    RemainderQ(f64),
    IteratedLogSeries(u32),
    Custom(CustomTable),
}

/// A named singular weight together with its radial domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    /// Admissible radii (lo, hi); hi_closed extends evaluation to r = hi.
    pub lo: f64,
    pub hi: f64,
    pub hi_closed: bool,
}

impl PotentialSpec {
    pub fn new(kind: PotentialKind) -> Self {
        // Only the Psaradakis–Spector weight stays finite at r = 1.
        let hi_closed = matches!(kind, PotentialKind::PsaradakisSpector);
        PotentialSpec {
            kind,
            lo: 0.0,
            hi: 1.0,
            hi_closed,
        }
    }

    pub fn leray_quarter() -> Self {
        Self::new(PotentialKind::LerayQuarter)
    }

    pub fn leray_normalized() -> Self {
        Self::new(PotentialKind::LerayNormalized)
    }

    pub fn v3() -> Self {
        Self::new(PotentialKind::PsaradakisSpector)
    }

    pub fn remainder2() -> Self {
        Self::new(PotentialKind::Remainder2)
    }

    pub fn remainder_q(q: f64) -> Result<Self> {
        if q <= 2.0 {
            return Err(LabError::domain("RemainderQ requires q > 2"));
        }
        Ok(Self::new(PotentialKind::RemainderQ(q)))
    }

    fn admits(&self, r: f64) -> bool {
        r > self.lo && (r < self.hi || (self.hi_closed && r == self.hi))
    }

    /// Weight value at radius r. The value +∞ is an explicit overflow flag:
    /// the true value exceeds the representable range (never silently
    /// clamped). Radii outside the domain are a `Domain` error.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !self.admits(r) {
            return Err(LabError::domain(format!(
                "potential evaluated at r = {r} outside ({}, {}{}",
                self.lo,
                self.hi,
                if self.hi_closed { "]" } else { ")" }
            )));
        }
        let ell = -r.ln(); // ln(1/r) > 0 on (0,1); 0 exactly at r = 1.
        let val = match &self.kind {
            PotentialKind::Custom(table) => {
                if ell <= 0.0 {
                    return Err(LabError::domain("custom table requires r < 1"));
                }
                table.eval_y(ell.ln())?
            }
            kind => p_of_ell(kind, ell) / (r * r),
        };
        debug_assert!(!val.is_nan());
        Ok(val)
    }

    /// P(ℓ) = W(r)·r² as a function of ℓ = ln(1/r). This is the form the
    /// gauge-frame mass densities use; it stays finite far beyond the radii
    /// where r itself underflows.
    pub fn p_of_ell(&self, ell: f64) -> Result<f64> {
        match &self.kind {
            PotentialKind::Custom(table) => {
                let v = table.eval_y(ell.ln())?;
                Ok(v * (-2.0 * ell).exp())
            }
            kind => Ok(p_of_ell(kind, ell)),
        }
    }

    /// Interior kinks of r ↦ W(r), as radii. Quadrature must break here.
    pub fn kinks(&self) -> Vec<f64> {
        match self.kind {
            // |ln ln(1/r)| is non-smooth at ln(1/r) = 1, i.e. r = 1/e.
            PotentialKind::Remainder2 | PotentialKind::RemainderQ(_) => {
                vec![(-1.0f64).exp()]
            }
            // max(√ln(1/r), 1) switches branch at r = 1/e.
            PotentialKind::Tintarev => vec![(-1.0f64).exp()],
            _ => Vec::new(),
        }
    }

    /// Same kinks in the ℓ = ln(1/r) variable.
    pub fn kinks_ell(&self) -> Vec<f64> {
        self.kinks().iter().map(|r| -r.ln()).collect()
    }

    /// Stable CLI/config name.
    pub fn name(&self) -> String {
        match &self.kind {
            PotentialKind::LerayQuarter => "leray".into(),
            PotentialKind::LerayNormalized => "leray4".into(),
            PotentialKind::WangYe => "v1".into(),
            PotentialKind::Tintarev => "v2".into(),
            PotentialKind::PsaradakisSpector => "v3".into(),
            PotentialKind::Remainder2 => "rem2".into(),
            PotentialKind::RemainderQ(q) => format!("remq:{q}"),
            PotentialKind::IteratedLogSeries(k) => format!("iterlog:{k}"),
            PotentialKind::Custom(_) => "custom".into(),
        }
    }
}

/// W(r)·r² as a function of ℓ = ln(1/r), for the closed-form kinds.
fn p_of_ell(kind: &PotentialKind, ell: f64) -> f64 {
    match kind {
        PotentialKind::LerayQuarter => 0.25 / (ell * ell),
        PotentialKind::LerayNormalized => 1.0 / (ell * ell),
        // (1 - r²)^{-2} r²; 1 - r² = -expm1(-2ℓ) keeps precision near r = 1.
        PotentialKind::WangYe => {
            let one_minus_r2 = -(-2.0 * ell).exp_m1();
            let r2 = (-2.0 * ell).exp();
            r2 / (one_minus_r2 * one_minus_r2)
        }
        PotentialKind::Tintarev => 0.25 / (ell * ell * ell.sqrt().max(1.0)),
        PotentialKind::PsaradakisSpector => {
            let d = 1.0 + ell;
            0.25 / (d * d)
        }
        PotentialKind::Remainder2 => {
            let corr = 1.0 + ell.ln().abs();
            1.0 / (ell * ell * corr * corr)
        }
        PotentialKind::RemainderQ(q) => {
            let base = ell * (1.0 + ell.ln().abs());
            base.powf(-(1.0 + q / 2.0))
        }
        PotentialKind::IteratedLogSeries(k) => {
            // ℓ = ln(1/r) ⇒ r = e^{-ℓ}; the X-chain needs r itself, and the
            // series is only used for radii where r is representable.
            let r = (-ell).exp();
            series_sum(r, *k) / 4.0
        }
        PotentialKind::Custom(_) => unreachable!("custom handled by caller"),
    }
}

impl FromStr for PotentialSpec {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "leray" => PotentialKind::LerayQuarter,
            "leray4" => PotentialKind::LerayNormalized,
            "v1" => PotentialKind::WangYe,
            "v2" => PotentialKind::Tintarev,
            "v3" => PotentialKind::PsaradakisSpector,
            "rem2" => PotentialKind::Remainder2,
            _ => {
                if let Some(q) = s.strip_prefix("remq:") {
                    let q: f64 = q
                        .parse()
                        .map_err(|_| LabError::domain(format!("bad q in '{s}'")))?;
                    if q <= 2.0 {
                        return Err(LabError::domain("remq requires q > 2"));
                    }
                    PotentialKind::RemainderQ(q)
                } else if let Some(k) = s.strip_prefix("iterlog:") {
                    let k: u32 = k
                        .parse()
                        .map_err(|_| LabError::domain(format!("bad K in '{s}'")))?;
                    if k < 2 {
                        return Err(LabError::domain("iterlog requires K >= 2"));
                    }
                    PotentialKind::IteratedLogSeries(k)
                } else {
                    return Err(LabError::domain(format!(
                        "unknown potential '{s}' (expected leray, leray4, v1, v2, v3, rem2, remq:<q>, iterlog:<K>)"
                    )));
                }
            }
        };
        Ok(PotentialSpec::new(kind))
    }
}

/// Free-function form used throughout the tests and the CLI.
pub fn eval_potential(spec: &PotentialSpec, r: f64) -> Result<f64> {
    spec.eval(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = std::f64::consts::E;

    /// Direct transcriptions of the defining formulas, kept deliberately
    /// independent of the P(ℓ) factorization used by the implementation.
    mod oracle {
        pub fn leray_quarter(r: f64) -> f64 {
            1.0 / (4.0 * r * r * (1.0 / r).ln().powi(2))
        }
        pub fn leray_normalized(r: f64) -> f64 {
            1.0 / (r * r * (1.0 / r).ln().powi(2))
        }
        pub fn wang_ye(r: f64) -> f64 {
            (1.0 - r * r).powi(-2)
        }
        pub fn tintarev(r: f64) -> f64 {
            leray_quarter(r) / (-r.ln()).sqrt().max(1.0)
        }
        pub fn v3(r: f64) -> f64 {
            1.0 / (4.0 * r * r * (1.0 - r.ln()).powi(2))
        }
        pub fn rem2(r: f64) -> f64 {
            let l = (1.0 / r).ln();
            1.0 / (r * r * l * l * (1.0 + l.ln().abs()).powi(2))
        }
        pub fn remq(r: f64, q: f64) -> f64 {
            let l = (1.0 / r).ln();
            1.0 / (r * r * (l * (1.0 + l.ln().abs())).powf(1.0 + q / 2.0))
        }
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn v3_at_one_is_quarter() {
        let v3 = PotentialSpec::v3();
        assert_eq!(v3.eval(1.0).unwrap(), 0.25);
    }

    #[test]
    fn leray_values_at_inverse_e() {
        // ln(1/r) = 1 and r² = e^{-2}, so the normalized weight is e².
        let r = 1.0 / E;
        let e2 = E * E;
        assert!(rel_err(PotentialSpec::leray_normalized().eval(r).unwrap(), e2) < 1e-15);
        assert!(rel_err(PotentialSpec::leray_quarter().eval(r).unwrap(), e2 / 4.0) < 1e-15);
        // Both log corrections equal 1 at r = 1/e.
        assert!(rel_err(PotentialSpec::remainder2().eval(r).unwrap(), e2) < 1e-15);
    }

    #[test]
    fn quarter_is_quarter_of_normalized_everywhere() {
        let q = PotentialSpec::leray_quarter();
        let n = PotentialSpec::leray_normalized();
        let mut r = 1e-10;
        while r < 1.0 {
            assert_eq!(q.eval(r).unwrap(), n.eval(r).unwrap() / 4.0);
            r *= 1.7;
        }
    }

    #[test]
    fn agrees_with_direct_formula_oracle() {
        let specs: Vec<(PotentialSpec, fn(f64) -> f64)> = vec![
            (PotentialSpec::leray_quarter(), oracle::leray_quarter),
            (PotentialSpec::leray_normalized(), oracle::leray_normalized),
            (PotentialSpec::new(PotentialKind::WangYe), oracle::wang_ye),
            (PotentialSpec::new(PotentialKind::Tintarev), oracle::tintarev),
            (PotentialSpec::v3(), oracle::v3),
            (PotentialSpec::remainder2(), oracle::rem2),
        ];
        for (spec, oracle_fn) in &specs {
            for i in 1..400 {
                let r = i as f64 / 400.0;
                if !(r > 0.0 && r < 1.0) {
                    continue;
                }
                let got = spec.eval(r).unwrap();
                assert!(
                    rel_err(got, oracle_fn(r)) < 1e-12,
                    "{} at r={r}: got {got}, oracle {}",
                    spec.name(),
                    oracle_fn(r)
                );
            }
        }
        let q = 4.0;
        let spec = PotentialSpec::remainder_q(q).unwrap();
        for i in 1..400 {
            let r = i as f64 / 400.0;
            assert!(rel_err(spec.eval(r).unwrap(), oracle::remq(r, q)) < 1e-12);
        }
    }

    #[test]
    fn v3_strictly_decreasing_on_unit_interval() {
        let v3 = PotentialSpec::v3();
        let n = 10_000;
        let mut prev = f64::INFINITY;
        for i in 1..=n {
            let r = i as f64 / n as f64;
            let val = v3.eval(r).unwrap();
            assert!(val < prev, "V3 not strictly decreasing at r = {r}");
            prev = val;
        }
    }

    #[test]
    fn normalized_limit_identity_pointwise() {
        // r² (ln 1/r)² · W(r) = 1 identically for the normalized weight,
        // exactly up to roundoff, including extreme radii.
        let n = PotentialSpec::leray_normalized();
        for &r in &[1e-300, 1e-100, 1e-10, 0.1, 0.5, 0.9, 0.999999, 1.0 - 1e-12] {
            let w = n.eval(r).unwrap();
            let product = w * r * r * (1.0f64 / r).ln().powi(2);
            assert!((product - 1.0).abs() < 1e-12, "r = {r}: {product}");
        }
    }

    #[test]
    fn overflow_is_flagged_not_wrapped() {
        // Deep in the corner the true value exceeds f64 range; the eval
        // reports +inf rather than clamping.
        let n = PotentialSpec::leray_normalized();
        let v = n.eval(1e-300).unwrap();
        assert!(v.is_finite());
        let v = n.eval(f64::MIN_POSITIVE).unwrap();
        assert!(v.is_infinite() && v > 0.0);
    }

    #[test]
    fn domain_errors_at_endpoints() {
        let n = PotentialSpec::leray_normalized();
        assert!(n.eval(0.0).is_err());
        assert!(n.eval(1.0).is_err());
        assert!(n.eval(-0.5).is_err());
        assert!(n.eval(1.5).is_err());
        // V3 is the one weight defined at the closed right endpoint.
        assert!(PotentialSpec::v3().eval(1.0).is_ok());
    }

    #[test]
    fn iterated_log_fixed_point_and_known_values() {
        // X₁(1) = 1/ln e = 1 and the recursion fixes 1.
        assert_eq!(iterated_log(1, 1.0).unwrap().last(), 1.0);
        assert_eq!(iterated_log(2, 1.0).unwrap().last(), 1.0);
        // ln(e/r) = e at r = e^{1-e}.
        let r = (1.0 - E).exp();
        assert!(rel_err(iterated_log(1, r).unwrap().last(), 1.0 / E) < 1e-14);
    }

    #[test]
    fn iterated_log_stays_in_unit_interval() {
        for &r in &[1e-12, 1e-3, 0.3, 0.9, 1.0] {
            let chain = iterated_log(8, r).unwrap();
            for (j, &x) in chain.values.iter().enumerate() {
                assert!(x > 0.0 && x <= 1.0, "X_{} ({r}) = {x}", j + 1);
            }
        }
    }

    #[test]
    fn iterated_log_rejects_bad_radii() {
        assert!(iterated_log(3, 0.0).is_err());
        assert!(iterated_log(3, 1.0 + 1e-12).is_err());
        assert!(iterated_log(0, 0.5).is_err());
    }

    #[test]
    fn series_weight_near_one_approaches_quarter() {
        // Every X_j(1) = 1, so at r → 1⁻ the K = 2 weight tends to
        // 0.25 · r^{-2} · 1 ≈ 0.25.
        let r = 1.0 - 1e-12;
        let w = remainder_series_weight(r, 2).unwrap();
        assert!((w - 0.25).abs() < 1e-9, "{w}");
    }

    #[test]
    fn series_weight_two_term_chain_oracle() {
        // Hand-evaluate the K = 2 chain through the recursion.
        let r = 1.0 / E;
        let x1v = 1.0 / (1.0 - r.ln()); // = 1/2
        assert!((x1v - 0.5).abs() < 1e-15);
        let x2v = 1.0 / (1.0 - x1v.ln());
        let expected = 0.25 / (r * r) * (x1v * x1v * x2v * x2v);
        let got = remainder_series_weight(r, 2).unwrap();
        assert!(rel_err(got, expected) < 1e-14);
    }

    #[test]
    fn series_weight_nondecreasing_in_k() {
        for &r in &[0.01, 0.3, 0.5, 0.77, 0.99] {
            let mut prev = 0.0;
            for k in 2..=8 {
                let w = remainder_series_weight(r, k).unwrap();
                assert!(w >= prev, "partial sums must grow with K (r={r}, K={k})");
                prev = w;
            }
        }
        // The spec'd spot check: K = 5 versus K = 4 at r = 0.5.
        let w5 = remainder_series_weight(0.5, 5).unwrap();
        let w4 = remainder_series_weight(0.5, 4).unwrap();
        assert!(w5 - w4 >= 0.0);
    }

    #[test]
    fn iterlog_series_as_potential_kind() {
        let spec = PotentialSpec::new(PotentialKind::IteratedLogSeries(3));
        let direct = remainder_series_weight(0.4, 3).unwrap();
        assert!(rel_err(spec.eval(0.4).unwrap(), direct) < 1e-14);
    }

    #[test]
    fn custom_table_interpolates_without_extrapolation() {
        let table = CustomTable::from_radii(&[(0.1, 3.0), (0.3, 2.0), (0.6, 1.0)]).unwrap();
        let spec = PotentialSpec {
            kind: PotentialKind::Custom(table),
            lo: 0.0,
            hi: 1.0,
            hi_closed: false,
        };
        assert!(rel_err(spec.eval(0.1).unwrap(), 3.0) < 1e-12);
        assert!(rel_err(spec.eval(0.6).unwrap(), 1.0) < 1e-12);
        let mid = spec.eval(0.2).unwrap();
        assert!(mid > 2.0 && mid < 3.0);
        assert!(spec.eval(0.05).is_err(), "no extrapolation below");
        assert!(spec.eval(0.7).is_err(), "no extrapolation above");
    }

    #[test]
    fn names_round_trip() {
        for name in ["leray", "leray4", "v1", "v2", "v3", "rem2", "remq:3.5", "iterlog:4"] {
            let spec: PotentialSpec = name.parse().unwrap();
            assert_eq!(spec.name(), name);
        }
        assert!("remq:1.0".parse::<PotentialSpec>().is_err());
        assert!("bogus".parse::<PotentialSpec>().is_err());
    }

    #[test]
    fn kinks_at_inverse_e() {
        let kinks = PotentialSpec::remainder2().kinks();
        assert_eq!(kinks.len(), 1);
        assert!(rel_err(kinks[0], 1.0 / E) < 1e-15);
    }
}
