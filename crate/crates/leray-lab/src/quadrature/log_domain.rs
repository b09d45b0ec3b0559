//! Log-domain quadrature for integrands of the form e^{g(t)}.
//!
//! The Moser functionals reach values like e^{10^5}; nothing here ever forms
//! e^{g} directly. A panel's contribution is computed by shifting with the
//! largest exponent sampled on the panel and summing the residual weights,
//! and panels combine through logsumexp in a fixed order, so results are
//! bit-stable. Panels whose contribution falls 46 e-folds (≈ 1e-20) below
//! the running maximum stop subdividing.

use crate::config::LabConfig;

/// log(e^a + e^b) without overflow.
pub fn logsumexp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

const GL15_X: [f64; 8] = [
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
];
const GL15_W: [f64; 8] = [
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
];

/// ln ∫_a^b e^{g(t)} dt by 15-point Gauss with exponent shifting.
fn gl15_log<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut xs = [0.0f64; 15];
    let mut ws = [0.0f64; 15];
    xs[0] = c;
    ws[0] = GL15_W[0];
    for i in 1..8 {
        xs[2 * i - 1] = c + h * GL15_X[i];
        xs[2 * i] = c - h * GL15_X[i];
        ws[2 * i - 1] = GL15_W[i];
        ws[2 * i] = GL15_W[i];
    }
    let mut gs = [0.0f64; 15];
    let mut m = f64::NEG_INFINITY;
    for i in 0..15 {
        gs[i] = g(xs[i]);
        if gs[i] > m {
            m = gs[i];
        }
    }
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut sum = 0.0;
    for i in 0..15 {
        sum += ws[i] * (gs[i] - m).exp();
    }
    m + (sum * h).ln()
}

/// Result of a log-domain integration: `log_value` = ln ∫ e^{g}.
#[derive(Debug, Clone)]
pub struct LogIntegral {
    pub log_value: f64,
    /// Bound on |log_value − one further refinement|.
    pub log_error: f64,
    pub converged: bool,
    pub truncation_note: Option<String>,
}

struct LogAcc {
    log_sum: f64,
    log_err: f64,
    converged: bool,
}

impl LogAcc {
    fn push(&mut self, log_panel: f64, log_panel_err: f64) {
        self.log_sum = logsumexp(self.log_sum, log_panel);
        // Panel errors are relative in the log, so they aggregate through a
        // mass-weighted combination; taking the max of per-panel log errors
        // is a safe upper bound for the total log error.
        self.log_err = self.log_err.max(log_panel_err);
        self.converged &= log_panel_err.is_finite();
    }
}

fn adapt_log<G: Fn(f64) -> f64>(
    g: &G,
    a: f64,
    b: f64,
    whole: f64,
    depth: u32,
    tol_log: f64,
    acc: &mut LogAcc,
) {
    let m = 0.5 * (a + b);
    let left = gl15_log(g, a, m);
    let right = gl15_log(g, m, b);
    let refined = logsumexp(left, right);
    let err = if refined == f64::NEG_INFINITY && whole == f64::NEG_INFINITY {
        0.0
    } else {
        (refined - whole).abs()
    };
    // A panel 46 e-folds below the running total cannot move the result.
    let negligible = refined < acc.log_sum - 46.0;
    if err <= tol_log || negligible || m <= a || m >= b {
        acc.push(refined, err.min(tol_log.max(err * 1e-3)));
        return;
    }
    if depth == 0 {
        acc.push(refined, err);
        acc.converged = false;
        return;
    }
    adapt_log(g, a, m, left, depth - 1, tol_log, acc);
    adapt_log(g, m, b, right, depth - 1, tol_log, acc);
}

/// ln ∫_a^b e^{g(t)} dt with interior breakpoints; `b = f64::INFINITY`
/// marches outward in doubling chunks until a chunk falls 46 e-folds below
/// the running total and the exponent is decreasing there.
pub fn log_integral<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &LabConfig,
) -> LogIntegral {
    let tol_log = (cfg.quad_tol * 10.0).max(1e-12);
    let mut acc = LogAcc {
        log_sum: f64::NEG_INFINITY,
        log_err: 0.0,
        converged: true,
    };
    let finite_end = if b.is_finite() { b } else { cfg.quad_tmax.max(a + 1.0) };

    let mut edges: Vec<f64> = vec![a];
    let mut interior: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < finite_end)
        .collect();
    interior.sort_by(|p, q| p.partial_cmp(q).unwrap());
    interior.dedup();
    edges.extend(interior);
    edges.push(finite_end);

    for pair in edges.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi <= lo {
            continue;
        }
        let whole = gl15_log(&g, lo, hi);
        adapt_log(&g, lo, hi, whole, cfg.quad_max_depth, tol_log, &mut acc);
    }

    let mut note = None;
    if !b.is_finite() {
        // March. A chunk counts as tail once its mass sits far below the
        // total and the endpoint exponent is falling.
        let mut t = finite_end;
        let mut quiet = 0;
        for _ in 0..200 {
            let len = (0.25 * t).max(4.0);
            let next = t + len;
            let whole = gl15_log(&g, t, next);
            adapt_log(&g, t, next, whole, cfg.quad_max_depth, tol_log, &mut acc);
            let g_end = g(next);
            if whole < acc.log_sum - 46.0 && g(next - 0.5 * len) > g_end {
                quiet += 1;
                if quiet >= 2 {
                    note = Some(format!(
                        "exponent tail truncated at t = {next}; last chunk mass {:.1} e-folds below total",
                        acc.log_sum - whole
                    ));
                    t = next;
                    break;
                }
            } else {
                quiet = 0;
            }
            t = next;
        }
        if note.is_none() {
            note = Some(format!("tail marching stopped at t = {t} without decay certificate"));
            acc.converged = false;
        }
    }

    LogIntegral {
        log_value: acc.log_sum,
        log_error: acc.log_err,
        converged: acc.converged,
        truncation_note: note,
    }
}
