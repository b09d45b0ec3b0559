//! Integration machinery: adaptive Gauss panels with honest error
//! estimates, log-domain evaluation of exponentially exploding integrands,
//! the energy functionals built on both, the Maz'ya ℬ-constant, and the
//! remainder-inequality ratios.

mod functionals;
mod log_domain;
mod mazya;
mod panels;
mod remainder;

pub use functionals::{deficit, moser, norm_v_mu, EnergyReport};
pub use log_domain::{log_integral, logsumexp, LogIntegral};
pub use mazya::{mazya_b, MazyaReport, MeasurePair};
pub use panels::{integrate, integrate_tail, DecayBound, QuadResult};
pub use remainder::{remainder_ratio, RatioReport, RemainderVariant};
