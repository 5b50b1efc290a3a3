//! Excursions away from the single cube and the statistics of large ones.

mod log;
mod stats;

pub use log::{decompose, Exceedance, ExcursionLog, ExcursionTracker};
pub use stats::{
    count_match, dispersion_index, eta_hat, exceedance_process, exchangeability_test, growth_bound_report,
    kolmogorov_critical, kolmogorov_q, ks_exponential, poisson_test, poisson_test_gaps, wilson_interval,
    CountMatch, EtaEstimate, ExceedanceProcess, ExchangeabilityReport, GrowthReport, GrowthRow, PoissonReport,
    TestStatus,
};
