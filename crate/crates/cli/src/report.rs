//! Plain-text and CSV summaries of an excursion log.

use std::fmt::Write as _;

use anyhow::Result;

use clump_core::excursions::{
    count_match, eta_hat, exceedance_process, exchangeability_test, growth_bound_report, poisson_test, EtaEstimate,
    ExcursionLog, GrowthReport, PoissonReport,
};
use clump_core::KAPPA;

/// Smallest sample for which the KS verdict is reported as pass or fail.
pub const MIN_KS_SAMPLE: usize = 30;

#[derive(Clone, Debug)]
pub struct ThresholdRow {
    pub full: EtaEstimate,
    /// Estimated on the first half of the log.
    pub first_half: Option<EtaEstimate>,
    /// Tested on the second half with the first-half rescaling.
    pub poisson: Option<PoissonReport>,
    pub match_fraction: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ExcursionReport {
    pub excursions: usize,
    pub mu: f64,
    pub t_end: f64,
    pub rows: Vec<ThresholdRow>,
    pub growth: GrowthReport,
    pub exchangeability_p: f64,
}

pub fn excursion_report(log: &ExcursionLog, beta: f64, alpha: f64, level: f64, seed: u64) -> Result<ExcursionReport> {
    let mu = log.mu_hat()?;
    let (first, second) = log.halves();
    let mut rows = Vec::new();
    for &t in &log.thresholds {
        let full = eta_hat(log, t, level)?;
        let first_half = eta_hat(&first, t, level).ok();
        let (poisson, match_fraction) = match &first_half {
            Some(e) if e.is_finite() => {
                let p = exceedance_process(&second, e)?;
                let m = count_match(&second, e, 1.0)?;
                let frac = (m.windows > 0).then(|| m.fraction());
                (Some(poisson_test(&p, alpha, MIN_KS_SAMPLE)), frac)
            }
            _ => (None, None),
        };
        rows.push(ThresholdRow {
            full,
            first_half,
            poisson,
            match_fraction,
        });
    }
    let estimates: Vec<EtaEstimate> = rows.iter().map(|r| r.full.clone()).collect();
    let growth = growth_bound_report(&estimates, beta, KAPPA, 0.25);
    let ex = exchangeability_test(&log.xi, 199, 100_000, seed);
    Ok(ExcursionReport {
        excursions: log.count(),
        mu,
        t_end: log.t_end,
        rows,
        growth,
        exchangeability_p: ex.p_value,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into())
}

impl ExcursionReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "excursions {}  mu {:.6}  horizon {:.3}", self.excursions, self.mu, self.t_end);
        let _ = writeln!(
            s,
            "{:>4} {:>8} {:>12} {:>14} {:>10} {:>6} {:>10} {:>10} {:>8} {:>8}",
            "T", "count", "tail", "eta", "root", "ks_n", "ks_stat", "ks_p", "verdict", "match"
        );
        for r in &self.rows {
            let root = r.full.eta.powf(1.0 / r.full.threshold as f64);
            let (n, d, p, v) = match &r.poisson {
                Some(p) => (
                    p.n.to_string(),
                    format!("{:.6}", p.ks_statistic),
                    format!("{:.6}", p.p_value),
                    format!("{:?}", p.status),
                ),
                None => ("-".into(), "-".into(), "-".into(), "-".into()),
            };
            let _ = writeln!(
                s,
                "{:>4} {:>8} {:>12.6e} {:>14.4} {:>10.6} {:>6} {:>10} {:>10} {:>8} {:>8}",
                r.full.threshold,
                r.full.count,
                r.full.tail,
                r.full.eta,
                root,
                n,
                d,
                p,
                v,
                opt(r.match_fraction)
            );
        }
        let g = &self.growth;
        let _ = writeln!(
            s,
            "growth: reference 1/(kappa beta) = {:.6}, eta nondecreasing {}, largest T clears {:.0}% of reference {}, log10 slope {:.6}",
            g.reference,
            g.eta_nondecreasing,
            100.0 * (1.0 - g.tolerance),
            g.largest_passes(),
            g.log10_slope
        );
        let _ = writeln!(s, "exchangeability of maxima: permutation p = {:.4}", self.exchangeability_p);
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("T,count,tail,eta,eta_low,eta_high,root,ks_n,ks_stat,ks_p,status,match_fraction\n");
        for r in &self.rows {
            let e = &r.full;
            let (n, d, p, v) = match &r.poisson {
                Some(p) => (
                    p.n.to_string(),
                    p.ks_statistic.to_string(),
                    p.p_value.to_string(),
                    format!("{:?}", p.status),
                ),
                None => (String::new(), String::new(), String::new(), String::new()),
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                e.threshold,
                e.count,
                e.tail,
                e.eta,
                e.eta_low,
                e.eta_high,
                e.eta.powf(1.0 / e.threshold as f64),
                n,
                d,
                p,
                v,
                r.match_fraction.map(|f| f.to_string()).unwrap_or_default()
            );
        }
        s
    }
}
