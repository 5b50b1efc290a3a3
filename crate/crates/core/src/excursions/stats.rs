use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::excursions::log::ExcursionLog;

/// `eta_T = mu / P[xi >= T]` with a Wilson interval on the tail fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaEstimate {
    pub threshold: usize,
    pub mu: f64,
    pub tail: f64,
    pub count: usize,
    pub excursions: usize,
    /// Infinite when no excursion reached the threshold.
    pub eta: f64,
    pub eta_low: f64,
    pub eta_high: f64,
}

impl EtaEstimate {
    pub fn is_finite(&self) -> bool {
        self.eta.is_finite()
    }
}

/// Wilson score interval for `k` successes out of `n` at the given level.
pub fn wilson_interval(k: usize, n: usize, level: f64) -> (f64, f64) {
    let z = Normal::standard().inverse_cdf(0.5 + level / 2.0);
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

pub fn eta_hat(log: &ExcursionLog, threshold: usize, level: f64) -> Result<EtaEstimate> {
    let mu = log.mu_hat()?;
    let n = log.count();
    let count = log.tail_count(threshold);
    let (lo, hi) = wilson_interval(count, n, level);
    let tail = count as f64 / n as f64;
    Ok(EtaEstimate {
        threshold,
        mu,
        tail,
        count,
        excursions: n,
        eta: mu / tail,
        eta_low: mu / hi,
        eta_high: mu / lo,
    })
}

/// The rescaled exceedance times and their discrete companion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceedanceProcess {
    pub threshold: usize,
    pub eta: f64,
    pub mu: f64,
    /// `zeta'_i / eta` for every recorded exceedance.
    pub n_prime: Vec<f64>,
    /// `i mu / eta` for every completed excursion with `xi_i >= T`.
    pub n_tilde: Vec<f64>,
    /// Observed horizon in rescaled time.
    pub horizon: f64,
}

impl ExceedanceProcess {
    /// Gaps between consecutive points of `n_prime`, the first measured
    /// from time 0.
    pub fn inter_arrivals(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.n_prime
            .iter()
            .map(|&t| {
                let d = t - prev;
                prev = t;
                d
            })
            .collect()
    }

    /// `i,zeta_prime_i,rescaled` rows.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "i,zeta_prime_i,rescaled")?;
        for (i, &r) in self.n_prime.iter().enumerate() {
            writeln!(out, "{},{},{}", i + 1, r * self.eta, r)?;
        }
        Ok(())
    }
}

/// Rescales the exceedances of `log` at `est.threshold` by `est.eta`, using
/// `est.mu` for the discrete companion. `est` may come from another log.
pub fn exceedance_process(log: &ExcursionLog, est: &EtaEstimate) -> Result<ExceedanceProcess> {
    let t = est.threshold;
    let ex = log
        .exceedances_of(t)
        .ok_or_else(|| Error::InvalidParameter(format!("threshold {t} was not tracked")))?;
    if !est.is_finite() {
        return Err(Error::InvalidParameter(format!("eta is infinite at threshold {t}")));
    }
    let n_prime = ex.iter().map(|e| e.t / est.eta).collect();
    let n_tilde = log
        .xi
        .iter()
        .enumerate()
        .filter(|(_, &x)| x as usize >= t)
        .map(|(i, _)| (i + 1) as f64 * est.mu / est.eta)
        .collect();
    Ok(ExceedanceProcess {
        threshold: t,
        eta: est.eta,
        mu: est.mu,
        n_prime,
        n_tilde,
        horizon: log.t_end / est.eta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonReport {
    pub n: usize,
    pub ks_statistic: f64,
    pub p_value: f64,
    pub critical: f64,
    pub alpha: f64,
    /// Variance over mean of counts in unit windows, when at least two fit.
    pub dispersion: Option<f64>,
    pub status: TestStatus,
}

/// Survival function of the Kolmogorov distribution.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.0 {
        let c = std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda);
        let s: f64 = (0..20)
            .map(|j| {
                let k = (2 * j + 1) as f64;
                (-k * k * c).exp()
            })
            .sum();
        return (1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * s).clamp(0.0, 1.0);
    }
    let s: f64 = (1..100)
        .map(|k| {
            let k = k as f64;
            let sign = if k as u64 % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * k * k * lambda * lambda).exp()
        })
        .sum();
    (2.0 * s).clamp(0.0, 1.0)
}

/// `lambda` with `kolmogorov_q(lambda) = alpha`.
pub fn kolmogorov_critical(alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.1, 5.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_q(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// One-sample KS statistic against Exponential(1).
pub fn ks_exponential(sample: &[f64]) -> f64 {
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.total_cmp(b));
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = 1.0 - (-v.max(0.0)).exp();
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Variance over mean of point counts in the windows `[k, k + 1)` that fit
/// inside `[0, horizon)`.
pub fn dispersion_index(points: &[f64], horizon: f64) -> Option<f64> {
    let windows = horizon.floor() as usize;
    if windows < 2 {
        return None;
    }
    let mut counts = vec![0f64; windows];
    for &p in points {
        if p >= 0.0 && (p as usize) < windows {
            counts[p as usize] += 1.0;
        }
    }
    let m = counts.iter().sum::<f64>() / windows as f64;
    let v = counts.iter().map(|c| (c - m).powi(2)).sum::<f64>() / (windows - 1) as f64;
    Some(v / m)
}

/// KS test of the inter-arrival times against Exponential(1) with the
/// asymptotic Kolmogorov distribution. Below `min_n` gaps the result is
/// inconclusive.
pub fn poisson_test(process: &ExceedanceProcess, alpha: f64, min_n: usize) -> PoissonReport {
    let gaps = process.inter_arrivals();
    poisson_test_gaps(&gaps, process.horizon, &process.n_prime, alpha, min_n)
}

pub fn poisson_test_gaps(gaps: &[f64], horizon: f64, points: &[f64], alpha: f64, min_n: usize) -> PoissonReport {
    let n = gaps.len();
    let critical = kolmogorov_critical(alpha) / (n.max(1) as f64).sqrt();
    let dispersion = dispersion_index(points, horizon);
    if n < min_n.max(1) {
        return PoissonReport {
            n,
            ks_statistic: f64::NAN,
            p_value: f64::NAN,
            critical,
            alpha,
            dispersion,
            status: TestStatus::Inconclusive,
        };
    }
    let d = ks_exponential(gaps);
    let p_value = kolmogorov_q((n as f64).sqrt() * d);
    PoissonReport {
        n,
        ks_statistic: d,
        p_value,
        critical,
        alpha,
        dispersion,
        status: if p_value >= alpha { TestStatus::Pass } else { TestStatus::Fail },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountMatch {
    pub window: f64,
    pub windows: usize,
    pub matched: usize,
}

impl CountMatch {
    pub fn fraction(&self) -> f64 {
        self.matched as f64 / self.windows as f64
    }
}

/// Compares the counts of `N'` and its discrete companion on `[0, window)`
/// over independent copies of the process. Copies are cut at renewals: each
/// one starts at the first return to the single cube after the previous
/// copy's window ended, and both processes are restarted there.
pub fn count_match(log: &ExcursionLog, est: &EtaEstimate, window: f64) -> Result<CountMatch> {
    let t = est.threshold;
    let ex = log
        .exceedances_of(t)
        .ok_or_else(|| Error::InvalidParameter(format!("threshold {t} was not tracked")))?;
    if !est.is_finite() {
        return Err(Error::InvalidParameter(format!("eta is infinite at threshold {t}")));
    }
    let span = window * est.eta;
    let n = log.count();
    let zeta = |i: usize| if i == 0 { 0.0 } else { log.zeta[i - 1] };
    let (mut windows, mut matched) = (0, 0);
    let (mut s, mut e) = (0usize, 0usize);
    loop {
        let start = zeta(s);
        let end = start + span;
        let last_index = s as f64 + span / est.mu;
        if end > log.t_end || last_index > n as f64 {
            break;
        }
        while e < ex.len() && ex[e].t < start {
            e += 1;
        }
        let prime = ex[e..].iter().take_while(|x| x.t < end).count();
        let tilde = (s + 1..=n)
            .take_while(|&i| ((i - s) as f64) * est.mu < span)
            .filter(|&i| log.xi[i - 1] as usize >= t)
            .count();
        windows += 1;
        if prime == tilde {
            matched += 1;
        }
        let next = s + log.zeta[s..].partition_point(|&z| z < end);
        if next >= n {
            break;
        }
        s = next + 1;
    }
    Ok(CountMatch {
        window,
        windows,
        matched,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeabilityReport {
    pub n: usize,
    /// Lag-1 autocorrelation of the maxima.
    pub statistic: f64,
    pub p_value: f64,
    pub permutations: usize,
}

fn lag1_autocorrelation(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let var: f64 = x.iter().map(|v| (v - m).powi(2)).sum();
    if var == 0.0 {
        return 0.0;
    }
    let cov: f64 = x.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum();
    cov / var
}

/// Permutation test of serial independence of the excursion maxima, on at
/// most `max_len` leading values. Two-sided on the lag-1 autocorrelation.
pub fn exchangeability_test(xi: &[u32], permutations: usize, max_len: usize, seed: u64) -> ExchangeabilityReport {
    let mut x: Vec<f64> = xi.iter().take(max_len).map(|&v| v as f64).collect();
    let observed = lag1_autocorrelation(&x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extreme = 0;
    for _ in 0..permutations {
        x.shuffle(&mut rng);
        if lag1_autocorrelation(&x).abs() >= observed.abs() {
            extreme += 1;
        }
    }
    ExchangeabilityReport {
        n: x.len(),
        statistic: observed,
        p_value: (1 + extreme) as f64 / (1 + permutations) as f64,
        permutations,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub threshold: usize,
    pub eta: f64,
    /// `eta^(1/T)`.
    pub root: f64,
    /// Below `(1 - tolerance) / (kappa beta)`.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub reference: f64,
    pub tolerance: f64,
    pub rows: Vec<GrowthRow>,
    pub eta_nondecreasing: bool,
    /// Least-squares slope of `log10 eta` against `T`.
    pub log10_slope: f64,
}

impl GrowthReport {
    /// `eta^(1/T)` at the largest threshold clears the lowered reference.
    pub fn largest_passes(&self) -> bool {
        self.rows.last().is_some_and(|r| !r.flagged)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("T,eta,root,reference,flagged\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.threshold, r.eta, r.root, self.reference, r.flagged
            ));
        }
        s
    }
}

/// Compares `eta_T^(1/T)` with `1 / (kappa beta)` over the thresholds.
pub fn growth_bound_report(estimates: &[EtaEstimate], beta: f64, kappa: f64, tolerance: f64) -> GrowthReport {
    let reference = 1.0 / (kappa * beta);
    let rows: Vec<GrowthRow> = estimates
        .iter()
        .map(|e| {
            let root = e.eta.powf(1.0 / e.threshold as f64);
            GrowthRow {
                threshold: e.threshold,
                eta: e.eta,
                root,
                // NaN roots are flagged too
                flagged: root.partial_cmp(&((1.0 - tolerance) * reference)).is_none_or(|o| o.is_lt()),
            }
        })
        .collect();
    let eta_nondecreasing = rows.windows(2).all(|w| w[1].eta >= w[0].eta);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.eta.is_finite())
        .map(|r| (r.threshold as f64, r.eta.log10()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    GrowthReport {
        reference,
        tolerance,
        rows,
        eta_nondecreasing,
        log10_slope: sxy / sxx,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excursions::log::decompose;
    use rand::Rng;
    use rand_distr::Exp1;

    #[test]
    fn wilson_contains_the_point_estimate() {
        let (lo, hi) = wilson_interval(30, 100, 0.95);
        assert!(lo < 0.3 && 0.3 < hi);
        let (lo, hi) = wilson_interval(0, 100, 0.95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
    }

    #[test]
    fn kolmogorov_distribution_values() {
        // two branches agree where they meet
        assert!((kolmogorov_q(1.0 - 1e-12) - kolmogorov_q(1.0)).abs() < 1e-9);
        assert!((kolmogorov_q(1.0) - 0.269_999_671).abs() < 1e-6);
        assert!((kolmogorov_critical(0.05) - 1.3581).abs() < 1e-3);
        assert!((kolmogorov_critical(0.01) - 1.6276).abs() < 1e-3);
    }

    #[test]
    fn unit_spacing_is_rejected() {
        let gaps = vec![1.0; 500];
        assert!((ks_exponential(&gaps) - (1.0 - (-1f64).exp())).abs() < 1e-12);
        let pts: Vec<f64> = (1..=500).map(|i| i as f64).collect();
        let r = poisson_test_gaps(&gaps, 500.0, &pts, 0.01, 30);
        assert_eq!(r.status, TestStatus::Fail);
        assert!(r.dispersion.unwrap() < 0.01);
    }

    #[test]
    fn synthetic_poisson_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gaps: Vec<f64> = (0..10_000).map(|_| rng.sample(Exp1)).collect();
        let mut t = 0.0;
        let pts: Vec<f64> = gaps.iter().map(|g| { t += g; t }).collect();
        let r = poisson_test_gaps(&gaps, t, &pts, 0.01, 30);
        assert_eq!(r.status, TestStatus::Pass, "{r:?}");
        assert!((r.dispersion.unwrap() - 1.0).abs() < 0.1);
    }

    #[test]
    fn small_samples_are_inconclusive() {
        let r = poisson_test_gaps(&[1.0; 10], 10.0, &[], 0.01, 30);
        assert_eq!(r.status, TestStatus::Inconclusive);
    }

    /// Excursions that reach 2 and then `2 + G` with `G` geometric, with
    /// exponential phase lengths, so `mu` and the tails are known.
    fn synthetic_log(n: usize, seed: u64) -> ExcursionLog {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut path = Vec::new();
        let mut t = 0.0;
        for _ in 0..n {
            t += rng.sample::<f64, _>(Exp1);
            let mut top = 2;
            while rng.random::<f64>() < 0.5 {
                top += 1;
            }
            for c in 2..=top {
                path.push((t, c));
                t += 0.5 * rng.sample::<f64, _>(Exp1) / (top - 1) as f64;
            }
            t += 0.5 * rng.sample::<f64, _>(Exp1);
            path.push((t, 1));
        }
        decompose(path, &[2, 3, 4]).unwrap()
    }

    #[test]
    fn estimators_converge_at_the_monte_carlo_rate() {
        // mu = 1 + 0.5 + 0.5 = 2, P[xi >= 4] = 1/4
        let err = |n: usize| {
            let mut e = (0.0, 0.0);
            for s in 0..20 {
                let log = synthetic_log(n, s);
                e.0 += (log.mu_hat().unwrap() - 2.0).powi(2);
                e.1 += (log.tail_fraction(4).unwrap() - 0.25).powi(2);
            }
            ((e.0 / 20.0).sqrt(), (e.1 / 20.0).sqrt())
        };
        let (a, b) = (err(2_000), err(8_000));
        assert!(a.0 / b.0 > 1.3 && a.0 / b.0 < 3.2, "{a:?} {b:?}");
        assert!(a.1 / b.1 > 1.3 && a.1 / b.1 < 3.2, "{a:?} {b:?}");
    }

    #[test]
    fn eta_at_two_is_mu() {
        let log = synthetic_log(500, 1);
        let e = eta_hat(&log, 2, 0.95).unwrap();
        assert_eq!(e.eta, log.mu_hat().unwrap());
        let p = exceedance_process(&log, &e).unwrap();
        let gaps = p.inter_arrivals();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        assert!((mean - 1.0).abs() < 0.02);
    }

    #[test]
    fn eta_is_monotone_in_threshold() {
        let log = synthetic_log(2000, 2);
        let e: Vec<f64> = (2..8).map(|t| eta_hat(&log, t, 0.95).unwrap().eta).collect();
        assert!(e.windows(2).all(|w| w[1] >= w[0]));
        assert!(eta_hat(&log, 60, 0.95).unwrap().eta.is_infinite());
    }

    #[test]
    fn empty_process_when_nothing_exceeds() {
        let log = synthetic_log(50, 3);
        let e = eta_hat(&log, 4, 0.95).unwrap();
        let (_, late) = log.split_at(log.count());
        let p = exceedance_process(&late, &e).unwrap();
        assert!(p.n_prime.is_empty() && p.n_tilde.is_empty());
    }

    #[test]
    fn companion_counts_on_a_regular_path() {
        // excursions of length exactly 1, reaching 2 a quarter of the way in
        let path: Vec<(f64, usize)> = (0..100)
            .flat_map(|k| [(k as f64 + 0.25, 2), (k as f64 + 1.0, 1)])
            .collect();
        let log = decompose(path, &[2]).unwrap();
        let e = eta_hat(&log, 2, 0.95).unwrap();
        assert_eq!((e.mu, e.eta), (1.0, 1.0));
        // N' has 0.25, 1.25, ... and the companion 1, 2, ...
        let m = count_match(&log, &e, 10.1).unwrap();
        assert_eq!((m.windows, m.matched), (9, 9));
        let m = count_match(&log, &e, 10.5).unwrap();
        assert_eq!(m.matched, 0);
    }

    #[test]
    fn iid_maxima_look_exchangeable() {
        let log = synthetic_log(3000, 6);
        let r = exchangeability_test(&log.xi, 199, 10_000, 1);
        assert!(r.p_value > 0.01, "{r:?}");
        let sorted: Vec<u32> = { let mut v = log.xi.clone(); v.sort(); v };
        assert!(exchangeability_test(&sorted, 199, 10_000, 1).p_value < 0.01);
    }

    #[test]
    fn growth_reference() {
        let e = |t: usize, eta: f64| EtaEstimate {
            threshold: t,
            mu: 1.0,
            tail: 1.0 / eta,
            count: 1,
            excursions: 1,
            eta,
            eta_low: eta,
            eta_high: eta,
        };
        let r = growth_bound_report(&[e(10, 100.0), e(20, 1e4)], 1.0 / 3.971, 3.971, 0.25);
        assert!((r.reference - 1.0).abs() < 1e-12);
        assert!(r.eta_nondecreasing && r.largest_passes());
        assert!((r.log10_slope - 0.2).abs() < 1e-12);
        let r = growth_bound_report(&[e(10, 0.5)], 0.2, 3.971, 0.25);
        assert!((r.reference - 1.259_13).abs() < 1e-5);
        assert!(r.rows[0].flagged);
    }
}
