use std::io::{self, Write};

use crate::dynamics::{Observer, StepRecord};
use crate::error::{Error, Result};

/// First time the size reached a threshold inside one excursion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exceedance {
    pub t: f64,
    /// 1-based index `i` of the excursion containing `t`, so that
    /// `zeta[i - 2] < t < zeta[i - 1]` (with `zeta_0 = 0`). Equals
    /// `count() + 1` when the exceedance falls in the unfinished excursion.
    pub excursion: usize,
}

/// Returns to the single cube, per-excursion maxima, and threshold
/// exceedance times of one trajectory started at size 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcursionLog {
    /// `zeta[i - 1]` is the end of the `i`-th excursion.
    pub zeta: Vec<f64>,
    /// Largest size reached in each completed excursion.
    pub xi: Vec<u32>,
    pub thresholds: Vec<usize>,
    /// `exceedances[j]` belongs to `thresholds[j]`.
    pub exceedances: Vec<Vec<Exceedance>>,
    /// Observation horizon.
    pub t_end: f64,
}

impl ExcursionLog {
    pub fn empty(thresholds: &[usize]) -> Self {
        ExcursionLog {
            zeta: Vec::new(),
            xi: Vec::new(),
            thresholds: thresholds.to_vec(),
            exceedances: vec![Vec::new(); thresholds.len()],
            t_end: 0.0,
        }
    }

    /// Number of completed excursions.
    pub fn count(&self) -> usize {
        self.zeta.len()
    }

    pub fn last_renewal(&self) -> f64 {
        self.zeta.last().copied().unwrap_or(0.0)
    }

    /// Mean excursion length `zeta_N / N`.
    pub fn mu_hat(&self) -> Result<f64> {
        if self.zeta.is_empty() {
            return Err(Error::NoExcursions);
        }
        Ok(self.last_renewal() / self.count() as f64)
    }

    /// Completed excursions with `xi >= t`.
    pub fn tail_count(&self, t: usize) -> usize {
        self.xi.iter().filter(|&&x| x as usize >= t).count()
    }

    pub fn tail_fraction(&self, t: usize) -> Result<f64> {
        if self.zeta.is_empty() {
            return Err(Error::NoExcursions);
        }
        Ok(self.tail_count(t) as f64 / self.count() as f64)
    }

    pub fn threshold_index(&self, t: usize) -> Option<usize> {
        self.thresholds.iter().position(|&x| x == t)
    }

    pub fn exceedances_of(&self, t: usize) -> Option<&[Exceedance]> {
        self.threshold_index(t).map(|j| self.exceedances[j].as_slice())
    }

    /// Appends an independent log of a chain restarted at the single cube.
    /// The unfinished tail of `self` is discarded so that `other` starts at
    /// the last renewal, which keeps the concatenation an exact trajectory of
    /// the regenerative process.
    pub fn merge(&mut self, other: &ExcursionLog) -> Result<()> {
        if self.thresholds != other.thresholds {
            return Err(Error::InvalidParameter("merged logs need equal thresholds".into()));
        }
        let shift = self.last_renewal();
        let n = self.count();
        for ex in &mut self.exceedances {
            ex.retain(|e| e.excursion <= n);
        }
        for (mine, theirs) in self.exceedances.iter_mut().zip(&other.exceedances) {
            mine.extend(theirs.iter().map(|e| Exceedance {
                t: e.t + shift,
                excursion: e.excursion + n,
            }));
        }
        self.zeta.extend(other.zeta.iter().map(|z| z + shift));
        self.xi.extend_from_slice(&other.xi);
        self.t_end = shift + other.t_end;
        Ok(())
    }

    /// Cuts at the `m`-th renewal. The second part is rebased to start at
    /// time 0 with excursion numbering from 1.
    pub fn split_at(&self, m: usize) -> (ExcursionLog, ExcursionLog) {
        let m = m.min(self.count());
        let cut = if m == 0 { 0.0 } else { self.zeta[m - 1] };
        let first = ExcursionLog {
            zeta: self.zeta[..m].to_vec(),
            xi: self.xi[..m].to_vec(),
            thresholds: self.thresholds.clone(),
            exceedances: self
                .exceedances
                .iter()
                .map(|ex| ex.iter().copied().filter(|e| e.excursion <= m).collect())
                .collect(),
            t_end: cut,
        };
        let second = ExcursionLog {
            zeta: self.zeta[m..].iter().map(|z| z - cut).collect(),
            xi: self.xi[m..].to_vec(),
            thresholds: self.thresholds.clone(),
            exceedances: self
                .exceedances
                .iter()
                .map(|ex| {
                    ex.iter()
                        .filter(|e| e.excursion > m)
                        .map(|e| Exceedance {
                            t: e.t - cut,
                            excursion: e.excursion - m,
                        })
                        .collect()
                })
                .collect(),
            t_end: self.t_end - cut,
        };
        (first, second)
    }

    /// Splits at the middle renewal, for estimate-then-test use.
    pub fn halves(&self) -> (ExcursionLog, ExcursionLog) {
        self.split_at(self.count() / 2)
    }

    /// Checks the ordering of renewals and exceedances: `zeta` strictly
    /// increasing, `xi >= 2`, every exceedance strictly inside its
    /// excursion, at most one per excursion and threshold, and exactly one
    /// for each completed excursion that reached the threshold.
    pub fn is_consistent(&self) -> bool {
        let zeta_ok = self.zeta.windows(2).all(|w| w[0] < w[1])
            && self.zeta.first().is_none_or(|&z| z > 0.0)
            && self.xi.len() == self.zeta.len()
            && self.xi.iter().all(|&x| x >= 2);
        if !zeta_ok {
            return false;
        }
        let n = self.count();
        self.thresholds.iter().zip(&self.exceedances).all(|(&t, ex)| {
            let inside = ex.iter().all(|e| {
                let lo = if e.excursion >= 2 { self.zeta[e.excursion - 2] } else { 0.0 };
                let hi = if e.excursion <= n { self.zeta[e.excursion - 1] } else { f64::INFINITY };
                e.excursion >= 1 && lo < e.t && e.t < hi && e.t <= self.t_end
            });
            let unique = ex.windows(2).all(|w| w[0].excursion < w[1].excursion);
            let complete: Vec<usize> = ex.iter().map(|e| e.excursion).filter(|&i| i <= n).collect();
            let expected: Vec<usize> = (1..=n).filter(|&i| self.xi[i - 1] as usize >= t).collect();
            inside && unique && complete == expected
        })
    }

    /// `i,zeta_i,xi_i` rows.
    pub fn write_excursions_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "i,zeta_i,xi_i")?;
        for (i, (z, x)) in self.zeta.iter().zip(&self.xi).enumerate() {
            writeln!(out, "{},{},{}", i + 1, z, x)?;
        }
        Ok(())
    }
}

/// Observer that builds an [`ExcursionLog`] from a chain started at size 1.
#[derive(Clone, Debug)]
pub struct ExcursionTracker {
    log: ExcursionLog,
    card: usize,
    max: usize,
    armed: Vec<bool>,
}

impl ExcursionTracker {
    /// Thresholds below 2 are meaningless and are rejected.
    pub fn new(thresholds: &[usize]) -> Result<Self> {
        if thresholds.iter().any(|&t| t < 2) {
            return Err(Error::InvalidParameter("excursion thresholds must be at least 2".into()));
        }
        Ok(ExcursionTracker {
            log: ExcursionLog::empty(thresholds),
            card: 1,
            max: 1,
            armed: vec![true; thresholds.len()],
        })
    }

    pub fn log(&self) -> &ExcursionLog {
        &self.log
    }

    pub fn into_log(self) -> ExcursionLog {
        self.log
    }

    /// Feeds a size change at time `t`.
    pub fn record(&mut self, t: f64, card: usize) {
        if card == self.card {
            return;
        }
        self.card = card;
        self.log.t_end = t;
        if card == 1 {
            self.log.zeta.push(t);
            self.log.xi.push(self.max as u32);
            self.max = 1;
            self.armed.fill(true);
            return;
        }
        self.max = self.max.max(card);
        let excursion = self.log.zeta.len() + 1;
        for (j, &thr) in self.log.thresholds.iter().enumerate() {
            if self.armed[j] && card >= thr {
                self.armed[j] = false;
                self.log.exceedances[j].push(Exceedance { t, excursion });
            }
        }
    }
}

impl Observer for ExcursionTracker {
    fn on_step(&mut self, r: &StepRecord) {
        if r.accepted() {
            self.record(r.t, r.card);
        }
    }

    fn on_finish(&mut self, t_end: f64, _card: usize) {
        self.log.t_end = t_end;
    }
}

/// Builds a log from a size path given as `(t, card)` pairs starting at size 1.
pub fn decompose(path: impl IntoIterator<Item = (f64, usize)>, thresholds: &[usize]) -> Result<ExcursionLog> {
    let mut tr = ExcursionTracker::new(thresholds)?;
    let mut t_end = 0.0;
    for (t, card) in path {
        tr.record(t, card);
        t_end = t;
    }
    let mut log = tr.into_log();
    log.t_end = log.t_end.max(t_end);
    Ok(log)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(cards: &[usize]) -> Vec<(f64, usize)> {
        cards.iter().enumerate().map(|(i, &c)| (i as f64 + 1.0, c)).collect()
    }

    #[test]
    fn one_short_excursion() {
        let log = decompose(path(&[2, 1]), &[2]).unwrap();
        assert_eq!(log.zeta, vec![2.0]);
        assert_eq!(log.xi, vec![2]);
        assert!(log.is_consistent());
    }

    #[test]
    fn maximum_over_the_interval() {
        let log = decompose(path(&[2, 3, 2, 3, 2, 1]), &[3]).unwrap();
        assert_eq!(log.xi, vec![3]);
        assert_eq!(log.exceedances[0], vec![Exceedance { t: 2.0, excursion: 1 }]);
        assert!(log.is_consistent());
    }

    #[test]
    fn no_growth_no_renewals() {
        let log = decompose(Vec::new(), &[2]).unwrap();
        assert_eq!(log.count(), 0);
        assert_eq!(log.mu_hat(), Err(Error::NoExcursions));
    }

    #[test]
    fn unfinished_excursion_is_not_counted() {
        let log = decompose(path(&[2, 1, 2, 3, 4]), &[3]).unwrap();
        assert_eq!(log.count(), 1);
        assert_eq!(log.exceedances[0], vec![Exceedance { t: 4.0, excursion: 2 }]);
        assert!(log.is_consistent());
    }

    #[test]
    fn split_then_merge_restores_the_log() {
        let log = decompose(path(&[2, 3, 1, 2, 1, 2, 3, 4, 3, 2, 1, 2, 3]), &[3, 4]).unwrap();
        assert!(log.is_consistent());
        for m in 0..=log.count() {
            let (mut a, b) = log.split_at(m);
            assert!(a.is_consistent() && b.is_consistent());
            a.merge(&b).unwrap();
            assert_eq!(a, log, "m = {m}");
        }
    }

    #[test]
    fn merge_drops_the_unfinished_tail() {
        let mut a = decompose(path(&[2, 1, 2, 3]), &[3]).unwrap();
        let b = decompose(path(&[2, 3, 1]), &[3]).unwrap();
        a.merge(&b).unwrap();
        assert_eq!(a.zeta, vec![2.0, 5.0]);
        assert_eq!(a.exceedances[0], vec![Exceedance { t: 4.0, excursion: 2 }]);
        assert!(a.is_consistent());
    }

    #[test]
    fn excursion_csv() {
        let log = decompose(path(&[2, 1]), &[2]).unwrap();
        let mut out = Vec::new();
        log.write_excursions_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "i,zeta_i,xi_i\n1,2,2\n");
    }

    #[test]
    fn rejects_trivial_threshold() {
        assert!(ExcursionTracker::new(&[1]).is_err());
    }
}
