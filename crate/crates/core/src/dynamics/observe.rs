use std::io::{self, Write};

use crate::dynamics::chain::StepRecord;
use crate::enumeration::Census;

/// Receives every event of a run.
pub trait Observer {
    fn on_step(&mut self, rec: &StepRecord);
    fn on_finish(&mut self, _t_end: f64, _card: usize) {}
}

impl Observer for () {
    fn on_step(&mut self, _: &StepRecord) {}
}

impl<F: FnMut(&StepRecord)> Observer for F {
    fn on_step(&mut self, rec: &StepRecord) {
        self(rec)
    }
}

impl<A: Observer, B: Observer> Observer for (A, B) {
    fn on_step(&mut self, rec: &StepRecord) {
        self.0.on_step(rec);
        self.1.on_step(rec);
    }
    fn on_finish(&mut self, t: f64, card: usize) {
        self.0.on_finish(t, card);
        self.1.on_finish(t, card);
    }
}

impl<A: Observer, B: Observer, C: Observer> Observer for (A, B, C) {
    fn on_step(&mut self, rec: &StepRecord) {
        self.0.on_step(rec);
        self.1.on_step(rec);
        self.2.on_step(rec);
    }
    fn on_finish(&mut self, t: f64, card: usize) {
        self.0.on_finish(t, card);
        self.1.on_finish(t, card);
        self.2.on_finish(t, card);
    }
}

pub const TRAJECTORY_HEADER: &str = "event_index,t,card,accepted,action";

/// Writes trajectory CSV rows: every accepted transition when
/// `keep_accepted` is set, plus every `stride`-th event.
pub struct TrajectoryRecorder<W: Write> {
    out: W,
    stride: u64,
    keep_accepted: bool,
    rows: u64,
    error: Option<io::Error>,
}

impl<W: Write> TrajectoryRecorder<W> {
    /// Writes the column header immediately.
    pub fn new(mut out: W, stride: u64, keep_accepted: bool) -> io::Result<Self> {
        writeln!(out, "{TRAJECTORY_HEADER}")?;
        Ok(TrajectoryRecorder {
            out,
            stride,
            keep_accepted,
            rows: 0,
            error: None,
        })
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    /// Flushes and returns the writer, or the first write error.
    pub fn finish(mut self) -> io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> Observer for TrajectoryRecorder<W> {
    fn on_step(&mut self, r: &StepRecord) {
        let sampled = self.stride > 0 && r.event_index.is_multiple_of(self.stride);
        if self.error.is_some() || !(sampled || (self.keep_accepted && r.accepted())) {
            return;
        }
        let res = writeln!(
            self.out,
            "{},{},{},{},{}",
            r.event_index,
            r.t,
            r.card,
            r.accepted() as u8,
            r.action.name()
        );
        match res {
            Ok(()) => self.rows += 1,
            Err(e) => self.error = Some(e),
        }
    }
}

/// Time spent at each size after a burn-in, in batches of fixed duration.
#[derive(Clone, Debug)]
pub struct SizeLaw {
    burnin: f64,
    batch_time: f64,
    card: usize,
    last_t: f64,
    /// `batches[b][n]` is the time spent at size `n` in batch `b`.
    batches: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SizeRatio {
    pub n: usize,
    /// Time-weighted `P(n) / P(1)`.
    pub estimate: f64,
    /// Batch-means standard error.
    pub std_error: f64,
    pub reference: Option<f64>,
}

impl SizeLaw {
    /// Starts tracking a chain currently at size `card` and time 0.
    pub fn new(burnin: f64, batch_time: f64, card: usize) -> Self {
        assert!(batch_time > 0.0);
        SizeLaw {
            burnin,
            batch_time,
            card,
            last_t: 0.0,
            batches: Vec::new(),
        }
    }

    fn accumulate(&mut self, mut from: f64, to: f64) {
        from = from.max(self.burnin);
        while from < to {
            let b = ((from - self.burnin) / self.batch_time) as usize;
            let end = (self.burnin + (b + 1) as f64 * self.batch_time).min(to);
            if self.batches.len() <= b {
                self.batches.resize(b + 1, Vec::new());
            }
            let row = &mut self.batches[b];
            if row.len() <= self.card {
                row.resize(self.card + 1, 0.0);
            }
            row[self.card] += end - from;
            from = end;
        }
    }

    /// Completed batches only; the trailing partial batch is dropped.
    fn full_batches(&self) -> &[Vec<f64>] {
        let n = self.batches.len();
        let last_full = self.burnin + n as f64 * self.batch_time <= self.last_t;
        if last_full {
            &self.batches
        } else {
            &self.batches[..n.saturating_sub(1)]
        }
    }

    pub fn batch_count(&self) -> usize {
        self.full_batches().len()
    }

    /// Total post-burn-in time at each size, over complete batches.
    pub fn occupancy(&self) -> Vec<f64> {
        let mut total: Vec<f64> = Vec::new();
        for row in self.full_batches() {
            if total.len() < row.len() {
                total.resize(row.len(), 0.0);
            }
            for (acc, v) in total.iter_mut().zip(row) {
                *acc += v;
            }
        }
        total
    }

    /// `P(n) / P(1)` for `n = 2..=n_max` with batch-means errors, and the
    /// stationary reference `n a_n beta^(n-1)` when a census is supplied.
    pub fn ratios(&self, n_max: usize, census: Option<&Census>, beta: f64) -> Vec<SizeRatio> {
        let batches = self.full_batches();
        let occ = self.occupancy();
        let at = |row: &[f64], n: usize| row.get(n).copied().unwrap_or(0.0);
        (2..=n_max)
            .map(|n| {
                let estimate = at(&occ, n) / at(&occ, 1);
                let per: Vec<f64> = batches
                    .iter()
                    .filter(|r| at(r, 1) > 0.0)
                    .map(|r| at(r, n) / at(r, 1))
                    .collect();
                let b = per.len() as f64;
                let mean = per.iter().sum::<f64>() / b;
                let var = per.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (b - 1.0);
                let reference = census
                    .filter(|c| n <= c.n_max)
                    .map(|c| stationary_ratio(c.a(n), n, beta));
                SizeRatio {
                    n,
                    estimate,
                    std_error: (var / b).sqrt(),
                    reference,
                }
            })
            .collect()
    }
}

/// `P(n) / P(1) = n a_n beta^(n-1)` under the stationary law.
pub fn stationary_ratio(a_n: u64, n: usize, beta: f64) -> f64 {
    n as f64 * a_n as f64 * beta.powi(n as i32 - 1)
}

impl Observer for SizeLaw {
    fn on_step(&mut self, r: &StepRecord) {
        if r.accepted() {
            self.accumulate(self.last_t, r.t);
            self.last_t = r.t;
            self.card = r.card;
        }
    }

    fn on_finish(&mut self, t_end: f64, _card: usize) {
        self.accumulate(self.last_t, t_end);
        self.last_t = t_end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::Cell;
    use crate::dynamics::chain::Action;

    fn rec(i: u64, t: f64, card: usize, action: Action) -> StepRecord {
        StepRecord {
            event_index: i,
            t,
            dt: 0.0,
            card,
            action,
            cell: Cell::ORIGIN,
        }
    }

    #[test]
    fn recorder_writes_accepted_and_strided_rows() {
        let mut r = TrajectoryRecorder::new(Vec::new(), 3, true).unwrap();
        r.on_step(&rec(1, 0.5, 2, Action::Expand));
        r.on_step(&rec(2, 0.75, 2, Action::None));
        r.on_step(&rec(3, 1.0, 2, Action::None));
        let text = String::from_utf8(r.finish().unwrap()).unwrap();
        assert_eq!(
            text,
            "event_index,t,card,accepted,action\n1,0.5,2,1,expand\n3,1,2,0,none\n"
        );
    }

    #[test]
    fn size_law_splits_time_across_batches() {
        let mut s = SizeLaw::new(1.0, 2.0, 1);
        s.on_step(&rec(1, 2.0, 2, Action::Expand));
        s.on_step(&rec(2, 4.0, 1, Action::Collapse));
        s.on_finish(5.0, 1);
        assert_eq!(s.batch_count(), 2);
        let occ = s.occupancy();
        assert_eq!(occ[1], 2.0);
        assert_eq!(occ[2], 2.0);
    }

    #[test]
    fn reference_ratios() {
        assert!((stationary_ratio(2, 2, 0.15) - 0.6).abs() < 1e-12);
        assert!((stationary_ratio(6, 3, 0.1) - 0.18).abs() < 1e-12);
    }
}
