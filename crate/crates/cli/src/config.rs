//! Flat `key = value` run configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

use clump_core::SimParams;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p_up: f64,
    pub p_down: f64,
    pub seed: u64,
    pub max_events: u64,
    pub max_size: usize,
    /// Every `stride`-th event goes to the trajectory file; 0 disables this.
    pub stride: u64,
    /// Also write every accepted transition, which `analyze` needs.
    pub keep_accepted: bool,
    /// Burn-in time before the size law is accumulated.
    pub burnin: f64,
    pub batch_time: f64,
    pub thresholds: Vec<usize>,
    pub outputs: PathBuf,
    pub replicas: usize,
    /// Write the final clump as cells and SVG.
    pub snapshot: bool,
    pub alpha: f64,
    pub level: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p_up: 0.2,
            p_down: 1.0,
            seed: 1,
            max_events: 1_000_000,
            max_size: 100_000,
            stride: 1000,
            keep_accepted: true,
            burnin: 1000.0,
            batch_time: 1000.0,
            thresholds: vec![10, 15, 20, 25, 30],
            outputs: PathBuf::from("runs"),
            replicas: 1,
            snapshot: true,
            alpha: 0.01,
            level: 0.95,
        }
    }
}

const KEYS: [&str; 15] = [
    "alpha",
    "batch_time",
    "burnin",
    "keep_accepted",
    "level",
    "max_events",
    "max_size",
    "outputs",
    "p_down",
    "p_up",
    "replicas",
    "seed",
    "snapshot",
    "stride",
    "thresholds",
];

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", i + 1))?;
            cfg.set(k.trim(), v.trim())
                .with_context(|| format!("line {}", i + 1))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().ok().with_context(|| format!("bad value {v:?} for {key}"))
        }
        match key {
            "p_up" => self.p_up = num(key, value)?,
            "p_down" => self.p_down = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "max_events" => self.max_events = num(key, value)?,
            "max_size" => self.max_size = num(key, value)?,
            "stride" => self.stride = num(key, value)?,
            "keep_accepted" => self.keep_accepted = num(key, value)?,
            "burnin" => self.burnin = num(key, value)?,
            "batch_time" => self.batch_time = num(key, value)?,
            "thresholds" => {
                self.thresholds = value
                    .split(',')
                    .map(|s| num(key, s.trim()))
                    .collect::<Result<_>>()?
            }
            "outputs" => self.outputs = PathBuf::from(value),
            "replicas" => self.replicas = num(key, value)?,
            "snapshot" => self.snapshot = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "level" => self.level = num(key, value)?,
            _ => bail!("unknown key {key:?}"),
        }
        Ok(())
    }

    /// Applies `key=value` overrides given on the command line.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<()> {
        for o in overrides {
            let (k, v) = o
                .split_once('=')
                .with_context(|| format!("override {o:?} is not key=value"))?;
            self.set(k.trim(), v.trim())?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        self.sim_params()?;
        if self.thresholds.iter().any(|&t| t < 2) {
            bail!("thresholds must be at least 2");
        }
        if self.replicas == 0 {
            bail!("replicas must be at least 1");
        }
        if self.batch_time.is_nan() || self.batch_time <= 0.0 || self.burnin.is_nan() || self.burnin < 0.0 {
            bail!("need batch_time > 0 and burnin >= 0");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) || !(self.level > 0.0 && self.level < 1.0) {
            bail!("alpha and level must lie in (0, 1)");
        }
        Ok(())
    }

    pub fn sim_params(&self) -> Result<SimParams> {
        let mut p = SimParams::new(self.p_up, self.p_down, self.seed)?;
        p.max_events = self.max_events;
        p.max_size = self.max_size;
        p.validate()?;
        Ok(p)
    }

    /// Canonical text: every key, sorted, one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for k in KEYS {
            let v = match k {
                "alpha" => self.alpha.to_string(),
                "batch_time" => self.batch_time.to_string(),
                "burnin" => self.burnin.to_string(),
                "keep_accepted" => self.keep_accepted.to_string(),
                "level" => self.level.to_string(),
                "max_events" => self.max_events.to_string(),
                "max_size" => self.max_size.to_string(),
                "outputs" => self.outputs.display().to_string(),
                "p_down" => self.p_down.to_string(),
                "p_up" => self.p_up.to_string(),
                "replicas" => self.replicas.to_string(),
                "seed" => self.seed.to_string(),
                "snapshot" => self.snapshot.to_string(),
                "stride" => self.stride.to_string(),
                "thresholds" => self
                    .thresholds
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                _ => unreachable!(),
            };
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    /// First 16 hex digits of the SHA-256 of [`RunConfig::to_text`].
    pub fn hash(&self) -> String {
        hash_text(&self.to_text())
    }
}

pub fn hash_text(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Comment line embedded at the top of every output file.
pub fn provenance_header(hash: &str, seed: u64) -> String {
    format!("# config={hash} seed={seed}\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let cfg = RunConfig::parse("# comment\np_up = 0.15\nseed=9\nthresholds = 5, 7\n").unwrap();
        assert_eq!(cfg.p_up, 0.15);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.thresholds, vec![5, 7]);
        let again = RunConfig::parse(&cfg.to_text()).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.hash(), cfg.hash());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("p_up = 2").is_err());
        assert!(RunConfig::parse("p_up").is_err());
        assert!(RunConfig::parse("thresholds = 1").is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = RunConfig::default();
        let mut b = a.clone();
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
    }
}
