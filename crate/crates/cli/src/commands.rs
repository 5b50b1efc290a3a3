use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use clump_core::dynamics::{run_state, ChainState, RunStatus, RunSummary, SizeLaw, TrajectoryRecorder};
use clump_core::enumeration::{
    census_with, census_with_clumps, verify_config_lemmas, verify_locality, verify_two_collapsibility,
    Counterexample, DEFAULT_MAX_N,
};
use clump_core::excursions::{exceedance_process, eta_hat, ExcursionLog, ExcursionTracker};
use clump_core::format::{parse_cells, write_cells};
use clump_core::{census, CubicalSet, MoveTable};

use crate::config::{hash_text, provenance_header, RunConfig};
use crate::report::excursion_report;
use crate::svg::render_svg;

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes the 256-line move table dump, or prints it when `out` is `None`.
pub fn cmd_table(out: Option<&Path>) -> Result<String> {
    let dump = MoveTable::build().dump();
    if let Some(p) = out {
        write_file(p, &dump)?;
    }
    Ok(dump)
}

/// Census CSV with a provenance header.
pub fn cmd_census(n_max: usize, bound: usize, out: Option<&Path>) -> Result<String> {
    let c = census_with(n_max, bound, false)?;
    let hash = hash_text(&format!("census n_max = {n_max}\n"));
    let text = provenance_header(&hash, 0) + &c.to_csv();
    if let Some(p) = out {
        write_file(p, &text)?;
    }
    Ok(text)
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub summary: String,
    pub counterexamples: Vec<Counterexample>,
}

/// Runs the two-collapsibility, configuration and locality sweeps over the
/// census up to `n_max`. `fault` flips one table entry first.
pub fn cmd_verify(n_max: usize, diagnostics: Option<&Path>, fault: Option<u8>) -> Result<VerifyOutcome> {
    let mut table = MoveTable::build();
    if let Some(m) = fault {
        table = table.with_flipped(m);
    }
    let c = census_with_clumps(n_max)?;
    let lists = c.clumps.as_ref().expect("kept");
    let all: Vec<CubicalSet> = lists.iter().flatten().cloned().collect();
    let two = verify_two_collapsibility(&table, lists);
    let lemmas = verify_config_lemmas(&table, &all);
    let local = verify_locality(&table, &all);

    let mut s = String::new();
    s.push_str("n,clumps,min_collapse_set\n");
    for (n, k, m) in &two.per_size {
        s.push_str(&format!("{n},{k},{m}\n"));
    }
    s.push_str(&format!(
        "locality: {} collapse and {} expand checks\n",
        local.collapse_checks, local.expand_checks
    ));
    s.push_str(&format!(
        "configurations: {} double-deck placements, {} clumps with a rectangle, {} with a Human\n",
        lemmas.double_deck_placements, lemmas.r6_clumps, lemmas.human_clumps
    ));
    let counterexamples: Vec<Counterexample> = two
        .counterexamples
        .into_iter()
        .chain(lemmas.counterexamples)
        .chain(local.counterexamples)
        .collect();
    s.push_str(&format!("counterexamples: {}\n", counterexamples.len()));
    if let Some(dir) = diagnostics {
        for (i, ce) in counterexamples.iter().enumerate() {
            write_file(&dir.join(format!("counterexample_{i:04}.cells")), &ce.to_cells_v1())?;
        }
    }
    Ok(VerifyOutcome {
        summary: s,
        counterexamples,
    })
}

#[derive(Clone, Debug)]
pub struct SimOutcome {
    pub dirs: Vec<PathBuf>,
    pub summaries: Vec<RunSummary>,
}

impl SimOutcome {
    pub fn any_overflow(&self) -> bool {
        self.summaries.iter().any(|s| s.status == RunStatus::Overflow)
    }
}

/// Runs `cfg.replicas` chains on separate streams, each writing into its own
/// directory under `cfg.outputs/seed-<seed>`.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<SimOutcome> {
    cfg.validate()?;
    let base = cfg.outputs.join(format!("seed-{}", cfg.seed));
    let dirs: Vec<PathBuf> = if cfg.replicas == 1 {
        vec![base.clone()]
    } else {
        (0..cfg.replicas).map(|r| base.join(format!("replica-{r}"))).collect()
    };
    let table = MoveTable::build();
    let summaries = dirs
        .par_iter()
        .enumerate()
        .map(|(r, dir)| simulate_one(cfg, &table, r as u64, dir))
        .collect::<Result<Vec<_>>>()?;
    if cfg.replicas > 1 {
        let mut s = provenance_header(&cfg.hash(), cfg.seed);
        s.push_str("replica,status,events,t_end,final_card,max_card\n");
        for (r, m) in summaries.iter().enumerate() {
            s.push_str(&format!(
                "{r},{:?},{},{},{},{}\n",
                m.status, m.events, m.t_end, m.final_card, m.max_card
            ));
        }
        write_file(&base.join("summary.csv"), &s)?;
    }
    write_file(&base.join("config.txt"), &cfg.to_text())?;
    Ok(SimOutcome { dirs, summaries })
}

fn simulate_one(cfg: &RunConfig, table: &MoveTable, stream: u64, dir: &Path) -> Result<RunSummary> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let params = cfg.sim_params()?;
    let header = provenance_header(&cfg.hash(), cfg.seed);
    let traj_path = dir.join("trajectory.csv");
    let mut file = BufWriter::new(File::create(&traj_path).with_context(|| format!("creating {}", traj_path.display()))?);
    file.write_all(header.as_bytes())?;
    let mut observers = (
        TrajectoryRecorder::new(file, cfg.stride, cfg.keep_accepted)?,
        ExcursionTracker::new(&cfg.thresholds)?,
        SizeLaw::new(cfg.burnin, cfg.batch_time, 1),
    );
    let mut state = ChainState::on_stream(&params, stream)?;
    let summary = run_state(&mut state, &params, table, &mut observers);
    let (recorder, tracker, law) = observers;
    recorder.finish().with_context(|| format!("writing {}", traj_path.display()))?;
    let log = tracker.into_log();

    let mut run = header.clone();
    run.push_str(&format!(
        "status {:?}\nevents {}\nt_end {}\nfinal_card {}\nmax_card {}\nbeta {}\n",
        summary.status,
        summary.events,
        summary.t_end,
        summary.final_card,
        summary.max_card,
        params.beta()
    ));
    write_excursion_outputs(dir, &header, &log, cfg, &mut run)?;

    let c = census(10)?;
    let mut law_csv = header.clone();
    law_csv.push_str("n,estimate,std_error,reference\n");
    if law.batch_count() >= 2 {
        for r in law.ratios(10, Some(&c), params.beta()) {
            law_csv.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                r.estimate,
                r.std_error,
                r.reference.map(|v| v.to_string()).unwrap_or_default()
            ));
        }
    }
    write_file(&dir.join("size_law.csv"), &law_csv)?;

    if cfg.snapshot {
        let cells = state.cells();
        write_file(&dir.join("final.cells"), &(header.clone() + &write_cells(&cells)))?;
        write_file(&dir.join("final.svg"), &render_svg(&cells, 8))?;
    }
    write_file(&dir.join("report.txt"), &run)?;
    Ok(summary)
}

fn write_excursion_outputs(dir: &Path, header: &str, log: &ExcursionLog, cfg: &RunConfig, run: &mut String) -> Result<()> {
    let mut ex = header.as_bytes().to_vec();
    log.write_excursions_csv(&mut ex)?;
    fs::write(dir.join("excursions.csv"), ex)?;
    if log.count() == 0 {
        run.push_str("no completed excursions\n");
        return Ok(());
    }
    let beta = cfg.p_up / cfg.p_down;
    let rep = excursion_report(log, beta, cfg.alpha, cfg.level, cfg.seed)?;
    run.push_str(&rep.to_text());
    write_file(&dir.join("excursion_report.csv"), &(header.to_string() + &rep.to_csv()))?;
    for &t in &cfg.thresholds {
        let e = eta_hat(log, t, cfg.level)?;
        if e.is_finite() {
            let p = exceedance_process(log, &e)?;
            let mut out = header.as_bytes().to_vec();
            p.write_csv(&mut out)?;
            fs::write(dir.join(format!("exceedances_T{t}.csv")), out)?;
        }
    }
    Ok(())
}

/// Reads `(t, card)` changes from a trajectory CSV. The file must hold every
/// accepted transition.
pub fn read_trajectory(path: &Path) -> Result<(Vec<(f64, usize)>, f64)> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut path_out = Vec::new();
    let mut card = 1usize;
    let mut t_end = 0.0;
    let mut seen_header = false;
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            if line != clump_core::dynamics::TRAJECTORY_HEADER {
                bail!("line {}: expected trajectory header", i + 1);
            }
            seen_header = true;
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            bail!("line {}: expected 5 fields", i + 1);
        }
        let t: f64 = f[1].parse().with_context(|| format!("line {}: bad time", i + 1))?;
        let c: usize = f[2].parse().with_context(|| format!("line {}: bad size", i + 1))?;
        if c.abs_diff(card) > 1 {
            bail!("line {}: size jumps from {card} to {c}; record with keep_accepted = true", i + 1);
        }
        if c != card {
            path_out.push((t, c));
            card = c;
        }
        t_end = t;
    }
    Ok((path_out, t_end))
}

/// Rebuilds the excursion statistics from a stored trajectory.
pub fn cmd_analyze(trajectory: &Path, cfg: &RunConfig, out: &Path) -> Result<String> {
    let (path, t_end) = read_trajectory(trajectory)?;
    let mut tracker = ExcursionTracker::new(&cfg.thresholds)?;
    for (t, c) in path {
        tracker.record(t, c);
    }
    let mut log = tracker.into_log();
    log.t_end = log.t_end.max(t_end);
    let header = provenance_header(&cfg.hash(), cfg.seed);
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut run = header.clone();
    write_excursion_outputs(out, &header, &log, cfg, &mut run)?;
    write_file(&out.join("report.txt"), &run)?;
    Ok(run)
}

pub fn cmd_render(input: &Path, out: &Path, scale: u32) -> Result<()> {
    let cells = parse_cells(&read_file(input)?)?;
    if !clump_core::is_clump(&cells) {
        bail!("{} is not a clump", input.display());
    }
    write_file(out, &render_svg(&cells, scale))
}

pub const DEFAULT_CENSUS_BOUND: usize = DEFAULT_MAX_N;
