use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::cell::{Cell, CubicalSet};
use crate::dynamics::lattice::Lattice;
use crate::dynamics::observe::Observer;
use crate::error::{Error, Result};
use crate::table::MoveTable;
use crate::topology::is_clump;

/// Parameters of one chain.
#[derive(Clone, Debug, PartialEq)]
pub struct SimParams {
    pub p_up: f64,
    pub p_down: f64,
    pub seed: u64,
    pub max_events: u64,
    /// The run stops with [`RunStatus::Overflow`] once the clump has more
    /// cells than this.
    pub max_size: usize,
}

impl SimParams {
    pub fn new(p_up: f64, p_down: f64, seed: u64) -> Result<Self> {
        let p = SimParams {
            p_up,
            p_down,
            seed,
            max_events: 1_000_000,
            max_size: 100_000,
        };
        p.validate()?;
        Ok(p)
    }

    /// `p_down = 1` and `p_up = beta`.
    pub fn with_beta(beta: f64, seed: u64) -> Result<Self> {
        Self::new(beta, 1.0, seed)
    }

    pub fn events(mut self, max_events: u64) -> Self {
        self.max_events = max_events;
        self
    }

    pub fn size_cap(mut self, max_size: usize) -> Self {
        self.max_size = max_size;
        self
    }

    pub fn beta(&self) -> f64 {
        self.p_up / self.p_down
    }

    pub fn validate(&self) -> Result<()> {
        // p_up = 0 freezes the chain at the single cube, which is still a valid run
        if !(0.0..=1.0).contains(&self.p_up) || !(self.p_down > 0.0 && self.p_down <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= p_up <= 1 and 0 < p_down <= 1, got {} and {}",
                self.p_up, self.p_down
            )));
        }
        if self.max_size == 0 {
            return Err(Error::InvalidParameter("max_size must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    None,
    Expand,
    Collapse,
}

impl Action {
    pub fn delta(self) -> i64 {
        match self {
            Action::None => 0,
            Action::Expand => 1,
            Action::Collapse => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::None => "none",
            Action::Expand => "expand",
            Action::Collapse => "collapse",
        }
    }
}

/// What one event did. `t` and `card` are the values after the event and
/// `dt` is the holding time that preceded it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub event_index: u64,
    pub t: f64,
    pub dt: f64,
    pub card: usize,
    pub action: Action,
    pub cell: Cell,
}

impl StepRecord {
    pub fn accepted(&self) -> bool {
        self.action != Action::None
    }

    pub fn card_before(&self) -> usize {
        (self.card as i64 - self.action.delta()) as usize
    }
}

/// A clump pinned at the origin, the clock, and the generator.
#[derive(Clone, Debug)]
pub struct ChainState {
    lattice: Lattice,
    pub t: f64,
    pub events: u64,
    p_up: f64,
    p_down: f64,
    rng: ChaCha8Rng,
}

impl ChainState {
    /// Starts from the single origin cell on stream 0.
    pub fn new(params: &SimParams) -> Result<Self> {
        Self::on_stream(params, 0)
    }

    /// Independent replicas share the seed and use distinct streams.
    pub fn on_stream(params: &SimParams, stream: u64) -> Result<Self> {
        params.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(stream);
        Ok(ChainState {
            lattice: Lattice::single(),
            t: 0.0,
            events: 0,
            p_up: params.p_up,
            p_down: params.p_down,
            rng,
        })
    }

    /// Replaces the clump. It must be a clump containing the origin.
    pub fn with_cells(mut self, cells: &CubicalSet) -> Result<Self> {
        if !cells.contains(Cell::ORIGIN) {
            return Err(Error::NotMember(Cell::ORIGIN));
        }
        if !is_clump(cells) {
            return Err(Error::NotAClump);
        }
        self.lattice = Lattice::from_cells(cells);
        Ok(self)
    }

    pub fn card(&self) -> usize {
        self.lattice.card()
    }

    pub fn cells(&self) -> CubicalSet {
        self.lattice.to_set()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.lattice.contains(c)
    }

    pub fn event_count(&self) -> usize {
        self.lattice.events().len()
    }

    /// Event cells in their current internal order.
    pub fn event_cells(&self) -> Vec<Cell> {
        self.lattice.events().iter().map(|&k| self.lattice.cell(k as usize)).collect()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// One event of the continuous-time chain: an exponential holding time
    /// at rate `|M|`, a uniform event cell, and a coin if the move is allowed.
    pub fn step(&mut self, table: &MoveTable) -> StepRecord {
        let events = self.lattice.events();
        let k = events.len();
        let dt = self.rng.sample::<f64, _>(Exp1) / k as f64;
        let site = events[self.rng.random_range(0..k)] as usize;
        self.t += dt;
        self.events += 1;
        let cell = self.lattice.cell(site);
        let mut action = Action::None;
        if table.allows_bits(self.lattice.mask(site)) {
            let u: f64 = self.rng.random();
            if self.lattice.is_occupied(site) {
                if u < self.p_down {
                    self.lattice.remove_index(site);
                    action = Action::Collapse;
                }
            } else if u < self.p_up {
                self.lattice.insert_index(site);
                action = Action::Expand;
            }
        }
        StepRecord {
            event_index: self.events,
            t: self.t,
            dt,
            card: self.lattice.card(),
            action,
            cell,
        }
    }

    /// Admissible expansions and collapses, the origin excluded.
    pub fn admissible_moves(&self, table: &MoveTable) -> (Vec<Cell>, Vec<Cell>) {
        let (mut up, mut down) = (Vec::new(), Vec::new());
        for &k in self.lattice.events() {
            let k = k as usize;
            if table.allows_bits(self.lattice.mask(k)) {
                let c = self.lattice.cell(k);
                if self.lattice.is_occupied(k) {
                    down.push(c);
                } else {
                    up.push(c);
                }
            }
        }
        (up, down)
    }

    /// One move of the embedded jump chain. Expansions are chosen with total
    /// weight `p_up * M+` and collapses with `p_down * M-`, uniformly within
    /// each kind. Time does not advance.
    pub fn jump_step(&mut self, table: &MoveTable) -> Result<StepRecord> {
        let (up, down) = self.admissible_moves(table);
        let w_up = self.p_up * up.len() as f64;
        let w_down = self.p_down * down.len() as f64;
        if w_up + w_down == 0.0 {
            return Err(Error::NoAdmissibleMove);
        }
        let u: f64 = self.rng.random::<f64>() * (w_up + w_down);
        let (cell, action) = if u < w_up {
            (up[self.rng.random_range(0..up.len())], Action::Expand)
        } else {
            (down[self.rng.random_range(0..down.len())], Action::Collapse)
        };
        let site = self.lattice.index(cell);
        match action {
            Action::Expand => self.lattice.insert_index(site),
            _ => self.lattice.remove_index(site),
        }
        self.events += 1;
        Ok(StepRecord {
            event_index: self.events,
            t: self.t,
            dt: 0.0,
            card: self.lattice.card(),
            action,
            cell,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    /// The event budget ran out.
    Completed,
    /// The clump grew past the size cap.
    Overflow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub status: RunStatus,
    pub events: u64,
    pub t_end: f64,
    pub final_card: usize,
    pub max_card: usize,
}

/// Steps `state` until the event budget or the size cap is reached, handing
/// every event to `observer`.
pub fn run_state<O: Observer + ?Sized>(
    state: &mut ChainState,
    params: &SimParams,
    table: &MoveTable,
    observer: &mut O,
) -> RunSummary {
    let mut max_card = state.card();
    let mut status = RunStatus::Completed;
    while state.events < params.max_events {
        let rec = state.step(table);
        max_card = max_card.max(rec.card);
        observer.on_step(&rec);
        if rec.card > params.max_size {
            status = RunStatus::Overflow;
            break;
        }
    }
    observer.on_finish(state.t, state.card());
    RunSummary {
        status,
        events: state.events,
        t_end: state.t,
        final_card: state.card(),
        max_card,
    }
}

/// Runs a fresh chain from the single origin cell.
pub fn run<O: Observer + ?Sized>(
    params: &SimParams,
    table: &MoveTable,
    observer: &mut O,
) -> Result<(RunSummary, ChainState)> {
    let mut state = ChainState::new(params)?;
    let summary = run_state(&mut state, params, table, observer);
    Ok((summary, state))
}
