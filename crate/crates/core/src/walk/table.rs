use serde::Serialize;

use super::{derive_seed, run_shots, ShotHistogram, ZenoSchedule};
use super::{DEFAULT_SHOTS, RANDOM_CIRCUITS, RANDOM_CIRCUIT_SHOTS};
use crate::circuit::{build_circuit, Design, WalkConfig};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;

/// Settings for a table of mean distances per step count and design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableOptions {
    pub designs: Vec<Design>,
    pub max_steps: usize,
    pub width: usize,
    /// Shots for the deterministic designs.
    pub shots: usize,
    /// Random-jump cells pool `random_circuits` seeded circuits …
    pub random_circuits: usize,
    /// … each run for `random_shots` shots.
    pub random_shots: usize,
    pub noise: Option<NoiseModel>,
    /// Apply `noise` to the cascading design too (resets become measure plus X).
    pub noisy_cascading: bool,
    pub base_angle: f64,
    /// Passed through to [`WalkConfig::coin_reset`] for the coin designs.
    pub coin_reset: bool,
    pub seed: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            designs: vec![Design::Binary, Design::Arc, Design::ArcWalk, Design::RandomJump, Design::RandomJumpCascading],
            max_steps: 10,
            width: 6,
            shots: DEFAULT_SHOTS,
            random_circuits: RANDOM_CIRCUITS,
            random_shots: RANDOM_CIRCUIT_SHOTS,
            noise: None,
            noisy_cascading: false,
            base_angle: std::f64::consts::FRAC_PI_2,
            coin_reset: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceCell {
    pub design: Design,
    pub mean: f64,
    pub stderr: f64,
    pub shots: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceRow {
    pub steps: usize,
    pub cells: Vec<DistanceCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceTable {
    pub designs: Vec<Design>,
    pub rows: Vec<DistanceRow>,
}

impl DistanceTable {
    pub fn cell(&self, steps: usize, design: Design) -> Option<&DistanceCell> {
        self.rows
            .iter()
            .find(|r| r.steps == steps)
            .and_then(|r| r.cells.iter().find(|c| c.design == design))
    }

    pub fn mean(&self, steps: usize, design: Design) -> Option<f64> {
        self.cell(steps, design).map(|c| c.mean)
    }

    /// Means of one design, in step order.
    pub fn column(&self, design: Design) -> Vec<f64> {
        self.rows
            .iter()
            .filter_map(|r| r.cells.iter().find(|c| c.design == design).map(|c| c.mean))
            .collect()
    }
}

/// All shots of one table cell pooled: a single circuit for the deterministic
/// designs, or `random_circuits × random_shots` for the random ones.
pub fn design_histogram(opts: &TableOptions, design: Design, steps: usize) -> Result<ShotHistogram> {
    let design_tag = design as u64;
    let noise = match design {
        Design::RandomJumpCascading if !opts.noisy_cascading => None,
        _ => opts.noise.as_ref(),
    };
    let base_cfg = WalkConfig::new(design, opts.width, steps)
        .with_base_angle(opts.base_angle)
        .with_coin_reset(opts.coin_reset);
    if design.is_random() {
        let mut pooled = ShotHistogram::new();
        for c in 0..opts.random_circuits {
            // Circuit seeds ignore the step count, so longer circuits extend shorter ones.
            let cfg = base_cfg.clone().with_seed(derive_seed(opts.seed, &[design_tag, c as u64]));
            let circuit = build_circuit(&cfg)?;
            let shot_seed = derive_seed(opts.seed, &[design_tag, c as u64, steps as u64]);
            pooled.merge(&run_shots(&circuit, opts.random_shots, noise, ZenoSchedule::NEVER, shot_seed)?);
        }
        Ok(pooled)
    } else {
        let circuit = build_circuit(&base_cfg)?;
        let shot_seed = derive_seed(opts.seed, &[design_tag, steps as u64]);
        run_shots(&circuit, opts.shots, noise, ZenoSchedule::NEVER, shot_seed)
    }
}

/// Mean decoded position after `0..=max_steps` steps for each design.
pub fn distance_table(opts: &TableOptions) -> Result<DistanceTable> {
    if opts.designs.is_empty() {
        return Err(Error::InvalidConfig("no designs requested".into()));
    }
    if opts.shots == 0 || opts.random_circuits == 0 || opts.random_shots == 0 {
        return Err(Error::InvalidConfig("shot and circuit counts must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(opts.max_steps + 1);
    for steps in 0..=opts.max_steps {
        let mut cells = Vec::with_capacity(opts.designs.len());
        for &design in &opts.designs {
            let h = design_histogram(opts, design, steps)?;
            cells.push(DistanceCell {
                design,
                mean: h.mean(),
                stderr: h.stderr(),
                shots: h.total_shots(),
            });
        }
        rows.push(DistanceRow { steps, cells });
    }
    Ok(DistanceTable { designs: opts.designs.clone(), rows })
}
