use qwalk_core::circuit::Design;
use qwalk_core::walk::{
    arc_expected, derive_seed, design_histogram, distance_table as run_table, two_way_distribution, zeno_experiment,
    DistanceTable, ShotHistogram, TableOptions, ZenoSchedule,
};
use qwalk_core::{build_circuit, run_shots, WalkConfig};
use serde::Serialize;

use super::{csv_row, Artifact};
use crate::args::{DistanceTableArgs, HistFormat, TableFormat, WalkHistArgs, ZenoArgs};
use crate::error::CliError;
use crate::manifest::RunManifest;

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

pub fn distance_table(a: &DistanceTableArgs) -> Result<Vec<Artifact>, CliError> {
    let opts = TableOptions {
        designs: a.designs.0.clone(),
        max_steps: a.steps,
        width: a.width,
        shots: a.shots,
        random_circuits: a.random.random_circuits,
        random_shots: a.random.random_shots,
        noise: a.noise.active_model()?,
        noisy_cascading: a.random.noisy_cascading,
        base_angle: a.base_angle,
        coin_reset: a.random.coin_reset,
        seed: a.seed.seed,
    };
    WalkConfig::new(Design::Arc, a.width, a.steps).with_base_angle(a.base_angle).validate()?;
    let table = run_table(&opts)?;
    let manifest = RunManifest::new("distance-table", a).with_output(a.out.as_deref());
    let content = match a.format {
        TableFormat::Wide => manifest.comment_lines() + &wide_csv(&table),
        TableFormat::Long => manifest.comment_lines() + &long_csv(&table),
        TableFormat::Json => manifest.wrap_json(&table),
    };
    Ok(vec![Artifact::new(a.out.clone(), content)])
}

fn wide_csv(table: &DistanceTable) -> String {
    let mut s = csv_row(std::iter::once("steps").chain(table.designs.iter().map(Design::as_str)));
    for row in &table.rows {
        s += &csv_row(std::iter::once(row.steps.to_string()).chain(row.cells.iter().map(|c| fmt(c.mean))));
    }
    s
}

fn long_csv(table: &DistanceTable) -> String {
    let mut s = csv_row(["steps", "design", "mean", "stderr", "shots"]);
    for row in &table.rows {
        for c in &row.cells {
            s += &csv_row([row.steps.to_string(), c.design.to_string(), fmt(c.mean), fmt(c.stderr), c.shots.to_string()]);
        }
    }
    s
}

#[derive(Serialize)]
struct HistReport<'a> {
    design: Design,
    steps: usize,
    two_way: bool,
    mean: f64,
    stderr: f64,
    histogram: &'a ShotHistogram,
}

pub fn walk_hist(a: &WalkHistArgs) -> Result<Vec<Artifact>, CliError> {
    let noise = a.noise.active_model()?;
    let down_angle = a.down_angle.unwrap_or(a.base_angle);
    let opts = |angle: f64, seed: u64| TableOptions {
        designs: vec![a.design],
        max_steps: a.steps,
        width: a.width,
        shots: a.shots,
        random_circuits: a.random.random_circuits,
        random_shots: a.random.random_shots,
        noise,
        noisy_cascading: a.random.noisy_cascading,
        base_angle: angle,
        coin_reset: a.random.coin_reset,
        seed,
    };
    let schedule = ZenoSchedule::every(a.period);
    let walk = |angle: f64, seed: u64| -> Result<ShotHistogram, CliError> {
        let o = opts(angle, seed);
        if schedule.period == 0 {
            return Ok(design_histogram(&o, a.design, a.steps)?);
        }
        if a.design.is_random() {
            return Err(CliError::Usage("--period applies to deterministic designs only".into()));
        }
        let cfg = WalkConfig::new(a.design, a.width, a.steps)
            .with_base_angle(angle)
            .with_coin_reset(a.random.coin_reset);
        let circuit = build_circuit(&cfg)?;
        Ok(run_shots(&circuit, a.shots, o.noise.as_ref(), schedule, derive_seed(seed, &[a.design as u64, a.steps as u64]))?)
    };

    let up = walk(a.base_angle, a.seed.seed)?;
    let hist = if a.two_way {
        // The downward walk gets its own seed stream.
        let down = walk(down_angle, derive_seed(a.seed.seed, &[u64::MAX]))?;
        two_way_distribution(&up, &down)?
    } else {
        up
    };

    let manifest = RunManifest::new("walk-hist", a).with_output(a.out.as_deref());
    let content = match a.format {
        HistFormat::Csv => {
            let mut s = manifest.comment_lines() + &csv_row(["position", "frequency"]);
            for (pos, f) in hist.frequencies() {
                s += &csv_row([pos.to_string(), format!("{f:.8}")]);
            }
            s
        }
        HistFormat::Json => manifest.wrap_json(&HistReport {
            design: a.design,
            steps: a.steps,
            two_way: a.two_way,
            mean: hist.mean(),
            stderr: hist.stderr(),
            histogram: &hist,
        }),
    };
    Ok(vec![Artifact::new(a.out.clone(), content)])
}

pub fn zeno(a: &ZenoArgs) -> Result<Vec<Artifact>, CliError> {
    if a.periods.0.is_empty() {
        return Err(CliError::Usage("--periods needs at least one value".into()));
    }
    let schedules: Vec<ZenoSchedule> = a.periods.0.iter().map(|&p| ZenoSchedule::every(p)).collect();
    let points = zeno_experiment(a.width, a.steps, a.base_angle, &schedules, a.shots, a.seed.seed)?;
    let manifest = RunManifest::new("zeno", a).with_output(a.out.as_deref());
    let mut s = manifest.comment_lines();
    s += &format!("# unmeasured closed form: {:.6}\n", arc_expected(a.width, a.steps, a.base_angle));
    s += &csv_row(["period", "mean", "stderr"]);
    for p in &points {
        s += &csv_row([p.period.to_string(), fmt(p.mean), fmt(p.stderr)]);
    }
    Ok(vec![Artifact::new(a.out.clone(), s)])
}
