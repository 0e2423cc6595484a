use std::fs;

use qwalk_core::circuit::parse_text;
use qwalk_core::noise::{census, estimate_fidelity, GateCensus, NoiseModel};

use super::{csv_row, Artifact};
use crate::args::FidelityArgs;
use crate::error::CliError;
use crate::manifest::RunManifest;

pub fn fidelity(a: &FidelityArgs) -> Result<Vec<Artifact>, CliError> {
    let gates = match &a.census_from {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            census(&parse_text(&text)?)
        }
        None => GateCensus { count_1q: a.count_1q, count_2q: a.count_2q },
    };
    let model = NoiseModel::new(a.fidelity_1q, a.fidelity_2q, 0.0)?;
    let f = estimate_fidelity(gates, &model);
    let manifest = RunManifest::new("fidelity", a).with_output(a.out.as_deref());
    let mut s = manifest.comment_lines();
    s += &csv_row(["count_1q", "count_2q", "fidelity_1q", "fidelity_2q", "fidelity"]);
    s += &csv_row([
        gates.count_1q.to_string(),
        gates.count_2q.to_string(),
        a.fidelity_1q.to_string(),
        a.fidelity_2q.to_string(),
        format!("{f:.6}"),
    ]);
    Ok(vec![Artifact::new(a.out.clone(), s)])
}
