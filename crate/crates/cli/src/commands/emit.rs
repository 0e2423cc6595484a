use qwalk_core::circuit::{build_circuit, to_text, WalkConfig};

use super::Artifact;
use crate::args::EmitCircuitArgs;
use crate::error::CliError;
use crate::manifest::RunManifest;

pub fn emit_circuit(a: &EmitCircuitArgs) -> Result<Vec<Artifact>, CliError> {
    let cfg = WalkConfig::new(a.design, a.width, a.steps)
        .with_seed(a.seed.seed)
        .with_base_angle(a.base_angle)
        .with_coin_reset(a.coin_reset);
    cfg.validate()?;
    let circuit = build_circuit(&cfg)?;
    let manifest = RunManifest::new("emit-circuit", a).with_output(a.out.as_deref());
    Ok(vec![Artifact::new(a.out.clone(), manifest.comment_lines() + &to_text(&circuit))])
}
