use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Provenance for one run. Written as `#` comment lines ahead of CSV and
/// circuit output, and under a `manifest` key in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub seed: Option<u64>,
    pub parameters: BTreeMap<String, String>,
    pub outputs: Vec<String>,
}

fn flatten_into(key: &str, value: &Value, out: &mut BTreeMap<String, String>) {
    match value {
        Value::Object(map) => {
            // Nested objects are flattened clap groups. Flag names are unique
            // within a subcommand, so their keys can stay bare.
            for (k, v) in map {
                flatten_into(k, v, out);
            }
        }
        Value::Null => {}
        Value::String(s) => {
            out.insert(key.to_string(), s.clone());
        }
        Value::Array(items) => {
            let joined: Vec<String> = items
                .iter()
                .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
                .collect();
            out.insert(key.to_string(), joined.join(","));
        }
        other => {
            out.insert(key.to_string(), other.to_string());
        }
    }
}

impl RunManifest {
    pub fn new<A: Serialize>(subcommand: &str, args: &A) -> Self {
        let mut parameters = BTreeMap::new();
        if let Ok(v) = serde_json::to_value(args) {
            flatten_into("", &v, &mut parameters);
        }
        let seed = parameters.remove("seed").and_then(|s| s.parse().ok());
        for key in ["out", "json"] {
            parameters.remove(key);
        }
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            seed,
            parameters,
            outputs: Vec::new(),
        }
    }

    pub fn with_output(mut self, path: Option<&std::path::Path>) -> Self {
        if let Some(p) = path {
            self.outputs.push(p.display().to_string());
        }
        self
    }

    pub fn comment_lines(&self) -> String {
        let mut s = format!("# {} {} {}\n", self.tool, self.version, self.subcommand);
        if let Some(seed) = self.seed {
            s.push_str(&format!("# seed: {seed}\n"));
        }
        for (k, v) in &self.parameters {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        for o in &self.outputs {
            s.push_str(&format!("# output: {o}\n"));
        }
        s
    }

    /// `{"manifest": …, "result": …}`, pretty-printed with a trailing newline.
    pub fn wrap_json<T: Serialize>(&self, result: &T) -> String {
        #[derive(Serialize)]
        struct Wrapped<'a, T> {
            manifest: &'a RunManifest,
            result: &'a T,
        }
        let mut s = serde_json::to_string_pretty(&Wrapped { manifest: self, result }).expect("serializable");
        s.push('\n');
        s
    }
}
