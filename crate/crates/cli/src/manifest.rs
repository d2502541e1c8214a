use std::time::Duration;

use serde_json::json;
use sha2::{Digest, Sha256};

use crate::commands::CliError;
use crate::Global;

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Writes the run manifest. Everything except `wall_time_s` is a function
/// of the command line and the input bytes.
pub fn write(
    path: &str,
    command: &str,
    argv: &[String],
    global: &Global,
    inputs: &[(String, String)],
    output: &[u8],
    elapsed: Duration,
) -> Result<(), CliError> {
    let m = json!({
        "command": command,
        "parameters": argv.get(1..).unwrap_or(&[]),
        "seed": global.seed,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "input_digests": inputs.iter().map(|(name, d)| json!({ "input": name, "sha256": d })).collect::<Vec<_>>(),
        "output_sha256": digest(output),
        "wall_time_s": elapsed.as_secs_f64(),
    });
    std::fs::write(path, serde_json::to_string_pretty(&m).expect("json") + "\n")
        .map_err(|e| CliError::bad_input("io", format!("cannot write manifest {path}: {e}")))
}
