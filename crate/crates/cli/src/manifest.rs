//! Run manifest: reproducibility record emitted to stderr after each
//! command.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Reproducibility record for one CLI invocation. The input digest is a
/// SHA-256 over the raw input file bytes, so identical inputs always carry
/// identical digests; timings live only here, never in the data outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_digest: String,
    pub config: serde_json::Value,
    pub stages: serde_json::Value,
    pub total_elapsed_seconds: f64,
    pub version: &'static str,
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

impl RunManifest {
    pub fn new(command: &str, input: &[u8], config: serde_json::Value) -> Self {
        RunManifest {
            command: command.to_string(),
            input_digest: digest_hex(input),
            config,
            stages: serde_json::Value::Null,
            total_elapsed_seconds: 0.0,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn emit_to_stderr(&self) {
        if let Ok(text) = serde_json::to_string(self) {
            eprintln!("manifest: {text}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        let a = digest_hex(b"abc");
        let b = digest_hex(b"abc");
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        assert_ne!(digest_hex(b"abd"), a);
    }
}
