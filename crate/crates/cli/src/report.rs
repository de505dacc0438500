use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// The JSON document every command prints.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub elapsed_ms: u128,
    pub result: Value,
}

impl RunReport {
    pub fn new(command: &str, started: Instant, result: Value) -> Self {
        RunReport {
            command: command.to_string(),
            args: std::env::args().skip(1).collect(),
            input_digest: None,
            budget: None,
            elapsed_ms: started.elapsed().as_millis(),
            result,
        }
    }

    pub fn with_input(mut self, text: &str) -> Self {
        self.input_digest = Some(digest(text));
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn print(&self) -> anyhow::Result<()> {
        let mut out = std::io::stdout().lock();
        match writeln!(out, "{}", serde_json::to_string_pretty(self)?) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        }
    }
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
