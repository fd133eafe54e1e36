use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::{CliError, Command};

/// sha256 over the serialized arguments followed by the contents of every input file.
pub fn config_hash(cmd: &Command) -> Result<String, CliError> {
    let mut h = Sha256::new();
    h.update(cmd.name().as_bytes());
    h.update([0]);
    let args = serde_json::to_string(cmd).map_err(|e| CliError::Usage(e.to_string()))?;
    h.update(args.as_bytes());
    for path in cmd.inputs() {
        h.update([0]);
        h.update(read_bytes(path)?);
    }
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let bytes = read_bytes(path)?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

/// What a command produced: a status, its exit code, report fields and extra files.
pub(crate) struct Outcome {
    pub status: &'static str,
    pub exit_code: i32,
    pub body: Map<String, Value>,
    pub files: Vec<(String, String)>,
}

impl Outcome {
    pub fn new(status: &'static str, exit_code: i32) -> Self {
        Outcome {
            status,
            exit_code,
            body: Map::new(),
            files: Vec::new(),
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::new("pass", crate::EXIT_PASS)
        } else {
            Outcome::new("fail", crate::EXIT_FAIL)
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.body.insert(key.to_string(), v);
    }

    pub fn json_file(&mut self, name: &str, value: &impl Serialize) {
        let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
        self.files.push((name.to_string(), text));
    }

    pub fn csv_file(&mut self, name: &str, columns: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) {
        let mut text = columns.join(",");
        text.push('\n');
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        self.files.push((name.to_string(), text));
    }
}

pub(crate) struct Context {
    pub command: &'static str,
    pub out: PathBuf,
    pub hash: String,
    pub seed: u64,
}

impl Context {
    pub fn new(cmd: &Command) -> Result<Self, CliError> {
        Ok(Context {
            command: cmd.name(),
            out: cmd.common().out.clone(),
            hash: config_hash(cmd)?,
            seed: cmd.common().seed,
        })
    }

    pub fn finish(&self, outcome: Outcome) -> Result<i32, CliError> {
        fs::create_dir_all(&self.out)
            .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", self.out.display())))?;
        let mut report = Map::new();
        report.insert("command".into(), self.command.into());
        report.insert("version".into(), radial_bm::VERSION.into());
        report.insert("config_hash".into(), self.hash.clone().into());
        report.insert("seed".into(), self.seed.into());
        report.insert("status".into(), outcome.status.into());
        report.insert("exit_code".into(), outcome.exit_code.into());
        for (k, v) in outcome.body {
            report.insert(k, v);
        }
        let report_name = format!("{}_report.json", self.command);
        let mut files = outcome.files;
        files.push((report_name.clone(), serde_json::to_string_pretty(&Value::Object(report)).expect("json") + "\n"));
        for (name, text) in files {
            let path = self.out.join(&name);
            fs::write(&path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
        println!("{}: {} ({})", self.command, outcome.status, self.out.join(report_name).display());
        Ok(outcome.exit_code)
    }
}
