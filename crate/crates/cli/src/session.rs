use std::collections::BTreeMap;
use std::fs;

use leavitt::graph::{parse_graph_with, ParseOptions};
use leavitt::{Error, LeavittAlgebra, WeightGrading, WitnessOptions};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Format, GlobalArgs};

/// A failed command: diagnostic text and process exit status.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub exit: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { message: message.into(), exit: 2 }
    }

    pub fn checked(message: impl Into<String>) -> Self {
        Failure { message: message.into(), exit: 1 }
    }
}

/// Exit 1 for checked mathematical failures, 2 for bad input.
impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let exit = match err {
            Error::NoWitnessWithinBound(_)
            | Error::GraphHasSource(_)
            | Error::DecompositionFailure(_)
            | Error::InternalInvariantBreach(_)
            | Error::NotASource(_)
            | Error::IsolatedVertex(_)
            | Error::NotIsolated(_)
            | Error::InfiniteEmitter(_) => 1,
            _ => 2,
        };
        Failure { message: err.to_string(), exit }
    }
}

pub type CmdResult<T> = Result<T, Failure>;

/// What a command prints, in both output formats.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit: u8,
}

impl Outcome {
    pub fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, exit: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.is_empty() && !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json value")),
        }
    }
}

pub struct Session {
    pub alg: LeavittAlgebra,
    pub graph_sha256: String,
    pub global: GlobalArgs,
}

impl Session {
    pub fn open(global: &GlobalArgs) -> CmdResult<Self> {
        let path = global.graph.as_ref().ok_or_else(|| Failure::usage("--graph is required"))?;
        let bytes = fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::usage("graph file is not UTF-8"))?;
        let graph = parse_graph_with(&text, ParseOptions { allow_reserved: global.allow_reserved })?;
        Ok(Session {
            alg: LeavittAlgebra::new(graph, global.field),
            graph_sha256: hex::encode(Sha256::digest(&bytes)),
            global: global.clone(),
        })
    }

    pub fn element(&self, text: &str) -> CmdResult<leavitt::Element> {
        Ok(leavitt::parse_element(&self.alg, text)?)
    }

    pub fn grading(&self, weights: Option<&str>) -> CmdResult<Option<WeightGrading>> {
        let Some(spec) = weights else { return Ok(None) };
        let mut named = BTreeMap::new();
        for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, w) =
                part.split_once('=').ok_or_else(|| Failure::usage(format!("weight `{part}` is not `edge=n`")))?;
            let w: i64 = w.trim().parse().map_err(|_| Failure::usage(format!("bad weight `{w}`")))?;
            named.insert(name.trim().to_string(), w);
        }
        Ok(Some(WeightGrading::from_names(self.alg.graph(), &named)?))
    }

    pub fn witness_options(&self, grading: Option<WeightGrading>) -> WitnessOptions {
        WitnessOptions { start_bound: self.global.start_bound, max_bound: self.global.max_bound, grading }
    }

    /// Common header of every structured report.
    pub fn header(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), json!(command));
        m.insert("graph_sha256".into(), json!(self.graph_sha256));
        m.insert("field".into(), json!(self.alg.field().to_string()));
        m
    }
}
