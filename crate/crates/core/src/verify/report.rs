use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::bounds::SearchBounds;

/// A pair or family singled out by a check, with the values measured on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub instance: String,
    pub check: String,
    pub values: BTreeMap<String, i64>,
}

impl Finding {
    pub fn new(instance: impl Into<String>, check: &str, values: &[(&str, i64)]) -> Self {
        Finding {
            instance: instance.into(),
            check: check.to_string(),
            values: values.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub bounds: SearchBounds,
    pub checked: u64,
    pub counterexamples: Vec<Finding>,
    pub equality_witnesses: Vec<Finding>,
    pub stats: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// JSON without the timing field; identical across runs.
    pub fn to_json_untimed(&self) -> serde_json::Value {
        let mut v = self.to_json();
        v.as_object_mut()
            .expect("report is an object")
            .remove("elapsed_ms");
        v
    }

    /// One row per counterexample or witness.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,kind,instance,check,values\n");
        let rows = self
            .counterexamples
            .iter()
            .map(|f| ("counterexample", f))
            .chain(self.equality_witnesses.iter().map(|f| ("equality_witness", f)));
        for (kind, f) in rows {
            let values: Vec<String> = f.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                self.claim,
                kind,
                csv_field(&f.instance),
                f.check,
                csv_field(&values.join(";"))
            );
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Partial results of one partition; merged in partition order.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub counterexamples: Vec<Finding>,
    pub witnesses: Vec<Finding>,
    pub stats: BTreeMap<String, u64>,
}

impl Tally {
    pub fn bump(&mut self, stat: &str) {
        *self.stats.entry(stat.to_string()).or_default() += 1;
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.counterexamples.extend(other.counterexamples);
        self.witnesses.extend(other.witnesses);
        for (k, v) in other.stats {
            *self.stats.entry(k).or_default() += v;
        }
        self
    }

    pub fn into_report(self, claim: &str, bounds: &SearchBounds, started: std::time::Instant) -> VerifyReport {
        VerifyReport {
            claim: claim.to_string(),
            bounds: bounds.clone(),
            checked: self.checked,
            counterexamples: self.counterexamples,
            equality_witnesses: self.witnesses,
            stats: self.stats,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }
}
