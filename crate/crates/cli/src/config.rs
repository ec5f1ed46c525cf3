use std::collections::BTreeMap;

use serde::Serialize;

use crate::args::Global;

/// Everything needed to replay a run, recorded in output headers.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub mode: String,
    pub exhaustive_limit: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub budgets: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn new(command: &str, global: &Global) -> Self {
        ExperimentConfig {
            command: command.to_string(),
            family: None,
            params: BTreeMap::new(),
            seed: global.seed,
            mode: "exhaustive".into(),
            exhaustive_limit: global.exhaustive_limit,
            budgets: BTreeMap::new(),
            out: global.out.as_ref().map(|p| p.display().to_string()),
        }
    }

    pub fn family(mut self, family: &str) -> Self {
        self.family = Some(family.to_string());
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn budget(mut self, key: &str, value: u64) -> Self {
        self.budgets.insert(key.to_string(), value);
        self
    }

    pub fn sampled(mut self, samples: u64) -> Self {
        self.mode = format!("sampled:{samples}");
        self
    }

    /// Header comment lines: a readable summary plus the JSON record.
    pub fn header(&self) -> Vec<String> {
        let mut lines = Vec::new();
        if let Some(f) = &self.family {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            lines.push(format!("family {f} {}", params.join(" ")).trim_end().to_string());
        }
        lines.push(format!("config {}", serde_json::to_string(self).expect("plain data")));
        lines
    }
}
