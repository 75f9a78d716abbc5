use std::time::Instant;

use serde_json::{json, Value};

use crate::catalog::Catalog;
use crate::checks::check;
use crate::instance::{InstanceSpec, Kind, Loader};
use crate::mining::{mine_instances, Limits};
use crate::report::{format_timestamp, ErrorClass, InstanceReport, Verdict, VerificationReport};
use crate::{HarnessError, Result};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub name: String,
    pub kinds: Vec<Kind>,
    pub limits: Limits,
    pub seed: u64,
    /// Record wall-clock millis and the current time instead of zeros and
    /// `SOURCE_DATE_EPOCH` (or the Unix epoch).
    pub timings: bool,
    /// Report failed equalities plainly instead of flagging an engine bug.
    pub plain_failures: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            name: "default".into(),
            kinds: Kind::ALL.to_vec(),
            limits: Limits::default(),
            seed: charlab::chartab::DEFAULT_SEED,
            timings: false,
            plain_failures: false,
        }
    }
}

fn timestamp(opts: &SuiteOptions) -> String {
    if opts.timings {
        return chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string();
    }
    let secs = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .unwrap_or(0);
    format_timestamp(secs)
}

fn run_one(loader: &Loader, spec: &InstanceSpec, opts: &SuiteOptions) -> InstanceReport {
    let start = Instant::now();
    let mut report = InstanceReport {
        kind: spec.kind.to_string(),
        group_names: vec![format!("ambient = {}", spec.ambient)],
        hypotheses: Vec::new(),
        lhs: None,
        rhs: None,
        verdict: Verdict::Error,
        millis: 0,
        witnesses: Value::Null,
        error_class: None,
        note: None,
    };
    let outcome = loader.load(spec).and_then(|inst| {
        report.group_names = inst.group_names();
        report.hypotheses = inst.hypotheses.clone();
        check(&inst)
    });
    match outcome {
        Ok(o) => {
            report.lhs = Some(o.lhs);
            report.rhs = Some(o.rhs);
            report.witnesses = o.witnesses;
            report.verdict = if o.passed {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            if !o.passed && !opts.plain_failures {
                let orbits_agree = report.witnesses["orbit_counts_agree"] == json!(true);
                report.note = Some(if orbits_agree {
                    "literal class count differs; A-orbit counts on both sides agree".into()
                } else {
                    "engine bug: the checked statement is a theorem".into()
                });
            }
        }
        Err(e) => {
            report.error_class = Some(match e {
                HarnessError::Dsl(_) => ErrorClass::Parse,
                HarnessError::Hypothesis(_) => ErrorClass::Hypothesis,
                _ => ErrorClass::Engine,
            });
            report.witnesses = json!({ "error": e.to_string() });
        }
    }
    if opts.timings {
        report.millis = start.elapsed().as_millis() as u64;
    }
    report
}

/// Loads and checks the given instances concurrently; the report keeps
/// input order.
pub fn run_instances(
    loader: &Loader,
    specs: &[InstanceSpec],
    opts: &SuiteOptions,
) -> VerificationReport {
    let reports = charlab::par::map(specs, |s| run_one(loader, s, opts));
    VerificationReport::new(opts.name.clone(), timestamp(opts), reports)
}

/// Mines every requested kind from the catalog, then checks everything.
pub fn run_suite(catalog: &Catalog, opts: &SuiteOptions) -> Result<VerificationReport> {
    let loader = Loader::new(opts.seed);
    let mut kinds = opts.kinds.clone();
    kinds.sort();
    kinds.dedup();
    let mut specs = Vec::new();
    for kind in kinds {
        specs.extend(mine_instances(catalog, kind, &opts.limits, &loader)?);
    }
    Ok(run_instances(&loader, &specs, opts))
}

/// A suite file: an optional catalog to mine, explicit instances, or both.
#[derive(Clone, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct SuiteFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kinds: Option<Vec<Kind>>,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

impl SuiteFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::Format(e.to_string()))
    }

    pub fn catalog(&self) -> Result<Option<Catalog>> {
        self.catalog
            .as_ref()
            .map(|v| Catalog::parse_json(&v.to_string()))
            .transpose()
    }
}

/// Runs a suite file: mined instances first, then the listed ones. Kinds
/// given in `opts` filter both.
pub fn run_suite_file(file: &SuiteFile, opts: &SuiteOptions) -> Result<VerificationReport> {
    let loader = Loader::new(opts.seed);
    let mut kinds = file.kinds.clone().unwrap_or_else(|| opts.kinds.clone());
    kinds.retain(|k| opts.kinds.contains(k));
    kinds.sort();
    kinds.dedup();
    let mut specs = Vec::new();
    if let Some(catalog) = file.catalog()? {
        catalog.validate()?;
        for &kind in &kinds {
            specs.extend(mine_instances(&catalog, kind, &opts.limits, &loader)?);
        }
    }
    specs.extend(
        file.instances
            .iter()
            .filter(|s| kinds.contains(&s.kind))
            .cloned(),
    );
    let mut opts = opts.clone();
    if let Some(n) = &file.name {
        opts.name = n.clone();
    }
    Ok(run_instances(&loader, &specs, &opts))
}
