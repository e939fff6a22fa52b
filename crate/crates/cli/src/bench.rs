//! The benchmark harness: a JSON suite config in, one record per
//! (instance, method) out, as CSV or JSON.
//!
//! Records are produced in config order and wall times are reported only
//! on request, so two runs of the same suite emit byte-identical files.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use hvc::approx::{approx_dense, guarantee};
use hvc::error::Error;
use hvc::format::{from_hvc_str, instance_sha256};
use hvc::generators::{pad_to_dense, random_dense, random_lwise_dense, tight_family};
use hvc::hypergraph::KPartiteHypergraph;
use hvc::rational::{int_u, parse as parse_rational, Rational};
use hvc::solvers::{baseline_cover, BaselineStrategy, ExactConfig};

use crate::report::RationalJson;

pub const SUITE_SCHEMA_VERSION: u32 = 1;

/// The suite file: which instances, which methods, what budget.
#[derive(Debug, Clone, Deserialize)]
pub struct SuiteConfig {
    pub version: u32,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
    #[serde(default)]
    pub methods: Vec<MethodSpec>,
    #[serde(default)]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InstanceSpec {
    Tight {
        k: usize,
        l: usize,
        u: usize,
    },
    Random {
        sizes: Vec<usize>,
        epsilon: String,
        seed: u64,
    },
    Lwise {
        sizes: Vec<usize>,
        ell: usize,
        epsilon: String,
        seed: u64,
    },
    File {
        path: String,
    },
    Pad {
        base: Box<InstanceSpec>,
        epsilon: String,
    },
}

#[derive(Debug, Clone, Deserialize)]
pub struct MethodSpec {
    pub method: MethodName,
    #[serde(default)]
    pub baseline: Option<BaselineName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodName {
    Exact,
    LpThreshold,
    TrivialPart,
    ApproxDense,
}

impl MethodName {
    pub fn label(&self) -> &'static str {
        match self {
            MethodName::Exact => "exact",
            MethodName::LpThreshold => "lp-threshold",
            MethodName::TrivialPart => "trivial-part",
            MethodName::ApproxDense => "approx-dense",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineName {
    Exact,
    LpThreshold,
    TrivialPart,
}

impl BaselineName {
    pub fn label(&self) -> &'static str {
        match self {
            BaselineName::Exact => "exact",
            BaselineName::LpThreshold => "lp-threshold",
            BaselineName::TrivialPart => "trivial-part",
        }
    }

    pub fn strategy(&self) -> BaselineStrategy {
        match self {
            BaselineName::Exact => BaselineStrategy::Exact,
            BaselineName::LpThreshold => BaselineStrategy::LpThreshold,
            BaselineName::TrivialPart => BaselineStrategy::TrivialPart,
        }
    }
}

/// One (instance, method) measurement.
#[derive(Debug, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub sha256: String,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub eps: RationalJson,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<String>,
    /// Minimum cover size, when the oracle stayed within budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_size: Option<usize>,
    /// `cover_size / tau`, exact, when both are known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RationalJson>,
    /// Half-k-baseline guarantee at the instance's density.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<RationalJson>,
    /// Certified factor of the executed method, when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_ratio: Option<RationalJson>,
    /// Exact check `ratio <= certified_ratio`, when both are known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_certified: Option<bool>,
    pub status: String,
    /// Wall time of the instance build + oracle phase, with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_wall_ms: Option<u128>,
    /// Wall time of the method run, with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

pub fn build_instance(spec: &InstanceSpec) -> anyhow::Result<(String, KPartiteHypergraph)> {
    match spec {
        InstanceSpec::Tight { k, l, u } => {
            Ok((format!("tight(k={k},l={l},u={u})"), tight_family(*k, *l, *u)?))
        }
        InstanceSpec::Random {
            sizes,
            epsilon,
            seed,
        } => {
            let eps = parse_eps(epsilon)?;
            Ok((
                format!("random(sizes={sizes:?},eps={epsilon},seed={seed})"),
                random_dense(sizes, &eps, *seed)?,
            ))
        }
        InstanceSpec::Lwise {
            sizes,
            ell,
            epsilon,
            seed,
        } => {
            let eps = parse_eps(epsilon)?;
            Ok((
                format!("lwise(sizes={sizes:?},ell={ell},eps={epsilon},seed={seed})"),
                random_lwise_dense(sizes, *ell, &eps, *seed)?,
            ))
        }
        InstanceSpec::File { path } => {
            let text = std::fs::read_to_string(path)?;
            Ok((format!("file({path})"), from_hvc_str(&text)?))
        }
        InstanceSpec::Pad { base, epsilon } => {
            let (base_label, base_h) = build_instance(base)?;
            let eps = parse_eps(epsilon)?;
            Ok((
                format!("pad({base_label},eps={epsilon})"),
                pad_to_dense(&base_h, &eps)?,
            ))
        }
    }
}

fn parse_eps(text: &str) -> anyhow::Result<Rational> {
    parse_rational(text).ok_or_else(|| anyhow::anyhow!("cannot parse rational `{text}`"))
}

/// Runs the whole suite. Per-record budget overruns are recorded and the
/// run continues.
pub fn run_suite(config: &SuiteConfig, timing: bool) -> anyhow::Result<Vec<BenchRecord>> {
    if config.version != SUITE_SCHEMA_VERSION {
        anyhow::bail!(
            "unsupported suite version {} (supported: {SUITE_SCHEMA_VERSION})",
            config.version
        );
    }
    let exact_cfg = ExactConfig {
        node_budget: config.node_budget.unwrap_or_else(default_node_budget),
    };
    let mut records = Vec::new();
    for spec in &config.instances {
        let oracle_start = Instant::now();
        let (label, original) = build_instance(spec)?;
        let (h, _perm) = original.normalize();
        let sha = instance_sha256(&original);
        let eps = h.density();
        let tau = match hvc::solvers::exact_cover(&h, &exact_cfg) {
            Ok(c) => Some(c.size()),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let oracle_wall_ms = timing.then(|| oracle_start.elapsed().as_millis());
        let guarantee_value = (h.k() >= 2).then(|| guarantee(h.k(), &eps)).transpose()?;
        for m in &config.methods {
            records.push(run_record(
                &h,
                &label,
                &sha,
                &eps,
                tau,
                guarantee_value.as_ref(),
                m,
                &exact_cfg,
                timing,
                oracle_wall_ms,
            ));
        }
    }
    Ok(records)
}

pub fn default_node_budget() -> u64 {
    std::env::var("HVC_NODE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(ExactConfig::default().node_budget)
}

#[allow(clippy::too_many_arguments)]
fn run_record(
    h: &KPartiteHypergraph,
    label: &str,
    sha: &str,
    eps: &Rational,
    tau: Option<usize>,
    guarantee_value: Option<&Rational>,
    m: &MethodSpec,
    exact_cfg: &ExactConfig,
    timing: bool,
    oracle_wall_ms: Option<u128>,
) -> BenchRecord {
    let start = Instant::now();
    let outcome: Result<(usize, Option<Rational>), Error> = match m.method {
        MethodName::Exact => hvc::solvers::exact_cover(h, exact_cfg)
            .map(|c| (c.size(), c.certified_ratio().cloned())),
        MethodName::LpThreshold => baseline_cover(h, BaselineStrategy::LpThreshold, exact_cfg)
            .map(|c| (c.size(), c.certified_ratio().cloned())),
        MethodName::TrivialPart => baseline_cover(h, BaselineStrategy::TrivialPart, exact_cfg)
            .map(|c| (c.size(), c.certified_ratio().cloned())),
        MethodName::ApproxDense => {
            let strategy = m
                .baseline
                .unwrap_or(BaselineName::Exact)
                .strategy();
            approx_dense(h, strategy, exact_cfg)
                .map(|r| (r.chosen.size(), r.chosen.certified_ratio().cloned()))
        }
    };
    let wall_ms = timing.then(|| start.elapsed().as_millis());
    let (cover_size, certified, status) = match outcome {
        Ok((size, certified)) => (Some(size), certified, "ok".to_string()),
        Err(Error::BudgetExceeded { .. }) => (None, None, "budget-exceeded".to_string()),
        Err(e) => (None, None, format!("error: {e}")),
    };
    let ratio = match (tau, cover_size) {
        (Some(0), Some(0)) => Some(int_u(1)),
        (Some(t), Some(s)) if t > 0 => Some(int_u(s as u128) / int_u(t as u128)),
        _ => None,
    };
    let within_certified = match (&ratio, &certified) {
        (Some(r), Some(c)) => Some(r <= c),
        _ => None,
    };
    BenchRecord {
        instance: label.to_string(),
        sha256: sha.to_string(),
        k: h.k(),
        n: h.n(),
        m: h.m(),
        eps: eps.into(),
        method: m.method.label().to_string(),
        baseline: match m.method {
            MethodName::ApproxDense => Some(
                m.baseline
                    .unwrap_or(BaselineName::Exact)
                    .label()
                    .to_string(),
            ),
            _ => None,
        },
        tau,
        cover_size,
        ratio: ratio.as_ref().map(Into::into),
        guarantee: guarantee_value.map(Into::into),
        certified_ratio: certified.as_ref().map(Into::into),
        within_certified,
        status,
        oracle_wall_ms,
        wall_ms,
    }
}

/// CSV emission with a fixed column set.
pub fn records_to_csv(records: &[BenchRecord]) -> Result<String, csv::Error> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record([
        "instance",
        "sha256",
        "k",
        "n",
        "m",
        "eps_num",
        "eps_den",
        "method",
        "baseline",
        "tau",
        "cover_size",
        "ratio_num",
        "ratio_den",
        "ratio",
        "guarantee_num",
        "guarantee_den",
        "certified_num",
        "certified_den",
        "within_certified",
        "status",
        "oracle_wall_ms",
        "wall_ms",
    ])?;
    for r in records {
        wtr.write_record([
            r.instance.clone(),
            r.sha256.clone(),
            r.k.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.eps.num.clone(),
            r.eps.den.clone(),
            r.method.clone(),
            r.baseline.clone().unwrap_or_default(),
            r.tau.map(|t| t.to_string()).unwrap_or_default(),
            r.cover_size.map(|s| s.to_string()).unwrap_or_default(),
            r.ratio.as_ref().map(|x| x.num.clone()).unwrap_or_default(),
            r.ratio.as_ref().map(|x| x.den.clone()).unwrap_or_default(),
            r.ratio
                .as_ref()
                .map(|x| x.decimal.to_string())
                .unwrap_or_default(),
            r.guarantee
                .as_ref()
                .map(|x| x.num.clone())
                .unwrap_or_default(),
            r.guarantee
                .as_ref()
                .map(|x| x.den.clone())
                .unwrap_or_default(),
            r.certified_ratio
                .as_ref()
                .map(|x| x.num.clone())
                .unwrap_or_default(),
            r.certified_ratio
                .as_ref()
                .map(|x| x.den.clone())
                .unwrap_or_default(),
            r.within_certified
                .map(|b| b.to_string())
                .unwrap_or_default(),
            r.status.clone(),
            r.oracle_wall_ms.map(|w| w.to_string()).unwrap_or_default(),
            r.wall_ms.map(|w| w.to_string()).unwrap_or_default(),
        ])?;
    }
    let bytes = wtr.into_inner().expect("csv buffer");
    Ok(String::from_utf8(bytes).expect("csv is utf8"))
}

pub fn records_to_json(records: &[BenchRecord]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        schema: &'static str,
        version: u32,
        records: &'a [BenchRecord],
    }
    serde_json::to_string_pretty(&Doc {
        schema: "hvc-bench",
        version: SUITE_SCHEMA_VERSION,
        records,
    })
    .expect("records serialize")
}
