//! Report schemas. Exact rationals are carried as numerator/denominator
//! string pairs plus a convenience decimal that is never used in
//! comparisons.

use serde::Serialize;

use hvc::approx::ApproxReport;
use hvc::bounds::BoundPoint;
use hvc::extract::CandidateCollection;
use hvc::hypergraph::{KPartiteHypergraph, VertexRef};
use hvc::rational::{int_u, to_f64, Rational};
use hvc::solvers::{Cover, FractionalCover};

#[derive(Debug, Clone, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub decimal: f64,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: to_f64(r),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceSummary {
    pub k: usize,
    pub part_sizes: Vec<usize>,
    pub n: usize,
    pub m: usize,
    pub density: RationalJson,
    pub sha256: String,
}

impl InstanceSummary {
    pub fn of(h: &KPartiteHypergraph) -> Self {
        InstanceSummary {
            k: h.k(),
            part_sizes: h.part_sizes().to_vec(),
            n: h.n(),
            m: h.m(),
            density: (&h.density()).into(),
            sha256: hvc::format::instance_sha256(h),
        }
    }
}

/// Output of `hvc solve`, for every method.
#[derive(Debug, Serialize)]
pub struct SolutionReport {
    pub schema: &'static str,
    pub version: u32,
    pub instance: InstanceSummary,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<String>,
    pub cover: Vec<VertexRef>,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_ratio: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_objective: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_factor: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_count: Option<usize>,
    /// Per candidate: its size and the residual baseline cover size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_candidate: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    /// True when the input was reordered to non-increasing part sizes
    /// before solving; the reported cover is already mapped back.
    pub normalized_input: bool,
}

impl SolutionReport {
    pub fn for_cover(
        h: &KPartiteHypergraph,
        cover: &Cover,
        method: &str,
        cover_in_original: Vec<VertexRef>,
        normalized_input: bool,
    ) -> Self {
        SolutionReport {
            schema: "hvc-solution",
            version: 1,
            instance: InstanceSummary::of(h),
            method: method.to_string(),
            baseline: None,
            size: cover_in_original.len(),
            cover: cover_in_original,
            certified_ratio: cover.certified_ratio().map(Into::into),
            lp_objective: None,
            guarantee: None,
            baseline_factor: None,
            candidate_count: None,
            per_candidate: None,
            warning: None,
            normalized_input,
        }
    }

    pub fn with_lp(mut self, x: &FractionalCover) -> Self {
        self.lp_objective = Some(x.objective().into());
        self
    }

    pub fn with_approx(mut self, report: &ApproxReport, baseline: &str) -> Self {
        self.baseline = Some(baseline.to_string());
        self.guarantee = Some((&report.guarantee).into());
        self.baseline_factor = report.baseline_factor.as_ref().map(Into::into);
        self.candidate_count = Some(report.candidate_count);
        self.per_candidate = Some(report.per_candidate.clone());
        self.warning = report.warning.clone();
        self
    }
}

/// Output of `hvc extract`.
#[derive(Debug, Serialize)]
pub struct ExtractReport {
    pub schema: &'static str,
    pub version: u32,
    pub instance: InstanceSummary,
    /// `density * |V_k|`: the size every useful candidate must reach.
    pub threshold: RationalJson,
    pub candidate_count: usize,
    pub candidates: Vec<CandidateJson>,
    pub normalized_input: bool,
}

#[derive(Debug, Serialize)]
pub struct CandidateJson {
    pub vertices: Vec<VertexRef>,
    pub size: usize,
    /// Exact comparison `size >= density * |V_k|`.
    pub meets_threshold: bool,
    pub trace: Vec<usize>,
}

pub fn extract_report(
    original: &KPartiteHypergraph,
    normalized: &KPartiteHypergraph,
    perm: &[usize],
    collection: &CandidateCollection,
    normalized_input: bool,
) -> ExtractReport {
    let eps = normalized.density();
    let vk = int_u(*normalized.part_sizes().last().unwrap() as u128);
    let threshold = eps * vk;
    let candidates = collection
        .iter()
        .map(|c| {
            let mut vertices: Vec<VertexRef> = c
                .vertices
                .iter()
                .map(|&v| KPartiteHypergraph::from_normalized(perm, v))
                .collect();
            vertices.sort();
            CandidateJson {
                size: vertices.len(),
                meets_threshold: int_u(c.size() as u128) >= threshold,
                vertices,
                trace: c.trace.clone(),
            }
        })
        .collect();
    ExtractReport {
        schema: "hvc-extract",
        version: 1,
        instance: InstanceSummary::of(original),
        threshold: (&threshold).into(),
        candidate_count: collection.len(),
        candidates,
        normalized_input,
    }
}

/// Output of `hvc verify`.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub version: u32,
    pub instance: InstanceSummary,
    pub normalized: bool,
    pub balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lwise: Option<LwiseJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<hvc::generators::InstanceProvenance>,
}

#[derive(Debug, Serialize)]
pub struct LwiseJson {
    pub subset_size: usize,
    pub index_set: Vec<usize>,
    pub density: RationalJson,
}

/// JSON row set for `hvc bounds`.
#[derive(Debug, Serialize)]
pub struct BoundsReport {
    pub schema: &'static str,
    pub version: u32,
    pub rows: Vec<BoundRowJson>,
}

#[derive(Debug, Serialize)]
pub struct BoundRowJson {
    pub k: usize,
    pub eps: RationalJson,
    pub ugc: RationalJson,
    pub conjecture: RationalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub np: Option<RationalJson>,
    pub guarantee: RationalJson,
    pub cksv: Vec<CksvJson>,
    pub dominance_ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CksvJson {
    pub ell: usize,
    pub lo: RationalJson,
    pub hi: RationalJson,
    pub exact: bool,
}

pub fn bounds_report(rows: &[BoundPoint]) -> BoundsReport {
    BoundsReport {
        schema: "hvc-bounds",
        version: 1,
        rows: rows
            .iter()
            .map(|r| BoundRowJson {
                k: r.k,
                eps: (&r.eps).into(),
                ugc: (&r.ugc_factor).into(),
                conjecture: (&r.conjecture_factor).into(),
                np: r.np_factor.as_ref().map(Into::into),
                guarantee: (&r.alg_guarantee).into(),
                cksv: r
                    .cksv
                    .iter()
                    .map(|(ell, b)| CksvJson {
                        ell: *ell,
                        lo: (&b.lo).into(),
                        hi: (&b.hi).into(),
                        exact: b.is_exact(),
                    })
                    .collect(),
                dominance_ok: r.dominance_ok,
                violations: r.violations.clone(),
            })
            .collect(),
    }
}

/// CSV rows for `hvc bounds`: one column per requested ell, blank outside
/// that row's valid range.
pub fn bounds_csv(rows: &[BoundPoint], ell_grid: &[usize]) -> Result<String, csv::Error> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "k".to_string(),
        "eps_num".to_string(),
        "eps_den".to_string(),
        "ugc".to_string(),
        "conjecture".to_string(),
        "np".to_string(),
        "guarantee".to_string(),
    ];
    for ell in ell_grid {
        header.push(format!("cksv_ell_{ell}"));
    }
    header.push("dominance_ok".to_string());
    wtr.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.k.to_string(),
            r.eps.numer().to_string(),
            r.eps.denom().to_string(),
            format!("{}", to_f64(&r.ugc_factor)),
            format!("{}", to_f64(&r.conjecture_factor)),
            r.np_factor
                .as_ref()
                .map(|v| format!("{}", to_f64(v)))
                .unwrap_or_default(),
            format!("{}", to_f64(&r.alg_guarantee)),
        ];
        for ell in ell_grid {
            let cell = r
                .cksv
                .iter()
                .find(|(l, _)| l == ell)
                .map(|(_, b)| format!("{}", to_f64(&b.midpoint())))
                .unwrap_or_default();
            rec.push(cell);
        }
        rec.push(r.dominance_ok.to_string());
        wtr.write_record(&rec)?;
    }
    let bytes = wtr.into_inner().expect("csv buffer");
    Ok(String::from_utf8(bytes).expect("csv is utf8"))
}
