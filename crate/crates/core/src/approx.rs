//! The composed approximation algorithm and its guarantee formulas.
//!
//! Seed the candidate pool with the whole last part, then for every
//! extracted candidate solve the residual instance with a baseline strategy
//! and keep the union; the smallest pool member wins. With a baseline of
//! certified factor rho, the output is within `rho / (1 + (rho - 1) * eps)`
//! of the optimum on an instance of density eps, i.e. `k / (2 + (k-2) eps)`
//! for the classical `rho = k/2` baseline.

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::extract::extract;
use crate::hypergraph::{Edge, KPartiteHypergraph, VertexRef};
use crate::rational::{int_u, Rational};
use crate::solvers::{baseline_cover, BaselineStrategy, Cover, CoverMethod, ExactConfig};

/// What the algorithm did on one instance.
#[derive(Debug, Clone)]
pub struct ApproxReport {
    /// The winning cover.
    pub chosen: Cover,
    /// Number of extracted candidates (the seed is not counted).
    pub candidate_count: usize,
    /// Per candidate, in canonical candidate order: its size and the size
    /// of the baseline cover of its residual.
    pub per_candidate: Vec<(usize, usize)>,
    /// The guarantee at this instance's exact density for the classical
    /// half-k baseline.
    pub guarantee: Rational,
    /// Certified factor of the baseline actually used, when it has one.
    pub baseline_factor: Option<Rational>,
    /// Set when the arity is below the algorithm's stated regime (k >= 3);
    /// the composition still runs and its analysis degenerates gracefully.
    pub warning: Option<String>,
}

/// The guarantee for the classical half-k baseline: `k / (2 + (k-2) eps)`.
pub fn guarantee(k: usize, eps: &Rational) -> Result<Rational> {
    if k < 2 {
        return Err(Error::Domain(format!("guarantee requires k >= 2, got {k}")));
    }
    if eps < &Rational::zero() || eps > &Rational::one() {
        return Err(Error::Domain(
            "guarantee requires eps in [0, 1]".to_string(),
        ));
    }
    let k_r = int_u(k as u128);
    Ok(&k_r / (int_u(2) + (k_r.clone() - int_u(2)) * eps))
}

/// Guarantee with the baseline factor made explicit:
/// `rho / (1 + (rho - 1) eps)`. Coincides with [`guarantee`] at `rho = k/2`.
pub fn guarantee_general(k: usize, eps: &Rational, rho: &Rational) -> Result<Rational> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "guarantee_general requires k >= 2, got {k}"
        )));
    }
    if eps < &Rational::zero() || eps > &Rational::one() {
        return Err(Error::Domain(
            "guarantee_general requires eps in [0, 1]".to_string(),
        ));
    }
    if rho < &Rational::one() {
        return Err(Error::Domain(
            "guarantee_general requires rho >= 1".to_string(),
        ));
    }
    Ok(rho / (Rational::one() + (rho - Rational::one()) * eps))
}

/// Runs the full composition on a normalized instance.
///
/// Residual solves are memoized by residual edge set: on dense instances
/// many candidates hit the same surviving edges, and the minimum cover of a
/// residual depends only on those.
pub fn approx_dense(
    h: &KPartiteHypergraph,
    baseline: BaselineStrategy,
    config: &ExactConfig,
) -> Result<ApproxReport> {
    if !h.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let k = h.k();
    let warning = (k < 3).then(|| {
        format!("arity k = {k} is below the stated k >= 3 regime; proceeding anyway")
    });
    let eps = h.density();
    let guarantee_value = if k >= 2 {
        guarantee(k, &eps)?
    } else {
        Rational::one()
    };
    let baseline_factor = baseline.certified_factor(k);
    let certified = match &baseline_factor {
        Some(rho) if k >= 2 => Some(guarantee_general(k, &eps, rho)?),
        Some(_) => Some(Rational::one()),
        None => None,
    };

    let collection = extract(h)?;
    let mut memo: HashMap<Vec<Edge>, Vec<VertexRef>> = HashMap::new();
    let mut pool: Vec<Vec<VertexRef>> = Vec::with_capacity(collection.len() + 1);
    let mut per_candidate = Vec::with_capacity(collection.len());

    // Seed: the last part is a cover of everything.
    let seed: Vec<VertexRef> = h.part_vertices(k - 1).collect();
    pool.push(seed);

    for c in collection.iter() {
        let residual_cover: Vec<VertexRef> = match baseline {
            // Keyed by surviving edge set; the memoized cover only uses
            // vertices of those edges, so it is valid for any candidate
            // with the same residual.
            BaselineStrategy::Exact | BaselineStrategy::LpThreshold => {
                let key = h.surviving_edges(&c.vertices);
                match memo.get(&key) {
                    Some(cover) => cover.clone(),
                    None => {
                        let sub = h.remove_hit_edges(&c.vertices)?;
                        let cover = baseline_cover(&sub.instance, baseline, config)?;
                        let parent = sub.set_to_parent(cover.vertices());
                        memo.insert(key, parent.clone());
                        parent
                    }
                }
            }
            BaselineStrategy::TrivialPart => {
                let sub = h.remove_hit_edges(&c.vertices)?;
                let cover = baseline_cover(&sub.instance, baseline, config)?;
                sub.set_to_parent(cover.vertices())
            }
        };
        per_candidate.push((c.size(), residual_cover.len()));
        let mut union = c.vertices.clone();
        union.extend(residual_cover);
        union.sort();
        union.dedup();
        pool.push(union);
    }

    let chosen_vertices = pool
        .into_iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("pool is never empty");
    let chosen = Cover::checked(h, chosen_vertices, CoverMethod::ApproxDense, certified);
    Ok(ApproxReport {
        chosen,
        candidate_count: collection.len(),
        per_candidate,
        guarantee: guarantee_value,
        baseline_factor,
        warning,
    })
}
