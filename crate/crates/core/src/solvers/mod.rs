//! Cover subroutines: the exact branch-and-bound oracle, the natural LP
//! relaxation in exact rationals, and the rounding / trivial strategies the
//! approximation algorithm can use on residual instances.

mod branch_bound;
mod simplex;

pub use branch_bound::{exact_cover, ExactConfig};
pub use simplex::{lp_relax, FractionalCover};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::{KPartiteHypergraph, VertexRef};
use crate::rational::{int_u, ratio_u, Rational};

/// How a cover was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    Exact,
    LpThreshold,
    ApproxDense,
    TrivialPart,
}

/// A vertex cover with its certificate metadata. Construction checks the
/// cover against the instance it was produced from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    vertices: Vec<VertexRef>,
    method: CoverMethod,
    certified_ratio: Option<Rational>,
}

impl Cover {
    /// Builds a cover, asserting validity for `h`. Vertices are stored
    /// sorted.
    pub fn checked(
        h: &KPartiteHypergraph,
        mut vertices: Vec<VertexRef>,
        method: CoverMethod,
        certified_ratio: Option<Rational>,
    ) -> Self {
        vertices.sort();
        vertices.dedup();
        assert!(
            h.is_vertex_cover(&vertices),
            "constructed vertex set does not cover the instance"
        );
        Cover {
            vertices,
            method,
            certified_ratio,
        }
    }

    pub fn vertices(&self) -> &[VertexRef] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn method(&self) -> CoverMethod {
        self.method
    }

    pub fn certified_ratio(&self) -> Option<&Rational> {
        self.certified_ratio.as_ref()
    }
}

/// Baseline strategies for the residual step of the approximation
/// algorithm. `Exact` certifies ratio 1, `LpThreshold` certifies k, and
/// `TrivialPart` (the smallest part, always a cover) certifies nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineStrategy {
    Exact,
    LpThreshold,
    TrivialPart,
}

impl BaselineStrategy {
    /// The certified approximation factor of this strategy on an instance
    /// of arity `k`, when one exists.
    pub fn certified_factor(&self, k: usize) -> Option<Rational> {
        match self {
            BaselineStrategy::Exact => Some(int_u(1)),
            BaselineStrategy::LpThreshold => Some(int_u(k as u128)),
            BaselineStrategy::TrivialPart => None,
        }
    }
}

/// Runs one baseline strategy. Only `Exact` can fail (node budget).
pub fn baseline_cover(
    h: &KPartiteHypergraph,
    strategy: BaselineStrategy,
    config: &ExactConfig,
) -> Result<Cover> {
    match strategy {
        BaselineStrategy::Exact => exact_cover(h, config),
        BaselineStrategy::LpThreshold => Ok(round_threshold(h, &lp_relax(h))),
        BaselineStrategy::TrivialPart => Ok(trivial_part_cover(h)),
    }
}

/// Thresholds a feasible fractional solution at `1/k`: every edge has some
/// coordinate at least `1/k` by averaging, so the result is a cover of size
/// at most `k` times the fractional objective.
pub fn round_threshold(h: &KPartiteHypergraph, x: &FractionalCover) -> Cover {
    let threshold = ratio_u(1, h.k() as u128);
    let vertices: Vec<VertexRef> = h
        .vertices()
        .filter(|&v| x.value(v) >= &threshold)
        .collect();
    Cover::checked(
        h,
        vertices,
        CoverMethod::LpThreshold,
        Some(int_u(h.k() as u128)),
    )
}

/// The smallest part, which covers every edge (each edge meets each part).
pub fn trivial_part_cover(h: &KPartiteHypergraph) -> Cover {
    let part = h.smallest_part();
    Cover::checked(
        h,
        h.part_vertices(part).collect(),
        CoverMethod::TrivialPart,
        None,
    )
}
