//! Exact minimum vertex cover by branch and bound.
//!
//! Branching picks the lexicographically first uncovered edge and tries its
//! k vertices in part order; the i-th child includes vertex i and excludes
//! vertices 0..i, so the children partition the search space. Exclusions
//! feed a unit-propagation step (an edge whose other vertices are all
//! excluded forces its last vertex in), and nodes are pruned against the
//! incumbent with the density lower bound `ceil(m / prod of remaining part
//! sizes except the smallest)` on the residual instance.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::{KPartiteHypergraph, VertexRef};
use crate::rational::int_u;
use crate::solvers::{trivial_part_cover, Cover, CoverMethod};

/// Search limits for the exact solver. Exceeding the budget is an error,
/// never a silent approximation.
#[derive(Debug, Clone, Copy)]
pub struct ExactConfig {
    pub node_budget: u64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            node_budget: 10_000_000,
        }
    }
}

/// A minimum-cardinality vertex cover. Deterministic: the fixed branching
/// rule plus strict-improvement incumbent updates yield the same cover for
/// the same input bytes.
pub fn exact_cover(h: &KPartiteHypergraph, config: &ExactConfig) -> Result<Cover> {
    if h.m() == 0 {
        return Ok(Cover::checked(h, vec![], CoverMethod::Exact, Some(int_u(1))));
    }
    let mut search = Search {
        h,
        budget: config.node_budget,
        nodes: 0,
        // Seed: the smallest part is always a cover.
        best: trivial_part_cover(h).vertices().to_vec(),
    };
    let state = State {
        included: Vec::new(),
        excluded: BTreeSet::new(),
        included_per_part: vec![0; h.k()],
    };
    search.visit(state)?;
    Ok(Cover::checked(
        h,
        search.best,
        CoverMethod::Exact,
        Some(int_u(1)),
    ))
}

struct Search<'a> {
    h: &'a KPartiteHypergraph,
    budget: u64,
    nodes: u64,
    best: Vec<VertexRef>,
}

#[derive(Clone)]
struct State {
    included: Vec<VertexRef>,
    excluded: BTreeSet<VertexRef>,
    included_per_part: Vec<usize>,
}

impl State {
    fn include(&mut self, v: VertexRef) {
        self.included.push(v);
        self.included_per_part[v.part] += 1;
    }
}

impl Search<'_> {
    fn visit(&mut self, mut state: State) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }

        // Unit propagation: an uncovered edge with a single non-excluded
        // vertex forces that vertex; one with none is infeasible here.
        let residual = loop {
            let residual = self.residual_edges(&state);
            let mut forced: Option<VertexRef> = None;
            for &e in &residual {
                let free: Vec<VertexRef> = KPartiteHypergraph::edge_vertices(e)
                    .filter(|v| !state.excluded.contains(v))
                    .collect();
                match free.len() {
                    0 => return Ok(()), // every vertex of e is excluded
                    1 => {
                        forced = Some(free[0]);
                        break;
                    }
                    _ => {}
                }
            }
            match forced {
                Some(v) => {
                    state.include(v);
                    if state.included.len() >= self.best.len() {
                        return Ok(());
                    }
                }
                None => break residual,
            }
        };

        if residual.is_empty() {
            if state.included.len() < self.best.len() {
                self.best = state.included.clone();
            }
            return Ok(());
        }
        if state.included.len() + self.lower_bound(&state, residual.len()) >= self.best.len() {
            return Ok(());
        }

        let edge = residual[0].clone();
        for part in 0..self.h.k() {
            let v = VertexRef::new(part, edge[part]);
            if state.excluded.contains(&v) {
                continue;
            }
            let mut child = state.clone();
            child.include(v);
            for (before, &offset) in edge.iter().enumerate().take(part) {
                child.excluded.insert(VertexRef::new(before, offset));
            }
            self.visit(child)?;
        }
        Ok(())
    }

    fn residual_edges(&self, state: &State) -> Vec<&crate::hypergraph::Edge> {
        let included: BTreeSet<VertexRef> = state.included.iter().copied().collect();
        self.h
            .edges()
            .iter()
            .filter(|e| !KPartiteHypergraph::edge_vertices(e).any(|v| included.contains(&v)))
            .collect()
    }

    /// Cover-size lower bound on the residual: density of the instance on
    /// the not-yet-included vertices times its smallest part, rounded up.
    fn lower_bound(&self, state: &State, residual_edges: usize) -> usize {
        let remaining: Vec<u128> = self
            .h
            .part_sizes()
            .iter()
            .zip(&state.included_per_part)
            .map(|(&s, &inc)| (s - inc) as u128)
            .collect();
        let min_index = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(i, &r)| (r, i))
            .expect("k >= 1")
            .0;
        debug_assert!(
            remaining[min_index] >= 1,
            "residual edges need a vertex in every part"
        );
        let others: u128 = remaining
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != min_index)
            .fold(1u128, |acc, (_, &r)| acc.saturating_mul(r.max(1)));
        let m = residual_edges as u128;
        (m.div_ceil(others)) as usize
    }
}
