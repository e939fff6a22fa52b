//! The natural LP relaxation, solved exactly.
//!
//! The covering LP `min sum x_v s.t. sum_{v in e} x_v >= 1, x >= 0` is
//! solved through its packing dual `max sum y_e s.t. sum_{e : v in e} y_e
//! <= 1, y >= 0`, which starts feasible at the all-slack basis and has only
//! n rows (n is tiny here while m can be close to the full transversal
//! count). Edge columns are brought in by exact column generation: a
//! restricted dense rational tableau (Bland's rule, so no cycling and no
//! tolerances) is solved over a working set seeded with a greedy matching,
//! then every edge is priced against the covering values read off the
//! slack reduced costs; violated edges join the working set and the loop
//! repeats. When no edge prices out, those values cover every edge exactly
//! and match the packing objective, certifying optimality on both sides by
//! weak duality.

use num::Zero;

use crate::hypergraph::{KPartiteHypergraph, VertexRef};
use crate::rational::{int_u, Rational};

/// An exact fractional cover: one value per vertex, flattened part-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCover {
    part_offsets: Vec<usize>,
    values: Vec<Rational>,
    objective: Rational,
}

impl FractionalCover {
    pub(crate) fn from_values(h: &KPartiteHypergraph, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), h.n());
        let objective = values.iter().fold(Rational::zero(), |a, v| a + v);
        FractionalCover {
            part_offsets: part_offsets(h),
            values,
            objective,
        }
    }

    pub fn value(&self, v: VertexRef) -> &Rational {
        &self.values[self.part_offsets[v.part] + v.offset]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The LP objective, equal to the sum of the values.
    pub fn objective(&self) -> &Rational {
        &self.objective
    }

    /// Exact feasibility: every edge carries total weight at least one.
    pub fn is_feasible(&self, h: &KPartiteHypergraph) -> bool {
        h.edges().iter().all(|e| {
            let total = KPartiteHypergraph::edge_vertices(e)
                .fold(Rational::zero(), |a, v| a + self.value(v));
            total >= int_u(1)
        })
    }
}

fn part_offsets(h: &KPartiteHypergraph) -> Vec<usize> {
    let mut offs = Vec::with_capacity(h.k());
    let mut acc = 0;
    for &s in h.part_sizes() {
        offs.push(acc);
        acc += s;
    }
    offs
}

/// Solves the LP relaxation exactly. Always feasible; the objective never
/// exceeds the minimum cover size.
pub fn lp_relax(h: &KPartiteHypergraph) -> FractionalCover {
    let n = h.n();
    let m = h.m();
    if m == 0 {
        return FractionalCover::from_values(h, vec![Rational::zero(); n]);
    }
    let offsets = part_offsets(h);

    // Seed the working set with a greedy matching in canonical edge order:
    // disjoint columns make a strong starting pool.
    let mut in_working = vec![false; m];
    let mut working: Vec<usize> = Vec::new();
    {
        let mut used = vec![false; n];
        for (j, e) in h.edges().iter().enumerate() {
            let verts: Vec<usize> = KPartiteHypergraph::edge_vertices(e)
                .map(|v| offsets[v.part] + v.offset)
                .collect();
            if verts.iter().all(|&i| !used[i]) {
                for &i in &verts {
                    used[i] = true;
                }
                in_working[j] = true;
                working.push(j);
            }
        }
    }

    loop {
        let values = solve_restricted(h, &offsets, &working);
        // Exact pricing: an edge with total covering weight below one has
        // positive reduced cost in the full packing LP.
        let mut violated: Vec<(Rational, usize)> = Vec::new();
        for (j, e) in h.edges().iter().enumerate() {
            if in_working[j] {
                continue;
            }
            let total = KPartiteHypergraph::edge_vertices(e)
                .fold(Rational::zero(), |a, v| a + &values[offsets[v.part] + v.offset]);
            if total < int_u(1) {
                violated.push((total, j));
            }
        }
        if violated.is_empty() {
            let x = FractionalCover::from_values(h, values);
            debug_assert!(x.is_feasible(h));
            return x;
        }
        // Most violated first, index as the deterministic tie-break; cap
        // the batch so the restricted tableau stays small.
        violated.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, j) in violated.into_iter().take(2 * n) {
            in_working[j] = true;
            working.push(j);
        }
        working.sort_unstable();
    }
}

/// Primal simplex with Bland's rule on the packing dual restricted to
/// `working` edge columns. Returns the covering values read off the slack
/// reduced costs at the optimum.
fn solve_restricted(
    h: &KPartiteHypergraph,
    offsets: &[usize],
    working: &[usize],
) -> Vec<Rational> {
    let n = h.n();
    let w = working.len();
    let cols = w + n;
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols + 1]; n];
    for (col, &j) in working.iter().enumerate() {
        for v in KPartiteHypergraph::edge_vertices(&h.edges()[j]) {
            rows[offsets[v.part] + v.offset][col] = int_u(1);
        }
    }
    for i in 0..n {
        rows[i][w + i] = int_u(1);
        rows[i][cols] = int_u(1);
    }
    let mut reduced: Vec<Rational> = (0..cols)
        .map(|j| if j < w { int_u(1) } else { Rational::zero() })
        .collect();
    let mut basis: Vec<usize> = (w..w + n).collect();

    // Bland: the entering column is the lowest index with positive reduced
    // cost (maximization).
    while let Some(entering) = (0..cols).find(|&j| reduced[j] > Rational::zero()) {
        // Ratio test; ties resolved towards the smallest basis variable.
        let mut leaving: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[entering] > Rational::zero() {
                let ratio = &row[cols] / &row[entering];
                match &leaving {
                    Some((best, r))
                        if *r < ratio || (*r == ratio && basis[*best] < basis[i]) => {}
                    _ => leaving = Some((i, ratio)),
                }
            }
        }
        let (pivot_row, _) = leaving.expect("packing LP is bounded");
        let pivot = rows[pivot_row][entering].clone();
        for x in rows[pivot_row].iter_mut() {
            *x /= &pivot;
        }
        let pivot_line = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pivot_row && !row[entering].is_zero() {
                let factor = row[entering].clone();
                for (x, p) in row.iter_mut().zip(&pivot_line) {
                    *x -= &factor * p;
                }
            }
        }
        let factor = reduced[entering].clone();
        for (r, p) in reduced.iter_mut().zip(&pivot_line) {
            *r -= &factor * p;
        }
        basis[pivot_row] = entering;
    }

    // Covering values: the negated reduced costs of the slack columns.
    (0..n).map(|i| -reduced[w + i].clone()).collect()
}
