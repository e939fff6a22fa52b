//! k-partite k-uniform hypergraphs with exact density computations.
//!
//! The vertex set is a disjoint union of `k` parts and every edge contains
//! exactly one vertex of each part. Edges are stored as offset vectors in
//! part order, deduplicated and sorted at construction, so two instances
//! with the same edge set compare equal and serialize identically.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::InstanceProvenance;
use crate::rational::{ratio_u, Rational};

/// A vertex, addressed as (part, offset within part).
///
/// Keeping the part explicit makes the one-vertex-per-part edge invariant
/// structurally checkable; flat ids appear only in the file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRef {
    pub part: usize,
    pub offset: usize,
}

impl VertexRef {
    pub fn new(part: usize, offset: usize) -> Self {
        VertexRef { part, offset }
    }
}

/// An edge as one offset per part, position `i` indexing into part `i`.
pub type Edge = Vec<usize>;

/// A k-partite k-uniform hypergraph.
///
/// Top-level instances (parsed or generated) always have `k >= 1` and every
/// part non-empty; instances derived by [`induced`](KPartiteHypergraph::induced)
/// or [`remove_hit_edges`](KPartiteHypergraph::remove_hit_edges) may carry
/// empty parts. Instances are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: Vec<Edge>,
    provenance: Option<InstanceProvenance>,
}

impl KPartiteHypergraph {
    /// Builds an instance, validating arity and offsets. Duplicate edges are
    /// collapsed; the edge list is kept in lexicographic order.
    pub fn new(part_sizes: Vec<usize>, edges: Vec<Edge>) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::ArityOutOfRange {
                what: "k",
                got: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        let k = part_sizes.len();
        let mut set = BTreeSet::new();
        for (edge_index, e) in edges.into_iter().enumerate() {
            if e.len() != k {
                return Err(Error::EdgeArityMismatch {
                    edge_index,
                    expected: k,
                    got: e.len(),
                });
            }
            for (part, &offset) in e.iter().enumerate() {
                if offset >= part_sizes[part] {
                    return Err(Error::OffsetOutOfRange {
                        part,
                        offset,
                        size: part_sizes[part],
                    });
                }
            }
            set.insert(e);
        }
        Ok(KPartiteHypergraph {
            part_sizes,
            edges: set.into_iter().collect(),
            provenance: None,
        })
    }

    /// Attaches generator provenance.
    pub fn with_provenance(mut self, provenance: InstanceProvenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<&InstanceProvenance> {
        self.provenance.as_ref()
    }

    /// Number of parts (the arity k).
    pub fn k(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    /// Total vertex count n.
    pub fn n(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    /// Edge count m.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The vertices of `edge` as refs, one per part.
    pub fn edge_vertices(edge: &Edge) -> impl Iterator<Item = VertexRef> + '_ {
        edge.iter()
            .enumerate()
            .map(|(part, &offset)| VertexRef::new(part, offset))
    }

    /// All vertices of one part.
    pub fn part_vertices(&self, part: usize) -> impl Iterator<Item = VertexRef> {
        (0..self.part_sizes[part]).map(move |offset| VertexRef::new(part, offset))
    }

    /// All vertices in (part, offset) order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.k()).flat_map(|part| self.part_vertices(part))
    }

    pub fn contains_vertex(&self, v: VertexRef) -> bool {
        v.part < self.k() && v.offset < self.part_sizes[v.part]
    }

    /// True when part sizes are non-increasing, the standing assumption of
    /// the extraction and approximation procedures.
    pub fn is_normalized(&self) -> bool {
        self.part_sizes.windows(2).all(|w| w[0] >= w[1])
    }

    /// True when every part has the same size.
    pub fn is_balanced(&self) -> bool {
        self.part_sizes.iter().all(|&s| s == self.part_sizes[0])
    }

    /// Index of a smallest part (lowest index on ties).
    pub fn smallest_part(&self) -> usize {
        let mut best = 0;
        for (i, &s) in self.part_sizes.iter().enumerate() {
            if s < self.part_sizes[best] {
                best = i;
            }
        }
        best
    }

    /// Product of all part sizes: the number of possible transversal edges.
    pub fn transversal_count(&self) -> BigInt {
        self.part_sizes
            .iter()
            .fold(BigInt::one(), |acc, &s| acc * BigInt::from(s))
    }

    /// The edge density: the maximal eps such that `|E| >= eps * prod |V_i|`,
    /// i.e. exactly `|E| / prod |V_i|`. An instance with an empty part (only
    /// derived instances can have one) has no possible edges and density 0.
    pub fn density(&self) -> Rational {
        let total = self.transversal_count();
        if total.is_zero() {
            return Rational::zero();
        }
        Rational::new(BigInt::from(self.edges.len()), total)
    }

    /// Number of edges containing every vertex of `subset`.
    ///
    /// `subset` must be non-empty with at most one vertex per part.
    pub fn degree(&self, subset: &[VertexRef]) -> Result<usize> {
        if subset.is_empty() {
            return Err(Error::ArityOutOfRange {
                what: "subset size",
                got: 0,
                min: 1,
                max: self.k(),
            });
        }
        let mut seen = vec![false; self.k()];
        for v in subset {
            if !self.contains_vertex(*v) {
                return Err(Error::OffsetOutOfRange {
                    part: v.part,
                    offset: v.offset,
                    size: self.part_sizes.get(v.part).copied().unwrap_or(0),
                });
            }
            if seen[v.part] {
                return Err(Error::MalformedSubset { part: v.part });
            }
            seen[v.part] = true;
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| subset.iter().all(|v| e[v.part] == v.offset))
            .count())
    }

    /// Degree of a single vertex.
    pub fn vertex_degree(&self, v: VertexRef) -> usize {
        self.edges.iter().filter(|e| e[v.part] == v.offset).count()
    }

    /// The neighborhood of `v`: all vertices sharing an edge with it.
    pub fn neighborhood(&self, v: VertexRef) -> Result<Vec<VertexRef>> {
        if !self.contains_vertex(v) {
            return Err(Error::OffsetOutOfRange {
                part: v.part,
                offset: v.offset,
                size: self.part_sizes.get(v.part).copied().unwrap_or(0),
            });
        }
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e[v.part] == v.offset {
                for w in Self::edge_vertices(e) {
                    if w != v {
                        out.insert(w);
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// True when every edge meets `cover`. Vertices outside the instance are
    /// ignored.
    pub fn is_vertex_cover(&self, cover: &[VertexRef]) -> bool {
        let cover: BTreeSet<VertexRef> = cover.iter().copied().collect();
        self.edges
            .iter()
            .all(|e| Self::edge_vertices(e).any(|v| cover.contains(&v)))
    }

    /// The best density over transversal tuples of some size-`ell` index set:
    /// the index set maximizing `min_S d(S) / prod_{i not in I} |V_i|`, plus
    /// that maximum. The instance is `ell`-wise eps-dense exactly for
    /// `eps <=` the returned value.
    ///
    /// Enumerates `prod_{i in I} |V_i|` tuples per candidate set, so this is
    /// for constant k only.
    pub fn lwise_density(&self, ell: usize) -> Result<(Vec<usize>, Rational)> {
        let k = self.k();
        if ell < 1 || ell >= k {
            return Err(Error::ArityOutOfRange {
                what: "ell",
                got: ell,
                min: 1,
                max: k.saturating_sub(1),
            });
        }
        let mut best: Option<(Vec<usize>, Rational)> = None;
        for index_set in (0..k).combinations(ell) {
            let eps = self.lwise_density_for(&index_set)?;
            match &best {
                Some((_, e)) if *e >= eps => {}
                _ => best = Some((index_set, eps)),
            }
        }
        Ok(best.expect("at least one index set"))
    }

    /// The maximal eps for one fixed index set `I`: the minimum over all
    /// transversal tuples `S` of `I` of `d(S) / prod_{i not in I} |V_i|`.
    pub fn lwise_density_for(&self, index_set: &[usize]) -> Result<Rational> {
        let k = self.k();
        if index_set.is_empty()
            || index_set.len() >= k
            || index_set.iter().any(|&i| i >= k)
            || index_set.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Domain(format!(
                "index set {index_set:?} is not a strictly increasing subset of 0..{k} \
                 of size in [1, {}]",
                k - 1
            )));
        }
        let rest: u128 = (0..k)
            .filter(|i| !index_set.contains(i))
            .map(|i| self.part_sizes[i] as u128)
            .product();
        if rest == 0 {
            // No completion slots to fill: the degree condition is vacuous.
            return Ok(Rational::one());
        }
        let mut min_deg: Option<usize> = None;
        let ranges: Vec<_> = index_set
            .iter()
            .map(|&i| 0..self.part_sizes[i])
            .collect();
        for combo in ranges.into_iter().multi_cartesian_product() {
            let tuple: Vec<VertexRef> = index_set
                .iter()
                .zip(combo)
                .map(|(&part, offset)| VertexRef::new(part, offset))
                .collect();
            let d = self.degree(&tuple)?;
            min_deg = Some(min_deg.map_or(d, |m| m.min(d)));
        }
        match min_deg {
            // Some part of I is empty, so the condition is again vacuous.
            None => Ok(Rational::one()),
            Some(d) => Ok(ratio_u(d as u128, rest)),
        }
    }

    /// Reorders parts so sizes are non-increasing (stable: equal sizes keep
    /// their original order). Returns the permuted instance together with
    /// `perm`, where `perm[new_part] = old_part`.
    ///
    /// Provenance survives only when the permutation is the identity, since
    /// a reordered instance no longer regenerates byte-identically.
    pub fn normalize(&self) -> (KPartiteHypergraph, Vec<usize>) {
        let k = self.k();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.sort_by_key(|&i| (std::cmp::Reverse(self.part_sizes[i]), i));
        let identity = perm.iter().enumerate().all(|(i, &p)| i == p);
        if identity {
            return (self.clone(), perm);
        }
        let part_sizes: Vec<usize> = perm.iter().map(|&old| self.part_sizes[old]).collect();
        let edges: BTreeSet<Edge> = self
            .edges
            .iter()
            .map(|e| perm.iter().map(|&old| e[old]).collect())
            .collect();
        let h = KPartiteHypergraph {
            part_sizes,
            edges: edges.into_iter().collect(),
            provenance: None,
        };
        (h, perm)
    }

    /// Maps a vertex of the normalized instance back to the original parts,
    /// given the permutation returned by [`normalize`](Self::normalize).
    pub fn from_normalized(perm: &[usize], v: VertexRef) -> VertexRef {
        VertexRef::new(perm[v.part], v.offset)
    }

    /// The `v`-induced instance: edges through `v` with `v` removed, parts
    /// restricted to the neighborhood of `v`. Requires a normalized instance
    /// with `v` in the last (smallest) part and `k >= 2`.
    ///
    /// The result has `k - 1` parts and exactly `d(v)` edges; parts can be
    /// empty when `v` is isolated.
    pub fn induced(&self, v: VertexRef) -> Result<SubInstance> {
        let k = self.k();
        if k < 2 {
            return Err(Error::ArityTooSmall);
        }
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if v.part != k - 1 || !self.contains_vertex(v) {
            return Err(Error::OffsetOutOfRange {
                part: v.part,
                offset: v.offset,
                size: self.part_sizes.get(v.part).copied().unwrap_or(0),
            });
        }
        // Per-part sorted neighborhood offsets become the new vertex ranges.
        let mut kept: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k - 1];
        for e in &self.edges {
            if e[k - 1] == v.offset {
                for part in 0..k - 1 {
                    kept[part].insert(e[part]);
                }
            }
        }
        let back: Vec<Vec<usize>> = kept.into_iter().map(|s| s.into_iter().collect()).collect();
        let index_of: Vec<std::collections::BTreeMap<usize, usize>> = back
            .iter()
            .map(|offs| offs.iter().enumerate().map(|(i, &o)| (o, i)).collect())
            .collect();
        let part_sizes: Vec<usize> = back.iter().map(|b| b.len()).collect();
        let edges: BTreeSet<Edge> = self
            .edges
            .iter()
            .filter(|e| e[k - 1] == v.offset)
            .map(|e| (0..k - 1).map(|part| index_of[part][&e[part]]).collect())
            .collect();
        let instance = KPartiteHypergraph {
            part_sizes,
            edges: edges.into_iter().collect(),
            provenance: None,
        };
        Ok(SubInstance::new(
            instance,
            back.into_iter()
                .enumerate()
                .map(|(part, offs)| {
                    offs.into_iter().map(|o| VertexRef::new(part, o)).collect()
                })
                .collect(),
        ))
    }

    /// Removes the vertices of `hitters` and every edge they touch, keeping
    /// the part structure. The retained edges are exactly those disjoint
    /// from `hitters`.
    pub fn remove_hit_edges(&self, hitters: &[VertexRef]) -> Result<SubInstance> {
        let k = self.k();
        let mut removed: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
        for v in hitters {
            if !self.contains_vertex(*v) {
                return Err(Error::OffsetOutOfRange {
                    part: v.part,
                    offset: v.offset,
                    size: self.part_sizes.get(v.part).copied().unwrap_or(0),
                });
            }
            removed[v.part].insert(v.offset);
        }
        let back: Vec<Vec<usize>> = (0..k)
            .map(|part| {
                (0..self.part_sizes[part])
                    .filter(|o| !removed[part].contains(o))
                    .collect()
            })
            .collect();
        let index_of: Vec<std::collections::BTreeMap<usize, usize>> = back
            .iter()
            .map(|offs| offs.iter().enumerate().map(|(i, &o)| (o, i)).collect())
            .collect();
        let part_sizes: Vec<usize> = back.iter().map(|b| b.len()).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| {
                e.iter()
                    .enumerate()
                    .all(|(part, o)| !removed[part].contains(o))
            })
            .map(|e| (0..k).map(|part| index_of[part][&e[part]]).collect())
            .collect();
        let instance = KPartiteHypergraph {
            part_sizes,
            edges,
            provenance: None,
        };
        Ok(SubInstance::new(
            instance,
            back.into_iter()
                .enumerate()
                .map(|(part, offs)| {
                    offs.into_iter().map(|o| VertexRef::new(part, o)).collect()
                })
                .collect(),
        ))
    }

    /// The residual edges of [`remove_hit_edges`](Self::remove_hit_edges) in
    /// this instance's own coordinates: the edges disjoint from `hitters`.
    /// Useful as a memoization key, since the minimum cover of the residual
    /// depends only on this edge set.
    pub fn surviving_edges(&self, hitters: &[VertexRef]) -> Vec<Edge> {
        let mut removed: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.k()];
        for v in hitters {
            if v.part < removed.len() {
                removed[v.part].insert(v.offset);
            }
        }
        self.edges
            .iter()
            .filter(|e| {
                e.iter()
                    .enumerate()
                    .all(|(part, o)| !removed[part].contains(o))
            })
            .cloned()
            .collect()
    }

    /// A density report for diagnostics, optionally with the best `ell`-wise
    /// witness.
    pub fn density_report(&self, ell: Option<usize>) -> Result<DensityReport> {
        let lwise = match ell {
            None => None,
            Some(l) => {
                let (index_set, eps) = self.lwise_density(l)?;
                Some(LwiseReport {
                    subset_size: l,
                    index_set,
                    density: eps,
                })
            }
        };
        Ok(DensityReport {
            density: self.density(),
            lwise,
        })
    }
}

/// A derived instance together with the map back to its parent's coordinates.
#[derive(Debug, Clone)]
pub struct SubInstance {
    pub instance: KPartiteHypergraph,
    back: Vec<Vec<VertexRef>>,
}

impl SubInstance {
    fn new(instance: KPartiteHypergraph, back: Vec<Vec<VertexRef>>) -> Self {
        SubInstance { instance, back }
    }

    /// Parent coordinates of a vertex of the derived instance.
    pub fn to_parent(&self, v: VertexRef) -> VertexRef {
        self.back[v.part][v.offset]
    }

    /// Maps a vertex set into parent coordinates, keeping canonical order.
    pub fn set_to_parent(&self, vs: &[VertexRef]) -> Vec<VertexRef> {
        let mut out: Vec<VertexRef> = vs.iter().map(|&v| self.to_parent(v)).collect();
        out.sort();
        out
    }
}

/// Density facts about one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub density: Rational,
    pub lwise: Option<LwiseReport>,
}

/// The best `ell`-wise density witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LwiseReport {
    pub subset_size: usize,
    pub index_set: Vec<usize>,
    pub density: Rational,
}
