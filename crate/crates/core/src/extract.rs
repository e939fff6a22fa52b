//! Candidate extraction: a polynomial-size collection of vertex sets, at
//! least one of which is a large subset of some minimum vertex cover.
//!
//! The procedure works on the smallest part of a normalized instance. It
//! takes the `p = ceil(|E| / prod of the other part sizes)` heaviest
//! vertices there, keeps that prefix as a candidate, and for each prefix
//! vertex recurses into the instance induced by it, prepending the earlier
//! prefix vertices to every recursive candidate. On an instance of density
//! `eps`, some candidate of size at least `eps * |V_k|` extends to a
//! minimum cover — and in fact every candidate has at least that size.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::hypergraph::{KPartiteHypergraph, VertexRef};

/// One candidate partial cover, in the root instance's coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// The vertex set, sorted.
    pub vertices: Vec<VertexRef>,
    /// Recursion path that produced this set: the 1-based prefix index
    /// chosen at each level. The empty path is a level's own prefix set.
    /// When several paths reach the same set, the first in recursion order
    /// is kept.
    pub trace: Vec<usize>,
}

impl Candidate {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// The deduplicated candidate family, in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCollection {
    candidates: Vec<Candidate>,
}

impl CandidateCollection {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter()
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    /// The candidate produced as the root level's heaviest prefix (trace
    /// empty). Present for every instance.
    pub fn root_prefix(&self) -> &Candidate {
        self.candidates
            .iter()
            .find(|c| c.trace.is_empty())
            .expect("every collection contains the root prefix candidate")
    }

    pub fn contains(&self, set: &[VertexRef]) -> bool {
        self.candidates.iter().any(|c| c.vertices == set)
    }
}

/// The `p` heaviest vertices of the last (smallest) part, by non-increasing
/// degree; ties broken by ascending offset.
pub fn heaviest_prefix(h: &KPartiteHypergraph, p: usize) -> Result<Vec<VertexRef>> {
    if !h.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let last = h.k() - 1;
    let part_size = h.part_sizes()[last];
    if p > part_size {
        return Err(Error::PrefixTooLong {
            requested: p,
            part_size,
        });
    }
    let mut degrees = vec![0usize; part_size];
    for e in h.edges() {
        degrees[e[last]] += 1;
    }
    let mut order: Vec<usize> = (0..part_size).collect();
    order.sort_by_key(|&o| (std::cmp::Reverse(degrees[o]), o));
    Ok(order
        .into_iter()
        .take(p)
        .map(|o| VertexRef::new(last, o))
        .collect())
}

/// Runs the extraction on a normalized instance.
///
/// Contract: if `eps = density(h)`, the collection contains a set `S` with
/// `|S| >= eps * |V_k|` such that `|S| + tau(residual after S) = tau(h)`.
/// The collection never exceeds `prod |V_i|` sets and identical inputs
/// yield identical collections.
pub fn extract(h: &KPartiteHypergraph) -> Result<CandidateCollection> {
    if !h.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let map = extract_rec(h)?;
    Ok(CandidateCollection {
        candidates: map
            .into_iter()
            .map(|(vertices, trace)| Candidate { vertices, trace })
            .collect(),
    })
}

fn extract_rec(h: &KPartiteHypergraph) -> Result<BTreeMap<Vec<VertexRef>, Vec<usize>>> {
    let k = h.k();
    let mut out = BTreeMap::new();
    if k == 1 {
        // The union of all edges is the unique minimum cover here.
        let mut support: Vec<VertexRef> = h
            .edges()
            .iter()
            .map(|e| VertexRef::new(0, e[0]))
            .collect();
        support.dedup();
        out.insert(support, vec![]);
        return Ok(out);
    }
    if h.m() == 0 {
        // p would be 0 (or 0/0 on an empty part); the loop body never runs.
        out.insert(vec![], vec![]);
        return Ok(out);
    }
    let leading: BigInt = h.part_sizes()[..k - 1]
        .iter()
        .fold(BigInt::one(), |acc, &s| acc * BigInt::from(s));
    let m = BigInt::from(h.m());
    let p = ((&m + &leading - BigInt::one()) / &leading)
        .to_usize()
        .expect("prefix length fits in usize");
    let prefix = heaviest_prefix(h, p)?;
    out.insert(prefix.clone(), vec![]);
    for i in 1..=p {
        let v = prefix[i - 1];
        let kept_prefix = &prefix[..i - 1];
        let sub = h.induced(v)?;
        let (sub_norm, perm) = sub.instance.normalize();
        for (inner_set, inner_trace) in extract_rec(&sub_norm)? {
            let mapped: Vec<VertexRef> = inner_set
                .into_iter()
                .map(|w| sub.to_parent(KPartiteHypergraph::from_normalized(&perm, w)))
                .collect();
            let mut candidate: Vec<VertexRef> = kept_prefix.to_vec();
            candidate.extend(mapped);
            candidate.sort();
            candidate.dedup();
            let mut trace = Vec::with_capacity(inner_trace.len() + 1);
            trace.push(i);
            trace.extend(inner_trace);
            out.entry(candidate).or_insert(trace);
        }
    }
    Ok(out)
}

/// Evaluates every candidate against an exact-cover oracle and returns the
/// one minimizing `|S| + tau(residual after S)`, with that minimum. The
/// first candidate in canonical order wins ties.
pub fn best_extension<F>(
    h: &KPartiteHypergraph,
    collection: &CandidateCollection,
    mut oracle: F,
) -> Result<(Candidate, usize)>
where
    F: FnMut(&KPartiteHypergraph) -> Result<usize>,
{
    let mut best: Option<(&Candidate, usize)> = None;
    for c in collection.iter() {
        let residual = h.remove_hit_edges(&c.vertices)?;
        let ext = c.size() + oracle(&residual.instance)?;
        match best {
            Some((_, b)) if b <= ext => {}
            _ => best = Some((c, ext)),
        }
    }
    let (c, ext) = best.expect("collection is never empty");
    Ok((c.clone(), ext))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::tight_family;
    use crate::hypergraph::KPartiteHypergraph;

    fn refs(part: usize, offsets: &[usize]) -> Vec<VertexRef> {
        offsets.iter().map(|&o| VertexRef::new(part, o)).collect()
    }

    #[test]
    fn heaviest_prefix_tie_break() {
        // all degrees equal: ascending offsets win
        let h = tight_family(2, 3, 3).unwrap();
        assert_eq!(heaviest_prefix(&h, 2).unwrap(), refs(1, &[0, 1]));
        assert_eq!(heaviest_prefix(&h, 0).unwrap(), vec![]);
        assert!(matches!(
            heaviest_prefix(&h, 4),
            Err(Error::PrefixTooLong { .. })
        ));
    }

    #[test]
    fn heaviest_prefix_orders_by_degree() {
        let h = tight_family(2, 2, 1).unwrap();
        // degrees on the last part: offset 0 has 2, offset 1 has 0
        assert_eq!(heaviest_prefix(&h, 1).unwrap(), refs(1, &[0]));
        assert_eq!(heaviest_prefix(&h, 2).unwrap(), refs(1, &[0, 1]));
    }

    #[test]
    fn extract_unary_returns_edge_union() {
        let h = KPartiteHypergraph::new(vec![3], vec![vec![0], vec![2]]).unwrap();
        let r = extract(&h).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.candidates()[0].vertices, refs(0, &[0, 2]));
    }

    #[test]
    fn extract_empty_edge_set_returns_empty_set() {
        let h = KPartiteHypergraph::new(vec![2, 2], vec![]).unwrap();
        let r = extract(&h).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.candidates()[0].vertices, vec![]);
    }

    #[test]
    fn extract_hand_traced_tight_bipartite() {
        // Parts {a0,a1}, {b0,b1}; edges (a0,b0), (a1,b0). p = ceil(2/2) = 1,
        // prefix = {b0}; recursing into b0's induced instance yields {a0,a1}.
        let h = tight_family(2, 2, 1).unwrap();
        let r = extract(&h).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&refs(1, &[0])));
        assert!(r.contains(&refs(0, &[0, 1])));
    }

    #[test]
    fn extract_is_deterministic() {
        let h = tight_family(3, 3, 2).unwrap();
        assert_eq!(extract(&h).unwrap(), extract(&h).unwrap());
    }

    #[test]
    fn collection_size_within_bound() {
        for (k, l, u) in [(2, 3, 2), (3, 3, 3), (4, 2, 1)] {
            let h = tight_family(k, l, u).unwrap();
            let r = extract(&h).unwrap();
            let bound: usize = h.part_sizes().iter().product();
            assert!(r.len() <= bound, "|R| = {} > {}", r.len(), bound);
        }
    }

    #[test]
    fn root_prefix_has_ceiling_size() {
        // p = ceil(eps * |V_k|) whenever edges exist.
        let h = tight_family(3, 4, 2).unwrap();
        let r = extract(&h).unwrap();
        assert_eq!(r.root_prefix().size(), 2);
        assert_eq!(r.root_prefix().vertices, refs(2, &[0, 1]));
    }

    #[test]
    fn best_extension_on_empty_collection_instance() {
        let h = KPartiteHypergraph::new(vec![2, 2], vec![]).unwrap();
        let r = extract(&h).unwrap();
        let (c, ext) = best_extension(&h, &r, |res| Ok(res.m())).unwrap();
        assert_eq!(c.vertices, vec![]);
        assert_eq!(ext, 0);
    }
}
