//! Property tests for the structural invariants of the data model and the
//! extraction procedure.

use proptest::prelude::*;

use hvc::extract::extract;
use hvc::format::{from_hvc_str, to_hvc_string};
use hvc::hypergraph::{Edge, KPartiteHypergraph, VertexRef};
use hvc::rational::{ceil_to_usize, int_u, Rational};
use hvc::solvers::{lp_relax, round_threshold};

/// Normalized part sizes (non-increasing) with k in 1..=4, sizes in 1..=4.
fn sizes_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=4, 1..=4).prop_map(|mut v| {
        v.sort_by(|a, b| b.cmp(a));
        v
    })
}

/// An arbitrary instance over the given sizes: a random subset of edges.
fn instance_strategy() -> impl Strategy<Value = KPartiteHypergraph> {
    sizes_strategy().prop_flat_map(|sizes| {
        let edge = sizes
            .iter()
            .map(|&s| 0..s)
            .collect::<Vec<_>>()
            .into_iter()
            .map(|r| r.prop_map(|o| o).boxed())
            .collect::<Vec<_>>();
        let one_edge: BoxedStrategy<Edge> = edge
            .into_iter()
            .fold(Just(Vec::new()).boxed(), |acc, s| {
                (acc, s)
                    .prop_map(|(mut v, o)| {
                        v.push(o);
                        v
                    })
                    .boxed()
            });
        prop::collection::vec(one_edge, 0..=20)
            .prop_map(move |edges| KPartiteHypergraph::new(sizes.clone(), edges).unwrap())
    })
}

fn vertex_subset(h: &KPartiteHypergraph, picks: &[bool]) -> Vec<VertexRef> {
    h.vertices()
        .zip(picks.iter().cycle())
        .filter_map(|(v, &take)| take.then_some(v))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn density_identity(h in instance_strategy()) {
        // density * prod sizes == |E| exactly
        let prod = Rational::from_integer(h.transversal_count());
        prop_assert_eq!(h.density() * prod, int_u(h.m() as u128));
    }

    #[test]
    fn lwise_implies_plain_density(h in instance_strategy()) {
        let k = h.k();
        for ell in 1..k {
            let (_, eps) = h.lwise_density(ell).unwrap();
            // Summing the per-tuple bound over all tuples of the witness
            // index set gives |E| >= eps * prod sizes.
            prop_assert!(h.density() >= eps);
        }
    }

    #[test]
    fn induced_edge_count_is_degree(h in instance_strategy()) {
        if h.k() >= 2 {
            let last = h.k() - 1;
            for v in h.part_vertices(last) {
                let sub = h.induced(v).unwrap();
                prop_assert_eq!(sub.instance.m(), h.vertex_degree(v));
                for (i, &s) in sub.instance.part_sizes().iter().enumerate() {
                    prop_assert!(s <= h.part_sizes()[i]);
                }
            }
        }
    }

    #[test]
    fn residual_cover_composes(h in instance_strategy(), picks in prop::collection::vec(any::<bool>(), 1..=16)) {
        let s = vertex_subset(&h, &picks);
        let sub = h.remove_hit_edges(&s).unwrap();
        // Any cover of the residual, mapped back and joined with s, covers h;
        // and a joint cover restricted to the residual covers it.
        let residual_all: Vec<VertexRef> = sub.instance.vertices().collect();
        let mut joint = sub.set_to_parent(&residual_all);
        joint.extend_from_slice(&s);
        prop_assert!(h.is_vertex_cover(&joint) == sub.instance.is_vertex_cover(&residual_all));
    }

    #[test]
    fn format_round_trip(h in instance_strategy()) {
        let text = to_hvc_string(&h);
        let back = from_hvc_str(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(to_hvc_string(&back), text);
    }

    #[test]
    fn normalize_preserves_covers(h in instance_strategy(), picks in prop::collection::vec(any::<bool>(), 1..=16)) {
        let (norm, perm) = h.normalize();
        let cover_norm = vertex_subset(&norm, &picks);
        let mapped: Vec<VertexRef> = cover_norm
            .iter()
            .map(|&v| KPartiteHypergraph::from_normalized(&perm, v))
            .collect();
        prop_assert_eq!(norm.is_vertex_cover(&cover_norm), h.is_vertex_cover(&mapped));
    }

    #[test]
    fn extract_candidates_are_large_and_bounded(h in instance_strategy()) {
        let r = extract(&h).unwrap();
        // The recursion guarantees prod(|V_i| + 1) - 1; the naive prod|V_i|
        // fails on single-vertex parts.
        let bound: usize = h.part_sizes().iter().map(|&s| s + 1).product::<usize>() - 1;
        prop_assert!(r.len() <= bound);
        let eps = h.density();
        let vk = int_u(*h.part_sizes().last().unwrap() as u128);
        let threshold = eps.clone() * vk;
        for c in r.iter() {
            // The extraction size floor holds for every candidate.
            prop_assert!(int_u(c.size() as u128) >= threshold);
            for v in &c.vertices {
                prop_assert!(h.contains_vertex(*v));
            }
        }
        if h.m() > 0 && h.k() > 1 {
            prop_assert_eq!(r.root_prefix().size(), ceil_to_usize(&threshold));
        }
        // Determinism on identical bytes.
        prop_assert_eq!(&extract(&h).unwrap(), &r);
    }

    #[test]
    fn lp_is_feasible_and_rounding_is_covered(h in instance_strategy()) {
        let x = lp_relax(&h);
        prop_assert!(x.is_feasible(&h));
        let c = round_threshold(&h, &x);
        prop_assert!(h.is_vertex_cover(c.vertices()));
        // |C| <= k * objective, exactly.
        let k = int_u(h.k() as u128);
        prop_assert!(int_u(c.size() as u128) <= k * x.objective());
    }
}
