//! Instance sources: the tight family, seeded random dense instances, and
//! the density-padding construction.
//!
//! Every generator stamps its parameters and seed into the instance, and
//! regenerating from that record reproduces the instance byte-identically.
//! Randomness comes from ChaCha20 with explicit rejection sampling, so the
//! edge sets are identical across platforms for a fixed seed.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KPartiteHypergraph};
use crate::rational::{display, int_u, Rational};

/// Generator parameters and seed; enough to rebuild the instance bit-exactly
/// (padding additionally needs the source instance, recorded by hash).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum InstanceProvenance {
    TightFamily {
        k: usize,
        l: usize,
        u: usize,
    },
    RandomDense {
        sizes: Vec<usize>,
        eps: String,
        seed: u64,
    },
    RandomLwise {
        sizes: Vec<usize>,
        ell: usize,
        eps: String,
        seed: u64,
    },
    Padded {
        eps: String,
        source_sha256: String,
    },
}

/// The tight family: all parts of size `l`, and every transversal whose
/// last-part vertex has offset below `u`. Density is exactly `u/l` and the
/// distinguished `u` vertices of the last part form an optimal cover.
pub fn tight_family(k: usize, l: usize, u: usize) -> Result<KPartiteHypergraph> {
    if k < 1 {
        return Err(Error::Domain("tight family requires k >= 1".into()));
    }
    if l < 1 {
        return Err(Error::Domain("tight family requires l >= 1".into()));
    }
    if u < 1 || u > l {
        return Err(Error::Domain(format!(
            "tight family requires 1 <= u <= l, got u = {u}, l = {l}"
        )));
    }
    let sizes = vec![l; k];
    let mut edges: Vec<Edge> = Vec::with_capacity(u * l.pow((k - 1) as u32));
    let lead: u128 = (l as u128).pow((k - 1) as u32);
    for idx in 0..lead {
        let mut prefix = decode_mixed_radix(idx, &sizes[..k - 1]);
        prefix.push(0);
        for last in 0..u {
            let mut e = prefix.clone();
            e[k - 1] = last;
            edges.push(e);
        }
    }
    Ok(KPartiteHypergraph::new(sizes, edges)?
        .with_provenance(InstanceProvenance::TightFamily { k, l, u }))
}

/// A uniformly sampled instance with exactly `ceil(eps * prod sizes)`
/// distinct edges, so the requested density holds by count, not in
/// expectation. Sizes must be non-increasing.
pub fn random_dense(sizes: &[usize], eps: &Rational, seed: u64) -> Result<KPartiteHypergraph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::Domain("part sizes must all be >= 1".into()));
    }
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotNormalized);
    }
    check_eps_half_open(eps)?;
    let total = checked_product(sizes)?;
    let target = ceil_mul(eps, total);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let indices = sample_distinct(&mut rng, total, target);
    let edges: Vec<Edge> = indices
        .into_iter()
        .map(|i| decode_mixed_radix(i, sizes))
        .collect();
    Ok(KPartiteHypergraph::new(sizes.to_vec(), edges)?.with_provenance(
        InstanceProvenance::RandomDense {
            sizes: sizes.to_vec(),
            eps: display(eps),
            seed,
        },
    ))
}

/// An instance that is `ell`-wise eps-dense by construction: the witness
/// index set is the first `ell` parts, and every transversal tuple of those
/// parts receives `ceil(eps * prod of remaining sizes)` distinct completions.
pub fn random_lwise_dense(
    sizes: &[usize],
    ell: usize,
    eps: &Rational,
    seed: u64,
) -> Result<KPartiteHypergraph> {
    let k = sizes.len();
    if k == 0 || sizes.contains(&0) {
        return Err(Error::Domain("part sizes must all be >= 1".into()));
    }
    if ell < 1 || ell >= k {
        return Err(Error::ArityOutOfRange {
            what: "ell",
            got: ell,
            min: 1,
            max: k.saturating_sub(1),
        });
    }
    check_eps_half_open(eps)?;
    let head_total = checked_product(&sizes[..ell])?;
    let tail_total = checked_product(&sizes[ell..])?;
    let per_tuple = ceil_mul(eps, tail_total);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for head_idx in 0..head_total {
        let head = decode_mixed_radix(head_idx, &sizes[..ell]);
        for tail_idx in sample_distinct(&mut rng, tail_total, per_tuple) {
            let mut e = head.clone();
            e.extend(decode_mixed_radix(tail_idx, &sizes[ell..]));
            edges.push(e);
        }
    }
    Ok(KPartiteHypergraph::new(sizes.to_vec(), edges)?.with_provenance(
        InstanceProvenance::RandomLwise {
            sizes: sizes.to_vec(),
            ell,
            eps: display(eps),
            seed,
        },
    ))
}

/// Pads a balanced instance to density at least `eps` by appending a block
/// of `eps/(1-eps) * n/k` vertices to every part and adding every transversal
/// that meets the first part's new block. The cover size shifts by exactly
/// the block size; density of the result is at least `eps`.
pub fn pad_to_dense(h: &KPartiteHypergraph, eps: &Rational) -> Result<KPartiteHypergraph> {
    if !h.is_balanced() {
        return Err(Error::NotBalanced {
            sizes: h.part_sizes().to_vec(),
        });
    }
    if eps <= &Rational::zero() || eps >= &Rational::one() {
        return Err(Error::Domain(format!(
            "padding requires eps strictly between 0 and 1, got {}",
            display(eps)
        )));
    }
    let k = h.k();
    let base = h.part_sizes()[0];
    let block = eps / (Rational::one() - eps) * int_u(base as u128);
    if !block.denom().is_one() || block.numer().is_zero() {
        let rounded = nearest_positive_integer(&block);
        let feasible = Rational::new(rounded.clone(), rounded + BigInt::from(base));
        return Err(Error::NonIntegralPadding {
            num: block.numer().to_string(),
            den: block.denom().to_string(),
            suggestion: display(&feasible),
        });
    }
    let block = block
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Domain("padding block does not fit in usize".into()))?;
    let new_size = base + block;
    let sizes = vec![new_size; k];
    let mut edges: Vec<Edge> = h.edges().to_vec();
    // All transversals through the appended block of part 0.
    let tail_total = checked_product(&vec![new_size; k - 1])?;
    for first in base..new_size {
        for idx in 0..tail_total {
            let mut e = Vec::with_capacity(k);
            e.push(first);
            e.extend(decode_mixed_radix(idx, &vec![new_size; k - 1]));
            edges.push(e);
        }
    }
    let source_sha256 = crate::format::instance_sha256(h);
    Ok(KPartiteHypergraph::new(sizes, edges)?.with_provenance(InstanceProvenance::Padded {
        eps: display(eps),
        source_sha256,
    }))
}

/// Rebuilds an instance from its provenance. Padded instances cannot be
/// rebuilt without their source and yield `None`.
pub fn regenerate(p: &InstanceProvenance) -> Option<Result<KPartiteHypergraph>> {
    match p {
        InstanceProvenance::TightFamily { k, l, u } => Some(tight_family(*k, *l, *u)),
        InstanceProvenance::RandomDense { sizes, eps, seed } => {
            let eps = crate::rational::parse(eps)?;
            Some(random_dense(sizes, &eps, *seed))
        }
        InstanceProvenance::RandomLwise {
            sizes,
            ell,
            eps,
            seed,
        } => {
            let eps = crate::rational::parse(eps)?;
            Some(random_lwise_dense(sizes, *ell, &eps, *seed))
        }
        InstanceProvenance::Padded { .. } => None,
    }
}

fn check_eps_half_open(eps: &Rational) -> Result<()> {
    if eps <= &Rational::zero() || eps > &Rational::one() {
        return Err(Error::Domain(format!(
            "eps must lie in (0, 1], got {}",
            display(eps)
        )));
    }
    Ok(())
}

fn checked_product(sizes: &[usize]) -> Result<u128> {
    sizes
        .iter()
        .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
        .ok_or_else(|| Error::Domain("transversal space exceeds u128".into()))
}

/// `ceil(eps * total)` computed exactly.
fn ceil_mul(eps: &Rational, total: u128) -> u128 {
    let scaled = eps * int_u(total);
    let num = scaled.numer();
    let den = scaled.denom();
    let ceil = (num + den - BigInt::one()) / den;
    ceil.to_u128().expect("edge target fits in u128")
}

fn nearest_positive_integer(r: &Rational) -> BigInt {
    let rounded = r.round().to_integer();
    if rounded < BigInt::one() {
        BigInt::one()
    } else {
        rounded
    }
}

/// Decodes an index in `[0, prod sizes)` to offsets, most significant digit
/// first, so index order equals lexicographic edge order.
fn decode_mixed_radix(mut idx: u128, sizes: &[usize]) -> Edge {
    let mut out = vec![0usize; sizes.len()];
    for i in (0..sizes.len()).rev() {
        let s = sizes[i] as u128;
        out[i] = (idx % s) as usize;
        idx /= s;
    }
    out
}

/// Unbiased uniform draw below `n` via rejection on 128-bit words.
fn uniform_below<R: RngCore>(rng: &mut R, n: u128) -> u128 {
    debug_assert!(n > 0);
    let limit = n * (u128::MAX / n);
    loop {
        let hi = rng.next_u64() as u128;
        let lo = rng.next_u64() as u128;
        let x = (hi << 64) | lo;
        if x < limit {
            return x % n;
        }
    }
}

/// Samples `count` distinct values from `[0, total)`. When more than half
/// the space is requested, samples the complement instead so the expected
/// number of draws stays linear.
fn sample_distinct<R: RngCore>(rng: &mut R, total: u128, count: u128) -> Vec<u128> {
    assert!(count <= total);
    if count * 2 <= total {
        let mut chosen = BTreeSet::new();
        while (chosen.len() as u128) < count {
            chosen.insert(uniform_below(rng, total));
        }
        chosen.into_iter().collect()
    } else {
        let holes_wanted = total - count;
        let mut holes = BTreeSet::new();
        while (holes.len() as u128) < holes_wanted {
            holes.insert(uniform_below(rng, total));
        }
        (0..total).filter(|i| !holes.contains(i)).collect()
    }
}
