//! Closed-form hardness-factor calculators and the dominance table that
//! lines them up against the algorithmic guarantee.
//!
//! Each factor is returned without its vanishing additive slack, so the
//! values are supremum bounds. The prior-work ratio needs a real root; it
//! is returned as a certified rational enclosure so every table inequality
//! remains an exact comparison.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::approx::guarantee;
use crate::error::{Error, Result};
use crate::rational::{int_u, ratio_u, Rational};

/// A certified enclosure `lo <= value <= hi` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalBracket {
    pub lo: Rational,
    pub hi: Rational,
}

impl RationalBracket {
    fn exact(v: Rational) -> Self {
        RationalBracket { lo: v.clone(), hi: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int_u(2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Certified strict comparison: the whole enclosure lies above `v`.
    pub fn certainly_above(&self, v: &Rational) -> bool {
        &self.lo > v
    }
}

fn check_eps_open(eps: &Rational, what: &str) -> Result<()> {
    if eps <= &Rational::zero() || eps >= &Rational::one() {
        return Err(Error::Domain(format!(
            "{what} requires eps strictly inside (0, 1)"
        )));
    }
    Ok(())
}

/// The UGC-conditional factor
/// `k / (2 + 2(k-1)(k-2) eps / (k + (k-2) eps))`, for `k >= 3`.
pub fn ugc_factor(k: usize, eps: &Rational) -> Result<Rational> {
    if k < 3 {
        return Err(Error::Domain(format!("ugc factor requires k >= 3, got {k}")));
    }
    check_eps_open(eps, "ugc factor")?;
    let k_r = int_u(k as u128);
    let km1 = int_u((k - 1) as u128);
    let km2 = int_u((k - 2) as u128);
    let inner = int_u(2) * km1 * &km2 * eps / (&k_r + &km2 * eps);
    Ok(&k_r / (int_u(2) + inner))
}

/// The conjectured-matching factor `k / (2 + (k-2) eps)`, identical to the
/// algorithmic guarantee, for `k >= 3`.
pub fn conjecture_factor(k: usize, eps: &Rational) -> Result<Rational> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "conjecture factor requires k >= 3, got {k}"
        )));
    }
    check_eps_open(eps, "conjecture factor")?;
    guarantee(k, eps)
}

/// The unconditional NP-hardness factor
/// `(k^2 (1-eps) + 2 eps (k+1)(2(k+1)+1)) / (2(k+1)(1 - eps + eps(2(k+1)+1)))`,
/// for `k >= 4`.
pub fn np_factor(k: usize, eps: &Rational) -> Result<Rational> {
    if k < 4 {
        return Err(Error::Domain(format!("np factor requires k >= 4, got {k}")));
    }
    check_eps_open(eps, "np factor")?;
    let k_r = int_u(k as u128);
    let kp1 = int_u((k + 1) as u128);
    let block = int_u(2) * &kp1 + Rational::one(); // 2(k+1)+1
    let one_minus = Rational::one() - eps;
    let numerator = &k_r * &k_r * &one_minus + int_u(2) * eps * &kp1 * &block;
    let denominator = int_u(2) * &kp1 * (&one_minus + eps * &block);
    Ok(numerator / denominator)
}

/// The hard-to-decide threshold pair `(1/k, 2/k^2)` behind the conjectured
/// factor; exposed for completeness, not used computationally.
pub fn conjecture_thresholds(k: usize) -> Result<(Rational, Rational)> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "conjecture thresholds require k >= 3, got {k}"
        )));
    }
    Ok((
        ratio_u(1, k as u128),
        ratio_u(2, (k * k) as u128),
    ))
}

/// The prior-work ratio `k / (k - (k-2)(1-eps)^(1/(k-ell)))` as a certified
/// enclosure. Exact whenever `(1-eps)` has an exact `(k-ell)`-th rational
/// root (always for `ell = k-1`); otherwise the root is bisected to the
/// requested width.
pub fn cksv_guarantee(
    k: usize,
    ell: usize,
    eps: &Rational,
    root_width: &Rational,
) -> Result<RationalBracket> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "prior-work guarantee requires k >= 3, got {k}"
        )));
    }
    if ell < 1 || ell > k - 1 {
        return Err(Error::ArityOutOfRange {
            what: "ell",
            got: ell,
            min: 1,
            max: k - 1,
        });
    }
    if eps < &Rational::zero() || eps > &Rational::one() {
        return Err(Error::Domain(
            "prior-work guarantee requires eps in [0, 1]".to_string(),
        ));
    }
    let base = Rational::one() - eps;
    let root = nth_root_bracket(&base, (k - ell) as u32, root_width);
    // k / (k - (k-2) r) is increasing in r on [0, 1].
    let k_r = int_u(k as u128);
    let km2 = int_u((k - 2) as u128);
    let lo = &k_r / (&k_r - &km2 * &root.lo);
    let hi = &k_r / (&k_r - &km2 * &root.hi);
    Ok(RationalBracket { lo, hi })
}

/// Default width for root enclosures: narrow enough that every grid
/// inequality in the dominance table is decided.
pub fn default_root_width() -> Rational {
    ratio_u(1, 1_000_000_000_000)
}

/// Certified enclosure of `base^(1/n)` for `base` in [0, 1].
fn nth_root_bracket(base: &Rational, n: u32, width: &Rational) -> RationalBracket {
    assert!(n >= 1);
    assert!(!base.is_negative() && base <= &Rational::one());
    if n == 1 || base.is_zero() || base.is_one() {
        return RationalBracket::exact(base.clone());
    }
    // Exact rational root when both sides are perfect n-th powers.
    let num_root = base.numer().nth_root(n);
    let den_root = base.denom().nth_root(n);
    if &pow(&num_root, n) == base.numer() && &pow(&den_root, n) == base.denom() {
        return RationalBracket::exact(Rational::new(num_root, den_root));
    }
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / int_u(2);
        let mid_pow = rational_pow(&mid, n);
        if &mid_pow <= base {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RationalBracket { lo, hi }
}

fn pow(b: &BigInt, n: u32) -> BigInt {
    num::pow::pow(b.clone(), n as usize)
}

fn rational_pow(b: &Rational, n: u32) -> Rational {
    Rational::new(pow(b.numer(), n), pow(b.denom(), n))
}

/// One row of the dominance table.
#[derive(Debug, Clone)]
pub struct BoundPoint {
    pub k: usize,
    pub eps: Rational,
    pub ugc_factor: Rational,
    pub conjecture_factor: Rational,
    /// Only stated for `k >= 4`.
    pub np_factor: Option<Rational>,
    pub alg_guarantee: Rational,
    /// Prior-work enclosures per requested `ell` (clipped to `[1, k-1]`).
    pub cksv: Vec<(usize, RationalBracket)>,
    /// All dominance checks passed with certainty.
    pub dominance_ok: bool,
    /// Human-readable reasons when `dominance_ok` is false.
    pub violations: Vec<String>,
}

/// Evaluates every factor on the grid and checks the expected ordering:
/// `np <= ugc <= conjecture = guarantee`, the prior-work ratio equal to the
/// guarantee at `ell = k-1` and certifiably above it for `ell <= k-2`.
/// Rows never fail the call; violations are flagged on the row.
pub fn gap_table(
    ks: &[usize],
    eps_grid: &[Rational],
    ell_grid: &[usize],
) -> Result<Vec<BoundPoint>> {
    let mut rows = Vec::new();
    for &k in ks {
        for eps in eps_grid {
            rows.push(bound_point(k, eps, ell_grid)?);
        }
    }
    Ok(rows)
}

fn bound_point(k: usize, eps: &Rational, ell_grid: &[usize]) -> Result<BoundPoint> {
    let ugc = ugc_factor(k, eps)?;
    let conjecture = conjecture_factor(k, eps)?;
    let np = if k >= 4 { Some(np_factor(k, eps)?) } else { None };
    let alg = guarantee(k, eps)?;
    let mut violations = Vec::new();
    if ugc > conjecture {
        violations.push(format!("ugc {} > conjecture {}", ugc, conjecture));
    }
    if conjecture != alg {
        violations.push(format!("conjecture {} != guarantee {}", conjecture, alg));
    }
    if let Some(np) = &np {
        if np > &ugc {
            violations.push(format!("np {} > ugc {}", np, ugc));
        }
    }
    let mut cksv = Vec::new();
    for &ell in ell_grid.iter().filter(|&&l| l >= 1 && l < k) {
        let bracket = refine_until_decided(k, ell, eps, &alg)?;
        if ell == k - 1 {
            if !bracket.contains(&alg) {
                violations.push(format!(
                    "prior-work ratio at ell=k-1 excludes the guarantee {alg}"
                ));
            }
        } else if !bracket.certainly_above(&alg) {
            violations.push(format!(
                "prior-work ratio at ell={ell} not certifiably above the guarantee {alg}"
            ));
        }
        cksv.push((ell, bracket));
    }
    Ok(BoundPoint {
        k,
        eps: eps.clone(),
        ugc_factor: ugc,
        conjecture_factor: conjecture,
        np_factor: np,
        alg_guarantee: alg,
        cksv,
        dominance_ok: violations.is_empty(),
        violations,
    })
}

/// Narrows the enclosure until the strict comparison against the guarantee
/// is decided (or the width passes 1e-30, at which point the row is
/// flagged rather than looping forever).
fn refine_until_decided(
    k: usize,
    ell: usize,
    eps: &Rational,
    alg: &Rational,
) -> Result<RationalBracket> {
    let mut width = default_root_width();
    let floor = Rational::new(BigInt::one(), pow(&BigInt::from(10), 30));
    loop {
        let bracket = cksv_guarantee(k, ell, eps, &width)?;
        let decided = bracket.is_exact()
            || bracket.certainly_above(alg)
            || &bracket.hi < alg
            || width <= floor;
        if decided {
            return Ok(bracket);
        }
        width = &width / int_u(1_000_000);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn ugc_direct_evaluation() {
        // k=4, eps=1/2: 4 / (2 + 12*(1/2) / (4+1)) = 4 / (16/5) = 5/4.
        assert_eq!(ugc_factor(4, &ratio(1, 2)).unwrap(), ratio(5, 4));
        assert!(ugc_factor(2, &ratio(1, 2)).is_err());
        assert!(ugc_factor(3, &int(0)).is_err());
        assert!(ugc_factor(3, &int(1)).is_err());
    }

    #[test]
    fn ugc_limits_by_convergence() {
        // eps -> 0 approaches k/2, eps -> 1 approaches 1; check with a
        // squeeze at 10^-9 from the monotone side.
        let tiny = ratio(1, 1_000_000_000);
        let f0 = ugc_factor(3, &tiny).unwrap();
        assert!((&f0 - ratio(3, 2)).abs() < ratio(1, 100_000_000));
        let f1 = ugc_factor(3, &(int(1) - &tiny)).unwrap();
        assert!((&f1 - int(1)).abs() < ratio(1, 100_000_000));
    }

    #[test]
    fn conjecture_matches_guarantee_exactly() {
        for k in 3..=10 {
            for i in 1..=9 {
                let eps = ratio(i, 10);
                assert_eq!(
                    conjecture_factor(k, &eps).unwrap(),
                    guarantee(k, &eps).unwrap()
                );
            }
        }
        assert_eq!(conjecture_factor(3, &ratio(1, 2)).unwrap(), ratio(6, 5));
        assert_eq!(conjecture_factor(5, &ratio(1, 3)).unwrap(), ratio(5, 3));
    }

    #[test]
    fn np_direct_evaluation() {
        // k=4, eps=1/2: (8 + 55) / (10 * 6) = 63/60 = 21/20.
        assert_eq!(np_factor(4, &ratio(1, 2)).unwrap(), ratio(21, 20));
        assert!(np_factor(3, &ratio(1, 2)).is_err());
    }

    #[test]
    fn np_limits_by_convergence() {
        // eps -> 0 gives k^2 / (2(k+1)) = 8/5 at k=4; eps -> 1 gives 1.
        let tiny = ratio(1, 1_000_000_000);
        let f0 = np_factor(4, &tiny).unwrap();
        assert!((&f0 - ratio(8, 5)).abs() < ratio(1, 10_000_000));
        let f1 = np_factor(4, &(int(1) - &tiny)).unwrap();
        assert!((&f1 - int(1)).abs() < ratio(1, 10_000_000));
    }

    #[test]
    fn cksv_exact_roots() {
        let w = default_root_width();
        // ell = k-1: the root is 1-eps itself, and the ratio collapses to
        // the new guarantee.
        for k in 3..=6 {
            for i in 0..=10 {
                let eps = ratio(i, 10);
                let b = cksv_guarantee(k, k - 1, &eps, &w).unwrap();
                assert!(b.is_exact());
                assert_eq!(b.lo, guarantee(k, &eps).unwrap());
            }
        }
        // eps = 0: root of 1 is 1, ratio k/2 for every ell.
        for ell in 1..=3 {
            let b = cksv_guarantee(4, ell, &int(0), &w).unwrap();
            assert!(b.is_exact());
            assert_eq!(b.lo, int(2));
        }
        // (1/8)^(1/3) = 1/2 exactly: ratio 4/3.
        let b = cksv_guarantee(4, 1, &ratio(7, 8), &w).unwrap();
        assert!(b.is_exact());
        assert_eq!(b.lo, ratio(4, 3));
    }

    #[test]
    fn cksv_bracket_narrow_and_ordered() {
        let w = default_root_width();
        let b = cksv_guarantee(4, 2, &ratio(1, 2), &w).unwrap();
        assert!(b.lo <= b.hi);
        assert!(b.width() < ratio(1, 1_000_000_000));
        // sqrt(1/2) ~ 0.7071: ratio 4/(4-2r) ~ 1.5469...
        let mid = crate::rational::to_f64(&b.midpoint());
        assert!((mid - 1.5469).abs() < 1e-3);
    }

    #[test]
    fn thresholds_pair() {
        assert_eq!(
            conjecture_thresholds(4).unwrap(),
            (ratio(1, 4), ratio(2, 16))
        );
        assert!(conjecture_thresholds(2).is_err());
    }

    #[test]
    fn table_dominance_holds_on_a_small_grid() {
        let ks = [3, 4, 5];
        let eps: Vec<Rational> = (1..=9).map(|i| ratio(i, 10)).collect();
        let ells = [1, 2, 3, 4];
        let rows = gap_table(&ks, &eps, &ells).unwrap();
        assert_eq!(rows.len(), 27);
        for row in &rows {
            assert!(row.dominance_ok, "violations: {:?}", row.violations);
            assert!(row.ugc_factor >= int(1));
            assert!(row.alg_guarantee >= int(1));
            if let Some(np) = &row.np_factor {
                assert!(np >= &int(1));
            }
        }
    }
}
