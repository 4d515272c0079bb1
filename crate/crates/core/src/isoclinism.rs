//! Structure-preserving equivalences between subring pairs.
//!
//! Two pairs (S1 inside R1, S2 inside R2) are equivalent in the sense used
//! here when there are additive isomorphisms `alpha : R1/Z(S1,R1) ->
//! R2/Z(S2,R2)` carrying the image of S1 onto the image of S2 and
//! `beta : [S1,R1] -> [S2,R2]` with `beta([x, y]) = [x', y']` whenever
//! `alpha` sends the cosets of `x` and `y` to those of `x'` and `y'`. Such a
//! pair of maps transports every commutator statistic, so the commuting
//! probabilities at `r` and `beta(r)` coincide; `theorem41_check` verifies
//! that numerically from both ends.
//!
//! Witnesses store `alpha` on canonical coset representatives. That the
//! choice of representative does not matter is a checked clause, not an
//! assumption: central shifts change neither centralizers nor commutators,
//! and the verifier spot-checks exactly that with random alternates.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::commutator::{commutator_subgroup, quotient_group, relative_center, AdditiveSubgroup, QuotientGroup};
use crate::prob::pr_brute;
use crate::rational::Rational;
use crate::ring::direct_product;
use crate::ring::RingRef;
use crate::subring::Subring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoclinismError {
    #[error("witness components are dimensionally inconsistent: {detail}")]
    ShapeMismatch { detail: String },
    #[error("the extra factor must be commutative")]
    NotCommutativeFactor,
    #[error("witness fails verification")]
    InvalidWitness,
    #[error("target lies outside the commutator subgroup of the first pair")]
    ROutsideCommutatorSubgroup,
}

/// A candidate equivalence between `(S1, R1)` and `(S2, R2)`.
///
/// `alpha` and `beta` are public so tests can perturb a passing witness and
/// watch the verifier catch it; everything else is derived from the two
/// subrings at construction time.
pub struct ZIsoclinismWitness {
    s1: Subring,
    s2: Subring,
    q1: QuotientGroup,
    q2: QuotientGroup,
    csub1: AdditiveSubgroup,
    csub2: AdditiveSubgroup,
    /// Coset id in `q1` to coset id in `q2`.
    pub alpha: Vec<u32>,
    /// Element of `[S1, R1]` to element of `[S2, R2]`.
    pub beta: BTreeMap<usize, usize>,
}

impl std::fmt::Debug for ZIsoclinismWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ZIsoclinismWitness")
            .field("s1", &self.s1)
            .field("s2", &self.s2)
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .finish()
    }
}

fn quotient_by_center(sub: &Subring) -> QuotientGroup {
    let z = relative_center(sub);
    let subgroup = AdditiveSubgroup::from_set(sub.ring(), z.members().clone())
        .expect("a relative center is additively closed");
    quotient_group(subgroup)
}

impl ZIsoclinismWitness {
    /// Shape-checks the raw maps against the derived quotients and
    /// commutator subgroups. Bijectivity, additivity, and compatibility are
    /// deliberately not checked here; that is `verify_isoclinism`'s job, so
    /// that defective witnesses can be constructed and reported on.
    pub fn new(
        s1: Subring,
        s2: Subring,
        alpha: Vec<u32>,
        beta: BTreeMap<usize, usize>,
    ) -> Result<Self, IsoclinismError> {
        let q1 = quotient_by_center(&s1);
        let q2 = quotient_by_center(&s2);
        let csub1 = commutator_subgroup(&s1);
        let csub2 = commutator_subgroup(&s2);
        let mismatch = |detail: String| IsoclinismError::ShapeMismatch { detail };
        if q1.num_cosets() != q2.num_cosets() {
            return Err(mismatch(format!(
                "{} cosets on the left, {} on the right",
                q1.num_cosets(),
                q2.num_cosets()
            )));
        }
        if csub1.count() != csub2.count() {
            return Err(mismatch(format!(
                "commutator subgroups have sizes {} and {}",
                csub1.count(),
                csub2.count()
            )));
        }
        if alpha.len() != q1.num_cosets() {
            return Err(mismatch(format!(
                "alpha lists {} cosets, quotient has {}",
                alpha.len(),
                q1.num_cosets()
            )));
        }
        if let Some(&bad) = alpha.iter().find(|&&c| (c as usize) >= q2.num_cosets()) {
            return Err(mismatch(format!("alpha value {bad} is not a coset id")));
        }
        if beta.len() != csub1.count()
            || !csub1.iter().all(|r| beta.contains_key(&r))
        {
            return Err(mismatch(
                "beta must be defined on exactly the commutator subgroup".to_string(),
            ));
        }
        if let Some((&k, &v)) = beta.iter().find(|&(_, &v)| v >= s2.ring().size()) {
            return Err(mismatch(format!("beta sends {k} outside the ring, to {v}")));
        }
        Ok(ZIsoclinismWitness { s1, s2, q1, q2, csub1, csub2, alpha, beta })
    }

    pub fn s1(&self) -> &Subring {
        &self.s1
    }

    pub fn s2(&self) -> &Subring {
        &self.s2
    }

    pub fn q1(&self) -> &QuotientGroup {
        &self.q1
    }

    pub fn q2(&self) -> &QuotientGroup {
        &self.q2
    }

    pub fn commutator_subgroup_left(&self) -> &AdditiveSubgroup {
        &self.csub1
    }

    pub fn commutator_subgroup_right(&self) -> &AdditiveSubgroup {
        &self.csub2
    }

    /// Coset ids of `q` whose cosets lie inside `sub`.
    fn subring_coset_ids(q: &QuotientGroup, sub: &Subring) -> Vec<usize> {
        (0..q.num_cosets()).filter(|&i| sub.contains(q.rep(i))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessClause {
    AlphaBijective,
    AlphaAdditive,
    AlphaSubringImage,
    BetaBijective,
    BetaAdditive,
    Compatibility,
    RepresentativeIndependence,
}

impl WitnessClause {
    pub fn name(self) -> &'static str {
        match self {
            WitnessClause::AlphaBijective => "alpha-bijective",
            WitnessClause::AlphaAdditive => "alpha-additive",
            WitnessClause::AlphaSubringImage => "alpha-subring-image",
            WitnessClause::BetaBijective => "beta-bijective",
            WitnessClause::BetaAdditive => "beta-additive",
            WitnessClause::Compatibility => "compatibility",
            WitnessClause::RepresentativeIndependence => "representative-independence",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClauseResult {
    pub clause: WitnessClause,
    pub pass: bool,
    /// Empty on pass; first violation found otherwise.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub clauses: Vec<ClauseResult>,
}

impl WitnessReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn clause(&self, clause: WitnessClause) -> &ClauseResult {
        self.clauses
            .iter()
            .find(|c| c.clause == clause)
            .expect("every clause is always reported")
    }
}

const ALT_REP_SEED: u64 = 0x5eed_0001;

/// Checks every defining clause of the equivalence and reports them
/// individually. Compatibility runs over all (S1-coset, coset)
/// representative pairs; representative independence repeats it with one
/// seeded-random alternate representative per coset on both sides.
pub fn verify_isoclinism(w: &ZIsoclinismWitness) -> WitnessReport {
    let mut clauses = Vec::new();
    let n = w.q1.num_cosets();
    let ring1 = w.s1.ring();
    let ring2 = w.s2.ring();

    let mut seen = vec![false; n];
    let mut alpha_bijective = ClauseResult {
        clause: WitnessClause::AlphaBijective,
        pass: true,
        detail: String::new(),
    };
    for (i, &img) in w.alpha.iter().enumerate() {
        if seen[img as usize] {
            alpha_bijective.pass = false;
            alpha_bijective.detail = format!("coset {img} hit twice, second time from {i}");
            break;
        }
        seen[img as usize] = true;
    }
    clauses.push(alpha_bijective);

    let mut alpha_additive = ClauseResult {
        clause: WitnessClause::AlphaAdditive,
        pass: true,
        detail: String::new(),
    };
    'additive: for i in 0..n {
        for j in 0..n {
            let lhs = w.alpha[w.q1.add(i, j)] as usize;
            let rhs = w.q2.add(w.alpha[i] as usize, w.alpha[j] as usize);
            if lhs != rhs {
                alpha_additive.pass = false;
                alpha_additive.detail =
                    format!("alpha({i} + {j}) is coset {lhs}, expected {rhs}");
                break 'additive;
            }
        }
    }
    clauses.push(alpha_additive);

    let s1_cosets = ZIsoclinismWitness::subring_coset_ids(&w.q1, &w.s1);
    let s2_cosets = ZIsoclinismWitness::subring_coset_ids(&w.q2, &w.s2);
    let image: std::collections::BTreeSet<usize> =
        s1_cosets.iter().map(|&i| w.alpha[i] as usize).collect();
    let target: std::collections::BTreeSet<usize> = s2_cosets.iter().copied().collect();
    clauses.push(ClauseResult {
        clause: WitnessClause::AlphaSubringImage,
        pass: image == target,
        detail: if image == target {
            String::new()
        } else {
            format!("alpha sends the subring cosets to {image:?}, expected {target:?}")
        },
    });

    let beta_values: std::collections::BTreeSet<usize> = w.beta.values().copied().collect();
    let beta_target: std::collections::BTreeSet<usize> = w.csub2.iter().collect();
    clauses.push(ClauseResult {
        clause: WitnessClause::BetaBijective,
        pass: beta_values == beta_target,
        detail: if beta_values == beta_target {
            String::new()
        } else {
            "beta image differs from the right commutator subgroup".to_string()
        },
    });

    let mut beta_additive = ClauseResult {
        clause: WitnessClause::BetaAdditive,
        pass: true,
        detail: String::new(),
    };
    'beta: for r in w.csub1.iter() {
        for s in w.csub1.iter() {
            let sum = ring1.add_idx(r, s);
            let lhs = w.beta[&sum];
            let rhs = ring2.add_idx(w.beta[&r], w.beta[&s]);
            if lhs != rhs {
                beta_additive.pass = false;
                beta_additive.detail =
                    format!("beta({r} + {s}) = {lhs}, expected {rhs}");
                break 'beta;
            }
        }
    }
    clauses.push(beta_additive);

    let compat_violation = |x1: usize, y1: usize, x2: usize, y2: usize| -> Option<String> {
        let c1 = ring1.commutator_idx(x1, y1);
        let c2 = ring2.commutator_idx(x2, y2);
        match w.beta.get(&c1) {
            Some(&mapped) if mapped == c2 => None,
            Some(&mapped) => Some(format!(
                "beta([{x1}, {y1}]) = {mapped} but [{x2}, {y2}] = {c2}"
            )),
            None => Some(format!("[{x1}, {y1}] = {c1} escapes the commutator subgroup")),
        }
    };

    let compat = s1_cosets
        .par_iter()
        .flat_map_iter(|&i| (0..n).map(move |j| (i, j)))
        .find_map_first(|(i, j)| {
            compat_violation(
                w.q1.rep(i),
                w.q1.rep(j),
                w.q2.rep(w.alpha[i] as usize),
                w.q2.rep(w.alpha[j] as usize),
            )
        });
    clauses.push(ClauseResult {
        clause: WitnessClause::Compatibility,
        pass: compat.is_none(),
        detail: compat.unwrap_or_default(),
    });

    // One seeded-random alternate representative per coset on each side.
    let mut rng = StdRng::seed_from_u64(ALT_REP_SEED);
    let mut pick = |q: &QuotientGroup, i: usize| {
        let members: Vec<usize> = q.coset(i).iter().collect();
        members[rng.gen_range(0..members.len())]
    };
    let alt1: Vec<usize> = (0..n).map(|i| pick(&w.q1, i)).collect();
    let alt2: Vec<usize> = (0..n).map(|i| pick(&w.q2, i)).collect();
    let mut independence = ClauseResult {
        clause: WitnessClause::RepresentativeIndependence,
        pass: true,
        detail: String::new(),
    };
    'indep: for &i in &s1_cosets {
        for j in 0..n {
            if let Some(detail) = compat_violation(
                alt1[i],
                alt1[j],
                alt2[w.alpha[i] as usize],
                alt2[w.alpha[j] as usize],
            ) {
                independence.pass = false;
                independence.detail = detail;
                break 'indep;
            }
        }
    }
    clauses.push(independence);

    WitnessReport { clauses }
}

/// Identity maps on `(S, R)` against itself.
pub fn identity_witness(sub: &Subring) -> ZIsoclinismWitness {
    let q = quotient_by_center(sub);
    let alpha: Vec<u32> = (0..q.num_cosets() as u32).collect();
    let csub = commutator_subgroup(sub);
    let beta: BTreeMap<usize, usize> = csub.iter().map(|r| (r, r)).collect();
    ZIsoclinismWitness::new(sub.clone(), sub.clone(), alpha, beta)
        .expect("identity maps always fit their own pair")
}

/// Canonical witness between `(S, R)` and `(S x A, R x A)` for commutative
/// `A`. The extra factor enlarges the center without touching commutators:
/// the relative center of the product is `Z(S, R) x A` and its commutator
/// subgroup is `[S, R] x {0}`. Both identities are recomputed here from
/// scratch and asserted, not assumed.
pub fn build_product_isoclinism(
    sub: &Subring,
    factor: &RingRef,
) -> Result<ZIsoclinismWitness, IsoclinismError> {
    if !factor.is_commutative() {
        return Err(IsoclinismError::NotCommutativeFactor);
    }
    let ring = sub.ring();
    let product = direct_product(ring, factor);
    // Index arithmetic below relies on the product convention
    // embed(y, a) = y + |R| a, so embed(y, 0) = y.
    let mut members = crate::bitset::MemberSet::new(product.size());
    for a in 0..factor.size() {
        for x in sub.iter() {
            members.insert(x + ring.size() * a);
        }
    }
    let s2 = Subring::from_set(&product, members)
        .expect("a product of subrings is a subring");

    let z1 = relative_center(sub);
    let z2 = relative_center(&s2);
    assert_eq!(z2.count(), z1.count() * factor.size());
    for a in 0..factor.size() {
        for x in z1.iter() {
            assert!(z2.contains(x + ring.size() * a));
        }
    }

    let csub1 = commutator_subgroup(sub);
    let csub2 = commutator_subgroup(&s2);
    assert_eq!(csub1.count(), csub2.count());
    assert!(csub2.iter().all(|r| r < ring.size() && csub1.contains(r)));

    let q1 = quotient_by_center(sub);
    let q2 = quotient_by_center(&s2);
    let alpha: Vec<u32> = (0..q1.num_cosets())
        .map(|i| q2.coset_index(q1.rep(i)) as u32)
        .collect();
    let beta: BTreeMap<usize, usize> = csub1.iter().map(|r| (r, r)).collect();
    ZIsoclinismWitness::new(sub.clone(), s2, alpha, beta)
}

/// Re-verifies the witness, then computes the commuting probability of the
/// first pair at `r` and of the second at `beta(r)`, brute force on both
/// sides. Two facts behind the equality are asserted on the way: the center
/// indices agree, and membership of `r` in `[x, R1]` transfers to membership
/// of `beta(r)` in the image of the corresponding element on the right.
pub fn theorem41_check(
    w: &ZIsoclinismWitness,
    r: usize,
) -> Result<(Rational, Rational), IsoclinismError> {
    if !verify_isoclinism(w).pass() {
        return Err(IsoclinismError::InvalidWitness);
    }
    if !w.csub1.contains(r) {
        return Err(IsoclinismError::ROutsideCommutatorSubgroup);
    }
    let beta_r = w.beta[&r];

    let z1 = relative_center(&w.s1);
    let z2 = relative_center(&w.s2);
    assert_eq!(
        w.s1.count() / z1.count(),
        w.s2.count() / z2.count(),
        "center indices must transfer"
    );

    let t1 = w.s1.ring().tables();
    let t2 = w.s2.ring().tables();
    for i in ZIsoclinismWitness::subring_coset_ids(&w.q1, &w.s1) {
        let x1 = w.q1.rep(i);
        let x2 = w.q2.rep(w.alpha[i] as usize);
        assert_eq!(
            t1.image(x1).contains(r),
            t2.image(x2).contains(beta_r),
            "image membership must transfer"
        );
    }

    Ok((pr_brute(&w.s1, r), pr_brute(&w.s2, beta_r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{matrix_ring, ring_zn, upper_triangular_ring};

    const T_E12: usize = 2;

    fn t2_full() -> Subring {
        Subring::full(&upper_triangular_ring(2, 2))
    }

    #[test]
    fn identity_witness_passes() {
        let w = identity_witness(&t2_full());
        let report = verify_isoclinism(&w);
        assert!(report.pass(), "{:?}", report);
        let (p1, p2) = theorem41_check(&w, T_E12).unwrap();
        assert_eq!(p1, Rational::new(3, 8));
        assert_eq!(p2, Rational::new(3, 8));
    }

    #[test]
    fn product_with_z3_preserves_probabilities() {
        let s = t2_full();
        let w = build_product_isoclinism(&s, &ring_zn(3)).unwrap();
        assert!(verify_isoclinism(&w).pass());
        // The center grows from 2 to 6 while its index stays 4.
        assert_eq!(relative_center(w.s1()).count(), 2);
        assert_eq!(relative_center(w.s2()).count(), 6);
        assert_eq!(w.q1().num_cosets(), 4);
        let (p1, p2) = theorem41_check(&w, T_E12).unwrap();
        assert_eq!(p1, Rational::new(3, 8));
        assert_eq!(p2, Rational::new(3, 8));
        let (q1, q2) = theorem41_check(&w, 0).unwrap();
        assert_eq!(q1, Rational::new(5, 8));
        assert_eq!(q1, q2);
    }

    #[test]
    fn matrix_subring_product_witness() {
        let m = matrix_ring(2, 2);
        let upper = Subring::closure(&m, &[m.generator(0), m.generator(1), m.generator(3)]);
        let w = build_product_isoclinism(&upper, &ring_zn(2)).unwrap();
        assert!(verify_isoclinism(&w).pass());
        let (p1, p2) = theorem41_check(&w, 0).unwrap();
        assert_eq!(p1, Rational::new(7, 16));
        assert_eq!(p1, p2);
    }

    #[test]
    fn zero_factor_gives_identity_like_witness() {
        let s = t2_full();
        let w = build_product_isoclinism(&s, &ring_zn(1)).unwrap();
        assert!(verify_isoclinism(&w).pass());
        assert_eq!(w.s2().count(), s.count());
        assert!(w.beta.iter().all(|(k, v)| k == v));
    }

    #[test]
    fn corrupted_beta_fails_additivity_only_where_expected() {
        // The diagonal inside the 2x2 matrices interacts with a commutator
        // subgroup of order 4 in which every element is self-inverse, so
        // swapping two nonzero images would still be additive; swapping the
        // image of zero with a nonzero one is detectable.
        let m = matrix_ring(2, 2);
        let diag = Subring::closure(&m, &[m.generator(0), m.generator(3)]);
        let mut w = identity_witness(&diag);
        assert_eq!(w.commutator_subgroup_left().count(), 4);
        assert!(verify_isoclinism(&w).pass());

        let nonzero = w.commutator_subgroup_left().iter().find(|&r| r != 0).unwrap();
        let img_zero = w.beta[&0];
        let img_nonzero = w.beta[&nonzero];
        w.beta.insert(0, img_nonzero);
        w.beta.insert(nonzero, img_zero);

        let report = verify_isoclinism(&w);
        assert!(!report.pass());
        assert!(report.clause(WitnessClause::BetaBijective).pass);
        assert!(!report.clause(WitnessClause::BetaAdditive).pass);
        assert!(!report.clause(WitnessClause::Compatibility).pass);
        assert_eq!(
            theorem41_check(&w, 0).unwrap_err(),
            IsoclinismError::InvalidWitness
        );
    }

    #[test]
    fn noncommutative_factor_rejected() {
        let s = t2_full();
        let factor = upper_triangular_ring(2, 2);
        assert_eq!(
            build_product_isoclinism(&s, &factor).unwrap_err(),
            IsoclinismError::NotCommutativeFactor
        );
    }

    #[test]
    fn target_outside_commutator_subgroup_rejected() {
        let w = identity_witness(&t2_full());
        // E11 is not a sum of commutators.
        assert_eq!(
            theorem41_check(&w, 1).unwrap_err(),
            IsoclinismError::ROutsideCommutatorSubgroup
        );
    }

    #[test]
    fn shape_mismatches_rejected() {
        let s = t2_full();
        let good = identity_witness(&s);
        let short_alpha = good.alpha[..good.alpha.len() - 1].to_vec();
        let err = ZIsoclinismWitness::new(s.clone(), s.clone(), short_alpha, good.beta.clone())
            .unwrap_err();
        assert!(matches!(err, IsoclinismError::ShapeMismatch { .. }));

        let mut missing_beta = good.beta.clone();
        missing_beta.remove(&0);
        let err = ZIsoclinismWitness::new(s.clone(), s.clone(), good.alpha.clone(), missing_beta)
            .unwrap_err();
        assert!(matches!(err, IsoclinismError::ShapeMismatch { .. }));

        let z4 = Subring::full(&ring_zn(4));
        let err = ZIsoclinismWitness::new(s.clone(), z4, good.alpha.clone(), good.beta.clone())
            .unwrap_err();
        assert!(matches!(err, IsoclinismError::ShapeMismatch { .. }));
    }

    #[test]
    fn central_shifts_change_nothing() {
        let r = upper_triangular_ring(2, 2);
        let full = Subring::full(&r);
        let z = relative_center(&full);
        let tables = r.tables();
        for x in 0..r.size() {
            for zc in z.iter() {
                let shifted = r.add_idx(x, zc);
                assert_eq!(tables.image(x), tables.image(shifted));
                assert_eq!(tables.centralizer(x), tables.centralizer(shifted));
            }
        }
    }

    #[test]
    fn all_commutator_targets_transfer() {
        let m = matrix_ring(2, 2);
        let full = Subring::full(&m);
        let w = build_product_isoclinism(&full, &ring_zn(2)).unwrap();
        for r in 0..m.size() {
            if !w.commutator_subgroup_left().contains(r) {
                continue;
            }
            let (p1, p2) = theorem41_check(&w, r).unwrap();
            assert_eq!(p1, p2, "target {r}");
        }
    }
}
