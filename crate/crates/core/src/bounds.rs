//! Sharp bounds on commuting probabilities, with tightness bookkeeping.
//!
//! For a subring `S` of `R` and a target `r`, `bound_report` evaluates every
//! applicable inequality exactly and records, per bound, whether it holds and
//! whether it is attained. The central quantity is
//!
//! ```text
//! bound_value(t, c) = (1/t)(1 + (t - 1)/c) = (t + c - 1) / (t c)
//! ```
//!
//! which is symmetric in its arguments and antitone in each of them. All
//! comparisons are between reduced exact rationals; there is no epsilon.

use thiserror::Error;

use crate::commutator::{commutator_set, commutator_subgroup, relative_center};
use crate::prob::pr_centralizer_formula;
use crate::rational::Rational;
use crate::ring::Element;
use crate::subring::Subring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("every element interacts centrally, so image-size extremes are undefined")]
    DegenerateCenter,
    #[error("first subring is not contained in the second")]
    NotNested,
}

/// Least prime factor by trial division; `None` below 2.
pub fn smallest_prime_divisor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// `(1/t)(1 + (t - 1)/c)`. Requires `t, c >= 1`.
pub fn bound_value(t: u64, c: u64) -> Rational {
    assert!(t >= 1 && c >= 1);
    Rational::new(t + c - 1, t * c)
}

/// Minimum and maximum of `|[x, R]|` over the elements of `S` outside
/// `Z(S, R)`. Both extremes divide `|R|` and are at least its least prime
/// factor.
pub fn m_and_m(sub: &Subring) -> Result<(u64, u64), BoundsError> {
    let ring = sub.ring();
    let tables = ring.tables();
    let mut min = u64::MAX;
    let mut max = 0;
    for x in sub.iter() {
        let size = tables.image_size(x) as u64;
        if size > 1 {
            min = min.min(size);
            max = max.max(size);
        }
    }
    if max == 0 {
        return Err(BoundsError::DegenerateCenter);
    }
    let p = smallest_prime_divisor(ring.size() as u64).expect("noncommutative interaction needs |R| >= 2");
    debug_assert!(min >= p && min <= max);
    Ok((min, max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// One evaluated inequality. `value` is `None` exactly when the bound is
/// vacuous on this instance (its defining quantities do not exist there);
/// a vacuous bound holds trivially and is never tight.
#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub id: &'static str,
    pub side: Side,
    pub value: Option<Rational>,
    pub holds: bool,
    pub tight: bool,
}

impl BoundEntry {
    pub fn is_vacuous(&self) -> bool {
        self.value.is_none()
    }

    fn vacuous(id: &'static str, side: Side) -> Self {
        BoundEntry { id, side, value: None, holds: true, tight: false }
    }

    fn evaluated(id: &'static str, side: Side, value: Rational, exact: Rational) -> Self {
        let holds = match side {
            Side::Lower => value <= exact,
            Side::Upper => exact <= value,
        };
        BoundEntry { id, side, value: Some(value), holds, tight: value == exact }
    }
}

/// One "new bound improves on prior bound" check.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub id: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
    /// For `cmp-3.1` the fresh lower bound must be at least the prior one;
    /// for `cmp-3.2` the fresh upper bound must be at most the prior one.
    pub holds: bool,
}

/// Every applicable inequality for one `(S, R, r)` instance.
#[derive(Debug)]
pub struct BoundReport {
    pub ring_name: String,
    pub s_size: usize,
    pub r: Element,
    pub exact: Rational,
    pub p_min: Option<u64>,
    /// `(m_S, M_S)`; absent when `S = Z(S, R)`.
    pub image_extremes: Option<(u64, u64)>,
    pub center_size: usize,
    /// `|S : Z(S, R)|`.
    pub center_index: u64,
    /// Size of the raw commutator set `K(S, R)`.
    pub k_size: usize,
    /// Whether `K(S, R)` is already additively closed.
    pub k_equals_subgroup: bool,
    pub entries: Vec<BoundEntry>,
    pub comparisons: Vec<Comparison>,
}

impl BoundReport {
    pub fn entry(&self, id: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn comparison(&self, id: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.id == id)
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds) && self.comparisons.iter().all(|c| c.holds)
    }
}

/// Evaluates, at one `(S, R, r)`:
///
/// * `prop-3.1` (upper, nonzero `r` only): `(|S| - |Z(S,R)|) / (p |S|)`,
///   together with its strict cap `1/p` as comparison `prop-3.1-cap`;
/// * `prop-3.2` (upper): `Pr_0(S, R)`, attained exactly at `r = 0`;
/// * `cor-3.4` (upper): `|R : S| Pr_r(R, R)`;
/// * at `r = 0` and `S != Z(S, R)`: the sandwich `thm-3.5-lower` /
///   `thm-3.5-upper` given by `bound_value(|S : Z|, M_S)` and
///   `bound_value(|S : Z|, m_S)`, the prior bounds `eq-3.1` (lower, uses the
///   raw commutator set size) and `eq-3.2` (upper, uses the least prime
///   factor of `|R|`), the improvement comparisons `cmp-3.1` / `cmp-3.2`,
///   and `cor-3.6-lower` / `cor-3.6-upper` when additionally `S = R`;
/// * at `r = 0` with `S = Z(S, R)`: exact probability 1, sandwich entries
///   vacuous, prior bounds still evaluated (both collapse to 1).
pub fn bound_report(sub: &Subring, r: usize) -> BoundReport {
    let ring = sub.ring();
    let exact = pr_centralizer_formula(sub, r);
    let z = relative_center(sub);
    let center_size = z.count();
    let center_index = (sub.count() / center_size) as u64;
    let kset = commutator_set(sub);
    let k_size = kset.count();
    let ksub = commutator_subgroup(sub);
    let k_equals_subgroup = kset == *ksub.members();
    let p_min = smallest_prime_divisor(ring.size() as u64);
    let image_extremes = m_and_m(sub).ok();
    let pr0 = if r == 0 { exact } else { pr_centralizer_formula(sub, 0) };

    let mut entries = Vec::new();
    let mut comparisons = Vec::new();

    if r != 0 {
        let p = p_min.expect("a nonzero element requires |R| >= 2");
        let cap = Rational::new(
            (sub.count() - center_size) as u64,
            p * sub.count() as u64,
        );
        entries.push(BoundEntry::evaluated("prop-3.1", Side::Upper, cap, exact));
        comparisons.push(Comparison {
            id: "prop-3.1-cap",
            lhs: cap,
            rhs: Rational::new(1, p),
            holds: cap < Rational::new(1, p),
        });
    }

    entries.push(BoundEntry::evaluated("prop-3.2", Side::Upper, pr0, exact));

    let full = Subring::full(ring);
    let scaled_full = Rational::from_int((ring.size() / sub.count()) as u64)
        * pr_centralizer_formula(&full, r);
    entries.push(BoundEntry::evaluated("cor-3.4", Side::Upper, scaled_full, exact));

    if r == 0 {
        match image_extremes {
            Some((m, big_m)) => {
                let lower = bound_value(center_index, big_m);
                let upper = bound_value(center_index, m);
                entries.push(BoundEntry::evaluated("thm-3.5-lower", Side::Lower, lower, exact));
                entries.push(BoundEntry::evaluated("thm-3.5-upper", Side::Upper, upper, exact));
                let prior_lower = bound_value(center_index, k_size as u64);
                entries.push(BoundEntry::evaluated("eq-3.1", Side::Lower, prior_lower, exact));
                let p = p_min.expect("S != Z(S,R) requires |R| >= 2");
                let prior_upper = Rational::new(
                    (p - 1) * center_size as u64 + sub.count() as u64,
                    p * sub.count() as u64,
                );
                entries.push(BoundEntry::evaluated("eq-3.2", Side::Upper, prior_upper, exact));
                comparisons.push(Comparison {
                    id: "cmp-3.1",
                    lhs: lower,
                    rhs: prior_lower,
                    holds: lower >= prior_lower,
                });
                comparisons.push(Comparison {
                    id: "cmp-3.2",
                    lhs: upper,
                    rhs: prior_upper,
                    holds: upper <= prior_upper,
                });
                if sub.is_full() {
                    entries.push(BoundEntry::evaluated("cor-3.6-lower", Side::Lower, lower, exact));
                    entries.push(BoundEntry::evaluated("cor-3.6-upper", Side::Upper, upper, exact));
                }
            }
            None => {
                assert_eq!(exact, Rational::one(), "central interaction forces probability 1");
                entries.push(BoundEntry::vacuous("thm-3.5-lower", Side::Lower));
                entries.push(BoundEntry::vacuous("thm-3.5-upper", Side::Upper));
                entries.push(BoundEntry::evaluated(
                    "eq-3.1",
                    Side::Lower,
                    bound_value(center_index, k_size as u64),
                    exact,
                ));
                if let Some(p) = p_min {
                    let prior_upper = Rational::new(
                        (p - 1) * center_size as u64 + sub.count() as u64,
                        p * sub.count() as u64,
                    );
                    entries.push(BoundEntry::evaluated("eq-3.2", Side::Upper, prior_upper, exact));
                }
                if sub.is_full() {
                    entries.push(BoundEntry::vacuous("cor-3.6-lower", Side::Lower));
                    entries.push(BoundEntry::vacuous("cor-3.6-upper", Side::Upper));
                }
            }
        }
    }

    BoundReport {
        ring_name: ring.name().to_string(),
        s_size: sub.count(),
        r: ring.element(r),
        exact,
        p_min,
        image_extremes,
        center_size,
        center_index,
        k_size,
        k_equals_subgroup,
        entries,
        comparisons,
    }
}

/// Nested-pair comparison `Pr_r(S1, R) <= |S2 : S1| Pr_r(S2, R)`.
#[derive(Clone, Debug)]
pub struct MonotonicityCheck {
    pub left: Rational,
    /// `|S2 : S1| Pr_r(S2, R)`, the already-scaled right side.
    pub right: Rational,
    pub ratio: u64,
    pub holds: bool,
    pub equality: bool,
    /// Equality predicted from `r` missing every `[x, R]` with
    /// `x` in `S2` but not `S1`.
    pub predicted_equality: bool,
    pub condition_matches: bool,
}

pub fn monotonicity_check(
    s1: &Subring,
    s2: &Subring,
    r: usize,
) -> Result<MonotonicityCheck, BoundsError> {
    let ring = s1.ring();
    assert!(
        std::sync::Arc::ptr_eq(ring, s2.ring()),
        "nested subrings must share their ambient ring"
    );
    if !s1.members().is_subset(s2.members()) {
        return Err(BoundsError::NotNested);
    }
    let tables = ring.tables();
    let left = pr_centralizer_formula(s1, r);
    let ratio = (s2.count() / s1.count()) as u64;
    let right = Rational::from_int(ratio) * pr_centralizer_formula(s2, r);
    let predicted_equality = s2
        .iter()
        .filter(|&x| !s1.contains(x))
        .all(|x| !tables.image(x).contains(r));
    let equality = left == right;
    Ok(MonotonicityCheck {
        left,
        right,
        ratio,
        holds: left <= right,
        equality,
        predicted_equality,
        condition_matches: equality == predicted_equality,
    })
}
