//! Exact relative commuting probabilities.
//!
//! For a subring `S` of a finite ring `R` and a target `r`, the quantity
//! computed here is
//!
//! ```text
//! Pr_r(S, R) = |{(x, y) in S x R : [x, y] = r}| / (|S| |R|)
//! ```
//!
//! Three independent routes are implemented: the definitional pair count, a
//! centralizer-weighted sum, and an image-reciprocal sum. The pair count is
//! the oracle the other routes are validated against, so it deliberately
//! avoids the cached per-element tables. A fourth form sums over cosets of
//! `Z(S, R)` and backs the quotient-invariance checks.

use thiserror::Error;

use crate::bitset::MemberSet;
use crate::commutator::{commutator_subgroup, relative_center};
use crate::rational::Rational;
use crate::ring::{Element, Ring};
use crate::subring::Subring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProbError {
    #[error("commutator subgroup has {size} elements, which is not prime")]
    NotPrimeOrder { size: usize },
}

/// How `pr` and `pr_distribution` count pairs: `Oracle` loops over all pairs
/// literally; `Accelerated` sums fiber sizes from the cached tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrMode {
    Oracle,
    Accelerated,
}

/// `|{(x, y) in xs x ys : [x, y] = r}|` by literal pair loop.
pub fn count_pairs(ring: &Ring, xs: &MemberSet, ys: &MemberSet, r: usize) -> u64 {
    let mut count = 0;
    for x in xs.iter() {
        for y in ys.iter() {
            if ring.commutator_idx(x, y) == r {
                count += 1;
            }
        }
    }
    count
}

/// Pair counts for every target at once, one pass over `xs x ys`.
pub fn brute_histogram(ring: &Ring, xs: &MemberSet, ys: &MemberSet) -> Vec<u64> {
    let mut hist = vec![0u64; ring.size()];
    for x in xs.iter() {
        for y in ys.iter() {
            hist[ring.commutator_idx(x, y)] += 1;
        }
    }
    hist
}

/// Definitional count over `S x R`, the oracle route.
pub fn pr_brute(sub: &Subring, r: usize) -> Rational {
    let ring = sub.ring();
    let count = count_pairs(ring, sub.members(), ring.full_set(), r);
    Rational::new(count, (sub.count() * ring.size()) as u64)
}

/// Mode-selectable probability; `Oracle` is `pr_brute`, `Accelerated` counts
/// each `x` by its fiber size `|T_{x,r}| = |C_R(x)|` when `r` lies in
/// `[x, R]`.
pub fn pr(sub: &Subring, r: usize, mode: PrMode) -> Rational {
    match mode {
        PrMode::Oracle => pr_brute(sub, r),
        PrMode::Accelerated => pr_centralizer_formula(sub, r),
    }
}

/// Centralizer-weighted route:
/// `Pr_r(S, R) = (1 / |S||R|) * sum over x in S with r in [x, R] of |C_R(x)|`.
pub fn pr_centralizer_formula(sub: &Subring, r: usize) -> Rational {
    let ring = sub.ring();
    let tables = ring.tables();
    let mut sum = 0u64;
    for x in sub.iter() {
        if tables.image(x).contains(r) {
            sum += tables.centralizer_size(x) as u64;
        }
    }
    Rational::new(sum, (sub.count() * ring.size()) as u64)
}

/// Image-reciprocal route:
/// `Pr_r(S, R) = (1 / |S|) * sum over x in S with r in [x, R] of 1 / |[x, R]|`.
pub fn pr_image_formula(sub: &Subring, r: usize) -> Rational {
    let ring = sub.ring();
    let tables = ring.tables();
    let mut sum = Rational::zero();
    for x in sub.iter() {
        if tables.image(x).contains(r) {
            sum = sum + Rational::new(1, tables.image_size(x) as u64);
        }
    }
    Rational::new(1, sub.count() as u64) * sum
}

/// Coset-sum route over `S / Z(S, R)`: each coset contributes through any
/// representative, since centralizers and images are constant on cosets.
pub fn pr_quotient_formula(sub: &Subring, r: usize) -> Rational {
    let ring = sub.ring();
    let tables = ring.tables();
    let z = relative_center(sub);
    let mut visited = MemberSet::new(ring.size());
    let mut sum = Rational::zero();
    for x in sub.iter() {
        if visited.contains(x) {
            continue;
        }
        for zc in z.iter() {
            visited.insert(ring.add_idx(x, zc));
        }
        if tables.image(x).contains(r) {
            sum = sum + Rational::new(1, tables.image_size(x) as u64);
        }
    }
    Rational::new(z.count() as u64, sub.count() as u64) * sum
}

/// Probability distribution of `[x, y]` over uniform `(x, y) in S x R`.
/// Entries carry exactly the targets with nonzero probability, in index
/// order, and sum to 1.
pub struct Distribution {
    entries: Vec<(Element, Rational)>,
}

impl Distribution {
    pub fn entries(&self) -> &[(Element, Rational)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(e, _)| e.index)
    }

    pub fn get(&self, r: usize) -> Rational {
        self.entries
            .iter()
            .find(|(e, _)| e.index == r)
            .map(|&(_, p)| p)
            .unwrap_or_else(Rational::zero)
    }
}

pub fn pr_distribution(sub: &Subring, mode: PrMode) -> Distribution {
    let ring = sub.ring();
    let total = (sub.count() * ring.size()) as u64;
    let hist: Vec<u64> = match mode {
        PrMode::Oracle => brute_histogram(ring, sub.members(), ring.full_set()),
        PrMode::Accelerated => {
            let tables = ring.tables();
            let mut hist = vec![0u64; ring.size()];
            for x in sub.iter() {
                let weight = tables.centralizer_size(x) as u64;
                for r in tables.image(x).iter() {
                    hist[r] += weight;
                }
            }
            hist
        }
    };
    let entries: Vec<(Element, Rational)> = hist
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(r, &c)| (ring.element(r), Rational::new(c, total)))
        .collect();
    let sum: Rational = entries.iter().map(|&(_, p)| p).sum();
    assert_eq!(sum, Rational::one(), "probabilities must sum to 1");
    Distribution { entries }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Closed form available when `[S, R]` has prime order `p`:
/// at `r = 0` the value is `(1/p)(1 + (p - 1) / |S : Z(S, R)|)`, at nonzero
/// `r` in `[S, R]` it is `(1/p)(1 - 1 / |S : Z(S, R)|)`, and targets outside
/// `[S, R]` have probability zero.
pub fn pr_prime_case(sub: &Subring, r: usize) -> Result<Rational, ProbError> {
    let csub = commutator_subgroup(sub);
    let p = csub.count();
    if !is_prime(p) {
        return Err(ProbError::NotPrimeOrder { size: p });
    }
    if !csub.contains(r) {
        return Ok(Rational::zero());
    }
    let z = relative_center(sub);
    let index = (sub.count() / z.count()) as u64;
    let p = p as u64;
    let inv_p = Rational::new(1, p);
    Ok(if r == 0 {
        inv_p * (Rational::one() + Rational::new(p - 1, index))
    } else {
        inv_p * (Rational::one() - Rational::new(1, index))
    })
}
