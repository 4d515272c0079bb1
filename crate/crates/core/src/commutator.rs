//! Additive commutator structure: centralizers, commutator images and sets,
//! additive subgroups and quotient groups.
//!
//! Throughout, `[x, y] = xy - yx`, and for a subring `S` of `R`:
//! `C_T(x)` is the set of elements of `T` commuting with `x`; `[x, R]` is the
//! image `{[x, y] : y in R}` (always an additive subgroup); `K(S, R)` is the
//! raw set of commutators `{[x, y] : x in S, y in R}`, which need not be
//! additively closed; `[S, R]` is its additive closure; `Z(S, R)` is the set
//! of elements of `S` commuting with all of `R`; and `T_{x,r}` is the fiber
//! `{y in R : [x, y] = r}`, empty or a coset of `C_R(x)`.

use std::fmt;

use thiserror::Error;

use crate::bitset::MemberSet;
use crate::ring::{Ring, RingRef};
use crate::subring::Subring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("set is not an additive subgroup")]
    NotASubgroup,
}

/// An additive subgroup of the parent ring's additive group.
#[derive(Clone)]
pub struct AdditiveSubgroup {
    ring: RingRef,
    members: MemberSet,
    count: usize,
}

impl fmt::Debug for AdditiveSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveSubgroup")
            .field("ring", &self.ring.name())
            .field("count", &self.count)
            .finish()
    }
}

impl AdditiveSubgroup {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn members(&self) -> &MemberSet {
        &self.members
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn from_set(ring: &RingRef, members: MemberSet) -> Result<Self, StructureError> {
        if !is_additive_subgroup(ring, &members) {
            return Err(StructureError::NotASubgroup);
        }
        let count = members.count();
        Ok(AdditiveSubgroup {
            ring: ring.clone(),
            members,
            count,
        })
    }

    /// Smallest additive subgroup containing the seed set.
    pub fn additive_closure(ring: &RingRef, seed: &MemberSet) -> Self {
        let mut members = MemberSet::new(ring.size());
        let mut list = vec![0usize];
        members.insert(0);
        for g in seed.iter() {
            if members.insert(g) {
                list.push(g);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            let neg = ring.neg_idx(a);
            if members.insert(neg) {
                list.push(neg);
            }
            let mut j = 0;
            while j <= i {
                let s = ring.add_idx(a, list[j]);
                if members.insert(s) {
                    list.push(s);
                }
                j += 1;
            }
            i += 1;
        }
        let count = list.len();
        AdditiveSubgroup {
            ring: ring.clone(),
            members,
            count,
        }
    }
}

pub fn is_additive_subgroup(ring: &Ring, members: &MemberSet) -> bool {
    if !members.contains(0) {
        return false;
    }
    let list: Vec<usize> = members.iter().collect();
    for &a in &list {
        if !members.contains(ring.neg_idx(a)) {
            return false;
        }
        for &b in &list {
            if !members.contains(ring.add_idx(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Per-element centralizer and commutator-image tables for a whole ring,
/// built in one pass over all ordered pairs.
pub struct CommutatorTables {
    cent: Vec<MemberSet>,
    img: Vec<MemberSet>,
    cent_size: Vec<u32>,
    img_size: Vec<u32>,
}

impl CommutatorTables {
    pub fn build(ring: &Ring) -> Self {
        let n = ring.size();
        let mut cent = Vec::with_capacity(n);
        let mut img = Vec::with_capacity(n);
        let mut cent_size = Vec::with_capacity(n);
        let mut img_size = Vec::with_capacity(n);
        for x in 0..n {
            let mut c = MemberSet::new(n);
            let mut im = MemberSet::new(n);
            for y in 0..n {
                let xy = ring.mul_idx(x, y);
                let yx = ring.mul_idx(y, x);
                if xy == yx {
                    c.insert(y);
                }
                im.insert(ring.sub_idx(xy, yx));
            }
            cent_size.push(c.count() as u32);
            img_size.push(im.count() as u32);
            cent.push(c);
            img.push(im);
        }
        CommutatorTables {
            cent,
            img,
            cent_size,
            img_size,
        }
    }

    /// `C_R(x)` as a set.
    pub fn centralizer(&self, x: usize) -> &MemberSet {
        &self.cent[x]
    }

    /// `[x, R]` as a set.
    pub fn image(&self, x: usize) -> &MemberSet {
        &self.img[x]
    }

    pub fn centralizer_size(&self, x: usize) -> usize {
        self.cent_size[x] as usize
    }

    pub fn image_size(&self, x: usize) -> usize {
        self.img_size[x] as usize
    }
}

/// `{y in within : xy = yx}`, by direct scan.
pub fn centralizer(ring: &Ring, within: &MemberSet, x: usize) -> MemberSet {
    let mut out = MemberSet::new(ring.size());
    for y in within.iter() {
        if ring.mul_idx(x, y) == ring.mul_idx(y, x) {
            out.insert(y);
        }
    }
    out
}

/// `Z(S, R)`: the elements of `S` commuting with every element of `R`.
/// Always a subring of `S`.
pub fn relative_center(sub: &Subring) -> Subring {
    let ring = sub.ring();
    let tables = ring.tables();
    let n = ring.size();
    let members = MemberSet::from_indices(
        n,
        sub.iter().filter(|&x| tables.centralizer_size(x) == n),
    );
    Subring::from_set(ring, members).expect("relative center is a subring")
}

/// `[x, R] = {[x, y] : y in R}`, validated as an additive subgroup.
///
/// The image of a fixed element is always a subgroup, so the error signals a
/// core arithmetic bug rather than bad input.
pub fn commutator_image(ring: &RingRef, x: usize) -> Result<AdditiveSubgroup, StructureError> {
    let mut members = MemberSet::new(ring.size());
    for y in 0..ring.size() {
        members.insert(ring.commutator_idx(x, y));
    }
    AdditiveSubgroup::from_set(ring, members)
}

/// `K(S, R) = {[x, y] : x in S, y in R}` as a raw set; not closed under
/// addition in general.
pub fn commutator_set(sub: &Subring) -> MemberSet {
    let ring = sub.ring();
    let mut out = MemberSet::new(ring.size());
    for x in sub.iter() {
        for y in 0..ring.size() {
            out.insert(ring.commutator_idx(x, y));
        }
    }
    out
}

/// `[S, R]`: the additive closure of `K(S, R)`.
pub fn commutator_subgroup(sub: &Subring) -> AdditiveSubgroup {
    let k = commutator_set(sub);
    AdditiveSubgroup::additive_closure(sub.ring(), &k)
}

/// `T_{x,r} = {y in R : [x, y] = r}`, by direct scan.
pub fn t_set(ring: &Ring, x: usize, r: usize) -> MemberSet {
    let mut out = MemberSet::new(ring.size());
    for y in 0..ring.size() {
        if ring.commutator_idx(x, y) == r {
            out.insert(y);
        }
    }
    out
}

/// Additive quotient `R / N` for an additive subgroup `N`. Cosets are listed
/// in order of their minimal element, which serves as the representative.
#[derive(Clone)]
pub struct QuotientGroup {
    ring: RingRef,
    subgroup: AdditiveSubgroup,
    cosets: Vec<MemberSet>,
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientGroup")
            .field("ring", &self.ring.name())
            .field("subgroup_size", &self.subgroup.count())
            .field("num_cosets", &self.cosets.len())
            .finish()
    }
}

pub fn quotient_group(subgroup: AdditiveSubgroup) -> QuotientGroup {
    let ring = subgroup.ring().clone();
    let n = ring.size();
    let mut coset_of = vec![u32::MAX; n];
    let mut cosets = Vec::new();
    let mut reps = Vec::new();
    for start in 0..n {
        if coset_of[start] != u32::MAX {
            continue;
        }
        let id = cosets.len() as u32;
        let mut coset = MemberSet::new(n);
        for z in subgroup.iter() {
            let e = ring.add_idx(start, z);
            coset.insert(e);
            coset_of[e] = id;
        }
        debug_assert_eq!(coset.count(), subgroup.count());
        cosets.push(coset);
        reps.push(start);
    }
    debug_assert_eq!(cosets.len() * subgroup.count(), n);
    QuotientGroup {
        ring,
        subgroup,
        cosets,
        reps,
        coset_of,
    }
}

impl QuotientGroup {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn subgroup(&self) -> &AdditiveSubgroup {
        &self.subgroup
    }

    pub fn num_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset(&self, i: usize) -> &MemberSet {
        &self.cosets[i]
    }

    /// Minimal element of coset `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.reps[i]
    }

    pub fn coset_index(&self, element: usize) -> usize {
        self.coset_of[element] as usize
    }

    /// Coset addition, well defined by subgroup closure.
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.coset_index(self.ring.add_idx(self.reps[i], self.reps[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, matrix_ring, ring_zn, upper_triangular_ring};

    fn t2() -> RingRef {
        upper_triangular_ring(2, 2)
    }

    fn m2() -> RingRef {
        matrix_ring(2, 2)
    }

    // T2_Z2 coefficients are (a, b, c) for a E11 + b E12 + c E22 with
    // index a + 2b + 4c.
    const T_E12: usize = 2;
    const T_I: usize = 5;

    #[test]
    fn centralizer_of_zero_is_everything() {
        let r = t2();
        let c = centralizer(&r, r.full_set(), 0);
        assert_eq!(c.count(), 8);
    }

    #[test]
    fn centralizer_of_e12_in_m2() {
        let m = m2();
        let e12 = m.generator(1).index;
        let e11 = m.generator(0).index;
        let e22 = m.generator(3).index;
        let i = m.add_idx(e11, e22);
        let c = centralizer(&m, m.full_set(), e12);
        let expected = MemberSet::from_indices(16, [0, i, e12, m.add_idx(i, e12)]);
        assert_eq!(c, expected);
    }

    #[test]
    fn tables_agree_with_direct_scans() {
        for ring in [t2(), m2(), ring_zn(6)] {
            let tables = ring.tables();
            for x in 0..ring.size() {
                assert_eq!(*tables.centralizer(x), centralizer(&ring, ring.full_set(), x));
                let img = commutator_image(&ring, x).unwrap();
                assert_eq!(tables.image(x), img.members());
                assert_eq!(tables.image_size(x), img.count());
            }
        }
    }

    #[test]
    fn relative_center_of_t2_is_scalars() {
        let r = t2();
        let z = relative_center(&Subring::full(&r));
        assert_eq!(z.count(), 2);
        assert!(z.contains(0));
        assert!(z.contains(T_I));
    }

    #[test]
    fn relative_center_of_m2_is_scalars() {
        let m = m2();
        let z = relative_center(&Subring::full(&m));
        let i = m.add_idx(m.generator(0).index, m.generator(3).index);
        assert_eq!(z.count(), 2);
        assert!(z.contains(i));
    }

    #[test]
    fn relative_center_of_commutative_ring_is_everything() {
        let r = ring_zn(9);
        assert_eq!(relative_center(&Subring::full(&r)).count(), 9);
    }

    #[test]
    fn image_of_central_element_is_zero() {
        let r = t2();
        let img = commutator_image(&r, T_I).unwrap();
        assert_eq!(img.count(), 1);
    }

    #[test]
    fn image_of_e12_in_t2() {
        // [E12, a E11 + b E12 + c E22] = (c - a) E12, so the image is the
        // additive span of E12.
        let r = t2();
        let img = commutator_image(&r, T_E12).unwrap();
        assert_eq!(img.members(), &MemberSet::from_indices(8, [0, T_E12]));
    }

    #[test]
    fn image_of_e12_in_m2_has_four_elements() {
        let m = m2();
        let img = commutator_image(&m, m.generator(1).index).unwrap();
        assert_eq!(img.count(), 4);
        // |[x, R]| * |C_R(x)| = |R|.
        assert_eq!(img.count() * m.tables().centralizer_size(m.generator(1).index), 16);
    }

    #[test]
    fn commutator_set_of_t2() {
        let r = t2();
        let k = commutator_set(&Subring::full(&r));
        assert_eq!(k, MemberSet::from_indices(8, [0, T_E12]));
    }

    #[test]
    fn commutator_set_of_zero_subring() {
        let r = t2();
        let k = commutator_set(&Subring::zero(&r));
        assert_eq!(k, MemberSet::from_indices(8, [0]));
    }

    /// Oracle: elements reachable as sums of set members. Commutator sets are
    /// symmetric under negation ([y,x] = -[x,y]), so sums alone span the
    /// generated subgroup.
    fn sum_span(ring: &Ring, seed: &MemberSet) -> MemberSet {
        let mut reach = MemberSet::from_indices(ring.size(), [0]);
        loop {
            let mut grew = false;
            let current: Vec<usize> = reach.iter().collect();
            for &a in &current {
                for g in seed.iter() {
                    if reach.insert(ring.add_idx(a, g)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return reach;
            }
        }
    }

    #[test]
    fn commutator_subgroup_is_smallest_closure() {
        for ring in [t2(), m2(), direct_product(&t2(), &ring_zn(3))] {
            let full = Subring::full(&ring);
            let k = commutator_set(&full);
            let sub = commutator_subgroup(&full);
            assert!(k.is_subset(sub.members()));
            assert_eq!(sub.members(), &sum_span(&ring, &k));
        }
    }

    #[test]
    fn commutator_subgroup_of_m2_is_trace_zero() {
        // Commutators have trace zero; over Z_2 the trace-zero matrices are
        // the 8 with equal diagonal entries, and all are reachable.
        let m = m2();
        let sub = commutator_subgroup(&Subring::full(&m));
        assert_eq!(sub.count(), 8);
        for x in sub.iter() {
            let c = m.decode(x);
            assert_eq!((c[0] + c[3]) % 2, 0);
        }
    }

    #[test]
    fn t_set_examples() {
        let r = t2();
        // x = E11, r = E12: fiber is everything with upper-right entry 1.
        let e11 = r.generator(0).index;
        let t = t_set(&r, e11, T_E12);
        assert_eq!(t, MemberSet::from_indices(8, [2, 3, 6, 7]));
        assert_eq!(t.count(), r.tables().centralizer_size(e11));
        // r = 0 gives the centralizer itself.
        assert_eq!(t_set(&r, e11, 0), *r.tables().centralizer(e11));
        // Central x cannot reach a nonzero commutator.
        assert!(t_set(&r, T_I, T_E12).is_empty());
    }

    #[test]
    fn additive_closure_and_validation() {
        let r = ring_zn(12);
        let seed = MemberSet::from_indices(12, [4]);
        let sub = AdditiveSubgroup::additive_closure(&r, &seed);
        assert_eq!(sub.count(), 3);
        assert!(AdditiveSubgroup::from_set(&r, sub.members().clone()).is_ok());
        let bad = MemberSet::from_indices(12, [0, 4]);
        assert_eq!(
            AdditiveSubgroup::from_set(&r, bad).unwrap_err(),
            StructureError::NotASubgroup
        );
    }

    #[test]
    fn quotient_of_t2_by_center() {
        let r = t2();
        let z = relative_center(&Subring::full(&r));
        let n = AdditiveSubgroup::from_set(&r, z.members().clone()).unwrap();
        let q = quotient_group(n);
        assert_eq!(q.num_cosets(), 4);
        for i in 0..4 {
            assert_eq!(q.coset(i).count(), 2);
            // Representative is the minimal member of its coset.
            assert_eq!(q.coset(i).iter().next().unwrap(), q.rep(i));
        }
        // Coset addition is the image of element addition.
        for i in 0..4 {
            for j in 0..4 {
                let s = r.add_idx(q.rep(i), q.rep(j));
                assert_eq!(q.add(i, j), q.coset_index(s));
            }
        }
    }

    #[test]
    fn quotient_extremes() {
        let r = ring_zn(6);
        let whole = AdditiveSubgroup::from_set(&r, r.full_set().clone()).unwrap();
        assert_eq!(quotient_group(whole).num_cosets(), 1);
        let trivial = AdditiveSubgroup::from_set(&r, MemberSet::from_indices(6, [0])).unwrap();
        let q = quotient_group(trivial);
        assert_eq!(q.num_cosets(), 6);
        assert_eq!(q.rep(3), 3);
    }
}
