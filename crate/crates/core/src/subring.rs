//! Subrings as membership sets over a parent ring.

use crate::bitset::MemberSet;
use crate::ring::{Element, Ring, RingError, RingRef};
use std::collections::HashSet;
use std::fmt;

/// Largest parent ring admitted to subring enumeration by default.
pub const DEFAULT_ENUM_BOUND: usize = 64;

/// Default cap on the number of subrings an enumeration may return.
pub const DEFAULT_SUBRING_CAP: usize = 4096;

/// A subring of a parent ring: a subset containing 0, closed under addition,
/// negation and multiplication. The additive order divides the parent order.
#[derive(Clone)]
pub struct Subring {
    ring: RingRef,
    members: MemberSet,
    count: usize,
}

impl fmt::Debug for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subring")
            .field("ring", &self.ring.name())
            .field("count", &self.count)
            .finish()
    }
}

impl PartialEq for Subring {
    fn eq(&self, other: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Subring {
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

    /// `|R : S|`, the additive index of the subring in its parent.
    pub fn additive_index(&self) -> usize {
        self.ring.size() / self.count
    }

    pub fn is_full(&self) -> bool {
        self.count == self.ring.size()
    }

    pub fn full(ring: &RingRef) -> Subring {
        Subring {
            ring: ring.clone(),
            members: ring.full_set().clone(),
            count: ring.size(),
        }
    }

    pub fn zero(ring: &RingRef) -> Subring {
        let mut members = MemberSet::new(ring.size());
        members.insert(0);
        Subring {
            ring: ring.clone(),
            members,
            count: 1,
        }
    }

    /// Validates closure and wraps the set.
    pub fn from_set(ring: &RingRef, members: MemberSet) -> Result<Subring, RingError> {
        if !is_subring(ring, &members) {
            return Err(RingError::NotASubring);
        }
        let count = members.count();
        debug_assert_eq!(ring.size() % count, 0, "additive order must divide");
        Ok(Subring {
            ring: ring.clone(),
            members,
            count,
        })
    }

    /// Smallest subring containing the generators (the zero subring for an
    /// empty list).
    pub fn closure(ring: &RingRef, generators: &[Element]) -> Subring {
        let indices: Vec<usize> = generators.iter().map(|g| g.index).collect();
        Subring::closure_indices(ring, &indices)
    }

    pub fn closure_indices(ring: &RingRef, generators: &[usize]) -> Subring {
        let mut members = MemberSet::new(ring.size());
        let mut list = vec![0usize];
        members.insert(0);
        for &g in generators {
            if members.insert(g) {
                list.push(g);
            }
        }
        // Work-list fixed point: every element appended is later combined
        // with the whole list, so all pairs get visited.
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            let neg = ring.neg_idx(a);
            if members.insert(neg) {
                list.push(neg);
            }
            let mut j = 0;
            while j <= i {
                let b = list[j];
                for c in [
                    ring.add_idx(a, b),
                    ring.mul_idx(a, b),
                    ring.mul_idx(b, a),
                ] {
                    if members.insert(c) {
                        list.push(c);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        let count = list.len();
        debug_assert_eq!(count, members.count());
        Subring {
            ring: ring.clone(),
            members,
            count,
        }
    }
}

/// Whether `members` contains 0 and is closed under addition, negation and
/// multiplication.
pub fn is_subring(ring: &Ring, members: &MemberSet) -> bool {
    if !members.contains(0) {
        return false;
    }
    let list: Vec<usize> = members.iter().collect();
    for &a in &list {
        if !members.contains(ring.neg_idx(a)) {
            return false;
        }
        for &b in &list {
            if !members.contains(ring.add_idx(a, b)) || !members.contains(ring.mul_idx(a, b)) {
                return false;
            }
        }
    }
    true
}

pub struct SubringEnumeration {
    /// All subrings in canonical order: size first, then member sets.
    pub subrings: Vec<Subring>,
    /// True when the cap was hit and the list is incomplete.
    pub truncated: bool,
}

pub fn enumerate_subrings(ring: &RingRef, cap: usize) -> Result<SubringEnumeration, RingError> {
    enumerate_subrings_bounded(ring, DEFAULT_ENUM_BOUND, cap)
}

/// Breadth-first closure search: starting from the zero subring, extend each
/// known subring by every outside element and close. Every subring is the
/// closure of a finite generator list, so adding one generator at a time
/// reaches all of them.
pub fn enumerate_subrings_bounded(
    ring: &RingRef,
    bound: usize,
    cap: usize,
) -> Result<SubringEnumeration, RingError> {
    if ring.size() > bound {
        return Err(RingError::EnumerationBoundExceeded {
            size: ring.size(),
            bound,
        });
    }
    let mut seen: HashSet<MemberSet> = HashSet::new();
    let mut queue: Vec<Subring> = Vec::new();
    let mut truncated = false;
    let zero = Subring::zero(ring);
    seen.insert(zero.members.clone());
    queue.push(zero);
    let mut qi = 0;
    'outer: while qi < queue.len() {
        let current = queue[qi].clone();
        qi += 1;
        for g in 0..ring.size() {
            if current.contains(g) {
                continue;
            }
            let mut gens: Vec<usize> = current.iter().collect();
            gens.push(g);
            let bigger = Subring::closure_indices(ring, &gens);
            if seen.insert(bigger.members.clone()) {
                if seen.len() > cap {
                    truncated = true;
                    break 'outer;
                }
                queue.push(bigger);
            }
        }
    }
    queue.sort_by(|a, b| (a.count, &a.members).cmp(&(b.count, &b.members)));
    Ok(SubringEnumeration {
        subrings: queue,
        truncated,
    })
}
