//! Builtin ring catalog: the fixed corpus every verification run covers.
//!
//! Twenty rings: the cyclic rings Z_1 through Z_12, full 2x2 matrix rings
//! over Z_2, Z_3, Z_4, upper-triangular 2x2 rings over Z_2 and Z_3, the
//! strictly-upper-triangular 3x3 ring over Z_2, and two direct products.
//! Each entry carries named designated subrings so that the larger rings,
//! whose subring lattices are never enumerated, still contribute interesting
//! (S, R) instances.

use crate::commutator::relative_center;
use crate::ring::{
    direct_product, matrix_ring, ring_zn, strictly_upper_triangular_ring, upper_triangular_ring,
    Element, RingRef,
};
use crate::subring::Subring;

#[derive(Clone)]
pub struct CatalogEntry {
    pub ring: RingRef,
    /// Named subrings, in a fixed order; names are unique per entry but two
    /// names may denote the same member set (the center of a matrix ring is
    /// its scalar subring).
    pub designated: Vec<(String, Subring)>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.ring.name()
    }

    pub fn designated_subring(&self, name: &str) -> Option<&Subring> {
        self.designated
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    /// The designated name of a member set, if any.
    pub fn label_for(&self, sub: &Subring) -> Option<&str> {
        self.designated
            .iter()
            .find(|(_, s)| s.members() == sub.members())
            .map(|(n, _)| n.as_str())
    }
}

fn entry(ring: RingRef, extra: &[(&str, &[usize])]) -> CatalogEntry {
    let full = Subring::full(&ring);
    let mut designated = vec![
        ("zero".to_string(), Subring::zero(&ring)),
        ("center".to_string(), relative_center(&full)),
    ];
    for &(name, gens) in extra {
        let elements: Vec<Element> = gens.iter().map(|&i| ring.generator(i)).collect();
        designated.push((name.to_string(), Subring::closure(&ring, &elements)));
    }
    designated.push(("full".to_string(), full));
    CatalogEntry { ring, designated }
}

fn scalar_subring(ring: &RingRef, unit_gens: &[usize]) -> Subring {
    let mut unit = ring.zero();
    for &g in unit_gens {
        unit = ring.add(&unit, &ring.generator(g));
    }
    Subring::closure(ring, &[unit])
}

/// All builtin rings with their designated subrings, in listing order.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for n in 1..=12 {
        entries.push(entry(ring_zn(n), &[]));
    }
    for n in [2u32, 3, 4] {
        let m = matrix_ring(n, 2);
        let mut e = entry(
            m.clone(),
            &[
                ("diag", &[0, 3][..]),
                ("upper", &[0, 1, 3][..]),
                ("strict", &[1][..]),
            ],
        );
        e.designated.insert(2, ("scalars".to_string(), scalar_subring(&m, &[0, 3])));
        entries.push(e);
    }
    for n in [2u32, 3] {
        let t = upper_triangular_ring(n, 2);
        let mut e = entry(t.clone(), &[("diag", &[0, 2][..]), ("strict", &[1][..])]);
        e.designated.insert(2, ("scalars".to_string(), scalar_subring(&t, &[0, 2])));
        entries.push(e);
    }
    entries.push(entry(strictly_upper_triangular_ring(2, 3), &[]));
    entries.push(entry(
        direct_product(&upper_triangular_ring(2, 2), &ring_zn(3)),
        &[],
    ));
    entries.push(entry(
        direct_product(&matrix_ring(2, 2), &ring_zn(2)),
        &[],
    ));
    entries
}

pub fn find_entry<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name() == name)
}

/// One line per ring: name, size, and the designated subring names.
pub fn catalog_listing(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let names: Vec<&str> = e.designated.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&format!(
            "{} size={} subrings={}\n",
            e.name(),
            e.ring.size(),
            names.join(",")
        ));
    }
    out
}
