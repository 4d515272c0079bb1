//! Finite rings presented by structure constants.
//!
//! A ring is an additive group `Z_{n_1} + ... + Z_{n_k}` together with a
//! `k x k` table of coefficient vectors giving the products of the additive
//! generators; multiplication of arbitrary elements is the bilinear extension.
//! Rings are not assumed unital or commutative.
//!
//! Construction validates three things and refuses the table otherwise:
//! coefficients lie below their moduli, the bilinear extension is well defined
//! on residues (`n_l` divides `n_i * c_l(i,j)` and `n_j * c_l(i,j)`), and
//! multiplication is associative. Associativity is checked on generator
//! triples only, which suffices because both association orders are trilinear
//! in the inputs.
//!
//! Elements are indexed `0..size` in mixed-radix order with coordinate 1 as
//! the least significant digit; index 0 is the zero element. A dense
//! multiplication table is materialized for rings up to
//! [`DEFAULT_TABLE_THRESHOLD`] elements.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::bitset::MemberSet;
use crate::commutator::CommutatorTables;

/// Largest ring size for which the dense multiplication table is built.
pub const DEFAULT_TABLE_THRESHOLD: usize = 4096;

/// Hard cap on ring size; keeps index arithmetic and enumeration sane.
pub const MAX_RING_SIZE: usize = 1 << 24;

pub type RingRef = Arc<Ring>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("orders must be a non-empty list of positive integers")]
    InvalidOrders,
    #[error("structure constant table must have k*k entries of k coefficients each")]
    BadTableShape,
    #[error("ring size {size} exceeds the supported maximum {max}")]
    TooLarge { size: usize, max: usize },
    #[error(
        "structure constant c_{l}({i},{j}) = {coeff} is outside 0..{modulus} (1-based positions)"
    )]
    CoefficientOutOfRange {
        i: usize,
        j: usize,
        l: usize,
        coeff: u32,
        modulus: u32,
    },
    #[error("product of generators {i} and {j} is not well defined modulo order of generator {l} (1-based positions)")]
    NotWellDefined { i: usize, j: usize, l: usize },
    #[error("multiplication is not associative on generator triple ({i},{j},{l}) (1-based)")]
    NotAssociative { i: usize, j: usize, l: usize },
    #[error("element {detail}")]
    BadElement { detail: String },
    #[error("set is not a subring (not additively and multiplicatively closed)")]
    NotASubring,
    #[error("ring size {size} exceeds the subring enumeration bound {bound}")]
    EnumerationBoundExceeded { size: usize, bound: usize },
}

/// Presentation of a ring: generator orders plus the generator product table.
///
/// `constants` is row-major with `k*k` entries; entry `i*k + j` is the
/// coefficient vector of the product of generators `i` and `j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub name: String,
    pub orders: Vec<u32>,
    pub constants: Vec<Vec<u32>>,
}

impl RingSpec {
    pub fn k(&self) -> usize {
        self.orders.len()
    }

    pub fn product_coeffs(&self, i: usize, j: usize) -> &[u32] {
        &self.constants[i * self.k() + j]
    }
}

/// Ring element: coefficient vector plus its mixed-radix index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coeffs: Vec<u32>,
    pub index: usize,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// A validated finite ring. Immutable after construction and safe to share.
pub struct Ring {
    spec: RingSpec,
    size: usize,
    weights: Vec<usize>,
    mul_table: Option<Vec<u32>>,
    full: MemberSet,
    tables: OnceLock<CommutatorTables>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("name", &self.spec.name)
            .field("orders", &self.spec.orders)
            .field("size", &self.size)
            .finish()
    }
}

pub fn build_ring(spec: RingSpec) -> Result<RingRef, RingError> {
    build_ring_with_threshold(spec, DEFAULT_TABLE_THRESHOLD)
}

pub fn build_ring_with_threshold(
    spec: RingSpec,
    table_threshold: usize,
) -> Result<RingRef, RingError> {
    let k = spec.orders.len();
    if k == 0 || spec.orders.iter().any(|&n| n == 0) {
        return Err(RingError::InvalidOrders);
    }
    if spec.constants.len() != k * k || spec.constants.iter().any(|c| c.len() != k) {
        return Err(RingError::BadTableShape);
    }

    let mut size = 1usize;
    let mut weights = Vec::with_capacity(k);
    for &n in &spec.orders {
        weights.push(size);
        size = size
            .checked_mul(n as usize)
            .filter(|&s| s <= MAX_RING_SIZE)
            .ok_or(RingError::TooLarge {
                size: usize::MAX,
                max: MAX_RING_SIZE,
            })?;
    }

    for i in 0..k {
        for j in 0..k {
            let c = spec.product_coeffs(i, j);
            for l in 0..k {
                let (ni, nj, nl) = (
                    spec.orders[i] as u64,
                    spec.orders[j] as u64,
                    spec.orders[l] as u64,
                );
                if c[l] as u64 >= nl {
                    return Err(RingError::CoefficientOutOfRange {
                        i: i + 1,
                        j: j + 1,
                        l: l + 1,
                        coeff: c[l],
                        modulus: spec.orders[l],
                    });
                }
                // Well-definedness of the bilinear extension on residues.
                if (ni * c[l] as u64) % nl != 0 || (nj * c[l] as u64) % nl != 0 {
                    return Err(RingError::NotWellDefined {
                        i: i + 1,
                        j: j + 1,
                        l: l + 1,
                    });
                }
            }
        }
    }

    let ring = Ring {
        size,
        weights,
        mul_table: None,
        full: MemberSet::full(size),
        tables: OnceLock::new(),
        spec,
    };

    // Associativity on generator triples; trilinearity extends it to all
    // elements.
    let k = ring.k();
    let mut left = vec![0u32; k];
    let mut right = vec![0u32; k];
    for i in 0..k {
        for j in 0..k {
            let ij = ring.spec.product_coeffs(i, j).to_vec();
            for l in 0..k {
                let jl = ring.spec.product_coeffs(j, l).to_vec();
                let el = unit_coeffs(&ring.spec, l);
                let ei = unit_coeffs(&ring.spec, i);
                ring.mul_coeffs(&ij, &el, &mut left);
                ring.mul_coeffs(&ei, &jl, &mut right);
                if left != right {
                    return Err(RingError::NotAssociative {
                        i: i + 1,
                        j: j + 1,
                        l: l + 1,
                    });
                }
            }
        }
    }

    let mut ring = ring;
    if size <= table_threshold {
        ring.mul_table = Some(ring.build_mul_table());
    }
    Ok(Arc::new(ring))
}

fn unit_coeffs(spec: &RingSpec, i: usize) -> Vec<u32> {
    let mut c = vec![0u32; spec.k()];
    c[i] = 1 % spec.orders[i];
    c
}

impl Ring {
    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.spec.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self, l: usize) -> u32 {
        self.spec.orders[l]
    }

    pub fn has_mul_table(&self) -> bool {
        self.mul_table.is_some()
    }

    /// All element indices as a membership set.
    pub fn full_set(&self) -> &MemberSet {
        &self.full
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.k();
        (0..k).all(|i| (0..k).all(|j| self.spec.product_coeffs(i, j) == self.spec.product_coeffs(j, i)))
    }

    /// Commuting-probability tables (per-element centralizers and commutator
    /// images), built on first use.
    pub fn tables(&self) -> &CommutatorTables {
        self.tables.get_or_init(|| CommutatorTables::build(self))
    }

    pub fn decode(&self, index: usize) -> Vec<u32> {
        debug_assert!(index < self.size);
        let mut rem = index;
        self.spec
            .orders
            .iter()
            .map(|&n| {
                let d = (rem % n as usize) as u32;
                rem /= n as usize;
                d
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u32]) -> usize {
        debug_assert_eq!(coeffs.len(), self.k());
        coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| c as usize * w)
            .sum()
    }

    pub fn element(&self, index: usize) -> Element {
        Element {
            coeffs: self.decode(index),
            index,
        }
    }

    pub fn element_from_coeffs(&self, coeffs: &[u32]) -> Result<Element, RingError> {
        if coeffs.len() != self.k() {
            return Err(RingError::BadElement {
                detail: format!("has {} coefficients, ring has {}", coeffs.len(), self.k()),
            });
        }
        for (l, (&c, &n)) in coeffs.iter().zip(&self.spec.orders).enumerate() {
            if c >= n {
                return Err(RingError::BadElement {
                    detail: format!("coefficient {} at position {} is outside 0..{}", c, l + 1, n),
                });
            }
        }
        Ok(Element {
            coeffs: coeffs.to_vec(),
            index: self.encode(coeffs),
        })
    }

    pub fn zero(&self) -> Element {
        self.element(0)
    }

    /// Additive generator `i` as an element (zero when its order is 1).
    pub fn generator(&self, i: usize) -> Element {
        let c = unit_coeffs(&self.spec, i);
        let index = self.encode(&c);
        Element { coeffs: c, index }
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (a, b);
        let mut out = 0;
        for (l, &n) in self.spec.orders.iter().enumerate() {
            let n = n as usize;
            out += ((ra % n + rb % n) % n) * self.weights[l];
            ra /= n;
            rb /= n;
        }
        out
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        let mut ra = a;
        let mut out = 0;
        for (l, &n) in self.spec.orders.iter().enumerate() {
            let n = n as usize;
            out += ((n - ra % n) % n) * self.weights[l];
            ra /= n;
        }
        out
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (a, b);
        let mut out = 0;
        for (l, &n) in self.spec.orders.iter().enumerate() {
            let n = n as usize;
            out += ((ra % n + n - rb % n) % n) * self.weights[l];
            ra /= n;
            rb /= n;
        }
        out
    }

    /// Bilinear product of coefficient vectors, written into `out`.
    fn mul_coeffs(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let k = self.k();
        let mut acc = vec![0u64; k];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let m = ai as u64 * bj as u64;
                for (l, &c) in self.spec.product_coeffs(i, j).iter().enumerate() {
                    acc[l] += m * c as u64;
                }
            }
        }
        for l in 0..k {
            out[l] = (acc[l] % self.spec.orders[l] as u64) as u32;
        }
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        if let Some(table) = &self.mul_table {
            return table[a * self.size + b] as usize;
        }
        let (va, vb) = (self.decode(a), self.decode(b));
        let mut out = vec![0u32; self.k()];
        self.mul_coeffs(&va, &vb, &mut out);
        self.encode(&out)
    }

    pub fn commutator_idx(&self, a: usize, b: usize) -> usize {
        self.sub_idx(self.mul_idx(a, b), self.mul_idx(b, a))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.element(self.add_idx(a.index, b.index))
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.element(self.neg_idx(a.index))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.element(self.sub_idx(a.index, b.index))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.element(self.mul_idx(a.index, b.index))
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.element(self.commutator_idx(a.index, b.index))
    }

    fn build_mul_table(&self) -> Vec<u32> {
        let n = self.size;
        let decoded: Vec<Vec<u32>> = (0..n).map(|i| self.decode(i)).collect();
        let mut out = vec![0u32; self.k()];
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                self.mul_coeffs(&decoded[a], &decoded[b], &mut out);
                table[a * n + b] = self.encode(&out) as u32;
            }
        }
        table
    }
}

/// The ring of integers modulo `n` (`n = 1` gives the zero ring).
pub fn ring_zn(n: u32) -> RingRef {
    assert!(n >= 1);
    build_ring(RingSpec {
        name: format!("Z{}", n),
        orders: vec![n],
        constants: vec![vec![1 % n]],
    })
    .expect("Z_n table is valid")
}

fn basis_ring(name: String, n: u32, pairs: Vec<(usize, usize)>) -> RingRef {
    // Matrix-unit basis: E_pq * E_rs = E_ps when q = r, else 0. `pairs` lists
    // the (row, col) of each retained unit; it must be product-closed.
    let k = pairs.len();
    let pos = |p: usize, q: usize| pairs.iter().position(|&e| e == (p, q));
    let mut constants = Vec::with_capacity(k * k);
    for &(p1, q1) in &pairs {
        for &(p2, q2) in &pairs {
            let mut c = vec![0u32; k];
            if q1 == p2 {
                let l = pos(p1, q2).expect("basis closed under products");
                c[l] = 1 % n;
            }
            constants.push(c);
        }
    }
    build_ring(RingSpec {
        name,
        orders: vec![n; k],
        constants,
    })
    .expect("matrix-unit table is valid")
}

/// Full `d x d` matrices over `Z_n`. Generators are the matrix units `E_pq`
/// in row-major order.
pub fn matrix_ring(n: u32, d: usize) -> RingRef {
    assert!(n >= 2 && d >= 1);
    let pairs = (0..d).flat_map(|p| (0..d).map(move |q| (p, q))).collect();
    basis_ring(format!("M{}_Z{}", d, n), n, pairs)
}

/// Upper-triangular `d x d` matrices over `Z_n`.
pub fn upper_triangular_ring(n: u32, d: usize) -> RingRef {
    assert!(n >= 2 && d >= 2);
    let pairs = (0..d).flat_map(|p| (p..d).map(move |q| (p, q))).collect();
    basis_ring(format!("T{}_Z{}", d, n), n, pairs)
}

/// Strictly upper-triangular `d x d` matrices over `Z_n`.
pub fn strictly_upper_triangular_ring(n: u32, d: usize) -> RingRef {
    assert!(n >= 2 && d >= 2);
    let pairs = (0..d)
        .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
        .collect();
    basis_ring(format!("N{}_Z{}", d, n), n, pairs)
}

/// Direct product with componentwise operations. Element indices interleave
/// as `index_a + |A| * index_b`.
pub fn direct_product(a: &Ring, b: &Ring) -> RingRef {
    let (ka, kb) = (a.k(), b.k());
    let k = ka + kb;
    let mut orders = a.spec.orders.clone();
    orders.extend_from_slice(&b.spec.orders);
    let mut constants = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut c = vec![0u32; k];
            if i < ka && j < ka {
                c[..ka].copy_from_slice(a.spec.product_coeffs(i, j));
            } else if i >= ka && j >= ka {
                c[ka..].copy_from_slice(b.spec.product_coeffs(i - ka, j - ka));
            }
            constants.push(c);
        }
    }
    build_ring(RingSpec {
        name: format!("{}x{}", a.name(), b.name()),
        orders,
        constants,
    })
    .expect("product of valid tables is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_arithmetic_matches_modular_integers() {
        let r = ring_zn(6);
        assert_eq!(r.size(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(r.add_idx(a, b), (a + b) % 6);
                assert_eq!(r.mul_idx(a, b), (a * b) % 6);
            }
        }
        assert_eq!(r.neg_idx(2), 4);
        assert!(r.is_commutative());
    }

    #[test]
    fn zero_ring() {
        let r = ring_zn(1);
        assert_eq!(r.size(), 1);
        assert_eq!(r.mul_idx(0, 0), 0);
        assert_eq!(r.zero().to_string(), "[0]");
    }

    #[test]
    fn scaled_generator_table_is_valid() {
        // e*e = 2e over Z_4: the ring 2Z_8 in disguise.
        let r = build_ring(RingSpec {
            name: "2Z8".into(),
            orders: vec![4],
            constants: vec![vec![2]],
        })
        .unwrap();
        assert_eq!(r.mul_idx(1, 1), 2);
        assert_eq!(r.mul_idx(2, 3), (2 * 2 * 3) % 4);
    }

    #[test]
    fn coefficient_out_of_range_rejected() {
        let err = build_ring(RingSpec {
            name: "bad".into(),
            orders: vec![4],
            constants: vec![vec![4]],
        })
        .unwrap_err();
        assert!(matches!(err, RingError::CoefficientOutOfRange { coeff: 4, .. }));
    }

    #[test]
    fn ill_defined_mixed_orders_rejected() {
        // e1*e1 = e2 with |e1| = 2, |e2| = 4: (e1+e1)*e1 would be 2*e2 != 0.
        let err = build_ring(RingSpec {
            name: "bad".into(),
            orders: vec![2, 4],
            constants: vec![
                vec![0, 1],
                vec![0, 0],
                vec![0, 0],
                vec![0, 0],
            ],
        })
        .unwrap_err();
        assert_eq!(err, RingError::NotWellDefined { i: 1, j: 1, l: 2 });
    }

    // Brute-force search over all two-generator tables with orders [2,2].
    // Well-definedness is automatic there, so the search isolates tables that
    // fail associativity alone.
    fn two_generator_spec(bits: u32) -> RingSpec {
        let constants = (0..4)
            .map(|e| vec![(bits >> (2 * e)) & 1, (bits >> (2 * e + 1)) & 1])
            .collect();
        RingSpec {
            name: format!("t{}", bits),
            orders: vec![2, 2],
            constants,
        }
    }

    #[test]
    fn nonassociative_table_search_and_regression() {
        let failing: Vec<u32> = (0..256)
            .filter(|&bits| {
                matches!(
                    build_ring(two_generator_spec(bits)),
                    Err(RingError::NotAssociative { .. })
                )
            })
            .collect();
        assert!(!failing.is_empty(), "search found no non-associative table");

        // Pinned regression: e1*e1 = e2, e1*e2 = e1, e2*e1 = e2*e2 = 0.
        // Then (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e1.
        let pinned = RingSpec {
            name: "nonassoc".into(),
            orders: vec![2, 2],
            constants: vec![vec![0, 1], vec![1, 0], vec![0, 0], vec![0, 0]],
        };
        let err = build_ring(pinned).unwrap_err();
        assert_eq!(err, RingError::NotAssociative { i: 1, j: 1, l: 1 });
        let pinned_bits = 0b0000_0110;
        assert!(failing.contains(&pinned_bits));
    }

    #[test]
    fn matrix_units_multiply_by_index_contraction() {
        let r = matrix_ring(3, 2);
        assert_eq!(r.size(), 81);
        let e = |p: usize, q: usize| r.generator(p * 2 + q);
        let (e11, e12, e21, e22) = (e(0, 0), e(0, 1), e(1, 0), e(1, 1));
        assert_eq!(r.mul(&e12, &e21), e11);
        assert_eq!(r.mul(&e21, &e12), e22);
        assert_eq!(r.mul(&e12, &e12), r.zero());
        assert_eq!(r.mul(&e11, &e12), e12);
        assert!(!r.is_commutative());
        assert_eq!(r.commutator(&e12, &e21), r.sub(&e11, &e22));
    }

    #[test]
    fn triangular_rings_have_expected_sizes() {
        assert_eq!(upper_triangular_ring(2, 2).size(), 8);
        assert_eq!(upper_triangular_ring(3, 2).size(), 27);
        assert_eq!(strictly_upper_triangular_ring(2, 3).size(), 8);
    }

    #[test]
    fn strictly_upper_products() {
        let r = strictly_upper_triangular_ring(2, 3);
        // Generators E12, E13, E23 in lexicographic order.
        let (e12, e13, e23) = (r.generator(0), r.generator(1), r.generator(2));
        assert_eq!(r.mul(&e12, &e23), e13);
        assert_eq!(r.mul(&e23, &e12), r.zero());
        assert_eq!(r.mul(&e13, &e13), r.zero());
    }

    #[test]
    fn direct_product_is_componentwise() {
        let t = upper_triangular_ring(2, 2);
        let z3 = ring_zn(3);
        let p = direct_product(&t, &z3);
        assert_eq!(p.size(), 24);
        assert_eq!(p.name(), "T2_Z2xZ3");
        for ia in [0usize, 3, 7] {
            for ib in 0..3 {
                for ja in [1usize, 5] {
                    for jb in 0..3 {
                        let x = ia + 8 * ib;
                        let y = ja + 8 * jb;
                        let prod = p.mul_idx(x, y);
                        assert_eq!(prod % 8, t.mul_idx(ia, ja));
                        assert_eq!(prod / 8, z3.mul_idx(ib, jb));
                        let comm = p.commutator_idx(x, y);
                        assert_eq!(comm % 8, t.commutator_idx(ia, ja));
                        assert_eq!(comm / 8, z3.commutator_idx(ib, jb));
                    }
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let r = direct_product(&ring_zn(4), &ring_zn(6));
        for i in 0..r.size() {
            assert_eq!(r.encode(&r.decode(i)), i);
        }
    }

    #[test]
    fn element_from_coeffs_validates() {
        let r = ring_zn(4);
        assert!(r.element_from_coeffs(&[3]).is_ok());
        assert!(matches!(
            r.element_from_coeffs(&[4]),
            Err(RingError::BadElement { .. })
        ));
        assert!(matches!(
            r.element_from_coeffs(&[0, 0]),
            Err(RingError::BadElement { .. })
        ));
    }

    #[test]
    fn table_threshold_controls_materialization() {
        let spec = ring_zn(6).spec().clone();
        let with = build_ring_with_threshold(spec.clone(), 10).unwrap();
        let without = build_ring_with_threshold(spec, 5).unwrap();
        assert!(with.has_mul_table());
        assert!(!without.has_mul_table());
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(with.mul_idx(a, b), without.mul_idx(a, b));
            }
        }
    }
}
