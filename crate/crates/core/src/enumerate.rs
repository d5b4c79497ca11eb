//! Exhaustive enumeration of small algebra structures over prime fields.

use crate::algebra::Algebra;
use crate::field::FieldSpec;
use crate::linalg::zero_vector;

fn upper_pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim).flat_map(|i| (i..dim).map(move |j| (i, j))).collect()
}

/// Number of commutative structures on `k^dim`, if it fits in a `u64`.
pub fn commutative_count(field: FieldSpec, dim: usize) -> Option<u64> {
    field.count_vectors(dim * dim * (dim + 1) / 2)
}

/// The commutative structure with index `idx` in base-p digit order over the
/// pairs `i ≤ j`, each pair contributing `dim` digits.
pub fn commutative_algebra_from_index(field: FieldSpec, dim: usize, idx: u64) -> Algebra {
    let pairs = upper_pairs(dim);
    let digits = field.vector_from_index(idx, pairs.len() * dim);
    let mut a = Algebra::with_default_names(field, dim);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        a.set_symmetric(i, j, digits[p * dim..(p + 1) * dim].to_vec());
    }
    a
}

/// Every commutative algebra structure on `k^dim`.
pub fn commutative_algebras(field: FieldSpec, dim: usize) -> impl Iterator<Item = Algebra> {
    let count = commutative_count(field, dim).expect("enumerable field and small dimension");
    (0..count).map(move |idx| commutative_algebra_from_index(field, dim, idx))
}

/// Every JJ structure on `k^dim`.
pub fn jj_algebras(field: FieldSpec, dim: usize) -> impl Iterator<Item = Algebra> {
    commutative_algebras(field, dim).filter(Algebra::is_jacobi_jordan)
}

/// JJ structures with `e_i·e_j ∈ span{e_k : k > max(i, j)}`.
///
/// Every nilpotent commutative algebra has a basis of this shape, so the list
/// meets every isomorphism class of nilpotent JJ algebras of this dimension.
pub fn triangular_jj_algebras(field: FieldSpec, dim: usize) -> Vec<Algebra> {
    let slots: Vec<(usize, usize, usize)> = upper_pairs(dim)
        .into_iter()
        .flat_map(|(i, j)| (j + 1..dim).map(move |k| (i, j, k)))
        .collect();
    let count = field
        .count_vectors(slots.len())
        .expect("enumerable field and small dimension");
    (0..count)
        .filter_map(|idx| {
            let digits = field.vector_from_index(idx, slots.len());
            let mut a = Algebra::with_default_names(field, dim);
            for (&(i, j, k), d) in slots.iter().zip(digits) {
                if d.is_zero() {
                    continue;
                }
                let mut v = a.product(i, j).to_vec();
                if v.is_empty() {
                    v = zero_vector(field, dim);
                }
                v[k] = d;
                a.set_symmetric(i, j, v);
            }
            a.is_jacobi_jordan().then_some(a)
        })
        .collect()
}
