//! Hand-written algebras shared by unit tests, kept independent of the
//! `families` constructors so those can be checked against them.

use crate::algebra::Algebra;
use crate::field::FieldSpec;
use crate::linalg::unit_vector;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Basis (e, f, z) with e·f = f·e = z.
pub fn heisenberg3(k: FieldSpec) -> Algebra {
    let mut a = Algebra::abelian(k, names(&["e", "f", "z"]));
    a.set_symmetric(0, 1, unit_vector(k, 3, 2));
    a
}

/// Basis (e1, e2, f1, f2, z) with e_i·f_i = z.
pub fn heisenberg5(k: FieldSpec) -> Algebra {
    let mut a = Algebra::abelian(k, names(&["e1", "e2", "f1", "f2", "z"]));
    a.set_symmetric(0, 2, unit_vector(k, 5, 4));
    a.set_symmetric(1, 3, unit_vector(k, 5, 4));
    a
}

/// Basis (e1, e2) with e1·e1 = e2.
pub fn a12(k: FieldSpec) -> Algebra {
    let mut a = Algebra::abelian(k, names(&["e1", "e2"]));
    a.set_product(0, 0, unit_vector(k, 2, 1));
    a
}

/// Nonunital k[x]/(x⁴) on (x, x2, x3).
pub fn truncated_poly(k: FieldSpec) -> Algebra {
    let mut a = Algebra::abelian(k, names(&["x", "x2", "x3"]));
    a.set_product(0, 0, unit_vector(k, 3, 1));
    a.set_symmetric(0, 1, unit_vector(k, 3, 2));
    a
}
