//! Named families of JJ algebras.
//!
//! Basis orders:
//! - `abelian`: `b1 … bn`
//! - `heisenberg`: `e1 … en, f1 … fn, z` (`e, f, z` when `n = 1`)
//! - `v_f_v0`: `p, x1 … xm`
//! - `a_xyz`: `e1 … en, f1 … fn, y, z`
//! - `a12`: `e1, e2`
//! - `heis_abc`: `e1 … en, f1 … fn, z, y` (the co-flag build order)
//! - `a_theta`: `e1 … en, y`
//! - `j_t`, `kn_x_v0`: `f, e1 … en`

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{is_zero_vector, zero_vector, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Abelian { n: usize },
    Heisenberg { n: usize },
    /// `(p, x)·(q, y) = (0, pq v₀ + p f(y) + q f(x))` on `k × k^m`.
    VFV0 { f: Matrix, v0: Vec<Scalar> },
    /// `e_i e_j = x_ij y`, `f_i f_j = y_ij y`, `e_i f_j = δ_ij z + z_ij y`.
    AXyz { x: Matrix, y: Matrix, z: Matrix },
    A12,
    /// `e_i e_j = a_ij y`, `f_i f_j = b_ij y`, `e_i f_j = δ_ij z + c_ij y`.
    HeisAbc { a: Matrix, b: Matrix, c: Matrix },
    /// `(a, x)•(b, y) = (0, ϑ(a, b))` on `k^n × k`.
    ATheta { theta: Matrix },
    /// `e_1² = … = e_t² = f` on `n + 1` basis vectors.
    Jt { n: usize, t: usize },
    /// `f·f = Σ v_j e_j`, `f·e_i = Σ x_ji e_j`.
    KnXV0 { x: Matrix, v0: Vec<Scalar> },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Abelian { .. } => "abelian",
            FamilySpec::Heisenberg { .. } => "heisenberg",
            FamilySpec::VFV0 { .. } => "v_f_v0",
            FamilySpec::AXyz { .. } => "a_xyz",
            FamilySpec::A12 => "a12",
            FamilySpec::HeisAbc { .. } => "heis_abc",
            FamilySpec::ATheta { .. } => "a_theta",
            FamilySpec::Jt { .. } => "j_t",
            FamilySpec::KnXV0 { .. } => "kn_x_v0",
        }
    }
}

pub const FAMILY_NAMES: [&str; 9] = [
    "abelian",
    "heisenberg",
    "v_f_v0",
    "a_xyz",
    "a12",
    "heis_abc",
    "a_theta",
    "j_t",
    "kn_x_v0",
];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

fn check_matrix(m: &Matrix, field: FieldSpec, n: usize, what: &str, symmetric: bool) -> Result<()> {
    if m.field() != field {
        return Err(Error::FieldMismatch);
    }
    if m.rows() != n || m.cols() != n {
        return Err(bad(format!("{what} must be {n}x{n}")));
    }
    if symmetric && !m.is_symmetric() {
        return Err(bad(format!("{what} is not symmetric")));
    }
    Ok(())
}

fn check_vector(v: &[Scalar], field: FieldSpec, n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(bad(format!("{what} must have length {n}")));
    }
    if v.iter().any(|c| c.field() != field) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn heisenberg_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["e".into(), "f".into()]
    } else {
        let mut v = names("e", n);
        v.extend(names("f", n));
        v
    }
}

/// `e_i e_j = x_ij w`, `f_i f_j = y_ij w`, `e_i f_j = δ_ij z + c_ij w` on a
/// basis whose first `2n` vectors are the `e`s and `f`s.
fn heisenberg_extension(field: FieldSpec, n: usize, x: &Matrix, y: &Matrix, c: &Matrix, tail: [&str; 2], z_first: bool) -> Algebra {
    let mut all = heisenberg_names(n);
    all.extend(tail.iter().map(|s| s.to_string()));
    let dim = 2 * n + 2;
    let (zi, wi) = if z_first { (2 * n, 2 * n + 1) } else { (2 * n + 1, 2 * n) };
    let mut a = Algebra::abelian(field, all);
    let w_times = |s: &Scalar| {
        let mut v = zero_vector(field, dim);
        v[wi] = s.clone();
        v
    };
    for i in 0..n {
        for j in 0..n {
            a.set_product(i, j, w_times(x.get(i, j)));
            a.set_product(n + i, n + j, w_times(y.get(i, j)));
            let mut v = w_times(c.get(i, j));
            if i == j {
                v[zi] += &field.one();
            }
            a.set_product(i, n + j, v.clone());
            a.set_product(n + j, i, v);
        }
    }
    a
}

pub fn make(spec: &FamilySpec, field: FieldSpec) -> Result<Algebra> {
    let k = field;
    match spec {
        FamilySpec::Abelian { n } => Ok(Algebra::with_default_names(k, *n)),
        FamilySpec::Heisenberg { n } => {
            if *n == 0 {
                return Err(bad("n must be positive"));
            }
            let mut all = heisenberg_names(*n);
            all.push("z".into());
            let mut a = Algebra::abelian(k, all);
            let z = a.basis_vector(2 * n);
            for i in 0..*n {
                a.set_symmetric(i, n + i, z.clone());
            }
            Ok(a)
        }
        FamilySpec::VFV0 { f, v0 } => {
            let m = f.rows();
            check_matrix(f, k, m, "f", false)?;
            check_vector(v0, k, m, "v0")?;
            if !f.mul(f).is_zero() {
                return Err(bad("f^2 != 0"));
            }
            if !is_zero_vector(&f.mul_vec(v0)) {
                return Err(bad("v0 is not in Ker f"));
            }
            let mut all = vec!["p".to_string()];
            all.extend(names("x", m));
            let mut a = Algebra::abelian(k, all);
            let mut pp = vec![k.zero()];
            pp.extend(v0.iter().cloned());
            a.set_product(0, 0, pp);
            for j in 0..m {
                let mut v = vec![k.zero()];
                v.extend(f.column(j));
                a.set_symmetric(0, j + 1, v);
            }
            Ok(a)
        }
        FamilySpec::AXyz { x, y, z } => {
            let n = x.rows();
            if n == 0 {
                return Err(bad("n must be positive"));
            }
            check_matrix(x, k, n, "X", true)?;
            check_matrix(y, k, n, "Y", true)?;
            check_matrix(z, k, n, "Z", false)?;
            Ok(heisenberg_extension(k, n, x, y, z, ["y", "z"], false))
        }
        FamilySpec::A12 => {
            let mut a = Algebra::abelian(k, names("e", 2));
            a.set_product(0, 0, vec![k.zero(), k.one()]);
            Ok(a)
        }
        FamilySpec::HeisAbc { a, b, c } => {
            let n = a.rows();
            if n == 0 {
                return Err(bad("n must be positive"));
            }
            check_matrix(a, k, n, "A", true)?;
            check_matrix(b, k, n, "B", true)?;
            check_matrix(c, k, n, "C", false)?;
            Ok(heisenberg_extension(k, n, a, b, c, ["z", "y"], true))
        }
        FamilySpec::ATheta { theta } => {
            let n = theta.rows();
            check_matrix(theta, k, n, "theta", true)?;
            let mut all = names("e", n);
            all.push("y".into());
            let mut a = Algebra::abelian(k, all);
            for i in 0..n {
                for j in 0..n {
                    let mut v = zero_vector(k, n + 1);
                    v[n] = theta.get(i, j).clone();
                    a.set_product(i, j, v);
                }
            }
            Ok(a)
        }
        FamilySpec::Jt { n, t } => {
            if *t == 0 || t > n {
                return Err(bad("need 1 <= t <= n"));
            }
            let mut all = vec!["f".to_string()];
            all.extend(names("e", *n));
            let mut a = Algebra::abelian(k, all);
            let f = a.basis_vector(0);
            for i in 1..=*t {
                a.set_product(i, i, f.clone());
            }
            Ok(a)
        }
        FamilySpec::KnXV0 { x, v0 } => {
            let n = x.rows();
            check_matrix(x, k, n, "X", false)?;
            check_vector(v0, k, n, "v0")?;
            if !x.mul(x).is_zero() {
                return Err(bad("X^2 != 0"));
            }
            if !is_zero_vector(&x.mul_vec(v0)) {
                return Err(bad("X v0 != 0"));
            }
            let mut all = vec!["f".to_string()];
            all.extend(names("e", n));
            let mut a = Algebra::abelian(k, all);
            let mut ff = vec![k.zero()];
            ff.extend(v0.iter().cloned());
            a.set_product(0, 0, ff);
            for i in 0..n {
                let mut v = vec![k.zero()];
                v.extend(x.column(i));
                a.set_symmetric(0, i + 1, v);
            }
            Ok(a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::LambdaMap;
    use crate::coflag::{build_coflag_algebra, CoflagDatum};
    use crate::crossed::BilinearVMap;
    use proptest::prelude::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn sym(k: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(k, rows)
    }

    pub(crate) fn sample_specs(k: FieldSpec) -> Vec<FamilySpec> {
        let nil = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        vec![
            FamilySpec::Abelian { n: 3 },
            FamilySpec::Heisenberg { n: 1 },
            FamilySpec::Heisenberg { n: 2 },
            FamilySpec::VFV0 { f: nil.clone(), v0: vec![k.one(), k.zero()] },
            FamilySpec::VFV0 { f: Matrix::zeros(k, 2, 2), v0: vec![k.zero(), k.zero()] },
            FamilySpec::AXyz {
                x: sym(k, &[&[1, 2], &[2, 0]]),
                y: sym(k, &[&[0, 1], &[1, 3]]),
                z: sym(k, &[&[1, 0], &[4, 2]]),
            },
            FamilySpec::A12,
            FamilySpec::HeisAbc {
                a: sym(k, &[&[1]]),
                b: sym(k, &[&[1]]),
                c: sym(k, &[&[0]]),
            },
            FamilySpec::ATheta { theta: sym(k, &[&[1, 1], &[1, 0]]) },
            FamilySpec::Jt { n: 3, t: 2 },
            FamilySpec::KnXV0 { x: nil, v0: vec![k.one(), k.zero()] },
        ]
    }

    #[test]
    fn every_family_is_jj_over_q_and_f5() {
        for k in [FieldSpec::Rationals, f5()] {
            for s in sample_specs(k) {
                let a = make(&s, k).unwrap();
                assert!(a.is_commutative(), "{}", s.name());
                assert!(a.jacobi_defects().is_empty(), "{}", s.name());
            }
        }
    }

    #[test]
    fn heisenberg_examples() {
        let h = make(&FamilySpec::Heisenberg { n: 1 }, f5()).unwrap();
        assert_eq!(h.names(), ["e", "f", "z"]);
        assert_eq!(h.product(0, 1), &h.basis_vector(2)[..]);
        assert_eq!(h.product(0, 0), &h.zero_vector()[..]);
        for n in 1..=3 {
            let h = make(&FamilySpec::Heisenberg { n }, f5()).unwrap();
            assert_eq!(h.nilpotency_step(), Some(3));
            let c = h.leibniz_center();
            assert_eq!(c.dim(), 1);
            assert!(c.contains_vector(&h.basis_vector(2 * n)));
        }
    }

    #[test]
    fn j_t_example() {
        let q = FieldSpec::Rationals;
        let j = make(&FamilySpec::Jt { n: 3, t: 2 }, q).unwrap();
        let f = j.basis_vector(0);
        assert_eq!(j.product(1, 1), &f[..]);
        assert_eq!(j.product(2, 2), &f[..]);
        assert_eq!(j.product(3, 3), &j.zero_vector()[..]);
        assert_eq!(j.derived_algebra().dim(), 1);
        assert!(j.is_metabelian());
    }

    #[test]
    fn kn_x_v0_example() {
        let k = f3();
        let x = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        let a = make(&FamilySpec::KnXV0 { x, v0: vec![k.one(), k.zero()] }, k).unwrap();
        let e1 = a.basis_vector(1);
        assert_eq!(a.product(0, 0), &e1[..]);
        assert_eq!(a.product(0, 2), &e1[..]);
        assert_eq!(a.product(0, 1), &a.zero_vector()[..]);
        let d = a.derived_algebra();
        assert!(d.dim() < a.dim());
        assert!(a.is_metabelian());
    }

    #[test]
    fn family_postconditions() {
        let k = f5();
        let axyz = make(&sample_specs(k)[5], k).unwrap();
        let c = axyz.leibniz_center();
        assert!(c.contains_vector(&axyz.basis_vector(4)) && c.contains_vector(&axyz.basis_vector(5)));
        let v = make(&sample_specs(k)[3], k).unwrap();
        assert!(v.is_metabelian());
        assert!(v.nilpotency_step().unwrap() <= 3);
    }

    #[test]
    fn bad_parameters() {
        let k = f5();
        let ns = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        assert!(matches!(
            make(&FamilySpec::ATheta { theta: ns.clone() }, k),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            make(&FamilySpec::KnXV0 { x: Matrix::identity(k, 2), v0: vec![k.zero(); 2] }, k),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            make(&FamilySpec::KnXV0 { x: ns.clone(), v0: vec![k.zero(), k.one()] }, k),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            make(&FamilySpec::VFV0 { f: ns, v0: vec![k.one()] }, k),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(make(&FamilySpec::Jt { n: 2, t: 3 }, k), Err(Error::BadParameters(_))));
    }

    #[test]
    fn heis_abc_equals_coflag_build() {
        let k = f5();
        for (a, b, c) in [
            (sym(k, &[&[1]]), sym(k, &[&[1]]), sym(k, &[&[0]])),
            (sym(k, &[&[1, 2], &[2, 3]]), sym(k, &[&[0, 4], &[4, 1]]), sym(k, &[&[2, 1], &[3, 0]])),
        ] {
            let n = a.rows();
            let h = make(&FamilySpec::Heisenberg { n }, k).unwrap();
            let mut gram = Matrix::zeros(k, 2 * n + 1, 2 * n + 1);
            for i in 0..n {
                for j in 0..n {
                    gram.set(i, j, a.get(i, j).clone());
                    gram.set(n + i, n + j, b.get(i, j).clone());
                    gram.set(i, n + j, c.get(i, j).clone());
                    gram.set(n + j, i, c.get(i, j).clone());
                }
            }
            let d = CoflagDatum::new(h, LambdaMap::zero(k, 2 * n + 1), BilinearVMap::from_gram(&gram)).unwrap();
            let built = build_coflag_algebra(&d);
            let fam = make(&FamilySpec::HeisAbc { a, b, c }, k).unwrap();
            assert_eq!(built, fam);
        }
    }

    proptest! {
        #[test]
        fn a_theta_derived_dimension(vals in proptest::collection::vec(0i64..5, 6)) {
            let k = f5();
            let t = Matrix::from_i64(k, &[&[vals[0], vals[1], vals[2]], &[vals[1], vals[3], vals[4]], &[vals[2], vals[4], vals[5]]]);
            let a = make(&FamilySpec::ATheta { theta: t.clone() }, k).unwrap();
            prop_assert!(a.is_jacobi_jordan());
            let d = a.derived_algebra().dim();
            prop_assert!(d <= 1);
            prop_assert_eq!(d == 1, !t.is_zero());
        }

        #[test]
        fn v_f_v0_is_jj_for_square_zero_f(a in 0i64..5, b in 0i64..5, s in 0i64..5) {
            // Rank-one square-zero maps u wᵀ with wᵀu = 0, and v0 ∈ Ker f.
            let k = f5();
            let u = [a, b];
            let w = [(5 - b) % 5, a];
            let f = Matrix::from_i64(k, &[&[u[0] * w[0], u[0] * w[1]], &[u[1] * w[0], u[1] * w[1]]]);
            prop_assume!(f.mul(&f).is_zero());
            let v0 = vec![k.from_i64(s * u[0]), k.from_i64(s * u[1])];
            prop_assume!(is_zero_vector(&f.mul_vec(&v0)));
            let alg = make(&FamilySpec::VFV0 { f, v0 }, k).unwrap();
            prop_assert!(alg.is_jacobi_jordan());
            prop_assert!(alg.is_metabelian());
        }
    }
}
