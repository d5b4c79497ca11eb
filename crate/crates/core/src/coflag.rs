//! Co-flag data `(λ, ϑ)`, the algebras `A_(λ,ϑ)` they build, the two
//! equivalences on data and the automorphism group of a datum.

use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::cohomology::{coflag_cohomology, lambda_solutions, LambdaMap, UnionFind};
use crate::crossed::{sym_pairs, BilinearVMap};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::iso::automorphisms;
use crate::linalg::{axpy, dot, zero_vector, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoflagDatum {
    pub base: Algebra,
    pub lam: LambdaMap,
    /// Symmetric `k`-valued form on the base (codomain dimension 1).
    pub theta: BilinearVMap,
}

impl CoflagDatum {
    /// Checks `λ(ab) = −2λ(a)λ(b)` and the λ-cocycle identity for `ϑ`.
    pub fn new(base: Algebra, lam: LambdaMap, theta: BilinearVMap) -> Result<Self> {
        let n = base.dim();
        if lam.coeffs.len() != n || theta.domain_dim() != n || theta.codomain_dim() != 1 {
            return Err(Error::InvalidCoflagDatum("shape does not match the base".into()));
        }
        if !theta.is_symmetric() {
            return Err(Error::InvalidCoflagDatum("theta is not symmetric".into()));
        }
        let space = coflag_cohomology(&base, &lam)
            .map_err(|_| Error::InvalidCoflagDatum("lambda(a.b) != -2 lambda(a) lambda(b)".into()))?;
        if !space.z2.contains_vector(&theta.to_symmetric_coords()) {
            return Err(Error::InvalidCoflagDatum("theta is not a lambda-cocycle".into()));
        }
        Ok(CoflagDatum { base, lam, theta })
    }

    /// `ϑ` from its values on pairs `i ≤ j`, in the order of [`sym_pairs`].
    pub fn from_upper(base: Algebra, lam: LambdaMap, values: &[Scalar]) -> Result<Self> {
        let n = base.dim();
        if values.len() != sym_pairs(n).len() {
            return Err(Error::DimensionMismatch {
                expected: sym_pairs(n).len(),
                found: values.len(),
            });
        }
        let theta = BilinearVMap::from_symmetric_coords(base.field(), n, 1, values);
        CoflagDatum::new(base, lam, theta)
    }

    /// Gram matrix of `ϑ`.
    pub fn gram(&self) -> Matrix {
        self.theta.gram()
    }

    fn form(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.theta.eval(a, b)[0].clone()
    }
}

fn fresh_name(names: &[String]) -> String {
    std::iter::once("y".to_string())
        .chain((1..).map(|i| format!("y{i}")))
        .find(|c| !names.contains(c))
        .expect("infinite supply")
}

/// `A_(λ,ϑ)` on `A × k`: `e_i • e_j = e_i e_j + ϑ(e_i, e_j) y`,
/// `e_i • y = y • e_i = λ(e_i) y`, `y • y = 0`. The new vector comes last.
pub fn build_coflag_algebra(d: &CoflagDatum) -> Algebra {
    let a = &d.base;
    let n = a.dim();
    let k = a.field();
    let mut names = a.names().to_vec();
    names.push(fresh_name(a.names()));
    let mut out = Algebra::abelian(k, names);
    for i in 0..n {
        for j in 0..n {
            let mut v = a.product(i, j).to_vec();
            v.push(d.theta.get(i, j)[0].clone());
            out.set_product(i, j, v);
        }
        let mut v = zero_vector(k, n + 1);
        v[n] = d.lam.coeffs[i].clone();
        out.set_product(i, n, v.clone());
        out.set_product(n, i, v);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gh2Verdict {
    /// `ϑ = ϑ′ + λ(a)t(b) + λ(b)t(a) − t(ab)`.
    Yes(Vec<Scalar>),
    No,
}

/// Linear system for `r ↦ λ(a)r(b) + λ(b)r(a) − r(ab)` on pairs `i ≤ j`.
fn shift_rows(d: &CoflagDatum) -> Vec<Vec<Scalar>> {
    let a = &d.base;
    let n = a.dim();
    sym_pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let mut row = zero_vector(a.field(), n);
            row[j] += &d.lam.coeffs[i];
            row[i] += &d.lam.coeffs[j];
            for (t, c) in a.product(i, j).iter().enumerate() {
                row[t] -= c;
            }
            row
        })
        .collect()
}

/// Cohomologous data: same `λ` and `ϑ − ϑ′` a coboundary.
pub fn gh2_equivalent(d: &CoflagDatum, dp: &CoflagDatum) -> Result<Gh2Verdict> {
    if !d.base.same_structure(&dp.base) {
        return Err(Error::InvalidCoflagDatum("data over different bases".into()));
    }
    if d.lam != dp.lam {
        return Ok(Gh2Verdict::No);
    }
    let k = d.base.field();
    let rows = shift_rows(d);
    let n = d.base.dim();
    let rhs: Vec<Scalar> = sym_pairs(n)
        .into_iter()
        .map(|(i, j)| &d.theta.get(i, j)[0] - &dp.theta.get(i, j)[0])
        .collect();
    if rows.is_empty() {
        return Ok(Gh2Verdict::Yes(Vec::new()));
    }
    let m = Matrix::from_rows(k, rows)?;
    Ok(match m.solve(&rhs) {
        Some(t) => Gh2Verdict::Yes(t),
        None => Gh2Verdict::No,
    })
}

/// Automorphisms of the base to search through, and whether they are all of
/// `Aut(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutSource {
    pub elements: Vec<Matrix>,
    pub exhaustive: bool,
}

impl AutSource {
    /// Full enumeration over F_p.
    pub fn exhaustive(a: &Algebra, cap: u64) -> Result<Self> {
        Ok(AutSource {
            elements: automorphisms(a, cap)?.elements,
            exhaustive: true,
        })
    }

    pub fn supplied(elements: Vec<Matrix>) -> Self {
        AutSource {
            elements,
            exhaustive: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CpVerdict {
    Yes { s0: Scalar, psi: Matrix, r: Vec<Scalar> },
    No,
    Unknown,
}

impl CpVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, CpVerdict::Yes { .. })
    }
}

/// `λ = λ′∘ψ`.
fn lambda_compatible(lam: &LambdaMap, lam_p: &LambdaMap, psi: &Matrix) -> bool {
    (0..lam.coeffs.len()).all(|i| lam.coeffs[i] == dot(&lam_p.coeffs, &psi.column(i)))
}

/// Solutions `(s₀, r)` of `ϑ(a,b)s₀ − λ(a)r(b) − λ(b)r(a) + r(ab) = ϑ′(ψa, ψb)`
/// with coordinates `[s₀, r_1, …, r_n]`, as particular solution plus kernel.
fn joint_system(d: &CoflagDatum, dp: &CoflagDatum, psi: &Matrix) -> Option<(Vec<Scalar>, Subspace)> {
    let a = &d.base;
    let n = a.dim();
    let k = a.field();
    let shift = shift_rows(d);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (p, (i, j)) in sym_pairs(n).into_iter().enumerate() {
        let mut row = vec![d.theta.get(i, j)[0].clone()];
        row.extend(shift[p].iter().map(Scalar::negated));
        rows.push(row);
        rhs.push(dp.form(&psi.column(i), &psi.column(j)));
    }
    if rows.is_empty() {
        let mut x = zero_vector(k, 1);
        x[0] = k.one();
        return Some((x, Subspace::full(k, n + 1)));
    }
    let m = Matrix::from_rows(k, rows).expect("rectangular");
    let x = m.solve(&rhs)?;
    Some((x, m.kernel()))
}

/// An affine solution with nonzero first coordinate, if any.
fn with_nonzero_s0(particular: &[Scalar], kernel: &Subspace) -> Option<Vec<Scalar>> {
    if !particular[0].is_zero() {
        return Some(particular.to_vec());
    }
    let b = kernel.basis().iter().find(|b| !b[0].is_zero())?;
    let mut x = particular.to_vec();
    axpy(&mut x, &kernel.field().one(), b);
    Some(x)
}

/// `(λ,ϑ) ≡ (λ′,ϑ′)`: the built algebras are isomorphic.
pub fn cp_equivalent(d: &CoflagDatum, dp: &CoflagDatum, source: &AutSource) -> Result<CpVerdict> {
    if !d.base.same_structure(&dp.base) {
        return Err(Error::InvalidCoflagDatum("data over different bases".into()));
    }
    for psi in &source.elements {
        if !lambda_compatible(&d.lam, &dp.lam, psi) {
            continue;
        }
        if let Some((x, ker)) = joint_system(d, dp, psi) {
            if let Some(sol) = with_nonzero_s0(&x, &ker) {
                return Ok(CpVerdict::Yes {
                    s0: sol[0].clone(),
                    psi: psi.clone(),
                    r: sol[1..].to_vec(),
                });
            }
        }
    }
    Ok(if source.exhaustive {
        CpVerdict::No
    } else {
        CpVerdict::Unknown
    })
}

/// An element `(s₀, ψ, r)` of the automorphism group of a datum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutElement {
    pub s0: Scalar,
    pub psi: Matrix,
    pub r: Vec<Scalar>,
}

impl AutElement {
    pub fn identity(field: crate::field::FieldSpec, n: usize) -> Self {
        AutElement {
            s0: field.one(),
            psi: Matrix::identity(field, n),
            r: zero_vector(field, n),
        }
    }

    /// `(s₀, ψ, r) ⋆ (s₀′, ψ′, r′) = (s₀s₀′, ψψ′, r∘ψ′ + s₀r′)`.
    pub fn compose(&self, other: &AutElement) -> AutElement {
        let r_psi = other.psi.transpose().mul_vec(&self.r);
        let mut r = r_psi;
        axpy(&mut r, &self.s0, &other.r);
        AutElement {
            s0: &self.s0 * &other.s0,
            psi: self.psi.mul(&other.psi),
            r,
        }
    }

    /// `(s₀⁻¹, ψ⁻¹, −s₀⁻¹ r∘ψ⁻¹)`.
    pub fn inverse(&self) -> Option<AutElement> {
        let s_inv = self.s0.checked_inv().ok()?;
        let psi_inv = self.psi.inverse()?;
        let r = psi_inv
            .transpose()
            .mul_vec(&self.r)
            .iter()
            .map(|c| (&s_inv * c).negated())
            .collect();
        Some(AutElement {
            s0: s_inv,
            psi: psi_inv,
            r,
        })
    }

    /// The automorphism `(a, x) ↦ (ψ(a), r(a) + x s₀)` of `A_(λ,ϑ)`.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.psi.rows();
        let k = self.s0.field();
        let mut m = Matrix::zeros(k, n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.psi.get(i, j).clone());
            }
            m.set(n, i, self.r[i].clone());
        }
        m.set(n, n, self.s0.clone());
        m
    }
}

/// All `(s₀, ψ, r)` with `λ = λ∘ψ` and
/// `ϑ(a,b)s₀ = ϑ(ψa, ψb) + λ(a)r(b) + λ(b)r(a) − r(ab)`, over F_p.
pub fn automorphism_group(d: &CoflagDatum, cap: u64) -> Result<Vec<AutElement>> {
    let k = d.base.field();
    let n = d.base.dim();
    let auts = automorphisms(&d.base, cap)?;
    let mut out = Vec::new();
    for psi in &auts.elements {
        if !lambda_compatible(&d.lam, &d.lam, psi) {
            continue;
        }
        let Some((x, ker)) = joint_system(d, d, psi) else {
            continue;
        };
        let count = k.count_vectors(ker.dim()).ok_or(Error::NotEnumerable)?;
        if count > cap {
            return Err(Error::CapExceeded { cap, explored: out.len() as u64 });
        }
        for idx in 0..count {
            let mut sol = x.clone();
            for (c, b) in k.vector_from_index(idx, ker.dim()).iter().zip(ker.basis()) {
                axpy(&mut sol, c, b);
            }
            if sol[0].is_zero() {
                continue;
            }
            out.push(AutElement {
                s0: sol[0].clone(),
                psi: psi.clone(),
                r: sol[1..=n].to_vec(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemidirectVerdict {
    Yes(Matrix),
    No,
    Unknown,
}

/// `A_λ ≅ A_λ′` iff `λ = λ′∘ψ` for an automorphism `ψ`.
pub fn semidirect_classify(a: &Algebra, lam: &LambdaMap, lam_p: &LambdaMap, source: &AutSource) -> Result<SemidirectVerdict> {
    if !lam.satisfies_flag_identity(a) || !lam_p.satisfies_flag_identity(a) {
        return Err(Error::InvalidLambda);
    }
    if lam == lam_p {
        return Ok(SemidirectVerdict::Yes(Matrix::identity(a.field(), a.dim())));
    }
    if let Some(psi) = source.elements.iter().find(|psi| lambda_compatible(lam, lam_p, psi)) {
        return Ok(SemidirectVerdict::Yes(psi.clone()));
    }
    Ok(if source.exhaustive {
        SemidirectVerdict::No
    } else {
        SemidirectVerdict::Unknown
    })
}

/// Every co-flag datum of `A` over F_p, for each admissible `λ`.
pub fn all_coflag_data(a: &Algebra, cap: u64) -> Result<Vec<CoflagDatum>> {
    let k = a.field();
    let mut out = Vec::new();
    for lam in lambda_solutions(a).lambdas {
        let space = coflag_cohomology(a, &lam)?;
        let count = k.count_vectors(space.z2.dim()).ok_or(Error::NotEnumerable)?;
        if out.len() as u64 + count > cap {
            return Err(Error::CapExceeded {
                cap,
                explored: out.len() as u64,
            });
        }
        for v in space.z2.elements()? {
            out.push(CoflagDatum {
                base: a.clone(),
                lam: lam.clone(),
                theta: BilinearVMap::from_symmetric_coords(k, a.dim(), 1, &v),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoflagCensus {
    pub data: usize,
    /// Classes under cohomology.
    pub gh2_classes: usize,
    /// Classes under isomorphism of the built algebras.
    pub cp_classes: usize,
    pub cp_representatives: Vec<CoflagDatum>,
}

/// Orbits of all co-flag data under cohomology and under the group action
/// `(λ, ϑ) ↦ (λ∘ψ⁻¹, ϑ′)` with `ϑ′(ψa, ψb) = s₀ϑ(a,b) − λ(a)r(b) − λ(b)r(a) + r(ab)`.
pub fn coflag_census(a: &Algebra, cap: u64) -> Result<CoflagCensus> {
    let k = a.field();
    let n = a.dim();
    let data = all_coflag_data(a, cap)?;
    let key = |d: &CoflagDatum| (d.lam.coeffs.clone(), d.theta.to_symmetric_coords());
    let index: HashMap<(Vec<Scalar>, Vec<Scalar>), usize> =
        data.iter().enumerate().map(|(i, d)| (key(d), i)).collect();

    let mut gh2 = UnionFind::new(data.len());
    let mut cp = UnionFind::new(data.len());
    let r_count = k.count_vectors(n).ok_or(Error::NotEnumerable)?;
    let rs: Vec<Vec<Scalar>> = (0..r_count).map(|i| k.vector_from_index(i, n)).collect();
    let auts = automorphisms(a, cap)?.elements;
    let units = k.units()?;
    if (data.len() as u64)
        .saturating_mul(auts.len() as u64 * units.len() as u64 + r_count)
        > cap.saturating_mul(10)
    {
        return Err(Error::CapExceeded { cap, explored: 0 });
    }
    for (idx, d) in data.iter().enumerate() {
        for r in &rs {
            let shifted = transform(d, &k.one(), &Matrix::identity(k, n), r);
            let j = index[&key(&shifted)];
            gh2.union(idx, j);
            cp.union(idx, j);
        }
    }
    // The shifts (1, id, r) form a normal subgroup, so (s₀, ψ, 0) permutes
    // cohomology classes and one representative per class suffices.
    for idx in 0..data.len() {
        if gh2.find(idx) != idx {
            continue;
        }
        for psi in &auts {
            for s0 in &units {
                let img = transform(&data[idx], s0, psi, &rs[0]);
                let j = *index
                    .get(&key(&img))
                    .expect("the group action preserves co-flag data");
                cp.union(idx, j);
            }
        }
    }
    let gh2_classes = gh2.components();
    let mut cp_representatives = Vec::new();
    for i in 0..data.len() {
        if cp.find(i) == i {
            cp_representatives.push(data[i].clone());
        }
    }
    Ok(CoflagCensus {
        data: data.len(),
        gh2_classes,
        cp_classes: cp_representatives.len(),
        cp_representatives,
    })
}

/// The datum `d′` with `d ≡ d′` through `(s₀, ψ, r)`.
fn transform(d: &CoflagDatum, s0: &Scalar, psi: &Matrix, r: &[Scalar]) -> CoflagDatum {
    let a = &d.base;
    let n = a.dim();
    let k = a.field();
    let psi_inv = psi.inverse().expect("automorphism");
    let lam_p = LambdaMap {
        coeffs: psi_inv.transpose().mul_vec(&d.lam.coeffs),
    };
    let mut theta = BilinearVMap::zero(k, n, 1);
    for (x, y) in sym_pairs(n) {
        let (u, v) = (psi_inv.column(x), psi_inv.column(y));
        let mut val = s0 * &d.form(&u, &v);
        val -= &(&d.lam.eval(&u) * &dot(r, &v));
        val -= &(&d.lam.eval(&v) * &dot(r, &u));
        val += &dot(r, &a.mul(&u, &v));
        theta.set_symmetric(x, y, vec![val]);
    }
    CoflagDatum {
        base: a.clone(),
        lam: lam_p,
        theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::iso::{isomorphic, DEFAULT_NODE_CAP};
    use crate::samples::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    /// h(3) datum with ϑ(e,e) = a, ϑ(f,f) = b, ϑ(e,f) = c.
    fn h3_datum(k: FieldSpec, a: i64, b: i64, c: i64) -> CoflagDatum {
        let h = heisenberg3(k);
        let v: Vec<Scalar> = [a, c, 0, b, 0, 0].iter().map(|&x| k.from_i64(x)).collect();
        CoflagDatum::from_upper(h.clone(), LambdaMap::zero(k, 3), &v).unwrap()
    }

    #[test]
    fn heisenberg_build_matches_the_four_dimensional_algebra() {
        let k = f5();
        let e = build_coflag_algebra(&h3_datum(k, 1, 1, 0));
        assert_eq!(e.names(), ["e", "f", "z", "y"]);
        let y = e.basis_vector(3);
        assert_eq!(e.product(0, 0), &y[..]);
        assert_eq!(e.product(1, 1), &y[..]);
        assert_eq!(e.product(0, 1), &e.basis_vector(2)[..]);
        assert!(e.is_jacobi_jordan());
    }

    #[test]
    fn zero_datum_is_direct_product() {
        let k = f5();
        let d = h3_datum(k, 0, 0, 0);
        let e = build_coflag_algebra(&d);
        let mut expected = Algebra::abelian(k, vec!["e".into(), "f".into(), "z".into(), "y".into()]);
        expected.set_symmetric(0, 1, vec![k.zero(), k.zero(), k.one(), k.zero()]);
        assert!(e.same_structure(&expected));
    }

    #[test]
    fn k0_with_unit_theta_is_a12() {
        let k = FieldSpec::Rationals;
        let base = Algebra::with_default_names(k, 1);
        let d = CoflagDatum::from_upper(base, LambdaMap::zero(k, 1), &[k.one()]).unwrap();
        assert!(build_coflag_algebra(&d).same_structure(&a12(k)));
    }

    #[test]
    fn invalid_data_rejected() {
        let k = f5();
        let h = heisenberg3(k);
        let v: Vec<Scalar> = [0, 0, 1, 0, 0, 0].iter().map(|&x| k.from_i64(x)).collect();
        assert!(matches!(
            CoflagDatum::from_upper(h.clone(), LambdaMap::zero(k, 3), &v),
            Err(Error::InvalidCoflagDatum(_))
        ));
        let lam = LambdaMap { coeffs: vec![k.one(), k.zero(), k.zero()] };
        assert!(matches!(
            CoflagDatum::from_upper(h, lam, &vec![k.zero(); 6]),
            Err(Error::InvalidCoflagDatum(_))
        ));
    }

    #[test]
    fn build_is_jj_iff_cocycle_on_random_forms() {
        let k = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let bases = [heisenberg3(k), a12(k), Algebra::with_default_names(k, 2)];
        let mut seen = [0usize; 2];
        for _ in 0..200 {
            let a = &bases[rng.gen_range(0..bases.len())];
            let n = a.dim();
            let vals: Vec<Scalar> = (0..sym_pairs(n).len()).map(|_| k.random(&mut rng)).collect();
            let lam = LambdaMap::zero(k, n);
            let theta = BilinearVMap::from_symmetric_coords(k, n, 1, &vals);
            let raw = CoflagDatum { base: a.clone(), lam: lam.clone(), theta: theta.clone() };
            let valid = CoflagDatum::new(a.clone(), lam, theta).is_ok();
            assert_eq!(build_coflag_algebra(&raw).is_jacobi_jordan(), valid);
            seen[valid as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn gh2_examples() {
        let k = f5();
        let d = h3_datum(k, 1, 2, 3);
        assert_eq!(gh2_equivalent(&d, &d).unwrap(), Gh2Verdict::Yes(vec![k.zero(); 3]));
        let shifted = h3_datum(k, 1, 2, 0);
        assert!(matches!(gh2_equivalent(&d, &shifted).unwrap(), Gh2Verdict::Yes(_)));
        assert_eq!(gh2_equivalent(&h3_datum(k, 0, 0, 0), &h3_datum(k, 1, 0, 0)).unwrap(), Gh2Verdict::No);
    }

    #[test]
    fn scaled_form_is_cp_equivalent() {
        let k = f5();
        let base = Algebra::with_default_names(k, 1);
        let d = CoflagDatum::from_upper(base.clone(), LambdaMap::zero(k, 1), &[k.one()]).unwrap();
        let d4 = CoflagDatum::from_upper(base.clone(), LambdaMap::zero(k, 1), &[k.from_i64(4)]).unwrap();
        let src = AutSource::supplied(vec![Matrix::identity(k, 1)]);
        assert_eq!(
            cp_equivalent(&d, &d4, &src).unwrap(),
            CpVerdict::Yes { s0: k.from_i64(4), psi: Matrix::identity(k, 1), r: vec![k.zero()] }
        );
    }

    #[test]
    fn three_h3_classes_are_pairwise_distinct() {
        let k = f5();
        let src = AutSource::exhaustive(&heisenberg3(k), DEFAULT_NODE_CAP).unwrap();
        let reps = [h3_datum(k, 0, 0, 0), h3_datum(k, 1, 0, 0), h3_datum(k, 1, 1, 0)];
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                assert_eq!(cp_equivalent(a, b, &src).unwrap().is_yes(), i == j, "{i} {j}");
            }
        }
    }

    #[test]
    fn gh2_implies_cp() {
        let k = f3();
        let h = heisenberg3(k);
        let src = AutSource::exhaustive(&h, DEFAULT_NODE_CAP).unwrap();
        let data = all_coflag_data(&h, 1 << 20).unwrap();
        for d in &data {
            for dp in &data {
                if let Gh2Verdict::Yes(_) = gh2_equivalent(d, dp).unwrap() {
                    assert!(cp_equivalent(d, dp, &src).unwrap().is_yes());
                }
            }
        }
    }

    #[test]
    fn h3_census_over_f5_matches_isomorphism_classes() {
        let k = f5();
        let h = heisenberg3(k);
        let census = coflag_census(&h, 1 << 24).unwrap();
        assert_eq!(census.data, 125);
        assert_eq!(census.gh2_classes, 25);
        // Independent oracle: classes of the built algebras under isomorphism.
        let built: Vec<Algebra> = all_coflag_data(&h, 1 << 20).unwrap().iter().map(build_coflag_algebra).collect();
        let mut reps: Vec<&Algebra> = Vec::new();
        for e in &built {
            if !reps
                .iter()
                .any(|r| isomorphic(r, e, DEFAULT_NODE_CAP).unwrap().is_yes())
            {
                reps.push(e);
            }
        }
        assert_eq!(census.cp_classes, reps.len());
        // And through cp_equivalent on the representatives.
        let src = AutSource::exhaustive(&h, DEFAULT_NODE_CAP).unwrap();
        for (i, a) in census.cp_representatives.iter().enumerate() {
            for (j, b) in census.cp_representatives.iter().enumerate() {
                assert_eq!(cp_equivalent(a, b, &src).unwrap().is_yes(), i == j);
            }
        }
    }

    #[test]
    fn automorphism_group_of_a12_datum() {
        let k = f5();
        let base = Algebra::with_default_names(k, 1);
        let d = CoflagDatum::from_upper(base, LambdaMap::zero(k, 1), &[k.one()]).unwrap();
        let g = automorphism_group(&d, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(g.len(), 20);
        for x in &g {
            assert_eq!(x.s0, &x.psi.get(0, 0).clone() * x.psi.get(0, 0));
        }
        let built = build_coflag_algebra(&d);
        assert_eq!(automorphisms(&built, DEFAULT_NODE_CAP).unwrap().order(), 20);
    }

    #[test]
    fn zero_datum_group() {
        // Abelian base: both conditions are vacuous, G = k* × Aut(A) × A*.
        let k = f3();
        let ab = Algebra::with_default_names(k, 2);
        let d = CoflagDatum::from_upper(ab.clone(), LambdaMap::zero(k, 2), &vec![k.zero(); 3]).unwrap();
        let g = automorphism_group(&d, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(g.len(), 2 * 48 * 9);
        // Non-abelian base: the second condition still forces r(ab) = 0.
        let a = a12(k);
        let d = CoflagDatum::from_upper(a.clone(), LambdaMap::zero(k, 2), &vec![k.zero(); 3]).unwrap();
        let g = automorphism_group(&d, DEFAULT_NODE_CAP).unwrap();
        let aut = automorphisms(&a, DEFAULT_NODE_CAP).unwrap().order();
        assert_eq!(g.len(), 2 * aut * 3);
        assert!(g.iter().all(|x| x.r[1].is_zero()));
    }

    /// Automorphisms of the built algebra mapping `y` into `k y`.
    fn ideal_stabilizer_order(built: &Algebra) -> usize {
        let n = built.dim() - 1;
        automorphisms(built, DEFAULT_NODE_CAP)
            .unwrap()
            .elements
            .iter()
            .filter(|t| (0..n).all(|i| t.get(i, n).is_zero()))
            .count()
    }

    #[test]
    fn automorphisms_need_not_preserve_the_new_line() {
        // h(3) ⊕ k: y ↦ y + z is an automorphism that does not fix k y, so the
        // triples (s₀, ψ, r) give only the stabilizer of that line.
        let k = f3();
        let d = h3_datum(k, 0, 0, 0);
        let built = build_coflag_algebra(&d);
        let all = automorphisms(&built, DEFAULT_NODE_CAP).unwrap().order();
        let g = automorphism_group(&d, DEFAULT_NODE_CAP).unwrap().len();
        assert_eq!(g, ideal_stabilizer_order(&built));
        assert_eq!((all, g), (3888, 1296));
    }

    #[test]
    fn group_law_axioms_and_matrix_model() {
        let k = f3();
        for a in [heisenberg3(k), a12(k)] {
            for d in all_coflag_data(&a, 1 << 20).unwrap().into_iter().take(6) {
                let g = automorphism_group(&d, DEFAULT_NODE_CAP).unwrap();
                let set: std::collections::HashSet<&AutElement> = g.iter().collect();
                let e = AutElement::identity(k, a.dim());
                assert!(set.contains(&e));
                let built = build_coflag_algebra(&d);
                assert_eq!(ideal_stabilizer_order(&built), g.len());
                for x in g.iter().take(25) {
                    let inv = x.inverse().unwrap();
                    assert_eq!(x.compose(&inv), e);
                    assert_eq!(inv.compose(x), e);
                    assert!(crate::iso::is_isomorphism(&built, &built, &x.to_matrix()));
                    for y in g.iter().take(25) {
                        let xy = x.compose(y);
                        assert!(set.contains(&xy));
                        assert_eq!(xy.to_matrix(), x.to_matrix().mul(&y.to_matrix()));
                        for z in g.iter().take(5) {
                            assert_eq!(xy.compose(z), x.compose(&y.compose(z)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn semidirect_examples() {
        let k = f5();
        let a = Algebra::with_default_names(k, 2);
        let src = AutSource::exhaustive(&a, DEFAULT_NODE_CAP).unwrap();
        let zero = LambdaMap::zero(k, 2);
        assert!(matches!(semidirect_classify(&a, &zero, &zero, &src).unwrap(), SemidirectVerdict::Yes(_)));
        // On an abelian base only λ = 0 satisfies the flag identity in char 5.
        let bad = LambdaMap { coeffs: vec![k.one(), k.zero()] };
        assert_eq!(semidirect_classify(&a, &bad, &zero, &src), Err(Error::InvalidLambda));
        // Over F_3 the idempotent admits λ = 0 and λ = 1, and they are not related.
        let k3 = f3();
        let mut idem = Algebra::with_default_names(k3, 1);
        idem.set_product(0, 0, vec![k3.one()]);
        let src3 = AutSource::exhaustive(&idem, DEFAULT_NODE_CAP).unwrap();
        let l0 = LambdaMap::zero(k3, 1);
        let l1 = LambdaMap { coeffs: vec![k3.one()] };
        assert_eq!(semidirect_classify(&idem, &l0, &l1, &src3).unwrap(), SemidirectVerdict::No);
    }
}
