//! Crossed data `(▷, ϑ, ·_V)` of an algebra `A` by a space `V`, the crossed
//! product on `A × V`, and morphisms `ψ_r(a, x) = (a, r(a) + x)`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::algebra::{default_names, Algebra};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{add_vectors, axpy, is_zero_vector, sub_vectors, zero_vector, Matrix, Subspace};
use crate::modrep::ActionData;

/// Index pairs `i ≤ j` in the order used for symmetric coordinates.
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Position of the unordered pair `{i, j}` in [`sym_pairs`].
pub fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// A `k^m`-valued bilinear map on `k^n`; `values[i * n + j]` is `(e_i, e_j) ↦ ·`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearVMap {
    field: FieldSpec,
    domain_dim: usize,
    codomain_dim: usize,
    values: Vec<Vec<Scalar>>,
}

impl BilinearVMap {
    pub fn zero(field: FieldSpec, domain_dim: usize, codomain_dim: usize) -> Self {
        BilinearVMap {
            field,
            domain_dim,
            codomain_dim,
            values: vec![zero_vector(field, codomain_dim); domain_dim * domain_dim],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.values[i * self.domain_dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vec<Scalar>) {
        assert_eq!(v.len(), self.codomain_dim, "value length");
        self.values[i * self.domain_dim + j] = v;
    }

    pub fn set_symmetric(&mut self, i: usize, j: usize, v: Vec<Scalar>) {
        self.set(j, i, v.clone());
        self.set(i, j, v);
    }

    /// Scalar-valued form from a Gram matrix.
    pub fn from_gram(m: &Matrix) -> Self {
        let n = m.rows();
        let mut b = BilinearVMap::zero(m.field(), n, 1);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, vec![m.get(i, j).clone()]);
            }
        }
        b
    }

    /// Gram matrix of a scalar-valued form.
    pub fn gram(&self) -> Matrix {
        assert_eq!(self.codomain_dim, 1, "gram matrix of a scalar form");
        let n = self.domain_dim;
        let mut m = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(i, j)[0].clone());
            }
        }
        m
    }

    pub fn eval(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vector(self.field, self.codomain_dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), self.get(i, j));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.domain_dim;
        (0..n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    /// Coordinates `(pair p, component q) ↦ p * m + q` over pairs `i ≤ j`.
    pub fn to_symmetric_coords(&self) -> Vec<Scalar> {
        sym_pairs(self.domain_dim)
            .into_iter()
            .flat_map(|(i, j)| self.get(i, j).to_vec())
            .collect()
    }

    pub fn from_symmetric_coords(field: FieldSpec, n: usize, m: usize, coords: &[Scalar]) -> Self {
        let mut b = BilinearVMap::zero(field, n, m);
        for (p, (i, j)) in sym_pairs(n).into_iter().enumerate() {
            b.set_symmetric(i, j, coords[p * m..(p + 1) * m].to_vec());
        }
        b
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = crate::linalg::scale_vector(s, v);
        }
        out
    }

    pub fn add(&self, other: &BilinearVMap) -> Self {
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            *v = add_vectors(v, w);
        }
        out
    }
}

/// A triple `(▷, ϑ, ·_V)` connecting `base` and `k^fiber_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossedData {
    pub base: Algebra,
    pub fiber_dim: usize,
    pub action: ActionData,
    pub cocycle: BilinearVMap,
    pub fiber_mult: Algebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// The base algebra itself must be JJ.
    Base,
    J1,
    J2,
    J3,
    J4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Base => "base",
            Axiom::J1 => "J1",
            Axiom::J2 => "J2",
            Axiom::J3 => "J3",
            Axiom::J4 => "J4",
        };
        f.write_str(s)
    }
}

/// One failing tuple. Indices refer to base basis vectors first, then fiber
/// basis vectors, in the order the axiom names its arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub tuple: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossedValidation {
    pub violations: Vec<AxiomViolation>,
}

impl CrossedValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failing_axioms(&self) -> Vec<Axiom> {
        let mut a: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        a.dedup();
        a
    }

    fn summary(&self) -> String {
        self.failing_axioms()
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl CrossedData {
    pub fn new(
        base: Algebra,
        action: ActionData,
        cocycle: BilinearVMap,
        fiber_mult: Algebra,
    ) -> Result<Self> {
        let n = base.dim();
        let m = fiber_mult.dim();
        let field = base.field();
        if action.base != base {
            return Err(Error::BadParameters("action is over a different base".into()));
        }
        if fiber_mult.field() != field || cocycle.field() != field {
            return Err(Error::FieldMismatch);
        }
        if action.space_dim != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: action.space_dim,
            });
        }
        if cocycle.domain_dim() != n || cocycle.codomain_dim() != m {
            return Err(Error::DimensionMismatch {
                expected: n * m,
                found: cocycle.domain_dim() * cocycle.codomain_dim(),
            });
        }
        Ok(CrossedData {
            base,
            fiber_dim: m,
            action,
            cocycle,
            fiber_mult,
        })
    }

    /// `▷ = 0`, `ϑ = 0`, `·_V = 0`.
    pub fn trivial(base: Algebra, fiber_dim: usize) -> Self {
        let field = base.field();
        let n = base.dim();
        CrossedData {
            action: ActionData::trivial(base.clone(), fiber_dim),
            cocycle: BilinearVMap::zero(field, n, fiber_dim),
            fiber_mult: Algebra::abelian(field, default_names("v", fiber_dim)),
            base,
            fiber_dim,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    fn fiber_vector(&self, k: usize) -> Vec<Scalar> {
        self.fiber_mult.basis_vector(k)
    }

    /// Checks J1–J4 on basis tuples and reports every failure.
    pub fn validate(&self) -> CrossedValidation {
        let n = self.base.dim();
        let m = self.fiber_dim;
        let rho = &self.action.rho;
        let theta = &self.cocycle;
        let vm = &self.fiber_mult;
        let mut out = CrossedValidation::default();
        let mut push = |axiom, tuple: Vec<usize>, residual: Vec<Scalar>| {
            out.violations.push(AxiomViolation {
                axiom,
                tuple,
                residual,
            })
        };

        for d in self.base.jacobi_defects() {
            push(Axiom::Base, vec![d.triple.0, d.triple.1, d.triple.2], d.residual);
        }
        if !self.base.is_commutative() {
            push(Axiom::Base, vec![], vec![]);
        }

        // J1
        for k in 0..m {
            for l in 0..k {
                if vm.product(k, l) != vm.product(l, k) {
                    push(
                        Axiom::J1,
                        vec![n + k, n + l],
                        sub_vectors(vm.product(k, l), vm.product(l, k)),
                    );
                }
            }
        }
        for d in vm.jacobi_defects() {
            push(
                Axiom::J1,
                vec![n + d.triple.0, n + d.triple.1, n + d.triple.2],
                d.residual,
            );
        }
        for i in 0..n {
            for j in 0..i {
                if theta.get(i, j) != theta.get(j, i) {
                    push(
                        Axiom::J1,
                        vec![i, j],
                        sub_vectors(theta.get(i, j), theta.get(j, i)),
                    );
                }
            }
        }

        // J2: (ab)▷x + a▷(b▷x) + b▷(a▷x) + x·ϑ(a,b) = 0
        for (i, j) in sym_pairs(n) {
            let op = self
                .action
                .operator(self.base.product(i, j))
                .add(&rho[i].mul(&rho[j]))
                .add(&rho[j].mul(&rho[i]));
            for k in 0..m {
                let x = self.fiber_vector(k);
                let r = add_vectors(&op.mul_vec(&x), &vm.mul(&x, theta.get(i, j)));
                if !is_zero_vector(&r) {
                    push(Axiom::J2, vec![i, j, n + k], r);
                }
            }
        }

        // J3: a▷(x·y) + x·(a▷y) + y·(a▷x) = 0
        for i in 0..n {
            for (k, l) in sym_pairs(m) {
                let x = self.fiber_vector(k);
                let y = self.fiber_vector(l);
                let mut r = rho[i].mul_vec(vm.product(k, l));
                r = add_vectors(&r, &vm.mul(&x, &rho[i].mul_vec(&y)));
                r = add_vectors(&r, &vm.mul(&y, &rho[i].mul_vec(&x)));
                if !is_zero_vector(&r) {
                    push(Axiom::J3, vec![i, n + k, n + l], r);
                }
            }
        }

        // J4: Σ_c ϑ(a, bc) + Σ_c a▷ϑ(b, c) = 0
        for i in 0..n {
            for j in i..n {
                for l in j..n {
                    let r = self.j4_residual(i, j, l);
                    if !is_zero_vector(&r) {
                        push(Axiom::J4, vec![i, j, l], r);
                    }
                }
            }
        }
        out
    }

    fn j4_residual(&self, i: usize, j: usize, l: usize) -> Vec<Scalar> {
        let b = &self.base;
        let t = &self.cocycle;
        let e = |x| b.basis_vector(x);
        let mut r = zero_vector(self.field(), self.fiber_dim);
        for (a, bb, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            r = add_vectors(&r, &t.eval(&e(a), b.product(bb, c)));
            r = add_vectors(&r, &self.action.rho[a].mul_vec(t.get(bb, c)));
        }
        r
    }

    pub fn is_crossed_system(&self) -> bool {
        self.validate().is_valid()
    }

    fn product_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.base.names().to_vec();
        let fiber: Vec<String> = self.fiber_mult.names().to_vec();
        let clash = fiber.iter().any(|f| names.contains(f));
        if clash {
            let mut prefix = "v".to_string();
            loop {
                let candidate = default_names(&prefix, self.fiber_dim);
                if candidate.iter().all(|c| !names.contains(c)) {
                    names.extend(candidate);
                    break;
                }
                prefix.push('v');
            }
        } else {
            names.extend(fiber);
        }
        names
    }

    /// The multiplication `(a,x)•(b,y) = (ab, ϑ(a,b) + a▷y + b▷x + x·y)` on
    /// `A × V`, basis `A` first, without validating the axioms.
    pub fn product_algebra(&self) -> Algebra {
        let n = self.base.dim();
        let m = self.fiber_dim;
        let field = self.field();
        let mut e = Algebra::abelian(field, self.product_names());
        let embed = |a: &[Scalar], x: &[Scalar]| {
            let mut v = a.to_vec();
            v.extend_from_slice(x);
            v
        };
        let zero_a = zero_vector(field, n);
        for i in 0..n {
            for j in 0..n {
                e.set_product(i, j, embed(self.base.product(i, j), self.cocycle.get(i, j)));
            }
            for k in 0..m {
                let act = self.action.rho[i].column(k);
                e.set_product(i, n + k, embed(&zero_a, &act));
                e.set_product(n + k, i, embed(&zero_a, &act));
            }
        }
        for k in 0..m {
            for l in 0..m {
                e.set_product(n + k, n + l, embed(&zero_a, self.fiber_mult.product(k, l)));
            }
        }
        e
    }

    /// Validated crossed product `A # V`.
    pub fn crossed_product(&self) -> Result<Algebra> {
        let v = self.validate();
        if !v.is_valid() {
            return Err(Error::InvalidCrossedSystem(v.summary()));
        }
        Ok(self.product_algebra())
    }

    /// Projection `A # V → A` as an `n × (n+m)` matrix.
    pub fn projection(&self) -> Matrix {
        let n = self.base.dim();
        Matrix::identity(self.field(), n).hstack(&Matrix::zeros(self.field(), n, self.fiber_dim))
    }

    /// Section `a ↦ (a, t(a))` for a linear `t` given as an `m × n` matrix.
    pub fn section_with(&self, t: &Matrix) -> Matrix {
        Matrix::identity(self.field(), self.base.dim()).vstack(t)
    }
}

/// `A ⋉ V`: the crossed product with `ϑ = 0`, after checking that `V` is a
/// module, `·_V` is JJ and `a▷(xy) + x(a▷y) + y(a▷x) = 0`.
pub fn semidirect_product(base: &Algebra, action: &ActionData, fiber_mult: &Algebra) -> Result<Algebra> {
    let d = CrossedData::new(
        base.clone(),
        action.clone(),
        BilinearVMap::zero(base.field(), base.dim(), fiber_mult.dim()),
        fiber_mult.clone(),
    )
    .map_err(|e| Error::InvalidSemidirectSystem(e.to_string()))?;
    let v = d.validate();
    if !v.is_valid() {
        return Err(Error::InvalidSemidirectSystem(v.summary()));
    }
    if !action.is_jj_module() {
        return Err(Error::InvalidSemidirectSystem("not a JJ module".into()));
    }
    Ok(d.product_algebra())
}

/// Crossed data read off an extension `π: E → A` through a section `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognizedExtension {
    pub data: CrossedData,
    /// `φ(a, x) = s(a) + x` as an `N × (n+m)` matrix.
    pub iso: Matrix,
    /// `Ker π` with its canonical basis, which fixes coordinates on `V`.
    pub kernel: Subspace,
}

/// Builds `a▷x = s(a)x`, `ϑ(a,b) = s(a)s(b) − s(ab)` and `·_V = ·_E|V`.
///
/// `pi` is `n × N` and `s` is `N × n`, with `N = dim E`.
pub fn recognize_extension(e: &Algebra, a: &Algebra, pi: &Matrix, s: &Matrix) -> Result<RecognizedExtension> {
    let big_n = e.dim();
    let n = a.dim();
    if e.field() != a.field() || pi.field() != a.field() || s.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    if pi.rows() != n || pi.cols() != big_n || s.rows() != big_n || s.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n * big_n,
            found: pi.rows() * pi.cols(),
        });
    }
    e.require_jacobi_jordan()?;
    a.require_jacobi_jordan()?;
    for i in 0..big_n {
        for j in 0..big_n {
            let lhs = pi.mul_vec(e.product(i, j));
            let rhs = a.mul(&pi.column(i), &pi.column(j));
            if lhs != rhs {
                return Err(Error::NotAlgebraMap);
            }
        }
    }
    if pi.rank() != n {
        return Err(Error::NotSurjective);
    }
    if pi.mul(s) != Matrix::identity(a.field(), n) {
        return Err(Error::NotSection);
    }

    let kernel = pi.kernel();
    let m = kernel.dim();
    let field = a.field();
    let coords = |v: &[Scalar]| kernel.coordinates(v).expect("vector lies in Ker π");
    let sec = |i: usize| s.column(i);

    let mut rho = Vec::with_capacity(n);
    for i in 0..n {
        let cols: Vec<Vec<Scalar>> = kernel
            .basis()
            .iter()
            .map(|v| coords(&e.mul(&sec(i), v)))
            .collect();
        rho.push(Matrix::from_columns(field, m, &cols));
    }
    let mut theta = BilinearVMap::zero(field, n, m);
    for i in 0..n {
        for j in 0..n {
            let v = sub_vectors(&e.mul(&sec(i), &sec(j)), &s.mul_vec(a.product(i, j)));
            theta.set(i, j, coords(&v));
        }
    }
    let mut vm = Algebra::abelian(field, default_names("v", m));
    for (k, x) in kernel.basis().iter().enumerate() {
        for (l, y) in kernel.basis().iter().enumerate() {
            vm.set_product(k, l, coords(&e.mul(x, y)));
        }
    }
    let action = ActionData::new(a.clone(), m, rho)?;
    let data = CrossedData::new(a.clone(), action, theta, vm)?;
    let mut cols: Vec<Vec<Scalar>> = (0..n).map(sec).collect();
    cols.extend(kernel.basis().iter().cloned());
    let iso = Matrix::from_columns(field, big_n, &cols);
    Ok(RecognizedExtension { data, iso, kernel })
}

/// Outcome of checking CH1–CH3 for a given `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismCheck {
    /// Fiber pairs `(k, l)` where `·_V` and `·_V'` differ.
    pub ch1: Vec<(usize, usize)>,
    /// `(i, k)` failing `a▷x = a▷'x + r(a)·'x`.
    pub ch2: Vec<(usize, usize)>,
    /// `(i, j)` failing `ϑ(a,b) + r(ab) = ϑ'(a,b) + a▷'r(b) + b▷'r(a) + r(a)·'r(b)`.
    pub ch3: Vec<(usize, usize)>,
    /// `ψ_r` as an `(n+m)`-square matrix.
    pub psi: Matrix,
    /// When CH1–CH3 hold: `ψ_r` multiplies correctly and `ψ_{−r}` inverts it.
    pub iso_verified: bool,
}

impl MorphismCheck {
    pub fn is_morphism(&self) -> bool {
        self.ch1.is_empty() && self.ch2.is_empty() && self.ch3.is_empty()
    }
}

fn check_same_shape(d: &CrossedData, dp: &CrossedData) -> Result<()> {
    if d.field() != dp.field() {
        return Err(Error::FieldMismatch);
    }
    if !d.base.same_structure(&dp.base) || d.fiber_dim != dp.fiber_dim {
        return Err(Error::DimensionMismatch {
            expected: d.base.dim() + d.fiber_dim,
            found: dp.base.dim() + dp.fiber_dim,
        });
    }
    Ok(())
}

/// `ψ_r(a, x) = (a, r(a) + x)` for `r` given as an `m × n` matrix.
pub fn psi_matrix(field: FieldSpec, r: &Matrix) -> Matrix {
    let n = r.cols();
    let m = r.rows();
    let top = Matrix::identity(field, n).hstack(&Matrix::zeros(field, n, m));
    let bottom = r.hstack(&Matrix::identity(field, m));
    top.vstack(&bottom)
}

/// Checks whether `ψ_r: A # V → A #' V` is an algebra map.
pub fn morphism_from_r(d: &CrossedData, dp: &CrossedData, r: &Matrix) -> Result<MorphismCheck> {
    check_same_shape(d, dp)?;
    let n = d.base.dim();
    let m = d.fiber_dim;
    if r.rows() != m || r.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: m * n,
            found: r.rows() * r.cols(),
        });
    }
    let field = d.field();
    let vm = &dp.fiber_mult;
    let mut ch1 = Vec::new();
    for k in 0..m {
        for l in 0..m {
            if d.fiber_mult.product(k, l) != vm.product(k, l) {
                ch1.push((k, l));
            }
        }
    }
    let mut ch2 = Vec::new();
    for i in 0..n {
        let ri = r.column(i);
        for k in 0..m {
            let x = vm.basis_vector(k);
            let lhs = d.action.rho[i].column(k);
            let rhs = add_vectors(&dp.action.rho[i].column(k), &vm.mul(&ri, &x));
            if lhs != rhs {
                ch2.push((i, k));
            }
        }
    }
    let mut ch3 = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = add_vectors(d.cocycle.get(i, j), &r.mul_vec(d.base.product(i, j)));
            let mut rhs = dp.cocycle.get(i, j).to_vec();
            rhs = add_vectors(&rhs, &dp.action.rho[i].mul_vec(&r.column(j)));
            rhs = add_vectors(&rhs, &dp.action.rho[j].mul_vec(&r.column(i)));
            rhs = add_vectors(&rhs, &vm.mul(&r.column(i), &r.column(j)));
            if lhs != rhs {
                ch3.push((i, j));
            }
        }
    }
    let psi = psi_matrix(field, r);
    let mut check = MorphismCheck {
        ch1,
        ch2,
        ch3,
        psi,
        iso_verified: false,
    };
    if check.is_morphism() {
        let src = d.product_algebra();
        let dst = dp.product_algebra();
        let dim = n + m;
        let multiplicative = (0..dim).all(|i| {
            (0..dim).all(|j| {
                check.psi.mul_vec(src.product(i, j))
                    == dst.mul(&check.psi.column(i), &check.psi.column(j))
            })
        });
        let inverse = psi_matrix(field, &r.neg());
        check.iso_verified =
            multiplicative && inverse.mul(&check.psi) == Matrix::identity(field, dim);
    }
    Ok(check)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cohomologous {
    /// `r` as an `m × n` matrix.
    Yes(Matrix),
    No,
    /// The quadratic search was not attempted within the cap.
    Unknown,
}

impl Cohomologous {
    pub fn is_yes(&self) -> bool {
        matches!(self, Cohomologous::Yes(_))
    }
}

/// Coordinate of `r(e_i)_k` among the `n·m` unknowns.
fn r_index(m: usize, i: usize, k: usize) -> usize {
    i * m + k
}

fn r_from_coords(field: FieldSpec, n: usize, m: usize, coords: &[Scalar]) -> Matrix {
    let mut r = Matrix::zeros(field, m, n);
    for i in 0..n {
        for k in 0..m {
            r.set(k, i, coords[r_index(m, i, k)].clone());
        }
    }
    r
}

/// Decides `D ≈ D'`: equal `·_V` and some `r` with
/// `a▷x = a▷'x + r(a)·'x` and
/// `ϑ = ϑ' + a▷'r(b) + b▷'r(a) + r(a)·'r(b) − r(ab)`.
///
/// With abelian `·_V` the second condition is linear in `r` and solved
/// exactly. Otherwise the first condition is solved linearly and the
/// resulting affine set of candidates is searched when it has at most `cap`
/// elements (F_p) or is a single point.
pub fn are_cohomologous(d: &CrossedData, dp: &CrossedData, cap: u64) -> Result<Cohomologous> {
    check_same_shape(d, dp)?;
    if !d.fiber_mult.same_structure(&dp.fiber_mult) {
        return Ok(Cohomologous::No);
    }
    let n = d.base.dim();
    let m = d.fiber_dim;
    let field = d.field();
    let unknowns = n * m;
    let vm = &dp.fiber_mult;

    // compa2 as M2 r = c2, rows (i, k, component).
    let mut m2 = Matrix::zeros(field, n * m * m, unknowns);
    let mut c2 = Vec::with_capacity(n * m * m);
    for i in 0..n {
        for k in 0..m {
            let diff = sub_vectors(&d.action.rho[i].column(k), &dp.action.rho[i].column(k));
            for (comp, value) in diff.into_iter().enumerate() {
                let row = (i * m + k) * m + comp;
                for q in 0..m {
                    let c = &vm.product(q, k)[comp];
                    if !c.is_zero() {
                        m2.set(row, r_index(m, i, q), c.clone());
                    }
                }
                c2.push(value);
            }
        }
    }

    if vm.is_abelian() {
        if d.action.rho != dp.action.rho {
            return Ok(Cohomologous::No);
        }
        // ϑ − ϑ' = a▷'r(b) + b▷'r(a) − r(ab), rows (pair, component).
        let pairs = sym_pairs(n);
        let mut m3 = Matrix::zeros(field, pairs.len() * m, unknowns);
        let mut c3 = Vec::with_capacity(pairs.len() * m);
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let diff = sub_vectors(d.cocycle.get(i, j), dp.cocycle.get(i, j));
            for (comp, value) in diff.into_iter().enumerate() {
                let row = p * m + comp;
                let mut add = |col: usize, c: &Scalar| {
                    if !c.is_zero() {
                        let v = m3.get(row, col) + c;
                        m3.set(row, col, v);
                    }
                };
                for q in 0..m {
                    add(r_index(m, j, q), dp.action.rho[i].get(comp, q));
                    add(r_index(m, i, q), dp.action.rho[j].get(comp, q));
                }
                for (t, c) in d.base.product(i, j).iter().enumerate() {
                    add(r_index(m, t, comp), &c.negated());
                }
                c3.push(value);
            }
        }
        return Ok(match m3.solve(&c3) {
            Some(x) => Cohomologous::Yes(r_from_coords(field, n, m, &x)),
            None => Cohomologous::No,
        });
    }

    let Some(particular) = m2.solve(&c2) else {
        return Ok(Cohomologous::No);
    };
    let kernel = m2.kernel();
    let test = |coords: &[Scalar]| -> Option<Matrix> {
        let r = r_from_coords(field, n, m, coords);
        let check = morphism_from_r(d, dp, &r).ok()?;
        check.is_morphism().then_some(r)
    };
    if kernel.is_zero() {
        return Ok(match test(&particular) {
            Some(r) => Cohomologous::Yes(r),
            None => Cohomologous::No,
        });
    }
    let Some(count) = field.count_vectors(kernel.dim()).filter(|&c| c <= cap) else {
        return Ok(Cohomologous::Unknown);
    };
    for idx in 0..count {
        let coeffs = field.vector_from_index(idx, kernel.dim());
        let mut x = particular.clone();
        for (c, b) in coeffs.iter().zip(kernel.basis()) {
            axpy(&mut x, c, b);
        }
        if let Some(r) = test(&x) {
            return Ok(Cohomologous::Yes(r));
        }
    }
    Ok(Cohomologous::No)
}

/// Linear system in the symmetric coordinates of `ϑ` expressing J2 and J4
/// for fixed `▷` and `·_V`: valid `ϑ` are the solutions of `M θ = c`.
pub fn cocycle_system(base: &Algebra, rho: &[Matrix], fiber_mult: &Algebra) -> (Matrix, Vec<Scalar>) {
    let n = base.dim();
    let m = fiber_mult.dim();
    let field = base.field();
    let pairs = sym_pairs(n);
    let unknowns = pairs.len() * m;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let coord = |i: usize, j: usize, q: usize| sym_index(n, i, j) * m + q;

    // J2: x·ϑ(a,b) = −((ab)▷x + a▷(b▷x) + b▷(a▷x))
    let action = ActionData {
        base: base.clone(),
        space_dim: m,
        rho: rho.to_vec(),
    };
    for &(i, j) in &pairs {
        let op = action
            .operator(base.product(i, j))
            .add(&rho[i].mul(&rho[j]))
            .add(&rho[j].mul(&rho[i]));
        for k in 0..m {
            let constant = op.column(k);
            for comp in 0..m {
                let mut row = zero_vector(field, unknowns);
                for q in 0..m {
                    row[coord(i, j, q)] = fiber_mult.product(k, q)[comp].clone();
                }
                rows.push(row);
                rhs.push(constant[comp].negated());
            }
        }
    }

    // J4
    for i in 0..n {
        for j in i..n {
            for l in j..n {
                for comp in 0..m {
                    let mut row = zero_vector(field, unknowns);
                    for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                        for (t, coef) in base.product(b, c).iter().enumerate() {
                            if !coef.is_zero() {
                                let idx = coord(a, t, comp);
                                row[idx] = &row[idx] + coef;
                            }
                        }
                        for q in 0..m {
                            let coef = rho[a].get(comp, q);
                            if !coef.is_zero() {
                                let idx = coord(b, c, q);
                                row[idx] = &row[idx] + coef;
                            }
                        }
                    }
                    rows.push(row);
                    rhs.push(field.zero());
                }
            }
        }
    }
    if rows.is_empty() {
        return (Matrix::zeros(field, 0, unknowns), rhs);
    }
    (Matrix::from_rows(field, rows).expect("rectangular"), rhs)
}

/// Linear system in the entries of `▷` expressing J3 for fixed `·_V`.
/// Unknown `rho_i[p][q]` sits at `(i * m + p) * m + q`.
pub fn j3_system(n: usize, fiber_mult: &Algebra) -> Matrix {
    let m = fiber_mult.dim();
    let field = fiber_mult.field();
    let unknowns = n * m * m;
    let idx = |i: usize, p: usize, q: usize| (i * m + p) * m + q;
    let mut rows = Vec::new();
    for i in 0..n {
        for (k, l) in sym_pairs(m) {
            for comp in 0..m {
                let mut row = zero_vector(field, unknowns);
                // rho_i (x_k x_l)
                for (q, c) in fiber_mult.product(k, l).iter().enumerate() {
                    if !c.is_zero() {
                        row[idx(i, comp, q)] = &row[idx(i, comp, q)] + c;
                    }
                }
                // x_k · (rho_i x_l) + x_l · (rho_i x_k)
                for (a, b) in [(k, l), (l, k)] {
                    for p in 0..m {
                        let c = &fiber_mult.product(a, p)[comp];
                        if !c.is_zero() {
                            row[idx(i, p, b)] = &row[idx(i, p, b)] + c;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(field, 0, unknowns);
    }
    Matrix::from_rows(field, rows).expect("rectangular")
}

fn rho_from_coords(field: FieldSpec, n: usize, m: usize, coords: &[Scalar]) -> Vec<Matrix> {
    (0..n)
        .map(|i| {
            let rows = (0..m)
                .map(|p| coords[(i * m + p) * m..(i * m + p + 1) * m].to_vec())
                .collect();
            if m == 0 {
                Matrix::zeros(field, 0, 0)
            } else {
                Matrix::from_rows(field, rows).expect("rectangular")
            }
        })
        .collect()
}

/// Actions admitting at least one valid `ϑ`, for fixed base and `·_V`.
pub fn viable_actions(base: &Algebra, fiber_mult: &Algebra, cap: u64) -> Result<Vec<Vec<Matrix>>> {
    let n = base.dim();
    let m = fiber_mult.dim();
    let field = base.field();
    let ker = j3_system(n, fiber_mult).kernel();
    let count = field.count_vectors(ker.dim()).ok_or(Error::NotEnumerable)?;
    if count > cap {
        return Err(Error::CapExceeded { cap, explored: 0 });
    }
    let mut out = Vec::new();
    for idx in 0..count {
        let coeffs = field.vector_from_index(idx, ker.dim());
        let mut x = zero_vector(field, n * m * m);
        for (c, b) in coeffs.iter().zip(ker.basis()) {
            axpy(&mut x, c, b);
        }
        let rho = rho_from_coords(field, n, m, &x);
        let (sys, rhs) = cocycle_system(base, &rho, fiber_mult);
        if sys.solve(&rhs).is_some() {
            out.push(rho);
        }
    }
    Ok(out)
}

/// Seeded sampler of valid crossed systems over a prime field.
///
/// The base and `·_V` are drawn uniformly from the JJ structures of the
/// requested dimensions; `▷` uniformly among actions that admit a cocycle;
/// `ϑ` uniformly from the resulting affine space.
pub struct CrossedSampler {
    field: FieldSpec,
    jj_cache: HashMap<usize, Vec<Algebra>>,
    action_cache: HashMap<(Algebra, Algebra), Vec<Vec<Matrix>>>,
    cap: u64,
}

impl CrossedSampler {
    pub fn new(field: FieldSpec, cap: u64) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::NotEnumerable);
        }
        Ok(CrossedSampler {
            field,
            jj_cache: HashMap::new(),
            action_cache: HashMap::new(),
            cap,
        })
    }

    fn jj(&mut self, dim: usize) -> &[Algebra] {
        let field = self.field;
        self.jj_cache
            .entry(dim)
            .or_insert_with(|| enumerate::jj_algebras(field, dim).collect())
    }

    pub fn random_jj<R: Rng + ?Sized>(&mut self, dim: usize, rng: &mut R) -> Algebra {
        let list = self.jj(dim);
        list[rng.gen_range(0..list.len())].clone()
    }

    /// A valid crossed system over a uniformly random JJ base of dimension `n`.
    pub fn sample<R: Rng + ?Sized>(&mut self, n: usize, m: usize, rng: &mut R) -> Result<CrossedData> {
        let base = self.random_jj(n, rng);
        self.sample_over(&base, m, rng)
    }

    pub fn sample_over<R: Rng + ?Sized>(&mut self, base: &Algebra, m: usize, rng: &mut R) -> Result<CrossedData> {
        let field = self.field;
        let fiber = self
            .random_jj(m, rng)
            .with_names(default_names("v", m))
            .expect("matching length");
        let key = (base.clone(), fiber.clone());
        if !self.action_cache.contains_key(&key) {
            let actions = viable_actions(base, &fiber, self.cap)?;
            self.action_cache.insert(key.clone(), actions);
        }
        let actions = &self.action_cache[&key];
        let rho = actions[rng.gen_range(0..actions.len())].clone();
        let (sys, rhs) = cocycle_system(base, &rho, &fiber);
        let mut theta = sys.solve(&rhs).expect("viable action");
        for b in sys.kernel().basis() {
            axpy(&mut theta, &field.random(rng), b);
        }
        let n = base.dim();
        let cocycle = BilinearVMap::from_symmetric_coords(field, n, m, &theta);
        let action = ActionData::new(base.clone(), m, rho)?;
        CrossedData::new(base.clone(), action, cocycle, fiber)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn scalar_theta(k: FieldSpec, n: usize, entries: &[(usize, usize, i64)]) -> BilinearVMap {
        let mut t = BilinearVMap::zero(k, n, 1);
        for &(i, j, v) in entries {
            t.set_symmetric(i, j, vec![k.from_i64(v)]);
        }
        t
    }

    fn heis_data(k: FieldSpec, entries: &[(usize, usize, i64)]) -> CrossedData {
        let h = heisenberg3(k);
        let mut d = CrossedData::trivial(h, 1);
        d.cocycle = scalar_theta(k, 3, entries);
        d
    }

    #[test]
    fn sym_index_matches_pairs() {
        for n in 0..6 {
            for (p, (i, j)) in sym_pairs(n).into_iter().enumerate() {
                assert_eq!(sym_index(n, i, j), p);
                assert_eq!(sym_index(n, j, i), p);
            }
        }
    }

    #[test]
    fn trivial_data_is_valid_and_gives_direct_sum() {
        let d = CrossedData::trivial(heisenberg3(f5()), 1);
        assert!(d.validate().is_valid());
        let e = d.crossed_product().unwrap();
        assert_eq!(e.dim(), 4);
        assert!(e.is_jacobi_jordan());
        let mut expected = heisenberg3(f5());
        expected = {
            let mut a = Algebra::abelian(f5(), vec!["e".into(), "f".into(), "z".into(), "v1".into()]);
            for i in 0..3 {
                for j in 0..3 {
                    let mut v = expected.product(i, j).to_vec();
                    v.push(f5().zero());
                    a.set_product(i, j, v);
                }
            }
            a
        };
        assert_eq!(e, expected);
    }

    #[test]
    fn heisenberg_abc_cocycles_are_valid() {
        let d = heis_data(f5(), &[(0, 0, 2), (1, 1, 3), (0, 1, 4)]);
        assert!(d.validate().is_valid());
        let e = d.crossed_product().unwrap();
        // e·e = 2y, f·f = 3y, e·f = z + 4y
        let y = e.basis_vector(3);
        assert_eq!(e.product(0, 0), crate::linalg::scale_vector(&f5().from_i64(2), &y).as_slice());
        let mut ef = e.basis_vector(2);
        ef[3] = f5().from_i64(4);
        assert_eq!(e.product(0, 1), ef.as_slice());
    }

    #[test]
    fn theta_on_e_z_breaks_j4() {
        let d = heis_data(f5(), &[(0, 2, 1)]);
        let v = d.validate();
        assert_eq!(v.failing_axioms(), vec![Axiom::J4]);
        let w = v.violations.iter().find(|w| w.tuple == vec![0, 0, 1]).unwrap();
        // ϑ(e, ef) + ϑ(f, ee) + ϑ(e, fe) = 2ϑ(e, z)
        assert_eq!(w.residual, vec![f5().from_i64(2)]);
        assert!(matches!(d.crossed_product(), Err(Error::InvalidCrossedSystem(_))));
    }

    #[test]
    fn one_dim_cocycle_gives_a12() {
        let k = FieldSpec::Rationals;
        let base = Algebra::with_default_names(k, 1);
        let mut d = CrossedData::trivial(base, 1);
        d.cocycle = scalar_theta(k, 1, &[(0, 0, 1)]);
        let e = d.crossed_product().unwrap();
        assert!(e.same_structure(&a12(k)));
    }

    #[test]
    fn semidirect_examples() {
        let k = f3();
        let base = Algebra::with_default_names(k, 1);
        let f = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        let action = ActionData::new(base.clone(), 2, vec![f]).unwrap();
        let fiber = Algebra::with_default_names(k, 2);
        let e = semidirect_product(&base, &action, &fiber).unwrap();
        // (p, x)(q, y) = (0, p f(y) + q f(x)): only p·x2 = x1
        assert_eq!(e.product(0, 2), vec![k.zero(), k.one(), k.zero()].as_slice());
        assert!(e.product(0, 1).iter().all(Scalar::is_zero));
        assert!(e.is_jacobi_jordan());

        let trivial = ActionData::trivial(base.clone(), 2);
        let direct = semidirect_product(&base, &trivial, &fiber).unwrap();
        assert!(direct.is_abelian());

        // The section a ↦ (a, 0) composed with the projection is the identity
        // and is multiplicative.
        let d = CrossedData::new(base.clone(), action.clone(), BilinearVMap::zero(k, 1, 2), fiber.clone()).unwrap();
        let s = d.section_with(&Matrix::zeros(k, 2, 1));
        assert_eq!(d.projection().mul(&s), Matrix::identity(k, 1));
        let a = base.basis_vector(0);
        assert_eq!(e.mul(&s.mul_vec(&a), &s.mul_vec(&a)), s.mul_vec(&base.mul(&a, &a)));

        let bad = ActionData::new(base.clone(), 2, vec![Matrix::identity(k, 2)]).unwrap();
        assert!(matches!(
            semidirect_product(&base, &bad, &fiber),
            Err(Error::InvalidSemidirectSystem(_))
        ));
    }

    #[test]
    fn recognize_heisenberg_over_plane() {
        let k = f5();
        let h = heisenberg3(k);
        let plane = Algebra::with_default_names(k, 2);
        let pi = Matrix::from_i64(k, &[&[1, 0, 0], &[0, 1, 0]]);
        let s = pi.transpose();
        let rec = recognize_extension(&h, &plane, &pi, &s).unwrap();
        assert!(rec.data.action.is_trivial());
        assert!(rec.data.fiber_mult.is_abelian());
        assert_eq!(rec.data.cocycle.get(0, 1), &[k.one()]);
        assert_eq!(rec.data.cocycle.get(0, 0), &[k.zero()]);
        assert!(rec.data.validate().is_valid());
    }

    #[test]
    fn recognize_direct_product_and_a12() {
        let k = f5();
        let d = CrossedData::trivial(heisenberg3(k), 2);
        let e = d.crossed_product().unwrap();
        let rec = recognize_extension(&e, &d.base, &d.projection(), &d.section_with(&Matrix::zeros(k, 2, 3))).unwrap();
        assert_eq!(rec.data, d);

        let a = a12(k);
        let base = Algebra::with_default_names(k, 1);
        let pi = Matrix::from_i64(k, &[&[1, 0]]);
        let rec = recognize_extension(&a, &base, &pi, &pi.transpose()).unwrap();
        assert_eq!(rec.data.cocycle.get(0, 0), &[k.one()]);
    }

    #[test]
    fn recognize_rejects_bad_maps() {
        let k = f5();
        let h = heisenberg3(k);
        let plane = Algebra::with_default_names(k, 2);
        // Projection onto (e, z) is not multiplicative: e·f = z maps to 0 ≠ π(e)π(f).
        let pi = Matrix::from_i64(k, &[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(
            recognize_extension(&h, &plane, &pi, &pi.transpose()),
            Err(Error::NotAlgebraMap)
        );
        let pi = Matrix::from_i64(k, &[&[1, 0, 0], &[0, 1, 0]]);
        let s = Matrix::from_i64(k, &[&[1, 0], &[0, 2], &[0, 0]]);
        assert_eq!(recognize_extension(&h, &plane, &pi, &s), Err(Error::NotSection));
        let line = Algebra::with_default_names(k, 2);
        let pi = Matrix::from_i64(k, &[&[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(
            recognize_extension(&h, &line, &pi, &Matrix::zeros(k, 3, 2)),
            Err(Error::NotSurjective)
        );
    }

    #[test]
    fn morphism_examples() {
        let k = f5();
        let d = heis_data(k, &[(0, 0, 1), (0, 1, 2)]);
        let id = morphism_from_r(&d, &d, &Matrix::zeros(k, 1, 3)).unwrap();
        assert!(id.is_morphism());
        assert!(id.iso_verified);
        assert_eq!(id.psi, Matrix::identity(k, 4));

        // ϑ'(e,f) − ϑ(e,f) = t with r(z) = t.
        let t = 3;
        let dp = heis_data(k, &[(0, 0, 1), (0, 1, 2 + t)]);
        let r = Matrix::from_i64(k, &[&[0, 0, t]]);
        let m = morphism_from_r(&d, &dp, &r).unwrap();
        assert!(m.is_morphism());
        assert!(m.iso_verified);

        // r(z) = 1 between data differing in the (e, e) slot.
        let dq = heis_data(k, &[(0, 0, 2), (0, 1, 2)]);
        let r = Matrix::from_i64(k, &[&[0, 0, 1]]);
        let m = morphism_from_r(&d, &dq, &r).unwrap();
        assert!(m.ch3.contains(&(0, 0)));
    }

    #[test]
    fn cohomologous_examples() {
        let k = f5();
        let d = heis_data(k, &[(0, 0, 1), (0, 1, 2)]);
        assert_eq!(
            are_cohomologous(&d, &d, 1000).unwrap(),
            Cohomologous::Yes(Matrix::zeros(k, 1, 3))
        );
        let dp = heis_data(k, &[(0, 0, 1), (0, 1, 4)]);
        match are_cohomologous(&d, &dp, 1000).unwrap() {
            Cohomologous::Yes(r) => {
                assert!(morphism_from_r(&d, &dp, &r).unwrap().is_morphism());
                assert_eq!(r.get(0, 2), &k.from_i64(2));
            }
            other => panic!("expected yes, got {other:?}"),
        }
        let a = heis_data(k, &[]);
        let b = heis_data(k, &[(0, 0, 1)]);
        assert_eq!(are_cohomologous(&a, &b, 1000).unwrap(), Cohomologous::No);
    }

    #[test]
    fn different_fiber_products_are_not_cohomologous() {
        let k = f3();
        let base = Algebra::with_default_names(k, 1);
        let d = CrossedData::trivial(base.clone(), 1);
        let mut dp = d.clone();
        dp.fiber_mult.set_product(0, 0, vec![k.one()]);
        assert_eq!(are_cohomologous(&d, &dp, 100).unwrap(), Cohomologous::No);
    }

    /// Brute-force JJ check of the product on every data of a small shape.
    #[test]
    fn validation_matches_product_jacobi_exhaustively() {
        let k = f3();
        let base = Algebra::with_default_names(k, 1);
        // n = m = 1: ▷ (1), ϑ (1), ·_V (1) entries: 27 data.
        for idx in 0..27u64 {
            let v = k.vector_from_index(idx, 3);
            let action = ActionData::new(base.clone(), 1, vec![Matrix::from_rows(k, vec![vec![v[0].clone()]]).unwrap()]).unwrap();
            let mut theta = BilinearVMap::zero(k, 1, 1);
            theta.set(0, 0, vec![v[1].clone()]);
            let mut vm = Algebra::with_default_names(k, 1);
            vm.set_product(0, 0, vec![v[2].clone()]);
            let d = CrossedData::new(base.clone(), action, theta, vm).unwrap();
            assert_eq!(d.validate().is_valid(), d.product_algebra().is_jacobi_jordan(), "data {idx}");
        }
    }

    #[test]
    fn validation_matches_product_jacobi_on_random_data() {
        let k = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut sampler = CrossedSampler::new(k, 1 << 16).unwrap();
        for _ in 0..300 {
            let n = rng.gen_range(1..=2);
            let m = rng.gen_range(1..=2);
            let base = sampler.random_jj(n, &mut rng);
            let rho = (0..n)
                .map(|_| Matrix::from_rows(k, (0..m).map(|_| (0..m).map(|_| k.random(&mut rng)).collect()).collect()).unwrap())
                .collect();
            let mut theta = BilinearVMap::zero(k, n, m);
            for (i, j) in sym_pairs(n) {
                theta.set_symmetric(i, j, (0..m).map(|_| k.random(&mut rng)).collect());
            }
            let vm = sampler.random_jj(m, &mut rng);
            let d = CrossedData::new(base.clone(), ActionData::new(base, m, rho).unwrap(), theta, vm).unwrap();
            assert_eq!(d.validate().is_valid(), d.product_algebra().is_jacobi_jordan());
        }
        // Sampled systems are always valid, and their products are JJ.
        for _ in 0..50 {
            let d = sampler.sample(rng.gen_range(1..=2), rng.gen_range(1..=2), &mut rng).unwrap();
            assert!(d.validate().is_valid());
            assert!(d.crossed_product().unwrap().is_jacobi_jordan());
        }
    }

    #[test]
    fn recognition_round_trips() {
        let k = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut sampler = CrossedSampler::new(k, 1 << 16).unwrap();
        for _ in 0..40 {
            let n = rng.gen_range(1..=2);
            let m = rng.gen_range(1..=2);
            let d = sampler.sample(n, m, &mut rng).unwrap();
            let e = d.crossed_product().unwrap();
            let canonical = recognize_extension(&e, &d.base, &d.projection(), &d.section_with(&Matrix::zeros(k, m, n))).unwrap();
            assert_eq!(canonical.data.action, d.action);
            assert_eq!(canonical.data.cocycle, d.cocycle);
            assert!(canonical.data.fiber_mult.same_structure(&d.fiber_mult));

            let t = Matrix::from_rows(k, (0..m).map(|_| (0..n).map(|_| k.random(&mut rng)).collect()).collect()).unwrap();
            let rec = recognize_extension(&e, &d.base, &d.projection(), &d.section_with(&t)).unwrap();
            assert!(rec.data.validate().is_valid());
            match are_cohomologous(&rec.data, &d, 1 << 16).unwrap() {
                Cohomologous::Yes(r) => {
                    let check = morphism_from_r(&rec.data, &d, &r).unwrap();
                    assert!(check.iso_verified);
                }
                other => panic!("expected yes, got {other:?}"),
            }
        }
    }
}
