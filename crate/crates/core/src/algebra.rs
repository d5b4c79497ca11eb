//! Finite-dimensional algebras given by structure constants, with the axiom
//! checks and series that the rest of the crate builds on.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Matrix, Subspace};

/// Algebra with basis `e_0..e_{n-1}`; `gamma[i * n + j]` holds `e_i · e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    names: Vec<String>,
    gamma: Vec<Vec<Scalar>>,
}

/// A basis triple where the cyclic Jacobi sum does not vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Scalar>,
}

/// A basis triple violating `(ab)c = a(bc) + (ac)b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub triple: (usize, usize, usize),
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub commutative: bool,
    pub jacobi_defects: Vec<JacobiDefect>,
    pub leibniz: bool,
    /// `None` when the algebra is not commutative.
    pub jordan: Option<bool>,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub solvability_step: Option<usize>,
    pub nilpotency_step: Option<usize>,
    pub center: Subspace,
    pub metabelian: bool,
}

impl AlgebraReport {
    pub fn is_jacobi_jordan(&self) -> bool {
        self.commutative && self.jacobi_defects.is_empty()
    }
}

/// Jordan probing enumerates every element when the algebra has at most this
/// many elements.
pub const JORDAN_EXHAUSTIVE_LIMIT: u64 = 20_000;

impl Algebra {
    /// The algebra with all products zero.
    pub fn abelian(field: FieldSpec, names: Vec<String>) -> Self {
        let dim = names.len();
        Algebra {
            field,
            dim,
            names,
            gamma: vec![zero_vector(field, dim); dim * dim],
        }
    }

    /// Abelian algebra with basis names `b1..bn`.
    pub fn with_default_names(field: FieldSpec, dim: usize) -> Self {
        Algebra::abelian(field, default_names("b", dim))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.gamma[i * self.dim + j]
    }

    pub fn set_product(&mut self, i: usize, j: usize, value: Vec<Scalar>) {
        assert_eq!(value.len(), self.dim, "product vector length");
        debug_assert!(value.iter().all(|s| s.field() == self.field));
        self.gamma[i * self.dim + j] = value;
    }

    /// Sets both `e_i·e_j` and `e_j·e_i`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: Vec<Scalar>) {
        self.set_product(j, i, value.clone());
        self.set_product(i, j, value);
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        zero_vector(self.field, self.dim)
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if v.iter().any(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        Ok(self.mul(u, v))
    }

    /// Bilinear product; panics on length mismatch.
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(u.len(), self.dim, "left factor length");
        assert_eq!(v.len(), self.dim, "right factor length");
        let mut out = self.zero_vector();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let g = self.product(i, j);
                if !is_zero_vector(g) {
                    axpy(&mut out, &(a * b), g);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ u·x`; column `j` is `u·e_j`.
    pub fn left_mult_matrix(&self, u: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(u, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x ↦ x·u`.
    pub fn right_mult_matrix(&self, u: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(&self.basis_vector(j), u))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Equality of fields and structure constants, ignoring basis names.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.gamma == other.gamma
    }

    pub fn is_abelian(&self) -> bool {
        self.gamma.iter().all(|g| is_zero_vector(g))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Cyclic sum `a(bc) + b(ca) + c(ab)`.
    pub fn jacobi_sum(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        let mut s = self.mul(a, &self.mul(b, c));
        let t = self.mul(b, &self.mul(c, a));
        let u = self.mul(c, &self.mul(a, b));
        for ((x, y), z) in s.iter_mut().zip(&t).zip(&u) {
            *x += y;
            *x += z;
        }
        s
    }

    /// Every basis triple (up to cyclic rotation) with a nonzero Jacobi sum.
    pub fn jacobi_defects(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let t = (i, j, l);
                    if (j, l, i) < t || (l, i, j) < t {
                        continue;
                    }
                    let residual = self.jacobi_sum(
                        &self.basis_vector(i),
                        &self.basis_vector(j),
                        &self.basis_vector(l),
                    );
                    if !is_zero_vector(&residual) {
                        out.push(JacobiDefect { triple: t, residual });
                    }
                }
            }
        }
        out
    }

    pub fn is_jacobi_jordan(&self) -> bool {
        self.is_commutative() && self.jacobi_defects().is_empty()
    }

    pub fn require_jacobi_jordan(&self) -> Result<()> {
        if self.is_jacobi_jordan() {
            Ok(())
        } else {
            Err(Error::NotJacobiJordan)
        }
    }

    /// First basis triple violating the Leibniz law, if any.
    pub fn leibniz_witness(&self) -> Option<LeibnizWitness> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (a, b, c) = (
                        self.basis_vector(i),
                        self.basis_vector(j),
                        self.basis_vector(l),
                    );
                    let lhs = self.mul(self.product(i, j), &c);
                    let mut rhs = self.mul(&a, self.product(j, l));
                    let extra = self.mul(self.product(i, l), &b);
                    for (x, y) in rhs.iter_mut().zip(&extra) {
                        *x += y;
                    }
                    if lhs != rhs {
                        return Some(LeibnizWitness {
                            triple: (i, j, l),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_leibniz(&self) -> bool {
        self.leibniz_witness().is_none()
    }

    /// Elements `a` on which the Jordan identity is probed.
    pub fn jordan_probe_set(&self) -> Vec<Vec<Scalar>> {
        if let Some(count) = self.field.count_vectors(self.dim) {
            if count <= JORDAN_EXHAUSTIVE_LIMIT {
                return (0..count)
                    .map(|idx| self.field.vector_from_index(idx, self.dim))
                    .collect();
            }
        }
        let n = self.dim;
        let e = |i| self.basis_vector(i);
        let mut probes: Vec<Vec<Scalar>> = (0..n).map(e).collect();
        for i in 0..n {
            for j in i + 1..n {
                probes.push(crate::linalg::add_vectors(&e(i), &e(j)));
                probes.push(sub_vectors(&e(i), &e(j)));
                for l in j + 1..n {
                    let s = crate::linalg::add_vectors(&e(i), &e(j));
                    probes.push(crate::linalg::add_vectors(&s, &e(l)));
                }
            }
        }
        probes
    }

    /// Jordan identity `(a²b)a = a²(ba)` on the probe set, against every basis `b`.
    pub fn is_jordan(&self) -> Result<bool> {
        if !self.is_commutative() {
            return Err(Error::NotCommutative);
        }
        for a in self.jordan_probe_set() {
            let a2 = self.mul(&a, &a);
            for j in 0..self.dim {
                let b = self.basis_vector(j);
                let lhs = self.mul(&self.mul(&a2, &b), &a);
                let rhs = self.mul(&a2, &self.mul(&b, &a));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    /// Span of all products `u·w` with `u ∈ U`, `w ∈ W`.
    pub fn subspace_product(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for a in u.basis() {
            for b in w.basis() {
                let p = self.mul(a, b);
                if !is_zero_vector(&p) {
                    vectors.push(p);
                }
            }
        }
        Subspace::span(self.field, self.dim, vectors)
    }

    /// `A' = A·A`.
    pub fn derived_algebra(&self) -> Subspace {
        Subspace::span(
            self.field,
            self.dim,
            self.gamma.iter().filter(|g| !is_zero_vector(g)).cloned(),
        )
    }

    fn series_cap(&self) -> usize {
        2 * self.dim + 2
    }

    /// `A⁽¹⁾, A⁽²⁾, …` until a term is zero or repeats.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.derived_algebra()];
        while out.len() < self.series_cap() {
            let last = out.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.subspace_product(last, last);
            if &next == last {
                break;
            }
            out.push(next);
        }
        out
    }

    /// `A¹ = A, A², …` until a term is zero or repeats.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.full_space()];
        while out.len() < self.series_cap() {
            let last = out.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let k = out.len();
            // A^{k+1} = Σ_{i=1..k} A^i · A^{k+1-i}
            let mut next = Subspace::zero(self.field, self.dim);
            for i in 1..=k {
                let p = self.subspace_product(&out[i - 1], &out[k - i]);
                next = next.sum(&p).expect("same ambient");
            }
            if &next == out.last().expect("nonempty") {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Least `m` with `A⁽ᵐ⁾ = 0`.
    pub fn solvability_step(&self) -> Option<usize> {
        if self.dim == 0 {
            return Some(0);
        }
        let s = self.derived_series();
        s.last().filter(|t| t.is_zero()).map(|_| s.len())
    }

    /// Least `m` with `Aᵐ = 0`.
    pub fn nilpotency_step(&self) -> Option<usize> {
        if self.dim == 0 {
            return Some(1);
        }
        let s = self.lower_central_series();
        s.last().filter(|t| t.is_zero()).map(|_| s.len())
    }

    /// `Z(A) = { z : z·A = A·z = 0 }`.
    pub fn leibniz_center(&self) -> Subspace {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, 2 * n * n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    m.set(j * n + k, i, self.product(i, j)[k].clone());
                    m.set(n * n + j * n + k, i, self.product(j, i)[k].clone());
                }
            }
        }
        m.kernel()
    }

    /// `(ab)(cd) = 0` for all elements.
    pub fn is_metabelian(&self) -> bool {
        let d = self.derived_algebra();
        d.basis()
            .iter()
            .all(|u| d.basis().iter().all(|v| is_zero_vector(&self.mul(u, v))))
    }

    pub fn analyze(&self) -> AlgebraReport {
        let commutative = self.is_commutative();
        let dims = |s: Vec<Subspace>| s.iter().map(Subspace::dim).collect();
        AlgebraReport {
            commutative,
            jacobi_defects: self.jacobi_defects(),
            leibniz: self.is_leibniz(),
            jordan: self.is_jordan().ok(),
            derived_series_dims: dims(self.derived_series()),
            lower_central_dims: dims(self.lower_central_series()),
            solvability_step: self.solvability_step(),
            nilpotency_step: self.nilpotency_step(),
            center: self.leibniz_center(),
            metabelian: self.is_metabelian(),
        }
    }

    /// Human-readable linear combination of basis names.
    pub fn format_vector(&self, v: &[Scalar]) -> String {
        format_terms(&self.names, v)
    }
}

pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `2*x + y`, or `0` for the zero vector.
pub fn format_terms(names: &[String], v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(s, _)| !s.is_zero())
        .map(|(s, n)| {
            if s.is_one() {
                n.clone()
            } else {
                format!("{s}*{n}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "basis {}", self.names.join(" "))?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.product(i, j);
                if !is_zero_vector(p) {
                    writeln!(
                        f,
                        "{} * {} = {}",
                        self.names[i],
                        self.names[j],
                        self.format_vector(p)
                    )?;
                }
            }
        }
        Ok(())
    }
}
