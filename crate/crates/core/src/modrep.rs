//! JJ modules given by action matrices, their representations, and the
//! regular and dual actions of an algebra.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

/// An action `▷` of `base` on `k^space_dim`; `rho[i]` is `x ↦ e_i ▷ x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionData {
    pub base: Algebra,
    pub space_dim: usize,
    pub rho: Vec<Matrix>,
}

/// Basis pair `(i, j)` where `rho(e_i e_j) ≠ −(rho_i rho_j + rho_j rho_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDefect {
    pub pair: (usize, usize),
    pub lhs: Matrix,
    pub rhs: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    /// `phi[i] = −rho[i]`.
    pub phi: Vec<Matrix>,
    /// `phi(e_i e_j) = phi_i phi_j + phi_j phi_i` on all pairs.
    pub jordan_morphism: bool,
}

impl ActionData {
    pub fn new(base: Algebra, space_dim: usize, rho: Vec<Matrix>) -> Result<Self> {
        if rho.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: rho.len(),
            });
        }
        for m in &rho {
            if m.field() != base.field() {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != space_dim || m.cols() != space_dim {
                return Err(Error::DimensionMismatch {
                    expected: space_dim,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        Ok(ActionData {
            base,
            space_dim,
            rho,
        })
    }

    pub fn trivial(base: Algebra, space_dim: usize) -> Self {
        let z = Matrix::zeros(base.field(), space_dim, space_dim);
        let rho = vec![z; base.dim()];
        ActionData {
            base,
            space_dim,
            rho,
        }
    }

    /// Operator of a general element `a`.
    pub fn operator(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.base.field(), self.space_dim, self.space_dim);
        for (c, r) in a.iter().zip(&self.rho) {
            if !c.is_zero() {
                m = m.add(&r.scale(c));
            }
        }
        m
    }

    /// `a ▷ x`
    pub fn act(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.base.field().zero(); self.space_dim];
        for (c, r) in a.iter().zip(&self.rho) {
            if !c.is_zero() {
                crate::linalg::axpy(&mut out, c, &r.mul_vec(x));
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.rho.iter().all(Matrix::is_zero)
    }

    /// Every pair `i ≤ j` failing the module identity.
    pub fn module_defects(&self) -> Vec<ModuleDefect> {
        let n = self.base.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let lhs = self.operator(self.base.product(i, j));
                let anti = self.rho[i].mul(&self.rho[j]).add(&self.rho[j].mul(&self.rho[i]));
                let rhs = anti.neg();
                if lhs != rhs {
                    out.push(ModuleDefect {
                        pair: (i, j),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        out
    }

    pub fn is_jj_module(&self) -> bool {
        self.module_defects().is_empty()
    }

    pub fn to_representation(&self) -> Representation {
        let phi: Vec<Matrix> = self.rho.iter().map(Matrix::neg).collect();
        let n = self.base.dim();
        let op = |a: &[Scalar]| {
            let mut m = Matrix::zeros(self.base.field(), self.space_dim, self.space_dim);
            for (c, p) in a.iter().zip(&phi) {
                if !c.is_zero() {
                    m = m.add(&p.scale(c));
                }
            }
            m
        };
        let jordan_morphism = (0..n).all(|i| {
            (i..n).all(|j| {
                op(self.base.product(i, j)) == phi[i].mul(&phi[j]).add(&phi[j].mul(&phi[i]))
            })
        });
        Representation {
            phi,
            jordan_morphism,
        }
    }

    /// `rho_i rho_j = −rho_j rho_i` for all `i, j`.
    pub fn is_anticommuting(&self) -> bool {
        let n = self.rho.len();
        (0..n).all(|i| {
            (i..n).all(|j| {
                self.rho[i]
                    .mul(&self.rho[j])
                    .add(&self.rho[j].mul(&self.rho[i]))
                    .is_zero()
            })
        })
    }
}

/// The regular action on `A` and the dual action on `A*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalActions {
    pub regular: ActionData,
    pub dual: ActionData,
}

pub fn canonical_actions(a: &Algebra) -> Result<CanonicalActions> {
    a.require_jacobi_jordan()?;
    let rho: Vec<Matrix> = (0..a.dim())
        .map(|i| a.left_mult_matrix(&a.basis_vector(i)))
        .collect();
    let dual_rho = rho.iter().map(Matrix::transpose).collect();
    Ok(CanonicalActions {
        regular: ActionData {
            base: a.clone(),
            space_dim: a.dim(),
            rho,
        },
        dual: ActionData {
            base: a.clone(),
            space_dim: a.dim(),
            rho: dual_rho,
        },
    })
}

/// Kernel of the regular representation `a ↦ L_a`, which is the annihilator
/// of `A`; the regular representation is faithful iff this is zero.
pub fn regular_kernel(a: &Algebra) -> Subspace {
    a.leibniz_center()
}
