//! Invariant bilinear forms `B(a·b, c) = B(a, b·c)` and the search for a
//! nondegenerate one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpace {
    /// Gram matrices `B[p][q] = B(e_p, e_q)` spanning the invariant forms.
    pub basis_forms: Vec<Matrix>,
    /// `{v : B(v, ·) = 0}` for every invariant `B`.
    pub left_radical: Subspace,
    /// `{v : B(·, v) = 0}` for every invariant `B`.
    pub right_radical: Subspace,
}

impl FormSpace {
    pub fn dim(&self) -> usize {
        self.basis_forms.len()
    }

    /// `Σ c_i B_i`
    pub fn combination(&self, coeffs: &[Scalar], n: usize, field: crate::field::FieldSpec) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for (c, b) in coeffs.iter().zip(&self.basis_forms) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFrobeniusWitness {
    /// Every invariant form vanishes on `vector` from the given side.
    Radical { vector: Vec<Scalar>, side: RadicalSide },
    /// Every combination of the basis forms over F_p was tried.
    ExhaustedSearch { candidates: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobeniusVerdict {
    Frobenius(Matrix),
    NotFrobenius(NotFrobeniusWitness),
    Undetermined { trials: u64 },
}

/// Exact kernel of `B(e_i e_j, e_l) − B(e_i, e_j e_l) = 0` over all triples.
pub fn invariant_form_space(a: &Algebra) -> FormSpace {
    let n = a.dim();
    let k = a.field();
    let mut m = Matrix::zeros(k, n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let row = (i * n + j) * n + l;
                for (p, c) in a.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        let v = m.get(row, p * n + l) + c;
                        m.set(row, p * n + l, v);
                    }
                }
                for (q, c) in a.product(j, l).iter().enumerate() {
                    if !c.is_zero() {
                        let v = m.get(row, i * n + q) - c;
                        m.set(row, i * n + q, v);
                    }
                }
            }
        }
    }
    let kernel = m.kernel();
    let basis_forms: Vec<Matrix> = kernel
        .basis()
        .iter()
        .map(|v| {
            Matrix::from_rows(k, v.chunks(n).map(<[Scalar]>::to_vec).collect())
                .unwrap_or_else(|_| Matrix::zeros(k, n, n))
        })
        .collect();

    // v in the left radical iff Bᵀ v = 0 for every basis form.
    let stack = |forms: Vec<Matrix>| {
        forms
            .into_iter()
            .fold(Matrix::zeros(k, 0, n), |acc, f| acc.vstack(&f))
            .kernel()
    };
    let left_radical = stack(basis_forms.iter().map(Matrix::transpose).collect());
    let right_radical = stack(basis_forms.clone());
    FormSpace {
        basis_forms,
        left_radical,
        right_radical,
    }
}

/// Invariance of `b` checked on all basis triples.
pub fn is_invariant(a: &Algebra, b: &Matrix) -> bool {
    let n = a.dim();
    let form = |u: &[Scalar], v: &[Scalar]| crate::linalg::dot(u, &b.mul_vec(v));
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|l| {
                let ei = a.basis_vector(i);
                let el = a.basis_vector(l);
                form(a.product(i, j), &el) == form(&ei, a.product(j, l))
            })
        })
    })
}

fn nondegenerate(b: &Matrix) -> bool {
    b.determinant().map(|d| !d.is_zero()).unwrap_or(false)
}

/// Decides whether `a` carries a nondegenerate invariant form.
///
/// Over F_p the search is exhaustive when `p^d ≤ exhaustive_cap` (`d` the
/// dimension of the form space); otherwise `trials` seeded random
/// combinations are tried.
pub fn is_frobenius(a: &Algebra, trials: u64, seed: u64, exhaustive_cap: u64) -> FrobeniusVerdict {
    let n = a.dim();
    let k = a.field();
    let space = invariant_form_space(a);
    if let Some(v) = space.left_radical.basis().first() {
        return FrobeniusVerdict::NotFrobenius(NotFrobeniusWitness::Radical {
            vector: v.clone(),
            side: RadicalSide::Left,
        });
    }
    if let Some(v) = space.right_radical.basis().first() {
        return FrobeniusVerdict::NotFrobenius(NotFrobeniusWitness::Radical {
            vector: v.clone(),
            side: RadicalSide::Right,
        });
    }
    let d = space.dim();
    if n == 0 {
        return FrobeniusVerdict::Frobenius(Matrix::zeros(k, 0, 0));
    }

    let mut quick: Vec<Matrix> = space.basis_forms.clone();
    quick.push(space.combination(&vec![k.one(); d], n, k));
    if let Some(b) = quick.into_iter().find(nondegenerate) {
        return FrobeniusVerdict::Frobenius(b);
    }

    if let Some(count) = k.count_vectors(d).filter(|&c| c <= exhaustive_cap) {
        for idx in 1..count {
            let b = space.combination(&k.vector_from_index(idx, d), n, k);
            if nondegenerate(&b) {
                return FrobeniusVerdict::Frobenius(b);
            }
        }
        return FrobeniusVerdict::NotFrobenius(NotFrobeniusWitness::ExhaustedSearch {
            candidates: count,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = (0..d).map(|_| k.random(&mut rng)).collect();
        let b = space.combination(&coeffs, n, k);
        if nondegenerate(&b) {
            return FrobeniusVerdict::Frobenius(b);
        }
    }
    FrobeniusVerdict::Undetermined { trials }
}
