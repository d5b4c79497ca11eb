//! The operator `R(a ⊗ b) = α b ⊗ a + c ⊗ (a·b)` for a central `c` and the
//! quantum Yang–Baxter equation `R¹²R²³R¹² = R²³R¹²R²³`.
//!
//! Tensors use the lexicographic basis: `e_i ⊗ e_j` has index `i·n + j`.

use rand::Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{is_zero_vector, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbContext {
    pub algebra: Algebra,
    pub alpha: Scalar,
    /// `β z` (or `βy + γz`), folded into one central vector.
    pub central: Vec<Scalar>,
    /// `n² × n²`
    pub r: Matrix,
}

pub fn build_r(a: &Algebra, alpha: &Scalar, central: &[Scalar]) -> Result<YbContext> {
    let n = a.dim();
    let k = a.field();
    if central.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: central.len(),
        });
    }
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if is_zero_vector(central) {
        return Err(Error::ZeroCentral);
    }
    if !a.leibniz_center().contains_vector(central) {
        return Err(Error::NotCentral);
    }
    let mut r = Matrix::zeros(k, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            r.set(j * n + i, col, alpha.clone());
            for (p, c) in central.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (q, d) in a.product(i, j).iter().enumerate() {
                    if !d.is_zero() {
                        let row = p * n + q;
                        let v = r.get(row, col) + &(c * d);
                        r.set(row, col, v);
                    }
                }
            }
        }
    }
    Ok(YbContext {
        algebra: a.clone(),
        alpha: alpha.clone(),
        central: central.to_vec(),
        r,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QybeCheck {
    pub holds: bool,
    pub residual_rank: usize,
}

/// `R¹² = R ⊗ Id`, `R²³ = Id ⊗ R` on the `n³`-dimensional cube.
pub fn braid_residual(ctx: &YbContext) -> Matrix {
    let n = ctx.algebra.dim();
    let id = Matrix::identity(ctx.algebra.field(), n);
    let r12 = ctx.r.kron(&id).expect("same field");
    let r23 = id.kron(&ctx.r).expect("same field");
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    lhs.sub(&rhs)
}

pub fn check_qybe(ctx: &YbContext) -> QybeCheck {
    let residual = braid_residual(ctx);
    let residual_rank = residual.rank();
    QybeCheck {
        holds: residual_rank == 0,
        residual_rank,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub leibniz: bool,
    /// `char = 2` or nilpotency step ≤ 3, for JJ inputs.
    pub nilpotent_prediction: Option<bool>,
    pub pairs_checked: u64,
    /// `(α, c)` where the QYBE verdict differs from `leibniz`.
    pub leibniz_counterexamples: Vec<(Scalar, Vec<Scalar>)>,
    /// `(α, c)` where the QYBE verdict differs from the nilpotency prediction.
    pub nilpotency_counterexamples: Vec<(Scalar, Vec<Scalar>)>,
}

impl EquivalenceReport {
    pub fn consistent(&self) -> bool {
        self.leibniz_counterexamples.is_empty() && self.nilpotency_counterexamples.is_empty()
    }
}

/// How `(α, c)` pairs are chosen.
pub enum PairSource<'a> {
    /// Every `α ≠ 0` and every nonzero central `c`; F_p only.
    Exhaustive,
    Sampled { count: u64, rng: &'a mut dyn rand::RngCore },
}

/// Compares the QYBE verdict with `is_leibniz` for the chosen pairs.
pub fn qybe_leibniz_equivalence(a: &Algebra, source: PairSource<'_>) -> Result<EquivalenceReport> {
    let k = a.field();
    let center = a.leibniz_center();
    if center.is_zero() {
        return Err(Error::EmptyCenter);
    }
    let leibniz = a.is_leibniz();
    let nilpotent_prediction = a
        .is_jacobi_jordan()
        .then(|| k.characteristic() == 2 || a.nilpotency_step().is_some_and(|s| s <= 3));
    let pairs: Vec<(Scalar, Vec<Scalar>)> = match source {
        PairSource::Exhaustive => {
            let centrals: Vec<Vec<Scalar>> = center
                .elements()?
                .into_iter()
                .filter(|v| !is_zero_vector(v))
                .collect();
            let mut out = Vec::new();
            for alpha in k.units()? {
                for c in &centrals {
                    out.push((alpha.clone(), c.clone()));
                }
            }
            out
        }
        PairSource::Sampled { count, rng } => (0..count)
            .map(|_| {
                let alpha = k.random_nonzero(rng);
                let c = random_central(a, rng).expect("center is nonzero");
                (alpha, c)
            })
            .collect(),
    };
    let mut report = EquivalenceReport {
        leibniz,
        nilpotent_prediction,
        pairs_checked: 0,
        leibniz_counterexamples: Vec::new(),
        nilpotency_counterexamples: Vec::new(),
    };
    for (alpha, c) in pairs {
        let holds = check_qybe(&build_r(a, &alpha, &c)?).holds;
        report.pairs_checked += 1;
        if holds != leibniz {
            report.leibniz_counterexamples.push((alpha.clone(), c.clone()));
        }
        if nilpotent_prediction.is_some_and(|p| p != holds) {
            report.nilpotency_counterexamples.push((alpha, c));
        }
    }
    Ok(report)
}

/// A random nonzero element of the Leibniz center, `None` if the center is zero.
pub fn random_central<R: Rng + ?Sized>(a: &Algebra, rng: &mut R) -> Option<Vec<Scalar>> {
    let center = a.leibniz_center();
    if center.is_zero() {
        return None;
    }
    let k = a.field();
    loop {
        let mut v = a.zero_vector();
        for b in center.basis() {
            crate::linalg::axpy(&mut v, &k.random(rng), b);
        }
        if !is_zero_vector(&v) {
            return Some(v);
        }
    }
}
