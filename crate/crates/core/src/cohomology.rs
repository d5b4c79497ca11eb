//! Cocycles, coboundaries and the second cohomology objects built from them.
//!
//! Symmetric `V`-valued maps use the coordinates of
//! [`BilinearVMap::to_symmetric_coords`]: pair `p` (over `i ≤ j`), component `q`
//! at `p * m + q`.

use std::collections::HashMap;

use crate::algebra::{default_names, Algebra};
use crate::crossed::{cocycle_system, sym_index, sym_pairs, viable_actions, BilinearVMap};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{axpy, sub_vectors, zero_vector, Matrix, Subspace};
use crate::modrep::ActionData;

/// A linear functional `λ: A → k` by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaMap {
    pub coeffs: Vec<Scalar>,
}

impl LambdaMap {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        LambdaMap {
            coeffs: zero_vector(field, n),
        }
    }

    pub fn eval(&self, a: &[Scalar]) -> Scalar {
        crate::linalg::dot(&self.coeffs, a)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// `λ(e_i e_j) = −2 λ(e_i) λ(e_j)` on all basis pairs. Both sides are
    /// bilinear in `(a, b)` for fixed `λ`, so basis pairs suffice.
    pub fn satisfies_flag_identity(&self, a: &Algebra) -> bool {
        let k = a.field();
        let minus_two = k.from_i64(-2);
        (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                self.eval(a.product(i, j)) == &minus_two * &(&self.coeffs[i] * &self.coeffs[j])
            })
        })
    }

    /// The 1-dimensional action `a ▷ x = λ(a) x`.
    pub fn as_action(&self, a: &Algebra) -> ActionData {
        let rho = self
            .coeffs
            .iter()
            .map(|c| Matrix::from_rows(a.field(), vec![vec![c.clone()]]).expect("1x1"))
            .collect();
        ActionData {
            base: a.clone(),
            space_dim: 1,
            rho,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleContext {
    Abelian,
    Coflag(LambdaMap),
    Metabelian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleSpace {
    pub context: CocycleContext,
    pub base_dim: usize,
    pub fiber_dim: usize,
    pub z2: Subspace,
    pub b2: Subspace,
    pub h2_dim: usize,
}

impl CocycleSpace {
    /// Number of classes `p^h2_dim` over F_p.
    pub fn class_count(&self) -> Option<u64> {
        self.z2.field().count_vectors(self.h2_dim)
    }
}

/// Matrix of `ϑ ↦ Σ_c ϑ(a, bc) + Σ_c a▷ϑ(b, c)` on symmetric coordinates.
pub fn cocycle_operator(base: &Algebra, rho: &[Matrix]) -> Matrix {
    let m = rho.first().map_or(0, Matrix::rows);
    let vm = Algebra::abelian(base.field(), default_names("v", m));
    // With ·_V = 0 the J2 rows of the crossed-system system have zero
    // coefficients; keep only the J4 rows.
    let (sys, _) = cocycle_system(base, rho, &vm);
    let n = base.dim();
    let j2_rows = sym_pairs(n).len() * m * m;
    let mut rows = Vec::new();
    for r in j2_rows..sys.rows() {
        rows.push(sys.row(r).to_vec());
    }
    if rows.is_empty() {
        return Matrix::zeros(base.field(), 0, sys.cols());
    }
    Matrix::from_rows(base.field(), rows).expect("rectangular")
}

/// `(δr)(a, b) = a▷r(b) + b▷r(a) − r(ab)` for `r` given as an `m × n` matrix.
pub fn coboundary(base: &Algebra, rho: &[Matrix], r: &Matrix) -> BilinearVMap {
    let n = base.dim();
    let m = r.rows();
    let mut out = BilinearVMap::zero(base.field(), n, m);
    for (i, j) in sym_pairs(n) {
        let mut v = rho[i].mul_vec(&r.column(j));
        v = crate::linalg::add_vectors(&v, &rho[j].mul_vec(&r.column(i)));
        v = sub_vectors(&v, &r.mul_vec(base.product(i, j)));
        out.set_symmetric(i, j, v);
    }
    out
}

fn cocycle_space(base: &Algebra, m: usize, rho: &[Matrix], context: CocycleContext) -> CocycleSpace {
    let field = base.field();
    let n = base.dim();
    let unknowns = sym_pairs(n).len() * m;
    let op = cocycle_operator(base, rho);
    let z2 = if op.rows() == 0 {
        Subspace::full(field, unknowns)
    } else {
        op.kernel()
    };
    let mut images = Vec::new();
    for i in 0..n {
        for k in 0..m {
            let mut r = Matrix::zeros(field, m, n);
            r.set(k, i, field.one());
            images.push(coboundary(base, rho, &r).to_symmetric_coords());
        }
    }
    let b2 = Subspace::span(field, unknowns, images);
    debug_assert!(z2.contains(&b2).unwrap_or(false));
    let h2_dim = z2.dim() - b2.dim();
    CocycleSpace {
        context,
        base_dim: n,
        fiber_dim: m,
        z2,
        b2,
        h2_dim,
    }
}

/// `Z²_▷(A, V₀)`, `B²` and `H²_▷(A, V₀)` for a JJ module `▷`.
pub fn abelian_cocycles(base: &Algebra, action: &ActionData) -> Result<CocycleSpace> {
    if !action.is_jj_module() {
        return Err(Error::NotAModule);
    }
    Ok(cocycle_space(base, action.space_dim, &action.rho, CocycleContext::Abelian))
}

/// Candidate `λ`s for co-flag data, with a completeness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaList {
    pub lambdas: Vec<LambdaMap>,
    pub complete: bool,
}

/// Largest `p^n` for which functionals are enumerated outright.
pub const LAMBDA_ENUMERATION_CAP: u64 = 1 << 20;

/// All `λ` with `λ(ab) = −2λ(a)λ(b)`, in characteristic ≠ 2, 3.
pub fn coflag_lambdas(a: &Algebra) -> Result<LambdaList> {
    a.field().require_classification_char()?;
    Ok(lambda_solutions(a))
}

/// Same as [`coflag_lambdas`] without the characteristic guard.
///
/// Over F_p with at most [`LAMBDA_ENUMERATION_CAP`] functionals the answer is
/// an exhaustive enumeration. Otherwise it uses that a JJ algebra in
/// characteristic ≠ 2, 3 satisfies `x·x² = 0`, whence `4λ(x)³ = 0` and
/// `λ = 0`; the list is flagged complete only when that argument applies.
pub fn lambda_solutions(a: &Algebra) -> LambdaList {
    let field = a.field();
    let n = a.dim();
    if let Some(count) = field.count_vectors(n).filter(|&c| c <= LAMBDA_ENUMERATION_CAP) {
        let lambdas = (0..count)
            .map(|idx| LambdaMap {
                coeffs: field.vector_from_index(idx, n),
            })
            .filter(|l| l.satisfies_flag_identity(a))
            .collect();
        return LambdaList {
            lambdas,
            complete: true,
        };
    }
    let char_ok = !matches!(field.characteristic(), 2 | 3);
    LambdaList {
        lambdas: vec![LambdaMap::zero(field, n)],
        complete: char_ok && a.is_jacobi_jordan(),
    }
}

/// `Z²_λ(A, k)`, its coboundaries and `H²_λ(A, k)`.
pub fn coflag_cohomology(a: &Algebra, lam: &LambdaMap) -> Result<CocycleSpace> {
    if lam.coeffs.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: lam.coeffs.len(),
        });
    }
    if !lam.satisfies_flag_identity(a) {
        return Err(Error::InvalidLambda);
    }
    let action = lam.as_action(a);
    Ok(cocycle_space(a, 1, &action.rho, CocycleContext::Coflag(lam.clone())))
}

/// `GH²(A, k) = ⊔_λ H²_λ(A, k)` as a list of components.
pub fn gh2_components(a: &Algebra) -> Result<(Vec<CocycleSpace>, bool)> {
    let list = coflag_lambdas(a)?;
    let spaces = list
        .lambdas
        .iter()
        .map(|l| coflag_cohomology(a, l))
        .collect::<Result<Vec<_>>>()?;
    Ok((spaces, list.complete))
}

/// Cohomology of metabelian systems over the abelian algebra of dimension
/// `action.base.dim()`: cocycles are killed by `Σ_c a▷ϑ(b,c)` and coboundaries
/// are `a▷r(b) + b▷r(a)`.
pub fn metabelian_cohomology(action: &ActionData) -> Result<CocycleSpace> {
    if !action.is_anticommuting() {
        return Err(Error::ActionNotAnticommuting);
    }
    let field = action.base.field();
    let n = action.base.dim();
    let base = Algebra::with_default_names(field, n);
    Ok(cocycle_space(&base, action.space_dim, &action.rho, CocycleContext::Metabelian))
}

/// One JJ module structure and its cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionComponent {
    pub rho: Vec<Matrix>,
    pub h2_dim: usize,
    pub classes: u64,
}

/// Classes for one non-abelian JJ structure on `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberComponent {
    pub fiber_mult: Algebra,
    pub systems: u64,
    pub classes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalH2Report {
    /// `H²(A, V₀) = ⊔_▷ H²_▷(A, V₀)`.
    pub components: Vec<ActionComponent>,
    pub abelian_classes: u64,
    /// Remaining components of `GH²(A, V)`, computed when `dim V ≤ 2`.
    pub nonabelian: Option<Vec<FiberComponent>>,
    /// Set when an enumeration stopped at the cap; the report is partial.
    pub cap_exceeded: Option<Error>,
}

impl GlobalH2Report {
    pub fn total_classes(&self) -> u64 {
        self.abelian_classes
            + self
                .nonabelian
                .as_ref()
                .map_or(0, |v| v.iter().map(|c| c.classes).sum())
    }
}

fn rho_from_index(field: FieldSpec, n: usize, m: usize, idx: u64) -> Vec<Matrix> {
    let digits = field.vector_from_index(idx, n * m * m);
    digits
        .chunks(m * m)
        .map(|c| Matrix::from_rows(field, c.chunks(m).map(<[Scalar]>::to_vec).collect()).expect("square"))
        .collect()
}

/// Enumerates the decomposition of `GH²(A, V)` for `V = k^m` over F_p.
///
/// Module structures are enumerated as all `m × m` matrix tuples (at most
/// `cap` of them) filtered by the module identity. For `m ≤ 2` the
/// components with non-abelian `·_V` are counted as orbits of crossed systems
/// under the moves `ψ_r`.
pub fn global_h2_abelian(a: &Algebra, m: usize, cap: u64) -> Result<GlobalH2Report> {
    let field = a.field();
    if !field.is_finite() {
        return Err(Error::NotEnumerable);
    }
    a.require_jacobi_jordan()?;
    let n = a.dim();
    let mut cap_exceeded = None;
    let total = field.count_vectors(n * m * m).unwrap_or(u64::MAX);
    let limit = total.min(cap);
    if total > cap {
        cap_exceeded = Some(Error::CapExceeded { cap, explored: limit });
    }
    let mut components = Vec::new();
    for idx in 0..limit {
        let rho = rho_from_index(field, n, m, idx);
        let action = ActionData {
            base: a.clone(),
            space_dim: m,
            rho,
        };
        if !action.is_jj_module() {
            continue;
        }
        let space = cocycle_space(a, m, &action.rho, CocycleContext::Abelian);
        let classes = space.class_count().expect("finite field");
        components.push(ActionComponent {
            rho: action.rho,
            h2_dim: space.h2_dim,
            classes,
        });
    }
    let abelian_classes = components.iter().map(|c| c.classes).sum();

    let nonabelian = if m <= 2 && m > 0 {
        let mut out = Vec::new();
        for vm in enumerate::jj_algebras(field, m) {
            if vm.is_abelian() {
                continue;
            }
            let vm = vm.with_names(default_names("v", m))?;
            match count_fiber_classes(a, &vm, cap) {
                Ok(c) => out.push(c),
                Err(e @ Error::CapExceeded { .. }) => {
                    cap_exceeded = Some(e);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Some(out)
    } else {
        None
    };

    Ok(GlobalH2Report {
        components,
        abelian_classes,
        nonabelian,
        cap_exceeded,
    })
}

/// Key of a crossed system `(▷, ϑ)` for a fixed `·_V`.
type SystemKey = (Vec<Matrix>, Vec<Scalar>);

fn count_fiber_classes(a: &Algebra, vm: &Algebra, cap: u64) -> Result<FiberComponent> {
    let field = a.field();
    let n = a.dim();
    let m = vm.dim();
    let mut systems: Vec<SystemKey> = Vec::new();
    for rho in viable_actions(a, vm, cap)? {
        let (sys, rhs) = cocycle_system(a, &rho, vm);
        let particular = sys.solve(&rhs).expect("viable action");
        for theta in affine_points(&particular, &sys.kernel(), cap)? {
            systems.push((rho.clone(), theta));
            if systems.len() as u64 > cap {
                return Err(Error::CapExceeded {
                    cap,
                    explored: systems.len() as u64,
                });
            }
        }
    }
    let index: HashMap<SystemKey, usize> = systems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut uf = UnionFind::new(systems.len());
    let r_count = field.count_vectors(n * m).ok_or(Error::NotEnumerable)?;
    for (s, (rho, theta)) in systems.iter().enumerate() {
        let cocycle = BilinearVMap::from_symmetric_coords(field, n, m, theta);
        for ridx in 1..r_count {
            let coords = field.vector_from_index(ridx, n * m);
            let r = Matrix::from_rows(field, coords.chunks(n).map(<[Scalar]>::to_vec).collect())
                .expect("m x n");
            let moved = move_by_r(a, vm, rho, &cocycle, &r);
            let t = *index
                .get(&moved)
                .expect("the cohomologous relation preserves crossed systems");
            uf.union(s, t);
        }
    }
    Ok(FiberComponent {
        fiber_mult: vm.clone(),
        systems: systems.len() as u64,
        classes: uf.components() as u64,
    })
}

/// The system `(▷', ϑ')` with `(▷, ϑ) ≈ (▷', ϑ')` through `r`:
/// `▷' = ▷ − r(a)·x`, `ϑ' = ϑ − a▷'r(b) − b▷'r(a) − r(a)r(b) + r(ab)`.
fn move_by_r(a: &Algebra, vm: &Algebra, rho: &[Matrix], theta: &BilinearVMap, r: &Matrix) -> SystemKey {
    let n = a.dim();
    let new_rho: Vec<Matrix> = (0..n)
        .map(|i| rho[i].sub(&vm.left_mult_matrix(&r.column(i))))
        .collect();
    let mut new_theta = BilinearVMap::zero(a.field(), n, vm.dim());
    for (i, j) in sym_pairs(n) {
        let mut v = theta.get(i, j).to_vec();
        v = sub_vectors(&v, &new_rho[i].mul_vec(&r.column(j)));
        v = sub_vectors(&v, &new_rho[j].mul_vec(&r.column(i)));
        v = sub_vectors(&v, &vm.mul(&r.column(i), &r.column(j)));
        v = crate::linalg::add_vectors(&v, &r.mul_vec(a.product(i, j)));
        new_theta.set_symmetric(i, j, v);
    }
    (new_rho, new_theta.to_symmetric_coords())
}

fn affine_points(particular: &[Scalar], kernel: &Subspace, cap: u64) -> Result<Vec<Vec<Scalar>>> {
    let field = kernel.field();
    let count = field.count_vectors(kernel.dim()).ok_or(Error::NotEnumerable)?;
    if count > cap {
        return Err(Error::CapExceeded { cap, explored: 0 });
    }
    Ok((0..count)
        .map(|idx| {
            let mut x = particular.to_vec();
            for (c, b) in field.vector_from_index(idx, kernel.dim()).iter().zip(kernel.basis()) {
                axpy(&mut x, c, b);
            }
            x
        })
        .collect())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Census of extensions of `k₀` by `V₀ = k^m` with metabelian data
/// `(f, v₀)`, `f² = 0`, `f v₀ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codim1Census {
    /// Number of endomorphisms with `f² = 0`.
    pub square_zero_maps: u64,
    /// Number of pairs `(f, v₀)`.
    pub pairs: u64,
    /// `Σ_f |Ker f / Im f|`.
    pub formula_classes: u64,
    /// Orbits of pairs under `v₀ ↦ v₀ + 2 f(r)`, `r ∈ V`.
    pub orbit_classes: u64,
}

pub fn codim1_census(field: FieldSpec, m: usize) -> Result<Codim1Census> {
    let count = field.count_vectors(m * m).ok_or(Error::NotEnumerable)?;
    let vectors: Vec<Vec<Scalar>> = (0..field.count_vectors(m).ok_or(Error::NotEnumerable)?)
        .map(|i| field.vector_from_index(i, m))
        .collect();
    let two = field.from_i64(2);
    let mut census = Codim1Census {
        square_zero_maps: 0,
        pairs: 0,
        formula_classes: 0,
        orbit_classes: 0,
    };
    for idx in 0..count {
        let digits = field.vector_from_index(idx, m * m);
        let f = Matrix::from_rows(field, digits.chunks(m).map(<[Scalar]>::to_vec).collect())?;
        if !f.mul(&f).is_zero() {
            continue;
        }
        census.square_zero_maps += 1;
        let ker = f.kernel();
        let im = f.image();
        let q = ker.quotient_dim(&im)?;
        census.formula_classes += field.count_vectors(q).expect("finite field");

        let members: Vec<&Vec<Scalar>> = vectors
            .iter()
            .filter(|v| crate::linalg::is_zero_vector(&f.mul_vec(v)))
            .collect();
        census.pairs += members.len() as u64;
        let pos: HashMap<&Vec<Scalar>, usize> = members.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(members.len());
        for (i, v0) in members.iter().enumerate() {
            for r in &vectors {
                let shift = crate::linalg::scale_vector(&two, &f.mul_vec(r));
                let w = crate::linalg::add_vectors(v0, &shift);
                uf.union(i, pos[&w]);
            }
        }
        census.orbit_classes += uf.components() as u64;
    }
    Ok(census)
}

/// Brute-force count of `ϑ ≈ ϑ'` classes among symmetric forms satisfying
/// the λ-cocycle identity, evaluated directly on basis triples.
pub fn coflag_classes_brute_force(a: &Algebra, lam: &LambdaMap) -> Result<u64> {
    let field = a.field();
    let n = a.dim();
    let pairs = sym_pairs(n);
    let total = field.count_vectors(pairs.len()).ok_or(Error::NotEnumerable)?;
    let is_cocycle = |t: &[Scalar]| {
        let theta = |x: usize, y: usize| t[sym_index(n, x, y)].clone();
        let form = |x: usize, v: &[Scalar]| {
            let mut acc = field.zero();
            for (y, c) in v.iter().enumerate() {
                acc += &(c * &theta(x, y));
            }
            acc
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|l| {
                    let mut s = field.zero();
                    for (x, y, z) in [(i, j, l), (j, l, i), (l, i, j)] {
                        s += &form(x, a.product(y, z));
                        s += &(&lam.coeffs[x] * &theta(y, z));
                    }
                    s.is_zero()
                })
            })
        })
    };
    let cocycles: Vec<Vec<Scalar>> = (0..total)
        .map(|idx| field.vector_from_index(idx, pairs.len()))
        .filter(|t| is_cocycle(t))
        .collect();
    let pos: HashMap<Vec<Scalar>, usize> = cocycles.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut uf = UnionFind::new(cocycles.len());
    let t_count = field.count_vectors(n).ok_or(Error::NotEnumerable)?;
    for (i, theta) in cocycles.iter().enumerate() {
        for tidx in 0..t_count {
            let t = field.vector_from_index(tidx, n);
            let tv = |x: usize| t[x].clone();
            // ϑ' = ϑ + λ(a)t(b) + λ(b)t(a) − t(ab)
            let shifted: Vec<Scalar> = pairs
                .iter()
                .enumerate()
                .map(|(p, &(x, y))| {
                    let mut v = theta[p].clone();
                    v += &(&lam.coeffs[x] * &tv(y));
                    v += &(&lam.coeffs[y] * &tv(x));
                    v -= &crate::linalg::dot(&t, a.product(x, y));
                    v
                })
                .collect();
            let j = *pos.get(&shifted).expect("coboundary shifts preserve cocycles");
            uf.union(i, j);
        }
    }
    Ok(uf.components() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{are_cohomologous, CrossedData};
    use crate::samples::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn zero_lambda(a: &Algebra) -> LambdaMap {
        LambdaMap::zero(a.field(), a.dim())
    }

    #[test]
    fn heisenberg3_trivial_action() {
        let h = heisenberg3(f5());
        let s = abelian_cocycles(&h, &ActionData::trivial(h.clone(), 1)).unwrap();
        assert_eq!(s.z2.dim(), 3);
        assert_eq!(s.b2.dim(), 1);
        assert_eq!(s.h2_dim, 2);
        assert!(s.z2.contains(&s.b2).unwrap());
    }

    /// Independent oracle for h(2n+1): a symmetric ϑ on (e_1..e_n, f_1..f_n, z)
    /// is a cocycle iff ϑ(·, z) = 0, so Z² has dimension C(2n+1) − (2n+1)
    /// where C(d) = d(d+1)/2, and B² = span{ϑ(e_i, f_i) = 1 for all i}.
    #[test]
    fn heisenberg5_h2_dimension() {
        let h = heisenberg5(f5());
        let s = coflag_cohomology(&h, &zero_lambda(&h)).unwrap();
        let d = 5;
        let z_oracle = d * (d + 1) / 2 - d;
        assert_eq!(s.z2.dim(), z_oracle);
        assert_eq!(s.b2.dim(), 1);
        assert_eq!(s.h2_dim, 9);
        // The slots ϑ(e1, f2) and ϑ(e2, f1) are independent cocycle directions.
        let mut t = BilinearVMap::zero(f5(), 5, 1);
        t.set_symmetric(0, 3, vec![f5().one()]);
        assert!(s.z2.contains_vector(&t.to_symmetric_coords()));
        let mut u = BilinearVMap::zero(f5(), 5, 1);
        u.set_symmetric(1, 2, vec![f5().one()]);
        assert!(s.z2.contains_vector(&u.to_symmetric_coords()));
        let mut w = BilinearVMap::zero(f5(), 5, 1);
        w.set_symmetric(0, 4, vec![f5().one()]);
        assert!(!s.z2.contains_vector(&w.to_symmetric_coords()));
    }

    #[test]
    fn abelian_base_gives_all_symmetric_forms() {
        for n in 1..=3 {
            let a = Algebra::with_default_names(f5(), n);
            let s = coflag_cohomology(&a, &zero_lambda(&a)).unwrap();
            assert_eq!(s.b2.dim(), 0);
            assert_eq!(s.h2_dim, n * (n + 1) / 2);
        }
    }

    #[test]
    fn a12_lambda_zero() {
        let a = a12(f5());
        let s = coflag_cohomology(&a, &zero_lambda(&a)).unwrap();
        // ϑ(e1,e2) = ϑ(e2,e2) = 0 on cocycles and ϑ(e1,e1) is a coboundary.
        assert_eq!(s.z2.dim(), 1);
        assert_eq!(s.h2_dim, 0);
        assert_eq!(coflag_classes_brute_force(&a, &zero_lambda(&a)).unwrap(), 1);
    }

    #[test]
    fn lambda_lists() {
        for a in [heisenberg3(f5()), heisenberg5(f5()), Algebra::with_default_names(f5(), 3), a12(f5())] {
            let l = coflag_lambdas(&a).unwrap();
            assert!(l.complete);
            assert_eq!(l.lambdas, vec![zero_lambda(&a)]);
        }
        let q = heisenberg3(FieldSpec::Rationals);
        let l = coflag_lambdas(&q).unwrap();
        assert!(l.complete);
        assert_eq!(l.lambdas, vec![zero_lambda(&q)]);
        let t = truncated_poly(FieldSpec::Rationals);
        assert!(!coflag_lambdas(&t).unwrap().complete);
        assert_eq!(
            coflag_lambdas(&heisenberg3(f3())),
            Err(Error::ClassificationCharUnsupported(3))
        );
    }

    #[test]
    fn nonzero_lambda_exists_in_characteristic_three() {
        // The idempotent e·e = e over F_3: λ(e) = −2λ(e)² has the root λ(e) = 1.
        let k = f3();
        let mut idem = Algebra::with_default_names(k, 1);
        idem.set_product(0, 0, vec![k.one()]);
        let l = lambda_solutions(&idem);
        assert_eq!(l.lambdas.len(), 2);
    }

    #[test]
    fn invalid_lambda_rejected() {
        let a = Algebra::with_default_names(f5(), 1);
        let lam = LambdaMap { coeffs: vec![f5().one()] };
        assert_eq!(coflag_cohomology(&a, &lam), Err(Error::InvalidLambda));
        let h = heisenberg3(f5());
        assert_eq!(
            abelian_cocycles(&h, &ActionData::new(h.clone(), 1, vec![Matrix::identity(f5(), 1); 3]).unwrap()),
            Err(Error::NotAModule)
        );
    }

    #[test]
    fn metabelian_examples() {
        let k = f5();
        let base = Algebra::with_default_names(k, 1);
        let trivial = ActionData::trivial(base.clone(), 2);
        let s = metabelian_cohomology(&trivial).unwrap();
        assert_eq!(s.z2.dim(), 2);
        assert_eq!(s.b2.dim(), 0);

        let f = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        let act = ActionData::new(base.clone(), 2, vec![f.clone()]).unwrap();
        let s = metabelian_cohomology(&act).unwrap();
        let q = f.kernel().quotient_dim(&f.image()).unwrap();
        assert_eq!(s.h2_dim, q);
        assert_eq!(s.class_count(), Some(1));

        let two = ActionData::new(
            Algebra::with_default_names(k, 2),
            2,
            vec![Matrix::identity(k, 2), Matrix::identity(k, 2)],
        )
        .unwrap();
        assert_eq!(metabelian_cohomology(&two), Err(Error::ActionNotAnticommuting));
    }

    #[test]
    fn metabelian_in_characteristic_three_keeps_all_of_v() {
        // 3 f(v₀) = 0 is vacuous over F_3, so every v₀ is a cocycle.
        let k = f3();
        let base = Algebra::with_default_names(k, 1);
        let f = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        let s = metabelian_cohomology(&ActionData::new(base, 2, vec![f]).unwrap()).unwrap();
        assert_eq!(s.z2.dim(), 2);
        assert_eq!(s.b2.dim(), 1);
        assert_eq!(s.h2_dim, 1);
        assert_eq!(s.class_count(), Some(3));
    }

    #[test]
    fn metabelian_crossed_products_are_metabelian() {
        let k = f5();
        let base = Algebra::with_default_names(k, 1);
        let f = Matrix::from_i64(k, &[&[0, 1], &[0, 0]]);
        let act = ActionData::new(base.clone(), 2, vec![f]).unwrap();
        let s = metabelian_cohomology(&act).unwrap();
        for v in s.z2.elements().unwrap() {
            let d = CrossedData::new(base.clone(), act.clone(), BilinearVMap::from_symmetric_coords(k, 1, 2, &v), Algebra::with_default_names(k, 2)).unwrap();
            let e = d.crossed_product().unwrap();
            assert!(e.is_metabelian());
        }
    }

    #[test]
    fn codim1_census_over_f3_and_f5() {
        for p in [3u64, 5] {
            let k = FieldSpec::prime(p).unwrap();
            let c = codim1_census(k, 2).unwrap();
            // p² square-zero maps: zero plus p² − 1 rank-one nilpotents.
            assert_eq!(c.square_zero_maps, p * p);
            assert_eq!(c.formula_classes, p * p + (p * p - 1));
            assert_eq!(c.orbit_classes, c.formula_classes);
        }
    }

    #[test]
    fn global_h2_for_k0_over_f5() {
        let k = f5();
        let base = Algebra::with_default_names(k, 1);
        let r = global_h2_abelian(&base, 2, 1 << 20).unwrap();
        assert!(r.cap_exceeded.is_none());
        assert_eq!(r.components.len(), 25);
        for c in &r.components {
            let f = &c.rho[0];
            assert!(f.mul(f).is_zero());
            assert_eq!(c.h2_dim, f.kernel().quotient_dim(&f.image()).unwrap());
        }
        assert_eq!(r.abelian_classes, codim1_census(k, 2).unwrap().formula_classes);
        assert!(r.nonabelian.as_ref().unwrap().iter().all(|c| c.classes >= 1));
    }

    #[test]
    fn global_h2_one_dim_fiber_matches_coflag() {
        let k = f5();
        let h = heisenberg3(k);
        let r = global_h2_abelian(&h, 1, 1 << 20).unwrap();
        // Actions on k are the λ's; only λ = 0.
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].h2_dim, 2);
        let f3h = heisenberg3(f3());
        let r3 = global_h2_abelian(&f3h, 1, 1 << 20).unwrap();
        let trivial = r3.components.iter().find(|c| c.rho.iter().all(Matrix::is_zero)).unwrap();
        assert_eq!(trivial.h2_dim, 2);
    }

    #[test]
    fn global_h2_cap_is_reported() {
        let h = heisenberg3(f3());
        let r = global_h2_abelian(&h, 2, 100).unwrap();
        assert!(matches!(r.cap_exceeded, Some(Error::CapExceeded { cap: 100, .. })));
    }

    #[test]
    fn brute_force_class_counts_match_dimension_formula() {
        let k = f3();
        for n in 1..=2 {
            for a in enumerate::jj_algebras(k, n) {
                for lam in lambda_solutions(&a).lambdas {
                    let s = coflag_cohomology(&a, &lam).unwrap();
                    assert_eq!(coflag_classes_brute_force(&a, &lam).unwrap(), s.class_count().unwrap());
                }
            }
        }
    }

    #[test]
    fn cocycles_give_crossed_systems_and_shifts_are_cohomologous() {
        let k = f5();
        let h = heisenberg3(k);
        let s = coflag_cohomology(&h, &zero_lambda(&h)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z: Vec<_> = s.z2.basis().to_vec();
        for _ in 0..20 {
            let mut v = zero_vector(k, s.z2.ambient_dim());
            for b in &z {
                axpy(&mut v, &k.random(&mut rng), b);
            }
            let mut d = CrossedData::trivial(h.clone(), 1);
            d.cocycle = BilinearVMap::from_symmetric_coords(k, 3, 1, &v);
            assert!(d.validate().is_valid());
            let r = Matrix::from_rows(k, vec![(0..3).map(|_| k.random(&mut rng)).collect()]).unwrap();
            let mut dp = d.clone();
            dp.cocycle = d.cocycle.add(&coboundary(&h, &d.action.rho, &r));
            assert!(dp.validate().is_valid());
            assert!(are_cohomologous(&d, &dp, 1000).unwrap().is_yes());
        }
    }
}
