//! Isomorphism and automorphism search by pruned backtracking, and homothety
//! of symmetric bilinear forms.
//!
//! The search first rewrites the source algebra in a basis where as many
//! vectors as possible are products of earlier ones. Only the remaining
//! "free" vectors need a choice of image; the others are forced.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::cohomology::UnionFind;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{axpy, dot, is_zero_vector, zero_vector, Matrix, Subspace};

/// Default bound on backtracking nodes.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Largest `|A|` for which per-element invariants are tabulated.
pub const ELEMENT_TABLE_CAP: u64 = 100_000;

/// Isomorphism-invariant local data of an element `v`: rank of `L_v`, rank of
/// `L_v²`, whether `v·v = 0`, whether `v ∈ A·A`, whether `v` is central.
pub type ElementSignature = (usize, usize, bool, bool, bool);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub commutative: bool,
    pub jacobi_jordan: bool,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub nilpotency_step: Option<usize>,
    /// Histogram of [`ElementSignature`] over all elements; F_p only.
    pub element_histogram: Option<BTreeMap<ElementSignature, u64>>,
}

impl Fingerprint {
    /// Name of the first invariant on which the two fingerprints differ.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<&'static str> {
        if self.dim != other.dim {
            Some("dim")
        } else if self.commutative != other.commutative {
            Some("commutative")
        } else if self.jacobi_jordan != other.jacobi_jordan {
            Some("jacobi_jordan")
        } else if self.derived_series_dims != other.derived_series_dims {
            Some("derived_series_dims")
        } else if self.lower_central_dims != other.lower_central_dims {
            Some("lower_central_dims")
        } else if self.center_dim != other.center_dim {
            Some("center_dim")
        } else if self.nilpotency_step != other.nilpotency_step {
            Some("nilpotency_step")
        } else if self.element_histogram != other.element_histogram {
            Some("element_histogram")
        } else {
            None
        }
    }
}

struct ElementData {
    derived: Subspace,
    center: Subspace,
}

impl ElementData {
    fn new(a: &Algebra) -> Self {
        ElementData {
            derived: a.derived_algebra(),
            center: a.leibniz_center(),
        }
    }

    fn signature(&self, a: &Algebra, v: &[Scalar]) -> ElementSignature {
        let l = a.left_mult_matrix(v);
        (
            l.rank(),
            l.mul(&l).rank(),
            is_zero_vector(&a.mul(v, v)),
            self.derived.contains_vector(v),
            self.center.contains_vector(v),
        )
    }
}

fn all_elements(a: &Algebra) -> Option<Vec<Vec<Scalar>>> {
    let k = a.field();
    let count = k.count_vectors(a.dim()).filter(|&c| c <= ELEMENT_TABLE_CAP)?;
    Some((0..count).map(|i| k.vector_from_index(i, a.dim())).collect())
}

pub fn fingerprint(a: &Algebra) -> Fingerprint {
    let data = ElementData::new(a);
    let element_histogram = all_elements(a).map(|elems| {
        let mut h = BTreeMap::new();
        for v in elems {
            *h.entry(data.signature(a, &v)).or_insert(0) += 1;
        }
        h
    });
    Fingerprint {
        dim: a.dim(),
        commutative: a.is_commutative(),
        jacobi_jordan: a.is_jacobi_jordan(),
        derived_series_dims: a.derived_series().iter().map(Subspace::dim).collect(),
        lower_central_dims: a.lower_central_series().iter().map(Subspace::dim).collect(),
        center_dim: data.center.dim(),
        nilpotency_step: a.nilpotency_step(),
        element_histogram,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonIsoWitness {
    Invariant(&'static str),
    Exhausted { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Matrix `T` with `T(u·v) = T(u)·T(v)`, columns are images of the basis.
    Yes(Matrix),
    No(NonIsoWitness),
    Unknown,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No(_))
    }
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Free,
    Product(usize, usize),
}

/// A basis of the source algebra and how each vector is obtained.
struct Plan {
    steps: Vec<Step>,
    basis: Vec<Vec<Scalar>>,
    /// Inverse of the matrix whose columns are `basis`.
    to_plan: Matrix,
    /// `checks[d]`: pairs `(j, l, coords)` with `b_j b_l = Σ coords_t b_t`,
    /// all indices `≤ d`, first checkable at depth `d`. Both orders of every
    /// pair are listed, so non-commutative inputs are handled.
    checks: Vec<Vec<(usize, usize, Vec<Scalar>)>>,
}

impl Plan {
    fn new(a: &Algebra) -> Plan {
        let n = a.dim();
        let k = a.field();
        let derived = a.derived_algebra();
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut steps = Vec::new();
        let span = |b: &[Vec<Scalar>]| Subspace::span(k, n, b.iter().cloned());
        while basis.len() < n {
            let current = span(&basis);
            let mut pushed = false;
            'outer: for j in 0..basis.len() {
                for l in j..basis.len() {
                    let p = a.mul(&basis[j], &basis[l]);
                    if !current.contains_vector(&p) {
                        basis.push(p);
                        steps.push(Step::Product(j, l));
                        pushed = true;
                        break 'outer;
                    }
                }
            }
            if pushed {
                continue;
            }
            let with_derived = current.sum(&derived).expect("same ambient");
            let pick = (0..n)
                .find(|&i| !with_derived.contains_vector(&a.basis_vector(i)))
                .or_else(|| (0..n).find(|&i| !current.contains_vector(&a.basis_vector(i))))
                .expect("basis incomplete");
            basis.push(a.basis_vector(pick));
            steps.push(Step::Free);
        }
        let to_plan = Matrix::from_columns(k, n, &basis)
            .inverse()
            .expect("plan basis is a basis");
        let mut checks = vec![Vec::new(); n];
        for j in 0..n {
            for l in 0..n {
                let coords = to_plan.mul_vec(&a.mul(&basis[j], &basis[l]));
                let support = coords.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
                let depth = support.max(l).max(j);
                checks[depth].push((j, l, coords));
            }
        }
        Plan {
            steps,
            basis,
            to_plan,
            checks,
        }
    }
}

struct Search<'a> {
    target: &'a Algebra,
    plan: &'a Plan,
    /// Candidate images for each free step, filtered by signature.
    candidates: Vec<Vec<Vec<Scalar>>>,
    signatures: Vec<ElementSignature>,
    target_data: ElementData,
    nodes: &'a AtomicU64,
    cap: u64,
}

enum Flow {
    Continue,
    Stop,
}

impl Search<'_> {
    fn consistent(&self, images: &[Vec<Scalar>], d: usize) -> bool {
        let b = self.target;
        self.plan.checks[d].iter().all(|(j, l, coords)| {
            let mut rhs = zero_vector(b.field(), b.dim());
            for (t, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    axpy(&mut rhs, c, &images[t]);
                }
            }
            b.mul(&images[*j], &images[*l]) == rhs
        })
    }

    /// Depth-first extension of `images`; `visit` sees every complete map.
    fn extend(
        &self,
        images: &mut Vec<Vec<Scalar>>,
        span: &Subspace,
        visit: &mut dyn FnMut(&[Vec<Scalar>]) -> Flow,
    ) -> Result<Flow> {
        let d = images.len();
        if d == self.plan.steps.len() {
            return Ok(visit(images));
        }
        let explored = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if explored > self.cap {
            return Err(Error::CapExceeded {
                cap: self.cap,
                explored,
            });
        }
        let forced;
        let options: &[Vec<Scalar>] = match self.plan.steps[d] {
            Step::Free => &self.candidates[d],
            Step::Product(j, l) => {
                forced = [self.target.mul(&images[j], &images[l])];
                &forced
            }
        };
        for v in options {
            if span.contains_vector(v) {
                continue;
            }
            if matches!(self.plan.steps[d], Step::Product(..))
                && self.target_data.signature(self.target, v) != self.signatures[d]
            {
                continue;
            }
            images.push(v.clone());
            if self.consistent(images, d) {
                let next = Subspace::span(span.field(), span.ambient_dim(), span.basis().iter().chain([v]).cloned());
                if let Flow::Stop = self.extend(images, &next, visit)? {
                    images.pop();
                    return Ok(Flow::Stop);
                }
            }
            images.pop();
        }
        Ok(Flow::Continue)
    }
}

struct Prepared<'a> {
    search: Search<'a>,
}

fn prepare<'a>(a: &Algebra, b: &'a Algebra, plan: &'a Plan, nodes: &'a AtomicU64, cap: u64) -> Option<Prepared<'a>> {
    let source_data = ElementData::new(a);
    let target_data = ElementData::new(b);
    let signatures: Vec<ElementSignature> = plan.basis.iter().map(|v| source_data.signature(a, v)).collect();
    let elems = all_elements(b)?;
    let mut by_sig: HashMap<ElementSignature, Vec<Vec<Scalar>>> = HashMap::new();
    for v in elems {
        if is_zero_vector(&v) {
            continue;
        }
        by_sig.entry(target_data.signature(b, &v)).or_default().push(v);
    }
    let candidates = plan
        .steps
        .iter()
        .zip(&signatures)
        .map(|(s, sig)| match s {
            Step::Free => by_sig.get(sig).cloned().unwrap_or_default(),
            Step::Product(..) => Vec::new(),
        })
        .collect();
    Some(Prepared {
        search: Search {
            target: b,
            plan,
            candidates,
            signatures,
            target_data,
            nodes,
            cap,
        },
    })
}

fn to_matrix(plan: &Plan, images: &[Vec<Scalar>], n: usize, field: FieldSpec) -> Matrix {
    Matrix::from_columns(field, n, images).mul(&plan.to_plan)
}

/// `T(e_i e_j) = T(e_i) T(e_j)` on all basis pairs and `T` invertible.
pub fn is_isomorphism(a: &Algebra, b: &Algebra, t: &Matrix) -> bool {
    if t.rows() != b.dim() || t.cols() != a.dim() || t.inverse().is_none() {
        return false;
    }
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| t.mul_vec(a.product(i, j)) == b.mul(&t.column(i), &t.column(j)))
    })
}

/// Decides `A ≅ B`.
///
/// Over F_p with `|B| ≤` [`ELEMENT_TABLE_CAP`] the backtracking is exhaustive
/// within `cap` nodes; a cap overrun or a field that cannot be enumerated
/// yields `Unknown` once the invariants agree.
pub fn isomorphic(a: &Algebra, b: &Algebra, cap: u64) -> Result<IsoVerdict> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.dim() == b.dim() && a.same_structure(b) {
        return Ok(IsoVerdict::Yes(Matrix::identity(a.field(), a.dim())));
    }
    if let Some(name) = fingerprint(a).first_difference(&fingerprint(b)) {
        return Ok(IsoVerdict::No(NonIsoWitness::Invariant(name)));
    }
    let plan = Plan::new(a);
    let nodes = AtomicU64::new(0);
    let Some(prep) = prepare(a, b, &plan, &nodes, cap) else {
        return Ok(IsoVerdict::Unknown);
    };
    let search = &prep.search;
    let field = a.field();
    let n = a.dim();
    let roots = &search.candidates[0];
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<Option<Vec<Vec<Scalar>>>>> = roots
        .par_iter()
        .enumerate()
        .map(|(idx, root)| {
            if idx > best.load(Ordering::Relaxed) {
                return Ok(None);
            }
            let mut images = vec![root.clone()];
            if !search.consistent(&images, 0) {
                return Ok(None);
            }
            let span = Subspace::span(field, n, [root.clone()]);
            let mut found = None;
            search.extend(&mut images, &span, &mut |imgs| {
                found = Some(imgs.to_vec());
                Flow::Stop
            })?;
            if found.is_some() {
                best.fetch_min(idx, Ordering::Relaxed);
            }
            Ok(found)
        })
        .collect();
    let mut overrun = false;
    for r in results {
        match r {
            Ok(Some(images)) => return Ok(IsoVerdict::Yes(to_matrix(&plan, &images, n, field))),
            Ok(None) => {}
            Err(Error::CapExceeded { .. }) => overrun = true,
            Err(e) => return Err(e),
        }
    }
    if overrun {
        return Ok(IsoVerdict::Unknown);
    }
    Ok(IsoVerdict::No(NonIsoWitness::Exhausted {
        nodes: nodes.load(Ordering::Relaxed),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub field: FieldSpec,
    pub dim: usize,
    pub elements: Vec<Matrix>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Identity present and closed under composition and inverses.
    pub fn verify_closure(&self) -> bool {
        let set: std::collections::HashSet<&Matrix> = self.elements.iter().collect();
        set.contains(&Matrix::identity(self.field, self.dim))
            && self.elements.iter().all(|g| {
                g.inverse().is_some_and(|inv| set.contains(&inv))
                    && self.elements.iter().all(|h| set.contains(&g.mul(h)))
            })
    }
}

/// All automorphisms of `a` over F_p.
pub fn automorphisms(a: &Algebra, cap: u64) -> Result<AutomorphismGroup> {
    let field = a.field();
    if !field.is_finite() {
        return Err(Error::NotEnumerable);
    }
    let n = a.dim();
    if n == 0 {
        return Ok(AutomorphismGroup {
            field,
            dim: 0,
            elements: vec![Matrix::identity(field, 0)],
        });
    }
    let plan = Plan::new(a);
    let nodes = AtomicU64::new(0);
    let prep = prepare(a, a, &plan, &nodes, cap).ok_or(Error::CapExceeded {
        cap: ELEMENT_TABLE_CAP,
        explored: 0,
    })?;
    let search = &prep.search;
    let per_root: Vec<Result<Vec<Matrix>>> = search.candidates[0]
        .par_iter()
        .map(|root| {
            let mut images = vec![root.clone()];
            let mut out = Vec::new();
            if !search.consistent(&images, 0) {
                return Ok(out);
            }
            let span = Subspace::span(field, n, [root.clone()]);
            search.extend(&mut images, &span, &mut |imgs| {
                out.push(to_matrix(&plan, imgs, n, field));
                Flow::Continue
            })?;
            Ok(out)
        })
        .collect();
    let mut elements = Vec::new();
    for r in per_root {
        elements.extend(r?);
    }
    Ok(AutomorphismGroup {
        field,
        dim: n,
        elements,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomothetyVerdict {
    /// `s₀ Θ = ψᵀ Θ′ ψ`.
    Yes { s0: Scalar, psi: Matrix },
    NoRank { rank: usize, rank_other: usize },
    NoExhausted,
    Unknown,
}

impl HomothetyVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, HomothetyVerdict::Yes { .. })
    }
}

/// Whether `s₀ θ(a, b) = θ′(ψa, ψb)` for some `s₀ ≠ 0` and invertible `ψ`.
pub fn homothetic(theta: &Matrix, theta_p: &Matrix, cap: u64) -> Result<HomothetyVerdict> {
    if theta.field() != theta_p.field() {
        return Err(Error::FieldMismatch);
    }
    if !theta.is_square() || theta.rows() != theta_p.rows() || !theta_p.is_square() {
        return Err(Error::DimensionMismatch {
            expected: theta.rows(),
            found: theta_p.rows(),
        });
    }
    let (r, rp) = (theta.rank(), theta_p.rank());
    if r != rp {
        return Ok(HomothetyVerdict::NoRank {
            rank: r,
            rank_other: rp,
        });
    }
    let field = theta.field();
    let n = theta.rows();
    if theta == theta_p {
        return Ok(HomothetyVerdict::Yes {
            s0: field.one(),
            psi: Matrix::identity(field, n),
        });
    }
    if !field.is_finite() {
        return Ok(HomothetyVerdict::Unknown);
    }
    let count = field.count_vectors(n).ok_or(Error::NotEnumerable)?;
    if count > ELEMENT_TABLE_CAP {
        return Ok(HomothetyVerdict::Unknown);
    }
    let vectors: Vec<Vec<Scalar>> = (1..count).map(|i| field.vector_from_index(i, n)).collect();
    let nodes = AtomicU64::new(0);
    for s0 in field.units()? {
        let mut cols = Vec::new();
        match congruence_search(theta, theta_p, &s0, &vectors, &mut cols, &nodes, cap) {
            Ok(true) => {
                return Ok(HomothetyVerdict::Yes {
                    s0,
                    psi: Matrix::from_columns(field, n, &cols),
                })
            }
            Ok(false) => {}
            Err(Error::CapExceeded { .. }) => return Ok(HomothetyVerdict::Unknown),
            Err(e) => return Err(e),
        }
    }
    Ok(HomothetyVerdict::NoExhausted)
}

fn congruence_search(
    theta: &Matrix,
    theta_p: &Matrix,
    s0: &Scalar,
    vectors: &[Vec<Scalar>],
    cols: &mut Vec<Vec<Scalar>>,
    nodes: &AtomicU64,
    cap: u64,
) -> Result<bool> {
    let n = theta.rows();
    let d = cols.len();
    if d == n {
        return Ok(true);
    }
    let explored = nodes.fetch_add(1, Ordering::Relaxed) + 1;
    if explored > cap {
        return Err(Error::CapExceeded { cap, explored });
    }
    let span = Subspace::span(theta.field(), n, cols.iter().cloned());
    for v in vectors {
        if span.contains_vector(v) {
            continue;
        }
        let tv = theta_p.mul_vec(v);
        let ok = cols
            .iter()
            .chain([v])
            .enumerate()
            .all(|(j, c)| dot(c, &tv) == s0 * theta.get(j, d));
        if !ok {
            continue;
        }
        cols.push(v.clone());
        if congruence_search(theta, theta_p, s0, vectors, cols, nodes, cap)? {
            return Ok(true);
        }
        cols.pop();
    }
    Ok(false)
}

/// All invertible `n × n` matrices over F_p.
pub fn general_linear_group(field: FieldSpec, n: usize, cap: u64) -> Result<Vec<Matrix>> {
    let total = field.count_vectors(n * n).ok_or(Error::NotEnumerable)?;
    if total > cap {
        return Err(Error::CapExceeded { cap, explored: 0 });
    }
    Ok((0..total)
        .map(|i| {
            let d = field.vector_from_index(i, n * n);
            Matrix::from_rows(field, d.chunks(n.max(1)).map(<[Scalar]>::to_vec).collect())
                .unwrap_or_else(|_| Matrix::zeros(field, 0, 0))
        })
        .filter(|m| m.rows() == n && m.inverse().is_some())
        .collect())
}

/// Orbit representatives of `Sym(n, F_p)` under `Θ ↦ s₀⁻¹ ψᵀ Θ ψ`,
/// by exhaustive orbit enumeration.
pub fn homothety_classes(field: FieldSpec, n: usize, cap: u64) -> Result<Vec<Matrix>> {
    let pairs = crate::crossed::sym_pairs(n);
    let total = field.count_vectors(pairs.len()).ok_or(Error::NotEnumerable)?;
    let gl = general_linear_group(field, n, cap)?;
    let units = field.units()?;
    if total.saturating_mul(gl.len() as u64).saturating_mul(units.len() as u64) > cap.saturating_mul(100) {
        return Err(Error::CapExceeded { cap, explored: 0 });
    }
    let forms: Vec<Matrix> = (0..total)
        .map(|i| {
            let c = field.vector_from_index(i, pairs.len());
            let mut m = Matrix::zeros(field, n, n);
            for (p, &(a, b)) in pairs.iter().enumerate() {
                m.set(a, b, c[p].clone());
                m.set(b, a, c[p].clone());
            }
            m
        })
        .collect();
    let index: HashMap<&Matrix, usize> = forms.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut uf = UnionFind::new(forms.len());
    for (i, f) in forms.iter().enumerate() {
        for g in &gl {
            let base = g.transpose().mul(f).mul(g);
            for s in &units {
                let image = base.scale(s);
                uf.union(i, index[&image]);
            }
        }
    }
    let mut reps = Vec::new();
    for i in 0..forms.len() {
        if uf.find(i) == i {
            reps.push(forms[i].clone());
        }
    }
    Ok(reps)
}
