//! Compilation of symmetry specifications into linear expectation constraints.
//!
//! A state is invariant under a symmetry exactly when it commutes with every
//! generator. Expanding that commutation condition against a Hermitian basis
//! `{O_j}` of the operator space turns it into mean-value constraints:
//!
//! * Lie generators `Q_k` (Hermitian): `[rho, Q_k] = 0` ⟺
//!   `Tr(rho [iQ_k, O_j]) = 0` for all `j`, and each `[iQ_k, O_j]` is
//!   Hermitian, so these are ordinary zero-target constraints;
//! * finite-group generators `U_k` (unitary): `[iU_k, O_j]` need not be
//!   Hermitian, so each commutator is split into its Hermitian and
//!   anti-Hermitian parts, giving up to `2 m^2` real constraints per
//!   generator that jointly encode the complex condition `[rho, U_k] = 0`;
//! * classical permutations act on outcomes directly and are handled by
//!   orbit reduction instead of operator constraints.
//!
//! The raw constraint lists are heavily linearly dependent; they are reduced
//! to an HS-orthonormal spanning set before the solvers see them.

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, hs_inner, C64, ComplexMatrix, HermitianOperator,
};
use crate::linreal;
use crate::par;
use crate::quantum::DensityMatrix;

/// Unitarity tolerance for finite-group generators.
const UNITARITY_TOL: f64 = 1e-10;
/// Gram-Schmidt drop threshold on the residual HS norm.
const GS_DROP_TOL: f64 = 1e-10;
/// Relative eigenvalue threshold for commutant (nullspace) membership.
const NULLSPACE_TOL: f64 = 1e-10;

/// A bijection on `{0..m-1}`, stored as the image list `j -> images[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &img in &images {
            if img >= m || seen[img] {
                return Err(Error::Domain(format!(
                    "not a bijection on 0..{m}: image list {images:?}"
                )));
            }
            seen[img] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation of `{0..m-1}` from disjoint cycles (0-based).
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut moved = vec![false; m];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from >= m || to >= m {
                    return Err(Error::Domain(format!(
                        "cycle entry out of range for {m} outcomes: {cycle:?}"
                    )));
                }
                if moved[from] {
                    return Err(Error::Domain(format!(
                        "cycles are not disjoint at index {from}"
                    )));
                }
                moved[from] = true;
                images[from] = to;
            }
        }
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

/// A symmetry declaration: Lie-algebra generators, finite-group unitaries,
/// or classical outcome permutations.
#[derive(Clone, Debug)]
pub enum SymmetrySpec {
    LieGenerators(Vec<HermitianOperator>),
    FiniteGroupGenerators(Vec<ComplexMatrix>),
    ClassicalPermutations(Vec<Permutation>),
}

impl SymmetrySpec {
    /// Validates internal consistency (shared dimension, unitarity for the
    /// finite-group case) and returns the common dimension.
    pub fn validate(&self) -> Result<usize> {
        match self {
            SymmetrySpec::LieGenerators(gens) => {
                let dim = common_dim(gens.iter().map(HermitianOperator::dim))?;
                Ok(dim)
            }
            SymmetrySpec::FiniteGroupGenerators(us) => {
                let dim = common_dim(us.iter().map(ComplexMatrix::rows))?;
                for (k, u) in us.iter().enumerate() {
                    check_unitary(u).map_err(|e| {
                        Error::Domain(format!("generator {} is not unitary: {e}", k + 1))
                    })?;
                }
                Ok(dim)
            }
            SymmetrySpec::ClassicalPermutations(ps) => {
                common_dim(ps.iter().map(Permutation::len))
            }
        }
    }

    pub fn kind_str(&self) -> &'static str {
        match self {
            SymmetrySpec::LieGenerators(_) => "lie",
            SymmetrySpec::FiniteGroupGenerators(_) => "finite_group",
            SymmetrySpec::ClassicalPermutations(_) => "permutations",
        }
    }
}

fn common_dim(dims: impl Iterator<Item = usize>) -> Result<usize> {
    let mut out = None;
    for d in dims {
        match out {
            None => out = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::Dimension { expected: prev, got: d })
            }
            _ => {}
        }
    }
    out.ok_or_else(|| Error::Domain("empty generator list".into()))
}

fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    if !u.is_square() || u.rows() == 0 {
        return Err(Error::Domain("unitary must be square and non-empty".into()));
    }
    let prod = u.matmul(&u.adjoint())?;
    let dev = prod.max_abs_diff(&ComplexMatrix::identity(u.rows()));
    if dev > UNITARITY_TOL {
        return Err(Error::Domain(format!("|UU^dagger - I|_max = {dev:.3e}")));
    }
    Ok(())
}

/// Which Hermitian piece of a finite-group commutator a constraint came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorPart {
    Hermitian,
    AntiHermitian,
}

/// Where a constraint operator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintSource {
    /// Observable number `i` of the problem (0-based).
    Observable(usize),
    /// The raw commutator of generator `generator` with basis element
    /// `basis_index` (both 0-based) that introduced this direction during
    /// orthonormalization.
    Symmetry { generator: usize, basis_index: usize, part: CommutatorPart },
}

/// An HS-orthonormal set of Hermitian constraint operators with targets.
///
/// Symmetry compilation produces sets whose targets are all zero; the solvers
/// prepend the observable constraints with their mean-value targets.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    dim: usize,
    operators: Vec<HermitianOperator>,
    targets: Vec<f64>,
    labels: Vec<String>,
    provenance: Vec<ConstraintSource>,
}

impl ConstraintSet {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            operators: Vec::new(),
            targets: Vec::new(),
            labels: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[HermitianOperator] {
        &self.operators
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &[ConstraintSource] {
        &self.provenance
    }
}

/// Raw constraint candidate prior to orthonormalization.
struct RawConstraint {
    op: HermitianOperator,
    label: String,
    source: ConstraintSource,
}

/// Modified Gram-Schmidt under the HS inner product with re-orthogonalization.
/// Residual directions with norm at most `1e-10` are dropped; survivors are
/// normalized and labeled by the raw operator that introduced them.
fn orthonormalize_tagged(raw: Vec<RawConstraint>, dim: usize) -> ConstraintSet {
    let mut set = ConstraintSet::empty(dim);
    for cand in raw {
        let mut v = cand.op;
        for _pass in 0..2 {
            for c in &set.operators {
                let overlap = hs_inner(c, &v).expect("same dim");
                if overlap != 0.0 {
                    v = v.sub(&c.scaled(overlap)).expect("same dim");
                }
            }
        }
        let norm = v.hs_norm();
        if norm > GS_DROP_TOL {
            set.operators.push(v.scaled(1.0 / norm));
            set.targets.push(0.0);
            set.labels.push(cand.label);
            set.provenance.push(cand.source);
        }
    }
    set
}

/// Compiles Lie-algebra generators into zero-target constraints by expanding
/// `[iQ_k, O_j]` over the basis and reducing to an orthonormal spanning set.
pub fn compile_lie_constraints(
    generators: &[HermitianOperator],
    basis: &crate::basis::OperatorBasis,
) -> Result<ConstraintSet> {
    let m = basis.dim();
    for q in generators {
        if q.dim() != m {
            return Err(Error::Dimension { expected: m, got: q.dim() });
        }
    }
    let nb = basis.len();
    let raw = par::map_indexed(generators.len() * nb, |idx| {
        let (k, j) = (idx / nb, idx % nb);
        let iq = generators[k].matrix().scaled(C64::new(0.0, 1.0));
        let comm = commutator(&iq, basis.elements()[j].matrix()).expect("dims checked");
        let op = HermitianOperator::symmetrized(&comm).expect("commutator with iQ is Hermitian");
        RawConstraint {
            op,
            label: format!("[iQ{},{}]", k + 1, basis.labels()[j]),
            source: ConstraintSource::Symmetry {
                generator: k,
                basis_index: j,
                part: CommutatorPart::Hermitian,
            },
        }
    });
    Ok(orthonormalize_tagged(raw, m))
}

/// Compiles finite-group generators into zero-target constraints. Each
/// commutator `[iU_k, O_j]` is split into Hermitian and anti-Hermitian parts
/// so the full complex condition `[rho, U_k] = 0` survives as real-valued
/// constraint functionals.
pub fn compile_finite_group_constraints(
    unitaries: &[ComplexMatrix],
    basis: &crate::basis::OperatorBasis,
) -> Result<ConstraintSet> {
    let m = basis.dim();
    for u in unitaries {
        if u.rows() != m || u.cols() != m {
            return Err(Error::Dimension { expected: m, got: u.rows() });
        }
        check_unitary(u)?;
    }
    let nb = basis.len();
    let pairs = par::map_indexed(unitaries.len() * nb, |idx| {
        let (k, j) = (idx / nb, idx % nb);
        let iu = unitaries[k].scaled(C64::new(0.0, 1.0));
        let a = commutator(&iu, basis.elements()[j].matrix()).expect("dims checked");
        let adj = a.adjoint();
        let herm = a.add(&adj).expect("same dims").scaled(C64::new(0.5, 0.0));
        let anti = a.sub(&adj).expect("same dims").scaled(C64::new(0.0, -0.5));
        (
            HermitianOperator::symmetrized(&herm).expect("Hermitian part"),
            HermitianOperator::symmetrized(&anti).expect("anti-Hermitian part mapped"),
            k,
            j,
        )
    });
    let mut raw = Vec::with_capacity(2 * pairs.len());
    for (herm, anti, k, j) in pairs {
        raw.push(RawConstraint {
            op: herm,
            label: format!("[iU{},{}]:h", k + 1, basis.labels()[j]),
            source: ConstraintSource::Symmetry {
                generator: k,
                basis_index: j,
                part: CommutatorPart::Hermitian,
            },
        });
        raw.push(RawConstraint {
            op: anti,
            label: format!("[iU{},{}]:a", k + 1, basis.labels()[j]),
            source: ConstraintSource::Symmetry {
                generator: k,
                basis_index: j,
                part: CommutatorPart::AntiHermitian,
            },
        });
    }
    Ok(orthonormalize_tagged(raw, m))
}

/// Reduces an arbitrary list of Hermitian operators to an HS-orthonormal
/// spanning set with zero targets. Provenance records the raw index that
/// introduced each surviving direction.
pub fn orthonormalize_constraints(
    raw: &[HermitianOperator],
    dim: usize,
) -> Result<ConstraintSet> {
    for op in raw {
        if op.dim() != dim {
            return Err(Error::Dimension { expected: dim, got: op.dim() });
        }
    }
    let tagged = raw
        .iter()
        .enumerate()
        .map(|(j, op)| RawConstraint {
            op: op.clone(),
            label: format!("raw{}", j + 1),
            source: ConstraintSource::Symmetry {
                generator: 0,
                basis_index: j,
                part: CommutatorPart::Hermitian,
            },
        })
        .collect();
    Ok(orthonormalize_tagged(tagged, dim))
}

/// Orbit partition of `{0..m-1}` under a permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    m: usize,
    orbits: Vec<Vec<usize>>,
    degeneracies: Vec<usize>,
}

impl OrbitPartition {
    pub fn outcome_count(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbits sorted by smallest member; members ascending.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    /// Index of the orbit containing outcome `j`.
    pub fn orbit_of(&self, j: usize) -> usize {
        self.orbits
            .iter()
            .position(|orbit| orbit.binary_search(&j).is_ok())
            .expect("orbits cover every outcome")
    }
}

/// Orbits of the group *generated* by the given permutations, by union-find
/// closure over generator applications. Orbit order is deterministic: sorted
/// by smallest member.
pub fn orbits(permutations: &[Permutation], m: usize) -> Result<OrbitPartition> {
    for p in permutations {
        if p.len() != m {
            return Err(Error::Dimension { expected: m, got: p.len() });
        }
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, mut j: usize) -> usize {
        while parent[j] != j {
            parent[j] = parent[parent[j]];
            j = parent[j];
        }
        j
    }
    for p in permutations {
        for j in 0..m {
            let a = find(&mut parent, j);
            let b = find(&mut parent, p.apply(j));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); m];
    for j in 0..m {
        let root = find(&mut parent, j);
        buckets[root].push(j);
    }
    let orbits: Vec<Vec<usize>> = buckets.into_iter().filter(|b| !b.is_empty()).collect();
    let degeneracies = orbits.iter().map(Vec::len).collect();
    Ok(OrbitPartition { m, orbits, degeneracies })
}

/// HS-orthonormal coordinate basis of the real vector space of m×m Hermitian
/// matrices: diagonal units, then for each `j < k` the normalized symmetric
/// and antisymmetric pairs.
pub(crate) fn hermitian_coord_basis(m: usize) -> Vec<HermitianOperator> {
    let mut out = Vec::with_capacity(m * m);
    for j in 0..m {
        let mut d = vec![0.0; m];
        d[j] = 1.0;
        out.push(HermitianOperator::from_diag(&d).expect("non-empty"));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..m {
        for k in (j + 1)..m {
            let mut sym = ComplexMatrix::zeros(m, m);
            sym.set(j, k, C64::new(inv_sqrt2, 0.0));
            sym.set(k, j, C64::new(inv_sqrt2, 0.0));
            out.push(HermitianOperator::new(sym).expect("Hermitian"));
            let mut anti = ComplexMatrix::zeros(m, m);
            anti.set(j, k, C64::new(0.0, -inv_sqrt2));
            anti.set(k, j, C64::new(0.0, inv_sqrt2));
            out.push(HermitianOperator::new(anti).expect("Hermitian"));
        }
    }
    out
}

/// HS-orthogonal projection of `a` onto the commutant of the symmetry
/// generators, `{X Hermitian : [X, Q_k] = 0 for all k}` (with
/// `U X U^dagger = X` for finite-group generators).
///
/// The commutant is found as the nullspace of the stacked constraint maps on
/// the m²-dimensional real coordinate space of Hermitian matrices. Used as a
/// feasibility pre-check: a target mean is achievable under the symmetry iff
/// it is within the spectral range of the projected observable.
pub fn commutant_project(a: &HermitianOperator, spec: &SymmetrySpec) -> Result<HermitianOperator> {
    let m = a.dim();
    let dim = spec.validate()?;
    if dim != m {
        return Err(Error::Dimension { expected: m, got: dim });
    }
    let images: Vec<Box<dyn Fn(&HermitianOperator) -> HermitianOperator>> = match spec {
        SymmetrySpec::ClassicalPermutations(_) => {
            return Err(Error::Domain(
                "commutant projection applies to Lie or finite-group symmetries".into(),
            ))
        }
        SymmetrySpec::LieGenerators(gens) => gens
            .iter()
            .map(|q| {
                let qm = q.matrix().clone();
                Box::new(move |b: &HermitianOperator| {
                    let comm = commutator(b.matrix(), &qm).expect("dims match");
                    HermitianOperator::symmetrized(&comm.scaled(C64::new(0.0, 1.0)))
                        .expect("i[B,Q] is Hermitian")
                }) as Box<dyn Fn(&HermitianOperator) -> HermitianOperator>
            })
            .collect(),
        SymmetrySpec::FiniteGroupGenerators(us) => us
            .iter()
            .map(|u| {
                let u = u.clone();
                let udag = u.adjoint();
                Box::new(move |b: &HermitianOperator| {
                    let conj = u
                        .matmul(b.matrix())
                        .and_then(|t| t.matmul(&udag))
                        .expect("dims match");
                    let diff = conj.sub(b.matrix()).expect("dims match");
                    HermitianOperator::symmetrized(&diff).expect("UXU^dagger - X is Hermitian")
                }) as Box<dyn Fn(&HermitianOperator) -> HermitianOperator>
            })
            .collect(),
    };

    let coord = hermitian_coord_basis(m);
    let n = coord.len();
    // G = sum_k L_k^T L_k where column alpha of L_k holds the coordinates of
    // the generator-k image of coordinate element alpha.
    let mut g = vec![vec![0.0; n]; n];
    for image in &images {
        let cols: Vec<Vec<f64>> = coord
            .iter()
            .map(|b| {
                let y = image(b);
                coord.iter().map(|bb| hs_inner(bb, &y).expect("same dim")).collect()
            })
            .collect();
        for alpha in 0..n {
            for beta in alpha..n {
                let mut acc = 0.0;
                for r in 0..n {
                    acc += cols[alpha][r] * cols[beta][r];
                }
                g[alpha][beta] += acc;
                if beta != alpha {
                    g[beta][alpha] += acc;
                }
            }
        }
    }

    let (eigenvalues, vectors) = linreal::sym_eig(&g);
    let max_eig = eigenvalues.iter().copied().fold(0.0f64, f64::max);
    let cutoff = NULLSPACE_TOL * (1.0 + max_eig);

    let mut projected = ComplexMatrix::zeros(m, m);
    for (k, &lam) in eigenvalues.iter().enumerate() {
        if lam > cutoff {
            continue;
        }
        // Commutant direction: sum_alpha v[alpha] B_alpha.
        let mut dir = ComplexMatrix::zeros(m, m);
        for (alpha, b) in coord.iter().enumerate() {
            let w = vectors[alpha][k];
            if w != 0.0 {
                dir = dir.add(&b.matrix().scaled(C64::new(w, 0.0))).expect("same dim");
            }
        }
        let dir = HermitianOperator::symmetrized(&dir).expect("real combination");
        let overlap = hs_inner(&dir, a).expect("same dim");
        projected = projected
            .add(&dir.matrix().scaled(C64::new(overlap, 0.0)))
            .expect("same dim");
    }
    HermitianOperator::symmetrized(&projected)
}

/// How far a state is from being invariant under the symmetry.
///
/// Zero (within 1e-12) exactly on invariant states. The classical case
/// requires a diagonal state and compares orbit members directly.
pub fn invariance_residual(rho: &DensityMatrix, spec: &SymmetrySpec) -> Result<f64> {
    let m = rho.dim();
    let dim = spec.validate()?;
    if dim != m {
        return Err(Error::Dimension { expected: m, got: dim });
    }
    match spec {
        SymmetrySpec::LieGenerators(gens) => {
            let mut worst = 0.0f64;
            for q in gens {
                worst = worst.max(commutator(rho.matrix(), q.matrix())?.max_abs());
            }
            Ok(worst)
        }
        SymmetrySpec::FiniteGroupGenerators(us) => {
            let mut worst = 0.0f64;
            for u in us {
                let conj = u.matmul(rho.matrix())?.matmul(&u.adjoint())?;
                worst = worst.max(conj.max_abs_diff(rho.matrix()));
            }
            Ok(worst)
        }
        SymmetrySpec::ClassicalPermutations(ps) => {
            let mat = rho.matrix();
            let tol = 1e-12 * (1.0 + mat.max_abs());
            for r in 0..m {
                for c in 0..m {
                    if r != c && mat.get(r, c).norm() > tol {
                        return Err(Error::Domain(
                            "permutation symmetry applies to diagonal states only".into(),
                        ));
                    }
                }
            }
            let p: Vec<f64> = (0..m).map(|j| mat.get(j, j).re).collect();
            let mut worst = 0.0f64;
            for g in ps {
                for (j, &pj) in p.iter().enumerate() {
                    worst = worst.max((pj - p[g.apply(j)]).abs());
                }
            }
            Ok(worst)
        }
    }
}
