//! Hermitian operator bases and named operator presets.
//!
//! Constraint compilation expands commutators against a full Hermitian basis
//! of the operator space. Two bases are provided: the generalized Gell-Mann
//! basis for any dimension (identity plus symmetric pairs, antisymmetric
//! pairs, and traceless diagonals, in the conventional interleaved order),
//! and the fixed two-qubit elementary basis of sixteen unit-entry matrices.
//! Gell-Mann elements keep the standard unnormalized convention
//! `Tr(O_j^2) = 2`; nothing downstream assumes orthonormality.

use crate::error::{Error, Result};
use crate::linalg::{C64, ComplexMatrix, HermitianOperator};

/// An ordered, labeled Hermitian basis of the m×m operator space.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<HermitianOperator>,
    labels: Vec<String>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

fn unit(dim: usize, r: usize, c: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    m.set(r, c, C64::new(1.0, 0.0));
    m
}

/// `|j><k| + |k><j|` for j < k.
fn sym_pair(dim: usize, j: usize, k: usize) -> HermitianOperator {
    let m = unit(dim, j, k).add(&unit(dim, k, j)).expect("same shape");
    HermitianOperator::new(m).expect("symmetric pair is Hermitian")
}

/// `-i|j><k| + i|k><j|` for j < k (entry (j,k) = -i).
fn antisym_pair(dim: usize, j: usize, k: usize) -> HermitianOperator {
    let m = unit(dim, j, k)
        .scaled(C64::new(0.0, -1.0))
        .add(&unit(dim, k, j).scaled(C64::new(0.0, 1.0)))
        .expect("same shape");
    HermitianOperator::new(m).expect("antisymmetric pair is Hermitian")
}

/// Traceless diagonal `sqrt(2/(l(l+1))) (|1><1| + .. + |l><l| - l|l+1><l+1|)`.
fn diag_element(dim: usize, l: usize) -> HermitianOperator {
    let norm = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
    let mut diag = vec![0.0; dim];
    for d in diag.iter_mut().take(l) {
        *d = norm;
    }
    diag[l] = -norm * l as f64;
    HermitianOperator::from_diag(&diag).expect("non-empty diagonal")
}

/// The identity plus the m²−1 generalized Gell-Mann matrices.
///
/// Elements follow the conventional interleaved order: for each upper index
/// `k = 2..=m`, the symmetric and antisymmetric pairs `(j, k)` for `j < k`,
/// then the diagonal element `h_{k-1}`. For m = 2 this yields
/// `I, sigma_x, sigma_y, sigma_z`; for m = 3, the identity and the eight
/// Gell-Mann matrices in their textbook numbering.
pub fn gell_mann_basis(m: usize) -> Result<OperatorBasis> {
    if m < 2 {
        return Err(Error::Domain(format!("Gell-Mann basis needs dim >= 2, got {m}")));
    }
    let mut elements = vec![HermitianOperator::identity(m)?];
    let mut labels = vec!["I".to_string()];
    let mut index = 0;
    for k in 1..m {
        for j in 0..k {
            index += 1;
            elements.push(sym_pair(m, j, k));
            labels.push(format!("gm_{index}"));
            index += 1;
            elements.push(antisym_pair(m, j, k));
            labels.push(format!("gm_{index}"));
        }
        index += 1;
        elements.push(diag_element(m, k));
        labels.push(format!("gm_{index}"));
    }
    Ok(OperatorBasis { dim: m, elements, labels })
}

/// The fixed sixteen-element two-qubit basis of unit-entry Hermitian
/// matrices: the four diagonal units, then for each position pair (in the
/// order (1,2), (1,3), (1,4), (2,3), (2,4), (3,4)) the symmetric pair
/// followed by the antisymmetric pair with `+i` above the diagonal.
pub fn two_qubit_paper_basis() -> OperatorBasis {
    let dim = 4;
    let mut elements = Vec::with_capacity(16);
    for j in 0..4 {
        let mut d = vec![0.0; 4];
        d[j] = 1.0;
        elements.push(HermitianOperator::from_diag(&d).expect("non-empty"));
    }
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (j, k) in pairs {
        elements.push(sym_pair(dim, j, k));
        // +i above the diagonal, the mirror convention of the Gell-Mann
        // antisymmetric elements.
        let m = unit(dim, j, k)
            .scaled(C64::new(0.0, 1.0))
            .add(&unit(dim, k, j).scaled(C64::new(0.0, -1.0)))
            .expect("same shape");
        elements.push(HermitianOperator::new(m).expect("Hermitian"));
    }
    let labels = (1..=16).map(|k| format!("O_{k}")).collect();
    OperatorBasis { dim, elements, labels }
}

/// Kind of basis to build for a given problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    GellMann,
    TwoQubitPaper,
}

/// Builds the basis of the given kind for dimension `m`.
pub fn basis_for(kind: BasisKind, m: usize) -> Result<OperatorBasis> {
    match kind {
        BasisKind::GellMann => gell_mann_basis(m),
        BasisKind::TwoQubitPaper => {
            if m != 4 {
                return Err(Error::Domain(format!(
                    "the two-qubit basis is fixed at dim 4, got {m}"
                )));
            }
            Ok(two_qubit_paper_basis())
        }
    }
}

/// Preset operators by name.
///
/// Registry: `sigma_x`, `sigma_y`, `sigma_z` (dim 2), `J_z` (dim 3,
/// `diag(1, 0, -1)` in ħ = 1 units), `identity` (any dim).
pub fn named_operator(name: &str, dim: usize) -> Result<HermitianOperator> {
    if dim == 0 {
        return Err(Error::Domain("operator dimension must be positive".into()));
    }
    match name {
        "sigma_x" | "sigma_y" | "sigma_z" => {
            if dim != 2 {
                return Err(Error::Domain(format!("{name} is a dim-2 operator, got dim {dim}")));
            }
            let op = match name {
                "sigma_x" => sym_pair(2, 0, 1),
                "sigma_y" => antisym_pair(2, 0, 1),
                _ => HermitianOperator::from_diag(&[1.0, -1.0])?,
            };
            Ok(op)
        }
        "J_z" => {
            if dim != 3 {
                return Err(Error::Domain(format!("J_z is a dim-3 operator, got dim {dim}")));
            }
            HermitianOperator::from_diag(&[1.0, 0.0, -1.0])
        }
        "identity" => HermitianOperator::identity(dim),
        _ => Err(Error::Lookup(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_inner;
    use crate::linreal;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gram(basis: &OperatorBasis) -> Vec<Vec<f64>> {
        let n = basis.len();
        let mut g = vec![vec![0.0; n]; n];
        for j in 0..n {
            for k in 0..n {
                g[j][k] = hs_inner(&basis.elements()[j], &basis.elements()[k]).unwrap();
            }
        }
        g
    }

    #[test]
    fn qubit_basis_is_identity_and_paulis() {
        let b = gell_mann_basis(2).unwrap();
        assert_eq!(b.labels(), &["I", "gm_1", "gm_2", "gm_3"]);
        let sx = named_operator("sigma_x", 2).unwrap();
        let sy = named_operator("sigma_y", 2).unwrap();
        let sz = named_operator("sigma_z", 2).unwrap();
        assert_eq!(b.elements()[1], sx);
        assert_eq!(b.elements()[2], sy);
        assert_eq!(b.elements()[3], sz);
    }

    #[test]
    fn qutrit_basis_matches_gell_mann_matrices() {
        let b = gell_mann_basis(3).unwrap();
        assert_eq!(b.len(), 9);
        // gm_3 = diag(1, -1, 0).
        let gm3 = b.elements()[3].matrix();
        assert!((gm3.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((gm3.get(1, 1).re + 1.0).abs() < 1e-15);
        assert!(gm3.get(2, 2).norm() < 1e-15);
        // gm_8 = diag(1, 1, -2)/sqrt(3).
        let s3 = 3.0f64.sqrt();
        let gm8 = b.elements()[8].matrix();
        assert!((gm8.get(0, 0).re - 1.0 / s3).abs() < 1e-15);
        assert!((gm8.get(1, 1).re - 1.0 / s3).abs() < 1e-15);
        assert!((gm8.get(2, 2).re + 2.0 / s3).abs() < 1e-15);
        // gm_2 has -i at (1, 2); gm_5 has -i at (1, 3); gm_7 has -i at (2, 3).
        assert!((b.elements()[2].matrix().get(0, 1) - C64::new(0., -1.)).norm() < 1e-15);
        assert!((b.elements()[5].matrix().get(0, 2) - C64::new(0., -1.)).norm() < 1e-15);
        assert!((b.elements()[7].matrix().get(1, 2) - C64::new(0., -1.)).norm() < 1e-15);
        // gm_4 and gm_6 are the symmetric pairs (1,3) and (2,3).
        assert!((b.elements()[4].matrix().get(0, 2) - C64::new(1., 0.)).norm() < 1e-15);
        assert!((b.elements()[6].matrix().get(1, 2) - C64::new(1., 0.)).norm() < 1e-15);
    }

    #[test]
    fn gell_mann_orthogonality_and_norms() {
        for m in 2..=5 {
            let b = gell_mann_basis(m).unwrap();
            assert_eq!(b.len(), m * m);
            for (j, ej) in b.elements().iter().enumerate() {
                if j > 0 {
                    assert!(ej.matrix().trace().unwrap().norm() < 1e-14, "gm_{j} not traceless");
                    assert!((hs_inner(ej, ej).unwrap() - 2.0).abs() < 1e-12);
                }
                for (k, ek) in b.elements().iter().enumerate() {
                    if j != k {
                        assert!(
                            hs_inner(ej, ek).unwrap().abs() < 1e-12,
                            "dim {m}: elements {j} and {k} not orthogonal"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gell_mann_gram_nonsingular() {
        for m in [2, 3, 4] {
            let b = gell_mann_basis(m).unwrap();
            let g = gram(&b);
            let min = linreal::min_eigenvalue(&g);
            assert!(min > 1e-10, "dim {m}: Gram min eigenvalue {min}");
        }
    }

    #[test]
    fn rejects_dim_below_two() {
        assert!(matches!(gell_mann_basis(1), Err(Error::Domain(_))));
    }

    #[test]
    fn two_qubit_basis_layout() {
        let b = two_qubit_paper_basis();
        assert_eq!(b.len(), 16);
        assert_eq!(b.dim(), 4);
        assert_eq!(b.labels()[0], "O_1");
        assert_eq!(b.labels()[15], "O_16");
        // O_1 = diag(1, 0, 0, 0).
        let o1 = b.elements()[0].matrix();
        assert!((o1.get(0, 0).re - 1.0).abs() < 1e-15);
        for j in 1..4 {
            assert!(o1.get(j, j).norm() < 1e-15);
        }
        // O_5 is the symmetric unit pair on (1, 2).
        let o5 = b.elements()[4].matrix();
        assert!((o5.get(0, 1) - C64::new(1., 0.)).norm() < 1e-15);
        assert!((o5.get(1, 0) - C64::new(1., 0.)).norm() < 1e-15);
        // O_6 carries +i above the diagonal.
        let o6 = b.elements()[5].matrix();
        assert!((o6.get(0, 1) - C64::new(0., 1.)).norm() < 1e-15);
        assert!((o6.get(1, 0) - C64::new(0., -1.)).norm() < 1e-15);
        // O_16 is the antisymmetric pair on (3, 4).
        let o16 = b.elements()[15].matrix();
        assert!((o16.get(2, 3) - C64::new(0., 1.)).norm() < 1e-15);
    }

    #[test]
    fn two_qubit_gram_is_diagonal_with_unit_and_two_entries() {
        let b = two_qubit_paper_basis();
        let g = gram(&b);
        for j in 0..16 {
            for k in 0..16 {
                if j == k {
                    let expect = if j < 4 { 1.0 } else { 2.0 };
                    assert!((g[j][k] - expect).abs() < 1e-12);
                } else {
                    assert!(g[j][k].abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn basis_expansion_recovers_random_hermitian() {
        // Solve G c = t with t_j = Tr(O_j H), rebuild sum c_j O_j, compare.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (kind, m) in [
            (BasisKind::GellMann, 2),
            (BasisKind::GellMann, 3),
            (BasisKind::GellMann, 4),
            (BasisKind::TwoQubitPaper, 4),
        ] {
            let b = basis_for(kind, m).unwrap();
            let mut h = ComplexMatrix::zeros(m, m);
            for r in 0..m {
                h.set(r, r, C64::new(rng.gen_range(-1.0..1.0), 0.0));
                for c in (r + 1)..m {
                    let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    h.set(r, c, z);
                    h.set(c, r, z.conj());
                }
            }
            let h = HermitianOperator::new(h).unwrap();
            let g = gram(&b);
            let t: Vec<f64> =
                b.elements().iter().map(|o| hs_inner(o, &h).unwrap()).collect();
            let coeff = linreal::solve(&g, &t).expect("Gram nonsingular");
            let mut rebuilt = ComplexMatrix::zeros(m, m);
            for (cj, oj) in coeff.iter().zip(b.elements()) {
                rebuilt = rebuilt.add(&oj.matrix().scaled(C64::new(*cj, 0.0))).unwrap();
            }
            assert!(
                rebuilt.max_abs_diff(h.matrix()) < 1e-10,
                "expansion failed for {kind:?} dim {m}"
            );
        }
    }

    #[test]
    fn named_operator_registry() {
        let sz = named_operator("sigma_z", 2).unwrap();
        assert!((sz.matrix().get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((sz.matrix().get(1, 1).re + 1.0).abs() < 1e-15);
        let jz = named_operator("J_z", 3).unwrap();
        assert!((jz.matrix().get(0, 0).re - 1.0).abs() < 1e-15);
        assert!(jz.matrix().get(1, 1).norm() < 1e-15);
        assert!((jz.matrix().get(2, 2).re + 1.0).abs() < 1e-15);
        let id5 = named_operator("identity", 5).unwrap();
        assert_eq!(id5, HermitianOperator::identity(5).unwrap());
        assert!(matches!(named_operator("sigma_w", 2), Err(Error::Lookup(_))));
        assert!(matches!(named_operator("J_z", 2), Err(Error::Domain(_))));
        assert!(matches!(named_operator("sigma_x", 3), Err(Error::Domain(_))));
    }
}
