//! On-disk problem files: a serde mirror of the JSON schema and its
//! resolution into solver-ready problems.
//!
//! Top level: `{"kind": "classical"|"quantum", "outcomes"|"dim": n,
//! "observables": [...], "symmetry": {...}, "basis": ...}`. Classical
//! observables are per-outcome value rows; quantum observables name a preset,
//! give an inline matrix of `[re, im]` pairs, or an operator expression.
//! Symmetry generators follow the same convention, with permutations written
//! as cycle lists over 0-based outcome indices.

use serde::{Deserialize, Serialize};
use symmax_core::basis::{basis_for, named_operator, BasisKind, OperatorBasis};
use symmax_core::classical::ClassicalProblem;
use symmax_core::linalg::{C64, ComplexMatrix, HermitianOperator};
use symmax_core::quantum::QuantumProblem;
use symmax_core::symmetry::{Permutation, SymmetrySpec};

use crate::expr;
use crate::CliError;

/// Row-major complex matrix as nested `[re, im]` pairs.
pub type MatrixLiteral = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: Kind,
    /// Hilbert-space dimension (quantum problems).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Outcome count (classical problems).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observables: Vec<ObservableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisName>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisName {
    GellMann,
    TwoQubitPaper,
}

impl BasisName {
    fn kind(self) -> BasisKind {
        match self {
            BasisName::GellMann => BasisKind::GellMann,
            BasisName::TwoQubitPaper => BasisKind::TwoQubitPaper,
        }
    }
}

/// One mean-value constraint. Exactly one operator form must be given:
/// `values` for classical problems; `name`, `matrix`, or `expr` for quantum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    pub target: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryEntry {
    #[serde(rename = "type")]
    pub kind: SymmetryKind,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryKind {
    Lie,
    FiniteGroup,
    Permutations,
}

/// A symmetry generator: an operator expression, an inline matrix, or (for
/// permutations) a list of cycles. The JSON shapes are disjoint — a string,
/// a nested array of pairs, an array of integer arrays — so no tag is needed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorEntry {
    Expr(String),
    Cycles(Vec<Vec<usize>>),
    Matrix(MatrixLiteral),
}

/// A problem file resolved against the operator registry and validated by
/// the solver-side constructors.
#[derive(Clone, Debug)]
pub enum ResolvedProblem {
    Classical(ClassicalProblem),
    Quantum(QuantumProblem),
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn matrix_from_literal(lit: &MatrixLiteral, what: &str) -> Result<ComplexMatrix, CliError> {
    let rows = lit.len();
    if rows == 0 {
        return Err(input(format!("{what}: matrix must be non-empty")));
    }
    let mut data = Vec::with_capacity(rows * rows);
    for row in lit {
        if row.len() != rows {
            return Err(input(format!(
                "{what}: matrix must be square, got a row of {} in a {rows}-row matrix",
                row.len()
            )));
        }
        for &[re, im] in row {
            data.push(C64::new(re, im));
        }
    }
    ComplexMatrix::new(rows, rows, data)
        .map_err(|e| input(format!("{what}: {e}")))
}

impl ProblemFile {
    pub fn resolve(&self) -> Result<ResolvedProblem, CliError> {
        match self.kind {
            Kind::Classical => self.resolve_classical().map(ResolvedProblem::Classical),
            Kind::Quantum => self.resolve_quantum().map(ResolvedProblem::Quantum),
        }
    }

    /// Displayable per-observable labels for reports: the preset name, the
    /// expression text, or a positional placeholder for inline data.
    pub fn observable_labels(&self) -> Vec<String> {
        self.observables
            .iter()
            .enumerate()
            .map(|(i, o)| {
                if let Some(name) = &o.name {
                    name.clone()
                } else if let Some(src) = &o.expr {
                    src.clone()
                } else if o.matrix.is_some() {
                    format!("matrix_{}", i + 1)
                } else {
                    format!("A_{}", i + 1)
                }
            })
            .collect()
    }

    fn resolve_classical(&self) -> Result<ClassicalProblem, CliError> {
        let m = self
            .outcomes
            .ok_or_else(|| input("classical problems need \"outcomes\""))?;
        if self.dim.is_some() {
            return Err(input("classical problems take \"outcomes\", not \"dim\""));
        }
        if self.basis.is_some() {
            return Err(input("\"basis\" applies to quantum problems"));
        }
        let mut rows = Vec::with_capacity(self.observables.len());
        let mut targets = Vec::with_capacity(self.observables.len());
        for (i, entry) in self.observables.iter().enumerate() {
            let what = format!("observable {}", i + 1);
            entry.check_single_form(&what)?;
            let values = entry.values.as_ref().ok_or_else(|| {
                input(format!("{what}: classical observables are \"values\" rows"))
            })?;
            rows.push(values.clone());
            targets.push(entry.target);
        }
        let symmetry = match &self.symmetry {
            None => None,
            Some(entry) => {
                if entry.kind != SymmetryKind::Permutations {
                    return Err(input(format!(
                        "classical symmetry must have type \"permutations\", got \"{}\"",
                        entry.kind.as_str()
                    )));
                }
                let perms = entry
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(k, g)| match g {
                        GeneratorEntry::Cycles(cycles) => {
                            Permutation::from_cycles(m, cycles).map_err(|e| {
                                input(format!("generator {}: {e}", k + 1))
                            })
                        }
                        _ => Err(input(format!(
                            "generator {}: permutations are written as cycle lists",
                            k + 1
                        ))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(perms)
            }
        };
        Ok(ClassicalProblem::new(m, rows, targets, symmetry)?)
    }

    fn resolve_quantum(&self) -> Result<QuantumProblem, CliError> {
        let dim = self.dim.ok_or_else(|| input("quantum problems need \"dim\""))?;
        if self.outcomes.is_some() {
            return Err(input("quantum problems take \"dim\", not \"outcomes\""));
        }
        let basis: OperatorBasis = basis_for(
            self.basis.map_or(BasisKind::GellMann, BasisName::kind),
            dim,
        )?;
        let mut observables = Vec::with_capacity(self.observables.len());
        let mut targets = Vec::with_capacity(self.observables.len());
        for (i, entry) in self.observables.iter().enumerate() {
            let what = format!("observable {}", i + 1);
            entry.check_single_form(&what)?;
            observables.push(entry.hermitian(dim, &what)?);
            targets.push(entry.target);
        }
        let symmetry = match &self.symmetry {
            None => None,
            Some(entry) => Some(entry.quantum_spec(dim)?),
        };
        Ok(QuantumProblem::new(dim, observables, targets, symmetry, Some(basis))?)
    }
}

impl ObservableEntry {
    fn check_single_form(&self, what: &str) -> Result<(), CliError> {
        let given = [
            self.name.is_some(),
            self.matrix.is_some(),
            self.expr.is_some(),
            self.values.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if given != 1 {
            return Err(input(format!(
                "{what}: give exactly one of \"name\", \"matrix\", \"expr\", or \"values\""
            )));
        }
        Ok(())
    }

    fn hermitian(&self, dim: usize, what: &str) -> Result<HermitianOperator, CliError> {
        let mat = if let Some(name) = &self.name {
            return named_operator(name, dim).map_err(|e| input(format!("{what}: {e}")));
        } else if let Some(lit) = &self.matrix {
            matrix_from_literal(lit, what)?
        } else if let Some(src) = &self.expr {
            expr::parse_operator(src, dim).map_err(|e| input(format!("{what}: {e}")))?
        } else {
            return Err(input(format!(
                "{what}: quantum observables are \"name\", \"matrix\", or \"expr\""
            )));
        };
        if mat.rows() != dim {
            return Err(input(format!(
                "{what}: expected a {dim}x{dim} matrix, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        HermitianOperator::new(mat).map_err(|e| input(format!("{what}: {e}")))
    }
}

impl SymmetryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryKind::Lie => "lie",
            SymmetryKind::FiniteGroup => "finite_group",
            SymmetryKind::Permutations => "permutations",
        }
    }
}

impl SymmetryEntry {
    fn quantum_spec(&self, dim: usize) -> Result<SymmetrySpec, CliError> {
        let matrices = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let what = format!("generator {}", k + 1);
                match g {
                    GeneratorEntry::Expr(src) => expr::parse_operator(src, dim)
                        .map_err(|e| input(format!("{what}: {e}"))),
                    GeneratorEntry::Matrix(lit) => matrix_from_literal(lit, &what),
                    GeneratorEntry::Cycles(_) => Err(input(format!(
                        "{what}: cycle lists declare classical permutation symmetry"
                    ))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        match self.kind {
            SymmetryKind::Lie => {
                let gens = matrices
                    .into_iter()
                    .enumerate()
                    .map(|(k, m)| {
                        HermitianOperator::new(m)
                            .map_err(|e| input(format!("generator {}: {e}", k + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SymmetrySpec::LieGenerators(gens))
            }
            // Unitarity is validated by the problem constructor.
            SymmetryKind::FiniteGroup => Ok(SymmetrySpec::FiniteGroupGenerators(matrices)),
            SymmetryKind::Permutations => Err(input(
                "permutation symmetry applies to classical problems",
            )),
        }
    }
}
