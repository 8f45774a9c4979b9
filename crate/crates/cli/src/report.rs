//! Machine-readable solve reports.
//!
//! Serialization is byte-deterministic: fixed field order, two-space
//! indentation, and serde_json's shortest round-trip float encoding, so
//! identical inputs and options always produce identical bytes and every
//! number re-parses to the exact double that was computed.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use sha2::{Digest, Sha256};
use symmax_core::classical::{ClassicalProblem, ClassicalSolution};
use symmax_core::quantum::SolverReport;

/// Lowercase hex SHA-256 of the raw problem-file bytes.
pub fn input_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub status: &'static str,
    pub state: State,
    pub multipliers: Vec<Multiplier>,
    pub log_partition: f64,
    pub entropy: f64,
    pub residuals: Vec<f64>,
    pub invariance_residual: f64,
    pub iterations: usize,
    pub solver: &'static str,
    pub tool_version: &'static str,
    pub input_digest: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum State {
    Quantum { matrix: Vec<Vec<[f64; 2]>> },
    Classical { probabilities: Vec<f64> },
}

/// One dual variable: `lambda` entries pair with the observables of the
/// problem file (in order), `gamma` entries with the compiled symmetry
/// constraints and their commutator provenance labels.
#[derive(Clone, Debug, Serialize)]
pub struct Multiplier {
    pub block: &'static str,
    pub label: String,
    pub value: f64,
}

impl ReportFile {
    pub fn from_quantum(
        r: &SolverReport,
        observable_labels: &[String],
        solver: &'static str,
        input_digest: String,
    ) -> Self {
        let m = r.state.dim();
        let matrix = (0..m)
            .map(|row| {
                (0..m)
                    .map(|col| {
                        let z = r.state.matrix().get(row, col);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        let mut multipliers = Vec::with_capacity(r.lambda.len() + r.gamma.len());
        for (label, &value) in observable_labels.iter().zip(&r.lambda) {
            multipliers.push(Multiplier { block: "lambda", label: label.clone(), value });
        }
        for (label, &value) in r.constraint_labels.iter().zip(&r.gamma) {
            multipliers.push(Multiplier { block: "gamma", label: label.clone(), value });
        }
        ReportFile {
            status: r.status.as_str(),
            state: State::Quantum { matrix },
            multipliers,
            log_partition: r.log_partition,
            entropy: r.entropy,
            residuals: r.residuals.clone(),
            invariance_residual: r.invariance,
            iterations: r.iterations,
            solver,
            tool_version: env!("CARGO_PKG_VERSION"),
            input_digest,
        }
    }

    pub fn from_classical(
        p: &ClassicalProblem,
        s: &ClassicalSolution,
        observable_labels: &[String],
        input_digest: String,
    ) -> Self {
        let multipliers = observable_labels
            .iter()
            .zip(&s.multipliers)
            .map(|(label, &value)| Multiplier {
                block: "lambda",
                label: label.clone(),
                value,
            })
            .collect();
        // Orbit expansion copies one representative per orbit, so a symmetric
        // solution scores exactly zero here.
        let invariance_residual = p
            .symmetry()
            .iter()
            .flat_map(|g| {
                (0..p.outcome_count())
                    .map(|j| (s.probabilities[j] - s.probabilities[g.apply(j)]).abs())
            })
            .fold(0.0, f64::max);
        ReportFile {
            status: s.status.as_str(),
            state: State::Classical { probabilities: s.probabilities.clone() },
            multipliers,
            log_partition: s.log_partition,
            entropy: s.entropy,
            residuals: s.residuals.clone(),
            invariance_residual,
            iterations: s.iterations,
            solver: "dual",
            tool_version: env!("CARGO_PKG_VERSION"),
            input_digest,
        }
    }

    /// Canonical byte encoding: pretty-printed JSON plus a trailing newline.
    /// Floats use the shortest decimal form that round-trips to the same
    /// double, so reading the report back loses nothing.
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut ser =
            serde_json::Serializer::with_formatter(&mut out, ReportFormatter::new());
        self.serialize(&mut ser).expect("finite floats serialize");
        out.push(b'\n');
        out
    }
}

/// Pretty printer that switches to inline style two array levels down, so a
/// density matrix renders one row per line with `[re, im]` pairs kept inline
/// instead of spreading every number across its own line.
struct ReportFormatter {
    array_depth: usize,
    indent: usize,
    has_value: bool,
}

impl ReportFormatter {
    fn new() -> Self {
        Self { array_depth: 0, indent: 0, has_value: false }
    }

    fn compact(&self) -> bool {
        self.array_depth >= 2
    }

    fn newline<W: io::Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl Formatter for ReportFormatter {
    fn begin_array<W: io::Write + ?Sized>(&mut self, w: &mut W) -> io::Result<()> {
        self.array_depth += 1;
        if !self.compact() {
            self.indent += 1;
        }
        self.has_value = false;
        w.write_all(b"[")
    }

    fn end_array<W: io::Write + ?Sized>(&mut self, w: &mut W) -> io::Result<()> {
        let was_compact = self.compact();
        self.array_depth -= 1;
        if was_compact {
            return w.write_all(b"]");
        }
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: io::Write + ?Sized>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if self.compact() {
            if !first {
                w.write_all(b", ")?;
            }
            return Ok(());
        }
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn end_array_value<W: io::Write + ?Sized>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: io::Write + ?Sized>(&mut self, w: &mut W) -> io::Result<()> {
        if !self.compact() {
            self.indent += 1;
        }
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: io::Write + ?Sized>(&mut self, w: &mut W) -> io::Result<()> {
        if self.compact() {
            return w.write_all(b"}");
        }
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: io::Write + ?Sized>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if self.compact() {
            if !first {
                w.write_all(b", ")?;
            }
            return Ok(());
        }
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: io::Write + ?Sized>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: io::Write + ?Sized>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}
