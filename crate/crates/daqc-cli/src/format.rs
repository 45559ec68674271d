//! JSON file formats for problems, schedules, and verification reports.
//!
//! All floating-point numbers are serialized with 17 significant digits
//! (`{:.16e}`), enough to round-trip any finite `f64` exactly, so
//! parse → serialize of a file this crate produced is byte-identical.

use daqc_core::{
    HamiltonianError, PauliAxis, Schedule, SqgParams, TrotterReport, TwoBodyHamiltonian,
};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io;

/// Tolerance on the unit-length check for rotation axes read from files.
/// Serialized axes are unit to full precision; this only rejects files
/// that were hand-edited into something geometrically meaningless.
const AXIS_UNIT_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Failure to read a document: malformed JSON, a structurally invalid
/// document, or coupling data the model types reject.
#[derive(Debug)]
pub enum FormatError {
    /// The text is not valid JSON or does not match the expected shape.
    Json(serde_json::Error),
    /// The JSON parsed but the contents are inconsistent.
    Structure(String),
    /// A coupling entry was rejected (bad pair, duplicate, non-finite).
    Hamiltonian(HamiltonianError),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "invalid JSON: {e}"),
            FormatError::Structure(msg) => write!(f, "{msg}"),
            FormatError::Hamiltonian(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            FormatError::Json(e) => Some(e),
            FormatError::Structure(_) => None,
            FormatError::Hamiltonian(e) => Some(e),
        }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<HamiltonianError> for FormatError {
    fn from(e: HamiltonianError) -> Self {
        FormatError::Hamiltonian(e)
    }
}

// ---------------------------------------------------------------------------
// Wire types
// ---------------------------------------------------------------------------

/// Two-body Hamiltonian document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianFile {
    pub n_qubits: usize,
    pub terms: Vec<TermEntry>,
}

/// One coupling `h^{μν}_{ij} σ^μ_i σ^ν_j`, with the axis pair spelled as a
/// two-letter string such as `"xy"`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub i: usize,
    pub j: usize,
    pub pauli: String,
    pub coeff: f64,
}

/// Compiled schedule document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub n_qubits: usize,
    pub sim_time: f64,
    pub source: HamiltonianFile,
    pub blocks: Vec<BlockEntry>,
    pub metadata: MetadataEntry,
}

/// One digital-analog block: analog evolution time `t` under the source,
/// conjugated by one rotation per qubit.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub t: f64,
    pub rotations: Vec<RotationEntry>,
}

/// Axis-angle single-qubit rotation.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationEntry {
    pub theta: f64,
    pub axis: [f64; 3],
}

/// Bookkeeping carried alongside the blocks.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetadataEntry {
    pub discarded_weight: f64,
    pub generator: String,
}

/// Verification report document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub distances: Vec<DistanceEntry>,
    pub decay_exponent: Option<f64>,
    pub commuting: bool,
}

/// Distance to the exact evolution at one Trotter step count.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceEntry {
    pub n_t: u32,
    pub distance: f64,
}

// ---------------------------------------------------------------------------
// Serialization with fixed float precision
// ---------------------------------------------------------------------------

/// Compact JSON formatter that writes every `f64` as `{:.16e}`.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        // serde_json turns non-finite values into null before consulting the
        // formatter, so `value` is always finite here.
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any wire type to compact JSON with 17-significant-digit
/// floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, FormatError> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("JSON output is UTF-8"))
}

// ---------------------------------------------------------------------------
// Hamiltonian conversions
// ---------------------------------------------------------------------------

fn axis_from_letter(c: char) -> Option<PauliAxis> {
    match c {
        'x' => Some(PauliAxis::X),
        'y' => Some(PauliAxis::Y),
        'z' => Some(PauliAxis::Z),
        _ => None,
    }
}

fn parse_pauli_pair(s: &str) -> Result<(PauliAxis, PauliAxis), FormatError> {
    let mut chars = s.chars();
    let parsed = match (chars.next(), chars.next(), chars.next()) {
        (Some(a), Some(b), None) => axis_from_letter(a).zip(axis_from_letter(b)),
        _ => None,
    };
    parsed.ok_or_else(|| {
        FormatError::Structure(format!(
            "pauli label {s:?} invalid: expected two letters from {{x, y, z}}"
        ))
    })
}

/// Builds the model type from a parsed document, enforcing `i < j`,
/// index bounds, uniqueness, and finite coefficients.
pub fn hamiltonian_from_file(doc: &HamiltonianFile) -> Result<TwoBodyHamiltonian, FormatError> {
    if doc.n_qubits == 0 {
        return Err(FormatError::Structure(String::from(
            "n_qubits must be at least 1",
        )));
    }
    let mut h = TwoBodyHamiltonian::new(doc.n_qubits);
    for term in &doc.terms {
        let (mu, nu) = parse_pauli_pair(&term.pauli)?;
        if term.coeff == 0.0 {
            // The model drops explicit zeros silently; a document that
            // lists one is almost certainly a mistake, and accepting it
            // would also break byte-exact round trips.
            return Err(FormatError::Structure(format!(
                "coupling ({}, {}, {}) has coefficient zero; omit the term instead",
                term.i, term.j, term.pauli
            )));
        }
        h.add_coupling(term.i, term.j, mu, nu, term.coeff)?;
    }
    Ok(h)
}

/// Document form of a Hamiltonian, terms in sorted key order.
pub fn hamiltonian_to_file(h: &TwoBodyHamiltonian) -> HamiltonianFile {
    let terms = h
        .terms()
        .map(|((i, j, mu, nu), coeff)| TermEntry {
            i,
            j,
            pauli: format!("{}{}", mu.letter(), nu.letter()),
            coeff,
        })
        .collect();
    HamiltonianFile {
        n_qubits: h.n_qubits(),
        terms,
    }
}

/// Parses a Hamiltonian document from JSON text.
pub fn parse_hamiltonian(text: &str) -> Result<TwoBodyHamiltonian, FormatError> {
    let doc: HamiltonianFile = serde_json::from_str(text)?;
    hamiltonian_from_file(&doc)
}

// ---------------------------------------------------------------------------
// Schedule conversions
// ---------------------------------------------------------------------------

/// Builds the model schedule from a parsed document, validating geometry
/// (unit axes, one rotation per qubit) and internal consistency.
pub fn schedule_from_file(doc: &ScheduleFile) -> Result<Schedule, FormatError> {
    if doc.n_qubits == 0 {
        return Err(FormatError::Structure(String::from(
            "n_qubits must be at least 1",
        )));
    }
    if !doc.sim_time.is_finite() {
        return Err(FormatError::Structure(String::from(
            "sim_time must be finite",
        )));
    }
    if doc.source.n_qubits != doc.n_qubits {
        return Err(FormatError::Structure(format!(
            "schedule has {} qubits but its source Hamiltonian has {}",
            doc.n_qubits, doc.source.n_qubits
        )));
    }
    let source = hamiltonian_from_file(&doc.source)?;
    if let Some((i, j, mu, nu)) = source.first_non_zz() {
        return Err(FormatError::Structure(format!(
            "schedule source must be ZZ-only, found {}{} coupling on pair ({i}, {j})",
            mu.letter(),
            nu.letter()
        )));
    }
    if !doc.metadata.discarded_weight.is_finite() {
        return Err(FormatError::Structure(String::from(
            "metadata.discarded_weight must be finite",
        )));
    }
    let mut blocks = Vec::with_capacity(doc.blocks.len());
    for (b, block) in doc.blocks.iter().enumerate() {
        if !block.t.is_finite() {
            return Err(FormatError::Structure(format!(
                "block {b}: analog time must be finite"
            )));
        }
        if block.rotations.len() != doc.n_qubits {
            return Err(FormatError::Structure(format!(
                "block {b}: expected {} rotations (one per qubit), found {}",
                doc.n_qubits,
                block.rotations.len()
            )));
        }
        let mut rotations = Vec::with_capacity(block.rotations.len());
        for (q, rot) in block.rotations.iter().enumerate() {
            if !rot.theta.is_finite() || rot.axis.iter().any(|c| !c.is_finite()) {
                return Err(FormatError::Structure(format!(
                    "block {b}, qubit {q}: rotation parameters must be finite"
                )));
            }
            let norm = daqc_core::hamiltonian::vec3::norm(rot.axis);
            if (norm - 1.0).abs() > AXIS_UNIT_TOL {
                return Err(FormatError::Structure(format!(
                    "block {b}, qubit {q}: rotation axis must be unit length (got {norm:.6})"
                )));
            }
            rotations.push(SqgParams {
                angle: rot.theta,
                axis: rot.axis,
            });
        }
        blocks.push(daqc_core::DigitalAnalogBlock {
            analog_time: block.t,
            rotations,
        });
    }
    Ok(Schedule {
        n_qubits: doc.n_qubits,
        source,
        sim_time: doc.sim_time,
        blocks,
        discarded_weight: doc.metadata.discarded_weight,
        generator: doc.metadata.generator.clone(),
    })
}

/// Document form of a schedule.
pub fn schedule_to_file(s: &Schedule) -> ScheduleFile {
    let blocks = s
        .blocks
        .iter()
        .map(|b| BlockEntry {
            t: b.analog_time,
            rotations: b
                .rotations
                .iter()
                .map(|r| RotationEntry {
                    theta: r.angle,
                    axis: r.axis,
                })
                .collect(),
        })
        .collect();
    ScheduleFile {
        n_qubits: s.n_qubits,
        sim_time: s.sim_time,
        source: hamiltonian_to_file(&s.source),
        blocks,
        metadata: MetadataEntry {
            discarded_weight: s.discarded_weight,
            generator: s.generator.clone(),
        },
    }
}

/// Parses a schedule document from JSON text.
pub fn parse_schedule(text: &str) -> Result<Schedule, FormatError> {
    let doc: ScheduleFile = serde_json::from_str(text)?;
    schedule_from_file(&doc)
}

// ---------------------------------------------------------------------------
// Report conversions
// ---------------------------------------------------------------------------

/// Document form of a verification report.
pub fn report_to_file(r: &TrotterReport) -> ReportFile {
    ReportFile {
        distances: r
            .distances
            .iter()
            .map(|&(n_t, distance)| DistanceEntry { n_t, distance })
            .collect(),
        decay_exponent: r.decay_exponent,
        commuting: r.commuting,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_hamiltonian_json() -> &'static str {
        r#"{"n_qubits": 3, "terms": [
            {"i": 0, "j": 1, "pauli": "zz", "coeff": 0.5},
            {"i": 0, "j": 2, "pauli": "xy", "coeff": -1.25},
            {"i": 1, "j": 2, "pauli": "zx", "coeff": 0.125}
        ]}"#
    }

    #[test]
    fn parses_hamiltonian_terms() {
        let h = parse_hamiltonian(sample_hamiltonian_json()).unwrap();
        assert_eq!(h.n_qubits(), 3);
        assert_eq!(h.term_count(), 3);
        assert_eq!(h.coupling(0, 2, PauliAxis::X, PauliAxis::Y), -1.25);
    }

    #[test]
    fn rejects_bad_pauli_label() {
        let text = r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "xw", "coeff": 1.0}]}"#;
        let err = parse_hamiltonian(text).unwrap_err();
        assert!(matches!(err, FormatError::Structure(_)), "{err}");
    }

    #[test]
    fn rejects_reversed_pair() {
        let text = r#"{"n_qubits": 2, "terms": [{"i": 1, "j": 0, "pauli": "zz", "coeff": 1.0}]}"#;
        let err = parse_hamiltonian(text).unwrap_err();
        assert!(matches!(err, FormatError::Hamiltonian(_)), "{err}");
    }

    #[test]
    fn rejects_duplicate_key() {
        let text = r#"{"n_qubits": 2, "terms": [
            {"i": 0, "j": 1, "pauli": "zz", "coeff": 1.0},
            {"i": 0, "j": 1, "pauli": "zz", "coeff": 2.0}
        ]}"#;
        let err = parse_hamiltonian(text).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Hamiltonian(HamiltonianError::DuplicateCoupling { .. })
        ));
    }

    #[test]
    fn rejects_explicit_zero_coefficient() {
        let text = r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "zz", "coeff": 0.0}]}"#;
        assert!(parse_hamiltonian(text).is_err());
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"n_qubits": 2, "terms": [], "notes": "hi"}"#;
        assert!(parse_hamiltonian(text).is_err());
    }

    #[test]
    fn floats_use_seventeen_significant_digits() {
        // The shortest representation of the double nearest 0.1 at 17
        // significant digits ends in ...001.
        let doc = DistanceEntry {
            n_t: 2,
            distance: 0.1,
        };
        let json = to_json(&doc).unwrap();
        assert_eq!(json, "{\"n_t\":2,\"distance\":1.0000000000000001e-1}\n");
    }

    #[test]
    fn non_finite_floats_become_null_and_fail_reparse() {
        // serde_json writes null for NaN; the reader then rejects it, so a
        // corrupted value cannot silently survive a round trip.
        let doc = DistanceEntry {
            n_t: 1,
            distance: f64::NAN,
        };
        let json = to_json(&doc).unwrap();
        assert!(json.contains("null"), "{json}");
        assert!(serde_json::from_str::<DistanceEntry>(&json).is_err());
    }

    #[test]
    fn hamiltonian_round_trip_is_byte_exact() {
        let h = parse_hamiltonian(sample_hamiltonian_json()).unwrap();
        let first = to_json(&hamiltonian_to_file(&h)).unwrap();
        let again = to_json(&hamiltonian_to_file(&parse_hamiltonian(&first).unwrap())).unwrap();
        assert_eq!(first, again);
    }

    #[test]
    fn schedule_round_trip_is_byte_exact() {
        let problem = parse_hamiltonian(
            r#"{"n_qubits": 2, "terms": [
                {"i": 0, "j": 1, "pauli": "xx", "coeff": 0.7},
                {"i": 0, "j": 1, "pauli": "yz", "coeff": -0.3}
            ]}"#,
        )
        .unwrap();
        let source = parse_hamiltonian(
            r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "zz", "coeff": 1.0}]}"#,
        )
        .unwrap();
        let schedule = daqc_core::compile_schedule(&problem, &source, 0.37, 0.0).unwrap();
        let first = to_json(&schedule_to_file(&schedule)).unwrap();
        let reread = parse_schedule(&first).unwrap();
        let again = to_json(&schedule_to_file(&reread)).unwrap();
        assert_eq!(first, again);
        assert_eq!(reread.blocks.len(), schedule.blocks.len());
        assert_eq!(reread.sim_time, schedule.sim_time);
    }

    #[test]
    fn schedule_parse_rejects_wrong_rotation_count() {
        let problem = parse_hamiltonian(
            r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "zz", "coeff": 0.9}]}"#,
        )
        .unwrap();
        let source = parse_hamiltonian(
            r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "zz", "coeff": 1.0}]}"#,
        )
        .unwrap();
        let schedule = daqc_core::compile_schedule(&problem, &source, 1.0, 0.0).unwrap();
        let mut doc = schedule_to_file(&schedule);
        doc.blocks[0].rotations.pop();
        let text = to_json(&doc).unwrap();
        let err = parse_schedule(&text).unwrap_err();
        assert!(err.to_string().contains("one per qubit"), "{err}");
    }

    #[test]
    fn schedule_parse_rejects_non_unit_axis() {
        let problem = parse_hamiltonian(
            r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "xx", "coeff": 0.9}]}"#,
        )
        .unwrap();
        let source = parse_hamiltonian(
            r#"{"n_qubits": 2, "terms": [{"i": 0, "j": 1, "pauli": "zz", "coeff": 1.0}]}"#,
        )
        .unwrap();
        let schedule = daqc_core::compile_schedule(&problem, &source, 1.0, 0.0).unwrap();
        let mut doc = schedule_to_file(&schedule);
        doc.blocks[0].rotations[0].axis = [2.0, 0.0, 0.0];
        let text = to_json(&doc).unwrap();
        let err = parse_schedule(&text).unwrap_err();
        assert!(err.to_string().contains("unit length"), "{err}");
    }

    #[test]
    fn schedule_parse_rejects_non_zz_source() {
        let doc = ScheduleFile {
            n_qubits: 2,
            sim_time: 1.0,
            source: HamiltonianFile {
                n_qubits: 2,
                terms: vec![TermEntry {
                    i: 0,
                    j: 1,
                    pauli: String::from("xx"),
                    coeff: 1.0,
                }],
            },
            blocks: Vec::new(),
            metadata: MetadataEntry {
                discarded_weight: 0.0,
                generator: String::from("test"),
            },
        };
        let text = to_json(&doc).unwrap();
        let err = parse_schedule(&text).unwrap_err();
        assert!(err.to_string().contains("ZZ-only"), "{err}");
    }

    #[test]
    fn report_serializes_null_exponent() {
        let report = TrotterReport {
            distances: vec![(1, 1e-16)],
            decay_exponent: None,
            commuting: true,
        };
        let json = to_json(&report_to_file(&report)).unwrap();
        assert!(json.contains("\"decay_exponent\":null"), "{json}");
        assert!(json.contains("\"commuting\":true"), "{json}");
    }
}
