//! JSON file formats and report rendering.
//!
//! Data files carry values as strings (`"3/16"`, `"0.25"`) or JSON numbers.
//! Rational mode parses strings exactly and accepts numbers only when they
//! are integers, so exact arithmetic never approximates silently; float mode
//! accepts both. Reports are emitted as JSON values that always embed the
//! arithmetic mode and, in float mode, the tolerance that was used.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hankel::{PartialHankel, RankReport};
use crate::invariants::{ConjectureProbe, MembershipReport, MinorWitness, ModelClass};
use crate::lifting::{
    LiftModel, LiftReport, LiftedPolynomialValues, MembershipEvidence, SlcProbeOutcome,
    TablePolynomial,
};
use crate::matrix::Mat;
use crate::models::{HmmParams, MarkovParams, TraceModel};
use crate::realization::QuasiRealization;
use crate::scalar::{ArithmeticMode, Scalar};
use crate::table::{DistributionTable, TableKind};
use crate::word::{words_of_length, Alphabet, Word};

// ---------------------------------------------------------------------------
// Scalar representation
// ---------------------------------------------------------------------------

/// On-disk scalar: a string (exact) or a JSON number.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Text(String),
    Number(f64),
}

const EXACT_INT_LIMIT: f64 = 9.0e15; // within f64's exact integer range

fn scalar_from_repr(repr: &ScalarRepr, mode: ArithmeticMode) -> Result<Scalar> {
    match (repr, mode) {
        (ScalarRepr::Text(s), _) => mode.parse(s),
        (ScalarRepr::Number(x), ArithmeticMode::Float { .. }) => Ok(Scalar::Float(*x)),
        (ScalarRepr::Number(x), ArithmeticMode::Exact) => {
            if x.fract() == 0.0 && x.abs() <= EXACT_INT_LIMIT {
                Ok(Scalar::int(*x as i64))
            } else {
                Err(Error::InvalidScalar {
                    text: x.to_string(),
                    reason: "rational mode needs non-integer values quoted as strings".into(),
                })
            }
        }
    }
}

fn scalar_to_repr(s: &Scalar) -> ScalarRepr {
    match s {
        Scalar::Rational(_) => ScalarRepr::Text(s.to_string()),
        Scalar::Float(x) => ScalarRepr::Number(*x),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Float(x) => json!(x),
    }
}

fn vec_from_repr(values: &[ScalarRepr], mode: ArithmeticMode) -> Result<Vec<Scalar>> {
    values.iter().map(|v| scalar_from_repr(v, mode)).collect()
}

fn mat_from_repr(rows: &[Vec<ScalarRepr>], mode: ArithmeticMode, what: &str) -> Result<Mat> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidModel {
            kind: what.to_string(),
            reason: "ragged matrix rows".into(),
        });
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        data.extend(vec_from_repr(row, mode)?);
    }
    Ok(Mat::new(rows.len(), cols, data))
}

fn mat_to_repr(m: &Mat) -> Vec<Vec<ScalarRepr>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(scalar_to_repr).collect())
        .collect()
}

fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

// ---------------------------------------------------------------------------
// Distribution files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DistributionFileRepr {
    alphabet: Vec<String>,
    n: usize,
    kind: String,
    values: BTreeMap<String, ScalarRepr>,
}

fn kind_from_str(s: &str) -> Result<TableKind> {
    match s {
        "stochastic" => Ok(TableKind::Stochastic),
        "unconstrained" => Ok(TableKind::Unconstrained),
        "raw" => Ok(TableKind::Raw),
        other => Err(Error::InvalidModel {
            kind: "table".into(),
            reason: format!("unknown kind '{other}' (expected stochastic, unconstrained or raw)"),
        }),
    }
}

fn kind_to_str(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Stochastic => "stochastic",
        TableKind::Unconstrained => "unconstrained",
        TableKind::Raw => "raw",
    }
}

/// Parse a distribution file; every word of length `n` must appear exactly
/// once.
pub fn parse_distribution(text: &str, mode: ArithmeticMode) -> Result<DistributionTable> {
    let repr: DistributionFileRepr = from_json_str(text)?;
    let alphabet = Alphabet::new(repr.alphabet)?;
    let kind = kind_from_str(&repr.kind)?;
    let words = words_of_length(&alphabet, repr.n);
    if repr.values.len() != words.len() {
        return Err(Error::InvalidModel {
            kind: "table".into(),
            reason: format!(
                "expected {} values for length {}, found {}",
                words.len(),
                repr.n,
                repr.values.len()
            ),
        });
    }
    let mut values = Vec::with_capacity(words.len());
    for w in &words {
        let key = alphabet.render(w);
        let entry = repr.values.get(&key).ok_or_else(|| Error::InvalidModel {
            kind: "table".into(),
            reason: format!("missing value for word '{key}'"),
        })?;
        values.push(scalar_from_repr(entry, mode)?);
    }
    DistributionTable::new(alphabet, repr.n, kind, mode, values)
}

pub fn distribution_to_json(table: &DistributionTable) -> Value {
    let mut values = BTreeMap::new();
    for w in words_of_length(table.alphabet(), table.n()) {
        values.insert(
            table.alphabet().render(&w),
            scalar_to_repr(table.value(&w).expect("enumerated word")),
        );
    }
    serde_json::to_value(DistributionFileRepr {
        alphabet: table.alphabet().symbols().to_vec(),
        n: table.n(),
        kind: kind_to_str(table.kind()).to_string(),
        values,
    })
    .expect("distribution representation serializes")
}

// ---------------------------------------------------------------------------
// Realization files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RealizationFileRepr {
    alphabet: Vec<String>,
    d: usize,
    #[serde(rename = "T")]
    operators: BTreeMap<String, Vec<Vec<ScalarRepr>>>,
    x: Vec<ScalarRepr>,
    y: Vec<ScalarRepr>,
    #[serde(default)]
    gussf: bool,
}

pub fn parse_realization(text: &str, mode: ArithmeticMode) -> Result<QuasiRealization> {
    let repr: RealizationFileRepr = from_json_str(text)?;
    let alphabet = Alphabet::new(repr.alphabet)?;
    let mut operators = Vec::with_capacity(alphabet.len());
    for symbol in alphabet.symbols() {
        let rows = repr
            .operators
            .get(symbol)
            .ok_or_else(|| Error::InvalidModel {
                kind: "realization".into(),
                reason: format!("missing operator matrix for symbol '{symbol}'"),
            })?;
        operators.push(mat_from_repr(rows, mode, "realization")?);
    }
    let initial = vec_from_repr(&repr.x, mode)?;
    let readout = vec_from_repr(&repr.y, mode)?;
    if initial.len() != repr.d {
        return Err(Error::InvalidModel {
            kind: "realization".into(),
            reason: format!("d is {} but x has length {}", repr.d, initial.len()),
        });
    }
    QuasiRealization::new(alphabet, operators, initial, readout, repr.gussf, mode)
}

pub fn realization_to_json(r: &QuasiRealization) -> Value {
    let mut operators = BTreeMap::new();
    for (i, symbol) in r.alphabet().symbols().iter().enumerate() {
        operators.insert(symbol.clone(), mat_to_repr(r.operator(i as u8)));
    }
    serde_json::to_value(RealizationFileRepr {
        alphabet: r.alphabet().symbols().to_vec(),
        d: r.dim(),
        operators,
        x: r.initial().iter().map(scalar_to_repr).collect(),
        y: r.readout().iter().map(scalar_to_repr).collect(),
        gussf: r.is_gussf(),
    })
    .expect("realization representation serializes")
}

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct HmmFileRepr {
    alphabet: Vec<String>,
    l: usize,
    #[serde(rename = "A")]
    transition: Vec<Vec<ScalarRepr>>,
    #[serde(rename = "E")]
    emission: Vec<Vec<ScalarRepr>>,
    pi: Vec<ScalarRepr>,
}

#[derive(Serialize, Deserialize)]
struct MarkovFileRepr {
    alphabet: Vec<String>,
    pi: Vec<ScalarRepr>,
    #[serde(rename = "M")]
    step: Vec<Vec<ScalarRepr>>,
}

#[derive(Serialize, Deserialize)]
struct TraceFileRepr {
    alphabet: Vec<String>,
    r: usize,
    #[serde(rename = "X")]
    matrices: BTreeMap<String, Vec<Vec<ScalarRepr>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ModelFileRepr {
    Hmm(HmmFileRepr),
    Markov(MarkovFileRepr),
    Trace(TraceFileRepr),
}

/// Any model file `tabulate` accepts.
#[derive(Debug, Clone)]
pub enum ModelFile {
    Hmm(HmmParams),
    Markov(MarkovParams),
    Trace(TraceModel),
    Realization(QuasiRealization),
}

impl ModelFile {
    /// Tabulate to length `n`. Markov chains need `n >= 1`.
    pub fn to_table(&self, n: usize) -> Result<DistributionTable> {
        match self {
            ModelFile::Hmm(h) => Ok(h.to_table(n)),
            ModelFile::Markov(m) => {
                if n == 0 {
                    return Err(Error::EmptyTable);
                }
                Ok(m.to_table(n))
            }
            ModelFile::Trace(t) => Ok(t.to_table(n).reclassified()),
            ModelFile::Realization(r) => Ok(r.to_table(n).reclassified()),
        }
    }
}

/// Dispatch on the `type` tag; files without one are read as realizations.
pub fn parse_model(text: &str, mode: ArithmeticMode) -> Result<ModelFile> {
    let value: Value = from_json_str(text)?;
    let has_type = value.get("type").is_some();
    if !has_type {
        if value.get("T").is_some() {
            return Ok(ModelFile::Realization(parse_realization(text, mode)?));
        }
        return Err(Error::InvalidModel {
            kind: "model".into(),
            reason: "missing 'type' field (hmm, markov or trace) and no realization shape".into(),
        });
    }
    match from_json_str::<ModelFileRepr>(text)? {
        ModelFileRepr::Hmm(h) => {
            let alphabet = Alphabet::new(h.alphabet)?;
            let transition = mat_from_repr(&h.transition, mode, "hmm")?;
            let emission = mat_from_repr(&h.emission, mode, "hmm")?;
            let initial = vec_from_repr(&h.pi, mode)?;
            if initial.len() != h.l {
                return Err(Error::InvalidModel {
                    kind: "hmm".into(),
                    reason: format!("l is {} but pi has length {}", h.l, initial.len()),
                });
            }
            Ok(ModelFile::Hmm(HmmParams::new(
                alphabet, transition, emission, initial, mode,
            )?))
        }
        ModelFileRepr::Markov(m) => {
            let alphabet = Alphabet::new(m.alphabet)?;
            let initial = vec_from_repr(&m.pi, mode)?;
            let step = mat_from_repr(&m.step, mode, "markov")?;
            Ok(ModelFile::Markov(MarkovParams::new(
                alphabet, initial, step, mode,
            )?))
        }
        ModelFileRepr::Trace(t) => {
            let alphabet = Alphabet::new(t.alphabet)?;
            let mut matrices = Vec::with_capacity(alphabet.len());
            for symbol in alphabet.symbols() {
                let rows = t.matrices.get(symbol).ok_or_else(|| Error::InvalidModel {
                    kind: "trace".into(),
                    reason: format!("missing matrix for symbol '{symbol}'"),
                })?;
                matrices.push(mat_from_repr(rows, mode, "trace")?);
            }
            let model = TraceModel::new(alphabet, matrices, mode)?;
            if model.order() != t.r {
                return Err(Error::InvalidModel {
                    kind: "trace".into(),
                    reason: format!("r is {} but matrices are {1}x{1}", t.r, model.order()),
                });
            }
            Ok(ModelFile::Trace(model))
        }
    }
}

pub fn hmm_to_json(h: &HmmParams) -> Value {
    serde_json::to_value(ModelFileRepr::Hmm(HmmFileRepr {
        alphabet: h.alphabet().symbols().to_vec(),
        l: h.states(),
        transition: mat_to_repr(h.transition()),
        emission: mat_to_repr(h.emission()),
        pi: h.initial().iter().map(scalar_to_repr).collect(),
    }))
    .expect("hmm representation serializes")
}

pub fn markov_to_json(m: &MarkovParams) -> Value {
    serde_json::to_value(ModelFileRepr::Markov(MarkovFileRepr {
        alphabet: m.alphabet().symbols().to_vec(),
        pi: m.initial().iter().map(scalar_to_repr).collect(),
        step: mat_to_repr(m.step()),
    }))
    .expect("markov representation serializes")
}

pub fn trace_to_json(t: &TraceModel) -> Value {
    let mut matrices = BTreeMap::new();
    for (i, symbol) in t.alphabet().symbols().iter().enumerate() {
        matrices.insert(symbol.clone(), mat_to_repr(&t.matrices()[i]));
    }
    serde_json::to_value(ModelFileRepr::Trace(TraceFileRepr {
        alphabet: t.alphabet().symbols().to_vec(),
        r: t.order(),
        matrices,
    }))
    .expect("trace representation serializes")
}

// ---------------------------------------------------------------------------
// Polynomial files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PolynomialTermRepr {
    coeff: ScalarRepr,
    /// Word label to exponent.
    monomial: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialFileRepr {
    alphabet: Vec<String>,
    n: usize,
    terms: Vec<PolynomialTermRepr>,
}

/// Parse a sparse polynomial in variables indexed by the words of `Σ^n`.
pub fn parse_polynomial(text: &str, mode: ArithmeticMode) -> Result<TablePolynomial> {
    let repr: PolynomialFileRepr = from_json_str(text)?;
    let alphabet = Alphabet::new(repr.alphabet)?;
    let mut terms = Vec::with_capacity(repr.terms.len());
    for term in &repr.terms {
        let coeff = scalar_from_repr(&term.coeff, mode)?;
        let mut monomial = Vec::with_capacity(term.monomial.len());
        for (label, power) in &term.monomial {
            let word = alphabet.parse_word(label)?;
            if word.len() != repr.n {
                return Err(Error::InvalidModel {
                    kind: "polynomial".into(),
                    reason: format!(
                        "variable '{label}' has length {}, expected {}",
                        word.len(),
                        repr.n
                    ),
                });
            }
            monomial.push((word, *power));
        }
        terms.push((coeff, monomial));
    }
    Ok(TablePolynomial {
        alphabet,
        n: repr.n,
        terms,
    })
}

pub fn lifted_polynomial_json(values: &LiftedPolynomialValues, alphabet: &Alphabet) -> Value {
    let mut shifted = Map::new();
    for (i, symbol) in alphabet.symbols().iter().enumerate() {
        shifted.insert(symbol.clone(), scalar_to_json(&values.shifted[i]));
    }
    let mut obj = Map::new();
    obj.insert("shifted".into(), Value::Object(shifted));
    obj.insert("summed".into(), scalar_to_json(&values.summed));
    with_mode(obj, values.mode)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

fn with_mode(mut obj: Map<String, Value>, mode: ArithmeticMode) -> Value {
    match mode {
        ArithmeticMode::Exact => {
            obj.insert("mode".into(), json!("rational"));
        }
        ArithmeticMode::Float { tol } => {
            obj.insert("mode".into(), json!("float"));
            obj.insert("tol".into(), json!(tol));
        }
    }
    Value::Object(obj)
}

fn words_json(words: &[Word], alphabet: &Alphabet) -> Value {
    Value::Array(
        words
            .iter()
            .map(|w| Value::String(alphabet.render(w)))
            .collect(),
    )
}

pub fn rank_report_json(report: &RankReport, alphabet: &Alphabet) -> Value {
    let mut obj = Map::new();
    obj.insert("rank".into(), json!(report.rank));
    obj.insert(
        "pivot_rows".into(),
        words_json(&report.pivot_rows, alphabet),
    );
    obj.insert(
        "pivot_cols".into(),
        words_json(&report.pivot_cols, alphabet),
    );
    with_mode(obj, report.mode)
}

fn witness_json(w: &MinorWitness, alphabet: &Alphabet) -> Value {
    json!({
        "row_words": words_json(&w.row_words, alphabet),
        "col_words": words_json(&w.col_words, alphabet),
        "det": scalar_to_json(&w.det),
    })
}

pub fn membership_report_json(report: &MembershipReport, alphabet: &Alphabet) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "model".into(),
        match report.model {
            ModelClass::FiniteDim { d } => json!({ "finite_dim": { "d": d } }),
            ModelClass::Markov => json!("markov"),
        },
    );
    obj.insert("passed".into(), json!(report.passed));
    obj.insert(
        "condition_a".into(),
        report.condition_a.as_ref().map_or(
            Value::Null,
            |a| json!({ "rank_found": a.rank_found, "bound": a.bound, "pass": a.pass }),
        ),
    );
    obj.insert(
        "condition_b".into(),
        report.condition_b.as_ref().map_or(Value::Null, |b| {
            json!({
                "rank_half_rows": b.rank_half_rows,
                "rank_half_cols": b.rank_half_cols,
                "rank_short": b.rank_short,
                "pass": b.pass,
                "violating_word": b.violating_word.as_ref().map(|w| alphabet.render(w)),
            })
        }),
    );
    obj.insert(
        "witnesses".into(),
        Value::Array(
            report
                .witnesses
                .iter()
                .map(|w| witness_json(w, alphabet))
                .collect(),
        ),
    );
    obj.insert(
        "membership_guaranteed".into(),
        json!(report.membership_guaranteed),
    );
    with_mode(obj, report.mode)
}

pub fn lift_report_json(report: &LiftReport) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "model".into(),
        json!(match report.model {
            LiftModel::FiniteDim => "finite_dim",
            LiftModel::Hmm => "hmm",
        }),
    );
    obj.insert("input_len".into(), json!(report.input_len));
    obj.insert("d".into(), json!(report.d));
    obj.insert("whole_in_image".into(), json!(report.whole_in_image));
    obj.insert(
        "all_shifts_in_image".into(),
        json!(report.all_shifts_in_image),
    );
    obj.insert("marginal_in_image".into(), json!(report.marginal_in_image));
    obj.insert("equivalence_holds".into(), json!(report.equivalence_holds));
    obj.insert(
        "evidence".into(),
        json!(match report.evidence {
            MembershipEvidence::Decided => "decided",
            MembershipEvidence::Certified => "certified",
            MembershipEvidence::NecessaryCondition => "necessary_condition",
        }),
    );
    with_mode(obj, report.mode)
}

pub fn slc_outcome_json(outcome: &SlcProbeOutcome, alphabet: &Alphabet) -> Value {
    let mut obj = Map::new();
    obj.insert("holds".into(), json!(outcome.holds));
    obj.insert(
        "distinguishing_word".into(),
        outcome
            .distinguishing
            .as_ref()
            .map_or(Value::Null, |w| Value::String(alphabet.render(w))),
    );
    with_mode(obj, outcome.mode)
}

pub fn conjecture_probe_json(probe: &ConjectureProbe) -> Value {
    json!({
        "all_minors_vanish": probe.all_minors_vanish,
        "condition_b_pass": probe.condition_b_pass,
        "gap": probe.gap,
    })
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Hankel minor as CSV: first row holds the prefix (column) words, first
/// column the suffix (row) words.
pub fn hankel_to_csv(h: &PartialHankel, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once(String::new())
        .chain(h.col_words().iter().map(|w| csv_field(&alphabet.render(w))))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (i, row_word) in h.row_words().iter().enumerate() {
        let mut fields = vec![csv_field(&alphabet.render(row_word))];
        for j in 0..h.col_words().len() {
            fields.push(csv_field(&h.entry(i, j).to_string()));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::build_partial_hankel;
    use crate::models::{random_hmm, random_markov, random_realization, random_trace};

    #[test]
    fn distribution_round_trip() {
        let table = crate::models::random_table(&Alphabet::binary(), 3, 7);
        let text = serde_json::to_string_pretty(&distribution_to_json(&table)).unwrap();
        let parsed = parse_distribution(&text, ArithmeticMode::Exact).unwrap();
        assert_eq!(parsed, table);
    }

    #[test]
    fn length_zero_table_uses_the_empty_key() {
        let a = Alphabet::binary();
        let table = crate::table::DistributionTable::new(
            a,
            0,
            TableKind::Raw,
            ArithmeticMode::Exact,
            vec![Scalar::int(1)],
        )
        .unwrap();
        let value = distribution_to_json(&table);
        assert_eq!(value["values"][""], Value::String("1".into()));
        let text = serde_json::to_string(&value).unwrap();
        assert_eq!(
            parse_distribution(&text, ArithmeticMode::Exact).unwrap(),
            table
        );
    }

    #[test]
    fn distribution_rejects_missing_words() {
        let text = r#"{"alphabet": ["0","1"], "n": 1, "kind": "raw", "values": {"0": "1/2"}}"#;
        let err = parse_distribution(text, ArithmeticMode::Exact).unwrap_err();
        assert!(err.to_string().contains("expected 2 values"));
    }

    #[test]
    fn distribution_rejects_wrong_words() {
        let text =
            r#"{"alphabet": ["0","1"], "n": 1, "kind": "raw", "values": {"0": "1/2", "2": "1/2"}}"#;
        assert!(parse_distribution(text, ArithmeticMode::Exact).is_err());
    }

    #[test]
    fn exact_mode_rejects_non_integer_numbers() {
        let text =
            r#"{"alphabet": ["0","1"], "n": 1, "kind": "raw", "values": {"0": 0.5, "1": 0.5}}"#;
        assert!(parse_distribution(text, ArithmeticMode::Exact).is_err());
        assert!(parse_distribution(text, ArithmeticMode::float_default()).is_ok());
    }

    #[test]
    fn parse_error_reports_field_path() {
        let text = r#"{"alphabet": ["0","1"], "n": "five", "kind": "raw", "values": {}}"#;
        match parse_distribution(text, ArithmeticMode::Exact) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "n"),
            other => panic!("expected a parse error with a path, got {other:?}"),
        }
    }

    #[test]
    fn realization_round_trip() {
        let r = random_realization(2, &Alphabet::binary(), 5, true);
        let text = serde_json::to_string(&realization_to_json(&r)).unwrap();
        let parsed = parse_realization(&text, ArithmeticMode::Exact).unwrap();
        assert_eq!(parsed, r);
    }

    #[test]
    fn model_files_round_trip() {
        let a = Alphabet::binary();
        let h = random_hmm(2, &a, 3);
        let text = serde_json::to_string(&hmm_to_json(&h)).unwrap();
        match parse_model(&text, ArithmeticMode::Exact).unwrap() {
            ModelFile::Hmm(parsed) => assert_eq!(parsed, h),
            other => panic!("expected hmm, got {other:?}"),
        }

        let m = random_markov(&a, 3);
        let text = serde_json::to_string(&markov_to_json(&m)).unwrap();
        match parse_model(&text, ArithmeticMode::Exact).unwrap() {
            ModelFile::Markov(parsed) => assert_eq!(parsed, m),
            other => panic!("expected markov, got {other:?}"),
        }

        let t = random_trace(2, &a, 3);
        let text = serde_json::to_string(&trace_to_json(&t)).unwrap();
        match parse_model(&text, ArithmeticMode::Exact).unwrap() {
            ModelFile::Trace(parsed) => assert_eq!(parsed, t),
            other => panic!("expected trace, got {other:?}"),
        }

        let r = random_realization(2, &a, 3, false);
        let text = serde_json::to_string(&realization_to_json(&r)).unwrap();
        match parse_model(&text, ArithmeticMode::Exact).unwrap() {
            ModelFile::Realization(parsed) => assert_eq!(parsed, r),
            other => panic!("expected realization, got {other:?}"),
        }
    }

    #[test]
    fn csv_layout() {
        let table = random_markov(&Alphabet::binary(), 1).to_table(2);
        let h = build_partial_hankel(&table, 1, 1).unwrap();
        let csv = hankel_to_csv(&h, table.alphabet());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4); // header + 3 suffix rows
        assert_eq!(lines[0], ",,0,1");
        assert!(lines[1].starts_with(','));
        assert!(lines[2].starts_with("0,"));
    }

    #[test]
    fn reports_embed_mode() {
        let table = crate::models::random_table(&Alphabet::binary(), 3, 9);
        let report = crate::invariants::check_markov_invariants(&table, 2);
        let v = membership_report_json(&report, table.alphabet());
        assert_eq!(v["mode"], json!("rational"));
        let float_report = crate::invariants::check_markov_invariants(&table.to_float(1e-9), 2);
        let v = membership_report_json(&float_report, table.alphabet());
        assert_eq!(v["mode"], json!("float"));
        assert_eq!(v["tol"], json!(1e-9));
    }
}
