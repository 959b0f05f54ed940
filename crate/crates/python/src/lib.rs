//! Python bindings. Labels, contexts and corpora cross the boundary as their
//! canonical text forms.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use snacs::corpus_io::{parse_corpus, serialize_corpus, Mode};
use snacs::tagger::{leave_one_out, BaselineModel};
use snacs::{ConstructionContext, ExampleBank, Hierarchy, Label, Supersense};

type Diagnostics = Vec<(usize, String, String)>;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sense(name: &str) -> PyResult<Supersense> {
    snacs::parse_supersense(name).map_err(|e| PyKeyError::new_err(e.to_string()))
}

fn label(text: &str) -> PyResult<Label> {
    snacs::parse_label(text).map_err(value_err)
}

fn context(text: &str) -> PyResult<ConstructionContext> {
    text.parse().map_err(value_err)
}

fn names(v: &[Supersense]) -> Vec<String> {
    v.iter().map(|s| s.name().to_string()).collect()
}

/// Names of all 50 supersenses in hierarchy order.
#[pyfunction]
fn supersenses() -> Vec<String> {
    names(&Supersense::ALL)
}

#[pyfunction]
fn ancestors(name: &str) -> PyResult<Vec<String>> {
    Ok(names(&sense(name)?.ancestors()))
}

#[pyfunction]
fn children(name: &str) -> PyResult<Vec<String>> {
    Ok(names(sense(name)?.children()))
}

#[pyfunction]
fn depth(name: &str) -> PyResult<usize> {
    Ok(sense(name)?.depth())
}

#[pyfunction]
fn lca(a: &str, b: &str) -> PyResult<Option<String>> {
    Ok(snacs::lca(sense(a)?, sense(b)?).map(|s| s.name().to_string()))
}

#[pyfunction]
fn wu_palmer(a: &str, b: &str) -> PyResult<f64> {
    Ok(snacs::wu_palmer(sense(a)?, sense(b)?))
}

/// "MapsTo: ...", "REMOVED" or "ALREADY-V2".
#[pyfunction]
fn migrate_v1(name: &str) -> PyResult<String> {
    snacs::migrate_v1(name)
        .map(|r| r.to_string())
        .map_err(|e| PyKeyError::new_err(e.to_string()))
}

/// Canonical form of a label.
#[pyfunction]
fn normalize_label(text: &str) -> PyResult<String> {
    Ok(label(text)?.to_string())
}

#[pyfunction]
fn export_schema() -> String {
    Hierarchy::get().export()
}

#[pyclass(frozen, get_all)]
struct ValidationReport {
    ok: bool,
    /// (code, message) pairs
    violations: Vec<(String, String)>,
    attested: bool,
}

#[pymethods]
impl ValidationReport {
    fn __repr__(&self) -> String {
        let codes: Vec<&str> = self.violations.iter().map(|(c, _)| c.as_str()).collect();
        format!(
            "ValidationReport(ok={}, codes={codes:?}, attested={})",
            self.ok, self.attested
        )
    }
}

#[pyfunction]
#[pyo3(signature = (label_text, ctx = "None"))]
fn validate(label_text: &str, ctx: &str) -> PyResult<ValidationReport> {
    let r = snacs::validate(&label(label_text)?, context(ctx)?);
    Ok(ValidationReport {
        ok: r.ok,
        violations: r
            .violations
            .into_iter()
            .map(|v| (v.code.as_str().to_string(), v.message))
            .collect(),
        attested: r.attested,
    })
}

/// (label, count) pairs for an adposition in the built-in example bank.
#[pyfunction]
fn attested_labels(adposition: &str) -> Vec<(String, usize)> {
    ExampleBank::builtin()
        .attested_labels(adposition)
        .into_iter()
        .map(|(l, n)| (l.to_string(), n))
        .collect()
}

#[pyfunction]
fn bank_size() -> usize {
    ExampleBank::builtin().len()
}

#[pyclass(frozen)]
struct Corpus {
    inner: snacs::Corpus,
}

#[pymethods]
impl Corpus {
    /// Parses corpus text. Returns the corpus and a list of
    /// (line, code, message) diagnostics (always empty when strict).
    #[staticmethod]
    #[pyo3(signature = (text, strict = true))]
    fn parse(text: &str, strict: bool) -> PyResult<(Corpus, Diagnostics)> {
        let mode = if strict { Mode::Strict } else { Mode::Lenient };
        let (inner, diags) = parse_corpus(text, mode).map_err(value_err)?;
        let diags = diags
            .into_iter()
            .map(|d| (d.line, d.code.to_string(), d.message))
            .collect();
        Ok((Corpus { inner }, diags))
    }

    fn serialize(&self) -> String {
        serialize_corpus(&self.inner)
    }

    /// (sent_id, start, end, form, lemma, label, ctx) tuples in file order.
    fn records(&self) -> Vec<(String, usize, usize, String, String, String, String)> {
        self.inner
            .records
            .iter()
            .map(|r| {
                (
                    r.sent_id.clone(),
                    r.start,
                    r.end,
                    r.form.clone(),
                    r.lemma.clone(),
                    r.label.to_string(),
                    r.ctx.to_string(),
                )
            })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.records.len()
    }
}

/// Scores `pred` against `gold` and returns the report as JSON text.
#[pyfunction]
fn score(gold: &Corpus, pred: &Corpus) -> PyResult<String> {
    snacs::score(&gold.inner, &pred.inner)
        .map(|r| r.to_machine())
        .map_err(value_err)
}

#[pyclass(name = "BaselineModel", frozen)]
struct Model {
    inner: BaselineModel,
}

#[pymethods]
impl Model {
    /// Trained on the built-in example bank.
    #[staticmethod]
    fn from_bank() -> PyResult<Model> {
        BaselineModel::train(ExampleBank::builtin())
            .map(|inner| Model { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_corpus(c: &Corpus) -> PyResult<Model> {
        BaselineModel::train(&c.inner)
            .map(|inner| Model { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_tsv(text: &str) -> PyResult<Model> {
        BaselineModel::from_tsv(text)
            .map(|inner| Model { inner })
            .map_err(value_err)
    }

    fn to_tsv(&self) -> String {
        self.inner.to_tsv()
    }

    #[pyo3(signature = (lemma, ctx = "None"))]
    fn predict(&self, lemma: &str, ctx: &str) -> PyResult<String> {
        Ok(self.inner.predict(lemma, context(ctx)?).to_string())
    }

    fn tag(&self, c: &Corpus) -> Corpus {
        Corpus {
            inner: self.inner.tag_corpus(&c.inner),
        }
    }
}

/// Leave-one-out report over the built-in bank, as JSON text.
#[pyfunction]
fn leave_one_out_report() -> PyResult<String> {
    leave_one_out(ExampleBank::builtin())
        .map(|r| r.to_machine())
        .map_err(value_err)
}

#[pymodule]
fn snacs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(supersenses, m)?)?;
    m.add_function(wrap_pyfunction!(ancestors, m)?)?;
    m.add_function(wrap_pyfunction!(children, m)?)?;
    m.add_function(wrap_pyfunction!(depth, m)?)?;
    m.add_function(wrap_pyfunction!(lca, m)?)?;
    m.add_function(wrap_pyfunction!(wu_palmer, m)?)?;
    m.add_function(wrap_pyfunction!(migrate_v1, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_label, m)?)?;
    m.add_function(wrap_pyfunction!(export_schema, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(attested_labels, m)?)?;
    m.add_function(wrap_pyfunction!(bank_size, m)?)?;
    m.add_function(wrap_pyfunction!(score, m)?)?;
    m.add_function(wrap_pyfunction!(leave_one_out_report, m)?)?;
    m.add_class::<ValidationReport>()?;
    m.add_class::<Corpus>()?;
    m.add_class::<Model>()?;
    Ok(())
}
