//! Transcribed example sentences with gold labels, and the indexes derived
//! from them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use thiserror::Error;

use crate::construal::{check, parse_label, ConstructionContext, Label, SpecialLabel, Violation};
use crate::schema::Supersense;

pub const HEADER: &str = "SENTENCE\tADPOSITION\tLABEL\tCTX\tCITATION";

const BUILTIN: &str = include_str!("../data/examples.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleEntry {
    pub sentence: String,
    pub adposition: String,
    pub label: Label,
    pub ctx: ConstructionContext,
    pub citation: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BankError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {label} fails validation in {ctx}: {}", summary(.violations))]
    InvalidExample {
        line: usize,
        label: Label,
        ctx: ConstructionContext,
        violations: Vec<Violation>,
    },
}

fn summary(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.code.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExampleBank {
    entries: Vec<ExampleEntry>,
    by_adposition: BTreeMap<String, BTreeMap<(Label, ConstructionContext), usize>>,
    attested: BTreeSet<(Supersense, Supersense)>,
    attested_special: BTreeSet<SpecialLabel>,
}

impl ExampleBank {
    /// The bank shipped with the crate.
    pub fn builtin() -> &'static ExampleBank {
        static BANK: OnceLock<ExampleBank> = OnceLock::new();
        BANK.get_or_init(|| load_bank(BUILTIN).expect("shipped example bank is valid"))
    }

    pub fn from_entries(entries: Vec<ExampleEntry>) -> Self {
        let mut bank = ExampleBank::default();
        for e in entries {
            bank.push(e);
        }
        bank
    }

    fn push(&mut self, e: ExampleEntry) {
        *self
            .by_adposition
            .entry(e.adposition.clone())
            .or_default()
            .entry((e.label, e.ctx))
            .or_default() += 1;
        match e.label {
            Label::Construal(c) => {
                self.attested.insert((c.role, c.function));
            }
            Label::Special(s) => {
                self.attested_special.insert(s);
            }
        }
        self.entries.push(e);
    }

    pub fn entries(&self) -> &[ExampleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn adpositions(&self) -> impl Iterator<Item = &str> {
        self.by_adposition.keys().map(String::as_str)
    }

    /// Counts of (label, context) for one adposition.
    pub fn by_adposition(
        &self,
        adposition: &str,
    ) -> Option<&BTreeMap<(Label, ConstructionContext), usize>> {
        self.by_adposition.get(adposition)
    }

    /// Attested (role, function) pairs.
    pub fn attested(&self) -> &BTreeSet<(Supersense, Supersense)> {
        &self.attested
    }

    pub fn is_attested(&self, label: &Label) -> bool {
        match label {
            Label::Construal(c) => self.attested.contains(&(c.role, c.function)),
            Label::Special(s) => self.attested_special.contains(s),
        }
    }

    /// Labels seen with `adposition`, summed over contexts, most frequent
    /// first and ties by serialization.
    pub fn attested_labels(&self, adposition: &str) -> Vec<(Label, usize)> {
        let Some(counts) = self.by_adposition.get(adposition) else {
            return Vec::new();
        };
        let mut merged: BTreeMap<Label, usize> = BTreeMap::new();
        for ((label, _), n) in counts {
            *merged.entry(*label).or_default() += n;
        }
        rank(merged)
    }

    /// Serializes back to the TSV format.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.sentence, e.adposition, e.label, e.ctx, e.citation
            ));
        }
        out
    }
}

/// Sorts by descending count, then ascending serialized label.
pub(crate) fn rank<K: ToString>(counts: impl IntoIterator<Item = (K, usize)>) -> Vec<(K, usize)> {
    let mut v: Vec<(String, K, usize)> = counts
        .into_iter()
        .map(|(k, n)| (k.to_string(), k, n))
        .collect();
    v.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
    v.into_iter().map(|(_, k, n)| (k, n)).collect()
}

/// Parses a bank file. Every entry must pass the categorical rules in its
/// recorded context.
pub fn load_bank(text: &str) -> Result<ExampleBank, BankError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        _ => {
            return Err(BankError::Format {
                line: 1,
                message: "missing header".into(),
            })
        }
    }
    let mut bank = ExampleBank::default();
    for (i, raw) in lines {
        let line = i + 1;
        if raw.is_empty() {
            continue;
        }
        let fail = |message: String| BankError::Format { line, message };
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() != 5 {
            return Err(fail(format!("expected 5 columns, found {}", cols.len())));
        }
        let label = parse_label(cols[2]).map_err(|e| fail(e.to_string()))?;
        let ctx: ConstructionContext = cols[3]
            .parse()
            .map_err(|e: crate::LabelError| fail(e.to_string()))?;
        if cols[1].is_empty() {
            return Err(fail("empty adposition".into()));
        }
        let violations = check(&label, ctx);
        if !violations.is_empty() {
            return Err(BankError::InvalidExample {
                line,
                label,
                ctx,
                violations,
            });
        }
        bank.push(ExampleEntry {
            sentence: cols[0].to_string(),
            adposition: cols[1].to_string(),
            label,
            ctx,
            citation: cols[4].to_string(),
        });
    }
    Ok(bank)
}
