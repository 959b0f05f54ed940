//! Reading and writing annotated corpora.
//!
//! A file holds sentence blocks followed by one annotation block. Columns
//! are tab-separated:
//!
//! ```text
//! # sent_id = s1
//! 1  Give
//! 2  the
//! 3  box
//! 4  to
//! 5  Sam
//!
//! # annotations
//! s1  4:4  to  p.Recipient  p.Goal  None
//! ```
//!
//! Spans are 1-based and inclusive. Congruent labels repeat the same
//! supersense in both label columns; special codes must also match.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::construal::{check, Construal, ConstructionContext, Label, SpecialLabel};
use crate::error::LabelError;
use crate::schema::parse_supersense;

const SENT_PREFIX: &str = "# sent_id = ";
const ANNOTATIONS: &str = "# annotations";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub sent_id: String,
    pub start: usize,
    pub end: usize,
    pub form: String,
    pub lemma: String,
    pub label: Label,
    pub ctx: ConstructionContext,
}

impl AnnotationRecord {
    pub fn span(&self) -> (usize, usize) {
        (self.start, self.end)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    pub records: Vec<AnnotationRecord>,
}

impl Corpus {
    pub fn sentence(&self, id: &str) -> Option<&Sentence> {
        self.sentences.iter().find(|s| s.id == id)
    }

    /// Adds a record, filling in its surface form from the sentence tokens.
    pub fn annotate(
        &mut self,
        sent_id: &str,
        (start, end): (usize, usize),
        lemma: &str,
        label: Label,
        ctx: ConstructionContext,
    ) -> Result<(), String> {
        let sent = self
            .sentence(sent_id)
            .ok_or_else(|| format!("unknown sentence {sent_id}"))?;
        check_span(sent, start, end)?;
        let form = sent.tokens[start - 1..end].join(" ");
        self.records.push(AnnotationRecord {
            sent_id: sent_id.to_string(),
            start,
            end,
            form,
            lemma: lemma.to_string(),
            label,
            ctx,
        });
        Ok(())
    }
}

/// A validation problem found while loading in lenient mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: {code} {message}")]
    Format {
        line: usize,
        code: &'static str,
        message: String,
    },
    #[error("line {line}: {code} {message}")]
    Validation {
        line: usize,
        code: &'static str,
        message: String,
    },
}

impl CorpusError {
    pub fn line(&self) -> usize {
        match self {
            CorpusError::Format { line, .. } | CorpusError::Validation { line, .. } => *line,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CorpusError::Format { code, .. } | CorpusError::Validation { code, .. } => code,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CorpusError::Format { message, .. } | CorpusError::Validation { message, .. } => {
                message
            }
        }
    }
}

fn format_err(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Format {
        line,
        code: "E_FORMAT",
        message: message.into(),
    }
}

fn label_err(line: usize, e: LabelError) -> CorpusError {
    CorpusError::Format {
        line,
        code: e.code(),
        message: e.to_string(),
    }
}

fn check_span(sent: &Sentence, start: usize, end: usize) -> Result<(), String> {
    if start == 0 || start > end || end > sent.tokens.len() {
        return Err(format!(
            "span {start}:{end} out of range for sentence {} with {} tokens",
            sent.id,
            sent.tokens.len()
        ));
    }
    Ok(())
}

fn label_column(text: &str, mode: Mode) -> Result<String, String> {
    let t = match mode {
        Mode::Strict => text,
        Mode::Lenient => text.trim(),
    };
    if t.starts_with('`') {
        return Ok(t.to_string());
    }
    match (mode, t.strip_prefix("p.")) {
        (_, Some(name)) => Ok(name.to_string()),
        (Mode::Lenient, None) => Ok(t.to_string()),
        (Mode::Strict, None) => Err(format!("label column `{text}` lacks the p. prefix")),
    }
}

fn parse_label_columns(
    role: &str,
    func: &str,
    mode: Mode,
    line: usize,
) -> Result<Label, CorpusError> {
    let role = label_column(role, mode).map_err(|m| format_err(line, m))?;
    let func = label_column(func, mode).map_err(|m| format_err(line, m))?;
    match (role.starts_with('`'), func.starts_with('`')) {
        (true, true) => {
            if role != func {
                return Err(format_err(
                    line,
                    format!("special codes differ: {role} vs {func}"),
                ));
            }
            SpecialLabel::from_code(&role)
                .map(Label::Special)
                .ok_or_else(|| label_err(line, LabelError::Unknown(role)))
        }
        (false, false) => {
            let r = parse_supersense(&role).map_err(|e| label_err(line, e))?;
            let f = parse_supersense(&func).map_err(|e| label_err(line, e))?;
            Ok(Label::Construal(Construal::new(r, f)))
        }
        _ => Err(label_err(
            line,
            LabelError::SpecialWithConstrual(format!("{role} / {func}")),
        )),
    }
}

fn parse_span(text: &str) -> Option<(usize, usize)> {
    let (a, b) = text.split_once(':')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// Parses a corpus file.
///
/// Structural problems always fail. Label rule violations fail at the first
/// occurrence in strict mode; in lenient mode they are collected and the
/// record is kept.
pub fn parse_corpus(text: &str, mode: Mode) -> Result<(Corpus, Vec<Diagnostic>), CorpusError> {
    enum Block {
        Between,
        Sentence,
        Annotations,
    }

    let mut corpus = Corpus::default();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut taken: HashMap<String, Vec<(usize, usize)>> = HashMap::new();
    let mut diagnostics = Vec::new();
    let mut block = Block::Between;

    for (i, raw) in text.split_terminator('\n').enumerate() {
        let line = i + 1;
        if raw.ends_with('\r') {
            return Err(format_err(line, "CR line ending"));
        }
        if mode == Mode::Strict && raw != raw.trim_end() {
            return Err(format_err(line, "trailing whitespace"));
        }
        let l = match mode {
            Mode::Strict => raw,
            Mode::Lenient => raw.trim_end(),
        };
        if l.is_empty() {
            block = Block::Between;
            continue;
        }
        if let Some(id) = l.strip_prefix(SENT_PREFIX) {
            if !matches!(block, Block::Between) {
                return Err(format_err(line, "sentence header inside a block"));
            }
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(format_err(line, format!("bad sentence id `{id}`")));
            }
            if index
                .insert(id.to_string(), corpus.sentences.len())
                .is_some()
            {
                return Err(format_err(line, format!("duplicate sentence id {id}")));
            }
            corpus.sentences.push(Sentence {
                id: id.to_string(),
                tokens: Vec::new(),
            });
            block = Block::Sentence;
            continue;
        }
        if l == ANNOTATIONS {
            if !matches!(block, Block::Between) {
                return Err(format_err(line, "annotation header inside a block"));
            }
            block = Block::Annotations;
            continue;
        }
        match block {
            Block::Between => return Err(format_err(line, "line outside any block")),
            Block::Sentence => {
                let sent = corpus.sentences.last_mut().expect("sentence block open");
                let (n, form) = l
                    .split_once('\t')
                    .ok_or_else(|| format_err(line, "token line needs 2 columns"))?;
                if form.is_empty() || form.contains('\t') {
                    return Err(format_err(line, "token line needs 2 columns"));
                }
                if n.parse::<usize>().ok() != Some(sent.tokens.len() + 1) {
                    return Err(format_err(
                        line,
                        format!(
                            "expected token index {}, found `{n}`",
                            sent.tokens.len() + 1
                        ),
                    ));
                }
                sent.tokens.push(form.to_string());
            }
            Block::Annotations => {
                let cols: Vec<&str> = l.split('\t').collect();
                if cols.len() != 6 {
                    return Err(format_err(
                        line,
                        format!("expected 6 columns, found {}", cols.len()),
                    ));
                }
                let sent_id = cols[0];
                let &si = index
                    .get(sent_id)
                    .ok_or_else(|| format_err(line, format!("unknown sentence id {sent_id}")))?;
                let sent = &corpus.sentences[si];
                let (start, end) = parse_span(cols[1])
                    .ok_or_else(|| format_err(line, format!("bad span `{}`", cols[1])))?;
                check_span(sent, start, end).map_err(|m| format_err(line, m))?;
                let spans = taken.entry(sent_id.to_string()).or_default();
                if let Some(&(a, b)) = spans.iter().find(|&&(a, b)| start <= b && a <= end) {
                    return Err(format_err(
                        line,
                        format!("span {start}:{end} overlaps {a}:{b}"),
                    ));
                }
                spans.push((start, end));
                let lemma = match mode {
                    Mode::Strict => cols[2],
                    Mode::Lenient => cols[2].trim(),
                };
                if lemma.is_empty() {
                    return Err(format_err(line, "empty lemma"));
                }
                let label = parse_label_columns(cols[3], cols[4], mode, line)?;
                let ctx_text = match mode {
                    Mode::Strict => cols[5],
                    Mode::Lenient => cols[5].trim(),
                };
                let ctx: ConstructionContext = ctx_text.parse().map_err(|e| label_err(line, e))?;
                let violations = check(&label, ctx);
                if let Some(v) = violations.first() {
                    if mode == Mode::Strict {
                        return Err(CorpusError::Validation {
                            line,
                            code: v.code.as_str(),
                            message: v.message.clone(),
                        });
                    }
                }
                diagnostics.extend(violations.into_iter().map(|v| Diagnostic {
                    line,
                    code: v.code.as_str(),
                    message: v.message,
                }));
                corpus.records.push(AnnotationRecord {
                    sent_id: sent_id.to_string(),
                    start,
                    end,
                    form: sent.tokens[start - 1..end].join(" "),
                    lemma: lemma.to_string(),
                    label,
                    ctx,
                });
            }
        }
    }
    Ok((corpus, diagnostics))
}

fn label_columns(label: &Label) -> (String, String) {
    match label {
        Label::Special(s) => (s.code().to_string(), s.code().to_string()),
        Label::Construal(c) => (format!("p.{}", c.role), format!("p.{}", c.function)),
    }
}

/// Writes a corpus in the file format. The output is byte-stable and parses
/// back to the same corpus.
pub fn serialize_corpus(c: &Corpus) -> String {
    let mut out = String::new();
    for s in &c.sentences {
        out.push_str(SENT_PREFIX);
        out.push_str(&s.id);
        out.push('\n');
        for (i, t) in s.tokens.iter().enumerate() {
            out.push_str(&format!("{}\t{}\n", i + 1, t));
        }
        out.push('\n');
    }
    out.push_str(ANNOTATIONS);
    out.push('\n');
    for r in &c.records {
        let (role, func) = label_columns(&r.label);
        out.push_str(&format!(
            "{}\t{}:{}\t{}\t{}\t{}\t{}\n",
            r.sent_id, r.start, r.end, r.lemma, role, func, r.ctx
        ));
    }
    out
}

/// Label frequencies over a corpus, most frequent first.
pub fn label_counts(c: &Corpus) -> Vec<(Label, usize)> {
    let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
    for r in &c.records {
        *counts.entry(r.label).or_default() += 1;
    }
    crate::examplebank::rank(counts)
}
