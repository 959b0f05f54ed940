//! Scoring predicted annotations against gold ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::construal::Label;
use crate::corpus_io::{AnnotationRecord, Corpus};
use crate::schema::wu_palmer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("corpora differ in their sentences: {0}")]
    CorpusMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusionCell {
    pub gold: String,
    pub pred: String,
    pub count: usize,
}

/// Accuracies are over spans present in both corpora. When there are none
/// they are reported as 1.0, as are precision and recall with an empty
/// denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub n_gold: usize,
    pub n_pred: usize,
    pub n_matched_spans: usize,
    pub ident_p: f64,
    pub ident_r: f64,
    pub ident_f: f64,
    pub role_acc: f64,
    pub func_acc: f64,
    pub full_acc: f64,
    pub role_wp: f64,
    pub func_wp: f64,
    pub confusion: Vec<ConfusionCell>,
}

/// One side of a label for comparison purposes. Specials count as a single
/// atomic value on both sides.
#[derive(PartialEq)]
enum Side {
    Sense(crate::schema::Supersense),
    Special(crate::construal::SpecialLabel),
}

fn role(l: &Label) -> Side {
    match l {
        Label::Construal(c) => Side::Sense(c.role),
        Label::Special(s) => Side::Special(*s),
    }
}

fn function(l: &Label) -> Side {
    match l {
        Label::Construal(c) => Side::Sense(c.function),
        Label::Special(s) => Side::Special(*s),
    }
}

fn similarity(a: Side, b: Side) -> f64 {
    match (a, b) {
        (Side::Sense(x), Side::Sense(y)) => wu_palmer(x, y),
        (a, b) => f64::from(u8::from(a == b)),
    }
}

fn ratio(num: f64, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num / den as f64
    }
}

fn inventory(c: &Corpus) -> BTreeMap<&str, usize> {
    c.sentences
        .iter()
        .map(|s| (s.id.as_str(), s.tokens.len()))
        .collect()
}

/// Matches records by exact (sentence, span) and scores them.
pub fn score(gold: &Corpus, pred: &Corpus) -> Result<ScoreReport, MetricsError> {
    let (gi, pi) = (inventory(gold), inventory(pred));
    if gi != pi {
        let diff = gi
            .iter()
            .find(|(k, v)| pi.get(*k) != Some(v))
            .map(|(k, _)| *k)
            .or_else(|| pi.keys().find(|k| !gi.contains_key(*k)).copied())
            .unwrap_or_default();
        return Err(MetricsError::CorpusMismatch(format!("sentence {diff}")));
    }

    let key = |r: &AnnotationRecord| (r.sent_id.clone(), r.start, r.end);
    let gold_by_span: HashMap<_, &AnnotationRecord> =
        gold.records.iter().map(|r| (key(r), r)).collect();

    let mut matched = 0usize;
    let (mut role_hit, mut func_hit, mut full_hit) = (0usize, 0usize, 0usize);
    let (mut role_sim, mut func_sim) = (0f64, 0f64);
    let mut confusion: BTreeMap<(String, String), usize> = BTreeMap::new();

    // Sort matched pairs so floating-point sums do not depend on record order.
    let mut pairs: Vec<(&AnnotationRecord, &AnnotationRecord)> = pred
        .records
        .iter()
        .filter_map(|p| gold_by_span.get(&key(p)).map(|g| (*g, p)))
        .collect();
    pairs.sort_by_key(|(g, p)| (key(g), g.label, p.label));

    for (g, p) in pairs {
        matched += 1;
        role_hit += usize::from(role(&g.label) == role(&p.label));
        func_hit += usize::from(function(&g.label) == function(&p.label));
        full_hit += usize::from(g.label == p.label);
        role_sim += similarity(role(&g.label), role(&p.label));
        func_sim += similarity(function(&g.label), function(&p.label));
        *confusion
            .entry((g.label.to_string(), p.label.to_string()))
            .or_default() += 1;
    }

    let ident_p = ratio(matched as f64, pred.records.len());
    let ident_r = ratio(matched as f64, gold.records.len());
    let ident_f = if ident_p + ident_r == 0.0 {
        0.0
    } else {
        2.0 * ident_p * ident_r / (ident_p + ident_r)
    };

    Ok(ScoreReport {
        n_gold: gold.records.len(),
        n_pred: pred.records.len(),
        n_matched_spans: matched,
        ident_p,
        ident_r,
        ident_f,
        role_acc: ratio(role_hit as f64, matched),
        func_acc: ratio(func_hit as f64, matched),
        full_acc: ratio(full_hit as f64, matched),
        role_wp: ratio(role_sim, matched),
        func_wp: ratio(func_sim, matched),
        confusion: confusion
            .into_iter()
            .map(|((gold, pred), count)| ConfusionCell { gold, pred, count })
            .collect(),
    })
}

impl ScoreReport {
    /// JSON with a fixed key order.
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let rows: [(&str, String); 11] = [
            ("gold records", self.n_gold.to_string()),
            ("pred records", self.n_pred.to_string()),
            ("matched spans", self.n_matched_spans.to_string()),
            ("ident P", format!("{:.4}", self.ident_p)),
            ("ident R", format!("{:.4}", self.ident_r)),
            ("ident F", format!("{:.4}", self.ident_f)),
            ("role acc", format!("{:.4}", self.role_acc)),
            ("func acc", format!("{:.4}", self.func_acc)),
            ("full acc", format!("{:.4}", self.full_acc)),
            ("role WP", format!("{:.4}", self.role_wp)),
            ("func WP", format!("{:.4}", self.func_wp)),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<14} {v}");
        }
        if !self.confusion.is_empty() {
            let w = self
                .confusion
                .iter()
                .map(|c| c.gold.len())
                .max()
                .unwrap_or(0)
                .max(4);
            let v = self
                .confusion
                .iter()
                .map(|c| c.pred.len())
                .max()
                .unwrap_or(0)
                .max(4);
            let _ = writeln!(out, "\n{:<w$}  {:<v$}  count", "gold", "pred");
            for c in &self.confusion {
                let _ = writeln!(out, "{:<w$}  {:<v$}  {}", c.gold, c.pred, c.count);
            }
        }
        out
    }
}
