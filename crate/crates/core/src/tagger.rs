//! Most-frequent-label baseline with construction defaults.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::construal::{check, ConstructionContext, Label, SpecialLabel};
use crate::corpus_io::{Corpus, Sentence};
use crate::examplebank::ExampleBank;
use crate::metrics::{score, ScoreReport};
use crate::schema::Supersense;

pub const MODEL_HEADER: &str = "LEMMA\tLABEL\tCTX\tCOUNT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaggerError {
    #[error("no usable training examples")]
    EmptyTrainingData,
    #[error("model line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Anything that yields (lemma, label, context) observations.
pub trait TrainingSource {
    fn observations(&self) -> Vec<(String, Label, ConstructionContext)>;
}

impl TrainingSource for ExampleBank {
    fn observations(&self) -> Vec<(String, Label, ConstructionContext)> {
        self.entries()
            .iter()
            .map(|e| (e.adposition.clone(), e.label, e.ctx))
            .collect()
    }
}

impl TrainingSource for Corpus {
    fn observations(&self) -> Vec<(String, Label, ConstructionContext)> {
        self.records
            .iter()
            .map(|r| (r.lemma.clone(), r.label, r.ctx))
            .collect()
    }
}

type Counts = BTreeMap<(String, Label, ConstructionContext), usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineModel {
    per_lemma: BTreeMap<String, Vec<(Label, ConstructionContext, usize)>>,
    global_fallback: Label,
}

fn count(obs: Vec<(String, Label, ConstructionContext)>) -> Counts {
    let mut counts = Counts::new();
    for (lemma, label, ctx) in obs {
        if check(&label, ctx).is_empty() {
            *counts.entry((lemma, label, ctx)).or_default() += 1;
        }
    }
    counts
}

impl BaselineModel {
    pub fn train(source: &impl TrainingSource) -> Result<Self, TaggerError> {
        Self::from_counts(&count(source.observations()))
    }

    fn from_counts(counts: &Counts) -> Result<Self, TaggerError> {
        let mut per_lemma: BTreeMap<String, Vec<(Label, ConstructionContext, usize)>> =
            BTreeMap::new();
        let mut totals: BTreeMap<Label, usize> = BTreeMap::new();
        for ((lemma, label, ctx), &n) in counts {
            if n == 0 {
                continue;
            }
            per_lemma
                .entry(lemma.clone())
                .or_default()
                .push((*label, *ctx, n));
            *totals.entry(*label).or_default() += n;
        }
        if per_lemma.is_empty() {
            return Err(TaggerError::EmptyTrainingData);
        }
        for list in per_lemma.values_mut() {
            list.sort_by(|a, b| {
                b.2.cmp(&a.2)
                    .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
                    .then_with(|| a.1.name().cmp(b.1.name()))
            });
        }
        let global_fallback = crate::examplebank::rank(totals)
            .into_iter()
            .map(|(l, _)| l)
            .find(|l| check(l, ConstructionContext::None).is_empty())
            .unwrap_or(Label::congruent(Supersense::Circumstance));
        Ok(BaselineModel {
            per_lemma,
            global_fallback,
        })
    }

    pub fn global_fallback(&self) -> Label {
        self.global_fallback
    }

    /// Ranked (label, context, count) entries for a lemma.
    pub fn entries(&self, lemma: &str) -> &[(Label, ConstructionContext, usize)] {
        self.per_lemma.get(lemma).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.per_lemma.keys().map(String::as_str)
    }

    /// Best label for `lemma` in `ctx`. Entries seen in the same context are
    /// preferred, then entries from any context; either way the label must be
    /// valid in `ctx`. Failing both, a fixed default for the context is used.
    pub fn predict(&self, lemma: &str, ctx: ConstructionContext) -> Label {
        let entries = self.entries(lemma);
        let valid = |l: &Label| check(l, ctx).is_empty();
        entries
            .iter()
            .find(|(l, c, _)| *c == ctx && valid(l))
            .or_else(|| entries.iter().find(|(l, _, _)| valid(l)))
            .map(|(l, _, _)| *l)
            .unwrap_or_else(|| self.context_default(ctx))
    }

    fn context_default(&self, ctx: ConstructionContext) -> Label {
        use ConstructionContext as Cx;
        match ctx {
            Cx::None => self.global_fallback,
            Cx::SGenitive => Label::congruent(Supersense::Gestalt),
            Cx::PassiveBy => Label::congruent(Supersense::Agent),
            Cx::AsComparativeFirst => Label::congruent(Supersense::Extent),
            Cx::InfinitivalTo | Cx::InfinitivalForSubject => {
                Label::Special(SpecialLabel::OtherInfinitive)
            }
        }
    }

    /// Relabels every record of `c`.
    pub fn tag_corpus(&self, c: &Corpus) -> Corpus {
        let mut out = c.clone();
        for r in &mut out.records {
            r.label = self.predict(&r.lemma, r.ctx);
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(MODEL_HEADER);
        out.push('\n');
        for (lemma, list) in &self.per_lemma {
            for (label, ctx, n) in list {
                out.push_str(&format!("{lemma}\t{label}\t{ctx}\t{n}\n"));
            }
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, TaggerError> {
        let mut lines = text.lines().enumerate();
        if lines.next().map(|(_, h)| h) != Some(MODEL_HEADER) {
            return Err(TaggerError::Format {
                line: 1,
                message: "missing header".into(),
            });
        }
        let mut counts = Counts::new();
        for (i, l) in lines {
            if l.is_empty() {
                continue;
            }
            let fail = |message: String| TaggerError::Format {
                line: i + 1,
                message,
            };
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 4 {
                return Err(fail(format!("expected 4 columns, found {}", cols.len())));
            }
            let label: Label = cols[1]
                .parse()
                .map_err(|e: crate::LabelError| fail(e.to_string()))?;
            let ctx: ConstructionContext = cols[2]
                .parse()
                .map_err(|e: crate::LabelError| fail(e.to_string()))?;
            let n: usize = cols[3]
                .parse()
                .map_err(|_| fail(format!("bad count `{}`", cols[3])))?;
            if !check(&label, ctx).is_empty() {
                return Err(fail(format!("{label} is not valid in {ctx}")));
            }
            *counts.entry((cols[0].to_string(), label, ctx)).or_default() += n;
        }
        Self::from_counts(&counts)
    }
}

/// One single-token sentence per bank entry, labeled with the gold label.
pub fn bank_as_corpus(bank: &ExampleBank) -> Corpus {
    let mut c = Corpus::default();
    for (i, e) in bank.entries().iter().enumerate() {
        let id = format!("ex{:04}", i + 1);
        c.sentences.push(Sentence {
            id: id.clone(),
            tokens: vec![e.adposition.clone()],
        });
        c.annotate(&id, (1, 1), &e.adposition, e.label, e.ctx)
            .expect("single-token span fits");
    }
    c
}

/// Predicts each bank entry from a model trained on all the others and
/// scores the result against the bank.
pub fn leave_one_out(bank: &ExampleBank) -> Result<ScoreReport, TaggerError> {
    let gold = bank_as_corpus(bank);
    let all = count(bank.observations());
    let mut pred = gold.clone();
    for r in &mut pred.records {
        let mut counts = all.clone();
        if let Some(n) = counts.get_mut(&(r.lemma.clone(), r.label, r.ctx)) {
            *n -= 1;
        }
        let model = BaselineModel::from_counts(&counts)?;
        r.label = model.predict(&r.lemma, r.ctx);
    }
    Ok(score(&gold, &pred).expect("same sentences"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examplebank::load_bank;
    use crate::examplebank::HEADER;
    use ConstructionContext as Cx;
    use Supersense as S;

    fn bank(rows: &str) -> ExampleBank {
        load_bank(&format!("{HEADER}\n{rows}")).unwrap()
    }

    #[test]
    fn ago_head() {
        let m = BaselineModel::train(&bank(
            "I arrived a year ago\tago\tp.Time~>p.Interval\tNone\tex:ago\n",
        ))
        .unwrap();
        assert_eq!(
            m.entries("ago")[0].0,
            Label::construal(S::Time, S::Interval)
        );
        assert_eq!(
            m.predict("ago", Cx::None),
            Label::construal(S::Time, S::Interval)
        );
    }

    #[test]
    fn tie_break() {
        let m =
            BaselineModel::train(&bank("a\tx\tp.Time\tNone\tc\nb\tx\tp.Locus\tNone\tc\n")).unwrap();
        assert_eq!(m.entries("x")[0].0, Label::congruent(S::Locus));
    }

    #[test]
    fn empty() {
        assert_eq!(
            BaselineModel::train(&ExampleBank::default()),
            Err(TaggerError::EmptyTrainingData)
        );
    }

    #[test]
    fn context_defaults() {
        let m = BaselineModel::train(ExampleBank::builtin()).unwrap();
        assert_eq!(
            m.predict("zzz", Cx::SGenitive),
            Label::congruent(S::Gestalt)
        );
        assert_eq!(m.predict("zzz", Cx::PassiveBy), Label::congruent(S::Agent));
        assert_eq!(
            m.predict("zzz", Cx::AsComparativeFirst),
            Label::congruent(S::Extent)
        );
        assert_eq!(
            m.predict("to", Cx::InfinitivalForSubject),
            Label::Special(SpecialLabel::OtherInfinitive)
        );
        assert_eq!(m.predict("zzz", Cx::None), m.global_fallback());
    }

    #[test]
    fn passive_by_uses_bank() {
        let m = BaselineModel::train(&bank(
            "This story was told by my grandmother.\tby\tp.Originator~>p.Agent\tPassiveBy\tsec:passives\n\
             Travel by train.\tby\tp.Instrument\tNone\tc\nCommunicate by phone.\tby\tp.Instrument\tNone\tc\n",
        ))
        .unwrap();
        assert_eq!(
            m.predict("by", Cx::PassiveBy),
            Label::construal(S::Originator, S::Agent)
        );
        assert_eq!(m.predict("by", Cx::None), Label::congruent(S::Instrument));
    }

    #[test]
    fn model_round_trip() {
        let m = BaselineModel::train(ExampleBank::builtin()).unwrap();
        let text = m.to_tsv();
        let back = BaselineModel::from_tsv(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_tsv(), text);
    }

    #[test]
    fn tag_empty() {
        let m = BaselineModel::train(ExampleBank::builtin()).unwrap();
        assert_eq!(m.tag_corpus(&Corpus::default()), Corpus::default());
    }
}
