#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use snacs::corpus_io::Sentence;
use snacs::{check, ConstructionContext, Corpus, Label, SpecialLabel, Supersense};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Parent chain from `s` up to its root, `s` included, via the parent links
/// only.
pub fn path_to_root(s: Supersense) -> Vec<Supersense> {
    let mut out = vec![s];
    let mut cur = s;
    while let Some(p) = cur.parent() {
        out.push(p);
        cur = p;
    }
    out
}

pub fn oracle_depth(s: Supersense) -> usize {
    path_to_root(s).len()
}

/// Deepest shared element of the two root paths.
pub fn oracle_lca(a: Supersense, b: Supersense) -> Option<Supersense> {
    let pa: BTreeSet<Supersense> = path_to_root(a).into_iter().collect();
    path_to_root(b)
        .into_iter()
        .filter(|s| pa.contains(s))
        .max_by_key(|s| oracle_depth(*s))
}

pub fn oracle_wu_palmer(a: Supersense, b: Supersense) -> f64 {
    let d = oracle_lca(a, b).map_or(0, oracle_depth);
    2.0 * d as f64 / (oracle_depth(a) + oracle_depth(b)) as f64
}

pub fn all_labels() -> Vec<Label> {
    let mut v: Vec<Label> = SpecialLabel::ALL.into_iter().map(Label::Special).collect();
    for r in Supersense::ALL {
        for f in Supersense::ALL {
            v.push(Label::construal(r, f));
        }
    }
    v
}

/// Every (label, context) pair that passes the rules.
pub fn valid_pairs() -> Vec<(Label, ConstructionContext)> {
    let mut v = Vec::new();
    for l in all_labels() {
        for c in ConstructionContext::ALL {
            if check(&l, c).is_empty() {
                v.push((l, c));
            }
        }
    }
    v
}

const WORDS: [&str; 8] = ["the", "cat", "sat", "on", "a", "mat", "in", "June"];
const LEMMAS: [&str; 6] = ["on", "in", "of", "to", "'s", "out_of"];

/// Random well-formed corpus whose labels all validate.
pub fn corpus_strategy() -> impl Strategy<Value = Corpus> {
    let pairs = valid_pairs();
    let n = pairs.len();
    let sentence = (1usize..10).prop_flat_map(move |len| {
        (
            proptest::collection::vec(0..WORDS.len(), len),
            proptest::collection::vec((0..len, 1usize..3, 0..LEMMAS.len(), 0..n), 0..4),
        )
    });
    proptest::collection::vec(sentence, 0..6).prop_map(move |sents| {
        let mut c = Corpus::default();
        for (i, (words, recs)) in sents.into_iter().enumerate() {
            let id = format!("r{}", i + 1);
            let len = words.len();
            c.sentences.push(Sentence {
                id: id.clone(),
                tokens: words.into_iter().map(|w| WORDS[w].to_string()).collect(),
            });
            let mut used = vec![false; len + 1];
            for (start0, width, lemma, pair) in recs {
                let start = start0 + 1;
                let end = (start + width - 1).min(len);
                if (start..=end).any(|t| used[t]) {
                    continue;
                }
                (start..=end).for_each(|t| used[t] = true);
                let (label, ctx) = pairs[pair];
                c.annotate(&id, (start, end), LEMMAS[lemma], label, ctx)
                    .unwrap();
            }
        }
        c
    })
}
