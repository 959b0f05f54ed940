//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use common::*;
use snacs::corpus_io::{parse_corpus, serialize_corpus, Mode};
use snacs::tagger::{leave_one_out, BaselineModel};
use snacs::{
    lca, migrate_v1, parse_label, score, validate, wu_palmer, ConstructionContext, ExampleBank,
    Hierarchy, Label, MigrationResult, Subhierarchy, Supersense,
};

/// Absolute tolerance for every floating-point comparison below.
const TOL: f64 = 1e-9;
/// Wall-clock budget for the schema and oracle checks.
const FAST: Duration = Duration::from_secs(1);
const RANDOM_CORPORA: usize = 100;
const MIN_BANK: usize = 120;
const MIN_NEGATIVE: usize = 25;
const SAMPLE_SENTENCES: usize = 50;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

fn schema_cardinality() -> Outcome {
    let t = Instant::now();
    let h = Hierarchy::get();
    ensure(h.len() == 50, || format!("{} supersenses", h.len()))?;
    let sizes: Vec<usize> = Subhierarchy::ALL
        .iter()
        .map(|sub| {
            Supersense::ALL
                .iter()
                .filter(|s| s.subhierarchy() == *sub)
                .count()
        })
        .collect();
    ensure(sizes == [18, 14, 18], || {
        format!("subhierarchy sizes {sizes:?}")
    })?;
    let abs: BTreeSet<Supersense> = Supersense::ALL
        .into_iter()
        .filter(|s| s.is_abstract())
        .collect();
    let want: BTreeSet<Supersense> = [
        Supersense::Participant,
        Supersense::Configuration,
        Supersense::Temporal,
    ]
    .into_iter()
    .collect();
    ensure(abs == want, || format!("abstract set {abs:?}"))?;
    let el = t.elapsed();
    ensure(el < FAST, || format!("took {el:?}"))?;
    Ok(format!("50 labels, 18/14/18, 3 abstract, {el:?}"))
}

fn lca_oracle() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    for a in Supersense::ALL {
        for b in Supersense::ALL {
            pairs += 1;
            ensure(lca(a, b) == oracle_lca(a, b), || format!("lca({a},{b})"))?;
            let w = wu_palmer(a, b);
            ensure(close(w, oracle_wu_palmer(a, b)), || {
                format!("wu_palmer({a},{b}) = {w}")
            })?;
            ensure((0.0..=1.0).contains(&w), || {
                format!("wu_palmer({a},{b}) out of range")
            })?;
            ensure(close(w, wu_palmer(b, a)), || {
                format!("asymmetric at ({a},{b})")
            })?;
            ensure(close(w, 1.0) == (a == b), || {
                format!("wu_palmer({a},{b}) = {w}")
            })?;
        }
    }
    let el = t.elapsed();
    ensure(el < FAST, || format!("took {el:?}"))?;
    Ok(format!("{pairs} pairs agree, {el:?}"))
}

fn positive_suite() -> Outcome {
    let bank = ExampleBank::builtin();
    ensure(bank.len() >= MIN_BANK, || {
        format!("only {} entries", bank.len())
    })?;
    let failures: Vec<String> = bank
        .entries()
        .iter()
        .filter(|e| !validate(&e.label, e.ctx).ok)
        .map(|e| format!("{} [{}] {}", e.sentence, e.adposition, e.label))
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} failures, first: {}", failures.len(), failures[0])
    })?;
    let missing: Vec<Supersense> = Supersense::ALL
        .into_iter()
        .filter(|s| !s.is_abstract())
        .filter(|s| !bank.entries().iter().any(|e| e.label.role() == Some(*s)))
        .collect();
    ensure(missing.is_empty(), || {
        format!("never a scene role: {missing:?}")
    })?;
    Ok(format!(
        "{} entries valid, all 47 roles covered",
        bank.len()
    ))
}

fn negative_suite() -> Outcome {
    let text = fixture("negative.tsv");
    let mut n = 0;
    for (i, line) in text.lines().enumerate().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        let label = parse_label(cols[0]).map_err(|e| format!("line {}: {e}", i + 1))?;
        let ctx: ConstructionContext = cols[1]
            .parse()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        let report = validate(&label, ctx);
        let codes: Vec<&str> = report.violations.iter().map(|v| v.code.as_str()).collect();
        ensure(codes == [cols[2]], || {
            format!("{label} in {ctx}: expected [{}], got {codes:?}", cols[2])
        })?;
        n += 1;
    }
    ensure(n >= MIN_NEGATIVE, || format!("only {n} cases"))?;
    Ok(format!("{n}/{n} rejected with the expected code"))
}

/// Re-derives the expected lenient diagnostics from the raw annotation lines
/// without going through the corpus parser.
fn expected_diagnostics(text: &str) -> Result<Vec<(usize, String)>, String> {
    let mut out = Vec::new();
    let mut in_annotations = false;
    for (i, line) in text.lines().enumerate() {
        if line == "# annotations" {
            in_annotations = true;
            continue;
        }
        if !in_annotations || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let side = |s: &str| s.strip_prefix("p.").unwrap_or(s).to_string();
        let (role, func) = (side(cols[3]), side(cols[4]));
        let label_text = if role == func {
            role
        } else {
            format!("{role}~>{func}")
        };
        let label: Label = label_text
            .parse()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        let ctx: ConstructionContext = cols[5]
            .parse()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        for v in validate(&label, ctx).violations {
            out.push((i + 1, v.code.as_str().to_string()));
        }
    }
    Ok(out)
}

fn round_trip() -> Outcome {
    let text = fixture("sample50.corpus");
    let (c, diags) = parse_corpus(&text, Mode::Strict).map_err(|e| e.to_string())?;
    ensure(diags.is_empty(), || {
        "diagnostics on the clean sample".into()
    })?;
    ensure(c.sentences.len() == SAMPLE_SENTENCES, || {
        format!("{} sentences", c.sentences.len())
    })?;
    let again = serialize_corpus(&c);
    ensure(again == text, || {
        "serialized bytes differ from the fixture".into()
    })?;
    let (c2, _) = parse_corpus(&again, Mode::Strict).map_err(|e| e.to_string())?;
    ensure(c2 == c, || "re-parse differs".into())?;

    let bad = fixture("sample50_corrupted.corpus");
    ensure(parse_corpus(&bad, Mode::Strict).is_err(), || {
        "strict accepted the corrupted copy".into()
    })?;
    let (_, got) = parse_corpus(&bad, Mode::Lenient).map_err(|e| e.to_string())?;
    let got: Vec<(usize, String)> = got
        .into_iter()
        .map(|d| (d.line, d.code.to_string()))
        .collect();
    let want = expected_diagnostics(&bad)?;
    ensure(!want.is_empty() && got == want, || {
        format!("diagnostics {got:?} vs expected {want:?}")
    })?;
    Ok(format!(
        "{} sentences / {} records byte-identical; {} lenient diagnostics match",
        c.sentences.len(),
        c.records.len(),
        got.len()
    ))
}

fn metrics_sanity() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let strategy = corpus_strategy();
    let mut records = 0;
    for i in 0..RANDOM_CORPORA {
        let c = strategy
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        records += c.records.len();
        let r = score(&c, &c).map_err(|e| e.to_string())?;
        for (name, v) in [
            ("role_acc", r.role_acc),
            ("func_acc", r.func_acc),
            ("full_acc", r.full_acc),
            ("role_wp", r.role_wp),
            ("func_wp", r.func_wp),
            ("ident_f", r.ident_f),
        ] {
            ensure(close(v, 1.0), || format!("corpus {i}: {name} = {v}"))?;
        }
    }

    let load = |name: &str| {
        parse_corpus(&fixture(name), Mode::Strict)
            .map(|(c, _)| c)
            .map_err(|e| e.to_string())
    };
    let (gold, pred) = (load("toy_gold.corpus")?, load("toy_pred.corpus")?);
    let r = score(&gold, &pred).map_err(|e| e.to_string())?;
    ensure(close(r.ident_p, 1.0), || format!("ident_p = {}", r.ident_p))?;
    ensure(close(r.ident_r, 2.0 / 3.0), || {
        format!("ident_r = {}", r.ident_r)
    })?;
    ensure(close(r.ident_f, 0.8), || format!("ident_f = {}", r.ident_f))?;

    let mut g1 = gold.clone();
    g1.records.retain(|x| x.lemma == "from");
    let mut p1 = pred.clone();
    p1.records.retain(|x| x.lemma == "from");
    let r1 = score(&g1, &p1).map_err(|e| e.to_string())?;
    ensure(close(r1.role_wp, 0.75) && r1.full_acc == 0.0, || {
        format!(
            "StartTime/EndTime role_wp = {}, full_acc = {}",
            r1.role_wp, r1.full_acc
        )
    })?;
    Ok(format!(
        "{RANDOM_CORPORA} random corpora ({records} records) score 1.0; toy P=1 R=2/3 F=0.8; StartTime/EndTime wp=0.75"
    ))
}

fn tagger_soundness() -> Outcome {
    let bank = ExampleBank::builtin();
    let model = BaselineModel::train(bank).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for lemma in bank.adpositions() {
        for ctx in ConstructionContext::ALL {
            let l = model.predict(lemma, ctx);
            ensure(validate(&l, ctx).ok, || {
                format!("predict({lemma}, {ctx}) = {l} is invalid")
            })?;
            checked += 1;
        }
    }
    let first = leave_one_out(bank).map_err(|e| e.to_string())?.to_machine();
    let second = leave_one_out(bank).map_err(|e| e.to_string())?.to_machine();
    ensure(first == second, || {
        "leave-one-out reports differ between runs".into()
    })?;
    let r = leave_one_out(bank).map_err(|e| e.to_string())?;
    Ok(format!(
        "{checked} lemma x context predictions valid; LOO over {} entries: full_acc={:.4} role_acc={:.4} func_acc={:.4} role_wp={:.4}; reports byte-identical",
        r.n_gold, r.full_acc, r.role_acc, r.func_acc, r.role_wp
    ))
}

/// Every retired first-version name mentioned in the label histories.
const HISTORY_NAMES: &[&str] = &[
    "1DTrajectory",
    "2DArea",
    "3DMedium",
    "Activity",
    "Affector",
    "Age",
    "Asset",
    "Attribute",
    "ClockTimeCxn",
    "Co-Participant",
    "Co-Patient",
    "Comparison/Contrast",
    "Contour",
    "Course",
    "Creator",
    "DeicticTime",
    "Destination",
    "Donor/Speaker",
    "Elements",
    "EndState",
    "Function",
    "InitialLocation",
    "Instance",
    "Location",
    "Material",
    "Part/Portion",
    "Patient",
    "Place",
    "ProfessionalAspect",
    "Reciprocation",
    "RelativeTime",
    "Scalar/Rank",
    "StartState",
    "State",
    "Superset",
    "Transit",
    "Traversed",
    "Undergoer",
    "Value",
    "ValueComparison",
    "Via",
];

fn migration_ledger() -> Outcome {
    for name in HISTORY_NAMES {
        match migrate_v1(name) {
            Ok(MigrationResult::MapsTo(_)) | Ok(MigrationResult::Removed) => {}
            other => return Err(format!("{name} -> {other:?}")),
        }
    }
    use Supersense as S;
    for (old, new) in [
        ("Patient", S::Theme),
        ("DeicticTime", S::Interval),
        ("Material", S::Source),
        ("ProfessionalAspect", S::SocialRel),
    ] {
        let want = MigrationResult::MapsTo([new].into_iter().collect());
        let got = migrate_v1(old).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{old} -> {got}"))?;
    }
    Ok(format!(
        "{} history names resolve; 4 spot checks pass",
        HISTORY_NAMES.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("schema cardinality", schema_cardinality),
        ("lca oracle equivalence", lca_oracle),
        ("positive suite", positive_suite),
        ("negative suite", negative_suite),
        ("round-trip", round_trip),
        ("metrics sanity", metrics_sanity),
        ("tagger soundness", tagger_soundness),
        ("migration ledger", migration_ledger),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
