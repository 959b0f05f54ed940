//! Adposition supersense toolkit: the label hierarchy, construal validation,
//! an annotated example bank, a corpus format, scoring and a baseline tagger.

pub mod cli;
pub mod construal;
pub mod corpus_io;
pub mod error;
pub mod examplebank;
pub mod metrics;
pub mod schema;
pub mod tagger;

pub use construal::{
    check, classify_direction, parse_label, validate, validate_with, Construal, ConstrualDirection,
    ConstructionContext, Label, SpecialLabel, ValidationReport, Violation, ViolationCode,
};
pub use corpus_io::{parse_corpus, serialize_corpus, AnnotationRecord, Corpus, Diagnostic, Mode};
pub use error::LabelError;
pub use examplebank::{load_bank, ExampleBank, ExampleEntry};
pub use metrics::{score, ScoreReport};
pub use schema::{
    lca, migrate_v1, parse_supersense, wu_palmer, Hierarchy, MigrationResult, Subhierarchy,
    Supersense,
};
pub use tagger::BaselineModel;
