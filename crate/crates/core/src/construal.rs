//! Scene-role/function labels and the categorical rules they must satisfy.
//!
//! A label is either a [`Construal`] (`Role~>Function`, congruent when both
//! sides agree) or one of four [`SpecialLabel`]s that carry no supersense.
//! [`validate`] applies every role/function restriction plus the rules tied
//! to particular constructions (s-genitive, passive `by`, the first `as` of
//! an as-as comparative, infinitival `to`, and the `for` subject of an
//! infinitive). Violations are accumulated rather than short-circuited.

use std::fmt;
use std::str::FromStr;

use crate::error::LabelError;
use crate::examplebank::ExampleBank;
use crate::schema::{parse_supersense, Supersense};

/// Separator between scene role and function in the canonical form.
pub const ARROW: &str = "~>";
const PREFIX: &str = "p.";

/// A scene role paired with the function the adposition lexically encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Construal {
    pub role: Supersense,
    pub function: Supersense,
}

impl Construal {
    pub fn new(role: Supersense, function: Supersense) -> Self {
        Construal { role, function }
    }

    pub fn congruent(s: Supersense) -> Self {
        Construal {
            role: s,
            function: s,
        }
    }

    pub fn is_congruent(&self) -> bool {
        self.role == self.function
    }
}

impl fmt::Display for Construal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_congruent() {
            write!(f, "{PREFIX}{}", self.role)
        } else {
            write!(f, "{PREFIX}{}{ARROW}{PREFIX}{}", self.role, self.function)
        }
    }
}

/// Labels for tokens to which no supersense applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpecialLabel {
    Discourse,
    Coordinator,
    OtherInfinitive,
    OpaquePossessive,
}

impl SpecialLabel {
    pub const ALL: [SpecialLabel; 4] = [
        SpecialLabel::Discourse,
        SpecialLabel::Coordinator,
        SpecialLabel::OtherInfinitive,
        SpecialLabel::OpaquePossessive,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SpecialLabel::Discourse => "`d",
            SpecialLabel::Coordinator => "`c",
            SpecialLabel::OtherInfinitive => "`i",
            SpecialLabel::OpaquePossessive => "`$",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpecialLabel::Discourse => "DISCOURSE",
            SpecialLabel::Coordinator => "COORDINATOR",
            SpecialLabel::OtherInfinitive => "OTHER_INFINITIVE",
            SpecialLabel::OpaquePossessive => "OPAQUE_POSSESSIVE",
        }
    }

    pub fn from_code(code: &str) -> Option<SpecialLabel> {
        Self::ALL.into_iter().find(|s| s.code() == code)
    }
}

impl fmt::Display for SpecialLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Construal(Construal),
    Special(SpecialLabel),
}

impl Label {
    pub fn congruent(s: Supersense) -> Self {
        Label::Construal(Construal::congruent(s))
    }

    pub fn construal(role: Supersense, function: Supersense) -> Self {
        Label::Construal(Construal::new(role, function))
    }

    pub fn role(&self) -> Option<Supersense> {
        match self {
            Label::Construal(c) => Some(c.role),
            Label::Special(_) => None,
        }
    }

    pub fn function(&self) -> Option<Supersense> {
        match self {
            Label::Construal(c) => Some(c.function),
            Label::Special(_) => None,
        }
    }

    pub fn as_special(&self) -> Option<SpecialLabel> {
        match self {
            Label::Special(s) => Some(*s),
            Label::Construal(_) => None,
        }
    }
}

impl From<Construal> for Label {
    fn from(c: Construal) -> Self {
        Label::Construal(c)
    }
}

impl From<SpecialLabel> for Label {
    fn from(s: SpecialLabel) -> Self {
        Label::Special(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Construal(c) => c.fmt(f),
            Label::Special(s) => s.fmt(f),
        }
    }
}

impl FromStr for Label {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_label(s)
    }
}

fn parse_side(text: &str) -> Result<Supersense, LabelError> {
    parse_supersense(text.strip_prefix(PREFIX).unwrap_or(text))
}

/// Parses the canonical label form: `` `d `` style special codes,
/// `Role~>Function`, or a bare `Role` (congruent). Either side may carry a
/// `p.` prefix.
pub fn parse_label(text: &str) -> Result<Label, LabelError> {
    if text.contains(ARROW) {
        let parts: Vec<&str> = text.split(ARROW).collect();
        if parts.len() != 2 {
            return Err(LabelError::Malformed(text.to_string()));
        }
        if parts.iter().any(|p| p.starts_with('`')) {
            return Err(LabelError::SpecialWithConstrual(text.to_string()));
        }
        let role = parse_side(parts[0])?;
        let function = parse_side(parts[1])?;
        return Ok(Label::construal(role, function));
    }
    if text.starts_with('`') {
        return SpecialLabel::from_code(text)
            .map(Label::Special)
            .ok_or_else(|| LabelError::Unknown(text.to_string()));
    }
    parse_side(text).map(Label::congruent)
}

/// The syntactic construction an annotated token occurs in, where that
/// construction restricts the admissible labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum ConstructionContext {
    #[default]
    None,
    /// Clitic `'s` or a possessive pronoun.
    SGenitive,
    /// The `by` phrase of a passive.
    PassiveBy,
    /// The first `as` of an as-as comparative.
    AsComparativeFirst,
    /// Infinitival `to`.
    InfinitivalTo,
    /// `for` introducing the subject of an infinitive clause.
    InfinitivalForSubject,
}

impl ConstructionContext {
    pub const ALL: [ConstructionContext; 6] = [
        ConstructionContext::None,
        ConstructionContext::SGenitive,
        ConstructionContext::PassiveBy,
        ConstructionContext::AsComparativeFirst,
        ConstructionContext::InfinitivalTo,
        ConstructionContext::InfinitivalForSubject,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionContext::None => "None",
            ConstructionContext::SGenitive => "SGenitive",
            ConstructionContext::PassiveBy => "PassiveBy",
            ConstructionContext::AsComparativeFirst => "AsComparativeFirst",
            ConstructionContext::InfinitivalTo => "InfinitivalTo",
            ConstructionContext::InfinitivalForSubject => "InfinitivalForSubject",
        }
    }
}

impl fmt::Display for ConstructionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionContext {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| LabelError::UnknownContext(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    AbstractUse,
    FunctionForbidden,
    TemporalFunction,
    ConstructionMismatch,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 4] = [
        ViolationCode::AbstractUse,
        ViolationCode::FunctionForbidden,
        ViolationCode::TemporalFunction,
        ViolationCode::ConstructionMismatch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::AbstractUse => "E_ABSTRACT_USE",
            ViolationCode::FunctionForbidden => "E_FUNCTION_FORBIDDEN",
            ViolationCode::TemporalFunction => "E_TEMPORAL_FUNCTION",
            ViolationCode::ConstructionMismatch => "E_CONSTRUCTION_MISMATCH",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Whether the label occurs in the example bank. Advisory only.
    pub attested: bool,
}

impl ValidationReport {
    pub fn codes(&self) -> Vec<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

/// Supersenses that only ever occur as scene roles.
pub const ROLE_ONLY: [Supersense; 6] = [
    Supersense::Experiencer,
    Supersense::Stimulus,
    Supersense::Originator,
    Supersense::Recipient,
    Supersense::SocialRel,
    Supersense::OrgRole,
];

/// Spatial functions never used for a temporal scene role.
pub const SPATIAL_FUNCTIONS: [Supersense; 3] =
    [Supersense::Locus, Supersense::Path, Supersense::Extent];

/// Exhaustive analyses for infinitival `to`.
pub const INFINITIVAL_LABELS: [Label; 5] = [
    Label::Construal(Construal {
        role: Supersense::Purpose,
        function: Supersense::Purpose,
    }),
    Label::Construal(Construal {
        role: Supersense::Characteristic,
        function: Supersense::Purpose,
    }),
    Label::Construal(Construal {
        role: Supersense::Theme,
        function: Supersense::Purpose,
    }),
    Label::Construal(Construal {
        role: Supersense::ComparisonRef,
        function: Supersense::Purpose,
    }),
    Label::Special(SpecialLabel::OtherInfinitive),
];

fn is_temporal_role(s: Supersense) -> bool {
    s != Supersense::Temporal && Supersense::Temporal.subtree().contains(&s)
}

fn mismatch(label: &Label, ctx: ConstructionContext, expected: &str) -> Violation {
    Violation {
        code: ViolationCode::ConstructionMismatch,
        message: format!("{label} is not allowed in {ctx}: expected {expected}"),
    }
}

/// Applies every categorical rule and returns the violations found, in rule
/// order. Does not consult the example bank.
pub fn check(label: &Label, ctx: ConstructionContext) -> Vec<Violation> {
    use ConstructionContext as Cx;
    use Supersense as S;

    let mut out = Vec::new();

    if let Label::Construal(c) = label {
        let abstract_sides: Vec<Supersense> = if c.is_congruent() {
            vec![c.role]
        } else {
            vec![c.role, c.function]
        }
        .into_iter()
        .filter(|s| s.is_abstract())
        .collect();
        if !abstract_sides.is_empty() {
            let names: Vec<&str> = abstract_sides.iter().map(|s| s.name()).collect();
            out.push(Violation {
                code: ViolationCode::AbstractUse,
                message: format!(
                    "{} only organizes the hierarchy and cannot label a token",
                    names.join(", ")
                ),
            });
        }
        if ROLE_ONLY.contains(&c.function) {
            out.push(Violation {
                code: ViolationCode::FunctionForbidden,
                message: format!("{} can only serve as a scene role", c.function),
            });
        }
        let as_extent = ctx == Cx::AsComparativeFirst && c.function == S::Extent;
        if is_temporal_role(c.role) && SPATIAL_FUNCTIONS.contains(&c.function) && !as_extent {
            out.push(Violation {
                code: ViolationCode::TemporalFunction,
                message: format!(
                    "temporal role {} cannot take the spatial function {}",
                    c.role, c.function
                ),
            });
        }
    }

    let function = label.function();
    match ctx {
        Cx::None => {}
        Cx::SGenitive => {
            let ok = matches!(function, Some(S::Gestalt | S::Possessor))
                || *label == Label::Special(SpecialLabel::OpaquePossessive);
            if !ok {
                out.push(mismatch(label, ctx, "function Gestalt or Possessor, or `$"));
            }
        }
        Cx::PassiveBy => {
            if !matches!(function, Some(S::Agent | S::Causer)) {
                out.push(mismatch(label, ctx, "function Agent or Causer"));
            }
        }
        Cx::AsComparativeFirst => {
            if function != Some(S::Extent) {
                out.push(mismatch(label, ctx, "function Extent"));
            }
        }
        Cx::InfinitivalTo => {
            if !INFINITIVAL_LABELS.contains(label) {
                out.push(mismatch(
                    label,
                    ctx,
                    "p.Purpose, p.Characteristic~>p.Purpose, p.Theme~>p.Purpose, p.ComparisonRef~>p.Purpose or `i",
                ));
            }
        }
        Cx::InfinitivalForSubject => {
            if *label != Label::Special(SpecialLabel::OtherInfinitive) {
                out.push(mismatch(label, ctx, "`i"));
            }
        }
    }
    out
}

/// Validates `label` in `ctx`, reporting attestation against the built-in
/// example bank.
pub fn validate(label: &Label, ctx: ConstructionContext) -> ValidationReport {
    validate_with(label, ctx, ExampleBank::builtin())
}

/// Like [`validate`] but checks attestation against `bank`.
pub fn validate_with(
    label: &Label,
    ctx: ConstructionContext,
    bank: &ExampleBank,
) -> ValidationReport {
    let violations = check(label, ctx);
    ValidationReport {
        ok: violations.is_empty(),
        violations,
        attested: bank.is_attested(label),
    }
}

/// How the two sides of a construal relate in the hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstrualDirection {
    Congruent,
    CrossBranch,
    RoleAncestorOfFunction,
    FunctionAncestorOfRole,
}

pub fn classify_direction(c: &Construal) -> ConstrualDirection {
    if c.is_congruent() {
        ConstrualDirection::Congruent
    } else if c.role.is_ancestor_of(c.function) {
        ConstrualDirection::RoleAncestorOfFunction
    } else if c.function.is_ancestor_of(c.role) {
        ConstrualDirection::FunctionAncestorOfRole
    } else {
        ConstrualDirection::CrossBranch
    }
}
