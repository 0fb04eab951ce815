//! Sorted entities, time intervals, the ground-fact vocabulary and the
//! indexed knowledge base.
//!
//! Every constant in a knowledge base lives in one flat namespace and carries
//! exactly one [`Sort`]. Facts are ground atoms over a fixed predicate
//! vocabulary ([`Pred`]); each predicate has a positional signature that the
//! knowledge base enforces on assertion (strict mode) or leaves to the sort
//! checker (lenient mode).
//!
//! `play` and `coPlay` facts are downward closed in time. That closure is never
//! materialized: [`KnowledgeBase::holds`] answers it by interval containment.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Interned-by-value entity name.
pub type Name = Arc<str>;

/// Index of a fact inside a [`KnowledgeBase`]. Ids are dense and assigned in
/// insertion order.
pub type FactId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InfoKind {
    Event,
    Norm,
    Goal,
    Desire,
}

impl InfoKind {
    pub const ALL: [InfoKind; 4] = [InfoKind::Event, InfoKind::Norm, InfoKind::Goal, InfoKind::Desire];

    /// The single-letter tag used in predicate names (`hasE_rc`, `hasN_p`, ...).
    pub fn letter(self) -> char {
        match self {
            InfoKind::Event => 'E',
            InfoKind::Norm => 'N',
            InfoKind::Goal => 'G',
            InfoKind::Desire => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'E' => Some(InfoKind::Event),
            'N' => Some(InfoKind::Norm),
            'G' => Some(InfoKind::Goal),
            'D' => Some(InfoKind::Desire),
            _ => None,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            InfoKind::Event => "event",
            InfoKind::Norm => "norm",
            InfoKind::Goal => "goal",
            InfoKind::Desire => "desire",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sort {
    AbstractContext,
    InstanceContext,
    Role,
    Player,
    Interval,
    Location,
    Info(InfoKind),
}

impl Sort {
    /// Declaration keyword in `.sck` documents.
    pub fn keyword(self) -> &'static str {
        match self {
            Sort::AbstractContext => "abstract_context",
            Sort::InstanceContext => "instance_context",
            Sort::Role => "role",
            Sort::Player => "player",
            Sort::Interval => "interval",
            Sort::Location => "location",
            Sort::Info(kind) => kind.keyword(),
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "abstract_context" => Sort::AbstractContext,
            "instance_context" => Sort::InstanceContext,
            "role" => Sort::Role,
            "player" => Sort::Player,
            "location" => Sort::Location,
            "event" => Sort::Info(InfoKind::Event),
            "norm" => Sort::Info(InfoKind::Norm),
            "goal" => Sort::Info(InfoKind::Goal),
            "desire" => Sort::Info(InfoKind::Desire),
            _ => return None,
        })
    }

    /// Short unary-predicate tag (`SC`, `IC`, `SR`, ...).
    pub fn tag(self) -> &'static str {
        match self {
            Sort::AbstractContext => "SC",
            Sort::InstanceContext => "IC",
            Sort::Role => "SR",
            Sort::Player => "PL",
            Sort::Interval => "TI",
            Sort::Location => "LC",
            Sort::Info(InfoKind::Event) => "Event",
            Sort::Info(InfoKind::Norm) => "Norm",
            Sort::Info(InfoKind::Goal) => "Goal",
            Sort::Info(InfoKind::Desire) => "Desire",
        }
    }

    pub fn is_context(self) -> bool {
        matches!(self, Sort::AbstractContext | Sort::InstanceContext)
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Closed integer interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    start: i64,
    end: i64,
}

impl Interval {
    pub fn new(start: i64, end: i64) -> Option<Self> {
        (start <= end).then_some(Interval { start, end })
    }

    pub fn start(self) -> i64 {
        self.start
    }

    pub fn end(self) -> i64 {
        self.end
    }

    /// `self ≺ other`: `self` is contained by `other`. Reflexive.
    pub fn is_within(self, other: Interval) -> bool {
        other.start <= self.start && self.end <= other.end
    }

    /// Largest interval contained by both, if they overlap.
    pub fn meet(self, other: Interval) -> Option<Interval> {
        Interval::new(self.start.max(other.start), self.end.min(other.end))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

/// A fact argument: a named entity or an interval literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Entity(Name),
    Interval(Interval),
}

impl Term {
    pub fn entity(name: &str) -> Self {
        Term::Entity(Name::from(name))
    }

    pub fn interval(start: i64, end: i64) -> Self {
        Term::Interval(Interval::new(start, end).expect("interval start must not exceed end"))
    }

    pub fn as_entity(&self) -> Option<&Name> {
        match self {
            Term::Entity(name) => Some(name),
            Term::Interval(_) => None,
        }
    }

    pub fn as_interval(&self) -> Option<Interval> {
        match self {
            Term::Interval(t) => Some(*t),
            Term::Entity(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Entity(name) => f.write_str(name),
            Term::Interval(t) => t.fmt(f),
        }
    }
}

/// Granularity of an intrinsic-information predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InfoLevel {
    /// `hasX_c(context, item)`
    Context,
    /// `hasX_r(role, item)`
    Role,
    /// `hasX_cor(role, role, item)`
    RolePair,
    /// `hasX_rc(role, context, item)`
    RoleInContext,
    /// `hasX_corc(role, role, context, item)`
    RolePairInContext,
    /// `hasX_p(player, role, instance, item, interval)`
    Player,
    /// `hasX_cop(player, player, role, role, instance, item, interval)`
    PlayerPair,
}

impl InfoLevel {
    pub const ALL: [InfoLevel; 7] = [
        InfoLevel::Context,
        InfoLevel::Role,
        InfoLevel::RolePair,
        InfoLevel::RoleInContext,
        InfoLevel::RolePairInContext,
        InfoLevel::Player,
        InfoLevel::PlayerPair,
    ];

    pub fn suffix(self) -> &'static str {
        match self {
            InfoLevel::Context => "c",
            InfoLevel::Role => "r",
            InfoLevel::RolePair => "cor",
            InfoLevel::RoleInContext => "rc",
            InfoLevel::RolePairInContext => "corc",
            InfoLevel::Player => "p",
            InfoLevel::PlayerPair => "cop",
        }
    }

    fn from_suffix(s: &str) -> Option<Self> {
        InfoLevel::ALL.into_iter().find(|l| l.suffix() == s)
    }
}

/// The predicate vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    InsC,
    HasR,
    HasCoR,
    Play,
    CoPlay,
    IsAC,
    IsAR,
    HasL,
    HasT,
    /// `containsL(l1, l2)`: location `l1` lies inside `l2`.
    ContainsL,
    Eic,
    Reic,
    Esc,
    Resc,
    Info(InfoKind, InfoLevel),
}

/// Admissible sorts for one argument position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    Abstract,
    Instance,
    /// Abstract or instance context; never inferable from position alone.
    AnyContext,
    Role,
    Player,
    Interval,
    Location,
    Item(InfoKind),
}

impl ArgKind {
    pub fn admits(self, sort: Sort) -> bool {
        match self {
            ArgKind::Abstract => sort == Sort::AbstractContext,
            ArgKind::Instance => sort == Sort::InstanceContext,
            ArgKind::AnyContext => sort.is_context(),
            ArgKind::Role => sort == Sort::Role,
            ArgKind::Player => sort == Sort::Player,
            ArgKind::Interval => sort == Sort::Interval,
            ArgKind::Location => sort == Sort::Location,
            ArgKind::Item(kind) => sort == Sort::Info(kind),
        }
    }

    /// The sort an undeclared entity in this position must have, if unique.
    pub fn inferred_sort(self) -> Option<Sort> {
        match self {
            ArgKind::Abstract => Some(Sort::AbstractContext),
            ArgKind::Instance => Some(Sort::InstanceContext),
            ArgKind::AnyContext => None,
            ArgKind::Role => Some(Sort::Role),
            ArgKind::Player => Some(Sort::Player),
            ArgKind::Interval => Some(Sort::Interval),
            ArgKind::Location => Some(Sort::Location),
            ArgKind::Item(kind) => Some(Sort::Info(kind)),
        }
    }
}

impl fmt::Display for ArgKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgKind::AnyContext => f.write_str("SC|IC"),
            other => f.write_str(other.inferred_sort().expect("unique sort").tag()),
        }
    }
}

impl Pred {
    /// Every predicate, in canonical order.
    pub fn all() -> Vec<Pred> {
        let mut preds = vec![
            Pred::InsC,
            Pred::HasR,
            Pred::HasCoR,
            Pred::Play,
            Pred::CoPlay,
            Pred::IsAC,
            Pred::IsAR,
            Pred::HasL,
            Pred::HasT,
            Pred::ContainsL,
            Pred::Eic,
            Pred::Reic,
            Pred::Esc,
            Pred::Resc,
        ];
        for kind in InfoKind::ALL {
            for level in InfoLevel::ALL {
                preds.push(Pred::Info(kind, level));
            }
        }
        preds
    }

    pub fn signature(self) -> Vec<ArgKind> {
        use ArgKind::*;
        match self {
            Pred::InsC => vec![Instance, Abstract],
            Pred::HasR => vec![AnyContext, Role],
            Pred::HasCoR => vec![AnyContext, Role, Role],
            Pred::Play => vec![Player, Role, Instance, Interval],
            Pred::CoPlay => vec![Player, Player, Role, Role, Instance, Interval],
            Pred::IsAC => vec![Abstract, Abstract],
            Pred::IsAR => vec![Role, Role],
            Pred::HasL => vec![Instance, Location],
            Pred::HasT => vec![Instance, Interval],
            Pred::ContainsL => vec![Location, Location],
            Pred::Eic => vec![Instance, Instance],
            Pred::Reic => vec![Instance, Role, Instance, Role],
            Pred::Esc => vec![Abstract, Abstract],
            Pred::Resc => vec![Abstract, Role, Abstract, Role],
            Pred::Info(kind, level) => match level {
                InfoLevel::Context => vec![AnyContext, Item(kind)],
                InfoLevel::Role => vec![Role, Item(kind)],
                InfoLevel::RolePair => vec![Role, Role, Item(kind)],
                InfoLevel::RoleInContext => vec![Role, AnyContext, Item(kind)],
                InfoLevel::RolePairInContext => vec![Role, Role, AnyContext, Item(kind)],
                InfoLevel::Player => vec![Player, Role, Instance, Item(kind), Interval],
                InfoLevel::PlayerPair => {
                    vec![Player, Player, Role, Role, Instance, Item(kind), Interval]
                }
            },
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Pred::InsC | Pred::HasR | Pred::IsAC | Pred::IsAR => 2,
            Pred::HasL | Pred::HasT | Pred::ContainsL | Pred::Eic | Pred::Esc => 2,
            Pred::HasCoR => 3,
            Pred::Play | Pred::Reic | Pred::Resc => 4,
            Pred::CoPlay => 6,
            Pred::Info(_, level) => match level {
                InfoLevel::Context | InfoLevel::Role => 2,
                InfoLevel::RolePair | InfoLevel::RoleInContext => 3,
                InfoLevel::RolePairInContext => 4,
                InfoLevel::Player => 5,
                InfoLevel::PlayerPair => 7,
            },
        }
    }

    /// Position of the interval argument for temporally closed predicates.
    pub fn enduring_interval_position(self) -> Option<usize> {
        match self {
            Pred::Play => Some(3),
            Pred::CoPlay => Some(5),
            _ => None,
        }
    }

    /// Axiom whose domain restriction governs this predicate's arguments.
    pub fn sort_axiom(self) -> &'static str {
        match self {
            Pred::InsC => "Ax1",
            Pred::HasR => "Ax2",
            Pred::HasCoR => "Ax3",
            Pred::Play => "Ax4",
            Pred::CoPlay => "Ax5",
            Pred::IsAC => "d1",
            Pred::IsAR => "d2",
            Pred::HasL => "Ax37",
            Pred::HasT => "Ax38",
            Pred::ContainsL => "LC",
            Pred::Eic => "d3",
            Pred::Reic => "d4",
            Pred::Esc => "d5",
            Pred::Resc => "d6",
            Pred::Info(_, level) => match level {
                InfoLevel::Context => "Ax16",
                InfoLevel::Role => "Ax17",
                InfoLevel::RolePair => "Ax18",
                InfoLevel::RoleInContext => "Ax19",
                InfoLevel::RolePairInContext => "Ax20",
                InfoLevel::Player => "Ax21",
                InfoLevel::PlayerPair => "Ax22",
            },
        }
    }

    pub fn name(self) -> String {
        let fixed = match self {
            Pred::InsC => "insC",
            Pred::HasR => "hasR",
            Pred::HasCoR => "hasCoR",
            Pred::Play => "play",
            Pred::CoPlay => "coPlay",
            Pred::IsAC => "isAC",
            Pred::IsAR => "isAR",
            Pred::HasL => "hasL",
            Pred::HasT => "hasT",
            Pred::ContainsL => "containsL",
            Pred::Eic => "EIC",
            Pred::Reic => "REIC",
            Pred::Esc => "ESC",
            Pred::Resc => "RESC",
            Pred::Info(kind, level) => return format!("has{}_{}", kind.letter(), level.suffix()),
        };
        fixed.to_string()
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Pred {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "insC" => Pred::InsC,
            "hasR" => Pred::HasR,
            "hasCoR" => Pred::HasCoR,
            "play" => Pred::Play,
            "coPlay" => Pred::CoPlay,
            "isAC" => Pred::IsAC,
            "isAR" => Pred::IsAR,
            "hasL" => Pred::HasL,
            "hasT" => Pred::HasT,
            "containsL" => Pred::ContainsL,
            "EIC" => Pred::Eic,
            "REIC" => Pred::Reic,
            "ESC" => Pred::Esc,
            "RESC" => Pred::Resc,
            other => {
                let rest = other.strip_prefix("has").ok_or(())?;
                let mut chars = rest.chars();
                let kind = chars.next().and_then(InfoKind::from_letter).ok_or(())?;
                let suffix = chars.as_str().strip_prefix('_').ok_or(())?;
                Pred::Info(kind, InfoLevel::from_suffix(suffix).ok_or(())?)
            }
        })
    }
}

/// One ground atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub pred: Pred,
    pub args: Vec<Term>,
}

impl Fact {
    pub fn new(pred: Pred, args: Vec<Term>) -> Result<Self, KbError> {
        if args.len() != pred.arity() {
            return Err(KbError::Arity { pred, expected: pred.arity(), found: args.len() });
        }
        Ok(Fact { pred, args })
    }

    /// Entity names mentioned by this fact.
    pub fn entities(&self) -> impl Iterator<Item = &Name> {
        self.args.iter().filter_map(Term::as_entity)
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.pred)?;
        for (i, arg) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            arg.fmt(f)?;
        }
        f.write_str(")")
    }
}

/// Source location of a statement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Span {
    pub source: Option<Arc<str>>,
    pub line: u32,
    pub col_start: u32,
    pub col_end: u32,
}

impl Span {
    pub fn new(line: u32, col_start: u32, col_end: u32) -> Self {
        Span { source: None, line, col_start, col_end }
    }

    pub fn with_source(mut self, source: Option<Arc<str>>) -> Self {
        self.source = source;
        self
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(src) = &self.source {
            write!(f, "{src}:")?;
        }
        write!(f, "{}:{}", self.line, self.col_start)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Asserted(Option<Span>),
    Derived { rule: Arc<str>, premises: Vec<FactId> },
}

impl Provenance {
    pub fn is_asserted(&self) -> bool {
        matches!(self, Provenance::Asserted(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    pub name: Name,
    pub sort: Sort,
    pub span: Option<Span>,
}

/// How assertions treat argument-sort breaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortMode {
    /// Reject undeclared entities and sort-violating facts.
    #[default]
    Strict,
    /// Auto-declare entities whose sort follows from their position and keep
    /// sort-violating facts for later reporting.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("empty entity name")]
    EmptyName,
    #[error("entity name `{0}` contains whitespace")]
    BadName(String),
    #[error("`{name}` is already declared as {existing}, cannot redeclare as {requested}")]
    SortConflict { name: Name, existing: Sort, requested: Sort, first: Option<Span> },
    #[error("{pred} expects {expected} arguments, found {found}")]
    Arity { pred: Pred, expected: usize, found: usize },
    #[error("undeclared entity `{0}`")]
    Undeclared(Name),
    #[error("cannot infer the sort of undeclared `{name}` at argument {} of {pred} (expects {expected})", .position + 1)]
    AmbiguousSort { name: Name, pred: Pred, position: usize, expected: ArgKind },
    #[error("{fact}: argument {} must be {expected} ({axiom})", .position + 1)]
    SortViolation { fact: Fact, position: usize, expected: ArgKind, axiom: &'static str },
}

/// A breach of a predicate's argument signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortBreach {
    /// Zero-based argument position.
    pub position: usize,
    pub expected: ArgKind,
}

/// Indexed fact set with provenance and an entity table.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    mode: SortMode,
    entities: BTreeMap<Name, Entity>,
    facts: Vec<Fact>,
    provenance: Vec<Provenance>,
    ids: HashMap<Fact, FactId>,
    by_pred: HashMap<Pred, Vec<FactId>>,
    by_arg: HashMap<(Pred, usize, Term), Vec<FactId>>,
}

impl KnowledgeBase {
    pub fn new(mode: SortMode) -> Self {
        KnowledgeBase { mode, ..Default::default() }
    }

    pub fn mode(&self) -> SortMode {
        self.mode
    }

    /// Declares `name` with `sort`. Idempotent for an identical sort.
    pub fn declare_entity(
        &mut self,
        name: &str,
        sort: Sort,
        span: Option<Span>,
    ) -> Result<&Entity, KbError> {
        if name.is_empty() {
            return Err(KbError::EmptyName);
        }
        if name.chars().any(char::is_whitespace) {
            return Err(KbError::BadName(name.to_string()));
        }
        if let Some(existing) = self.entities.get(name) {
            if existing.sort != sort {
                return Err(KbError::SortConflict {
                    name: existing.name.clone(),
                    existing: existing.sort,
                    requested: sort,
                    first: existing.span.clone(),
                });
            }
            return Ok(&self.entities[name]);
        }
        let name = Name::from(name);
        let entity = Entity { name: name.clone(), sort, span };
        Ok(self.entities.entry(name).or_insert(entity))
    }

    pub fn entity(&self, name: &str) -> Option<&Entity> {
        self.entities.get(name)
    }

    pub fn sort_of(&self, name: &str) -> Option<Sort> {
        self.entities.get(name).map(|e| e.sort)
    }

    pub fn has_sort(&self, term: &Term, sort: Sort) -> bool {
        match term {
            Term::Entity(name) => self.sort_of(name) == Some(sort),
            Term::Interval(_) => sort == Sort::Interval,
        }
    }

    /// Entities in name order.
    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.values()
    }

    pub fn entities_of(&self, sort: Sort) -> impl Iterator<Item = &Entity> {
        self.entities.values().filter(move |e| e.sort == sort)
    }

    /// Signature breaches of `fact` against the current entity table.
    /// Undeclared entities count as breaches.
    pub fn sort_breaches(&self, fact: &Fact) -> Vec<SortBreach> {
        fact.pred
            .signature()
            .into_iter()
            .zip(&fact.args)
            .enumerate()
            .filter(|(_, (kind, term))| {
                let sort = match term {
                    Term::Interval(_) => Some(Sort::Interval),
                    Term::Entity(name) => self.sort_of(name),
                };
                !sort.is_some_and(|s| kind.admits(s))
            })
            .map(|(position, (expected, _))| SortBreach { position, expected })
            .collect()
    }

    /// Adds `fact`; returns whether it was new. An existing fact keeps its
    /// original provenance.
    pub fn assert_fact(&mut self, fact: Fact, provenance: Provenance) -> Result<bool, KbError> {
        if fact.args.len() != fact.pred.arity() {
            return Err(KbError::Arity {
                pred: fact.pred,
                expected: fact.pred.arity(),
                found: fact.args.len(),
            });
        }
        let signature = fact.pred.signature();
        for (position, (kind, term)) in signature.iter().zip(&fact.args).enumerate() {
            let Term::Entity(name) = term else { continue };
            if self.entities.contains_key(name) {
                continue;
            }
            match (self.mode, kind.inferred_sort()) {
                (SortMode::Strict, _) => return Err(KbError::Undeclared(name.clone())),
                (SortMode::Lenient, Some(sort)) if sort != Sort::Interval => {
                    self.declare_entity(name, sort, None)?;
                }
                (SortMode::Lenient, _) => {
                    return Err(KbError::AmbiguousSort {
                        name: name.clone(),
                        pred: fact.pred,
                        position,
                        expected: *kind,
                    })
                }
            }
        }
        if self.mode == SortMode::Strict {
            if let Some(breach) = self.sort_breaches(&fact).into_iter().next() {
                return Err(KbError::SortViolation {
                    axiom: fact.pred.sort_axiom(),
                    fact,
                    position: breach.position,
                    expected: breach.expected,
                });
            }
        }
        Ok(self.insert(fact, provenance).1)
    }

    /// Inserts without any checks. Returns the fact id and whether it was new.
    pub(crate) fn insert(&mut self, fact: Fact, provenance: Provenance) -> (FactId, bool) {
        if let Some(&id) = self.ids.get(&fact) {
            return (id, false);
        }
        let id = self.facts.len();
        self.by_pred.entry(fact.pred).or_default().push(id);
        for (pos, term) in fact.args.iter().enumerate() {
            self.by_arg.entry((fact.pred, pos, term.clone())).or_default().push(id);
        }
        self.ids.insert(fact.clone(), id);
        self.facts.push(fact);
        self.provenance.push(provenance);
        (id, true)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.ids.contains_key(fact)
    }

    pub fn id_of(&self, fact: &Fact) -> Option<FactId> {
        self.ids.get(fact).copied()
    }

    pub fn fact(&self, id: FactId) -> &Fact {
        &self.facts[id]
    }

    pub fn provenance(&self, id: FactId) -> &Provenance {
        &self.provenance[id]
    }

    /// Facts in insertion order.
    pub fn facts(&self) -> impl Iterator<Item = (FactId, &Fact)> {
        self.facts.iter().enumerate()
    }

    pub fn asserted_facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter().zip(&self.provenance).filter(|(_, p)| p.is_asserted()).map(|(f, _)| f)
    }

    pub fn asserted_count(&self) -> usize {
        self.provenance.iter().filter(|p| p.is_asserted()).count()
    }

    /// Fact ids for `pred`, ascending.
    pub fn ids_of(&self, pred: Pred) -> &[FactId] {
        self.by_pred.get(&pred).map_or(&[], Vec::as_slice)
    }

    /// Fact ids for `pred` whose argument `position` equals `term`, ascending.
    pub fn lookup(&self, pred: Pred, position: usize, term: &Term) -> &[FactId] {
        self.by_arg.get(&(pred, position, term.clone())).map_or(&[], Vec::as_slice)
    }

    pub fn facts_of(&self, pred: Pred) -> impl Iterator<Item = &Fact> {
        self.ids_of(pred).iter().map(|&id| &self.facts[id])
    }

    /// Membership, except that `play`/`coPlay` also hold on every subinterval
    /// of a stored interval.
    pub fn holds(&self, fact: &Fact) -> bool {
        let Some(tpos) = fact.pred.enduring_interval_position() else {
            return self.contains(fact);
        };
        let Some(query) = fact.args.get(tpos).and_then(Term::as_interval) else {
            return self.contains(fact);
        };
        if fact.args.len() != fact.pred.arity() {
            return false;
        }
        self.lookup(fact.pred, 0, &fact.args[0]).iter().any(|&id| {
            let stored = &self.facts[id];
            stored.args.iter().zip(&fact.args).enumerate().all(|(i, (s, q))| {
                if i == tpos {
                    s.as_interval().is_some_and(|t| query.is_within(t))
                } else {
                    s == q
                }
            })
        })
    }

    /// `inner ⊆ outer` under the reflexive-transitive closure of `containsL`.
    pub fn location_contained(&self, inner: &str, outer: &str) -> bool {
        if inner == outer {
            return true;
        }
        let mut seen: HashSet<&str> = HashSet::from([inner]);
        let mut queue = VecDeque::from([inner]);
        while let Some(loc) = queue.pop_front() {
            for &id in self.lookup(Pred::ContainsL, 0, &Term::entity(loc)) {
                let Some(next) = self.facts[id].args[1].as_entity() else { continue };
                if &**next == outer {
                    return true;
                }
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(name: &str) -> Term {
        Term::entity(name)
    }

    fn iv(s: i64, t: i64) -> Interval {
        Interval::new(s, t).unwrap()
    }

    fn school_kb() -> KnowledgeBase {
        let mut kb = KnowledgeBase::new(SortMode::Strict);
        kb.declare_entity("Lucy", Sort::Player, None).unwrap();
        kb.declare_entity("Bob", Sort::Player, None).unwrap();
        kb.declare_entity("teacher", Sort::Role, None).unwrap();
        kb.declare_entity("student", Sort::Role, None).unwrap();
        kb.declare_entity("u", Sort::InstanceContext, None).unwrap();
        kb.declare_entity("s", Sort::InstanceContext, None).unwrap();
        kb
    }

    #[test]
    fn declare_is_idempotent_and_rejects_conflicts() {
        let mut kb = KnowledgeBase::new(SortMode::Strict);
        kb.declare_entity("School", Sort::AbstractContext, None).unwrap();
        kb.declare_entity("School", Sort::AbstractContext, None).unwrap();
        assert_eq!(kb.entities().count(), 1);

        kb.declare_entity("Lucy", Sort::Player, None).unwrap();
        let err = kb.declare_entity("Lucy", Sort::Role, None).unwrap_err();
        assert!(matches!(err, KbError::SortConflict { existing: Sort::Player, requested: Sort::Role, .. }));

        let treating = kb.declare_entity("treating", Sort::Info(InfoKind::Event), None).unwrap();
        assert_eq!(treating.sort, Sort::Info(InfoKind::Event));
        assert_eq!(kb.declare_entity("", Sort::Role, None).unwrap_err(), KbError::EmptyName);
        assert!(matches!(kb.declare_entity("a b", Sort::Role, None), Err(KbError::BadName(_))));
    }

    #[test]
    fn interval_containment_examples() {
        assert!(iv(3, 9).is_within(iv(0, 10)));
        assert!(iv(0, 10).is_within(iv(0, 10)));
        assert!(!iv(0, 11).is_within(iv(0, 10)));
        assert!(Interval::new(4, 3).is_none());
    }

    #[test]
    fn interval_meet_examples() {
        assert_eq!(iv(0, 5).meet(iv(3, 9)), Some(iv(3, 5)));
        assert_eq!(iv(0, 2).meet(iv(3, 9)), None);
        assert_eq!(iv(2, 7).meet(iv(2, 7)), Some(iv(2, 7)));
    }

    #[test]
    fn assert_has_set_semantics() {
        let mut kb = school_kb();
        let fact =
            Fact::new(Pred::Play, vec![e("Lucy"), e("teacher"), e("u"), Term::interval(0, 9)]).unwrap();
        assert!(kb.assert_fact(fact.clone(), Provenance::Asserted(None)).unwrap());
        assert!(!kb.assert_fact(fact, Provenance::Asserted(None)).unwrap());
        assert_eq!(kb.len(), 1);
    }

    #[test]
    fn has_role_sorts() {
        let mut kb = school_kb();
        let ok = Fact::new(Pred::HasR, vec![e("u"), e("teacher")]).unwrap();
        assert!(kb.assert_fact(ok, Provenance::Asserted(None)).unwrap());
        let bad = Fact::new(Pred::HasR, vec![e("Lucy"), e("teacher")]).unwrap();
        let err = kb.assert_fact(bad, Provenance::Asserted(None)).unwrap_err();
        assert!(matches!(err, KbError::SortViolation { position: 0, axiom: "Ax2", .. }));
    }

    #[test]
    fn strict_rejects_undeclared_lenient_infers() {
        let mut strict = KnowledgeBase::new(SortMode::Strict);
        let fact = Fact::new(Pred::IsAR, vec![e("teacher"), e("staff")]).unwrap();
        assert!(matches!(
            strict.assert_fact(fact.clone(), Provenance::Asserted(None)),
            Err(KbError::Undeclared(_))
        ));

        let mut lenient = KnowledgeBase::new(SortMode::Lenient);
        assert!(lenient.assert_fact(fact, Provenance::Asserted(None)).unwrap());
        assert_eq!(lenient.sort_of("staff"), Some(Sort::Role));

        // The first argument of hasR may be either kind of context.
        let ambiguous = Fact::new(Pred::HasR, vec![e("u"), e("teacher")]).unwrap();
        assert!(matches!(
            lenient.assert_fact(ambiguous, Provenance::Asserted(None)),
            Err(KbError::AmbiguousSort { position: 0, .. })
        ));
    }

    #[test]
    fn lenient_keeps_sort_violations() {
        let mut kb = KnowledgeBase::new(SortMode::Lenient);
        kb.declare_entity("Lucy", Sort::Player, None).unwrap();
        kb.declare_entity("teacher", Sort::Role, None).unwrap();
        let bad = Fact::new(Pred::HasR, vec![e("Lucy"), e("teacher")]).unwrap();
        assert!(kb.assert_fact(bad.clone(), Provenance::Asserted(None)).unwrap());
        assert_eq!(kb.sort_breaches(&bad), vec![SortBreach { position: 0, expected: ArgKind::AnyContext }]);
    }

    #[test]
    fn interval_in_entity_position_is_a_breach() {
        let mut kb = school_kb();
        let bad = Fact::new(Pred::HasR, vec![Term::interval(0, 1), e("teacher")]).unwrap();
        assert!(matches!(
            kb.assert_fact(bad, Provenance::Asserted(None)),
            Err(KbError::SortViolation { position: 0, .. })
        ));
    }

    #[test]
    fn holds_closes_play_downward_in_time() {
        let mut kb = school_kb();
        let play = |t: Term| Fact::new(Pred::Play, vec![e("Bob"), e("student"), e("s"), t]).unwrap();
        kb.assert_fact(play(Term::interval(1, 8)), Provenance::Asserted(None)).unwrap();
        assert!(kb.holds(&play(Term::interval(4, 5))));
        assert!(kb.holds(&play(Term::interval(1, 8))));
        assert!(!kb.holds(&play(Term::interval(0, 3))));
        assert!(!kb.holds(&Fact::new(Pred::Play, vec![e("Lucy"), e("student"), e("s"), Term::interval(4, 5)]).unwrap()));
        // Non-enduring predicates are plain membership.
        assert!(!kb.holds(&Fact::new(Pred::HasR, vec![e("s"), e("student")]).unwrap()));
    }

    #[test]
    fn location_containment_is_reflexive_transitive() {
        let mut kb = KnowledgeBase::new(SortMode::Strict);
        for l in ["room1", "building", "campus", "city"] {
            kb.declare_entity(l, Sort::Location, None).unwrap();
        }
        let within = |a: &str, b: &str| Fact::new(Pred::ContainsL, vec![e(a), e(b)]).unwrap();
        kb.assert_fact(within("room1", "building"), Provenance::Asserted(None)).unwrap();
        kb.assert_fact(within("building", "campus"), Provenance::Asserted(None)).unwrap();
        assert!(kb.location_contained("room1", "building"));
        assert!(kb.location_contained("room1", "campus"));
        assert!(kb.location_contained("city", "city"));
        assert!(!kb.location_contained("campus", "room1"));
        assert!(!kb.location_contained("room1", "city"));
    }

    #[test]
    fn predicate_names_round_trip() {
        for pred in Pred::all() {
            assert_eq!(pred.name().parse::<Pred>(), Ok(pred));
            assert_eq!(pred.signature().len(), pred.arity());
        }
        assert_eq!(Pred::all().len(), 14 + 28);
        assert!("hasX_rc".parse::<Pred>().is_err());
        assert!("hasE_q".parse::<Pred>().is_err());
    }
}
