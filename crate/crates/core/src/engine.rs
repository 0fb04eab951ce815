//! Semi-naive saturation, pattern queries, derivation trees and harvest
//! reports.
//!
//! Saturation proceeds in rounds. In each round a rule is matched once per
//! fact premise, with that premise restricted to the facts added in the
//! previous round (the delta), earlier premises restricted to older facts and
//! later premises free over everything known at the start of the round. Each
//! combination of premise facts is therefore enumerated in exactly one round.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::model::{Fact, FactId, InfoKind, InfoLevel, KnowledgeBase, Pred, Provenance, Span, Term};
use crate::rules::{self, instantiate, unify, Atom, Premise, Rule};

pub const DEFAULT_FACT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("fact cap of {cap} exceeded during saturation")]
    ResourceLimit { cap: usize },
    #[error("{0} is not in the knowledge base")]
    NotPresent(Fact),
    #[error("unknown harvest target `{0}`")]
    UnknownTarget(String),
    #[error("harvest level `{level}` takes {expected} target name(s), got {found}")]
    TargetArity { level: HarvestLevel, expected: usize, found: usize },
    #[error("variable ?{var} in the interval position of {pred} cannot be enumerated in virtual mode")]
    UnboundIntervalVariable { pred: Pred, var: String },
}

#[derive(Debug, Clone)]
pub struct SaturationOptions {
    pub fact_cap: usize,
    /// Rule ids to skip. A bare base id such as `D24` also disables its
    /// per-kind instantiations `D24.E` ... `D24.D`.
    pub disabled: BTreeSet<String>,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions { fact_cap: DEFAULT_FACT_CAP, disabled: BTreeSet::new() }
    }
}

impl SaturationOptions {
    pub fn without(mut self, rule_id: &str) -> Self {
        self.disabled.insert(rule_id.to_string());
        self
    }

    fn enabled(&self, rule: &Rule) -> bool {
        let base = rule.id.split('.').next().unwrap_or(&rule.id);
        !self.disabled.contains(&*rule.id) && !self.disabled.contains(base)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationStats {
    pub rounds: usize,
    pub facts_asserted: usize,
    pub facts_derived: usize,
    /// Facts first derived by each enabled rule.
    pub rule_fire_counts: BTreeMap<String, usize>,
}

type Binding = Vec<Option<Term>>;

struct Matcher<'a> {
    kb: &'a KnowledgeBase,
    rule: &'a Rule,
    atoms: Vec<&'a Atom>,
    delta: usize,
    old_end: FactId,
    limit: FactId,
}

impl Matcher<'_> {
    fn id_range(&self, atom_index: usize) -> (FactId, FactId) {
        use std::cmp::Ordering::*;
        match atom_index.cmp(&self.delta) {
            Less => (0, self.old_end),
            Equal => (self.old_end, self.limit),
            Greater => (0, self.limit),
        }
    }

    fn candidates(&self, atom: &Atom, binding: &Binding, (lo, hi): (FactId, FactId)) -> &[FactId] {
        let mut best = self.kb.ids_of(atom.pred);
        for (pos, &var) in atom.args.iter().enumerate() {
            if let Some(term) = &binding[var] {
                let ids = self.kb.lookup(atom.pred, pos, term);
                if ids.len() < best.len() {
                    best = ids;
                }
            }
        }
        let start = best.partition_point(|&id| id < lo);
        let end = best.partition_point(|&id| id < hi);
        &best[start..end.max(start)]
    }

    /// Sort guards and conditions whose variables are all bound.
    fn guards_hold(&self, binding: &Binding) -> bool {
        let sorts_ok = self.rule.premises.iter().all(|p| match p {
            Premise::Sort(var, sort) => binding[*var].as_ref().is_none_or(|t| self.kb.has_sort(t, *sort)),
            Premise::Fact(_) => true,
        });
        sorts_ok
            && self.rule.conditions.iter().all(|c| {
                let (a, b) = match *c {
                    rules::Condition::Within(a, b)
                    | rules::Condition::Overlap(a, b)
                    | rules::Condition::LocatedIn(a, b) => (a, b),
                };
                match (&binding[a], &binding[b]) {
                    (Some(x), Some(y)) => c.holds(self.kb, x, y),
                    _ => true,
                }
            })
    }

    fn run(&self, out: &mut Vec<(Vec<FactId>, Fact)>) {
        let mut order: Vec<usize> = vec![self.delta];
        order.extend((0..self.atoms.len()).filter(|&i| i != self.delta));
        let mut chosen = vec![0; self.atoms.len()];
        self.search(&order, 0, vec![None; self.rule.vars.len()], &mut chosen, out);
    }

    fn search(
        &self,
        order: &[usize],
        step: usize,
        binding: Binding,
        chosen: &mut Vec<FactId>,
        out: &mut Vec<(Vec<FactId>, Fact)>,
    ) {
        let Some(&ai) = order.get(step) else {
            self.finish(binding, chosen, out);
            return;
        };
        let atom = self.atoms[ai];
        for &id in self.candidates(atom, &binding, self.id_range(ai)) {
            let mut next = binding.clone();
            if unify(atom, self.kb.fact(id), &mut next) && self.guards_hold(&next) {
                chosen[ai] = id;
                self.search(order, step + 1, next, chosen, out);
            }
        }
    }

    /// Enumerates entities for sort guards left unbound by fact premises,
    /// then emits the conclusions.
    fn finish(&self, binding: Binding, chosen: &[FactId], out: &mut Vec<(Vec<FactId>, Fact)>) {
        let unbound = self.rule.premises.iter().find_map(|p| match p {
            Premise::Sort(var, sort) if binding[*var].is_none() => Some((*var, *sort)),
            _ => None,
        });
        if let Some((var, sort)) = unbound {
            for entity in self.kb.entities_of(sort) {
                let mut next = binding.clone();
                next[var] = Some(Term::Entity(entity.name.clone()));
                if self.guards_hold(&next) {
                    self.finish(next, chosen, out);
                }
            }
            return;
        }
        for atom in &self.rule.conclusions {
            if let Some(fact) = instantiate(atom, &binding) {
                out.push((chosen.to_vec(), fact));
            }
        }
    }
}

fn derivations(kb: &KnowledgeBase, rule: &Rule, old_end: FactId, limit: FactId, first_round: bool) -> Vec<(Vec<FactId>, Fact)> {
    let atoms: Vec<&Atom> = rule.fact_premises().collect();
    let mut out = Vec::new();
    if atoms.is_empty() {
        if first_round {
            let m = Matcher { kb, rule, atoms, delta: 0, old_end, limit };
            m.finish(vec![None; rule.vars.len()], &[], &mut out);
        }
        return out;
    }
    for delta in 0..atoms.len() {
        let m = Matcher { kb, rule, atoms: atoms.clone(), delta, old_end, limit };
        m.run(&mut out);
    }
    out
}

/// Computes the least fixpoint of the enabled catalog rules over `kb`.
pub fn saturate(kb: &mut KnowledgeBase, options: &SaturationOptions) -> Result<SaturationStats, EngineError> {
    let catalog: Vec<&Rule> = rules::catalog().iter().filter(|r| options.enabled(r)).collect();
    let mut fire_counts: BTreeMap<String, usize> = catalog.iter().map(|r| (r.id.to_string(), 0)).collect();
    if kb.len() > options.fact_cap {
        return Err(EngineError::ResourceLimit { cap: options.fact_cap });
    }
    let mut old_end = 0;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let limit = kb.len();
        for rule in &catalog {
            let found = derivations(kb, rule, old_end, limit, rounds == 1);
            for (premises, fact) in found {
                let provenance = Provenance::Derived { rule: rule.id.clone(), premises };
                if kb.insert(fact, provenance).1 {
                    *fire_counts.get_mut(&*rule.id).expect("enabled rule") += 1;
                    if kb.len() > options.fact_cap {
                        return Err(EngineError::ResourceLimit { cap: options.fact_cap });
                    }
                }
            }
        }
        if kb.len() == limit {
            break;
        }
        old_end = limit;
    }
    let facts_asserted = kb.asserted_count();
    Ok(SaturationStats {
        rounds,
        facts_asserted,
        facts_derived: kb.len() - facts_asserted,
        rule_fire_counts: fire_counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternArg {
    Term(Term),
    Var(String),
}

impl fmt::Display for PatternArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternArg::Term(t) => t.fmt(f),
            PatternArg::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPattern {
    pub pred: Pred,
    pub args: Vec<PatternArg>,
}

impl fmt::Display for QueryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.pred, args.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueryMode {
    /// Match stored facts only.
    #[default]
    Stored,
    /// Also answer `play`/`coPlay` on subintervals of stored intervals.
    Virtual,
}

/// Variable name to value, ordered by variable name.
pub type Answer = BTreeMap<String, Term>;

fn match_pattern(pattern: &QueryPattern, fact: &Fact, interval_pos: Option<usize>) -> Option<Answer> {
    let mut answer = Answer::new();
    for (i, (p, t)) in pattern.args.iter().zip(&fact.args).enumerate() {
        match p {
            PatternArg::Term(Term::Interval(q)) if Some(i) == interval_pos => {
                if !t.as_interval().is_some_and(|stored| q.is_within(stored)) {
                    return None;
                }
            }
            PatternArg::Term(expected) => {
                if expected != t {
                    return None;
                }
            }
            PatternArg::Var(v) => match answer.get(v) {
                Some(bound) if bound != t => return None,
                Some(_) => {}
                None => {
                    answer.insert(v.clone(), t.clone());
                }
            },
        }
    }
    Some(answer)
}

/// All answers to `pattern`, sorted and without duplicates.
pub fn query(kb: &KnowledgeBase, pattern: &QueryPattern, mode: QueryMode) -> Result<Vec<Answer>, EngineError> {
    if pattern.args.len() != pattern.pred.arity() {
        return Ok(Vec::new());
    }
    let interval_pos = match mode {
        QueryMode::Stored => None,
        QueryMode::Virtual => pattern.pred.enduring_interval_position(),
    };
    if let Some(pos) = interval_pos {
        if let PatternArg::Var(var) = &pattern.args[pos] {
            return Err(EngineError::UnboundIntervalVariable { pred: pattern.pred, var: var.clone() });
        }
    }
    let mut candidates = kb.ids_of(pattern.pred);
    for (pos, arg) in pattern.args.iter().enumerate() {
        if Some(pos) == interval_pos {
            continue;
        }
        if let PatternArg::Term(term) = arg {
            let ids = kb.lookup(pattern.pred, pos, term);
            if ids.len() < candidates.len() {
                candidates = ids;
            }
        }
    }
    let answers: BTreeSet<Answer> =
        candidates.iter().filter_map(|&id| match_pattern(pattern, kb.fact(id), interval_pos)).collect();
    Ok(answers.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationNode {
    Asserted(Option<Span>),
    Derived { rule: Arc<str>, children: Vec<DerivationTree> },
}

/// First-derivation proof of a fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTree {
    pub fact: Fact,
    pub node: DerivationNode,
}

impl DerivationTree {
    /// Asserted facts at the leaves, in left-to-right order.
    pub fn leaves(&self) -> Vec<&Fact> {
        match &self.node {
            DerivationNode::Asserted(_) => vec![&self.fact],
            DerivationNode::Derived { children, .. } => children.iter().flat_map(DerivationTree::leaves).collect(),
        }
    }

    /// Every fact in the tree, parents before children.
    pub fn facts(&self) -> Vec<&Fact> {
        let mut out = vec![&self.fact];
        if let DerivationNode::Derived { children, .. } = &self.node {
            for child in children {
                out.extend(child.facts());
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        match &self.node {
            DerivationNode::Asserted(_) => 1,
            DerivationNode::Derived { children, .. } => 1 + children.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        match &self.node {
            DerivationNode::Asserted(Some(span)) => out.push_str(&format!("{}  [asserted at {span}]\n", self.fact)),
            DerivationNode::Asserted(None) => out.push_str(&format!("{}  [asserted]\n", self.fact)),
            DerivationNode::Derived { rule, children } => {
                out.push_str(&format!("{}  [{rule}]\n", self.fact));
                for child in children {
                    child.render_into(indent + 1, out);
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.node {
            DerivationNode::Asserted(span) => json!({
                "fact": self.fact.to_string(),
                "asserted": span.as_ref().map(ToString::to_string),
            }),
            DerivationNode::Derived { rule, children } => json!({
                "fact": self.fact.to_string(),
                "rule": rule.to_string(),
                "premises": children.iter().map(DerivationTree::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

fn tree_for(kb: &KnowledgeBase, id: FactId) -> DerivationTree {
    let fact = kb.fact(id).clone();
    let node = match kb.provenance(id) {
        Provenance::Asserted(span) => DerivationNode::Asserted(span.clone()),
        Provenance::Derived { rule, premises } => DerivationNode::Derived {
            rule: rule.clone(),
            children: premises.iter().map(|&p| tree_for(kb, p)).collect(),
        },
    };
    DerivationTree { fact, node }
}

/// The first-derivation tree of a stored fact.
pub fn explain(kb: &KnowledgeBase, fact: &Fact) -> Result<DerivationTree, EngineError> {
    let id = kb.id_of(fact).ok_or_else(|| EngineError::NotPresent(fact.clone()))?;
    Ok(tree_for(kb, id))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HarvestLevel {
    /// `(role, context)`
    Rc,
    /// `(role, role, context)`
    Corc,
    /// `(role)`
    Role,
    /// `(role, role)`
    Cor,
    /// `(context)`
    Context,
}

impl HarvestLevel {
    pub fn keyword(self) -> &'static str {
        match self {
            HarvestLevel::Rc => "rc",
            HarvestLevel::Corc => "corc",
            HarvestLevel::Role => "role",
            HarvestLevel::Cor => "cor",
            HarvestLevel::Context => "context",
        }
    }

    fn info_level(self) -> InfoLevel {
        match self {
            HarvestLevel::Rc => InfoLevel::RoleInContext,
            HarvestLevel::Corc => InfoLevel::RolePairInContext,
            HarvestLevel::Role => InfoLevel::Role,
            HarvestLevel::Cor => InfoLevel::RolePair,
            HarvestLevel::Context => InfoLevel::Context,
        }
    }

    /// Number of target names, which fill every position except the item.
    pub fn target_arity(self) -> usize {
        Pred::Info(InfoKind::Event, self.info_level()).arity() - 1
    }
}

impl fmt::Display for HarvestLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for HarvestLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [HarvestLevel::Rc, HarvestLevel::Corc, HarvestLevel::Role, HarvestLevel::Cor, HarvestLevel::Context]
            .into_iter()
            .find(|l| l.keyword() == s)
            .ok_or_else(|| format!("unknown harvest level `{s}` (expected rc, corc, role, cor or context)"))
    }
}

/// Intrinsic information recorded for one target at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarvestReport {
    pub target: Vec<String>,
    pub level: String,
    pub events: Vec<String>,
    pub norms: Vec<String>,
    pub goals: Vec<String>,
    pub desires: Vec<String>,
    /// Item name to the `player@context` pairs it was lifted from, or to the
    /// asserted facts it rests on when no player-level fact is involved.
    pub witnesses: BTreeMap<String, Vec<String>>,
}

impl HarvestReport {
    pub fn is_empty(&self) -> bool {
        self.events.is_empty() && self.norms.is_empty() && self.goals.is_empty() && self.desires.is_empty()
    }

    pub fn items(&self, kind: InfoKind) -> &[String] {
        match kind {
            InfoKind::Event => &self.events,
            InfoKind::Norm => &self.norms,
            InfoKind::Goal => &self.goals,
            InfoKind::Desire => &self.desires,
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} ({})\n", self.target.join(", "), self.level);
        for kind in InfoKind::ALL {
            let items = self.items(kind);
            let rendered: Vec<String> = items
                .iter()
                .map(|item| match self.witnesses.get(item) {
                    Some(w) if !w.is_empty() => format!("{item} <- {}", w.join(", ")),
                    _ => item.clone(),
                })
                .collect();
            out.push_str(&format!("  {}s: {}\n", kind.keyword(), if rendered.is_empty() { "-".into() } else { rendered.join("; ") }));
        }
        out
    }
}

fn witnesses_of(tree: &DerivationTree) -> Vec<String> {
    let mut players = BTreeSet::new();
    let mut leaves = BTreeSet::new();
    for fact in tree.facts() {
        match fact.pred {
            Pred::Info(_, InfoLevel::Player) => {
                players.insert(format!("{}@{}", fact.args[0], fact.args[2]));
            }
            Pred::Info(_, InfoLevel::PlayerPair) => {
                players.insert(format!("{}@{}", fact.args[0], fact.args[4]));
            }
            _ => {}
        }
    }
    if players.is_empty() {
        for fact in tree.leaves() {
            if matches!(fact.pred, Pred::Info(..)) {
                leaves.insert(fact.to_string());
            }
        }
        return leaves.into_iter().collect();
    }
    players.into_iter().collect()
}

/// Groups the stored information items for `target` at `level` by kind.
pub fn harvest(kb: &KnowledgeBase, level: HarvestLevel, target: &[&str]) -> Result<HarvestReport, EngineError> {
    if target.len() != level.target_arity() {
        return Err(EngineError::TargetArity { level, expected: level.target_arity(), found: target.len() });
    }
    if let Some(unknown) = target.iter().find(|name| kb.entity(name).is_none()) {
        return Err(EngineError::UnknownTarget(unknown.to_string()));
    }
    let mut report = HarvestReport {
        target: target.iter().map(|s| s.to_string()).collect(),
        level: level.keyword().to_string(),
        events: Vec::new(),
        norms: Vec::new(),
        goals: Vec::new(),
        desires: Vec::new(),
        witnesses: BTreeMap::new(),
    };
    for kind in InfoKind::ALL {
        let pred = Pred::Info(kind, level.info_level());
        let mut args: Vec<PatternArg> = target.iter().map(|n| PatternArg::Term(Term::entity(n))).collect();
        args.push(PatternArg::Var("x".into()));
        let answers = query(kb, &QueryPattern { pred, args }, QueryMode::Stored)?;
        let mut items = Vec::new();
        for answer in answers {
            let item = answer["x"].clone();
            let mut fact_args: Vec<Term> = target.iter().map(|n| Term::entity(n)).collect();
            fact_args.push(item.clone());
            let tree = explain(kb, &Fact { pred, args: fact_args })?;
            report.witnesses.insert(item.to_string(), witnesses_of(&tree));
            items.push(item.to_string());
        }
        match kind {
            InfoKind::Event => report.events = items,
            InfoKind::Norm => report.norms = items,
            InfoKind::Goal => report.goals = items,
            InfoKind::Desire => report.desires = items,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Sort, SortMode};

    fn e(name: &str) -> Term {
        Term::entity(name)
    }

    fn fact(pred: Pred, args: Vec<Term>) -> Fact {
        Fact::new(pred, args).unwrap()
    }

    #[test]
    fn empty_kb_takes_one_round() {
        let mut kb = KnowledgeBase::new(SortMode::Strict);
        let stats = saturate(&mut kb, &SaturationOptions::default()).unwrap();
        assert_eq!((stats.rounds, stats.facts_asserted, stats.facts_derived), (1, 0, 0));
    }

    #[test]
    fn sub_role_chain_reaches_fixpoint() {
        let mut kb = KnowledgeBase::new(SortMode::Lenient);
        for (a, b) in [("a", "b"), ("b", "c"), ("c", "d")] {
            kb.assert_fact(fact(Pred::IsAR, vec![e(a), e(b)]), Provenance::Asserted(None)).unwrap();
        }
        let stats = saturate(&mut kb, &SaturationOptions::default()).unwrap();
        // 4 reflexive + 3 asserted + 3 transitive pairs.
        assert_eq!(kb.facts_of(Pred::IsAR).count(), 10);
        assert_eq!(stats.facts_derived, 7);
        assert_eq!(stats.rule_fire_counts["D10"], 3);
        assert_eq!(stats.rule_fire_counts["D43b"], 4);
    }

    #[test]
    fn fact_cap_is_enforced() {
        let mut kb = KnowledgeBase::new(SortMode::Lenient);
        kb.assert_fact(fact(Pred::IsAR, vec![e("a"), e("b")]), Provenance::Asserted(None)).unwrap();
        let options = SaturationOptions { fact_cap: 2, ..Default::default() };
        assert_eq!(saturate(&mut kb, &options), Err(EngineError::ResourceLimit { cap: 2 }));
    }

    #[test]
    fn disabling_a_base_id_disables_every_kind() {
        let options = SaturationOptions::default().without("D24");
        assert!(!options.enabled(rules::rule_by_id("D24.G").unwrap()));
        assert!(options.enabled(rules::rule_by_id("D25.G").unwrap()));
    }

    #[test]
    fn virtual_query_rejects_interval_variables() {
        let kb = KnowledgeBase::new(SortMode::Strict);
        let pattern = crate::parser::parse_query("play(Lucy, ?r, u, ?t)").unwrap();
        assert!(query(&kb, &pattern, QueryMode::Stored).unwrap().is_empty());
        assert!(matches!(
            query(&kb, &pattern, QueryMode::Virtual),
            Err(EngineError::UnboundIntervalVariable { .. })
        ));
    }

    #[test]
    fn repeated_variables_must_agree() {
        let mut kb = KnowledgeBase::new(SortMode::Lenient);
        kb.assert_fact(fact(Pred::IsAR, vec![e("a"), e("b")]), Provenance::Asserted(None)).unwrap();
        kb.assert_fact(fact(Pred::IsAR, vec![e("a"), e("a")]), Provenance::Asserted(None)).unwrap();
        let pattern = crate::parser::parse_query("isAR(?x, ?x)").unwrap();
        let answers = query(&kb, &pattern, QueryMode::Stored).unwrap();
        assert_eq!(answers.len(), 1);
        assert_eq!(answers[0]["x"], e("a"));
    }

    #[test]
    fn harvest_checks_target_shape() {
        let mut kb = KnowledgeBase::new(SortMode::Strict);
        kb.declare_entity("doctor", Sort::Role, None).unwrap();
        assert!(matches!(harvest(&kb, HarvestLevel::Rc, &["doctor"]), Err(EngineError::TargetArity { .. })));
        assert_eq!(harvest(&kb, HarvestLevel::Role, &["nurse"]), Err(EngineError::UnknownTarget("nurse".into())));
        let report = harvest(&kb, HarvestLevel::Role, &["doctor"]).unwrap();
        assert!(report.is_empty());
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"target":["doctor"],"level":"role","events":[],"norms":[],"goals":[],"desires":[],"witnesses":{}}"#
        );
    }

    #[test]
    fn harvest_levels_parse() {
        for word in ["rc", "corc", "role", "cor", "context"] {
            assert_eq!(word.parse::<HarvestLevel>().unwrap().keyword(), word);
        }
        assert!("player".parse::<HarvestLevel>().is_err());
        assert_eq!(HarvestLevel::Corc.target_arity(), 3);
    }
}
