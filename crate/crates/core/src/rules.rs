//! The static rule catalog and the closed-world obligation specs.
//!
//! Every biconditional axiom is split in two: the direction that only
//! rearranges existing constants becomes a [`Rule`]; the direction that would
//! need a fresh witness becomes an [`ObligationSpec`], checked over the
//! saturated knowledge base and never used to invent facts.
//!
//! Rules are positive and range-restricted, and none of them builds a new
//! interval, so saturation terminates on any finite input.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::model::{Fact, InfoKind, InfoLevel, KnowledgeBase, Pred, Sort, Term};

pub type Var = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub pred: Pred,
    pub args: Vec<Var>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    Fact(Atom),
    /// The variable is a declared entity of this sort. Enumerates the entity
    /// table when the variable is not yet bound.
    Sort(Var, Sort),
}

/// Checks evaluated during matching; never stored as facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// First interval is contained by the second.
    Within(Var, Var),
    /// The intervals share a non-empty subinterval.
    Overlap(Var, Var),
    /// First location lies inside the second (reflexive, transitive).
    LocatedIn(Var, Var),
}

impl Condition {
    fn vars(self) -> [Var; 2] {
        match self {
            Condition::Within(a, b) | Condition::Overlap(a, b) | Condition::LocatedIn(a, b) => [a, b],
        }
    }

    /// Evaluates the condition on bound terms. Ill-sorted terms fail.
    pub fn holds(self, kb: &KnowledgeBase, a: &Term, b: &Term) -> bool {
        match self {
            Condition::Within(..) => match (a.as_interval(), b.as_interval()) {
                (Some(a), Some(b)) => a.is_within(b),
                _ => false,
            },
            Condition::Overlap(..) => match (a.as_interval(), b.as_interval()) {
                (Some(a), Some(b)) => a.meet(b).is_some(),
                _ => false,
            },
            Condition::LocatedIn(..) => match (a.as_entity(), b.as_entity()) {
                (Some(a), Some(b)) => kb.location_contained(a, b),
                _ => false,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub id: Arc<str>,
    pub axiom_ref: &'static str,
    pub vars: Vec<String>,
    pub premises: Vec<Premise>,
    pub conditions: Vec<Condition>,
    pub conclusions: Vec<Atom>,
}

impl Rule {
    pub fn fact_premises(&self) -> impl Iterator<Item = &Atom> {
        self.premises.iter().filter_map(|p| match p {
            Premise::Fact(atom) => Some(atom),
            Premise::Sort(..) => None,
        })
    }

    /// Every conclusion and condition variable occurs in some premise.
    pub fn is_range_restricted(&self) -> bool {
        let bound = |v: Var| {
            self.premises.iter().any(|p| match p {
                Premise::Fact(atom) => atom.args.contains(&v),
                Premise::Sort(var, _) => *var == v,
            })
        };
        self.conclusions.iter().flat_map(|a| &a.args).all(|&v| bound(v))
            && self.conditions.iter().flat_map(|c| c.vars()).all(bound)
    }

    /// Replays the rule on concrete premise facts, given in the order of
    /// [`Rule::fact_premises`]. Returns the conclusions when every premise
    /// unifies and every guard holds.
    pub fn apply(&self, kb: &KnowledgeBase, facts: &[&Fact]) -> Option<Vec<Fact>> {
        let atoms: Vec<&Atom> = self.fact_premises().collect();
        if atoms.len() != facts.len() {
            return None;
        }
        let mut binding: Vec<Option<Term>> = vec![None; self.vars.len()];
        for (atom, fact) in atoms.iter().zip(facts) {
            if !unify(atom, fact, &mut binding) {
                return None;
            }
        }
        let mut out = Vec::new();
        self.close_guards(kb, binding, &mut out);
        (!out.is_empty()).then_some(out)
    }

    /// Binds sort-guarded variables no premise mentions by enumerating the
    /// entity table, then checks guards and instantiates the conclusions.
    fn close_guards(&self, kb: &KnowledgeBase, binding: Vec<Option<Term>>, out: &mut Vec<Fact>) {
        let unbound = self.premises.iter().find_map(|p| match p {
            Premise::Sort(var, sort) if binding[*var].is_none() => Some((*var, *sort)),
            _ => None,
        });
        if let Some((var, sort)) = unbound {
            for entity in kb.entities_of(sort) {
                let mut next = binding.clone();
                next[var] = Some(Term::Entity(entity.name.clone()));
                self.close_guards(kb, next, out);
            }
            return;
        }
        for premise in &self.premises {
            if let Premise::Sort(var, sort) = premise {
                if !binding[*var].as_ref().is_some_and(|t| kb.has_sort(t, *sort)) {
                    return;
                }
            }
        }
        for cond in &self.conditions {
            let [a, b] = cond.vars();
            match (&binding[a], &binding[b]) {
                (Some(x), Some(y)) if cond.holds(kb, x, y) => {}
                _ => return,
            }
        }
        out.extend(self.conclusions.iter().filter_map(|atom| instantiate(atom, &binding)));
    }

    fn render_atom(&self, atom: &Atom) -> String {
        let args: Vec<&str> = atom.args.iter().map(|&v| self.vars[v].as_str()).collect();
        format!("{}({})", atom.pred, args.join(","))
    }

    pub fn premise_strings(&self) -> Vec<String> {
        self.premises
            .iter()
            .map(|p| match p {
                Premise::Fact(atom) => self.render_atom(atom),
                Premise::Sort(v, sort) => format!("{}({})", sort.tag(), self.vars[*v]),
            })
            .collect()
    }

    pub fn condition_strings(&self) -> Vec<String> {
        self.conditions
            .iter()
            .map(|c| {
                let [a, b] = c.vars();
                let (a, b) = (&self.vars[a], &self.vars[b]);
                match c {
                    Condition::Within(..) => format!("{a} within {b}"),
                    Condition::Overlap(..) => format!("{a} overlaps {b}"),
                    Condition::LocatedIn(..) => format!("{a} inside {b}"),
                }
            })
            .collect()
    }

    pub fn conclusion_strings(&self) -> Vec<String> {
        self.conclusions.iter().map(|a| self.render_atom(a)).collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = self.premise_strings();
        body.extend(self.condition_strings());
        write!(f, "{} [{}] {} => {}", self.id, self.axiom_ref, body.join(", "), self.conclusion_strings().join(", "))
    }
}

/// Extends `binding` so that `atom` matches `fact`. Leaves `binding`
/// partially extended on failure; callers work on a copy.
pub(crate) fn unify(atom: &Atom, fact: &Fact, binding: &mut [Option<Term>]) -> bool {
    if atom.pred != fact.pred || atom.args.len() != fact.args.len() {
        return false;
    }
    for (&var, term) in atom.args.iter().zip(&fact.args) {
        match &binding[var] {
            Some(bound) if bound != term => return false,
            Some(_) => {}
            None => binding[var] = Some(term.clone()),
        }
    }
    true
}

pub(crate) fn instantiate(atom: &Atom, binding: &[Option<Term>]) -> Option<Fact> {
    let args = atom.args.iter().map(|&v| binding[v].clone()).collect::<Option<Vec<_>>>()?;
    Some(Fact { pred: atom.pred, args })
}

struct RuleBuilder {
    rule: Rule,
}

fn rule(id: impl Into<String>, axiom_ref: &'static str) -> RuleBuilder {
    RuleBuilder {
        rule: Rule {
            id: Arc::from(id.into()),
            axiom_ref,
            vars: Vec::new(),
            premises: Vec::new(),
            conditions: Vec::new(),
            conclusions: Vec::new(),
        },
    }
}

impl RuleBuilder {
    fn var(&mut self, name: &str) -> Var {
        if let Some(i) = self.rule.vars.iter().position(|v| v == name) {
            return i;
        }
        self.rule.vars.push(name.to_string());
        self.rule.vars.len() - 1
    }

    fn atom(&mut self, pred: Pred, args: &[&str]) -> Atom {
        assert_eq!(args.len(), pred.arity(), "catalog atom {pred} has wrong arity");
        Atom { pred, args: args.iter().map(|a| self.var(a)).collect() }
    }

    fn when(mut self, pred: Pred, args: &[&str]) -> Self {
        let atom = self.atom(pred, args);
        self.rule.premises.push(Premise::Fact(atom));
        self
    }

    fn sort(mut self, var: &str, sort: Sort) -> Self {
        let v = self.var(var);
        self.rule.premises.push(Premise::Sort(v, sort));
        self
    }

    fn within(mut self, a: &str, b: &str) -> Self {
        let c = Condition::Within(self.var(a), self.var(b));
        self.rule.conditions.push(c);
        self
    }

    fn overlap(mut self, a: &str, b: &str) -> Self {
        let c = Condition::Overlap(self.var(a), self.var(b));
        self.rule.conditions.push(c);
        self
    }

    fn located_in(mut self, a: &str, b: &str) -> Self {
        let c = Condition::LocatedIn(self.var(a), self.var(b));
        self.rule.conditions.push(c);
        self
    }

    fn then(mut self, pred: Pred, args: &[&str]) -> Self {
        let atom = self.atom(pred, args);
        self.rule.conclusions.push(atom);
        self
    }

    fn build(self) -> Rule {
        self.rule
    }
}

fn per_kind(out: &mut Vec<Rule>, make: impl Fn(InfoKind, &str) -> Rule) {
    for kind in InfoKind::ALL {
        out.push(make(kind, &format!(".{}", kind.letter())));
    }
}

fn build_catalog() -> Vec<Rule> {
    use InfoLevel::*;
    use Pred::*;
    use Sort::{AbstractContext as SC, InstanceContext as IC, Role as SR};
    let x = |kind: InfoKind, level: InfoLevel| Info(kind, level);

    let mut rules = vec![
        rule("D1", "Ax3").when(HasCoR, &["c", "r1", "r2"]).then(HasR, &["c", "r1"]).then(HasR, &["c", "r2"]).build(),
        rule("D2", "Ax5")
            .when(CoPlay, &["p1", "p2", "r1", "r2", "c", "t"])
            .then(Play, &["p1", "r1", "c", "t"])
            .then(Play, &["p2", "r2", "c", "t"])
            .build(),
        rule("D3", "Ax9<-").when(InsC, &["c", "C"]).when(HasR, &["c", "r"]).then(HasR, &["C", "r"]).build(),
        rule("D4", "Ax10<-")
            .when(InsC, &["c", "C"])
            .when(HasCoR, &["c", "r1", "r2"])
            .then(HasCoR, &["C", "r1", "r2"])
            .build(),
        rule("D5", "Ax12<-").when(Play, &["p", "r", "c", "t"]).then(HasR, &["c", "r"]).build(),
        rule("D6", "Ax13<-")
            .when(CoPlay, &["p1", "p2", "r1", "r2", "c", "t"])
            .then(HasCoR, &["c", "r1", "r2"])
            .build(),
        rule("D7", "d1").when(InsC, &["c", "C1"]).when(IsAC, &["C1", "C2"]).then(InsC, &["c", "C2"]).build(),
        rule("D8", "d2")
            .when(Play, &["p", "r1", "c", "t"])
            .when(IsAR, &["r1", "r2"])
            .then(Play, &["p", "r2", "c", "t"])
            .build(),
        rule("D9", "c3").when(IsAC, &["C1", "C2"]).when(IsAC, &["C2", "C3"]).then(IsAC, &["C1", "C3"]).build(),
        rule("D10", "c4").when(IsAR, &["r1", "r2"]).when(IsAR, &["r2", "r3"]).then(IsAR, &["r1", "r3"]).build(),
        rule("D11", "c5").when(HasR, &["c", "r1"]).when(IsAR, &["r1", "r2"]).then(HasR, &["c", "r2"]).build(),
        rule("D12", "c6").when(HasR, &["C1", "r"]).when(IsAC, &["C1", "C2"]).then(HasR, &["C2", "r"]).build(),
    ];

    let mut lifting = Vec::new();
    per_kind(&mut lifting, |k, s| {
        rule(format!("D13{s}"), "Ax19").when(x(k, RoleInContext), &["r", "c", "x"]).then(HasR, &["c", "r"]).build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D14{s}"), "Ax20")
            .when(x(k, RolePairInContext), &["r1", "r2", "c", "x"])
            .then(HasCoR, &["c", "r1", "r2"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D15{s}"), "Ax21")
            .when(x(k, Player), &["p", "r", "c", "x", "t"])
            .then(Play, &["p", "r", "c", "t"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D16{s}"), "Ax22")
            .when(x(k, PlayerPair), &["p1", "p2", "r1", "r2", "c", "x", "t"])
            .then(CoPlay, &["p1", "p2", "r1", "r2", "c", "t"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D17{s}"), "Ax27<-")
            .when(x(k, Player), &["p", "r", "c", "x", "t"])
            .sort("c", IC)
            .then(x(k, RoleInContext), &["r", "c", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D18{s}"), "Ax28<-")
            .when(x(k, PlayerPair), &["p1", "p2", "r1", "r2", "c", "x", "t"])
            .sort("c", IC)
            .then(x(k, RolePairInContext), &["r1", "r2", "c", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D19{s}"), "Ax29<-")
            .when(InsC, &["c", "C"])
            .when(x(k, RoleInContext), &["r", "c", "x"])
            .then(x(k, RoleInContext), &["r", "C", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D20{s}"), "Ax30<-")
            .when(InsC, &["c", "C"])
            .when(x(k, RolePairInContext), &["r1", "r2", "c", "x"])
            .then(x(k, RolePairInContext), &["r1", "r2", "C", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D21{s}"), "Ax33<-")
            .when(x(k, RoleInContext), &["r", "C", "x"])
            .sort("C", SC)
            .then(x(k, Role), &["r", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D22{s}"), "Ax34<-")
            .when(x(k, RolePairInContext), &["r1", "r2", "C", "x"])
            .sort("C", SC)
            .then(x(k, RolePair), &["r1", "r2", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D23a{s}"), "Ax36<-")
            .when(x(k, RoleInContext), &["r", "c", "x"])
            .then(x(k, Context), &["c", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D23b{s}"), "Ax36<-")
            .when(x(k, RolePairInContext), &["r1", "r2", "c", "x"])
            .then(x(k, Context), &["c", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D24{s}"), "c7<-")
            .when(InsC, &["c", "C"])
            .when(x(k, Context), &["c", "x"])
            .then(x(k, Context), &["C", "x"])
            .build()
    });
    per_kind(&mut lifting, |k, s| {
        rule(format!("D25{s}"), "c8")
            .when(x(k, Context), &["C1", "x"])
            .when(IsAC, &["C1", "C2"])
            .then(x(k, Context), &["C2", "x"])
            .build()
    });
    rules.extend(lifting);

    rules.extend([
        rule("D26", "d3")
            .when(HasL, &["c1", "l1"])
            .when(HasL, &["c2", "l2"])
            .when(HasT, &["c1", "t1"])
            .when(HasT, &["c2", "t2"])
            .located_in("l1", "l2")
            .within("t1", "t2")
            .then(Eic, &["c1", "c2"])
            .build(),
        rule("D27", "c10").sort("c", IC).then(Eic, &["c", "c"]).build(),
        rule("D28", "c11").when(Eic, &["c1", "c2"]).when(Eic, &["c2", "c3"]).then(Eic, &["c1", "c3"]).build(),
        rule("D29", "d4")
            .when(Eic, &["c1", "c2"])
            .when(Play, &["p", "r1", "c1", "t1"])
            .when(Play, &["p", "r2", "c2", "t2"])
            .overlap("t1", "t2")
            .then(Reic, &["c1", "r1", "c2", "r2"])
            .build(),
        rule("D30", "c12").when(HasR, &["c", "r"]).sort("c", IC).then(Reic, &["c", "r", "c", "r"]).build(),
    ]);

    let mut embedded = Vec::new();
    per_kind(&mut embedded, |k, s| {
        rule(format!("D31{s}"), "Ax40<-")
            .when(Play, &["p", "r", "c", "t"])
            .when(Eic, &["c2", "c"])
            .when(x(k, Player), &["p", "r2", "c2", "x", "t2"])
            .within("t2", "t")
            .then(x(k, Player), &["p", "r", "c", "x", "t"])
            .build()
    });
    per_kind(&mut embedded, |k, s| {
        rule(format!("D32{s}"), "Ax41<-")
            .when(CoPlay, &["p1", "p2", "r1", "r2", "c", "t"])
            .when(Eic, &["c2", "c"])
            .when(x(k, PlayerPair), &["p1", "p2", "s1", "s2", "c2", "x", "t2"])
            .within("t2", "t")
            .then(x(k, PlayerPair), &["p1", "p2", "r1", "r2", "c", "x", "t"])
            .build()
    });
    per_kind(&mut embedded, |k, s| {
        rule(format!("D33{s}"), "c13<-")
            .when(Reic, &["c2", "r2", "c", "r"])
            .when(x(k, RoleInContext), &["r2", "c2", "x"])
            .sort("c", IC)
            .then(x(k, RoleInContext), &["r", "c", "x"])
            .build()
    });
    per_kind(&mut embedded, |k, s| {
        rule(format!("D34{s}"), "c14<-")
            .when(Reic, &["c2", "s1", "c", "r1"])
            .when(Reic, &["c2", "s2", "c", "r2"])
            .when(x(k, RolePairInContext), &["s1", "s2", "c2", "x"])
            .sort("c", IC)
            .then(x(k, RolePairInContext), &["r1", "r2", "c", "x"])
            .build()
    });
    rules.extend(embedded);

    rules.extend([
        rule("D35", "d5")
            .when(InsC, &["c1", "C1"])
            .when(InsC, &["c2", "C2"])
            .when(Eic, &["c1", "c2"])
            .then(Esc, &["C1", "C2"])
            .build(),
        rule("D36", "c15").sort("C", SC).then(Esc, &["C", "C"]).build(),
        rule("D37", "c16").when(Esc, &["C1", "C2"]).when(IsAC, &["C2", "C3"]).then(Esc, &["C1", "C3"]).build(),
        rule("D38", "c17").when(Esc, &["C1", "C2"]).when(IsAC, &["C1", "C3"]).then(Esc, &["C3", "C2"]).build(),
        rule("D39", "d6")
            .when(InsC, &["c1", "C1"])
            .when(InsC, &["c2", "C2"])
            .when(Reic, &["c1", "r1", "c2", "r2"])
            .then(Resc, &["C1", "r1", "C2", "r2"])
            .build(),
        rule("D40a", "c18").when(HasR, &["C", "r"]).sort("C", SC).then(Resc, &["C", "r", "C", "r"]).build(),
        rule("D40b", "c19")
            .when(Resc, &["C1", "r1", "C2", "r2"])
            .when(IsAR, &["r2", "r3"])
            .then(Resc, &["C1", "r1", "C2", "r3"])
            .build(),
        rule("D40c", "c20")
            .when(Resc, &["C1", "r1", "C2", "r2"])
            .when(IsAR, &["r1", "r3"])
            .then(Resc, &["C1", "r3", "C2", "r2"])
            .build(),
    ]);

    let mut abstract_embedded = Vec::new();
    per_kind(&mut abstract_embedded, |k, s| {
        rule(format!("D41{s}"), "c21<-")
            .when(Resc, &["C2", "r2", "C", "r"])
            .when(x(k, RoleInContext), &["r2", "C2", "x"])
            .then(x(k, RoleInContext), &["r", "C", "x"])
            .build()
    });
    per_kind(&mut abstract_embedded, |k, s| {
        rule(format!("D42{s}"), "c22<-")
            .when(Resc, &["C2", "s1", "C", "r1"])
            .when(Resc, &["C2", "s2", "C", "r2"])
            .when(x(k, RolePairInContext), &["s1", "s2", "C2", "x"])
            .then(x(k, RolePairInContext), &["r1", "r2", "C", "x"])
            .build()
    });
    rules.extend(abstract_embedded);

    rules.extend([
        rule("D43a", "c1").sort("C", SC).then(IsAC, &["C", "C"]).build(),
        rule("D43b", "c2").sort("r", SR).then(IsAR, &["r", "r"]).build(),
    ]);
    per_kind(&mut rules, |k, s| {
        rule(format!("D44{s}"), "Ex2")
            .when(x(k, RolePairInContext), &["r1", "r2", "c", "x"])
            .then(x(k, RoleInContext), &["r1", "c", "x"])
            .build()
    });
    rules
}

/// The rule catalog in application order.
pub fn catalog() -> &'static [Rule] {
    static CATALOG: OnceLock<Vec<Rule>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn rule_by_id(id: &str) -> Option<&'static Rule> {
    catalog().iter().find(|r| &*r.id == id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObligationSpec {
    pub id: &'static str,
    pub axiom_ref: &'static str,
    pub scope: &'static str,
    pub witness: &'static str,
    pub severity: Severity,
}

const fn obligation(id: &'static str, axiom_ref: &'static str, scope: &'static str, witness: &'static str) -> ObligationSpec {
    ObligationSpec { id, axiom_ref, scope, witness, severity: Severity::Warning }
}

static OBLIGATIONS: [ObligationSpec; 13] = [
    obligation("O1", "Ax6", "SC(c) or IC(c)", "hasR(c,?r)"),
    obligation("O2", "Ax7", "SR(r)", "hasR(?c,r)"),
    obligation("O3", "Ax8", "SC(c) or IC(c)", "hasCoR(c,?r1,?r2)"),
    obligation("O4", "Ax11", "PL(p)", "play(p,?r,?c,?t) and coPlay(p,?p1,?r,?r1,?c,?t)"),
    obligation("O5", "Ax9->,Ax10->", "hasR(C,r) / hasCoR(C,r1,r2) with SC(C)", "insC(?c,C) with hasR(?c,r) / hasCoR(?c,r1,r2)"),
    obligation("O6", "Ax12->,Ax13->", "hasR(c,r) / hasCoR(c,r1,r2) with IC(c)", "play(?p,r,c,?t) / coPlay(?p1,?p2,r1,r2,c,?t)"),
    obligation("O7", "Ax23,Ax24", "play(p,r,c,t) / coPlay(p1,p2,r1,r2,c,t)", "hasX_p / hasX_cop on ?t1 within t, for each X"),
    obligation("O8", "Ax25,Ax26", "hasR(c,r) / hasCoR(c,r1,r2)", "hasX_rc(r,c,?x) / hasX_corc(r1,r2,c,?x), for each X"),
    obligation("O9", "Ax27->-Ax30->,Ax33->,Ax34->,Ax36->", "lifted hasX facts", "the same item one level below"),
    obligation("O10", "Ax31,Ax32", "SR(r) / hasCoR(?c,r1,r2)", "hasX_r(r,?x) / hasX_cor(r1,r2,?x), for each X"),
    obligation("O11", "Ax35", "SC(c) or IC(c)", "hasX_c(c,?x), for each X"),
    obligation("O12", "Ax39", "IC(c)", "hasL(c,?l) and hasT(c,?t)"),
    obligation("O13", "Ax40->,Ax41->", "hasX_p / hasX_cop facts", "the same item in an embedded context (EIC(c,c) suffices)"),
];

pub fn obligations() -> &'static [ObligationSpec] {
    &OBLIGATIONS
}

pub fn obligation_by_id(id: &str) -> Option<&'static ObligationSpec> {
    OBLIGATIONS.iter().find(|o| o.id == id)
}

/// Catalog entry in the shape exported by `rules export`.
#[derive(Debug, Clone, Serialize)]
pub struct RuleRecord {
    pub id: String,
    pub axiom_ref: String,
    pub premises: Vec<String>,
    pub conditions: Vec<String>,
    pub conclusions: Vec<String>,
}

pub fn export_records() -> Vec<RuleRecord> {
    catalog()
        .iter()
        .map(|r| RuleRecord {
            id: r.id.to_string(),
            axiom_ref: r.axiom_ref.to_string(),
            premises: r.premise_strings(),
            conditions: r.condition_strings(),
            conclusions: r.conclusion_strings(),
        })
        .collect()
}
