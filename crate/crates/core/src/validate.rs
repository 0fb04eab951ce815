//! Signature checks and closed-world obligation reports.
//!
//! Obligations are evaluated over whatever the knowledge base currently
//! holds, so they are meant to run after saturation. Each missing witness is
//! reported once; nothing is ever added to the knowledge base.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::model::{Fact, InfoKind, InfoLevel, KnowledgeBase, Name, Pred, Sort, Term};
use crate::rules::{obligation_by_id, Severity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    SortViolation {
        severity: Severity,
        axiom_ref: String,
        fact: String,
        /// One-based argument position.
        position: usize,
        expected: String,
    },
    ObligationUnmet {
        severity: Severity,
        obligation: String,
        axiom_ref: String,
        scope: String,
        missing: String,
    },
}

impl Violation {
    pub fn severity(&self) -> Severity {
        match self {
            Violation::SortViolation { severity, .. } | Violation::ObligationUnmet { severity, .. } => *severity,
        }
    }

    pub fn axiom_ref(&self) -> &str {
        match self {
            Violation::SortViolation { axiom_ref, .. } | Violation::ObligationUnmet { axiom_ref, .. } => axiom_ref,
        }
    }

    pub fn obligation(&self) -> Option<&str> {
        match self {
            Violation::ObligationUnmet { obligation, .. } => Some(obligation),
            Violation::SortViolation { .. } => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SortViolation { axiom_ref, fact, position, expected, .. } => {
                write!(f, "error   {axiom_ref:<6} {fact}: argument {position} must be {expected}")
            }
            Violation::ObligationUnmet { obligation, axiom_ref, scope, missing, .. } => {
                write!(f, "warning {obligation:<4} [{axiom_ref}] {scope}: missing {missing}")
            }
        }
    }
}

/// One violation per breached argument of each asserted fact.
pub fn check_sorts(kb: &KnowledgeBase) -> Vec<Violation> {
    let mut facts: Vec<&Fact> = kb.asserted_facts().collect();
    facts.sort();
    facts
        .into_iter()
        .flat_map(|fact| {
            kb.sort_breaches(fact).into_iter().map(move |breach| Violation::SortViolation {
                severity: Severity::Error,
                axiom_ref: fact.pred.sort_axiom().to_string(),
                fact: fact.to_string(),
                position: breach.position + 1,
                expected: breach.expected.to_string(),
            })
        })
        .collect()
}

struct Report<'a> {
    kb: &'a KnowledgeBase,
    out: Vec<Violation>,
}

impl<'a> Report<'a> {
    fn unmet(&mut self, id: &str, scope: impl fmt::Display, missing: String) {
        let spec = obligation_by_id(id).expect("known obligation");
        self.out.push(Violation::ObligationUnmet {
            severity: spec.severity,
            obligation: spec.id.to_string(),
            axiom_ref: spec.axiom_ref.to_string(),
            scope: scope.to_string(),
            missing,
        });
    }

    fn sorted(&self, pred: Pred) -> Vec<&'a Fact> {
        let mut facts: Vec<&Fact> = self.kb.facts_of(pred).collect();
        facts.sort();
        facts
    }

    fn contexts(&self) -> Vec<(Sort, &'a Name)> {
        self.kb.entities().filter(|e| e.sort.is_context()).map(|e| (e.sort, &e.name)).collect()
    }

    fn any(&self, pred: Pred, bound: &[(usize, &Term)], extra: impl Fn(&Fact) -> bool) -> bool {
        let Some(&(pos, term)) = bound.first() else {
            return self.kb.facts_of(pred).any(extra);
        };
        self.kb.lookup(pred, pos, term).iter().map(|&id| self.kb.fact(id)).any(|f| {
            bound.iter().all(|(p, t)| &f.args[*p] == *t) && extra(f)
        })
    }

    fn exists(&self, pred: Pred, bound: &[(usize, &Term)]) -> bool {
        self.any(pred, bound, |_| true)
    }

    fn is_sort(&self, term: &Term, sort: Sort) -> bool {
        self.kb.has_sort(term, sort)
    }
}

fn x_pred(kind: InfoKind, level: InfoLevel) -> Pred {
    Pred::Info(kind, level)
}

fn scope_tag(sort: Sort, name: &str) -> String {
    format!("{}({name})", sort.tag())
}

/// Every unmet obligation witness, in obligation order.
pub fn check_obligations(kb: &KnowledgeBase) -> Vec<Violation> {
    let mut r = Report { kb, out: Vec::new() };
    let e = |n: &Name| Term::Entity(n.clone());

    // O1, O3: contexts have roles and social relations.
    for (sort, c) in r.contexts() {
        if !r.exists(Pred::HasR, &[(0, &e(c))]) {
            r.unmet("O1", scope_tag(sort, c), format!("hasR({c}, ?r)"));
        }
    }
    let roles: Vec<&Name> = kb.entities_of(Sort::Role).map(|en| &en.name).collect();
    for r_name in &roles {
        if !r.exists(Pred::HasR, &[(1, &e(r_name))]) {
            r.unmet("O2", scope_tag(Sort::Role, r_name), format!("hasR(?c, {r_name})"));
        }
    }
    for (sort, c) in r.contexts() {
        if !r.exists(Pred::HasCoR, &[(0, &e(c))]) {
            r.unmet("O3", scope_tag(sort, c), format!("hasCoR({c}, ?r1, ?r2)"));
        }
    }

    // O4: players play and co-play.
    for p in kb.entities_of(Sort::Player).map(|en| &en.name) {
        if !r.exists(Pred::Play, &[(0, &e(p))]) {
            r.unmet("O4", scope_tag(Sort::Player, p), format!("play({p}, ?r, ?c, ?t)"));
        }
        if !r.exists(Pred::CoPlay, &[(0, &e(p))]) {
            r.unmet("O4", scope_tag(Sort::Player, p), format!("coPlay({p}, ?p1, ?r, ?r1, ?c, ?t)"));
        }
    }

    // O5: abstract roles and relations come from instances.
    let instances_with = |r: &Report, class: &Term, pred: Pred, rest: &[&Term]| {
        r.kb.lookup(Pred::InsC, 1, class).iter().any(|&id| {
            let c = &r.kb.fact(id).args[0];
            let mut bound: Vec<(usize, &Term)> = vec![(0, c)];
            bound.extend(rest.iter().enumerate().map(|(i, t)| (i + 1, *t)));
            r.exists(pred, &bound)
        })
    };
    for f in r.sorted(Pred::HasR) {
        if r.is_sort(&f.args[0], Sort::AbstractContext) && !instances_with(&r, &f.args[0], Pred::HasR, &[&f.args[1]]) {
            r.unmet("O5", f, format!("insC(?c, {}) with hasR(?c, {})", f.args[0], f.args[1]));
        }
    }
    for f in r.sorted(Pred::HasCoR) {
        if r.is_sort(&f.args[0], Sort::AbstractContext)
            && !instances_with(&r, &f.args[0], Pred::HasCoR, &[&f.args[1], &f.args[2]])
        {
            r.unmet("O5", f, format!("insC(?c, {}) with hasCoR(?c, {}, {})", f.args[0], f.args[1], f.args[2]));
        }
    }

    // O6: instance roles and relations are played.
    for f in r.sorted(Pred::HasR) {
        let (c, role) = (&f.args[0], &f.args[1]);
        if r.is_sort(c, Sort::InstanceContext) && !r.exists(Pred::Play, &[(2, c), (1, role)]) {
            r.unmet("O6", f, format!("play(?p, {role}, {c}, ?t)"));
        }
    }
    for f in r.sorted(Pred::HasCoR) {
        let (c, r1, r2) = (&f.args[0], &f.args[1], &f.args[2]);
        if r.is_sort(c, Sort::InstanceContext) && !r.exists(Pred::CoPlay, &[(4, c), (2, r1), (3, r2)]) {
            r.unmet("O6", f, format!("coPlay(?p1, ?p2, {r1}, {r2}, {c}, ?t)"));
        }
    }

    // O7: playing generates information of every kind.
    let within = |stored: &Term, host: &Term| match (stored.as_interval(), host.as_interval()) {
        (Some(a), Some(b)) => a.is_within(b),
        _ => false,
    };
    for f in r.sorted(Pred::Play) {
        let (p, role, c, t) = (&f.args[0], &f.args[1], &f.args[2], &f.args[3]);
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::Player);
            if !r.any(pred, &[(0, p), (1, role), (2, c)], |w| within(&w.args[4], t)) {
                r.unmet("O7", f, format!("{pred}({p}, {role}, {c}, ?x, ?t1) with ?t1 within {t}"));
            }
        }
    }
    for f in r.sorted(Pred::CoPlay) {
        let a = &f.args;
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::PlayerPair);
            let bound = [(0, &a[0]), (1, &a[1]), (2, &a[2]), (3, &a[3]), (4, &a[4])];
            if !r.any(pred, &bound, |w| within(&w.args[6], &a[5])) {
                r.unmet(
                    "O7",
                    f,
                    format!("{pred}({}, {}, {}, {}, {}, ?x, ?t1) with ?t1 within {}", a[0], a[1], a[2], a[3], a[4], a[5]),
                );
            }
        }
    }

    // O8: roles and relations in contexts carry information.
    for f in r.sorted(Pred::HasR) {
        let (c, role) = (&f.args[0], &f.args[1]);
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::RoleInContext);
            if !r.exists(pred, &[(0, role), (1, c)]) {
                r.unmet("O8", f, format!("{pred}({role}, {c}, ?x)"));
            }
        }
    }
    for f in r.sorted(Pred::HasCoR) {
        let (c, r1, r2) = (&f.args[0], &f.args[1], &f.args[2]);
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::RolePairInContext);
            if !r.exists(pred, &[(0, r1), (1, r2), (2, c)]) {
                r.unmet("O8", f, format!("{pred}({r1}, {r2}, {c}, ?x)"));
            }
        }
    }

    // O9: lifted information is witnessed one level below.
    for kind in InfoKind::ALL {
        let rc = x_pred(kind, InfoLevel::RoleInContext);
        let corc = x_pred(kind, InfoLevel::RolePairInContext);
        let player = x_pred(kind, InfoLevel::Player);
        let pair = x_pred(kind, InfoLevel::PlayerPair);
        for f in r.sorted(rc) {
            let (role, c, x) = (&f.args[0], &f.args[1], &f.args[2]);
            if r.is_sort(c, Sort::InstanceContext) && !r.exists(player, &[(1, role), (2, c), (3, x)]) {
                r.unmet("O9", f, format!("{player}(?p, {role}, {c}, {x}, ?t)"));
            }
            if r.is_sort(c, Sort::AbstractContext) {
                let found = kb.lookup(Pred::InsC, 1, c).iter().any(|&id| {
                    r.exists(rc, &[(0, role), (1, &kb.fact(id).args[0]), (2, x)])
                });
                if !found {
                    r.unmet("O9", f, format!("insC(?c, {c}) with {rc}({role}, ?c, {x})"));
                }
            }
        }
        for f in r.sorted(corc) {
            let (r1, r2, c, x) = (&f.args[0], &f.args[1], &f.args[2], &f.args[3]);
            if r.is_sort(c, Sort::InstanceContext) && !r.exists(pair, &[(2, r1), (3, r2), (4, c), (5, x)]) {
                r.unmet("O9", f, format!("{pair}(?p1, ?p2, {r1}, {r2}, {c}, {x}, ?t)"));
            }
            if r.is_sort(c, Sort::AbstractContext) {
                let found = kb.lookup(Pred::InsC, 1, c).iter().any(|&id| {
                    r.exists(corc, &[(0, r1), (1, r2), (2, &kb.fact(id).args[0]), (3, x)])
                });
                if !found {
                    r.unmet("O9", f, format!("insC(?c, {c}) with {corc}({r1}, {r2}, ?c, {x})"));
                }
            }
        }
        let role_level = x_pred(kind, InfoLevel::Role);
        for f in r.sorted(role_level) {
            let (role, x) = (&f.args[0], &f.args[1]);
            if !r.any(rc, &[(0, role), (2, x)], |w| kb.has_sort(&w.args[1], Sort::AbstractContext)) {
                r.unmet("O9", f, format!("{rc}({role}, ?C, {x}) with SC(?C)"));
            }
        }
        let pair_level = x_pred(kind, InfoLevel::RolePair);
        for f in r.sorted(pair_level) {
            let (r1, r2, x) = (&f.args[0], &f.args[1], &f.args[2]);
            if !r.any(corc, &[(0, r1), (1, r2), (3, x)], |w| kb.has_sort(&w.args[2], Sort::AbstractContext)) {
                r.unmet("O9", f, format!("{corc}({r1}, {r2}, ?C, {x}) with SC(?C)"));
            }
        }
        let context_level = x_pred(kind, InfoLevel::Context);
        for f in r.sorted(context_level) {
            let (c, x) = (&f.args[0], &f.args[1]);
            if !r.exists(rc, &[(1, c), (2, x)]) && !r.exists(corc, &[(2, c), (3, x)]) {
                r.unmet("O9", f, format!("{rc}(?r, {c}, {x}) or {corc}(?r1, ?r2, {c}, {x})"));
            }
        }
    }

    // O10: roles and social relations carry information.
    for role in &roles {
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::Role);
            if !r.exists(pred, &[(0, &e(role))]) {
                r.unmet("O10", scope_tag(Sort::Role, role), format!("{pred}({role}, ?x)"));
            }
        }
    }
    let relations: BTreeSet<(&Term, &Term)> = kb.facts_of(Pred::HasCoR).map(|f| (&f.args[1], &f.args[2])).collect();
    for (r1, r2) in relations {
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::RolePair);
            if !r.exists(pred, &[(0, r1), (1, r2)]) {
                r.unmet("O10", format!("SR'({r1}, {r2})"), format!("{pred}({r1}, {r2}, ?x)"));
            }
        }
    }

    // O11: contexts carry information.
    for (sort, c) in r.contexts() {
        for kind in InfoKind::ALL {
            let pred = x_pred(kind, InfoLevel::Context);
            if !r.exists(pred, &[(0, &e(c))]) {
                r.unmet("O11", scope_tag(sort, c), format!("{pred}({c}, ?x)"));
            }
        }
    }

    // O12: instance contexts have a place and a life span.
    for c in kb.entities_of(Sort::InstanceContext).map(|en| &en.name) {
        if !r.exists(Pred::HasL, &[(0, &e(c))]) {
            r.unmet("O12", scope_tag(Sort::InstanceContext, c), format!("hasL({c}, ?l)"));
        }
        if !r.exists(Pred::HasT, &[(0, &e(c))]) {
            r.unmet("O12", scope_tag(Sort::InstanceContext, c), format!("hasT({c}, ?t)"));
        }
    }

    // O13: player-level information shows up in an embedded context.
    for kind in InfoKind::ALL {
        let player = x_pred(kind, InfoLevel::Player);
        for f in r.sorted(player) {
            let (p, c, x, t) = (&f.args[0], &f.args[2], &f.args[3], &f.args[4]);
            let found = kb.lookup(Pred::Eic, 1, c).iter().any(|&id| {
                let inner = &kb.fact(id).args[0];
                r.any(player, &[(0, p), (2, inner), (3, x)], |w| within(&w.args[4], t))
            });
            if !found {
                r.unmet("O13", f, format!("EIC(?c1, {c}) with {player}({p}, ?r1, ?c1, {x}, ?t1) and ?t1 within {t}"));
            }
        }
        let pair = x_pred(kind, InfoLevel::PlayerPair);
        for f in r.sorted(pair) {
            let a = &f.args;
            let found = kb.lookup(Pred::Eic, 1, &a[4]).iter().any(|&id| {
                let inner = &kb.fact(id).args[0];
                r.any(pair, &[(0, &a[0]), (1, &a[1]), (4, inner), (5, &a[5])], |w| within(&w.args[6], &a[6]))
            });
            if !found {
                r.unmet(
                    "O13",
                    f,
                    format!(
                        "EIC(?c1, {}) with {pair}({}, {}, ?r1, ?r2, ?c1, {}, ?t1) and ?t1 within {}",
                        a[4], a[0], a[1], a[5], a[6]
                    ),
                );
            }
        }
    }

    r.out
}
