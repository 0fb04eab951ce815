//! Test support: fixture loading, golden files, a random knowledge-base
//! generator, a naive fixpoint oracle and a checker for theorem instances.
//!
//! The oracle and the theorem checker are written directly against fact
//! vectors and share nothing with the engine's matcher or the rule catalog.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sck_core::engine::{saturate, SaturationOptions};
use sck_core::model::{
    ArgKind, Fact, InfoKind, InfoLevel, KnowledgeBase, Pred, Provenance, Sort, SortMode, Term,
};
use sck_core::parser::{parse_document, statements_to_kb};

pub const FIXTURES: [&str; 5] = ["example1.sck", "example2.sck", "embedding.sck", "complete_school.sck", "empty.sck"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

pub fn load(name: &str) -> KnowledgeBase {
    let text = fixture_text(name);
    let statements = parse_document(&text, SortMode::Strict).into_result().expect("fixture parses");
    statements_to_kb(&statements, SortMode::Strict).expect("fixture loads")
}

pub fn load_saturated(name: &str) -> KnowledgeBase {
    let mut kb = load(name);
    saturate(&mut kb, &SaturationOptions::default()).expect("saturates");
    kb
}

/// Compares `actual` with `tests/golden/<name>`. With `UPDATE_GOLDEN=1`
/// the file is rewritten instead.
pub fn golden_matches(name: &str, actual: &str) -> Result<(), String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    if expected == actual {
        return Ok(());
    }
    let first = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .unwrap_or(expected.lines().count().min(actual.lines().count()));
    Err(format!(
        "{name} differs at line {}: expected {:?}, got {:?}",
        first + 1,
        expected.lines().nth(first),
        actual.lines().nth(first)
    ))
}

pub fn fact(text: &str) -> Fact {
    sck_core::parser::parse_fact(text).unwrap_or_else(|e| panic!("bad fact {text}: {e}"))
}

// ---------------------------------------------------------------------------
// Random knowledge bases

fn weighted_predicates() -> Vec<Pred> {
    use Pred::*;
    let mut preds = vec![InsC, InsC, InsC, HasR, HasCoR, Play, Play, Play, CoPlay, CoPlay, IsAC, IsAC, IsAR, IsAR];
    preds.extend([HasL, HasL, HasT, HasT, ContainsL, Eic, Reic, Esc, Resc]);
    for kind in InfoKind::ALL {
        for level in InfoLevel::ALL {
            preds.push(Info(kind, level));
            if matches!(level, InfoLevel::Player | InfoLevel::PlayerPair | InfoLevel::RoleInContext) {
                preds.push(Info(kind, level));
            }
        }
    }
    preds
}

/// A sort-valid knowledge base with at most 12 entities and 30 asserted
/// facts, intervals within ticks 0..6.
pub fn random_kb(seed: u64) -> KnowledgeBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kb = KnowledgeBase::new(SortMode::Strict);
    let declare = |prefix: &str, sort: Sort, n: usize, kb: &mut KnowledgeBase| {
        for i in 0..n {
            kb.declare_entity(&format!("{prefix}{i}"), sort, None).unwrap();
        }
        n
    };
    let mut total = 0;
    total += declare("C", Sort::AbstractContext, rng.gen_range(1..=3), &mut kb);
    total += declare("c", Sort::InstanceContext, rng.gen_range(1..=3), &mut kb);
    total += declare("r", Sort::Role, rng.gen_range(1..=3), &mut kb);
    total += declare("p", Sort::Player, rng.gen_range(1..=2), &mut kb);
    total += declare("l", Sort::Location, rng.gen_range(0..=1), &mut kb);
    let items = rng.gen_range(1..=2).min(12 - total);
    for i in 0..items {
        let kind = *InfoKind::ALL.choose(&mut rng).unwrap();
        kb.declare_entity(&format!("{}{i}", kind.letter().to_ascii_lowercase()), Sort::Info(kind), None).unwrap();
    }

    let preds = weighted_predicates();
    let attempts = rng.gen_range(0..=30);
    for _ in 0..attempts {
        let pred = *preds.choose(&mut rng).unwrap();
        let mut args = Vec::new();
        for kind in pred.signature() {
            if kind == ArgKind::Interval {
                let start = rng.gen_range(0..=6);
                let end = rng.gen_range(start..=6);
                args.push(Term::interval(start, end));
                continue;
            }
            let pool: Vec<_> = kb.entities().filter(|e| kind.admits(e.sort)).map(|e| e.name.clone()).collect();
            match pool.choose(&mut rng) {
                Some(name) => args.push(Term::Entity(name.clone())),
                None => break,
            }
        }
        if args.len() == pred.arity() {
            kb.assert_fact(Fact::new(pred, args).unwrap(), Provenance::Asserted(None)).unwrap();
        }
    }
    kb
}

/// A fresh knowledge base with the same entities and the given facts,
/// asserted in order.
pub fn rebuild(kb: &KnowledgeBase, facts: &[Fact]) -> KnowledgeBase {
    let mut out = KnowledgeBase::new(kb.mode());
    for entity in kb.entities() {
        out.declare_entity(&entity.name, entity.sort, entity.span.clone()).unwrap();
    }
    for f in facts {
        out.assert_fact(f.clone(), Provenance::Asserted(None)).unwrap();
    }
    out
}

pub fn fact_set(kb: &KnowledgeBase) -> BTreeSet<Fact> {
    kb.facts().map(|(_, f)| f.clone()).collect()
}

// ---------------------------------------------------------------------------
// Naive oracle

fn within(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Interval(a), Term::Interval(b)) => b.start() <= a.start() && a.end() <= b.end(),
        _ => false,
    }
}

fn overlap(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Interval(a), Term::Interval(b)) => a.start().max(b.start()) <= a.end().min(b.end()),
        _ => false,
    }
}

/// Reflexive-transitive closure of the `containsL` edges by repeated
/// relaxation.
fn location_closure(facts: &BTreeSet<Fact>) -> HashSet<(Term, Term)> {
    let mut closure: HashSet<(Term, Term)> =
        facts.iter().filter(|f| f.pred == Pred::ContainsL).map(|f| (f.args[0].clone(), f.args[1].clone())).collect();
    loop {
        let extra: Vec<(Term, Term)> = closure
            .iter()
            .flat_map(|(a, b)| closure.iter().filter(move |(c, _)| c == b).map(move |(_, d)| (a.clone(), d.clone())))
            .filter(|pair| !closure.contains(pair))
            .collect();
        if extra.is_empty() {
            return closure;
        }
        closure.extend(extra);
    }
}

/// Least fixpoint computed by applying every rule to every tuple of the
/// current fact set until nothing changes.
pub fn naive_fixpoint(kb: &KnowledgeBase) -> BTreeSet<Fact> {
    use Pred::*;
    let sorts: HashMap<Term, Sort> = kb.entities().map(|e| (Term::Entity(e.name.clone()), e.sort)).collect();
    let is = |t: &Term, s: Sort| sorts.get(t) == Some(&s);
    let of_sort = |s: Sort| -> Vec<Term> { kb.entities_of(s).map(|e| Term::Entity(e.name.clone())).collect() };

    let mut set: BTreeSet<Fact> = kb.asserted_facts().cloned().collect();
    loop {
        let before = set.len();
        let inside = location_closure(&set);
        let located = |a: &Term, b: &Term| a == b || inside.contains(&(a.clone(), b.clone()));
        let snap: Vec<Fact> = set.iter().cloned().collect();
        let of = |p: Pred| -> Vec<&Vec<Term>> { snap.iter().filter(|f| f.pred == p).map(|f| &f.args).collect() };
        let mut out: Vec<Fact> = Vec::new();
        let mut add = |pred: Pred, args: Vec<&Term>| out.push(Fact { pred, args: args.into_iter().cloned().collect() });

        for a in of(HasCoR) {
            add(HasR, vec![&a[0], &a[1]]);
            add(HasR, vec![&a[0], &a[2]]);
        }
        for a in of(CoPlay) {
            add(Play, vec![&a[0], &a[2], &a[4], &a[5]]);
            add(Play, vec![&a[1], &a[3], &a[4], &a[5]]);
            add(HasCoR, vec![&a[4], &a[2], &a[3]]);
        }
        for i in of(InsC) {
            for h in of(HasR).into_iter().filter(|h| h[0] == i[0]) {
                add(HasR, vec![&i[1], &h[1]]);
            }
            for h in of(HasCoR).into_iter().filter(|h| h[0] == i[0]) {
                add(HasCoR, vec![&i[1], &h[1], &h[2]]);
            }
            for s in of(IsAC).into_iter().filter(|s| s[0] == i[1]) {
                add(InsC, vec![&i[0], &s[1]]);
            }
        }
        for p in of(Play) {
            add(HasR, vec![&p[2], &p[1]]);
            for s in of(IsAR).into_iter().filter(|s| s[0] == p[1]) {
                add(Play, vec![&p[0], &s[1], &p[2], &p[3]]);
            }
        }
        for pred in [IsAC, IsAR, Eic] {
            for a in of(pred) {
                for b in of(pred).into_iter().filter(|b| b[0] == a[1]) {
                    add(pred, vec![&a[0], &b[1]]);
                }
            }
        }
        for h in of(HasR) {
            for s in of(IsAR).into_iter().filter(|s| s[0] == h[1]) {
                add(HasR, vec![&h[0], &s[1]]);
            }
            for s in of(IsAC).into_iter().filter(|s| s[0] == h[0]) {
                add(HasR, vec![&s[1], &h[1]]);
            }
            if is(&h[0], Sort::InstanceContext) {
                add(Reic, vec![&h[0], &h[1], &h[0], &h[1]]);
            }
            if is(&h[0], Sort::AbstractContext) {
                add(Resc, vec![&h[0], &h[1], &h[0], &h[1]]);
            }
        }

        for kind in InfoKind::ALL {
            let x = |level| Info(kind, level);
            let (rc, corc, player, pair) =
                (x(InfoLevel::RoleInContext), x(InfoLevel::RolePairInContext), x(InfoLevel::Player), x(InfoLevel::PlayerPair));
            let (role, cor, ctx) = (x(InfoLevel::Role), x(InfoLevel::RolePair), x(InfoLevel::Context));
            for a in of(rc) {
                add(HasR, vec![&a[1], &a[0]]);
                add(ctx, vec![&a[1], &a[2]]);
                if is(&a[1], Sort::AbstractContext) {
                    add(role, vec![&a[0], &a[2]]);
                }
            }
            for a in of(corc) {
                add(HasCoR, vec![&a[2], &a[0], &a[1]]);
                add(ctx, vec![&a[2], &a[3]]);
                add(rc, vec![&a[0], &a[2], &a[3]]);
                if is(&a[2], Sort::AbstractContext) {
                    add(cor, vec![&a[0], &a[1], &a[3]]);
                }
            }
            for a in of(player) {
                add(Play, vec![&a[0], &a[1], &a[2], &a[4]]);
                if is(&a[2], Sort::InstanceContext) {
                    add(rc, vec![&a[1], &a[2], &a[3]]);
                }
            }
            for a in of(pair) {
                add(CoPlay, vec![&a[0], &a[1], &a[2], &a[3], &a[4], &a[6]]);
                if is(&a[4], Sort::InstanceContext) {
                    add(corc, vec![&a[2], &a[3], &a[4], &a[5]]);
                }
            }
            for i in of(InsC) {
                for a in of(rc).into_iter().filter(|a| a[1] == i[0]) {
                    add(rc, vec![&a[0], &i[1], &a[2]]);
                }
                for a in of(corc).into_iter().filter(|a| a[2] == i[0]) {
                    add(corc, vec![&a[0], &a[1], &i[1], &a[3]]);
                }
                for a in of(ctx).into_iter().filter(|a| a[0] == i[0]) {
                    add(ctx, vec![&i[1], &a[1]]);
                }
            }
            for a in of(ctx) {
                for s in of(IsAC).into_iter().filter(|s| s[0] == a[0]) {
                    add(ctx, vec![&s[1], &a[1]]);
                }
            }
            for pl in of(Play) {
                for e in of(Eic).into_iter().filter(|e| e[1] == pl[2]) {
                    for h in of(player).into_iter().filter(|h| h[0] == pl[0] && h[2] == e[0] && within(&h[4], &pl[3])) {
                        add(player, vec![&pl[0], &pl[1], &pl[2], &h[3], &pl[3]]);
                    }
                }
            }
            for cp in of(CoPlay) {
                for e in of(Eic).into_iter().filter(|e| e[1] == cp[4]) {
                    for h in of(pair)
                        .into_iter()
                        .filter(|h| h[0] == cp[0] && h[1] == cp[1] && h[4] == e[0] && within(&h[6], &cp[5]))
                    {
                        add(pair, vec![&cp[0], &cp[1], &cp[2], &cp[3], &cp[4], &h[5], &cp[5]]);
                    }
                }
            }
            for (embed, needs_instance) in [(Reic, true), (Resc, false)] {
                for m in of(embed) {
                    if needs_instance && !is(&m[2], Sort::InstanceContext) {
                        continue;
                    }
                    for a in of(rc).into_iter().filter(|a| a[0] == m[1] && a[1] == m[0]) {
                        add(rc, vec![&m[3], &m[2], &a[2]]);
                    }
                    for n in of(embed).into_iter().filter(|n| n[0] == m[0] && n[2] == m[2]) {
                        for a in of(corc).into_iter().filter(|a| a[0] == m[1] && a[1] == n[1] && a[2] == m[0]) {
                            add(corc, vec![&m[3], &n[3], &m[2], &a[3]]);
                        }
                    }
                }
            }
        }

        for l1 in of(HasL) {
            for l2 in of(HasL) {
                for t1 in of(HasT).into_iter().filter(|t| t[0] == l1[0]) {
                    for t2 in of(HasT).into_iter().filter(|t| t[0] == l2[0]) {
                        if located(&l1[1], &l2[1]) && within(&t1[1], &t2[1]) {
                            add(Eic, vec![&l1[0], &l2[0]]);
                        }
                    }
                }
            }
        }
        for e in of(Eic) {
            for p1 in of(Play).into_iter().filter(|p| p[2] == e[0]) {
                for p2 in of(Play).into_iter().filter(|p| p[0] == p1[0] && p[2] == e[1] && overlap(&p1[3], &p[3])) {
                    add(Reic, vec![&e[0], &p1[1], &e[1], &p2[1]]);
                }
            }
        }
        for i1 in of(InsC) {
            for i2 in of(InsC) {
                if of(Eic).iter().any(|e| e[0] == i1[0] && e[1] == i2[0]) {
                    add(Esc, vec![&i1[1], &i2[1]]);
                }
                for m in of(Reic).into_iter().filter(|m| m[0] == i1[0] && m[2] == i2[0]) {
                    add(Resc, vec![&i1[1], &m[1], &i2[1], &m[3]]);
                }
            }
        }
        for s in of(Esc) {
            for a in of(IsAC) {
                if a[0] == s[1] {
                    add(Esc, vec![&s[0], &a[1]]);
                }
                if a[0] == s[0] {
                    add(Esc, vec![&a[1], &s[1]]);
                }
            }
        }
        for m in of(Resc) {
            for a in of(IsAR) {
                if a[0] == m[3] {
                    add(Resc, vec![&m[0], &m[1], &m[2], &a[1]]);
                }
                if a[0] == m[1] {
                    add(Resc, vec![&m[0], &a[1], &m[2], &m[3]]);
                }
            }
        }
        for c in of_sort(Sort::InstanceContext) {
            add(Eic, vec![&c, &c]);
        }
        for c in of_sort(Sort::AbstractContext) {
            add(Esc, vec![&c, &c]);
            add(IsAC, vec![&c, &c]);
        }
        for r in of_sort(Sort::Role) {
            add(IsAR, vec![&r, &r]);
        }

        set.extend(out);
        if set.len() == before {
            return set;
        }
    }
}

// ---------------------------------------------------------------------------
// Theorem instances

/// Theorem id and the catalog rule whose removal should break it.
pub const THEOREM_RULES: [(&str, &str); 21] = [
    ("c1", "D43a"),
    ("c2", "D43b"),
    ("c3", "D9"),
    ("c4", "D10"),
    ("c5", "D11"),
    ("c6", "D12"),
    ("c7", "D24"),
    ("c8", "D25"),
    ("c10", "D27"),
    ("c11", "D28"),
    ("c12", "D30"),
    ("c13", "D33"),
    ("c14", "D34"),
    ("c15", "D36"),
    ("c16", "D37"),
    ("c17", "D38"),
    ("c18", "D40a"),
    ("c19", "D40b"),
    ("c20", "D40c"),
    ("c21", "D41"),
    ("c22", "D42"),
];

/// Every instance of c1-c8 and c10-c22 (derivable directions) whose premises
/// hold in `kb` but whose conclusion is absent.
pub fn theorem_counterexamples(kb: &KnowledgeBase) -> Vec<(&'static str, Fact)> {
    use Pred::*;
    let mut missing = Vec::new();
    let mut need = |theorem: &'static str, pred: Pred, args: Vec<&Term>| {
        let f = Fact { pred, args: args.into_iter().cloned().collect() };
        if !kb.contains(&f) {
            missing.push((theorem, f));
        }
    };
    let of = |p: Pred| -> Vec<&Vec<Term>> { kb.facts_of(p).map(|f| &f.args).collect() };
    let entities = |s: Sort| -> Vec<Term> { kb.entities_of(s).map(|e| Term::Entity(e.name.clone())).collect() };
    let is = |t: &Term, s: Sort| kb.has_sort(t, s);

    for c in entities(Sort::AbstractContext) {
        need("c1", IsAC, vec![&c, &c]);
        need("c15", Esc, vec![&c, &c]);
    }
    for r in entities(Sort::Role) {
        need("c2", IsAR, vec![&r, &r]);
    }
    for c in entities(Sort::InstanceContext) {
        need("c10", Eic, vec![&c, &c]);
    }
    for (theorem, pred) in [("c3", IsAC), ("c4", IsAR), ("c11", Eic)] {
        for a in of(pred) {
            for b in of(pred).into_iter().filter(|b| b[0] == a[1]) {
                need(theorem, pred, vec![&a[0], &b[1]]);
            }
        }
    }
    for h in of(HasR) {
        for s in of(IsAR).into_iter().filter(|s| s[0] == h[1]) {
            need("c5", HasR, vec![&h[0], &s[1]]);
        }
        for s in of(IsAC).into_iter().filter(|s| s[0] == h[0]) {
            need("c6", HasR, vec![&s[1], &h[1]]);
        }
        if is(&h[0], Sort::InstanceContext) {
            need("c12", Reic, vec![&h[0], &h[1], &h[0], &h[1]]);
        }
        if is(&h[0], Sort::AbstractContext) {
            need("c18", Resc, vec![&h[0], &h[1], &h[0], &h[1]]);
        }
    }
    for kind in InfoKind::ALL {
        let ctx = Info(kind, InfoLevel::Context);
        let rc = Info(kind, InfoLevel::RoleInContext);
        let corc = Info(kind, InfoLevel::RolePairInContext);
        for i in of(InsC) {
            for a in of(ctx).into_iter().filter(|a| a[0] == i[0]) {
                need("c7", ctx, vec![&i[1], &a[1]]);
            }
        }
        for a in of(ctx) {
            for s in of(IsAC).into_iter().filter(|s| s[0] == a[0]) {
                need("c8", ctx, vec![&s[1], &a[1]]);
            }
        }
        for (embed, single, double) in [(Reic, "c13", "c14"), (Resc, "c21", "c22")] {
            for m in of(embed) {
                if embed == Reic && !is(&m[2], Sort::InstanceContext) {
                    continue;
                }
                for a in of(rc).into_iter().filter(|a| a[0] == m[1] && a[1] == m[0]) {
                    need(single, rc, vec![&m[3], &m[2], &a[2]]);
                }
                for n in of(embed).into_iter().filter(|n| n[0] == m[0] && n[2] == m[2]) {
                    for a in of(corc).into_iter().filter(|a| a[0] == m[1] && a[1] == n[1] && a[2] == m[0]) {
                        need(double, corc, vec![&m[3], &n[3], &m[2], &a[3]]);
                    }
                }
            }
        }
    }
    for s in of(Esc) {
        for a in of(IsAC) {
            if a[0] == s[1] {
                need("c16", Esc, vec![&s[0], &a[1]]);
            }
            if a[0] == s[0] {
                need("c17", Esc, vec![&a[1], &s[1]]);
            }
        }
    }
    for m in of(Resc) {
        for a in of(IsAR) {
            if a[0] == m[3] {
                need("c19", Resc, vec![&m[0], &m[1], &m[2], &a[1]]);
            }
            if a[0] == m[1] {
                need("c20", Resc, vec![&m[0], &a[1], &m[2], &m[3]]);
            }
        }
    }
    missing
}
