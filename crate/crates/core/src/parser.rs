//! The `.sck` fact language: a line-oriented parser with per-statement error
//! recovery, loading into a [`KnowledgeBase`], and canonical serialization.
//!
//! ```text
//! # comment
//! role teacher.
//! player Lucy.
//! instance_context u : University.
//! play(Lucy, teacher, u, [0,9]).
//! ```
//!
//! Statements never span lines. A malformed statement yields one error and
//! the parser resumes on the next line.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::engine::{PatternArg, QueryPattern};
use crate::model::{
    Fact, Interval, KbError, KnowledgeBase, Name, Pred, Provenance, Sort, SortMode, Span, Term,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatementKind {
    Declare { name: Name, sort: Sort },
    /// `instance_context name [: Class]`. The class, when present, is
    /// implicitly an abstract context and contributes an `insC` fact.
    DeclareInstance { name: Name, class: Option<Name> },
    Fact(Fact),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
    pub expected: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct ParseOutput {
    pub statements: Vec<Statement>,
    pub errors: Vec<ParseError>,
}

impl ParseOutput {
    pub fn into_result(self) -> Result<Vec<Statement>, Vec<ParseError>> {
        if self.errors.is_empty() {
            Ok(self.statements)
        } else {
            Err(self.errors)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Var(s) => write!(f, "`?{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: u32,
    end: u32,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes one line, stopping at `#`. Columns are 1-based, end exclusive.
fn lex_line(line: &str) -> Result<Vec<Token>, (u32, u32, String)> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i as u32 + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push(Token { tok, start: col, end: col + 1 });
            i += 1;
            continue;
        }
        let begin = i;
        if is_name_start(c) || c == '?' {
            i += 1;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            let text: String = chars[begin..i].iter().collect();
            let tok = match text.strip_prefix('?') {
                Some("") => return Err((col, col + 1, "expected a variable name after `?`".into())),
                Some(var) => Tok::Var(var.to_string()),
                None => Tok::Ident(text),
            };
            tokens.push(Token { tok, start: col, end: i as u32 + 1 });
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[begin..i].iter().collect();
            let end = i as u32 + 1;
            let n = text
                .parse::<i64>()
                .map_err(|_| (col, end, format!("integer `{text}` out of range")))?;
            tokens.push(Token { tok: Tok::Int(n), start: col, end });
            continue;
        }
        return Err((col, col + 1, format!("unexpected character `{c}`")));
    }
    Ok(tokens)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: u32,
    line_len: u32,
    source: Option<Arc<str>>,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        self.pos += 1;
        tok
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn span(&self, start: u32, end: u32) -> Span {
        Span::new(self.line, start, end).with_source(self.source.clone())
    }

    fn error_at(&self, tok: Option<&Token>, message: String, expected: Option<&str>) -> ParseError {
        let (start, end) = tok.map_or((self.line_len + 1, self.line_len + 2), |t| (t.start, t.end));
        ParseError { span: self.span(start, end), message, expected: expected.map(str::to_string) }
    }

    fn unexpected(&self, tok: Option<&Token>, expected: &str) -> ParseError {
        let found = tok.map_or_else(|| "end of line".to_string(), |t| t.tok.to_string());
        self.error_at(tok, format!("expected {expected}, found {found}"), Some(expected))
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<&'a Token, ParseError> {
        match self.next() {
            Some(t) if t.tok == want => Ok(t),
            other => Err(self.unexpected(other, expected)),
        }
    }

    fn expect_name(&mut self) -> Result<(&'a str, &'a Token), ParseError> {
        match self.next() {
            Some(t @ Token { tok: Tok::Ident(name), .. }) => Ok((name.as_str(), t)),
            other => Err(self.unexpected(other, "a name")),
        }
    }

    /// `"[" INT "," INT "]"`, with the opening bracket already consumed.
    fn interval_rest(&mut self, open: &Token) -> Result<(Interval, u32), ParseError> {
        let start = match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => *n,
            other => return Err(self.malformed_interval(other)),
        };
        match self.next() {
            Some(Token { tok: Tok::Comma, .. }) => {}
            other => return Err(self.malformed_interval(other)),
        }
        let end = match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => *n,
            other => return Err(self.malformed_interval(other)),
        };
        let close = match self.next() {
            Some(t @ Token { tok: Tok::RBracket, .. }) => t,
            other => return Err(self.malformed_interval(other)),
        };
        match Interval::new(start, end) {
            Some(t) => Ok((t, close.end)),
            None => Err(ParseError {
                span: self.span(open.start, close.end),
                message: format!("malformed interval: start {start} exceeds end {end}"),
                expected: Some("start <= end".into()),
            }),
        }
    }

    fn malformed_interval(&self, tok: Option<&Token>) -> ParseError {
        let found = tok.map_or_else(|| "end of line".to_string(), |t| t.tok.to_string());
        self.error_at(
            tok,
            format!("malformed interval: found {found}"),
            Some("an interval `[start,end]`"),
        )
    }

    /// `PRED "(" arg {"," arg} ")"`, with each argument kept beside its token.
    fn atom(&mut self, allow_vars: bool) -> Result<(Pred, Vec<(PatternArg, Token)>), ParseError> {
        let (name, name_tok) = self.expect_name()?;
        let pred: Pred = name.parse().map_err(|_| {
            self.error_at(Some(name_tok), format!("unknown predicate `{name}`"), Some("a predicate name"))
        })?;
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        loop {
            let tok = self.next();
            let arg = match tok {
                Some(Token { tok: Tok::Ident(n), .. }) => PatternArg::Term(Term::entity(n)),
                Some(Token { tok: Tok::Var(v), .. }) if allow_vars => PatternArg::Var(v.clone()),
                Some(t @ Token { tok: Tok::LBracket, .. }) => {
                    PatternArg::Term(Term::Interval(self.interval_rest(t)?.0))
                }
                other => return Err(self.unexpected(other, "an argument")),
            };
            args.push((arg, tok.expect("matched token").clone()));
            match self.next() {
                Some(Token { tok: Tok::Comma, .. }) => continue,
                Some(t @ Token { tok: Tok::RParen, .. }) => {
                    if args.len() != pred.arity() {
                        return Err(ParseError {
                            span: self.span(name_tok.start, t.end),
                            message: format!(
                                "arity mismatch: {pred} takes {} arguments, found {}",
                                pred.arity(),
                                args.len()
                            ),
                            expected: Some(format!("{} arguments", pred.arity())),
                        });
                    }
                    return Ok((pred, args));
                }
                other => return Err(self.unexpected(other, "`,` or `)`")),
            }
        }
    }
}

/// Parses one or more documents sharing a declaration scope.
#[derive(Debug, Clone, Default)]
pub struct DocumentParser {
    mode: SortMode,
    declared: HashMap<Name, (Sort, Span)>,
}

impl DocumentParser {
    pub fn new(mode: SortMode) -> Self {
        DocumentParser { mode, declared: HashMap::new() }
    }

    pub fn parse(&mut self, text: &str, source: Option<&str>) -> ParseOutput {
        let source: Option<Arc<str>> = source.map(Arc::from);
        let mut out = ParseOutput::default();
        for (index, line) in text.lines().enumerate() {
            let line_no = index as u32 + 1;
            let tokens = match lex_line(line) {
                Ok(tokens) => tokens,
                Err((start, end, message)) => {
                    out.errors.push(ParseError {
                        span: Span::new(line_no, start, end).with_source(source.clone()),
                        message,
                        expected: None,
                    });
                    continue;
                }
            };
            let mut cursor = Cursor {
                tokens: &tokens,
                pos: 0,
                line: line_no,
                line_len: line.chars().count() as u32,
                source: source.clone(),
            };
            while !cursor.at_end() {
                match self.statement(&mut cursor) {
                    Ok(stmt) => out.statements.push(stmt),
                    Err(err) => {
                        out.errors.push(err);
                        break;
                    }
                }
            }
        }
        out
    }

    fn declare(&mut self, name: &str, sort: Sort, span: &Span) -> Result<(), ParseError> {
        match self.declared.get(name) {
            Some((existing, first)) if *existing != sort => Err(ParseError {
                span: span.clone(),
                message: format!(
                    "conflicting declaration: `{name}` declared as {} at {first}, redeclared as {}",
                    existing.keyword(),
                    sort.keyword()
                ),
                expected: Some(existing.keyword().to_string()),
            }),
            Some(_) => Ok(()),
            None => {
                self.declared.insert(Name::from(name), (sort, span.clone()));
                Ok(())
            }
        }
    }

    fn statement(&mut self, cur: &mut Cursor<'_>) -> Result<Statement, ParseError> {
        let first = cur.peek().expect("statement starts with a token");
        let Tok::Ident(word) = &first.tok else {
            return Err(cur.unexpected(Some(first), "a declaration or fact"));
        };
        let next_is_name = matches!(cur.tokens.get(cur.pos + 1), Some(Token { tok: Tok::Ident(_), .. }));

        if word == "instance_context" && next_is_name {
            cur.next();
            let (name, _) = cur.expect_name()?;
            let class = if matches!(cur.peek(), Some(Token { tok: Tok::Colon, .. })) {
                cur.next();
                let (class, _) = cur.expect_name()?;
                Some(class)
            } else {
                None
            };
            let dot = cur.expect(Tok::Dot, "`.`")?;
            let span = cur.span(first.start, dot.end);
            self.declare(name, Sort::InstanceContext, &span)?;
            if let Some(class) = class {
                self.declare(class, Sort::AbstractContext, &span)?;
            }
            return Ok(Statement {
                kind: StatementKind::DeclareInstance { name: Name::from(name), class: class.map(Name::from) },
                span,
            });
        }
        if let (Some(sort), true) = (Sort::from_keyword(word), next_is_name) {
            cur.next();
            let (name, _) = cur.expect_name()?;
            let dot = cur.expect(Tok::Dot, "`.`")?;
            let span = cur.span(first.start, dot.end);
            self.declare(name, sort, &span)?;
            return Ok(Statement { kind: StatementKind::Declare { name: Name::from(name), sort }, span });
        }

        let (pred, args) = cur.atom(false)?;
        let dot = cur.expect(Tok::Dot, "`.`")?;
        let span = cur.span(first.start, dot.end);
        let mut terms = Vec::with_capacity(args.len());
        for (arg, tok) in args {
            let PatternArg::Term(term) = arg else { unreachable!("variables rejected by the lexer path") };
            if let (SortMode::Strict, Term::Entity(name)) = (self.mode, &term) {
                if !self.declared.contains_key(name) {
                    return Err(ParseError {
                        span: cur.span(tok.start, tok.end),
                        message: format!("undeclared entity `{name}`"),
                        expected: Some("a declared name".into()),
                    });
                }
            }
            terms.push(term);
        }
        Ok(Statement { kind: StatementKind::Fact(Fact { pred, args: terms }), span })
    }
}

/// Parses a single document in its own declaration scope.
pub fn parse_document(text: &str, mode: SortMode) -> ParseOutput {
    DocumentParser::new(mode).parse(text, None)
}

fn parse_single_atom(text: &str, allow_vars: bool) -> Result<QueryPattern, ParseError> {
    let line = text.trim_end();
    let tokens = lex_line(line).map_err(|(start, end, message)| ParseError {
        span: Span::new(1, start, end),
        message,
        expected: None,
    })?;
    let mut cur = Cursor { tokens: &tokens, pos: 0, line: 1, line_len: line.chars().count() as u32, source: None };
    let (pred, args) = cur.atom(allow_vars)?;
    if matches!(cur.peek(), Some(Token { tok: Tok::Dot, .. })) {
        cur.next();
    }
    if let Some(extra) = cur.peek() {
        return Err(cur.unexpected(Some(extra), "end of input"));
    }
    Ok(QueryPattern { pred, args: args.into_iter().map(|(a, _)| a).collect() })
}

/// Parses a query atom: fact syntax plus `?name` variables.
pub fn parse_query(text: &str) -> Result<QueryPattern, ParseError> {
    parse_single_atom(text, true)
}

/// Parses a single ground fact (trailing `.` optional).
pub fn parse_fact(text: &str) -> Result<Fact, ParseError> {
    let pattern = parse_single_atom(text, false)?;
    let args = pattern
        .args
        .into_iter()
        .map(|a| match a {
            PatternArg::Term(t) => t,
            PatternArg::Var(_) => unreachable!("variables rejected"),
        })
        .collect();
    Ok(Fact { pred: pattern.pred, args })
}

/// A load failure tied to the statement that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub span: Span,
    pub error: KbError,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.error)?;
        if let KbError::SortConflict { first: Some(first), .. } = &self.error {
            write!(f, " (first declared at {first})")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadError {}

/// Interns every declaration, then asserts every fact with asserted provenance.
pub fn statements_to_kb(statements: &[Statement], mode: SortMode) -> Result<KnowledgeBase, Vec<LoadError>> {
    let mut kb = KnowledgeBase::new(mode);
    let mut errors = Vec::new();
    let mut facts = Vec::new();
    for stmt in statements {
        let span = Some(stmt.span.clone());
        let result = match &stmt.kind {
            StatementKind::Declare { name, sort } => kb.declare_entity(name, *sort, span).map(|_| ()),
            StatementKind::DeclareInstance { name, class } => {
                let declared = kb.declare_entity(name, Sort::InstanceContext, span.clone()).map(|_| ());
                match (declared, class) {
                    (Ok(()), Some(class)) => kb.declare_entity(class, Sort::AbstractContext, span).map(|_| {
                        let insc = Fact {
                            pred: Pred::InsC,
                            args: vec![Term::Entity(name.clone()), Term::Entity(class.clone())],
                        };
                        facts.push((insc, stmt.span.clone()));
                    }),
                    (other, _) => other,
                }
            }
            StatementKind::Fact(fact) => {
                facts.push((fact.clone(), stmt.span.clone()));
                Ok(())
            }
        };
        if let Err(error) = result {
            errors.push(LoadError { span: stmt.span.clone(), error });
        }
    }
    for (fact, span) in facts {
        if let Err(error) = kb.assert_fact(fact, Provenance::Asserted(Some(span.clone()))) {
            errors.push(LoadError { span, error });
        }
    }
    if errors.is_empty() {
        Ok(kb)
    } else {
        Err(errors)
    }
}

/// Canonical text: declarations sorted by name, then facts sorted by
/// predicate and arguments. Only asserted facts unless `with_derived`.
pub fn serialize(kb: &KnowledgeBase, with_derived: bool) -> String {
    let included: Vec<&crate::model::Fact> = if with_derived {
        kb.facts().map(|(_, f)| f).collect()
    } else {
        kb.asserted_facts().collect()
    };

    // One insC per instance context is folded into its declaration.
    let mut classes: BTreeMap<&str, &str> = BTreeMap::new();
    for fact in included.iter().filter(|f| f.pred == Pred::InsC) {
        if let (Some(c), Some(class)) = (fact.args[0].as_entity(), fact.args[1].as_entity()) {
            let slot = classes.entry(c).or_insert(class);
            if **class < **slot {
                *slot = class;
            }
        }
    }

    let mut out = String::new();
    for entity in kb.entities() {
        match (entity.sort, classes.get(&*entity.name)) {
            (Sort::InstanceContext, Some(class)) => {
                out.push_str(&format!("instance_context {} : {}.\n", entity.name, class))
            }
            (sort, _) => out.push_str(&format!("{} {}.\n", sort.keyword(), entity.name)),
        }
    }

    let mut facts: Vec<&Fact> = included
        .into_iter()
        .filter(|f| {
            !(f.pred == Pred::InsC
                && f.args[0].as_entity().zip(f.args[1].as_entity()).is_some_and(|(c, class)| {
                    classes.get(&**c).is_some_and(|chosen| *chosen == &**class)
                }))
        })
        .collect();
    facts.sort();
    if !out.is_empty() && !facts.is_empty() {
        out.push('\n');
    }
    for fact in facts {
        out.push_str(&format!("{fact}.\n"));
    }
    out
}
