//! The object language: term grammar, closedness, serialization, syntactic
//! equality, a decidable well-order, and enumeration of closed terms.
//!
//! Terms are nameless (de Bruijn indices). Nine constructors: variables,
//! abstraction, application, pairing with both projections, the partial
//! evaluation node `Pev`, and the two decidable comparisons `Eq` (syntactic
//! equality) and `Le` (the well-order below).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

/// A term of the object language, with de Bruijn variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// Variable; `Var(0)` is bound by the nearest enclosing `Lam`.
    Var(usize),
    /// Abstraction over one variable.
    Lam(Box<Term>),
    /// Application of a function term to an argument term.
    App(Box<Term>, Box<Term>),
    /// Pair of two terms.
    Pair(Box<Term>, Box<Term>),
    /// First projection.
    Fst(Box<Term>),
    /// Second projection.
    Snd(Box<Term>),
    /// Partial evaluation: specialize the first term on the second.
    Pev(Box<Term>, Box<Term>),
    /// Decidable syntactic equality test, reduced on values.
    Eq(Box<Term>, Box<Term>),
    /// Decidable well-order test, reduced on values.
    Le(Box<Term>, Box<Term>),
}

impl Term {
    /// Total node count; always at least 1.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(b) | Term::Fst(b) | Term::Snd(b) => 1 + b.size(),
            Term::App(a, b)
            | Term::Pair(a, b)
            | Term::Pev(a, b)
            | Term::Eq(a, b)
            | Term::Le(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Fixed rank of the root constructor, the second key of the well-order.
    pub fn tag_rank(&self) -> u8 {
        match self {
            Term::Var(_) => 0,
            Term::Lam(_) => 1,
            Term::App(..) => 2,
            Term::Pair(..) => 3,
            Term::Fst(_) => 4,
            Term::Snd(_) => 5,
            Term::Pev(..) => 6,
            Term::Eq(..) => 7,
            Term::Le(..) => 8,
        }
    }

    /// True when every variable is bound by an enclosing `Lam`.
    pub fn is_closed(&self) -> bool {
        self.closed_under(0)
    }

    fn closed_under(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            Term::Lam(b) => b.closed_under(depth + 1),
            Term::Fst(b) | Term::Snd(b) => b.closed_under(depth),
            Term::App(a, b)
            | Term::Pair(a, b)
            | Term::Pev(a, b)
            | Term::Eq(a, b)
            | Term::Le(a, b) => a.closed_under(depth) && b.closed_under(depth),
        }
    }
}

/// The decidable total well-order on terms: first by size, then by root
/// constructor rank, then lexicographically on children (variable indices
/// compare numerically). Every size class is finite, so strict descent
/// terminates.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.tag_rank().cmp(&other.tag_rank()))
            .then_with(|| match (self, other) {
                (Term::Var(i), Term::Var(j)) => i.cmp(j),
                (Term::Lam(a), Term::Lam(b))
                | (Term::Fst(a), Term::Fst(b))
                | (Term::Snd(a), Term::Snd(b)) => a.cmp(b),
                (Term::App(a1, a2), Term::App(b1, b2))
                | (Term::Pair(a1, a2), Term::Pair(b1, b2))
                | (Term::Pev(a1, a2), Term::Pev(b1, b2))
                | (Term::Eq(a1, a2), Term::Eq(b1, b2))
                | (Term::Le(a1, a2), Term::Le(b1, b2)) => {
                    a1.cmp(b1).then_with(|| a2.cmp(b2))
                }
                _ => unreachable!("equal ranks imply equal constructors"),
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The well-order as a predicate.
pub fn le(a: &Term, b: &Term) -> bool {
    a <= b
}

/// Structural equality of terms.
pub fn eq_syntactic(a: &Term, b: &Term) -> bool {
    a == b
}

/// Shift every free variable of `t` up by `by`.
pub fn shift(t: &Term, by: usize) -> Term {
    shift_above(t, 0, by)
}

fn shift_above(t: &Term, cutoff: usize, by: usize) -> Term {
    match t {
        Term::Var(i) => {
            if *i >= cutoff {
                Term::Var(i + by)
            } else {
                Term::Var(*i)
            }
        }
        Term::Lam(b) => Term::Lam(Box::new(shift_above(b, cutoff + 1, by))),
        Term::Fst(b) => Term::Fst(Box::new(shift_above(b, cutoff, by))),
        Term::Snd(b) => Term::Snd(Box::new(shift_above(b, cutoff, by))),
        Term::App(a, b) => Term::App(
            Box::new(shift_above(a, cutoff, by)),
            Box::new(shift_above(b, cutoff, by)),
        ),
        Term::Pair(a, b) => Term::Pair(
            Box::new(shift_above(a, cutoff, by)),
            Box::new(shift_above(b, cutoff, by)),
        ),
        Term::Pev(a, b) => Term::Pev(
            Box::new(shift_above(a, cutoff, by)),
            Box::new(shift_above(b, cutoff, by)),
        ),
        Term::Eq(a, b) => Term::Eq(
            Box::new(shift_above(a, cutoff, by)),
            Box::new(shift_above(b, cutoff, by)),
        ),
        Term::Le(a, b) => Term::Le(
            Box::new(shift_above(a, cutoff, by)),
            Box::new(shift_above(b, cutoff, by)),
        ),
    }
}

/// Substitute `v` for `Var(depth)` in `t`, decrementing deeper free
/// variables; beta reduction uses `subst(body, 0, arg)`.
pub(crate) fn subst(t: &Term, depth: usize, v: &Term) -> Term {
    match t {
        Term::Var(i) => {
            if *i == depth {
                shift(v, depth)
            } else if *i > depth {
                Term::Var(i - 1)
            } else {
                Term::Var(*i)
            }
        }
        Term::Lam(b) => Term::Lam(Box::new(subst(b, depth + 1, v))),
        Term::Fst(b) => Term::Fst(Box::new(subst(b, depth, v))),
        Term::Snd(b) => Term::Snd(Box::new(subst(b, depth, v))),
        Term::App(a, b) => Term::App(
            Box::new(subst(a, depth, v)),
            Box::new(subst(b, depth, v)),
        ),
        Term::Pair(a, b) => Term::Pair(
            Box::new(subst(a, depth, v)),
            Box::new(subst(b, depth, v)),
        ),
        Term::Pev(a, b) => Term::Pev(
            Box::new(subst(a, depth, v)),
            Box::new(subst(b, depth, v)),
        ),
        Term::Eq(a, b) => Term::Eq(
            Box::new(subst(a, depth, v)),
            Box::new(subst(b, depth, v)),
        ),
        Term::Le(a, b) => Term::Le(
            Box::new(subst(a, depth, v)),
            Box::new(subst(b, depth, v)),
        ),
    }
}

/// A closed term. Only closed terms can be run or specialized, so every
/// builder in this crate produces and consumes `Program`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Program(Term);

/// Error for attempting to treat an open term as a program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenTermError {
    /// The offending term.
    pub term: Term,
}

impl fmt::Display for OpenTermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "term is not closed: {}", self.term)
    }
}

impl std::error::Error for OpenTermError {}

impl Program {
    /// Wrap a closed term; rejects terms with free variables.
    pub fn new(t: Term) -> Result<Program, OpenTermError> {
        if t.is_closed() {
            Ok(Program(t))
        } else {
            Err(OpenTermError { term: t })
        }
    }

    /// The underlying term.
    pub fn term(&self) -> &Term {
        &self.0
    }

    /// Unwrap into the underlying term.
    pub fn into_term(self) -> Term {
        self.0
    }
}

impl std::ops::Deref for Program {
    type Target = Term;

    fn deref(&self) -> &Term {
        &self.0
    }
}

impl TryFrom<Term> for Program {
    type Error = OpenTermError;

    fn try_from(t: Term) -> Result<Program, OpenTermError> {
        Program::new(t)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Internal shortcut for builders whose output is closed by construction.
pub(crate) fn closed(t: Term) -> Program {
    Program::new(t).expect("builder produced an open term")
}

/// Node constructors without the `Box` noise, for building terms by hand.
pub mod build {
    use super::Term;

    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }
    pub fn lam(b: Term) -> Term {
        Term::Lam(Box::new(b))
    }
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }
    pub fn pair(l: Term, r: Term) -> Term {
        Term::Pair(Box::new(l), Box::new(r))
    }
    pub fn fst(t: Term) -> Term {
        Term::Fst(Box::new(t))
    }
    pub fn snd(t: Term) -> Term {
        Term::Snd(Box::new(t))
    }
    pub fn pev(p: Term, x: Term) -> Term {
        Term::Pev(Box::new(p), Box::new(x))
    }
    pub fn eq(a: Term, b: Term) -> Term {
        Term::Eq(Box::new(a), Box::new(b))
    }
    pub fn le(a: Term, b: Term) -> Term {
        Term::Le(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "(var {i})"),
            Term::Lam(b) => write!(f, "(lam {b})"),
            Term::App(a, b) => write!(f, "(app {a} {b})"),
            Term::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Term::Fst(b) => write!(f, "(fst {b})"),
            Term::Snd(b) => write!(f, "(snd {b})"),
            Term::Pev(a, b) => write!(f, "(pev {a} {b})"),
            Term::Eq(a, b) => write!(f, "(eq {a} {b})"),
            Term::Le(a, b) => write!(f, "(le {a} {b})"),
        }
    }
}

/// Canonical S-expression form, no sugar. Inverse of [`parse`].
pub fn print(t: &Term) -> String {
    t.to_string()
}

/// S-expression form that abbreviates recognizable subterms: the boolean
/// constants print as `tt`/`ff`, the canonical divergent term as `omega`,
/// and numerals as `(num N)`. Still accepted by [`parse`].
pub fn print_sugared(t: &Term) -> String {
    if *t == crate::kernel::tt() {
        return "tt".to_string();
    }
    if *t == crate::kernel::ff() {
        return "ff".to_string();
    }
    if *t == crate::kernel::omega() {
        return "omega".to_string();
    }
    if let Some(n) = crate::arith::to_nat(t) {
        return format!("(num {n})");
    }
    match t {
        Term::Var(i) => format!("(var {i})"),
        Term::Lam(b) => format!("(lam {})", print_sugared(b)),
        Term::App(a, b) => format!("(app {} {})", print_sugared(a), print_sugared(b)),
        Term::Pair(a, b) => format!("(pair {} {})", print_sugared(a), print_sugared(b)),
        Term::Fst(b) => format!("(fst {})", print_sugared(b)),
        Term::Snd(b) => format!("(snd {})", print_sugared(b)),
        Term::Pev(a, b) => format!("(pev {} {})", print_sugared(a), print_sugared(b)),
        Term::Eq(a, b) => format!("(eq {} {})", print_sugared(a), print_sugared(b)),
        Term::Le(a, b) => format!("(le {} {})", print_sugared(a), print_sugared(b)),
    }
}

/// Syntax error with the byte offset where parsing failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    /// What went wrong.
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Parse the S-expression grammar. Heads: `var`, `lam`, `app`, `pair`,
/// `fst`, `snd`, `pev`, `eq`, `le`; sugar: `tt`, `ff`, `omega`, `(num N)`,
/// `(church N)`. Whitespace-insensitive.
pub fn parse(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() || c == b'(' || c == b')' {
                break;
            }
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn natural(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let w = self.word();
        if w.is_empty() {
            self.pos = at;
            return Err(self.err("expected a natural number"));
        }
        w.parse().map_err(|_| ParseError {
            pos: at,
            msg: format!("expected a natural number, got `{w}`"),
        })
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() && self.src[self.pos] == b')' {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err("expected `)`"))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Err(self.err("expected a term"));
        }
        if self.src[self.pos] != b'(' {
            let at = self.pos;
            let w = self.word();
            return match w {
                "tt" => Ok(crate::kernel::tt()),
                "ff" => Ok(crate::kernel::ff()),
                "omega" => Ok(crate::kernel::omega()),
                "" => Err(self.err("expected a term")),
                other => Err(ParseError {
                    pos: at,
                    msg: format!("unknown token `{other}`"),
                }),
            };
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let head = self.word();
        use build::*;
        let t = match head {
            "var" => var(self.natural()?),
            "num" => crate::arith::num(self.natural()?),
            "church" => crate::arith::church(self.natural()?),
            "lam" => lam(self.term()?),
            "fst" => fst(self.term()?),
            "snd" => snd(self.term()?),
            "app" => {
                let a = self.term()?;
                app(a, self.term()?)
            }
            "pair" => {
                let a = self.term()?;
                pair(a, self.term()?)
            }
            "pev" => {
                let a = self.term()?;
                pev(a, self.term()?)
            }
            "eq" => {
                let a = self.term()?;
                eq(a, self.term()?)
            }
            "le" => {
                let a = self.term()?;
                le(a, self.term()?)
            }
            other => {
                return Err(ParseError {
                    pos: at,
                    msg: if other.is_empty() {
                        "expected a constructor name".to_string()
                    } else {
                        format!("unknown constructor `{other}`")
                    },
                })
            }
        };
        self.expect_close()?;
        Ok(t)
    }
}

/// Enumerates closed terms in ascending well-order. Memoizes size classes,
/// so keep one around when asking for many terms.
pub struct Enumerator {
    classes: HashMap<(usize, usize), Rc<Vec<Term>>>,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl Enumerator {
    pub fn new() -> Enumerator {
        Enumerator {
            classes: HashMap::new(),
        }
    }

    /// All terms of exactly `size` nodes with free indices below `depth`,
    /// in ascending well-order.
    fn class(&mut self, size: usize, depth: usize) -> Rc<Vec<Term>> {
        if let Some(v) = self.classes.get(&(size, depth)) {
            return Rc::clone(v);
        }
        let mut out: Vec<Term> = Vec::new();
        if size == 1 {
            for i in 0..depth {
                out.push(Term::Var(i));
            }
        } else {
            let body = size - 1;
            let lam_children = self.class(body, depth + 1);
            out.extend(lam_children.iter().cloned().map(build::lam));
            self.binary(&mut out, body, depth, build::app);
            self.binary(&mut out, body, depth, build::pair);
            let unary_children = self.class(body, depth);
            out.extend(unary_children.iter().cloned().map(build::fst));
            out.extend(unary_children.iter().cloned().map(build::snd));
            self.binary(&mut out, body, depth, build::pev);
            self.binary(&mut out, body, depth, build::eq);
            self.binary(&mut out, body, depth, build::le);
        }
        let rc = Rc::new(out);
        self.classes.insert((size, depth), Rc::clone(&rc));
        rc
    }

    fn binary(
        &mut self,
        out: &mut Vec<Term>,
        budget: usize,
        depth: usize,
        make: fn(Term, Term) -> Term,
    ) {
        for left in 1..budget {
            let ls = self.class(left, depth);
            let rs = self.class(budget - left, depth);
            for l in ls.iter() {
                for r in rs.iter() {
                    out.push(make(l.clone(), r.clone()));
                }
            }
        }
    }

    /// The n-th closed term in ascending well-order (0-based).
    pub fn nth(&mut self, n: usize) -> Term {
        let mut seen = 0;
        for size in 1.. {
            let class = self.class(size, 0);
            if n < seen + class.len() {
                return class[n - seen].clone();
            }
            seen += class.len();
        }
        unreachable!()
    }

    /// Position of a closed term in the enumeration; `None` for open terms.
    /// Cost grows with the term's size class, so intended for small terms.
    pub fn rank(&mut self, t: &Term) -> Option<usize> {
        if !t.is_closed() {
            return None;
        }
        let size = t.size();
        let mut seen = 0;
        for s in 1..size {
            seen += self.class(s, 0).len();
        }
        let class = self.class(size, 0);
        class.iter().position(|c| c == t).map(|i| seen + i)
    }
}

/// The n-th closed term in ascending well-order (0-based). One-shot
/// convenience over [`Enumerator`].
pub fn nth_term(n: usize) -> Term {
    Enumerator::new().nth(n)
}

/// Inverse of [`nth_term`] on closed terms; `None` for open terms.
pub fn rank(t: &Term) -> Option<usize> {
    Enumerator::new().rank(t)
}
