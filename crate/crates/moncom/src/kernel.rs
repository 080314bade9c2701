//! Derived logical kit: booleans, eager and lazy branching, connectives,
//! negation by divergence and by swapping, program padding, and the
//! boolean type as an idempotent.

use crate::eval::{run, Fuel, Outcome};
use crate::objlang::{build, closed, shift, Program, Term};
use std::fmt;

/// Truth: the first projection, as a one-argument program over a pair.
pub fn tt() -> Term {
    build::lam(build::fst(Term::Var(0)))
}

/// Falsehood: the second projection.
pub fn ff() -> Term {
    build::lam(build::snd(Term::Var(0)))
}

/// The canonical divergent term: self-application applied to itself.
pub fn omega() -> Term {
    let d = build::lam(build::app(Term::Var(0), Term::Var(0)));
    build::app(d.clone(), d)
}

/// A program that diverges on every input.
pub(crate) fn omega_prog() -> Program {
    closed(build::lam(omega()))
}

/// Eager branch: applies the boolean to the pair of alternatives, so both
/// branches are evaluated before selection under call-by-value.
pub fn ifte(b: Term, x: Term, y: Term) -> Term {
    build::app(b, build::pair(x, y))
}

/// Lazy branch: a program that selects one of the branch programs with the
/// boolean and only then applies it to the argument. The unselected branch
/// is never run. `b` may mention the future argument variable; it is
/// shifted under the new binder.
pub fn iftl(b: &Term, f: &Program, g: &Program) -> Program {
    closed(build::lam(build::app(
        build::app(
            shift(b, 1),
            build::pair(f.term().clone(), g.term().clone()),
        ),
        Term::Var(0),
    )))
}

/// The propositional connectives as programs. `not` takes a boolean;
/// the rest take a pair of booleans.
pub struct Connectives {
    pub not: Program,
    pub and: Program,
    pub or: Program,
    pub implies: Program,
}

/// Build the connectives from branching: and(b,c) selects c or ff,
/// or(b,c) selects tt or c, implies(b,c) selects c or tt, not(b) selects
/// ff or tt.
pub fn connectives() -> Connectives {
    let b = || build::fst(Term::Var(0));
    let c = || build::snd(Term::Var(0));
    Connectives {
        not: closed(build::lam(ifte(Term::Var(0), ff(), tt()))),
        and: closed(build::lam(ifte(b(), c(), ff()))),
        or: closed(build::lam(ifte(b(), tt(), c()))),
        implies: closed(build::lam(ifte(b(), c(), tt()))),
    }
}

/// Negation by divergence: the result converges (to tt) exactly where the
/// predicate converges to ff, and diverges where the predicate holds.
pub fn divergent_negation(q: &Program) -> Program {
    let test = build::app(q.term().clone(), Term::Var(0));
    let branches = build::pair(omega_prog().into_term(), build::lam(tt()));
    closed(build::lam(build::app(
        build::app(test, branches),
        Term::Var(0),
    )))
}

/// Rejected witnesses for [`swap_negation`]: the claimed swap elements do
/// not evaluate to the advertised truth values under the predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidSwapElements {
    TopNotTrue(Outcome),
    BotNotFalse(Outcome),
}

impl fmt::Display for InvalidSwapElements {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidSwapElements::TopNotTrue(o) => {
                write!(f, "predicate is not true on the top element: {o}")
            }
            InvalidSwapElements::BotNotFalse(o) => {
                write!(f, "predicate is not false on the bottom element: {o}")
            }
        }
    }
}

impl std::error::Error for InvalidSwapElements {}

/// Negation by swapping: given elements on which the predicate is true
/// resp. false, build S with q(S(x)) = not(q(x)) wherever q converges.
/// The witnesses are checked by running q at build time.
pub fn swap_negation(
    q: &Program,
    a_top: &Term,
    a_bot: &Term,
    fuel: Fuel,
) -> Result<Program, InvalidSwapElements> {
    let on_top = run(q, a_top, fuel);
    if on_top.value() != Some(&tt()) {
        return Err(InvalidSwapElements::TopNotTrue(on_top));
    }
    let on_bot = run(q, a_bot, fuel);
    if on_bot.value() != Some(&ff()) {
        return Err(InvalidSwapElements::BotNotFalse(on_bot));
    }
    Ok(closed(build::lam(ifte(
        build::app(q.term().clone(), Term::Var(0)),
        a_bot.clone(),
        a_top.clone(),
    ))))
}

/// `n` pairwise distinct programs, each extensionally equivalent to `p`:
/// iterated lazy branches on a constant-true guard, with distinct numerals
/// as the dead branch. Each output embeds its predecessor, so the list is
/// strictly ascending in the well-order.
pub fn pad(p: &Program, n: usize) -> Vec<Program> {
    let mut out = Vec::with_capacity(n);
    let mut cur = p.clone();
    for k in 0..n {
        let junk = closed(crate::arith::num(k));
        cur = iftl(&tt(), &cur, &junk);
        out.push(cur.clone());
    }
    out
}

/// The boolean type as an idempotent program: tt maps to tt, every other
/// value to ff.
pub fn type_idempotent_bool() -> Program {
    closed(build::lam(ifte(
        build::eq(Term::Var(0), tt()),
        tt(),
        ff(),
    )))
}

/// The typing check could not decide within fuel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Indeterminate;

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "typing check ran out of fuel")
    }
}

impl std::error::Error for Indeterminate {}

/// Membership in the type carved out by an idempotent: x has type A when
/// A fixes x. Divergence within fuel is indeterminate; a stuck run is a
/// definite no.
pub fn has_type(x: &Term, a: &Program, fuel: Fuel) -> Result<bool, Indeterminate> {
    match run(a, x, fuel) {
        Outcome::Converged { value, .. } => Ok(value == *x),
        Outcome::Diverged { .. } => Err(Indeterminate),
        Outcome::Stuck { .. } => Ok(false),
    }
}
