//! A second object language of pair-shaped programs, lossless embeddings
//! in both directions, alternating preimage orbits with their bottoms,
//! and the Cantor-Bernstein style isomorphism assembled from them.

use std::fmt;

use crate::eval::{eval, Fuel, Outcome};
use crate::objlang::{build, le, Program, Term};

/// A program of the pair dialect: a pair whose second slot carries the
/// behaviour and whose first slot is free padding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DialectProgram {
    term: Term,
}

/// Rejects terms that cannot be pair-dialect programs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DialectError {
    /// The term has a free variable.
    Open,
    /// The term is not a pair at the root.
    NotPairRooted,
}

impl fmt::Display for DialectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DialectError::Open => write!(f, "dialect programs must be closed"),
            DialectError::NotPairRooted => {
                write!(f, "dialect programs must be pairs at the root")
            }
        }
    }
}

impl std::error::Error for DialectError {}

impl DialectProgram {
    /// Wrap a closed, pair-rooted term.
    pub fn new(term: Term) -> Result<DialectProgram, DialectError> {
        if !term.is_closed() {
            return Err(DialectError::Open);
        }
        if !matches!(term, Term::Pair(_, _)) {
            return Err(DialectError::NotPairRooted);
        }
        Ok(DialectProgram { term })
    }

    /// The underlying term.
    pub fn term(&self) -> &Term {
        &self.term
    }

    /// The underlying term, by value.
    pub fn into_term(self) -> Term {
        self.term
    }
}

/// Run a pair-dialect program: evaluate its second slot on the argument.
pub fn run1(p: &DialectProgram, a: &Term, fuel: Fuel) -> Outcome {
    eval(
        &build::app(build::snd(p.term().clone()), a.clone()),
        fuel,
    )
}

/// The fixed program that applies the second slot of its argument's
/// first component to the second component.
fn snd_run() -> Term {
    build::lam(build::app(
        build::snd(build::fst(Term::Var(0))),
        build::snd(Term::Var(0)),
    ))
}

/// Embed an ordinary program into the pair dialect by duplicating it:
/// the result runs exactly like the original.
pub fn theta01(x: &Program) -> DialectProgram {
    DialectProgram {
        term: build::pair(x.term().clone(), x.term().clone()),
    }
}

/// Embed a pair-dialect program into the ordinary language: the result
/// applies the dialect program's second slot to its own argument.
pub fn theta10(y: &DialectProgram) -> Program {
    let body = build::app(
        snd_run(),
        build::pair(y.term().clone(), Term::Var(0)),
    );
    Program::new(build::lam(body)).expect("embedding a closed term stays closed")
}

/// Invert the duplication embedding: defined exactly on its image.
pub fn inv01(y: &Term) -> Option<Program> {
    let Term::Pair(left, right) = y else { return None };
    if left == right {
        Program::new((**left).clone()).ok()
    } else {
        None
    }
}

/// Invert the application embedding: defined exactly on its image.
pub fn inv10(x: &Term) -> Option<DialectProgram> {
    let Term::Lam(body) = x else { return None };
    let Term::App(runner, arg) = &**body else { return None };
    if **runner != snd_run() {
        return None;
    }
    let Term::Pair(core, var) = &**arg else { return None };
    if **var != Term::Var(0) {
        return None;
    }
    DialectProgram::new((**core).clone()).ok()
}

/// Which language a term is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The ordinary language.
    P0,
    /// The pair dialect.
    P1,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::P0 => Side::P1,
            Side::P1 => Side::P0,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::P0 => write!(f, "p0"),
            Side::P1 => write!(f, "p1"),
        }
    }
}

/// The alternating preimage descent of a term, down to the first term
/// outside both embedding images.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    /// The term the descent started from.
    pub start: Term,
    /// The language the start is read in.
    pub side: Side,
    /// Successive preimages, strictly shrinking, each on the side
    /// opposite its predecessor.
    pub descent: Vec<(Side, Term)>,
    /// The last term reached: not in the image of either embedding.
    pub bottom: Term,
    /// The language the bottom is read in.
    pub bottom_side: Side,
}

/// Strip embeddings one at a time: on the ordinary side undo the
/// application embedding, on the dialect side undo the duplication
/// embedding, until neither applies. Each step shrinks the term, so the
/// descent is finite.
pub fn orbit(x: &Term, side: Side) -> OrbitRecord {
    let mut current = x.clone();
    let mut current_side = side;
    let mut descent = Vec::new();
    loop {
        let preimage = match current_side {
            Side::P0 => inv10(&current).map(DialectProgram::into_term),
            Side::P1 => inv01(&current).map(Program::into_term),
        };
        match preimage {
            Some(t) => {
                current_side = current_side.flip();
                current = t;
                descent.push((current_side, current.clone()));
            }
            None => {
                return OrbitRecord {
                    start: x.clone(),
                    side,
                    descent,
                    bottom: current,
                    bottom_side: current_side,
                };
            }
        }
    }
}

/// Whether an ordinary program's orbit bottoms out in the pair dialect.
pub fn theta0(x: &Program) -> bool {
    orbit(x.term(), Side::P0).bottom_side == Side::P1
}

/// Whether a pair-dialect program's orbit bottoms out in the ordinary
/// language.
pub fn theta1(y: &DialectProgram) -> bool {
    orbit(y.term(), Side::P1).bottom_side == Side::P0
}

/// Translate an ordinary program into the pair dialect: programs whose
/// orbit bottoms out in the dialect are sent back by inversion, the rest
/// are embedded forward. Meaning is preserved either way.
pub fn kappa(x: &Program) -> DialectProgram {
    if theta0(x) {
        inv10(x.term()).expect("a dialect-bottomed program is an embedded dialect program")
    } else {
        theta01(x)
    }
}

/// Translate a pair-dialect program into the ordinary language, the
/// exact inverse of the other direction.
pub fn chi(y: &DialectProgram) -> Program {
    if theta1(y) {
        inv01(y.term()).expect("an ordinary-bottomed program is an embedded ordinary program")
    } else {
        theta10(y)
    }
}

/// The lower adjoint of a strictly monotone builder: the least term a in
/// enumeration order with le(b, f(a)), searched over the first
/// search_bound enumerated terms.
pub fn f_star(
    f: &dyn Fn(&Term) -> Term,
    b: &Term,
    search_bound: usize,
) -> Option<Term> {
    (0..search_bound)
        .map(crate::objlang::nth_term)
        .find(|a| le(b, &f(a)))
}

/// A step that was supposed to shrink its input grew it instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentViolation {
    /// The input of the offending step.
    pub from: Term,
    /// Its image, not below the input.
    pub to: Term,
}

impl fmt::Display for DescentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step result is not below its input")
    }
}

impl std::error::Error for DescentViolation {}

/// Iterate a non-increasing step until it reaches a fixed point, which
/// the well-order guarantees to exist.
pub fn descend_stabilize(
    s: &dyn Fn(&Term) -> Term,
    x: &Term,
) -> Result<Term, DescentViolation> {
    let mut current = x.clone();
    loop {
        let next = s(&current);
        if !le(&next, &current) {
            return Err(DescentViolation { from: current, to: next });
        }
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::run;
    use crate::kernel::{ff, tt};
    use crate::objlang::{nth_term, Enumerator};

    fn f(n: usize) -> Fuel {
        Fuel::new(n)
    }

    fn programs(count: usize) -> Vec<Program> {
        let mut e = Enumerator::new();
        (0..count)
            .map(|n| Program::new(e.nth(n)).expect("enumerated terms are closed"))
            .collect()
    }

    /// Pairs of the first few enumerated terms, in a grid: small
    /// dialect programs of every component shape.
    fn dialect_programs(count: usize) -> Vec<DialectProgram> {
        let mut e = Enumerator::new();
        let components: Vec<Term> = (0..15).map(|n| e.nth(n)).collect();
        let mut out = Vec::new();
        for left in &components {
            for right in &components {
                out.push(
                    DialectProgram::new(build::pair(left.clone(), right.clone()))
                        .expect("pairs of closed terms are dialect programs"),
                );
            }
        }
        assert!(out.len() >= count);
        out.truncate(count);
        out
    }

    #[test]
    fn duplication_preserves_meaning() {
        let fuel = f(10_000);
        for x in programs(30) {
            let direct = run(&x, &tt(), fuel);
            let embedded = run1(&theta01(&x), &tt(), fuel);
            assert!(direct.agrees(&embedded), "{x:?}");
        }
    }

    #[test]
    fn application_embedding_preserves_meaning() {
        let fuel = f(10_000);
        for x in programs(20) {
            let y = theta01(&x);
            let direct = run1(&y, &tt(), fuel);
            let embedded = run(&theta10(&y), &tt(), fuel);
            assert!(direct.agrees(&embedded), "{x:?}");
        }
        let constant = DialectProgram::new(build::pair(tt(), tt())).unwrap();
        let direct = run1(&constant, &ff(), fuel);
        let embedded = run(&theta10(&constant), &ff(), fuel);
        assert!(direct.agrees(&embedded));
    }

    #[test]
    fn embeddings_grow_strictly() {
        for x in programs(50) {
            let up = theta01(&x);
            assert!(le(x.term(), up.term()));
            assert_ne!(x.term(), up.term());
            let back_up = theta10(&up);
            assert!(le(up.term(), back_up.term()));
            assert_ne!(up.term(), back_up.term());
        }
    }

    #[test]
    fn embeddings_are_injective() {
        let images: Vec<Term> = programs(200)
            .iter()
            .map(|x| theta01(x).into_term())
            .collect();
        for (i, a) in images.iter().enumerate() {
            for b in &images[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn inverses_are_exact() {
        for x in programs(50) {
            let up = theta01(&x);
            assert_eq!(inv01(up.term()).as_ref(), Some(&x));
            let back = theta10(&up);
            assert_eq!(inv10(back.term()).as_ref(), Some(&up));
        }
        assert_eq!(inv01(&build::pair(tt(), ff())), None);
        assert_eq!(inv10(&tt()), None);
        assert_eq!(inv10(&build::pair(tt(), tt())), None);
    }

    #[test]
    fn orbits_of_unembedded_terms_are_trivial() {
        for (t, side) in [
            (tt(), Side::P0),
            (build::pair(tt(), ff()), Side::P1),
            (build::lam(Term::Var(0)), Side::P0),
        ] {
            let record = orbit(&t, side);
            assert!(record.descent.is_empty());
            assert_eq!(record.bottom, t);
            assert_eq!(record.bottom_side, side);
        }
    }

    #[test]
    fn orbit_bottoms_are_stable_under_embedding() {
        for x in programs(30) {
            let own = orbit(x.term(), Side::P0);
            let lifted = orbit(theta01(&x).term(), Side::P1);
            assert_eq!(own.bottom, lifted.bottom);
            assert_eq!(own.bottom_side, lifted.bottom_side);
            assert_eq!(lifted.descent.len(), own.descent.len() + 1);
        }
    }

    #[test]
    fn round_trips_lengthen_the_descent_by_two() {
        let base = Program::new(build::lam(Term::Var(0))).unwrap();
        let base_len = orbit(base.term(), Side::P0).descent.len();
        assert_eq!(base_len, 0);
        let mut x = base;
        for k in 1..=3 {
            x = theta10(&theta01(&x));
            let record = orbit(x.term(), Side::P0);
            assert_eq!(record.descent.len(), 2 * k + base_len);
            assert_eq!(record.bottom_side, Side::P0);
        }
    }

    #[test]
    fn descents_shrink_strictly() {
        let deep = theta10(&theta01(&theta10(&theta01(
            &Program::new(tt()).unwrap(),
        ))));
        let record = orbit(deep.term(), Side::P0);
        let mut previous = record.start.size();
        for (_, t) in &record.descent {
            assert!(t.size() < previous);
            previous = t.size();
        }
        assert_eq!(record.bottom, tt());
    }

    #[test]
    fn bottom_tests_match_their_defining_equation() {
        let deepest = |record: &OrbitRecord, side: Side| -> Option<Term> {
            std::iter::once((record.side, record.start.clone()))
                .chain(record.descent.iter().cloned())
                .filter(|(s, _)| *s == side)
                .map(|(_, t)| t)
                .next_back()
        };
        for x in programs(30) {
            let own = orbit(x.term(), Side::P0);
            let lifted = orbit(theta01(&x).term(), Side::P1);
            let d0 = deepest(&own, Side::P0).expect("the start is on this side");
            let d1 = deepest(&lifted, Side::P1).expect("the start is on this side");
            let d1 = DialectProgram::new(d1).expect("dialect-side terms are pairs");
            let per_equation = d0 == *theta10(&d1).term();
            assert_eq!(theta0(&x), per_equation, "{x:?}");
        }
    }

    #[test]
    fn translations_invert_each_other() {
        for x in programs(200) {
            assert_eq!(chi(&kappa(&x)), x);
        }
        for y in dialect_programs(200) {
            assert_eq!(kappa(&chi(&y)), y);
        }
        let wrapped = theta10(&theta01(&Program::new(tt()).unwrap()));
        assert_eq!(chi(&kappa(&wrapped)), wrapped);
    }

    #[test]
    fn translations_preserve_meaning() {
        let fuel = f(10_000);
        let args = [tt(), ff(), build::pair(tt(), ff())];
        let mut checked = 0;
        for (i, x) in programs(50).into_iter().enumerate() {
            let a = &args[i % args.len()];
            let direct = run(&x, a, fuel);
            let translated = run1(&kappa(&x), a, fuel);
            assert!(direct.agrees(&translated), "{x:?}");
            checked += 1;
        }
        assert_eq!(checked, 50);
    }

    #[test]
    fn bottom_tests_complement_each_other_across_embedding() {
        for x in programs(60) {
            let lifted = theta01(&x);
            assert_ne!(theta0(&x), theta1(&lifted), "{x:?}");
        }
    }

    #[test]
    fn equal_bottoms_mark_exactly_the_alternating_families() {
        let bases = [
            Program::new(tt()).unwrap(),
            Program::new(ff()).unwrap(),
            Program::new(build::lam(Term::Var(0))).unwrap(),
        ];
        let mut family_bottoms = Vec::new();
        for base in &bases {
            let mut bottoms = Vec::new();
            let mut x = base.clone();
            for _ in 0..3 {
                let up = theta01(&x);
                bottoms.push(orbit(up.term(), Side::P1).bottom);
                x = theta10(&up);
                bottoms.push(orbit(x.term(), Side::P0).bottom);
            }
            for b in &bottoms {
                assert_eq!(b, base.term());
            }
            family_bottoms.push(bottoms.pop().unwrap());
        }
        for (i, a) in family_bottoms.iter().enumerate() {
            for b in &family_bottoms[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn adjoint_search_matches_constructor_inversion() {
        let dup = |t: &Term| build::pair(t.clone(), t.clone());
        for x in programs(6) {
            let b = dup(x.term());
            let found = f_star(&dup, &b, 500).expect("small programs are in range");
            assert_eq!(Some(&found), inv01(&b).as_ref().map(Program::term));
        }
    }

    #[test]
    fn adjoint_search_satisfies_the_adjunction() {
        let dup = |t: &Term| build::pair(t.clone(), t.clone());
        for b in (0..6).map(nth_term) {
            let star = f_star(&dup, &b, 500).expect("small terms are in range");
            for a in (0..12).map(nth_term) {
                assert_eq!(le(&star, &a), le(&b, &dup(&a)), "{b:?} {a:?}");
            }
        }
    }

    #[test]
    fn adjoint_search_below_the_image_returns_the_least_term() {
        let dup = |t: &Term| build::pair(t.clone(), t.clone());
        let least = nth_term(0);
        assert_eq!(f_star(&dup, &least, 10), Some(least));
    }

    #[test]
    fn stabilization_stops_at_fixed_points() {
        let id = |t: &Term| t.clone();
        let x = theta01(&Program::new(tt()).unwrap()).into_term();
        assert_eq!(descend_stabilize(&id, &x), Ok(x));
    }

    #[test]
    fn stabilization_reaches_orbit_bottoms() {
        let strip = |t: &Term| {
            inv10(t)
                .map(DialectProgram::into_term)
                .or_else(|| inv01(t).map(Program::into_term))
                .unwrap_or_else(|| t.clone())
        };
        for x in programs(30) {
            let deep = theta10(&theta01(&x)).into_term();
            let record = orbit(&deep, Side::P0);
            assert_eq!(descend_stabilize(&strip, &deep), Ok(record.bottom));
        }
    }

    #[test]
    fn stabilization_needs_at_most_size_many_steps() {
        use std::cell::Cell;
        let steps = Cell::new(0usize);
        let strip = |t: &Term| {
            steps.set(steps.get() + 1);
            inv10(t)
                .map(DialectProgram::into_term)
                .or_else(|| inv01(t).map(Program::into_term))
                .unwrap_or_else(|| t.clone())
        };
        let deep = theta10(&theta01(&theta10(&theta01(
            &Program::new(tt()).unwrap(),
        ))))
        .into_term();
        descend_stabilize(&strip, &deep).unwrap();
        assert!(steps.get() <= deep.size());
    }

    #[test]
    fn growing_steps_are_rejected() {
        let grow = |t: &Term| build::pair(t.clone(), t.clone());
        let err = descend_stabilize(&grow, &tt()).unwrap_err();
        assert_eq!(err.from, tt());
    }
}
