//! Programs as data: a pair-and-numeral encoding of terms, a
//! self-interpreter, a specializer working purely on encodings, and the
//! compiler tower obtained by specializing the interpreter.
//!
//! The encoding tags each node with a numeral and carries children as
//! pairs, so encoded programs are ordinary first-order values. The
//! interpreter represents functions as specialized closure programs; the
//! encodings of the two booleans are special-cased back to the canonical
//! terms so that first-order results agree with direct evaluation
//! syntactically, not just behaviorally.

use std::fmt;

use crate::arith::{num, to_nat};
use crate::eval::{is_value, run, Fuel, Outcome};
use crate::fixpoint::kleene;
use crate::kernel::{ff, omega, tt};
use crate::named::{app, emb, eq, fst, lam, le as nle, pair, pev as npev, program, snd, v, N};
use crate::objlang::{build, closed, shift, subst, Program, Term};

/// Encode a term as a first-order value: Pair(tag, payload) with the tag
/// numbering the nine constructors and payloads carrying indices or
/// encoded children.
pub fn rep(t: &Term) -> Term {
    let tagged = |k: usize, payload: Term| build::pair(num(k), payload);
    match t {
        Term::Var(i) => tagged(0, num(*i)),
        Term::Lam(b) => tagged(1, rep(b)),
        Term::App(f, a) => tagged(2, build::pair(rep(f), rep(a))),
        Term::Pair(l, r) => tagged(3, build::pair(rep(l), rep(r))),
        Term::Fst(b) => tagged(4, rep(b)),
        Term::Snd(b) => tagged(5, rep(b)),
        Term::Pev(p, x) => tagged(6, build::pair(rep(p), rep(x))),
        Term::Eq(a, b) => tagged(7, build::pair(rep(a), rep(b))),
        Term::Le(a, b) => tagged(8, build::pair(rep(a), rep(b))),
    }
}

/// A term that is not a valid encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalformedEncoding {
    /// The offending subterm.
    pub at: Term,
}

impl fmt::Display for MalformedEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a term encoding: {}", crate::objlang::print(&self.at))
    }
}

impl std::error::Error for MalformedEncoding {}

/// Decode an encoded term, inverting `rep`.
pub fn decode(r: &Term) -> Result<Term, MalformedEncoding> {
    let err = || MalformedEncoding { at: r.clone() };
    let Term::Pair(tag, payload) = r else {
        return Err(err());
    };
    let tag = to_nat(tag).ok_or_else(err)?;
    let both = |payload: &Term| -> Result<(Term, Term), MalformedEncoding> {
        match payload {
            Term::Pair(a, b) => Ok((decode(a)?, decode(b)?)),
            _ => Err(err()),
        }
    };
    Ok(match tag {
        0 => Term::Var(to_nat(payload).ok_or_else(err)?),
        1 => build::lam(decode(payload)?),
        2 => {
            let (f, a) = both(payload)?;
            build::app(f, a)
        }
        3 => {
            let (l, r) = both(payload)?;
            build::pair(l, r)
        }
        4 => build::fst(decode(payload)?),
        5 => build::snd(decode(payload)?),
        6 => {
            let (p, x) = both(payload)?;
            build::pev(p, x)
        }
        7 => {
            let (a, b) = both(payload)?;
            build::eq(a, b)
        }
        8 => {
            let (a, b) = both(payload)?;
            build::le(a, b)
        }
        _ => return Err(err()),
    })
}

/// Environment lookup: Pair(n, env) ↦ the n-th entry of the nested-pair
/// list env.
fn lookup_p() -> Program {
    let head = lam("s", fst(snd(snd(v("s")))));
    let tail_call = lam(
        "s",
        app(
            fst(v("s")),
            pair(
                snd(fst(snd(v("s")))),
                snd(snd(snd(v("s")))),
            ),
        ),
    );
    kleene(&program(lam(
        "in",
        app(
            app(fst(fst(snd(v("in")))), pair(head, tail_call)),
            v("in"),
        ),
    )))
}

/// Closure bodies: ((interpreter, (body-encoding, env)), argument) ↦
/// interpret the body in env extended with the argument.
fn closure_p() -> Program {
    program(lam(
        "k",
        app(
            fst(fst(v("k"))),
            pair(
                fst(snd(fst(v("k")))),
                pair(snd(v("k")), snd(snd(fst(v("k"))))),
            ),
        ),
    ))
}

/// An interpreter for encoded terms: run(result, Pair(rep(P), a)) agrees
/// with run(P, a) for closed P, at proportionally larger step counts.
///
/// Encoded functions interpret to specialized closure programs except
/// the two boolean encodings, which map back to the canonical terms; so
/// first-order programs (everything returning pairs, numerals, or
/// booleans) reproduce direct results exactly. A tag out of range
/// diverges; a non-pair where an encoding is expected gets stuck.
pub fn self_interpreter() -> Program {
    let lookup = lookup_p();
    let closure = closure_p();
    let rep_tt = rep(&tt());
    let rep_ff = rep(&ff());

    // Case bodies see the whole dispatcher input s = Pair(self, Pair(r, env)).
    let slf = || fst(v("s"));
    let r = || fst(snd(v("s")));
    let env = || snd(snd(v("s")));
    let payload = || snd(fst(snd(v("s"))));
    let interp = |x: N| app(fst(v("s")), pair(x, snd(snd(v("s")))));

    let closure_value = npev(
        emb(closure.into_term()),
        pair(slf(), pair(payload(), env())),
    );
    let lam_case = app(
        eq(r(), emb(rep_tt)),
        pair(
            emb(tt()),
            app(eq(r(), emb(rep_ff)), pair(emb(ff()), closure_value)),
        ),
    );

    let cases: Vec<N> = vec![
        app(emb(lookup.into_term()), pair(payload(), env())),
        lam_case,
        app(interp(fst(payload())), interp(snd(payload()))),
        pair(interp(fst(payload())), interp(snd(payload()))),
        fst(interp(payload())),
        snd(interp(payload())),
        npev(interp(fst(payload())), interp(snd(payload()))),
        eq(interp(fst(payload())), interp(snd(payload()))),
        nle(interp(fst(payload())), interp(snd(payload()))),
    ];

    // Nested lazy dispatch on the tag; branches are functions of s so only
    // the selected case evaluates.
    let mut chain = lam("s", emb(omega()));
    for (tag, body) in cases.into_iter().enumerate().rev() {
        let tag_of = fst(fst(snd(v("s"))));
        chain = lam(
            "s",
            app(
                app(
                    eq(tag_of, emb(num(tag))),
                    pair(lam("s", body), chain),
                ),
                v("s"),
            ),
        );
    }

    let dispatcher = kleene(&program(lam("in", app(chain, v("in")))));

    program(lam(
        "w",
        app(
            app(
                emb(dispatcher.into_term()),
                pair(fst(v("w")), emb(tt())),
            ),
            snd(v("w")),
        ),
    ))
}

/// A specializer on encodings: Pair(rep(P), rep(X)) ↦ rep of the program
/// specializing P to X. Pure pair surgery; nothing is evaluated, so it is
/// total on pairs and gets stuck only on a non-pair input.
pub fn specializer() -> Program {
    program(lam(
        "w",
        pair(
            emb(num(1)),
            pair(
                emb(num(2)),
                pair(
                    fst(v("w")),
                    pair(
                        emb(num(3)),
                        pair(snd(v("w")), pair(emb(num(0)), emb(num(0)))),
                    ),
                ),
            ),
        ),
    ))
}

fn spec_run(r_p: &Term, r_x: &Term, fuel: Fuel) -> Outcome {
    run(
        &specializer(),
        &build::pair(r_p.clone(), r_x.clone()),
        fuel,
    )
}

fn spec_apply(r_p: &Term, r_x: &Term) -> Term {
    spec_run(r_p, r_x, Fuel::default()).into_value()
}

/// Build one level of the compiler tower.
///
/// Sources for the interpreter are encodings, so the static argument fed
/// to the specializer is the encoding of an encoding: compilers eat
/// rep(rep(X)).
///
/// Level 1 specializes the interpreter to the given program: a compiled
/// equivalent of X. Level 2 specializes the specializer to the
/// interpreter: a compiler. Level 3 specializes the specializer to
/// itself: a compiler generator. Level 4 specializes the specializer to
/// the generator; its output sizes and build costs match level 3's, which
/// is the empirical answer to whether a fourth level adds anything.
///
/// Panics when `level` is outside 1..=4 or when level 1 is requested
/// without a program.
pub fn futamura(level: u8, x: Option<&Program>) -> Program {
    let spec_rep = rep(specializer().term());
    let out = match level {
        1 => {
            let x = x.expect("level 1 compiles a given program");
            spec_apply(&rep(self_interpreter().term()), &rep(&rep(x.term())))
        }
        2 => spec_apply(&spec_rep, &rep(&rep(self_interpreter().term()))),
        3 => spec_apply(&spec_rep, &rep(&rep(specializer().term()))),
        4 => {
            let c3 = futamura(3, None);
            spec_apply(&spec_rep, &rep(&rep(c3.term())))
        }
        _ => panic!("levels run 1 through 4"),
    };
    closed(decode(&out).expect("specializer output is a valid encoding"))
}

/// Size and build cost of one tower level.
#[derive(Clone, Copy, Debug)]
pub struct LevelReport {
    /// The tower level, 1 through 4.
    pub level: u8,
    /// Steps the specializer took to build this level.
    pub build_steps: usize,
    /// Node count of the built program.
    pub size: usize,
}

/// Build all four tower levels, recording build costs and sizes. Level 1
/// compiles the given program.
pub fn futamura_report(x: &Program, fuel: Fuel) -> Vec<LevelReport> {
    let sint_rep = rep(self_interpreter().term());
    let spec_rep = rep(specializer().term());
    let statics = [
        rep(&rep(x.term())),
        rep(&rep(self_interpreter().term())),
        rep(&rep(specializer().term())),
        rep(&rep(futamura(3, None).term())),
    ];
    let mut reports = Vec::new();
    for (i, stat) in statics.iter().enumerate() {
        let dynamic = if i == 0 { &sint_rep } else { &spec_rep };
        let out = spec_run(dynamic, stat, fuel);
        let steps = out.steps().unwrap_or(0);
        let size = decode(&out.into_value())
            .expect("specializer output is a valid encoding")
            .size();
        reports.push(LevelReport {
            level: (i + 1) as u8,
            build_steps: steps,
            size,
        });
    }
    reports
}

/// Partially normalize a term without changing how it behaves on any
/// argument. Fires, anywhere in the term including under binders, only
/// rules that are stable under substitution of values for the enclosing
/// binders: application of a function to a value argument, projection
/// from a pair of values, specialization of a pair of values, and
/// comparison of closed values. Each fired rule is one that every run
/// reaching that position would have paid for, so runs of the result
/// take at most as many steps as runs of the input and reach equivalent
/// outcomes. At most `budget` rules fire, and a fire that would grow the
/// term past a fixed multiple of its original size is declined.
pub fn optimize(t: &Term, budget: usize) -> Term {
    let mut fuel = budget;
    let cap = t.size().saturating_mul(64).max(1 << 16);
    let mut cur = t.clone();
    while fuel > 0 {
        let before = fuel;
        cur = pass(&cur, &mut fuel, cap);
        if fuel == before {
            break;
        }
    }
    cur
}

/// One bottom-up sweep. Each position fires at most once per sweep and
/// the sweep does not descend into what a fire produces, so a
/// self-replicating redex (a recursion seed unfolding itself over and
/// over) costs one fire per sweep instead of swallowing the whole
/// budget before productive positions get a turn.
fn pass(t: &Term, fuel: &mut usize, cap: usize) -> Term {
    let mut sub = |x: &Term| Box::new(pass(x, fuel, cap));
    let mut cur = match t {
        Term::Var(_) => t.clone(),
        Term::Lam(b) => Term::Lam(sub(b)),
        Term::App(f, a) => Term::App(sub(f), sub(a)),
        Term::Pair(a, b) => Term::Pair(sub(a), sub(b)),
        Term::Fst(x) => Term::Fst(sub(x)),
        Term::Snd(x) => Term::Snd(sub(x)),
        Term::Pev(p, x) => Term::Pev(sub(p), sub(x)),
        Term::Eq(a, b) => Term::Eq(sub(a), sub(b)),
        Term::Le(a, b) => Term::Le(sub(a), sub(b)),
    };
    if *fuel > 0 {
        if let Some(next) = fire(&cur) {
            if next.size() <= cap {
                *fuel -= 1;
                cur = next;
            }
        }
    }
    cur
}

/// One rule application at the root, or `None` when no rule is safe
/// here. Exactly the evaluator's redexes, restricted to operands whose
/// results cannot change once enclosing binders are substituted away.
fn fire(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) if is_value(a) => {
            let Term::Lam(body) = &**f else { return None };
            Some(subst(body, 0, a))
        }
        Term::Fst(x) => {
            let Term::Pair(l, r) = &**x else { return None };
            (is_value(l) && is_value(r)).then(|| (**l).clone())
        }
        Term::Snd(x) => {
            let Term::Pair(l, r) = &**x else { return None };
            (is_value(l) && is_value(r)).then(|| (**r).clone())
        }
        Term::Pev(p, x) if is_value(p) && is_value(x) => Some(build::lam(
            build::app(shift(p, 1), build::pair(shift(x, 1), Term::Var(0))),
        )),
        Term::Eq(a, b)
            if is_value(a) && is_value(b) && a.is_closed() && b.is_closed() =>
        {
            Some(if a == b { tt() } else { ff() })
        }
        Term::Le(a, b)
            if is_value(a) && is_value(b) && a.is_closed() && b.is_closed() =>
        {
            Some(if crate::objlang::le(a, b) { tt() } else { ff() })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{add_p, succ_p};
    use crate::eval::{eval, pev as host_pev, DEFAULT_FUEL};
    use crate::objlang::{nth_term, Enumerator};

    fn f(n: usize) -> Fuel {
        Fuel::new(n)
    }

    fn prog(t: Term) -> Program {
        Program::new(t).unwrap()
    }

    fn id_p() -> Program {
        prog(build::lam(Term::Var(0)))
    }

    #[test]
    fn encoding_round_trips() {
        assert_eq!(
            decode(&rep(&build::lam(Term::Var(0)))).unwrap(),
            build::lam(Term::Var(0))
        );
        for n in 0..200 {
            let t = nth_term(n);
            assert_eq!(decode(&rep(&t)).unwrap(), t);
        }
    }

    #[test]
    fn encodings_are_closed_values() {
        let r = rep(&tt());
        assert!(r.is_closed());
        assert!(is_value(&r));
        let open = build::lam(build::app(Term::Var(0), Term::Var(1)));
        assert!(rep(&open).is_closed());
    }

    #[test]
    fn encoding_grows_every_term() {
        for n in 0..50 {
            let t = nth_term(7 * n + 1);
            assert!(rep(&t).size() > t.size());
        }
    }

    #[test]
    fn malformed_encodings_are_rejected() {
        for bad in [
            tt(),
            build::pair(num(9), num(0)),
            build::pair(num(2), num(0)),
            build::pair(tt(), tt()),
        ] {
            assert!(decode(&bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn interpreted_identity_returns_its_argument() {
        let sint = self_interpreter();
        let fuel = f(50_000);
        for a in [tt(), num(3), build::pair(tt(), ff())] {
            let out = run(&sint, &build::pair(rep(id_p().term()), a.clone()), fuel);
            assert_eq!(out.into_value(), a);
        }
    }

    #[test]
    fn interpreter_matches_direct_runs() {
        let sint = self_interpreter();
        let fuel = f(200_000);
        let swap = prog(build::lam(build::pair(
            build::snd(Term::Var(0)),
            build::fst(Term::Var(0)),
        )));
        let const_tt = prog(build::lam(tt()));
        let first = prog(build::lam(build::fst(Term::Var(0))));
        let corpus: Vec<(Program, Term)> = vec![
            (id_p(), num(2)),
            (swap, build::pair(num(1), num(2))),
            (const_tt, ff()),
            (first.clone(), build::pair(tt(), num(4))),
            (first, tt()),
            (succ_p(), num(0)),
            (succ_p(), num(3)),
        ];
        for (p, a) in corpus {
            let direct = run(&p, &a, fuel);
            let interpreted =
                run(&sint, &build::pair(rep(p.term()), a.clone()), fuel);
            assert!(
                interpreted.agrees(&direct),
                "{} on {}: direct {direct:?}, interpreted {interpreted:?}",
                crate::objlang::print(p.term()),
                crate::objlang::print(&a),
            );
        }
    }

    #[test]
    fn interpreted_booleans_are_canonical() {
        let sint = self_interpreter();
        let fuel = f(100_000);
        // (x ? ff : tt) interpreted on tt must be the canonical ff.
        let negate = prog(build::lam(build::app(
            Term::Var(0),
            build::pair(ff(), tt()),
        )));
        let out = run(&sint, &build::pair(rep(negate.term()), tt()), fuel);
        assert_eq!(out.into_value(), ff());
        let out = run(&sint, &build::pair(rep(negate.term()), ff()), fuel);
        assert_eq!(out.into_value(), tt());
    }

    #[test]
    fn interpreter_overhead_is_at_least_double() {
        let sint = self_interpreter();
        let fuel = f(200_000);
        for n in 0..4 {
            let direct = run(&succ_p(), &num(n), fuel);
            let interpreted =
                run(&sint, &build::pair(rep(succ_p().term()), num(n)), fuel);
            let d = direct.steps().unwrap();
            let i = interpreted.steps().unwrap();
            assert!(i >= 2 * d, "interpreting succ on {n}: {i} vs {d} steps");
        }
    }

    #[test]
    fn interpreter_diverges_on_unknown_tags() {
        let sint = self_interpreter();
        let bad = build::pair(num(9), num(0));
        let out = run(&sint, &build::pair(bad, tt()), f(5_000));
        assert!(out.is_diverged());
    }

    #[test]
    fn specializer_matches_host_specialization() {
        let corpus: Vec<(Program, Term)> = vec![
            (id_p(), tt()),
            (succ_p(), num(2)),
            (prog(build::lam(build::fst(Term::Var(0)))), num(1)),
        ];
        for (p, x) in corpus {
            let out = spec_apply(&rep(p.term()), &rep(&x));
            let decoded = decode(&out).unwrap();
            assert_eq!(decoded, host_pev(&p, &x).into_term());
        }
    }

    #[test]
    fn specializer_is_total_on_encoded_pairs() {
        let fuel = f(5_000);
        for n in 0..100 {
            let p = nth_term(n);
            let x = nth_term(100 - n);
            let out = spec_run(&rep(&p), &rep(&x), fuel);
            assert!(out.is_converged(), "pair {n}");
        }
    }

    #[test]
    fn specialized_programs_run_like_partial_applications() {
        let add2 = prog(build::lam(build::pair(
            ff(),
            build::pair(ff(), build::snd(Term::Var(0))),
        )));
        let x = num(1);
        let out = spec_apply(&rep(add2.term()), &rep(&x));
        let specialized = prog(decode(&out).unwrap());
        let fuel = f(10_000);
        let got = run(&specialized, &num(4), fuel);
        let want = run(&add2, &build::pair(x, num(4)), fuel);
        assert!(got.agrees(&want));
    }

    #[test]
    fn compiled_programs_match_their_sources() {
        let fuel = f(400_000);
        let corpus: Vec<(Program, Term)> = vec![
            (id_p(), num(1)),
            (succ_p(), num(2)),
            (
                prog(build::lam(build::snd(Term::Var(0)))),
                build::pair(tt(), num(3)),
            ),
        ];
        for (x, a) in corpus {
            let c1 = futamura(1, Some(&x));
            let compiled = run(&c1, &a, fuel);
            let direct = run(&x, &a, fuel);
            assert!(
                compiled.agrees(&direct),
                "compiled {} on {}",
                crate::objlang::print(x.term()),
                crate::objlang::print(&a),
            );
        }
    }

    #[test]
    fn the_compiler_emits_compiled_programs() {
        let c2 = futamura(2, None);
        let x = id_p();
        let out = run(&c2, &rep(&rep(x.term())), f(20_000)).into_value();
        assert_eq!(out, rep(futamura(1, Some(&x)).term()));
    }

    #[test]
    fn the_generator_emits_the_compiler() {
        let c3 = futamura(3, None);
        let out = run(
            &c3,
            &rep(&rep(self_interpreter().term())),
            f(20_000),
        )
        .into_value();
        assert_eq!(out, rep(futamura(2, None).term()));
    }

    #[test]
    fn the_fourth_level_adds_nothing() {
        let x = id_p();
        let reports = futamura_report(&x, DEFAULT_FUEL);
        assert_eq!(reports.len(), 4);
        let c3 = &reports[2];
        let c4 = &reports[3];
        assert!(c4.build_steps <= 2 * c3.build_steps);
        assert!(c4.size > 0);
    }

    #[test]
    fn optimizer_fires_value_applications() {
        let t = build::app(build::lam(Term::Var(0)), tt());
        assert_eq!(optimize(&t, 8), tt());
        let proj = build::fst(build::pair(num(1), num(2)));
        assert_eq!(optimize(&proj, 8), num(1));
        let cmp = build::eq(num(2), num(2));
        assert_eq!(optimize(&cmp, 8), tt());
        let ord = build::le(num(1), num(2));
        assert_eq!(optimize(&ord, 8), tt());
    }

    #[test]
    fn optimizer_respects_the_budget() {
        let t = build::fst(build::pair(
            build::fst(build::pair(tt(), ff())),
            ff(),
        ));
        assert_eq!(optimize(&t, 0), t);
        let one = optimize(&t, 1);
        assert_ne!(one, t);
        assert_ne!(one, tt());
        assert_eq!(optimize(&t, 8), tt());
    }

    #[test]
    fn optimizer_leaves_open_comparisons_alone() {
        let t = build::lam(build::eq(Term::Var(0), tt()));
        assert_eq!(optimize(&t, 8), t);
    }

    /// Outcome agreement that treats function results as black boxes:
    /// converged functions are compared by applying both to a small
    /// battery of arguments, since folding under a binder legitimately
    /// changes a returned closure's syntax without changing what it does.
    fn probe_agree(a: &Outcome, b: &Outcome, fuel: Fuel, depth: usize) -> bool {
        match (a, b) {
            (Outcome::Diverged { .. }, Outcome::Diverged { .. }) => true,
            (
                Outcome::Stuck { reason: x, .. },
                Outcome::Stuck { reason: y, .. },
            ) => x == y,
            (
                Outcome::Converged { value: x, .. },
                Outcome::Converged { value: y, .. },
            ) => value_probe_agree(x, y, fuel, depth),
            _ => false,
        }
    }

    fn value_probe_agree(x: &Term, y: &Term, fuel: Fuel, depth: usize) -> bool {
        if x == y {
            return true;
        }
        match (x, y) {
            (Term::Pair(a1, b1), Term::Pair(a2, b2)) => {
                value_probe_agree(a1, a2, fuel, depth)
                    && value_probe_agree(b1, b2, fuel, depth)
            }
            (Term::Lam(_), Term::Lam(_)) => {
                depth == 0
                    || [tt(), ff(), num(2)].iter().all(|arg| {
                        let l = eval(&build::app(x.clone(), arg.clone()), fuel);
                        let r = eval(&build::app(y.clone(), arg.clone()), fuel);
                        probe_agree(&l, &r, fuel, depth - 1)
                    })
            }
            _ => false,
        }
    }

    #[test]
    fn optimizer_preserves_outcomes() {
        let fuel = f(5_000);
        let mut terms = Enumerator::new();
        for n in 0..100 {
            let t = terms.nth(n);
            let o = optimize(&t, 16);
            assert!(
                probe_agree(&eval(&t, fuel), &eval(&o, fuel), fuel, 2),
                "term {n} changed behavior"
            );
            for a in [tt(), num(1)] {
                let before = eval(&build::app(t.clone(), a.clone()), fuel);
                let after = eval(&build::app(o.clone(), a.clone()), fuel);
                assert!(
                    probe_agree(&before, &after, fuel, 2),
                    "term {n} applied to {a} changed behavior"
                );
                if let (Some(b), Some(s)) = (before.steps(), after.steps()) {
                    assert!(s <= b, "term {n} applied to {a} got slower");
                }
            }
        }
    }

    #[test]
    fn optimized_compiled_programs_run_no_slower() {
        let fuel = f(400_000);
        let x = succ_p();
        let c1 = futamura(1, Some(&x));
        let o = prog(optimize(c1.term(), 64));
        let a = num(1);
        let before = run(&c1, &a, fuel);
        let after = run(&o, &a, fuel);
        assert!(after.agrees(&before));
        assert!(after.steps().unwrap() <= before.steps().unwrap());
    }

    #[test]
    fn optimizer_strictly_speeds_up_compiled_numeral_programs() {
        let fuel = f(400_000);
        for (x, a) in [(succ_p(), num(3)), (add_p(), build::pair(num(2), num(2)))] {
            let c1 = futamura(1, Some(&x));
            let o = prog(optimize(c1.term(), 2_000));
            let before = run(&c1, &a, fuel);
            let after = run(&o, &a, fuel);
            assert!(after.agrees(&before));
            assert!(after.steps().unwrap() < before.steps().unwrap());
        }
    }
}

