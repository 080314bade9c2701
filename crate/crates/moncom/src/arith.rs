//! Natural numbers inside the object language: zero-flagged numerals, the
//! primitive recursion and induction schemas, bounded and unbounded
//! search, loop builders, and Church numerals with their arithmetic.
//!
//! Numerals are lists of falsehoods: zero is Pair(tt, tt) and the
//! successor of n is Pair(ff, n), so the first projection is the zero
//! test and the second projection is the predecessor of a positive
//! numeral.

use crate::eval::{eval, run, Fuel};
use crate::fixpoint::kleene;
use crate::kernel::{ff, tt};
use crate::named::{app, emb, eq, fst, lam, let_, pair, program, snd, v, N};
use crate::objlang::{build, Program, Term};

/// The numeral for `n`.
pub fn num(n: usize) -> Term {
    let mut t = build::pair(tt(), tt());
    for _ in 0..n {
        t = build::pair(ff(), t);
    }
    t
}

/// Read a numeral back, if the term is one.
pub fn to_nat(t: &Term) -> Option<usize> {
    let mut cur = t;
    let mut n = 0;
    loop {
        match cur {
            Term::Pair(flag, rest) => {
                if **flag == tt() {
                    return (**rest == tt()).then_some(n);
                }
                if **flag == ff() {
                    n += 1;
                    cur = rest;
                } else {
                    return None;
                }
            }
            _ => return None,
        }
    }
}

/// n ↦ n + 1.
pub fn succ_p() -> Program {
    program(lam("n", pair(emb(ff()), v("n"))))
}

/// n ↦ n − 1, with pred 0 = 0.
pub fn pred_p() -> Program {
    program(lam(
        "n",
        app(fst(v("n")), pair(v("n"), snd(v("n")))),
    ))
}

/// n ↦ tt if n is zero, ff otherwise.
pub fn iszero_p() -> Program {
    program(lam("n", fst(v("n"))))
}

/// Iteration: the program mapping n to stepⁿ(base). The base must be a
/// value; the dead branch is never evaluated, so the step may diverge on
/// inputs the iteration never reaches.
pub fn induction(base: &Term, step: &Program) -> Program {
    let then_branch = lam("s", emb(base.clone()));
    let else_branch = lam(
        "s",
        app(
            emb(step.term().clone()),
            app(fst(v("s")), snd(snd(v("s")))),
        ),
    );
    kleene(&program(lam(
        "in",
        app(
            app(fst(snd(v("in"))), pair(then_branch, else_branch)),
            v("in"),
        ),
    )))
}

/// Primitive recursion: the program over Pair(n, x) computing g(x) at
/// zero and h(Pair(n−1, Pair(previous, x))) at successors.
pub fn recursion(g: &Program, h: &Program) -> Program {
    let then_branch = lam("s", app(emb(g.term().clone()), snd(snd(v("s")))));
    let else_branch = lam(
        "s",
        let_(
            "m",
            snd(fst(snd(v("s")))),
            let_(
                "prev",
                app(fst(v("s")), pair(v("m"), snd(snd(v("s"))))),
                app(
                    emb(h.term().clone()),
                    pair(v("m"), pair(v("prev"), snd(snd(v("s"))))),
                ),
            ),
        ),
    );
    kleene(&program(lam(
        "in",
        app(
            app(
                fst(fst(snd(v("in")))),
                pair(then_branch, else_branch),
            ),
            v("in"),
        ),
    )))
}

/// Pair(n, x) ↦ n + x.
pub fn add_p() -> Program {
    let g = program(lam("x", v("x")));
    let h = program(lam("w", pair(emb(ff()), fst(snd(v("w"))))));
    recursion(&g, &h)
}

/// Pair(n, m) ↦ n · m.
pub fn mul_p() -> Program {
    let g = program(lam("x", emb(num(0))));
    let h = program(lam(
        "w",
        app(
            emb(add_p().into_term()),
            pair(snd(snd(v("w"))), fst(snd(v("w")))),
        ),
    ));
    recursion(&g, &h)
}

/// Pair(m, n) ↦ m − n, truncated at zero.
pub fn monus_p() -> Program {
    let g = program(lam("x", v("x")));
    let h = program(lam(
        "w",
        let_(
            "p",
            fst(snd(v("w"))),
            app(fst(v("p")), pair(v("p"), snd(v("p")))),
        ),
    ));
    let swapped = recursion(&g, &h);
    program(lam(
        "in",
        app(
            emb(swapped.into_term()),
            pair(snd(v("in")), fst(v("in"))),
        ),
    ))
}

/// n ↦ 0 + 1 + ⋯ + n.
pub fn sigma_p() -> Program {
    let g = program(lam("x", emb(num(0))));
    let h = program(lam(
        "w",
        app(
            emb(add_p().into_term()),
            pair(pair(emb(ff()), fst(v("w"))), fst(snd(v("w")))),
        ),
    ));
    let rec = recursion(&g, &h);
    program(lam("n", app(emb(rec.into_term()), pair(v("n"), emb(tt())))))
}

/// n ↦ ⌊n / 2⌋, by the recursion half(n+1) = n − half(n).
pub fn half_p() -> Program {
    let g = program(lam("x", emb(num(0))));
    let h = program(lam(
        "w",
        app(
            emb(monus_p().into_term()),
            pair(fst(v("w")), fst(snd(v("w")))),
        ),
    ));
    let rec = recursion(&g, &h);
    program(lam("n", app(emb(rec.into_term()), pair(v("n"), emb(tt())))))
}

/// Unbounded search: for `g` over Pair(n, x) returning a numeral, the
/// program mapping x to the least n with g(n, x) = 0, diverging when no
/// such n exists.
pub fn mu(g: &Program) -> Program {
    let search = kleene(&mu_loop(g, None));
    program(lam(
        "x",
        app(emb(search.into_term()), pair(emb(num(0)), v("x"))),
    ))
}

/// Bounded search: as [`mu`], but once n reaches the bound the search
/// stops and returns bound + 1 as an out-of-range marker.
pub fn bounded_mu(bound: usize, g: &Program) -> Program {
    let search = kleene(&mu_loop(g, Some(bound)));
    program(lam(
        "x",
        app(emb(search.into_term()), pair(emb(num(0)), v("x"))),
    ))
}

/// The loop body shared by the two searches: input Pair(self, Pair(n, x)).
fn mu_loop(g: &Program, bound: Option<usize>) -> Program {
    let found = lam("s", fst(snd(v("s"))));
    let advance = lam(
        "s",
        app(
            fst(v("s")),
            pair(
                pair(emb(ff()), fst(snd(v("s")))),
                snd(snd(v("s"))),
            ),
        ),
    );
    let step: N = let_(
        "r",
        app(emb(g.term().clone()), snd(v("in"))),
        app(app(fst(v("r")), pair(found, advance)), v("in")),
    );
    let body = match bound {
        None => step,
        Some(k) => {
            let stop = lam("s", emb(num(k + 1)));
            let go_on = lam("s", with_scrutinee("s", step));
            app(
                app(
                    eq(fst(snd(v("in"))), emb(num(k))),
                    pair(stop, go_on),
                ),
                v("in"),
            )
        }
    };
    program(lam("in", body))
}

/// Rebind a branch body written against the loop input "in" to the branch
/// scrutinee `name`.
fn with_scrutinee(name: &'static str, body: N) -> N {
    let_("in", v(name), body)
}

/// Guarded loop: for boolean `test` and step `h`, both over Pair(a, b),
/// the program iterating a ← h(a, b) while the test holds and returning
/// the final a.
pub fn while_loop(test: &Program, h: &Program) -> Program {
    let again = lam(
        "s",
        app(
            fst(v("s")),
            pair(
                app(emb(h.term().clone()), snd(v("s"))),
                snd(snd(v("s"))),
            ),
        ),
    );
    let done = lam("s", fst(snd(v("s"))));
    kleene(&program(lam(
        "in",
        app(
            app(
                app(emb(test.term().clone()), snd(v("in"))),
                pair(again, done),
            ),
            v("in"),
        ),
    )))
}

/// Fixed-count loop, unrolled at build time: the program over Pair(a, b)
/// applying `h` to Pair(accumulator, b) exactly `count` times.
pub fn for_loop(count: usize, h: &Program) -> Program {
    let mut cur = program(lam("in", fst(v("in"))));
    for _ in 0..count {
        cur = program(lam(
            "in",
            app(
                emb(h.term().clone()),
                pair(app(emb(cur.into_term()), v("in")), snd(v("in"))),
            ),
        ));
    }
    cur
}

/// n ↦ the n-th Fibonacci number (starting 1, 1, 2, …), as the total
/// population of an adults-and-babies colony after n seasons.
pub fn fib_p() -> Program {
    let add = add_p();
    let step = program(lam(
        "w",
        pair(app(emb(add.term().clone()), v("w")), fst(v("w"))),
    ));
    let colony = induction(&build::pair(num(0), num(1)), &step);
    program(lam(
        "n",
        app(
            emb(add.into_term()),
            app(emb(colony.into_term()), v("n")),
        ),
    ))
}

/// The identity on numerals and nothing else: fixes every numeral and
/// diverges on every other value, by searching the numerals for a
/// syntactic match.
pub fn nat_idempotent() -> Program {
    let found = lam("s", snd(snd(v("s"))));
    let advance = lam(
        "s",
        app(
            fst(v("s")),
            pair(
                pair(emb(ff()), fst(snd(v("s")))),
                snd(snd(v("s"))),
            ),
        ),
    );
    let body = app(
        app(
            eq(snd(snd(v("in"))), fst(snd(v("in")))),
            pair(found, advance),
        ),
        v("in"),
    );
    let search = kleene(&program(lam("in", body)));
    crate::eval::pev(&search, &num(0))
}

/// The Church numeral for `n`: a program over Pair(f, a) applying the
/// program f to a, n times.
pub fn church(n: usize) -> Term {
    let mut t = build::lam(build::snd(Term::Var(0)));
    for _ in 0..n {
        t = build::lam(build::app(
            build::fst(Term::Var(0)),
            build::app(t, Term::Var(0)),
        ));
    }
    t
}

/// c ↦ the Church numeral for c + 1, built by specialization.
pub fn church_succ_p() -> Program {
    // (c, (f, a)) ↦ f(c(f, a))
    let body = program(lam(
        "w",
        app(
            fst(snd(v("w"))),
            app(fst(v("w")), snd(v("w"))),
        ),
    ));
    program(lam("c", crate::named::pev(emb(body.into_term()), v("c"))))
}

/// Pair(c, d) ↦ the Church numeral for c + d.
pub fn church_add_p() -> Program {
    // ((c, d), (f, a)) ↦ c(f, d(f, a))
    let body = program(lam(
        "w",
        app(
            fst(fst(v("w"))),
            pair(
                fst(snd(v("w"))),
                app(snd(fst(v("w"))), snd(v("w"))),
            ),
        ),
    ));
    program(lam("cd", crate::named::pev(emb(body.into_term()), v("cd"))))
}

/// Pair(c, d) ↦ the Church numeral for c · d.
pub fn church_mul_p() -> Program {
    // ((d, f), b) ↦ d(f, b): one round of d, with f fixed.
    let round = program(lam(
        "k",
        app(fst(fst(v("k"))), pair(snd(fst(v("k"))), snd(v("k")))),
    ));
    // ((c, d), (f, a)) ↦ c(round specialized to (d, f), a)
    let body = program(lam(
        "w",
        app(
            fst(fst(v("w"))),
            pair(
                crate::named::pev(
                    emb(round.into_term()),
                    pair(snd(fst(v("w"))), fst(snd(v("w")))),
                ),
                snd(snd(v("w"))),
            ),
        ),
    ));
    program(lam("cd", crate::named::pev(emb(body.into_term()), v("cd"))))
}

/// Evaluate a Church numeral to a plain natural by probing it with the
/// successor program on zero.
pub fn church_to_nat(c: &Term, fuel: Fuel) -> Option<usize> {
    let probe = build::app(
        c.clone(),
        build::pair(succ_p().into_term(), num(0)),
    );
    eval(&probe, fuel).value().and_then(to_nat)
}

/// Convenience: run a unary numeric program on a numeral and read the
/// resulting numeral back.
pub fn run_nat(p: &Program, n: usize, fuel: Fuel) -> Option<usize> {
    run(p, &num(n), fuel).value().and_then(to_nat)
}

/// Convenience: run a binary numeric program on a pair of numerals and
/// read the resulting numeral back.
pub fn run_nat2(p: &Program, a: usize, b: usize, fuel: Fuel) -> Option<usize> {
    run(p, &build::pair(num(a), num(b)), fuel)
        .value()
        .and_then(to_nat)
}
