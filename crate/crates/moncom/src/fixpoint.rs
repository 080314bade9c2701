//! Fixpoint constructions: Kleene fixpoints of binary programs,
//! endo-fixpoints, fixpoints of program transformers, the three fixpoint
//! combinators with their classifiers, mutually recursive program systems
//! of any width, state-indexed fixpoints, and a small three-account ledger
//! built as a mutually recursive system.

use crate::eval::pev;
use crate::named::{app, emb, eq, fst, lam, let_, pair, pev as npev, program, snd, v};
use crate::objlang::{Program, Term};

/// Right-nested tuple of terms with the truth value as terminator.
pub fn tuple(items: &[Term]) -> Term {
    items.iter().rev().fold(crate::kernel::tt(), |acc, t| {
        crate::objlang::build::pair(t.clone(), acc)
    })
}

/// The Kleene fixpoint of a binary program: for `g` expecting
/// `Pair(p, y)`, returns Γ with run(Γ, y) ≡ run(g, Pair(Γ, y)). The
/// unfolding is syntactically exact: after a constant number of steps the
/// left side literally becomes the right side.
pub fn kleene(g: &Program) -> Program {
    let ghat = program(lam(
        "in",
        app(
            emb(g.term().clone()),
            pair(npev(fst(v("in")), fst(v("in"))), snd(v("in"))),
        ),
    ));
    pev(&ghat, ghat.term())
}

/// The self-application fixpoint of an endofunction program: the term
/// Ω_E Ω_E with run(Ω_E, x) = run(E, x x). Satisfies
/// eval(result) ≡ eval(App(E, result)); under call-by-value both sides
/// typically diverge, which is the point.
pub fn endo_fix(e: &Program) -> Term {
    let om = crate::objlang::build::lam(crate::objlang::build::app(
        e.term().clone(),
        crate::objlang::build::app(Term::Var(0), Term::Var(0)),
    ));
    crate::objlang::build::app(om.clone(), om)
}

/// Extensional fixpoint of a program transformer, given as a program
/// mapping programs to programs: returns Γ with
/// run(Γ, a) ≡ run(γ(Γ), a), built as the Kleene fixpoint of
/// g(p, x) = run(γ(p), x).
pub fn transformer_fix(gamma: &Program) -> Program {
    let g = program(lam(
        "in",
        app(
            app(emb(gamma.term().clone()), fst(v("in"))),
            snd(v("in")),
        ),
    ));
    kleene(&g)
}

/// Which fixpoint combinator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpsilonKind {
    /// Produces a value fixed by the program: {p}(υ(p)) ≡ υ(p).
    Dot,
    /// Produces a program absorbing the outer composite:
    /// {p}∘{υ(p)} ≡ {υ(p)}.
    Ddot,
    /// Produces Kleene fixpoints: {p}(υ(p), x) ≡ {υ(p)}(x).
    Dddot,
}

/// Program for (y, p) ↦ {p}({y} p), input `Pair(y, p)`.
fn classifier_body_dot() -> Program {
    program(lam(
        "w",
        app(snd(v("w")), app(fst(v("w")), snd(v("w")))),
    ))
}

/// Program for ((y, p), x) ↦ {p}({{y} p} x), input `Pair(Pair(y,p), x)`.
fn classifier_body_ddot() -> Program {
    program(lam(
        "w",
        app(
            snd(fst(v("w"))),
            app(app(fst(fst(v("w"))), snd(fst(v("w")))), snd(v("w"))),
        ),
    ))
}

/// Program for ((y, p), x) ↦ {p}({y} p, x), input `Pair(Pair(y,p), x)`.
fn classifier_body_dddot() -> Program {
    program(lam(
        "w",
        app(
            snd(fst(v("w"))),
            pair(app(fst(fst(v("w"))), snd(fst(v("w")))), snd(v("w"))),
        ),
    ))
}

/// Curried one-step form for the two-stage combinators: y ↦ [body](y, p),
/// input `Pair(y, p)`.
fn classifier_stage(body: &Program) -> Program {
    program(lam("w", npev(emb(body.term().clone()), v("w"))))
}

/// The fixpoint combinator of the requested kind.
///
/// The two-stage kinds are Kleene fixpoints of their classifier stages and
/// converge on every program because the self-reference routes through the
/// specializer. A literal fixpoint for the plain kind would call the
/// program on its own still-unevaluated fixpoint and diverge on every
/// input under call-by-value, so the plain kind instead iterates the
/// program from a fixed seed until the value stabilizes: it converges
/// exactly on programs that reach a fixed value, and the defining law
/// holds as outcome agreement either way.
pub fn upsilon(kind: UpsilonKind) -> Program {
    match kind {
        UpsilonKind::Dot => {
            // loop(self, (p, x)): let y = {p} x in
            //   if y = x then x else {self}(p, y)
            let then_branch = lam("s", snd(snd(fst(v("s")))));
            let else_branch = lam(
                "s",
                app(
                    fst(fst(v("s"))),
                    pair(fst(snd(fst(v("s")))), snd(v("s"))),
                ),
            );
            let loop_g = program(lam(
                "in",
                let_(
                    "y",
                    app(fst(snd(v("in"))), snd(snd(v("in")))),
                    app(
                        app(
                            eq(v("y"), snd(snd(v("in")))),
                            pair(then_branch, else_branch),
                        ),
                        pair(v("in"), v("y")),
                    ),
                ),
            ));
            let stabilize = kleene(&loop_g);
            program(lam(
                "p",
                app(
                    emb(stabilize.into_term()),
                    pair(v("p"), app(v("p"), emb(crate::kernel::tt()))),
                ),
            ))
        }
        UpsilonKind::Ddot => kleene(&classifier_stage(&classifier_body_ddot())),
        UpsilonKind::Dddot => kleene(&classifier_stage(&classifier_body_dddot())),
    }
}

/// The classifier of the requested kind: the program ψ with
/// run(ψ(Υ), p) ≡ run(Υ, p) for Υ the matching combinator.
pub fn classifier(kind: UpsilonKind) -> Program {
    let body = match kind {
        UpsilonKind::Dot => classifier_body_dot(),
        UpsilonKind::Ddot => classifier_stage(&classifier_body_ddot()),
        UpsilonKind::Dddot => classifier_stage(&classifier_body_dddot()),
    };
    program(lam("y", npev(emb(body.into_term()), v("y"))))
}

/// A pair of programs each defined in terms of both: for ternary `g`, `h`
/// over `Pair(p, Pair(q, x))`, returns (G, H) with
/// run(G, x) ≡ run(g, Pair(G, Pair(H, x))) and symmetrically for H.
pub fn smullyan2(g: &Program, h: &Program) -> (Program, Program) {
    // ghat(self, (q, x)) = g([self]q, [q]self, x)
    let ghat = kleene(&program(lam(
        "in",
        app(
            emb(g.term().clone()),
            pair(
                npev(fst(v("in")), fst(snd(v("in")))),
                pair(
                    npev(fst(snd(v("in"))), fst(v("in"))),
                    snd(snd(v("in"))),
                ),
            ),
        ),
    )));
    // hhat(self, (p, y)) = h([p]self, [self]p, y)
    let hhat = kleene(&program(lam(
        "in",
        app(
            emb(h.term().clone()),
            pair(
                npev(fst(snd(v("in"))), fst(v("in"))),
                pair(
                    npev(fst(v("in")), fst(snd(v("in")))),
                    snd(snd(v("in"))),
                ),
            ),
        ),
    )));
    let big_g = pev(&ghat, hhat.term());
    let big_h = pev(&hhat, ghat.term());
    (big_g, big_h)
}

/// A system of `n` programs each defined in terms of all of them: for
/// programs `gs[i]` over `Pair(tuple-of-n-programs, x)`, returns programs
/// `G_i` with run(G_i, x) ≡ run(gs[i], Pair(tuple(G_0..G_{n-1}), x)).
/// Tuples are right-nested pairs terminated by tt.
pub fn smullyan_n(gs: &[Program]) -> Vec<Program> {
    use crate::named::N;
    let n = gs.len();
    // Each hat program takes Pair(self, Pair(others, x)) where `others`
    // is the tuple of the other hat programs in index order. Inside, the
    // full system is reassembled by specializing every hat on the tuple
    // of its peers.
    let hat_var = |i: usize, j: usize| -> N {
        if j == i {
            return fst(v("in"));
        }
        let pos = if j < i { j } else { j - 1 };
        let mut cur = fst(snd(v("in")));
        for _ in 0..pos {
            cur = snd(cur);
        }
        fst(cur)
    };
    let ntuple = |items: Vec<N>| -> N {
        items
            .into_iter()
            .rev()
            .fold(emb(crate::kernel::tt()), |acc, t| pair(t, acc))
    };
    let mut hats: Vec<Program> = Vec::with_capacity(n);
    for (i, g) in gs.iter().enumerate() {
        let elems: Vec<N> = (0..n)
            .map(|j| {
                let peers: Vec<N> = (0..n).filter(|k| *k != j).map(|k| hat_var(i, k)).collect();
                npev(hat_var(i, j), ntuple(peers))
            })
            .collect();
        let body = app(
            emb(g.term().clone()),
            pair(ntuple(elems), snd(snd(v("in")))),
        );
        hats.push(kleene(&program(lam("in", body))));
    }
    (0..n)
        .map(|i| {
            let peers: Vec<Term> = (0..n)
                .filter(|j| *j != i)
                .map(|j| hats[j].term().clone())
                .collect();
            pev(&hats[i], &tuple(&peers))
        })
        .collect()
}

/// A state-indexed family of fixpoints: for `g` over
/// `Pair(p, Pair(x, a))`, returns Γ mapping each state x to a program Γx
/// with run(Γx, a) ≡ run(g, Pair(Γx, Pair(x, a))).
pub fn indexed_kleene(g: &Program) -> Program {
    let body = program(lam(
        "in",
        app(
            emb(g.term().clone()),
            pair(npev(fst(v("in")), fst(snd(v("in")))), snd(v("in"))),
        ),
    ));
    let fixed = kleene(&body);
    program(lam("x", npev(emb(fixed.into_term()), v("x"))))
}

/// Three mutually recursive ledger programs over a three-account universe.
pub struct LcuSystem {
    /// Pair(account, Pair(amount, ledger)) → ledger with the amount added.
    pub deposit: Program,
    /// Pair(account, Pair(amount, ledger)) → ledger with the amount
    /// removed, truncated at zero.
    pub withdraw: Program,
    /// Pair(from, Pair(to, Pair(amount, ledger))) → ledger after moving
    /// the amount and recursively charging the receiver half of it as a
    /// fee, paid onward to the third account.
    pub transfer: Program,
}

/// Accounts are the numerals 0, 1, 2; a ledger is
/// Pair(balance0, Pair(balance1, balance2)).
pub fn lcu_ledger(b0: usize, b1: usize, b2: usize) -> Term {
    use crate::arith::num;
    crate::objlang::build::pair(
        num(b0),
        crate::objlang::build::pair(num(b1), num(b2)),
    )
}

/// Read a ledger value back into balances.
pub fn lcu_balances(t: &Term) -> Option<(usize, usize, usize)> {
    use crate::arith::to_nat;
    if let Term::Pair(b0, rest) = t {
        if let Term::Pair(b1, b2) = rest.as_ref() {
            return Some((to_nat(b0)?, to_nat(b1)?, to_nat(b2)?));
        }
    }
    None
}

/// Build the ledger system as a three-program mutually recursive system.
/// The transfer fee is floor-halving, so the recursion bottoms out; a
/// zero-amount transfer leaves the ledger untouched.
pub fn lcu_system() -> LcuSystem {
    use crate::arith::{monus_p, num};
    use crate::named::N;
    let add = crate::arith::add_p();
    let half = crate::arith::half_p();

    // One ledger slot, conditionally updated:
    // ifte(acct = k, op(balance, amount), balance).
    let slot = |k: usize, acct: N, amount: N, balance: N, op: &Program| -> N {
        app(
            eq(acct, emb(num(k))),
            pair(
                app(emb(op.term().clone()), pair(balance.clone(), amount)),
                balance,
            ),
        )
    };
    let ledger_update = |op: &Program| -> Program {
        // Input Pair(system-tuple, Pair(acct, Pair(amount, ledger))).
        let acct = || fst(snd(v("in")));
        let amount = || fst(snd(snd(v("in"))));
        let ledger = || snd(snd(snd(v("in"))));
        program(lam(
            "in",
            pair(
                slot(0, acct(), amount(), fst(ledger()), op),
                pair(
                    slot(1, acct(), amount(), fst(snd(ledger())), op),
                    slot(2, acct(), amount(), snd(snd(ledger())), op),
                ),
            ),
        ))
    };
    let g_deposit = ledger_update(&add);
    let g_withdraw = ledger_update(&monus_p());

    // transfer(from, to, x, ledger):
    //   if x = 0 then ledger
    //   else withdraw(from, x); deposit(to, x); transfer(to, 2, half x)
    let tup = || fst(v("in"));
    let from = || fst(snd(v("in")));
    let to = || fst(snd(snd(v("in"))));
    let amt = || fst(snd(snd(snd(v("in")))));
    let ledger = || snd(snd(snd(snd(v("in")))));
    let dep = |s: N| fst(s);
    let wdr = |s: N| fst(snd(s));
    let tfr = |s: N| fst(snd(snd(s)));
    // Branch programs receive the whole transfer input as scrutinee.
    let s_tup = || fst(v("s"));
    let s_from = || fst(snd(v("s")));
    let s_to = || fst(snd(snd(v("s"))));
    let s_amt = || fst(snd(snd(snd(v("s")))));
    let s_ledger = || snd(snd(snd(snd(v("s")))));
    let then_branch = lam("s", s_ledger());
    let else_branch = lam(
        "s",
        let_(
            "l1",
            app(
                wdr(s_tup()),
                pair(s_from(), pair(s_amt(), s_ledger())),
            ),
            let_(
                "l2",
                app(dep(s_tup()), pair(s_to(), pair(s_amt(), v("l1")))),
                app(
                    tfr(s_tup()),
                    pair(
                        s_to(),
                        pair(
                            emb(num(2)),
                            pair(
                                app(emb(half.term().clone()), s_amt()),
                                v("l2"),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    );
    let g_transfer = program(lam(
        "in",
        app(
            app(
                eq(amt(), emb(num(0))),
                pair(then_branch, else_branch),
            ),
            pair(tup(), pair(from(), pair(to(), pair(amt(), ledger())))),
        ),
    ));

    let programs = smullyan_n(&[g_deposit, g_withdraw, g_transfer]);
    let mut it = programs.into_iter();
    LcuSystem {
        deposit: it.next().unwrap(),
        withdraw: it.next().unwrap(),
        transfer: it.next().unwrap(),
    }
}

// Re-exported convenience: the underlying specializer, so call sites can
// keep fixpoint-flavored code in one import.
pub use crate::eval::pev as specialize;
