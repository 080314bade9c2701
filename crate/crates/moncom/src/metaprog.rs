//! Program composition with a shared parameter, parametric iteration, the
//! hyperoperation tower, and lazily unfolding ordinal streams.

use crate::arith::{induction, mul_p, num, to_nat};
use crate::eval::{eval, run, Fuel, Outcome};
use crate::fixpoint::kleene;
use crate::kernel::tt;
use crate::named::{app, emb, fst, lam, pair, pev as npev, program, snd, v};
use crate::objlang::{build, closed, Program, Term};

/// Sequential composition sharing the parameter: for `f`, `g` over
/// Pair(m, x), the program computing g(m, f(m, x)).
pub fn seq_comp(f: &Program, g: &Program) -> Program {
    program(lam(
        "w",
        app(
            emb(g.term().clone()),
            pair(fst(v("w")), app(emb(f.term().clone()), v("w"))),
        ),
    ))
}

/// Object-level composition seed: specializing this on f and then on g
/// yields the composition f;g as a program value.
/// Input Pair(f, Pair(g, Pair(m, x))).
fn seq3_p() -> Program {
    program(lam(
        "k",
        app(
            fst(snd(v("k"))),
            pair(
                fst(snd(snd(v("k")))),
                app(fst(v("k")), snd(snd(v("k")))),
            ),
        ),
    ))
}

/// Parametric iteration: a program J with run(J, Pair(F, n)) the n-fold
/// composition F;F;…;F sharing the parameter, so
/// run(run(J, Pair(F, n̄)), Pair(m, x)) applies F to (m, ·) n times
/// starting from x. At zero it returns the identity-on-x program exactly.
pub fn param_iter() -> Program {
    let identity_on_x = build::lam(build::snd(Term::Var(0)));
    let then_branch = lam("s", emb(identity_on_x));
    let else_branch = lam(
        "s",
        npev(
            npev(
                emb(seq3_p().into_term()),
                app(
                    fst(v("s")),
                    pair(fst(snd(v("s"))), snd(snd(snd(v("s"))))),
                ),
            ),
            fst(snd(v("s"))),
        ),
    );
    kleene(&program(lam(
        "in",
        app(
            app(
                fst(snd(snd(v("in")))),
                pair(then_branch, else_branch),
            ),
            v("in"),
        ),
    )))
}

/// The hyperoperation tower: a program mapping k̄ to the k-th level,
/// where level 0 is multiplication and level k+1 on (n, m) iterates
/// level k n times from 1 with m as the shared parameter. Levels receive
/// Pair(n̄, m̄) and compute m ↑ᵏ n.
pub fn hyper_p() -> Program {
    // (F, (m, x)) ↦ F(x, m): levels take their iterated slot first.
    let swap = program(lam(
        "k",
        app(
            fst(v("k")),
            pair(snd(snd(v("k"))), fst(snd(v("k")))),
        ),
    ));
    // (F, (n, m)) ↦ (n-fold iterate of the swapped F)(m, 1).
    let wrap = program(lam(
        "in",
        app(
            app(
                emb(param_iter().into_term()),
                pair(
                    npev(emb(swap.into_term()), fst(v("in"))),
                    fst(snd(v("in"))),
                ),
            ),
            pair(snd(snd(v("in"))), emb(num(1))),
        ),
    ));
    let step = program(lam("f", npev(emb(wrap.into_term()), v("f"))));
    induction(&mul_p().into_term(), &step)
}

/// Evaluate level k of the tower on (n, m): the outcome of m ↑ᵏ n.
pub fn ack(k: usize, n: usize, m: usize, fuel: Fuel) -> Outcome {
    let tower = hyper_p();
    let level = match run(&tower, &num(k), fuel) {
        Outcome::Converged { value, .. } => value,
        other => return other,
    };
    eval(
        &build::app(level, build::pair(num(n), num(m))),
        fuel,
    )
}

/// Péter's function by its three defining clauses.
fn peter(k: usize, n: usize) -> usize {
    match (k, n) {
        (0, n) => n + 1,
        (k, 0) => peter(k - 1, 1),
        (k, n) => peter(k - 1, peter(k, n - 1)),
    }
}

/// Check Péter's function against the tower: A(k, n) must equal
/// 2 ↑ᵏ⁻² (n+3) − 3 for k ≥ 2, with the small k read directly off the
/// clauses (A(0, n) = n+1, A(1, n) = n+2).
pub fn peter_check(k: usize, n: usize, fuel: Fuel) -> bool {
    let host = peter(k, n);
    match k {
        0 => host == n + 1,
        1 => host == n + 2,
        _ => {
            let tower = ack(k - 2, n + 3, 2, fuel);
            tower.value().and_then(to_nat) == Some(host + 3)
        }
    }
}

/// How an unfolding stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnfoldEnd {
    /// Every requested level evaluated, or the stream ended on its own.
    Converged,
    /// A level ran out of fuel; the trace is truncated there.
    FuelExhausted,
}

/// The payloads collected by unfolding an ordinal stream.
#[derive(Clone, Debug)]
pub struct UnfoldTrace {
    /// Payloads in unfolding order, at most `depth` of them.
    pub payloads: Vec<Term>,
    /// The requested number of levels.
    pub depth: usize,
    /// How the unfolding stopped.
    pub terminal: UnfoldEnd,
}

/// A closed term whose values unfold as Pair(thunk, payload): running the
/// thunk on a unit argument yields the next such pair, or diverges.
#[derive(Clone, Debug)]
pub struct OrdinalProgram {
    term: Program,
}

impl OrdinalProgram {
    /// Wrap a closed term that unfolds pairwise.
    pub fn new(term: Program) -> Self {
        OrdinalProgram { term }
    }

    /// The underlying closed term.
    pub fn term(&self) -> &Program {
        &self.term
    }
}

/// The stream of σ-iterates: a program S with run(S, x) =
/// Pair(thunk, x), where running the thunk on a unit argument yields
/// run(S, σ(x)). The head stays a suspended program; levels evaluate
/// only on demand.
pub fn stream(sigma: &Program) -> Program {
    // ((self, x), unit) ↦ self(σ(x))
    let delay = program(lam(
        "k",
        app(
            fst(fst(v("k"))),
            app(emb(sigma.term().clone()), snd(fst(v("k")))),
        ),
    ));
    kleene(&program(lam(
        "in",
        pair(npev(emb(delay.into_term()), v("in")), snd(v("in"))),
    )))
}

/// Unfold an ordinal stream `depth` levels, collecting payloads until the
/// stream ends or fuel runs out.
pub fn ordinal_unfold(o: &OrdinalProgram, depth: usize, fuel: Fuel) -> UnfoldTrace {
    let mut payloads = Vec::new();
    let mut current = o.term().term().clone();
    let mut terminal = UnfoldEnd::Converged;
    for _ in 0..depth {
        match eval(&current, fuel) {
            Outcome::Converged { value, .. } => match value {
                Term::Pair(thunk, payload) => {
                    payloads.push(*payload);
                    current = build::app(*thunk, tt());
                }
                _ => break,
            },
            Outcome::Stuck { .. } => break,
            Outcome::Diverged { .. } => {
                terminal = UnfoldEnd::FuelExhausted;
                break;
            }
        }
    }
    UnfoldTrace {
        payloads,
        depth,
        terminal,
    }
}

/// The ordinal ω: the stream of successors unfolding 0̄, 1̄, 2̄, …
pub fn omega() -> OrdinalProgram {
    n_plus_omega(0)
}

/// The ordinal n + ω: the successor stream started at n̄.
pub fn n_plus_omega(n: usize) -> OrdinalProgram {
    let s = stream(&crate::arith::succ_p());
    let value = run(&s, &num(n), Fuel::default()).into_value();
    OrdinalProgram::new(closed(value))
}

/// The ordinal ω + ω: the successor stream started at the value of ω
/// itself.
pub fn omega_plus_omega() -> OrdinalProgram {
    let s = stream(&crate::arith::succ_p());
    let base = run(&s, &num(0), Fuel::default()).into_value();
    let value = run(&s, &base, Fuel::default()).into_value();
    OrdinalProgram::new(closed(value))
}

/// The ordinal ω · n: the successor stream restarted on its own value
/// n − 1 times.
pub fn omega_times(n: usize) -> OrdinalProgram {
    let s = stream(&crate::arith::succ_p());
    let mut value = num(0);
    for _ in 0..n {
        value = run(&s, &value, Fuel::default()).into_value();
    }
    OrdinalProgram::new(closed(value))
}

/// The uniform stream builder: a program mapping each program q to a
/// program behaving as the stream of q-iterates, so run(result(q), x)
/// unfolds x, q(x), q(q(x)), …
pub fn stream_maker() -> Program {
    // ((self, (q, x)), unit) ↦ self(q, q(x))
    let delay = program(lam(
        "k",
        app(
            fst(fst(v("k"))),
            pair(
                fst(snd(fst(v("k")))),
                app(fst(snd(fst(v("k")))), snd(snd(fst(v("k"))))),
            ),
        ),
    ));
    let fixed = kleene(&program(lam(
        "in",
        pair(
            npev(emb(delay.into_term()), v("in")),
            snd(snd(v("in"))),
        ),
    )));
    program(lam("q", npev(emb(fixed.into_term()), v("q"))))
}

/// The ordinal ω²: the stream-of-streams; its payloads are the values of
/// ω, ω·2, … each an unfoldable pair of its own.
pub fn omega_squared() -> OrdinalProgram {
    let w = stream_maker();
    let fuel = Fuel::default();
    let inner = run(&w, crate::arith::succ_p().term(), fuel).into_value();
    let outer = run(&w, &inner, fuel).into_value();
    let value = eval(&build::app(outer, num(0)), fuel).into_value();
    OrdinalProgram::new(closed(value))
}

/// The n-th power of the stream builder: level 0 is the builder itself,
/// and level n+1 maps q to builder(level-n(q)).
pub fn w_power(n: usize) -> Program {
    let w = stream_maker();
    // (prev, q) ↦ builder(prev(q))
    let after = program(lam(
        "k",
        app(
            emb(w.term().clone()),
            app(fst(v("k")), snd(v("k"))),
        ),
    ));
    let step = program(lam("p", npev(emb(after.into_term()), v("p"))));
    let it = induction(w.term(), &step);
    let value = run(&it, &num(n), Fuel::default()).into_value();
    closed(value)
}

/// The tower ordinal: the stream of stream-builder iterates applied to
/// the successor program, whose payloads are ever higher ordinal
/// builders s, w(s), w(w(s)), …
pub fn omega_tower() -> OrdinalProgram {
    let s = stream(&stream_maker());
    let value = run(&s, crate::arith::succ_p().term(), Fuel::default()).into_value();
    OrdinalProgram::new(closed(value))
}
