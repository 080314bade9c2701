//! Processes as programs with paired state and output, host-level
//! traces, simulation synthesis turning a process into a family of
//! programs, padded executions, and lossless imperative forms.

use crate::eval::{eval, pev as host_pev, run, Fuel, Outcome};
use crate::fixpoint::kleene;
use crate::named::{app, emb, fst, lam, let_, pair, pev as npev, program, snd, v};
use crate::objlang::{build, closed, Program, Term};

/// A program run as a process: run(term, Pair(state, input)) yields
/// Pair(next-state, output) on the inputs it is used with.
#[derive(Clone, Debug)]
pub struct ProcessProgram {
    term: Program,
}

impl ProcessProgram {
    /// Wrap a program with the paired state-and-output contract.
    pub fn new(term: Program) -> Self {
        ProcessProgram { term }
    }

    /// The underlying program.
    pub fn term(&self) -> &Program {
        &self.term
    }
}

/// One observed process step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The state reached by this step.
    pub state: Term,
    /// The input consumed.
    pub input: Term,
    /// The output produced.
    pub output: Term,
}

/// How a trace ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEnd {
    /// Every input was consumed.
    Converged,
    /// A step ran out of fuel.
    FuelExhausted,
    /// A step got stuck or broke the pair contract.
    Stuck,
}

/// The observed steps of a process on an input sequence.
#[derive(Clone, Debug)]
pub struct ProcessTrace {
    /// Steps in order, one per consumed input.
    pub steps: Vec<TraceStep>,
    /// How the trace ended.
    pub terminal: TraceEnd,
}

/// Fold a process over an input sequence from an initial state,
/// recording each reached state and output. Stops early when a step
/// fails to produce a pair or runs out of fuel.
pub fn run_trace(
    q: &ProcessProgram,
    x0: &Term,
    inputs: &[Term],
    fuel: Fuel,
) -> ProcessTrace {
    let mut state = x0.clone();
    let mut steps = Vec::new();
    let mut terminal = TraceEnd::Converged;
    for a in inputs {
        let out = run(q.term(), &build::pair(state.clone(), a.clone()), fuel);
        match out {
            Outcome::Converged { value: Term::Pair(next, output), .. } => {
                steps.push(TraceStep {
                    state: (*next).clone(),
                    input: a.clone(),
                    output: *output,
                });
                state = *next;
            }
            Outcome::Converged { .. } | Outcome::Stuck { .. } => {
                terminal = TraceEnd::Stuck;
                break;
            }
            Outcome::Diverged { .. } => {
                terminal = TraceEnd::FuelExhausted;
                break;
            }
        }
    }
    ProcessTrace { steps, terminal }
}

/// A process compiled to a state-indexed family of programs.
pub struct Simulation {
    qtilde: Program,
}

/// Turn a process into a family of programs, one per state: running the
/// program for state x on input a yields Pair(program-for-next-state, b),
/// where (next-state, b) is the direct process step.
pub fn simulate(q: &ProcessProgram) -> Simulation {
    let g = program(lam(
        "in",
        let_(
            "r",
            app(emb(q.term().term().clone()), snd(v("in"))),
            pair(npev(fst(v("in")), fst(v("r"))), snd(v("r"))),
        ),
    ));
    Simulation { qtilde: kleene(&g) }
}

impl Simulation {
    /// The program underlying the whole family.
    pub fn program(&self) -> &Program {
        &self.qtilde
    }

    /// The family member for state x.
    pub fn at(&self, x: &Term) -> Program {
        host_pev(&self.qtilde, x)
    }

    /// The lossless form for state x: the pair of the state itself and
    /// the family member, so no information about x is erased.
    pub fn lossless_at(&self, x: &Term) -> Program {
        closed(build::pair(x.clone(), self.at(x).into_term()))
    }
}

/// Run a padded program: evaluate the second slot on the argument,
/// leaving the first slot untouched.
pub fn run_padded(f: &Program, a: &Term, fuel: Fuel) -> Outcome {
    eval(
        &build::app(build::snd(f.term().clone()), a.clone()),
        fuel,
    )
}

/// The argument a specialized program captured: programs of the shape
/// produced by specialization apply their source to Pair(captured, input).
pub fn pev_known(t: &Term) -> Option<&Term> {
    let Term::Lam(body) = t else { return None };
    let Term::App(_, arg) = &**body else { return None };
    let Term::Pair(known, var) = &**arg else { return None };
    if **var == Term::Var(0) {
        Some(known)
    } else {
        None
    }
}

/// A process in imperative form: every state is carried visibly through
/// the execution.
pub struct Imperative {
    theta_tilde: Program,
}

/// Build the imperative form of a process: each state x maps to the pair
/// of x itself and a program whose padded execution steps to the
/// imperative form of the next state. Nothing is erased, and the padding
/// renews itself.
pub fn imperative_of(q: &ProcessProgram) -> Imperative {
    let g = program(lam(
        "in",
        let_(
            "r",
            app(emb(q.term().term().clone()), snd(v("in"))),
            pair(
                pair(fst(v("r")), npev(fst(v("in")), fst(v("r")))),
                snd(v("r")),
            ),
        ),
    ));
    Imperative {
        theta_tilde: kleene(&g),
    }
}

impl Imperative {
    /// The program underlying the family.
    pub fn program(&self) -> &Program {
        &self.theta_tilde
    }

    /// The imperative form of state x.
    pub fn at(&self, x: &Term) -> Program {
        closed(build::pair(
            x.clone(),
            host_pev(&self.theta_tilde, x).into_term(),
        ))
    }
}

/// Check that plain evaluation is the output half of a process: embed
/// binary g as the fixed-state process (x, a) ↦ (x, g(x, a)), simulate
/// it, and compare simulated outputs with direct runs on the samples.
/// Divergence and stuckness count as agreement when both sides show them.
pub fn evaluator_from_process_check(
    g: &Program,
    samples: &[(Term, Term)],
    fuel: Fuel,
) -> bool {
    let ghat = ProcessProgram::new(program(lam(
        "w",
        pair(fst(v("w")), app(emb(g.term().clone()), v("w"))),
    )));
    let sim = simulate(&ghat);
    samples.iter().all(|(x, a)| {
        let direct = run(g, &build::pair(x.clone(), a.clone()), fuel);
        let simulated = run(&sim.at(x), a, fuel);
        match (&simulated, &direct) {
            (
                Outcome::Converged { value: Term::Pair(_, out), .. },
                Outcome::Converged { value, .. },
            ) => **out == *value,
            (Outcome::Diverged { .. }, Outcome::Diverged { .. }) => true,
            (Outcome::Stuck { .. }, Outcome::Stuck { .. }) => true,
            _ => false,
        }
    })
}
