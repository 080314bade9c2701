//! The universal evaluator, the partial evaluator, and step accounting.
//!
//! Evaluation is deterministic small-step call-by-value, leftmost-innermost,
//! with an explicit fuel bound so divergence is an observable outcome rather
//! than a hang. Each rule application costs exactly one step.

use crate::objlang::{build, closed, eq_syntactic, le, shift, subst, Program, Term};
use std::fmt;

/// Evaluation budget in rule applications; at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fuel(usize);

impl Fuel {
    /// A budget of `max_steps` rule applications. Panics on 0.
    pub fn new(max_steps: usize) -> Fuel {
        assert!(max_steps >= 1, "fuel must allow at least one step");
        Fuel(max_steps)
    }

    pub fn max_steps(self) -> usize {
        self.0
    }
}

/// The default budget, also used by the command-line driver.
pub const DEFAULT_FUEL: Fuel = Fuel(100_000);

impl Default for Fuel {
    fn default() -> Fuel {
        DEFAULT_FUEL
    }
}

/// Why a term got stuck: the redex was ill-formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StuckReason {
    /// Application whose head value is not an abstraction.
    AppliedNonFunction,
    /// First projection of a non-pair value.
    FstOfNonPair,
    /// Second projection of a non-pair value.
    SndOfNonPair,
}

impl fmt::Display for StuckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StuckReason::AppliedNonFunction => write!(f, "applied a non-function value"),
            StuckReason::FstOfNonPair => write!(f, "first projection of a non-pair value"),
            StuckReason::SndOfNonPair => write!(f, "second projection of a non-pair value"),
        }
    }
}

/// Result of a fuel-bounded evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Reached a value within budget.
    Converged { value: Term, steps: usize },
    /// Budget exhausted; `steps` equals the fuel exactly.
    Diverged { steps: usize },
    /// Reached an irreducible non-value; `at` is the offending redex.
    Stuck { reason: StuckReason, at: Term },
}

impl Outcome {
    /// The converged value, if any.
    pub fn value(&self) -> Option<&Term> {
        match self {
            Outcome::Converged { value, .. } => Some(value),
            _ => None,
        }
    }

    /// The converged value, consuming the outcome. Panics otherwise; the
    /// message includes the actual outcome.
    pub fn into_value(self) -> Term {
        match self {
            Outcome::Converged { value, .. } => value,
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    pub fn steps(&self) -> Option<usize> {
        match self {
            Outcome::Converged { steps, .. } | Outcome::Diverged { steps } => Some(*steps),
            Outcome::Stuck { .. } => None,
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, Outcome::Converged { .. })
    }

    pub fn is_diverged(&self) -> bool {
        matches!(self, Outcome::Diverged { .. })
    }

    /// Fuel-insensitive agreement: same verdict and same value (or same
    /// stuck reason), step counts ignored. This is the comparison all the
    /// fixpoint-law tests use, where both sides run at equal fuel and
    /// divergence on both counts as agreement.
    pub fn agrees(&self, other: &Outcome) -> bool {
        match (self, other) {
            (
                Outcome::Converged { value: a, .. },
                Outcome::Converged { value: b, .. },
            ) => a == b,
            (Outcome::Diverged { .. }, Outcome::Diverged { .. }) => true,
            (
                Outcome::Stuck { reason: a, .. },
                Outcome::Stuck { reason: b, .. },
            ) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Converged { value, steps } => {
                write!(f, "converged to {value} in {steps} steps")
            }
            Outcome::Diverged { steps } => write!(f, "diverged after {steps} steps"),
            Outcome::Stuck { reason, at } => write!(f, "stuck ({reason}) at {at}"),
        }
    }
}

/// Values: abstractions, pairs of values, and bare variables (the latter
/// never appear at the top level of a closed evaluation).
pub fn is_value(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Lam(_) => true,
        Term::Pair(a, b) => is_value(a) && is_value(b),
        _ => false,
    }
}

enum Step {
    Progressed,
    AlreadyValue,
    Stuck { reason: StuckReason, at: Term },
}

/// Perform one leftmost-innermost reduction in place.
fn step_mut(t: &mut Term) -> Step {
    match t {
        Term::Var(_) | Term::Lam(_) => Step::AlreadyValue,
        Term::Pair(a, b) => match step_mut(a) {
            Step::AlreadyValue => step_mut(b),
            other => other,
        },
        Term::App(f, a) => {
            match step_mut(f) {
                Step::AlreadyValue => {}
                other => return other,
            }
            match step_mut(a) {
                Step::AlreadyValue => {}
                other => return other,
            }
            if let Term::Lam(body) = f.as_mut() {
                *t = subst(body, 0, a);
                Step::Progressed
            } else {
                Step::Stuck {
                    reason: StuckReason::AppliedNonFunction,
                    at: t.clone(),
                }
            }
        }
        Term::Fst(x) => {
            match step_mut(x) {
                Step::AlreadyValue => {}
                other => return other,
            }
            if let Term::Pair(l, _) = x.as_mut() {
                *t = std::mem::replace(l.as_mut(), Term::Var(0));
                Step::Progressed
            } else {
                Step::Stuck {
                    reason: StuckReason::FstOfNonPair,
                    at: t.clone(),
                }
            }
        }
        Term::Snd(x) => {
            match step_mut(x) {
                Step::AlreadyValue => {}
                other => return other,
            }
            if let Term::Pair(_, r) = x.as_mut() {
                *t = std::mem::replace(r.as_mut(), Term::Var(0));
                Step::Progressed
            } else {
                Step::Stuck {
                    reason: StuckReason::SndOfNonPair,
                    at: t.clone(),
                }
            }
        }
        Term::Pev(p, x) => {
            match step_mut(p) {
                Step::AlreadyValue => {}
                other => return other,
            }
            match step_mut(x) {
                Step::AlreadyValue => {}
                other => return other,
            }
            let specialized = build::lam(build::app(
                shift(p, 1),
                build::pair(shift(x, 1), Term::Var(0)),
            ));
            *t = specialized;
            Step::Progressed
        }
        Term::Eq(a, b) => {
            match step_mut(a) {
                Step::AlreadyValue => {}
                other => return other,
            }
            match step_mut(b) {
                Step::AlreadyValue => {}
                other => return other,
            }
            *t = if eq_syntactic(a, b) {
                crate::kernel::tt()
            } else {
                crate::kernel::ff()
            };
            Step::Progressed
        }
        Term::Le(a, b) => {
            match step_mut(a) {
                Step::AlreadyValue => {}
                other => return other,
            }
            match step_mut(b) {
                Step::AlreadyValue => {}
                other => return other,
            }
            *t = if le(a, b) {
                crate::kernel::tt()
            } else {
                crate::kernel::ff()
            };
            Step::Progressed
        }
    }
}

/// Evaluate a closed term, spending at most `fuel` rule applications.
pub fn eval(t: &Term, fuel: Fuel) -> Outcome {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        match step_mut(&mut cur) {
            Step::AlreadyValue => return Outcome::Converged { value: cur, steps },
            Step::Stuck { reason, at } => return Outcome::Stuck { reason, at },
            Step::Progressed => {
                steps += 1;
                if steps == fuel.max_steps() {
                    return if is_value(&cur) {
                        Outcome::Converged { value: cur, steps }
                    } else {
                        Outcome::Diverged { steps }
                    };
                }
            }
        }
    }
}

/// Run a program on an argument: evaluate the application.
pub fn run(p: &Program, a: &Term, fuel: Fuel) -> Outcome {
    eval(&build::app(p.term().clone(), a.clone()), fuel)
}

/// Specialize a program on a known first argument without running it.
/// Total, never consumes fuel, and strictly greater than both inputs in the
/// well-order because it embeds them as proper subterms.
pub fn pev(p: &Program, x: &Term) -> Program {
    debug_assert!(x.is_closed(), "specialization argument must be closed");
    closed(build::lam(build::app(
        p.term().clone(),
        build::pair(x.clone(), Term::Var(0)),
    )))
}

/// Pair two programs into one program.
pub fn pair_prog(p: &Program, q: &Program) -> Program {
    closed(build::pair(p.term().clone(), q.term().clone()))
}

/// Error for projecting from a non-pair value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionError {
    pub at: Term,
}

impl fmt::Display for ProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "projection from a non-pair value: {}", self.at)
    }
}

impl std::error::Error for ProjectionError {}

/// First component of a paired program.
pub fn fst_prog(t: &Term) -> Result<Term, ProjectionError> {
    match t {
        Term::Pair(l, _) => Ok((**l).clone()),
        other => Err(ProjectionError { at: other.clone() }),
    }
}

/// Second component of a paired program.
pub fn snd_prog(t: &Term) -> Result<Term, ProjectionError> {
    match t {
        Term::Pair(_, r) => Ok((**r).clone()),
        other => Err(ProjectionError { at: other.clone() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{ff, omega, tt};
    use crate::objlang::build::{app, fst, lam, pair, pev as pev_node, snd, var};
    use crate::objlang::nth_term;
    use proptest::prelude::*;

    fn f(n: usize) -> Fuel {
        Fuel::new(n)
    }

    #[test]
    fn identity_application() {
        let out = eval(&app(lam(var(0)), tt()), f(10));
        assert_eq!(
            out,
            Outcome::Converged {
                value: tt(),
                steps: 1
            }
        );
    }

    #[test]
    fn self_application_diverges() {
        let d = lam(app(var(0), var(0)));
        let out = eval(&app(d.clone(), d), f(100));
        assert_eq!(out, Outcome::Diverged { steps: 100 });
    }

    #[test]
    fn projection_of_lambda_is_stuck() {
        let out = eval(&fst(lam(var(0))), f(10));
        assert!(matches!(
            out,
            Outcome::Stuck {
                reason: StuckReason::FstOfNonPair,
                ..
            }
        ));
    }

    #[test]
    fn applying_a_pair_is_stuck() {
        let out = eval(&app(pair(tt(), tt()), tt()), f(10));
        assert!(matches!(
            out,
            Outcome::Stuck {
                reason: StuckReason::AppliedNonFunction,
                ..
            }
        ));
    }

    #[test]
    fn projections_reduce_pairs() {
        let t = pair(tt(), ff());
        assert_eq!(eval(&fst(t.clone()), f(5)).into_value(), tt());
        assert_eq!(eval(&snd(t), f(5)).into_value(), ff());
    }

    #[test]
    fn boolean_projections_select() {
        let tt_p = Program::new(tt()).unwrap();
        let ff_p = Program::new(ff()).unwrap();
        let x = lam(lam(var(1)));
        let y = lam(var(0));
        let arg = pair(x.clone(), y.clone());
        assert_eq!(run(&tt_p, &arg, f(10)).into_value(), x);
        assert_eq!(run(&ff_p, &arg, f(10)).into_value(), y);
    }

    #[test]
    fn eq_reduces_to_booleans() {
        use crate::objlang::build::eq;
        assert_eq!(eval(&eq(tt(), tt()), f(5)).into_value(), tt());
        assert_eq!(eval(&eq(tt(), ff()), f(5)).into_value(), ff());
    }

    #[test]
    fn le_reduces_by_the_well_order() {
        use crate::objlang::build::le;
        let small = lam(var(0));
        let big = lam(lam(var(0)));
        assert_eq!(eval(&le(small.clone(), big.clone()), f(5)).into_value(), tt());
        assert_eq!(eval(&le(big, small), f(5)).into_value(), ff());
    }

    #[test]
    fn eq_operands_evaluate_first() {
        use crate::objlang::build::eq;
        let computed = app(lam(var(0)), tt());
        let out = eval(&eq(computed, tt()), f(10));
        assert_eq!(
            out,
            Outcome::Converged {
                value: tt(),
                steps: 2
            }
        );
    }

    #[test]
    fn pev_rule_fires_on_values() {
        let p = lam(var(0));
        let x = tt();
        let out = eval(&pev_node(p.clone(), x.clone()), f(5));
        let expected = lam(app(p, pair(x, var(0))));
        assert_eq!(
            out,
            Outcome::Converged {
                value: expected,
                steps: 1
            }
        );
    }

    #[test]
    fn pev_matches_its_unfolding() {
        let p = Program::new(tt()).unwrap();
        assert_eq!(
            pev(&p, &tt()).into_term(),
            lam(app(tt(), pair(tt(), var(0))))
        );
    }

    #[test]
    fn pev_specializes_pairs() {
        // Running the specialized program equals running the original on
        // the assembled pair, for a handful of enumerated programs.
        let probe = tt();
        for n in [0, 3, 7, 20, 55, 140, 300] {
            let p = Program::new(nth_term(n)).unwrap();
            for xk in [0, 1, 9] {
                let x = nth_term(xk);
                let lhs = run(&pev(&p, &x), &probe, f(500));
                let rhs = run(&p, &pair(x.clone(), probe.clone()), f(500));
                assert!(
                    lhs.agrees(&rhs),
                    "specialization law failed for program {n} on known {xk}: {lhs:?} vs {rhs:?}"
                );
            }
        }
    }

    #[test]
    fn pev_is_strictly_increasing() {
        for n in [0, 5, 17, 99] {
            let p = Program::new(nth_term(n)).unwrap();
            let x = nth_term(n / 2);
            let s = pev(&p, &x);
            assert!(crate::objlang::le(p.term(), s.term()));
            assert_ne!(*p.term(), *s.term());
            assert!(crate::objlang::le(&x, s.term()));
        }
    }

    #[test]
    fn convergence_on_the_exact_fuel_boundary() {
        // One beta step: fuel 1 must report convergence, not divergence.
        let t = app(lam(var(0)), tt());
        assert_eq!(
            eval(&t, f(1)),
            Outcome::Converged {
                value: tt(),
                steps: 1
            }
        );
    }

    #[test]
    fn values_cost_zero_steps() {
        assert_eq!(
            eval(&tt(), f(1)),
            Outcome::Converged {
                value: tt(),
                steps: 0
            }
        );
    }

    #[test]
    fn omega_diverges_at_any_fuel() {
        for n in [1, 10, 1000] {
            assert_eq!(eval(&omega(), f(n)), Outcome::Diverged { steps: n });
        }
    }

    #[test]
    fn paired_programs_project_back() {
        let a = Program::new(lam(var(0))).unwrap();
        let b = Program::new(tt()).unwrap();
        let p = pair_prog(&a, &b);
        assert_eq!(fst_prog(p.term()).unwrap(), *a.term());
        assert_eq!(snd_prog(p.term()).unwrap(), *b.term());
        assert!(fst_prog(&tt()).is_err());
    }

    #[test]
    fn surjective_pairing_on_pair_values() {
        // Pair(Fst z, Snd z) evaluates back to z when z is a pair value.
        let z = pair(tt(), ff());
        let rebuilt = pair(fst(z.clone()), snd(z.clone()));
        assert_eq!(eval(&rebuilt, f(10)).into_value(), z);
    }

    fn arb_program() -> impl Strategy<Value = Program> {
        (0usize..400).prop_map(|n| Program::new(nth_term(n)).unwrap())
    }

    proptest! {
        #[test]
        fn evaluation_is_deterministic(p in arb_program(), n in 0usize..200) {
            let a = run(&p, &nth_term(n), f(300));
            let b = run(&p, &nth_term(n), f(300));
            prop_assert_eq!(a, b);
        }

        #[test]
        fn fuel_is_monotone(p in arb_program(), n in 0usize..200, extra in 1usize..50) {
            let lo = run(&p, &nth_term(n), f(200));
            if let Outcome::Converged { value, steps } = &lo {
                let hi = run(&p, &nth_term(n), f(200 + extra));
                prop_assert_eq!(
                    hi,
                    Outcome::Converged { value: value.clone(), steps: *steps }
                );
            }
        }

        #[test]
        fn converged_results_are_values(p in arb_program(), n in 0usize..200) {
            if let Outcome::Converged { value, steps } = run(&p, &nth_term(n), f(300)) {
                prop_assert!(is_value(&value));
                prop_assert!(steps <= 300);
            }
        }

        #[test]
        fn pev_never_inspects_fuel(p in arb_program(), n in 0usize..200) {
            let x = nth_term(n);
            let s = pev(&p, &x);
            prop_assert!(s.is_closed());
            prop_assert!(crate::objlang::le(p.term(), s.term()));
        }

        #[test]
        fn pev_is_monotone_in_each_argument(a in 0usize..300, b in 0usize..300, x in 0usize..100) {
            let (pa, pb) = (nth_term(a), nth_term(b));
            let known = nth_term(x);
            let sa = pev(&Program::new(pa.clone()).unwrap(), &known);
            let sb = pev(&Program::new(pb.clone()).unwrap(), &known);
            if crate::objlang::le(&pa, &pb) {
                prop_assert!(crate::objlang::le(sa.term(), sb.term()));
            }
        }
    }
}
