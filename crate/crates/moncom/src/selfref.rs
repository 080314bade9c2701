//! Quines, self-replicating programs, narcissists, mutual quines, a
//! virus generator, and executable refuters that turn any candidate
//! decision procedure, halting tester, or extensional property into a
//! concrete counterexample.

use std::fmt;

use crate::eval::{run, Fuel, Outcome};
use crate::fixpoint::{indexed_kleene, kleene, smullyan2, transformer_fix};
use crate::kernel::{divergent_negation, ff, swap_negation, tt, InvalidSwapElements};
use crate::named::{app, emb, fst, lam, pair, program, snd, v};
use crate::objlang::{build, closed, print_sugared, Program, Term};

/// A program that outputs its own text: run(result, a) converges to the
/// program itself for every closed a.
pub fn quine() -> Program {
    kleene(&program(lam("w", fst(v("w")))))
}

/// A program that outputs two copies of itself around f of its input:
/// run(result, x) = Pair(result, Pair(result, value of f(x))).
pub fn virus(f: &Program) -> Program {
    kleene(&program(lam(
        "w",
        pair(
            fst(v("w")),
            pair(fst(v("w")), app(emb(f.term().clone()), snd(v("w")))),
        ),
    )))
}

/// A program that turns its argument on itself: run(result, x) agrees
/// with run(x, result).
pub fn narcissist() -> Program {
    kleene(&program(lam("w", app(snd(v("w")), fst(v("w"))))))
}

/// Two programs that each output the other's text.
pub fn mutual_quines() -> (Program, Program) {
    let return_second = program(lam("w", fst(snd(v("w")))));
    let return_first = program(lam("w", fst(v("w"))));
    smullyan2(&return_second, &return_first)
}

/// The object-level generator: a program mapping any program text F to a
/// virus for F.
fn generator_object() -> Program {
    // (p, (f, x)) ↦ ⟨p, p, {f}(x)⟩ where p is the generated virus itself.
    indexed_kleene(&program(lam(
        "w",
        pair(
            fst(v("w")),
            pair(
                fst(v("w")),
                app(fst(snd(v("w"))), snd(snd(v("w")))),
            ),
        ),
    )))
}

/// Build a virus for f by running the object-level generator on f's
/// text. The result satisfies the same replication law as `virus(f)`
/// without being built by the host: the generator constructs it inside
/// the object language.
pub fn virus_generator(f: &Program) -> Program {
    let gamma = generator_object();
    closed(run(&gamma, f.term(), Fuel::default()).into_value())
}

/// The concrete disagreement extracted from a refuted candidate.
#[derive(Clone, Debug)]
pub struct RefutationWitness {
    /// The self-referential program the candidate fails on.
    pub psi: Program,
    /// The input used for the probe runs.
    pub probe_input: Term,
    /// The candidate's boolean claim, or None when it produced no
    /// boolean at the probe fuel.
    pub oracle_verdict: Option<bool>,
    /// What actually happened.
    pub observed: Outcome,
    /// The conflict, spelled out.
    pub contradiction: String,
}

impl fmt::Display for RefutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.oracle_verdict {
            Some(true) => "tt",
            Some(false) => "ff",
            None => "none",
        };
        writeln!(f, "candidate verdict: {verdict}")?;
        writeln!(f, "observed: {:?}", self.observed)?;
        writeln!(f, "probe input: {}", print_sugared(&self.probe_input))?;
        write!(f, "{}", self.contradiction)
    }
}

fn boolean_verdict(out: &Outcome) -> Option<bool> {
    match out.value() {
        Some(value) if *value == tt() => Some(true),
        Some(value) if *value == ff() => Some(false),
        _ => None,
    }
}

/// Refute a claimed decision procedure for program behavior: for binary
/// d over Pair(program, input), builds the program that does the
/// opposite of whatever d says about it, and records the disagreement at
/// the probe.
pub fn refute_decision(d: &Program, probe: &Term, fuel: Fuel) -> RefutationWitness {
    // (p, x) ↦ the boolean opposite of {d}(p, x).
    let negated = program(lam(
        "w",
        app(
            app(emb(d.term().clone()), v("w")),
            pair(emb(ff()), emb(tt())),
        ),
    ));
    let psi = kleene(&negated);
    let claim = run(d, &build::pair(psi.term().clone(), probe.clone()), fuel);
    let oracle_verdict = boolean_verdict(&claim);
    let observed = run(&psi, probe, fuel);
    let contradiction = match oracle_verdict {
        Some(b) => format!(
            "the candidate says {} of this program on the probe, but the \
             program evaluates to the opposite boolean, so the candidate \
             fails to predict behavior here",
            if b { "tt" } else { "ff" },
        ),
        None => format!(
            "the candidate is not a total boolean procedure: on the probe \
             pair it produced {claim:?}",
        ),
    };
    RefutationWitness {
        psi,
        probe_input: probe.clone(),
        oracle_verdict,
        observed,
        contradiction,
    }
}

/// Refute a claimed halting tester: for binary h over
/// Pair(program, input), builds the program that diverges exactly when h
/// says it halts, and records what happened at the probe. "Diverges"
/// means still running at the caller's fuel; the witness text says so.
pub fn refute_halting(h: &Program, probe: &Term, fuel: Fuel) -> RefutationWitness {
    let psi = kleene(&divergent_negation(h));
    let claim = run(h, &build::pair(psi.term().clone(), probe.clone()), fuel);
    let oracle_verdict = boolean_verdict(&claim);
    let observed = run(&psi, probe, fuel);
    let contradiction = match oracle_verdict {
        Some(true) => format!(
            "the candidate says this program halts on the probe, yet the \
             program is still running after {} steps",
            fuel.max_steps(),
        ),
        Some(false) => {
            "the candidate says this program runs forever on the probe, \
             yet it converges"
                .to_string()
        }
        None => format!(
            "the candidate is not a total boolean procedure: on the probe \
             pair it produced {claim:?}",
        ),
    };
    RefutationWitness {
        psi,
        probe_input: probe.clone(),
        oracle_verdict,
        observed,
        contradiction,
    }
}

/// Refute a claimed extensional property: given q total boolean on
/// program texts, true of a_top and false of a_bot, builds the program Ψ
/// whose q-swapped image S(Ψ) behaves exactly like Ψ yet gets the
/// opposite q-verdict. The witness records q(Ψ) as the oracle verdict
/// and the run of q on S(Ψ) as the observation.
pub fn refute_rice(
    q: &Program,
    a_top: &Program,
    a_bot: &Program,
    samples: &[Term],
    fuel: Fuel,
) -> Result<RefutationWitness, InvalidSwapElements> {
    let swap = swap_negation(q, a_top.term(), a_bot.term(), fuel)?;
    let psi = transformer_fix(&swap);
    let swapped = closed(run(&swap, psi.term(), fuel).into_value());
    let on_psi = run(q, psi.term(), fuel);
    let oracle_verdict = boolean_verdict(&on_psi);
    let observed = run(q, swapped.term(), fuel);
    let agreeing = samples
        .iter()
        .filter(|a| run(&psi, a, fuel).agrees(&run(&swapped, a, fuel)))
        .count();
    let contradiction = format!(
        "the property assigns opposite verdicts to two programs that \
         agree on {agreeing} of {} sampled inputs, so it depends on \
         program text rather than behavior",
        samples.len(),
    );
    Ok(RefutationWitness {
        psi,
        probe_input: swapped.into_term(),
        oracle_verdict,
        observed,
        contradiction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{num, succ_p};
    use crate::eval::eval;
    use crate::objlang::nth_term;
    use crate::reflect::rep;

    fn f(n: usize) -> Fuel {
        Fuel::new(n)
    }

    fn prog(t: Term) -> Program {
        Program::new(t).unwrap()
    }

    fn id_p() -> Program {
        prog(build::lam(Term::Var(0)))
    }

    fn contains(hay: &Term, needle: &Term) -> bool {
        if hay == needle {
            return true;
        }
        match hay {
            Term::Var(_) => false,
            Term::Lam(b) | Term::Fst(b) | Term::Snd(b) => contains(b, needle),
            Term::App(a, b)
            | Term::Pair(a, b)
            | Term::Pev(a, b)
            | Term::Eq(a, b)
            | Term::Le(a, b) => contains(a, needle) || contains(b, needle),
        }
    }

    #[test]
    fn quine_reproduces_itself_on_any_input() {
        let q = quine();
        let fuel = f(500);
        for a in [tt(), num(4), q.term().clone(), nth_term(20)] {
            assert_eq!(run(&q, &a, fuel).into_value(), *q.term());
        }
    }

    #[test]
    fn quine_does_not_quote_itself() {
        let q = quine();
        assert!(!contains(q.term(), &rep(q.term())));
    }

    #[test]
    fn virus_replicates_around_its_payload() {
        let fuel = f(2_000);
        let v = virus(&id_p());
        for x in [tt(), num(2)] {
            let out = run(&v, &x, fuel).into_value();
            let want = build::pair(
                v.term().clone(),
                build::pair(v.term().clone(), x),
            );
            assert_eq!(out, want);
        }
        let v = virus(&succ_p());
        let out = run(&v, &num(1), fuel).into_value();
        let Term::Pair(first, rest) = out else {
            panic!("virus output must be a pair")
        };
        let Term::Pair(second, payload) = *rest else {
            panic!("virus output must carry a second copy")
        };
        assert_eq!(*first, *v.term());
        assert_eq!(first, second);
        assert_eq!(*payload, num(2));
    }

    #[test]
    fn virus_with_divergent_payload_diverges() {
        let hang = prog(build::lam(crate::kernel::omega()));
        let v = virus(&hang);
        assert!(run(&v, &tt(), f(2_000)).is_diverged());
    }

    #[test]
    fn narcissist_turns_its_argument_on_itself() {
        let t = narcissist();
        let fuel = f(2_000);
        assert_eq!(run(&t, id_p().term(), fuel).into_value(), *t.term());
        for x in [id_p(), prog(build::lam(tt())), succ_p()] {
            let lhs = run(&t, x.term(), fuel);
            let rhs = run(&x, t.term(), fuel);
            assert!(lhs.agrees(&rhs));
        }
    }

    #[test]
    fn mutual_quines_output_each_other() {
        let (p, q) = mutual_quines();
        let fuel = f(500);
        assert_eq!(run(&p, &tt(), fuel).into_value(), *q.term());
        assert_eq!(run(&q, &tt(), fuel).into_value(), *p.term());
        assert_ne!(p.term(), q.term());
    }

    #[test]
    fn generated_viruses_replicate() {
        let fuel = f(2_000);
        for payload in [id_p(), succ_p()] {
            let v = virus_generator(&payload);
            let x = num(1);
            let out = run(&v, &x, fuel).into_value();
            let inner = run(&payload, &x, fuel).into_value();
            let want = build::pair(
                v.term().clone(),
                build::pair(v.term().clone(), inner),
            );
            assert_eq!(out, want);
        }
    }

    #[test]
    fn constant_judges_are_refuted() {
        let fuel = f(10_000);
        let always = prog(build::lam(tt()));
        let w = refute_decision(&always, &tt(), fuel);
        assert_eq!(w.oracle_verdict, Some(true));
        assert_eq!(w.observed.value(), Some(&ff()));

        let never = prog(build::lam(ff()));
        let w = refute_decision(&never, &tt(), fuel);
        assert_eq!(w.oracle_verdict, Some(false));
        assert_eq!(w.observed.value(), Some(&tt()));
    }

    #[test]
    fn syntactic_judges_are_refuted() {
        let fuel = f(10_000);
        // Judges whether the probed program is syntactically the identity.
        let is_id = prog(build::lam(build::eq(
            build::fst(Term::Var(0)),
            id_p().into_term(),
        )));
        let w = refute_decision(&is_id, &num(0), fuel);
        assert_eq!(w.oracle_verdict, Some(false));
        assert_eq!(w.observed.value(), Some(&tt()));
    }

    #[test]
    fn partial_judges_are_reported_as_non_total() {
        let hang = prog(build::lam(crate::kernel::omega()));
        let w = refute_decision(&hang, &tt(), f(2_000));
        assert_eq!(w.oracle_verdict, None);
        assert!(w.contradiction.contains("not a total boolean"));
    }

    #[test]
    fn optimistic_halting_testers_are_refuted() {
        let always_halts = prog(build::lam(tt()));
        let w = refute_halting(&always_halts, &tt(), f(10_000));
        assert_eq!(w.oracle_verdict, Some(true));
        assert!(w.observed.is_diverged());
    }

    #[test]
    fn pessimistic_halting_testers_are_refuted() {
        let never_halts = prog(build::lam(ff()));
        let w = refute_halting(&never_halts, &tt(), f(10_000));
        assert_eq!(w.oracle_verdict, Some(false));
        assert_eq!(w.observed.value(), Some(&tt()));
    }

    #[test]
    fn size_heuristic_halting_testers_are_refuted() {
        // Claims exactly the small programs halt.
        let small_halts = prog(build::lam(build::le(
            build::fst(Term::Var(0)),
            num(3),
        )));
        let w = refute_halting(&small_halts, &tt(), f(10_000));
        match w.oracle_verdict {
            Some(true) => assert!(w.observed.is_diverged()),
            Some(false) => assert_eq!(w.observed.value(), Some(&tt())),
            None => panic!("the heuristic is total"),
        }
    }

    #[test]
    fn syntactic_properties_are_refuted() {
        let fuel = f(10_000);
        let is_tt = prog(build::lam(build::eq(Term::Var(0), tt())));
        let samples: Vec<Term> = (0..20)
            .map(|n| build::pair(nth_term(n), nth_term(2 * n)))
            .collect();
        let w = refute_rice(
            &is_tt,
            &prog(tt()),
            &prog(ff()),
            &samples,
            fuel,
        )
        .unwrap();
        let claimed = w.oracle_verdict.unwrap();
        let swapped_verdict = match w.observed.value() {
            Some(value) if *value == tt() => true,
            Some(value) if *value == ff() => false,
            other => panic!("expected a boolean, got {other:?}"),
        };
        assert_ne!(claimed, swapped_verdict);
        assert!(w.contradiction.contains("20 of 20"));
    }

    #[test]
    fn order_threshold_properties_are_refuted() {
        let fuel = f(20_000);
        // True exactly of programs at or below tt in the term order.
        let is_small = prog(build::lam(build::le(Term::Var(0), tt())));
        let top = prog(tt());
        let bot = succ_p();
        let samples: Vec<Term> = (0..10).map(nth_term).collect();
        let w = refute_rice(&is_small, &top, &bot, &samples, fuel).unwrap();
        let claimed = w.oracle_verdict.unwrap();
        let swapped = boolean_verdict(&w.observed).unwrap();
        assert_ne!(claimed, swapped);
    }

    #[test]
    fn bad_swap_witnesses_are_rejected() {
        let is_tt = prog(build::lam(build::eq(Term::Var(0), tt())));
        let err = refute_rice(
            &is_tt,
            &prog(ff()),
            &prog(tt()),
            &[],
            f(2_000),
        );
        assert!(err.is_err());
    }

    #[test]
    fn witnesses_print_their_story() {
        let always = prog(build::lam(tt()));
        let w = refute_decision(&always, &tt(), f(5_000));
        let text = w.to_string();
        assert!(text.contains("candidate verdict: tt"));
        assert!(text.contains("opposite boolean"));
    }

    #[test]
    fn narcissist_agrees_with_eval_of_flipped_application() {
        let t = narcissist();
        let fuel = f(2_000);
        for n in [0, 1, 2] {
            let x = (0..)
                .map(nth_term)
                .filter(crate::eval::is_value)
                .nth(n)
                .unwrap();
            let lhs = run(&t, &x, fuel);
            let rhs = eval(&build::app(x, t.term().clone()), fuel);
            assert!(lhs.agrees(&rhs));
        }
    }
}
