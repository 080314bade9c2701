//! Command-line front end: one subcommand per demonstration family.
//! Program files hold S-expressions in the objlang grammar; results go
//! to stdout, diagnostics to stderr. Identical invocations print
//! identical bytes; `--json` switches every command to one structured
//! document per run.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use moncom::arith::{num, to_nat};
use moncom::fixpoint::kleene;
use moncom::isomap::{chi, kappa, orbit, DialectProgram, Side};
use moncom::metaprog::{
    ack, n_plus_omega, omega, omega_plus_omega, omega_squared, omega_times,
    omega_tower, ordinal_unfold, OrdinalProgram, UnfoldEnd,
};
use moncom::reflect::{futamura, futamura_report, optimize, rep, self_interpreter};
use moncom::selfref::{
    quine, refute_decision, refute_halting, refute_rice, virus, RefutationWitness,
};
use moncom::stateful::{run_trace, ProcessProgram, TraceEnd};
use moncom::{eval, parse, print_sugared, run, Fuel, Outcome, Program, Term};

#[derive(Parser)]
#[command(name = "moncom-cli", version, about = "Programs about programs: run them, fix them, compile them, refute them")]
struct Cli {
    /// Emit one JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

const DEFAULT_FUEL: usize = 100_000;

#[derive(Args)]
struct FuelArg {
    /// Evaluation step budget.
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a program file, optionally applied to an argument.
    Eval {
        file: PathBuf,
        /// Argument S-expression to apply the program to.
        #[arg(long)]
        arg: Option<String>,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Fold a process program over an input sequence, printing each step.
    Trace {
        file: PathBuf,
        /// Initial state S-expression.
        #[arg(long)]
        state: String,
        /// Input S-expression; repeat for a sequence.
        #[arg(long = "input")]
        inputs: Vec<String>,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Print the self-reproducing program.
    Quine,
    /// Build the self-propagating wrapper of a program and run or print it.
    Virus {
        /// Payload program file; the identity program when omitted.
        file: Option<PathBuf>,
        /// Input to run the wrapper on; prints the wrapper when omitted.
        #[arg(long)]
        arg: Option<String>,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Build the fixpoint of a program and run or print it.
    Fix {
        file: PathBuf,
        /// Input to run the fixpoint on; prints the fixpoint when omitted.
        #[arg(long)]
        arg: Option<String>,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Compute the level-K hyperoperation M arrow^K N and print the natural.
    Ackermann {
        k: usize,
        n: usize,
        m: usize,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Unfold a named ordinal stream, one payload per line.
    Ordinal {
        /// One of: omega, n-plus-omega, omega-plus-omega, omega-times,
        /// omega-squared, omega-tower.
        name: String,
        /// Levels to unfold.
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// Parameter for n-plus-omega and omega-times.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Build the compiler tower up to a level and report checks and sizes.
    Futamura {
        /// Tower level, 1 through 4.
        #[arg(long)]
        level: u8,
        /// Program compiled at level 1; the identity program when omitted.
        #[arg(long)]
        program: Option<PathBuf>,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Refute a claimed halting tester with a self-referential witness.
    RefuteHalting {
        file: PathBuf,
        /// Probe input S-expression.
        #[arg(long, default_value = "tt")]
        probe: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Refute a claimed extensional property tester.
    RefuteRice {
        file: PathBuf,
        /// Program the tester accepts.
        #[arg(long, default_value = "(lam (fst (var 0)))")]
        top: String,
        /// Program the tester rejects.
        #[arg(long, default_value = "(lam (snd (var 0)))")]
        bot: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Refute a claimed decision procedure for program behavior.
    RefuteDecision {
        file: PathBuf,
        /// Probe input S-expression.
        #[arg(long, default_value = "tt")]
        probe: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Translate between the two object languages or print an orbit.
    Iso {
        #[command(subcommand)]
        command: IsoCommand,
    },
    /// Print closed terms in ascending well-order.
    Enumerate {
        count: usize,
        /// Rank to start from.
        #[arg(long, default_value_t = 0)]
        from: usize,
    },
    /// Compare direct, interpreted, and compiled step counts on a corpus.
    Bench {
        #[arg(long, default_value_t = 2_000_000)]
        fuel: usize,
    },
}

#[derive(Subcommand)]
enum IsoCommand {
    /// Translate a program file between the languages.
    Translate {
        file: PathBuf,
        /// Direction: 0to1 or 1to0.
        #[arg(long)]
        dir: String,
    },
    /// Print the alternating preimage descent of a term.
    Orbit {
        file: PathBuf,
        /// Language of the input: p0 or p1.
        #[arg(long, default_value = "p0")]
        side: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_term(path: &Path) -> Result<Term> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_program(path: &Path) -> Result<Program> {
    Program::new(load_term(path)?)
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_arg(s: &str) -> Result<Term> {
    parse(s).with_context(|| format!("parsing argument `{s}`"))
}

fn emit(json_mode: bool, doc: Value, text: String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn outcome_doc(out: &Outcome) -> Value {
    match out {
        Outcome::Converged { value, steps } => json!({
            "outcome": "converged",
            "value": print_sugared(value),
            "steps": steps,
        }),
        Outcome::Diverged { steps } => json!({
            "outcome": "diverged",
            "steps": steps,
        }),
        Outcome::Stuck { reason, at } => json!({
            "outcome": "stuck",
            "reason": reason.to_string(),
            "at": print_sugared(at),
        }),
    }
}

fn outcome_text(out: &Outcome) -> String {
    match out {
        Outcome::Converged { value, steps } => {
            format!("{}\nsteps={steps}\n", print_sugared(value))
        }
        Outcome::Diverged { steps } => format!("diverged {steps}\nsteps={steps}\n"),
        Outcome::Stuck { reason, .. } => format!("stuck: {reason}\n"),
    }
}

fn run_or_print(
    json_mode: bool,
    program: &Program,
    arg: Option<&String>,
    fuel: usize,
) -> Result<()> {
    match arg {
        Some(s) => {
            let out = run(program, &parse_arg(s)?, Fuel::new(fuel));
            emit(json_mode, outcome_doc(&out), outcome_text(&out));
        }
        None => {
            let text = print_sugared(program.term());
            emit(json_mode, json!({ "program": text }), format!("{text}\n"));
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Eval { file, arg, fuel } => {
            let program = load_program(file)?;
            let out = match arg {
                Some(s) => run(&program, &parse_arg(s)?, Fuel::new(fuel.fuel)),
                None => eval(program.term(), Fuel::new(fuel.fuel)),
            };
            emit(cli.json, outcome_doc(&out), outcome_text(&out));
            Ok(())
        }
        Command::Trace { file, state, inputs, fuel } => {
            let q = ProcessProgram::new(load_program(file)?);
            let x0 = parse_arg(state)?;
            let parsed: Vec<Term> =
                inputs.iter().map(|s| parse_arg(s)).collect::<Result<_>>()?;
            let trace = run_trace(&q, &x0, &parsed, Fuel::new(fuel.fuel));
            let terminal = match trace.terminal {
                TraceEnd::Converged => "converged",
                TraceEnd::FuelExhausted => "fuel-exhausted",
                TraceEnd::Stuck => "stuck",
            };
            let mut text = String::new();
            for step in &trace.steps {
                text.push_str(&format!(
                    "state {} -- in {} / out {}\n",
                    print_sugared(&step.state),
                    print_sugared(&step.input),
                    print_sugared(&step.output),
                ));
            }
            text.push_str(&format!("terminal {terminal}\n"));
            let doc = json!({
                "steps": trace
                    .steps
                    .iter()
                    .map(|s| json!({
                        "state": print_sugared(&s.state),
                        "in": print_sugared(&s.input),
                        "out": print_sugared(&s.output),
                    }))
                    .collect::<Vec<_>>(),
                "terminal": terminal,
            });
            emit(cli.json, doc, text);
            Ok(())
        }
        Command::Quine => {
            let text = print_sugared(quine().term());
            emit(cli.json, json!({ "program": text }), format!("{text}\n"));
            Ok(())
        }
        Command::Virus { file, arg, fuel } => {
            let payload = match file {
                Some(path) => load_program(path)?,
                None => Program::new(Term::Lam(Box::new(Term::Var(0))))
                    .expect("the identity program is closed"),
            };
            run_or_print(cli.json, &virus(&payload), arg.as_ref(), fuel.fuel)
        }
        Command::Fix { file, arg, fuel } => {
            let gamma = kleene(&load_program(file)?);
            run_or_print(cli.json, &gamma, arg.as_ref(), fuel.fuel)
        }
        Command::Ackermann { k, n, m, fuel } => {
            let out = ack(*k, *n, *m, Fuel::new(fuel.fuel));
            match &out {
                Outcome::Converged { value, .. } => {
                    let nat = to_nat(value).ok_or_else(|| {
                        anyhow!("the tower produced a non-numeral value")
                    })?;
                    emit(
                        cli.json,
                        json!({ "value": nat, "steps": out.steps() }),
                        format!("{nat}\n"),
                    );
                    Ok(())
                }
                Outcome::Diverged { steps } => {
                    emit(
                        cli.json,
                        outcome_doc(&out),
                        format!("diverged {steps}\n"),
                    );
                    Ok(())
                }
                Outcome::Stuck { .. } => bail!("the tower got stuck"),
            }
        }
        Command::Ordinal { name, depth, n, fuel } => {
            let stream = named_ordinal(name, *n)?;
            let trace = ordinal_unfold(&stream, *depth, Fuel::new(fuel.fuel));
            let payloads: Vec<String> =
                trace.payloads.iter().map(print_sugared).collect();
            let terminal = match trace.terminal {
                UnfoldEnd::Converged => "converged",
                UnfoldEnd::FuelExhausted => "fuel-exhausted",
            };
            let mut text = String::new();
            for p in &payloads {
                text.push_str(p);
                text.push('\n');
            }
            if matches!(trace.terminal, UnfoldEnd::FuelExhausted) {
                eprintln!("fuel exhausted after {} levels", payloads.len());
            }
            let doc = json!({
                "name": name,
                "depth": depth,
                "payloads": payloads,
                "terminal": terminal,
            });
            emit(cli.json, doc, text);
            Ok(())
        }
        Command::Futamura { level, program, fuel } => {
            futamura_command(cli.json, *level, program.as_deref(), fuel.fuel)
        }
        Command::RefuteHalting { file, probe, fuel } => {
            let h = load_program(file)?;
            let w = refute_halting(&h, &parse_arg(probe)?, Fuel::new(*fuel));
            emit_witness(cli.json, &w);
            Ok(())
        }
        Command::RefuteDecision { file, probe, fuel } => {
            let d = load_program(file)?;
            let w = refute_decision(&d, &parse_arg(probe)?, Fuel::new(*fuel));
            emit_witness(cli.json, &w);
            Ok(())
        }
        Command::RefuteRice { file, top, bot, fuel } => {
            let q = load_program(file)?;
            let a_top = Program::new(parse_arg(top)?)
                .map_err(|e| anyhow!("--top: {e}"))?;
            let a_bot = Program::new(parse_arg(bot)?)
                .map_err(|e| anyhow!("--bot: {e}"))?;
            let samples: Vec<Term> = (0..10).map(moncom::nth_term).collect();
            let w = refute_rice(&q, &a_top, &a_bot, &samples, Fuel::new(*fuel))
                .map_err(|e| anyhow!("{e}"))?;
            emit_witness(cli.json, &w);
            Ok(())
        }
        Command::Iso { command } => iso_command(cli.json, command),
        Command::Enumerate { count, from } => {
            let mut e = moncom::objlang::Enumerator::new();
            let mut text = String::new();
            let mut items = Vec::new();
            for i in *from..from + count {
                let t = print_sugared(&e.nth(i));
                text.push_str(&t);
                text.push('\n');
                items.push(t);
            }
            emit(cli.json, json!({ "from": from, "terms": items }), text);
            Ok(())
        }
        Command::Bench { fuel } => bench_command(cli.json, *fuel),
    }
}

fn emit_witness(json_mode: bool, w: &RefutationWitness) {
    let doc = json!({
        "psi": print_sugared(w.psi.term()),
        "probe_input": print_sugared(&w.probe_input),
        "oracle_verdict": w.oracle_verdict,
        "observed": outcome_doc(&w.observed),
        "contradiction": w.contradiction,
    });
    emit(json_mode, doc, format!("{w}\n"));
}

fn named_ordinal(name: &str, n: usize) -> Result<OrdinalProgram> {
    Ok(match name {
        "omega" => omega(),
        "n-plus-omega" => n_plus_omega(n),
        "omega-plus-omega" => omega_plus_omega(),
        "omega-times" => omega_times(n),
        "omega-squared" => omega_squared(),
        "omega-tower" => omega_tower(),
        _ => bail!(
            "unknown ordinal `{name}`; use omega, n-plus-omega, \
             omega-plus-omega, omega-times, omega-squared, or omega-tower"
        ),
    })
}

fn futamura_command(
    json_mode: bool,
    level: u8,
    program: Option<&Path>,
    fuel: usize,
) -> Result<()> {
    if !(1..=4).contains(&level) {
        bail!("levels run 1 through 4");
    }
    let fuel = Fuel::new(fuel);
    let x = match program {
        Some(path) => load_program(path)?,
        None => Program::new(Term::Lam(Box::new(Term::Var(0))))
            .expect("the identity program is closed"),
    };
    let reports: Vec<_> = futamura_report(&x, fuel)
        .into_iter()
        .filter(|r| r.level <= level)
        .collect();

    let mut verdicts: Vec<(String, bool)> = Vec::new();
    let c1 = futamura(1, Some(&x));
    let identity = [
        moncom::kernel::tt(),
        moncom::kernel::ff(),
        num(2),
    ]
    .iter()
    .all(|a| run(&c1, a, fuel).agrees(&run(&x, a, fuel)));
    verdicts.push(("level 1 compiles to an equivalent program".into(), identity));
    if level >= 2 {
        let c2 = futamura(2, None);
        let emitted = run(&c2, &rep(&rep(x.term())), fuel).into_value();
        verdicts.push((
            "level 2 emits the level 1 compile".into(),
            emitted == rep(c1.term()),
        ));
        if level >= 3 {
            let c3 = futamura(3, None);
            let emitted =
                run(&c3, &rep(&rep(self_interpreter().term())), fuel).into_value();
            verdicts.push((
                "level 3 emits the level 2 compiler".into(),
                emitted == rep(c2.term()),
            ));
        }
    }

    let mut text = String::new();
    for (claim, ok) in &verdicts {
        text.push_str(&format!("{claim}: {}\n", if *ok { "ok" } else { "FAILED" }));
    }
    text.push_str("level  build_steps  size\n");
    for r in &reports {
        text.push_str(&format!("{:<5}  {:<11}  {}\n", r.level, r.build_steps, r.size));
    }
    let doc = json!({
        "verdicts": verdicts
            .iter()
            .map(|(claim, ok)| json!({ "claim": claim, "ok": ok }))
            .collect::<Vec<_>>(),
        "levels": reports
            .iter()
            .map(|r| json!({
                "level": r.level,
                "build_steps": r.build_steps,
                "size": r.size,
            }))
            .collect::<Vec<_>>(),
    });
    emit(json_mode, doc, text);
    if verdicts.iter().any(|(_, ok)| !ok) {
        bail!("a tower check failed");
    }
    Ok(())
}

fn iso_command(json_mode: bool, command: &IsoCommand) -> Result<()> {
    match command {
        IsoCommand::Translate { file, dir } => {
            let t = load_term(file)?;
            let translated = match dir.as_str() {
                "0to1" => {
                    let p = Program::new(t).map_err(|e| anyhow!("{e}"))?;
                    kappa(&p).into_term()
                }
                "1to0" => {
                    let p = DialectProgram::new(t).map_err(|e| anyhow!("{e}"))?;
                    chi(&p).into_term()
                }
                _ => bail!("--dir must be 0to1 or 1to0"),
            };
            let text = print_sugared(&translated);
            emit(json_mode, json!({ "program": text }), format!("{text}\n"));
            Ok(())
        }
        IsoCommand::Orbit { file, side } => {
            let t = load_term(file)?;
            let side = match side.as_str() {
                "p0" => Side::P0,
                "p1" => Side::P1,
                _ => bail!("--side must be p0 or p1"),
            };
            let record = orbit(&t, side);
            let mut text = format!(
                "start {} {}\n",
                record.side,
                print_sugared(&record.start)
            );
            for (s, step) in &record.descent {
                text.push_str(&format!("step {} {}\n", s, print_sugared(step)));
            }
            text.push_str(&format!(
                "bottom {} {}\n",
                record.bottom_side,
                print_sugared(&record.bottom)
            ));
            let doc = json!({
                "start": print_sugared(&record.start),
                "side": record.side.to_string(),
                "descent": record
                    .descent
                    .iter()
                    .map(|(s, t)| json!({
                        "side": s.to_string(),
                        "term": print_sugared(t),
                    }))
                    .collect::<Vec<_>>(),
                "bottom": print_sugared(&record.bottom),
                "bottom_side": record.bottom_side.to_string(),
            });
            emit(json_mode, doc, text);
            Ok(())
        }
    }
}

fn bench_command(json_mode: bool, fuel: usize) -> Result<()> {
    let fuel = Fuel::new(fuel);
    let corpus: Vec<(&str, Program, Term)> = vec![
        ("succ 2", moncom::arith::succ_p(), num(2)),
        (
            "add (2,3)",
            moncom::arith::add_p(),
            Term::Pair(Box::new(num(2)), Box::new(num(3))),
        ),
        (
            "fst-projection",
            Program::new(Term::Lam(Box::new(Term::Fst(Box::new(Term::Var(0))))))
                .expect("closed"),
            Term::Pair(
                Box::new(moncom::kernel::tt()),
                Box::new(moncom::kernel::ff()),
            ),
        ),
    ];
    let sint = self_interpreter();
    let mut rows = Vec::new();
    for (name, p, x) in &corpus {
        let direct = run(p, x, fuel)
            .steps()
            .ok_or_else(|| anyhow!("{name}: direct run did not converge"))?;
        let interp_arg = Term::Pair(Box::new(rep(p.term())), Box::new(x.clone()));
        let interpreted = run(&sint, &interp_arg, fuel)
            .steps()
            .ok_or_else(|| anyhow!("{name}: interpreted run did not converge"))?;
        let compiled_program = futamura(1, Some(p));
        let compiled = run(&compiled_program, x, fuel)
            .steps()
            .ok_or_else(|| anyhow!("{name}: compiled run did not converge"))?;
        let optimized_program =
            Program::new(optimize(compiled_program.term(), 10_000))
                .expect("optimizing a closed term keeps it closed");
        let optimized = run(&optimized_program, x, fuel)
            .steps()
            .ok_or_else(|| anyhow!("{name}: optimized run did not converge"))?;
        rows.push((name.to_string(), direct, interpreted, compiled, optimized));
    }
    let mut text = String::from("program         direct  interpreted  compiled  optimized\n");
    for (name, d, i, c, o) in &rows {
        text.push_str(&format!("{name:<15} {d:<7} {i:<12} {c:<9} {o}\n"));
    }
    let doc = json!({
        "rows": rows
            .iter()
            .map(|(name, d, i, c, o)| json!({
                "program": name,
                "direct": d,
                "interpreted": i,
                "compiled": c,
                "optimized": o,
            }))
            .collect::<Vec<_>>(),
    });
    emit(json_mode, doc, text);
    Ok(())
}
