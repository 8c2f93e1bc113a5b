//! Command-line front end. Exit codes: 0 success, 1 invalid input or a
//! failed check, 2 base quiver not of type A, 3 budget or search cap hit.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::Rng;

use crate::classify::{classify, ClassifyError};
use crate::construct::{build_presentation, dimension, validate, ConstructError, NodalDatum, DEFAULT_PATH_CAP};
use crate::field::PrimeField;
use crate::io::{emit_presentation, parse_datum, parse_datum_file, Format};
use crate::quiver::Presentation;
use crate::random::{random_dims, random_invertible, random_line, random_representation, seeded};
use crate::rep::{enumerate_indecomposables, enumeration_budget, is_isomorphic, IsoRegistry, Operation, OperationStep, RepError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_TYPE_A: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nodal", about = "Nodal algebras from glued and blown-up quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a datum file.
    Check { file: PathBuf },
    /// Print the presentation of the nodal algebra.
    Present {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Decide the representation type, with a trace.
    Classify { file: PathBuf },
    /// Dimension of the algebra.
    Dimension {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: usize,
    },
    /// Indecomposable representations up to isomorphism over a prime field.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Randomized checks of the gluing and blow-up functors over F2.
    FunctorsSelftest {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs one invocation, writing to `out` and `err`, and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { file } => check(&file, out),
        Command::Present { file, format } => present(&file, format, out),
        Command::Classify { file } => classify_cmd(&file, out),
        Command::Dimension { file, cap } => dimension_cmd(&file, cap, out),
        Command::Enumerate {
            file,
            field,
            max_dim,
            budget,
        } => enumerate_cmd(&file, field, max_dim, budget.unwrap_or_else(enumeration_budget), out),
        Command::FunctorsSelftest { file, trials, seed } => selftest(file.as_deref(), trials, seed, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        let code = match e {
            ConstructError::NonNilpotentCycle { .. } => EXIT_LIMIT,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotTypeA { .. } => Failure {
                code: EXIT_NOT_TYPE_A,
                message: e.to_string(),
            },
            ClassifyError::Construct(c) => c.into(),
            other => Failure::invalid(other),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        let code = match e {
            RepError::BudgetExceeded { .. } | RepError::SearchSpaceTooLarge { .. } => EXIT_LIMIT,
            RepError::Construct(ConstructError::NonNilpotentCycle { .. }) => EXIT_LIMIT,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load(path: &std::path::Path) -> Result<NodalDatum, Failure> {
    parse_datum(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn check(path: &std::path::Path, out: &mut dyn Write) -> Outcome {
    let file = parse_datum_file(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    let report = validate(&file.datum);
    if !report.is_valid() {
        let lines: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{}:{}: {v}", path.display(), file.locate(v)))
            .collect();
        return Err(Failure::invalid(lines.join("\n")));
    }
    let d = &file.datum;
    let _ = writeln!(
        out,
        "ok: {} vertices, {} arrows, {} glue pairs, {} blow-ups",
        d.base.vertex_count(),
        d.base.arrow_count(),
        d.glue_pairs.len(),
        d.blow_vertices.len()
    );
    Ok(EXIT_OK)
}

fn present(path: &std::path::Path, format: Format, out: &mut dyn Write) -> Outcome {
    let (p, _) = build_presentation(&load(path)?)?;
    let _ = write!(out, "{}", emit_presentation(&p, format));
    Ok(EXIT_OK)
}

fn classify_cmd(path: &std::path::Path, out: &mut dyn Write) -> Outcome {
    let rep_type = classify(&load(path)?)?;
    let _ = writeln!(out, "{}", rep_type.verdict);
    for step in &rep_type.trace {
        let _ = writeln!(out, "  {step}");
    }
    Ok(EXIT_OK)
}

fn dimension_cmd(path: &std::path::Path, cap: usize, out: &mut dyn Write) -> Outcome {
    let (p, _) = build_presentation(&load(path)?)?;
    let _ = writeln!(out, "{}", dimension(&p, cap)?);
    Ok(EXIT_OK)
}

fn enumerate_cmd(path: &std::path::Path, prime: u32, max_dim: usize, budget: usize, out: &mut dyn Write) -> Outcome {
    let field = PrimeField::new(prime).map_err(Failure::invalid)?;
    let (p, _) = build_presentation(&load(path)?)?;
    let p = Arc::new(p);
    let classes = enumerate_indecomposables(p.clone(), field, max_dim, budget)?;
    let q = p.quiver();
    let _ = writeln!(out, "field F{prime}, total dimension <= {max_dim}, budget {budget}");
    let _ = writeln!(out, "vertices: {}", q.vertex_names().join(", "));
    let _ = writeln!(out, "{:>5}  {:<16}  {:>6}", "class", "dims", "tuples");
    for (k, c) in classes.iter().enumerate() {
        let dims: Vec<String> = c.representative.dims().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{:>5}  {:<16}  {:>6}", k + 1, format!("({})", dims.join(",")), c.tuple_count);
    }
    let _ = writeln!(out, "{} indecomposable classes", classes.len());
    Ok(EXIT_OK)
}

fn steps_from_file(d: &NodalDatum) -> Result<Vec<OperationStep>, Failure> {
    let bare = NodalDatum::new(d.base.clone());
    let mut steps = Vec::new();
    for p in &d.glue_pairs {
        steps.push(OperationStep::new(&bare, Operation::Glue(p.clone()))?);
    }
    for v in &d.blow_vertices {
        steps.push(OperationStep::new(&bare, Operation::Blow(v.clone()))?);
    }
    if steps.is_empty() {
        return Err(Failure::invalid("datum has no glue or blow operations"));
    }
    Ok(steps)
}

fn random_step<R: Rng>(rng: &mut R) -> Result<OperationStep, Failure> {
    let n = rng.gen_range(3..=4);
    let bare = NodalDatum::new(random_line(rng, n));
    let op = if rng.gen_bool(0.5) {
        let i = rng.gen_range(1..=n);
        let j = (i + rng.gen_range(1..n) - 1) % n + 1;
        Operation::Glue(crate::construct::GluePair::new(i.to_string(), j.to_string()))
    } else {
        Operation::Blow(rng.gen_range(1..=n).to_string())
    };
    Ok(OperationStep::new(&bare, op)?)
}

#[derive(Default)]
struct Tally {
    passed: usize,
    run: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.run += 1;
        if ok {
            self.passed += 1;
        }
    }
}

fn selftest(path: Option<&std::path::Path>, trials: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let field = PrimeField::f2();
    let mut rng = seeded(seed);
    let fixed = match path {
        Some(p) => Some(steps_from_file(&load(p)?)?),
        None => None,
    };
    let (mut relations, mut reflection, mut inverse) = (Tally::default(), Tally::default(), Tally::default());
    for t in 0..trials {
        let step = match &fixed {
            Some(steps) => steps[t % steps.len()].clone(),
            None => random_step(&mut rng)?,
        };
        let before: &Arc<Presentation> = step.before();
        let dims = random_dims(&mut rng, before.quiver().vertex_count(), 4);
        let m = random_representation(&mut rng, before, &field, &dims, 1).expect("base algebra is hereditary");
        let n = random_representation(&mut rng, before, &field, &dims, 1).expect("base algebra is hereditary");
        let change: Vec<_> = dims.iter().map(|&d| random_invertible(&mut rng, &field, d)).collect();
        let m_moved = m.transport(&change);

        let (fm, fn_, fm_moved) = (step.apply_f(&m)?, step.apply_f(&n)?, step.apply_f(&m_moved)?);
        relations.record(fm.check_relations().holds() && fn_.check_relations().holds());

        let mut registry = IsoRegistry::new();
        let key_m = step.reflection_key(&m, &mut registry)?;
        let key_n = step.reflection_key(&n, &mut registry)?;
        let same_keys = key_m == key_n;
        reflection.record(is_isomorphic(&fm, &fm_moved)? && is_isomorphic(&fm, &fn_)? == same_keys);

        if let Some(back) = step.apply_g(&fm)? {
            inverse.record(is_isomorphic(&back, &step.expected_round_trip(&m))?);
        }
    }
    let _ = writeln!(out, "trials: {trials}, seed: {seed}");
    let mut all = true;
    for (name, tally) in [("relations", &relations), ("iso-reflection", &reflection), ("G after F", &inverse)] {
        all &= tally.passed == tally.run;
        let _ = writeln!(out, "{name}: {}/{} passed", tally.passed, tally.run);
    }
    Ok(if all { EXIT_OK } else { EXIT_INVALID })
}
