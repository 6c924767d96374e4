//! `chorevote` command line: solve, check, generate, experiment, manipulate.
//!
//! Exit codes: 0 success, 1 the answer is "no" (infeasible, violated, no
//! manipulation), 2 usage or validation error, 3 budget refusal.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chorevote::exact::minimize_with;
use chorevote::experiments::{
    gen_family, measure_cr, measure_family_potf, measure_poe, measure_potf,
    prop_impossibility_check, Family, OnlineChoice, RatioReport, Rational,
};
use chorevote::io::{instance_to_json, parse_constraints, parse_instance};
use chorevote::lp::{lp_round, to_f64};
use chorevote::reductions::{parse_dimacs, parse_graph, reduce_1in3, reduce_3occur, reduce_domset};
use chorevote::{
    check_constraints, disutilities, enumerate_optimal, greedy_minsum, run_online,
    search_manipulation, solve_dp, solve_gamma1, solve_ilp, Budget, ConstraintSet, Error, Greedy,
    Instance, Mechanism, Objective, Outcome,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "chorevote",
    version,
    about = "Temporal voting over public chores"
)]
struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for experiments (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(flatten)]
    budget: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Outcomes the brute-force oracle may visit.
    #[arg(long, global = true)]
    max_outcomes: Option<u64>,
    /// Profiles the dynamic program may keep per layer.
    #[arg(long, global = true)]
    max_dp_states: Option<u64>,
    /// Joint misreports the manipulation search may try.
    #[arg(long, global = true)]
    max_misreports: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budget, Error> {
        let mut b = Budget::default();
        for (slot, value) in [
            (&mut b.outcomes, self.max_outcomes),
            (&mut b.dp_states, self.max_dp_states),
            (&mut b.misreports, self.max_misreports),
        ] {
            if let Some(v) = value {
                if v == 0 {
                    return Err(Error::Validation("budgets must be positive".into()));
                }
                *slot = v;
            }
        }
        Ok(b)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Inline `[[t,lambda],...]` or a file holding one; overrides the file's constraints.
        #[arg(long)]
        constraints: Option<String>,
        /// Run the greedy methods through the column-by-column interface.
        #[arg(long)]
        online: bool,
    },
    /// Report disutilities of an outcome and the first violated checkpoint.
    Check {
        file: PathBuf,
        /// 1-based projects, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        outcome: Vec<usize>,
        #[arg(long)]
        constraints: Option<String>,
    },
    /// Write an instance file from a hardness reduction or a family.
    Generate {
        #[arg(
            long,
            value_enum,
            conflicts_with = "family",
            required_unless_present = "family"
        )]
        reduction: Option<Reduction>,
        /// DIMACS CNF (3sat, 1in3) or DIMACS graph (domset).
        #[arg(long, requires = "reduction")]
        input: Option<PathBuf>,
        #[arg(long)]
        kappa: Option<usize>,
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Ratio experiments on the built-in families.
    Experiment {
        #[arg(value_enum)]
        kind: ExperimentKind,
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        params: FamilyParams,
        /// Repetitions for randomized runs.
        #[arg(long, default_value_t = 500)]
        reps: u64,
        /// Online algorithm for `cr` (greedy-minsum, greedy-minmax, uniform).
        #[arg(long)]
        alg: Option<String>,
        /// Objective for `potf`.
        #[arg(long, value_enum)]
        objective: Option<ObjectiveArg>,
        /// Instance file for `potf` instead of a family.
        #[arg(long, conflicts_with = "family")]
        input: Option<PathBuf>,
    },
    /// Exhaustive misreport search for a coalition.
    Manipulate {
        file: PathBuf,
        #[arg(long)]
        mechanism: String,
        /// 1-based agents, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        coalition: Vec<usize>,
        /// Misreport budget (same as --max-misreports).
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct FamilyParams {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Gamma1,
    Dp,
    Ilp,
    LpRound,
    GreedyMinsum,
    GreedyMinmax,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Reduction {
    #[value(name = "3sat")]
    ThreeSat,
    Domset,
    #[value(name = "1in3")]
    OneInThree,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExperimentKind {
    Potf,
    Poe,
    Cr,
    Prop,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Minsum,
    Minmax,
}

/// What a command produced: a table, or raw text, and whether the answer
/// was yes.
struct Report {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
    raw: Option<String>,
    yes: bool,
}

impl Report {
    fn table(header: &[&str]) -> Self {
        Report {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            raw: None,
            yes: true,
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, format: Format) -> String {
        if let Some(raw) = &self.raw {
            return format!("{raw}\n");
        }
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.header.join(","));
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
            }
            Format::Table => {
                let mut widths: Vec<usize> =
                    self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                out.push_str(&line(&self.header));
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&line(r));
                    out.push('\n');
                }
                for n in &self.notes {
                    out.push_str(n);
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

fn load(path: &Path, constraints: Option<&str>) -> Result<(Instance, ConstraintSet), Error> {
    let (inst, file_cs) = parse_instance(&read(path)?)?;
    let cs = match constraints {
        None => file_cs,
        Some(text) if text.trim_start().starts_with('[') => parse_constraints(text)?,
        Some(path) => parse_constraints(&read(Path::new(path))?)?,
    };
    cs.validate_for(&inst)?;
    Ok((inst, cs))
}

fn one_based(values: &[usize], what: &str) -> Result<Vec<usize>, Error> {
    values
        .iter()
        .map(|&v| {
            v.checked_sub(1)
                .ok_or_else(|| Error::Validation(format!("{what} are 1-based")))
        })
        .collect()
}

fn solve(
    file: &Path,
    method: Method,
    constraints: Option<&str>,
    online: bool,
    budget: &Budget,
) -> Result<Report, Error> {
    let (inst, cs) = load(file, constraints)?;
    if online && !matches!(method, Method::GreedyMinsum | Method::GreedyMinmax) {
        return Err(Error::Validation(
            "--online applies to the greedy methods only".into(),
        ));
    }
    let mut report = Report::table(&["method", "outcome", "min-sum", "min-max", "feasible"]);
    let push = |report: &mut Report, label: &str, outcome: Option<&Outcome>| {
        let (sum, max) = match outcome {
            Some(o) => (
                Objective::MinSum.value(&inst, o).to_string(),
                Objective::MinMax.value(&inst, o).to_string(),
            ),
            None => ("-".into(), "-".into()),
        };
        let feasible = outcome.is_some();
        report.yes &= feasible;
        report.row(vec![
            label.to_string(),
            outcome.map_or("-".into(), |o| o.to_string()),
            sum,
            max,
            feasible.to_string(),
        ]);
    };
    match method {
        Method::Brute => {
            let r = enumerate_optimal(&inst, &cs, budget)?;
            push(
                &mut report,
                "brute:min-sum",
                r.min_sum.as_ref().map(|o| &o.outcome),
            );
            push(
                &mut report,
                "brute:min-max",
                r.min_max.as_ref().map(|o| &o.outcome),
            );
        }
        Method::Gamma1 | Method::Dp | Method::Ilp => {
            let decide = |cs: &ConstraintSet| match method {
                Method::Gamma1 => solve_gamma1(&inst, cs),
                Method::Dp => solve_dp(&inst, cs, budget),
                _ => solve_ilp(&inst, cs, budget),
            };
            let label = match method {
                Method::Gamma1 => "gamma1",
                Method::Dp => "dp",
                _ => "ilp",
            };
            if cs.is_empty() {
                // no checkpoints: report the Min-Max optimum instead
                let (_, o) = minimize_with(inst.ell(), decide)?;
                push(&mut report, &format!("{label}:min-max"), Some(&o));
            } else {
                let o = decide(&cs)?;
                push(&mut report, label, o.as_ref());
            }
        }
        Method::LpRound => {
            let r = lp_round(&inst)?;
            let mut t = Report::table(&["method", "outcome", "eta", "achieved", "factor", "bound"]);
            t.row(vec![
                "lp-round".into(),
                r.outcome.to_string(),
                r.eta.to_string(),
                r.achieved.to_string(),
                r.factor.to_string(),
                r.bound.to_string(),
            ]);
            t.notes.push(format!(
                "fractional timesteps: {}; bound ~ {:.3}",
                r.fractional.len(),
                to_f64(&r.bound)
            ));
            return Ok(t);
        }
        Method::GreedyMinsum | Method::GreedyMinmax => {
            let o = match (method, online) {
                (Method::GreedyMinsum, false) => greedy_minsum(&inst),
                (Method::GreedyMinsum, true) => run_online(&inst, &mut Greedy::MinSum)?,
                _ => run_online(&inst, &mut Greedy::MinMax)?,
            };
            let label = if method == Method::GreedyMinsum {
                "greedy-minsum"
            } else {
                "greedy-minmax"
            };
            let label = if online {
                format!("{label}:online")
            } else {
                label.to_string()
            };
            push(&mut report, &label, Some(&o));
        }
    }
    Ok(report)
}

fn check(file: &Path, outcome: &[usize], constraints: Option<&str>) -> Result<Report, Error> {
    let (inst, cs) = load(file, constraints)?;
    let out = Outcome::for_instance(&inst, one_based(outcome, "projects")?)?;
    let mut report = Report::table(&["agent", "disutility"]);
    for (i, d) in disutilities(&inst, &out, inst.ell())
        .into_iter()
        .enumerate()
    {
        report.row(vec![(i + 1).to_string(), d.to_string()]);
    }
    match check_constraints(&inst, &out, &cs)? {
        None => report
            .notes
            .push(format!("{out} satisfies {} checkpoint(s)", cs.len())),
        Some(v) => {
            report.yes = false;
            report.notes.push(format!(
                "violation: agent {} has disutility {} at t={} (lambda={})",
                v.agent + 1,
                v.disutility,
                v.constraint.t,
                v.constraint.lambda
            ));
        }
    }
    Ok(report)
}

fn family_of(name: &str, p: &FamilyParams, seed: u64) -> Result<Family, Error> {
    Family::from_parts(name, p.n, p.k, p.tau, p.ell, seed)
}

fn generate(
    reduction: Option<Reduction>,
    input: Option<&Path>,
    kappa: Option<usize>,
    family: Option<&str>,
    params: &FamilyParams,
    seed: u64,
) -> Result<Report, Error> {
    let json = match (reduction, family) {
        (Some(r), _) => {
            let input = input
                .ok_or_else(|| Error::Validation("--input is required with --reduction".into()))?;
            let text = read(input)?;
            match r {
                Reduction::ThreeSat => {
                    let red = reduce_3occur(&parse_dimacs(&text)?)?;
                    instance_to_json(&red.instance, Some(&red.constraints))
                }
                Reduction::Domset => {
                    let kappa =
                        kappa.ok_or_else(|| Error::Validation("domset needs --kappa".into()))?;
                    let red = reduce_domset(&parse_graph(&text)?, kappa)?;
                    instance_to_json(&red.instance, Some(&red.constraints))
                }
                Reduction::OneInThree => {
                    let red = reduce_1in3(&parse_dimacs(&text)?)?;
                    instance_to_json(&red.instance, None)
                }
            }
        }
        (None, Some(name)) => {
            let f = gen_family(family_of(name, params, seed)?)?;
            let cs = (!f.constraints.is_empty()).then_some(&f.constraints);
            instance_to_json(&f.instance, cs)
        }
        (None, None) => return Err(Error::Validation("pass --reduction or --family".into())),
    };
    let mut report = Report::table(&[]);
    report.raw = Some(json);
    Ok(report)
}

fn ratio_row(r: &RatioReport) -> Vec<String> {
    let fmt = |q: &Rational| q.to_string();
    vec![
        r.family.clone(),
        r.params.clone(),
        fmt(&r.numerator),
        fmt(&r.denominator),
        fmt(&r.ratio),
        r.bound.as_ref().map_or(String::new(), fmt),
    ]
}

const RATIO_HEADER: [&str; 6] = [
    "family",
    "param",
    "numerator",
    "denominator",
    "ratio",
    "bound",
];

#[allow(clippy::too_many_arguments)]
fn experiment(
    kind: ExperimentKind,
    family: Option<&str>,
    params: &FamilyParams,
    reps: u64,
    alg: Option<&str>,
    objective: Option<ObjectiveArg>,
    input: Option<&Path>,
    seed: u64,
    budget: &Budget,
) -> Result<Report, Error> {
    let mut report = Report::table(&RATIO_HEADER);
    match kind {
        ExperimentKind::Potf => {
            let objective = |default: Objective| match objective {
                Some(ObjectiveArg::Minsum) => Objective::MinSum,
                Some(ObjectiveArg::Minmax) => Objective::MinMax,
                None => default,
            };
            let r = if let Some(path) = input {
                let (inst, cs) = load(path, None)?;
                let mut r = measure_potf(&inst, &cs, objective(Objective::MinMax), budget)?;
                if let Some(r) = r.as_mut() {
                    r.family = "file".into();
                }
                r
            } else {
                let f = family_of(family.unwrap_or("potf-minsum"), params, seed)?;
                let default = match f {
                    Family::PotfMinMax { .. } => Objective::MinMax,
                    _ => Objective::MinSum,
                };
                measure_family_potf(f, objective(default), budget)?
            };
            match r {
                Some(r) => report.row(ratio_row(&r)),
                None => {
                    report.yes = false;
                    report.notes.push("constraints are infeasible".into());
                }
            }
        }
        ExperimentKind::Poe => {
            let n = params
                .n
                .ok_or_else(|| Error::Validation("poe needs --n".into()))?;
            let r = measure_poe(n, budget)?;
            report.row(ratio_row(&r.minsum));
            report.row(ratio_row(&r.minmax));
            report.notes.push(format!(
                "equitable outcomes: {}; common disutility {}; cited min-sum bound {} {}",
                r.equitable.len(),
                r.common_disutility,
                r.cited_minsum_bound,
                if r.cited_bound_holds() {
                    "holds"
                } else {
                    "fails"
                }
            ));
        }
        ExperimentKind::Cr => {
            let f = family_of(family.unwrap_or("cr-greedy-minsum"), params, seed)?;
            let alg = match alg {
                Some(a) => OnlineChoice::parse(a)?,
                None => match f {
                    Family::CrGreedyMinSum { .. } => OnlineChoice::Greedy(Greedy::MinSum),
                    _ => OnlineChoice::Greedy(Greedy::MinMax),
                },
            };
            let r = measure_cr(f, alg, reps, seed, budget)?;
            report.row(ratio_row(&r));
            if let Some(s) = r.stats {
                report.notes.push(format!(
                    "online mean {:.4}, standard error {:.4}, {} repetitions",
                    s.mean, s.std_error, s.repetitions
                ));
            }
        }
        ExperimentKind::Prop => {
            let n = params
                .n
                .ok_or_else(|| Error::Validation("prop needs --n".into()))?;
            let ell = params
                .ell
                .ok_or_else(|| Error::Validation("prop needs --ell".into()))?;
            let p = prop_impossibility_check(n, ell, budget)?;
            report.yes = p.holds();
            let v = Rational::from_integer(p.min_max as i64);
            report.row(vec![
                "prop-impossible".into(),
                format!("n={n};ell={ell}"),
                v.to_string(),
                "1".into(),
                v.to_string(),
                p.bound.to_string(),
            ]);
        }
    }
    Ok(report)
}

fn manipulate(
    file: &Path,
    mechanism: &str,
    coalition: &[usize],
    budget: &Budget,
) -> Result<Report, Error> {
    let (inst, _) = load(file, None)?;
    let mechanism: Mechanism = mechanism.parse()?;
    let coalition = one_based(coalition, "agents")?;
    let r = search_manipulation(&inst, mechanism, &coalition, budget)?;
    let mut report = Report::table(&["agent", "truthful", "manipulated", "misreport"]);
    for (j, &i) in r.coalition.iter().enumerate() {
        let misreport = r.misreports.get(j).map_or("-".into(), |rep| {
            rep.iter()
                .map(|s| {
                    format!(
                        "{{{}}}",
                        s.iter()
                            .map(|p| format!("p{}", p + 1))
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect::<Vec<_>>()
                .join(" ")
        });
        report.row(vec![
            (i + 1).to_string(),
            r.truthful_disutility[j].to_string(),
            r.manipulated_disutility[j].to_string(),
            misreport,
        ]);
    }
    report.yes = r.found;
    report.notes.push(format!(
        "{}: truthful {} -> {}; {} joint reports visited",
        mechanism.name(),
        r.truthful_outcome,
        r.manipulated_outcome
            .as_ref()
            .map_or("no improving misreport".into(), |o| o.to_string()),
        r.visited
    ));
    Ok(report)
}

fn run(cli: Cli) -> Result<Report, Error> {
    let mut budget = cli.budget.resolve()?;
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Error::Validation("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Error::Validation(e.to_string()))?;
    }
    match cli.command {
        Command::Solve {
            file,
            method,
            constraints,
            online,
        } => solve(&file, method, constraints.as_deref(), online, &budget),
        Command::Check {
            file,
            outcome,
            constraints,
        } => check(&file, &outcome, constraints.as_deref()),
        Command::Generate {
            reduction,
            input,
            kappa,
            family,
            params,
        } => generate(
            reduction,
            input.as_deref(),
            kappa,
            family.as_deref(),
            &params,
            cli.seed,
        ),
        Command::Experiment {
            kind,
            family,
            params,
            reps,
            alg,
            objective,
            input,
        } => experiment(
            kind,
            family.as_deref(),
            &params,
            reps,
            alg.as_deref(),
            objective,
            input.as_deref(),
            cli.seed,
            &budget,
        ),
        Command::Manipulate {
            file,
            mechanism,
            coalition,
            budget: b,
        } => {
            if let Some(b) = b {
                if b == 0 {
                    return Err(Error::Validation("budgets must be positive".into()));
                }
                budget.misreports = b;
            }
            manipulate(&file, &mechanism, &coalition, &budget)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(if report.yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}
