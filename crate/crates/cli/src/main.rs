use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use unipotent::ktheory::{bundled_table_text, korbit_enumerate, parse_table, verify_table, BUNDLED_TABLES};
use unipotent::orbits::{
    arth_set, check_birational, induce_orbit, induce_orbit_matrix_oracle, spaltenstein_dual, LeviComposition,
    DEFAULT_SEED, DEFAULT_TRIALS,
};
use unipotent::parabolic::{build_parabolic, check_theorem_hypotheses, Birationality, HypothesisReport};
use unipotent::partitions::Partition;
use unipotent::peirce::{
    corner_algebra, peirce_decompose, peirce_multiplication_check, run_suite, AlgebraModule,
    FinDimAlgebra, IdempotentFamily, PeirceBlock,
};
use unipotent::weights::{Family, LieType, Weight};

#[derive(Parser)]
#[command(name = "unipotent", version, about = "Nilpotent orbits, unipotent characters and triangularity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Output {
    /// Print machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct ParabolicArgs {
    /// Root system family (A, B, C or D).
    #[arg(long = "type")]
    family: Family,
    #[arg(long)]
    rank: usize,
    /// Sizes of the gl blocks, e.g. `2,1`; the residual factor takes the rest.
    #[arg(long, default_value = "")]
    levi: String,
}

#[derive(clap::Args)]
struct OracleArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Subcommand)]
enum Command {
    /// rho data of a standard parabolic.
    Rho {
        #[command(flatten)]
        parabolic: ParabolicArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Induce a nilpotent orbit from a Levi subalgebra.
    Induce {
        #[command(flatten)]
        parabolic: ParabolicArgs,
        /// Levi orbits separated by `;`, one per gl block then the residual.
        /// Defaults to the zero orbits.
        #[arg(long)]
        orbits: Option<String>,
        /// Also sample the matrix model and report its Jordan type.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        sampling: OracleArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Image under psi of an orbit of the dual Lie algebra.
    Dual {
        /// Type of g, e.g. `C2`; the partition lives in its dual.
        #[arg(long)]
        g: LieType,
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        out: Output,
    },
    /// The set arth(O) of special unipotent infinitesimal characters.
    Arth {
        #[arg(long)]
        g: LieType,
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        out: Output,
    },
    /// Hypotheses of the triangularity theorem for a parabolic and lambda.
    CheckHypotheses {
        #[command(flatten)]
        parabolic: ParabolicArgs,
        /// Comma-separated rationals; defaults to rho(u).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[command(flatten)]
        sampling: OracleArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Birationality of the moment map for a parabolic.
    CheckBirational {
        #[command(flatten)]
        parabolic: ParabolicArgs,
        #[command(flatten)]
        sampling: OracleArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Peirce decomposition of an algebra, or the randomized property suite.
    Peirce {
        /// Algebra JSON file, or one of `matrix:N`, `diagonal:N`, `upper:N`, `field`.
        #[arg(long, required_unless_present = "random")]
        algebra: Option<String>,
        /// Idempotent family as a JSON file or inline JSON list of vectors.
        /// `standard` picks the diagonal matrix units of a builtin algebra.
        /// Defaults to the unit alone.
        #[arg(long)]
        idempotents: Option<String>,
        /// Module JSON file; prints its corner `e_i M` for `--index`.
        #[arg(long, requires = "index")]
        module: Option<String>,
        /// One-based index of the idempotent.
        #[arg(long)]
        index: Option<usize>,
        /// Run the property suite on this many random algebras.
        #[arg(long, conflicts_with_all = ["algebra", "module"])]
        random: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest matrix size for random algebras.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Span and triangularity checks for a decomposition table.
    VerifyTable {
        /// Table JSON file or a bundled table name (sp4, sp6, sp10).
        #[arg(long)]
        file: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        #[command(flatten)]
        out: Output,
    },
    /// K-orbits on the flag variety of gl(n) for Sp(2n), with bundle labels.
    Korbits {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Serialize, Deserialize)]
struct InduceOutput {
    levi: LeviComposition,
    levi_orbits: Vec<Partition>,
    induced: Partition,
    oracle: Option<Partition>,
    seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct DualOutput {
    g: LieType,
    dual_orbit: Partition,
    orbit: Partition,
}

#[derive(Serialize, Deserialize)]
struct HypothesesOutput {
    #[serde(flatten)]
    report: HypothesisReport,
    lambda: Weight,
    seed: u64,
    trials: usize,
}

#[derive(Serialize, Deserialize)]
struct BirationalOutput {
    levi: LeviComposition,
    birational: Birationality,
    seed: u64,
    trials: usize,
}

#[derive(Serialize, Deserialize)]
struct PeirceOutput {
    dim: usize,
    idempotents: IdempotentFamily,
    blocks: Vec<PeirceBlock>,
    multiplication_ok: bool,
    corner: Option<AlgebraModule>,
}

/// Verdict of a command: `Ok(true)` exits 0, `Ok(false)` exits 1.
type Verdict = Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Verdict {
    match command {
        Command::Rho { parabolic, out } => rho(&parabolic, &out),
        Command::Induce {
            parabolic,
            orbits,
            oracle,
            sampling,
            out,
        } => induce(&parabolic, orbits.as_deref(), oracle, &sampling, &out),
        Command::Dual { g, partition, out } => dual(g, &partition, &out),
        Command::Arth { g, partition, out } => arth(g, &partition, &out),
        Command::CheckHypotheses {
            parabolic,
            lambda,
            sampling,
            out,
        } => hypotheses(&parabolic, lambda.as_deref(), &sampling, &out),
        Command::CheckBirational { parabolic, sampling, out } => birational(&parabolic, &sampling, &out),
        Command::Peirce {
            algebra,
            idempotents,
            module,
            index,
            random,
            seed,
            max_n,
            out,
        } => match random {
            Some(count) => peirce_suite(seed, count, max_n, &out),
            None => peirce(
                algebra.as_deref().unwrap_or_default(),
                idempotents.as_deref(),
                module.as_deref(),
                index,
                &out,
            ),
        },
        Command::VerifyTable { file, report, out } => table(&file, report, &out),
        Command::Korbits { n, out } => korbits(n, &out),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn levi(args: &ParabolicArgs) -> Result<LeviComposition> {
    let ambient = LieType::new(args.family, args.rank)?;
    let blocks: Vec<usize> = args
        .levi
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().with_context(|| format!("bad gl block size {s:?}")))
        .collect::<Result<_>>()?;
    let used: usize = blocks.iter().sum();
    if used > args.rank {
        bail!("gl blocks {blocks:?} exceed rank {}", args.rank);
    }
    Ok(LeviComposition::new(ambient, blocks, args.rank - used)?)
}

fn rho(args: &ParabolicArgs, out: &Output) -> Verdict {
    let p = build_parabolic(&levi(args)?);
    if out.json {
        print_json(&p)?;
    } else {
        println!("levi:  {}", p.levi);
        println!("rho_l: {}", p.rho_l);
        println!("rho_u: {}", p.rho_u);
        println!("rho_g: {}", p.rho_g);
    }
    Ok(true)
}

fn induce(args: &ParabolicArgs, orbits: Option<&str>, oracle: bool, sampling: &OracleArgs, out: &Output) -> Verdict {
    let l = levi(args)?;
    let levi_orbits = match orbits {
        Some(s) => s.split(';').map(Partition::parse).collect::<Result<Vec<_>, _>>()?,
        None => l.zero_orbits(),
    };
    let induced = induce_orbit(&l, &levi_orbits)?;
    let sampled = if oracle {
        Some(induce_orbit_matrix_oracle(&l, &levi_orbits, sampling.trials, sampling.seed)?)
    } else {
        None
    };
    let agrees = sampled.as_ref().is_none_or(|s| *s == induced);
    if out.json {
        print_json(&InduceOutput {
            levi: l,
            levi_orbits,
            induced,
            oracle: sampled,
            seed: oracle.then_some(sampling.seed),
        })?;
    } else {
        println!("{induced}");
        if let Some(s) = sampled {
            println!("matrix model: {s} (seed {}, {} trials)", sampling.seed, sampling.trials);
        }
    }
    Ok(agrees)
}

fn dual(g: LieType, partition: &str, out: &Output) -> Verdict {
    let dual_orbit = Partition::parse(partition)?;
    let orbit = spaltenstein_dual(g, &dual_orbit)?;
    if out.json {
        print_json(&DualOutput { g, dual_orbit, orbit })?;
    } else {
        println!("{orbit}");
    }
    Ok(true)
}

fn arth(g: LieType, partition: &str, out: &Output) -> Verdict {
    let orbit = Partition::parse(partition)?;
    let set = arth_set(g, &orbit)?;
    if out.json {
        print_json(&set)?;
    } else {
        for a in &set {
            println!("{}  from {}", a.character, a.orbit_dual);
        }
    }
    Ok(true)
}

fn hypotheses(args: &ParabolicArgs, lambda: Option<&str>, sampling: &OracleArgs, out: &Output) -> Verdict {
    let p = build_parabolic(&levi(args)?);
    let lambda = match lambda {
        Some(s) => Weight::parse(s)?,
        None => p.rho_u.clone(),
    };
    let report = check_theorem_hypotheses(&p, &lambda, sampling.trials, sampling.seed)?;
    let ok = report.all_hold();
    if out.json {
        print_json(&HypothesesOutput {
            report,
            lambda,
            seed: sampling.seed,
            trials: sampling.trials,
        })?;
    } else {
        println!("lambda:          {lambda}");
        println!("induced orbit:   {}", report.induced_orbit);
        println!("gamma:           {}", report.infinitesimal_character);
        println!("arth member:     {}", report.arth_member);
        println!("antidominant:    {}", report.antidominant);
        let b = match report.birational {
            Birationality::Checked(b) => b.to_string(),
            Birationality::Unchecked => "unchecked".into(),
        };
        println!("birational:      {b} (seed {})", sampling.seed);
        println!("note: {}", report.note);
    }
    Ok(ok)
}

fn birational(args: &ParabolicArgs, sampling: &OracleArgs, out: &Output) -> Verdict {
    let l = levi(args)?;
    let b = match check_birational(&l, sampling.trials, sampling.seed) {
        Ok(b) => Birationality::Checked(b),
        Err(unipotent::Error::Unsupported(_)) => Birationality::Unchecked,
        Err(e) => return Err(e.into()),
    };
    if out.json {
        print_json(&BirationalOutput {
            levi: l,
            birational: b,
            seed: sampling.seed,
            trials: sampling.trials,
        })?;
    } else {
        match b {
            Birationality::Checked(v) => println!("{v} (seed {}, {} trials)", sampling.seed, sampling.trials),
            Birationality::Unchecked => println!("unchecked: no criterion for {l}"),
        }
    }
    Ok(b.holds())
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

/// A builtin algebra and, for `standard`, its diagonal matrix units.
fn builtin_algebra(name: &str) -> Option<(FinDimAlgebra, Vec<Vec<unipotent::rational::Q>>)> {
    let (kind, n) = match name.split_once(':') {
        Some((k, n)) => (k, n.parse::<usize>().ok().filter(|&n| n > 0)?),
        None => (name, 1),
    };
    let (algebra, basis): (FinDimAlgebra, Vec<(usize, usize)>) = match kind {
        "field" => (FinDimAlgebra::field(), vec![(0, 0)]),
        "matrix" => (
            FinDimAlgebra::matrix_algebra(n),
            (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).collect(),
        ),
        "diagonal" => (FinDimAlgebra::diagonal(n), (0..n).map(|r| (r, r)).collect()),
        "upper" => (
            FinDimAlgebra::upper_triangular(n),
            (0..n).flat_map(|r| (r..n).map(move |s| (r, s))).collect(),
        ),
        _ => return None,
    };
    let standard = (0..n)
        .map(|r| {
            basis
                .iter()
                .map(|&(a, b)| unipotent::rational::q(i64::from(a == r && b == r)))
                .collect()
        })
        .collect();
    Some((algebra, standard))
}

fn peirce(
    algebra: &str,
    idempotents: Option<&str>,
    module: Option<&str>,
    index: Option<usize>,
    out: &Output,
) -> Verdict {
    let (a, standard) = match builtin_algebra(algebra) {
        Some(x) => (x.0, Some(x.1)),
        None if Path::new(algebra).exists() => (FinDimAlgebra::from_json(&read(algebra)?)?, None),
        None => bail!("{algebra:?} is neither a file nor a builtin algebra"),
    };
    let e = match idempotents {
        None => IdempotentFamily::trivial(&a),
        Some("standard") => match standard {
            Some(s) => IdempotentFamily::new(s),
            None => bail!("`standard` idempotents need a builtin algebra"),
        },
        Some(s) => {
            let text = if s.trim_start().starts_with('[') || s.trim_start().starts_with('{') {
                s.to_string()
            } else {
                read(s)?
            };
            parse_family(&text)?
        }
    };
    let blocks = peirce_decompose(&a, &e)?;
    let multiplication_ok = peirce_multiplication_check(&a, &blocks);
    let corner = match (module, index) {
        (Some(path), Some(i)) => {
            if i == 0 || i > e.len() {
                bail!("--index must lie in 1..={}", e.len());
            }
            let m = AlgebraModule::from_json(&read(path)?)?;
            m.validate(&a)?;
            Some(corner_algebra(&a, &e, i - 1)?.corner_of(&m).0)
        }
        _ => None,
    };
    if out.json {
        print_json(&PeirceOutput {
            dim: a.dim(),
            idempotents: e,
            blocks,
            multiplication_ok,
            corner,
        })?;
    } else {
        println!("algebra of dimension {}, {} idempotents", a.dim(), e.len());
        for b in &blocks {
            println!("  A_{}{}: dim {}", b.i + 1, b.j + 1, b.dim());
        }
        println!("multiplication containment: {multiplication_ok}");
        if let Some(c) = corner {
            println!("corner module: dim {}", c.dim());
        }
    }
    Ok(multiplication_ok)
}

fn parse_family(text: &str) -> Result<IdempotentFamily> {
    if let Ok(f) = serde_json::from_str::<IdempotentFamily>(text) {
        return Ok(f);
    }
    let wrapped = format!("{{\"elements\":{text}}}");
    serde_json::from_str(&wrapped).context("idempotents must be a list of coordinate vectors")
}

fn peirce_suite(seed: u64, count: usize, max_n: usize, out: &Output) -> Verdict {
    let report = run_suite(seed, count, max_n.max(1))?;
    if out.json {
        print_json(&report)?;
    } else {
        print!("{}", report.render_text());
    }
    Ok(report.passed())
}

fn table(file: &str, format: ReportFormat, out: &Output) -> Verdict {
    let text = match bundled_table_text(file) {
        Some(t) if !Path::new(file).exists() => t.to_string(),
        _ if Path::new(file).exists() => read(file)?,
        _ => bail!("{file:?} is neither a file nor a bundled table ({})", BUNDLED_TABLES.join(", ")),
    };
    let t = parse_table(&text).with_context(|| format!("malformed table {file}"))?;
    let report = verify_table(&t);
    if out.json || matches!(format, ReportFormat::Json) {
        print_json(&report)?;
    } else {
        print!("{}", report.render_text(&t));
    }
    Ok(report.passed)
}

fn korbits(n: usize, out: &Output) -> Verdict {
    let orbits = korbit_enumerate(n)?;
    if out.json {
        print_json(&orbits)?;
    } else {
        for o in &orbits {
            let labels: Vec<String> = o.bundles.iter().map(|b| format!("L({b})")).collect();
            println!("({}, {}): {}", o.pair.0, o.pair.1, labels.join(" "));
        }
    }
    Ok(true)
}
