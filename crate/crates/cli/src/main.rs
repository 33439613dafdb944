//! `ordkit`: analyze finite posets written in the `.poset` format.
//!
//! Exit codes: 0 success, 1 a theorem check failed, 2 the input does not
//! parse, 3 a semantic error (unknown poset or element, missing
//! pseudocomplement, violated precondition, unreadable file).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordkit_core::dsl::{self, DotOptions, PosetDoc};
use ordkit_core::ideal;
use ordkit_core::pseudo;
use ordkit_core::randgen::{self, GenConfig};
use ordkit_core::report::AnalysisReport;
use ordkit_core::theorems::{self, CheckConfig, Status, TheoremId, TheoremReport, REGISTRY};
use ordkit_core::{Poset, Subset};

#[derive(Parser)]
#[command(name = "ordkit", version, about = "Ideals, filters and pseudocomplements of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a `.poset` file and print it in canonical form.
    Parse { file: PathBuf },
    /// Classify ideals, filters, pseudocomplements and *-ideals.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Theorems to check as part of the report: `all`, `none` or a
        /// comma-separated list of ids.
        #[arg(long, default_value = "all")]
        theorems: String,
    },
    /// Check theorems on a poset; exits 1 and prints a counterexample on failure.
    Verify {
        #[command(flatten)]
        input: Input,
        /// `all` or a comma-separated list of theorem ids.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Also write the theorem reports as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Separate an ideal from a disjoint filter.
    Separate(SeparateArgs),
    /// Generate seeded random posets, optionally checking theorems on each.
    Random(RandomArgs),
    /// Write the Hasse diagram in DOT format.
    Dot {
        #[command(flatten)]
        input: Input,
        /// Output path; standard output when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Label every node with its pseudocomplement.
        #[arg(long)]
        annotate_star: bool,
    },
}

#[derive(Args)]
struct Input {
    file: PathBuf,
    /// Entry to use; may be omitted when the file holds a single poset.
    #[arg(long)]
    poset: Option<String>,
}

#[derive(Args)]
struct SeparateArgs {
    #[command(flatten)]
    input: Input,
    /// Use the principal ideal (a] of this element.
    #[arg(long, conflicts_with = "ideal_set", required_unless_present = "ideal_set")]
    ideal: Option<String>,
    /// Use this comma-separated set of elements as the ideal.
    #[arg(long)]
    ideal_set: Option<String>,
    /// Use the principal filter [a) of this element.
    #[arg(long, conflicts_with = "filter_set", required_unless_present = "filter_set")]
    filter: Option<String>,
    /// Use this comma-separated set of elements as the filter.
    #[arg(long)]
    filter_set: Option<String>,
    /// Separate by a *-ideal; the filter must satisfy the *-condition.
    #[arg(long)]
    star: bool,
}

#[derive(Args)]
struct RandomArgs {
    /// Number of sampled elements (an adjoined bottom is extra).
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    edge_prob: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of posets, from seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Adjoin a least element `bot`.
    #[arg(long)]
    force_bottom: bool,
    /// Resample until the poset is pseudocomplemented.
    #[arg(long)]
    require_pc: bool,
    /// Resampling budget per poset for --require-pc.
    #[arg(long, default_value_t = 1000)]
    max_rejects: usize,
    /// Check theorems on every poset and stop at the first failure.
    #[arg(long)]
    verify: bool,
    /// Theorems for --verify: `all` or a comma-separated list of ids.
    #[arg(long, default_value = "all")]
    theorems: String,
    /// Write the generated posets (or, with --verify, the counterexample)
    /// to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Verification,
    Parse(String),
    Semantic(String),
}

impl From<ordkit_core::Error> for Failure {
    fn from(e: ordkit_core::Error) -> Self {
        Failure::Semantic(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Parse { file } => cmd_parse(&file),
        Command::Analyze { input, json, theorems } => cmd_analyze(&input, json.as_deref(), &theorems),
        Command::Verify { input, theorems, json } => cmd_verify(&input, &theorems, json.as_deref()),
        Command::Separate(args) => cmd_separate(&args),
        Command::Random(args) => cmd_random(&args),
        Command::Dot { input, output, annotate_star } => cmd_dot(&input, output.as_deref(), annotate_star),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Semantic(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_doc(path: &Path) -> Result<PosetDoc, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Semantic(format!("cannot read {}: {e}", path.display())))?;
    dsl::parse(&text).map_err(|e| Failure::Parse(format!("{}:{e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Semantic(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The selected entry's name and poset.
fn load(input: &Input) -> Result<(String, Poset), Failure> {
    let doc = read_doc(&input.file)?;
    let entry = match &input.poset {
        Some(name) => doc
            .entry(name)
            .ok_or_else(|| Failure::Semantic(format!("no poset named `{name}` in {}", input.file.display())))?,
        None => match doc.entries.as_slice() {
            [only] => only,
            [] => return Err(Failure::Semantic(format!("{} contains no poset", input.file.display()))),
            _ => {
                let names: Vec<&str> = doc.names().collect();
                return Err(Failure::Semantic(format!(
                    "{} contains several posets ({}); choose one with --poset",
                    input.file.display(),
                    names.join(", ")
                )));
            }
        },
    };
    Ok((entry.name.clone(), entry.to_poset()?))
}

fn theorem_list(list: &str) -> Result<Vec<TheoremId>, Failure> {
    match list.trim() {
        "all" => Ok(REGISTRY.to_vec()),
        "none" | "" => Ok(Vec::new()),
        list => list.split(',').map(|s| TheoremId::from_name(s.trim()).map_err(Failure::from)).collect(),
    }
}

fn cmd_parse(file: &Path) -> CmdResult {
    let doc = read_doc(file)?;
    for entry in &doc.entries {
        entry.to_poset().map_err(|e| Failure::Parse(format!("{}: poset `{}`: {e}", file.display(), entry.name)))?;
    }
    print!("{}", dsl::serialize(&doc));
    Ok(())
}

fn cmd_analyze(input: &Input, json: Option<&Path>, theorems: &str) -> CmdResult {
    let ids = theorem_list(theorems)?;
    let (name, p) = load(input)?;
    let report = AnalysisReport::build(&name, &p, &ids);
    report.consistency_check(&p).map_err(|e| Failure::Semantic(format!("internal inconsistency in report: {e}")))?;
    print!("{}", report.to_text());
    if let Some(path) = json {
        write_output(Some(path), &(report.to_json() + "\n"))?;
    }
    Ok(())
}

fn print_reports(reports: &[TheoremReport]) {
    let width = reports.iter().map(|r| r.theorem_id.len()).max().unwrap_or(0);
    for r in reports {
        let detail = r.detail.as_deref().map(|d| format!("  [{d}]")).unwrap_or_default();
        println!("{:<width$}  {:<14}  {} instances{detail}", r.theorem_id, r.status.to_string(), r.checked_instances);
    }
}

/// Prints the first failure's counterexample and returns its report.
fn report_failure(reports: &[TheoremReport]) -> Option<&TheoremReport> {
    let failed = reports.iter().find(|r| r.status == Status::Fail)?;
    if let Some(cex) = &failed.counterexample {
        println!();
        println!("counterexample for {}: {}", cex.theorem_id, cex.clause);
        for s in &cex.sets {
            println!("  {} = {{{}}}", s.name, s.members.join(","));
        }
        for e in &cex.elements {
            println!("  {} = {}", e.name, e.label);
        }
        println!();
        print!("{}", cex.poset);
    }
    Some(failed)
}

fn cmd_verify(input: &Input, theorems: &str, json: Option<&Path>) -> CmdResult {
    let ids = theorem_list(theorems)?;
    let (name, p) = load(input)?;
    let reports = theorems::check_many(&p, &ids, &CheckConfig::default());
    println!("poset {name}: {} theorem(s)", reports.len());
    print_reports(&reports);
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        write_output(Some(path), &(text + "\n"))?;
    }
    match report_failure(&reports) {
        Some(_) => Err(Failure::Verification),
        None => Ok(()),
    }
}

fn element_set(p: &Poset, list: &str) -> Result<Subset, Failure> {
    let labels: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(p.subset_of_labels(&labels)?)
}

fn cmd_separate(args: &SeparateArgs) -> CmdResult {
    let (_, p) = load(&args.input)?;
    let (i, i_name) = match (&args.ideal, &args.ideal_set) {
        (Some(a), _) => (p.down_set(p.element(a)?)?, format!("({a}]")),
        (None, Some(list)) => {
            let s = element_set(&p, list)?;
            let name = p.display_subset(&s);
            (s, name)
        }
        (None, None) => unreachable!("clap requires one of --ideal/--ideal-set"),
    };
    let (f, f_name) = match (&args.filter, &args.filter_set) {
        (Some(a), _) => (p.up_set(p.element(a)?)?, format!("[{a})")),
        (None, Some(list)) => {
            let s = element_set(&p, list)?;
            let name = p.display_subset(&s);
            (s, name)
        }
        (None, None) => unreachable!("clap requires one of --filter/--filter-set"),
    };
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!("I = {i_name} = {}", p.display_subset(&i));
    println!("F = {f_name} = {}", p.display_subset(&f));
    let j = if args.star {
        let t = pseudo::star_table(&p)
            .map_err(|e| Failure::Semantic(format!("poset is not pseudocomplemented: {}", e.describe(&p))))?;
        let j = pseudo::separate_star(&p, &t, &i, &f)?;
        println!("J = F_* = {}", p.display_subset(&j));
        let witness = pseudo::is_star_ideal(&p, &t, &j)?;
        println!("  J is a *-ideal: {}", yes(witness.is_some()));
        j
    } else {
        let j = ideal::separate(&p, &i, &f)?;
        println!("J = P∖F = {}", p.display_subset(&j));
        println!("  J is a prime ideal: {}", yes(ideal::is_prime_ideal(&p, &j)?));
        j
    };
    println!("  I ⊆ J: {}", yes(i.is_subset(&j)?));
    println!("  J ∩ F = ∅: {}", yes(j.is_disjoint(&f)?));
    Ok(())
}

fn cmd_random(args: &RandomArgs) -> CmdResult {
    let ids = theorem_list(&args.theorems)?;
    let cfg = GenConfig {
        n: args.n,
        edge_prob: args.edge_prob,
        seed: args.seed,
        force_bottom: args.force_bottom,
        require_pseudocomplemented: args.require_pc,
        max_rejects: args.max_rejects,
    };
    let mut generated = Vec::new();
    for (k, p) in randgen::stream(&cfg, args.count)?.enumerate() {
        let seed = cfg.seed.wrapping_add(k as u64);
        let p = p.map_err(|e| Failure::Semantic(format!("seed {seed}: {e}")))?;
        let name = format!("r{seed}");
        if args.verify {
            let reports = theorems::check_many(&p, &ids, &CheckConfig::default());
            let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
            let skipped = reports.iter().filter(|r| r.status == Status::NotApplicable).count();
            if let Some(failed) = reports.iter().find(|r| r.status == Status::Fail) {
                println!("{name}: {} failed", failed.theorem_id);
                let cex = failed.counterexample.as_ref().expect("failures carry a counterexample");
                println!("counterexample for {}: {}", cex.theorem_id, cex.clause);
                for s in &cex.sets {
                    println!("  {} = {{{}}}", s.name, s.members.join(","));
                }
                match &args.out {
                    Some(path) => {
                        write_output(Some(path), &cex.poset)?;
                        println!("counterexample written to {}", path.display());
                    }
                    None => print!("\n{}", cex.poset),
                }
                return Err(Failure::Verification);
            }
            println!("{name}: {passed} pass, {skipped} not applicable");
        } else {
            generated.push(dsl::serialize_poset(&name, &p));
        }
    }
    if !args.verify {
        write_output(args.out.as_deref(), &generated.join("\n"))?;
    }
    Ok(())
}

fn cmd_dot(input: &Input, output: Option<&Path>, annotate_star: bool) -> CmdResult {
    let (name, p) = load(input)?;
    let table = if annotate_star {
        Some(
            pseudo::star_table(&p)
                .map_err(|e| Failure::Semantic(format!("poset is not pseudocomplemented: {}", e.describe(&p))))?,
        )
    } else {
        None
    };
    let opts = DotOptions { graph_name: Some(&name), star: table.as_ref(), mark_classes: annotate_star };
    write_output(output, &dsl::to_dot(&p, &opts))
}
