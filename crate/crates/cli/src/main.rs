use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcert::budget::Budget;
use nilcert::catalog::{self, CATALOG};
use nilcert::certifier::{
    black_check, certify_general, certify_verbal, hall_check, nbf_powerful_check, CertifyOptions, Certificate,
};
use nilcert::exactpoly::SempleBounds;
use nilcert::instance::{parse_element_expr, InstanceFile, SubsetSpec};
use nilcert::lawkit::{width, Law, PositiveLaw, Word};
use nilcert::pcgroup::{PcGroup, Subgroup};
use nilcert::sections::SectionMode;
use nilcert::IntPoly;

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "nilcert", version, about = "Certify nilpotency arguments on finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Powerful group generated by a normal subset satisfying a positive law
    CertifyGeneral {
        /// Instance file, or `catalog:NAME`
        file: String,
        #[arg(long)]
        subset: Option<String>,
        /// Positive law `alpha = beta`
        #[arg(long)]
        law: Option<String>,
        /// Extra law `v = 1` checked on the whole group
        #[arg(long)]
        law_word: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Verbal subgroup of a word, with a positive law on its values
    CertifyVerbal {
        file: String,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        law: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Class of N and of G/N' next to the class of G
    Hall {
        file: String,
        /// Element list generating N, or `power K` for G^K
        #[arg(long)]
        normal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Class bound for a powerful group with a nilpotent normal subgroup
    Nbf {
        file: String,
        #[arg(long)]
        normal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Least k with gamma_k((G^(k!))') = 1, given a law holding on G
    Black {
        file: String,
        #[arg(long)]
        law_word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Width of a normal subset
    Width {
        file: String,
        #[arg(long)]
        subset: String,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in groups
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Args, Clone)]
struct Common {
    /// Write the JSON certificate here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Enumeration and substitution limit
    #[arg(long)]
    budget: Option<u64>,
    /// `i_max,deg_max,param_max`
    #[arg(long)]
    semple_bounds: Option<String>,
    /// Cross-check collection against rewriting and test every triple
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Sections::Full)]
    sections: Sections,
    /// Annihilator coefficients, lowest degree first, e.g. `1,-2,1`
    #[arg(long, allow_hyphen_values = true)]
    annihilator: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sections {
    Full,
    Standard,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Input<T> = Result<T, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Input<u8> {
    match cli.command {
        Command::CertifyGeneral { file, subset, law, law_word, common } => {
            let (inst, g) = load(&file)?;
            let opts = options(&common)?;
            let t = match subset.as_deref() {
                Some(s) => SubsetSpec::parse(s, g.names()).map_err(|e| context("--subset", e))?,
                None => match &inst.subset {
                    Some(s) => s.clone(),
                    None => default_subset(&g)?,
                },
            };
            let t = t.resolve(&g, &opts.budget)?;
            let law = positive_law(law.as_deref(), inst.law.as_ref())?;
            let v = law_word.as_deref().map(Law::parse).transpose().map_err(|e| context("--law-word", e))?;
            let cert = certify_general(&instance_name(&inst, &file), &g, &t, &law, v.as_ref(), &opts);
            finish(&cert, &common)
        }
        Command::CertifyVerbal { file, word, law, common } => {
            let (inst, g) = load(&file)?;
            let opts = options(&common)?;
            let w = match (word.as_deref(), &inst.word) {
                (Some(w), _) => Word::parse(w).map_err(|e| context("--word", e))?,
                (None, Some(w)) => w.clone(),
                (None, None) => return Err(InputError("no word given (use --word)".into())),
            };
            let law = positive_law(law.as_deref(), inst.law.as_ref())?;
            let cert = certify_verbal(&instance_name(&inst, &file), &g, &w, &law, &opts);
            finish(&cert, &common)
        }
        Command::Hall { file, normal, common } => {
            let (inst, g) = load(&file)?;
            let opts = options(&common)?;
            let n = normal_subgroup(&g, &normal, &opts.budget)?;
            let cert = hall_check(&instance_name(&inst, &file), &g, &n);
            finish(&cert, &common)
        }
        Command::Nbf { file, normal, common } => {
            let (inst, g) = load(&file)?;
            let opts = options(&common)?;
            let n = normal_subgroup(&g, &normal, &opts.budget)?;
            let cert = nbf_powerful_check(&instance_name(&inst, &file), &g, &n, &opts.budget);
            finish(&cert, &common)
        }
        Command::Black { file, law_word, common } => {
            let (inst, g) = load(&file)?;
            let opts = options(&common)?;
            let v = Law::parse(&law_word).map_err(|e| context("--law-word", e))?;
            let cert = black_check(&instance_name(&inst, &file), &g, &v, &opts.budget);
            finish(&cert, &common)
        }
        Command::Width { file, subset, common } => {
            let (_, g) = load(&file)?;
            let opts = options(&common)?;
            let t = SubsetSpec::parse(&subset, g.names()).map_err(|e| context("--subset", e))?;
            let t = t.resolve(&g, &opts.budget)?;
            match width(&g, &t, &opts.budget) {
                Ok(bfs) => {
                    println!("{}", bfs.m);
                    Ok(0)
                }
                Err(e @ nilcert::Error::Budget { .. }) => {
                    eprintln!("exhausted: {e}");
                    Ok(2)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Catalog { action } => {
            match action {
                CatalogAction::List => {
                    for e in CATALOG {
                        println!("{:<10} {}", e.name, e.summary);
                    }
                }
                CatalogAction::Show { name } => {
                    let e = catalog::entry(&name).ok_or_else(|| InputError(format!("no catalog group '{name}'")))?;
                    print!("{}", e.source);
                }
            }
            Ok(0)
        }
    }
}

fn context(what: &str, e: nilcert::Error) -> InputError {
    InputError(format!("{what}: {e}"))
}

fn load(file: &str) -> Input<(InstanceFile, PcGroup)> {
    let inst = match file.strip_prefix("catalog:") {
        Some(name) => catalog::load(name)?,
        None => {
            let text = fs::read_to_string(file).map_err(|e| InputError(format!("{file}: {e}")))?;
            InstanceFile::parse(&text).map_err(|e| InputError(format!("{file}: {e}")))?
        }
    };
    let g = inst.group().map_err(|e| InputError(format!("{file}: {e}")))?;
    Ok((inst, g))
}

fn instance_name(inst: &InstanceFile, file: &str) -> String {
    inst.name.clone().unwrap_or_else(|| file.strip_prefix("catalog:").unwrap_or(file).to_string())
}

/// Conjugation closure of a minimal generating set taken from the pc generators.
fn default_subset(g: &PcGroup) -> Input<SubsetSpec> {
    let gens = g.burnside_generators(&g.whole(), None, u64::MAX)?;
    let exprs = gens.iter().map(|x| x.0.iter().enumerate().map(|(i, &e)| (i, e as i64)).collect()).collect();
    Ok(SubsetSpec::ConjClosure(exprs))
}

fn positive_law(flag: Option<&str>, from_file: Option<&Law>) -> Input<PositiveLaw> {
    let law = match (flag, from_file) {
        (Some(s), _) => Law::parse(s).map_err(|e| context("--law", e))?,
        (None, Some(l)) => l.clone(),
        (None, None) => return Err(InputError("no law given (use --law)".into())),
    };
    law.as_positive().ok_or_else(|| InputError(format!("--law: '{law}' is not a positive law")))
}

fn normal_subgroup(g: &PcGroup, spec: &str, budget: &Budget) -> Input<Subgroup> {
    if let Some(k) = spec.trim().strip_prefix("power") {
        let k: u64 = k.trim().parse().map_err(|_| InputError(format!("--normal: bad exponent in '{spec}'")))?;
        return Ok(g.power_subgroup(&g.whole(), k, budget.enumeration)?);
    }
    let mut gens = Vec::new();
    for part in spec.split(',') {
        let e = parse_element_expr(part, g.names()).map_err(|e| context("--normal", e))?;
        gens.push(g.collect(&e));
    }
    Ok(g.closure(&gens))
}

fn options(c: &Common) -> Input<CertifyOptions> {
    let mut budget = Budget::from_env();
    if let Some(n) = c.budget {
        budget.set_count(n);
    }
    if let Some(s) = &c.semple_bounds {
        let v: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| InputError(format!("--semple-bounds: expected three integers, got '{s}'")))?;
        let [i_max, deg_max, param_max] = v[..] else {
            return Err(InputError(format!("--semple-bounds: expected three integers, got '{s}'")));
        };
        budget.semple = SempleBounds { i_max, deg_max, param_max };
    }
    let annihilator = match &c.annihilator {
        Some(s) => {
            let cs: Vec<i64> = s
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| InputError(format!("--annihilator: expected integers, got '{s}'")))?;
            Some(IntPoly::from_i64s(&cs))
        }
        None => None,
    };
    let sections = match c.sections {
        Sections::Full => SectionMode::Full,
        Sections::Standard => SectionMode::Standard,
    };
    Ok(CertifyOptions { budget, sections, annihilator, oracle: c.oracle, ..Default::default() })
}

fn finish(cert: &Certificate, common: &Common) -> Input<u8> {
    if let Some(path) = &common.report {
        fs::write(path, cert.to_json() + "\n").map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    println!("instance: {}", cert.instance);
    println!("checks: {}", cert.checks.len());
    if let Some(fail) = cert.first_failure() {
        println!("failed check: {}", fail.name);
        if !fail.detail.is_null() {
            println!("detail: {}", fail.detail);
        }
    }
    for key in ["observed_class", "k", "c", "e"] {
        if let Some(v) = cert.quantity(key) {
            println!("{}: {v}", key.replace('_', " "));
        }
    }
    println!("verdict: {}", serde_json::to_value(cert.verdict)?.as_str().unwrap_or_default());
    Ok(cert.verdict.exit_code() as u8)
}
