use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use bzcrystal_core::bz_affine::{greedy_ascent, seven_conditions_report, AffineBz};
use bzcrystal_core::crystal_graph::{bfs, census_compare, kostant_table, CrystalElement, CrystalGraph};
use bzcrystal_core::tableaux_psi::{psi, psi_inverse};
use bzcrystal_core::{parse_word, BzDatum, Error as CoreError, Interval, Kind, LusztigDatum};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "bzcrystal", version, about = "Berenstein-Zelevinsky data and their crystals")]
struct Cli {
    /// Worker threads for graph construction (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a BZ datum (JSON) against the axioms; exit 1 on violations.
    Verify { input: Option<PathBuf> },
    /// Map a Lusztig datum (JSON) to its e-BZ datum.
    Psi { input: Option<PathBuf> },
    /// Map an e-BZ datum (JSON) back to its Lusztig datum.
    PsiInv { input: Option<PathBuf> },
    /// Apply an operator word such as "f*0,f1,e0" and print weight and eps.
    Apply {
        #[arg(long)]
        word: String,
        /// Affine rank parameter; without it the word acts on --input.
        #[arg(long)]
        l: Option<usize>,
        /// Finite starting datum (Lusztig or BZ JSON); zero datum if absent.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Interval for the zero Lusztig datum when no input is given.
        #[arg(long, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Export the crystal graph below the highest element.
    Graph {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Structure::Star)]
        structure: Structure,
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Stop after this many nodes; the output is then marked incomplete.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Weight multiplicities of the affine crystal against the Kostant count.
    Counts {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        depth: usize,
    },
    /// The seven characterizing conditions on all elements up to a depth.
    CheckSeven {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Greedy starred ascent from random lowering words.
    CheckConnected {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Lusztig,
    BzFin,
    Affine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Star,
    Ordinary,
}

enum Failure {
    /// Unreadable or ill-formed input.
    Malformed(anyhow::Error),
    /// Well-formed input that fails a check.
    Check(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Malformed(e)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Malformed(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn read_json(path: &Option<PathBuf>) -> anyhow::Result<serde_json::Value> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        }
    }
    serde_json::from_str(&text).context("parsing JSON")
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn format_weight(wt: &[i64], first: i64, hat: bool) -> String {
    let root = if hat { "α̂" } else { "α" };
    let mut out = String::new();
    for (idx, &c) in wt.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let sep = if out.is_empty() { "" } else { " " };
        let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
        out.push_str(&format!("{}{}{}{}_{}", sep, sign, mag, root, first + idx as i64));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { input } => {
            let d = BzDatum::from_json(&read_json(&input)?)?;
            let rep = d.verify();
            print_json(&serde_json::json!({ "valid": rep.is_valid(), "violations": rep.violations }));
            if rep.is_valid() {
                Ok(())
            } else {
                Err(Failure::Check(format!("{} violations", rep.violations.len())))
            }
        }
        Command::Psi { input } => {
            let a = LusztigDatum::from_json(&read_json(&input)?)?;
            print_json(&psi(&a)?.to_json());
            Ok(())
        }
        Command::PsiInv { input } => {
            let d = BzDatum::from_json(&read_json(&input)?)?;
            match psi_inverse(&d) {
                Ok(a) => {
                    print_json(&a.to_json());
                    Ok(())
                }
                Err(e @ (CoreError::Invalid(_) | CoreError::NegativeEntry { .. } | CoreError::WrongNormalization { .. })) => {
                    Err(Failure::Check(e.to_string()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Apply { word, l, input, n, m } => apply(&word, l, input, n, m),
        Command::Graph { model, depth, format, structure, l, n, m, budget } => {
            let starred = matches!(structure, Structure::Star);
            let text = match model {
                Model::Lusztig => {
                    let root = LusztigDatum::zero(Interval::new(n, m)?);
                    render(&bfs(&root, starred, depth, budget, true)?, format)
                }
                Model::BzFin => {
                    let root = psi(&LusztigDatum::zero(Interval::new(n, m)?))?;
                    render(&bfs(&root, starred, depth, budget, true)?, format)
                }
                Model::Affine => render(&bfs(&AffineBz::o_star(l)?, starred, depth, budget, true)?, format),
            };
            print!("{}", text);
            Ok(())
        }
        Command::Counts { l, depth } => {
            let g = bfs(&AffineBz::o_star(l)?, true, depth, None, true)?;
            let rep = census_compare(&g.census(), &kostant_table(l, depth)?, depth as i64);
            println!("# l = {}, height <= {}", l, depth);
            println!("{:<24} {:>8} {:>8}", "weight", "crystal", "kostant");
            for r in &rep.rows {
                println!("{:<24} {:>8} {:>8}", format_weight(&r.weight, 0, true), r.found, r.expected);
            }
            if rep.passed() {
                println!("all {} weights agree", rep.rows.len());
                Ok(())
            } else {
                Err(Failure::Check(format!("{} weights disagree", rep.mismatches.len())))
            }
        }
        Command::CheckSeven { l, depth } => {
            let rep = seven_conditions_report(l, depth)?;
            print_json(&serde_json::to_value(&rep).expect("serializable"));
            if rep.all_pass() {
                Ok(())
            } else {
                Err(Failure::Check("a condition failed".into()))
            }
        }
        Command::CheckConnected { l, trials, len, seed } => check_connected(l, trials, len, seed),
    }
}

fn render<E: CrystalElement>(g: &CrystalGraph<E>, format: Format) -> String {
    match format {
        Format::Dot => g.to_dot(),
        Format::Json => g.to_json(),
    }
}

fn apply(word: &str, l: Option<usize>, input: Option<PathBuf>, n: i64, m: Option<usize>) -> Outcome {
    let word = parse_word(word)?;
    if let Some(l) = l {
        let mut ops = Vec::with_capacity(word.len());
        for &(kind, p) in &word {
            if p < 0 || p >= l as i64 {
                return Err(CoreError::BadResidue { p, l }.into());
            }
            ops.push((kind, p as usize));
        }
        let o = AffineBz::o_star(l)?;
        let Some(x) = o.apply_word(&ops)? else {
            return Err(Failure::Check("a raising operator vanished".into()));
        };
        println!("element: {}", x);
        println!("wt = {}", format_weight(&x.weight_hat(), 0, true));
        println!("{:>3} {:>5} {:>5} {:>5} {:>5}", "p", "eps", "phi", "eps*", "phi*");
        for p in 0..l {
            println!(
                "{:>3} {:>5} {:>5} {:>5} {:>5}",
                p,
                x.eps_hat(p, false)?,
                x.phi_hat(p, false)?,
                x.eps_hat(p, true)?,
                x.phi_hat(p, true)?
            );
        }
        println!("window radius {}", x.radius());
        return Ok(());
    }
    let start = match (&input, m) {
        (Some(_), _) => read_json(&input)?,
        (None, Some(m)) => LusztigDatum::zero(Interval::new(n, m)?).to_json(),
        (None, None) => return Err(Failure::Malformed(anyhow!("give --l for affine data, or --input / --m for finite data"))),
    };
    if start.get("components").is_some() {
        let mut d = BzDatum::from_json(&start)?;
        for &(kind, i) in &word {
            d = d.kashiwara(i, kind)?.ok_or_else(|| Failure::Check(format!("{}{} vanished", kind, i)))?;
        }
        print_json(&d.to_json());
        let s = d.scalars()?;
        print_table(&s.wt, d.interval(), &s.eps, &s.phi, &s.eps_star, &s.phi_star);
    } else {
        let mut a = LusztigDatum::from_json(&start)?;
        for &(kind, i) in &word {
            a = a.kashiwara(i, kind)?.ok_or_else(|| Failure::Check(format!("{}{} vanished", kind, i)))?;
        }
        print_json(&a.to_json());
        let meta = a.meta();
        let col = |f: fn(&bzcrystal_core::IndexMeta) -> i64| meta.per_index.iter().map(f).collect::<Vec<_>>();
        print_table(&meta.wt, a.interval(), &col(|x| x.eps), &col(|x| x.phi), &col(|x| x.eps_star), &col(|x| x.phi_star));
    }
    Ok(())
}

fn print_table(wt: &[i64], iv: Interval, eps: &[i64], phi: &[i64], eps_s: &[i64], phi_s: &[i64]) {
    println!("wt = {}", format_weight(wt, iv.first(), false));
    println!("{:>3} {:>5} {:>5} {:>5} {:>5}", "i", "eps", "phi", "eps*", "phi*");
    for (idx, i) in iv.indices().enumerate() {
        println!("{:>3} {:>5} {:>5} {:>5} {:>5}", i, eps[idx], phi[idx], eps_s[idx], phi_s[idx]);
    }
}

fn check_connected(l: usize, trials: usize, len: usize, seed: u64) -> Outcome {
    println!("# prng: ChaCha8 seed {}", seed);
    println!("# l = {}, trials = {}, word length <= {}", l, trials, len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = AffineBz::o_star(l)?;
    let mut failures = 0;
    for t in 0..trials {
        let k = rng.gen_range(0..=len);
        let word: Vec<(Kind, usize)> = (0..k).map(|_| (Kind::FStar, rng.gen_range(0..l))).collect();
        let m = o.apply_word(&word)?.expect("lowering never vanishes");
        let a = greedy_ascent(&m)?;
        let ok = a.reached_o_star && a.steps as i64 == a.height;
        if !ok {
            failures += 1;
            println!("trial {}: FAIL word {} steps {} height {}", t, m, a.steps, a.height);
        }
    }
    println!("{}/{} trials reached O* in height(-wt) steps", trials - failures, trials);
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} trials failed", failures)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Malformed(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
