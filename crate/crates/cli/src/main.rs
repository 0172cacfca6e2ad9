//! `surfcoh`: command-line front end for surface-cohomology.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use surface_cohomology::cohomology::named::{check_single_factor, check_two_factor};
use surface_cohomology::cohomology::{cohomology_group, cup_single, cup_two_factor, cup_two_factor_direct, Cochain, CoefficientSystem};
use surface_cohomology::diagonal::{diagonal_closed_form, verify_diagonal};
use surface_cohomology::effective_tc::search::parse_menu;
use surface_cohomology::effective_tc::{search_product_length, validate_shape, verify_obstruction, GroupEndomorphism, MuData};
use surface_cohomology::group_ring::fox_derivative;
use surface_cohomology::homotopy::verify_contracting;
use surface_cohomology::rewriting::{rules, verify_strategies};
use surface_cohomology::word::{check_genus, Generator, Word};

#[derive(Parser)]
#[command(name = "surfcoh", version, about = "Symbolic cohomology of surface groups")]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf {
        #[arg(long)]
        genus: u32,
        word: String,
    },
    /// Fox derivative of a word with respect to a generator.
    Fox {
        #[arg(long)]
        genus: u32,
        #[arg(long = "gen")]
        generator: String,
        word: String,
    },
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(Verify),
    /// Cohomology group with sign-twisted coefficients.
    Cohomology {
        /// One genus, or two separated by a comma.
        #[arg(long, value_delimiter = ',')]
        genera: Vec<u32>,
        /// e.g. `a1,b2` or `a1|b1`; `-` for the empty set.
        #[arg(long, default_value = "")]
        coeffs: String,
        #[arg(long)]
        degree: usize,
        /// Print representing cocycles and check the named basis.
        #[arg(long)]
        basis: bool,
    },
    /// Cup product of two cochains read from files.
    Cup {
        #[arg(long, value_delimiter = ',')]
        genera: Vec<u32>,
        #[arg(long)]
        coeffs1: String,
        #[arg(long)]
        coeffs2: String,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Effective topological complexity computations.
    #[command(subcommand)]
    Etc(Etc),
}

#[derive(Subcommand)]
enum Verify {
    /// Critical pairs and strategy independence of the rewriting system.
    Rewriting {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Contracting homotopy identities on random cells.
    Homotopy {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form diagonal against the generic lift.
    Diagonal {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Etc {
    /// Certificate that the classes a, b, c have nonzero product.
    Verify {
        #[arg(long)]
        genus: u32,
    },
    /// Search for nonvanishing products of degree-one classes.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    genus: u32,
    /// File with one `S1|S2` coefficient system per line.
    #[arg(long)]
    coeff_menu: PathBuf,
    #[arg(long)]
    tuple_len: usize,
    /// File with the images of the generators under μ, `a1 -> <word>`.
    #[arg(long)]
    mu: Option<PathBuf>,
    /// Allow sums of three basis cocycles in the pool.
    #[arg(long)]
    wide: bool,
}

struct Output {
    json: bool,
    quiet: bool,
}

impl Output {
    fn emit(&self, value: &impl Serialize, text: &str) -> anyhow::Result<()> {
        if self.quiet {
            return Ok(());
        }
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output { json: cli.json, quiet: cli.quiet };
    match run(cli.command, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if !out.quiet {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Runs a command; `Ok(false)` means a verification failed.
fn run(command: Command, out: &Output) -> anyhow::Result<bool> {
    match command {
        Command::Nf { genus, word } => {
            let w = Word::parse(&word, genus)?;
            let nf = w.normal_form();
            out.emit(&json!({ "genus": genus, "word": word, "normal_form": nf.to_string() }), &nf.to_string())?;
            Ok(true)
        }
        Command::Fox { genus, generator, word } => {
            let w = Word::parse(&word, genus)?;
            let u = Generator::parse(&generator)?;
            if u.index > genus {
                bail!("generator {u} out of range for genus {genus}");
            }
            let d = fox_derivative(&w, u);
            out.emit(&json!({ "genus": genus, "generator": generator, "word": word, "derivative": d.to_string() }), &d.to_string())?;
            Ok(true)
        }
        Command::Verify(v) => run_verify(v, out),
        Command::Cohomology { genera, coeffs, degree, basis } => {
            let coeffs = parse_coeffs(&coeffs, &genera)?;
            if degree > 2 * genera.len() {
                bail!("degree {degree} exceeds the dimension {}", 2 * genera.len());
            }
            let h = cohomology_group(&coeffs, degree);
            let mut text = format!("H^{degree}(pi_{genera:?}; Z_[{coeffs}]) = {}\n", h.describe());
            let mut ok = true;
            let mut checks = Vec::new();
            if basis {
                for (i, g) in h.generators.iter().enumerate() {
                    let kind = if i < h.torsion.len() { format!("order {}", h.torsion[i]) } else { "free".into() };
                    text += &format!("generator {i} ({kind}):\n{g}");
                }
                if !coeffs.is_trivial() {
                    let all = match coeffs.sets() {
                        [s] => check_single_factor(s)?,
                        _ => check_two_factor(&coeffs)?,
                    };
                    checks = all.into_iter().filter(|c| c.degree == degree).collect();
                    for c in &checks {
                        text += &format!("named basis {}: {}\n", c.expected_shape, status(c.ok()));
                        ok &= c.ok();
                    }
                }
            }
            let gens: Vec<String> = if basis { h.generators.iter().map(|g| g.to_string()).collect() } else { vec![] };
            let value = json!({
                "genera": genera,
                "coeffs": coeffs.to_string(),
                "degree": degree,
                "group": h.describe(),
                "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "free_rank": h.free_rank,
                "generators": gens,
                "named_basis": checks,
            });
            out.emit(&value, &text)?;
            Ok(ok)
        }
        Command::Cup { genera, coeffs1, coeffs2, file1, file2 } => {
            let c1 = parse_coeffs(&coeffs1, &genera)?;
            let c2 = parse_coeffs(&coeffs2, &genera)?;
            let u = Cochain::parse(&read(&file1)?, &c1)?;
            let v = Cochain::parse(&read(&file2)?, &c2)?;
            let (p, agree) = match genera.len() {
                1 => (cup_single(&u, &v)?, true),
                2 => {
                    let p = cup_two_factor(&u, &v)?;
                    let direct = cup_two_factor_direct(&u, &v)?;
                    let agree = p == direct;
                    (p, agree)
                }
                _ => bail!("one or two genera expected"),
            };
            let mut text = p.to_string();
            let mut class = None;
            if u.is_cocycle() && v.is_cocycle() && p.degree() <= 2 * genera.len() {
                let co = cohomology_group(p.coeffs(), p.degree()).class_coordinates(&p)?;
                text += &format!("class: {co}\n");
                class = Some(co);
            }
            if !agree {
                text += "diagram route and direct dualization DISAGREE\n";
            }
            let value = json!({
                "coeffs": p.coeffs().to_string(),
                "degree": p.degree(),
                "product": p.to_string(),
                "class": class,
                "routes_agree": agree,
            });
            out.emit(&value, &text)?;
            Ok(agree)
        }
        Command::Etc(Etc::Verify { genus }) => {
            let r = verify_obstruction(genus)?;
            let mut text = String::new();
            for c in &r.classes {
                text += &format!(
                    "{}: diagonal {} twisted {} effective zero-divisor: {}\n",
                    c.class, c.diagonal, c.twisted_diagonal, c.verdict
                );
            }
            text += &format!("abc = {}\n", r.product);
            match &r.certificate {
                Some(cert) => text += &format!("{cert}\n"),
                None => text += "no certificate\n",
            }
            out.emit(&r, &text)?;
            Ok(r.ok())
        }
        Command::Etc(Etc::Search(args)) => run_search(args, out),
    }
}

fn parse_coeffs(spec: &str, genera: &[u32]) -> anyhow::Result<CoefficientSystem> {
    if genera.is_empty() || genera.len() > 2 {
        bail!("one or two genera expected");
    }
    if spec.is_empty() {
        return Ok(CoefficientSystem::trivial(genera));
    }
    Ok(CoefficientSystem::parse(spec, genera)?)
}

fn run_verify(v: Verify, out: &Output) -> anyhow::Result<bool> {
    match v {
        Verify::Rewriting { genus, samples, max_len, seed } => {
            let pairs = {
                check_genus(genus)?;
                rules(genus)
            }.check_local_confluence();
            let strategies = verify_strategies(genus, samples, max_len, seed)?;
            let ok = pairs.ok() && strategies.ok();
            let text = format!(
                "critical pairs: {} checked, {} not joinable\nrandom words: {} checked, {} strategy-dependent\n{}\n",
                pairs.pairs,
                pairs.failures.len(),
                strategies.samples,
                strategies.failures.len(),
                status(ok)
            );
            out.emit(&json!({ "critical_pairs": pairs, "strategies": strategies, "ok": ok }), &text)?;
            Ok(ok)
        }
        Verify::Homotopy { genus, samples, max_len, seed } => {
            check_genus(genus)?;
            let single = verify_contracting(&[genus], false, samples, max_len, seed);
            let square = verify_contracting(&[genus], true, samples / 10 + 1, max_len, seed);
            let ok = single.ok() && square.ok();
            let mut text = format!(
                "s on M: {} cells, {} failures\nw on M(x)M: {} cells, {} failures\n",
                single.checked,
                single.failures.len(),
                square.checked,
                square.failures.len()
            );
            for f in single.failures.iter().chain(&square.failures).take(10) {
                text += &format!("  {f}\n");
            }
            text += status(ok);
            out.emit(&json!({ "single": single, "square": square, "ok": ok }), &text)?;
            Ok(ok)
        }
        Verify::Diagonal { genus, samples, seed } => {
            check_genus(genus)?;
            let r = verify_diagonal(&diagonal_closed_form(genus), samples, seed);
            let text = format!(
                "counit failures: {}\nchain map failures: {}\nequivariance failures: {}\nclosed form vs generic lift mismatches: {}\n{}\n",
                r.counit_failures.len(),
                r.chain_map_failures.len(),
                r.equivariance_failures.len(),
                r.closed_form_mismatches.len(),
                status(r.ok())
            );
            out.emit(&r, &text)?;
            Ok(r.ok())
        }
    }
}

fn run_search(args: SearchArgs, out: &Output) -> anyhow::Result<bool> {
    let menu = parse_menu(&read(&args.coeff_menu)?, args.genus)?;
    let mut shape = None;
    let mu = match &args.mu {
        Some(path) => {
            let lifted = GroupEndomorphism::parse(&read(path)?, args.genus)?.lift();
            shape = Some(validate_shape(&lifted)?);
            Some(MuData::Explicit(Box::new(lifted)))
        }
        None => None,
    };
    if let Some(s) = &shape {
        if !s.ok() {
            let text = format!("the supplied endomorphism does not have the expected shape: {s:?}\n");
            out.emit(&json!({ "shape": s, "ok": false }), &text)?;
            return Ok(false);
        }
    }
    let r = search_product_length(args.genus, &menu, args.tuple_len, mu.as_ref(), args.wide)?;
    let mut text = format!("pool of {} classes, {} tuples checked\n", r.pool.len(), r.tuples_checked);
    for p in &r.pool {
        let eff = match p.effective {
            Some(e) => e.to_string(),
            None => "conditional (no mu data)".into(),
        };
        text += &format!("  {}: zero-divisor {} effective {}\n", p.label, p.zero_divisor, eff);
    }
    text += &format!("{} tuples with nonvanishing product\n", r.nonvanishing.len());
    for t in &r.nonvanishing {
        let eff = match t.all_effective {
            Some(e) => e.to_string(),
            None => "conditional".into(),
        };
        text += &format!(
            "  {} in H^{}(Z_[{}]) = {}; all zero-divisors {} all effective {}\n",
            t.members.join(" . "),
            r.tuple_len,
            t.coeffs,
            t.product,
            t.all_zero_divisors,
            eff
        );
    }
    out.emit(&json!({ "shape": shape, "report": r }), &text)?;
    Ok(true)
}
