//! Command-line front end: load algebras, parse terms and polynomials, run
//! validators, codimension tables, identity searches and normal forms.
//!
//! Exit codes: 0 on success, 1 on a semantic failure (failed relation,
//! polynomial that is not an identity, normal-form round-trip mismatch),
//! 2 on usage or I/O errors. Output is deterministic byte-for-byte.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use omega_core::algebra::FiniteAlgebra;
use omega_core::error::Error;
use omega_core::eval::validate_relations;
use omega_core::kits;
use omega_core::matrix::Matrix;
use omega_core::parser::{parse_polynomial, parse_term};
use omega_core::saturate::{codim_table, default_bound, find_identities, Codim};
use omega_core::scalar::FieldKind;
use omega_core::words::{apply, parse_word, WordKind, WordVector};

#[derive(Parser)]
#[command(
    name = "omega",
    version,
    about = "terms, identities and codimensions for finitary operation signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct AlgebraSource {
    /// Built-in algebra name, optionally with a parameter (for example
    /// `kc2-hopf`, `vector-space:2`, `group-hopf:s3`, `yd-kc2-sigma`,
    /// `yd-kc2-braided`).
    #[arg(long, conflicts_with = "algebra")]
    builtin: Option<String>,
    /// Path to a JSON algebra definition file.
    #[arg(long)]
    algebra: Option<String>,
    /// Dimension parameter for `vector-space`.
    #[arg(long)]
    dim: Option<u32>,
    /// Scalar field: `q` or `gfp:P` for a prime P.
    #[arg(long, default_value = "q")]
    field: String,
}

impl AlgebraSource {
    fn field_kind(&self) -> Result<FieldKind, Error> {
        let text = self.field.to_lowercase();
        let kind = if text == "q" {
            FieldKind::Rational
        } else if let Some(p) = text.strip_prefix("gfp:") {
            FieldKind::Prime(
                p.parse()
                    .map_err(|_| Error::Scalar(format!("bad prime `{p}`")))?,
            )
        } else {
            return Err(Error::Scalar(format!(
                "unknown field `{text}`, expected q or gfp:P"
            )));
        };
        kind.validate()?;
        Ok(kind)
    }

    fn load(&self) -> Result<FiniteAlgebra, Error> {
        let field = self.field_kind()?;
        match (&self.builtin, &self.algebra) {
            (Some(name), None) => {
                let (base, param) = match name.split_once(':') {
                    Some((b, p)) => (b, Some(p.to_string())),
                    None => (name.as_str(), None),
                };
                let param = match (param, self.dim) {
                    (Some(p), _) => Some(p),
                    (None, Some(d)) => Some(d.to_string()),
                    (None, None) => None,
                };
                kits::builtin_algebra(base, param.as_deref(), field)
            }
            (None, Some(path)) => {
                let alg = FiniteAlgebra::from_json(&std::fs::read_to_string(path)?)?;
                if field != alg.field() && self.field.to_lowercase() != "q" {
                    alg.with_field(field)
                } else {
                    Ok(alg)
                }
            }
            _ => Err(Error::Algebra(
                "exactly one of --builtin and --algebra is required".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the braiding and a named relation set against an algebra.
    Validate {
        #[command(flatten)]
        source: AlgebraSource,
        /// Relation set: v-symm, v-assoc, v-hopf, v-cochopf,
        /// v-commcochopf, c2-identities, v2(n), v3(n), v-symm-d(d,n).
        #[arg(long)]
        relations: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a term to its matrix.
    Eval {
        #[command(flatten)]
        source: AlgebraSource,
        /// Term, e.g. "mu . (S # id(1)) . Delta".
        term: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check whether a polynomial evaluates to zero.
    Check {
        #[command(flatten)]
        source: AlgebraSource,
        /// Polynomial, e.g. "mu . Delta - u . eps".
        poly: String,
    },
    /// One codimension value with its stability flag.
    Codim {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: u32,
        /// Intermediate object bound; defaults to max(m,n) plus twice the
        /// largest generator coarity.
        #[arg(short = 'K', long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The full codimension grid up to (max-m, max-n).
    Table {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long)]
        max_m: u32,
        #[arg(long)]
        max_n: u32,
        #[arg(short = 'K', long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// A basis of vanishing linear combinations of the given terms.
    Identities {
        #[command(flatten)]
        source: AlgebraSource,
        /// A term; repeat for more.
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compile a word tuple to its normal-form monomial and verify the
    /// group-algebra round trip.
    NormalForm {
        /// `phi` (free words) or `psi` (free-abelian words).
        kind: String,
        /// Comma-separated word literals, e.g. "x1*x2*x1^-1,x5*x2^-1*x1^2".
        words: String,
        /// Number of variables; defaults to the largest index used.
        #[arg(short)]
        m: Option<u32>,
    },
    /// Information about built-in algebras.
    Builtin {
        /// Only `list` is supported.
        action: String,
    },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early (e.g. `| head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Validate {
            source,
            relations,
            format,
        } => cmd_validate(source, relations, format),
        Command::Eval {
            source,
            term,
            format,
        } => cmd_eval(source, &term, format),
        Command::Check { source, poly } => cmd_check(source, &poly),
        Command::Codim {
            source,
            m,
            n,
            bound,
            format,
        } => cmd_codim(source, m, n, bound, format),
        Command::Table {
            source,
            max_m,
            max_n,
            bound,
            format,
        } => cmd_table(source, max_m, max_n, bound, format),
        Command::Identities {
            source,
            terms,
            format,
        } => cmd_identities(source, &terms, format),
        Command::NormalForm { kind, words, m } => cmd_normal_form(&kind, &words, m),
        Command::Builtin { action } => cmd_builtin(&action),
    }
}

fn cmd_validate(
    source: AlgebraSource,
    relations: Option<String>,
    format: Format,
) -> Result<ExitCode, Error> {
    let alg = source.load()?;
    let mut all_passed = true;

    let braiding_report = match alg.braiding() {
        omega_core::algebra::Braiding::Swap => None,
        omega_core::algebra::Braiding::Custom { c, .. } => {
            Some(omega_core::algebra::validate_braiding(c)?)
        }
    };
    if let Some(report) = &braiding_report {
        all_passed &= report.passed();
    }

    let reports = match &relations {
        Some(name) => validate_relations(&alg, &kits::relation_set_by_name(name)?)?,
        None => Vec::new(),
    };
    all_passed &= reports.iter().all(|r| r.passed);

    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "relation": r.name,
                        "passed": r.passed,
                        "witness_input": r.witness.as_ref().map(|w| w.input.clone()),
                    })
                })
                .collect();
            let braiding = braiding_report.as_ref().map(|b| {
                serde_json::json!({
                    "invertible": b.invertible,
                    "yang_baxter": b.yang_baxter,
                    "order": b.order,
                })
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "braiding": braiding,
                    "relations": items,
                    "passed": all_passed,
                }))?
            );
        }
        Format::Csv => {
            println!("relation,passed,witness");
            if let Some(b) = &braiding_report {
                println!("braiding-invertible,{},", b.invertible);
                println!("braiding-yang-baxter,{},", b.yang_baxter);
            }
            for r in &reports {
                println!(
                    "{},{},{}",
                    r.name,
                    r.passed,
                    r.witness
                        .as_ref()
                        .map(|w| w.input.clone())
                        .unwrap_or_default()
                );
            }
        }
        Format::Text => {
            if let Some(b) = &braiding_report {
                println!(
                    "braiding: invertible={} yang-baxter={}{}",
                    b.invertible,
                    b.yang_baxter,
                    b.order.map(|o| format!(" order={o}")).unwrap_or_default()
                );
                if let Some(residual) = &b.residual {
                    println!("yang-baxter residual:");
                    print!("{residual}");
                }
            }
            for r in &reports {
                match &r.witness {
                    None => println!("{}: pass", r.name),
                    Some(w) => println!(
                        "{}: FAIL on input {} -> [{}]",
                        r.name,
                        w.input,
                        w.column.join(", ")
                    ),
                }
            }
            println!("result: {}", if all_passed { "pass" } else { "FAIL" });
        }
    }
    Ok(exit(all_passed))
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_eval(source: AlgebraSource, term: &str, format: Format) -> Result<ExitCode, Error> {
    let alg = source.load()?;
    let t = parse_term(term, alg.sig())?;
    let m = omega_core::eval::evaluate(&alg, &t)?;
    print_matrix(&m, format, t.dom(), t.cod())?;
    Ok(ExitCode::SUCCESS)
}

fn print_matrix(m: &Matrix, format: Format, dom: u32, cod: u32) -> Result<(), Error> {
    match format {
        Format::Text => {
            println!(
                "dom = {dom}, cod = {cod}, shape = {}x{}",
                m.rows(),
                m.cols()
            );
            print!("{m}");
        }
        Format::Csv => {
            for row in m.dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", cells.join(","));
            }
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = m
                .dense()
                .into_iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "dom": dom,
                    "cod": cod,
                    "rows": m.rows(),
                    "cols": m.cols(),
                    "entries": rows,
                }))?
            );
        }
    }
    Ok(())
}

fn cmd_check(source: AlgebraSource, poly: &str) -> Result<ExitCode, Error> {
    let alg = source.load()?;
    let p = parse_polynomial(poly, alg.sig())?;
    let holds = omega_core::eval::check_identity(&alg, &p)?;
    println!("identity: {holds}");
    Ok(exit(holds))
}

fn cmd_codim(
    source: AlgebraSource,
    m: u32,
    n: u32,
    bound: Option<u32>,
    format: Format,
) -> Result<ExitCode, Error> {
    let alg = source.load()?;
    let bound = bound.unwrap_or_else(|| default_bound(&alg, m, n));
    let c = omega_core::saturate::codim(&alg, m, n, bound)?;
    if !c.stable {
        eprintln!(
            "warning: rank {} at bound {bound} but {} at bound {}; raise -K",
            c.value,
            c.rank_at_next_bound,
            bound + 1
        );
    }
    match format {
        Format::Text => println!(
            "codim({m},{n}) = {} [K={bound}, stable={}]",
            c.value, c.stable
        ),
        Format::Csv => println!(
            "m,n,K,value,stable\n{m},{n},{bound},{},{}",
            c.value, c.stable
        ),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "m": m, "n": n, "bound": bound,
                "value": c.value,
                "rank_at_next_bound": c.rank_at_next_bound,
                "stable": c.stable,
            }))?
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(
    source: AlgebraSource,
    max_m: u32,
    max_n: u32,
    bound: Option<u32>,
    format: Format,
) -> Result<ExitCode, Error> {
    let alg = source.load()?;
    let bound = bound.unwrap_or_else(|| default_bound(&alg, max_m, max_n));
    let grid = codim_table(&alg, max_m, max_n, bound)?;
    match format {
        Format::Text => {
            println!("codimensions at K = {bound} (value* marks an unstable rank)");
            let header: String = (0..=max_n)
                .map(|n| format!("{:>8}", format!("n={n}")))
                .collect();
            println!("{:>6}{header}", "");
            for (m, row) in grid.iter().enumerate() {
                let cells: String = row
                    .iter()
                    .map(|c| format!("{:>8}", render_codim(c)))
                    .collect();
                println!("{:>6}{cells}", format!("m={m}"));
            }
        }
        Format::Csv => {
            println!("m,n,value,stable");
            for (m, row) in grid.iter().enumerate() {
                for (n, c) in row.iter().enumerate() {
                    println!("{m},{n},{},{}", c.value, c.stable);
                }
            }
        }
        Format::Json => {
            let rows: Vec<Vec<serde_json::Value>> = grid
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| serde_json::json!({"value": c.value, "stable": c.stable}))
                        .collect()
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "bound": bound,
                    "grid": rows,
                }))?
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_codim(c: &Codim) -> String {
    if c.stable {
        c.value.to_string()
    } else {
        format!("{}*", c.value)
    }
}

fn cmd_identities(
    source: AlgebraSource,
    term_texts: &[String],
    format: Format,
) -> Result<ExitCode, Error> {
    let alg = source.load()?;
    let terms = term_texts
        .iter()
        .map(|t| parse_term(t, alg.sig()))
        .collect::<Result<Vec<_>, _>>()?;
    let kernel = find_identities(&alg, &terms)?;
    match format {
        Format::Text => {
            println!("kernel dimension: {}", kernel.len());
            for p in &kernel {
                println!("{p}");
            }
        }
        Format::Csv => {
            println!("polynomial");
            for p in &kernel {
                println!("\"{p}\"");
            }
        }
        Format::Json => {
            let polys: Vec<String> = kernel.iter().map(|p| p.to_string()).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "kernel_dimension": kernel.len(),
                    "polynomials": polys,
                }))?
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_normal_form(kind: &str, words_text: &str, m: Option<u32>) -> Result<ExitCode, Error> {
    let word_kind = match kind {
        "phi" => WordKind::Free,
        "psi" => WordKind::FreeAbelian,
        other => {
            return Err(Error::Word(format!(
                "unknown normal form `{other}`, expected phi or psi"
            )))
        }
    };
    let words = words_text
        .split(',')
        .map(|w| parse_word(w, word_kind))
        .collect::<Result<Vec<_>, _>>()?;
    let n = words.len() as u32;
    let max_index = words.iter().map(|w| w.max_index()).max().unwrap_or(0);
    let m = m.unwrap_or(max_index.max(1));
    if m < max_index {
        return Err(Error::Word(format!(
            "-m {m} is smaller than the largest variable index {max_index}"
        )));
    }
    let term = match word_kind {
        WordKind::Free => kits::phi(m, n, &words)?,
        WordKind::FreeAbelian => kits::psi_words(m, n, &words)?,
    };
    println!("term: {term}");
    let image = apply(&term, &WordVector::generators(word_kind, m))?;
    let target = kits::normal_form_target(word_kind, &words);
    println!("image on generators: {image}");
    if image == target {
        println!("round-trip: pass");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("round-trip: FAIL (expected {target})");
        Ok(ExitCode::from(1))
    }
}

fn cmd_builtin(action: &str) -> Result<ExitCode, Error> {
    if action != "list" {
        return Err(Error::Algebra(format!("unknown action `{action}`")));
    }
    println!("kc2-hopf            2-dim group Hopf algebra of the order-two group");
    println!("group-hopf:G        group Hopf algebra from a table (G = c2, cN, s3)");
    println!("vector-space:d      d-dim space, empty signature, swap braiding");
    println!("yd-kc2-sigma        2-dim module with its braiding as a 2->2 operation");
    println!("yd-kc2-braided      2-dim module, empty signature, braided backend");
    Ok(ExitCode::SUCCESS)
}
