use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nonassoc_core::assoc::{composite_commutator, concrete_associator, CompositeOp};
use nonassoc_core::cayley_dickson::{
    check_identity, find_zero_divisor, Identity, IdentityCheck, Table,
};
use nonassoc_core::normal_form::{normalize_expr, Comb, NormalFormOptions};
use nonassoc_core::observability::{
    bracketing_defect, classify, expectation, generated_subalgebra, nucleus, Bracketing,
    StateVector,
};
use nonassoc_core::parser::{parse, parse_term};
use nonassoc_core::scalar::parse_rational;
use nonassoc_core::ym::{
    check_index_hygiene, decouple, substitute_decomposition, substitute_symbolic, ym_equations,
    Decomposition, DerivedEquation, GaugeContext, YmOptions,
};
use nonassoc_core::{Algebra, Element, Sign, Subspace};
use serde_json::{json, Value};

mod style;
use style::Style;

#[derive(Parser)]
#[command(
    name = "nonassoc",
    version,
    about = "Non-associative operator algebra toolkit"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Built-in algebra: r, c, quat, oct, split-oct, sed.
    #[arg(long, default_value = "oct", conflicts_with = "algebra_file")]
    algebra: String,
    /// JSON algebra description with `gammas` and/or a dense `table`.
    #[arg(long)]
    algebra_file: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Minus => Sign::Minus,
            SignArg::Plus => Sign::Plus,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum CombArg {
    Left,
    Right,
}

impl From<CombArg> for Comb {
    fn from(c: CombArg) -> Comb {
        match c {
            CombArg::Left => Comb::Left,
            CombArg::Right => Comb::Right,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum BracketingArg {
    Left,
    Right,
}

#[derive(Copy, Clone, ValueEnum)]
enum GroupArg {
    Su2,
    U1,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a concrete algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Concrete associator `(ab)c ∓ a(bc)` of three elements.
    Assoc {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Three comma-separated elements, e.g. `e1,e2,e4`.
        #[arg(long)]
        triple: String,
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
    },
    /// Basis of the nucleus.
    Nucleus {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Subalgebra generated by a set of elements.
    Subalgebra {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Comma-separated generators.
        #[arg(long)]
        gens: String,
    },
    /// Is the generated subalgebra associative?
    Classify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        gens: String,
    },
    /// Expectation value of an operator in a discretized state.
    Expect {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Sites `weight:element` separated by `;`; the weight defaults to 1.
        #[arg(long)]
        psi: String,
        #[arg(long)]
        m: String,
        #[arg(long, value_enum, default_value = "left")]
        bracketing: BracketingArg,
    },
    /// Difference between the left and right bracketed expectation values.
    Defect {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        m: String,
    },
    /// (Anti)commutator of two composite operators in comb normal form.
    Commutator {
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
        /// First operator, a single bracketed product.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "left")]
        target: CombArg,
        /// Associator used by the rewrite.
        #[arg(long, value_enum, default_value = "minus")]
        rewrite: SignArg,
    },
    /// Rewrite every term of an expression into comb normal form.
    Normalform {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "left")]
        target: CombArg,
        #[arg(long, value_enum, default_value = "minus")]
        rewrite: SignArg,
    },
    /// Gauge field equations, optionally with the potential decomposed.
    Ym(YmArgs),
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Name, dimension and construction.
    Info {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Multiplication table of the basis.
    Table {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Exhaustive identity checks over basis tuples.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Check only this identity.
        #[arg(long)]
        identity: Option<Identity>,
    },
    /// First zero divisor pair of the form `e_a ± e_b`.
    ZeroDivisor {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
}

#[derive(Args)]
struct YmArgs {
    #[arg(long, value_enum, default_value = "su2", conflicts_with = "group_file")]
    group: GroupArg,
    /// Structure constants `{"group", "n", "f": [[a, b, c, value], ...]}`.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// Number of colors for the abelian group.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..=16))]
    colors: u16,
    /// Covariant divergence instead of the plain one.
    #[arg(long)]
    covariant: bool,
    /// Set the coupling to zero.
    #[arg(long)]
    g_zero: bool,
    /// Number of factors in the decomposition of the potential.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=6))]
    depth: Option<u16>,
    #[arg(long, value_enum, default_value = "left", requires = "depth")]
    nesting: CombArg,
    /// Values each inner index runs over.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=9), requires = "depth")]
    inner_range: u16,
    /// Keep inner indices as symbolic dummies.
    #[arg(long, requires = "depth")]
    symbolic: bool,
    /// Print term counts instead of the equations.
    #[arg(long)]
    census: bool,
}

fn main() -> ExitCode {
    let style = Style::detect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
        {
            eprintln!("{} {e}", style.error("error:"));
            return ExitCode::from(1);
        }
    }
    match run(&cli, &style) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{} {e:#}", style.error("error:"));
            ExitCode::from(1)
        }
    }
}

fn load_algebra(args: &AlgebraArgs) -> Result<Arc<Algebra>> {
    let alg = match &args.algebra_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let value: Value = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            Algebra::from_json(&value)?
        }
        None => Algebra::by_alias(&args.algebra)?,
    };
    Ok(Arc::new(alg))
}

fn element_list(alg: &Arc<Algebra>, text: &str) -> Result<Vec<Element>> {
    text.split(',')
        .map(|s| Ok(Element::parse(alg, s.trim())?))
        .collect()
}

fn state(alg: &Arc<Algebra>, text: &str) -> Result<StateVector> {
    let mut sites = Vec::new();
    for site in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (w, v) = match site.split_once(':') {
            Some((w, v)) => (
                parse_rational(w.trim()).with_context(|| format!("bad weight {w:?}"))?,
                v,
            ),
            None => (nonassoc_core::scalar::int(1), site),
        };
        sites.push((w, Element::parse(alg, v.trim())?));
    }
    Ok(StateVector::new(sites)?)
}

fn basis_line(space: &Subspace) -> String {
    let basis: Vec<String> = space.basis().iter().map(|b| b.to_string()).collect();
    format!("dim {}: {}\n", space.dim(), basis.join(", "))
}

fn space_json(space: &Subspace) -> Value {
    json!({
        "dim": space.dim(),
        "basis": space.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli, style: &Style) -> Result<String> {
    let json = cli.json;
    match &cli.command {
        Command::Algebra { action } => run_algebra(action, json, style),
        Command::Assoc {
            algebra,
            triple,
            sign,
        } => {
            let alg = load_algebra(algebra)?;
            let xs = element_list(&alg, triple)?;
            let [a, b, c] = xs.as_slice() else {
                bail!("--triple needs exactly three elements, got {}", xs.len());
            };
            let v = concrete_associator((*sign).into(), a, b, c)?;
            Ok(if json {
                pretty(&json!({"value": v.to_string(), "coeffs": v.to_json()}))
            } else {
                format!("{v}\n")
            })
        }
        Command::Nucleus { algebra } => {
            let n = nucleus(&load_algebra(algebra)?);
            Ok(if json {
                pretty(&space_json(&n))
            } else {
                basis_line(&n)
            })
        }
        Command::Subalgebra { algebra, gens } => {
            let alg = load_algebra(algebra)?;
            let s = generated_subalgebra(&element_list(&alg, gens)?)?;
            Ok(if json {
                pretty(&space_json(&s))
            } else {
                basis_line(&s)
            })
        }
        Command::Classify { algebra, gens } => {
            let alg = load_algebra(algebra)?;
            let report = classify(&element_list(&alg, gens)?)?;
            if json {
                return Ok(pretty(&report.to_json()));
            }
            let mut out = format!(
                "{} {}\nclosure {}",
                style.label("observable:"),
                if report.observable { "yes" } else { "no" },
                basis_line(&report.closure)
            );
            if let Some(w) = &report.witness {
                let basis = report.closure.basis();
                let [i, j, k] = w.indices.map(|n| basis[n].to_string());
                out += &format!(
                    "{} {{{i}, {j}, {k}}}- = {}\n",
                    style.label("witness:"),
                    w.value
                );
            }
            if let Some(closed) = report.involution_closed {
                out += &format!(
                    "{} {}\n",
                    style.label("involution closed:"),
                    if closed { "yes" } else { "no" }
                );
            }
            Ok(out)
        }
        Command::Expect {
            algebra,
            psi,
            m,
            bracketing,
        } => {
            let alg = load_algebra(algebra)?;
            let psi = state(&alg, psi)?;
            let m = Element::parse(&alg, m)?;
            let b = match bracketing {
                BracketingArg::Left => Bracketing::Left,
                BracketingArg::Right => Bracketing::Right,
            };
            let v = expectation(&psi, &m, b)?;
            Ok(if json {
                pretty(&json!({"value": v.to_string(), "real": v.is_real()}))
            } else {
                format!("{v}\n")
            })
        }
        Command::Defect { algebra, psi, m } => {
            let alg = load_algebra(algebra)?;
            let v = bracketing_defect(&state(&alg, psi)?, &Element::parse(&alg, m)?)?;
            Ok(if json {
                pretty(&json!({"defect": v.to_string(), "zero": v.is_zero()}))
            } else {
                format!("{v}\n")
            })
        }
        Command::Commutator {
            sign,
            a,
            b,
            target,
            rewrite,
        } => {
            let a = CompositeOp::new(parse_term(a)?);
            let b = CompositeOp::new(parse_term(b)?);
            let opts = NormalFormOptions {
                target: (*target).into(),
                rewrite: (*rewrite).into(),
            };
            let r = composite_commutator((*sign).into(), &a, &b, opts)?;
            if json {
                return Ok(pretty(&r.to_json()));
            }
            let mut out = format!(
                "{} {}\n{} {}\n",
                style.label("raw:"),
                r.raw,
                style.label("normal:"),
                r.normal
            );
            for s in &r.associators {
                let label = s.label.as_deref().unwrap_or("assoc");
                out += &format!(
                    "{} {} = {}\n",
                    style.label(&format!("{label}:")),
                    s.term(),
                    s.expand()
                );
            }
            Ok(out)
        }
        Command::Normalform {
            expr,
            target,
            rewrite,
        } => {
            let e = parse(expr)?;
            let opts = NormalFormOptions {
                target: (*target).into(),
                rewrite: (*rewrite).into(),
            };
            let n = normalize_expr(&e, opts);
            Ok(if json {
                pretty(&n.to_json())
            } else {
                format!("{n}\n")
            })
        }
        Command::Ym(args) => run_ym(args, json),
    }
}

fn run_algebra(action: &AlgebraAction, json: bool, style: &Style) -> Result<String> {
    match action {
        AlgebraAction::Info { algebra } => {
            let alg = load_algebra(algebra)?;
            if json {
                let mut v = alg.to_json();
                v.as_object_mut()
                    .expect("algebra JSON is an object")
                    .remove("table");
                return Ok(pretty(&v));
            }
            let construction = match alg.gammas() {
                Some(g) => format!("cayley-dickson {g:?}"),
                None => "table".to_string(),
            };
            let involution = match (alg.gammas(), alg.involution()) {
                (Some(_), _) => "conjugation".to_string(),
                (None, Some(signs)) => format!("diagonal {signs:?}"),
                (None, None) => "none".to_string(),
            };
            Ok(format!(
                "{} {}\n{} {}\n{} {construction}\n{} {involution}\n",
                style.label("name:"),
                alg.name(),
                style.label("dim:"),
                alg.dim(),
                style.label("construction:"),
                style.label("involution:"),
            ))
        }
        AlgebraAction::Table { algebra } => {
            let alg = load_algebra(algebra)?;
            if json {
                return Ok(pretty(&alg.to_json()));
            }
            let d = alg.dim();
            let cell = |i: usize, j: usize| -> String {
                match alg.table() {
                    Table::Monomial(_) => match alg.monomial_product(i, j) {
                        Some((s, k)) => format!("{}e{k}", if s < 0 { "-" } else { "" }),
                        None => "0".into(),
                    },
                    Table::Dense(_) => Element::new(&alg, alg.basis_product(i, j))
                        .expect("table row")
                        .to_string(),
                }
            };
            let cells: Vec<Vec<String>> = (0..d)
                .map(|i| (0..d).map(|j| cell(i, j)).collect())
                .collect();
            let width = cells
                .iter()
                .flatten()
                .map(String::len)
                .max()
                .unwrap_or(1)
                .max(format!("e{}", d - 1).len());
            let mut out = format!("{:>width$}", "");
            for j in 0..d {
                out += &format!(" {:>width$}", format!("e{j}"));
            }
            out.push('\n');
            for (i, row) in cells.iter().enumerate() {
                out += &format!("{:>width$}", format!("e{i}"));
                for c in row {
                    out += &format!(" {c:>width$}");
                }
                out.push('\n');
            }
            Ok(out)
        }
        AlgebraAction::Check { algebra, identity } => {
            let alg = load_algebra(algebra)?;
            let which: Vec<Identity> = match identity {
                Some(i) => vec![*i],
                None => Identity::ALL.to_vec(),
            };
            let results: Vec<(Identity, IdentityCheck)> = which
                .iter()
                .map(|&i| (i, check_identity(&alg, i)))
                .collect();
            if json {
                let v: Vec<Value> = results
                    .iter()
                    .map(|(i, r)| match r {
                        IdentityCheck::Holds => json!({"identity": i.to_string(), "holds": true}),
                        IdentityCheck::Counterexample(t) => json!({
                            "identity": i.to_string(),
                            "holds": false,
                            "counterexample": t.iter().map(|k| format!("e{k}")).collect::<Vec<_>>(),
                        }),
                    })
                    .collect();
                return Ok(pretty(&Value::Array(v)));
            }
            let mut out = String::new();
            for (i, r) in &results {
                let label = style.label(&format!("{i}:"));
                match r {
                    IdentityCheck::Holds => out += &format!("{label} holds\n"),
                    IdentityCheck::Counterexample(t) => {
                        let t: Vec<String> = t.iter().map(|k| format!("e{k}")).collect();
                        out += &format!("{label} fails at ({})\n", t.join(", "));
                    }
                }
            }
            Ok(out)
        }
        AlgebraAction::ZeroDivisor { algebra } => {
            let alg = load_algebra(algebra)?;
            let found = find_zero_divisor(&alg);
            if json {
                let v = found.map(|(u, v)| json!([u.to_string(), v.to_string()]));
                return Ok(pretty(&json!({ "pair": v })));
            }
            Ok(match found {
                Some((u, v)) => format!("({u}) * ({v}) = 0\n"),
                None => "none\n".into(),
            })
        }
    }
}

fn run_ym(args: &YmArgs, json: bool) -> Result<String> {
    let ctx = match &args.group_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            GaugeContext::from_json(
                &serde_json::from_str(&text)
                    .with_context(|| format!("parsing {}", path.display()))?,
            )?
        }
        None => match args.group {
            GroupArg::Su2 => GaugeContext::su2(),
            GroupArg::U1 => GaugeContext::abelian(args.colors.into()),
        },
    };
    let mut eqs = ym_equations(
        &ctx,
        YmOptions {
            covariant: args.covariant,
        },
    );
    if args.g_zero {
        eqs = decouple(&eqs, &ctx.coupling);
    }
    if let Some(depth) = args.depth {
        let d = Decomposition::new(depth.into(), args.nesting.into())
            .with_range(args.inner_range.into());
        eqs = if args.symbolic {
            let sym = substitute_symbolic(&eqs, &d)?;
            for eq in &sym {
                check_index_hygiene(eq)?;
            }
            sym
        } else {
            substitute_decomposition(&eqs, &d)?
        };
    }
    if args.census {
        return Ok(census(&eqs, &ctx.coupling, json));
    }
    if json {
        return Ok(pretty(&Value::Array(
            eqs.iter().map(DerivedEquation::to_json).collect(),
        )));
    }
    Ok(eqs.iter().map(|e| format!("{e}\n")).collect())
}

fn census(eqs: &[DerivedEquation], coupling: &str, json: bool) -> String {
    if json {
        let rows: Vec<Value> = eqs
            .iter()
            .map(|e| {
                let by_power: serde_json::Map<String, Value> =
                    e.census(coupling).into_iter().map(|(p, n)| (p.to_string(), json!(n))).collect();
                json!({"equation": e.header(), "raw_terms": e.raw_terms, "terms": e.lhs.len(), "by_power": by_power})
            })
            .collect();
        return pretty(&Value::Array(rows));
    }
    eqs.iter()
        .map(|e| {
            let powers: Vec<String> = e
                .census(coupling)
                .into_iter()
                .map(|(p, n)| format!("{coupling}^{p} {n}"))
                .collect();
            format!(
                "{}: raw {}, merged {}, {}\n",
                e.header(),
                e.raw_terms,
                e.lhs.len(),
                powers.join(", ")
            )
        })
        .collect()
}
