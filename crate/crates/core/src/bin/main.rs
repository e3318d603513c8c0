use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nichols_a2::algebra::{Ctx, RewriteStrategy};
use nichols_a2::cocycle::CocycleTable;
use nichols_a2::hochschild::HochschildCocycle;
use nichols_a2::scalar::parse_scalar;
use nichols_a2::session::OutputFormat;
use nichols_a2::{Bifunctional, Error, Model, Mono, SessionConfig};

#[derive(Parser)]
#[command(name = "nichols-a2", version, about = "Hopf 2-cocycle tables for Nichols algebras of Cartan type A2")]
struct Cli {
    /// JSON file with the session parameters; inline flags override it.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Order of the root of unity q (N >= 3).
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Exponent of q as a power of zeta_N.
    #[arg(long, global = true)]
    q_exp: Option<i64>,
    /// Exponent of q12 as a power of zeta_N.
    #[arg(long, global = true)]
    q12_exp: Option<i64>,
    /// "generic" or "atypical".
    #[arg(long, global = true)]
    case: Option<String>,
    /// Deformation parameters l1,l2,l12,l112,l122 as scalar expressions.
    #[arg(long, global = true, value_delimiter = ',')]
    lambda: Option<Vec<String>>,
    /// Output format: json, csv or md.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write the artifact to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PairArg {
    /// Print a single entry: left and right exponent triples n2,n12,n1.
    #[arg(long, value_delimiter = ',')]
    pair: Option<Vec<u8>>,
}

#[derive(Subcommand)]
enum Command {
    /// Full table of the Hopf 2-cocycle sigma_lambda.
    Table(PairArg),
    /// Table of the orbit cocycle alpha -> sigma_lambda.
    Orbit {
        /// Eight alpha coefficients, indexed by the trivial-weight basis
        /// monomials x2x12, x2^2x1, x2x1^2, x12x1, x2^2x12x1^2,
        /// x2x12^2x1, x2^2x12^2, x12^2x1^2.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<String>,
        #[command(flatten)]
        pair: PairArg,
    },
    /// Table of the convolution exponential e^eta.
    Exp {
        /// Cocycle coefficients e1,e2,e12,e112,e122.
        #[arg(long, value_delimiter = ',')]
        e: Vec<String>,
        /// Coboundary coefficients for beta_b, same monomial order as alpha.
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<String>>,
        #[command(flatten)]
        pair: PairArg,
    },
    /// Purity verdict for sigma_lambda, with witness when exponential.
    Classify,
    /// Values of the section gamma_lambda on the PBW basis.
    Section,
    /// Run the invariant verification suite.
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::VerificationFailed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load_config(cli: &Cli) -> Result<SessionConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParams(format!("cannot read {path}: {e}")))?;
            SessionConfig::from_json(&text)?
        }
        None => SessionConfig {
            n: 3,
            q_exp: 1,
            q12_exp: 1,
            case: "generic".into(),
            lambda: std::array::from_fn(|_| "0".to_string()),
            realization: None,
            format: OutputFormat::Json,
        },
    };
    if let Some(n) = cli.n {
        cfg.n = n;
    }
    if let Some(e) = cli.q_exp {
        cfg.q_exp = e;
    }
    if let Some(e) = cli.q12_exp {
        cfg.q12_exp = e;
    }
    if let Some(c) = &cli.case {
        cfg.case = c.clone();
    }
    if let Some(l) = &cli.lambda {
        if l.len() != 5 {
            return Err(Error::InvalidParams(format!(
                "--lambda expects 5 values, got {}",
                l.len()
            )));
        }
        cfg.lambda = std::array::from_fn(|i| l[i].clone());
    }
    if let Some(f) = &cli.format {
        cfg.format = match f.as_str() {
            "json" => OutputFormat::Json,
            "csv" => OutputFormat::Csv,
            "md" => OutputFormat::Md,
            other => {
                return Err(Error::InvalidParams(format!("unknown format {other:?}")))
            }
        };
    }
    Ok(cfg)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParams(format!("cannot write {path}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") })
                .map_err(|e| Error::InvalidParams(e.to_string()))
        }
    }
}

fn parse_mono(v: &[u8], model: &Model) -> Result<Mono, Error> {
    let bound = model.n() as u8;
    if v.iter().any(|&e| e >= bound) {
        return Err(Error::InvalidParams(format!(
            "exponents must be below N = {bound}"
        )));
    }
    Ok(Mono { n2: v[0], n12: v[1], n1: v[2] })
}

fn emit_bifunctional(
    cli: &Cli,
    cfg: &SessionConfig,
    model: &Model,
    f: &Bifunctional,
    pair: &PairArg,
) -> Result<(), Error> {
    if let Some(p) = &pair.pair {
        if p.len() != 6 {
            return Err(Error::InvalidParams(
                "--pair expects six exponents n2,n12,n1,n2,n12,n1".into(),
            ));
        }
        let left = parse_mono(&p[..3], model)?;
        let right = parse_mono(&p[3..], model)?;
        let v = f.value(model, &left, &right);
        return emit(cli, &v.to_q_string());
    }
    let table = CocycleTable::from_bifunctional(model, f);
    let text = match cfg.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&table).map_err(|e| Error::Parse(e.to_string()))?
        }
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Md => table.to_markdown(),
    };
    emit(cli, &text)
}

fn parse_scalars<const K: usize>(model: &Model, exprs: &[String]) -> Result<[nichols_a2::Cyclotomic; K], Error> {
    let mut out = Vec::with_capacity(K);
    for e in exprs {
        out.push(parse_scalar(model.order(), e)?);
    }
    out.try_into()
        .map_err(|_| Error::InvalidParams(format!("expected {K} coefficients")))
}

fn run(cli: &Cli) -> Result<(), Error> {
    let cfg = load_config(cli)?;
    let model = cfg.build_model()?;
    match &cli.command {
        Command::Table(pair) => {
            let gamma = model.build_section()?;
            let sigma = model.sigma(&gamma)?;
            emit_bifunctional(cli, &cfg, &model, &sigma, pair)
        }
        Command::Orbit { alpha, pair } => {
            let coeffs = parse_scalars::<8>(&model, alpha)?;
            let alpha = model.alpha_from_params(&coeffs)?;
            let gamma = model.build_section()?;
            let sigma = model.sigma(&gamma)?;
            let orbit = model.orbit_act(&alpha, &sigma)?;
            emit_bifunctional(cli, &cfg, &model, &orbit, pair)
        }
        Command::Exp { e, beta, pair } => {
            let [e1, e2, e12, e112, e122] = parse_scalars::<5>(&model, e)?;
            let mut eta = HochschildCocycle::zero(&model);
            eta.e1 = e1;
            eta.e2 = e2;
            eta.e12 = e12;
            eta.e112 = e112;
            eta.e122 = e122;
            if let Some(b) = beta {
                eta.beta = parse_scalars::<8>(&model, b)?;
            }
            let table = model.exponential(&eta.to_bifunctional(&model)?, 5)?;
            emit_bifunctional(cli, &cfg, &model, &table, pair)
        }
        Command::Classify => {
            let verdict = model.classify_purity()?;
            let text =
                serde_json::to_string_pretty(&verdict).map_err(|e| Error::Parse(e.to_string()))?;
            emit(cli, &text)
        }
        Command::Section => {
            let gamma = model.build_section()?;
            let entries: Vec<serde_json::Value> = gamma
                .iter()
                .map(|(b, v)| {
                    serde_json::json!({
                        "monomial": b,
                        "value": v,
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&entries)
                .map_err(|e| Error::Parse(e.to_string()))?;
            emit(cli, &text)
        }
        Command::Verify => verify(cli, &model),
    }
}

fn verify(cli: &Cli, model: &Model) -> Result<(), Error> {
    let mut report = String::new();
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: bool, report: &mut String| {
        report.push_str(if ok { "PASS " } else { "FAIL " });
        report.push_str(name);
        report.push('\n');
        if !ok {
            failed.push(name.to_string());
        }
    };

    // coassociativity and counit on the full basis
    let mut ok = true;
    for b in model.basis() {
        let two = model.delta_two(b);
        let mut other = nichols_a2::coproduct::Tensor3::zero();
        for ((x, y), c) in model.delta_nichols(b).iter() {
            for ((y1, y2), d) in model.delta_nichols(*y).iter() {
                other.add_term((*x, *y1, *y2), c.mul(d));
            }
        }
        if two != other {
            ok = false;
        }
        let right_counit: nichols_a2::linear::LinComb<Mono> = model
            .delta_nichols(b)
            .iter()
            .filter(|((_, r), _)| r.is_unit())
            .map(|((l, _), c)| (*l, c.clone()))
            .collect();
        let expected: nichols_a2::linear::LinComb<Mono> =
            [(b, model.scalar_one())].into_iter().collect();
        if right_counit != expected {
            ok = false;
        }
    }
    check("coassociativity and counit laws", ok, &mut report);

    // confluence of the rewriting system on mixed words
    let ctx = match model.case {
        nichols_a2::Case::Atypical => Ctx::Cleft,
        nichols_a2::Case::Generic => Ctx::Cleft,
    };
    let mut ok = true;
    let words: Vec<Vec<u8>> = (0..3u32.pow(6))
        .map(|i| (0..6).map(|k| [1u8, 2, 1][(i / 3u32.pow(k)) as usize % 3]).collect())
        .collect();
    for w in words.iter().step_by(7) {
        let base = model.rewrite_word_with(ctx, w, RewriteStrategy::Leftmost);
        for s in [RewriteStrategy::Rightmost, RewriteStrategy::Seeded(11)] {
            if model.rewrite_word_with(ctx, w, s) != base {
                ok = false;
            }
        }
    }
    check("rewriting confluence", ok, &mut report);

    let mut h1 = true;
    let mut h2 = true;
    for b in model.basis() {
        h1 &= model.check_h1(b)?;
        h2 &= model.check_h2(b)?;
    }
    check("hypothesis H1", h1, &mut report);
    check("hypothesis H2", h2, &mut report);

    let gamma = model.build_section()?;
    check("section counit, comodule and H-linearity laws", model.verify_section(&gamma).is_ok(), &mut report);

    let sigma = model.sigma(&gamma)?;
    check(
        "cocycle reconstruction identity",
        model.verify_reconstruction(&gamma, &sigma).is_ok(),
        &mut report,
    );

    let mut ok = true;
    for b in model.basis() {
        let expected = if b.is_unit() { model.scalar_one() } else { model.scalar_zero() };
        ok &= sigma.value(model, &Mono::UNIT, &b) == expected;
        ok &= sigma.value(model, &b, &Mono::UNIT) == expected;
    }
    check("cocycle unitality", ok, &mut report);

    emit(cli, &report)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::VerificationFailed(failed.join(", ")))
    }
}
