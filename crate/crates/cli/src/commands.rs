use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use supermod::balanced;
use supermod::cone::{self, DdOptions, DdProgress, InsertionOrder};
use supermod::matroid::{self, MatroidJson};
use supermod::rational::format_rational;
use supermod::setfn::SetFunctionJson;
use supermod::transform::{self, SupermodularityVectorJson};
use supermod::twolayer;
use supermod::{Error, Matroid, SetFunction, SubsetMultiset, SupermodularityVector};

use crate::io::{read_json, read_jsonl, read_text, to_json_line, CliError, CliResult, Emitter};
use crate::{BalancedCommand, Cli, Command, Format, MatroidCommand, Order, Outcome};

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Enumerate { n, order } => enumerate(cli, *n, *order),
        Command::CheckSupermodular { input } => check_supermodular(cli, input),
        Command::CheckIrreducible { input } => check_irreducible(cli, input),
        Command::Decompose { input, rays } => decompose(cli, input, rays.as_deref()),
        Command::Reconstruct { input } => reconstruct(cli, input),
        Command::PathSums { input } => path_sums(cli, input),
        Command::Balanced { command } => balanced_command(cli, command),
        Command::Matroid { command } => matroid_command(cli, command),
        Command::TwoLayer { n, t, verify, oracle } => two_layer(cli, *n, *t, *verify, *oracle),
        Command::DetExperiment { size, trials } => det_experiment(cli, *size, *trials),
        Command::SelfTest => crate::selftest::run(cli),
    }
}

fn read_function(path: &Path) -> CliResult<SetFunction> {
    let json: SetFunctionJson = read_json(path)?;
    Ok(SetFunction::from_json(&json)?)
}

fn read_multiset(path: &Path, size: Option<usize>) -> CliResult<SubsetMultiset> {
    Ok(SubsetMultiset::parse_text(&read_text(path)?, size)?)
}

fn require_big(cli: &Cli, what: &str, big: bool) -> CliResult<()> {
    if big && !cli.allow_big {
        return Err(CliError::Usage(format!("{what} takes many minutes; pass --allow-big to run it")));
    }
    Ok(())
}

fn enumerate_rays(cli: &Cli, n: usize, order: Order) -> CliResult<Vec<SetFunction>> {
    require_big(cli, "the n = 5 enumeration", n >= 5)?;
    let order = match order {
        Order::Fewest => InsertionOrder::FewestPairs,
        Order::Balanced => InsertionOrder::MostBalanced,
        Order::Lex => InsertionOrder::LexMin,
        Order::Given => InsertionOrder::Given,
    };
    let start = Instant::now();
    let report = move |p: DdProgress| {
        eprintln!(
            "  inserted {}/{} inequalities, {} rays, {:.1}s",
            p.inserted,
            p.total,
            p.rays,
            start.elapsed().as_secs_f64()
        );
    };
    let options = DdOptions {
        order,
        progress: if n >= 5 { Some(&report) } else { None },
    };
    Ok(cone::enumerate_irreducible_supermodular_with(n, &options)?)
}

fn enumerate(cli: &Cli, n: usize, order: Order) -> CliResult<Outcome> {
    let start = Instant::now();
    let rays = enumerate_rays(cli, n, order)?;
    let mut out = Emitter::new(cli.out.clone());
    for f in &rays {
        out.line(&to_json_line(&f.to_json()));
    }
    let complexity = cone::max_complexity(&rays)?;
    out.summary(&format!(
        "n={n} rays={} max_complexity={complexity} seconds={:.3}",
        rays.len(),
        start.elapsed().as_secs_f64()
    ));
    out.finish()?;
    Ok(Outcome::True)
}

fn check_supermodular(cli: &Cli, input: &Path) -> CliResult<Outcome> {
    let f = read_function(input)?;
    let mut out = Emitter::new(cli.out.clone());
    let outcome = if f.n() < 2 || f.is_modular() {
        out.line("modular");
        Outcome::True
    } else if let Some(p) = f.first_violation() {
        out.line(&format!(
            "not supermodular: meet {:?} with {} and {} has value {}",
            p.meet,
            p.a,
            p.b,
            format_rational(&f.supermodularity_value(&p))
        ));
        Outcome::False
    } else {
        out.line("supermodular");
        Outcome::True
    };
    out.finish()?;
    Ok(outcome)
}

fn check_irreducible(cli: &Cli, input: &Path) -> CliResult<Outcome> {
    let f = read_function(input)?;
    let mut out = Emitter::new(cli.out.clone());
    let outcome = match cone::is_irreducible_supermodular(&f) {
        Ok(cert) => {
            out.line(&to_json_line(&cert));
            out.summary(if cert.irreducible { "irreducible" } else { "reducible" });
            Outcome::from(cert.irreducible)
        }
        Err(Error::ModularInput) => {
            out.line(&to_json_line(&json!({ "irreducible": false, "reason": "modular" })));
            out.summary("modular functions are not irreducible");
            Outcome::False
        }
        Err(e) => return Err(e.into()),
    };
    out.finish()?;
    Ok(outcome)
}

fn decompose(cli: &Cli, input: &Path, rays_path: Option<&Path>) -> CliResult<Outcome> {
    let f = read_function(input)?;
    let rays: Vec<SetFunction> = match rays_path {
        Some(path) => read_jsonl::<SetFunctionJson>(path)?
            .iter()
            .map(SetFunction::from_json)
            .collect::<Result<_, _>>()?,
        None => enumerate_rays(cli, f.n(), Order::Given)?,
    };
    let terms = cone::conic_decompose(&f, &rays)?;
    if !cone::is_valid_decomposition(&f, &rays, &terms) {
        return Err(Error::InvariantViolation("decomposition does not reproduce the input".into()).into());
    }
    let mut out = Emitter::new(cli.out.clone());
    let json_terms: Vec<_> = terms
        .iter()
        .map(|(c, i)| json!({ "coefficient": format_rational(c), "ray": rays[*i].to_json() }))
        .collect();
    out.line(&to_json_line(&json!({ "n": f.n(), "terms": json_terms })));
    out.summary(&format!("{} irreducible terms", terms.len()));
    out.finish()?;
    Ok(Outcome::True)
}

fn reconstruct(cli: &Cli, input: &Path) -> CliResult<Outcome> {
    let json: SupermodularityVectorJson = read_json(input)?;
    let s = SupermodularityVector::from_json(&json)?;
    let f = transform::reconstruct(&s)?;
    let mut out = Emitter::new(cli.out.clone());
    out.line(&f.to_json_string());
    out.finish()?;
    Ok(Outcome::True)
}

fn weights_json(w: &[supermod::Rational]) -> Vec<String> {
    w.iter().map(format_rational).collect()
}

fn path_sums(cli: &Cli, input: &Path) -> CliResult<Outcome> {
    let value: serde_json::Value = read_json(input)?;
    let parse_err = |e: serde_json::Error| CliError::Lib(Error::Parse(e.to_string()));
    let (s, closed_form) = if value.get("entries").is_some() {
        let json: SupermodularityVectorJson = serde_json::from_value(value).map_err(parse_err)?;
        (SupermodularityVector::from_json(&json)?, None)
    } else {
        let json: SetFunctionJson = serde_json::from_value(value).map_err(parse_err)?;
        let f = SetFunction::from_json(&json)?;
        (transform::apply_t(&f)?, Some(transform::color_weights(&f)))
    };
    let weights = transform::path_sum_weights(&s)?;
    let in_image = transform::in_image_t(&s);
    if in_image != weights.is_some() {
        return Err(Error::InvariantViolation("local identities and path sums disagree".into()).into());
    }
    if let (Some(w), Some(c)) = (&weights, &closed_form) {
        if w != c {
            return Err(Error::InvariantViolation("path sums differ from the closed-form color weights".into()).into());
        }
    }
    let mut out = Emitter::new(cli.out.clone());
    out.line(&to_json_line(&json!({
        "n": s.n(),
        "in_image": in_image,
        "color_weights": weights.as_ref().map(|w| weights_json(&w.0)),
    })));
    out.finish()?;
    Ok(Outcome::from(in_image))
}

fn balanced_command(cli: &Cli, command: &BalancedCommand) -> CliResult<Outcome> {
    match command {
        BalancedCommand::Check { input, size } => {
            let m = read_multiset(input, *size)?;
            let v = m.to_vector();
            let mut out = Emitter::new(cli.out.clone());
            let outcome = match balanced::balance_of(&v) {
                Some(level) if !v.is_zero() => {
                    let cert = balanced::is_irreducible_balanced(&v)?;
                    out.line(&to_json_line(&json!({
                        "balanced": true,
                        "m": format_rational(&level),
                        "complexity": balanced::complexity_of_balanced(&v)?.to_string(),
                        "support_independent": balanced::support_independent(&v),
                        "irreducible": cert.irreducible,
                        "solution_dimension": cert.solution_dimension,
                    })));
                    Outcome::True
                }
                Some(_) => return Err(Error::ZeroVector.into()),
                None => {
                    out.line(&to_json_line(&json!({ "balanced": false, "coverage": m.coverage() })));
                    Outcome::False
                }
            };
            out.finish()?;
            Ok(outcome)
        }
        BalancedCommand::ZIrreducible { input, size } => {
            let m = read_multiset(input, *size)?;
            let mut out = Emitter::new(cli.out.clone());
            let witness = balanced::balanced_submultiset(&m)?;
            match &witness {
                None => out.summary("z-irreducible"),
                Some(w) => {
                    out.summary("balanced proper sub-multiset:");
                    out.line(w.to_text().trim_end());
                }
            }
            out.finish()?;
            Ok(Outcome::from(witness.is_none()))
        }
        BalancedCommand::Enumerate { size } => {
            require_big(cli, "balanced enumeration beyond N = 4", *size > 4)?;
            let start = Instant::now();
            let vectors = balanced::enumerate_irreducible_balanced(*size)?;
            let mut out = Emitter::new(cli.out.clone());
            let mut best = BigInt::from(0);
            for v in &vectors {
                best = best.max(balanced::complexity_of_balanced(v)?);
                out.line(&to_json_line(&v.to_json()));
            }
            out.summary(&format!(
                "N={size} vectors={} max_complexity={best} seconds={:.3}",
                vectors.len(),
                start.elapsed().as_secs_f64()
            ));
            out.finish()?;
            Ok(Outcome::True)
        }
        BalancedCommand::Complexity { input, size } => {
            let m = read_multiset(input, *size)?;
            let c = balanced::complexity_of_balanced(&m.to_vector())?;
            let mut out = Emitter::new(cli.out.clone());
            out.line(&c.to_string());
            out.finish()?;
            Ok(Outcome::True)
        }
    }
}

#[derive(Serialize)]
struct MatroidReport {
    n: usize,
    rank: usize,
    loops: Vec<usize>,
    coloops: Vec<usize>,
    reducing_partition: Option<[Vec<usize>; 2]>,
}

fn matroid_command(cli: &Cli, command: &MatroidCommand) -> CliResult<Outcome> {
    let mut out = Emitter::new(cli.out.clone());
    let outcome = match command {
        MatroidCommand::Check { input } => {
            let json: MatroidJson = read_json(input)?;
            match Matroid::from_json(&json) {
                Ok(m) => {
                    out.line(&to_json_line(&MatroidReport {
                        n: m.n(),
                        rank: m.matroid_rank(),
                        loops: m.loops().elements(),
                        coloops: m.coloops().elements(),
                        reducing_partition: m.reducing_partition().map(|(a, b)| [a.elements(), b.elements()]),
                    }));
                    Outcome::True
                }
                Err(Error::NotAMatroid) => {
                    out.summary("bases violate the exchange axiom");
                    Outcome::False
                }
                Err(e) => return Err(e.into()),
            }
        }
        MatroidCommand::ToSupermodular { input } => {
            let json: MatroidJson = read_json(input)?;
            let f = matroid::matroid_to_supermodular(&Matroid::from_json(&json)?)?;
            out.line(&f.to_json_string());
            Outcome::True
        }
        MatroidCommand::FromSupermodular { input } => {
            let f = read_function(input)?;
            let m = matroid::supermodular_to_matroid(&f)?;
            out.line(&to_json_line(&m.to_json()));
            Outcome::True
        }
        MatroidCommand::Enumerate { n } => {
            require_big(cli, "matroid enumeration beyond n = 4", *n > 4)?;
            let all = matroid::enumerate_loopless_matroids(*n)?;
            let irreducible = all.iter().filter(|m| !m.is_reducible()).count();
            let irreducible_nullity = all.iter().filter(|m| m.nullity_is_irreducible()).count();
            for m in &all {
                out.line(&to_json_line(&m.to_json()));
            }
            out.summary(&format!(
                "n={n} loopless={} irreducible={irreducible} irreducible_nullity={irreducible_nullity}",
                all.len()
            ));
            Outcome::True
        }
    };
    out.finish()?;
    Ok(outcome)
}

fn two_layer(cli: &Cli, n: usize, t: usize, verify: bool, oracle: bool) -> CliResult<Outcome> {
    let family = twolayer::enumerate_two_layer(n, t)?;
    let mut out = Emitter::new(cli.out.clone());
    for f in &family {
        out.line(&f.to_json_string());
    }
    out.summary(&format!("n={n} t={t} family={}", family.len()));
    let mut ok = true;
    if verify {
        let holds = twolayer::verify_two_layer_identity(n, t)?;
        out.summary(&format!("identity: {}", if holds { "holds" } else { "fails" }));
        ok &= holds;
    }
    if oracle {
        require_big(cli, "the cone cross-check beyond n = 6", n > 6)?;
        let face = cone::enumerate_irreducible_on_layers(n, &[t, t + 1])?;
        let agrees = face == family;
        out.summary(&format!("cone face on layers {t},{}: {} rays, {}", t + 1, face.len(), if agrees { "agrees" } else { "disagrees" }));
        ok &= agrees;
    }
    out.finish()?;
    Ok(Outcome::from(ok))
}

fn det_experiment(cli: &Cli, size: usize, trials: u64) -> CliResult<Outcome> {
    let stats = balanced::determinant_experiment(size, trials, cli.seed)?;
    let mut out = Emitter::new(cli.out.clone());
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            out.line(balanced::DeterminantStats::CSV_HEADER);
            out.line(&stats.csv_row());
        }
        Format::Json => out.line(&to_json_line(&stats)),
    }
    out.finish()?;
    Ok(Outcome::True)
}
