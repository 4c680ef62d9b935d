//! Subcommand implementations: build the requested context, call into
//! `dunkl-core`, and render text, JSON, or CSV.

use serde_json::json;

use dunkl_core::dunkl::{
    dunkl_apply, harmonic_basis, harmonic_project, kappa_form, mm_expression, DunklContext,
    MmExpression,
};
use dunkl_core::harmonics2d::dihedral_harmonics;
use dunkl_core::jack::{symmetric_jack, zeta, zeta_norm_closed, Composition};
use dunkl_core::numeric::{mm_constant_eval, KernelSeries};
use dunkl_core::poly::Polynomial;
use dunkl_core::roots::{RootSystem, TypeTag};
use dunkl_core::suites::{run_suite, SuiteReport, SUITE_NAMES};

use crate::options::{
    parse_composition, parse_float_vector, parse_kappa, parse_kappa_scalars, parse_type,
    parse_vector, usage,
};
use crate::{cache, CliError, Command, JackCommand};

pub fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Roots { group, rank, json } => roots(&group, rank, json),
        Command::Apply {
            group,
            rank,
            kappa,
            dir,
            poly,
            json,
        } => apply(&group, rank, &kappa, &dir, &poly, json),
        Command::Form {
            group,
            rank,
            kappa,
            p,
            q,
            json,
        } => form(&group, rank, &kappa, &p, &q, json),
        Command::Kernel {
            group,
            rank,
            kappa,
            x,
            y,
            tol,
            json,
            csv,
        } => kernel(&group, rank, &kappa, &x, &y, tol, json, csv),
        Command::Harmonic {
            group,
            rank,
            kappa,
            poly,
            basis,
            json,
        } => harmonic(&group, rank, &kappa, poly.as_deref(), basis, json),
        Command::Harmonics {
            group,
            kappa,
            max_degree,
            json,
        } => harmonics(&group, &kappa, max_degree, json),
        Command::Jack { sub } => jack(sub),
        Command::Mm {
            group,
            rank,
            numeric,
            kappa0,
            kappa1,
            json,
        } => mm(&group, rank, numeric, kappa0, kappa1, json),
        Command::Verify { suite, seed, json } => verify(&suite, seed, json),
        Command::Version => {
            println!("dunkl {}", env!("CARGO_PKG_VERSION"));
            Ok(())
        }
    }
}

fn build_system(group: &str, rank: Option<usize>) -> Result<RootSystem, CliError> {
    let tag = parse_type(group, rank)?;
    RootSystem::build(tag).map_err(CliError::math)
}

fn build_context(
    group: &str,
    rank: Option<usize>,
    kappa: &str,
) -> Result<DunklContext, CliError> {
    let rs = build_system(group, rank)?;
    let spec = parse_kappa(kappa, rs.num_classes)?;
    DunklContext::new(rs, spec).map_err(CliError::math)
}

fn rational_strings(v: &[dunkl_core::scalar::Rational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

// ---------------------------------------------------------------------------
// roots
// ---------------------------------------------------------------------------

fn roots(group: &str, rank: Option<usize>, as_json: bool) -> Result<(), CliError> {
    let rs = build_system(group, rank)?;
    let classes = rs.reflection_classes();
    let order = rs.order();
    let simple: Vec<Vec<String>> = rs
        .simple_roots()
        .map(|r| rational_strings(r))
        .collect();
    if as_json {
        let doc = json!({
            "type": rs.tag.to_string(),
            "dim": rs.dim,
            "rank": rs.rank(),
            "degrees": rs.degrees,
            "order": order.map(|o| o as u64),
            "num_positive_roots": rs.num_positive(),
            "classes": classes
                .iter()
                .enumerate()
                .map(|(i, c)| json!({"index": i, "size": c.len()}))
                .collect::<Vec<_>>(),
            "simple_roots": simple,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("type: {}", rs.tag);
        println!("dim: {}", rs.dim);
        println!("rank: {}", rs.rank());
        match &rs.degrees {
            Some(d) => println!(
                "degrees: {}",
                d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            ),
            None => println!("degrees: unknown"),
        }
        match order {
            Some(o) => println!("order: {}", o),
            None => println!("order: unknown"),
        }
        println!("positive roots: {}", rs.num_positive());
        for (i, c) in classes.iter().enumerate() {
            println!("class {}: {} positive root(s)", i, c.len());
        }
        for s in &simple {
            println!("simple root: ({})", s.join(", "));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// apply / form / harmonic
// ---------------------------------------------------------------------------

fn apply(
    group: &str,
    rank: Option<usize>,
    kappa: &str,
    dir: &str,
    poly: &str,
    as_json: bool,
) -> Result<(), CliError> {
    let ctx = build_context(group, rank, kappa)?;
    let a = parse_vector(dir, ctx.dim())?;
    let p = Polynomial::parse(poly, ctx.dim())?;
    cache::load(&ctx);
    let out = dunkl_apply(&ctx, &a, &p)?;
    cache::save(&ctx, false);
    print_poly(&out, as_json);
    Ok(())
}

fn form(
    group: &str,
    rank: Option<usize>,
    kappa: &str,
    p: &str,
    q: &str,
    as_json: bool,
) -> Result<(), CliError> {
    let ctx = build_context(group, rank, kappa)?;
    let pp = Polynomial::parse(p, ctx.dim())?;
    let qq = Polynomial::parse(q, ctx.dim())?;
    cache::load(&ctx);
    let value = kappa_form(&ctx, &pp, &qq)?;
    cache::save(&ctx, false);
    if as_json {
        println!("{}", json!({ "value": value.to_string() }));
    } else {
        println!("{}", value);
    }
    Ok(())
}

fn harmonic(
    group: &str,
    rank: Option<usize>,
    kappa: &str,
    poly: Option<&str>,
    basis: Option<u32>,
    as_json: bool,
) -> Result<(), CliError> {
    let ctx = build_context(group, rank, kappa)?;
    cache::load(&ctx);
    match (poly, basis) {
        (Some(text), None) => {
            let p = Polynomial::parse(text, ctx.dim())?;
            let out = harmonic_project(&ctx, &p)?;
            cache::save(&ctx, false);
            print_poly(&out, as_json);
            Ok(())
        }
        (None, Some(n)) => {
            let out = harmonic_basis(&ctx, n)?;
            cache::save(&ctx, false);
            if as_json {
                let doc: Vec<_> = out.iter().map(|p| p.to_json()).collect();
                println!("{}", serde_json::Value::Array(doc));
            } else if out.is_empty() {
                println!("(no harmonic polynomials in degree {})", n);
            } else {
                for p in &out {
                    println!("{}", p);
                }
            }
            Ok(())
        }
        _ => Err(usage("harmonic needs exactly one of --poly or --basis")),
    }
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn kernel(
    group: &str,
    rank: Option<usize>,
    kappa: &str,
    xs: &[String],
    ys: &[String],
    tol: f64,
    as_json: bool,
    as_csv: bool,
) -> Result<(), CliError> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(usage("kernel needs matching --x and --y (repeat both for a grid)"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage("tolerance must be a positive number"));
    }
    let ctx = build_context(group, rank, kappa)?;
    let series = KernelSeries::new(&ctx)?;
    let mut rows = Vec::new();
    for (xt, yt) in xs.iter().zip(ys) {
        let x = parse_float_vector(xt, ctx.dim())?;
        let y = parse_float_vector(yt, ctx.dim())?;
        let eval = series.eval(&x, &y, tol)?;
        rows.push((x, y, eval));
    }
    if as_csv {
        println!("x,y,value,terms_used,tail_bound");
        for (x, y, e) in &rows {
            println!(
                "\"{}\",\"{}\",{},{},{}",
                join_floats(x),
                join_floats(y),
                e.value,
                e.terms_used,
                e.tail_bound
            );
        }
    } else if as_json {
        let doc: Vec<_> = rows
            .iter()
            .map(|(x, y, e)| {
                json!({
                    "x": x,
                    "y": y,
                    "value": e.value,
                    "terms_used": e.terms_used,
                    "tail_bound": e.tail_bound,
                })
            })
            .collect();
        println!("{}", serde_json::Value::Array(doc));
    } else {
        for (x, y, e) in &rows {
            println!(
                "K(({}); ({})) = {:.15e}  ({} terms, tail <= {:.3e})",
                join_floats(x),
                join_floats(y),
                e.value,
                e.terms_used,
                e.tail_bound
            );
        }
    }
    Ok(())
}

fn join_floats(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// harmonics (dihedral bases)
// ---------------------------------------------------------------------------

fn harmonics(group: &str, kappa: &str, max_degree: u32, as_json: bool) -> Result<(), CliError> {
    let tag = parse_type(group, None)?;
    let m = match tag {
        TypeTag::I2(m) => m,
        _ => return Err(usage("harmonics supports dihedral groups only, e.g. --group i2:5")),
    };
    let num_classes = if m % 2 == 0 { 2 } else { 1 };
    let kappas = parse_kappa_scalars(kappa, num_classes)?;
    let family = dihedral_harmonics(m, max_degree, &kappas)?;
    if as_json {
        let entries: Vec<_> = family
            .entries
            .iter()
            .map(|((n, tag), p)| json!({"degree": n, "tag": tag, "poly": p.to_json()}))
            .collect();
        println!(
            "{}",
            json!({"group": family.group, "entries": entries})
        );
    } else {
        println!("group: {}", family.group);
        for ((n, tag), p) in &family.entries {
            println!("degree {} [{}]: {}", n, tag, p);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// jack
// ---------------------------------------------------------------------------

fn jack_context(d: usize, kappa: &str) -> Result<DunklContext, CliError> {
    if d < 2 {
        return Err(usage("jack commands need --d >= 2"));
    }
    build_context(&format!("a{}", d - 1), None, kappa)
}

fn jack(sub: JackCommand) -> Result<(), CliError> {
    match sub {
        JackCommand::Zeta { d, alpha, kappa, json: as_json } => {
            let ctx = jack_context(d, &kappa)?;
            let parts = parse_composition(&alpha)?;
            if parts.len() != d {
                return Err(usage(format!(
                    "alpha has {} parts but --d is {}",
                    parts.len(),
                    d
                )));
            }
            cache::load(&ctx);
            let z = zeta(&ctx, &Composition::new(parts))?;
            cache::save(&ctx, true);
            if as_json {
                let doc = json!({
                    "alpha": z.alpha.parts,
                    "poly": z.poly.to_json(),
                    "xi": z.xi.xi.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "norm": z.norm.to_string(),
                    "eval_ones": z.eval_ones.to_string(),
                });
                println!("{}", doc);
            } else {
                println!("{}", z.poly);
            }
            Ok(())
        }
        JackCommand::Norm { d, alpha, kappa, json: as_json } => {
            let ctx = jack_context(d, &kappa)?;
            let parts = parse_composition(&alpha)?;
            if parts.len() != d {
                return Err(usage(format!(
                    "alpha has {} parts but --d is {}",
                    parts.len(),
                    d
                )));
            }
            let k = ctx.kappa.values[0].clone();
            let norm = zeta_norm_closed(&Composition::new(parts), d, &k)?;
            if as_json {
                println!("{}", json!({ "norm": norm.to_string() }));
            } else {
                println!("{}", norm);
            }
            Ok(())
        }
        JackCommand::Symmetric { lambda, kappa, json: as_json } => {
            let parts = parse_composition(&lambda)?;
            let d = parts.len();
            let ctx = jack_context(d, &kappa)?;
            cache::load(&ctx);
            let (poly, norm) = symmetric_jack(&ctx, &Composition::new(parts))?;
            cache::save(&ctx, true);
            if as_json {
                println!(
                    "{}",
                    json!({ "poly": poly.to_json(), "norm": norm.to_string() })
                );
            } else {
                println!("{}", poly);
                println!("norm: {}", norm);
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// mm
// ---------------------------------------------------------------------------

fn render_mm(expr: &MmExpression) -> String {
    let mut parts = vec![format!("2^({})", expr.log2)];
    for (arg, power) in &expr.gammas {
        if *power == 1 {
            parts.push(format!("Gamma({})", arg));
        } else {
            parts.push(format!("Gamma({})^{}", arg, power));
        }
    }
    parts.join(" * ")
}

fn mm(
    group: &str,
    rank: Option<usize>,
    numeric: bool,
    kappa0: Option<f64>,
    kappa1: Option<f64>,
    as_json: bool,
) -> Result<(), CliError> {
    let tag = parse_type(group, rank)?;
    let expr = mm_expression(&tag)?;
    let value = if numeric {
        let k0 = kappa0.ok_or_else(|| usage("--numeric needs --kappa0"))?;
        let mut kappas = vec![k0];
        if let Some(k1) = kappa1 {
            kappas.push(k1);
        }
        Some(mm_constant_eval(&expr, &kappas)?)
    } else {
        None
    };
    if as_json {
        let doc = json!({
            "type": tag.to_string(),
            "log2": expr.log2.to_string(),
            "gammas": expr
                .gammas
                .iter()
                .map(|(a, p)| json!({"arg": a.to_string(), "power": p}))
                .collect::<Vec<_>>(),
            "value": value,
        });
        println!("{}", doc);
    } else {
        println!("c_kappa^-1({}) = {}", tag, render_mm(&expr));
        if let Some(v) = value {
            println!("value: {:.15e}", v);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn report_json(r: &SuiteReport) -> serde_json::Value {
    json!({
        "name": r.name,
        "cases": r.cases,
        "failures": r
            .failures
            .iter()
            .map(|f| json!({"case": f.case, "expected": f.expected, "got": f.got}))
            .collect::<Vec<_>>(),
        "wall_ms": r.wall_ms as u64,
        "passed": r.passed(),
    })
}

fn print_report(id: &str, alias: &str, r: &SuiteReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!(
        "{:<5} ({:<15}) {}  {} cases, {} failures, {} ms",
        id,
        alias,
        status,
        r.cases,
        r.failures.len(),
        r.wall_ms
    );
    for f in r.failures.iter().take(5) {
        println!("        {}: expected {}, got {}", f.case, f.expected, f.got);
    }
}

fn verify(suite: &str, seed: u64, as_json: bool) -> Result<(), CliError> {
    let selected: Vec<(&str, &str)> = if suite.eq_ignore_ascii_case("all") {
        SUITE_NAMES.to_vec()
    } else {
        let lowered = suite.to_ascii_lowercase();
        let found = SUITE_NAMES
            .iter()
            .find(|(id, alias)| *id == lowered || *alias == lowered)
            .ok_or_else(|| usage(format!("unknown suite {:?}", suite)))?;
        vec![*found]
    };
    let mut reports = Vec::new();
    let mut all_passed = true;
    for (id, alias) in &selected {
        let report = run_suite(id, seed)?;
        if !as_json {
            print_report(id, alias, &report);
        }
        all_passed &= report.passed();
        reports.push(report);
    }
    if as_json {
        let doc: Vec<_> = reports.iter().map(report_json).collect();
        println!("{}", serde_json::Value::Array(doc));
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError {
            code: 1,
            message: "verification failed".into(),
        })
    }
}

// ---------------------------------------------------------------------------
// rendering helpers
// ---------------------------------------------------------------------------

fn print_poly(p: &Polynomial, as_json: bool) {
    if as_json {
        println!("{}", p.to_json());
    } else {
        println!("{}", p);
    }
}
