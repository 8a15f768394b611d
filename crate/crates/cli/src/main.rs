//! `autdim` — batch front end for the invariant-metric toolkit.
//!
//! Subcommands run the inequality battery, query distances, integrate
//! flows, and execute the domain-family experiments; every run writes a
//! versioned `report.json` plus CSV tables (and optional SVG plots) into
//! the output directory. Outputs are byte-identical for identical inputs.
//! Exit codes: 0 on success, 1 when a verifier reports Failed, 2 on usage
//! errors.

mod parse;
mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;

use autdim_core::dim::{
    aut_dim_estimate_at_density, disk_cloud, field_convergence_experiment, DimReport,
};
use autdim_core::domain::hausdorff_distance;
use autdim_core::estimates::{run_lemma_battery, LemmaReport, LemmaStatus};
use autdim_core::flow::flow_trace;
use autdim_core::gallery::{
    member_orbit_tolerances, orbit_classifier, Example1Family, FamilyIndex, OrbitClass, OrbitReport,
};
use autdim_core::metric::{extremal_search, model_caratheodory};
use autdim_core::point::CxPoint;

use report::{write_csv, write_svg, Cell, Json};

const SCHEMA_VERSION: i64 = 1;

#[derive(Parser)]
#[command(
    name = "autdim",
    version,
    about = "Invariant metrics, flows and automorphism-dimension experiments on domains in C^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full inequality battery and write report.json.
    VerifyLemmas(VerifyArgs),
    /// Carathéodory distance between two points of a domain.
    Metric(MetricArgs),
    /// Integrate a holomorphic vector-field flow and dump the trajectory.
    Flow(FlowArgs),
    /// Boundary Hausdorff distances of the degenerating family.
    Hausdorff(FamilyArgs),
    /// Automorphism-dimension estimate for a planar domain.
    DimEstimate(DimArgs),
    /// Degenerating-family experiment: Hausdorff gaps plus orbit classes.
    Example1(Example1Args),
    /// Convergence of normalized family generators on a compact set.
    Converge(FamilyArgs),
    /// Execute a JSON experiment config mirroring the CLI flags.
    Run(RunArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    plots: bool,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long, default_value = "unitdisk")]
    domain: String,
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    #[arg(long, default_value_t = 4)]
    degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct FlowArgs {
    #[arg(long, default_value = "unitdisk")]
    domain: String,
    #[arg(long, default_value = "iz")]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value = "3..8")]
    j: String,
    #[arg(long, default_value_t = 0.01)]
    density: f64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    plots: bool,
}

#[derive(Args)]
struct DimArgs {
    /// Domain literal, or a family when --family is set.
    #[arg(long)]
    domain: String,
    #[arg(long, default_value_t = 2)]
    degree: u32,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0.05)]
    density: f64,
    /// Run a semicontinuity experiment along a degenerating family:
    /// "ellipse:0.5,0.2,0.1,0.05" (semi-axis offsets, limit = the domain)
    /// or "annulus:4,5,6" (dyadic inner-radius offsets 2^-j).
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    plots: bool,
}

#[derive(Args)]
struct Example1Args {
    #[arg(long, default_value = "3..8")]
    j: String,
    #[arg(long, default_value_t = 25.132741228718345)]
    tmax: f64,
    #[arg(long, default_value_t = 0.01)]
    density: f64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    plots: bool,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
}

/// JSON mirror of the CLI flags, used by `autdim run --config`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    command: String,
    seed: Option<u64>,
    out: Option<String>,
    plots: Option<bool>,
    density: Option<f64>,
    degree: Option<u32>,
    tol: Option<f64>,
    j: Option<String>,
    domain: Option<String>,
    from: Option<String>,
    to: Option<String>,
    field: Option<String>,
    z: Option<String>,
    t: Option<f64>,
    tmax: Option<f64>,
    family: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifyLemmas(a) => cmd_verify_lemmas(a.seed, &a.out, a.plots),
        Command::Metric(a) => cmd_metric(&a.domain, &a.from, &a.to, a.degree, a.seed, &a.out),
        Command::Flow(a) => cmd_flow(&a.domain, &a.field, &a.z, a.t, a.tol, &a.out),
        Command::Hausdorff(a) => cmd_hausdorff(&a.j, a.density, &a.out, a.plots),
        Command::DimEstimate(a) => cmd_dim_estimate(
            &a.domain,
            a.degree,
            a.tol,
            a.density,
            a.family.as_deref(),
            &a.out,
            a.plots,
        ),
        Command::Example1(a) => cmd_example1(&a.j, a.tmax, a.density, &a.out, a.plots),
        Command::Converge(a) => cmd_converge(&a.j, &a.out, a.plots),
        Command::Run(a) => cmd_run(&a.config),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

fn ensure_out(out: &Path) -> Result<(), String> {
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))
}

fn write_report(out: &Path, json: &Json) -> Result<(), String> {
    let path = out.join("report.json");
    fs::write(&path, json.render()).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn lemma_json(r: &LemmaReport) -> Json {
    Json::obj()
        .field("lemmaId", Json::Str(format!("{:?}", r.lemma_id)))
        .field("samples", Json::Int(r.samples as i64))
        .field("worstMargin", Json::Num(r.worst_margin))
        .field("status", Json::Str(format!("{:?}", r.status)))
        .field(
            "witness",
            r.witness.clone().map(Json::Str).unwrap_or(Json::Null),
        )
}

fn cmd_verify_lemmas(seed: u64, out: &Path, plots: bool) -> Result<i32, String> {
    ensure_out(out)?;
    let reports = run_lemma_battery(seed).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for r in &reports {
        println!(
            "{:?}: {:?} (worst margin {:.3e} over {} samples)",
            r.lemma_id, r.status, r.worst_margin, r.samples
        );
        rows.push(vec![
            Cell::Str(format!("{:?}", r.lemma_id)),
            Cell::Int(r.samples as i64),
            Cell::Num(r.worst_margin),
            Cell::Str(format!("{:?}", r.status)),
        ]);
    }
    write_csv(
        &out.join("lemmas.csv"),
        &["lemma", "samples", "worstMargin", "status"],
        &rows,
    )
    .map_err(|e| e.to_string())?;
    if plots {
        let xs: Vec<f64> = (0..reports.len()).map(|i| i as f64).collect();
        let ys: Vec<f64> = reports.iter().map(|r| r.worst_margin.min(10.0)).collect();
        write_svg(&out.join("lemmas.svg"), "worst margins", &xs, &ys).map_err(|e| e.to_string())?;
    }
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("verify-lemmas".into()))
        .field("seed", Json::Int(seed as i64))
        .field(
            "lemmas",
            Json::Array(reports.iter().map(lemma_json).collect()),
        );
    write_report(out, &json)?;
    let failed = reports.iter().any(|r| r.status == LemmaStatus::Failed);
    Ok(if failed { 1 } else { 0 })
}

fn cmd_metric(
    domain: &str,
    from: &str,
    to: &str,
    degree: u32,
    seed: u64,
    out: &Path,
) -> Result<i32, String> {
    ensure_out(out)?;
    let d = parse::parse_domain(domain)?;
    let w = parse::parse_complex(from)?;
    let z = parse::parse_complex(to)?;
    if d.dim() != 1 {
        return Err("metric queries are planar; use a one-dimensional domain".into());
    }
    let exact = model_caratheodory(&d, z, w).ok();
    let bounds = if d.is_bounded() && w != z {
        extremal_search(
            &d,
            &CxPoint::scalar(w),
            &CxPoint::scalar(z),
            degree,
            2000,
            seed,
        )
        .ok()
    } else {
        None
    };
    let value = exact.or(bounds.as_ref().map(|b| b.lower));
    match value {
        Some(v) => println!("{:.6}", v),
        None => return Err("no distance route available for this configuration".into()),
    }
    if let Some(witness) = bounds.as_ref().and_then(|b| b.witness.as_ref()) {
        // Candidate polynomial in powers of (ζ − w), one coefficient per row.
        let mut rows: Vec<Vec<Cell>> = witness
            .terms
            .iter()
            .map(|t| {
                vec![
                    Cell::Str(
                        t.powers
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(";"),
                    ),
                    Cell::Num(t.coeff.re),
                    Cell::Num(t.coeff.im),
                ]
            })
            .collect();
        rows.push(vec![
            Cell::Str("normalizer".into()),
            Cell::Num(witness.normalizer),
            Cell::Num(0.0),
        ]);
        write_csv(&out.join("witness.csv"), &["power", "re", "im"], &rows)
            .map_err(|e| e.to_string())?;
    }
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("metric".into()))
        .field("seed", Json::Int(seed as i64))
        .field("domain", Json::Str(domain.into()))
        .field("from", Json::Str(from.into()))
        .field("to", Json::Str(to.into()))
        .field("exact", exact.map(Json::Num).unwrap_or(Json::Null))
        .field(
            "lower",
            bounds
                .as_ref()
                .map(|b| Json::Num(b.lower))
                .unwrap_or(Json::Null),
        )
        .field(
            "upper",
            bounds
                .as_ref()
                .map(|b| Json::Num(b.upper))
                .unwrap_or(Json::Null),
        )
        .field(
            "witnessDegree",
            bounds
                .as_ref()
                .and_then(|b| b.witness.as_ref())
                .map(|w| Json::Int(w.degree() as i64))
                .unwrap_or(Json::Null),
        );
    write_report(out, &json)?;
    Ok(0)
}

fn cmd_flow(
    domain: &str,
    field_name: &str,
    z: &str,
    t: f64,
    tol: f64,
    out: &Path,
) -> Result<i32, String> {
    ensure_out(out)?;
    let d = parse::parse_domain(domain)?;
    let field = parse::parse_field(field_name)?;
    let z0 = CxPoint::scalar(parse::parse_complex(z)?);
    let result = flow_trace(&field, &z0, t, tol, &d);
    let (endpoint, trace, escape) = match result {
        Ok((end, trace)) => (Some(end), trace, None),
        Err(autdim_core::flow::FlowError::Escape { t_exit }) => (None, Vec::new(), Some(t_exit)),
        Err(e) => return Err(e.to_string()),
    };
    let mut rows = Vec::new();
    for p in &trace {
        let mut row = vec![Cell::Num(p.t)];
        for c in &p.z.coords {
            row.push(Cell::Num(c.re));
            row.push(Cell::Num(c.im));
        }
        rows.push(row);
    }
    write_csv(&out.join("trajectory.csv"), &["t", "re_z1", "im_z1"], &rows)
        .map_err(|e| e.to_string())?;
    match (&endpoint, escape) {
        (Some(end), _) => {
            let v = end.as_scalar();
            println!(
                "{:.12}{}{:.12}i",
                v.re,
                if v.im >= 0.0 { "+" } else { "-" },
                v.im.abs()
            );
        }
        (None, Some(t_exit)) => println!("escaped at t = {:.6}", t_exit),
        _ => {}
    }
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("flow".into()))
        .field("domain", Json::Str(domain.into()))
        .field("field", Json::Str(field_name.into()))
        .field("t", Json::Num(t))
        .field("tol", Json::Num(tol))
        .field(
            "endpoint",
            endpoint
                .map(|e| {
                    let v = e.as_scalar();
                    Json::Array(vec![Json::Num(v.re), Json::Num(v.im)])
                })
                .unwrap_or(Json::Null),
        )
        .field("escapeTime", escape.map(Json::Num).unwrap_or(Json::Null));
    write_report(out, &json)?;
    Ok(0)
}

fn cmd_hausdorff(j_text: &str, density: f64, out: &Path, plots: bool) -> Result<i32, String> {
    ensure_out(out)?;
    let js = parse::parse_j_range(j_text)?;
    let limit = autdim_core::domain::DomainSpec::q_limit();
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for &j in &js {
        let h = hausdorff_distance(&autdim_core::domain::DomainSpec::q_j(j), &limit, density)
            .map_err(|e| e.to_string())?;
        println!("j = {j}: hausdorff = {h:.6e}");
        rows.push(vec![Cell::Int(j as i64), Cell::Num(h)]);
        gaps.push(h);
    }
    write_csv(&out.join("hausdorff.csv"), &["j", "hausdorff"], &rows).map_err(|e| e.to_string())?;
    if plots {
        let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
        write_svg(
            &out.join("hausdorff.svg"),
            "boundary Hausdorff gap",
            &xs,
            &gaps,
        )
        .map_err(|e| e.to_string())?;
    }
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("hausdorff".into()))
        .field("density", Json::Num(density))
        .field(
            "rows",
            Json::Array(
                js.iter()
                    .zip(&gaps)
                    .map(|(&j, &h)| {
                        Json::obj()
                            .field("j", Json::Int(j as i64))
                            .field("hausdorff", Json::Num(h))
                    })
                    .collect(),
            ),
        );
    write_report(out, &json)?;
    Ok(0)
}

fn dim_json(r: &DimReport) -> Json {
    Json::obj()
        .field("estimatedDim", Json::Int(r.estimated_dim as i64))
        .field(
            "singularValues",
            Json::Array(r.singular_values.iter().map(|&s| Json::Num(s)).collect()),
        )
        .field("gapRatio", Json::Num(r.gap_ratio))
        .field("tolerance", Json::Num(r.tolerance))
        .field("degree", Json::Int(r.degree as i64))
}

fn cmd_dim_estimate(
    domain: &str,
    degree: u32,
    tol: f64,
    density: f64,
    family: Option<&str>,
    out: &Path,
    plots: bool,
) -> Result<i32, String> {
    ensure_out(out)?;
    let d = parse::parse_domain(domain)?;
    if let Some(family_text) = family {
        return cmd_semicontinuity(&d, domain, family_text, degree, tol, density, out, plots);
    }
    match aut_dim_estimate_at_density(&d, degree, tol, density) {
        Ok(report) => {
            println!(
                "estimated dim = {} (degree cap {}, spectral gap {:.3e})",
                report.estimated_dim, report.degree, report.gap_ratio
            );
            let json = Json::obj()
                .field("schemaVersion", Json::Int(SCHEMA_VERSION))
                .field("command", Json::Str("dim-estimate".into()))
                .field("domain", Json::Str(domain.into()))
                .field("report", dim_json(&report));
            write_report(out, &json)?;
            Ok(0)
        }
        Err(autdim_core::dim::DimError::AmbiguousDim { spectrum, gap }) => {
            eprintln!("ambiguous nullity: spectral gap {gap:.3} < 10; spectrum {spectrum:?}");
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

/// Build the family members for a semicontinuity experiment around the
/// given limit domain and emit the (param, hausdorff, dim, sigma_min,
/// gapRatio) table.
#[allow(clippy::too_many_arguments)]
fn cmd_semicontinuity(
    limit: &autdim_core::domain::DomainSpec,
    domain_text: &str,
    family_text: &str,
    degree: u32,
    tol: f64,
    density: f64,
    out: &Path,
    plots: bool,
) -> Result<i32, String> {
    use autdim_core::domain::DomainSpec;
    let (kind, args) = family_text
        .split_once(':')
        .ok_or("family takes kind:params, e.g. ellipse:0.5,0.2,0.1")?;
    let params: Vec<f64> = args
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| format!("bad family parameter {s:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let members: Vec<(f64, DomainSpec)> = match (kind, limit) {
        ("ellipse", DomainSpec::UnitDisk) => params
            .iter()
            .map(|&eps| {
                (
                    eps,
                    DomainSpec::Ellipse {
                        a: 1.0 + eps,
                        b: 1.0,
                    },
                )
            })
            .collect(),
        ("annulus", DomainSpec::Annulus { r_in, r_out }) => params
            .iter()
            .map(|&j| {
                let eps = 0.5f64.powi(j as i32);
                (
                    eps,
                    DomainSpec::Annulus {
                        r_in: r_in - eps,
                        r_out: *r_out,
                    },
                )
            })
            .collect(),
        _ => {
            return Err(format!(
                "unsupported family {kind:?} for limit {domain_text:?}"
            ))
        }
    };
    let table = autdim_core::dim::semicontinuity_experiment(&members, limit, degree, tol, density)
        .map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for r in &table.rows {
        println!(
            "param = {:.4}: hausdorff = {:.4e}, dim = {}, gap = {:.3e}",
            r.parameter, r.hausdorff_gap, r.estimated_dim, r.gap_ratio
        );
        rows.push(vec![
            Cell::Num(r.parameter),
            Cell::Num(r.hausdorff_gap),
            Cell::Int(r.estimated_dim as i64),
            Cell::Num(r.sigma_min),
            Cell::Num(r.gap_ratio),
        ]);
    }
    println!(
        "limit dim = {} — semicontinuity {}",
        table.limit_dim,
        if table.semicontinuity_holds {
            "holds"
        } else {
            "violated"
        }
    );
    write_csv(
        &out.join("semicontinuity.csv"),
        &["param", "hausdorff", "dim", "sigma_min", "gapRatio"],
        &rows,
    )
    .map_err(|e| e.to_string())?;
    if plots {
        let xs: Vec<f64> = table.rows.iter().map(|r| r.parameter).collect();
        let ys: Vec<f64> = table.rows.iter().map(|r| r.estimated_dim as f64).collect();
        write_svg(
            &out.join("semicontinuity.svg"),
            "member dimension vs parameter",
            &xs,
            &ys,
        )
        .map_err(|e| e.to_string())?;
    }
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("dim-estimate".into()))
        .field("domain", Json::Str(domain_text.into()))
        .field("family", Json::Str(family_text.into()))
        .field("limitDim", Json::Int(table.limit_dim as i64))
        .field(
            "semicontinuityHolds",
            Json::Bool(table.semicontinuity_holds),
        )
        .field(
            "rows",
            Json::Array(
                table
                    .rows
                    .iter()
                    .map(|r| {
                        Json::obj()
                            .field("param", Json::Num(r.parameter))
                            .field("hausdorff", Json::Num(r.hausdorff_gap))
                            .field("dim", Json::Int(r.estimated_dim as i64))
                            .field("sigmaMin", Json::Num(r.sigma_min))
                            .field("gapRatio", Json::Num(r.gap_ratio))
                    })
                    .collect(),
            ),
        );
    write_report(out, &json)?;
    Ok(if table.semicontinuity_holds { 0 } else { 1 })
}

fn orbit_json(class: &str, r: &OrbitReport) -> Json {
    Json::obj()
        .field("member", Json::Str(class.into()))
        .field(
            "classification",
            Json::Str(format!("{:?}", r.classification)),
        )
        .field("minBoundaryDist", Json::Num(r.min_boundary_dist))
        .field("recurrenceGap", Json::Num(r.recurrence_gap))
        .field("horizon", Json::Num(r.horizon))
}

fn cmd_example1(
    j_text: &str,
    tmax: f64,
    density: f64,
    out: &Path,
    plots: bool,
) -> Result<i32, String> {
    ensure_out(out)?;
    let js = parse::parse_j_range(j_text)?;
    let limit_family = Example1Family::limit();
    let q_limit = limit_family.q_part();
    let z0 = CxPoint::pair(Complex64::new(-0.5, 0.0), Complex64::ZERO);

    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &j in &js {
        let family = Example1Family::member(j);
        let gap =
            hausdorff_distance(&family.q_part(), &q_limit, density).map_err(|e| e.to_string())?;
        let action = family.product_action().map_err(|e| e.to_string())?;
        let (eps_c, eps_r, eps_esc) = member_orbit_tolerances(FamilyIndex::J(j));
        let rep = orbit_classifier(&family.product(), &action, &z0, tmax, eps_c, eps_r, eps_esc)
            .map_err(|e| e.to_string())?;
        println!(
            "j = {j}: hausdorff = {gap:.6e}, orbit = {:?} (min boundary dist {:.3e})",
            rep.classification, rep.min_boundary_dist
        );
        rows.push(vec![
            Cell::Str(j.to_string()),
            Cell::Num(gap),
            Cell::Str(format!("{:?}", rep.classification)),
            Cell::Num(rep.min_boundary_dist),
            Cell::Num(rep.recurrence_gap),
        ]);
        json_rows.push(orbit_json(&j.to_string(), &rep).field("hausdorff", Json::Num(gap)));
    }

    let limit_action = limit_family.product_action().map_err(|e| e.to_string())?;
    let (eps_c, eps_r, eps_esc) = member_orbit_tolerances(FamilyIndex::Limit);
    let limit_rep = orbit_classifier(
        &limit_family.product(),
        &limit_action,
        &z0,
        tmax.max(50.0),
        eps_c,
        eps_r,
        eps_esc,
    )
    .map_err(|e| e.to_string())?;
    println!(
        "limit: orbit = {:?} (min boundary dist {:.3e})",
        limit_rep.classification, limit_rep.min_boundary_dist
    );
    rows.push(vec![
        Cell::Str("limit".into()),
        Cell::Num(0.0),
        Cell::Str(format!("{:?}", limit_rep.classification)),
        Cell::Num(limit_rep.min_boundary_dist),
        Cell::Num(limit_rep.recurrence_gap),
    ]);
    json_rows.push(orbit_json("limit", &limit_rep).field("hausdorff", Json::Num(0.0)));

    write_csv(
        &out.join("example1.csv"),
        &[
            "member",
            "hausdorff",
            "classification",
            "minBoundaryDist",
            "recurrenceGap",
        ],
        &rows,
    )
    .map_err(|e| e.to_string())?;
    if plots {
        let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
        let ys: Vec<f64> = json_rows
            .iter()
            .take(js.len())
            .map(|_| 0.0)
            .zip(rows.iter())
            .map(|(_, r)| match r[1] {
                Cell::Num(v) => v,
                _ => 0.0,
            })
            .collect();
        write_svg(&out.join("example1.svg"), "family Hausdorff gap", &xs, &ys)
            .map_err(|e| e.to_string())?;
    }
    let consistent = limit_rep.classification == OrbitClass::Noncompact;
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("example1".into()))
        .field("density", Json::Num(density))
        .field("tmax", Json::Num(tmax))
        .field("rows", Json::Array(json_rows))
        .field("limitNoncompact", Json::Bool(consistent));
    write_report(out, &json)?;
    Ok(0)
}

fn cmd_converge(j_text: &str, out: &Path, plots: bool) -> Result<i32, String> {
    ensure_out(out)?;
    let js = parse::parse_j_range(j_text)?;
    let center = Complex64::new(-0.5, 0.0);
    let cloud = disk_cloud(center, 0.1, 4);
    let report =
        field_convergence_experiment(&js, center, 0.25, &cloud, 0.05).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (&j, &dev) in report.js.iter().zip(&report.sup_deviations) {
        println!("j = {j}: sup deviation = {dev:.6e}");
        rows.push(vec![Cell::Int(j as i64), Cell::Num(dev)]);
    }
    write_csv(&out.join("converge.csv"), &["j", "supDeviation"], &rows)
        .map_err(|e| e.to_string())?;
    if plots {
        let xs: Vec<f64> = report.js.iter().map(|&j| j as f64).collect();
        write_svg(
            &out.join("converge.svg"),
            "generator deviation",
            &xs,
            &report.sup_deviations,
        )
        .map_err(|e| e.to_string())?;
    }
    let json = Json::obj()
        .field("schemaVersion", Json::Int(SCHEMA_VERSION))
        .field("command", Json::Str("converge".into()))
        .field("compactSet", Json::Str(report.compact_set.clone()))
        .field(
            "rows",
            Json::Array(
                report
                    .js
                    .iter()
                    .zip(&report.sup_deviations)
                    .map(|(&j, &dev)| {
                        Json::obj()
                            .field("j", Json::Int(j as i64))
                            .field("supDeviation", Json::Num(dev))
                    })
                    .collect(),
            ),
        );
    write_report(out, &json)?;
    Ok(0)
}

fn cmd_run(config_path: &Path) -> Result<i32, String> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| format!("cannot read {}: {e}", config_path.display()))?;
    let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?;
    let out = PathBuf::from(cfg.out.clone().unwrap_or_else(|| "out".into()));
    let seed = cfg.seed.unwrap_or(0);
    let plots = cfg.plots.unwrap_or(false);
    let density = cfg.density.unwrap_or(0.01);
    match cfg.command.as_str() {
        "verify-lemmas" => cmd_verify_lemmas(seed, &out, plots),
        "metric" => cmd_metric(
            cfg.domain.as_deref().unwrap_or("unitdisk"),
            cfg.from.as_deref().ok_or("metric config needs \"from\"")?,
            cfg.to.as_deref().ok_or("metric config needs \"to\"")?,
            cfg.degree.unwrap_or(4),
            seed,
            &out,
        ),
        "flow" => cmd_flow(
            cfg.domain.as_deref().unwrap_or("unitdisk"),
            cfg.field.as_deref().unwrap_or("iz"),
            cfg.z.as_deref().ok_or("flow config needs \"z\"")?,
            cfg.t.ok_or("flow config needs \"t\"")?,
            cfg.tol.unwrap_or(1e-9),
            &out,
        ),
        "hausdorff" => cmd_hausdorff(cfg.j.as_deref().unwrap_or("3..8"), density, &out, plots),
        "dim-estimate" => cmd_dim_estimate(
            cfg.domain
                .as_deref()
                .ok_or("dim-estimate config needs \"domain\"")?,
            cfg.degree.unwrap_or(2),
            cfg.tol.unwrap_or(1e-8),
            cfg.density.unwrap_or(0.05),
            cfg.family.as_deref(),
            &out,
            plots,
        ),
        "example1" => cmd_example1(
            cfg.j.as_deref().unwrap_or("3..8"),
            cfg.tmax.unwrap_or(8.0 * std::f64::consts::PI),
            density,
            &out,
            plots,
        ),
        "converge" => cmd_converge(cfg.j.as_deref().unwrap_or("3..10"), &out, plots),
        other => Err(format!("unknown command {other:?} in config")),
    }
}
