//! Acceptance suite: one test per shipped criterion, each printing a
//! PASS/FAIL line. Tolerances are pinned here and nowhere else.
//!
//! Run with `cargo test -p autdim-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use autdim_core::dim::{
    aut_dim_estimate_at_density, disk_cloud, field_convergence_experiment,
    semicontinuity_experiment, DIM_DENSITY,
};
use autdim_core::domain::{
    contains, dist_to_boundary, hausdorff_distance, inner_outer_radii, DomainSpec,
};
use autdim_core::estimates::{gram_normalize, run_lemma_battery, LemmaId, LemmaStatus};
use autdim_core::flow::{
    cr_residual, group_property_residual, infinitesimal_residual, ComplexTimePoint, GroupAction,
};
use autdim_core::gallery::{
    member_orbit_tolerances, orbit_classifier, Example1Family, FamilyIndex, OrbitClass,
};
use autdim_core::metric::{caratheodory_length_estimate, extremal_search, model_caratheodory};
use autdim_core::point::CxPoint;
use autdim_core::poly::VectorFieldPoly;
use autdim_core::quad::ball_volume;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pass(name: &str, detail: String) {
    println!("criterion {name}: PASS ({detail})");
}

#[test]
fn criterion_01_metric_oracle() {
    let disk = DomainSpec::UnitDisk;
    let mut worst_exact = 0.0f64;
    let mut worst_rel = 0.0f64;
    let mut worst_time = 0.0f64;
    for k in 1..=9u32 {
        let x = k as f64 / 10.0;
        let oracle = 0.5 * ((1.0 + x) / (1.0 - x)).ln();
        let exact = model_caratheodory(&disk, c(0.0, 0.0), c(x, 0.0)).unwrap();
        worst_exact = worst_exact.max((exact - oracle).abs());
        assert!(
            (exact - oracle).abs() <= 1e-12,
            "x={x}: model {exact} vs oracle {oracle}"
        );

        let t0 = Instant::now();
        let bounds = extremal_search(
            &disk,
            &CxPoint::scalar(c(0.0, 0.0)),
            &CxPoint::scalar(c(x, 0.0)),
            3,
            2000,
            7 + k as u64,
        )
        .unwrap();
        let dt = t0.elapsed().as_secs_f64();
        worst_time = worst_time.max(dt);
        assert!(dt < 10.0, "x={x}: search took {dt:.2}s");
        let rel = (oracle - bounds.lower).abs() / oracle;
        worst_rel = worst_rel.max(rel);
        assert!(
            rel <= 0.01,
            "x={x}: lower {} vs {oracle} (rel {rel:.4})",
            bounds.lower
        );
        assert!((bounds.upper - oracle).abs() <= 1e-12);
    }
    pass(
        "01 metric oracle",
        format!("max |exact-oracle| {worst_exact:.2e}, max rel gap {worst_rel:.4}, max time {worst_time:.2}s"),
    );
}

#[test]
fn criterion_02_cne_sandwich() {
    let battery: Vec<DomainSpec> = vec![
        DomainSpec::UnitDisk,
        DomainSpec::Ball {
            center: CxPoint::pair(c(0.0, 0.0), c(0.0, 0.0)),
            radius: 1.0,
        },
        DomainSpec::Ellipse { a: 2.0, b: 1.0 },
        DomainSpec::q_limit(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_lower = f64::INFINITY;
    let mut worst_upper = f64::INFINITY;
    let mut tested = 0usize;
    while tested < 50 {
        let d = &battery[tested % battery.len()];
        let n = d.dim();
        let w = CxPoint::new(
            (0..n)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        );
        if !contains(d, &w).unwrap_or(false) || dist_to_boundary(d, &w).unwrap_or(0.0) < 0.05 {
            continue;
        }
        let y = CxPoint::new(
            (0..n)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        );
        if y.norm() < 1e-3 {
            continue;
        }
        tested += 1;
        let radii = inner_outer_radii(d, &w).unwrap();
        let (estimate, _exact) =
            caratheodory_length_estimate(d, &w, &y, 1000 + tested as u64).unwrap();
        let lower_slack = estimate - (y.norm() / radii.big_r - 1e-9);
        let upper_slack = (y.norm() / radii.r + 1e-9) - estimate;
        worst_lower = worst_lower.min(lower_slack);
        worst_upper = worst_upper.min(upper_slack);
        assert!(
            lower_slack >= 0.0,
            "{d:?} w={w:?}: estimate {estimate} below |Y|/R = {}",
            y.norm() / radii.big_r
        );
        assert!(
            upper_slack >= 0.0,
            "{d:?} w={w:?}: estimate {estimate} above |Y|/r = {}",
            y.norm() / radii.r
        );
    }
    pass(
        "02 cne sandwich",
        format!(
            "50 draws, worst lower slack {worst_lower:.3e}, worst upper slack {worst_upper:.3e}"
        ),
    );
}

#[test]
fn criterion_03_lemma_suite() {
    let t0 = Instant::now();
    let reports = run_lemma_battery(7).unwrap();
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "suite took {elapsed:?}");
    for r in &reports {
        assert_ne!(r.status, LemmaStatus::Failed, "{r:?}");
        if r.status == LemmaStatus::Passed {
            assert!(r.worst_margin >= -1e-9, "{r:?}");
        }
    }
    let mderiv = reports
        .iter()
        .find(|r| r.lemma_id == LemmaId::MDeriv)
        .unwrap();
    // margin = 1e-6 − residual, so residual ≤ 1e-6 means margin ≥ 0.
    assert!(
        mderiv.worst_margin >= 0.0,
        "dm²/dt residual above 1e-6: {mderiv:?}"
    );
    pass(
        "03 lemma suite",
        format!("6 lemmas, no Failed, runtime {:.1}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_04_flow_contracts() {
    let tol = 1e-10;
    let disk = DomainSpec::UnitDisk;
    let q_family = Example1Family::limit();
    let q = q_family.q_part();

    let cases: Vec<(GroupAction, DomainSpec, CxPoint, f64)> = vec![
        (
            GroupAction::from_field(VectorFieldPoly::rotation(), tol),
            disk.clone(),
            CxPoint::scalar(c(0.5, 0.0)),
            tol,
        ),
        (
            GroupAction::from_field(VectorFieldPoly::disk_field(Complex64::ONE, 0.0), tol),
            disk.clone(),
            CxPoint::scalar(c(0.2, 0.3)),
            tol,
        ),
        (
            q_family.planar_action().unwrap(),
            q.clone(),
            CxPoint::scalar(c(-0.5, 0.0)),
            1e-13,
        ),
    ];
    let mut worst_group = 0.0f64;
    let mut worst_inf = 0.0f64;
    for (action, d, z, case_tol) in &cases {
        for &(t, s) in &[(0.4, 0.3), (-0.6, 0.9), (0.75, -0.2)] {
            let r = group_property_residual(action, z, t, s, d).unwrap();
            worst_group = worst_group.max(r / (10.0 * case_tol));
            assert!(r <= 10.0 * case_tol, "group residual {r}");
        }
        for &t in &[0.3, 0.8] {
            let r = infinitesimal_residual(action, z, t, d).unwrap();
            worst_inf = worst_inf.max(r);
            assert!(r <= 1e-6, "infinitesimal residual {r}");
        }
    }

    let mut worst_cr = 0.0f64;
    for field in [
        VectorFieldPoly::rotation(),
        VectorFieldPoly::disk_field(Complex64::ONE, 0.0),
    ] {
        let zeta = ComplexTimePoint::new(c(0.2, 0.05), 0.1).unwrap();
        let r = cr_residual(&field, &CxPoint::scalar(c(0.25, 0.1)), zeta, 1e-11, &disk).unwrap();
        worst_cr = worst_cr.max(r);
        assert!(r <= 1e-5, "CR residual {r}");
    }
    pass(
        "04 flow contracts",
        format!("group ≤ 10·tol (worst frac {worst_group:.2}), gp ≤ 1e-6 (worst {worst_inf:.2e}), CR ≤ 1e-5 (worst {worst_cr:.2e})"),
    );
}

#[test]
fn criterion_05_dimension_estimates() {
    let cases = [
        (DomainSpec::UnitDisk, 3usize),
        (DomainSpec::Ellipse { a: 2.0, b: 1.0 }, 0),
        (
            DomainSpec::Annulus {
                r_in: 0.3,
                r_out: 1.0,
            },
            1,
        ),
    ];
    for (d, expected) in &cases {
        for density in [DIM_DENSITY, DIM_DENSITY / 2.0] {
            let report = aut_dim_estimate_at_density(d, 2, 1e-8, density).unwrap();
            assert_eq!(
                report.estimated_dim, *expected,
                "{d:?} at density {density}"
            );
            assert!(report.gap_ratio >= 10.0, "{d:?}: gap {}", report.gap_ratio);
        }
    }
    pass(
        "05 dimension estimates",
        "disk 3, ellipse 0, annulus 1; stable at 2x density".into(),
    );
}

#[test]
fn criterion_06_semicontinuity() {
    let t0 = Instant::now();
    let family: Vec<(f64, DomainSpec)> = [0.5, 0.2, 0.1, 0.05]
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
        .collect();
    let table =
        semicontinuity_experiment(&family, &DomainSpec::UnitDisk, 2, 1e-8, DIM_DENSITY).unwrap();
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "experiment took {elapsed:?}");
    assert_eq!(table.limit_dim, 3);
    assert!(table.rows.iter().all(|r| r.estimated_dim == 0), "{table:?}");
    assert!(table.semicontinuity_holds);
    pass(
        "06 semicontinuity",
        format!(
            "member dims all 0, limit 3, runtime {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_07_example_family_end_to_end() {
    let q = DomainSpec::q_limit();
    let z0 = CxPoint::pair(c(-0.5, 0.0), Complex64::ZERO);
    for j in 3..=10u32 {
        let gap = 0.5f64.powi(j as i32);
        let h = hausdorff_distance(&DomainSpec::q_j(j), &q, 0.01).unwrap();
        assert!(
            h >= gap / 2.0 && h <= gap * 2.0,
            "j={j}: hausdorff {h} outside [{}, {}]",
            gap / 2.0,
            gap * 2.0
        );

        let family = Example1Family::member(j);
        let action = family.product_action().unwrap();
        let (eps_c, eps_r, eps_esc) = member_orbit_tolerances(FamilyIndex::J(j));
        let rep = orbit_classifier(
            &family.product(),
            &action,
            &z0,
            8.0 * std::f64::consts::PI,
            eps_c,
            eps_r,
            eps_esc,
        )
        .unwrap();
        assert_eq!(rep.classification, OrbitClass::Compact, "j={j}: {rep:?}");
    }
    let limit = Example1Family::limit();
    let (eps_c, eps_r, eps_esc) = member_orbit_tolerances(FamilyIndex::Limit);
    let rep = orbit_classifier(
        &limit.product(),
        &limit.product_action().unwrap(),
        &z0,
        50.0,
        eps_c,
        eps_r,
        eps_esc,
    )
    .unwrap();
    assert_eq!(rep.classification, OrbitClass::Noncompact, "{rep:?}");
    pass(
        "07 example family",
        "hausdorff in [2^-j/2, 2^-j*2] for j=3..10; members Compact, limit Noncompact".into(),
    );
}

#[test]
fn criterion_08_field_convergence() {
    let center = c(-0.5, 0.0);
    let cloud = disk_cloud(center, 0.1, 4);
    let js: Vec<u32> = (3..=10).collect();
    let report = field_convergence_experiment(&js, center, 0.25, &cloud, 0.05).unwrap();
    for w in report.sup_deviations.windows(2) {
        assert!(
            w[1] <= w[0],
            "deviations not decreasing: {:?}",
            report.sup_deviations
        );
    }
    let last = *report.sup_deviations.last().unwrap();
    assert!(last < 1e-2, "final deviation {last}");
    pass(
        "08 field convergence",
        format!("deviations decreasing, final {last:.3e} at j=10"),
    );
}

#[test]
fn criterion_09_gram_normalization() {
    let center = CxPoint::scalar(c(0.0, 0.0));
    let fields = vec![
        VectorFieldPoly::constant(Complex64::ONE),
        VectorFieldPoly::planar(&[Complex64::ZERO, Complex64::ONE]),
        VectorFieldPoly::planar(&[c(0.3, 0.1), Complex64::ZERO, Complex64::ONE]),
    ];
    let basis = gram_normalize(&fields, &center, 1.0, 32).unwrap();
    let dev = basis.gram_deviation();
    assert!(dev <= 1e-6, "gram deviation {dev}");
    let floor = 1.0 / ball_volume(1, 1.0) - 1e-6;
    let min_sup = basis.min_sup_norm();
    assert!(min_sup >= floor, "sup-norm {min_sup} below floor {floor}");
    pass(
        "09 gram normalization",
        format!("gram deviation {dev:.2e}, min sup-norm {min_sup:.4} ≥ {floor:.4}"),
    );
}

#[test]
fn criterion_10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_autdim");
    let tmp = std::env::temp_dir().join("autdim-acceptance");
    let (out_a, out_b) = (tmp.join("a"), tmp.join("b"));
    for out in [&out_a, &out_b] {
        let status = Command::new(bin)
            .args([
                "example1",
                "--j",
                "3..6",
                "--out",
                out.to_str().unwrap(),
                "--plots",
            ])
            .status()
            .expect("run binary");
        assert!(status.success());
        let status = Command::new(bin)
            .args([
                "verify-lemmas",
                "--seed",
                "7",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("run binary");
        assert!(status.success());
    }
    for file in ["report.json", "example1.csv", "example1.svg", "lemmas.csv"] {
        let a = std::fs::read(out_a.join(file)).unwrap();
        let b = std::fs::read(out_b.join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
    pass(
        "10 cli determinism",
        "report.json, CSV and SVG byte-identical across runs".into(),
    );
}
