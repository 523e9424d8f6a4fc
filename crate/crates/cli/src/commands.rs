//! Subcommand implementations. Every command assembles a serializable
//! report, emits it deterministically, and returns whether all verifications
//! passed.

use crate::report::{csv_line, emit_json, emit_text};
use piqes_core::classmech::{
    bracket_vanishing_certificate, classical_functions, eval_even_poly_at_u, integrate,
    special_points,
};
use piqes_core::gl2qes::{
    flag_preservation_report, heun_operator, pi_integral_gl2, qes_block_spectrum,
    sextic_pi_integral_quantum, verify_commutant, verify_commutant_quasi, CommutantWitness,
    Gl2Generators, HeunCoeffs, QuasiPoly, SexticModel,
};
use piqes_core::graded::GradedSpace;
use piqes_core::jsonio::{diffop_to_json, multipoly_to_json, PolyJson};
use piqes_core::multipoly::MultiPoly;
use piqes_core::phase::poisson_bracket;
use piqes_core::scalar::{CScalar, Rational};
use piqes_core::schrodnum::{
    compare_spectra, eigen_1d, sextic_half_width, CompareReport, GridSpec, Parity, PotentialSpec,
};
use piqes_core::seeded_rng;
use piqes_core::weylcs::{
    detect_characteristic_vector, gauge_rotate, invariants_rational, trig::sutherland_a1_model,
    verify_cs_commutant, RootSystemModel,
};
use serde::Serialize;
use std::str::FromStr;

fn parse_rational(s: &str, what: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|e| format!("{what}: cannot parse '{s}' as p/q rational: {e}"))
}

#[derive(Serialize)]
struct EigenvalueJson {
    re: f64,
    im: f64,
}

// ---------------------------------------------------------------------------
// gl2-verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Gl2Report {
    params: Gl2Params,
    structure_relations_exact: bool,
    annihilation_exact: bool,
    involution_exact: bool,
    flag_preservation_pass: bool,
    passed: bool,
}

#[derive(Serialize)]
struct Gl2Params {
    n_max: u32,
    seed: u64,
    trials: usize,
}

pub fn gl2_verify(
    n_max: u32,
    seed: u64,
    trials: usize,
    out: Option<String>,
) -> Result<bool, String> {
    let mut rng = seeded_rng(seed);

    let mut structure = true;
    for n in 0..=n_max {
        let g = Gl2Generators::new(n);
        let r1 = g.j0.commutator(&g.jm).unwrap() == -&g.jm;
        let r2 = g.j0.commutator(&g.jp).unwrap() == g.jp;
        let want = &g.j0.scale(&CScalar::from_int(2)) + &g.t0.scale(&CScalar::from_int(n as i64));
        let r3 = g.jm.commutator(&g.jp).unwrap() == want;
        structure &= r1 && r2 && r3;
    }

    // coefficients are drawn single-threaded so the report is independent of
    // the worker count; verification fans out across PIQES_WORKERS threads
    let workers = std::env::var("PIQES_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1);
    let mut annihilation = true;
    for n in 0..=n_max {
        let space = GradedSpace::poly_space("t", n);
        let integrals: Vec<_> = (-1..=(n as i64))
            .map(|k| pi_integral_gl2(n, k).unwrap())
            .collect();
        let drawn: Vec<HeunCoeffs> = (0..trials)
            .map(|_| HeunCoeffs::random_small(&mut rng))
            .collect();
        let chunk = drawn.len().div_ceil(workers);
        let results: Vec<bool> = std::thread::scope(|scope| {
            let handles: Vec<_> = drawn
                .chunks(chunk.max(1))
                .map(|batch| {
                    let space = &space;
                    let integrals = &integrals;
                    scope.spawn(move || {
                        batch.iter().all(|coeffs| {
                            let h = heun_operator(coeffs, n).h;
                            integrals
                                .iter()
                                .all(|i| verify_commutant(&h, i, space).unwrap().exact_zero)
                        })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        annihilation &= results.into_iter().all(|b| b);
    }

    let mut involution = true;
    for n in 0..=n_max.min(6) {
        let space = GradedSpace::poly_space("t", n);
        let integrals: Vec<_> = (-1..=(n as i64))
            .map(|k| pi_integral_gl2(n, k).unwrap())
            .collect();
        for a in &integrals {
            for b in &integrals {
                involution &= verify_commutant(a, b, &space).unwrap().exact_zero;
            }
        }
    }

    let lower = heun_operator(&HeunCoeffs::random_lower_triangular(&mut rng), n_max.max(1)).h;
    let flag = flag_preservation_report(&lower, n_max.min(6))
        .map_err(|e| e.to_string())?
        .all_pass;

    let passed = structure && annihilation && involution && flag;
    let report = Gl2Report {
        params: Gl2Params {
            n_max,
            seed,
            trials,
        },
        structure_relations_exact: structure,
        annihilation_exact: annihilation,
        involution_exact: involution,
        flag_preservation_pass: flag,
        passed,
    };
    emit_json(&report, out.as_deref())?;
    Ok(passed)
}

// ---------------------------------------------------------------------------
// qes-heun
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct HeunTrialReport {
    coefficients: Vec<(String, String)>,
    preserves_module: bool,
    exact_zero: bool,
    eigenvalues: Vec<EigenvalueJson>,
    char_poly: Vec<String>,
    max_eigen_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<CommutantWitness>,
}

#[derive(Serialize)]
struct HeunReport {
    params: HeunParams,
    trials: Vec<HeunTrialReport>,
    passed: bool,
}

#[derive(Serialize)]
struct HeunParams {
    n: u32,
    seed: u64,
}

pub fn qes_heun(n: u32, seed: u64, trials: usize, out: Option<String>) -> Result<bool, String> {
    let mut rng = seeded_rng(seed);
    let space = GradedSpace::poly_space("t", n);
    let integrals: Vec<_> = (-1..=(n as i64))
        .map(|k| pi_integral_gl2(n, k).unwrap())
        .collect();
    let mut passed = true;
    let mut reports = Vec::new();
    for _ in 0..trials {
        let coeffs = HeunCoeffs::random_small(&mut rng);
        let data = heun_operator(&coeffs, n);
        let spectrum = qes_block_spectrum(&data.h, n);
        let mut exact_zero = true;
        let mut witness = None;
        for i in &integrals {
            let rep = verify_commutant(&data.h, i, &space).unwrap();
            if !rep.exact_zero {
                exact_zero = false;
                witness = rep.witness;
                break;
            }
        }
        let trial = match spectrum {
            Ok(s) => HeunTrialReport {
                coefficients: coeffs
                    .as_list()
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
                preserves_module: true,
                exact_zero,
                eigenvalues: s
                    .eigenvalues
                    .iter()
                    .map(|z| EigenvalueJson { re: z.re, im: z.im })
                    .collect(),
                char_poly: s.char_poly.iter().map(|c| c.to_string()).collect(),
                max_eigen_residual: s.residuals.iter().cloned().fold(0.0, f64::max),
                witness,
            },
            Err(_) => HeunTrialReport {
                coefficients: coeffs
                    .as_list()
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
                preserves_module: false,
                exact_zero,
                eigenvalues: Vec::new(),
                char_poly: Vec::new(),
                max_eigen_residual: f64::NAN,
                witness,
            },
        };
        passed &= trial.preserves_module && trial.exact_zero;
        reports.push(trial);
    }
    let report = HeunReport {
        params: HeunParams { n, seed },
        trials: reports,
        passed,
    };
    emit_json(&report, out.as_deref())?;
    Ok(passed)
}

// ---------------------------------------------------------------------------
// qes-sextic
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SexticReport {
    params: SexticParams,
    potential: PotentialJson,
    char_poly: Vec<String>,
    eigenvalues: Vec<EigenvalueJson>,
    max_eigen_residual: f64,
    generator_combination_matches: bool,
    t_commutant_exact_zero: bool,
    x_commutant_exact_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric_comparison: Option<CompareReport>,
    passed: bool,
}

#[derive(Serialize)]
struct SexticParams {
    n: u32,
    q: u8,
    a: String,
    b: String,
}

#[derive(Serialize)]
struct PotentialJson {
    x6: String,
    x4: String,
    x2: String,
    x0: String,
}

#[allow(clippy::too_many_arguments)]
pub fn qes_sextic(
    n: u32,
    q: u8,
    a: &str,
    b: &str,
    compare_numeric: bool,
    grid_points: usize,
    potential_csv: Option<String>,
    spectra_csv: Option<String>,
    out: Option<String>,
) -> Result<bool, String> {
    let a = parse_rational(a, "--a")?;
    let b = parse_rational(b, "--b")?;
    let compare_numeric = compare_numeric || spectra_csv.is_some();
    let model = SexticModel::new(n, q, a, b).map_err(|e| e.to_string())?;

    let spectrum = qes_block_spectrum(&model.h2p, n).map_err(|e| e.to_string())?;
    let algebraic = spectrum.real_eigenvalues(1e-8).map_err(|e| e.to_string())?;

    // quadratic-combination consistency against the printed operator
    let combo = heun_operator(&model.heun_coeffs(), n);
    let combo_ok = combo.h == model.h2p;

    // t-representation commutant
    let space = GradedSpace::poly_space("t", n);
    let i_t = pi_integral_gl2(n, n as i64).unwrap();
    let t_rep = verify_commutant(&model.h2p, &i_t, &space).unwrap();

    // x-representation commutant on the invariant family
    let h_x = model.hamiltonian_x();
    let i_x = sextic_pi_integral_quantum(&model).expanded;
    let family: Vec<QuasiPoly> = (0..=n)
        .map(|k| {
            QuasiPoly::from_t_polynomial(
                model.q,
                model.a.clone(),
                model.b.clone(),
                &MultiPoly::monomial(&["t"], &[k], CScalar::one()),
            )
        })
        .collect();
    let x_rep = verify_commutant_quasi(&h_x, &i_x, &family).map_err(|e| e.to_string())?;

    let numeric = if compare_numeric {
        let l = sextic_half_width(&model);
        let parity = if q == 0 { Parity::Even } else { Parity::Odd };
        let grid = GridSpec::new(l, grid_points, parity).map_err(|e| e.to_string())?;
        let energies = eigen_1d(
            &PotentialSpec::Sextic(model.clone()),
            &grid,
            (n as usize + 1) + 2,
        )
        .map_err(|e| e.to_string())?;
        if let Some(path) = &spectra_csv {
            let sector = if q == 0 { "even" } else { "odd" };
            let mut text = String::from("index,energy,sector\n");
            for (i, e) in energies.iter().enumerate() {
                text.push_str(&format!("{i},{e},{sector}\n"));
            }
            emit_text(&text, Some(path))?;
        }
        Some(compare_spectra(&algebraic, &energies, 1e-6))
    } else {
        None
    };

    if let Some(path) = potential_csv {
        let l = sextic_half_width(&model);
        let mut text = String::from("x,V\n");
        let steps = 400;
        for i in 0..=steps {
            let x = -l + 2.0 * l * i as f64 / steps as f64;
            text.push_str(&csv_line(&[x, model.potential_at(x)]));
            text.push('\n');
        }
        emit_text(&text, Some(&path))?;
    }

    let numeric_ok = numeric.as_ref().map(|r| r.all_matched).unwrap_or(true);
    let passed = combo_ok && t_rep.exact_zero && x_rep.exact_zero && numeric_ok;
    let report = SexticReport {
        params: SexticParams {
            n,
            q,
            a: model.a.to_string(),
            b: model.b.to_string(),
        },
        potential: PotentialJson {
            x6: model.v6.0.to_string(),
            x4: model.v6.1.to_string(),
            x2: model.v6.2.to_string(),
            x0: model.v6.3.to_string(),
        },
        char_poly: spectrum.char_poly.iter().map(|c| c.to_string()).collect(),
        eigenvalues: spectrum
            .eigenvalues
            .iter()
            .map(|z| EigenvalueJson { re: z.re, im: z.im })
            .collect(),
        max_eigen_residual: spectrum.residuals.iter().cloned().fold(0.0, f64::max),
        generator_combination_matches: combo_ok,
        t_commutant_exact_zero: t_rep.exact_zero,
        x_commutant_exact_zero: x_rep.exact_zero,
        numeric_comparison: numeric,
        passed,
    };
    emit_json(&report, out.as_deref())?;
    Ok(passed)
}

// ---------------------------------------------------------------------------
// classical
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ClassicalReport {
    params: ClassicalParams,
    integral_at_origin: String,
    certificate: piqes_core::classmech::CertificateJson,
    special_points: Vec<SpecialPointJson>,
    bracket_zero_at_special_points: bool,
    trajectory: TrajectoryJson,
    passed: bool,
}

#[derive(Serialize)]
struct ClassicalParams {
    n: u32,
    q: u8,
    a: String,
    b: String,
    x0: f64,
    p0: f64,
    t_max: f64,
    dt: f64,
}

#[derive(Serialize)]
struct SpecialPointJson {
    x: f64,
    u_rational: String,
    u_sqrt_coeff: String,
    u_radicand: String,
}

#[derive(Serialize)]
struct TrajectoryJson {
    steps: usize,
    max_h_drift: f64,
    max_i_drift: f64,
    blew_up: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn classical(
    n: u32,
    q: u8,
    a: &str,
    b: &str,
    x0: f64,
    p0: f64,
    t_max: f64,
    dt: f64,
    sample_every: usize,
    traj_csv: Option<String>,
    out: Option<String>,
) -> Result<bool, String> {
    if t_max <= 0.0 || dt <= 0.0 {
        return Err("--t-max and --dt must be positive".into());
    }
    let a = parse_rational(a, "--a")?;
    let b = parse_rational(b, "--b")?;
    let model = SexticModel::new(n, q, a, b).map_err(|e| e.to_string())?;
    let cm = classical_functions(&model);

    let cert = bracket_vanishing_certificate(&cm).map_err(|e| e.to_string())?;
    let points = special_points(&cm);
    let bracket = poisson_bracket(&cm.h6, &cm.i_n);
    let bracket_p0 = bracket.at_p_zero();
    let mut bracket_zero = true;
    for pt in &points {
        match eval_even_poly_at_u(&bracket_p0, &pt.u) {
            Some((alpha, beta)) => bracket_zero &= alpha.is_zero() && beta.is_zero(),
            None => bracket_zero = false,
        }
    }

    let traj = integrate(&cm, x0, p0, t_max, dt, sample_every);
    if let Some(path) = traj_csv {
        let mut text = String::from("time,x,p,H,ReI,ImI\n");
        for s in &traj.samples {
            text.push_str(&csv_line(&[s.time, s.x, s.p, s.h, s.i_re, s.i_im]));
            text.push('\n');
        }
        emit_text(&text, Some(&path))?;
    }

    let passed = cert.holds() && bracket_zero && !traj.blew_up;
    let report = ClassicalReport {
        params: ClassicalParams {
            n,
            q,
            a: model.a.to_string(),
            b: model.b.to_string(),
            x0,
            p0,
            t_max,
            dt,
        },
        integral_at_origin: cm.integral_at_origin().to_string(),
        certificate: piqes_core::classmech::certificate_json(&cert),
        special_points: points
            .iter()
            .map(|p| SpecialPointJson {
                x: p.x,
                u_rational: p.u.rational.clone(),
                u_sqrt_coeff: p.u.coeff.clone(),
                u_radicand: p.u.radicand.clone(),
            })
            .collect(),
        bracket_zero_at_special_points: bracket_zero,
        trajectory: TrajectoryJson {
            steps: traj.samples.len(),
            max_h_drift: traj.max_h_drift,
            max_i_drift: traj.max_i_drift,
            blew_up: traj.blew_up,
        },
        passed,
    };
    emit_json(&report, out.as_deref())?;
    Ok(passed)
}

// ---------------------------------------------------------------------------
// cs-verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CsReport {
    params: CsParams,
    invariants: Vec<PolyJson>,
    h_terms: PolyJson,
    e0: String,
    h_kills_constants: bool,
    algebraicity_witness: bool,
    characteristic_vector: Vec<u32>,
    commutant_reports: Vec<CsCommutantEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trigonometric: Option<TrigReport>,
    passed: bool,
}

#[derive(Serialize)]
struct CsParams {
    family: String,
    rank: usize,
    nu: String,
    omega: String,
    n_max: u32,
}

#[derive(Serialize)]
struct CsCommutantEntry {
    n: u32,
    preserves: bool,
    exact_zero: bool,
}

#[derive(Serialize)]
struct TrigReport {
    beta: String,
    mu: String,
    e0: String,
    h_terms: PolyJson,
    algebraicity_witness: bool,
    entries: Vec<CsCommutantEntry>,
    passed: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn cs_verify(
    rank: usize,
    nu: &str,
    omega: &str,
    n_max: u32,
    trig: bool,
    beta: &str,
    mu: &str,
    out: Option<String>,
) -> Result<bool, String> {
    let nu = parse_rational(nu, "--nu")?;
    let omega = parse_rational(omega, "--omega")?;
    let rs = RootSystemModel::new_a(rank, nu.clone(), omega.clone()).map_err(|e| e.to_string())?;
    let chart = invariants_rational(&rs);
    let op = gauge_rotate(&rs, &chart).map_err(|e| e.to_string())?;

    let t_refs: Vec<&str> = chart.t_vars.iter().map(|s| s.as_str()).collect();
    let one = MultiPoly::one(&t_refs);
    let kills_constants = op.h.apply(&one).unwrap().is_zero();

    let f = detect_characteristic_vector(&op.h, n_max, 4).map_err(|e| e.to_string())?;

    // exact commutant; rank 2 capped at n = 3 to stay desk-scale
    let commutant_cap = if rank >= 2 { n_max.min(3) } else { n_max };
    let mut entries = Vec::new();
    let mut all_zero = true;
    for n in 0..=commutant_cap {
        let space = GradedSpace::new(&t_refs, n, &f);
        let preserves = space.restrict_matrix(&op.h).preserves_space();
        let rep = verify_cs_commutant(&op.h, &space).map_err(|e| e.to_string())?;
        all_zero &= preserves && rep.exact_zero;
        entries.push(CsCommutantEntry {
            n,
            preserves,
            exact_zero: rep.exact_zero,
        });
    }

    let trig_report = if trig {
        if rank != 1 {
            return Err("--trig is only available at rank 1".into());
        }
        let beta = parse_rational(beta, "--beta")?;
        let mu = parse_rational(mu, "--mu")?;
        let model = sutherland_a1_model(&beta, &mu).map_err(|e| e.to_string())?;
        let flags = model.verify_flag(n_max).map_err(|e| e.to_string())?;
        let mut t_entries = Vec::new();
        let mut t_pass = model.algebraicity_witness;
        for (n, preserves, rep) in flags {
            t_pass &= preserves && rep.exact_zero;
            t_entries.push(CsCommutantEntry {
                n,
                preserves,
                exact_zero: rep.exact_zero,
            });
        }
        Some(TrigReport {
            beta: beta.to_string(),
            mu: mu.to_string(),
            e0: model.e0.to_string(),
            h_terms: diffop_to_json(&model.h),
            algebraicity_witness: model.algebraicity_witness,
            entries: t_entries,
            passed: t_pass,
        })
    } else {
        None
    };

    let trig_ok = trig_report.as_ref().map(|t| t.passed).unwrap_or(true);
    let passed = kills_constants && op.algebraicity_witness && all_zero && trig_ok;
    let report = CsReport {
        params: CsParams {
            family: "A".into(),
            rank,
            nu: nu.to_string(),
            omega: omega.to_string(),
            n_max,
        },
        invariants: chart.polys.iter().map(multipoly_to_json).collect(),
        h_terms: diffop_to_json(&op.h),
        e0: op.e0.to_string(),
        h_kills_constants: kills_constants,
        algebraicity_witness: op.algebraicity_witness,
        characteristic_vector: f,
        commutant_reports: entries,
        trigonometric: trig_report,
        passed,
    };
    emit_json(&report, out.as_deref())?;
    Ok(passed)
}
