use std::io::Write;

use hyperc_core::oracle::{check_extremizer, check_triangle, estimate_r, estimate_sigma, GridSpec};
use hyperc_core::solver::identities::run_identities;
use hyperc_core::{
    sigma_pp_star, solve_biased, solve_z3, solve_z3_direct, z2_constant, BiasParam, BiasedMethod,
    Method,
};
use hyperc_exact::{certify, check_root, gcd, paper_p20, squarefree, IntPoly, Ring};
use serde_json::json;

use crate::args::{Budget, CertifyArgs, ComputeArgs, IdentitiesArgs, SigmaArgs, VerifyArgs};
use crate::error::{CliError, CliResult, Exit};
use crate::exponent::{Exponents, Number};
use crate::output::emit;
use crate::report::{Accuracy, RunReport};

/// Oracle agreement threshold.
pub const ORACLE_GAP: f64 = 1e-4;
/// Threshold for the biased oracle at `lambda = 1/3` against `r_{p,q}(Z_3)`.
pub const SIGMA_IDENTITY_GAP: f64 = 2e-4;
/// Solver tolerance used for certification inputs.
const CERTIFY_SOLVE_TOL: f64 = 1e-13;

fn print(report: &RunReport, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let text = if json {
        report.to_json()
    } else {
        report.to_text()
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(format!("stdout: {e}")))
}

fn echo_pair(report: &mut RunReport, ex: &Exponents) {
    report.input("p", ex.p.label()).input("q", ex.q.label());
}

/// `2^{-num/den}` written with a reduced exponent.
fn power_of_two(num: u64, den: u64) -> String {
    let g = gcd_u64(num, den);
    let (a, b) = (num / g, den / g);
    if b == 1 {
        format!("2^(-{a})")
    } else {
        format!("2^(-{a}/{b})")
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn compute(args: &ComputeArgs, out: &mut dyn Write) -> CliResult<()> {
    let ex = Exponents::parse(&args.p, &args.q)?;
    let mut report = RunReport::new("compute");
    echo_pair(&mut report, &ex);
    report.input("tol", args.tol);
    let s = solve_z3(&ex.pair, args.tol)?;
    let res = s.residual_max;
    report.method = Some(s.method.as_str().into());
    report
        .output("r", s.r, res, Accuracy::Residual)
        .output("x", s.x, res, Accuracy::Residual)
        .output("y", s.y, res, Accuracy::Residual)
        .output("rho0", s.rho0, res, Accuracy::Residual);

    let newton = solve_z3_direct(&ex.pair, &s, args.tol);
    report.output(
        "r_newton",
        newton.solution.r,
        (newton.solution.r - s.r).abs(),
        Accuracy::Gap,
    );
    match s.method {
        Method::ClosedFormPpStar => {
            let exact = ex.p.rational.map(|r| (r.num, r.den));
            let note = match exact {
                Some((m, n)) => format!(
                    "q = p*: x = {}, y = {} exactly",
                    power_of_two(2 * n, m),
                    power_of_two(2 * (m - n), m)
                ),
                None => format!(
                    "q = p*: x = 2^(-{}), y = 2^(-{}) exactly",
                    2.0 / ex.pair.p(),
                    2.0 / ex.pair.p_star()
                ),
            };
            report.note(note);
        }
        Method::ClosedFormWolff => {
            report.note("p = 2 or q = 2: closed form r = sqrt(2(4^{1/s}-1)/(4-4^{1/s})), s the other exponent");
        }
        Method::DualReflection => {
            report.note("solved as the adjoint pair (q*, p*) and mapped back");
        }
        _ => {}
    }
    if !s.unique {
        report.note("several curve crossings found; the smallest r is reported");
    }
    print(&report, args.json, out)
}

pub fn sigma(args: &SigmaArgs, out: &mut dyn Write) -> CliResult<()> {
    let ex = Exponents::parse(&args.p, &args.q)?;
    let lam_in = Number::parse(&args.lambda)?;
    let lam = BiasParam::new(lam_in.value)?;
    let mut report = RunReport::new("sigma");
    report.input("lambda", lam_in.label());
    echo_pair(&mut report, &ex);
    report.input("tol", args.tol);
    if lam.is_symmetric() {
        report.method = Some("closed_form_z2".into());
        report.output(
            "sigma",
            z2_constant(&ex.pair),
            f64::EPSILON,
            Accuracy::Tolerance,
        );
        report.note("lambda = 1/2: sigma equals the two-point constant sqrt((p-1)/(q-1))");
        return print(&report, args.json, out);
    }
    let s = solve_biased(lam, &ex.pair, args.tol)?;
    let res = s.residual_max;
    report.method = Some(s.method.as_str().into());
    report
        .output("sigma", s.sigma, res, Accuracy::Residual)
        .output("x", s.x, res, Accuracy::Residual)
        .output("y", s.y, res, Accuracy::Residual);
    if s.method == BiasedMethod::ClosedFormSinh {
        let c = sigma_pp_star(lam, ex.pair.p())?;
        report.output(
            "sigma_sinh",
            c.value,
            (c.value - s.sigma).abs(),
            Accuracy::Gap,
        );
        report.note("q = p*: sinh closed form cross-check");
    }
    if s.roots > 1 {
        report.note(format!(
            "{} admissible crossings; the smallest sigma is reported",
            s.roots
        ));
    }
    print(&report, args.json, out)
}

fn grid_for(budget: Budget) -> GridSpec {
    match budget {
        Budget::Quick => GridSpec::new(1024, 64, 3),
        Budget::Standard => GridSpec::new(4096, 256, 3),
        Budget::Thorough => GridSpec::new(16384, 512, 4),
    }
    .expect("budget grids are valid")
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let ex = Exponents::parse(&args.p, &args.q)?;
    let grid = grid_for(args.budget);
    let mut report = RunReport::new("verify");
    echo_pair(&mut report, &ex);
    report
        .input("budget", args.budget.as_str())
        .input("grid", json!([grid.n_rho, grid.n_theta, grid.refine_depth]));
    let mut ok = true;
    let oracle_tol = 1e-8;

    match &args.lambda {
        None => {
            let s = solve_z3(&ex.pair, 1e-12)?;
            let est = estimate_r(&ex.pair, oracle_tol, &grid)?;
            let gap = (est - s.r).abs();
            ok &= gap < ORACLE_GAP;
            report.method = Some(s.method.as_str().into());
            report
                .output("r_solver", s.r, s.residual_max, Accuracy::Residual)
                .output("r_oracle", est, oracle_tol, Accuracy::Tolerance)
                .output("gap", gap, ORACLE_GAP, Accuracy::Tolerance);
            match check_extremizer(&ex.pair, &s, 1e-8) {
                Ok(e) => {
                    report
                        .output("G(r,rho0)", e.defect, 1e-8, Accuracy::Tolerance)
                        .output("G(r,1)", e.defect_at_one, 0.0, Accuracy::Tolerance);
                    report.note("extremizer clauses hold");
                }
                Err(e) => {
                    ok = false;
                    report.note(format!("extremizer check failed: {e}"));
                }
            }
            let tri = check_triangle(&ex.pair, s.r, &grid)?;
            report.output(
                "triangle_min",
                tri.min,
                hyperc_core::oracle::SLACK,
                Accuracy::Tolerance,
            );
            report.note(format!(
                "triangle minimum at rho = {:.6}, theta = {:.6}{}",
                tri.rho,
                tri.theta,
                if tri.regime_proven {
                    " (edge minimum expected)"
                } else {
                    ""
                }
            ));
        }
        Some(l) => {
            let lam_in = Number::parse(l)?;
            let lam = BiasParam::new(lam_in.value)?;
            report.input("lambda", lam_in.label());
            let solved = if lam.is_symmetric() {
                z2_constant(&ex.pair)
            } else {
                solve_biased(lam, &ex.pair, 1e-12)?.sigma
            };
            let est = estimate_sigma(lam, &ex.pair, oracle_tol, &grid)?;
            let gap = (est - solved).abs();
            ok &= gap < ORACLE_GAP;
            report
                .output("sigma_solver", solved, 1e-12, Accuracy::Tolerance)
                .output("sigma_oracle", est, oracle_tol, Accuracy::Tolerance)
                .output("gap", gap, ORACLE_GAP, Accuracy::Tolerance);
            if (lam.value() - 1.0 / 3.0).abs() < 1e-15 {
                let r = solve_z3(&ex.pair, 1e-12)?.r;
                let id_gap = (est - r).abs();
                ok &= id_gap < SIGMA_IDENTITY_GAP;
                report.output("r_z3", r, 1e-12, Accuracy::Tolerance).output(
                    "identity_gap",
                    id_gap,
                    SIGMA_IDENTITY_GAP,
                    Accuracy::Tolerance,
                );
            }
        }
    }
    report.passed = Some(ok);
    print(&report, args.json, out)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::new(
            Exit::Verification,
            "solver and oracle disagree",
        ))
    }
}

/// `(4r^2+2)^q - 4(r^2+2)^q`, the radical-free form of the `p = 2` closed form.
fn wolff_polynomial(q: u64) -> IntPoly {
    let a = IntPoly::from_i64s(&[2, 0, 4]).pow(q);
    let b = IntPoly::from_i64s(&[2, 0, 1]).pow(q);
    a.sub(&b.scalar_mul(&4.into()))
}

fn default_cert_path(ex: &Exponents) -> String {
    let clean = |s: String| s.replace('/', "_");
    format!(
        "certificate_p{}_q{}.json",
        clean(ex.p.label()),
        clean(ex.q.label())
    )
}

pub fn certify_cmd(args: &CertifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let ex = Exponents::parse(&args.p, &args.q)?;
    let re = ex.rational()?;
    let path = args.out.clone().unwrap_or_else(|| default_cert_path(&ex));
    let s = solve_z3(&ex.pair, CERTIFY_SOLVE_TOL)?;
    let cert = certify(&re, s.r)?;
    let d = cert.degrees;

    let mut report = RunReport::new("certify");
    echo_pair(&mut report, &ex);
    report.input("out", path.clone());
    report.method = Some("resultant_elimination".into());
    report
        .output("r", s.r, s.residual_max, Accuracy::Residual)
        .output(
            "abs_value",
            cert.check.abs_value,
            cert.check.threshold,
            Accuracy::Tolerance,
        );
    report.note(format!(
        "degrees: P1 {:?}, P2 {:?}, R1 {:?}, R2 {:?}, resultant {}, squarefree {}",
        d.p1, d.p2, d.r1, d.r2, d.resultant, d.squarefree
    ));

    let mut ok = cert.check.passed;
    if re.m == 2 && re.n == 1 && re.k == 1 {
        let common = squarefree(&gcd(&cert.poly, &wolff_polynomial(re.j)));
        let hit = common.degree().unwrap_or(0) > 0 && check_root(&common, s.r, 1e-6).passed;
        ok &= hit;
        report.note(format!(
            "common factor with the closed form {}: {}",
            if hit { "vanishes at r" } else { "missing" },
            common.to_string_in("r")
        ));
        if re.j == 4 {
            let f = IntPoly::from_i64s(&[-2, 0, 4, 0, 7]);
            let divides = cert.poly.exact_divide(&f).is_ok();
            ok &= divides;
            report.note(format!(
                "factor {} {}",
                f.to_string_in("r"),
                if divides { "detected" } else { "missing" }
            ));
        }
    }
    if (re.m, re.n, re.j, re.k) == (3, 1, 6, 1) {
        let p20 = paper_p20();
        let divides = cert.poly.exact_divide(&p20).is_ok();
        let root = check_root(&p20, s.r, 1e-6);
        ok &= divides && root.passed;
        report.output(
            "p20_abs_value",
            root.abs_value,
            root.threshold,
            Accuracy::Tolerance,
        );
        report.note(format!(
            "degree-20 reference polynomial: exact factor {}, root test {}",
            if divides { "yes" } else { "no" },
            if root.passed { "pass" } else { "fail" }
        ));
    }
    report.passed = Some(ok);

    let json =
        serde_json::to_string_pretty(&cert.to_json()).expect("certificate serializes") + "\n";
    emit(&path, json.as_bytes())?;
    if path == "-" {
        let mut err = std::io::stderr();
        print(&report, args.json, &mut err)?;
    } else {
        print(&report, args.json, out)?;
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::new(
            Exit::Verification,
            "certificate checks failed",
        ))
    }
}

pub fn identities(args: &IdentitiesArgs, out: &mut dyn Write) -> CliResult<()> {
    let rep = run_identities(args.sample_size, args.seed);
    let text = if args.json {
        serde_json::to_string_pretty(&rep).expect("report serializes") + "\n"
    } else {
        let mut s = format!(
            "hyperc identities {}\n  seed {}  sample_size {}\n",
            env!("CARGO_PKG_VERSION"),
            rep.seed,
            rep.sample_size
        );
        s += &format!(
            "  {:<24} {:>7} {:>12} {:>10}  result\n",
            "identity", "samples", "max_error", "threshold"
        );
        for row in &rep.rows {
            s += &format!(
                "  {:<24} {:>7} {:>12.3e} {:>10.1e}  {}\n",
                row.name,
                row.samples,
                row.max_error,
                row.threshold,
                if row.passed { "PASS" } else { "FAIL" }
            );
            for e in &row.errors {
                s += &format!("    error: {e}\n");
            }
        }
        s += &format!("  result: {}\n", if rep.passed() { "PASS" } else { "FAIL" });
        s
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(format!("stdout: {e}")))?;
    if rep.passed() {
        Ok(())
    } else {
        Err(CliError::new(Exit::Verification, "identity suite failed"))
    }
}
