use hyperc_core::par::map_range;
use hyperc_core::solver::identities::random_pairs;
use hyperc_core::{
    blowup_first, blowup_three_halves, defect_segment, h_curve, solve_biased, solve_z3, sym_curve,
    sym_curve_biased, z2_constant, BiasParam, ExponentPair, PlanePoint,
};
use serde_json::{json, Value};

use crate::args::{SweepArgs, SweepKind};
use crate::error::{CliError, CliResult};
use crate::exponent::{parse_list, Exponents, Number};
use crate::output::{emit, Table};

const SOLVE_TOL: f64 = 1e-12;

fn count(v: Option<usize>, default: usize, name: &str) -> CliResult<usize> {
    let n = v.unwrap_or(default);
    if n < 2 {
        return Err(CliError::input(format!(
            "--{name} must be at least 2, got {n}"
        )));
    }
    Ok(n)
}

/// `n` values of alpha evenly inside `(-1, 1)`; odd `n` includes `0`.
pub fn alpha_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| -1.0 + 2.0 * (i + 1) as f64 / (n + 1) as f64)
        .collect()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn t_range(args: &SweepArgs, lo: f64, hi: f64, open: bool) -> CliResult<(f64, f64)> {
    let (a, b) = (args.t_min.unwrap_or(lo), args.t_max.unwrap_or(hi));
    let ok = if open {
        0.0 < a && a < b && b < 1.0
    } else {
        0.0 <= a && a < b && b <= 1.0
    };
    if !ok {
        let range = if open {
            "0 < t-min < t-max < 1"
        } else {
            "0 <= t-min < t-max <= 1"
        };
        return Err(CliError::input(format!(
            "t range [{a}, {b}] violates {range}"
        )));
    }
    Ok((a, b))
}

fn pair_from(p: &Option<String>, q: &Option<String>, dp: &str, dq: &str) -> CliResult<Exponents> {
    Exponents::parse(p.as_deref().unwrap_or(dp), q.as_deref().unwrap_or(dq))
}

/// Rows of a sweep computed in parallel, one block per outer index.
fn blocks<F>(n: usize, f: F) -> CliResult<Vec<Vec<f64>>>
where
    F: Fn(usize) -> CliResult<Vec<Vec<f64>>> + Sync + Send,
{
    let parts = map_range(n, f);
    let mut rows = Vec::new();
    for part in parts {
        rows.extend(part?);
    }
    Ok(rows)
}

fn curves_h(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let ps = parse_list(args.ps.as_deref().unwrap_or("6/5,3/2,2,3,6"))?;
    let n = count(args.x_grid, 257, "x-grid")?;
    let xs = linspace(0.0, 1.0, n);
    let mut table = Table::new(&["p", "x", "u", "v"]);
    table.rows = blocks(ps.len(), |i| {
        let p = ps[i].value;
        xs.iter()
            .map(|&x| {
                let pt = h_curve(p, x)?;
                Ok(vec![p, x, pt.u, pt.v])
            })
            .collect()
    })?;
    let labels: Vec<String> = ps.iter().map(Number::label).collect();
    Ok((table, json!({ "ps": labels, "x_grid": n })))
}

fn sym_rows(
    alphas: &[f64],
    ts: &[f64],
    f: impl Fn(f64, f64) -> CliResult<PlanePoint> + Sync + Send,
) -> CliResult<Vec<Vec<f64>>> {
    blocks(alphas.len(), |i| {
        let a = alphas[i];
        ts.iter()
            .map(|&t| {
                let pt = f(a, t)?;
                Ok(vec![a, t, pt.u, pt.v])
            })
            .collect()
    })
}

fn curves_sym(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let na = count(args.alphas, 9, "alphas")?;
    let nt = count(args.t_grid, 512, "t-grid")?;
    let (lo, hi) = t_range(args, 0.0, 1.0, false)?;
    let alphas = alpha_grid(na);
    let ts = linspace(lo, hi, nt);
    let mut table = Table::new(&["alpha", "t", "H1", "H2"]);
    table.rows = sym_rows(&alphas, &ts, |a, t| Ok(sym_curve(a, t)?))?;
    Ok((
        table,
        json!({ "alphas": na, "t_grid": nt, "t_min": lo, "t_max": hi }),
    ))
}

fn blowup(args: &SweepArgs, three_halves: bool) -> CliResult<(Table, Value)> {
    let na = count(args.alphas, 9, "alphas")?;
    let nt = count(args.t_grid, 512, "t-grid")?;
    let (lo, hi) = t_range(args, 0.01, 0.99, true)?;
    let alphas = alpha_grid(na);
    let ts = linspace(lo, hi, nt);
    let mut table = Table::new(&["alpha", "t", "U", "V"]);
    table.rows = sym_rows(&alphas, &ts, |a, t| {
        let h = sym_curve(a, t)?;
        Ok(if three_halves {
            blowup_three_halves(h)?
        } else {
            blowup_first(h)?
        })
    })?;
    Ok((
        table,
        json!({ "alphas": na, "t_grid": nt, "t_min": lo, "t_max": hi }),
    ))
}

/// The `t` grid for the biased family: `0`, log-spaced values up to `1`,
/// and the pleat parameter `lambda/(1 - lambda)`.
pub fn biased_t_grid(lam: f64, n: usize) -> Vec<f64> {
    let lo = (lam * lam).max(1e-300).ln();
    let mut ts: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                1.0
            } else {
                (lo * (1.0 - i as f64 / (n - 1) as f64)).exp()
            }
        })
        .collect();
    ts.push(0.0);
    ts.push(lam / (1.0 - lam));
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

fn curves_h_lambda(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let lam_in = Number::parse(args.lambda.as_deref().unwrap_or("1e-100"))?;
    let lam = BiasParam::new(lam_in.value)?;
    let na = count(args.alphas, 9, "alphas")?;
    let nt = count(args.t_grid, 256, "t-grid")?;
    let alphas = alpha_grid(na);
    let ts = biased_t_grid(lam.value(), nt);
    let l = lam.value();
    let mut table = Table::new(&["lambda", "alpha", "t", "U", "V"]);
    table.rows = sym_rows(&alphas, &ts, |a, t| Ok(sym_curve_biased(lam, a, t)?))?
        .into_iter()
        .map(|r| {
            let mut row = vec![l];
            row.extend(r);
            row
        })
        .collect();
    Ok((
        table,
        json!({ "lambda": lam_in.label(), "alphas": na, "t_grid": nt }),
    ))
}

fn sigma_heatmap(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let nl = count(args.lambda_grid, 32, "lambda-grid")?;
    let np = args.pairs.unwrap_or(8);
    if np == 0 {
        return Err(CliError::input("--pairs must be positive"));
    }
    let pairs = random_pairs(np, args.seed);
    let lams: Vec<f64> = (0..nl).map(|i| 0.5 * (i + 1) as f64 / nl as f64).collect();
    let mut table = Table::new(&["lambda", "p", "q", "sigma"]);
    table.rows = blocks(np * nl, |k| {
        let (pair, l) = (&pairs[k / nl], lams[k % nl]);
        let lam = BiasParam::new(l)?;
        let sigma = if lam.is_symmetric() {
            z2_constant(pair)
        } else {
            solve_biased(lam, pair, SOLVE_TOL)?.sigma
        };
        Ok(vec![vec![l, pair.p(), pair.q(), sigma]])
    })?;
    let decreases = table
        .rows
        .chunks(nl)
        .map(|c| c.windows(2).filter(|w| w[1][3] < w[0][3]).count())
        .sum::<usize>();
    eprintln!("sigma-heatmap: {decreases} decreases along lambda");
    Ok((
        table,
        json!({ "lambda_grid": nl, "pairs": np, "seed": args.seed, "decreases": decreases }),
    ))
}

fn r_of(p: f64, q: f64) -> CliResult<f64> {
    Ok(solve_z3(&ExponentPair::new(p, q)?, SOLVE_TOL)?.r)
}

fn nonmult(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let p = Number::parse(args.p.as_deref().unwrap_or("3/2"))?;
    let q = match &args.q {
        Some(q) => Number::parse(q)?,
        None => Number {
            value: p.value / (p.value - 1.0),
            rational: None,
        },
    };
    let pq = ExponentPair::new(p.value, q.value)?;
    let n = count(args.s_grid, 64, "s-grid")?;
    let (a, b) = (pq.p(), pq.q());
    let mut ss: Vec<f64> = (0..n)
        .map(|i| a + (b - a) * (i + 1) as f64 / (n + 1) as f64)
        .collect();
    if a < 2.0 && 2.0 < b {
        ss.push(2.0);
        ss.sort_by(f64::total_cmp);
        ss.dedup();
    }
    let r_pq = r_of(a, b)?;
    let mut table = Table::new(&["p", "s", "q", "r_pq", "r_ps", "r_sq", "gap"]);
    table.rows = blocks(ss.len(), |i| {
        let s = ss[i];
        let (r_ps, r_sq) = (r_of(a, s)?, r_of(s, b)?);
        Ok(vec![vec![a, s, b, r_pq, r_ps, r_sq, r_pq - r_ps * r_sq]])
    })?;
    Ok((
        table,
        json!({ "p": p.label(), "q": q.label(), "s_grid": n }),
    ))
}

fn defect(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let ex = pair_from(&args.p, &args.q, "2", "4")?;
    let n = count(args.rho_grid, 257, "rho-grid")?;
    let rs: Vec<f64> = match &args.rs {
        Some(s) => parse_list(s)?.iter().map(|x| x.value).collect(),
        None => {
            let r = solve_z3(&ex.pair, SOLVE_TOL)?.r;
            [0.9, 0.95, 1.0, 1.05, 1.1]
                .iter()
                .map(|f| (f * r).min(1.0))
                .collect()
        }
    };
    let rhos = linspace(0.0, 1.0, n);
    let mut table = Table::new(&["p", "q", "r", "rho", "G"]);
    let (p, q) = (ex.pair.p(), ex.pair.q());
    table.rows = blocks(rs.len(), |i| {
        rhos.iter()
            .map(|&rho| {
                Ok(vec![
                    p,
                    q,
                    rs[i],
                    rho,
                    defect_segment(&ex.pair, rs[i], rho)?,
                ])
            })
            .collect()
    })?;
    Ok((
        table,
        json!({ "p": ex.p.label(), "q": ex.q.label(), "rs": rs, "rho_grid": n }),
    ))
}

/// Compute the table for `args.kind` together with its resolved configuration.
pub fn build(args: &SweepArgs) -> CliResult<(Table, Value)> {
    let (table, mut config) = match args.kind {
        SweepKind::CurvesH => curves_h(args),
        SweepKind::CurvesSym => curves_sym(args),
        SweepKind::BlowupB => blowup(args, false),
        SweepKind::BlowupThreeHalves => blowup(args, true),
        SweepKind::CurvesHLambda => curves_h_lambda(args),
        SweepKind::SigmaHeatmap => sigma_heatmap(args),
        SweepKind::Nonmult => nonmult(args),
        SweepKind::Defect => defect(args),
    }?;
    if let Value::Object(m) = &mut config {
        m.insert("kind".into(), args.kind.name().into());
        m.insert("format".into(), json!(args.format));
        m.insert("out".into(), args.out.clone().into());
        m.insert("rows".into(), table.rows.len().into());
    }
    Ok((table, config))
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let (table, config) = build(args)?;
    let bytes = table.render(args.format)?;
    emit(&args.out, &bytes)?;
    eprintln!("sweep config: {config}");
    Ok(())
}
