use super::scan::{refine, scan, MAX_ITER};
use super::z3::{N_SCAN, V_FLOOR};
use super::{check_tol, BiasedMethod, BiasedSolution};
use crate::curves::{log_add_exp, LogSeries, SERIES_RADIUS};
use crate::error::{domain, Error, Result};
use crate::formulas::{biased_ratio_raw, residual_biased, sigma_pp_star};
use crate::types::{BiasParam, ExponentPair, UnitSquarePoint};

/// Lower end of the inversion parameter `w = min(p - 1, 1) log x`.
const W_MIN: f64 = -740.0;

/// The family `h_lambda(p, .)` in the log coordinate `l = log x`.
struct Branch {
    p: f64,
    log_lam: f64,
    log_rest: f64,
    lam: f64,
    scale: f64,
    series: LogSeries,
}

impl Branch {
    fn new(lam: f64, p: f64) -> Self {
        Self {
            p,
            log_lam: lam.ln(),
            log_rest: (-lam).ln_1p(),
            lam,
            scale: (p - 1.0).min(1.0),
            series: LogSeries::new(1.0 - lam),
        }
    }

    /// Ordinate `(1-x)(1-x^{p-1})/(lambda + (1-lambda)x^p)`.
    fn ordinate(&self, l: f64) -> f64 {
        let num = l.exp_m1() * ((self.p - 1.0) * l).exp_m1();
        num / (self.lam + (1.0 - self.lam) * (self.p * l).exp())
    }

    /// `log` of the abscissa `(lambda + (1-lambda)x^p)^{1/p}/(lambda + (1-lambda)x)`.
    ///
    /// With `M(z) = log(lambda + (1-lambda)e^z)` this is `M(pl)/p - M(l)`,
    /// whose linear term cancels; near `l = 0` it is summed from the series.
    fn log_abscissa(&self, l: f64) -> f64 {
        if (self.p * l).abs() <= SERIES_RADIUS {
            let p = self.p;
            return self.series.weighted(l, |k| p.powi(k as i32 - 1) - 1.0);
        }
        log_add_exp(self.log_lam, self.log_rest + self.p * l) / self.p
            - log_add_exp(self.log_lam, self.log_rest + l)
    }

    fn sup(&self) -> f64 {
        self.ordinate(W_MIN / self.scale)
    }

    /// `log x` at which the ordinate equals `v`.
    fn invert(&self, v: f64) -> Option<f64> {
        let sup = self.sup();
        if !(v > 0.0 && v < sup) {
            return None;
        }
        let (mut lo, mut hi) = (W_MIN, 0.0_f64);
        let (mut e_lo, mut e_hi) = (sup - v, -v);
        for _ in 0..MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if !(mid > lo && mid < hi) {
                break;
            }
            let e = self.ordinate(mid / self.scale) - v;
            if e > 0.0 {
                lo = mid;
                e_lo = e;
            } else if e < 0.0 {
                hi = mid;
                e_hi = e;
            } else {
                return Some(mid / self.scale);
            }
        }
        let w = if e_lo.abs() <= e_hi.abs() { lo } else { hi };
        Some(w / self.scale)
    }
}

fn scaled_residual(lam: BiasParam, pair: &ExponentPair, x: f64, y: f64) -> f64 {
    let (a, b) = residual_biased(lam, pair, UnitSquarePoint { x, y });
    let l = lam.value();
    let ax = crate::formulas::biased_abscissa_raw(l, pair.p(), x);
    let ox = crate::formulas::biased_ordinate_raw(l, pair.p(), x);
    (a.abs() / ax.abs().max(1.0)).max(b.abs() / ox.abs().max(1.0))
}

/// Solves the biased system and returns `sigma_{p,q}(lambda)`.
///
/// `q = p*` uses the sinh closed form. Otherwise the two curves
/// `h_lambda(p, .)` and `h_lambda(q, .)` are matched at a common ordinate
/// by monotone inversion, and sign changes of the log-abscissa gap are
/// bracketed on a geometric grid and bisected. Among crossings with
/// `x < y` the smallest `sigma` is returned.
pub fn solve_biased(lam: BiasParam, pair: &ExponentPair, tol: f64) -> Result<BiasedSolution> {
    check_tol(tol)?;
    if lam.is_symmetric() {
        return Err(domain("lambda", lam.value(), "0 < lambda < 1/2"));
    }
    let l = lam.value();
    let (p, q) = (pair.p(), pair.q());
    let sol = if pair.is_conjugate() {
        let c = lam.odds();
        let x = c.powf(2.0 / p);
        let y = c.powf(2.0 / pair.p_star());
        let sigma = sigma_pp_star(lam, p)?.value;
        BiasedSolution {
            x,
            y,
            sigma,
            residual_max: scaled_residual(lam, pair, x, y),
            method: BiasedMethod::ClosedFormSinh,
            roots: 1,
        }
    } else {
        let bp = Branch::new(l, p);
        let bq = Branch::new(l, q);
        let v_hi = bp.sup().min(bq.sup()) * (1.0 - 1e-9);
        let gap = |v: f64| match (bp.invert(v), bq.invert(v)) {
            (Some(lx), Some(ly)) => (bp.log_abscissa(lx) - bq.log_abscissa(ly)) / (v * v.sqrt()),
            _ => f64::NAN,
        };
        let sc = scan(V_FLOOR, v_hi, N_SCAN, gap);
        let mut best: Option<BiasedSolution> = None;
        let mut count = 0;
        for b in sc.brackets() {
            let (v, _) = refine(b, gap);
            let (Some(lx), Some(ly)) = (bp.invert(v), bq.invert(v)) else {
                continue;
            };
            let (x, y) = (lx.exp(), ly.exp());
            if !(x < y && x > 0.0 && y < 1.0) {
                continue;
            }
            count += 1;
            let sigma = biased_ratio_raw(lam, x, y);
            if best.is_none_or(|s| sigma < s.sigma) {
                best = Some(BiasedSolution {
                    x,
                    y,
                    sigma,
                    residual_max: scaled_residual(lam, pair, x, y),
                    method: BiasedMethod::CurveIntersection,
                    roots: 0,
                });
            }
        }
        let Some(mut sol) = best else {
            return Err(Error::Bracket {
                samples: N_SCAN,
                v_lo: V_FLOOR,
                v_hi,
                dump: sc.dump(),
            });
        };
        sol.roots = count;
        sol
    };
    if !(sol.residual_max < tol) {
        return Err(Error::Residual {
            residual: sol.residual_max,
            tol,
        });
    }
    Ok(sol)
}
