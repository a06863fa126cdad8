//! Bracketing scans over a geometric ordinate grid and bracket refinement.

use crate::par;

/// Maximum number of bisection steps for any one-dimensional root search.
pub(crate) const MAX_ITER: usize = 4096;

pub(crate) struct Scan {
    pub v: Vec<f64>,
    pub g: Vec<f64>,
}

/// `n >= 2` geometrically spaced points from `lo` to `hi`, endpoints exact.
pub(crate) fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln();
    let mut v: Vec<f64> = (0..n)
        .map(|i| lo * (ratio * i as f64 / (n - 1) as f64).exp())
        .collect();
    v[0] = lo;
    v[n - 1] = hi;
    v
}

pub(crate) fn scan<F>(lo: f64, hi: f64, n: usize, gap: F) -> Scan
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let v = geometric_grid(lo, hi, n);
    let g = par::map_range(n, |i| gap(v[i]));
    Scan { v, g }
}

/// A sign change between `lo` and `hi`, or an exact zero when `lo == hi`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bracket {
    pub lo: f64,
    pub g_lo: f64,
    pub hi: f64,
    pub g_hi: f64,
}

impl Scan {
    pub fn brackets(&self) -> Vec<Bracket> {
        let finite: Vec<usize> = (0..self.v.len())
            .filter(|&i| self.g[i].is_finite())
            .collect();
        let mut out = Vec::new();
        for (k, &i) in finite.iter().enumerate() {
            let (v, g) = (self.v[i], self.g[i]);
            if g == 0.0 {
                out.push(Bracket {
                    lo: v,
                    g_lo: g,
                    hi: v,
                    g_hi: g,
                });
                continue;
            }
            if let Some(&j) = finite.get(k + 1) {
                let gj = self.g[j];
                if gj != 0.0 && (g < 0.0) != (gj < 0.0) {
                    out.push(Bracket {
                        lo: v,
                        g_lo: g,
                        hi: self.v[j],
                        g_hi: gj,
                    });
                }
            }
        }
        out
    }

    /// Seventeen evenly strided `v:gap` samples for error messages.
    pub fn dump(&self) -> String {
        let n = self.v.len();
        let step = (n / 16).max(1);
        (0..n)
            .step_by(step)
            .chain(std::iter::once(n - 1))
            .map(|i| format!("{:.3e}:{:.3e}", self.v[i], self.g[i]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Bisects a bracket at geometric midpoints until the endpoints are adjacent
/// in floating point, then applies one secant step between the final
/// endpoints. Returns the abscissa with the smallest `|gap|` seen.
pub(crate) fn refine<F>(b: Bracket, gap: F) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    if b.lo == b.hi {
        return (b.lo, b.g_lo);
    }
    let (mut lo, mut g_lo, mut hi, mut g_hi) = (b.lo, b.g_lo, b.hi, b.g_hi);
    for _ in 0..MAX_ITER {
        let mut mid = (lo * hi).sqrt();
        if !(mid > lo && mid < hi) {
            mid = 0.5 * (lo + hi);
        }
        if !(mid > lo && mid < hi) {
            break;
        }
        let g = gap(mid);
        if g == 0.0 {
            return (mid, 0.0);
        }
        if !g.is_finite() {
            break;
        }
        if (g < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    let mut best = if g_lo.abs() <= g_hi.abs() {
        (lo, g_lo)
    } else {
        (hi, g_hi)
    };
    if g_hi != g_lo {
        let sec = lo - g_lo * (hi - lo) / (g_hi - g_lo);
        if sec > lo && sec < hi {
            let g = gap(sec);
            if g.abs() < best.1.abs() {
                best = (sec, g);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_and_spacing() {
        let v = geometric_grid(1e-12, 0.5, 2048);
        assert_eq!(v.len(), 2048);
        assert_eq!(v[0], 1e-12);
        assert_eq!(v[2047], 0.5);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn finds_all_sign_changes() {
        let s = scan(1e-3, 1.0, 512, |v| (v - 0.01) * (v - 0.2));
        let b = s.brackets();
        assert_eq!(b.len(), 2);
        let (r0, _) = refine(b[0], |v| (v - 0.01) * (v - 0.2));
        let (r1, _) = refine(b[1], |v| (v - 0.01) * (v - 0.2));
        assert!((r0 - 0.01).abs() < 1e-16);
        assert!((r1 - 0.2).abs() < 1e-15);
    }
}
