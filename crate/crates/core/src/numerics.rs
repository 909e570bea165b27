//! Shared numerical kernels: panel-doubling Gauss-Legendre quadrature with an
//! endpoint substitution exact for square-root turning-point behavior, a
//! bisection-secant root finder, and small scan/minimize helpers.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Value and error estimate of a converged quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// |last refinement difference|: bounds the error of `value` for the
    /// geometrically converging integrands this crate produces.
    pub error_estimate: f64,
}

const GL_ORDER: usize = 32;
/// Refinement cap: up to 2^14 panels of 32 points each.
const MAX_PANEL_DOUBLINGS: u32 = 14;
/// Absolute convergence floor so exactly-zero integrals terminate.
const ABS_FLOOR: f64 = 1e-280;

/// Nodes and weights of the 32-point Gauss-Legendre rule on [-1, 1],
/// computed once by Newton iteration on the Legendre recurrence.
fn gl32() -> &'static [(f64, f64); GL_ORDER] {
    static TABLE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = [(0.0, 0.0); GL_ORDER];
        for (k, slot) in out.iter_mut().enumerate() {
            // Standard asymptotic initial guess for the k-th root.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n(x) and P_n'(x) via the three-term recurrence.
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

/// Composite 32-point Gauss-Legendre over `panels` equal panels of [a, b].
pub(crate) fn composite_gl(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: u32) -> f64 {
    let table = gl32();
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for &(x, w) in table.iter() {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Integrate `f` over [a, b], doubling the panel count until two successive
/// refinements agree to `rel_tol`. Gauss-Legendre nodes are interior, so `f`
/// is never evaluated at the endpoints.
pub fn adaptive_integral(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let mut prev = composite_gl(&f, a, b, 1);
    let mut estimate = f64::INFINITY;
    for doubling in 1..=MAX_PANEL_DOUBLINGS {
        let value = composite_gl(&f, a, b, 1 << doubling);
        estimate = (value - prev).abs();
        if estimate <= rel_tol * value.abs() + ABS_FLOOR {
            return Ok(QuadResult {
                value,
                error_estimate: estimate,
            });
        }
        prev = value;
    }
    Err(Error::QuadratureNonConvergence { estimate })
}

/// Integral of sqrt(max(p2(r), 0)) over [a, b] where p2 has (at most) simple
/// zeros at the endpoints. The substitution r = a + (b-a) sin^2(t) makes the
/// transformed integrand analytic at sqrt-type endpoints (and keeps an
/// integrable r^(-1/2) divergence harmless when a = 0), so plain panels
/// converge at full order. Uniform quadrature directly in r would stall at
/// order 1/2 here.
pub fn sqrt_well_integral(
    p2: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    if !(b >= a) {
        return Err(Error::Domain(format!(
            "inverted integration range [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let width = b - a;
    let g = move |t: f64| {
        let s = t.sin();
        let r = a + width * s * s;
        let v = p2(r).max(0.0).sqrt();
        // dr/dt = (b - a) sin(2t)
        v * width * (2.0 * t).sin()
    };
    adaptive_integral(g, 0.0, std::f64::consts::FRAC_PI_2, rel_tol)
}

/// Find a root of `f` inside a sign-changing bracket by bisection with
/// secant acceleration: the secant step is taken whenever it falls strictly
/// inside the current bracket, otherwise the midpoint is. Converges to
/// `rel_tol` relative width.
pub fn bisect_secant<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Domain(format!(
            "root bracket [{lo}, {hi}] has no sign change ({f_lo} vs {f_hi})"
        )));
    }
    for _ in 0..max_iter {
        let width = hi - lo;
        if width <= rel_tol * lo.abs().max(hi.abs()) + f64::MIN_POSITIVE {
            return Ok(0.5 * (lo + hi));
        }
        let secant = lo - f_lo * width / (f_hi - f_lo);
        let margin = 0.01 * width;
        let x = if secant > lo + margin && secant < hi - margin {
            secant
        } else {
            0.5 * (lo + hi)
        };
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    Err(Error::NonConvergence(format!(
        "root refinement exhausted {max_iter} iterations on [{lo}, {hi}]"
    )))
}

/// Golden-section minimum of a unimodal `f` on [a, b].
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= rel_tol * (a.abs().max(b.abs()) + 1e-300) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Logarithmically spaced grid over [lo, hi], inclusive of both ends.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Sign-change brackets of `f` across a grid of abscissas.
pub fn sign_change_brackets(f: &impl Fn(f64) -> f64, grid: &[f64]) -> Vec<(f64, f64, f64, f64)> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in grid {
        let fx = f(x);
        if let Some((px, pfx)) = prev {
            if pfx.signum() != fx.signum() && pfx != 0.0 {
                out.push((px, x, pfx, fx));
            }
        }
        prev = Some((x, fx));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_table_integrates_polynomials_exactly() {
        // Degree-63 exactness on one panel.
        let f = |x: f64| 7.0 * x.powi(10) - 3.0 * x.powi(5) + x - 4.0;
        let got = composite_gl(&f, -1.0, 1.0, 1);
        // integral of 7x^10 over [-1,1] = 14/11; odd terms vanish; -4 -> -8.
        assert_abs_diff_eq!(got, 14.0 / 11.0 - 8.0, epsilon = 1e-13);
    }

    #[test]
    fn adaptive_integral_matches_smooth_closed_forms() {
        let r = adaptive_integral(|x: f64| x.sin(), 0.0, PI, 1e-13).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-12);
        assert!((r.value - 2.0).abs() <= r.error_estimate + 1e-14);

        let r = adaptive_integral(|x: f64| (-x).exp(), 0.0, 30.0, 1e-13).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 - (-30.0_f64).exp(), epsilon = 1e-11);
    }

    #[test]
    fn sqrt_well_handles_simple_endpoint_zeros_at_full_accuracy() {
        // p2(r) = (r - 1)(3 - r): half-circle-like well with area pi/2 * 1^2:
        // integral of sqrt((r-1)(3-r)) dr over [1,3] = pi/2.
        let r = sqrt_well_integral(|x| (x - 1.0) * (3.0 - x), 1.0, 3.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, PI / 2.0, epsilon = 1e-11);
    }

    #[test]
    fn sqrt_well_handles_an_integrable_inverse_sqrt_at_zero() {
        // p2(r) = 1/r - 1 on [0, 1]: integral of sqrt(1/r - 1) = pi/2.
        let r = sqrt_well_integral(|x| 1.0 / x - 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, PI / 2.0, epsilon = 1e-11);
    }

    #[test]
    fn sqrt_well_degenerate_interval_is_zero() {
        let r = sqrt_well_integral(|_| 1.0, 2.0, 2.0, 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn quadrature_error_shrinks_as_tolerance_tightens() {
        let exact = PI / 2.0;
        let mut last = f64::INFINITY;
        for tol in [1e-2, 1e-4, 1e-6, 1e-8, 1e-10] {
            let r = sqrt_well_integral(|x| (x - 1.0) * (3.0 - x), 1.0, 3.0, tol).unwrap();
            let err = (r.value - exact).abs();
            assert!(
                err < last || err <= 1e-12,
                "error did not shrink: tol {tol} gave {err} after {last}"
            );
            last = err;
        }
    }

    #[test]
    fn bisect_secant_finds_roots_to_relative_tolerance() {
        let f = |x: f64| -> Result<f64> { Ok(x * x - 2.0) };
        let root = bisect_secant(f, 0.0, 2.0, -2.0, 2.0, 1e-14, 200).unwrap();
        assert_abs_diff_eq!(root, 2.0_f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn bisect_secant_rejects_bracket_without_sign_change() {
        let f = |x: f64| -> Result<f64> { Ok(x * x + 1.0) };
        assert!(bisect_secant(f, -1.0, 1.0, 2.0, 2.0, 1e-12, 100).is_err());
    }

    #[test]
    fn golden_min_locates_a_quadratic_minimum() {
        let (x, fx) = golden_min(|x| (x - 1.3) * (x - 1.3) + 0.7, -4.0, 9.0, 1e-12);
        assert_abs_diff_eq!(x, 1.3, epsilon = 1e-6);
        assert_abs_diff_eq!(fx, 0.7, epsilon = 1e-12);
    }

    #[test]
    fn sign_change_scan_brackets_every_crossing() {
        let f = |x: f64| (x - 1.0) * (x - 10.0) * (x - 100.0);
        let grid = log_grid(0.1, 1e4, 400);
        let brackets = sign_change_brackets(&f, &grid);
        assert_eq!(brackets.len(), 3);
        for (lo, hi, _, _) in brackets {
            assert!(lo < hi);
        }
    }
}
