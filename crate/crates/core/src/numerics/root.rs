//! Bracketed root finding: bisection down to a narrow bracket, then a
//! secant polish that never leaves the bracket.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub x: f64,
    pub f_x: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    /// Absolute width at which the bracket is accepted.
    pub x_tol: f64,
    /// Relative bracket width at which bisection hands over to the secant phase.
    pub polish_width: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            x_tol: 1e-15,
            polish_width: 1e-4,
            max_iter: 400,
        }
    }
}

/// Finds a root of `f` on `[lo, hi]`. `f(lo)` and `f(hi)` must not share a sign.
pub fn bisect_secant<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    cfg: RootConfig,
) -> Result<Root> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            f_x: fa,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            f_x: fb,
            iterations: 0,
        });
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            what: "bisect_secant",
            lo: a,
            hi: b,
        });
    }

    let mut iterations = 0;
    while iterations < cfg.max_iter {
        let width = b - a;
        if width <= cfg.x_tol || width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
        iterations += 1;
        let polishing = width <= cfg.polish_width * a.abs().max(b.abs()).max(cfg.x_tol);
        let mid = 0.5 * (a + b);
        let x = if polishing {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a && s < b {
                s
            } else {
                mid
            }
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(Root {
                x,
                f_x: fx,
                iterations,
            });
        }
        if !fx.is_finite() {
            return Err(Error::Numeric {
                what: "bisect_secant (non-finite f)",
                residual: fx,
            });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // A secant step that lands next to an endpoint shrinks the bracket
        // only from one side; force a bisection to keep both sides moving.
        if polishing && (b - a) > 0.5 * width {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return Ok(Root {
                    x: m,
                    f_x: fm,
                    iterations,
                });
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
    }
    let (x, f_x) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    if b - a > cfg.x_tol.max(8.0 * f64::EPSILON * a.abs().max(b.abs())) {
        return Err(Error::Numeric {
            what: "bisect_secant (iteration limit)",
            residual: f_x.abs(),
        });
    }
    Ok(Root { x, f_x, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let r = bisect_secant(|x| x * x - 2.0, 0.0, 2.0, RootConfig::default()).unwrap();
        assert!((r.x - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r.iterations < 60);
    }

    #[test]
    fn reports_missing_bracket() {
        let e = bisect_secant(|x| x * x + 1.0, -1.0, 1.0, RootConfig::default()).unwrap_err();
        assert!(matches!(e, Error::Bracket { .. }));
    }

    #[test]
    fn flat_transcendental() {
        // x = tanh(2x) has its positive root near 0.9575
        let r = bisect_secant(
            |x| x - libm::tanh(2.0 * x),
            1e-9,
            1.0,
            RootConfig::default(),
        )
        .unwrap();
        assert!((r.x - libm::tanh(2.0 * r.x)).abs() < 1e-15);
    }
}
