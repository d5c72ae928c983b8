//! Bracketed root finding and the two characteristic roots: the concurrence
//! `C_f` where `ΔE = E`, and the dimer temperature `τ_f` where the thermal
//! concurrence reaches `C_f`.

use thiserror::Error;

use crate::measures::{entanglement, fluctuation, Concurrence};
use crate::thermal::{entanglement_temperature, fluctuation_equal_temperature};

pub const MAX_ITERATIONS: usize = 200;

pub const DEFAULT_XTOL: f64 = 1e-12;
pub const DEFAULT_FTOL: f64 = 1e-12;

/// Bracket searched first for `C_f`, then the fallback.
const C_F_BRACKET: (f64, f64) = (0.5, 0.99);
const C_F_FALLBACK: (f64, f64) = (0.01, 0.999);

/// `|ΔE(C_f) − E(C_f)|` bound checked on every solve.
const CROSSING_CHECK: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:.3e}, f(hi) = {f_hi:.3e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("invalid bracket [{lo}, {hi}]")]
    BadBracket { lo: f64, hi: f64 },
    #[error(
        "no convergence after {MAX_ITERATIONS} iterations (last x = {last}, f = {residual:.3e})"
    )]
    MaxIterations { last: f64, residual: f64 },
    #[error("root {root} fails the crossing check: |dE - E| = {gap:.3e}")]
    CrossingCheck { root: f64, gap: f64 },
}

/// A located root with its residual and final bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection whenever they leave the bracket or stall.
///
/// Stops when `|f(x)| ≤ ftol` or the bracket is narrower than `xtol`.
pub fn find_root<F>(f: F, lo: f64, hi: f64, xtol: f64, ftol: f64) -> Result<RootResult, SolverError>
where
    F: Fn(f64) -> f64,
{
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(SolverError::BadBracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(RootResult {
            value: a,
            residual: 0.0,
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    if fb == 0.0 {
        return Ok(RootResult {
            value: b,
            residual: 0.0,
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    if fa.signum() == fb.signum() {
        return Err(SolverError::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for iteration in 1..=MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= ftol {
            return Ok(RootResult {
                value: b,
                residual: fb,
                iterations: iteration,
                bracket: (b.min(c), b.max(c)),
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(SolverError::MaxIterations {
        last: b,
        residual: fb,
    })
}

/// Residual of the defining equation for `C_f`:
/// `(C + √(1−C²))·ln[(1 + √(1−C²))/C] − ln(2/C)`.
pub fn crossing_equation(c: f64) -> f64 {
    let s = (1.0 - c * c).max(0.0).sqrt();
    (c + s) * ((1.0 + s) / c).ln() - (2.0 / c).ln()
}

/// The concurrence at which `ΔE = E`, about 0.82724.
pub fn solve_c_f(xtol: f64) -> Result<RootResult, SolverError> {
    let (lo, hi) = C_F_BRACKET;
    let root = match find_root(crossing_equation, lo, hi, xtol, DEFAULT_FTOL) {
        Err(SolverError::NoSignChange { .. }) => {
            let (lo, hi) = C_F_FALLBACK;
            find_root(crossing_equation, lo, hi, xtol, DEFAULT_FTOL)?
        }
        other => other?,
    };
    let c = Concurrence::saturating(root.value);
    let gap = (fluctuation(c) - entanglement(c)).abs();
    if gap > CROSSING_CHECK {
        return Err(SolverError::CrossingCheck {
            root: root.value,
            gap,
        });
    }
    Ok(root)
}

/// Fluctuation-crossing temperature of the `|J| = 1` dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingTemperature {
    pub tau_f: f64,
    pub tau_f_over_tau_e: f64,
    pub c_f: RootResult,
}

pub fn solve_tau_f() -> Result<CrossingTemperature, SolverError> {
    let c_f = solve_c_f(DEFAULT_XTOL)?;
    let conc = Concurrence::saturating(c_f.value);
    let tau_f = fluctuation_equal_temperature(-1.0, conc).expect("c_f lies inside (0, 1)");
    let tau_e = entanglement_temperature(-1.0).expect("nonzero coupling");
    Ok(CrossingTemperature {
        tau_f,
        tau_f_over_tau_e: tau_f / tau_e,
        c_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::{thermal_concurrence, DimerParams};

    // 30-digit reference values.
    const C_F: f64 = 0.827_240_388_397_884_3;
    const TAU_F: f64 = 0.578_490_567_429_056_1;
    const TAU_RATIO: f64 = 0.317_768_423_128_074_4;

    #[test]
    fn linear_and_sqrt2() {
        let r = find_root(|x| x - 0.5, 0.0, 1.0, 1e-12, 1e-14).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let r = find_root(|x| x * x - 2.0, 1.0, 2.0, 1e-12, 1e-14).unwrap();
        assert!((r.value - std::f64::consts::SQRT_2).abs() < 1e-10);
        assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 1e-12),
            Err(SolverError::NoSignChange { .. })
        ));
        assert!(matches!(
            find_root(|x| x, 1.0, -1.0, 1e-12, 1e-12),
            Err(SolverError::BadBracket { .. })
        ));
        let r = find_root(|x| x, 0.0, 1.0, 1e-12, 1e-12).unwrap();
        assert_eq!((r.value, r.iterations), (0.0, 0));
    }

    #[test]
    fn max_iterations_on_discontinuity() {
        // sign change without a root; Brent shrinks the bracket to its floor
        let r = find_root(|x| if x < 0.3 { -1.0 } else { 1.0 }, 0.0, 1.0, 0.0, 0.0);
        match r {
            Ok(r) => assert!((r.value - 0.3).abs() < 1e-12 && r.residual.abs() == 1.0),
            Err(SolverError::MaxIterations { last, .. }) => assert!((last - 0.3).abs() < 1e-9),
            Err(other) => panic!("{other:?}"),
        }
    }

    #[test]
    fn residual_contract_on_monotone_battery() {
        type Case = (Box<dyn Fn(f64) -> f64>, f64, f64);
        let battery: Vec<Case> = vec![
            (Box::new(|x| x - 0.25), 0.0, 1.0),
            (Box::new(|x| x.powi(3) - 0.1), 0.0, 1.0),
            (Box::new(|x| x.exp() - 2.0), 0.0, 1.0),
            (Box::new(|x| x.ln() + 0.5), 0.1, 2.0),
            (Box::new(|x| x.atan() - 0.3), -1.0, 1.0),
            (Box::new(|x| x.tanh() - 0.9), 0.0, 5.0),
            (Box::new(|x| x.powi(7) - 1e-3), 0.0, 1.0),
            (Box::new(|x| (x * x).sqrt() * x - 0.5), 0.0, 1.0),
            (Box::new(|x| 1.0 - 1.0 / x), 0.2, 3.0),
            (Box::new(|x| x + x.sin() - 1.0), 0.0, 2.0),
        ];
        for (f, lo, hi) in &battery {
            let r = find_root(f, *lo, *hi, 1e-13, 1e-12).unwrap();
            assert!(
                r.residual.abs() <= 1e-12 || r.bracket.1 - r.bracket.0 <= 1e-13,
                "{r:?}"
            );
            assert_eq!(r.residual, f(r.value));
            assert!(lo <= &r.value && &r.value <= hi);
        }
    }

    #[test]
    fn c_f_value_and_checks() {
        let r = solve_c_f(DEFAULT_XTOL).unwrap();
        assert!((r.value - 0.82724).abs() < 5e-5);
        assert!((r.value - C_F).abs() < 1e-12);
        assert!(r.residual.abs() <= 1e-12);
        let c = Concurrence::new(r.value).unwrap();
        assert!((fluctuation(c) - entanglement(c)).abs() <= 1e-10);
    }

    #[test]
    fn c_f_matches_direct_crossing_search() {
        let direct = find_root(
            |x| {
                let c = Concurrence::saturating(x);
                fluctuation(c) - entanglement(c)
            },
            0.5,
            0.99,
            1e-14,
            0.0,
        )
        .unwrap();
        let r = solve_c_f(DEFAULT_XTOL).unwrap();
        assert!((direct.value - r.value).abs() <= 1e-9);
    }

    #[test]
    fn c_f_is_deterministic() {
        let a = solve_c_f(DEFAULT_XTOL).unwrap();
        let b = solve_c_f(DEFAULT_XTOL).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a, b);
    }

    #[test]
    fn tau_f_values() {
        let t = solve_tau_f().unwrap();
        assert!((t.tau_f - 0.57849).abs() < 5e-5);
        assert!((t.tau_f_over_tau_e - 0.31776).abs() < 5e-5);
        assert!((t.tau_f - TAU_F).abs() < 1e-11);
        assert!((t.tau_f_over_tau_e - TAU_RATIO).abs() < 1e-11);
        let c = thermal_concurrence(&DimerParams::new(-1.0, t.tau_f).unwrap());
        assert!((c.value() - t.c_f.value).abs() <= 1e-9);
    }
}
