//! Globally adaptive quadrature on finite intervals.
//!
//! Each interval is estimated with a 15-point Gauss-Legendre rule; the local
//! error is taken as the difference against the two-half refinement. Intervals
//! are split worst-first until the summed error estimate meets the tolerance.
//! Nodes and weights are generated at startup by Newton iteration on the
//! Legendre polynomials, so there are no hand-typed tables to mistype.

use crate::error::{Error, Result};
use std::sync::OnceLock;

const GAUSS_ORDER: usize = 15;

/// Tolerances and budget for one integration call.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Relative tolerance on the whole integral.
    pub rel_tol: f64,
    /// Absolute floor; protects integrals whose true value is near zero.
    pub abs_tol: f64,
    /// Maximum number of subintervals before giving up.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadOptions {
            rel_tol,
            ..QuadOptions::default()
        }
    }
}

/// Value plus an error estimate that over-counts (sum of local estimates).
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

fn legendre_nodes() -> &'static [(f64, f64); GAUSS_ORDER] {
    static NODES: OnceLock<[(f64, f64); GAUSS_ORDER]> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GAUSS_ORDER;
        let mut out = [(0.0, 0.0); GAUSS_ORDER];
        for (i, slot) in out.iter_mut().enumerate() {
            // Chebyshev initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

/// Evaluates (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for &(x, w) in legendre_nodes() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (Segment, Segment, f64) {
    let coarse = gauss(f, a, b);
    let mid = 0.5 * (a + b);
    let left = gauss(f, a, mid);
    let right = gauss(f, mid, b);
    let diff = (left + right - coarse).abs();
    // each half inherits half of the observed discrepancy
    let seg = |lo, hi, v| Segment {
        a: lo,
        b: hi,
        value: v,
        err: 0.5 * diff,
    };
    (seg(a, mid, left), seg(mid, b, right), diff)
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("bounds", "quadrature bounds must be finite"));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            abs_error: 0.0,
            intervals: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let (s1, s2, _) = refine(&f, lo, hi);
    let mut segments = vec![s1, s2];

    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let err: f64 = segments.iter().map(|s| s.err).sum();
        let target = (opts.rel_tol * total.abs()).max(opts.abs_tol);
        if err <= target {
            return Ok(Quadrature {
                value: sign * total,
                abs_error: err,
                intervals: segments.len(),
            });
        }
        // split the worst segment; ties broken by the left endpoint for determinism
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|(_, s), (_, t)| s.err.total_cmp(&t.err).then(t.a.total_cmp(&s.a)))
            .map(|(i, _)| i)
            .expect("non-empty segment list");
        if segments.len() >= opts.max_intervals {
            let s = segments[worst];
            return Err(Error::Quadrature {
                a: s.a,
                b: s.b,
                err: s.err,
            });
        }
        let s = segments.swap_remove(worst);
        let (left, right, _) = refine(&f, s.a, s.b);
        segments.push(left);
        segments.push(right);
    }
}
