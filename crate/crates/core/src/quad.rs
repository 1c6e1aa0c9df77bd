//! Composite Gauss-Legendre quadrature with runtime-computed nodes.
//!
//! The grid engine certifies its tail cells against a smooth integrand with
//! this rule; tests also use it as an integration oracle for the exact
//! engine. Nodes and weights for the fixed 16-point rule are found once by
//! Newton iteration on the Legendre recurrence, so no coefficient tables are
//! embedded.

use std::sync::OnceLock;

const ORDER: usize = 16;

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// Nodes and weights of the 16-point rule on `[-1, 1]`.
fn rule() -> &'static [(f64, f64); ORDER] {
    static RULE: OnceLock<[(f64, f64); ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut out = [(0.0, 0.0); ORDER];
        for (i, slot) in out.iter_mut().enumerate() {
            // Chebyshev-angle initial guess, then Newton to full precision.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (ORDER as f64 + 0.5)).cos();
            let mut deriv = 1.0;
            for _ in 0..64 {
                let (p, d) = legendre(ORDER, x);
                deriv = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
            *slot = (x, w);
        }
        out
    })
}

/// Integrates `f` over `[a, b]` with `panels` equal subintervals, 16 Gauss
/// nodes per panel. Exact for polynomials of degree up to 31 per panel.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels > 0, "at least one panel");
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for &(x, w) in rule() {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}
