//! Composite Gauss-Legendre quadrature on `[-1, 1]` with panel doubling.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

/// Nodes per panel.
const ORDER: usize = 20;
const START_PANELS: usize = 4;
/// Total point budget per integral.
pub(crate) const MAX_POINTS: usize = 1 << 14;
/// Agreement required between the two finest refinements.
pub(crate) const REL_TOL: f64 = 1e-10;

#[derive(Debug)]
pub(crate) struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the Legendre recurrence; symmetric pairs are filled
    /// from the positive root.
    pub(crate) fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(ORDER))
}

/// Value of a composite rule together with the same rule applied to `|f|`.
#[derive(Debug, Clone, Copy)]
struct Composite {
    value: Complex64,
    mass: f64,
}

fn composite<F: Fn(f64) -> Complex64>(rule: &GaussLegendre, panels: usize, f: &F) -> Composite {
    let half = 1.0 / panels as f64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for p in 0..panels {
        let mid = -1.0 + (2 * p + 1) as f64 * half;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let v = f(mid + half * x);
            value += v * w;
            mass += v.norm() * w;
        }
    }
    Composite {
        value: value * half,
        mass: mass * half,
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Outcome {
    pub value: Complex64,
    /// Discrepancy of the two finest refinements, relative to
    /// `max(|value|, integral of |f|)`.
    pub rel_change: f64,
    pub converged: bool,
}

/// Integrates `f` over `[-1, 1]`, doubling the panel count until two
/// successive refinements agree to [`REL_TOL`] or the point budget runs out.
pub(crate) fn integrate<F: Fn(f64) -> Complex64>(f: F) -> Outcome {
    let rule = rule();
    let mut panels = START_PANELS;
    let mut prev = composite(rule, panels, &f);
    loop {
        panels *= 2;
        let next = composite(rule, panels, &f);
        let scale = next.value.norm().max(next.mass);
        let diff = (next.value - prev.value).norm();
        let rel_change = if scale > 0.0 { diff / scale } else { 0.0 };
        let converged = rel_change <= REL_TOL;
        if converged || panels * 2 * rule.len() > MAX_POINTS {
            return Outcome {
                value: next.value,
                rel_change,
                converged,
            };
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_low_degree_polynomials() {
        let rule = GaussLegendre::new(ORDER);
        for degree in 0..(2 * ORDER) {
            let got: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| w * x.powi(degree as i32))
                .sum();
            let exact = if degree % 2 == 1 {
                0.0
            } else {
                2.0 / (degree as f64 + 1.0)
            };
            assert!(
                (got - exact).abs() < 1e-14,
                "degree {degree}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn small_rules_match_tabulated_nodes() {
        let r3 = GaussLegendre::new(3);
        assert!((r3.nodes[2] - 0.7745966692414834).abs() < 1e-15);
        assert!((r3.weights[1] - 0.8888888888888888).abs() < 1e-15);
        let r4 = GaussLegendre::new(4);
        assert!((r4.nodes[3] - 0.8611363115940526).abs() < 1e-15);
        assert!((r4.weights[0] - 0.3478548451374538).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_integral() {
        // int_{-1}^{1} e^{-i w x} dx = 2 sin(w) / w
        let w = 40.0;
        let out = integrate(|x| Complex64::new(0.0, -w * x).exp());
        assert!(out.converged);
        assert!((out.value - Complex64::new(2.0 * w.sin() / w, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // A jump at an irrational point defeats the smooth-integrand assumption.
        let out = integrate(|x| Complex64::new(if x < 0.123_456_789 { 1.0 } else { 0.0 }, 0.0));
        assert!(!out.converged);
        assert!(out.rel_change > REL_TOL);
    }
}
