//! Truncation-error certificates and auxiliary inequalities.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::corpus::CorpusFunction;
use crate::error::{Error, Result};
use crate::kernels::{sinc1_real, ComplexPoint};
use crate::lattice::{enum_window, lattice_coords, LatticeSpacing, MultiIndex, TruncationWindow};
use crate::sampleio::{Grid, SampleSet};
use crate::summation::sum_real;

/// `(1 + 1/(r - 1))^n`, a uniform bound on `sum_m |sincn(a x - m)|^r`.
pub fn kernel_sum_bound(r: f64, n: usize) -> Result<f64> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidExponent(r));
    }
    if n == 0 {
        return Err(Error::DimensionOutOfRange(0));
    }
    Ok((1.0 + 1.0 / (r - 1.0)).powi(n as i32))
}

/// `sum_{|m| <= radius} |sinc1(a x - m)|^r`.
pub fn kernel_power_sum(a: f64, x: f64, r: f64, radius: u32) -> f64 {
    let t = a * x;
    let radius = i64::from(radius);
    sum_real((-radius..=radius).map(|m| sinc1_real(t - m as f64).abs().powf(r)))
}

/// `(sum |v|^p)^{1/p}`, scaled by the largest entry so that neither tiny nor
/// huge samples under- or overflow.
fn lp_norm(values: impl Iterator<Item = f64> + Clone, p: f64) -> f64 {
    let peak = values.clone().fold(0.0_f64, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return peak;
    }
    peak * sum_real(values.map(|v| (v / peak).powf(p))).powf(1.0 / p)
}

/// `(sum over stored nodes |d^k f(u)|^p)^{1/p}`.
pub fn lp_sample_norm(samples: &SampleSet, k: &MultiIndex, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let values: Vec<f64> = samples
        .channel_values(k)?
        .iter()
        .map(|v| v.norm())
        .collect();
    Ok(lp_norm(values.iter().copied(), p))
}

/// Hölder certificate for the tail `S_{k,tau}(x)` of one channel of the
/// derivative series.
///
/// The kernel factor is a maximum over the probe grid, not over all of `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBoundReport {
    pub k: MultiIndex,
    pub tau_inner: TruncationWindow,
    pub p1: f64,
    pub q1: f64,
    pub sample_tail_norm: f64,
    pub kernel_factor: f64,
    pub bound: f64,
    pub probe_points: usize,
}

impl fmt::Display for TailBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau: Vec<String> = self.tau_inner.radii().iter().map(u32::to_string).collect();
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "tau_inner {}", tau.join(" "))?;
        writeln!(f, "p1 {:.16e}", self.p1)?;
        writeln!(f, "q1 {:.16e}", self.q1)?;
        writeln!(f, "sample_tail_norm {:.16e}", self.sample_tail_norm)?;
        writeln!(f, "kernel_factor {:.16e}", self.kernel_factor)?;
        writeln!(f, "kernel_sup probe-grid")?;
        writeln!(f, "probe_points {}", self.probe_points)?;
        writeln!(f, "bound {:.16e}", self.bound)
    }
}

/// Nodes of the stored window lying outside `tau_inner`.
fn outside_nodes(samples: &SampleSet, tau_inner: &TruncationWindow) -> Result<Vec<Vec<i64>>> {
    Ok(enum_window(samples.tau())?
        .into_iter()
        .filter(|m| !tau_inner.contains(m))
        .collect())
}

/// Bounds `sup_x |sum_{u outside tau_inner} d^k f(u) (x - u)^k sincn(sigma (x - u) / 2pi)^2|`
/// over the probe grid by `||d^k f||_{l^p1(outside)} * kernel_factor`.
///
/// Per axis `|x_j - u_j|^{k_j} sinc1(.)^2 <= (2/sigma_j)^{k_j} |sinc1(.)|`, so
/// `kernel_factor = prod_j (2/sigma_j)^{k_j} * max_x (sum_outside prod_j |sinc1(.)|^{q1})^{1/q1}`.
pub fn tail_bound(
    samples: &SampleSet,
    k: &MultiIndex,
    tau_inner: &TruncationWindow,
    p1: f64,
    probe_grid: &Grid,
) -> Result<TailBoundReport> {
    if samples.spacing() != LatticeSpacing::Double {
        return Err(Error::WrongLattice {
            method: "tail bound",
            expected: 2,
            got: samples.theta(),
        });
    }
    if !(p1 > 1.0) || !p1.is_finite() || p1 < samples.p() {
        return Err(Error::InvalidExponent(p1));
    }
    let n = samples.dim();
    if k.dim() != n || tau_inner.dim() != n || probe_grid.dim() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: [k.dim(), tau_inner.dim(), probe_grid.dim()]
                .into_iter()
                .find(|&d| d != n)
                .unwrap_or(n),
        });
    }
    if !tau_inner.within(samples.tau()) {
        return Err(Error::InvalidArgument(
            "inner window exceeds the stored window".into(),
        ));
    }
    if probe_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let q1 = p1 / (p1 - 1.0);

    let outside = outside_nodes(samples, tau_inner)?;
    let mut tail_values = Vec::with_capacity(outside.len());
    for m in &outside {
        let v = samples.get(k, m).ok_or_else(|| Error::MissingRecord {
            k: *k,
            m: m.clone(),
        })?;
        tail_values.push(v.norm());
    }
    let sample_tail_norm = lp_norm(tail_values.iter().copied(), p1);

    let sigma = samples.sigma().values();
    let prefactor: f64 = (0..n)
        .filter(|&j| k.bit(j))
        .map(|j| 2.0 / sigma[j])
        .product();
    let nodes = outside
        .iter()
        .map(|m| lattice_coords(m, samples.sigma(), LatticeSpacing::Double))
        .collect::<Result<Vec<_>>>()?;
    let sup = if nodes.is_empty() {
        0.0
    } else {
        (0..probe_grid.len())
            .into_par_iter()
            .map(|i| {
                let x = probe_grid.point(i);
                let sum = sum_real(nodes.iter().map(|u| {
                    (0..n)
                        .map(|j| {
                            sinc1_real(sigma[j] * (x[j] - u[j]) / (2.0 * PI))
                                .abs()
                                .powf(q1)
                        })
                        .product::<f64>()
                }));
                sum.powf(1.0 / q1)
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(0.0, f64::max)
    };
    let kernel_factor = prefactor * sup;
    Ok(TailBoundReport {
        k: *k,
        tau_inner: tau_inner.clone(),
        p1,
        q1,
        sample_tail_norm,
        kernel_factor,
        bound: sample_tail_norm * kernel_factor,
        probe_points: probe_grid.len(),
    })
}

/// Brute-force `|S_{k,tau_inner}(x)|`: the outside terms of channel `k` summed directly.
pub fn tail_magnitude(
    samples: &SampleSet,
    k: &MultiIndex,
    tau_inner: &TruncationWindow,
    x: &[f64],
) -> Result<f64> {
    let n = samples.dim();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let sigma = samples.sigma().values();
    let mut re = Vec::new();
    let mut im = Vec::new();
    for m in outside_nodes(samples, tau_inner)? {
        let v = samples.get(k, &m).ok_or_else(|| Error::MissingRecord {
            k: *k,
            m: m.clone(),
        })?;
        let u = lattice_coords(&m, samples.sigma(), LatticeSpacing::Double)?;
        let w: f64 = (0..n)
            .map(|j| {
                let d = x[j] - u[j];
                let s = sinc1_real(sigma[j] * d / (2.0 * PI));
                if k.bit(j) {
                    d * s * s
                } else {
                    s * s
                }
            })
            .product();
        re.push(v.re * w);
        im.push(v.im * w);
    }
    Ok(sum_real(re).hypot(sum_real(im)))
}

/// Outcome of checking `|f(z)| <= sup |f| * exp(pi sum_j |Im z_j|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub value: f64,
    pub bound: f64,
    pub ratio: f64,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.ratio <= 1.0
    }

    pub fn margin(&self) -> f64 {
        1.0 - self.ratio
    }
}

/// Requires a known `sup_norm` and bandwidth `(pi, ..., pi)`.
pub fn growth_check(f: &CorpusFunction, z: &ComplexPoint) -> Result<GrowthReport> {
    let sup = f.sup_norm().ok_or(Error::MissingSupNorm)?;
    if let Some(&s) = f.sigma().values().iter().find(|&&s| s != PI) {
        return Err(Error::InvalidBandwidth(s));
    }
    let value = f.eval(z)?.norm();
    let bound = sup * (PI * z.im().iter().map(|y| y.abs()).sum::<f64>()).exp();
    Ok(GrowthReport {
        value,
        bound,
        ratio: value / bound,
    })
}
