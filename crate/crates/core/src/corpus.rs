//! Bandlimited test functions with exact mixed first partials.
//!
//! Every family is a product of one-dimensional factors, so `d^k f` is the
//! product of each factor's value (`k_j = 0`) or first derivative (`k_j = 1`).
//! The bump-based families need the Fourier transform of a compactly supported
//! bump, which is computed by quadrature and memoized per argument.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::kernels::{
    cos_pi, sin_pi, sinc1, sinc1_derivative, sinc1_sq, sinc1_sq_derivative, Complex, ComplexPoint,
};
use crate::lattice::{
    enum_window, lattice_coords, Bandwidth, LatticeSpacing, MultiIndex, TruncationWindow,
};
use crate::quadrature;
use crate::sampleio::{SampleSet, ValueKind};

/// Named corpus families, as addressed from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    SincSqProduct,
    ShiftedSinc,
    Counterexample,
    TildeF,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::SincSqProduct,
        Family::ShiftedSinc,
        Family::Counterexample,
        Family::TildeF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SincSqProduct => "sinc-sq-product",
            Family::ShiftedSinc => "shifted-sinc",
            Family::Counterexample => "counterexample",
            Family::TildeF => "tilde-f",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown corpus family {s:?}")))
    }
}

/// One-dimensional factor of a separable corpus function.
trait AxisFactor: Send + Sync + fmt::Debug {
    /// Value, or first derivative when `derivative` is set.
    fn eval(&self, z: Complex, derivative: bool) -> Result<Complex>;
}

/// `sinc1(rate z)^2` with `rate = sigma / 2pi`.
#[derive(Debug)]
struct SincSq {
    rate: f64,
}

impl AxisFactor for SincSq {
    fn eval(&self, z: Complex, derivative: bool) -> Result<Complex> {
        let t = z * self.rate;
        Ok(if derivative {
            sinc1_sq_derivative(t) * self.rate
        } else {
            sinc1_sq(t)
        })
    }
}

/// `sinc1(rate (z - shift))` with `rate = sigma / pi`.
#[derive(Debug)]
struct ShiftedSinc {
    rate: f64,
    shift: f64,
}

impl AxisFactor for ShiftedSinc {
    fn eval(&self, z: Complex, derivative: bool) -> Result<Complex> {
        let t = (z - self.shift) * self.rate;
        Ok(if derivative {
            sinc1_derivative(t) * self.rate
        } else {
            sinc1(t)
        })
    }
}

/// Which Fourier-type integral of the bump is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum BumpIntegral {
    /// `int e^{-izt} phi(t) dt`
    Transform,
    /// `int (-it) e^{-izt} phi(t) dt`, the derivative of the transform.
    Derivative,
    /// `int e^{-izt} phi(t) / (t - sigma/2) dt`
    PoleAbove,
    /// `int e^{-izt} phi(t) / (t + sigma/2) dt`
    PoleBelow,
}

/// The bump `phi(t) = exp(-1 / (1 - (t/a)^2))` on `|t| < a`, `a = sigma * s / 2`,
/// and memoized integrals against it.
struct Bump {
    sigma: f64,
    half_width: f64,
    memo: Mutex<HashMap<(u64, u64, BumpIntegral), Complex>>,
}

impl fmt::Debug for Bump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bump")
            .field("sigma", &self.sigma)
            .field("half_width", &self.half_width)
            .finish_non_exhaustive()
    }
}

/// `exp(-1 / (1 - x^2))` on `(-1, 1)`, zero outside.
fn unit_bump(x: f64) -> f64 {
    let gap = (1.0 - x) * (1.0 + x);
    if gap <= 0.0 {
        0.0
    } else {
        (-1.0 / gap).exp()
    }
}

impl Bump {
    fn new(sigma: f64, sharpness: f64) -> Self {
        Self {
            sigma,
            half_width: sigma * sharpness / 2.0,
            memo: Mutex::new(HashMap::new()),
        }
    }

    fn integral(&self, kind: BumpIntegral, z: Complex) -> Result<Complex> {
        let key = (z.re.to_bits(), z.im.to_bits(), kind);
        if let Some(&v) = self.memo.lock().expect("bump memo poisoned").get(&key) {
            return Ok(v);
        }
        let a = self.half_width;
        let pole = self.sigma / 2.0;
        // t = a x maps the support onto (-1, 1).
        let integrand = |x: f64| -> Complex {
            let t = a * x;
            let phase = (Complex::new(0.0, -t) * z).exp() * unit_bump(x);
            match kind {
                BumpIntegral::Transform => phase,
                BumpIntegral::Derivative => phase * Complex::new(0.0, -t),
                BumpIntegral::PoleAbove => phase / (t - pole),
                BumpIntegral::PoleBelow => phase / (t + pole),
            }
        };
        let out = quadrature::integrate(integrand);
        if !out.converged {
            return Err(Error::Quadrature {
                z,
                rel: out.rel_change,
            });
        }
        let value = out.value * a;
        self.memo
            .lock()
            .expect("bump memo poisoned")
            .insert(key, value);
        Ok(value)
    }

    /// `sin(sigma z / 2)` and `cos(sigma z / 2)`.
    fn sic(&self, z: Complex) -> (Complex, Complex) {
        let t = z * (self.sigma / (2.0 * PI));
        (sin_pi(t), cos_pi(t))
    }
}

/// `chi^(z) sin(sigma z / 2)`: vanishes on the lattice `(2pi/sigma) Z`,
/// its derivative does not.
#[derive(Debug)]
struct BumpSine {
    bump: Arc<Bump>,
}

impl AxisFactor for BumpSine {
    fn eval(&self, z: Complex, derivative: bool) -> Result<Complex> {
        let (s, c) = self.bump.sic(z);
        let g = self.bump.integral(BumpIntegral::Transform, z)?;
        if derivative {
            let dg = self.bump.integral(BumpIntegral::Derivative, z)?;
            Ok(dg * s + g * c * (self.bump.sigma / 2.0))
        } else {
            Ok(g * s)
        }
    }
}

/// The decaying antiderivative `H` of `chi^(z) sin(sigma z / 2)`:
/// `H(z) = (e^{i sigma z/2} B_-(z) - e^{-i sigma z/2} B_+(z)) / 2`, where `B_-`, `B_+`
/// integrate the bump against `e^{-izt} / (t -+ sigma/2)`.
/// `H'` vanishes on the lattice `(2pi/sigma) Z`, `H` does not.
#[derive(Debug)]
struct BumpAntiderivative {
    bump: Arc<Bump>,
}

impl AxisFactor for BumpAntiderivative {
    fn eval(&self, z: Complex, derivative: bool) -> Result<Complex> {
        if derivative {
            let (s, _) = self.bump.sic(z);
            return Ok(self.bump.integral(BumpIntegral::Transform, z)? * s);
        }
        let above = self.bump.integral(BumpIntegral::PoleAbove, z)?;
        let below = self.bump.integral(BumpIntegral::PoleBelow, z)?;
        let rot = (Complex::new(0.0, self.bump.sigma / 2.0) * z).exp();
        Ok((rot * above - below / rot) * 0.5)
    }
}

/// `inner(c z)`; derivatives pick up the chain-rule factor `c`.
#[derive(Debug)]
struct Rescaled {
    inner: Arc<dyn AxisFactor>,
    c: f64,
}

impl AxisFactor for Rescaled {
    fn eval(&self, z: Complex, derivative: bool) -> Result<Complex> {
        let v = self.inner.eval(z * self.c, derivative)?;
        Ok(if derivative { v * self.c } else { v })
    }
}

/// An analytically known function of a Bernstein space, the oracle for every
/// reconstruction.
#[derive(Debug, Clone)]
pub struct CorpusFunction {
    family: Family,
    sigma: Bandwidth,
    p_membership: Vec<f64>,
    sup_norm: Option<f64>,
    amplitude: f64,
    normalized: bool,
    factors: Vec<Arc<dyn AxisFactor>>,
}

impl CorpusFunction {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    /// Smallest box `Q_sigma` known to contain the spectrum.
    pub fn sigma(&self) -> &Bandwidth {
        &self.sigma
    }

    /// Representative exponents `p` with guaranteed `B^p` membership, ascending.
    pub fn p_membership(&self) -> &[f64] {
        &self.p_membership
    }

    pub fn smallest_p(&self) -> f64 {
        self.p_membership[0]
    }

    /// `sup |f|` over `R^n`, when known in closed form.
    pub fn sup_norm(&self) -> Option<f64> {
        self.sup_norm
    }

    /// Whether this is the image of [`normalize_to_pi`].
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `f(z)`.
    pub fn eval(&self, z: &ComplexPoint) -> Result<Complex> {
        self.eval_partial(&MultiIndex::zero(self.dim())?, z)
    }

    /// `d^k f(z)`.
    pub fn eval_partial(&self, k: &MultiIndex, z: &ComplexPoint) -> Result<Complex> {
        self.check_point(z)?;
        if k.dim() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: k.dim(),
            });
        }
        let mut acc = Complex::new(self.amplitude, 0.0);
        for (j, (factor, &zj)) in self.factors.iter().zip(z.coords()).enumerate() {
            acc *= factor.eval(zj, k.bit(j))?;
        }
        Ok(acc)
    }

    /// `d^k f(z)` for each `k` in `ks`, sharing the per-axis factor evaluations.
    pub fn eval_channels(&self, ks: &[MultiIndex], z: &ComplexPoint) -> Result<Vec<Complex>> {
        self.check_point(z)?;
        let mut per_axis = Vec::with_capacity(self.dim());
        for (j, (factor, &zj)) in self.factors.iter().zip(z.coords()).enumerate() {
            let needs_value = ks.iter().any(|k| !k.bit(j));
            let needs_derivative = ks.iter().any(|k| k.bit(j));
            let value = if needs_value {
                factor.eval(zj, false)?
            } else {
                Complex::new(f64::NAN, 0.0)
            };
            let derivative = if needs_derivative {
                factor.eval(zj, true)?
            } else {
                Complex::new(f64::NAN, 0.0)
            };
            per_axis.push((value, derivative));
        }
        ks.iter()
            .map(|k| {
                if k.dim() != self.dim() {
                    return Err(Error::LengthMismatch {
                        expected: self.dim(),
                        got: k.dim(),
                    });
                }
                Ok(per_axis
                    .iter()
                    .enumerate()
                    .fold(Complex::new(self.amplitude, 0.0), |acc, (j, &(v, d))| {
                        acc * if k.bit(j) { d } else { v }
                    }))
            })
            .collect()
    }

    fn check_point(&self, z: &ComplexPoint) -> Result<()> {
        if z.dim() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: z.dim(),
            });
        }
        Ok(())
    }
}

/// Bounds the bump sharpness to `(0, 1]`.
fn clamp_sharpness(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bump sharpness must be positive, got {s}"
        )));
    }
    Ok(s.min(1.0))
}

/// `prod_j sinc1(sigma_j x_j / 2pi)^2`, a member of `B^1`; `sup |f| = 1`.
pub fn make_sinc_sq_product(sigma: &Bandwidth) -> CorpusFunction {
    let factors = sigma
        .values()
        .iter()
        .map(|&s| {
            Arc::new(SincSq {
                rate: s / (2.0 * PI),
            }) as Arc<dyn AxisFactor>
        })
        .collect();
    CorpusFunction {
        family: Family::SincSqProduct,
        sigma: sigma.clone(),
        p_membership: vec![1.0, 2.0, f64::INFINITY],
        sup_norm: Some(1.0),
        amplitude: 1.0,
        normalized: false,
        factors,
    }
}

/// `prod_j sinc1(sigma_j (x_j - shift_j) / pi)`, in `B^p` for every `p > 1`.
pub fn make_shifted_sinc(sigma: &Bandwidth, shift: &[f64]) -> Result<CorpusFunction> {
    if shift.len() != sigma.dim() {
        return Err(Error::LengthMismatch {
            expected: sigma.dim(),
            got: shift.len(),
        });
    }
    let factors = sigma
        .values()
        .iter()
        .zip(shift)
        .map(|(&s, &shift)| {
            Arc::new(ShiftedSinc {
                rate: s / PI,
                shift,
            }) as Arc<dyn AxisFactor>
        })
        .collect();
    Ok(CorpusFunction {
        family: Family::ShiftedSinc,
        sigma: sigma.clone(),
        p_membership: vec![2.0, f64::INFINITY],
        sup_norm: Some(1.0),
        amplitude: 1.0,
        normalized: false,
        factors,
    })
}

fn bump_function(
    family: Family,
    sigma: &Bandwidth,
    bump_sharpness: f64,
    antiderivative_axes: impl Fn(usize) -> bool,
) -> Result<CorpusFunction> {
    let s = clamp_sharpness(bump_sharpness)?;
    let factors = sigma
        .values()
        .iter()
        .enumerate()
        .map(|(j, &sj)| {
            let bump = Arc::new(Bump::new(sj, s));
            if antiderivative_axes(j) {
                Arc::new(BumpAntiderivative { bump }) as Arc<dyn AxisFactor>
            } else {
                Arc::new(BumpSine { bump }) as Arc<dyn AxisFactor>
            }
        })
        .collect();
    Ok(CorpusFunction {
        family,
        sigma: sigma.clone(),
        p_membership: vec![1.0, 2.0, f64::INFINITY],
        sup_norm: None,
        amplitude: 1.0,
        normalized: false,
        factors,
    })
}

/// `chi^(z) sic(sigma z)`: every value and every first partial `d^k`, `k != 1`,
/// vanishes on `(2pi/sigma) Z^n`, yet the function is not zero.
///
/// `chi` is the tensor product of bumps `exp(-1/(1 - (2t/(sigma s))^2))`, supported
/// strictly inside `Q_{sigma/2}`; `s` is clamped to `(0, 1]`.
pub fn make_counterexample(sigma: &Bandwidth, bump_sharpness: f64) -> Result<CorpusFunction> {
    bump_function(Family::Counterexample, sigma, bump_sharpness, |_| false)
}

/// A function whose lattice data vanish in every channel except `k_tilde`.
///
/// Axes with `k_tilde_j = 1` carry `chi^_j(z) sin(sigma_j z / 2)` (value zero,
/// derivative nonzero on the lattice); axes with `k_tilde_j = 0` carry the
/// decaying antiderivative of that factor (derivative zero, value nonzero).
/// For `k_tilde = (1, ..., 1)` this is [`make_counterexample`].
pub fn make_tilde_f(
    sigma: &Bandwidth,
    k_tilde: &MultiIndex,
    bump_sharpness: f64,
) -> Result<CorpusFunction> {
    if k_tilde.dim() != sigma.dim() {
        return Err(Error::LengthMismatch {
            expected: sigma.dim(),
            got: k_tilde.dim(),
        });
    }
    bump_function(Family::TildeF, sigma, bump_sharpness, |j| !k_tilde.bit(j))
}

/// `g(z) = theta f(pi z / sigma)` with `theta = (prod sigma_j / pi^n)^{1/p}` for the
/// smallest guaranteed `p`; `g` is bandlimited to `(pi, ..., pi)`.
pub fn normalize_to_pi(f: &CorpusFunction) -> CorpusFunction {
    let n = f.dim() as f64;
    let p = f.smallest_p();
    let volume: f64 = f.sigma.values().iter().product();
    let theta = if p.is_finite() {
        (volume / PI.powf(n)).powf(1.0 / p)
    } else {
        1.0
    };
    let factors = f
        .factors
        .iter()
        .zip(f.sigma.values())
        .map(|(inner, &s)| {
            Arc::new(Rescaled {
                inner: Arc::clone(inner),
                c: PI / s,
            }) as Arc<dyn AxisFactor>
        })
        .collect();
    CorpusFunction {
        family: f.family,
        sigma: Bandwidth::pi(f.dim()).expect("dimension already validated"),
        p_membership: f.p_membership.clone(),
        sup_norm: f.sup_norm.map(|s| s * theta),
        amplitude: f.amplitude * theta,
        normalized: true,
        factors,
    }
}

/// Samples `d^k f` for each requested `k` at every node of the window.
///
/// Corpus functions are real on `R^n`, so the set is of [`ValueKind::Real`] and
/// quadrature round-off in the imaginary part is discarded.
pub fn sample_function(
    f: &CorpusFunction,
    spacing: LatticeSpacing,
    tau: &TruncationWindow,
    which_k: &[MultiIndex],
) -> Result<SampleSet> {
    if which_k.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one channel must be requested".into(),
        ));
    }
    if spacing == LatticeSpacing::Nyquist {
        if let Some(k) = which_k.iter().find(|k| !k.is_zero()) {
            return Err(Error::UnexpectedChannel {
                method: "theta = 1 sampling",
                k: *k,
            });
        }
    }
    let mut ks = which_k.to_vec();
    ks.sort();
    ks.dedup();
    let mut set = SampleSet::new(
        f.sigma.clone(),
        spacing,
        tau.clone(),
        f.smallest_p(),
        ValueKind::Real,
    )?;
    for m in enum_window(tau)? {
        let u = lattice_coords(&m, &f.sigma, spacing)?;
        let values = f.eval_channels(&ks, &ComplexPoint::real(&u))?;
        for (k, v) in ks.iter().zip(values) {
            set.insert(*k, m.clone(), Complex::new(v.re, 0.0))?;
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enum_multi_indices;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TWO_OVER_PI: f64 = std::f64::consts::FRAC_2_PI;

    fn pi2() -> Bandwidth {
        Bandwidth::pi(2).unwrap()
    }

    fn real(x: &[f64]) -> ComplexPoint {
        ComplexPoint::real(x)
    }

    /// Centered mixed difference of `f` along the axes of `k`.
    fn mixed_difference(f: &CorpusFunction, k: &MultiIndex, x: &[f64], h: f64) -> Complex {
        let axes: Vec<usize> = (0..f.dim()).filter(|&j| k.bit(j)).collect();
        let mut acc = Complex::new(0.0, 0.0);
        for signs in 0..(1u32 << axes.len()) {
            let mut y = x.to_vec();
            let mut weight = 1.0;
            for (i, &j) in axes.iter().enumerate() {
                if signs >> i & 1 == 1 {
                    y[j] -= h;
                    weight = -weight;
                } else {
                    y[j] += h;
                }
            }
            acc += f.eval(&real(&y)).unwrap() * weight;
        }
        acc / (2.0 * h).powi(axes.len() as i32)
    }

    fn assert_fd_consistent(f: &CorpusFunction, points: usize, spread: f64, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ks = enum_multi_indices(f.dim()).unwrap();
        for _ in 0..points {
            let x: Vec<f64> = (0..f.dim())
                .map(|_| rng.gen_range(-spread..spread))
                .collect();
            for k in &ks {
                let exact = f.eval_partial(k, &real(&x)).unwrap();
                let fd = mixed_difference(f, k, &x, 1e-4);
                assert!(
                    (fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()),
                    "{} k={k} x={x:?}: fd {fd} vs exact {exact}",
                    f.family()
                );
            }
        }
    }

    #[test]
    fn sinc_sq_product_values() {
        let f = make_sinc_sq_product(&pi2());
        assert_eq!(f.eval(&real(&[0.0, 0.0])).unwrap().re, 1.0);
        let ones = MultiIndex::ones(2).unwrap();
        assert_eq!(
            f.eval_partial(&ones, &real(&[0.0, 0.0])).unwrap().norm(),
            0.0
        );
        let g = make_sinc_sq_product(&Bandwidth::pi(1).unwrap());
        assert_relative_eq!(
            g.eval(&real(&[1.0])).unwrap().re,
            TWO_OVER_PI * TWO_OVER_PI,
            max_relative = 1e-15
        );
        assert_eq!(f.sup_norm(), Some(1.0));
        assert_eq!(f.smallest_p(), 1.0);
    }

    #[test]
    fn shifted_sinc_values() {
        let sigma = Bandwidth::new(vec![1.7, 2.3]).unwrap();
        let shift = [0.4, -1.1];
        let f = make_shifted_sinc(&sigma, &shift).unwrap();
        assert_relative_eq!(f.eval(&real(&shift)).unwrap().re, 1.0, max_relative = 1e-15);
        for m in [[1i64, 0], [0, -2], [3, 5]] {
            let x: Vec<f64> = (0..2)
                .map(|j| shift[j] + PI / sigma.values()[j] * m[j] as f64)
                .collect();
            assert!(f.eval(&real(&x)).unwrap().norm() < 1e-15);
        }
        let g = make_shifted_sinc(&pi2(), &[0.0, 0.0]).unwrap();
        assert_relative_eq!(
            g.eval(&real(&[0.5, 0.0])).unwrap().re,
            TWO_OVER_PI,
            max_relative = 1e-15
        );
        assert!(g.p_membership().iter().all(|&p| p > 1.0));
        assert!(make_shifted_sinc(&pi2(), &[0.0]).is_err());
    }

    #[test]
    fn closed_form_families_are_fd_consistent() {
        let sigma = Bandwidth::new(vec![2.1, 0.9]).unwrap();
        assert_fd_consistent(&make_sinc_sq_product(&sigma), 50, 8.0, 1);
        assert_fd_consistent(
            &make_shifted_sinc(&sigma, &[0.3, -0.8]).unwrap(),
            50,
            8.0,
            2,
        );
        let sigma3 = Bandwidth::new(vec![PI, 1.5, 4.0]).unwrap();
        assert_fd_consistent(&make_sinc_sq_product(&sigma3), 10, 5.0, 3);
    }

    #[test]
    fn bump_families_are_fd_consistent() {
        let f = make_counterexample(&pi2(), 1.0).unwrap();
        assert_fd_consistent(&f, 50, 6.0, 4);
        let k: MultiIndex = "10".parse().unwrap();
        let g = make_tilde_f(&pi2(), &k, 0.8).unwrap();
        assert_fd_consistent(&g, 50, 6.0, 5);
    }

    #[test]
    fn counterexample_vanishes_on_lattice_but_not_between() {
        let sigma = pi2();
        let f = make_counterexample(&sigma, 1.0).unwrap();
        let ks = enum_multi_indices(2).unwrap();
        for m in [[0i64, 0], [1, 0], [-2, 3], [4, -4]] {
            let u = lattice_coords(&m, &sigma, LatticeSpacing::Double).unwrap();
            for k in &ks[..3] {
                assert!(
                    f.eval_partial(k, &real(&u)).unwrap().norm() < 1e-14,
                    "{m:?} {k}"
                );
            }
        }
        // At (pi/sigma)(1,1) both sine factors are 1 and chi^ is near its peak.
        let v = f.eval(&real(&[1.0, 1.0])).unwrap();
        assert!(v.norm() > 1e-6, "{v}");
        // chi^(0) is the integral of a positive bump.
        let bump = Bump::new(PI, 1.0);
        let mass = bump
            .integral(BumpIntegral::Transform, Complex::new(0.0, 0.0))
            .unwrap();
        assert!(mass.re > 0.0 && mass.im.abs() < 1e-15);
        // Reference: int_{-1}^{1} exp(-1/(1-x^2)) dx = 0.443993816168079..., times a = pi/2.
        assert_relative_eq!(
            mass.re,
            0.443_993_816_168_079_4 * PI / 2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn tilde_f_lattice_data() {
        let sigma = pi2();
        let ks = enum_multi_indices(2).unwrap();
        let counter = make_counterexample(&sigma, 1.0).unwrap();
        for k_tilde in &ks {
            let f = make_tilde_f(&sigma, k_tilde, 1.0).unwrap();
            let at_origin = f.eval_partial(k_tilde, &real(&[0.0, 0.0])).unwrap();
            assert!(at_origin.norm() > 1e-6, "{k_tilde}: {at_origin}");
            for m in [[0i64, 0], [1, 0], [0, -1], [2, 3], [-5, 1]] {
                let u = lattice_coords(&m, &sigma, LatticeSpacing::Double).unwrap();
                for k in ks.iter().filter(|k| *k != k_tilde) {
                    let v = f.eval_partial(k, &real(&u)).unwrap();
                    assert!(v.norm() < 1e-14, "k~={k_tilde} k={k} m={m:?}: {v}");
                }
            }
        }
        let ones = MultiIndex::ones(2).unwrap();
        let full = make_tilde_f(&sigma, &ones, 1.0).unwrap();
        for x in [[0.3, -1.2], [2.5, 0.7]] {
            assert_eq!(
                full.eval(&real(&x)).unwrap(),
                counter.eval(&real(&x)).unwrap()
            );
        }
    }

    #[test]
    fn bump_sharpness_validation() {
        assert!(make_counterexample(&pi2(), 0.0).is_err());
        assert!(make_counterexample(&pi2(), f64::NAN).is_err());
        // Values above 1 clamp to 1.
        let a = make_counterexample(&pi2(), 5.0).unwrap();
        let b = make_counterexample(&pi2(), 1.0).unwrap();
        let x = real(&[0.7, -0.2]);
        assert_eq!(a.eval(&x).unwrap(), b.eval(&x).unwrap());
    }

    #[test]
    fn normalization() {
        let f = make_sinc_sq_product(&pi2());
        let g = normalize_to_pi(&f);
        let x = real(&[0.37, -1.9]);
        assert_eq!(g.eval(&x).unwrap(), f.eval(&x).unwrap());

        let f1 = make_sinc_sq_product(&Bandwidth::new(vec![2.0 * PI]).unwrap());
        let g1 = normalize_to_pi(&f1);
        assert_eq!(g1.sigma().values(), &[PI]);
        assert_relative_eq!(
            g1.eval(&real(&[1.0])).unwrap().re,
            2.0 * f1.eval(&real(&[0.5])).unwrap().re,
            max_relative = 1e-15
        );
        assert_eq!(g1.sup_norm(), Some(2.0));

        // Chain rule, checked by central differences.
        let d = MultiIndex::ones(1).unwrap();
        let h = 1e-5;
        for x in [-2.3, 0.4, 1.7] {
            let fd =
                (g1.eval(&real(&[x + h])).unwrap() - g1.eval(&real(&[x - h])).unwrap()) / (2.0 * h);
            let exact = g1.eval_partial(&d, &real(&[x])).unwrap();
            let chain = f1.eval_partial(&d, &real(&[x / 2.0])).unwrap() * (2.0 * 0.5);
            assert!((fd - exact).norm() < 1e-9);
            assert!((exact - chain).norm() < 1e-15);
        }
    }

    #[test]
    fn sampling_layout() {
        let f = make_sinc_sq_product(&Bandwidth::pi(1).unwrap());
        let all = enum_multi_indices(1).unwrap();
        let tau = TruncationWindow::new(vec![0]).unwrap();
        let s = sample_function(&f, LatticeSpacing::Double, &tau, &all).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(&all[0], &[0]), Some(Complex::new(1.0, 0.0)));
        assert_eq!(s.get(&all[1], &[0]), Some(Complex::new(0.0, 0.0)));

        let f2 = make_sinc_sq_product(&pi2());
        let all2 = enum_multi_indices(2).unwrap();
        let tau2 = TruncationWindow::new(vec![2, 1]).unwrap();
        let s2 = sample_function(&f2, LatticeSpacing::Double, &tau2, &all2).unwrap();
        assert_eq!(s2.len(), 4 * 5 * 3);

        assert!(sample_function(&f2, LatticeSpacing::Nyquist, &tau2, &all2).is_err());
        assert!(sample_function(&f2, LatticeSpacing::Double, &tau2, &[]).is_err());
    }

    #[test]
    fn counterexample_samples_vanish() {
        let sigma = Bandwidth::new(vec![PI, 2.5]).unwrap();
        let f = make_counterexample(&sigma, 1.0).unwrap();
        let all = enum_multi_indices(2).unwrap();
        let tau = TruncationWindow::new(vec![4, 3]).unwrap();
        let s = sample_function(&f, LatticeSpacing::Double, &tau, &all[..3]).unwrap();
        for (_, _, v) in s.records() {
            assert!(v.norm() <= 1e-10);
        }
    }

    #[test]
    fn concurrent_evaluations_agree() {
        let f = make_counterexample(&pi2(), 0.7).unwrap();
        let points: Vec<[f64; 2]> = (0..16).map(|i| [0.3 * i as f64, -0.2 * i as f64]).collect();
        let serial: Vec<Complex> = points.iter().map(|x| f.eval(&real(x)).unwrap()).collect();
        let fresh = make_counterexample(&pi2(), 0.7).unwrap();
        let parallel: Vec<Complex> = std::thread::scope(|scope| {
            let handles: Vec<_> = points
                .iter()
                .map(|x| scope.spawn(|| fresh.eval(&real(x)).unwrap()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert_eq!(serial, parallel);
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("gaussian".parse::<Family>().is_err());
    }
}
