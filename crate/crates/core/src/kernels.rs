//! Sinc-type kernels at real and complex arguments.
//!
//! `sin(pi t)` is always evaluated after an exact reduction of `t` modulo the
//! integers, so the kernels vanish exactly at integer arguments and keep full
//! relative accuracy next to their zeros.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Bandwidth;

pub type Complex = Complex64;

/// Below this value of `|pi t|` the quotient form of sinc is replaced by its
/// Taylor polynomial.
const TAYLOR_RADIUS: f64 = 1.0 / 8192.0;

/// Series branch radius (in `|pi t|`) for the sinc derivative, where
/// `cos(pi t) - sinc(t)` cancels.
const DERIVATIVE_SERIES_RADIUS: f64 = 1.0;

/// A point of `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint(Vec<Complex>);

impl ComplexPoint {
    pub fn new(re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::LengthMismatch {
                expected: re.len(),
                got: im.len(),
            });
        }
        if re.is_empty() {
            return Err(Error::DimensionOutOfRange(0));
        }
        Ok(Self(
            re.iter()
                .zip(im)
                .map(|(&a, &b)| Complex::new(a, b))
                .collect(),
        ))
    }

    pub fn real(x: &[f64]) -> Self {
        Self(x.iter().map(|&a| Complex::new(a, 0.0)).collect())
    }

    pub fn from_coords(coords: Vec<Complex>) -> Self {
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex] {
        &self.0
    }

    pub fn re(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.im).collect()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|c| c.im == 0.0)
    }
}

impl From<&[f64]> for ComplexPoint {
    fn from(x: &[f64]) -> Self {
        Self::real(x)
    }
}

/// `sin(pi x)` with exact reduction of `x` to `[-1/2, 1/2]`.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let n = x.round();
    let r = x - n;
    let s = if r.abs() > 0.25 {
        (PI * (0.5 - r.abs())).cos().copysign(r)
    } else {
        (PI * r).sin()
    };
    if n % 2.0 == 0.0 {
        s
    } else {
        -s
    }
}

/// `cos(pi x)` with exact reduction of `x` to `[-1/2, 1/2]`.
pub fn cospi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let n = x.round();
    let r = (x - n).abs();
    let c = if r > 0.25 {
        (PI * (0.5 - r)).sin()
    } else {
        (PI * r).cos()
    };
    if n % 2.0 == 0.0 {
        c
    } else {
        -c
    }
}

/// `sin(pi z)` for complex `z`.
pub fn sin_pi(z: Complex) -> Complex {
    let b = PI * z.im;
    if z.im == 0.0 {
        return Complex::new(sinpi(z.re), 0.0);
    }
    Complex::new(sinpi(z.re) * b.cosh(), cospi(z.re) * b.sinh())
}

/// `cos(pi z)` for complex `z`.
pub fn cos_pi(z: Complex) -> Complex {
    let b = PI * z.im;
    if z.im == 0.0 {
        return Complex::new(cospi(z.re), 0.0);
    }
    Complex::new(cospi(z.re) * b.cosh(), -sinpi(z.re) * b.sinh())
}

/// Degree-10 Taylor polynomial of `sin(x)/x`, in powers of `x^2`.
#[inline]
fn sinc_taylor<T>(x2: T) -> T
where
    T: Copy
        + std::ops::Mul<f64, Output = T>
        + std::ops::Add<f64, Output = T>
        + std::ops::Mul<T, Output = T>,
{
    const C: [f64; 6] = [
        1.0,
        -1.0 / 6.0,
        1.0 / 120.0,
        -1.0 / 5040.0,
        1.0 / 362_880.0,
        -1.0 / 39_916_800.0,
    ];
    let mut acc = x2 * 0.0 + C[5];
    for &c in C[..5].iter().rev() {
        acc = acc * x2 + c;
    }
    acc
}

/// Normalized sinc of a real argument, `sin(pi t)/(pi t)` with `sinc(0) = 1`.
pub fn sinc1_real(t: f64) -> f64 {
    let x = PI * t;
    if x.abs() < TAYLOR_RADIUS {
        sinc_taylor(x * x)
    } else {
        sinpi(t) / x
    }
}

/// Normalized sinc of a complex argument.
///
/// Even and conjugate-symmetric exactly: the value is computed in the closed
/// first quadrant and mapped back.
pub fn sinc1(t: Complex) -> Complex {
    if t.im == 0.0 {
        return Complex::new(sinc1_real(t.re), 0.0);
    }
    let w = Complex::new(t.re.abs(), t.im.abs());
    let x = w * PI;
    let v = if x.norm() < TAYLOR_RADIUS {
        sinc_taylor(x * x)
    } else {
        sin_pi(w).fdiv(x)
    };
    if (t.re < 0.0) != (t.im < 0.0) {
        v.conj()
    } else {
        v
    }
}

/// Derivative of [`sinc1`].
pub fn sinc1_derivative(t: Complex) -> Complex {
    let x = t * PI;
    if x.norm() < DERIVATIVE_SERIES_RADIUS {
        // pi * sum_{k>=1} (-1)^k 2k x^(2k-1) / (2k+1)!
        let x2 = x * x;
        let mut power = x;
        let mut factorial = 6.0;
        let mut acc = Complex::new(0.0, 0.0);
        for k in 1..=14u32 {
            let kf = f64::from(k);
            let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
            acc += power * (sign * 2.0 * kf / factorial);
            power *= x2;
            factorial *= (2.0 * kf + 2.0) * (2.0 * kf + 3.0);
        }
        acc * PI
    } else {
        (cos_pi(t) - sinc1(t)).fdiv(t)
    }
}

/// `sinc1(t)^2`.
pub fn sinc1_sq(t: Complex) -> Complex {
    let s = sinc1(t);
    s * s
}

/// Derivative of `sinc1(t)^2`.
pub fn sinc1_sq_derivative(t: Complex) -> Complex {
    sinc1(t) * sinc1_derivative(t) * 2.0
}

/// `prod_j sinc1(z_j)`.
pub fn sincn(z: &ComplexPoint) -> Complex {
    z.coords().iter().map(|&t| sinc1(t)).product()
}

/// `prod_j sin(z_j / 2)`.
pub fn sicn(z: &ComplexPoint) -> Complex {
    z.coords().iter().map(|&t| sin_pi(t / (2.0 * PI))).product()
}

/// The squared node kernel `sincn(sigma (z - u) / 2pi)^2` of the derivative series.
pub fn sinc_sq_node_kernel(z: &ComplexPoint, sigma: &Bandwidth, u: &[f64]) -> Result<Complex> {
    let n = z.dim();
    for len in [sigma.dim(), u.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: len,
            });
        }
    }
    Ok(z.coords()
        .iter()
        .zip(sigma.values())
        .zip(u)
        .map(|((&zj, &sj), &uj)| sinc1_sq((zj - uj) * (sj / (2.0 * PI))))
        .product())
}
