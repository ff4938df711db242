//! Multi-indices, bandwidths, truncation windows and lattice coordinates.
//!
//! Nodes are addressed by integer vectors `m`; physical coordinates are derived
//! as `u_j = m_j * theta * pi / sigma_j`, never used as keys.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported dimension (`2^n` channels per node).
pub const MAX_DIM: usize = 16;

/// Largest number of nodes a truncation window may contain.
pub const MAX_WINDOW_NODES: u128 = 1 << 31;

/// An element `k` of `E^n`: one bit per axis selecting which mixed first
/// partial `d^k` is meant. Bit `j` of `code` is axis `j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    dim: usize,
    code: u32,
}

impl MultiIndex {
    pub fn new(bits: &[u8]) -> Result<Self> {
        check_dim(bits.len())?;
        let mut code = 0u32;
        for (j, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => code |= 1 << j,
                other => {
                    return Err(Error::InvalidMultiIndex(format!(
                        "entry {other} at axis {} is not 0 or 1",
                        j + 1
                    )))
                }
            }
        }
        Ok(Self {
            dim: bits.len(),
            code,
        })
    }

    pub fn from_code(dim: usize, code: u32) -> Result<Self> {
        check_dim(dim)?;
        if u64::from(code) >= 1u64 << dim {
            return Err(Error::InvalidMultiIndex(format!(
                "code {code} does not fit in {dim} bits"
            )));
        }
        Ok(Self { dim, code })
    }

    /// The all-zero index (plain function values).
    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_code(dim, 0)
    }

    /// The all-ones index (the full mixed partial).
    pub fn ones(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            code: ((1u64 << dim) - 1) as u32,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Position in binary-counting order.
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn bit(&self, axis: usize) -> bool {
        axis < self.dim && self.code >> axis & 1 == 1
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.dim).map(|j| u8::from(self.bit(j))).collect()
    }

    /// `|k|`, the total derivative order.
    pub fn order(&self) -> u32 {
        self.code.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    /// `1 - k`, bitwise.
    pub fn complement(&self) -> Self {
        Self {
            dim: self.dim,
            code: !self.code & (((1u64 << self.dim) - 1) as u32),
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, self.code).cmp(&(other.dim, other.code))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as the bit string with axis 1 first, e.g. `10` for `d/dz_1` in 2-D.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidMultiIndex(format!(
                    "unexpected character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(&bits)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

/// All `2^n` elements of `E^n` in binary-counting order, axis 1 least significant.
pub fn enum_multi_indices(n: usize) -> Result<Vec<MultiIndex>> {
    check_dim(n)?;
    Ok((0..(1u32 << n))
        .map(|code| MultiIndex { dim: n, code })
        .collect())
}

/// Per-axis bandwidth `sigma`; the spectrum lies in `|t_j| <= sigma_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bandwidth(Vec<f64>);

impl Bandwidth {
    pub fn new(sigma: Vec<f64>) -> Result<Self> {
        check_dim(sigma.len())?;
        if let Some(&bad) = sigma.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::InvalidBandwidth(bad));
        }
        Ok(Self(sigma))
    }

    /// `(pi, ..., pi)`.
    pub fn pi(dim: usize) -> Result<Self> {
        Self::new(vec![PI; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Lattice spacing factor `theta`: nodes sit at `theta * pi * m / sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeSpacing {
    /// `theta = 1`, the classical cardinal-series lattice.
    Nyquist,
    /// `theta = 2`, the derivative-sampling lattice.
    Double,
}

impl LatticeSpacing {
    pub fn from_theta(theta: u8) -> Result<Self> {
        match theta {
            1 => Ok(Self::Nyquist),
            2 => Ok(Self::Double),
            other => Err(Error::InvalidArgument(format!(
                "lattice spacing factor must be 1 or 2, got {other}"
            ))),
        }
    }

    pub fn theta(self) -> u8 {
        match self {
            Self::Nyquist => 1,
            Self::Double => 2,
        }
    }

    /// Node spacing along each axis, `theta * pi / sigma_j`.
    pub fn steps(self, sigma: &Bandwidth) -> Vec<f64> {
        let scale = f64::from(self.theta()) * PI;
        sigma.values().iter().map(|&s| scale / s).collect()
    }
}

/// Per-axis node-index radius `tau`: the window holds every `m` with `|m_j| <= tau_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncationWindow(Vec<u32>);

impl TruncationWindow {
    pub fn new(tau: Vec<u32>) -> Result<Self> {
        check_dim(tau.len())?;
        Ok(Self(tau))
    }

    pub fn uniform(dim: usize, tau: u32) -> Result<Self> {
        Self::new(vec![tau; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn radii(&self) -> &[u32] {
        &self.0
    }

    /// `prod_j (2 tau_j + 1)`.
    pub fn cardinality(&self) -> u128 {
        self.0.iter().map(|&t| 2 * u128::from(t) + 1).product()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        m.len() == self.0.len()
            && m.iter()
                .zip(&self.0)
                .all(|(&mj, &tj)| mj.unsigned_abs() <= u64::from(tj))
    }

    /// Whether `self` fits inside `outer` on every axis.
    pub fn within(&self, outer: &TruncationWindow) -> bool {
        self.dim() == outer.dim() && self.0.iter().zip(&outer.0).all(|(a, b)| a <= b)
    }
}

/// Every `m` in the window, lexicographic in `(m_1, ..., m_n)`.
pub fn enum_window(tau: &TruncationWindow) -> Result<Vec<Vec<i64>>> {
    let count = tau.cardinality();
    if count > MAX_WINDOW_NODES {
        return Err(Error::WindowTooLarge(count));
    }
    let radii: Vec<i64> = tau.radii().iter().map(|&t| i64::from(t)).collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut m: Vec<i64> = radii.iter().map(|&t| -t).collect();
    loop {
        out.push(m.clone());
        // Odometer with the last axis fastest.
        let mut axis = m.len();
        loop {
            if axis == 0 {
                return Ok(out);
            }
            axis -= 1;
            if m[axis] < radii[axis] {
                m[axis] += 1;
                break;
            }
            m[axis] = -radii[axis];
        }
    }
}

/// Physical coordinates of node `m`: `u_j = m_j * theta * pi / sigma_j`.
pub fn lattice_coords(m: &[i64], sigma: &Bandwidth, spacing: LatticeSpacing) -> Result<Vec<f64>> {
    if m.len() != sigma.dim() {
        return Err(Error::LengthMismatch {
            expected: sigma.dim(),
            got: m.len(),
        });
    }
    Ok(m.iter()
        .zip(spacing.steps(sigma))
        .map(|(&mj, h)| mj as f64 * h)
        .collect())
}
