//! Sampling-series engines.
//!
//! * [`wks_eval`]: `sum_u f(u) sincn(sigma (z - u) / pi)` on `(pi/sigma) Z^n`.
//! * [`hermite1_eval`]: `sum_u (f(u) + f'(u)(z - u)) sinc1(sigma (z - u) / 2pi)^2`.
//! * [`hermite_nd_eval`]: `sum_u (sum_{k in E^n} d^k f(u) prod_j (z_j - u_j)^{k_j})
//!   sincn(sigma (z - u) / 2pi)^2` on `(2pi/sigma) Z^n`, using all `2^n` mixed
//!   first partials.
//! * [`legacy2d_eval`]: the two-dimensional variant without the mixed partial,
//!   which is not a valid reconstruction formula.
//!
//! Each engine sums exactly the window stored in the sample set, nodes in
//! lexicographic order, with compensated accumulation, so results are
//! reproducible bit for bit.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{sinc1, Complex, ComplexPoint};
use crate::lattice::{enum_multi_indices, enum_window, LatticeSpacing, MultiIndex};
use crate::sampleio::{Grid, SampleSet};
use crate::summation::CompensatedSum;

/// Query coordinates within this many ulps of a node are treated as the node.
const SNAP_ULPS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Wks,
    Hermite1,
    HermiteNd,
    Legacy2d,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Wks,
        Method::Hermite1,
        Method::HermiteNd,
        Method::Legacy2d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Wks => "wks",
            Method::Hermite1 => "hermite1",
            Method::HermiteNd => "hermite-nd",
            Method::Legacy2d => "legacy2d",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown reconstruction method {s:?}")))
    }
}

/// `P_{f,k,u}(lambda) = value * prod_j lambda_j^{k_j}`.
pub fn poly_term(value: Complex, k: &MultiIndex, lambda: &ComplexPoint) -> Result<Complex> {
    if k.dim() != lambda.dim() {
        return Err(Error::LengthMismatch {
            expected: k.dim(),
            got: lambda.dim(),
        });
    }
    Ok(lambda
        .coords()
        .iter()
        .enumerate()
        .filter(|(j, _)| k.bit(*j))
        .fold(value, |acc, (_, &l)| acc * l))
}

/// A sample set prepared for repeated evaluation of one series.
#[derive(Debug, Clone)]
pub struct Series {
    method: Method,
    dim: usize,
    radii: Vec<i64>,
    /// Node spacing per axis.
    steps: Vec<f64>,
    nodes: Vec<Vec<i64>>,
    /// Channels entering the inner polynomial sum, in binary-counting order.
    channels: Vec<MultiIndex>,
    /// `values[node * channels.len() + c]`.
    values: Vec<Complex>,
}

impl Series {
    /// Validates the sample set against `method` and lays it out densely.
    ///
    /// `drop_channel` removes one polynomial term `P_{f,k,u}` from the
    /// derivative series (only for [`Method::HermiteNd`]); the channel need not
    /// be present in the set.
    pub fn new(
        samples: &SampleSet,
        method: Method,
        drop_channel: Option<MultiIndex>,
    ) -> Result<Self> {
        let n = samples.dim();
        let name = method.name();
        let expect_theta = |theta: u8| {
            if samples.theta() == theta {
                Ok(())
            } else {
                Err(Error::WrongLattice {
                    method: name,
                    expected: theta,
                    got: samples.theta(),
                })
            }
        };
        let expect_dim = |dim: usize| {
            if n == dim {
                Ok(())
            } else {
                Err(Error::WrongDimension {
                    method: name,
                    expected: dim,
                    got: n,
                })
            }
        };
        if drop_channel.is_some() && method != Method::HermiteNd {
            return Err(Error::InvalidArgument(format!(
                "channel dropping applies to hermite-nd only, not {name}"
            )));
        }
        let all = enum_multi_indices(n)?;
        let channels: Vec<MultiIndex> = match method {
            Method::Wks => {
                expect_theta(1)?;
                vec![all[0]]
            }
            Method::Hermite1 => {
                expect_dim(1)?;
                expect_theta(2)?;
                all
            }
            Method::HermiteNd => {
                expect_theta(2)?;
                if let Some(k) = drop_channel {
                    if k.dim() != n {
                        return Err(Error::LengthMismatch {
                            expected: n,
                            got: k.dim(),
                        });
                    }
                }
                all.into_iter()
                    .filter(|k| Some(*k) != drop_channel)
                    .collect()
            }
            Method::Legacy2d => {
                expect_dim(2)?;
                expect_theta(2)?;
                all.into_iter().filter(|k| k.order() <= 1).collect()
            }
        };
        for k in &channels {
            if !samples.has_channel(k) {
                return Err(Error::MissingChannel {
                    method: name,
                    k: *k,
                });
            }
        }
        if method == Method::Wks {
            if let Some(k) = samples.channels().into_iter().find(|k| !k.is_zero()) {
                return Err(Error::UnexpectedChannel { method: name, k });
            }
        }

        let nodes = enum_window(samples.tau())?;
        let dense = channels
            .iter()
            .map(|k| samples.channel_values(k))
            .collect::<Result<Vec<_>>>()?;
        let mut values = Vec::with_capacity(nodes.len() * channels.len());
        for i in 0..nodes.len() {
            values.extend(dense.iter().map(|ch| ch[i]));
        }
        Ok(Self {
            method,
            dim: n,
            radii: samples
                .tau()
                .radii()
                .iter()
                .map(|&t| i64::from(t))
                .collect(),
            steps: samples.spacing().steps(samples.sigma()),
            nodes,
            channels,
            values,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn spacing(&self) -> LatticeSpacing {
        match self.method {
            Method::Wks => LatticeSpacing::Nyquist,
            _ => LatticeSpacing::Double,
        }
    }

    /// Per-axis tables of kernel factors and `z_j - u_j`, indexed by `m_j + tau_j`.
    fn axis_tables(&self, z: &ComplexPoint) -> Result<Vec<(Vec<Complex>, Vec<Complex>)>> {
        if z.dim() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: z.dim(),
            });
        }
        let squared = self.spacing() == LatticeSpacing::Double;
        Ok(z.coords()
            .iter()
            .zip(&self.steps)
            .zip(&self.radii)
            .map(|((&zj, &h), &r)| {
                // Position in lattice units; a node stays a node despite rounding.
                let mut t = zj / h;
                let nearest = t.re.round();
                if (t.re - nearest).abs() <= SNAP_ULPS * f64::EPSILON * nearest.abs().max(1.0) {
                    t.re = nearest;
                }
                let mut kernel = Vec::with_capacity((2 * r + 1) as usize);
                let mut offset = Vec::with_capacity((2 * r + 1) as usize);
                for m in -r..=r {
                    let d = t - m as f64;
                    let s = sinc1(d);
                    kernel.push(if squared { s * s } else { s });
                    offset.push(d * h);
                }
                (kernel, offset)
            })
            .collect())
    }

    /// Calls `visit(node, term)` for every node in window order, where `term`
    /// is that node's full contribution to the series at `z`.
    pub fn for_each_term(
        &self,
        z: &ComplexPoint,
        mut visit: impl FnMut(&[i64], Complex),
    ) -> Result<()> {
        let tables = self.axis_tables(z)?;
        let nc = self.channels.len();
        let mut idx = vec![0usize; self.dim];
        for (i, m) in self.nodes.iter().enumerate() {
            for j in 0..self.dim {
                idx[j] = (m[j] + self.radii[j]) as usize;
            }
            let mut kernel = Complex::new(1.0, 0.0);
            for (j, &ij) in idx.iter().enumerate() {
                kernel *= tables[j].0[ij];
            }
            let row = &self.values[i * nc..(i + 1) * nc];
            let mut poly = Complex::new(0.0, 0.0);
            for (k, &v) in self.channels.iter().zip(row) {
                let mut term = v;
                for (j, &ij) in idx.iter().enumerate() {
                    if k.bit(j) {
                        term *= tables[j].1[ij];
                    }
                }
                poly += term;
            }
            visit(m, poly * kernel);
        }
        Ok(())
    }

    pub fn eval(&self, z: &ComplexPoint) -> Result<Complex> {
        let mut acc = CompensatedSum::default();
        self.for_each_term(z, |_, term| acc.add(term))?;
        Ok(acc.value())
    }

    /// Evaluates at every grid point, row-major. Parallel over points only.
    pub fn eval_grid(&self, grid: &Grid) -> Result<Vec<Complex>> {
        if grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if grid.dim() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: grid.dim(),
            });
        }
        (0..grid.len())
            .into_par_iter()
            .map(|i| self.eval(&ComplexPoint::real(&grid.point(i))))
            .collect()
    }
}

pub fn wks_eval(samples: &SampleSet, z: &ComplexPoint) -> Result<Complex> {
    Series::new(samples, Method::Wks, None)?.eval(z)
}

pub fn hermite1_eval(samples: &SampleSet, z: Complex) -> Result<Complex> {
    Series::new(samples, Method::Hermite1, None)?.eval(&ComplexPoint::from_coords(vec![z]))
}

pub fn hermite_nd_eval(
    samples: &SampleSet,
    z: &ComplexPoint,
    drop_channel: Option<MultiIndex>,
) -> Result<Complex> {
    Series::new(samples, Method::HermiteNd, drop_channel)?.eval(z)
}

pub fn legacy2d_eval(samples: &SampleSet, z: &ComplexPoint) -> Result<Complex> {
    Series::new(samples, Method::Legacy2d, None)?.eval(z)
}

pub fn reconstruct_grid(samples: &SampleSet, method: Method, grid: &Grid) -> Result<Vec<Complex>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Series::new(samples, method, None)?.eval_grid(grid)
}
