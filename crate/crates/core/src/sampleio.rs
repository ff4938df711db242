//! Sample sets, the `dsamp` text format and CSV export of evaluated fields.
//!
//! `dsamp` version 1:
//!
//! ```text
//! dsamp 1
//! dim <n>
//! sigma <v1> ... <vn>
//! theta <1|2>
//! tau <t1> ... <tn>
//! p <real>
//! kind <real|complex>
//! <kbits> <m1> ... <mn> <re> <im>      (one line per record)
//! ```
//!
//! Reals are written with 17 significant digits so that reading a written
//! file reproduces every value bit for bit. Records are written in canonical
//! order (channel in binary-counting order, then node lexicographically).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::kernels::Complex;
use crate::lattice::{enum_window, Bandwidth, LatticeSpacing, MultiIndex, TruncationWindow};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Real,
    Complex,
}

impl ValueKind {
    fn as_str(self) -> &'static str {
        match self {
            ValueKind::Real => "real",
            ValueKind::Complex => "complex",
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Values `d^k f(u)` on a truncated lattice, keyed by `(k, m)` with
/// `u = theta * pi * m / sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    sigma: Bandwidth,
    spacing: LatticeSpacing,
    tau: TruncationWindow,
    p: f64,
    kind: ValueKind,
    records: BTreeMap<(MultiIndex, Vec<i64>), Complex>,
}

impl SampleSet {
    pub fn new(
        sigma: Bandwidth,
        spacing: LatticeSpacing,
        tau: TruncationWindow,
        p: f64,
        kind: ValueKind,
    ) -> Result<Self> {
        if tau.dim() != sigma.dim() {
            return Err(Error::LengthMismatch {
                expected: sigma.dim(),
                got: tau.dim(),
            });
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Self {
            sigma,
            spacing,
            tau,
            p,
            kind,
            records: BTreeMap::new(),
        })
    }

    /// Adds one record, enforcing the set's invariants.
    pub fn insert(&mut self, k: MultiIndex, m: Vec<i64>, value: Complex) -> Result<()> {
        if k.dim() != self.dim() || m.len() != self.dim() {
            return Err(Error::InvalidRecord(format!(
                "record ({k}, {m:?}) does not have dimension {}",
                self.dim()
            )));
        }
        if !self.tau.contains(&m) {
            return Err(Error::InvalidRecord(format!(
                "node {m:?} lies outside the window {:?}",
                self.tau.radii()
            )));
        }
        if self.spacing == LatticeSpacing::Nyquist && !k.is_zero() {
            return Err(Error::InvalidRecord(format!(
                "theta = 1 sets hold only channel 0, got {k}"
            )));
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::InvalidRecord(format!(
                "non-finite value {value} at ({k}, {m:?})"
            )));
        }
        if self.kind == ValueKind::Real && value.im != 0.0 {
            return Err(Error::InvalidRecord(format!(
                "imaginary part {} in a real sample set at ({k}, {m:?})",
                value.im
            )));
        }
        match self.records.entry((k, m)) {
            std::collections::btree_map::Entry::Occupied(e) => Err(Error::InvalidRecord(format!(
                "duplicate record ({}, {:?})",
                e.key().0,
                e.key().1
            ))),
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn sigma(&self) -> &Bandwidth {
        &self.sigma
    }

    pub fn spacing(&self) -> LatticeSpacing {
        self.spacing
    }

    pub fn theta(&self) -> u8 {
        self.spacing.theta()
    }

    pub fn tau(&self) -> &TruncationWindow {
        &self.tau
    }

    /// Claimed `B^p` membership of the sampled function (metadata).
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, k: &MultiIndex, m: &[i64]) -> Option<Complex> {
        self.records.get(&(*k, m.to_vec())).copied()
    }

    /// Channels with at least one record.
    pub fn channels(&self) -> BTreeSet<MultiIndex> {
        self.records.keys().map(|(k, _)| *k).collect()
    }

    pub fn has_channel(&self, k: &MultiIndex) -> bool {
        self.records
            .range((*k, Vec::new())..)
            .next()
            .is_some_and(|((kk, _), _)| kk == k)
    }

    /// Records in canonical order.
    pub fn records(&self) -> impl Iterator<Item = (&MultiIndex, &[i64], Complex)> + '_ {
        self.records.iter().map(|((k, m), v)| (k, m.as_slice(), *v))
    }

    /// Channel `k` as a dense vector in window order; every node must be present.
    pub fn channel_values(&self, k: &MultiIndex) -> Result<Vec<Complex>> {
        let expected = self.tau.cardinality() as usize;
        let values: Vec<Complex> = self
            .records
            .range((*k, Vec::new())..)
            .take_while(|((kk, _), _)| kk == k)
            .map(|(_, v)| *v)
            .collect();
        if values.len() == expected {
            // Records are unique, inside the window and sorted like the window.
            return Ok(values);
        }
        let m = enum_window(&self.tau)?
            .into_iter()
            .find(|m| self.get(k, m).is_none())
            .unwrap_or_default();
        Err(Error::MissingRecord { k: *k, m })
    }

    /// `a * self + b * other`, record by record. Both sets must share lattice,
    /// window and keys.
    pub fn linear_combination(
        &self,
        a: Complex,
        other: &SampleSet,
        b: Complex,
    ) -> Result<SampleSet> {
        if self.sigma != other.sigma || self.spacing != other.spacing || self.tau != other.tau {
            return Err(Error::InvalidArgument(
                "sample sets live on different lattices".into(),
            ));
        }
        let kind = if self.kind == ValueKind::Real
            && other.kind == ValueKind::Real
            && a.im == 0.0
            && b.im == 0.0
        {
            ValueKind::Real
        } else {
            ValueKind::Complex
        };
        let mut out = SampleSet::new(
            self.sigma.clone(),
            self.spacing,
            self.tau.clone(),
            self.p.max(other.p),
            kind,
        )?;
        for ((k, m), v) in &self.records {
            let w = other.records.get(&(*k, m.clone())).ok_or_else(|| {
                Error::InvalidArgument(format!("record ({k}, {m:?}) missing from second set"))
            })?;
            let mut value = a * v + b * w;
            if kind == ValueKind::Real {
                value.im = 0.0;
            }
            out.insert(*k, m.clone(), value)?;
        }
        if out.len() != other.len() {
            return Err(Error::InvalidArgument(
                "second set has records absent from the first".into(),
            ));
        }
        Ok(out)
    }

    /// Reorders axes: axis `j` of the result is axis `perm[j]` of `self`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<SampleSet> {
        let n = self.dim();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of {n} axes"
            )));
        }
        let sigma = Bandwidth::new(perm.iter().map(|&p| self.sigma.values()[p]).collect())?;
        let tau = TruncationWindow::new(perm.iter().map(|&p| self.tau.radii()[p]).collect())?;
        let mut out = SampleSet::new(sigma, self.spacing, tau, self.p, self.kind)?;
        for ((k, m), v) in &self.records {
            let bits = k.bits();
            let k2 = MultiIndex::new(&perm.iter().map(|&p| bits[p]).collect::<Vec<_>>())?;
            let m2 = perm.iter().map(|&p| m[p]).collect();
            out.insert(k2, m2, *v)?;
        }
        Ok(out)
    }
}

/// Formats a real with 17 significant digits; parses back to the same bits.
fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_samples<W: Write>(samples: &SampleSet, mut out: W) -> Result<()> {
    writeln!(out, "dsamp {FORMAT_VERSION}")?;
    writeln!(out, "dim {}", samples.dim())?;
    writeln!(
        out,
        "sigma {}",
        join(samples.sigma.values().iter().map(|&s| fmt_real(s)))
    )?;
    writeln!(out, "theta {}", samples.theta())?;
    writeln!(out, "tau {}", join(samples.tau.radii()))?;
    writeln!(out, "p {}", fmt_real(samples.p))?;
    writeln!(out, "kind {}", samples.kind)?;
    for (k, m, v) in samples.records() {
        writeln!(out, "{k} {} {} {}", join(m), fmt_real(v.re), fmt_real(v.im))?;
    }
    out.flush()?;
    Ok(())
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<Option<String>> {
        match self.inner.next() {
            None => Ok(None),
            Some(line) => {
                self.number += 1;
                Ok(Some(line?))
            }
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            msg: msg.into(),
        }
    }

    /// Reads a header line `<key> <fields...>` and returns the fields.
    fn header(&mut self, key: &str) -> Result<Vec<String>> {
        let line = self.next_line()?.ok_or_else(|| Error::Parse {
            line: self.number + 1,
            msg: format!("missing `{key}` header line"),
        })?;
        let mut tokens = split_tokens(&line).map_err(|m| self.err(m))?;
        if tokens.first().map(String::as_str) != Some(key) {
            return Err(self.err(format!("expected `{key}` header, found {line:?}")));
        }
        tokens.remove(0);
        Ok(tokens)
    }
}

/// Splits on single spaces; empty fields (double or trailing spaces) are errors.
fn split_tokens(line: &str) -> std::result::Result<Vec<String>, String> {
    if !line.is_ascii() {
        return Err("non-ASCII input".into());
    }
    let tokens: Vec<String> = line.split(' ').map(str::to_owned).collect();
    if tokens.iter().any(String::is_empty) {
        return Err(format!(
            "fields must be separated by single spaces: {line:?}"
        ));
    }
    Ok(tokens)
}

fn parse_real(token: &str) -> std::result::Result<f64, String> {
    let v: f64 = token
        .parse()
        .map_err(|_| format!("{token:?} is not a number"))?;
    if !v.is_finite() {
        return Err(format!("non-finite value {token:?}"));
    }
    Ok(v)
}

pub fn read_samples<R: BufRead>(source: R) -> Result<SampleSet> {
    let mut lines = Lines {
        inner: source.lines(),
        number: 0,
    };

    let version = lines.header("dsamp")?;
    if version != [FORMAT_VERSION.to_string()] {
        return Err(lines.err(format!(
            "unsupported dsamp version {:?} (expected {FORMAT_VERSION})",
            version.join(" ")
        )));
    }

    let dim_fields = lines.header("dim")?;
    let n: usize = match dim_fields.as_slice() {
        [d] => d
            .parse()
            .map_err(|_| lines.err(format!("bad dimension {d:?}")))?,
        _ => return Err(lines.err("`dim` takes exactly one value")),
    };

    let sigma_fields = lines.header("sigma")?;
    if sigma_fields.len() != n {
        return Err(lines.err(format!(
            "`sigma` has {} values, dim is {n}",
            sigma_fields.len()
        )));
    }
    let sigma = sigma_fields
        .iter()
        .map(|t| parse_real(t))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|m| lines.err(m))?;
    let sigma = Bandwidth::new(sigma).map_err(|e| lines.err(e.to_string()))?;

    let theta_fields = lines.header("theta")?;
    let spacing = match theta_fields.as_slice() {
        [t] if t == "1" => LatticeSpacing::Nyquist,
        [t] if t == "2" => LatticeSpacing::Double,
        _ => return Err(lines.err("`theta` must be 1 or 2")),
    };

    let tau_fields = lines.header("tau")?;
    if tau_fields.len() != n {
        return Err(lines.err(format!("`tau` has {} values, dim is {n}", tau_fields.len())));
    }
    let tau = tau_fields
        .iter()
        .map(|t| t.parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| lines.err("`tau` entries must be nonnegative integers"))?;
    let tau = TruncationWindow::new(tau).map_err(|e| lines.err(e.to_string()))?;

    let p_fields = lines.header("p")?;
    let p = match p_fields.as_slice() {
        [t] => parse_real(t).map_err(|m| lines.err(m))?,
        _ => return Err(lines.err("`p` takes exactly one value")),
    };

    let kind_fields = lines.header("kind")?;
    let kind = match kind_fields.as_slice() {
        [t] if t == "real" => ValueKind::Real,
        [t] if t == "complex" => ValueKind::Complex,
        _ => return Err(lines.err("`kind` must be `real` or `complex`")),
    };

    let mut set =
        SampleSet::new(sigma, spacing, tau, p, kind).map_err(|e| lines.err(e.to_string()))?;

    while let Some(line) = lines.next_line()? {
        let tokens = split_tokens(&line).map_err(|m| lines.err(m))?;
        if tokens.len() != n + 3 {
            return Err(lines.err(format!(
                "record has {} fields, expected {} for dimension {n}",
                tokens.len(),
                n + 3
            )));
        }
        if tokens[0].len() != n {
            return Err(lines.err(format!(
                "multi-index {:?} has length {}, dimension is {n}",
                tokens[0],
                tokens[0].len()
            )));
        }
        let k: MultiIndex = tokens[0]
            .parse()
            .map_err(|e: Error| lines.err(e.to_string()))?;
        let m = tokens[1..=n]
            .iter()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| lines.err("node indices must be integers"))?;
        let re = parse_real(&tokens[n + 1]).map_err(|m| lines.err(m))?;
        let im = parse_real(&tokens[n + 2]).map_err(|m| lines.err(m))?;
        set.insert(k, m, Complex::new(re, im))
            .map_err(|e| lines.err(e.to_string()))?;
    }
    Ok(set)
}

/// Axis-wise coordinate lists of a tensor grid; points are enumerated
/// row-major (first axis slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Vec<f64>>,
}

impl Grid {
    pub fn new(axes: Vec<Vec<f64>>) -> Result<Self> {
        if axes.is_empty() || axes.iter().any(Vec::is_empty) {
            return Err(Error::EmptyGrid);
        }
        Ok(Self { axes })
    }

    /// Uniform `count`-point grid on `[lo, hi]` along each of `dim` axes.
    pub fn uniform(dim: usize, lo: f64, hi: f64, count: usize) -> Result<Self> {
        let axis: Vec<f64> = match count {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..count)
                .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                .collect(),
        };
        Self::new(vec![axis; dim])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    /// Coordinates of the point with flat (row-major) index `index`.
    pub fn point(&self, mut index: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.dim()];
        for (j, axis) in self.axes.iter().enumerate().rev() {
            x[j] = axis[index % axis.len()];
            index /= axis.len();
        }
        x
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// CSV table of a field on a grid: coordinates, then `re`, then `im` for
/// complex fields. Row-major, header included.
pub fn write_field<W: Write>(
    values: &[Complex],
    grid: &Grid,
    kind: ValueKind,
    mut out: W,
) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::InvalidArgument(format!(
            "field has {} values, grid has {} points",
            values.len(),
            grid.len()
        )));
    }
    let mut header: Vec<String> = (1..=grid.dim()).map(|j| format!("x{j}")).collect();
    header.push("re".into());
    if kind == ValueKind::Complex {
        header.push("im".into());
    }
    writeln!(out, "{}", header.join(","))?;
    for (x, v) in grid.points().zip(values) {
        let mut row: Vec<String> = x.iter().map(|&c| fmt_real(c)).collect();
        row.push(fmt_real(v.re));
        if kind == ValueKind::Complex {
            row.push(fmt_real(v.im));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enum_multi_indices;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn empty_set(n: usize, tau: u32) -> SampleSet {
        SampleSet::new(
            Bandwidth::pi(n).unwrap(),
            LatticeSpacing::Double,
            TruncationWindow::uniform(n, tau).unwrap(),
            1.0,
            ValueKind::Real,
        )
        .unwrap()
    }

    fn to_text(s: &SampleSet) -> String {
        let mut buf = Vec::new();
        write_samples(s, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn parse(text: &str) -> Result<SampleSet> {
        read_samples(text.as_bytes())
    }

    #[test]
    fn empty_set_is_header_only() {
        let text = to_text(&empty_set(2, 1));
        assert_eq!(text.lines().count(), 7);
        assert!(text.starts_with("dsamp 1\ndim 2\nsigma "));
        assert_eq!(parse(&text).unwrap(), empty_set(2, 1));
    }

    #[test]
    fn single_record_round_trips() {
        let mut s = empty_set(1, 0);
        s.insert(
            MultiIndex::zero(1).unwrap(),
            vec![0],
            Complex::new(1.0, 0.0),
        )
        .unwrap();
        let text = to_text(&s);
        assert!(text.ends_with("0 0 1.0000000000000000e0 0.0000000000000000e0\n"));
        assert_eq!(parse(&text).unwrap(), s);
    }

    #[test]
    fn full_set_line_count() {
        let mut s = empty_set(2, 2);
        for k in enum_multi_indices(2).unwrap() {
            for m in enum_window(s.tau()).unwrap() {
                s.insert(k, m, Complex::new(0.5, 0.0)).unwrap();
            }
        }
        assert_eq!(to_text(&s).lines().count(), 7 + 100);
    }

    #[test]
    fn malformed_inputs_are_rejected_with_line_numbers() {
        let header = "dsamp 1\ndim 1\nsigma 3.0\ntheta 2\ntau 1\np 1\nkind real\n";
        let cases = [
            (format!("{header}0 2 1.0 0.0\n"), 8, "outside"),
            (
                format!("{header}0 1 1.0 0.0\n1 0 0.0 0.0\n0 1 2.0 0.0\n"),
                10,
                "duplicate",
            ),
            (format!("{header}0 0 nan 0.0\n"), 8, "non-finite"),
            (format!("{header}00 0 1.0 0.0\n"), 8, "length"),
            (format!("{header}0 0 0 1.0 0.0\n"), 8, "fields"),
            (format!("{header}0 0 1.0 0.5\n"), 8, "imaginary"),
            (header.replace("dsamp 1", "dsamp 2"), 1, "version"),
            (header.replace("tau 1", "tau 1 1"), 5, "tau"),
            (header.replace("theta 2", "theta 3"), 4, "theta"),
            (header.replace("dim 1\n", ""), 2, "dim"),
            (format!("{header}0  0 1.0 0.0\n"), 8, "single spaces"),
        ];
        for (text, line, needle) in cases {
            match parse(&text) {
                Err(Error::Parse { line: got, msg }) => {
                    assert_eq!(got, line, "{needle}: {msg}");
                    assert!(msg.contains(needle), "expected {needle:?} in {msg:?}");
                }
                other => panic!("{needle}: expected parse error, got {other:?}"),
            }
        }
        let nyquist = "dsamp 1\ndim 1\nsigma 3.0\ntheta 1\ntau 1\np 1\nkind real\n1 0 1.0 0.0\n";
        assert!(matches!(parse(nyquist), Err(Error::Parse { line: 8, .. })));
    }

    #[test]
    fn channel_values_reports_missing_nodes() {
        let mut s = empty_set(1, 1);
        let k = MultiIndex::zero(1).unwrap();
        s.insert(k, vec![-1], Complex::new(1.0, 0.0)).unwrap();
        s.insert(k, vec![1], Complex::new(2.0, 0.0)).unwrap();
        match s.channel_values(&k) {
            Err(Error::MissingRecord { m, .. }) => assert_eq!(m, vec![0]),
            other => panic!("{other:?}"),
        }
        s.insert(k, vec![0], Complex::new(3.0, 0.0)).unwrap();
        let dense: Vec<f64> = s.channel_values(&k).unwrap().iter().map(|c| c.re).collect();
        assert_eq!(dense, vec![1.0, 3.0, 2.0]);
        assert!(s.has_channel(&k));
        assert!(!s.has_channel(&MultiIndex::ones(1).unwrap()));
    }

    #[test]
    fn field_export() {
        let grid = Grid::new(vec![vec![0.5]]).unwrap();
        let mut buf = Vec::new();
        write_field(&[Complex::new(2.0, 0.0)], &grid, ValueKind::Real, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().next(), Some("x1,re"));

        let grid = Grid::new(vec![vec![0.0, 1.0, 2.0], vec![-PI, 0.1, 0.2, 1.0 / 3.0]]).unwrap();
        let values: Vec<Complex> = (0..12).map(|i| Complex::new(i as f64, -1.0)).collect();
        let mut buf = Vec::new();
        write_field(&values, &grid, ValueKind::Complex, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<Vec<f64>> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0][..2], [0.0, -PI]);
        assert_eq!(rows[3][..2], [0.0, 1.0 / 3.0]);
        assert_eq!(rows[4][..2], [1.0, -PI]);
        assert_eq!(rows[11], vec![2.0, 1.0 / 3.0, 11.0, -1.0]);

        assert!(write_field(&values[..3], &grid, ValueKind::Real, Vec::new()).is_err());
        assert!(matches!(Grid::new(vec![vec![]]), Err(Error::EmptyGrid)));
    }

    #[test]
    fn permutation_and_combination() {
        let mut s = SampleSet::new(
            Bandwidth::new(vec![1.0, 2.0]).unwrap(),
            LatticeSpacing::Double,
            TruncationWindow::new(vec![1, 0]).unwrap(),
            2.0,
            ValueKind::Real,
        )
        .unwrap();
        let k10: MultiIndex = "10".parse().unwrap();
        s.insert(k10, vec![1, 0], Complex::new(4.0, 0.0)).unwrap();
        let t = s.permute_axes(&[1, 0]).unwrap();
        assert_eq!(t.sigma().values(), &[2.0, 1.0]);
        assert_eq!(t.tau().radii(), &[0, 1]);
        assert_eq!(
            t.get(&"01".parse().unwrap(), &[0, 1]),
            Some(Complex::new(4.0, 0.0))
        );
        assert!(s.permute_axes(&[0, 0]).is_err());

        let c = s
            .linear_combination(Complex::new(2.0, 0.0), &s, Complex::new(-0.5, 0.0))
            .unwrap();
        assert_eq!(c.get(&k10, &[1, 0]), Some(Complex::new(6.0, 0.0)));
    }

    fn arb_set() -> impl Strategy<Value = SampleSet> {
        (1usize..=3, any::<bool>(), any::<bool>()).prop_flat_map(|(n, double, complex)| {
            let sigma = proptest::collection::vec(0.01f64..100.0, n);
            let tau = proptest::collection::vec(0u32..3, n);
            let p = 1.0f64..10.0;
            (sigma, tau, p, proptest::collection::vec(any::<u64>(), 64)).prop_map(
                move |(sigma, tau, p, seeds)| {
                    let spacing = if double {
                        LatticeSpacing::Double
                    } else {
                        LatticeSpacing::Nyquist
                    };
                    let kind = if complex {
                        ValueKind::Complex
                    } else {
                        ValueKind::Real
                    };
                    let tau = TruncationWindow::new(tau).unwrap();
                    let mut set = SampleSet::new(
                        Bandwidth::new(sigma).unwrap(),
                        spacing,
                        tau.clone(),
                        p,
                        kind,
                    )
                    .unwrap();
                    let ks = if double {
                        enum_multi_indices(n).unwrap()
                    } else {
                        vec![MultiIndex::zero(n).unwrap()]
                    };
                    let nodes = enum_window(&tau).unwrap();
                    for (i, seed) in seeds.iter().enumerate() {
                        let k = ks[i % ks.len()];
                        let m = nodes[(*seed as usize) % nodes.len()].clone();
                        // Arbitrary finite bit patterns, including subnormals and -0.0.
                        let re = f64::from_bits(
                            seed.rotate_left(7) & !(0x7ffu64 << 52) | ((seed % 2000) << 52),
                        );
                        let im = if complex { -re * 0.75 } else { 0.0 };
                        let _ = set.insert(k, m, Complex::new(re, im));
                    }
                    set
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn write_then_read_is_identity(set in arb_set()) {
            let text = to_text(&set);
            let back = parse(&text).unwrap();
            for ((k1, m1, v1), (k2, m2, v2)) in set.records().zip(back.records()) {
                prop_assert_eq!((k1, m1), (k2, m2));
                prop_assert_eq!(v1.re.to_bits(), v2.re.to_bits());
                prop_assert_eq!(v1.im.to_bits(), v2.im.to_bits());
            }
            prop_assert_eq!(&back, &set);
            prop_assert_eq!(to_text(&back), text);
        }
    }
}
