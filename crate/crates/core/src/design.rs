//! Design data model, validation and CSV file I/O.
//!
//! A design is `n` points in the unit cube `[0, 1]^d`, stored row-major.
//! Files are header-bearing CSV: a header `x1,...,xd` followed by one point
//! per row, written with enough significant digits to round-trip exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Design<T> {
    n: usize,
    d: usize,
    points: Vec<T>,
}

impl<T: Scalar> Design<T> {
    /// Builds a design from row-major coordinates.
    ///
    /// Only the shape is checked here; range checks live in [`validate`] so
    /// that out-of-cube inputs can still be diagnosed.
    pub fn from_flat(n: usize, d: usize, points: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoData);
        }
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if points.len() != n * d {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates for a {n}x{d} design, got {}",
                n * d,
                points.len()
            )));
        }
        Ok(Self { n, d, points })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::NoData)?;
        let d = first.as_ref().len();
        let mut points = Vec::with_capacity(rows.len() * d);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != d {
                return Err(Error::RowWidth {
                    row: i + 1,
                    expected: d,
                    found: row.len(),
                });
            }
            points.extend_from_slice(row);
        }
        Self::from_flat(rows.len(), d, points)
    }

    /// `n` i.i.d. uniform points.
    pub fn random(n: usize, d: usize, rng: &mut SeededRng) -> Self {
        assert!(n >= 1 && d >= 1, "design needs n >= 1 and d >= 1");
        let points = (0..n * d).map(|_| T::lit(rng.uniform())).collect();
        Self { n, d, points }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.points.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[T] {
        &self.points
    }

    /// Replaces point `i` in place; the caller guarantees `y.len() == d`.
    pub(crate) fn replace_point(&mut self, i: usize, y: &[T]) {
        debug_assert_eq!(y.len(), self.d);
        self.points[i * self.d..(i + 1) * self.d].copy_from_slice(y);
    }

    /// Returns a new design with point `i` replaced by `y`.
    pub fn with_point(&self, i: usize, y: &[T]) -> Result<Self> {
        if i >= self.n {
            return Err(Error::InvalidArgument(format!(
                "point index {i} out of range for n = {}",
                self.n
            )));
        }
        if y.len() != self.d {
            return Err(Error::InvalidArgument(format!(
                "replacement point has {} coordinates, expected {}",
                y.len(),
                self.d
            )));
        }
        let mut out = self.clone();
        out.replace_point(i, y);
        Ok(out)
    }

    pub fn cast<U: Scalar>(&self) -> Design<U> {
        Design {
            n: self.n,
            d: self.d,
            points: self
                .points
                .iter()
                .map(|x| U::from_f64(x.to_f64().unwrap_or(f64::NAN)).unwrap_or(U::nan()))
                .collect(),
        }
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    /// `(row, col)` of every coordinate outside `[0, 1]` (NaN included).
    pub out_of_range: Vec<(usize, usize)>,
    /// Pairs `(i, j)`, `i < j`, of exactly equal points. Warnings only.
    pub duplicates: Vec<(usize, usize)>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.out_of_range.is_empty()
    }

    pub fn has_warnings(&self) -> bool {
        !self.duplicates.is_empty()
    }
}

pub fn validate<T: Scalar>(design: &Design<T>) -> Validation {
    let mut report = Validation::default();
    for (i, row) in design.rows().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            if !(x >= T::zero() && x <= T::one()) {
                report.out_of_range.push((i, k));
            }
        }
    }
    for i in 0..design.n() {
        for j in i + 1..design.n() {
            if design.point(i) == design.point(j) {
                report.duplicates.push((i, j));
            }
        }
    }
    report
}

/// Renders a design as CSV text.
pub fn to_csv_string<T: Scalar>(design: &Design<T>) -> String {
    let prec = T::SIG_DIGITS - 1;
    let mut out = String::new();
    let header: Vec<String> = (1..=design.d()).map(|k| format!("x{k}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in design.rows() {
        for (k, x) in row.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(out, "{x:.prec$e}");
        }
        out.push('\n');
    }
    out
}

/// Parses CSV text produced by [`to_csv_string`] (or any compatible tool).
///
/// Rows are numbered from 1, counting data rows after the header. Blank lines
/// are skipped.
pub fn parse_csv<T: Scalar>(text: &str) -> Result<Design<T>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(Error::NoData)?;
    let d = header.split(',').count();
    let mut points = Vec::new();
    let mut n = 0;
    for (idx, line) in lines.enumerate() {
        let row = idx + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != d {
            return Err(Error::RowWidth {
                row,
                expected: d,
                found: fields.len(),
            });
        }
        for (k, tok) in fields.iter().enumerate() {
            let x: T = tok.parse().map_err(|_| Error::NonNumeric {
                row,
                col: k + 1,
                token: tok.to_string(),
            })?;
            if !(x >= T::zero() && x <= T::one()) {
                return Err(Error::OutOfRange {
                    row,
                    col: k + 1,
                    value: tok.to_string(),
                });
            }
            points.push(x);
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::NoData);
    }
    Design::from_flat(n, d, points)
}

pub fn read_design<T: Scalar>(path: impl AsRef<Path>) -> Result<Design<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv(&text)
}

pub fn write_design<T: Scalar>(design: &Design<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_csv_string(design)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
