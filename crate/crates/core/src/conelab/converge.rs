//! Comparing `dist_n / n` in `Z² * Z` with the tree-product metric.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::compile::{compile, junction_bound, scale_is_aligned, CompileError, CompileRegistry};
use super::group::group_dist;
use crate::scalar::{Rational, Scalar};
use crate::treeprod::{dist, Descriptor};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub pair_id: usize,
    pub n: u64,
    /// Word distance of the compiled elements.
    pub dist: u64,
    /// `dist / n`.
    pub scaled: Rational,
    /// Tree-product distance.
    pub d: Rational,
    pub abs_error: Rational,
    pub bound_c: u64,
    /// Whether `n` clears every denominator, so that the bound is claimed.
    pub aligned: bool,
}

impl ConvergenceRow {
    /// `abs_error · n`, an integer when the row is aligned.
    pub fn error_times_n(&self) -> Rational {
        &self.abs_error * Rational::from_integer(BigInt::from(self.n))
    }

    pub fn within_bound(&self) -> bool {
        self.error_times_n() <= Rational::from_integer(BigInt::from(self.bound_c))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub max_error_times_n: Rational,
    /// Per pair, the least-squares slope of `ln(error)` against `ln(n)` over
    /// rows with nonzero error, when there are at least two.
    pub slopes: Vec<(usize, Option<f64>)>,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str = "pair_id,n,dist,scaled,D,abs_error,bound_C";

    /// One row per pair and scale, rationals as decimal strings.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.pair_id,
                r.n,
                r.dist,
                r.scaled.to_decimal_string(),
                r.d.to_decimal_string(),
                r.abs_error.to_decimal_string(),
                r.bound_c
            ));
        }
        out
    }

    pub fn violations(&self) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter(|r| r.aligned && !r.within_bound())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConvergeError {
    #[error("no scales given")]
    EmptyScales,
    #[error(transparent)]
    Compile(#[from] CompileError),
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn pair_rows(
    pair_id: usize,
    f: &Descriptor<Rational>,
    g: &Descriptor<Rational>,
    scales: &[u64],
) -> Result<Vec<ConvergenceRow>, ConvergeError> {
    let reg = CompileRegistry::for_descriptors([f, g])?;
    let bound_c = junction_bound(f, &reg)? + junction_bound(g, &reg)?;
    let d = dist(f, g);
    scales
        .iter()
        .map(|&n| {
            let w = group_dist(&compile(f, n, &reg)?, &compile(g, n, &reg)?);
            let scaled = Rational::new(BigInt::from(w), BigInt::from(n));
            let abs_error = Signed::abs(&(&scaled - &d));
            let aligned = scale_is_aligned(f, n) && scale_is_aligned(g, n);
            Ok(ConvergenceRow { pair_id, n, dist: w, scaled, d: d.clone(), abs_error, bound_c, aligned })
        })
        .collect()
}

pub fn converge_check(
    f: &Descriptor<Rational>,
    g: &Descriptor<Rational>,
    scales: &[u64],
) -> Result<ConvergenceReport, ConvergeError> {
    converge_corpus(&[(f.clone(), g.clone())], scales)
}

/// Rows for every pair and scale, each pair with its own registry.
pub fn converge_corpus(
    pairs: &[(Descriptor<Rational>, Descriptor<Rational>)],
    scales: &[u64],
) -> Result<ConvergenceReport, ConvergeError> {
    if scales.is_empty() {
        return Err(ConvergeError::EmptyScales);
    }
    let mut rows = Vec::new();
    let mut slopes = Vec::new();
    for (id, (f, g)) in pairs.iter().enumerate() {
        let pr = pair_rows(id, f, g, scales)?;
        let pts: Vec<(f64, f64)> = pr
            .iter()
            .filter(|r| !r.abs_error.is_zero())
            .map(|r| ((r.n as f64).ln(), r.abs_error.to_f64().ln()))
            .collect();
        slopes.push((id, fit_slope(&pts)));
        rows.extend(pr);
    }
    let max_error_times_n = rows.iter().map(ConvergenceRow::error_times_n).max().unwrap_or_else(<Rational as Zero>::zero);
    Ok(ConvergenceReport { rows, max_error_times_n, slopes })
}
