//! Piece-space models.
//!
//! Two models are provided: the real vector space `R^n` under the L1, L2 or
//! L∞ norm, and the reduced-word ℝ-tree that stands in for the universal
//! ℝ-tree. A tree point is the unique geodesic from the root, written as a
//! sequence of `(branch label, length)` segments with adjacent labels
//! distinct; staying on the same label means continuing straight.

use std::fmt;

use crate::scalar::{NumericMode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "L1",
            Norm::L2 => "L2",
            Norm::LInf => "Linf",
        })
    }
}

impl std::str::FromStr for Norm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L1" | "l1" => Ok(Norm::L1),
            "L2" | "l2" => Ok(Norm::L2),
            "Linf" | "LInf" | "linf" | "L∞" => Ok(Norm::LInf),
            other => Err(format!("unknown norm `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneSpec {
    pub dim: usize,
    pub norm: Norm,
}

impl PlaneSpec {
    pub const fn new(dim: usize, norm: Norm) -> Self {
        PlaneSpec { dim, norm }
    }

    pub const fn l1_plane() -> Self {
        PlaneSpec::new(2, Norm::L1)
    }
}

impl fmt::Display for PlaneSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{}/{}", self.dim, self.norm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceSpec {
    Plane(PlaneSpec),
    Tree,
}

impl From<PlaneSpec> for PieceSpec {
    fn from(spec: PlaneSpec) -> Self {
        PieceSpec::Plane(spec)
    }
}

impl fmt::Display for PieceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceSpec::Plane(p) => p.fmt(f),
            PieceSpec::Tree => f.write_str("tree"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PieceError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid tree word: {0}")]
    InvalidTreeWord(String),
    #[error("point does not belong to a {0} piece")]
    WrongModel(PieceSpec),
    #[error("the L2 norm is not available in exact mode")]
    ExactL2,
    #[error("plane dimension must be at least 1")]
    ZeroDimension,
    #[error("geodesic parameter out of range")]
    OutOfRange,
    #[error("points are equal")]
    EqualPoints,
}

/// A point of the reduced-word tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeWord<S> {
    letters: Vec<(String, S)>,
}

impl<S: Scalar> TreeWord<S> {
    /// The root.
    pub fn root() -> Self {
        TreeWord { letters: Vec::new() }
    }

    /// Builds a word that must already be reduced.
    pub fn new(letters: Vec<(String, S)>) -> Result<Self, PieceError> {
        for (i, (label, len)) in letters.iter().enumerate() {
            if !(S::zero().definitely_lt(len)) {
                return Err(PieceError::InvalidTreeWord(format!(
                    "segment {i} (`{label}`) has non-positive length"
                )));
            }
            if i > 0 && letters[i - 1].0 == *label {
                return Err(PieceError::InvalidTreeWord(format!(
                    "segments {} and {i} repeat label `{label}`",
                    i - 1
                )));
            }
        }
        Ok(TreeWord { letters })
    }

    /// Builds a word, merging repeated labels and dropping empty segments.
    pub fn reduced(letters: impl IntoIterator<Item = (String, S)>) -> Self {
        let mut out: Vec<(String, S)> = Vec::new();
        for (label, len) in letters {
            if len.is_negligible() {
                continue;
            }
            match out.last_mut() {
                Some((last, acc)) if *last == label => *acc = acc.clone() + len,
                _ => out.push((label, len)),
            }
        }
        TreeWord { letters: out }
    }

    pub fn single(label: impl Into<String>, len: S) -> Self {
        TreeWord::reduced([(label.into(), len)])
    }

    pub fn letters(&self) -> &[(String, S)] {
        &self.letters
    }

    pub fn is_root(&self) -> bool {
        self.letters.is_empty()
    }

    /// Distance from the root.
    pub fn depth(&self) -> S {
        self.letters
            .iter()
            .fold(S::zero(), |acc, (_, len)| acc + len.clone())
    }

    /// Depth of the last common point of the geodesics from the root.
    pub fn common_depth(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for ((la, a), (lb, b)) in self.letters.iter().zip(&other.letters) {
            if la != lb {
                break;
            }
            if a.approx_eq(b) {
                acc = acc + a.clone();
                continue;
            }
            return acc + a.clone().min_of(b.clone());
        }
        acc
    }

    /// The point at depth `t` on the geodesic from the root to `self`.
    pub fn truncate(&self, t: &S) -> Self {
        let mut rest = t.clone();
        let mut out = Vec::new();
        for (label, len) in &self.letters {
            if rest.is_negligible() {
                break;
            }
            if len.approx_le(&rest) {
                out.push((label.clone(), len.clone()));
                rest = rest - len.clone();
            } else {
                out.push((label.clone(), rest.clone()));
                break;
            }
        }
        TreeWord::reduced(out)
    }

    pub fn dist(&self, other: &Self) -> S {
        let c = self.common_depth(other);
        self.depth() + other.depth() - c.clone() - c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PiecePoint<S> {
    Plane(Vec<S>),
    Tree(TreeWord<S>),
}

impl<S: Scalar> PiecePoint<S> {
    pub fn plane(coords: impl IntoIterator<Item = S>) -> Self {
        PiecePoint::Plane(coords.into_iter().collect())
    }

    pub fn plane_ints(coords: &[i64]) -> Self {
        PiecePoint::Plane(coords.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn tree(word: TreeWord<S>) -> Self {
        PiecePoint::Tree(word)
    }

    pub fn root() -> Self {
        PiecePoint::Tree(TreeWord::root())
    }

    pub fn as_plane(&self) -> Option<&[S]> {
        match self {
            PiecePoint::Plane(c) => Some(c),
            PiecePoint::Tree(_) => None,
        }
    }

    pub fn as_tree(&self) -> Option<&TreeWord<S>> {
        match self {
            PiecePoint::Tree(w) => Some(w),
            PiecePoint::Plane(_) => None,
        }
    }

    /// Every scalar carried by the point.
    pub fn scalars(&self) -> Vec<&S> {
        match self {
            PiecePoint::Plane(c) => c.iter().collect(),
            PiecePoint::Tree(w) => w.letters.iter().map(|(_, l)| l).collect(),
        }
    }

    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> PiecePoint<T> {
        match self {
            PiecePoint::Plane(c) => PiecePoint::Plane(c.iter().map(f).collect()),
            PiecePoint::Tree(w) => PiecePoint::Tree(TreeWord::reduced(
                w.letters.iter().map(|(l, s)| (l.clone(), f(s))),
            )),
        }
    }
}

/// Which geodesic to follow in pieces whose geodesics are not unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeodesicSelector {
    /// L1: move coordinate 1 fully, then coordinate 2, and so on.
    #[default]
    CoordinateOrder,
    /// L1: move the last coordinate first.
    ReversedOrder,
}

/// Orbit representative of an ordered pair of distinct points under the
/// isometry group of the piece.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalPair<S> {
    pub spec: PieceSpec,
    pub from: PiecePoint<S>,
    pub to: PiecePoint<S>,
}

impl<S: Scalar> CanonicalPair<S> {
    pub fn dist(&self) -> S {
        piece_dist(&self.spec, &self.from, &self.to).expect("canonical pairs are valid")
    }
}

/// Checks that `spec` is usable in the numeric mode of `S`.
pub fn check_spec<S: Scalar>(spec: &PieceSpec) -> Result<(), PieceError> {
    match spec {
        PieceSpec::Plane(p) if p.dim == 0 => Err(PieceError::ZeroDimension),
        PieceSpec::Plane(p) if p.norm == Norm::L2 && S::MODE == NumericMode::Exact => {
            Err(PieceError::ExactL2)
        }
        _ => Ok(()),
    }
}

/// Checks that `x` is a point of `spec`.
pub fn check_point<S: Scalar>(spec: &PieceSpec, x: &PiecePoint<S>) -> Result<(), PieceError> {
    check_spec::<S>(spec)?;
    match (spec, x) {
        (PieceSpec::Plane(p), PiecePoint::Plane(c)) => {
            if c.len() == p.dim {
                Ok(())
            } else {
                Err(PieceError::DimensionMismatch { expected: p.dim, got: c.len() })
            }
        }
        (PieceSpec::Tree, PiecePoint::Tree(w)) => TreeWord::new(w.letters.clone()).map(|_| ()),
        _ => Err(PieceError::WrongModel(*spec)),
    }
}

fn plane_pair<'a, S: Scalar>(
    spec: &PieceSpec,
    x: &'a PiecePoint<S>,
    y: &'a PiecePoint<S>,
) -> Result<(PlaneSpec, &'a [S], &'a [S]), PieceError> {
    check_point(spec, x)?;
    check_point(spec, y)?;
    match (spec, x, y) {
        (PieceSpec::Plane(p), PiecePoint::Plane(a), PiecePoint::Plane(b)) => Ok((*p, a, b)),
        _ => Err(PieceError::WrongModel(*spec)),
    }
}

fn norm_of<S: Scalar>(norm: Norm, delta: impl Iterator<Item = S>) -> Result<S, PieceError> {
    match norm {
        Norm::L1 => Ok(delta.fold(S::zero(), |acc, d| acc + d.abs())),
        Norm::LInf => Ok(delta.fold(S::zero(), |acc, d| acc.max_of(d.abs()))),
        Norm::L2 => delta
            .fold(S::zero(), |acc, d| acc + d.clone() * d)
            .sqrt()
            .ok_or(PieceError::ExactL2),
    }
}

/// The model metric of a piece.
pub fn piece_dist<S: Scalar>(
    spec: &PieceSpec,
    x: &PiecePoint<S>,
    y: &PiecePoint<S>,
) -> Result<S, PieceError> {
    match spec {
        PieceSpec::Plane(_) => {
            let (p, a, b) = plane_pair(spec, x, y)?;
            norm_of(p.norm, a.iter().zip(b).map(|(u, v)| v.clone() - u.clone()))
        }
        PieceSpec::Tree => match (x, y) {
            (PiecePoint::Tree(a), PiecePoint::Tree(b)) => {
                check_point(spec, x)?;
                check_point(spec, y)?;
                Ok(a.dist(b))
            }
            _ => Err(PieceError::WrongModel(*spec)),
        },
    }
}

/// Equality of points in the mode's sense (exact, or within tolerance).
pub fn same_point<S: Scalar>(spec: &PieceSpec, x: &PiecePoint<S>, y: &PiecePoint<S>) -> bool {
    match (x, y) {
        (PiecePoint::Plane(a), PiecePoint::Plane(b)) => {
            a.len() == b.len() && a.iter().zip(b).all(|(u, v)| u.approx_eq(v))
        }
        (PiecePoint::Tree(_), PiecePoint::Tree(_)) => piece_dist(spec, x, y)
            .map(|d| d.is_negligible())
            .unwrap_or(false),
        _ => false,
    }
}

/// Point at distance `u` from `x` on the canonical geodesic to `y`.
pub fn piece_geodesic_eval<S: Scalar>(
    spec: &PieceSpec,
    x: &PiecePoint<S>,
    y: &PiecePoint<S>,
    u: &S,
) -> Result<PiecePoint<S>, PieceError> {
    piece_geodesic_eval_with(spec, x, y, u, GeodesicSelector::CoordinateOrder)
}

pub fn piece_geodesic_eval_with<S: Scalar>(
    spec: &PieceSpec,
    x: &PiecePoint<S>,
    y: &PiecePoint<S>,
    u: &S,
    selector: GeodesicSelector,
) -> Result<PiecePoint<S>, PieceError> {
    let d = piece_dist(spec, x, y)?;
    if !(S::zero().approx_le(u) && u.approx_le(&d)) {
        return Err(PieceError::OutOfRange);
    }
    if u.is_negligible() {
        return Ok(x.clone());
    }
    if u.approx_eq(&d) {
        return Ok(y.clone());
    }
    match spec {
        PieceSpec::Plane(_) => {
            let (p, a, b) = plane_pair(spec, x, y)?;
            match p.norm {
                // Straight segments are geodesics for every norm.
                Norm::L2 | Norm::LInf => {
                    let ratio = u.clone() / d;
                    Ok(PiecePoint::Plane(
                        a.iter()
                            .zip(b)
                            .map(|(s, t)| s.clone() + (t.clone() - s.clone()) * ratio.clone())
                            .collect(),
                    ))
                }
                Norm::L1 => {
                    let order: Vec<usize> = match selector {
                        GeodesicSelector::CoordinateOrder => (0..p.dim).collect(),
                        GeodesicSelector::ReversedOrder => (0..p.dim).rev().collect(),
                    };
                    let mut out = a.to_vec();
                    let mut budget = u.clone();
                    for i in order {
                        let delta = b[i].clone() - a[i].clone();
                        let step = delta.abs();
                        if step.approx_le(&budget) {
                            out[i] = b[i].clone();
                            budget = budget - step;
                        } else {
                            let dir = if delta < S::zero() { -budget.clone() } else { budget.clone() };
                            out[i] = a[i].clone() + dir;
                            break;
                        }
                    }
                    Ok(PiecePoint::Plane(out))
                }
            }
        }
        PieceSpec::Tree => {
            let (PiecePoint::Tree(a), PiecePoint::Tree(b)) = (x, y) else {
                return Err(PieceError::WrongModel(*spec));
            };
            let c = a.common_depth(b);
            let back = a.depth() - c.clone();
            if u.approx_le(&back) {
                Ok(PiecePoint::Tree(a.truncate(&(a.depth() - u.clone()))))
            } else {
                Ok(PiecePoint::Tree(b.truncate(&(c + u.clone() - back))))
            }
        }
    }
}

/// Orbit representative of `(x, y)` under the diagonal isometry action.
pub fn canonical_pair<S: Scalar>(
    spec: &PieceSpec,
    x: &PiecePoint<S>,
    y: &PiecePoint<S>,
) -> Result<CanonicalPair<S>, PieceError> {
    let d = piece_dist(spec, x, y)?;
    if d.is_negligible() {
        return Err(PieceError::EqualPoints);
    }
    let (from, to) = match spec {
        PieceSpec::Tree => (PiecePoint::root(), PiecePoint::Tree(TreeWord::single("0", d))),
        PieceSpec::Plane(p) => {
            let origin = PiecePoint::Plane(vec![S::zero(); p.dim]);
            let to = match p.norm {
                Norm::L2 => {
                    let mut v = vec![S::zero(); p.dim];
                    v[0] = d;
                    v
                }
                Norm::L1 | Norm::LInf => {
                    let (_, a, b) = plane_pair(spec, x, y)?;
                    let mut v: Vec<S> =
                        a.iter().zip(b).map(|(s, t)| (t.clone() - s.clone()).abs()).collect();
                    v.sort_by(|s, t| t.partial_cmp(s).expect("comparable scalars"));
                    v
                }
            };
            (origin, PiecePoint::Plane(to))
        }
    };
    Ok(CanonicalPair { spec: *spec, from, to })
}

/// Whether the two pairs lie in the same isometry orbit.
pub fn same_orbit<S: Scalar>(
    spec: &PieceSpec,
    first: (&PiecePoint<S>, &PiecePoint<S>),
    second: (&PiecePoint<S>, &PiecePoint<S>),
) -> Result<bool, PieceError> {
    let a = canonical_pair(spec, first.0, first.1)?;
    let b = canonical_pair(spec, second.0, second.1)?;
    Ok(same_point(spec, &a.to, &b.to) && same_point(spec, &a.from, &b.from))
}

/// Representative of the single point orbit of a homogeneous piece.
pub fn base_point<S: Scalar>(spec: &PieceSpec) -> PiecePoint<S> {
    match spec {
        PieceSpec::Plane(p) => PiecePoint::Plane(vec![S::zero(); p.dim]),
        PieceSpec::Tree => PiecePoint::root(),
    }
}
