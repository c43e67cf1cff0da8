//! Points of the tree product and its metric.
//!
//! A point is a finite [`Descriptor`]: the list of maximal pieces (or
//! transversal-tree segments) crossed by a geodesic from the base point,
//! each recorded as an ordered pair of distinct entry/exit points. The
//! empty descriptor is the base point.

use std::fmt;

use crate::pieces::{
    check_point, piece_dist, piece_geodesic_eval_with, same_point, GeodesicSelector, PieceError,
    PiecePoint, PieceSpec, PlaneSpec,
};
use crate::scalar::Scalar;

/// Which piece model a step lives in. Plane copies are told apart by their
/// label; the transversal tree is a single model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    Tree,
    Piece { spec: PlaneSpec, copy: String },
}

impl Alpha {
    pub fn piece(spec: PlaneSpec, copy: impl Into<String>) -> Self {
        Alpha::Piece { spec, copy: copy.into() }
    }

    pub fn spec(&self) -> PieceSpec {
        match self {
            Alpha::Tree => PieceSpec::Tree,
            Alpha::Piece { spec, .. } => PieceSpec::Plane(*spec),
        }
    }

    pub fn is_tree(&self) -> bool {
        matches!(self, Alpha::Tree)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Tree => f.write_str("tree"),
            Alpha::Piece { spec, copy } => write!(f, "{spec}#{copy}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step<S> {
    alpha: Alpha,
    entry: PiecePoint<S>,
    exit: PiecePoint<S>,
    length: S,
}

impl<S: Scalar> Step<S> {
    pub fn new(alpha: Alpha, entry: PiecePoint<S>, exit: PiecePoint<S>) -> Result<Self, PieceError> {
        let spec = alpha.spec();
        check_point(&spec, &entry)?;
        check_point(&spec, &exit)?;
        let length = piece_dist(&spec, &entry, &exit)?;
        if length.is_negligible() {
            return Err(PieceError::EqualPoints);
        }
        Ok(Step { alpha, entry, exit, length })
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn spec(&self) -> PieceSpec {
        self.alpha.spec()
    }

    pub fn entry(&self) -> &PiecePoint<S> {
        &self.entry
    }

    pub fn exit(&self) -> &PiecePoint<S> {
        &self.exit
    }

    pub fn length(&self) -> &S {
        &self.length
    }

    pub fn reversed(&self) -> Self {
        Step {
            alpha: self.alpha.clone(),
            entry: self.exit.clone(),
            exit: self.entry.clone(),
            length: self.length.clone(),
        }
    }

    /// Equal values of the underlying function (up to the mode's tolerance).
    pub fn same_as(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && same_point(&self.spec(), &self.entry, &other.entry)
            && same_point(&self.spec(), &self.exit, &other.exit)
    }

    /// Same piece entered through the same point.
    pub fn shares_entry(&self, other: &Self) -> bool {
        self.alpha == other.alpha && same_point(&self.spec(), &self.entry, &other.entry)
    }

    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Result<Step<T>, PieceError> {
        Step::new(self.alpha.clone(), self.entry.map_scalars(f), self.exit.map_scalars(f))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    /// The step is not a pair of distinct points of its piece.
    InvalidStep(PieceError),
    /// Two consecutive values of the form `(x1, x2), (x2, x3)`.
    FakeExit,
    /// A value immediately followed by its own reverse.
    Backtracking,
}

impl ViolationKind {
    /// The defining condition that fails.
    pub fn condition(&self) -> &'static str {
        match self {
            ViolationKind::InvalidStep(PieceError::EqualPoints) => "Ω",
            ViolationKind::InvalidStep(_) => "Π3",
            ViolationKind::FakeExit => "Π4",
            ViolationKind::Backtracking => "Π5",
        }
    }
}

/// First failing condition of a candidate descriptor. For junction
/// violations, `index` is the step that starts after the junction.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::InvalidStep(e) => {
                write!(f, "{} violation at step {}: {e}", self.kind.condition(), self.index)
            }
            ViolationKind::FakeExit => {
                write!(f, "Π4 violation (no fake exits) at junction {}", self.index)
            }
            ViolationKind::Backtracking => {
                write!(f, "Π5 violation (no backtracking) at junction {}", self.index)
            }
        }
    }
}

impl std::error::Error for Violation {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DescriptorError {
    #[error("parameter out of range")]
    OutOfRange,
    #[error(transparent)]
    Piece(#[from] PieceError),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

fn junction_violation<S: Scalar>(prev: &Step<S>, next: &Step<S>) -> Option<ViolationKind> {
    if prev.alpha == next.alpha && same_point(&prev.spec(), &prev.exit, &next.entry) {
        return Some(ViolationKind::FakeExit);
    }
    // Only adjacent values can coincide with their mirror image around a
    // break point; interior points never do.
    if next.same_as(&prev.reversed()) {
        return Some(ViolationKind::Backtracking);
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor<S> {
    steps: Vec<Step<S>>,
}

impl<S: Scalar> Default for Descriptor<S> {
    fn default() -> Self {
        Descriptor::empty()
    }
}

impl<S: Scalar> Descriptor<S> {
    /// The base point.
    pub fn empty() -> Self {
        Descriptor { steps: Vec::new() }
    }

    pub fn new(steps: Vec<Step<S>>) -> Result<Self, Violation> {
        let d = Descriptor { steps };
        d.validate()?;
        Ok(d)
    }

    /// Builds and validates a descriptor from raw `(alpha, entry, exit)`.
    pub fn from_parts(
        parts: impl IntoIterator<Item = (Alpha, PiecePoint<S>, PiecePoint<S>)>,
    ) -> Result<Self, Violation> {
        let steps = parts
            .into_iter()
            .enumerate()
            .map(|(index, (alpha, entry, exit))| {
                Step::new(alpha, entry, exit)
                    .map_err(|e| Violation { index, kind: ViolationKind::InvalidStep(e) })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Descriptor::new(steps)
    }

    pub fn from_steps_unchecked(steps: Vec<Step<S>>) -> Self {
        Descriptor { steps }
    }

    /// The single-step descriptor `C_(x,y)`.
    pub fn single_step(alpha: Alpha, x: PiecePoint<S>, y: PiecePoint<S>) -> Result<Self, PieceError> {
        Ok(Descriptor { steps: vec![Step::new(alpha, x, y)?] })
    }

    /// Checks the junction conditions. Step-level conditions hold by
    /// construction of [`Step`].
    pub fn validate(&self) -> Result<(), Violation> {
        for (i, pair) in self.steps.windows(2).enumerate() {
            if let Some(kind) = junction_violation(&pair[0], &pair[1]) {
                return Err(Violation { index: i + 1, kind });
            }
        }
        Ok(())
    }

    pub fn steps(&self) -> &[Step<S>] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step<S>> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_length(&self) -> S {
        self.steps
            .iter()
            .fold(S::zero(), |acc, s| acc + s.length.clone())
    }

    /// `0 = b_0 < b_1 < ... < b_k = d(f)`.
    pub fn break_points(&self) -> Vec<S> {
        let mut out = vec![S::zero()];
        let mut acc = S::zero();
        for s in &self.steps {
            acc = acc + s.length.clone();
            out.push(acc.clone());
        }
        out
    }

    /// Step-wise equality up to the mode's tolerance.
    pub fn same_as(&self, other: &Self) -> bool {
        self.steps.len() == other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|(a, b)| a.same_as(b))
    }

    /// The same geodesic walked backwards.
    pub fn reverse(&self) -> Self {
        Descriptor { steps: self.steps.iter().rev().map(Step::reversed).collect() }
    }

    /// Steps `from..`, re-based at zero.
    pub fn suffix(&self, from: usize) -> Self {
        Descriptor { steps: self.steps[from.min(self.steps.len())..].to_vec() }
    }

    /// Steps `..to`.
    pub fn prefix(&self, to: usize) -> Self {
        Descriptor { steps: self.steps[..to.min(self.steps.len())].to_vec() }
    }

    /// The point at distance `t` from the base point along the canonical
    /// geodesic to `self`.
    pub fn restrict_prefix(&self, t: &S) -> Result<Self, DescriptorError> {
        self.restrict_prefix_with(t, GeodesicSelector::CoordinateOrder)
    }

    pub fn restrict_prefix_with(&self, t: &S, selector: GeodesicSelector) -> Result<Self, DescriptorError> {
        let d = self.total_length();
        if !(S::zero().approx_le(t) && t.approx_le(&d)) {
            return Err(DescriptorError::OutOfRange);
        }
        let mut out = Vec::new();
        let mut acc = S::zero();
        for step in &self.steps {
            let remaining = t.clone() - acc.clone();
            if remaining.is_negligible() {
                break;
            }
            if step.length.approx_le(&remaining) {
                out.push(step.clone());
                acc = acc + step.length.clone();
                continue;
            }
            let spec = step.spec();
            let p = piece_geodesic_eval_with(&spec, &step.entry, &step.exit, &remaining, selector)?;
            out.push(Step::new(step.alpha.clone(), step.entry.clone(), p)?);
            break;
        }
        Ok(Descriptor { steps: out })
    }

    /// `f ⊔ g`, when the junction keeps the result valid.
    pub fn concat_raw(&self, other: &Self) -> Result<Self, Violation> {
        if let (Some(a), Some(b)) = (self.steps.last(), other.steps.first()) {
            if let Some(kind) = junction_violation(a, b) {
                return Err(Violation { index: self.steps.len(), kind });
            }
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(Descriptor { steps })
    }

    /// Concatenation followed by merging `(x1,x2)(x2,x3)` into `(x1,x3)` at
    /// the junction, or cancelling both when `x3 = x1`, until the junction
    /// is clean.
    pub fn concat_normalized(&self, other: &Self) -> Self {
        let mut left = self.steps.clone();
        let mut right: std::collections::VecDeque<Step<S>> = other.steps.iter().cloned().collect();
        while let (Some(a), Some(b)) = (left.last(), right.front()) {
            if !(a.alpha == b.alpha && same_point(&a.spec(), &a.exit, &b.entry)) {
                break;
            }
            let a = left.pop().expect("checked");
            let b = right.pop_front().expect("checked");
            match Step::new(a.alpha, a.entry, b.exit) {
                Ok(merged) => {
                    left.push(merged);
                    break;
                }
                Err(PieceError::EqualPoints) => continue,
                Err(e) => unreachable!("merging valid steps of one piece: {e}"),
            }
        }
        left.extend(right);
        Descriptor { steps: left }
    }

    /// Whether every step lies in the transversal tree through the base point.
    pub fn is_transversal_base(&self) -> bool {
        self.steps.iter().all(|s| s.alpha.is_tree())
    }

    pub fn push(&mut self, step: Step<S>) -> Result<(), Violation> {
        if let Some(last) = self.steps.last() {
            if let Some(kind) = junction_violation(last, &step) {
                return Err(Violation { index: self.steps.len(), kind });
            }
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<Descriptor<T>, DescriptorError> {
        let steps = self
            .steps
            .iter()
            .map(|s| s.map_scalars(&f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Descriptor::new(steps)?)
    }
}

/// Divergence data of an ordered pair `(f, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Divergence<S> {
    /// `div(f, g)`.
    pub s: S,
    /// Number of leading steps the two descriptors share.
    pub index: usize,
    pub case: DivergenceCase<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DivergenceCase<S> {
    /// Right after `s` both enter the same piece (or tree) through the same
    /// point and leave it through different points.
    Case1 {
        alpha: Alpha,
        entry: PiecePoint<S>,
        /// Exit of `f` from the shared piece.
        y_f: PiecePoint<S>,
        /// Exit of `g` from the shared piece.
        y_g: PiecePoint<S>,
        /// Parameter at which `f` leaves the shared piece.
        a_f: S,
        /// Parameter at which `g` leaves the shared piece.
        a_g: S,
    },
    Case2,
}

impl<S> DivergenceCase<S> {
    pub fn is_case1(&self) -> bool {
        matches!(self, DivergenceCase::Case1 { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            DivergenceCase::Case1 { .. } => "CASE1",
            DivergenceCase::Case2 => "CASE2",
        }
    }
}

pub fn divergence<S: Scalar>(f: &Descriptor<S>, g: &Descriptor<S>) -> Divergence<S> {
    let mut s = S::zero();
    let mut index = 0;
    while let (Some(a), Some(b)) = (f.steps.get(index), g.steps.get(index)) {
        if !a.same_as(b) {
            break;
        }
        s = s + a.length.clone();
        index += 1;
    }
    let case = match (f.steps.get(index), g.steps.get(index)) {
        (Some(a), Some(b)) if a.shares_entry(b) => DivergenceCase::Case1 {
            alpha: a.alpha.clone(),
            entry: a.entry.clone(),
            y_f: a.exit.clone(),
            y_g: b.exit.clone(),
            a_f: s.clone() + a.length.clone(),
            a_g: s.clone() + b.length.clone(),
        },
        _ => DivergenceCase::Case2,
    };
    Divergence { s, index, case }
}

/// Distance together with its divergence data.
pub fn dist_with_divergence<S: Scalar>(f: &Descriptor<S>, g: &Descriptor<S>) -> (S, Divergence<S>) {
    let div = divergence(f, g);
    let df = f.total_length();
    let dg = g.total_length();
    let d = match &div.case {
        DivergenceCase::Case1 { alpha, y_f, y_g, a_f, a_g, .. } => {
            let inner = piece_dist(&alpha.spec(), y_f, y_g).expect("validated steps");
            df - a_f.clone() + dg - a_g.clone() + inner
        }
        DivergenceCase::Case2 => df - div.s.clone() + dg - div.s.clone(),
    };
    (d, div)
}

/// The tree-product metric.
pub fn dist<S: Scalar>(f: &Descriptor<S>, g: &Descriptor<S>) -> S {
    dist_with_divergence(f, g).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::{Norm, TreeWord};
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn l1(copy: &str) -> Alpha {
        Alpha::piece(PlaneSpec::new(2, Norm::L1), copy)
    }

    fn pt(c: &[i64]) -> PiecePoint<Q> {
        PiecePoint::plane_ints(c)
    }

    fn word(letters: &[(&str, i64, i64)]) -> PiecePoint<Q> {
        PiecePoint::Tree(TreeWord::reduced(letters.iter().map(|(l, n, d)| (l.to_string(), q(*n, *d)))))
    }

    fn desc(parts: Vec<(Alpha, PiecePoint<Q>, PiecePoint<Q>)>) -> Descriptor<Q> {
        Descriptor::from_parts(parts).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(Descriptor::<Q>::empty().validate().is_ok());
        let bad = Descriptor::from_parts(vec![
            (l1("c"), pt(&[0, 0]), pt(&[1, 0])),
            (l1("c"), pt(&[1, 0]), pt(&[2, 0])),
        ]);
        assert_eq!(bad, Err(Violation { index: 1, kind: ViolationKind::FakeExit }));
        let ok = Descriptor::from_parts(vec![
            (l1("c"), pt(&[0, 0]), pt(&[1, 0])),
            (Alpha::Tree, word(&[]), word(&[("A", 1, 1)])),
            (l1("c"), pt(&[0, 0]), pt(&[1, 0])),
        ]);
        assert!(ok.is_ok());
    }

    #[test]
    fn degenerate_and_malformed_steps_are_reported() {
        let e = Descriptor::from_parts(vec![(l1("c"), pt(&[1, 1]), pt(&[1, 1]))]).unwrap_err();
        assert_eq!(e.kind, ViolationKind::InvalidStep(PieceError::EqualPoints));
        assert_eq!(e.kind.condition(), "Ω");
        let e = Descriptor::from_parts(vec![
            (l1("c"), pt(&[0, 0]), pt(&[1, 0])),
            (l1("d"), pt(&[0, 0]), pt(&[1, 0, 0])),
        ])
        .unwrap_err();
        assert_eq!(e.index, 1);
        assert!(matches!(e.kind, ViolationKind::InvalidStep(PieceError::DimensionMismatch { .. })));
    }

    #[test]
    fn backtracking_check_runs_on_unchecked_input() {
        let a = Step::new(l1("c"), pt(&[0, 0]), pt(&[1, 0])).unwrap();
        // (x,y)(y,x) is caught by Π4 first; the mirror check is the fallback
        assert_eq!(junction_violation(&a, &a.reversed()), Some(ViolationKind::FakeExit));
        let d = Descriptor::from_steps_unchecked(vec![a.clone(), a.reversed()]);
        assert_eq!(d.validate().unwrap_err().kind.condition(), "Π4");
    }

    #[test]
    fn total_length_examples() {
        assert_eq!(Descriptor::<Q>::empty().total_length(), q(0, 1));
        let d = Descriptor::from_parts(vec![(
            Alpha::piece(PlaneSpec::new(2, Norm::L2), "c"),
            PiecePoint::<f64>::plane([0.0, 0.0]),
            PiecePoint::plane([3.0, 4.0]),
        )])
        .unwrap();
        assert!((d.total_length() - 5.0).abs() < 1e-12);
        let d = desc(vec![
            (Alpha::Tree, word(&[]), word(&[("A", 2, 1)])),
            (l1("p"), pt(&[0, 0]), pt(&[1, 1])),
        ]);
        assert_eq!(d.total_length(), q(4, 1));
        assert_eq!(d.break_points(), vec![q(0, 1), q(2, 1), q(4, 1)]);
    }

    #[test]
    fn divergence_examples() {
        let f = desc(vec![(l1("c"), pt(&[0, 0]), pt(&[3, 0]))]);
        let g = desc(vec![(l1("c"), pt(&[0, 0]), pt(&[0, 4]))]);
        let div = divergence(&f, &g);
        assert_eq!(div.s, q(0, 1));
        match div.case {
            DivergenceCase::Case1 { a_f, a_g, .. } => {
                assert_eq!(a_f, q(3, 1));
                assert_eq!(a_g, q(4, 1));
            }
            DivergenceCase::Case2 => panic!("expected case 1"),
        }
        assert_eq!(dist(&f, &g), q(7, 1));

        let f = desc(vec![(l1("c0"), pt(&[0, 0]), pt(&[1, 0]))]);
        let g = desc(vec![(l1("c1"), pt(&[0, 0]), pt(&[1, 0]))]);
        let div = divergence(&f, &g);
        assert_eq!((div.s.clone(), div.case), (q(0, 1), DivergenceCase::Case2));
        assert_eq!(dist(&f, &g), q(2, 1));

        let div = divergence(&f, &f);
        assert_eq!((div.s, div.case), (q(1, 1), DivergenceCase::Case2));
        assert_eq!(dist(&f, &f), q(0, 1));
    }

    /// Shortest-path oracle on an explicitly glued model: the base point is
    /// the tree root `ε`; the plane copy `p` is glued at the tree point
    /// `[(A,2)]` by its origin. Points of `f` and `g` are placed in this
    /// model and the distance is computed through the single gluing point.
    #[test]
    fn dist_mixed_tree_plane_matches_glued_model() {
        let f = desc(vec![
            (Alpha::Tree, word(&[]), word(&[("A", 2, 1)])),
            (l1("p"), pt(&[0, 0]), pt(&[1, 1])),
        ]);
        let g = desc(vec![(Alpha::Tree, word(&[]), word(&[("A", 1, 1), ("B", 1, 1)]))]);
        let glue = word(&[("A", 2, 1)]);
        let g_point = word(&[("A", 1, 1), ("B", 1, 1)]);
        let through_glue = piece_dist(&PieceSpec::Tree, &g_point, &glue).unwrap()
            + piece_dist(&l1("p").spec(), &pt(&[0, 0]), &pt(&[1, 1])).unwrap();
        assert_eq!(through_glue, q(4, 1));
        assert_eq!(dist(&f, &g), through_glue);
        assert!(divergence(&f, &g).case.is_case1());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(Descriptor::<Q>::empty().reverse(), Descriptor::empty());
        let f = Descriptor::from_parts(vec![(
            Alpha::piece(PlaneSpec::new(2, Norm::L2), "c"),
            PiecePoint::<f64>::plane([0.0, 0.0]),
            PiecePoint::plane([3.0, 4.0]),
        )])
        .unwrap();
        let r = f.reverse();
        assert_eq!(r.steps()[0].entry(), &PiecePoint::plane([3.0, 4.0]));
        assert_eq!(r.steps()[0].exit(), &PiecePoint::plane([0.0, 0.0]));
        assert_eq!(r.reverse(), f);
    }

    #[test]
    fn restrict_prefix_examples() {
        let f = desc(vec![
            (Alpha::Tree, word(&[]), word(&[("A", 2, 1)])),
            (l1("p"), pt(&[0, 0]), pt(&[1, 1])),
        ]);
        assert_eq!(f.restrict_prefix(&q(0, 1)).unwrap(), Descriptor::empty());
        assert_eq!(
            f.restrict_prefix(&q(3, 1)).unwrap(),
            desc(vec![
                (Alpha::Tree, word(&[]), word(&[("A", 2, 1)])),
                (l1("p"), pt(&[0, 0]), pt(&[1, 0])),
            ])
        );
        assert_eq!(f.restrict_prefix(&q(2, 1)).unwrap(), f.prefix(1));
        assert_eq!(f.restrict_prefix(&q(5, 1)), Err(DescriptorError::OutOfRange));

        let g = Descriptor::from_parts(vec![(
            Alpha::piece(PlaneSpec::new(2, Norm::L2), "c"),
            PiecePoint::<f64>::plane([0.0, 0.0]),
            PiecePoint::plane([3.0, 4.0]),
        )])
        .unwrap();
        let r = g.restrict_prefix(&2.0).unwrap();
        let c = r.steps()[0].exit().as_plane().unwrap();
        assert!((c[0] - 1.2).abs() < 1e-12 && (c[1] - 1.6).abs() < 1e-12);
    }

    #[test]
    fn concat_raw_examples() {
        let g = desc(vec![(l1("c"), pt(&[0, 0]), pt(&[1, 0]))]);
        assert_eq!(Descriptor::empty().concat_raw(&g).unwrap(), g);
        let tail = desc(vec![(l1("c"), pt(&[1, 0]), pt(&[2, 2]))]);
        assert_eq!(g.concat_raw(&tail).unwrap_err().kind, ViolationKind::FakeExit);
        let tree = desc(vec![(Alpha::Tree, word(&[]), word(&[("A", 1, 1)]))]);
        assert!(g.concat_raw(&tree).is_ok());
    }

    #[test]
    fn concat_normalized_examples() {
        let f = desc(vec![(l1("c"), pt(&[0, 0]), pt(&[1, 0]))]);
        let back = desc(vec![(l1("c"), pt(&[1, 0]), pt(&[0, 0]))]);
        assert_eq!(f.concat_normalized(&back), Descriptor::empty());
        let on = desc(vec![(l1("c"), pt(&[1, 0]), pt(&[3, 0]))]);
        assert_eq!(f.concat_normalized(&on), desc(vec![(l1("c"), pt(&[0, 0]), pt(&[3, 0]))]));

        let f = desc(vec![(l1("c"), pt(&[0, 0]), pt(&[1, 1]))]);
        let g = desc(vec![(l1("c"), pt(&[1, 1]), pt(&[2, 0]))]);
        let h = f.concat_normalized(&g);
        assert_eq!(h, desc(vec![(l1("c"), pt(&[0, 0]), pt(&[2, 0]))]));
        assert_eq!(f.total_length() + g.total_length(), q(4, 1));
        assert_eq!(h.total_length(), q(2, 1));
    }

    #[test]
    fn concat_normalized_cascades() {
        let f = desc(vec![
            (Alpha::Tree, word(&[]), word(&[("A", 1, 1)])),
            (l1("c"), pt(&[0, 0]), pt(&[1, 0])),
        ]);
        assert_eq!(f.concat_normalized(&f.reverse()), Descriptor::empty());
    }

    #[test]
    fn single_step_examples() {
        let c = Descriptor::single_step(l1("c"), pt(&[0, 0]), pt(&[2, 1])).unwrap();
        assert_eq!(c.total_length(), q(3, 1));
        let c = Descriptor::single_step(Alpha::Tree, word(&[]), word(&[("A", 5, 1)])).unwrap();
        assert_eq!(c.total_length(), q(5, 1));
        assert_eq!(
            Descriptor::single_step(l1("c"), pt(&[1, 1]), pt(&[1, 1])),
            Err(PieceError::EqualPoints)
        );
    }

    #[test]
    fn transversal_base_examples() {
        assert!(Descriptor::<Q>::empty().is_transversal_base());
        assert!(desc(vec![(Alpha::Tree, word(&[]), word(&[("A", 1, 1)]))]).is_transversal_base());
        assert!(!desc(vec![(l1("c"), pt(&[0, 0]), pt(&[1, 0]))]).is_transversal_base());
    }
}
