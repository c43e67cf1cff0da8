//! Finite types of limit directions and constructive witnesses of
//! universality.
//!
//! A type records, along a geodesic leaving a cut point through a
//! transversal direction, where it crosses pieces and which orbit of pairs
//! it uses in each of them. Two limit components are interchangeable by an
//! isometry fixing the cut point exactly when their types are equivalent.

use crate::geom::{phi, phi_inv, PiecePlacement};
use crate::pieces::{base_point, canonical_pair, same_point, CanonicalPair, PiecePoint, PieceSpec, PlaneSpec, TreeWord};
use crate::scalar::Scalar;
use crate::treeprod::{divergence, Alpha, Descriptor, Step};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QTypeError {
    #[error("cut point lies inside interval {0}")]
    RInsideInterval(usize),
    #[error("cut point outside ]0, total]")]
    ROutOfRange,
    #[error("trivial type has no initial subtype")]
    TrivialInput,
    #[error("piece witnesses need a plane spec")]
    TreeSpec,
    #[error("invalid type: {0}")]
    Invalid(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeInterval<S> {
    pub a: S,
    pub b: S,
    pub cpair: CanonicalPair<S>,
}

/// A finite type `(U, f)` over `]0, total[`.
#[derive(Debug, Clone, PartialEq)]
pub struct QType<S> {
    pub total: S,
    pub intervals: Vec<TypeInterval<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeOf<S> {
    /// The base point itself.
    Trivial,
    /// The direction starts inside a piece.
    NonLimit,
    Limit(QType<S>),
}

fn same_cpair<S: Scalar>(a: &CanonicalPair<S>, b: &CanonicalPair<S>) -> bool {
    a.spec == b.spec && same_point(&a.spec, &a.from, &b.from) && same_point(&a.spec, &a.to, &b.to)
}

impl<S: Scalar> QType<S> {
    /// Checks that intervals are ordered and sized by their pairs. Adjacent intervals may
    /// touch; only the initial gap must be nonempty.
    pub fn new(total: S, intervals: Vec<TypeInterval<S>>) -> Result<Self, QTypeError> {
        if !S::zero().definitely_lt(&total) {
            return Err(QTypeError::Invalid("total must be positive"));
        }
        let mut last = S::zero();
        for (i, iv) in intervals.iter().enumerate() {
            if i == 0 && !S::zero().definitely_lt(&iv.a) {
                return Err(QTypeError::Invalid("the first interval must start after 0"));
            }
            if !last.approx_le(&iv.a) || !iv.a.definitely_lt(&iv.b) || !iv.b.approx_le(&total) {
                return Err(QTypeError::Invalid("intervals must be ordered, disjoint and inside ]0, total]"));
            }
            if matches!(iv.cpair.spec, PieceSpec::Tree) {
                return Err(QTypeError::Invalid("intervals are labeled by plane pairs"));
            }
            let canon = canonical_pair(&iv.cpair.spec, &iv.cpair.from, &iv.cpair.to)
                .map_err(|_| QTypeError::Invalid("degenerate pair"))?;
            if !same_cpair(&canon, &iv.cpair) {
                return Err(QTypeError::Invalid("pair is not canonical"));
            }
            if !canon.dist().approx_eq(&(iv.b.clone() - iv.a.clone())) {
                return Err(QTypeError::Invalid("interval length differs from the pair distance"));
            }
            last = iv.b.clone();
        }
        Ok(QType { total, intervals })
    }

    pub fn is_trivial(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Equality up to the numeric mode's tolerance.
    pub fn same_as(&self, other: &Self) -> bool {
        self.total.approx_eq(&other.total)
            && self.intervals.len() == other.intervals.len()
            && self.intervals.iter().zip(&other.intervals).all(|(x, y)| {
                x.a.approx_eq(&y.a) && x.b.approx_eq(&y.b) && same_cpair(&x.cpair, &y.cpair)
            })
    }
}

/// Type of the direction at the base point that contains `f`.
pub fn type_of<S: Scalar>(f: &Descriptor<S>) -> TypeOf<S> {
    let Some(first) = f.steps().first() else {
        return TypeOf::Trivial;
    };
    if !first.alpha().is_tree() {
        return TypeOf::NonLimit;
    }
    let mut intervals = Vec::new();
    let mut at = S::zero();
    for step in f.steps() {
        let next = at.clone() + step.length().clone();
        if let Alpha::Piece { spec, .. } = step.alpha() {
            let cpair = canonical_pair(&PieceSpec::Plane(*spec), step.entry(), step.exit())
                .expect("steps join distinct points");
            intervals.push(TypeInterval { a: at.clone(), b: next.clone(), cpair });
        }
        at = next;
    }
    TypeOf::Limit(QType { total: at, intervals })
}

/// Type of the direction at `center` that contains `g`.
pub fn type_at<S: Scalar>(center: &Descriptor<S>, g: &Descriptor<S>) -> TypeOf<S> {
    type_of(&phi(center, g))
}

/// `U ∩ ]0, r[` as a type over `]0, r[`, or `None` when it is empty.
pub fn initial_subtype<S: Scalar>(tau: &QType<S>, r: &S) -> Result<Option<QType<S>>, QTypeError> {
    if !S::zero().definitely_lt(r) || !r.approx_le(&tau.total) {
        return Err(QTypeError::ROutOfRange);
    }
    let mut kept = Vec::new();
    for (i, iv) in tau.intervals.iter().enumerate() {
        if iv.b.approx_le(r) {
            kept.push(iv.clone());
        } else if iv.a.definitely_lt(r) {
            return Err(QTypeError::RInsideInterval(i));
        }
    }
    if kept.is_empty() {
        return Ok(None);
    }
    Ok(Some(QType { total: r.clone(), intervals: kept }))
}

/// Whether the two types share a nontrivial initial subtype. For finite
/// types this holds exactly when their first intervals coincide.
pub fn types_equivalent<S: Scalar>(t1: &QType<S>, t2: &QType<S>) -> Result<bool, QTypeError> {
    let (Some(x), Some(y)) = (t1.intervals.first(), t2.intervals.first()) else {
        return Err(QTypeError::TrivialInput);
    };
    Ok(x.a.approx_eq(&y.a) && x.b.approx_eq(&y.b) && same_cpair(&x.cpair, &y.cpair))
}

pub fn derive_label(salt: &str, index: usize) -> String {
    format!("{salt}:{index}")
}

/// A point `g` such that the direction at `at` containing it has type `tau`.
/// Gaps become transversal segments on fresh branches and intervals become
/// steps through fresh piece copies, all labeled from `salt`.
pub fn realize_type<S: Scalar>(at: &Descriptor<S>, tau: &QType<S>, salt: &str) -> Descriptor<S> {
    let mut steps: Vec<Step<S>> = Vec::with_capacity(2 * tau.intervals.len() + 1);
    let gap = |steps: &mut Vec<Step<S>>, p: &S, q: &S| {
        if p.definitely_lt(q) {
            let word = TreeWord::single(derive_label(salt, steps.len()), q.clone() - p.clone());
            let step = Step::new(Alpha::Tree, PiecePoint::root(), PiecePoint::Tree(word)).expect("positive gap");
            steps.push(step);
        }
    };
    let mut last = S::zero();
    for iv in &tau.intervals {
        gap(&mut steps, &last, &iv.a);
        let PieceSpec::Plane(spec) = iv.cpair.spec else {
            unreachable!("type intervals carry plane pairs")
        };
        let alpha = Alpha::piece(spec, derive_label(salt, steps.len()));
        steps.push(Step::new(alpha, iv.cpair.from.clone(), iv.cpair.to.clone()).expect("canonical pair"));
        last = iv.b.clone();
    }
    gap(&mut steps, &last, &tau.total);
    let g = Descriptor::new(steps).expect("fresh labels keep junctions clean");
    phi_inv(at, &g)
}

/// `n` points in pairwise distinct components at `at`, all of type `tau`.
pub fn distinct_components<S: Scalar>(at: &Descriptor<S>, tau: &QType<S>, n: usize) -> Vec<Descriptor<S>> {
    (0..n).map(|i| realize_type(at, tau, &format!("component{i}"))).collect()
}

/// A piece through a point together with a one-step witness leaving the
/// point inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct PieceWitness<S> {
    pub placement: PiecePlacement<S>,
    pub witness: Descriptor<S>,
}

/// `n` distinct copies of `spec` attached at `at`.
pub fn distinct_pieces<S: Scalar>(
    at: &Descriptor<S>,
    spec: &PieceSpec,
    n: usize,
) -> Result<Vec<PieceWitness<S>>, QTypeError> {
    let PieceSpec::Plane(plane) = spec else {
        return Err(QTypeError::TreeSpec);
    };
    Ok((0..n).map(|i| piece_witness(at, *plane, &derive_label("piece", i))).collect())
}

fn piece_witness<S: Scalar>(at: &Descriptor<S>, spec: PlaneSpec, copy: &str) -> PieceWitness<S> {
    let alpha = Alpha::piece(spec, copy);
    let origin = base_point::<S>(&PieceSpec::Plane(spec));
    let mut unit = vec![S::zero(); spec.dim];
    unit[0] = S::from_int(1);
    let step = Descriptor::single_step(alpha.clone(), origin.clone(), PiecePoint::Plane(unit))
        .expect("unit vector differs from the origin");
    let placement = PiecePlacement::through(Descriptor::empty(), alpha, origin).translate_back(at);
    PieceWitness { placement, witness: phi_inv(at, &step) }
}

/// Whether `g` and `h`, seen from `at`, leave through different pieces.
pub fn separated_pieces<S: Scalar>(at: &Descriptor<S>, g: &Descriptor<S>, h: &Descriptor<S>) -> bool {
    let div = divergence(&phi(at, g), &phi(at, h));
    div.s.is_negligible() && !div.case.is_case1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{component_relation, ComponentRelation};
    use crate::pieces::Norm;
    use crate::scalar::Rational;
    use crate::treeprod::dist;

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

    fn cpair(c: &[i64]) -> CanonicalPair<Q> {
        CanonicalPair { spec: PieceSpec::Plane(PlaneSpec::l1_plane()), from: pt(&[0, 0]), to: pt(c) }
    }

    fn word(label: &str, n: i64, d: i64) -> PiecePoint<Q> {
        PiecePoint::Tree(TreeWord::single(label, q(n, d)))
    }

    fn tau() -> QType<Q> {
        QType::new(q(4, 1), vec![TypeInterval { a: q(1, 1), b: q(4, 1), cpair: cpair(&[2, 1]) }]).unwrap()
    }

    #[test]
    fn type_of_examples() {
        assert_eq!(type_of(&Descriptor::<Q>::empty()), TypeOf::Trivial);
        let f = Descriptor::from_parts(vec![(l1("c"), pt(&[0, 0]), pt(&[1, 0]))]).unwrap();
        assert_eq!(type_of(&f), TypeOf::NonLimit);
        let f = Descriptor::from_parts(vec![
            (Alpha::Tree, PiecePoint::root(), word("A", 1, 1)),
            (l1("c"), pt(&[0, 0]), pt(&[2, 1])),
            (Alpha::Tree, PiecePoint::root(), word("B", 1, 2)),
        ])
        .unwrap();
        let expect = QType::new(q(9, 2), vec![TypeInterval { a: q(1, 1), b: q(4, 1), cpair: cpair(&[2, 1]) }]);
        assert_eq!(type_of(&f), TypeOf::Limit(expect.unwrap()));
    }

    #[test]
    fn initial_subtype_examples() {
        let t = tau();
        assert_eq!(initial_subtype(&t, &q(4, 1)).unwrap(), Some(t.clone()));
        assert_eq!(initial_subtype(&t, &q(1, 2)).unwrap(), None);
        assert_eq!(initial_subtype(&t, &q(2, 1)), Err(QTypeError::RInsideInterval(0)));
        assert_eq!(initial_subtype(&t, &q(5, 1)), Err(QTypeError::ROutOfRange));
    }

    #[test]
    fn equivalence_examples() {
        let t = tau();
        let mut longer = t.clone();
        longer.total = q(10, 1);
        longer.intervals.push(TypeInterval { a: q(5, 1), b: q(8, 1), cpair: cpair(&[3, 0]) });
        assert!(types_equivalent(&t, &longer).unwrap());
        let shorter =
            QType::new(q(4, 1), vec![TypeInterval { a: q(1, 1), b: q(3, 1), cpair: cpair(&[1, 1]) }]).unwrap();
        assert!(!types_equivalent(&t, &shorter).unwrap());
        let other_orbit =
            QType::new(q(4, 1), vec![TypeInterval { a: q(1, 1), b: q(4, 1), cpair: cpair(&[3, 0]) }]).unwrap();
        assert!(!types_equivalent(&t, &other_orbit).unwrap());
        let trivial = QType { total: q(1, 1), intervals: vec![] };
        assert_eq!(types_equivalent(&t, &trivial), Err(QTypeError::TrivialInput));
    }

    #[test]
    fn rejects_malformed_types() {
        let at_zero = vec![TypeInterval { a: q(0, 1), b: q(3, 1), cpair: cpair(&[2, 1]) }];
        assert!(QType::new(q(4, 1), at_zero).is_err());
        let wrong_len = vec![TypeInterval { a: q(1, 1), b: q(3, 1), cpair: cpair(&[2, 1]) }];
        assert!(QType::new(q(4, 1), wrong_len).is_err());
        let not_canonical = vec![TypeInterval { a: q(1, 1), b: q(4, 1), cpair: cpair(&[1, 2]) }];
        assert!(QType::new(q(4, 1), not_canonical).is_err());
        let past_end = vec![TypeInterval { a: q(2, 1), b: q(5, 1), cpair: cpair(&[2, 1]) }];
        assert!(QType::new(q(4, 1), past_end).is_err());
    }

    #[test]
    fn realize_type_example() {
        let g = realize_type(&Descriptor::empty(), &tau(), "s1");
        let expect = Descriptor::from_parts(vec![
            (Alpha::Tree, PiecePoint::root(), word("s1:0", 1, 1)),
            (l1("s1:1"), pt(&[0, 0]), pt(&[2, 1])),
        ])
        .unwrap();
        assert_eq!(g, expect);
        assert_eq!(type_of(&g), TypeOf::Limit(tau()));
    }

    #[test]
    fn realized_salts_are_different_components() {
        let o = Descriptor::<Q>::empty();
        let a = realize_type(&o, &tau(), "a");
        let b = realize_type(&o, &tau(), "b");
        assert_eq!(component_relation(&o, &a, &b).unwrap(), ComponentRelation::Different);
        let at = Descriptor::from_parts(vec![(l1("x"), pt(&[0, 0]), pt(&[1, 2]))]).unwrap();
        let many = distinct_components(&at, &tau(), 3);
        for (i, g) in many.iter().enumerate() {
            assert_eq!(type_at(&at, g), TypeOf::Limit(tau()));
            for h in &many[i + 1..] {
                assert_eq!(component_relation(&at, g, h).unwrap(), ComponentRelation::Different);
            }
        }
    }

    #[test]
    fn piece_witnesses() {
        let o = Descriptor::<Q>::empty();
        let spec = PieceSpec::Plane(PlaneSpec::l1_plane());
        let two = distinct_pieces(&o, &spec, 2).unwrap();
        let (w0, w1) = (&two[0].witness, &two[1].witness);
        assert_eq!(dist(w0, w1), w0.total_length() + w1.total_length());
        assert!(separated_pieces(&o, w0, w1));
        assert_eq!(distinct_pieces::<Q>(&o, &PieceSpec::Tree, 2), Err(QTypeError::TreeSpec));
        let at = Descriptor::from_parts(vec![(Alpha::Tree, PiecePoint::root(), word("T", 3, 1))]).unwrap();
        let w = distinct_pieces(&at, &spec, 3).unwrap();
        assert_eq!(w[0].placement.prefix, at);
        assert!(separated_pieces(&at, &w[0].witness, &w[2].witness));
        assert_eq!(dist(&at, &w[1].witness), q(1, 1));
    }
}
