//! Homogeneity isometries and what they make easy: geodesics between
//! arbitrary points, triangle medians, the components of the complement of
//! a point, and maps between tree products induced by piece maps.
//!
//! Everything is done by translating one point to the base point with
//! [`phi`], working there, and translating back with [`phi_inv`].

use crate::pieces::{
    piece_dist, same_point, GeodesicSelector, PieceError, PiecePoint, PieceSpec, PlaneSpec, TreeWord,
};
use crate::scalar::Scalar;
use crate::treeprod::{
    divergence, Alpha, Descriptor, DescriptorError, DivergenceCase, Step, Violation,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("the center coincides with one of the points")]
    CenterEqualsPoint,
    #[error("no target model for piece {0}")]
    SpecNotMapped(PlaneSpec),
    #[error("mapped descriptor is invalid: {0}")]
    MappedInvalid(Violation),
    #[error(transparent)]
    Piece(#[from] PieceError),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
}

/// `Φ_f(g)`: the isometry taking `f` to the base point, applied to `g`.
pub fn phi<S: Scalar>(f: &Descriptor<S>, g: &Descriptor<S>) -> Descriptor<S> {
    let div = divergence(f, g);
    let i = div.index;
    let mut steps: Vec<Step<S>> = Vec::with_capacity(f.len() + g.len());
    match div.case {
        DivergenceCase::Case1 { alpha, y_f, y_g, .. } => {
            steps.extend(f.steps()[i + 1..].iter().rev().map(Step::reversed));
            steps.push(Step::new(alpha, y_f, y_g).expect("exits of a case-1 pair differ"));
            steps.extend(g.steps()[i + 1..].iter().cloned());
        }
        DivergenceCase::Case2 => {
            steps.extend(f.steps()[i..].iter().rev().map(Step::reversed));
            steps.extend(g.steps()[i..].iter().cloned());
        }
    }
    Descriptor::new(steps).expect("junctions of Φ_f(g) are clean")
}

/// `Φ_f⁻¹(g)`.
pub fn phi_inv<S: Scalar>(f: &Descriptor<S>, g: &Descriptor<S>) -> Descriptor<S> {
    let f_hat = f.reverse();
    let div = divergence(&f_hat, g);
    let i = div.index;
    let n = f.len();
    match div.case {
        DivergenceCase::Case1 { alpha, y_f: y_hat, y_g, .. } => {
            // f_hat step i is (alpha, x, y_hat); in f it is (alpha, y_hat, x)
            // at position n - 1 - i.
            let head = f.prefix(n - 1 - i);
            let bridge = Descriptor::single_step(alpha, y_hat, y_g).expect("distinct exits");
            head.concat_normalized(&bridge).concat_normalized(&g.suffix(i + 1))
        }
        DivergenceCase::Case2 => f.prefix(n - i).concat_normalized(&g.suffix(i)),
    }
}

/// The point at arc length `t` from `f` on the canonical geodesic to `g`.
pub fn geodesic_point<S: Scalar>(
    f: &Descriptor<S>,
    g: &Descriptor<S>,
    t: &S,
) -> Result<Descriptor<S>, DescriptorError> {
    geodesic_point_with(f, g, t, GeodesicSelector::CoordinateOrder)
}

pub fn geodesic_point_with<S: Scalar>(
    f: &Descriptor<S>,
    g: &Descriptor<S>,
    t: &S,
    selector: GeodesicSelector,
) -> Result<Descriptor<S>, DescriptorError> {
    let moved = phi(f, g);
    let p = moved.restrict_prefix_with(t, selector)?;
    Ok(phi_inv(f, &p))
}

/// A copy of a piece model attached to the tree product: the set
/// `{prefix} ∪ {prefix ⊔ C_(entry, y) : y ≠ entry}`. The prefix never ends
/// inside the same copy at `entry`, so each piece has one placement.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecePlacement<S> {
    pub prefix: Descriptor<S>,
    pub alpha: Alpha,
    pub entry: PiecePoint<S>,
}

impl<S: Scalar> PiecePlacement<S> {
    /// The copy of `alpha` that contains `point` as the point with
    /// coordinate `coord`.
    pub fn through(point: Descriptor<S>, alpha: Alpha, coord: PiecePoint<S>) -> Self {
        if let Some(last) = point.steps().last() {
            if *last.alpha() == alpha && same_point(&alpha.spec(), last.exit(), &coord) {
                let entry = last.entry().clone();
                let prefix = point.prefix(point.len() - 1);
                return PiecePlacement { prefix, alpha, entry };
            }
        }
        PiecePlacement { prefix: point, alpha, entry: coord }
    }

    pub fn spec(&self) -> PieceSpec {
        self.alpha.spec()
    }

    /// The point of the placed copy with coordinate `y`.
    pub fn point(&self, y: &PiecePoint<S>) -> Descriptor<S> {
        if same_point(&self.spec(), y, &self.entry) {
            return self.prefix.clone();
        }
        let step = Descriptor::single_step(self.alpha.clone(), self.entry.clone(), y.clone())
            .expect("coordinate belongs to the piece");
        self.prefix
            .concat_raw(&step)
            .expect("placement prefix never ends at its own entry")
    }

    /// Image of the placement under `Φ_f⁻¹`. Piece coordinates are kept.
    pub fn translate_back(&self, f: &Descriptor<S>) -> Self {
        let anchor = phi_inv(f, &self.prefix);
        PiecePlacement::through(anchor, self.alpha.clone(), self.entry.clone())
    }

    /// Image of the placement under `Φ_f`.
    pub fn translate(&self, f: &Descriptor<S>) -> Self {
        let anchor = phi(f, &self.prefix);
        PiecePlacement::through(anchor, self.alpha.clone(), self.entry.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Median<S> {
    /// The three geodesics meet in a single point.
    Point(Descriptor<S>),
    /// The geodesics leave one piece through three gates: `gates[0]` towards
    /// the first vertex, then the second, then the third.
    Gates { placement: PiecePlacement<S>, gates: [PiecePoint<S>; 3] },
}

impl<S: Scalar> Median<S> {
    /// The point of the median nearest to the given vertex (0, 1 or 2).
    pub fn gate_point(&self, vertex: usize) -> Descriptor<S> {
        match self {
            Median::Point(m) => m.clone(),
            Median::Gates { placement, gates } => placement.point(&gates[vertex]),
        }
    }
}

/// Median of three points of a rooted tree: the deepest pairwise meet.
fn tree_median<S: Scalar>(a: &TreeWord<S>, b: &TreeWord<S>, c: &TreeWord<S>) -> TreeWord<S> {
    let meets = [
        a.truncate(&a.common_depth(b)),
        a.truncate(&a.common_depth(c)),
        b.truncate(&b.common_depth(c)),
    ];
    meets
        .into_iter()
        .reduce(|best, m| if m.depth() > best.depth() { m } else { best })
        .expect("three meets")
}

pub fn median<S: Scalar>(f: &Descriptor<S>, g: &Descriptor<S>, h: &Descriptor<S>) -> Median<S> {
    let g1 = phi(f, g);
    let h1 = phi(f, h);
    let div = divergence(&g1, &h1);
    let prefix = g1.prefix(div.index);
    match div.case {
        DivergenceCase::Case2 => Median::Point(phi_inv(f, &prefix)),
        DivergenceCase::Case1 { alpha, entry, y_f, y_g, .. } => {
            let placement = PiecePlacement::through(prefix, alpha.clone(), entry.clone());
            if alpha.is_tree() {
                // Geodesics in the transversal tree are unique, so the
                // triangle closes up in a point.
                let words = (entry.as_tree(), y_f.as_tree(), y_g.as_tree());
                let (Some(x), Some(a), Some(b)) = words else {
                    unreachable!("tree steps carry tree words")
                };
                let m = PiecePoint::Tree(tree_median(x, a, b));
                return Median::Point(phi_inv(f, &placement.point(&m)));
            }
            Median::Gates { placement: placement.translate_back(f), gates: [entry, y_f, y_g] }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentRelation {
    Same,
    Different,
}

/// Whether `g` and `h` lie in the same connected component of the
/// complement of `center`.
pub fn component_relation<S: Scalar>(
    center: &Descriptor<S>,
    g: &Descriptor<S>,
    h: &Descriptor<S>,
) -> Result<ComponentRelation, GeomError> {
    if center.same_as(g) || center.same_as(h) {
        return Err(GeomError::CenterEqualsPoint);
    }
    let g1 = phi(center, g);
    let h1 = phi(center, h);
    let div = divergence(&g1, &h1);
    if !div.s.is_negligible() {
        return Ok(ComponentRelation::Same);
    }
    Ok(match div.case {
        DivergenceCase::Case2 => ComponentRelation::Different,
        DivergenceCase::Case1 { alpha: Alpha::Piece { .. }, .. } => ComponentRelation::Same,
        DivergenceCase::Case1 { alpha: Alpha::Tree, entry, y_f, y_g, .. } => {
            // The tree has cut points: the two branches stay connected only
            // if the entry is not between the exits.
            let spec = PieceSpec::Tree;
            let direct = piece_dist(&spec, &y_f, &y_g)?;
            let via = piece_dist(&spec, &y_f, &entry)? + piece_dist(&spec, &entry, &y_g)?;
            if direct.definitely_lt(&via) {
                ComponentRelation::Same
            } else {
                ComponentRelation::Different
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Direction<S> {
    /// The component starts inside this piece.
    NonLimit(PiecePlacement<S>),
    Limit,
}

/// Limit / non-limit classification of the component of the complement of
/// `center` that contains `g`.
pub fn classify_direction<S: Scalar>(
    center: &Descriptor<S>,
    g: &Descriptor<S>,
) -> Result<Direction<S>, GeomError> {
    if center.same_as(g) {
        return Err(GeomError::CenterEqualsPoint);
    }
    let g1 = phi(center, g);
    let first = g1.steps().first().expect("distinct from the center");
    Ok(match first.alpha() {
        Alpha::Tree => Direction::Limit,
        alpha => Direction::NonLimit(
            PiecePlacement::through(Descriptor::empty(), alpha.clone(), first.entry().clone())
                .translate_back(center),
        ),
    })
}

/// Uniformly bi-Lipschitz maps between plane models, applied copy by copy.
pub trait PieceMap<S: Scalar, T: Scalar> {
    fn target_spec(&self, source: &PlaneSpec) -> Option<PlaneSpec>;
    fn map_point(&self, source: &PlaneSpec, coords: &[S]) -> Vec<T>;
    /// Scalar conversion used for transversal-tree lengths.
    fn map_scalar(&self, s: &S) -> T;
    /// Bi-Lipschitz constant on pieces of model `source`.
    fn lipschitz(&self, source: &PlaneSpec) -> f64;
}

/// Identity on coordinates between planes of equal dimension, possibly
/// changing the norm.
#[derive(Debug, Clone, Default)]
pub struct CoordinateIdentity {
    table: Vec<(PlaneSpec, PlaneSpec)>,
}

impl CoordinateIdentity {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, from: PlaneSpec, to: PlaneSpec) -> Self {
        assert_eq!(from.dim, to.dim, "coordinate identity needs equal dimensions");
        self.table.push((from, to));
        self
    }
}

/// Smallest `K` with `|v|_a / K <= |v|_b <= K |v|_a` on `R^dim`.
pub fn norm_equivalence(a: crate::pieces::Norm, b: crate::pieces::Norm, dim: usize) -> f64 {
    use crate::pieces::Norm::*;
    let n = dim as f64;
    match (a, b) {
        _ if a == b => 1.0,
        (L1, L2) | (L2, L1) | (L2, LInf) | (LInf, L2) => n.sqrt(),
        (L1, LInf) | (LInf, L1) => n,
        _ => unreachable!(),
    }
}

fn convert<S: Scalar, T: Scalar>(s: &S) -> T {
    match s.to_rational() {
        Some(r) => T::from_rational(&r),
        None => T::from_ratio(0, 1),
    }
}

impl<S: Scalar, T: Scalar> PieceMap<S, T> for CoordinateIdentity {
    fn target_spec(&self, source: &PlaneSpec) -> Option<PlaneSpec> {
        self.table.iter().find(|(from, _)| from == source).map(|(_, to)| *to)
    }

    fn map_point(&self, _source: &PlaneSpec, coords: &[S]) -> Vec<T> {
        coords.iter().map(convert).collect()
    }

    fn map_scalar(&self, s: &S) -> T {
        convert(s)
    }

    fn lipschitz(&self, source: &PlaneSpec) -> f64 {
        <Self as PieceMap<S, T>>::target_spec(self, source)
            .map(|to| norm_equivalence(source.norm, to.norm, source.dim))
            .unwrap_or(f64::INFINITY)
    }
}

/// Applies `piece_map` to every step; copy labels and tree steps are kept.
pub fn map_pieces<S: Scalar, T: Scalar>(
    f: &Descriptor<S>,
    piece_map: &impl PieceMap<S, T>,
) -> Result<Descriptor<T>, GeomError> {
    let mut steps = Vec::with_capacity(f.len());
    for step in f.steps() {
        let mapped = match step.alpha() {
            Alpha::Tree => Step::new(
                Alpha::Tree,
                step.entry().map_scalars(&|s| piece_map.map_scalar(s)),
                step.exit().map_scalars(&|s| piece_map.map_scalar(s)),
            )?,
            Alpha::Piece { spec, copy } => {
                let target = piece_map.target_spec(spec).ok_or(GeomError::SpecNotMapped(*spec))?;
                let coords = |p: &PiecePoint<S>| {
                    PiecePoint::Plane(piece_map.map_point(spec, p.as_plane().expect("plane step")))
                };
                Step::new(Alpha::piece(target, copy.clone()), coords(step.entry()), coords(step.exit()))?
            }
        };
        steps.push(mapped);
    }
    Descriptor::new(steps).map_err(GeomError::MappedInvalid)
}
