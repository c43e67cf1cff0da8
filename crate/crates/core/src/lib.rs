//! Tree products of metric pieces with exact distances, isometries and
//! geodesics on top. The `conelab` module checks the word metric of
//! `Z² * Z` against the tree product over `L1` planes.

pub mod conelab;
pub mod geom;
pub mod json;
pub mod pieces;
pub mod qtypes;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod treeprod;

pub use geom::{
    classify_direction, component_relation, geodesic_point, geodesic_point_with, map_pieces, median, phi,
    phi_inv, ComponentRelation, CoordinateIdentity, Direction, GeomError, Median, PieceMap, PiecePlacement,
};
pub use pieces::{
    base_point, canonical_pair, piece_dist, piece_geodesic_eval, same_orbit, CanonicalPair, GeodesicSelector, Norm,
    PieceError, PiecePoint, PieceSpec, PlaneSpec, TreeWord,
};
pub use qtypes::{
    derive_label, distinct_components, distinct_pieces, initial_subtype, realize_type, type_at, type_of,
    types_equivalent, QType, QTypeError, TypeInterval, TypeOf,
};
pub use scalar::{NumericMode, Rational, Scalar, FLOAT_TOLERANCE};
pub use treeprod::{
    dist, dist_with_divergence, divergence, Alpha, Descriptor, DescriptorError, Divergence, DivergenceCase, Step, Violation,
    ViolationKind,
};
