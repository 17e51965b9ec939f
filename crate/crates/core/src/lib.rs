//! Edge-to-edge spherical tilings by congruent quadrangles whose skeleton is a
//! pseudo-double wheel.
//!
//! A pseudo-double wheel of `F` faces is the planar map obtained from a rim
//! cycle `v_0 .. v_{F-1}` by joining a hub `N` to the even rim vertices and a
//! hub `S` to the odd ones; it is the dual of an antiprism skeleton.  This
//! crate provides the four layers needed to construct, classify and verify the
//! tilings over that family:
//!
//! * [`sphgeom`] — spherical trigonometry kernel (points, distances, oriented
//!   corner angles, triangle existence, polygon area),
//! * [`quadcore`] — the tile algebra: the quadratic whose roots are the
//!   admissible meridian edge lengths, its discriminant and degeneracy curve,
//!   the eight-region parameter classification, the geometric tile
//!   construction and an independent brute-force edge-length oracle,
//! * [`pdwgraph`] — the combinatorial layer: skeletons, graph automorphisms,
//!   perfect face-matchings of the dual graph,
//! * [`tiling`] — assembly of tile copies into realized tilings, verification,
//!   the `(phi, a)` coordinate chart, isohedrality decisions, rotation-axis
//!   detection and the exhaustive layout search.
//!
//! Grid scans (the edge-length oracle, phase-diagram sampling) run in parallel
//! when the default `parallel` feature is enabled and fall back to sequential
//! evaluation otherwise; results are deterministic either way.

pub mod exec;
pub mod pdwgraph;
pub mod quadcore;
pub mod sphgeom;
pub mod tiling;
pub mod tol;

use thiserror::Error;

/// Errors shared by the geometry, tile-algebra and tiling layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A colatitude outside `[0, pi]`.
    #[error("colatitude {0} lies outside [0, pi]")]
    ColatitudeOutOfRange(f64),
    /// Inputs to an angle computation coincide or are antipodal.
    #[error("degenerate corner configuration: {0}")]
    DegenerateCorner(&'static str),
    /// No spherical triangle exists for the requested angles; names the
    /// violated existence inequality.
    #[error("no spherical triangle with these angles: {0} violated")]
    NoSuchTriangle(&'static str),
    /// Fewer than three vertices were supplied for a polygon.
    #[error("spherical polygon needs at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),
    /// Tile parameters hit a cotangent singularity or an excluded angle.
    #[error("{name} = {value} is within tolerance of an excluded value ({excluded})")]
    SingularParameter {
        name: &'static str,
        value: f64,
        excluded: &'static str,
    },
    /// `n` below the minimum for a pseudo-double wheel family.
    #[error("hub valence n = {0} must be at least 3")]
    HubValenceTooSmall(u32),
    /// An argument left its documented domain.
    #[error("{name} = {value} outside domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    /// The requested edge length is not a root of the tile quadratic.
    #[error("edge length a = {a} is not a tile: |f(cos a)| = {residual:e} exceeds tolerance")]
    NotATile { a: f64, residual: f64 },
    /// The two construction circles do not intersect transversally.
    #[error("tile construction degenerate: {0}")]
    DegenerateConstruction(&'static str),
    /// A face count that is not an even number at least 6.
    #[error("face count {0} must be an even integer >= 6")]
    BadFaceCount(u32),
    /// A labeling misses an edge or a face corner.
    #[error("incomplete labeling: {0}")]
    IncompleteLabeling(&'static str),
    /// Coordinates outside the admissible open rectangles.
    #[error("coordinates (phi, a) = ({phi}, {a}) lie outside every admissible rectangle: {bounds}")]
    CoordsOutsideChart { phi: f64, a: f64, bounds: String },
    /// A quadrangle failed its own invariants when handed to an assembler.
    #[error("quadrangle rejected: {0}")]
    InvalidQuadrangle(String),
    /// The layout search did not produce a required tiling.
    #[error("layout search failed: {0}")]
    SearchFailed(&'static str),
    /// A tiling document that cannot be decoded.
    #[error("malformed tiling document: {0}")]
    MalformedDocument(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
