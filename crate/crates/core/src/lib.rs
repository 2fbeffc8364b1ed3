//! Regular tetrahedra and equilateral triangles with vertices in Z^3.
//!
//! - [`numtheory`]: factorization, Loeschian numbers, `s^2 + 3r^2 = 2q` and
//!   `a^2 + b^2 + c^2 = 3d^2`.
//! - [`eisenstein`]: the form `m^2 - mn + n^2`, `Omega(k)`, its symmetry
//!   orbits and primitive Eisenstein triples.
//! - [`triangle`]: the coefficient matrix of a lattice plane and the
//!   equilateral triangles it generates.
//! - [`tetra`]: fourth-vertex completion, enumeration of tetrahedra with a
//!   vertex at the origin, face normals and their orthogonality.
//! - [`oracle`]: brute-force scans used as independent ground truth.
//! - [`cli`]: the `regtet` command line.

pub mod cli;
pub mod eisenstein;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod point;
pub mod tetra;
pub mod triangle;

pub use eisenstein::{omega, primitive_triples, tau_orbit, zeta, EisensteinPair, EisensteinTriple};
pub use error::{Error, Result};
pub use numtheory::{
    count_representations, factorize, is_loeschian, solve_three_d2, solve_two_q, Factorization,
    NormalQuadruple, RsPair,
};
pub use oracle::{
    brute_t0, brute_tetrahedra_grid, brute_triangles_grid, compare, Diff, GridOptions,
};
pub use point::Point;
pub use tetra::{
    complete_tetrahedron, corollary_solution, enumerate_t0, face_normals, verify_orthogonality,
    verify_regular, FaceNormalSet, LatticeTetrahedron,
};
pub use triangle::{
    coeff_matrix, triangle_points, verify_equilateral, CoeffMatrix, LatticeTriangle,
};
