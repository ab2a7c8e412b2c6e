//! Composition factors of Kac modules for the Lie superalgebra gl(m|n),
//! computed combinatorially from weight and cap diagrams.

pub mod decomp;
pub mod diagram;
pub mod error;
pub mod ext;
pub mod matrix;
pub mod moves;
pub mod paths;
pub mod render;
pub mod rng;
pub mod sum;
pub mod weights;

pub use decomp::{
    catalan_check, catalan_number, conjecture_scan, decompose, kac_modules_containing, p_recursive, predecessor,
    r_values, staircase, toggle_caps, verify_theorem_a, CatalanReport, ConjectureCounterexample, TheoremAReport, Theta,
};
pub use diagram::{cap_diagram, enumerate_matching, matches, Cap, CapDiagram, Symbol, WeightDiagram};
pub use error::{Error, Result};
pub use ext::{ext_component, ext_dim, ext_neighbors, Direction, ExtComponent, ExtEdge, Neighbor};
pub use matrix::{invert_unitriangular, multiplicity_matrix, MultiplicityMatrix};
pub use moves::{apply_move, l_value, legal_ends, lm_recursive, sigma, sigma_product, LegalMove};
pub use paths::{
    classify, edges_from, increasing_paths, path_coefficient, regular_paths, star, Edge, Path, Regularity,
};
pub use render::{render_ascii, render_svg, Style};
pub use rng::Lcg;
pub use sum::DiagramSum;
pub use weights::{atypicality, from_diagram, rho, shift, to_diagram, unshift, DominantWeight, EpsilonDeltaWeight};
