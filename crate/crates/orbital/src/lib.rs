//! Backward-orbit dynamics of rational maps: truncated preimage trees,
//! box-dimension estimation of orbital and Julia sets, and verification of
//! the dimension formula `dim_B O(E) = max(dim_B E, dim_B J)` together with
//! its known failure modes.

pub mod algebra;
pub mod config;
pub mod dimension;
pub mod error;
pub mod experiment;
pub mod julia;
pub mod orbit;
pub mod raster;
pub mod roots;
pub mod shapes;

pub use algebra::{ComplexPoly, RationalMap};
pub use config::{ExperimentConfig, ShapeSpec};
pub use dimension::{box_count, dim_estimate, BoxCountReport, ScaleLadder};
pub use error::{Error, Result};
pub use experiment::{
    run_counterexamples, run_dimest, run_hz, run_julia, run_render, VerificationReport,
};
pub use julia::{
    assumption_a_diagnostic, escape_boundary, escape_raster, exceptional_points, julia_backward,
    julia_backward_with_burn, postcritical_cloud, JuliaCloud, JuliaMethod, Verdict,
};
pub use orbit::{
    backward_tree, derivative_band_count, hz_exponent, level_sum, orbital_cloud, OrbitCloud,
    OrbitNode, TreeParams,
};
pub use shapes::{
    circle_cloud, graded_segment_cloud, ifs_cloud, product_sequence_cloud, segment_cloud,
    sequence_cloud, sierpinski_maps, vicsek_maps, PointCloud, Rect, Similarity,
};
