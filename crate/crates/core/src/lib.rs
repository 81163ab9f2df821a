//! Double-coset categories ("trains") of infinite symmetric groups.
//!
//! Cosets of several pairs `(G, K)` are encoded as combinatorial objects
//! (chips, colored surfaces, pseudomanifold complexes, bipartite graphs),
//! multiplied by gluing, and evaluated against closed-form characters. The
//! [`oracle`] and [`tensor`] modules provide brute-force ground truth.

pub mod bigraph;
pub mod bordism;
pub mod canon;
pub mod characters;
pub mod chips;
pub mod cli;
pub mod coset;
pub mod error;
pub mod gem;
pub mod oracle;
pub mod perm;
pub mod surfaces;
pub mod tensor;
pub mod verify;

pub use bigraph::{graph_canon, graph_forget, graph_from_perm, graph_mul, BipartiteDiagram};
pub use canon::CanonCode;
pub use characters::{
    coset_invariant_young, cycle_decompose, nessonov_char, s_matrix, thoma_char, thoma_psd_check, young_spherical,
    GramSpec, SMatrix, ThomaParams,
};
pub use chips::{chip_canon, chip_from_pair, chip_involution, chip_mul, chip_thoma_eval, Chip};
pub use coset::Coset;
pub use error::{Error, Result};
pub use gem::{f_vector, faces, gem_canon, gem_from_tuple, gem_mul, surface_of_gem, GemComplex};
pub use oracle::{
    coset_product_rep, enumerate_double_cosets_finite, same_coset_finite, stabilization_check, Encoder, GroupElement,
    PairSpec,
};
pub use perm::{corner, matrix01_mul, theta_j, theta_j_levels, ColoredPerm, CosetLevel, Matrix01, Point};
pub use surfaces::{
    spherical_assignment_sum, surface_canon, surface_from_tuple, surface_mul, tuple_from_surface, EquippedSurface,
};
pub use tensor::{koszul_sign, projector_average, rep_matrix_element, super_rep_matrix_element, CoeffTensor};
