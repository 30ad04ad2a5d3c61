//! Dense complex linear algebra on small matrices: products, tensor products,
//! projectors, Hermitian eigendecomposition, null spaces, and the Jordan-lemma
//! block decomposition.

mod eigen;
mod matrix;
mod subspace;

pub use eigen::hermitian_eigen;
pub use matrix::{
    c64, kron, projector, projector_onto_span, require_projector, Complex64, ComplexMatrix, Ket,
};
pub use subspace::{
    block_diagonal_residual, jordan_blocks, max_expectation_on_kernel,
    max_expectation_orthogonal_to, max_overlap_orthogonal_to, null_space, null_space_in_dim,
    orthonormal_span, psd_range, rank, JordanBlock,
};
