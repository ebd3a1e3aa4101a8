//! Quantization of inhomogeneous Lie bialgebras as a computer-algebra kernel.
//!
//! The crate takes raw structure constants of a Lie bialgebra whose underlying
//! algebra is a semidirect sum with abelian invariant part, validates every
//! axiom of that category, and builds the quantized enveloping algebra in a
//! truncated power-series model: PBW normal ordering, coproduct, counit,
//! antipode, the dual algebra with its canonical pairing, the quantum double,
//! and universal R-matrices. Every identity the construction relies on is
//! machine-checked order by order with exact rational arithmetic.

pub mod bialg;
pub mod dual;
pub mod error;
pub mod hopf;
pub mod pbw;
pub mod poly;
pub mod rat;
pub mod samples;
pub mod tensor;

pub use bialg::{
    check_classical_morphism, check_cybe, classical_double, dualize, r_images,
    validate_bialgebra, ClassicalRMatrix, LieBialgebraSpec, MorphismSpec, Residual, Tensor3,
    ValidationReport, Violation,
};
pub use dual::{
    build_r_matrix, canonical_double_r, canonical_element, check_quasitriangular, check_qybe,
    pair, quantum_double, r_matrix_element, verify_canonical, verify_canonical_gram,
    verify_canonical_laws, verify_double_cross_relations, PairingContext,
};
pub use error::{Error, Result};
pub use hopf::HopfContext;
pub use pbw::{
    bch, build_algebra, eval_structure_series, pbw_basis, Gen, PbwElement, PbwMonomial,
    QuantizedAlgebra,
};
pub use poly::{matrix_series_apply, PolyMatrix, SeriesCoeffs, XPoly};
pub use rat::{format_rat, parse_rat, rat, rint, Rat};
pub use tensor::TensorElement;
