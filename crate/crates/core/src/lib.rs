//! Exact symbolic computation in the cohomology of compactified
//! configuration spaces of points in Euclidean space.
//!
//! The crate has four layers:
//!
//! * [`ring`] — the graded ring on `q` points in ambient dimension `n`:
//!   generators `w(i,j)`, rewriting to the admissible normal form, bases,
//!   Poincaré polynomials, and the ranks of the boundary quotients. The
//!   text format for elements lives in [`expr`], scalars (exact rationals,
//!   or a prime field) in [`scalar`].
//! * [`strata`] — the combinatorics of the compactification's boundary:
//!   nested-family labels for strata, enumeration by codimension, the face
//!   axioms and their verifier, and the face poset.
//! * [`mod@coproduct`] — two-color gradings, the block-shuffle renumbering, the
//!   stacking product on boundary quotients, and the dual coproduct with a
//!   transpose check tying the two together.
//! * [`pairing`] — evaluation of classes against connected sums from value
//!   tables, with a term-by-term audit, and the parity argument that makes
//!   bracket pairings vanish in odd ambient dimension.
//!
//! ```
//! use confcoh::{parse_element, Coefficients, RingParams};
//!
//! let params = RingParams::new(3, 3, Coefficients::Integers).unwrap();
//! let product = parse_element("w(1,3) * w(2,3)", &params).unwrap();
//! assert_eq!(product.to_string(), "w(1,2)*w(2,3) - w(1,2)*w(1,3)");
//! ```

pub mod coproduct;
pub mod error;
pub mod expr;
pub mod pairing;
pub mod ring;
pub mod scalar;
pub mod strata;

pub use coproduct::{
    coproduct, coproduct_element, delta_star, delta_star_colored, duality_matrix_check, sigma,
    ColoredGrading, ShufflePermutation, Split, TensorSum, TensorTerm, TensorTermRecord,
};
pub use error::{Error, Result};
pub use expr::{parse_element, parse_monomial_key};
pub use pairing::{
    eval_bracket, eval_connect_sum, AuditTerm, AuditTermRecord, BracketCertificate, BracketResult,
    ClassLabel, EvalOptions, EvalResult, PairingTable, ParityTable,
};
pub use ring::{
    basis, poincare_polynomial, quotient_cohomology_dims, Element, Generator, Monomial,
    PoincarePolynomial, RingParams,
};
pub use scalar::{parse_scalar, Coefficients, Scalar};
pub use strata::{
    admissible_clusters, enumerate_strata, face_multiply, face_poset_dot, face_poset_edges,
    verify_faces_axioms, FacesReport, StratumLabel,
};
