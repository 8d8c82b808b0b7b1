//! Knot diagrams, Alexander polynomials and invertible modules over the
//! Frobenius-twisted sheaf of fields on a knot complement.
//!
//! The crate has two independent routes to the same number. The algebraic
//! route builds the Dehn-presentation matrix `A(x)` of a diagram, evaluates it
//! at `x = q = p^nu` and reads off the prime-to-`p` torsion of its cokernel
//! ([`ztorsion::count_invertible_modules`]). The enumerative route searches
//! rank-one point-framed local systems over finite fields directly
//! ([`locsys::stable_class_count`]). For `p` not dividing the constant term of
//! the Alexander polynomial both equal `|Δ_K(q)|`.

pub mod alexander;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod finitefield;
pub mod laurent;
pub mod locsys;
pub mod presentation;
pub mod torsor;
pub mod ztorsion;

pub use alexander::{alexander_from_matrix, dehn_matrix, evaluate, fox_alexander, AlexPoly};
pub use diagram::{alexander_indices, faces, handedness, mirror, parse_pd, Crossing, Diagram, Handedness, Region, Regions};
pub use error::{Error, Result};
pub use finitefield::{make_field, FieldCtx, FieldElem};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use locsys::{orbifold_count, stable_class_count};
pub use presentation::{dehn_presentation, wirtinger_presentation, DehnPresentation, WirtingerPresentation};
pub use torsor::{count_torsors, twisted_relations, GroupFamily, GroupSpec};
pub use ztorsion::{count_invertible_modules, smith_normal_form, IntMatrix, SmithDecomposition};
