//! Laurent polynomials in `r` variables acting on sequences indexed by `Z^r`.
//!
//! A polynomial `d` pairs with a sequence `W` through `⟨d, W⟩ = Σ d_α W_α`
//! and acts on it by the shift `(d ∘ W)_β = Σ d_α W_{α+β}`. Systems of such
//! operators (polynomial matrices) define linear shift-invariant behaviors;
//! their periodic solutions are computed exactly by [`System::periodic_kernel`].
//!
//! Everything is generic over a [`Field`] context. The common choices have
//! aliases below.
//!
//! ```
//! use bilaurent::{parse_poly, scalar_product, Field, QSeq, Rationals};
//!
//! let d = parse_poly("2*X^-1 + 3", 1, &Rationals).unwrap();
//! let w = QSeq::from_ints(Rationals, 1, [([-1], 4), ([0], 1)]).unwrap();
//! assert_eq!(scalar_product(&d, &w).unwrap(), Rationals.from_i64(11));
//! ```

pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod laurent;
pub mod laws;
pub mod linalg;
pub mod operators;
pub mod parser;
pub mod sequence;
pub mod system;
mod terms;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldValue, Floats, PrimeField, Rationals};
pub use laurent::{LaurentPoly, PolyMatrix};
pub use operators::{
    check_adjoint, scalar_product, shift_apply, shift_apply_matrix, shift_apply_periodic, Shift,
};
pub use parser::{format_poly, parse_poly, parse_system, parse_value, AnySystem};
pub use sequence::{
    finite_seq_to_poly, poly_to_finite_seq, FiniteSeq, PeriodicSeq, SeqVector, Sequence,
};
pub use system::{behavior_contains, KernelBasis, System};
pub use terms::Exponent;

pub type QPoly = LaurentPoly<Rationals>;
pub type GfPoly = LaurentPoly<PrimeField>;
pub type RealPoly = LaurentPoly<Floats>;
pub type QSeq = FiniteSeq<Rationals>;
pub type GfSeq = FiniteSeq<PrimeField>;
pub type RealSeq = FiniteSeq<Floats>;
pub type QPeriodic = PeriodicSeq<Rationals>;
pub type GfPeriodic = PeriodicSeq<PrimeField>;
pub type QSystem = System<Rationals>;
pub type GfSystem = System<PrimeField>;
