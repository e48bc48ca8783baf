//! Exact decision procedures, with machine-checkable certificates, for two
//! properness criteria on homogeneous spaces `SL(n,R)/H` with `H` split
//! abelian, plus a certified search for subalgebras where the two criteria
//! pull apart.
//!
//! Everything happens on the Cartan-projection side: a split subalgebra of
//! `H` is a subspace of the traceless diagonal matrices cut out by rational
//! normal vectors, the Weyl group is the symmetric group permuting
//! coordinates, and both criteria reduce to exact questions about the union
//! of Weyl images of that subspace:
//!
//! * a non-virtually-abelian discontinuous group for `SL(n,R)/H` exists iff
//!   the reverse-negation-fixed cone of the dominant chamber is *not*
//!   contained in the union ([`criteria::benoist_check`]);
//! * a proper `SL(2,R)`-action exists iff some nonzero hyperbolic element of
//!   an `sl(2,R)`-homomorphism — one per partition of `n` — escapes the
//!   union ([`criteria::sl2_obstruction`]).
//!
//! Arithmetic is exact throughout: rational coefficients over a declared
//! basis of formal irrationals ([`exact::ExactScalar`]), with sign
//! determination by refinable interval enclosures. Every verdict carries a
//! certificate that replays deterministically.
//!
//! ```
//! use weylproper::criteria::{benoist_check, sl2_obstruction, BenoistVerdict, SplitSubalgebra};
//! use weylproper::root_data::CartanPoint;
//!
//! let basis = weylproper::default_basis(5);
//! let normal = CartanPoint::parse(&basis, "6,6,1,-4,-9").unwrap();
//! let h = SplitSubalgebra::from_points(&[normal]).unwrap();
//!
//! // a non-virtually-abelian discontinuous group exists ...
//! assert_eq!(benoist_check(&h).unwrap().verdict, BenoistVerdict::Holds);
//! // ... yet no homomorphism SL(2,R) -> SL(5,R) acts properly
//! assert!(!sl2_obstruction(&h).unwrap().proper_sl2_exists);
//! ```
//!
//! The [`search`] module hunts for such subalgebras over bounded integer
//! normal vectors, deduplicated by symmetry and evaluated in parallel when
//! the `parallel` feature (default) is enabled.

pub mod criteria;
pub mod error;
pub mod exact;
pub(crate) mod linalg;
pub mod root_data;
pub mod search;
pub mod sl2_orbits;

use std::sync::Arc;

pub use error::{Error, Result};
pub use exact::{ExactScalar, IrrationalBasis, Rational, Sign};
pub use root_data::{CartanPoint, WeylElement};

/// The shipped square-root-of-primes basis, sized generously for rank `n`:
/// at least eight symbols, and never fewer than the `floor(n/2)` needed by
/// the symbolic witness construction.
pub fn default_basis(n: usize) -> Arc<IrrationalBasis> {
    IrrationalBasis::sqrt_primes(n.max(8))
}
