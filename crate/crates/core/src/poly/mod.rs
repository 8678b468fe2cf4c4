//! Polynomial algebra over [`Scalar`](crate::Scalar).

pub mod bi;
pub mod binary;
pub mod form22;
pub mod roots;
pub mod uni;

pub use bi::{gcd_bipoly, resultant_wrt, BiPoly, Var};
pub use binary::{p1, p1_canonical, p1_det, p1_eq, p1_normalize, BinaryForm, Mobius, P1};
pub use form22::{BiForm, BiForm22};
pub use roots::{real_roots_isolate, RootInterval, Sturm};
pub use uni::UniPoly;

/// `p` with `p^2 = q`, when one exists.
pub fn square_root_of_poly(q: &UniPoly) -> Option<UniPoly> {
    q.square_root()
}
