//! Drinfeld modules over F_q(t): twisted polynomials, phi_a, j-invariants,
//! twists and torsion.

mod module;
mod torsion;
mod twisted;

pub use module::{parse_kv, parse_list, DrinfeldModule};
pub use twisted::{series_compose, TwistedPoly};
pub use torsion::{denominator_bound, full_torsion, local_torsion_basis, pole_candidates, span_points, torsion_global, torsion_local, DenominatorBound, FullTorsion, TorsionConfig, TorsionModule};
