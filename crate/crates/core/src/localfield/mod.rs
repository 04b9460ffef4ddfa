//! Local fields: residue fields, truncated Laurent series, Newton polygons
//! and root finding.

mod newton;
mod residue;
mod roots;
mod series;

pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use residue::{RElem, ResidueField};
pub use roots::{additive_roots, hensel_lift, local_roots, AdditiveSolution, RootReport, SeriesPoly, CERT_MARGIN};
pub use series::{LaurentSeries, LocalField, EXACT};
