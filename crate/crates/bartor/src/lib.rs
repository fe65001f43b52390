//! Iterated Tor algebras over prime fields, computed as truncated
//! bar-complex homology with the induced shuffle product, together with a
//! closed-form oracle for the same towers, higher THH series of the
//! integers and of p-completed number rings, and a ramification detector
//! for monic integer polynomials.
//!
//! Everything is exact arithmetic over F_p; degrees beyond a query's cap
//! are unknown rather than zero, and every operation that would need them
//! says so instead of guessing.

pub mod algebra;
pub mod bar;
pub mod error;
pub mod gfp;
pub mod oracle;
pub mod polyfp;
pub mod series;
pub mod thh;
pub mod tor;
pub mod tower;
pub mod verify;

pub use algebra::GradedAlgebra;
pub use bar::{BarComplex, Limits, WordOrder};
pub use error::{Error, Result};
pub use oracle::{OracleFault, Piece, PieceExpression};
pub use series::PoincareSeries;
pub use thh::{LocalKind, RamificationReport, Session, ThhAnswer};
pub use tor::{tor, TorAlgebra};
pub use tower::{run_tower, run_tower_detailed, TowerRun, TowerSpec, TowerStart};
pub use verify::{Divergence, VerifyConfig, VerifyReport};
