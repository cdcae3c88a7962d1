//! Exact q,y-series for Mathieu moonshine: eta and theta products, the
//! Appell-Lerch sum, twining weak Jacobi forms, the mock modular forms `H_g`
//! and the graded-trace constructions whose traces reproduce them.

pub mod coeff;
pub mod cyclotomic;
pub mod error;
pub mod factor;
pub mod series;

pub use coeff::{q, qi, Coeff, Q};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use factor::{Factor, FactorProduct, FactorSum, Span};
pub use series::{QSeries, QYSeries, UNBOUNDED};

pub mod classical;
pub mod m24;
pub mod jacobi;
pub mod trace;
pub mod subgroups;
pub mod verify;
