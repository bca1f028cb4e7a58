//! Exact symbolic dynamics of the aeroplane lamination map `s_{3/7}`.

pub mod angle;
pub mod coding;
pub mod exchange;
pub mod families;
pub mod lamination;
pub mod report;

pub use angle::{Angle, AngleError, OrbitType};
pub use coding::{Arc, CodingError, Leaf, Letter, PrecriticalPoint, RegionTable, Word};
pub use exchange::{ExchangeError, ScenarioConfig, ScenarioKind, Trace};
pub use families::{Families, FamilyError};
pub use lamination::{Lamination, LaminationError};
pub use report::{Claim, Report, Status};
