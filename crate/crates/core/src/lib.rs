//! Exact modular data for sl2/sl3 WZW fusion categories, their Z₃
//! simple-current condensations, and checks against tabulated data.

pub mod condense;
pub mod exactnum;
pub mod fusring;
pub mod paperdata;
pub mod report;
pub mod wzw;

pub use condense::{CondensedCategory, CondensedLabel};
pub use exactnum::{CycNum, QuadInt, Rational};
pub use fusring::{FusionRing, ModularData};
pub use report::{Report, Status};
pub use wzw::{AlgebraSpec, LevelWeight, RankType};
