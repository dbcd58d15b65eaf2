pub mod abelian;
pub mod brace;
pub mod chains;
pub mod error;
pub mod numtheory;
pub mod subgroup;
pub mod sweep;
pub mod prelie;
pub mod transform;
pub mod flows;
pub mod group;
pub mod json;
pub mod report;
pub mod suites;
pub mod cli;
