pub mod cli;
pub mod format;
pub mod report;
pub mod suite;
