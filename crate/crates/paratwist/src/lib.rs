//! Exact twisting operators and Hecke operators for Siegel paramodular forms
//! of degree two.

pub mod charsum;
pub mod cli;
pub mod cosets;
pub mod exact;
pub mod forms;
pub mod fourier;
pub mod groups;
pub mod hecke;
pub mod properties;
pub mod twist;
