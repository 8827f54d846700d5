pub mod rational;
pub mod ramification;
pub mod groups;
pub mod padic;
pub mod deformdata;
pub mod stablegraph;
pub mod cli;
