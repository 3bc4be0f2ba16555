pub mod cli;
pub mod field;
pub mod graded;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod ramification;

#[cfg(test)]
pub(crate) mod testing;
