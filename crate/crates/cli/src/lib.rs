//! Expression parsing and verification suites behind the `ehall` binary.
pub mod expr;
pub mod suites;
