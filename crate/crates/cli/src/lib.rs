//! Command-line front end for the two-parameter quantum group kernel:
//! an expression grammar with a parser and printer, structured verification
//! reports, and the verification suites themselves.

pub mod expr;
pub mod report;
pub mod suites;
