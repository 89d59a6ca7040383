//! Verification suites. (Placeholder while the rest of the crate builds.)
