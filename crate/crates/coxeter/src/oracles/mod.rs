//! Independent brute-force verifiers for the closed-form invariants: coset
//! enumeration for finite group orders and Smith normal form for
//! abelianizations. Neither shares code with the classification path it
//! checks.

mod snf;
mod todd_coxeter;

pub use snf::{smith_diagonal, snf_abelianization, AbelianInvariants};
pub use todd_coxeter::{todd_coxeter, CosetTable, Enumeration, LimitExceeded};

/// Default definition limit for coset enumeration; every desk-scale target
/// closes well below this.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;
