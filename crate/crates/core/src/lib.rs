//! Binomial coefficients modulo primes, prime powers and composites.
//!
//! The crate is layered bottom-up:
//!
//! * [`digits`] and [`fraction`] provide base-`p` digit strings, word counts,
//!   `p`-adic valuations and exact fractional parts;
//! * [`binom`] computes `C(n, m)` exactly and modulo `p^α` (Kummer, Lucas,
//!   Anton and a factorial-table method for higher powers);
//! * [`scan`] streams a whole row of Pascal's triangle modulo any `k`;
//! * [`census`] counts residue classes within a row and evaluates the known
//!   closed forms for those counts;
//! * [`audit`] checks the mod-16 census divisibility pattern and the
//!   `C(n, 2p) mod n` exceptional-class formula against exact arithmetic;
//! * [`harness`] is the command-line driver with parallel, checkpointed scans.

pub mod audit;
pub mod binom;
pub mod census;
pub mod digits;
mod error;
pub mod fraction;
pub mod harness;
pub mod modarith;
pub mod scan;

pub use error::{Error, Result};

pub use binom::{
    anton_unit, binom_exact, binom_mod, binom_mod_pk, kummer_valuation, lucas_residue,
    PrimePowerBinomial,
};
pub use census::{
    census_row, davis_webb_mod4, fine_count, glaisher_count, granville_mod8_check,
    hexel_sachs_mod3, RowResidueCensus,
};
pub use digits::{count_word, mod_nonneg, nu, to_base, BaseDigits};
pub use fraction::{frac, ReducedFraction};
pub use scan::{row_residues, FactoredResidue, RowScan, RowScanner};
