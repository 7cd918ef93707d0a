//! Exact computation with central complex hyperplane arrangements.
//!
//! The crate builds intersection lattices over the cyclotomic fields
//! Q(zeta_r) with arbitrary-precision rational coefficients, decides
//! supersolvability, verifies and searches for nice (factored) partitions,
//! and searches for inductive factorization certificates together with
//! their induction tables. A catalog module constructs the boolean, braid,
//! intermediate monomial, and real reflection arrangements the test suite
//! exercises, plus three explicitly coordinatized rank-3 restrictions of
//! E6/E7 with their published factorizations.
//!
//! Everything is exact: no floating point appears anywhere, since flat
//! identity depends on exact rank computations.
//!
//! Entry points:
//! - [`Arrangement`] with [`Arrangement::lattice`],
//!   [`Arrangement::restriction`], [`Arrangement::localization`],
//!   [`Arrangement::triple`], [`Arrangement::product`];
//! - [`modularity::supersolvable`] and [`modularity::chain_partition`];
//! - [`partition::is_nice`], [`partition::nice_search`],
//!   [`partition::hereditarily_nice`];
//! - [`induction::indfac_search`], [`induction::verify_certificate`],
//!   [`induction::induction_table`], [`induction::hereditarily_indfac`];
//! - [`iso::lattice_isomorphic`];
//! - [`catalog`] constructors and [`mod@format`] for the text file format.
//!
//! ```
//! use arrfac::{catalog, induction, partition, SearchLimits};
//!
//! let arr = catalog::intermediate(2, 3, 2)?;
//! let limits = SearchLimits::default();
//! assert_eq!(arr.exponent_candidates(), Some(vec![1, 3, 4]));
//!
//! let pi = partition::nice_search(&arr, &limits)?.expect("factored");
//! assert!(partition::is_nice(&arr, &pi)?.is_nice());
//!
//! let cert = induction::indfac_search(&arr, &limits)?.expect("certificate");
//! induction::verify_certificate(&arr, &cert)?;
//! # Ok::<(), arrfac::Error>(())
//! ```

pub mod arrangement;
pub mod catalog;
pub mod error;
pub mod field;
pub mod format;
pub mod indexset;
pub mod induction;
pub mod iso;
pub mod lattice;
pub mod linalg;
pub mod modularity;
pub mod partition;
pub mod poly;

pub use arrangement::{Arrangement, Hyperplane, Triple};
pub use error::{Error, Result};
pub use field::{cyclotomic_polynomial, FieldSpec, Rational, Scalar};
pub use indexset::IndexSet;
pub use induction::{FactorizationCertificate, InductionRow, RestrictionMap};
pub use lattice::{Flat, Lattice};
pub use modularity::ModularChain;
pub use partition::{NiceReport, Partition};
pub use poly::Polynomial;

/// Guards for the exponential searches (factorization search, lattice
/// isomorphism). Exceeding a limit is an error, not a silent `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_hyperplanes: usize,
    pub max_rank: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_hyperplanes: 24,
            max_rank: 5,
        }
    }
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits {
            max_hyperplanes: usize::MAX,
            max_rank: usize::MAX,
        }
    }

    pub fn check(&self, arr: &Arrangement) -> Result<()> {
        if arr.len() > self.max_hyperplanes {
            return Err(Error::SizeLimit(format!(
                "{} hyperplanes exceed the limit of {}",
                arr.len(),
                self.max_hyperplanes
            )));
        }
        if self.max_rank < usize::MAX && arr.rank() > self.max_rank {
            return Err(Error::SizeLimit(format!(
                "rank {} exceeds the limit of {}",
                arr.rank(),
                self.max_rank
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::arrangement::Arrangement;
    use crate::field::FieldSpec;

    pub(crate) fn rational_arrangement(dim: usize, normals: &[&[i64]]) -> Arrangement {
        let q = FieldSpec::rational();
        let rows = normals
            .iter()
            .map(|r| r.iter().map(|&c| q.integer(c)).collect())
            .collect();
        Arrangement::new(dim, q, rows).unwrap()
    }
}
