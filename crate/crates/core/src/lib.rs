//! Certification of mildness for finitely presented pro-p groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`words`]: the free monoid on a finite alphabet, ordered-monoid
//!   comparators, combinatorial freeness, Lyndon words and shuffles.
//! * [`magnus`]: truncated noncommutative power series over `F_p` and the
//!   Magnus expansion `x -> 1 + x` of free pro-p group elements.
//! * [`fplinalg`]: exact row reduction over `F_p` with replayable operation
//!   logs.
//! * [`presentation`]: presentations, relator parsing, Koch-type and RAAG
//!   constructors, compatibility of words.
//! * [`mildness`]: coefficient matrices, the main mildness criterion, Anick's
//!   combinatorial criterion, the Golod-Shafarevich Hilbert series oracle and
//!   the partition, circuit and bipartite RAAG criteria.
//! * [`files`]: the JSON input formats consumed by the command-line tool.

pub mod error;
pub mod files;
pub mod fp;
pub mod fplinalg;
pub mod magnus;
pub mod mildness;
pub mod parse;
pub mod presentation;
pub mod words;

pub use error::{Error, Result};
pub use fp::{FpScalar, Prime};
pub use fplinalg::{FpMatrix, OpLog, RowOp, RowReduction};
pub use magnus::{expand, GroupElement, TruncatedSeries, UnitriangularMatrix, ZassenhausDegree};
pub use mildness::{
    AnickVerdict, CoefficientMatrix, CohomologyVector, CriterionFailure, HomogeneousPoly, MainVerdict,
    MildnessCertificate, OracleReport, OracleVerdict,
};
pub use presentation::{Graph, KochData, Presentation};
pub use words::{Alphabet, FormalSum, Freeness, Letter, LetterOrder, OrderSpec, Word};
