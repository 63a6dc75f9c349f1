//! Exact barcodes and induced matchings for morphisms of persistence
//! modules over a finite grid, computed over a prime field.

pub mod blmatch;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod induced;
pub mod io;
pub mod ladders;
pub mod matrix;
pub mod oracle;
pub mod persmod;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use induced::{GMatchingTable, IndexedBar, MMatchingTable, RepMatching, XModule};
pub use io::LadderFile;
pub use ladders::LadderCode;
pub use matrix::FieldMatrix;
pub use persmod::{
    Barcode, Generator, GridInterval, ImageFactorization, Morphism, PersistenceBasis,
    PersistenceModule,
};
pub use subspace::Subspace;
