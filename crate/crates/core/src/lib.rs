//! Finite hyperstructures: classification against the polygroupoid,
//! polyquasigroup and polyloop hierarchy, higher-order nuclei, and the
//! containments between them.

pub mod axioms;
pub mod bundle;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod nuclei;
pub mod report;
pub mod search;
pub mod set;
pub mod table;

pub use axioms::{classify, Flag, StructureProfile, Verdict, Witness};
pub use bundle::StructureBundle;
pub use construct::{double_coset_algebra, quotient_hypergroup, GroupTable, SubgroupSpec};
pub use error::{Error, Result};
pub use io::{parse_structure_file, serialize_structure};
pub use nuclei::{
    nucleus, nucleus_bruteforce, nucleus_report, verify_containment_theorems, NucleusOrder,
    NucleusReport, NucleusSide, Strategy, TheoremReport,
};
pub use search::{random_hypergroupoid, search_structures, SearchOutcome, SearchSpec};
pub use set::{CarrierIndex, ElementSet};
pub use table::{derive_divisions, validate_table, DivisionPair, HyperTable};
