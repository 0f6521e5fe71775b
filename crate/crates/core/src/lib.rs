//! Hom-complexes of simplicial complexes, combinatorial holonomy and
//! parallel transport, exact integral homology, and topological lower
//! bounds for chromatic numbers.
//!
//! ```
//! use homcx::{chains_of, homology, HomComplex, SimplicialComplex, Standard};
//!
//! let k2 = SimplicialComplex::standard(Standard::Complete(2)).unwrap();
//! let k4 = SimplicialComplex::standard(Standard::Complete(4)).unwrap();
//! let h = HomComplex::build(&k2, &k4, None).unwrap();
//! let hg = homology(&chains_of(&h).unwrap(), true);
//! assert!(hg.is_sphere(2));
//! ```

pub mod chain;
pub mod chromatic;
pub mod collapse;
pub mod error;
pub mod hom;
pub mod projectivity;
pub mod scalar;
pub mod simplicial;

pub use chain::{
    chain_map_of, chains_of, connectivity_estimate, homology, induced_on_homology, simplicial_chains, ChainComplex, ChainMap, Connectivity,
    HomologyGroups, InducedMap, IntegralHomology, SparseMatrix,
};
pub use chromatic::{chromatic_number, lovasz_bound_report, phi_d_certify, two_iota_star_check, BoundReport, PhiCertificate};
pub use collapse::{find_shelling, fold_map, is_tree_like, verify_collapse_equivalence, SearchOutcome};
pub use error::{Error, Result};
pub use hom::{induced_postcompose, induced_precompose, CellularMap, HomComplex, MultiHom, VertexSet};
pub use projectivity::{holonomy_group, transport_map, HolonomyGroup, Projectivity};
pub use scalar::{EuclideanRing, Fp, Overflow};
pub use simplicial::{Simplex, SimplicialComplex, Standard, VertexMap};

/// Integer chains in machine words, the default coefficient type.
pub type IntChainComplex = ChainComplex<i64>;
pub type IntChainMap = ChainMap<i64>;
/// Arbitrary-precision integer chains.
pub type BigChainComplex = ChainComplex<num_bigint::BigInt>;
/// Chains mod 2 and mod 3, for universal-coefficient cross-checks.
pub type F2ChainComplex = ChainComplex<Fp<2>>;
pub type F3ChainComplex = ChainComplex<Fp<3>>;
