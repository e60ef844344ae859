//! Exact computational checks of the combinatorial structure of the Birkhoff
//! polytope `B_n = conv{P(σ) : σ ∈ S_n}` and of representation polytopes
//! `P(D) = conv{D(g) : g ∈ G}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactnum`]: rationals, rational matrices, exact rank.
//! - [`perm`]: permutations, permutation groups by explicit element list,
//!   centralizers, subgroup enumeration and regular-subgroup search.
//! - [`gamma`]: the group `Γ(G)` generated by left and right multiplications
//!   and inversion acting on `G`.
//! - [`cdlattice`]: Chermak-Delgado measure and lattice.
//! - [`hull`]: exact facet enumeration by double description.
//! - [`combsym`]: combinatorial automorphisms and equivalence from
//!   vertex-facet incidence.
//! - [`birkhoff`]: the facet sets `A_ij`, their intersection table and the
//!   `(σ, τ, ε)` normal form of a combinatorial symmetry.
//! - [`reppoly`]: matrix groups and their representation polytopes.
//! - [`format`]: text and JSON file formats shared with the command line.

pub mod birkhoff;
pub mod cdlattice;
pub mod combsym;
pub mod error;
pub mod exactnum;
pub mod format;
pub mod gamma;
pub mod groups;
pub mod hull;
pub mod perm;
pub mod reppoly;

pub use error::{Error, Result};
pub use exactnum::{Rational, RationalMatrix};
pub use perm::{Permutation, PermutationGroup};
