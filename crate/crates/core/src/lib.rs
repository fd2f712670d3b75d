//! Staircase algebras of partitions.
//!
//! Every partition `λ` determines a quiver on the boxes of its Young diagram
//! with commutativity relations on unit squares. This crate builds that
//! quiver, evaluates its Tits form exactly, classifies the representation
//! type, knits preprojective Auslander-Reiten components and works with the
//! graded nilpotent pairs the algebras model.

pub mod arquiver;
pub mod classify;
pub mod error;
pub mod hierarchy;
pub mod linalg;
pub mod nilpairs;
pub mod partition;
pub mod quadform;
pub mod quiver;

pub use arquiver::{count_indecomposables, knit, orbit_quiver, ARQuiver, OrbitQuiver};
pub use classify::{classify, orbit_type, tensor_type, verify_classification, wildness_witness, ClassificationReport, OrbitType, RepType};
pub use error::{Error, Result};
pub use hierarchy::{hierarchy, Hierarchy};
pub use nilpairs::{
    finiteness_partition, finiteness_space, hom_dim, is_isomorphic, oracle_count_small, two_param_family, BigradedSpace, Finiteness,
    GradedPair, Representation,
};
pub use partition::{parse_partition, partitions_of, Partition};
pub use quadform::{bundled_radical_generators, tits_form, Decision, FormVerdict, SymForm, UnitForm, Verdict};
pub use quiver::{Arrow, ArrowKind, DimVector, IntVector, StaircaseQuiver, Vertex};
