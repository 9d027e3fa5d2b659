//! Permutation groups, coset systems and the group constructions used to
//! feed trace-polynomial families.

mod coset;
mod group;
mod perm;
mod spec;

pub use coset::CosetSystem;
pub use group::{PermutationGroup, DEFAULT_ORDER_CAP};
pub use perm::Permutation;
pub use spec::{
    build_group, direct_product, regular_representation, BuildLimits, BuiltGroup, GroupKind,
    GroupSpec,
};
