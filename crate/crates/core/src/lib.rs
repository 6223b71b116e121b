//! kstab: exact-arithmetic verification of the K-stability certificate for
//! the smooth Fano threefolds of degree 22 treated here, together with the
//! supporting del Pezzo surface computations and the conic-bundle
//! discriminant smoothness check.

pub mod delta;
pub mod discriminant;
pub mod exact;
pub mod lattice;
pub mod threefold;
