//! Group elements, equality by window signatures, growth, orders and
//! permutation groups.

pub mod growth;
pub mod order;
pub mod perm;
pub mod restrict;
pub mod schreier_sims;
pub mod signature;
pub mod word;

pub use growth::{enumerate_ball, growth, growth_in, Ball, GrowthTable};
pub use order::{order, Order, OrderOptions, OrderReport};
pub use perm::Perm;
pub use restrict::{find_copies, restrict, CopySpan, Restriction};
pub use schreier_sims::{classify_on_support, group_order, Classification, StabilizerChain};
pub use signature::{equal, signature, ElementSignature};
pub use word::{commutator, conjugate, power, GroupWord};
