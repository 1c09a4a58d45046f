//! Alphabets, label sets, segments and substitution systems.

pub mod alpha;
pub mod alphabet;
pub mod builtin;
pub mod config;
pub mod markov;
pub mod segment;
pub mod system;

pub use alpha::{AlphaEntry, AlphaSequence, XY};
pub use alphabet::{Alphabet, Symbol};
pub use builtin::builtin;
pub use config::{load_system, SystemConfig};
pub use markov::random_markov_segment;
pub use segment::{LabelSet, Segment};
pub use system::{Item, RuleBlock, SubstitutionSystem};
