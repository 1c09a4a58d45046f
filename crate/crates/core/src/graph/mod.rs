//! Linear graphs, rooted windows and the glued cover Ξ.

pub mod linear;
pub mod window;
pub mod xi;

pub use linear::LinearGraph;
pub use window::{apply_word, Window, WindowUniverse};
pub use xi::{CoverGroup, XiGraph, XiVertex};
