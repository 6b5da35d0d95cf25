//! Shock graphs of 2-D contour fragments.
//!
//! Contours are decomposed into point and open-segment sources, the exact
//! medial locus between them is propagated as analytic bisector pieces, the
//! result is assembled into a labelled graph, pruned by saliency, and exported
//! as fixed-width node feature vectors.

pub mod bisector;
pub mod cli;
pub mod contour;
pub mod corpus;
pub mod error;
pub mod export;
pub mod features;
pub mod geom;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod propagation;
pub mod random;
pub mod regularize;
pub mod spatial;

pub use error::{Error, Result};
