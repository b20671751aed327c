//! Article-comment relevance toolkit: annotation aggregation and agreement
//! statistics, document vectors, threshold and softmax classifiers with an
//! ordinal-weighted loss, vote ensembles, and a repeated-split evaluation
//! harness.

pub mod annotation;
pub mod classifiers;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod pipeline;
