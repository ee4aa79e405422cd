//! Shared fixtures for the benchmark targets.

use klab_core::{FamilySpec, Graph};

/// Prism with every other leaf rung cut: a representative mid-density member.
pub fn alternating_member(n: usize) -> Graph {
    let deleted: Vec<usize> = (2..=n).step_by(2).collect();
    FamilySpec::new(n, deleted).expect("valid family spec").build()
}

pub fn intact_member(n: usize) -> Graph {
    FamilySpec::intact(n).expect("n >= 2").build()
}
