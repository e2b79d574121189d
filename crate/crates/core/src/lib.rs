//! Exact largeness, genericity and equational probability for finite groups.
//!
//! A subset `X` of a finite group `G` is *k-large* when any `k` left
//! translates of `X` still intersect, and *k-generic* when `k` left
//! translates cover `G`. The two notions are dual: `X` is k-large exactly
//! when `G∖X` is not k-generic. This crate computes both numbers exactly
//! with a branch-and-bound cover search, evaluates word equations over
//! `G^n`, and runs a registry of machine checks relating largeness of
//! solution sets to equational probabilities.

pub mod cli;
pub mod error;
pub mod exec;
pub mod group;
pub mod largeness;
pub mod probability;
pub mod subset;
pub mod verifier;
pub mod word;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use group::Group;
pub use subset::Subset;
