//! Code listings of the guide, compiled and run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/roots-of-unity.md")]
pub mod roots_of_unity {}

#[doc = include_str!("../../../book/src/characters.md")]
pub mod characters {}

#[doc = include_str!("../../../book/src/irreducibles.md")]
pub mod irreducibles {}

#[doc = include_str!("../../../book/src/reductions.md")]
pub mod reductions {}

#[doc = include_str!("../../../book/src/comparison.md")]
pub mod comparison {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
