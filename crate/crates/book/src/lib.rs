//! Chapters of the guide, compiled so their snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}
#[doc = include_str!("../../../book/src/m24.md")]
pub mod m24 {}
#[doc = include_str!("../../../book/src/twining.md")]
pub mod twining {}
#[doc = include_str!("../../../book/src/traces.md")]
pub mod traces {}
#[doc = include_str!("../../../book/src/subgroups.md")]
pub mod subgroups {}
#[doc = include_str!("../../../book/src/multiplicities.md")]
pub mod multiplicities {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
