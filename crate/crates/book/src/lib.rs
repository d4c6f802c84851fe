// mdbook cannot run examples that depend on workspace crates, so each
// chapter is pulled in as the doc comment of an empty module and rustdoc
// tests the code blocks. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/index.md")]
pub mod index {}

#[doc = include_str!("../../../book/src/jack.md")]
pub mod jack {}

#[doc = include_str!("../../../book/src/intertwining.md")]
pub mod intertwining {}

#[doc = include_str!("../../../book/src/kernel.md")]
pub mod kernel {}

#[doc = include_str!("../../../book/src/diffusions.md")]
pub mod diffusions {}

#[doc = include_str!("../../../book/src/ensembles.md")]
pub mod ensembles {}

#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
