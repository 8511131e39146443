// The guide lives in book/src as plain mdbook chapters. Each chapter is pulled
// in as the docs of an empty module so `cargo test --doc` runs its snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/coefficients.md")]
mod coefficients {}
#[doc = include_str!("../../../book/src/operators.md")]
mod operators {}
#[doc = include_str!("../../../book/src/matrices.md")]
mod matrices {}
#[doc = include_str!("../../../book/src/verification.md")]
mod verification {}
#[doc = include_str!("../../../book/src/oracles.md")]
mod oracles {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
