// `!(x > 0.0)` is used throughout so that NaN fails range checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod error;
pub mod euclidean;
pub mod exponents;
pub mod quadrature;
pub mod radial;
pub mod specfun;
pub mod weyl;
pub mod heisenberg;
pub mod torus;
pub mod su2;
pub mod corpus;

// compiles the book's code blocks as doctests
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/constants.md")]
    mod constants {}
    #[doc = include_str!("../../../book/src/euclidean.md")]
    mod euclidean {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/heisenberg.md")]
    mod heisenberg {}
    #[doc = include_str!("../../../book/src/torus.md")]
    mod torus {}
    #[doc = include_str!("../../../book/src/su2.md")]
    mod su2 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
