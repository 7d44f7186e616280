//! Maxfaces (maximal surfaces with admissible singularities) in Minkowski
//! 3-space from rational Weierstrass data on the punctured Riemann sphere.
#![no_std]
// `!(x < tol)` is deliberate: NaN must fail the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod complex;
pub mod error;
pub mod gallery;
pub mod global;
pub mod mesh;
pub mod singular;
pub mod tol;
pub mod weierstrass;

pub use complex::{Complex64, Extended, Path, Polynomial, RationalMap};
pub use error::{Error, Result};
pub use tol::Tolerances;
pub use weierstrass::{Maxface, MinimalData, WeierstrassData};
