//! Sextic equations in `P(1,1,2,3)`: parsing, reduction to short
//! Weierstrass form, discriminant and j-invariant.
//!
//! Internally every surface is `w² = z³ + f4 z + f6`. The normal form
//! `w² + z³ + f4 z + f6 = 0` common in the literature becomes
//! `(f4, -f6)` under `z ↦ -z`, which leaves the discriminant unchanged.

mod parser;
mod sextic;
mod short;

pub use parser::{parse_polynomial, parse_xy_polynomial, ParseError, Polynomial};
pub use sextic::{parse_binary_form, parse_sextic, reduce_to_short, GeneralSextic};
pub use short::{cube_test, discriminant, j_invariant, JInvariant, WeierstrassData};
