//! Exact arithmetic kernel.

pub mod complex;
pub mod mpoly;
pub mod puiseux;
pub mod rat;
pub mod resultant;
pub mod roots;
pub mod xpoly;
pub mod ypoly;

pub use complex::Complex;
pub use mpoly::{BiPoly, MPoly};
pub use puiseux::{newton_puiseux_branches, PuiseuxBranch};
pub use rat::{int, rat, Rat};
pub use resultant::resultant;
pub use roots::{root_find, RootMode, DEFAULT_TOLERANCE};
pub use xpoly::XPoly;

use crate::error::{Error, Result};

/// Squarefree part of `p` with respect to `var` (content in the other
/// variable removed) and the number of distinct roots over the algebraic
/// closure of the coefficient field, i.e. its degree in `var`.
pub fn squarefree_distinct(p: &BiPoly, var: usize) -> Result<(BiPoly, usize)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert_eq!(p.nvars(), 2, "expected a two-variable polynomial");
    let other = 1 - var;
    let up = p.to_upoly(var, other);
    let sq = ypoly::squarefree_part(&up);
    let count = ypoly::deg(&sq);
    Ok((BiPoly::from_upoly(2, var, other, &sq), count))
}
