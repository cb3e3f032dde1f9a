use crate::error::{Error, Result};
use crate::polyalg::roots::match_root;
use crate::polyalg::{count_real_roots, isolate_roots, minimal_factor_at_root, resultant_in_beta, BivarIntPoly, IntPoly};
use serde::Serialize;

/// Outcome of the one-complex-place test for `Q(gamma)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexPlaceCheck {
    pub holds: bool,
    /// Product of `p(z, beta_k)` over the conjugates of beta.
    pub q: IntPoly,
    /// Irreducible factor of `q` vanishing at gamma.
    pub min_poly: IntPoly,
    pub signature: (usize, usize),
}

/// Whether the field generated by the root of `q = prod_k p(z, beta_k)` nearest
/// `gamma_approx` has exactly one complex place.
pub fn one_complex_place(
    beta_min: &IntPoly,
    p: &BivarIntPoly,
    gamma_approx: (f64, f64),
    prec: u32,
) -> Result<ComplexPlaceCheck> {
    if count_real_roots(beta_min) != beta_min.degree() {
        return Err(Error::Invalid(format!("{} is not totally real", beta_min)));
    }
    let q = resultant_in_beta(beta_min, p)?;
    let roots = isolate_roots(&q, prec)?;
    let (re, im) = gamma_approx;
    let idx = [1e-6, 1e-4, 2e-3]
        .iter()
        .find_map(|&tol| match_root(&roots, re, im.abs(), tol))
        .ok_or_else(|| Error::GammaNotMatched(format!("{}+{}i", re, im)))?;
    let min_poly = minimal_factor_at_root(&roots, idx)?;
    let r1 = count_real_roots(&min_poly);
    let r2 = (min_poly.degree() - r1) / 2;
    Ok(ComplexPlaceCheck { holds: r2 == 1, q, min_poly, signature: (r1, r2) })
}
