//! Roots of `x^t - alpha^t` and the coefficient lists of their partial products.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CycloRational;
use crate::error::{Error, Result};

/// The roots `r_i = ζ_t^i · alpha` of `x^t - alpha^t`, for `i = 1..=t`, in Q(ζ_t).
pub fn roots_of_t_th_power(t: u32, alpha: &BigRational) -> Result<Vec<CycloRational>> {
    if alpha.is_zero() {
        return Err(Error::DegenerateRoot);
    }
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    Ok((1..=t as i64)
        .map(|i| CycloRational::zeta_pow(t, i).scale(alpha))
        .collect())
}

/// Ascending coefficients of `∏_{i > j} (x - r_i)` (1-based root indices).
///
/// For `j == t` the product is empty and the result is `[1]`.
pub fn elementary_coefficients(
    t: usize,
    j: usize,
    roots: &[CycloRational],
) -> Result<Vec<CycloRational>> {
    if roots.len() != t {
        return Err(Error::invalid(format!(
            "expected {t} roots, got {}",
            roots.len()
        )));
    }
    if j > t {
        return Err(Error::IndexOutOfRange {
            index: j as i64,
            lo: 0,
            hi: t as i64,
        });
    }
    let order = roots.first().map_or(1, CycloRational::order);
    let mut coeffs = vec![CycloRational::one(order)];
    for r in &roots[j..] {
        // multiply by (x - r)
        let mut next = vec![CycloRational::zero(order); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r));
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// Exact integer power of a rational.
pub(crate) fn rational_pow(r: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= r;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}
