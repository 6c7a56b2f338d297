//! Exact coefficient arithmetic.
//!
//! Every scalar is a [`LaurentPoly`] tagged with its [`Ring`]: Laurent
//! polynomials in `v`, optionally also in `alpha`, over Z, Q or a cyclotomic
//! field Q(ζ_m). The indeterminate `q` is never stored; it is always a power
//! of `alpha` (or a rational specialisation of one).

mod cyclotomic;
mod laurent;
mod ring;
mod roots;
mod upoly;

pub use cyclotomic::{cyclotomic_polynomial, totient, CycloRational};
pub use laurent::{Exponent, LaurentPoly};
pub use ring::{BaseField, Ring};
pub use roots::{elementary_coefficients, roots_of_t_th_power};
pub use upoly::QPoly;

pub(crate) use roots::rational_pow;

/// The scalar type used throughout the crate.
pub type Scalar = LaurentPoly;

use num_rational::BigRational;

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let bad = || crate::Error::invalid(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == 0.into() {
                return Err(crate::Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
