//! The cyclotomic fields Q(ζ_m), with elements reduced modulo Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::QPoly;

static PHI_CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();

/// The m-th cyclotomic polynomial, ascending integer coefficients.
///
/// Computed by dividing `x^m - 1` by `Φ_d` for every proper divisor `d` of `m`.
/// Panics if `m == 0`.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let cache = PHI_CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut poly = QPoly::from_ints(&num);
    for d in (1..m).filter(|d| m % d == 0) {
        let (q, r) = poly.div_rem(&QPoly::from_ints(&cyclotomic_polynomial(d)));
        debug_assert!(r.is_zero());
        poly = q;
    }
    let coeffs: Vec<BigInt> = poly
        .into_coeffs()
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    let coeffs = Arc::new(coeffs);
    cache.write().unwrap().insert(m, coeffs.clone());
    coeffs
}

/// Euler's totient, which is also the degree of Φ_m.
pub fn totient(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// An element of Q(ζ_m) as a rational vector of length φ(m) in the power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloRational {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloRational {
    pub fn zero(order: u32) -> Self {
        CycloRational {
            order,
            coeffs: vec![BigRational::zero(); totient(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(n.into()))
    }

    /// Builds an element from power-basis coefficients of any length, reducing mod Φ_m.
    pub fn from_power_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        CycloRational {
            order,
            coeffs: QPoly::rem_monic(coeffs, &phi),
        }
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_power_coeffs(order, c)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    /// Re-expresses this element in Q(ζ_target) via ζ_m = ζ_target^(target/m).
    /// Panics unless `m` divides `target`.
    pub fn embed(&self, target: u32) -> Self {
        assert!(
            target % self.order == 0,
            "Q(ζ_{}) does not embed in Q(ζ_{target})",
            self.order
        );
        let step = (target / self.order) as usize;
        let mut c = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * step] = a.clone();
        }
        Self::from_power_coeffs(target, c)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "mixed cyclotomic orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        CycloRational {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        CycloRational {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloRational {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.coeffs.len() == 1 {
            return CycloRational {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_power_coeffs(self.order, out)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloRational {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.order, r.recip()));
        }
        let phi = QPoly::from_ints(&cyclotomic_polynomial(self.order));
        let a = QPoly::from_coeffs(self.coeffs.clone());
        let (g, s) = QPoly::ext_gcd(&a, &phi);
        debug_assert_eq!(g, QPoly::one());
        Some(Self::from_power_coeffs(self.order, s.into_coeffs()))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.order);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CycloRational {
    /// Coefficients as strings (`"p"` or `"p/q"`), used for the JSON encoding.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return f.write_str(&fmt_rational(r));
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{i}", self.order),
            };
            let s = match (i, c.is_one(), (-c).is_one()) {
                (0, _, _) => fmt_rational(c),
                (_, true, _) => mono,
                (_, _, true) => format!("-{mono}"),
                _ if c.is_negative() || !c.is_integer() => format!("({})*{mono}", fmt_rational(c)),
                _ => format!("{}*{mono}", fmt_rational(c)),
            };
            parts.push(s);
        }
        write!(f, "({})", parts.join(" + "))
    }
}

impl fmt::Debug for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_divides_x_m_minus_one() {
        for m in 1..=24u32 {
            let phi = QPoly::from_ints(&cyclotomic_polynomial(m));
            assert_eq!(phi.degree(), Some(totient(m)));
            let mut xm = vec![BigInt::zero(); m as usize + 1];
            xm[0] = BigInt::from(-1);
            xm[m as usize] = BigInt::one();
            let (_, r) = QPoly::from_ints(&xm).div_rem(&phi);
            assert!(r.is_zero(), "Φ_{m} does not divide x^{m} - 1");
        }
    }

    #[test]
    fn zeta_has_order_m() {
        for m in 1..=15u32 {
            let z = CycloRational::zeta_pow(m, 1);
            assert!(z.pow(m as i64).unwrap().is_one());
            if m > 1 {
                assert!(!z.pow(1).unwrap().is_one());
            }
            // Φ_m(ζ) = 0
            let phi = cyclotomic_polynomial(m);
            let mut acc = CycloRational::zero(m);
            for (k, c) in phi.iter().enumerate() {
                let term = CycloRational::zeta_pow(m, k as i64)
                    .scale(&BigRational::from_integer(c.clone()));
                acc = acc.add(&term);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn inverse_round_trips() {
        let m = 15;
        let a = CycloRational::from_power_coeffs(
            m,
            vec![1, 2, 0, -3, 1]
                .into_iter()
                .map(|x| BigRational::from_integer(x.into()))
                .collect(),
        );
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let z3 = CycloRational::zeta_pow(3, 1);
        let e = z3.embed(15);
        assert_eq!(e, CycloRational::zeta_pow(15, 5));
        assert!(e.pow(3).unwrap().is_one());
        let a = z3.add(&CycloRational::from_int(3, 2));
        assert_eq!(a.mul(&a).embed(15), a.embed(15).mul(&a.embed(15)));
    }
}
