//! Sparse Laurent polynomials in `v` (and optionally `alpha`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclotomic::CycloRational;
use super::ring::{BaseField, Ring};
use crate::error::{Error, Result};

/// Exponent pair `(e_v, e_alpha)`; the derived order is the canonical term order.
pub type Exponent = (i64, i64);

/// A Laurent polynomial over one of the supported base fields.
///
/// No stored coefficient is zero, and for rings without `alpha` every
/// exponent has `e_alpha == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Exponent, CycloRational>,
}

impl LaurentPoly {
    pub fn zero(ring: Ring) -> Self {
        LaurentPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: Ring, n: i64) -> Self {
        Self::monomial_unchecked(ring, (0, 0), CycloRational::from_int(ring.coeff_order(), n))
    }

    pub fn from_bigint(ring: Ring, n: BigInt) -> Self {
        Self::monomial_unchecked(
            ring,
            (0, 0),
            CycloRational::from_rational(ring.coeff_order(), BigRational::from_integer(n)),
        )
    }

    /// A constant; fails if `c` does not lie in the base field of `ring`.
    pub fn constant(ring: Ring, c: CycloRational) -> Result<Self> {
        Self::monomial(ring, (0, 0), c)
    }

    pub fn monomial(ring: Ring, exp: Exponent, c: CycloRational) -> Result<Self> {
        if c.order() != ring.coeff_order() {
            return Err(Error::invalid(format!(
                "coefficient from Q(ζ_{}) used in {ring}",
                c.order()
            )));
        }
        if ring.base == BaseField::Integer && !c.is_integer() {
            return Err(Error::invalid(format!(
                "non-integer coefficient {c} in {ring}"
            )));
        }
        if exp.1 != 0 && !ring.alpha {
            return Err(Error::NoAlpha(ring));
        }
        Ok(Self::monomial_unchecked(ring, exp, c))
    }

    fn monomial_unchecked(ring: Ring, exp: Exponent, c: CycloRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { ring, terms }
    }

    pub fn v(ring: Ring) -> Self {
        Self::v_pow(ring, 1)
    }

    pub fn v_pow(ring: Ring, e: i64) -> Self {
        Self::monomial_unchecked(ring, (e, 0), CycloRational::one(ring.coeff_order()))
    }

    pub fn alpha(ring: Ring) -> Result<Self> {
        Self::alpha_pow(ring, 1)
    }

    pub fn alpha_pow(ring: Ring, e: i64) -> Result<Self> {
        if !ring.alpha {
            return Err(Error::NoAlpha(ring));
        }
        Ok(Self::monomial_unchecked(
            ring,
            (0, e),
            CycloRational::one(ring.coeff_order()),
        ))
    }

    /// The quantum integer `[2] = v + v^-1`.
    pub fn two(ring: Ring) -> Self {
        let one = CycloRational::one(ring.coeff_order());
        let mut terms = BTreeMap::new();
        terms.insert((-1, 0), one.clone());
        terms.insert((1, 0), one);
        LaurentPoly { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(CycloRational::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &CycloRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exponent) -> CycloRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| CycloRational::zero(self.ring.coeff_order()))
    }

    /// The value if this is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<CycloRational> {
        match self.terms.len() {
            0 => Some(CycloRational::zero(self.ring.coeff_order())),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    fn insert_add(terms: &mut BTreeMap<Exponent, CycloRational>, exp: Exponent, c: CycloRational) {
        use std::collections::btree_map::Entry;
        match terms.entry(exp) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        Ok(LaurentPoly {
            ring: self.ring,
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                Self::insert_add(&mut terms, (ea.0 + eb.0, ea.1 + eb.1), ca.mul(cb));
            }
        }
        Ok(LaurentPoly {
            ring: self.ring,
            terms,
        })
    }

    /// Multiplies by `v^ev alpha^ea`.
    pub fn shift(&self, exp: Exponent) -> Self {
        debug_assert!(exp.1 == 0 || self.ring.alpha);
        LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 + exp.0, e.1 + exp.1), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, a)| (*e, a.mul(c))).collect(),
        }
    }

    /// Inverse, defined exactly for units: single terms with an invertible coefficient.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.terms.len() != 1 {
            return Err(Error::NotInvertible(self.ring));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let ci = c.inv().ok_or(Error::DivisionByZero)?;
        Self::monomial(self.ring, (-e.0, -e.1), ci).map_err(|_| Error::NotInvertible(self.ring))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        if base.terms.len() == 1 {
            let (e, c) = base.terms.iter().next().unwrap();
            let k = k.abs();
            let ck = c.pow(k).expect("nonnegative power");
            return Ok(Self::monomial_unchecked(self.ring, (e.0 * k, e.1 * k), ck));
        }
        let mut acc = Self::one(self.ring);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Re-expresses this value in a larger ring (adding `alpha`, widening the base field).
    pub fn embed_into(&self, target: Ring) -> Result<Self> {
        if !self.ring.embeds_into(target) {
            return Err(Error::RingMismatch(self.ring, target));
        }
        let order = target.coeff_order();
        Ok(LaurentPoly {
            ring: target,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.embed(order)))
                .collect(),
        })
    }

    /// Substitutes a nonzero rational for `v`.
    pub fn specialize_v(&self, value: &BigRational) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let target = self.ring.widened_to_field();
        let order = target.coeff_order();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let p = num_traits::pow::Pow::pow(value, e.0 as i32);
            Self::insert_add(&mut terms, (0, e.1), c.embed(order).scale(&p));
        }
        Ok(LaurentPoly {
            ring: target,
            terms,
        })
    }

    /// Substitutes a value for `alpha`, landing in the same ring without `alpha`.
    pub fn specialize_alpha(&self, value: &CycloRational) -> Result<Self> {
        if !self.ring.alpha {
            return Err(Error::NoAlpha(self.ring));
        }
        let target = Ring {
            base: self.ring.base,
            alpha: false,
        };
        let target = if target.base == BaseField::Integer && !value.is_integer() {
            target.widened_to_field()
        } else {
            target
        };
        let value = value.embed(target.coeff_order());
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let p = value.pow(e.1).ok_or(Error::DivisionByZero)?;
            Self::insert_add(&mut terms, (e.0, 0), c.embed(target.coeff_order()).mul(&p));
        }
        Ok(LaurentPoly {
            ring: target,
            terms,
        })
    }

    fn degree_ranges(&self) -> ((i64, i64), (i64, i64)) {
        let mut v = (i64::MAX, i64::MIN);
        let mut a = (i64::MAX, i64::MIN);
        for e in self.terms.keys() {
            v = (v.0.min(e.0), v.1.max(e.0));
            a = (a.0.min(e.1), a.1.max(e.1));
        }
        (v, a)
    }

    /// Exact division in the Laurent ring; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() || self.ring != other.ring {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lead_e, lead_c) = other.terms.iter().next_back().unwrap();
        let lead_inv = lead_c.inv()?;
        // Every quotient exponent lies in the box cut out by the per-variable
        // degree ranges of self and other.
        let (sv, sa) = self.degree_ranges();
        let (ov, oa) = other.degree_ranges();
        let v_range = (sv.0 - ov.0)..=(sv.1 - ov.1);
        let a_range = (sa.0 - oa.0)..=(sa.1 - oa.1);
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let qe = (re.0 - lead_e.0, re.1 - lead_e.1);
            if !v_range.contains(&qe.0) || !a_range.contains(&qe.1) {
                return None;
            }
            let qc = rc.mul(&lead_inv);
            if self.ring.base == BaseField::Integer && !qc.is_integer() {
                return None;
            }
            let step = Self::monomial_unchecked(self.ring, qe, qc.clone());
            rem = rem.try_sub(&(&step * other)).ok()?;
            quot.insert(qe, qc);
        }
        Some(LaurentPoly {
            ring: self.ring,
            terms: quot,
        })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("scalar ring mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("scalar ring mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("scalar ring mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let one = CycloRational::one(self.ring.coeff_order());
        let minus_one = one.neg();
        for (k, ((ev, ea), c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            match ev {
                0 => {}
                1 => mono.push("v".to_string()),
                _ => mono.push(format!("v^{ev}")),
            }
            match ea {
                0 => {}
                1 => mono.push("alpha".to_string()),
                _ => mono.push(format!("alpha^{ea}")),
            }
            let mono = mono.join("*");
            let (neg, body) = if mono.is_empty() {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            } else if *c == one {
                (false, mono)
            } else if *c == minus_one {
                (true, mono)
            } else {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, format!("{rest}*{mono}")),
                    None => (false, format!("{s}*{mono}")),
                }
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

impl From<&LaurentPoly> for Vec<(Exponent, CycloRational)> {
    fn from(p: &LaurentPoly) -> Self {
        p.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }
}

impl LaurentPoly {
    /// Rebuilds from raw terms (used by deserialisation); validates every coefficient.
    pub fn from_terms(ring: Ring, terms: Vec<(Exponent, CycloRational)>) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (e, c) in terms {
            let m = Self::monomial(ring, e, c)?;
            out = out.try_add(&m)?;
        }
        Ok(out)
    }

    pub fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }

    pub fn from_rational(ring: Ring, r: BigRational) -> Result<Self> {
        Self::constant(ring, CycloRational::from_rational(ring.coeff_order(), r))
    }

    pub fn minus_one(ring: Ring) -> Self {
        Self::from_int(ring, -1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integer()
    }

    #[test]
    fn two_squared() {
        let two = LaurentPoly::two(z());
        let sq = &two * &two;
        let expected = &(&LaurentPoly::v_pow(z(), 2) + &LaurentPoly::from_int(z(), 2))
            + &LaurentPoly::v_pow(z(), -2);
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "v^2 + 2 + v^-2");
    }

    #[test]
    fn difference_of_squares() {
        let v = LaurentPoly::v(z());
        let vi = LaurentPoly::v_pow(z(), -1);
        let lhs = &(&v - &vi) * &(&v + &vi);
        assert_eq!(
            lhs,
            &LaurentPoly::v_pow(z(), 2) - &LaurentPoly::v_pow(z(), -2)
        );
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = LaurentPoly::one(z());
        let b = LaurentPoly::one(Ring::integer_alpha());
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(..))));
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn integer_units_only() {
        assert!(LaurentPoly::from_int(z(), 2).inv().is_err());
        assert!(LaurentPoly::from_int(z(), -1).inv().is_ok());
        assert!(LaurentPoly::from_int(Ring::rational(), 2).inv().is_ok());
        assert!(LaurentPoly::two(z()).inv().is_err());
    }

    #[test]
    fn exact_division() {
        let r = Ring::integer_alpha();
        let a = &LaurentPoly::two(r) + &LaurentPoly::alpha(r).unwrap();
        let b = &LaurentPoly::two(r) - &LaurentPoly::alpha_pow(r, -2).unwrap();
        let p = &a * &b;
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&a), Some(b));
        let c = &a + &LaurentPoly::one(r);
        assert_eq!(p.div_exact(&c), None);
    }
}
