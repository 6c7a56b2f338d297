//! Linear combinations of diagrams and the subalgebras O_n and TL.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::scalars::{Ring, Scalar};

/// Which diagram algebra an element or module lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// All affine diagrams.
    DN,
    /// Diagrams with an even number of seam crossings.
    ON,
    /// The affine Temperley–Lieb algebra.
    TL,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::DN => "dn",
            Flavor::ON => "on",
            Flavor::TL => "tl",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dn" => Ok(Flavor::DN),
            "on" => Ok(Flavor::ON),
            "tl" => Ok(Flavor::TL),
            _ => Err(Error::invalid(format!(
                "unknown flavor {s:?} (expected dn, on or tl)"
            ))),
        }
    }
}

/// Whether `d` belongs to the span of the given flavor.
pub fn member(d: &Diagram, flavor: Flavor) -> bool {
    match flavor {
        Flavor::DN => true,
        Flavor::ON => !d.is_odd(),
        Flavor::TL => {
            let no_arcs = d.strand_count() == d.n();
            if no_arcs {
                *d == Diagram::identity(d.n())
            } else {
                !d.is_odd()
            }
        }
    }
}

/// A finite linear combination of diagrams, with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    ring: Ring,
    terms: BTreeMap<Diagram, Scalar>,
}

impl AlgebraElement {
    pub fn zero(n: usize, ring: Ring) -> Self {
        AlgebraElement {
            n,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, ring: Ring) -> Self {
        Self::from_diagram(Diagram::identity(n), ring)
    }

    pub fn from_diagram(d: Diagram, ring: Ring) -> Self {
        let n = d.n();
        let mut terms = BTreeMap::new();
        terms.insert(d, Scalar::one(ring));
        AlgebraElement { n, ring, terms }
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::one(n, c.ring()).scale(&c)
    }

    pub fn e(n: usize, i: usize, ring: Ring) -> Result<Self> {
        Ok(Self::from_diagram(Diagram::e(n, i)?, ring))
    }

    pub fn u_pow(n: usize, m: i64, ring: Ring) -> Self {
        Self::from_diagram(Diagram::u_pow(n, m), ring)
    }

    /// Builds from `(diagram, coefficient)` pairs, combining repeats.
    pub fn from_terms(
        n: usize,
        ring: Ring,
        terms: impl IntoIterator<Item = (Diagram, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n, ring);
        for (d, c) in terms {
            if d.n() != n {
                return Err(Error::RankMismatch(n, d.n()));
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch(ring, c.ring()));
            }
            out.add_term(d, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    /// The single diagram, if this element is one diagram with coefficient 1.
    pub fn as_diagram(&self) -> Option<&Diagram> {
        match self.terms.iter().next() {
            Some((d, c)) if self.terms.len() == 1 && c.is_one() => Some(d),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, d: Diagram, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|_, a| a * c)
    }

    fn map_coeffs(&self, f: impl Fn(&Diagram, &Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(self.n, self.ring);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(d, c));
        }
        out
    }

    /// The product `self · other`: diagrams compose with a factor `[2]` per closed loop.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let two = Scalar::two(self.ring);
        let mut two_pows = vec![Scalar::one(self.ring)];
        let mut out = Self::zero(self.n, self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (x, c) = a.compose(b)?;
                while two_pows.len() <= x as usize {
                    let next = two_pows.last().unwrap() * &two;
                    two_pows.push(next);
                }
                out.add_term(c, &(ca * cb) * &two_pows[x as usize]);
            }
        }
        Ok(out)
    }

    /// `self^k` for `k ≥ 0`; negative powers exist only for powers of `u` times units.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            let inv = self.inverse()?;
            return inv.pow(-k);
        }
        let mut acc = Self::one(self.n, self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit `c · u^m`.
    pub fn inverse(&self) -> Result<Self> {
        let (d, c) = match self.terms.iter().next() {
            Some(t) if self.terms.len() == 1 => t,
            _ => return Err(Error::NotInvertible(self.ring)),
        };
        let is_u_power = d.strand_count() == d.n();
        if !is_u_power {
            return Err(Error::NotInvertible(self.ring));
        }
        let w = d.winding()?;
        Ok(Self::u_pow(self.n, -w, self.ring).scale(&c.inv()?))
    }

    /// The automorphism that negates diagrams with odd seam parity.
    pub fn apply_epsilon(&self) -> Self {
        self.map_coeffs(|d, c| if d.is_odd() { -c } else { c.clone() })
    }

    /// `(a, b)` with `self = a + u·b` and every diagram of `a` and `b` even.
    pub fn decompose_on(&self) -> Result<(Self, Self)> {
        let mut a = Self::zero(self.n, self.ring);
        let mut b = Self::zero(self.n, self.ring);
        let u_inv = Diagram::u_pow(self.n, -1);
        for (d, c) in &self.terms {
            if d.is_odd() {
                let (x, e) = u_inv.compose(d)?;
                debug_assert_eq!(x, 0);
                b.add_term(e, c.clone());
            } else {
                a.add_term(d.clone(), c.clone());
            }
        }
        Ok((a, b))
    }

    /// Whether every term lies in the given flavor's span.
    pub fn is_in(&self, flavor: Flavor) -> bool {
        self.terms.keys().all(|d| member(d, flavor))
    }

    /// Whether every term has at most `t` through-strands.
    pub fn in_ideal(&self, t: usize) -> bool {
        self.terms.keys().all(|d| d.strand_count() <= t)
    }

    /// Changes the coefficient ring.
    pub fn embed_into(&self, ring: Ring) -> Result<Self> {
        let mut out = Self::zero(self.n, ring);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.embed_into(ring)?);
        }
        Ok(out)
    }

    /// Applies a map to every coefficient, possibly changing the ring.
    pub fn try_map_coeffs(
        &self,
        ring: Ring,
        f: impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<Self> {
        let mut out = Self::zero(self.n, ring);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The anti-involution applied termwise.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n, self.ring);
        for (d, c) in &self.terms {
            out.add_term(d.star(), c.clone());
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{d}")?;
            } else {
                write!(f, "({c}){d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (n = {}, {})", self.n, self.ring)
    }
}

/// Outcome of checking one family of defining relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl RelationCheck {
    fn new(name: &str) -> Self {
        RelationCheck {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cyclic index in `1..=n`.
pub(crate) fn cyc(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

/// Whether `i` and `j` are distinct and not cyclically adjacent.
pub(crate) fn non_adjacent(i: usize, j: usize, n: usize) -> bool {
    i != j && cyc(i as i64 + 1, n) != j && cyc(j as i64 + 1, n) != i
}

/// A generic test of the defining relations, parameterised by how generators
/// act and how products and equality are computed.
pub(crate) trait Presentation {
    type Elem: Clone;

    fn n(&self) -> usize;
    fn e(&self, i: usize) -> Result<Self::Elem>;
    /// `u^m` for `m = ±1` (only used when the source algebra contains `u`).
    fn u(&self, m: i64) -> Result<Self::Elem>;
    /// `u^m` for `m = ±2`.
    fn u2(&self, m: i64) -> Result<Self::Elem>;
    fn has_u(&self) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale_two(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn product(&self, factors: &[Self::Elem]) -> Result<Self::Elem> {
        let mut it = factors.iter();
        let mut acc = it
            .next()
            .ok_or_else(|| Error::internal("empty product"))?
            .clone();
        for f in it {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Relations (1)–(3) of the Temperley–Lieb presentation, the conjugation
    /// and power relations for `u` (or `u²`), and the long-word identity.
    fn check_relations(&self) -> Result<Vec<RelationCheck>> {
        let n = self.n();
        let e: Vec<Self::Elem> = (1..=n).map(|i| self.e(i)).collect::<Result<_>>()?;
        let ei = |i: i64| &e[cyc(i, n) - 1];
        let mut checks = Vec::new();

        let mut r = RelationCheck::new("E_i^2 = [2]E_i");
        for i in 1..=n as i64 {
            let lhs = self.mul(ei(i), ei(i))?;
            r.record(self.eq(&lhs, &self.scale_two(ei(i))?), || {
                format!("i = {i}")
            });
        }
        checks.push(r);

        let mut r = RelationCheck::new("E_iE_j = E_jE_i (i, j not adjacent)");
        for i in 1..=n {
            for j in 1..=n {
                if non_adjacent(i, j, n) {
                    let lhs = self.mul(&e[i - 1], &e[j - 1])?;
                    let rhs = self.mul(&e[j - 1], &e[i - 1])?;
                    r.record(self.eq(&lhs, &rhs), || format!("i = {i}, j = {j}"));
                }
            }
        }
        checks.push(r);

        let mut r = RelationCheck::new("E_iE_{i±1}E_i = E_i");
        for i in 1..=n as i64 {
            for d in [-1, 1] {
                let lhs = self.product(&[ei(i).clone(), ei(i + d).clone(), ei(i).clone()])?;
                r.record(self.eq(&lhs, ei(i)), || {
                    format!("i = {i}, j = {}", cyc(i + d, n))
                });
            }
        }
        checks.push(r);

        if self.has_u() {
            let (u, ui) = (self.u(1)?, self.u(-1)?);
            let mut r = RelationCheck::new("uE_iu^-1 = E_{i+1}");
            for i in 1..=n as i64 {
                let lhs = self.product(&[u.clone(), ei(i).clone(), ui.clone()])?;
                r.record(self.eq(&lhs, ei(i + 1)), || format!("i = {i}"));
            }
            checks.push(r);

            let mut r = RelationCheck::new("(uE_1)^(n-1) = u^n(uE_1)");
            let ue1 = self.mul(&u, ei(1))?;
            let lhs = self.product(&vec![ue1.clone(); n - 1])?;
            let mut un = vec![u.clone(); n];
            un.push(ue1);
            let rhs = self.product(&un)?;
            r.record(self.eq(&lhs, &rhs), String::new);
            checks.push(r);
        }

        let (u2, u2i) = (self.u2(2)?, self.u2(-2)?);
        let mut r = RelationCheck::new("u^2E_iu^-2 = E_{i+2}");
        for i in 1..=n as i64 {
            let lhs = self.product(&[u2.clone(), ei(i).clone(), u2i.clone()])?;
            r.record(self.eq(&lhs, ei(i + 2)), || format!("i = {i}"));
        }
        checks.push(r);

        let mut r = RelationCheck::new("E_{i+2}E_{i+3}...E_i = u^2E_i");
        for i in 1..=n as i64 {
            let word: Vec<Self::Elem> = (0..n as i64 - 1).map(|k| ei(i + 2 + k).clone()).collect();
            let lhs = self.product(&word)?;
            let rhs = self.mul(&u2, ei(i))?;
            r.record(self.eq(&lhs, &rhs), || format!("i = {i}"));
        }
        checks.push(r);
        Ok(checks)
    }
}

struct DiagramPresentation {
    n: usize,
    ring: Ring,
}

impl Presentation for DiagramPresentation {
    type Elem = AlgebraElement;

    fn n(&self) -> usize {
        self.n
    }
    fn e(&self, i: usize) -> Result<AlgebraElement> {
        AlgebraElement::e(self.n, i, self.ring)
    }
    fn u(&self, m: i64) -> Result<AlgebraElement> {
        Ok(AlgebraElement::u_pow(self.n, m, self.ring))
    }
    fn u2(&self, m: i64) -> Result<AlgebraElement> {
        Ok(AlgebraElement::u_pow(self.n, m, self.ring))
    }
    fn has_u(&self) -> bool {
        true
    }
    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        a.mul(b)
    }
    fn scale_two(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(a.scale(&Scalar::two(self.ring)))
    }
    fn eq(&self, a: &AlgebraElement, b: &AlgebraElement) -> bool {
        a == b
    }
}

/// Checks the defining relations of the affine diagram algebra in exact diagram arithmetic.
pub fn check_presentation(n: usize) -> Result<Vec<RelationCheck>> {
    if n < 3 {
        return Err(Error::invalid("rank must be at least 3"));
    }
    DiagramPresentation {
        n,
        ring: Ring::integer(),
    }
    .check_relations()
}

/// Whether `u^n` commutes with every generator `E_i`, `u` and `u^-1`.
pub fn check_central(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::invalid("rank must be at least 3"));
    }
    let ring = Ring::integer();
    let un = AlgebraElement::u_pow(n, n as i64, ring);
    let mut gens: Vec<AlgebraElement> = (1..=n)
        .map(|i| AlgebraElement::e(n, i, ring))
        .collect::<Result<_>>()?;
    gens.push(AlgebraElement::u_pow(n, 1, ring));
    gens.push(AlgebraElement::u_pow(n, -1, ring));
    for g in &gens {
        if un.mul(g)? != g.mul(&un)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integer()
    }

    #[test]
    fn e_squared() {
        let e1 = AlgebraElement::e(4, 1, z()).unwrap();
        assert_eq!(e1.mul(&e1).unwrap(), e1.scale(&Scalar::two(z())));
    }

    #[test]
    fn membership() {
        let n = 4;
        let u2 = Diagram::u_pow(n, 2);
        assert!(member(&u2, Flavor::ON));
        assert!(!member(&u2, Flavor::TL));
        assert!(!member(&Diagram::u_pow(n, 1), Flavor::ON));
        for i in 1..=n {
            assert!(member(&Diagram::e(n, i).unwrap(), Flavor::TL));
        }
        assert!(member(&Diagram::identity(n), Flavor::TL));
    }

    #[test]
    fn decomposition_examples() {
        let n = 5;
        let e1 = AlgebraElement::e(n, 1, z()).unwrap();
        let u = AlgebraElement::u_pow(n, 1, z());
        let zero = AlgebraElement::zero(n, z());
        assert_eq!(e1.decompose_on().unwrap(), (e1.clone(), zero.clone()));
        assert_eq!(
            u.decompose_on().unwrap(),
            (zero, AlgebraElement::one(n, z()))
        );
        let x = e1.add(&AlgebraElement::u_pow(n, 3, z())).unwrap();
        assert_eq!(
            x.decompose_on().unwrap(),
            (e1, AlgebraElement::u_pow(n, 2, z()))
        );
    }

    #[test]
    fn epsilon_examples() {
        let n = 4;
        let e1 = AlgebraElement::e(n, 1, z()).unwrap();
        let u = AlgebraElement::u_pow(n, 1, z());
        let x = e1.add(&u).unwrap();
        assert_eq!(x.apply_epsilon(), e1.sub(&u).unwrap());
        let ueu = u.mul(&e1).unwrap().mul(&u).unwrap();
        assert_eq!(ueu.apply_epsilon(), ueu);
    }

    #[test]
    fn ideal_filtration() {
        let n = 5;
        let e: Vec<_> = (1..=n)
            .map(|i| AlgebraElement::e(n, i, z()).unwrap())
            .collect();
        assert!(e[0].in_ideal(n - 2) && !e[0].in_ideal(n - 3));
        assert!(!AlgebraElement::one(n, z()).in_ideal(n - 1));
        let mut p = e[0].clone();
        for x in &e[1..] {
            p = p.mul(x).unwrap();
        }
        assert!(p.in_ideal(n - 2));
    }

    #[test]
    fn long_word_identity_at_rank_four() {
        let n = 4;
        let e = |i| AlgebraElement::e(n, i, z()).unwrap();
        let lhs = e(3).mul(&e(4)).unwrap().mul(&e(1)).unwrap();
        let rhs = AlgebraElement::u_pow(n, 2, z()).mul(&e(1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn presentation_holds() {
        for n in 3..=6 {
            for r in check_presentation(n).unwrap() {
                assert!(r.passed(), "n = {n}: {} failed at {:?}", r.name, r.failures);
            }
            assert!(check_central(n).unwrap());
        }
    }
}
