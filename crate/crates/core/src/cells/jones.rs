//! The q-Jones quotients: diagrams modulo `u^n = q` (and, in even rank, modulo I_0).

use crate::algebra::AlgebraElement;
use crate::annular::{enumerate_annular, AnnularInvolution};
use crate::diagram::{r_offset, seam_arcs, Diagram};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Where the window of winding representatives starts in even rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum EvenBase {
    /// `r(S1, S2) ∈ {0, 1}`: the smallest winding making the diagram even.
    #[default]
    Offset,
    /// `p(S1) + p(S2) ∈ {0, 1, 2}`, the number of seam-crossing arcs on both circles.
    ArcCount,
}

impl EvenBase {
    pub fn name(self) -> &'static str {
        match self {
            EvenBase::Offset => "offset",
            EvenBase::ArcCount => "arc-count",
        }
    }

    pub fn base(self, top: &AnnularInvolution, bot: &AnnularInvolution) -> Result<i64> {
        match self {
            EvenBase::Offset => r_offset(top, bot),
            EvenBase::ArcCount => Ok(seam_arcs(top) + seam_arcs(bot)),
        }
    }
}

impl std::str::FromStr for EvenBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "offset" => Ok(EvenBase::Offset),
            "arc-count" => Ok(EvenBase::ArcCount),
            _ => Err(Error::invalid(format!(
                "unknown even-rank base {s:?}; expected offset or arc-count"
            ))),
        }
    }
}

/// Through-strand counts with a nonzero stratum: all of them in odd rank, the
/// positive even ones in even rank.
pub fn strata(n: usize) -> Vec<usize> {
    (1..=n).filter(|t| (n - t) % 2 == 0).collect()
}

/// Window of representatives for a stratum: `base + step·k` for `k` in `0..len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub base: i64,
    pub step: i64,
    pub len: usize,
}

/// The quotient map onto J_q(n).
#[derive(Clone, Debug)]
pub struct JonesQuotient {
    n: usize,
    q: Scalar,
    q_inv: Scalar,
    even_base: EvenBase,
}

impl JonesQuotient {
    /// `q` must be a unit of its ring.
    pub fn new(n: usize, q: Scalar) -> Result<Self> {
        Self::with_base(n, q, EvenBase::default())
    }

    pub fn with_base(n: usize, q: Scalar, even_base: EvenBase) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("rank must be at least 3"));
        }
        let q_inv = q.inv()?;
        Ok(JonesQuotient {
            n,
            q,
            q_inv,
            even_base,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn even_base(&self) -> EvenBase {
        self.even_base
    }

    pub fn is_even_rank(&self) -> bool {
        self.n % 2 == 0
    }

    /// The window for diagrams with involutions `top`, `bot` (with `t ≥ 1` fixed points).
    pub fn window(&self, top: &AnnularInvolution, bot: &AnnularInvolution) -> Result<Window> {
        let t = top.num_fixed();
        if t == 0 {
            return Err(Error::WindingUndefined);
        }
        Ok(if self.is_even_rank() {
            Window {
                base: self.even_base.base(top, bot)?,
                step: 2,
                len: t / 2,
            }
        } else {
            Window {
                base: 0,
                step: 1,
                len: t,
            }
        })
    }

    fn q_pow(&self, s: i64) -> Scalar {
        let b = if s < 0 { &self.q_inv } else { &self.q };
        b.pow(s.abs()).expect("nonnegative power")
    }

    /// Root position of a single diagram: `(index into the window, q-power)`.
    /// `None` for diagrams in I_0 (even rank).
    pub fn position(&self, d: &Diagram) -> Result<Option<(Window, usize, i64)>> {
        if self.is_even_rank() && d.is_odd() {
            return Err(Error::NotInOn);
        }
        let t = d.strand_count() as i64;
        if t == 0 {
            if self.is_even_rank() {
                return Ok(None);
            }
            return Err(Error::internal(
                "diagram without through-strands in odd rank",
            ));
        }
        let win = self.window(d.top(), d.bot())?;
        let off = d.winding()? - win.base;
        if off.rem_euclid(win.step) != 0 {
            return Err(Error::NotInOn);
        }
        let s = off.div_euclid(t);
        let k = (off - s * t) / win.step;
        Ok(Some((win, k as usize, s)))
    }

    /// The element of the window basis congruent to `d`, and its coefficient.
    pub fn reduce_diagram(&self, d: &Diagram) -> Result<Option<(Diagram, Scalar)>> {
        match self.position(d)? {
            None => Ok(None),
            Some((win, k, s)) => {
                let rep = d.with_winding(win.base + win.step * k as i64)?;
                Ok(Some((rep, self.q_pow(s))))
            }
        }
    }

    /// Rewrites `x` in the root-position basis.
    pub fn reduce(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.n() != self.n {
            return Err(Error::RankMismatch(self.n, x.n()));
        }
        if x.ring() != self.q.ring() {
            return Err(Error::RingMismatch(self.q.ring(), x.ring()));
        }
        let mut out = AlgebraElement::zero(self.n, x.ring());
        for (d, c) in x.terms() {
            if let Some((rep, f)) = self.reduce_diagram(d)? {
                out.add_term(rep, c * &f);
            }
        }
        Ok(out)
    }

    /// Product in the quotient.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.reduce(&a.mul(b)?)
    }
}

/// One stratum of the root-position basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisStratum {
    /// Number of through-strands.
    pub strands: usize,
    pub involutions: usize,
    pub window: usize,
    pub elements: Vec<Diagram>,
}

/// The root-position basis of J_q(n), stratified by through-strand count.
pub fn jones_basis(n: usize, even_base: EvenBase) -> Result<Vec<BasisStratum>> {
    if n < 3 {
        return Err(Error::invalid("rank must be at least 3"));
    }
    let mut out = Vec::new();
    for t in strata(n) {
        let ann = enumerate_annular(n, t);
        let mut elements = Vec::new();
        let mut window = 0;
        for s1 in &ann {
            for s2 in &ann {
                let (base, step, len) = if n % 2 == 0 {
                    (even_base.base(s1, s2)?, 2, t / 2)
                } else {
                    (0, 1, t)
                };
                window = len;
                for k in 0..len as i64 {
                    elements.push(Diagram::strands(s1.clone(), s2.clone(), base + step * k)?);
                }
            }
        }
        out.push(BasisStratum {
            strands: t,
            involutions: ann.len(),
            window,
            elements,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Ring;

    fn ctx(n: usize, t: i64) -> JonesQuotient {
        let r = Ring::integer_alpha();
        JonesQuotient::new(n, Scalar::alpha_pow(r, t).unwrap()).unwrap()
    }

    #[test]
    fn u_to_the_n_is_q() {
        let r = Ring::integer_alpha();
        let j = ctx(3, 3);
        let u3 = AlgebraElement::u_pow(3, 3, r);
        let expected = AlgebraElement::one(3, r).scale(&Scalar::alpha_pow(r, 3).unwrap());
        assert_eq!(j.reduce(&u3).unwrap(), expected);
        let ui = AlgebraElement::u_pow(3, -1, r);
        let expected = AlgebraElement::u_pow(3, 2, r).scale(&Scalar::alpha_pow(r, -3).unwrap());
        assert_eq!(j.reduce(&ui).unwrap(), expected);
    }

    #[test]
    fn even_rank_kills_loops_and_rejects_odd() {
        let r = Ring::integer_alpha();
        let j = ctx(4, 2);
        let e1 = AlgebraElement::e(4, 1, r).unwrap();
        let e3 = AlgebraElement::e(4, 3, r).unwrap();
        assert!(j.reduce(&e1.mul(&e3).unwrap()).unwrap().is_zero());
        assert!(matches!(
            j.reduce(&AlgebraElement::u_pow(4, 1, r)),
            Err(Error::NotInOn)
        ));
        assert_eq!(j.reduce(&e1).unwrap(), e1);
    }

    #[test]
    fn basis_sizes() {
        let total = |n| -> usize {
            jones_basis(n, EvenBase::Offset)
                .unwrap()
                .iter()
                .map(|s| s.elements.len())
                .sum()
        };
        assert_eq!(total(3), 12);
        assert_eq!(total(4), 18);
        let b = jones_basis(5, EvenBase::Offset).unwrap();
        assert_eq!(b.last().unwrap().elements.len(), 5);
        let b = jones_basis(6, EvenBase::Offset).unwrap();
        assert_eq!(b.last().unwrap().elements.len(), 3);
    }

    #[test]
    fn reduction_is_idempotent() {
        let j = ctx(4, 2);
        for s in jones_basis(4, EvenBase::Offset).unwrap() {
            for d in s.elements {
                let x = AlgebraElement::from_diagram(d, Ring::integer_alpha());
                assert_eq!(j.reduce(&x).unwrap(), x);
            }
        }
    }
}
