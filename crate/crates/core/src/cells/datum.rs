//! The cell datum of J_q(n) at a rational parameter, and a checker for the cellular axioms.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::jones::{strata, EvenBase, JonesQuotient, Window};
use crate::algebra::AlgebraElement;
use crate::annular::{enumerate_annular, AnnularInvolution};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::scalars::{
    elementary_coefficients, rational_pow, roots_of_t_th_power, CycloRational, Ring, Scalar,
};

/// The cells belonging to one through-strand count.
#[derive(Clone, Debug)]
pub struct DatumStratum {
    /// Number of through-strands.
    pub strands: usize,
    /// Number of cells in this stratum, which is also the window length.
    pub cells: usize,
    pub ring: Ring,
    pub roots: Vec<CycloRational>,
    /// `coeffs[j - 1]` lists the ascending coefficients of `f_j`, for `j = 1..=cells`.
    pub coeffs: Vec<Vec<CycloRational>>,
    pub involutions: Vec<AnnularInvolution>,
    quotient: JonesQuotient,
}

/// `(Λ, M, C, *)` for J_q(n) with `q = alpha^L`, `L` the lcm of the window lengths.
#[derive(Clone, Debug)]
pub struct CellDatum {
    n: usize,
    alpha: BigRational,
    q: BigRational,
    even_base: EvenBase,
    strata: Vec<DatumStratum>,
}

impl CellDatum {
    pub fn new(n: usize, alpha: &BigRational, even_base: EvenBase) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::DegenerateRoot);
        }
        if n < 3 {
            return Err(Error::invalid("rank must be at least 3"));
        }
        let window = |t: usize| if n % 2 == 0 { t / 2 } else { t };
        let lcm = strata(n)
            .into_iter()
            .map(window)
            .fold(1usize, |a, b| a.lcm(&b));
        let q = rational_pow(alpha, lcm as i64);
        let mut out = Vec::new();
        for t in strata(n) {
            let m = window(t);
            let ring = Ring::cyclotomic(m as u32);
            let root_scale = rational_pow(alpha, (lcm / m) as i64);
            let roots = roots_of_t_th_power(m as u32, &root_scale)?;
            let coeffs = (1..=m)
                .map(|j| elementary_coefficients(m, j, &roots))
                .collect::<Result<Vec<_>>>()?;
            let qs = Scalar::from_rational(ring, q.clone())?;
            out.push(DatumStratum {
                strands: t,
                cells: m,
                ring,
                roots,
                coeffs,
                involutions: enumerate_annular(n, t),
                quotient: JonesQuotient::with_base(n, qs, even_base)?,
            });
        }
        Ok(CellDatum {
            n,
            alpha: alpha.clone(),
            q,
            even_base,
            strata: out,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn strata(&self) -> &[DatumStratum] {
        &self.strata
    }

    fn stratum(&self, strands: usize) -> Result<&DatumStratum> {
        self.strata
            .iter()
            .find(|s| s.strands == strands)
            .ok_or_else(|| Error::invalid(format!("no stratum with {strands} through-strands")))
    }

    /// `C^{t,j}_{S,T} = Σ_i r_ij [S, T*, base + step·i]`.
    pub fn element(
        &self,
        strands: usize,
        j: usize,
        s: &AnnularInvolution,
        t: &AnnularInvolution,
    ) -> Result<AlgebraElement> {
        let st = self.stratum(strands)?;
        if j == 0 || j > st.cells {
            return Err(Error::IndexOutOfRange {
                index: j as i64,
                lo: 1,
                hi: st.cells as i64,
            });
        }
        let ts = t.star();
        let win = st.quotient.window(s, &ts)?;
        let mut terms = Vec::new();
        for (i, c) in st.coeffs[j - 1].iter().enumerate() {
            let d = Diagram::strands(s.clone(), ts.clone(), win.base + win.step * i as i64)?;
            terms.push((d, Scalar::constant(st.ring, c.clone())?));
        }
        let x = AlgebraElement::from_terms(self.n, st.ring, terms)?;
        st.quotient.reduce(&x)
    }

    /// Every `C^λ_{S,T}`, keyed by `(strands, j, S, T)`.
    pub fn elements(
        &self,
    ) -> Result<
        Vec<(
            (usize, usize, AnnularInvolution, AnnularInvolution),
            AlgebraElement,
        )>,
    > {
        let mut out = Vec::new();
        for st in &self.strata {
            for j in 1..=st.cells {
                for s in &st.involutions {
                    for t in &st.involutions {
                        let c = self.element(st.strands, j, s, t)?;
                        out.push(((st.strands, j, s.clone(), t.clone()), c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The generators `E_1..E_n` and `u` (odd rank) or `u²` (even rank), over `ring`.
    fn generators(&self, ring: Ring) -> Result<Vec<(String, AlgebraElement)>> {
        let n = self.n;
        let mut g: Vec<(String, AlgebraElement)> = (1..=n)
            .map(|i| Ok((format!("E{i}"), AlgebraElement::e(n, i, ring)?)))
            .collect::<Result<_>>()?;
        if n % 2 == 0 {
            g.push(("u^2".into(), AlgebraElement::u_pow(n, 2, ring)));
        } else {
            g.push(("u".into(), AlgebraElement::u_pow(n, 1, ring)));
        }
        Ok(g)
    }

    /// Checks the three cellular axioms exhaustively.
    pub fn verify(&self) -> Result<CellularityReport> {
        let mut c1 = ConditionReport::new("C is an R-basis");
        let mut c2 = ConditionReport::new("(C_{S,T})* = C_{T,S}");
        let mut c3 = ConditionReport::new("a.C_{S,T} = sum r_a(S',S) C_{S',T} mod lower cells");

        for st in &self.strata {
            let gens = self.generators(st.ring)?;
            // Coordinates of C^{t,j}_{S,T} in the window basis of the block (S, T*).
            let mut inverses: HashMap<
                (AnnularInvolution, AnnularInvolution),
                Vec<Vec<CycloRational>>,
            > = HashMap::new();
            for s in &st.involutions {
                for t in &st.involutions {
                    let ts = t.star();
                    let win = st.quotient.window(s, &ts)?;
                    let rows = (1..=st.cells)
                        .map(|j| {
                            let c = self.element(st.strands, j, s, t)?;
                            coords(&c, s, &ts, &win, st.ring).map(|v| {
                                v.into_iter()
                                    .map(|x| x.as_constant().expect("constant datum"))
                                    .collect()
                            })
                        })
                        .collect::<Result<Vec<Vec<CycloRational>>>>()?;
                    c1.checked += 1;
                    match invert(&rows) {
                        Some(inv) => {
                            inverses.insert((s.clone(), ts), inv);
                        }
                        None => c1.fail(format!(
                            "t = {}, S = {s}, T = {t}: rank deficient",
                            st.strands
                        )),
                    }
                    for j in 1..=st.cells {
                        c2.checked += 1;
                        let lhs = st
                            .quotient
                            .reduce(&self.element(st.strands, j, s, t)?.star())?;
                        let rhs = self.element(st.strands, j, t, s)?;
                        if lhs != rhs {
                            c2.fail(format!("t = {}, j = {j}, S = {s}, T = {t}", st.strands));
                        }
                    }
                }
            }
            if !c1.failures.is_empty() {
                continue;
            }

            // r_a(S', S) as first seen, keyed by (generator, j, S, S').
            let mut seen: BTreeMap<
                (usize, usize, AnnularInvolution, AnnularInvolution),
                (AnnularInvolution, Scalar),
            > = BTreeMap::new();
            for (gi, (gname, a)) in gens.iter().enumerate() {
                for j in 1..=st.cells {
                    for s in &st.involutions {
                        for t in &st.involutions {
                            c3.checked += 1;
                            let ts = t.star();
                            let y = st.quotient.mul(a, &self.element(st.strands, j, s, t)?)?;
                            let mut coeff_by_top: BTreeMap<AnnularInvolution, Vec<Scalar>> =
                                BTreeMap::new();
                            for (d, _) in y.terms() {
                                if d.strand_count() < st.strands {
                                    continue;
                                }
                                if d.bot() != &ts {
                                    c3.fail(format!(
                                        "{gname}: bottom changed from {ts} to {}",
                                        d.bot()
                                    ));
                                    continue;
                                }
                                coeff_by_top.entry(d.top().clone()).or_default();
                            }
                            let tops: Vec<AnnularInvolution> =
                                coeff_by_top.keys().cloned().collect();
                            for s2 in st.involutions.iter() {
                                let win = st.quotient.window(s2, &ts)?;
                                let v = if tops.contains(s2) {
                                    coords(&y, s2, &ts, &win, st.ring)?
                                } else {
                                    vec![Scalar::zero(st.ring); st.cells]
                                };
                                let inv = &inverses[&(s2.clone(), ts.clone())];
                                let c = apply_inverse(&v, inv, st.ring);
                                for (jj, cj) in c.iter().enumerate().skip(j) {
                                    if !cj.is_zero() {
                                        c3.fail(format!(
                                            "{gname} . C^({},{j})_({s},{t}) has coefficient {cj} on the higher cell j = {}",
                                            st.strands,
                                            jj + 1
                                        ));
                                    }
                                }
                                let key = (gi, j, s.clone(), s2.clone());
                                let val = c[j - 1].clone();
                                match seen.get(&key) {
                                    None => {
                                        seen.insert(key, (t.clone(), val));
                                    }
                                    Some((t0, v0)) => {
                                        if *v0 != val {
                                            c3.fail(format!(
                                                "{gname}, t = {}, j = {j}, S = {s}, S' = {s2}: coefficient {v0} with T = {t0} but {val} with T = {t}",
                                                st.strands
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        Ok(CellularityReport {
            n: self.n,
            alpha: fmt_rational(&self.alpha),
            q: fmt_rational(&self.q),
            even_base: self.even_base.name(),
            conditions: vec![c1, c2, c3],
        })
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficients of `x` on `[top, bot, base + step·k]`, `k = 0..len`.
fn coords(
    x: &AlgebraElement,
    top: &AnnularInvolution,
    bot: &AnnularInvolution,
    win: &Window,
    ring: Ring,
) -> Result<Vec<Scalar>> {
    (0..win.len)
        .map(|k| {
            let d = Diagram::strands(top.clone(), bot.clone(), win.base + win.step * k as i64)?;
            let c = x.coeff(&d);
            debug_assert_eq!(c.ring(), ring);
            Ok(c)
        })
        .collect()
}

/// Inverse of a square matrix over a cyclotomic field, by Gauss–Jordan.
fn invert(rows: &[Vec<CycloRational>]) -> Option<Vec<Vec<CycloRational>>> {
    let n = rows.len();
    let order = rows.first()?.first()?.order();
    let mut a: Vec<Vec<CycloRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    CycloRational::one(order)
                } else {
                    CycloRational::zero(order)
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = f.mul(&a[col][c]);
                    a[r][c] = a[r][c].sub(&sub);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `c · rows = v` given `inv = rows^{-1}`.
fn apply_inverse(v: &[Scalar], inv: &[Vec<CycloRational>], ring: Ring) -> Vec<Scalar> {
    let n = inv.len();
    (0..n)
        .map(|j| {
            let mut acc = Scalar::zero(ring);
            for (k, vk) in v.iter().enumerate() {
                if !vk.is_zero() && !inv[k][j].is_zero() {
                    acc = &acc + &vk.scale(&inv[k][j]);
                }
            }
            acc
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl ConditionReport {
    fn new(name: &str) -> Self {
        ConditionReport {
            name: name.to_string(),
            checked: 0,
            passed: true,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, why: String) {
        self.passed = false;
        if self.failures.len() < 20 {
            self.failures.push(why);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellularityReport {
    pub n: usize,
    pub alpha: String,
    pub q: String,
    pub even_base: &'static str,
    pub conditions: Vec<ConditionReport>,
}

impl CellularityReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

/// Builds the datum at `alpha` and checks all three conditions.
pub fn verify_cellularity(
    n: usize,
    alpha: &BigRational,
    even_base: EvenBase,
) -> Result<CellularityReport> {
    CellDatum::new(n, alpha, even_base)?.verify()
}
