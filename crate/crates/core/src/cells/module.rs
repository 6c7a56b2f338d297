//! Cell modules W(τ, α) and their representation matrices.

use std::collections::HashMap;

use super::matrix::Matrix;
use crate::algebra::{AlgebraElement, Flavor, Presentation, RelationCheck};
use crate::annular::{enumerate_annular, standard_base, AnnularInvolution};
use crate::diagram::{r_offset, seam_arcs, Diagram};
use crate::error::{Error, Result};
use crate::scalars::{Ring, Scalar};

/// A cell module: basis `Ann(n) ∩ I(τ)`, with `[S1, S2, w + δ]` acting as
/// `α` times `[S1, S2, w]`.
#[derive(Clone, Debug)]
pub struct CellModule {
    n: usize,
    tau: usize,
    flavor: Flavor,
    alpha: Scalar,
    alpha_inv: Scalar,
    basis: Vec<AnnularInvolution>,
    index: HashMap<AnnularInvolution, usize>,
    anchor: AnnularInvolution,
    /// Winding of the anchor diagram `[S, anchor, base]` for each basis element.
    bases: Vec<i64>,
}

impl CellModule {
    /// `alpha` must be a unit of its ring (for example the variable of `Z[v,alpha]`).
    pub fn new(n: usize, tau: usize, flavor: Flavor, alpha: Scalar) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("rank must be at least 3"));
        }
        if tau == 0 || tau > n || (n - tau) % 2 != 0 {
            return Err(Error::invalid(format!(
                "no cell with {tau} through-strands for n = {n}"
            )));
        }
        if n % 2 == 0 && flavor == Flavor::DN {
            return Err(Error::NotCovered("D_n-modules in even rank".into()));
        }
        let alpha_inv = alpha.inv()?;
        let anchor = standard_base(n, tau)?;
        let basis = enumerate_annular(n, tau);
        let bases = basis
            .iter()
            .map(|s| match flavor {
                Flavor::DN => Ok(0),
                Flavor::ON | Flavor::TL => r_offset(s, &anchor),
            })
            .collect::<Result<_>>()?;
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(CellModule {
            n,
            tau,
            flavor,
            alpha,
            alpha_inv,
            basis,
            index,
            anchor,
            bases,
        })
    }

    /// The module over `Z[v,alpha]` with `alpha` symbolic.
    pub fn symbolic(n: usize, tau: usize, flavor: Flavor) -> Result<Self> {
        Self::new(n, tau, flavor, Scalar::alpha(Ring::integer_alpha())?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn ring(&self) -> Ring {
        self.alpha.ring()
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AnnularInvolution] {
        &self.basis
    }

    pub fn anchor(&self) -> &AnnularInvolution {
        &self.anchor
    }

    /// Shift unit: the winding step that acts as multiplication by `alpha`.
    pub fn delta(&self) -> i64 {
        match self.flavor {
            Flavor::DN => 1,
            Flavor::ON | Flavor::TL => 2,
        }
    }

    fn alpha_pow(&self, k: i64) -> Scalar {
        let b = if k < 0 { &self.alpha_inv } else { &self.alpha };
        b.pow(k.abs()).expect("nonnegative power")
    }

    /// Matrix of a single diagram; columns are images of basis vectors.
    pub fn act_diagram(&self, x: &Diagram) -> Result<Matrix> {
        if x.n() != self.n {
            return Err(Error::RankMismatch(self.n, x.n()));
        }
        if self.flavor != Flavor::DN && x.is_odd() {
            return Err(Error::NotInOn);
        }
        let ring = self.ring();
        let two = Scalar::two(ring);
        let mut m = Matrix::zero(ring, self.dim(), self.dim());
        for (col, s) in self.basis.iter().enumerate() {
            let anchor = Diagram::strands(s.clone(), self.anchor.clone(), self.bases[col])?;
            let (loops, c) = x.compose(&anchor)?;
            if c.strand_count() < self.tau {
                continue;
            }
            if c.bot() != &self.anchor {
                return Err(Error::internal("action changed the bottom involution"));
            }
            let row = self.index[c.top()];
            let shift = c.winding()? - self.bases[row];
            if shift.rem_euclid(self.delta()) != 0 {
                return Err(Error::internal(format!(
                    "winding offset {shift} is not a multiple of {}",
                    self.delta()
                )));
            }
            let coeff = &two.pow(loops as i64)? * &self.alpha_pow(shift / self.delta());
            let cur = m.get(row, col).clone();
            m.set(row, col, &cur + &coeff);
        }
        Ok(m)
    }

    /// Matrix of an algebra element whose coefficients embed in the module's ring.
    pub fn act(&self, x: &AlgebraElement) -> Result<Matrix> {
        let ring = self.ring();
        let mut m = Matrix::zero(ring, self.dim(), self.dim());
        for (d, c) in x.terms() {
            let c = c.embed_into(ring)?;
            let md = self.act_diagram(d)?.scale(&c);
            m = Matrix::from_rows(
                ring,
                (0..self.dim())
                    .map(|i| {
                        (0..self.dim())
                            .map(|j| m.get(i, j) + md.get(i, j))
                            .collect()
                    })
                    .collect(),
            )?;
        }
        Ok(m)
    }

    /// `E_1..E_n`, then `u` and `u^-1` (D_n) or `u^2` and `u^-2` (O_n and TL).
    pub fn generator_matrices(&self) -> Result<Vec<(String, Matrix)>> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            out.push((format!("E{i}"), self.act_diagram(&Diagram::e(self.n, i)?)?));
        }
        let k = self.delta();
        let name = |m: i64| {
            if m == 1 {
                "u".to_string()
            } else {
                format!("u^{m}")
            }
        };
        out.push((name(k), self.act_diagram(&Diagram::u_pow(self.n, k))?));
        out.push((name(-k), self.act_diagram(&Diagram::u_pow(self.n, -k))?));
        Ok(out)
    }

    /// Checks the defining relations of the source algebra on the module matrices.
    pub fn check_relations(&self) -> Result<Vec<RelationCheck>> {
        let mut cache = HashMap::new();
        for i in 1..=self.n {
            cache.insert(Key::E(i), self.act_diagram(&Diagram::e(self.n, i)?)?);
        }
        let ks: &[i64] = if self.flavor == Flavor::DN {
            &[-2, -1, 1, 2]
        } else {
            &[-2, 2]
        };
        for &k in ks {
            cache.insert(Key::U(k), self.act_diagram(&Diagram::u_pow(self.n, k))?);
        }
        ModulePresentation {
            module: self,
            cache,
        }
        .check_relations()
    }

    /// Whether `[S1, S2, w + δ]` acts as `alpha` times `[S1, S2, w]` for every
    /// pair of involutions with `τ` fixed points and a few windings.
    pub fn check_scalar_rule(&self) -> Result<bool> {
        let step = self.delta();
        for s1 in &self.basis {
            for s2 in &self.basis {
                let base = if step == 2 { r_offset(s1, s2)? } else { 0 };
                for k in -1..=1 {
                    let w = base + step * k;
                    let d = Diagram::strands(s1.clone(), s2.clone(), w)?;
                    let lhs = self.act_diagram(&d.with_winding(w + step)?)?;
                    let rhs = self.act_diagram(&d)?.scale(&self.alpha);
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `diag((-1)^{p(S)})`, `p` counting seam-crossing arcs.
    pub fn sign_matrix(&self) -> Matrix {
        let ring = self.ring();
        let mut d = Matrix::zero(ring, self.dim(), self.dim());
        for (i, s) in self.basis.iter().enumerate() {
            let x = if seam_arcs(s) % 2 == 0 {
                Scalar::one(ring)
            } else {
                Scalar::minus_one(ring)
            };
            d.set(i, i, x);
        }
        d
    }

    /// `diag(α^{b(S)})` where `b(S)` is the anchor winding of the basis vector.
    pub fn base_matrix(&self, alpha: &Scalar) -> Result<Matrix> {
        let ring = alpha.ring();
        let inv = alpha.inv()?;
        let mut d = Matrix::zero(ring, self.dim(), self.dim());
        for (i, &b) in self.bases.iter().enumerate() {
            let a = if b < 0 { &inv } else { alpha };
            d.set(i, i, a.pow(b.abs())?);
        }
        Ok(d)
    }

    fn source_generators(&self) -> Result<Vec<Diagram>> {
        let mut out = (1..=self.n)
            .map(|i| Diagram::e(self.n, i))
            .collect::<Result<Vec<_>>>()?;
        out.push(Diagram::u_pow(self.n, self.delta()));
        out.push(Diagram::u_pow(self.n, -self.delta()));
        Ok(out)
    }

    /// For a D_n-module at `α` in odd rank: `ψ_α(ε(X)) = D ψ_{-α}(X) D` on every
    /// generator, with `D` the sign matrix.
    pub fn check_epsilon_twist(&self) -> Result<bool> {
        if self.flavor != Flavor::DN {
            return Err(Error::invalid("the epsilon twist relates D_n-modules"));
        }
        let neg = CellModule::new(self.n, self.tau, self.flavor, -&self.alpha)?;
        let d = self.sign_matrix();
        for x in self.source_generators()? {
            let sign = Scalar::from_int(self.ring(), x.epsilon_sign());
            let lhs = self.act_diagram(&x)?.scale(&sign);
            let rhs = d.mul(&neg.act_diagram(&x)?)?.mul(&d)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For a D_n-module at `α` in odd rank: the O_n-module at `α²` agrees with the
    /// restriction, `ψ'(X) = B⁻¹ ψ(X) B` with `B = diag(α^{r(S, T_std)})`, on the
    /// generators `E_i` and `u^{±2}`.
    pub fn check_restriction(&self) -> Result<bool> {
        if self.flavor != Flavor::DN {
            return Err(Error::invalid("restriction starts from a D_n-module"));
        }
        let on = CellModule::new(self.n, self.tau, Flavor::ON, &self.alpha * &self.alpha)?;
        let b = on.base_matrix(&self.alpha)?;
        let b_inv = on.base_matrix(&self.alpha_inv)?;
        for x in on.source_generators()? {
            let lhs = on.act_diagram(&x)?;
            let rhs = b_inv.mul(&self.act_diagram(&x)?)?.mul(&b)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    E(usize),
    U(i64),
}

struct ModulePresentation<'a> {
    module: &'a CellModule,
    cache: HashMap<Key, Matrix>,
}

impl Presentation for ModulePresentation<'_> {
    type Elem = Matrix;

    fn n(&self) -> usize {
        self.module.n
    }
    fn e(&self, i: usize) -> Result<Matrix> {
        Ok(self.cache[&Key::E(i)].clone())
    }
    fn u(&self, m: i64) -> Result<Matrix> {
        self.cache
            .get(&Key::U(m))
            .cloned()
            .ok_or_else(|| Error::internal("u is not in the source algebra"))
    }
    fn u2(&self, m: i64) -> Result<Matrix> {
        self.u(m)
    }
    fn has_u(&self) -> bool {
        self.module.flavor == Flavor::DN
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.mul(b)
    }
    fn scale_two(&self, a: &Matrix) -> Result<Matrix> {
        Ok(a.scale(&Scalar::two(self.module.ring())))
    }
    fn eq(&self, a: &Matrix, b: &Matrix) -> bool {
        a == b
    }
}
