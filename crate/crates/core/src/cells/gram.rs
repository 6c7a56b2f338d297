//! The bilinear form on a cell module.

use super::jones::EvenBase;
use super::matrix::Matrix;
use crate::annular::{enumerate_annular, AnnularInvolution};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// `φ(T, U)` for `T, U` in `Ann(n) ∩ I(τ)`, and its rank over the fraction field.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub n: usize,
    pub tau: usize,
    pub basis: Vec<AnnularInvolution>,
    pub matrix: Matrix,
    pub rank: usize,
}

/// Computes `φ` from `C_{S,T} · C_{U,V} ≡ φ(T, U) C_{S,V}` in the cell of
/// `τ` through-strands, where winding shifts by the shift unit act as `alpha`.
///
/// Every choice of `(S, V)` is checked to give the same form.
pub fn gram_matrix(
    n: usize,
    tau: usize,
    alpha: &Scalar,
    even_base: EvenBase,
) -> Result<GramMatrix> {
    if n < 3 || tau == 0 || tau > n || (n - tau) % 2 != 0 {
        return Err(Error::invalid(format!(
            "no cell with {tau} through-strands for n = {n}"
        )));
    }
    let ring = alpha.ring();
    let alpha_inv = alpha.inv()?;
    let even = n % 2 == 0;
    let delta = if even { 2 } else { 1 };
    let base = |s: &AnnularInvolution, t: &AnnularInvolution| -> Result<i64> {
        if even {
            even_base.base(s, t)
        } else {
            Ok(0)
        }
    };
    let two = Scalar::two(ring);
    let basis = enumerate_annular(n, tau);
    let dim = basis.len();

    // C_{S,T} = [S, T*, base]
    let c = |s: &AnnularInvolution, t: &AnnularInvolution| -> Result<Diagram> {
        let ts = t.star();
        let b = base(s, &ts)?;
        Diagram::strands(s.clone(), ts, b)
    };
    let phi = |s: &AnnularInvolution,
               t: &AnnularInvolution,
               u: &AnnularInvolution,
               v: &AnnularInvolution|
     -> Result<Scalar> {
        let (loops, d) = c(s, t)?.compose(&c(u, v)?)?;
        if d.strand_count() < tau {
            return Ok(Scalar::zero(ring));
        }
        let vs = v.star();
        if d.top() != s || d.bot() != &vs {
            return Err(Error::Cellularity(format!(
                "product of C_({s},{t}) and C_({u},{v}) left the (S, V) block"
            )));
        }
        let shift = d.winding()? - base(s, &vs)?;
        if shift.rem_euclid(delta) != 0 {
            return Err(Error::internal(format!(
                "winding offset {shift} is not a multiple of {delta}"
            )));
        }
        let k = shift / delta;
        let a = if k < 0 { &alpha_inv } else { alpha };
        Ok(&two.pow(loops as i64)? * &a.pow(k.abs())?)
    };

    let s0 = &basis[0];
    let mut matrix = Matrix::zero(ring, dim, dim);
    for (i, t) in basis.iter().enumerate() {
        for (j, u) in basis.iter().enumerate() {
            matrix.set(i, j, phi(s0, t, u, s0)?);
        }
    }
    for s in &basis {
        for v in &basis {
            for (i, t) in basis.iter().enumerate() {
                for (j, u) in basis.iter().enumerate() {
                    if phi(s, t, u, v)? != *matrix.get(i, j) {
                        return Err(Error::Cellularity(format!(
                            "phi({t}, {u}) depends on the outer indices: S = {s}, V = {v}"
                        )));
                    }
                }
            }
        }
    }
    let rank = matrix.rank()?;
    Ok(GramMatrix {
        n,
        tau,
        basis,
        matrix,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Ring;

    fn alpha() -> Scalar {
        Scalar::alpha(Ring::integer_alpha()).unwrap()
    }

    #[test]
    fn top_stratum_form_is_one_by_one() {
        for n in 3..=6 {
            let g = gram_matrix(n, n, &alpha(), EvenBase::ArcCount).unwrap();
            assert_eq!((g.matrix.rows(), g.rank), (1, 1));
        }
    }

    #[test]
    fn generic_rank_is_full() {
        let g = gram_matrix(3, 1, &alpha(), EvenBase::ArcCount).unwrap();
        assert_eq!(g.rank, 3);
        let g = gram_matrix(4, 2, &alpha(), EvenBase::ArcCount).unwrap();
        assert_eq!(g.rank, 4);
        assert_eq!(g.matrix, g.matrix.transpose());
    }
}
