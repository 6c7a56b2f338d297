//! Parameter tables for the finite-dimensional simple modules.

use serde::Serialize;

use crate::algebra::Flavor;
use crate::annular::enumerate_annular;
use crate::error::{Error, Result};

/// One family of simple modules, or the trivial module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleFamily {
    pub stratum: String,
    /// Through-strand count τ of the cell module; `None` for the trivial module.
    pub strands: Option<usize>,
    pub delta: Option<u32>,
    pub dim: usize,
    pub parameter: String,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub flavor: String,
    pub rows: Vec<SimpleFamily>,
}

const NONZERO: &str = "alpha in K\\{0}";

fn family(n: usize, label: String, tau: usize, delta: u32) -> SimpleFamily {
    SimpleFamily {
        stratum: label,
        strands: Some(tau),
        delta: Some(delta),
        dim: enumerate_annular(n, tau).len(),
        parameter: NONZERO.to_string(),
        notes: format!("simple head of W({tau}, alpha); [S1, S2, w + {delta}] acts as alpha"),
    }
}

fn trivial() -> SimpleFamily {
    SimpleFamily {
        stratum: "trivial".to_string(),
        strands: None,
        delta: None,
        dim: 1,
        parameter: "none".to_string(),
        notes: "E_i acts as 0, the identity as 1".to_string(),
    }
}

/// Parameter families of simple modules for `flavor` in rank `n`.
///
/// Odd rank: `τ` ranges over the odd numbers up to `n` (TL drops `τ = n` and adds
/// the trivial module). Even rank covers O_n and TL modules killed by I_0, with
/// `τ = 2t` for `t` in `1..=n/2` (TL drops `t = n/2`). D_n in even rank is not covered.
pub fn classify_simples(n: usize, flavor: Flavor) -> Result<Classification> {
    if n < 3 {
        return Err(Error::invalid("rank must be at least 3"));
    }
    let mut rows = Vec::new();
    if n % 2 == 1 {
        let delta = if flavor == Flavor::DN { 1 } else { 2 };
        for tau in (1..=n).step_by(2) {
            if flavor == Flavor::TL && tau == n {
                continue;
            }
            rows.push(family(n, format!("t={tau}"), tau, delta));
        }
    } else {
        if flavor == Flavor::DN {
            return Err(Error::NotCovered(format!(
                "simple D_n-modules for even n = {n}"
            )));
        }
        for t in 1..=n / 2 {
            if flavor == Flavor::TL && t == n / 2 {
                continue;
            }
            rows.push(family(n, format!("t={t}"), 2 * t, 2));
        }
    }
    if flavor == Flavor::TL {
        rows.push(trivial());
    }
    Ok(Classification {
        n,
        flavor: flavor.name().to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strands(c: &Classification) -> Vec<Option<usize>> {
        c.rows.iter().map(|r| r.strands).collect()
    }

    #[test]
    fn odd_rank_tables() {
        let tl = classify_simples(5, Flavor::TL).unwrap();
        assert_eq!(strands(&tl), vec![Some(1), Some(3), None]);
        assert_eq!(
            tl.rows.iter().map(|r| r.dim).collect::<Vec<_>>(),
            vec![10, 5, 1]
        );
        let dn = classify_simples(3, Flavor::DN).unwrap();
        assert_eq!(strands(&dn), vec![Some(1), Some(3)]);
        assert!(dn.rows.iter().all(|r| r.delta == Some(1)));
        let on = classify_simples(3, Flavor::ON).unwrap();
        assert!(on.rows.iter().all(|r| r.delta == Some(2)));
    }

    #[test]
    fn even_rank_tables() {
        let tl = classify_simples(4, Flavor::TL).unwrap();
        assert_eq!(strands(&tl), vec![Some(2), None]);
        let on = classify_simples(6, Flavor::ON).unwrap();
        assert_eq!(strands(&on), vec![Some(2), Some(4), Some(6)]);
        assert!(matches!(
            classify_simples(4, Flavor::DN),
            Err(Error::NotCovered(_))
        ));
    }
}
