use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Coefficient field of a scalar ring. `Integer` restricts coefficients to Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Integer,
    Rational,
    Cyclotomic(u32),
}

/// Ring descriptor: Laurent polynomials in `v` (and `alpha` when set) over `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    pub base: BaseField,
    pub alpha: bool,
}

impl Ring {
    pub const fn integer() -> Self {
        Ring {
            base: BaseField::Integer,
            alpha: false,
        }
    }

    pub const fn integer_alpha() -> Self {
        Ring {
            base: BaseField::Integer,
            alpha: true,
        }
    }

    pub const fn rational() -> Self {
        Ring {
            base: BaseField::Rational,
            alpha: false,
        }
    }

    pub const fn cyclotomic(order: u32) -> Self {
        Ring {
            base: BaseField::Cyclotomic(order),
            alpha: false,
        }
    }

    pub fn with_alpha(self, alpha: bool) -> Self {
        Ring { alpha, ..self }
    }

    /// Order of the cyclotomic field holding the coefficients (1 for Z and Q).
    pub fn coeff_order(self) -> u32 {
        match self.base {
            BaseField::Integer | BaseField::Rational => 1,
            BaseField::Cyclotomic(m) => m,
        }
    }

    /// Same ring with the base widened from Z to Q (fields are unchanged).
    pub fn widened_to_field(self) -> Self {
        match self.base {
            BaseField::Integer => Ring {
                base: BaseField::Rational,
                ..self
            },
            _ => self,
        }
    }

    pub fn embeds_into(self, target: Ring) -> bool {
        if self.alpha && !target.alpha {
            return false;
        }
        match (self.base, target.base) {
            (BaseField::Integer, _) => true,
            (BaseField::Rational, BaseField::Integer) => false,
            (BaseField::Rational, _) => true,
            (BaseField::Cyclotomic(m), BaseField::Cyclotomic(k)) => k % m == 0,
            (BaseField::Cyclotomic(_), _) => false,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseField::Integer => f.write_str("Z")?,
            BaseField::Rational => f.write_str("Q")?,
            BaseField::Cyclotomic(m) => write!(f, "Q(zeta_{m})")?,
        }
        if self.alpha {
            f.write_str("[v,alpha]")
        } else {
            f.write_str("[v]")
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::invalid(format!("unknown ring descriptor {s:?}"));
        let (base, vars) = if let Some(rest) = s.strip_prefix("Z") {
            (BaseField::Integer, rest)
        } else if let Some(rest) = s.strip_prefix("Q(zeta_") {
            let close = rest.find(')').ok_or_else(bad)?;
            let m: u32 = rest[..close].parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            (BaseField::Cyclotomic(m), &rest[close + 1..])
        } else if let Some(rest) = s.strip_prefix("Q") {
            (BaseField::Rational, rest)
        } else {
            return Err(bad());
        };
        let alpha = match vars {
            "[v]" => false,
            "[v,alpha]" => true,
            _ => return Err(bad()),
        };
        Ok(Ring { base, alpha })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for r in [
            Ring::integer(),
            Ring::integer_alpha(),
            Ring::rational(),
            Ring::cyclotomic(15),
            Ring::cyclotomic(3).with_alpha(true),
        ] {
            assert_eq!(r.to_string().parse::<Ring>().unwrap(), r);
        }
        assert!("R[v]".parse::<Ring>().is_err());
        assert!("Q(zeta_0)[v]".parse::<Ring>().is_err());
    }
}
