//! JSON encodings of scalars, diagrams, algebra elements and matrices.
//!
//! Integer coefficients are JSON numbers when they fit in an `i64` and strings
//! otherwise; rational coefficients are strings `"p"` or `"p/q"`; cyclotomic
//! coefficients are arrays of such strings in the power basis.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::AlgebraElement;
use crate::annular::AnnularInvolution;
use crate::cells::Matrix;
use crate::diagram::{Diagram, Shape};
use crate::error::{Error, Result};
use crate::scalars::{parse_rational, BaseField, CycloRational, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub ring: String,
    pub terms: Vec<(i64, i64, Value)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DiagramJson {
    Strands {
        n: usize,
        top: Vec<usize>,
        bot: Vec<usize>,
        w: i64,
    },
    Loops {
        n: usize,
        top: Vec<usize>,
        bot: Vec<usize>,
        k: u32,
        #[serde(default, skip_serializing_if = "is_zero")]
        top_gap: usize,
        #[serde(default, skip_serializing_if = "is_zero")]
        bot_gap: usize,
    },
}

fn is_zero(g: &usize) -> bool {
    *g == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub diagram: DiagramJson,
    pub coeff: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub n: usize,
    pub ring: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarJson>>,
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn coeff_value(ring: Ring, c: &CycloRational) -> Value {
    match ring.base {
        BaseField::Cyclotomic(_) => Value::Array(
            c.coeffs()
                .iter()
                .map(|r| Value::String(rational_string(r)))
                .collect(),
        ),
        BaseField::Integer => {
            let r = c.as_rational().expect("integer ring coefficient");
            match r.numer().to_i64() {
                Some(k) => Value::from(k),
                None => Value::String(r.numer().to_string()),
            }
        }
        BaseField::Rational => Value::String(rational_string(
            c.as_rational().expect("rational ring coefficient"),
        )),
    }
}

fn rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(k) => k
            .as_i64()
            .map(|k| BigRational::from_integer(BigInt::from(k)))
            .ok_or_else(|| Error::invalid(format!("coefficient {k} is not an integer"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::invalid(format!("bad coefficient {other}"))),
    }
}

fn coeff_from_value(ring: Ring, v: &Value) -> Result<CycloRational> {
    let order = ring.coeff_order();
    match (ring.base, v) {
        (BaseField::Cyclotomic(_), Value::Array(items)) => {
            let coeffs = items
                .iter()
                .map(rational_value)
                .collect::<Result<Vec<_>>>()?;
            Ok(CycloRational::from_power_coeffs(order, coeffs))
        }
        (BaseField::Cyclotomic(_), _) => {
            Ok(CycloRational::from_rational(order, rational_value(v)?))
        }
        _ => Ok(CycloRational::from_rational(order, rational_value(v)?)),
    }
}

pub fn scalar_to_json(x: &Scalar) -> ScalarJson {
    let ring = x.ring();
    ScalarJson {
        ring: ring.to_string(),
        terms: x
            .terms()
            .map(|(&(ev, ea), c)| (ev, ea, coeff_value(ring, c)))
            .collect(),
    }
}

pub fn scalar_from_json(j: &ScalarJson) -> Result<Scalar> {
    let ring = Ring::from_str(&j.ring)?;
    let terms = j
        .terms
        .iter()
        .map(|(ev, ea, c)| Ok(((*ev, *ea), coeff_from_value(ring, c)?)))
        .collect::<Result<Vec<_>>>()?;
    Scalar::from_terms(ring, terms)
}

pub fn diagram_to_json(d: &Diagram) -> DiagramJson {
    let (n, top, bot) = (d.n(), d.top().map().to_vec(), d.bot().map().to_vec());
    match d.shape() {
        Shape::Strands { w } => DiagramJson::Strands { n, top, bot, w },
        Shape::Loops {
            top_gap,
            bot_gap,
            k,
        } => DiagramJson::Loops {
            n,
            top,
            bot,
            k,
            top_gap,
            bot_gap,
        },
    }
}

fn involution(n: usize, map: &[usize]) -> Result<AnnularInvolution> {
    if map.len() != n {
        return Err(Error::RankMismatch(n, map.len()));
    }
    AnnularInvolution::new(map.to_vec())
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<Diagram> {
    match j {
        DiagramJson::Strands { n, top, bot, w } => {
            Diagram::strands(involution(*n, top)?, involution(*n, bot)?, *w)
        }
        DiagramJson::Loops {
            n,
            top,
            bot,
            k,
            top_gap,
            bot_gap,
        } => Diagram::loops(
            involution(*n, top)?,
            involution(*n, bot)?,
            *k,
            *top_gap,
            *bot_gap,
        ),
    }
}

pub fn element_to_json(x: &AlgebraElement) -> ElementJson {
    ElementJson {
        n: x.n(),
        ring: x.ring().to_string(),
        terms: x
            .terms()
            .map(|(d, c)| TermJson {
                diagram: diagram_to_json(d),
                coeff: scalar_to_json(c),
            })
            .collect(),
    }
}

pub fn element_from_json(j: &ElementJson) -> Result<AlgebraElement> {
    let ring = Ring::from_str(&j.ring)?;
    let terms = j
        .terms
        .iter()
        .map(|t| {
            let d = diagram_from_json(&t.diagram)?;
            if d.n() != j.n {
                return Err(Error::RankMismatch(j.n, d.n()));
            }
            Ok((d, scalar_from_json(&t.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_terms(j.n, ring, terms)
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    MatrixJson {
        ring: m.ring().to_string(),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| m.row(i).iter().map(scalar_to_json).collect())
            .collect(),
    }
}
