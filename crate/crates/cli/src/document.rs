//! The JSON curve document and its canonical text form.

use c5cone::geometry::{Branch, Curve};
use c5cone::series::{CoordinateSeries, Parametrization};
use c5cone::CycloScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::CliError;

pub const VERSION: u64 = 1;

/// `(num / den) * zeta_order^zeta_pow`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summand {
    pub num: Number,
    pub den: Number,
    pub zeta_order: u64,
    pub zeta_pow: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exp: u64,
    pub coeff: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDocument {
    pub label: String,
    pub coords: Vec<Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub version: u64,
    pub n: usize,
    pub branches: Vec<BranchDocument>,
}

fn integer(n: &Number, field: &str) -> Result<BigInt, CliError> {
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| CliError::Document(format!("{field} must be an integer, found {n}")))
}

fn number(i: &BigInt) -> Number {
    i.to_string().parse().expect("integer literal")
}

impl Summand {
    pub fn value(&self) -> Result<CycloScalar, CliError> {
        let num = integer(&self.num, "num")?;
        let den = integer(&self.den, "den")?;
        if !den.is_positive() {
            return Err(CliError::Document(format!("den must be positive, found {den}")));
        }
        if self.zeta_order == 0 {
            return Err(CliError::Document("zeta_order must be positive".into()));
        }
        let q = CycloScalar::from_rational(BigRational::new(num, den));
        Ok(&q * &CycloScalar::zeta(self.zeta_order, self.zeta_pow)?)
    }

    fn from_parts(q: &BigRational, order: u64, pow: i64) -> Self {
        Summand {
            num: number(q.numer()),
            den: number(q.denom()),
            zeta_order: order,
            zeta_pow: pow,
        }
    }
}

/// Summands of a scalar in its reduced field, one per nonzero power of zeta.
pub fn scalar_summands(c: &CycloScalar) -> Vec<Summand> {
    let c = c.reduced();
    if let Some(q) = c.to_rational() {
        return vec![Summand::from_parts(&q, 1, 0)];
    }
    c.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, q)| **q != BigRational::from_integer(0.into()))
        .map(|(k, q)| Summand::from_parts(q, c.conductor(), k as i64))
        .collect()
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: CurveDocument =
            serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))?;
        if doc.version != VERSION {
            return Err(CliError::Document(format!(
                "unsupported version {}, expected {VERSION}",
                doc.version
            )));
        }
        Ok(doc)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_curve(c: &Curve) -> Self {
        let branches = c
            .branches()
            .iter()
            .map(|b| BranchDocument {
                label: b.label().to_string(),
                coords: b
                    .param()
                    .coords()
                    .iter()
                    .map(|s| {
                        s.terms()
                            .iter()
                            .map(|(e, c)| Term {
                                exp: *e,
                                coeff: scalar_summands(c),
                            })
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        CurveDocument {
            version: VERSION,
            n: c.n(),
            branches,
        }
    }

    pub fn to_curve(&self) -> Result<Curve, CliError> {
        let branches = self
            .branches
            .iter()
            .map(|b| {
                if b.coords.len() != self.n {
                    return Err(CliError::Core(c5cone::Error::DimensionMismatch {
                        expected: self.n,
                        found: b.coords.len(),
                    }));
                }
                let coords = b
                    .coords
                    .iter()
                    .map(|terms| {
                        let terms = terms
                            .iter()
                            .map(|t| {
                                let c = t
                                    .coeff
                                    .iter()
                                    .map(Summand::value)
                                    .try_fold(CycloScalar::zero(), |acc, s| Ok::<_, CliError>(&acc + &s?))?;
                                Ok((t.exp, c))
                            })
                            .collect::<Result<Vec<_>, CliError>>()?;
                        Ok(CoordinateSeries::from_terms(terms)?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(Branch::new(b.label.clone(), Parametrization::new(coords)?)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Curve::new(branches)?)
    }
}

