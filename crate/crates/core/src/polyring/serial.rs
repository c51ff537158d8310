//! Text and JSON forms of polynomials.
//!
//! Text: a signed sum of terms in canonical order, e.g.
//! `-x_1_2 + x_1_3*x_2_2 - x_1_3*x_3_1 + x_2_1`.
//!
//! JSON: `{"terms":[{"c":"-1","m":{"x_1_2":1}}, ...]}` with an optional
//! `"p"` field for polynomials over `𝔽_p`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Domain, Monomial, PolyError, Polynomial, Variable};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the text form into the given coefficient domain.
    pub fn parse(s: &str, domain: Domain) -> Result<Self, PolyError> {
        let bad = |why: &str| PolyError::Parse(format!("{why} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut out = Polynomial::zero(domain);
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad("expected '+' or '-'"));
            }
            let end = compact[pos..]
                .find(['+', '-'])
                .map(|off| pos + off)
                .unwrap_or(bytes.len());
            let body = &compact[pos..end];
            if body.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = sign;
            let mut pairs = Vec::new();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    let c: BigInt = factor.parse().map_err(|_| bad("bad integer"))?;
                    coeff *= c;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((name, e)) => (name, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (factor, 1),
                    };
                    pairs.push((name.parse::<Variable>()?, exp));
                }
            }
            out.add_term(Monomial::from_pairs(pairs), coeff);
            pos = end;
        }
        Ok(out)
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Parses an integer polynomial.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, Domain::Integers)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    m: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(poly: &Polynomial) -> Self {
        let terms = poly
            .terms()
            .map(|(m, c)| TermJson {
                c: c.to_string(),
                m: m.factors().iter().map(|(v, e)| (v.to_string(), *e)).collect(),
            })
            .collect();
        let p = match poly.domain() {
            Domain::Integers => None,
            Domain::PrimeField(p) => Some(p),
        };
        Self { terms, p }
    }
}

impl TryFrom<PolynomialJson> for Polynomial {
    type Error = PolyError;

    fn try_from(json: PolynomialJson) -> Result<Self, Self::Error> {
        let domain = match json.p {
            None => Domain::Integers,
            Some(p) => Domain::PrimeField(p),
        };
        let mut out = Polynomial::zero(domain);
        for t in json.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient {:?}", t.c)))?;
            if c.is_zero() {
                continue;
            }
            let pairs = t
                .m
                .iter()
                .map(|(name, e)| Ok((name.parse::<Variable>()?, *e)))
                .collect::<Result<Vec<_>, PolyError>>()?;
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(deserializer)?;
        Polynomial::try_from(json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_schema() {
        let p: Polynomial = "-x_1_2 + 3*z_2_1^2".parse().unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"c":"-1","m":{"x_1_2":1}},{"c":"3","m":{"z_2_1":2}}]}"#
        );
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let q = p.reduce_mod(5);
        let json = serde_json::to_string(&q).unwrap();
        assert!(json.ends_with(r#","p":5}"#));
        assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), q);
    }

    #[test]
    fn text_parsing() {
        let p: Polynomial = "x_2_1 - x_1_3*x_3_1 + x_1_3*x_2_2 - x_1_2".parse().unwrap();
        assert_eq!(p.to_string(), "-x_1_2 + x_1_3*x_2_2 - x_1_3*x_3_1 + x_2_1");
        assert_eq!("0".parse::<Polynomial>().unwrap(), Polynomial::zero(Domain::Integers));
        assert_eq!("-7".parse::<Polynomial>().unwrap().to_string(), "-7");
        assert_eq!("2*x_1_1*x_1_1".parse::<Polynomial>().unwrap().to_string(), "2*x_1_1^2");
        assert!("x_1_1 +".parse::<Polynomial>().is_err());
        assert!("x_1_1 ** 2".parse::<Polynomial>().is_err());
        assert!("q_1_1".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let var = (0..2u8, 1..5usize, 1..5usize).prop_map(|(f, r, c)| {
            if f == 0 {
                Variable::x(r, c)
            } else {
                Variable::z(r, c)
            }
        });
        let mono = prop::collection::vec((var, 0..4u32), 0..4).prop_map(Monomial::from_pairs);
        prop::collection::vec((-50i64..50, mono), 0..8).prop_map(|terms| {
            Polynomial::from_terms(
                Domain::Integers,
                terms.into_iter().map(|(c, m)| (BigInt::from(c), m)),
            )
        })
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(p in arb_poly()) {
            prop_assert_eq!(p.to_string().parse::<Polynomial>().unwrap(), p.clone());
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), p);
        }
    }
}
