//! Curve specifications in key-value text.
//!
//! ```text
//! variant = weierstrass      # or parametric, quadrics, twisted_cubic, rational_quartic
//! field = F_101
//! a = 2
//! b = 3
//! ```
//!
//! Parametric curves give `forms` as four binary forms in s, u separated by
//! `;`. Quadric intersections give `q1` and `q2` in x, y, z, w.

use super::CurveModel;
use crate::algebra::mpoly::{parse, VAR_NAMES};
use crate::algebra::{DynField, Field, MultiPoly};
use crate::error::{Error, Result};
use crate::kv::KeyValues;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    Parametric { forms: Vec<String> },
    Quadrics { q1: String, q2: String },
    Weierstrass { a: String, b: String },
    TwistedCubic,
    RationalQuartic,
}

fn scalar<F: Field>(f: &F, text: &str) -> Result<F::Elem> {
    let p = parse(f, 1, &["_"], text)?;
    if p.degree() != 0 {
        return Err(Error::Parse(format!("'{text}' is not a constant")));
    }
    Ok(p.coeff(f, &Default::default()))
}

impl CurveSpec {
    pub fn from_kv(kv: &KeyValues) -> Result<(CurveSpec, DynField)> {
        let field = DynField::parse(kv.get("field").unwrap_or("Q"))?;
        let spec = match kv.require("variant")? {
            "parametric" => CurveSpec::Parametric {
                forms: kv.require("forms")?.split(';').map(|s| s.trim().to_string()).collect(),
            },
            "quadrics" => CurveSpec::Quadrics { q1: kv.require("q1")?.into(), q2: kv.require("q2")?.into() },
            "weierstrass" => CurveSpec::Weierstrass { a: kv.require("a")?.into(), b: kv.require("b")?.into() },
            "twisted_cubic" => CurveSpec::TwistedCubic,
            "rational_quartic" => CurveSpec::RationalQuartic,
            other => return Err(Error::Parse(format!("unknown curve variant '{other}'"))),
        };
        Ok((spec, field))
    }

    pub fn parse_text(text: &str) -> Result<(CurveSpec, DynField)> {
        Self::from_kv(&KeyValues::parse(text)?)
    }

    pub fn build<F: Field>(&self, f: F) -> Result<CurveModel<F>> {
        match self {
            CurveSpec::Parametric { forms } => {
                if forms.len() != 4 {
                    return Err(Error::Parse(format!("expected 4 forms, got {}", forms.len())));
                }
                let forms: Vec<MultiPoly<F::Elem>> =
                    forms.iter().map(|t| parse(&f, 2, &["s", "u"], t)).collect::<Result<_>>()?;
                CurveModel::parametric(f, forms)
            }
            CurveSpec::Quadrics { q1, q2 } => {
                let q1 = parse(&f, 4, &VAR_NAMES, q1)?;
                let q2 = parse(&f, 4, &VAR_NAMES, q2)?;
                CurveModel::quadric_intersection(f, q1, q2)
            }
            CurveSpec::Weierstrass { a, b } => {
                let (a, b) = (scalar(&f, a)?, scalar(&f, b)?);
                CurveModel::weierstrass(f, a, b)
            }
            CurveSpec::TwistedCubic => CurveModel::twisted_cubic(f),
            CurveSpec::RationalQuartic => CurveModel::rational_quartic(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn weierstrass_spec() {
        let (spec, field) = CurveSpec::parse_text("variant = weierstrass\nfield = F_101\na = 2\nb = 3\n").unwrap();
        assert_eq!(field.name(), "F_101");
        let c = spec.build(PrimeField::new(101).unwrap()).unwrap();
        assert_eq!((c.degree, c.genus), (4, 1));
    }

    #[test]
    fn parametric_and_quadric_specs() {
        let text = "variant = parametric\nforms = s^3; s^2*u; s*u^2; u^3";
        let (spec, field) = CurveSpec::parse_text(text).unwrap();
        let c = spec.build(field).unwrap();
        assert_eq!(c.degree, 3);
        let text = "variant = quadrics\nfield = F_31\nq1 = x^2+y^2+z^2+w^2\nq2 = y^2+2*z^2+3*w^2";
        let (spec, field) = CurveSpec::parse_text(text).unwrap();
        assert_eq!(spec.build(field).unwrap().genus, 1);
        assert!(CurveSpec::parse_text("variant = plane").is_err());
    }
}
