//! Run-time tagged fields and scalars, for inputs whose field is only known
//! when a configuration is read.

use num_rational::BigRational;
use rand::Rng;

use super::ext::{ExtensionField, GaloisField};
use super::field::Field;
use super::funcfield::{RatFn, RationalFunctionField};
use super::matrix;
use super::prime::PrimeField;
use super::rational::Rationals;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum DynField {
    Rational,
    Prime(PrimeField),
    Extension(GaloisField),
    Eisenstein(ExtensionField<Rationals>),
    Function(Box<RationalFunctionField<DynField>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(u64),
    Extension(Vec<u64>),
    Eisenstein(Vec<BigRational>),
    Function(Box<RatFn<Scalar>>),
}

impl DynField {
    /// Parse "Q", "Q(w)", "F_p", "F_p^k", or any of these followed by "(t)".
    pub fn parse(s: &str) -> Result<DynField> {
        let s = s.trim();
        if let Some(inner) = s.strip_suffix("(t)") {
            if inner.is_empty() {
                return Err(Error::Parse("missing base field".into()));
            }
            return Ok(DynField::Function(Box::new(RationalFunctionField::new(DynField::parse(inner)?, "t"))));
        }
        match s {
            "Q" => return Ok(DynField::Rational),
            "Q(w)" => return Ok(DynField::Eisenstein(ExtensionField::eisenstein())),
            _ => {}
        }
        let body = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix("GF"))
            .ok_or_else(|| Error::Parse(format!("unknown field '{s}'")))?;
        let (p, k) = match body.split_once('^') {
            Some((p, k)) => (p, k),
            None => (body, "1"),
        };
        let p: u64 = p.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| Error::Parse(format!("bad prime in '{s}'")))?;
        let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad degree in '{s}'")))?;
        if k == 1 {
            Ok(DynField::Prime(PrimeField::new(p)?))
        } else {
            Ok(DynField::Extension(GaloisField::galois(p, k)?))
        }
    }

    fn mismatch(&self) -> ! {
        panic!("scalar does not belong to {}", self.name())
    }
}

macro_rules! dispatch2 {
    ($self:ident, $a:ident, $b:ident, $op:ident) => {
        match ($self, $a, $b) {
            (DynField::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(Rationals.$op(x, y)),
            (DynField::Prime(f), Scalar::Prime(x), Scalar::Prime(y)) => Scalar::Prime(f.$op(x, y)),
            (DynField::Extension(f), Scalar::Extension(x), Scalar::Extension(y)) => Scalar::Extension(f.$op(x, y)),
            (DynField::Eisenstein(f), Scalar::Eisenstein(x), Scalar::Eisenstein(y)) => Scalar::Eisenstein(f.$op(x, y)),
            (DynField::Function(f), Scalar::Function(x), Scalar::Function(y)) => Scalar::Function(Box::new(f.$op(x, y))),
            _ => $self.mismatch(),
        }
    };
}

impl Field for DynField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.from_i64(0)
    }
    fn one(&self) -> Scalar {
        self.from_i64(1)
    }
    fn from_i64(&self, n: i64) -> Scalar {
        match self {
            DynField::Rational => Scalar::Rational(Rationals.from_i64(n)),
            DynField::Prime(f) => Scalar::Prime(f.from_i64(n)),
            DynField::Extension(f) => Scalar::Extension(f.from_i64(n)),
            DynField::Eisenstein(f) => Scalar::Eisenstein(f.from_i64(n)),
            DynField::Function(f) => Scalar::Function(Box::new(f.from_i64(n))),
        }
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch2!(self, a, b, add)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch2!(self, a, b, sub)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch2!(self, a, b, mul)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (DynField::Rational, Scalar::Rational(x)) => Scalar::Rational(-x),
            (DynField::Prime(f), Scalar::Prime(x)) => Scalar::Prime(f.neg(x)),
            (DynField::Extension(f), Scalar::Extension(x)) => Scalar::Extension(f.neg(x)),
            (DynField::Eisenstein(f), Scalar::Eisenstein(x)) => Scalar::Eisenstein(f.neg(x)),
            (DynField::Function(f), Scalar::Function(x)) => Scalar::Function(Box::new(f.neg(x))),
            _ => self.mismatch(),
        }
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (DynField::Rational, Scalar::Rational(x)) => Rationals.inv(x).map(Scalar::Rational),
            (DynField::Prime(f), Scalar::Prime(x)) => f.inv(x).map(Scalar::Prime),
            (DynField::Extension(f), Scalar::Extension(x)) => f.inv(x).map(Scalar::Extension),
            (DynField::Eisenstein(f), Scalar::Eisenstein(x)) => f.inv(x).map(Scalar::Eisenstein),
            (DynField::Function(f), Scalar::Function(x)) => f.inv(x).map(|y| Scalar::Function(Box::new(y))),
            _ => self.mismatch(),
        }
    }
    fn characteristic(&self) -> u64 {
        match self {
            DynField::Rational | DynField::Eisenstein(_) => 0,
            DynField::Prime(f) => f.p(),
            DynField::Extension(f) => f.characteristic(),
            DynField::Function(f) => f.characteristic(),
        }
    }
    fn name(&self) -> String {
        match self {
            DynField::Rational => "Q".into(),
            DynField::Prime(f) => f.name(),
            DynField::Extension(f) => f.name(),
            DynField::Eisenstein(f) => f.name(),
            DynField::Function(f) => f.name(),
        }
    }
    fn format(&self, a: &Scalar) -> String {
        match (self, a) {
            (DynField::Rational, Scalar::Rational(x)) => Rationals.format(x),
            (DynField::Prime(f), Scalar::Prime(x)) => f.format(x),
            (DynField::Extension(f), Scalar::Extension(x)) => f.format(x),
            (DynField::Eisenstein(f), Scalar::Eisenstein(x)) => f.format(x),
            (DynField::Function(f), Scalar::Function(x)) => f.format(x),
            _ => self.mismatch(),
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            DynField::Rational => Scalar::Rational(Rationals.random(rng)),
            DynField::Prime(f) => Scalar::Prime(f.random(rng)),
            DynField::Extension(f) => Scalar::Extension(f.random(rng)),
            DynField::Eisenstein(f) => Scalar::Eisenstein(f.random(rng)),
            DynField::Function(f) => Scalar::Function(Box::new(f.random(rng))),
        }
    }
}

/// A scalar together with the field it lives in.
#[derive(Clone, Debug, PartialEq)]
pub struct Tagged {
    pub field: DynField,
    pub value: Scalar,
}

/// rref of tagged rows; all entries must share one field.
pub fn rref_tagged(rows: &[Vec<Tagged>]) -> Result<(DynField, Vec<Vec<Scalar>>, usize)> {
    let first = rows
        .iter()
        .flat_map(|r| r.iter())
        .next()
        .ok_or_else(|| Error::InvalidInput("empty matrix".into()))?;
    let field = first.field.clone();
    let cols = rows[0].len();
    for r in rows {
        if r.len() != cols {
            return Err(Error::InvalidInput("rows of unequal length".into()));
        }
        for t in r {
            if t.field != field {
                return Err(Error::IncompatibleField(field.name(), t.field.name()));
            }
        }
    }
    let plain: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|t| t.value.clone()).collect()).collect();
    let (ech, rank) = matrix::rref(&field, &plain, cols);
    Ok((field, ech, rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!(DynField::parse("F_101").unwrap().name(), "F_101");
        assert_eq!(DynField::parse("F_7^2").unwrap().name(), "F_7^2");
        assert_eq!(DynField::parse("Q(t)").unwrap().name(), "Q(t)");
        assert!(DynField::parse("F_3").is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = DynField::parse("F_7").unwrap();
        let b = DynField::parse("F_11").unwrap();
        let rows = vec![vec![
            Tagged { field: a.clone(), value: a.one() },
            Tagged { field: b.clone(), value: b.one() },
        ]];
        assert!(matches!(rref_tagged(&rows), Err(Error::IncompatibleField(_, _))));
    }

    #[test]
    fn function_field_arithmetic() {
        let k = DynField::parse("F_7(t)").unwrap();
        let x = k.from_i64(3);
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
    }
}
