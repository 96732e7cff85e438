use rand::Rng;

use super::field::Field;
use super::upoly::{self, UPoly};

/// A reduced fraction num/den with monic den.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn<E> {
    pub num: UPoly<E>,
    pub den: UPoly<E>,
}

/// F(t).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionField<F: Field> {
    base: F,
    var: String,
}

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F, var: &str) -> Self {
        RationalFunctionField { base, var: var.to_string() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn make(&self, num: UPoly<F::Elem>, den: UPoly<F::Elem>) -> RatFn<F::Elem> {
        let b = &self.base;
        let num = upoly::trim(b, num);
        let den = upoly::trim(b, den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let g = upoly::gcd(b, &num, &den);
        let mut n = upoly::div_exact(b, &num, &g).unwrap();
        let mut d = upoly::div_exact(b, &den, &g).unwrap();
        let l = b.inv(d.last().unwrap()).unwrap();
        n = upoly::scale(b, &n, &l);
        d = upoly::scale(b, &d, &l);
        RatFn { num: n, den: d }
    }

    pub fn from_poly(&self, p: UPoly<F::Elem>) -> RatFn<F::Elem> {
        RatFn { num: upoly::trim(&self.base, p), den: vec![self.base.one()] }
    }

    pub fn embed(&self, c: &F::Elem) -> RatFn<F::Elem> {
        self.from_poly(vec![c.clone()])
    }

    /// The parameter t.
    pub fn t(&self) -> RatFn<F::Elem> {
        self.from_poly(upoly::x(&self.base))
    }

    /// Evaluate at t = c; None at a pole.
    pub fn eval(&self, a: &RatFn<F::Elem>, c: &F::Elem) -> Option<F::Elem> {
        let d = upoly::eval(&self.base, &a.den, c);
        let n = upoly::eval(&self.base, &a.num, c);
        self.base.div(&n, &d)
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    type Elem = RatFn<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFn { num: vec![], den: vec![self.base.one()] }
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return self.make(upoly::add(f, &a.num, &b.num), a.den.clone());
        }
        let num = upoly::add(f, &upoly::mul(f, &a.num, &b.den), &upoly::mul(f, &b.num, &a.den));
        self.make(num, upoly::mul(f, &a.den, &b.den))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        self.make(upoly::mul(f, &a.num, &b.num), upoly::mul(f, &a.den, &b.den))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFn { num: upoly::neg(&self.base, &a.num), den: a.den.clone() }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            None
        } else {
            Some(self.make(a.den.clone(), a.num.clone()))
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn name(&self) -> String {
        format!("{}({})", self.base.name(), self.var)
    }
    fn format(&self, a: &Self::Elem) -> String {
        let n = upoly::format(&self.base, &a.num, &self.var);
        if a.den.len() == 1 {
            n
        } else {
            format!("({n})/({})", upoly::format(&self.base, &a.den, &self.var))
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let dn = rng.gen_range(0..3);
        let dd = rng.gen_range(0..2);
        let num: Vec<F::Elem> = (0..=dn).map(|_| self.base.random(rng)).collect();
        let mut den: Vec<F::Elem> = (0..=dd).map(|_| self.base.random(rng)).collect();
        den.push(self.base.one());
        self.make(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;

    #[test]
    fn reduced_with_monic_denominator() {
        let k = RationalFunctionField::new(PrimeField::new(7).unwrap(), "t");
        // (2t^2 - 2) / (2t - 2) = t + 1
        let a = k.make(vec![5, 0, 2], vec![5, 2]);
        assert_eq!(a.num, vec![1, 1]);
        assert_eq!(a.den, vec![1]);
    }

    #[test]
    fn inverse_and_eval() {
        let k = RationalFunctionField::new(PrimeField::new(11).unwrap(), "t");
        let a = k.make(vec![1, 3], vec![2, 0, 1]);
        let b = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &b), k.one());
        assert_eq!(k.eval(&k.t(), &4), Some(4));
    }
}
