//! Sylvester resultants via fraction-free (Bareiss) determinants over
//! polynomial rings with exact division.

use super::field::Field;
use super::mpoly::{Monomial, MultiPoly};
use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

pub trait ExactRing {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn div_exact(&self, a: &Self::T, b: &Self::T) -> Self::T;
}

pub struct UPolyRing<'a, F: Field>(pub &'a F);

impl<F: Field> ExactRing for UPolyRing<'_, F> {
    type T = UPoly<F::Elem>;
    fn zero(&self) -> Self::T {
        vec![]
    }
    fn one(&self) -> Self::T {
        vec![self.0.one()]
    }
    fn is_zero(&self, a: &Self::T) -> bool {
        a.is_empty()
    }
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T {
        upoly::sub(self.0, a, b)
    }
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T {
        upoly::mul(self.0, a, b)
    }
    fn neg(&self, a: &Self::T) -> Self::T {
        upoly::neg(self.0, a)
    }
    fn div_exact(&self, a: &Self::T, b: &Self::T) -> Self::T {
        upoly::div_exact(self.0, a, b).expect("inexact Bareiss step")
    }
}

pub struct FormRing<'a, F: Field> {
    pub field: &'a F,
    pub nvars: usize,
}

impl<F: Field> ExactRing for FormRing<'_, F> {
    type T = MultiPoly<F::Elem>;
    fn zero(&self) -> Self::T {
        MultiPoly::zero(self.nvars, 0)
    }
    fn one(&self) -> Self::T {
        MultiPoly::constant(self.field, self.nvars, self.field.one())
    }
    fn is_zero(&self, a: &Self::T) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T {
        a.sub(self.field, b)
    }
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T {
        a.mul(self.field, b)
    }
    fn neg(&self, a: &Self::T) -> Self::T {
        a.neg(self.field)
    }
    fn div_exact(&self, a: &Self::T, b: &Self::T) -> Self::T {
        a.div_exact(self.field, b).expect("inexact Bareiss step")
    }
}

/// Fraction-free determinant.
pub fn bareiss_det<R: ExactRing>(r: &R, mut m: Vec<Vec<R::T>>) -> R::T {
    let n = m.len();
    if n == 0 {
        return r.one();
    }
    let mut negate = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !r.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return r.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = r.mul(&m[i][j], &m[k][k]);
                let b = r.mul(&m[i][k], &m[k][j]);
                m[i][j] = r.div_exact(&r.sub(&a, &b), &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        r.neg(&d)
    } else {
        d
    }
}

/// Sylvester matrix of sum a_i y^i and sum b_i y^i with formal degrees
/// a.len()-1 and b.len()-1.
pub fn sylvester<T: Clone>(a: &[T], b: &[T], zero: T) -> Vec<Vec<T>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Affine bivariate polynomial: entry j is the coefficient of y^j, a
/// polynomial in x.
pub type BiPoly<E> = Vec<UPoly<E>>;

/// Res_y(f, g) as a polynomial in x.
pub fn resultant<F: Field>(f: &F, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> Result<UPoly<F::Elem>> {
    let trim = |p: &BiPoly<F::Elem>| {
        let mut p = p.clone();
        while p.last().is_some_and(|c| c.is_empty()) {
            p.pop();
        }
        p
    };
    let (a, b) = (trim(a), trim(b));
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("zero polynomial in resultant".into()));
    }
    let ring = UPolyRing(f);
    Ok(bareiss_det(&ring, sylvester(&a, &b, vec![])))
}

/// Homogeneous resultant eliminating `var`; the result has the same
/// variable count, does not involve `var`, and has degree deg F * deg G
/// (or is zero).
pub fn form_resultant<F: Field>(
    f: &F,
    a: &MultiPoly<F::Elem>,
    b: &MultiPoly<F::Elem>,
    var: usize,
) -> Result<MultiPoly<F::Elem>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("zero polynomial in resultant".into()));
    }
    let ca = a.coefficients_in(f, var);
    let cb = b.coefficients_in(f, var);
    let ring = FormRing { field: f, nvars: a.nvars() };
    let det = bareiss_det(&ring, sylvester(&ca, &cb, ring.zero()));
    if det.is_zero() {
        return Ok(MultiPoly::zero(a.nvars(), a.degree() * b.degree()));
    }
    Ok(det)
}

/// Binary form -> (B(x, 1) as a univariate polynomial in x, multiplicity of
/// the root (1 : 0)).
pub fn dehomogenize_binary<F: Field>(f: &F, b: &MultiPoly<F::Elem>) -> (UPoly<F::Elem>, u32) {
    assert_eq!(b.nvars(), 2);
    let d = b.degree();
    let mut v = vec![f.zero(); d as usize + 1];
    for (m, c) in b.terms() {
        v[m.0[0] as usize] = c.clone();
    }
    let v = upoly::trim(f, v);
    let at_inf = match upoly::degree(&v) {
        None => 0,
        Some(k) => d - k as u32,
    };
    (v, at_inf)
}

pub fn homogenize_binary<F: Field>(f: &F, p: &[F::Elem], degree: u32) -> MultiPoly<F::Elem> {
    let terms = p
        .iter()
        .enumerate()
        .map(|(i, c)| (Monomial([i as u8, (degree as usize - i) as u8, 0, 0]), c.clone()))
        .collect();
    MultiPoly::from_terms(f, 2, degree, terms)
}

/// Restrict a form of 3 or 4 variables in which only `keep` occur to a binary form.
pub fn to_binary<F: Field>(f: &F, p: &MultiPoly<F::Elem>, keep: [usize; 2]) -> MultiPoly<F::Elem> {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert!((0..p.nvars()).all(|i| keep.contains(&i) || m.0[i] == 0));
            (Monomial([m.0[keep[0]], m.0[keep[1]], 0, 0]), c.clone())
        })
        .collect();
    MultiPoly::from_terms(f, 2, p.degree(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{parse, VAR_NAMES};
    use crate::algebra::prime::PrimeField;
    use crate::algebra::rational::Rationals;

    #[test]
    fn linear_resultant() {
        let q = Rationals;
        // y - x and y - 2x
        let a = vec![vec![q.zero(), q.from_i64(-1)], vec![q.one()]];
        let b = vec![vec![q.zero(), q.from_i64(-2)], vec![q.one()]];
        let r = resultant(&q, &a, &b).unwrap();
        assert_eq!(upoly::degree(&r), Some(1));
        assert!(q.is_zero(&r[0]));
    }

    #[test]
    fn cusp_resultant() {
        let q = Rationals;
        // y^2 - x^3 and y
        let a = vec![vec![q.zero(), q.zero(), q.zero(), q.from_i64(-1)], vec![], vec![q.one()]];
        let b = vec![vec![], vec![q.one()]];
        let r = resultant(&q, &a, &b).unwrap();
        // x^3 up to sign
        assert_eq!(upoly::monic(&q, &r), vec![q.zero(), q.zero(), q.zero(), q.one()]);
    }

    #[test]
    fn bareiss_matches_field_determinant() {
        let f = PrimeField::new(101).unwrap();
        let rows = vec![vec![vec![3u64], vec![5], vec![7]], vec![vec![2], vec![11], vec![13]], vec![vec![17], vec![19], vec![23]]];
        let det = bareiss_det(&UPolyRing(&f), rows.clone());
        let m = crate::algebra::matrix::Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|c| c[0]).collect()).collect(),
            3,
        );
        assert_eq!(det, upoly::trim(&f, vec![crate::algebra::matrix::determinant(&f, &m)]));
    }

    #[test]
    fn form_resultant_vanishes_on_common_points() {
        let f = PrimeField::new(101).unwrap();
        let a = parse(&f, 3, &VAR_NAMES, "x^2 + y^2 - z^2").unwrap();
        let b = parse(&f, 3, &VAR_NAMES, "x - y").unwrap();
        let r = form_resultant(&f, &a, &b, 1).unwrap();
        assert_eq!(r.degree(), 2);
        assert!(r.free_of(1));
        // common points satisfy 2x^2 = z^2
        let bin = to_binary(&f, &r, [0, 2]);
        let (u, inf) = dehomogenize_binary(&f, &bin);
        assert_eq!(inf, 0);
        assert_eq!(upoly::degree(&u), Some(2));
    }
}
