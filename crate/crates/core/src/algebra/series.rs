//! Truncated power series in one variable s, stored as coefficient vectors
//! of a fixed length (exact modulo s^len).

use super::field::Field;
use super::mpoly::MultiPoly;

pub type Series<E> = Vec<E>;

pub fn zero<F: Field>(f: &F, len: usize) -> Series<F::Elem> {
    vec![f.zero(); len]
}

pub fn constant<F: Field>(f: &F, c: F::Elem, len: usize) -> Series<F::Elem> {
    let mut s = zero(f, len);
    if len > 0 {
        s[0] = c;
    }
    s
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Series<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Series<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Series<F::Elem> {
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Series<F::Elem> {
    let n = a.len().min(b.len());
    let mut out = zero(f, n);
    for (i, x) in a.iter().enumerate().take(n) {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !f.is_zero(y) {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
    }
    out
}

/// Multiplicative inverse; None if the constant term vanishes.
pub fn inv<F: Field>(f: &F, a: &[F::Elem]) -> Option<Series<F::Elem>> {
    let n = a.len();
    let c0 = f.inv(a.first()?)?;
    let mut out = zero(f, n);
    out[0] = c0.clone();
    for k in 1..n {
        let mut acc = f.zero();
        for j in 1..=k {
            acc = f.add(&acc, &f.mul(&a[j], &out[k - j]));
        }
        out[k] = f.neg(&f.mul(&acc, &c0));
    }
    Some(out)
}

/// Index of the first nonzero coefficient.
pub fn order<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|x| !f.is_zero(x))
}

pub fn truncate<F: Field>(a: &[F::Elem], len: usize) -> Series<F::Elem> {
    a[..len.min(a.len())].to_vec()
}

/// Evaluate a form at a vector of series.
pub fn eval_poly<F: Field>(f: &F, p: &MultiPoly<F::Elem>, xs: &[Series<F::Elem>]) -> Series<F::Elem> {
    let len = xs[0].len();
    let deg = p.degree() as usize;
    let mut powers: Vec<Vec<Series<F::Elem>>> = Vec::with_capacity(xs.len());
    for x in xs {
        let mut row = vec![constant(f, f.one(), len)];
        for k in 1..=deg {
            row.push(mul(f, &row[k - 1], x));
        }
        powers.push(row);
    }
    let mut acc = zero(f, len);
    for (m, c) in p.terms() {
        let mut t = constant(f, c.clone(), len);
        for (i, row) in powers.iter().enumerate() {
            if m.0[i] > 0 {
                t = mul(f, &t, &row[m.0[i] as usize]);
            }
        }
        acc = add(f, &acc, &t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;

    #[test]
    fn inverse_of_one_minus_s() {
        let f = PrimeField::new(101).unwrap();
        let a = vec![1, 100, 0, 0, 0];
        assert_eq!(inv(&f, &a).unwrap(), vec![1, 1, 1, 1, 1]);
        assert!(inv(&f, &[0u64, 1, 0]).is_none());
    }
}
