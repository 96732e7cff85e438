//! Dense univariate polynomials as coefficient vectors, lowest degree first.
//! The zero polynomial is the empty vector; vectors are kept trimmed.

use super::field::Field;

pub type UPoly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: UPoly<F::Elem>) -> UPoly<F::Elem> {
    while let Some(last) = a.last() {
        if f.is_zero(last) {
            a.pop();
        } else {
            break;
        }
    }
    a
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> UPoly<F::Elem> {
    trim(f, vec![c])
}

/// The monomial c*x^n.
pub fn monomial<F: Field>(f: &F, c: F::Elem, n: usize) -> UPoly<F::Elem> {
    if f.is_zero(&c) {
        return vec![];
    }
    let mut v = vec![f.zero(); n + 1];
    v[n] = c;
    v
}

pub fn x<F: Field>(f: &F) -> UPoly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> UPoly<F::Elem> {
    if f.is_zero(c) {
        return vec![];
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn pow<F: Field>(f: &F, a: &[F::Elem], mut e: u64) -> UPoly<F::Elem> {
    let mut acc = vec![f.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

/// Euclidean division; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (UPoly<F::Elem>, UPoly<F::Elem>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let mut r = a.to_vec();
    let mut q = vec![f.zero(); a.len() - b.len() + 1];
    let db = b.len() - 1;
    for i in (0..q.len()).rev() {
        let c = f.mul(&r[i + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = f.sub(&r[i + j], &f.mul(&c, bj));
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    divrem(f, a, b).1
}

/// Exact quotient, or None if b does not divide a.
pub fn div_exact<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<UPoly<F::Elem>> {
    let (q, r) = divrem(f, a, b);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    match a.last() {
        None => vec![],
        Some(l) => scale(f, a, &f.inv(l).unwrap()),
    }
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
pub fn ext_gcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (UPoly<F::Elem>, UPoly<F::Elem>, UPoly<F::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    match r0.last() {
        None => (vec![], s0, t0),
        Some(l) => {
            let li = f.inv(l).unwrap();
            (scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li))
        }
    }
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> UPoly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut e: u128, m: &[F::Elem]) -> UPoly<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    acc
}

/// a(x + c)
pub fn shift<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> UPoly<F::Elem> {
    let lin = trim(f, vec![c.clone(), f.one()]);
    let mut acc: UPoly<F::Elem> = vec![];
    for coef in a.iter().rev() {
        acc = add(f, &mul(f, &acc, &lin), &constant(f, coef.clone()));
    }
    acc
}

pub fn from_roots<F: Field>(f: &F, roots: &[F::Elem]) -> UPoly<F::Elem> {
    let mut acc = vec![f.one()];
    for r in roots {
        acc = mul(f, &acc, &[f.neg(r), f.one()]);
    }
    acc
}

pub fn map<F: Field, G: Field>(a: &[F::Elem], g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> UPoly<G::Elem> {
    trim(g, a.iter().map(phi).collect())
}

pub fn format<F: Field>(f: &F, a: &[F::Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts = vec![];
    for (i, c) in a.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let cs = f.format(c);
        parts.push(match i {
            0 => cs,
            1 => format!("({cs})*{var}"),
            _ => format!("({cs})*{var}^{i}"),
        });
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;

    #[test]
    fn divrem_reconstructs() {
        let f = PrimeField::new(7).unwrap();
        let a = vec![1, 2, 3, 4, 5];
        let b = vec![3, 0, 1];
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = PrimeField::new(11).unwrap();
        let a = from_roots(&f, &[1, 2, 3]);
        let b = from_roots(&f, &[2, 5]);
        let (g, s, t) = ext_gcd(&f, &a, &b);
        assert_eq!(g, vec![f.neg(&2), 1]);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
    }

    #[test]
    fn shift_is_composition() {
        let f = PrimeField::new(13).unwrap();
        let a = vec![5, 0, 2, 1];
        let s = shift(&f, &a, &3);
        for x in 0..13 {
            assert_eq!(eval(&f, &s, &x), eval(&f, &a, &f.add(&x, &3)));
        }
    }
}
