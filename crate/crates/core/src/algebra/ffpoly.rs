//! Factorization of univariate polynomials over finite fields of odd
//! characteristic: square-free decomposition, distinct-degree splitting and
//! Cantor-Zassenhaus.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use super::upoly::{self, UPoly};

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// x^(q^i) mod m for i = 0..=n.
fn frobenius_powers<F: FiniteField>(f: &F, m: &[F::Elem], n: usize) -> Vec<UPoly<F::Elem>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = upoly::rem(f, &upoly::x(f), m);
    out.push(cur.clone());
    for _ in 0..n {
        cur = upoly::powmod(f, &cur, f.order(), m);
        out.push(cur.clone());
    }
    out
}

/// Rabin's test.
pub fn is_irreducible<F: FiniteField>(f: &F, a: &[F::Elem]) -> bool {
    let n = match upoly::degree(a) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let m = upoly::monic(f, a);
    let fr = frobenius_powers(f, &m, n);
    let x = upoly::rem(f, &upoly::x(f), &m);
    if fr[n] != x {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = upoly::sub(f, &fr[n / r as usize], &x);
        if upoly::degree(&upoly::gcd(f, &h, &m)) != Some(0) {
            return false;
        }
    }
    true
}

fn pth_root_poly<F: FiniteField>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let p = f.characteristic() as usize;
    let e = f.order() / f.characteristic() as u128;
    let out = a.iter().step_by(p).map(|c| f.pow(c, e)).collect();
    upoly::trim(f, out)
}

/// Square-free decomposition of a monic polynomial: pairs (factor, multiplicity)
/// with pairwise coprime square-free factors.
pub fn squarefree_decomposition<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(UPoly<F::Elem>, u32)> {
    let a = upoly::monic(f, a);
    let mut out = vec![];
    if upoly::degree(&a).unwrap_or(0) == 0 {
        return out;
    }
    let p = f.characteristic() as u32;
    let da = upoly::derivative(f, &a);
    let mut c = upoly::gcd(f, &a, &da);
    let mut w = upoly::div_exact(f, &a, &c).unwrap();
    let mut i = 1;
    while upoly::degree(&w) != Some(0) {
        let y = upoly::gcd(f, &w, &c);
        let fac = upoly::div_exact(f, &w, &y).unwrap();
        if upoly::degree(&fac) != Some(0) {
            out.push((fac, i));
        }
        w = y.clone();
        c = upoly::div_exact(f, &c, &y).unwrap();
        i += 1;
    }
    if upoly::degree(&c) != Some(0) {
        let root = pth_root_poly(f, &c);
        for (g, m) in squarefree_decomposition(f, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// For a monic square-free polynomial: pairs (product of all irreducible
/// factors of degree d, d).
pub fn distinct_degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(UPoly<F::Elem>, usize)> {
    let mut out = vec![];
    let mut rest = upoly::monic(f, a);
    let x = upoly::x(f);
    let mut h = upoly::rem(f, &x, &rest);
    let mut d = 0;
    while let Some(deg) = upoly::degree(&rest) {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((rest.clone(), deg));
            break;
        }
        h = upoly::powmod(f, &h, f.order(), &rest);
        let g = upoly::gcd(f, &upoly::sub(f, &h, &x), &rest);
        if upoly::degree(&g) != Some(0) {
            rest = upoly::div_exact(f, &rest, &g).unwrap();
            h = upoly::rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Split a monic square-free product of irreducibles all of degree d.
pub fn equal_degree<F: FiniteField>(f: &F, a: &[F::Elem], d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly<F::Elem>> {
    let n = upoly::degree(a).unwrap();
    if n == d {
        return vec![upoly::monic(f, a)];
    }
    let q = f.order();
    loop {
        let r: UPoly<F::Elem> = upoly::trim(f, (0..n).map(|_| f.random(rng)).collect());
        if upoly::degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        // r^((q^d - 1)/2) = (r^(1 + q + ... + q^(d-1)))^((q-1)/2)
        let mut norm = r.clone();
        let mut conj = r.clone();
        for _ in 1..d {
            conj = upoly::powmod(f, &conj, q, a);
            norm = upoly::mulmod(f, &norm, &conj, a);
        }
        let b = upoly::powmod(f, &norm, (q - 1) / 2, a);
        let g = upoly::gcd(f, &upoly::sub(f, &b, &[f.one()]), a);
        let dg = upoly::degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = upoly::div_exact(f, a, &g).unwrap();
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

fn sort_key<F: FiniteField>(f: &F, a: &[F::Elem]) -> (usize, Vec<u128>) {
    (a.len(), a.iter().rev().map(|c| f.index_of(c)).collect())
}

/// Complete factorization into monic irreducibles with multiplicities,
/// in a deterministic order (by degree, then coefficients).
pub fn factor<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(UPoly<F::Elem>, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = vec![];
    for (sq, m) in squarefree_decomposition(f, a) {
        for (prod, d) in distinct_degree(f, &sq) {
            for g in equal_degree(f, &prod, d, &mut rng) {
                out.push((g, m));
            }
        }
    }
    out.sort_by_cached_key(|(g, _)| sort_key(f, g));
    out
}

/// Roots in the field with multiplicities, sorted by element index.
pub fn roots<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(F::Elem, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = vec![];
    for (sq, m) in squarefree_decomposition(f, a) {
        let x = upoly::x(f);
        let xq = upoly::powmod(f, &x, f.order(), &sq);
        let lin = upoly::gcd(f, &upoly::sub(f, &xq, &x), &sq);
        if upoly::degree(&lin).unwrap_or(0) == 0 {
            continue;
        }
        for g in equal_degree(f, &lin, 1, &mut rng) {
            out.push((f.neg(&g[0]), m));
        }
    }
    out.sort_by_key(|(r, _)| f.index_of(r));
    out
}

/// Distinct roots only.
pub fn distinct_roots<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    roots(f, a).into_iter().map(|(r, _)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;

    #[test]
    fn irreducibility_of_small_polys() {
        let f = PrimeField::new(7).unwrap();
        assert!(is_irreducible(&f, &[1, 0, 1])); // x^2+1, -1 is a non-residue mod 7
        assert!(!is_irreducible(&f, &[6, 0, 1])); // x^2-1
        assert!(!is_irreducible(&f, &upoly::mul(&f, &[1, 0, 1], &[1, 0, 1])));
    }

    #[test]
    fn factor_reassembles() {
        let f = PrimeField::new(11).unwrap();
        let a = upoly::mul(&f, &upoly::pow(&f, &[3, 1], 3), &[1, 0, 1]);
        let a = upoly::mul(&f, &a, &[2, 1, 0, 1]);
        let fac = factor(&f, &a);
        let mut prod = vec![1u64];
        for (g, m) in &fac {
            assert!(is_irreducible(&f, g));
            prod = upoly::mul(&f, &prod, &upoly::pow(&f, g, *m as u64));
        }
        assert_eq!(prod, upoly::monic(&f, &a));
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = PrimeField::new(13).unwrap();
        let a = upoly::mul(&f, &upoly::from_roots(&f, &[2, 2, 5]), &[2, 0, 1]);
        let r = roots(&f, &a);
        let brute: Vec<u64> = (0..13).filter(|x| upoly::eval(&f, &a, x) == 0).collect();
        assert_eq!(r.iter().map(|(x, _)| *x).collect::<Vec<_>>(), brute);
        assert_eq!(r.iter().find(|(x, _)| *x == 2).unwrap().1, 2);
    }

    #[test]
    fn pth_power_factors() {
        let f = PrimeField::new(5).unwrap();
        // (x+1)^5 (x+2)
        let a = upoly::mul(&f, &upoly::pow(&f, &[1, 1], 5), &[2, 1]);
        let dec = squarefree_decomposition(&f, &a);
        assert!(dec.contains(&(vec![1, 1], 5)));
        assert!(dec.contains(&(vec![2, 1], 1)));
    }
}
