use rand::Rng;

use super::ffpoly;
use super::field::{Field, FiniteField};
use super::prime::PrimeField;
use super::rational::Rationals;
use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

/// F[a]/(m) for a monic irreducible m of degree k >= 1. Elements are
/// coefficient vectors of length exactly k.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionField<F: Field> {
    base: F,
    modulus: UPoly<F::Elem>,
    label: Option<String>,
}

pub type GaloisField = ExtensionField<PrimeField>;

impl<F: Field> ExtensionField<F> {
    /// Irreducibility of `modulus` is the caller's responsibility.
    pub fn new_unchecked(base: F, modulus: UPoly<F::Elem>) -> Result<Self> {
        let modulus = upoly::trim(&base, modulus);
        match modulus.last() {
            Some(l) if base.is_one(l) && modulus.len() >= 2 => {}
            _ => return Err(Error::InvalidField("modulus must be monic of degree >= 1".into())),
        }
        Ok(ExtensionField { base, modulus, label: None })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn ext_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.ext_degree()];
        v[0] = c.clone();
        v
    }

    /// The class of the indeterminate.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.from_poly(&upoly::x(&self.base))
    }

    pub fn from_poly(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let mut r = upoly::rem(&self.base, a, &self.modulus);
        r.resize(self.ext_degree(), self.base.zero());
        r
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> UPoly<F::Elem> {
        upoly::trim(&self.base, a.to_vec())
    }

    /// The base-field value if the element lies in the base field.
    pub fn as_base(&self, a: &[F::Elem]) -> Option<F::Elem> {
        if a[1..].iter().all(|c| self.base.is_zero(c)) {
            Some(a[0].clone())
        } else {
            None
        }
    }
}

impl<F: FiniteField> ExtensionField<F> {
    pub fn new(base: F, modulus: UPoly<F::Elem>) -> Result<Self> {
        if !ffpoly::is_irreducible(&base, &modulus) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Self::new_unchecked(base, modulus)
    }

    /// Least irreducible monic modulus of degree k, candidates ordered by
    /// the integer whose base-q digits are the non-leading coefficients
    /// (most significant = coefficient of a^(k-1)).
    pub fn least_modulus(base: &F, k: usize) -> UPoly<F::Elem> {
        let q = base.order();
        let mut n: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut m = n;
            for _ in 0..k {
                coeffs.push(base.element(m % q));
                m /= q;
            }
            coeffs.push(base.one());
            if ffpoly::is_irreducible(base, &coeffs) {
                return coeffs;
            }
            n += 1;
        }
    }

    pub fn over(base: F, k: usize) -> Self {
        let m = Self::least_modulus(&base, k);
        ExtensionField { base, modulus: m, label: None }
    }

    pub fn frobenius_orbit(&self, a: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let mut orbit = vec![a.to_vec()];
        let mut cur = self.frobenius(&a.to_vec());
        while cur != a {
            orbit.push(cur.clone());
            cur = self.frobenius(&cur);
        }
        orbit
    }
}

impl GaloisField {
    /// F_{p^k} with the least irreducible modulus.
    pub fn galois(p: u64, k: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if k == 0 || k > 16 {
            return Err(Error::InvalidField(format!("extension degree {k} out of range")));
        }
        let mut g = Self::over(base, k);
        g.label = Some(format!("F_{p}^{k}"));
        Ok(g)
    }
}

impl ExtensionField<Rationals> {
    /// Q(w) with w^2 + w + 1 = 0.
    pub fn eisenstein() -> Self {
        let q = Rationals;
        let m = vec![q.one(), q.one(), q.one()];
        let mut e = Self::new_unchecked(q, m).unwrap();
        e.label = Some("Q(w)".into());
        e
    }
}

impl<F: Field> Field for ExtensionField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Vec<F::Elem> {
        vec![self.base.zero(); self.ext_degree()]
    }
    fn one(&self) -> Vec<F::Elem> {
        self.embed(&self.base.one())
    }
    fn from_i64(&self, n: i64) -> Vec<F::Elem> {
        self.embed(&self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.ext_degree();
        let bf = &self.base;
        let mut prod = vec![bf.zero(); 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if bf.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !bf.is_zero(y) {
                    prod[i + j] = bf.add(&prod[i + j], &bf.mul(x, y));
                }
            }
        }
        // reduce using the monic modulus
        for i in (k..prod.len()).rev() {
            let c = prod[i].clone();
            if bf.is_zero(&c) {
                continue;
            }
            for j in 0..k {
                let t = bf.mul(&c, &self.modulus[j]);
                prod[i - k + j] = bf.sub(&prod[i - k + j], &t);
            }
        }
        prod.truncate(k);
        prod
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let ap = self.to_poly(a);
        if ap.is_empty() {
            return None;
        }
        let (g, s, _) = upoly::ext_gcd(&self.base, &ap, &self.modulus);
        if upoly::degree(&g) != Some(0) {
            return None;
        }
        Some(self.from_poly(&s))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => format!(
                "{}[a]/({})",
                self.base.name(),
                upoly::format(&self.base, &self.modulus, "a")
            ),
        }
    }
    fn format(&self, a: &Self::Elem) -> String {
        let bf = &self.base;
        let mut parts = vec![];
        for (i, c) in a.iter().enumerate().rev() {
            if bf.is_zero(c) {
                continue;
            }
            let cs = bf.format(c);
            parts.push(match (i, bf.is_one(c)) {
                (0, _) => cs,
                (1, true) => "a".to_string(),
                (1, false) => format!("{cs}*a"),
                (_, true) => format!("a^{i}"),
                (_, false) => format!("{cs}*a^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.ext_degree()).map(|_| self.base.random(rng)).collect()
    }
}

impl<F: FiniteField> FiniteField for ExtensionField<F> {
    fn order(&self) -> u128 {
        self.base.order().pow(self.ext_degree() as u32)
    }
    fn degree(&self) -> u32 {
        self.base.degree() * self.ext_degree() as u32
    }
    fn element(&self, mut index: u128) -> Self::Elem {
        let q = self.base.order();
        (0..self.ext_degree())
            .map(|_| {
                let c = self.base.element(index % q);
                index /= q;
                c
            })
            .collect()
    }
    fn index_of(&self, a: &Self::Elem) -> u128 {
        let q = self.base.order();
        a.iter().rev().fold(0u128, |acc, c| acc * q + self.base.index_of(c))
    }
}

/// Embedding F_{p^r} -> F_{p^s} for r | s: the image of the generator of
/// the smaller field is a root of its modulus in the larger field.
pub fn embedding(small: &GaloisField, large: &GaloisField) -> Result<Vec<u64>> {
    if !large.ext_degree().is_multiple_of(small.ext_degree()) {
        return Err(Error::InvalidField("degree does not divide".into()));
    }
    let lifted: Vec<Vec<u64>> = small.modulus().iter().map(|c| large.embed(c)).collect();
    let roots = ffpoly::distinct_roots(large, &lifted);
    roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no embedding root".into()))
}

pub fn embed_elem(large: &GaloisField, image_of_gen: &[u64], a: &[u64]) -> Vec<u64> {
    let mut acc = large.zero();
    for c in a.iter().rev() {
        acc = large.add(&large.mul(&acc, &image_of_gen.to_vec()), &large.embed(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf49_has_order_49_and_inverses() {
        let g = GaloisField::galois(7, 2).unwrap();
        assert_eq!(g.order(), 49);
        for i in 1..49 {
            let a = g.element(i);
            let b = g.inv(&a).unwrap();
            assert_eq!(g.mul(&a, &b), g.one());
            assert_eq!(g.index_of(&a), i);
        }
    }

    #[test]
    fn least_modulus_is_deterministic() {
        let a = GaloisField::galois(5, 3).unwrap();
        let b = GaloisField::galois(5, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        // x^3 + x + 1 is the first irreducible cubic over F_5 in this order
        assert_eq!(a.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn eisenstein_cube_root() {
        let k = ExtensionField::eisenstein();
        let w = k.generator();
        assert_eq!(k.pow(&w, 3), k.one());
        assert_ne!(w, k.one());
    }

    #[test]
    fn frobenius_orbit_size() {
        let g = GaloisField::galois(5, 4).unwrap();
        let a = g.generator();
        assert_eq!(g.frobenius_orbit(&a).len(), 4);
        assert_eq!(g.frobenius_orbit(&g.from_i64(3)).len(), 1);
    }

    #[test]
    fn embedding_is_homomorphism() {
        let s = GaloisField::galois(7, 2).unwrap();
        let l = GaloisField::galois(7, 4).unwrap();
        let img = embedding(&s, &l).unwrap();
        for i in [3u128, 10, 20, 48] {
            for j in [1u128, 5, 33] {
                let a = s.element(i);
                let b = s.element(j);
                let lhs = embed_elem(&l, &img, &s.mul(&a, &b));
                let rhs = l.mul(&embed_elem(&l, &img, &a), &embed_elem(&l, &img, &b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
