//! Short Weierstrass curves over prime fields, the chord-tangent group law,
//! torsion point search, and the embedding by |4O| into P^3.

use std::sync::OnceLock;

use rand::Rng;
use rayon::prelude::*;

use crate::algebra::prime::pow_mod;
use crate::algebra::resultant::dehomogenize_binary;
use crate::algebra::upoly;
use crate::algebra::{ffpoly, matrix, Field, FiniteField, GaloisField, PrimeField};
use crate::conic::{classify_vertex, VertexClass};
use crate::curves::{binary_squarefree, pencil_discriminant, quadric_matrix, tangent_and_osculating, CurveModel, Order};
use crate::error::{Error, Result};
use crate::kv::KeyValues;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EPoint {
    O,
    Affine(u64, u64),
}

#[derive(Debug)]
pub struct WeierstrassCurve {
    pub field: PrimeField,
    pub a: u64,
    pub b: u64,
    order: OnceLock<u64>,
}

impl Clone for WeierstrassCurve {
    fn clone(&self) -> Self {
        let order = OnceLock::new();
        if let Some(n) = self.order.get() {
            let _ = order.set(*n);
        }
        WeierstrassCurve { field: self.field, a: self.a, b: self.b, order }
    }
}

impl PartialEq for WeierstrassCurve {
    fn eq(&self, other: &Self) -> bool {
        (self.field, self.a, self.b) == (other.field, other.a, other.b)
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

impl WeierstrassCurve {
    pub fn new(p: u64, a: i64, b: i64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let (a, b) = (field.from_i64(a), field.from_i64(b));
        let disc = field.add(&field.mul(&4, &field.pow(&a, 3)), &field.mul(&27, &field.mul(&b, &b)));
        if disc == 0 {
            return Err(Error::DegenerateCurve("4a^3 + 27b^2 = 0".into()));
        }
        Ok(WeierstrassCurve { field, a, b, order: OnceLock::new() })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    fn rhs(&self, x: u64) -> u64 {
        let f = &self.field;
        f.add(&f.add(&f.pow(&x, 3), &f.mul(&self.a, &x)), &self.b)
    }

    pub fn contains(&self, pt: &EPoint) -> bool {
        match *pt {
            EPoint::O => true,
            EPoint::Affine(x, y) => x < self.p() && y < self.p() && self.field.mul(&y, &y) == self.rhs(x),
        }
    }

    fn check(&self, pt: &EPoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, pt: &EPoint) -> EPoint {
        match *pt {
            EPoint::O => EPoint::O,
            EPoint::Affine(x, y) => EPoint::Affine(x, self.field.neg(&y)),
        }
    }

    pub fn add(&self, p1: &EPoint, p2: &EPoint) -> EPoint {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (*p1, *p2) {
            (EPoint::O, q) | (q, EPoint::O) => return q,
            (EPoint::Affine(x1, y1), EPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(&y1, &y2) == 0 {
                return EPoint::O;
            }
            let num = f.add(&f.mul(&3, &f.mul(&x1, &x1)), &self.a);
            f.div(&num, &f.mul(&2, &y1)).unwrap()
        } else {
            f.div(&f.sub(&y2, &y1), &f.sub(&x2, &x1)).unwrap()
        };
        let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), &x1), &x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(&x1, &x3)), &y1);
        EPoint::Affine(x3, y3)
    }

    /// n P by double-and-add; negative n uses -P.
    pub fn scalar_mul(&self, pt: &EPoint, n: i64) -> Result<EPoint> {
        self.check(pt)?;
        let mut base = if n < 0 { self.neg(pt) } else { *pt };
        let mut k = n.unsigned_abs();
        let mut acc = EPoint::O;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// All points, O first, then by x and y.
    pub fn points(&self) -> Vec<EPoint> {
        let f = &self.field;
        let mut out = vec![EPoint::O];
        for x in 0..self.p() {
            if let Some(y) = f.sqrt(&self.rhs(x)) {
                let (y1, y2) = (y.min(f.neg(&y)), y.max(f.neg(&y)));
                out.push(EPoint::Affine(x, y1));
                if y2 != y1 {
                    out.push(EPoint::Affine(x, y2));
                }
            }
        }
        out
    }

    /// #E(F_p) by counting.
    pub fn group_order(&self) -> u64 {
        *self.order.get_or_init(|| {
            let p = self.p();
            let mut n = 1u64;
            for x in 0..p {
                let r = self.rhs(x);
                n += if r == 0 {
                    1
                } else if pow_mod(r, (p - 1) / 2, p) == 1 {
                    2
                } else {
                    0
                };
            }
            n
        })
    }

    pub fn point_order(&self, pt: &EPoint) -> Result<u64> {
        self.check(pt)?;
        let mut n = self.group_order();
        for r in prime_divisors(n) {
            while n.is_multiple_of(r) && self.scalar_mul(pt, (n / r) as i64)? == EPoint::O {
                n /= r;
            }
        }
        Ok(n)
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> EPoint {
        loop {
            let x = rng.gen_range(0..self.p());
            if let Some(y) = self.field.sqrt(&self.rhs(x)) {
                let y = if rng.gen_bool(0.5) { y } else { self.field.neg(&y) };
                return EPoint::Affine(x, y);
            }
        }
    }

    /// (1 : x : y : x^2), and O to (0 : 0 : 0 : 1).
    pub fn embed(&self, pt: &EPoint) -> Vec<u64> {
        match *pt {
            EPoint::O => vec![0, 0, 0, 1],
            EPoint::Affine(x, y) => vec![1, x, y, self.field.mul(&x, &x)],
        }
    }

    /// Inverse of the embedding on the image.
    pub fn unembed(&self, u: &[u64]) -> Result<EPoint> {
        let f = &self.field;
        let pt = if u[0] == 0 {
            if u[1] != 0 || u[2] != 0 || u[3] == 0 {
                return Err(Error::NotOnCurve);
            }
            EPoint::O
        } else {
            let inv = f.inv(&u[0]).unwrap();
            EPoint::Affine(f.mul(&u[1], &inv), f.mul(&u[2], &inv))
        };
        if self.contains(&pt) && matrix::rank(f, &[self.embed(&pt), u.to_vec()], 4) == 1 {
            Ok(pt)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn embed_by_4o(&self) -> Result<CurveModel<PrimeField>> {
        CurveModel::weierstrass(self.field, self.a, self.b)
    }

    /// (n q = O, (n/2) q = O): linear equivalence nq ~ nO and its half.
    pub fn lin_equiv_cert(&self, q: &EPoint, n: u64) -> Result<(bool, bool)> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidInput("n must be even".into()));
        }
        Ok((self.scalar_mul(q, n as i64)? == EPoint::O, self.scalar_mul(q, (n / 2) as i64)? == EPoint::O))
    }

    /// Contact order of the osculating plane at O, recorded as a diagnostic.
    pub fn contact_at_origin(&self) -> Result<Order> {
        let c = self.embed_by_4o()?;
        Ok(tangent_and_osculating(&c, &[0, 0, 0, 1])?.contact)
    }

    pub fn describe(&self) -> String {
        format!("y^2 = x^3 + {} x + {} over F_{}", self.a, self.b, self.p())
    }
}

/// A singular member l Q1 + m Q2 of the quadric pencil and its vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularMember {
    pub member: (Vec<u64>, Vec<u64>),
    pub vertex: Vec<Vec<u64>>,
    pub class: VertexClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadricPencilReport {
    /// Splitting field of the discriminant.
    pub field: GaloisField,
    pub squarefree: bool,
    pub members: Vec<SingularMember>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The singular quadrics containing the embedded curve, over the splitting
/// field of det(l A1 + m A2), with their vertices classified.
pub fn singular_quadrics(e: &WeierstrassCurve) -> Result<QuadricPencilReport> {
    let c = e.embed_by_4o()?;
    let f = &c.field;
    let (q1, q2) = c.quadrics().unwrap();
    let disc = pencil_discriminant(f, q1, q2);
    let squarefree = binary_squarefree(f, &disc);
    let (u, inf) = dehomogenize_binary(f, &disc);
    let split = ffpoly::factor(f, &u).iter().map(|(g, _)| upoly::degree(g).unwrap()).fold(1, |a, b| a * b / gcd(a, b));
    let g = GaloisField::galois(e.p(), split)?;
    let cg = c.map_field(&g, |x| g.embed(x))?;
    let (a1, a2) = (quadric_matrix(f, q1), quadric_matrix(f, q2));
    let lifted: Vec<Vec<u64>> = u.iter().map(|x| g.embed(x)).collect();
    let mut params: Vec<(Vec<u64>, Vec<u64>)> = ffpoly::distinct_roots(&g, &lifted).into_iter().map(|r| (r, g.one())).collect();
    if inf > 0 {
        params.push((g.one(), g.zero()));
    }
    let mut members = vec![];
    for (l, m) in params {
        let rows: Vec<Vec<Vec<u64>>> = (0..4)
            .map(|i| (0..4).map(|j| g.add(&g.mul(&l, &g.embed(&a1[i][j])), &g.mul(&m, &g.embed(&a2[i][j])))).collect())
            .collect();
        let ker = matrix::kernel(&g, &rows, 4);
        if ker.len() != 1 {
            return Err(Error::DegenerateCurve("a singular member of rank below 3".into()));
        }
        let vertex = crate::algebra::field::normalize_point(&g, &ker[0]);
        let class = classify_vertex(&cg, &vertex)?;
        members.push(SingularMember { member: (l, m), vertex, class });
    }
    Ok(QuadricPencilReport { field: g, squarefree, members })
}

pub fn format_point(pt: &EPoint) -> String {
    match pt {
        EPoint::O => "O".into(),
        EPoint::Affine(x, y) => format!("({x}, {y})"),
    }
}

/// Candidates (p, a, b) in order: primes ascending, then a, then b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub primes: Vec<u64>,
    /// Index of the first candidate to examine.
    pub start: u64,
}

impl SearchSpace {
    pub fn new(primes: Vec<u64>) -> Self {
        SearchSpace { primes, start: 0 }
    }

    fn candidate(&self, mut idx: u64) -> Option<(u64, u64, u64)> {
        for &p in &self.primes {
            if idx < p * p {
                return Some((p, idx / p, idx % p));
            }
            idx -= p * p;
        }
        None
    }

    pub fn len(&self) -> u64 {
        self.primes.iter().map(|p| p * p).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// First point of the curve with exact order n, in enumeration order.
pub fn point_of_exact_order(e: &WeierstrassCurve, n: u64) -> Option<EPoint> {
    if n == 0 || !e.group_order().is_multiple_of(n) {
        return None;
    }
    let primes = prime_divisors(n);
    e.points().into_iter().find(|q| {
        e.scalar_mul(q, n as i64).unwrap() == EPoint::O
            && primes.iter().all(|r| e.scalar_mul(q, (n / r) as i64).unwrap() != EPoint::O)
    })
}

const BLOCK: u64 = 256;

/// The first (E, q) in the search space with q of exact order n, examining
/// at most `budget` candidates.
pub fn find_point_of_order(space: &SearchSpace, n: u64, budget: u64) -> Result<(WeierstrassCurve, EPoint)> {
    let end = space.len().min(space.start.saturating_add(budget));
    let mut idx = space.start;
    while idx < end {
        let hi = (idx + BLOCK).min(end);
        let found = (idx..hi)
            .into_par_iter()
            .filter_map(|i| {
                let (p, a, b) = space.candidate(i)?;
                let e = WeierstrassCurve::new(p, a as i64, b as i64).ok()?;
                point_of_exact_order(&e, n).map(|q| (i, e, q))
            })
            .min_by_key(|(i, _, _)| *i);
        if let Some((_, e, q)) = found {
            return Ok((e, q));
        }
        idx = hi;
    }
    if end < space.len() {
        Err(Error::BudgetExhausted { done: end - space.start, resume: end })
    } else {
        Err(Error::GenericityFailure(format!("no point of order {n} in the search space")))
    }
}

/// Record of a torsion witness (p, a, b, q) in key-value text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCertificate {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub q: (u64, u64),
    pub order: u64,
    pub group_order: u64,
}

impl GoldenCertificate {
    pub fn from_witness(e: &WeierstrassCurve, q: &EPoint) -> Result<Self> {
        let EPoint::Affine(x, y) = *q else {
            return Err(Error::InvalidInput("the witness must be affine".into()));
        };
        Ok(GoldenCertificate { p: e.p(), a: e.a, b: e.b, q: (x, y), order: e.point_order(q)?, group_order: e.group_order() })
    }

    pub fn render(&self) -> String {
        let mut kv = KeyValues::default();
        kv.set("p", self.p);
        kv.set("a", self.a);
        kv.set("b", self.b);
        kv.set("qx", self.q.0);
        kv.set("qy", self.q.1);
        kv.set("order", self.order);
        kv.set("group_order", self.group_order);
        kv.render()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let kv = KeyValues::parse(text)?;
        let get = |k: &str| -> Result<u64> { kv.get_parsed::<u64>(k)?.ok_or_else(|| Error::Parse(format!("missing key '{k}'"))) };
        Ok(GoldenCertificate {
            p: get("p")?,
            a: get("a")?,
            b: get("b")?,
            q: (get("qx")?, get("qy")?),
            order: get("order")?,
            group_order: get("group_order")?,
        })
    }

    /// Recheck by exhaustive enumeration of the curve.
    pub fn verify(&self) -> Result<(WeierstrassCurve, EPoint)> {
        let e = WeierstrassCurve::new(self.p, self.a as i64, self.b as i64)?;
        let q = EPoint::Affine(self.q.0, self.q.1);
        let pts = e.points();
        if pts.len() as u64 != self.group_order || e.group_order() != self.group_order {
            return Err(Error::CertificateFailure { record: 0, detail: "group order mismatch".into() });
        }
        let brute = (1..=self.group_order)
            .scan(EPoint::O, |acc, k| {
                *acc = e.add(acc, &q);
                Some((k, *acc))
            })
            .find(|(_, r)| *r == EPoint::O)
            .map(|(k, _)| k);
        if brute != Some(self.order) || !e.contains(&q) {
            return Err(Error::CertificateFailure { record: 0, detail: "point order mismatch".into() });
        }
        Ok((e, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_mul_matches_repeated_addition() {
        let e = WeierstrassCurve::new(101, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = e.random_point(&mut rng);
            let mut acc = EPoint::O;
            for n in 0..=64 {
                assert_eq!(e.scalar_mul(&p, n).unwrap(), acc);
                acc = e.add(&acc, &p);
            }
        }
        assert_eq!(e.scalar_mul(&EPoint::Affine(0, 0), 2), Err(Error::NotOnCurve));
    }

    #[test]
    fn order_sixteen_search() {
        let space = SearchSpace::new(vec![17, 19, 23]);
        let (e, q) = find_point_of_order(&space, 16, 10_000).unwrap();
        assert_eq!(e.lin_equiv_cert(&q, 16).unwrap(), (true, false));
        assert_eq!(e.point_order(&q).unwrap(), 16);
        let cert = GoldenCertificate::from_witness(&e, &q).unwrap();
        assert_eq!(GoldenCertificate::parse(&cert.render()).unwrap(), cert);
        cert.verify().unwrap();
        assert!(matches!(find_point_of_order(&space, 16, 3), Err(Error::BudgetExhausted { done: 3, resume: 3 })));
    }

    #[test]
    fn group_law_axioms() {
        let e = WeierstrassCurve::new(101, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let (a, b, c) = (e.random_point(&mut rng), e.random_point(&mut rng), e.random_point(&mut rng));
            assert_eq!(e.add(&e.add(&a, &b), &c), e.add(&a, &e.add(&b, &c)));
            assert_eq!(e.add(&a, &b), e.add(&b, &a));
            assert_eq!(e.add(&a, &e.neg(&a)), EPoint::O);
            assert_eq!(e.add(&a, &EPoint::O), a);
            assert!(e.contains(&e.add(&a, &b)));
        }
        let p = e.random_point(&mut rng);
        assert_eq!(e.scalar_mul(&p, 0).unwrap(), EPoint::O);
        assert_eq!(e.scalar_mul(&p, 1).unwrap(), p);
        assert_eq!(e.scalar_mul(&p, e.group_order() as i64).unwrap(), EPoint::O);
        assert_eq!(e.points().len() as u64, e.group_order());
        assert!(WeierstrassCurve::new(101, 0, 0).is_err());
    }

    #[test]
    fn orders_of_multiples() {
        let (e, q) = find_point_of_order(&SearchSpace::new(vec![17]), 16, u64::MAX).unwrap();
        let q2 = e.scalar_mul(&q, 2).unwrap();
        assert_eq!(e.point_order(&q2).unwrap(), 8);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let r = e.random_point(&mut rng);
            let (a, b) = (e.point_order(&q).unwrap(), e.point_order(&r).unwrap());
            let lcm = a * b / gcd(a as usize, b as usize) as u64;
            assert_eq!(lcm % e.point_order(&e.add(&q, &r)).unwrap(), 0);
        }
        let t = e.points().into_iter().find(|p| e.point_order(p).unwrap() == 2).unwrap();
        assert_eq!(e.lin_equiv_cert(&t, 16).unwrap(), (true, true));
    }

    #[test]
    fn four_singular_quadrics() {
        for (p, a, b) in [(101, 2, 3), (17, 2, 4)] {
            let e = WeierstrassCurve::new(p, a, b).unwrap();
            let rep = singular_quadrics(&e).unwrap();
            assert!(rep.squarefree);
            assert_eq!(rep.members.len(), 4);
            for m in &rep.members {
                assert_eq!(m.class.tag, crate::conic::VertexTag::S);
                assert_eq!(m.class.witness, 6);
            }
            let mut v: Vec<_> = rep.members.iter().map(|m| m.vertex.clone()).collect();
            v.dedup();
            assert_eq!(v.len(), 4);
        }
    }

    #[test]
    fn plane_sections_sum_to_zero() {
        use crate::algebra::MultiPoly;
        let e = WeierstrassCurve::new(101, 2, 3).unwrap();
        let c = e.embed_by_4o().unwrap();
        let f = &c.field;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 5 {
            let pts: Vec<EPoint> = (0..3).map(|_| e.random_point(&mut rng)).collect();
            let rows: Vec<Vec<u64>> = pts.iter().map(|p| e.embed(p)).collect();
            let ker = matrix::kernel(f, &rows, 4);
            if ker.len() != 1 {
                continue;
            }
            let div = crate::curves::divisor_on_curve(&c, &MultiPoly::linear(f, &ker[0]), 8).unwrap();
            assert_eq!(div.total_degree(), 4);
            let mut sum = EPoint::O;
            for dp in &div.points {
                let pt = e.unembed(&dp.rational().unwrap()).unwrap();
                sum = e.add(&sum, &e.scalar_mul(&pt, dp.multiplicity as i64).unwrap());
            }
            assert_eq!(sum, EPoint::O);
            done += 1;
        }
    }

    #[test]
    fn contact_at_origin_is_recorded() {
        let e = WeierstrassCurve::new(101, 2, 3).unwrap();
        let n = e.contact_at_origin().unwrap().finite().unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn embedding_lands_on_quadrics() {
        let e = WeierstrassCurve::new(101, 2, 3).unwrap();
        let c = e.embed_by_4o().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let p = e.random_point(&mut rng);
            let u = e.embed(&p);
            assert!(c.contains_point(&u));
            assert_eq!(e.unembed(&u).unwrap(), p);
        }
        assert!(c.contains_point(&e.embed(&EPoint::O)));
        assert_eq!(e.lin_equiv_cert(&EPoint::O, 16).unwrap(), (true, true));
    }
}
