use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::limits::min_vanishing_order;
use super::*;
use crate::algebra::mpoly::{parse, VAR_NAMES};
use crate::algebra::{PrimeField, Rationals};
use crate::curves::{sample_points, Order};

fn elliptic() -> CurveModel<PrimeField> {
    CurveModel::weierstrass(PrimeField::new(101).unwrap(), 2, 3).unwrap()
}

fn random_point(f: &PrimeField, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..4).map(|_| rng.gen_range(0..f.p())).collect()
}

fn random_u_point(c: &CurveModel<PrimeField>, rng: &mut ChaCha8Rng) -> Vec<u64> {
    loop {
        let p = random_point(&c.field, rng);
        if p.iter().any(|&x| x != 0) && classify_vertex(c, &p).map(|v| v.tag) == Ok(VertexTag::U) {
            return p;
        }
    }
}

fn random_in(f: &PrimeField, gens: &[MultiPoly<u64>], rng: &mut ChaCha8Rng) -> MultiPoly<u64> {
    gens.iter().fold(MultiPoly::zero(4, gens[0].degree()), |acc, g| acc.add(f, &g.scale(f, &rng.gen_range(0..f.p()))))
}

fn p(f: &impl Field<Elem = u64>, s: &str) -> MultiPoly<u64> {
    parse(f, 4, &VAR_NAMES, s).unwrap()
}

#[test]
fn wspace_examples() {
    let q = Rationals;
    let o = vec![q.zero(), q.zero(), q.zero(), q.one()];
    let xyz: Vec<_> = ["x", "y", "z"].iter().map(|s| parse(&q, 4, &VAR_NAMES, s).unwrap()).collect();
    assert_eq!(wspace(&q, &o), SubspaceBasis::span(&q, 4, 1, &xyz));
    let f = PrimeField::new(7).unwrap();
    let e0 = [1, 0, 0, 0];
    assert_eq!(wspace(&f, &e0), SubspaceBasis::span(&f, 4, 1, &[p(&f, "y"), p(&f, "z"), p(&f, "w")]));
    let ones = [1, 1, 1, 1];
    let w = wspace(&f, &ones);
    assert_eq!(w.dim(), 3);
    assert!(w.polys(&f).iter().all(|g| g.eval(&f, &ones) == 0));
}

#[test]
fn classification_on_elliptic_quartics() {
    let f = PrimeField::new(101).unwrap();
    let diag = CurveModel::diagonal_quartic(f, [0, 1, 2, 3]).unwrap();
    let v = classify_vertex(&diag, &[1, 0, 0, 0]).unwrap();
    assert_eq!((v.tag, v.witness), (VertexTag::S, 6));
    assert_eq!((v.projection_degree, v.cone_degree), (Some(2), Some(2)));
    assert!(matches!(cone_equation(&diag, &[1, 0, 0, 0]), Err(Error::AmbiguousCone(6))));

    let c = elliptic();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = random_u_point(&c, &mut rng);
    assert_eq!(classify_vertex(&c, &u).unwrap().witness, 1);
    let q = &sample_points(&c, 5)[3];
    let v = classify_vertex(&c, q).unwrap();
    assert_eq!((v.tag, v.witness), (VertexTag::Cprime, 3));
    let fq = cone_equation(&c, q).unwrap();
    assert_eq!(fq.degree(), 3);
    assert_eq!(cone_space(&c, q, 4), SubspaceBasis::span(&f, 4, 4, &wspace(&f, q).polys(&f).iter().map(|h| h.mul(&f, &fq)).collect::<Vec<_>>()));
    for pt in sample_points(&c, 30) {
        assert_eq!(fq.eval(&f, &pt), 0);
    }
}

#[test]
fn twisted_cubic_cone() {
    let q = Rationals;
    let c = CurveModel::twisted_cubic(q).unwrap();
    let pt = vec![q.one(), q.zero(), q.zero(), q.from_i64(-1)];
    let v = classify_vertex(&c, &pt).unwrap();
    assert_eq!((v.tag, v.witness), (VertexTag::U, 1));
    let fp = cone_equation(&c, &pt).unwrap();
    let gens: Vec<_> = ["y", "z", "x + w"].iter().map(|s| parse(&q, 4, &VAR_NAMES, s).unwrap()).collect();
    let sym = SubspaceBasis::span(&q, 4, 3, &symmetric_products(&q, &gens, 3));
    assert!(sym.contains(&q, &fp));
    assert!(c.in_ideal(&fp));
}

#[test]
fn system_dimensions_follow_tables() {
    let c = elliptic();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let u = random_u_point(&c, &mut rng);
    let q = sample_points(&c, 8)[5].clone();
    assert_eq!(sections_space(&c, 4).dim(), 16);
    assert_eq!(sections_space(&c, 3).dim(), 12);
    assert_eq!(conic_system(&c, &u, 4).unwrap().dim(), 14);
    assert_eq!(conic_system(&c, &u, 3).unwrap().dim(), 10);
    assert_eq!(conic_system(&c, &q, 4).unwrap().dim(), 12);
    assert_eq!(conic_system(&c, &q, 3).unwrap().dim(), 9);
    for (tag, pt) in [(VertexTag::U, &u), (VertexTag::Cprime, &q)] {
        for k in [3, 4] {
            assert_eq!(Some(conic_system(&c, pt, k).unwrap().dim()), expected_dim(tag, 4, k));
        }
    }
}

#[test]
fn limit_cone_of_twisted_cubic() {
    let f = PrimeField::new(101).unwrap();
    let c = CurveModel::twisted_cubic(f).unwrap();
    let o = [0, 0, 0, 1];
    let dir = LimitDirection::new(&c, &o, Some(&[1, 0, 0, 0])).unwrap();
    let lc = limit_cone(&c, &dir).unwrap();
    assert_eq!(lc.cone, p(&f, "y^3 - x*y*z").normalize(&f));
    assert!(lc.plane_matches);
    let tan = LimitDirection::new(&c, &o, None).unwrap();
    let lt = limit_cone(&c, &tan).unwrap();
    assert!(lt.plane_matches);
    assert_eq!(lt.original, p(&f, "x*y^2 - x^2*z").normalize(&f));
}

#[test]
fn limit_cone_on_elliptic_quartic() {
    let c = elliptic();
    let f = c.field;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts = sample_points(&c, 40);
    for _ in 0..2 {
        let q = &pts[rng.gen_range(0..pts.len())];
        let dir = LimitDirection::new(&c, q, Some(&random_point(&f, &mut rng))).unwrap();
        let lc = limit_cone(&c, &dir).unwrap();
        assert_eq!(lc.power, 1);
        assert_eq!(lc.base.degree(), 3);
        assert!(lc.plane_matches);
        assert!(lc.cone.div_exact(&f, &lc.plane).is_some());
    }
}

#[test]
fn limit_systems_on_elliptic_quartic() {
    let c = elliptic();
    let f = c.field;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pts = sample_points(&c, 40);
    let q = &pts[rng.gen_range(0..pts.len())];
    let dir = LimitDirection::new(&c, q, Some(&random_point(&f, &mut rng))).unwrap();
    let cf = dir.adapted_curve(&c).unwrap();
    let o = [0, 0, 0, 1];
    for (k, dim, extra) in [(3, 10, 1), (4, 14, 2)] {
        let sys = limit_conic_system(&c, &dir, k).unwrap();
        assert!(sys.flags.unwrap().closed_form_applies());
        assert_eq!(sys.dim(), dim);
        assert_eq!(sys.extras.len(), extra);
        let rk = conic_system(&cf, &o, k).unwrap().basis;
        assert_eq!(rk.sum(&f, &sys.basis).unwrap(), sys.basis);
        assert_eq!(min_vanishing_order(&c, &dir, &sys).unwrap(), Order::Finite(2));
    }
    let low = limit_conic_system(&c, &dir, 2).unwrap();
    assert_eq!(low.basis, conic_system(&cf, &o, 2).unwrap().basis);
}

#[test]
fn cube_root_fibres_of_the_cone_map() {
    let f = PrimeField::new(7).unwrap();
    let c = CurveModel::twisted_cubic(f).unwrap();
    let pts: Vec<[u64; 4]> = [1, 2, 4].iter().map(|&a| [a, 0, 0, 6]).collect();
    for pt in &pts {
        assert_eq!(classify_vertex(&c, pt).unwrap().tag, VertexTag::U);
    }
    assert!(conic_systems_equal(&c, &pts[0], &pts[1], 3).unwrap());
    assert!(conic_systems_equal(&c, &pts[0], &pts[2], 3).unwrap());
    assert!(!conic_systems_equal(&c, &pts[0], &[3, 0, 0, 6], 3).unwrap());
}

#[test]
fn elliptic_cone_map_separates_points() {
    let c = elliptic();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_u_point(&c, &mut rng);
    let b = random_u_point(&c, &mut rng);
    assert!(!conic_systems_equal(&c, &a, &b, 4).unwrap());
}

#[test]
fn gamma_and_dphi_bounds() {
    let f = PrimeField::new(101).unwrap();
    let cases: Vec<(CurveModel<PrimeField>, usize, usize)> = vec![
        (CurveModel::twisted_cubic(f).unwrap(), 1, 2),
        (elliptic(), 2, 1),
        (CurveModel::rational_quartic(f).unwrap(), 3, 0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (c, gamma_min, corank) in cases {
        let u = random_u_point(&c, &mut rng);
        assert!(gamma_dim(&c, &u).unwrap() >= gamma_min);
        let g = random_in(&f, &wpower(&f, &u, c.degree), &mut rng);
        assert_eq!(dphi_corank(&c, &u, &g).unwrap(), corank);
        let fp = cone_equation(&c, &u).unwrap();
        assert_eq!(dphi_corank(&c, &u, &fp), Err(Error::ZeroClass));
    }
}
