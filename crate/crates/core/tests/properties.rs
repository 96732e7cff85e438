use conics::algebra::matrix::rref;
use conics::algebra::series;
use conics::algebra::upoly;
use conics::algebra::{
    groebner_basis, subspace_compare, ExtensionField, Field, GaloisField, GradedPiece, MultiPoly, PrimeField,
    Rationals, Relation, SubspaceBasis,
};
use conics::curves::{divisor_on_curve, sample_points, vanishing_order, CurveModel, Order};
use conics::elliptic::WeierstrassCurve;
use conics::intersection::{blowup_product, BlowupClass};
use proptest::prelude::*;
use std::sync::OnceLock;

const P: u64 = 101;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 128, ..ProptestConfig::default() }
}

fn form(k: u32, coeffs: &[u64]) -> MultiPoly<u64> {
    MultiPoly::from_dense(&fp(), 4, k, coeffs)
}

fn forms(max_deg: u32) -> impl Strategy<Value = MultiPoly<u64>> {
    (1..=max_deg).prop_flat_map(|k| {
        prop::collection::vec(0..P, GradedPiece::get(4, k).dim()).prop_map(move |v| form(k, &v))
    })
}

fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    prop_assert_eq!(f.add(a, b), f.add(b, a));
    prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    prop_assert!(f.is_zero(&f.add(a, &f.neg(a))));
    prop_assert_eq!(f.mul(a, &f.one()), a.clone());
    match f.inv(a) {
        Some(i) => prop_assert!(f.is_one(&f.mul(a, &i))),
        None => prop_assert!(f.is_zero(a)),
    }
    Ok(())
}

fn gf() -> &'static GaloisField {
    static G: OnceLock<GaloisField> = OnceLock::new();
    G.get_or_init(|| GaloisField::galois(7, 3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn prime_field_axioms(a in 0..P, b in 0..P, c in 0..P) {
        check_axioms(&fp(), &a, &b, &c)?;
    }

    #[test]
    fn galois_field_axioms(a in 0u128..343, b in 0u128..343, c in 0u128..343) {
        use conics::algebra::FiniteField;
        let g = gf();
        check_axioms(g, &g.element(a), &g.element(b), &g.element(c))?;
    }

    #[test]
    fn rational_axioms(a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20), c in (-50i64..50, 1i64..20)) {
        let q = Rationals;
        check_axioms(&q, &q.frac(a.0, a.1), &q.frac(b.0, b.1), &q.frac(c.0, c.1))?;
    }

    #[test]
    fn eisenstein_axioms(a in (-9i64..9, -9i64..9), b in (-9i64..9, -9i64..9), c in (-9i64..9, -9i64..9)) {
        let k = ExtensionField::eisenstein();
        let w = k.generator();
        let e = |(x, y): (i64, i64)| k.add(&k.from_i64(x), &k.mul(&k.from_i64(y), &w));
        check_axioms(&k, &e(a), &e(b), &e(c))?;
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(0..P, 6), 1..8)) {
        let f = fp();
        let (r, rank) = rref(&f, &rows, 6);
        let (rr, rank2) = rref(&f, &r, 6);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(rank, rank2);
    }

    #[test]
    fn rational_rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-5i64..5, 4), 1..5)) {
        let q = Rationals;
        let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let (r, _) = rref(&q, &rows, 4);
        prop_assert_eq!(&rref(&q, &r, 4).0, &r);
    }

    #[test]
    fn equal_iff_same_echelon_rows(
        a in prop::collection::vec(prop::collection::vec(0..P, 10), 1..4),
        mix in prop::collection::vec(prop::collection::vec(0..P, 4), 4),
        other in prop::collection::vec(prop::collection::vec(0..P, 10), 1..4),
    ) {
        let f = fp();
        let sa = SubspaceBasis::from_vectors(&f, 4, 2, &a);
        let combos: Vec<Vec<u64>> = mix
            .iter()
            .map(|m| (0..10).map(|j| f.sum(a.iter().zip(m).map(|(r, c)| f.mul(&r[j], c)).collect::<Vec<_>>().iter())).collect())
            .collect();
        let mut b = combos;
        b.extend(a.iter().cloned());
        let sb = SubspaceBasis::from_vectors(&f, 4, 2, &b);
        prop_assert_eq!(subspace_compare(&f, &sa, &sb).unwrap().relation, Relation::Equal);
        prop_assert_eq!(sa.rows(), sb.rows());
        let so = SubspaceBasis::from_vectors(&f, 4, 2, &other);
        let rel = subspace_compare(&f, &sa, &so).unwrap().relation;
        prop_assert_eq!(rel == Relation::Equal, sa.rows() == so.rows());
    }

    #[test]
    fn groebner_output_is_reduced(
        g1 in prop::collection::vec(0..P, 10),
        g2 in prop::collection::vec(0..P, 10),
        g3 in prop::collection::vec(0..P, 4),
    ) {
        let f = fp();
        let gens = vec![form(2, &g1), form(2, &g2), form(1, &g3)];
        let gb = groebner_basis(&f, &gens);
        prop_assert!(gb.is_reduced());
        prop_assert!(gb.satisfies_buchberger(&f));
        for g in &gens {
            prop_assert!(gb.contains(&f, g));
        }
    }

    #[test]
    fn euler_relation(g in forms(5)) {
        let f = fp();
        let k = g.degree();
        let lhs = (0..4).fold(MultiPoly::zero(4, k), |acc, i| {
            acc.add(&f, &g.derivative(&f, i).mul(&f, &MultiPoly::var(&f, 4, i)))
        });
        prop_assert_eq!(lhs, g.scale(&f, &f.from_i64(k as i64)));
    }

    #[test]
    fn taylor_shift_matches_substitution(a in prop::collection::vec(0..P, 0..12), c in 0..P) {
        let f = fp();
        let a = upoly::trim(&f, a);
        let s = upoly::shift(&f, &a, &c);
        // deg < p, so agreement on all of F_p is equality.
        for x in 0..P {
            prop_assert_eq!(upoly::eval(&f, &s, &x), upoly::eval(&f, &a, &f.add(&x, &c)));
        }
    }

    #[test]
    fn first_order_term_in_the_vertex_parameter(g in forms(5), pt in prop::collection::vec(0..P, 4)) {
        let f = fp();
        let k = g.degree();
        let len = k as usize + 1;
        let xs: Vec<Vec<u64>> = vec![
            series::truncate::<PrimeField>(&[pt[0], pt[3]], len),
            series::constant(&f, pt[1], len),
            series::constant(&f, pt[2], len),
            series::constant(&f, pt[3], len),
        ];
        let expansion = series::eval_poly(&f, &g, &xs);
        prop_assert_eq!(expansion[0], g.eval(&f, &pt));
        prop_assert_eq!(expansion[1], f.mul(&pt[3], &g.derivative(&f, 0).eval(&f, &pt)));
    }

    #[test]
    fn blowup_product_symmetric_trilinear(
        a in (-5i64..5, -5i64..5), b in (-5i64..5, -5i64..5), c in (-5i64..5, -5i64..5),
        d in 3u32..=8, g in 0u32..=4, s in -4i64..4,
    ) {
        let g = g.min(conics::intersection::castelnuovo_bound(d));
        let cls = |(x, y): (i64, i64)| BlowupClass::l().scale(x).add(&BlowupClass::e().scale(y)).unwrap();
        let (ca, cb, cc) = (cls(a), cls(b), cls(c));
        let abc = blowup_product(&ca, &cb, &cc, d, g).unwrap();
        for (x, y, z) in [(&cb, &ca, &cc), (&cc, &ca, &cb), (&ca, &cc, &cb)] {
            prop_assert_eq!(blowup_product(x, y, z, d, g).unwrap(), abc);
        }
        let sum = ca.scale(s).add(&cb).unwrap();
        prop_assert_eq!(
            blowup_product(&sum, &cb, &cc, d, g).unwrap(),
            s * abc + blowup_product(&cb, &cb, &cc, d, g).unwrap()
        );
    }
}

fn curves() -> &'static [(CurveModel<PrimeField>, Vec<Vec<u64>>)] {
    static C: OnceLock<Vec<(CurveModel<PrimeField>, Vec<Vec<u64>>)>> = OnceLock::new();
    C.get_or_init(|| {
        let f = fp();
        [CurveModel::weierstrass(f, 2, 3).unwrap(), CurveModel::twisted_cubic(f).unwrap(), CurveModel::rational_quartic(f).unwrap()]
            .into_iter()
            .map(|c| {
                let pts = sample_points(&c, 60);
                (c, pts)
            })
            .collect()
    })
}

/// Products of linear forms, each pushed through q when `through` says so.
fn form_through(q: &[u64], lins: &[(Vec<u64>, bool)]) -> MultiPoly<u64> {
    let f = fp();
    let j = q.iter().position(|&x| x != 0).unwrap();
    lins.iter().fold(MultiPoly::constant(&f, 4, 1), |acc, (l, through)| {
        let mut l = l.clone();
        if *through {
            let v = f.sum(l.iter().zip(q).map(|(a, b)| f.mul(a, b)).collect::<Vec<_>>().iter());
            l[j] = f.sub(&l[j], &f.div(&v, &q[j]).unwrap());
        }
        acc.mul(&f, &MultiPoly::linear(&f, &l))
    })
}

fn linear_factors() -> impl Strategy<Value = Vec<(Vec<u64>, bool)>> {
    prop::collection::vec((prop::collection::vec(0..P, 4), any::<bool>()), 1..=2)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn sampled_points_lie_on_the_curve(which in 0usize..3, i in 0usize..60) {
        let f = fp();
        let (c, pts) = &curves()[which];
        let pt = &pts[i % pts.len()];
        for row in c.ideal_piece(2).rows() {
            prop_assert_eq!(form(2, row).eval(&f, pt), 0);
        }
    }

    #[test]
    fn vanishing_order_is_additive(which in 0usize..3, i in 0usize..60, a in linear_factors(), b in linear_factors()) {
        let f = fp();
        let (c, pts) = &curves()[which];
        let q = &pts[i % pts.len()];
        let (g, h) = (form_through(q, &a), form_through(q, &b));
        prop_assume!(!g.is_zero() && !h.is_zero() && !c.in_ideal(&g) && !c.in_ideal(&h));
        let (Order::Finite(ng), Order::Finite(nh)) = (vanishing_order(c, &g, q, None).unwrap(), vanishing_order(c, &h, q, None).unwrap()) else {
            return Err(TestCaseError::fail("finite orders expected"));
        };
        prop_assert_eq!(vanishing_order(c, &g.mul(&f, &h), q, None).unwrap(), Order::Finite(ng + nh));
    }

    #[test]
    fn divisor_degree_is_d_times_k(which in 0usize..3, g in forms(2)) {
        let (c, _) = &curves()[which];
        prop_assume!(!g.is_zero() && !c.in_ideal(&g));
        let div = divisor_on_curve(c, &g, 8).unwrap();
        prop_assert_eq!(div.total_degree(), c.degree * g.degree());
    }

    #[test]
    fn group_law_axioms(i in 0usize..200, j in 0usize..200, k in 0usize..200) {
        static E: OnceLock<(WeierstrassCurve, Vec<conics::elliptic::EPoint>)> = OnceLock::new();
        let (e, pts) = E.get_or_init(|| {
            let e = WeierstrassCurve::new(101, 2, 3).unwrap();
            let pts = e.points();
            (e, pts)
        });
        let (a, b, c) = (&pts[i % pts.len()], &pts[j % pts.len()], &pts[k % pts.len()]);
        prop_assert_eq!(e.add(&e.add(a, b), c), e.add(a, &e.add(b, c)));
        prop_assert_eq!(e.add(a, b), e.add(b, a));
        prop_assert_eq!(e.add(a, &e.neg(a)), conics::elliptic::EPoint::O);
        prop_assert_eq!(e.add(a, &conics::elliptic::EPoint::O), *a);
    }
}
