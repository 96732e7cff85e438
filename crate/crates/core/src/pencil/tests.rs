use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::linear_power_root;
use super::*;
use crate::algebra::{Field, MultiPoly, PrimeField};
use crate::conic::{classify_vertex, limit_conic_system, LimitDirection, VertexTag};
use crate::curves::divisor::divisor_on_curve;
use crate::curves::CurveModel;
use crate::elliptic::{EPoint, WeierstrassCurve};
use crate::error::Error;
use crate::intersection::count_nodes;

struct Fixture {
    e: WeierstrassCurve,
    q: EPoint,
    c: CurveModel<PrimeField>,
    qv: Vec<u64>,
    scan: ScanReport,
}

fn fixture() -> &'static Fixture {
    static FX: OnceLock<Fixture> = OnceLock::new();
    FX.get_or_init(|| {
        let (e, q) = find_point_of_order(&SearchSpace::new(vec![17]), 16, u64::MAX).unwrap();
        let c = e.embed_by_4o().unwrap();
        let qv = e.embed(&q);
        let scan = search_vertices(&c, &qv, &ScanRegion::Full, 0, u64::MAX).unwrap();
        Fixture { e, q, c, qv, scan }
    })
}

#[test]
fn region_parsing() {
    assert_eq!(ScanRegion::parse("full").unwrap(), ScanRegion::Full);
    let b = ScanRegion::parse("box:0-3,1-2,5-5").unwrap();
    assert_eq!(b.len(17), 8);
    assert_eq!(ScanRegion::parse(&b.describe()).unwrap(), b);
    let l = ScanRegion::parse("line:1,0,0,0;0,1,0,0").unwrap();
    assert_eq!(l.len(17), 18);
    assert!(ScanRegion::parse("box:3-1,0-0,0-0").is_err());
    assert_eq!(ScanRegion::Full.len(5), 156);
}

#[test]
fn generic_vertices_carry_only_the_cone() {
    let fx = fixture();
    let f = &fx.c.field;
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut ones = 0;
    let mut seen = 0;
    while seen < 20 {
        let v: Vec<u64> = (0..4).map(|_| rng.gen_range(0..17)).collect();
        if v.iter().all(|x| *x == 0) || fx.c.contains_point(&v) || classify_vertex(&fx.c, &v).unwrap().tag != VertexTag::U {
            continue;
        }
        seen += 1;
        let sol = vertex_conditions(&fx.c, &v, &fx.qv, 16).unwrap();
        assert!(sol.contains(f, &crate::conic::cone_equation(&fx.c, &v).unwrap()));
        if sol.dim() == 1 {
            ones += 1;
        }
    }
    assert!(ones >= 18, "{ones}");
}

#[test]
fn scan_witnesses_cut_sixteen_q() {
    let fx = fixture();
    let f = &fx.c.field;
    assert!(!fx.scan.witnesses.is_empty());
    assert_eq!(fx.scan.examined, ScanRegion::Full.len(17));
    for w in &fx.scan.witnesses {
        assert!(w.solution_dim >= 2);
        assert_eq!(classify_vertex(&fx.c, &w.vertex).unwrap().tag, VertexTag::U);
        let div = divisor_on_curve(&fx.c, &w.g, 8).unwrap();
        assert_eq!(div.concentrated_at(), Some((fx.qv.clone(), 16)));
        assert_eq!(div.total_degree(), 16);
        assert!(!fx.c.in_ideal(&w.g));
        assert_eq!(w.fp.eval(f, &w.vertex), 0);
    }
}

#[test]
fn scan_budget_and_resume() {
    let fx = fixture();
    let err = search_vertices(&fx.c, &fx.qv, &ScanRegion::Full, 0, 1000).unwrap_err();
    assert_eq!(err, Error::BudgetExhausted { done: 1000, resume: 1000 });
    let rest = search_vertices(&fx.c, &fx.qv, &ScanRegion::Full, 1000, u64::MAX).unwrap();
    assert_eq!(rest.examined, ScanRegion::Full.len(17) - 1000);
    assert!(rest.witnesses.iter().all(|w| fx.scan.witnesses.contains(w)));
}

#[test]
fn osculating_quartic_at_q() {
    let fx = fixture();
    let f = &fx.c.field;
    let o = osculating_quartic(&fx.c, &fx.qv).unwrap();
    assert_eq!(o.order_on_projection, 12);
    assert!(o.unique);
    assert_eq!(o.solution_dim, 4);
    assert_eq!(o.divisor.concentrated_at(), Some((fx.qv.clone(), 16)));
    assert!(o.plane.div_exact(f, &o.cubic).is_none());
    let sol = vertex_conditions(&fx.c, &fx.qv, &fx.qv, 16).unwrap();
    assert!(sol.contains(f, &o.quartic));
    // inside R_4(q) and in the limit systems along lines through q
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 2 {
        let r: Vec<u64> = (0..4).map(|_| rng.gen_range(0..17)).collect();
        let Ok(dir) = LimitDirection::new(&fx.c, &fx.qv, Some(&r)) else { continue };
        let Ok(sys) = limit_conic_system(&fx.c, &dir, 4) else { continue };
        let cf = dir.adapted_curve(&fx.c).unwrap();
        let v = cf.sections(4).project(f, &o.quartic.change_frame(f, &dir.frame));
        assert!(sys.basis.contains_vector(f, &v));
        checked += 1;
    }
}

#[test]
fn pencil_from_witness() {
    let fx = fixture();
    let f = &fx.c.field;
    let w = &fx.scan.witnesses[0];
    let pencil = build_pencil(&fx.c, w, &fx.qv).unwrap();
    assert_eq!(pencil.k.eval(f, &pencil.qbar), 0);
    assert_eq!(pencil.f.eval(f, &pencil.qbar), 0);
    assert_eq!(count_nodes(&fx.c, &w.vertex).unwrap(), 2);
    let cert = certify_pencil(&pencil, &fx.e, &fx.q, 1).unwrap();
    assert_eq!(cert.base_locus.multiplicity, 16);
    assert_eq!(cert.base_locus.point, pencil.qbar);
    assert_eq!(cert.irreducibility.base_members, 18);
    assert_eq!(cert.irreducibility.extension_members.len(), 10);
    assert!(cert.passed());
    assert!(cert.smooth.draws <= 20);
    assert_eq!(cert.non_isotrivial.nodes, 2);
    assert_eq!(cert.non_isotrivial.geometric_genus, 1);
    assert_ne!(cert.non_isotrivial.smooth_member, (0, 1));
    cert.recheck().unwrap();
    assert!(cert.format().contains("[4] non-isotriviality"));

    let scaled = PlanePencil { k: pencil.k.scale(f, &5), f: pencil.f.scale(f, &11), ..pencil.clone() };
    assert_eq!(certify_pencil(&scaled, &fx.e, &fx.q, 1).unwrap(), cert);

    let same = PlanePencil { f: pencil.k.clone(), ..pencil.clone() };
    assert!(matches!(certify_pencil(&same, &fx.e, &fx.q, 1), Err(Error::CertificateFailure { record: 1, .. })));
    let twice = fx.e.scalar_mul(&fx.q, 2).unwrap();
    assert!(matches!(certify_pencil(&pencil, &fx.e, &twice, 1), Err(Error::CertificateFailure { record: 2, .. })));
}

#[test]
fn perfect_powers() {
    let f = PrimeField::new(17).unwrap();
    let l = MultiPoly::linear(&f, &[3, 5]);
    assert_eq!(linear_power_root(&f, &l.pow(&f, 16).scale(&f, &7)), Some(vec![f.div(&12, &3).unwrap(), 1]));
    let y = MultiPoly::linear(&f, &[0, 1]);
    assert_eq!(linear_power_root(&f, &y.pow(&f, 4)), Some(vec![1, 0]));
    let other = MultiPoly::linear(&f, &[1, 1]);
    assert_eq!(linear_power_root(&f, &l.pow(&f, 3).mul(&f, &other)), None);
}

#[test]
fn pipeline_succeeds_at_the_first_prime() {
    let out = run_pipeline(&EscalationPolicy::default()).unwrap();
    assert!(out.skipped.is_empty());
    assert_eq!(out.golden.p, 17);
    out.golden.verify().unwrap();
    out.certificate.recheck().unwrap();
    assert_eq!(out.witness, fixture().scan.witnesses[0]);
}
