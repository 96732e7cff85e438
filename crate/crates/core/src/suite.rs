//! Named verification scenarios. Each one runs a family of exact checks and
//! returns one claim per check, tagged with a key of the anchor table.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::field::format_point;
use crate::algebra::mpoly::binomial;
use crate::algebra::{ExtensionField, Field, MultiPoly, PrimeField};
use crate::conic::limits::min_vanishing_order;
use crate::conic::{
    classify_vertex, conic_system, conic_systems_equal, cone_equation, dphi_corank, gamma_dim, limit_cone,
    limit_conic_system, vertex_frame, wpower, LimitDirection, VertexTag,
};
use crate::curves::spec::CurveSpec;
use crate::curves::{divisor_on_curve, sample_points, vanishing_order, CurveModel, Order};
use crate::elliptic::{find_point_of_order, singular_quadrics, EPoint, GoldenCertificate, SearchSpace, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::intersection::{
    blowup_product, castelnuovo_bound, count_nodes, count_ramification, expected_nodes, expected_ramification,
    scheme_points, BlowupClass,
};
use crate::pencil::{
    build_pencil, osculating_quartic, pipeline_for, run_pipeline, search_vertices, EscalationPolicy,
    ScanRegion,
};

pub const SCENARIOS: [&str; 16] = [
    "classify",
    "cone",
    "limit-cone",
    "conic-system",
    "limit-system",
    "twisted-cubic-3to1",
    "gamma",
    "dphi-corank",
    "blowup-numbers",
    "node-count",
    "ramification-count",
    "find-torsion",
    "search-vertices",
    "build-pencil",
    "certify-pencil",
    "full-paper-suite",
];

/// Every claim cites one of these keys.
pub const ANCHORS: [(&str, &str); 24] = [
    ("sections", "dim H^0(O_C(4)) = 16 and dim I(4) = 19 on an elliptic normal quartic"),
    ("vertex-witness", "dim W(p)_d ∩ I(d) is 1 on U, 3 on C' and at least 6 on S"),
    ("system-dimensions", "R_{d-1}(p), R_d(p) lose 0, 1 dimensions on U, 1, 3 on C' and at least 2, 6 on S"),
    ("cone", "f_p has degree d on U and d - 1 on C', vanishes on C and is a cone over p"),
    ("limit-cone", "the limit of f_{p_t} along a line is f_p times the plane through the line and the tangent"),
    ("tangent-limit", "along the tangent the residual plane is the osculating plane"),
    ("limit-system-low", "the degree d - 1 limit system is R_{d-1}(p) + <w f_x>, one dimension larger"),
    ("limit-system-top", "the degree d limit system is two dimensions larger than R_d(p), minimum order d - 2"),
    ("cube-roots", "on the twisted cubic R_3 agrees exactly on vertices differing by cube roots of unity"),
    ("gamma", "dim Gamma(p) is at least 1, 2, 3 for (d, g) = (3, 0), (4, 1), (4, 0)"),
    ("dphi-corank", "the differential of the cone map has kernel of dimension 2, 1, 0 for (3, 0), (4, 1), (4, 0)"),
    ("dominance", "the cone map can dominate P(S_d) only if C(d+2, 2) + 1 >= d^2 - g, that is d <= 4"),
    ("blowup-numbers", "M L E = d and M^2 E = 2((d - 1)^2 - g) on the blow-up along C"),
    ("nodes", "projection from a general point has (d - 1)(d - 2)/2 - g nodes"),
    ("ramification", "projection from a general line ramifies at 2g - 2 + 2d points"),
    ("torsion", "q has exact order 16: 16q ~ 16O while 8q is not equivalent to 8O"),
    ("embedding", "|4O| maps C onto the intersection of two quadrics"),
    ("singular-quadrics", "the quadric pencil has four singular members whose vertices form S"),
    ("cone-family", "some quartic cones with vertex in U cut exactly 16q"),
    ("osculating-quartic", "a plane quartic meets the projected cubic in 12 times the image of q"),
    ("base-locus", "the pencil has the single base point q-bar, of multiplicity 16"),
    ("irreducible-members", "every member of the pencil is irreducible"),
    ("smooth-member", "the general member of the pencil is smooth"),
    ("non-isotrivial", "the pencil has a reduced member of geometric genus 1 and a smooth member"),
];

pub fn anchor_statement(key: &str) -> Option<&'static str> {
    ANCHORS.iter().find(|(k, _)| *k == key).map(|(_, s)| *s)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveChoice {
    Elliptic { a: i64, b: i64 },
    TwistedCubic,
    RationalQuartic,
    Spec(CurveSpec),
}

impl CurveChoice {
    /// `elliptic`, `elliptic:a,b`, `twisted-cubic`, `rational-quartic`, or
    /// key-value curve text.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "elliptic" => return Ok(CurveChoice::Elliptic { a: 2, b: 3 }),
            "twisted-cubic" => return Ok(CurveChoice::TwistedCubic),
            "rational-quartic" => return Ok(CurveChoice::RationalQuartic),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("elliptic:") {
            let (a, b) = rest.split_once(',').ok_or_else(|| Error::Parse(format!("bad curve '{t}'")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient in '{t}'")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient in '{t}'")))?;
            return Ok(CurveChoice::Elliptic { a, b });
        }
        Ok(CurveChoice::Spec(CurveSpec::parse_text(t)?.0))
    }

    pub fn build(&self, f: &PrimeField) -> Result<CurveModel<PrimeField>> {
        match self {
            CurveChoice::Elliptic { a, b } => CurveModel::weierstrass(*f, f.from_i64(*a), f.from_i64(*b)),
            CurveChoice::TwistedCubic => CurveModel::twisted_cubic(*f),
            CurveChoice::RationalQuartic => CurveModel::rational_quartic(*f),
            CurveChoice::Spec(s) => s.build(*f),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CurveChoice::Elliptic { a, b } => format!("elliptic:{a},{b}"),
            CurveChoice::TwistedCubic => "twisted-cubic".into(),
            CurveChoice::RationalQuartic => "rational-quartic".into(),
            CurveChoice::Spec(s) => format!("{s:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub prime: u64,
    pub seed: u64,
    pub extension_cap: u32,
    pub truncation: Option<usize>,
    pub scan_region: Option<ScanRegion>,
    pub budget: u64,
    pub certify_smooth: bool,
    pub curve: CurveChoice,
    pub d: Option<u32>,
    pub g: Option<u32>,
    pub golden: Option<GoldenCertificate>,
    /// Random instances per family.
    pub samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            prime: 101,
            seed: 1,
            extension_cap: crate::curves::divisor::DEFAULT_EXTENSION_CAP,
            truncation: None,
            scan_region: None,
            budget: u64::MAX,
            certify_smooth: false,
            curve: CurveChoice::Elliptic { a: 2, b: 3 },
            d: None,
            g: None,
            golden: None,
            samples: 10,
        }
    }
}

impl Settings {
    fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub scenario: String,
    pub name: String,
    pub anchor: String,
    pub inputs: String,
    pub pass: bool,
    pub detail: String,
}

struct Ctx {
    scenario: &'static str,
    claims: Vec<Claim>,
}

impl Ctx {
    fn check(&mut self, name: &str, anchor: &str, inputs: impl Into<String>, pass: bool, detail: impl Into<String>) {
        debug_assert!(anchor_statement(anchor).is_some(), "unknown anchor {anchor}");
        self.claims.push(Claim {
            scenario: self.scenario.into(),
            name: name.into(),
            anchor: anchor.into(),
            inputs: inputs.into(),
            pass,
            detail: detail.into(),
        });
    }
}

fn is_fatal(e: &Error) -> bool {
    matches!(e, Error::BudgetExhausted { .. } | Error::ExtensionExhausted(..))
}

/// Run one scenario. Budget and extension exhaustion are returned as
/// errors; any other error becomes a failed claim.
pub fn run_scenario(name: &str, s: &Settings) -> Result<Vec<Claim>> {
    let Some(&scenario) = SCENARIOS.iter().find(|n| **n == name) else {
        return Err(Error::InvalidInput(format!("unknown scenario '{name}'")));
    };
    if scenario == "full-paper-suite" {
        let mut all = vec![];
        for n in SCENARIOS.iter().filter(|n| !matches!(**n, "full-paper-suite" | "search-vertices" | "build-pencil")) {
            all.extend(run_scenario(n, s)?);
        }
        return Ok(all);
    }
    let mut ctx = Ctx { scenario, claims: vec![] };
    let result = match scenario {
        "classify" => classify(s, &mut ctx),
        "cone" => cone(s, &mut ctx),
        "limit-cone" => limit_cones(s, &mut ctx),
        "conic-system" => dimension_ledger(s, &mut ctx),
        "limit-system" => limit_systems(s, &mut ctx),
        "twisted-cubic-3to1" => cube_roots(&mut ctx),
        "gamma" => gamma(s, &mut ctx),
        "dphi-corank" => dphi(s, &mut ctx),
        "blowup-numbers" => blowup_numbers(s, &mut ctx),
        "node-count" => node_count(s, &mut ctx),
        "ramification-count" => ramification_count(s, &mut ctx),
        "find-torsion" => torsion(s, &mut ctx),
        "search-vertices" => pencil_claims(s, &mut ctx, 1),
        "build-pencil" => pencil_claims(s, &mut ctx, 2),
        "certify-pencil" => pencil_claims(s, &mut ctx, 3),
        _ => unreachable!(),
    };
    match result {
        Ok(()) => Ok(ctx.claims),
        Err(e) if is_fatal(&e) => Err(e),
        Err(e) => {
            ctx.check("scenario completed", "vertex-witness", "", false, e.to_string());
            Ok(ctx.claims)
        }
    }
}

fn random_point<R: Rng>(f: &PrimeField, rng: &mut R) -> Vec<u64> {
    loop {
        let p: Vec<u64> = (0..4).map(|_| rng.gen_range(0..f.p())).collect();
        if p.iter().any(|x| *x != 0) {
            return p;
        }
    }
}

fn random_u<R: Rng>(c: &CurveModel<PrimeField>, rng: &mut R) -> Result<Vec<u64>> {
    for _ in 0..200 {
        let p = random_point(&c.field, rng);
        if !c.contains_point(&p) && classify_vertex(c, &p)?.tag == VertexTag::U {
            return Ok(p);
        }
    }
    Err(Error::SamplingDefect("no vertex in U after 200 draws".into()))
}

fn random_on_curve<R: Rng>(c: &CurveModel<PrimeField>, rng: &mut R) -> Result<Vec<u64>> {
    let pts = sample_points(c, 60);
    if pts.is_empty() {
        return Err(Error::SamplingDefect("no rational points".into()));
    }
    Ok(pts[rng.gen_range(0..pts.len())].clone())
}

fn pt(f: &PrimeField, p: &[u64]) -> String {
    format_point(f, p)
}

fn elliptic(s: &Settings) -> Result<CurveModel<PrimeField>> {
    CurveModel::weierstrass(s.field()?, 2, 3)
}

/// Smoothness of a quadric intersection: Q1, Q2 and the 2x2 minors of
/// their Jacobian have no common zero.
pub fn certify_smooth(c: &CurveModel<PrimeField>) -> Result<bool> {
    let f = &c.field;
    let Some((q1, q2)) = c.quadrics() else {
        return Err(Error::InvalidInput("smoothness certificate is for quadric intersections".into()));
    };
    let d1: Vec<MultiPoly<u64>> = (0..4).map(|i| q1.derivative(f, i)).collect();
    let d2: Vec<MultiPoly<u64>> = (0..4).map(|i| q2.derivative(f, i)).collect();
    let mut gens = vec![q1.clone(), q2.clone()];
    for i in 0..4 {
        for j in i + 1..4 {
            let m = d1[i].mul(f, &d2[j]).sub(f, &d1[j].mul(f, &d2[i]));
            if !m.is_zero() {
                gens.push(m);
            }
        }
    }
    Ok(scheme_points(f, &gens, 0x5300)?.0 == 0)
}

fn classify(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    let c = s.curve.build(&f)?;
    let d = c.degree;
    let mut rng = s.rng(1);
    let inputs = format!("{} over {}", s.curve.describe(), f.name());
    for _ in 0..s.samples.min(3) {
        let u = random_u(&c, &mut rng)?;
        let v = classify_vertex(&c, &u)?;
        ctx.check("general vertex is in U with witness 1", "vertex-witness", format!("{inputs}, p = {}", pt(&f, &u)), v.witness == 1, format!("witness {}", v.witness));
        let q = random_on_curve(&c, &mut rng)?;
        let v = classify_vertex(&c, &q)?;
        ctx.check(
            "curve point is in C' with witness 3",
            "vertex-witness",
            format!("{inputs}, p = {}", pt(&f, &q)),
            v.tag == VertexTag::Cprime && (d != 4 || v.witness == 3),
            format!("{:?} witness {}", v.tag, v.witness),
        );
    }
    let diag = CurveModel::diagonal_quartic(f, [0, 1, 2, 3])?;
    let v = classify_vertex(&diag, &[1, 0, 0, 0])?;
    ctx.check(
        "vertex of a singular quadric is in S with witness exactly 6",
        "vertex-witness",
        format!("diagonal quartic 0,1,2,3 over {}, p = (1 : 0 : 0 : 0)", f.name()),
        v.tag == VertexTag::S && v.witness == 6,
        format!("{:?} witness {}", v.tag, v.witness),
    );
    if s.certify_smooth && !c.is_parametric() {
        let ok = certify_smooth(&c)?;
        ctx.check("curve is smooth (singular scheme empty)", "embedding", inputs, ok, if ok { "empty" } else { "nonempty" });
    }
    Ok(())
}

fn is_cone_over(f: &PrimeField, g: &MultiPoly<u64>, p: &[u64]) -> bool {
    g.change_frame(f, &vertex_frame(f, p)).free_of(3)
}

fn cone(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    let c = s.curve.build(&f)?;
    let d = c.degree;
    let mut rng = s.rng(2);
    for (label, p, deg) in [("U", random_u(&c, &mut rng)?, d), ("C'", random_on_curve(&c, &mut rng)?, d - 1)] {
        let fp = cone_equation(&c, &p)?;
        let ok = fp.degree() == deg && c.in_ideal(&fp) && is_cone_over(&f, &fp, &p);
        ctx.check(
            &format!("cone at a vertex in {label}"),
            "cone",
            format!("{} over {}, p = {}", s.curve.describe(), f.name(), pt(&f, &p)),
            ok,
            fp.format(&f),
        );
    }
    let q = random_on_curve(&c, &mut rng)?;
    let u = random_u(&c, &mut rng)?;
    let fp = cone_equation(&c, &u)?;
    let order = vanishing_order(&c, &fp, &q, s.truncation)?;
    ctx.check(
        "the cone vanishes along the local branch at a curve point",
        "cone",
        format!("{} over {}, p = {}, q = {}", s.curve.describe(), f.name(), pt(&f, &u), pt(&f, &q)),
        order == Order::Infinite,
        format!("order {order}"),
    );
    Ok(())
}

fn dimension_ledger(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let c = elliptic(s)?;
    let f = c.field;
    let inputs = format!("y^2 = x^3 + 2x + 3 over {}", f.name());
    let s4 = c.sections(4).dim();
    let i4 = c.ideal_piece(4).dim();
    ctx.check("dim S_4 = 16 and dim I(4) = 19", "sections", inputs.clone(), s4 == 16 && i4 == 19, format!("{s4}, {i4}"));
    let mut rng = s.rng(3);
    let u = random_u(&c, &mut rng)?;
    let q = random_on_curve(&c, &mut rng)?;
    let du = (conic_system(&c, &u, 3)?.dim(), conic_system(&c, &u, 4)?.dim());
    ctx.check("U: dim R_3 = 10, dim R_4 = 14", "system-dimensions", format!("{inputs}, p = {}", pt(&f, &u)), du == (10, 14), format!("{du:?}"));
    let dq = (conic_system(&c, &q, 3)?.dim(), conic_system(&c, &q, 4)?.dim());
    ctx.check("C': dim R_3 = 9, dim R_4 = 12", "system-dimensions", format!("{inputs}, p = {}", pt(&f, &q)), dq == (9, 12), format!("{dq:?}"));
    let diag = CurveModel::diagonal_quartic(f, [0, 1, 2, 3])?;
    let o = [1, 0, 0, 0];
    let ds = (conic_system(&diag, &o, 3)?.dim(), conic_system(&diag, &o, 4)?.dim());
    ctx.check(
        "S: dim R_3 <= 8, dim R_4 <= 9",
        "system-dimensions",
        format!("diagonal quartic over {}, p = (1 : 0 : 0 : 0)", f.name()),
        ds.0 + 2 <= binomial(5, 2) as usize && ds.1 + 6 <= binomial(6, 2) as usize,
        format!("{ds:?}"),
    );
    let wit = (classify_vertex(&c, &u)?.witness, classify_vertex(&c, &q)?.witness, classify_vertex(&diag, &o)?.witness);
    ctx.check("witnesses 1 / 3 / 6", "vertex-witness", inputs, wit == (1, 3, 6), format!("{wit:?}"));
    Ok(())
}

fn limit_cones(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    for (name, c) in [("elliptic quartic", elliptic(s)?), ("twisted cubic", CurveModel::twisted_cubic(f)?)] {
        let mut rng = s.rng(4);
        let (mut good, mut tried) = (0, 0);
        let mut bad = vec![];
        while good < s.samples && tried < 4 * s.samples {
            tried += 1;
            let q = random_on_curve(&c, &mut rng)?;
            let r = random_point(&f, &mut rng);
            let Ok(dir) = LimitDirection::new(&c, &q, Some(&r)) else { continue };
            let lc = match limit_cone(&c, &dir) {
                Ok(lc) => lc,
                Err(Error::InvalidDirection(_)) => continue,
                Err(e) => return Err(e),
            };
            let exact = lc.base.pow(&f, lc.power).mul(&f, &lc.plane).normalize(&f) == lc.cone;
            if lc.plane_matches && exact {
                good += 1;
            } else {
                bad.push(format!("{} via {}", pt(&f, &q), pt(&f, &r)));
            }
        }
        ctx.check(
            &format!("limit cone = f_p * plane on {} lines", s.samples),
            "limit-cone",
            format!("{name} over {}", f.name()),
            good == s.samples && bad.is_empty(),
            format!("{good} verified, failures: {bad:?}"),
        );
        let q = random_on_curve(&c, &mut rng)?;
        let dir = LimitDirection::new(&c, &q, None)?;
        let lc = limit_cone(&c, &dir)?;
        ctx.check(
            "tangent limit has the osculating plane",
            "tangent-limit",
            format!("{name} over {}, p = {}", f.name(), pt(&f, &q)),
            lc.plane_matches && lc.cone.div_exact(&f, &lc.plane).is_some(),
            lc.plane.format(&f),
        );
    }
    Ok(())
}

fn limit_systems(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    for (name, c) in [("elliptic quartic", elliptic(s)?), ("twisted cubic", CurveModel::twisted_cubic(f)?)] {
        let d = c.degree;
        let mut rng = s.rng(5);
        let (mut good, mut tried) = (0, 0);
        let mut failures = vec![];
        while good < s.samples && tried < 4 * s.samples {
            tried += 1;
            let q = random_on_curve(&c, &mut rng)?;
            let r = random_point(&f, &mut rng);
            let Ok(dir) = LimitDirection::new(&c, &q, Some(&r)) else { continue };
            let cf = dir.adapted_curve(&c)?;
            let o = [0, 0, 0, 1];
            let low = match limit_conic_system(&c, &dir, d - 1) {
                Ok(sys) if sys.flags.as_ref().is_some_and(|fl| fl.closed_form_applies()) => sys,
                Ok(_) | Err(Error::InvalidDirection(_)) => continue,
                Err(e) => return Err(e),
            };
            let top = limit_conic_system(&c, &dir, d)?;
            let r_low = conic_system(&cf, &o, d - 1)?.basis;
            let r_top = conic_system(&cf, &o, d)?.basis;
            let ok_low = low.dim() == r_low.dim() + 1 && r_low.sum(&f, &low.basis)? == low.basis && low.extras.len() == 1;
            let ok_top = top.dim() == r_top.dim() + 2 && r_top.sum(&f, &top.basis)? == top.basis;
            let order = min_vanishing_order(&c, &dir, &top)?;
            if ok_low && ok_top && order == Order::Finite(d as usize - 2) {
                good += 1;
            } else {
                failures.push(format!("{} via {}: order {order}", pt(&f, &q), pt(&f, &r)));
            }
        }
        ctx.check(
            "limit systems: gap 1 in degree d - 1, gap 2 and order d - 2 in degree d, flat = closed form",
            "limit-system-top",
            format!("{name} over {}, {} lines", f.name(), s.samples),
            good == s.samples && failures.is_empty(),
            format!("{good} verified, failures: {failures:?}"),
        );
    }
    Ok(())
}

fn cube_roots(ctx: &mut Ctx) -> Result<()> {
    let f = PrimeField::new(7)?;
    let c = CurveModel::twisted_cubic(f)?;
    let fibre: Vec<[u64; 4]> = [1, 2, 4].iter().map(|&a| [a, 0, 0, 6]).collect();
    let agree = conic_systems_equal(&c, &fibre[0], &fibre[1], 3)? && conic_systems_equal(&c, &fibre[0], &fibre[2], 3)?;
    let differ = !conic_systems_equal(&c, &fibre[0], &[3, 0, 0, 6], 3)?;
    ctx.check("R_3 agrees on (a : 0 : 0 : -1), a^3 = 1", "cube-roots", "twisted cubic over F_7", agree, "");
    ctx.check("R_3 differs off the cube roots", "cube-roots", "twisted cubic over F_7, a = 3", differ, "");

    let k = ExtensionField::eisenstein();
    let c = CurveModel::twisted_cubic(k.clone())?;
    let w = k.generator();
    let m1 = k.from_i64(-1);
    let v = |a: Vec<num_rational::BigRational>| vec![a, k.zero(), k.zero(), m1.clone()];
    let (p0, p1, p2) = (v(k.one()), v(w.clone()), v(k.mul(&w, &w)));
    let agree = conic_systems_equal(&c, &p0, &p1, 3)? && conic_systems_equal(&c, &p0, &p2, 3)?;
    let differ = !conic_systems_equal(&c, &p0, &v(k.from_i64(2)), 3)?;
    ctx.check("R_3 agrees on (a : 0 : 0 : -1), a in {1, w, w^2}", "cube-roots", "twisted cubic over Q(w)", agree, "");
    ctx.check("R_3 differs off the cube roots", "cube-roots", "twisted cubic over Q(w), a = 2", differ, "");
    Ok(())
}

fn test_curves(f: &PrimeField) -> Result<Vec<(&'static str, CurveModel<PrimeField>, usize, usize)>> {
    Ok(vec![
        ("twisted cubic", CurveModel::twisted_cubic(*f)?, 1, 2),
        ("elliptic quartic", CurveModel::weierstrass(*f, 2, 3)?, 2, 1),
        ("rational quartic", CurveModel::rational_quartic(*f)?, 3, 0),
    ])
}

fn gamma(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    for (name, c, bound, _) in test_curves(&f)? {
        let mut rng = s.rng(6);
        let mut dims = vec![];
        for _ in 0..s.samples {
            let u = random_u(&c, &mut rng)?;
            dims.push(gamma_dim(&c, &u)?);
        }
        let pass = if c.degree == 3 { dims.iter().all(|&g| g >= bound) } else { dims.iter().any(|&g| g >= bound) };
        ctx.check(&format!("dim Gamma >= {bound}"), "gamma", format!("{name} over {}", f.name()), pass, format!("{dims:?}"));
    }
    Ok(())
}

fn dphi(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    for (name, c, _, corank) in test_curves(&f)? {
        let mut rng = s.rng(7);
        let mut seen = vec![];
        for _ in 0..s.samples {
            let u = random_u(&c, &mut rng)?;
            let gens = wpower(&f, &u, c.degree);
            let g = gens.iter().fold(MultiPoly::zero(4, c.degree), |acc, h| acc.add(&f, &h.scale(&f, &rng.gen_range(0..f.p()))));
            match dphi_corank(&c, &u, &g) {
                Ok(n) => seen.push(n),
                Err(Error::ZeroClass) => continue,
                Err(e) => return Err(e),
            }
        }
        ctx.check(
            &format!("corank {corank} attained"),
            "dphi-corank",
            format!("{name} over {}", f.name()),
            seen.contains(&corank),
            format!("{seen:?}"),
        );
    }
    for d in 3..=8u32 {
        for g in 0..=castelnuovo_bound(d) {
            let source = binomial(d as u64 + 2, 2) + 1;
            let target = (d * d - g) as u64;
            ctx.check(
                "dimension count allows dominance exactly when d <= 4",
                "dominance",
                format!("d = {d}, g = {g}"),
                (source >= target) == (d <= 4),
                format!("{source} vs {target}"),
            );
        }
    }
    Ok(())
}

fn blowup_numbers(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let cases: Vec<(u32, u32)> = match (s.d, s.g) {
        (Some(d), Some(g)) => vec![(d, g)],
        (Some(d), None) => (0..=castelnuovo_bound(d)).map(|g| (d, g)).collect(),
        _ => (3..=8).flat_map(|d| (0..=castelnuovo_bound(d)).map(move |g| (d, g))).collect(),
    };
    for (d, g) in cases {
        let (l, e, m) = (BlowupClass::l(), BlowupClass::e(), BlowupClass::m(d));
        let mle = blowup_product(&m, &l, &e, d, g)?;
        let mme = blowup_product(&m, &m, &e, d, g)?;
        let want = 2 * ((d as i64 - 1).pow(2) - g as i64);
        ctx.check(
            "M L E = d, M^2 E = 2((d - 1)^2 - g)",
            "blowup-numbers",
            format!("d = {d}, g = {g}"),
            mle == d as i64 && mme == want,
            format!("M L E = {mle}, M^2 E = {mme}"),
        );
    }
    Ok(())
}

const GENERIC_SAMPLES: usize = 5;

fn node_count(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    for (name, c) in [("elliptic quartic", elliptic(s)?), ("twisted cubic", CurveModel::twisted_cubic(f)?)] {
        let mut rng = s.rng(8);
        let want = expected_nodes(c.degree, c.genus);
        let mut counts = vec![];
        let mut tried = 0;
        while counts.len() < GENERIC_SAMPLES && tried < 30 {
            tried += 1;
            let u = random_u(&c, &mut rng)?;
            match count_nodes(&c, &u) {
                Ok(n) => counts.push(n as i64),
                Err(Error::GenericityFailure(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        ctx.check(
            &format!("{want} nodes on {GENERIC_SAMPLES} samples"),
            "nodes",
            format!("{name} over {}", f.name()),
            counts.len() == GENERIC_SAMPLES && counts.iter().all(|&n| n == want),
            format!("{counts:?} after {tried} draws"),
        );
    }
    Ok(())
}

fn ramification_count(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let f = s.field()?;
    for (name, c) in [("elliptic quartic", elliptic(s)?), ("twisted cubic", CurveModel::twisted_cubic(f)?)] {
        let mut rng = s.rng(9);
        let want = expected_ramification(c.degree, c.genus);
        let mut counts = vec![];
        let mut tried = 0;
        while counts.len() < GENERIC_SAMPLES && tried < 30 {
            tried += 1;
            let (r, t) = (random_point(&f, &mut rng), random_point(&f, &mut rng));
            match count_ramification(&c, &r, &t) {
                Ok(n) => counts.push(n as i64),
                Err(Error::GenericityFailure(_)) | Err(Error::InvalidInput(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        ctx.check(
            &format!("{want} ramification points on {GENERIC_SAMPLES} samples"),
            "ramification",
            format!("{name} over {}", f.name()),
            counts.len() == GENERIC_SAMPLES && counts.iter().all(|&n| n == want),
            format!("{counts:?} after {tried} draws"),
        );
    }
    Ok(())
}

/// The golden witness from the settings, or the first one in the search.
pub fn golden_witness(s: &Settings) -> Result<(WeierstrassCurve, EPoint, GoldenCertificate)> {
    match &s.golden {
        Some(g) => {
            let (e, q) = g.verify()?;
            Ok((e, q, g.clone()))
        }
        None => {
            let primes: Vec<u64> = (17..=1021).filter(|&p| crate::algebra::prime::is_prime(p)).collect();
            let (e, q) = find_point_of_order(&SearchSpace::new(primes), 16, s.budget)?;
            let g = GoldenCertificate::from_witness(&e, &q)?;
            Ok((e, q, g))
        }
    }
}

fn torsion(s: &Settings, ctx: &mut Ctx) -> Result<()> {
    let (e, q, g) = golden_witness(s)?;
    let inputs = format!("{} q = {}", e.describe(), crate::elliptic::format_point(&q));
    let (n16, n8) = e.lin_equiv_cert(&q, 16)?;
    ctx.check("16q = O and 8q != O", "torsion", inputs.clone(), n16 && !n8, format!("witness p={} a={} b={} q=({}, {})", g.p, g.a, g.b, g.q.0, g.q.1));
    ctx.check("order confirmed by enumeration", "torsion", inputs.clone(), g.verify().is_ok(), format!("#E = {}", g.group_order));
    let c = e.embed_by_4o()?;
    let (q1, q2) = c.quadrics().unwrap();
    let mut rng = s.rng(10);
    let ok = (0..50).all(|_| {
        let u = e.embed(&e.random_point(&mut rng));
        q1.eval(&c.field, &u) == 0 && q2.eval(&c.field, &u) == 0
    });
    ctx.check("50 embedded points satisfy both quadrics", "embedding", inputs.clone(), ok, "");
    let rep = singular_quadrics(&e)?;
    let all_s = rep.members.iter().all(|m| m.class.tag == VertexTag::S);
    ctx.check(
        "four singular quadrics with vertices in S",
        "singular-quadrics",
        inputs,
        rep.squarefree && rep.members.len() == 4 && all_s,
        format!("{} members over {}", rep.members.len(), rep.field.name()),
    );
    Ok(())
}

fn region_for(s: &Settings, p: u64) -> ScanRegion {
    s.scan_region.clone().unwrap_or(if p <= EscalationPolicy::default().full_scan_limit {
        ScanRegion::Full
    } else {
        EscalationPolicy::default().fallback_region
    })
}

/// stage 1: scan; 2: scan and build; 3: scan, build and certify.
fn pencil_claims(s: &Settings, ctx: &mut Ctx, stage: u8) -> Result<()> {
    let (e, q, scan, witness, pencil, cert) = match &s.golden {
        Some(_) => {
            let (e, q, _) = golden_witness(s)?;
            let region = region_for(s, e.p());
            if stage == 1 {
                let c = e.embed_by_4o()?;
                let scan = search_vertices(&c, &e.embed(&q), &region, 0, s.budget)?;
                return scan_claims(s, ctx, &e, &q, &scan);
            }
            let (scan, w, pencil, cert) = pipeline_for(&e, &q, &region, s.budget, s.seed)?;
            (e, q, scan, w, pencil, cert)
        }
        None => {
            let policy = EscalationPolicy {
                budget: s.budget,
                seed: s.seed,
                fallback_region: s.scan_region.clone().unwrap_or(EscalationPolicy::default().fallback_region),
                ..EscalationPolicy::default()
            };
            let out = run_pipeline(&policy)?;
            (out.curve, out.q, out.scan, out.witness, out.pencil, out.certificate)
        }
    };
    scan_claims(s, ctx, &e, &q, &scan)?;
    if stage == 1 {
        return Ok(());
    }
    let c = e.embed_by_4o()?;
    let f = c.field;
    let qv = e.embed(&q);
    let inputs = format!("{} vertex {}", e.describe(), pt(&f, &witness.vertex));
    let rebuilt = build_pencil(&c, &witness, &qv)?;
    ctx.check(
        "both generators vanish at the image of q",
        "base-locus",
        inputs.clone(),
        rebuilt == pencil && pencil.k.eval(&f, &pencil.qbar) == 0 && pencil.f.eval(&f, &pencil.qbar) == 0,
        pt(&f, &pencil.qbar),
    );
    let nodes = count_nodes(&c, &witness.vertex)?;
    ctx.check("f_p has exactly 2 nodes", "nodes", inputs.clone(), nodes == 2, format!("{nodes}"));
    let osc = osculating_quartic(&c, &qv)?;
    ctx.check(
        "osculating quartic: contact 12, cone cuts 16q, unique modulo f_q",
        "osculating-quartic",
        format!("{} q = {}", e.describe(), pt(&f, &qv)),
        osc.order_on_projection == 12 && osc.unique && osc.divisor.concentrated_at() == Some((qv.clone(), 16)),
        osc.plane.format_with(&f, &["x", "y", "z"]),
    );
    if stage == 2 {
        return Ok(());
    }
    let b = &cert.base_locus;
    ctx.check(
        "resultants are 16th powers of linear forms, single common zero",
        "base-locus",
        inputs.clone(),
        b.multiplicity == 16 && b.point == cert.qbar,
        format!("point {} multiplicity {}", pt(&f, &b.point), b.multiplicity),
    );
    let i = &cert.irreducibility;
    ctx.check(
        "torsion excludes line + cubic and conic + conic splittings",
        "irreducible-members",
        inputs.clone(),
        i.torsion == (true, false),
        "",
    );
    ctx.check(
        "no line or conic component in any member over F_p or the 10 extension members",
        "irreducible-members",
        inputs.clone(),
        !i.manual_review && i.base_members as u64 == f.p() + 1 && i.extension_members.len() == 10,
        format!("{} + {} members, split: {:?}", i.base_members, i.extension_members.len(), i.split),
    );
    ctx.check(
        "an explicit member has empty Jacobian zero set",
        "smooth-member",
        inputs.clone(),
        cert.smooth.draws <= 20,
        format!("member ({} : {}) after {} draws", cert.smooth.member.0, cert.smooth.member.1, cert.smooth.draws),
    );
    let n = &cert.non_isotrivial;
    ctx.check(
        "f_p is reduced with 2 nodes and differs from the smooth member",
        "non-isotrivial",
        inputs.clone(),
        n.nodes == 2 && n.geometric_genus == 1 && n.smooth_member != (0, 1),
        format!("{} nodes, genus {}", n.nodes, n.geometric_genus),
    );
    ctx.check("certificate rechecks", "base-locus", inputs, cert.recheck().is_ok(), "");
    Ok(())
}

fn scan_claims(s: &Settings, ctx: &mut Ctx, e: &WeierstrassCurve, q: &EPoint, scan: &crate::pencil::ScanReport) -> Result<()> {
    let c = e.embed_by_4o()?;
    let qv = e.embed(q);
    let inputs = format!("{} q = {}, region {}", e.describe(), crate::elliptic::format_point(q), scan.region.describe());
    ctx.check(
        "the scan finds a vertex with a second cone through 16q",
        "cone-family",
        inputs.clone(),
        !scan.witnesses.is_empty(),
        format!("{} witnesses among {} vertices ({} rank hits)", scan.witnesses.len(), scan.examined, scan.rank_hits),
    );
    let mut ok = true;
    for w in &scan.witnesses {
        let div = divisor_on_curve(&c, &w.g, s.extension_cap)?;
        ok &= div.concentrated_at() == Some((qv.clone(), 16)) && classify_vertex(&c, &w.vertex)?.tag == VertexTag::U;
    }
    ctx.check("every witness is in U and cuts exactly 16q", "cone-family", inputs, ok, "");
    Ok(())
}

/// A scenario report. `body` is canonical and carries no timestamp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub checksum: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Serialize)]
struct Summary<'a> {
    scenario: &'a str,
    passed: usize,
    failed: usize,
    checksum: &'a str,
    claims: &'a [Claim],
}

/// Canonical text for a list of claims; settings are echoed in key order.
pub fn emit_report(scenario: &str, settings: &[(String, String)], claims: &[Claim]) -> Report {
    use sha2::{Digest, Sha256};
    use std::fmt::Write;
    let mut body = String::new();
    writeln!(body, "scenario = {scenario}").unwrap();
    let mut echo = settings.to_vec();
    echo.sort();
    for (k, v) in &echo {
        writeln!(body, "setting.{k} = {v}").unwrap();
    }
    for (i, c) in claims.iter().enumerate() {
        let status = if c.pass { "PASS" } else { "FAIL" };
        writeln!(body, "claim.{} = {status} {} :: {}", i + 1, c.scenario, c.name).unwrap();
        writeln!(body, "claim.{}.anchor = {} :: {}", i + 1, c.anchor, anchor_statement(&c.anchor).unwrap_or("")).unwrap();
        writeln!(body, "claim.{}.inputs = {}", i + 1, c.inputs).unwrap();
        if !c.detail.is_empty() {
            writeln!(body, "claim.{}.detail = {}", i + 1, c.detail).unwrap();
        }
    }
    let passed = claims.iter().filter(|c| c.pass).count();
    writeln!(body, "passed = {passed}").unwrap();
    writeln!(body, "failed = {}", claims.len() - passed).unwrap();
    let checksum = format!("{:x}", Sha256::digest(body.as_bytes()));
    Report { body, checksum, passed, failed: claims.len() - passed }
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Body, checksum line and a trailer with the given Unix time.
    pub fn render(&self, timestamp: u64) -> String {
        format!("{}checksum.sha256 = {}
# generated = {timestamp}
", self.body, self.checksum)
    }

    pub fn summary_json(&self, scenario: &str, claims: &[Claim]) -> String {
        let s = Summary { scenario, passed: self.passed, failed: self.failed, checksum: &self.checksum, claims };
        serde_json::to_string_pretty(&s).expect("claims serialize")
    }
}

/// The formatted pencil certificate for the configured witness.
pub fn certificate_bundle(s: &Settings) -> Result<String> {
    let (e, q, _) = golden_witness(s)?;
    let region = region_for(s, e.p());
    let (_, _, _, cert) = pipeline_for(&e, &q, &region, s.budget, s.seed)?;
    Ok(cert.format())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_are_unique() {
        let mut keys: Vec<&str> = ANCHORS.iter().map(|(k, _)| *k).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), ANCHORS.len());
    }

    #[test]
    fn unknown_scenario() {
        assert!(matches!(run_scenario("nope", &Settings::default()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn blowup_scenario_passes() {
        let s = Settings { d: Some(4), g: Some(1), ..Settings::default() };
        let claims = run_scenario("blowup-numbers", &s).unwrap();
        assert_eq!(claims.len(), 1);
        assert!(claims[0].pass);
    }

    #[test]
    fn curve_choices() {
        assert_eq!(CurveChoice::parse("elliptic:1,5").unwrap(), CurveChoice::Elliptic { a: 1, b: 5 });
        assert_eq!(CurveChoice::parse("twisted-cubic").unwrap(), CurveChoice::TwistedCubic);
        let spec = CurveChoice::parse("variant = quadrics\nq1 = x^2 - y*w\nq2 = z^2 - x*w").unwrap();
        assert!(matches!(spec, CurveChoice::Spec(_)));
    }

    #[test]
    fn empty_report() {
        let r = emit_report("classify", &[], &[]);
        assert!(r.all_passed());
        assert_eq!(r.body, "scenario = classify\npassed = 0\nfailed = 0\n");
        assert!(r.render(7).ends_with("# generated = 7\n"));
    }

    #[test]
    fn reports_are_deterministic() {
        let s = Settings { samples: 2, ..Settings::default() };
        let a = emit_report("cone", &[], &run_scenario("cone", &s).unwrap());
        let b = emit_report("cone", &[], &run_scenario("cone", &s).unwrap());
        assert_eq!(a, b);
        assert!(a.all_passed(), "{}", a.body);
    }

    #[test]
    fn smoothness_certificate() {
        let c = CurveModel::weierstrass(PrimeField::new(101).unwrap(), 2, 3).unwrap();
        assert!(certify_smooth(&c).unwrap());
    }
}
