//! The four records certifying a pencil of plane quartics: one base point,
//! irreducible members, a smooth member, and a nodal genus-one member.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ext::{embed_elem, embedding};
use crate::algebra::field::{format_point, normalize_point};
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::resultant::{dehomogenize_binary, form_resultant, to_binary};
use crate::algebra::upoly;
use crate::algebra::{Field, FiniteField, GaloisField, MultiPoly, PrimeField};
use crate::elliptic::{EPoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::intersection::scheme_points;

use super::build::PlanePencil;
use super::irreducible::{find_component, Splitting};

const BASE_ATTEMPTS: usize = 8;
const SMOOTH_DRAWS: usize = 20;
pub const EXTENSION_MEMBERS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct BaseLocusRecord {
    /// Columns of the linear change applied before eliminating.
    pub change: Vec<Vec<u64>>,
    /// Roots of Res_z and Res_y, as points of the (x, y) and (x, z) lines.
    pub roots: [Vec<u64>; 2],
    pub multiplicity: u32,
    pub point: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrreducibilityRecord {
    /// (16 q = O, 8 q = O).
    pub torsion: (bool, bool),
    pub base_members: usize,
    /// Parameters t of the members k + t f over F_{p^2}, by index.
    pub extension_members: Vec<u128>,
    /// Members with a component of degree at most 2.
    pub split: Vec<(String, Splitting)>,
    pub manual_review: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothRecord {
    /// The member lambda k + mu f.
    pub member: (u64, u64),
    pub draws: usize,
    pub change: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonIsotrivialRecord {
    /// Singular points of f, all reduced (ordinary nodes).
    pub nodes: usize,
    pub geometric_genus: i64,
    pub smooth_member: (u64, u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PencilCertificate {
    pub field: PrimeField,
    pub k: MultiPoly<u64>,
    pub f: MultiPoly<u64>,
    pub qbar: Vec<u64>,
    pub base_locus: BaseLocusRecord,
    pub irreducibility: IrreducibilityRecord,
    pub smooth: SmoothRecord,
    pub non_isotrivial: NonIsotrivialRecord,
}

fn fail(record: u8, detail: impl Into<String>) -> Error {
    Error::CertificateFailure { record, detail: detail.into() }
}

fn random_change<R: Rng>(f: &PrimeField, rng: &mut R) -> Vec<Vec<u64>> {
    loop {
        let cols: Vec<Vec<u64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..f.p())).collect()).collect();
        if matrix::rank(f, &cols, 3) == 3 {
            return cols;
        }
    }
}

fn apply(f: &PrimeField, change: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    (0..3).map(|i| (0..3).fold(0, |acc, j| f.add(&acc, &f.mul(&change[j][i], &v[j])))).collect()
}

/// The point (a : b) with B = c (b x - a y)^n, for a binary form B of degree n.
pub fn linear_power_root(f: &PrimeField, b: &MultiPoly<u64>) -> Option<Vec<u64>> {
    let n = b.degree();
    if b.is_zero() || (n as u64).is_multiple_of(f.p()) {
        return None;
    }
    let (u, inf) = dehomogenize_binary(f, b);
    if inf == n {
        return Some(vec![1, 0]);
    }
    if inf != 0 {
        return None;
    }
    let n = n as usize;
    let r = f.neg(&f.div(&u[n - 1], &f.mul(&f.from_i64(n as i64), &u[n])).unwrap());
    let expected = upoly::scale(f, &upoly::pow(f, &[f.neg(&r), 1], n as u64), &u[n]);
    (expected == u).then(|| vec![r, 1])
}

fn base_locus_with(f: &PrimeField, k: &MultiPoly<u64>, g: &MultiPoly<u64>, change: &[Vec<u64>]) -> Result<Option<BaseLocusRecord>> {
    let (kc, gc) = (k.change_frame(f, change), g.change_frame(f, change));
    let rz = form_resultant(f, &kc, &gc, 2)?;
    let ry = form_resultant(f, &kc, &gc, 1)?;
    if rz.is_zero() || ry.is_zero() {
        return Err(fail(1, "the generators share a component"));
    }
    let n = rz.degree();
    let (Some(a), Some(b)) = (linear_power_root(f, &to_binary(f, &rz, [0, 1])), linear_power_root(f, &to_binary(f, &ry, [0, 2]))) else {
        return Err(fail(1, "a resultant is not a power of a linear form"));
    };
    if a[0] == 0 || b[0] == 0 {
        return Ok(None);
    }
    let local = vec![1, f.div(&a[1], &a[0]).unwrap(), f.div(&b[1], &b[0]).unwrap()];
    if kc.eval(f, &local) != 0 || gc.eval(f, &local) != 0 {
        return Err(fail(1, "the resultant roots do not lift to a common zero"));
    }
    Ok(Some(BaseLocusRecord {
        change: change.to_vec(),
        roots: [a, b],
        multiplicity: n,
        point: normalize_point(f, &apply(f, change, &local)),
    }))
}

fn base_locus<R: Rng>(f: &PrimeField, k: &MultiPoly<u64>, g: &MultiPoly<u64>, rng: &mut R) -> Result<BaseLocusRecord> {
    for _ in 0..BASE_ATTEMPTS {
        if let Some(rec) = base_locus_with(f, k, g, &random_change(f, rng))? {
            return Ok(rec);
        }
    }
    Err(fail(1, "no admissible coordinate change"))
}

fn member(f: &PrimeField, k: &MultiPoly<u64>, g: &MultiPoly<u64>, lm: (u64, u64)) -> MultiPoly<u64> {
    k.scale(f, &lm.0).add(f, &g.scale(f, &lm.1))
}

/// The projective Jacobian zero set is empty: after the change, Res_z of
/// (G_x, G_y) and of (G_x, G_z) are coprime and (0 : 0 : 1) is not singular.
pub fn jacobian_empty(f: &PrimeField, g: &MultiPoly<u64>, change: &[Vec<u64>]) -> Result<bool> {
    let gc = g.change_frame(f, change);
    let d: Vec<MultiPoly<u64>> = (0..3).map(|i| gc.derivative(f, i)).collect();
    if d.iter().any(|x| x.is_zero()) {
        return Ok(false);
    }
    if d.iter().all(|x| x.eval(f, &[0, 0, 1]) == 0) {
        return Ok(false);
    }
    let r1 = to_binary(f, &form_resultant(f, &d[0], &d[1], 2)?, [0, 1]);
    let r2 = to_binary(f, &form_resultant(f, &d[0], &d[2], 2)?, [0, 1]);
    if r1.is_zero() || r2.is_zero() {
        return Ok(false);
    }
    let (u1, i1) = dehomogenize_binary(f, &r1);
    let (u2, i2) = dehomogenize_binary(f, &r2);
    Ok(i1.min(i2) == 0 && upoly::degree(&upoly::gcd(f, &u1, &u2)) == Some(0))
}

fn smooth_member<R: Rng>(f: &PrimeField, k: &MultiPoly<u64>, g: &MultiPoly<u64>, rng: &mut R) -> Result<SmoothRecord> {
    for draw in 1..=SMOOTH_DRAWS {
        let lm = (1, rng.gen_range(0..f.p()));
        let m = member(f, k, g, lm);
        for _ in 0..3 {
            let change = random_change(f, rng);
            if jacobian_empty(f, &m, &change)? {
                return Ok(SmoothRecord { member: lm, draws: draw, change });
            }
        }
    }
    Err(fail(3, format!("no smooth member in {SMOOTH_DRAWS} draws")))
}

fn irreducibility<R: Rng>(
    f: &PrimeField,
    k: &MultiPoly<u64>,
    g: &MultiPoly<u64>,
    torsion: (bool, bool),
    rng: &mut R,
) -> Result<IrreducibilityRecord> {
    if torsion != (true, false) {
        return Err(fail(2, "q is not of exact order 16"));
    }
    let p = f.p();
    let mut split = vec![];
    let l4 = GaloisField::galois(p, 4)?;
    let base4: Vec<Vec<u64>> = (0..p).map(|i| l4.embed(&i)).collect();
    let members: Vec<(u64, u64)> = std::iter::once((0, 1)).chain((0..p).map(|t| (1, t))).collect();
    for lm in &members {
        let m = member(f, k, g, *lm).map_coeffs(&l4, |c| l4.embed(c));
        if let Some(s) = find_component(&l4, &m, &base4, rng)? {
            split.push((format!("({} : {})", lm.0, lm.1), s));
        }
    }
    let k2 = GaloisField::galois(p, 2)?;
    let l8 = GaloisField::galois(p, 8)?;
    let img = embedding(&k2, &l8)?;
    let base8: Vec<Vec<u64>> = (0..p).map(|i| l8.embed(&i)).collect();
    let (k8, g8) = (k.map_coeffs(&l8, |c| l8.embed(c)), g.map_coeffs(&l8, |c| l8.embed(c)));
    let ext: Vec<u128> = (0..k2.order()).filter(|i| k2.as_base(&k2.element(*i)).is_none()).take(EXTENSION_MEMBERS).collect();
    for idx in &ext {
        let t = embed_elem(&l8, &img, &k2.element(*idx));
        let m = k8.add(&l8, &g8.scale(&l8, &t));
        if let Some(s) = find_component(&l8, &m, &base8, rng)? {
            split.push((format!("(1 : {})", k2.format(&k2.element(*idx))), s));
        }
    }
    Ok(IrreducibilityRecord {
        torsion,
        base_members: members.len(),
        extension_members: ext,
        manual_review: !split.is_empty(),
        split,
    })
}

fn nodal_record(f: &PrimeField, g: &MultiPoly<u64>, smooth: &SmoothRecord) -> Result<NonIsotrivialRecord> {
    let jac: Vec<MultiPoly<u64>> = (0..3).map(|i| g.derivative(f, i)).collect();
    let (nodes, reduced) = scheme_points(f, &jac, 0x2_0de5).map_err(|e| fail(4, e.to_string()))?;
    if !reduced {
        return Err(fail(4, "a singular point of f is not a node"));
    }
    if nodes != 2 {
        return Err(fail(4, format!("f has {nodes} nodes")));
    }
    if smooth.member.0 == 0 {
        return Err(fail(4, "the smooth member coincides with f"));
    }
    Ok(NonIsotrivialRecord { nodes, geometric_genus: 3 - nodes as i64, smooth_member: smooth.member })
}

/// Build all four records; generators are normalized first, so rescaling
/// either of them does not change the certificate.
pub fn certify_pencil(pencil: &PlanePencil, e: &WeierstrassCurve, q: &EPoint, seed: u64) -> Result<PencilCertificate> {
    let f = &pencil.field;
    if e.p() != f.p() {
        return Err(Error::IncompatibleField(format!("F_{}", e.p()), f.name()));
    }
    if f.p() <= 16 {
        return Err(Error::InvalidField("the certificate needs characteristic above 16".into()));
    }
    let (k, g) = (pencil.k.normalize(f), pencil.f.normalize(f));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_locus = base_locus(f, &k, &g, &mut rng)?;
    if base_locus.point != normalize_point(f, &pencil.qbar) {
        return Err(fail(1, format!("the base point is {}", format_point(f, &base_locus.point))));
    }
    let torsion = e.lin_equiv_cert(q, 16)?;
    let irreducibility = irreducibility(f, &k, &g, torsion, &mut rng)?;
    let smooth = smooth_member(f, &k, &g, &mut rng)?;
    let non_isotrivial = nodal_record(f, &g, &smooth)?;
    Ok(PencilCertificate { field: *f, k, f: g, qbar: normalize_point(f, &pencil.qbar), base_locus, irreducibility, smooth, non_isotrivial })
}

impl PencilCertificate {
    /// Recheck records 1, 3 and 4 from the stored changes and members.
    pub fn recheck(&self) -> Result<()> {
        let f = &self.field;
        let base = base_locus_with(f, &self.k, &self.f, &self.base_locus.change)?.ok_or_else(|| fail(1, "stored change is degenerate"))?;
        if base != self.base_locus || base.point != self.qbar {
            return Err(fail(1, "base locus record does not reproduce"));
        }
        if self.irreducibility.torsion != (true, false) {
            return Err(fail(2, "torsion record"));
        }
        if !jacobian_empty(f, &member(f, &self.k, &self.f, self.smooth.member), &self.smooth.change)? {
            return Err(fail(3, "smooth member record does not reproduce"));
        }
        if nodal_record(f, &self.f, &self.smooth)? != self.non_isotrivial {
            return Err(fail(4, "nodal record does not reproduce"));
        }
        Ok(())
    }

    pub fn passed(&self) -> bool {
        !self.irreducibility.manual_review
    }

    pub fn format(&self) -> String {
        let f = &self.field;
        let names = ["x", "y", "z"];
        let mat = |m: &[Vec<u64>]| {
            let rows: Vec<Vec<u64>> = (0..3).map(|i| m.iter().map(|c| c[i]).collect()).collect();
            Matrix::from_rows(rows, 3).to_rows().iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("pencil over {}\n", f.name()));
        out.push_str(&format!("k = {}\n", self.k.format_with(f, &names)));
        out.push_str(&format!("f = {}\n", self.f.format_with(f, &names)));
        out.push_str(&format!("base point = {}\n", format_point(f, &self.qbar)));
        let b = &self.base_locus;
        out.push_str("\n[1] base locus\n");
        out.push_str(&format!("change = {}\n", mat(&b.change)));
        out.push_str(&format!("Res_z = c (linear form)^{} vanishing at {}\n", b.multiplicity, format_point(f, &b.roots[0])));
        out.push_str(&format!("Res_y = c (linear form)^{} vanishing at {}\n", b.multiplicity, format_point(f, &b.roots[1])));
        out.push_str(&format!("common zero = {} with multiplicity {}\n", format_point(f, &b.point), b.multiplicity));
        let i = &self.irreducibility;
        out.push_str("\n[2] irreducibility\n");
        out.push_str(&format!("16q = O: {}, 8q = O: {}\n", i.torsion.0, i.torsion.1));
        out.push_str(&format!("members over {} checked: {}\n", f.name(), i.base_members));
        out.push_str(&format!("members over F_{}^2 checked: {}\n", f.p(), i.extension_members.len()));
        for (m, s) in &i.split {
            out.push_str(&format!("split member {m}: {s:?}\n"));
        }
        out.push_str(&format!("manual review: {}\n", i.manual_review));
        let s = &self.smooth;
        out.push_str("\n[3] smooth member\n");
        out.push_str(&format!("member = ({} : {}) after {} draws\n", s.member.0, s.member.1, s.draws));
        out.push_str(&format!("change = {}\n", mat(&s.change)));
        out.push_str("Jacobian zero set: empty\n");
        let n = &self.non_isotrivial;
        out.push_str("\n[4] non-isotriviality\n");
        out.push_str(&format!("f: {} nodes, geometric genus {}\n", n.nodes, n.geometric_genus));
        out.push_str(&format!("smooth member ({} : {}) has genus 3\n", n.smooth_member.0, n.smooth_member.1));
        out
    }
}
