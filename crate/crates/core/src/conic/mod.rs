//! Cones with vertex p over a curve, the conic linear systems R_k(p), their
//! limits along lines through a curve point, and rank diagnostics of the
//! cone map.

pub mod limits;

use crate::algebra::field::format_point;
use crate::algebra::mpoly::{binomial, symmetric_products};
use crate::algebra::{matrix, Field, MultiPoly, SubspaceBasis};
use crate::curves::{CurveModel, SectionsModel};
use crate::error::{Error, Result};

pub use limits::{limit_cone, limit_conic_system, GenericityFlags, LimitCone, LimitDirection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexTag {
    U,
    Cprime,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub tag: VertexTag,
    pub on_curve: bool,
    /// dim W(p)_d ∩ I(d).
    pub witness: usize,
    /// Degree of the projection from p and of the reduced cone, for S.
    pub projection_degree: Option<u32>,
    pub cone_degree: Option<u32>,
}

/// Linear forms vanishing at p.
pub fn wspace<F: Field>(f: &F, p: &[F::Elem]) -> SubspaceBasis<F::Elem> {
    let forms = wspace_forms(f, p);
    SubspaceBasis::span(f, 4, 1, &forms)
}

pub(crate) fn wspace_forms<F: Field>(f: &F, p: &[F::Elem]) -> Vec<MultiPoly<F::Elem>> {
    matrix::kernel(f, &[p.to_vec()], 4).iter().map(|v| MultiPoly::linear(f, v)).collect()
}

/// Spanning set of W(p)_k.
pub(crate) fn wpower<F: Field>(f: &F, p: &[F::Elem], k: u32) -> Vec<MultiPoly<F::Elem>> {
    symmetric_products(f, &wspace_forms(f, p), k)
}

/// W_k ∩ I(k) for the span W_k of `gens`.
pub(crate) fn ideal_part<F: Field>(c: &CurveModel<F>, gens: &[MultiPoly<F::Elem>], k: u32) -> SubspaceBasis<F::Elem> {
    let f = &c.field;
    let s = c.sections(k);
    let rows: Vec<Vec<F::Elem>> = gens.iter().map(|g| s.project(f, g)).collect();
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let combos = matrix::left_kernel(f, &rows, n);
    let polys: Vec<MultiPoly<F::Elem>> = combos
        .iter()
        .map(|cv| {
            cv.iter()
                .zip(gens)
                .fold(MultiPoly::zero(4, k), |acc, (ci, g)| if f.is_zero(ci) { acc } else { acc.add(f, &g.scale(f, ci)) })
        })
        .collect();
    SubspaceBasis::span(f, 4, k, &polys)
}

/// W(p)_k ∩ I(k).
pub fn cone_space<F: Field>(c: &CurveModel<F>, p: &[F::Elem], k: u32) -> SubspaceBasis<F::Elem> {
    ideal_part(c, &wpower(&c.field, p, k), k)
}

fn check_point<F: Field>(f: &F, p: &[F::Elem]) -> Result<()> {
    if p.len() != 4 || p.iter().all(|x| f.is_zero(x)) {
        return Err(Error::InvalidInput("need a point of P^3".into()));
    }
    Ok(())
}

pub fn classify_vertex<F: Field>(c: &CurveModel<F>, p: &[F::Elem]) -> Result<VertexClass> {
    let f = &c.field;
    check_point(f, p)?;
    let d = c.degree;
    let on_curve = c.contains_point(p);
    let witness = cone_space(c, p, d).dim();
    let tag = match (witness, on_curve) {
        (1, false) => VertexTag::U,
        (3, true) => VertexTag::Cprime,
        (w, _) if w >= 6 => VertexTag::S,
        (w, on) => {
            return Err(Error::ContractViolation(format!(
                "dim W(p)_d ∩ I(d) = {w} at {} (on curve: {on})",
                format_point(f, p)
            )))
        }
    };
    let (mut projection_degree, mut cone_degree) = (None, None);
    if tag == VertexTag::S {
        let image_degree = if on_curve { d - 1 } else { d };
        let r = (1..=d).find(|&k| cone_space(c, p, k).dim() > 0).unwrap();
        if image_degree % r != 0 {
            return Err(Error::ContractViolation(format!("reduced cone degree {r} does not divide {image_degree}")));
        }
        projection_degree = Some(image_degree / r);
        cone_degree = Some(r);
    }
    Ok(VertexClass { tag, on_curve, witness, projection_degree, cone_degree })
}

/// f_p: the cone of degree d for p in U, of degree d-1 for p in C'.
pub fn cone_equation<F: Field>(c: &CurveModel<F>, p: &[F::Elem]) -> Result<MultiPoly<F::Elem>> {
    let f = &c.field;
    let class = classify_vertex(c, p)?;
    let k = match class.tag {
        VertexTag::U => c.degree,
        VertexTag::Cprime => c.degree - 1,
        VertexTag::S => return Err(Error::AmbiguousCone(class.witness)),
    };
    let space = cone_space(c, p, k);
    if space.dim() != 1 {
        return Err(Error::ContractViolation(format!("cone space of degree {k} has dimension {}", space.dim())));
    }
    Ok(space.polys(f)[0].normalize(f))
}

/// Normal-form model of S_k.
pub fn sections_space<F: Field>(c: &CurveModel<F>, k: u32) -> std::sync::Arc<SectionsModel<F::Elem>> {
    c.sections(k)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Vertex<E> {
    Point(Vec<E>),
    Limit(LimitDirection<E>),
}

/// A conic linear system inside the normal-form model of S_k, in the
/// coordinates given by `frame` (columns; None for the original ones).
#[derive(Clone, Debug, PartialEq)]
pub struct ConicSystem<E> {
    pub vertex: Vertex<E>,
    pub degree: u32,
    pub frame: Option<Vec<Vec<E>>>,
    pub basis: SubspaceBasis<E>,
    /// Rows contributed by the image of W(p)_k.
    pub base_dim: usize,
    /// Further generators with their provenance labels.
    pub extras: Vec<(String, MultiPoly<E>)>,
    pub flags: Option<GenericityFlags>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> ConicSystem<E> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        let mut out = String::new();
        match &self.vertex {
            Vertex::Point(p) => out.push_str(&format!("vertex = {}\n", format_point(f, p))),
            Vertex::Limit(dir) => out.push_str(&format!("vertex = limit {}\n", dir.describe(f))),
        }
        if let Some(cols) = &self.frame {
            for (j, col) in cols.iter().enumerate() {
                out.push_str(&format!("frame.{j} = {}\n", format_point(f, col)));
            }
        }
        out.push_str(&format!("degree = {}\ndim = {}\nbase_dim = {}\n", self.degree, self.dim(), self.base_dim));
        for (label, g) in &self.extras {
            out.push_str(&format!("generator {label} = {}\n", g.canonical(f)));
        }
        if let Some(fl) = &self.flags {
            out.push_str(&format!("flags = {}\n", fl.format()));
        }
        for (i, p) in self.basis.polys(f).iter().enumerate() {
            out.push_str(&format!("row.{i} = {}\n", p.canonical(f)));
        }
        out
    }
}

/// Image of W(p)_k in the S_k model.
pub(crate) fn system_basis<F: Field>(c: &CurveModel<F>, p: &[F::Elem], k: u32) -> SubspaceBasis<F::Elem> {
    c.sections(k).image(&c.field, &wpower(&c.field, p, k))
}

/// R_k(p).
pub fn conic_system<F: Field>(c: &CurveModel<F>, p: &[F::Elem], k: u32) -> Result<ConicSystem<F::Elem>> {
    check_point(&c.field, p)?;
    if k == 0 || k > c.degree {
        return Err(Error::InvalidInput(format!("degree {k} outside 1..={}", c.degree)));
    }
    let basis = system_basis(c, p, k);
    Ok(ConicSystem {
        vertex: Vertex::Point(p.to_vec()),
        degree: k,
        frame: None,
        base_dim: basis.dim(),
        basis,
        extras: vec![],
        flags: None,
    })
}

/// Expected dim R_k(p) for k in {d-1, d}; None elsewhere or for S.
pub fn expected_dim(tag: VertexTag, d: u32, k: u32) -> Option<usize> {
    let (d, k) = (d as u64, k as u64);
    let full = binomial(k + 2, 2);
    let drop = match (tag, d - k) {
        (VertexTag::U, 1) => 0,
        (VertexTag::U, 0) => 1,
        (VertexTag::Cprime, 1) => 1,
        (VertexTag::Cprime, 0) => 3,
        _ => return None,
    };
    Some((full - drop) as usize)
}

pub fn conic_systems_equal<F: Field>(c: &CurveModel<F>, p: &[F::Elem], q: &[F::Elem], k: u32) -> Result<bool> {
    Ok(conic_system(c, p, k)?.basis == conic_system(c, q, k)?.basis)
}

fn first_nonvanishing_coordinate<F: Field>(f: &F, p: &[F::Elem]) -> MultiPoly<F::Elem> {
    let i = p.iter().position(|x| !f.is_zero(x)).unwrap();
    MultiPoly::var(f, 4, i)
}

/// dim Γ(p) = dim(R_d(p) + [w W(p)_{d-1}]) - dim R_d(p).
pub fn gamma_dim<F: Field>(c: &CurveModel<F>, p: &[F::Elem]) -> Result<usize> {
    let f = &c.field;
    check_point(f, p)?;
    let d = c.degree;
    let w = first_nonvanishing_coordinate(f, p);
    let rd = system_basis(c, p, d);
    let extra: Vec<MultiPoly<F::Elem>> = wpower(f, p, d - 1).iter().map(|g| g.mul(f, &w)).collect();
    let bigger = rd.sum(f, &c.sections(d).image(f, &extra))?;
    Ok(bigger.dim() - rd.dim())
}

/// Frame with p as the last column, completed by standard basis vectors.
pub(crate) fn vertex_frame<F: Field>(f: &F, p: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut cols: Vec<Vec<F::Elem>> = vec![];
    for i in 0..4 {
        let mut e = vec![f.zero(); 4];
        e[i] = f.one();
        let mut trial = cols.clone();
        trial.push(e.clone());
        trial.push(p.to_vec());
        if matrix::rank(f, &trial, 4) == trial.len() {
            cols.push(e);
        }
        if cols.len() == 3 {
            break;
        }
    }
    cols.push(p.to_vec());
    cols
}

/// dim ker dΦ at [g] for g in W(p)_d: 3 minus the rank of the horizontal
/// directions w ∂g/∂x_i modulo R_d(p), in a frame with p = (0:0:0:1).
pub fn dphi_corank<F: Field>(c: &CurveModel<F>, p: &[F::Elem], g: &MultiPoly<F::Elem>) -> Result<usize> {
    let f = &c.field;
    check_point(f, p)?;
    let d = c.degree;
    if g.nvars() != 4 || g.degree() != d {
        return Err(Error::InvalidInput(format!("g must be a form of degree {d}")));
    }
    if !f.is_zero(&g.eval(f, p)) || !wspace_contains_power(f, p, g) {
        return Err(Error::InvalidInput("g does not lie in W(p)_d".into()));
    }
    if g.is_zero() || c.in_ideal(g) {
        return Err(Error::ZeroClass);
    }
    let cols = vertex_frame(f, p);
    let cf = c.transform(&cols)?;
    let gf = g.change_frame(f, &cols);
    let origin = vec![f.zero(), f.zero(), f.zero(), f.one()];
    let w = MultiPoly::var(f, 4, 3);
    let rd = system_basis(&cf, &origin, d);
    let horiz: Vec<MultiPoly<F::Elem>> = (0..3).map(|i| gf.derivative(f, i).mul(f, &w)).collect();
    let bigger = rd.sum(f, &cf.sections(d).image(f, &horiz))?;
    Ok(3 - (bigger.dim() - rd.dim()))
}

fn wspace_contains_power<F: Field>(f: &F, p: &[F::Elem], g: &MultiPoly<F::Elem>) -> bool {
    let cols = vertex_frame(f, p);
    g.change_frame(f, &cols).free_of(3)
}

#[cfg(test)]
mod tests;
