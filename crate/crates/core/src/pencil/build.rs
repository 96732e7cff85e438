//! Projection of a cone witness to a pencil of plane quartics, and the
//! osculating quartic at q.

use crate::algebra::field::normalize_point;
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::{MultiPoly, PrimeField, SubspaceBasis};
use crate::conic::{classify_vertex, cone_equation, vertex_frame, wspace_forms, VertexTag};
use crate::curves::divisor::{divisor_on_curve, CurveDivisor, DEFAULT_EXTENSION_CAP};
use crate::curves::{vanishing_order, CurveModel, Order};
use crate::error::{Error, Result};

use super::scan::{vertex_conditions, ConeWitness};

/// Two plane quartics spanning the pencil, and the image of q.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanePencil {
    pub field: PrimeField,
    pub vertex: Vec<u64>,
    /// Columns of the frame; the last one is the vertex.
    pub frame: Vec<Vec<u64>>,
    pub k: MultiPoly<u64>,
    pub f: MultiPoly<u64>,
    pub qbar: Vec<u64>,
}

/// Coordinates of `pt` in the frame, projected from its last column.
fn project_point(f: &PrimeField, frame: &[Vec<u64>], pt: &[u64]) -> Result<Vec<u64>> {
    let rows: Vec<Vec<u64>> = (0..4).map(|i| frame.iter().map(|c| c[i]).collect()).collect();
    let inv = matrix::inverse(f, &Matrix::from_rows(rows, 4)).ok_or_else(|| Error::Internal("singular frame".into()))?;
    let y = matrix::mat_vec(f, &inv, pt);
    if y[..3].iter().all(|x| *x == 0) {
        return Err(Error::GenericityFailure("the point is the centre of projection".into()));
    }
    Ok(normalize_point(f, &y[..3]))
}

fn plane_form(f: &PrimeField, frame: &[Vec<u64>], g: &MultiPoly<u64>) -> Result<MultiPoly<u64>> {
    g.change_frame(f, frame)
        .drop_var(3)
        .map_err(|_| Error::GenericityFailure("form is not a cone over the vertex".into()))
}

pub fn build_pencil(c: &CurveModel<PrimeField>, w: &ConeWitness, q: &[u64]) -> Result<PlanePencil> {
    let f = &c.field;
    let frame = vertex_frame(f, &w.vertex);
    let k = plane_form(f, &frame, &w.g)?.normalize(f);
    let fp = plane_form(f, &frame, &w.fp)?.normalize(f);
    let qbar = project_point(f, &frame, q)?;
    if k.eval(f, &qbar) != 0 || fp.eval(f, &qbar) != 0 {
        return Err(Error::ContractViolation("the image of q is not a base point".into()));
    }
    if SubspaceBasis::span(f, 3, 4, &[k.clone(), fp.clone()]).dim() != 2 {
        return Err(Error::ContractViolation("the pencil generators are proportional".into()));
    }
    Ok(PlanePencil { field: *f, vertex: w.vertex.clone(), frame, k, f: fp, qbar })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OsculatingQuartic {
    /// A quartic cone with vertex q, in the coordinates of P^3.
    pub quartic: MultiPoly<u64>,
    /// The same form on the plane of the projection from q.
    pub plane: MultiPoly<u64>,
    /// The cubic cone over C from q, on that plane.
    pub cubic: MultiPoly<u64>,
    /// dim {h in W(q)_4 : nu_q(h|C) >= 16}.
    pub solution_dim: usize,
    /// Contact with the projected cubic at the image of q.
    pub order_on_projection: usize,
    /// The solutions are exactly f_q W(q)_1 + <quartic>.
    pub unique: bool,
    pub divisor: CurveDivisor,
}

pub fn osculating_quartic(c: &CurveModel<PrimeField>, q: &[u64]) -> Result<OsculatingQuartic> {
    let f = &c.field;
    let q = normalize_point(f, q);
    if classify_vertex(c, &q)?.tag != VertexTag::Cprime {
        return Err(Error::InvalidInput("q must be a point of C with birational projection".into()));
    }
    let fq = cone_equation(c, &q)?;
    let multiples: Vec<MultiPoly<u64>> = wspace_forms(f, &q).iter().map(|l| fq.mul(f, l)).collect();
    let trivial = SubspaceBasis::span(f, 4, 4, &multiples);
    let sol = vertex_conditions(c, &q, &q, 16)?;
    if !multiples.iter().all(|m| sol.contains(f, m)) {
        return Err(Error::Internal("f_q W(q)_1 violates the contact conditions".into()));
    }
    let quartic = sol
        .polys(f)
        .into_iter()
        .find(|g| !trivial.contains(f, g))
        .ok_or_else(|| Error::ContractViolation("no quartic through 12 q on the projection; check the torsion certificate".into()))?
        .normalize(f);
    let order = match vanishing_order(c, &quartic, &q, None)? {
        Order::Finite(n) => n,
        Order::Infinite => return Err(Error::Internal("osculating quartic contains C".into())),
    };
    let divisor = divisor_on_curve(c, &quartic, DEFAULT_EXTENSION_CAP)?;
    let frame = vertex_frame(f, &q);
    Ok(OsculatingQuartic {
        plane: plane_form(f, &frame, &quartic)?,
        cubic: plane_form(f, &frame, &fq)?,
        quartic,
        solution_dim: sol.dim(),
        order_on_projection: order - 4,
        unique: sol.dim() == trivial.dim() + 1,
        divisor,
    })
}
