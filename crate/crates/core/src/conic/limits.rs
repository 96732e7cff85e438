//! Limits of cones and conic systems as the vertex moves to a curve point
//! along a line, computed in adapted coordinates where the point is
//! (0:0:0:1), its tangent is {x = y = 0}, the line is {y = z = 0} and the
//! moving vertex is (-t:0:0:1).

use super::{cone_space, system_basis, wpower, ConicSystem, Vertex};
use crate::algebra::field::format_point;
use crate::algebra::flat_limit::{flat_limit_subspace, flat_limit_vectors, ParamSubspace};
use crate::algebra::mpoly::{binomial, GradedPiece, Monomial};
use crate::algebra::resultant::dehomogenize_binary;
use crate::algebra::upoly::{self, UPoly};
use crate::algebra::{matrix, Field, MultiPoly, RatFn, RationalFunctionField, SubspaceBasis};
use crate::curves::{local_series, tangent_and_osculating, vanishing_order, CurveModel, Order};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LimitDirection<E> {
    pub point: Vec<E>,
    /// A second point of the line; None for the tangent line.
    pub through: Option<Vec<E>>,
    /// Columns: images of the adapted coordinate points.
    pub frame: Vec<Vec<E>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericityFlags {
    /// ∂f_p/∂x at (0:0:1) is nonzero.
    pub fx_nonzero: bool,
    pub bisecant: bool,
    pub tangent_meets_again: bool,
}

impl GenericityFlags {
    pub fn closed_form_applies(&self) -> bool {
        self.fx_nonzero && !self.bisecant
    }

    pub fn format(&self) -> String {
        format!(
            "fx_nonzero={} bisecant={} tangent_meets_again={}",
            self.fx_nonzero, self.bisecant, self.tangent_meets_again
        )
    }
}

fn complete<F: Field>(f: &F, mut cols: Vec<Vec<F::Elem>>, tail: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    for i in 0..4 {
        if cols.len() + tail.len() == 4 {
            break;
        }
        let mut e = vec![f.zero(); 4];
        e[i] = f.one();
        let mut trial = cols.clone();
        trial.push(e.clone());
        trial.extend(tail.iter().cloned());
        if matrix::rank(f, &trial, 4) == trial.len() {
            cols.push(e);
        }
    }
    cols.extend(tail.iter().cloned());
    cols
}

impl<E: Clone + PartialEq + std::fmt::Debug> LimitDirection<E> {
    /// The line through p and `through`, or the tangent line at p.
    pub fn new<F: Field<Elem = E>>(c: &CurveModel<F>, p: &[E], through: Option<&[E]>) -> Result<Self> {
        let f = &c.field;
        let ls = local_series(c, p, 2)?;
        let p = ls.point.clone();
        let v = ls.jet(f, 1);
        let frame = match through {
            Some(r) => {
                if matrix::rank(f, &[p.clone(), v.clone(), r.to_vec()], 4) < 3 {
                    return Err(Error::InvalidDirection("the line is the tangent line or degenerate".into()));
                }
                let mut cols = vec![r.to_vec()];
                cols = complete(f, cols, &[v, p.clone()]);
                cols
            }
            None => complete(f, vec![v], std::slice::from_ref(&p)),
        };
        Ok(LimitDirection { point: p, through: through.map(|r| r.to_vec()), frame })
    }

    pub fn is_tangent(&self) -> bool {
        self.through.is_none()
    }

    pub fn adapted_curve<F: Field<Elem = E>>(&self, c: &CurveModel<F>) -> Result<CurveModel<F>> {
        c.transform(&self.frame)
    }

    /// Columns of the inverse frame, mapping adapted forms back.
    pub fn inverse_frame<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let m = matrix::Matrix::from_rows((0..4).map(|i| self.frame.iter().map(|c| c[i].clone()).collect()).collect(), 4);
        let inv = matrix::inverse(f, &m).expect("frame is invertible");
        (0..4).map(|j| (0..4).map(|i| inv.get(i, j).clone()).collect()).collect()
    }

    pub fn to_original<F: Field<Elem = E>>(&self, f: &F, g: &MultiPoly<E>) -> MultiPoly<E> {
        g.change_frame(f, &self.inverse_frame(f))
    }

    pub fn describe<F: Field<Elem = E>>(&self, f: &F) -> String {
        match &self.through {
            Some(r) => format!("at {} along the line to {}", format_point(f, &self.point), format_point(f, r)),
            None => format!("at {} along the tangent", format_point(f, &self.point)),
        }
    }
}

fn origin<F: Field>(f: &F) -> Vec<F::Elem> {
    vec![f.zero(), f.zero(), f.zero(), f.one()]
}

/// Length of the intersection of C with the line spanned by coordinate
/// points a and b (frame coordinates).
fn line_intersection_length<F: Field>(c: &CurveModel<F>, a: usize, b: usize) -> usize {
    let f = &c.field;
    let images: Vec<MultiPoly<F::Elem>> = (0..4)
        .map(|i| {
            if i == a {
                MultiPoly::var(f, 2, 0)
            } else if i == b {
                MultiPoly::var(f, 2, 1)
            } else {
                MultiPoly::zero(2, 1)
            }
        })
        .collect();
    let mut g: UPoly<F::Elem> = vec![];
    let mut inf = u32::MAX;
    for p in &c.ideal.polys {
        let r = p.compose(f, &images);
        if r.is_zero() {
            continue;
        }
        let (u, i) = dehomogenize_binary(f, &r);
        g = upoly::gcd(f, &g, &u);
        inf = inf.min(i);
    }
    upoly::degree(&g).unwrap_or(usize::MAX) + inf as usize
}

/// The d-1 cone at the origin of an adapted curve, if the origin is in C'.
fn adapted_cone<F: Field>(cf: &CurveModel<F>) -> Option<MultiPoly<F::Elem>> {
    let space = cone_space(cf, &origin(&cf.field), cf.degree - 1);
    (space.dim() == 1).then(|| space.polys(&cf.field)[0].normalize(&cf.field))
}

pub fn genericity_flags<F: Field>(cf: &CurveModel<F>) -> GenericityFlags {
    let f = &cf.field;
    let fx_nonzero = adapted_cone(cf)
        .map(|fp| !f.is_zero(&fp.derivative(f, 0).eval(f, &[f.zero(), f.zero(), f.one(), f.zero()])))
        .unwrap_or(false);
    GenericityFlags {
        fx_nonzero,
        bisecant: line_intersection_length(cf, 0, 3) >= 2,
        tangent_meets_again: line_intersection_length(cf, 2, 3) >= 3,
    }
}

/// Spanning set of W(p_t)_k with p_t = (-t:0:0:1): entry s of each
/// generator is its coefficient of t^s.
fn deformed_products<F: Field>(f: &F, k: u32) -> Vec<Vec<MultiPoly<F::Elem>>> {
    let mut out = vec![];
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            let c = k - a - b;
            let terms: Vec<MultiPoly<F::Elem>> = (0..=a)
                .map(|s| {
                    let m = Monomial([(a - s) as u8, b as u8, c as u8, s as u8]);
                    MultiPoly::monomial(f, 4, m, f.from_i64(binomial(a as u64, s as u64) as i64))
                })
                .collect();
            out.push(terms);
        }
    }
    out
}

/// Entry-wise t-polynomials of a list of t-expanded vectors.
fn t_rows<F: Field>(f: &F, expanded: &[Vec<Vec<F::Elem>>]) -> Vec<Vec<UPoly<F::Elem>>> {
    expanded
        .iter()
        .map(|by_power| {
            let n = by_power[0].len();
            (0..n).map(|j| upoly::trim(f, by_power.iter().map(|v| v[j].clone()).collect())).collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitCone<E> {
    pub direction: LimitDirection<E>,
    /// The limit in adapted coordinates.
    pub cone: MultiPoly<E>,
    pub original: MultiPoly<E>,
    /// The reduced cone at p and its exponent in the limit.
    pub base: MultiPoly<E>,
    pub power: u32,
    /// The residual plane.
    pub plane: MultiPoly<E>,
    pub expected_plane: MultiPoly<E>,
    pub plane_matches: bool,
}

/// Flat limit of the cones f_{p_t} as t -> 0.
pub fn limit_cone<F: Field>(c: &CurveModel<F>, dir: &LimitDirection<F::Elem>) -> Result<LimitCone<F::Elem>> {
    let f = &c.field;
    let cf = dir.adapted_curve(c)?;
    let d = cf.degree;
    let o = origin(f);
    let (base_deg, base) = (1..d)
        .find_map(|k| {
            let s = cone_space(&cf, &o, k);
            (s.dim() > 0).then(|| (k, s.polys(f)[0].normalize(f)))
        })
        .ok_or_else(|| Error::ContractViolation("no cone of degree < d at a curve point".into()))?;
    if (d - 1) % base_deg != 0 {
        return Err(Error::ContractViolation(format!("reduced cone degree {base_deg} does not divide {}", d - 1)));
    }
    let power = (d - 1) / base_deg;

    let gens = deformed_products(f, d);
    let s = cf.sections(d);
    let nf_rows = t_rows(f, &gens.iter().map(|g| g.iter().map(|p| s.project(f, p)).collect()).collect::<Vec<_>>());
    let raw_rows = t_rows(f, &gens.iter().map(|g| g.iter().map(|p| p.to_dense(f)).collect()).collect::<Vec<_>>());
    let k = RationalFunctionField::new(f.clone(), "t");
    let lift = |rows: &[Vec<UPoly<F::Elem>>]| -> Vec<Vec<RatFn<F::Elem>>> {
        rows.iter().map(|r| r.iter().map(|p| k.from_poly(p.clone())).collect()).collect()
    };
    let nf_k = lift(&nf_rows);
    let raw_k = lift(&raw_rows);
    let n = GradedPiece::get(4, d).dim();
    let ker = matrix::left_kernel(&k, &nf_k, n);
    if ker.len() != 1 {
        return Err(Error::InvalidDirection(format!(
            "the moving vertex is not generically in U (cone space of dimension {})",
            ker.len()
        )));
    }
    let mut ft = vec![k.zero(); n];
    for (ci, row) in ker[0].iter().zip(&raw_k) {
        if k.is_zero(ci) {
            continue;
        }
        for (e, r) in ft.iter_mut().zip(row) {
            *e = k.add(e, &k.mul(ci, r));
        }
    }
    let lim = flat_limit_vectors(&k, &[ft], n)?;
    let cone = MultiPoly::from_dense(f, 4, d, &lim[0]).normalize(f);
    let plane = cone
        .div_exact(f, &base.pow(f, power))
        .ok_or_else(|| Error::ContractViolation("limit cone is not divisible by the cone at p".into()))?;
    let expected_plane = if dir.is_tangent() {
        tangent_and_osculating(&cf, &o)?.osculating
    } else {
        MultiPoly::var(f, 4, 1)
    };
    let plane_matches = SubspaceBasis::span(f, 4, 1, std::slice::from_ref(&plane)) == SubspaceBasis::span(f, 4, 1, std::slice::from_ref(&expected_plane));
    Ok(LimitCone {
        direction: dir.clone(),
        original: dir.to_original(f, &cone).normalize(f),
        cone,
        base,
        power,
        plane: plane.normalize(f),
        expected_plane,
        plane_matches,
    })
}

/// Second generator of the degree-d limit, by the case split (i)/(ii).
fn xi<F: Field>(
    cf: &CurveModel<F>,
    rd: &SubspaceBasis<F::Elem>,
    fp: &MultiPoly<F::Elem>,
    wzfx: &MultiPoly<F::Elem>,
) -> Result<(String, MultiPoly<F::Elem>)> {
    let f = &cf.field;
    let d = cf.degree;
    let s = cf.sections(d);
    let (x, w) = (MultiPoly::var(f, 4, 0), MultiPoly::var(f, 4, 3));
    let fx = fp.derivative(f, 0);
    let xwfx = x.mul(f, &w).mul(f, &fx);
    let target = s.project(f, &xwfx);
    let with_z = rd.sum(f, &s.image(f, std::slice::from_ref(wzfx)))?;
    if !with_z.contains_vector(f, &target) {
        return Ok(("x*w*f_x".into(), xwfx));
    }
    if !rd.contains_vector(f, &target) {
        return Err(Error::ContractViolation("(x + a z) w f_x lies in R_d(p) with a != 0".into()));
    }
    let gens = wpower(f, &origin(f), d);
    let rows: Vec<Vec<F::Elem>> = gens.iter().map(|g| s.project(f, g)).collect();
    let coeffs = matrix::solve_combination(f, &rows, &target)
        .ok_or_else(|| Error::Internal("no q with x w f_x - q in I(d)".into()))?;
    let q = coeffs
        .iter()
        .zip(&gens)
        .fold(MultiPoly::zero(4, d), |acc, (ci, g)| if f.is_zero(ci) { acc } else { acc.add(f, &g.scale(f, ci)) });
    let w2 = w.mul(f, &w);
    let two = f.from_i64(2);
    let xi = w2
        .mul(f, &fx)
        .scale(f, &two)
        .add(f, &x.mul(f, &w2).mul(f, &fx.derivative(f, 0)))
        .sub(f, &w.mul(f, &q.derivative(f, 0)).scale(f, &two));
    Ok(("2*w^2*f_x + x*w^2*f_xx - 2*w*q_x".into(), xi))
}

/// R^ℓ_k(p) in adapted coordinates: the flat limit of R_k(p_t), checked
/// against the explicit generators when the genericity flags allow it.
pub fn limit_conic_system<F: Field>(
    c: &CurveModel<F>,
    dir: &LimitDirection<F::Elem>,
    k: u32,
) -> Result<ConicSystem<F::Elem>> {
    let f = &c.field;
    if dir.is_tangent() {
        return Err(Error::InvalidDirection("limit systems need a line other than the tangent".into()));
    }
    let cf = dir.adapted_curve(c)?;
    let d = cf.degree;
    if k == 0 || k > d {
        return Err(Error::InvalidInput(format!("degree {k} outside 1..={d}")));
    }
    let o = origin(f);
    let s = cf.sections(k);
    let gens = deformed_products(f, k);
    let rows = t_rows(f, &gens.iter().map(|g| g.iter().map(|p| s.project(f, p)).collect()).collect::<Vec<_>>());
    let flat = flat_limit_subspace(&ParamSubspace::from_polynomial_rows(f, 4, k, &rows))?;
    let rk = system_basis(&cf, &o, k);
    let flags = genericity_flags(&cf);
    let mut extras = vec![];
    if flags.closed_form_applies() && k + 1 >= d {
        let fp = adapted_cone(&cf).unwrap();
        let w = MultiPoly::var(f, 4, 3);
        let fx = fp.derivative(f, 0);
        if k == d - 1 {
            extras.push(("w*f_x".to_string(), w.mul(f, &fx)));
        } else {
            let wzfx = w.mul(f, &MultiPoly::var(f, 4, 2)).mul(f, &fx);
            let x = xi(&cf, &rk, &fp, &wzfx)?;
            extras.push(("w*z*f_x".to_string(), wzfx));
            extras.push(x);
        }
    }
    if flags.closed_form_applies() {
        let polys: Vec<MultiPoly<F::Elem>> = extras.iter().map(|(_, g)| g.clone()).collect();
        let closed = rk.sum(f, &s.image(f, &polys))?;
        if closed != flat {
            return Err(Error::ContractViolation(format!(
                "flat limit (dim {}) differs from the explicit span (dim {}) in degree {k}",
                flat.dim(),
                closed.dim()
            )));
        }
    }
    if k + 1 >= d {
        for g in flat.polys(f) {
            if let Order::Finite(n) = vanishing_order(&cf, &g, &o, None)? {
                if n + 2 < d as usize {
                    return Err(Error::ContractViolation(format!("limit element vanishes to order {n} < d - 2")));
                }
            }
        }
    }
    Ok(ConicSystem {
        vertex: Vertex::Limit(dir.clone()),
        degree: k,
        frame: Some(dir.frame.clone()),
        base_dim: rk.dim(),
        basis: flat,
        extras,
        flags: Some(flags),
    })
}

/// min ν_p over a system given in adapted coordinates of `dir`.
pub fn min_vanishing_order<F: Field>(
    c: &CurveModel<F>,
    dir: &LimitDirection<F::Elem>,
    sys: &ConicSystem<F::Elem>,
) -> Result<Order> {
    let cf = dir.adapted_curve(c)?;
    let o = origin(&cf.field);
    let mut best = Order::Infinite;
    for g in sys.basis.polys(&cf.field) {
        best = best.min(vanishing_order(&cf, &g, &o, None)?);
    }
    Ok(best)
}
