//! The vertex scan: points p of P^3(F_p) with a quartic cone of vertex p,
//! not containing C, that meets C only at q.

use rayon::prelude::*;

use crate::algebra::field::normalize_point;
use crate::algebra::{matrix, Field, GradedPiece, MultiPoly, PrimeField, SubspaceBasis};
use crate::conic::{classify_vertex, cone_equation, VertexTag};
use crate::curves::divisor::{divisor_on_curve, DEFAULT_EXTENSION_CAP};
use crate::curves::{local_series, CurveModel};
use crate::error::{Error, Result};

/// Which vertices to examine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanRegion {
    /// All of P^3(F_p).
    Full,
    /// Affine vertices (x : y : z : 1) with coordinates in the given ranges.
    Box { lo: [u64; 3], hi: [u64; 3] },
    /// The rational points of the line through two points.
    Line(Vec<u64>, Vec<u64>),
}

impl ScanRegion {
    /// `full`, `box:x0-x1,y0-y1,z0-z1` or `line:a0,a1,a2,a3;b0,b1,b2,b3`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad scan region '{text}'"));
        let text = text.trim();
        if text == "full" {
            return Ok(ScanRegion::Full);
        }
        if let Some(rest) = text.strip_prefix("box:") {
            let mut lo = [0; 3];
            let mut hi = [0; 3];
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            for (i, part) in parts.iter().enumerate() {
                let (a, b) = part.split_once('-').ok_or_else(bad)?;
                lo[i] = a.trim().parse().map_err(|_| bad())?;
                hi[i] = b.trim().parse().map_err(|_| bad())?;
                if lo[i] > hi[i] {
                    return Err(bad());
                }
            }
            return Ok(ScanRegion::Box { lo, hi });
        }
        if let Some(rest) = text.strip_prefix("line:") {
            let pts: Vec<Vec<u64>> = rest
                .split(';')
                .map(|s| s.split(',').map(|x| x.trim().parse::<u64>()).collect::<std::result::Result<Vec<_>, _>>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            if pts.len() != 2 || pts.iter().any(|p| p.len() != 4) {
                return Err(bad());
            }
            return Ok(ScanRegion::Line(pts[0].clone(), pts[1].clone()));
        }
        Err(bad())
    }

    pub fn describe(&self) -> String {
        match self {
            ScanRegion::Full => "full".into(),
            ScanRegion::Box { lo, hi } => format!("box:{}-{},{}-{},{}-{}", lo[0], hi[0], lo[1], hi[1], lo[2], hi[2]),
            ScanRegion::Line(a, b) => format!(
                "line:{};{}",
                a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    pub fn len(&self, p: u64) -> u64 {
        match self {
            ScanRegion::Full => p * p * p + p * p + p + 1,
            ScanRegion::Box { lo, hi } => (0..3).map(|i| hi[i].min(p - 1).saturating_add(1).saturating_sub(lo[i])).product(),
            ScanRegion::Line(..) => p + 1,
        }
    }

    pub fn is_empty(&self, p: u64) -> bool {
        self.len(p) == 0
    }

    /// The idx-th vertex, not normalized.
    pub fn vertex(&self, f: &PrimeField, idx: u64) -> Vec<u64> {
        let p = f.p();
        match self {
            ScanRegion::Full => {
                let c = p * p * p;
                if idx < c {
                    vec![idx / (p * p), idx / p % p, idx % p, 1]
                } else if idx < c + p * p {
                    let i = idx - c;
                    vec![i / p, i % p, 1, 0]
                } else if idx < c + p * p + p {
                    vec![idx - c - p * p, 1, 0, 0]
                } else {
                    vec![1, 0, 0, 0]
                }
            }
            ScanRegion::Box { lo, hi } => {
                let w: Vec<u64> = (0..3).map(|i| hi[i].min(p - 1) + 1 - lo[i]).collect();
                vec![lo[0] + idx / (w[1] * w[2]), lo[1] + idx / w[2] % w[1], lo[2] + idx % w[2], 1]
            }
            ScanRegion::Line(a, b) => {
                if idx < p {
                    (0..4).map(|i| f.add(&a[i], &f.mul(&idx, &b[i]))).collect()
                } else {
                    b.clone()
                }
            }
        }
    }
}

/// Degree-4 monomials in three variables, in graded order.
fn ternary_quartics() -> Vec<[u8; 3]> {
    let piece = GradedPiece::get(3, 4);
    piece.monomials.iter().map(|m| [m.0[0], m.0[1], m.0[2]]).collect()
}

/// Series of the four coordinates at q, modulo s^m.
pub(crate) struct SeriesAtQ {
    p: u64,
    m: usize,
    coords: Vec<Vec<u64>>,
    monos: Vec<[u8; 3]>,
}

impl SeriesAtQ {
    pub(crate) fn new(c: &CurveModel<PrimeField>, q: &[u64], m: usize) -> Result<Self> {
        let ls = local_series(c, q, m)?;
        let coords = ls.coords.iter().map(|s| s[..m].to_vec()).collect();
        Ok(SeriesAtQ { p: c.field.p(), m, coords, monos: ternary_quartics() })
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (p, m) = (self.p, self.m);
        (0..m)
            .map(|k| {
                let mut acc: u64 = 0;
                for i in 0..=k {
                    acc += a[i] * b[k - i];
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                acc % p
            })
            .collect()
    }

    /// Columns: the series of the monomials of `forms` (three linear forms).
    fn condition_columns(&self, forms: &[[u64; 4]; 3]) -> Vec<Vec<u64>> {
        let p = self.p;
        let lin: Vec<Vec<u64>> = forms
            .iter()
            .map(|l| (0..self.m).map(|k| (0..4).map(|i| l[i] * self.coords[i][k] % p).sum::<u64>() % p).collect())
            .collect();
        let pow: Vec<Vec<Vec<u64>>> = lin
            .iter()
            .map(|s| {
                let mut v = vec![{
                    let mut one = vec![0; self.m];
                    one[0] = 1;
                    one
                }];
                for e in 1..=4 {
                    let next = self.mul(&v[e - 1], s);
                    v.push(next);
                }
                v
            })
            .collect();
        self.monos
            .iter()
            .map(|e| {
                let ab = self.mul(&pow[0][e[0] as usize], &pow[1][e[1] as usize]);
                self.mul(&ab, &pow[2][e[2] as usize])
            })
            .collect()
    }
}

/// Linear forms spanning W(p), from the frame completing p.
fn wbasis(f: &PrimeField, p: &[u64]) -> [[u64; 4]; 3] {
    let ker = matrix::kernel(f, &[p.to_vec()], 4);
    [0, 1, 2].map(|i| [ker[i][0], ker[i][1], ker[i][2], ker[i][3]])
}

/// Rank of a matrix given by columns, stopping once it reaches `stop`.
fn rank_mod(p: u64, cols: &[Vec<u64>], stop: usize) -> usize {
    let nrows = cols[0].len();
    let mut m: Vec<Vec<u64>> = (0..nrows).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let ncols = cols.len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(pr, r);
        let inv = crate::algebra::prime::pow_mod(m[r][c], p - 2, p);
        for i in r + 1..nrows {
            let fac = m[i][c] * inv % p;
            if fac != 0 {
                for j in c..ncols {
                    m[i][j] = (m[i][j] + (p - fac) * m[r][j]) % p;
                }
            }
        }
        r += 1;
        if r >= stop {
            return r;
        }
    }
    r
}

/// {h in W(p)_4 : nu_q(h|C) >= m} as polynomials in the original coordinates.
pub fn vertex_conditions(c: &CurveModel<PrimeField>, p: &[u64], q: &[u64], m: usize) -> Result<SubspaceBasis<u64>> {
    let s = SeriesAtQ::new(c, q, m)?;
    Ok(conditions_with(&c.field, &s, p))
}

fn conditions_with(f: &PrimeField, s: &SeriesAtQ, p: &[u64]) -> SubspaceBasis<u64> {
    let forms = wbasis(f, p);
    let cols = s.condition_columns(&forms);
    let rows: Vec<Vec<u64>> = (0..s.m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let ker = matrix::kernel(f, &rows, cols.len());
    let lin: Vec<MultiPoly<u64>> = forms.iter().map(|l| MultiPoly::linear(f, l)).collect();
    let monos: Vec<MultiPoly<u64>> =
        s.monos.iter().map(|e| lin[0].pow(f, e[0] as u32).mul(f, &lin[1].pow(f, e[1] as u32)).mul(f, &lin[2].pow(f, e[2] as u32))).collect();
    let polys: Vec<MultiPoly<u64>> = ker
        .iter()
        .map(|v| v.iter().zip(&monos).fold(MultiPoly::zero(4, 4), |acc, (ci, mo)| acc.add(f, &mo.scale(f, ci))))
        .collect();
    SubspaceBasis::span(f, 4, 4, &polys)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeWitness {
    pub vertex: Vec<u64>,
    /// Cone over C from the vertex.
    pub fp: MultiPoly<u64>,
    /// A quartic cone with the same vertex cutting 16 q.
    pub g: MultiPoly<u64>,
    pub solution_dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub region: ScanRegion,
    pub examined: u64,
    /// Vertices passing the rank test before classification.
    pub rank_hits: usize,
    pub witnesses: Vec<ConeWitness>,
}

const BATCH: u64 = 4096;

/// Scan `region` for vertices in U carrying a second cone through 16 q.
/// At most `budget` vertices are examined, starting at index `start`.
pub fn search_vertices(
    c: &CurveModel<PrimeField>,
    q: &[u64],
    region: &ScanRegion,
    start: u64,
    budget: u64,
) -> Result<ScanReport> {
    let f = &c.field;
    let m = 16;
    if c.degree != 4 || c.genus != 1 {
        return Err(Error::InvalidInput("the vertex scan needs an elliptic normal quartic".into()));
    }
    let s = SeriesAtQ::new(c, q, m)?;
    let total = region.len(f.p());
    let end = total.min(start.saturating_add(budget));
    let mut hits: Vec<Vec<u64>> = vec![];
    let mut idx = start;
    while idx < end {
        let hi = (idx + BATCH).min(end);
        let batch: Vec<Vec<u64>> = (idx..hi)
            .into_par_iter()
            .filter_map(|i| {
                let v = normalize_point(f, &region.vertex(f, i));
                if v.iter().all(|x| *x == 0) || c.contains_point(&v) {
                    return None;
                }
                let cols = s.condition_columns(&wbasis(f, &v));
                (rank_mod(f.p(), &cols, 14) <= 13).then_some(v)
            })
            .collect();
        hits.extend(batch);
        idx = hi;
    }
    if end < total {
        return Err(Error::BudgetExhausted { done: end - start, resume: end });
    }
    hits.sort();
    hits.dedup();
    let rank_hits = hits.len();
    let mut witnesses = vec![];
    for v in hits {
        if classify_vertex(c, &v)?.tag != VertexTag::U {
            continue;
        }
        let sol = conditions_with(f, &s, &v);
        let fp = cone_equation(c, &v)?.normalize(f);
        let Some(g) = sol.polys(f).into_iter().find(|g| !c.in_ideal(g)) else {
            continue;
        };
        let g = g.normalize(f);
        let div = divisor_on_curve(c, &g, DEFAULT_EXTENSION_CAP)?;
        if div.concentrated_at() != Some((normalize_point(f, q), 16)) {
            return Err(Error::ContractViolation(format!("cone at {:?} cuts {}", v, div.format())));
        }
        witnesses.push(ConeWitness { vertex: v, fp, g, solution_dim: sol.dim() });
    }
    Ok(ScanReport { region: region.clone(), examined: end - start, rank_hits, witnesses })
}
