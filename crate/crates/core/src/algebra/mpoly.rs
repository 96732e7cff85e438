//! Homogeneous polynomials in 2, 3 or 4 variables under graded reverse
//! lexicographic order with x > y > z > w.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::Field;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.0[i] <= other.0[i])
    }

    /// other / self, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].max(other.0[i]);
        }
        Monomial(e)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.0[i] == 0 || other.0[i] == 0)
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomials of one degree in descending order, with a reverse index.
#[derive(Debug)]
pub struct GradedPiece {
    pub nvars: usize,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn get(nvars: usize, degree: u32) -> Arc<GradedPiece> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<GradedPiece>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry((nvars, degree))
            .or_insert_with(|| Arc::new(GradedPiece::build(nvars, degree)))
            .clone()
    }

    fn build(nvars: usize, degree: u32) -> GradedPiece {
        assert!((1..=MAX_VARS).contains(&nvars));
        let mut mons = vec![];
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
            if i == nvars - 1 {
                cur[i] = left as u8;
                out.push(Monomial(*cur));
                cur[i] = 0;
                return;
            }
            for e in 0..=left {
                cur[i] = e as u8;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut cur = [0u8; MAX_VARS];
        rec(0, nvars, degree, &mut cur, &mut mons);
        mons.sort_by(|a, b| b.cmp(a));
        let index = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        GradedPiece { nvars, degree, monomials: mons, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &Monomial) -> usize {
        self.index[m]
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<E> {
    nvars: usize,
    degree: u32,
    /// Descending monomial order, nonzero coefficients.
    terms: Vec<(Monomial, E)>,
}

pub const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl<E: Clone + PartialEq> MultiPoly<E> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        MultiPoly { nvars, degree, terms: vec![] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    /// True if the variable does not occur.
    pub fn free_of(&self, var: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.0[var] == 0)
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> MultiPoly<E> {
    /// Combine, drop zeros and sort. Panics on inhomogeneous terms.
    pub fn from_terms<F: Field<Elem = E>>(f: &F, nvars: usize, degree: u32, terms: Vec<(Monomial, E)>) -> Self {
        let mut map: HashMap<Monomial, E> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "inhomogeneous term");
            debug_assert!((nvars..MAX_VARS).all(|i| m.0[i] == 0));
            match map.get_mut(&m) {
                Some(acc) => *acc = f.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, E)> = map.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { nvars, degree, terms }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nvars: usize, c: E) -> Self {
        Self::from_terms(f, nvars, 0, vec![(Monomial::default(), c)])
    }

    pub fn var<F: Field<Elem = E>>(f: &F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        MultiPoly { nvars, degree: 1, terms: vec![(Monomial::var(i), f.one())] }
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, nvars: usize, m: Monomial, c: E) -> Self {
        Self::from_terms(f, nvars, m.degree(), vec![(m, c)])
    }

    /// Linear form sum c_i x_i.
    pub fn linear<F: Field<Elem = E>>(f: &F, coeffs: &[E]) -> Self {
        let n = coeffs.len();
        Self::from_terms(f, n, 1, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())).collect())
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, m: &Monomial) -> E {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => f.zero(),
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.check_same(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &other.terms[j].1);
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { nvars: self.nvars, degree: self.degree, terms: out }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        MultiPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars, self.degree);
        }
        MultiPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (*m, f.mul(x, c))).collect(),
        }
    }

    pub fn mul_monomial<F: Field<Elem = E>>(&self, f: &F, m: &Monomial, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars, self.degree + m.degree());
        }
        MultiPoly {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), f.mul(x, c))).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.check_same(other);
        let degree = self.degree + other.degree;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((a.mul(b), f.mul(x, y)));
            }
        }
        Self::from_terms(f, self.nvars, degree, terms)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut acc = Self::constant(f, self.nvars, f.one());
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F, var: usize) -> Self {
        assert!(var < self.nvars);
        if self.degree == 0 {
            return Self::zero(self.nvars, 0);
        }
        let mut terms = vec![];
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut mm = *m;
            mm.0[var] -= 1;
            terms.push((mm, f.mul(c, &f.from_i64(e as i64))));
        }
        Self::from_terms(f, self.nvars, self.degree - 1, terms)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, point: &[E]) -> E {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<E>> = Vec::with_capacity(self.nvars);
        for x in point {
            let mut row = vec![f.one()];
            for k in 1..=self.degree as usize {
                row.push(f.mul(&row[k - 1], x));
            }
            powers.push(row);
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, row) in powers.iter().enumerate() {
                if m.0[i] > 0 {
                    t = f.mul(&t, &row[m.0[i] as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitute x_i := images[i]; all images share one degree and a
    /// variable count (which may differ from self's).
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let nv = images[0].nvars;
        let dimg = images.iter().find(|p| !p.is_zero()).map(|p| p.degree).unwrap_or(0);
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(self.nvars);
        for img in images {
            let mut row = vec![Self::constant(f, nv, f.one())];
            for k in 1..=self.degree as usize {
                row.push(row[k - 1].mul(f, img));
            }
            powers.push(row);
        }
        let mut acc = Self::zero(nv, self.degree * dimg);
        for (m, c) in &self.terms {
            let mut t = Self::constant(f, nv, c.clone());
            for (i, row) in powers.iter().enumerate() {
                if m.0[i] > 0 {
                    t = t.mul(f, &row[m.0[i] as usize]);
                }
            }
            acc = acc.add(f, &t);
        }
        acc
    }

    /// F'(y) = F(sum_j y_j cols[j]) for points cols[j] in the old coordinates.
    pub fn change_frame<F: Field<Elem = E>>(&self, f: &F, cols: &[Vec<E>]) -> Self {
        let n = cols.len();
        let images: Vec<Self> = (0..self.nvars)
            .map(|i| Self::linear(f, &cols.iter().map(|c| c[i].clone()).collect::<Vec<_>>()))
            .collect();
        let out = self.compose(f, &images);
        debug_assert_eq!(out.nvars, n);
        out
    }

    /// Leading coefficient 1 (zero stays zero).
    pub fn normalize<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(f, &f.inv(c).unwrap()),
        }
    }

    /// Exact quotient self / g, or None if g does not divide self.
    pub fn div_exact<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Option<Self> {
        self.check_same(g);
        let (lm, lc) = g.leading().expect("division by zero polynomial").clone();
        if self.is_zero() {
            return Some(Self::zero(self.nvars, self.degree.saturating_sub(g.degree)));
        }
        if g.degree > self.degree {
            return None;
        }
        let lci = f.inv(&lc).unwrap();
        let mut rem = self.clone();
        let mut quot = vec![];
        while let Some((m, c)) = rem.leading().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient(&m);
            let qc = f.mul(&c, &lci);
            rem = rem.sub(f, &g.mul_monomial(f, &qm, &qc));
            quot.push((qm, qc));
        }
        Some(Self::from_terms(f, self.nvars, self.degree - g.degree, quot))
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> MultiPoly<G::Elem> {
        MultiPoly::from_terms(g, self.nvars, self.degree, self.terms.iter().map(|(m, c)| (*m, phi(c))).collect())
    }

    /// Coordinates in the graded piece (descending monomial order).
    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        let piece = GradedPiece::get(self.nvars, self.degree);
        let mut v = vec![f.zero(); piece.dim()];
        for (m, c) in &self.terms {
            v[piece.index_of(m)] = c.clone();
        }
        v
    }

    pub fn from_dense<F: Field<Elem = E>>(f: &F, nvars: usize, degree: u32, v: &[E]) -> Self {
        let piece = GradedPiece::get(nvars, degree);
        assert_eq!(v.len(), piece.dim());
        let terms = piece
            .monomials
            .iter()
            .zip(v)
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        MultiPoly { nvars, degree, terms }
    }

    /// Drop the variable `var`, which must not occur.
    pub fn drop_var(&self, var: usize) -> Result<Self> {
        if !self.free_of(var) {
            return Err(Error::InvalidInput(format!("variable {var} occurs")));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u8; MAX_VARS];
                let mut k = 0;
                for i in 0..self.nvars {
                    if i != var {
                        e[k] = m.0[i];
                        k += 1;
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect::<Vec<_>>();
        let mut out = MultiPoly { nvars: self.nvars - 1, degree: self.degree, terms };
        out.terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }

    /// Append a variable that does not occur.
    pub fn add_var(&self) -> Self {
        assert!(self.nvars < MAX_VARS);
        MultiPoly { nvars: self.nvars + 1, degree: self.degree, terms: self.terms.clone() }
    }

    /// Coefficients in powers of `var`: entry j is the coefficient form of var^j.
    pub fn coefficients_in<F: Field<Elem = E>>(&self, f: &F, var: usize) -> Vec<Self> {
        let d = self.degree;
        let mut buckets: Vec<Vec<(Monomial, E)>> = vec![vec![]; d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut mm = *m;
            mm.0[var] = 0;
            buckets[e].push((mm, c.clone()));
        }
        buckets
            .into_iter()
            .enumerate()
            .map(|(j, t)| Self::from_terms(f, self.nvars, d - j as u32, t))
            .collect()
    }

    pub fn format_with<F: Field<Elem = E>>(&self, f: &F, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = vec![];
            for i in 0..self.nvars {
                match m.0[i] {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    e => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let cs = f.format(c);
            let term = if factors.is_empty() {
                cs
            } else if f.is_one(c) {
                factors.join("*")
            } else if cs.contains(['+', '/', '*', '-']) {
                format!("({cs})*{}", factors.join("*"))
            } else {
                format!("{cs}*{}", factors.join("*"))
            };
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        let names: &[&str] = if self.nvars == 2 { &["s", "u"] } else { &VAR_NAMES };
        self.format_with(f, names)
    }

    /// Canonical text: "[e0,e1,..]:c" pairs in descending monomial order.
    pub fn canonical<F: Field<Elem = E>>(&self, f: &F) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<String> = m.0[..self.nvars].iter().map(|x| x.to_string()).collect();
                format!("[{}]:{}", e.join(","), f.format(c))
            })
            .collect();
        format!("deg {} | {}", self.degree, parts.join(" "))
    }
}

/// Parse a homogeneous polynomial with integer or fractional coefficients,
/// e.g. "x^2 - 3*y*z + 1/2*w^2". Parentheses are not supported.
pub fn parse<F: Field>(f: &F, nvars: usize, names: &[&str], text: &str) -> Result<MultiPoly<F::Elem>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(Monomial, F::Elem)> = vec![];
    let mut degree: Option<u32> = None;
    let mut chunks: Vec<(bool, String)> = vec![];
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
            chunks.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    chunks.push((neg, cur));
    for (neg, chunk) in chunks {
        if chunk.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{text}'")));
        }
        let mut coeff = f.one();
        let mut mono = Monomial::default();
        for factor in chunk.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in '{chunk}'")));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                let (n, d) = match factor.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (factor, "1"),
                };
                let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad number '{factor}'")))?;
                let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad number '{factor}'")))?;
                let v = f
                    .div(&f.from_i64(n), &f.from_i64(d))
                    .ok_or_else(|| Error::Parse(format!("zero denominator in '{factor}'")))?;
                coeff = f.mul(&coeff, &v);
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u8>().map_err(|_| Error::Parse(format!("bad exponent '{factor}'")))?),
                    None => (factor, 1),
                };
                let idx = names[..nvars]
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                mono.0[idx] += e;
            }
        }
        if neg {
            coeff = f.neg(&coeff);
        }
        match degree {
            None => degree = Some(mono.degree()),
            Some(d) if d != mono.degree() => {
                return Err(Error::Parse(format!("'{text}' is not homogeneous")));
            }
            _ => {}
        }
        terms.push((mono, coeff));
    }
    Ok(MultiPoly::from_terms(f, nvars, degree.unwrap(), terms))
}

/// All products of `gens` of total degree k (with repetition), i.e. a
/// spanning set of Sym^k of their span.
pub fn symmetric_products<F: Field>(f: &F, gens: &[MultiPoly<F::Elem>], k: u32) -> Vec<MultiPoly<F::Elem>> {
    let n = gens[0].nvars();
    let mut out = vec![];
    let mut idx = vec![0usize; k as usize];
    fn rec<F: Field>(
        f: &F,
        gens: &[MultiPoly<F::Elem>],
        start: usize,
        depth: usize,
        idx: &mut Vec<usize>,
        acc: MultiPoly<F::Elem>,
        out: &mut Vec<MultiPoly<F::Elem>>,
    ) {
        if depth == idx.len() {
            out.push(acc);
            return;
        }
        for i in start..gens.len() {
            idx[depth] = i;
            rec(f, gens, i, depth + 1, idx, acc.mul(f, &gens[i]), out);
        }
    }
    rec(f, gens, 0, 0, &mut idx, MultiPoly::constant(f, n, f.one()), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let xy = Monomial([1, 1, 0, 0]);
        let z2 = Monomial([0, 0, 2, 0]);
        let x2 = Monomial([2, 0, 0, 0]);
        let yz = Monomial([0, 1, 1, 0]);
        let xz = Monomial([1, 0, 1, 0]);
        assert!(x2 > xy && xy > Monomial([0, 2, 0, 0]));
        assert!(Monomial([0, 2, 0, 0]) > xz && xz > yz && yz > z2);
        assert!(z2 < Monomial([0, 0, 0, 3]));
    }

    #[test]
    fn piece_dimensions() {
        assert_eq!(GradedPiece::get(4, 4).dim(), 35);
        assert_eq!(GradedPiece::get(3, 4).dim(), 15);
        assert_eq!(GradedPiece::get(2, 7).dim(), 8);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let f = fp();
        let p = parse(&f, 4, &VAR_NAMES, "x^2 - 3*y*z + 5*w^2").unwrap();
        let q = parse(&f, 4, &VAR_NAMES, &p.format(&f).replace(" + ", "+")).unwrap();
        assert_eq!(p, q);
        assert!(parse(&f, 4, &VAR_NAMES, "x^2 + y").is_err());
    }

    #[test]
    fn derivative_examples() {
        let f = fp();
        let p = parse(&f, 3, &VAR_NAMES, "x*z^2").unwrap();
        assert_eq!(p.derivative(&f, 0), parse(&f, 3, &VAR_NAMES, "z^2").unwrap());
        let y4 = parse(&f, 3, &VAR_NAMES, "y^4").unwrap();
        assert!(y4.derivative(&f, 0).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = fp();
        let a = parse(&f, 3, &VAR_NAMES, "x^2 + y*z").unwrap();
        let b = parse(&f, 3, &VAR_NAMES, "x - 2*z").unwrap();
        let prod = a.mul(&f, &b);
        assert_eq!(prod.div_exact(&f, &b), Some(a.clone()));
        assert_eq!(prod.div_exact(&f, &a), Some(b));
        assert!(a.div_exact(&f, &parse(&f, 3, &VAR_NAMES, "y").unwrap()).is_none());
    }

    #[test]
    fn frame_change_evaluates_consistently() {
        let f = fp();
        let p = parse(&f, 3, &VAR_NAMES, "x^2*y + 7*z^3 - y*z^2").unwrap();
        let cols = vec![vec![1, 2, 3], vec![0, 1, 5], vec![4, 0, 1]];
        let q = p.change_frame(&f, &cols);
        let pt = [3u64, 9, 11];
        let img: Vec<u64> = (0..3)
            .map(|i| f.sum(cols.iter().zip(&pt).map(|(c, t)| f.mul(&c[i], t)).collect::<Vec<_>>().iter()))
            .collect();
        assert_eq!(q.eval(&f, &pt), p.eval(&f, &img));
    }
}
