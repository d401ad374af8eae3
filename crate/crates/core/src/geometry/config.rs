use num::complex::Complex64;
use num::{BigRational, One, Zero};
use serde::Serialize;

use super::{PluckerVector, RANK_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::point::ProjPoint;
use crate::poly::{Monomial, MonomialIndex, RationalPoly};

/// Hard cap on subset extensions in the curve search.
pub const SUBSET_CAP: u64 = 10_000_000;

/// Point tolerance used to call two floating points equal.
const SAME_POINT_TOL: f64 = 1e-8;

/// A set of points on one line, with the line's Plücker coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineIncidence {
    pub points: Vec<usize>,
    pub line: PluckerVector,
}

/// `k·d` points lying on a common plane curve of degree `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveCandidate {
    pub k: u32,
    pub curve: String,
    pub points: Vec<usize>,
    /// Always `"unchecked"`: a reducible curve does not violate the condition.
    pub irreducibility: &'static str,
}

/// Status of the curve search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CurveSearch {
    NotRun,
    Complete { extensions: u64 },
    Inconclusive { extensions: u64 },
}

/// Violations of the necessary conditions for a point set to lie in a
/// zero-dimensional eigenscheme of a tensor of order `d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigReport {
    pub collinear_violations: Vec<LineIncidence>,
    pub sharp_lines: Vec<LineIncidence>,
    pub curve_candidates: Vec<CurveCandidate>,
    pub curve_search: CurveSearch,
}

impl ConfigReport {
    fn empty() -> Self {
        ConfigReport {
            collinear_violations: Vec::new(),
            sharp_lines: Vec::new(),
            curve_candidates: Vec::new(),
            curve_search: CurveSearch::NotRun,
        }
    }

    /// No line with `d + 1` points and no curve candidate.
    pub fn is_clean(&self) -> bool {
        self.collinear_violations.is_empty() && self.curve_candidates.is_empty()
    }
}

fn validate(points: &[ProjPoint]) -> Result<usize> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {}", points.len())));
    }
    let nv = points[0].len();
    for (b, q) in points.iter().enumerate() {
        if q.len() != nv {
            return Err(Error::Dimension { expected: nv, found: q.len() });
        }
        if let Some(a) = points[..b].iter().position(|p| p.same_as(q, SAME_POINT_TOL)) {
            return Err(Error::DuplicatePoint(a, b));
        }
    }
    Ok(nv)
}

fn all_rational(points: &[ProjPoint]) -> bool {
    points.iter().all(|p| p.as_rational().is_some())
}

/// Rank of the matrix whose rows are the given points.
fn point_rank(points: &[&ProjPoint]) -> usize {
    if points.iter().all(|p| p.as_rational().is_some()) {
        let cols = points[0].len();
        let rows = points.iter().map(|p| p.as_rational().expect("rational").to_vec()).collect();
        linalg::rank(&RatMatrix::from_rows(cols, rows).expect("equal lengths"))
    } else {
        let rows: Vec<Vec<Complex64>> = points.iter().map(|p| p.to_complex().coords().to_vec()).collect();
        linalg::numeric_rank(&rows, RANK_TOL)
    }
}

/// Groups the points by the lines they span. Lines with at least `d + 1`
/// points are violations; lines with exactly `d` points show the bound is
/// attained.
pub fn collinearity_report(points: &[ProjPoint], d: u32) -> Result<ConfigReport> {
    validate(points)?;
    let m = points.len();
    let mut covered = vec![vec![false; m]; m];
    let mut report = ConfigReport::empty();
    for a in 0..m {
        for b in a + 1..m {
            if covered[a][b] {
                continue;
            }
            let mut on_line = vec![a, b];
            for c in b + 1..m {
                if point_rank(&[&points[a], &points[b], &points[c]]) <= 2 {
                    on_line.push(c);
                }
            }
            for &u in &on_line {
                for &v in &on_line {
                    covered[u][v] = true;
                }
            }
            let count = on_line.len() as u32;
            if count >= d {
                let line = PluckerVector::wedge(&points[a], &points[b])?;
                let incidence = LineIncidence { points: on_line, line };
                if count > d {
                    report.collinear_violations.push(incidence);
                } else {
                    report.sharp_lines.push(incidence);
                }
            }
        }
    }
    Ok(report)
}

/// For `k = 2..d-1`, finds the `k·d`-subsets of plane points lying on a common
/// curve of degree `k`. Prefixes whose evaluation rows already have full rank
/// are pruned.
pub fn curve_incidence_report(points: &[ProjPoint], d: u32) -> Result<ConfigReport> {
    let nv = validate(points)?;
    if nv != 3 {
        return Err(Error::InvalidArgument(format!("curve incidence needs points in the plane, got {} coordinates", nv)));
    }
    let mut report = ConfigReport::empty();
    let mut extensions = 0u64;
    let exact = all_rational(points);
    for k in 2..d {
        let size = (k * d) as usize;
        if points.len() < size {
            continue;
        }
        let index = MonomialIndex::new(3, k);
        let mut search = Search {
            points,
            index: &index,
            exact,
            size,
            k,
            extensions: &mut extensions,
            found: Vec::new(),
        };
        let ok = search.run();
        let found = std::mem::take(&mut search.found);
        report.curve_candidates.extend(found);
        if !ok {
            report.curve_search = CurveSearch::Inconclusive { extensions };
            return Ok(report);
        }
    }
    report.curve_search = CurveSearch::Complete { extensions };
    Ok(report)
}

/// Both reports; the curve part only for points in the plane.
pub fn configuration_report(points: &[ProjPoint], d: u32) -> Result<ConfigReport> {
    let mut report = collinearity_report(points, d)?;
    if points[0].len() == 3 {
        let curves = curve_incidence_report(points, d)?;
        report.curve_candidates = curves.curve_candidates;
        report.curve_search = curves.curve_search;
    }
    Ok(report)
}

struct Search<'a> {
    points: &'a [ProjPoint],
    index: &'a MonomialIndex,
    exact: bool,
    size: usize,
    k: u32,
    extensions: &'a mut u64,
    found: Vec<CurveCandidate>,
}

impl Search<'_> {
    /// Returns `false` when the extension cap is hit.
    fn run(&mut self) -> bool {
        let span = if self.exact { Span::Exact(Vec::new()) } else { Span::Float(Vec::new()) };
        let mut chosen = Vec::with_capacity(self.size);
        self.extend(0, &mut chosen, &span)
    }

    fn extend(&mut self, start: usize, chosen: &mut Vec<usize>, span: &Span) -> bool {
        if chosen.len() == self.size {
            self.record(chosen);
            return true;
        }
        let need = self.size - chosen.len();
        for i in start..=self.points.len() - need {
            *self.extensions += 1;
            if *self.extensions > SUBSET_CAP {
                return false;
            }
            let mut next = span.clone();
            next.insert(self.row(i));
            if next.rank() >= self.index.len() {
                continue;
            }
            chosen.push(i);
            let ok = self.extend(i + 1, chosen, &next);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn row(&self, i: usize) -> Row {
        match &self.points[i] {
            ProjPoint::Rational(c) if self.exact => {
                Row::Exact(self.index.basis().iter().map(|m| eval_exact(m, c)).collect())
            }
            p => {
                let c = p.to_complex();
                Row::Float(self.index.basis().iter().map(|m| eval_float(m, c.coords())).collect())
            }
        }
    }

    fn record(&mut self, chosen: &[usize]) {
        let curve = if self.exact {
            let rows = chosen
                .iter()
                .map(|&i| match self.row(i) {
                    Row::Exact(r) => r,
                    Row::Float(_) => unreachable!("exact search"),
                })
                .collect();
            let m = RatMatrix::from_rows(self.index.len(), rows).expect("equal lengths");
            let v = linalg::kernel_basis(&m).vectors.into_iter().next().expect("rank-deficient subset");
            RationalPoly::from_coefficients(self.index, &linalg::normalize_first_nonzero(&v)).to_string()
        } else {
            let rows: Vec<Vec<Complex64>> = chosen
                .iter()
                .map(|&i| match self.row(i) {
                    Row::Float(r) => r,
                    Row::Exact(_) => unreachable!("float search"),
                })
                .collect();
            format_complex_form(self.index, &linalg::numeric_null_vector(&rows, self.index.len()))
        };
        self.found.push(CurveCandidate { k: self.k, curve, points: chosen.to_vec(), irreducibility: "unchecked" });
    }
}

enum Row {
    Exact(Vec<BigRational>),
    Float(Vec<Complex64>),
}

/// Span of the rows chosen so far: reduced rows with pivots for exact data, an
/// orthonormal basis for floating data.
#[derive(Clone)]
enum Span {
    Exact(Vec<(usize, Vec<BigRational>)>),
    Float(Vec<Vec<Complex64>>),
}

impl Span {
    fn rank(&self) -> usize {
        match self {
            Span::Exact(r) => r.len(),
            Span::Float(r) => r.len(),
        }
    }

    fn insert(&mut self, row: Row) {
        match (self, row) {
            (Span::Exact(basis), Row::Exact(mut r)) => {
                for (p, b) in basis.iter() {
                    if !r[*p].is_zero() {
                        let f = r[*p].clone();
                        for (x, y) in r.iter_mut().zip(b) {
                            *x -= &f * y;
                        }
                    }
                }
                if let Some(p) = r.iter().position(|x| !x.is_zero()) {
                    let inv = BigRational::one() / &r[p];
                    for x in r.iter_mut() {
                        *x *= &inv;
                    }
                    basis.push((p, r));
                }
            }
            (Span::Float(basis), Row::Float(mut r)) => {
                let norm0 = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                for b in basis.iter() {
                    let dot: Complex64 = b.iter().zip(&r).map(|(u, v)| u.conj() * v).sum();
                    for (x, y) in r.iter_mut().zip(b) {
                        *x -= dot * y;
                    }
                }
                let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm > RANK_TOL * norm0.max(1.0) {
                    basis.push(r.into_iter().map(|z| z / norm).collect());
                }
            }
            _ => unreachable!("row kind matches span kind"),
        }
    }
}

fn eval_exact(m: &Monomial, c: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for (x, &e) in c.iter().zip(m.exponents()) {
        for _ in 0..e {
            acc *= x;
        }
    }
    acc
}

fn eval_float(m: &Monomial, c: &[Complex64]) -> Complex64 {
    c.iter().zip(m.exponents()).fold(Complex64::one(), |acc, (z, &e)| acc * z.powu(e))
}

fn format_complex_form(index: &MonomialIndex, v: &[Complex64]) -> String {
    let scale = v.iter().copied().find(|z| z.norm() > 1e-12).unwrap_or(Complex64::one());
    let terms: Vec<String> = index
        .basis()
        .iter()
        .zip(v)
        .map(|(m, z)| (m, z / scale))
        .filter(|(_, z)| z.norm() > 1e-10)
        .map(|(m, z)| format!("({:.12}{:+.12}i)*{}", z.re, z.im, m))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
