//! One-parameter families `f_t`: exceptional parameters, generic invariants,
//! constancy and continuity of the invariants, braids of critical values and
//! the resulting verdict.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::complex::CRat;
use crate::elimination::{content, discriminant, gcd_split, resultant, UniPoly};
use crate::error::{Error, Result};
use crate::invariants::{delta_pencil, invariant_record_with, InvariantRecord, ValueSet, INTEGER_NAMES};
use crate::poly::{make_y_monic, MPoly, Monomial, Rat, Var};
use crate::qpoly::QPoly;
use crate::roots::{match_values, real_roots_in, AlgebraicValueSet, Matching, RealRoot};
use crate::singular::probe_values;

/// Largest numerator and denominator degree tried when reconstructing generic
/// critical values as rational functions of `t`.
const MAX_RECONSTRUCTION_DEGREE: usize = 12;
/// Braid events are localized to t-boxes of at most this width.
const EVENT_WIDTH_BITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    pub poly: MPoly,
    pub interval: (Rat, Rat),
}

impl PolyFamily {
    pub fn new(poly: MPoly, interval: (Rat, Rat)) -> Result<Self> {
        if poly.involves(Var::S) || poly.involves(Var::X0) {
            return Err(Error::Unsupported(format!(
                "{} must be a polynomial in x, y and t",
                poly
            )));
        }
        if interval.0 > interval.1 {
            return Err(Error::Precondition("empty parameter interval".into()));
        }
        match poly.degree_in_vars(&[Var::X, Var::Y]) {
            Some(d) if d >= 1 => Ok(PolyFamily { poly, interval }),
            _ => Err(Error::ConstantPolynomial),
        }
    }

    /// The family over `[0, 1]`.
    pub fn unit(poly: MPoly) -> Result<Self> {
        PolyFamily::new(poly, (Rat::zero(), Rat::one()))
    }

    pub fn at(&self, tau: &Rat) -> MPoly {
        self.poly.subst_rat(Var::T, tau)
    }

    /// Degree in `x, y` for generic `t`.
    pub fn generic_degree(&self) -> u32 {
        self.poly.degree_in_vars(&[Var::X, Var::Y]).unwrap_or(0)
    }

    fn contains(&self, tau: &Rat) -> bool {
        &self.interval.0 <= tau && tau <= &self.interval.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExceptionalTag {
    DegreeDrop,
    LcVanishing,
    QStructureChange,
    CriticalPointEscape,
    ValueCollision,
}

impl ExceptionalTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ExceptionalTag::DegreeDrop => "degree-drop",
            ExceptionalTag::LcVanishing => "lc-vanishing",
            ExceptionalTag::QStructureChange => "q-structure-change",
            ExceptionalTag::CriticalPointEscape => "critical-point-escape",
            ExceptionalTag::ValueCollision => "value-collision",
        }
    }
}

impl fmt::Display for ExceptionalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exceptional parameters sharing a set of tags: the roots of `factor` in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPiece {
    pub factor: QPoly,
    pub tags: Vec<ExceptionalTag>,
    /// Real roots of `factor` inside the interval.
    pub roots: Vec<RealRoot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExceptionalSet {
    pub pieces: Vec<ExceptionalPiece>,
}

impl ExceptionalSet {
    fn build(sources: Vec<(ExceptionalTag, QPoly)>, interval: &(Rat, Rat)) -> Result<Self> {
        let sources: Vec<(ExceptionalTag, QPoly)> = sources
            .into_iter()
            .filter(|(_, p)| !p.is_zero() && p.deg() > 0)
            .map(|(t, p)| (t, p.squarefree_part().monic()))
            .collect();
        if sources.is_empty() {
            return Ok(ExceptionalSet::default());
        }
        let mut base = QPoly::one();
        for (_, p) in &sources {
            let g = base.gcd(p);
            base = base.mul(&p.div_exact(&g)?);
        }
        let tests: Vec<QPoly> = sources.iter().map(|(_, p)| p.clone()).collect();
        let mut pieces = Vec::new();
        for (factor, pattern) in gcd_split(&base.monic(), &tests)? {
            let mut tags: Vec<ExceptionalTag> = sources
                .iter()
                .zip(&pattern)
                .filter(|(_, hit)| **hit)
                .map(|((t, _), _)| *t)
                .collect();
            tags.sort();
            tags.dedup();
            let roots = real_roots_in(&factor, &interval.0, &interval.1)?;
            pieces.push(ExceptionalPiece { factor, tags, roots });
        }
        pieces.sort_by_key(|p| (p.tags.clone(), p.factor.deg(), format!("{:?}", p.factor)));
        Ok(ExceptionalSet { pieces })
    }

    /// Product of all exceptional factors, including roots outside the interval.
    pub fn polynomial(&self) -> QPoly {
        self.pieces.iter().fold(QPoly::one(), |acc, p| acc.mul(&p.factor))
    }

    /// Rational exceptional parameters in the interval, increasing.
    pub fn rational_in_interval(&self) -> Vec<(Rat, Vec<ExceptionalTag>)> {
        let mut out: Vec<(Rat, Vec<ExceptionalTag>)> = self
            .pieces
            .iter()
            .flat_map(|p| p.roots.iter().filter_map(move |r| r.exact.clone().map(|e| (e, p.tags.clone()))))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Irrational exceptional parameters in the interval, as isolating intervals.
    pub fn irrational_in_interval(&self) -> Vec<(RealRoot, Vec<ExceptionalTag>)> {
        let mut out: Vec<(RealRoot, Vec<ExceptionalTag>)> = self
            .pieces
            .iter()
            .flat_map(|p| p.roots.iter().filter(|r| r.exact.is_none()).map(move |r| (r.clone(), p.tags.clone())))
            .collect();
        out.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
        out
    }

    pub fn is_empty_in_interval(&self) -> bool {
        self.pieces.iter().all(|p| p.roots.is_empty())
    }
}

/// Critical values for generic `t` sharing `(mu_c, lambda_c)`: the roots in
/// `s` of `factor`, a polynomial in `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericCluster {
    pub factor: MPoly,
    pub count: usize,
    pub mu: u32,
    pub lambda: u32,
    /// The values as rational functions `(numerator, denominator)` of `t`,
    /// when every root of `factor` is one.
    pub values: Option<Vec<(QPoly, QPoly)>>,
}

/// Invariants holding for all but finitely many `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRecord {
    pub integers: [u32; 6],
    pub k: u32,
    pub b_aff: Vec<GenericCluster>,
    pub b_inf: Vec<GenericCluster>,
    pub b: Vec<GenericCluster>,
    /// Points of the singular locus at infinity with their generic `nu`,
    /// as found at the sample parameters.
    pub sigma: Vec<(String, u32)>,
    /// Generic parameters at which the record was computed and checked.
    pub samples: Vec<Rat>,
}

impl GenericRecord {
    fn product(clusters: &[GenericCluster]) -> MPoly {
        clusters.iter().fold(MPoly::one(), |acc, c| acc.mul(&c.factor))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericAnalysis {
    pub record: GenericRecord,
    pub exceptional: ExceptionalSet,
}

type Signature = ([u32; 6], Vec<Vec<(u32, u32, usize)>>);

fn signature(rec: &InvariantRecord) -> Signature {
    let sets = [&rec.b_aff, &rec.b_inf, &rec.b]
        .iter()
        .map(|vs| vs.clusters.iter().map(|c| (c.mu, c.lambda, c.len())).collect())
        .collect();
    (rec.integers(), sets)
}

fn t_poly(p: &MPoly) -> Result<QPoly> {
    QPoly::from_mpoly(p, Var::T)
}

/// Exceptional sources visible before any specialization: degree drop,
/// vanishing of the `y^d` coefficient, the `t`-structure of `q1` and the
/// escape of critical points.
fn symbolic_sources(fam: &PolyFamily) -> Result<Vec<(ExceptionalTag, QPoly)>> {
    let f = &fam.poly;
    let mut out = Vec::new();
    let top = f.degree_forms(&[Var::X, Var::Y]).into_iter().next().unwrap_or_default();
    let mut by_monomial: BTreeMap<(u32, u32), MPoly> = BTreeMap::new();
    for (m, c) in top.terms() {
        let key = (m.exp(Var::X), m.exp(Var::Y));
        let rest = Monomial::var(Var::T, m.exp(Var::T));
        by_monomial.entry(key).or_default().add_term(rest, c.clone());
    }
    let mut g = QPoly::zero();
    for c in by_monomial.values() {
        g = g.gcd(&t_poly(c)?);
    }
    out.push((ExceptionalTag::DegreeDrop, g));

    let (sheared, _) = make_y_monic(f)?;
    let lc = sheared.coeffs_in(Var::Y).pop().unwrap_or_default();
    out.push((ExceptionalTag::LcVanishing, t_poly(&lc)?));

    let (delta, _) = delta_pencil(f)?;
    let q1 = UniPoly::from_mpoly(&delta.lc(), Var::S);
    out.push((ExceptionalTag::QStructureChange, t_poly(&q1.lc())?));
    out.push((ExceptionalTag::QStructureChange, t_poly(&content(&q1, Var::T)?)?));

    if fam.generic_degree() >= 2 {
        let gx = UniPoly::from_mpoly(&sheared.partial(Var::X), Var::Y);
        let gy = UniPoly::from_mpoly(&sheared.partial(Var::Y), Var::Y);
        let r = resultant(&gx, &gy)?;
        if r.is_zero() {
            return Err(Error::NonIsolated);
        }
        if r.involves(Var::X) {
            let ru = UniPoly::from_mpoly(&r, Var::X);
            out.push((ExceptionalTag::CriticalPointEscape, t_poly(&ru.lc())?));
            out.push((ExceptionalTag::CriticalPointEscape, t_poly(&content(&ru, Var::T)?)?));
        }
    }
    Ok(out)
}

/// Solves `p(t_i) = v_i q(t_i)` with `deg p, deg q <= deg`, using the first
/// `2 deg + 1` points, and checks the result on all points.
fn reconstruct_rational(points: &[(Rat, Rat)], deg: usize) -> Option<(QPoly, QPoly)> {
    let n = 2 * deg + 1;
    if points.len() < n {
        return None;
    }
    let cols = 2 * deg + 2;
    let mut rows: Vec<Vec<Rat>> = points[..n]
        .iter()
        .map(|(t, v)| {
            let mut row = Vec::with_capacity(cols);
            let mut pw = Rat::one();
            let mut pows = Vec::with_capacity(deg + 1);
            for _ in 0..=deg {
                pows.push(pw.clone());
                pw = &pw * t;
            }
            row.extend(pows.iter().cloned());
            row.extend(pows.iter().map(|p| -(p * v)));
            row
        })
        .collect();
    let null = null_vector(&mut rows, cols)?;
    let p = QPoly::new(null[..=deg].to_vec());
    let q = QPoly::new(null[deg + 1..].to_vec());
    if q.is_zero() {
        return None;
    }
    let g = p.gcd(&q);
    let (p, q) = if g.is_zero() || g.deg() == 0 {
        (p, q)
    } else {
        (p.div_exact(&g).ok()?, q.div_exact(&g).ok()?)
    };
    let s = Rat::one() / q.lc();
    let (p, q) = (p.scale(&s), q.scale(&s));
    for (t, v) in points {
        let qt = q.eval(t);
        if qt.is_zero() || p.eval(t) != v * qt {
            return None;
        }
    }
    Some((p, q))
}

/// Some nonzero solution of the homogeneous system, by row reduction.
fn null_vector(rows: &mut [Vec<Rat>], cols: usize) -> Option<Vec<Rat>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let d = &factor * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); cols];
    x[free] = Rat::one();
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = -rows[i][free].clone();
    }
    Some(x)
}

/// Lifts the clusters of one value set from samples to polynomials in `s, t`.
fn lift_clusters(samples: &[(Rat, &ValueSet)], deg: usize) -> Option<Vec<GenericCluster>> {
    let first = samples[0].1;
    let mut out = Vec::new();
    for (ci, c) in first.clusters.iter().enumerate() {
        let n = c.factor.deg();
        let mut num = Vec::with_capacity(n + 1);
        let mut den = Vec::with_capacity(n + 1);
        for j in 0..n {
            let pts: Vec<(Rat, Rat)> = samples
                .iter()
                .map(|(t, vs)| (t.clone(), vs.clusters[ci].factor.coeff(j)))
                .collect();
            let (p, q) = reconstruct_rational(&pts, deg)?;
            num.push(p);
            den.push(q);
        }
        num.push(QPoly::one());
        den.push(QPoly::one());
        let mut l = QPoly::one();
        for q in &den {
            let g = l.gcd(q);
            l = l.mul(&q.div_exact(&g).ok()?);
        }
        let mut factor = MPoly::zero();
        for j in 0..=n {
            let cj = num[j].mul(&l.div_exact(&den[j]).ok()?);
            factor = factor.add(&cj.to_mpoly(Var::T).mul(&MPoly::var(Var::S).pow(j as u32)));
        }
        let factor = factor.primitive_integer();
        let values = rational_values(&factor, &samples[0].0, deg.max(2));
        out.push(GenericCluster { factor, count: n, mu: c.mu, lambda: c.lambda, values });
    }
    Some(out)
}

fn series_mul(a: &QPoly, b: &QPoly, n: usize) -> QPoly {
    let mut c = vec![Rat::zero(); n];
    for (i, x) in a.coeffs().iter().enumerate().take(n) {
        for (j, y) in b.coeffs().iter().enumerate().take(n - i) {
            c[i + j] += x * y;
        }
    }
    QPoly::new(c)
}

/// Inverse of a power series with nonzero constant term, modulo `u^n`.
fn series_inv(a: &QPoly, n: usize) -> QPoly {
    let a0 = a.coeff(0);
    let mut inv = vec![Rat::zero(); n];
    inv[0] = Rat::one() / &a0;
    for k in 1..n {
        let mut acc = Rat::zero();
        for j in 1..=k {
            acc += a.coeff(j) * &inv[k - j];
        }
        inv[k] = -acc / &a0;
    }
    QPoly::new(inv)
}

/// The roots in `Q(t)` of `factor(s, t)`, found by Newton lifting the rational
/// roots at `t = tau` to power series in `t - tau`, Pade approximation and an
/// exact check. `None` unless every root is rational in `t` of degree at most
/// `max_deg`.
fn rational_values(factor: &MPoly, tau: &Rat, max_deg: usize) -> Option<Vec<(QPoly, QPoly)>> {
    let f = UniPoly::from_mpoly(factor, Var::S);
    let coeffs: Vec<QPoly> = f
        .coeffs()
        .iter()
        .map(|c| t_poly(c).map(|q| q.taylor_shift(tau)))
        .collect::<Result<_>>()
        .ok()?;
    let n = coeffs.len() - 1;
    let at_zero = QPoly::new(coeffs.iter().map(|c| c.coeff(0)).collect());
    let roots = crate::roots::rational_roots(&at_zero).ok()?;
    if roots.len() != n || !at_zero.is_squarefree() {
        return None;
    }
    let order = 2 * max_deg + 2;
    let eval = |r: &QPoly, deriv: bool| {
        let mut acc = QPoly::zero();
        for (j, c) in coeffs.iter().enumerate().rev() {
            let c = if deriv { c.scale(&Rat::from_integer(BigInt::from(j))) } else { c.clone() };
            if deriv && j == 0 {
                break;
            }
            acc = series_mul(&acc, r, order).add(&c);
        }
        acc
    };
    let mut out = Vec::new();
    for rho in roots {
        let mut r = QPoly::constant(rho);
        for _ in 0..=order.ilog2() + 1 {
            let step = series_mul(&eval(&r, false), &series_inv(&eval(&r, true), order), order);
            r = r.sub(&step);
        }
        let mut found = None;
        for d in 0..=max_deg {
            // q r - p = 0 modulo u^(2d+1)
            let cols = 2 * d + 2;
            let mut rows: Vec<Vec<Rat>> = (0..=2 * d)
                .map(|k| {
                    let mut row = vec![Rat::zero(); cols];
                    if k <= d {
                        row[k] = -Rat::one();
                    }
                    for j in 0..=d.min(k) {
                        row[d + 1 + j] = r.coeff(k - j);
                    }
                    row
                })
                .collect();
            let Some(v) = null_vector(&mut rows, cols) else { continue };
            let (p, q) = (QPoly::new(v[..=d].to_vec()), QPoly::new(v[d + 1..].to_vec()));
            if q.is_zero() {
                continue;
            }
            let mut check = QPoly::zero();
            for (j, c) in coeffs.iter().enumerate() {
                check = check.add(&c.mul(&p.pow(j as u32)).mul(&q.pow((n - j) as u32)));
            }
            if check.is_zero() {
                let back = -tau.clone();
                let (p, q) = (p.taylor_shift(&back), q.taylor_shift(&back));
                let g = p.gcd(&q);
                let (p, q) = if g.is_zero() || g.deg() == 0 { (p, q) } else { (p.div_exact(&g).ok()?, q.div_exact(&g).ok()?) };
                let scale = Rat::one() / q.lc();
                found = Some((p.scale(&scale), q.scale(&scale)));
                break;
            }
        }
        out.push(found?);
    }
    out.sort_by_key(|(p, q)| (q.deg(), p.deg(), format!("{:?}{:?}", p, q)));
    Some(out)
}

/// Text form of a rational function of `t`.
pub fn value_text(v: &(QPoly, QPoly)) -> String {
    if v.1.deg() == 0 {
        v.0.display_in(Var::T)
    } else {
        format!("({})/({})", v.0.display_in(Var::T), v.1.display_in(Var::T))
    }
}

/// Generic record and exceptional parameters of a family.
///
/// Exceptional sources that do not depend on the critical values are found by
/// elimination with `t` symbolic. The generic critical values are rational in
/// `t`; they are recovered from records at generic rational parameters and
/// checked on further samples, and their discriminants give the remaining
/// exceptional parameters (collisions and escapes of values).
pub fn generic_invariants(fam: &PolyFamily, precision: &Rat) -> Result<GenericAnalysis> {
    let mut sources = symbolic_sources(fam)?;
    let avoid = sources.iter().fold(QPoly::one(), |acc, (_, p)| if p.is_zero() { acc } else { acc.mul(p) });
    let probes = probe_values(&avoid, 2 * MAX_RECONSTRUCTION_DEGREE + 12);
    let mut probe_iter = probes.into_iter();

    let mut generic: Vec<(Rat, InvariantRecord)> = Vec::new();
    let mut outliers: Vec<(Rat, Option<[u32; 6]>)> = Vec::new();
    let mut sig: Option<Signature> = None;
    let mut first_errors: Vec<Error> = Vec::new();
    let mut pending: Vec<(Rat, InvariantRecord)> = Vec::new();

    let mut fill = |want: usize,
                    generic: &mut Vec<(Rat, InvariantRecord)>,
                    outliers: &mut Vec<(Rat, Option<[u32; 6]>)>,
                    sig: &mut Option<Signature>|
     -> Result<bool> {
        while generic.len() < want {
            let Some(tau) = probe_iter.next() else { return Ok(false) };
            match invariant_record_with(&fam.at(&tau), precision) {
                Ok(rec) => {
                    if sig.is_none() {
                        pending.push((tau, rec));
                        // the generic signature is the one shared by two of the first three samples
                        for i in 0..pending.len() {
                            let count = pending.iter().filter(|(_, r)| signature(r) == signature(&pending[i].1)).count();
                            if count >= 2 {
                                *sig = Some(signature(&pending[i].1));
                                break;
                            }
                        }
                        if let Some(s) = sig.as_ref() {
                            for (t, r) in pending.drain(..) {
                                if &signature(&r) == s {
                                    generic.push((t, r));
                                } else {
                                    outliers.push((t, Some(r.integers())));
                                }
                            }
                        }
                    } else if sig.as_ref() == Some(&signature(&rec)) {
                        generic.push((tau, rec));
                    } else {
                        outliers.push((tau, Some(rec.integers())));
                    }
                }
                Err(e) if e.is_input_error() => {
                    if first_errors.len() < 3 && sig.is_none() {
                        first_errors.push(e.clone());
                        if first_errors.len() == 3 && first_errors.iter().all(|x| x == &first_errors[0]) {
                            return Err(e);
                        }
                    }
                    outliers.push((tau, None));
                }
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    };

    let mut lifted = None;
    for deg in 0..=MAX_RECONSTRUCTION_DEGREE {
        if !fill(2 * deg + 3, &mut generic, &mut outliers, &mut sig)? {
            break;
        }
        let sets: Vec<Vec<(Rat, &ValueSet)>> = (0..3)
            .map(|i| {
                generic
                    .iter()
                    .map(|(t, r)| (t.clone(), [&r.b_aff, &r.b_inf, &r.b][i]))
                    .collect()
            })
            .collect();
        let parts: Option<Vec<Vec<GenericCluster>>> = sets.iter().map(|s| lift_clusters(s, deg)).collect();
        if let Some(p) = parts {
            lifted = Some(p);
            break;
        }
    }
    let Some(mut lifted) = lifted else {
        return Err(Error::Unsupported(
            "generic critical values are not rational functions of t of small degree".into(),
        ));
    };
    let b = lifted.pop().unwrap_or_default();
    let b_inf = lifted.pop().unwrap_or_default();
    let b_aff = lifted.pop().unwrap_or_default();

    for (clusters, escape_tag) in [
        (&b, None),
        (&b_aff, Some(ExceptionalTag::CriticalPointEscape)),
        (&b_inf, Some(ExceptionalTag::QStructureChange)),
    ] {
        let prod = UniPoly::from_mpoly(&GenericRecord::product(clusters), Var::S);
        if prod.deg() == 0 {
            continue;
        }
        match escape_tag {
            Some(tag) => sources.push((tag, t_poly(&prod.lc())?)),
            None => sources.push((ExceptionalTag::ValueCollision, t_poly(&discriminant(&prod)?)?)),
        }
    }
    let exceptional = ExceptionalSet::build(sources, &fam.interval)?;
    let e = exceptional.polynomial();
    let generic_integers = generic[0].1.integers();
    for (tau, ints) in &outliers {
        if ints.map_or(true, |i| i != generic_integers) && !e.eval(tau).is_zero() {
            return Err(Error::Inconsistency(format!(
                "invariants jump at t = {} outside the exceptional set",
                crate::poly::format_rat(tau)
            )));
        }
    }
    let first = &generic[0].1;
    let record = GenericRecord {
        integers: generic_integers,
        k: first.k,
        b_aff,
        b_inf,
        b,
        sigma: sigma_strings(first),
        samples: generic.iter().map(|(t, _)| t.clone()).collect(),
    };
    Ok(GenericAnalysis { record, exceptional })
}

fn sigma_strings(rec: &InvariantRecord) -> Vec<(String, u32)> {
    let mut v: Vec<(String, u32)> = rec.sigma.iter().map(|(p, nu)| (p.to_string(), *nu)).collect();
    v.sort();
    v
}

/// Full record of `f_tau`, computed from scratch.
pub fn specialize(fam: &PolyFamily, tau: &Rat, precision: &Rat) -> Result<InvariantRecord> {
    if !fam.contains(tau) {
        return Err(Error::Precondition(format!(
            "t = {} lies outside the interval",
            crate::poly::format_rat(tau)
        )));
    }
    invariant_record_with(&fam.at(tau), precision)
}

/// A specialized parameter checked against the generic record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedPoint {
    pub tau: Rat,
    pub tags: Vec<ExceptionalTag>,
    pub endpoint: bool,
    pub outcome: std::result::Result<InvariantRecord, Error>,
}

impl CheckedPoint {
    pub fn integers(&self) -> Option<[u32; 6]> {
        self.outcome.as_ref().ok().map(|r| r.integers())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpWitness {
    /// Parameter box `[lo, hi]`; a rational parameter has `lo = hi`.
    pub lo: Rat,
    pub hi: Rat,
    pub generic: [u32; 6],
    /// Integers at the parameter, or the reason they could not be computed.
    pub value: std::result::Result<[u32; 6], String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstancyRow {
    pub name: &'static str,
    pub generic: u32,
    pub constant: bool,
    pub witnesses: Vec<JumpWitness>,
    /// Irrational exceptional parameters where the row could not be checked.
    pub unresolved: Vec<RealRoot>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constancy {
    pub rows: Vec<ConstancyRow>,
    pub points: Vec<CheckedPoint>,
}

impl Constancy {
    pub fn row(&self, name: &str) -> Option<&ConstancyRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    fn holds(&self, i: usize) -> bool {
        self.rows[i].constant && self.rows[i].unresolved.is_empty()
    }
}

/// Records at the endpoints and at every rational exceptional parameter in the interval.
pub fn checked_points(fam: &PolyFamily, ex: &ExceptionalSet, precision: &Rat) -> Vec<CheckedPoint> {
    let mut taus: BTreeMap<Rat, (Vec<ExceptionalTag>, bool)> = BTreeMap::new();
    for (tau, tags) in ex.rational_in_interval() {
        taus.entry(tau).or_default().0.extend(tags);
    }
    for tau in [&fam.interval.0, &fam.interval.1] {
        taus.entry(tau.clone()).or_default().1 = true;
    }
    taus.into_iter()
        .map(|(tau, (mut tags, endpoint))| {
            tags.sort();
            tags.dedup();
            let outcome = specialize(fam, &tau, precision);
            CheckedPoint { tau, tags, endpoint, outcome }
        })
        .collect()
}

/// Compares each of the six integers at the checked points with its generic value.
pub fn check_constancy(fam: &PolyFamily, generic: &GenericAnalysis, precision: &Rat) -> Constancy {
    let points = checked_points(fam, &generic.exceptional, precision);
    constancy_of(&generic.record, &generic.exceptional, points)
}

fn constancy_of(g: &GenericRecord, ex: &ExceptionalSet, points: Vec<CheckedPoint>) -> Constancy {
    let unresolved: Vec<RealRoot> = ex.irrational_in_interval().into_iter().map(|(r, _)| r).collect();
    let rows = (0..6)
        .map(|i| {
            let mut witnesses = Vec::new();
            for p in &points {
                let value = match &p.outcome {
                    Ok(r) => Ok(r.integers()),
                    Err(e) => Err(e.to_string()),
                };
                let jumps = match &value {
                    Ok(v) => v[i] != g.integers[i],
                    Err(_) => true,
                };
                if jumps {
                    witnesses.push(JumpWitness {
                        lo: p.tau.clone(),
                        hi: p.tau.clone(),
                        generic: g.integers,
                        value,
                    });
                }
            }
            ConstancyRow {
                name: INTEGER_NAMES[i],
                generic: g.integers[i],
                constant: witnesses.is_empty(),
                witnesses,
                unresolved: unresolved.clone(),
            }
        })
        .collect();
    Constancy { rows, points }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisLayer {
    /// `mu, lambda, #B, #B_aff, #B_inf` constant.
    pub five_constant: bool,
    pub degree_constant: bool,
    pub sigma_constant: bool,
    pub nu_constant: bool,
    /// Which sufficient condition certified continuity, if any.
    pub certified_by: Option<String>,
}

/// A parameter where a critical value at infinity appears from nowhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirthWitness {
    pub tau: Rat,
    /// Values in `B_inf(tau)` that are not limits of `B_inf(t)`.
    pub born: QPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectLayer {
    pub births: Vec<BirthWitness>,
    pub unresolved: Vec<RealRoot>,
}

impl DirectLayer {
    pub fn holds(&self) -> bool {
        self.births.is_empty() && self.unresolved.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityStatus {
    /// Certified by the sufficient conditions on degree, `Sigma` and `nu`.
    ViaHypotheses,
    /// Certified only by following the roots of `q1`.
    Holds,
    Fails,
    Unresolved,
}

impl ContinuityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ContinuityStatus::ViaHypotheses => "via-hypotheses",
            ContinuityStatus::Holds => "holds",
            ContinuityStatus::Fails => "fails",
            ContinuityStatus::Unresolved => "unresolved",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Continuity {
    pub status: ContinuityStatus,
    pub hypotheses: HypothesisLayer,
    pub direct: DirectLayer,
    pub note: Option<String>,
}

/// Continuity of `B_inf(t)` over the interval, by two independent layers.
pub fn check_binfty_continuity(generic: &GenericAnalysis, constancy: &Constancy) -> Result<Continuity> {
    let g = &generic.record;
    let five_constant = (0..5).all(|i| constancy.holds(i));
    let degree_constant = constancy.holds(5);
    let unresolved: Vec<RealRoot> = generic
        .exceptional
        .irrational_in_interval()
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let sigma_at: Vec<Option<Vec<(String, u32)>>> = constancy
        .points
        .iter()
        .map(|p| p.outcome.as_ref().ok().map(sigma_strings))
        .collect();
    let names = |v: &[(String, u32)]| v.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>();
    let sigma_constant = unresolved.is_empty()
        && sigma_at.iter().all(|s| s.as_ref().is_some_and(|s| names(s) == names(&g.sigma)));
    let nu_constant = sigma_constant && sigma_at.iter().all(|s| s.as_ref() == Some(&g.sigma));
    // for n = 2 the degree condition alone suffices; the Sigma and nu
    // conditions are reported for comparison
    let certified_by = (five_constant && degree_constant).then(|| "n = 2 and deg f_t constant".to_string());
    let hypotheses = HypothesisLayer {
        five_constant,
        degree_constant,
        sigma_constant,
        nu_constant,
        certified_by,
    };

    let limit = UniPoly::from_mpoly(&GenericRecord::product(&g.b_inf), Var::S);
    let mut births = Vec::new();
    let mut direct_unresolved = unresolved;
    for p in &constancy.points {
        let Ok(rec) = &p.outcome else {
            direct_unresolved.push(RealRoot { lo: p.tau.clone(), hi: p.tau.clone(), exact: Some(p.tau.clone()) });
            continue;
        };
        let here = rec.b_inf.defining_polynomial();
        if here.deg() == 0 {
            continue;
        }
        let lim = limit.subst_rat(Var::T, &p.tau).to_qpoly()?;
        if lim.is_zero() {
            direct_unresolved.push(RealRoot { lo: p.tau.clone(), hi: p.tau.clone(), exact: Some(p.tau.clone()) });
            continue;
        }
        let common = here.gcd(&lim);
        if common.deg() < here.deg() {
            births.push(BirthWitness { tau: p.tau.clone(), born: here.div_exact(&common)?.monic() });
        }
    }
    let direct = DirectLayer { births, unresolved: direct_unresolved };
    if hypotheses.certified_by.is_some() && !direct.births.is_empty() {
        return Err(Error::Inconsistency(
            "continuity certified by the hypotheses but a critical value at infinity is born".into(),
        ));
    }
    let (status, note) = if hypotheses.certified_by.is_some() {
        (ContinuityStatus::ViaHypotheses, None)
    } else if !direct.births.is_empty() {
        (ContinuityStatus::Fails, None)
    } else if direct.holds() {
        (ContinuityStatus::Holds, Some("continuity certified by direct route".to_string()))
    } else {
        (ContinuityStatus::Unresolved, None)
    };
    Ok(Continuity { status, hypotheses, direct, note })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Collision,
    Escape,
    BirthDeath,
    Inconclusive,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Collision => "collision",
            EventKind::Escape => "escape",
            EventKind::BirthDeath => "birth-death",
            EventKind::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidEvent {
    pub kind: EventKind,
    pub lo: Rat,
    pub hi: Rat,
    /// Rational exceptional parameter inside the box, when there is one.
    pub exceptional: Option<Rat>,
}

/// Certified box around one critical value at one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandPoint {
    pub t: Rat,
    pub center: CRat,
    pub radius: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub points: Vec<StrandPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidData {
    pub samples: Vec<Rat>,
    pub strands: Vec<Strand>,
    pub events: Vec<BraidEvent>,
}

impl BraidData {
    /// `ok`, or the kind of the first event.
    pub fn status(&self) -> &'static str {
        self.events.first().map_or("ok", |e| e.kind.as_str())
    }
}

fn value_boxes(fam: &PolyFamily, tau: &Rat, precision: &Rat) -> Result<AlgebraicValueSet> {
    Ok(specialize(fam, tau, precision)?.b.boxes)
}

fn half(a: &Rat, b: &Rat) -> Rat {
    (a + b) / Rat::from_integer(BigInt::from(2))
}

/// Braid of the critical values over the interval, sampled at `grid + 1`
/// equally spaced parameters plus the rational exceptional parameters.
/// Segments over which the number of values changes are bisected until the
/// change is confined to a box of width at most `2^-10`.
pub fn braid(fam: &PolyFamily, ex: &ExceptionalSet, grid: usize, precision: &Rat) -> Result<BraidData> {
    if grid < 2 {
        return Err(Error::Precondition("grid size must be at least 2".into()));
    }
    let (a, b) = &fam.interval;
    let mut sets: BTreeMap<Rat, AlgebraicValueSet> = BTreeMap::new();
    let width = b - a;
    for i in 0..=grid {
        let tau = a + &width * Rat::new(BigInt::from(i), BigInt::from(grid));
        sets.insert(tau.clone(), value_boxes(fam, &tau, precision)?);
    }
    let exceptional: Vec<Rat> = ex.rational_in_interval().into_iter().map(|(t, _)| t).collect();
    for tau in &exceptional {
        if !sets.contains_key(tau) {
            sets.insert(tau.clone(), value_boxes(fam, tau, precision)?);
        }
    }
    let target = Rat::new(BigInt::one(), BigInt::from(2).pow(EVENT_WIDTH_BITS));
    let keys: Vec<Rat> = sets.keys().cloned().collect();
    for w in keys.windows(2) {
        let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
        let n_lo = sets[&lo].cardinality();
        if n_lo == sets[&hi].cardinality() {
            continue;
        }
        while &hi - &lo > target {
            let mid = half(&lo, &hi);
            let s = value_boxes(fam, &mid, precision)?;
            let n = s.cardinality();
            sets.insert(mid.clone(), s);
            if n == n_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    let samples: Vec<Rat> = sets.keys().cloned().collect();
    let mut strands: Vec<Strand> = Vec::new();
    let mut live: Vec<usize> = Vec::new();
    let first = &sets[&samples[0]];
    for bx in &first.boxes {
        live.push(strands.len());
        strands.push(Strand {
            points: vec![StrandPoint { t: samples[0].clone(), center: bx.center.clone(), radius: bx.radius.clone() }],
        });
    }
    let mut events = Vec::new();
    for w in samples.windows(2) {
        let (sa, sb) = (&sets[&w[0]], &sets[&w[1]]);
        let point = |i: usize| StrandPoint {
            t: w[1].clone(),
            center: sb.boxes[i].center.clone(),
            radius: sb.boxes[i].radius.clone(),
        };
        let inside = exceptional.iter().find(|e| &w[0] <= *e && *e <= &w[1]).cloned();
        match match_values(sa, sb, 3)? {
            Matching::Certified { pairs, unmatched_a, unmatched_b } => {
                let mut next = vec![usize::MAX; sb.boxes.len()];
                for (i, j) in &pairs {
                    strands[live[*i]].points.push(point(*j));
                    next[*j] = live[*i];
                }
                for j in &unmatched_b {
                    next[*j] = strands.len();
                    strands.push(Strand { points: vec![point(*j)] });
                }
                if !unmatched_a.is_empty() || !unmatched_b.is_empty() {
                    let kind = classify(sa, sb, &unmatched_a, &unmatched_b);
                    events.push(BraidEvent { kind, lo: w[0].clone(), hi: w[1].clone(), exceptional: inside });
                }
                live = next;
            }
            Matching::Inconclusive => {
                events.push(BraidEvent {
                    kind: EventKind::Inconclusive,
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    exceptional: inside,
                });
                live = (0..sb.boxes.len())
                    .map(|j| {
                        strands.push(Strand { points: vec![point(j)] });
                        strands.len() - 1
                    })
                    .collect();
            }
        }
    }
    Ok(BraidData { samples, strands, events })
}

/// An extra value next to a surviving one is a collision; a value far out
/// relative to the others is an escape; anything else is a birth or death.
fn classify(sa: &AlgebraicValueSet, sb: &AlgebraicValueSet, ua: &[usize], ub: &[usize]) -> EventKind {
    let (bigger, extra, other) = if ua.len() >= ub.len() { (sa, ua, sb) } else { (sb, ub, sa) };
    let scale = |z: &CRat| z.norm_sqr();
    let rest_max = other
        .boxes
        .iter()
        .map(|b| scale(&b.center))
        .max()
        .unwrap_or_else(Rat::zero);
    let mut kind = EventKind::BirthDeath;
    for &i in extra {
        let c = &bigger.boxes[i].center;
        let near = bigger
            .boxes
            .iter()
            .enumerate()
            .filter(|(j, _)| !extra.contains(j))
            .map(|(_, b)| b.center.sub(c).norm_sqr())
            .min();
        let tiny = Rat::new(BigInt::one(), BigInt::from(1u64 << 12));
        if near.is_some_and(|d| d < tiny) {
            kind = EventKind::Collision;
        } else if scale(c) > (rest_max.clone() + Rat::one()) * Rat::from_integer(BigInt::from(1u64 << 20)) {
            return EventKind::Escape;
        }
    }
    kind
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    FibrationsEquivalent,
    TopologicallyEquivalent,
    HypothesesFail,
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::FibrationsEquivalent => "fibrations-equivalent",
            Conclusion::TopologicallyEquivalent => "topologically-equivalent",
            Conclusion::HypothesesFail => "hypotheses-fail",
            Conclusion::Inconclusive => "inconclusive",
        }
    }

    pub fn is_equivalence(self) -> bool {
        matches!(self, Conclusion::FibrationsEquivalent | Conclusion::TopologicallyEquivalent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub theorem: Option<Theorem>,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    pub text: String,
}

fn row_hypothesis(row: &ConstancyRow) -> Hypothesis {
    let mut parts: Vec<String> = row
        .witnesses
        .iter()
        .map(|w| match &w.value {
            Ok(v) => {
                let i = INTEGER_NAMES.iter().position(|n| *n == row.name).unwrap_or(0);
                format!("t = {}: {} instead of {}", crate::poly::format_rat(&w.lo), v[i], row.generic)
            }
            Err(e) => format!("t = {}: {}", crate::poly::format_rat(&w.lo), e),
        })
        .collect();
    parts.extend(row.unresolved.iter().map(|r| {
        format!(
            "unresolved at the irrational parameter in [{}, {}]",
            crate::poly::format_rat(&r.lo),
            crate::poly::format_rat(&r.hi)
        )
    }));
    Hypothesis {
        name: format!("{} constant", row.name),
        holds: row.constant && row.unresolved.is_empty(),
        witness: if parts.is_empty() { format!("{} = {}", row.name, row.generic) } else { parts.join("; ") },
    }
}

/// Applies Theorem C, then B, then A; never asserts non-equivalence.
pub fn verdict(generic: &GenericAnalysis, constancy: &Constancy, continuity: &Continuity) -> Verdict {
    let rows: Vec<Hypothesis> = constancy.rows.iter().map(row_hypothesis).collect();
    if rows.iter().all(|h| h.holds) {
        return Verdict {
            theorem: Some(Theorem::C),
            hypotheses: rows,
            conclusion: Conclusion::TopologicallyEquivalent,
            text: "Theorem C: all six invariants are constant, so f_0 and f_1 are topologically equivalent".into(),
        };
    }
    let empty_inf = generic.record.b_inf.is_empty()
        && generic.exceptional.irrational_in_interval().is_empty()
        && constancy
            .points
            .iter()
            .all(|p| p.outcome.as_ref().is_ok_and(|r| r.b_inf.is_empty()));
    let thm_b = vec![
        rows[0].clone(),
        rows[3].clone(),
        Hypothesis {
            name: "B_inf(t) empty".into(),
            holds: empty_inf,
            witness: if empty_inf {
                "no critical values at infinity for any t".into()
            } else {
                "critical values at infinity occur".into()
            },
        },
    ];
    if thm_b.iter().all(|h| h.holds) {
        return Verdict {
            theorem: Some(Theorem::B),
            hypotheses: thm_b,
            conclusion: Conclusion::TopologicallyEquivalent,
            text: "Theorem B: mu and #B_aff are constant and B_inf(t) is empty, so f_0 and f_1 are topologically equivalent".into(),
        };
    }
    let mut thm_a: Vec<Hypothesis> = rows[..5].to_vec();
    let cont = &continuity.hypotheses;
    thm_a.push(Hypothesis {
        name: "B_inf(t) continuous".into(),
        holds: cont.certified_by.is_some(),
        witness: match (&cont.certified_by, &continuity.note) {
            (Some(by), _) => format!("certified: {}", by),
            (None, Some(note)) => format!("not certified by the sufficient conditions ({})", note),
            (None, None) => format!("not certified ({})", continuity.status.as_str()),
        },
    });
    if thm_a.iter().all(|h| h.holds) {
        return Verdict {
            theorem: Some(Theorem::A),
            hypotheses: thm_a,
            conclusion: Conclusion::FibrationsEquivalent,
            text: "Theorem A: the fibrations of f_0 and f_1 outside their bifurcation sets are fiber homotopy equivalent".into(),
        };
    }
    let certified_jump = constancy.rows[..5].iter().any(|r| !r.constant);
    let failing: Vec<String> = rows.iter().filter(|h| !h.holds).map(|h| h.name.clone()).collect();
    let mut hypotheses = rows;
    hypotheses.push(thm_a.pop().unwrap_or_else(|| Hypothesis {
        name: "B_inf(t) continuous".into(),
        holds: false,
        witness: String::new(),
    }));
    let (conclusion, text) = if certified_jump {
        (
            Conclusion::HypothesesFail,
            format!("hypotheses fail: {}; no theorem applies", failing.join(", ")),
        )
    } else {
        (
            Conclusion::Inconclusive,
            format!(
                "inconclusive: {} not established; the theorems give sufficient conditions only, so equivalence is neither certified nor refuted",
                failing.join(", ")
            ),
        )
    };
    Verdict { theorem: None, hypotheses, conclusion, text }
}

/// Everything computed for a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyAnalysis {
    pub family: PolyFamily,
    pub generic: GenericAnalysis,
    pub constancy: Constancy,
    pub continuity: Continuity,
    pub verdict: Verdict,
    pub braid: Option<BraidData>,
    pub precision: Rat,
}

/// Runs the whole family pipeline; `grid` of `None` skips the braid.
pub fn analyze(fam: &PolyFamily, grid: Option<usize>, precision: &Rat) -> Result<FamilyAnalysis> {
    let generic = generic_invariants(fam, precision)?;
    let constancy = check_constancy(fam, &generic, precision);
    let continuity = check_binfty_continuity(&generic, &constancy)?;
    let verdict = verdict(&generic, &constancy, &continuity);
    let braid = match grid {
        Some(g) => Some(braid(fam, &generic.exceptional, g, precision)?),
        None => None,
    };
    Ok(FamilyAnalysis {
        family: fam.clone(),
        generic,
        constancy,
        continuity,
        verdict,
        braid,
        precision: precision.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::default_precision;
    use crate::poly::rat_int;

    fn v(var: Var) -> MPoly {
        MPoly::var(var)
    }

    fn example1() -> PolyFamily {
        let (x, y, t) = (v(Var::X), v(Var::Y), v(Var::T));
        PolyFamily::unit(x.pow(3).mul(&y).add(&t.mul(&x.pow(2))).add(&x)).unwrap()
    }

    fn example2() -> PolyFamily {
        let (x, y, t) = (v(Var::X), v(Var::Y), v(Var::T));
        PolyFamily::unit(x.add(&t).mul(&x.mul(&y).add(&MPoly::one()))).unwrap()
    }

    fn example3() -> PolyFamily {
        let (x, y, t) = (v(Var::X), v(Var::Y), v(Var::T));
        PolyFamily::unit(x.pow(2).mul(&y).add(&t.mul(&x.pow(4))).add(&x)).unwrap()
    }

    #[test]
    fn reconstructs_rational_functions() {
        // v = (t^2 + 1) / (t - 3)
        let pts: Vec<(Rat, Rat)> = (4..11)
            .map(|i| {
                let t = rat_int(i);
                let v = (&t * &t + Rat::one()) / (&t - rat_int(3));
                (t, v)
            })
            .collect();
        assert!(reconstruct_rational(&pts, 1).is_none());
        let (p, q) = reconstruct_rational(&pts, 2).unwrap();
        assert_eq!(p, QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(q, QPoly::from_ints(&[-3, 1]));
    }

    #[test]
    fn example1_generic() {
        let g = generic_invariants(&example1(), &default_precision()).unwrap();
        assert_eq!(g.record.integers, [0, 1, 1, 0, 1, 4]);
        assert!(g.exceptional.is_empty_in_interval(), "{:?}", g.exceptional);
        assert_eq!(g.record.b_inf.len(), 1);
        assert_eq!(g.record.b_inf[0].factor, v(Var::S));
    }

    #[test]
    fn example2_generic_and_jumps() {
        let fam = example2();
        let p = default_precision();
        let g = generic_invariants(&fam, &p).unwrap();
        assert_eq!(g.record.integers, [2, 0, 2, 2, 0, 3]);
        let (s, t) = (v(Var::S), v(Var::T));
        assert_eq!(g.record.b_aff[0].factor, s.pow(2).sub(&s.mul(&t)));
        let values: Vec<String> = g.record.b_aff[0].values.as_ref().unwrap().iter().map(value_text).collect();
        assert_eq!(values, vec!["0", "t"]);
        let zero = g.exceptional.rational_in_interval();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].0.is_zero());
        assert!(zero[0].1.contains(&ExceptionalTag::CriticalPointEscape));
        assert!(zero[0].1.contains(&ExceptionalTag::QStructureChange));
        let c = check_constancy(&fam, &g, &p);
        assert!(!c.row("#B_aff").unwrap().constant);
        assert!(!c.row("#B_inf").unwrap().constant);
        let cont = check_binfty_continuity(&g, &c).unwrap();
        assert_eq!(cont.status, ContinuityStatus::Fails);
        assert_eq!(verdict(&g, &c, &cont).conclusion, Conclusion::HypothesesFail);
    }

    #[test]
    fn example3_degree_row_only() {
        let fam = example3();
        let p = default_precision();
        let a = analyze(&fam, None, &p).unwrap();
        let failing: Vec<&str> = a.constancy.rows.iter().filter(|r| !r.constant).map(|r| r.name).collect();
        assert_eq!(failing, vec!["deg"]);
        let zero = a.generic.exceptional.rational_in_interval();
        assert!(zero.iter().any(|(t, tags)| t.is_zero() && tags.contains(&ExceptionalTag::DegreeDrop)));
        assert_eq!(a.verdict.conclusion, Conclusion::Inconclusive);
        assert_eq!(a.continuity.status, ContinuityStatus::Holds);
    }

    #[test]
    fn example1_theorem_c() {
        let a = analyze(&example1(), Some(8), &default_precision()).unwrap();
        assert_eq!(a.verdict.theorem, Some(Theorem::C));
        assert_eq!(a.continuity.status, ContinuityStatus::ViaHypotheses);
        let b = a.braid.unwrap();
        assert_eq!(b.strands.len(), 1);
        assert_eq!(b.status(), "ok");
    }

    #[test]
    fn constant_family_has_flat_braid() {
        let (x, y) = (v(Var::X), v(Var::Y));
        let fam = PolyFamily::unit(x.pow(2).add(&y.pow(2))).unwrap();
        let a = analyze(&fam, Some(4), &default_precision()).unwrap();
        let b = a.braid.unwrap();
        assert_eq!(b.strands.len(), 1);
        assert!(b.strands[0].points.iter().all(|p| p.center.is_zero()));
        assert_eq!(a.verdict.theorem, Some(Theorem::C));
    }

    #[test]
    fn example2_braid_event_at_zero() {
        let fam = example2();
        let p = default_precision();
        let g = generic_invariants(&fam, &p).unwrap();
        let b = braid(&fam, &g.exceptional, 8, &p).unwrap();
        assert_eq!(b.events.len(), 1);
        let e = &b.events[0];
        assert!(e.lo <= Rat::zero() && Rat::zero() <= e.hi);
        assert!(&e.hi - &e.lo <= Rat::new(BigInt::one(), BigInt::from(1024)));
    }
}
