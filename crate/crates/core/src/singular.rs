//! Local Milnor numbers of plane germs, the singular locus at infinity and
//! the charts `F_c` used for the numbers `nu` and `lambda`.
//!
//! Every local computation runs over `K = Q[theta]/(rho)` for a squarefree
//! `rho`, so that all conjugate points of a cluster share one symbolic
//! computation. Zero tests in `K` split `rho` (dynamic evaluation); a rational
//! point is the case `rho = theta`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::complex::{eval_disk, CRat};
use crate::elimination::{gcd_split, resultant, subresultant, UniPoly};
use crate::error::{Error, Result};
use crate::poly::{rat_int, slope_sequence, MPoly, Monomial, Rat, Shear, Var, DEFAULT_SLOPE_BUDGET};
use crate::qpoly::QPoly;
use crate::roots::{isolate_squarefree, rational_roots};

/// Local coordinates of a germ: `u`, `v`, and the algebraic parameter `theta`.
const U: Var = Var::X;
const V: Var = Var::Y;
const THETA: Var = Var::X0;

/// Coefficient of `u^i v^j`, an element of `Q[theta]/(rho)`.
type Coeffs = BTreeMap<(u32, u32), QPoly>;

fn reduce(p: &MPoly, rho: &QPoly) -> Result<Coeffs> {
    let mut acc: BTreeMap<(u32, u32), Vec<Rat>> = BTreeMap::new();
    for (m, c) in p.terms() {
        if m.exp(Var::S) > 0 || m.exp(Var::T) > 0 {
            return Err(Error::Unsupported(format!(
                "germ {} still depends on a parameter",
                p
            )));
        }
        let k = m.exp(THETA) as usize;
        let e = acc.entry((m.exp(U), m.exp(V))).or_default();
        if e.len() <= k {
            e.resize(k + 1, Rat::zero());
        }
        e[k] += c;
    }
    Ok(acc
        .into_iter()
        .filter_map(|(key, v)| {
            let c = QPoly::new(v).rem(rho);
            (!c.is_zero()).then_some((key, c))
        })
        .collect())
}

fn lift(c: &Coeffs) -> MPoly {
    let mut out = MPoly::zero();
    for (&(i, j), q) in c {
        for (k, a) in q.coeffs().iter().enumerate() {
            if !a.is_zero() {
                let mut e = [0u32; crate::poly::NVARS];
                e[U.index()] = i;
                e[V.index()] = j;
                e[THETA.index()] = k as u32;
                out.add_term(Monomial(e), a.clone());
            }
        }
    }
    out
}

fn coeff(c: &Coeffs, i: u32, j: u32) -> QPoly {
    c.get(&(i, j)).cloned().unwrap_or_else(QPoly::zero)
}

/// Coefficients in `v` of `p(0, v)`.
fn on_axis(c: &Coeffs) -> Vec<QPoly> {
    let top = c.keys().filter(|k| k.0 == 0).map(|k| k.1).max();
    match top {
        None => Vec::new(),
        Some(m) => (0..=m).map(|j| coeff(c, 0, j)).collect(),
    }
}

fn reduce_vec(p: &[QPoly], h: &QPoly) -> Vec<QPoly> {
    p.iter().map(|c| c.rem(h)).collect()
}

/// Drops leading coefficients that vanish modulo `h`. Splits `h` when the
/// leading coefficient is a zero divisor.
fn trim(h: &QPoly, p: &[QPoly]) -> std::result::Result<Vec<QPoly>, (QPoly, QPoly)> {
    let mut p = p.to_vec();
    while let Some(last) = p.last() {
        if last.is_zero() {
            p.pop();
            continue;
        }
        let g = last.gcd(h);
        if g.deg() == 0 {
            return Ok(p);
        }
        let rest = h.div_exact(&g).expect("gcd divides").monic();
        return Err((g, rest));
    }
    Ok(p)
}

fn rem_mod(a: &[QPoly], b: &[QPoly], h: &QPoly) -> Vec<QPoly> {
    let mut a = a.to_vec();
    let inv = b.last().and_then(|l| l.inv_mod(h)).expect("unit leading coefficient");
    let db = b.len() - 1;
    while a.len() > db && !a.is_empty() {
        let top = a.len() - 1;
        let q = a[top].mul_mod(&inv, h);
        if !q.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let idx = top - db + j;
                a[idx] = a[idx].sub(&q.mul_mod(bj, h));
            }
        }
        a.pop();
    }
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Gcd of two polynomials with coefficients in `Q[theta]/(h)`, `h` squarefree.
///
/// Returns pieces `(h_i, g_i)` with `h = prod h_i` and `g_i` monic (empty when
/// both inputs vanish on `h_i`).
pub fn gcd_mod(h: &QPoly, a: &[QPoly], b: &[QPoly]) -> Result<Vec<(QPoly, Vec<QPoly>)>> {
    if h.deg() == 0 {
        return Ok(Vec::new());
    }
    if !h.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut work = vec![(h.monic(), a.to_vec(), b.to_vec())];
    let mut out = Vec::new();
    while let Some((h, a, b)) = work.pop() {
        let a = reduce_vec(&a, &h);
        let b = reduce_vec(&b, &h);
        let a = match trim(&h, &a) {
            Ok(a) => a,
            Err((g1, g2)) => {
                work.push((g2, a.clone(), b.clone()));
                work.push((g1, a, b));
                continue;
            }
        };
        let b = match trim(&h, &b) {
            Ok(b) => b,
            Err((g1, g2)) => {
                work.push((g2, a.clone(), b.clone()));
                work.push((g1, a, b));
                continue;
            }
        };
        if b.is_empty() {
            if a.is_empty() {
                out.push((h, a));
            } else {
                let inv = a.last().and_then(|l| l.inv_mod(&h)).expect("unit");
                let monic = a.iter().map(|c| c.mul_mod(&inv, &h)).collect();
                out.push((h, monic));
            }
            continue;
        }
        if a.len() < b.len() {
            work.push((h, b, a));
            continue;
        }
        let r = rem_mod(&a, &b, &h);
        work.push((h, b, r));
    }
    out.sort_by_key(|(h, _)| format!("{:?}", h));
    Ok(out)
}

/// A plane germ at the origin of `(u, v)`, possibly over `Q[theta]/(modulus)`.
///
/// `poly` is written in `x` (for `u`), `y` (for `v`) and `x0` (for `theta`).
/// With the default modulus `theta` the germ is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGerm {
    pub poly: MPoly,
    pub modulus: QPoly,
}

impl PlaneGerm {
    pub fn new(poly: MPoly) -> Self {
        PlaneGerm { poly, modulus: QPoly::x() }
    }

    /// The germ of `poly` (in `x`, `y`) at a rational base point, translated to the origin.
    pub fn at(poly: &MPoly, base: (&Rat, &Rat)) -> Self {
        let p = poly
            .subst(U, &MPoly::var(U).add(&MPoly::constant(base.0.clone())))
            .subst(V, &MPoly::var(V).add(&MPoly::constant(base.1.clone())));
        PlaneGerm::new(p)
    }

    pub fn over(poly: MPoly, modulus: QPoly) -> Self {
        PlaneGerm { poly, modulus }
    }

    pub fn is_rational(&self) -> bool {
        self.modulus.deg() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMilnorResult {
    pub mu: u32,
    pub shear_used: Shear,
    pub certificate: String,
}

/// Local Milnor number of a germ whose conjugate base points all carry the same number.
pub fn local_milnor(g: &PlaneGerm) -> Result<LocalMilnorResult> {
    let pieces = local_milnor_split(g)?;
    let mut it = pieces.iter();
    let first = match it.next() {
        Some((_, r)) => r.clone(),
        None => return Err(Error::Precondition("empty modulus".into())),
    };
    if it.any(|(_, r)| r.mu != first.mu) {
        return Err(Error::Unsupported(
            "conjugate base points carry different Milnor numbers".into(),
        ));
    }
    Ok(first)
}

/// Local Milnor numbers at the base points `theta = root of modulus`, grouped
/// into pieces of the modulus with a common value.
pub fn local_milnor_split(g: &PlaneGerm) -> Result<Vec<(QPoly, LocalMilnorResult)>> {
    let mut pieces = milnor_over(&g.modulus, &g.poly)?;
    pieces.sort_by(|a, b| (a.1, format!("{:?}", a.0)).cmp(&(b.1, format!("{:?}", b.0))));
    // merge pieces sharing mu and shear
    let mut out: Vec<(QPoly, LocalMilnorResult)> = Vec::new();
    for (h, mu, sh) in pieces {
        if let Some(last) = out.last_mut() {
            if last.1.mu == mu && last.1.shear_used == sh {
                last.0 = last.0.mul(&h);
                continue;
            }
        }
        let certificate = certificate_for(mu, &sh);
        out.push((h, LocalMilnorResult { mu, shear_used: sh, certificate }));
    }
    Ok(out)
}

fn certificate_for(mu: u32, sh: &Shear) -> String {
    if mu == 0 {
        "gradient nonzero at the base point".to_string()
    } else {
        format!(
            "shear {}: lc_v(g_v) a unit free of u; Res_v(g_u, g_v) nonzero; gcd of the partials on u = 0 is v^e",
            sh
        )
    }
}

/// The core routine: `(piece, mu, shear)` for the germ `g` over `Q[theta]/(rho)`.
fn milnor_over(rho: &QPoly, g: &MPoly) -> Result<Vec<(QPoly, u32, Shear)>> {
    if rho.deg() == 0 {
        return Ok(Vec::new());
    }
    if !rho.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let base = reduce(g, rho)?;
    if !coeff(&base, 0, 0).is_zero() {
        return Err(Error::Precondition(
            "germ does not vanish at its base point".into(),
        ));
    }
    let slopes: Vec<Rat> = slope_sequence(DEFAULT_SLOPE_BUDGET).collect();
    let mut out = Vec::new();
    let mut work: Vec<(QPoly, usize)> = vec![(rho.monic(), 0)];
    while let Some((piece, idx)) = work.pop() {
        let slope = slopes.get(idx).ok_or(Error::ShearBudget)?;
        let sh = Shear::new(U, V, slope.clone());
        let gs = g.apply_shear(&sh);
        let a = reduce(&gs.partial(U), &piece)?;
        let b = reduce(&gs.partial(V), &piece)?;
        for (sub, pat) in gcd_split(&piece, &[coeff(&a, 0, 0), coeff(&b, 0, 0)])? {
            if !pat[0] || !pat[1] {
                out.push((sub, 0, sh.clone()));
                continue;
            }
            // support of g_v on each sub-piece
            let keys: Vec<(u32, u32)> = b.keys().copied().collect();
            let tests: Vec<QPoly> = keys.iter().map(|k| b[k].clone()).collect();
            for (sub2, pat2) in gcd_split(&sub, &tests)? {
                let support: Vec<(u32, u32)> = keys
                    .iter()
                    .zip(&pat2)
                    .filter(|(_, z)| !**z)
                    .map(|(k, _)| *k)
                    .collect();
                let m = match support.iter().map(|k| k.1).max() {
                    Some(m) => m,
                    None => return Err(Error::NonIsolated),
                };
                if support.iter().any(|k| k.1 == m && k.0 != 0) {
                    work.push((sub2, idx + 1));
                    continue;
                }
                let a2 = reduce(&lift(&a), &sub2)?;
                let b2 = reduce(&lift(&b), &sub2)?;
                if a2.is_empty() {
                    return Err(Error::NonIsolated);
                }
                let r = resultant(
                    &UniPoly::from_mpoly(&lift(&a2), V),
                    &UniPoly::from_mpoly(&lift(&b2), V),
                )?;
                let rc = reduce(&r, &sub2)?;
                let top = rc.keys().map(|k| k.0).max().unwrap_or(0);
                let rtests: Vec<QPoly> = (0..=top).map(|i| coeff(&rc, i, 0)).collect();
                for (sub3, pat3) in gcd_split(&sub2, &rtests)? {
                    let ord = match pat3.iter().position(|z| !z) {
                        Some(o) => o as u32,
                        None => return Err(Error::NonIsolated),
                    };
                    for (sub4, gl) in gcd_mod(&sub3, &on_axis(&a2), &on_axis(&b2))? {
                        if gl.is_empty() {
                            work.push((sub4, idx + 1));
                            continue;
                        }
                        let lower = &gl[..gl.len() - 1];
                        for (sub5, pat5) in gcd_split(&sub4, lower)? {
                            if pat5.iter().all(|z| *z) {
                                if ord == 0 {
                                    return Err(Error::Inconsistency(
                                        "singular base point with nonvanishing resultant".into(),
                                    ));
                                }
                                out.push((sub5, ord, sh.clone()));
                            } else {
                                work.push((sub5, idx + 1));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Which affine chart contains a point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    /// Points `(xi : 1 : 0)`, local coordinates `(x, x0)`.
    YOne,
    /// The point `(1 : 0 : 0)`, local coordinates `(y, x0)`.
    XOne,
}

/// A cluster of points of the singular locus at infinity: the roots of
/// `factor` in the free coordinate of `chart`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPoint {
    pub chart: Chart,
    pub factor: QPoly,
}

impl SigmaPoint {
    /// Number of points in the cluster.
    pub fn len(&self) -> usize {
        self.factor.deg()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rational(&self) -> Option<Rat> {
        (self.factor.deg() == 1).then(|| -self.factor.coeff(0) / self.factor.coeff(1))
    }

    fn with_factor(&self, factor: QPoly) -> SigmaPoint {
        SigmaPoint { chart: self.chart, factor }
    }
}

impl fmt::Display for SigmaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.chart, self.rational()) {
            (Chart::XOne, _) => write!(f, "(1:0:0)"),
            (Chart::YOne, Some(r)) => write!(f, "({}:1:0)", crate::poly::format_rat(&r)),
            (Chart::YOne, None) => write!(f, "(a:1:0) with {} = 0", self.factor.display_in(Var::X)),
        }
    }
}

fn require_plane(f: &MPoly) -> Result<u32> {
    if f.involves(Var::S) || f.involves(Var::T) || f.involves(Var::X0) {
        return Err(Error::Unsupported(format!(
            "{} must be a polynomial in x and y only",
            f
        )));
    }
    match f.total_degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::ConstantPolynomial),
    }
}

/// The common zeros on the line at infinity of `df^d/dx`, `df^d/dy` and `f^(d-1)`.
pub fn sigma(f: &MPoly) -> Result<Vec<SigmaPoint>> {
    require_plane(f)?;
    let forms = f.degree_forms(&[Var::X, Var::Y]);
    let fd = &forms[0];
    let fd1 = forms.get(1).cloned().unwrap_or_default();
    let eqs = [fd.partial(Var::X), fd.partial(Var::Y), fd1];
    let mut g = QPoly::zero();
    for e in &eqs {
        g = g.gcd(&QPoly::from_mpoly(&e.subst_rat(Var::Y, &Rat::one()), Var::X)?);
    }
    let mut out = Vec::new();
    if g.deg() > 0 {
        let mut rest = g.squarefree_part().monic();
        for r in rational_roots(&rest)? {
            let lin = QPoly::linear_root(&r);
            rest = rest.div_exact(&lin)?;
            out.push(SigmaPoint { chart: Chart::YOne, factor: lin });
        }
        if rest.deg() > 0 {
            out.push(SigmaPoint { chart: Chart::YOne, factor: rest });
        }
    }
    let at_x = [(Var::X, Rat::one()), (Var::Y, Rat::zero())];
    if eqs.iter().all(|e| e.eval_rat(&at_x).is_zero()) {
        out.push(SigmaPoint { chart: Chart::XOne, factor: QPoly::x() });
    }
    Ok(out)
}

/// `fbar` in the chart of `p`, minus `c * x0^d`, translated so that the point
/// `xi` sits at the origin. The germ uses `x` for the chart coordinate and `y`
/// for `x0`; `xi` and `c` may involve `theta` (written `x0`) or `s`.
fn chart_germ(f: &MPoly, chart: Chart, xi: &MPoly, c: &MPoly) -> Result<MPoly> {
    let d = f
        .degree_in_vars(&[Var::X, Var::Y])
        .filter(|d| *d >= 1)
        .ok_or(Error::ConstantPolynomial)?;
    let fbar = f.homogenize(Var::X0)?;
    let plane = match chart {
        Chart::YOne => fbar.subst_rat(Var::Y, &Rat::one()),
        Chart::XOne => fbar
            .subst_rat(Var::X, &Rat::one())
            .subst(Var::Y, &MPoly::var(Var::X)),
    };
    let germ = plane.subst(Var::X0, &MPoly::var(Var::Y));
    let germ = germ.sub(&c.mul(&MPoly::var(Var::Y).pow(d)));
    Ok(germ.subst(Var::X, &MPoly::var(Var::X).add(xi)))
}

/// Value of the chart parameter `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartValue {
    Rational(Rat),
    Symbolic,
}

/// The germ of `F_c = fbar(chart) - c x0^d` at a point of `sigma`, translated to the origin.
///
/// For an irrational cluster the germ lives over `Q[theta]/(factor)`.
pub fn infinity_chart(f: &MPoly, p: &SigmaPoint, c: &ChartValue) -> Result<PlaneGerm> {
    let cval = match c {
        ChartValue::Rational(r) => MPoly::constant(r.clone()),
        ChartValue::Symbolic => MPoly::var(Var::S),
    };
    match (p.chart, p.rational()) {
        (Chart::XOne, _) => Ok(PlaneGerm::new(chart_germ(f, Chart::XOne, &MPoly::zero(), &cval)?)),
        (Chart::YOne, Some(r)) => Ok(PlaneGerm::new(chart_germ(f, Chart::YOne, &MPoly::constant(r), &cval)?)),
        (Chart::YOne, None) => Ok(PlaneGerm::over(
            chart_germ(f, Chart::YOne, &MPoly::var(THETA), &cval)?,
            p.factor.monic(),
        )),
    }
}

/// Milnor numbers of `F_c` over the points of `p`, for rational `c`.
fn chart_milnor(f: &MPoly, p: &SigmaPoint, c: &Rat) -> Result<Vec<(QPoly, u32)>> {
    let g = infinity_chart(f, p, &ChartValue::Rational(c.clone()))?;
    let pieces = milnor_over(&g.modulus, &g.poly)?;
    Ok(if p.rational().is_some() || p.chart == Chart::XOne {
        // rational germs run over theta; report them on the point's own factor
        pieces.into_iter().map(|(_, mu, _)| (p.factor.clone(), mu)).collect()
    } else {
        pieces.into_iter().map(|(h, mu, _)| (h, mu)).collect()
    })
}

/// Deterministic rational probes 1, -1, 2, -2, ... avoiding the roots of `avoid`.
pub fn probe_values(avoid: &QPoly, count: usize) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut k = 1i64;
    while out.len() < count {
        for c in [rat_int(k), rat_int(-k)] {
            if out.len() < count && (avoid.is_zero() || !avoid.eval(&c).is_zero()) {
                out.push(c);
            }
        }
        k += 1;
    }
    out
}

/// The polynomial whose roots contain every value with a jump at infinity:
/// the leading coefficient `q1` of the discriminant pencil.
pub fn infinity_candidates(f: &MPoly) -> Result<QPoly> {
    let (delta, _) = crate::invariants::delta_pencil(f)?;
    QPoly::from_mpoly(&delta.lc(), Var::S)
}

/// `nu` at the points of `p`, split into sub-clusters with a common value.
///
/// Two generic probes are compared; disagreement is an internal error.
pub fn nu_by_piece(f: &MPoly, p: &SigmaPoint) -> Result<Vec<(SigmaPoint, u32)>> {
    let avoid = infinity_candidates(f)?;
    nu_by_piece_avoiding(f, p, &avoid)
}

pub fn nu_by_piece_avoiding(f: &MPoly, p: &SigmaPoint, avoid: &QPoly) -> Result<Vec<(SigmaPoint, u32)>> {
    require_plane(f)?;
    let probes = probe_values(avoid, 2);
    let first = chart_milnor(f, p, &probes[0])?;
    let second = chart_milnor(f, p, &probes[1])?;
    let mut by_nu: BTreeMap<u32, QPoly> = BTreeMap::new();
    for (h1, m1) in &first {
        for (h2, m2) in &second {
            let g = h1.gcd(h2);
            if g.deg() == 0 {
                continue;
            }
            if m1 != m2 {
                return Err(Error::Inconsistency(format!(
                    "generic probes {} and {} give Milnor numbers {} and {} at {}",
                    probes[0], probes[1], m1, m2, p
                )));
            }
            let e = by_nu.entry(*m1).or_insert_with(QPoly::one);
            *e = e.mul(&g);
        }
    }
    Ok(by_nu
        .into_iter()
        .map(|(nu, h)| (p.with_factor(h.monic()), nu))
        .collect())
}

/// `nu` at a point of `sigma` (common to all points of the cluster).
pub fn nu_generic(f: &MPoly, p: &SigmaPoint) -> Result<u32> {
    let pieces = nu_by_piece(f, p)?;
    match pieces.as_slice() {
        [(_, nu)] => Ok(*nu),
        [] => Err(Error::Precondition(format!("{} is empty", p))),
        _ => Err(Error::Unsupported(format!(
            "nu differs across the conjugate points of {}",
            p
        ))),
    }
}

/// `mu(F_c) - nu`, summed over the points of the cluster `p`.
pub fn lambda_at(f: &MPoly, p: &SigmaPoint, c: &Rat) -> Result<u32> {
    let mut total = 0u32;
    for (piece, nu) in nu_by_piece(f, p)? {
        for (h, mu) in chart_milnor(f, &piece, c)? {
            let lam = mu.checked_sub(nu).ok_or_else(|| {
                Error::Inconsistency(format!("mu(F_c) = {} below nu = {} at {}", mu, nu, piece))
            })?;
            total += lam * h.deg() as u32;
        }
    }
    Ok(total)
}

/// A common refinement of `Q[x]/(h) (x) Q[s]/(q)`: pieces of a primitive
/// element modulus `rho(theta)` with the point `xi(theta)` and value `c(theta)`.
pub fn joint_ring(h: &QPoly, q: &QPoly) -> Result<Vec<(QPoly, QPoly, QPoly)>> {
    let (h, q) = (h.monic(), q.monic());
    if h.deg() == 1 {
        let xi = QPoly::constant(-h.coeff(0));
        return Ok(vec![(q, xi, QPoly::x())]);
    }
    if q.deg() == 1 {
        return Ok(vec![(h, QPoly::x(), QPoly::constant(-q.coeff(0)))]);
    }
    let qs = UniPoly::from_qpoly(&q, Var::S);
    for k in 1..=DEFAULT_SLOPE_BUDGET as i64 {
        let k = rat_int(k);
        // h(theta - k s)
        let arg = MPoly::var(THETA).sub(&MPoly::var(Var::S).scale(&k));
        let hs = h.to_mpoly(Var::X).subst(Var::X, &arg);
        let hs = UniPoly::from_mpoly(&hs, Var::S);
        let r = QPoly::from_mpoly(&resultant(&qs, &hs)?, THETA)?;
        if r.deg() != h.deg() * q.deg() || !r.is_squarefree() {
            continue;
        }
        let qc: Vec<QPoly> = q.coeffs().iter().map(|c| QPoly::constant(c.clone())).collect();
        let hc: Vec<QPoly> = hs
            .coeffs()
            .iter()
            .map(|c| QPoly::from_mpoly(c, THETA))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        for (piece, g) in gcd_mod(&r, &qc, &hc)? {
            if g.len() != 2 {
                return Err(Error::Inconsistency(
                    "primitive element does not separate the pairs".into(),
                ));
            }
            let c = g[0].neg().rem(&piece);
            let xi = QPoly::x().sub(&c.scale(&k)).rem(&piece);
            out.push((piece, xi, c));
        }
        return Ok(out);
    }
    Err(Error::ShearBudget)
}

/// `prod_(points p, values c) (s - c)^(lambda_(c,p))` over the points of
/// `points` and the roots `c` of the squarefree `q`.
///
/// The order of a root `c` of `q` in the result is the chart-route `lambda_c`.
pub fn jump_polynomial(f: &MPoly, points: &[(SigmaPoint, u32)], q: &QPoly) -> Result<QPoly> {
    require_plane(f)?;
    let mut total = QPoly::one();
    for (p, nu) in points {
        for (rho, xi, c) in joint_ring(&p.factor, q)? {
            let xi_m = xi.to_mpoly(THETA);
            let c_m = c.to_mpoly(THETA);
            let germ = chart_germ(f, p.chart, &xi_m, &c_m)?;
            for (piece, mu, _) in milnor_over(&rho, &germ)? {
                let lam = mu.checked_sub(*nu).ok_or_else(|| {
                    Error::Inconsistency(format!("mu(F_c) = {} below nu = {} at {}", mu, nu, p))
                })?;
                if lam > 0 {
                    total = total.mul(&piece.norm_polynomial(&c).pow(lam));
                }
            }
        }
    }
    Ok(total)
}

/// Critical points of `f` over the roots of `factor`: the point
/// `(x(theta), y(theta))`, its value and local Milnor number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCriticalCluster {
    pub factor: QPoly,
    pub x: QPoly,
    pub y: QPoly,
    pub value: QPoly,
    pub mu: u32,
}

/// Certified enclosures of one critical point and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPointBox {
    pub x: (CRat, Rat),
    pub y: (CRat, Rat),
    pub value: (CRat, Rat),
    pub mu: u32,
}

impl AffineCriticalCluster {
    pub fn len(&self) -> usize {
        self.factor.deg()
    }

    pub fn is_empty(&self) -> bool {
        self.factor.deg() == 0
    }

    /// Enclosures of each point, with the parameter isolated to `precision`.
    pub fn enclosures(&self, precision: &Rat) -> Result<Vec<CriticalPointBox>> {
        Ok(isolate_squarefree(&self.factor, precision, None)?
            .into_iter()
            .map(|(c, r)| CriticalPointBox {
                x: eval_disk(&self.x, &c, &r),
                y: eval_disk(&self.y, &c, &r),
                value: eval_disk(&self.value, &c, &r),
                mu: self.mu,
            })
            .collect())
    }

    /// `prod (s - value)` over the points, each to the power `mu`.
    pub fn value_polynomial(&self) -> QPoly {
        self.factor.norm_polynomial(&self.value).pow(self.mu)
    }
}

/// `p(theta, y(theta))` modulo `h` for `p` in `x`, `y`.
fn eval_on(p: &MPoly, h: &QPoly, x: &QPoly, y: &QPoly) -> Result<QPoly> {
    let mut acc = QPoly::zero();
    for (m, c) in p.terms() {
        let t = x
            .pow(m.exp(Var::X))
            .rem(h)
            .mul_mod(&y.pow(m.exp(Var::Y)).rem(h), h)
            .scale(c);
        acc = acc.add(&t);
    }
    Ok(acc.rem(h))
}

/// All critical points of `f`, grouped into clusters, with local Milnor numbers.
pub fn affine_critical_points(f: &MPoly) -> Result<Vec<AffineCriticalCluster>> {
    Ok(affine_critical_points_with_shear(f)?.0)
}

pub fn affine_critical_points_with_shear(f: &MPoly) -> Result<(Vec<AffineCriticalCluster>, Shear)> {
    require_plane(f)?;
    'slopes: for slope in slope_sequence(DEFAULT_SLOPE_BUDGET) {
        let sh = Shear::new(Var::X, Var::Y, slope.clone());
        let g = f.apply_shear(&sh);
        let a = g.partial(Var::X);
        let b = g.partial(Var::Y);
        if b.is_zero() {
            // g depends on x alone
            return if a.is_constant() { Ok((Vec::new(), sh)) } else { Err(Error::NonIsolated) };
        }
        if a.is_zero() {
            return if b.is_constant() { Ok((Vec::new(), sh)) } else { Err(Error::NonIsolated) };
        }
        let bu = UniPoly::from_mpoly(&b, Var::Y);
        if bu.lc().involves(Var::X) {
            continue;
        }
        if bu.deg() == 0 {
            return Ok((Vec::new(), sh));
        }
        // (a + b, b) generates the same ideal; it makes deg_y a >= deg_y b
        let a = if a.degree_in(Var::Y) < b.degree_in(Var::Y) { a.add(&b) } else { a };
        let au = UniPoly::from_mpoly(&a, Var::Y);
        let r = QPoly::from_mpoly(&resultant(&au, &bu)?, Var::X)?;
        if r.is_zero() {
            return Err(Error::NonIsolated);
        }
        let n = bu.deg();
        // principal subresultant coefficients psc_1 .. psc_(n-1); psc_n = lc(B) is a unit
        let subs: Vec<UniPoly> = (1..n)
            .map(|j| subresultant(&au, &bu, j))
            .collect::<Result<_>>()?;
        let pscs: Vec<QPoly> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| QPoly::from_mpoly(&s.coeff(i + 1), Var::X))
            .collect::<Result<_>>()?;
        let mut clusters = Vec::new();
        for (h, m) in r.squarefree_decomposition()? {
            for (piece, pattern) in gcd_split(&h, &pscs)? {
                // gcd degree e: first nonvanishing principal coefficient
                let e = pattern.iter().position(|z| !z).map(|i| i + 1);
                let gl: Vec<QPoly> = match e {
                    Some(e) => subs[e - 1]
                        .coeffs()
                        .iter()
                        .take(e + 1)
                        .map(|c| QPoly::from_mpoly(c, Var::X).map(|q| q.rem(&piece)))
                        .collect::<Result<_>>()?,
                    None => bu
                        .coeffs()
                        .iter()
                        .map(|c| QPoly::from_mpoly(c, Var::X).map(|q| q.rem(&piece)))
                        .collect::<Result<_>>()?,
                };
                let inv = gl
                    .last()
                    .and_then(|l| l.inv_mod(&piece))
                    .ok_or_else(|| Error::Inconsistency("gcd leading coefficient not invertible".into()))?;
                let gl: Vec<QPoly> = gl.iter().map(|c| c.mul_mod(&inv, &piece)).collect();
                let e = gl.len() - 1;
                if e == 0 {
                    return Err(Error::Inconsistency(
                        "resultant root without a common zero".into(),
                    ));
                }
                // gl must be (y - beta)^e
                let beta = gl[e - 1]
                    .neg()
                    .scale(&(Rat::one() / rat_int(e as i64)))
                    .rem(&piece);
                let lin = [beta.neg(), QPoly::one()];
                let mut pw = vec![QPoly::one()];
                for _ in 0..e {
                    let mut next = vec![QPoly::zero(); pw.len() + 1];
                    for (i, c) in pw.iter().enumerate() {
                        next[i] = next[i].add(&c.mul_mod(&lin[0], &piece));
                        next[i + 1] = next[i + 1].add(&c.mul_mod(&lin[1], &piece));
                    }
                    pw = next;
                }
                let diffs: Vec<QPoly> = pw.iter().zip(&gl).map(|(p, q)| p.sub(q).rem(&piece)).collect();
                if diffs.iter().any(|d| !d.is_zero()) {
                    continue 'slopes;
                }
                let x = QPoly::x().add(&beta.scale(&slope)).rem(&piece);
                let value = eval_on(f, &piece, &x, &beta)?;
                clusters.push(AffineCriticalCluster { factor: piece, x, y: beta, value, mu: m });
            }
        }
        return Ok((clusters, sh));
    }
    Err(Error::ShearBudget)
}

/// Total Milnor number of `f`: the sum of local numbers over all critical points.
pub fn total_milnor(clusters: &[AffineCriticalCluster]) -> u32 {
    clusters.iter().map(|c| c.mu * c.len() as u32).sum()
}

/// Whether the rational point `(x, y)` is a critical point.
pub fn is_critical(f: &MPoly, x: &Rat, y: &Rat) -> bool {
    let pt = [(Var::X, x.clone()), (Var::Y, y.clone())];
    f.partial(Var::X).eval_rat(&pt).is_zero() && f.partial(Var::Y).eval_rat(&pt).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn u() -> MPoly {
        MPoly::var(Var::X)
    }
    fn v() -> MPoly {
        MPoly::var(Var::Y)
    }
    fn mu(p: MPoly) -> u32 {
        local_milnor(&PlaneGerm::new(p)).unwrap().mu
    }

    #[test]
    fn basic_germs() {
        assert_eq!(mu(u().pow(2).add(&v().pow(2))), 1);
        assert_eq!(mu(u().pow(2).add(&v().pow(3))), 2);
        assert_eq!(mu(u().pow(3).add(&v().pow(3))), 4);
        assert_eq!(mu(u().add(&v().pow(3))), 0);
        // D4 after a nontrivial shear: u^2 v + v^3
        assert_eq!(mu(u().pow(2).mul(&v()).add(&v().pow(3))), 4);
        // u v: a singular point where the v-axis is a branch
        assert_eq!(mu(u().mul(&v())), 1);
    }

    #[test]
    fn non_isolated_germ() {
        let g = u().pow(2).mul(&v().add(&MPoly::one()));
        assert_eq!(local_milnor(&PlaneGerm::new(g)), Err(Error::NonIsolated));
    }

    #[test]
    fn conjugate_base_points() {
        // (u^2 - 2)^2 + v^2 has A1 points at u = +-sqrt 2; translate by theta
        let shifted = u().add(&MPoly::var(THETA));
        let g = shifted.pow(2).sub(&MPoly::int(2)).pow(2).add(&v().pow(2));
        let germ = PlaneGerm::over(g, QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(local_milnor(&germ).unwrap().mu, 1);
    }

    #[test]
    fn gcd_mod_splits() {
        // over Q[a]/(a(a-1)): gcd(v - a, v) is 1 at a = 1 and v at a = 0
        let h = QPoly::from_ints(&[0, -1, 1]);
        let a = vec![QPoly::from_ints(&[0, -1]), QPoly::one()];
        let b = vec![QPoly::zero(), QPoly::one()];
        let res = gcd_mod(&h, &a, &b).unwrap();
        assert_eq!(res.len(), 2);
        for (piece, g) in res {
            if piece == QPoly::x() {
                assert_eq!(g.len(), 2);
            } else {
                assert_eq!(g.len(), 1);
            }
        }
    }

    fn ex1(t: i64) -> MPoly {
        // x^3 y + t x^2 + x
        let (x, y) = (MPoly::var(Var::X), MPoly::var(Var::Y));
        x.pow(3).mul(&y).add(&x.pow(2).scale(&rat_int(t))).add(&x)
    }

    #[test]
    fn sigma_examples() {
        let (x, y) = (MPoly::var(Var::X), MPoly::var(Var::Y));
        assert!(sigma(&x.pow(2).add(&y.pow(2))).unwrap().is_empty());
        let s = sigma(&ex1(1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rational(), Some(rat_int(0)));
        assert_eq!(s[0].to_string(), "(0:1:0)");
        let s = sigma(&x.pow(2).mul(&y).add(&x)).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn chart_of_example_one() {
        let mut f = ex1(0);
        f = f.add(&MPoly::var(Var::T).mul(&MPoly::var(Var::X).pow(2)));
        let p = SigmaPoint { chart: Chart::YOne, factor: QPoly::x() };
        let g = infinity_chart(&f, &p, &ChartValue::Symbolic).unwrap();
        // x^3 + t x^2 x0^2 + x x0^3 - s x0^4, with x0 written as y
        let (x, y) = (MPoly::var(Var::X), MPoly::var(Var::Y));
        let expected = x
            .pow(3)
            .add(&MPoly::var(Var::T).mul(&x.pow(2)).mul(&y.pow(2)))
            .add(&x.mul(&y.pow(3)))
            .sub(&MPoly::var(Var::S).mul(&y.pow(4)));
        assert_eq!(g.poly, expected);
        let g0 = infinity_chart(&f, &p, &ChartValue::Rational(rat_int(0))).unwrap();
        assert_eq!(g0.poly, expected.subst_rat(Var::S, &rat_int(0)));
    }

    #[test]
    fn nu_and_lambda_example_one() {
        let f = ex1(1);
        let p = &sigma(&f).unwrap()[0];
        let nu = nu_generic(&f, p).unwrap();
        assert_eq!(lambda_at(&f, p, &rat_int(0)).unwrap(), 1);
        assert_eq!(lambda_at(&f, p, &rat_int(1)).unwrap(), 0);
        assert_eq!(lambda_at(&f, p, &rat(7, 3)).unwrap(), 0);
        let g0 = infinity_chart(&f, p, &ChartValue::Rational(rat_int(0))).unwrap();
        assert_eq!(local_milnor(&g0).unwrap().mu, nu + 1);
        let pts = nu_by_piece(&f, p).unwrap();
        let jp = jump_polynomial(&f, &pts, &QPoly::x()).unwrap();
        assert_eq!(jp.deg(), 1);
    }

    #[test]
    fn affine_examples() {
        let (x, y) = (MPoly::var(Var::X), MPoly::var(Var::Y));
        let cl = affine_critical_points(&x.pow(2).add(&y.pow(2))).unwrap();
        assert_eq!(total_milnor(&cl), 1);
        assert_eq!(cl[0].value, QPoly::zero());
        assert!(affine_critical_points(&ex1(0)).unwrap().is_empty());
        // (x + 1)(x y + 1): points (0, -1) and (-1, 1), values 1 and 0
        let f = x.add(&MPoly::one()).mul(&x.mul(&y).add(&MPoly::one()));
        let cl = affine_critical_points(&f).unwrap();
        assert_eq!(total_milnor(&cl), 2);
        let mut vals = QPoly::one();
        for c in &cl {
            assert_eq!(c.mu, 1);
            vals = vals.mul(&c.value_polynomial());
        }
        assert_eq!(vals, QPoly::from_ints(&[0, -1, 1]));
        assert!(is_critical(&f, &rat_int(0), &rat_int(-1)));
        assert!(is_critical(&f, &rat_int(-1), &rat_int(1)));
        let boxes: Vec<_> = cl.iter().flat_map(|c| c.enclosures(&rat(1, 1000)).unwrap()).collect();
        assert_eq!(boxes.len(), 2);
    }

    #[test]
    fn non_isolated_affine() {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Y);
        let f = x.pow(2).mul(&y);
        assert_eq!(affine_critical_points(&f), Err(Error::NonIsolated));
    }

    #[test]
    fn joint_ring_pairs() {
        let h = QPoly::from_ints(&[-2, 0, 1]);
        let q = QPoly::from_ints(&[-3, 0, 1]);
        let pieces = joint_ring(&h, &q).unwrap();
        let total: usize = pieces.iter().map(|p| p.0.deg()).sum();
        assert_eq!(total, 4);
        for (rho, xi, c) in pieces {
            assert!(h.compose(&xi).rem(&rho).is_zero());
            assert!(q.compose(&c).rem(&rho).is_zero());
        }
    }
}
