//! Certified complex root isolation.
//!
//! Approximations come from an Aberth iteration in `f64` followed by exact
//! Weierstrass (Durand-Kerner) steps on dyadic rationals. Certification uses the
//! Braess-Hadeler inclusion: with Weierstrass corrections `W_i` the disks
//! `D(z_i, n|W_i|)` cover all roots, and when they are pairwise disjoint each
//! holds exactly one root. Floating point only ever seeds the iteration.

use num::{BigInt, One, Signed, Zero};

use crate::complex::{
    disk_may_contain_zero, eval_complex, precision_bits, rat_to_f64, simplest_between,
    sqrt_bounds, sqrt_upper, CRat,
};
use crate::elimination::{SquarefreeDecomposition, UniPoly};
use crate::error::{Error, Result};
use crate::poly::{Rat, Var};
use crate::qpoly::QPoly;

const MAX_EXACT_STEPS: usize = 120;

/// A disk certified to contain exactly one root of its defining factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBox {
    pub center: CRat,
    pub radius: Rat,
    pub multiplicity: u32,
    pub defining_factor: usize,
}

impl RootBox {
    pub fn contains(&self, z: &CRat) -> bool {
        self.center.sub(z).norm_sqr() <= &self.radius * &self.radius
    }

    pub fn disjoint(&self, other: &RootBox) -> bool {
        disks_disjoint(&self.center, &self.radius, &other.center, &other.radius)
    }

    pub fn inside(&self, outer: &RootBox) -> bool {
        // |c - c'| + r <= R
        if self.radius > outer.radius {
            return false;
        }
        let gap = &outer.radius - &self.radius;
        self.center.sub(&outer.center).norm_sqr() <= &gap * &gap
    }
}

pub fn disks_disjoint(c1: &CRat, r1: &Rat, c2: &CRat, r2: &Rat) -> bool {
    let s = r1 + r2;
    c1.sub(c2).norm_sqr() > &s * &s
}

/// A finite subset of C given by a squarefree decomposition and one certified box per root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicValueSet {
    pub defining: SquarefreeDecomposition,
    pub boxes: Vec<RootBox>,
    pub precision: Rat,
}

impl AlgebraicValueSet {
    pub fn empty(var: Var, precision: Rat) -> Self {
        AlgebraicValueSet {
            defining: SquarefreeDecomposition::empty(var),
            boxes: Vec::new(),
            precision,
        }
    }

    pub fn cardinality(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn var(&self) -> Var {
        self.defining.var
    }

    /// Boxes belonging to factor `i`.
    pub fn boxes_of(&self, i: usize) -> impl Iterator<Item = &RootBox> {
        self.boxes.iter().filter(move |b| b.defining_factor == i)
    }

    /// Checks the set invariants: counts, disjointness, and that every defining
    /// factor may vanish on each of its boxes.
    pub fn verify(&self) -> bool {
        let expected: usize = self.defining.factors.iter().map(|(f, _)| f.deg()).sum();
        if expected != self.boxes.len() {
            return false;
        }
        for (i, a) in self.boxes.iter().enumerate() {
            let (f, m) = &self.defining.factors[a.defining_factor];
            if *m != a.multiplicity || !disk_may_contain_zero(f, &a.center, &a.radius) {
                return false;
            }
            if self.boxes[i + 1..].iter().any(|b| !a.disjoint(b)) {
                return false;
            }
        }
        true
    }
}

/// Isolate all distinct complex roots of `p`, each in a box of radius at most `precision`.
pub fn isolate(p: &UniPoly, precision: &Rat) -> Result<AlgebraicValueSet> {
    let q = p.to_qpoly()?;
    isolate_qpoly(&q, p.main, precision)
}

pub fn isolate_qpoly(p: &QPoly, var: Var, precision: &Rat) -> Result<AlgebraicValueSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let defining = SquarefreeDecomposition::of(p, var)?;
    isolate_decomposition(defining, precision)
}

/// Isolate the roots of an already computed decomposition (factors coprime and squarefree).
pub fn isolate_decomposition(
    defining: SquarefreeDecomposition,
    precision: &Rat,
) -> Result<AlgebraicValueSet> {
    if !precision.is_positive() {
        return Err(Error::Precondition("precision must be positive".into()));
    }
    let mut per_factor: Vec<Vec<(CRat, Rat)>> = defining
        .factors
        .iter()
        .map(|(f, _)| isolate_squarefree(f, precision, None))
        .collect::<Result<_>>()?;
    separate_factors(&defining, &mut per_factor, precision)?;
    Ok(assemble(defining, per_factor, precision.clone()))
}

fn assemble(
    defining: SquarefreeDecomposition,
    per_factor: Vec<Vec<(CRat, Rat)>>,
    precision: Rat,
) -> AlgebraicValueSet {
    let mut boxes = Vec::new();
    for (i, disks) in per_factor.into_iter().enumerate() {
        let m = defining.factors[i].1;
        for (center, radius) in disks {
            boxes.push(RootBox {
                center,
                radius,
                multiplicity: m,
                defining_factor: i,
            });
        }
    }
    AlgebraicValueSet {
        defining,
        boxes,
        precision,
    }
}

/// Shrink boxes of different factors until they are pairwise disjoint.
fn separate_factors(
    defining: &SquarefreeDecomposition,
    per_factor: &mut [Vec<(CRat, Rat)>],
    precision: &Rat,
) -> Result<()> {
    let mut prec = precision.clone();
    for _ in 0..200 {
        let mut clash: Vec<usize> = Vec::new();
        for i in 0..per_factor.len() {
            for j in i + 1..per_factor.len() {
                let hit = per_factor[i].iter().any(|(c1, r1)| {
                    per_factor[j]
                        .iter()
                        .any(|(c2, r2)| !disks_disjoint(c1, r1, c2, r2))
                });
                if hit {
                    clash.push(i);
                    clash.push(j);
                }
            }
        }
        if clash.is_empty() {
            return Ok(());
        }
        clash.sort();
        clash.dedup();
        prec = prec / Rat::from_integer(BigInt::from(16));
        for i in clash {
            let seeds: Vec<CRat> = per_factor[i].iter().map(|(c, _)| c.clone()).collect();
            per_factor[i] = isolate_squarefree(&defining.factors[i].0, &prec, Some(seeds))?;
        }
    }
    Err(Error::IsolationBudget)
}

/// Isolating disks for the roots of a squarefree polynomial.
pub fn isolate_squarefree(
    g: &QPoly,
    precision: &Rat,
    seeds: Option<Vec<CRat>>,
) -> Result<Vec<(CRat, Rat)>> {
    let n = g.deg();
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => {
            let root = -g.coeff(0) / g.coeff(1);
            return Ok(vec![(CRat::real(root), precision.clone())]);
        }
        _ => {}
    }
    let target_bits = precision_bits(precision);
    let mut z: Vec<CRat> = match seeds {
        Some(s) if s.len() == n => s,
        _ => aberth_seeds(g),
    };
    let mut bits: u32 = 64;
    let lc = g.lc();
    let nr = Rat::from_integer(BigInt::from(n));
    for _ in 0..MAX_EXACT_STEPS {
        let w = weierstrass(g, &lc, &z);
        let w = match w {
            Some(w) => w,
            None => {
                // coincident approximations: perturb deterministically
                for (i, zi) in z.iter_mut().enumerate() {
                    let eps = Rat::new(BigInt::from(i as i64 + 1), BigInt::one() << (bits as usize / 2));
                    *zi = CRat::new(&zi.re + &eps, &zi.im - &eps);
                }
                continue;
            }
        };
        let rbits = (target_bits + 8).max(bits);
        let radii: Vec<Rat> = w
            .iter()
            .map(|wi| {
                let r = sqrt_upper(&(wi.norm_sqr() * &nr * &nr), rbits);
                if r.is_zero() {
                    precision.clone() / Rat::from_integer(BigInt::from(1024))
                } else {
                    r
                }
            })
            .collect();
        let small = radii.iter().all(|r| r <= precision);
        if small && pairwise_disjoint(&z, &radii) {
            return Ok(z.into_iter().zip(radii).collect());
        }
        z = z
            .iter()
            .zip(w.iter())
            .map(|(zi, wi)| zi.sub(wi).round(bits))
            .collect();
        if bits < 2 * target_bits + 64 {
            bits = (bits * 2).min(2 * target_bits + 64);
        }
    }
    Err(Error::IsolationBudget)
}

fn pairwise_disjoint(z: &[CRat], r: &[Rat]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if !disks_disjoint(&z[i], &r[i], &z[j], &r[j]) {
                return false;
            }
        }
    }
    true
}

fn weierstrass(g: &QPoly, lc: &Rat, z: &[CRat]) -> Option<Vec<CRat>> {
    let mut out = Vec::with_capacity(z.len());
    for (i, zi) in z.iter().enumerate() {
        let mut den = CRat::real(lc.clone());
        for (j, zj) in z.iter().enumerate() {
            if i != j {
                let d = zi.sub(zj);
                if d.is_zero() {
                    return None;
                }
                den = den.mul(&d);
            }
        }
        out.push(eval_complex(g, zi).div(&den));
    }
    Some(out)
}

/// Initial approximations from an `f64` Aberth iteration.
fn aberth_seeds(g: &QPoly) -> Vec<CRat> {
    let n = g.deg();
    let lc = g.lc();
    let c: Vec<f64> = g.coeffs().iter().map(|a| rat_to_f64(&(a / &lc))).collect();
    let finite = c.iter().all(|v| v.is_finite());
    let radius = if finite {
        // Fujiwara-type bound
        (1..=n)
            .map(|k| (c[n - k].abs()).powf(1.0 / k as f64))
            .fold(0.0f64, f64::max)
            * 2.0
    } else {
        1.0
    }
    .max(1e-3);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (radius * a.cos(), radius * a.sin())
        })
        .collect();
    if finite {
        for _ in 0..500 {
            let mut max_step: f64 = 0.0;
            for i in 0..n {
                let (p, dp) = horner_f64(&c, z[i]);
                if p.0 == 0.0 && p.1 == 0.0 {
                    continue;
                }
                let ratio = cdiv(p, dp);
                let mut s = (0.0, 0.0);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        let d = (z[i].0 - zj.0, z[i].1 - zj.1);
                        let inv = cdiv((1.0, 0.0), d);
                        s = (s.0 + inv.0, s.1 + inv.1);
                    }
                }
                let rs = cmul(ratio, s);
                let step = cdiv(ratio, (1.0 - rs.0, -rs.1));
                if step.0.is_finite() && step.1.is_finite() {
                    z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                    let mag = (step.0 * step.0 + step.1 * step.1).sqrt()
                        / (1.0 + (z[i].0 * z[i].0 + z[i].1 * z[i].1).sqrt());
                    max_step = max_step.max(mag);
                }
            }
            if max_step < 1e-15 {
                break;
            }
        }
    }
    z.into_iter()
        .enumerate()
        .map(|(k, (re, im))| {
            CRat::from_f64(re, im).unwrap_or_else(|| {
                CRat::new(Rat::from_integer(BigInt::from(k as i64)), Rat::one())
            })
        })
        .collect()
}

fn horner_f64(c: &[f64], z: (f64, f64)) -> ((f64, f64), (f64, f64)) {
    let mut p = (0.0, 0.0);
    let mut dp = (0.0, 0.0);
    for a in c.iter().rev() {
        dp = cmul(dp, z);
        dp = (dp.0 + p.0, dp.1 + p.1);
        p = cmul(p, z);
        p = (p.0 + a, p.1);
    }
    (p, dp)
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

/// Shrink every box to radius `precision`, keeping each new box inside its predecessor.
pub fn refine(set: &AlgebraicValueSet, precision: &Rat) -> Result<AlgebraicValueSet> {
    if precision >= &set.precision {
        return Ok(set.clone());
    }
    let mut prec = precision.clone();
    for _ in 0..40 {
        let mut per_factor = Vec::new();
        for (i, (f, _)) in set.defining.factors.iter().enumerate() {
            let seeds: Vec<CRat> = set.boxes_of(i).map(|b| b.center.clone()).collect();
            per_factor.push(isolate_squarefree(f, &prec, Some(seeds))?);
        }
        separate_factors(&set.defining, &mut per_factor, &prec)?;
        let candidate = assemble(set.defining.clone(), per_factor, precision.clone());
        if let Some(matched) = nest_into(set, candidate) {
            return Ok(matched);
        }
        prec = prec / Rat::from_integer(BigInt::from(4));
    }
    Err(Error::IsolationBudget)
}

/// Reorders `fine` to follow the boxes of `coarse`; `None` unless every fine box
/// lies inside exactly one coarse box of the same factor.
fn nest_into(coarse: &AlgebraicValueSet, fine: AlgebraicValueSet) -> Option<AlgebraicValueSet> {
    let mut used = vec![false; fine.boxes.len()];
    let mut boxes = Vec::with_capacity(coarse.boxes.len());
    for cb in &coarse.boxes {
        let idx = fine.boxes.iter().enumerate().position(|(i, fb)| {
            !used[i] && fb.defining_factor == cb.defining_factor && fb.inside(cb)
        })?;
        used[idx] = true;
        boxes.push(fine.boxes[idx].clone());
    }
    Some(AlgebraicValueSet { boxes, ..fine })
}

/// Outcome of matching two value sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matching {
    Certified {
        pairs: Vec<(usize, usize)>,
        unmatched_a: Vec<usize>,
        unmatched_b: Vec<usize>,
    },
    Inconclusive,
}

/// Greedy nearest-center matching. A pair is accepted only when its largest
/// possible distance is smaller than the smallest possible distance of every
/// competing pair sharing one of its endpoints; otherwise both sets are refined,
/// up to `depth` times.
pub fn match_values(a: &AlgebraicValueSet, b: &AlgebraicValueSet, depth: usize) -> Result<Matching> {
    let mut a = a.clone();
    let mut b = b.clone();
    for _ in 0..=depth {
        if let Some(m) = try_match(&a, &b) {
            return Ok(m);
        }
        let pa = &a.precision / Rat::from_integer(BigInt::from(1 << 10));
        let pb = &b.precision / Rat::from_integer(BigInt::from(1 << 10));
        a = refine(&a, &pa)?;
        b = refine(&b, &pb)?;
    }
    Ok(Matching::Inconclusive)
}

fn try_match(a: &AlgebraicValueSet, b: &AlgebraicValueSet) -> Option<Matching> {
    let bits = 96;
    struct Cand {
        i: usize,
        j: usize,
        approx: f64,
        lo: Rat,
        hi: Rat,
    }
    let mut cands: Vec<Cand> = Vec::new();
    for (i, ba) in a.boxes.iter().enumerate() {
        for (j, bb) in b.boxes.iter().enumerate() {
            let d2 = ba.center.sub(&bb.center).norm_sqr();
            let (dlo, dhi) = sqrt_bounds(&d2, bits);
            let r = &ba.radius + &bb.radius;
            let lo = dlo - &r;
            cands.push(Cand {
                i,
                j,
                approx: rat_to_f64(&d2),
                lo: if lo.is_negative() { Rat::zero() } else { lo },
                hi: dhi + r,
            });
        }
    }
    cands.sort_by(|x, y| x.approx.total_cmp(&y.approx).then(x.i.cmp(&y.i)).then(x.j.cmp(&y.j)));
    let mut used_a = vec![false; a.boxes.len()];
    let mut used_b = vec![false; b.boxes.len()];
    let mut pairs = Vec::new();
    loop {
        let live: Vec<&Cand> = cands.iter().filter(|c| !used_a[c.i] && !used_b[c.j]).collect();
        let Some(best) = live.first() else { break };
        let certified = live
            .iter()
            .skip(1)
            .filter(|c| c.i == best.i || c.j == best.j)
            .all(|c| best.hi < c.lo);
        if !certified {
            return None;
        }
        used_a[best.i] = true;
        used_b[best.j] = true;
        pairs.push((best.i, best.j));
    }
    pairs.sort();
    Some(Matching::Certified {
        pairs,
        unmatched_a: (0..a.boxes.len()).filter(|&i| !used_a[i]).collect(),
        unmatched_b: (0..b.boxes.len()).filter(|&j| !used_b[j]).collect(),
    })
}

/// A real root located in `[lo, hi]`, with its exact value when rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub lo: Rat,
    pub hi: Rat,
    pub exact: Option<Rat>,
}

impl RealRoot {
    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }
}

/// All real roots of `p` in the closed interval `[a, b]`, increasing, with
/// rational roots identified exactly.
pub fn real_roots_in(p: &QPoly, a: &Rat, b: &Rat) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.squarefree_part();
    if g.deg() == 0 {
        return Ok(Vec::new());
    }
    let g = g.primitive_rat();
    let lc = g.lc().abs();
    // two distinct rationals with denominators dividing lc differ by at least 1/lc^2
    let sep = Rat::one() / (&lc * &lc);
    let mut prec = Rat::new(BigInt::one(), BigInt::from(1 << 20));
    let mut disks = isolate_squarefree(&g, &prec, None)?;
    let mut out = Vec::new();
    let mut pending: Vec<usize> = (0..disks.len()).collect();
    let mut resolved = false;
    for _ in 0..60 {
        let mut still = Vec::new();
        for &i in &pending {
            let (c, r) = &disks[i];
            if c.im.abs() > *r {
                continue; // non-real
            }
            let conj = c.conj();
            let alone = disks
                .iter()
                .enumerate()
                .all(|(j, (cj, rj))| j == i || disks_disjoint(&conj, r, cj, rj));
            if !alone {
                still.push(i);
                continue;
            }
            out.push((&c.re - r, &c.re + r));
        }
        if still.is_empty() {
            resolved = true;
            break;
        }
        prec = prec / Rat::from_integer(BigInt::from(1 << 16));
        let seeds: Vec<CRat> = disks.iter().map(|(c, _)| c.clone()).collect();
        disks = isolate_squarefree(&g, &prec, Some(seeds))?;
        // indices may permute after re-isolation; restart classification
        out.clear();
        pending = (0..disks.len()).collect();
    }
    if !resolved {
        return Err(Error::IsolationBudget);
    }
    let mut roots = Vec::new();
    for (lo, hi) in out {
        if let Some(root) = pin_real_root(&g, lo, hi, a, b, &sep) {
            roots.push(root);
        }
    }
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(roots)
}

/// The rational roots of `p`, increasing.
pub fn rational_roots(p: &QPoly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    // Cauchy bound
    let lc = p.lc().abs();
    let bound = p.coeffs().iter().map(|c| c.abs() / &lc).max().unwrap_or_default() + Rat::one();
    Ok(real_roots_in(p, &-bound.clone(), &bound)?
        .into_iter()
        .filter_map(|r| r.exact)
        .collect())
}

/// Narrow the unique real root of `g` in `[lo, hi]`; `None` if it lies outside `[a, b]`.
fn pin_real_root(g: &QPoly, mut lo: Rat, mut hi: Rat, a: &Rat, b: &Rat, sep: &Rat) -> Option<RealRoot> {
    let exact = |r: Rat| RealRoot { lo: r.clone(), hi: r.clone(), exact: Some(r) };
    for edge in [a, b] {
        if &lo <= edge && edge <= &hi && g.eval(edge).is_zero() {
            return Some(exact(edge.clone()));
        }
    }
    let two = Rat::from_integer(BigInt::from(2));
    let sign = |x: &Rat| g.eval(x).signum();
    loop {
        if g.eval(&lo).is_zero() {
            return in_range(exact(lo), a, b);
        }
        if g.eval(&hi).is_zero() {
            return in_range(exact(hi), a, b);
        }
        if &hi < a || &lo > b {
            return None;
        }
        let inside = &lo >= a && &hi <= b;
        if inside && &hi - &lo < *sep {
            let cand = simplest_between(&lo, &hi);
            if g.eval(&cand).is_zero() {
                return Some(exact(cand));
            }
            return Some(RealRoot { lo, hi, exact: None });
        }
        let mid = (&lo + &hi) / &two;
        // the endpoints straddle a or b, or the interval is still too wide
        if sign(&lo) == sign(&mid) && !g.eval(&mid).is_zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

fn in_range(r: RealRoot, a: &Rat, b: &Rat) -> Option<RealRoot> {
    if &r.lo >= a && &r.hi <= b {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn rational_roots_found() {
        use crate::poly::rat;
        // (2x - 1)(x + 3)(x^2 - 2)
        let p = QPoly::from_ints(&[-1, 2]).mul(&QPoly::from_ints(&[3, 1])).mul(&QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(rational_roots(&p).unwrap(), vec![rat(-3, 1), rat(1, 2)]);
    }

    use super::*;
    use crate::poly::{rat, rat_int};

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn isolate_plus_minus_one() {
        let set = isolate_qpoly(&p(&[-1, 0, 1]), Var::S, &rat(1, 1000)).unwrap();
        assert_eq!(set.cardinality(), 2);
        assert!(set.verify());
        assert!(set.boxes.iter().any(|b| b.contains(&CRat::real(rat_int(1)))));
        assert!(set.boxes.iter().any(|b| b.contains(&CRat::real(rat_int(-1)))));
        assert!(set.boxes.iter().all(|b| b.multiplicity == 1 && b.radius <= rat(1, 1000)));
    }

    #[test]
    fn isolate_triple_root() {
        let set = isolate_qpoly(&p(&[0, 0, 0, 1]), Var::S, &rat(1, 1000)).unwrap();
        assert_eq!(set.cardinality(), 1);
        assert_eq!(set.boxes[0].multiplicity, 3);
        assert!(set.boxes[0].contains(&CRat::zero()));
    }

    #[test]
    fn isolate_complex_roots() {
        // s^2 + 1 and s^3 - 2
        let set = isolate_qpoly(&p(&[1, 0, 1]).mul(&p(&[-2, 0, 0, 1])), Var::S, &rat(1, 1 << 40)).unwrap();
        assert_eq!(set.cardinality(), 5);
        assert!(set.verify());
        assert!(set.boxes.iter().any(|b| b.contains(&CRat::new(rat_int(0), rat_int(1)))));
    }

    #[test]
    fn refine_nests() {
        let set = isolate_qpoly(&p(&[-1, 0, 1]), Var::S, &rat(1, 10)).unwrap();
        let fine = refine(&set, &rat(1, 1_000_000)).unwrap();
        assert_eq!(fine.cardinality(), 2);
        for (c, f) in set.boxes.iter().zip(fine.boxes.iter()) {
            assert!(f.inside(c));
            assert!(f.radius <= rat(1, 1_000_000));
        }
        // coarser request leaves the set unchanged
        assert_eq!(refine(&fine, &rat(1, 2)).unwrap(), fine);
    }

    #[test]
    fn matching_examples() {
        let prec = rat(1, 1 << 30);
        let a = isolate_qpoly(&p(&[0, -1, 1]), Var::S, &prec).unwrap(); // {0, 1}
        let b2 = isolate_qpoly(&QPoly::linear_root(&rat(1, 100)).mul(&QPoly::linear_root(&rat(99, 100))), Var::S, &prec).unwrap();
        match match_values(&a, &b2, 2).unwrap() {
            Matching::Certified { pairs, unmatched_a, unmatched_b } => {
                assert_eq!(pairs.len(), 2);
                for (i, j) in pairs {
                    let ca = rat_to_f64(&a.boxes[i].center.re);
                    let cb = rat_to_f64(&b2.boxes[j].center.re);
                    assert!((ca - cb).abs() < 0.02);
                }
                assert!(unmatched_a.is_empty() && unmatched_b.is_empty());
            }
            Matching::Inconclusive => panic!("expected a certified matching"),
        }
        let zero = isolate_qpoly(&p(&[0, 1]), Var::S, &prec).unwrap();
        let empty = AlgebraicValueSet::empty(Var::S, prec.clone());
        assert_eq!(
            match_values(&zero, &empty, 1).unwrap(),
            Matching::Certified { pairs: vec![], unmatched_a: vec![0], unmatched_b: vec![] }
        );
    }

    #[test]
    fn real_roots_with_rational_detection() {
        // (t - 1/3)(t^2 - 2)(t^2 + 1)
        let q = QPoly::linear_root(&rat(1, 3)).mul(&p(&[-2, 0, 1])).mul(&p(&[1, 0, 1]));
        let roots = real_roots_in(&q, &rat_int(0), &rat_int(2)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact, Some(rat(1, 3)));
        assert_eq!(roots[1].exact, None);
        assert!(roots[1].lo < rat(1415, 1000) && roots[1].hi > rat(1414, 1000));
        // endpoint roots are included
        let q = p(&[0, -1, 1]);
        let roots = real_roots_in(&q, &rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(roots.iter().map(|r| r.exact.clone().unwrap()).collect::<Vec<_>>(), vec![rat_int(0), rat_int(1)]);
    }
}
