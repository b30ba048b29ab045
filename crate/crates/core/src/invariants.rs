//! The invariant vector of a single polynomial: discriminant route, chart
//! route and affine route, cross-checked against each other.

use num::{BigInt, One};

use crate::elimination::{content, discriminant, gcd_split, primitive_part, SquarefreeDecomposition, UniPoly};
use crate::error::{Error, Result};
use crate::poly::{make_y_monic, MPoly, Rat, Shear, Var};
use crate::qpoly::QPoly;
use crate::roots::{isolate_decomposition, AlgebraicValueSet};
use crate::singular::{self, AffineCriticalCluster, SigmaPoint};

/// Default isolation precision, `1/10^16`.
pub fn default_precision() -> Rat {
    Rat::new(BigInt::one(), num::pow::pow(BigInt::from(10), 16))
}

/// `Delta(x, s) = Disc_y(f - s)` after a shear making `f` monic in `y`.
///
/// `f` may involve `t`; the result is a polynomial in `x` with coefficients in
/// `s` (and `t`).
pub fn delta_pencil(f: &MPoly) -> Result<(UniPoly, Shear)> {
    let (g, sh) = make_y_monic(f)?;
    let gs = g.sub(&MPoly::var(Var::S));
    let disc = discriminant(&UniPoly::from_mpoly(&gs, Var::Y))?;
    let mut delta = UniPoly::from_mpoly(&disc, Var::X);
    if !disc.involves(Var::T) {
        let c = content(&delta, Var::S)?;
        if c.involves(Var::S) {
            delta = primitive_part(&delta, Var::S)?;
        }
    }
    Ok((delta, sh))
}

/// A set of critical values sharing the numbers `mu_c` and `lambda_c`: the
/// roots of `factor` (squarefree, monic, in `s`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueCluster {
    pub factor: QPoly,
    pub mu: u32,
    pub lambda: u32,
}

impl ValueCluster {
    pub fn len(&self) -> usize {
        self.factor.deg()
    }

    pub fn is_empty(&self) -> bool {
        self.factor.deg() == 0
    }

    pub fn rational(&self) -> Option<Rat> {
        (self.factor.deg() == 1).then(|| -self.factor.coeff(0))
    }
}

/// Clusters of values with certified boxes; box `i` of `boxes` belongs to `clusters[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSet {
    pub clusters: Vec<ValueCluster>,
    pub boxes: AlgebraicValueSet,
}

impl ValueSet {
    fn build(clusters: Vec<ValueCluster>, precision: &Rat) -> Result<ValueSet> {
        let defining = SquarefreeDecomposition {
            var: Var::S,
            factors: clusters.iter().map(|c| (c.factor.clone(), c.mu + c.lambda)).collect(),
        };
        let boxes = isolate_decomposition(defining, precision)?;
        Ok(ValueSet { clusters, boxes })
    }

    /// Number of distinct values.
    pub fn cardinality(&self) -> usize {
        self.clusters.iter().map(|c| c.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }

    /// Product of the cluster factors.
    pub fn defining_polynomial(&self) -> QPoly {
        self.clusters.iter().fold(QPoly::one(), |acc, c| acc.mul(&c.factor))
    }

    pub fn total_mu(&self) -> u32 {
        self.clusters.iter().map(|c| c.mu * c.len() as u32).sum()
    }

    pub fn total_lambda(&self) -> u32 {
        self.clusters.iter().map(|c| c.lambda * c.len() as u32).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub poly: MPoly,
    pub d: u32,
    pub k: u32,
    pub mu: u32,
    pub lambda: u32,
    pub b_aff: ValueSet,
    pub b_inf: ValueSet,
    pub b: ValueSet,
    pub shear_used: Shear,
    pub wedge: u32,
    pub sigma: Vec<(SigmaPoint, u32)>,
    pub precision: Rat,
}

impl InvariantRecord {
    /// `(mu, lambda, #B, #B_aff, #B_inf, deg)`.
    pub fn integers(&self) -> [u32; 6] {
        [
            self.mu,
            self.lambda,
            self.b.cardinality() as u32,
            self.b_aff.cardinality() as u32,
            self.b_inf.cardinality() as u32,
            self.d,
        ]
    }
}

pub const INTEGER_NAMES: [&str; 6] = ["mu", "lambda", "#B", "#B_aff", "#B_inf", "deg"];

fn plane_degree(f: &MPoly) -> Result<u32> {
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

fn coeff_q(delta: &UniPoly, i: usize) -> Result<QPoly> {
    QPoly::from_mpoly(&delta.coeff(i), Var::S)
}

/// Squarefree parts of the roots of `q1`, with `lambda_c` from the vanishing
/// pattern of `q1, q2, ...`.
fn infinity_clusters(delta: &UniPoly) -> Result<Vec<ValueCluster>> {
    let k = delta.deg();
    let q1 = coeff_q(delta, k)?;
    if q1.is_zero() {
        return Err(Error::Inconsistency("leading coefficient of Delta vanishes".into()));
    }
    if q1.deg() == 0 {
        return Ok(Vec::new());
    }
    let base = q1.squarefree_part().monic();
    let tests: Vec<QPoly> = (0..k).rev().map(|i| coeff_q(delta, i)).collect::<Result<_>>()?;
    let mut by_lambda: std::collections::BTreeMap<u32, QPoly> = Default::default();
    for (piece, pattern) in gcd_split(&base, &tests)? {
        // q1 vanishes by construction; count the following vanishing q_i
        let lam_pattern = 1 + pattern.iter().take_while(|z| **z).count() as u32;
        // degree drop: the top coefficient of Delta(x, c) that survives modulo the piece
        let surviving = (0..=k)
            .rev()
            .find(|&i| !coeff_q(delta, i).map(|q| q.rem(&piece).is_zero()).unwrap_or(true));
        let lam_drop = match surviving {
            Some(i) => (k - i) as u32,
            None => return Err(Error::NonIsolated),
        };
        if lam_pattern != lam_drop {
            return Err(Error::Inconsistency(format!(
                "lambda_c by vanishing pattern ({}) differs from the degree drop ({})",
                lam_pattern, lam_drop
            )));
        }
        let e = by_lambda.entry(lam_pattern).or_insert_with(QPoly::one);
        *e = e.mul(&piece);
    }
    Ok(by_lambda
        .into_iter()
        .map(|(lambda, factor)| ValueCluster { factor: factor.monic(), mu: 0, lambda })
        .collect())
}

/// `B_inf` with `lambda_c` per cluster, by the discriminant route.
pub fn b_infinity(f: &MPoly) -> Result<ValueSet> {
    b_infinity_with(f, &default_precision())
}

pub fn b_infinity_with(f: &MPoly, precision: &Rat) -> Result<ValueSet> {
    plane_degree(f)?;
    let (delta, _) = delta_pencil(f)?;
    ValueSet::build(infinity_clusters(&delta)?, precision)
}

/// Value clusters with `mu_c` from the affine critical points.
fn affine_clusters(points: &[AffineCriticalCluster]) -> Result<Vec<ValueCluster>> {
    let m = points
        .iter()
        .fold(QPoly::one(), |acc, c| acc.mul(&c.value_polynomial()));
    Ok(m.squarefree_decomposition()?
        .into_iter()
        .map(|(factor, mu)| ValueCluster { factor: factor.monic(), mu, lambda: 0 })
        .collect())
}

/// `B_aff` with `mu_c` per cluster.
pub fn b_affine(f: &MPoly) -> Result<ValueSet> {
    b_affine_with(f, &default_precision())
}

pub fn b_affine_with(f: &MPoly, precision: &Rat) -> Result<ValueSet> {
    plane_degree(f)?;
    let points = singular::affine_critical_points(f)?;
    ValueSet::build(affine_clusters(&points)?, precision)
}

/// Common refinement of two cluster lists, keeping `mu` from the first and `lambda` from the second.
fn merge_clusters(aff: &[ValueCluster], inf: &[ValueCluster]) -> Result<Vec<ValueCluster>> {
    let all: Vec<&ValueCluster> = aff.iter().chain(inf).collect();
    if all.is_empty() {
        return Ok(Vec::new());
    }
    let mut base = QPoly::one();
    for c in &all {
        let g = base.gcd(&c.factor);
        base = base.mul(&c.factor.div_exact(&g)?);
    }
    let tests: Vec<QPoly> = all.iter().map(|c| c.factor.clone()).collect();
    let mut out = Vec::new();
    for (piece, pattern) in gcd_split(&base.monic(), &tests)? {
        let mut mu = 0;
        let mut lambda = 0;
        for (c, hit) in all.iter().zip(&pattern) {
            if *hit {
                mu += c.mu;
                lambda += c.lambda;
            }
        }
        out.push(ValueCluster { factor: piece, mu, lambda });
    }
    out.sort_by(|a, b| (a.mu, a.lambda, format!("{:?}", a.factor)).cmp(&(b.mu, b.lambda, format!("{:?}", b.factor))));
    Ok(out)
}

/// Chart-route check: for each cluster of `B_inf`, the jumps `mu(F_c) - nu`
/// summed over `Sigma` reproduce `lambda_c` at every value of the cluster.
fn check_routes(f: &MPoly, sigma: &[(SigmaPoint, u32)], inf: &[ValueCluster]) -> Result<()> {
    for c in inf {
        let jumps = singular::jump_polynomial(f, sigma, &c.factor)?;
        let expected = c.factor.pow(c.lambda);
        if jumps.monic() != expected.monic() {
            return Err(Error::Inconsistency(format!(
                "chart route gives jump polynomial {} but lambda_c = {} on {}",
                jumps.display_in(Var::S),
                c.lambda,
                c.factor.display_in(Var::S)
            )));
        }
    }
    Ok(())
}

/// `nu` for every point of `Sigma`, with clusters split where `nu` differs.
pub fn sigma_with_nu(f: &MPoly, avoid: &QPoly) -> Result<Vec<(SigmaPoint, u32)>> {
    let mut out = Vec::new();
    for p in singular::sigma(f)? {
        out.extend(singular::nu_by_piece_avoiding(f, &p, avoid)?);
    }
    Ok(out)
}

pub fn invariant_record(f: &MPoly) -> Result<InvariantRecord> {
    invariant_record_with(f, &default_precision())
}

/// Assembles the full record and asserts the identities tying the routes together.
pub fn invariant_record_with(f: &MPoly, precision: &Rat) -> Result<InvariantRecord> {
    let d = plane_degree(f)?;
    let (delta, shear) = delta_pencil(f)?;
    let k = delta.deg() as u32;
    let inf = infinity_clusters(&delta)?;
    let points = singular::affine_critical_points(f)?;
    let mu_points = singular::total_milnor(&points);
    let aff = affine_clusters(&points)?;
    let mu: u32 = aff.iter().map(|c| c.mu * c.len() as u32).sum();
    if mu != mu_points {
        return Err(Error::Inconsistency(format!(
            "sum of mu_c ({}) differs from the number of critical points with multiplicity ({})",
            mu, mu_points
        )));
    }
    let lambda: u32 = inf.iter().map(|c| c.lambda * c.len() as u32).sum();
    if k + 1 != mu + lambda + d {
        return Err(Error::Inconsistency(format!(
            "k = {} but mu + lambda + d - 1 = {}",
            k,
            mu + lambda + d - 1
        )));
    }
    let q1 = coeff_q(&delta, delta.deg())?;
    let sigma = sigma_with_nu(f, &q1)?;
    if sigma.is_empty() && lambda > 0 {
        return Err(Error::Inconsistency("lambda > 0 with empty Sigma".into()));
    }
    check_routes(f, &sigma, &inf)?;
    let merged = merge_clusters(&aff, &inf)?;
    let rec = InvariantRecord {
        poly: f.clone(),
        d,
        k,
        mu,
        lambda,
        b_aff: ValueSet::build(aff, precision)?,
        b_inf: ValueSet::build(inf, precision)?,
        b: ValueSet::build(merged, precision)?,
        shear_used: shear,
        wedge: mu + lambda,
        sigma,
        precision: precision.clone(),
    };
    let values = points
        .iter()
        .fold(QPoly::one(), |acc, p| acc.mul(&p.value_polynomial()));
    for i in 0..rec.b.clusters.len() {
        euler_check_with(&rec, i, &delta, &values)?;
    }
    Ok(rec)
}

/// Checks `chi(f^-1(c)) = 1 - (mu + lambda) + mu_c + lambda_c` on cluster `i`
/// of `rec.b`, recomputing `lambda_c` from the degree drop of `Delta(x, c)`
/// and `mu_c` from the critical values. Returns `chi`.
pub fn euler_check(rec: &InvariantRecord, i: usize) -> Result<i64> {
    let (delta, _) = delta_pencil(&rec.poly)?;
    let points = singular::affine_critical_points(&rec.poly)?;
    let m = points
        .iter()
        .fold(QPoly::one(), |acc, p| acc.mul(&p.value_polynomial()));
    euler_check_with(rec, i, &delta, &m)
}

fn euler_check_with(rec: &InvariantRecord, i: usize, delta: &UniPoly, values: &QPoly) -> Result<i64> {
    let c = rec
        .b
        .clusters
        .get(i)
        .ok_or_else(|| Error::Precondition(format!("no cluster {}", i)))?;
    let k = delta.deg();
    let surviving = (0..=k)
        .rev()
        .find(|&j| !coeff_q(delta, j).map(|q| q.rem(&c.factor).is_zero()).unwrap_or(true))
        .ok_or(Error::NonIsolated)?;
    let lambda_c = (k - surviving) as u32;
    let mut mu_c = 0u32;
    let mut rest = values.clone();
    while c.factor.divides(&rest) {
        rest = rest.div_exact(&c.factor)?;
        mu_c += 1;
    }
    if lambda_c != c.lambda || mu_c != c.mu {
        return Err(Error::Inconsistency(format!(
            "cluster {}: recomputed (mu_c, lambda_c) = ({}, {}) but recorded ({}, {})",
            c.factor.display_in(Var::S),
            mu_c,
            lambda_c,
            c.mu,
            c.lambda
        )));
    }
    let chi = 1 - (rec.mu + rec.lambda) as i64 + (mu_c + lambda_c) as i64;
    let generic = 1 - (rec.mu + rec.lambda) as i64;
    if chi - generic != (c.mu + c.lambda) as i64 {
        return Err(Error::Inconsistency("Euler characteristic identity fails".into()));
    }
    Ok(chi)
}

/// Shear independence: the record's integers are unchanged under the extra
/// linear change `x <- x + a y` applied beforehand.
pub fn sheared_integers(f: &MPoly, slope: &Rat) -> Result<[u32; 6]> {
    let g = f.apply_shear(&Shear::new(Var::X, Var::Y, slope.clone()));
    Ok(invariant_record(&g)?.integers())
}
