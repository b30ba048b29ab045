//! Univariate elimination over polynomial coefficient rings: resultants,
//! discriminants, gcds, squarefree decomposition and gcd-splitting of root sets.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rat, Var};
use crate::qpoly::QPoly;

/// A polynomial in `main` whose coefficients are polynomials in the other variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub main: Var,
    coeffs: Vec<MPoly>,
}

impl UniPoly {
    pub fn new(main: Var, mut coeffs: Vec<MPoly>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| !c.involves(main)));
        UniPoly { main, coeffs }
    }

    pub fn from_mpoly(p: &MPoly, main: Var) -> Self {
        UniPoly::new(main, p.coeffs_in(main))
    }

    pub fn from_qpoly(p: &QPoly, main: Var) -> Self {
        UniPoly::new(
            main,
            p.coeffs().iter().map(|c| MPoly::constant(c.clone())).collect(),
        )
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::from_coeffs_in(self.main, &self.coeffs)
    }

    /// Rational-coefficient view, when no other variable occurs.
    pub fn to_qpoly(&self) -> Result<QPoly> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_constant().ok_or_else(|| {
                    Error::Precondition(format!("coefficient {} is not rational", c))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(QPoly::new)
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> MPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> MPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.main,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rat::from_integer((i as i64).into())))
                .collect(),
        )
    }

    fn scale(&self, c: &MPoly) -> UniPoly {
        UniPoly::new(self.main, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(self.main, (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    fn shift_scale(&self, k: usize, c: &MPoly) -> UniPoly {
        let mut v = vec![MPoly::zero(); k];
        v.extend(self.coeffs.iter().map(|a| a.mul(c)));
        UniPoly::new(self.main, v)
    }

    fn div_coeffs(&self, d: &MPoly) -> Result<UniPoly> {
        Ok(UniPoly::new(
            self.main,
            self.coeffs.iter().map(|c| c.div_exact(d)).collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &UniPoly) -> Result<UniPoly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.deg();
        let lcb = b.lc();
        let mut r = self.clone();
        if r.is_zero() || r.deg() < db {
            return Ok(r);
        }
        let mut e = r.deg() - db + 1;
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let t = b.shift_scale(shift, &r.lc());
            r = r.scale(&lcb).sub(&t);
            e -= 1;
        }
        Ok(r.scale(&lcb.pow(e as u32)))
    }

    /// Substitute a rational value for a coefficient variable.
    pub fn subst_rat(&self, v: Var, value: &Rat) -> UniPoly {
        UniPoly::new(
            self.main,
            self.coeffs.iter().map(|c| c.subst_rat(v, value)).collect(),
        )
    }
}

fn check_same_main(p: &UniPoly, q: &UniPoly) -> Result<()> {
    if p.main != q.main {
        Err(Error::VariableMismatch)
    } else {
        Ok(())
    }
}

/// Resultant with respect to the main variable by the subresultant PRS.
///
/// A constant argument follows the convention `Res(a, q) = a^deg q`.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<MPoly> {
    check_same_main(p, q)?;
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, n) = (p.deg(), q.deg());
    if m == 0 && n == 0 {
        return Err(Error::BothConstant);
    }
    if n == 0 {
        return Ok(q.lc().pow(m as u32));
    }
    if m == 0 {
        return Ok(p.lc().pow(n as u32));
    }
    let (mut a, mut b, mut sign) = if m >= n {
        (p.clone(), q.clone(), false)
    } else {
        (q.clone(), p.clone(), (m * n) % 2 == 1)
    };
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = a.prem(&b)?;
        if r.is_zero() {
            return Ok(MPoly::zero());
        }
        let divisor = g.mul(&h.pow(delta as u32));
        a = b;
        b = r.div_coeffs(&divisor)?;
        g = a.lc();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32).div_exact(&h.pow(delta as u32 - 1))?,
        };
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let lb = b.lc();
    let res = if da == 1 {
        lb
    } else {
        lb.pow(da).div_exact(&h.pow(da - 1))?
    };
    Ok(if sign { res.neg() } else { res })
}

/// Determinant of the Sylvester matrix by fraction-free Gaussian elimination.
///
/// Slower than [`resultant`]; kept as an independent route.
pub fn sylvester_resultant(p: &UniPoly, q: &UniPoly) -> Result<MPoly> {
    check_same_main(p, q)?;
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, n) = (p.deg(), q.deg());
    if m == 0 && n == 0 {
        return Err(Error::BothConstant);
    }
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = p.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = q.coeff(n - j);
        }
    }
    bareiss_det(mat)
}

/// The `j`-th subresultant of `p` and `q` with respect to the main variable,
/// from determinants of Sylvester submatrices. Requires `j < min(deg p, deg q)`.
pub fn subresultant(p: &UniPoly, q: &UniPoly, j: usize) -> Result<UniPoly> {
    check_same_main(p, q)?;
    let (m, n) = (p.deg(), q.deg());
    if j >= m.min(n) {
        return Err(Error::Precondition(format!(
            "subresultant index {} needs degrees above it",
            j
        )));
    }
    let rows = m + n - 2 * j;
    let cols = m + n - j;
    let mut mat = vec![vec![MPoly::zero(); cols]; rows];
    for i in 0..n - j {
        for k in 0..=m {
            mat[i][i + k] = p.coeff(m - k);
        }
    }
    for i in 0..m - j {
        for k in 0..=n {
            mat[n - j + i][i + k] = q.coeff(n - k);
        }
    }
    let mut coeffs = Vec::with_capacity(j + 1);
    for i in 0..=j {
        // column of main^i is cols - 1 - i
        let sq: Vec<Vec<MPoly>> = mat
            .iter()
            .map(|row| {
                let mut r: Vec<MPoly> = row[..rows - 1].to_vec();
                r.push(row[cols - 1 - i].clone());
                r
            })
            .collect();
        coeffs.push(bareiss_det(sq)?);
    }
    Ok(UniPoly::new(p.main, coeffs))
}

pub fn bareiss_det(mut a: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let n = a.len();
    if n == 0 {
        return Ok(MPoly::one());
    }
    let mut neg = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    neg = !neg;
                }
                None => return Ok(MPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if neg { d.neg() } else { d })
}

/// `(-1)^(n(n-1)/2) * Res(p, p') / lc(p)`, so that `Disc(y^2 - s) = 4s`.
pub fn discriminant(p: &UniPoly) -> Result<MPoly> {
    if p.is_zero() || p.deg() == 0 {
        return Err(Error::Precondition(
            "discriminant needs degree at least 1".into(),
        ));
    }
    let n = p.deg();
    let r = resultant(p, &p.derivative())?;
    let d = r.div_exact(&p.lc())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { d.neg() } else { d })
}

/// Variables occurring in the coefficients.
fn coefficient_vars(p: &UniPoly) -> Vec<Var> {
    let mut vs: Vec<Var> = Vec::new();
    for c in p.coeffs() {
        for v in c.vars_used() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
    }
    vs.sort();
    vs
}

/// Gcd of the coefficients, when they involve at most one variable `w`.
pub fn content(p: &UniPoly, w: Var) -> Result<MPoly> {
    let mut g = QPoly::zero();
    for c in p.coeffs() {
        g = g.gcd(&QPoly::from_mpoly(c, w)?);
    }
    Ok(g.to_mpoly(w))
}

pub fn primitive_part(p: &UniPoly, w: Var) -> Result<UniPoly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let c = content(p, w)?;
    p.div_coeffs(&c).map(normalize_sign)
}

fn normalize_sign(p: UniPoly) -> UniPoly {
    let lc = p.lc();
    match lc.leading() {
        Some((_, c)) if c < &Rat::zero() => p.scale(&MPoly::int(-1)),
        _ => p,
    }
}

/// Gcd over `Q[w][main]` (at most one coefficient variable), normalized so the
/// leading coefficient is monic in `w`. With rational coefficients this is the monic gcd.
pub fn gcd_uni(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    check_same_main(p, q)?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut vars = coefficient_vars(p);
    for v in coefficient_vars(q) {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    match vars.len() {
        0 => {
            let g = p.to_qpoly()?.gcd(&q.to_qpoly()?);
            Ok(UniPoly::from_qpoly(&g, p.main))
        }
        1 => {
            let w = vars[0];
            if p.is_zero() {
                return normalize_monic_lc(primitive_part(q, w)?, q, w);
            }
            if q.is_zero() {
                return normalize_monic_lc(primitive_part(p, w)?, p, w);
            }
            let cg = QPoly::from_mpoly(&content(p, w)?, w)?.gcd(&QPoly::from_mpoly(&content(q, w)?, w)?);
            let (mut a, mut b) = (primitive_part(p, w)?, primitive_part(q, w)?);
            if a.deg() < b.deg() {
                std::mem::swap(&mut a, &mut b);
            }
            while !b.is_zero() && b.deg() > 0 {
                let r = a.prem(&b)?;
                a = b;
                b = if r.is_zero() { r } else { primitive_part(&r, w)? };
            }
            let g = if b.is_zero() {
                a
            } else {
                // nonzero constant remainder: coprime
                UniPoly::new(p.main, vec![MPoly::one()])
            };
            let g = g.scale(&cg.to_mpoly(w));
            normalize_monic_lc(g, p, w)
        }
        _ => Err(Error::Unsupported(
            "gcd with coefficients in more than one variable".into(),
        )),
    }
}

fn normalize_monic_lc(g: UniPoly, _orig: &UniPoly, w: Var) -> Result<UniPoly> {
    let lc = QPoly::from_mpoly(&g.lc(), w)?;
    let inv = Rat::one() / lc.lc();
    Ok(g.scale(&MPoly::constant(inv)))
}

/// Squarefree factors with multiplicities; factors monic, pairwise coprime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub var: Var,
    pub factors: Vec<(QPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn of(p: &QPoly, var: Var) -> Result<Self> {
        Ok(SquarefreeDecomposition {
            var,
            factors: p.squarefree_decomposition()?,
        })
    }

    pub fn empty(var: Var) -> Self {
        SquarefreeDecomposition { var, factors: Vec::new() }
    }

    /// Product of `factor^multiplicity`.
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn squarefree_part(&self) -> QPoly {
        self.factors.iter().fold(QPoly::one(), |acc, (f, _)| acc.mul(f))
    }

    pub fn to_unipolys(&self) -> Vec<(UniPoly, u32)> {
        self.factors
            .iter()
            .map(|(f, m)| (UniPoly::from_qpoly(f, self.var), *m))
            .collect()
    }

    /// Number of distinct roots.
    pub fn root_count(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.deg()).sum()
    }

    /// Roots counted with multiplicity.
    pub fn weighted_count(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.deg() * *m as usize).sum()
    }
}

pub fn squarefree(p: &UniPoly) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SquarefreeDecomposition::of(&p.to_qpoly()?, p.main)
}

/// Splits a squarefree `base` into coprime factors on which every test either
/// vanishes at all roots or at none. A zero test vanishes everywhere.
pub fn gcd_split(base: &QPoly, tests: &[QPoly]) -> Result<Vec<(QPoly, Vec<bool>)>> {
    if base.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !base.is_constant() && !base.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut pieces: Vec<(QPoly, Vec<bool>)> = if base.is_constant() {
        Vec::new()
    } else {
        vec![(base.monic(), Vec::new())]
    };
    for test in tests {
        let mut next = Vec::with_capacity(pieces.len());
        for (piece, pattern) in pieces {
            let g = piece.gcd(test);
            let dg = g.degree().unwrap_or(0);
            if test.is_zero() || dg == piece.deg() {
                let mut pt = pattern;
                pt.push(true);
                next.push((piece, pt));
            } else if dg == 0 {
                let mut pf = pattern;
                pf.push(false);
                next.push((piece, pf));
            } else {
                let rest = piece.div_exact(&g)?.monic();
                let mut pt = pattern.clone();
                pt.push(true);
                let mut pf = pattern;
                pf.push(false);
                next.push((g, pt));
                next.push((rest, pf));
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

pub fn gcd_split_uni(base: &UniPoly, tests: &[UniPoly]) -> Result<Vec<(UniPoly, Vec<bool>)>> {
    for t in tests {
        check_same_main(base, t)?;
    }
    let b = base.to_qpoly()?;
    let ts = tests.iter().map(|t| t.to_qpoly()).collect::<Result<Vec<_>>>()?;
    Ok(gcd_split(&b, &ts)?
        .into_iter()
        .map(|(f, p)| (UniPoly::from_qpoly(&f, base.main), p))
        .collect())
}

/// Squarefree part of a polynomial in `Q[w][main]`, primitive in `w`.
pub fn squarefree_part_over(p: &UniPoly, w: Var) -> Result<UniPoly> {
    if p.deg() == 0 {
        return Ok(UniPoly::new(p.main, vec![MPoly::one()]));
    }
    let pp = primitive_part(p, w)?;
    let g = gcd_uni(&pp, &pp.derivative())?;
    let g = primitive_part(&g, w)?;
    let q = pp.to_mpoly().div_exact(&g.to_mpoly())?;
    primitive_part(&UniPoly::from_mpoly(&q, p.main), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subresultant_gives_gcd() {
        // p = (y - 1)(y - 2)(y + 5), q = (y - 1)(y - 2)(y - 7): S_2 is proportional to (y - 1)(y - 2)
        let lin = |r: i64| QPoly::from_ints(&[-r, 1]);
        let p = UniPoly::from_qpoly(&lin(1).mul(&lin(2)).mul(&lin(-5)), Var::Y);
        let q = UniPoly::from_qpoly(&lin(1).mul(&lin(2)).mul(&lin(7)), Var::Y);
        let s2 = subresultant(&p, &q, 2).unwrap().to_qpoly().unwrap();
        assert_eq!(s2.monic(), lin(1).mul(&lin(2)));
        let s1 = subresultant(&p, &q, 1).unwrap().to_qpoly().unwrap();
        assert!(s1.is_zero());
        let s0 = subresultant(&p, &q, 0).unwrap();
        assert_eq!(s0.coeff(0), resultant(&p, &q).unwrap());
    }
    use crate::poly::rat_int;

    fn v(var: Var) -> MPoly {
        MPoly::var(var)
    }

    fn uni(p: &MPoly, main: Var) -> UniPoly {
        UniPoly::from_mpoly(p, main)
    }

    #[test]
    fn resultant_examples() {
        let s = v(Var::S);
        let y = v(Var::Y);
        let p = uni(&y.pow(2).sub(&s), Var::Y);
        let q = uni(&y.scale(&rat_int(2)), Var::Y);
        assert_eq!(resultant(&p, &q).unwrap(), s.scale(&rat_int(-4)));
        assert_eq!(sylvester_resultant(&p, &q).unwrap(), s.scale(&rat_int(-4)));

        let a = v(Var::X);
        let b = v(Var::T);
        let l1 = uni(&y.sub(&a), Var::Y);
        let l2 = uni(&y.sub(&b), Var::Y);
        assert_eq!(resultant(&l1, &l2).unwrap(), a.sub(&b));
        assert!(resultant(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn resultant_constant_conventions() {
        let x = v(Var::X);
        let y = v(Var::Y);
        // Res_y(2x, 2y) = 2x
        let a = uni(&x.scale(&rat_int(2)), Var::Y);
        let b = uni(&y.scale(&rat_int(2)), Var::Y);
        assert_eq!(resultant(&a, &b).unwrap(), x.scale(&rat_int(2)));
        let c = uni(&MPoly::int(3), Var::Y);
        assert_eq!(resultant(&a, &c), Err(Error::BothConstant));
    }

    #[test]
    fn discriminant_examples() {
        let s = v(Var::S);
        let y = v(Var::Y);
        let x = v(Var::X);
        let p = uni(&y.pow(2).sub(&s), Var::Y);
        assert_eq!(discriminant(&p).unwrap(), s.scale(&rat_int(4)));
        let circle = uni(&x.pow(2).add(&y.pow(2)).sub(&s), Var::Y);
        assert_eq!(
            discriminant(&circle).unwrap(),
            s.scale(&rat_int(4)).sub(&x.pow(2).scale(&rat_int(4)))
        );
        // y^2 + 2by + c with b = x, c = t
        let b = v(Var::X);
        let c = v(Var::T);
        let quad = uni(&y.pow(2).add(&b.mul(&y).scale(&rat_int(2))).add(&c), Var::Y);
        assert_eq!(
            discriminant(&quad).unwrap(),
            b.pow(2).scale(&rat_int(4)).sub(&c.scale(&rat_int(4)))
        );
        // degree one
        assert_eq!(discriminant(&uni(&y.sub(&s), Var::Y)).unwrap(), MPoly::one());
        assert!(discriminant(&uni(&s, Var::Y)).is_err());
    }

    #[test]
    fn gcd_uni_examples() {
        let s = v(Var::S);
        let a = uni(&s.pow(2).sub(&MPoly::one()), Var::S);
        let b = uni(&s.sub(&MPoly::one()), Var::S);
        assert_eq!(gcd_uni(&a, &b).unwrap(), b);
        let a = uni(&s.pow(2), Var::S);
        let b = uni(&s.pow(3), Var::S);
        assert_eq!(gcd_uni(&a, &b).unwrap(), a);
        // over Q[t]: gcd((s - t)(s + 1), (s - t) t) = s - t
        let t = v(Var::T);
        let p = s.sub(&t).mul(&s.add(&MPoly::one()));
        let q = s.sub(&t).mul(&t);
        assert_eq!(gcd_uni(&uni(&p, Var::S), &uni(&q, Var::S)).unwrap(), uni(&s.sub(&t), Var::S));
    }

    #[test]
    fn gcd_split_examples() {
        let s = QPoly::x();
        let base = s.mul(&QPoly::from_ints(&[-1, 1]));
        let out = gcd_split(&base, &[s.clone()]).unwrap();
        assert_eq!(
            out,
            vec![(s.clone(), vec![true]), (QPoly::from_ints(&[-1, 1]), vec![false])]
        );
        let out = gcd_split(&s, &[s.clone(), QPoly::from_ints(&[1, 0, 1])]).unwrap();
        assert_eq!(out, vec![(s.clone(), vec![true, false])]);
        assert_eq!(
            gcd_split(&s.pow(2), &[s.clone()]),
            Err(Error::NotSquarefree)
        );
    }

    #[test]
    fn squarefree_part_over_t() {
        let s = v(Var::S);
        let t = v(Var::T);
        // (s - t)^2 (s + 1) t
        let p = s.sub(&t).pow(2).mul(&s.add(&MPoly::one())).mul(&t);
        let sq = squarefree_part_over(&uni(&p, Var::S), Var::T).unwrap();
        assert_eq!(sq.to_mpoly(), s.sub(&t).mul(&s.add(&MPoly::one())));
    }
}
