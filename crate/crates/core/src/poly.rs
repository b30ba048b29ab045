//! Sparse multivariate polynomials over the rationals.
//!
//! Every polynomial lives in the fixed ring `Q[x, y, x0, s, t]`. Terms are kept
//! in a `BTreeMap` keyed by exponent vectors ordered graded-lexicographically,
//! so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub const NVARS: usize = 5;

/// Variable identifiers, in the fixed declaration order of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    X0 = 2,
    S = 3,
    T = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::X0, Var::S, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::X0 => "x0",
            Var::S => "s",
            Var::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }

    fn with_exp(&self, v: Var, e: u32) -> Monomial {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }
}

// graded lexicographic
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial in `Q[x, y, x0, s, t]`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        MPoly::constant(Rat::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(Rat::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MPoly) -> Result<MPoly> {
        let (lm, lc) = divisor
            .leading()
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(Error::DivisionByZero)?;
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&(Rat::one() / c)));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return Err(Error::Inexact);
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            rem = rem.sub(&divisor.mul_monomial(&qm).scale(&qc));
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in the given subset of variables.
    pub fn degree_in_vars(&self, vars: &[Var]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|v| m.exp(*v)).sum())
            .max()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars_used(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.involves(*v)).collect()
    }

    pub fn partial(&self, v: Var) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                r.add_term(m.with_exp(v, e - 1), c * Rat::from_integer(BigInt::from(e)));
            }
        }
        r
    }

    /// Substitute a polynomial for a variable.
    pub fn subst(&self, v: Var, value: &MPoly) -> MPoly {
        let maxe = self.degree_in(v).unwrap_or(0);
        let mut powers = vec![MPoly::one()];
        for i in 1..=maxe as usize {
            let next = powers[i - 1].mul(value);
            powers.push(next);
        }
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let rest = MPoly::term(c.clone(), m.with_exp(v, 0));
            r = r.add(&rest.mul(&powers[e]));
        }
        r
    }

    pub fn subst_rat(&self, v: Var, value: &Rat) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let k = c * pow_rat(value, e);
            r.add_term(m.with_exp(v, 0), k);
        }
        r
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let n = match self.degree_in(v) {
            Some(n) => n as usize,
            None => return Vec::new(),
        };
        let mut out = vec![MPoly::zero(); n + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut r = MPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            r = r.add(&c.mul_monomial(&Monomial::var(v, i as u32)));
        }
        r
    }

    /// Homogeneous components in the given variables, highest degree first.
    ///
    /// Returns `[f^d, f^(d-1), ..., f^0]`; empty for the zero polynomial.
    pub fn degree_forms(&self, vars: &[Var]) -> Vec<MPoly> {
        let d = match self.degree_in_vars(vars) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut forms = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let j: u32 = vars.iter().map(|v| m.exp(*v)).sum();
            forms[d - j as usize].add_term(*m, c.clone());
        }
        forms
    }

    /// `sum_j f^j * x0^(d-j)` with degrees taken in `{x, y}`.
    pub fn homogenize(&self, x0: Var) -> Result<MPoly> {
        let xy = [Var::X, Var::Y];
        if self.involves(x0) {
            return Err(Error::UnknownVariable(format!(
                "{} already occurs in the polynomial",
                x0
            )));
        }
        let d = match self.degree_in_vars(&xy) {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial),
        };
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let j = m.exp(Var::X) + m.exp(Var::Y);
            r.add_term(m.with_exp(x0, d - j), c.clone());
        }
        Ok(r)
    }

    pub fn apply_shear(&self, sh: &Shear) -> MPoly {
        if sh.slope.is_zero() {
            return self.clone();
        }
        let repl = MPoly::var(sh.source).add(&MPoly::var(sh.target).scale(&sh.slope));
        self.subst(sh.source, &repl)
    }

    pub fn eval_rat(&self, point: &[(Var, Rat)]) -> MPoly {
        let mut r = self.clone();
        for (v, val) in point {
            r = r.subst_rat(*v, val);
        }
        r
    }

    /// Multiply through by the lcm of denominators and divide by the gcd of numerators.
    pub fn primitive_integer(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = num::integer::gcd(g, n);
        }
        let mut scale = Rat::new(lcm, g);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

pub fn pow_rat(x: &Rat, e: u32) -> Rat {
    num::pow::pow(x.clone(), e as usize)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Substitution `source <- source + slope * target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shear {
    pub target: Var,
    pub source: Var,
    pub slope: Rat,
}

impl Shear {
    pub fn new(source: Var, target: Var, slope: Rat) -> Self {
        Shear { target, source, slope }
    }

    pub fn identity(source: Var, target: Var) -> Self {
        Shear::new(source, target, Rat::zero())
    }

    pub fn inverse(&self) -> Shear {
        Shear::new(self.source, self.target, -self.slope.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_zero()
    }
}

impl fmt::Display for Shear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {} + ({})*{}", self.source, self.source, self.slope, self.target)
    }
}

/// Deterministic slope sequence 0, 1, -1, 2, -2, ...
pub fn slope_sequence(budget: usize) -> impl Iterator<Item = Rat> {
    (0..budget).map(|i| {
        let k = i.div_ceil(2) as i64;
        if i % 2 == 1 {
            rat_int(k)
        } else {
            rat_int(-k)
        }
    })
}

pub const DEFAULT_SLOPE_BUDGET: usize = 64;

/// Shear `x <- x + a*y` so that `y^d` has a nonzero coefficient free of `x` and `y`.
///
/// When `t` occurs, the coefficient of `y^d` may be a polynomial in `t`; callers
/// that need it constant check [`MPoly::as_constant`] on the returned leading
/// coefficient.
pub fn make_y_monic(p: &MPoly) -> Result<(MPoly, Shear)> {
    make_monic_in(p, Var::X, Var::Y, &[Var::X, Var::Y])
}

/// Shear `source <- source + a*main` until `main^d` has a coefficient free of `vars`,
/// where `d` is the total degree in `vars`.
pub fn make_monic_in(p: &MPoly, source: Var, main: Var, vars: &[Var]) -> Result<(MPoly, Shear)> {
    let d = match p.degree_in_vars(vars) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    for slope in slope_sequence(DEFAULT_SLOPE_BUDGET) {
        let sh = Shear::new(source, main, slope);
        let g = p.apply_shear(&sh);
        if g.degree_in(main) == Some(d) {
            let lc = g.coeffs_in(main).pop().unwrap_or_default();
            if !lc.is_zero() && vars.iter().all(|v| !lc.involves(*v)) {
                return Ok((g, sh));
            }
        }
    }
    Err(Error::ShearBudget)
}

impl fmt::Display for MPoly {
    /// Canonical text: descending graded-lex terms, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(format_rat(&a));
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }
    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }
    fn t() -> MPoly {
        MPoly::var(Var::T)
    }

    fn example1() -> MPoly {
        // x^3 y + t x^2 + x
        x().pow(3).mul(&y()).add(&t().mul(&x().pow(2))).add(&x())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(x().add(&y()).add(&x().sub(&y())), x().scale(&rat_int(2)));
        assert_eq!(x().add(&y()).mul(&x().sub(&y())), x().pow(2).sub(&y().pow(2)));
        assert!(MPoly::zero().mul(&example1()).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let p = x().pow(2).add(&y().pow(2));
        assert_eq!(p.partial(Var::X), x().scale(&rat_int(2)));
        assert_eq!(example1().partial(Var::Y), x().pow(3));
        assert!(MPoly::int(7).partial(Var::X).is_zero());
    }

    #[test]
    fn degree_forms_examples() {
        let forms = example1().degree_forms(&[Var::X, Var::Y]);
        assert_eq!(
            forms,
            vec![
                x().pow(3).mul(&y()),
                MPoly::zero(),
                t().mul(&x().pow(2)),
                x(),
                MPoly::zero()
            ]
        );
        let circle = x().pow(2).add(&y().pow(2));
        assert_eq!(
            circle.degree_forms(&[Var::X, Var::Y]),
            vec![circle.clone(), MPoly::zero(), MPoly::zero()]
        );
        assert_eq!(MPoly::int(5).degree_forms(&[Var::X, Var::Y]), vec![MPoly::int(5)]);
        assert!(MPoly::zero().degree_forms(&[Var::X, Var::Y]).is_empty());
    }

    #[test]
    fn homogenize_examples() {
        let x0 = MPoly::var(Var::X0);
        let circle = x().pow(2).add(&y().pow(2));
        assert_eq!(circle.homogenize(Var::X0).unwrap(), circle);
        let expected = x()
            .pow(3)
            .mul(&y())
            .add(&t().mul(&x().pow(2)).mul(&x0.pow(2)))
            .add(&x().mul(&x0.pow(3)));
        assert_eq!(example1().homogenize(Var::X0).unwrap(), expected);
        assert_eq!(x().add(&MPoly::one()).homogenize(Var::X0).unwrap(), x().add(&x0));
        assert!(matches!(
            MPoly::int(3).homogenize(Var::X0),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn shear_examples() {
        let p = x().pow(2).mul(&y());
        let sh = Shear::new(Var::X, Var::Y, rat_int(1));
        let g = p.apply_shear(&sh);
        let expected = x()
            .pow(2)
            .mul(&y())
            .add(&x().mul(&y().pow(2)).scale(&rat_int(2)))
            .add(&y().pow(3));
        assert_eq!(g, expected);
        assert_eq!(g.degree_in(Var::Y), Some(3));
        assert_eq!(p.apply_shear(&Shear::identity(Var::X, Var::Y)), p);
        assert_eq!(g.apply_shear(&sh.inverse()), p);
    }

    #[test]
    fn make_y_monic_examples() {
        let circle = x().pow(2).add(&y().pow(2));
        let (g, sh) = make_y_monic(&circle).unwrap();
        assert_eq!(g, circle);
        assert!(sh.is_identity());

        // x^3 y: substituting x <- x + a y gives y^4 coefficient a^3; a = 1 is the first success
        let top = x().pow(3).mul(&y());
        let (g, sh) = make_y_monic(&top).unwrap();
        assert_eq!(sh.slope, rat_int(1));
        assert_eq!(g.coeffs_in(Var::Y)[4], MPoly::one());

        let p = y().pow(4).add(&x());
        let (g, sh) = make_y_monic(&p).unwrap();
        assert!(sh.is_identity());
        assert_eq!(g, p);
    }

    #[test]
    fn display_is_canonical() {
        let p = x().pow(2).scale(&rat(-3, 2)).add(&t().mul(&y())).sub(&MPoly::int(4));
        assert_eq!(p.to_string(), "-3/2*x^2 + y*t - 4");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!(x().neg().to_string(), "-x");
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&t()).pow(2);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(matches!(p.add(&MPoly::one()).div_exact(&a), Err(Error::Inexact)));
    }

    #[test]
    fn slope_sequence_order() {
        let s: Vec<Rat> = slope_sequence(5).collect();
        assert_eq!(s, vec![rat_int(0), rat_int(1), rat_int(-1), rat_int(2), rat_int(-2)]);
    }
}
