//! Dense univariate polynomials with rational coefficients.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_rat, MPoly, Monomial, Rat, Var};

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, "]")
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Self {
        QPoly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn x() -> Self {
        QPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn shift_up(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        QPoly::new(c)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = Rat::one() / self.lc();
        self.scale(&inv)
    }

    pub fn divrem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg();
        let lc_inv = Rat::one() / d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).map(|(_, r)| r).unwrap_or_else(|_| self.clone())
    }

    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inexact)
        }
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0)` is zero.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rat();
        }
        a.monic()
    }

    /// Rescale so the coefficients are coprime integers; keeps the sign of the leading term.
    pub fn primitive_rat(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num::integer::gcd(g, c.numer() * (&lcm / c.denom()));
        }
        let mut s = Rat::new(lcm, g);
        if self.lc().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*o = g`, `g` monic.
    pub fn xgcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rat::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &QPoly) -> Option<QPoly> {
        let (g, u, _) = self.rem(m).xgcd(m);
        if g.degree() == Some(0) {
            Some(u.rem(m))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, o: &QPoly, m: &QPoly) -> QPoly {
        self.mul(o).rem(m)
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Yun's squarefree decomposition: monic pairwise-coprime factors with multiplicities,
    /// such that `self = lc * prod f_i^m_i`. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(QPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0)?;
        let mut c = fp.div_exact(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a)?;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a)?;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Order of vanishing at `x = 0`.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Resultant over Q by the Euclidean algorithm.
    pub fn resultant(&self, o: &QPoly) -> Rat {
        if self.is_zero() || o.is_zero() {
            return Rat::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = Rat::one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return acc * num::pow::pow(b.lc(), m);
            }
            if m == 0 {
                return acc * num::pow::pow(a.lc(), n);
            }
            // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
            let r = a.rem(&b);
            if r.is_zero() {
                return Rat::zero();
            }
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= num::pow::pow(b.lc(), m - r.deg());
            a = b;
            b = r;
        }
    }

    /// Compose: `self(g(x))`.
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: &Rat) -> QPoly {
        self.compose(&QPoly::new(vec![a.clone(), Rat::one()]))
    }

    pub fn to_mpoly(&self, v: Var) -> MPoly {
        MPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as u32), c.clone())),
        )
    }

    /// Converts a polynomial involving only `v`.
    pub fn from_mpoly(p: &MPoly, v: Var) -> Result<QPoly> {
        let mut coeffs = vec![Rat::zero(); p.degree_in(v).unwrap_or(0) as usize + 1];
        for (m, c) in p.terms() {
            if m.degree() != m.exp(v) {
                return Err(Error::Precondition(format!(
                    "polynomial {} is not univariate in {}",
                    p, v
                )));
            }
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Ok(QPoly::new(coeffs))
    }

    /// Power sums `sum_i r_i^k`, `k = 0..=n`, over the roots of `self` (Newton's identities).
    pub fn power_sums(&self, n: usize) -> Vec<Rat> {
        let d = self.deg();
        let m = self.monic();
        // monic: x^d + a_{d-1} x^{d-1} + ... ; e_k = (-1)^k a_{d-k}
        let a = |k: usize| -> Rat {
            if k > d {
                Rat::zero()
            } else {
                m.coeff(d - k)
            }
        };
        let mut p = vec![Rat::from_integer(BigInt::from(d))];
        for k in 1..=n {
            // p_k + a1 p_{k-1} + ... + a_{k-1} p_1 + k a_k = 0
            let mut s = Rat::from_integer(BigInt::from(k)) * a(k);
            for i in 1..k {
                s += a(i) * &p[k - i];
            }
            p.push(-s);
        }
        p
    }

    /// Characteristic polynomial of multiplication by `elem` in `Q[x]/(self)`,
    /// i.e. `prod (s - elem(r_i))` over the roots of `self`.
    pub fn norm_polynomial(&self, elem: &QPoly) -> QPoly {
        let n = self.deg();
        let ps = self.power_sums(n.saturating_sub(1));
        let trace = |a: &QPoly| -> Rat {
            a.coeffs
                .iter()
                .enumerate()
                .fold(Rat::zero(), |acc, (i, c)| acc + c * &ps[i])
        };
        let elem = elem.rem(self);
        // power sums of the conjugates elem(r_i)
        let mut q = vec![Rat::from_integer(BigInt::from(n))];
        let mut pw = QPoly::one();
        for _ in 1..=n {
            pw = pw.mul_mod(&elem, self);
            q.push(trace(&pw));
        }
        // Newton: e_k = (1/k) sum_{i=1}^k (-1)^{i-1} e_{k-i} q_i
        let mut e = vec![Rat::one()];
        for k in 1..=n {
            let mut s = Rat::zero();
            for i in 1..=k {
                let term = &e[k - i] * &q[i];
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            e.push(s / Rat::from_integer(BigInt::from(k)));
        }
        // prod (s - r_i) = sum_k (-1)^k e_k s^{n-k}
        let mut c = vec![Rat::zero(); n + 1];
        for (k, ek) in e.iter().enumerate() {
            c[n - k] = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
        }
        QPoly::new(c)
    }

    pub fn display_in(&self, v: Var) -> String {
        self.to_mpoly(v).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn gcd_examples() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let s2 = QPoly::from_ints(&[0, 0, 1]);
        let s3 = QPoly::from_ints(&[0, 0, 0, 1]);
        assert_eq!(s2.gcd(&s3), s2);
    }

    #[test]
    fn squarefree_examples() {
        // (s-1)^2 (s+2)
        let p = QPoly::from_ints(&[-1, 1]).pow(2).mul(&QPoly::from_ints(&[2, 1]));
        let d = p.squarefree_decomposition().unwrap();
        assert_eq!(
            d,
            vec![(QPoly::from_ints(&[2, 1]), 1), (QPoly::from_ints(&[-1, 1]), 2)]
        );
        let s3 = QPoly::from_ints(&[0, 0, 0, 1]);
        assert_eq!(s3.squarefree_decomposition().unwrap(), vec![(QPoly::x(), 3)]);
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(x - a, x - b) = a - b
        let a = QPoly::linear_root(&rat_int(3));
        let b = QPoly::linear_root(&rat(1, 2));
        assert_eq!(a.resultant(&b), rat(5, 2));
        let p = QPoly::from_ints(&[1, 2, 3]);
        assert!(p.resultant(&p).is_zero());
    }

    #[test]
    fn norm_polynomial_of_conjugates() {
        // roots of x^2 - 2 are ±sqrt2; elem = x + 1 -> (s - 1)^2 - 2 = s^2 - 2s - 1
        let h = QPoly::from_ints(&[-2, 0, 1]);
        let e = QPoly::from_ints(&[1, 1]);
        assert_eq!(h.norm_polynomial(&e), QPoly::from_ints(&[-1, -2, 1]));
        // constant element: (s - 5)^2
        let c = QPoly::from_ints(&[5]);
        assert_eq!(h.norm_polynomial(&c), QPoly::from_ints(&[25, -10, 1]));
    }

    #[test]
    fn inverse_mod() {
        let m = QPoly::from_ints(&[-2, 0, 1]);
        let a = QPoly::from_ints(&[1, 1]);
        let inv = a.inv_mod(&m).unwrap();
        assert_eq!(a.mul_mod(&inv, &m), QPoly::one());
        assert!(QPoly::from_ints(&[0, 1]).pow(2).sub(&QPoly::from_ints(&[2])).inv_mod(&m).is_none());
    }
}
