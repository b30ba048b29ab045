//! Exact complex rationals and small helpers for certified bounds.

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::poly::Rat;
use crate::qpoly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        CRat { re, im: Rat::zero() }
    }

    pub fn zero() -> Self {
        CRat::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, c: &Rat) -> CRat {
        CRat::new(&self.re * c, &self.im * c)
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> CRat {
        CRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn div(&self, o: &CRat) -> CRat {
        let n = o.norm_sqr();
        let num = self.mul(&o.conj());
        CRat::new(num.re / &n, num.im / n)
    }

    pub fn round(&self, bits: u32) -> CRat {
        CRat::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }

    pub fn from_f64(re: f64, im: f64) -> Option<CRat> {
        Some(CRat::new(Rat::from_float(re)?, Rat::from_float(im)?))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Nearest dyadic rational with `bits` fractional bits.
pub fn round_dyadic(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits as usize;
    let scaled = x * Rat::from_integer(scale.clone());
    let n = (scaled + Rat::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    Rat::new(n, scale)
}

/// Rational `r >= sqrt(v)` with `r - sqrt(v) <= 2^-bits`.
pub fn sqrt_upper(v: &Rat, bits: u32) -> Rat {
    sqrt_bounds(v, bits).1
}

/// Rationals `lo <= sqrt(v) <= hi` with `hi - lo <= 2^-bits`.
pub fn sqrt_bounds(v: &Rat, bits: u32) -> (Rat, Rat) {
    if v.is_zero() || v.is_negative() {
        return (Rat::zero(), Rat::zero());
    }
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = v * Rat::from_integer(scale);
    let fl = scaled.floor().to_integer();
    let s = fl.sqrt();
    let den = BigInt::one() << bits as usize;
    let lo = Rat::new(s.clone(), den.clone());
    let hi = Rat::new(s + BigInt::one(), den);
    (lo, hi)
}

/// Bits `b` with `2^-b <= precision`.
pub fn precision_bits(precision: &Rat) -> u32 {
    let num_bits = precision.numer().bits() as i64;
    let den_bits = precision.denom().bits() as i64;
    (den_bits - num_bits + 1).max(1) as u32
}

pub fn eval_complex(p: &QPoly, z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// Circular-arithmetic test: can `p` vanish on the closed disk `D(c, r)`?
///
/// Uses the Taylor bound `|p(z) - p(c)| <= sum_k |p^(k)(c)/k!| r^k`.
pub fn disk_may_contain_zero(p: &QPoly, c: &CRat, r: &Rat) -> bool {
    let n = p.deg();
    let shifted = taylor_coeffs(p, c);
    let p0 = shifted[0].norm_sqr();
    // compare |p(c)| <= sum_{k>=1} |a_k| r^k using upper square roots
    let bits = 80;
    let mut bound = Rat::zero();
    let mut rk = Rat::one();
    for a in shifted.iter().take(n + 1).skip(1) {
        rk = &rk * r;
        bound += sqrt_upper(&a.norm_sqr(), bits) * &rk;
    }
    p0 <= &bound * &bound
}

/// Disk enclosing `p(D(c, r))`: center `p(c)`, radius from the Taylor bound.
pub fn eval_disk(p: &QPoly, c: &CRat, r: &Rat) -> (CRat, Rat) {
    let shifted = taylor_coeffs(p, c);
    let mut radius = Rat::zero();
    let mut rk = Rat::one();
    for a in shifted.iter().skip(1) {
        rk = &rk * r;
        radius += sqrt_upper(&a.norm_sqr(), 80) * &rk;
    }
    let center = shifted.into_iter().next().unwrap_or_default();
    (center, radius)
}

/// Coefficients of `p(c + w)` in `w`.
pub fn taylor_coeffs(p: &QPoly, c: &CRat) -> Vec<CRat> {
    let n = p.coeffs().len();
    let mut a: Vec<CRat> = p.coeffs().iter().map(|x| CRat::real(x.clone())).collect();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].mul(c);
            a[j] = a[j].add(&t);
        }
    }
    a
}

/// Simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return lo.clone();
    }
    if fl.clone() + Rat::one() <= *hi {
        return fl + Rat::one();
    }
    // lo, hi share the integer part; recurse on reciprocals of fractional parts
    let a = fl.clone();
    let lo_f = lo - &a;
    let hi_f = hi - &a;
    let inner = simplest_between(&(Rat::one() / hi_f), &(Rat::one() / lo_f));
    a + Rat::one() / inner
}
