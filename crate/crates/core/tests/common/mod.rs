//! Shared test utilities: random polynomial generators and an independent
//! quotient-dimension oracle for local Milnor numbers.
#![allow(dead_code)]

use equising::{MPoly, Monomial, Rat, Shear, Var};
use num::{BigInt, One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn x() -> MPoly {
    MPoly::var(Var::X)
}

pub fn y() -> MPoly {
    MPoly::var(Var::Y)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn xy(i: u32, j: u32) -> Monomial {
    let mut e = [0u32; 5];
    e[Var::X.index()] = i;
    e[Var::Y.index()] = j;
    Monomial(e)
}

/// A sparse random polynomial in x, y of total degree exactly `d`.
pub fn random_poly(rng: &mut ChaCha8Rng, d: u32, terms: usize) -> MPoly {
    loop {
        let mut p = MPoly::zero();
        for _ in 0..terms {
            let total = rng.gen_range(0..=d);
            let i = rng.gen_range(0..=total);
            let c = rng.gen_range(-3i64..=3);
            p = p.add(&MPoly::term(int(c), xy(i, total - i)));
        }
        // force the degree
        let i = rng.gen_range(0..=d);
        let c = [1i64, -1, 2, -2][rng.gen_range(0..4)];
        p = p.add(&MPoly::term(int(c), xy(i, d - i)));
        if p.total_degree() == Some(d) {
            return p;
        }
    }
}

/// Dimension of `Q[u,v] / ((g_u, g_v) + m^n)`, by linear algebra on the
/// monomials of degree below `n`.
pub fn truncated_quotient_dim(g: &MPoly, n: u32) -> usize {
    let monos: Vec<(u32, u32)> = (0..n).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    let index = |i: u32, j: u32| monos.iter().position(|m| *m == (i, j));
    let gens = [g.partial(Var::X), g.partial(Var::Y)];
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for gen in &gens {
        for &(a, b) in &monos {
            let mut row = vec![Rat::zero(); monos.len()];
            let mut any = false;
            for (m, c) in gen.terms() {
                let (i, j) = (m.exp(Var::X) + a, m.exp(Var::Y) + b);
                if i + j < n {
                    row[index(i, j).unwrap()] += c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map(|x| x.len()).unwrap_or(0);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / rows[r][c].clone();
        let pivot: Vec<Rat> = rows[r].iter().map(|v| v * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Local Milnor number at the origin: the stable value of the truncated
/// quotient dimension.
pub fn oracle_milnor(g: &MPoly) -> usize {
    let mut n = 2;
    let mut prev = truncated_quotient_dim(g, n);
    loop {
        n += 1;
        let cur = truncated_quotient_dim(g, n);
        // once m^(n-1) lies in the ideal the dimension stops growing
        if cur == prev && cur < n as usize {
            return cur;
        }
        prev = cur;
        assert!(n < 40, "oracle did not stabilize");
    }
}

/// A random homogeneous form of degree `d` in x, y.
pub fn random_form(rng: &mut ChaCha8Rng, d: u32) -> MPoly {
    let mut p = MPoly::zero();
    for i in 0..=d {
        let c = rng.gen_range(-2i64..=2);
        p = p.add(&MPoly::term(int(c), xy(i, d - i)));
    }
    p
}

/// A random polynomial of degree `d` whose top forms share a multiple point
/// at infinity, so that the singular locus at infinity is nonempty. With
/// `irrational` the point is a root of `x^2 - 2 y^2`.
pub fn random_sigma_poly(rng: &mut ChaCha8Rng, d: u32, irrational: bool) -> MPoly {
    loop {
        let q = if irrational {
            x().pow(2).sub(&y().pow(2).scale(&int(2)))
        } else {
            x().add(&y().scale(&int(rng.gen_range(-2i64..=2))))
        };
        let e = q.total_degree().unwrap();
        assert!(2 * e <= d, "degree {} too small for a double point of degree {}", d, e);
        let mut a = random_form(rng, d - 2 * e);
        if a.is_zero() {
            a = MPoly::one();
        }
        let b = random_form(rng, d - 1 - e);
        let mut f = q.pow(2).mul(&a).add(&q.mul(&b));
        for _ in 0..rng.gen_range(1..=3) {
            let total = rng.gen_range(0..=d.saturating_sub(2));
            let i = rng.gen_range(0..=total);
            f = f.add(&MPoly::term(int(rng.gen_range(-3i64..=3)), xy(i, total - i)));
        }
        if f.total_degree() == Some(d) {
            return f;
        }
    }
}

/// A random polynomial `P(x)^2 y + Q(x)` with `deg Q < 2 deg P`, sheared by
/// `x <- x + a y`. Fibres escape to infinity over the values of `Q` at the
/// roots of `P`, so the jump at infinity is usually positive. With
/// `irrational`, `P = x^2 - 2`.
pub fn random_escape_poly(rng: &mut ChaCha8Rng, irrational: bool) -> MPoly {
    loop {
        let p = if irrational {
            x().pow(2).sub(&MPoly::int(2))
        } else {
            x().add(&MPoly::int(rng.gen_range(-2i64..=2)))
        };
        let e = p.total_degree().unwrap();
        let mut q = MPoly::zero();
        for i in 0..2 * e {
            q = q.add(&MPoly::term(int(rng.gen_range(-3i64..=3)), xy(i, 0)));
        }
        if q.is_zero() {
            continue;
        }
        let f = p.pow(2).mul(&y()).add(&q);
        let a = int(rng.gen_range(-1i64..=1));
        return f.apply_shear(&Shear::new(Var::X, Var::Y, a));
    }
}
