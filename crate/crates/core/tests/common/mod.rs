//! Independent oracles shared by the property and acceptance targets. None of
//! them goes through the library's own arithmetic.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use kgamma::truncring::{Monomial, RingSpec, TruncPoly};

/// A polynomial as a map from exponent tuples to coefficients.
pub type Dense = BTreeMap<Vec<u32>, i64>;

/// Schoolbook product in `Z[y]/(y_i^{r_i})`.
pub fn dense_mul(trunc: &[u32], a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().zip(trunc).all(|(x, r)| x < r) {
                *out.entry(e).or_insert(0) += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn dense_one(n: usize) -> Dense {
    Dense::from([(vec![0; n], 1)])
}

pub fn dense_add(a: &Dense, b: &Dense, sign: i64) -> Dense {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn dense_scale(a: &Dense, k: i64) -> Dense {
    a.iter().map(|(e, c)| (e.clone(), c * k)).filter(|(_, c)| *c != 0).collect()
}

/// `x^a - 1` with `x_i = 1 + y_i`, by repeated multiplication.
pub fn dense_line_minus_one(trunc: &[u32], a: &[u32]) -> Dense {
    let n = trunc.len();
    let mut p = dense_one(n);
    for (i, &k) in a.iter().enumerate() {
        let mut x = dense_one(n);
        let mut yi = vec![0; n];
        yi[i] = 1;
        if trunc[i] > 1 {
            x.insert(yi, 1);
        }
        for _ in 0..k {
            p = dense_mul(trunc, &p, &x);
        }
    }
    dense_add(&p, &dense_one(n), -1)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `c_k(m L_a) = C(m, k) (x^a - 1)^k`.
pub fn dense_line_chern(trunc: &[u32], m: i64, a: &[u32], k: u32) -> Dense {
    let z = dense_line_minus_one(trunc, a);
    let mut p = dense_one(trunc.len());
    for _ in 0..k {
        p = dense_mul(trunc, &p, &z);
    }
    dense_scale(&p, binomial(m, k as i64))
}

pub fn to_poly(spec: &RingSpec, d: &Dense) -> TruncPoly {
    TruncPoly::from_terms(spec, d.iter().map(|(e, c)| (Monomial::new(e.clone()), BigInt::from(*c)))).unwrap()
}

pub fn from_poly(p: &TruncPoly) -> Dense {
    p.terms()
        .map(|(m, c)| (m.exponents().to_vec(), i64::try_from(c).expect("small coefficients")))
        .collect()
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Gcd of all `k x k` minors of `rows`.
pub fn determinantal_divisor(rows: &[Vec<i64>], k: usize) -> BigInt {
    let cols = rows.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in subsets(rows.len(), k) {
        for cs in subsets(cols, k) {
            let m: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c] as i128).collect()).collect();
            g = g.gcd(&BigInt::from(det(&m)));
        }
    }
    g
}

/// Structure of `Z^n / span(rows)` from determinantal divisors: the nontrivial
/// invariant factors in increasing order and the free rank.
pub fn quotient_by_minors(n: usize, rows: &[Vec<i64>]) -> (Vec<BigInt>, usize) {
    let mut prev = BigInt::from(1);
    let mut factors = Vec::new();
    let mut rank = 0;
    for k in 1..=n.min(rows.len()) {
        let d = determinantal_divisor(rows, k);
        if d.is_zero() {
            break;
        }
        rank = k;
        let f = &d / &prev;
        if f != BigInt::from(1) {
            factors.push(f.abs());
        }
        prev = d;
    }
    (factors, n - rank)
}

/// `v` lies in the span of `rows` iff appending it changes neither the rank
/// nor the top determinantal divisor.
pub fn member_by_minors(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let n = v.len();
    let rank = |rs: &[Vec<i64>]| (1..=n.min(rs.len())).rev().find(|&k| !determinantal_divisor(rs, k).is_zero()).unwrap_or(0);
    let r = rank(rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    if rank(&ext) != r {
        return false;
    }
    r == 0 || determinantal_divisor(rows, r).abs() == determinantal_divisor(&ext, r).abs()
}
