//! Chern classes with values in K-theory, `c_j(x) = gamma_j(x - rank x)`.
//!
//! For a sum of line bundles the total class is `prod (1 + z_a t)` with
//! `z_a = x^a - 1`, so everything reduces to truncated polynomial products.
//! Series are cut at `min(rank, dim)`: higher coefficients vanish.

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

use crate::kmodel::KGenerator;
use crate::truncring::{expand_line_bundle, RingSpec, TruncPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("negative multiplier {multiplier} for x^{exponents:?}: only honest bundles have Chern classes here")]
    NegativeMultiplier { multiplier: i64, exponents: Vec<u32> },
    #[error("exponent tuple {exponents:?} has the wrong length for a ring in {n} variables")]
    BadExponents { exponents: Vec<u32>, n: usize },
}

/// One Chern class `c_j` of a generator.
#[derive(Clone, Debug)]
pub struct ChernAtom {
    pub source: KGenerator,
    pub degree: u32,
    pub value: TruncPoly,
}

/// Total Chern series `1 + c_1 t + c_2 t^2 + ...`, coefficient `k` at index `k`.
pub type ChernSeries = Vec<TruncPoly>;

fn mul_series(a: &[TruncPoly], b: &[TruncPoly], cap: usize) -> ChernSeries {
    let spec = a[0].spec().clone();
    let len = (a.len() + b.len() - 1).min(cap + 1);
    let mut out = vec![TruncPoly::zero(&spec); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `(1 + z t)^m` cut at `t^cap`.
fn binomial_series(z: &TruncPoly, m: u64, cap: usize) -> ChernSeries {
    let spec = z.spec();
    let mut out = vec![TruncPoly::one(spec)];
    let mut zk = TruncPoly::one(spec);
    for k in 1..=cap.min(m as usize) {
        zk = &zk * z;
        if zk.is_zero() {
            break;
        }
        out.push(zk.scale(&binomial(BigInt::from(m), BigInt::from(k))));
    }
    out
}

fn check_len(spec: &RingSpec, a: &[u32]) -> Result<(), ChernError> {
    if a.len() == spec.n() {
        Ok(())
    } else {
        Err(ChernError::BadExponents { exponents: a.to_vec(), n: spec.n() })
    }
}

/// Total Chern series of `sum m_i x^{a_i}` with nonnegative `m_i`.
pub fn chern_series_of_terms(spec: &RingSpec, terms: &[(i64, Vec<u32>)]) -> Result<ChernSeries, ChernError> {
    let mut rank: u64 = 0;
    for (m, a) in terms {
        check_len(spec, a)?;
        if *m < 0 {
            return Err(ChernError::NegativeMultiplier { multiplier: *m, exponents: a.clone() });
        }
        rank += *m as u64;
    }
    let cap = (rank as usize).min(spec.dim() as usize);
    let mut acc = vec![TruncPoly::one(spec)];
    for (m, a) in terms {
        let s = binomial_series(&expand_line_bundle(spec, a), *m as u64, cap);
        acc = mul_series(&acc, &s, cap);
    }
    acc.resize(cap + 1, TruncPoly::zero(spec));
    Ok(acc)
}

/// Total Chern series of a generator.
pub fn chern_series(gen: &KGenerator, spec: &RingSpec) -> ChernSeries {
    let terms: Vec<(i64, Vec<u32>)> = gen.orbit.iter().map(|a| (gen.multiplier as i64, a.clone())).collect();
    chern_series_of_terms(spec, &terms).expect("generator multipliers are nonnegative")
}

/// `c_1, ..., c_{min(rank, dim)}` of a generator, zero classes included.
pub fn chern_classes(gen: &KGenerator, spec: &RingSpec) -> Vec<ChernAtom> {
    chern_series(gen, spec)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(j, value)| ChernAtom { source: gen.clone(), degree: j as u32, value })
        .collect()
}

/// `c_j` of a generator (zero beyond the rank or the dimension).
pub fn chern_class(gen: &KGenerator, spec: &RingSpec, j: u32) -> TruncPoly {
    chern_series(gen, spec)
        .into_iter()
        .nth(j as usize)
        .unwrap_or_else(|| TruncPoly::zero(spec))
}

/// Series of a sum of line bundles, one factor `1 + z t` at a time, with no
/// binomial shortcut.
fn naive_series(spec: &RingSpec, lines: &[(u64, &Vec<u32>)]) -> ChernSeries {
    let cap = spec.dim() as usize;
    let mut acc = vec![TruncPoly::one(spec)];
    for (m, a) in lines {
        let z = expand_line_bundle(spec, a);
        for _ in 0..*m {
            acc = mul_series(&acc, &[TruncPoly::one(spec), z.clone()], cap);
        }
    }
    acc.resize(cap + 1, TruncPoly::zero(spec));
    acc
}

/// Whitney formula: the series of `g1 + g2`, expanded one line bundle at a
/// time, equals the product of the two generator series.
pub fn whitney_check(g1: &KGenerator, g2: &KGenerator, spec: &RingSpec) -> bool {
    let lines: Vec<(u64, &Vec<u32>)> = g1
        .orbit
        .iter()
        .map(|a| (g1.multiplier, a))
        .chain(g2.orbit.iter().map(|a| (g2.multiplier, a)))
        .collect();
    let direct = naive_series(spec, &lines);
    let cap = spec.dim() as usize;
    let mut product = mul_series(&chern_series(g1, spec), &chern_series(g2, spec), cap);
    product.resize(cap + 1, TruncPoly::zero(spec));
    direct == product
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truncring::Monomial;

    fn spec(r: &[u32]) -> RingSpec {
        RingSpec::new(r.to_vec()).unwrap()
    }

    #[test]
    fn first_class_is_the_reduced_class() {
        let s = spec(&[2, 2]);
        let c = chern_class(&KGenerator::line(2, vec![1, 0]), &s, 1);
        assert_eq!(c.to_string(), "2*y1");
    }

    #[test]
    fn gamma_two_of_three_lines() {
        let s = spec(&[3]);
        let c = chern_class(&KGenerator::line(3, vec![1]), &s, 2);
        assert_eq!(c.to_string(), "3*y1^2");
    }

    #[test]
    fn second_class_of_twice_an_orbit() {
        let s = spec(&[2, 2, 2, 2]);
        let g = KGenerator::new(2, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert_eq!(chern_class(&g, &s, 2).to_string(), "4*y1*y2");
        assert!(chern_class(&g, &s, 3).is_zero());
        assert!(chern_class(&g, &s, 4).is_zero());
    }

    #[test]
    fn classes_vanish_beyond_rank() {
        let s = spec(&[3, 3]);
        let atoms = chern_classes(&KGenerator::line(1, vec![1, 1]), &s);
        assert_eq!(atoms.len(), 1);
        let atoms = chern_classes(&KGenerator::line(5, vec![1, 1]), &s);
        assert_eq!(atoms.len(), 4);
        for a in &atoms {
            assert!(a.value.min_total_degree().map_or(true, |m| m >= a.degree));
        }
    }

    #[test]
    fn whitney_examples() {
        let s = spec(&[2, 2]);
        let g1 = KGenerator::line(2, vec![1, 0]);
        let g2 = KGenerator::line(2, vec![0, 1]);
        assert!(whitney_check(&g1, &g2, &s));
        let union = chern_series_of_terms(&s, &[(2, vec![1, 0]), (2, vec![0, 1])]).unwrap();
        let y12 = Monomial::new(vec![1, 1]);
        assert_eq!(union[2], TruncPoly::term(&s, y12, 4));
    }

    #[test]
    fn negative_multipliers_are_rejected() {
        let s = spec(&[2]);
        let err = chern_series_of_terms(&s, &[(-1, vec![1])]).unwrap_err();
        assert!(matches!(err, ChernError::NegativeMultiplier { .. }));
    }
}
