//! Exact arithmetic in `Z[y_1, ..., y_n] / (y_1^{r_1}, ..., y_n^{r_n})`.
//!
//! After the shift `y_i = x_i - 1` this is the Grothendieck ring of a split
//! product of projective spaces `P^{r_1 - 1} x ... x P^{r_n - 1}`. Elements are
//! stored sparsely; every monomial with some `a_i >= r_i` is identically zero
//! and is never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("a truncated ring needs at least one variable")]
    NoVariables,
    #[error("truncation r_{index} = {value} is below 2")]
    TruncationTooSmall { index: usize, value: u32 },
    #[error("operands live in different rings ({left:?} vs {right:?})")]
    SpecMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("monomial {exponents:?} is not valid for truncations {truncations:?}")]
    InvalidMonomial {
        exponents: Vec<u32>,
        truncations: Vec<u32>,
    },
}

/// A monomial `y^a`. Ordering is degree-lexicographic: lower total degree
/// first, then larger exponent on earlier variables first (`y1 < y2` in the
/// order, `y1^2 < y1*y2`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// Square-free monomial `y_{i_1} ... y_{i_k}` from 1-based variable indices.
    pub fn from_vars(n: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; n];
        for &v in vars {
            e[v - 1] += 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "y{}", i + 1)?;
            } else {
                write!(f, "y{}^{}", i + 1, a)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct SpecInner {
    truncations: Vec<u32>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    dim: u32,
    products: OnceLock<Vec<u32>>,
}

/// Shape of the truncated ring: one truncation `r_i >= 2` per variable.
///
/// Cheap to clone. The degree-lex list of all `D = prod r_i` monomials is
/// built once and fixes the coordinate order used by every lattice.
#[derive(Clone, Debug)]
pub struct RingSpec(Arc<SpecInner>);

const NO_PRODUCT: u32 = u32::MAX;

impl RingSpec {
    pub fn new(truncations: Vec<u32>) -> Result<Self, RingError> {
        if truncations.is_empty() {
            return Err(RingError::NoVariables);
        }
        if let Some((index, &value)) = truncations.iter().enumerate().find(|(_, &r)| r < 2) {
            return Err(RingError::TruncationTooSmall { index: index + 1, value });
        }
        let mut monomials = vec![Monomial::one(truncations.len())];
        for (i, &r) in truncations.iter().enumerate() {
            let mut next = Vec::with_capacity(monomials.len() * r as usize);
            for m in &monomials {
                for a in 0..r {
                    let mut e = m.0.clone();
                    e[i] = a;
                    next.push(Monomial(e));
                }
            }
            monomials = next;
        }
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let dim = truncations.iter().map(|r| r - 1).sum();
        Ok(RingSpec(Arc::new(SpecInner {
            truncations,
            monomials,
            index,
            dim,
            products: OnceLock::new(),
        })))
    }

    /// `r` copies of the same truncation.
    pub fn uniform(n: usize, r: u32) -> Result<Self, RingError> {
        RingSpec::new(vec![r; n])
    }

    pub fn n(&self) -> usize {
        self.0.truncations.len()
    }

    pub fn truncations(&self) -> &[u32] {
        &self.0.truncations
    }

    /// `sum (r_i - 1)`, the dimension of the split variety.
    pub fn dim(&self) -> u32 {
        self.0.dim
    }

    /// `D = prod r_i`.
    pub fn ambient_rank(&self) -> usize {
        self.0.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.0.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.0.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.0.index.get(m).copied()
    }

    pub fn is_valid(&self, m: &Monomial) -> bool {
        m.0.len() == self.n() && m.0.iter().zip(self.truncations()).all(|(a, r)| a < r)
    }

    /// Product of two valid monomials, `None` when it truncates to zero.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.n());
        for ((x, y), r) in a.0.iter().zip(&b.0).zip(self.truncations()) {
            let s = x + y;
            if s >= *r {
                return None;
            }
            e.push(s);
        }
        Some(Monomial(e))
    }

    /// Index of the product of the monomials at coordinates `i` and `j`.
    pub fn product_index(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.ambient_rank();
        let t = self.0.products.get_or_init(|| {
            let mut t = vec![NO_PRODUCT; d * d];
            for (i, a) in self.monomials().iter().enumerate() {
                for (j, b) in self.monomials().iter().enumerate() {
                    if let Some(m) = self.mul_monomials(a, b) {
                        t[i * d + j] = self.0.index[&m] as u32;
                    }
                }
            }
            t
        });
        match t[i * d + j] {
            NO_PRODUCT => None,
            k => Some(k as usize),
        }
    }

    /// Number of monomials of total degree exactly `d`.
    pub fn count_of_degree(&self, d: u32) -> usize {
        self.monomials().iter().filter(|m| m.degree() == d).count()
    }

    /// First coordinate index whose monomial has total degree `>= d`.
    pub fn first_index_of_degree(&self, d: u32) -> usize {
        self.monomials().partition_point(|m| m.degree() < d)
    }

    /// Product of dense coordinate vectors.
    pub fn mul_dense(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.ambient_rank();
        debug_assert_eq!(a.len(), d);
        debug_assert_eq!(b.len(), d);
        let sa: Vec<usize> = (0..d).filter(|&i| !a[i].is_zero()).collect();
        let sb: Vec<usize> = (0..d).filter(|&j| !b[j].is_zero()).collect();
        let small = |v: &[BigInt], s: &[usize]| -> Option<Vec<i64>> {
            s.iter()
                .map(|&i| i64::try_from(&v[i]).ok().filter(|x| x.unsigned_abs() < 1 << 40))
                .collect()
        };
        if let (Some(xa), Some(xb)) = (small(a, &sa), small(b, &sb)) {
            let mut acc = vec![0i128; d];
            for (p, &i) in sa.iter().enumerate() {
                for (q, &j) in sb.iter().enumerate() {
                    if let Some(k) = self.product_index(i, j) {
                        acc[k] += xa[p] as i128 * xb[q] as i128;
                    }
                }
            }
            return acc.into_iter().map(BigInt::from).collect();
        }
        let mut acc = vec![BigInt::zero(); d];
        for &i in &sa {
            for &j in &sb {
                if let Some(k) = self.product_index(i, j) {
                    acc[k] += &a[i] * &b[j];
                }
            }
        }
        acc
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.truncations == other.0.truncations
    }
}

impl Eq for RingSpec {}

/// An element of the truncated ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    spec: RingSpec,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncPoly {
    pub fn zero(spec: &RingSpec) -> Self {
        TruncPoly {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: &RingSpec, c: impl Into<BigInt>) -> Self {
        TruncPoly::term(spec, Monomial::one(spec.n()), c)
    }

    pub fn one(spec: &RingSpec) -> Self {
        TruncPoly::constant(spec, 1)
    }

    /// `y_i` with a 1-based index.
    pub fn var(spec: &RingSpec, i: usize) -> Self {
        TruncPoly::term(spec, Monomial::from_vars(spec.n(), &[i]), 1)
    }

    /// `c * m`; zero if `m` is out of range.
    pub fn term(spec: &RingSpec, m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = TruncPoly::zero(spec);
        let c = c.into();
        if spec.is_valid(&m) && !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        spec: &RingSpec,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self, RingError> {
        let mut p = TruncPoly::zero(spec);
        for (m, c) in terms {
            if m.0.len() != spec.n() {
                return Err(RingError::InvalidMonomial {
                    exponents: m.0,
                    truncations: spec.truncations().to_vec(),
                });
            }
            if spec.is_valid(&m) {
                p.add_term(m, c);
            }
        }
        Ok(p)
    }

    pub fn from_dense(spec: &RingSpec, coords: &[BigInt]) -> Self {
        let terms = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (spec.monomial(i).clone(), c.clone()))
            .collect();
        TruncPoly {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.spec.ambient_rank()];
        for (m, c) in &self.terms {
            v[self.spec.index_of(m).expect("stored monomials are valid")] = c.clone();
        }
        v
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms in degree-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
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

    fn check_same(&self, other: &TruncPoly) -> Result<(), RingError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(RingError::SpecMismatch {
                left: self.spec.truncations().to_vec(),
                right: other.spec.truncations().to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &TruncPoly) -> Result<TruncPoly, RingError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TruncPoly) -> Result<TruncPoly, RingError> {
        self.try_add(&-other)
    }

    /// Exact product; monomials with an exponent reaching its truncation vanish.
    pub fn try_mul(&self, other: &TruncPoly) -> Result<TruncPoly, RingError> {
        self.check_same(other)?;
        let mut out = TruncPoly::zero(&self.spec);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = self.spec.mul_monomials(ma, mb) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> TruncPoly {
        if k.is_zero() {
            return TruncPoly::zero(&self.spec);
        }
        TruncPoly {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> TruncPoly {
        let mut base = self.clone();
        let mut acc = TruncPoly::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coefficient_of(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Constant term (value at `y = 0`).
    pub fn constant_term(&self) -> BigInt {
        self.coefficient_of(&Monomial::one(self.spec.n()))
    }

    /// Smallest total degree of a stored monomial; `None` stands for `+inf`
    /// (the zero polynomial).
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }
}

/// `prod (1 + y_i)^{a_i} - 1`, the class `x^a - 1` written in the `y` basis.
///
/// Exponents are those of the `x` variables and are not bounded by the
/// truncations.
pub fn expand_line_bundle(spec: &RingSpec, a: &[u32]) -> TruncPoly {
    assert_eq!(a.len(), spec.n(), "exponent tuple length must match the ring");
    let mut acc = TruncPoly::one(spec);
    for (i, &e) in a.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let base = &TruncPoly::one(spec) + &TruncPoly::var(spec, i + 1);
        acc = &acc * &base.pow(e);
    }
    &acc - &TruncPoly::one(spec)
}

impl<'a> Add<&'a TruncPoly> for &'a TruncPoly {
    type Output = TruncPoly;
    /// Panics if the operands live in different rings.
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a TruncPoly> for &'a TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a TruncPoly> for &'a TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for TruncPoly {
    /// Canonical rendering, e.g. `2*y1*y2 + 6*y1*y2*y3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(spec: &RingSpec, vars: &[usize]) -> Monomial {
        Monomial::from_vars(spec.n(), vars)
    }

    #[test]
    fn binomial_product() {
        let s = RingSpec::new(vec![2, 2]).unwrap();
        let one = TruncPoly::one(&s);
        let a = &one + &TruncPoly::var(&s, 1);
        let b = &one + &TruncPoly::var(&s, 2);
        let p = &(&a * &b) - &one;
        assert_eq!(p.to_string(), "y1 + y2 + y1*y2");
    }

    #[test]
    fn square_of_variable_truncates() {
        let s = RingSpec::new(vec![2, 2]).unwrap();
        let y1 = TruncPoly::var(&s, 1);
        assert!((&y1 * &y1).is_zero());
    }

    #[test]
    fn square_of_conic_pair_root() {
        let s = RingSpec::uniform(4, 2).unwrap();
        let z = expand_line_bundle(&s, &[1, 1, 0, 0]);
        assert_eq!((&z * &z).to_string(), "2*y1*y2");
        assert!((&(&z * &z) * &z).is_zero());
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = TruncPoly::one(&RingSpec::new(vec![2, 2]).unwrap());
        let b = TruncPoly::one(&RingSpec::new(vec![3, 2]).unwrap());
        assert!(matches!(a.try_mul(&b), Err(RingError::SpecMismatch { .. })));
    }

    #[test]
    fn line_bundle_expansions() {
        let s = RingSpec::new(vec![2, 2]).unwrap();
        assert_eq!(expand_line_bundle(&s, &[1, 1]).to_string(), "y1 + y2 + y1*y2");
        let s = RingSpec::new(vec![3]).unwrap();
        assert_eq!(expand_line_bundle(&s, &[2]).to_string(), "2*y1 + y1^2");
        assert!(expand_line_bundle(&s, &[0]).is_zero());
        // (1+y)^3 - 1 = 3y + 3y^2 once y^3 = 0
        assert_eq!(expand_line_bundle(&s, &[3]).to_string(), "3*y1 + 3*y1^2");
    }

    #[test]
    fn four_variable_root_has_fifteen_terms() {
        let s = RingSpec::uniform(4, 2).unwrap();
        let z = expand_line_bundle(&s, &[1, 1, 1, 1]);
        assert_eq!(z.num_terms(), 15);
        assert!(z.terms().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn coefficient_extraction() {
        let s = RingSpec::uniform(3, 2).unwrap();
        let p = &TruncPoly::term(&s, y(&s, &[1, 2]), 2) + &TruncPoly::term(&s, y(&s, &[1]), 6);
        assert_eq!(p.coefficient_of(&y(&s, &[1, 2])), BigInt::from(2));
        assert_eq!(p.coefficient_of(&y(&s, &[3])), BigInt::zero());
    }

    #[test]
    fn min_degree() {
        let s = RingSpec::new(vec![2, 2]).unwrap();
        assert_eq!(TruncPoly::zero(&s).min_total_degree(), None);
        let p = &TruncPoly::var(&s, 1) + &TruncPoly::term(&s, y(&s, &[1, 2]), 1);
        assert_eq!(p.min_total_degree(), Some(1));
    }

    #[test]
    fn rendering_orders_terms_degree_lex() {
        let s = RingSpec::uniform(3, 2).unwrap();
        let p = &TruncPoly::term(&s, y(&s, &[1, 2, 3]), 6) + &TruncPoly::term(&s, y(&s, &[1, 2]), 2);
        assert_eq!(p.to_string(), "2*y1*y2 + 6*y1*y2*y3");
        let q = &TruncPoly::constant(&s, -3) - &TruncPoly::var(&s, 2);
        assert_eq!(q.to_string(), "-3 - y2");
    }

    #[test]
    fn spec_validation() {
        assert_eq!(RingSpec::new(vec![]).unwrap_err(), RingError::NoVariables);
        assert!(matches!(
            RingSpec::new(vec![2, 1]),
            Err(RingError::TruncationTooSmall { index: 2, value: 1 })
        ));
        let s = RingSpec::new(vec![3, 2, 2]).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.ambient_rank(), 12);
        assert_eq!(s.monomial(0), &Monomial::one(3));
    }
}
