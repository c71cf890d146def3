//! Concrete configurations with known answers, closed-form bounds, case
//! tables, and the regression suite that runs them all.

mod chern_tables;
mod claims;
mod fourconics;
mod quadrics;
mod suite;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use thiserror::Error;

use crate::compute::ComputeError;
use crate::expr::ExprError;
use crate::filtration::FiltrationError;
use crate::kmodel::IndexFunction;
use crate::truncring::{Monomial, RingSpec, TruncPoly};

pub use chern_tables::{chern_discrepancies, chern_displays, coefficient_sequences, ChernDisplay};
pub use claims::{four_conic_claims, three_quadric_claims, sb_triple_claims, SbTriple};
pub use fourconics::{four_conics_classify, four_conics_configs, FourConics, FourConicsVerdict, Verdict};
pub use quadrics::{three_quadric_configs, three_quadric_sample, two_quadric_configs, two_quadric_flag, QuadricFlag};
pub use suite::{regression_suite, suite_groups, ItemStatus, SuiteItem, SuiteReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("bound needs n >= 2, got {0}")]
    BoundDomain(u32),
    #[error("invalid KeySB instance: {0}")]
    KeySb(String),
    #[error("inadmissible configuration: {0}")]
    Inadmissible(String),
    #[error(transparent)]
    Compute(#[from] ComputeError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("bad filter pattern: {0}")]
    Filter(String),
}

/// Exponent `N` of the largest codimension 2 torsion `2^N` over products of
/// `n` conics: `2^n - (C(n,2) + n + 1)`.
pub fn conic_bound_n(n: u32) -> Result<u64, ScenarioError> {
    if n < 2 {
        return Err(ScenarioError::BoundDomain(n));
    }
    let n64 = n as u64;
    Ok((1u64 << n) - (binomial(n64, 2) + n64 + 1))
}

/// Exponent `N` of the lower bound `3^N` for products of `n` Severi-Brauer
/// surfaces: `2^n + 4 C(n,3) - (n + 1)`.
pub fn sb_bound_n(n: u32) -> Result<u64, ScenarioError> {
    if n < 2 {
        return Err(ScenarioError::BoundDomain(n));
    }
    let n64 = n as u64;
    Ok((1u64 << n) + 4 * binomial(n64, 3) - (n64 + 1))
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `p` an odd prime and exponents `1 <= m_i <= p - 1`, at least two of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeySbInstance {
    p: u32,
    m: Vec<u32>,
}

impl KeySbInstance {
    pub fn new(p: u32, m: Vec<u32>) -> Result<Self, ScenarioError> {
        if p == 2 || !is_prime(p) {
            return Err(ScenarioError::KeySb(format!("p = {p} is not an odd prime")));
        }
        if m.len() < 2 {
            return Err(ScenarioError::KeySb(format!("need n >= 2 exponents, got {}", m.len())));
        }
        if let Some(x) = m.iter().find(|&&x| x == 0 || x >= p) {
            return Err(ScenarioError::KeySb(format!("exponent {x} is outside [1, {}]", p - 1)));
        }
        Ok(KeySbInstance { p, m })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeySbResult {
    pub sum: BigInt,
    pub divisible: bool,
}

/// Expands `(prod (1 + s_i)^{m_i} - 1)^p` in `Z[s]/(s_i^p)` and returns the
/// alternating sum of the coefficients `C_j`, `j in [1, p-1]^n`, with its
/// divisibility by `p^2`.
pub fn keysb_check(inst: &KeySbInstance) -> KeySbResult {
    let (p, n) = (inst.p, inst.m.len());
    let spec = RingSpec::uniform(n, p).expect("p >= 3");
    let one = TruncPoly::one(&spec);
    let mut prod = one.clone();
    for (i, &m) in inst.m.iter().enumerate() {
        prod = &prod * &(&one + &TruncPoly::var(&spec, i + 1)).pow(m);
    }
    let phi = (&prod - &one).pow(p);
    let mut sum = BigInt::zero();
    for m in spec.monomials() {
        if m.exponents().iter().all(|&e| e >= 1) {
            let c = phi.coefficient_of(m);
            if m.degree() % 2 == 0 {
                sum += c;
            } else {
                sum -= c;
            }
        }
    }
    let p2 = BigInt::from(p * p);
    let divisible = (&sum % &p2).is_zero();
    KeySbResult { sum, divisible }
}

/// Every exponent vector for `(p, n)`, in lexicographic order.
pub fn keysb_sweep(p: u32, n: usize) -> Result<Vec<(KeySbInstance, KeySbResult)>, ScenarioError> {
    let mut vectors = vec![Vec::new()];
    for _ in 0..n {
        vectors = vectors
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (1..p).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    vectors
        .into_iter()
        .map(|m| {
            let inst = KeySbInstance::new(p, m)?;
            let r = keysb_check(&inst);
            Ok((inst, r))
        })
        .collect()
}

/// Coefficient of the monomial with exponents `e` in `x`.
pub(crate) fn coeff(x: &TruncPoly, e: &[u32]) -> BigInt {
    x.coefficient_of(&Monomial::new(e.to_vec()))
}

/// Index table of `n` Severi-Brauer surfaces with every nonzero tuple of index 3.
pub fn generic_sb(n: usize) -> IndexFunction {
    IndexFunction::generic_sb_surfaces(n)
}
