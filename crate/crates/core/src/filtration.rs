//! The gamma filtration as a chain of integer lattices, its quotient torsion,
//! and the cross-checks that tie `K(X)` to the split side `K(X_E)`.
//!
//! `Gamma^d` is spanned by products of Chern classes of the model's generators
//! with total degree at least `d`. Since `gamma_t` is additive-to-multiplicative
//! and the generators span `K(X)`, these products span the same group as all
//! gamma-operation products on `Gamma^1`. Levels are built bottom-up:
//!
//! `Gamma^d = < atoms of degree >= d > + sum_j atoms_j * Gamma^{max(d - j, 1)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::chern::{chern_classes, ChernAtom};
use crate::expr::{parse_element, ExprError};
use crate::intlattice::{
    quotient_torsion, ElementaryDivisors, HnfBuilder, IntegerLattice, LatticeError, LatticeIndex,
};
use crate::kmodel::KLatticeModel;
use crate::truncring::{RingSpec, TruncPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("models live in different rings")]
    RingMismatch,
    #[error("Gamma^{d} differs from Gamma^{d}(X_E) ∩ K(X): {}", .witnesses.join("; "))]
    GammaMismatch { d: u32, witnesses: Vec<String> },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("Gamma^{} is not contained in Gamma^{d}: the generators do not span a lambda-subring ({witness})", .d + 1)]
    NotNested { d: u32, witness: String },
}

/// `Gamma^0 ⊇ Gamma^1 ⊇ ... ⊇ Gamma^{dim+1} = 0` for a lattice model.
#[derive(Clone, Debug)]
pub struct Filtration {
    model: KLatticeModel,
    atoms: Vec<ChernAtom>,
    levels: Vec<IntegerLattice>,
}

#[cfg(feature = "parallel")]
fn products(spec: &RingSpec, left: &[Vec<BigInt>], right: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    use rayon::prelude::*;
    left.par_iter()
        .flat_map_iter(|a| right.iter().map(move |b| spec.mul_dense(a, b)))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn products(spec: &RingSpec, left: &[Vec<BigInt>], right: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    left.iter()
        .flat_map(|a| right.iter().map(move |b| spec.mul_dense(a, b)))
        .collect()
}

fn nonzero(v: &[BigInt]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

/// Builds the gamma filtration of a model.
pub fn build_gamma(model: &KLatticeModel) -> Filtration {
    let spec = model.spec().clone();
    let d_amb = spec.ambient_rank();
    let dim = spec.dim() as usize;
    let atoms: Vec<ChernAtom> = model
        .generators()
        .iter()
        .filter(|g| !g.is_trivial())
        .flat_map(|g| chern_classes(g, &spec))
        .filter(|a| !a.value.is_zero())
        .collect();
    // span of the atoms of each degree
    let mut by_degree: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); dim + 1];
    for j in 1..=dim {
        let mut b = HnfBuilder::new(d_amb);
        for a in atoms.iter().filter(|a| a.degree as usize == j) {
            b.insert(a.value.to_dense());
        }
        by_degree[j] = b.canonical_rows();
    }
    let mut levels = vec![model.lattice().hnf()];
    levels.push(IntegerLattice::new(d_amb, by_degree[1].clone()).unwrap().hnf());
    for d in 2..=dim {
        let mut b = HnfBuilder::new(d_amb);
        for rows in &by_degree[d..] {
            for r in rows {
                b.insert(r.clone());
            }
        }
        for j in 1..=dim {
            if by_degree[j].is_empty() {
                continue;
            }
            let lower = &levels[d.saturating_sub(j).max(1)];
            for v in products(&spec, &by_degree[j], lower.basis()) {
                if nonzero(&v) {
                    b.insert(v);
                }
            }
        }
        levels.push(b.finish());
    }
    levels.push(IntegerLattice::zero(d_amb));
    Filtration { model: model.clone(), atoms, levels }
}

impl Filtration {
    pub fn model(&self) -> &KLatticeModel {
        &self.model
    }

    pub fn spec(&self) -> &RingSpec {
        self.model.spec()
    }

    pub fn atoms(&self) -> &[ChernAtom] {
        &self.atoms
    }

    pub fn dim(&self) -> u32 {
        self.spec().dim()
    }

    /// `Gamma^d`; zero for `d > dim`.
    pub fn level(&self, d: u32) -> &IntegerLattice {
        let last = self.levels.len() - 1;
        &self.levels[(d as usize).min(last)]
    }

    pub fn levels(&self) -> &[IntegerLattice] {
        &self.levels
    }

    /// Structure of `Gamma^{d/d+1}`.
    pub fn quotient(&self, d: u32) -> Result<ElementaryDivisors, FiltrationError> {
        quotient_torsion(self.level(d + 1), self.level(d)).map_err(|e| match e {
            LatticeError::NotASublattice { generator } => FiltrationError::NotNested {
                d,
                witness: TruncPoly::from_dense(self.spec(), &self.level(d + 1).basis()[generator]).to_string(),
            },
            other => other.into(),
        })
    }

    /// Checks `Gamma^{d+1} ⊆ Gamma^d` for all `d` and `Gamma^{dim+1} = 0`.
    pub fn is_nested(&self) -> bool {
        self.levels
            .windows(2)
            .all(|w| w[1].is_sublattice_of(&w[0]).unwrap_or(false))
            && self.levels.last().map_or(false, IntegerLattice::is_zero)
    }

    /// Whether `x` lies in `Gamma^d`.
    pub fn contains(&self, d: u32, x: &TruncPoly) -> bool {
        self.level(d).contains(&x.to_dense())
    }
}

/// Status of the global identity
/// `|⊕ torsion| * [K(X_E) : K(X)] = prod_d alpha_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexIdentityStatus {
    Verified,
    Failed { lhs: BigInt, rhs: BigInt },
    Skipped(String),
}

impl fmt::Display for IndexIdentityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexIdentityStatus::Verified => write!(f, "verified"),
            IndexIdentityStatus::Failed { lhs, rhs } => write!(f, "failed: {lhs} != {rhs}"),
            IndexIdentityStatus::Skipped(r) => write!(f, "skipped: {r}"),
        }
    }
}

/// A nonnegative rational, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: BigInt,
    pub den: BigInt,
}

impl Ratio {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        if g.is_zero() {
            return Ratio { num, den };
        }
        Ratio { num: num / &g, den: den / g }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimTorsion {
    pub d: u32,
    pub torsion: ElementaryDivisors,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub per_codim: Vec<CodimTorsion>,
    pub index: LatticeIndex,
    /// `alpha_d = [Gamma^d(X_E) : Gamma^d(X) + Gamma^{d+1}(X_E)]` for `d = 0..=dim`.
    pub alpha: Vec<LatticeIndex>,
    /// `alpha_d` divided by the product of multipliers of codimension `d` generators.
    pub beta: Vec<Option<Ratio>>,
    pub index_identity: IndexIdentityStatus,
    pub split_side_torsion_free: bool,
    pub note: Option<String>,
}

/// Serializes an integer as a JSON number when it fits, otherwise as a string.
pub fn big_json(n: &BigInt) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => match i64::try_from(n) {
            Ok(v) => Value::from(v),
            Err(_) => Value::from(n.to_string()),
        },
    }
}

fn index_json(i: &LatticeIndex) -> Value {
    match i {
        LatticeIndex::Finite(n) => big_json(n),
        LatticeIndex::Infinite => Value::from("inf"),
    }
}

impl TorsionReport {
    pub fn torsion_at(&self, d: u32) -> ElementaryDivisors {
        self.per_codim
            .iter()
            .find(|c| c.d == d)
            .map(|c| c.torsion.clone())
            .unwrap_or_default()
    }

    /// Torsion part of `Gamma^{d/d+1}`, free rank dropped.
    pub fn torsion_only(&self, d: u32) -> ElementaryDivisors {
        ElementaryDivisors { divisors: self.torsion_at(d).divisors, free_rank: 0 }
    }

    pub fn total_torsion_order(&self) -> BigInt {
        self.per_codim.iter().map(|c| c.torsion.torsion_order()).product()
    }

    pub fn to_json(&self) -> Value {
        let per_codim: Vec<Value> = self
            .per_codim
            .iter()
            .map(|c| {
                json!({
                    "d": c.d,
                    "torsion": c.torsion.divisors.iter().map(big_json).collect::<Vec<_>>(),
                    "free_rank": c.torsion.free_rank,
                    "group": c.torsion.to_string(),
                })
            })
            .collect();
        let mut out = json!({
            "per_codim": per_codim,
            "index": index_json(&self.index),
            "alpha": self.alpha.iter().map(index_json).collect::<Vec<_>>(),
            "beta": self.beta.iter().map(|b| b.as_ref().map_or(Value::Null, |r| Value::from(r.to_string()))).collect::<Vec<_>>(),
            "index_identity": self.index_identity.to_string(),
            "split_side_torsion_free": self.split_side_torsion_free,
        });
        if let Some(n) = &self.note {
            out["note"] = Value::from(n.clone());
        }
        out
    }
}

/// Default annotation attached to reports: the Gamma-side value equals the
/// codimension 2 Chow torsion of the generic variety with the same indices.
pub const GENERIC_NOTE: &str =
    "Gamma^{2/3} torsion is reported; it equals CH^2 torsion of the generic variety with these indices";

/// Compares `fx` (a filtration of `K(X)`) with `fe` (of `K(X_E)`).
pub fn torsion_report(fx: &Filtration, fe: &Filtration) -> Result<TorsionReport, FiltrationError> {
    if fx.spec() != fe.spec() {
        return Err(FiltrationError::RingMismatch);
    }
    let dim = fx.dim();
    let index = crate::intlattice::index(fx.model().lattice(), fe.model().lattice())?;
    let mut per_codim = Vec::new();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut split_free = true;
    for d in 0..=dim {
        per_codim.push(CodimTorsion { d, torsion: fx.quotient(d)? });
        split_free &= fe.quotient(d)?.is_torsion_free();
        let image = fx.level(d).sum(fe.level(d + 1))?;
        let a = crate::intlattice::index(&image, fe.level(d))?;
        let m = fx.model().codim_multiplier(d);
        beta.push(a.finite().map(|n| Ratio::new(n.clone(), m)));
        alpha.push(a);
    }
    let index_identity = if !split_free {
        IndexIdentityStatus::Skipped("a quotient of the split-side filtration has torsion".into())
    } else {
        match (index.finite(), alpha.iter().map(LatticeIndex::finite).collect::<Option<Vec<_>>>()) {
            (Some(ix), Some(al)) => {
                let tors: BigInt = per_codim.iter().map(|c| c.torsion.torsion_order()).product();
                let lhs = tors * ix;
                let rhs: BigInt = al.into_iter().product();
                if lhs == rhs {
                    IndexIdentityStatus::Verified
                } else {
                    IndexIdentityStatus::Failed { lhs, rhs }
                }
            }
            _ => IndexIdentityStatus::Skipped("K(X) has smaller rank than K(X_E)".into()),
        }
    };
    Ok(TorsionReport {
        per_codim,
        index,
        alpha,
        beta,
        index_identity,
        split_side_torsion_free: split_free,
        note: Some(GENERIC_NOTE.into()),
    })
}

/// `Gamma^d(X_E) ∩ K(X)`.
pub fn gamma_by_intersection(model_x: &KLatticeModel, fe: &Filtration, d: u32) -> Result<IntegerLattice, FiltrationError> {
    Ok(fe.level(d).intersect(model_x.lattice())?)
}

/// Checks `Gamma^d(X) = Gamma^d(X_E) ∩ K(X)` for `d = 1, 2`, reporting basis
/// vectors on either side that the other misses.
pub fn check_gamma_two(fx: &Filtration, fe: &Filtration) -> Result<(), FiltrationError> {
    for d in 1..=2u32.min(fx.dim()) {
        let inter = gamma_by_intersection(fx.model(), fe, d)?;
        let ours = fx.level(d);
        if &inter == ours {
            continue;
        }
        let spec = fx.spec();
        let render = |v: &Vec<BigInt>| TruncPoly::from_dense(spec, v).to_string();
        let mut witnesses: Vec<String> = inter
            .basis()
            .iter()
            .filter(|v| !ours.contains(v))
            .map(|v| format!("{} in the intersection only", render(v)))
            .collect();
        witnesses.extend(
            ours.basis()
                .iter()
                .filter(|v| !inter.contains(v))
                .map(|v| format!("{} in Gamma^{d} only", render(v))),
        );
        return Err(FiltrationError::GammaMismatch { d, witnesses });
    }
    Ok(())
}

/// What a claim asserts about an element `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    /// `x ∈ Gamma^d(X)`.
    InGamma(u32),
    /// `x ∉ Gamma^d(X)`.
    NotInGamma(u32),
    /// `x ∈ Gamma^d(X) + Gamma^{d+1}(X_E)`: the class of `x` in the split
    /// quotient lies in the image of restriction.
    InImageRes(u32),
    /// Read as the image of `Gamma^{d/d+1}(X)` in the split quotient, the same
    /// test as [`ClaimKind::InImageRes`].
    InGammaQuotient(u32),
    /// `x ∈ T^d(X)`; exact for `d <= 2`, otherwise `Gamma^d` membership is
    /// only a sufficient test.
    InTopological(u32),
    /// `x ∈ T^d(X) + T^{d+1}(X_E)`, with `T^{d+1}(X_E)` the elements of
    /// `K(X_E)` of degree at least `d+1`. Exact for `d <= 2`.
    InTopologicalImage(u32),
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimKind::InGamma(d) => write!(f, "in Gamma^{d}"),
            ClaimKind::NotInGamma(d) => write!(f, "not in Gamma^{d}"),
            ClaimKind::InImageRes(d) => write!(f, "in Im(res^{d}/{})", d + 1),
            ClaimKind::InGammaQuotient(d) => write!(f, "in Gamma^{d}/{}", d + 1),
            ClaimKind::InTopological(d) => write!(f, "in T^{d}"),
            ClaimKind::InTopologicalImage(d) => write!(f, "in Im(res_T^{d}/{})", d + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub element: String,
    pub kind: ClaimKind,
    pub reference: String,
    /// The argument for the claim uses geometry beyond the lattice model (a
    /// closed embedding, say), so a failed lattice test is inconclusive.
    pub assumed_witness: bool,
}

impl Claim {
    pub fn new(id: impl Into<String>, element: impl Into<String>, kind: ClaimKind, reference: impl Into<String>) -> Self {
        Claim { id: id.into(), element: element.into(), kind, reference: reference.into(), assumed_witness: false }
    }

    /// Marks the claim as resting on an assumed geometric witness.
    pub fn assumed(mut self) -> Self {
        self.assumed_witness = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: Claim,
    pub status: ClaimStatus,
    /// The residue of the element modulo the tested lattice.
    pub witness: String,
}

/// Checks each claim by lattice membership. Elements are parsed with
/// [`parse_element`] using `names` for shorthands.
pub fn membership_suite(
    fx: &Filtration,
    fe: &Filtration,
    claims: &[Claim],
    names: &BTreeMap<String, TruncPoly>,
) -> Result<Vec<ClaimResult>, FiltrationError> {
    let spec = fx.spec();
    claims
        .iter()
        .map(|c| {
            let x = parse_element(spec, &c.element, names)?.to_dense();
            let test = |lat: &IntegerLattice| {
                let r = lat.reduce(&x);
                (r.iter().all(Zero::is_zero), TruncPoly::from_dense(spec, &r).to_string())
            };
            let (status, witness) = match c.kind {
                ClaimKind::InGamma(d) => {
                    let (ok, w) = test(fx.level(d));
                    (if ok { ClaimStatus::Holds } else { ClaimStatus::Fails }, w)
                }
                ClaimKind::NotInGamma(d) => {
                    let (ok, w) = test(fx.level(d));
                    (if ok { ClaimStatus::Fails } else { ClaimStatus::Holds }, w)
                }
                ClaimKind::InImageRes(d) | ClaimKind::InGammaQuotient(d) => {
                    let (ok, w) = test(&fx.level(d).sum(fe.level(d + 1))?);
                    (if ok { ClaimStatus::Holds } else { ClaimStatus::Fails }, w)
                }
                ClaimKind::InTopologicalImage(d) => {
                    let (ok, w) = test(&fx.level(d).sum(&topological_split(fe, d + 1)?)?);
                    let status = match (ok, d <= 2) {
                        (true, _) => ClaimStatus::Holds,
                        (false, true) => ClaimStatus::Fails,
                        (false, false) => ClaimStatus::Undetermined,
                    };
                    (status, w)
                }
                ClaimKind::InTopological(d) => {
                    let (ok, w) = test(fx.level(d));
                    let status = match (ok, d <= 2) {
                        (true, _) => ClaimStatus::Holds,
                        (false, true) => ClaimStatus::Fails,
                        (false, false) => ClaimStatus::Undetermined,
                    };
                    (status, w)
                }
            };
            let status = match status {
                ClaimStatus::Fails if c.assumed_witness && !matches!(c.kind, ClaimKind::NotInGamma(_)) => {
                    ClaimStatus::Undetermined
                }
                s => s,
            };
            Ok(ClaimResult { claim: c.clone(), status, witness })
        })
        .collect()
}

/// Elements of `K(X_E)` whose expansion has no monomial of degree below `d`.
/// When the Chow groups of `X_E` are torsion-free and inject into the split
/// ones, this is `T^d(X_E)`.
pub fn topological_split(fe: &Filtration, d: u32) -> Result<IntegerLattice, FiltrationError> {
    let spec = fe.spec();
    let n = spec.ambient_rank();
    let start = if d > spec.dim() { n } else { spec.first_index_of_degree(d) };
    let units: Vec<Vec<BigInt>> = (start..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            v
        })
        .collect();
    let tail = IntegerLattice::new(n, units)?;
    Ok(fe.model().lattice().intersect(&tail)?)
}

/// Order of the class of `x` in `Gamma^{d/d+1}(X)`, `None` if `x ∉ Gamma^d`
/// or the class has infinite order (searched up to `bound`).
pub fn class_order(f: &Filtration, d: u32, x: &TruncPoly, bound: u64) -> Option<u64> {
    let v = x.to_dense();
    if !f.level(d).contains(&v) {
        return None;
    }
    let next = f.level(d + 1);
    (1..=bound).find(|&k| {
        let kv: Vec<BigInt> = v.iter().map(|c| c * k).collect();
        next.contains(&kv)
    })
}
