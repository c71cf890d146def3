//! Lattice models of Grothendieck groups: `K(X)` sitting inside `K(X_E)` for
//! products of Severi-Brauer varieties (from index data) and for the
//! Weil-restricted conics that model quadric surfaces with nontrivial
//! discriminant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::intlattice::IntegerLattice;
use crate::truncring::{expand_line_bundle, RingError, RingSpec, TruncPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("factor {factor} has degree 0")]
    ZeroDegree { factor: usize },
    #[error("index table has no entry for tuple ({})", join(.tuple))]
    MissingEntry { tuple: Vec<u32> },
    #[error("index table entry ({}) is out of range for degrees ({})", join(.tuple), join(.degrees))]
    TupleOutOfRange { tuple: Vec<u32>, degrees: Vec<u32> },
    #[error("index at the zero tuple must be 1, got {value}")]
    ZeroTupleNotOne { value: u64 },
    #[error("index {value} at ({}) does not divide the degree product {bound}", join(.tuple))]
    IndexDoesNotDivide { tuple: Vec<u32>, value: u64, bound: u64 },
    #[error("invalid quadric configuration: {0}")]
    InvalidQuadric(String),
    #[error("configuration error at {field}: {reason}")]
    Config { field: String, reason: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn tuples_in_box(degrees: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &d in degrees {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Schur indices `ind(A_1^{i_1} (x) ... (x) A_n^{i_n})` for every tuple with
/// `0 <= i_j < deg A_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFunction {
    degrees: Vec<u32>,
    table: BTreeMap<Vec<u32>, u64>,
}

impl IndexFunction {
    pub fn new(degrees: Vec<u32>, table: BTreeMap<Vec<u32>, u64>) -> Result<Self, ModelError> {
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(ModelError::ZeroDegree { factor: i + 1 });
        }
        for t in table.keys() {
            if t.len() != degrees.len() || t.iter().zip(&degrees).any(|(a, d)| a >= d) {
                return Err(ModelError::TupleOutOfRange {
                    tuple: t.clone(),
                    degrees,
                });
            }
        }
        let bound: u64 = degrees.iter().map(|&d| d as u64).product();
        for t in tuples_in_box(&degrees) {
            let Some(&value) = table.get(&t) else {
                return Err(ModelError::MissingEntry { tuple: t });
            };
            if t.iter().all(|&a| a == 0) && value != 1 {
                return Err(ModelError::ZeroTupleNotOne { value });
            }
            if value == 0 || bound % value != 0 {
                return Err(ModelError::IndexDoesNotDivide { tuple: t, value, bound });
            }
        }
        Ok(IndexFunction { degrees, table })
    }

    /// Builds the table by evaluating `f` on every tuple.
    pub fn from_fn(degrees: Vec<u32>, f: impl Fn(&[u32]) -> u64) -> Result<Self, ModelError> {
        let table = tuples_in_box(&degrees)
            .into_iter()
            .map(|t| {
                let v = f(&t);
                (t, v)
            })
            .collect();
        IndexFunction::new(degrees, table)
    }

    /// Every nonzero tuple has index `value` (the generic configuration).
    pub fn generic(degrees: Vec<u32>, value: u64) -> Result<Self, ModelError> {
        IndexFunction::from_fn(degrees, |t| if t.iter().all(|&a| a == 0) { 1 } else { value })
    }

    /// `n` conics with every index 2.
    pub fn generic_conics(n: usize) -> Self {
        IndexFunction::generic(vec![2; n], 2).expect("generic conic table is valid")
    }

    /// `n` Severi-Brauer surfaces with every index 3.
    pub fn generic_sb_surfaces(n: usize) -> Self {
        IndexFunction::generic(vec![3; n], 3).expect("generic table is valid")
    }

    /// Products of conics from indices of tensor products: `subset_index`
    /// receives the 0/1 tuple and returns the index of the corresponding
    /// tensor product.
    pub fn conics(n: usize, subset_index: impl Fn(&[u32]) -> u64) -> Result<Self, ModelError> {
        IndexFunction::from_fn(vec![2; n], subset_index)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn get(&self, tuple: &[u32]) -> u64 {
        self.table[tuple]
    }

    /// `ind(A_i)` for the 1-based factor `i`.
    pub fn single_index(&self, i: usize) -> u64 {
        let mut t = vec![0; self.n()];
        if self.degrees[i - 1] > 1 {
            t[i - 1] = 1;
        }
        self.get(&t)
    }

    pub fn table(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.table
    }

    /// The same data with an extra factor of degree 1 appended (a point).
    pub fn with_point_factor(&self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.push(1);
        let table = self
            .table
            .iter()
            .map(|(t, &v)| {
                let mut t = t.clone();
                t.push(0);
                (t, v)
            })
            .collect();
        IndexFunction { degrees, table }
    }

    /// The same data with an extra split factor of degree `deg` appended.
    pub fn with_split_factor(&self, deg: u32) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.push(deg);
        IndexFunction::from_fn(degrees, |t| self.get(&t[..t.len() - 1]))
            .expect("extension of a valid table is valid")
    }

    /// Checks `ind(a)/ind(b) <= ind(a + b) <= ind(a) ind(b)` for every pair of
    /// tuples, with `a + b` taken componentwise modulo the degrees. Tables
    /// coming from actual algebras always pass.
    pub fn admissibility(&self) -> Result<(), String> {
        let tuples: Vec<&Vec<u32>> = self.table.keys().collect();
        for (i, a) in tuples.iter().enumerate() {
            for b in &tuples[i..] {
                let sum: Vec<u32> = a.iter().zip(b.iter()).zip(&self.degrees).map(|((x, y), d)| (x + y) % d).collect();
                let (ia, ib, iab) = (self.table[*a], self.table[*b], self.table[&sum]);
                if iab > ia * ib || iab * ib < ia || iab * ia < ib {
                    return Err(format!(
                        "index {iab} at ({}) is incompatible with {ia} at ({}) and {ib} at ({})",
                        join(&sum),
                        join(a),
                        join(b)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A factor removed by [`normalize_config`], with its original 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedFactor {
    pub factor: usize,
    pub degree: u32,
    pub reason: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedIndex {
    pub index: IndexFunction,
    pub dropped: Vec<DroppedFactor>,
}

/// Drops every factor that is a point or a split Severi-Brauer variety; the
/// codimension 2 torsion is unchanged by this.
pub fn normalize_config(idx: &IndexFunction) -> NormalizedIndex {
    let mut keep = Vec::new();
    let mut dropped = Vec::new();
    for i in 1..=idx.n() {
        let deg = idx.degrees[i - 1];
        if deg == 1 {
            dropped.push(DroppedFactor { factor: i, degree: deg, reason: "point" });
        } else if idx.single_index(i) == 1 {
            dropped.push(DroppedFactor { factor: i, degree: deg, reason: "split" });
        } else {
            keep.push(i - 1);
        }
    }
    let degrees: Vec<u32> = keep.iter().map(|&i| idx.degrees[i]).collect();
    let index = IndexFunction::from_fn(degrees, |t| {
        let mut full = vec![0; idx.n()];
        for (&i, &a) in keep.iter().zip(t) {
            full[i] = a;
        }
        idx.get(&full)
    })
    .expect("restriction of a valid table is valid");
    NormalizedIndex { index, dropped }
}

/// `m * sum_{a in orbit} x^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KGenerator {
    pub multiplier: u64,
    pub orbit: Vec<Vec<u32>>,
}

impl KGenerator {
    pub fn new(multiplier: u64, orbit: Vec<Vec<u32>>) -> Self {
        assert!(!orbit.is_empty(), "a generator needs a nonempty orbit");
        KGenerator { multiplier, orbit }
    }

    pub fn line(multiplier: u64, a: Vec<u32>) -> Self {
        KGenerator::new(multiplier, vec![a])
    }

    pub fn trivial(n: usize) -> Self {
        KGenerator::line(1, vec![0; n])
    }

    pub fn is_trivial(&self) -> bool {
        self.multiplier == 1 && self.orbit.len() == 1 && self.orbit[0].iter().all(|&a| a == 0)
    }

    pub fn rank(&self) -> u64 {
        self.multiplier * self.orbit.len() as u64
    }

    /// Smallest total `x`-degree over the orbit; for 0/1 exponents this is the
    /// codimension of the leading `y` part.
    pub fn codim(&self) -> u32 {
        self.orbit.iter().map(|a| a.iter().sum()).min().unwrap_or(0)
    }

    /// The class as a polynomial in the `y` variables.
    pub fn to_poly(&self, spec: &RingSpec) -> TruncPoly {
        let mut acc = TruncPoly::zero(spec);
        for a in &self.orbit {
            acc = &acc + &expand_line_bundle(spec, a);
        }
        let acc = &acc + &TruncPoly::constant(spec, self.orbit.len() as u64);
        acc.scale(&BigInt::from(self.multiplier))
    }
}

impl fmt::Display for KGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |a: &[u32]| -> String {
            let parts: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if parts.is_empty() { "1".into() } else { parts.join("*") }
        };
        let body = self.orbit.iter().map(|a| mono(a)).collect::<Vec<_>>().join(" + ");
        match (self.multiplier, self.orbit.len()) {
            (1, 1) => write!(f, "{body}"),
            (m, 1) => write!(f, "{m}*{body}"),
            (1, _) => write!(f, "({body})"),
            (m, _) => write!(f, "{m}*({body})"),
        }
    }
}

/// Coordinates of a generator in the `y`-monomial basis of `spec`.
pub fn coordinates(gen: &KGenerator, spec: &RingSpec) -> Vec<BigInt> {
    gen.to_poly(spec).to_dense()
}

/// A finite generating set of a sublattice of the split model.
#[derive(Clone, Debug)]
pub struct KLatticeModel {
    spec: RingSpec,
    generators: Vec<KGenerator>,
    lattice: IntegerLattice,
}

impl KLatticeModel {
    pub fn new(spec: RingSpec, generators: Vec<KGenerator>) -> Self {
        assert!(
            generators.iter().any(KGenerator::is_trivial),
            "the trivial generator must be present"
        );
        let rows = generators.iter().map(|g| coordinates(g, &spec)).collect();
        let lattice = IntegerLattice::new(spec.ambient_rank(), rows).expect("coordinate lengths match");
        KLatticeModel { spec, generators, lattice }
    }

    /// The split model: every monomial `x^a` with multiplier 1.
    pub fn full(spec: &RingSpec) -> Self {
        let gens = tuples_in_box(spec.truncations())
            .into_iter()
            .map(|a| KGenerator::line(1, a))
            .collect();
        KLatticeModel::new(spec.clone(), gens)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[KGenerator] {
        &self.generators
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// Product of the multipliers of generators whose leading `y` part has
    /// codimension `n` (the index `|K^n(X_E)/K^n(X)|` for triangular bases).
    pub fn codim_multiplier(&self, n: u32) -> BigInt {
        self.generators
            .iter()
            .filter(|g| g.codim() == n)
            .map(|g| BigInt::from(g.multiplier))
            .product()
    }
}

/// Quillen generators: the split model `K(X_E)` and `K(X)` spanned by
/// `ind(a) * x^a`. Factors of degree 1 contribute no variable.
pub fn quillen_generators(idx: &IndexFunction) -> Result<(KLatticeModel, KLatticeModel), ModelError> {
    let live: Vec<usize> = (0..idx.n()).filter(|&i| idx.degrees[i] > 1).collect();
    let spec = RingSpec::new(live.iter().map(|&i| idx.degrees[i]).collect())?;
    let project = |t: &[u32]| -> Vec<u32> { live.iter().map(|&i| t[i]).collect() };
    let mut ke = Vec::new();
    let mut kx = Vec::new();
    for (t, &v) in idx.table() {
        if live.len() < idx.n() && (0..idx.n()).any(|i| !live.contains(&i) && t[i] != 0) {
            continue;
        }
        let a = project(t);
        ke.push(KGenerator::line(1, a.clone()));
        kx.push(KGenerator::line(v, a));
    }
    Ok((KLatticeModel::new(spec.clone(), ke), KLatticeModel::new(spec, kx)))
}

/// The quadric-surface configurations handled by [`weil_generators`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum QuadricCase {
    TwoQuadricsBiquadratic,
    TwoQuadricsSameField,
    TwoQuadricsOneTrivialDisc,
    ThreeQuadricsSameDisc,
}

impl QuadricCase {
    pub const ALL: [QuadricCase; 4] = [
        QuadricCase::TwoQuadricsBiquadratic,
        QuadricCase::TwoQuadricsSameField,
        QuadricCase::TwoQuadricsOneTrivialDisc,
        QuadricCase::ThreeQuadricsSameDisc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuadricCase::TwoQuadricsBiquadratic => "two_quadrics_biquadratic",
            QuadricCase::TwoQuadricsSameField => "two_quadrics_same_field",
            QuadricCase::TwoQuadricsOneTrivialDisc => "two_quadrics_one_trivial_disc",
            QuadricCase::ThreeQuadricsSameDisc => "three_quadrics_same_disc",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let norm: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        QuadricCase::ALL
            .into_iter()
            .find(|c| c.name().replace('_', "") == norm || format!("{c:?}").to_ascii_lowercase() == norm)
    }

    pub fn is_two(self) -> bool {
        self != QuadricCase::ThreeQuadricsSameDisc
    }

    fn variables(self) -> usize {
        match self {
            QuadricCase::TwoQuadricsBiquadratic | QuadricCase::TwoQuadricsSameField => 4,
            QuadricCase::TwoQuadricsOneTrivialDisc => 3,
            QuadricCase::ThreeQuadricsSameDisc => 6,
        }
    }
}

impl fmt::Display for QuadricCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Index data over the quadratic extension. Two quadrics: `e = [e1, e2]`,
/// `f = [f]`. Three quadrics: `e = [e12, e34, e56]`, `f = [f12, f34, f56]`
/// and `g`. `d` is the degree of the chosen splitting field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadricConfig {
    pub case: QuadricCase,
    pub e: Vec<u64>,
    pub f: Vec<u64>,
    pub g: Option<u64>,
    pub d: u64,
}

impl QuadricConfig {
    pub fn two(case: QuadricCase, e1: u64, e2: u64, f: u64, d: u64) -> Self {
        QuadricConfig { case, e: vec![e1, e2], f: vec![f], g: None, d }
    }

    pub fn three(e: [u64; 3], f: [u64; 3], g: u64, d: u64) -> Self {
        QuadricConfig {
            case: QuadricCase::ThreeQuadricsSameDisc,
            e: e.to_vec(),
            f: f.to_vec(),
            g: Some(g),
            d,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |s: String| Err(ModelError::InvalidQuadric(s));
        let (ne, nf) = if self.case.is_two() { (2, 1) } else { (3, 3) };
        if self.e.len() != ne || self.f.len() != nf {
            return bad(format!("{} needs {ne} e-values and {nf} f-values", self.case));
        }
        if self.case.is_two() != self.g.is_none() {
            return bad(format!("g is {} for {}", if self.case.is_two() { "not used" } else { "required" }, self.case));
        }
        if let Some(x) = self.e.iter().find(|x| ![1, 2].contains(*x)) {
            return bad(format!("e = {x} is not in {{1, 2}}"));
        }
        if let Some(x) = self.f.iter().find(|x| ![1, 2, 4].contains(*x)) {
            return bad(format!("f = {x} is not in {{1, 2, 4}}"));
        }
        if let Some(g) = self.g.filter(|g| ![1, 2, 4, 8].contains(g)) {
            return bad(format!("g = {g} is not in {{1, 2, 4, 8}}"));
        }
        if ![2, 4, 8].contains(&self.d) {
            return bad(format!("d = {} is not in {{2, 4, 8}}", self.d));
        }
        Ok(())
    }

    /// Necessary conditions on the index data: for Brauer classes `a`, `b`,
    /// `ind(a)/ind(b) <= ind(a + b) <= ind(a) ind(b)`, plus the constraints
    /// tying the splitting degree `d` to the indices. Returns the first
    /// violated condition.
    pub fn admissibility(&self) -> Result<(), String> {
        self.validate().map_err(|e| e.to_string())?;
        let tensor_ok = |a: u64, b: u64, ab: u64| ab <= a * b && ab * b >= a && ab * a >= b;
        let check = |ok: bool, what: String| if ok { Ok(()) } else { Err(what) };
        let (d, e) = (self.d, &self.e);
        match self.case {
            QuadricCase::TwoQuadricsBiquadratic | QuadricCase::TwoQuadricsOneTrivialDisc => {
                let f = self.f[0];
                check(tensor_ok(e[0], e[1], f), format!("f = {f} incompatible with e = ({}, {})", e[0], e[1]))?;
                check(d <= 4, format!("d = {d} exceeds 4"))?;
                check(f != 1 || d == 2, "f = 1 forces d = 2".into())?;
                check(f != 4 || d == 4, "f = 4 forces d = 4".into())
            }
            QuadricCase::TwoQuadricsSameField => {
                let f = self.f[0];
                check(e[0] == 2, "e1 = 2 when both quadrics share the discriminant field".into())?;
                check(tensor_ok(e[0], e[1], f), format!("f = {f} incompatible with e = ({}, {})", e[0], e[1]))?;
                check(d <= 4, format!("d = {d} exceeds 4"))?;
                check(f != 1 || (e[1] == 2 && d == 2), "f = 1 forces e2 = d = 2".into())?;
                check(f != 4 || d == 4, "f = 4 forces d = 4".into())
            }
            QuadricCase::ThreeQuadricsSameDisc => {
                let g = self.g.unwrap_or(1);
                let f = &self.f;
                // f[k] pairs the two algebras other than the k-th
                for k in 0..3 {
                    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                    check(tensor_ok(e[i], e[j], f[k]), format!("f{} = {} incompatible with e", k + 1, f[k]))?;
                    check(tensor_ok(e[k], f[k], g), format!("g = {g} incompatible with e{} and f{}", k + 1, k + 1))?;
                }
                // the three pair classes sum to zero
                check(tensor_ok(f[0], f[1], f[2]), format!("f = ({}, {}, {}) violates the triangle condition", f[0], f[1], f[2]))?;
                let f1 = f.iter().filter(|&&x| x == 1).count();
                if f1 >= 2 {
                    check(d == 2, "two trivial pair indices force d = 2".into())
                } else {
                    check(d != 2, "d = 2 needs at least two trivial pair indices".into())?;
                    check(d != 8 || g >= 4, "d = 8 needs h = 8, so g >= 4".into())
                }
            }
        }
    }

    /// The index `[K(X_E) : K(X)]` predicted by the displayed bases.
    pub fn expected_index(&self) -> u64 {
        let e: u64 = self.e.iter().product();
        let f: u64 = self.f.iter().product();
        match self.case {
            QuadricCase::TwoQuadricsBiquadratic => e * e * f,
            QuadricCase::TwoQuadricsSameField => e * e * f * f,
            QuadricCase::TwoQuadricsOneTrivialDisc => self.e[0] * self.e[0] * self.e[1] * f,
            QuadricCase::ThreeQuadricsSameDisc => (e * f * self.g.unwrap_or(1)).pow(4),
        }
    }
}

/// Which index multiplies a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mult {
    One,
    E(usize),
    F(usize),
    G,
}

fn parse_orbit(words: &[&str]) -> Vec<Vec<u32>> {
    words
        .iter()
        .map(|w| w.bytes().map(|b| (b - b'0') as u32).collect())
        .collect()
}

/// Basis of `K(X)` for the two-quadric cases as (multiplier, orbit) rows.
/// Dropping the multipliers gives the basis of `K(X_E)`.
fn two_quadric_table(case: QuadricCase) -> Vec<(Mult, Vec<&'static str>)> {
    use Mult::*;
    match case {
        QuadricCase::TwoQuadricsBiquadratic => vec![
            (One, vec!["0000"]),
            (E(0), vec!["1000", "0100"]),
            (E(1), vec!["0010", "0001"]),
            (One, vec!["1100"]),
            (One, vec!["0011"]),
            (F(0), vec!["1010", "1001", "0110", "0101"]),
            (E(1), vec!["1110", "1101"]),
            (E(0), vec!["1011", "0111"]),
            (One, vec!["1111"]),
        ],
        QuadricCase::TwoQuadricsSameField => vec![
            (One, vec!["0000"]),
            (E(0), vec!["1000", "0100"]),
            (E(1), vec!["0010", "0001"]),
            (One, vec!["1100"]),
            (One, vec!["0011"]),
            (F(0), vec!["1010", "0101"]),
            (F(0), vec!["1001", "0110"]),
            (E(1), vec!["1110", "1101"]),
            (E(0), vec!["1011", "0111"]),
            (One, vec!["1111"]),
        ],
        QuadricCase::TwoQuadricsOneTrivialDisc => vec![
            (One, vec!["000"]),
            (E(0), vec!["100"]),
            (E(1), vec!["010", "001"]),
            (One, vec!["011"]),
            (F(0), vec!["110", "101"]),
            (E(0), vec!["111"]),
        ],
        QuadricCase::ThreeQuadricsSameDisc => unreachable!("three quadrics use the pair templates"),
    }
}

/// Basis of `K(X)` for three quadrics with a common discriminant. Variables
/// come in pairs `J = {12, 34, 56}`; each template is instantiated over all
/// role assignments `{pq, rs, tu} = J`, and repeated orbits are merged.
fn three_quadric_table() -> Vec<(Mult, Vec<Vec<u32>>)> {
    use Mult::*;
    let pairs = [(0usize, 1usize), (2, 3), (4, 5)];
    let mono = |vars: &[usize]| -> Vec<u32> {
        let mut a = vec![0; 6];
        for &v in vars {
            a[v] = 1;
        }
        a
    };
    let mut rows: Vec<(Mult, Vec<Vec<u32>>)> = Vec::new();
    let mut push = |m: Mult, mut orbit: Vec<Vec<u32>>| {
        orbit.sort();
        orbit.dedup();
        if !rows.iter().any(|(_, o)| *o == orbit) {
            rows.push((m, orbit));
        }
    };
    push(One, vec![mono(&[])]);
    let roles: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    // each unordered pair also appears with its members swapped
    let orient = |k: usize, flip: bool| if flip { (pairs[k].1, pairs[k].0) } else { pairs[k] };
    for [a, b, c] in roles {
        for fb in [false, true] {
            for fc in [false, true] {
                let (p, q) = pairs[a];
                let (r, s) = orient(b, fb);
                let (t, u) = orient(c, fc);
                push(E(a), vec![mono(&[p]), mono(&[q])]);
                push(One, vec![mono(&[p, q])]);
                push(F(c), vec![mono(&[p, r]), mono(&[q, s])]);
                push(E(a), vec![mono(&[r, s, p]), mono(&[r, s, q])]);
                push(G, vec![mono(&[p, r, t]), mono(&[q, s, u])]);
                push(One, vec![mono(&[p, q, r, s])]);
                push(F(a), vec![mono(&[p, q, r, t]), mono(&[p, q, s, u])]);
                push(E(c), vec![mono(&[p, q, r, s, t]), mono(&[p, q, r, s, u])]);
            }
        }
    }
    push(One, vec![mono(&[0, 1, 2, 3, 4, 5])]);
    rows
}

/// The three models `K(X_{EL})`, `K(X_E)`, `K(X)` for a quadric configuration.
pub fn weil_generators(
    cfg: &QuadricConfig,
) -> Result<(KLatticeModel, KLatticeModel, KLatticeModel), ModelError> {
    cfg.validate()?;
    let n = cfg.case.variables();
    let spec = RingSpec::uniform(n, 2)?;
    let rows: Vec<(Mult, Vec<Vec<u32>>)> = if cfg.case == QuadricCase::ThreeQuadricsSameDisc {
        three_quadric_table()
    } else {
        two_quadric_table(cfg.case)
            .into_iter()
            .map(|(m, w)| (m, parse_orbit(&w)))
            .collect()
    };
    let value = |m: Mult| match m {
        Mult::One => 1,
        Mult::E(i) => cfg.e[i],
        Mult::F(i) => cfg.f[i],
        Mult::G => cfg.g.unwrap_or(1),
    };
    let ke = rows.iter().map(|(_, o)| KGenerator::new(1, o.clone())).collect();
    let kx = rows.iter().map(|(m, o)| KGenerator::new(value(*m), o.clone())).collect();
    Ok((
        KLatticeModel::full(&spec),
        KLatticeModel::new(spec.clone(), ke),
        KLatticeModel::new(spec, kx),
    ))
}

/// A parsed configuration file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Config {
    Split(IndexFunction),
    Quadric(QuadricConfig),
}

fn cfg_err(field: &str, reason: impl Into<String>) -> ModelError {
    ModelError::Config { field: field.into(), reason: reason.into() }
}

fn as_u64(v: &Value, field: &str) -> Result<u64, ModelError> {
    v.as_u64().ok_or_else(|| cfg_err(field, format!("expected a nonnegative integer, found {v}")))
}

fn parse_tuple_key(key: &str, field: &str) -> Result<Vec<u32>, ModelError> {
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| cfg_err(field, format!("bad tuple key {key:?}"))))
        .collect()
}

/// Reads `values[key]` for each key in order, or accepts a bare number when a
/// single value is expected.
fn keyed_values(v: Option<&Value>, keys: &[&str], field: &str) -> Result<Vec<u64>, ModelError> {
    let v = v.ok_or_else(|| cfg_err(field, "missing"))?;
    match v {
        Value::Number(_) if keys.len() == 1 => Ok(vec![as_u64(v, field)?]),
        Value::Array(a) if a.len() == keys.len() => a
            .iter()
            .enumerate()
            .map(|(i, x)| as_u64(x, &format!("{field}[{i}]")))
            .collect(),
        Value::Object(m) => {
            if let Some(extra) = m.keys().find(|k| !keys.contains(&k.as_str())) {
                return Err(cfg_err(&format!("{field}.{extra}"), format!("unknown key; expected one of {keys:?}")));
            }
            keys.iter()
                .map(|k| {
                    let f = format!("{field}.{k}");
                    as_u64(m.get(*k).ok_or_else(|| cfg_err(&f, "missing"))?, &f)
                })
                .collect()
        }
        _ => Err(cfg_err(field, format!("expected an object with keys {keys:?}"))),
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, ModelError> {
        let v: Value = serde_json::from_str(text).map_err(|e| {
            cfg_err(&format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        Config::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Config, ModelError> {
        let obj = v.as_object().ok_or_else(|| cfg_err("$", "expected a JSON object"))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| cfg_err("kind", "missing or not a string"))?;
        match kind {
            "split" => {
                let degrees = obj
                    .get("degrees")
                    .and_then(Value::as_array)
                    .ok_or_else(|| cfg_err("degrees", "missing or not an array"))?
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        let f = format!("degrees[{i}]");
                        u32::try_from(as_u64(d, &f)?).map_err(|_| cfg_err(&f, "too large"))
                    })
                    .collect::<Result<Vec<u32>, _>>()?;
                let table = obj
                    .get("index_table")
                    .and_then(Value::as_object)
                    .ok_or_else(|| cfg_err("index_table", "missing or not an object"))?
                    .iter()
                    .map(|(k, val)| {
                        let f = format!("index_table.{k}");
                        Ok((parse_tuple_key(k, &f)?, as_u64(val, &f)?))
                    })
                    .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
                Ok(Config::Split(IndexFunction::new(degrees, table)?))
            }
            "quadric" => {
                let name = obj.get("case").and_then(Value::as_str).ok_or_else(|| cfg_err("case", "missing or not a string"))?;
                let case = QuadricCase::from_name(name).ok_or_else(|| {
                    let known: Vec<&str> = QuadricCase::ALL.iter().map(|c| c.name()).collect();
                    cfg_err("case", format!("unknown case {name:?}; expected one of {known:?}"))
                })?;
                let (ekeys, fkeys): (&[&str], &[&str]) = if case.is_two() {
                    (&["1", "2"], &["12"])
                } else {
                    (&["12", "34", "56"], &["12", "34", "56"])
                };
                let e = keyed_values(obj.get("e"), ekeys, "e")?;
                let f = keyed_values(obj.get("f"), fkeys, "f")?;
                let g = match obj.get("g") {
                    None | Some(Value::Null) => None,
                    Some(x) => Some(as_u64(x, "g")?),
                };
                let d = as_u64(obj.get("d").ok_or_else(|| cfg_err("d", "missing"))?, "d")?;
                let cfg = QuadricConfig { case, e, f, g, d };
                cfg.validate()?;
                Ok(Config::Quadric(cfg))
            }
            other => Err(cfg_err("kind", format!("unknown kind {other:?}; expected \"split\" or \"quadric\""))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Config::Split(idx) => {
                let table: serde_json::Map<String, Value> = idx
                    .table()
                    .iter()
                    .map(|(t, &v)| (join(t), Value::from(v)))
                    .collect();
                serde_json::json!({"kind": "split", "degrees": idx.degrees(), "index_table": table})
            }
            Config::Quadric(q) => {
                let (ek, fk): (&[&str], &[&str]) = if q.case.is_two() {
                    (&["1", "2"], &["12"])
                } else {
                    (&["12", "34", "56"], &["12", "34", "56"])
                };
                let e: serde_json::Map<String, Value> = ek.iter().zip(&q.e).map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
                let f: serde_json::Map<String, Value> = fk.iter().zip(&q.f).map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
                let mut out = serde_json::json!({"kind": "quadric", "case": q.case.name(), "e": e, "f": f, "d": q.d});
                if let Some(g) = q.g {
                    out["g"] = Value::from(g);
                }
                out
            }
        }
    }
}

/// Expands a class given as a polynomial in `x` (line-bundle monomials with
/// integer coefficients) into the `y` basis.
pub fn x_poly(spec: &RingSpec, terms: &[(i64, Vec<u32>)]) -> TruncPoly {
    let mut acc = TruncPoly::zero(spec);
    for (c, a) in terms {
        let t = &expand_line_bundle(spec, a) + &TruncPoly::one(spec);
        acc = &acc + &t.scale(&BigInt::from(*c));
    }
    acc
}

/// Index `[K(X_E) : K(X)]` for split Quillen models: the product of all
/// multipliers.
pub fn quillen_index(idx: &IndexFunction) -> BigInt {
    idx.table().values().fold(BigInt::one(), |acc, &v| acc * v)
}
