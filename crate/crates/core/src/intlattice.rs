//! Integer lattices inside `Z^D`: Hermite and Smith normal forms, membership,
//! sums, intersections and torsion of quotients.
//!
//! Everything is exact over `BigInt`. Lattices are immutable values whose
//! row-style HNF is computed on first use and cached.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector of length {got} in ambient rank {expected}")]
    BadVector { expected: usize, got: usize },
    #[error("not a sublattice: generator {generator} lies outside the super-lattice")]
    NotASublattice { generator: usize },
}

/// Echelon basis under construction. Rows are kept indexed by pivot column
/// and each new row is reduced against the rows below it.
#[derive(Clone, Debug)]
pub struct HnfBuilder {
    ambient: usize,
    rows: Vec<Option<Vec<BigInt>>>,
}

fn sub_multiple(v: &mut [BigInt], q: &BigInt, r: &[BigInt], from: usize) {
    for (x, y) in v[from..].iter_mut().zip(&r[from..]) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

impl HnfBuilder {
    pub fn new(ambient: usize) -> Self {
        HnfBuilder {
            ambient,
            rows: vec![None; ambient],
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    fn reduce_tail(&self, row: &mut [BigInt], pivot: usize) {
        for j in pivot + 1..self.ambient {
            if row[j].is_zero() {
                continue;
            }
            if let Some(p) = &self.rows[j] {
                let q = row[j].div_floor(&p[j]);
                if !q.is_zero() {
                    sub_multiple(row, &q, p, j);
                }
            }
        }
    }

    /// Adds `v` to the generating set. Returns `true` if the span grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient rank");
        let mut c = 0;
        loop {
            while c < self.ambient && v[c].is_zero() {
                c += 1;
            }
            if c == self.ambient {
                return false;
            }
            let Some(r) = self.rows[c].take() else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.reduce_tail(&mut v, c);
                self.rows[c] = Some(v);
                return true;
            };
            let (a, b) = (&r[c], &v[c]);
            if b.is_multiple_of(a) {
                let q = b / a;
                sub_multiple(&mut v, &q, &r, c);
                self.rows[c] = Some(r);
            } else {
                // unimodular 2x2 step: [s t; -b/g a/g]
                let e = a.extended_gcd(b);
                let (ag, bg) = (a / &e.gcd, b / &e.gcd);
                let mut nr: Vec<BigInt> = r.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                let nv: Vec<BigInt> = r.iter().zip(&v).map(|(x, y)| &ag * y - &bg * x).collect();
                if nr[c].is_negative() {
                    nr.iter_mut().for_each(|x| *x = -&*x);
                }
                self.reduce_tail(&mut nr, c);
                self.rows[c] = Some(nr);
                v = nv;
                // a non-strict change still grows the span
                let grew = true;
                if v.iter().all(Zero::is_zero) {
                    return grew;
                }
                self.insert(v);
                return grew;
            }
            c += 1;
        }
    }

    /// Canonical HNF rows: positive pivots, entries above each pivot in `[0, pivot)`.
    pub fn canonical_rows(&self) -> Vec<Vec<BigInt>> {
        let pivots: Vec<usize> = (0..self.ambient).filter(|&c| self.rows[c].is_some()).collect();
        let mut rows: Vec<Vec<BigInt>> = pivots
            .iter()
            .map(|&c| self.rows[c].clone().unwrap())
            .collect();
        for i in (0..rows.len()).rev() {
            for k in i + 1..rows.len() {
                let c = pivots[k];
                let q = rows[i][c].div_floor(&rows[k][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(k);
                    sub_multiple(&mut head[i], &q, &tail[0], c);
                }
            }
        }
        rows
    }

    pub fn finish(self) -> IntegerLattice {
        let rows = self.canonical_rows();
        IntegerLattice::from_canonical(self.ambient, rows)
    }
}

/// Row-style Hermite normal form of the row span of `rows`, zero rows removed.
pub fn hnf_rows(ambient: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b = HnfBuilder::new(ambient);
    for r in rows {
        b.insert(r.clone());
    }
    b.canonical_rows()
}

/// A subgroup of `Z^D` given by generators.
#[derive(Debug)]
pub struct IntegerLattice {
    ambient: usize,
    generators: Vec<Vec<BigInt>>,
    canonical: OnceLock<Vec<Vec<BigInt>>>,
}

impl Clone for IntegerLattice {
    fn clone(&self) -> Self {
        let canonical = OnceLock::new();
        if let Some(c) = self.canonical.get() {
            let _ = canonical.set(c.clone());
        }
        IntegerLattice {
            ambient: self.ambient,
            generators: self.generators.clone(),
            canonical,
        }
    }
}

impl PartialEq for IntegerLattice {
    /// Equality of spans.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis() == other.basis()
    }
}

impl Eq for IntegerLattice {}

impl IntegerLattice {
    pub fn new(ambient: usize, generators: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(LatticeError::BadVector {
                expected: ambient,
                got: g.len(),
            });
        }
        Ok(IntegerLattice {
            ambient,
            generators,
            canonical: OnceLock::new(),
        })
    }

    pub fn from_i64(ambient: usize, generators: &[Vec<i64>]) -> Result<Self, LatticeError> {
        IntegerLattice::new(
            ambient,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn from_canonical(ambient: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let canonical = OnceLock::new();
        let _ = canonical.set(rows.clone());
        IntegerLattice {
            ambient,
            generators: rows,
            canonical,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        IntegerLattice::from_canonical(ambient, Vec::new())
    }

    /// The full lattice `Z^D`.
    pub fn standard(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![BigInt::zero(); ambient];
                v[i] = BigInt::one();
                v
            })
            .collect();
        IntegerLattice::from_canonical(ambient, rows)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Canonical HNF basis.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        self.canonical
            .get_or_init(|| hnf_rows(self.ambient, &self.generators))
    }

    pub fn hnf(&self) -> IntegerLattice {
        IntegerLattice::from_canonical(self.ambient, self.basis().to_vec())
    }

    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    fn pivot(row: &[BigInt]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
    }

    fn check_ambient(&self, other: &IntegerLattice) -> Result<(), LatticeError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LatticeError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            })
        }
    }

    /// Coefficients of `v` in the canonical basis, by back-substitution.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for row in self.basis() {
            let c = Self::pivot(row);
            if r[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = r[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                sub_multiple(&mut r, &q, row, c);
            }
            coeffs.push(q);
        }
        r.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Canonical representative of `v` modulo the lattice: entries at pivot
    /// columns are brought into `[0, pivot)`. Zero iff `v` is a member.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for row in self.basis() {
            let c = Self::pivot(row);
            let q = r[c].div_floor(&row[c]);
            if !q.is_zero() {
                sub_multiple(&mut r, &q, row, c);
            }
        }
        r
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> Result<bool, LatticeError> {
        self.check_ambient(other)?;
        Ok(self.basis().iter().all(|g| other.contains(g)))
    }

    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        self.check_ambient(other)?;
        let mut b = HnfBuilder::new(self.ambient);
        for r in self.basis().iter().chain(other.basis()) {
            b.insert(r.clone());
        }
        Ok(b.finish())
    }

    /// Exact intersection, from the left kernel of the stacked bases.
    pub fn intersect(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        self.check_ambient(other)?;
        let b1 = self.basis();
        let b2 = other.basis();
        let k = b1.len();
        if k == 0 || b2.is_empty() {
            return Ok(IntegerLattice::zero(self.ambient));
        }
        let width = self.ambient + k;
        let mut rows = Vec::with_capacity(k + b2.len());
        for (i, r) in b1.iter().enumerate() {
            let mut v = r.clone();
            v.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            rows.push(v);
        }
        for r in b2 {
            let mut v = r.clone();
            v.extend(std::iter::repeat(BigInt::zero()).take(k));
            rows.push(v);
        }
        let h = hnf_rows(width, &rows);
        let mut out = HnfBuilder::new(self.ambient);
        for row in h.iter().filter(|r| r[..self.ambient].iter().all(Zero::is_zero)) {
            let mut v = vec![BigInt::zero(); self.ambient];
            for (a, g) in row[self.ambient..].iter().zip(b1) {
                if !a.is_zero() {
                    for (x, y) in v.iter_mut().zip(g) {
                        *x += a * y;
                    }
                }
            }
            out.insert(v);
        }
        Ok(out.finish())
    }

    /// Matrix of the canonical basis of `self` written in the canonical basis of `sup`.
    fn relative_matrix(&self, sup: &IntegerLattice) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        self.check_ambient(sup)?;
        self.basis()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                sup.coordinates_of(g)
                    .ok_or(LatticeError::NotASublattice { generator: i })
            })
            .collect()
    }
}

/// Torsion divisors (each `>= 2`, each dividing the next) and free rank of a
/// finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ElementaryDivisors {
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
}

impl ElementaryDivisors {
    pub fn trivial() -> Self {
        ElementaryDivisors::default()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    /// Order of the whole group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    pub fn exponent(&self) -> BigInt {
        self.divisors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn divisors_u64(&self) -> Vec<u64> {
        self.divisors
            .iter()
            .map(|d| u64::try_from(d).expect("divisor fits in u64"))
            .collect()
    }
}

impl fmt::Display for ElementaryDivisors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.divisors.len() {
            let d = &self.divisors[i];
            let mut j = i;
            while j < self.divisors.len() && &self.divisors[j] == d {
                j += 1;
            }
            parts.push(match j - i {
                1 => format!("Z/{d}"),
                m => format!("(Z/{d})^{m}"),
            });
            i = j;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form of an integer matrix: the nonzero invariant factors
/// `d_1 | d_2 | ...` (including ones) and the matrix shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Structure of the cokernel `Z^cols / rowspace`.
    pub fn cokernel(&self) -> ElementaryDivisors {
        ElementaryDivisors {
            divisors: self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
            free_rank: self.cols - self.rank(),
        }
    }
}

fn transpose(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Replaces a list of positive integers by the divisibility chain with the
/// same product structure (gcd/lcm normalization).
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Smith normal form by alternating row-HNF of the matrix and its transpose.
pub fn snf(matrix: &[Vec<BigInt>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut cur = hnf_rows(cols, matrix);
    let mut width = cols;
    loop {
        let diagonal = cur
            .iter()
            .all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1);
        if diagonal {
            break;
        }
        let t = transpose(&cur, width);
        width = cur.len();
        cur = hnf_rows(width, &t);
    }
    let diag = cur
        .iter()
        .map(|r| r.iter().find(|x| !x.is_zero()).unwrap().abs())
        .collect();
    SmithForm {
        diagonal: divisibility_chain(diag),
        rows,
        cols,
    }
}

pub fn snf_i64(matrix: &[Vec<i64>]) -> SmithForm {
    let m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    snf(&m)
}

/// Smith form together with unimodular `U`, `V` such that `U * M * V` is the
/// diagonal matrix `D`. Computed by elementary row/column operations,
/// independently of [`snf`]; intended for auditing.
#[derive(Clone, Debug)]
pub struct AuditedSmithForm {
    pub form: SmithForm,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
    pub diagonal_matrix: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn snf_with_transforms(matrix: &[Vec<BigInt>]) -> AuditedSmithForm {
    let m = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    let mut a = matrix.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);

    let row_op = |a: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        let s = a[src].clone();
        for (x, y) in a[dst].iter_mut().zip(&s) {
            *x -= q * y;
        }
    };
    let col_op = |a: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for r in a.iter_mut() {
            let y = r[src].clone();
            r[dst] -= q * y;
        }
    };

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                row_op(&mut a, i, t, &q);
                row_op(&mut u, i, t, &q);
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                col_op(&mut a, j, t, &q);
                col_op(&mut v, j, t, &q);
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: pull an offending row into row t
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = bad {
            let minus_one = -BigInt::one();
            row_op(&mut a, t, i, &minus_one);
            row_op(&mut u, t, i, &minus_one);
            continue;
        }
        if a[t][t].is_negative() {
            a[t].iter_mut().for_each(|x| *x = -&*x);
            u[t].iter_mut().for_each(|x| *x = -&*x);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..m.min(n))
        .map(|i| a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    AuditedSmithForm {
        form: SmithForm {
            diagonal,
            rows: m,
            cols: n,
        },
        left: u,
        right: v,
        diagonal_matrix: a,
    }
}

/// Structure of `sup / sub`. Fails unless `sub` is contained in `sup`.
pub fn quotient_torsion(
    sub: &IntegerLattice,
    sup: &IntegerLattice,
) -> Result<ElementaryDivisors, LatticeError> {
    let rel = sub.relative_matrix(sup)?;
    if rel.is_empty() {
        return Ok(ElementaryDivisors {
            divisors: Vec::new(),
            free_rank: sup.rank(),
        });
    }
    let mut form = snf(&rel);
    form.cols = sup.rank();
    Ok(form.cokernel())
}

/// Index `[sup : sub]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "inf"),
        }
    }
}

pub fn index(sub: &IntegerLattice, sup: &IntegerLattice) -> Result<LatticeIndex, LatticeError> {
    let q = quotient_torsion(sub, sup)?;
    Ok(match q.order() {
        Some(n) => LatticeIndex::Finite(n),
        None => LatticeIndex::Infinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(d: usize, rows: &[Vec<i64>]) -> IntegerLattice {
        IntegerLattice::from_i64(d, rows).unwrap()
    }

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(lat(2, &[vec![2, 0], vec![0, 3]]).basis(), big(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(lat(2, &[vec![2, 2], vec![2, -2]]).basis(), big(&[vec![2, 2], vec![0, 4]]));
        assert!(lat(2, &[vec![0, 0]]).basis().is_empty());
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let l = lat(3, &[vec![1, 5, 7], vec![0, 3, 11], vec![0, 0, 4]]);
        assert_eq!(l.basis(), big(&[vec![1, 2, 0], vec![0, 3, 3], vec![0, 0, 4]]));
    }

    #[test]
    fn snf_examples() {
        let f = snf_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(f.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(f.cokernel().divisors, vec![BigInt::from(6)]);
        let f = snf_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(f.cokernel().divisors_u64(), vec![2, 2]);
        let f = snf_i64(&[vec![0, 0], vec![0, 0]]);
        assert!(f.diagonal.is_empty());
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn audited_snf_reconstructs() {
        let m = big(&[vec![4, 6, 2], vec![6, 9, 3], vec![2, 4, 8]]);
        let a = snf_with_transforms(&m);
        assert_eq!(mat_mul(&mat_mul(&a.left, &m), &a.right), a.diagonal_matrix);
        assert_eq!(a.form.diagonal, snf(&m).diagonal);
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_torsion(&lat(1, &[vec![2]]), &lat(1, &[vec![1]])).unwrap();
        assert_eq!((q.divisors_u64(), q.free_rank), (vec![2], 0));
        let q = quotient_torsion(&lat(2, &[vec![2, 0]]), &IntegerLattice::standard(2)).unwrap();
        assert_eq!((q.divisors_u64(), q.free_rank), (vec![2], 1));
        assert_eq!(q.to_string(), "Z/2 + Z");
        let err = quotient_torsion(&lat(1, &[vec![1]]), &lat(1, &[vec![2]])).unwrap_err();
        assert_eq!(err, LatticeError::NotASublattice { generator: 0 });
    }

    #[test]
    fn index_examples() {
        let a = lat(2, &[vec![1, 1], vec![0, 2]]);
        assert_eq!(index(&a, &a).unwrap(), LatticeIndex::Finite(BigInt::one()));
        let small = lat(2, &[vec![1, 1]]);
        assert_eq!(index(&small, &a).unwrap(), LatticeIndex::Infinite);
        let sub = lat(2, &[vec![2, 0], vec![0, 6]]);
        assert_eq!(
            index(&sub, &IntegerLattice::standard(2)).unwrap(),
            LatticeIndex::Finite(BigInt::from(12))
        );
    }

    #[test]
    fn sum_and_intersection() {
        let a = lat(2, &[vec![2, 0], vec![0, 1]]);
        let b = lat(2, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(a.intersect(&b).unwrap(), lat(2, &[vec![2, 0], vec![0, 2]]));
        let a = lat(2, &[vec![2, 0]]);
        let b = lat(2, &[vec![0, 3]]);
        assert_eq!(a.sum(&b).unwrap(), lat(2, &[vec![2, 0], vec![0, 3]]));
        assert!(matches!(
            a.sum(&IntegerLattice::zero(3)),
            Err(LatticeError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn reduce_is_zero_exactly_on_members() {
        let l = lat(3, &[vec![2, 1, 0], vec![0, 3, 3]]);
        let v: Vec<BigInt> = big(&[vec![4, 5, 3]]).remove(0);
        assert!(l.contains(&v));
        assert!(l.reduce(&v).iter().all(Zero::is_zero));
        let w: Vec<BigInt> = big(&[vec![1, 0, 0]]).remove(0);
        assert!(!l.contains(&w));
    }

    #[test]
    fn display_of_divisors() {
        let e = ElementaryDivisors {
            divisors: vec![2.into(), 2.into(), 2.into(), 2.into(), 2.into()],
            free_rank: 0,
        };
        assert_eq!(e.to_string(), "(Z/2)^5");
        assert_eq!(ElementaryDivisors { divisors: vec![], free_rank: 3 }.to_string(), "Z^3");
        assert_eq!(ElementaryDivisors::trivial().to_string(), "0");
    }
}
