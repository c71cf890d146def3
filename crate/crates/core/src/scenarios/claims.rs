//! Membership-claim tables. Each generator takes index data and returns only
//! the claims whose hypotheses hold for it.

use std::collections::BTreeSet;

use crate::filtration::{Claim, ClaimKind};
use crate::kmodel::{IndexFunction, QuadricConfig};

use super::fourconics::{FourConics, PAIRS};

/// `y` monomial on 1-based variables, digits sorted: `y(&[3, 1]) == "y13"`.
fn y(vars: &[usize]) -> String {
    let mut v = vars.to_vec();
    v.sort_unstable();
    format!("y{}", v.iter().map(usize::to_string).collect::<String>())
}

/// Builder that drops repeated `(element, kind)` pairs.
struct Table {
    prefix: &'static str,
    reference: &'static str,
    seen: BTreeSet<(String, String)>,
    claims: Vec<Claim>,
}

impl Table {
    fn new(prefix: &'static str, reference: &'static str) -> Self {
        Table { prefix, reference, seen: BTreeSet::new(), claims: Vec::new() }
    }

    fn push(&mut self, tag: &str, element: String, kind: ClaimKind) -> Option<&mut Claim> {
        if !self.seen.insert((element.clone(), kind.to_string())) {
            return None;
        }
        let id = format!("{}.{}.{}", self.prefix, tag, self.claims.len() + 1);
        self.claims.push(Claim::new(id, element, kind, self.reference));
        self.claims.last_mut()
    }
}

/// Three Severi-Brauer surfaces: `e[i] = ind(A_j A_k)`, `f[i] = ind(A_j^2 A_k)`,
/// `g[i] = ind(A_i^2 A_j A_k)`, `d = ind(A_1 A_2 A_3)`, with `{i,j,k} = {1,2,3}`
/// and every single index 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SbTriple {
    pub e: [u64; 3],
    pub f: [u64; 3],
    pub g: [u64; 3],
    pub d: u64,
}

impl SbTriple {
    pub fn generic() -> Self {
        SbTriple { e: [3; 3], f: [3; 3], g: [3; 3], d: 3 }
    }

    pub fn index_function(&self) -> IndexFunction {
        IndexFunction::from_fn(vec![3, 3, 3], |t| {
            let nz: Vec<usize> = (0..3).filter(|&i| t[i] != 0).collect();
            match nz.len() {
                0 => 1,
                1 => 3,
                2 => {
                    let missing = (0..3).find(|i| !nz.contains(i)).expect("one zero");
                    if t[nz[0]] == t[nz[1]] {
                        self.e[missing]
                    } else {
                        self.f[missing]
                    }
                }
                _ => {
                    if t[0] == t[1] && t[1] == t[2] {
                        self.d
                    } else {
                        let odd = (0..3).find(|&i| t[(i + 1) % 3] == t[(i + 2) % 3]).expect("two agree");
                        self.g[odd]
                    }
                }
            }
        })
        .expect("indices divide 27")
    }
}

/// Claims about `3y`-type classes for three Severi-Brauer surfaces.
pub fn sb_triple_claims(c: &SbTriple) -> Vec<Claim> {
    let mut t = Table::new("sb3", "sb.three.membership");
    for m in 1..=3 {
        t.push("square", format!("3y{m}^2"), ClaimKind::InGamma(2));
    }
    let all_pairs_sq = "y1^2y2 + y1^2y3 + y2^2y1 + y2^2y3 + y3^2y1 + y3^2y2";
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3 + 1, (i + 2) % 3 + 1);
        let i1 = i + 1;
        if c.e[i] == 3 {
            t.push("e", format!("3y{j}y{k}"), ClaimKind::InGamma(2));
            t.push("e", format!("3y{j}^2y{k} + 3y{j}y{k}^2"), ClaimKind::InGammaQuotient(3));
        }
        if c.f[i] == 3 {
            t.push("f", format!("3y{j}^2y{k} - 3y{j}y{k}^2"), ClaimKind::InGammaQuotient(3));
        }
        if c.g[i] == 3 {
            for other in [j, k] {
                t.push(
                    "g",
                    format!("3({all_pairs_sq}) + 3(y{i1}y{other}^2 + y{i1}^2y{other}) + 12y123"),
                    ClaimKind::InGammaQuotient(3),
                );
            }
            t.push("g", format!("3(y{j}y{k} - y{i1}y{k} - y{i1}y{j})"), ClaimKind::InImageRes(2));
        }
    }
    if c.d == 3 {
        t.push("d", "3(y12 + y13 + y23)".into(), ClaimKind::InImageRes(2));
        t.push("d", format!("6y123 + 3({all_pairs_sq})"), ClaimKind::InGammaQuotient(3));
        t.push("d", "9y1^2y2^2y3^2".into(), ClaimKind::InGamma(6));
    }
    let all_three = c.e.iter().chain(&c.f).chain(&c.g).all(|&x| x == 3);
    if all_three {
        t.push("all", "3y1^2y2^2y3 - 3y1^2y2y3^2".into(), ClaimKind::InGamma(3));
        if c.d == 3 {
            t.push("all", "3y1^2y2^2y3^2 - 6y1^2y2^2y3".into(), ClaimKind::InGamma(3));
        }
    }
    t.claims
}

/// Claims in codimensions 2, 3, 4 for four conics.
pub fn four_conic_claims(c: &FourConics) -> Vec<Claim> {
    let mut t = Table::new("c4", "conics.four.membership");
    let triples: Vec<[usize; 3]> = vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];
    let sum_pairs = "2(y12 + y13 + y14 + y23 + y24 + y34)";
    let sum_triples = "y123 + y124 + y134 + y234";
    let g_at = |i: usize, j: usize| {
        let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        c.g[PAIRS.iter().position(|&p| p == (a, b)).expect("pair")]
    };
    let gset: Vec<(usize, usize)> = PAIRS.iter().filter(|&&(a, b)| g_at(a + 1, b + 1) == 2).map(|&(a, b)| (a + 1, b + 1)).collect();
    let splits = [[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)]];
    let split_pair = splits.iter().any(|s| s.iter().all(|&(a, b)| g_at(a, b) == 2));
    let full_triangle = (1..=4).any(|i| {
        let rest: Vec<usize> = (1..=4).filter(|&k| k != i).collect();
        g_at(rest[0], rest[1]) == 2 && g_at(rest[0], rest[2]) == 2 && g_at(rest[1], rest[2]) == 2
    });
    let h2 = c.h.iter().filter(|&&x| x == 2).count();

    if c.d == 2 {
        t.push("d2", sum_pairs.into(), ClaimKind::InImageRes(2));
    }
    for l in 1..=4 {
        if c.h[l - 1] != 2 {
            continue;
        }
        let [i, j, k] = <[usize; 3]>::try_from((1..=4).filter(|&x| x != l).collect::<Vec<_>>()).expect("three");
        t.push("h2", format!("2({} + {} + {})", y(&[i, j]), y(&[i, k]), y(&[j, k])), ClaimKind::InImageRes(2));
        t.push(
            "h2",
            format!("2({} + {} + {} + {})", y(&[i, j, k]), y(&[i, j]), y(&[i, k]), y(&[j, k])),
            ClaimKind::InGamma(2),
        );
        t.push("h2", format!("4{}", y(&[i, j, k])), ClaimKind::InImageRes(3));
        t.push("h2", format!("-4{} + 4({sum_triples})", y(&[i, j, k])), ClaimKind::InImageRes(3));
    }
    for &(i, j) in &gset {
        for k in (1..=4).filter(|&k| k != i && k != j) {
            t.push("g2", format!("4{}", y(&[i, j, k])), ClaimKind::InImageRes(3));
        }
    }
    for i in 1..=4 {
        let others: Vec<usize> = (1..=4).filter(|&k| k != i).collect();
        for a in 0..3 {
            for b in a + 1..3 {
                let (j, k) = (others[a], others[b]);
                if g_at(i, j) == 2 && g_at(i, k) == 2 {
                    let l = others[3 - a - b];
                    for tri in [[i, j, k], [i, j, l], [i, k, l]] {
                        t.push("g2pair", format!("4{}", y(&tri)), ClaimKind::InImageRes(3));
                    }
                }
            }
        }
    }
    if c.d == 2 || gset.len() >= 4 || split_pair || full_triangle {
        for tri in &triples {
            t.push("all3", format!("4{}", y(tri)), ClaimKind::InImageRes(3));
        }
    }
    if c.d == 2 || c.d == 4 || !gset.is_empty() || h2 >= 1 {
        t.push("top", "8y1234".into(), ClaimKind::InGamma(4));
    }
    if split_pair {
        t.push("top", "4y1234".into(), ClaimKind::InGamma(4));
    }
    t.claims
}

/// Claims for three quadric surfaces with the same discriminant. Variables
/// `1..6`, pairs `12, 34, 56`; `e[k]`, `f[k]` belong to the `k`-th pair.
pub fn three_quadric_claims(c: &QuadricConfig) -> Vec<Claim> {
    let mut t = Table::new("q3", "quadrics.three.membership");
    let pairs = [[1usize, 2], [3, 4], [5, 6]];
    let g = c.g.unwrap_or(1);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for [a, b, cc] in perms {
        for flips in 0..8u32 {
            let orient = |k: usize, bit: u32| {
                let [x, w] = pairs[k];
                if flips >> bit & 1 == 1 {
                    (w, x)
                } else {
                    (x, w)
                }
            };
            let (p, q) = orient(a, 0);
            let (r, s) = orient(b, 1);
            let (tt, u) = orient(cc, 2);
            if c.f[a] == c.e[b] {
                let e_rs = c.e[b];
                t.push("f=e", format!("{e_rs}{}", y(&[r, s, tt, u])), ClaimKind::InTopological(3));
                t.push("f=e", format!("{e_rs}{}z{}{}", y(&[r, s, tt, u]), p.min(q), p.max(q)), ClaimKind::InTopological(4));
                t.push("f=e", format!("{}y123456", c.e[a] * e_rs), ClaimKind::InTopological(5));
            }
            if g == 1 {
                t.push(
                    "g1",
                    format!(
                        "({} + {}) + ({} + {}) + ({} + {}) - ({} + {} + {})",
                        y(&[p, r]), y(&[q, s]), y(&[p, tt]), y(&[q, u]), y(&[r, tt]), y(&[s, u]),
                        y(&[p, q]), y(&[r, s]), y(&[tt, u])
                    ),
                    ClaimKind::InTopologicalImage(2),
                );
                t.push(
                    "g1",
                    format!(
                        "(y{r} + y{s})({} + {} - {} - {}) + {}(y{p} + y{q} + y{tt} + y{u})",
                        y(&[p, tt]), y(&[q, u]), y(&[p, q]), y(&[tt, u]), y(&[r, s])
                    ),
                    ClaimKind::InTopologicalImage(3),
                );
                t.push(
                    "g1",
                    format!(
                        "(y{p} + y{q})({} + {} - {} - {}) + {}(y{r} + y{s} + y{tt} + y{u})",
                        y(&[r, tt]), y(&[s, u]), y(&[r, s]), y(&[tt, u]), y(&[p, q])
                    ),
                    ClaimKind::InTopologicalImage(3),
                );
            }
            if c.f[cc] == 1 {
                t.push(
                    "f1",
                    format!("{} + {} - ({} + {})", y(&[p, r]), y(&[q, s]), y(&[p, q]), y(&[r, s])),
                    ClaimKind::InTopological(2),
                );
                t.push(
                    "f1",
                    format!("{}(y{r} + y{s}) - {}(y{p} + y{q})", y(&[p, q]), y(&[r, s])),
                    ClaimKind::InTopologicalImage(3),
                );
                t.push(
                    "f1",
                    format!(
                        "{}({} + {} + {} + {}) - {}({} + {} + {} + {})",
                        y(&[p, q]), y(&[r, tt]), y(&[s, u]), y(&[r, u]), y(&[s, tt]),
                        y(&[r, s]), y(&[p, tt]), y(&[q, u]), y(&[p, u]), y(&[q, tt])
                    ),
                    ClaimKind::InTopologicalImage(4),
                );
                if let Some(claim) = t.push(
                    "f1",
                    format!(
                        "{} + {} + {}({} + {}) + {}({} + {})",
                        y(&[p, q, tt, u]), y(&[r, s, tt, u]), y(&[tt, u]), y(&[p, r]), y(&[q, s]),
                        y(&[tt, u]), y(&[p, s]), y(&[q, r])
                    ),
                    ClaimKind::InTopologicalImage(4),
                ) {
                    claim.assumed_witness = true;
                }
            }
        }
    }
    t.claims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmodel::QuadricConfig;

    #[test]
    fn sb_triple_table_matches_its_definition() {
        let c = SbTriple { e: [9, 3, 3], f: [3, 9, 3], g: [3, 3, 9], d: 3 };
        let idx = c.index_function();
        assert_eq!(idx.get(&[0, 1, 1]), 9);
        assert_eq!(idx.get(&[0, 2, 2]), 9);
        assert_eq!(idx.get(&[1, 0, 2]), 9);
        assert_eq!(idx.get(&[1, 1, 2]), 9);
        assert_eq!(idx.get(&[2, 2, 1]), 9);
        assert_eq!(idx.get(&[1, 1, 1]), 3);
        assert_eq!(idx.get(&[2, 0, 0]), 3);
    }

    #[test]
    fn hypotheses_gate_claims() {
        let generic = sb_triple_claims(&SbTriple::generic());
        let weaker = sb_triple_claims(&SbTriple { e: [9; 3], f: [9; 3], g: [9; 3], d: 9 });
        assert_eq!(weaker.len(), 3);
        assert!(generic.len() > 15);
        let ids: BTreeSet<&str> = generic.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), generic.len());
    }

    #[test]
    fn quadric_claims_mark_assumed_witnesses() {
        let c = QuadricConfig::three([2, 2, 2], [2, 2, 1], 2, 4);
        let claims = three_quadric_claims(&c);
        assert!(claims.iter().any(|c| c.assumed_witness));
        assert!(claims.iter().all(|c| c.id.starts_with("q3.")));
    }

    #[test]
    fn four_conic_claims_follow_the_data() {
        let generic = four_conic_claims(&FourConics::uniform(2, 2, 2));
        assert!(generic.iter().any(|c| c.element == "8y1234"));
        assert!(generic.iter().any(|c| c.element == "4y1234"));
        let top = four_conic_claims(&FourConics::uniform(4, 8, 8));
        assert!(top.is_empty());
    }
}
