//! Products of four conics: index data `(g_ij, h_i, d)`, the case table that
//! predicts trivial codimension 2 torsion, and its comparison with the
//! computed `Gamma^{2/3}` torsion.

use std::fmt;

use crate::compute::compute;
use crate::intlattice::ElementaryDivisors;
use crate::kmodel::{Config, IndexFunction};

use super::ScenarioError;

/// Pairs in the order `12, 13, 14, 23, 24, 34` (0-based factors).
pub(crate) const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
/// The three ways to split `{1,2,3,4}` into two pairs, as indices into [`PAIRS`].
const SPLITS: [[usize; 2]; 3] = [[0, 5], [1, 4], [2, 3]];

fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("distinct factors")
}

/// Pairs avoiding factor `i`.
fn avoiding(i: usize) -> Vec<usize> {
    (0..6).filter(|&k| PAIRS[k].0 != i && PAIRS[k].1 != i).collect()
}

/// Index data of four quaternion algebras of index 2: `g` for pairs, `h[i]`
/// for the triple missing factor `i`, `d` for all four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FourConics {
    pub g: [u64; 6],
    pub h: [u64; 4],
    pub d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    Nontrivial,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "trivial",
            Verdict::Nontrivial => "nontrivial",
        })
    }
}

impl fmt::Display for FourConics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.g.iter().map(u64::to_string).collect();
        let h: Vec<String> = self.h.iter().map(u64::to_string).collect();
        write!(f, "g=({}) h=({}) d={}", g.join(","), h.join(","), self.d)
    }
}

impl FourConics {
    pub fn uniform(g: u64, h: u64, d: u64) -> Self {
        FourConics { g: [g; 6], h: [h; 4], d }
    }

    pub fn index_function(&self) -> Result<IndexFunction, ScenarioError> {
        IndexFunction::conics(4, |t| {
            let ones: Vec<usize> = (0..4).filter(|&i| t[i] == 1).collect();
            match ones.len() {
                0 => 1,
                1 => 2,
                2 => self.g[pair_index(ones[0], ones[1])],
                3 => self.h[(0..4).find(|i| !ones.contains(i)).expect("one factor missing")],
                _ => self.d,
            }
        })
        .map_err(|e| ScenarioError::Inadmissible(e.to_string()))
    }

    /// Reads `(g, h, d)` back from a table of four conics with every single
    /// index 2.
    pub fn from_index(idx: &IndexFunction) -> Result<Self, ScenarioError> {
        if idx.degrees() != [2, 2, 2, 2] {
            return Err(ScenarioError::Inadmissible("four conics need degrees (2,2,2,2)".into()));
        }
        let at = |ones: &[usize]| {
            let mut t = vec![0; 4];
            for &i in ones {
                t[i] = 1;
            }
            idx.get(&t)
        };
        if let Some(i) = (0..4).find(|&i| at(&[i]) != 2) {
            return Err(ScenarioError::Inadmissible(format!("factor {} does not have index 2", i + 1)));
        }
        let g = PAIRS.map(|(i, j)| at(&[i, j]));
        let h = [0, 1, 2, 3].map(|i| at(&(0..4).filter(|&k| k != i).collect::<Vec<_>>()));
        Ok(FourConics { g, h, d: at(&[0, 1, 2, 3]) })
    }

    fn h_count(&self, m: u64) -> usize {
        self.h.iter().filter(|&&x| x == m).count()
    }

    /// `G`: pairs of index 2.
    fn g_set(&self) -> Vec<usize> {
        (0..6).filter(|&k| self.g[k] == 2).collect()
    }

    fn g_meets(&self, set: &[usize]) -> usize {
        set.iter().filter(|&&k| self.g[k] == 2).count()
    }

    /// `G_n`: pairs of `G` avoiding every factor `i` with `h_i = n`.
    fn g_restricted(&self, n: u64) -> usize {
        self.g_set()
            .into_iter()
            .filter(|&k| (0..4).filter(|&i| self.h[i] == n).all(|i| PAIRS[k].0 != i && PAIRS[k].1 != i))
            .count()
    }

    /// `H_2'`: factors with `h_i = 2` whose three avoiding pairs all lie in `G`.
    fn h2_prime(&self) -> usize {
        (0..4).filter(|&i| self.h[i] == 2 && self.g_meets(&avoiding(i)) == 3).count()
    }

    /// The case table: returns the verdict and the rule that produced it.
    pub fn table_verdict(&self) -> (Verdict, &'static str) {
        use Verdict::*;
        let (h2, h4, h8) = (self.h_count(2), self.h_count(4), self.h_count(8));
        let g = self.g_set().len();
        let d = self.d;
        let split_pair = SPLITS.iter().any(|s| self.g_meets(s) == 2);
        let full_triangle = (0..4).any(|i| self.g_meets(&avoiding(i)) == 3);
        let h2p = self.h2_prime();
        let pick = |trivial: bool, rule: &'static str| (if trivial { Trivial } else { Nontrivial }, rule);
        if d == 16 {
            return (Trivial, "d = 16");
        }
        if h8 >= 3 {
            return pick(h2 == 1 && h8 == 3, "|H8| >= 3: trivial iff |H2| = 1, |H8| = 3");
        }
        if h8 == 2 {
            let t = h2 == 2 || (g == 1 && h2 == 1) || (g == 1 && h2 == 0 && d == 8);
            return pick(t, "|H8| = 2");
        }
        if h8 == 1 {
            let t = (g >= 2 && h2 == 0 && d == 8)
                || (h2 * h4 == 2 && g >= 2)
                || (h2 * h4 == 2 && g == 1 && self.g_restricted(2) == 1)
                || h2 == 3;
            return pick(t, "|H8| = 1");
        }
        match (h2, h4) {
            (0, 4) => {
                let t = (d == 2 && g != 6 && split_pair) || (d == 4 && split_pair) || (d == 8 && full_triangle);
                pick(t, "|H4| = 4")
            }
            (4, 0) => (Nontrivial, "|H2| = 4"),
            (3, 1) => {
                let t = (g == 2 && split_pair) || (g == 3 && split_pair && d == 4);
                pick(t, "|H2| = 3, |H4| = 1")
            }
            (2, 2) => {
                let t = (g == 2 && split_pair) || (g == 3 && full_triangle) || (g == 4 && h2p == 0 && d == 4);
                pick(t, "|H2| = 2, |H4| = 2")
            }
            _ => {
                let t = ((2..=3).contains(&g) && split_pair) || (g == 4 && h2p == 0) || (g == 5 && h2p == 0 && d == 4);
                pick(t, "|H2| = 1, |H4| = 3")
            }
        }
    }
}

/// The table verdict next to the computed torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourConicsVerdict {
    pub config: FourConics,
    pub table: Verdict,
    pub rule: &'static str,
    /// Torsion of `Gamma^{2/3}`.
    pub torsion: ElementaryDivisors,
    /// Torsion of `Gamma^{3/4}`.
    pub torsion_three: ElementaryDivisors,
    /// False exactly when the table says trivial but the computed torsion is not.
    pub consistent: bool,
}

pub fn four_conics_classify(idx: &IndexFunction) -> Result<FourConicsVerdict, ScenarioError> {
    let config = FourConics::from_index(idx)?;
    idx.admissibility().map_err(ScenarioError::Inadmissible)?;
    let (table, rule) = config.table_verdict();
    let c = compute(&Config::Split(idx.clone()))?;
    let torsion = c.report.torsion_only(2);
    let torsion_three = c.report.torsion_only(3);
    let consistent = table == Verdict::Nontrivial || torsion.divisors.is_empty();
    Ok(FourConicsVerdict { config, table, rule, torsion, torsion_three, consistent })
}

/// Every `(g, h, d)` with `g in {2,4}`, `h in {2,4,8}`, `d in {2,4,8,16}`,
/// split into admissible configurations and rejected ones with the reason.
pub fn four_conics_configs() -> (Vec<FourConics>, Vec<(FourConics, String)>) {
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for gbits in 0..64u32 {
        let g: [u64; 6] = std::array::from_fn(|k| if gbits >> (5 - k) & 1 == 1 { 4 } else { 2 });
        for hcode in 0..81u32 {
            let h: [u64; 4] = std::array::from_fn(|i| [2, 4, 8][(hcode / 3u32.pow(3 - i as u32) % 3) as usize]);
            for d in [2, 4, 8, 16] {
                let cfg = FourConics { g, h, d };
                match cfg.index_function().and_then(|idx| idx.admissibility().map_err(ScenarioError::Inadmissible)) {
                    Ok(()) => ok.push(cfg),
                    Err(e) => rejected.push((cfg, e.to_string())),
                }
            }
        }
    }
    (ok, rejected)
}
