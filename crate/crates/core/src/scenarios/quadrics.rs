//! Enumeration of quadric-surface configurations and the expected-torsion
//! flags for pairs of quadrics.

use std::fmt;

use crate::kmodel::{QuadricCase, QuadricConfig};

/// What the case analysis predicts for `Gamma^{2/3}` torsion of two quadrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricFlag {
    Trivial,
    /// Exactly `Z/2`.
    Nontrivial,
    /// Order at most 2.
    AtMostTwo,
}

impl fmt::Display for QuadricFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadricFlag::Trivial => "trivial",
            QuadricFlag::Nontrivial => "Z/2",
            QuadricFlag::AtMostTwo => "order <= 2",
        })
    }
}

/// Flag and the rule behind it. Only meaningful for two-quadric cases.
pub fn two_quadric_flag(cfg: &QuadricConfig) -> (QuadricFlag, &'static str) {
    let (e1, e2) = (cfg.e[0], cfg.e[1]);
    let f = cfg.f[0];
    let d = cfg.d;
    match cfg.case {
        QuadricCase::TwoQuadricsBiquadratic => {
            if e1 == 1 && e2 == 1 {
                (QuadricFlag::Trivial, "both algebras split over L")
            } else if f == 4 {
                (QuadricFlag::Trivial, "f = 4")
            } else if f == 2 && d == 2 {
                (QuadricFlag::Trivial, "f = d = 2")
            } else if e1 == 2 && e2 == 2 && f == 2 && d == 4 {
                (QuadricFlag::Nontrivial, "e1 = e2 = f = 2, d = 4")
            } else {
                (QuadricFlag::AtMostTwo, "general bound")
            }
        }
        QuadricCase::TwoQuadricsSameField => (QuadricFlag::Trivial, "same discriminant field"),
        QuadricCase::TwoQuadricsOneTrivialDisc => {
            if f == 1 {
                (QuadricFlag::Trivial, "f = 1")
            } else if f == 4 {
                (QuadricFlag::Trivial, "f = 4")
            } else if d == 2 {
                (QuadricFlag::Trivial, "f = d = 2")
            } else {
                (QuadricFlag::AtMostTwo, "general bound")
            }
        }
        QuadricCase::ThreeQuadricsSameDisc => (QuadricFlag::AtMostTwo, "not a two-quadric case"),
    }
}

/// Every two-quadric configuration with `e in {1,2}`, `f in {1,2,4}`,
/// `d in {2,4,8}`: admissible ones, then rejected ones with the reason.
pub fn two_quadric_configs() -> (Vec<QuadricConfig>, Vec<(QuadricConfig, String)>) {
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for case in QuadricCase::ALL.into_iter().filter(|c| c.is_two()) {
        for e1 in [1, 2] {
            for e2 in [1, 2] {
                for f in [1, 2, 4] {
                    for d in [2, 4, 8] {
                        let cfg = QuadricConfig::two(case, e1, e2, f, d);
                        match cfg.admissibility() {
                            Ok(()) => ok.push(cfg),
                            Err(e) => rejected.push((cfg, e)),
                        }
                    }
                }
            }
        }
    }
    (ok, rejected)
}

/// Every three-quadric configuration with `e in {1,2}^3`, `f in {1,2,4}^3`,
/// `g in {1,2,4,8}`, `d in {2,4,8}`.
pub fn three_quadric_configs() -> (Vec<QuadricConfig>, Vec<(QuadricConfig, String)>) {
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for ecode in 0..8usize {
        let e: [u64; 3] = std::array::from_fn(|k| [1, 2][ecode >> (2 - k) & 1]);
        for fcode in 0..27usize {
            let f: [u64; 3] = std::array::from_fn(|k| [1, 2, 4][fcode / 3usize.pow(2 - k as u32) % 3]);
            for g in [1, 2, 4, 8] {
                for d in [2, 4, 8] {
                    let cfg = QuadricConfig::three(e, f, g, d);
                    match cfg.admissibility() {
                        Ok(()) => ok.push(cfg),
                        Err(e) => rejected.push((cfg, e)),
                    }
                }
            }
        }
    }
    (ok, rejected)
}

/// A deterministic spread of `count` admissible three-quadric configurations:
/// every `k`-th entry of the enumeration, always including the generic one.
pub fn three_quadric_sample(count: usize) -> Vec<QuadricConfig> {
    let (all, _) = three_quadric_configs();
    let generic = QuadricConfig::three([2, 2, 2], [4, 4, 4], 8, 8);
    let mut out = vec![generic.clone()];
    if count <= 1 || all.is_empty() {
        out.truncate(count);
        return out;
    }
    let step = (all.len() / (count - 1)).max(1);
    out.extend(all.into_iter().step_by(step).filter(|c| *c != generic).take(count - 1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_quadric_enumeration() {
        let (ok, rejected) = two_quadric_configs();
        assert_eq!(ok.len() + rejected.len(), 3 * 2 * 2 * 3 * 3);
        assert!(ok.contains(&QuadricConfig::two(QuadricCase::TwoQuadricsBiquadratic, 2, 2, 2, 4)));
        assert!(rejected.iter().all(|(c, _)| c.admissibility().is_err()));
    }

    #[test]
    fn flags() {
        let bq = |e1, e2, f, d| two_quadric_flag(&QuadricConfig::two(QuadricCase::TwoQuadricsBiquadratic, e1, e2, f, d)).0;
        assert_eq!(bq(2, 2, 2, 4), QuadricFlag::Nontrivial);
        assert_eq!(bq(2, 2, 4, 4), QuadricFlag::Trivial);
        assert_eq!(bq(2, 2, 2, 2), QuadricFlag::Trivial);
        assert_eq!(bq(2, 2, 1, 2), QuadricFlag::AtMostTwo);
    }

    #[test]
    fn three_quadric_sample_is_deterministic() {
        let a = three_quadric_sample(24);
        assert_eq!(a.len(), 24);
        assert_eq!(a, three_quadric_sample(24));
        assert!(a.iter().all(|c| c.admissibility().is_ok()));
    }
}
