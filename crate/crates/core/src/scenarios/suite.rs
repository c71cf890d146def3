//! The regression suite: every scenario, bound, table and claim as a list of
//! pass/fail items.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::compute::{compute, Computation};
use crate::expr::parse_element;
use crate::filtration::{class_order, membership_suite, IndexIdentityStatus, Claim, ClaimKind, ClaimStatus, Filtration};
use crate::intlattice::{quotient_torsion, ElementaryDivisors, IntegerLattice};
use crate::kmodel::{Config, IndexFunction, QuadricCase, QuadricConfig};

use super::chern_tables::{c2z_divisible_by_four, chern_discrepancies, chern_displays, coefficient_sequences};
use super::claims::{four_conic_claims, sb_triple_claims, three_quadric_claims, SbTriple};
use super::fourconics::{four_conics_classify, four_conics_configs, FourConics};
use super::quadrics::{three_quadric_sample, two_quadric_configs, two_quadric_flag, QuadricFlag};
use super::{conic_bound_n, keysb_check, keysb_sweep, sb_bound_n, KeySbInstance, ScenarioError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    Pass,
    Fail,
    /// Reported but never counted as a failure.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteItem {
    pub id: String,
    pub reference: String,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub status: ItemStatus,
}

impl SuiteItem {
    fn new(id: impl Into<String>, reference: &str, claim: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> Self {
        SuiteItem {
            id: id.into(),
            reference: reference.to_string(),
            claim: claim.into(),
            expected: expected.into(),
            observed: observed.into(),
            status: if pass { ItemStatus::Pass } else { ItemStatus::Fail },
        }
    }

    fn info(mut self) -> Self {
        self.status = ItemStatus::Info;
        self
    }

    fn error(id: impl Into<String>, reference: &str, err: impl std::fmt::Display) -> Self {
        SuiteItem::new(id, reference, "computation completes", "a result", format!("error: {err}"), false)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn count(&self, status: ItemStatus) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(ItemStatus::Fail) == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "items": self.items,
            "summary": {
                "pass": self.count(ItemStatus::Pass),
                "fail": self.count(ItemStatus::Fail),
                "info": self.count(ItemStatus::Info),
            },
        })
    }

    /// Plain-text table grouped by reference tag.
    pub fn to_table(&self) -> String {
        let mut by_ref: BTreeMap<&str, Vec<&SuiteItem>> = BTreeMap::new();
        for item in &self.items {
            by_ref.entry(item.reference.as_str()).or_default().push(item);
        }
        let mut out = String::new();
        for (r, items) in by_ref {
            let _ = writeln!(out, "[{r}]");
            for i in items {
                let tag = match i.status {
                    ItemStatus::Pass => "PASS",
                    ItemStatus::Fail => "FAIL",
                    ItemStatus::Info => "INFO",
                };
                let _ = writeln!(out, "  {tag}  {}  {}: expected {}, observed {}", i.id, i.claim, i.expected, i.observed);
            }
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} informational",
            self.count(ItemStatus::Pass),
            self.count(ItemStatus::Fail),
            self.count(ItemStatus::Info)
        );
        out
    }
}

/// A named group of items, computed on demand.
pub struct SuiteGroup {
    pub name: &'static str,
    run: fn() -> Vec<SuiteItem>,
}

impl SuiteGroup {
    pub fn run(&self) -> Vec<SuiteItem> {
        (self.run)()
    }
}

/// What a scenario expects of its torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Expectation {
    /// `Gamma^{d/d+1}` torsion is exactly this group.
    Torsion { d: u32, divisors: Vec<u64> },
    /// Every quotient is torsion-free.
    AllTrivial,
    /// Torsion of `Gamma^{d/d+1}` is killed by `p` and has order at most `p^rank`.
    ElementaryAtMost { d: u32, p: u64, rank: usize },
    /// Torsion of `Gamma^{d/d+1}` has order at most `order`.
    OrderAtMost { d: u32, order: u64 },
}

struct Scenario {
    name: String,
    reference: &'static str,
    config: Config,
    expected: Vec<Expectation>,
    claims: Vec<Claim>,
}

fn group_str(t: &ElementaryDivisors) -> String {
    t.to_string()
}

fn torsion_of(divisors: &[u64]) -> ElementaryDivisors {
    ElementaryDivisors { divisors: divisors.iter().map(|&d| BigInt::from(d)).collect(), free_rank: 0 }
}

fn expectation_item(name: &str, reference: &str, c: &Computation, e: &Expectation) -> SuiteItem {
    let r = &c.report;
    match e {
        Expectation::Torsion { d, divisors } => {
            let got = r.torsion_only(*d);
            let want = torsion_of(divisors);
            SuiteItem::new(
                format!("{name}/torsion-{d}"),
                reference,
                format!("Gamma^{d}/{} torsion", d + 1),
                group_str(&want),
                group_str(&got),
                got == want,
            )
        }
        Expectation::AllTrivial => {
            let bad: Vec<String> = r
                .per_codim
                .iter()
                .filter(|q| !q.torsion.is_torsion_free())
                .map(|q| format!("d={}: {}", q.d, q.torsion.divisors.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            SuiteItem::new(
                format!("{name}/all-trivial"),
                reference,
                "every Gamma quotient is torsion-free",
                "0",
                if bad.is_empty() { "0".into() } else { bad.join("; ") },
                bad.is_empty(),
            )
        }
        Expectation::ElementaryAtMost { d, p, rank } => {
            let got = r.torsion_only(*d);
            let ok = got.divisors.iter().all(|x| x == &BigInt::from(*p)) && got.divisors.len() <= *rank;
            SuiteItem::new(
                format!("{name}/bound-{d}"),
                reference,
                format!("Gamma^{d}/{} torsion inside (Z/{p})^{rank}", d + 1),
                format!("subgroup of (Z/{p})^{rank}"),
                group_str(&got),
                ok,
            )
        }
        Expectation::OrderAtMost { d, order } => {
            let got = r.torsion_only(*d);
            SuiteItem::new(
                format!("{name}/order-{d}"),
                reference,
                format!("Gamma^{d}/{} torsion order", d + 1),
                format!("<= {order}"),
                group_str(&got),
                got.torsion_order() <= BigInt::from(*order),
            )
        }
    }
}

/// Checks that hold for every model: `d <= 2` agreement with the split side,
/// the index identity, nesting, and vanishing above the dimension.
fn structural_items(name: &str, reference: &str, c: &Computation) -> Vec<SuiteItem> {
    let mut out = Vec::new();
    out.push(SuiteItem::new(
        format!("{name}/gamma-two"),
        reference,
        "Gamma^d equals Gamma^d(X_E) ∩ K(X) for d <= 2",
        "equal",
        match &c.gamma_two {
            Ok(()) => "equal".to_string(),
            Err(e) => e.to_string(),
        },
        c.gamma_two.is_ok(),
    ));
    let identity = &c.report.index_identity;
    let item = SuiteItem::new(
        format!("{name}/index-identity"),
        reference,
        "|torsion| * [K(X_E) : K(X)] = prod alpha_d",
        "verified",
        identity.to_string(),
        *identity == IndexIdentityStatus::Verified,
    );
    out.push(if matches!(identity, IndexIdentityStatus::Skipped(_)) { item.info() } else { item });
    if let Some((fx, _)) = &c.filtrations {
        let nested = fx.is_nested();
        let top = fx.level(fx.dim() + 1).is_zero();
        out.push(SuiteItem::new(
            format!("{name}/nesting"),
            reference,
            "levels nested and Gamma^{dim+1} = 0",
            "true",
            format!("nested={nested} top-zero={top}"),
            nested && top,
        ));
    }
    out
}

fn claim_items(name: &str, fx: &Filtration, fe: &Filtration, claims: &[Claim]) -> Vec<SuiteItem> {
    if claims.is_empty() {
        return Vec::new();
    }
    match membership_suite(fx, fe, claims, &BTreeMap::new()) {
        Ok(results) => results
            .into_iter()
            .map(|r| {
                let observed = match r.status {
                    ClaimStatus::Holds => "holds".to_string(),
                    ClaimStatus::Fails => format!("fails (residue {})", r.witness),
                    ClaimStatus::Undetermined => format!("undetermined (residue {})", r.witness),
                };
                let item = SuiteItem::new(
                    format!("{name}/{}", r.claim.id),
                    &r.claim.reference,
                    format!("{} {}", r.claim.element, r.claim.kind),
                    "holds",
                    observed,
                    r.status == ClaimStatus::Holds,
                );
                if r.status == ClaimStatus::Undetermined {
                    item.info()
                } else {
                    item
                }
            })
            .collect(),
        Err(e) => vec![SuiteItem::error(format!("{name}/claims"), "claims", e)],
    }
}

fn run_scenario(s: &Scenario) -> Vec<SuiteItem> {
    let c = match compute(&s.config) {
        Ok(c) => c,
        Err(e) => return vec![SuiteItem::error(s.name.clone(), s.reference, e)],
    };
    let mut out: Vec<SuiteItem> = s.expected.iter().map(|e| expectation_item(&s.name, s.reference, &c, e)).collect();
    out.extend(structural_items(&s.name, s.reference, &c));
    if let Some((fx, fe)) = &c.filtrations {
        out.extend(claim_items(&s.name, fx, fe, &s.claims));
    }
    out
}

fn scenario(name: impl Into<String>, reference: &'static str, config: Config, expected: Vec<Expectation>) -> Scenario {
    Scenario { name: name.into(), reference, config, expected, claims: Vec::new() }
}

fn bounds_group() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    for (n, want) in [(2, 0), (3, 1), (4, 5), (5, 16)] {
        let got = conic_bound_n(n);
        out.push(SuiteItem::new(format!("bounds/conic-{n}"), "conics.bound", format!("conic bound exponent, n = {n}"), want.to_string(), format!("{got:?}"), got == Ok(want)));
    }
    for (n, want) in [(2, 1), (3, 8), (4, 27)] {
        let got = sb_bound_n(n);
        out.push(SuiteItem::new(format!("bounds/sb-{n}"), "sb.bound", format!("Severi-Brauer bound exponent, n = {n}"), want.to_string(), format!("{got:?}"), got == Ok(want)));
    }
    for n in [0, 1] {
        let ok = conic_bound_n(n).is_err() && sb_bound_n(n).is_err();
        out.push(SuiteItem::new(format!("bounds/domain-{n}"), "bounds", "bounds reject n < 2", "error", if ok { "error" } else { "value" }, ok));
    }
    out
}

fn two_conics_table(a: u64, b: u64, c: u64) -> IndexFunction {
    IndexFunction::conics(2, |t| match t {
        [0, 0] => 1,
        [1, 0] => a,
        [0, 1] => b,
        _ => c,
    })
    .expect("indices divide 4")
}

fn conics_group() -> Vec<SuiteItem> {
    let mut scenarios = Vec::new();
    for a in [1, 2] {
        for b in [1, 2] {
            for c in [1, 2, 4] {
                let idx = two_conics_table(a, b, c);
                if idx.admissibility().is_err() {
                    continue;
                }
                scenarios.push(scenario(format!("conics/two-{a}{b}{c}"), "conics.two", Config::Split(idx), vec![Expectation::AllTrivial]));
            }
        }
    }
    scenarios.push(scenario(
        "conics/three-generic",
        "conics.three",
        Config::Split(IndexFunction::generic_conics(3)),
        vec![Expectation::Torsion { d: 2, divisors: vec![2] }],
    ));
    for n in 3..=5usize {
        let rank = conic_bound_n(n as u32).expect("n >= 2") as usize;
        scenarios.push(scenario(
            format!("conics/generic-{n}"),
            "conics.bound",
            Config::Split(IndexFunction::generic_conics(n)),
            vec![Expectation::Torsion { d: 2, divisors: vec![2; rank] }],
        ));
    }
    scenarios.iter().flat_map(run_scenario).collect()
}

fn four_conics_named() -> Vec<(String, FourConics, Vec<Expectation>)> {
    let mut three_eight = FourConics::uniform(4, 8, 4);
    three_eight.h[3] = 4;
    vec![
        ("generic".into(), FourConics::uniform(2, 2, 2), vec![Expectation::Torsion { d: 2, divisors: vec![2; 5] }]),
        ("h4-d4".into(), FourConics::uniform(4, 4, 4), vec![Expectation::Torsion { d: 2, divisors: vec![2; 5] }]),
        (
            "h4-d8".into(),
            FourConics::uniform(4, 4, 8),
            vec![Expectation::Torsion { d: 2, divisors: vec![2; 4] }, Expectation::Torsion { d: 3, divisors: vec![2] }],
        ),
        ("h8-d8".into(), FourConics::uniform(4, 8, 8), vec![Expectation::Torsion { d: 2, divisors: vec![2] }]),
        ("three-h8-d4".into(), three_eight, vec![Expectation::Torsion { d: 2, divisors: vec![2; 2] }]),
        ("d16".into(), FourConics::uniform(4, 8, 16), vec![Expectation::AllTrivial]),
    ]
}

fn four_conics_group() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    for (name, cfg, expected) in four_conics_named() {
        let idx = match cfg.index_function() {
            Ok(i) => i,
            Err(e) => {
                out.push(SuiteItem::error(format!("four-conics/{name}"), "conics.four", e));
                continue;
            }
        };
        let mut s = scenario(format!("four-conics/{name}"), "conics.four", Config::Split(idx), expected);
        s.claims = four_conic_claims(&cfg);
        out.extend(run_scenario(&s));
    }
    out.extend(four_conics_enumeration_items());
    out
}

fn four_conics_enumeration_items() -> Vec<SuiteItem> {
    let (configs, rejected) = four_conics_configs();
    let reference = "conics.four.table";
    let mut inconsistent = Vec::new();
    let mut structural_failures = Vec::new();
    let mut claim_failures = Vec::new();
    let mut errors = Vec::new();
    let mut nontrivial = 0usize;
    let mut claims_checked = 0usize;
    let mut claims_undetermined = 0usize;
    let mut d16_bad = Vec::new();
    for cfg in &configs {
        let idx = cfg.index_function().expect("admissible configurations build");
        let v = match four_conics_classify(&idx) {
            Ok(v) => v,
            Err(e) => {
                errors.push(format!("{cfg}: {e}"));
                continue;
            }
        };
        if !v.torsion.is_torsion_free() {
            nontrivial += 1;
        }
        if !v.consistent {
            inconsistent.push(format!("{cfg} [{}] -> {}", v.rule, v.torsion));
        }
        if cfg.d == 16 && !v.torsion.is_torsion_free() {
            d16_bad.push(cfg.to_string());
        }
        let c = match compute(&Config::Split(idx)) {
            Ok(c) => c,
            Err(e) => {
                errors.push(format!("{cfg}: {e}"));
                continue;
            }
        };
        for item in structural_items(&cfg.to_string(), reference, &c) {
            if item.status == ItemStatus::Fail {
                structural_failures.push(format!("{}: {}", item.id, item.observed));
            }
        }
        if let Some((fx, fe)) = &c.filtrations {
            for item in claim_items(&cfg.to_string(), fx, fe, &four_conic_claims(cfg)) {
                claims_checked += 1;
                match item.status {
                    ItemStatus::Fail => claim_failures.push(format!("{}: {}", item.id, item.claim)),
                    ItemStatus::Info => claims_undetermined += 1,
                    ItemStatus::Pass => {}
                }
            }
        }
    }
    let summary = |v: &[String]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            let head: Vec<&str> = v.iter().take(5).map(String::as_str).collect();
            format!("{} (first: {})", v.len(), head.join("; "))
        }
    };
    vec![
        SuiteItem::new(
            "four-conics/enumeration/admissible",
            reference,
            "admissible (g, h, d) configurations",
            "listed",
            format!("{} admissible, {} rejected", configs.len(), rejected.len()),
            !configs.is_empty(),
        )
        .info(),
        SuiteItem::new(
            "four-conics/enumeration/errors",
            reference,
            "every admissible configuration computes",
            "none",
            summary(&errors),
            errors.is_empty(),
        ),
        SuiteItem::new(
            "four-conics/enumeration/consistency",
            reference,
            "computed nontrivial torsion only where the table says nontrivial",
            "none inconsistent",
            format!("{} nontrivial, inconsistent: {}", nontrivial, summary(&inconsistent)),
            inconsistent.is_empty(),
        ),
        SuiteItem::new(
            "four-conics/enumeration/d16",
            reference,
            "total index 16 gives trivial torsion",
            "none nontrivial",
            summary(&d16_bad),
            d16_bad.is_empty(),
        ),
        SuiteItem::new(
            "four-conics/enumeration/structure",
            reference,
            "structural checks on every configuration",
            "none failing",
            summary(&structural_failures),
            structural_failures.is_empty(),
        ),
        SuiteItem::new(
            "four-conics/enumeration/claims",
            "conics.four.membership",
            "membership claims on every configuration",
            "none failing",
            format!("{claims_checked} checked, {claims_undetermined} undetermined, failing: {}", summary(&claim_failures)),
            claim_failures.is_empty(),
        ),
    ]
}

/// The classes `3y_p^2 y_q^2`, `3y_1 y_2 y_3`, `3y_p^2 y_q y_r`, `3(y_1 y_2 y_3)^2`.
fn lower_bound_classes() -> Vec<&'static str> {
    vec![
        "3y1^2y2^2",
        "3y1^2y3^2",
        "3y2^2y3^2",
        "3y1y2y3",
        "3y1^2y2y3",
        "3y2^2y1y3",
        "3y3^2y1y2",
        "3y1^2y2^2y3^2",
    ]
}

fn sb_group() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    out.extend(run_scenario(&scenario(
        "sb/two-generic",
        "sb.two",
        Config::Split(IndexFunction::generic_sb_surfaces(2)),
        vec![Expectation::Torsion { d: 2, divisors: vec![3] }],
    )));
    let generic = SbTriple::generic();
    let mut three = scenario(
        "sb/three-generic",
        "sb.three",
        Config::Split(generic.index_function()),
        vec![Expectation::Torsion { d: 2, divisors: vec![3; 8] }, Expectation::Torsion { d: 3, divisors: vec![3; 2] }],
    );
    three.claims = sb_triple_claims(&generic);
    out.extend(run_scenario(&three));
    match compute(&three.config) {
        Ok(c) => out.extend(lower_bound_items(&c)),
        Err(e) => out.push(SuiteItem::error("sb/three-generic/classes", "sb.bound", e)),
    }
    for n in [2u32, 3] {
        let want = sb_bound_n(n).expect("n >= 2") as usize;
        match compute(&Config::Split(IndexFunction::generic_sb_surfaces(n as usize))) {
            Ok(c) => {
                let got = c.report.torsion_only(2);
                let rank = got.divisors.len();
                out.push(SuiteItem::new(
                    format!("sb/bound-{n}"),
                    "sb.bound",
                    format!("Gamma^2/3 torsion rank of {n} generic surfaces equals the bound"),
                    want.to_string(),
                    format!("{rank} ({got})"),
                    rank == want && got.divisors.iter().all(|d| d == &BigInt::from(3)),
                ));
            }
            Err(e) => out.push(SuiteItem::error(format!("sb/bound-{n}"), "sb.bound", e)),
        }
    }
    for (name, cfg) in [
        ("e9", SbTriple { e: [9, 3, 3], ..SbTriple::generic() }),
        ("f9", SbTriple { f: [9, 3, 3], ..SbTriple::generic() }),
        ("g9", SbTriple { g: [9, 3, 3], ..SbTriple::generic() }),
        ("d9", SbTriple { d: 9, ..SbTriple::generic() }),
    ] {
        let idx = cfg.index_function();
        if let Err(reason) = idx.admissibility() {
            out.push(
                SuiteItem::new(format!("sb/three-{name}"), "sb.three.membership", "configuration admissible", "admissible", reason, true).info(),
            );
            continue;
        }
        let mut s = scenario(format!("sb/three-{name}"), "sb.three.membership", Config::Split(idx), vec![]);
        s.claims = sb_triple_claims(&cfg);
        out.extend(run_scenario(&s));
    }
    out
}

fn lower_bound_items(c: &Computation) -> Vec<SuiteItem> {
    let Some((fx, _)) = &c.filtrations else {
        return vec![SuiteItem::error("sb/three-generic/classes", "sb.bound", "no filtration")];
    };
    let spec = fx.spec();
    let none = BTreeMap::new();
    let parse = |s: &str| parse_element(spec, s, &none).expect("fixed class parses");
    let classes = lower_bound_classes();
    let mut out = Vec::new();
    for (i, s) in classes.iter().enumerate() {
        let order = class_order(fx, 2, &parse(s), 9);
        out.push(SuiteItem::new(
            format!("sb/three-generic/class-{}", i + 1),
            "sb.bound",
            format!("{s} has order 3 in Gamma^2/3"),
            "3",
            format!("{order:?}"),
            order == Some(3),
        ));
    }
    let mut bad = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            for sign in ["+", "-"] {
                let e = format!("{} {sign} {}", classes[i], classes[j]);
                if fx.contains(3, &parse(&e)) {
                    bad.push(e);
                }
            }
        }
    }
    out.push(SuiteItem::new(
        "sb/three-generic/pairwise",
        "sb.bound",
        "sums and differences of two classes are outside Gamma^3",
        "none inside",
        if bad.is_empty() { "none inside".to_string() } else { bad.join("; ") },
        bad.is_empty(),
    ));
    let rows: Vec<Vec<BigInt>> = classes.iter().map(|s| parse(s).to_dense()).collect();
    let span = IntegerLattice::new(spec.ambient_rank(), rows).expect("matching lengths");
    let observed = fx
        .level(3)
        .sum(&span)
        .and_then(|sup| quotient_torsion(fx.level(3), &sup))
        .map(|q| q.to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    out.push(
        SuiteItem::new(
            "sb/three-generic/span",
            "sb.bound",
            "subgroup of Gamma^2/3 generated by the eight classes",
            "(Z/3)^8",
            observed,
            true,
        )
        .info(),
    );
    let a = "3y1^2y2^2y3 - 3y1^2y2y3^2";
    let b = "3y1^2y2^2y3^2 - 6y1^2y2^2y3";
    let claims = vec![
        Claim::new("a.in3", a, ClaimKind::InGamma(3), "sb.three"),
        Claim::new("b.in3", b, ClaimKind::InGamma(3), "sb.three"),
        Claim::new("a.out4", a, ClaimKind::NotInGamma(4), "sb.three"),
        Claim::new("b.out4", b, ClaimKind::NotInGamma(4), "sb.three"),
        Claim::new("a+b.out4", format!("{a} + {b}"), ClaimKind::NotInGamma(4), "sb.three"),
        Claim::new("a-b.out4", format!("{a} - ({b})"), ClaimKind::NotInGamma(4), "sb.three"),
    ];
    let (fx, fe) = c.filtrations.as_ref().expect("checked above");
    out.extend(claim_items("sb/three-generic", fx, fe, &claims));
    for (label, s) in [("a", a), ("b", b)] {
        let order = class_order(fx, 3, &parse(s), 9);
        out.push(SuiteItem::new(
            format!("sb/three-generic/order-{label}"),
            "sb.three",
            format!("{label} has order 3 in Gamma^3/4"),
            "3",
            format!("{order:?}"),
            order == Some(3),
        ));
    }
    out
}

fn two_quadrics_group() -> Vec<SuiteItem> {
    let (configs, rejected) = two_quadric_configs();
    let mut out = Vec::new();
    for cfg in configs {
        let (flag, rule) = two_quadric_flag(&cfg);
        let name = format!("two-quadrics/{}-{}{}{}-d{}", short_case(cfg.case), cfg.e[0], cfg.e[1], cfg.f[0], cfg.d);
        let expected = match flag {
            QuadricFlag::Trivial => Expectation::Torsion { d: 2, divisors: vec![] },
            QuadricFlag::Nontrivial => Expectation::Torsion { d: 2, divisors: vec![2] },
            QuadricFlag::AtMostTwo => Expectation::OrderAtMost { d: 2, order: 2 },
        };
        let reference = if flag == QuadricFlag::Nontrivial { "quadrics.two.lower-bound" } else { "quadrics.two" };
        let mut items = run_scenario(&scenario(name, reference, Config::Quadric(cfg), vec![expected]));
        if let Some(first) = items.first_mut() {
            first.claim = format!("{} ({rule})", first.claim);
        }
        out.extend(items);
    }
    out.push(
        SuiteItem::new(
            "two-quadrics/rejected",
            "quadrics.two",
            "inadmissible two-quadric configurations",
            "listed",
            rejected.iter().map(|(c, r)| format!("{}-{}{}{}-d{}: {r}", short_case(c.case), c.e[0], c.e[1], c.f[0], c.d)).collect::<Vec<_>>().join("; "),
            true,
        )
        .info(),
    );
    out
}

fn short_case(c: QuadricCase) -> &'static str {
    match c {
        QuadricCase::TwoQuadricsBiquadratic => "biquadratic",
        QuadricCase::TwoQuadricsSameField => "same-field",
        QuadricCase::TwoQuadricsOneTrivialDisc => "trivial-disc",
        QuadricCase::ThreeQuadricsSameDisc => "three",
    }
}

/// Short name of a three-quadric configuration.
pub fn three_quadric_name(c: &QuadricConfig) -> String {
    let j = |v: &[u64]| v.iter().map(u64::to_string).collect::<String>();
    format!("e{}-f{}-g{}-d{}", j(&c.e), j(&c.f), c.g.unwrap_or(1), c.d)
}

fn three_quadrics_group() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    for cfg in three_quadric_sample(24) {
        let mut s = scenario(
            format!("three-quadrics/{}", three_quadric_name(&cfg)),
            "quadrics.three",
            Config::Quadric(cfg.clone()),
            vec![Expectation::ElementaryAtMost { d: 2, p: 2, rank: 7 }],
        );
        s.claims = three_quadric_claims(&cfg);
        out.extend(run_scenario(&s));
    }
    out
}

fn keysb_group() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    for (p, m) in [(3, vec![1, 1]), (3, vec![2, 2]), (5, vec![1, 2, 3])] {
        let inst = KeySbInstance::new(p, m.clone()).expect("valid instance");
        let r = keysb_check(&inst);
        let tag = m.iter().map(u32::to_string).collect::<Vec<_>>().join("");
        out.push(SuiteItem::new(
            format!("keysb/p{p}-m{tag}"),
            "sb.keysb",
            format!("alternating sum for p = {p}, m = {m:?} divisible by p^2"),
            "divisible",
            format!("sum {}", r.sum),
            r.divisible,
        ));
    }
    for p in [3, 5] {
        for n in [2, 3] {
            let (observed, pass) = match keysb_sweep(p, n) {
                Ok(rows) => {
                    let bad: Vec<String> = rows.iter().filter(|(_, r)| !r.divisible).map(|(i, _)| format!("{:?}", i.m())).collect();
                    (format!("{} vectors, {} not divisible", rows.len(), bad.len()), bad.is_empty())
                }
                Err(e) => (format!("error: {e}"), false),
            };
            out.push(SuiteItem::new(format!("keysb/sweep-p{p}-n{n}"), "sb.keysb", format!("every m for p = {p}, n = {n}"), "all divisible", observed, pass));
        }
    }
    out
}

fn chern_group() -> Vec<SuiteItem> {
    let mut out: Vec<SuiteItem> = chern_displays()
        .into_iter()
        .map(|d| SuiteItem::new(format!("chern/{}", d.label.replace(' ', "")), "quadrics.two.chern", d.label, d.expected, d.computed.to_string(), d.matches))
        .collect();
    out.push(SuiteItem::new(
        "chern/c34(2z)-mod4",
        "quadrics.two.chern",
        "c3(2z) and c4(2z) are divisible by 4",
        "true",
        c2z_divisible_by_four().to_string(),
        c2z_divisible_by_four(),
    ));
    let want_prime = [66, 30, 30, 132, 132, 60, 264, 15];
    let want_plain = [12, 12, 12, 24, 24, 24, 48, 6];
    for with_z in [false, true] {
        let (p, b) = coefficient_sequences(with_z);
        let tag = if with_z { "n4" } else { "n3" };
        let show = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let wp: Vec<BigInt> = want_prime.iter().map(|&x| BigInt::from(x)).collect();
        let wb: Vec<BigInt> = want_plain.iter().map(|&x| BigInt::from(x)).collect();
        out.push(SuiteItem::new(format!("chern/beta-prime-{tag}"), "sb.chern", "coefficients of y_p^2 y_q y_r in c3(3x^a)", show(&wp), show(&p), p == wp));
        out.push(SuiteItem::new(format!("chern/beta-{tag}"), "sb.chern", "coefficients of y_p y_q y_r in c3(3x^a)", show(&wb), show(&b), b == wb));
    }
    for d in chern_discrepancies() {
        out.push(
            SuiteItem::new(
                format!("chern/exact-{}", d.label.replace(' ', "")),
                "conics.four.chern",
                format!("{} as displayed", d.label),
                d.expected,
                format!("{} ({})", d.computed, if d.matches { "agrees" } else { "differs" }),
                d.matches,
            )
            .info(),
        );
    }
    out
}

/// Groups in suite order.
pub fn suite_groups() -> Vec<SuiteGroup> {
    vec![
        SuiteGroup { name: "bounds", run: bounds_group },
        SuiteGroup { name: "conics", run: conics_group },
        SuiteGroup { name: "four-conics", run: four_conics_group },
        SuiteGroup { name: "sb", run: sb_group },
        SuiteGroup { name: "two-quadrics", run: two_quadrics_group },
        SuiteGroup { name: "three-quadrics", run: three_quadrics_group },
        SuiteGroup { name: "keysb", run: keysb_group },
        SuiteGroup { name: "chern", run: chern_group },
    ]
}

/// Runs the suite. `filter` is a glob over item ids (`group/...`); a group
/// runs when the part of the pattern before the first `/` matches its name.
pub fn regression_suite(filter: Option<&str>) -> Result<SuiteReport, ScenarioError> {
    let (group_pat, item_pat) = match filter {
        None => (None, None),
        Some(f) => {
            let head = f.split('/').next().unwrap_or(f);
            let g = glob::Pattern::new(head).map_err(|e| ScenarioError::Filter(e.to_string()))?;
            let i = glob::Pattern::new(f).map_err(|e| ScenarioError::Filter(e.to_string()))?;
            (Some(g), Some(i))
        }
    };
    let mut items = Vec::new();
    for g in suite_groups() {
        if group_pat.as_ref().is_some_and(|p| !p.matches(g.name)) {
            continue;
        }
        let whole_group = filter.is_some_and(|f| !f.contains('/'));
        items.extend(g.run().into_iter().filter(|it| whole_group || item_pat.as_ref().map_or(true, |p| p.matches(&it.id))));
    }
    Ok(SuiteReport { items })
}
