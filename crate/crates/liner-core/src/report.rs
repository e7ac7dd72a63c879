//! One-stop structural report over a liner: size summary, counting profile,
//! a battery of axiom checks, the parallelity profile, and the triple-system
//! algebra section, rendered as JSON or text from the same data. Reports are
//! deterministic by construction except for the per-item timings, which the
//! `deterministic` switch zeroes.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::axioms::{
    has_k_exchange, is_k_ranked, is_modular, is_ranked, is_weakly_modular, k_regularity,
    plane_characterization_check, regularity, submodularity_check, AxiomId, AxiomVerdict,
    CheckConfig, RegularityGrade, WitnessItem,
};
use crate::counting::{
    balance_profile, projective_plane_count_check, steiner_projective_count_check, BalanceProfile,
    RankBalance,
};
use crate::error::Result;
use crate::hull::{rank, Flat};
use crate::model::Liner;
use crate::parallels::{
    first_order_axiom, is_boolean, is_hyper_bolyai, parallel_postulate, parallelity_profile,
    spread_check, FirstOrderAxiom, ParallelityProfile,
};
use crate::pointset::PointSet;
use crate::steiner::{
    algebra_flags, flat_subloop_agreement, is_hall, is_steiner, midpoint_magma,
    steiner_projective_identity, AlgebraFlags,
};

/// Run the checker that owns `axiom` and return its verdict. The flat-subloop
/// agreement runs at base point 0; the spread check targets the whole point
/// set.
pub fn check_axiom(liner: &Liner, axiom: &AxiomId, cfg: &CheckConfig) -> Result<AxiomVerdict> {
    match axiom {
        AxiomId::Exchange(k) => has_k_exchange(liner, *k, cfg),
        AxiomId::Ranked(None) => is_ranked(liner, cfg),
        AxiomId::Ranked(Some(k)) => is_k_ranked(liner, *k, cfg),
        AxiomId::StronglyRegular => regularity(liner, RegularityGrade::StronglyRegular, cfg),
        AxiomId::Regular => regularity(liner, RegularityGrade::Regular, cfg),
        AxiomId::Proregular => regularity(liner, RegularityGrade::Proregular, cfg),
        AxiomId::WeaklyRegular => regularity(liner, RegularityGrade::WeaklyRegular, cfg),
        AxiomId::KRegular(k) => k_regularity(liner, *k, false, cfg),
        AxiomId::KProregular(k) => k_regularity(liner, *k, true, cfg),
        AxiomId::Modular => is_modular(liner, cfg),
        AxiomId::WeaklyModular => is_weakly_modular(liner, cfg),
        AxiomId::Submodular => submodularity_check(liner, cfg),
        AxiomId::Projective => first_order_axiom(liner, FirstOrderAxiom::Projective, cfg),
        AxiomId::Proaffine => first_order_axiom(liner, FirstOrderAxiom::Proaffine, cfg),
        AxiomId::Affine => first_order_axiom(liner, FirstOrderAxiom::Affine, cfg),
        AxiomId::Hyperaffine => first_order_axiom(liner, FirstOrderAxiom::Hyperaffine, cfg),
        AxiomId::Hyperbolic => first_order_axiom(liner, FirstOrderAxiom::Hyperbolic, cfg),
        AxiomId::Injective => first_order_axiom(liner, FirstOrderAxiom::Injective, cfg),
        AxiomId::Biaffine => first_order_axiom(liner, FirstOrderAxiom::Biaffine, cfg),
        AxiomId::HyperBolyai => is_hyper_bolyai(liner, cfg),
        AxiomId::Boolean => is_boolean(liner, cfg),
        AxiomId::Proclus | AxiomId::Playfair | AxiomId::Bolyai | AxiomId::Lobachevsky => {
            parallel_postulate(liner, axiom.clone(), cfg)
        }
        AxiomId::SteinerProjective => steiner_projective_identity(liner),
        AxiomId::PlaneCharacterization => plane_characterization_check(liner),
        AxiomId::FlatSubloop => flat_subloop_agreement(liner, 0),
        AxiomId::Spread(k) => {
            let whole = Flat {
                points: PointSet::full(liner.point_count()),
                computed_rank: None,
                seed: None,
            };
            spread_check(liner, &whole, *k)
        }
        AxiomId::SteinerProjectiveCount => steiner_projective_count_check(liner),
        AxiomId::ProjectivePlaneCount => projective_plane_count_check(liner),
    }
}

/// Truth of one report flag: any axiom id string, or one of the extra flags
/// `steiner` (every line has exactly three points) and `hall` (Steiner with
/// every plane of nine points). A verdict of "not applicable" reads as false.
pub fn evaluate_flag(liner: &Liner, flag: &str, cfg: &CheckConfig) -> Result<bool> {
    match flag {
        "steiner" => Ok(is_steiner(liner)),
        "hall" => is_hall(liner),
        _ => Ok(check_axiom(liner, &AxiomId::from_str(flag)?, cfg)?.holds()),
    }
}

/// The battery of properties a report evaluates, in display order.
pub const REPORT_BATTERY: &[&str] = &[
    "steiner",
    "hall",
    "ranked",
    "ranked:3",
    "ranked:4",
    "weakly_regular",
    "proregular",
    "regular",
    "strongly_regular",
    "weakly_modular",
    "modular",
    "projective",
    "proaffine",
    "affine",
    "hyperaffine",
    "hyperbolic",
    "injective",
    "boolean",
    "proclus",
    "playfair",
    "bolyai",
    "lobachevsky",
    "hyper_bolyai",
    "steiner_projective_count",
    "projective_plane_count",
];

/// Scan budgets and rendering switches for a report run.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub check: CheckConfig,
    /// Zero every timing so repeated runs are byte-identical.
    pub deterministic: bool,
}

/// Outcome of one battery item.
#[derive(Clone, Debug)]
pub struct FlagOutcome {
    /// The id as given, e.g. `ranked:4`.
    pub flag: String,
    /// The id with `:` stripped, used as the JSON key, e.g. `ranked4`.
    pub key: String,
    /// Present for axiom-backed flags that ran to a verdict.
    pub verdict: Option<AxiomVerdict>,
    /// `None` when the check could not run (error recorded below).
    pub holds: Option<bool>,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

/// Everything a report knows about one liner.
#[derive(Clone, Debug)]
pub struct Report {
    pub points: usize,
    pub lines: usize,
    pub min_line: Option<usize>,
    pub max_line: Option<usize>,
    /// `None` when the rank search exceeded its budget.
    pub rank: Option<usize>,
    pub flags: Vec<FlagOutcome>,
    pub balance: Option<BalanceProfile>,
    pub balance_error: Option<String>,
    pub parallelity: Option<ParallelityProfile>,
    pub parallelity_error: Option<String>,
    /// Algebra of the midpoint operation, for triple systems only.
    pub algebra: Option<AlgebraFlags>,
    /// Per-section wall time; all zero under `deterministic`.
    pub elapsed_ms: BTreeMap<String, u64>,
}

fn elapsed_of(start: Instant, deterministic: bool) -> u64 {
    if deterministic {
        0
    } else {
        start.elapsed().as_millis() as u64
    }
}

/// Evaluate the full battery and profiles. Battery items run in parallel;
/// their order, verdicts, and scan counts do not depend on the thread count.
pub fn generate_report(liner: &Liner, opts: &ReportOptions) -> Report {
    let mut elapsed = BTreeMap::new();

    let start = Instant::now();
    let rank_value = rank(
        liner,
        &PointSet::full(liner.point_count()),
        &opts.check.rank_budget,
    )
    .ok();
    elapsed.insert("rank".into(), elapsed_of(start, opts.deterministic));

    let flags: Vec<FlagOutcome> = REPORT_BATTERY
        .par_iter()
        .map(|&flag| {
            let start = Instant::now();
            let key: String = flag.chars().filter(|&c| c != ':').collect();
            let (verdict, holds, error) = match flag {
                "steiner" => (None, Some(is_steiner(liner)), None),
                "hall" => match is_hall(liner) {
                    Ok(h) => (None, Some(h), None),
                    Err(e) => (None, None, Some(e.to_string())),
                },
                _ => {
                    let axiom = AxiomId::from_str(flag).expect("battery ids parse");
                    match check_axiom(liner, &axiom, &opts.check) {
                        Ok(v) => {
                            let holds = v.holds();
                            (Some(v), Some(holds), None)
                        }
                        Err(e) => (None, None, Some(e.to_string())),
                    }
                }
            };
            FlagOutcome {
                flag: flag.to_string(),
                key,
                verdict,
                holds,
                error,
                elapsed_ms: elapsed_of(start, opts.deterministic),
            }
        })
        .collect();

    let start = Instant::now();
    let max_rank = rank_value.unwrap_or(4).min(4);
    let (balance, balance_error) = match balance_profile(liner, max_rank, &opts.check) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    elapsed.insert("counting".into(), elapsed_of(start, opts.deterministic));

    let start = Instant::now();
    let (parallelity, parallelity_error) = match parallelity_profile(liner, &opts.check) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    elapsed.insert("parallelity".into(), elapsed_of(start, opts.deterministic));

    let start = Instant::now();
    let algebra = if is_steiner(liner) && liner.point_count() > 0 {
        midpoint_magma(liner).ok().map(|m| algebra_flags(&m))
    } else {
        None
    };
    elapsed.insert("algebra".into(), elapsed_of(start, opts.deterministic));

    Report {
        points: liner.point_count(),
        lines: liner.line_count(),
        min_line: liner.min_line_size().ok(),
        max_line: liner.max_line_size().ok(),
        rank: rank_value,
        flags,
        balance,
        balance_error,
        parallelity,
        parallelity_error,
        algebra,
        elapsed_ms: elapsed,
    }
}

fn balance_to_json(b: &BalanceProfile) -> Value {
    let mut per_rank = Map::new();
    for (r, bal) in &b.per_rank {
        let v = match bal {
            RankBalance::Uniform(k) => json!({ "uniform": k }),
            RankBalance::Unbalanced { first, second } => json!({
                "first_size": first.len(),
                "second_size": second.len(),
                "first": first.to_vec(),
                "second": second.to_vec(),
            }),
        };
        per_rank.insert(r.to_string(), v);
    }
    json!({
        "per_rank": Value::Object(per_rank),
        "line_pencil_size": b.line_pencil_size,
        "line_count": b.line_count,
    })
}

fn parallelity_to_json(p: &ParallelityProfile) -> Value {
    json!({
        "planes": p.per_plane.len(),
        "min_count": p.min_count,
        "max_count": p.max_count,
        "k_parallel": p.k_parallel,
        "proclus": p.proclus,
        "playfair": p.playfair,
        "bolyai": p.bolyai,
        "lobachevsky": p.lobachevsky,
    })
}

fn algebra_to_json(a: &AlgebraFlags) -> Value {
    json!({
        "commutative": a.commutative,
        "associative": a.associative,
        "idempotent": a.idempotent,
        "involutory": a.involutory,
        "self_distributive": a.self_distributive,
        "moufang": a.moufang,
        "exponent3": a.exponent3,
    })
}

impl Report {
    /// Machine-readable rendering. Key order is alphabetical at every level,
    /// so equal reports serialize to identical bytes.
    pub fn to_json(&self) -> Value {
        let mut flags = Map::new();
        for f in &self.flags {
            flags.insert(f.key.clone(), f.holds.map_or(Value::Null, Value::Bool));
        }
        let axioms: Vec<Value> = self
            .flags
            .iter()
            .map(|f| match (&f.verdict, &f.error) {
                (Some(v), _) => v.to_json(),
                (None, Some(e)) => json!({ "axiom": f.flag, "error": e }),
                (None, None) => json!({ "axiom": f.flag, "holds": f.holds }),
            })
            .collect();
        json!({
            "liner": {
                "points": self.points,
                "lines": self.lines,
                "min_line": self.min_line,
                "max_line": self.max_line,
                "rank": self.rank,
            },
            "flags": Value::Object(flags),
            "axioms": axioms,
            "counting": match (&self.balance, &self.balance_error) {
                (Some(b), _) => balance_to_json(b),
                (None, Some(e)) => json!({ "error": e }),
                (None, None) => Value::Null,
            },
            "parallelity": match (&self.parallelity, &self.parallelity_error) {
                (Some(p), _) => parallelity_to_json(p),
                (None, Some(e)) => json!({ "error": e }),
                (None, None) => Value::Null,
            },
            "algebra": self.algebra.as_ref().map(algebra_to_json).unwrap_or(Value::Null),
            "elapsed_ms": self.elapsed_ms,
        })
    }

    /// Human-readable rendering of the same data.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let size = |s: Option<usize>| s.map_or("-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "geometry : {} points, {} lines, line sizes {}..{}, rank {}\n",
            self.points,
            self.lines,
            size(self.min_line),
            size(self.max_line),
            size(self.rank),
        ));
        match (&self.balance, &self.balance_error) {
            (Some(b), _) => {
                let pencil = size(b.line_pencil_size);
                let ranks: Vec<String> = b
                    .per_rank
                    .iter()
                    .map(|(r, bal)| match bal {
                        RankBalance::Uniform(k) => format!("{r} -> {k}"),
                        RankBalance::Unbalanced { first, second } => {
                            format!("{r} -> {} vs {}", first.len(), second.len())
                        }
                    })
                    .collect();
                out.push_str(&format!(
                    "counting : {pencil} lines per point; rank sizes: {}\n",
                    ranks.join(", ")
                ));
            }
            (None, Some(e)) => out.push_str(&format!("counting : unavailable ({e})\n")),
            (None, None) => {}
        }
        match (&self.parallelity, &self.parallelity_error) {
            (Some(p), _) => {
                let k = p
                    .k_parallel
                    .map_or("-".to_string(), |v| v.to_string());
                out.push_str(&format!(
                    "parallels: {} planes, counts {}..{}, k_parallel {}; proclus {} | playfair {} | bolyai {} | lobachevsky {}\n",
                    p.per_plane.len(),
                    p.min_count,
                    p.max_count,
                    k,
                    yes_no(p.proclus),
                    yes_no(p.playfair),
                    yes_no(p.bolyai),
                    yes_no(p.lobachevsky),
                ));
            }
            (None, Some(e)) => out.push_str(&format!("parallels: unavailable ({e})\n")),
            (None, None) => {}
        }
        if let Some(a) = &self.algebra {
            out.push_str(&format!(
                "algebra  : commutative {}, idempotent {}, involutory {}, self-distributive {}, moufang {}, associative {}, exponent3 {}\n",
                yes_no(a.commutative),
                yes_no(a.idempotent),
                yes_no(a.involutory),
                yes_no(a.self_distributive),
                yes_no(a.moufang),
                yes_no(a.associative),
                yes_no(a.exponent3),
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "{:<26} {:>8} {:>12} {:>8}\n",
            "property", "verdict", "scanned", "ms"
        ));
        for f in &self.flags {
            let (verdict, scanned) = match (&f.verdict, f.holds) {
                (Some(v), _) => {
                    let s = if v.status == crate::axioms::VerdictStatus::NotApplicable {
                        "n/a"
                    } else if v.holds() {
                        "holds"
                    } else {
                        "fails"
                    };
                    (s.to_string(), v.scanned.to_string())
                }
                (None, Some(true)) => ("holds".to_string(), "-".to_string()),
                (None, Some(false)) => ("fails".to_string(), "-".to_string()),
                (None, None) => ("error".to_string(), "-".to_string()),
            };
            out.push_str(&format!(
                "{:<26} {:>8} {:>12} {:>8}\n",
                f.flag, verdict, scanned, f.elapsed_ms
            ));
            if let Some(v) = &f.verdict {
                if let Some(w) = &v.witness {
                    out.push_str(&format!("    witness: {}\n", format_witness(w)));
                }
                if v.skipped_by_budget {
                    out.push_str("    note: partial scan, positive part only\n");
                }
            }
            if let Some(e) = &f.error {
                out.push_str(&format!("    error: {e}\n"));
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn format_witness(w: &[WitnessItem]) -> String {
    let parts: Vec<String> = w
        .iter()
        .map(|item| match item {
            WitnessItem::Point(p) => format!("p{p}"),
            WitnessItem::Flat(v) if v.len() <= 9 => format!(
                "{{{}}}",
                v.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            WitnessItem::Flat(v) => format!("{{{} points}}", v.len()),
        })
        .collect();
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::LinerError;
    use crate::gallery::{affine_space, projective_space};

    #[test]
    fn flag_evaluation_matches_direct_checks() {
        let fano = projective_space(2, 2).unwrap();
        let cfg = CheckConfig::default();
        assert!(evaluate_flag(&fano, "projective", &cfg).unwrap());
        assert!(evaluate_flag(&fano, "steiner", &cfg).unwrap());
        assert!(!evaluate_flag(&fano, "hall", &cfg).unwrap());
        assert!(!evaluate_flag(&fano, "playfair", &cfg).unwrap());
        assert!(evaluate_flag(&fano, "ranked:3", &cfg).unwrap());
        assert!(matches!(
            evaluate_flag(&fano, "no_such_axiom", &cfg),
            Err(LinerError::InvalidFormat { .. })
        ));
    }

    #[test]
    fn report_on_the_seven_point_plane() {
        let fano = projective_space(2, 2).unwrap();
        let report = generate_report(&fano, &ReportOptions::default());
        assert_eq!(report.points, 7);
        assert_eq!(report.lines, 7);
        assert_eq!(report.rank, Some(3));
        let json = report.to_json();
        assert_eq!(json["liner"]["points"], 7);
        assert_eq!(json["flags"]["projective"], true);
        assert_eq!(json["flags"]["playfair"], false);
        assert_eq!(json["flags"]["ranked3"], true);
        assert_eq!(json["parallelity"]["k_parallel"], 0);
        assert_eq!(json["counting"]["per_rank"]["2"]["uniform"], 3);
        assert_eq!(json["algebra"]["idempotent"], true);
        let text = report.to_text();
        assert!(text.contains("7 points"));
        assert!(text.contains("projective"));
    }

    #[test]
    fn deterministic_reports_serialize_identically() {
        let liner = affine_space(2, 3).unwrap();
        let opts = ReportOptions {
            deterministic: true,
            ..ReportOptions::default()
        };
        let one = generate_report(&liner, &opts);
        let two = generate_report(&liner, &opts);
        assert_eq!(one.to_json().to_string(), two.to_json().to_string());
        assert_eq!(one.to_text(), two.to_text());
        assert!(one.elapsed_ms.values().all(|&ms| ms == 0));
        assert!(one.flags.iter().all(|f| f.elapsed_ms == 0));
        // The flags object strips colons from parameterized ids.
        let json = one.to_json();
        assert_eq!(json["flags"]["ranked4"], true);
    }

    #[test]
    fn sections_degrade_gracefully_without_planes() {
        let liner = affine_space(1, 2).unwrap();
        let report = generate_report(&liner, &ReportOptions::default());
        assert!(report.parallelity.is_none());
        assert!(report.parallelity_error.is_some());
        let json = report.to_json();
        assert!(json["parallelity"]["error"].is_string());
        assert!(json["algebra"].is_null());
    }
}
