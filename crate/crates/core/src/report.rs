//! JSON report assembly, single-file analysis and batch summaries.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::fixpoint::{
    bounded_gap_constants, find_seed, window, InteriorWitness, PeriodicWitness, Point,
};
use crate::lang::{repetitivity_estimate, uniform_recurrence_check, SubshiftTable};
use crate::par::{self, Exec};
use crate::reach::{damanik_lenz_check, set_trajectory};
use crate::substitution::Substitution;
use crate::tame::gap;
use crate::verdict::{
    decide, Analysis, Contrapositive, Evidence, MinimalityVerdict, OrbitCertificate,
    SubSubstitution, Verdict,
};
use crate::word::{Letter, LetterSet};

/// Radius of the fixed-point sample shown in reports.
const WINDOW_RADIUS: i64 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub name: String,
    pub alphabet: usize,
    pub growing: usize,
    pub tame: bool,
    pub l_primitive: bool,
    pub r: usize,
    pub verdict: String,
    pub evidence: String,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub name: String,
    pub verdict: MinimalityVerdict,
    pub summary: SummaryRow,
    pub json: Value,
}

impl AnalysisReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("report values serialize")
    }
}

struct Render<'a>(&'a Substitution);

impl Render<'_> {
    fn w(&self, w: &[Letter]) -> String {
        self.0.render(w)
    }

    fn sym(&self, a: Letter) -> String {
        self.0.symbol(a).to_string()
    }

    fn set(&self, s: LetterSet) -> Vec<String> {
        self.0.render_set_list(s)
    }

    fn periodic(&self, p: &PeriodicWitness) -> Value {
        json!({ "word": self.w(&p.word), "origin": self.sym(p.origin), "n0": p.n0 })
    }

    fn interior(&self, i: &InteriorWitness) -> Value {
        json!({
            "letter": self.sym(i.letter),
            "n": i.n,
            "left_ctx": self.w(&i.left_ctx),
            "right_ctx": self.w(&i.right_ctx),
        })
    }

    fn part(&self, p: &SubSubstitution) -> Value {
        json!({
            "B": self.set(p.b_set),
            "B_l": self.set(p.b_l),
            "rules": p.sub.to_string(),
            "bounded_equality_k": p.bounded_equality_k,
            "bounded_equality": p.bounded_equality,
            "language_equality": p.language_equality,
        })
    }

    fn evidence(&self, e: &Evidence) -> Value {
        let body = match e {
            Evidence::E1 {
                tame,
                l_primitive,
                witness_n,
            } => {
                json!({ "tame": tame, "l_primitive": l_primitive, "witness_n": witness_n })
            }
            Evidence::E2(res) => {
                let certs: Vec<Value> = res
                    .certificates
                    .iter()
                    .map(|(i, c)| {
                        let cert = match c {
                            OrbitCertificate::SelfSimilar { rotation, n, m } => json!({
                                "type": "self_similar", "rotation": self.w(rotation), "n": n, "m": m
                            }),
                            OrbitCertificate::LetterWitness { pump } => json!({
                                "type": "letter_witness", "pump": self.interior(pump)
                            }),
                            OrbitCertificate::IsolationPad { witness } => json!({
                                "type": "isolation_pad", "witness": self.periodic(witness)
                            }),
                        };
                        json!({ "orbit": self.w(&res.orbits[*i]), "certificate": cert })
                    })
                    .collect();
                json!({
                    "stabilized_at": res.stabilized_at,
                    "horizon": res.horizon,
                    "orbits": res.orbits.iter().map(|w| self.w(w)).collect::<Vec<_>>(),
                    "certificates": certs,
                })
            }
            Evidence::E3(sep) => {
                let seed = &sep.first_seed;
                let s = &sep.first.sub;
                json!({
                    "first": self.part(&sep.first),
                    "second": self.part(&sep.second),
                    "first_seed": {
                        "left": s.symbol(seed.left_letter).to_string(),
                        "middle": s.render(&seed.middle),
                        "right": s.symbol(seed.right_letter).to_string(),
                        "p": seed.p,
                    },
                    "window_radius": sep.window_radius,
                    "word": sep.word,
                })
            }
            Evidence::E4 { periodic, interior } => {
                json!({ "periodic": self.periodic(periodic), "interior": self.interior(interior) })
            }
            Evidence::E5(Contrapositive::SetPeriod { letter, period }) => {
                json!({ "set_period": { "letter": self.sym(*letter), "period": period } })
            }
            Evidence::E5(Contrapositive::Classes { r }) => json!({ "classes": r }),
        };
        json!({ "kind": e.kind(), "data": body })
    }
}

fn verdict_json(r: &Render, v: &MinimalityVerdict) -> Value {
    json!({
        "verdict": v.verdict.to_string(),
        "single_periodic_orbit": v.single_periodic_orbit,
        "evidence": v.evidence.iter().map(|e| r.evidence(e)).collect::<Vec<_>>(),
        "exhausted": v.exhausted,
    })
}

fn or_null<T>(
    r: Result<T>,
    diagnostics: &mut Vec<String>,
    what: &str,
    f: impl FnOnce(T) -> Value,
) -> Value {
    match r {
        Ok(v) => f(v),
        Err(e) => {
            diagnostics.push(format!("{what}: {e}"));
            Value::Null
        }
    }
}

/// Analyze one substitution and assemble the full report.
pub fn analyze_substitution(
    name: &str,
    sub: &Substitution,
    config: &AnalysisConfig,
    timing: bool,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    let an = Analysis::run(sub, config)?;
    let verdict = decide(sub, &an, config)?;
    let st = &an.structure;
    let r = Render(sub);
    let mut diagnostics = Vec::new();
    let unused = sub.unused_letters();
    if !unused.is_empty() {
        diagnostics.push(format!("unused letters: {}", sub.render_set(unused)));
    }
    let budget = config.budget;

    let mut m = Map::new();
    m.insert(
        "input".into(),
        json!({
            "name": name,
            "rules": sub.to_string(),
            "alphabet": r.set(sub.alphabet()),
            "unused": r.set(unused),
        }),
    );
    m.insert(
        "config".into(),
        serde_json::to_value(config).expect("config serializes"),
    );
    m.insert("A_l".into(), json!(r.set(st.cls.growing)));
    m.insert("A_s".into(), json!(r.set(st.cls.bounded)));
    m.insert(
        "growth_witness".into(),
        json!(st
            .cls
            .witness
            .iter()
            .map(|(a, w)| (
                r.sym(*a),
                json!({ "target": r.sym(w.target), "power": w.power })
            ))
            .collect::<BTreeMap<_, _>>()),
    );
    m.insert("n_s".into(), json!(st.consts.n_s));
    m.insert("p_s".into(), json!(st.consts.p_s));
    m.insert("k_s".into(), json!(st.consts.k_s));
    m.insert(
        "stable_words".into(),
        json!(st
            .consts
            .stable_word
            .iter()
            .map(|(a, w)| (r.sym(*a), r.w(w)))
            .collect::<BTreeMap<_, _>>()),
    );
    m.insert(
        "arrow".into(),
        json!(sub
            .letters()
            .map(|a| (r.sym(a), r.set(st.reach.arrow[a.index()])))
            .collect::<BTreeMap<_, _>>()),
    );
    m.insert("A_circ".into(), json!(r.set(st.reach.circ)));
    m.insert("A_circ_l".into(), json!(r.set(st.reach.circ_l)));
    m.insert("A_min_l".into(), json!(r.set(st.reach.min_l)));
    m.insert(
        "classes".into(),
        json!(st
            .reach
            .classes
            .iter()
            .map(|c| r.set(*c))
            .collect::<Vec<_>>()),
    );
    m.insert("r".into(), json!(st.reach.r));
    m.insert(
        "set_trajectories".into(),
        json!(st
            .cls
            .growing
            .iter()
            .map(|a| {
                let t = set_trajectory(sub, &st.cls, LetterSet::singleton(a));
                (
                    r.sym(a),
                    json!({
                        "preperiod": t.preperiod,
                        "period": t.period,
                        "cycle": t.cycle.iter().map(|f| r.set(*f)).collect::<Vec<_>>(),
                    }),
                )
            })
            .collect::<BTreeMap<_, _>>()),
    );
    let dl = damanik_lenz_check(
        sub,
        &st.cls,
        config.k,
        config.n_max_for(sub),
        config.horizon,
        budget,
    );
    let dl = or_null(dl, &mut diagnostics, "damanik_lenz", |d| {
        json!({
            "cond1": { "holds": d.cond1.holds, "witness": d.cond1.witness.map(|a| r.sym(a)) },
            "cond2": { "holds": d.cond2.holds, "witness": d.cond2.witness.map(|a| r.sym(a)) },
            "k": d.k,
            "horizon": d.horizon,
            "cond3_bounded": d.cond3_bounded,
            "cond3_counterexample": d.cond3_counterexample.as_ref().map(|w| r.w(w)),
            "ewe_gap_max": d.ewe_gap_max,
            "n_scanned": d.n_scanned,
        })
    });
    m.insert("damanik_lenz".into(), dl);

    m.insert("tame".into(), json!(st.tame.tame));
    m.insert(
        "isolation".into(),
        json!(st
            .tame
            .statuses
            .iter()
            .map(|(a, s)| {
                (
                    r.sym(*a),
                    json!({
                        "left_isolated": s.left_isolated,
                        "right_isolated": s.right_isolated,
                        "witness_side": s.witness_side,
                        "witness_n": s.witness_n,
                        "witness_pad": s.witness_pad.as_ref().map(|w| r.w(w)),
                    }),
                )
            })
            .collect::<BTreeMap<_, _>>()),
    );
    m.insert(
        "e_s".into(),
        match st.tame.e_s {
            Some(e) => json!({ "minus": st.tame.e_s_minus, "plus": st.tame.e_s_plus, "e_s": e }),
            None => Value::Null,
        },
    );
    let g = gap(sub, &st.cls, &st.consts, st.tame.e_s, 1, budget);
    let g = or_null(g, &mut diagnostics, "gap", |g| {
        json!({
            "n": g.n,
            "per_letter": g.per_letter.iter().map(|(a, v)| (r.sym(*a), *v)).collect::<BTreeMap<_, _>>(),
            "gap_n": g.gap_n,
            "bound": g.bound,
        })
    });
    m.insert("gap".into(), g);
    m.insert(
        "l_primitive".into(),
        json!({
            "l_primitive": st.lprim.l_primitive,
            "witness_n": st.lprim.witness_n,
            "refutation": st.lprim.refutation.as_ref().map(|rf| json!({
                "preperiod": rf.preperiod,
                "cycle": rf.cycle.iter().map(|t| t.iter().map(|f| r.set(*f)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })),
        }),
    );

    let seed = if st.tame.tame {
        match find_seed(sub, &st.cls, &st.reach, &st.tame, budget) {
            Ok(s) => Some(s),
            Err(e) => {
                diagnostics.push(format!("seed: {e}"));
                None
            }
        }
    } else {
        None
    };
    m.insert(
        "seed".into(),
        seed.as_ref().map_or(Value::Null, |s| {
            json!({
                "left": r.sym(s.left_letter),
                "middle": r.w(&s.middle),
                "right": r.sym(s.right_letter),
                "p": s.p,
            })
        }),
    );
    let win = match &seed {
        Some(s) => or_null(
            window(sub, s, -WINDOW_RADIUS, WINDOW_RADIUS, budget),
            &mut diagnostics,
            "window",
            |w| json!({ "s": -WINDOW_RADIUS, "t": WINDOW_RADIUS, "word": r.w(&w) }),
        ),
        None => Value::Null,
    };
    m.insert("window".into(), win);
    let dp = match &seed {
        Some(s) if st.tame_and_l_primitive() => or_null(
            bounded_gap_constants(sub, &st.cls, &st.consts, &st.lprim, &st.tame, s, budget),
            &mut diagnostics,
            "d_prime",
            |g| json!({ "p_prime": g.p_prime, "l": g.l, "d": g.d, "d_prime": g.d_prime }),
        ),
        _ => Value::Null,
    };
    m.insert("d_prime".into(), dp);

    m.insert(
        "language".into(),
        json!({
            "k": an.language.k,
            "counts": (1..=an.language.k).map(|j| an.language.count_of_len(j)).collect::<Vec<_>>(),
        }),
    );
    let table = SubshiftTable::from_language(&an.language, config.k);
    m.insert(
        "table".into(),
        json!({
            "k": table.k,
            "horizon": table.horizon,
            "words": table.words.iter().map(|w| r.w(w)).collect::<Vec<_>>(),
            "exact_if_periodic": table.exact_if_periodic,
        }),
    );
    m.insert(
        "complexity".into(),
        json!({
            "horizon": an.profile.horizon,
            "counts": an.profile.counts,
            "stabilized_at": an.profile.stabilized_at,
            "orbits": an.profile.orbits.as_ref().map(|o| o.iter().map(|w| r.w(w)).collect::<Vec<_>>()),
        }),
    );

    let point = match (&seed, &an.profile.orbits) {
        (Some(s), _) => Some(Point::Fixed(s.clone())),
        (None, Some(o)) if o.len() == 1 => Some(Point::Periodic(o[0].clone())),
        _ => None,
    };
    let (rec, rep) = match &point {
        Some(p) => {
            let rec = uniform_recurrence_check(
                sub,
                p,
                config.k,
                config.window,
                config.m,
                config.horizon,
                budget,
            );
            let rec = or_null(rec, &mut diagnostics, "recurrence", |x| {
                json!({
                    "k": x.k,
                    "window": x.window,
                    "uniformly_recurrent_observed": x.uniformly_recurrent_observed,
                    "worst_word": x.worst_word.as_ref().map(|w| r.w(w)),
                    "worst_gap": x.worst_gap,
                    "words_checked": x.words_checked,
                    "segment_length": x.segment_length,
                })
            });
            let rep = repetitivity_estimate(sub, p, config.k, config.m, config.horizon, budget);
            let rep = or_null(rep, &mut diagnostics, "repetitivity", |x| {
                json!({
                    "table": x.table.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
                    "ratio_max": x.ratio_max,
                })
            });
            (rec, rep)
        }
        None => (Value::Null, Value::Null),
    };
    m.insert("recurrence".into(), rec);
    m.insert("repetitivity".into(), rep);
    m.insert("verdict".into(), verdict_json(&r, &verdict));
    m.insert(
        "timing".into(),
        if timing {
            json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 })
        } else {
            Value::Null
        },
    );
    m.insert("diagnostics".into(), json!(diagnostics));

    let summary = SummaryRow {
        name: name.to_string(),
        alphabet: sub.len(),
        growing: st.cls.growing.len(),
        tame: st.tame.tame,
        l_primitive: st.lprim.l_primitive,
        r: st.reach.r,
        verdict: verdict.verdict.to_string(),
        evidence: verdict.evidence_kinds().join("+"),
    };
    Ok(AnalysisReport {
        name: name.to_string(),
        verdict,
        summary,
        json: Value::Object(m),
    })
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Read, parse and analyze one `.sub` file.
pub fn run_analysis(path: &Path, config: &AnalysisConfig) -> Result<AnalysisReport> {
    let text = fs::read_to_string(path)?;
    let sub = Substitution::parse(&text)?;
    analyze_substitution(&file_name(path), &sub, config, false)
}

#[derive(Debug)]
pub struct BatchEntry {
    pub path: PathBuf,
    pub outcome: Result<AnalysisReport>,
}

impl BatchEntry {
    pub fn row(&self) -> SummaryRow {
        match &self.outcome {
            Ok(rep) => rep.summary.clone(),
            Err(e) => SummaryRow {
                name: file_name(&self.path),
                alphabet: 0,
                growing: 0,
                tame: false,
                l_primitive: false,
                r: 0,
                verdict: "ERROR".into(),
                evidence: e.to_string(),
            },
        }
    }
}

/// All `.sub` files of `dir`, in name order.
pub fn sub_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "sub"))
        .collect();
    files.sort();
    Ok(files)
}

/// Analyze every `.sub` file in `dir`; per-file failures are kept, not raised.
pub fn batch(dir: &Path, config: &AnalysisConfig, exec: Exec) -> Result<Vec<BatchEntry>> {
    config.validate()?;
    let files = sub_files(dir)?;
    Ok(par::map_with(exec, &files, |p| BatchEntry {
        path: p.clone(),
        outcome: run_analysis(p, config),
    }))
}

pub const CSV_HEADER: [&str; 8] = [
    "name",
    "|A|",
    "|A_l|",
    "tame",
    "l_primitive",
    "r",
    "verdict",
    "evidence",
];

pub fn write_csv<W: Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        w.write_record([
            row.name.clone(),
            row.alphabet.to_string(),
            row.growing.to_string(),
            row.tame.to_string(),
            row.l_primitive.to_string(),
            row.r.to_string(),
            row.verdict.clone(),
            row.evidence.clone(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Verdict parsed back from its report string.
pub fn parse_verdict(s: &str) -> Option<Verdict> {
    match s {
        "MINIMAL" => Some(Verdict::Minimal),
        "NOT_MINIMAL" => Some(Verdict::NotMinimal),
        "LIKELY_NOT_MINIMAL" => Some(Verdict::LikelyNotMinimal),
        "INCONCLUSIVE" => Some(Verdict::Inconclusive),
        _ => None,
    }
}
