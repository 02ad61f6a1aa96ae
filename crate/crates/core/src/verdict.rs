//! The minimality pipeline: sufficient conditions, periodic-orbit resolution,
//! separated minimal components, and re-checkable evidence.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::expand::Expander;
use crate::fixpoint::{
    find_seed, interior_pump, periodic_word_from_isolation, window, FixpointSeed, InteriorWitness,
    PeriodicWitness,
};
use crate::growth::{classify_letters, stable_constants, LetterClassification, StableConstants};
use crate::lang::{
    bounded_language, complexity_profile_from, least_rotation, periodic_word_in_language,
    BoundedLanguage, ComplexityProfile, SubshiftTable,
};
use crate::lprim::{l_primitivity, LPrimitivityReport};
use crate::par;
use crate::reach::{reachability, set_trajectory, ReachReport};
use crate::substitution::Substitution;
use crate::tame::{tameness, TamenessReport};
use crate::word::{is_factor, Letter, LetterSet, Word};

/// Structural facts every stage of the pipeline draws on.
#[derive(Clone, Debug)]
pub struct Structure {
    pub cls: LetterClassification,
    pub consts: StableConstants,
    pub reach: ReachReport,
    pub tame: TamenessReport,
    pub lprim: LPrimitivityReport,
}

impl Structure {
    pub fn of(sub: &Substitution) -> Result<Structure> {
        let cls = classify_letters(sub)?;
        let consts = stable_constants(sub, &cls);
        let reach = reachability(sub, &cls);
        let tame = tameness(sub, &cls, &consts)?;
        let lprim = l_primitivity(sub, &cls);
        Ok(Structure {
            cls,
            consts,
            reach,
            tame,
            lprim,
        })
    }

    pub fn tame_and_l_primitive(&self) -> bool {
        self.tame.tame && self.lprim.l_primitive
    }
}

/// Everything [`decide_minimality`] looks at.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub structure: Structure,
    pub language: BoundedLanguage,
    pub profile: ComplexityProfile,
}

impl Analysis {
    pub fn run(sub: &Substitution, config: &AnalysisConfig) -> Result<Analysis> {
        config.validate()?;
        let structure = Structure::of(sub)?;
        let language = bounded_language(sub, config.horizon);
        let profile = complexity_profile_from(&language, config.k.max(2))?;
        Ok(Analysis {
            structure,
            language,
            profile,
        })
    }
}

/// `σ_B` on the letters reachable from one class of `A_min,l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSubstitution {
    /// `B`, over the original alphabet.
    pub b_set: LetterSet,
    pub sub: Substitution,
    /// `B ∩ A_l`, over the original alphabet.
    pub b_l: LetterSet,
    pub bounded_equality_k: usize,
    /// Subshift tables of `σ` and `σ_B` agree on all lengths `≤ k`.
    pub bounded_equality: bool,
    /// `L(σ)` and `L(σ_B)` agree on all lengths `≤ k`.
    pub language_equality: bool,
}

fn rendered(
    sub: &Substitution,
    words: impl IntoIterator<Item = impl AsRef<[Letter]>>,
) -> BTreeSet<String> {
    words.into_iter().map(|w| sub.render(w.as_ref())).collect()
}

pub fn extract_sub_substitution(
    sub: &Substitution,
    cls: &LetterClassification,
    reach: &ReachReport,
    class: LetterSet,
    k: usize,
    horizon: usize,
) -> Result<SubSubstitution> {
    let b_set = class
        .iter()
        .fold(class, |acc, a| acc.union(reach.arrow[a.index()]));
    let sub_b = sub.restrict(b_set)?;
    let horizon = horizon.max(k + 2);
    let lang = bounded_language(sub, horizon);
    let lang_b = bounded_language(&sub_b, horizon);
    let mut tables_equal = true;
    let mut languages_equal = true;
    for j in 1..=k {
        let t = SubshiftTable::from_language(&lang, j);
        let tb = SubshiftTable::from_language(&lang_b, j);
        tables_equal &= rendered(sub, &t.words) == rendered(&sub_b, &tb.words);
        languages_equal &=
            rendered(sub, lang.words_of_len(j)) == rendered(&sub_b, lang_b.words_of_len(j));
    }
    Ok(SubSubstitution {
        b_set,
        sub: sub_b,
        b_l: b_set.intersection(cls.growing),
        bounded_equality_k: k,
        bounded_equality: tables_equal,
        language_equality: languages_equal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Minimal,
    NotMinimal,
    LikelyNotMinimal,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Minimal => "MINIMAL",
            Verdict::NotMinimal => "NOT_MINIMAL",
            Verdict::LikelyNotMinimal => "LIKELY_NOT_MINIMAL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Why a periodic orbit surviving the resolver really lies in `X_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitCertificate {
    /// `σⁿ(rotation) = rotation^m` with `m ≥ 2` and `rotation ∈ L(σ)`.
    SelfSimilar { rotation: Word, n: usize, m: usize },
    /// A growing letter found in no other orbit occurs in some point.
    LetterWitness { pump: InteriorWitness },
    /// The periodic word forced by an isolated letter.
    IsolationPad { witness: PeriodicWitness },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResolution {
    pub stabilized_at: usize,
    pub horizon: usize,
    pub orbits: Vec<Word>,
    /// Certified members of `orbits`, by index.
    pub certificates: Vec<(usize, OrbitCertificate)>,
}

/// Two minimal sub-subshifts told apart by a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub first: SubSubstitution,
    pub second: SubSubstitution,
    /// Seed of `σ_first` whose window contains `word`.
    pub first_seed: FixpointSeed,
    pub window_radius: usize,
    /// Rendered in the common alphabet.
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contrapositive {
    /// `p(set, a) > 1` for `a ∈ A_min,l`.
    SetPeriod { letter: Letter, period: usize },
    /// More than one class in `A_min,l`.
    Classes { r: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    E1 {
        tame: bool,
        l_primitive: bool,
        witness_n: usize,
    },
    E2(OrbitResolution),
    E3(Box<Separation>),
    E4 {
        periodic: PeriodicWitness,
        interior: InteriorWitness,
    },
    E5(Contrapositive),
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::E1 { .. } => "E1",
            Evidence::E2(_) => "E2",
            Evidence::E3(_) => "E3",
            Evidence::E4 { .. } => "E4",
            Evidence::E5(_) => "E5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub verdict: Verdict,
    pub single_periodic_orbit: bool,
    pub evidence: Vec<Evidence>,
    /// Searches that ran out before settling the question.
    pub exhausted: Vec<String>,
}

impl MinimalityVerdict {
    pub fn evidence_kinds(&self) -> Vec<&'static str> {
        self.evidence.iter().map(Evidence::kind).collect()
    }
}

/// Shortest `d` with `w = (w[..d])^{|w|/d}`.
pub fn primitive_root(w: &[Letter]) -> &[Letter] {
    let n = w.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && w.chunks(d).all(|c| c == &w[..d]))
        .map_or(w, |d| &w[..d])
}

fn rotations(w: &[Letter]) -> impl Iterator<Item = Word> + '_ {
    (0..w.len()).map(move |i| {
        let mut r = w[i..].to_vec();
        r.extend_from_slice(&w[..i]);
        Word::from(r)
    })
}

fn self_similar(
    sub: &Substitution,
    orbit: &[Letter],
    language: &BoundedLanguage,
    config: &AnalysisConfig,
) -> Option<OrbitCertificate> {
    let n_max = config.n_max_for(sub);
    let mut ex = Expander::new(sub, config.budget);
    for rotation in rotations(orbit) {
        if rotation.len() > language.k || !language.contains(&rotation) {
            continue;
        }
        for n in 1..=n_max {
            let Ok(img) = ex.expand_word(&rotation, n) else {
                break;
            };
            let m = img.len() / rotation.len();
            if m >= 2 && img.len() % rotation.len() == 0 && img == rotation.power(m) {
                return Some(OrbitCertificate::SelfSimilar { rotation, n, m });
            }
        }
    }
    None
}

fn certify_orbits(
    sub: &Substitution,
    st: &Structure,
    language: &BoundedLanguage,
    orbits: &[Word],
    config: &AnalysisConfig,
) -> Vec<(usize, OrbitCertificate)> {
    let pads: Vec<PeriodicWitness> = st
        .tame
        .isolated_letters()
        .filter_map(|s| periodic_word_from_isolation(sub, &st.cls, &st.consts, s.letter).ok())
        .collect();
    let mut out = Vec::new();
    for (i, orbit) in orbits.iter().enumerate() {
        if let Some(c) = self_similar(sub, orbit, language, config) {
            out.push((i, c));
            continue;
        }
        let others = orbits
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(LetterSet::EMPTY, |acc, (_, w)| acc.union(w.letters()));
        let unique = orbit
            .letters()
            .difference(others)
            .intersection(st.cls.growing);
        let pump = unique.iter().find_map(|c| {
            interior_pump(sub, &st.cls, c, config.n_max_for(sub), config.budget)
                .ok()
                .flatten()
        });
        if let Some(pump) = pump {
            out.push((i, OrbitCertificate::LetterWitness { pump }));
            continue;
        }
        if let Some(w) = pads
            .iter()
            .find(|w| least_rotation(primitive_root(&w.word)) == *orbit)
        {
            out.push((i, OrbitCertificate::IsolationPad { witness: w.clone() }));
        }
    }
    out
}

/// A class of `A_min,l` whose restriction satisfies the sufficient condition,
/// with a sample of its fixed point.
struct MinimalComponent {
    part: SubSubstitution,
    seed: FixpointSeed,
    factors: Vec<BTreeSet<String>>,
}

fn minimal_component(
    sub: &Substitution,
    st: &Structure,
    class: LetterSet,
    config: &AnalysisConfig,
) -> Result<Option<MinimalComponent>> {
    let part = extract_sub_substitution(sub, &st.cls, &st.reach, class, config.k, config.horizon)?;
    let inner = Structure::of(&part.sub)?;
    if !inner.tame_and_l_primitive() {
        return Ok(None);
    }
    let seed = find_seed(
        &part.sub,
        &inner.cls,
        &inner.reach,
        &inner.tame,
        config.budget,
    )?;
    let r = separation_radius(config);
    let x = window(&part.sub, &seed, -(r as i64), r as i64, config.budget)?;
    let factors = (1..=config.k)
        .map(|j| x.windows(j).map(|f| part.sub.render(f)).collect())
        .collect();
    Ok(Some(MinimalComponent {
        part,
        seed,
        factors,
    }))
}

fn separation_radius(config: &AnalysisConfig) -> usize {
    (4 * config.horizon).min(config.m)
}

fn table_strings(sub: &Substitution, k: usize, horizon: usize) -> Vec<BTreeSet<String>> {
    let lang = bounded_language(sub, horizon.max(k + 2));
    (1..=k)
        .map(|j| rendered(sub, &SubshiftTable::from_language(&lang, j).words))
        .collect()
}

fn separate(a: &MinimalComponent, b: &MinimalComponent, config: &AnalysisConfig) -> Option<String> {
    let tables = table_strings(&b.part.sub, config.k, config.horizon);
    a.factors
        .iter()
        .zip(&tables)
        .find_map(|(fs, t)| fs.iter().find(|f| !t.contains(*f)).cloned())
}

/// Run the pipeline on a precomputed analysis.
pub fn decide(
    sub: &Substitution,
    an: &Analysis,
    config: &AnalysisConfig,
) -> Result<MinimalityVerdict> {
    let st = &an.structure;
    let mut evidence = Vec::new();
    let mut exhausted = Vec::new();

    // orbit resolution, shared by stages (i) and (ii)
    let resolution = match (an.profile.stabilized_at, &an.profile.orbits) {
        (Some(k), Some(orbits)) if !orbits.is_empty() => Some(OrbitResolution {
            stabilized_at: k,
            horizon: an.profile.horizon,
            orbits: orbits.clone(),
            certificates: Vec::new(),
        }),
        _ => None,
    };
    let single = resolution.as_ref().is_some_and(|r| r.orbits.len() == 1);

    if st.tame_and_l_primitive() {
        evidence.push(Evidence::E1 {
            tame: true,
            l_primitive: true,
            witness_n: st.lprim.witness_n.expect("l-primitive has a witness"),
        });
        if single {
            evidence.push(Evidence::E2(resolution.expect("single implies resolved")));
        }
        return Ok(MinimalityVerdict {
            verdict: Verdict::Minimal,
            single_periodic_orbit: single,
            evidence,
            exhausted,
        });
    }

    if let Some(mut res) = resolution {
        if single {
            return Ok(MinimalityVerdict {
                verdict: Verdict::Minimal,
                single_periodic_orbit: true,
                evidence: vec![Evidence::E2(res)],
                exhausted,
            });
        }
        res.certificates = certify_orbits(sub, st, &an.language, &res.orbits, config);
        if res.certificates.len() >= 2 {
            return Ok(MinimalityVerdict {
                verdict: Verdict::NotMinimal,
                single_periodic_orbit: false,
                evidence: vec![Evidence::E2(res)],
                exhausted,
            });
        }
        exhausted.push(format!(
            "{} periodic orbits resolved but only {} certified",
            res.orbits.len(),
            res.certificates.len()
        ));
    } else {
        exhausted.push(format!(
            "factor complexity did not stabilize up to k = {} (horizon {})",
            config.k, config.horizon
        ));
    }

    if st.reach.r > 1 {
        let components: Vec<Result<Option<MinimalComponent>>> =
            par::map(&st.reach.classes, |&class| {
                minimal_component(sub, st, class, config)
            });
        let components: Vec<MinimalComponent> = components
            .into_iter()
            .filter_map(|c| c.ok().flatten())
            .collect();
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                let found = separate(a, b, config)
                    .map(|w| (a, b, w))
                    .or_else(|| separate(b, a, config).map(|w| (b, a, w)));
                if let Some((x, y, word)) = found {
                    return Ok(MinimalityVerdict {
                        verdict: Verdict::NotMinimal,
                        single_periodic_orbit: false,
                        evidence: vec![Evidence::E3(Box::new(Separation {
                            first: x.part.clone(),
                            second: y.part.clone(),
                            first_seed: x.seed.clone(),
                            window_radius: separation_radius(config),
                            word,
                        }))],
                        exhausted,
                    });
                }
            }
        }
        exhausted.push(format!(
            "{} of {} minimal classes satisfy the sufficient condition; no separating word up to k = {}",
            components.len(),
            st.reach.r,
            config.k
        ));
    }

    let n_max = config.n_max_for(sub);
    let isolated: Vec<Letter> = st.tame.isolated_letters().map(|s| s.letter).collect();
    for &a in &isolated {
        let periodic = periodic_word_from_isolation(sub, &st.cls, &st.consts, a)?;
        let outside = st.cls.growing.difference(periodic.word.letters());
        for c in outside.iter() {
            if let Some(interior) =
                interior_pump(sub, &st.cls, c, n_max, config.budget).unwrap_or(None)
            {
                return Ok(MinimalityVerdict {
                    verdict: Verdict::NotMinimal,
                    single_periodic_orbit: false,
                    evidence: vec![Evidence::E4 { periodic, interior }],
                    exhausted,
                });
            }
        }
    }
    if !isolated.is_empty() {
        exhausted.push(format!(
            "no interior occurrence of a growing letter up to n_max = {n_max}"
        ));
    }

    for a in st.reach.min_l.iter() {
        let t = set_trajectory(sub, &st.cls, LetterSet::singleton(a));
        if t.period > 1 {
            evidence.push(Evidence::E5(Contrapositive::SetPeriod {
                letter: a,
                period: t.period,
            }));
            break;
        }
    }
    if st.reach.r > 1 {
        evidence.push(Evidence::E5(Contrapositive::Classes { r: st.reach.r }));
    }
    let verdict = if evidence.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::LikelyNotMinimal
    };
    Ok(MinimalityVerdict {
        verdict,
        single_periodic_orbit: false,
        evidence,
        exhausted,
    })
}

pub fn decide_minimality(sub: &Substitution, config: &AnalysisConfig) -> Result<MinimalityVerdict> {
    decide(sub, &Analysis::run(sub, config)?, config)
}

/// Re-check every evidence item from scratch. Returns the list of failures.
pub fn verify_evidence(
    sub: &Substitution,
    verdict: &MinimalityVerdict,
    config: &AnalysisConfig,
) -> std::result::Result<(), Vec<String>> {
    let mut failures = Vec::new();
    for ev in &verdict.evidence {
        if let Err(e) = verify_item(sub, ev, config) {
            failures.push(format!("{}: {e}", ev.kind()));
        }
    }
    let kinds = verdict.evidence_kinds();
    let allowed: &[&str] = match verdict.verdict {
        Verdict::Minimal => &["E1", "E2"],
        Verdict::NotMinimal => &["E2", "E3", "E4"],
        Verdict::LikelyNotMinimal => &["E5"],
        Verdict::Inconclusive => &[],
    };
    if kinds.iter().any(|k| !allowed.contains(k)) {
        failures.push(format!("{} cannot rest on {kinds:?}", verdict.verdict));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn verify_item(
    sub: &Substitution,
    ev: &Evidence,
    config: &AnalysisConfig,
) -> std::result::Result<(), String> {
    let st = Structure::of(sub).map_err(|e| e.to_string())?;
    match ev {
        Evidence::E1 { witness_n, .. } => {
            check(st.tame.tame, "not tame")?;
            let mut ex = Expander::new(sub, config.budget);
            for b in st.cls.growing.iter() {
                match ex.expand(b, *witness_n) {
                    Ok(w) => check(
                        st.cls.growing.is_subset(w.letters()),
                        format!("σ^{witness_n}({}) misses a growing letter", sub.symbol(b)),
                    )?,
                    Err(_) => check(
                        st.cls.growing.is_subset(sub.letters_after(b, *witness_n)),
                        "coverage fails",
                    )?,
                }
            }
            Ok(())
        }
        Evidence::E2(res) => {
            let lang = bounded_language(sub, res.horizon);
            for w in &res.orbits {
                check(
                    periodic_word_in_language(w, &lang),
                    format!("orbit {} leaves the language", sub.render(w)),
                )?;
            }
            let profile = complexity_profile_from(&lang, config.k.max(2).min(res.horizon - 2))
                .map_err(|e| e.to_string())?;
            check(
                profile.orbits.as_ref() == Some(&res.orbits),
                "orbit resolution does not reproduce",
            )?;
            for (i, cert) in &res.certificates {
                let orbit = res.orbits.get(*i).ok_or("certificate index out of range")?;
                verify_certificate(sub, &st, orbit, &res.orbits, cert, &lang, config)?;
            }
            check(
                res.orbits.len() == 1 || res.certificates.len() >= 2,
                "several orbits need two certificates",
            )
        }
        Evidence::E3(sep) => {
            for part in [&sep.first, &sep.second] {
                let inner = Structure::of(&part.sub).map_err(|e| e.to_string())?;
                check(
                    inner.tame_and_l_primitive(),
                    "component is not tame and l-primitive",
                )?;
                check(
                    sub.restrict(part.b_set).map_err(|e| e.to_string())? == part.sub,
                    "component is not a restriction",
                )?;
            }
            let r = sep.window_radius as i64;
            let x = window(&sep.first.sub, &sep.first_seed, -r, r, config.budget)
                .map_err(|e| e.to_string())?;
            check(
                sep.first.sub.render(&x).contains(&sep.word),
                "separating word is not in the first point",
            )?;
            let k = sep.word.chars().count();
            let lang = bounded_language(&sep.second.sub, config.horizon.max(k + 2));
            let table = SubshiftTable::from_language(&lang, k);
            check(
                !rendered(&sep.second.sub, &table.words).contains(&sep.word),
                "separating word occurs in the second table",
            )
        }
        Evidence::E4 { periodic, interior } => {
            verify_periodic(sub, &st, periodic, config)?;
            check(
                periodic.word.letters().is_disjoint(st.cls.growing),
                "periodic word uses a growing letter",
            )?;
            check(
                !periodic.word.letters().contains(interior.letter),
                "interior letter occurs in the periodic word",
            )?;
            verify_pump(sub, interior, config)
        }
        Evidence::E5(Contrapositive::SetPeriod { letter, period }) => {
            let t = set_trajectory(sub, &st.cls, LetterSet::singleton(*letter));
            check(
                t.period == *period && *period > 1,
                "set period does not reproduce",
            )
        }
        Evidence::E5(Contrapositive::Classes { r }) => {
            check(st.reach.r == *r && *r > 1, "class count differs")
        }
    }
}

fn verify_certificate(
    sub: &Substitution,
    st: &Structure,
    orbit: &Word,
    orbits: &[Word],
    cert: &OrbitCertificate,
    lang: &BoundedLanguage,
    config: &AnalysisConfig,
) -> std::result::Result<(), String> {
    match cert {
        OrbitCertificate::SelfSimilar { rotation, n, m } => {
            check(
                least_rotation(rotation) == *orbit,
                "rotation does not match the orbit",
            )?;
            check(lang.contains(rotation), "rotation not in the language")?;
            check(
                *m >= 2 && sub.apply_n(rotation, *n) == rotation.power(*m),
                "not self-similar",
            )
        }
        OrbitCertificate::LetterWitness { pump } => {
            check(st.cls.is_growing(pump.letter), "pumped letter is bounded")?;
            let elsewhere = orbits
                .iter()
                .filter(|w| *w != orbit)
                .any(|w| w.letters().contains(pump.letter));
            check(
                orbit.letters().contains(pump.letter) && !elsewhere,
                "letter is not unique to the orbit",
            )?;
            verify_pump(sub, pump, config)
        }
        OrbitCertificate::IsolationPad { witness } => {
            verify_periodic(sub, st, witness, config)?;
            check(
                least_rotation(primitive_root(&witness.word)) == *orbit,
                "periodic word does not spell the orbit",
            )
        }
    }
}

/// `σ^{n₀}(w) = w`, `w` is `σ^{n₀}` of the pad next to `origin`, and `w⁵`
/// occurs in `σ^{6n₀}(origin)` when that fits the budget.
fn verify_periodic(
    sub: &Substitution,
    st: &Structure,
    pw: &PeriodicWitness,
    config: &AnalysisConfig,
) -> std::result::Result<(), String> {
    check(!pw.word.is_empty(), "empty periodic word")?;
    check(
        sub.apply_n(&pw.word, pw.n0) == pw.word,
        "periodic word is not σ^{n0}-fixed",
    )?;
    let again = periodic_word_from_isolation(sub, &st.cls, &st.consts, pw.origin)
        .map_err(|e| e.to_string())?;
    check(again == *pw, "periodic word does not reproduce")?;
    let mut ex = Expander::new(sub, config.budget);
    if let Ok(big) = ex.expand(pw.origin, 6 * pw.n0) {
        check(
            is_factor(&pw.word.power(5), &big),
            "w⁵ not found in the expansion",
        )?;
    }
    Ok(())
}

fn verify_pump(
    sub: &Substitution,
    w: &InteriorWitness,
    config: &AnalysisConfig,
) -> std::result::Result<(), String> {
    check(
        !w.left_ctx.is_empty() && !w.right_ctx.is_empty(),
        "empty context",
    )?;
    let mut ex = Expander::new(sub, config.budget);
    let once = ex.expand(w.letter, w.n).map_err(|e| e.to_string())?;
    let mut expect = w.left_ctx.clone();
    expect.push(w.letter);
    expect.extend_from_slice(&w.right_ctx);
    check(*once == expect, "σⁿ(c) does not match the contexts")?;
    if let Ok(twice) = ex.expand(w.letter, 2 * w.n) {
        let at = ex.word_length(&w.left_ctx, w.n) as usize + w.left_ctx.len();
        check(
            twice.get(at) == Some(&w.letter),
            "pumped occurrence missing",
        )?;
        check(
            at > w.left_ctx.len() && twice.len() - at - 1 > w.right_ctx.len(),
            "contexts do not grow",
        )?;
    }
    Ok(())
}

/// `σ(a) = u` for every `a ∈ Lett(u)`, with `u·u` when `|u| = 1`.
pub fn build_periodic_substitution(u: &str) -> Result<Substitution> {
    if u.is_empty() {
        return Err(Error::PreconditionFailed(
            "periodic word must be nonempty".into(),
        ));
    }
    let mut seen = Vec::new();
    for c in u.chars() {
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    let image = if u.chars().count() == 1 {
        u.repeat(2)
    } else {
        u.to_string()
    };
    let rules: Vec<(char, &str)> = seen.iter().map(|&c| (c, image.as_str())).collect();
    Substitution::from_rules(&rules)
}
