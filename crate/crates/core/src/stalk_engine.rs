//! Stalk tables of sheaves on `Bun_G`, propagated through exact triangles.
//!
//! A table records, per stratum `b` and raw cohomological degree, a multiset
//! of representation labels. Cones are computed stratum by stratum from the
//! long exact sequence, and are refused when the sequence does not determine
//! the answer. The trivial-parameter family of `PGL(2)` is built this way.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bmo_hecke::bmo_trivial;
use crate::error::{Error, Result};
use crate::kottwitz::BClass;
use crate::labels::RepLabel;
use crate::root_data::{Coweight, RootDatum};

/// Degree → label multiset.
pub type Stalk = BTreeMap<i64, BTreeMap<RepLabel, u64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StalkTable {
    pub name: String,
    pub component: String,
    pub entries: BTreeMap<BClass, Stalk>,
    /// Strata above this index may be missing (star tables are built from a finite window).
    pub truncated_above: Option<BClass>,
    pub notes: Vec<String>,
}

fn clean(stalk: &mut Stalk) {
    for labels in stalk.values_mut() {
        labels.retain(|_, m| *m > 0);
    }
    stalk.retain(|_, labels| !labels.is_empty());
}

fn shifted(stalk: &Stalk, k: i64) -> Stalk {
    stalk.iter().map(|(d, l)| (d - k, l.clone())).collect()
}

/// `χ` per label: `Σ_d (−1)^d · mult`.
pub fn stalk_euler(stalk: &Stalk) -> BTreeMap<RepLabel, i64> {
    let mut out = BTreeMap::new();
    for (d, labels) in stalk {
        let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
        for (l, m) in labels {
            *out.entry(l.clone()).or_insert(0) += sign * *m as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

impl StalkTable {
    pub fn empty(name: impl Into<String>, component: impl Into<String>) -> Self {
        StalkTable {
            name: name.into(),
            component: component.into(),
            entries: BTreeMap::new(),
            truncated_above: None,
            notes: Vec::new(),
        }
    }

    pub fn support(&self) -> Vec<&BClass> {
        self.entries.keys().collect()
    }

    /// `T[k]`: degree `d` moves to `d − k`.
    pub fn shift(&self, k: i64) -> StalkTable {
        StalkTable {
            name: format!("{}[{k}]", self.name),
            entries: self.entries.iter().map(|(b, s)| (b.clone(), shifted(s, k))).collect(),
            ..self.clone()
        }
    }

    pub fn stalk(&self, b: &BClass) -> Option<&Stalk> {
        self.entries.get(b)
    }

    pub fn euler(&self) -> BTreeMap<BClass, BTreeMap<RepLabel, i64>> {
        self.entries
            .iter()
            .map(|(b, s)| (b.clone(), stalk_euler(s)))
            .filter(|(_, e)| !e.is_empty())
            .collect()
    }

    /// Degrees shifted by `−⟨2ρ, ν_b⟩` and the `δ_b^{1/2}` twist removed.
    pub fn renormalized(&self) -> BTreeMap<BClass, Stalk> {
        self.entries
            .iter()
            .map(|(b, s)| {
                let stalk = s
                    .iter()
                    .map(|(d, labels)| {
                        let labels = labels
                            .iter()
                            .map(|(l, m)| {
                                let l = if b.basic { l.clone() } else { l.clone().untwist_delta() };
                                (l, *m)
                            })
                            .collect();
                        (d - b.shift, labels)
                    })
                    .collect();
                (b.clone(), stalk)
            })
            .collect()
    }

    /// Euler characteristics of the renormalized stalks.
    pub fn renormalized_euler(&self) -> BTreeMap<BClass, BTreeMap<RepLabel, i64>> {
        self.renormalized()
            .iter()
            .map(|(b, s)| (b.clone(), stalk_euler(s)))
            .filter(|(_, e)| !e.is_empty())
            .collect()
    }

    pub fn to_json(&self) -> StalkTableJson {
        let render = |s: &Stalk| -> BTreeMap<i64, Vec<String>> {
            s.iter()
                .map(|(d, labels)| {
                    let mut v = Vec::new();
                    for (l, m) in labels {
                        for _ in 0..*m {
                            v.push(l.to_string());
                        }
                    }
                    (*d, v)
                })
                .collect()
        };
        let renorm = self.renormalized();
        StalkTableJson {
            name: self.name.clone(),
            component: self.component.clone(),
            truncated_above: self.truncated_above.as_ref().map(|b| b.display.clone()),
            notes: self.notes.clone(),
            strata: self
                .entries
                .iter()
                .map(|(b, s)| StratumJson {
                    class: b.display.clone(),
                    shift: b.shift,
                    raw: render(s),
                    renormalized: render(&renorm[b]),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumJson {
    pub class: String,
    pub shift: i64,
    pub raw: BTreeMap<i64, Vec<String>>,
    pub renormalized: BTreeMap<i64, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StalkTableJson {
    pub name: String,
    pub component: String,
    pub truncated_above: Option<String>,
    pub notes: Vec<String>,
    pub strata: Vec<StratumJson>,
}

/// `i_{b!}^ren π`: the single stalk `π ⊗ δ_b^{1/2}` in raw degree `⟨2ρ, ν_b⟩`.
pub fn seed_shriek(b: &BClass, pi: &RepLabel) -> StalkTable {
    let label = if b.basic { pi.clone() } else { pi.clone().twist_by_delta() };
    let mut t = StalkTable::empty(format!("i_{{{}!}}({pi})", b.display), component_of(b));
    t.entries
        .insert(b.clone(), BTreeMap::from([(b.shift, BTreeMap::from([(label, 1)]))]));
    t
}

fn component_of(b: &BClass) -> String {
    format!("κ={}", b.kappa)
}

/// Outcome of one executed cone, with its Euler-characteristic check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeRecord {
    pub name: String,
    pub euler_additive: bool,
}

/// Cofiber of a map `A → B`, computed stratum by stratum.
///
/// On strata listed in `iso_strata` the map is known to be an isomorphism and
/// the stalks must agree; elsewhere `A` and `B` may not share a nonzero degree.
pub fn cone(a: &StalkTable, b: &StalkTable, iso_strata: &[BClass]) -> Result<(StalkTable, ConeRecord)> {
    let mut out = StalkTable::empty(format!("cone({} → {})", a.name, b.name), b.component.clone());
    out.truncated_above = match (&a.truncated_above, &b.truncated_above) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (x, y) => x.clone().or(y.clone()),
    };
    let strata: std::collections::BTreeSet<&BClass> = a.entries.keys().chain(b.entries.keys()).collect();
    for s in strata {
        let empty = Stalk::new();
        let sa = a.entries.get(s).unwrap_or(&empty);
        let sb = b.entries.get(s).unwrap_or(&empty);
        let mut c = if iso_strata.contains(s) {
            if sa != sb {
                return Err(Error::AmbiguousExtension(format!(
                    "{}: declared isomorphism between unequal stalks",
                    s.display
                )));
            }
            Stalk::new()
        } else {
            if let Some(d) = sa.keys().find(|d| sb.contains_key(d)) {
                return Err(Error::AmbiguousExtension(format!(
                    "{} in degree {d}: both {} and {} are nonzero",
                    s.display, a.name, b.name
                )));
            }
            let mut c = sb.clone();
            for (d, labels) in shifted(sa, 1) {
                let slot = c.entry(d).or_default();
                for (l, m) in labels {
                    *slot.entry(l).or_insert(0) += m;
                }
            }
            c
        };
        clean(&mut c);
        if !c.is_empty() {
            out.entries.insert(s.clone(), c);
        }
    }
    let additive = euler_additive(a, b, &out);
    let record = ConeRecord {
        name: out.name.clone(),
        euler_additive: additive,
    };
    Ok((out, record))
}

/// `χ(C) = χ(B) − χ(A)` at every stratum and label.
pub fn euler_additive(a: &StalkTable, b: &StalkTable, c: &StalkTable) -> bool {
    let (ea, eb, ec) = (a.euler(), b.euler(), c.euler());
    let mut expected: BTreeMap<BClass, BTreeMap<RepLabel, i64>> = eb;
    for (s, labels) in ea {
        let slot = expected.entry(s).or_default();
        for (l, v) in labels {
            *slot.entry(l).or_insert(0) -= v;
        }
    }
    for labels in expected.values_mut() {
        labels.retain(|_, v| *v != 0);
    }
    expected.retain(|_, l| !l.is_empty());
    expected == ec
}

/// Steps of a triangle computation; operands refer to earlier steps.
#[derive(Debug, Clone)]
pub enum Step {
    Seed { b: BClass, pi: RepLabel },
    Cone { from: usize, to: usize, iso_strata: Vec<BClass> },
    Shift { of: usize, by: i64 },
    Rename { of: usize, name: String },
}

#[derive(Debug, Clone, Default)]
pub struct TrianglePlan {
    pub steps: Vec<Step>,
}

/// Executed plan: one table per step plus the cone log.
#[derive(Debug, Clone)]
pub struct PlanResult {
    pub tables: Vec<StalkTable>,
    pub cones: Vec<ConeRecord>,
}

impl TrianglePlan {
    pub fn push(&mut self, step: Step) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }

    pub fn run(&self) -> Result<PlanResult> {
        let mut tables: Vec<StalkTable> = Vec::with_capacity(self.steps.len());
        let mut cones = Vec::new();
        for step in &self.steps {
            let t = match step {
                Step::Seed { b, pi } => seed_shriek(b, pi),
                Step::Cone { from, to, iso_strata } => {
                    let (t, rec) = cone(&tables[*from], &tables[*to], iso_strata)?;
                    cones.push(rec);
                    t
                }
                Step::Shift { of, by } => tables[*of].shift(*by),
                Step::Rename { of, name } => StalkTable {
                    name: name.clone(),
                    ..tables[*of].clone()
                },
            };
            tables.push(t);
        }
        Ok(PlanResult { tables, cones })
    }
}

/// Which family of sheaves to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F,
    Sharp,
    Star,
    Shriek,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f" | "hadal" => Ok(Family::F),
            "sharp" => Ok(Family::Sharp),
            "star" => Ok(Family::Star),
            "shriek" => Ok(Family::Shriek),
            _ => Err(Error::Parse(format!("unknown family `{s}` (f, sharp, star, shriek)"))),
        }
    }
}

/// The `PGL(2)` trivial-parameter family, with memoized plan construction.
#[derive(Debug, Clone)]
pub struct Pgl2Stalks {
    datum: RootDatum,
    plan: TrianglePlan,
    memo: HashMap<(Family, i64, i64), usize>,
}

impl Default for Pgl2Stalks {
    fn default() -> Self {
        Self::new()
    }
}

const UNVERIFIED: &str = "odd component: no reference data, unverified";

impl Pgl2Stalks {
    pub fn new() -> Self {
        Pgl2Stalks {
            datum: RootDatum::preset("PGL(2)").expect("preset exists"),
            plan: TrianglePlan::default(),
            memo: HashMap::new(),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn b(&self, n: i64) -> BClass {
        bmo_trivial(&self.datum, &Coweight(vec![n])).expect("n ≥ 0").b
    }

    /// `π_0 = i_B^G(1)` and `π_n = 1` for `n ≥ 1`.
    pub fn pi(&self, n: i64) -> RepLabel {
        bmo_trivial(&self.datum, &Coweight(vec![n])).expect("n ≥ 0").pi
    }

    fn memoized(&mut self, key: (Family, i64, i64), build: impl FnOnce(&mut Self) -> usize) -> usize {
        if let Some(&id) = self.memo.get(&key) {
            return id;
        }
        let id = build(self);
        self.memo.insert(key, id);
        id
    }

    fn named(&mut self, of: usize, name: String) -> usize {
        self.plan.push(Step::Rename { of, name })
    }

    fn plan_shriek(&mut self, n: i64) -> usize {
        self.memoized((Family::Shriek, n, 0), |s| {
            let (b, pi) = (s.b(n), s.pi(n));
            s.plan.push(Step::Seed { b, pi })
        })
    }

    fn plan_f(&mut self, n: i64) -> usize {
        self.memoized((Family::F, n, 0), |s| {
            let id = if n <= 1 {
                s.plan_shriek(n)
            } else {
                let top = s.plan_shriek(n);
                let low = s.plan_shriek(n - 2);
                let c = s.plan.push(Step::Cone {
                    from: top,
                    to: low,
                    iso_strata: vec![],
                });
                s.plan.push(Step::Shift { of: c, by: -1 })
            };
            s.named(id, format!("F_{n}"))
        })
    }

    fn plan_sharp(&mut self, n: i64) -> usize {
        self.memoized((Family::Sharp, n, 0), |s| {
            let id = if n <= 1 {
                s.plan_shriek(n)
            } else {
                let f = s.plan_f(n);
                let f1 = s.plan.push(Step::Shift { of: f, by: -1 });
                let below = s.plan_sharp(n - 2);
                s.plan.push(Step::Cone {
                    from: f1,
                    to: below,
                    iso_strata: vec![],
                })
            };
            s.named(id, format!("i_{{b_{n}♯}}"))
        })
    }

    fn plan_star(&mut self, n: i64, top: i64) -> usize {
        self.memoized((Family::Star, n, top), |s| {
            let id = if n >= top {
                s.plan_shriek(n)
            } else {
                let above = s.plan_star(n + 2, top);
                let a = s.plan.push(Step::Shift { of: above, by: -1 });
                let f = s.plan_f(n + 2);
                let f1 = s.plan.push(Step::Shift { of: f, by: 1 });
                s.plan.push(Step::Cone {
                    from: a,
                    to: f1,
                    iso_strata: vec![],
                })
            };
            s.named(id, format!("i_{{b_{n}*}}"))
        })
    }

    fn finish(&self, id: usize, n: i64) -> Result<(StalkTable, Vec<ConeRecord>)> {
        let result = self.plan.run()?;
        let mut t = result.tables[id].clone();
        if n % 2 != 0 {
            t.notes.push(UNVERIFIED.to_string());
        }
        Ok((t, result.cones))
    }

    fn check_n(n: i64) -> Result<()> {
        if n < 0 {
            return Err(Error::Parse(format!("n must be nonnegative, got {n}")));
        }
        Ok(())
    }

    pub fn shriek(&mut self, n: i64) -> Result<StalkTable> {
        Self::check_n(n)?;
        let id = self.plan_shriek(n);
        Ok(self.finish(id, n)?.0)
    }

    /// `𝓕_n`, the fiber of `i_{b_n!} π_n → i_{b_{n−2}!} π_{n−2}`.
    pub fn compute_f(&mut self, n: i64) -> Result<StalkTable> {
        Ok(self.compute_f_logged(n)?.0)
    }

    pub fn compute_f_logged(&mut self, n: i64) -> Result<(StalkTable, Vec<ConeRecord>)> {
        Self::check_n(n)?;
        let id = self.plan_f(n);
        self.finish(id, n)
    }

    pub fn compute_sharp(&mut self, n: i64) -> Result<StalkTable> {
        Ok(self.compute_sharp_logged(n)?.0)
    }

    pub fn compute_sharp_logged(&mut self, n: i64) -> Result<(StalkTable, Vec<ConeRecord>)> {
        Self::check_n(n)?;
        let id = self.plan_sharp(n);
        self.finish(id, n)
    }

    /// `i_{b_n*} π_n` from a window whose top stratum is `b_top`; stalks at `b_m`, `m ≤ top`, are exact.
    pub fn compute_star(&mut self, n: i64, top: i64) -> Result<StalkTable> {
        Ok(self.compute_star_logged(n, top)?.0)
    }

    pub fn compute_star_logged(&mut self, n: i64, top: i64) -> Result<(StalkTable, Vec<ConeRecord>)> {
        Self::check_n(n)?;
        let top = if (top - n) % 2 == 0 { top.max(n) } else { (top - 1).max(n) };
        let id = self.plan_star(n, top);
        let (mut t, log) = self.finish(id, n)?;
        t.truncated_above = Some(self.b(top));
        Ok((t, log))
    }

    pub fn compute(&mut self, family: Family, n: i64, window: i64) -> Result<StalkTable> {
        match family {
            Family::F => self.compute_f(n),
            Family::Sharp => self.compute_sharp(n),
            Family::Star => self.compute_star(n, window),
            Family::Shriek => self.shriek(n),
        }
    }
}

/// Per-stratum left-half bound: every nonzero raw degree is at most `⟨2ρ, ν_b⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerversityReport {
    pub strata: Vec<PerversityLine>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerversityLine {
    pub class: String,
    pub max_degree: i64,
    pub bound: i64,
    pub ok: bool,
}

pub fn perversity_check(t: &StalkTable) -> PerversityReport {
    let strata: Vec<PerversityLine> = t
        .entries
        .iter()
        .map(|(b, s)| {
            let max_degree = *s.keys().max().expect("stored stalks are nonempty");
            PerversityLine {
                class: b.display.clone(),
                max_degree,
                bound: b.shift,
                ok: max_degree <= b.shift,
            }
        })
        .collect();
    let ok = strata.iter().all(|l| l.ok);
    PerversityReport { strata, ok }
}

pub fn support_check(t: &StalkTable, allowed: &[BClass]) -> bool {
    t.entries.keys().all(|b| allowed.contains(b))
}
