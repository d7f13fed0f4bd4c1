//! Pairs `(b, π)` attached to computable parameters, and Hecke operators on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kottwitz::{self, BClass, Pi1};
use crate::labels::{GaloisMonomial, InductionBlock, RepLabel};
use crate::parameters::{is_generous, ToralParameter};
use crate::rep_theory;
use crate::root_data::{Coweight, RationalCoweight, RootDatum, Weight};

/// The symbol `[i_{b!}^ren π]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AtomicClass {
    pub b: BClass,
    pub pi: RepLabel,
}

impl fmt::Display for AtomicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b, self.pi)
    }
}

fn trivial_block(group: String, rank: usize) -> InductionBlock {
    InductionBlock {
        group,
        rank,
        inducing: vec![RepLabel::Trivial; rank.max(1)],
    }
}

/// Levi factors of the standard Levi on `levi`, as display blocks with trivial inducing data.
fn levi_blocks(datum: &RootDatum, levi: &[usize]) -> Vec<InductionBlock> {
    let is_gl = datum.preset_name().is_some_and(|n| n.starts_with("GL("));
    if is_gl {
        // runs of coordinates joined by the roots e_i − e_{i+1} in the Levi
        let mut blocks = Vec::new();
        let mut size = 1;
        for i in 0..datum.rank() {
            if i + 1 < datum.rank() && levi.contains(&i) {
                size += 1;
            } else {
                blocks.push(trivial_block(format!("GL{size}"), size));
                size = 1;
            }
        }
        return blocks;
    }
    let mut blocks: Vec<InductionBlock> = datum
        .dynkin_components(levi)
        .into_iter()
        .map(|comp| {
            let names: Vec<String> = comp.iter().map(|i| format!("α{}", i + 1)).collect();
            trivial_block(format!("M[{}]", names.join(",")), comp.len() + 1)
        })
        .collect();
    blocks.push(trivial_block("T".into(), 1));
    blocks
}

/// `(b_λ, π_λ)` for the trivial parameter: `π_λ = i_B^{G_{b_λ}}(1)`.
pub fn bmo_trivial(datum: &RootDatum, lambda: &Coweight) -> Result<AtomicClass> {
    if lambda.0.len() != datum.rank() {
        return Err(Error::DimensionMismatch(format!("λ={lambda} has the wrong length")));
    }
    if !datum.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let b = kottwitz::bclass_of_cocharacter(datum, lambda)?;
    let pi = if b.levi.is_empty() {
        RepLabel::Trivial
    } else if b.levi.len() == datum.semisimple_rank() {
        RepLabel::NormalizedInduction {
            blocks: vec![trivial_block("G".into(), datum.rank().max(2))],
        }
    } else {
        RepLabel::PiLambda {
            lambda: lambda.0.clone(),
            blocks: levi_blocks(datum, &b.levi),
        }
    };
    Ok(AtomicClass { b, pi })
}

fn require_generous(phi: &ToralParameter) -> Result<()> {
    if is_generous(phi) {
        Ok(())
    } else {
        Err(Error::NotGenerous(phi.to_string()))
    }
}

/// `(b_j, π_j)` for a generous toral parameter of `GL(n)` and `j ∈ Zⁿ`.
pub fn bmo_generous_toral(phi: &ToralParameter, j: &[i64]) -> Result<AtomicClass> {
    require_generous(phi)?;
    let n = phi.n();
    if j.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "j has length {} but φ has {n} characters",
            j.len()
        )));
    }
    let datum = RootDatum::preset(&format!("GL({n})"))?;
    generous_class(&datum, &Pi1::new(&datum), phi, j)
}

fn generous_class(datum: &RootDatum, pi1: &Pi1, phi: &ToralParameter, j: &[i64]) -> Result<AtomicClass> {
    let mut sorted = j.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let b = kottwitz::validate_with(
        datum,
        pi1,
        &RationalCoweight::from_integers(&sorted),
        &pi1.class_of(&sorted),
    )?;
    let mut slopes = sorted.clone();
    slopes.dedup();
    let single = slopes.len() == 1;
    let blocks = slopes
        .iter()
        .map(|&s| {
            let chars: Vec<RepLabel> = j
                .iter()
                .zip(&phi.chars)
                .filter(|(x, _)| **x == s)
                .map(|(_, c)| RepLabel::chr(c.clone()))
                .collect();
            let m = chars.len();
            InductionBlock {
                group: if single && m > 1 { "G".into() } else { format!("GL{m}") },
                rank: m,
                inducing: chars,
            }
        })
        .collect();
    Ok(AtomicClass {
        b,
        pi: RepLabel::NormalizedInduction { blocks },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeTerm {
    pub input: AtomicClass,
    pub rep: Weight,
    pub weight: Vec<i64>,
    pub output: AtomicClass,
    pub monomial: GaloisMonomial,
    pub multiplicity: u64,
}

/// `T_V [(b_j, π_j)] = ⊕_{a ∈ wt(V)} (b_{j+a}, π_{j+a}) ⊠ Π χ_i^{a_i}`.
pub fn hecke_generous(phi: &ToralParameter, j: &[i64], v: &Weight) -> Result<Vec<HeckeTerm>> {
    require_generous(phi)?;
    let n = phi.n();
    let datum = RootDatum::preset(&format!("GL({n})"))?;
    let pi1 = Pi1::new(&datum);
    let input = bmo_generous_toral(phi, j)?;
    let weights = rep_theory::weight_multiplicities(&datum.dual(), v)?;
    let mut out = Vec::with_capacity(weights.0.len());
    for (a, m) in weights.iter().rev() {
        let shifted: Vec<i64> = j.iter().zip(&a.0).map(|(x, y)| x + y).collect();
        out.push(HeckeTerm {
            input: input.clone(),
            rep: v.clone(),
            weight: a.0.clone(),
            output: generous_class(&datum, &pi1, phi, &shifted)?,
            monomial: GaloisMonomial::from_exponents(&phi.chars, &a.0),
            multiplicity: m,
        });
    }
    Ok(out)
}

/// Sums multiplicities of equal `(output, monomial)` pairs.
pub fn hecke_multiset(terms: &[HeckeTerm]) -> BTreeMap<(AtomicClass, GaloisMonomial), u64> {
    let mut out = BTreeMap::new();
    for t in terms {
        *out.entry((t.output.clone(), t.monomial.clone())).or_insert(0) += t.multiplicity;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigensheaf {
    pub parameter: ToralParameter,
    pub window: i64,
    pub truncated: bool,
    pub terms: Vec<(AtomicClass, u64)>,
}

/// The window `|j_i| ≤ window` of `𝓕_φ = ⊕ i_{b!}^ren π`, each with multiplicity `dim ρ = 1`.
pub fn eigensheaf_multiset(phi: &ToralParameter, window: i64) -> Result<Eigensheaf> {
    require_generous(phi)?;
    let n = phi.n();
    let datum = RootDatum::preset(&format!("GL({n})"))?;
    let pi1 = Pi1::new(&datum);
    let mut js: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        js = js
            .into_iter()
            .flat_map(|j| {
                (-window..=window).map(move |x| {
                    let mut j = j.clone();
                    j.push(x);
                    j
                })
            })
            .collect();
    }
    let terms = js
        .iter()
        .map(|j| generous_class(&datum, &pi1, phi, j).map(|c| (c, 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Eigensheaf {
        parameter: phi.clone(),
        window,
        truncated: true,
        terms,
    })
}

/// Parses `1,0,-1` into an integer vector.
pub fn parse_int_vec(text: &str) -> Result<Vec<i64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer vector: `{text}`")))
        })
        .collect()
}
