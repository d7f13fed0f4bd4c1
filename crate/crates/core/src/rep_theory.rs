//! Highest-weight combinatorics for the datum's character lattice.
//!
//! Dimensions via the Weyl product, multiplicities via Freudenthal, tensor
//! products via Klimyk, and filtrations restricted to standard parabolics.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::{RootDatum, Side, Weight};
use crate::Q;

/// An irreducible representation named by its dominant highest weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IrrepLabel {
    pub highest_weight: Weight,
}

impl IrrepLabel {
    pub fn new(datum: &RootDatum, highest_weight: Weight) -> Result<Self> {
        check_dominant(datum, &highest_weight)?;
        Ok(IrrepLabel { highest_weight })
    }
}

/// Weights with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightMultiset(#[serde(serialize_with = "weight_pairs")] pub BTreeMap<Weight, u64>);

#[derive(Serialize)]
struct WeightCount<'a> {
    weight: &'a Weight,
    multiplicity: u64,
}

/// Weight-keyed maps serialize as lists, since JSON keys must be strings.
fn weight_pairs<S: serde::Serializer>(m: &BTreeMap<Weight, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|(weight, &multiplicity)| WeightCount { weight, multiplicity }))
}

impl WeightMultiset {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Weight, u64)> {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    fn add(&mut self, w: Weight, m: u64) {
        *self.0.entry(w).or_insert(0) += m;
    }
}

/// A multiset of irreducibles.
pub type Decomposition = BTreeMap<Weight, u64>;

fn check_dominant(datum: &RootDatum, w: &Weight) -> Result<()> {
    if w.0.len() != datum.rank() {
        return Err(Error::DimensionMismatch(format!(
            "weight {w} has length {}, datum has rank {}",
            w.0.len(),
            datum.rank()
        )));
    }
    if !datum.is_dominant(w) {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok(())
}

/// Weyl dimension formula `Π ⟨λ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩`.
pub fn weyl_dim(datum: &RootDatum, lambda: &Weight) -> Result<u64> {
    check_dominant(datum, lambda)?;
    let shifted: Vec<i64> = lambda
        .0
        .iter()
        .zip(datum.two_rho())
        .map(|(l, r)| 2 * l + r)
        .collect();
    let dim = datum
        .positive_roots()
        .iter()
        .fold(Ratio::<i128>::one(), |acc, b| {
            let num = datum.pair(&shifted, &b.coroot);
            let den = datum.pair(datum.two_rho(), &b.coroot);
            acc * Ratio::new(i128::from(num), i128::from(den))
        });
    debug_assert!(dim.is_integer());
    Ok(dim.to_integer() as u64)
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `λ − μ` as nonnegative integer root coordinates, when `μ ≤ λ`.
fn depth_coords(datum: &RootDatum, lambda: &[i64], mu: &[i64]) -> Option<Vec<i64>> {
    let d: Vec<Q> = sub(lambda, mu).into_iter().map(Q::from_integer).collect();
    let c = datum.root_coordinates(&d)?;
    c.iter()
        .all(|x| x.is_integer() && *x >= Q::zero())
        .then(|| c.iter().map(Q::to_integer).collect())
}

/// The W-invariant form `(x, y) = Σ_{β>0} ⟨x, β^∨⟩⟨y, β^∨⟩`.
fn form(datum: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
    datum
        .positive_roots()
        .iter()
        .map(|b| datum.pair(x, &b.coroot) * datum.pair(y, &b.coroot))
        .sum()
}

/// All weights of `V_λ`: lattice points `μ` with `dom(μ) ≤ λ`.
fn weight_support(datum: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Vec<i64>> = HashSet::from([lambda.0.clone()]);
    let mut queue = VecDeque::from([lambda.0.clone()]);
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for a in datum.simple_roots() {
            let next = sub(&mu, a);
            if seen.contains(&next) {
                continue;
            }
            let dom = datum.dom(&Weight(next.clone()));
            if depth_coords(datum, &lambda.0, &dom.0).is_some() {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        out.push(Weight(mu));
    }
    out
}

/// Weight multiplicities of `V_λ` by Freudenthal's recursion.
pub fn weight_multiplicities(datum: &RootDatum, lambda: &Weight) -> Result<WeightMultiset> {
    check_dominant(datum, lambda)?;
    let support = weight_support(datum, lambda);
    let members: HashSet<&Weight> = support.iter().collect();

    let mut dominant: Vec<(i64, &Weight)> = support
        .iter()
        .filter(|w| datum.is_dominant(*w))
        .map(|w| {
            let h = depth_coords(datum, &lambda.0, &w.0).expect("support is below λ");
            (h.iter().sum(), w)
        })
        .collect();
    dominant.sort();

    let lam_shift: Vec<i64> = add(&lambda.0, &lambda.0);
    let lam_shift = add(&lam_shift, datum.two_rho());
    let mut dom_mult: BTreeMap<Weight, i64> = BTreeMap::new();
    for (depth, mu) in dominant {
        if depth == 0 {
            dom_mult.insert(mu.clone(), 1);
            continue;
        }
        let mut acc = 0i64;
        for b in datum.positive_roots() {
            let mut nu = add(&mu.0, &b.root);
            while members.contains(&Weight(nu.clone())) {
                let m = dom_mult[&datum.dom(&Weight(nu.clone()))];
                acc += form(datum, &nu, &b.root) * m;
                nu = add(&nu, &b.root);
            }
        }
        // (λ+ρ, λ+ρ) − (μ+ρ, μ+ρ) = (λ−μ, λ+μ+2ρ)
        let denom = form(datum, &sub(&lambda.0, &mu.0), &add(&sub(&lam_shift, &lambda.0), &mu.0));
        let num = 2 * acc;
        debug_assert!(denom > 0 && num % denom == 0);
        dom_mult.insert(mu.clone(), num / denom);
    }

    let mut out = WeightMultiset::default();
    for w in support {
        let m = dom_mult[&datum.dom(&w)];
        if m > 0 {
            out.add(w, m as u64);
        }
    }
    Ok(out)
}

/// `V_λ|_T`, the weight multiset of the restriction to the maximal torus.
pub fn restrict_to_torus(datum: &RootDatum, lambda: &Weight) -> Result<WeightMultiset> {
    weight_multiplicities(datum, lambda)
}

/// Decomposes `V_λ ⊗ V_μ` by Klimyk's formula.
pub fn tensor_decompose(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    check_dominant(datum, lambda)?;
    let weights = weight_multiplicities(datum, mu)?;
    let mut signed: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in weights.iter() {
        let shifted: Vec<i64> = lambda
            .0
            .iter()
            .zip(&nu.0)
            .zip(datum.two_rho())
            .map(|((l, n), r)| 2 * (l + n) + r)
            .collect();
        let (dom, w) = datum.dominant_rep(&Weight(shifted));
        if datum
            .simple_pairings(Side::Character, &dom.0)
            .contains(&0)
        {
            continue;
        }
        let hw: Vec<i64> = sub(&dom.0, datum.two_rho()).into_iter().map(|x| x / 2).collect();
        *signed.entry(Weight(hw)).or_insert(0) += w.sign() * m as i64;
    }
    let mut out = Decomposition::new();
    for (w, c) in signed {
        match c {
            0 => {}
            c if c > 0 => {
                out.insert(w, c as u64);
            }
            c => unreachable!("Klimyk produced negative multiplicity {c} at {w}"),
        }
    }
    Ok(out)
}

/// One graded piece of a parabolic filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationLevel {
    pub level: i64,
    pub dim: u64,
    #[serde(serialize_with = "weight_pairs")]
    pub levi_irreps: Decomposition,
    pub weights: WeightMultiset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviFiltration {
    pub levi: Vec<usize>,
    /// Integral cocharacter whose pairing defines the levels.
    pub grading_cocharacter: Vec<i64>,
    pub order: &'static str,
    pub levels: Vec<FiltrationLevel>,
}

/// The primitive integral multiple of the central cocharacter of the Levi on `levi`:
/// zero on the roots in `levi`, positive and equal on the other simple roots.
pub fn levi_grading(datum: &RootDatum, levi: &[usize]) -> Result<Vec<i64>> {
    datum.levi(levi)?;
    let targets: Vec<Q> = (0..datum.semisimple_rank())
        .map(|i| if levi.contains(&i) { Q::zero() } else { Q::one() })
        .collect();
    let c = datum.cocharacter_with_pairings(&targets);
    let n = c.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    Ok(c.iter().map(|x| (x * Q::from_integer(n)).to_integer()).collect())
}

/// Peels Levi irreducibles off a weight multiset, highest Levi-height first.
pub fn peel_irreducibles(levi: &RootDatum, weights: &WeightMultiset) -> Result<Decomposition> {
    let mut rest: BTreeMap<Weight, i64> = weights.iter().map(|(w, m)| (w.clone(), m as i64)).collect();
    let mut out = Decomposition::new();
    while let Some(top) = rest
        .iter()
        .filter(|(_, &m)| m != 0)
        .max_by(|(a, _), (b, _)| {
            levi.weight_height(&a.0)
                .cmp(&levi.weight_height(&b.0))
                .then_with(|| a.cmp(b))
        })
        .map(|(w, _)| w.clone())
    {
        let m = rest[&top];
        if m < 0 || !levi.is_dominant(&top) {
            return Err(Error::DimensionMismatch(format!(
                "weight multiset is not a character: leftover {m} at {top}"
            )));
        }
        for (w, k) in weight_multiplicities(levi, &top)?.iter() {
            *rest.entry(w.clone()).or_insert(0) -= m * k as i64;
        }
        rest.retain(|_, v| *v != 0);
        out.insert(top, m as u64);
    }
    Ok(out)
}

/// Grades `V_λ` by the central cocharacter of the standard Levi on `levi` and
/// decomposes each level into Levi irreducibles.
///
/// Levels are listed in filtration order: the top level (a subrepresentation
/// for the standard parabolic) first, then decreasing pairing.
pub fn parabolic_filtration(datum: &RootDatum, lambda: &Weight, levi: &[usize]) -> Result<LeviFiltration> {
    check_dominant(datum, lambda)?;
    let levi_datum = datum.levi(levi)?;
    let c = levi_grading(datum, levi)?;
    let mut graded: BTreeMap<i64, WeightMultiset> = BTreeMap::new();
    for (w, m) in weight_multiplicities(datum, lambda)?.iter() {
        graded
            .entry(datum.pair(&w.0, &c))
            .or_default()
            .add(w.clone(), m);
    }
    let mut levels = Vec::with_capacity(graded.len());
    for (level, weights) in graded.into_iter().rev() {
        levels.push(FiltrationLevel {
            level,
            dim: weights.total(),
            levi_irreps: peel_irreducibles(&levi_datum, &weights)?,
            weights,
        });
    }
    let mut sorted = levi.to_vec();
    sorted.sort_unstable();
    Ok(LeviFiltration {
        levi: sorted,
        grading_cocharacter: c,
        order: "decreasing pairing (filtration order)",
        levels,
    })
}

/// Simple root indices whose root is long (or all of them for simply-laced components).
pub fn long_simple_roots(datum: &RootDatum) -> Vec<usize> {
    let len: Vec<i64> = datum
        .simple_roots()
        .iter()
        .map(|a| form(datum, a, a))
        .collect();
    (0..len.len())
        .filter(|&i| {
            datum
                .dynkin_components(&(0..len.len()).collect::<Vec<_>>())
                .iter()
                .find(|c| c.contains(&i))
                .is_some_and(|c| c.iter().all(|&j| len[j] <= len[i]))
        })
        .collect()
}

/// Row-sum check helper used by tests: `(λ, μ) ↦ Σ mult · dim` of a decomposition.
pub fn decomposition_dim(datum: &RootDatum, dec: &Decomposition) -> Result<u64> {
    dec.iter()
        .map(|(w, m)| weyl_dim(datum, w).map(|d| d * m))
        .sum()
}
