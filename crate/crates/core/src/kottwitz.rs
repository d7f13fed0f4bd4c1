//! The Kottwitz set `B(G)` of a split group, as validated `(ν, κ)` pairs.
//!
//! `π₁(G) = X_*(T) / ⟨coroots⟩` is put in normal form with a Smith
//! decomposition of the coroot matrix: torsion coordinates are residues
//! modulo the nontrivial invariant factors and the free coordinates come from
//! the Hermite basis of the annihilator of the coroots.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::poset::Poset;
use crate::root_data::{Coweight, RationalCoweight, RootDatum};
use crate::{fmt_int_vec, parse_q, Q};

/// An element of `π₁(G)`: residues modulo `moduli`, then free coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KottwitzClass {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

impl KottwitzClass {
    pub fn coords(&self) -> Vec<i64> {
        self.torsion.iter().chain(&self.free).copied().collect()
    }
}

impl fmt::Display for KottwitzClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_int_vec(&self.coords()))
    }
}

/// Normal-form data for `π₁(G)`.
#[derive(Debug, Clone)]
pub struct Pi1 {
    moduli: Vec<i64>,
    torsion_rows: IMat,
    free_rows: IMat,
    // inverse of the stacked transform; columns lift class coordinates to X_*
    lift: IMat,
    // positions of torsion rows inside the full transform
    layout: Vec<Option<usize>>,
}

impl Pi1 {
    pub fn new(datum: &RootDatum) -> Self {
        let r = datum.rank();
        let s = datum.semisimple_rank();
        // columns are the simple coroots
        let c: IMat = (0..r)
            .map(|k| datum.simple_coroots().iter().map(|v| v[k]).collect())
            .collect();
        let smith = linalg::smith_normal_form(&c);
        let mut transform: IMat = smith.left[..s].to_vec();
        let free_rows = linalg::hermite_rows(&smith.left[s..]);
        transform.extend(free_rows.iter().cloned());
        let lift = linalg::inverse_unimodular(&transform).expect("Smith transform is unimodular");
        let mut moduli = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut layout = Vec::new();
        for k in 0..s {
            let d = smith.invariants[k];
            if d > 1 {
                layout.push(Some(moduli.len()));
                moduli.push(d);
                torsion_rows.push(smith.left[k].clone());
            } else {
                layout.push(None);
            }
        }
        Pi1 {
            moduli,
            torsion_rows,
            free_rows,
            lift,
            layout,
        }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn free_rank(&self) -> usize {
        self.free_rows.len()
    }

    pub fn class_of(&self, y: &[i64]) -> KottwitzClass {
        KottwitzClass {
            torsion: self
                .torsion_rows
                .iter()
                .zip(&self.moduli)
                .map(|(row, &d)| linalg::dot(row, y).rem_euclid(d))
                .collect(),
            free: self.free_rows.iter().map(|row| linalg::dot(row, y)).collect(),
        }
    }

    /// Free coordinates of a rational cocharacter (its image in `π₁(G) ⊗ Q`).
    pub fn rational_image(&self, nu: &[Q]) -> Vec<Q> {
        self.free_rows.iter().map(|row| linalg::dot_q(row, nu)).collect()
    }

    /// A representative in `X_*` of the class.
    pub fn representative(&self, k: &KottwitzClass) -> Vec<i64> {
        let mut coords = Vec::with_capacity(self.lift.len());
        for slot in &self.layout {
            coords.push(slot.map_or(0, |t| k.torsion[t]));
        }
        coords.extend_from_slice(&k.free);
        linalg::mat_vec(&self.lift, &coords)
    }

    /// Parses class coordinates (torsion residues, then free coordinates).
    pub fn parse_class(&self, coords: &[i64]) -> Result<KottwitzClass> {
        let t = self.moduli.len();
        if coords.len() != t + self.free_rank() {
            return Err(Error::DimensionMismatch(format!(
                "κ needs {} coordinates ({} torsion, {} free), got {}",
                t + self.free_rank(),
                t,
                self.free_rank(),
                coords.len()
            )));
        }
        Ok(KottwitzClass {
            torsion: coords[..t]
                .iter()
                .zip(&self.moduli)
                .map(|(x, d)| x.rem_euclid(*d))
                .collect(),
            free: coords[t..].to_vec(),
        })
    }

    /// Every class whose free part is `free`.
    pub fn classes_with_free(&self, free: &[i64]) -> Vec<KottwitzClass> {
        let mut torsions: Vec<Vec<i64>> = vec![Vec::new()];
        for &d in &self.moduli {
            torsions = torsions
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        torsions
            .into_iter()
            .map(|torsion| KottwitzClass {
                torsion,
                free: free.to_vec(),
            })
            .collect()
    }
}

/// A validated element of `B(G)`.
#[derive(Debug, Clone, Serialize)]
pub struct BClass {
    pub newton: RationalCoweight,
    pub kappa: KottwitzClass,
    pub levi: Vec<usize>,
    pub shift: i64,
    pub basic: bool,
    pub display: String,
    /// The modulus character twist carried symbolically.
    pub delta: String,
}

impl PartialEq for BClass {
    fn eq(&self, other: &Self) -> bool {
        self.newton == other.newton && self.kappa == other.kappa
    }
}

impl Eq for BClass {}

impl PartialOrd for BClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.newton
            .cmp(&other.newton)
            .then_with(|| self.kappa.cmp(&other.kappa))
    }
}

impl std::hash::Hash for BClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.newton.hash(state);
        self.kappa.hash(state);
    }
}

impl fmt::Display for BClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

fn display_name(datum: &RootDatum, pi1: &Pi1, nu: &RationalCoweight, kappa: &KottwitzClass) -> String {
    let integral = nu.to_integral();
    if datum.preset_name() == Some("PGL(2)") {
        return match integral.as_deref() {
            Some([0]) if kappa.torsion == [1] => "b_{1/2}".to_string(),
            Some([n]) => format!("b_{n}"),
            _ => unreachable!("valid PGL(2) classes have integral ν"),
        };
    }
    match integral {
        Some(y) if pi1.class_of(&y) == *kappa => format!("b_{}", fmt_int_vec(&y)),
        _ => format!("ν={nu};κ={kappa}"),
    }
}

/// Checks `(ν, κ)` against dominance, the rational image of `κ`, and integrality on the centralizer Levi.
pub fn validate_bclass(datum: &RootDatum, nu: &RationalCoweight, kappa: &KottwitzClass) -> Result<BClass> {
    validate_with(datum, &Pi1::new(datum), nu, kappa)
}

pub fn validate_with(datum: &RootDatum, pi1: &Pi1, nu: &RationalCoweight, kappa: &KottwitzClass) -> Result<BClass> {
    if nu.0.len() != datum.rank() {
        return Err(Error::DimensionMismatch(format!(
            "ν has length {}, datum has rank {}",
            nu.0.len(),
            datum.rank()
        )));
    }
    if kappa.torsion.len() != pi1.moduli().len() || kappa.free.len() != pi1.free_rank() {
        return Err(Error::DimensionMismatch(format!("κ {kappa} has the wrong shape")));
    }
    if kappa.torsion.iter().zip(pi1.moduli()).any(|(t, d)| *t < 0 || t >= d) {
        return Err(Error::DimensionMismatch(format!("κ {kappa} residues are not reduced")));
    }
    if !datum.is_dominant(nu) {
        return Err(Error::NotDominant(nu.to_string()));
    }
    let image = pi1.rational_image(&nu.0);
    let expected: Vec<Q> = kappa.free.iter().map(|&x| Q::from_integer(x)).collect();
    if image != expected {
        return Err(Error::KappaMismatch(format!(
            "ν={nu} has central image {} but κ={kappa}",
            crate::fmt_q_vec(&image)
        )));
    }
    let pairings = datum.simple_pairings(crate::Side::Cocharacter, &nu.0);
    let levi: Vec<usize> = (0..pairings.len()).filter(|&i| pairings[i].is_zero()).collect();
    let rep = pi1.representative(kappa);
    let diff: Vec<Q> = nu.0.iter().zip(&rep).map(|(a, &b)| a - Q::from_integer(b)).collect();
    let coeffs = datum
        .coroot_coordinates(&diff)
        .expect("equal central images put ν − κ in the coroot span");
    if let Some(j) = (0..coeffs.len()).find(|j| !levi.contains(j) && !coeffs[*j].is_integer()) {
        return Err(Error::NotIntegral(format!(
            "ν={nu}, κ={kappa}: coefficient {} of α{}^∨ is not integral",
            coeffs[j],
            j + 1
        )));
    }
    let shift = datum.pair_q(datum.two_rho(), &nu.0);
    if !shift.is_integer() {
        return Err(Error::NonIntegralShift(format!("⟨2ρ, {nu}⟩ = {shift}")));
    }
    let basic = levi.len() == datum.semisimple_rank();
    Ok(BClass {
        display: display_name(datum, pi1, nu, kappa),
        newton: nu.clone(),
        kappa: kappa.clone(),
        levi,
        shift: shift.to_integer(),
        basic,
        delta: if basic { "1".into() } else { "δ^{1/2}".into() },
    })
}

/// The class `b_λ` of an integral dominant cocharacter.
pub fn bclass_of_cocharacter(datum: &RootDatum, lambda: &Coweight) -> Result<BClass> {
    let pi1 = Pi1::new(datum);
    validate_with(
        datum,
        &pi1,
        &RationalCoweight::from_integers(&lambda.0),
        &pi1.class_of(&lambda.0),
    )
}

/// `{i : ⟨α_i, ν_b⟩ = 0}`.
pub fn centralizer_levi(b: &BClass) -> &[usize] {
    &b.levi
}

/// `⟨2ρ_G, ν_b⟩`.
pub fn shift(b: &BClass) -> i64 {
    b.shift
}

/// `b ⪯ b′`: same `κ` and `ν_b ≤ ν_{b′}` in the dominance order.
pub fn newton_leq(datum: &RootDatum, b: &BClass, b_prime: &BClass) -> bool {
    b.kappa == b_prime.kappa && datum.coroot_cone_contains(&b.newton, &b_prime.newton)
}

fn farey_values(bound: Q, denom: i64) -> Vec<Q> {
    let mut vals: Vec<Q> = (1..=denom)
        .flat_map(|q| {
            let top = (bound * Q::from_integer(q)).floor().to_integer();
            (-top..=top).map(move |p| Q::new(p, q))
        })
        .collect();
    vals.sort();
    vals.dedup();
    vals
}

/// All valid classes with every `|ν_i| ≤ bound` and denominators at most `denom`, sorted by `(ν, κ)`.
pub fn enumerate_bg(datum: &RootDatum, bound: Q, denom: i64) -> Vec<BClass> {
    let pi1 = Pi1::new(datum);
    let vals = farey_values(bound.abs(), denom.max(1));
    let mut points: Vec<Vec<Q>> = vec![Vec::new()];
    for _ in 0..datum.rank() {
        points = points
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut p = p.clone();
                    p.push(*v);
                    p
                })
            })
            .collect();
    }
    let mut out: Vec<BClass> = points
        .into_iter()
        .map(RationalCoweight)
        .filter(|nu| datum.is_dominant(nu))
        .flat_map(|nu| {
            let image = pi1.rational_image(&nu.0);
            let free: Option<Vec<i64>> = image
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect();
            free.map(|f| pi1.classes_with_free(&f))
                .unwrap_or_default()
                .into_iter()
                .filter_map(|k| validate_with(datum, &pi1, &nu, &k).ok())
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

pub type StrataPoset = Poset<BClass>;

pub fn strata_poset(datum: &RootDatum, classes: Vec<BClass>) -> StrataPoset {
    let mut classes = classes;
    classes.sort();
    classes.dedup();
    Poset::from_relation(classes, |a, b| newton_leq(datum, a, b))
}

/// Classes `b′` in the poset with `b ⪯ b′` (the closure of the stratum of `b`).
pub fn specializations<'a>(b: &BClass, poset: &'a StrataPoset) -> Vec<&'a BClass> {
    match poset.position(|x| x == b) {
        Some(i) => poset.up_set(i).into_iter().map(|j| &poset.nodes()[j]).collect(),
        None => Vec::new(),
    }
}

/// Classes `b′` in the poset with `b′ ⪯ b`.
pub fn generizations<'a>(b: &BClass, poset: &'a StrataPoset) -> Vec<&'a BClass> {
    match poset.position(|x| x == b) {
        Some(i) => poset.down_set(i).into_iter().map(|j| &poset.nodes()[j]).collect(),
        None => Vec::new(),
    }
}

/// Parses `ν@κ`, e.g. `1/2,1/2@1`. Without `@κ` the class of an integral `ν` is used.
pub fn parse_bclass(datum: &RootDatum, text: &str) -> Result<BClass> {
    let pi1 = Pi1::new(datum);
    let (nu_text, kappa_text) = match text.split_once('@') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let nu = RationalCoweight(
        nu_text
            .split(',')
            .map(parse_q)
            .collect::<Result<Vec<_>>>()?,
    );
    let kappa = match kappa_text {
        Some(k) => {
            let coords = if k.trim().is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad κ `{k}`"))))
                    .collect::<Result<Vec<_>>>()?
            };
            pi1.parse_class(&coords)?
        }
        None => {
            let y = nu.to_integral().ok_or_else(|| {
                Error::Parse(format!("ν={nu} is not integral, so κ must be given as ν@κ"))
            })?;
            if y.len() != datum.rank() {
                return Err(Error::DimensionMismatch(format!("ν={nu} has the wrong length")));
            }
            pi1.class_of(&y)
        }
    };
    validate_with(datum, &pi1, &nu, &kappa)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(name: &str) -> RootDatum {
        RootDatum::preset(name).unwrap()
    }

    fn nu(v: &[(i64, i64)]) -> RationalCoweight {
        RationalCoweight(v.iter().map(|&(a, b)| Q::new(a, b)).collect())
    }

    #[test]
    fn pi1_shapes() {
        let gl3 = Pi1::new(&d("GL(3)"));
        assert!(gl3.moduli().is_empty());
        assert_eq!(gl3.free_rank(), 1);
        assert_eq!(gl3.class_of(&[2, 1, 0]).free, vec![3]);

        let pgl3 = Pi1::new(&d("PGL(3)"));
        assert_eq!(pgl3.moduli(), &[3]);
        let sl3 = Pi1::new(&d("SL(3)"));
        assert!(sl3.moduli().is_empty() && sl3.free_rank() == 0);

        let gsp = Pi1::new(&d("GSp(4)"));
        assert_eq!(gsp.class_of(&[0, 0, 1]).free, vec![1]);
        assert!(gsp.moduli().is_empty());

        let pgl2 = Pi1::new(&d("PGL(2)"));
        assert_eq!(pgl2.class_of(&[5]).torsion, vec![1]);
        for k in [0, 1] {
            let class = pgl2.parse_class(&[k]).unwrap();
            assert_eq!(pgl2.class_of(&pgl2.representative(&class)), class);
        }
    }

    #[test]
    fn gl2_validation() {
        let g = d("GL(2)");
        let pi1 = Pi1::new(&g);
        let one = pi1.parse_class(&[1]).unwrap();
        let zero = pi1.parse_class(&[0]).unwrap();
        let b = validate_bclass(&g, &nu(&[(1, 2), (1, 2)]), &one).unwrap();
        assert!(b.basic);
        assert_eq!(b.shift, 0);
        assert!(matches!(
            validate_bclass(&g, &nu(&[(1, 2), (-1, 2)]), &zero),
            Err(Error::NotIntegral(_))
        ));
        assert!(matches!(
            validate_bclass(&g, &nu(&[(1, 2), (1, 2)]), &zero),
            Err(Error::KappaMismatch(_))
        ));
        assert!(matches!(
            validate_bclass(&g, &nu(&[(0, 1), (1, 1)]), &one),
            Err(Error::NotDominant(_))
        ));
        for (m, n) in [(3, 1), (2, 2), (0, -4)] {
            let k = pi1.parse_class(&[m + n]).unwrap();
            let b = validate_bclass(&g, &nu(&[(m, 1), (n, 1)]), &k).unwrap();
            assert_eq!(b.shift, m - n);
        }
    }

    #[test]
    fn pgl2_classes() {
        let g = d("PGL(2)");
        let all = enumerate_bg(&g, Q::from_integer(4), 2);
        let names: Vec<&str> = all.iter().map(|b| b.display.as_str()).collect();
        assert_eq!(names, vec!["b_0", "b_{1/2}", "b_1", "b_2", "b_3", "b_4"]);
        for b in &all[2..] {
            assert!(b.levi.is_empty());
            assert_eq!(b.shift, b.newton.to_integral().unwrap()[0]);
        }
        let p = strata_poset(&g, all);
        assert_eq!(p.minimal().len(), 2);
        assert!(p.check_axioms().ok());
        let b0 = &p.nodes()[0];
        let names: Vec<&str> = specializations(b0, &p).iter().map(|b| b.display.as_str()).collect();
        assert_eq!(names, vec!["b_0", "b_2", "b_4"]);
    }

    #[test]
    fn gl1_is_cocharacters() {
        let g = d("GL(1)");
        let all = enumerate_bg(&g, Q::from_integer(2), 1);
        assert_eq!(all.len(), 5);
        for b in all {
            assert_eq!(b.kappa.free, b.newton.to_integral().unwrap());
        }
    }

    #[test]
    fn gl2_window() {
        let g = d("GL(2)");
        let all = enumerate_bg(&g, Q::from_integer(1), 2);
        for (v, k) in [
            (nu(&[(1, 1), (0, 1)]), 1),
            (nu(&[(1, 2), (1, 2)]), 1),
            (nu(&[(0, 1), (0, 1)]), 0),
            (nu(&[(1, 1), (-1, 1)]), 0),
            (nu(&[(1, 1), (1, 1)]), 2),
        ] {
            assert!(all.iter().any(|b| b.newton == v && b.kappa.free == vec![k]), "{v}");
        }
        assert!(!all.iter().any(|b| b.newton == nu(&[(1, 2), (-1, 2)])));
    }

    #[test]
    fn order_examples() {
        let g = d("GL(2)");
        let basic = parse_bclass(&g, "1/2,1/2@1").unwrap();
        let ord = parse_bclass(&g, "1,0").unwrap();
        assert!(newton_leq(&g, &basic, &ord));
        assert!(!newton_leq(&g, &ord, &basic));
        assert!(newton_leq(&g, &ord, &ord));
        let g3 = d("GL(3)");
        let b = parse_bclass(&g3, "1,1,0").unwrap();
        assert_eq!(centralizer_levi(&b), &[0]);
        assert_eq!(shift(&b), 2);
        assert_eq!(b.display, "b_(1,1,0)");
    }

    #[test]
    fn parse_errors() {
        let g = d("GL(2)");
        assert!(matches!(parse_bclass(&g, "1/2,1/2"), Err(Error::Parse(_))));
        assert!(matches!(parse_bclass(&g, "1/2,x@1"), Err(Error::Parse(_))));
        assert!(matches!(parse_bclass(&g, "1,0@1,2"), Err(Error::DimensionMismatch(_))));
    }
}
