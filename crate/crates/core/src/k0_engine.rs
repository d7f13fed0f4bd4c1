//! Grothendieck-group bookkeeping for finite windows of a block.
//!
//! Vectors are finitely supported integer combinations of atomic classes.
//! The γ maps are integer matrices indexed by the window, read off from the
//! Euler characteristics of renormalized stalks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bmo_hecke::{bmo_trivial, AtomicClass};
use crate::error::{Error, Result};
use crate::linalg::{identity, inverse_unimodular, mat_mul, IMat};
use crate::rep_theory::{self, IrrepLabel};
use crate::root_data::{Coweight, RootDatum, Weight};
use crate::stalk_engine::{Pgl2Stalks, StalkTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisTag {
    Shriek,
    Sharp,
    HadalIrreducible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Vector {
    pub basis_tag: BasisTag,
    pub coeffs: BTreeMap<AtomicClass, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K0Term {
    pub class: String,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K0VectorJson {
    pub basis_tag: BasisTag,
    pub terms: Vec<K0Term>,
}

impl K0Vector {
    pub fn zero(basis_tag: BasisTag) -> Self {
        K0Vector {
            basis_tag,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, class: AtomicClass, coeff: i64) {
        let slot = self.coeffs.entry(class.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&class);
        }
    }

    pub fn add_vector(&mut self, other: &K0Vector, scale: i64) {
        for (c, v) in &other.coeffs {
            self.add(c.clone(), scale * v);
        }
    }

    pub fn coeff(&self, class: &AtomicClass) -> i64 {
        self.coeffs.get(class).copied().unwrap_or(0)
    }

    /// Image under the augmentation sending every class to 1.
    pub fn augmentation(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_json(&self) -> K0VectorJson {
        K0VectorJson {
            basis_tag: self.basis_tag,
            terms: self
                .coeffs
                .iter()
                .map(|(c, &coeff)| K0Term {
                    class: c.to_string(),
                    coeff,
                })
                .collect(),
        }
    }
}

impl std::fmt::Display for K0Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, &v)) in self.coeffs.iter().enumerate() {
            match (i, v < 0) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if v.abs() != 1 {
                write!(f, "{}", v.abs())?;
            }
            write!(f, "[{c}]")?;
        }
        Ok(())
    }
}

fn trivial_class(datum: &RootDatum, lambda: &[i64]) -> Result<AtomicClass> {
    bmo_trivial(datum, &Coweight(lambda.to_vec()))
}

/// `Σ_{w∈W} (−1)^{ℓ(w)} [i_{b_{dom(λ+ρ+wρ)}!} π_{dom(λ+ρ+wρ)}]` for `target = λ + 2ρ`.
pub fn alternating_expansion(datum: &RootDatum, target: &Coweight) -> Result<K0Vector> {
    if target.0.len() != datum.rank() {
        return Err(Error::DimensionMismatch(format!("target {target} has the wrong length")));
    }
    let two_rho = Coweight(datum.two_rho_check().to_vec());
    let lambda = Coweight(target.0.iter().zip(&two_rho.0).map(|(t, r)| t - r).collect());
    if !datum.is_dominant(&lambda) {
        return Err(Error::NotInShiftedCone(format!("{target} − 2ρ = {lambda}")));
    }
    let mut out = K0Vector::zero(BasisTag::Shriek);
    for w in datum.weyl_group()? {
        let w_two_rho = datum.act(w, &two_rho);
        // ρ + wρ lies in the coroot lattice, so the halving is exact
        let v: Vec<i64> = lambda
            .0
            .iter()
            .zip(two_rho.0.iter().zip(&w_two_rho.0))
            .map(|(l, (a, b))| l + (a + b) / 2)
            .collect();
        let d = datum.dom(&Coweight(v));
        out.add(trivial_class(datum, &d.0)?, w.sign());
    }
    Ok(out)
}

/// `[V ⊗ A_λ] = Σ_{μ ∈ wt(V)} [A_{dom(λ+μ)}]`, with `V` a representation of the dual group.
pub fn hecke_k0_trivial(datum: &RootDatum, lambda: &Coweight, v: &IrrepLabel) -> Result<K0Vector> {
    if lambda.0.len() != datum.rank() {
        return Err(Error::DimensionMismatch(format!("λ={lambda} has the wrong length")));
    }
    if !datum.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let weights = rep_theory::weight_multiplicities(&datum.dual(), &v.highest_weight)?;
    let mut out = K0Vector::zero(BasisTag::Shriek);
    for (mu, m) in weights.iter() {
        let shifted: Vec<i64> = lambda.0.iter().zip(&mu.0).map(|(a, b)| a + b).collect();
        let d = datum.dom(&Coweight(shifted));
        out.add(trivial_class(datum, &d.0)?, m as i64);
    }
    Ok(out)
}

fn lambda_of(class: &AtomicClass) -> Result<Coweight> {
    class
        .b
        .newton
        .to_integral()
        .map(Coweight)
        .ok_or_else(|| Error::NotIntegral(format!("{} is not of the form b_λ", class.b.display)))
}

/// Linear extension of [`hecke_k0_trivial`] to shriek-basis vectors of the trivial block.
pub fn hecke_k0_apply(datum: &RootDatum, x: &K0Vector, v: &IrrepLabel) -> Result<K0Vector> {
    let mut out = K0Vector::zero(BasisTag::Shriek);
    for (class, &c) in &x.coeffs {
        out.add_vector(&hecke_k0_trivial(datum, &lambda_of(class)?, v)?, c);
    }
    Ok(out)
}

/// Stalk data attached to one class of the window.
#[derive(Debug, Clone)]
pub struct BlockEntry {
    pub class: AtomicClass,
    pub shriek: StalkTable,
    pub sharp: StalkTable,
    pub hadal: Option<StalkTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K0Block {
    pub classes: Vec<String>,
    #[serde(skip)]
    pub atoms: Vec<AtomicClass>,
    pub gamma_shriek: IMat,
    pub gamma_sharp: IMat,
    pub gamma_star: IMat,
    /// Columns are the hadal irreducibles in the shriek basis.
    pub hadal: Option<IMat>,
    /// Stalk classes that fell outside the window.
    pub escaped: Vec<String>,
}

/// Shriek-basis coordinates of a table: `γ*` of its class, which is also its expansion.
fn column(table: &StalkTable, index: &BTreeMap<AtomicClass, usize>, escaped: &mut Vec<String>) -> Vec<i64> {
    let mut col = vec![0; index.len()];
    for (b, labels) in table.renormalized_euler() {
        for (pi, chi) in labels {
            let atom = AtomicClass { b: b.clone(), pi };
            match index.get(&atom) {
                Some(&i) => col[i] += chi,
                None => escaped.push(format!("{} in {}", atom, table.name)),
            }
        }
    }
    col
}

/// Assembles the γ matrices of a trivial-parameter window.
///
/// The window must contain every `b_μ ⪯ b_λ` (μ dominant) for each `b_λ` it contains.
pub fn build_block(datum: &RootDatum, entries: &[BlockEntry]) -> Result<K0Block> {
    let atoms: Vec<AtomicClass> = entries.iter().map(|e| e.class.clone()).collect();
    let index: BTreeMap<AtomicClass, usize> = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let dual = datum.dual();
    for atom in &atoms {
        let lambda = lambda_of(atom)?;
        for (mu, _) in rep_theory::weight_multiplicities(&dual, &Weight(lambda.0.clone()))?.iter() {
            if !datum.is_dominant(&Coweight(mu.0.clone())) {
                continue;
            }
            let below = trivial_class(datum, &mu.0)?;
            if !index.contains_key(&below) {
                return Err(Error::WindowNotClosed(format!("{} lies below {} but is missing", below, atom)));
            }
        }
    }
    let mut escaped = Vec::new();
    let cols = |pick: &dyn Fn(&BlockEntry) -> &StalkTable, escaped: &mut Vec<String>| -> IMat {
        let cols: Vec<Vec<i64>> = entries.iter().map(|e| column(pick(e), &index, escaped)).collect();
        crate::linalg::transpose(&cols)
    };
    let n = atoms.len();
    let gamma_star = if n == 0 { Vec::new() } else { cols(&|e| &e.shriek, &mut escaped) };
    let gamma_sharp = if n == 0 { Vec::new() } else { cols(&|e| &e.sharp, &mut escaped) };
    let hadal = if entries.iter().all(|e| e.hadal.is_some()) && n > 0 {
        Some(cols(&|e| e.hadal.as_ref().expect("checked"), &mut escaped))
    } else {
        None
    };
    Ok(K0Block {
        classes: atoms.iter().map(ToString::to_string).collect(),
        atoms,
        gamma_shriek: identity(n),
        gamma_sharp,
        gamma_star,
        hadal,
        escaped,
    })
}

/// The window `{b_0, …, b_top}` of the `PGL(2)` trivial block.
pub fn pgl2_block(top: i64) -> Result<K0Block> {
    let mut stalks = Pgl2Stalks::new();
    let entries = (0..=top)
        .map(|n| {
            Ok(BlockEntry {
                class: trivial_class(stalks.datum(), &[n])?,
                shriek: stalks.shriek(n)?,
                sharp: stalks.compute_sharp(n)?,
                hadal: Some(stalks.compute_f(n)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    build_block(stalks.datum(), &entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    /// `γ*∘γ_! = id`.
    pub left_inverse: bool,
    /// Statement 1: `γ_! = γ_♯`.
    pub shriek_equals_sharp: bool,
    /// Statement 2: `[i_{b'}^{*ren} i_{b♯}^ren] = 0` for `b' ≠ b`.
    pub off_diagonal_sharp_vanishes: bool,
    /// Statement 5: `γ*` and `γ_!` are mutually inverse.
    pub mutually_inverse: bool,
    pub window_closed: bool,
    pub ok: bool,
}

pub fn verify_gamma(block: &K0Block) -> GammaReport {
    let n = block.atoms.len();
    let id = identity(n);
    let left_inverse = mat_mul(&block.gamma_star, &block.gamma_shriek) == id;
    let right_inverse = mat_mul(&block.gamma_shriek, &block.gamma_star) == id;
    let shriek_equals_sharp = block.gamma_sharp == block.gamma_shriek;
    let star_sharp = mat_mul(&block.gamma_star, &block.gamma_sharp);
    let off_diagonal_sharp_vanishes = (0..n).all(|i| {
        (0..n).all(|j| i == j || block.atoms[i].b == block.atoms[j].b || star_sharp[i][j] == 0)
    });
    let window_closed = block.escaped.is_empty();
    let mutually_inverse = left_inverse && right_inverse;
    GammaReport {
        left_inverse,
        shriek_equals_sharp,
        off_diagonal_sharp_vanishes,
        mutually_inverse,
        window_closed,
        ok: left_inverse && shriek_equals_sharp && off_diagonal_sharp_vanishes && mutually_inverse && window_closed,
    }
}

fn block_coords(block: &K0Block, x: &K0Vector) -> Result<Vec<i64>> {
    let mut v = vec![0; block.atoms.len()];
    for (c, &coeff) in &x.coeffs {
        let i = block
            .atoms
            .iter()
            .position(|a| a == c)
            .ok_or_else(|| Error::WindowNotClosed(format!("{c} is outside the window")))?;
        v[i] = coeff;
    }
    Ok(v)
}

fn from_coords(block: &K0Block, tag: BasisTag, v: &[i64]) -> K0Vector {
    let mut out = K0Vector::zero(tag);
    for (a, &c) in block.atoms.iter().zip(v) {
        out.add(a.clone(), c);
    }
    out
}

fn hadal_matrix(block: &K0Block) -> Result<&IMat> {
    block
        .hadal
        .as_ref()
        .ok_or_else(|| Error::WindowNotClosed("block carries no hadal data".into()))
}

/// Rewrites a vector between the shriek and hadal bases of the window.
pub fn change_basis(block: &K0Block, x: &K0Vector, to: BasisTag) -> Result<K0Vector> {
    let h = hadal_matrix(block)?;
    let v = block_coords(block, x)?;
    let coords = match (x.basis_tag, to) {
        (a, b) if a == b => v,
        (BasisTag::HadalIrreducible, BasisTag::Shriek) => crate::linalg::mat_vec(h, &v),
        (BasisTag::Shriek, BasisTag::HadalIrreducible) => {
            let inv = inverse_unimodular(h)
                .ok_or_else(|| Error::WindowNotClosed("hadal matrix is not unimodular".into()))?;
            crate::linalg::mat_vec(&inv, &v)
        }
        (from, to) => {
            return Err(Error::Parse(format!("no conversion from {from:?} to {to:?} in this block")));
        }
    };
    Ok(from_coords(block, to, &coords))
}

/// Signs of the coefficients in `[i_{b!}^ren π] = Σ α [𝒢]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub classes: Vec<String>,
    /// Row-major: entry `(i, j)` is the coefficient of hadal class `i` in shriek class `j`.
    pub coefficients: IMat,
    pub all_nonnegative: bool,
}

pub fn positivity_report(block: &K0Block) -> Result<PositivityReport> {
    let h = hadal_matrix(block)?;
    let inv = inverse_unimodular(h).ok_or_else(|| Error::WindowNotClosed("hadal matrix is not unimodular".into()))?;
    let all_nonnegative = inv.iter().flatten().all(|&x| x >= 0);
    Ok(PositivityReport {
        classes: block.classes.clone(),
        coefficients: inv,
        all_nonnegative,
    })
}
