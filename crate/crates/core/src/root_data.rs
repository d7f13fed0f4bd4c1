//! Root data of split reductive groups, their Weyl groups and dominance.
//!
//! A [`RootDatum`] is stored as `(X, Δ, X^∨, Δ^∨)` with an explicit pairing
//! matrix. Presets are always the datum of the named group `G` itself: the
//! character lattice is `X*(T)` and the cocharacter lattice is `X_*(T)`,
//! which is also the weight lattice of the dual group. Use [`RootDatum::dual`]
//! to do representation theory of `Ĝ`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat, QMat};
use crate::{fmt_int_vec, fmt_q_vec, Q};

/// Upper bound on Weyl group enumeration (and on root-system closure).
pub const MAX_WEYL_ORDER: usize = 1_000_000;
const MAX_ROOTS: usize = 20_000;

/// Which lattice a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Character,
    Cocharacter,
}

/// Coefficient ring for lattice vectors: `i64` or exact rationals.
pub trait Scalar: Clone + PartialOrd + Signed + From<i64> + fmt::Debug {}
impl<T: Clone + PartialOrd + Signed + From<i64> + fmt::Debug> Scalar for T {}

pub trait LatticeVector: Clone {
    type Scalar: Scalar;
    const SIDE: Side;
    fn coords(&self) -> &[Self::Scalar];
    fn from_coords(coords: Vec<Self::Scalar>) -> Self;
}

macro_rules! lattice_vector {
    ($name:ident, $scalar:ty, $side:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub Vec<$scalar>);

        impl LatticeVector for $name {
            type Scalar = $scalar;
            const SIDE: Side = $side;
            fn coords(&self) -> &[$scalar] {
                &self.0
            }
            fn from_coords(coords: Vec<$scalar>) -> Self {
                $name(coords)
            }
        }
    };
}

lattice_vector!(Weight, i64, Side::Character, "An element of the character lattice `X`.");
lattice_vector!(Coweight, i64, Side::Cocharacter, "An element of the cocharacter lattice `X^∨`.");
lattice_vector!(
    RationalCoweight,
    Q,
    Side::Cocharacter,
    "An element of `X^∨ ⊗ Q`, entries in lowest terms."
);

impl RationalCoweight {
    pub fn from_integers(v: &[i64]) -> Self {
        RationalCoweight(v.iter().map(|&x| Q::from_integer(x)).collect())
    }

    /// Integral coordinates, if every entry is an integer.
    pub fn to_integral(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Serialize for Coweight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Rationals serialize as strings such as `"1/2"` so that output stays exact.
impl Serialize for RationalCoweight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(Q::to_string))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_int_vec(&self.0))
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_int_vec(&self.0))
    }
}

impl fmt::Display for RationalCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q_vec(&self.0))
    }
}

/// A Weyl group element: a reduced word `s_{w[0]} s_{w[1]} ⋯` and its matrix on `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: IMat,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `(-1)^{ℓ(w)}`
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// A positive root together with its coroot and its coordinates in the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub simple_coords: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    preset_name: Option<String>,
    basis: Vec<String>,
    cobasis: Vec<String>,
    simple_roots: IMat,
    simple_coroots: IMat,
    pairing: IMat,
    cartan: IMat,
    // f_i with ⟨x, α_i^∨⟩ = f_i · x
    coroot_functionals: IMat,
    // g_i with ⟨α_i, y⟩ = g_i · y
    root_functionals: IMat,
    cartan_inv: QMat,
    positive_roots: Vec<PositiveRoot>,
    two_rho: Vec<i64>,
    two_rho_check: Vec<i64>,
    weyl: OnceLock<std::result::Result<Vec<WeylElement>, Error>>,
}

/// Serializable description of a root datum, as accepted in TOML/JSON configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DatumSpec {
    Preset {
        name: String,
    },
    Explicit {
        #[serde(default)]
        cartan: Option<IMat>,
        #[serde(default)]
        simple_roots: Option<IMat>,
        #[serde(default)]
        simple_coroots: Option<IMat>,
        #[serde(default)]
        pairing: Option<IMat>,
    },
}

/// Output view of a datum, with the coordinate conventions spelled out.
#[derive(Debug, Clone, Serialize)]
pub struct DatumSummary {
    pub name: Option<String>,
    pub rank: usize,
    pub semisimple_rank: usize,
    pub character_basis: Vec<String>,
    pub cocharacter_basis: Vec<String>,
    pub simple_roots: IMat,
    pub simple_coroots: IMat,
    pub cartan: IMat,
    pub positive_roots: Vec<Vec<i64>>,
    pub two_rho: Vec<i64>,
    pub two_rho_check: Vec<i64>,
    pub weyl_order: usize,
}

fn basis_names(prefix: &str, n: usize, offset: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{}", i + offset)).collect()
}

fn type_a_cartan(r: usize) -> IMat {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn parse_preset(name: &str) -> Option<(String, usize)> {
    let cleaned: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '(' | ')' | '_'))
        .collect::<String>()
        .to_ascii_uppercase();
    let split = cleaned.find(|c: char| c.is_ascii_digit())?;
    let (family, n) = cleaned.split_at(split);
    Some((family.to_string(), n.parse().ok()?))
}

impl RootDatum {
    /// Builds one of the named presets: `GL(n)`, `SL(n)`, `PGL(n)`, `Sp(4)`, `GSp(4)`.
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_string());
        let (family, n) = parse_preset(name).ok_or_else(unknown)?;
        let (canon, basis, cobasis, roots, coroots) = match (family.as_str(), n) {
            ("GL", n) if n >= 1 => {
                let roots: IMat = (0..n - 1)
                    .map(|i| (0..n).map(|j| i64::from(j == i) - i64::from(j == i + 1)).collect())
                    .collect();
                (
                    format!("GL({n})"),
                    basis_names("e", n, 1),
                    basis_names("e", n, 1),
                    roots.clone(),
                    roots,
                )
            }
            ("SL", n) if n >= 2 => (
                format!("SL({n})"),
                basis_names("ω", n - 1, 1),
                basis_names("α∨", n - 1, 1),
                type_a_cartan(n - 1),
                linalg::identity(n - 1),
            ),
            ("PGL", n) if n >= 2 => (
                format!("PGL({n})"),
                basis_names("α", n - 1, 1),
                basis_names("ω∨", n - 1, 1),
                linalg::identity(n - 1),
                type_a_cartan(n - 1),
            ),
            ("SP", 4) => (
                "Sp(4)".to_string(),
                basis_names("ε", 2, 1),
                basis_names("ε∨", 2, 1),
                vec![vec![1, -1], vec![0, 2]],
                vec![vec![1, -1], vec![0, 1]],
            ),
            ("GSP", 4) => (
                "GSp(4)".to_string(),
                vec!["e1".into(), "e2".into(), "e0".into()],
                vec!["e1∨".into(), "e2∨".into(), "e0∨".into()],
                vec![vec![1, -1, 0], vec![0, 2, -1]],
                vec![vec![1, -1, 0], vec![0, 1, 0]],
            ),
            _ => return Err(unknown()),
        };
        let rank = basis.len();
        let mut d = Self::build(roots, coroots, linalg::identity(rank), basis, cobasis)?;
        d.preset_name = Some(canon);
        Ok(d)
    }

    /// Builds a datum from explicit simple roots (in `X`) and coroots (in `X^∨`).
    /// The pairing defaults to the standard dot product.
    pub fn explicit(simple_roots: IMat, simple_coroots: IMat, pairing: Option<IMat>) -> Result<Self> {
        let rank = simple_roots
            .first()
            .or(simple_coroots.first())
            .map(Vec::len)
            .or(pairing.as_ref().map(Vec::len))
            .ok_or_else(|| Error::InvalidCartan("empty datum".into()))?;
        let pairing = pairing.unwrap_or_else(|| linalg::identity(rank));
        Self::build(
            simple_roots,
            simple_coroots,
            pairing,
            basis_names("x", rank, 1),
            basis_names("y", rank, 1),
        )
    }

    /// The simply connected semisimple datum of a Cartan matrix, in fundamental-weight coordinates.
    pub fn from_cartan(cartan: IMat) -> Result<Self> {
        let r = cartan.len();
        if r == 0 {
            return Err(Error::InvalidCartan("empty Cartan matrix".into()));
        }
        Self::build(
            cartan,
            linalg::identity(r),
            linalg::identity(r),
            basis_names("ω", r, 1),
            basis_names("α∨", r, 1),
        )
    }

    pub fn from_spec(spec: &DatumSpec) -> Result<Self> {
        match spec {
            DatumSpec::Preset { name } => Self::preset(name),
            DatumSpec::Explicit {
                cartan,
                simple_roots,
                simple_coroots,
                pairing,
            } => match (simple_roots, simple_coroots) {
                (Some(r), Some(c)) => {
                    let d = Self::explicit(r.clone(), c.clone(), pairing.clone())?;
                    if let Some(a) = cartan {
                        if a != &d.cartan {
                            return Err(Error::InvalidCartan(format!(
                                "declared Cartan {a:?} differs from computed {:?}",
                                d.cartan
                            )));
                        }
                    }
                    Ok(d)
                }
                (None, None) => match cartan {
                    Some(a) => Self::from_cartan(a.clone()),
                    None => Err(Error::InvalidCartan("explicit datum needs cartan or roots".into())),
                },
                _ => Err(Error::InvalidCartan(
                    "simple_roots and simple_coroots must be given together".into(),
                )),
            },
        }
    }

    fn build(
        simple_roots: IMat,
        simple_coroots: IMat,
        pairing: IMat,
        basis: Vec<String>,
        cobasis: Vec<String>,
    ) -> Result<Self> {
        let rank = pairing.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("lattice rank must be positive".into()));
        }
        if pairing.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidCartan("pairing matrix must be square".into()));
        }
        if linalg::rank_i(&pairing) != rank {
            return Err(Error::InvalidCartan("pairing is degenerate".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidCartan(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != rank) {
            return Err(Error::InvalidCartan(format!("vectors must have length {rank}")));
        }
        let ss = simple_roots.len();
        if ss > 0 && linalg::rank_i(&simple_roots) != ss {
            return Err(Error::InvalidCartan("simple roots are linearly dependent".into()));
        }
        if ss > 0 && linalg::rank_i(&simple_coroots) != ss {
            return Err(Error::InvalidCartan("simple coroots are linearly dependent".into()));
        }

        let coroot_functionals: IMat = simple_coroots.iter().map(|c| linalg::mat_vec(&pairing, c)).collect();
        let pt = linalg::transpose(&pairing);
        let root_functionals: IMat = simple_roots.iter().map(|a| linalg::mat_vec(&pt, a)).collect();
        let cartan: IMat = simple_roots
            .iter()
            .map(|a| coroot_functionals.iter().map(|f| linalg::dot(f, a)).collect())
            .collect();
        for i in 0..ss {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is {}", cartan[i][i])));
            }
            for j in 0..ss {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!(
                        "bad off-diagonal pair ({}, {}) at ({i}, {j})",
                        cartan[i][j], cartan[j][i]
                    )));
                }
            }
        }
        let cartan_inv = if ss == 0 {
            Vec::new()
        } else {
            linalg::inverse_q(&linalg::to_q(&cartan))
                .ok_or_else(|| Error::InvalidCartan("Cartan matrix is singular".into()))?
        };

        let positive_roots = positive_root_system(&simple_roots, &simple_coroots, &coroot_functionals, &root_functionals)?;
        let mut two_rho = vec![0; rank];
        let mut two_rho_check = vec![0; rank];
        for r in &positive_roots {
            for k in 0..rank {
                two_rho[k] += r.root[k];
                two_rho_check[k] += r.coroot[k];
            }
        }

        Ok(RootDatum {
            preset_name: None,
            basis,
            cobasis,
            simple_roots,
            simple_coroots,
            pairing,
            cartan,
            coroot_functionals,
            root_functionals,
            cartan_inv,
            positive_roots,
            two_rho,
            two_rho_check,
            weyl: OnceLock::new(),
        })
    }

    /// The dual root datum `(X^∨, Δ^∨, X, Δ)`.
    pub fn dual(&self) -> RootDatum {
        let mut d = Self::build(
            self.simple_coroots.clone(),
            self.simple_roots.clone(),
            linalg::transpose(&self.pairing),
            self.cobasis.clone(),
            self.basis.clone(),
        )
        .expect("dual of a valid datum is valid");
        d.preset_name = self.preset_name.as_ref().map(|n| format!("{n}^"));
        d
    }

    /// The standard Levi sub-datum on the simple roots `subset` (same lattices).
    pub fn levi(&self, subset: &[usize]) -> Result<RootDatum> {
        let mut idx = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != subset.len() || idx.iter().any(|&i| i >= self.semisimple_rank()) {
            return Err(Error::BadLeviSubset(format!(
                "{subset:?} is not a set of simple root indices below {}",
                self.semisimple_rank()
            )));
        }
        let mut d = Self::build(
            idx.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            idx.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
            self.pairing.clone(),
            self.basis.clone(),
            self.cobasis.clone(),
        )?;
        d.preset_name = Some(format!(
            "{}[{}]",
            self.preset_name.as_deref().unwrap_or("M"),
            idx.iter().map(|i| format!("α{}", i + 1)).collect::<Vec<_>>().join(",")
        ));
        Ok(d)
    }

    pub fn preset_name(&self) -> Option<&str> {
        self.preset_name.as_deref()
    }

    /// Rank of the lattices.
    pub fn rank(&self) -> usize {
        self.pairing.len()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &IMat {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &IMat {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Sum of the positive roots, an element of `X`.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// Sum of the positive coroots, an element of `X^∨`.
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    pub fn character_basis(&self) -> &[String] {
        &self.basis
    }

    /// `⟨x, y⟩` for `x ∈ X`, `y ∈ X^∨`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        linalg::dot(x, &linalg::mat_vec(&self.pairing, y))
    }

    /// `⟨x, y⟩` for `x ∈ X`, `y ∈ X^∨ ⊗ Q`.
    pub fn pair_q(&self, x: &[i64], y: &[Q]) -> Q {
        let px: Vec<i64> = linalg::mat_vec(&linalg::transpose(&self.pairing), x);
        linalg::dot_q(&px, y)
    }

    fn functionals(&self, side: Side) -> &IMat {
        match side {
            Side::Character => &self.coroot_functionals,
            Side::Cocharacter => &self.root_functionals,
        }
    }

    fn mirrors(&self, side: Side) -> &IMat {
        match side {
            Side::Character => &self.simple_roots,
            Side::Cocharacter => &self.simple_coroots,
        }
    }

    /// Pairings of `v` with the simple coroots (characters) or simple roots (cocharacters).
    pub fn simple_pairings<T: Scalar>(&self, side: Side, v: &[T]) -> Vec<T> {
        self.functionals(side)
            .iter()
            .map(|f| {
                f.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, x)| acc + T::from(a) * x.clone())
            })
            .collect()
    }

    fn reflect_in_place<T: Scalar>(&self, side: Side, i: usize, v: &mut [T]) {
        let f = &self.functionals(side)[i];
        let p = f
            .iter()
            .zip(v.iter())
            .fold(T::zero(), |acc, (&a, x)| acc + T::from(a) * x.clone());
        if p.is_zero() {
            return;
        }
        for (x, &m) in v.iter_mut().zip(&self.mirrors(side)[i]) {
            *x = x.clone() - p.clone() * T::from(m);
        }
    }

    pub fn is_dominant<V: LatticeVector>(&self, v: &V) -> bool {
        self.simple_pairings(V::SIDE, v.coords())
            .iter()
            .all(|p| !p.is_negative())
    }

    /// True when `v` is fixed by no simple reflection after being made dominant,
    /// i.e. has trivial stabilizer in `W`.
    pub fn is_regular<V: LatticeVector>(&self, v: &V) -> bool {
        let (dom, _) = self.dominant_rep(v);
        self.simple_pairings(V::SIDE, dom.coords())
            .iter()
            .all(|p| p.is_positive())
    }

    /// The dominant element of the `W`-orbit of `v`, with `w` such that `w·v` is it.
    pub fn dominant_rep<V: LatticeVector>(&self, v: &V) -> (V, WeylElement) {
        let mut cur = v.coords().to_vec();
        let mut applied = Vec::new();
        loop {
            let pairings = self.simple_pairings(V::SIDE, &cur);
            let Some(i) = pairings.iter().position(|p| p.is_negative()) else {
                break;
            };
            self.reflect_in_place(V::SIDE, i, &mut cur);
            applied.push(i);
        }
        applied.reverse();
        (V::from_coords(cur), self.element_from_word(&applied))
    }

    /// `dom(v)` without the witness.
    pub fn dom<V: LatticeVector>(&self, v: &V) -> V {
        self.dominant_rep(v).0
    }

    pub fn reflection_matrix(&self, i: usize) -> IMat {
        let n = self.rank();
        let a = &self.simple_roots[i];
        let f = &self.coroot_functionals[i];
        (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c) - a[r] * f[c]).collect())
            .collect()
    }

    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        let mut m = linalg::identity(self.rank());
        for &i in word {
            m = linalg::mat_mul(&m, &self.reflection_matrix(i));
        }
        WeylElement {
            word: word.to_vec(),
            matrix: m,
        }
    }

    /// `w · v`, applied through the word so that both lattices are supported.
    pub fn act<V: LatticeVector>(&self, w: &WeylElement, v: &V) -> V {
        let mut cur = v.coords().to_vec();
        for &i in w.word.iter().rev() {
            self.reflect_in_place(V::SIDE, i, &mut cur);
        }
        V::from_coords(cur)
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn inversions(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| {
                let img = linalg::mat_vec(&w.matrix, &r.root);
                self.pair(&img, &self.two_rho_check) < 0
            })
            .count()
    }

    /// All elements of `W`, sorted by length then word. Cached after the first call.
    pub fn weyl_group(&self) -> Result<&[WeylElement]> {
        self.weyl
            .get_or_init(|| self.enumerate_weyl())
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn weyl_order(&self) -> Result<usize> {
        self.weyl_group().map(<[_]>::len)
    }

    pub fn longest_element(&self) -> Result<WeylElement> {
        let w = self.weyl_group()?;
        Ok(w.last().cloned().expect("W is never empty"))
    }

    fn enumerate_weyl(&self) -> std::result::Result<Vec<WeylElement>, Error> {
        // w is determined by w·2ρ since 2ρ is regular
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        seen.insert(self.two_rho.clone(), ());
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([(Vec::<usize>::new(), self.two_rho.clone())]);
        while let Some((word, image)) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                let mut next = image.clone();
                self.reflect_in_place(Side::Character, i, &mut next);
                if seen.contains_key(&next) {
                    continue;
                }
                if seen.len() >= MAX_WEYL_ORDER {
                    return Err(Error::GroupTooLarge(MAX_WEYL_ORDER));
                }
                seen.insert(next.clone(), ());
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(&word);
                queue.push_back((w, next));
            }
            words.push(word);
        }
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(words.iter().map(|w| self.element_from_word(w)).collect())
    }

    /// Coefficients of `d ∈ X^∨ ⊗ Q` in the simple coroots, if `d` lies in their span.
    pub fn coroot_coordinates(&self, d: &[Q]) -> Option<Vec<Q>> {
        if self.semisimple_rank() == 0 {
            return linalg::is_zero_vec(d).then(Vec::new);
        }
        let p = self.simple_pairings(Side::Cocharacter, d);
        let c = linalg::qmat_vec(&self.cartan_inv, &p);
        let back: Vec<Q> = (0..self.rank())
            .map(|k| {
                c.iter()
                    .zip(&self.simple_coroots)
                    .fold(Q::zero(), |acc, (x, v)| acc + x * Q::from_integer(v[k]))
            })
            .collect();
        (back == d).then_some(c)
    }

    /// Coefficients of `d ∈ X ⊗ Q` in the simple roots, if `d` lies in their span.
    pub fn root_coordinates(&self, d: &[Q]) -> Option<Vec<Q>> {
        if self.semisimple_rank() == 0 {
            return linalg::is_zero_vec(d).then(Vec::new);
        }
        let p = self.simple_pairings(Side::Character, d);
        let inv_t = linalg::transpose(&self.cartan_inv);
        let c = linalg::qmat_vec(&inv_t, &p);
        let back: Vec<Q> = (0..self.rank())
            .map(|k| {
                c.iter()
                    .zip(&self.simple_roots)
                    .fold(Q::zero(), |acc, (x, v)| acc + x * Q::from_integer(v[k]))
            })
            .collect();
        (back == d).then_some(c)
    }

    /// The unique `c` in the rational span of the simple coroots with `⟨α_i, c⟩ = targets[i]`.
    pub fn cocharacter_with_pairings(&self, targets: &[Q]) -> Vec<Q> {
        let x = linalg::qmat_vec(&self.cartan_inv, targets);
        (0..self.rank())
            .map(|k| {
                x.iter()
                    .zip(&self.simple_coroots)
                    .fold(Q::zero(), |acc, (c, v)| acc + c * Q::from_integer(v[k]))
            })
            .collect()
    }

    /// `ν ≤ ν′` in the dominance order: `ν′ − ν` is a nonnegative rational
    /// combination of simple coroots (which forces equal images in `π₁(G) ⊗ Q`).
    pub fn dominance_leq(&self, nu: &RationalCoweight, nu_prime: &RationalCoweight) -> Result<bool> {
        for v in [nu, nu_prime] {
            if !self.is_dominant(v) {
                return Err(Error::NotDominant(v.to_string()));
            }
        }
        Ok(self.coroot_cone_contains(nu, nu_prime))
    }

    /// `ν′ − ν` lies in the nonnegative rational cone of the simple coroots.
    /// No dominance requirement.
    pub fn coroot_cone_contains(&self, nu: &RationalCoweight, nu_prime: &RationalCoweight) -> bool {
        let d: Vec<Q> = nu_prime.0.iter().zip(&nu.0).map(|(a, b)| a - b).collect();
        self.coroot_coordinates(&d)
            .is_some_and(|c| linalg::all_nonnegative(&c))
    }

    /// Height of a weight measured by `⟨·, 2ρ^∨⟩`; positive on positive roots.
    pub fn weight_height(&self, x: &[i64]) -> i64 {
        self.pair(x, &self.two_rho_check)
    }

    /// Connected components of the Dynkin diagram restricted to `subset`.
    pub fn dynkin_components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut idx = subset.to_vec();
        idx.sort_unstable();
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; idx.len()];
        for start in 0..idx.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![idx[start]];
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                for m in 0..idx.len() {
                    if !seen[m] && self.cartan[idx[k]][idx[m]] != 0 {
                        seen[m] = true;
                        comp.push(idx[m]);
                        stack.push(m);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn summary(&self) -> Result<DatumSummary> {
        Ok(DatumSummary {
            name: self.preset_name.clone(),
            rank: self.rank(),
            semisimple_rank: self.semisimple_rank(),
            character_basis: self.basis.clone(),
            cocharacter_basis: self.cobasis.clone(),
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.iter().map(|r| r.root.clone()).collect(),
            two_rho: self.two_rho.clone(),
            two_rho_check: self.two_rho_check.clone(),
            weyl_order: self.weyl_order()?,
        })
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
            && self.pairing == other.pairing
    }
}

impl Eq for RootDatum {}

/// Closes the simple (root, coroot) pairs under simple reflections and keeps the positive half.
fn positive_root_system(
    simple_roots: &IMat,
    simple_coroots: &IMat,
    coroot_functionals: &IMat,
    root_functionals: &IMat,
) -> Result<Vec<PositiveRoot>> {
    let ss = simple_roots.len();
    let mut found: HashMap<Vec<i64>, PositiveRoot> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..ss {
        let r = PositiveRoot {
            root: simple_roots[i].clone(),
            coroot: simple_coroots[i].clone(),
            simple_coords: (0..ss).map(|j| i64::from(i == j)).collect(),
        };
        found.insert(r.simple_coords.clone(), r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..ss {
            let p = linalg::dot(&coroot_functionals[i], &r.root);
            let q = linalg::dot(&root_functionals[i], &r.coroot);
            let mut coords = r.simple_coords.clone();
            coords[i] -= p;
            if found.contains_key(&coords) {
                continue;
            }
            if found.len() >= MAX_ROOTS {
                return Err(Error::InvalidCartan("root system is not of finite type".into()));
            }
            let s = PositiveRoot {
                root: r.root.iter().zip(&simple_roots[i]).map(|(x, a)| x - p * a).collect(),
                coroot: r.coroot.iter().zip(&simple_coroots[i]).map(|(x, a)| x - q * a).collect(),
                simple_coords: coords.clone(),
            };
            found.insert(coords, s.clone());
            queue.push_back(s);
        }
    }
    let mut positive: Vec<PositiveRoot> = found
        .into_values()
        .filter(|r| r.simple_coords.iter().all(|&c| c >= 0))
        .collect();
    positive.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| b.simple_coords.cmp(&a.simple_coords))
    });
    Ok(positive)
}
