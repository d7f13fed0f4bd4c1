//! Inert label terms: characters, representation labels and Galois monomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `χ_symbol · |·|^twist`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character {
    pub symbol: String,
    pub twist: i64,
}

impl Character {
    pub fn new(symbol: impl Into<String>, twist: i64) -> Self {
        Character {
            symbol: symbol.into(),
            twist,
        }
    }

    /// Parses `a:1` (or a bare `a`, meaning twist 0).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (sym, twist) = match text.split_once(':') {
            Some((s, t)) => (
                s.trim(),
                t.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad twist in `{text}`")))?,
            ),
            None => (text, 0),
        };
        if sym.is_empty() || !sym.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Parse(format!("bad character symbol in `{text}`")));
        }
        Ok(Character::new(sym, twist))
    }

    /// The key form `a:1`.
    pub fn key(&self) -> String {
        format!("{}:{}", self.symbol, self.twist)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            0 => write!(f, "{}", self.symbol),
            t => write!(f, "{}|·|^{}", self.symbol, t),
        }
    }
}

/// One Levi factor of a normalized parabolic induction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InductionBlock {
    pub group: String,
    pub rank: usize,
    pub inducing: Vec<RepLabel>,
}

impl fmt::Display for InductionBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank <= 1 && self.inducing.len() == 1 {
            return write!(f, "{}", self.inducing[0]);
        }
        let inner: Vec<String> = self.inducing.iter().map(ToString::to_string).collect();
        let inner = if inner.iter().all(|s| s == "1") {
            "1".to_string()
        } else {
            inner.join("⊠")
        };
        if self.group.chars().count() == 1 {
            write!(f, "i_B^{}({inner})", self.group)
        } else {
            write!(f, "i_B^{{{}}}({inner})", self.group)
        }
    }
}

/// A structured name for a smooth representation; never evaluated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepLabel {
    Trivial,
    Char { character: Character },
    NormalizedInduction { blocks: Vec<InductionBlock> },
    /// `π_λ = i_B^{G_{b_λ}}(1)` with the Levi factors of `G_{b_λ}` spelled out.
    PiLambda { lambda: Vec<i64>, blocks: Vec<InductionBlock> },
    Delta12,
    DeltaTwist { inner: Box<RepLabel> },
    Dual { inner: Box<RepLabel> },
}

impl RepLabel {
    pub fn chr(c: Character) -> Self {
        RepLabel::Char { character: c }
    }

    /// `π ⊗ δ^{1/2}`, written `δ^{1/2}` when `π` is trivial.
    pub fn twist_by_delta(self) -> Self {
        match self {
            RepLabel::Trivial => RepLabel::Delta12,
            other => RepLabel::DeltaTwist { inner: Box::new(other) },
        }
    }

    /// Inverse of [`RepLabel::twist_by_delta`].
    pub fn untwist_delta(self) -> Self {
        match self {
            RepLabel::Delta12 => RepLabel::Trivial,
            RepLabel::DeltaTwist { inner } => *inner,
            other => other,
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Trivial => f.write_str("1"),
            RepLabel::Char { character } => write!(f, "{character}"),
            RepLabel::NormalizedInduction { blocks } | RepLabel::PiLambda { blocks, .. } => {
                let parts: Vec<String> = blocks.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join("⊠"))
            }
            RepLabel::Delta12 => f.write_str("δ^{1/2}"),
            RepLabel::DeltaTwist { inner } => write!(f, "{inner}⊗δ^{{1/2}}"),
            RepLabel::Dual { inner } => write!(f, "({inner})^∨"),
        }
    }
}

/// `Π_s χ_s^{e_s} · |·|^twist`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GaloisMonomial {
    pub exponents: BTreeMap<String, i64>,
    pub twist: i64,
}

impl GaloisMonomial {
    /// `Π χ_i^{a_i}` for characters `χ_i` and exponents `a_i`.
    pub fn from_exponents(chars: &[Character], a: &[i64]) -> Self {
        let mut m = GaloisMonomial::default();
        for (c, &e) in chars.iter().zip(a) {
            if e != 0 {
                *m.exponents.entry(c.symbol.clone()).or_insert(0) += e;
                m.twist += e * c.twist;
            }
        }
        m.exponents.retain(|_, e| *e != 0);
        m
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty() && self.twist == 0
    }

    pub fn mul(&self, other: &GaloisMonomial) -> GaloisMonomial {
        let mut m = self.clone();
        for (s, e) in &other.exponents {
            *m.exponents.entry(s.clone()).or_insert(0) += e;
        }
        m.twist += other.twist;
        m.exponents.retain(|_, e| *e != 0);
        m
    }
}

impl fmt::Display for GaloisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(s, &e)| if e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect();
        if self.twist != 0 {
            parts.push(format!("|·|^{}", self.twist));
        }
        f.write_str(&parts.join("·"))
    }
}
