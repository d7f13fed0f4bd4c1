//! Toral semisimple L-parameters for `GL(n)` and the orbits in their fibers.
//!
//! A parameter is a list of characters `χ_s |·|^t`. Characters sharing a
//! symbol with consecutive twists form chains; monodromy operators `N` map the
//! `t`-eigenspace to the `t−1`-eigenspace along each chain, so orbits of `N`
//! are type-A quiver orbits (multisegments). Unipotent elements `u` of the
//! centralizer are allowed as well, subject to `u N u^{-1} = N`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels::Character;
use crate::linalg::{self, QMat};
use crate::poset::Poset;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ToralParameter {
    pub chars: Vec<Character>,
}

impl ToralParameter {
    pub fn new(chars: Vec<Character>) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::Parse("a parameter needs at least one character".into()));
        }
        Ok(ToralParameter { chars })
    }

    /// Parses `a:0,b:0,a:1`.
    pub fn parse(text: &str) -> Result<Self> {
        let chars = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Character::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(chars)
    }

    pub fn n(&self) -> usize {
        self.chars.len()
    }
}

impl fmt::Display for ToralParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chars.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("⊕"))
    }
}

/// No `χ_i = χ_j |·|^1`.
pub fn is_generic(phi: &ToralParameter) -> bool {
    !phi.chars.iter().any(|a| {
        phi.chars
            .iter()
            .any(|b| a.symbol == b.symbol && a.twist == b.twist + 1)
    })
}

/// Generic with pairwise distinct characters.
pub fn is_generous(phi: &ToralParameter) -> bool {
    let mut sorted = phi.chars.clone();
    sorted.sort();
    is_generic(phi) && sorted.windows(2).all(|w| w[0] != w[1])
}

/// `S_φ ≅ Π GL_m`, one block per distinct character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub blocks: Vec<(Character, usize)>,
}

impl CentralizerShape {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, m)| m * m).sum()
    }

    pub fn is_torus(&self) -> bool {
        self.blocks.iter().all(|(_, m)| *m == 1)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|(_, m)| format!("GL{m}")).collect();
        parts.join("×")
    }
}

pub fn centralizer(phi: &ToralParameter) -> CentralizerShape {
    let mut counts: BTreeMap<(i64, &str), (Character, usize)> = BTreeMap::new();
    for c in &phi.chars {
        counts
            .entry((c.twist, c.symbol.as_str()))
            .or_insert_with(|| (c.clone(), 0))
            .1 += 1;
    }
    let mut blocks: Vec<(Character, usize)> = counts.into_values().collect();
    blocks.sort_by(|a, b| a.0.symbol.cmp(&b.0.symbol).then(a.0.twist.cmp(&b.0.twist)));
    CentralizerShape { blocks }
}

/// A maximal run of characters with one symbol and consecutive twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub vertices: Vec<(Character, usize)>,
}

impl Chain {
    pub fn dims(&self) -> Vec<usize> {
        self.vertices.iter().map(|(_, m)| *m).collect()
    }
}

pub fn twist_chains(phi: &ToralParameter) -> Vec<Chain> {
    let shape = centralizer(phi);
    let mut chains: Vec<Chain> = Vec::new();
    for (c, m) in shape.blocks {
        match chains.last_mut() {
            Some(ch)
                if ch.vertices.last().is_some_and(|(p, _)| p.symbol == c.symbol && p.twist + 1 == c.twist) =>
            {
                ch.vertices.push((c, m));
            }
            _ => chains.push(Chain { vertices: vec![(c, m)] }),
        }
    }
    chains
}

/// Explicit `(u, N)` on one chain: `u[v]` acts on vertex `v`, `n[e]` maps vertex `e+1` to vertex `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ChainRep {
    dims: Vec<usize>,
    u: Vec<Vec<Vec<i64>>>,
    n: Vec<Vec<Vec<i64>>>,
}

impl ChainRep {
    /// Rank of the composite from vertex `j` down to vertex `i < j`.
    fn composite_rank(&self, i: usize, j: usize) -> usize {
        let mut m = self.n[i].clone();
        for e in i + 1..j {
            m = linalg::mat_mul(&m, &self.n[e]);
        }
        linalg::rank_i(&m)
    }

    /// Dimension of the stabilizer Lie algebra in `Π gl(d_v)`.
    fn stabilizer_dim(&self) -> usize {
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d * d;
                Some(o)
            })
            .collect();
        let unknowns: usize = self.dims.iter().map(|d| d * d).sum();
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * self.dims[v] + c;
        let mut rows: QMat = Vec::new();
        // X_v u_v − u_v X_v = 0
        for (v, &d) in self.dims.iter().enumerate() {
            let u = &self.u[v];
            for r in 0..d {
                for c in 0..d {
                    let mut eq = vec![Q::from_integer(0); unknowns];
                    for k in 0..d {
                        eq[var(v, r, k)] += Q::from_integer(u[k][c]);
                        eq[var(v, k, c)] -= Q::from_integer(u[r][k]);
                    }
                    rows.push(eq);
                }
            }
        }
        // X_e N_e − N_e X_{e+1} = 0
        for (e, n) in self.n.iter().enumerate() {
            let (a, b) = (self.dims[e], self.dims[e + 1]);
            for r in 0..a {
                for c in 0..b {
                    let mut eq = vec![Q::from_integer(0); unknowns];
                    for k in 0..a {
                        eq[var(e, r, k)] += Q::from_integer(n[k][c]);
                    }
                    for k in 0..b {
                        eq[var(e + 1, k, c)] -= Q::from_integer(n[r][k]);
                    }
                    rows.push(eq);
                }
            }
        }
        unknowns - linalg::rank_q(&rows)
    }

    fn orbit_dim(&self) -> usize {
        self.dims.iter().map(|d| d * d).sum::<usize>() - self.stabilizer_dim()
    }

    fn jordan_types(&self) -> Vec<Vec<usize>> {
        self.u
            .iter()
            .map(|u| {
                let d = u.len();
                let minus: Vec<Vec<i64>> = (0..d)
                    .map(|r| (0..d).map(|c| u[r][c] - i64::from(r == c)).collect())
                    .collect();
                jordan_partition(&minus)
            })
            .collect()
    }
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
fn jordan_partition(m: &[Vec<i64>]) -> Vec<usize> {
    let d = m.len();
    if d == 0 {
        return Vec::new();
    }
    let mut ranks = vec![d];
    let mut p = linalg::identity(d);
    while *ranks.last().unwrap() > 0 {
        p = linalg::mat_mul(&p, m);
        let r = linalg::rank_i(&p);
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
    }
    ranks.push(0);
    // number of blocks of size ≥ k is ranks[k-1] − ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let bigger = at_least.get(k).copied().unwrap_or(0);
        for _ in 0..at_least[k - 1] - bigger {
            parts.push(k);
        }
    }
    parts
}

fn zero(r: usize, c: usize) -> Vec<Vec<i64>> {
    vec![vec![0; c]; r]
}

/// All multisegments on a chain with the given dimension vector, as `(start, end, count)`.
pub fn multisegments(dims: &[usize]) -> Vec<Vec<(usize, usize, usize)>> {
    fn go(
        segments: &[(usize, usize)],
        k: usize,
        remaining: &mut [usize],
        current: &mut Vec<(usize, usize, usize)>,
        out: &mut Vec<Vec<(usize, usize, usize)>>,
    ) {
        let Some(&(i, j)) = segments.get(k) else {
            if remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        };
        let cap = (i..=j).map(|v| remaining[v]).min().unwrap_or(0);
        for count in (0..=cap).rev() {
            // the last segment starting at i must use up vertex i
            let last_from_i = segments.get(k + 1).is_none_or(|s| s.0 != i);
            if last_from_i && remaining[i] != count {
                continue;
            }
            for r in &mut remaining[i..=j] {
                *r -= count;
            }
            if count > 0 {
                current.push((i, j, count));
            }
            go(segments, k + 1, remaining, current, out);
            if count > 0 {
                current.pop();
            }
            for r in &mut remaining[i..=j] {
                *r += count;
            }
        }
    }

    let n = dims.len();
    let segments: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).rev().map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    go(&segments, 0, &mut dims.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn multisegment_rep(dims: &[usize], ms: &[(usize, usize, usize)]) -> ChainRep {
    // basis of vertex v: one vector per copy of each segment through v
    let mut basis: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dims.len()];
    for (s, &(i, j, count)) in ms.iter().enumerate() {
        for copy in 0..count {
            for b in basis.iter_mut().take(j + 1).skip(i) {
                b.push((s, copy));
            }
        }
    }
    let n = (0..dims.len().saturating_sub(1))
        .map(|e| {
            let mut m = zero(dims[e], dims[e + 1]);
            for (c, key) in basis[e + 1].iter().enumerate() {
                if let Some(r) = basis[e].iter().position(|k| k == key) {
                    m[r][c] = 1;
                }
            }
            m
        })
        .collect();
    ChainRep {
        dims: dims.to_vec(),
        u: dims.iter().map(|&d| linalg::identity(d)).collect(),
        n,
    }
}

/// `u` regular unipotent at the unique 2-dimensional vertex `star`; each edge zero or not.
fn regular_u_reps(dims: &[usize], star: usize) -> Vec<(ChainRep, Vec<bool>)> {
    let edges = dims.len().saturating_sub(1);
    let mut out = Vec::new();
    for mask in 0..(1u32 << edges) {
        let on: Vec<bool> = (0..edges).map(|e| mask & (1 << e) != 0).collect();
        let n = (0..edges)
            .map(|e| {
                let mut m = zero(dims[e], dims[e + 1]);
                if on[e] {
                    if e + 1 == star {
                        // outgoing from the star vertex: kill ker(u − 1) = span(e1)
                        m[0][1] = 1;
                    } else {
                        // incoming into the star vertex lands in ker(u − 1); otherwise 1×1
                        m[0][0] = 1;
                    }
                }
                m
            })
            .collect();
        let u = dims
            .iter()
            .enumerate()
            .map(|(v, &d)| {
                if v == star {
                    vec![vec![1, 1], vec![0, 1]]
                } else {
                    linalg::identity(d)
                }
            })
            .collect();
        out.push((
            ChainRep {
                dims: dims.to_vec(),
                u,
                n,
            },
            on,
        ));
    }
    out
}

/// An `S_φ`-orbit in the reduced fiber, by its complete invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberOrbit {
    pub name: String,
    /// Jordan type of `u` on each block, keyed `symbol:twist`.
    pub u_jordan: BTreeMap<String, Vec<usize>>,
    /// `r[x,y]`: rank of the composite of `N` from the `y`-eigenspace to the `x`-eigenspace.
    pub rank_data: BTreeMap<String, usize>,
    pub dim: usize,
    pub u_trivial: bool,
}

#[derive(Debug, Clone)]
struct ChainOrbit {
    label: String,
    rep: ChainRep,
    u_trivial: bool,
}

fn segment_label(chain: &Chain, ms: &[(usize, usize, usize)]) -> String {
    if ms.is_empty() {
        return "∅".into();
    }
    let parts: Vec<String> = ms
        .iter()
        .map(|&(i, j, count)| {
            let sym = &chain.vertices[i].0.symbol;
            let seg = if i == j {
                format!("[{sym}:{}]", chain.vertices[i].0.twist)
            } else {
                format!("[{sym}:{}..{}]", chain.vertices[i].0.twist, chain.vertices[j].0.twist)
            };
            if count == 1 {
                seg
            } else {
                format!("{count}{seg}")
            }
        })
        .collect();
    parts.join("+")
}

fn chain_vogan(chain: &Chain) -> Vec<ChainOrbit> {
    let dims = chain.dims();
    multisegments(&dims)
        .into_iter()
        .map(|ms| ChainOrbit {
            label: segment_label(chain, &ms),
            rep: multisegment_rep(&dims, &ms),
            u_trivial: true,
        })
        .collect()
}

fn chain_full(chain: &Chain) -> Result<Vec<ChainOrbit>> {
    let dims = chain.dims();
    let mut out = chain_vogan(chain);
    let big: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 1).collect();
    match big.as_slice() {
        [] => {}
        [star] if dims[*star] == 2 => {
            let (c, _) = &chain.vertices[*star];
            for (rep, on) in regular_u_reps(&dims, *star) {
                let edges: Vec<String> = on
                    .iter()
                    .enumerate()
                    .map(|(e, &b)| {
                        format!(
                            "N{}:{}→{}={}",
                            chain.vertices[e].0.symbol,
                            chain.vertices[e + 1].0.twist,
                            chain.vertices[e].0.twist,
                            u8::from(b)
                        )
                    })
                    .collect();
                let label = if edges.is_empty() {
                    format!("u=J2@{}", c.key())
                } else {
                    format!("u=J2@{};{}", c.key(), edges.join(","))
                };
                out.push(ChainOrbit {
                    label,
                    rep,
                    u_trivial: false,
                });
            }
        }
        _ => {
            return Err(Error::UnsupportedShape(format!(
                "chain with multiplicities {dims:?}: only one block of multiplicity 2 is classified"
            )))
        }
    }
    Ok(out)
}

fn assemble(chains: &[Chain], per_chain: Vec<Vec<ChainOrbit>>) -> Vec<FiberOrbit> {
    let mut combos: Vec<Vec<&ChainOrbit>> = vec![Vec::new()];
    for orbits in &per_chain {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                orbits.iter().map(move |o| {
                    let mut c = c.clone();
                    c.push(o);
                    c
                })
            })
            .collect();
    }
    combos
        .into_iter()
        .map(|combo| {
            let mut u_jordan = BTreeMap::new();
            let mut rank_data = BTreeMap::new();
            let mut dim = 0;
            for (chain, orbit) in chains.iter().zip(&combo) {
                for ((c, _), jt) in chain.vertices.iter().zip(orbit.rep.jordan_types()) {
                    u_jordan.insert(c.key(), jt);
                }
                for i in 0..chain.vertices.len() {
                    for j in i + 1..chain.vertices.len() {
                        rank_data.insert(
                            format!("r[{},{}]", chain.vertices[i].0.key(), chain.vertices[j].0.key()),
                            orbit.rep.composite_rank(i, j),
                        );
                    }
                }
                dim += orbit.rep.orbit_dim();
            }
            let labels: Vec<&str> = combo.iter().map(|o| o.label.as_str()).collect();
            FiberOrbit {
                name: labels.join(" | "),
                u_jordan,
                rank_data,
                dim,
                u_trivial: combo.iter().all(|o| o.u_trivial),
            }
        })
        .collect()
}

fn rank_leq(a: &FiberOrbit, b: &FiberOrbit) -> bool {
    a.rank_data
        .iter()
        .all(|(k, r)| b.rank_data.get(k).is_some_and(|s| r <= s))
}

fn partition_leq(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    (0..a.len().max(b.len())).all(|k| {
        sa += a.get(k).copied().unwrap_or(0);
        sb += b.get(k).copied().unwrap_or(0);
        sa <= sb
    })
}

/// Orbits of `N` with `u = 1` (the Vogan variety), ordered by pointwise rank dominance.
pub fn vogan_orbits(phi: &ToralParameter) -> Poset<FiberOrbit> {
    let chains = twist_chains(phi);
    let per_chain = chains.iter().map(chain_vogan).collect();
    let orbits = assemble(&chains, per_chain);
    Poset::from_relation(orbits, rank_leq)
}

/// All `(u, N)` orbits of the reduced fiber, with the candidate specialization relation.
pub fn fiber_orbits(phi: &ToralParameter) -> Result<Poset<FiberOrbit>> {
    let chains = twist_chains(phi);
    let per_chain = chains.iter().map(chain_full).collect::<Result<Vec<_>>>()?;
    let orbits = assemble(&chains, per_chain);
    Ok(Poset::from_relation(orbits, |a, b| {
        rank_leq(a, b)
            && a
                .u_jordan
                .iter()
                .all(|(k, p)| b.u_jordan.get(k).is_some_and(|q| partition_leq(p, q)))
    }))
}

/// Relation label attached to [`fiber_orbits`] output.
pub const CANDIDATE: &str = "candidate";
