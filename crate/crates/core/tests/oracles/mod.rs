//! Brute-force references, written against the raw datum only
//! (simple roots, simple coroots and the pairing).

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::Rational64 as Q;
use workbench_core::RootDatum;

/// Integer matrices acting on column vectors.
type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn apply(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn det(m: &Mat) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Weyl group as explicit matrices on either lattice, with signs from determinants.
pub struct Weyl {
    pub elements: Vec<(Mat, i64)>,
}

/// Reflection `x ↦ x − ⟨x, m^∨⟩ m`, with the pairing given by a functional.
fn reflection(n: usize, functional: &[i64], mirror: &[i64]) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::from(i == j) - mirror[i] * functional[j])
                .collect()
        })
        .collect()
}

/// Functionals `f` with `⟨x, α_i^∨⟩ = f · x` (characters) or `⟨α_i, y⟩ = f · y` (cocharacters).
fn functionals(datum: &RootDatum, on_characters: bool) -> Mat {
    let n = datum.rank();
    let unit = |k: usize| (0..n).map(|i| i64::from(i == k)).collect::<Vec<_>>();
    if on_characters {
        datum
            .simple_coroots()
            .iter()
            .map(|c| (0..n).map(|k| datum.pair(&unit(k), c)).collect())
            .collect()
    } else {
        datum
            .simple_roots()
            .iter()
            .map(|r| (0..n).map(|k| datum.pair(r, &unit(k))).collect())
            .collect()
    }
}

impl Weyl {
    pub fn new(datum: &RootDatum, on_characters: bool) -> Self {
        let n = datum.rank();
        let f = functionals(datum, on_characters);
        let mirrors = if on_characters { datum.simple_roots() } else { datum.simple_coroots() };
        let gens: Vec<Mat> = f.iter().zip(mirrors).map(|(f, m)| reflection(n, f, m)).collect();
        let id: Mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = mat_mul(s, &g);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
            let d = det(&g);
            elements.push((g, d));
        }
        Weyl { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.elements.iter().map(|(m, _)| apply(m, v)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// The unique orbit element with nonnegative pairings against the simple (co)roots.
pub fn dominant_in_orbit(datum: &RootDatum, weyl: &Weyl, v: &[i64], on_characters: bool) -> Vec<i64> {
    let f = functionals(datum, on_characters);
    let dominant: Vec<Vec<i64>> = weyl
        .orbit(v)
        .into_iter()
        .filter(|x| f.iter().all(|fi| fi.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0))
        .collect();
    assert_eq!(dominant.len(), 1, "orbit of {v:?} has {} dominant points", dominant.len());
    dominant.into_iter().next().unwrap()
}

/// Solves `Σ c_i r_i = v` over `Q` for linearly independent rows `r_i`.
fn solve_in_span(rows: &[Vec<i64>], v: &[i64]) -> Option<Vec<Q>> {
    let k = rows.len();
    let n = v.len();
    // augmented system of n equations in k unknowns
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = rows.iter().map(|r| Q::from_integer(r[i])).collect();
            row.push(Q::from_integer(v[i]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| m[i][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c];
        for x in m[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..n {
            if i != r && m[i][c] != Q::from_integer(0) {
                let factor = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[k] != Q::from_integer(0)) {
        return None;
    }
    let mut c = vec![Q::from_integer(0); k];
    for (i, &p) in pivots.iter().enumerate() {
        c[p] = m[i][k];
    }
    Some(c)
}

/// Characters of irreducibles of the datum's own group via Kostant's partition function.
pub struct Kostant<'a> {
    datum: &'a RootDatum,
    weyl: Weyl,
    positive: Vec<Vec<i64>>,
    two_rho: Vec<i64>,
    memo: HashMap<(Vec<i64>, usize), u64>,
    characters: HashMap<Vec<i64>, BTreeMap<Vec<i64>, u64>>,
}

impl<'a> Kostant<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        let weyl = Weyl::new(datum, true);
        let simple = datum.simple_roots().clone();
        let mut roots: Vec<Vec<i64>> = simple.iter().flat_map(|a| weyl.orbit(a)).collect();
        roots.sort();
        roots.dedup();
        // positive roots in simple-root coordinates
        let positive: Vec<Vec<i64>> = roots
            .iter()
            .filter_map(|r| {
                let c = solve_in_span(&simple, r).expect("roots lie in the root span");
                c.iter()
                    .all(|x| *x >= Q::from_integer(0))
                    .then(|| c.iter().map(|x| x.to_integer()).collect())
            })
            .collect();
        let n = datum.rank();
        let two_rho = (0..n)
            .map(|k| positive.iter().map(|c| c.iter().zip(&simple).map(|(x, a)| x * a[k]).sum::<i64>()).sum())
            .collect();
        Kostant {
            datum,
            weyl,
            positive,
            two_rho,
            memo: HashMap::new(),
            characters: HashMap::new(),
        }
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive.len()
    }

    fn partitions(&mut self, gamma: &[i64], from: usize) -> u64 {
        if gamma.iter().all(|&x| x == 0) {
            return 1;
        }
        if from == self.positive.len() || gamma.iter().any(|&x| x < 0) {
            return 0;
        }
        let key = (gamma.to_vec(), from);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let beta = self.positive[from].clone();
        let reduced: Vec<i64> = gamma.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let v = self.partitions(gamma, from + 1) + self.partitions(&reduced, from);
        self.memo.insert(key, v);
        v
    }

    /// Simple-root coordinates of `x`, if integral.
    fn root_coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        let c = solve_in_span(self.datum.simple_roots(), x)?;
        c.iter().all(|q| q.is_integer()).then(|| c.iter().map(|q| q.to_integer()).collect())
    }

    /// `m_λ(μ) = Σ_w ε(w) P(w(λ+ρ) − (μ+ρ))`.
    pub fn multiplicity(&mut self, lambda: &[i64], mu: &[i64]) -> u64 {
        let lr2: Vec<i64> = lambda.iter().zip(&self.two_rho).map(|(l, r)| 2 * l + r).collect();
        let mr2: Vec<i64> = mu.iter().zip(&self.two_rho).map(|(m, r)| 2 * m + r).collect();
        let mut total: i64 = 0;
        for (w, sign) in self.weyl.elements.clone() {
            let wl = apply(&w, &lr2);
            let diff2: Vec<i64> = wl.iter().zip(&mr2).map(|(a, b)| a - b).collect();
            if diff2.iter().any(|x| x % 2 != 0) {
                continue;
            }
            let diff: Vec<i64> = diff2.iter().map(|x| x / 2).collect();
            if let Some(c) = self.root_coords(&diff) {
                total += sign * self.partitions(&c, 0) as i64;
            }
        }
        assert!(total >= 0, "negative multiplicity");
        total as u64
    }

    /// Full character of `V_λ`, enumerating the box between `λ` and its lowest weight.
    pub fn character(&mut self, lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        if let Some(c) = self.characters.get(lambda) {
            return c.clone();
        }
        let orbit = self.weyl.orbit(lambda);
        let r = self.datum.semisimple_rank();
        let mut bounds = vec![0i64; r];
        for x in &orbit {
            let d: Vec<i64> = lambda.iter().zip(x).map(|(a, b)| a - b).collect();
            let c = self.root_coords(&d).expect("orbit differences lie in the root lattice");
            for (b, v) in bounds.iter_mut().zip(c) {
                *b = (*b).max(v);
            }
        }
        let simple = self.datum.simple_roots().clone();
        let mut out = BTreeMap::new();
        let mut coeffs = vec![0i64; r];
        loop {
            let mu: Vec<i64> = (0..lambda.len())
                .map(|k| lambda[k] - coeffs.iter().zip(&simple).map(|(c, a)| c * a[k]).sum::<i64>())
                .collect();
            let m = self.multiplicity(lambda, &mu);
            if m > 0 {
                out.insert(mu, m);
            }
            // odometer over the box
            let mut i = 0;
            while i < r && coeffs[i] == bounds[i] {
                coeffs[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
            coeffs[i] += 1;
        }
        self.characters.insert(lambda.to_vec(), out.clone());
        out
    }

    /// Peels highest weights off the product character of `V_λ ⊗ V_μ`.
    pub fn tensor_by_peeling(&mut self, lambda: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, u64> {
        let a = self.character(lambda);
        let b = self.character(mu);
        let mut product: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (x, m) in &a {
            for (y, k) in &b {
                let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                *product.entry(s).or_insert(0) += (m * k) as i64;
            }
        }
        let top: Vec<i64> = lambda.iter().zip(mu).map(|(p, q)| p + q).collect();
        let mut out = BTreeMap::new();
        loop {
            product.retain(|_, m| *m != 0);
            let Some(highest) = product
                .keys()
                .min_by_key(|x| {
                    let d: Vec<i64> = top.iter().zip(x.iter()).map(|(p, q)| p - q).collect();
                    self.root_coords(&d).expect("same coset").iter().sum::<i64>()
                })
                .cloned()
            else {
                break;
            };
            let m = product[&highest];
            assert!(m > 0, "peeling produced a negative coefficient");
            for (w, k) in self.character(&highest) {
                *product.entry(w).or_insert(0) -= m * k as i64;
            }
            out.insert(highest, m as u64);
        }
        out
    }
}

/// Validity of `(ν, κ)` for `GL(n)`: `Σν = κ` and every slope block has integral length·slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlnVerdict {
    Valid,
    KappaMismatch,
    NotIntegral,
}

pub fn gln_newton_polygon(nu: &[Q], kappa: i64) -> GlnVerdict {
    let total: Q = nu.iter().copied().sum();
    if total != Q::from_integer(kappa) {
        return GlnVerdict::KappaMismatch;
    }
    // vertices of the polygon sit where the slope changes
    let mut height = Q::from_integer(0);
    for (i, s) in nu.iter().enumerate() {
        height += s;
        let is_vertex = i + 1 == nu.len() || nu[i + 1] != *s;
        if is_vertex && !height.is_integer() {
            return GlnVerdict::NotIntegral;
        }
    }
    GlnVerdict::Valid
}

/// Orbit counts of `GL1×GL2×GL1` on pairs `(u, N)` for `φ(Fr) = diag(1, q, q, q²)` over `F_p`.
///
/// `u` is unipotent on the middle block and `N = (A: V₁→V₀, B: V₂→V₁)` commutes with it.
/// Returns `(orbits with u = 1, orbits with u ≠ 1, orbits with u ≠ 1 and AB ≠ 0)`.
pub fn hellmann_orbits(p: i64) -> (usize, usize, usize) {
    type M2 = [[i64; 2]; 2];
    let md = |x: i64| x.rem_euclid(p);
    let mul = |a: &M2, b: &M2| -> M2 {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = md(a[i][0] * b[0][j] + a[i][1] * b[1][j]);
            }
        }
        c
    };
    let inv_scalar = |x: i64| (1..p).find(|y| md(x * y) == 1).expect("field");
    let all_m2: Vec<M2> = (0..p.pow(4))
        .map(|k| {
            let d = |s: u32| (k / p.pow(s)) % p;
            [[d(0), d(1)], [d(2), d(3)]]
        })
        .collect();
    let det2 = |m: &M2| md(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    let gl2: Vec<M2> = all_m2.iter().copied().filter(|m| det2(m) != 0).collect();
    let id: M2 = [[1, 0], [0, 1]];
    let unipotent: Vec<M2> = all_m2
        .iter()
        .copied()
        .filter(|u| {
            let n = [[md(u[0][0] - 1), u[0][1]], [u[1][0], md(u[1][1] - 1)]];
            mul(&n, &n) == [[0; 2]; 2]
        })
        .collect();
    let vecs: Vec<[i64; 2]> = (0..p * p).map(|k| [k % p, k / p]).collect();
    // points (u, A, B) with A u = A and u B = B
    let mut points = Vec::new();
    for u in &unipotent {
        for a in &vecs {
            let au = [md(a[0] * u[0][0] + a[1] * u[1][0]), md(a[0] * u[0][1] + a[1] * u[1][1])];
            if au != *a {
                continue;
            }
            for b in &vecs {
                let ub = [md(u[0][0] * b[0] + u[0][1] * b[1]), md(u[1][0] * b[0] + u[1][1] * b[1])];
                if ub == *b {
                    points.push((*u, *a, *b));
                }
            }
        }
    }
    let index: HashMap<(M2, [i64; 2], [i64; 2]), usize> = points.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut counts = (0, 0, 0);
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let (u, a, b) = points[start];
        for g in &gl2 {
            let gdet_inv = inv_scalar(det2(g));
            let ginv: M2 = [
                [md(g[1][1] * gdet_inv), md(-g[0][1] * gdet_inv)],
                [md(-g[1][0] * gdet_inv), md(g[0][0] * gdet_inv)],
            ];
            let u2 = mul(&mul(g, &u), &ginv);
            for x in 1..p {
                for z in 1..p {
                    let zi = inv_scalar(z);
                    let a2 = [
                        md(x * (a[0] * ginv[0][0] + a[1] * ginv[1][0])),
                        md(x * (a[0] * ginv[0][1] + a[1] * ginv[1][1])),
                    ];
                    let b2 = [md(zi * (g[0][0] * b[0] + g[0][1] * b[1])), md(zi * (g[1][0] * b[0] + g[1][1] * b[1]))];
                    orbit_of[index[&(u2, a2, b2)]] = start;
                }
            }
        }
        let ab = md(a[0] * b[0] + a[1] * b[1]);
        if u == id {
            counts.0 += 1;
        } else {
            counts.1 += 1;
            if ab != 0 {
                counts.2 += 1;
            }
        }
    }
    counts
}

/// `Σ_{w} ε(w) [dom(λ+ρ+wρ)]` for the datum's Weyl group on cocharacters, with `2ρ` the sum of positive coroots.
pub fn weyl_sum(datum: &RootDatum, target: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let dual = datum.dual();
    let k = Kostant::new(&dual);
    let weyl = Weyl::new(datum, false);
    let two_rho = k.two_rho.clone();
    let lambda: Vec<i64> = target.iter().zip(&two_rho).map(|(t, r)| t - r).collect();
    let mut out = BTreeMap::new();
    for (w, sign) in &weyl.elements {
        let wr = apply(w, &two_rho);
        let v: Vec<i64> = lambda
            .iter()
            .zip(two_rho.iter().zip(&wr))
            .map(|(l, (a, b))| {
                assert_eq!((a + b) % 2, 0);
                l + (a + b) / 2
            })
            .collect();
        let d = dominant_in_orbit(datum, &weyl, &v, false);
        *out.entry(d).or_insert(0) += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}
