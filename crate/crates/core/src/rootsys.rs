//! Finite root systems from Cartan matrices: roots, coroots, the invariant
//! form, positive systems, and the Weyl group with its linear and affine dot
//! actions.
//!
//! Conventions, fixed once and used everywhere:
//! - `a[i][j]` is the pairing of the `i`-th simple root against the `j`-th
//!   simple coroot, so for a root `γ = Σ c_i α_i` the integer `γ(H_j)` is the
//!   dot product of `c` with column `j`.
//! - Roots are integer vectors over the simple basis; weights are rational
//!   vectors of coroot values `λ(H_i)` (fundamental-weight coordinates).
//! - The symmetrizer `d` is the componentwise-minimal positive integer vector
//!   making `⟨α_i, α_j⟩ = d_j·a_ij` symmetric.
//! - Enumeration order for roots is by height, ties broken lexicographically
//!   on coefficient vectors.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{format_rat, rat_int, Rat};

/// Default cap on materialized Weyl group size.
pub const DEFAULT_WEYL_ORDER_BOUND: usize = 1_000_000;

/// Safety cap on root closure, far above any rank-8 system.
const MAX_ROOTS: usize = 10_000;

#[derive(Debug, Error)]
pub enum RootSystemError {
    #[error("Cartan matrix must be square and nonempty")]
    NotSquare,
    #[error("diagonal entry a[{i}][{i}] = {value}, expected 2")]
    BadDiagonal { i: usize, value: i64 },
    #[error("off-diagonal entry a[{i}][{j}] = {value} outside {{0,-1,-2,-3}}")]
    BadOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("zero pattern asymmetric at ({i},{j}): a_ij = {aij}, a_ji = {aji}")]
    AsymmetricZero {
        i: usize,
        j: usize,
        aij: i64,
        aji: i64,
    },
    #[error("matrix is not symmetrizable (inconsistent length ratios around a cycle)")]
    NotSymmetrizable,
    #[error("symmetrized form is not positive definite; not a finite-type Cartan matrix")]
    NotFiniteType,
    #[error("root closure exceeded {MAX_ROOTS} roots; matrix is not of finite type")]
    ClosureOverflow,
    #[error("{0} is not a root of this system")]
    NotARoot(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Weyl group order exceeds bound {bound}; enumerated {found} elements so far")]
    WeylOrderBound { bound: usize, found: usize },
    #[error("unknown series `{0}`, expected one of A B C D E F G")]
    UnknownSeries(String),
    #[error("rank {rank} not valid for series {series}")]
    BadRank { series: char, rank: usize },
    #[error("not a positive system: {0}")]
    BadPositiveSystem(String),
}

// ---------------------------------------------------------------------------
// Cartan matrices
// ---------------------------------------------------------------------------

/// Integer Cartan matrix of finite type together with its minimal symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
}

impl CartanMatrix {
    /// Validate and wrap a square integer matrix.
    ///
    /// Checks the generalized-Cartan-matrix shape (diagonal 2, off-diagonal in
    /// `{0,-1,-2,-3}`, symmetric zero pattern) and symmetrizability. Finite
    /// type is checked later by [`RootSystem::new`] via positive definiteness.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, RootSystemError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(RootSystemError::NotSquare);
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 2 {
                return Err(RootSystemError::BadDiagonal { i, value: row[i] });
            }
            for (j, &v) in row.iter().enumerate() {
                if i != j && !(-3..=0).contains(&v) {
                    return Err(RootSystemError::BadOffDiagonal { i, j, value: v });
                }
                if i != j && (v == 0) != (entries[j][i] == 0) {
                    return Err(RootSystemError::AsymmetricZero {
                        i,
                        j,
                        aij: v,
                        aji: entries[j][i],
                    });
                }
            }
        }
        let symmetrizer = minimal_symmetrizer(&entries)?;
        Ok(Self {
            entries,
            symmetrizer,
        })
    }

    /// Built-in series. `C` at rank 2 is `[[2,-1],[-2,2]]`.
    pub fn of_series(series: char, rank: usize) -> Result<Self, RootSystemError> {
        let series = series.to_ascii_uppercase();
        let bad = |series, rank| Err(RootSystemError::BadRank { series, rank });
        let mut m = match series {
            'A' => {
                if rank < 1 {
                    return bad(series, rank);
                }
                chain(rank)
            }
            'B' => {
                if rank < 2 {
                    return bad(series, rank);
                }
                let mut m = chain(rank);
                m[rank - 2][rank - 1] = -2;
                m
            }
            'C' => {
                if rank < 2 {
                    return bad(series, rank);
                }
                let mut m = chain(rank);
                m[rank - 1][rank - 2] = -2;
                m
            }
            'D' => {
                if rank < 3 {
                    return bad(series, rank);
                }
                let mut m = chain(rank - 1);
                for row in &mut m {
                    row.push(0);
                }
                m.push(vec![0; rank]);
                m[rank - 1][rank - 1] = 2;
                m[rank - 1][rank - 3] = -1;
                m[rank - 3][rank - 1] = -1;
                m
            }
            'E' => {
                if !(6..=8).contains(&rank) {
                    return bad(series, rank);
                }
                // Bourbaki numbering: node 2 hangs off node 4 of the chain
                // 1-3-4-5-6(-7)(-8).
                let chain_nodes: Vec<usize> = match rank {
                    6 => vec![0, 2, 3, 4, 5],
                    7 => vec![0, 2, 3, 4, 5, 6],
                    _ => vec![0, 2, 3, 4, 5, 6, 7],
                };
                let mut m = vec![vec![0i64; rank]; rank];
                for i in 0..rank {
                    m[i][i] = 2;
                }
                for w in chain_nodes.windows(2) {
                    m[w[0]][w[1]] = -1;
                    m[w[1]][w[0]] = -1;
                }
                m[1][3] = -1;
                m[3][1] = -1;
                m
            }
            'F' => {
                if rank != 4 {
                    return bad(series, rank);
                }
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -2, 0],
                    vec![0, -1, 2, -1],
                    vec![0, 0, -1, 2],
                ]
            }
            'G' => {
                if rank != 2 {
                    return bad(series, rank);
                }
                vec![vec![2, -3], vec![-1, 2]]
            }
            other => return Err(RootSystemError::UnknownSeries(other.to_string())),
        };
        m.shrink_to_fit();
        Self::new(m)
    }

    /// Block-diagonal direct sum, for product fixtures like A1 x A1.
    pub fn direct_sum(&self, other: &CartanMatrix) -> Result<Self, RootSystemError> {
        let n = self.rank();
        let m = other.rank();
        let mut entries = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            entries[i][..n].copy_from_slice(&self.entries[i]);
        }
        for i in 0..m {
            entries[n + i][n..].copy_from_slice(&other.entries[i]);
        }
        Self::new(entries)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Minimal positive integral `d` with `d_j·a_ij` symmetric.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }
}

fn chain(rank: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        m[i][i] = 2;
        if i + 1 < rank {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

/// Solve `d_j·a_ij = d_i·a_ji` for minimal positive integers, per connected
/// component of the Dynkin graph.
fn minimal_symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, RootSystemError> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Rat::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_j / d_i = a_ji / a_ij
                let ratio = rat_int(a[j][i]) / rat_int(a[i][j]);
                let dj = d[i].clone().unwrap() * ratio;
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) => {
                        if *existing != dj {
                            return Err(RootSystemError::NotSymmetrizable);
                        }
                    }
                }
            }
        }
        // Scale the component to minimal positive integers.
        let lcm = component
            .iter()
            .map(|&i| d[i].as_ref().unwrap().denom().clone())
            .fold(num::BigInt::one(), num::integer::lcm);
        let mut nums: Vec<num::BigInt> = Vec::new();
        for &i in &component {
            let scaled = d[i].as_ref().unwrap() * Rat::from_integer(lcm.clone());
            nums.push(scaled.numer().clone());
            d[i] = Some(scaled);
        }
        let gcd = nums.iter().fold(num::BigInt::zero(), |acc, x| {
            num::integer::gcd(acc, x.clone())
        });
        for &i in &component {
            d[i] = Some(d[i].clone().unwrap() / Rat::from_integer(gcd.clone()));
        }
    }
    let mut out = Vec::with_capacity(n);
    for (i, v) in d.into_iter().enumerate() {
        let v = v.expect("all nodes visited");
        if !v.denom().is_one() || !v.is_positive() {
            return Err(RootSystemError::NotSymmetrizable);
        }
        use num::ToPrimitive;
        out.push(
            v.numer()
                .to_i64()
                .ok_or(RootSystemError::NotSymmetrizable)?,
        );
        let _ = i;
    }
    // Global consistency; catches cycles whose ratios multiply to != 1.
    for i in 0..n {
        for j in 0..n {
            if out[j] * a[i][j] != out[i] * a[j][i] {
                return Err(RootSystemError::NotSymmetrizable);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Roots and weights
// ---------------------------------------------------------------------------

/// A root as an integer vector over the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    /// The `i`-th simple root.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Sum of simple-root coefficients.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// All coefficients nonnegative (and some positive).
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn plus(&self, other: &Root) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &Root) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Enumeration key: height first, then lexicographic on coefficients.
pub fn root_order_key(r: &Root) -> (i64, Vec<i64>) {
    (r.height(), r.coeffs.clone())
}

/// A weight in fundamental-weight coordinates: `coords[i] = λ(H_{α_i})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: Vec<Rat>,
}

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| rat_int(c)).collect(),
        }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Integral iff every fundamental coordinate is an integer; this implies
    /// `λ(H_γ)` is an integer for every root `γ`.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, s: &Rat) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Coordinates rendered as exact strings, for JSON surfaces.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rat).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Root system
// ---------------------------------------------------------------------------

/// A finite root system: full root set (closed under simple reflections from
/// the simple roots), symmetrized invariant form, positive roots and `δ`.
#[derive(Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    /// `form[i][j] = ⟨α_i, α_j⟩ = d_j·a_ij`, symmetric positive definite.
    form: Vec<Vec<i64>>,
    /// All roots in enumeration order.
    roots: Vec<Root>,
    /// Positive roots in enumeration order.
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    delta: Weight,
    /// Inverse of `Aᵀ`, for converting weight coordinates to root coordinates.
    inv_a_t: Vec<Vec<Rat>>,
}

impl RootSystem {
    /// Build the root system of a finite-type Cartan matrix.
    pub fn new(cartan: CartanMatrix) -> Result<Self, RootSystemError> {
        let n = cartan.rank();
        let d = cartan.symmetrizer().to_vec();
        let mut form = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                form[i][j] = d[j] * cartan.entry(i, j);
            }
        }
        if !is_positive_definite(&form) {
            return Err(RootSystemError::NotFiniteType);
        }

        // Reflection closure from the simple roots.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i);
            seen.insert(r.coeffs.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for j in 0..n {
                let p: i64 = (0..n).map(|i| r.coeffs[i] * cartan.entry(i, j)).sum();
                let mut c = r.coeffs.clone();
                c[j] -= p;
                if seen.insert(c.clone()) {
                    if seen.len() > MAX_ROOTS {
                        return Err(RootSystemError::ClosureOverflow);
                    }
                    queue.push_back(Root::new(c));
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().map(Root::new).collect();
        roots.sort_by_key(root_order_key);
        for r in &roots {
            let pos = r.coeffs.iter().all(|&c| c >= 0);
            let neg = r.coeffs.iter().all(|&c| c <= 0);
            debug_assert!(pos || neg, "mixed-sign root from closure: {r}");
            if !(pos || neg) {
                return Err(RootSystemError::NotFiniteType);
            }
        }
        let positive: Vec<Root> = roots.iter().filter(|r| r.is_positive()).cloned().collect();
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coeffs.clone(), k))
            .collect();

        let inv_a_t = invert_transpose(&cartan)?;

        // δ in fundamental coordinates: half the coordinate vector of Σ P.
        let mut sum = vec![0i64; n];
        for r in &positive {
            for (s, c) in sum.iter_mut().zip(&r.coeffs) {
                *s += c;
            }
        }
        let delta = Weight::new(
            (0..n)
                .map(|j| {
                    let v: i64 = (0..n).map(|i| sum[i] * cartan.entry(i, j)).sum();
                    rat_int(v) / rat_int(2)
                })
                .collect(),
        );
        debug_assert!(delta.coords.iter().all(|c| *c == rat_int(1)));

        Ok(Self {
            cartan,
            form,
            roots,
            positive,
            index,
            delta,
            inv_a_t,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// All roots in enumeration order (negatives first, by height then lex).
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Positive roots in enumeration order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(&r.coeffs)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    /// Half-sum of positive roots; `δ(H_{α_i}) = 1` for every simple root.
    pub fn delta(&self) -> &Weight {
        &self.delta
    }

    /// `γ(H_j)` for the `j`-th simple coroot.
    pub fn pairing_simple_coroot(&self, gamma: &Root, j: usize) -> i64 {
        (0..self.rank())
            .map(|i| gamma.coeffs[i] * self.cartan.entry(i, j))
            .sum()
    }

    /// Invariant form `⟨γ, γ'⟩` on the root lattice (integer valued).
    pub fn form_roots(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += a.coeffs[i] * b.coeffs[j] * self.form[i][j];
            }
        }
        acc
    }

    /// Squared length `⟨γ, γ⟩`.
    pub fn norm_sq(&self, gamma: &Root) -> i64 {
        self.form_roots(gamma, gamma)
    }

    /// `λ(H_γ)`: expand `γ∨ = 2γ/⟨γ,γ⟩` in simple coroots and pair exactly.
    ///
    /// Errors when `γ` is not a root of the system.
    pub fn coroot_pairing(&self, lambda: &Weight, gamma: &Root) -> Result<Rat, RootSystemError> {
        if !self.is_root(gamma) {
            return Err(RootSystemError::NotARoot(gamma.to_string()));
        }
        if lambda.rank() != self.rank() {
            return Err(RootSystemError::DimensionMismatch(format!(
                "weight has rank {}, system has rank {}",
                lambda.rank(),
                self.rank()
            )));
        }
        Ok(self.coroot_pairing_unchecked(lambda, gamma))
    }

    /// Same as [`Self::coroot_pairing`] without the membership check; `γ` may
    /// be any nonzero lattice vector with `⟨γ,γ⟩ > 0`.
    pub fn coroot_pairing_unchecked(&self, lambda: &Weight, gamma: &Root) -> Rat {
        let d = self.cartan.symmetrizer();
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            if gamma.coeffs[i] != 0 {
                acc += rat_int(gamma.coeffs[i] * d[i]) * &lambda.coords[i];
            }
        }
        acc * rat_int(2) / rat_int(self.norm_sq(gamma))
    }

    /// Fundamental coordinates of a root-lattice vector: `v_j = γ(H_j)`.
    pub fn root_to_weight(&self, gamma: &Root) -> Weight {
        Weight::new(
            (0..self.rank())
                .map(|j| rat_int(self.pairing_simple_coroot(gamma, j)))
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight (exact solve of `Aᵀc = v`).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..n {
                    acc += &self.inv_a_t[i][j] * &w.coords[j];
                }
                acc
            })
            .collect()
    }

    /// Invariant form extended to weights.
    pub fn weight_form(&self, a: &Weight, b: &Weight) -> Rat {
        let ca = self.weight_to_root_coords(a);
        let cb = self.weight_to_root_coords(b);
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if ca[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.form[i][j] != 0 {
                    acc += &ca[i] * &cb[j] * rat_int(self.form[i][j]);
                }
            }
        }
        acc
    }

    /// Reflect a root in the `j`-th simple root.
    pub fn reflect_root(&self, j: usize, gamma: &Root) -> Root {
        let p = self.pairing_simple_coroot(gamma, j);
        let mut c = gamma.coeffs.clone();
        c[j] -= p;
        Root::new(c)
    }

    /// Reflect `beta` in an arbitrary root `gamma`:
    /// `s_γ(β) = β − β(H_γ)·γ`, with the Cartan integer computed exactly.
    pub fn reflect_root_in(&self, gamma: &Root, beta: &Root) -> Root {
        let pairing = 2 * self.form_roots(beta, gamma) / self.norm_sq(gamma);
        let coeffs = beta
            .coeffs
            .iter()
            .zip(&gamma.coeffs)
            .map(|(b, g)| b - pairing * g)
            .collect();
        Root::new(coeffs)
    }

    /// Reflect a weight in the `j`-th simple root: `λ - λ(H_j)·α_j`.
    pub fn reflect_weight(&self, j: usize, lambda: &Weight) -> Weight {
        let lj = lambda.coords[j].clone();
        Weight::new(
            (0..self.rank())
                .map(|k| &lambda.coords[k] - &lj * rat_int(self.cartan.entry(j, k)))
                .collect(),
        )
    }

    /// Half-sum of an arbitrary root list, as a weight (`δ_P` for a positive
    /// system `P`).
    pub fn half_sum(&self, roots: &[Root]) -> Weight {
        let n = self.rank();
        let mut sum = vec![0i64; n];
        for r in roots {
            for (s, c) in sum.iter_mut().zip(&r.coeffs) {
                *s += c;
            }
        }
        Weight::new(
            (0..n)
                .map(|j| {
                    let v: i64 = (0..n).map(|i| sum[i] * self.cartan.entry(i, j)).sum();
                    rat_int(v) / rat_int(2)
                })
                .collect(),
        )
    }

    /// Materialize the Weyl group as explicit matrices, identity first, in
    /// breadth-first discovery order (deterministic).
    pub fn weyl_group(&self, order_bound: usize) -> Result<Vec<WeylElement>, RootSystemError> {
        let n = self.rank();
        let gens: Vec<Vec<Vec<i64>>> = (0..n).map(|j| self.simple_reflection_matrix(j)).collect();
        let id = WeylElement::identity(n);
        let mut seen: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        seen.insert(id.matrix.clone(), 0);
        let mut out = vec![id];
        let mut cursor = 0;
        while cursor < out.len() {
            for j in 0..n {
                let m = mat_mul(&out[cursor].matrix, &gens[j]);
                if !seen.contains_key(&m) {
                    if out.len() >= order_bound {
                        return Err(RootSystemError::WeylOrderBound {
                            bound: order_bound,
                            found: out.len(),
                        });
                    }
                    let mut word = out[cursor].word.clone();
                    word.push(j);
                    seen.insert(m.clone(), out.len());
                    out.push(WeylElement { word, matrix: m });
                }
            }
            cursor += 1;
        }
        Ok(out)
    }

    /// Matrix of `s_j` acting on root coordinates.
    fn simple_reflection_matrix(&self, j: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = identity_matrix(n);
        for i in 0..n {
            m[j][i] -= self.cartan.entry(i, j);
        }
        m
    }

    /// Serializable summary: simple roots, full root list in enumeration
    /// order, symmetrizer, δ.
    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            rank: self.rank(),
            cartan: self.cartan.entries.clone(),
            symmetrizer: self.cartan.symmetrizer().to_vec(),
            simple_roots: (0..self.rank())
                .map(|i| self.simple_root(i).coeffs().to_vec())
                .collect(),
            roots: self.roots.iter().map(|r| r.coeffs().to_vec()).collect(),
            positive_roots: self.positive.iter().map(|r| r.coeffs().to_vec()).collect(),
            delta: self.delta.coord_strings(),
        }
    }
}

/// JSON view of a root system.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystemJson {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub simple_roots: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub delta: Vec<String>,
}

/// Shared handle used by the modules that sit on top of a root system.
pub type RootSystemRef = Arc<RootSystem>;

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let v = a[i][k];
            if v == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += v * b[k][j];
            }
        }
    }
    out
}

/// Exact positive-definiteness via leading principal minors.
fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut work: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&v| rat_int(v)).collect())
        .collect();
    // Rational Gaussian elimination; all pivots must stay positive.
    for k in 0..n {
        if !work[k][k].is_positive() {
            return false;
        }
        for i in (k + 1)..n {
            let factor = &work[i][k] / &work[k][k];
            for j in k..n {
                let sub = &factor * &work[k][j];
                work[i][j] -= sub;
            }
        }
    }
    true
}

fn invert_transpose(cartan: &CartanMatrix) -> Result<Vec<Vec<Rat>>, RootSystemError> {
    let n = cartan.rank();
    // Augmented [Aᵀ | I] elimination.
    let mut work: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| rat_int(cartan.entry(j, i))).collect();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !work[r][k].is_zero())
            .ok_or(RootSystemError::NotFiniteType)?;
        work.swap(k, pivot_row);
        let pivot = work[k][k].clone();
        for v in &mut work[k] {
            *v /= &pivot;
        }
        for r in 0..n {
            if r != k && !work[r][k].is_zero() {
                let f = work[r][k].clone();
                for j in 0..(2 * n) {
                    let sub = &f * &work[k][j];
                    work[r][j] -= sub;
                }
            }
        }
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// Weyl group elements
// ---------------------------------------------------------------------------

/// A Weyl group element: reduced-ish word in simple reflections plus its
/// integer matrix action on root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Indices of simple reflections; the element is `s_{w[0]} ∘ … ∘ s_{w[k]}`
    /// (applied right to left).
    pub word: Vec<usize>,
    /// Action on root coordinates.
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            word: Vec::new(),
            matrix: identity_matrix(rank),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_matrix(self.matrix.len())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            matrix: mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn apply_root(&self, gamma: &Root) -> Root {
        let n = self.matrix.len();
        Root::new(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i][j] * gamma.coeffs()[j]).sum())
                .collect(),
        )
    }

    /// Linear action on a weight, via the word of simple reflections.
    pub fn apply_weight(&self, rs: &RootSystem, lambda: &Weight) -> Weight {
        let mut acc = lambda.clone();
        for &j in self.word.iter().rev() {
            acc = rs.reflect_weight(j, &acc);
        }
        acc
    }

    /// Affine dot action `s_A λ = s(λ + δ) - δ` for a supplied `δ`.
    pub fn affine_dot(&self, rs: &RootSystem, lambda: &Weight, delta: &Weight) -> Weight {
        self.apply_weight(rs, &lambda.plus(delta)).minus(delta)
    }
}

// ---------------------------------------------------------------------------
// Positive systems
// ---------------------------------------------------------------------------

/// A positive system of roots: one of each `±γ` pair, closed under addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveSystem {
    roots: Vec<Root>,
    set: HashSet<Vec<i64>>,
}

impl PositiveSystem {
    /// The standard positive system (all-nonnegative coefficient roots).
    pub fn standard(rs: &RootSystem) -> Self {
        Self::from_roots_unchecked(rs.positive_roots().to_vec())
    }

    /// Validate an arbitrary root list as a positive system of `rs`.
    pub fn new(rs: &RootSystem, roots: Vec<Root>) -> Result<Self, RootSystemError> {
        let half = rs.num_roots() / 2;
        if roots.len() != half {
            return Err(RootSystemError::BadPositiveSystem(format!(
                "expected {half} roots, got {}",
                roots.len()
            )));
        }
        let set: HashSet<Vec<i64>> = roots.iter().map(|r| r.coeffs().to_vec()).collect();
        if set.len() != roots.len() {
            return Err(RootSystemError::BadPositiveSystem("duplicate roots".into()));
        }
        for r in &roots {
            if !rs.is_root(r) {
                return Err(RootSystemError::NotARoot(r.to_string()));
            }
            if set.contains(r.negated().coeffs()) {
                return Err(RootSystemError::BadPositiveSystem(format!(
                    "contains both {r} and its negative"
                )));
            }
        }
        for a in &roots {
            for b in &roots {
                let sum = a.plus(b);
                if rs.is_root(&sum) && !set.contains(sum.coeffs()) {
                    return Err(RootSystemError::BadPositiveSystem(format!(
                        "not closed under addition: {a} + {b}"
                    )));
                }
            }
        }
        Ok(Self::from_roots_unchecked(roots))
    }

    fn from_roots_unchecked(mut roots: Vec<Root>) -> Self {
        roots.sort_by_key(root_order_key);
        let set = roots.iter().map(|r| r.coeffs().to_vec()).collect();
        Self { roots, set }
    }

    /// Roots in enumeration order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.set.contains(r.coeffs())
    }

    /// `δ_P`, the half-sum of this system.
    pub fn half_sum(&self, rs: &RootSystem) -> Weight {
        rs.half_sum(&self.roots)
    }

    /// Image under a Weyl element (again a positive system).
    pub fn transformed(&self, w: &WeylElement) -> Self {
        Self::from_roots_unchecked(self.roots.iter().map(|r| w.apply_root(r)).collect())
    }

    /// Simple roots of this system: members not expressible as a sum of two
    /// members.
    pub fn simple_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        'outer: for r in &self.roots {
            for a in &self.roots {
                let b = r.minus(a);
                if b != *r && self.set.contains(b.coeffs()) && a != r {
                    continue 'outer;
                }
            }
            out.push(r.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn a2() -> RootSystem {
        RootSystem::new(CartanMatrix::of_series('A', 2).unwrap()).unwrap()
    }

    fn c2() -> RootSystem {
        // The rank-2 C matrix as printed: [[2,-1],[-2,2]].
        RootSystem::new(CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]]).unwrap()).unwrap()
    }

    #[test]
    fn a2_has_six_roots() {
        let rs = a2();
        assert_eq!(rs.num_roots(), 6);
        let pos: Vec<Vec<i64>> = rs
            .positive_roots()
            .iter()
            .map(|r| r.coeffs().to_vec())
            .collect();
        assert_eq!(pos, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn a1_roots_and_delta() {
        let rs = RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap();
        assert_eq!(rs.num_roots(), 2);
        assert_eq!(rs.delta().coords(), &[rat_int(1)]);
    }

    #[test]
    fn c2_has_eight_roots_four_long_four_short() {
        let rs = c2();
        assert_eq!(rs.num_roots(), 8);
        let norms: Vec<i64> = rs.roots().iter().map(|r| rs.norm_sq(r)).collect();
        let max = *norms.iter().max().unwrap();
        let long = norms.iter().filter(|&&v| v == max).count();
        assert_eq!(long, 4);
        assert_eq!(norms.len() - long, 4);
    }

    #[test]
    fn c2_printed_matrix_symmetrizer() {
        let cm = CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(cm.symmetrizer(), &[1, 2]);
    }

    #[test]
    fn g2_has_twelve_roots() {
        let rs = RootSystem::new(CartanMatrix::of_series('G', 2).unwrap()).unwrap();
        assert_eq!(rs.num_roots(), 12);
    }

    #[test]
    fn builtin_series_orders() {
        // (series, rank, number of roots)
        for (s, r, n) in [
            ('A', 3, 12),
            ('B', 3, 18),
            ('B', 4, 32),
            ('C', 3, 18),
            ('C', 4, 32),
            ('D', 4, 24),
            ('D', 5, 40),
            ('F', 4, 48),
            ('E', 6, 72),
            ('E', 7, 126),
            ('E', 8, 240),
        ] {
            let rs = RootSystem::new(CartanMatrix::of_series(s, r).unwrap()).unwrap();
            assert_eq!(rs.num_roots(), n, "{s}{r}");
        }
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(CartanMatrix::new(vec![]).is_err());
        assert!(CartanMatrix::new(vec![vec![1]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]).is_err());
        // Affine A1~ matrix: symmetrizable but not finite type.
        let affine = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(
            RootSystem::new(affine),
            Err(RootSystemError::NotFiniteType)
        ));
    }

    #[test]
    fn delta_pairing_on_a2_highest_root() {
        let rs = a2();
        let highest = Root::new(vec![1, 1]);
        let p = rs.coroot_pairing(rs.delta(), &highest).unwrap();
        assert_eq!(p, rat_int(2));
    }

    #[test]
    fn coroot_pairing_zero_and_fundamental() {
        let rs = a2();
        let alpha = Root::new(vec![1, 0]);
        assert_eq!(
            rs.coroot_pairing(&Weight::zero(2), &alpha).unwrap(),
            rat_int(0)
        );
        let fw = Weight::from_ints(&[1, 0]);
        assert_eq!(rs.coroot_pairing(&fw, &alpha).unwrap(), rat_int(1));
    }

    #[test]
    fn coroot_pairing_rejects_non_roots() {
        let rs = a2();
        let not_root = Root::new(vec![2, 0]);
        assert!(matches!(
            rs.coroot_pairing(rs.delta(), &not_root),
            Err(RootSystemError::NotARoot(_))
        ));
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(a2().weyl_group(1_000_000).unwrap().len(), 6);
        assert_eq!(c2().weyl_group(1_000_000).unwrap().len(), 8);
        let a1 = RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap();
        assert_eq!(a1.weyl_group(1_000_000).unwrap().len(), 2);
    }

    #[test]
    fn weyl_identity_first_and_bound() {
        let rs = a2();
        let w = rs.weyl_group(1_000_000).unwrap();
        assert!(w[0].is_identity());
        assert!(matches!(
            rs.weyl_group(3),
            Err(RootSystemError::WeylOrderBound { bound: 3, .. })
        ));
    }

    #[test]
    fn affine_dot_identity_and_rank_one() {
        let a1 = RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap();
        let w = a1.weyl_group(100).unwrap();
        let zero = Weight::zero(1);
        assert_eq!(w[0].affine_dot(&a1, &zero, a1.delta()), zero);
        // s_α ·0 = s_α(δ) − δ = −2δ, coordinate −2.
        let s = &w[1];
        assert_eq!(
            s.affine_dot(&a1, &zero, a1.delta()).coords(),
            &[rat_int(-2)]
        );
    }

    #[test]
    fn affine_dot_longest_element_on_delta() {
        // In A2 the longest element sends 2δ to −2δ, so δ ↦ −3δ.
        let rs = a2();
        let w = rs.weyl_group(100).unwrap();
        let longest = w.iter().max_by_key(|e| e.word.len()).unwrap();
        let moved = longest.affine_dot(&rs, rs.delta(), rs.delta());
        assert_eq!(moved.coords(), &[rat_int(-3), rat_int(-3)]);
    }

    #[test]
    fn root_set_closed_under_weyl_and_negation() {
        for rs in [a2(), c2()] {
            for r in rs.roots() {
                assert!(rs.is_root(&r.negated()));
            }
            for w in rs.weyl_group(1000).unwrap() {
                for r in rs.roots() {
                    assert!(rs.is_root(&w.apply_root(r)));
                }
            }
        }
    }

    #[test]
    fn reflection_closure_property() {
        let rs = c2();
        for gamma in rs.roots() {
            for j in 0..rs.rank() {
                assert!(rs.is_root(&rs.reflect_root(j, gamma)));
            }
        }
    }

    #[test]
    fn weight_and_root_actions_agree() {
        let rs = c2();
        for w in rs.weyl_group(1000).unwrap() {
            for r in rs.roots() {
                let via_root = rs.root_to_weight(&w.apply_root(r));
                let via_weight = w.apply_weight(&rs, &rs.root_to_weight(r));
                assert_eq!(via_root, via_weight);
            }
        }
    }

    #[test]
    fn form_is_symmetric_and_weyl_invariant() {
        let rs = c2();
        for a in rs.roots() {
            for b in rs.roots() {
                assert_eq!(rs.form_roots(a, b), rs.form_roots(b, a));
            }
        }
        for w in rs.weyl_group(1000).unwrap() {
            for a in rs.roots() {
                for b in rs.roots() {
                    assert_eq!(
                        rs.form_roots(&w.apply_root(a), &w.apply_root(b)),
                        rs.form_roots(a, b)
                    );
                }
            }
        }
    }

    #[test]
    fn weight_root_coord_round_trip() {
        let rs = c2();
        for r in rs.roots() {
            let w = rs.root_to_weight(r);
            let c = rs.weight_to_root_coords(&w);
            let expect: Vec<Rat> = r.coeffs().iter().map(|&v| rat_int(v)).collect();
            assert_eq!(c, expect);
        }
        let w = Weight::new(vec![rat(1, 2), rat(-3, 7)]);
        let c = rs.weight_to_root_coords(&w);
        // Re-pair against the simple coroots.
        let back: Vec<Rat> = (0..2)
            .map(|j| {
                (0..2)
                    .map(|i| &c[i] * rat_int(rs.cartan().entry(i, j)))
                    .sum()
            })
            .collect();
        assert_eq!(back, w.coords().to_vec());
    }

    #[test]
    fn positive_system_validation() {
        let rs = a2();
        let std = PositiveSystem::standard(&rs);
        assert_eq!(std.len(), 3);
        assert_eq!(std.simple_roots().len(), 2);
        // P' = {α+β, −β, α} is a valid positive system of A2.
        let p2 = PositiveSystem::new(
            &rs,
            vec![
                Root::new(vec![1, 1]),
                Root::new(vec![0, -1]),
                Root::new(vec![1, 0]),
            ],
        )
        .unwrap();
        assert!(p2.contains(&Root::new(vec![0, -1])));
        // Not closed under addition / clashing signs.
        assert!(PositiveSystem::new(
            &rs,
            vec![
                Root::new(vec![1, 0]),
                Root::new(vec![-1, 0]),
                Root::new(vec![1, 1]),
            ],
        )
        .is_err());
        assert!(PositiveSystem::new(
            &rs,
            vec![
                Root::new(vec![1, 0]),
                Root::new(vec![0, 1]),
                Root::new(vec![-1, -1]),
            ],
        )
        .is_err());
    }

    #[test]
    fn delta_is_half_sum_and_pairs_to_one() {
        for rs in [a2(), c2()] {
            let p = PositiveSystem::standard(&rs);
            assert_eq!(&p.half_sum(&rs), rs.delta());
            for c in rs.delta().coords() {
                assert_eq!(c, &rat_int(1));
            }
        }
    }

    #[test]
    fn direct_sum_builds_product_systems() {
        let a1 = CartanMatrix::of_series('A', 1).unwrap();
        let sum = a1.direct_sum(&a1).unwrap();
        let rs = RootSystem::new(sum).unwrap();
        assert_eq!(rs.num_roots(), 4);
        assert_eq!(rs.weyl_group(100).unwrap().len(), 4);
    }
}
