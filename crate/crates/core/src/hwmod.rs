//! Weight multiplicities of finite-dimensional modules over the compact
//! subalgebra and of the universal highest-weight module, plus the
//! irreducibility, unitarity and infinitesimal-character criteria.
//!
//! Main items:
//! - [`freudenthal`]: complete weight table of an irreducible module, by the
//!   Freudenthal recursion over an arbitrary positive-root subset
//! - [`PartitionCache`]: memoized vector partition function `N(ν)`
//! - [`exhaustive_partition_count`]: the naive enumeration oracle for `N`
//! - [`UModule`]: multiplicities `dim U^λ[μ] = Σ k_i·N(λ_i − μ)` and the
//!   tensor-model brute force that certifies them
//! - [`irreducibility_sufficient`], [`duflo_criterion`],
//!   [`unitarity_necessary`], [`trivial_unitary_scan`],
//!   [`infinitesimal_character_equal`]
//!
//! The multiplicity formula is implemented with argument `λ_i − μ`; the
//! tensor-model enumeration is the arbiter for that orientation and the two
//! routes are compared weight-by-weight in the verification suite.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::hcpair::{HcPair, PairError};
use crate::rational::{format_rat, is_nonneg_integer, is_positive_integer, rat_int, Rat};
use crate::rootsys::{
    root_order_key, PositiveSystem, Root, RootSystem, RootSystemError, RootSystemRef, Weight,
};

#[derive(Debug, Error)]
pub enum HwError {
    #[error("weight is not dominant integral for the subsystem: pairing with {root} is {value}")]
    NotDominantIntegral { root: String, value: String },
    #[error("positive system is not admissible; the module construction needs P_t ≠ ∅")]
    NotAdmissible,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    RootSys(#[from] RootSystemError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

// ---------------------------------------------------------------------------
// Freudenthal weight tables
// ---------------------------------------------------------------------------

/// Weight table of a finite-dimensional irreducible module.
#[derive(Debug, Clone)]
pub struct FiniteModuleTable {
    pub highest_weight: Weight,
    /// Pairs `(μ, multiplicity)`, sorted by weight.
    pub weights: Vec<(Weight, u64)>,
}

impl FiniteModuleTable {
    pub fn dim(&self) -> u64 {
        self.weights.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.weights
            .iter()
            .find(|(w, _)| w == mu)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }
}

/// Simple roots of a positive-root subset: members that are not the sum of
/// two members.
pub fn subset_simple_roots(q: &[Root]) -> Vec<Root> {
    let set: std::collections::BTreeSet<&Root> = q.iter().collect();
    let mut out: Vec<Root> = q
        .iter()
        .filter(|r| !q.iter().any(|a| a != *r && set.contains(&r.minus(a))))
        .cloned()
        .collect();
    out.sort_by_key(root_order_key);
    out
}

/// Complete weight table of the irreducible module with highest weight `λ`
/// over the subalgebra whose positive roots are `q`, with all inner products
/// taken in the ambient system.
///
/// `λ` must pair to a nonnegative integer with every coroot of `q`. With `q`
/// empty the module is the one-dimensional weight space `λ` itself. The total
/// dimension is cross-checked against the Weyl dimension formula before the
/// table is returned.
pub fn freudenthal(
    rs: &RootSystem,
    q: &[Root],
    lambda: &Weight,
) -> Result<FiniteModuleTable, HwError> {
    for alpha in q {
        let v = rs.coroot_pairing(lambda, alpha)?;
        if !is_nonneg_integer(&v) {
            return Err(HwError::NotDominantIntegral {
                root: alpha.to_string(),
                value: format_rat(&v),
            });
        }
    }
    let simples = subset_simple_roots(q);
    let delta_q = rs.half_sum(q);
    let q_weights: Vec<Weight> = q.iter().map(|a| rs.root_to_weight(a)).collect();
    let c = |mu: &Weight| -> Rat {
        let shifted = mu.plus(&delta_q);
        rs.weight_form(&shifted, &shifted)
    };
    let c_top = c(lambda);

    let mut table: HashMap<Weight, u64> = HashMap::new();
    table.insert(lambda.clone(), 1);
    let mut frontier: Vec<Weight> = vec![lambda.clone()];
    while !frontier.is_empty() {
        let mut candidates: Vec<Weight> = Vec::new();
        for mu in &frontier {
            for s in &simples {
                let child = mu.minus(&rs.root_to_weight(s));
                if !table.contains_key(&child) && !candidates.contains(&child) {
                    candidates.push(child);
                }
            }
        }
        candidates.sort();
        let mut next = Vec::new();
        for mu in candidates {
            let mut numer = Rat::zero();
            for alpha_w in &q_weights {
                let mut j = 1i64;
                loop {
                    let up = mu.plus(&alpha_w.scaled(&rat_int(j)));
                    let m_up = match table.get(&up) {
                        Some(&m) if m > 0 => m,
                        _ => break,
                    };
                    numer += rat_int(m_up as i64) * rs.weight_form(&up, alpha_w);
                    j += 1;
                }
            }
            numer *= rat_int(2);
            if numer.is_zero() {
                table.insert(mu, 0);
                continue;
            }
            let denom = &c_top - c(&mu);
            if denom.is_zero() {
                return Err(HwError::Internal(format!(
                    "Freudenthal denominator vanished at {mu} with nonzero numerator"
                )));
            }
            let m = numer / denom;
            if !m.denom().is_one() || m.is_negative() {
                return Err(HwError::Internal(format!(
                    "non-integer multiplicity {} at {mu}",
                    format_rat(&m)
                )));
            }
            use num::ToPrimitive;
            let m = m
                .numer()
                .to_u64()
                .ok_or_else(|| HwError::Internal("multiplicity overflow".into()))?;
            table.insert(mu.clone(), m);
            if m > 0 {
                next.push(mu);
            }
        }
        frontier = next;
    }

    let mut weights: Vec<(Weight, u64)> = table.into_iter().filter(|(_, m)| *m > 0).collect();
    weights.sort_by(|a, b| a.0.cmp(&b.0));
    let result = FiniteModuleTable {
        highest_weight: lambda.clone(),
        weights,
    };

    let mut expect = Rat::one();
    let lam_shift = lambda.plus(&delta_q);
    for alpha_w in &q_weights {
        expect *= rs.weight_form(&lam_shift, alpha_w) / rs.weight_form(&delta_q, alpha_w);
    }
    if expect != rat_int(result.dim() as i64) {
        return Err(HwError::Internal(format!(
            "dimension {} does not match the Weyl formula value {}",
            result.dim(),
            format_rat(&expect)
        )));
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Vector partition function
// ---------------------------------------------------------------------------

/// Memoized vector partition function over a fixed generator list.
///
/// `count(ν)` is the number of ways to write `ν` as a nonnegative integer
/// combination of the generators. The memo sits behind a mutex so concurrent
/// queries against one cache are linearizable.
///
/// Termination needs a linear functional that is strictly positive on every
/// generator. [`PartitionCache::new`] uses the root height (valid for
/// standard-positive generators, where additionally `N(ν) = 0` whenever `ν`
/// has a negative coefficient); [`PartitionCache::with_grading`] accepts any
/// such functional, which is how nonstandard positive systems are handled.
#[derive(Debug)]
pub struct PartitionCache {
    generators: Vec<Root>,
    /// Functional coefficients per simple coordinate.
    grading: Vec<i64>,
    /// Grade of each generator, strictly positive.
    generator_grades: Vec<i64>,
    /// All generators have nonnegative coordinates (enables the sign prune).
    all_nonneg: bool,
    memo: Mutex<HashMap<(usize, Vec<i64>), u64>>,
}

impl PartitionCache {
    /// Generators keep the given order; the recursion peels them left to
    /// right, so `N(ν) = Σ_m N'(ν − m·γ_1)` with `N'` over the tail. The
    /// generators must have positive height.
    pub fn new(generators: Vec<Root>) -> Self {
        let rank = generators.first().map_or(0, |g| g.coeffs().len());
        Self::with_grading(generators, vec![1; rank])
    }

    /// Build with an explicit grading functional `ℓ(ν) = Σ grading[i]·ν_i`;
    /// every generator must have a strictly positive grade.
    pub fn with_grading(generators: Vec<Root>, grading: Vec<i64>) -> Self {
        let grade = |g: &Root| -> i64 { g.coeffs().iter().zip(&grading).map(|(c, w)| c * w).sum() };
        let generator_grades: Vec<i64> = generators.iter().map(grade).collect();
        assert!(
            generator_grades.iter().all(|&g| g > 0),
            "every generator needs positive grade"
        );
        let all_nonneg = generators
            .iter()
            .all(|g| g.coeffs().iter().all(|&c| c >= 0));
        Self {
            generators,
            grading,
            generator_grades,
            all_nonneg,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn generators(&self) -> &[Root] {
        &self.generators
    }

    fn grade_of(&self, nu: &[i64]) -> i64 {
        nu.iter().zip(&self.grading).map(|(c, w)| c * w).sum()
    }

    /// `N(ν)` for a root-lattice vector in simple-root coordinates. Returns 0
    /// for unreachable `ν`; with standard-positive generators this covers any
    /// vector with a negative coefficient.
    pub fn count(&self, nu: &[i64]) -> u64 {
        self.count_from(0, nu.to_vec())
    }

    fn count_from(&self, k: usize, nu: Vec<i64>) -> u64 {
        if nu.iter().all(|&c| c == 0) {
            return 1;
        }
        let budget = self.grade_of(&nu);
        if budget <= 0 || k == self.generators.len() {
            return 0;
        }
        if self.all_nonneg && nu.iter().any(|&c| c < 0) {
            return 0;
        }
        let key = (k, nu.clone());
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return v;
        }
        let gamma = self.generators[k].coeffs().to_vec();
        let max_m = budget / self.generator_grades[k];
        let mut total = 0u64;
        for m in 0..=max_m {
            let rest: Vec<i64> = nu.iter().zip(&gamma).map(|(&n, &g)| n - m * g).collect();
            total += self.count_from(k + 1, rest);
        }
        self.memo.lock().unwrap().insert(key, total);
        total
    }
}

/// Naive enumeration of all exponent tuples: the independent oracle for
/// [`PartitionCache::count`]. Exponential; only for small heights, and only
/// for generators with nonnegative coordinates (the loop bound relies on it).
pub fn exhaustive_partition_count(generators: &[Root], nu: &[i64]) -> u64 {
    assert!(
        generators
            .iter()
            .all(|g| g.coeffs().iter().all(|&c| c >= 0)),
        "the enumeration oracle needs standard-positive generators"
    );
    fn go(generators: &[Root], nu: &[i64], k: usize) -> u64 {
        if k == generators.len() {
            return u64::from(nu.iter().all(|&c| c == 0));
        }
        let gamma = generators[k].coeffs();
        let mut total = 0;
        let mut m = 0i64;
        loop {
            let rest: Vec<i64> = nu.iter().zip(gamma).map(|(&n, &g)| n - m * g).collect();
            if rest.iter().any(|&c| c < 0) {
                break;
            }
            total += go(generators, &rest, k + 1);
            m += 1;
        }
        total
    }
    if nu.iter().any(|&c| c < 0) {
        return 0;
    }
    go(generators, nu, 0)
}

// ---------------------------------------------------------------------------
// The universal highest-weight module
// ---------------------------------------------------------------------------

/// Multiplicity engine for the universal highest-weight module over an
/// admissible positive system: the finite table of `F_λ` over the compact
/// part together with the partition function on the totally positive roots.
#[derive(Debug)]
pub struct UModule {
    rs: RootSystemRef,
    lambda: Weight,
    f_table: FiniteModuleTable,
    /// Totally positive roots in enumeration order.
    generators: Vec<Root>,
    cache: PartitionCache,
    /// P-height functional: coordinate sums over the simple basis of `P`,
    /// so depths are measured relative to the chosen positive system.
    grading: Vec<i64>,
}

impl UModule {
    pub fn new(pair: &HcPair, p: &PositiveSystem, lambda: &Weight) -> Result<Self, HwError> {
        let rs = pair.root_system().clone();
        let p_k = pair.compact_part(p);
        for alpha in &p_k {
            let v = rs.coroot_pairing(lambda, alpha)?;
            if !is_nonneg_integer(&v) {
                return Err(HwError::NotDominantIntegral {
                    root: alpha.to_string(),
                    value: format_rat(&v),
                });
            }
        }
        let p_t = pair.totally_positive_roots(p);
        if p_t.is_empty() {
            return Err(HwError::NotAdmissible);
        }
        let mut generators: Vec<Root> = p_t.into_iter().collect();
        generators.sort_by_key(root_order_key);
        let f_table = freudenthal(&rs, &p_k, lambda)?;
        let grading = p_height_grading(p)?;
        Ok(Self {
            rs,
            lambda: lambda.clone(),
            f_table,
            generators: generators.clone(),
            cache: PartitionCache::with_grading(generators, grading.clone()),
            grading,
        })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn f_table(&self) -> &FiniteModuleTable {
        &self.f_table
    }

    pub fn generators(&self) -> &[Root] {
        &self.generators
    }

    fn lattice_coords(&self, diff: &Weight) -> Option<Vec<i64>> {
        rat_vec_to_ints(&self.rs.weight_to_root_coords(diff))
    }

    fn grade_of(&self, coords: &[i64]) -> i64 {
        coords.iter().zip(&self.grading).map(|(c, w)| c * w).sum()
    }

    /// P-height of `λ − μ` when it lies in the root lattice: the depth at
    /// which the weight space of `μ` sits below the highest weight. Equals
    /// the ordinary root height for the standard positive system.
    pub fn drop_height(&self, mu: &Weight) -> Option<i64> {
        self.lattice_coords(&self.lambda.minus(mu))
            .map(|v| self.grade_of(&v))
    }

    /// `dim U^λ[μ] = Σ_i k_i · N(λ_i − μ)`.
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        let mut total = 0u64;
        for (mu_i, k_i) in &self.f_table.weights {
            let Some(nu) = self.lattice_coords(&mu_i.minus(mu)) else {
                continue;
            };
            total += k_i * self.cache.count(&nu);
        }
        total
    }

    /// Tensor-model oracle: enumerate PBW monomials in the totally positive
    /// root vectors (exponents `m` with total P-height `Σ m_j·ht_P(γ_j)` at
    /// most `depth`) and tally `λ_i − Σ m_j γ_j` against the weight table of
    /// `F_λ`.
    ///
    /// The returned table is complete exactly for the weights `μ` with
    /// `ht_P(λ−μ) ≤ depth`; anything farther down is omitted.
    pub fn brute_force_table(&self, depth: i64) -> BTreeMap<Weight, u64> {
        let heights: Vec<i64> = self
            .generators
            .iter()
            .map(|g| self.grade_of(g.coeffs()))
            .collect();
        // P-height of λ − λ_i per table entry.
        let drops: Vec<i64> = self
            .f_table
            .weights
            .iter()
            .map(|(mu_i, _)| {
                let coords = self
                    .lattice_coords(&self.lambda.minus(mu_i))
                    .expect("F_λ weights differ from λ by root-lattice vectors");
                self.grade_of(&coords)
            })
            .collect();
        let mut table = BTreeMap::new();
        let mut exponents = vec![0i64; self.generators.len()];
        self.enumerate(
            0,
            depth,
            &mut exponents,
            &heights,
            &drops,
            depth,
            &mut table,
        );
        table
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        k: usize,
        budget: i64,
        exponents: &mut Vec<i64>,
        heights: &[i64],
        drops: &[i64],
        depth: i64,
        table: &mut BTreeMap<Weight, u64>,
    ) {
        if k == self.generators.len() {
            let mut shift = Root::new(vec![0; self.rs.rank()]);
            for (m, g) in exponents.iter().zip(&self.generators) {
                if *m != 0 {
                    let mut scaled = g.clone();
                    for _ in 1..*m {
                        scaled = scaled.plus(g);
                    }
                    shift = shift.plus(&scaled);
                }
            }
            let shift_w = self.rs.root_to_weight(&shift);
            let shift_height = self.grade_of(shift.coeffs());
            for ((mu_i, k_i), drop) in self.f_table.weights.iter().zip(drops) {
                if drop + shift_height > depth {
                    continue;
                }
                let mu = mu_i.minus(&shift_w);
                *table.entry(mu).or_insert(0) += k_i;
            }
            return;
        }
        let h = heights[k];
        debug_assert!(h > 0);
        let max_m = budget / h;
        for m in 0..=max_m {
            exponents[k] = m;
            self.enumerate(
                k + 1,
                budget - m * h,
                exponents,
                heights,
                drops,
                depth,
                table,
            );
        }
        exponents[k] = 0;
    }
}

/// Coordinate-sum functional over the simple basis of `p`: integer valued on
/// the root lattice (the simple roots of a positive system are a lattice
/// basis) and strictly positive on `p`.
fn p_height_grading(p: &PositiveSystem) -> Result<Vec<i64>, HwError> {
    let simples = p.simple_roots();
    let n = simples.first().map_or(0, |s| s.coeffs().len());
    if simples.len() != n {
        return Err(HwError::Internal(format!(
            "positive system has {} simple roots at rank {n}",
            simples.len()
        )));
    }
    // Solve Sᵀ·h = 1 with S the matrix of simple-root columns.
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            let mut v: Vec<Rat> = (0..n)
                .map(|col| rat_int(simples[row].coeffs()[col]))
                .collect();
            v.push(rat_int(1));
            v
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or_else(|| HwError::Internal("degenerate simple system".into()))?;
        a.swap(k, pivot);
        let pv = a[k][k].clone();
        for v in &mut a[k] {
            *v /= &pv;
        }
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                for j in 0..=n {
                    let sub = &f * &a[k][j];
                    a[r][j] -= sub;
                }
            }
        }
    }
    let mut h = Vec::with_capacity(n);
    for row in &a {
        let v = &row[n];
        if !v.denom().is_one() {
            return Err(HwError::Internal("non-integral height functional".into()));
        }
        use num::ToPrimitive;
        h.push(
            v.numer()
                .to_i64()
                .ok_or_else(|| HwError::Internal("height functional overflow".into()))?,
        );
    }
    Ok(h)
}

/// Convenience wrapper building the engine for a single query.
pub fn u_module_multiplicity(
    pair: &HcPair,
    p: &PositiveSystem,
    lambda: &Weight,
    mu: &Weight,
) -> Result<u64, HwError> {
    Ok(UModule::new(pair, p, lambda)?.multiplicity(mu))
}

fn rat_vec_to_ints(v: &[Rat]) -> Option<Vec<i64>> {
    use num::ToPrimitive;
    v.iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Evaluation of one root against a sign condition.
#[derive(Debug, Clone)]
pub struct RootWitness {
    pub root: Root,
    pub value: Rat,
    pub ok: bool,
}

/// Outcome of a per-root sign criterion with full witness list.
#[derive(Debug, Clone)]
pub struct SignVerdict {
    pub holds: bool,
    pub witnesses: Vec<RootWitness>,
}

fn sign_verdict<F>(rs: &RootSystem, roots: &[Root], weight: &Weight, ok: F) -> SignVerdict
where
    F: Fn(&Rat, &Root) -> bool,
{
    let mut witnesses = Vec::with_capacity(roots.len());
    for gamma in roots {
        let value = rs
            .coroot_pairing(weight, gamma)
            .expect("criterion roots come from the system");
        let pass = ok(&value, gamma);
        witnesses.push(RootWitness {
            root: gamma.clone(),
            value,
            ok: pass,
        });
    }
    SignVerdict {
        holds: witnesses.iter().all(|w| w.ok),
        witnesses,
    }
}

/// Sufficient irreducibility condition: `(λ+δ_P)(H_γ) ≤ 0` for every
/// noncompact positive root. One-sided; a false verdict makes no claim.
pub fn irreducibility_sufficient(
    pair: &HcPair,
    p: &PositiveSystem,
    lambda: &Weight,
) -> SignVerdict {
    let rs = pair.root_system();
    let shifted = lambda.plus(&p.half_sum(rs));
    let p_n = pair.noncompact_part(p);
    sign_verdict(rs, &p_n, &shifted, |v, _| !v.is_positive())
}

/// Verma irreducibility criterion: `V^λ` is irreducible iff `(λ+δ_P)(H_γ)`
/// is not a positive integer for any `γ ∈ P`.
pub fn duflo_criterion(rs: &RootSystem, p: &PositiveSystem, lambda: &Weight) -> SignVerdict {
    let shifted = lambda.plus(&p.half_sum(rs));
    sign_verdict(rs, p.roots(), &shifted, |v, _| !is_positive_integer(v))
}

/// Necessary unitarity conditions: `λ(H_γ) ≥ 0` on compact positive roots,
/// `λ(H_γ) ≤ 0` on noncompact positive roots.
pub fn unitarity_necessary(pair: &HcPair, p: &PositiveSystem, lambda: &Weight) -> SignVerdict {
    let rs = pair.root_system();
    sign_verdict(rs, p.roots(), lambda, |v, gamma| {
        if pair.is_compact(gamma) {
            !v.is_negative()
        } else {
            !v.is_positive()
        }
    })
}

/// Scan result for the trivial-unitary check.
#[derive(Debug, Clone)]
pub struct ScanVerdict {
    /// True iff the zero weight is the only survivor.
    pub holds: bool,
    pub survivors: Vec<Weight>,
    pub scanned: u64,
}

/// Scan all integral `λ` with `|λ(H_{α_i})| ≤ box_bound` that are dominant
/// for the whole of `P` and satisfy the necessary unitarity conditions; the
/// only expected survivor is `λ = 0`.
pub fn trivial_unitary_scan(pair: &HcPair, p: &PositiveSystem, box_bound: i64) -> ScanVerdict {
    let rs = pair.root_system();
    let rank = rs.rank();
    let mut survivors = Vec::new();
    let mut coords = vec![-box_bound; rank];
    let mut scanned = 0u64;
    loop {
        scanned += 1;
        let lambda = Weight::from_ints(&coords);
        let dominant = p
            .roots()
            .iter()
            .all(|g| !rs.coroot_pairing_unchecked(&lambda, g).is_negative());
        if dominant && unitarity_necessary(pair, p, &lambda).holds {
            survivors.push(lambda);
        }
        // Odometer.
        let mut i = 0;
        loop {
            if i == rank {
                let holds = survivors.len() == 1 && survivors[0].is_zero();
                survivors.sort();
                return ScanVerdict {
                    holds,
                    survivors,
                    scanned,
                };
            }
            if coords[i] < box_bound {
                coords[i] += 1;
                break;
            }
            coords[i] = -box_bound;
            i += 1;
        }
    }
}

/// Equality of infinitesimal characters, decided by the affine Weyl orbit:
/// true iff `s(λ+δ) = μ+δ` for some Weyl element `s`.
pub fn infinitesimal_character_equal(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
    order_bound: usize,
) -> Result<bool, HwError> {
    let delta = rs.delta();
    let target = mu.plus(delta);
    let start = lambda.plus(delta);
    for w in rs.weyl_group(order_bound)? {
        if w.apply_weight(rs, &start) == target {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hcpair::a2_example_pair;
    use crate::rootsys::{CartanMatrix, DEFAULT_WEYL_ORDER_BOUND};
    use std::sync::Arc;

    fn a2_rs() -> RootSystem {
        RootSystem::new(CartanMatrix::of_series('A', 2).unwrap()).unwrap()
    }

    fn a1_pair() -> HcPair {
        let rs = Arc::new(RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap());
        HcPair::build(rs, &[0]).unwrap()
    }

    // -- Freudenthal --------------------------------------------------------

    #[test]
    fn sl2_adjoint_weights() {
        let rs = RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap();
        let q = rs.positive_roots().to_vec();
        let table = freudenthal(&rs, &q, &Weight::from_ints(&[2])).unwrap();
        assert_eq!(table.dim(), 3);
        for target in [-2i64, 0, 2] {
            assert_eq!(table.multiplicity(&Weight::from_ints(&[target])), 1);
        }
    }

    #[test]
    fn trivial_module_single_weight() {
        let rs = a2_rs();
        let q = rs.positive_roots().to_vec();
        let table = freudenthal(&rs, &q, &Weight::zero(2)).unwrap();
        assert_eq!(table.dim(), 1);
        assert_eq!(table.multiplicity(&Weight::zero(2)), 1);
    }

    #[test]
    fn a2_adjoint_has_dim_eight_and_double_zero() {
        let rs = a2_rs();
        let q = rs.positive_roots().to_vec();
        let table = freudenthal(&rs, &q, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(table.dim(), 8);
        assert_eq!(table.multiplicity(&Weight::zero(2)), 2);
    }

    #[test]
    fn freudenthal_rejects_non_dominant() {
        let rs = a2_rs();
        let q = rs.positive_roots().to_vec();
        assert!(matches!(
            freudenthal(&rs, &q, &Weight::from_ints(&[-1, 0])),
            Err(HwError::NotDominantIntegral { .. })
        ));
        assert!(matches!(
            freudenthal(
                &rs,
                &q,
                &Weight::new(vec![crate::rational::rat(1, 2), Rat::zero()])
            ),
            Err(HwError::NotDominantIntegral { .. })
        ));
    }

    #[test]
    fn freudenthal_empty_subsystem() {
        let rs = a2_rs();
        let lam = Weight::from_ints(&[3, -7]);
        let table = freudenthal(&rs, &[], &lam).unwrap();
        assert_eq!(table.dim(), 1);
        assert_eq!(table.multiplicity(&lam), 1);
    }

    #[test]
    fn weight_table_weyl_invariant() {
        let rs = a2_rs();
        let q = rs.positive_roots().to_vec();
        let table = freudenthal(&rs, &q, &Weight::from_ints(&[2, 1])).unwrap();
        for w in rs.weyl_group(100).unwrap() {
            for (mu, m) in &table.weights {
                let img = w.apply_weight(&rs, mu);
                assert_eq!(table.multiplicity(&img), *m);
            }
        }
    }

    // -- Partition function -------------------------------------------------

    fn a2_pt_generators() -> Vec<Root> {
        vec![Root::new(vec![0, 1]), Root::new(vec![1, 1])]
    }

    #[test]
    fn partition_base_cases() {
        let cache = PartitionCache::new(a2_pt_generators());
        assert_eq!(cache.count(&[0, 0]), 1);
        assert_eq!(cache.count(&[1, 2]), 1);
        assert_eq!(cache.count(&[0, 2]), 1);
        assert_eq!(cache.count(&[1, 0]), 0);
        assert_eq!(cache.count(&[-1, 1]), 0);
    }

    #[test]
    fn partition_matches_exhaustive_oracle() {
        let gens = a2_pt_generators();
        let cache = PartitionCache::new(gens.clone());
        for a in 0..=10 {
            for b in 0..=10 {
                assert_eq!(
                    cache.count(&[a, b]),
                    exhaustive_partition_count(&gens, &[a, b]),
                    "at ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn partition_over_full_positive_system() {
        // Lemma-style section-space dimensions: generators = all of P.
        let rs = a2_rs();
        let gens = rs.positive_roots().to_vec();
        let cache = PartitionCache::new(gens.clone());
        for a in 0..=8 {
            for b in 0..=8i64 {
                if a + b > 8 {
                    continue;
                }
                assert_eq!(
                    cache.count(&[a, b]),
                    exhaustive_partition_count(&gens, &[a, b])
                );
            }
        }
        // d = α+β can be α+β itself or α plus β.
        assert_eq!(cache.count(&[1, 1]), 2);
    }

    // -- UModule -------------------------------------------------------------

    #[test]
    fn u_module_highest_weight_is_simple() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        for lam in [
            Weight::zero(2),
            Weight::from_ints(&[2, 0]),
            Weight::from_ints(&[1, -3]),
        ] {
            let u = UModule::new(&pair, &p, &lam).unwrap();
            assert_eq!(u.multiplicity(&lam), 1);
        }
    }

    #[test]
    fn u_module_small_a2_values() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        let u = UModule::new(&pair, &p, &Weight::zero(2)).unwrap();
        let beta = rs.root_to_weight(&Root::new(vec![0, 1]));
        let theta = rs.root_to_weight(&Root::new(vec![1, 2]));
        assert_eq!(u.multiplicity(&Weight::zero(2).minus(&beta)), 1);
        assert_eq!(u.multiplicity(&Weight::zero(2).minus(&theta)), 1);
        // μ not of the form λ_i − P_t-sum: returns 0, not an error.
        let alpha = rs.root_to_weight(&Root::new(vec![1, 0]));
        assert_eq!(u.multiplicity(&Weight::zero(2).minus(&alpha)), 0);
    }

    #[test]
    fn brute_force_depth_zero_is_f_table() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        let lam = Weight::from_ints(&[2, 0]);
        let u = UModule::new(&pair, &p, &lam).unwrap();
        let table = u.brute_force_table(0);
        // Depth 0 keeps exactly the depth-0 slice of F_λ: its highest weight.
        assert_eq!(table.len(), 1);
        assert_eq!(table.get(&lam), Some(&1));
    }

    #[test]
    fn brute_force_depth_three_values() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        let u = UModule::new(&pair, &p, &Weight::zero(2)).unwrap();
        let table = u.brute_force_table(3);
        let at = |c: &[i64]| {
            let root = Root::new(c.to_vec());
            let w = Weight::zero(2).minus(&rs.root_to_weight(&root));
            table.get(&w).copied()
        };
        assert_eq!(at(&[0, 0]), Some(1));
        assert_eq!(at(&[0, 1]), Some(1)); // −β
        assert_eq!(at(&[1, 1]), Some(1)); // −(α+β)
        assert_eq!(at(&[0, 2]), Some(1)); // −2β
        assert_eq!(at(&[1, 2]), Some(1)); // −β−(α+β)
        assert_eq!(at(&[0, 3]), Some(1));
        assert_eq!(at(&[1, 0]), None); // −α unreachable
    }

    #[test]
    fn a1_brute_force_polynomial_ring() {
        let pair = a1_pair();
        let rs = pair.root_system().clone();
        let p = PositiveSystem::standard(&rs);
        let u = UModule::new(&pair, &p, &Weight::zero(1)).unwrap();
        let table = u.brute_force_table(6);
        assert_eq!(table.len(), 7);
        for m in table.values() {
            assert_eq!(*m, 1);
        }
    }

    #[test]
    fn dp_agrees_with_brute_force_on_a2() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        for lam in [
            Weight::zero(2),
            Weight::from_ints(&[3, 0]),
            Weight::from_ints(&[1, -2]),
        ] {
            let u = UModule::new(&pair, &p, &lam).unwrap();
            let table = u.brute_force_table(8);
            for (mu, m) in &table {
                assert_eq!(u.multiplicity(mu), *m, "λ = {lam}, μ = {mu}");
            }
        }
    }

    #[test]
    fn u_module_over_the_opposite_admissible_system() {
        // P⁻ = P_k ∪ −P_n: weights of the module move upward.
        let (rs, pair) = a2_example_pair();
        let p_minus = PositiveSystem::new(
            &rs,
            vec![
                Root::new(vec![1, 0]),
                Root::new(vec![0, -1]),
                Root::new(vec![-1, -1]),
            ],
        )
        .unwrap();
        let u = UModule::new(&pair, &p_minus, &Weight::zero(2)).unwrap();
        assert_eq!(u.multiplicity(&Weight::zero(2)), 1);
        let beta = rs.root_to_weight(&Root::new(vec![0, 1]));
        assert_eq!(u.multiplicity(&Weight::zero(2).plus(&beta)), 1);
        assert_eq!(u.multiplicity(&Weight::zero(2).minus(&beta)), 0);
        let table = u.brute_force_table(8);
        for (mu, m) in &table {
            assert_eq!(u.multiplicity(mu), *m, "μ = {mu}");
        }
        assert!(table.len() > 10);
    }

    #[test]
    fn u_module_over_mixed_sign_generators() {
        // A2 with both simple roots marked: compact roots ±(α+β); the
        // admissible system {α+β, α, −β} has P_t = {α, −β}, mixed signs in
        // simple coordinates.
        let rs = Arc::new(RootSystem::new(CartanMatrix::of_series('A', 2).unwrap()).unwrap());
        let pair = HcPair::build(rs.clone(), &[0, 1]).unwrap();
        let p = PositiveSystem::new(
            &rs,
            vec![
                Root::new(vec![1, 1]),
                Root::new(vec![1, 0]),
                Root::new(vec![0, -1]),
            ],
        )
        .unwrap();
        let p_t = pair.totally_positive_roots(&p);
        assert_eq!(p_t.len(), 2);
        let u = UModule::new(&pair, &p, &Weight::zero(2)).unwrap();
        assert_eq!(u.multiplicity(&Weight::zero(2)), 1);
        // λ − (α − β) is reached exactly once: one step along each generator.
        let alpha_minus_beta = rs.root_to_weight(&Root::new(vec![1, -1]));
        assert_eq!(u.multiplicity(&Weight::zero(2).minus(&alpha_minus_beta)), 1);
        let table = u.brute_force_table(8);
        for (mu, m) in &table {
            assert_eq!(u.multiplicity(mu), *m, "μ = {mu}");
        }
    }

    #[test]
    fn u_module_rejects_bad_inputs() {
        let (rs, pair) = a2_example_pair();
        let std = PositiveSystem::standard(&rs);
        assert!(matches!(
            UModule::new(&pair, &std, &Weight::from_ints(&[-1, 0])),
            Err(HwError::NotDominantIntegral { .. })
        ));
        let not_adm = PositiveSystem::new(
            &rs,
            vec![
                Root::new(vec![1, 1]),
                Root::new(vec![0, -1]),
                Root::new(vec![1, 0]),
            ],
        )
        .unwrap();
        assert!(matches!(
            UModule::new(&pair, &not_adm, &Weight::zero(2)),
            Err(HwError::NotAdmissible)
        ));
    }

    // -- Criteria ------------------------------------------------------------

    #[test]
    fn irreducibility_on_a2_fixture() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        // λ = 0: (λ+δ)(H_β) = 1 > 0, condition fails (no claim).
        let v = irreducibility_sufficient(&pair, &p, &Weight::zero(2));
        assert!(!v.holds);
        assert_eq!(v.witnesses.len(), 2);
        // Deep negative λ on the noncompact direction satisfies it.
        let v = irreducibility_sufficient(&pair, &p, &Weight::from_ints(&[0, -10]));
        assert!(v.holds, "{:?}", v.witnesses);
        // Large positive fails.
        let v = irreducibility_sufficient(&pair, &p, &Weight::from_ints(&[0, 10]));
        assert!(!v.holds);
    }

    #[test]
    fn duflo_rank_one_walls() {
        let rs = RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap();
        let p = PositiveSystem::standard(&rs);
        // λ(H)=−1: shift gives 0, not a positive integer: irreducible.
        assert!(duflo_criterion(&rs, &p, &Weight::from_ints(&[-1])).holds);
        // λ(H)=0: shift gives 1: reducible.
        assert!(!duflo_criterion(&rs, &p, &Weight::from_ints(&[0])).holds);
    }

    #[test]
    fn duflo_a2_delta_is_reducible() {
        let rs = a2_rs();
        let p = PositiveSystem::standard(&rs);
        let v = duflo_criterion(&rs, &p, rs.delta());
        assert!(!v.holds);
        // (2δ)(H_γ) over {α, β, α+β} is {2, 2, 4}: every root fails.
        let values: Vec<String> = v.witnesses.iter().map(|w| format_rat(&w.value)).collect();
        assert_eq!(values, vec!["2", "2", "4"]);
    }

    #[test]
    fn unitarity_necessary_examples() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        assert!(unitarity_necessary(&pair, &p, &Weight::zero(2)).holds);
        // λ(H_α)=1 compact-ok; noncompact β gets −3, α+β gets 1−3=−2 ≤ 0.
        assert!(unitarity_necessary(&pair, &p, &Weight::from_ints(&[1, -3])).holds);
        // Negative on the compact root fails with witness α.
        let v = unitarity_necessary(&pair, &p, &Weight::from_ints(&[-1, 0]));
        assert!(!v.holds);
        let bad: Vec<&RootWitness> = v.witnesses.iter().filter(|w| !w.ok).collect();
        assert!(bad.iter().any(|w| w.root == Root::new(vec![1, 0])));
    }

    #[test]
    fn trivial_unitary_scan_fixtures() {
        let (rs, pair) = a2_example_pair();
        let p = PositiveSystem::standard(&rs);
        let scan = trivial_unitary_scan(&pair, &p, 5);
        assert!(scan.holds, "survivors: {:?}", scan.survivors);

        let pair1 = a1_pair();
        let p1 = PositiveSystem::standard(pair1.root_system());
        assert!(trivial_unitary_scan(&pair1, &p1, 10).holds);
    }

    #[test]
    fn character_orbit_rank_one() {
        let rs = RootSystem::new(CartanMatrix::of_series('A', 1).unwrap()).unwrap();
        let zero = Weight::zero(1);
        assert!(
            infinitesimal_character_equal(&rs, &zero, &zero, DEFAULT_WEYL_ORDER_BOUND).unwrap()
        );
        assert!(infinitesimal_character_equal(
            &rs,
            &zero,
            &Weight::from_ints(&[-2]),
            DEFAULT_WEYL_ORDER_BOUND
        )
        .unwrap());
        assert!(!infinitesimal_character_equal(
            &rs,
            &zero,
            &Weight::from_ints(&[-1]),
            DEFAULT_WEYL_ORDER_BOUND
        )
        .unwrap());
    }

    #[test]
    fn character_orbit_is_equivalence_on_sample() {
        let rs = a2_rs();
        let sample: Vec<Weight> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| Weight::from_ints(&[a, b])))
            .collect();
        let eq = |x: &Weight, y: &Weight| {
            infinitesimal_character_equal(&rs, x, y, DEFAULT_WEYL_ORDER_BOUND).unwrap()
        };
        for x in &sample {
            assert!(eq(x, x));
        }
        for x in &sample {
            for y in &sample {
                assert_eq!(eq(x, y), eq(y, x));
            }
        }
        // Transitivity on the sample.
        for x in &sample {
            for y in &sample {
                if !eq(x, y) {
                    continue;
                }
                for z in &sample {
                    if eq(y, z) {
                        assert!(eq(x, z));
                    }
                }
            }
        }
    }
}
