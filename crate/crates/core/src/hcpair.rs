//! Equal-rank compact/noncompact gradings of a root system and the
//! combinatorics of admissible positive systems.
//!
//! A pair is specified by marking a subset of simple roots; a root is
//! noncompact exactly when the sum of its marked coefficients is odd. This
//! parity rule makes the grading additive, which is the root-level content of
//! the bracket relations `[k,k] ⊂ k`, `[k,p] ⊂ p`, `[p,p] ⊂ k`.
//!
//! Main items:
//! - [`HcPair`]: the grading, plus compact/noncompact views of positive systems
//! - [`HcPair::totally_positive_roots`]: the set `P_t` for a positive system
//! - [`HcPair::ideal_decomposition`]: the `g_t ⊕ g_1` split and `p⁺` summands
//! - [`verify_theorem3`]: simple-root structure checks with witnesses
//! - [`HcPair::enumerate_admissible`]: the `2^s` admissible systems over `P_k`
//! - [`HcPair::chain_length_check`]: compact-root chains through `P_t`

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{rat_int, Rat};
use crate::rootsys::{
    root_order_key, PositiveSystem, Root, RootSystem, RootSystemError, RootSystemRef, Weight,
};

#[derive(Debug, Error)]
pub enum PairError {
    #[error("empty marking: no noncompact roots")]
    EmptyMarking,
    #[error("marked index {index} out of range for rank {rank}")]
    MarkOutOfRange { index: usize, rank: usize },
    #[error("grading is not additive on the root triple ({a}, {b}, {sum})")]
    GradingNotHomomorphic { a: String, b: String, sum: String },
    #[error("positive system is not admissible (no totally positive roots)")]
    NotAdmissible,
    #[error("not a positive system of the compact subsystem: {0}")]
    BadCompactSystem(String),
    #[error(
        "component with simple roots {component:?} has noncompact roots but admits no \
         k-stable choice; mixed with Hermitian components, the 2^s enumeration does not apply"
    )]
    MixedObstruction { component: Vec<usize> },
    #[error(transparent)]
    RootSys(#[from] RootSystemError),
}

/// A root system with a parity grading into compact and noncompact roots.
#[derive(Debug, Clone)]
pub struct HcPair {
    rs: RootSystemRef,
    /// `true` at marked simple indices.
    noncompact_mask: Vec<bool>,
}

impl HcPair {
    /// Build the pair for a nonempty set of marked simple indices (0-based).
    pub fn build(rs: RootSystemRef, marks: &[usize]) -> Result<Self, PairError> {
        if marks.is_empty() {
            return Err(PairError::EmptyMarking);
        }
        let rank = rs.rank();
        let mut mask = vec![false; rank];
        for &i in marks {
            if i >= rank {
                return Err(PairError::MarkOutOfRange { index: i, rank });
            }
            mask[i] = true;
        }
        let pair = Self {
            rs,
            noncompact_mask: mask,
        };
        pair.check_grading_homomorphism()?;
        Ok(pair)
    }

    /// The degenerate all-compact grading. Rejected by [`Self::build`]; only
    /// useful to exercise the no-admissible-system cases.
    pub fn trivial(rs: RootSystemRef) -> Self {
        let rank = rs.rank();
        Self {
            rs,
            noncompact_mask: vec![false; rank],
        }
    }

    pub fn root_system(&self) -> &RootSystemRef {
        &self.rs
    }

    pub fn marks(&self) -> Vec<usize> {
        self.noncompact_mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect()
    }

    /// Compact iff the sum of marked coefficients is even.
    pub fn is_compact(&self, gamma: &Root) -> bool {
        let s: i64 = gamma
            .coeffs()
            .iter()
            .zip(&self.noncompact_mask)
            .filter(|(_, &m)| m)
            .map(|(c, _)| *c)
            .sum();
        s % 2 == 0
    }

    pub fn is_noncompact(&self, gamma: &Root) -> bool {
        !self.is_compact(gamma)
    }

    pub fn compact_roots(&self) -> Vec<Root> {
        self.rs
            .roots()
            .iter()
            .filter(|r| self.is_compact(r))
            .cloned()
            .collect()
    }

    pub fn noncompact_roots(&self) -> Vec<Root> {
        self.rs
            .roots()
            .iter()
            .filter(|r| self.is_noncompact(r))
            .cloned()
            .collect()
    }

    /// `P_k`: the compact part of a positive system.
    pub fn compact_part(&self, p: &PositiveSystem) -> Vec<Root> {
        p.roots()
            .iter()
            .filter(|r| self.is_compact(r))
            .cloned()
            .collect()
    }

    /// `P_n`: the noncompact part of a positive system.
    pub fn noncompact_part(&self, p: &PositiveSystem) -> Vec<Root> {
        p.roots()
            .iter()
            .filter(|r| self.is_noncompact(r))
            .cloned()
            .collect()
    }

    fn check_grading_homomorphism(&self) -> Result<(), PairError> {
        for a in self.rs.roots() {
            for b in self.rs.roots() {
                let sum = a.plus(b);
                if self.rs.is_root(&sum) {
                    let expect = self.is_compact(a) == self.is_compact(b);
                    if self.is_compact(&sum) != expect {
                        return Err(PairError::GradingNotHomomorphic {
                            a: a.to_string(),
                            b: b.to_string(),
                            sum: sum.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The set `P_t` of totally positive roots of `P`: the largest subset of
    /// `P_n` closed under adding any compact root inside the root system.
    ///
    /// Root spaces are one-dimensional, so a k-stable subspace of `p⁺` is a
    /// span of root spaces `R ⊆ P_n`, stable exactly when `γ ∈ R`, `α`
    /// compact, `γ+α` a root implies `γ+α ∈ R`. The union of all such `R` is
    /// the greatest fixed point of discarding roots whose compact translates
    /// escape `R`.
    pub fn totally_positive_roots(&self, p: &PositiveSystem) -> BTreeSet<Root> {
        let compact: Vec<Root> = self.compact_roots();
        let noncompact = self.noncompact_part(p);
        self.stable_core(&noncompact, &compact)
    }

    fn stable_core(&self, candidates: &[Root], compact: &[Root]) -> BTreeSet<Root> {
        let mut r: BTreeSet<Root> = candidates.iter().cloned().collect();
        loop {
            let mut evict: Vec<Root> = Vec::new();
            for gamma in &r {
                for alpha in compact {
                    let t = gamma.plus(alpha);
                    if self.rs.is_root(&t) && !r.contains(&t) {
                        evict.push(gamma.clone());
                        break;
                    }
                }
            }
            if evict.is_empty() {
                break;
            }
            for g in evict {
                r.remove(&g);
            }
        }
        r
    }

    /// `P` is admissible iff `P_t ≠ ∅`.
    pub fn is_admissible(&self, p: &PositiveSystem) -> bool {
        !self.totally_positive_roots(p).is_empty()
    }

    /// Split into `g_t ⊕ g_1` and decompose `p⁺_t` into its k-summands.
    pub fn ideal_decomposition(&self, p: &PositiveSystem) -> AdmissibleReport {
        let p_t = self.totally_positive_roots(p);
        let components = self.rs_components();
        // A simple component belongs to g_t iff it carries a totally positive root.
        let gt_components: Vec<usize> = (0..components.len())
            .filter(|&ci| p_t.iter().any(|r| component_of(r, &components) == ci))
            .collect();
        let in_gt = |r: &Root| gt_components.contains(&component_of(r, &components));
        let gt_roots: Vec<Root> = self
            .rs
            .roots()
            .iter()
            .filter(|r| in_gt(r))
            .cloned()
            .collect();
        let g1_roots: Vec<Root> = self
            .rs
            .roots()
            .iter()
            .filter(|r| !in_gt(r))
            .cloned()
            .collect();
        let gt_simple_indices: Vec<usize> = gt_components
            .iter()
            .flat_map(|&ci| components[ci].iter().copied())
            .collect();

        // Summands of p⁺_t: connected components of γ ~ γ+α over compact α.
        let compact = self.compact_roots();
        let mut assigned: BTreeMap<Root, usize> = BTreeMap::new();
        let mut summands: Vec<BTreeSet<Root>> = Vec::new();
        for seed in &p_t {
            if assigned.contains_key(seed) {
                continue;
            }
            let id = summands.len();
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([seed.clone()]);
            assigned.insert(seed.clone(), id);
            comp.insert(seed.clone());
            while let Some(g) = queue.pop_front() {
                for alpha in &compact {
                    let t = g.plus(alpha);
                    if p_t.contains(&t) && !comp.contains(&t) {
                        assigned.insert(t.clone(), id);
                        comp.insert(t.clone());
                        queue.push_back(t);
                    }
                }
            }
            summands.push(comp);
        }
        summands.sort_by_key(|c| root_order_key(c.iter().next().unwrap()));

        let compact_simples = self.compact_simple_roots(p);
        let lowest_roots: Vec<Root> = summands
            .iter()
            .map(|comp| self.lowest_of_summand(comp, &compact_simples))
            .collect();

        AdmissibleReport {
            positive_system: p.clone(),
            totally_positive: p_t,
            summands,
            lowest_roots,
            gt_simple_indices,
            gt_roots,
            g1_roots,
        }
    }

    /// Simple roots of `P_k` (members of `P_k` that are not sums of two
    /// members).
    pub fn compact_simple_roots(&self, p: &PositiveSystem) -> Vec<Root> {
        let pk: BTreeSet<Root> = self.compact_part(p).into_iter().collect();
        let mut out: Vec<Root> = pk
            .iter()
            .filter(|r| !pk.iter().any(|a| a != *r && pk.contains(&r.minus(a))))
            .cloned()
            .collect();
        out.sort_by_key(root_order_key);
        out
    }

    /// Minimal element of a summand under "difference is a nonnegative sum of
    /// compact simple roots"; uniqueness is asserted.
    fn lowest_of_summand(&self, comp: &BTreeSet<Root>, compact_simples: &[Root]) -> Root {
        let mut lowest: Vec<Root> = comp
            .iter()
            .filter(|g| !compact_simples.iter().any(|s| comp.contains(&g.minus(s))))
            .cloned()
            .collect();
        lowest.sort_by_key(root_order_key);
        assert!(
            lowest.len() == 1,
            "summand has {} minimal roots, expected exactly one",
            lowest.len()
        );
        lowest.pop().unwrap()
    }

    /// Connected components of the Dynkin diagram, as sorted index sets.
    fn rs_components(&self) -> Vec<Vec<usize>> {
        let n = self.rs.rank();
        let cm = self.rs.cartan();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if !seen[j] && cm.entry(i, j) != 0 {
                        seen[j] = true;
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// All admissible positive systems containing the given compact positive
    /// system, assembled from a sign choice per Hermitian component.
    ///
    /// Returns the empty list when no component admits totally positive
    /// roots. A component that has noncompact roots but no k-stable choice,
    /// mixed with Hermitian components, is flagged as an error instead of
    /// guessing a convention for it.
    pub fn enumerate_admissible(&self, p_k: &[Root]) -> Result<Vec<PositiveSystem>, PairError> {
        self.validate_compact_system(p_k)?;
        let components = self.rs_components();
        let pk_set: HashSet<Vec<i64>> = p_k.iter().map(|r| r.coeffs().to_vec()).collect();

        let mut forced: Vec<Root> = Vec::new();
        let mut hermitian_choices: Vec<[Vec<Root>; 2]> = Vec::new();
        let mut obstructed: Vec<Vec<usize>> = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            let comp_roots: Vec<Root> = self
                .rs
                .roots()
                .iter()
                .filter(|r| component_of(r, &components) == ci)
                .cloned()
                .collect();
            let has_noncompact = comp_roots.iter().any(|r| self.is_noncompact(r));
            if !has_noncompact {
                // Entirely compact: the restriction is forced by P_k.
                forced.extend(
                    comp_roots
                        .iter()
                        .filter(|r| pk_set.contains(r.coeffs()))
                        .cloned(),
                );
                continue;
            }
            let admissible = self.admissible_restrictions(comp, &comp_roots, &pk_set);
            match admissible.len() {
                0 => obstructed.push(comp.clone()),
                2 => hermitian_choices.push([admissible[0].clone(), admissible[1].clone()]),
                n => unreachable!("component admits {n} admissible systems, expected 0 or 2"),
            }
        }

        if hermitian_choices.is_empty() {
            return Ok(Vec::new());
        }
        if let Some(component) = obstructed.into_iter().next() {
            return Err(PairError::MixedObstruction { component });
        }

        let s = hermitian_choices.len();
        let mut out = Vec::with_capacity(1 << s);
        for eps in 0..(1usize << s) {
            let mut roots = forced.clone();
            for (bit, choice) in hermitian_choices.iter().enumerate() {
                roots.extend(choice[(eps >> bit) & 1].iter().cloned());
            }
            let p = PositiveSystem::new(&self.rs, roots)?;
            debug_assert!(self.is_admissible(&p));
            out.push(p);
        }
        out.sort_by(|a, b| a.roots().cmp(b.roots()));
        Ok(out)
    }

    /// Admissible positive-system restrictions to one component containing
    /// the given compact part, found by scanning the component's Weyl orbit
    /// of its standard positive system.
    fn admissible_restrictions(
        &self,
        comp: &[usize],
        comp_roots: &[Root],
        pk_set: &HashSet<Vec<i64>>,
    ) -> Vec<Vec<Root>> {
        let std_pos: Vec<Root> = comp_roots
            .iter()
            .filter(|r| r.is_positive())
            .cloned()
            .collect();
        let normalize = |mut v: Vec<Root>| {
            v.sort_by_key(root_order_key);
            v
        };
        let mut systems: BTreeSet<Vec<Root>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<Root>> = VecDeque::new();
        let start = normalize(std_pos);
        systems.insert(start.clone());
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            for &j in comp {
                let next = normalize(cur.iter().map(|r| self.rs.reflect_root(j, r)).collect());
                if systems.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let compact: Vec<Root> = self.compact_roots();
        systems
            .into_iter()
            .filter(|sys| {
                sys.iter()
                    .filter(|r| self.is_compact(r))
                    .all(|r| pk_set.contains(r.coeffs()))
            })
            .filter(|sys| {
                let noncompact: Vec<Root> = sys
                    .iter()
                    .filter(|g| self.is_noncompact(g))
                    .cloned()
                    .collect();
                !self.stable_core(&noncompact, &compact).is_empty()
            })
            .collect()
    }

    fn validate_compact_system(&self, p_k: &[Root]) -> Result<(), PairError> {
        let compact_all = self.compact_roots();
        let set: HashSet<Vec<i64>> = p_k.iter().map(|r| r.coeffs().to_vec()).collect();
        if set.len() != p_k.len() {
            return Err(PairError::BadCompactSystem("duplicate roots".into()));
        }
        for r in p_k {
            if !self.rs.is_root(r) {
                return Err(PairError::BadCompactSystem(format!("{r} is not a root")));
            }
            if self.is_noncompact(r) {
                return Err(PairError::BadCompactSystem(format!("{r} is noncompact")));
            }
            if set.contains(r.negated().coeffs()) {
                return Err(PairError::BadCompactSystem(format!(
                    "contains both {r} and its negative"
                )));
            }
        }
        if 2 * p_k.len() != compact_all.len() {
            return Err(PairError::BadCompactSystem(format!(
                "expected {} roots, got {}",
                compact_all.len() / 2,
                p_k.len()
            )));
        }
        for a in p_k {
            for b in p_k {
                let sum = a.plus(b);
                if self.rs.is_root(&sum) && self.is_compact(&sum) && !set.contains(sum.coeffs()) {
                    return Err(PairError::BadCompactSystem(format!(
                        "not closed under addition: {a} + {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Chain bound from the structure theory: for totally positive `γ` and
    /// any compact root `α`, the `α`-chain through `γ` has length at most 3,
    /// i.e. `γ(H_α) ≤ 2`.
    pub fn chain_length_check(&self, p_t: &BTreeSet<Root>) -> ChainLengthVerdict {
        let mut violations = Vec::new();
        let mut max_pairing: i64 = 0;
        let compact = self.compact_roots();
        for gamma in p_t {
            let gw = self.rs.root_to_weight(gamma);
            for alpha in &compact {
                let v = self
                    .rs
                    .coroot_pairing(&gw, alpha)
                    .expect("compact root is a root");
                let v = rat_to_i64(&v);
                max_pairing = max_pairing.max(v);
                if v > 2 {
                    violations.push(ChainViolation {
                        gamma: gamma.clone(),
                        alpha: alpha.clone(),
                        pairing: v,
                    });
                }
            }
        }
        ChainLengthVerdict {
            holds: violations.is_empty(),
            max_pairing,
            violations,
        }
    }
}

fn rat_to_i64(r: &Rat) -> i64 {
    use num::ToPrimitive;
    debug_assert!(r.denom().is_one());
    r.numer().to_i64().expect("small integer pairing")
}

fn component_of(r: &Root, components: &[Vec<usize>]) -> usize {
    let support = r
        .coeffs()
        .iter()
        .position(|&c| c != 0)
        .expect("roots are nonzero");
    components
        .iter()
        .position(|c| c.contains(&support))
        .expect("every index belongs to a component")
}

/// Decomposition report for a positive system under a grading.
#[derive(Debug, Clone)]
pub struct AdmissibleReport {
    pub positive_system: PositiveSystem,
    /// `P_t`, empty iff the system is not admissible.
    pub totally_positive: BTreeSet<Root>,
    /// Irreducible k-summands of `p⁺_t`, ordered by their smallest root.
    pub summands: Vec<BTreeSet<Root>>,
    /// Lowest root of each summand, in summand order.
    pub lowest_roots: Vec<Root>,
    /// Simple-root indices spanning `g_t`.
    pub gt_simple_indices: Vec<usize>,
    pub gt_roots: Vec<Root>,
    pub g1_roots: Vec<Root>,
}

impl AdmissibleReport {
    pub fn is_admissible(&self) -> bool {
        !self.totally_positive.is_empty()
    }

    /// `s`, the number of irreducible summands of `p⁺_t`.
    pub fn center_dim_s(&self) -> usize {
        self.summands.len()
    }
}

/// One clause of the structure-theorem verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of [`verify_theorem3`].
#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Verdict {
    pub passed: bool,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone)]
pub struct ChainViolation {
    pub gamma: Root,
    pub alpha: Root,
    pub pairing: i64,
}

#[derive(Debug, Clone)]
pub struct ChainLengthVerdict {
    pub holds: bool,
    pub max_pairing: i64,
    pub violations: Vec<ChainViolation>,
}

/// Check the simple-root structure of an admissible system, restricted to the
/// `g_t` part of the decomposition:
///
/// 1. the simple roots of `P|g_t` are the compact simples plus the lowest
///    roots `β_i`;
/// 2. `r + s` equals the rank of `g_t`;
/// 3. every totally positive root is `β_i + Σ m_j α_j` for exactly one `i`,
///    with nonnegative integers `m_j`;
/// 4. no sum of two totally positive roots is a root (`[p⁺,p⁺] = 0`).
pub fn verify_theorem3(
    pair: &HcPair,
    report: &AdmissibleReport,
) -> Result<Theorem3Verdict, PairError> {
    if !report.is_admissible() {
        return Err(PairError::NotAdmissible);
    }
    let rs = pair.root_system();
    let gt_index_set: BTreeSet<usize> = report.gt_simple_indices.iter().copied().collect();
    let in_gt = |r: &Root| {
        r.coeffs()
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || gt_index_set.contains(&i))
    };

    let compact_simples: Vec<Root> = pair
        .compact_simple_roots(&report.positive_system)
        .into_iter()
        .filter(|r| in_gt(r))
        .collect();
    let r_count = compact_simples.len();
    let s_count = report.center_dim_s();
    let rank_gt = report.gt_simple_indices.len();

    let mut clauses = Vec::new();

    // Clause 1: simple system of P restricted to g_t.
    let mut expected: Vec<Root> = compact_simples
        .iter()
        .chain(report.lowest_roots.iter())
        .cloned()
        .collect();
    expected.sort_by_key(root_order_key);
    let mut simples: Vec<Root> = report
        .positive_system
        .simple_roots()
        .into_iter()
        .filter(in_gt)
        .collect();
    simples.sort_by_key(root_order_key);
    clauses.push(Clause {
        name: "simple_system".into(),
        passed: simples == expected,
        detail: format!(
            "simples of P|g_t = {:?}, compact simples + lowest roots = {:?}",
            simples.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            expected.iter().map(|r| r.to_string()).collect::<Vec<_>>()
        ),
    });

    // Clause 2: r + s = rank of g_t.
    clauses.push(Clause {
        name: "rank_count".into(),
        passed: r_count + s_count == rank_gt,
        detail: format!("r = {r_count}, s = {s_count}, rank(g_t) = {rank_gt}"),
    });

    // Clause 3: unique decomposition of every totally positive root.
    let mut decomposition_ok = true;
    let mut detail = String::new();
    for beta in &report.totally_positive {
        let mut hits = 0usize;
        let mut described = String::new();
        for (i, beta_i) in report.lowest_roots.iter().enumerate() {
            if let Some(coeffs) = nonneg_integer_combination(&beta.minus(beta_i), &compact_simples)
            {
                hits += 1;
                described = format!("{beta} = β_{} + {coeffs:?}·α", i + 1);
            }
        }
        if hits != 1 {
            decomposition_ok = false;
            detail.push_str(&format!("{beta}: {hits} decompositions; "));
        } else {
            detail.push_str(&described);
            detail.push_str("; ");
        }
    }
    clauses.push(Clause {
        name: "unique_decomposition".into(),
        passed: decomposition_ok,
        detail,
    });

    // Clause 4: [p⁺, p⁺] = 0.
    let mut abelian_ok = true;
    let mut witness = String::from("no sum of two totally positive roots is a root");
    for a in &report.totally_positive {
        for b in &report.totally_positive {
            let sum = a.plus(b);
            if rs.is_root(&sum) {
                abelian_ok = false;
                witness = format!("{a} + {b} = {sum} is a root");
            }
        }
    }
    clauses.push(Clause {
        name: "p_plus_abelian".into(),
        passed: abelian_ok,
        detail: witness,
    });

    Ok(Theorem3Verdict {
        passed: clauses.iter().all(|c| c.passed),
        clauses,
    })
}

/// Express `target` as a nonnegative-integer combination of the given roots,
/// if possible. The roots are linearly independent, so the solution is unique
/// when it exists.
fn nonneg_integer_combination(target: &Root, basis: &[Root]) -> Option<Vec<i64>> {
    if basis.is_empty() {
        return target.coeffs().iter().all(|&c| c == 0).then_some(vec![]);
    }
    let n = target.coeffs().len();
    let m = basis.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            let mut v: Vec<Rat> = basis.iter().map(|b| rat_int(b.coeffs()[row])).collect();
            v.push(rat_int(target.coeffs()[row]));
            v
        })
        .collect();
    let mut row = 0usize;
    let mut pivots = 0usize;
    for col in 0..m {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let pv = a[row][col].clone();
        for v in &mut a[row] {
            *v /= &pv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..=m {
                    let sub = &f * &a[row][j];
                    a[r][j] -= sub;
                }
            }
        }
        pivots += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    for r in row..n {
        if !a[r][m].is_zero() {
            return None;
        }
    }
    if pivots != m {
        return None;
    }
    let mut out = Vec::with_capacity(m);
    for r in 0..m {
        let v = &a[r][m];
        if !v.denom().is_one() || v.is_negative() {
            return None;
        }
        use num::ToPrimitive;
        out.push(v.numer().to_i64()?);
    }
    Some(out)
}

/// Linear independence of `roots` modulo the rational span of `others`
/// (the combinatorial form of "restrictions to the center are independent").
pub fn independent_modulo(roots: &[Root], others: &[Root]) -> bool {
    if roots.is_empty() {
        return true;
    }
    let n = roots[0].coeffs().len();
    let rank_of = |vs: &[&Root]| -> usize {
        let mut a: Vec<Vec<Rat>> = vs
            .iter()
            .map(|r| r.coeffs().iter().map(|&c| rat_int(c)).collect())
            .collect();
        let rows = a.len();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pv = a[rank][col].clone();
            for v in &mut a[rank] {
                *v /= &pv;
            }
            for r in 0..rows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let sub = &f * &a[rank][j];
                        a[r][j] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    };
    let base: Vec<&Root> = others.iter().collect();
    let mut extended = base.clone();
    extended.extend(roots.iter());
    rank_of(&extended) == rank_of(&base) + roots.len()
}

/// The A2 pair with compact roots `±α` used throughout the worked examples.
pub fn a2_example_pair() -> (Arc<RootSystem>, HcPair) {
    let rs = Arc::new(
        RootSystem::new(crate::rootsys::CartanMatrix::of_series('A', 2).unwrap()).unwrap(),
    );
    let pair = HcPair::build(rs.clone(), &[1]).unwrap();
    (rs, pair)
}

/// True iff `λ(H_α) = 0` for every compact root.
pub fn vanishes_on_compact_coroots(rs: &RootSystem, pair: &HcPair, lambda: &Weight) -> bool {
    pair.compact_roots()
        .iter()
        .all(|alpha| rs.coroot_pairing_unchecked(lambda, alpha).is_zero())
}
