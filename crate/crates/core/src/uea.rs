//! Exact universal-enveloping-algebra engine: PBW normal ordering by
//! commutator rewriting over validated structure constants, the projection
//! `β` onto `U(h)`, Casimir construction from the dual basis of an invariant
//! form, infinitesimal characters, and an explicit Verma-module action used
//! to certify all of it.
//!
//! The PBW basis order is global: negative root vectors (in positive-root
//! enumeration order), then Cartan generators, then positive root vectors.
//! With that order, `β` of a zero-weight element is literally the truncation
//! to the monomials in the Cartan generators alone.
//!
//! Main items:
//! - [`StructureConstants`]: built-in `sl(n)` via matrix units, or JSON input
//! - [`normal_order`] / [`UeaElement`]: the rewriting engine
//! - [`weight_of`], [`beta_projection`], [`Polynomial`]
//! - [`casimir`]: quadratic Casimir dual to the symmetrized root form
//! - [`infinitesimal_character`], [`gamma_invariant_on`]
//! - [`verma_action`] / [`VermaAction`]: the certifying matrix model
//! - [`parse_word_expr`]: the `E(1)*F(1)*F(1)` input format of the CLI

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::rational::{format_rat, parse_rat, rat_int, Rat};
use crate::rootsys::{
    CartanMatrix, Root, RootSystem, RootSystemError, RootSystemRef, Weight, WeylElement,
};

#[derive(Debug, Error)]
pub enum UeaError {
    #[error("unknown built-in algebra `{0}`; available: sl2, sl3, sl4, ... (sl<n>)")]
    UnknownAlgebra(String),
    #[error("structure-constants JSON: {0}")]
    Json(String),
    #[error("bracket table violates antisymmetry at ({i},{j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("Cartan generators {i} and {j} do not commute")]
    CartanNotCommuting { i: usize, j: usize },
    #[error("grading mismatch: [H_{h}, {label}] is not γ(H_{h})·{label}")]
    GradingMismatch { h: usize, label: String },
    #[error("basis index {idx} out of range for dimension {dim}")]
    LabelOutOfRange { idx: usize, dim: usize },
    #[error("element is not ad-h homogeneous: weights {w1} and {w2} both occur")]
    Inhomogeneous { w1: String, w2: String },
    #[error("element has nonzero weight {weight}; the projection needs weight 0")]
    NonzeroWeight { weight: String },
    #[error("Killing form is degenerate; the algebra is not semisimple")]
    DegenerateKillingForm,
    #[error("element is not central: fails to commute with basis element {witness}")]
    NotCentral { witness: String },
    #[error("expression: {0}")]
    ExprParse(String),
    #[error(transparent)]
    RootSys(#[from] RootSystemError),
}

/// Sparse bracket row: pairs `(basis index, coefficient)`.
pub type SparseBracket = Vec<(usize, Rat)>;

/// Position of a basis element in the fixed PBW order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// `X_{-γ_k}` for the `k`-th positive root.
    NegRoot(usize),
    /// `H_i` for the `i`-th simple coroot.
    Cartan(usize),
    /// `X_{γ_k}` for the `k`-th positive root.
    PosRoot(usize),
}

// ---------------------------------------------------------------------------
// Structure constants
// ---------------------------------------------------------------------------

/// Validated structure constants over the PBW-ordered basis
/// `F_1..F_t, H_1..H_r, E_1..E_t`.
#[derive(Debug)]
pub struct StructureConstants {
    rs: RootSystemRef,
    dim: usize,
    num_pos: usize,
    /// `brackets[i][j]` is `[x_i, x_j]` as a sparse vector over the basis.
    brackets: Vec<Vec<SparseBracket>>,
}

#[derive(Debug, Deserialize)]
struct StructureConstantsJson {
    cartan: Vec<Vec<i64>>,
    /// Quadruples `(i, j, k, coeff)` meaning `[x_i, x_j] ∋ coeff·x_k`.
    /// Missing mirror entries are filled by antisymmetry.
    brackets: Vec<(usize, usize, usize, String)>,
}

impl StructureConstants {
    /// `sl(n)` through the matrix-unit realization: `E_γ ↔ E_ij`,
    /// `F_γ ↔ E_ji`, `H_i ↔ E_ii − E_{i+1,i+1}`.
    pub fn sl(n: usize) -> Result<Self, UeaError> {
        if n < 2 {
            return Err(UeaError::UnknownAlgebra(format!("sl{n}")));
        }
        let rank = n - 1;
        let rs = Arc::new(RootSystem::new(CartanMatrix::of_series('A', rank)?)?);
        let t = rs.positive_roots().len();
        let dim = 2 * t + rank;

        // Concrete matrices, in basis order.
        let mut mats: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(dim);
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![Rat::zero(); n]; n];
            m[i][j] = Rat::one();
            m
        };
        let interval = |root: &Root| {
            let a = root.coeffs().iter().position(|&c| c == 1).unwrap();
            let b = root.coeffs().iter().rposition(|&c| c == 1).unwrap();
            (a, b + 1)
        };
        for gamma in rs.positive_roots() {
            let (i, j) = interval(gamma);
            mats.push(unit(j, i));
        }
        for i in 0..rank {
            let mut m = unit(i, i);
            m[i + 1][i + 1] = -Rat::one();
            mats.push(m);
        }
        for gamma in rs.positive_roots() {
            let (i, j) = interval(gamma);
            mats.push(unit(i, j));
        }

        let commute = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            let mut out = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for k in 0..n {
                    if a[i][k].is_zero() && b[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let v = &a[i][k] * &b[k][j] - &b[i][k] * &a[k][j];
                        out[i][j] += v;
                    }
                }
            }
            out
        };

        // Expand a traceless matrix over the basis.
        let pos_index: BTreeMap<(usize, usize), usize> = rs
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(k, g)| (interval(g), k))
            .collect();
        let expand = |m: &Vec<Vec<Rat>>| -> Vec<(usize, Rat)> {
            let mut out = Vec::new();
            for ((i, j), &k) in &pos_index {
                let lower = &m[*j][*i];
                if !lower.is_zero() {
                    out.push((k, lower.clone()));
                }
            }
            // Cartan part from the diagonal partial sums.
            let mut partial = Rat::zero();
            for i in 0..rank {
                partial += &m[i][i];
                if !partial.is_zero() {
                    out.push((t + i, partial.clone()));
                }
            }
            for ((i, j), &k) in &pos_index {
                let upper = &m[*i][*j];
                if !upper.is_zero() {
                    out.push((t + rank + k, upper.clone()));
                }
            }
            out.sort_by_key(|(k, _)| *k);
            out
        };

        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                brackets[i][j] = expand(&commute(&mats[i], &mats[j]));
            }
        }
        let sc = Self {
            rs,
            dim,
            num_pos: t,
            brackets,
        };
        sc.validate()?;
        Ok(sc)
    }

    /// Load and validate user-supplied constants. The basis layout is implied
    /// by the Cartan matrix: `t` negative root vectors in enumeration order,
    /// `r` Cartan generators, `t` positive root vectors.
    pub fn from_json_str(s: &str) -> Result<Self, UeaError> {
        let parsed: StructureConstantsJson =
            serde_json::from_str(s).map_err(|e| UeaError::Json(e.to_string()))?;
        let rs = Arc::new(RootSystem::new(CartanMatrix::new(parsed.cartan)?)?);
        let t = rs.positive_roots().len();
        let dim = 2 * t + rs.rank();
        let mut brackets: Vec<Vec<Option<SparseBracket>>> = vec![vec![None; dim]; dim];
        let mut staged: BTreeMap<(usize, usize), SparseBracket> = BTreeMap::new();
        for (i, j, k, coeff) in parsed.brackets {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(UeaError::LabelOutOfRange { idx, dim });
                }
            }
            let c = parse_rat(&coeff).map_err(|e| UeaError::Json(e.to_string()))?;
            staged.entry((i, j)).or_default().push((k, c));
        }
        for ((i, j), mut terms) in staged {
            terms.sort_by_key(|(k, _)| *k);
            let mut merged: SparseBracket = Vec::new();
            for (k, c) in terms {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            brackets[i][j] = Some(merged);
        }
        // Fill by antisymmetry; explicit double entries must agree.
        let mut full = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let fwd = brackets[i][j].clone();
                let bwd = brackets[j][i].clone().map(negate_sparse);
                let chosen = match (fwd, bwd) {
                    (Some(f), Some(b)) => {
                        if f != b {
                            return Err(UeaError::Antisymmetry { i, j });
                        }
                        f
                    }
                    (Some(f), None) => f,
                    (None, Some(b)) => b,
                    (None, None) => Vec::new(),
                };
                full[i][j] = chosen;
            }
        }
        let sc = Self {
            rs,
            dim,
            num_pos: t,
            brackets: full,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn rs(&self) -> &RootSystemRef {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.num_pos
    }

    pub fn label(&self, idx: usize) -> BasisLabel {
        let t = self.num_pos;
        let r = self.rs.rank();
        if idx < t {
            BasisLabel::NegRoot(idx)
        } else if idx < t + r {
            BasisLabel::Cartan(idx - t)
        } else {
            BasisLabel::PosRoot(idx - t - r)
        }
    }

    pub fn label_index(&self, label: BasisLabel) -> usize {
        let t = self.num_pos;
        let r = self.rs.rank();
        match label {
            BasisLabel::NegRoot(k) => k,
            BasisLabel::Cartan(i) => t + i,
            BasisLabel::PosRoot(k) => t + r + k,
        }
    }

    /// Human name, 1-indexed: `F(k)`, `H(i)`, `E(k)`.
    pub fn label_name(&self, idx: usize) -> String {
        match self.label(idx) {
            BasisLabel::NegRoot(k) => format!("F({})", k + 1),
            BasisLabel::Cartan(i) => format!("H({})", i + 1),
            BasisLabel::PosRoot(k) => format!("E({})", k + 1),
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.brackets[i][j]
    }

    /// ad-h weight of a basis element, in root-lattice coordinates.
    pub fn weight_of_label(&self, idx: usize) -> Vec<i64> {
        match self.label(idx) {
            BasisLabel::NegRoot(k) => self.rs.positive_roots()[k].negated().coeffs().to_vec(),
            BasisLabel::Cartan(_) => vec![0; self.rs.rank()],
            BasisLabel::PosRoot(k) => self.rs.positive_roots()[k].coeffs().to_vec(),
        }
    }

    fn validate(&self) -> Result<(), UeaError> {
        let dim = self.dim;
        // Antisymmetry (including [x,x] = 0).
        for i in 0..dim {
            for j in 0..dim {
                let fwd = &self.brackets[i][j];
                let bwd = negate_sparse(self.brackets[j][i].clone());
                if *fwd != bwd {
                    return Err(UeaError::Antisymmetry { i, j });
                }
            }
        }
        // Cartan generators commute.
        let t = self.num_pos;
        let r = self.rs.rank();
        for a in 0..r {
            for b in 0..r {
                if !self.brackets[t + a][t + b].is_empty() {
                    return Err(UeaError::CartanNotCommuting { i: a, j: b });
                }
            }
        }
        // Grading: [H_i, X] = (weight of X)(H_i) · X.
        for h in 0..r {
            for idx in 0..dim {
                let w = self.weight_of_label(idx);
                let gamma = Root::new(w);
                let expect: i64 = self.rs.pairing_simple_coroot(&gamma, h);
                let got = &self.brackets[t + h][idx];
                let ok = if expect == 0 {
                    got.is_empty()
                } else {
                    got.len() == 1 && got[0].0 == idx && got[0].1 == rat_int(expect)
                };
                if !ok {
                    return Err(UeaError::GradingMismatch {
                        h,
                        label: self.label_name(idx),
                    });
                }
            }
        }
        // Jacobi on all basis triples.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
                    let mut add_nested = |outer: &[(usize, Rat)], last: usize| {
                        for (m, c) in outer {
                            for (x, d) in &self.brackets[*m][last] {
                                *acc.entry(*x).or_insert_with(Rat::zero) += c * d;
                            }
                        }
                    };
                    // [[i,j],k] + [[j,k],i] + [[k,i],j]
                    add_nested(&self.brackets[i][j].clone(), k);
                    add_nested(&self.brackets[j][k].clone(), i);
                    add_nested(&self.brackets[k][i].clone(), j);
                    if acc.values().any(|v| !v.is_zero()) {
                        return Err(UeaError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// ad-matrix of basis element `i` over the basis.
    fn ad_matrix(&self, i: usize) -> Vec<Vec<Rat>> {
        let mut m = vec![vec![Rat::zero(); self.dim]; self.dim];
        for j in 0..self.dim {
            for (k, c) in &self.brackets[i][j] {
                m[*k][j] = c.clone();
            }
        }
        m
    }

    /// Killing matrix `K(x_i, x_j) = tr(ad x_i · ad x_j)`.
    pub fn killing_matrix(&self) -> Vec<Vec<Rat>> {
        let ads: Vec<Vec<Vec<Rat>>> = (0..self.dim).map(|i| self.ad_matrix(i)).collect();
        let mut k = vec![vec![Rat::zero(); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut tr = Rat::zero();
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        if !ads[i][a][b].is_zero() && !ads[j][b][a].is_zero() {
                            tr += &ads[i][a][b] * &ads[j][b][a];
                        }
                    }
                }
                k[i][j] = tr.clone();
                k[j][i] = tr;
            }
        }
        k
    }
}

fn negate_sparse(mut v: Vec<(usize, Rat)>) -> Vec<(usize, Rat)> {
    for (_, c) in &mut v {
        *c = -c.clone();
    }
    v
}

// ---------------------------------------------------------------------------
// Elements and normal ordering
// ---------------------------------------------------------------------------

/// Exponent vector over the PBW basis (length = dimension of the algebra).
pub type Monomial = Vec<u32>;

/// Exact-rational linear combination of PBW monomials in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeaElement {
    terms: BTreeMap<Monomial, Rat>,
}

impl UeaElement {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0u32; dim], Rat::one());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Product, normal-ordered.
    pub fn times(&self, sc: &StructureConstants, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            let w1 = monomial_to_word(m1);
            for (m2, c2) in &other.terms {
                let mut word = w1.clone();
                word.extend(monomial_to_word(m2));
                let part = normal_order(sc, &word, c1 * c2);
                out = out.plus(&part);
            }
        }
        out
    }

    /// `[self, x_idx]`, normal-ordered.
    pub fn commutator_with_basis(&self, sc: &StructureConstants, idx: usize) -> Self {
        let x = element_from_word(sc, &[idx], Rat::one());
        self.times(sc, &x).minus(&x.times(sc, self))
    }

    /// Render with 1-indexed generator names, e.g. `2·F(1)H(1) + H(1)^2`.
    pub fn display(&self, sc: &StructureConstants) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (idx, &e) in m.iter().enumerate() {
                if e == 1 {
                    factors.push(sc.label_name(idx));
                } else if e > 1 {
                    factors.push(format!("{}^{}", sc.label_name(idx), e));
                }
            }
            let mono = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            if c.is_one() && !factors.is_empty() {
                parts.push(mono);
            } else {
                parts.push(format!("{}*{}", format_rat(c), mono));
            }
        }
        parts.join(" + ")
    }
}

fn monomial_to_word(m: &Monomial) -> Vec<usize> {
    let mut w = Vec::new();
    for (idx, &e) in m.iter().enumerate() {
        for _ in 0..e {
            w.push(idx);
        }
    }
    w
}

/// Single word as an element (no reordering applied).
fn element_from_word(sc: &StructureConstants, word: &[usize], coeff: Rat) -> UeaElement {
    normal_order(sc, word, coeff)
}

/// Rewrite a word into canonical PBW form: out-of-order adjacent pairs
/// `xy` with `x > y` become `yx + [x,y]` until sorted. The result is
/// independent of which inversion is resolved first.
pub fn normal_order(sc: &StructureConstants, word: &[usize], coeff: Rat) -> UeaElement {
    normal_order_with(sc, word, coeff, &mut |w: &[usize]| {
        w.windows(2).position(|p| p[0] > p[1])
    })
}

/// Normal ordering with a caller-chosen strategy: `pick` returns the position
/// of an adjacent inversion to resolve (or `None` if the word is sorted).
/// Used to exercise confluence; any valid strategy yields the same element.
pub fn normal_order_with(
    sc: &StructureConstants,
    word: &[usize],
    coeff: Rat,
    pick: &mut dyn FnMut(&[usize]) -> Option<usize>,
) -> UeaElement {
    let mut out = UeaElement::zero();
    let mut work: Vec<(Vec<usize>, Rat)> = vec![(word.to_vec(), coeff)];
    while let Some((w, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let pos = {
            let p = pick(&w);
            debug_assert!(p.map_or_else(
                || w.windows(2).all(|p| p[0] <= p[1]),
                |i| i + 1 < w.len() && w[i] > w[i + 1]
            ));
            p
        };
        match pos {
            None => {
                let mut m = vec![0u32; sc.dim()];
                for &idx in &w {
                    m[idx] += 1;
                }
                out.add_term(m, c);
            }
            Some(i) => {
                let (x, y) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, c.clone()));
                for (k, bk) in sc.bracket(x, y) {
                    let mut contracted = Vec::with_capacity(w.len() - 1);
                    contracted.extend_from_slice(&w[..i]);
                    contracted.push(*k);
                    contracted.extend_from_slice(&w[i + 2..]);
                    work.push((contracted, &c * bk));
                }
            }
        }
    }
    out
}

/// ad-h weight of a homogeneous element, in root-lattice coordinates.
/// Inhomogeneous input is reported, not silently merged; the zero element is
/// homogeneous of weight 0.
pub fn weight_of(sc: &StructureConstants, elem: &UeaElement) -> Result<Vec<i64>, UeaError> {
    let mut found: Option<Vec<i64>> = None;
    for (m, _) in elem.terms() {
        let mut w = vec![0i64; sc.rank()];
        for (idx, &e) in m.iter().enumerate() {
            if e > 0 {
                for (acc, v) in w.iter_mut().zip(sc.weight_of_label(idx)) {
                    *acc += i64::from(e) * v;
                }
            }
        }
        match &found {
            None => found = Some(w),
            Some(prev) => {
                if *prev != w {
                    return Err(UeaError::Inhomogeneous {
                        w1: format!("{prev:?}"),
                        w2: format!("{w:?}"),
                    });
                }
            }
        }
    }
    Ok(found.unwrap_or_else(|| vec![0; sc.rank()]))
}

// ---------------------------------------------------------------------------
// Polynomials on h^*
// ---------------------------------------------------------------------------

/// Exact multivariate polynomial in the coordinates `λ(H_1), …, λ(H_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate polynomial `λ ↦ λ(H_i)`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, Rat::one());
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }

    /// Evaluate at a weight's fundamental coordinates.
    pub fn eval(&self, coords: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in coords.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_weight(&self, w: &Weight) -> Rat {
        self.eval(w.coords())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut factors = Vec::new();
                for (i, &e) in exps.iter().enumerate() {
                    if e == 1 {
                        factors.push(format!("h{}", i + 1));
                    } else if e > 1 {
                        factors.push(format!("h{}^{}", i + 1, e));
                    }
                }
                if factors.is_empty() {
                    format_rat(c)
                } else if c.is_one() {
                    factors.join("*")
                } else {
                    format!("{}*{}", format_rat(c), factors.join("*"))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// The projection of a zero-weight element onto `U(h)`: drop every PBW
/// monomial containing a positive-root factor and read the survivors as a
/// polynomial in the coordinates `λ(H_i)`.
///
/// On a highest-weight vector, `u·v_λ = β(u)(λ)·v_λ`; the Verma action
/// certifies this.
pub fn beta_projection(sc: &StructureConstants, elem: &UeaElement) -> Result<Polynomial, UeaError> {
    let w = weight_of(sc, elem)?;
    if w.iter().any(|&c| c != 0) {
        return Err(UeaError::NonzeroWeight {
            weight: format!("{w:?}"),
        });
    }
    let t = sc.num_positive();
    let r = sc.rank();
    let mut poly = Polynomial::zero(r);
    for (m, c) in elem.terms() {
        if m[t + r..].iter().any(|&e| e > 0) {
            continue;
        }
        // Zero weight without positive factors forces no negative factors.
        debug_assert!(m[..t].iter().all(|&e| e == 0));
        poly.add_term(m[t..t + r].to_vec(), c.clone());
    }
    Ok(poly)
}

// ---------------------------------------------------------------------------
// Casimir
// ---------------------------------------------------------------------------

/// Quadratic Casimir together with the normalization that produced it.
#[derive(Debug, Clone)]
pub struct Casimir {
    pub element: UeaElement,
    /// Per-simple-component ratio of the chosen invariant form to the Killing
    /// form; the form is scaled so its restriction to `h^*` matches the
    /// symmetrized Cartan form of the root system.
    pub form_to_killing: Vec<Rat>,
}

/// Build the quadratic Casimir from the dual basis of the invariant form
/// scaled, per simple component, so that the induced form on `h^*` equals
/// the root system's symmetrized Cartan form. Centrality is verified by
/// normal-ordering `[Ω, x]` for every basis element.
pub fn casimir(sc: &StructureConstants) -> Result<Casimir, UeaError> {
    let dim = sc.dim();
    let r = sc.rank();
    let t = sc.num_positive();
    let killing = sc.killing_matrix();

    // Induced Killing form on h^*: K*(α_i, α_j) = A·K_h⁻¹·Aᵀ with A the
    // Cartan matrix rows as coroot values.
    let k_h: Vec<Vec<Rat>> = (0..r)
        .map(|i| (0..r).map(|j| killing[t + i][t + j].clone()).collect())
        .collect();
    let k_h_inv = invert_rational(&k_h).ok_or(UeaError::DegenerateKillingForm)?;
    let cm = sc.rs().cartan();
    let k_star = |i: usize, j: usize| -> Rat {
        let mut acc = Rat::zero();
        for a in 0..r {
            for b in 0..r {
                acc += rat_int(cm.entry(i, a)) * &k_h_inv[a][b] * rat_int(cm.entry(j, b));
            }
        }
        acc
    };

    // Scale per Dynkin component.
    let components = dynkin_components(cm);
    let mut comp_scale: Vec<Rat> = Vec::with_capacity(components.len());
    for comp in &components {
        let mut scale: Option<Rat> = None;
        for &i in comp {
            let b_ii = rat_int(cm.symmetrizer()[i] * cm.entry(i, i));
            let c = k_star(i, i) / b_ii;
            match &scale {
                None => scale = Some(c),
                Some(existing) => {
                    if *existing != c {
                        return Err(UeaError::Json(
                            "inconsistent form scale inside one component".into(),
                        ));
                    }
                }
            }
        }
        comp_scale.push(scale.expect("components are nonempty"));
    }
    let component_of_index = |idx: usize| -> usize {
        let support = match sc.label(idx) {
            BasisLabel::NegRoot(k) | BasisLabel::PosRoot(k) => sc.rs().positive_roots()[k]
                .coeffs()
                .iter()
                .position(|&c| c != 0)
                .unwrap(),
            BasisLabel::Cartan(i) => i,
        };
        components
            .iter()
            .position(|c| c.contains(&support))
            .unwrap()
    };

    // Scaled invariant form and its inverse.
    let mut nu = vec![vec![Rat::zero(); dim]; dim];
    for i in 0..dim {
        let c = comp_scale[component_of_index(i)].clone();
        for j in 0..dim {
            nu[i][j] = &c * &killing[i][j];
        }
    }
    let g = invert_rational(&nu).ok_or(UeaError::DegenerateKillingForm)?;

    let mut element = UeaElement::zero();
    for i in 0..dim {
        for j in 0..dim {
            if !g[i][j].is_zero() {
                element = element.plus(&normal_order(sc, &[i, j], g[i][j].clone()));
            }
        }
    }

    for idx in 0..dim {
        if !element.commutator_with_basis(sc, idx).is_zero() {
            return Err(UeaError::NotCentral {
                witness: sc.label_name(idx),
            });
        }
    }

    Ok(Casimir {
        element,
        form_to_killing: comp_scale,
    })
}

fn dynkin_components(cm: &CartanMatrix) -> Vec<Vec<usize>> {
    let n = cm.rank();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && cm.entry(i, j) != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn invert_rational(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut work: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !work[i][k].is_zero())?;
        work.swap(k, pivot);
        let pv = work[k][k].clone();
        for v in &mut work[k] {
            *v /= &pv;
        }
        for i in 0..n {
            if i != k && !work[i][k].is_zero() {
                let f = work[i][k].clone();
                for j in 0..(2 * n) {
                    let sub = &f * &work[k][j];
                    work[i][j] -= sub;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// Infinitesimal characters and Weyl invariance
// ---------------------------------------------------------------------------

/// `χ_λ(z) = β(z)(λ)`. With `strict`, centrality of `z` is verified first.
pub fn infinitesimal_character(
    sc: &StructureConstants,
    z: &UeaElement,
    lambda: &Weight,
    strict: bool,
) -> Result<Rat, UeaError> {
    if strict {
        for idx in 0..sc.dim() {
            if !z.commutator_with_basis(sc, idx).is_zero() {
                return Err(UeaError::NotCentral {
                    witness: sc.label_name(idx),
                });
            }
        }
    }
    Ok(beta_projection(sc, z)?.eval_weight(lambda))
}

/// One failed invariance instance.
#[derive(Debug, Clone)]
pub struct GammaFailure {
    pub lambda: Weight,
    pub word: Vec<usize>,
    pub expected: Rat,
    pub got: Rat,
}

/// Verify `γ(z)(sλ) = γ(z)(λ)` exactly, where `γ(z)(λ) = β(z)(λ − δ)`, for
/// every supplied Weyl element and sample weight.
pub fn gamma_invariant_on(
    sc: &StructureConstants,
    z: &UeaElement,
    weyl: &[WeylElement],
    samples: &[Weight],
) -> Result<Vec<GammaFailure>, UeaError> {
    let beta = beta_projection(sc, z)?;
    let rs = sc.rs();
    let delta = rs.delta();
    let mut failures = Vec::new();
    for lambda in samples {
        let reference = beta.eval_weight(&lambda.minus(delta));
        for w in weyl {
            let moved = w.apply_weight(rs, lambda);
            let value = beta.eval_weight(&moved.minus(delta));
            if value != reference {
                failures.push(GammaFailure {
                    lambda: lambda.clone(),
                    word: w.word.clone(),
                    expected: reference.clone(),
                    got: value,
                });
            }
        }
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// Verma model
// ---------------------------------------------------------------------------

/// Matrix of an element acting on the Verma module of highest weight `λ`,
/// over the PBW monomial basis in the negative root vectors, truncated at a
/// height bound.
#[derive(Debug, Clone)]
pub struct VermaAction {
    /// Exponent vectors over the negative-root labels, sorted by
    /// (height, exponents).
    pub basis: Vec<Vec<u32>>,
    /// `matrix[row][col]` is the coefficient of basis row in the image of
    /// basis col.
    pub matrix: Vec<Vec<Rat>>,
    pub lambda: Weight,
    pub depth: i64,
}

impl VermaAction {
    /// The scalar by which the element acts, when it acts as one.
    pub fn scalar(&self) -> Option<Rat> {
        let n = self.basis.len();
        let candidate = self.matrix[0][0].clone();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { &candidate } else { &Rat::zero() } as &Rat;
                if &self.matrix[i][j] != expect {
                    return None;
                }
            }
        }
        Some(candidate)
    }

    /// Column of the highest weight vector (the empty monomial).
    pub fn highest_weight_column(&self) -> Vec<Rat> {
        (0..self.basis.len())
            .map(|i| self.matrix[i][0].clone())
            .collect()
    }
}

/// Compute the action matrix of `elem` on the height-truncated Verma module:
/// basis vectors are `F^a·v_λ`, the action normal-orders `elem·F^a`, kills
/// monomials with positive-root factors, and evaluates Cartan factors at `λ`.
/// Image components beyond the height bound are dropped.
pub fn verma_action(
    sc: &StructureConstants,
    elem: &UeaElement,
    lambda: &Weight,
    depth: i64,
) -> VermaAction {
    verma_action_batch(sc, elem, std::slice::from_ref(lambda), depth)
        .pop()
        .expect("one weight in, one action out")
}

/// [`verma_action`] over several highest weights at once; the normal-ordered
/// products are computed a single time and only the Cartan monomials are
/// re-evaluated per weight.
pub fn verma_action_batch(
    sc: &StructureConstants,
    elem: &UeaElement,
    lambdas: &[Weight],
    depth: i64,
) -> Vec<VermaAction> {
    let t = sc.num_positive();
    let r = sc.rank();
    let heights: Vec<i64> = sc
        .rs()
        .positive_roots()
        .iter()
        .map(|g| g.height())
        .collect();

    // Enumerate F-exponent vectors of height ≤ depth.
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut current = vec![0u32; t];
    enumerate_f_monomials(0, depth, &heights, &mut current, &mut basis);
    basis.sort_by_key(|m| {
        (
            m.iter()
                .zip(&heights)
                .map(|(&e, &h)| i64::from(e) * h)
                .sum::<i64>(),
            m.clone(),
        )
    });
    let index: BTreeMap<Vec<u32>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();

    // Symbolic pass: per column, (row, cartan exponents, coefficient).
    let n = basis.len();
    let mut symbolic: Vec<Vec<(usize, Vec<u32>, Rat)>> = Vec::with_capacity(n);
    for f_exps in &basis {
        let mut entries = Vec::new();
        for (m, c) in elem.terms() {
            let mut word = monomial_to_word(m);
            for (k, &e) in f_exps.iter().enumerate() {
                for _ in 0..e {
                    word.push(k);
                }
            }
            let ordered = normal_order(sc, &word, c.clone());
            for (mono, coeff) in ordered.terms() {
                if mono[t + r..].iter().any(|&e| e > 0) {
                    continue;
                }
                let f_part: Vec<u32> = mono[..t].to_vec();
                if let Some(&row) = index.get(&f_part) {
                    entries.push((row, mono[t..t + r].to_vec(), coeff.clone()));
                }
            }
        }
        symbolic.push(entries);
    }

    lambdas
        .iter()
        .map(|lambda| {
            let mut matrix = vec![vec![Rat::zero(); n]; n];
            for (col, entries) in symbolic.iter().enumerate() {
                for (row, cartan_exps, coeff) in entries {
                    let mut value = coeff.clone();
                    for (i, &e) in cartan_exps.iter().enumerate() {
                        for _ in 0..e {
                            value *= &lambda.coords()[i];
                        }
                    }
                    matrix[*row][col] += value;
                }
            }
            VermaAction {
                basis: basis.clone(),
                matrix,
                lambda: lambda.clone(),
                depth,
            }
        })
        .collect()
}

fn enumerate_f_monomials(
    k: usize,
    budget: i64,
    heights: &[i64],
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if k == heights.len() {
        out.push(current.clone());
        return;
    }
    let h = heights[k];
    let max_e = if h > 0 { budget / h } else { 0 };
    for e in 0..=max_e {
        current[k] = e as u32;
        enumerate_f_monomials(k + 1, budget - e * h, heights, current, out);
    }
    current[k] = 0;
}

// ---------------------------------------------------------------------------
// Word expressions
// ---------------------------------------------------------------------------

/// Parse the CLI word format: `*`-separated factors, each `E(k)`, `F(k)`,
/// `H(i)` (1-indexed) or a rational coefficient, e.g. `3/2*E(1)*F(1)*F(1)`.
/// Returns the word and the accumulated coefficient.
// TODO: accept `+`-separated sums so user-supplied central elements beyond
// the quadratic Casimir can be fed to the character evaluation.
pub fn parse_word_expr(sc: &StructureConstants, expr: &str) -> Result<(Vec<usize>, Rat), UeaError> {
    let mut word = Vec::new();
    let mut coeff = Rat::one();
    for raw in expr.split('*') {
        let token = raw.trim();
        if token.is_empty() {
            return Err(UeaError::ExprParse("empty factor".into()));
        }
        let kind = token.chars().next().unwrap();
        if matches!(kind, 'E' | 'F' | 'H') && token.len() >= 4 && token[1..].starts_with('(') {
            let inner = token[2..]
                .strip_suffix(')')
                .ok_or_else(|| UeaError::ExprParse(format!("missing `)` in `{token}`")))?;
            let k: usize = inner
                .trim()
                .parse()
                .map_err(|_| UeaError::ExprParse(format!("bad index in `{token}`")))?;
            if k == 0 {
                return Err(UeaError::ExprParse(format!(
                    "indices are 1-based, got `{token}`"
                )));
            }
            let label = match kind {
                'E' => BasisLabel::PosRoot(k - 1),
                'F' => BasisLabel::NegRoot(k - 1),
                _ => BasisLabel::Cartan(k - 1),
            };
            let bound = match label {
                BasisLabel::Cartan(i) => i < sc.rank(),
                BasisLabel::NegRoot(i) | BasisLabel::PosRoot(i) => i < sc.num_positive(),
            };
            if !bound {
                return Err(UeaError::ExprParse(format!(
                    "index out of range in `{token}`"
                )));
            }
            word.push(sc.label_index(label));
        } else {
            let c = parse_rat(token)
                .map_err(|_| UeaError::ExprParse(format!("bad factor `{token}`")))?;
            coeff *= c;
        }
    }
    Ok((word, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sl2() -> StructureConstants {
        StructureConstants::sl(2).unwrap()
    }

    fn sl3() -> StructureConstants {
        StructureConstants::sl(3).unwrap()
    }

    // Label shorthands for sl2: F=0, H=1, E=2.
    const F: usize = 0;
    const H: usize = 1;
    const E: usize = 2;

    #[test]
    fn sl2_defining_relations() {
        let sc = sl2();
        assert_eq!(sc.dim(), 3);
        assert_eq!(sc.bracket(E, F), &[(H, rat_int(1))]);
        assert_eq!(sc.bracket(H, E), &[(E, rat_int(2))]);
        assert_eq!(sc.bracket(H, F), &[(F, rat_int(-2))]);
    }

    #[test]
    fn sl3_consistent_signs() {
        let sc = sl3();
        assert_eq!(sc.dim(), 8);
        // [E_α, E_β] = ±E_{α+β}: exactly one term with coefficient ±1.
        let e_alpha = sc.label_index(BasisLabel::PosRoot(0));
        let e_beta = sc.label_index(BasisLabel::PosRoot(1));
        let b = sc.bracket(e_alpha, e_beta);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].0, sc.label_index(BasisLabel::PosRoot(2)));
        assert!(b[0].1 == rat_int(1) || b[0].1 == rat_int(-1));
    }

    #[test]
    fn json_round_trip_sl2() {
        let sc = sl2();
        // Dump the sl2 table and reload it.
        let mut quads = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for (k, c) in sc.bracket(i, j) {
                    quads.push(format!("[{i},{j},{k},\"{}\"]", format_rat(c)));
                }
            }
        }
        let json = format!("{{\"cartan\": [[2]], \"brackets\": [{}]}}", quads.join(","));
        let reloaded = StructureConstants::from_json_str(&json).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(reloaded.bracket(i, j), sc.bracket(i, j));
            }
        }
    }

    #[test]
    fn json_broken_jacobi_rejected() {
        // [H,E] = 2E, [H,F] = −2F, but [E,F] = E violates Jacobi/grading.
        let json = r#"{
            "cartan": [[2]],
            "brackets": [
                [1, 2, 2, "2"],
                [1, 0, 0, "-2"],
                [2, 0, 2, "1"]
            ]
        }"#;
        assert!(StructureConstants::from_json_str(json).is_err());
    }

    #[test]
    fn json_antisymmetry_conflict_rejected() {
        let json = r#"{
            "cartan": [[2]],
            "brackets": [
                [2, 0, 1, "1"],
                [0, 2, 1, "1"]
            ]
        }"#;
        assert!(matches!(
            StructureConstants::from_json_str(json),
            Err(UeaError::Antisymmetry { .. })
        ));
    }

    #[test]
    fn normal_order_single_commutator() {
        let sc = sl2();
        let out = normal_order(&sc, &[E, F], Rat::one());
        // EF = FE + H.
        let expect =
            normal_order(&sc, &[F, E], Rat::one()).plus(&normal_order(&sc, &[H], Rat::one()));
        assert_eq!(out, expect);
    }

    #[test]
    fn normal_order_eff_worked_example() {
        let sc = sl2();
        let out = normal_order(&sc, &[E, F, F], Rat::one());
        // EFF = F²E + 2FH − 2F.
        let mut expect = UeaElement::zero();
        expect = expect.plus(&normal_order(&sc, &[F, F, E], Rat::one()));
        expect = expect.plus(&normal_order(&sc, &[F, H], rat_int(2)));
        expect = expect.plus(&normal_order(&sc, &[F], rat_int(-2)));
        assert_eq!(out, expect);
        assert_eq!(out.num_terms(), 3);
    }

    #[test]
    fn ordered_word_is_fixpoint() {
        let sc = sl2();
        let out = normal_order(&sc, &[F, F, H, E], Rat::one());
        assert_eq!(out.num_terms(), 1);
        let (m, c) = out.terms().next().unwrap();
        assert_eq!(m, &vec![2u32, 1, 1]);
        assert_eq!(c, &Rat::one());
    }

    #[test]
    fn confluence_under_randomized_strategies() {
        let sc = sl3();
        // Deterministic pseudo-random strategy driven by a counter.
        let words: Vec<Vec<usize>> = vec![
            vec![7, 3, 1, 0],
            vec![6, 5, 4, 3, 2, 1, 0],
            vec![7, 7, 0, 0],
            vec![5, 2, 6, 1, 7, 0],
            vec![4, 4, 3, 5, 6, 0, 1, 2],
        ];
        for (wi, word) in words.iter().enumerate() {
            let reference = normal_order(&sc, word, Rat::one());
            for salt in 0..5u64 {
                let mut counter = salt.wrapping_mul(0x9e37_79b9).wrapping_add(wi as u64);
                let got = normal_order_with(&sc, word, Rat::one(), &mut |w| {
                    let inversions: Vec<usize> = w
                        .windows(2)
                        .enumerate()
                        .filter(|(_, p)| p[0] > p[1])
                        .map(|(i, _)| i)
                        .collect();
                    if inversions.is_empty() {
                        None
                    } else {
                        counter = counter.wrapping_mul(6364136223846793005).wrapping_add(1);
                        Some(inversions[(counter >> 33) as usize % inversions.len()])
                    }
                });
                assert_eq!(got, reference, "word {word:?}, salt {salt}");
            }
        }
    }

    #[test]
    fn weight_of_examples() {
        let sc = sl2();
        let h = normal_order(&sc, &[H], Rat::one());
        assert_eq!(weight_of(&sc, &h).unwrap(), vec![0]);
        let fe = normal_order(&sc, &[F, E], Rat::one());
        assert_eq!(weight_of(&sc, &fe).unwrap(), vec![0]);

        let sc3 = sl3();
        let ea = sc3.label_index(BasisLabel::PosRoot(0));
        let eb = sc3.label_index(BasisLabel::PosRoot(1));
        let prod = normal_order(&sc3, &[ea, eb], Rat::one());
        assert_eq!(weight_of(&sc3, &prod).unwrap(), vec![1, 1]);

        let mixed = h.plus(&normal_order(&sc, &[E], Rat::one()));
        assert!(matches!(
            weight_of(&sc, &mixed),
            Err(UeaError::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn beta_of_ef_is_h() {
        let sc = sl2();
        let ef = normal_order(&sc, &[E, F], Rat::one());
        let p = beta_projection(&sc, &ef).unwrap();
        assert_eq!(p, Polynomial::coordinate(1, 0));
    }

    #[test]
    fn beta_of_fe_is_zero_and_h_is_coordinate() {
        let sc = sl2();
        let fe = normal_order(&sc, &[F, E], Rat::one());
        assert!(beta_projection(&sc, &fe).unwrap().is_zero());
        let h = normal_order(&sc, &[H], Rat::one());
        assert_eq!(
            beta_projection(&sc, &h).unwrap(),
            Polynomial::coordinate(1, 0)
        );
    }

    #[test]
    fn beta_rejects_nonzero_weight() {
        let sc = sl2();
        let e = normal_order(&sc, &[E], Rat::one());
        assert!(matches!(
            beta_projection(&sc, &e),
            Err(UeaError::NonzeroWeight { .. })
        ));
    }

    #[test]
    fn beta_is_multiplicative_on_zero_weight_elements() {
        let sc = sl3();
        let f1 = sc.label_index(BasisLabel::NegRoot(0));
        let e1 = sc.label_index(BasisLabel::PosRoot(0));
        let f3 = sc.label_index(BasisLabel::NegRoot(2));
        let e3 = sc.label_index(BasisLabel::PosRoot(2));
        let h1 = sc.label_index(BasisLabel::Cartan(0));
        let samples = [
            normal_order(&sc, &[e1, f1], Rat::one()),
            normal_order(&sc, &[e3, f3], Rat::one()),
            normal_order(&sc, &[h1, h1], Rat::one()),
            normal_order(&sc, &[e1, f1, h1], rat(1, 3)),
        ];
        for u in &samples {
            for v in &samples {
                let lhs = beta_projection(&sc, &u.times(&sc, v)).unwrap();
                let rhs = beta_projection(&sc, u)
                    .unwrap()
                    .times(&beta_projection(&sc, v).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn casimir_sl2_matches_trace_normalization() {
        let sc = sl2();
        let cas = casimir(&sc).unwrap();
        // Ω = 2FE + H + ½H² in canonical order.
        let expect = normal_order(&sc, &[F, E], rat_int(2))
            .plus(&normal_order(&sc, &[H], Rat::one()))
            .plus(&normal_order(&sc, &[H, H], rat(1, 2)));
        assert_eq!(cas.element, expect);
        assert_eq!(cas.form_to_killing, vec![rat(1, 4)]);
    }

    #[test]
    fn casimir_sl3_central_and_term_count() {
        let sc = sl3();
        let cas = casimir(&sc).unwrap();
        for idx in 0..sc.dim() {
            assert!(cas.element.commutator_with_basis(&sc, idx).is_zero());
        }
        // 3 F_γE_γ monomials + 2 linear H + H1², H1H2, H2².
        assert_eq!(cas.element.num_terms(), 8);
        // Killing = 6·trace form for sl3.
        assert_eq!(cas.form_to_killing, vec![rat(1, 6)]);
    }

    #[test]
    fn chi_lambda_sl2() {
        let sc = sl2();
        let omega = casimir(&sc).unwrap().element;
        for n in -5i64..=5 {
            let lam = Weight::from_ints(&[n]);
            let chi = infinitesimal_character(&sc, &omega, &lam, true).unwrap();
            assert_eq!(chi, rat(n * n + 2 * n, 2));
        }
        // χ_0 = 0 on the trivial module.
        assert!(
            infinitesimal_character(&sc, &omega, &Weight::zero(1), false)
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn chi_constant_on_affine_orbit_rank1() {
        let sc = sl2();
        let omega = casimir(&sc).unwrap().element;
        let chi0 = infinitesimal_character(&sc, &omega, &Weight::from_ints(&[0]), false).unwrap();
        let chi2 = infinitesimal_character(&sc, &omega, &Weight::from_ints(&[-2]), false).unwrap();
        assert_eq!(chi0, chi2);
        assert!(chi0.is_zero());
    }

    #[test]
    fn gamma_invariance_sl2_and_sl3() {
        for sc in [sl2(), sl3()] {
            let omega = casimir(&sc).unwrap().element;
            let weyl = sc.rs().weyl_group(1000).unwrap();
            let samples: Vec<Weight> = match sc.rank() {
                1 => (-4..=4).map(|n| Weight::from_ints(&[n])).collect(),
                _ => (-2..=2)
                    .flat_map(|a| (-2..=2).map(move |b| Weight::from_ints(&[a, b])))
                    .collect(),
            };
            let failures = gamma_invariant_on(&sc, &omega, &weyl, &samples).unwrap();
            assert!(failures.is_empty(), "{failures:?}");
        }
    }

    #[test]
    fn gamma_fixed_point_minus_delta() {
        let sc = sl2();
        let omega = casimir(&sc).unwrap().element;
        let minus_delta = Weight::from_ints(&[-1]);
        let failures = gamma_invariant_on(
            &sc,
            &omega,
            &sc.rs().weyl_group(10).unwrap(),
            &[minus_delta],
        )
        .unwrap();
        assert!(failures.is_empty());
    }

    #[test]
    fn verma_h_action_is_diagonal() {
        let sc = sl2();
        let h = normal_order(&sc, &[H], Rat::one());
        let act = verma_action(&sc, &h, &Weight::from_ints(&[5]), 6);
        assert_eq!(act.basis.len(), 7);
        for (col, mono) in act.basis.iter().enumerate() {
            let expect = rat_int(5 - 2 * i64::from(mono[0]));
            for (row, _) in act.basis.iter().enumerate() {
                let want = if row == col {
                    expect.clone()
                } else {
                    Rat::zero()
                };
                assert_eq!(act.matrix[row][col], want);
            }
        }
    }

    #[test]
    fn verma_certifies_beta_for_zero_weight_samples() {
        let sc = sl2();
        let lam = Weight::from_ints(&[3]);
        for elem in [
            normal_order(&sc, &[E, F], Rat::one()),
            normal_order(&sc, &[E, F, H], Rat::one()),
            normal_order(&sc, &[H, H], rat(1, 2)),
        ] {
            let beta = beta_projection(&sc, &elem).unwrap();
            let act = verma_action(&sc, &elem, &lam, 5);
            let col = act.highest_weight_column();
            assert_eq!(col[0], beta.eval_weight(&lam));
            for v in &col[1..] {
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn casimir_acts_as_scalar_on_verma_sl2() {
        let sc = sl2();
        let omega = casimir(&sc).unwrap().element;
        for n in [-3i64, 0, 4] {
            let lam = Weight::from_ints(&[n]);
            let act = verma_action(&sc, &omega, &lam, 10);
            let scalar = act.scalar().expect("Casimir acts as a scalar");
            assert_eq!(scalar, rat(n * n + 2 * n, 2));
        }
    }

    #[test]
    fn casimir_acts_as_scalar_on_verma_sl3() {
        let sc = sl3();
        let omega = casimir(&sc).unwrap().element;
        let lam = Weight::from_ints(&[2, -1]);
        let act = verma_action(&sc, &omega, &lam, 6);
        let scalar = act.scalar().expect("Casimir acts as a scalar");
        let beta = beta_projection(&sc, &omega).unwrap();
        assert_eq!(scalar, beta.eval_weight(&lam));
    }

    #[test]
    fn sl4_loads_and_certifies_casimir() {
        let sc = StructureConstants::sl(4).unwrap();
        assert_eq!(sc.dim(), 15);
        let cas = casimir(&sc).unwrap();
        // Killing = 8·trace form for sl4.
        assert_eq!(cas.form_to_killing, vec![rat(1, 8)]);
        let lam = Weight::from_ints(&[1, 0, -2]);
        let act = verma_action(&sc, &cas.element, &lam, 2);
        let scalar = act.scalar().expect("central element acts as a scalar");
        let beta = beta_projection(&sc, &cas.element).unwrap();
        assert_eq!(scalar, beta.eval_weight(&lam));
    }

    #[test]
    fn parse_word_expressions() {
        let sc = sl2();
        let (word, coeff) = parse_word_expr(&sc, "E(1)*F(1)*F(1)").unwrap();
        assert_eq!(word, vec![E, F, F]);
        assert_eq!(coeff, Rat::one());
        let (word, coeff) = parse_word_expr(&sc, "3/2*H(1)*E(1)").unwrap();
        assert_eq!(word, vec![H, E]);
        assert_eq!(coeff, rat(3, 2));
        assert!(parse_word_expr(&sc, "E(9)").is_err());
        assert!(parse_word_expr(&sc, "Q(1)").is_err());
        assert!(parse_word_expr(&sc, "E(0)").is_err());
    }

    #[test]
    fn element_display_readable() {
        let sc = sl2();
        let e = normal_order(&sc, &[E, F, F], Rat::one());
        let s = e.display(&sc);
        assert!(s.contains("F(1)^2*E(1)"), "{s}");
        assert!(s.contains("-2*F(1)"), "{s}");
    }
}
