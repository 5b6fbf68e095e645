//! Numeric realization of the big-cell factorization for SU(p,q) inside
//! SL(p+q,C): seeded sampling of the real form, the block factorization
//! `g = p⁻·k·p⁺` (a block LDU split with Schur complement), the Iwasawa
//! decomposition by QR, and evaluation of the analytically continued section
//! `ψ(g) = det(A)^{−m}`.
//!
//! Everything here is double precision with explicit tolerances; defaults are
//! 1e−12 for construction invariants and 1e−10 for verification. Sampling is
//! deterministic given a seed, with per-index streams so batch order never
//! matters.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

/// Dense complex matrix used throughout the cell computations.
pub type CMat = DMatrix<Complex<f64>>;

/// Construction tolerance for sampled group elements.
pub const SAMPLE_TOL: f64 = 1e-12;
/// Relative `|det A|` threshold below which a matrix is reported outside the
/// cell rather than factored through near-singular blocks.
pub const DEFAULT_OUTSIDE_FACTOR: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CellError {
    #[error("matrix must be square of size {expected}, got {rows}x{cols}")]
    BadShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular within working precision")]
    Singular,
    #[error("block sizes p={p}, q={q} must both be at least 1")]
    BadBlocks { p: usize, q: usize },
}

/// The signature form `F = diag(I_p, −I_q)`.
pub fn form_matrix(p: usize, q: usize) -> CMat {
    let n = p + q;
    CMat::from_fn(n, n, |i, j| {
        if i != j {
            Complex::new(0.0, 0.0)
        } else if i < p {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(-1.0, 0.0)
        }
    })
}

fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖g*Fg − F‖_F`, the form-preservation residual.
pub fn form_residual(g: &CMat, p: usize, q: usize) -> f64 {
    let f = form_matrix(p, q);
    frobenius(&(g.adjoint() * &f * g - &f))
}

fn mixed_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 over (seed, index) so per-index streams are independent.
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex<f64> {
    Complex::new(gaussian(rng), gaussian(rng))
}

// ---------------------------------------------------------------------------
// Sampling SU(p,q)
// ---------------------------------------------------------------------------

/// Deterministic sampler of SU(p,q) elements: matrix exponentials of
/// Gaussian-coefficient elements of the real form, scale 1.0.
#[derive(Debug, Clone, Serialize)]
pub struct GroupSampler {
    pub p: usize,
    pub q: usize,
    pub seed: u64,
    pub scale: f64,
}

impl GroupSampler {
    pub fn new(p: usize, q: usize, seed: u64) -> Result<Self, CellError> {
        if p == 0 || q == 0 {
            return Err(CellError::BadBlocks { p, q });
        }
        Ok(Self {
            p,
            q,
            seed,
            scale: 1.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// A Lie-algebra element of su(p,q): blocks `[[A, B],[B*, D]]` with `A`,
    /// `D` anti-Hermitian and the whole matrix traceless.
    fn algebra_element(&self, rng: &mut ChaCha8Rng) -> CMat {
        let (p, q) = (self.p, self.q);
        let n = p + q;
        let mut x = CMat::zeros(n, n);
        let fill_block = |x: &mut CMat, offset: usize, size: usize, rng: &mut ChaCha8Rng| {
            let mut m = CMat::zeros(size, size);
            for i in 0..size {
                for j in 0..size {
                    m[(i, j)] = complex_gaussian(rng);
                }
            }
            let anti = (&m - m.adjoint()) * Complex::new(0.5, 0.0);
            for i in 0..size {
                for j in 0..size {
                    x[(offset + i, offset + j)] = anti[(i, j)];
                }
            }
        };
        fill_block(&mut x, 0, p, rng);
        fill_block(&mut x, p, q, rng);
        for i in 0..p {
            for j in 0..q {
                let b = complex_gaussian(rng);
                x[(i, p + j)] = b;
                x[(p + j, i)] = b.conj();
            }
        }
        // Remove the (purely imaginary) trace.
        let correction = x.trace() / Complex::new(n as f64, 0.0);
        for i in 0..n {
            x[(i, i)] -= correction;
        }
        x * Complex::new(self.scale, 0.0)
    }

    /// Sample the `index`-th element of the stream; deterministic in
    /// `(seed, index)`.
    ///
    /// Draws whose float evaluation floor exceeds the construction tolerance
    /// (large-norm exponentials in the Gaussian tail) are redrawn from the
    /// next substream, so every returned matrix satisfies the form and
    /// determinant invariants within [`SAMPLE_TOL`].
    pub fn sample_one(&self, index: u64) -> CMat {
        let stream = mixed_seed(self.seed, index);
        let mut last = None;
        for attempt in 0..64u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(mixed_seed(stream, attempt));
            let g = self.project_to_group(self.algebra_element(&mut rng).exp());
            let det_err = (g.clone().lu().determinant() - Complex::new(1.0, 0.0)).norm();
            if form_residual(&g, self.p, self.q) <= SAMPLE_TOL && det_err <= SAMPLE_TOL {
                return g;
            }
            last = Some(g);
        }
        last.expect("at least one attempt ran")
    }

    /// Clean up exponential truncation: Newton steps toward `g*Fg = F`
    /// (quadratic; the update `g ← g(I − ½F(g*Fg − F))` halves the defect
    /// equation to first order), then remove the residual determinant phase.
    /// Form preservation forces `|det g| = 1`, so the phase factor does not
    /// disturb the form.
    fn project_to_group(&self, mut g: CMat) -> CMat {
        let n = self.dim();
        let f = form_matrix(self.p, self.q);
        let id = CMat::identity(n, n);
        for _ in 0..2 {
            let e = g.adjoint() * &f * &g - &f;
            g = &g * (&id - &f * e * Complex::new(0.5, 0.0));
        }
        let det = g.clone().lu().determinant();
        let phase_fix = Complex::from_polar(1.0, -det.arg() / n as f64);
        g * phase_fix
    }

    pub fn sample(&self, n: usize) -> Vec<CMat> {
        (0..n as u64).map(|i| self.sample_one(i)).collect()
    }

    /// Random element of `B⁺`: unit-determinant diagonal times unit upper
    /// triangular, drawn from the `index`-th auxiliary stream.
    pub fn sample_b_plus(&self, index: u64) -> CMat {
        let mut rng = ChaCha8Rng::seed_from_u64(mixed_seed(self.seed ^ 0xb5a1_c0de, index));
        random_b_plus(self.dim(), &mut rng)
    }
}

/// Random `b = h·n⁺` with `det h = 1` and moderate conditioning.
pub fn random_b_plus(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let mut z: Vec<Complex<f64>> = (0..n - 1)
        .map(|_| complex_gaussian(rng) * Complex::new(0.4, 0.0))
        .collect();
    let last = -z.iter().sum::<Complex<f64>>();
    z.push(last);
    let mut b = CMat::zeros(n, n);
    for (i, zi) in z.iter().enumerate() {
        b[(i, i)] = zi.exp();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            b[(i, j)] = b[(i, i)] * complex_gaussian(rng) * Complex::new(0.5, 0.0);
        }
    }
    b
}

/// Random `(n⁻, h, n⁺)` with `h` in the torus (det 1) and unit-triangular
/// factors: a generic point of the big Bruhat cell.
pub fn random_cell_point(n: usize, rng: &mut ChaCha8Rng) -> (CMat, CMat, CMat) {
    let mut n_minus = CMat::identity(n, n);
    let mut n_plus = CMat::identity(n, n);
    let mut h = CMat::identity(n, n);
    for i in 0..n {
        for j in 0..i {
            n_minus[(i, j)] = complex_gaussian(rng) * Complex::new(0.5, 0.0);
        }
        for j in (i + 1)..n {
            n_plus[(i, j)] = complex_gaussian(rng) * Complex::new(0.5, 0.0);
        }
    }
    let mut z: Vec<Complex<f64>> = (0..n - 1)
        .map(|_| complex_gaussian(rng) * Complex::new(0.4, 0.0))
        .collect();
    z.push(-z.iter().sum::<Complex<f64>>());
    for (i, zi) in z.iter().enumerate() {
        h[(i, i)] = zi.exp();
    }
    (n_minus, h, n_plus)
}

// ---------------------------------------------------------------------------
// The big-cell factorization
// ---------------------------------------------------------------------------

/// A successful factorization `g = p⁻·k·p⁺`.
#[derive(Debug, Clone)]
pub struct HcFactorization {
    pub p_minus: CMat,
    pub k: CMat,
    pub p_plus: CMat,
    /// `‖p⁻kp⁺ − g‖_F`.
    pub residual: f64,
}

/// Outcome of [`hc_factorize`]: membership in the cell is data, not an error.
#[derive(Debug, Clone)]
pub enum FactorizeOutcome {
    Inside(HcFactorization),
    /// `|det A|` fell below `threshold = factor·‖g‖_F^p`.
    Outside {
        det_a_abs: f64,
        threshold: f64,
    },
}

impl FactorizeOutcome {
    pub fn inside(&self) -> Option<&HcFactorization> {
        match self {
            FactorizeOutcome::Inside(f) => Some(f),
            FactorizeOutcome::Outside { .. } => None,
        }
    }
}

/// Factor `g` through the block LDU split: with `g = [[A,B],[C,D]]` and `A`
/// of size `p×p`,
///
/// ```text
/// p⁻ = [[I, 0], [CA⁻¹, I]]   k = [[A, 0], [0, D − CA⁻¹B]]   p⁺ = [[I, A⁻¹B], [0, I]]
/// ```
///
/// `g` lies in the cell exactly when `A` is invertible; near-singular `A` is
/// reported as [`FactorizeOutcome::Outside`].
pub fn hc_factorize(g: &CMat, p: usize, q: usize) -> Result<FactorizeOutcome, CellError> {
    hc_factorize_with(g, p, q, DEFAULT_OUTSIDE_FACTOR)
}

/// [`hc_factorize`] with an explicit outside-cell threshold factor.
pub fn hc_factorize_with(
    g: &CMat,
    p: usize,
    q: usize,
    outside_factor: f64,
) -> Result<FactorizeOutcome, CellError> {
    let n = p + q;
    if p == 0 || q == 0 {
        return Err(CellError::BadBlocks { p, q });
    }
    if g.nrows() != n || g.ncols() != n {
        return Err(CellError::BadShape {
            expected: n,
            rows: g.nrows(),
            cols: g.ncols(),
        });
    }
    let a = g.view((0, 0), (p, p)).into_owned();
    let b = g.view((0, p), (p, q)).into_owned();
    let c = g.view((p, 0), (q, p)).into_owned();
    let d = g.view((p, p), (q, q)).into_owned();

    let det_a_abs = a.clone().lu().determinant().norm();
    let threshold = outside_factor * frobenius(g).powi(p as i32);
    if det_a_abs < threshold {
        return Ok(FactorizeOutcome::Outside {
            det_a_abs,
            threshold,
        });
    }
    let a_inv = a.clone().lu().try_inverse().ok_or(CellError::Singular)?;
    let ca_inv = &c * &a_inv;
    let a_inv_b = &a_inv * &b;
    let schur = &d - &ca_inv * &b;

    let mut p_minus = CMat::identity(n, n);
    let mut p_plus = CMat::identity(n, n);
    let mut k = CMat::zeros(n, n);
    for i in 0..q {
        for j in 0..p {
            p_minus[(p + i, j)] = ca_inv[(i, j)];
        }
    }
    for i in 0..p {
        for j in 0..q {
            p_plus[(i, p + j)] = a_inv_b[(i, j)];
        }
    }
    for i in 0..p {
        for j in 0..p {
            k[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..q {
        for j in 0..q {
            k[(p + i, p + j)] = schur[(i, j)];
        }
    }
    let residual = frobenius(&(&p_minus * &k * &p_plus - g));
    Ok(FactorizeOutcome::Inside(HcFactorization {
        p_minus,
        k,
        p_plus,
        residual,
    }))
}

// ---------------------------------------------------------------------------
// Batch verification
// ---------------------------------------------------------------------------

/// One failed factorization, with the offending matrix serialized.
#[derive(Debug, Clone, Serialize)]
pub struct InclusionFailure {
    pub index: u64,
    pub det_a_abs: Option<f64>,
    pub residual: Option<f64>,
    /// Row-major `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// Statistics of a `G₀·B⁺ ⊂ P⁻KP⁺` sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct InclusionStats {
    pub total: usize,
    pub inside: usize,
    pub min_residual: f64,
    pub median_residual: f64,
    pub max_residual: f64,
    pub min_abs_det_a: f64,
    pub failures: Vec<InclusionFailure>,
}

impl InclusionStats {
    pub fn all_inside(&self) -> bool {
        self.inside == self.total && self.failures.is_empty()
    }
}

/// Row-major `[re, im]` serialization of a matrix.
pub fn matrix_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

/// Factor `n` samples `g₀·b` with `g₀ ∈ SU(p,q)` and `b ∈ B⁺` random; every
/// one must land inside the cell with residual at most `tol`.
pub fn verify_inclusion(sampler: &GroupSampler, n: usize, tol: f64) -> InclusionStats {
    let mut stats = InclusionStats {
        total: n,
        inside: 0,
        min_residual: f64::INFINITY,
        median_residual: 0.0,
        max_residual: 0.0,
        min_abs_det_a: f64::INFINITY,
        failures: Vec::new(),
    };
    let mut residuals: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n as u64 {
        let g0 = sampler.sample_one(i);
        let b = sampler.sample_b_plus(i);
        let g = &g0 * &b;
        match hc_factorize(&g, sampler.p, sampler.q) {
            Ok(FactorizeOutcome::Inside(f)) => {
                let det_a_abs =
                    f.k.view((0, 0), (sampler.p, sampler.p))
                        .into_owned()
                        .lu()
                        .determinant()
                        .norm();
                stats.min_abs_det_a = stats.min_abs_det_a.min(det_a_abs);
                stats.min_residual = stats.min_residual.min(f.residual);
                stats.max_residual = stats.max_residual.max(f.residual);
                residuals.push(f.residual);
                if f.residual <= tol {
                    stats.inside += 1;
                } else {
                    stats.failures.push(InclusionFailure {
                        index: i,
                        det_a_abs: Some(det_a_abs),
                        residual: Some(f.residual),
                        matrix: matrix_rows(&g),
                    });
                }
            }
            Ok(FactorizeOutcome::Outside { det_a_abs, .. }) => {
                stats.failures.push(InclusionFailure {
                    index: i,
                    det_a_abs: Some(det_a_abs),
                    residual: None,
                    matrix: matrix_rows(&g),
                });
            }
            Err(_) => {
                stats.failures.push(InclusionFailure {
                    index: i,
                    det_a_abs: None,
                    residual: None,
                    matrix: matrix_rows(&g),
                });
            }
        }
    }
    if n == 0 {
        stats.min_residual = 0.0;
        stats.min_abs_det_a = 0.0;
    }
    if !residuals.is_empty() {
        residuals.sort_by(f64::total_cmp);
        stats.median_residual = residuals[residuals.len() / 2];
    }
    stats
}

// ---------------------------------------------------------------------------
// Iwasawa decomposition
// ---------------------------------------------------------------------------

/// `g = u·a·n` with `u` unitary, `a` positive diagonal, `n` unit upper
/// triangular, via QR with the phases moved into `u`.
pub fn iwasawa(g: &CMat) -> Result<(CMat, CMat, CMat), CellError> {
    let n = g.nrows();
    if g.ncols() != n {
        return Err(CellError::BadShape {
            expected: n,
            rows: g.nrows(),
            cols: g.ncols(),
        });
    }
    let qr = g.clone().qr();
    let mut u = qr.q();
    let mut upper = qr.r();
    let mut a = CMat::zeros(n, n);
    for i in 0..n {
        let rii = upper[(i, i)];
        let modulus = rii.norm();
        if modulus < 1e-300 {
            return Err(CellError::Singular);
        }
        let phase = rii / Complex::new(modulus, 0.0);
        // Push the phase into the unitary factor, leave |r_ii| for a.
        for k in 0..n {
            let v = u[(k, i)];
            u[(k, i)] = v * phase;
        }
        for j in 0..n {
            upper[(i, j)] /= phase;
        }
        a[(i, i)] = Complex::new(modulus, 0.0);
        for j in 0..n {
            upper[(i, j)] /= Complex::new(modulus, 0.0);
        }
    }
    Ok((u, a, upper))
}

// ---------------------------------------------------------------------------
// The section ψ
// ---------------------------------------------------------------------------

/// Outcome of evaluating `ψ` at a group element.
#[derive(Debug, Clone)]
pub enum PsiOutcome {
    Value(Complex<f64>),
    OutsideCell { det_a_abs: f64 },
}

/// `ψ(g) = det(A-block of k)^{−m}` on the cell: the analytic continuation of
/// the `B⁺`-equivariant section attached to the character `det^{−m}`.
pub fn evaluate_psi(g: &CMat, m: i32, p: usize, q: usize) -> Result<PsiOutcome, CellError> {
    match hc_factorize(g, p, q)? {
        FactorizeOutcome::Outside { det_a_abs, .. } => Ok(PsiOutcome::OutsideCell { det_a_abs }),
        FactorizeOutcome::Inside(f) => {
            let det_a = f.k.view((0, 0), (p, p)).into_owned().lu().determinant();
            Ok(PsiOutcome::Value(det_a.powi(-m)))
        }
    }
}

/// Character value `χ(b) = (Π_{i<p} b_ii)^{−m}` of an upper-triangular `b`.
pub fn chi_of_triangular(b: &CMat, m: i32, p: usize) -> Complex<f64> {
    let mut det_a = Complex::new(1.0, 0.0);
    for i in 0..p {
        det_a *= b[(i, i)];
    }
    det_a.powi(-m)
}

/// Statistics of the two ψ checks: extension (`ψ(n⁻hn⁺) = χ(h)`) and
/// `B⁺`-equivariance (`ψ(g·b) = ψ(g)·χ(b)`).
#[derive(Debug, Clone, Serialize)]
pub struct PsiStats {
    pub samples: usize,
    pub max_extension_error: f64,
    pub max_equivariance_error: f64,
    pub outside_count: usize,
}

/// Run both ψ checks over seeded samples; errors are relative to
/// `max(1, |reference|)`.
pub fn psi_checks(
    p: usize,
    q: usize,
    m: i32,
    samples: usize,
    seed: u64,
) -> Result<PsiStats, CellError> {
    let n = p + q;
    let sampler = GroupSampler::new(p, q, seed)?;
    let mut stats = PsiStats {
        samples,
        max_extension_error: 0.0,
        max_equivariance_error: 0.0,
        outside_count: 0,
    };
    for i in 0..samples as u64 {
        // Extension across the big cell.
        let mut rng = ChaCha8Rng::seed_from_u64(mixed_seed(seed ^ 0x5170_ee15, i));
        let (n_minus, h, n_plus) = random_cell_point(n, &mut rng);
        let g = &n_minus * &h * &n_plus;
        match evaluate_psi(&g, m, p, q)? {
            PsiOutcome::Value(v) => {
                let reference = chi_of_triangular(&h, m, p);
                let err = (v - reference).norm() / reference.norm().max(1.0);
                stats.max_extension_error = stats.max_extension_error.max(err);
            }
            PsiOutcome::OutsideCell { .. } => stats.outside_count += 1,
        }

        // Equivariance under right translation by B⁺.
        let g0 = sampler.sample_one(i);
        let b = sampler.sample_b_plus(i);
        let gb = &g0 * &b;
        let lhs = evaluate_psi(&gb, m, p, q)?;
        let rhs = evaluate_psi(&g0, m, p, q)?;
        match (lhs, rhs) {
            (PsiOutcome::Value(l), PsiOutcome::Value(r)) => {
                let expect = r * chi_of_triangular(&b, m, p);
                let err = (l - expect).norm() / expect.norm().max(1.0);
                stats.max_equivariance_error = stats.max_equivariance_error.max(err);
            }
            _ => stats.outside_count += 1,
        }
    }
    Ok(stats)
}
