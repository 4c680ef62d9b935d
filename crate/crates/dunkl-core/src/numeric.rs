//! Floating-point layer.
//!
//! Everything outside this module is exact; this module provides the numeric
//! counterparts used for cross-checks and for quantities with no rational
//! closed form:
//!
//! * quadrature rules (Gauss–Legendre, Gaussian-domain, periodic trapezoid,
//!   and graded circle rules that restore high accuracy in the presence of
//!   the `|<x, v>|^{2 kappa}` mirror singularities);
//! * log-Gamma evaluation and numeric Macdonald–Mehta constants;
//! * certified partial sums of the reproducing kernel `K_kappa = sum_n K_n`
//!   with the explicit tail bound driven by `rho(x, y) = max_w |<x, wy>|`;
//! * the closed-form one-dimensional kernel series and the transform
//!   eigenfunction check;
//! * the generalized heat kernel.
//!
//! All routines require numeric (rational or float) multiplicities; symbolic
//! contexts are rejected with [`Error::SymbolicParameterRemaining`].

use std::cell::RefCell;
use std::f64::consts::PI;

use std::collections::HashMap;

use crate::dunkl::{dunkl_apply, monomials_of_degree, DunklContext, MmExpression};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{KappaMode, RootSystem};
use crate::scalar::{rat, rational_to_f64, Scalar};

/// Maximum kernel degree before a requested tolerance is declared
/// unreachable.
pub const KERNEL_TERM_CAP: usize = 200;

/// Half-width of a truncated Gaussian domain: for the density
/// `exp(-x^2 / (2 sigma^2))` the mass discarded beyond `9 sigma` is below
/// `1e-14` even after multiplication by the moderate-degree polynomial
/// factors appearing in this crate.
pub fn gaussian_halfwidth(sigma: f64) -> f64 {
    9.0 * sigma
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Node family of a quadrature rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadKind {
    /// Gauss–Legendre nodes on an interval.
    GaussLegendre,
    /// Gauss–Legendre nodes on a truncated Gaussian domain with the Gaussian
    /// density folded into the weights.
    GaussHermiteLike,
    /// Equally spaced nodes on the circle.
    TrapezoidPeriodic,
}

/// A one-dimensional quadrature rule: `integrate(f) = sum_i w_i f(x_i)`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    /// Node family.
    pub kind: QuadKind,
    /// Evaluation points.
    pub nodes: Vec<f64>,
    /// Matching weights.
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// The `n`-point Gauss–Legendre rule on `[a, b]`, exact on polynomials of
    /// degree `2n - 1`. Nodes are found by Newton iteration on the Legendre
    /// polynomial from the Chebyshev initial guess.
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for i in 0..n {
            let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_and_derivative(n, t);
                let dt = p / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_and_derivative(n, t);
            let w = 2.0 / ((1.0 - t * t) * dp * dp);
            nodes.push(mid + half * t);
            weights.push(half * w);
        }
        QuadratureRule {
            kind: QuadKind::GaussLegendre,
            nodes,
            weights,
        }
    }

    /// An `n`-point rule integrating `f` against `exp(-x^2 / (2 sigma^2))`
    /// over the whole line: Gauss–Legendre on the truncated domain
    /// `[-9 sigma, 9 sigma]` with the Gaussian density folded into the
    /// weights.
    pub fn gauss_hermite_like(n: usize, sigma: f64) -> Self {
        let r = gaussian_halfwidth(sigma);
        let base = QuadratureRule::gauss_legendre(n, -r, r);
        let weights = base
            .nodes
            .iter()
            .zip(&base.weights)
            .map(|(&x, &w)| w * (-x * x / (2.0 * sigma * sigma)).exp())
            .collect();
        QuadratureRule {
            kind: QuadKind::GaussHermiteLike,
            nodes: base.nodes,
            weights,
        }
    }

    /// The `n`-point periodic trapezoid rule on `[0, 2 pi)`, spectrally
    /// accurate for smooth periodic integrands.
    pub fn trapezoid_periodic(n: usize) -> Self {
        let h = 2.0 * PI / n as f64;
        QuadratureRule {
            kind: QuadKind::TrapezoidPeriodic,
            nodes: (0..n).map(|j| j as f64 * h).collect(),
            weights: vec![h; n],
        }
    }

    /// Apply the rule.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial `P_n` and its derivative at `t` by the three-term
/// recurrence.
fn legendre_and_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, dp)
}

/// A composite rule on `[a, b]` whose endpoints may carry algebraic
/// singularities: Gauss–Legendre after the substitution
/// `x = a + (b - a) (u - sin(2 pi u) / (2 pi))`, whose derivative vanishes to
/// second order at both endpoints. This upgrades the algebraic convergence on
/// `x^{2 kappa}`-type endpoint behavior to near-machine accuracy at modest
/// node counts.
fn graded_panel(n: usize, a: f64, b: f64) -> QuadratureRule {
    let base = QuadratureRule::gauss_legendre(n, 0.0, 1.0);
    let len = b - a;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (&u, &w) in base.nodes.iter().zip(&base.weights) {
        nodes.push(a + len * (u - (2.0 * PI * u).sin() / (2.0 * PI)));
        weights.push(w * len * (1.0 - (2.0 * PI * u).cos()));
    }
    QuadratureRule {
        kind: QuadKind::GaussLegendre,
        nodes,
        weights,
    }
}

/// A circle rule graded at the given singular angles: one graded panel per
/// arc between consecutive singularities. With no singular angles this falls
/// back to the 1024-node periodic trapezoid rule.
pub fn circle_graded_rule(singular_angles: &[f64], nodes_per_panel: usize) -> QuadratureRule {
    let two_pi = 2.0 * PI;
    let mut angles: Vec<f64> = singular_angles
        .iter()
        .map(|&a| a.rem_euclid(two_pi))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if angles.len() > 1 && (angles[0] + two_pi - angles[angles.len() - 1]).abs() < 1e-12 {
        angles.pop();
    }
    if angles.is_empty() {
        return QuadratureRule::trapezoid_periodic(1024);
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for i in 0..angles.len() {
        let a = angles[i];
        let b = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + two_pi
        };
        let panel = graded_panel(nodes_per_panel, a, b);
        nodes.extend(panel.nodes);
        weights.extend(panel.weights);
    }
    QuadratureRule {
        kind: QuadKind::GaussLegendre,
        nodes,
        weights,
    }
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the Gamma function on the positive half-line
/// (Lanczos approximation, `g = 7`, nine terms; about 15 significant
/// digits). Nonpositive arguments report the pole location.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        // Shift into the stable range: Gamma(x) = Gamma(x + 1) / x.
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln())
}

/// The Gamma function on the positive half-line.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

// ---------------------------------------------------------------------------
// Numeric multiplicities and weights
// ---------------------------------------------------------------------------

/// Per-class multiplicity values as floats. Symbolic contexts are rejected.
pub fn kappa_floats(ctx: &DunklContext) -> Result<Vec<f64>> {
    if matches!(ctx.kappa.mode, KappaMode::Symbolic) {
        return Err(Error::SymbolicParameterRemaining);
    }
    Ok(ctx.kappa.values.iter().map(|s| s.eval_f64(&[])).collect())
}

/// `gamma_kappa = sum_{v in R_+} kappa(v)` as a float.
pub fn gamma_kappa_float(ctx: &DunklContext) -> Result<f64> {
    if matches!(ctx.kappa.mode, KappaMode::Symbolic) {
        return Err(Error::SymbolicParameterRemaining);
    }
    Ok(ctx.gamma.eval_f64(&[]))
}

/// The weight `w_kappa(x) = prod_{v in R_+} |<x, v>|^{2 kappa(v)}` at a
/// point, using the context's own roots (no length renormalization).
pub fn weight_eval(ctx: &DunklContext, x: &[f64]) -> Result<f64> {
    if x.len() != ctx.dim() {
        return Err(Error::DimensionMismatch(x.len(), ctx.dim()));
    }
    let kappas = kappa_floats(ctx)?;
    let mut w = 1.0;
    for (k, v) in ctx.rs.positive_roots().enumerate() {
        let kv = kappas[ctx.rs.class_of_positive(k)];
        if kv == 0.0 {
            continue;
        }
        let dot: f64 = v
            .iter()
            .zip(x)
            .map(|(vi, &xi)| rational_to_f64(vi) * xi)
            .sum();
        w *= dot.abs().powf(2.0 * kv);
    }
    Ok(w)
}

/// Angles in `[0, 2 pi)` where the planar weight vanishes: for each positive
/// root the two directions orthogonal to it. Only defined for `d = 2`.
pub fn mirror_angles(rs: &RootSystem) -> Result<Vec<f64>> {
    if rs.dim != 2 {
        return Err(Error::DimensionMismatch(rs.dim, 2));
    }
    let mut out = Vec::new();
    for v in rs.positive_roots() {
        let phi = rational_to_f64(&v[1]).atan2(rational_to_f64(&v[0]));
        out.push((phi + 0.5 * PI).rem_euclid(2.0 * PI));
        out.push((phi + 1.5 * PI).rem_euclid(2.0 * PI));
    }
    Ok(out)
}

/// `(2 pi)^{-1} * integral of f(theta) w_kappa(cos theta, sin theta)` over
/// the circle, using a rule graded at the mirror angles. This is the average
/// against the normalized surface measure, so `circle_average(ctx, 1)` is
/// `1 / c_{kappa,S}`.
pub fn circle_average(ctx: &DunklContext, f: &dyn Fn(f64) -> f64) -> Result<f64> {
    let angles = mirror_angles(&ctx.rs)?;
    let rule = circle_graded_rule(&angles, 96);
    let kappas = kappa_floats(ctx)?;
    let roots: Vec<[f64; 2]> = ctx
        .rs
        .positive_roots()
        .map(|v| [rational_to_f64(&v[0]), rational_to_f64(&v[1])])
        .collect();
    let classes: Vec<usize> = (0..roots.len()).map(|k| ctx.rs.class_of_positive(k)).collect();
    let total = rule.integrate(|theta| {
        let (s, c) = theta.sin_cos();
        let mut w = 1.0;
        for (v, &cl) in roots.iter().zip(&classes) {
            let kv = kappas[cl];
            if kv != 0.0 {
                w *= (v[0] * c + v[1] * s).abs().powf(2.0 * kv);
            }
        }
        w * f(theta)
    });
    Ok(total / (2.0 * PI))
}

/// `(2 pi)^{-1} * integral of f(theta) * prod_k |sin(theta - k pi / m)|^{2
/// kappa_k}` for the dihedral mirror arrangement with mirrors at the angles
/// `k pi / m`. For odd `m` one value is expected; for even `m` two values,
/// the first on the odd-index mirrors and the second on the even-index
/// mirrors (the coordinate axes when `m` is even).
pub fn dihedral_circle_average(
    m: usize,
    kappas: &[f64],
    f: &dyn Fn(f64) -> f64,
) -> Result<f64> {
    if m < 3 {
        return Err(Error::UnsupportedType(format!(
            "dihedral order parameter m = {} (need m >= 3)",
            m
        )));
    }
    let expected = if m % 2 == 1 { 1 } else { 2 };
    if kappas.len() != expected {
        return Err(Error::LengthMismatch(kappas.len(), expected));
    }
    let angles: Vec<f64> = (0..2 * m).map(|k| k as f64 * PI / m as f64).collect();
    let rule = circle_graded_rule(&angles, 96);
    let total = rule.integrate(|theta| {
        let mut w = 1.0;
        for k in 0..m {
            let kv = if m % 2 == 1 {
                kappas[0]
            } else if k % 2 == 0 {
                kappas[1]
            } else {
                kappas[0]
            };
            if kv != 0.0 {
                w *= (theta - k as f64 * PI / m as f64).sin().abs().powf(2.0 * kv);
            }
        }
        w * f(theta)
    });
    Ok(total / (2.0 * PI))
}

/// `1 / c_{kappa,S}`: the average of `w_kappa` over the circle with the
/// normalized surface measure (`d = 2` only).
pub fn c_kappa_s_inv(ctx: &DunklContext) -> Result<f64> {
    circle_average(ctx, &|_| 1.0)
}

/// `1 / c_kappa = (2 pi)^{-d/2} * integral of w_kappa e^{-|x|^2/2}`, for the
/// context's own root normalization. Dimension 1 is evaluated in closed
/// form; dimension 2 reduces to a circle average through the radial Gamma
/// integral; higher dimensions are unsupported unless all multiplicities
/// vanish.
pub fn c_kappa_inv(ctx: &DunklContext) -> Result<f64> {
    let g = gamma_kappa_float(ctx)?;
    if g == 0.0 {
        return Ok(1.0);
    }
    match ctx.dim() {
        1 => {
            // w(x) = |x|^{2 gamma} * prod |v_1|^{2 kappa(v)}; the Gaussian
            // moment is 2^gamma Gamma(gamma + 1/2) / Gamma(1/2).
            let kappas = kappa_floats(ctx)?;
            let mut scale = 1.0;
            for (k, v) in ctx.rs.positive_roots().enumerate() {
                let kv = kappas[ctx.rs.class_of_positive(k)];
                scale *= rational_to_f64(&v[0]).abs().powf(2.0 * kv);
            }
            Ok(scale * 2f64.powf(g) * (ln_gamma(g + 0.5)? - ln_gamma(0.5)?).exp())
        }
        2 => {
            // Radial factor for a weight homogeneous of degree 2 gamma:
            // (2 pi)^{-1} integral = 2^gamma Gamma(gamma + 1) * average on
            // the circle.
            let avg = c_kappa_s_inv(ctx)?;
            Ok(2f64.powf(g) * gamma(g + 1.0)? * avg)
        }
        d => Err(Error::UnsupportedType(format!(
            "numeric c_kappa in dimension {} (supported: 1, 2, or kappa = 0)",
            d
        ))),
    }
}

// ---------------------------------------------------------------------------
// Macdonald–Mehta constants
// ---------------------------------------------------------------------------

/// Evaluate a symbolic Macdonald–Mehta record `2^{log2} prod
/// Gamma(arg)^{power}` at numeric multiplicities via log-Gamma. All Gamma
/// arguments must be positive.
pub fn mm_constant_eval(expr: &MmExpression, kappa: &[f64]) -> Result<f64> {
    let mut log = expr.log2.eval_f64(kappa) * 2f64.ln();
    for (arg, power) in &expr.gammas {
        let a = arg.eval_f64(kappa);
        log += *power as f64 * ln_gamma(a)?;
    }
    Ok(log.exp())
}

// ---------------------------------------------------------------------------
// Kernel partial sums
// ---------------------------------------------------------------------------

/// `rho(x, y) = max_{w in G} |<x, w y>|`, computed by explicit orbit
/// enumeration. This is the exact constant in the kernel tail bound.
pub fn rho(rs: &RootSystem, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != rs.dim || y.len() != rs.dim {
        return Err(Error::DimensionMismatch(x.len().max(y.len()), rs.dim));
    }
    let group = rs.generate_group(None)?;
    let mut best = 0.0f64;
    for w in &group {
        let wy = apply_matrix_f64(w.matrix(), y);
        let dot: f64 = x.iter().zip(&wy).map(|(&a, &b)| a * b).sum();
        best = best.max(dot.abs());
    }
    Ok(best)
}

fn apply_matrix_f64(mat: &[Vec<crate::scalar::Rational>], v: &[f64]) -> Vec<f64> {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(m, &vi)| rational_to_f64(m) * vi)
                .sum()
        })
        .collect()
}

/// Result of a certified kernel partial sum.
#[derive(Clone, Debug)]
pub struct KernelEval {
    /// Real part of the partial sum.
    pub value: f64,
    /// Imaginary part (zero for the real-argument variants).
    pub value_im: f64,
    /// Number of homogeneous terms summed; the highest included degree is
    /// `terms_used - 1`.
    pub terms_used: usize,
    /// Upper bound on the discarded tail: with highest included degree `N`,
    /// `sum_{n > N} rho^n / n! <= rho^{N+1} / (N+1)! * 1 / (1 - rho / (N+2))`.
    pub tail_bound: f64,
}

/// Lazy evaluator for the homogeneous kernel terms of one context.
///
/// Term coefficients are produced numerically rather than through the exact
/// intertwining cache: the Gram matrix of the kappa form on the degree-`n`
/// monomial basis satisfies the adjoint recursion `<x_i p, q> = <p, D_i q>`,
/// so each `G_n` is assembled in floating point from the exact Dunkl images
/// of monomials and `G_{n-1}`.  Since the reproducing kernel of the kappa
/// form in degree `n` is the homogeneous kernel term, the term evaluates as
/// `K_n(x, y) = m(x)^T G_n^{-1} m(y)` with `m` the vector of degree-`n`
/// monomials.  This keeps high degrees cheap where exact rational inversion
/// would be prohibitive; accuracy is limited by the conditioning of `G_n`.
pub struct KernelSeries<'a> {
    ctx: &'a DunklContext,
    tables: RefCell<KernelTables>,
    group: Vec<Vec<Vec<f64>>>,
}

/// Per-degree numeric data backing [`KernelSeries`].
struct KernelTables {
    /// Monomial exponent vectors, indexed by degree.
    monomials: Vec<Vec<Vec<u32>>>,
    /// Gram matrices of the kappa form on the monomial bases.
    grams: Vec<Vec<Vec<f64>>>,
    /// Inverse Gram matrices: the kernel coefficient matrices.
    inverses: Vec<Vec<Vec<f64>>>,
}

/// Invert a square matrix by Gauss-Jordan elimination with partial
/// pivoting.
fn invert_f64_matrix(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let k = a.len();
    let mut work: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut ext = row.clone();
            ext.extend((0..k).map(|c| if c == r { 1.0 } else { 0.0 }));
            ext
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| {
                work[i][col]
                    .abs()
                    .partial_cmp(&work[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if work[pivot][col] == 0.0 {
            return Err(Error::SingularParameter(
                "numerically singular Gram matrix".to_string(),
            ));
        }
        work.swap(col, pivot);
        let p = work[col][col];
        for v in work[col].iter_mut() {
            *v /= p;
        }
        for r in 0..k {
            if r == col {
                continue;
            }
            let factor = work[r][col];
            if factor == 0.0 {
                continue;
            }
            let (head, tail) = work.split_at_mut(r.max(col));
            let (src, dst) = if r > col {
                (&head[col], &mut tail[0])
            } else {
                (&tail[0], &mut head[r])
            };
            for (dv, sv) in dst.iter_mut().zip(src.iter()) {
                *dv -= factor * sv;
            }
        }
    }
    Ok(work.into_iter().map(|mut row| row.split_off(k)).collect())
}

impl<'a> KernelSeries<'a> {
    /// Prepare a series evaluator; the context must carry numeric
    /// multiplicities.
    pub fn new(ctx: &'a DunklContext) -> Result<Self> {
        if matches!(ctx.kappa.mode, KappaMode::Symbolic) {
            return Err(Error::SymbolicParameterRemaining);
        }
        let group = ctx
            .rs
            .generate_group(None)?
            .iter()
            .map(|w| {
                w.matrix()
                    .iter()
                    .map(|row| row.iter().map(rational_to_f64).collect())
                    .collect()
            })
            .collect();
        let d = ctx.dim();
        Ok(KernelSeries {
            ctx,
            tables: RefCell::new(KernelTables {
                monomials: vec![vec![vec![0; d]]],
                grams: vec![vec![vec![1.0]]],
                inverses: vec![vec![vec![1.0]]],
            }),
            group,
        })
    }

    /// Extend the cached Gram and coefficient tables through degree `n`.
    fn ensure_degree(&self, n: usize) -> Result<()> {
        let d = self.ctx.dim();
        let mut tables = self.tables.borrow_mut();
        while tables.grams.len() <= n {
            let deg = tables.grams.len() as u32;
            let mons: Vec<Vec<u32>> = monomials_of_degree(d, deg)
                .into_iter()
                .map(|e| e.0)
                .collect();
            let lower = &tables.monomials[deg as usize - 1];
            let lower_index: HashMap<&[u32], usize> = lower
                .iter()
                .enumerate()
                .map(|(idx, e)| (e.as_slice(), idx))
                .collect();
            // Float coefficient vectors of `D_i x^f` on the lower basis.
            let mut images: Vec<Vec<Vec<f64>>> =
                vec![vec![vec![0.0; lower.len()]; mons.len()]; d];
            for (i, img_i) in images.iter_mut().enumerate() {
                let mut dir = vec![rat(0, 1); d];
                dir[i] = rat(1, 1);
                for (f, img) in img_i.iter_mut().enumerate() {
                    let p = Polynomial::monomial(d, &mons[f], Scalar::one());
                    let dp = dunkl_apply(self.ctx, &dir, &p)?;
                    for (e, c) in dp.iter() {
                        img[lower_index[e.0.as_slice()]] = c.eval_f64(&[]);
                    }
                }
            }
            let prev = &tables.grams[deg as usize - 1];
            let mut gram = vec![vec![0.0; mons.len()]; mons.len()];
            for r in 0..mons.len() {
                let i = mons[r].iter().position(|&v| v > 0).unwrap();
                let mut shifted = mons[r].clone();
                shifted[i] -= 1;
                let prow = &prev[lower_index[shifted.as_slice()]];
                for c in r..mons.len() {
                    let entry: f64 = images[i][c]
                        .iter()
                        .zip(prow.iter())
                        .map(|(&a, &b)| a * b)
                        .sum();
                    gram[r][c] = entry;
                    gram[c][r] = entry;
                }
            }
            let inverse = invert_f64_matrix(&gram)?;
            tables.monomials.push(mons);
            tables.grams.push(gram);
            tables.inverses.push(inverse);
        }
        Ok(())
    }

    /// The homogeneous term `K_n(x, y)` as a float.
    pub fn term_value(&self, n: usize, x: &[f64], y: &[f64]) -> Result<f64> {
        let d = self.ctx.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::DimensionMismatch(x.len().max(y.len()), d));
        }
        self.ensure_degree(n)?;
        let tables = self.tables.borrow();
        let mons = &tables.monomials[n];
        let inv = &tables.inverses[n];
        let eval = |point: &[f64]| -> Vec<f64> {
            mons.iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .map(|(i, &p)| point[i].powi(p as i32))
                        .product()
                })
                .collect()
        };
        let mx = eval(x);
        let my = eval(y);
        let mut value = 0.0;
        for (r, row) in inv.iter().enumerate() {
            if mx[r] == 0.0 {
                continue;
            }
            let inner: f64 = row.iter().zip(&my).map(|(&c, &v)| c * v).sum();
            value += mx[r] * inner;
        }
        Ok(value)
    }

    /// `rho(x, y)` using the cached float group.
    pub fn rho(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut best = 0.0f64;
        for w in &self.group {
            let wy: Vec<f64> = w
                .iter()
                .map(|row| row.iter().zip(y).map(|(&m, &v)| m * v).sum())
                .collect();
            let dot: f64 = x.iter().zip(&wy).map(|(&a, &b)| a * b).sum();
            best = best.max(dot.abs());
        }
        best
    }

    /// Partial sum with exactly `terms` homogeneous terms (degrees
    /// `0 .. terms`), with its certified tail bound.
    pub fn partial(&self, x: &[f64], y: &[f64], terms: usize) -> Result<KernelEval> {
        let r = self.rho(x, y);
        let mut value = 0.0;
        for n in 0..terms {
            value += self.term_value(n, x, y)?;
        }
        Ok(KernelEval {
            value,
            value_im: 0.0,
            terms_used: terms,
            tail_bound: tail_bound(r, terms as i64 - 1),
        })
    }

    /// Sum until the certified tail bound drops below `tol` (real second
    /// argument).
    pub fn eval(&self, x: &[f64], y: &[f64], tol: f64) -> Result<KernelEval> {
        self.eval_weighted(x, y, tol, false)
    }

    /// `K(x, i y)` as a `(re, im)` pair: the term of degree `n` picks up the
    /// phase `i^n` since `K_n` is homogeneous of degree `n` in `y`.
    pub fn eval_imaginary(&self, x: &[f64], y: &[f64], tol: f64) -> Result<KernelEval> {
        self.eval_weighted(x, y, tol, true)
    }

    fn eval_weighted(
        &self,
        x: &[f64],
        y: &[f64],
        tol: f64,
        imaginary: bool,
    ) -> Result<KernelEval> {
        let r = self.rho(x, y);
        let mut re = 0.0;
        let mut im = 0.0;
        for n in 0..=KERNEL_TERM_CAP {
            let t = self.term_value(n, x, y)?;
            if imaginary {
                match n % 4 {
                    0 => re += t,
                    1 => im += t,
                    2 => re -= t,
                    _ => im -= t,
                }
            } else {
                re += t;
            }
            let tail = tail_bound(r, n as i64);
            if tail < tol {
                return Ok(KernelEval {
                    value: re,
                    value_im: im,
                    terms_used: n + 1,
                    tail_bound: tail,
                });
            }
        }
        Err(Error::ToleranceUnreachable {
            cap: KERNEL_TERM_CAP,
        })
    }

    /// The symmetrized kernel `J_G(x, y) = (1/#G) sum_w K(w x, y)`.
    pub fn eval_symmetrized(&self, x: &[f64], y: &[f64], tol: f64) -> Result<KernelEval> {
        let mut acc = 0.0;
        let mut terms = 0;
        let mut tail = 0.0f64;
        for w in &self.group {
            let wx: Vec<f64> = w
                .iter()
                .map(|row| row.iter().zip(x).map(|(&m, &v)| m * v).sum())
                .collect();
            let e = self.eval(&wx, y, tol)?;
            acc += e.value;
            terms = terms.max(e.terms_used);
            tail = tail.max(e.tail_bound);
        }
        Ok(KernelEval {
            value: acc / self.group.len() as f64,
            value_im: 0.0,
            terms_used: terms,
            tail_bound: tail,
        })
    }
}

/// Tail bound after including degrees `0..=n`: `rho^{n+1} / (n+1)! * 1 / (1 -
/// rho/(n+2))`, or infinity while the geometric comparison has not kicked in.
fn tail_bound(rho: f64, n: i64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    let np1 = (n + 1) as f64;
    if rho / (np1 + 1.0) >= 1.0 {
        return f64::INFINITY;
    }
    let log_head = np1 * rho.ln() - ln_gamma(np1 + 1.0).expect("positive argument");
    log_head.exp() / (1.0 - rho / (np1 + 1.0))
}

/// Certified kernel partial sum `K_kappa(x, y)` (convenience wrapper).
pub fn kernel_partial_sum(
    ctx: &DunklContext,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<KernelEval> {
    KernelSeries::new(ctx)?.eval(x, y, tol)
}

/// Certified partial sum of `K_kappa(x, i y)` (convenience wrapper).
pub fn kernel_partial_sum_imaginary(
    ctx: &DunklContext,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<KernelEval> {
    KernelSeries::new(ctx)?.eval_imaginary(x, y, tol)
}

/// Certified partial sum of the symmetrized kernel `J_G` (convenience
/// wrapper).
pub fn kernel_symmetrized(
    ctx: &DunklContext,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<KernelEval> {
    KernelSeries::new(ctx)?.eval_symmetrized(x, y, tol)
}

// ---------------------------------------------------------------------------
// One-dimensional closed forms
// ---------------------------------------------------------------------------

/// `sum_j z^j / (j! (a)_j)`, summed to machine accuracy.
fn bessel_type_series(a: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..500 {
        let jf = j as f64;
        term *= z / ((jf + 1.0) * (a + jf));
        sum += term;
        if term.abs() < 1e-18 * (1.0 + sum.abs()) {
            break;
        }
    }
    sum
}

/// The closed-form one-dimensional kernel: with `u = x y`,
/// `K(x, y) = sum_j (u/2)^{2j} / (j! (kappa + 1/2)_j)
///          + u/(1 + 2 kappa) * sum_j (u/2)^{2j} / (j! (kappa + 3/2)_j)`.
pub fn z2_kernel(kappa: f64, x: f64, y: f64) -> f64 {
    let u = x * y;
    let z = u * u / 4.0;
    bessel_type_series(kappa + 0.5, z) + u / (1.0 + 2.0 * kappa) * bessel_type_series(kappa + 1.5, z)
}

/// The closed-form one-dimensional kernel at an imaginary second argument:
/// `K(x, -i y)` as a `(re, im)` pair. Substituting `y -> -i y` flips the
/// sign of the squared argument in each series and makes the odd part purely
/// imaginary.
pub fn z2_kernel_minus_i(kappa: f64, x: f64, y: f64) -> (f64, f64) {
    let u = x * y;
    let z = -u * u / 4.0;
    (
        bessel_type_series(kappa + 0.5, z),
        -u / (1.0 + 2.0 * kappa) * bessel_type_series(kappa + 1.5, z),
    )
}

/// Generalized Laguerre polynomial `L_m^{(alpha)}(t)` by the three-term
/// recurrence, in floats.
pub fn laguerre_f64(m: u32, alpha: f64, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut l0 = 1.0;
    let mut l1 = 1.0 + alpha - t;
    for k in 2..=m {
        let kf = k as f64;
        let l2 = ((2.0 * kf - 1.0 + alpha - t) * l1 - (kf - 1.0 + alpha) * l0) / kf;
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// One sample of the transform eigenfunction check.
#[derive(Clone, Debug)]
pub struct TransformCheck {
    /// Evaluation point.
    pub y: f64,
    /// Quadrature value of the transform, as `(re, im)`.
    pub lhs: (f64, f64),
    /// Expected value `(-i)^{n+2m} f(y)`, as `(re, im)`.
    pub rhs: (f64, f64),
    /// Largest componentwise deviation.
    pub err: f64,
    /// Whether the deviation is below the requested tolerance.
    pub within_tol: bool,
}

/// Transform eigenfunction check in one dimension: for
/// `f(x) = x^n L_m^{(alpha)}(x^2) e^{-x^2/2}` with `alpha = n + kappa - 1/2`
/// (the rank-one case of `alpha = n + d/2 + gamma_kappa - 1`), the transform
/// `c_kappa (2 pi)^{-1/2} * integral of f(x) K(x, -i y) |x|^{2 kappa} dx`
/// must equal `(-i)^{n + 2m} f(y)`. Returns one record per requested point;
/// `n` must be 0 or 1 so that `x^n` is harmonic.
pub fn z2_transform_eigencheck(
    kappa: f64,
    n: u32,
    m: u32,
    ys: &[f64],
    tol: f64,
) -> Result<Vec<TransformCheck>> {
    if n > 1 {
        return Err(Error::UnsupportedType(format!(
            "harmonic degree n = {} in one dimension (need 0 or 1)",
            n
        )));
    }
    if kappa < 0.0 {
        return Err(Error::SingularParameter(format!(
            "negative multiplicity {} in the transform check",
            kappa
        )));
    }
    let alpha = n as f64 + kappa - 0.5;
    let f = |x: f64| x.powi(n as i32) * laguerre_f64(m, alpha, x * x) * (-x * x / 2.0).exp();
    // c_kappa (2 pi)^{-1/2} = 2^{-kappa - 1/2} / Gamma(kappa + 1/2).
    let norm = 2f64.powf(-kappa - 0.5) / gamma(kappa + 0.5)?;
    let r = gaussian_halfwidth(1.0);
    // Panels graded at the |x|^{2 kappa} singularity at the origin.
    let mut rule = graded_panel(512, -r, 0.0);
    let right = graded_panel(512, 0.0, r);
    rule.nodes.extend(right.nodes);
    rule.weights.extend(right.weights);
    let phase = match (n + 2 * m) % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, -1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, 1.0),
    };
    let mut out = Vec::with_capacity(ys.len());
    for &y in ys {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let (kr, ki) = z2_kernel_minus_i(kappa, x, y);
            let fac = w * f(x) * x.abs().powf(2.0 * kappa);
            re += fac * kr;
            im += fac * ki;
        }
        let lhs = (norm * re, norm * im);
        let fy = f(y);
        let rhs = (phase.0 * fy, phase.1 * fy);
        let err = (lhs.0 - rhs.0).abs().max((lhs.1 - rhs.1).abs());
        out.push(TransformCheck {
            y,
            lhs,
            rhs,
            err,
            within_tol: err <= tol,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Heat kernel
// ---------------------------------------------------------------------------

/// The generalized heat kernel
/// `Gamma(t, x, y) = c_kappa / ((2t)^{gamma + d/2} (2 pi)^{d/2})
///   * exp(-(|x|^2 + |y|^2) / (4t)) * K(x / sqrt(2t), y / sqrt(2t))`,
/// with the kernel summed to the certified tolerance `tol`. At vanishing
/// multiplicities this reduces algebraically to the classical heat kernel
/// `(4 pi t)^{-d/2} exp(-|x - y|^2 / (4t))`.
pub fn heat_kernel_eval(
    ctx: &DunklContext,
    t: f64,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<f64> {
    HeatKernel::new(ctx)?.eval(t, x, y, tol)
}

/// Reusable heat-kernel evaluator: holds the kernel series tables and the
/// normalization constants so repeated evaluations (quadrature over one
/// argument, say) do not rebuild them point by point.
pub struct HeatKernel<'a> {
    series: KernelSeries<'a>,
    dim: usize,
    gamma: f64,
    c_inv: f64,
}

impl<'a> HeatKernel<'a> {
    /// Prepare an evaluator; the context must carry numeric multiplicities.
    pub fn new(ctx: &'a DunklContext) -> Result<Self> {
        Ok(HeatKernel {
            series: KernelSeries::new(ctx)?,
            dim: ctx.dim(),
            gamma: gamma_kappa_float(ctx)?,
            c_inv: c_kappa_inv(ctx)?,
        })
    }

    /// `Gamma(t, x, y)` with the kernel summed to the certified tolerance
    /// `tol`.
    pub fn eval(&self, t: f64, x: &[f64], y: &[f64], tol: f64) -> Result<f64> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::SingularParameter(format!(
                "heat kernel requires t > 0, got {}",
                t
            )));
        }
        let d = self.dim;
        if x.len() != d || y.len() != d {
            return Err(Error::DimensionMismatch(x.len().max(y.len()), d));
        }
        let s = (2.0 * t).sqrt();
        let xs: Vec<f64> = x.iter().map(|&v| v / s).collect();
        let ys: Vec<f64> = y.iter().map(|&v| v / s).collect();
        let k = self.series.eval(&xs, &ys, tol)?;
        let norm = 1.0
            / (self.c_inv
                * (2.0 * t).powf(self.gamma + d as f64 / 2.0)
                * (2.0 * PI).powf(d as f64 / 2.0));
        let q: f64 =
            x.iter().map(|&v| v * v).sum::<f64>() + y.iter().map(|&v| v * v).sum::<f64>();
        Ok(norm * (-q / (4.0 * t)).exp() * k.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl::{kappa_form, mm_expression};
    use crate::roots::{MultiplicitySpec, RootSystem, TypeTag};
    use crate::scalar::{rat, rat_int};

    fn ctx_rational(tag: TypeTag, kappas: &[crate::scalar::Rational]) -> DunklContext {
        let rs = RootSystem::build(tag).unwrap();
        DunklContext::new(rs, MultiplicitySpec::rational(kappas)).unwrap()
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        let rule = QuadratureRule::gauss_legendre(16, 0.0, 1.0);
        for k in 0..32 {
            let exact = 1.0 / (k as f64 + 1.0);
            let got = rule.integrate(|x| x.powi(k));
            assert!(
                (got - exact).abs() < 1e-13 * exact.abs(),
                "moment {}: {} vs {}",
                k,
                got,
                exact
            );
        }
    }

    #[test]
    fn trapezoid_handles_trigonometric_polynomials() {
        let rule = QuadratureRule::trapezoid_periodic(64);
        let got = rule.integrate(|t| t.cos() * t.cos());
        assert!((got - PI).abs() < 1e-13);
        assert!(rule.integrate(|t| (3.0 * t).sin()).abs() < 1e-13);
    }

    #[test]
    fn gauss_hermite_like_matches_gaussian_moments() {
        let rule = QuadratureRule::gauss_hermite_like(128, 1.0);
        // integral x^{2k} e^{-x^2/2} = sqrt(2 pi) (2k-1)!!.
        let base = (2.0 * PI).sqrt();
        let mut dfact = 1.0;
        for k in 0..6 {
            if k > 0 {
                dfact *= 2.0 * k as f64 - 1.0;
            }
            let exact = base * dfact;
            let got = rule.integrate(|x| x.powi(2 * k));
            assert!((got - exact).abs() < 1e-12 * exact, "moment {}", k);
        }
    }

    #[test]
    fn graded_circle_rule_integrates_singular_weights() {
        // integral over the circle of |sin t|^{2k} = 2 sqrt(pi) Gamma(k +
        // 1/2) / Gamma(k + 1).
        for &k in &[0.3f64, 0.9, 1.7] {
            let rule = circle_graded_rule(&[0.0, PI], 96);
            let got = rule.integrate(|t| t.sin().abs().powf(2.0 * k));
            let exact = 2.0 * PI.sqrt() * gamma(k + 0.5).unwrap() / gamma(k + 1.0).unwrap();
            assert!(
                (got - exact).abs() < 1e-12 * exact,
                "k = {}: {} vs {}",
                k,
                got,
                exact
            );
        }
    }

    #[test]
    fn gamma_values_and_poles() {
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((gamma(1.0).unwrap() - 1.0).abs() < 1e-14);
        // Legendre duplication at x = 0.7.
        let x = 0.7;
        let lhs = gamma(2.0 * x).unwrap();
        let rhs = 2f64.powf(2.0 * x - 1.0) / PI.sqrt()
            * gamma(x).unwrap()
            * gamma(x + 0.5).unwrap();
        assert!((lhs - rhs).abs() < 1e-13 * lhs);
        assert_eq!(ln_gamma(0.0), Err(Error::GammaPole(0.0)));
        assert_eq!(ln_gamma(-1.0), Err(Error::GammaPole(-1.0)));
    }

    #[test]
    fn mm_constants_reduce_to_one_at_zero_multiplicity() {
        for tag in [TypeTag::A(2), TypeTag::B(2), TypeTag::F4, TypeTag::I2(6)] {
            let expr = mm_expression(&tag).unwrap();
            let v = mm_constant_eval(&expr, &[0.0, 0.0]).unwrap();
            assert!((v - 1.0).abs() < 1e-14, "{:?}: {}", tag, v);
        }
    }

    #[test]
    fn mm_a2_at_unit_multiplicity_is_twelve() {
        let expr = mm_expression(&TypeTag::A(2)).unwrap();
        let v = mm_constant_eval(&expr, &[1.0]).unwrap();
        assert!((v - 12.0).abs() < 1e-11, "{}", v);
        // Independent Gaussian-quadrature oracle: at kappa = 1 the weight is
        // the square of the discriminant, a polynomial, so a tensor rule on
        // the truncated domain is spectrally accurate.
        let rs = RootSystem::build(TypeTag::A(2)).unwrap();
        let roots: Vec<Vec<f64>> = rs
            .positive_roots()
            .map(|v| v.iter().map(rational_to_f64).collect())
            .collect();
        let rule = QuadratureRule::gauss_hermite_like(48, 1.0);
        let mut total = 0.0;
        for (&x1, &w1) in rule.nodes.iter().zip(&rule.weights) {
            for (&x2, &w2) in rule.nodes.iter().zip(&rule.weights) {
                for (&x3, &w3) in rule.nodes.iter().zip(&rule.weights) {
                    let x = [x1, x2, x3];
                    let mut w = 1.0;
                    for v in &roots {
                        let dot: f64 = v.iter().zip(&x).map(|(&a, &b)| a * b).sum();
                        w *= dot * dot;
                    }
                    total += w1 * w2 * w3 * w;
                }
            }
        }
        total /= (2.0 * PI).powf(1.5);
        assert!((total - 12.0).abs() < 1e-8, "{}", total);
    }

    #[test]
    fn mm_b2_matches_the_planar_quadrature() {
        // The B2 record uses the weight prod |x_i|^{2 k1} |x_1^2 -
        // x_2^2|^{2 k0}, which is exactly the root-product weight of the
        // built-in B2 system, so the record must agree with the numeric
        // Gaussian normalization constant.
        for (k0, k1) in [(0.5f64, 0.5f64), (0.3, 0.8)] {
            let expr = mm_expression(&TypeTag::B(2)).unwrap();
            let closed = mm_constant_eval(&expr, &[k0, k1]).unwrap();
            let ctx = ctx_rational(
                TypeTag::B(2),
                &[rat((k0 * 10.0) as i64, 10), rat((k1 * 10.0) as i64, 10)],
            );
            let quad = c_kappa_inv(&ctx).unwrap();
            assert!(
                (closed - quad).abs() < 1e-10 * closed,
                "({}, {}): {} vs {}",
                k0,
                k1,
                closed,
                quad
            );
        }
    }

    #[test]
    fn mm_f4_tie_collapses_to_the_one_class_form() {
        for &k in &[0.3f64, 0.7] {
            let expr = mm_expression(&TypeTag::F4).unwrap();
            let tied = mm_constant_eval(&expr, &[k, k]).unwrap();
            // One-class product over the degrees (2, 6, 8, 12):
            // prod Gamma(1 + n_i kappa) / Gamma(1 + kappa).
            let mut one_class = 1.0;
            for n in [2.0f64, 6.0, 8.0, 12.0] {
                one_class *= gamma(1.0 + n * k).unwrap() / gamma(1.0 + k).unwrap();
            }
            assert!(
                (tied - one_class).abs() < 1e-11 * one_class,
                "k = {}: {} vs {}",
                k,
                tied,
                one_class
            );
        }
    }

    #[test]
    fn mm_i24_matches_b2_up_to_the_stated_conventions() {
        // The dihedral record uses the weight |z^2 - zbar^2|^{2 k0}
        // |z^2 + zbar^2|^{2 k1}. In coordinates |z^2 - zbar^2| = 4 |x1 x2|
        // and |z^2 + zbar^2| = 2 |x1^2 - x2^2|, so relative to the B2 weight
        // (whose k0 sits on |x1^2 - x2^2| and k1 on |x1 x2|) the dihedral
        // record carries the bridge factor 2^{4 k0 + 2 k1} with the two
        // parameters swapped.
        let (k0, k1) = (0.3f64, 0.8f64);
        let dihedral = mm_constant_eval(&mm_expression(&TypeTag::I2(4)).unwrap(), &[k0, k1]).unwrap();
        let b2 = mm_constant_eval(&mm_expression(&TypeTag::B(2)).unwrap(), &[k1, k0]).unwrap();
        let bridge = 2f64.powf(4.0 * k0 + 2.0 * k1);
        assert!(
            (dihedral - bridge * b2).abs() < 1e-11 * dihedral,
            "{} vs {}",
            dihedral,
            bridge * b2
        );
    }

    #[test]
    fn rho_dominates_the_plain_inner_product_and_is_invariant() {
        let rs = RootSystem::build(TypeTag::B(2)).unwrap();
        let x = [0.7, -0.2];
        let y = [0.3, 0.9];
        let r = rho(&rs, &x, &y).unwrap();
        let dot = x[0] * y[0] + x[1] * y[1];
        assert!(r >= dot.abs() - 1e-15);
        // Invariance under the group on either argument.
        for w in rs.generate_group(None).unwrap() {
            let wx = apply_matrix_f64(w.matrix(), &x);
            let rw = rho(&rs, &wx, &y).unwrap();
            assert!((r - rw).abs() < 1e-13);
        }
        // One dimension: rho = |x y|.
        let rs1 = RootSystem::build(TypeTag::Z2(1)).unwrap();
        assert!((rho(&rs1, &[1.5], &[-0.4]).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn kernel_at_zero_second_argument_is_one() {
        let ctx = ctx_rational(TypeTag::B(2), &[rat(1, 4), rat_int(1)]);
        let e = kernel_partial_sum(&ctx, &[0.4, -0.7], &[0.0, 0.0], 1e-12).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.tail_bound, 0.0);
        assert_eq!(e.terms_used, 1);
    }

    #[test]
    fn kernel_at_zero_multiplicity_is_the_exponential() {
        let ctx = ctx_rational(TypeTag::A(2), &[rat_int(0)]);
        let x = [0.3, 0.1, -0.4];
        let y = [0.2, -0.5, 0.3];
        let e = kernel_partial_sum(&ctx, &x, &y, 1e-13).unwrap();
        let dot: f64 = x.iter().zip(&y).map(|(&a, &b)| a * b).sum();
        assert!((e.value - dot.exp()).abs() < 1e-12, "{} vs {}", e.value, dot.exp());
        assert!(e.tail_bound < 1e-13);
    }

    #[test]
    fn kernel_matches_the_one_dimensional_closed_form() {
        let ctx = ctx_rational(TypeTag::Z2(1), &[rat(1, 2)]);
        let series = KernelSeries::new(&ctx).unwrap();
        for &(x, y) in &[(1.0f64, 1.0f64), (0.7, -1.3), (2.0, 0.4)] {
            let e = series.eval(&[x], &[y], 1e-13).unwrap();
            let closed = z2_kernel(0.5, x, y);
            assert!(
                (e.value - closed).abs() < 1e-11 * closed.abs().max(1.0),
                "({}, {}): {} vs {}",
                x,
                y,
                e.value,
                closed
            );
        }
        // Termwise agreement with the two hypergeometric subseries.
        let kappa = 0.5f64;
        let (x, y) = (1.0, 1.0);
        let u: f64 = x * y;
        let mut even_num = 1.0; // (u/2)^{2j} / (j! (kappa + 1/2)_j)
        let mut odd_num = u / (1.0 + 2.0 * kappa);
        for n in 0..=8usize {
            let j = n / 2;
            let expected = if n % 2 == 0 { even_num } else { odd_num };
            let got = series.term_value(n, &[x], &[y]).unwrap();
            assert!(
                (got - expected).abs() < 1e-13 * expected.abs().max(1.0),
                "degree {}: {} vs {}",
                n,
                got,
                expected
            );
            if n % 2 == 1 {
                let jf = j as f64;
                even_num *= (u * u / 4.0) / ((jf + 1.0) * (kappa + 0.5 + jf));
                odd_num *= (u * u / 4.0) / ((jf + 1.0) * (kappa + 1.5 + jf));
            }
        }
    }

    #[test]
    fn kernel_is_symmetric_and_group_invariant() {
        let ctx = ctx_rational(TypeTag::B(2), &[rat(1, 4), rat_int(1)]);
        let series = KernelSeries::new(&ctx).unwrap();
        let x = [0.5, -0.3];
        let y = [0.2, 0.6];
        let a = series.eval(&x, &y, 1e-12).unwrap().value;
        let b = series.eval(&y, &x, 1e-12).unwrap().value;
        assert!((a - b).abs() < 1e-12);
        // J_G is invariant in its first argument.
        let j0 = series.eval_symmetrized(&x, &y, 1e-12).unwrap().value;
        let wx = [-x[1], x[0]];
        let j1 = series.eval_symmetrized(&wx, &y, 1e-12).unwrap().value;
        assert!((j0 - j1).abs() < 1e-11);
    }

    #[test]
    fn kernel_tail_certificate_holds() {
        let ctx = ctx_rational(TypeTag::B(2), &[rat_int(1), rat(1, 2)]);
        let series = KernelSeries::new(&ctx).unwrap();
        for &(x, y) in &[([0.6, -0.2], [0.3, 0.8]), ([1.0, 0.5], [0.9, -0.4])] {
            for terms in [4usize, 6, 8] {
                let a = series.partial(&x, &y, terms).unwrap();
                let b = series.partial(&x, &y, terms + 10).unwrap();
                assert!(
                    (a.value - b.value).abs() <= a.tail_bound,
                    "terms {}: diff {} vs bound {}",
                    terms,
                    (a.value - b.value).abs(),
                    a.tail_bound
                );
            }
        }
    }

    #[test]
    fn kernel_positivity_and_imaginary_bound_smoke() {
        let ctx = ctx_rational(TypeTag::B(2), &[rat_int(1), rat(1, 4)]);
        let series = KernelSeries::new(&ctx).unwrap();
        for &(x, y) in &[([0.6, -0.2], [0.3, 0.8]), ([1.1, 0.4], [-0.5, 0.9])] {
            let real = series.eval(&x, &y, 1e-10).unwrap();
            assert!(real.value > 0.0);
            let imag = series.eval_imaginary(&x, &y, 1e-10).unwrap();
            let modulus = (imag.value * imag.value + imag.value_im * imag.value_im).sqrt();
            assert!(modulus <= 1.0 + 1e-10, "|K(x, iy)| = {}", modulus);
        }
    }

    #[test]
    fn transform_fixes_the_gaussian() {
        let checks = z2_transform_eigencheck(0.5, 0, 0, &[0.5, 1.0, 2.0], 1e-8).unwrap();
        for c in checks {
            assert!(c.err < 1e-8, "y = {}: err {}", c.y, c.err);
            assert!(c.lhs.1.abs() < 1e-10);
        }
    }

    #[test]
    fn transform_eigenvalues_match_the_phase() {
        // n = 1, m = 0: eigenvalue -i.
        for c in z2_transform_eigencheck(1.0, 1, 0, &[0.5, 1.0, 2.0], 1e-6).unwrap() {
            assert!(c.err < 1e-6, "n=1: y = {}, err {}", c.y, c.err);
            assert!(c.rhs.0 == 0.0);
        }
        // n = 0, m = 1: eigenvalue -1.
        for c in z2_transform_eigencheck(0.5, 0, 1, &[0.5, 1.0, 2.0], 1e-6).unwrap() {
            assert!(c.err < 1e-6, "m=1: y = {}, err {}", c.y, c.err);
            assert!(c.rhs.1 == 0.0);
        }
    }

    #[test]
    fn heat_kernel_reduces_to_the_classical_kernel_at_zero_multiplicity() {
        let ctx1 = ctx_rational(TypeTag::Z2(1), &[rat_int(0)]);
        let ctx2 = ctx_rational(TypeTag::Z2(2), &[rat_int(0), rat_int(0)]);
        for &t in &[0.25f64, 1.0] {
            let g = heat_kernel_eval(&ctx1, t, &[0.7], &[-0.4], 1e-14).unwrap();
            let classical = (4.0 * PI * t).powf(-0.5) * (-(0.7f64 + 0.4).powi(2) / (4.0 * t)).exp();
            assert!((g - classical).abs() < 1e-12 * classical, "{} vs {}", g, classical);
            let g2 = heat_kernel_eval(&ctx2, t, &[0.3, -0.2], &[0.5, 0.1], 1e-14).unwrap();
            let d2 = (0.3f64 - 0.5).powi(2) + (-0.2f64 - 0.1).powi(2);
            let c2 = (4.0 * PI * t).powi(-1) * (-d2 / (4.0 * t)).exp();
            assert!((g2 - c2).abs() < 1e-12 * c2);
        }
    }

    #[test]
    fn heat_kernel_is_normalized_and_symmetric() {
        let ctx = ctx_rational(TypeTag::Z2(1), &[rat(1, 2)]);
        for &(t, x) in &[(0.25f64, 0.0f64), (1.0, 0.0), (1.0, 1.0)] {
            // integral of Gamma(t, x, y) |y|^{2 kappa} dy = 1.
            let sigma = (2.0 * t).sqrt();
            let r = gaussian_halfwidth(sigma.max(1.0)) + x.abs();
            let mut rule = graded_panel(512, -r, 0.0);
            let right = graded_panel(512, 0.0, r);
            rule.nodes.extend(right.nodes);
            rule.weights.extend(right.weights);
            let mut total = 0.0;
            for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
                total += w * heat_kernel_eval(&ctx, t, &[x], &[y], 1e-12).unwrap() * y.abs();
            }
            assert!((total - 1.0).abs() < 1e-6, "t = {}, x = {}: {}", t, x, total);
        }
        let a = heat_kernel_eval(&ctx, 0.5, &[0.8], &[-0.3], 1e-12).unwrap();
        let b = heat_kernel_eval(&ctx, 0.5, &[-0.3], &[0.8], 1e-12).unwrap();
        assert!((a - b).abs() < 1e-13 * a.abs());
    }

    #[test]
    fn sphere_constant_matches_the_gamma_expression() {
        // 1 / c_{kappa,S} = 2^{-gamma} Gamma(d/2) / Gamma(gamma + d/2) / c_kappa,
        // with 1 / c_kappa taken from the closed-form record (an independent
        // path: circle quadrature on the left, log-Gamma on the right).
        let ctx = ctx_rational(TypeTag::B(2), &[rat(3, 10), rat(3, 5)]);
        let g = gamma_kappa_float(&ctx).unwrap();
        let left = c_kappa_s_inv(&ctx).unwrap();
        let cinv = mm_constant_eval(&mm_expression(&TypeTag::B(2)).unwrap(), &[0.3, 0.6]).unwrap();
        let right = 2f64.powf(-g) * gamma(1.0).unwrap() / gamma(g + 1.0).unwrap() * cinv;
        assert!((left - right).abs() < 1e-11 * left, "{} vs {}", left, right);
    }

    #[test]
    fn c_kappa_matches_a_tensor_quadrature_at_smooth_weight() {
        // Z2 x Z2 at kappa = 1: the weight x1^2 x2^2 is a polynomial, so the
        // tensor Gaussian rule is an independent high-accuracy oracle.
        let ctx = ctx_rational(TypeTag::Z2(2), &[rat_int(1), rat_int(1)]);
        let polar = c_kappa_inv(&ctx).unwrap();
        let rule = QuadratureRule::gauss_hermite_like(96, 1.0);
        let mut total = 0.0;
        for (&x1, &w1) in rule.nodes.iter().zip(&rule.weights) {
            for (&x2, &w2) in rule.nodes.iter().zip(&rule.weights) {
                total += w1 * w2 * x1 * x1 * x2 * x2;
            }
        }
        total /= 2.0 * PI;
        assert!((polar - total).abs() < 1e-10 * polar, "{} vs {}", polar, total);
    }

    #[test]
    fn sphere_bridge_recovers_the_exact_form_on_harmonics() {
        // For harmonic p of degree n, 2^n (gamma + d/2)_n c_{kappa,S} *
        // integral of p^2 w over the sphere equals the exact kappa form.
        let ctx = ctx_rational(TypeTag::B(2), &[rat(3, 5), rat(4, 5)]);
        let g = gamma_kappa_float(&ctx).unwrap();
        let cs_inv = c_kappa_s_inv(&ctx).unwrap();
        for n in 1u32..=4 {
            let basis = crate::dunkl::harmonic_basis(&ctx, n).unwrap();
            for p in basis.iter().take(2) {
                let avg = circle_average(&ctx, &|theta| {
                    let (s, c) = theta.sin_cos();
                    let v = p.eval_f64(&[c, s], &[]);
                    v * v
                })
                .unwrap();
                let mut poch = 1.0;
                for j in 0..n {
                    poch *= g + 1.0 + j as f64;
                }
                let bridged = 2f64.powi(n as i32) * poch * avg / cs_inv;
                let exact = kappa_form(&ctx, p, p).unwrap().eval_f64(&[]);
                assert!(
                    (bridged - exact).abs() < 1e-8 * exact.abs().max(1.0),
                    "degree {}: {} vs {}",
                    n,
                    bridged,
                    exact
                );
            }
        }
    }

    #[test]
    fn dihedral_circle_average_normalizes_known_weights() {
        // m = 3 at kappa = 1/2: the weight is prod_{k<3} |sin(t - k pi/3)| =
        // |sin 3t| / 4, whose average over the circle is (2/pi)/4.
        let avg = dihedral_circle_average(3, &[0.5], &|_| 1.0).unwrap();
        let exact = 2.0 / PI / 4.0;
        assert!((avg - exact).abs() < 1e-12 * exact, "{} vs {}", avg, exact);
        // Errors: wrong parameter counts.
        assert!(dihedral_circle_average(2, &[0.5], &|_| 1.0).is_err());
        assert_eq!(
            dihedral_circle_average(4, &[0.5], &|_| 1.0),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn symbolic_contexts_are_rejected() {
        let rs = RootSystem::build(TypeTag::B(2)).unwrap();
        let ctx = DunklContext::new(rs, MultiplicitySpec::symbolic(2).unwrap()).unwrap();
        assert!(matches!(
            kernel_partial_sum(&ctx, &[0.1, 0.2], &[0.3, 0.4], 1e-6),
            Err(Error::SymbolicParameterRemaining)
        ));
        assert_eq!(kappa_floats(&ctx), Err(Error::SymbolicParameterRemaining));
    }
}
