//! Named verification suites.
//!
//! Each suite exercises one family of identities end to end and returns a
//! [`SuiteReport`] listing every case it ran together with the failures, if
//! any. The suites are deterministic: randomized cases are derived from a
//! single 64-bit seed through a fixed ChaCha8 stream, so a failing case
//! reproduces on any machine from the same seed.
//!
//! The fourteen suites and their identifiers:
//!
//! | id     | alias             | contents                                              |
//! |--------|-------------------|-------------------------------------------------------|
//! | `ac1`  | `commutativity`   | `[D_i, D_j] p = 0` on random polynomials              |
//! | `ac2`  | `laplacian`       | `Delta = sum D_i^2` and `[Delta, x_t] = 2 D_t`        |
//! | `ac3`  | `form`            | symmetry, invariance, adjointness of the kappa form   |
//! | `ac4`  | `macdonald-mehta` | discriminant norms, exact and by quadrature           |
//! | `ac5`  | `jack`            | nonsymmetric Jack eigen/orthogonality/norm relations  |
//! | `ac6`  | `positivity`      | nonnegativity of rescaled Jack coefficients           |
//! | `ac7`  | `harmonic`        | harmonic decomposition and projector identities       |
//! | `ac8`  | `z2`              | rank-one closed forms from the general machinery      |
//! | `ac9`  | `dihedral`        | planar harmonic bases against circle quadrature       |
//! | `ac10` | `kernel`          | kernel term bounds, positivity, boundedness           |
//! | `ac11` | `transform`       | rank-one transform eigenfunctions                     |
//! | `ac12` | `heat`            | heat kernel normalization and classical reduction     |
//! | `ac13` | `poisson`         | Poisson kernel versus the Gegenbauer generating sum   |
//! | `ac14` | `census`          | group orders and reflection counts versus degrees     |

use std::f64::consts::PI;
use std::rc::Rc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dunkl::{
    discriminant_norm_exact, dunkl_apply, exp_laplacian, harmonic_project, kappa_form,
    kernel_poly, laplacian_apply, mm_discriminant_norm, mm_expression, monomials_of_degree,
    radical_basis, v0_apply, v_apply, DunklContext,
};
use crate::error::{Error, Result};
use crate::harmonics2d::{
    classical_poly, dihedral_harmonics, dihedral_laplacian_eval, ClassicalFamily,
};
use crate::jack::{cherednik_apply, hook_product, zeta, Composition, NSJack};
use crate::numeric::{
    circle_average, dihedral_circle_average, gamma, gamma_kappa_float, heat_kernel_eval,
    mm_constant_eval, z2_transform_eigencheck, HeatKernel, KernelSeries, QuadratureRule,
};
use crate::poly::{ExpVec, Polynomial};
use crate::roots::{MultiplicitySpec, RootSystem, TypeTag};
use crate::scalar::{
    generalized_pochhammer, pochhammer, rat, rat_int, rational_to_f64, Rational, Scalar,
};

/// One failed case inside a suite.
#[derive(Clone, Debug)]
pub struct CaseFailure {
    /// Human-readable description of the inputs.
    pub case: String,
    /// What the identity required.
    pub expected: String,
    /// What was actually computed.
    pub got: String,
}

/// The outcome of one verification suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    /// Canonical suite identifier (`ac1` ... `ac14`).
    pub name: String,
    /// Number of cases run.
    pub cases: usize,
    /// Failing cases; empty on a correct build.
    pub failures: Vec<CaseFailure>,
    /// Wall-clock time in milliseconds.
    pub wall_ms: u128,
}

impl SuiteReport {
    /// Whether every case passed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(identifier, alias)` pairs for all suites, in execution order.
pub const SUITE_NAMES: [(&str, &str); 14] = [
    ("ac1", "commutativity"),
    ("ac2", "laplacian"),
    ("ac3", "form"),
    ("ac4", "macdonald-mehta"),
    ("ac5", "jack"),
    ("ac6", "positivity"),
    ("ac7", "harmonic"),
    ("ac8", "z2"),
    ("ac9", "dihedral"),
    ("ac10", "kernel"),
    ("ac11", "transform"),
    ("ac12", "heat"),
    ("ac13", "poisson"),
    ("ac14", "census"),
];

/// Run a single suite by identifier or alias (case-insensitive).
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let lowered = name.to_ascii_lowercase();
    let idx = SUITE_NAMES
        .iter()
        .position(|(id, alias)| *id == lowered || *alias == lowered)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    match idx {
        0 => suite_commutativity(seed),
        1 => suite_laplacian(seed),
        2 => suite_form(seed),
        3 => suite_macdonald_mehta(),
        4 => suite_jack(),
        5 => suite_positivity(),
        6 => suite_harmonic(seed),
        7 => suite_z2(),
        8 => suite_dihedral(),
        9 => suite_kernel(seed),
        10 => suite_transform(),
        11 => suite_heat(),
        12 => suite_poisson(),
        _ => suite_census(),
    }
}

/// Run every suite in order with the same seed.
pub fn run_all(seed: u64) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|(id, _)| run_suite(id, seed))
        .collect()
}

// ---------------------------------------------------------------------------
// Bookkeeping helpers
// ---------------------------------------------------------------------------

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<CaseFailure>,
    start: Instant,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, case: String, ok: bool, expected: String, got: String) {
        self.cases += 1;
        if !ok {
            self.failures.push(CaseFailure {
                case,
                expected: clip(expected),
                got: clip(got),
            });
        }
    }

    fn check_poly_eq(&mut self, case: String, expected: &Polynomial, got: &Polynomial) {
        let ok = expected == got;
        self.check(case, ok, expected.to_string(), got.to_string());
    }

    fn check_scalar_eq(&mut self, case: String, expected: &Scalar, got: &Scalar) {
        let ok = expected == got;
        self.check(case, ok, expected.to_string(), got.to_string());
    }

    fn check_close(&mut self, case: String, expected: f64, got: f64, rel_tol: f64) {
        let scale = expected.abs().max(1e-300);
        let ok = (got - expected).abs() <= rel_tol * scale;
        self.check(case, ok, format!("{} (rel {})", expected, rel_tol), got.to_string());
    }

    fn check_small(&mut self, case: String, value: f64, bound: f64) {
        let ok = value.abs() <= bound;
        self.check(case, ok, format!("|.| <= {}", bound), value.to_string());
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            wall_ms: self.start.elapsed().as_millis(),
        }
    }
}

fn clip(s: String) -> String {
    if s.len() > 160 {
        format!("{}...", &s[..160])
    } else {
        s
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    (0..d).map(|j| rat_int(i64::from(j == i))).collect()
}

/// A random sparse polynomial with small rational coefficients.
fn random_polynomial(rng: &mut ChaCha8Rng, d: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(d);
    for _ in 0..terms {
        let total = rng.gen_range(0..=max_deg);
        let mut exps = vec![0u32; d];
        let mut left = total;
        for e in exps.iter_mut().take(d - 1) {
            let a = rng.gen_range(0..=left);
            *e = a;
            left -= a;
        }
        exps[d - 1] += left;
        let mut num = rng.gen_range(-9i64..=9);
        if num == 0 {
            num = 1;
        }
        let den = rng.gen_range(1i64..=4);
        p.add_term(ExpVec(exps), Scalar::from_frac(num, den));
    }
    if p.is_zero() {
        p.add_term(ExpVec::var(d, 0), Scalar::one());
    }
    p
}

/// A random dense homogeneous polynomial of exact degree `n`.
fn random_homogeneous(rng: &mut ChaCha8Rng, d: usize, n: u32) -> Polynomial {
    let mut p = Polynomial::zero(d);
    for e in monomials_of_degree(d, n) {
        let num = rng.gen_range(-5i64..=5);
        if num == 0 {
            continue;
        }
        p.add_term(e, Scalar::from_int(num));
    }
    if p.is_zero() {
        p.add_term(ExpVec(monomials_of_degree(d, n)[0].0.clone()), Scalar::one());
    }
    p
}

/// Symbolic context; class assignments are tied modulo two when the system
/// has more than two reflection classes.
fn symbolic_ctx(tag: TypeTag) -> Result<DunklContext> {
    let rs = RootSystem::build(tag)?;
    let nc = rs.num_classes;
    let spec = if nc <= 2 {
        MultiplicitySpec::symbolic(nc)?
    } else {
        let assignment: Vec<usize> = (0..nc).map(|c| c % 2).collect();
        MultiplicitySpec::symbolic_tied(&assignment)?
    };
    DunklContext::new(rs, spec)
}

fn rational_ctx(tag: TypeTag, kappas: &[Rational]) -> Result<DunklContext> {
    DunklContext::new(RootSystem::build(tag)?, MultiplicitySpec::rational(kappas))
}

fn pow_poly(p: &Polynomial, k: u32) -> Polynomial {
    let mut out = Polynomial::one(p.dim());
    for _ in 0..k {
        out = &out * p;
    }
    out
}

fn fact_scalar(n: u32) -> Scalar {
    let mut out = Scalar::one();
    for j in 1..=i64::from(n) {
        out = &out * &Scalar::from_int(j);
    }
    out
}

fn poch_f(a: f64, n: u32) -> f64 {
    (0..n).map(|j| a + f64::from(j)).product()
}

fn fact_f(n: u32) -> f64 {
    poch_f(1.0, n)
}

const COMMUTATIVITY_TAGS: [TypeTag; 7] = [
    TypeTag::A(2),
    TypeTag::A(3),
    TypeTag::B(2),
    TypeTag::B(3),
    TypeTag::D(4),
    TypeTag::Z2(3),
    TypeTag::G2,
];

// ---------------------------------------------------------------------------
// ac1: commutativity
// ---------------------------------------------------------------------------

fn suite_commutativity(seed: u64) -> Result<SuiteReport> {
    let mut s = Suite::new("ac1");
    for (t, tag) in COMMUTATIVITY_TAGS.iter().enumerate() {
        let ctx = symbolic_ctx(tag.clone())?;
        let d = ctx.dim();
        let mut rng = rng_for(seed, 100 + t as u64);
        for case in 0..20 {
            let p = random_polynomial(&mut rng, d, 5, 4);
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            let ei = unit(d, i);
            let ej = unit(d, j);
            let ij = dunkl_apply(&ctx, &ei, &dunkl_apply(&ctx, &ej, &p)?)?;
            let ji = dunkl_apply(&ctx, &ej, &dunkl_apply(&ctx, &ei, &p)?)?;
            let diff = &ij - &ji;
            s.check(
                format!("{}: case {}: [D_{}, D_{}] p", tag, case, i + 1, j + 1),
                diff.is_zero(),
                "0".into(),
                diff.to_string(),
            );
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac2: Laplacian identities
// ---------------------------------------------------------------------------

fn suite_laplacian(seed: u64) -> Result<SuiteReport> {
    let mut s = Suite::new("ac2");
    for (t, tag) in COMMUTATIVITY_TAGS.iter().enumerate() {
        let ctx = symbolic_ctx(tag.clone())?;
        let d = ctx.dim();
        let mut rng = rng_for(seed, 200 + t as u64);
        for case in 0..20 {
            let p = random_polynomial(&mut rng, d, 5, 4);
            let lap = laplacian_apply(&ctx, &p)?;
            let mut sum = Polynomial::zero(d);
            for i in 0..d {
                let e = unit(d, i);
                sum = &sum + &dunkl_apply(&ctx, &e, &dunkl_apply(&ctx, &e, &p)?)?;
            }
            s.check_poly_eq(
                format!("{}: case {}: Delta p = sum D_i^2 p", tag, case),
                &lap,
                &sum,
            );
            let t_idx = rng.gen_range(0..d);
            let xt_p = &Polynomial::var(d, t_idx) * &p;
            let lhs = &laplacian_apply(&ctx, &xt_p)? - &(&Polynomial::var(d, t_idx) * &lap);
            let rhs = dunkl_apply(&ctx, &unit(d, t_idx), &p)?.scale(&Scalar::from_int(2));
            s.check_poly_eq(
                format!("{}: case {}: [Delta, x_{}] p = 2 D_{} p", tag, case, t_idx + 1, t_idx + 1),
                &rhs,
                &lhs,
            );
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac3: kappa-form properties
// ---------------------------------------------------------------------------

fn suite_form(seed: u64) -> Result<SuiteReport> {
    let mut s = Suite::new("ac3");
    for (t, tag) in [TypeTag::A(2), TypeTag::B(2)].into_iter().enumerate() {
        let ctx = symbolic_ctx(tag.clone())?;
        let d = ctx.dim();
        let group = ctx.rs.generate_group(None)?;
        let mut rng = rng_for(seed, 300 + t as u64);
        for case in 0..8 {
            let p = random_polynomial(&mut rng, d, 6, 4);
            let q = random_polynomial(&mut rng, d, 6, 4);
            let f_pq = kappa_form(&ctx, &p, &q)?;
            let f_qp = kappa_form(&ctx, &q, &p)?;
            s.check_scalar_eq(
                format!("{}: case {}: <p, q> = <q, p>", tag, case),
                &f_pq,
                &f_qp,
            );
            let w = &group[rng.gen_range(0..group.len())];
            let wp = p.apply_orthogonal(w.matrix())?;
            let wq = q.apply_orthogonal(w.matrix())?;
            let f_w = kappa_form(&ctx, &wp, &wq)?;
            s.check_scalar_eq(
                format!("{}: case {}: <wp, wq> = <p, q>", tag, case),
                &f_pq,
                &f_w,
            );
            let i = rng.gen_range(0..d);
            let lhs = kappa_form(&ctx, &(&Polynomial::var(d, i) * &p), &q)?;
            let rhs = kappa_form(&ctx, &p, &dunkl_apply(&ctx, &unit(d, i), &q)?)?;
            s.check_scalar_eq(
                format!("{}: case {}: <x_{} p, q> = <p, D_{} q>", tag, case, i + 1, i + 1),
                &lhs,
                &rhs,
            );
            if case < 2 {
                for (a, pa) in p.homogeneous_components() {
                    for (b, qb) in q.homogeneous_components() {
                        if a != b {
                            let f = kappa_form(&ctx, &pa, &qb)?;
                            s.check_scalar_eq(
                                format!(
                                    "{}: case {}: degrees {} vs {} orthogonal",
                                    tag, case, a, b
                                ),
                                &Scalar::zero(),
                                &f,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac4: Macdonald-Mehta discriminant norms
// ---------------------------------------------------------------------------

fn suite_macdonald_mehta() -> Result<SuiteReport> {
    let mut s = Suite::new("ac4");

    // One-class closed form, symbolically, for A2.
    let ctx_a2 = symbolic_ctx(TypeTag::A(2))?;
    let exact = discriminant_norm_exact(&ctx_a2)?;
    let closed = mm_discriminant_norm(&ctx_a2)?;
    s.check_scalar_eq("A2 symbolic: <a_R, a_R> one-class closed form".into(), &closed, &exact);

    // B2 as one class through the I2(4) tie kappa_0 = kappa_1; the closed
    // form uses the degrees (2, 4) and |G| = 8.
    let rs = RootSystem::build(TypeTag::I2(4))?;
    let ctx_tie = DunklContext::new(rs, MultiplicitySpec::symbolic_tied(&[0, 0])?)?;
    let lhs = discriminant_norm_exact(&ctx_tie)?;
    let k = Scalar::param(0);
    let mut expected = Scalar::from_int(8);
    for n in [2u32, 4] {
        for j in 1..n {
            let term = &Scalar::from_int(i64::from(j)) + &(&Scalar::from_int(i64::from(n)) * &k);
            expected = &expected * &term;
        }
    }
    s.check_scalar_eq("I2(4) tie: <a_R, a_R> one-class closed form".into(), &expected, &lhs);

    // Two-class B2 numerically: the exact form against circle quadrature
    // through the radial reduction, and the Gamma-product record against the
    // quadrature Gaussian normalization constant.
    let ctx = rational_ctx(TypeTag::B(2), &[rat(2, 5), rat(7, 10)])?;
    let a_r = ctx.rs.alternating_polynomial();
    let exact_f = rational_to_f64(
        &kappa_form(&ctx, &a_r, &a_r)?
            .to_rational()
            .ok_or(Error::SymbolicParameterRemaining)?,
    );
    let g = gamma_kappa_float(&ctx)?;
    let n = ctx.rs.num_positive() as u32;
    let num = circle_average(&ctx, &|theta| {
        let (sin_t, cos_t) = theta.sin_cos();
        let v = a_r.eval_f64(&[cos_t, sin_t], &[]);
        v * v
    })?;
    let den = circle_average(&ctx, &|_| 1.0)?;
    let quad = 2f64.powi(n as i32) * poch_f(g + 1.0, n) * num / den;
    s.check_close("B2 (2/5, 7/10): <a_R, a_R> by circle quadrature".into(), exact_f, quad, 1e-8);

    let record = mm_constant_eval(&mm_expression(&TypeTag::B(2))?, &[0.4, 0.7])?;
    let cinv = crate::numeric::c_kappa_inv(&ctx)?;
    s.check_close(
        "B2 (2/5, 7/10): Gamma-product record vs Gaussian quadrature".into(),
        record,
        cinv,
        1e-8,
    );
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac5: nonsymmetric Jack relations
// ---------------------------------------------------------------------------

fn swap_exponents(p: &Polynomial, i: usize, j: usize) -> Polynomial {
    let mut out = Polynomial::zero(p.dim());
    for (e, c) in p.iter() {
        let mut exps = e.0.clone();
        exps.swap(i, j);
        out.add_term(ExpVec(exps), c.clone());
    }
    out
}

fn rotate_exponents_left(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.dim());
    for (e, c) in p.iter() {
        let mut exps = e.0.clone();
        exps.rotate_left(1);
        out.add_term(ExpVec(exps), c.clone());
    }
    out
}

fn compositions_up_to(d: usize, max_deg: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    for n in 0..=max_deg {
        for e in monomials_of_degree(d, n) {
            out.push(Composition::new(e.0.clone()));
        }
    }
    out
}

fn suite_jack() -> Result<SuiteReport> {
    let mut s = Suite::new("ac5");
    let ctx = DunklContext::new(
        RootSystem::build(TypeTag::A(2))?,
        MultiplicitySpec::symbolic(1)?,
    )?;
    let d = 3usize;
    let k = Scalar::param(0);
    let t = &(&Scalar::from_int(d as i64) * &k) + &Scalar::one();
    let all = compositions_up_to(d, 4);
    let mut records: Vec<Rc<NSJack>> = Vec::new();
    for alpha in &all {
        records.push(zeta(&ctx, alpha)?);
    }

    for z in &records {
        let label = format!("alpha = {:?}", z.alpha.parts);
        // Eigenrelations.
        for i in 1..=d {
            let applied = cherednik_apply(&ctx, i, &z.poly)?;
            let expected = z.poly.scale(&z.xi.xi[i - 1]);
            s.check_poly_eq(format!("{}: U_{} zeta = xi_{} zeta", label, i, i), &expected, &applied);
        }
        // Closed-form norm and evaluation.
        let gp = generalized_pochhammer(&t, &z.alpha.alpha_plus().parts, &k)?;
        let h1 = hook_product(&z.alpha, &Scalar::one(), &k);
        let hk1 = hook_product(&z.alpha, &(&k + &Scalar::one()), &k);
        let norm_formula = &(&gp * &h1) * &hk1.inverse()?;
        s.check_scalar_eq(format!("{}: norm closed form", label), &norm_formula, &z.norm);
        let eval_formula = &gp * &hk1.inverse()?;
        s.check_scalar_eq(format!("{}: zeta(1,...,1) closed form", label), &eval_formula, &z.eval_ones);
        let mut coeff_sum = Scalar::zero();
        for (_, c) in z.poly.iter() {
            coeff_sum = &coeff_sum + c;
        }
        s.check_scalar_eq(format!("{}: coefficient sum = zeta(1,...,1)", label), &z.eval_ones, &coeff_sum);
    }

    // Orthogonality and norms through the kappa form, within each degree.
    for n in 0..=4u32 {
        let in_degree: Vec<&Rc<NSJack>> = records
            .iter()
            .filter(|z| z.alpha.degree() == n)
            .collect();
        for (a, za) in in_degree.iter().enumerate() {
            for zb in in_degree.iter().skip(a) {
                let f = kappa_form(&ctx, &za.poly, &zb.poly)?;
                let expected = if za.alpha.parts == zb.alpha.parts {
                    za.norm.clone()
                } else {
                    Scalar::zero()
                };
                s.check_scalar_eq(
                    format!(
                        "<zeta_{:?}, zeta_{:?}> closed form",
                        za.alpha.parts, zb.alpha.parts
                    ),
                    &expected,
                    &f,
                );
            }
        }
    }

    // Exchange relation at ascents: s_i zeta_alpha = c zeta_alpha +
    // zeta_{alpha s_i} with c = kappa / (xi_i - xi_{i+1}).
    for z in &records {
        for i in 0..d - 1 {
            if z.alpha.parts[i] >= z.alpha.parts[i + 1] {
                continue;
            }
            let den = &z.xi.xi[i] - &z.xi.xi[i + 1];
            let c = &k * &den.inverse()?;
            let mut swapped = z.alpha.parts.clone();
            swapped.swap(i, i + 1);
            let zs = zeta(&ctx, &Composition::new(swapped))?;
            let lhs = swap_exponents(&z.poly, i, i + 1);
            let rhs = &zs.poly + &z.poly.scale(&c);
            s.check_poly_eq(
                format!("alpha = {:?}: exchange at i = {}", z.alpha.parts, i + 1),
                &rhs,
                &lhs,
            );
        }
    }

    // Raising relation: with phi(beta) = (beta_2, ..., beta_d, beta_1 + 1),
    // zeta_{phi(beta)} = x_d * theta_d^{-1} zeta_beta.
    for beta in compositions_up_to(d, 3) {
        let zb = zeta(&ctx, &beta)?;
        let mut alpha_parts: Vec<u32> = beta.parts[1..].to_vec();
        alpha_parts.push(beta.parts[0] + 1);
        let za = zeta(&ctx, &Composition::new(alpha_parts.clone()))?;
        let rhs = &Polynomial::var(d, d - 1) * &rotate_exponents_left(&zb.poly);
        s.check_poly_eq(
            format!("beta = {:?}: raising to {:?}", beta.parts, alpha_parts),
            &za.poly,
            &rhs,
        );
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac6: coefficient positivity
// ---------------------------------------------------------------------------

fn suite_positivity() -> Result<SuiteReport> {
    let mut s = Suite::new("ac6");
    let ctx = DunklContext::new(
        RootSystem::build(TypeTag::A(2))?,
        MultiplicitySpec::symbolic(1)?,
    )?;
    let k = Scalar::param(0);
    let zero = rat_int(0);
    for alpha in compositions_up_to(3, 4) {
        let z = zeta(&ctx, &alpha)?;
        let h = hook_product(&alpha, &(&k + &Scalar::one()), &k);
        let rescaled = z.poly.scale(&h);
        let mut ok = true;
        let mut witness = String::new();
        for (e, c) in rescaled.iter() {
            if !c.denom().is_constant() {
                ok = false;
                witness = format!("x^{:?}: non-constant denominator {}", e.0, c);
                break;
            }
            if c.numer().iter().any(|(_, r)| *r < zero) {
                ok = false;
                witness = format!("x^{:?}: negative coefficient in {}", e.0, c);
                break;
            }
        }
        s.check(
            format!("alpha = {:?}: h(alpha, kappa + 1) zeta_alpha", alpha.parts),
            ok,
            "polynomial in kappa with nonnegative coefficients".into(),
            witness,
        );
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac7: harmonic decomposition
// ---------------------------------------------------------------------------

fn suite_harmonic(seed: u64) -> Result<SuiteReport> {
    let mut s = Suite::new("ac7");
    for (t, tag) in [TypeTag::Z2(2), TypeTag::B(3)].into_iter().enumerate() {
        let ctx = symbolic_ctx(tag.clone())?;
        let d = ctx.dim();
        let mut r2 = Polynomial::zero(d);
        for i in 0..d {
            r2 = &r2 + &(&Polynomial::var(d, i) * &Polynomial::var(d, i));
        }
        let base_shift = &ctx.gamma + &Scalar::from_frac(d as i64, 2);
        let mut rng = rng_for(seed, 700 + t as u64);
        for n in 1..=5u32 {
            let p = random_homogeneous(&mut rng, d, n);
            let mut sum = Polynomial::zero(d);
            let mut lap = p.clone();
            for j in 0..=n / 2 {
                let deg = n - 2 * j;
                let proj = harmonic_project(&ctx, &lap)?;
                let residual = laplacian_apply(&ctx, &proj)?;
                s.check(
                    format!("{}: n = {}, j = {}: Delta pi p = 0", tag, n, j),
                    residual.is_zero(),
                    "0".into(),
                    residual.to_string(),
                );
                let base = &base_shift + &Scalar::from_int(i64::from(deg));
                let mut den = &fact_scalar(j) * &pochhammer(&base, j);
                den = &den * &Scalar::from_int(4i64.pow(j));
                sum = &sum + &(&pow_poly(&r2, j) * &proj).scale(&den.inverse()?);
                if deg >= 2 {
                    lap = laplacian_apply(&ctx, &lap)?;
                }
            }
            s.check_poly_eq(format!("{}: n = {}: reconstruction", tag, n), &p, &sum);
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac8: rank-one closed forms
// ---------------------------------------------------------------------------

fn suite_z2() -> Result<SuiteReport> {
    let mut s = Suite::new("ac8");
    let ctx = DunklContext::new(
        RootSystem::build(TypeTag::Z2(1))?,
        MultiplicitySpec::symbolic(1)?,
    )?;
    let k = Scalar::param(0);
    let half = Scalar::from_frac(1, 2);
    let k_half = &k + &half;

    for n in 0..=8u32 {
        // Norms of monomials.
        let even = Polynomial::monomial(1, &[2 * n], Scalar::one());
        let got = kappa_form(&ctx, &even, &even)?;
        let expected = &(&Scalar::from_int(4i64.pow(n)) * &fact_scalar(n)) * &pochhammer(&k_half, n);
        s.check_scalar_eq(format!("<x^{}, x^{}>", 2 * n, 2 * n), &expected, &got);
        let odd = Polynomial::monomial(1, &[2 * n + 1], Scalar::one());
        let got = kappa_form(&ctx, &odd, &odd)?;
        let expected = &(&Scalar::from_int(2 * 4i64.pow(n)) * &fact_scalar(n))
            * &pochhammer(&k_half, n + 1);
        s.check_scalar_eq(format!("<x^{}, x^{}>", 2 * n + 1, 2 * n + 1), &expected, &got);

        // V0 diagonal.
        let got = v0_apply(&ctx, &even)?;
        let coeff = &pochhammer(&k_half, n) * &pochhammer(&half, n).inverse()?;
        s.check_poly_eq(
            format!("V0 x^{}", 2 * n),
            &even.scale(&coeff),
            &got,
        );
        let got = v0_apply(&ctx, &odd)?;
        let coeff = &pochhammer(&k_half, n + 1) * &pochhammer(&half, n + 1).inverse()?;
        s.check_poly_eq(
            format!("V0 x^{}", 2 * n + 1),
            &odd.scale(&coeff),
            &got,
        );
    }

    // exp(-Delta/2) maps monomials to Laguerre polynomials of x^2/2.
    let minus_half = Scalar::from_frac(-1, 2);
    for n in 0..=8u32 {
        for parity in 0..=1u32 {
            let deg = 2 * n + parity;
            if deg > 17 {
                continue;
            }
            let mono = Polynomial::monomial(1, &[deg], Scalar::one());
            let got = exp_laplacian(&ctx, &minus_half, &mono)?;
            let alpha = if parity == 0 { &k - &half } else { &k + &half };
            let lag = classical_poly(ClassicalFamily::Laguerre, n, &[alpha])?;
            let mut expected = Polynomial::zero(1);
            for (j, c) in lag.coeffs.iter().enumerate() {
                let j = j as u32;
                let scaled = c * &Scalar::from_frac(1, 2i64.pow(j));
                expected.add_term(ExpVec(vec![2 * j + parity]), scaled);
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let front = &Scalar::from_int(sign * 2i64.pow(n)) * &fact_scalar(n);
            s.check_poly_eq(
                format!("exp(-Delta/2) x^{}", deg),
                &expected.scale(&front),
                &got,
            );
        }
    }

    // Kernel coefficients.
    for deg in 0..=17u32 {
        let got = kernel_poly(&ctx, deg)?;
        let j = deg / 2;
        let base = &(&Scalar::from_int(4i64.pow(j)) * &fact_scalar(j))
            * &pochhammer(&(&k + &Scalar::from_frac(if deg % 2 == 0 { 1 } else { 3 }, 2)), j);
        let denom = if deg % 2 == 0 {
            base
        } else {
            &base * &(&(&Scalar::from_int(2) * &k) + &Scalar::one())
        };
        let expected = Polynomial::monomial(2, &[deg, deg], denom.inverse()?);
        s.check_poly_eq(format!("kernel coefficient at degree {}", deg), &expected, &got);
    }

    // Radical slices at the singular parameters kappa = -1/2 - n0.
    let ctx_sing0 = rational_ctx(TypeTag::Z2(1), &[rat(-1, 2)])?;
    let ctx_sing1 = rational_ctx(TypeTag::Z2(1), &[rat(-3, 2)])?;
    for n in 1..=6u32 {
        let basis = radical_basis(&ctx_sing0, n)?;
        let ok = basis.len() == 1 && basis[0].num_terms() == 1 && basis[0].total_degree() == n;
        s.check(
            format!("kappa = -1/2: radical slice at degree {}", n),
            ok,
            format!("span{{x^{}}}", n),
            format!("{} basis elements", basis.len()),
        );
        let basis = radical_basis(&ctx_sing1, n)?;
        let expected_dim = usize::from(n >= 3);
        let ok = basis.len() == expected_dim
            && (expected_dim == 0
                || (basis[0].num_terms() == 1 && basis[0].total_degree() == n));
        s.check(
            format!("kappa = -3/2: radical slice at degree {}", n),
            ok,
            format!("dimension {}", expected_dim),
            format!("{} basis elements", basis.len()),
        );
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac9: dihedral harmonic bases
// ---------------------------------------------------------------------------

/// Norm of `P_n^{(a, b)}(cos 2 theta)` in
/// `L^2([-pi, pi], |sin theta|^{2a+1} |cos theta|^{2b+1} d theta)`,
/// from the standard Jacobi norm by the substitution `t = cos 2 theta`.
fn jacobi_circle_norm(n: u32, a: f64, b: f64) -> Result<f64> {
    Ok(2.0 * gamma(a + 1.0)? * gamma(b + 1.0)? / gamma(a + b + 2.0)?
        * (poch_f(a + 1.0, n) * poch_f(b + 1.0, n) * (a + b + f64::from(n) + 1.0))
        / (fact_f(n) * poch_f(a + b + 2.0, n) * (a + b + 2.0 * f64::from(n) + 1.0)))
}

fn suite_dihedral() -> Result<SuiteReport> {
    let mut s = Suite::new("ac9");
    struct Config {
        m: usize,
        kappas_f: Vec<f64>,
        kappas_s: Vec<Scalar>,
    }
    let configs = [
        Config {
            m: 3,
            kappas_f: vec![0.7],
            kappas_s: vec![Scalar::from_frac(7, 10)],
        },
        Config {
            m: 5,
            kappas_f: vec![0.7],
            kappas_s: vec![Scalar::from_frac(7, 10)],
        },
        Config {
            m: 4,
            kappas_f: vec![0.4, 0.9],
            kappas_s: vec![Scalar::from_frac(2, 5), Scalar::from_frac(9, 10)],
        },
        Config {
            m: 6,
            kappas_f: vec![0.4, 0.9],
            kappas_s: vec![Scalar::from_frac(2, 5), Scalar::from_frac(9, 10)],
        },
    ];
    // Points chosen away from every mirror line of m = 3, 4, 5, 6.
    let points = [
        [0.9 * 13f64.to_radians().cos(), 0.9 * 13f64.to_radians().sin()],
        [0.8 * 101f64.to_radians().cos(), 0.8 * 101f64.to_radians().sin()],
        [1.1 * 197f64.to_radians().cos(), 1.1 * 197f64.to_radians().sin()],
    ];
    for cfg in &configs {
        let fam = dihedral_harmonics(cfg.m, 6, &cfg.kappas_s)?;
        let entries: Vec<(&(u32, String), &Polynomial)> = fam.entries.iter().collect();

        // Harmonicity.
        for (key, p) in &entries {
            if key.0 < 2 {
                continue;
            }
            let scale = p.coeff_scale_f64(&[]).max(1.0);
            for (pi, x) in points.iter().enumerate() {
                let res = dihedral_laplacian_eval(cfg.m, &cfg.kappas_f, p, &[], *x);
                s.check_small(
                    format!(
                        "I2({}): Delta of degree {} '{}' at point {}",
                        cfg.m, key.0, key.1, pi
                    ),
                    res / scale,
                    1e-10,
                );
            }
        }

        // Gram matrix by circle quadrature.
        let mut gram = vec![vec![0.0; entries.len()]; entries.len()];
        for i in 0..entries.len() {
            for j in i..entries.len() {
                let (pi, pj) = (entries[i].1, entries[j].1);
                let val = dihedral_circle_average(cfg.m, &cfg.kappas_f, &|theta| {
                    let (sin_t, cos_t) = theta.sin_cos();
                    pi.eval_f64(&[cos_t, sin_t], &[]) * pj.eval_f64(&[cos_t, sin_t], &[])
                })?;
                gram[i][j] = val;
                gram[j][i] = val;
            }
        }
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let bound = 1e-10 * (gram[i][i] * gram[j][j]).sqrt();
                s.check_small(
                    format!(
                        "I2({}): <deg {} '{}', deg {} '{}'>",
                        cfg.m, entries[i].0 .0, entries[i].0 .1, entries[j].0 .0, entries[j].0 .1
                    ),
                    gram[i][j],
                    bound,
                );
            }
        }

        // Diagonal entries at degrees n * (m or m/2) against the closed-form
        // norms of the base families.
        if cfg.m % 2 == 1 {
            let k = cfg.kappas_f[0];
            let a_k = gamma(k + 1.0)? / (2.0 * PI.sqrt() * gamma(k + 0.5)?);
            let bridge = 4f64.powf(-((cfg.m - 1) as f64) * k);
            for n in 1..=(6 / cfg.m as u32) {
                let deg = n * cfg.m as u32;
                let h0 = k * poch_f(2.0 * k, n) / ((f64::from(n) + k) * fact_f(n));
                let h1 = (k + 0.5) * poch_f(2.0 * k + 2.0, n - 1)
                    / ((f64::from(n) + k) * fact_f(n - 1));
                for (tag, h) in [("0", h0), ("1", h1)] {
                    let idx = entries
                        .iter()
                        .position(|(key, _)| key.0 == deg && key.1 == tag)
                        .ok_or_else(|| Error::UnknownSuite(format!("missing entry {}", tag)))?;
                    let expected = bridge * h / (2.0 * PI * a_k);
                    s.check_close(
                        format!("I2({}): norm of degree {} '{}'", cfg.m, deg, tag),
                        expected,
                        gram[idx][idx],
                        1e-8,
                    );
                }
            }
        } else {
            let (k1, k2) = (cfg.kappas_f[0], cfg.kappas_f[1]);
            let mp = cfg.m / 2;
            let bridge = 4f64.powf(-((mp - 1) as f64) * (k1 + k2));
            for n in 1..=(6 / mp as u32) {
                let deg = n * mp as u32;
                let (exp_re, exp_im) = if n % 2 == 0 {
                    let sdx = n / 2;
                    (
                        jacobi_circle_norm(sdx, k2 - 0.5, k1 - 0.5)?,
                        jacobi_circle_norm(sdx - 1, k2 + 0.5, k1 + 0.5)?,
                    )
                } else {
                    let sdx = (n - 1) / 2;
                    let sf = f64::from(sdx);
                    (
                        (sf + k2 + 0.5).powi(2) * jacobi_circle_norm(sdx, k2 - 0.5, k1 + 0.5)?,
                        (sf + k1 + 0.5).powi(2) * jacobi_circle_norm(sdx, k2 + 0.5, k1 - 0.5)?,
                    )
                };
                for (tag, expected) in [("re", exp_re), ("im", exp_im)] {
                    let idx = entries
                        .iter()
                        .position(|(key, _)| key.0 == deg && key.1 == tag)
                        .ok_or_else(|| Error::UnknownSuite(format!("missing entry {}", tag)))?;
                    s.check_close(
                        format!("I2({}): norm of degree {} '{}'", cfg.m, deg, tag),
                        bridge * expected / (2.0 * PI),
                        gram[idx][idx],
                        1e-8,
                    );
                }
            }
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac10: kernel bounds and positivity
// ---------------------------------------------------------------------------

fn suite_kernel(seed: u64) -> Result<SuiteReport> {
    let mut s = Suite::new("ac10");
    let tags = [TypeTag::Z2(1), TypeTag::A(2), TypeTag::B(2)];
    for (t, tag) in tags.iter().enumerate() {
        let rs_probe = RootSystem::build(tag.clone())?;
        let nc = rs_probe.num_classes;
        for (kv_idx, kv) in [rat(1, 4), rat_int(1), rat(5, 2)].into_iter().enumerate() {
            let kappas: Vec<Rational> = vec![kv; nc];
            let ctx = rational_ctx(tag.clone(), &kappas)?;
            let series = KernelSeries::new(&ctx)?;
            let d = ctx.dim();
            let mut rng = rng_for(seed, 1000 + 10 * t as u64 + kv_idx as u64);
            for pt in 0..100 {
                let x: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
                let y: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
                let rho = series.rho(&x, &y);
                let mut worst: f64 = 0.0;
                for n in 0..=12usize {
                    let term = series.term_value(n, &x, &y)?;
                    let bound = rho.powi(n as i32) / fact_f(n as u32);
                    let excess = term.abs() - bound * (1.0 + 1e-9) - 1e-15;
                    worst = worst.max(excess);
                }
                s.check(
                    format!("{} kappa index {}: point {}: |K_n| <= rho^n / n!", tag, kv_idx, pt),
                    worst <= 0.0,
                    "all terms within the bound".into(),
                    format!("excess {}", worst),
                );
                let val = series.eval(&x, &y, 1e-8)?;
                s.check(
                    format!("{} kappa index {}: point {}: K > 0", tag, kv_idx, pt),
                    val.value > 0.0,
                    "positive".into(),
                    val.value.to_string(),
                );
                let im = series.eval_imaginary(&x, &y, 1e-8)?;
                let modulus = im.value.hypot(im.value_im);
                s.check(
                    format!("{} kappa index {}: point {}: |K(x, iy)| <= 1", tag, kv_idx, pt),
                    modulus <= 1.0 + 1e-8,
                    "<= 1".into(),
                    modulus.to_string(),
                );
            }
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac11: transform eigenfunctions
// ---------------------------------------------------------------------------

fn suite_transform() -> Result<SuiteReport> {
    let mut s = Suite::new("ac11");
    let ys = [0.5, 1.0, 2.0];
    for n in 0..=1u32 {
        let mut m = 0u32;
        while n + 2 * m <= 6 {
            let checks = z2_transform_eigencheck(1.0, n, m, &ys, 1e-6)?;
            for c in checks {
                s.check(
                    format!("n = {}, m = {}, y = {}: transform eigenfunction", n, m, c.y),
                    c.within_tol,
                    format!("({}, {}) within 1e-6", c.rhs.0, c.rhs.1),
                    format!("({}, {}), err {}", c.lhs.0, c.lhs.1, c.err),
                );
            }
            m += 1;
        }
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac12: heat kernel
// ---------------------------------------------------------------------------

fn suite_heat() -> Result<SuiteReport> {
    let mut s = Suite::new("ac12");
    let ctx = rational_ctx(TypeTag::Z2(1), &[rat(1, 2)])?;
    let heat = HeatKernel::new(&ctx)?;
    for &t in &[0.25f64, 1.0] {
        for &x in &[0.0f64, 1.0] {
            // integral of Gamma(t, x, y) |y| dy = 1. The integrand is smooth
            // on each half-line, so two plain Gauss-Legendre panels suffice.
            let r = x.abs() + 9.0 * (2.0 * t).sqrt().max(1.0);
            let mut total = 0.0;
            for rule in [
                QuadratureRule::gauss_legendre(400, -r, 0.0),
                QuadratureRule::gauss_legendre(400, 0.0, r),
            ] {
                total += rule.integrate(|y| {
                    heat.eval(t, &[x], &[y], 1e-12).unwrap_or(f64::NAN) * y.abs()
                });
            }
            s.check_close(
                format!("kappa = 1/2: normalization at t = {}, x = {}", t, x),
                1.0,
                total,
                1e-6,
            );
        }
    }

    // kappa = 0 reduction to the classical heat kernel.
    let ctx1 = rational_ctx(TypeTag::Z2(1), &[rat_int(0)])?;
    let ctx2 = rational_ctx(TypeTag::Z2(2), &[rat_int(0), rat_int(0)])?;
    for &t in &[0.25f64, 1.0] {
        let got = heat_kernel_eval(&ctx1, t, &[0.7], &[-0.4], 1e-14)?;
        let classical = (4.0 * PI * t).powf(-0.5) * (-(0.7f64 + 0.4).powi(2) / (4.0 * t)).exp();
        s.check_close(format!("d = 1, t = {}: classical reduction", t), classical, got, 1e-12);
        let got = heat_kernel_eval(&ctx2, t, &[0.3, -0.2], &[0.5, 0.1], 1e-14)?;
        let d2 = (0.3f64 - 0.5).powi(2) + (-0.2f64 - 0.1).powi(2);
        let classical = (4.0 * PI * t).powi(-1) * (-d2 / (4.0 * t)).exp();
        s.check_close(format!("d = 2, t = {}: classical reduction", t), classical, got, 1e-12);
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac13: Poisson kernel versus the Gegenbauer generating identity
// ---------------------------------------------------------------------------

/// Apply the intertwining operator in the `x` block (the first `d` of `2d`
/// variables), leaving the `y` block untouched.
fn v_apply_x_block(ctx: &DunklContext, p: &Polynomial) -> Result<Polynomial> {
    use std::collections::BTreeMap;
    let d = ctx.dim();
    let mut groups: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (e, c) in p.iter() {
        let xe = e.0[..d].to_vec();
        let ye = e.0[d..].to_vec();
        groups
            .entry(ye)
            .or_insert_with(|| Polynomial::zero(d))
            .add_term(ExpVec(xe), c.clone());
    }
    let mut out = Polynomial::zero(2 * d);
    for (ye, xp) in groups {
        let v = v_apply(ctx, &xp)?;
        for (xe, c) in v.iter() {
            let mut full = xe.0.clone();
            full.extend_from_slice(&ye);
            out.add_term(ExpVec(full), c.clone());
        }
    }
    Ok(out)
}

fn suite_poisson() -> Result<SuiteReport> {
    let mut s = Suite::new("ac13");
    // Z2 acting on the plane by the sign change of x_2, symbolic kappa.
    let rs = RootSystem::custom(vec![
        vec![rat_int(0), rat_int(1)],
        vec![rat_int(0), rat_int(-1)],
    ])?;
    let ctx = DunklContext::new(rs, MultiplicitySpec::symbolic(1)?)?;
    let d = 2usize;
    let k = Scalar::param(0);

    // Bilinear building blocks in the doubled variable set.
    let mut dot = Polynomial::zero(2 * d);
    let mut y2 = Polynomial::zero(2 * d);
    for i in 0..d {
        dot = &dot + &(&Polynomial::var(2 * d, i) * &Polynomial::var(2 * d, d + i));
        y2 = &y2 + &(&Polynomial::var(2 * d, d + i) * &Polynomial::var(2 * d, d + i));
    }

    // The restricted-sphere (|x| = 1) identity: V applied in x to
    // (n + alpha)/alpha * C_n^alpha(<x, y/|y|>) |y|^n with alpha = kappa,
    // against the kernel-term expansion whose radial factors carry |y|^{2j}
    // only.
    for n in 1..=4u32 {
        let geg = classical_poly(ClassicalFamily::Gegenbauer, n, std::slice::from_ref(&k))?;
        let mut lhs_arg = Polynomial::zero(2 * d);
        for (j, c) in geg.coeffs.iter().enumerate() {
            let j = j as u32;
            if c.is_zero() || !(n - j).is_multiple_of(2) {
                continue;
            }
            let term = &pow_poly(&dot, j) * &pow_poly(&y2, (n - j) / 2);
            lhs_arg = &lhs_arg + &term.scale(c);
        }
        let front = &(&Scalar::from_int(i64::from(n)) + &k) * &k.inverse()?;
        let lhs = v_apply_x_block(&ctx, &lhs_arg.scale(&front))?;

        // 2^n (gamma + d/2)_n with gamma = kappa and d = 2.
        let mut outer = Scalar::one();
        for m in 0..n {
            let factor = &(&k + &Scalar::one()) + &Scalar::from_int(i64::from(m));
            outer = &(&outer * &Scalar::from_int(2)) * &factor;
        }
        let mut rhs = Polynomial::zero(2 * d);
        for j in 0..=(n / 2) {
            // 4^j j! (-gamma - n + 2 - d/2)_j.
            let mut den = Scalar::one();
            for m in 0..j {
                den = &den * &Scalar::from_int(4 * i64::from(m + 1));
                let shift = &Scalar::from_int(i64::from(m) + 1 - i64::from(n)) - &k;
                den = &den * &shift;
            }
            let term = &pow_poly(&y2, j) * &kernel_poly(&ctx, n - 2 * j)?;
            rhs = &rhs + &term.scale(&den.inverse()?);
        }
        rhs = rhs.scale(&outer);
        s.check_poly_eq(format!("degree {}: Poisson kernel identity", n), &rhs, &lhs);
    }
    Ok(s.finish())
}

// ---------------------------------------------------------------------------
// ac14: group census
// ---------------------------------------------------------------------------

fn suite_census() -> Result<SuiteReport> {
    let mut s = Suite::new("ac14");
    let tags = [
        TypeTag::A(1),
        TypeTag::A(2),
        TypeTag::A(3),
        TypeTag::A(4),
        TypeTag::B(2),
        TypeTag::B(3),
        TypeTag::B(4),
        TypeTag::D(4),
        TypeTag::G2,
        TypeTag::F4,
    ];
    for tag in tags {
        let rs = RootSystem::build(tag.clone())?;
        let degrees = crate::roots::table_degrees(&tag)
            .ok_or_else(|| Error::UnsupportedType(tag.to_string()))?;
        let product: u128 = degrees.iter().map(|&n| u128::from(n)).product();
        let group = rs.generate_group(None)?;
        s.check(
            format!("{}: |W| = product of degrees", tag),
            group.len() as u128 == product && rs.order() == Some(product),
            product.to_string(),
            format!("{} (order() = {:?})", group.len(), rs.order()),
        );
        let reflections: u32 = degrees.iter().map(|&n| n - 1).sum();
        s.check(
            format!("{}: reflection count = sum of (n_i - 1)", tag),
            rs.num_positive() as u32 == reflections,
            reflections.to_string(),
            rs.num_positive().to_string(),
        );
    }
    Ok(s.finish())
}
