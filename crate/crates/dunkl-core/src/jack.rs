//! Nonsymmetric Jack polynomials for the symmetric group.
//!
//! The symmetric group `S_d` acts on `R^d` by permuting coordinates; the
//! associated rational Cherednik algebra carries a commuting family of
//! self-adjoint Cherednik–Dunkl operators `U_i = D_i x_i - kappa sum_{j<i}
//! (i,j)` whose joint eigenfunctions — normalized to be monic and triangular
//! with respect to a dominance-type order on compositions — are the
//! nonsymmetric Jack polynomials `zeta_alpha`.
//!
//! This module provides:
//!
//! * the combinatorics: [`Composition`], the rank function, and the dominance
//!   orders on compositions;
//! * [`cherednik_apply`] (the operators `U_i`) and [`spectral_vector`] (their
//!   joint eigenvalues `xi_i(alpha)`);
//! * [`zeta`], computing `zeta_alpha` by a memoized recursion built from two
//!   exact steps — an exchange step across an adjacent transposition and a
//!   degree-raising step `x_d theta_d^{-1}`;
//! * hook-length products and the closed forms for the norm
//!   `<zeta_alpha, zeta_alpha>_kappa` and the evaluation `zeta_alpha(1,...,1)`;
//! * [`d_m_zeta_check`], verifying the closed form for `D_m zeta_alpha`;
//! * [`symmetric_jack`], the symmetrized (classical) Jack polynomials
//!   `j_lambda` with their norms.
//!
//! All computation is exact over `Q(kappa)`; rational specializations are
//! obtained either directly or by substitution into memoized symbolic results.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::dunkl::{dunkl_apply, DunklContext};
use crate::error::{Error, Result};
use crate::poly::{ExpVec, Polynomial};
use crate::roots::{KappaMode, TypeTag};
use crate::scalar::{generalized_pochhammer, rat_int, Scalar};

/// An exponent vector `alpha` in `N_0^d`, the label of a nonsymmetric Jack
/// polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    /// The parts `alpha_1, ..., alpha_d`.
    pub parts: Vec<u32>,
}

impl Composition {
    /// Wrap a part list.
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    /// Number of parts `d` (the ambient dimension).
    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    /// The degree `|alpha| = sum_i alpha_i`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Whether the parts are weakly decreasing.
    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// The unique partition obtained by sorting the parts.
    pub fn alpha_plus(&self) -> Composition {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Composition { parts: p }
    }

    /// The length `l(alpha) = max{ j : alpha_j > 0 }` (0 for the zero
    /// composition).
    pub fn length(&self) -> usize {
        self.parts
            .iter()
            .rposition(|&a| a > 0)
            .map_or(0, |j| j + 1)
    }

    /// The reversal `(alpha_d, ..., alpha_1)`.
    pub fn reversed(&self) -> Composition {
        let mut p = self.parts.clone();
        p.reverse();
        Composition { parts: p }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, ")")
    }
}

/// The rank function `w_alpha`: `w_alpha(i) = #{j : alpha_j > alpha_i} +
/// #{j <= i : alpha_j = alpha_i}`, a permutation of `{1, ..., d}` with
/// `alpha . w_alpha^{-1} = alpha^+`.
///
/// Returned as the vector `[w_alpha(1), ..., w_alpha(d)]` with 1-based values.
pub fn rank_function(alpha: &Composition) -> Vec<usize> {
    let a = &alpha.parts;
    (0..a.len())
        .map(|i| {
            a.iter().filter(|&&x| x > a[i]).count()
                + a[..=i].iter().filter(|&&x| x == a[i]).count()
        })
        .collect()
}

/// Outcome of comparing two compositions in a partial order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DominanceResult {
    /// The first argument strictly dominates the second.
    Greater,
    /// The second argument strictly dominates the first.
    Less,
    /// The arguments are equal.
    Equal,
    /// Neither dominates the other.
    Incomparable,
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    // a > b in the dominance order: a != b and all partial sums of a are >=.
    if a == b {
        return false;
    }
    let (mut sa, mut sb) = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b.iter()) {
        sa += u64::from(x);
        sb += u64::from(y);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Compare two compositions in the dominance order: `alpha` dominates `beta`
/// when `alpha != beta` and every initial partial sum of `alpha` is at least
/// the corresponding partial sum of `beta`.
pub fn dominance_compare(alpha: &Composition, beta: &Composition) -> Result<DominanceResult> {
    if alpha.dim() != beta.dim() {
        return Err(Error::LengthMismatch(alpha.dim(), beta.dim()));
    }
    if alpha == beta {
        Ok(DominanceResult::Equal)
    } else if dominates(&alpha.parts, &beta.parts) {
        Ok(DominanceResult::Greater)
    } else if dominates(&beta.parts, &alpha.parts) {
        Ok(DominanceResult::Less)
    } else {
        Ok(DominanceResult::Incomparable)
    }
}

/// Compare two compositions in the triangularity order used for the Jack
/// basis: `alpha` is greater than `beta` when `|alpha| = |beta|` and either
/// `alpha^+` strictly dominates `beta^+`, or `alpha^+ = beta^+` and `alpha`
/// strictly dominates `beta`.
pub fn triangular_compare(alpha: &Composition, beta: &Composition) -> Result<DominanceResult> {
    if alpha.dim() != beta.dim() {
        return Err(Error::LengthMismatch(alpha.dim(), beta.dim()));
    }
    if alpha == beta {
        return Ok(DominanceResult::Equal);
    }
    if alpha.degree() != beta.degree() {
        return Ok(DominanceResult::Incomparable);
    }
    let (ap, bp) = (alpha.alpha_plus(), beta.alpha_plus());
    let above = if ap == bp {
        dominates(&alpha.parts, &beta.parts)
    } else {
        dominates(&ap.parts, &bp.parts)
    };
    if above {
        return Ok(DominanceResult::Greater);
    }
    let below = if ap == bp {
        dominates(&beta.parts, &alpha.parts)
    } else {
        dominates(&bp.parts, &ap.parts)
    };
    if below {
        Ok(DominanceResult::Less)
    } else {
        Ok(DominanceResult::Incomparable)
    }
}

/// The joint eigenvalue vector of the Cherednik–Dunkl operators on
/// `zeta_alpha`.
#[derive(Clone, PartialEq, Debug)]
pub struct SpectralVector {
    /// `xi_i(alpha) = (d - w_alpha(i)) kappa + alpha_i + 1` for `1 <= i <= d`.
    pub xi: Vec<Scalar>,
}

/// Compute the spectral vector of a composition in `N_0^d`.
pub fn spectral_vector(alpha: &Composition, d: usize, kappa: &Scalar) -> Result<SpectralVector> {
    if alpha.dim() != d {
        return Err(Error::LengthMismatch(alpha.dim(), d));
    }
    let w = rank_function(alpha);
    let xi = (0..d)
        .map(|i| {
            let coef = Scalar::from_int(d as i64 - w[i] as i64);
            &(&coef * kappa) + &Scalar::from_int(i64::from(alpha.parts[i]) + 1)
        })
        .collect();
    Ok(SpectralVector { xi })
}

/// A nonsymmetric Jack polynomial together with its invariants.
#[derive(Clone, Debug)]
pub struct NSJack {
    /// The labeling composition.
    pub alpha: Composition,
    /// The polynomial `zeta_alpha = x^alpha + (triangular tail)`.
    pub poly: Polynomial,
    /// The spectral vector `(xi_1(alpha), ..., xi_d(alpha))`.
    pub xi: SpectralVector,
    /// The closed-form norm `<zeta_alpha, zeta_alpha>_kappa`.
    pub norm: Scalar,
    /// The closed-form evaluation `zeta_alpha(1, ..., 1)`.
    pub eval_ones: Scalar,
}

fn type_a_params(ctx: &DunklContext) -> Result<(usize, Scalar)> {
    match ctx.rs.tag {
        TypeTag::A(n) => Ok((n + 1, ctx.kappa.values[0].clone())),
        _ => Err(Error::UnsupportedType(format!(
            "Cherednik-Dunkl operators need a type A root system, got {}",
            ctx.rs.tag
        ))),
    }
}

/// Apply the transposition of variables `i` and `j` (0-based) to a polynomial.
fn swap_vars(p: &Polynomial, i: usize, j: usize) -> Polynomial {
    let mut out = Polynomial::zero(p.dim());
    for (e, c) in p.iter() {
        let mut exps = e.0.clone();
        exps.swap(i, j);
        out.add_term(ExpVec(exps), c.clone());
    }
    out
}

/// Apply `theta_m^{-1}` (the inverse of the cyclic shift `s_1 s_2 ... s_{m-1}`
/// on the first `m` variables) to a polynomial: on exponents this rotates
/// `(e_1, ..., e_m)` to `(e_2, ..., e_m, e_1)`.
fn theta_inverse_apply(p: &Polynomial, m: usize) -> Polynomial {
    let mut out = Polynomial::zero(p.dim());
    for (e, c) in p.iter() {
        let mut exps = e.0.clone();
        exps[..m].rotate_left(1);
        out.add_term(ExpVec(exps), c.clone());
    }
    out
}

/// Apply the Cherednik–Dunkl operator `U_i = D_i x_i - kappa sum_{j<i} (i,j)`
/// (index `i` is 1-based) in a type A context.
pub fn cherednik_apply(ctx: &DunklContext, i: usize, p: &Polynomial) -> Result<Polynomial> {
    let (d, kappa) = type_a_params(ctx)?;
    if p.dim() != d {
        return Err(Error::DimensionMismatch(p.dim(), d));
    }
    if i == 0 || i > d {
        return Err(Error::DimensionMismatch(i, d));
    }
    let xi_p = &Polynomial::var(d, i - 1) * p;
    let mut a = vec![rat_int(0); d];
    a[i - 1] = rat_int(1);
    let mut out = dunkl_apply(ctx, &a, &xi_p)?;
    for j in 0..i - 1 {
        out = &out - &swap_vars(p, i - 1, j).scale(&kappa);
    }
    Ok(out)
}

/// Memo key for [`zeta`]: dimension, the display form of the multiplicity
/// value (which distinguishes symbolic from each rational specialization),
/// and the composition.
type ZetaKey = (usize, String, Vec<u32>);

thread_local! {
    /// Memo table for [`zeta`].
    static ZETA_MEMO: RefCell<HashMap<ZetaKey, Rc<NSJack>>> =
        RefCell::new(HashMap::new());
}

/// Compute the nonsymmetric Jack polynomial `zeta_alpha` in a type A context.
///
/// The recursion starts from `zeta_0 = 1` and uses two steps:
///
/// * **exchange**: if `alpha` has a descent `alpha_i > alpha_{i+1}`, then with
///   `beta = alpha s_i` and `c = kappa / (xi_i(beta) - xi_{i+1}(beta))`,
///   `zeta_alpha = s_i zeta_beta - c zeta_beta`;
/// * **raising**: if `alpha` is weakly increasing and nonzero, then `alpha =
///   phi(beta)` with `beta = (alpha_d - 1, alpha_1, ..., alpha_{d-1})` and
///   `zeta_alpha = x_d theta_d^{-1} zeta_beta`.
///
/// Results are memoized per (dimension, multiplicity value). At a rational
/// multiplicity the memoized symbolic result is reused by substitution when
/// available and pole-free; otherwise the recursion runs directly and reports
/// [`Error::SeparationFailure`] if an exchange denominator vanishes.
pub fn zeta(ctx: &DunklContext, alpha: &Composition) -> Result<Rc<NSJack>> {
    let (d, kappa) = type_a_params(ctx)?;
    if alpha.dim() != d {
        return Err(Error::LengthMismatch(alpha.dim(), d));
    }
    zeta_inner(d, &kappa, ctx.kappa.mode, &alpha.parts)
}

fn memo_key(d: usize, kappa: &Scalar, parts: &[u32]) -> (usize, String, Vec<u32>) {
    (d, kappa.to_string(), parts.to_vec())
}

fn memo_get(key: &(usize, String, Vec<u32>)) -> Option<Rc<NSJack>> {
    ZETA_MEMO.with(|m| m.borrow().get(key).cloned())
}

fn memo_put(key: (usize, String, Vec<u32>), val: Rc<NSJack>) {
    ZETA_MEMO.with(|m| {
        m.borrow_mut().insert(key, val);
    });
}

/// Export this thread's `zeta` memo table as JSON, one record per cached
/// polynomial (keyed by dimension, multiplicity display, and composition).
pub fn export_zeta_memo() -> serde_json::Value {
    ZETA_MEMO.with(|m| {
        let entries: Vec<serde_json::Value> = m
            .borrow()
            .iter()
            .map(|((d, kappa, parts), jack)| {
                serde_json::json!({
                    "d": d,
                    "kappa": kappa,
                    "alpha": parts,
                    "poly": jack.poly.to_json(),
                    "xi": jack.xi.xi.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "norm": jack.norm.to_string(),
                    "eval_ones": jack.eval_ones.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(entries)
    })
}

/// Install previously exported `zeta` memo records into this thread's table,
/// returning how many were accepted. The memo only affects speed, never
/// results, so callers may treat failures as advisory.
pub fn import_zeta_memo(data: &serde_json::Value) -> Result<usize> {
    let entries = data
        .as_array()
        .ok_or_else(|| Error::Parse("zeta memo: expected an array".into()))?;
    let mut imported = 0;
    for entry in entries {
        let get = |field: &str| {
            entry
                .get(field)
                .ok_or_else(|| Error::Parse(format!("zeta memo: missing field {}", field)))
        };
        let d = get("d")?
            .as_u64()
            .ok_or_else(|| Error::Parse("zeta memo: bad dimension".into()))?
            as usize;
        let kappa_text = get("kappa")?
            .as_str()
            .ok_or_else(|| Error::Parse("zeta memo: bad kappa".into()))?
            .to_string();
        let parts: Vec<u32> = get("alpha")?
            .as_array()
            .ok_or_else(|| Error::Parse("zeta memo: bad composition".into()))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|u| u as u32)
                    .ok_or_else(|| Error::Parse("zeta memo: bad composition part".into()))
            })
            .collect::<Result<_>>()?;
        let poly = Polynomial::from_json(get("poly")?)?;
        let xi: Vec<Scalar> = get("xi")?
            .as_array()
            .ok_or_else(|| Error::Parse("zeta memo: bad spectral vector".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::Parse("zeta memo: bad spectral entry".into()))?
                    .parse::<Scalar>()
            })
            .collect::<Result<_>>()?;
        let norm: Scalar = get("norm")?
            .as_str()
            .ok_or_else(|| Error::Parse("zeta memo: bad norm".into()))?
            .parse()?;
        let eval_ones: Scalar = get("eval_ones")?
            .as_str()
            .ok_or_else(|| Error::Parse("zeta memo: bad evaluation".into()))?
            .parse()?;
        if parts.len() != d || poly.dim() != d || xi.len() != d {
            return Err(Error::LengthMismatch(parts.len().max(xi.len()), d));
        }
        let jack = NSJack {
            alpha: Composition::new(parts.clone()),
            poly,
            xi: SpectralVector { xi },
            norm,
            eval_ones,
        };
        memo_put((d, kappa_text, parts), Rc::new(jack));
        imported += 1;
    }
    Ok(imported)
}

fn zeta_inner(d: usize, kappa: &Scalar, mode: KappaMode, parts: &[u32]) -> Result<Rc<NSJack>> {
    let key = memo_key(d, kappa, parts);
    if let Some(hit) = memo_get(&key) {
        return Ok(hit);
    }

    // At a rational multiplicity, reuse a memoized symbolic result by
    // substitution when every coefficient is pole-free there.
    if !matches!(mode, KappaMode::Symbolic) {
        let symbolic = Scalar::param(0);
        if let Some(sym) = memo_get(&memo_key(d, &symbolic, parts)) {
            if let Some(spec) = specialize_nsjack(&sym, kappa) {
                let rc = Rc::new(spec);
                memo_put(key, rc.clone());
                return Ok(rc);
            }
        }
    }

    let alpha = Composition::new(parts.to_vec());
    let poly = if parts.iter().all(|&a| a == 0) {
        Polynomial::one(d)
    } else if let Some(i) = (0..d - 1).find(|&i| parts[i] > parts[i + 1]) {
        // Exchange step across s_{i+1} (1-based index i+1).
        let mut beta = parts.to_vec();
        beta.swap(i, i + 1);
        let zb = zeta_inner(d, kappa, mode, &beta)?;
        let xib = spectral_vector(&Composition::new(beta), d, kappa)?;
        let den = &xib.xi[i] - &xib.xi[i + 1];
        if den.is_zero() {
            return Err(Error::SeparationFailure {
                index: i + 1,
                alpha: parts.to_vec(),
            });
        }
        let c = kappa / &den;
        &swap_vars(&zb.poly, i, i + 1) - &zb.poly.scale(&c)
    } else {
        // Weakly increasing and nonzero: alpha = phi(beta) and the raising
        // step applies.
        let mut beta = vec![parts[d - 1] - 1];
        beta.extend_from_slice(&parts[..d - 1]);
        let zb = zeta_inner(d, kappa, mode, &beta)?;
        &Polynomial::var(d, d - 1) * &theta_inverse_apply(&zb.poly, d)
    };

    let xi = spectral_vector(&alpha, d, kappa)?;
    let norm = zeta_norm_closed(&alpha, d, kappa)?;
    let eval_ones = zeta_eval_ones(&alpha, d, kappa)?;
    let rc = Rc::new(NSJack {
        alpha,
        poly,
        xi,
        norm,
        eval_ones,
    });
    memo_put(key, rc.clone());
    Ok(rc)
}

/// Substitute a concrete multiplicity value into a symbolic record; `None`
/// when any coefficient has a pole there.
fn specialize_nsjack(sym: &NSJack, kappa: &Scalar) -> Option<NSJack> {
    let vals = [kappa.clone(), Scalar::zero()];
    let poly = sym.poly.substitute_params(&vals).ok()?;
    let xi = SpectralVector {
        xi: sym
            .xi
            .xi
            .iter()
            .map(|s| s.substitute(&vals))
            .collect::<Result<Vec<_>>>()
            .ok()?,
    };
    Some(NSJack {
        alpha: sym.alpha.clone(),
        poly,
        xi,
        norm: sym.norm.substitute(&vals).ok()?,
        eval_ones: sym.eval_ones.substitute(&vals).ok()?,
    })
}

/// Number of recursion steps (exchange plus raising) linking the zero
/// composition to `alpha`.
pub fn recursion_step_count(alpha: &Composition) -> u64 {
    let d = alpha.dim();
    let mut parts = alpha.parts.clone();
    let mut steps = 0u64;
    loop {
        if parts.iter().all(|&a| a == 0) {
            return steps;
        }
        if let Some(i) = (0..d - 1).find(|&i| parts[i] > parts[i + 1]) {
            parts.swap(i, i + 1);
        } else {
            let mut beta = vec![parts[d - 1] - 1];
            beta.extend_from_slice(&parts[..d - 1]);
            parts = beta;
        }
        steps += 1;
    }
}

/// The hook-length product `h(alpha, t) = prod over Ferrers cells (i, j)` of
/// `alpha_i - j + t + kappa #{l > i : j <= alpha_l <= alpha_i} + kappa
/// #{l < i : j <= alpha_l + 1 <= alpha_i}`, with `h(0, t) = 1`.
pub fn hook_product(alpha: &Composition, t: &Scalar, kappa: &Scalar) -> Scalar {
    let a = &alpha.parts;
    let mut prod = Scalar::one();
    for i in 0..alpha.length() {
        for j in 1..=a[i] {
            let arm = a
                .iter()
                .enumerate()
                .filter(|&(l, &al)| l > i && j <= al && al <= a[i])
                .count();
            let leg = a
                .iter()
                .enumerate()
                .filter(|&(l, &al)| l < i && j <= al + 1 && al < a[i])
                .count();
            let cell = &(&Scalar::from_int(i64::from(a[i]) - i64::from(j)) + t)
                + &(&Scalar::from_int((arm + leg) as i64) * kappa);
            prod = &prod * &cell;
        }
    }
    prod
}

fn dk_plus_one(d: usize, kappa: &Scalar) -> Scalar {
    &(&Scalar::from_int(d as i64) * kappa) + &Scalar::one()
}

/// Closed form for the norm `<zeta_alpha, zeta_alpha>_kappa =
/// (d kappa + 1)_{alpha^+} h(alpha, 1) / h(alpha, kappa + 1)`.
pub fn zeta_norm_closed(alpha: &Composition, d: usize, kappa: &Scalar) -> Result<Scalar> {
    if alpha.dim() != d {
        return Err(Error::LengthMismatch(alpha.dim(), d));
    }
    let gp = generalized_pochhammer(&dk_plus_one(d, kappa), &alpha.alpha_plus().parts, kappa)?;
    let h1 = hook_product(alpha, &Scalar::one(), kappa);
    let hk = hook_product(alpha, &(kappa + &Scalar::one()), kappa);
    Ok(&(&gp * &h1) * &hk.inverse()?)
}

/// Closed form for the evaluation `zeta_alpha(1, ..., 1) =
/// (d kappa + 1)_{alpha^+} / h(alpha, kappa + 1)`.
pub fn zeta_eval_ones(alpha: &Composition, d: usize, kappa: &Scalar) -> Result<Scalar> {
    if alpha.dim() != d {
        return Err(Error::LengthMismatch(alpha.dim(), d));
    }
    let gp = generalized_pochhammer(&dk_plus_one(d, kappa), &alpha.alpha_plus().parts, kappa)?;
    let hk = hook_product(alpha, &(kappa + &Scalar::one()), kappa);
    Ok(&gp * &hk.inverse()?)
}

/// Verification record for the closed form of `D_m zeta_alpha`.
#[derive(Clone, Debug)]
pub struct DmZetaReport {
    /// `m = l(alpha)`.
    pub m: usize,
    /// The closed-form factor
    /// `(m kappa + beta_m)((d+1) kappa + beta_m) / ((m+1) kappa + beta_m)`
    /// with `beta_m = alpha_m - w_alpha(m) kappa`.
    pub factor: Scalar,
    /// Whether `D_m zeta_alpha` equals `factor * theta_m^{-1} zeta_{alpha~}`
    /// with `alpha~ = (alpha_m - 1, alpha_1, ..., alpha_{m-1}, 0, ...)`.
    pub main_equal: bool,
    /// Whether `D_i zeta_alpha = 0` for all `m < i <= d`.
    pub higher_vanish: bool,
}

/// Evaluate both sides of the closed form for `D_m zeta_alpha` (with
/// `m = l(alpha)`) and report equality, along with the vanishing of
/// `D_i zeta_alpha` for `i > m`.
pub fn d_m_zeta_check(ctx: &DunklContext, alpha: &Composition) -> Result<DmZetaReport> {
    let (d, kappa) = type_a_params(ctx)?;
    if alpha.dim() != d {
        return Err(Error::LengthMismatch(alpha.dim(), d));
    }
    let m = alpha.length();
    if m == 0 {
        return Err(Error::UnsupportedType(
            "D_m closed form needs a nonzero composition".into(),
        ));
    }
    let z = zeta(ctx, alpha)?;
    let w = rank_function(alpha);
    // beta_m = alpha_m - w_alpha(m) kappa.
    let beta_m = &Scalar::from_int(i64::from(alpha.parts[m - 1]))
        - &(&Scalar::from_int(w[m - 1] as i64) * &kappa);
    let shifted = |c: i64| &(&Scalar::from_int(c) * &kappa) + &beta_m;
    let den = shifted(m as i64 + 1);
    let factor = &(&shifted(m as i64) * &shifted(d as i64 + 1)) * &den.inverse()?;

    let mut tilde = vec![alpha.parts[m - 1] - 1];
    tilde.extend_from_slice(&alpha.parts[..m - 1]);
    tilde.resize(d, 0);
    let zt = zeta(ctx, &Composition::new(tilde))?;
    let rhs = theta_inverse_apply(&zt.poly, m).scale(&factor);

    let mut unit = vec![rat_int(0); d];
    unit[m - 1] = rat_int(1);
    let lhs = dunkl_apply(ctx, &unit, &z.poly)?;
    let main_equal = lhs == rhs;

    let mut higher_vanish = true;
    for i in m..d {
        let mut e = vec![rat_int(0); d];
        e[i] = rat_int(1);
        if !dunkl_apply(ctx, &e, &z.poly)?.is_zero() {
            higher_vanish = false;
        }
    }
    Ok(DmZetaReport {
        m,
        factor,
        main_equal,
        higher_vanish,
    })
}

/// All distinct rearrangements of a part list.
fn orbit(parts: &[u32]) -> Vec<Vec<u32>> {
    // Iterate multiset permutations in descending lexicographic order via the
    // prev-permutation step on a descending start.
    let mut cur = parts.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    loop {
        // Find the rightmost ascent cur[i] < cur[i+1] scanning for
        // prev-permutation in lex order.
        let n = cur.len();
        let mut i = n.wrapping_sub(2);
        while i != usize::MAX && cur[i] <= cur[i + 1] {
            i = i.wrapping_sub(1);
        }
        if i == usize::MAX {
            break;
        }
        let mut j = n - 1;
        while cur[j] >= cur[i] {
            j -= 1;
        }
        cur.swap(i, j);
        cur[i + 1..].reverse();
        cur[i + 1..].sort_unstable_by(|a, b| b.cmp(a));
        out.push(cur.clone());
    }
    out
}

/// Number of permutations fixing the part list: the product of factorials of
/// the part multiplicities.
fn stabilizer_order(parts: &[u32]) -> u64 {
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for &p in parts {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts
        .values()
        .map(|&c| (1..=c).product::<u64>())
        .product()
}

/// The symmetric Jack polynomial
/// `j_lambda = h(lambda, 1) sum_{alpha^+ = lambda} zeta_alpha / h(alpha, 1)`,
/// returned together with its closed-form norm
/// `(d kappa + 1)_lambda d! h(lambda, 1) / (n_lambda h(lambda^R, kappa + 1))`.
pub fn symmetric_jack(ctx: &DunklContext, lambda: &Composition) -> Result<(Polynomial, Scalar)> {
    let (d, kappa) = type_a_params(ctx)?;
    if lambda.dim() != d {
        return Err(Error::LengthMismatch(lambda.dim(), d));
    }
    if !lambda.is_partition() {
        return Err(Error::NotAPartition(lambda.parts.clone()));
    }
    let h_lambda_1 = hook_product(lambda, &Scalar::one(), &kappa);
    let mut sum = Polynomial::zero(d);
    for parts in orbit(&lambda.parts) {
        let alpha = Composition::new(parts);
        let h_alpha_1 = hook_product(&alpha, &Scalar::one(), &kappa);
        let z = zeta(ctx, &alpha)?;
        sum = &sum + &z.poly.scale(&h_alpha_1.inverse()?);
    }
    let poly = sum.scale(&h_lambda_1);

    let gp = generalized_pochhammer(&dk_plus_one(d, &kappa), &lambda.parts, &kappa)?;
    let d_fact: u64 = (1..=d as u64).product();
    let n_lambda = stabilizer_order(&lambda.parts);
    let h_rev = hook_product(&lambda.reversed(), &(&kappa + &Scalar::one()), &kappa);
    let norm = &(&(&gp * &h_lambda_1) * &Scalar::from_frac(d_fact as i64, n_lambda as i64))
        * &h_rev.inverse()?;
    Ok((poly, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl::kappa_form;
    use crate::roots::{MultiplicitySpec, RootSystem};
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx_a(d: usize) -> DunklContext {
        let rs = RootSystem::build(TypeTag::A(d - 1)).unwrap();
        DunklContext::new(rs, MultiplicitySpec::symbolic(1).unwrap()).unwrap()
    }

    fn ctx_a_rational(d: usize, num: i64, den: i64) -> DunklContext {
        let rs = RootSystem::build(TypeTag::A(d - 1)).unwrap();
        DunklContext::new(rs, MultiplicitySpec::rational(&[rat(num, den)])).unwrap()
    }

    fn kap() -> Scalar {
        Scalar::param(0)
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    /// All compositions of `n` into `d` parts.
    fn compositions(d: usize, n: u32) -> Vec<Composition> {
        fn rec(d: usize, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if cur.len() == d - 1 {
                cur.push(n);
                out.push(Composition::new(cur.clone()));
                cur.pop();
                return;
            }
            for a in 0..=n {
                cur.push(a);
                rec(d, n - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, n, &mut Vec::new(), &mut out);
        out
    }

    fn random_poly(rng: &mut ChaCha8Rng, d: usize, deg: u32) -> Polynomial {
        let mut p = Polynomial::zero(d);
        for alpha in (0..=deg).flat_map(|n| compositions(d, n)) {
            if rng.gen_range(0..3) == 0 {
                let c = Scalar::from_int(rng.gen_range(-4i64..=4));
                p = &p + &Polynomial::monomial(d, &alpha.parts, c);
            }
        }
        p
    }

    /// Independent oracle: project `x^alpha` onto the joint eigenspace of the
    /// Cherednik-Dunkl operators with eigenvalues `xi(alpha)` by multiplying
    /// spectral projectors `prod_{mu != xi_i(alpha)} (U_i - mu)/(xi_i(alpha) - mu)`
    /// over the spectrum of each `U_i` on the homogeneous component.
    fn zeta_oracle(ctx: &DunklContext, alpha: &Composition) -> Polynomial {
        let d = alpha.dim();
        let kappa = kap();
        let n = alpha.degree();
        let xi_target = spectral_vector(alpha, d, &kappa).unwrap();
        let mut p = Polynomial::monomial(d, &alpha.parts, Scalar::one());
        for i in 1..=d {
            let mut spectrum: Vec<Scalar> = Vec::new();
            for beta in compositions(d, n) {
                let v = spectral_vector(&beta, d, &kappa).unwrap();
                if !spectrum.contains(&v.xi[i - 1]) {
                    spectrum.push(v.xi[i - 1].clone());
                }
            }
            for mu in spectrum {
                if mu == xi_target.xi[i - 1] {
                    continue;
                }
                let shifted = &cherednik_apply(ctx, i, &p).unwrap() - &p.scale(&mu);
                let denom = &xi_target.xi[i - 1] - &mu;
                p = shifted.scale(&denom.inverse().unwrap());
            }
        }
        p
    }

    #[test]
    fn rank_function_examples() {
        assert_eq!(rank_function(&comp(&[5, 1, 4])), vec![1, 3, 2]);
        assert_eq!(rank_function(&comp(&[0, 2, 1])), vec![3, 1, 2]);
        assert_eq!(rank_function(&comp(&[3, 2, 2, 0])), vec![1, 2, 3, 4]);
        // alpha . w_alpha^{-1} = alpha^+ for assorted compositions.
        for alpha in compositions(3, 4) {
            let w = rank_function(&alpha);
            let mut sorted = vec![0u32; 3];
            for i in 0..3 {
                // (alpha w^{-1})_{w(i)} = alpha_i.
                sorted[w[i] - 1] = alpha.parts[i];
            }
            assert_eq!(sorted, alpha.alpha_plus().parts);
        }
    }

    #[test]
    fn dominance_examples() {
        let a = comp(&[5, 1, 4]);
        let b = comp(&[1, 5, 4]);
        let c = comp(&[4, 3, 3]);
        let e = comp(&[6, 2, 2]);
        assert_eq!(triangular_compare(&a, &b).unwrap(), DominanceResult::Greater);
        assert_eq!(triangular_compare(&b, &c).unwrap(), DominanceResult::Greater);
        assert_eq!(triangular_compare(&a, &c).unwrap(), DominanceResult::Greater);
        assert_eq!(triangular_compare(&c, &a).unwrap(), DominanceResult::Less);
        assert_eq!(
            triangular_compare(&b, &e).unwrap(),
            DominanceResult::Incomparable
        );
        assert_eq!(triangular_compare(&a, &a).unwrap(), DominanceResult::Equal);
        assert!(matches!(
            dominance_compare(&a, &comp(&[1, 2])),
            Err(Error::LengthMismatch(3, 2))
        ));
        for alpha in compositions(3, 4) {
            // alpha^+ dominates-or-equals alpha.
            let ap = alpha.alpha_plus();
            assert!(matches!(
                triangular_compare(&ap, &alpha).unwrap(),
                DominanceResult::Greater | DominanceResult::Equal
            ));
            // Sorting a pair with alpha_i > alpha_j, i < j, moves down in the
            // triangular order.
            for i in 0..3 {
                for j in i + 1..3 {
                    if alpha.parts[i] > alpha.parts[j] {
                        let mut sw = alpha.parts.clone();
                        sw.swap(i, j);
                        assert_eq!(
                            triangular_compare(&alpha, &Composition::new(sw)).unwrap(),
                            DominanceResult::Greater
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spectral_vector_examples() {
        let k = kap();
        let lin = |c: i64, a: i64| &(&Scalar::from_int(c) * &k) + &Scalar::from_int(a);
        let v = spectral_vector(&comp(&[0, 0, 0]), 3, &k).unwrap();
        assert_eq!(v.xi, vec![lin(2, 1), lin(1, 1), lin(0, 1)]);
        let v = spectral_vector(&comp(&[0, 2, 1]), 3, &k).unwrap();
        assert_eq!(v.xi, vec![lin(0, 1), lin(2, 3), lin(1, 2)]);
        let v = spectral_vector(&comp(&[1, 0]), 2, &k).unwrap();
        assert_eq!(v.xi, vec![lin(1, 2), lin(0, 1)]);
        // Distinct compositions have distinct spectral vectors symbolically.
        let all: Vec<_> = (0..=3).flat_map(|n| compositions(3, n)).collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(
                    spectral_vector(a, 3, &k).unwrap(),
                    spectral_vector(b, 3, &k).unwrap()
                );
            }
        }
    }

    #[test]
    fn cherednik_triangular_on_monomials() {
        let ctx = ctx_a(3);
        let k = kap();
        // U_i 1 = ((d - i) kappa + 1) * 1.
        for i in 1..=3usize {
            let out = cherednik_apply(&ctx, i, &Polynomial::one(3)).unwrap();
            let expect = &(&Scalar::from_int(3 - i as i64) * &k) + &Scalar::one();
            assert_eq!(out, Polynomial::constant(3, expect));
        }
        // d = 2: U_1 x_1 = (kappa + 2) x_1 + kappa x_2; the diagonal
        // coefficient is xi_1((1,0)) and the tail lies strictly below (1,0).
        let ctx2 = ctx_a(2);
        let out = cherednik_apply(&ctx2, 1, &Polynomial::var(2, 0)).unwrap();
        assert_eq!(
            out,
            &Polynomial::var(2, 0).scale(&(&k + &Scalar::from_int(2)))
                + &Polynomial::var(2, 1).scale(&k)
        );
        // Triangularity: U_i x^alpha = xi_i(alpha) x^alpha + kappa-multiples
        // of strictly smaller monomials in the triangular order.
        for alpha in (0..=3u32).flat_map(|n| compositions(3, n)) {
            let xi = spectral_vector(&alpha, 3, &k).unwrap();
            for i in 1..=3usize {
                let mono = Polynomial::monomial(3, &alpha.parts, Scalar::one());
                let out = cherednik_apply(&ctx, i, &mono).unwrap();
                for (e, c) in out.iter() {
                    let beta = Composition::new(e.0.clone());
                    if beta == alpha {
                        assert_eq!(*c, xi.xi[i - 1]);
                    } else {
                        assert_eq!(
                            triangular_compare(&alpha, &beta).unwrap(),
                            DominanceResult::Greater
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cherednik_commute_and_adjoint() {
        let ctx = ctx_a(3);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let p = random_poly(&mut rng, 3, 3);
        for i in 1..=3usize {
            for j in i + 1..=3usize {
                let ij = cherednik_apply(&ctx, i, &cherednik_apply(&ctx, j, &p).unwrap()).unwrap();
                let ji = cherednik_apply(&ctx, j, &cherednik_apply(&ctx, i, &p).unwrap()).unwrap();
                assert_eq!(ij, ji, "[U_{}, U_{}] != 0", i, j);
            }
        }
        // Self-adjointness in the kappa form on a homogeneous pair.
        let q = Polynomial::monomial(3, &[1, 2, 0], Scalar::one());
        let r = &Polynomial::monomial(3, &[0, 1, 2], Scalar::from_int(2))
            + &Polynomial::monomial(3, &[3, 0, 0], Scalar::one());
        for i in 1..=3usize {
            let lhs = kappa_form(&ctx, &cherednik_apply(&ctx, i, &q).unwrap(), &r).unwrap();
            let rhs = kappa_form(&ctx, &q, &cherednik_apply(&ctx, i, &r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cherednik_conjugation_relations() {
        let ctx = ctx_a(3);
        let k = kap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let p = random_poly(&mut rng, 3, 3);
        // s_j U_i s_j = U_i for j not in {i-1, i}.
        for i in 1..=3usize {
            for j in 1..=2usize {
                if j == i || j + 1 == i {
                    continue;
                }
                let sp = swap_vars(&p, j - 1, j);
                let lhs = swap_vars(&cherednik_apply(&ctx, i, &sp).unwrap(), j - 1, j);
                assert_eq!(lhs, cherednik_apply(&ctx, i, &p).unwrap());
            }
        }
        // s_i U_i s_i = U_{i+1} + kappa s_i.
        for i in 1..=2usize {
            let sp = swap_vars(&p, i - 1, i);
            let lhs = swap_vars(&cherednik_apply(&ctx, i, &sp).unwrap(), i - 1, i);
            let rhs = &cherednik_apply(&ctx, i + 1, &p).unwrap() + &sp.scale(&k);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn zeta_hand_examples() {
        let ctx = ctx_a(2);
        let k = kap();
        assert_eq!(zeta(&ctx, &comp(&[0, 0])).unwrap().poly, Polynomial::one(2));
        assert_eq!(
            zeta(&ctx, &comp(&[0, 1])).unwrap().poly,
            Polynomial::var(2, 1)
        );
        let c = &k * &(&k + &Scalar::one()).inverse().unwrap();
        let expect = &Polynomial::var(2, 0) + &Polynomial::var(2, 1).scale(&c);
        assert_eq!(zeta(&ctx, &comp(&[1, 0])).unwrap().poly, expect);
        // zeta_(1,...,1) = x_1 x_2 x_3.
        let ctx3 = ctx_a(3);
        assert_eq!(
            zeta(&ctx3, &comp(&[1, 1, 1])).unwrap().poly,
            Polynomial::monomial(3, &[1, 1, 1], Scalar::one())
        );
    }

    #[test]
    fn zeta_matches_projection_oracle() {
        let ctx = ctx_a(3);
        for n in 0..=3u32 {
            for alpha in compositions(3, n) {
                let z = zeta(&ctx, &alpha).unwrap();
                assert_eq!(z.poly, zeta_oracle(&ctx, &alpha), "alpha = {}", alpha);
            }
        }
    }

    #[test]
    fn zeta_eigenproperty_and_triangularity() {
        let ctx = ctx_a(3);
        for n in 0..=5u32 {
            for alpha in compositions(3, n) {
                let z = zeta(&ctx, &alpha).unwrap();
                // Monic leading term, strictly triangular tail.
                for (e, c) in z.poly.iter() {
                    let beta = Composition::new(e.0.clone());
                    if beta == alpha {
                        assert!(c.is_one());
                    } else {
                        assert_eq!(
                            triangular_compare(&alpha, &beta).unwrap(),
                            DominanceResult::Greater
                        );
                    }
                }
                // Joint eigenfunction.
                for i in 1..=3usize {
                    let out = cherednik_apply(&ctx, i, &z.poly).unwrap();
                    assert_eq!(out, z.poly.scale(&z.xi.xi[i - 1]), "alpha = {}", alpha);
                }
            }
        }
    }

    #[test]
    fn orthogonality_norms_and_evaluations() {
        let ctx = ctx_a(3);
        for n in 0..=4u32 {
            let comps = compositions(3, n);
            let zetas: Vec<_> = comps.iter().map(|a| zeta(&ctx, a).unwrap()).collect();
            for (i, zi) in zetas.iter().enumerate() {
                // Norm closed form matches the Gram oracle.
                let gram = kappa_form(&ctx, &zi.poly, &zi.poly).unwrap();
                assert_eq!(gram, zi.norm, "norm at {}", comps[i]);
                // Evaluation closed form matches summing coefficients.
                let mut ones = Scalar::zero();
                for (_, c) in zi.poly.iter() {
                    ones = &ones + c;
                }
                assert_eq!(ones, zi.eval_ones, "eval at {}", comps[i]);
                // Orthogonality across distinct labels.
                for zj in zetas.iter().skip(i + 1) {
                    let form = kappa_form(&ctx, &zi.poly, &zj.poly).unwrap();
                    assert!(form.is_zero(), "<z_{}, z_{}> != 0", zi.alpha, zj.alpha);
                }
            }
        }
    }

    #[test]
    fn exchange_algebra() {
        let ctx = ctx_a(3);
        let k = kap();
        for alpha in (1..=4u32).flat_map(|n| compositions(3, n)) {
            for i in 0..2usize {
                if alpha.parts[i] >= alpha.parts[i + 1] {
                    continue;
                }
                let za = zeta(&ctx, &alpha).unwrap();
                let mut sw = alpha.parts.clone();
                sw.swap(i, i + 1);
                let zs = zeta(&ctx, &Composition::new(sw)).unwrap();
                let den = &za.xi.xi[i] - &za.xi.xi[i + 1];
                let c = &k * &den.inverse().unwrap();
                // s_i zeta_alpha = c zeta_alpha + zeta_{alpha s_i}.
                let lhs = swap_vars(&za.poly, i, i + 1);
                assert_eq!(lhs, &za.poly.scale(&c) + &zs.poly);
                // s_i zeta_{alpha s_i} = (1 - c^2) zeta_alpha - c zeta_{alpha s_i}.
                let one_minus_c2 = &Scalar::one() - &(&c * &c);
                let lhs2 = swap_vars(&zs.poly, i, i + 1);
                assert_eq!(lhs2, &za.poly.scale(&one_minus_c2) - &zs.poly.scale(&c));
                // Norm ratio (1 - c^2).
                assert_eq!(zs.norm, &one_minus_c2 * &za.norm);
            }
        }
    }

    #[test]
    fn raising_step_and_norm_ratio() {
        let ctx = ctx_a(3);
        let k = kap();
        for alpha in (0..=3u32).flat_map(|n| compositions(3, n)) {
            let za = zeta(&ctx, &alpha).unwrap();
            let mut phi = alpha.parts[1..].to_vec();
            phi.push(alpha.parts[0] + 1);
            let zp = zeta(&ctx, &Composition::new(phi)).unwrap();
            let raised = &Polynomial::var(3, 2) * &theta_inverse_apply(&za.poly, 3);
            assert_eq!(zp.poly, raised, "raising at {}", alpha);
            // Norm ratio (d - w_alpha(1)) kappa + alpha_1 + 1 = xi_1(alpha).
            let w = rank_function(&alpha);
            let ratio = &(&Scalar::from_int(3 - w[0] as i64) * &k)
                + &Scalar::from_int(i64::from(alpha.parts[0]) + 1);
            assert_eq!(zp.norm, &ratio * &za.norm);
        }
    }

    #[test]
    fn step_count_matches_formula() {
        for alpha in (0..=4u32).flat_map(|n| compositions(3, n)) {
            let a = &alpha.parts;
            let mut extra = 0i64;
            for i in 0..3 {
                for j in i + 1..3 {
                    let diff = i64::from(a[i]) - i64::from(a[j]);
                    extra += diff.abs() + (diff + 1).abs() - 1;
                }
            }
            let expect = i64::from(alpha.degree()) + extra / 2;
            assert_eq!(
                recursion_step_count(&alpha),
                expect as u64,
                "alpha = {}",
                alpha
            );
        }
    }

    #[test]
    fn hook_products_and_closed_forms() {
        let k = kap();
        let t = Scalar::param(1);
        assert!(hook_product(&comp(&[0, 0]), &t, &k).is_one());
        // (2,0): t(1+t); (1,1): t(t+kappa).
        assert_eq!(
            hook_product(&comp(&[2, 0]), &t, &k),
            &t * &(&t + &Scalar::one())
        );
        assert_eq!(hook_product(&comp(&[1, 1]), &t, &k), &t * &(&t + &k));
        // d = 2, alpha = (0,1): norm kappa + 1, evaluation 1.
        assert_eq!(
            zeta_norm_closed(&comp(&[0, 1]), 2, &k).unwrap(),
            &k + &Scalar::one()
        );
        assert!(zeta_eval_ones(&comp(&[0, 1]), 2, &k).unwrap().is_one());
        // d = 2, alpha = (2,0): h(alpha,1) = 2 and h(alpha,kappa+1) =
        // (kappa+1)(kappa+2).
        assert_eq!(
            hook_product(&comp(&[2, 0]), &Scalar::one(), &k),
            Scalar::from_int(2)
        );
        let kp1 = &k + &Scalar::one();
        assert_eq!(
            hook_product(&comp(&[2, 0]), &kp1, &k),
            &kp1 * &(&k + &Scalar::from_int(2))
        );
    }

    #[test]
    fn d_m_zeta_reports() {
        let ctx2 = ctx_a(2);
        let r = d_m_zeta_check(&ctx2, &comp(&[0, 1])).unwrap();
        assert_eq!(r.m, 2);
        assert!(r.main_equal && r.higher_vanish);
        let r = d_m_zeta_check(&ctx2, &comp(&[1, 1])).unwrap();
        assert!(r.main_equal && r.higher_vanish);
        let ctx3 = ctx_a(3);
        let r = d_m_zeta_check(&ctx3, &comp(&[1, 0, 0])).unwrap();
        assert_eq!(r.m, 1);
        assert!(r.main_equal && r.higher_vanish);
        let r = d_m_zeta_check(&ctx3, &comp(&[2, 0, 1])).unwrap();
        assert_eq!(r.m, 3);
        assert!(r.main_equal && r.higher_vanish);
    }

    #[test]
    fn symmetric_jack_examples() {
        let ctx2 = ctx_a(2);
        let (j, norm) = symmetric_jack(&ctx2, &comp(&[0, 0])).unwrap();
        assert_eq!(j, Polynomial::one(2));
        assert!(norm.is_one());
        // d = 2, lambda = (1,0): x_1 + x_2.
        let (j, norm) = symmetric_jack(&ctx2, &comp(&[1, 0])).unwrap();
        assert_eq!(j, &Polynomial::var(2, 0) + &Polynomial::var(2, 1));
        assert_eq!(norm, kappa_form(&ctx2, &j, &j).unwrap());
        // lambda = (1,1,1): the elementary symmetric monomial.
        let ctx3 = ctx_a(3);
        let (j, norm) = symmetric_jack(&ctx3, &comp(&[1, 1, 1])).unwrap();
        assert_eq!(j, Polynomial::monomial(3, &[1, 1, 1], Scalar::one()));
        assert_eq!(norm, kappa_form(&ctx3, &j, &j).unwrap());
        assert!(matches!(
            symmetric_jack(&ctx2, &comp(&[1, 2])),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn symmetric_jack_invariance_and_norms() {
        let ctx = ctx_a(3);
        for lambda in [[2, 0, 0], [1, 1, 0], [2, 1, 0], [2, 2, 0], [3, 1, 1]] {
            let lambda = comp(&lambda);
            let (j, norm) = symmetric_jack(&ctx, &lambda).unwrap();
            // Invariance under adjacent transpositions.
            for i in 0..2 {
                assert_eq!(swap_vars(&j, i, i + 1), j, "lambda = {}", lambda);
            }
            // Monic in x^lambda.
            assert!(j.coeff(&ExpVec(lambda.parts.clone())).is_one());
            // Closed-form norm matches the Gram oracle.
            assert_eq!(norm, kappa_form(&ctx, &j, &j).unwrap(), "lambda = {}", lambda);
        }
    }

    #[test]
    fn knop_sahi_positivity() {
        let ctx = ctx_a(3);
        let k = kap();
        for alpha in (0..=4u32).flat_map(|n| compositions(3, n)) {
            let z = zeta(&ctx, &alpha).unwrap();
            let h = hook_product(&alpha, &(&k + &Scalar::one()), &k);
            let cleared = z.poly.scale(&h);
            for (_, c) in cleared.iter() {
                assert!(
                    c.denom().is_constant(),
                    "coefficient not polynomial at {}",
                    alpha
                );
                for (_, r) in c.numer().iter() {
                    assert!(
                        *r >= rat_int(0),
                        "negative coefficient at {}: {}",
                        alpha,
                        c
                    );
                }
            }
        }
    }

    #[test]
    fn rational_specialization_and_separation_failure() {
        // Direct rational evaluation agrees with substituting into the
        // symbolic result.
        let sym = ctx_a(2);
        let rat_ctx = ctx_a_rational(2, 1, 2);
        for alpha in (0..=3u32).flat_map(|n| compositions(2, n)) {
            let zs = zeta(&sym, &alpha).unwrap();
            let zr = zeta(&rat_ctx, &alpha).unwrap();
            let half = Scalar::from_frac(1, 2);
            let substituted = zs
                .poly
                .substitute_params(&[half.clone(), Scalar::zero()])
                .unwrap();
            assert_eq!(zr.poly, substituted);
            assert_eq!(
                zr.norm,
                zs.norm.substitute(&[half, Scalar::zero()]).unwrap()
            );
        }
        // At kappa = -1 the exchange denominator for (1,0) vanishes.
        let bad = ctx_a_rational(2, -1, 1);
        match zeta(&bad, &comp(&[1, 0])) {
            Err(Error::SeparationFailure { index, alpha }) => {
                assert_eq!(index, 1);
                assert_eq!(alpha, vec![1, 0]);
            }
            other => panic!("expected SeparationFailure, got {:?}", other.map(|z| z.poly.clone())),
        }
    }
}
