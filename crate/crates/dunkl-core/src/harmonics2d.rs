//! Explicit harmonic bases on the plane.
//!
//! For three families of reflection groups on `R^2` the kappa-harmonic
//! polynomials (homogeneous polynomials annihilated by the Dunkl Laplacian)
//! admit classical closed forms:
//!
//! * `Z2` acting by the sign change of `x_2` (one parameter): Gegenbauer
//!   polynomials in `cos(theta)` dressed with `r^n`;
//! * `Z2 x Z2` acting by both sign changes (two parameters): Jacobi
//!   polynomials in `cos(2 theta)`;
//! * the dihedral groups `I2(m)`: the previous two families composed with
//!   `z -> z^m` in the complex coordinate `z = x_1 + i x_2`.
//!
//! All trigonometric expressions are expanded symbolically into Cartesian
//! polynomials using `r^2 = x_1^2 + x_2^2`, `r cos(theta) = x_1`,
//! `r sin(theta) = x_2`, and `r^2 cos(2 theta) = x_1^2 - x_2^2`; parity
//! guarantees that no fractional powers survive, so every output is an exact
//! polynomial over `Q(kappa)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// The classical one-variable orthogonal-polynomial families used by the
/// harmonic constructions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassicalFamily {
    /// Gegenbauer (ultraspherical) `C_n^kappa`.
    Gegenbauer,
    /// Jacobi `P_n^{(a,b)}`.
    Jacobi,
    /// Chebyshev of the first kind `T_n`.
    ChebyshevT,
    /// Generalized Laguerre `L_n^{(alpha)}`.
    Laguerre,
}

/// A classical orthogonal polynomial with exact coefficients.
#[derive(Clone, Debug)]
pub struct ClassicalPoly {
    /// Which family the polynomial belongs to.
    pub family: ClassicalFamily,
    /// The degree `n`.
    pub degree: u32,
    /// The parameters (one for Gegenbauer/Laguerre, two for Jacobi, none for
    /// Chebyshev).
    pub params: Vec<Scalar>,
    /// Dense coefficients in the argument variable, ascending by exponent.
    pub coeffs: Vec<Scalar>,
}

impl ClassicalPoly {
    /// Evaluate at a scalar argument.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * t) + c;
        }
        out
    }
}

fn poly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    out
}

fn poly_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|c| c * s).collect()
}

fn poly_shift_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    // s * t * a(t)
    let mut out = vec![Scalar::zero()];
    out.extend(a.iter().map(|c| c * s));
    out
}

/// Construct a classical orthogonal polynomial by its three-term recurrence.
///
/// Parameter conventions: Gegenbauer takes `[kappa]`, Jacobi `[a, b]`,
/// Chebyshev `[]`, Laguerre `[alpha]`. A vanishing recurrence denominator at
/// numeric parameters reports [`Error::RecurrencePole`].
pub fn classical_poly(family: ClassicalFamily, n: u32, params: &[Scalar]) -> Result<ClassicalPoly> {
    let expected = match family {
        ClassicalFamily::Gegenbauer | ClassicalFamily::Laguerre => 1,
        ClassicalFamily::Jacobi => 2,
        ClassicalFamily::ChebyshevT => 0,
    };
    if params.len() != expected {
        return Err(Error::LengthMismatch(params.len(), expected));
    }
    let int = Scalar::from_int;
    let inv = |s: &Scalar| {
        s.inverse()
            .map_err(|_| Error::RecurrencePole("three-term recurrence denominator vanishes".into()))
    };
    let one = || vec![Scalar::one()];
    let coeffs = match family {
        ClassicalFamily::Gegenbauer => {
            let k = &params[0];
            // C_0 = 1, C_1 = 2 kappa t,
            // n C_n = 2(n + kappa - 1) t C_{n-1} - (n + 2 kappa - 2) C_{n-2}.
            let mut prev = one();
            let mut cur = vec![Scalar::zero(), &int(2) * k];
            match n {
                0 => prev,
                _ => {
                    for j in 2..=n {
                        let jj = int(i64::from(j));
                        let a = &int(2) * &(&(&jj + k) - &Scalar::one());
                        let c = &(&jj + &(&int(2) * k)) - &int(2);
                        let num = poly_add(
                            &poly_shift_scale(&cur, &a),
                            &poly_scale(&prev, &-&c),
                        );
                        let next = poly_scale(&num, &inv(&jj)?);
                        prev = cur;
                        cur = next;
                    }
                    cur
                }
            }
        }
        ClassicalFamily::Jacobi => {
            let (a, b) = (&params[0], &params[1]);
            let apb = a + b;
            // P_0 = 1, P_1 = ((a + b + 2) t + (a - b)) / 2, and for n >= 2
            // the standard recurrence with denominator
            // 2n (n + a + b)(2n + a + b - 2).
            let mut prev = one();
            let mut cur = vec![
                &(a - b) * &Scalar::from_frac(1, 2),
                &(&apb + &int(2)) * &Scalar::from_frac(1, 2),
            ];
            match n {
                0 => prev,
                _ => {
                    for j in 2..=n {
                        let jj = int(i64::from(j));
                        let s = &(&int(2) * &jj) + &apb; // 2n + a + b
                        let den = &(&(&int(2) * &jj) * &(&jj + &apb)) * &(&s - &int(2));
                        let at = &(&(&s - &Scalar::one()) * &s) * &(&s - &int(2));
                        let bt = &(&s - &Scalar::one()) * &(&(a * a) - &(b * b));
                        let ct = &(&(&int(2) * &(&(&jj + a) - &Scalar::one()))
                            * &(&(&jj + b) - &Scalar::one()))
                            * &s;
                        let num = poly_add(
                            &poly_add(&poly_shift_scale(&cur, &at), &poly_scale(&cur, &bt)),
                            &poly_scale(&prev, &-&ct),
                        );
                        let next = poly_scale(&num, &inv(&den)?);
                        prev = cur;
                        cur = next;
                    }
                    cur
                }
            }
        }
        ClassicalFamily::ChebyshevT => {
            // T_0 = 1, T_1 = t, T_n = 2t T_{n-1} - T_{n-2}.
            let mut prev = one();
            let mut cur = vec![Scalar::zero(), Scalar::one()];
            match n {
                0 => prev,
                _ => {
                    for _ in 2..=n {
                        let num = poly_add(
                            &poly_shift_scale(&cur, &int(2)),
                            &poly_scale(&prev, &int(-1)),
                        );
                        prev = cur;
                        cur = num;
                    }
                    cur
                }
            }
        }
        ClassicalFamily::Laguerre => {
            let alpha = &params[0];
            // L_0 = 1, L_1 = 1 + alpha - t,
            // n L_n = (2n - 1 + alpha - t) L_{n-1} - (n - 1 + alpha) L_{n-2}.
            let mut prev = one();
            let mut cur = vec![&Scalar::one() + alpha, int(-1)];
            match n {
                0 => prev,
                _ => {
                    for j in 2..=n {
                        let jj = int(i64::from(j));
                        let lin = &(&(&int(2) * &jj) - &Scalar::one()) + alpha;
                        let c = &(&jj - &Scalar::one()) + alpha;
                        let num = poly_add(
                            &poly_add(
                                &poly_scale(&cur, &lin),
                                &poly_shift_scale(&cur, &int(-1)),
                            ),
                            &poly_scale(&prev, &-&c),
                        );
                        let next = poly_scale(&num, &inv(&jj)?);
                        prev = cur;
                        cur = next;
                    }
                    cur
                }
            }
        }
    };
    Ok(ClassicalPoly {
        family,
        degree: n,
        params: params.to_vec(),
        coeffs,
    })
}

fn poly_pow(base: &Polynomial, e: u32) -> Polynomial {
    let mut out = Polynomial::one(base.dim());
    for _ in 0..e {
        out = &out * base;
    }
    out
}

fn r_squared() -> Polynomial {
    let x1 = Polynomial::var(2, 0);
    let x2 = Polynomial::var(2, 1);
    &(&x1 * &x1) + &(&x2 * &x2)
}

/// Expand `r^n f(cos theta)` for a dense coefficient list of `f`: the result
/// is `sum_j c_j x_1^j (x_1^2 + x_2^2)^{(n-j)/2}`, which is a polynomial when
/// every nonzero `c_j` has `j` of the same parity as `n`.
fn expand_cos(coeffs: &[Scalar], n: u32) -> Polynomial {
    let r2 = r_squared();
    let x1 = Polynomial::var(2, 0);
    let mut out = Polynomial::zero(2);
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u32;
        debug_assert!((n - j).is_multiple_of(2), "parity violated in r^n expansion");
        let term = &poly_pow(&x1, j) * &poly_pow(&r2, (n - j) / 2);
        out = &out + &term.scale(c);
    }
    out
}

/// Expand `r^{2s} f(cos 2 theta)`: the result is
/// `sum_j c_j (x_1^2 - x_2^2)^j (x_1^2 + x_2^2)^{s-j}`.
fn expand_cos2(coeffs: &[Scalar], s: u32) -> Polynomial {
    let r2 = r_squared();
    let x1 = Polynomial::var(2, 0);
    let x2 = Polynomial::var(2, 1);
    let u = &(&x1 * &x1) - &(&x2 * &x2);
    let mut out = Polynomial::zero(2);
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u32;
        let term = &poly_pow(&u, j) * &poly_pow(&r2, s - j);
        out = &out + &term.scale(c);
    }
    out
}

/// The degree-`n` orthogonal harmonic pair for `Z2` acting by the sign change
/// of `x_2` with multiplicity `kappa`:
/// `p_{n,0} = r^n C_n^kappa(cos theta)` (even in `x_2`) and
/// `p_{n,1} = r^n sin theta C_{n-1}^{kappa+1}(cos theta)` (odd in `x_2`).
pub fn z2_harmonics(n: u32, kappa: &Scalar) -> Result<(Polynomial, Polynomial)> {
    if n == 0 {
        return Ok((Polynomial::one(2), Polynomial::zero(2)));
    }
    let c0 = classical_poly(ClassicalFamily::Gegenbauer, n, std::slice::from_ref(kappa))?;
    let p0 = expand_cos(&c0.coeffs, n);
    let c1 = classical_poly(
        ClassicalFamily::Gegenbauer,
        n - 1,
        &[kappa + &Scalar::one()],
    )?;
    let p1 = &Polynomial::var(2, 1) * &expand_cos(&c1.coeffs, n - 1);
    Ok((p0, p1))
}

/// The degree-`n` harmonic pair for `Z2 x Z2` (sign changes of `x_1` with
/// multiplicity `kappa_1` and of `x_2` with `kappa_2`), tagged by parity
/// type: `00`/`11` at even degree, `10`/`01` at odd degree.
pub fn z2z2_harmonics(
    n: u32,
    kappa1: &Scalar,
    kappa2: &Scalar,
) -> Result<Vec<(String, Polynomial)>> {
    let half = Scalar::from_frac(1, 2);
    let a_minus = kappa2 - &half;
    let a_plus = kappa2 + &half;
    let b_minus = kappa1 - &half;
    let b_plus = kappa1 + &half;
    let x1 = Polynomial::var(2, 0);
    let x2 = Polynomial::var(2, 1);
    if n == 0 {
        return Ok(vec![("00".into(), Polynomial::one(2))]);
    }
    if n.is_multiple_of(2) {
        let s = n / 2;
        // p_{2s,00} = r^{2s} P_s^{(k2-1/2, k1-1/2)}(cos 2 theta).
        let p00 = expand_cos2(
            &classical_poly(ClassicalFamily::Jacobi, s, &[a_minus.clone(), b_minus.clone()])?
                .coeffs,
            s,
        );
        // p_{2s,11} = r^{2s} sin 2 theta P_{s-1}^{(k2+1/2, k1+1/2)}(cos 2 theta).
        let inner = expand_cos2(
            &classical_poly(
                ClassicalFamily::Jacobi,
                s - 1,
                &[a_plus.clone(), b_plus.clone()],
            )?
            .coeffs,
            s - 1,
        );
        let p11 = (&(&x1 * &x2) * &inner).scale(&Scalar::from_int(2));
        Ok(vec![("00".into(), p00), ("11".into(), p11)])
    } else {
        let s = (n - 1) / 2;
        // p_{2s+1,10} = r^{2s+1} cos theta P_s^{(k2-1/2, k1+1/2)}(cos 2 theta).
        let p10 = &x1
            * &expand_cos2(
                &classical_poly(
                    ClassicalFamily::Jacobi,
                    s,
                    &[a_minus.clone(), b_plus.clone()],
                )?
                .coeffs,
                s,
            );
        // p_{2s+1,01} = r^{2s+1} sin theta P_s^{(k2+1/2, k1-1/2)}(cos 2 theta).
        let p01 = &x2
            * &expand_cos2(
                &classical_poly(
                    ClassicalFamily::Jacobi,
                    s,
                    &[a_plus.clone(), b_minus.clone()],
                )?
                .coeffs,
                s,
            );
        Ok(vec![("10".into(), p10), ("01".into(), p01)])
    }
}

/// A real/imaginary pair representing a polynomial in `z = x_1 + i x_2`.
#[derive(Clone)]
struct CPoly {
    re: Polynomial,
    im: Polynomial,
}

impl CPoly {
    fn mul_z(&self) -> CPoly {
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        CPoly {
            re: &(&self.re * &x1) - &(&self.im * &x2),
            im: &(&self.re * &x2) + &(&self.im * &x1),
        }
    }

    fn mul_z_pow(&self, j: u32) -> CPoly {
        let mut out = self.clone();
        for _ in 0..j {
            out = out.mul_z();
        }
        out
    }
}

/// `(Re z^m, Im z^m)` as exact polynomials.
fn z_power(m: u32) -> CPoly {
    CPoly {
        re: Polynomial::one(2),
        im: Polynomial::zero(2),
    }
    .mul_z_pow(m)
}

/// A family of planar harmonics, keyed by (degree, tag).
#[derive(Clone, Debug)]
pub struct HarmonicFamily2D {
    /// Display name of the group.
    pub group: String,
    /// Homogeneous harmonic polynomials keyed by degree and a family tag.
    pub entries: BTreeMap<(u32, String), Polynomial>,
}

/// Harmonic polynomials for the dihedral group `I2(m)`, all degrees up to
/// `n_max`.
///
/// For odd `m` (one class, `kappa = [kappa]`) the degree-`N` space is spanned
/// by `p_{n,0}(z^m), p_{n,1}(z^m)` when `N = nm`, and by the real and
/// imaginary parts of `p_{nm+j}(z) = z^j ((n + 2 kappa)/(2 kappa)
/// p_{n,0}(z^m) + i p_{n,1}(z^m))` when `N = nm + j`, `1 <= j < m`. The
/// factor `(n + 2 kappa)/(2 kappa)` has no meaning at `kappa = 0`; that case
/// reports [`Error::ZeroDenominator`].
///
/// For even `m = 2 m'` (two classes) the multiplicities are
/// `kappa = [kappa_1, kappa_2]` with `kappa_1` attached to the mirrors of
/// `|z^{m'} + conj(z)^{m'}|` and `kappa_2` to those of
/// `|z^{m'} - conj(z)^{m'}|` (the coordinate axes among them); the degree-`N`
/// space is spanned by the real and imaginary parts of `z^j q_n(z^{m'})`
/// with `N = n m' + j`, `0 <= j < m'`.
pub fn dihedral_harmonics(m: usize, n_max: u32, kappa: &[Scalar]) -> Result<HarmonicFamily2D> {
    if m < 3 {
        return Err(Error::UnsupportedType(
            "dihedral harmonics need m >= 3".into(),
        ));
    }
    let mut entries = BTreeMap::new();
    entries.insert((0, "re".to_string()), Polynomial::one(2));
    if m % 2 == 1 {
        if kappa.len() != 1 {
            return Err(Error::LengthMismatch(kappa.len(), 1));
        }
        let k = &kappa[0];
        let zm = z_power(m as u32);
        for deg in 1..=n_max {
            let n = deg / m as u32;
            let j = deg % m as u32;
            let (p0, p1) = z2_harmonics(n, k)?;
            let p0m = p0.substitute(&[zm.re.clone(), zm.im.clone()])?;
            let p1m = p1.substitute(&[zm.re.clone(), zm.im.clone()])?;
            if j == 0 {
                entries.insert((deg, "0".to_string()), p0m);
                entries.insert((deg, "1".to_string()), p1m);
            } else {
                let factor = if n == 0 {
                    Scalar::one()
                } else {
                    if k.is_zero() {
                        return Err(Error::ZeroDenominator(
                            "the odd dihedral factor (n + 2 kappa)/(2 kappa) is undefined at kappa = 0"
                                .into(),
                        ));
                    }
                    let two_k = &Scalar::from_int(2) * k;
                    &(&Scalar::from_int(i64::from(n)) + &two_k) * &two_k.inverse()?
                };
                let base = CPoly {
                    re: p0m.scale(&factor),
                    im: p1m,
                };
                let shifted = base.mul_z_pow(j);
                entries.insert((deg, "re".to_string()), shifted.re);
                entries.insert((deg, "im".to_string()), shifted.im);
            }
        }
    } else {
        if kappa.len() != 2 {
            return Err(Error::LengthMismatch(kappa.len(), 2));
        }
        let (k1, k2) = (&kappa[0], &kappa[1]);
        let half_m = (m / 2) as u32;
        let zm = z_power(half_m);
        for deg in 1..=n_max {
            let n = deg / half_m;
            let j = deg % half_m;
            let q = q_polynomial(n, k1, k2)?;
            let q_sub = CPoly {
                re: q.re.substitute(&[zm.re.clone(), zm.im.clone()])?,
                im: q.im.substitute(&[zm.re.clone(), zm.im.clone()])?,
            };
            let shifted = q_sub.mul_z_pow(j);
            entries.insert((deg, "re".to_string()), shifted.re);
            entries.insert((deg, "im".to_string()), shifted.im);
        }
    }
    Ok(HarmonicFamily2D {
        group: format!("I2({})", m),
        entries,
    })
}

/// The complex combinations `q_n` of the `Z2 x Z2` harmonics used by the even
/// dihedral construction: `q_{2s} = p_{2s,00} + (i/2) p_{2s,11}` and
/// `q_{2s+1} = (s + kappa_2 + 1/2) p_{2s+1,10} + i (s + kappa_1 + 1/2)
/// p_{2s+1,01}` (so `q_0 = 1`).
fn q_polynomial(n: u32, k1: &Scalar, k2: &Scalar) -> Result<CPoly> {
    if n == 0 {
        return Ok(CPoly {
            re: Polynomial::one(2),
            im: Polynomial::zero(2),
        });
    }
    let parts = z2z2_harmonics(n, k1, k2)?;
    let get = |tag: &str| -> Polynomial {
        parts
            .iter()
            .find(|(t, _)| t == tag)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Polynomial::zero(2))
    };
    if n.is_multiple_of(2) {
        Ok(CPoly {
            re: get("00"),
            im: get("11").scale(&Scalar::from_frac(1, 2)),
        })
    } else {
        let s = i64::from((n - 1) / 2);
        let half = Scalar::from_frac(1, 2);
        let c_re = &(&Scalar::from_int(s) + k2) + &half;
        let c_im = &(&Scalar::from_int(s) + k1) + &half;
        Ok(CPoly {
            re: get("10").scale(&c_re),
            im: get("01").scale(&c_im),
        })
    }
}

/// Numerically evaluate the dihedral Dunkl Laplacian of a polynomial at a
/// point, using floating-point mirror normals `(-sin(k pi / m),
/// cos(k pi / m))`. For even `m` the class of mirror `k` is `kappa_2` when
/// `k` is even (the axes family) and `kappa_1` when `k` is odd, matching the
/// weight convention of [`dihedral_harmonics`]; for odd `m` a single
/// multiplicity applies. `params` supplies the values of any symbolic
/// coefficient parameters.
pub fn dihedral_laplacian_eval(
    m: usize,
    kappas: &[f64],
    p: &Polynomial,
    params: &[f64],
    x: [f64; 2],
) -> f64 {
    let dxx = p.partial_derivative(0).partial_derivative(0);
    let dyy = p.partial_derivative(1).partial_derivative(1);
    let mut out = dxx.eval_f64(&x, params) + dyy.eval_f64(&x, params);
    let grad = [p.partial_derivative(0), p.partial_derivative(1)];
    for k in 0..m {
        let theta = k as f64 * std::f64::consts::PI / m as f64;
        let v = [-theta.sin(), theta.cos()];
        let kap = if m % 2 == 1 {
            kappas[0]
        } else if k % 2 == 0 {
            kappas[1]
        } else {
            kappas[0]
        };
        let xv = x[0] * v[0] + x[1] * v[1];
        let sx = [x[0] - 2.0 * xv * v[0], x[1] - 2.0 * xv * v[1]];
        let grad_v = grad[0].eval_f64(&x, params) * v[0] + grad[1].eval_f64(&x, params) * v[1];
        let diff = p.eval_f64(&x, params) - p.eval_f64(&sx, params);
        out += kap * (2.0 * grad_v / xv - diff / (xv * xv));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl::{harmonic_basis, laplacian_apply, DunklContext};
    use crate::poly::ExpVec;
    use crate::roots::{KappaMode, MultiplicitySpec, RootSystem};
    use crate::scalar::{pochhammer, rat_int, Scalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k0() -> Scalar {
        Scalar::param(0)
    }

    fn k1() -> Scalar {
        Scalar::param(1)
    }

    /// Context for Z2 acting by the sign change of x_2.
    fn ctx_z2() -> DunklContext {
        let rs = RootSystem::custom(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(-1)],
        ])
        .unwrap();
        DunklContext::new(rs, MultiplicitySpec::symbolic(1).unwrap()).unwrap()
    }

    /// Context for Z2 x Z2 with kappa_1 on the x_1 sign change (root e_1) and
    /// kappa_2 on the x_2 sign change.
    fn ctx_z2z2() -> DunklContext {
        let rs = RootSystem::custom(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(-1)],
        ])
        .unwrap();
        let e1 = rs.find_root(&[rat_int(1), rat_int(0)]).unwrap();
        let mut values = vec![Scalar::zero(); rs.num_classes];
        values[rs.class_of[e1]] = k0();
        let other = 1 - rs.class_of[e1];
        values[other] = k1();
        DunklContext::new(
            rs,
            MultiplicitySpec {
                mode: KappaMode::Symbolic,
                values,
            },
        )
        .unwrap()
    }

    /// Context for I2(4) realized by the B2 configuration, with kappa_1 on
    /// the diagonal mirrors (roots e_1 -+ e_2, weight |x_1^2 - x_2^2|) and
    /// kappa_2 on the axes (roots e_1, e_2, weight |x_1 x_2|).
    fn ctx_i24() -> DunklContext {
        let mut roots = Vec::new();
        for v in [[1i64, 0], [0, 1], [1, 1], [1, -1]] {
            roots.push(vec![rat_int(v[0]), rat_int(v[1])]);
            roots.push(vec![rat_int(-v[0]), rat_int(-v[1])]);
        }
        let rs = RootSystem::custom(roots).unwrap();
        let diag = rs.find_root(&[rat_int(1), rat_int(-1)]).unwrap();
        let mut values = vec![Scalar::zero(); rs.num_classes];
        values[rs.class_of[diag]] = k0();
        values[1 - rs.class_of[diag]] = k1();
        DunklContext::new(
            rs,
            MultiplicitySpec {
                mode: KappaMode::Symbolic,
                values,
            },
        )
        .unwrap()
    }

    #[test]
    fn classical_base_cases_and_values_at_one() {
        let k = k0();
        let c1 = classical_poly(ClassicalFamily::Gegenbauer, 1, std::slice::from_ref(&k)).unwrap();
        assert_eq!(c1.coeffs, vec![Scalar::zero(), &Scalar::from_int(2) * &k]);
        let j1 = classical_poly(ClassicalFamily::Jacobi, 1, &[k.clone(), k1()]).unwrap();
        let half = Scalar::from_frac(1, 2);
        assert_eq!(
            j1.coeffs,
            vec![
                &(&k - &k1()) * &half,
                &(&(&k + &k1()) + &Scalar::from_int(2)) * &half
            ]
        );
        let l0 = classical_poly(ClassicalFamily::Laguerre, 0, std::slice::from_ref(&k)).unwrap();
        assert_eq!(l0.coeffs, vec![Scalar::one()]);
        // Recurrence validation through closed evaluations:
        // C_n^kappa(1) = (2 kappa)_n / n!, P_n^{(a,b)}(1) = (a+1)_n / n!,
        // T_n(1) = 1, L_n^{(alpha)}(0) = (alpha+1)_n / n!.
        let mut fact = 1i64;
        for n in 1..=5u32 {
            fact *= i64::from(n);
            let c = classical_poly(ClassicalFamily::Gegenbauer, n, std::slice::from_ref(&k)).unwrap();
            let expect = &pochhammer(&(&Scalar::from_int(2) * &k), n)
                * &Scalar::from_frac(1, fact);
            assert_eq!(c.eval(&Scalar::one()), expect);
            let j = classical_poly(ClassicalFamily::Jacobi, n, &[k.clone(), k1()]).unwrap();
            let expect = &pochhammer(&(&k + &Scalar::one()), n) * &Scalar::from_frac(1, fact);
            assert_eq!(j.eval(&Scalar::one()), expect);
            let t = classical_poly(ClassicalFamily::ChebyshevT, n, &[]).unwrap();
            assert!(t.eval(&Scalar::one()).is_one());
            let l = classical_poly(ClassicalFamily::Laguerre, n, std::slice::from_ref(&k)).unwrap();
            let expect = &pochhammer(&(&k + &Scalar::one()), n) * &Scalar::from_frac(1, fact);
            assert_eq!(l.eval(&Scalar::zero()), expect);
        }
        // Jacobi recurrence pole at numeric parameters with a + b = -2.
        assert!(matches!(
            classical_poly(
                ClassicalFamily::Jacobi,
                2,
                &[Scalar::from_int(-1), Scalar::from_int(-1)]
            ),
            Err(Error::RecurrencePole(_))
        ));
    }

    #[test]
    fn z2_base_cases() {
        let k = k0();
        let (p0, p1) = z2_harmonics(1, &k).unwrap();
        assert_eq!(p0, Polynomial::var(2, 0).scale(&(&Scalar::from_int(2) * &k)));
        assert_eq!(p1, Polynomial::var(2, 1));
    }

    #[test]
    fn z2_exact_harmonicity() {
        let ctx = ctx_z2();
        let k = k0();
        for n in 1..=8u32 {
            let (p0, p1) = z2_harmonics(n, &k).unwrap();
            assert_eq!(p0.homogeneous_degree(), Some(n));
            assert_eq!(p1.homogeneous_degree(), Some(n));
            assert!(laplacian_apply(&ctx, &p0).unwrap().is_zero(), "p_{{{},0}}", n);
            assert!(laplacian_apply(&ctx, &p1).unwrap().is_zero(), "p_{{{},1}}", n);
        }
    }

    #[test]
    fn z2_monic_normalization_at_zero() {
        // P_n^kappa = (n!/(2 kappa)_n) C_n^kappa specializes at kappa = 0 to
        // r^n cos(n theta); the odd family similarly gives r^n sin(n theta).
        let k = k0();
        let mut fact = 1i64;
        for n in 1..=6u32 {
            fact *= i64::from(n);
            let (p0, p1) = z2_harmonics(n, &k).unwrap();
            let norm0 = &Scalar::from_int(fact)
                * &pochhammer(&(&Scalar::from_int(2) * &k), n).inverse().unwrap();
            let at0 = p0
                .scale(&norm0)
                .substitute_params(&[Scalar::zero(), Scalar::zero()])
                .unwrap();
            let zn = z_power(n);
            assert_eq!(at0, zn.re, "cos family at degree {}", n);
            // sin family: r^n sin theta C_{n-1}^{kappa+1}; normalize the
            // Gegenbauer factor by (n-1)!/(2 kappa + 2)_{n-1}, evaluated at
            // kappa = 0 where it is regular.
            let norm1 = &Scalar::from_int(fact / i64::from(n))
                * &pochhammer(
                    &(&(&Scalar::from_int(2) * &k) + &Scalar::from_int(2)),
                    n - 1,
                )
                .inverse()
                .unwrap();
            let at0 = p1
                .scale(&norm1)
                .substitute_params(&[Scalar::zero(), Scalar::zero()])
                .unwrap();
            // r^n sin theta C_{n-1}^1(cos theta) normalized gives
            // r^n sin(n theta)/n * n = Im z^n after the monic normalization
            // times n (since C_{n-1}^1(cos) = sin(n theta)/sin(theta)).
            assert_eq!(at0.scale(&Scalar::from_int(i64::from(n))), zn.im);
        }
    }

    #[test]
    fn z2z2_examples_and_harmonicity() {
        let (ka, kb) = (k0(), k1());
        let ctx = ctx_z2z2();
        // Degree-1 entries.
        let deg1 = z2z2_harmonics(1, &ka, &kb).unwrap();
        assert_eq!(deg1[0], ("10".to_string(), Polynomial::var(2, 0)));
        assert_eq!(deg1[1], ("01".to_string(), Polynomial::var(2, 1)));
        // p_{2,00} = (k1+k2+1)(x1^2 - x2^2)/2 + (k2-k1)(x1^2 + x2^2)/2.
        let deg2 = z2z2_harmonics(2, &ka, &kb).unwrap();
        let x1sq = &Polynomial::var(2, 0) * &Polynomial::var(2, 0);
        let x2sq = &Polynomial::var(2, 1) * &Polynomial::var(2, 1);
        let half = Scalar::from_frac(1, 2);
        let sum_k = &(&ka + &kb) + &Scalar::one();
        let expect = &(&x1sq - &x2sq).scale(&(&sum_k * &half))
            + &(&x1sq + &x2sq).scale(&(&(&kb - &ka) * &half));
        assert_eq!(deg2[0].1, expect);
        // p_{2,11} = 2 x1 x2.
        assert_eq!(
            deg2[1].1,
            (&Polynomial::var(2, 0) * &Polynomial::var(2, 1)).scale(&Scalar::from_int(2))
        );
        // Exact harmonicity through degree 8.
        for n in 1..=8u32 {
            for (tag, p) in z2z2_harmonics(n, &ka, &kb).unwrap() {
                assert_eq!(p.homogeneous_degree(), Some(n));
                assert!(
                    laplacian_apply(&ctx, &p).unwrap().is_zero(),
                    "p_{{{},{}}}",
                    n,
                    tag
                );
            }
        }
    }

    #[test]
    fn z2z2_matches_harmonic_basis_dimension() {
        let ctx = ctx_z2z2();
        for n in 1..=4u32 {
            assert_eq!(harmonic_basis(&ctx, n).unwrap().len(), 2);
            assert_eq!(z2z2_harmonics(n, &k0(), &k1()).unwrap().len(), 2);
        }
    }

    #[test]
    fn dihedral_even_exact_i24() {
        // The I2(4) family must be annihilated by the exact B2-realized
        // Laplacian with kappa_1 on the diagonal mirrors and kappa_2 on the
        // axes.
        let ctx = ctx_i24();
        let fam = dihedral_harmonics(4, 8, &[k0(), k1()]).unwrap();
        assert_eq!(fam.group, "I2(4)");
        let mut seen = [0u32; 9];
        for ((deg, tag), p) in &fam.entries {
            if *deg == 0 {
                continue;
            }
            seen[*deg as usize] += 1;
            assert_eq!(p.homogeneous_degree(), Some(*deg), "degree {} {}", deg, tag);
            assert!(
                laplacian_apply(&ctx, p).unwrap().is_zero(),
                "degree {} tag {}",
                deg,
                tag
            );
        }
        // Two independent harmonics per positive degree.
        for (n, &count) in seen.iter().enumerate().skip(1) {
            assert_eq!(count, 2, "degree {}", n);
        }
        assert_eq!(harmonic_basis(&ctx, 4).unwrap().len(), 2);
    }

    #[test]
    fn dihedral_odd_small_degrees() {
        // m = 3: degrees 1 and 2 are Re z^j, Im z^j; degree 3 is the
        // composed Z2 pair.
        let fam = dihedral_harmonics(3, 3, &[k0()]).unwrap();
        let z1 = z_power(1);
        let z2 = z_power(2);
        assert_eq!(fam.entries[&(1, "re".into())], z1.re);
        assert_eq!(fam.entries[&(1, "im".into())], z1.im);
        assert_eq!(fam.entries[&(2, "re".into())], z2.re);
        assert_eq!(fam.entries[&(2, "im".into())], z2.im);
        let z3 = z_power(3);
        let (p0, p1) = z2_harmonics(1, &k0()).unwrap();
        let p0c = p0.substitute(&[z3.re.clone(), z3.im.clone()]).unwrap();
        let p1c = p1.substitute(&[z3.re.clone(), z3.im.clone()]).unwrap();
        assert_eq!(fam.entries[&(3, "0".into())], p0c);
        assert_eq!(fam.entries[&(3, "1".into())], p1c);
        // q_0 = 1 in the even family.
        let even = dihedral_harmonics(6, 2, &[k0(), k1()]).unwrap();
        assert_eq!(even.entries[&(0, "re".into())], Polynomial::one(2));
    }

    #[test]
    fn dihedral_kappa_zero_is_singular_for_odd_m() {
        // Degree 4 = 1*3 + 1 needs the (n + 2 kappa)/(2 kappa) factor.
        assert!(matches!(
            dihedral_harmonics(3, 4, &[Scalar::zero()]),
            Err(Error::ZeroDenominator(_))
        ));
        // Degrees below m never need it.
        assert!(dihedral_harmonics(3, 2, &[Scalar::zero()]).is_ok());
    }

    #[test]
    fn dihedral_numeric_harmonicity_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for (m, kappas) in [
            (3usize, vec![0.3]),
            (3, vec![0.7]),
            (3, vec![1.5]),
            (5, vec![0.7]),
            (6, vec![0.3, 1.5]),
            (6, vec![0.7, 0.7]),
        ] {
            let sym: Vec<Scalar> = (0..kappas.len()).map(Scalar::param).collect();
            let fam = dihedral_harmonics(m, 6, &sym).unwrap();
            let mut params = kappas.clone();
            params.resize(2, 0.0);
            for ((deg, tag), p) in &fam.entries {
                if *deg == 0 {
                    continue;
                }
                // Coefficient scale for the relative tolerance.
                let scale: f64 = p
                    .iter()
                    .map(|(_, c)| c.eval_f64(&params).abs())
                    .sum::<f64>()
                    .max(1.0);
                let mut samples = 0;
                while samples < 50 {
                    let x = [rng.gen_range(0.2..1.0), rng.gen_range(0.2..1.0)];
                    // Stay away from the mirrors: the divided differences
                    // divide by <x, v>^2, which amplifies rounding noise.
                    let near_mirror = (0..m).any(|k| {
                        let theta = k as f64 * std::f64::consts::PI / m as f64;
                        (x[0] * -theta.sin() + x[1] * theta.cos()).abs() < 0.15
                    });
                    if near_mirror {
                        continue;
                    }
                    samples += 1;
                    let lap = dihedral_laplacian_eval(m, &kappas, p, &params, x);
                    assert!(
                        lap.abs() < 1e-10 * scale,
                        "I2({}) degree {} tag {}: |lap| = {:e}",
                        m,
                        deg,
                        tag,
                        lap.abs()
                    );
                }
            }
        }
    }

    #[test]
    fn z2_harmonics_match_harmonic_basis_space() {
        // The Z2 pair spans the same space the Gram-based construction finds.
        let ctx = ctx_z2();
        for n in 1..=4u32 {
            let basis = harmonic_basis(&ctx, n).unwrap();
            assert_eq!(basis.len(), 2);
            let (p0, p1) = z2_harmonics(n, &k0()).unwrap();
            // Each of p0, p1 is harmonic, homogeneous of degree n, and they
            // are linearly independent (one even, one odd in x_2).
            assert!(laplacian_apply(&ctx, &p0).unwrap().is_zero());
            assert!(laplacian_apply(&ctx, &p1).unwrap().is_zero());
            let e = ExpVec(vec![0, n]);
            // p1 has odd x_2-degree terms only; p0 even only.
            for (exp, _) in p0.iter() {
                assert_eq!(exp.0[1] % 2, 0);
            }
            for (exp, _) in p1.iter() {
                assert_eq!(exp.0[1] % 2, 1);
            }
            let _ = e;
        }
    }
}
