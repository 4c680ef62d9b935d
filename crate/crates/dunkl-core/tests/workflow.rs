//! Integration scenarios exercising the public API the way a user session
//! would: harmonic analysis on B2, exact-versus-numeric kernel agreement,
//! Jack polynomial norms against the bilinear form, and heat kernel sanity.

use dunkl_core::dunkl::{
    dunkl_apply, harmonic_basis, harmonic_project, kappa_form, kernel_poly, laplacian_apply,
    DunklContext,
};
use dunkl_core::jack::{symmetric_jack, zeta, Composition};
use dunkl_core::numeric::{heat_kernel_eval, KernelSeries};
use dunkl_core::poly::Polynomial;
use dunkl_core::roots::{MultiplicitySpec, RootSystem, TypeTag};
use dunkl_core::scalar::{rat, Rational};

fn symbolic_ctx(tag: TypeTag) -> DunklContext {
    let rs = RootSystem::build(tag).unwrap();
    let spec = MultiplicitySpec::symbolic(rs.num_classes).unwrap();
    DunklContext::new(rs, spec).unwrap()
}

fn rational_ctx(tag: TypeTag, kappas: &[Rational]) -> DunklContext {
    let rs = RootSystem::build(tag).unwrap();
    DunklContext::new(rs, MultiplicitySpec::rational(kappas)).unwrap()
}

#[test]
fn b2_harmonic_analysis_session() {
    let ctx = symbolic_ctx(TypeTag::B(2));

    // Degree-3 harmonics: a plane has two per degree, both killed by the
    // Laplacian and orthogonal under the kappa form.
    let basis = harmonic_basis(&ctx, 3).unwrap();
    assert_eq!(basis.len(), 2);
    for h in &basis {
        assert!(laplacian_apply(&ctx, h).unwrap().is_zero());
    }
    for (i, hi) in basis.iter().enumerate() {
        for hj in basis.iter().skip(i + 1) {
            assert!(kappa_form(&ctx, hi, hj).unwrap().is_zero());
        }
    }

    // Projecting any degree-3 polynomial leaves a harmonic one that differs
    // from the original by |x|^2 times a lower-degree polynomial.
    let p = Polynomial::parse("x1^3 + 2*x1*x2^2 - x2^3", 2).unwrap();
    let proj = harmonic_project(&ctx, &p).unwrap();
    assert!(laplacian_apply(&ctx, &proj).unwrap().is_zero());
    // The non-harmonic remainder is orthogonal to every degree-3 harmonic.
    let diff = &p - &proj;
    for h in &basis {
        assert!(kappa_form(&ctx, &diff, h).unwrap().is_zero());
    }
}

#[test]
fn exact_and_numeric_kernels_agree() {
    // The exact kernel polynomials and the float kernel series are built by
    // entirely different code paths; they must agree at evaluation points.
    let kappas = [rat(1, 3), rat(3, 4)];
    let ctx = rational_ctx(TypeTag::B(2), &kappas);
    let series = KernelSeries::new(&ctx).unwrap();
    let x = [0.4, -0.3];
    let y = [-0.2, 0.5];
    for n in 0..=6u32 {
        let exact_poly = kernel_poly(&ctx, n).unwrap();
        let mut point = Vec::new();
        point.extend_from_slice(&x);
        point.extend_from_slice(&y);
        let exact = exact_poly.eval_f64(&point, &[]);
        let numeric = series.term_value(n as usize, &x, &y).unwrap();
        assert!(
            (exact - numeric).abs() <= 1e-12 * exact.abs().max(1.0),
            "degree {}: exact {} vs numeric {}",
            n,
            exact,
            numeric
        );
    }
}

#[test]
fn jack_norms_match_the_bilinear_form() {
    let ctx = symbolic_ctx(TypeTag::A(2));
    for parts in [vec![2, 0, 0], vec![0, 1, 1], vec![1, 2, 0]] {
        let z = zeta(&ctx, &Composition::new(parts)).unwrap();
        let form = kappa_form(&ctx, &z.poly, &z.poly).unwrap();
        assert_eq!(form, z.norm);
    }

    // The symmetric Jack polynomial is an eigenvector of the same form.
    let (j, norm) = symmetric_jack(&ctx, &Composition::new(vec![2, 1, 0])).unwrap();
    assert_eq!(kappa_form(&ctx, &j, &j).unwrap(), norm);
}

#[test]
fn dunkl_operators_lower_degree_and_commute_on_a_sample() {
    let ctx = symbolic_ctx(TypeTag::B(2));
    let p = Polynomial::parse("x1^4 - 3*x1^2*x2^2 + x2^4", 2).unwrap();
    let e1 = [rat(1, 1), rat(0, 1)];
    let e2 = [rat(0, 1), rat(1, 1)];
    let d1 = dunkl_apply(&ctx, &e1, &p).unwrap();
    let d2 = dunkl_apply(&ctx, &e2, &p).unwrap();
    assert_eq!(d1.total_degree(), 3);
    let d12 = dunkl_apply(&ctx, &e2, &d1).unwrap();
    let d21 = dunkl_apply(&ctx, &e1, &d2).unwrap();
    assert_eq!(d12, d21);
}

#[test]
fn heat_kernel_is_symmetric_and_positive() {
    let ctx = rational_ctx(TypeTag::Z2(2), &[rat(1, 2), rat(2, 3)]);
    for &(t, x, y) in &[
        (0.5, [0.3, -0.7], [1.1, 0.2]),
        (1.5, [0.0, 0.4], [-0.6, -0.1]),
    ] {
        let fwd = heat_kernel_eval(&ctx, t, &x, &y, 1e-12).unwrap();
        let bwd = heat_kernel_eval(&ctx, t, &y, &x, 1e-12).unwrap();
        assert!(fwd > 0.0);
        assert!((fwd - bwd).abs() <= 1e-12 * fwd.abs());
    }
}

#[test]
fn polynomial_json_survives_a_symbolic_round_trip() {
    let ctx = symbolic_ctx(TypeTag::B(2));
    let p = Polynomial::parse("x1^3 - x1*x2^2", 2).unwrap();
    let proj = harmonic_project(&ctx, &p).unwrap();
    let doc = proj.to_json();
    let back = Polynomial::from_json(&doc).unwrap();
    assert_eq!(back, proj);
}
