//! Dunkl operator calculus: the operators `D_a`, the Dunkl Laplacian, the
//! kappa and Gaussian bilinear forms, `exp(s Laplacian)`, the operators `V0`
//! and `V`, reproducing kernels, harmonic projections and bases, the Poisson
//! kernel, radicals, and the Macdonald–Mehta closed forms.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{ExpVec, Polynomial};
use crate::roots::{dot, norm2, MultiplicitySpec, RootSystem, TypeTag};
use crate::scalar::{pochhammer, rat, rat_int, Rational, Scalar};

/// Cached per-degree data for the intertwining operator.
struct DegreeCache {
    monomials: Vec<ExpVec>,
    index: HashMap<ExpVec, usize>,
    /// Inverse of the matrix of V0 on the monomial basis (column `j` holds
    /// the coefficients of `V(x^monomials[j])`).
    v0_inverse: Vec<Vec<Scalar>>,
}

/// A root system equipped with a multiplicity function.
pub struct DunklContext {
    /// The underlying root system.
    pub rs: RootSystem,
    /// Multiplicity values, one per reflection class.
    pub kappa: MultiplicitySpec,
    /// `gamma = sum over positive roots of kappa(v)`.
    pub gamma: Scalar,
    cache: RefCell<HashMap<usize, std::rc::Rc<DegreeCache>>>,
    gram_cache: RefCell<HashMap<usize, std::rc::Rc<Vec<Vec<Scalar>>>>>,
}

impl DunklContext {
    /// Pair a root system with a multiplicity assignment.
    pub fn new(rs: RootSystem, kappa: MultiplicitySpec) -> Result<Self> {
        if kappa.values.len() != rs.num_classes {
            return Err(Error::LengthMismatch(kappa.values.len(), rs.num_classes));
        }
        let mut gamma = Scalar::zero();
        for k in 0..rs.num_positive() {
            gamma = &gamma + &kappa.values[rs.class_of_positive(k)];
        }
        Ok(DunklContext {
            rs,
            kappa,
            gamma,
            cache: RefCell::new(HashMap::new()),
            gram_cache: RefCell::new(HashMap::new()),
        })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.rs.dim
    }

    /// Multiplicity value on the positive root with index `k` in the
    /// positive-root list.
    pub fn kappa_of_positive(&self, k: usize) -> &Scalar {
        &self.kappa.values[self.rs.class_of_positive(k)]
    }

    /// Stable textual identity of this context (root list plus multiplicity
    /// values), suitable for keying persisted caches.
    pub fn cache_key(&self) -> String {
        let roots: Vec<String> = self
            .rs
            .roots
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let kappas: Vec<String> = self.kappa.values.iter().map(|v| v.to_string()).collect();
        format!(
            "{} dim={} roots=[{}] kappa=[{}]",
            self.rs.tag,
            self.rs.dim,
            roots.join(";"),
            kappas.join(";")
        )
    }

    /// Export the cached intertwining matrices as JSON: one entry per
    /// computed degree, each a square matrix of scalar strings in the
    /// canonical monomial order of that degree.
    pub fn export_v0_cache(&self) -> serde_json::Value {
        let cache = self.cache.borrow();
        let mut degrees = serde_json::Map::new();
        for (&n, dc) in cache.iter() {
            let matrix: Vec<Vec<String>> = dc
                .v0_inverse
                .iter()
                .map(|row| row.iter().map(|s| s.to_string()).collect())
                .collect();
            degrees.insert(n.to_string(), serde_json::json!(matrix));
        }
        serde_json::Value::Object(degrees)
    }

    /// Install previously exported intertwining matrices. Entries with the
    /// wrong shape are rejected; the count of degrees imported is returned.
    /// The cache only affects speed, never results, so callers may treat
    /// failures as advisory.
    pub fn import_v0_cache(&self, data: &serde_json::Value) -> Result<usize> {
        let obj = data
            .as_object()
            .ok_or_else(|| Error::Parse("cache: expected an object".into()))?;
        let mut imported = 0;
        for (key, matrix) in obj {
            let n: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("cache: bad degree key {}", key)))?;
            let monomials = monomials_of_degree(self.dim(), n as u32);
            let k = monomials.len();
            let rows = matrix
                .as_array()
                .ok_or_else(|| Error::Parse("cache: expected a matrix".into()))?;
            if rows.len() != k {
                return Err(Error::DimensionMismatch(rows.len(), k));
            }
            let mut v0_inverse = Vec::with_capacity(k);
            for row in rows {
                let cells = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("cache: expected a matrix row".into()))?;
                if cells.len() != k {
                    return Err(Error::DimensionMismatch(cells.len(), k));
                }
                let mut out = Vec::with_capacity(k);
                for c in cells {
                    let text = c
                        .as_str()
                        .ok_or_else(|| Error::Parse("cache: expected a scalar string".into()))?;
                    out.push(text.parse::<Scalar>()?);
                }
                v0_inverse.push(out);
            }
            let index: HashMap<ExpVec, usize> = monomials
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, e)| (e, i))
                .collect();
            self.cache.borrow_mut().insert(
                n,
                std::rc::Rc::new(DegreeCache {
                    monomials,
                    index,
                    v0_inverse,
                }),
            );
            imported += 1;
        }
        Ok(imported)
    }
}

/// Tagged operator output recording the degree shift on homogeneous input.
#[derive(Clone, Debug)]
pub struct OperatorResult {
    /// The resulting polynomial.
    pub poly: Polynomial,
    /// Degree shift: -1 for a Dunkl operator, -2 for the Laplacian.
    pub degree_delta: i32,
}

/// The Dunkl operator `D_a p = <grad p, a> + sum_v kappa(v) dd(p, v) <v, a>`.
pub fn dunkl_apply(ctx: &DunklContext, a: &[Rational], p: &Polynomial) -> Result<Polynomial> {
    if a.len() != ctx.dim() || p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(a.len().max(p.dim()), ctx.dim()));
    }
    if p.is_zero() {
        return Ok(Polynomial::zero(ctx.dim()));
    }
    let mut out = Polynomial::zero(ctx.dim());
    for (i, ai) in a.iter().enumerate() {
        if !ai.is_zero() {
            let mut d = p.partial_derivative(i);
            d = d.scale(&Scalar::from_rational(ai.clone()));
            out = &out + &d;
        }
    }
    for (k, v) in ctx.rs.positive_roots().enumerate() {
        let va = dot(v, a);
        if va.is_zero() {
            continue;
        }
        let kv = ctx.kappa_of_positive(k);
        if kv.is_zero() {
            continue;
        }
        let dd = p.divided_difference(v)?;
        let c = kv * &Scalar::from_rational(va);
        out = &out + &dd.scale(&c);
    }
    Ok(out)
}

/// `dunkl_apply` with the degree bookkeeping attached.
pub fn dunkl_apply_tracked(
    ctx: &DunklContext,
    a: &[Rational],
    p: &Polynomial,
) -> Result<OperatorResult> {
    Ok(OperatorResult {
        poly: dunkl_apply(ctx, a, p)?,
        degree_delta: -1,
    })
}

fn unit_vec(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat_int(0); d];
    v[i] = rat_int(1);
    v
}

/// The Dunkl Laplacian, computed by its differential-difference formula:
/// the ordinary Laplacian plus, for each positive root, the exact quotient
/// `(2 <grad p, v> <x,v> - |v|^2 (p - s_v p)) / <x,v>^2` weighted by
/// `kappa(v)`. Both divisions are asserted exact.
pub fn laplacian_apply(ctx: &DunklContext, p: &Polynomial) -> Result<Polynomial> {
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(p.dim(), ctx.dim()));
    }
    if p.is_zero() {
        return Ok(Polynomial::zero(ctx.dim()));
    }
    let d = ctx.dim();
    let mut out = Polynomial::zero(d);
    for i in 0..d {
        out = &out + &p.partial_derivative(i).partial_derivative(i);
    }
    for (k, v) in ctx.rs.positive_roots().enumerate() {
        let kv = ctx.kappa_of_positive(k).clone();
        if kv.is_zero() {
            continue;
        }
        // grad_v = <grad p, v>
        let mut grad_v = Polynomial::zero(d);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                let t = p.partial_derivative(i).scale(&Scalar::from_rational(vi.clone()));
                grad_v = &grad_v + &t;
            }
        }
        // First exact division: (p - s_v p) / <x,v>.
        let dd1 = p.divided_difference(v)?;
        // r = 2 <grad p, v> - |v|^2 dd1 is again divisible by <x,v>.
        let r = &grad_v.scale(&Scalar::from_int(2))
            - &dd1.scale(&Scalar::from_rational(norm2(v)));
        let quotient = r.div_linear_exact(&Polynomial::linear_form(v))?;
        out = &out + &quotient.scale(&kv);
    }
    Ok(out)
}

/// `laplacian_apply` with the degree bookkeeping attached.
pub fn laplacian_apply_tracked(ctx: &DunklContext, p: &Polynomial) -> Result<OperatorResult> {
    Ok(OperatorResult {
        poly: laplacian_apply(ctx, p)?,
        degree_delta: -2,
    })
}

/// Apply the monomial of Dunkl operators `D^e = D_1^{e_1} ... D_d^{e_d}`.
fn dunkl_power(ctx: &DunklContext, e: &ExpVec, p: &Polynomial) -> Result<Polynomial> {
    let d = ctx.dim();
    let mut cur = p.clone();
    for i in 0..d {
        for _ in 0..e.0[i] {
            if cur.is_zero() {
                return Ok(cur);
            }
            cur = dunkl_apply(ctx, &unit_vec(d, i), &cur)?;
        }
    }
    Ok(cur)
}

/// `rho(p) q`: substitute Dunkl operators for the variables of `p` and apply
/// the resulting operator to `q`. The operators commute, so the term order is
/// irrelevant.
pub fn rho_apply(ctx: &DunklContext, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.dim() != ctx.dim() || q.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(p.dim().max(q.dim()), ctx.dim()));
    }
    let mut out = Polynomial::zero(ctx.dim());
    for (e, c) in p.iter() {
        let applied = dunkl_power(ctx, e, q)?;
        if !applied.is_zero() {
            out = &out + &applied.scale(c);
        }
    }
    Ok(out)
}

/// The bilinear form `<p, q>_kappa = rho(p) q |_{x=0}`. Homogeneous
/// components of distinct degrees pair to zero, so only matching degrees are
/// computed.
pub fn kappa_form(ctx: &DunklContext, p: &Polynomial, q: &Polynomial) -> Result<Scalar> {
    if p.dim() != ctx.dim() || q.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(p.dim().max(q.dim()), ctx.dim()));
    }
    let qs = q.homogeneous_components();
    let mut total = Scalar::zero();
    for (n, pn) in p.homogeneous_components() {
        let Some(qn) = qs.iter().find(|(m, _)| *m == n).map(|(_, q)| q) else {
            continue;
        };
        for (e, c) in pn.iter() {
            let applied = dunkl_power(ctx, e, qn)?;
            let constant = applied.coeff(&ExpVec::constant(ctx.dim()));
            if !constant.is_zero() {
                total = &total + &(c * &constant);
            }
        }
    }
    Ok(total)
}

/// `exp(s Laplacian) p`, a terminating series on polynomials; the inverse of
/// `exp_laplacian(s, .)` is `exp_laplacian(-s, .)`.
pub fn exp_laplacian(ctx: &DunklContext, s: &Scalar, p: &Polynomial) -> Result<Polynomial> {
    let mut out = p.clone();
    let mut term = p.clone();
    let mut j: u64 = 0;
    loop {
        term = laplacian_apply(ctx, &term)?;
        if term.is_zero() {
            return Ok(out);
        }
        j += 1;
        // term now holds Laplacian^j p; add s^j / j! * term.
        let mut c = Scalar::one();
        for m in 1..=j {
            c = &(&c * s) / &Scalar::from_int(m as i64);
        }
        out = &out + &term.scale(&c);
    }
}

/// The Gaussian form `<p, q>_g = <exp(L/2) p, exp(L/2) q>_kappa`.
pub fn gaussian_form(ctx: &DunklContext, p: &Polynomial, q: &Polynomial) -> Result<Scalar> {
    let half = Scalar::from_frac(1, 2);
    let ep = exp_laplacian(ctx, &half, p)?;
    let eq = exp_laplacian(ctx, &half, q)?;
    kappa_form(ctx, &ep, &eq)
}

/// Monomial exponents of total degree `n` in `d` variables, in descending
/// graded-lex order.
pub fn monomials_of_degree(d: usize, n: u32) -> Vec<ExpVec> {
    fn rec(d: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExpVec>) {
        if pos == d - 1 {
            cur.push(left);
            out.push(ExpVec(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(d, pos + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(d, 0, n, &mut Vec::new(), &mut out);
    out
}

fn factorial_exp(e: &ExpVec, d: usize) -> Scalar {
    let mut f = rat_int(1);
    for i in 0..d {
        for m in 2..=e.0[i] as i64 {
            f *= rat_int(m);
        }
    }
    Scalar::from_rational(f)
}

/// `V0` on a homogeneous polynomial of degree `n`: the sum over `|e| = n` of
/// `(D^e p)(0) / e! * x^e`. Shared derivative prefixes are computed once by
/// walking the variables depth-first.
fn v0_homogeneous(ctx: &DunklContext, p: &Polynomial, _n: u32) -> Result<Polynomial> {
    fn rec(
        ctx: &DunklContext,
        cur: &Polynomial,
        var: usize,
        exp: &mut Vec<u32>,
        out: &mut Polynomial,
    ) -> Result<()> {
        if cur.is_zero() {
            return Ok(());
        }
        let d = ctx.dim();
        if var == d {
            if cur.total_degree() == 0 {
                let e = ExpVec(exp.clone());
                let c = &cur.coeff(&ExpVec::constant(d)) / &factorial_exp(&e, d);
                *out = &*out + &Polynomial::monomial(d, &e.0, c);
            }
            return Ok(());
        }
        let mut q = cur.clone();
        let mut count = 0u32;
        loop {
            exp.push(count);
            rec(ctx, &q, var + 1, exp, out)?;
            exp.pop();
            q = dunkl_apply(ctx, &unit_vec(d, var), &q)?;
            if q.is_zero() {
                return Ok(());
            }
            count += 1;
        }
    }
    let mut out = Polynomial::zero(ctx.dim());
    rec(ctx, p, 0, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// The operator `V0`: degree-preserving, with `V0 1 = 1`.
pub fn v0_apply(ctx: &DunklContext, p: &Polynomial) -> Result<Polynomial> {
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(p.dim(), ctx.dim()));
    }
    let mut out = Polynomial::zero(ctx.dim());
    for (n, pn) in p.homogeneous_components() {
        out = &out + &v0_homogeneous(ctx, &pn, n)?;
    }
    Ok(out)
}

/// Gauss–Jordan inverse over the exact scalar field.
fn invert_scalar_matrix(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| {
            Error::SingularParameter(format!(
                "V0 matrix is singular at this kappa (pivot column {})",
                col
            ))
        })?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] = &a[col][c] / &p;
            inv[col][c] = &inv[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let s1 = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &s1;
                    let s2 = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &s2;
                }
            }
        }
    }
    Ok(inv)
}

/// Null space (column-vector basis) of a rectangular matrix over the scalar
/// field; `cols` is the column count.
#[allow(clippy::needless_range_loop)]
fn nullspace_scalar_matrix(m: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let rows = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let piv = a[row][col].clone();
        for c in 0..cols {
            a[row][c] = &a[row][c] / &piv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let s = &f * &a[row][c];
                    a[r][c] = &a[r][c] - &s;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        basis.push(v);
    }
    basis
}

impl DunklContext {
    /// Gram matrix of the kappa form on the degree-`n` monomial basis,
    /// built degree by degree from the adjoint relation
    /// `<x_i p, q> = <p, D_i q>` (cached).
    fn gram_matrix(&self, n: u32) -> Result<std::rc::Rc<Vec<Vec<Scalar>>>> {
        if let Some(g) = self.gram_cache.borrow().get(&(n as usize)) {
            return Ok(g.clone());
        }
        let d = self.dim();
        let gram = if n == 0 {
            vec![vec![Scalar::one()]]
        } else {
            let prev = self.gram_matrix(n - 1)?;
            let monomials = monomials_of_degree(d, n);
            let k = monomials.len();
            let lower = monomials_of_degree(d, n - 1);
            let lower_index: HashMap<ExpVec, usize> = lower
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, e)| (e, i))
                .collect();
            // Coefficient vectors of D_i x^f on the degree-(n-1) basis.
            let mut images: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(d);
            for i in 0..d {
                let ei = unit_vec(d, i);
                let mut per = Vec::with_capacity(k);
                for f in &monomials {
                    let img =
                        dunkl_apply(self, &ei, &Polynomial::monomial(d, &f.0, Scalar::one()))?;
                    let mut vec = vec![Scalar::zero(); lower.len()];
                    for (e2, c) in img.iter() {
                        vec[lower_index[e2]] = c.clone();
                    }
                    per.push(vec);
                }
                images.push(per);
            }
            let mut g = vec![vec![Scalar::zero(); k]; k];
            for r in 0..k {
                let e = &monomials[r];
                let i = e.0.iter().position(|&a| a > 0).expect("degree >= 1");
                let mut e_low = e.0.clone();
                e_low[i] -= 1;
                let prow = &prev[lower_index[&ExpVec(e_low)]];
                for c_idx in 0..k {
                    if c_idx < r {
                        // The form is symmetric.
                        g[r][c_idx] = g[c_idx][r].clone();
                        continue;
                    }
                    let img = &images[i][c_idx];
                    let mut acc = Scalar::zero();
                    for (t, coeff) in img.iter().enumerate() {
                        if !coeff.is_zero() && !prow[t].is_zero() {
                            acc = &acc + &(coeff * &prow[t]);
                        }
                    }
                    g[r][c_idx] = acc;
                }
            }
            g
        };
        let rc = std::rc::Rc::new(gram);
        self.gram_cache
            .borrow_mut()
            .insert(n as usize, rc.clone());
        Ok(rc)
    }

    fn degree_cache(&self, n: u32) -> Result<std::rc::Rc<DegreeCache>> {
        if let Some(c) = self.cache.borrow().get(&(n as usize)) {
            return Ok(c.clone());
        }
        let d = self.dim();
        let monomials = monomials_of_degree(d, n);
        let k = monomials.len();
        let index: HashMap<ExpVec, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        // The degree-n reproducing kernel of the kappa form has coefficient
        // matrix G^{-1} on monomial pairs, and it also expands as
        // sum_e x^e V(y^e) / e!; matching the two gives
        // V(x^e) = e! sum_f (G^{-1})_{ef} x^f, so the columns of the cached
        // matrix come from the inverse Gram matrix.
        let gram = self.gram_matrix(n)?;
        let inv = invert_scalar_matrix(&gram)?;
        let mut v0_inverse = vec![vec![Scalar::zero(); k]; k];
        for (col, e) in monomials.iter().enumerate() {
            let fe = factorial_exp(e, d);
            for (row, out) in v0_inverse.iter_mut().enumerate() {
                if !inv[col][row].is_zero() {
                    out[col] = &inv[col][row] * &fe;
                }
            }
        }
        let entry = std::rc::Rc::new(DegreeCache {
            monomials,
            index,
            v0_inverse,
        });
        self.cache
            .borrow_mut()
            .insert(n as usize, entry.clone());
        Ok(entry)
    }
}

/// Gram matrix of the kappa form on the degree-`n` monomial basis of
/// [`monomials_of_degree`], as a shared exact matrix (cached on the context).
pub fn kappa_gram(ctx: &DunklContext, n: u32) -> Result<std::rc::Rc<Vec<Vec<Scalar>>>> {
    ctx.gram_matrix(n)
}

/// The intertwining operator `V = V0^{-1}`, computed per homogeneous degree
/// by exact linear algebra (cached per degree).
pub fn v_apply(ctx: &DunklContext, p: &Polynomial) -> Result<Polynomial> {
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(p.dim(), ctx.dim()));
    }
    let mut out = Polynomial::zero(ctx.dim());
    for (n, pn) in p.homogeneous_components() {
        if n == 0 {
            out = &out + &pn;
            continue;
        }
        let cache = ctx.degree_cache(n)?;
        let k = cache.monomials.len();
        let mut b = vec![Scalar::zero(); k];
        for (e, c) in pn.iter() {
            b[cache.index[e]] = c.clone();
        }
        for (row, e) in cache.monomials.iter().enumerate() {
            let mut c = Scalar::zero();
            for (col, bv) in b.iter().enumerate() {
                if !bv.is_zero() {
                    c = &c + &(&cache.v0_inverse[row][col] * bv);
                }
            }
            if !c.is_zero() {
                out = &out + &Polynomial::monomial(ctx.dim(), &e.0, c);
            }
        }
    }
    Ok(out)
}

/// Concatenate exponent vectors for the two variable blocks of a kernel.
fn join_exp(a: &ExpVec, b: &ExpVec, d: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(2 * d);
    v.extend_from_slice(&a.0);
    v.extend_from_slice(&b.0);
    v
}

/// The reproducing kernel `K_n(x, y) = sum_{|e|=n} x^e V(y^e) / e!` as a
/// polynomial in 2d variables `x_1..x_d, y_1..y_d`.
pub fn kernel_poly(ctx: &DunklContext, n: u32) -> Result<Polynomial> {
    let d = ctx.dim();
    if n == 0 {
        return Ok(Polynomial::one(2 * d));
    }
    let cache = ctx.degree_cache(n)?;
    let mut out = Polynomial::zero(2 * d);
    for (j, e) in cache.monomials.iter().enumerate() {
        let fe = factorial_exp(e, d);
        for (row, f) in cache.monomials.iter().enumerate() {
            let c = &cache.v0_inverse[row][j];
            if !c.is_zero() {
                out = &out + &Polynomial::monomial(2 * d, &join_exp(e, f, d), c / &fe);
            }
        }
    }
    Ok(out)
}

/// `|x|^2` on the first (block = 0) or second (block = 1) variable block of a
/// 2d-variable polynomial space, or on the whole space when `total_dim == d`.
fn norm_square_poly(total_dim: usize, d: usize, block: usize) -> Polynomial {
    let mut p = Polynomial::zero(total_dim);
    for i in 0..d {
        let mut e = vec![0u32; total_dim];
        e[block * d + i] = 2;
        p = &p + &Polynomial::monomial(total_dim, &e, Scalar::one());
    }
    p
}

/// The denominator Pochhammer `(-gamma - n + 2 - d/2)_j`, with a structured
/// error at numeric kappa when it vanishes.
fn projection_denominator(ctx: &DunklContext, n: u32, j: u32) -> Result<Scalar> {
    let base = &(&-&ctx.gamma - &Scalar::from_int(n as i64 - 2))
        - &Scalar::from_frac(ctx.dim() as i64, 2);
    let p = pochhammer(&base, j);
    if p.is_zero() {
        return Err(Error::SingularGamma(format!(
            "(-gamma - n + 2 - d/2)_j = 0 at n = {}, j = {}",
            n, j
        )));
    }
    Ok(p)
}

/// Harmonic projection of a homogeneous polynomial of degree `n`:
/// the sum over `j` of `|x|^{2j} Laplacian^j p / (4^j j! (-gamma-n+2-d/2)_j)`.
pub fn harmonic_project(ctx: &DunklContext, p: &Polynomial) -> Result<Polynomial> {
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch(p.dim(), ctx.dim()));
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    let n = p
        .homogeneous_degree()
        .expect("harmonic_project expects homogeneous input");
    if n <= 1 {
        return Ok(p.clone());
    }
    let d = ctx.dim();
    let r2 = norm_square_poly(d, d, 0);
    let mut out = Polynomial::zero(d);
    let mut lap = p.clone();
    let mut r2_power = Polynomial::one(d);
    let mut four_j_fact = Scalar::one();
    for j in 0..=(n / 2) {
        if j > 0 {
            lap = laplacian_apply(ctx, &lap)?;
            r2_power = &r2_power * &r2;
            four_j_fact = &four_j_fact * &Scalar::from_int(4 * j as i64);
        }
        if lap.is_zero() {
            break;
        }
        let den = &four_j_fact * &projection_denominator(ctx, n, j)?;
        let term = (&r2_power * &lap).scale(&den.inverse()?);
        out = &out + &term;
    }
    Ok(out)
}

/// Basis of the harmonic homogeneous polynomials of degree `n`, from the
/// exact null space of the Laplacian on the monomial basis.
pub fn harmonic_basis(ctx: &DunklContext, n: u32) -> Result<Vec<Polynomial>> {
    let d = ctx.dim();
    let monomials = monomials_of_degree(d, n);
    if n < 2 {
        return Ok(monomials
            .into_iter()
            .map(|e| Polynomial::monomial(d, &e.0, Scalar::one()))
            .collect());
    }
    let lower = monomials_of_degree(d, n - 2);
    let lower_index: HashMap<ExpVec, usize> = lower
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut mat = vec![vec![Scalar::zero(); monomials.len()]; lower.len()];
    for (j, e) in monomials.iter().enumerate() {
        let img = laplacian_apply(ctx, &Polynomial::monomial(d, &e.0, Scalar::one()))?;
        for (f, c) in img.iter() {
            mat[lower_index[f]][j] = c.clone();
        }
    }
    let basis = nullspace_scalar_matrix(&mat, monomials.len());
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero(d);
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    p = &p + &Polynomial::monomial(d, &monomials[j].0, c);
                }
            }
            p
        })
        .collect())
}

/// The degree-`n` Poisson kernel
/// `P_n = 2^n (gamma + d/2)_n sum_j |x|^{2j} |y|^{2j} K_{n-2j} /
/// (4^j j! (-gamma - n + 2 - d/2)_j)` in 2d variables.
pub fn poisson_kernel_poly(ctx: &DunklContext, n: u32) -> Result<Polynomial> {
    let d = ctx.dim();
    let gd2 = &ctx.gamma + &Scalar::from_frac(d as i64, 2);
    let mut front = pochhammer(&gd2, n);
    for _ in 0..n {
        front = &front * &Scalar::from_int(2);
    }
    let x2 = norm_square_poly(2 * d, d, 0);
    let y2 = norm_square_poly(2 * d, d, 1);
    let mut out = Polynomial::zero(2 * d);
    let mut radial = Polynomial::one(2 * d);
    let mut four_j_fact = Scalar::one();
    for j in 0..=(n / 2) {
        if j > 0 {
            radial = &(&radial * &x2) * &y2;
            four_j_fact = &four_j_fact * &Scalar::from_int(4 * j as i64);
        }
        let den = &four_j_fact * &projection_denominator(ctx, n, j)?;
        let kern = kernel_poly(ctx, n - 2 * j)?;
        let term = (&radial * &kern).scale(&den.inverse()?);
        out = &out + &term;
    }
    Ok(out.scale(&front))
}

/// Basis of the degree-`n` slice of the radical at numeric kappa: the null
/// space of the Gram matrix of the kappa form on monomials.
pub fn radical_basis(ctx: &DunklContext, n: u32) -> Result<Vec<Polynomial>> {
    for v in &ctx.kappa.values {
        if !v.is_constant() {
            return Err(Error::SymbolicParameterRemaining);
        }
    }
    let d = ctx.dim();
    let monomials = monomials_of_degree(d, n);
    let k = monomials.len();
    let mut gram = vec![vec![Scalar::zero(); k]; k];
    for (i, e) in monomials.iter().enumerate() {
        let pe = Polynomial::monomial(d, &e.0, Scalar::one());
        for (j, f) in monomials.iter().enumerate() {
            if j < i {
                gram[i][j] = gram[j][i].clone();
                continue;
            }
            let pf = Polynomial::monomial(d, &f.0, Scalar::one());
            gram[i][j] = kappa_form(ctx, &pe, &pf)?;
        }
    }
    let basis = nullspace_scalar_matrix(&gram, k);
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero(d);
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    p = &p + &Polynomial::monomial(d, &monomials[j].0, c);
                }
            }
            p
        })
        .collect())
}

/// Closed form for the kappa-norm of the discriminant of a one-class system
/// in the `|v|^2 = 2` normalization:
/// `#G * prod_i prod_{j=1}^{n_i - 1} (j + n_i kappa_0)`.
pub fn mm_discriminant_norm(ctx: &DunklContext) -> Result<Scalar> {
    if ctx.rs.num_classes != 1 {
        return Err(Error::NotOneClass);
    }
    let degrees = ctx
        .rs
        .degrees
        .clone()
        .ok_or_else(|| Error::UnsupportedType("degrees unavailable".into()))?;
    let kappa0 = &ctx.kappa.values[0];
    let mut out = Scalar::from_int(degrees.iter().map(|&n| n as i64).product());
    for &ni in &degrees {
        for j in 1..ni {
            let factor = &Scalar::from_int(j as i64)
                + &(&Scalar::from_int(ni as i64) * kappa0);
            out = &out * &factor;
        }
    }
    Ok(out)
}

/// The kappa-norm of the discriminant computed from first principles,
/// rescaled to the `|v|^2 = 2` normalization. Dunkl operators and the form
/// are invariant under rescaling individual roots, so only the discriminant
/// itself picks up the factor `prod_v (2 / |v|^2)`.
pub fn discriminant_norm_exact(ctx: &DunklContext) -> Result<Scalar> {
    let a = ctx.rs.alternating_polynomial();
    let mut f = kappa_form(ctx, &a, &a)?;
    for v in ctx.rs.positive_roots() {
        f = &f * &Scalar::from_rational(rat_int(2) / norm2(v));
    }
    Ok(f)
}

/// A Macdonald–Mehta constant as a symbolic record
/// `2^{log2} * prod Gamma(arg)^power`, with affine arguments in the
/// multiplicity parameters. Numeric evaluation lives in the numeric module.
#[derive(Clone, Debug, PartialEq)]
pub struct MmExpression {
    /// Exponent of 2.
    pub log2: Scalar,
    /// Gamma factors as (argument, integer power).
    pub gammas: Vec<(Scalar, i32)>,
}

fn affine(c: Rational, terms: &[(i64, usize)]) -> Scalar {
    let mut s = Scalar::from_rational(c);
    for &(m, p) in terms {
        s = &s + &(&Scalar::from_int(m) * &Scalar::param(p));
    }
    s
}

/// The Macdonald–Mehta constant record for a named type, with symbolic
/// multiplicity parameters. Class conventions:
///
/// * one-class types (including H3/H4 and odd dihedrals): parameter `k0`,
///   weight normalized so every root has squared length 2;
/// * `B(d)`: `k0` on the roots `e_i +- e_j`, `k1` on the `e_i`, weight
///   `prod |x_i|^{2 k1} prod |x_i^2 - x_j^2|^{2 k0}`;
/// * `I2(2m)`: `k0` on the class of `|z^m - conj(z)^m|`, `k1` on
///   `|z^m + conj(z)^m|`;
/// * `F4`: `k0` on the long roots `+-e_i +- e_j` (the `x`-coordinate product
///   of squared differences), `k1` on the short-root class.
pub fn mm_expression(tag: &TypeTag) -> Result<MmExpression> {
    use crate::roots::table_degrees;
    match tag {
        TypeTag::A(_)
        | TypeTag::D(_)
        | TypeTag::G2
        | TypeTag::E6
        | TypeTag::E7
        | TypeTag::E8
        | TypeTag::H3
        | TypeTag::H4 => {
            // G2 has two classes; only the genuinely one-class types here.
            if matches!(tag, TypeTag::G2) {
                return Err(Error::NotOneClass);
            }
            let degrees = table_degrees(tag).unwrap();
            let mut gammas = Vec::new();
            for &n in &degrees {
                gammas.push((affine(rat_int(1), &[(n as i64, 0)]), 1));
                gammas.push((affine(rat_int(1), &[(1, 0)]), -1));
            }
            Ok(MmExpression {
                log2: Scalar::zero(),
                gammas,
            })
        }
        TypeTag::Z2(d) => {
            let mut gammas = Vec::new();
            for _ in 0..*d {
                gammas.push((affine(rat_int(1), &[(2, 0)]), 1));
                gammas.push((affine(rat_int(1), &[(1, 0)]), -1));
            }
            Ok(MmExpression {
                log2: Scalar::zero(),
                gammas,
            })
        }
        TypeTag::I2(m) => {
            if m % 2 == 1 {
                // Odd dihedral groups are one-class.
                let mut gammas = Vec::new();
                for &n in &[2i64, *m as i64] {
                    gammas.push((affine(rat_int(1), &[(n, 0)]), 1));
                    gammas.push((affine(rat_int(1), &[(1, 0)]), -1));
                }
                return Ok(MmExpression {
                    log2: Scalar::zero(),
                    gammas,
                });
            }
            let half_m = (*m / 2) as i64;
            Ok(MmExpression {
                log2: affine(rat_int(0), &[(half_m, 0), (half_m, 1)]),
                gammas: vec![
                    (affine(rat_int(1), &[(2, 0)]), 1),
                    (affine(rat_int(1), &[(2, 1)]), 1),
                    (affine(rat_int(1), &[(half_m, 0), (half_m, 1)]), 1),
                    (affine(rat_int(1), &[(1, 0)]), -1),
                    (affine(rat_int(1), &[(1, 1)]), -1),
                    (affine(rat_int(1), &[(1, 0), (1, 1)]), -1),
                ],
            })
        }
        TypeTag::B(d) => {
            let dd = *d as i64;
            let mut gammas = Vec::new();
            for i in 1..=dd {
                gammas.push((affine(rat_int(1), &[(i, 0)]), 1));
                gammas.push((affine(rat(1, 2), &[(i - 1, 0), (1, 1)]), 1));
                gammas.push((affine(rat_int(1), &[(1, 0)]), -1));
                gammas.push((affine(rat(1, 2), &[]), -1));
            }
            Ok(MmExpression {
                log2: affine(rat_int(0), &[(dd * (dd - 1), 0), (dd, 1)]),
                gammas,
            })
        }
        TypeTag::F4 => Ok(MmExpression {
            log2: affine(rat_int(0), &[(12, 0), (12, 1)]),
            gammas: vec![
                (affine(rat(1, 2), &[(2, 0), (1, 1)]), 1),
                (affine(rat(1, 2), &[(1, 0), (2, 1)]), 1),
                (affine(rat(1, 2), &[(3, 0), (3, 1)]), 1),
                (affine(rat(1, 2), &[]), -3),
                (affine(rat_int(1), &[(4, 0), (4, 1)]), 1),
                (affine(rat_int(1), &[(1, 0), (1, 1)]), -1),
                (affine(rat_int(1), &[(2, 0)]), 1),
                (affine(rat_int(1), &[(3, 0)]), 1),
                (affine(rat_int(1), &[(1, 0)]), -2),
                (affine(rat_int(1), &[(2, 1)]), 1),
                (affine(rat_int(1), &[(3, 1)]), 1),
                (affine(rat_int(1), &[(1, 1)]), -2),
            ],
        }),
        TypeTag::Custom => Err(Error::UnsupportedType(
            "no Macdonald-Mehta closed form for custom systems".into(),
        )),
    }
}
