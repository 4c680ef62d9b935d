//! Sparse multivariate polynomials over the exact scalar field, with the
//! orthogonal-group action, divided differences, and evaluation.
//!
//! Monomials are ordered by graded lexicographic order (total degree first,
//! then lexicographic with `x1 > x2 > ...`), which also serves as the
//! deterministic iteration order and the triangular-solve order downstream.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Exponent vector of a monomial in `d` ambient variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    /// The constant monomial in dimension `d`.
    pub fn constant(d: usize) -> Self {
        ExpVec(vec![0; d])
    }

    /// The monomial `x_i` (0-based index) in dimension `d`.
    pub fn var(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        ExpVec(e)
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise sum.
    pub fn mul(&self, other: &ExpVec) -> ExpVec {
        ExpVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference when defined.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVec)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `dim` variables over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<ExpVec, Scalar>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut p = Polynomial::zero(dim);
        p.add_term(ExpVec::constant(dim), c);
        p
    }

    /// The unit polynomial.
    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Scalar::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        let mut p = Polynomial::zero(dim);
        p.add_term(ExpVec::var(dim, i), Scalar::one());
        p
    }

    /// A monomial with the given exponents and coefficient.
    pub fn monomial(dim: usize, exps: &[u32], c: Scalar) -> Self {
        assert_eq!(exps.len(), dim);
        let mut p = Polynomial::zero(dim);
        p.add_term(ExpVec(exps.to_vec()), c);
        p
    }

    /// The linear form `<x, v>` for a rational vector `v`.
    pub fn linear_form(v: &[Rational]) -> Self {
        let mut p = Polynomial::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            p.add_term(ExpVec::var(v.len(), i), Scalar::from_rational(c.clone()));
        }
        p
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True iff no terms are stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(exponent, coefficient)` in ascending graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&ExpVec, &Scalar)> {
        self.terms.iter()
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&ExpVec, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, e: &ExpVec) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Maximum total degree (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// The common homogeneous degree, or `None` for mixed input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Split into homogeneous components, ascending by degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Polynomial)> {
        let mut by_deg: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_deg
                .entry(e.degree())
                .or_insert_with(|| Polynomial::zero(self.dim))
                .add_term(e.clone(), c.clone());
        }
        by_deg.into_iter().collect()
    }

    /// Add a single term, dropping cancellations.
    pub fn add_term(&mut self, e: ExpVec, c: Scalar) {
        debug_assert_eq!(e.0.len(), self.dim);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Checked addition.
    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    /// Checked subtraction.
    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self - other)
    }

    /// Checked multiplication.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `x_i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[i] -= 1;
            out.add_term(e2, c * &Scalar::from_int(e.0[i] as i64));
        }
        out
    }

    /// Substitute `x_i -> forms[i]` for arbitrary polynomial forms.
    pub fn substitute(&self, forms: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(forms.len(), self.dim);
        let out_dim = forms.first().map(|f| f.dim).unwrap_or(self.dim);
        // Memoize powers of each form.
        let mut powers: Vec<Vec<Polynomial>> = forms
            .iter()
            .map(|f| vec![Polynomial::one(out_dim), f.clone()])
            .collect();
        let mut out = Polynomial::zero(out_dim);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(out_dim, c.clone());
            for (i, &exp) in e.0.iter().enumerate() {
                while powers[i].len() <= exp as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                if exp > 0 {
                    term = &term * &powers[i][exp as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Action of an orthogonal matrix with rational entries:
    /// `(wp)(x) = p(w^{-1} x)` with `w^{-1} = w^T`.
    ///
    /// `w` is row-major, `w[i][j]` the entry in row `i`, column `j`.
    pub fn apply_orthogonal(&self, w: &[Vec<Rational>]) -> Result<Polynomial> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch(w.len(), self.dim));
        }
        // (w^{-1} x)_i = sum_j w[j][i] x_j.
        let forms: Vec<Polynomial> = (0..self.dim)
            .map(|i| {
                let v: Vec<Rational> = (0..self.dim).map(|j| w[j][i].clone()).collect();
                Polynomial::linear_form(&v)
            })
            .collect();
        self.substitute(&forms)
    }

    /// Reflection image `s_v p` for a nonzero rational root vector `v`.
    pub fn apply_reflection(&self, v: &[Rational]) -> Result<Polynomial> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(v.len(), self.dim));
        }
        let norm2: Rational = v.iter().map(|c| c * c).sum();
        assert!(!norm2.is_zero(), "reflection through the zero vector");
        // s_v x = x - 2 <x,v>/|v|^2 v; substitute each coordinate form.
        let forms: Vec<Polynomial> = (0..self.dim)
            .map(|i| {
                let mut coeffs: Vec<Rational> = (0..self.dim)
                    .map(|j| -Rational::from_integer(2.into()) * &v[i] * &v[j] / &norm2)
                    .collect();
                coeffs[i] += Rational::from_integer(1.into());
                Polynomial::linear_form(&coeffs)
            })
            .collect();
        self.substitute(&forms)
    }

    /// Exact division by a nonzero linear form, by iterated leading-term
    /// elimination. Errors with [`Error::NonDivisible`] on a remainder.
    pub fn div_linear_exact(&self, linear: &Polynomial) -> Result<Polynomial> {
        self.check_dim(linear)?;
        let (le, lc) = linear.leading().ok_or(Error::NonDivisible)?;
        debug_assert_eq!(linear.total_degree(), 1);
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.dim);
        while let Some((re, rc)) = rem.leading() {
            let qe = re.checked_sub(le).ok_or(Error::NonDivisible)?;
            let qc = rc / lc;
            let qt = Polynomial::monomial(self.dim, &qe.0, qc);
            rem = &rem - &(&qt * linear);
            quot = &quot + &qt;
        }
        Ok(quot)
    }

    /// Divided difference `(p - s_v p) / <x, v>`.
    pub fn divided_difference(&self, v: &[Rational]) -> Result<Polynomial> {
        if v.iter().all(|c| c.is_zero()) {
            return Err(Error::NonDivisible);
        }
        let num = self - &self.apply_reflection(v)?;
        if num.is_zero() {
            return Ok(Polynomial::zero(self.dim));
        }
        num.div_linear_exact(&Polynomial::linear_form(v))
    }

    /// Exact evaluation; parameter values must be supplied when any
    /// coefficient is symbolic.
    pub fn eval(&self, point: &[Rational], params: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(point.len(), self.dim));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            if params.is_empty() && !c.is_constant() {
                return Err(Error::SymbolicParameterRemaining);
            }
            let mut term = c.eval(params)?;
            for (i, &exp) in e.0.iter().enumerate() {
                for _ in 0..exp {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Float evaluation.
    pub fn eval_f64(&self, point: &[f64], params: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = c.eval_f64(params);
            for (i, &exp) in e.0.iter().enumerate() {
                term *= point[i].powi(exp as i32);
            }
            acc += term;
        }
        acc
    }

    /// Substitute scalar values for the parameters in every coefficient.
    pub fn substitute_params(&self, vals: &[Scalar]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.substitute(vals)?);
        }
        Ok(out)
    }

    /// Largest absolute coefficient after float conversion, a coarse scale
    /// for numeric residual comparisons.
    pub fn coeff_scale_f64(&self, params: &[f64]) -> f64 {
        self.terms
            .values()
            .map(|c| c.eval_f64(params).abs())
            .fold(0.0, f64::max)
    }

    // -- JSON interface ----------------------------------------------------

    /// Emit the `{dim, terms:[{exp, coef}]}` JSON value.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| serde_json::json!({"exp": e.0, "coef": c.to_string()}))
                .collect::<Vec<_>>(),
        })
    }

    /// Parse the JSON schema emitted by [`Polynomial::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial> {
        let dim = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Parse("missing dim".into()))? as usize;
        let mut p = Polynomial::zero(dim);
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let exp: Vec<u32> = t
                .get("exp")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Parse("missing exp".into()))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as u32))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse("bad exponent".into()))?;
            if exp.len() != dim {
                return Err(Error::DimensionMismatch(exp.len(), dim));
            }
            let coef: Scalar = t
                .get("coef")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("missing coef".into()))?
                .parse()?;
            p.add_term(ExpVec(exp), coef);
        }
        Ok(p)
    }

    /// Parse the text grammar, e.g. `(k0+1)*x1^2*x2 - 1/2*x3`.
    pub fn parse(s: &str, dim: usize) -> Result<Polynomial> {
        let mut p = PolyParser {
            chars: s.chars().collect(),
            pos: 0,
            dim,
        };
        let v = p.parse_expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at byte {}",
                p.pos
            )));
        }
        Ok(v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: Self) -> Polynomial {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: Self) -> Polynomial {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: Self) -> Polynomial {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = Polynomial::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Text rendering and parsing.
// ---------------------------------------------------------------------------

fn render_monomial(e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (i, &exp) in e.0.iter().enumerate() {
        match exp {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, exp)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            // Render `-c` positively after a minus sign when the coefficient
            // is a globally negated simple scalar; otherwise keep `+ (c)`.
            let (sign, coeff) = match c.to_rational() {
                Some(r) if r < Rational::zero() => ("-", Scalar::from_rational(-r)),
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mono = render_monomial(e);
            let cs = coeff.to_string();
            if mono.is_empty() {
                write!(f, "{}", cs)?;
            } else if coeff.is_one() {
                write!(f, "{}", mono)?;
            } else {
                let needs_parens = !cs.starts_with('(')
                    && (cs.contains('+') || cs.contains('-') || cs.contains('/'));
                if needs_parens {
                    write!(f, "({})*{}", cs, mono)?;
                } else {
                    write!(f, "{}*{}", cs, mono)?;
                }
            }
        }
        Ok(())
    }
}

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
    dim: usize,
}

impl PolyParser {
    fn skip_ws(&mut self) {
        while self.peek().map(|c| c.is_whitespace()).unwrap_or(false) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -&self.parse_term()?
        } else {
            self.parse_term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.parse_term()?;
            } else if self.eat('-') {
                acc = &acc - &self.parse_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.parse_power()?;
            } else if self.eat('/') {
                let rhs = self.parse_power()?;
                let c = rhs
                    .coeff(&ExpVec::constant(self.dim));
                if rhs.num_terms() > if c.is_zero() { 0 } else { 1 } {
                    return Err(Error::Parse(
                        "division by a non-constant polynomial".into(),
                    ));
                }
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&c.inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_power(&mut self) -> Result<Polynomial> {
        let base = self.parse_atom()?;
        if self.eat('^') {
            let n = self.parse_uint()?;
            let mut out = Polynomial::one(self.dim);
            for _ in 0..n {
                out = &out * &base;
            }
            Ok(out)
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.parse_expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            Some('x') => {
                self.pos += 1;
                let i = self.parse_uint()? as usize;
                if i == 0 || i > self.dim {
                    return Err(Error::Parse(format!(
                        "variable x{} out of range for dim {}",
                        i, self.dim
                    )));
                }
                Ok(Polynomial::var(self.dim, i - 1))
            }
            Some('k') => {
                self.pos += 1;
                let i = self.parse_uint()? as usize;
                if i >= crate::scalar::MAX_PARAMS {
                    return Err(Error::Parse(format!("unknown parameter k{}", i)));
                }
                Ok(Polynomial::constant(self.dim, Scalar::param(i)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint_big()?;
                Ok(Polynomial::constant(
                    self.dim,
                    Scalar::from_rational(Rational::from_integer(n)),
                ))
            }
            other => Err(Error::Parse(format!("unexpected input: {:?}", other))),
        }
    }

    fn parse_uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected a number".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>()
            .map_err(|_| Error::Parse(format!("integer out of range: {}", s)))
    }

    fn parse_uint_big(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("bad integer: {}", s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn x(d: usize, i: usize) -> Polynomial {
        Polynomial::var(d, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(2, 0) + &x(2, 1)) * &(&x(2, 0) - &x(2, 1));
        let expect = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn power_rule() {
        // d/dx1 of x1^2 x2 = 2 x1 x2
        let p = Polynomial::monomial(2, &[2, 1], Scalar::one());
        let d = p.partial_derivative(0);
        assert_eq!(d, Polynomial::monomial(2, &[1, 1], Scalar::from_int(2)));
    }

    #[test]
    fn like_terms_over_scalars() {
        let k = Scalar::param(0);
        let p = &x(1, 0).scale(&k) + &x(1, 0);
        assert_eq!(p, x(1, 0).scale(&(&k + &Scalar::one())));
    }

    #[test]
    fn transposition_action() {
        // w = swap(x1,x2) acting on x1^2 x2 gives x2^2 x1.
        let w = vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ];
        let p = Polynomial::monomial(2, &[2, 1], Scalar::one());
        let q = p.apply_orthogonal(&w).unwrap();
        assert_eq!(q, Polynomial::monomial(2, &[1, 2], Scalar::one()));
    }

    #[test]
    fn sign_flip_action() {
        let v = vec![rat_int(0), rat_int(1)];
        let p = Polynomial::monomial(2, &[0, 3], Scalar::one());
        let q = p.apply_reflection(&v).unwrap();
        assert_eq!(q, -&p);
    }

    #[test]
    fn divided_difference_examples() {
        // p = x1^2, v = e1 - e2: (x1^2 - x2^2)/(x1 - x2) = x1 + x2.
        let v = vec![rat_int(1), rat_int(-1)];
        let p = Polynomial::monomial(2, &[2, 0], Scalar::one());
        assert_eq!(p.divided_difference(&v).unwrap(), &x(2, 0) + &x(2, 1));
        // invariant input -> 0
        let inv = Polynomial::monomial(2, &[1, 1], Scalar::one());
        assert!(inv.divided_difference(&v).unwrap().is_zero());
        // d=1: (x - (-x))/x = 2
        let p1 = x(1, 0);
        assert_eq!(
            p1.divided_difference(&[rat_int(1)]).unwrap(),
            Polynomial::constant(1, Scalar::from_int(2))
        );
    }

    #[test]
    fn divided_difference_reconstructs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = 3;
        let v = vec![rat_int(1), rat_int(-1), rat_int(0)];
        for _ in 0..100 {
            let mut p = Polynomial::zero(d);
            for _ in 0..6 {
                let e: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=2)).collect();
                p.add_term(ExpVec(e), Scalar::from_int(rng.gen_range(-5..=5)));
            }
            let dd = p.divided_difference(&v).unwrap();
            let back = &dd * &Polynomial::linear_form(&v);
            let target = &p - &p.apply_reflection(&v).unwrap();
            assert_eq!(back, target);
        }
    }

    #[test]
    fn group_action_respects_products() {
        let w = vec![
            vec![rat_int(0), rat_int(-1)],
            vec![rat_int(1), rat_int(0)],
        ];
        let p = &x(2, 0) + &Polynomial::monomial(2, &[1, 1], Scalar::param(0));
        let q = &x(2, 1) - &Polynomial::one(2);
        let lhs = (&p * &q).apply_orthogonal(&w).unwrap();
        let rhs = &p.apply_orthogonal(&w).unwrap() * &q.apply_orthogonal(&w).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_examples() {
        let p = &x(2, 0) + &x(2, 1);
        assert_eq!(p.eval(&[rat_int(1), rat_int(1)], &[]).unwrap(), rat_int(2));
        let q = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1));
        assert_eq!(q.eval(&[rat_int(3), rat_int(2)], &[]).unwrap(), rat_int(5));
        let r = x(1, 0).scale(&(&Scalar::param(0) + &Scalar::one()));
        assert_eq!(
            r.eval(&[rat_int(1)], &[crate::scalar::rat(1, 2)]).unwrap(),
            crate::scalar::rat(3, 2)
        );
        assert!(matches!(
            r.eval(&[rat_int(1)], &[]),
            Err(Error::SymbolicParameterRemaining)
        ));
    }

    #[test]
    fn text_round_trip() {
        let samples = [
            "(k0 + 1)*x1^2*x2 - 1/2*x3",
            "x1 + x2 + x3",
            "-x1^4 + (k0*k1)*x2*x3 + 7",
            "0",
        ];
        for s in samples {
            let p = Polynomial::parse(s, 3).unwrap();
            let back = Polynomial::parse(&p.to_string(), 3).unwrap();
            assert_eq!(p, back, "round trip failed for {}", s);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = Polynomial::parse("(k0+1)*x1^2*x2 - 1/2*x3 + (k1/(k0+2))*x2", 3).unwrap();
        let j = p.to_json();
        let back = Polynomial::from_json(&j).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn homogeneity_queries() {
        let p = Polynomial::parse("x1^2 + x2*x3", 3).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = Polynomial::parse("x1^2 + x2", 3).unwrap();
        assert_eq!(q.homogeneous_degree(), None);
        assert_eq!(q.homogeneous_components().len(), 2);
    }
}
