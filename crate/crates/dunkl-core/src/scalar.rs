//! Exact coefficient field: rationals and rational functions in the
//! multiplicity parameters `k0`, `k1`.
//!
//! A [`Scalar`] is a ratio of two polynomials in at most two parameters with
//! rational coefficients, kept in a canonical form so that exact equality is a
//! structural comparison:
//!
//! * numerator and denominator are coprime (multivariate gcd via recursive
//!   content/primitive-part computation),
//! * all coefficients are integers with joint content 1,
//! * the denominator's graded-lex leading coefficient is positive.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number with arbitrary-precision integer parts.
pub type Rational = num_rational::BigRational;

/// Maximum number of symbolic multiplicity parameters (the largest reflection
/// class count among the supported root systems is two).
pub const MAX_PARAMS: usize = 2;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent pair `(e0, e1)` of a parameter monomial `k0^e0 * k1^e1`,
/// ordered by graded lexicographic order with `k0 > k1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ParamExp(pub [u32; MAX_PARAMS]);

impl ParamExp {
    /// The constant monomial.
    pub const ZERO: ParamExp = ParamExp([0, 0]);

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0[0] + self.0[1]
    }

    fn checked_sub(&self, other: &ParamExp) -> Option<ParamExp> {
        if self.0[0] >= other.0[0] && self.0[1] >= other.0[1] {
            Some(ParamExp([self.0[0] - other.0[0], self.0[1] - other.0[1]]))
        } else {
            None
        }
    }
}

impl Ord for ParamExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0[0].cmp(&other.0[0]))
            .then(self.0[1].cmp(&other.0[1]))
    }
}

impl PartialOrd for ParamExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the parameters `k0`, `k1` with rational coefficients.
///
/// Sparse map from exponent pairs to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExp, Rational>,
}

impl ParamPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        let mut p = ParamPoly::default();
        if !c.is_zero() {
            p.terms.insert(ParamExp::ZERO, c);
        }
        p
    }

    /// The parameter `k_i` as a polynomial.
    pub fn param(i: usize) -> Self {
        assert!(i < MAX_PARAMS, "parameter index out of range");
        let mut e = [0u32; MAX_PARAMS];
        e[i] = 1;
        let mut p = ParamPoly::default();
        p.terms.insert(ParamExp(e), Rational::one());
        p
    }

    /// True iff no terms are stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the polynomial equals 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ParamExp::ZERO)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// True iff no parameter appears.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == ParamExp::ZERO)
    }

    /// The constant coefficient.
    pub fn constant_coeff(&self) -> Rational {
        self.terms
            .get(&ParamExp::ZERO)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree in the parameters (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Graded-lex leading term, if nonzero.
    pub fn leading(&self) -> Option<(&ParamExp, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Iterate terms in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&ParamExp, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: ParamExp, c: Rational) {
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

    /// Multiply by a rational constant.
    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Exact evaluation at rational parameter values.
    pub fn eval(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.0.iter().enumerate() {
                for _ in 0..exp {
                    term *= &vals[i.min(vals.len().saturating_sub(1))];
                }
            }
            acc += term;
        }
        acc
    }

    /// Float evaluation at parameter values.
    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = rational_to_f64(c);
            for (i, &exp) in e.0.iter().enumerate() {
                let v = vals.get(i).copied().unwrap_or(0.0);
                term *= v.powi(exp as i32);
            }
            acc += term;
        }
        acc
    }

    /// Exact division; `None` when `self` is not a multiple of `d`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        assert!(!d.is_zero(), "division by zero ParamPoly");
        let (dle, dlc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rle, rlc)) = rem.leading() {
            let qe = rle.checked_sub(dle)?;
            let qc = rlc / dlc;
            let mut qt = ParamPoly::zero();
            qt.terms.insert(qe, qc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Degree in `k1`.
    fn k1_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0[1]).max().unwrap_or(0)
    }

    /// Coefficients as polynomials in `k0`, indexed by the power of `k1`.
    fn k1_coeffs(&self) -> Vec<ParamPoly> {
        let mut out = vec![ParamPoly::zero(); self.k1_degree() as usize + 1];
        for (e, c) in &self.terms {
            out[e.0[1] as usize].add_term(ParamExp([e.0[0], 0]), c.clone());
        }
        out
    }

    fn from_k1_coeffs(coeffs: &[ParamPoly]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                out.add_term(ParamExp([e.0[0], j as u32]), v.clone());
            }
        }
        out
    }

    /// Make the polynomial monic-ish and sign-normalized: divide by the
    /// leading coefficient's sign and the coefficient content.
    fn primitive(&self) -> ParamPoly {
        if self.is_zero() {
            return ParamPoly::zero();
        }
        let c = self.rational_content();
        let lc = self.leading().unwrap().1;
        let scale = if lc.is_negative() {
            -c.recip()
        } else {
            c.recip()
        };
        self.scale(&scale)
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    fn rational_content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rational::one()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    /// Multivariate gcd via content/primitive-part recursion, normalized to
    /// primitive form with positive leading coefficient.
    pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        if a.k1_degree() == 0 && b.k1_degree() == 0 {
            return ParamPoly::gcd_univar(a, b);
        }
        // View both in Q[k0][k1]: gcd = gcd(contents) * gcd(primitive parts).
        let ca = a.k1_coeffs();
        let cb = b.k1_coeffs();
        let cont_a = ca
            .iter()
            .fold(ParamPoly::zero(), |g, c| ParamPoly::gcd_univar(&g, c));
        let cont_b = cb
            .iter()
            .fold(ParamPoly::zero(), |g, c| ParamPoly::gcd_univar(&g, c));
        let cont = ParamPoly::gcd_univar(&cont_a, &cont_b);
        let pa: Vec<ParamPoly> = ca.iter().map(|c| c.div_exact(&cont_a).unwrap()).collect();
        let pb: Vec<ParamPoly> = cb.iter().map(|c| c.div_exact(&cont_b).unwrap()).collect();
        let pp = ParamPoly::gcd_prs_k1(pa, pb);
        (&ParamPoly::from_k1_coeffs(&pp) * &cont).primitive()
    }

    /// Euclidean gcd for polynomials in `k0` only.
    fn gcd_univar(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        debug_assert!(a.k1_degree() == 0 && b.k1_degree() == 0);
        let mut x = a.primitive();
        let mut y = b.primitive();
        while !y.is_zero() {
            let r = ParamPoly::rem_univar(&x, &y);
            x = y;
            y = r.primitive();
        }
        x
    }

    /// Remainder of univariate division in `k0` over Q.
    fn rem_univar(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        let (ble, blc) = b.leading().unwrap();
        let mut rem = a.clone();
        loop {
            match rem.leading() {
                Some((rle, rlc)) if rle.0[0] >= ble.0[0] => {
                    let mut qt = ParamPoly::zero();
                    qt.terms
                        .insert(ParamExp([rle.0[0] - ble.0[0], 0]), rlc / blc);
                    rem = &rem - &(&qt * b);
                }
                _ => return rem,
            }
        }
    }

    /// Primitive pseudo-remainder sequence on primitive parts, viewed as
    /// univariate in `k1` with coefficients in Q[k0].
    fn gcd_prs_k1(a: Vec<ParamPoly>, b: Vec<ParamPoly>) -> Vec<ParamPoly> {
        let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        loop {
            if g.iter().all(|c| c.is_zero()) {
                return Self::primitive_k1(f);
            }
            let r = Self::pseudo_rem_k1(&f, &g);
            f = g;
            g = Self::primitive_k1(r);
        }
    }

    /// Divide out the Q[k0]-content from a k1-coefficient vector.
    fn primitive_k1(mut v: Vec<ParamPoly>) -> Vec<ParamPoly> {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        if v.is_empty() {
            return v;
        }
        let cont = v
            .iter()
            .fold(ParamPoly::zero(), |g, c| ParamPoly::gcd_univar(&g, c));
        v.iter().map(|c| c.div_exact(&cont).unwrap()).collect()
    }

    /// Pseudo-remainder of f by g in k1 (lc(g)^(deg f - deg g + 1) * f mod g).
    fn pseudo_rem_k1(f: &[ParamPoly], g: &[ParamPoly]) -> Vec<ParamPoly> {
        let dg = g.len() - 1;
        let lg = g[dg].clone();
        let mut r: Vec<ParamPoly> = f.to_vec();
        while r.len() >= g.len() {
            let dr = r.len() - 1;
            if r[dr].is_zero() {
                r.pop();
                continue;
            }
            let lead = r[dr].clone();
            // r := lc(g)*r - lead * k1^(dr-dg) * g
            for c in r.iter_mut() {
                *c = &*c * &lg;
            }
            for (j, gc) in g.iter().enumerate() {
                let idx = dr - dg + j;
                let sub = &lead * gc;
                r[idx] = &r[idx] - &sub;
            }
            while r.last().map(|c| c.is_zero()).unwrap_or(false) {
                r.pop();
            }
        }
        r
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, other: Self) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, other: Self) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, other: Self) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(
                    ParamExp([e1.0[0] + e2.0[0], e1.0[1] + e2.0[1]]),
                    c1 * c2,
                );
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

/// Element of the exact field Q(k0, k1): a canonically normalized ratio of
/// parameter polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Scalar {
    /// Build and normalize a ratio; errors when `den` is identically zero.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(num, den))
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Scalar {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar {
                num: ParamPoly::zero(),
                den: ParamPoly::one(),
            };
        }
        let g = ParamPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd must divide numerator");
        let mut den = den.div_exact(&g).expect("gcd must divide denominator");
        // Joint integer normalization: a single rational scaling makes every
        // coefficient an integer, the joint content 1, and the denominator's
        // leading coefficient positive.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in num.iter().map(|(_, c)| c).chain(den.iter().map(|(_, c)| c)) {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scale = Rational::new(den_lcm, num_gcd);
        if den.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        num = num.scale(&scale);
        den = den.scale(&scale);
        Scalar { num, den }
    }

    /// The zero scalar.
    pub fn zero() -> Scalar {
        Scalar {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    /// The unit scalar.
    pub fn one() -> Scalar {
        Scalar {
            num: ParamPoly::one(),
            den: ParamPoly::one(),
        }
    }

    /// Constant scalar from a rational.
    pub fn from_rational(c: Rational) -> Scalar {
        Scalar::normalized(ParamPoly::constant(c), ParamPoly::one())
    }

    /// Constant scalar from an integer.
    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(rat_int(n))
    }

    /// Constant scalar from `n/d`.
    pub fn from_frac(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(rat(n, d))
    }

    /// The parameter `k_i`.
    pub fn param(i: usize) -> Scalar {
        Scalar {
            num: ParamPoly::param(i),
            den: ParamPoly::one(),
        }
    }

    /// Numerator polynomial (read-only view).
    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    /// Denominator polynomial (read-only view).
    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    /// True iff the scalar is 0.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the scalar is 1.
    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True iff no parameter appears in numerator or denominator.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Convert to a plain rational when constant.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.constant_coeff() / self.den.constant_coeff())
        } else {
            None
        }
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    /// Integer power (negative exponents invert; errors on 0^-n).
    pub fn pow(&self, n: i32) -> Result<Scalar> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Exact substitution of rational parameter values.
    pub fn eval(&self, vals: &[Rational]) -> Result<Rational> {
        let den = self.den.eval(vals);
        if den.is_zero() {
            return Err(Error::SingularParameter(format!(
                "denominator {} vanishes at the given parameters",
                self.den
            )));
        }
        Ok(self.num.eval(vals) / den)
    }

    /// Float substitution of parameter values.
    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        self.num.eval_f64(vals) / self.den.eval_f64(vals)
    }

    /// Substitute scalar values for the parameters (used to tie classes or
    /// specialize a symbolic result).
    pub fn substitute(&self, vals: &[Scalar]) -> Result<Scalar> {
        let v0 = vals.first().cloned().unwrap_or_else(Scalar::zero);
        let v1 = vals.get(1).cloned().unwrap_or_else(Scalar::zero);
        let sub_poly = |p: &ParamPoly| -> Scalar {
            let mut acc = Scalar::zero();
            for (e, c) in p.iter() {
                let mut term = Scalar::from_rational(c.clone());
                for _ in 0..e.0[0] {
                    term = &term * &v0;
                }
                for _ in 0..e.0[1] {
                    term = &term * &v1;
                }
                acc = &acc + &term;
            }
            acc
        };
        let den = sub_poly(&self.den);
        if den.is_zero() {
            return Err(Error::SingularParameter(format!(
                "denominator {} vanishes under the substitution",
                self.den
            )));
        }
        Ok(&sub_poly(&self.num) / &den)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: Self) -> Scalar {
        Scalar::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: Self) -> Scalar {
        Scalar::normalized(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: Self) -> Scalar {
        Scalar::normalized(&self.num * &other.num, &self.den * &other.den)
    }
}

/// Panics on division by zero; use [`Scalar::inverse`] for checked division.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, other: Self) -> Scalar {
        assert!(!other.is_zero(), "scalar division by zero");
        Scalar::normalized(&self.num * &other.den, &self.den * &other.num)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Rising factorial `(t)_n = t (t+1) ... (t+n-1)`.
pub fn pochhammer(t: &Scalar, n: u32) -> Scalar {
    let mut out = Scalar::one();
    for j in 0..n {
        out = &out * &(t + &Scalar::from_int(j as i64));
    }
    out
}

/// Generalized Pochhammer symbol `(t)_lambda = prod_i (t - (i-1) kappa)_(lambda_i)`.
pub fn generalized_pochhammer(t: &Scalar, lambda: &[u32], kappa: &Scalar) -> Result<Scalar> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotAPartition(lambda.to_vec()));
    }
    let mut out = Scalar::one();
    for (i, &li) in lambda.iter().enumerate() {
        let shift = &Scalar::from_int(i as i64) * kappa;
        out = &out * &pochhammer(&(t - &shift), li);
    }
    Ok(out)
}

/// Lossy conversion of an exact rational to f64.
pub fn rational_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or_else(|| {
        // Extremely large parts: fall back to a quotient of float conversions.
        let n = num_traits::ToPrimitive::to_f64(r.numer()).unwrap_or(f64::NAN);
        let d = num_traits::ToPrimitive::to_f64(r.denom()).unwrap_or(f64::NAN);
        n / d
    })
}

// ---------------------------------------------------------------------------
// Text rendering and parsing: `(2*k0^2 + 1)/(k0 + 1)`.
// ---------------------------------------------------------------------------

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending graded-lex order for readability.
        for (e, c) in self.terms.iter().rev() {
            let mono = render_param_monomial(e);
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

fn render_param_monomial(e: &ParamExp) -> String {
    let mut parts = Vec::new();
    for (i, &exp) in e.0.iter().enumerate() {
        match exp {
            0 => {}
            1 => parts.push(format!("k{}", i)),
            _ => parts.push(format!("k{}^{}", i, exp)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.iter().count() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        let mut p = ScalarParser {
            chars: s.chars().collect(),
            pos: 0,
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

struct ScalarParser {
    chars: Vec<char>,
    pos: usize,
}

impl ScalarParser {
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

    fn parse_expr(&mut self) -> Result<Scalar> {
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

    fn parse_term(&mut self) -> Result<Scalar> {
        let mut acc = self.parse_power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.parse_power()?;
            } else if self.eat('/') {
                let rhs = self.parse_power()?;
                if rhs.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = &acc / &rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_power(&mut self) -> Result<Scalar> {
        let base = self.parse_atom()?;
        if self.eat('^') {
            self.skip_ws();
            let neg = self.eat('-');
            let n = self.parse_uint()? as i32;
            base.pow(if neg { -n } else { n })
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Scalar> {
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
            Some('k') => {
                self.pos += 1;
                let i = self.parse_uint()? as usize;
                if i >= MAX_PARAMS {
                    return Err(Error::Parse(format!("unknown parameter k{}", i)));
                }
                Ok(Scalar::param(i))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_bigint()?;
                Ok(Scalar::from_rational(Rational::from_integer(n)))
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

    fn parse_bigint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected a number".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer: {}", s)))
    }
}
