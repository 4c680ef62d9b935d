//! Root systems, reflection groups, lengths, discriminants, and the
//! fundamental-degree table.
//!
//! Roots are kept with exact rational coordinates in the conventional
//! per-type normalizations (so type B mixes squared lengths 1 and 2); any
//! length renormalization demanded by a closed form is done at the point of
//! use, never on the stored lists.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{rat, rat_int, Rational, Scalar, MAX_PARAMS};

/// Supported root-system families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TypeTag {
    /// Type A(n) in the ambient space of dimension n+1.
    A(usize),
    /// Type B(n).
    B(usize),
    /// Type D(n), n >= 2.
    D(usize),
    /// The reducible system Z2^n (n copies of A1 along the axes).
    Z2(usize),
    /// Type G2, realized inside the sum-zero plane of R^3.
    G2,
    /// Type F4.
    F4,
    /// Dihedral I2(m); exact construction only for m in {2, 4}.
    I2(usize),
    /// E6 (roots and degrees only; enumeration exceeds the default cap).
    E6,
    /// E7 (roots and degrees only).
    E7,
    /// E8 (roots and degrees only).
    E8,
    /// H3 (degrees only; coordinates are irrational).
    H3,
    /// H4 (degrees only; coordinates are irrational).
    H4,
    /// An explicit user-provided root list.
    Custom,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::A(n) => write!(f, "A{}", n),
            TypeTag::B(n) => write!(f, "B{}", n),
            TypeTag::D(n) => write!(f, "D{}", n),
            TypeTag::Z2(n) => write!(f, "Z2^{}", n),
            TypeTag::G2 => write!(f, "G2"),
            TypeTag::F4 => write!(f, "F4"),
            TypeTag::I2(m) => write!(f, "I2({})", m),
            TypeTag::E6 => write!(f, "E6"),
            TypeTag::E7 => write!(f, "E7"),
            TypeTag::E8 => write!(f, "E8"),
            TypeTag::H3 => write!(f, "H3"),
            TypeTag::H4 => write!(f, "H4"),
            TypeTag::Custom => write!(f, "Custom"),
        }
    }
}

/// Fundamental degrees from the structural-constants table, when the type is
/// recognized (`None` for Custom).
pub fn table_degrees(tag: &TypeTag) -> Option<Vec<u32>> {
    match tag {
        TypeTag::A(n) => Some((2..=(*n as u32 + 1)).collect()),
        TypeTag::B(n) => Some((1..=*n as u32).map(|i| 2 * i).collect()),
        TypeTag::D(n) => {
            let mut d: Vec<u32> = (1..*n as u32).map(|i| 2 * i).collect();
            d.push(*n as u32);
            d.sort_unstable();
            Some(d)
        }
        TypeTag::Z2(n) => Some(vec![2; *n]),
        TypeTag::G2 => Some(vec![2, 6]),
        TypeTag::F4 => Some(vec![2, 6, 8, 12]),
        TypeTag::I2(m) => Some(vec![2, *m as u32]),
        TypeTag::E6 => Some(vec![2, 5, 6, 8, 9, 12]),
        TypeTag::E7 => Some(vec![2, 6, 8, 10, 12, 14, 18]),
        TypeTag::E8 => Some(vec![2, 8, 12, 14, 18, 20, 24, 30]),
        TypeTag::H3 => Some(vec![2, 6, 10]),
        TypeTag::H4 => Some(vec![2, 12, 20, 30]),
        TypeTag::Custom => None,
    }
}

/// Exact inner product of rational vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Squared length.
pub fn norm2(a: &[Rational]) -> Rational {
    dot(a, a)
}

/// Reflection image `s_v a = a - 2 <a,v>/<v,v> v`.
pub fn reflect_vec(v: &[Rational], a: &[Rational]) -> Vec<Rational> {
    let c = dot(a, v) * rat_int(2) / norm2(v);
    a.iter().zip(v).map(|(ai, vi)| ai - &c * vi).collect()
}

/// Orthogonal matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    mat: Vec<Vec<Rational>>,
}

impl GroupElement {
    /// The identity in dimension `d`.
    pub fn identity(d: usize) -> Self {
        let mat = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { rat_int(1) } else { rat_int(0) })
                    .collect()
            })
            .collect();
        GroupElement { mat }
    }

    /// The reflection through the hyperplane orthogonal to `v`.
    pub fn reflection(v: &[Rational]) -> Self {
        let d = v.len();
        let n2 = norm2(v);
        assert!(!n2.is_zero());
        let mat = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut e = -rat_int(2) * &v[i] * &v[j] / &n2;
                        if i == j {
                            e += rat_int(1);
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        GroupElement { mat }
    }

    /// Build from a row-major matrix; verifies exact orthogonality.
    pub fn from_matrix(mat: Vec<Vec<Rational>>) -> Result<Self> {
        let d = mat.len();
        for row in &mat {
            if row.len() != d {
                return Err(Error::DimensionMismatch(row.len(), d));
            }
        }
        let g = GroupElement { mat };
        let gt = g.inverse();
        if (&g * &gt) != GroupElement::identity(d) {
            return Err(Error::NotInGroup);
        }
        Ok(g)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.mat.len()
    }

    /// Row-major matrix view.
    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.mat
    }

    /// Matrix transpose, which is the inverse for orthogonal matrices.
    pub fn inverse(&self) -> GroupElement {
        let d = self.dim();
        let mat = (0..d)
            .map(|i| (0..d).map(|j| self.mat[j][i].clone()).collect())
            .collect();
        GroupElement { mat }
    }

    /// Apply to a column vector.
    pub fn apply_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.mat.iter().map(|row| dot(row, v)).collect()
    }

    /// Determinant via fraction-free expansion (dimensions are small).
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Rational {
        let mut m = self.mat.clone();
        let d = self.dim();
        let mut det = rat_int(1);
        for col in 0..d {
            let pivot = (col..d).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else {
                return rat_int(0);
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= m[col][col].clone();
            let inv = m[col][col].clone();
            for r in col + 1..d {
                let f = &m[r][col] / &inv;
                for c in col..d {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Action on polynomials: `(wp)(x) = p(w^{-1} x)`.
    pub fn apply_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        p.apply_orthogonal(&self.mat)
    }

    /// Codimension of the fixed space, i.e. rank of `I - w`.
    pub fn fixed_space_codim(&self) -> usize {
        let d = self.dim();
        let mut m: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut e = -self.mat[i][j].clone();
                        if i == j {
                            e += rat_int(1);
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        rank_rational(&mut m)
    }
}

impl std::ops::Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, other: Self) -> GroupElement {
        let d = self.dim();
        let mat = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| &self.mat[i][k] * &other.mat[k][j]).sum())
                    .collect()
            })
            .collect();
        GroupElement { mat }
    }
}

/// Row rank of a rational matrix (destructive).
#[allow(clippy::needless_range_loop)]
fn rank_rational(m: &mut [Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(p, rank);
        let inv = m[rank][col].clone();
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &inv;
                for c in col..cols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Solve `sum_j c_j basis[j] = target` exactly; `None` when inconsistent.
/// The basis vectors must be linearly independent.
#[allow(clippy::needless_range_loop)]
fn solve_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let d = target.len();
    let r = basis.len();
    // Augmented system (d equations, r unknowns).
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let p = (row..d).find(|&rr| !m[rr][col].is_zero())?;
        m.swap(p, row);
        let inv = m[row][col].clone();
        for rr in 0..d {
            if rr != row && !m[rr][col].is_zero() {
                let f = &m[rr][col] / &inv;
                for cc in col..=r {
                    let sub = &f * &m[row][cc];
                    m[rr][cc] -= sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // Consistency: remaining rows must have zero RHS.
    for rr in row..d {
        if !m[rr][r].is_zero() {
            return None;
        }
    }
    let mut sol = vec![rat_int(0); r];
    for (rr, cc) in pivots {
        sol[cc] = &m[rr][r] / &m[rr][cc];
    }
    Some(sol)
}

/// Multiplicity-parameter mode.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KappaMode {
    /// Parameters stay symbolic (k0, k1).
    Symbolic,
    /// Exact rational values per class.
    Rational,
    /// Values supplied as floats (converted exactly; flagged for reporting).
    Float,
}

/// Assignment of a multiplicity value to each reflection class.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiplicitySpec {
    /// Mode tag for reporting.
    pub mode: KappaMode,
    /// One scalar per class index.
    pub values: Vec<Scalar>,
}

impl MultiplicitySpec {
    /// Symbolic kappa: class `i` is bound to parameter `k_i`.
    pub fn symbolic(num_classes: usize) -> Result<Self> {
        if num_classes > MAX_PARAMS {
            return Err(Error::TooManyParameters(num_classes));
        }
        Ok(MultiplicitySpec {
            mode: KappaMode::Symbolic,
            values: (0..num_classes).map(Scalar::param).collect(),
        })
    }

    /// Symbolic kappa with an explicit class-to-parameter assignment, used to
    /// tie classes together (e.g. all classes of Z2^3 bound to k0).
    pub fn symbolic_tied(assignment: &[usize]) -> Result<Self> {
        if assignment.iter().any(|&p| p >= MAX_PARAMS) {
            return Err(Error::TooManyParameters(
                assignment.iter().max().copied().unwrap_or(0) + 1,
            ));
        }
        Ok(MultiplicitySpec {
            mode: KappaMode::Symbolic,
            values: assignment.iter().map(|&p| Scalar::param(p)).collect(),
        })
    }

    /// Exact rational kappa values, one per class.
    pub fn rational(vals: &[Rational]) -> Self {
        MultiplicitySpec {
            mode: KappaMode::Rational,
            values: vals.iter().map(|v| Scalar::from_rational(v.clone())).collect(),
        }
    }

    /// Float kappa values, converted exactly (floats are dyadic rationals).
    pub fn float(vals: &[f64]) -> Self {
        MultiplicitySpec {
            mode: KappaMode::Float,
            values: vals
                .iter()
                .map(|&v| {
                    Scalar::from_rational(
                        Rational::from_float(v).expect("finite float required"),
                    )
                })
                .collect(),
        }
    }
}

/// A validated root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    /// Ambient dimension.
    pub dim: usize,
    /// Family tag.
    pub tag: TypeTag,
    /// All roots.
    pub roots: Vec<Vec<Rational>>,
    /// Indices (into `roots`) of the positive roots.
    pub positive: Vec<usize>,
    /// Indices of the simple roots.
    pub simple: Vec<usize>,
    /// Reflection-class index per root.
    pub class_of: Vec<usize>,
    /// Number of reflection classes.
    pub num_classes: usize,
    /// Fundamental degrees (rank many; `None` only for Custom systems whose
    /// group has not been enumerated).
    pub degrees: Option<Vec<u32>>,
    /// The recorded generic vector defining positivity.
    pub a0: Vec<Rational>,
    index: HashMap<Vec<Rational>, usize>,
}

impl RootSystem {
    /// Build a root system of a named type.
    pub fn build(tag: TypeTag) -> Result<RootSystem> {
        let roots = match &tag {
            TypeTag::A(n) => {
                if *n < 1 {
                    return Err(Error::UnsupportedType("A(n) needs n >= 1".into()));
                }
                roots_a(*n + 1)
            }
            TypeTag::B(n) => {
                if *n < 1 {
                    return Err(Error::UnsupportedType("B(n) needs n >= 1".into()));
                }
                roots_b(*n)
            }
            TypeTag::D(n) => {
                if *n < 2 {
                    return Err(Error::UnsupportedType("D(n) needs n >= 2".into()));
                }
                roots_d(*n)
            }
            TypeTag::Z2(n) => {
                if *n < 1 {
                    return Err(Error::UnsupportedType("Z2^n needs n >= 1".into()));
                }
                roots_z2(*n)
            }
            TypeTag::G2 => roots_g2(),
            TypeTag::F4 => roots_f4(),
            TypeTag::I2(m) => match m {
                2 => roots_z2(2),
                4 => roots_i2_4(),
                _ => {
                    return Err(Error::IrrationalCoordinates(format!(
                        "I2({}) has no rational realization; use the numeric dihedral layer",
                        m
                    )))
                }
            },
            TypeTag::E6 | TypeTag::E7 | TypeTag::E8 => roots_e(&tag),
            TypeTag::H3 | TypeTag::H4 => {
                return Err(Error::IrrationalCoordinates(format!(
                    "{} needs the golden ratio; degrees remain available from the table",
                    tag
                )))
            }
            TypeTag::Custom => {
                return Err(Error::UnsupportedType(
                    "use RootSystem::custom for explicit root lists".into(),
                ))
            }
        };
        let mut rs = RootSystem::validate(tag.clone(), roots)?;
        rs.degrees = table_degrees(&tag);
        rs.assign_classes()?;
        Ok(rs)
    }

    /// Build from an explicit rational root list.
    pub fn custom(roots: Vec<Vec<Rational>>) -> Result<RootSystem> {
        let mut rs = RootSystem::validate(TypeTag::Custom, roots)?;
        rs.assign_classes()?;
        Ok(rs)
    }

    fn validate(tag: TypeTag, roots: Vec<Vec<Rational>>) -> Result<RootSystem> {
        if roots.is_empty() {
            return Err(Error::UnsupportedType("empty root list".into()));
        }
        let dim = roots[0].len();
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(r.len(), dim));
            }
            if r.iter().all(|c| c.is_zero()) {
                return Err(Error::NotReduced);
            }
            if index.insert(r.clone(), i).is_some() {
                return Err(Error::NotReduced);
            }
        }
        // Reduced: the line through a meets R only in {a, -a}.
        for a in &roots {
            for b in &roots {
                if a == b {
                    continue;
                }
                // b = t a for some rational t? Check proportionality.
                let mut t: Option<Rational> = None;
                let mut proportional = true;
                for (x, y) in a.iter().zip(b) {
                    match (x.is_zero(), y.is_zero()) {
                        (true, true) => {}
                        (true, false) | (false, true) => {
                            proportional = false;
                            break;
                        }
                        (false, false) => {
                            let ratio = y / x;
                            match &t {
                                None => t = Some(ratio),
                                Some(t0) if *t0 == ratio => {}
                                _ => {
                                    proportional = false;
                                    break;
                                }
                            }
                        }
                    }
                }
                if proportional && t.map(|t| t != rat_int(-1)).unwrap_or(false) {
                    return Err(Error::NotReduced);
                }
            }
        }
        // Closure under the root reflections, and presence of negatives.
        for a in &roots {
            let neg: Vec<Rational> = a.iter().map(|c| -c.clone()).collect();
            if !index.contains_key(&neg) {
                return Err(Error::NotClosed);
            }
            for b in &roots {
                if !index.contains_key(&reflect_vec(b, a)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        // Positivity split: default a0, with lexicographic fallback.
        let mut a0: Vec<Rational> = (0..dim).map(|i| rat_int((dim - i) as i64)).collect();
        if roots.iter().any(|r| dot(r, &a0).is_zero()) {
            // Powers of 8 dominate any cancellation for the small integer /
            // half-integer coordinates appearing here, so this acts as a
            // lexicographic comparison.
            a0 = (0..dim)
                .map(|i| rat_int(8i64.pow((dim - 1 - i) as u32)))
                .collect();
        }
        if roots.iter().any(|r| dot(r, &a0).is_zero()) {
            return Err(Error::UnsupportedType(
                "could not find a generic positivity vector".into(),
            ));
        }
        let positive: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| dot(r, &a0).is_positive())
            .map(|(i, _)| i)
            .collect();
        // Simple roots: positive roots whose reflection permutes the other
        // positive roots, i.e. sends exactly one positive root (itself) to a
        // negative one.
        let mut simple = Vec::new();
        for &i in &positive {
            let v = &roots[i];
            let negated = positive
                .iter()
                .filter(|&&j| dot(&reflect_vec(v, &roots[j]), &a0).is_negative())
                .count();
            if negated == 1 {
                simple.push(i);
            }
        }
        let rs = RootSystem {
            dim,
            tag,
            roots,
            positive,
            simple,
            class_of: Vec::new(),
            num_classes: 0,
            degrees: None,
            a0,
            index,
        };
        rs.check_simple_decomposition()?;
        Ok(rs)
    }

    /// Every positive root must be a nonnegative rational combination of the
    /// simple roots (also verifies the simple roots are independent).
    fn check_simple_decomposition(&self) -> Result<()> {
        let basis: Vec<Vec<Rational>> = self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        {
            let mut m = basis.clone();
            if rank_rational(&mut m) != basis.len() {
                return Err(Error::NotClosed);
            }
        }
        for &i in &self.positive {
            let sol = solve_in_span(&basis, &self.roots[i]).ok_or(Error::NotClosed)?;
            if sol.iter().any(|c| c.is_negative()) {
                return Err(Error::NotClosed);
            }
        }
        Ok(())
    }

    /// Label reflection classes as orbits of roots under the group (orbits
    /// under the simple reflections suffice), with deterministic per-type
    /// numbering matching the closed-form conventions.
    fn assign_classes(&mut self) -> Result<()> {
        let n = self.roots.len();
        let mut label = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut queue = VecDeque::from([start]);
            label[start] = id;
            while let Some(i) = queue.pop_front() {
                orbit.push(i);
                // Orbit under W and under negation (classes pair a with -a).
                let neg: Vec<Rational> = self.roots[i].iter().map(|c| -c.clone()).collect();
                let mut images = vec![self.index[&neg]];
                for &s in &self.simple {
                    images.push(self.index[&reflect_vec(&self.roots[s], &self.roots[i])]);
                }
                for j in images {
                    if label[j] == usize::MAX {
                        label[j] = id;
                        queue.push_back(j);
                    }
                }
            }
            orbits.push(orbit);
        }
        // Deterministic numbering: order orbits by their lexicographically
        // smallest positive-root coordinate vector, longest roots first so
        // that class 0 matches the paper's kappa_0 conventions for B/F4/G2
        // (the epsilon_i +- epsilon_j family).
        let mut keys: Vec<(usize, (Rational, Vec<Rational>))> = orbits
            .iter()
            .enumerate()
            .map(|(id, orbit)| {
                let key_vec = orbit
                    .iter()
                    .filter(|&&i| self.positive.contains(&i))
                    .map(|&i| self.roots[i].clone())
                    .min()
                    .unwrap_or_default();
                let len2 = -norm2(&key_vec);
                (id, (len2, key_vec))
            })
            .collect();
        keys.sort_by(|a, b| a.1.cmp(&b.1));
        let mut renumber = vec![0usize; orbits.len()];
        for (new_id, (old_id, _)) in keys.iter().enumerate() {
            renumber[*old_id] = new_id;
        }
        self.class_of = label.iter().map(|&l| renumber[l]).collect();
        self.num_classes = orbits.len();
        Ok(())
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Positive roots as vectors.
    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    /// Simple roots as vectors.
    pub fn simple_roots(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.simple.iter().map(|&i| &self.roots[i])
    }

    /// Class index of a positive root given by its position in `positive`.
    pub fn class_of_positive(&self, k: usize) -> usize {
        self.class_of[self.positive[k]]
    }

    /// Index of a root vector, if present.
    pub fn find_root(&self, v: &[Rational]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Rank: dimension of the span of the roots.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = self.roots.clone();
        rank_rational(&mut m)
    }

    /// Predicted group order from the degree table.
    pub fn order(&self) -> Option<u128> {
        self.degrees
            .as_ref()
            .map(|d| d.iter().map(|&n| n as u128).product())
    }

    /// Predicted number of reflections.
    pub fn num_reflections(&self) -> Option<u32> {
        self.degrees.as_ref().map(|d| d.iter().map(|&n| n - 1).sum())
    }

    /// Enumerate the full reflection group by breadth-first closure over
    /// products with the simple reflections.
    pub fn generate_group(&self, limit: Option<u128>) -> Result<Vec<GroupElement>> {
        let cap = limit.unwrap_or(1_000_000);
        if let Some(order) = self.order() {
            if order > cap {
                return Err(Error::GroupTooLarge { order, cap });
            }
        }
        let gens: Vec<GroupElement> = self
            .simple_roots()
            .map(|v| GroupElement::reflection(v))
            .collect();
        let id = GroupElement::identity(self.dim);
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let next = &w * g;
                if seen.insert(next.clone()) {
                    if out.len() as u128 >= cap {
                        return Err(Error::GroupTooLarge {
                            order: out.len() as u128 + 1,
                            cap,
                        });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// Conjugacy classes of reflections, as the partition of the positive
    /// roots by class index.
    pub fn reflection_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_classes];
        for (k, &i) in self.positive.iter().enumerate() {
            classes[self.class_of[i]].push(k);
        }
        classes
    }

    /// Length `l(w) = #(w R+ \cap R-)`; errors when `w` does not permute `R`.
    pub fn element_length(&self, w: &GroupElement) -> Result<usize> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch(w.dim(), self.dim));
        }
        let mut count = 0;
        for v in self.positive_roots() {
            let img = w.apply_vec(v);
            if self.find_root(&img).is_none() {
                return Err(Error::NotInGroup);
            }
            if dot(&img, &self.a0).is_negative() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// The alternating (discriminant) polynomial `a_R = prod_{v in R+} <x,v>`.
    pub fn alternating_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::one(self.dim);
        for v in self.positive_roots() {
            p = &p * &Polynomial::linear_form(v);
        }
        p
    }

    /// Coxeter-matrix entry: the order of `s_i s_j` for simple roots `i, j`
    /// (positions into `simple`).
    pub fn coxeter_order(&self, i: usize, j: usize) -> usize {
        let si = GroupElement::reflection(&self.roots[self.simple[i]]);
        let sj = GroupElement::reflection(&self.roots[self.simple[j]]);
        let prod = &si * &sj;
        let id = GroupElement::identity(self.dim);
        let mut w = prod.clone();
        for order in 1..=64 {
            if w == id {
                return order;
            }
            w = &w * &prod;
        }
        panic!("Coxeter order exceeds 64");
    }

    /// Number of reflection classes predicted by the even-edge rule: the
    /// connected components of the Coxeter diagram after removing edges with
    /// an even label.
    pub fn even_edge_class_count(&self) -> usize {
        let n = self.simple.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for i in 0..n {
            for j in i + 1..n {
                let m = self.coxeter_order(i, j);
                if m >= 3 && m % 2 == 1 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut reps: HashSet<usize> = HashSet::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            reps.insert(r);
        }
        reps.len()
    }

    /// Degrees plus the enumeration-based consistency report.
    pub fn degrees_and_checks(&self, limit: Option<u128>) -> Result<DegreesReport> {
        let degrees = match (&self.degrees, &self.tag) {
            (Some(d), _) => d.clone(),
            (None, TypeTag::Custom) => self.degrees_from_enumeration(limit)?,
            (None, tag) => {
                return Err(Error::UnsupportedType(format!(
                    "no degree table for {}",
                    tag
                )))
            }
        };
        let order: u128 = degrees.iter().map(|&n| n as u128).product();
        let reflections: u32 = degrees.iter().map(|&n| n - 1).sum();
        let verification = match self.generate_group(limit) {
            Ok(group) => {
                let actual_reflections = group
                    .iter()
                    .filter(|w| {
                        self.positive_roots()
                            .any(|v| **w == GroupElement::reflection(v))
                    })
                    .count();
                Some(
                    group.len() as u128 == order
                        && actual_reflections as u32 == reflections,
                )
            }
            Err(Error::GroupTooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(DegreesReport {
            degrees,
            order,
            reflections,
            verified: verification,
        })
    }

    /// Recover the degrees of a Custom system from the codimension-count
    /// identity: the coefficient of `t^k` in `prod (1 + (n_i - 1) t)` counts
    /// group elements with fixed space of codimension `k`.
    #[allow(clippy::needless_range_loop)]
    fn degrees_from_enumeration(&self, limit: Option<u128>) -> Result<Vec<u32>> {
        let group = self.generate_group(limit)?;
        let rank = self.rank();
        let mut counts = vec![0u128; rank + 1];
        for w in &group {
            counts[w.fixed_space_codim()] += 1;
        }
        // Factor prod (1 + m_i t) with nonnegative integers m_i by trial
        // deflation; the m_i are the degrees minus one.
        let max_m: u128 = counts.iter().sum::<u128>();
        let mut poly = counts;
        let mut ms = Vec::new();
        'outer: while poly.len() > 1 {
            for m in 0..=max_m {
                // Try dividing by (1 + m t).
                let mut quot = Vec::with_capacity(poly.len() - 1);
                let mut ok = true;
                let mut carry = poly[0];
                for k in 1..poly.len() {
                    quot.push(carry);
                    let prev = carry;
                    match poly[k].checked_sub(match prev.checked_mul(m) {
                        Some(v) => v,
                        None => {
                            ok = false;
                            break;
                        }
                    }) {
                        Some(v) => carry = v,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && carry == 0 && quot.last() == Some(&1) {
                    // carry after consuming the last coefficient must vanish:
                    // re-check by multiplication.
                    let mut prod = vec![0u128; quot.len() + 1];
                    for (k, &q) in quot.iter().enumerate() {
                        prod[k] += q;
                        prod[k + 1] += q * m;
                    }
                    if prod == poly {
                        ms.push(m as u32);
                        poly = quot;
                        continue 'outer;
                    }
                }
            }
            return Err(Error::UnsupportedType(
                "codimension polynomial did not factor over the integers".into(),
            ));
        }
        let mut degrees: Vec<u32> = ms.iter().map(|&m| m + 1).collect();
        degrees.sort_unstable();
        // Degree-1 factors (rank deficiency padding) are dropped.
        degrees.retain(|&n| n > 1);
        Ok(degrees)
    }
}

// ---------------------------------------------------------------------------
// Per-type root lists (paper coordinate conventions).
// ---------------------------------------------------------------------------

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat_int(0); d];
    v[i] = rat_int(1);
    v
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x.clone()).collect()
}

/// Type A(d-1) in R^d: all differences of basis vectors.
fn roots_a(d: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                out.push(sub(&unit(d, i), &unit(d, j)));
            }
        }
    }
    out
}

/// Type B(d): differences/sums plus the basis vectors.
fn roots_b(d: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            out.push(sub(&unit(d, i), &unit(d, j)));
            out.push(sub(&unit(d, j), &unit(d, i)));
            out.push(add(&unit(d, i), &unit(d, j)));
            out.push(neg(&add(&unit(d, i), &unit(d, j))));
        }
    }
    for i in 0..d {
        out.push(unit(d, i));
        out.push(neg(&unit(d, i)));
    }
    out
}

/// Type D(d): differences and sums only.
fn roots_d(d: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            out.push(sub(&unit(d, i), &unit(d, j)));
            out.push(sub(&unit(d, j), &unit(d, i)));
            out.push(add(&unit(d, i), &unit(d, j)));
            out.push(neg(&add(&unit(d, i), &unit(d, j))));
        }
    }
    out
}

/// The reducible system Z2^d: the signed basis vectors.
fn roots_z2(d: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..d {
        out.push(unit(d, i));
        out.push(neg(&unit(d, i)));
    }
    out
}

/// G2 inside the sum-zero plane of R^3.
fn roots_g2() -> Vec<Vec<Rational>> {
    let d = 3;
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                out.push(sub(&unit(d, i), &unit(d, j)));
            }
        }
    }
    for i in 0..3 {
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut v = vec![rat_int(0); 3];
        v[i] = rat_int(2);
        v[j] = rat_int(-1);
        v[k] = rat_int(-1);
        out.push(v.clone());
        out.push(neg(&v));
    }
    out
}

/// F4: long roots +-e_i +- e_j plus short roots +-e_i and half-sum vectors.
fn roots_f4() -> Vec<Vec<Rational>> {
    let d = 4;
    let mut out = roots_d(4);
    for i in 0..d {
        out.push(unit(d, i));
        out.push(neg(&unit(d, i)));
    }
    for signs in 0..16u32 {
        let v: Vec<Rational> = (0..4)
            .map(|i| {
                if signs & (1 << i) == 0 {
                    rat(1, 2)
                } else {
                    rat(-1, 2)
                }
            })
            .collect();
        out.push(v);
    }
    out
}

/// Rational realization of I2(4): the B2 configuration with the dihedral
/// class labeling (even-index reflections are the axis roots).
fn roots_i2_4() -> Vec<Vec<Rational>> {
    roots_b(2)
}

/// E8, with E6/E7 as the sub-systems spanned by the first 6/7 simple roots.
fn roots_e(tag: &TypeTag) -> Vec<Vec<Rational>> {
    let d = 8;
    let mut all = roots_d(8);
    for signs in 0..256u32 {
        if (signs.count_ones()) % 2 != 0 {
            continue;
        }
        let v: Vec<Rational> = (0..8)
            .map(|i| {
                if signs & (1 << i) == 0 {
                    rat(1, 2)
                } else {
                    rat(-1, 2)
                }
            })
            .collect();
        all.push(v);
    }
    if matches!(tag, TypeTag::E8) {
        return all;
    }
    // Simple roots of E8 in these coordinates.
    let mut r: Vec<Vec<Rational>> = Vec::new();
    let mut r1 = vec![rat(1, 2); 8];
    for item in r1.iter_mut().take(7).skip(1) {
        *item = rat(-1, 2);
    }
    r.push(r1);
    r.push(add(&unit(d, 0), &unit(d, 1)));
    for i in 3..=8 {
        r.push(sub(&unit(d, i - 2), &unit(d, i - 3)));
    }
    let span = match tag {
        TypeTag::E6 => &r[..6],
        TypeTag::E7 => &r[..7],
        _ => unreachable!(),
    };
    all.into_iter()
        .filter(|v| solve_in_span(span, v).is_some())
        .collect()
}

/// Report produced by [`RootSystem::degrees_and_checks`].
#[derive(Clone, Debug, PartialEq)]
pub struct DegreesReport {
    /// Fundamental degrees.
    pub degrees: Vec<u32>,
    /// Product of the degrees = predicted group order.
    pub order: u128,
    /// Sum of (degree - 1) = predicted reflection count.
    pub reflections: u32,
    /// Enumeration check outcome; `None` when the group exceeds the cap.
    pub verified: Option<bool>,
}
