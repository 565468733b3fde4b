use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vector, vec_add, Matrix};
use crate::rational::{de_q_vec, format_q, ser_q_vec, JsonQ, Q};

use super::poly::{minimal_polynomial, Poly};

/// A finite-dimensional associative unital algebra over the rationals, given
/// by structure constants `e_i e_j = sum_k c[i][j][k] e_k`.
///
/// Internally each basis element is stored as its left multiplication matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct FinDimAlgebra {
    dim: usize,
    unit: Vec<Q>,
    left: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    dim: usize,
    #[serde(serialize_with = "ser_q_vec", deserialize_with = "de_q_vec")]
    unit: Vec<Q>,
    mult: Vec<(usize, usize, usize, JsonQ)>,
}

impl TryFrom<RawAlgebra> for FinDimAlgebra {
    type Error = Error;
    fn try_from(raw: RawAlgebra) -> Result<Self> {
        let constants = raw.mult.into_iter().map(|(i, j, k, c)| (i, j, k, c.0)).collect();
        FinDimAlgebra::from_structure_constants(raw.dim, raw.unit, constants)
    }
}

impl From<FinDimAlgebra> for RawAlgebra {
    fn from(a: FinDimAlgebra) -> Self {
        let mut mult = Vec::new();
        for (i, l) in a.left.iter().enumerate() {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    let c = &l[(k, j)];
                    if !c.is_zero() {
                        mult.push((i, j, k, JsonQ(c.clone())));
                    }
                }
            }
        }
        RawAlgebra {
            dim: a.dim,
            unit: a.unit,
            mult,
        }
    }
}

impl FinDimAlgebra {
    /// Builds and validates an algebra from `(i, j, k, c)` entries meaning
    /// `e_i e_j` has coefficient `c` on `e_k`. Repeated entries add up.
    pub fn from_structure_constants(dim: usize, unit: Vec<Q>, constants: Vec<(usize, usize, usize, Q)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "unit has {} coordinates, expected {dim}",
                unit.len()
            )));
        }
        let mut left = vec![Matrix::zeros(dim, dim); dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            left[i][(k, j)] += c;
        }
        let a = FinDimAlgebra { dim, unit, left };
        a.validate()?;
        Ok(a)
    }

    /// Subalgebra of `n x n` matrices spanned by `basis` (which must be
    /// linearly independent, closed under products and contain the identity).
    pub fn from_matrix_basis(n: usize, basis: &[Matrix]) -> Result<Self> {
        let flat: Vec<Vec<Q>> = basis.iter().map(Matrix::flatten).collect();
        let span = Matrix::from_columns(n * n, &flat);
        if span.rank() != basis.len() {
            return Err(Error::InvalidAlgebra("matrix basis is linearly dependent".into()));
        }
        let coords = |m: &Matrix| -> Result<Vec<Q>> {
            span.solve(&m.flatten())
                .ok_or_else(|| Error::InvalidAlgebra("matrix span is not closed under multiplication".into()))
        };
        let unit = coords(&Matrix::identity(n))?;
        let mut constants = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                for (k, c) in coords(&(a * b))?.into_iter().enumerate() {
                    if !c.is_zero() {
                        constants.push((i, j, k, c));
                    }
                }
            }
        }
        Self::from_structure_constants(basis.len(), unit, constants)
    }

    /// The full matrix algebra `M_n`, basis `E_{rs}` in row-major order.
    pub fn matrix_algebra(n: usize) -> Self {
        Self::from_matrix_basis(n, &matrix_units(n)).expect("matrix units form an algebra")
    }

    /// Diagonal `n x n` matrices.
    pub fn diagonal(n: usize) -> Self {
        let basis: Vec<Matrix> = (0..n).map(|i| matrix_unit(n, i, i)).collect();
        Self::from_matrix_basis(n, &basis).expect("diagonal matrices form an algebra")
    }

    /// Upper-triangular `n x n` matrices, basis `E_{rs}` with `r <= s`.
    pub fn upper_triangular(n: usize) -> Self {
        let basis: Vec<Matrix> = (0..n)
            .flat_map(|r| (r..n).map(move |s| matrix_unit(n, r, s)))
            .collect();
        Self::from_matrix_basis(n, &basis).expect("upper-triangular matrices form an algebra")
    }

    /// The ground field as a one-dimensional algebra.
    pub fn field() -> Self {
        Self::matrix_algebra(1)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        for (i, l) in self.left.iter().enumerate() {
            if l.rows() != d || l.cols() != d {
                return Err(Error::InvalidAlgebra(format!("left multiplication {i} has the wrong shape")));
            }
        }
        for i in 0..d {
            let ei = unit_vector(d, i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(Error::InvalidAlgebra(format!(
                    "unit is not a two-sided identity on basis element {i}"
                )));
            }
        }
        // (e_i e_j) e_k = e_i (e_j e_k) for all triples, i.e. L(e_i e_j) = L_i L_j.
        for i in 0..d {
            for j in 0..d {
                let prod = self.left[i].column(j);
                let lhs = self.left_matrix(&prod);
                let rhs = &self.left[i] * &self.left[j];
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails for basis elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        unit_vector(self.dim, i)
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim]
    }

    /// Left multiplication matrix of the basis element `e_i`.
    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Left multiplication matrix of an arbitrary element.
    pub fn left_matrix(&self, a: &[Q]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, l) in a.iter().zip(&self.left) {
            if !c.is_zero() {
                out = &out + &l.scale(c);
            }
        }
        out
    }

    /// Right multiplication matrix: column `j` is `e_j a`.
    pub fn right_matrix(&self, a: &[Q]) -> Matrix {
        let cols: Vec<Vec<Q>> = (0..self.dim).map(|j| self.left[j].mul_vec(a)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.left_matrix(a).mul_vec(b)
    }

    /// Evaluates a polynomial at an element.
    pub fn eval_poly(&self, p: &Poly, z: &[Q]) -> Vec<Q> {
        let mut acc = self.zero();
        for c in p.0.iter().rev() {
            acc = self.mul(&acc, z);
            acc = vec_add(&acc, &self.unit.iter().map(|u| u * c).collect::<Vec<_>>());
        }
        acc
    }

    pub fn is_central(&self, z: &[Q]) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vector(i);
            self.mul(z, &e) == self.mul(&e, z)
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| self.is_central(&self.basis_vector(i)))
    }

    /// Radical of the trace form `(a, b) -> tr L(ab)`, which is the Jacobson
    /// radical in characteristic zero.
    pub fn jacobson_radical(&self) -> Vec<Vec<Q>> {
        let d = self.dim;
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                gram[(i, j)] = (&self.left[i] * &self.left[j]).trace();
            }
        }
        gram.nullspace()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebras serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidAlgebra(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

pub fn matrix_unit(n: usize, r: usize, s: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(r, s)] = Q::one();
    m
}

pub fn matrix_units(n: usize) -> Vec<Matrix> {
    (0..n)
        .flat_map(|r| (0..n).map(move |s| matrix_unit(n, r, s)))
        .collect()
}

/// Mutually orthogonal idempotents summing to the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentFamily {
    #[serde(with = "q_rows")]
    pub elements: Vec<Vec<Q>>,
}

mod q_rows {
    pub(crate) use crate::rational::{de_q_mat as deserialize, ser_q_mat as serialize};
}

impl IdempotentFamily {
    pub fn new(elements: Vec<Vec<Q>>) -> Self {
        IdempotentFamily { elements }
    }

    pub fn trivial(a: &FinDimAlgebra) -> Self {
        Self::new(vec![a.unit().to_vec()])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Q] {
        &self.elements[i]
    }

    /// Checks the three axioms, reporting the first one violated.
    pub fn validate(&self, a: &FinDimAlgebra) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidIdempotents("the family is empty".into()));
        }
        for (i, e) in self.elements.iter().enumerate() {
            if e.len() != a.dim() {
                return Err(Error::InvalidIdempotents(format!(
                    "e_{} has {} coordinates, expected {}",
                    i + 1,
                    e.len(),
                    a.dim()
                )));
            }
        }
        for (i, e) in self.elements.iter().enumerate() {
            if a.mul(e, e) != *e {
                return Err(Error::InvalidIdempotents(format!("e_{}^2 != e_{} (not idempotent)", i + 1, i + 1)));
            }
        }
        for (i, e) in self.elements.iter().enumerate() {
            for (j, f) in self.elements.iter().enumerate() {
                if i != j && !is_zero_vec(&a.mul(e, f)) {
                    return Err(Error::InvalidIdempotents(format!(
                        "e_{} e_{} != 0 (not orthogonal)",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let sum = self.elements.iter().fold(a.zero(), |acc, e| vec_add(&acc, e));
        if sum != a.unit() {
            return Err(Error::InvalidIdempotents(format!(
                "sum of the idempotents is [{}], not the unit",
                sum.iter().map(format_q).collect::<Vec<_>>().join(", ")
            )));
        }
        Ok(())
    }
}

/// `B (x) End(F)` for `F` of dimension `f`. Basis `b_p (x) E_{st}` has index
/// `p f^2 + s f + t`.
pub fn tensor_end(b: &FinDimAlgebra, f: usize) -> FinDimAlgebra {
    assert!(f >= 1, "F must be nonzero");
    let idx = |p: usize, s: usize, t: usize| p * f * f + s * f + t;
    let dim = b.dim() * f * f;
    let mut constants = Vec::new();
    for p in 0..b.dim() {
        for qb in 0..b.dim() {
            let prod = b.left_basis(p).column(qb);
            for (k, c) in prod.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for s in 0..f {
                    for t in 0..f {
                        for v in 0..f {
                            constants.push((idx(p, s, t), idx(qb, t, v), idx(k, s, v), c.clone()));
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![Q::zero(); dim];
    for (p, u) in b.unit().iter().enumerate() {
        for s in 0..f {
            unit[idx(p, s, s)] = u.clone();
        }
    }
    FinDimAlgebra::from_structure_constants(dim, unit, constants).expect("tensor products of algebras are algebras")
}

/// Spectral idempotents of a central element: one per generalized
/// eigenvalue of left multiplication by `z`, found by interpolation
/// (Chinese remainder theorem on the minimal polynomial).
pub fn central_idempotents(a: &FinDimAlgebra, z: &[Q]) -> Result<IdempotentFamily> {
    if z.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: z.len(),
        });
    }
    if !a.is_central(z) {
        return Err(Error::NotCentral);
    }
    let m = minimal_polynomial(&a.left_matrix(z));
    let (roots, rest) = m.rational_roots();
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::SpectrumNotRational);
    }
    let mut roots = roots;
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    let factors: Vec<Poly> = roots.iter().map(|(mu, k)| Poly::linear(mu).pow(*k)).collect();
    let mut elements = Vec::new();
    for (j, fj) in factors.iter().enumerate() {
        let others = factors
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .fold(Poly::one(), |acc, (_, f)| acc.mul(f));
        // u f_j + v g_j = 1, so v g_j is 1 mod f_j and 0 mod the others.
        let (_, _, v) = Poly::ext_gcd(fj, &others);
        let p = v.mul(&others).div_rem(&m).1;
        elements.push(a.eval_poly(&p, z));
    }
    let family = IdempotentFamily::new(elements);
    family.validate(a)?;
    Ok(family)
}
