use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, span_basis, unit_vector, Matrix};
use crate::rational::{q, JsonQ, Q};

use super::algebra::FinDimAlgebra;
use super::poly::minimal_polynomial;

/// A finite-dimensional left module, given by one action matrix per algebra
/// basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawModule", into = "RawModule")]
pub struct AlgebraModule {
    dim: usize,
    action: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
struct RawModule {
    dim: usize,
    action: Vec<Vec<Vec<JsonQ>>>,
}

impl TryFrom<RawModule> for AlgebraModule {
    type Error = Error;
    fn try_from(raw: RawModule) -> Result<Self> {
        let action = raw
            .action
            .into_iter()
            .map(|rows| {
                let rows: Vec<Vec<Q>> = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
                if rows.iter().any(|r| r.len() != raw.dim) {
                    return Err(Error::InvalidModule("ragged action matrix".into()));
                }
                Ok(if rows.is_empty() {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_rows(&rows)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraModule::new(raw.dim, action)
    }
}

impl From<AlgebraModule> for RawModule {
    fn from(m: AlgebraModule) -> Self {
        RawModule {
            dim: m.dim,
            action: m
                .action
                .iter()
                .map(|a| a.to_rows().into_iter().map(|r| r.into_iter().map(JsonQ).collect()).collect())
                .collect(),
        }
    }
}

/// Outcome of a simplicity test. The witness of non-simplicity is a basis of
/// a proper nonzero submodule (empty for the zero module).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple { submodule: Vec<Vec<Q>> },
    Undetermined,
}

impl AlgebraModule {
    pub fn new(dim: usize, action: Vec<Matrix>) -> Result<Self> {
        for (k, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "action matrix {k} is {}x{}, expected {dim}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(AlgebraModule { dim, action })
    }

    pub fn zero(a: &FinDimAlgebra) -> Self {
        AlgebraModule {
            dim: 0,
            action: vec![Matrix::zeros(0, 0); a.dim()],
        }
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &FinDimAlgebra) -> Self {
        AlgebraModule {
            dim: a.dim(),
            action: (0..a.dim()).map(|i| a.left_basis(i).clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Checks `rho(unit) = 1` and `rho(e_i) rho(e_j) = rho(e_i e_j)`.
    pub fn validate(&self, a: &FinDimAlgebra) -> Result<()> {
        if self.action.len() != a.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                self.action.len(),
                a.dim()
            )));
        }
        if self.act(a.unit()) != Matrix::identity(self.dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = a.left_basis(i).column(j);
                if &self.action[i] * &self.action[j] != self.act(&prod) {
                    return Err(Error::InvalidModule(format!(
                        "action does not respect the product of basis elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[Q]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &AlgebraModule) -> AlgebraModule {
        let d = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m[(r, c)] = x[(r, c)].clone();
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m[(self.dim + r, self.dim + c)] = y[(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        AlgebraModule { dim: d, action }
    }

    /// Basis (reduced echelon) of the submodule generated by `vectors`.
    pub fn generated_submodule(&self, vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut basis = span_basis(self.dim, vectors);
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut candidates = basis.clone();
            for v in &frontier {
                for m in &self.action {
                    candidates.push(m.mul_vec(v));
                }
            }
            let next = span_basis(self.dim, &candidates);
            if next.len() == basis.len() {
                break;
            }
            frontier = next.clone();
            basis = next;
        }
        basis
    }

    pub fn is_submodule(&self, basis: &[Vec<Q>]) -> bool {
        self.generated_submodule(basis).len() == span_basis(self.dim, basis).len()
    }

    /// The module structure on a submodule, in the coordinates of `basis`.
    pub fn restrict(&self, basis: &[Vec<Q>]) -> Result<AlgebraModule> {
        if !self.is_submodule(basis) {
            return Err(Error::InvalidModule("restriction to a subspace that is not a submodule".into()));
        }
        let k = basis.len();
        let solver = Coordinates::new(self.dim, basis);
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Q>> = basis.iter().map(|v| solver.coords(&m.mul_vec(v))).collect();
                Matrix::from_columns(k, &cols)
            })
            .collect();
        Ok(AlgebraModule { dim: k, action })
    }

    /// The quotient by a submodule, together with the projection matrix.
    pub fn quotient(&self, sub: &[Vec<Q>]) -> Result<(AlgebraModule, Matrix)> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidModule("quotient by a subspace that is not a submodule".into()));
        }
        let sub = span_basis(self.dim, sub);
        let mut full = sub.clone();
        let mut complement = Vec::new();
        for i in 0..self.dim {
            let e = unit_vector(self.dim, i);
            let mut trial = full.clone();
            trial.push(e.clone());
            if span_basis(self.dim, &trial).len() > full.len() {
                full = trial;
                complement.push(e);
            }
        }
        let change = Matrix::from_columns(self.dim, &full)
            .inverse()
            .expect("a basis matrix is invertible");
        let k = sub.len();
        let rest: Vec<usize> = (k..self.dim).collect();
        let all: Vec<usize> = (0..self.dim).collect();
        let projection = change.submatrix(&rest, &all);
        let lift = Matrix::from_columns(self.dim, &complement);
        let qd = self.dim - k;
        let action = self
            .action
            .iter()
            .map(|m| if qd == 0 { Matrix::zeros(0, 0) } else { &(&projection * m) * &lift })
            .collect();
        Ok((AlgebraModule { dim: qd, action }, projection))
    }

    /// Dual module `M*` for the opposite algebra: action by transposes.
    fn transposed_action(&self) -> AlgebraModule {
        AlgebraModule {
            dim: self.dim,
            action: self.action.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Simplicity test. Exact steps, in order: the Jacobson radical of `A`
    /// must kill `M`; then `End(M) = Q` proves simplicity; otherwise an
    /// endomorphism or algebra element with a rational eigenvalue, or a
    /// vector search, produces a proper submodule. When all of these fail
    /// the answer is `Undetermined`.
    pub fn simplicity(&self, a: &FinDimAlgebra) -> Simplicity {
        if self.dim == 0 {
            return Simplicity::NotSimple { submodule: Vec::new() };
        }
        let proper = |basis: Vec<Vec<Q>>| !basis.is_empty() && basis.len() < self.dim;
        let rad: Vec<Vec<Q>> = a
            .jacobson_radical()
            .iter()
            .flat_map(|j| {
                let m = self.act(j);
                (0..self.dim).map(move |c| m.column(c))
            })
            .filter(|v| !is_zero_vec(v))
            .collect();
        if !rad.is_empty() {
            // J M is a submodule, and J M != M by Nakayama.
            return Simplicity::NotSimple {
                submodule: self.generated_submodule(&rad),
            };
        }
        let end = hom_space(self, self);
        if end.len() == 1 {
            return Simplicity::Simple;
        }
        // A non-scalar endomorphism with a rational eigenvalue has a proper
        // nonzero kernel after shifting.
        let mut candidates: Vec<Matrix> = end.clone();
        for x in &end {
            for y in &end {
                candidates.push(x * y);
            }
        }
        for phi in &candidates {
            let (roots, _) = minimal_polynomial(phi).rational_roots();
            for (mu, _) in roots {
                let shifted = phi - &Matrix::identity(self.dim).scale(&mu);
                let kernel = shifted.nullspace();
                if proper(kernel.clone()) {
                    return Simplicity::NotSimple { submodule: kernel };
                }
            }
        }
        if let Some(w) = self.vector_search() {
            return Simplicity::NotSimple { submodule: w };
        }
        // A submodule of M* gives one of M through its annihilator.
        if let Some(w) = self.transposed_action().vector_search() {
            let ann = Matrix::from_rows(&w).nullspace();
            return Simplicity::NotSimple { submodule: ann };
        }
        Simplicity::Undetermined
    }

    /// Looks for a vector generating a proper submodule: unit vectors and
    /// pairwise sums always, plus every vector of `{-2..2}^dim` when
    /// `dim <= 4`.
    fn vector_search(&self) -> Option<Vec<Vec<Q>>> {
        let d = self.dim;
        let mut vectors: Vec<Vec<Q>> = (0..d).map(|i| unit_vector(d, i)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let mut v = unit_vector(d, i);
                v[j] = Q::one();
                vectors.push(v);
            }
        }
        if d <= 4 {
            let total = 5usize.pow(d as u32);
            for code in 1..total {
                let mut c = code;
                let v: Vec<Q> = (0..d)
                    .map(|_| {
                        let x = (c % 5) as i64 - 2;
                        c /= 5;
                        q(x)
                    })
                    .collect();
                vectors.push(v);
            }
        }
        vectors
            .into_iter()
            .filter(|v| !is_zero_vec(v))
            .map(|v| self.generated_submodule(&[v]))
            .find(|s| s.len() < d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("modules serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModule(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

/// Coordinates with respect to a fixed independent family, via a precomputed
/// left inverse.
pub(crate) struct Coordinates {
    left_inverse: Matrix,
    k: usize,
}

impl Coordinates {
    pub(crate) fn new(dim: usize, basis: &[Vec<Q>]) -> Self {
        let k = basis.len();
        if k == 0 {
            return Coordinates {
                left_inverse: Matrix::zeros(0, dim),
                k,
            };
        }
        let b = Matrix::from_columns(dim, basis);
        let bt = b.transpose();
        let gram = (&bt * &b).inverse().expect("basis vectors are independent");
        Coordinates {
            left_inverse: &gram * &bt,
            k,
        }
    }

    /// Coordinates of a vector known to lie in the span.
    pub(crate) fn coords(&self, v: &[Q]) -> Vec<Q> {
        if self.k == 0 {
            return Vec::new();
        }
        self.left_inverse.mul_vec(v)
    }
}

/// Basis of `Hom_A(M, N)` as `dim N x dim M` matrices.
pub fn hom_space(m: &AlgebraModule, n: &AlgebraModule) -> Vec<Matrix> {
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Vec::new();
    }
    // T rho_M(k) - rho_N(k) T = 0, unknown T[r][s] at index r * dm + s.
    let mut system: Vec<Vec<Q>> = Vec::new();
    for (am, an) in m.action().iter().zip(n.action()) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![Q::zero(); unknowns];
                for s in 0..dm {
                    row[r * dm + s] += &am[(s, c)];
                }
                for s in 0..dn {
                    row[s * dm + c] -= &an[(r, s)];
                }
                if !is_zero_vec(&row) {
                    system.push(row);
                }
            }
        }
        // Keep the system small by reducing after each generator.
        system = span_basis(unknowns, &system);
    }
    let solutions = if system.is_empty() {
        (0..unknowns).map(|i| unit_vector(unknowns, i)).collect()
    } else {
        Matrix::from_rows(&system).nullspace()
    };
    solutions
        .into_iter()
        .map(|v| {
            let rows: Vec<Vec<Q>> = v.chunks(dm).map(<[Q]>::to_vec).collect();
            Matrix::from_rows(&rows)
        })
        .collect()
}

pub fn hom_dim(m: &AlgebraModule, n: &AlgebraModule) -> usize {
    hom_space(m, n).len()
}

/// Number of random combinations of a Hom basis tried when looking for an
/// invertible homomorphism.
const ISO_ATTEMPTS: usize = 24;

/// Whether two modules over the same algebra are isomorphic: some
/// homomorphism is invertible. Invertible elements, if any exist, are
/// Zariski dense in `Hom`, so random combinations with coefficients in
/// `[-1000, 1000]` find one except with negligible probability; the seed is
/// fixed, so the answer is deterministic.
pub fn is_isomorphic(m: &AlgebraModule, n: &AlgebraModule) -> bool {
    if m.dim() != n.dim() {
        return false;
    }
    if m.dim() == 0 {
        return true;
    }
    let hom = hom_space(m, n);
    if hom.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..ISO_ATTEMPTS {
        let mut t = Matrix::zeros(n.dim(), m.dim());
        for (k, h) in hom.iter().enumerate() {
            let c = if attempt == 0 { q(k as i64 + 1) } else { q(rng.gen_range(-1000..=1000)) };
            t = &t + &h.scale(&c);
        }
        if !t.determinant().is_zero() {
            return true;
        }
    }
    false
}
