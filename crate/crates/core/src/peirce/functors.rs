use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{coords_in, in_span, is_zero_vec, span_basis, Matrix};
use crate::rational::{de_q_mat, ser_q_mat, Q};

use super::algebra::{matrix_units, tensor_end, FinDimAlgebra, IdempotentFamily};
use super::module::{is_isomorphic, AlgebraModule, Coordinates};

/// A basis of `A_ij = e_i A e_j` (indices are zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeirceBlock {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_q_mat", deserialize_with = "de_q_mat")]
    pub basis: Vec<Vec<Q>>,
}

impl PeirceBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Bases of all `e_i A e_j`. Their dimensions add up to `dim A`.
pub fn peirce_decompose(a: &FinDimAlgebra, e: &IdempotentFamily) -> Result<Vec<PeirceBlock>> {
    e.validate(a)?;
    let mut blocks = Vec::new();
    for (i, ei) in e.elements.iter().enumerate() {
        let left = a.left_matrix(ei);
        for (j, ej) in e.elements.iter().enumerate() {
            let map = &left * &a.right_matrix(ej);
            blocks.push(PeirceBlock {
                i,
                j,
                basis: span_basis(a.dim(), &map.column_space()),
            });
        }
    }
    let total: usize = blocks.iter().map(PeirceBlock::dim).sum();
    debug_assert_eq!(total, a.dim());
    Ok(blocks)
}

/// Checks `A_ij A_kl` lies in `A_il` when `j = k` and vanishes otherwise, on
/// all pairs of block basis vectors.
pub fn peirce_multiplication_check(a: &FinDimAlgebra, blocks: &[PeirceBlock]) -> bool {
    let find = |i: usize, l: usize| blocks.iter().find(|b| b.i == i && b.j == l);
    for x in blocks {
        for y in blocks {
            for u in &x.basis {
                for v in &y.basis {
                    let p = a.mul(u, v);
                    if x.j != y.i {
                        if !is_zero_vec(&p) {
                            return false;
                        }
                    } else {
                        let ok = match find(x.i, y.j) {
                            Some(target) => in_span(&target.basis, &p),
                            None => is_zero_vec(&p),
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// The corner algebra `A_ii = e_i A e_i` with unit `e_i`, and its basis as
/// elements of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerAlgebra {
    pub algebra: FinDimAlgebra,
    pub embedding: Vec<Vec<Q>>,
    pub idempotent: Vec<Q>,
}

pub fn corner_algebra(a: &FinDimAlgebra, e: &IdempotentFamily, i: usize) -> Result<CornerAlgebra> {
    e.validate(a)?;
    check_index(e, i)?;
    let ei = e.get(i).to_vec();
    let map = &a.left_matrix(&ei) * &a.right_matrix(&ei);
    let basis = span_basis(a.dim(), &map.column_space());
    if basis.is_empty() {
        return Err(Error::InvalidIdempotents(format!("e_{} is zero", i + 1)));
    }
    let coords = |v: &[Q]| coords_in(&basis, v).expect("corner is closed under products");
    let unit = coords(&ei);
    let mut constants = Vec::new();
    for (p, bp) in basis.iter().enumerate() {
        for (r, br) in basis.iter().enumerate() {
            for (k, c) in coords(&a.mul(bp, br)).into_iter().enumerate() {
                if !c.is_zero() {
                    constants.push((p, r, k, c));
                }
            }
        }
    }
    let algebra = FinDimAlgebra::from_structure_constants(basis.len(), unit, constants)?;
    Ok(CornerAlgebra {
        algebra,
        embedding: basis,
        idempotent: ei,
    })
}

fn check_index(e: &IdempotentFamily, i: usize) -> Result<()> {
    if i >= e.len() {
        return Err(Error::InvalidIdempotents(format!(
            "index {} out of range for a family of {}",
            i + 1,
            e.len()
        )));
    }
    Ok(())
}

impl CornerAlgebra {
    /// `P_i M = e_i M` as an `A_ii`-module, with its basis inside `M`.
    pub fn corner_of(&self, m: &AlgebraModule) -> (AlgebraModule, Vec<Vec<Q>>) {
        let w = span_basis(m.dim(), &m.act(&self.idempotent).column_space());
        let solver = Coordinates::new(m.dim(), &w);
        let action = self
            .embedding
            .iter()
            .map(|b| {
                let rho = m.act(b);
                let cols: Vec<Vec<Q>> = w.iter().map(|v| solver.coords(&rho.mul_vec(v))).collect();
                if w.is_empty() {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_columns(w.len(), &cols)
                }
            })
            .collect();
        let module = AlgebraModule::new(w.len(), action).expect("square action matrices");
        (module, w)
    }
}

/// `P_i M = e_i M` with the restricted action of `A_ii`.
pub fn corner_module(m: &AlgebraModule, a: &FinDimAlgebra, e: &IdempotentFamily, i: usize) -> Result<AlgebraModule> {
    m.validate(a)?;
    let corner = corner_algebra(a, e, i)?;
    Ok(corner.corner_of(m).0)
}

/// `Q_i N = A e_i (x)_{A_ii} N`: the quotient of `A e_i (x) N` by the
/// relations `(x b) (x) n - x (x) (b n)` for `b` in `A_ii`.
pub fn induced_module(n: &AlgebraModule, a: &FinDimAlgebra, e: &IdempotentFamily, i: usize) -> Result<AlgebraModule> {
    let corner = corner_algebra(a, e, i)?;
    n.validate(&corner.algebra)?;
    if n.dim() == 0 {
        return Ok(AlgebraModule::zero(a));
    }
    let ei = &corner.idempotent;
    let u = span_basis(a.dim(), &a.right_matrix(ei).column_space());
    let solver = Coordinates::new(a.dim(), &u);
    let (r, nd) = (u.len(), n.dim());
    let idx = |p: usize, s: usize| p * nd + s;
    // A acts on A e_i by left multiplication, and on the tensor factor only.
    let left_on_u: Vec<Matrix> = (0..a.dim())
        .map(|k| {
            let cols: Vec<Vec<Q>> = u.iter().map(|x| solver.coords(&a.left_basis(k).mul_vec(x))).collect();
            Matrix::from_columns(r, &cols)
        })
        .collect();
    let tensor_action: Vec<Matrix> = left_on_u.iter().map(|m| m.kron(&Matrix::identity(nd))).collect();
    let tensor = AlgebraModule::new(r * nd, tensor_action)?;
    let mut relations = Vec::new();
    for (p, x) in u.iter().enumerate() {
        for (b, rho_b) in corner.embedding.iter().zip(n.action()) {
            let xb = solver.coords(&a.mul(x, b));
            for s in 0..nd {
                let mut rel = vec![Q::zero(); r * nd];
                for (p2, c) in xb.iter().enumerate() {
                    rel[idx(p2, s)] += c;
                }
                for t in 0..nd {
                    rel[idx(p, t)] -= &rho_b[(t, s)];
                }
                if !is_zero_vec(&rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let relations = span_basis(r * nd, &relations);
    let (q, _) = tensor.quotient(&relations)?;
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleQuotient {
    pub module: AlgebraModule,
    /// Basis of the largest submodule killed by `e_i`.
    pub radical: Vec<Vec<Q>>,
}

/// The quotient of `Q` by its largest submodule `J` inside the kernel of
/// `e_i`; `J` is the set of `v` with `e_i a v = 0` for every basis element
/// `a`. This is the unique simple quotient when `Q = Q_i N` with `N` simple.
pub fn simple_quotient(q: &AlgebraModule, a: &FinDimAlgebra, e: &IdempotentFamily, i: usize) -> Result<SimpleQuotient> {
    q.validate(a)?;
    e.validate(a)?;
    check_index(e, i)?;
    if q.dim() == 0 {
        return Ok(SimpleQuotient {
            module: q.clone(),
            radical: Vec::new(),
        });
    }
    let ei = e.get(i);
    let rho_e = q.act(ei);
    let corner_space = rho_e.column_space();
    if q.generated_submodule(&corner_space).len() != q.dim() {
        return Err(Error::NotGeneratedByCorner(i + 1));
    }
    let mut stacked = rho_e.clone();
    for k in 0..a.dim() {
        stacked = stacked.vstack(&(&rho_e * &q.action()[k]));
    }
    let radical = stacked.nullspace();
    let (module, _) = q.quotient(&radical)?;
    Ok(SimpleQuotient { module, radical })
}

/// Whether `P_i` of a module is isomorphic to `n` as an `A_ii`-module.
pub fn corner_is_isomorphic(
    m: &AlgebraModule,
    n: &AlgebraModule,
    a: &FinDimAlgebra,
    e: &IdempotentFamily,
    i: usize,
) -> Result<bool> {
    let corner = corner_module(m, a, e, i)?;
    Ok(is_isomorphic(&corner, n))
}

/// `t_F(M) = M (x) F` as a module over `B (x) End(F)`, `dim F = f`.
pub fn t_f(m: &AlgebraModule, f: usize) -> AlgebraModule {
    let units = matrix_units(f);
    let action = m
        .action()
        .iter()
        .flat_map(|rho| units.iter().map(move |u| rho.kron(u)))
        .collect();
    AlgebraModule::new(m.dim() * f, action).expect("square action matrices")
}

/// `T_{F,i} = P_i o t_F`.
pub fn translation_functor(
    m: &AlgebraModule,
    b: &FinDimAlgebra,
    f: usize,
    e: &IdempotentFamily,
    i: usize,
) -> Result<AlgebraModule> {
    m.validate(b)?;
    let a = tensor_end(b, f);
    let corner = corner_algebra(&a, e, i)?;
    Ok(corner.corner_of(&t_f(m, f)).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peirce::module::Simplicity;
    use crate::rational::q;

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn m2_family() -> (FinDimAlgebra, IdempotentFamily) {
        let m2 = FinDimAlgebra::matrix_algebra(2);
        let e = IdempotentFamily::new(vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 1])]);
        (m2, e)
    }

    fn column(n: usize) -> AlgebraModule {
        AlgebraModule::new(n, matrix_units(n)).unwrap()
    }

    #[test]
    fn matrix_blocks() {
        let (m2, e) = m2_family();
        let blocks = peirce_decompose(&m2, &e).unwrap();
        assert_eq!(blocks.len(), 4);
        assert!(blocks.iter().all(|b| b.dim() == 1));
        assert!(peirce_multiplication_check(&m2, &blocks));
        let single = peirce_decompose(&m2, &IdempotentFamily::trivial(&m2)).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].dim(), 4);
        assert!(peirce_multiplication_check(&m2, &single));
    }

    #[test]
    fn corrupted_blocks_fail_the_check() {
        let (m2, e) = m2_family();
        let mut blocks = peirce_decompose(&m2, &e).unwrap();
        // put E12 where E11 should be
        blocks[0].basis = vec![qv(&[0, 1, 0, 0])];
        assert!(!peirce_multiplication_check(&m2, &blocks));
    }

    #[test]
    fn diagonal_blocks() {
        let d = FinDimAlgebra::diagonal(2);
        let e = IdempotentFamily::new(vec![qv(&[1, 0]), qv(&[0, 1])]);
        let blocks = peirce_decompose(&d, &e).unwrap();
        let dims: Vec<usize> = blocks.iter().map(PeirceBlock::dim).collect();
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn corners_of_the_column_module() {
        let (m2, e) = m2_family();
        let col = column(2);
        let c0 = corner_module(&col, &m2, &e, 0).unwrap();
        let c1 = corner_module(&col, &m2, &e, 1).unwrap();
        assert_eq!((c0.dim(), c1.dim()), (1, 1));
        let whole = corner_module(&col, &m2, &IdempotentFamily::trivial(&m2), 0).unwrap();
        assert!(is_isomorphic(&whole, &col));
        let zero = corner_module(&AlgebraModule::zero(&m2), &m2, &e, 0).unwrap();
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn induction_from_a_matrix_corner() {
        let (m2, e) = m2_family();
        let n = AlgebraModule::new(1, vec![Matrix::identity(1)]).unwrap();
        let q = induced_module(&n, &m2, &e, 0).unwrap();
        assert_eq!(q.dim(), 2);
        q.validate(&m2).unwrap();
        assert!(is_isomorphic(&q, &column(2)));
        let s = simple_quotient(&q, &m2, &e, 0).unwrap();
        assert!(s.radical.is_empty());
        assert!(corner_is_isomorphic(&s.module, &n, &m2, &e, 0).unwrap());
        let zero = AlgebraModule::new(0, vec![Matrix::zeros(0, 0)]).unwrap();
        assert_eq!(induced_module(&zero, &m2, &e, 0).unwrap().dim(), 0);
    }

    #[test]
    fn induction_with_central_idempotents() {
        let d = FinDimAlgebra::diagonal(2);
        let e = IdempotentFamily::new(vec![qv(&[1, 0]), qv(&[0, 1])]);
        let n = AlgebraModule::new(2, vec![Matrix::identity(2)]).unwrap();
        let q = induced_module(&n, &d, &e, 1).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.act(&qv(&[1, 0])).is_zero());
        assert_eq!(q.act(&qv(&[0, 1])), Matrix::identity(2));
    }

    #[test]
    fn upper_triangular_simple_quotient() {
        // basis E11, E12, E22; e_2 = E22
        let b = FinDimAlgebra::upper_triangular(2);
        let e = IdempotentFamily::new(vec![qv(&[1, 0, 0]), qv(&[0, 0, 1])]);
        let n = AlgebraModule::new(1, vec![Matrix::identity(1)]).unwrap();
        let q = induced_module(&n, &b, &e, 1).unwrap();
        assert_eq!(q.dim(), 2);
        let s = simple_quotient(&q, &b, &e, 1).unwrap();
        assert_eq!(s.radical.len(), 1);
        assert_eq!(s.module.dim(), 1);
        assert_eq!(s.module.simplicity(&b), Simplicity::Simple);
        assert!(corner_is_isomorphic(&s.module, &n, &b, &e, 1).unwrap());
    }

    #[test]
    fn not_generated_by_corner() {
        let b = FinDimAlgebra::upper_triangular(2);
        let e = IdempotentFamily::new(vec![qv(&[1, 0, 0]), qv(&[0, 0, 1])]);
        // E11 acts as 1, E12 and E22 as 0: killed by e_2
        let s1 = AlgebraModule::new(1, vec![Matrix::identity(1), Matrix::zeros(1, 1), Matrix::zeros(1, 1)]).unwrap();
        s1.validate(&b).unwrap();
        assert_eq!(simple_quotient(&s1, &b, &e, 1), Err(Error::NotGeneratedByCorner(2)));
    }

    #[test]
    fn translation_examples() {
        let f = FinDimAlgebra::field();
        let m = AlgebraModule::new(1, vec![Matrix::identity(1)]).unwrap();
        let a = tensor_end(&f, 2);
        let trivial = IdempotentFamily::trivial(&a);
        assert_eq!(translation_functor(&m, &f, 2, &trivial, 0).unwrap().dim(), 2);
        let e = IdempotentFamily::new(vec![qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 1])]);
        assert_eq!(translation_functor(&m, &f, 2, &e, 0).unwrap().dim(), 1);
        let zero = AlgebraModule::zero(&f);
        assert_eq!(translation_functor(&zero, &f, 2, &e, 1).unwrap().dim(), 0);
        t_f(&m, 3).validate(&tensor_end(&f, 3)).unwrap();
    }
}
