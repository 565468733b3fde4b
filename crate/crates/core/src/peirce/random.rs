//! Random split algebras with known simple modules, for property tests.
//!
//! An algebra is drawn as the span of the matrix units `E_rs` over a random
//! preorder on `{0, ..., n-1}` (reflexive and transitive, so the span is closed
//! under products). The basis is then scrambled by a unitriangular change of
//! coordinates and the matrices are conjugated by a random integer matrix,
//! so structure constants look generic. The simple modules are the diagonal
//! blocks on the equivalence classes of the preorder.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::Matrix;
use crate::rational::{q, Q};

use super::algebra::{matrix_unit, FinDimAlgebra, IdempotentFamily};
use super::module::AlgebraModule;

#[derive(Debug, Clone)]
pub struct RandomSplitAlgebra {
    pub n: usize,
    /// Pairs `(r, s)` with `E_rs` in the algebra.
    pub pattern: Vec<(usize, usize)>,
    /// Equivalence classes of the preorder.
    pub classes: Vec<Vec<usize>>,
    /// Basis of the algebra as `n x n` matrices.
    pub matrices: Vec<Matrix>,
    pub algebra: FinDimAlgebra,
    conj: Matrix,
    conj_inv: Matrix,
}

/// Random unitriangular integer matrix with permuted rows and columns; its
/// inverse is integral too.
fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    for r in 0..n {
        for c in r + 1..n {
            m[(r, c)] = q(rng.gen_range(-2..=2));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let idx: Vec<usize> = (0..n).collect();
    m.submatrix(&perm, &idx).submatrix(&idx, &perm)
}

impl RandomSplitAlgebra {
    pub fn generate<R: Rng>(rng: &mut R, max_n: usize) -> Self {
        let n = rng.gen_range(1..=max_n.max(1));
        let density = rng.gen_range(0.15..0.6);
        let mut rel = vec![vec![false; n]; n];
        for (r, row) in rel.iter_mut().enumerate() {
            for (s, x) in row.iter_mut().enumerate() {
                *x = r == s || rng.gen_bool(density);
            }
        }
        // Warshall closure.
        for k in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if rel[r][k] && rel[k][s] {
                        rel[r][s] = true;
                    }
                }
            }
        }
        let pattern: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |s| (r, s)))
            .filter(|&(r, s)| rel[r][s])
            .collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (r, row) in rel.iter().enumerate() {
            if let Some(c) = classes.iter_mut().find(|c| rel[c[0]][r] && row[c[0]]) {
                c.push(r);
            } else {
                classes.push(vec![r]);
            }
        }
        let units: Vec<Matrix> = pattern.iter().map(|&(r, s)| matrix_unit(n, r, s)).collect();
        // Unitriangular recombination of the basis.
        let k = units.len();
        let mut mixed = Vec::with_capacity(k);
        for a in 0..k {
            let mut m = units[a].clone();
            for u in units.iter().skip(a + 1) {
                let c: i64 = rng.gen_range(-1..=1);
                if c != 0 {
                    m = &m + &u.scale(&q(c));
                }
            }
            mixed.push(m);
        }
        let conj = random_unimodular(rng, n);
        let conj_inv = conj.inverse().expect("unimodular");
        let matrices: Vec<Matrix> = mixed.iter().map(|m| &(&conj * m) * &conj_inv).collect();
        let algebra = FinDimAlgebra::from_matrix_basis(n, &matrices).expect("pattern spans are algebras");
        RandomSplitAlgebra {
            n,
            pattern,
            classes,
            matrices,
            algebra,
            conj,
            conj_inv,
        }
    }

    /// Coordinates of an `n x n` matrix in the algebra basis.
    pub fn coords(&self, m: &Matrix) -> Vec<Q> {
        let flat: Vec<Vec<Q>> = self.matrices.iter().map(Matrix::flatten).collect();
        Matrix::from_columns(self.n * self.n, &flat)
            .solve(&m.flatten())
            .expect("matrix lies in the algebra")
    }

    /// `Q^n` with the algebra acting by its matrices.
    pub fn column_module(&self) -> AlgebraModule {
        AlgebraModule::new(self.n, self.matrices.clone()).expect("square matrices")
    }

    /// The simple module attached to a class: the diagonal block of each
    /// basis matrix on that class, in the unconjugated frame.
    pub fn simple_module(&self, class: usize) -> AlgebraModule {
        let c = &self.classes[class];
        let action = self
            .matrices
            .iter()
            .map(|m| (&(&self.conj_inv * m) * &self.conj).submatrix(c, c))
            .collect();
        AlgebraModule::new(c.len(), action).expect("square blocks")
    }

    /// Diagonal idempotents grouped at random, conjugated by a random unipotent
    /// element `1 + x` with `x` in the radical.
    pub fn random_idempotents<R: Rng>(&self, rng: &mut R) -> IdempotentFamily {
        let n = self.n;
        let groups = rng.gen_range(1..=n);
        let mut assignment: Vec<usize> = (0..n).map(|r| if r < groups { r } else { rng.gen_range(0..groups) }).collect();
        assignment.shuffle(rng);
        let mut x = Matrix::zeros(n, n);
        for &(r, s) in &self.pattern {
            let radical = !self.pattern.contains(&(s, r));
            if radical {
                x[(r, s)] = q(rng.gen_range(-2..=2));
            }
        }
        let u = &Matrix::identity(n) + &x;
        // (1 + x)^{-1} = sum (-x)^k, finite since x is nilpotent
        let mut u_inv = Matrix::identity(n);
        let mut power = Matrix::identity(n);
        for _ in 1..n {
            power = &power * &(-&x);
            u_inv = &u_inv + &power;
        }
        let elements = (0..groups)
            .map(|g| {
                let mut e = Matrix::zeros(n, n);
                for r in (0..n).filter(|&r| assignment[r] == g) {
                    e[(r, r)] = q(1);
                }
                let e = &(&u * &e) * &u_inv;
                self.coords(&(&(&self.conj * &e) * &self.conj_inv))
            })
            .collect();
        IdempotentFamily::new(elements)
    }

    /// A central element taking a random integer value on each connected
    /// component of the preorder graph.
    pub fn random_central_element<R: Rng>(&self, rng: &mut R) -> (Vec<Q>, usize) {
        let n = self.n;
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut [usize], x: usize) -> usize {
            if comp[x] != x {
                let root = find(comp, comp[x]);
                comp[x] = root;
            }
            comp[x]
        }
        for &(r, s) in &self.pattern {
            let (a, b) = (find(&mut comp, r), find(&mut comp, s));
            comp[a] = b;
        }
        let roots: Vec<usize> = (0..n).map(|r| find(&mut comp, r)).collect();
        let mut values = std::collections::BTreeMap::new();
        let mut z = Matrix::zeros(n, n);
        for r in 0..n {
            let v = *values.entry(roots[r]).or_insert_with(|| rng.gen_range(-3..=3i64));
            z[(r, r)] = q(v);
        }
        let distinct: std::collections::BTreeSet<i64> = values.values().copied().collect();
        (self.coords(&(&(&self.conj * &z) * &self.conj_inv)), distinct.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peirce::module::Simplicity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let r = RandomSplitAlgebra::generate(&mut rng, 4);
            r.column_module().validate(&r.algebra).unwrap();
            for c in 0..r.classes.len() {
                let s = r.simple_module(c);
                s.validate(&r.algebra).unwrap();
                assert_eq!(s.simplicity(&r.algebra), Simplicity::Simple);
            }
            r.random_idempotents(&mut rng).validate(&r.algebra).unwrap();
            let (z, _) = r.random_central_element(&mut rng);
            assert!(r.algebra.is_central(&z));
        }
    }
}
