//! Explicit matrix model of `O_l + u` inside the defining representation.
//!
//! Coordinates are ordered so that the parabolic is block upper triangular:
//! gl blocks, then the residual factor, then the gl blocks again in mirrored
//! order. The invariant form is antidiagonal (symmetric for B and D; for C the
//! first half of the antidiagonal is `+1` and the second half `-1`), so that
//! `g = { X : X^T J + J X = 0 }` and `X -> X - J^{-1} X^T J` projects onto `g`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LeviComposition;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partitions::{dominance_leq_unchecked, Partition};
use crate::rational::q;
use crate::weights::Family;

pub const DEFAULT_SEED: u64 = 20_240_607;
pub const DEFAULT_TRIALS: usize = 8;

/// Nilradical entries are drawn from `-ENTRY_RANGE..=ENTRY_RANGE`.
const ENTRY_RANGE: i64 = 3;

fn antidiagonal_form(family: Family, n: usize) -> Matrix {
    let mut j = Matrix::zeros(n, n);
    for i in 0..n {
        let sign = if family == Family::C && 2 * i >= n { -1 } else { 1 };
        j[(i, n - 1 - i)] = q(sign);
    }
    j
}

struct FormModel {
    family: Family,
    form: Matrix,
    form_inv: Matrix,
}

impl FormModel {
    fn new(family: Family, n: usize) -> Self {
        let form = antidiagonal_form(family, n);
        let form_inv = form.inverse().expect("antidiagonal form is invertible");
        Self {
            family,
            form,
            form_inv,
        }
    }

    fn project(&self, y: &Matrix) -> Matrix {
        if self.family == Family::A {
            return y.clone();
        }
        let reflected = &(&self.form_inv * &y.transpose()) * &self.form;
        y - &reflected
    }
}

/// Upper-triangular nilpotent in Jordan form with the given block sizes.
fn jordan_matrix(parts: &[usize]) -> Matrix {
    let n: usize = parts.iter().sum();
    let mut m = Matrix::zeros(n, n);
    let mut start = 0;
    for &k in parts {
        for i in start..start + k - 1 {
            m[(i, i + 1)] = q(1);
        }
        start += k;
    }
    m
}

fn embed(global: &mut Matrix, local: &Matrix, map: &[usize]) {
    for (lr, &gr) in map.iter().enumerate() {
        for (lc, &gc) in map.iter().enumerate() {
            if !local[(lr, lc)].is_zero() {
                global[(gr, gc)] += &local[(lr, lc)];
            }
        }
    }
}

/// A nilpotent of Jordan type `nu` in the classical algebra of the
/// antidiagonal form of size `nu.size()`, as a sum of nested pieces: equal
/// parts are paired through a `gl` embedding and each leftover part becomes a
/// single Jordan block preserving the form.
fn classical_nilpotent(family: Family, nu: &Partition) -> Result<Matrix> {
    let size = nu.size();
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    let parts = nu.parts();
    let mut i = 0;
    while i < parts.len() {
        let v = parts[i];
        let m = nu.multiplicity(v);
        pairs.extend(std::iter::repeat_n(v, m / 2));
        if m % 2 == 1 {
            singles.push(v);
        }
        i += m;
    }
    let odd_singles: Vec<usize> = singles.iter().copied().filter(|v| v % 2 == 1).collect();
    if odd_singles.len() > 1 {
        return Err(Error::Unsupported(format!(
            "matrix model for orthogonal orbit {nu} with several distinct odd parts of odd multiplicity"
        )));
    }
    // Even-sized pieces first (outermost), the odd piece last (centre).
    let mut pieces: Vec<(usize, bool)> = pairs.iter().map(|&v| (2 * v, true)).collect();
    pieces.extend(singles.iter().filter(|v| *v % 2 == 0).map(|&v| (v, false)));
    pieces.extend(odd_singles.iter().map(|&v| (v, false)));

    let mut out = Matrix::zeros(size, size);
    let mut offset = 0;
    for (s, paired) in pieces {
        let model = FormModel::new(family, s);
        let local = if paired {
            let half = s / 2;
            let mut y = Matrix::zeros(s, s);
            for i in 0..half - 1 {
                y[(i, i + 1)] = q(1);
            }
            model.project(&y)
        } else {
            let mut x = Matrix::zeros(s, s);
            for i in 0..s / 2 {
                let mut e = Matrix::zeros(s, s);
                e[(i, i + 1)] = q(1);
                x = &x + &model.project(&e);
            }
            x
        };
        let half = s / 2;
        let map: Vec<usize> = (0..s)
            .map(|l| {
                if l < half {
                    offset + l
                } else {
                    size - offset - s + l
                }
            })
            .collect();
        embed(&mut out, &local, &map);
        offset += half;
    }
    Ok(out)
}

/// Coordinate layout of the parabolic: `(start, len)` per block in block
/// order, and the block index of each coordinate.
struct Layout {
    dim: usize,
    gl_starts: Vec<(usize, usize)>,
    residual: (usize, usize),
    block_of: Vec<usize>,
}

impl Layout {
    fn new(l: &LeviComposition) -> Self {
        let dim = l.ambient().defining_dim();
        let res_dim = l.residual_dim();
        let mut sizes: Vec<usize> = l.gl_blocks().to_vec();
        let mut gl_starts = Vec::new();
        let mut start = 0;
        for &m in l.gl_blocks() {
            gl_starts.push((start, m));
            start += m;
        }
        let residual = (start, res_dim);
        sizes.push(res_dim);
        if l.family() != Family::A {
            sizes.extend(l.gl_blocks().iter().rev());
        }
        let mut block_of = Vec::with_capacity(dim);
        for (b, &s) in sizes.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, s));
        }
        debug_assert_eq!(block_of.len(), dim);
        Self {
            dim,
            gl_starts,
            residual,
            block_of,
        }
    }
}

fn levi_element(l: &LeviComposition, levi_orbits: &[Partition], model: &FormModel, layout: &Layout) -> Result<Matrix> {
    let mut y = Matrix::zeros(layout.dim, layout.dim);
    for (&(start, m), mu) in layout.gl_starts.iter().zip(levi_orbits) {
        let map: Vec<usize> = (start..start + m).collect();
        embed(&mut y, &jordan_matrix(mu.parts()), &map);
    }
    let mut x = model.project(&y);
    let (start, len) = layout.residual;
    let nu = levi_orbits.last().expect("residual orbit present");
    if len > 0 {
        let local = match l.family() {
            Family::A => jordan_matrix(nu.parts()),
            fam => classical_nilpotent(fam, nu)?,
        };
        let map: Vec<usize> = (start..start + len).collect();
        embed(&mut x, &local, &map);
    }
    Ok(x)
}

fn random_nilradical(model: &FormModel, layout: &Layout, rng: &mut ChaCha8Rng) -> Matrix {
    let mut y = Matrix::zeros(layout.dim, layout.dim);
    for i in 0..layout.dim {
        for j in 0..layout.dim {
            if layout.block_of[i] < layout.block_of[j] {
                y[(i, j)] = q(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE));
            }
        }
    }
    model.project(&y)
}

fn check_inputs(l: &LeviComposition, levi_orbits: &[Partition]) -> Result<()> {
    l.check_levi_orbits(levi_orbits)
}

/// One sample `x + n` with `x` in the Levi orbit and `n` random in `u`.
pub fn sample_induced_element(l: &LeviComposition, levi_orbits: &[Partition], seed: u64) -> Result<Matrix> {
    check_inputs(l, levi_orbits)?;
    let model = FormModel::new(l.family(), l.ambient().defining_dim());
    let layout = Layout::new(l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = levi_element(l, levi_orbits, &model, &layout)?;
    Ok(&x + &random_nilradical(&model, &layout, &mut rng))
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(x: &Matrix) -> Result<Partition> {
    assert!(x.is_square());
    let n = x.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    while *ranks.last().expect("nonempty") > 0 {
        if ranks.len() > n + 1 {
            return Err(Error::Unsupported("matrix is not nilpotent".into()));
        }
        power = &power * x;
        let r = power.rank();
        if r == *ranks.last().expect("nonempty") {
            return Err(Error::Unsupported("matrix is not nilpotent".into()));
        }
        ranks.push(r);
    }
    // ranks[k-1] - ranks[k] = number of Jordan blocks of size >= k.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition::from_unsorted(at_least).transpose())
}

/// Jordan type of `Ind_l^g(O_l)` estimated by sampling `O_l + u` in the
/// matrix model: the dominance-largest type seen over `trials` samples.
pub fn induce_orbit_matrix_oracle(
    l: &LeviComposition,
    levi_orbits: &[Partition],
    trials: usize,
    seed: u64,
) -> Result<Partition> {
    check_inputs(l, levi_orbits)?;
    let model = FormModel::new(l.family(), l.ambient().defining_dim());
    let layout = Layout::new(l);
    let x = levi_element(l, levi_orbits, &model, &layout)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<Partition> = Vec::new();
    for _ in 0..trials.max(1) {
        let e = &x + &random_nilradical(&model, &layout, &mut rng);
        let p = jordan_type(&e)?;
        if !seen.contains(&p) {
            seen.push(p);
        }
    }
    let best = seen
        .iter()
        .find(|p| seen.iter().all(|o| dominance_leq_unchecked(o, p)))
        .or_else(|| seen.iter().max())
        .expect("at least one trial");
    Ok(best.clone())
}

/// Whether a generic `e` in the nilradical of the Siegel parabolic of
/// `sp(2n)` satisfies `im e = ker e`. Then `ker e` is the only Lagrangian
/// stable under `e` in the fibre, so the moment map is birational.
pub fn siegel_birationality_check(n: usize, trials: usize, seed: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Unsupported("Siegel parabolic needs n >= 1".into()));
    }
    let l = LeviComposition::siegel(n)?;
    let model = FormModel::new(Family::C, 2 * n);
    let layout = Layout::new(&l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials.max(1) {
        let e = random_nilradical(&model, &layout, &mut rng);
        let square_zero = (&e * &e).is_zero();
        let rank = e.rank();
        // e^2 = 0 gives im e inside ker e; equal dimensions make them equal.
        if square_zero && rank == 2 * n - rank {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Birationality of `G x_Q (O_l + u) -> closure(O_g)` where a criterion is
/// implemented (the Siegel parabolic with `O_l = 0`).
pub fn check_birational(l: &LeviComposition, trials: usize, seed: u64) -> Result<bool> {
    if !l.is_siegel() {
        return Err(Error::Unsupported(format!("birationality criterion for {l}")));
    }
    siegel_birationality_check(l.ambient().rank(), trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::valid_orbits;
    use crate::weights::LieType;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn in_algebra(family: Family, x: &Matrix) -> bool {
        let j = antidiagonal_form(family, x.rows());
        (&(&x.transpose() * &j) + &(&j * x)).is_zero()
    }

    #[test]
    fn jordan_types_of_known_matrices() {
        assert_eq!(jordan_type(&jordan_matrix(&[3, 2, 2, 1])).unwrap(), p(&[3, 2, 2, 1]));
        assert_eq!(jordan_type(&Matrix::zeros(3, 3)).unwrap(), p(&[1, 1, 1]));
        assert!(jordan_type(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn classical_representatives_have_the_right_type() {
        for n in 1..=4 {
            for fam in [Family::B, Family::C, Family::D] {
                let Ok(t) = LieType::new(fam, n) else { continue };
                for nu in valid_orbits(t) {
                    match classical_nilpotent(fam, &nu) {
                        Ok(x) => {
                            assert!(in_algebra(fam, &x), "{t} {nu}");
                            assert_eq!(jordan_type(&x).unwrap(), nu, "{t}");
                        }
                        Err(Error::Unsupported(_)) => assert_ne!(fam, Family::C),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn samples_lie_in_the_algebra() {
        let t = LieType::new(Family::C, 3).unwrap();
        let l = LeviComposition::new(t, vec![1], 2).unwrap();
        let e = sample_induced_element(&l, &[p(&[1]), p(&[2, 2])], 7).unwrap();
        assert!(in_algebra(Family::C, &e));
        let b = LieType::new(Family::B, 3).unwrap();
        let l = LeviComposition::new(b, vec![2], 1).unwrap();
        let e = sample_induced_element(&l, &[p(&[2]), p(&[3])], 7).unwrap();
        assert!(in_algebra(Family::B, &e));
    }

    #[test]
    fn oracle_examples() {
        let siegel = LeviComposition::siegel(2).unwrap();
        assert_eq!(
            induce_orbit_matrix_oracle(&siegel, &siegel.zero_orbits(), 8, DEFAULT_SEED).unwrap(),
            p(&[2, 2])
        );
        let c2 = LieType::new(Family::C, 2).unwrap();
        let whole = LeviComposition::whole(c2);
        assert_eq!(
            induce_orbit_matrix_oracle(&whole, &[p(&[2, 2])], 8, DEFAULT_SEED).unwrap(),
            p(&[2, 2])
        );
        let c3 = LieType::new(Family::C, 3).unwrap();
        let borel = LeviComposition::borel(c3);
        assert_eq!(
            induce_orbit_matrix_oracle(&borel, &borel.zero_orbits(), 8, DEFAULT_SEED).unwrap(),
            p(&[6])
        );
    }

    #[test]
    fn siegel_birational() {
        for n in [1, 2, 3, 5] {
            assert!(siegel_birationality_check(n, 8, DEFAULT_SEED).unwrap(), "n = {n}");
        }
        assert!(siegel_birationality_check(0, 8, DEFAULT_SEED).is_err());
        let borel = LeviComposition::borel(LieType::new(Family::C, 2).unwrap());
        assert!(matches!(check_birational(&borel, 8, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn same_seed_same_answer() {
        let l = LeviComposition::new(LieType::new(Family::C, 4).unwrap(), vec![2, 1], 1).unwrap();
        let a = sample_induced_element(&l, &l.zero_orbits(), 99).unwrap();
        let b = sample_induced_element(&l, &l.zero_orbits(), 99).unwrap();
        assert_eq!(a, b);
    }
}
