//! Randomized checks of the Peirce functors on generated split algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::functors::{corner_algebra, induced_module, peirce_decompose, peirce_multiplication_check, simple_quotient};
use super::module::{hom_dim, is_isomorphic, Simplicity};
use super::random::RandomSplitAlgebra;

/// Pass counts for each property, plus the number of instances that
/// exercised it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub algebras: usize,
    pub block_additivity: Tally,
    pub multiplication: Tally,
    pub right_inverse: Tally,
    pub adjunction: Tally,
    pub simple_quotient: Tally,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub passed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) -> bool {
        self.checked += 1;
        if ok {
            self.passed += 1;
        }
        ok
    }

    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && [
                self.block_additivity,
                self.multiplication,
                self.right_inverse,
                self.adjunction,
                self.simple_quotient,
            ]
            .iter()
            .all(Tally::all_passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("seed {}, {} algebras\n", self.seed, self.algebras);
        for (name, t) in [
            ("block additivity", self.block_additivity),
            ("multiplication containment", self.multiplication),
            ("P_i Q_i N = N", self.right_inverse),
            ("adjunction dimensions", self.adjunction),
            ("unique simple quotient", self.simple_quotient),
        ] {
            out += &format!("  {name}: {}/{}\n", t.passed, t.checked);
        }
        for f in &self.failures {
            out += &format!("  failure: {f}\n");
        }
        out
    }
}

/// Runs the property checks on `count` random algebras of matrix size at
/// most `max_n`.
pub fn run_suite(seed: u64, count: usize, max_n: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        seed,
        algebras: count,
        ..SuiteReport::default()
    };
    for trial in 0..count {
        let r = RandomSplitAlgebra::generate(&mut rng, max_n);
        check_instance(&r, &mut rng, trial, &mut report)?;
    }
    Ok(report)
}

fn check_instance<R: Rng>(r: &RandomSplitAlgebra, rng: &mut R, trial: usize, report: &mut SuiteReport) -> Result<()> {
    let a = &r.algebra;
    let e = r.random_idempotents(rng);
    let blocks = peirce_decompose(a, &e)?;
    let total: usize = blocks.iter().map(|b| b.dim()).sum();
    if !report.block_additivity.record(total == a.dim()) {
        report.failures.push(format!("trial {trial}: blocks sum to {total}, algebra has {}", a.dim()));
    }
    if !report.multiplication.record(peirce_multiplication_check(a, &blocks)) {
        report.failures.push(format!("trial {trial}: multiplication containment"));
    }
    let simples: Vec<_> = (0..r.classes.len()).map(|c| r.simple_module(c)).collect();
    let column = r.column_module();
    // One random corner per algebra keeps the suite fast while still
    // varying the index.
    let i = rng.gen_range(0..e.len());
    let corner = corner_algebra(a, &e, i)?;
    for s in &simples {
        let (n, _) = corner.corner_of(s);
        if n.dim() == 0 {
            continue;
        }
        let q = induced_module(&n, a, &e, i)?;
        let (back, _) = corner.corner_of(&q);
        if !report.right_inverse.record(is_isomorphic(&back, &n)) {
            report.failures.push(format!("trial {trial}: P_i Q_i N differs from N at i = {}", i + 1));
        }
        for m in simples.iter().chain(std::iter::once(&column)) {
            let (pm, _) = corner.corner_of(m);
            let lhs = hom_dim(&q, m);
            let rhs = hom_dim(&n, &pm);
            if !report.adjunction.record(lhs == rhs) {
                report
                    .failures
                    .push(format!("trial {trial}: Hom_A(Q_i N, M) has dim {lhs}, Hom(N, P_i M) has dim {rhs}"));
            }
        }
        let sq = simple_quotient(&q, a, &e, i)?;
        let simple = sq.module.simplicity(a) == Simplicity::Simple;
        let same_corner = is_isomorphic(&corner.corner_of(&sq.module).0, &n);
        // Uniqueness: among the simple modules, only the quotient itself
        // receives a nonzero map from Q, and only a one-dimensional space.
        let unique = simples.iter().all(|t| {
            let expected = usize::from(is_isomorphic(t, &sq.module));
            hom_dim(&q, t) == expected
        });
        if !report.simple_quotient.record(simple && same_corner && unique) {
            report.failures.push(format!(
                "trial {trial}: simple quotient (simple {simple}, corner {same_corner}, unique {unique})"
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = run_suite(1, 12, 3).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert!(report.right_inverse.checked > 0);
    }
}
