use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unipotent::peirce::random::RandomSplitAlgebra;
use unipotent::peirce::*;
use unipotent::rational::{q, Q};

fn lift_family(b: &FinDimAlgebra, e: &IdempotentFamily, f: usize) -> IdempotentFamily {
    // e (x) E_jj for every e in the family and every j
    let mut out = Vec::new();
    for ei in &e.elements {
        for j in 0..f {
            let mut v = vec![q(0); b.dim() * f * f];
            for (p, c) in ei.iter().enumerate() {
                v[p * f * f + j * f + j] = c.clone();
            }
            out.push(v);
        }
    }
    IdempotentFamily::new(out)
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| q(rng.gen_range(-2..=2))).collect()
}

#[test]
fn suite_on_fixed_seeds() {
    for seed in [3, 17, 99] {
        let report = run_suite(seed, 25, 4).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.block_additivity.checked, 25);
    }
}

#[test]
fn corners_of_a_module_add_up() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let r = RandomSplitAlgebra::generate(&mut rng, 4);
        let e = r.random_idempotents(&mut rng);
        let m = r.column_module();
        let total: usize = (0..e.len())
            .map(|i| corner_module(&m, &r.algebra, &e, i).unwrap().dim())
            .sum();
        assert_eq!(total, m.dim());
    }
}

#[test]
fn translation_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for _ in 0..20 {
        let r = RandomSplitAlgebra::generate(&mut rng, 3);
        let b = &r.algebra;
        let f = rng.gen_range(1..=2);
        let e = lift_family(b, &r.random_idempotents(&mut rng), f);
        e.validate(&tensor_end(b, f)).unwrap();
        let m = r.column_module().direct_sum(&r.simple_module(0));
        let sub = m.generated_submodule(&[random_vector(&mut rng, m.dim())]);
        let m_sub = m.restrict(&sub).unwrap();
        let (m_quot, _) = m.quotient(&sub).unwrap();
        for i in 0..e.len() {
            let whole = translation_functor(&m, b, f, &e, i).unwrap().dim();
            let parts = translation_functor(&m_sub, b, f, &e, i).unwrap().dim()
                + translation_functor(&m_quot, b, f, &e, i).unwrap().dim();
            assert_eq!(whole, parts);
            if !sub.is_empty() && sub.len() < m.dim() {
                nontrivial += 1;
            }
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn translation_with_unit_family_is_tensor_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let r = RandomSplitAlgebra::generate(&mut rng, 3);
        let f = 2;
        let a = tensor_end(&r.algebra, f);
        let m = r.column_module();
        let t = translation_functor(&m, &r.algebra, f, &IdempotentFamily::trivial(&a), 0).unwrap();
        assert_eq!(t.dim(), f * m.dim());
        t.validate(&a).unwrap();
    }
}

#[test]
fn spectral_idempotents_of_random_central_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let r = RandomSplitAlgebra::generate(&mut rng, 4);
        let (z, distinct) = r.random_central_element(&mut rng);
        let family = central_idempotents(&r.algebra, &z).unwrap();
        assert_eq!(family.len(), distinct);
        family.validate(&r.algebra).unwrap();
        assert!(family.elements.iter().all(|e| r.algebra.is_central(e)));
        // Central idempotents kill the off-diagonal blocks.
        let blocks = peirce_decompose(&r.algebra, &family).unwrap();
        assert!(blocks.iter().filter(|b| b.i != b.j).all(|b| b.dim() == 0));
    }
}

#[test]
fn json_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let r = RandomSplitAlgebra::generate(&mut rng, 4);
        let a = FinDimAlgebra::from_json(&r.algebra.to_json()).unwrap();
        assert_eq!(a, r.algebra);
        let m = r.column_module();
        assert_eq!(AlgebraModule::from_json(&m.to_json()).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induced_modules_recover_their_corner(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = RandomSplitAlgebra::generate(&mut rng, 3);
        let e = r.random_idempotents(&mut rng);
        for i in 0..e.len() {
            let corner = corner_algebra(&r.algebra, &e, i).unwrap();
            for c in 0..r.classes.len() {
                let (n, _) = corner.corner_of(&r.simple_module(c));
                let q = induced_module(&n, &r.algebra, &e, i).unwrap();
                prop_assert!(q.validate(&r.algebra).is_ok());
                prop_assert!(is_isomorphic(&corner.corner_of(&q).0, &n));
            }
        }
    }

    #[test]
    fn hom_into_corner_matches_hom_from_induced(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = RandomSplitAlgebra::generate(&mut rng, 3);
        let e = r.random_idempotents(&mut rng);
        let m = r.column_module().direct_sum(&r.simple_module(0));
        let i = rng.gen_range(0..e.len());
        let corner = corner_algebra(&r.algebra, &e, i).unwrap();
        let (pm, _) = corner.corner_of(&m);
        for c in 0..r.classes.len() {
            let (n, _) = corner.corner_of(&r.simple_module(c));
            let q = induced_module(&n, &r.algebra, &e, i).unwrap();
            prop_assert_eq!(hom_dim(&q, &m), hom_dim(&n, &pm));
        }
    }
}
