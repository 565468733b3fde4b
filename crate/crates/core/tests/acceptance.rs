//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines always reach the console.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use unipotent::ktheory::{bundled_table, verify_table};
use unipotent::orbits::{
    arth_set, in_arth_set, induce_orbit, induce_orbit_matrix_oracle, spaltenstein_dual, LeviComposition, DEFAULT_SEED,
    DEFAULT_TRIALS,
};
use unipotent::parabolic::{build_parabolic, check_theorem_hypotheses};
use unipotent::partitions::{dominance_leq, principal_orbit, valid_orbits, zero_orbit, Partition};
use unipotent::peirce::run_suite;
use unipotent::rational::frac;
use unipotent::weights::{Family, LieType, Weight};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c(family: Family, rank: usize) -> LieType {
    LieType::new(family, rank).expect("valid type")
}

fn rho_data() -> Check {
    for n in [2usize, 3, 5] {
        let p = build_parabolic(&LeviComposition::siegel(n).map_err(err)?);
        let n_i = n as i64;
        let rho_l = Weight::new((0..n_i).map(|k| frac(n_i - 1 - 2 * k, 2)).collect());
        let rho_u = Weight::new(vec![frac(n_i + 1, 2); n]);
        let rho_g = Weight::new((0..n_i).map(|k| frac(2 * (n_i - k), 2)).collect());
        ensure(p.rho_l == rho_l, format!("n={n}: rho_l = {}", p.rho_l))?;
        ensure(p.rho_u == rho_u, format!("n={n}: rho_u = {}", p.rho_u))?;
        ensure(p.rho_g == rho_g, format!("n={n}: rho_g = {}", p.rho_g))?;
    }
    Ok("rho_l, rho(u), rho_g exact for n = 2, 3, 5".into())
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn induction() -> Check {
    for n in 1..=8 {
        let l = LeviComposition::siegel(n).map_err(err)?;
        let got = induce_orbit(&l, &l.zero_orbits()).map_err(err)?;
        ensure(got == Partition::new(vec![2; n]).map_err(err)?, format!("Siegel C{n}: {got}"))?;
    }
    let mut levis = 0;
    for n in 1..=4 {
        let g = c(Family::C, n);
        for used in 0..=n {
            for blocks in compositions(used) {
                let l = LeviComposition::new(g, blocks, n - used).map_err(err)?;
                let zeros = l.zero_orbits();
                let formula = induce_orbit(&l, &zeros).map_err(err)?;
                let oracle = induce_orbit_matrix_oracle(&l, &zeros, DEFAULT_TRIALS, DEFAULT_SEED).map_err(err)?;
                ensure(formula == oracle, format!("{l}: formula {formula}, matrix model {oracle}"))?;
                levis += 1;
            }
        }
    }
    Ok(format!(
        "Siegel C_n gives [2^n] for n <= 8; oracle agrees on all {levis} Levis of C_1..C_4 (seed {DEFAULT_SEED}, {DEFAULT_TRIALS} trials)"
    ))
}

fn sl2_anchor() -> Check {
    let g = c(Family::C, 1);
    let chars = |parts: Vec<usize>| -> Result<Vec<Weight>, String> {
        let p = Partition::new(parts).map_err(err)?;
        Ok(arth_set(g, &p).map_err(err)?.into_iter().map(|a| a.character).collect())
    };
    let zero = chars(vec![1, 1])?;
    let principal = chars(vec![2])?;
    ensure(zero == vec![Weight::from_ints(&[1])], format!("arth([1,1]) = {zero:?}"))?;
    ensure(principal == vec![Weight::from_ints(&[0])], format!("arth([2]) = {principal:?}"))?;
    Ok("arth(C1,[1,1]) = {(1)}, arth(C1,[2]) = {(0)}".into())
}

fn special_unipotent() -> Check {
    for n in [2usize, 3, 5] {
        let p = build_parabolic(&LeviComposition::siegel(n).map_err(err)?);
        let orbit = Partition::new(vec![2; n]).map_err(err)?;
        ensure(
            in_arth_set(c(Family::C, n), &orbit, &p.rho_l).map_err(err)?,
            format!("n={n}: {} not in arth", p.rho_l),
        )?;
    }
    Ok("gamma_{rho_l} lies in arth(C_n, [2^n]) for n = 2, 3, 5".into())
}

fn hypotheses() -> Check {
    for n in [2usize, 3, 5] {
        let p = build_parabolic(&LeviComposition::siegel(n).map_err(err)?);
        let r = check_theorem_hypotheses(&p, &p.rho_u, DEFAULT_TRIALS, DEFAULT_SEED).map_err(err)?;
        ensure(
            r.all_hold(),
            format!(
                "n={n}: arth {} antidominant {} birational {:?}",
                r.arth_member, r.antidominant, r.birational
            ),
        )?;
    }
    Ok("all hypotheses hold at lambda = rho(u) for n = 2, 3, 5".into())
}

fn tables() -> Check {
    let expected = [("sp4", 2, 2), ("sp6", 7, 16), ("sp10", 11, 38)];
    let mut parts = Vec::new();
    for (name, unipotents, rows) in expected {
        let t = bundled_table(name).map_err(err)?;
        let r = verify_table(&t);
        ensure(
            r.unipotents == unipotents && r.degenerates == rows,
            format!("{name}: {} unipotents, {} rows", r.unipotents, r.degenerates),
        )?;
        ensure(r.span_equal, format!("{name}: spans differ"))?;
        let m = r.matching.as_ref().ok_or_else(|| format!("{name}: no triangular matching"))?;
        ensure(m.signs.iter().all(|s| s.abs() == 1), format!("{name}: diagonal {:?}", m.signs))?;
        ensure(r.passed, format!("{name}: determinant {:?}", r.determinant))?;
        parts.push(format!("{name} {unipotents}/{rows}"));
    }
    Ok(format!("spans equal and triangular matchings found ({})", parts.join(", ")))
}

fn peirce() -> Check {
    let count = 100;
    let r = run_suite(DEFAULT_SEED, count, 4).map_err(err)?;
    ensure(r.passed(), r.render_text())?;
    ensure(
        r.right_inverse.checked > 0 && r.adjunction.checked > 0 && r.simple_quotient.checked > 0,
        "no corner cases exercised",
    )?;
    Ok(format!(
        "{count} algebras (seed {}): {} P_iQ_iN, {} adjunction, {} simple quotient checks",
        r.seed, r.right_inverse.checked, r.adjunction.checked, r.simple_quotient.checked
    ))
}

fn duality() -> Check {
    let mut pairs = 0;
    for family in [Family::B, Family::C] {
        for rank in 1..=4 {
            let g = c(family, rank);
            let dual = g.dual();
            let orbits = valid_orbits(dual);
            let images: Vec<Partition> = orbits
                .iter()
                .map(|p| spaltenstein_dual(g, p))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            for (p, psi_p) in orbits.iter().zip(&images) {
                for (q, psi_q) in orbits.iter().zip(&images) {
                    if dominance_leq(p, q).map_err(err)? {
                        ensure(
                            dominance_leq(psi_q, psi_p).map_err(err)?,
                            format!("{g}: {p} <= {q} but psi gives {psi_p}, {psi_q}"),
                        )?;
                        pairs += 1;
                    }
                }
            }
            let principal = spaltenstein_dual(g, &principal_orbit(dual)).map_err(err)?;
            let zero = spaltenstein_dual(g, &zero_orbit(dual)).map_err(err)?;
            ensure(principal == zero_orbit(g), format!("{g}: principal goes to {principal}"))?;
            ensure(zero == principal_orbit(g), format!("{g}: zero goes to {zero}"))?;
        }
    }
    Ok(format!("order reversal on {pairs} comparable pairs of B/C rank <= 4; extremes swap"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 rho data", rho_data, Duration::from_secs(1)),
        ("2 orbit induction", induction, Duration::from_secs(30)),
        ("3 SL2 anchor", sl2_anchor, Duration::from_secs(1)),
        ("4 special unipotent character", special_unipotent, Duration::from_secs(10)),
        ("5 theorem hypotheses", hypotheses, Duration::from_secs(10)),
        ("6 table verification", tables, Duration::from_secs(5)),
        ("7 Peirce suite", peirce, Duration::from_secs(60)),
        ("8 duality", duality, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS  {name}: {detail} [{elapsed:.2?} <= {limit:?}]"),
            Ok(detail) => format!("FAIL  {name}: {detail} but took {elapsed:.2?}, limit {limit:?}"),
            Err(why) => format!("FAIL  {name}: {why} [{elapsed:.2?}]"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
