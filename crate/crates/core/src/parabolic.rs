//! `rho` bookkeeping for standard parabolic subalgebras and the checkable
//! hypotheses of the upper-triangularity theorem.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orbits::{check_birational, in_arth_set, richardson_orbit, LeviComposition};
use crate::partitions::Partition;
use crate::rational::{half, q};
use crate::weights::{is_antidominant, positive_roots, rho, Family, LieType, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicDatum {
    pub levi: LeviComposition,
    pub rho_g: Weight,
    pub rho_l: Weight,
    pub rho_u: Weight,
}

/// Positive roots of the Levi factor, in ambient coordinates.
pub fn levi_positive_roots(l: &LeviComposition) -> Vec<Weight> {
    let len = l.ambient().coord_len();
    let ranges = l.coordinate_ranges();
    let mut roots = Vec::new();
    let push = |roots: &mut Vec<Weight>, terms: &[(usize, i64)]| {
        let mut v = vec![q(0); len];
        for &(i, c) in terms {
            v[i] += q(c);
        }
        roots.push(Weight::new(v));
    };
    let (gl, residual) = ranges.split_at(ranges.len() - 1);
    for r in gl {
        for i in r.clone() {
            for j in i + 1..r.end {
                push(&mut roots, &[(i, 1), (j, -1)]);
            }
        }
    }
    let res = residual[0].clone();
    let family = l.family();
    for i in res.clone() {
        for j in i + 1..res.end {
            push(&mut roots, &[(i, 1), (j, -1)]);
            if family != Family::A {
                push(&mut roots, &[(i, 1), (j, 1)]);
            }
        }
        match family {
            Family::B => push(&mut roots, &[(i, 1)]),
            Family::C => push(&mut roots, &[(i, 2)]),
            _ => {}
        }
    }
    roots
}

/// `Delta(u)`: positive roots of `g` outside the Levi factor.
pub fn nilradical_roots(l: &LeviComposition) -> Vec<Weight> {
    let levi = levi_positive_roots(l);
    positive_roots(l.ambient())
        .into_iter()
        .filter(|r| !levi.contains(r))
        .collect()
}

fn half_sum(len: usize, roots: &[Weight]) -> Weight {
    roots
        .iter()
        .fold(Weight::zero(len), |acc, r| acc.add(r))
        .scale(&half())
}

pub fn build_parabolic(l: &LeviComposition) -> ParabolicDatum {
    let len = l.ambient().coord_len();
    let rho_g = rho(l.ambient());
    let rho_l = half_sum(len, &levi_positive_roots(l));
    let rho_u = rho_g.sub(&rho_l);
    ParabolicDatum {
        levi: l.clone(),
        rho_g,
        rho_l,
        rho_u,
    }
}

impl ParabolicDatum {
    pub fn ambient(&self) -> LieType {
        self.levi.ambient()
    }
}

/// Infinitesimal character `lambda + rho(u)` of a module induced from a
/// Levi module with parameter `lambda`.
pub fn induced_inf_char(lambda: &Weight, p: &ParabolicDatum) -> Result<Weight> {
    if lambda.len() != p.rho_u.len() {
        return Err(Error::DimensionMismatch {
            expected: p.rho_u.len(),
            got: lambda.len(),
        });
    }
    Ok(lambda.add(&p.rho_u))
}

/// Outcome of a birationality check that may have no implemented criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Birationality {
    Checked(bool),
    Unchecked,
}

impl Birationality {
    pub fn holds(self) -> bool {
        self == Birationality::Checked(true)
    }
}

impl Serialize for Birationality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Birationality::Checked(b) => s.serialize_bool(*b),
            Birationality::Unchecked => s.serialize_str("unchecked"),
        }
    }
}

impl<'de> Deserialize<'de> for Birationality {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Bool(b) => Ok(Birationality::Checked(b)),
            serde_json::Value::String(s) if s == "unchecked" => Ok(Birationality::Unchecked),
            other => Err(serde::de::Error::custom(format!(
                "expected true, false or \"unchecked\", got {other}"
            ))),
        }
    }
}

pub const ARTH_SUBSTITUTION_NOTE: &str =
    "arth_member tests membership in arth(O), a subset of unip(O): true is sufficient for the unipotence hypothesis, false does not refute it";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub induced_orbit: Partition,
    /// `lambda - rho_g`, dominant form not enforced.
    pub infinitesimal_character: Weight,
    pub arth_member: bool,
    pub antidominant: bool,
    pub birational: Birationality,
    pub note: String,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.arth_member && self.antidominant && self.birational.holds()
    }
}

/// Checks, for `O_g = Ind_l^g {0}`:
/// (a) `gamma_{lambda - rho_g}` lies in `arth(O_g)` (a sufficient proxy for
/// unipotence); (b) `lambda - rho(u)` is antidominant for `u`;
/// (c) birationality of the moment map where a criterion exists.
pub fn check_theorem_hypotheses(
    p: &ParabolicDatum,
    lambda: &Weight,
    trials: usize,
    seed: u64,
) -> Result<HypothesisReport> {
    let g = p.ambient();
    if lambda.len() != g.coord_len() {
        return Err(Error::DimensionMismatch {
            expected: g.coord_len(),
            got: lambda.len(),
        });
    }
    let orbit = richardson_orbit(&p.levi);
    let gamma = lambda.sub(&p.rho_g);
    let arth_member = in_arth_set(g, &orbit, &gamma)?;
    let antidominant = is_antidominant(&lambda.sub(&p.rho_u), &nilradical_roots(&p.levi), false);
    let birational = match check_birational(&p.levi, trials, seed) {
        Ok(b) => Birationality::Checked(b),
        Err(Error::Unsupported(_)) => Birationality::Unchecked,
        Err(e) => return Err(e),
    };
    Ok(HypothesisReport {
        induced_orbit: orbit,
        infinitesimal_character: gamma,
        arth_member,
        antidominant,
        birational,
        note: ARTH_SUBSTITUTION_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::DEFAULT_SEED;
    use crate::rational::frac;

    fn halves(xs: &[i64]) -> Weight {
        Weight::new(xs.iter().map(|&x| frac(x, 2)).collect())
    }

    #[test]
    fn siegel_c2() {
        let p = build_parabolic(&LeviComposition::siegel(2).unwrap());
        assert_eq!(p.rho_l, halves(&[1, -1]));
        assert_eq!(p.rho_u, halves(&[3, 3]));
        assert_eq!(p.rho_g, Weight::from_ints(&[2, 1]));
    }

    #[test]
    fn siegel_closed_forms() {
        for n in 1..=8i64 {
            let p = build_parabolic(&LeviComposition::siegel(n as usize).unwrap());
            let rho_l: Vec<i64> = (0..n).map(|i| n - 1 - 2 * i).collect();
            assert_eq!(p.rho_l, halves(&rho_l));
            assert_eq!(p.rho_u, halves(&vec![n + 1; n as usize]));
            assert_eq!(p.rho_g, Weight::from_ints(&(1..=n).rev().collect::<Vec<_>>()));
            assert_eq!(p.rho_l.add(&p.rho_u), p.rho_g);
        }
        let p5 = build_parabolic(&LeviComposition::siegel(5).unwrap());
        assert_eq!(p5.rho_u, Weight::from_ints(&[3, 3, 3, 3, 3]));
    }

    #[test]
    fn trivial_levi_has_no_nilradical() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let t = LieType::new(f, 3).unwrap();
            let p = build_parabolic(&LeviComposition::whole(t));
            assert_eq!(p.rho_l, p.rho_g);
            assert!(p.rho_u.is_zero());
            assert!(nilradical_roots(&p.levi).is_empty());
        }
    }

    #[test]
    fn nilradical_sizes() {
        let c3 = LieType::new(Family::C, 3).unwrap();
        assert_eq!(nilradical_roots(&LeviComposition::siegel(3).unwrap()).len(), 6);
        assert_eq!(nilradical_roots(&LeviComposition::borel(c3)).len(), 9);
        let l = LeviComposition::new(c3, vec![1], 2).unwrap();
        assert_eq!(nilradical_roots(&l).len(), 5);
    }

    #[test]
    fn induced_characters() {
        let p = build_parabolic(&LeviComposition::siegel(2).unwrap());
        assert_eq!(induced_inf_char(&Weight::zero(2), &p).unwrap(), halves(&[3, 3]));
        assert!(induced_inf_char(&p.rho_u.neg(), &p).unwrap().is_zero());
        assert_eq!(induced_inf_char(&p.rho_l, &p).unwrap(), p.rho_g);
        assert!(induced_inf_char(&Weight::zero(3), &p).is_err());
    }

    #[test]
    fn hypotheses_for_siegel() {
        for n in [2, 3, 5] {
            let p = build_parabolic(&LeviComposition::siegel(n).unwrap());
            let r = check_theorem_hypotheses(&p, &p.rho_u, 8, DEFAULT_SEED).unwrap();
            assert!(r.all_hold(), "n = {n}: {r:?}");
        }
        let p = build_parabolic(&LeviComposition::siegel(2).unwrap());
        let shifted = p.rho_u.add(&Weight::from_ints(&[10, 0]));
        let r = check_theorem_hypotheses(&p, &shifted, 8, DEFAULT_SEED).unwrap();
        assert!(!r.antidominant);
    }

    #[test]
    fn non_siegel_birationality_is_unchecked() {
        let c3 = LieType::new(Family::C, 3).unwrap();
        let p = build_parabolic(&LeviComposition::borel(c3));
        let r = check_theorem_hypotheses(&p, &p.rho_u, 8, DEFAULT_SEED).unwrap();
        assert_eq!(r.birational, Birationality::Unchecked);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["birational"], "unchecked");
        let back: HypothesisReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
