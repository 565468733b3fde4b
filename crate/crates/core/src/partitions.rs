//! Partitions as Jordan types of nilpotent elements in the defining
//! representation of a classical Lie algebra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::q;
use crate::weights::{Family, LieType, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    /// Requires strictly positive, weakly decreasing parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Parses `"2,2,1"` or `"[2,2,1]"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition entry {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    /// `[n]`
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// `[1, ..., 1]` with `n` ones.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&x| x == part).count()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|k| self.parts.iter().filter(|&&x| x >= k).count())
            .collect();
        Partition { parts }
    }

    /// Part `i` with zero padding.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Coordinatewise sum (as zero-padded sequences).
    pub fn coordinate_sum(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition {
            parts: (0..len).map(|i| self.part(i) + other.part(i)).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The parts whose multiplicity must be even for `family`: odd parts in
/// type C, even parts in types B and D, none in type A.
fn restricted_parity(family: Family) -> Option<usize> {
    match family {
        Family::A => None,
        Family::C => Some(1),
        Family::B | Family::D => Some(0),
    }
}

/// Parity rule only; the size is not checked.
pub fn satisfies_parity_rule(family: Family, p: &Partition) -> bool {
    match restricted_parity(family) {
        None => true,
        Some(parity) => {
            let mut i = 0;
            let parts = p.parts();
            while i < parts.len() {
                let v = parts[i];
                let m = p.multiplicity(v);
                if v % 2 == parity && m % 2 == 1 {
                    return false;
                }
                i += m;
            }
            true
        }
    }
}

fn check_size(t: LieType, p: &Partition) -> Result<()> {
    if p.size() != t.defining_dim() {
        return Err(Error::DimensionMismatch {
            expected: t.defining_dim(),
            got: p.size(),
        });
    }
    Ok(())
}

/// Whether `p` labels a nilpotent orbit of `t`. Errors when the size differs
/// from the defining dimension.
pub fn is_valid_orbit(t: LieType, p: &Partition) -> Result<bool> {
    check_size(t, p)?;
    Ok(satisfies_parity_rule(t.family(), p))
}

pub fn ensure_valid_orbit(t: LieType, p: &Partition) -> Result<()> {
    if !is_valid_orbit(t, p)? {
        return Err(Error::InvalidOrbit {
            lie_type: t.to_string(),
            partition: p.to_string(),
        });
    }
    Ok(())
}

/// Dominance order: every partial sum of `p` is at most that of `q`.
pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<bool> {
    if p.size() != q.size() {
        return Err(Error::DimensionMismatch {
            expected: p.size(),
            got: q.size(),
        });
    }
    Ok(dominance_leq_unchecked(p, q))
}

pub(crate) fn dominance_leq_unchecked(p: &Partition, q: &Partition) -> bool {
    let len = p.len().max(q.len());
    let (mut sp, mut sq) = (0, 0);
    for i in 0..len {
        sp += p.part(i);
        sq += q.part(i);
        if sp > sq {
            return false;
        }
    }
    true
}

/// The largest partition below `p` satisfying the parity rule of `family`.
///
/// Repeatedly takes the largest offending part value, lowers its last
/// occurrence by one and raises the first later part that is at least two
/// smaller (possibly a new part of size one). Fails only for type C and an
/// odd size, where no valid partition exists.
pub fn collapse_family(family: Family, p: &Partition) -> Result<Partition> {
    let Some(parity) = restricted_parity(family) else {
        return Ok(p.clone());
    };
    if family == Family::C && p.size() % 2 == 1 {
        return Err(Error::InvalidPartition(format!(
            "{p} has odd size, so no type C partition lies below it"
        )));
    }
    let mut parts = p.parts().to_vec();
    loop {
        let cur = Partition { parts: parts.clone() };
        let offender = parts
            .iter()
            .copied()
            .filter(|&v| v % 2 == parity && cur.multiplicity(v) % 2 == 1)
            .max();
        let Some(v) = offender else {
            return Ok(cur);
        };
        let last = parts.iter().rposition(|&x| x == v).expect("offender is present");
        parts[last] -= 1;
        match parts.iter().skip(last + 1).position(|&x| x + 2 <= v) {
            Some(off) => parts[last + 1 + off] += 1,
            None => parts.push(1),
        }
        parts.retain(|&x| x > 0);
    }
}

/// The `t`-collapse of `p`: the unique dominance-maximal orbit partition of
/// `t` lying below `p`.
pub fn collapse(t: LieType, p: &Partition) -> Result<Partition> {
    check_size(t, p)?;
    let out = collapse_family(t.family(), p)?;
    debug_assert!(satisfies_parity_rule(t.family(), &out));
    Ok(out)
}

/// Eigenvalues of the neutral element of an sl2-triple through `p`, as a
/// multiset: part `m` contributes `m-1, m-3, ..., 1-m`.
pub fn h_eigenvalues(p: &Partition) -> Vec<i64> {
    let mut out = Vec::with_capacity(p.size());
    for &m in p.parts() {
        let m = m as i64;
        out.extend((0..m).map(|k| m - 1 - 2 * k));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Dominant weight of the neutral element `h` of an sl2-triple in the orbit
/// `p`. For B, C, D this is the nonnegative half of the eigenvalue multiset
/// (B drops one zero); for A all `n + 1` eigenvalues are kept.
pub fn h_weight(t: LieType, p: &Partition) -> Result<Weight> {
    ensure_valid_orbit(t, p)?;
    let eig = h_eigenvalues(p);
    Ok(Weight::new(eig.iter().take(t.coord_len()).map(|&x| q(x)).collect()))
}

/// Special orbits: the transpose satisfies the parity rule of `family`
/// (of type C when `family` is D). Every type A orbit is special.
pub fn is_special(family: Family, p: &Partition) -> bool {
    let target = match family {
        Family::D => Family::C,
        f => f,
    };
    satisfies_parity_rule(target, &p.transpose())
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All nilpotent orbits of `t`, as partitions.
pub fn valid_orbits(t: LieType) -> Vec<Partition> {
    all_partitions(t.defining_dim())
        .into_iter()
        .filter(|p| satisfies_parity_rule(t.family(), p))
        .collect()
}

pub fn zero_orbit(t: LieType) -> Partition {
    Partition::column(t.defining_dim())
}

pub fn principal_orbit(t: LieType) -> Partition {
    let n = t.defining_dim();
    match t.family() {
        Family::D => Partition::from_unsorted(vec![n - 1, 1]),
        _ => Partition::row(n),
    }
}
