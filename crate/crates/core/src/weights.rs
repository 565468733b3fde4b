//! Classical root systems in standard `e_i` coordinates, with exact weights.
//!
//! Type `A_n` lives in `n + 1` coordinates; `B_n`, `C_n`, `D_n` in `n`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::rational::{de_q_vec, format_q, parse_q, q, ser_q_vec, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Dimension of the defining representation for a factor of the given rank.
    /// Rank 0 is allowed here so that Levi residual factors can be sized.
    pub fn defining_dim(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            Family::B => 2 * rank + 1,
            Family::C | Family::D => 2 * rank,
        }
    }

    /// Family of the Langlands dual.
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::InvalidLieType(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLieType")]
pub struct LieType {
    family: Family,
    rank: usize,
}

#[derive(Deserialize)]
struct RawLieType {
    family: Family,
    rank: usize,
}

impl TryFrom<RawLieType> for LieType {
    type Error = Error;
    fn try_from(raw: RawLieType) -> Result<Self> {
        LieType::new(raw.family, raw.rank)
    }
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidLieType("rank must be at least 1".into()));
        }
        if family == Family::D && rank < 2 {
            return Err(Error::InvalidLieType("type D needs rank at least 2".into()));
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of `e_i` coordinates used for weights.
    pub fn coord_len(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn defining_dim(&self) -> usize {
        self.family.defining_dim(self.rank)
    }

    pub fn dual(&self) -> LieType {
        LieType {
            family: self.family.dual(),
            rank: self.rank,
        }
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.coord_len())
    }

    fn check_len(&self, w: &Weight) -> Result<()> {
        if w.len() != self.coord_len() {
            return Err(Error::DimensionMismatch {
                expected: self.coord_len(),
                got: w.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Parses labels such as `C2` or `b5`.
impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .ok_or_else(|| Error::InvalidLieType("empty type label".into()))?;
        let family: Family = fam.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidLieType(format!("bad rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

/// A vector in `h*`, in standard coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    #[serde(serialize_with = "ser_q_vec", deserialize_with = "de_q_vec")]
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![Q::zero(); len])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| q(x)).collect())
    }

    /// Parses comma-separated entries, e.g. `"1/2,-1/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        s.split(',').map(parse_q).collect::<Result<_>>().map(Self::new)
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len());
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len());
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn inner(&self, other: &Weight) -> Q {
        dot(&self.coords, &other.coords)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_q).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn e(len: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    v[i] = Q::one();
    v
}

fn combo(len: usize, terms: &[(usize, i64)]) -> Weight {
    let mut v = vec![Q::zero(); len];
    for &(i, c) in terms {
        v[i] += q(c);
    }
    Weight::new(v)
}

/// The standard positive system of `t`.
pub fn positive_roots(t: LieType) -> Vec<Weight> {
    let len = t.coord_len();
    let mut roots = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            roots.push(combo(len, &[(i, 1), (j, -1)]));
        }
    }
    if t.family == Family::A {
        return roots;
    }
    for i in 0..len {
        for j in i + 1..len {
            roots.push(combo(len, &[(i, 1), (j, 1)]));
        }
    }
    match t.family {
        Family::B => roots.extend((0..len).map(|i| Weight::new(e(len, i)))),
        Family::C => roots.extend((0..len).map(|i| combo(len, &[(i, 2)]))),
        _ => {}
    }
    roots
}

pub fn simple_roots(t: LieType) -> Vec<Weight> {
    let len = t.coord_len();
    let mut roots: Vec<Weight> = (0..len - 1)
        .map(|i| combo(len, &[(i, 1), (i + 1, -1)]))
        .collect();
    let n = len - 1;
    match t.family {
        Family::A => {}
        Family::B => roots.push(Weight::new(e(len, n))),
        Family::C => roots.push(combo(len, &[(n, 2)])),
        Family::D => roots.push(combo(len, &[(n - 1, 1), (n, 1)])),
    }
    roots
}

pub fn is_root(t: LieType, alpha: &Weight) -> bool {
    alpha.len() == t.coord_len()
        && positive_roots(t)
            .iter()
            .any(|r| r == alpha || r.neg() == *alpha)
}

/// `2 (lambda, alpha) / (alpha, alpha)` for an arbitrary nonzero vector.
fn pairing_unchecked(lambda: &Weight, alpha: &Weight) -> Q {
    q(2) * lambda.inner(alpha) / alpha.inner(alpha)
}

/// `<lambda, alpha^vee>` for a root `alpha` of `t`.
pub fn coroot_pairing(lambda: &Weight, alpha: &Weight, t: LieType) -> Result<Q> {
    t.check_len(lambda)?;
    if !is_root(t, alpha) {
        return Err(Error::NotARoot(alpha.to_string(), t.to_string()));
    }
    Ok(pairing_unchecked(lambda, alpha))
}

/// Half the sum of the positive roots.
pub fn rho(t: LieType) -> Weight {
    let len = t.coord_len();
    positive_roots(t)
        .iter()
        .fold(Weight::zero(len), |acc, r| acc.add(r))
        .scale(&crate::rational::half())
}

/// The dominant representative of the `W`-orbit of `lambda`.
pub fn dominant(t: LieType, lambda: &Weight) -> Result<Weight> {
    t.check_len(lambda)?;
    let mut c = lambda.coords.clone();
    match t.family {
        Family::A => {
            c.sort_by(|a, b| b.cmp(a));
        }
        Family::B | Family::C => {
            c = c.iter().map(|x| x.abs()).collect();
            c.sort_by(|a, b| b.cmp(a));
        }
        Family::D => {
            let negatives = c.iter().filter(|x| x.is_negative()).count();
            let has_zero = c.iter().any(Zero::is_zero);
            c = c.iter().map(|x| x.abs()).collect();
            c.sort_by(|a, b| b.cmp(a));
            if !has_zero && negatives % 2 == 1 {
                let last = c.len() - 1;
                c[last] = -c[last].clone();
            }
        }
    }
    Ok(Weight::new(c))
}

/// True iff `mu` lies in `W(t) lambda`.
pub fn weyl_equivalent(t: LieType, lambda: &Weight, mu: &Weight) -> Result<bool> {
    Ok(dominant(t, lambda)? == dominant(t, mu)?)
}

/// `<lambda, alpha^vee> <= 0` for every listed root (`< 0` when `strict`).
pub fn is_antidominant(lambda: &Weight, roots: &[Weight], strict: bool) -> bool {
    roots.iter().all(|alpha| {
        let p = pairing_unchecked(lambda, alpha);
        if strict {
            p.is_negative()
        } else {
            !p.is_positive()
        }
    })
}

pub fn norm_sq(lambda: &Weight) -> Q {
    lambda.inner(lambda)
}
