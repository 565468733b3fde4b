//! Induction of nilpotent orbits, Spaltenstein duality and the sets of
//! special unipotent infinitesimal characters attached to an orbit.

mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{
    collapse_family, ensure_valid_orbit, satisfies_parity_rule, valid_orbits, Partition,
};
use crate::partitions::h_weight;
use crate::rational::half;
use crate::weights::{dominant, Family, LieType, Weight};

pub use oracle::{
    check_birational, induce_orbit_matrix_oracle, jordan_type, sample_induced_element,
    siegel_birationality_check, DEFAULT_SEED, DEFAULT_TRIALS,
};

/// A Levi subalgebra `gl(m_1) x ... x gl(m_k) x g(r)` of a classical `g`.
///
/// The `gl` blocks occupy the first `sum m_i` weight coordinates in order; the
/// residual factor of the same family and rank `r` occupies the rest. In type
/// A the residual factor is `gl(r + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLevi")]
pub struct LeviComposition {
    ambient: LieType,
    gl_blocks: Vec<usize>,
    residual_rank: usize,
}

#[derive(Deserialize)]
struct RawLevi {
    ambient: LieType,
    gl_blocks: Vec<usize>,
    residual_rank: usize,
}

impl TryFrom<RawLevi> for LeviComposition {
    type Error = Error;
    fn try_from(raw: RawLevi) -> Result<Self> {
        LeviComposition::new(raw.ambient, raw.gl_blocks, raw.residual_rank)
    }
}

impl LeviComposition {
    pub fn new(ambient: LieType, gl_blocks: Vec<usize>, residual_rank: usize) -> Result<Self> {
        if gl_blocks.contains(&0) {
            return Err(Error::InvalidLevi("gl blocks must be positive".into()));
        }
        let total: usize = gl_blocks.iter().sum::<usize>() + residual_rank;
        if total != ambient.rank() {
            return Err(Error::InvalidLevi(format!(
                "blocks {gl_blocks:?} plus residual {residual_rank} do not add up to rank {}",
                ambient.rank()
            )));
        }
        Ok(Self {
            ambient,
            gl_blocks,
            residual_rank,
        })
    }

    /// Levi `gl(n)` of `sp(2n)`.
    pub fn siegel(n: usize) -> Result<Self> {
        Self::new(LieType::new(Family::C, n)?, vec![n], 0)
    }

    /// The Levi factor of a Borel subalgebra.
    pub fn borel(t: LieType) -> Self {
        Self::new(t, vec![1; t.rank()], 0).expect("Borel composition is valid")
    }

    /// `l = g`.
    pub fn whole(t: LieType) -> Self {
        Self::new(t, Vec::new(), t.rank()).expect("trivial composition is valid")
    }

    pub fn ambient(&self) -> LieType {
        self.ambient
    }

    pub fn gl_blocks(&self) -> &[usize] {
        &self.gl_blocks
    }

    pub fn residual_rank(&self) -> usize {
        self.residual_rank
    }

    pub fn family(&self) -> Family {
        self.ambient.family()
    }

    /// Size of the residual factor's defining representation.
    pub fn residual_dim(&self) -> usize {
        self.family().defining_dim(self.residual_rank)
    }

    pub fn is_siegel(&self) -> bool {
        self.family() == Family::C && self.gl_blocks.len() == 1 && self.residual_rank == 0
    }

    /// Zero orbits on every Levi factor.
    pub fn zero_orbits(&self) -> Vec<Partition> {
        let mut out: Vec<Partition> = self.gl_blocks.iter().map(|&m| Partition::column(m)).collect();
        out.push(Partition::column(self.residual_dim()));
        out
    }

    /// Weight coordinates occupied by each Levi factor: one range per gl block,
    /// then the residual.
    pub fn coordinate_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        let mut out = Vec::new();
        for &m in &self.gl_blocks {
            out.push(start..start + m);
            start += m;
        }
        out.push(start..self.ambient.coord_len());
        out
    }

    fn check_levi_orbits(&self, levi_orbits: &[Partition]) -> Result<()> {
        if levi_orbits.len() != self.gl_blocks.len() + 1 {
            return Err(Error::InvalidLevi(format!(
                "expected {} Levi orbits (one per gl block plus the residual), got {}",
                self.gl_blocks.len() + 1,
                levi_orbits.len()
            )));
        }
        for (m, p) in self.gl_blocks.iter().zip(levi_orbits) {
            if p.size() != *m {
                return Err(Error::DimensionMismatch {
                    expected: *m,
                    got: p.size(),
                });
            }
        }
        let residual = levi_orbits.last().expect("length checked");
        if residual.size() != self.residual_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.residual_dim(),
                got: residual.size(),
            });
        }
        if !satisfies_parity_rule(self.family(), residual) {
            return Err(Error::InvalidOrbit {
                lie_type: format!("{}{} (residual)", self.family(), self.residual_rank),
                partition: residual.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for LeviComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.gl_blocks.iter().map(|m| format!("gl{m}")).collect();
        write!(f, "{} ⊃ ", self.ambient)?;
        if !blocks.is_empty() {
            write!(f, "{} x ", blocks.join(" x "))?;
        }
        write!(f, "{}{}", self.family(), self.residual_rank)
    }
}

/// Partition of the induced orbit `Ind_l^g(O_l)`.
///
/// `levi_orbits` holds one partition per gl block (of that block's size)
/// followed by the residual orbit. Blocks are induced one at a time onto the
/// residual factor: a `gl(m)` orbit `mu` turns `nu` into the collapse of
/// `nu + 2 mu` (coordinatewise), or `nu + mu` in type A.
pub fn induce_orbit(l: &LeviComposition, levi_orbits: &[Partition]) -> Result<Partition> {
    l.check_levi_orbits(levi_orbits)?;
    let (blocks, residual) = levi_orbits.split_at(levi_orbits.len() - 1);
    let family = l.family();
    let mut current = residual[0].clone();
    for mu in blocks {
        current = match family {
            Family::A => current.coordinate_sum(mu),
            _ => collapse_family(family, &current.coordinate_sum(mu).coordinate_sum(mu))?,
        };
    }
    debug_assert_eq!(current.size(), l.ambient().defining_dim());
    Ok(current)
}

/// Richardson orbit of the parabolic with Levi `l`.
pub fn richardson_orbit(l: &LeviComposition) -> Partition {
    induce_orbit(l, &l.zero_orbits()).expect("zero orbits are valid")
}

/// The order-reversing map `psi` from nilpotent orbits of the Langlands dual
/// to nilpotent orbits of `g_type`.
///
/// Transpose, then fix the size: for `g = C_n` remove a box from the smallest
/// part, for `g = B_n` add a box to the largest part; finally collapse.
pub fn spaltenstein_dual(g_type: LieType, dual_orbit: &Partition) -> Result<Partition> {
    let dual_type = g_type.dual();
    ensure_valid_orbit(dual_type, dual_orbit)?;
    let mut parts = dual_orbit.transpose().parts().to_vec();
    match g_type.family() {
        Family::A => return Ok(Partition::from_unsorted(parts)),
        Family::C => {
            let last = parts.len() - 1;
            parts[last] -= 1;
        }
        Family::B => parts[0] += 1,
        Family::D => {}
    }
    collapse_family(g_type.family(), &Partition::from_unsorted(parts))
}

/// An element `gamma_{O^vee}` of `arth(O)`, with the dual orbit producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArthCharacter {
    pub orbit_dual: Partition,
    pub character: Weight,
}

/// `arth(O) = { gamma_{O^vee} : psi(O^vee) = O }`, found by running over all
/// dual orbits. Characters are `h(O^vee) / 2` in dominant form.
pub fn arth_set(g_type: LieType, orbit: &Partition) -> Result<Vec<ArthCharacter>> {
    ensure_valid_orbit(g_type, orbit)?;
    let dual_type = g_type.dual();
    let mut out: Vec<ArthCharacter> = Vec::new();
    for candidate in valid_orbits(dual_type) {
        if spaltenstein_dual(g_type, &candidate)? != *orbit {
            continue;
        }
        let h = h_weight(dual_type, &candidate)?;
        let character = dominant(g_type, &h.scale(&half()))?;
        if out.iter().any(|a| a.character == character) {
            continue;
        }
        out.push(ArthCharacter {
            orbit_dual: candidate,
            character,
        });
    }
    Ok(out)
}

/// Whether `gamma` is Weyl-conjugate to an element of `arth(orbit)`.
pub fn in_arth_set(g_type: LieType, orbit: &Partition, gamma: &Weight) -> Result<bool> {
    let target = dominant(g_type, gamma)?;
    Ok(arth_set(g_type, orbit)?.iter().any(|a| a.character == target))
}
