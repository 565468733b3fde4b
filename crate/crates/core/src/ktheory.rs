//! Decomposition tables of degenerate modules into unipotent classes for
//! `Sp(2n, R)`, with integer-lattice checks on them.
//!
//! A table lists unipotent representations (by associated `K`-orbits and line
//! bundles) and the coefficients of each degenerate module in the unipotent
//! basis. Two questions are answered here: whether the degenerate rows span
//! the same lattice as the unipotents, and whether some choice of rows gives a
//! unitriangular change of basis.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::q;
use crate::weights::{Family, LieType};

/// Label of a `K`-equivariant line bundle on the orbit `(a, b)`: one bit when
/// one of `a`, `b` vanishes, two bits otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BundleLabel {
    Single(u8),
    Pair(u8, u8),
}

impl BundleLabel {
    pub fn is_legal_for(&self, (a, b): (usize, usize)) -> bool {
        matches!(
            (self, a * b == 0),
            (BundleLabel::Single(_), true) | (BundleLabel::Pair(_, _), false)
        )
    }
}

impl fmt::Display for BundleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleLabel::Single(x) => write!(f, "{x}"),
            BundleLabel::Pair(x, y) => write!(f, "{x},{y}"),
        }
    }
}

impl FromStr for BundleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bit = |t: &str| match t.trim() {
            "0" => Ok(0u8),
            "1" => Ok(1u8),
            other => Err(Error::InvalidTable(format!(
                "bundle label component {other:?} is not 0 or 1"
            ))),
        };
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [x] => Ok(BundleLabel::Single(bit(x)?)),
            [x, y] => Ok(BundleLabel::Pair(bit(x)?, bit(y)?)),
            _ => Err(Error::InvalidTable(format!("malformed bundle label {s:?}"))),
        }
    }
}

impl TryFrom<String> for BundleLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BundleLabel> for String {
    fn from(b: BundleLabel) -> String {
        b.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentRecord {
    pub id: usize,
    pub orbits: Vec<(usize, usize)>,
    pub bundles: Vec<BundleLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateRecord {
    pub kgb: u64,
    /// Nonzero coefficients keyed by unipotent id.
    pub coeffs: BTreeMap<usize, i64>,
}

impl DegenerateRecord {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|&c| c == 0)
    }

    /// Dense coefficient vector of length `n`, indexed by `id - 1`.
    pub fn dense(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for (&id, &c) in &self.coeffs {
            v[id - 1] += c;
        }
        v
    }

    /// `"6+4+1"` style rendering of the row.
    pub fn expression(&self) -> String {
        let mut out = String::new();
        for (&id, &c) in self.coeffs.iter().rev().filter(|(_, &c)| c != 0) {
            for _ in 0..c.unsigned_abs() {
                if c < 0 {
                    out.push('-');
                } else if !out.is_empty() {
                    out.push('+');
                }
                out.push_str(&id.to_string());
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub group: LieType,
    pub unipotents: Vec<UnipotentRecord>,
    pub degenerates: Vec<DegenerateRecord>,
}

impl DecompositionTable {
    pub fn unipotent_count(&self) -> usize {
        self.unipotents.len()
    }

    /// Degenerate rows as a dense integer matrix (rows x unipotents).
    pub fn coefficient_rows(&self) -> Vec<Vec<i64>> {
        let n = self.unipotent_count();
        self.degenerates.iter().map(|d| d.dense(n)).collect()
    }

    pub fn zero_rows(&self) -> usize {
        self.degenerates.iter().filter(|d| d.is_zero()).count()
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.group;
        if t.family() != Family::C {
            return Err(Error::InvalidTable(format!(
                "group: expected family C, got {}",
                t.family()
            )));
        }
        let n = t.rank();
        let legal = korbit_enumerate(n)?;
        for (idx, u) in self.unipotents.iter().enumerate() {
            let at = format!("unipotents[{idx}]");
            if u.id != idx + 1 {
                return Err(Error::InvalidTable(format!(
                    "{at}.id: expected {}, got {} (ids must be 1..n in order)",
                    idx + 1,
                    u.id
                )));
            }
            if u.orbits.is_empty() {
                return Err(Error::InvalidTable(format!("{at}.orbits: empty")));
            }
            if u.orbits.len() != u.bundles.len() {
                return Err(Error::InvalidTable(format!(
                    "{at}: {} orbits but {} bundles",
                    u.orbits.len(),
                    u.bundles.len()
                )));
            }
            for (k, (&pair, bundle)) in u.orbits.iter().zip(&u.bundles).enumerate() {
                let known = legal.iter().find(|o| o.pair == pair);
                match known {
                    None => {
                        return Err(Error::InvalidTable(format!(
                            "{at}.orbits[{k}]: ({}, {}) is not a K-orbit for rank {n}",
                            pair.0, pair.1
                        )))
                    }
                    Some(o) if !o.bundles.contains(bundle) => {
                        return Err(Error::InvalidTable(format!(
                            "{at}.bundles[{k}]: label {bundle} is not legal on ({}, {})",
                            pair.0, pair.1
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let count = self.unipotents.len();
        for (idx, d) in self.degenerates.iter().enumerate() {
            for &id in d.coeffs.keys() {
                if id == 0 || id > count {
                    return Err(Error::InvalidTable(format!(
                        "degenerates[{idx}].coeffs: unknown unipotent id {id} (valid ids are 1..{count})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Parses and validates a table. Serde errors carry line and column; semantic
/// errors name the offending field path.
pub fn parse_table(text: &str) -> Result<DecompositionTable> {
    let table: DecompositionTable = serde_json::from_str(text).map_err(|e| {
        Error::InvalidTable(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    table.validate()?;
    Ok(table)
}

const SP4: &str = include_str!("../data/sp4.json");
const SP6: &str = include_str!("../data/sp6.json");
const SP10: &str = include_str!("../data/sp10.json");

/// Names of the tables shipped with the crate.
pub const BUNDLED_TABLES: [&str; 3] = ["sp4", "sp6", "sp10"];

pub fn bundled_table_text(name: &str) -> Option<&'static str> {
    match name.trim_end_matches(".json") {
        "sp4" => Some(SP4),
        "sp6" => Some(SP6),
        "sp10" => Some(SP10),
        _ => None,
    }
}

pub fn bundled_table(name: &str) -> Result<DecompositionTable> {
    let text = bundled_table_text(name)
        .ok_or_else(|| Error::InvalidTable(format!("no bundled table named {name:?}")))?;
    parse_table(text)
}

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if pivot_row == m.len() {
            break;
        }
        // Euclid on column c across rows pivot_row.. until one nonzero remains.
        loop {
            let nonzero: Vec<usize> = (pivot_row..m.len()).filter(|&r| !m[r][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by(|&&a, &&b| m[a][c].abs().cmp(&m[b][c].abs()))
                .expect("nonempty");
            m.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][c].is_zero() {
                    continue;
                }
                let factor = m[r][c].div_floor(&m[pivot_row][c]);
                let (head, tail) = m.split_at_mut(r);
                let p = &head[pivot_row];
                for (x, y) in tail[0].iter_mut().zip(p) {
                    *x -= &factor * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m.get(pivot_row).is_some_and(|r| !r[c].is_zero()) {
            if m[pivot_row][c].is_negative() {
                for x in m[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            for r in 0..pivot_row {
                let factor = m[r][c].div_floor(&m[pivot_row][c]);
                if factor.is_zero() {
                    continue;
                }
                let (head, tail) = m.split_at_mut(pivot_row);
                for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                    *x -= &factor * y;
                }
            }
            pivots.push(c);
            pivot_row += 1;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Whether the degenerate rows generate exactly `Z^n` on the unipotent basis.
pub fn span_equal(t: &DecompositionTable) -> bool {
    let n = t.unipotent_count();
    let hnf = hermite_normal_form(&t.coefficient_rows());
    hnf.len() == n
        && hnf.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
}

/// A unitriangular change of basis between unipotents and chosen degenerate
/// rows.
///
/// `order[p]` is the unipotent id in position `p` and `rows[p]` the index of
/// the degenerate row matched to it. In this order each unipotent is `+-` its
/// row plus an integer combination of rows later in the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularMatching {
    pub order: Vec<usize>,
    pub rows: Vec<usize>,
    pub signs: Vec<i64>,
    /// `unipotent[order[p]] = sum_q inverse[p][q] * row[rows[q]]`.
    pub inverse: Vec<Vec<i64>>,
}

impl TriangularMatching {
    /// Selected coefficient matrix in matching order: entry `(p, q)` is the
    /// coefficient of unipotent `order[q]` in row `rows[p]`.
    pub fn selected_matrix(&self, t: &DecompositionTable) -> Vec<Vec<i64>> {
        let dense = t.coefficient_rows();
        self.rows
            .iter()
            .map(|&r| self.order.iter().map(|&id| dense[r][id - 1]).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub depth: usize,
    pub row: usize,
    pub unipotent: usize,
    pub backtracked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingFailure {
    /// Unipotent ids that could never be peeled.
    pub stuck_columns: Vec<usize>,
    pub trace: Vec<PeelStep>,
    pub states_explored: usize,
}

impl fmt::Display for MatchingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no triangular matching after {} states; deepest stuck set {:?}",
            self.states_explored, self.stuck_columns
        )
    }
}

struct Peeler<'a> {
    rows: &'a [Vec<i64>],
    failed: HashSet<u64>,
    trace: Vec<PeelStep>,
    explored: usize,
    deepest: (usize, u64),
}

impl Peeler<'_> {
    /// Peels columns from `remaining`; on success returns the peel sequence of
    /// (row, column) in peel order.
    fn peel(&mut self, remaining: u64, depth: usize) -> Option<Vec<(usize, usize)>> {
        if remaining == 0 {
            return Some(Vec::new());
        }
        if self.failed.contains(&remaining) {
            return None;
        }
        self.explored += 1;
        if depth >= self.deepest.0 {
            self.deepest = (depth, remaining);
        }
        let mut seen_cols = HashSet::new();
        for (r, row) in self.rows.iter().enumerate() {
            let support: Vec<usize> = (0..row.len())
                .filter(|&c| remaining >> c & 1 == 1 && row[c] != 0)
                .collect();
            let [c] = support.as_slice() else { continue };
            if row[*c].abs() != 1 || !seen_cols.insert(*c) {
                // A second row peeling the same column leads to the same state.
                continue;
            }
            self.trace.push(PeelStep {
                depth,
                row: r,
                unipotent: c + 1,
                backtracked: false,
            });
            if let Some(mut rest) = self.peel(remaining & !(1 << c), depth + 1) {
                rest.insert(0, (r, *c));
                return Some(rest);
            }
            if let Some(last) = self.trace.iter_mut().rev().find(|s| s.depth == depth) {
                last.backtracked = true;
            }
        }
        self.failed.insert(remaining);
        None
    }
}

/// Backtracking peel: repeatedly pick a row whose support inside the remaining
/// columns is a single column with entry `+-1`, then drop that column.
pub fn find_triangular_matching(
    t: &DecompositionTable,
) -> std::result::Result<TriangularMatching, MatchingFailure> {
    let n = t.unipotent_count();
    assert!(n <= 64, "tables wider than 64 unipotents are not supported");
    let rows = t.coefficient_rows();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut peeler = Peeler {
        rows: &rows,
        failed: HashSet::new(),
        trace: Vec::new(),
        explored: 0,
        deepest: (0, full),
    };
    let Some(peeled) = peeler.peel(full, 0) else {
        let stuck = peeler.deepest.1;
        return Err(MatchingFailure {
            stuck_columns: (0..n).filter(|c| stuck >> c & 1 == 1).map(|c| c + 1).collect(),
            trace: peeler.trace,
            states_explored: peeler.explored,
        });
    };
    // The last column peeled has the fewest later rows; reverse so that each
    // unipotent involves only rows later in the order.
    let ordered: Vec<(usize, usize)> = peeled.into_iter().rev().collect();
    let order: Vec<usize> = ordered.iter().map(|&(_, c)| c + 1).collect();
    let chosen: Vec<usize> = ordered.iter().map(|&(r, _)| r).collect();
    let signs: Vec<i64> = ordered.iter().map(|&(r, c)| rows[r][c]).collect();
    let mut m = TriangularMatching {
        order,
        rows: chosen,
        signs,
        inverse: Vec::new(),
    };
    let selected = m.selected_matrix(t);
    let inv = integer_inverse(&selected).expect("unitriangular matrices are unimodular");
    // selected: rows -> unipotents, so unipotents = selected^{-1} * rows and
    // unipotent p is row p of the inverse.
    m.inverse = inv;
    Ok(m)
}

fn to_rational(m: &[Vec<i64>]) -> Matrix {
    let rows: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    Matrix::from_rows(&rows)
}

/// Inverse over the integers, when it exists.
pub fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let mq = to_rational(m);
    let inv = mq.inverse()?;
    inv.to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let mq = to_rational(m);
    mq.determinant().to_integer()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KOrbit {
    pub pair: (usize, usize),
    pub bundles: Vec<BundleLabel>,
}

/// `K`-orbits `(a, b)`, `a + b = n`, with their legal bundle labels.
pub fn korbit_enumerate(n: usize) -> Result<Vec<KOrbit>> {
    if n == 0 {
        return Err(Error::InvalidTable("K-orbits need n >= 1".into()));
    }
    Ok((0..=n)
        .rev()
        .map(|a| {
            let b = n - a;
            let bundles = if a * b == 0 {
                vec![BundleLabel::Single(0), BundleLabel::Single(1)]
            } else {
                (0..2)
                    .flat_map(|x| (0..2).map(move |y| BundleLabel::Pair(x, y)))
                    .collect()
            };
            KOrbit {
                pair: (a, b),
                bundles,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub group: LieType,
    pub unipotents: usize,
    pub degenerates: usize,
    pub zero_rows: usize,
    pub span_equal: bool,
    pub matching: Option<TriangularMatching>,
    pub failure: Option<MatchingFailure>,
    /// `None` when there is no matching to check.
    pub determinant: Option<i64>,
    pub passed: bool,
}

pub fn verify_table(t: &DecompositionTable) -> TableReport {
    let span = span_equal(t);
    let (matching, failure) = match find_triangular_matching(t) {
        Ok(m) => (Some(m), None),
        Err(f) => (None, Some(f)),
    };
    let determinant = matching.as_ref().map(|m| {
        let d = integer_determinant(&m.selected_matrix(t));
        i64::try_from(d).unwrap_or(0)
    });
    let unimodular = determinant.is_some_and(|d| d.abs() == 1);
    TableReport {
        group: t.group,
        unipotents: t.unipotent_count(),
        degenerates: t.degenerates.len(),
        zero_rows: t.zero_rows(),
        span_equal: span,
        passed: span && matching.is_some() && unimodular,
        matching,
        failure,
        determinant,
    }
}

impl TableReport {
    pub fn render_text(&self, t: &DecompositionTable) -> String {
        let mut out = format!(
            "group {}: {} unipotents, {} degenerate rows ({} zero)\n",
            self.group, self.unipotents, self.degenerates, self.zero_rows
        );
        out += &format!("span equal: {}\n", self.span_equal);
        match (&self.matching, &self.failure) {
            (Some(m), _) => {
                out += "triangular matching:\n";
                for ((&id, &r), &s) in m.order.iter().zip(&m.rows).zip(&m.signs) {
                    let d = &t.degenerates[r];
                    out += &format!(
                        "  U{id} <- row {r} (kgb {}, {}) sign {s:+}\n",
                        d.kgb,
                        d.expression()
                    );
                }
            }
            (None, Some(f)) => out += &format!("triangular matching: none ({f})\n"),
            (None, None) => {}
        }
        if let Some(d) = self.determinant {
            out += &format!("determinant of selected block: {d}\n");
        }
        out += &format!("result: {}\n", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

/// Removes repeated degenerate rows, keeping first occurrences.
pub fn dedup_rows(t: &DecompositionTable) -> DecompositionTable {
    let mut seen = HashSet::new();
    let degenerates = t
        .degenerates
        .iter()
        .filter(|d| seen.insert(d.dense(t.unipotent_count())))
        .cloned()
        .collect();
    DecompositionTable {
        degenerates,
        ..t.clone()
    }
}
