//! Extremality and diagonal extremality decision procedures.
//!
//! A matrix is extremal when it has no polydiagonal but flipping any single
//! zero cell to one creates one. It is diagonally extremal when it has no
//! polydiagonal and every zero cell's deletion submatrix holds an integer
//! diagonal.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::covers::CoverTable;
use crate::matching::{find_diagonal, has_polydiagonal, max_polyplex};
use crate::rat::Rat;
use crate::tensor::{BinaryTensor, Index};
use crate::{Error, Result};

/// Result of the extremality decision.
#[derive(Clone, Debug)]
pub struct ExtremalityVerdict {
    pub is_extremal: bool,
    /// `n` minus the optimal polyplex weight.
    pub deficiency: Rat,
    /// A zero cell whose flip does not create a polydiagonal, when one
    /// exists (the first in flat order).
    pub failing_zero: Option<Index>,
    pub has_polydiagonal: bool,
}

/// Decides extremality: no polydiagonal, and every zero flip yields a
/// polyplex of weight exactly n. The weight check after each flip goes
/// through the integer-diagonal search first and falls back to the exact
/// linear program.
pub fn is_extremal(a: &BinaryTensor) -> ExtremalityVerdict {
    let n_rat = Rat::from_integer(a.n().into());
    let (weight, _) = max_polyplex(a);
    let deficiency = &n_rat - &weight;
    if weight == n_rat {
        return ExtremalityVerdict {
            is_extremal: false,
            deficiency,
            failing_zero: None,
            has_polydiagonal: true,
        };
    }
    let mut failing_zero = None;
    for f in 0..a.num_cells() {
        if a.get_flat(f) {
            continue;
        }
        let idx = a.index_of_flat(f);
        let flipped = a.with_cell(&idx, true).expect("valid index");
        if !has_polydiagonal(&flipped) {
            failing_zero = Some(idx);
            break;
        }
    }
    ExtremalityVerdict {
        is_extremal: failing_zero.is_none(),
        deficiency,
        failing_zero,
        has_polydiagonal: false,
    }
}

/// Outcome of the diagonal-extremality decision.
#[derive(Clone, Debug)]
pub struct DiagonalExtremality {
    pub holds: bool,
    /// The first zero cell whose deletion submatrix has no diagonal.
    pub failing_zero: Option<Index>,
}

/// Decides diagonal extremality. Errors when `a` has a polydiagonal (the
/// notion is defined only for matrices without one). For order 1 the
/// deletion submatrix is empty and carries the empty diagonal.
pub fn is_diagonally_extremal(a: &BinaryTensor) -> Result<DiagonalExtremality> {
    if has_polydiagonal(a) {
        return Err(Error::precondition(
            "diagonal extremality requires a matrix without polydiagonals",
        ));
    }
    if a.n() == 1 {
        return Ok(DiagonalExtremality {
            holds: true,
            failing_zero: None,
        });
    }
    for f in 0..a.num_cells() {
        if a.get_flat(f) {
            continue;
        }
        let idx = a.index_of_flat(f);
        let sub = a.delete_around(&idx).expect("n >= 2");
        if find_diagonal(&sub).is_none() {
            return Ok(DiagonalExtremality {
                holds: false,
                failing_zero: Some(idx),
            });
        }
    }
    Ok(DiagonalExtremality {
        holds: true,
        failing_zero: None,
    })
}

/// One checked pair of the partial-minor condition.
#[derive(Clone, Debug)]
pub struct MinorCheck {
    /// The zero cell whose deletion submatrix was tested.
    pub zero_cell: Index,
    /// The witness cell covered with weight exactly `1 - delta` dominating
    /// the zero cell entry-wise.
    pub dominating: Index,
    pub has_polydiagonal: bool,
}

#[derive(Clone, Debug, Default)]
pub struct MinorPolydiagonalReport {
    pub checks: Vec<MinorCheck>,
}

impl MinorPolydiagonalReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.has_polydiagonal)
    }
}

/// For every zero cell β admitting a cell α covered with weight exactly
/// `1 - delta` whose cover entries dominate β's, the deletion submatrix at β
/// must contain a polydiagonal. Vacuously empty when no qualifying α exists.
pub fn check_minor_polydiagonal(
    a: &BinaryTensor,
    cover: &CoverTable,
    delta: &Rat,
) -> Result<MinorPolydiagonalReport> {
    cover.validate_covers(a)?;
    let n_rat = Rat::from_integer(a.n().into());
    if cover.weight() != &n_rat - delta {
        return Err(Error::precondition(format!(
            "cover weight {} does not match n - delta = {}",
            cover.weight(),
            &n_rat - delta
        )));
    }
    let target = Rat::one() - delta;
    let candidates: Vec<Index> = a
        .indices()
        .filter(|idx| cover.weight_at(idx).expect("in range") == target)
        .collect();
    let mut report = MinorPolydiagonalReport::default();
    if candidates.is_empty() || a.n() < 2 {
        return Ok(report);
    }
    for f in 0..a.num_cells() {
        if a.get_flat(f) {
            continue;
        }
        let beta = a.index_of_flat(f);
        let dominating = candidates.iter().find(|alpha| {
            beta.coords()
                .iter()
                .zip(alpha.coords())
                .enumerate()
                .all(|(i, (&cb, &ca))| {
                    cover.get(i + 1, cb).expect("in range")
                        <= cover.get(i + 1, ca).expect("in range")
                })
        });
        if let Some(alpha) = dominating {
            let sub = a.delete_around(&beta).expect("n >= 2");
            report.checks.push(MinorCheck {
                zero_cell: beta,
                dominating: alpha.clone(),
                has_polydiagonal: has_polydiagonal(&sub),
            });
        }
    }
    Ok(report)
}

/// Decides whether the entries of each row of `table` can be rearranged
/// within their rows so that every column sums to at least 1. Exhaustive
/// search over per-row arrangements with memoized column-sum states (sums
/// are clamped at 1, and states are kept sorted: columns are
/// interchangeable).
pub fn rearrangement_feasible(table: &CoverTable) -> bool {
    let d = table.d();
    let cols = table.n();
    let one = Rat::one();

    // distinct arrangements per row
    let mut row_arrangements: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(d);
    for i in 1..=d {
        let row: Vec<Rat> = table.row(i).to_vec();
        let mut seen: HashSet<Vec<Rat>> = HashSet::new();
        for perm in crate::tensor::permutations(cols) {
            let arranged: Vec<Rat> = perm.iter().map(|&p| row[p].clone()).collect();
            seen.insert(arranged);
        }
        let mut list: Vec<Vec<Rat>> = seen.into_iter().collect();
        list.sort();
        row_arrangements.push(list);
    }

    fn dfs(
        row_arrangements: &[Vec<Vec<Rat>>],
        row: usize,
        sums: &[Rat],
        one: &Rat,
        memo: &mut HashSet<(usize, Vec<Rat>)>,
    ) -> bool {
        if row == row_arrangements.len() {
            return sums.iter().all(|s| s >= one);
        }
        if !memo.insert((row, sums.to_vec())) {
            return false;
        }
        for arrangement in &row_arrangements[row] {
            let mut next: Vec<Rat> = sums
                .iter()
                .zip(arrangement)
                .map(|(s, a)| {
                    let t = s + a;
                    if t > *one {
                        one.clone()
                    } else {
                        t
                    }
                })
                .collect();
            next.sort();
            if dfs(row_arrangements, row + 1, &next, one, memo) {
                return true;
            }
        }
        false
    }

    let sums = vec![Rat::zero(); cols];
    let mut memo = HashSet::new();
    dfs(&row_arrangements, 0, &sums, &one, &mut memo)
}
