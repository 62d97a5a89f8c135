//! Generative constructions of extremal matrices and their covers.
//!
//! Each construction takes a verified extremal matrix (usually through its
//! optimal cover) and produces one of higher dimension or order with the
//! same deficiency. Outputs are always re-verifiable through the decision
//! procedures; callers that care re-run them rather than trusting the
//! preconditions alone.

use num_traits::{One, Signed, Zero};

use crate::covers::CoverTable;
use crate::rat::{rat, Rat};
use crate::tensor::{BinaryTensor, Index};
use crate::{Error, Result};

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::precondition("diagram parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::precondition("diagram parts must be weakly decreasing"));
        }
        Ok(YoungDiagram { parts })
    }

    /// Parses a comma-separated part list such as `3,2,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("bad diagram part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }
}

/// All partitions of `total` with at most `max_rows` parts, each at most
/// `max_part`, in lexicographically decreasing order.
pub fn young_diagrams(total: usize, max_rows: usize, max_part: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(
        remaining: usize,
        rows_left: usize,
        cap: usize,
        parts: &mut Vec<usize>,
        out: &mut Vec<YoungDiagram>,
    ) {
        if remaining == 0 {
            out.push(YoungDiagram {
                parts: parts.clone(),
            });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            parts.push(p);
            rec(remaining - p, rows_left - 1, p, parts, out);
            parts.pop();
        }
    }
    if total == 0 {
        out.push(YoungDiagram { parts: Vec::new() });
        return out;
    }
    rec(total, max_rows, max_part, &mut parts, &mut out);
    out
}

/// The (d+1)-dimensional matrix whose every hyperplane of the new (last)
/// direction equals `a`. Extremality with the same deficiency is preserved
/// in both directions.
pub fn lift_dimension(a: &BinaryTensor) -> BinaryTensor {
    let n = a.n();
    let cells: Vec<bool> = a
        .cells()
        .iter()
        .flat_map(|&c| std::iter::repeat(c).take(n))
        .collect();
    BinaryTensor::from_cells(a.d() + 1, n, cells).expect("valid shape")
}

/// The three ways of growing a cover of order n to order n+1.
#[derive(Clone, Debug)]
pub enum GrowVariant {
    /// Attach the column of weights covering `index`; the index must be
    /// covered with weight exactly 1.
    DuplicateIndex(Index),
    /// Attach a 1-entry to `row` and zeros elsewhere.
    AttachOne { row: usize },
    /// Attach a `(1-delta)`-entry to `target_row`, a `delta`-entry to
    /// `delta_row` (which must already contain a `delta` entry), zeros
    /// elsewhere. `delta` is read off the cover weight as `n - weight`.
    AttachSplit { target_row: usize, delta_row: usize },
}

/// Grows a d×n cover to d×(n+1) by one of the three column attachments.
/// When the input is an optimal cover of an extremal matrix, the output is
/// the optimal cover of an extremal matrix of order n+1 with the same
/// deficiency.
pub fn grow_order(cover: &CoverTable, variant: &GrowVariant) -> Result<CoverTable> {
    let d = cover.d();
    let n = cover.n();
    let column: Vec<Rat> = match variant {
        GrowVariant::DuplicateIndex(index) => {
            let w = cover.weight_at(index)?;
            if w != Rat::one() {
                return Err(Error::precondition(format!(
                    "index {index} is covered with weight {w}, expected exactly 1"
                )));
            }
            index
                .coords()
                .iter()
                .enumerate()
                .map(|(i, &c)| cover.get(i + 1, c).expect("in range").clone())
                .collect()
        }
        GrowVariant::AttachOne { row } => {
            if *row < 1 || *row > d {
                return Err(Error::precondition(format!("row {row} out of range 1..={d}")));
            }
            (1..=d)
                .map(|i| if i == *row { Rat::one() } else { Rat::zero() })
                .collect()
        }
        GrowVariant::AttachSplit {
            target_row,
            delta_row,
        } => {
            if *target_row < 1 || *target_row > d || *delta_row < 1 || *delta_row > d {
                return Err(Error::precondition(format!(
                    "rows must lie in 1..={d}"
                )));
            }
            if target_row == delta_row {
                return Err(Error::precondition("the two rows must differ"));
            }
            let delta = Rat::from_integer(n.into()) - cover.weight();
            if !delta.is_positive() || delta > Rat::one() {
                return Err(Error::precondition(format!(
                    "cover weight {} admits no deficiency in (0, 1]",
                    cover.weight()
                )));
            }
            if !cover.row(*delta_row).contains(&delta) {
                return Err(Error::precondition(format!(
                    "row {delta_row} holds no {delta} entry"
                )));
            }
            (1..=d)
                .map(|i| {
                    if i == *target_row {
                        Rat::one() - &delta
                    } else if i == *delta_row {
                        delta.clone()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        }
    };
    let rows: Vec<Vec<Rat>> = (1..=d)
        .map(|i| {
            let mut r = cover.row(i).to_vec();
            r.push(column[i - 1].clone());
            r
        })
        .collect();
    CoverTable::from_rows(rows)
}

/// Removes a column holding a single 1 and zeros elsewhere; extremality of
/// the induced matrix is preserved in both directions. Returns `None` when
/// no such column exists (or removing one would leave an empty table).
pub fn shrink_order(cover: &CoverTable) -> Option<CoverTable> {
    let d = cover.d();
    let n = cover.n();
    if n < 2 {
        return None;
    }
    let unit_col = (1..=n).find(|&j| {
        let ones = (1..=d)
            .filter(|&i| cover.get(i, j).expect("in range").is_one())
            .count();
        let zeros = (1..=d)
            .filter(|&i| cover.get(i, j).expect("in range").is_zero())
            .count();
        ones == 1 && ones + zeros == d
    })?;
    let rows: Vec<Vec<Rat>> = (1..=d)
        .map(|i| {
            cover
                .row(i)
                .iter()
                .enumerate()
                .filter(|(j, _)| j + 1 != unit_col)
                .map(|(_, w)| w.clone())
                .collect()
        })
        .collect();
    Some(CoverTable::from_rows(rows).expect("valid rows"))
}

/// The unique optimal cover of the extremal matrix indexed by a Young
/// diagram: row i carries `parts[i]` left-justified `1/m` entries. The
/// diagram must have at most d rows, parts at most n-1, and exactly
/// `m*n - 1` cells, with `m < d`.
pub fn two_value_cover(
    diagram: &YoungDiagram,
    m: usize,
    d: usize,
    n: usize,
) -> Result<CoverTable> {
    if m == 0 {
        return Err(Error::precondition("m must be positive"));
    }
    if m >= d {
        return Err(Error::precondition(format!("m = {m} must be below d = {d}")));
    }
    if diagram.rows() > d {
        return Err(Error::precondition(format!(
            "diagram has {} rows, more than d = {d}",
            diagram.rows()
        )));
    }
    if diagram.parts().iter().any(|&p| p > n - 1) {
        return Err(Error::precondition(format!(
            "diagram parts must be at most n - 1 = {}",
            n - 1
        )));
    }
    if diagram.total() != m * n - 1 {
        return Err(Error::precondition(format!(
            "diagram has {} cells, expected m*n - 1 = {}",
            diagram.total(),
            m * n - 1
        )));
    }
    let unit = rat(1, m as i64);
    let rows: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let t = diagram.parts().get(i).copied().unwrap_or(0);
            (0..n)
                .map(|j| if j < t { unit.clone() } else { Rat::zero() })
                .collect()
        })
        .collect();
    CoverTable::from_rows(rows)
}

/// For a cover with entries in `{0, 1/m}` and `t[i]` nonzero entries in row
/// i, decides whether the induced matrix has a polyplex of the full cover
/// weight `W = sum(t)/m`: it does iff no row count exceeds W. Errors when
/// W exceeds n.
pub fn polyplex_weight_feasible_two_value(t: &[usize], m: usize, n: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::precondition("m must be positive"));
    }
    let total: usize = t.iter().sum();
    let weight = rat(total as i64, m as i64);
    if weight > Rat::from_integer(n.into()) {
        return Err(Error::precondition(format!(
            "cover weight {weight} exceeds the order {n}"
        )));
    }
    let max = t.iter().copied().max().unwrap_or(0);
    Ok(Rat::from_integer(max.into()) <= weight)
}

/// Gale-Ryser: a (0,1)-matrix with row sums `r` and column sums `s` exists
/// iff the conjugate of `s` majorizes `r`. Both sequences must be weakly
/// decreasing with equal sums.
pub fn gale_ryser_exists(r: &[usize], s: &[usize]) -> Result<bool> {
    if r.windows(2).any(|w| w[0] < w[1]) || s.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::precondition("sequences must be weakly decreasing"));
    }
    let sr: usize = r.iter().sum();
    let ss: usize = s.iter().sum();
    if sr != ss {
        return Err(Error::precondition(format!("sums differ: {sr} vs {ss}")));
    }
    // s*_i = #{j : s_j >= i}
    let conjugate = |i: usize| s.iter().filter(|&&x| x >= i).count();
    let mut prefix_r = 0usize;
    let mut prefix_conj = 0usize;
    for k in 1..=r.len() {
        prefix_r += r[k - 1];
        prefix_conj += conjugate(k);
        if prefix_conj < prefix_r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits the last essential weight of an order-2 cover: essential weights
/// `λ_1, ..., λ_d` become `λ_1, ..., λ_{d-1}, λ_d - delta, delta` in a
/// (d+1)×2 table (nonzero entries in column 1). Requires the hypothesis
/// that no support cell is covered with weight strictly between 1 and
/// `1 + delta`; rejects otherwise.
pub fn split_essential_weight(cover: &CoverTable, delta: &Rat) -> Result<CoverTable> {
    if cover.n() != 2 {
        return Err(Error::NotOrderTwo(cover.n()));
    }
    if !delta.is_positive() || *delta > Rat::one() {
        return Err(Error::precondition(format!(
            "deficiency {delta} must lie in (0, 1]"
        )));
    }
    let d = cover.d();
    let expected = rat(2, 1) - delta;
    if cover.weight() != expected {
        return Err(Error::precondition(format!(
            "cover weight {} does not match 2 - delta = {expected}",
            cover.weight()
        )));
    }
    // essential weights: at most one nonzero entry per row
    let mut essentials = Vec::with_capacity(d);
    for i in 1..=d {
        let row = cover.row(i);
        if !row[0].is_zero() && !row[1].is_zero() {
            return Err(Error::precondition(format!(
                "row {i} has two nonzero entries; not an optimal cover of an order-2 extremal matrix"
            )));
        }
        essentials.push(if row[0].is_zero() {
            row[1].clone()
        } else {
            row[0].clone()
        });
    }
    // hypothesis: no support cell covered with weight strictly between 1
    // and 1 + delta
    let induced = cover.induced_matrix();
    let upper = Rat::one() + delta;
    for idx in induced.support() {
        let w = cover.weight_at(&idx)?;
        if w > Rat::one() && w < upper {
            return Err(Error::precondition(format!(
                "cell {idx} is covered with weight {w}, strictly between 1 and {upper}"
            )));
        }
    }
    let last = essentials.last().expect("d >= 1").clone();
    if &last < delta {
        return Err(Error::precondition(format!(
            "last essential weight {last} is below the deficiency {delta}"
        )));
    }
    let mut new_essentials = essentials;
    let idx = new_essentials.len() - 1;
    new_essentials[idx] = last - delta;
    new_essentials.push(delta.clone());
    let rows: Vec<Vec<Rat>> = new_essentials
        .into_iter()
        .map(|w| vec![w, Rat::zero()])
        .collect();
    CoverTable::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{deficiency, min_cover};
    use crate::extremal::is_extremal;
    use crate::rat::rint;

    fn ball3() -> BinaryTensor {
        BinaryTensor::parse_text("tensor 3 2\n1 1\n1 0\n1 0\n0 0\n").unwrap()
    }

    fn ball3_cover() -> CoverTable {
        CoverTable::parse_text("cover 3 2\n1/2 0\n1/2 0\n1/2 0\n").unwrap()
    }

    #[test]
    fn lift_preserves_extremality() {
        let lifted = lift_dimension(&ball3());
        assert_eq!((lifted.d(), lifted.n()), (4, 2));
        let v = is_extremal(&lifted);
        assert!(v.is_extremal);
        assert_eq!(v.deficiency, rat(1, 2));

        // lifting all-ones yields all-ones
        let ones = BinaryTensor::ones(2, 2).unwrap();
        assert_eq!(lift_dimension(&ones), BinaryTensor::ones(3, 2).unwrap());

        // 2-dim extremal with one unity row lifts to a 3-dim extremal
        let row = BinaryTensor::from_cells(2, 2, vec![true, true, false, false]).unwrap();
        let lifted = lift_dimension(&row);
        let v = is_extremal(&lifted);
        assert!(v.is_extremal);
        assert_eq!(v.deficiency, rint(1));
    }

    #[test]
    fn grow_attach_one() {
        let grown = grow_order(&ball3_cover(), &GrowVariant::AttachOne { row: 1 }).unwrap();
        assert_eq!((grown.d(), grown.n()), (3, 3));
        assert_eq!(grown.weight(), rat(5, 2));
        let b = grown.induced_matrix();
        let v = is_extremal(&b);
        assert!(v.is_extremal);
        assert_eq!(v.deficiency, rat(1, 2));
        assert_eq!(min_cover(&b).1, grown);
    }

    #[test]
    fn grow_duplicate_rejects_uncovered_index() {
        // (2,2,2) is covered with weight 0, not 1
        let err = grow_order(
            &ball3_cover(),
            &GrowVariant::DuplicateIndex(Index::new(vec![2, 2, 2])),
        );
        assert!(err.is_err());

        // (1,1,2) is covered with weight exactly 1
        let grown = grow_order(
            &ball3_cover(),
            &GrowVariant::DuplicateIndex(Index::new(vec![1, 1, 2])),
        )
        .unwrap();
        let v = is_extremal(&grown.induced_matrix());
        assert!(v.is_extremal);
        assert_eq!(v.deficiency, rat(1, 2));
    }

    #[test]
    fn grow_split_variant() {
        let grown = grow_order(
            &ball3_cover(),
            &GrowVariant::AttachSplit {
                target_row: 1,
                delta_row: 2,
            },
        )
        .unwrap();
        assert_eq!(grown.row(1), &[rat(1, 2), rint(0), rat(1, 2)]);
        assert_eq!(grown.row(2), &[rat(1, 2), rint(0), rat(1, 2)]);
        assert_eq!(grown.row(3), &[rat(1, 2), rint(0), rint(0)]);
        let v = is_extremal(&grown.induced_matrix());
        assert!(v.is_extremal);
        assert!(grow_order(
            &ball3_cover(),
            &GrowVariant::AttachSplit {
                target_row: 2,
                delta_row: 2
            }
        )
        .is_err());
    }

    #[test]
    fn shrink_inverts_attach_one() {
        let grown = grow_order(&ball3_cover(), &GrowVariant::AttachOne { row: 2 }).unwrap();
        assert_eq!(shrink_order(&grown).unwrap(), ball3_cover());
        // the base cover has no unit column
        assert!(shrink_order(&ball3_cover()).is_none());
    }

    #[test]
    fn two_value_cover_examples() {
        let diagram = YoungDiagram::new(vec![1, 1, 1]).unwrap();
        let cover = two_value_cover(&diagram, 2, 3, 2).unwrap();
        assert_eq!(cover, ball3_cover());
        assert_eq!(cover.induced_matrix(), ball3());

        // total must be m*n - 1
        let diagram = YoungDiagram::new(vec![1, 1, 1]).unwrap();
        assert!(two_value_cover(&diagram, 3, 4, 2).is_err());
        // parts capped at n - 1 make some totals impossible
        let diagram = YoungDiagram::new(vec![1, 1, 1, 1, 1]).unwrap();
        assert!(two_value_cover(&diagram, 4, 5, 2).is_err());
    }

    #[test]
    fn two_value_feasibility() {
        assert!(polyplex_weight_feasible_two_value(&[1, 1, 1], 2, 2).unwrap());
        assert!(!polyplex_weight_feasible_two_value(&[3, 0], 2, 2).unwrap());
        assert!(polyplex_weight_feasible_two_value(&[4, 4], 2, 2).is_err());
    }

    #[test]
    fn gale_ryser_examples() {
        assert!(gale_ryser_exists(&[2, 2], &[2, 2]).unwrap());
        assert!(!gale_ryser_exists(&[2, 0], &[2, 0]).unwrap());
        assert!(gale_ryser_exists(&[1, 1], &[2]).unwrap());
        assert!(gale_ryser_exists(&[1, 2], &[2, 1]).is_err());
        assert!(gale_ryser_exists(&[2, 1], &[2, 2]).is_err());
    }

    #[test]
    fn split_essential_weights() {
        let split = split_essential_weight(&ball3_cover(), &rat(1, 2)).unwrap();
        assert_eq!(split.d(), 4);
        assert_eq!(split.row(1), &[rat(1, 2), rint(0)]);
        assert_eq!(split.row(3), &[rint(0), rint(0)]);
        assert_eq!(split.row(4), &[rat(1, 2), rint(0)]);
        let v = is_extremal(&split.induced_matrix());
        assert!(v.is_extremal);
        assert_eq!(v.deficiency, rat(1, 2));
        assert_eq!(deficiency(&split.induced_matrix()), rat(1, 2));

        // weight-gap mismatch is rejected
        assert!(split_essential_weight(&ball3_cover(), &rat(1, 3)).is_err());
    }
}
