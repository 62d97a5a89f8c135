//! Hyperplane covers: fractional vertex covers of the support hypergraph.
//!
//! The center of the module is the exact uniqueness decision: the optimal
//! cover of `A` is unique iff every table entry has a one-point range over
//! the optimal face of the covering program. Each range endpoint is computed
//! by one small linear program (the dual of the face probe, which keeps the
//! row count at `d*n` regardless of support size).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::lp::{Goal, LpProblem, Sense};
use crate::matching::{self, Polyplex};
use crate::rat::{parse_rat, rat, Rat};
use crate::tensor::{parse_usize, tokenize, BinaryTensor, Index};
use crate::{Error, Result};

/// A d×n table of nonnegative hyperplane weights.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverTable {
    d: usize,
    n: usize,
    weights: Vec<Rat>, // row-major
}

impl CoverTable {
    pub fn zero(d: usize, n: usize) -> Self {
        CoverTable {
            d,
            n,
            weights: vec![Rat::zero(); d * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::BadDimension(0));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: format!("{d} rows of equal width"),
                got: "ragged rows".into(),
            });
        }
        if rows.iter().flatten().any(|w| w.is_negative()) {
            return Err(Error::precondition("cover entries must be nonnegative"));
        }
        Ok(CoverTable {
            d,
            n,
            weights: rows.into_iter().flatten().collect(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_pos(&self, direction: usize, position: usize) -> Result<()> {
        if direction < 1 || direction > self.d || position < 1 || position > self.n {
            return Err(Error::HyperplaneOutOfRange {
                direction,
                position,
                d: self.d,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn get(&self, direction: usize, position: usize) -> Result<&Rat> {
        self.check_pos(direction, position)?;
        Ok(&self.weights[(direction - 1) * self.n + (position - 1)])
    }

    pub fn set(&mut self, direction: usize, position: usize, value: Rat) -> Result<()> {
        self.check_pos(direction, position)?;
        if value.is_negative() {
            return Err(Error::precondition("cover entries must be nonnegative"));
        }
        self.weights[(direction - 1) * self.n + (position - 1)] = value;
        Ok(())
    }

    pub fn row(&self, direction: usize) -> &[Rat] {
        &self.weights[(direction - 1) * self.n..direction * self.n]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.weights
            .iter()
            .enumerate()
            .map(|(k, w)| (k / self.n + 1, k % self.n + 1, w))
    }

    pub fn weight(&self) -> Rat {
        self.weights.iter().fold(Rat::zero(), |a, w| a + w)
    }

    /// Σ_i λ_{i, α_i}: the total weight covering the cell.
    pub fn weight_at(&self, index: &Index) -> Result<Rat> {
        if index.dim() != self.d || index.coords().iter().any(|&c| c < 1 || c > self.n) {
            return Err(Error::ShapeMismatch {
                expected: format!("index of a {}^{} tensor", self.n, self.d),
                got: index.to_string(),
            });
        }
        Ok(index
            .coords()
            .iter()
            .enumerate()
            .fold(Rat::zero(), |a, (i, &c)| {
                a + &self.weights[i * self.n + (c - 1)]
            }))
    }

    /// The (0,1)-matrix of all cells covered with weight at least 1.
    pub fn induced_matrix(&self) -> BinaryTensor {
        let mut cells = Vec::with_capacity(self.n.pow(self.d as u32));
        let probe = BinaryTensor::zeros(self.d, self.n).expect("valid shape");
        for idx in probe.indices() {
            cells.push(self.weight_at(&idx).expect("in range") >= Rat::one());
        }
        BinaryTensor::from_cells(self.d, self.n, cells).expect("matching shape")
    }

    /// Errors unless every support cell of `a` is covered with weight >= 1.
    pub fn validate_covers(&self, a: &BinaryTensor) -> Result<()> {
        if self.d != a.d() || self.n != a.n() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{} cover", a.d(), a.n()),
                got: format!("{}x{}", self.d, self.n),
            });
        }
        for idx in a.support() {
            if self.weight_at(&idx)? < Rat::one() {
                return Err(Error::precondition(format!(
                    "support cell {idx} is covered with weight below 1"
                )));
            }
        }
        Ok(())
    }

    pub fn is_cover_of(&self, a: &BinaryTensor) -> bool {
        self.validate_covers(a).is_ok()
    }

    /// Removes the column of each row at the corresponding coordinate of
    /// `index`: the reduced table for the deletion submatrix. Requires n >= 2.
    pub fn delete_weights(&self, index: &Index) -> Result<CoverTable> {
        if index.dim() != self.d || index.coords().iter().any(|&c| c < 1 || c > self.n) {
            return Err(Error::ShapeMismatch {
                expected: format!("index of a {}^{} tensor", self.n, self.d),
                got: index.to_string(),
            });
        }
        if self.n == 1 {
            return Err(Error::OrderOne);
        }
        let mut rows = Vec::with_capacity(self.d);
        for i in 1..=self.d {
            let skip = index.coords()[i - 1];
            let row: Vec<Rat> = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(j, _)| j + 1 != skip)
                .map(|(_, w)| w.clone())
                .collect();
            rows.push(row);
        }
        CoverTable::from_rows(rows)
    }

    /// Parses `cover <d> <n>` followed by d rows of n rationals.
    pub fn parse_text(text: &str) -> Result<CoverTable> {
        let mut tokens = tokenize(text);
        let (header, line) = tokens
            .next()
            .ok_or_else(|| Error::parse(1, "empty cover file"))?;
        if header != "cover" {
            return Err(Error::parse(line, format!("expected `cover`, got {header:?}")));
        }
        let d = parse_usize(&mut tokens, "dimension")?;
        let n = parse_usize(&mut tokens, "order")?;
        if d == 0 {
            return Err(Error::BadDimension(0));
        }
        if n == 0 {
            return Err(Error::BadOrder(0));
        }
        let mut weights = Vec::with_capacity(d * n);
        for _ in 0..d * n {
            let (tok, line) = tokens
                .next()
                .ok_or_else(|| Error::parse(0, format!("expected {} cover entries", d * n)))?;
            let w = parse_rat(tok, line)?;
            if w.is_negative() {
                return Err(Error::parse(line, format!("negative cover entry {tok}")));
            }
            weights.push(w);
        }
        if let Some((tok, line)) = tokens.next() {
            return Err(Error::parse(line, format!("unexpected trailing token {tok:?}")));
        }
        Ok(CoverTable { d, n, weights })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("cover {} {}\n", self.d, self.n);
        for i in 1..=self.d {
            let row: Vec<String> = self.row(i).iter().map(|w| w.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CoverTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for CoverTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Minimum-weight hyperplane cover of `a`, as `(weight, vertex solution)`.
pub fn min_cover(a: &BinaryTensor) -> (Rat, CoverTable) {
    let (w, _, cover) = matching::solve_primal_dual(a);
    (w, cover)
}

/// `n` minus the maximum polyplex weight.
pub fn deficiency(a: &BinaryTensor) -> Rat {
    Rat::from_integer(a.n().into()) - matching::max_polyplex(a).0
}

/// Outcome of the exact cover-uniqueness decision.
#[derive(Clone, Debug)]
pub struct CoverUniqueness {
    pub unique: bool,
    /// A second optimal cover differing from `min_cover`'s output, when one
    /// exists.
    pub witness: Option<CoverTable>,
}

/// Exact range of the cover entry `(direction, position)` over the optimal
/// face of the covering program, computed through the dual so the linear
/// program keeps `d*n` rows.
fn probe_cover_entry(
    a: &BinaryTensor,
    supp: &[usize],
    optimum: &Rat,
    direction: usize,
    position: usize,
) -> (Rat, Rat) {
    // min/max of λ_{dir,pos} over {λ >= 0, covers supp, total = optimum}.
    // Dual of "min c·λ over the face": max 1·y + optimum·w with
    // Σ_{α in Γ_ij} y_α + w <= c_ij, y >= 0, w free (split below).
    let solve_side = |target_sign: i64| -> Rat {
        let mut obj: Vec<Rat> = vec![Rat::one(); supp.len()];
        obj.push(optimum.clone());
        obj.push(-optimum.clone());
        let mut lp = LpProblem::new(obj);
        for i in 1..=a.d() {
            for j in 1..=a.n() {
                let mut coeffs: Vec<Rat> = supp
                    .iter()
                    .map(|&f| {
                        if a.index_of_flat(f).coords()[i - 1] == j {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect();
                coeffs.push(Rat::one());
                coeffs.push(-Rat::one());
                let rhs = if (i, j) == (direction, position) {
                    rat(target_sign, 1)
                } else {
                    Rat::zero()
                };
                lp.push_row(coeffs, Sense::Le, rhs).expect("width");
            }
        }
        let sol = lp.solve(Goal::Maximize).expect("well-formed probe LP");
        debug_assert!(sol.is_optimal());
        sol.objective_value
    };
    let lo = solve_side(1);
    let hi = -solve_side(-1);
    debug_assert!(lo <= hi);
    (lo, hi)
}

/// Solves the covering program with one entry pinned to `value`, returning a
/// minimum-weight cover under that pin.
fn pinned_cover(
    a: &BinaryTensor,
    direction: usize,
    position: usize,
    value: &Rat,
) -> CoverTable {
    let d = a.d();
    let n = a.n();
    let mut lp = LpProblem::new(vec![Rat::one(); d * n]);
    for idx in a.support() {
        let mut coeffs = vec![Rat::zero(); d * n];
        for (i, &c) in idx.coords().iter().enumerate() {
            coeffs[i * n + (c - 1)] = Rat::one();
        }
        lp.push_row(coeffs, Sense::Ge, Rat::one()).expect("width");
    }
    let mut pin = vec![Rat::zero(); d * n];
    pin[(direction - 1) * n + (position - 1)] = Rat::one();
    lp.push_row(pin, Sense::Eq, value.clone()).expect("width");
    let sol = lp.solve(Goal::Minimize).expect("well-formed cover LP");
    debug_assert!(sol.is_optimal());
    let mut cover = CoverTable::zero(d, n);
    for i in 1..=d {
        for j in 1..=n {
            cover
                .set(i, j, sol.values[(i - 1) * n + (j - 1)].clone())
                .expect("in range");
        }
    }
    cover
}

/// Decides exactly whether `a` has a unique optimal hyperplane cover, by
/// probing every table entry's range over the optimal face. When the answer
/// is no, a second optimal cover is produced as a witness.
pub fn cover_is_unique(a: &BinaryTensor) -> CoverUniqueness {
    let supp = a.support_flats();
    if supp.is_empty() {
        return CoverUniqueness {
            unique: true,
            witness: None,
        };
    }
    let (optimum, base) = min_cover(a);
    for i in 1..=a.d() {
        for j in 1..=a.n() {
            let (lo, hi) = probe_cover_entry(a, &supp, &optimum, i, j);
            if lo != hi {
                let current = base.get(i, j).expect("in range");
                let target = if *current != hi { hi } else { lo };
                let witness = pinned_cover(a, i, j, &target);
                debug_assert_eq!(witness.weight(), optimum);
                debug_assert!(witness != base);
                return CoverUniqueness {
                    unique: false,
                    witness: Some(witness),
                };
            }
        }
    }
    CoverUniqueness {
        unique: true,
        witness: None,
    }
}

/// Exact rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut rank = 0;
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut col = 0;
    while rank < rows.len() && col < cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &prow[col];
            for c in col..cols {
                if !prow[c].is_zero() {
                    let delta = &factor * &prow[c];
                    row[c] -= delta;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Sufficient uniqueness certificate from an optimal polyplex: builds one
/// indicator vector over the support for every hyperplane the polyplex fills
/// exactly, and tests the collection for linear independence. Independence
/// implies the optimal cover is unique. Errors when `k` is not an optimal
/// polyplex in `a`.
pub fn check_licq(a: &BinaryTensor, k: &Polyplex) -> Result<bool> {
    k.validate_in(a)?;
    let (opt, _) = matching::max_polyplex(a);
    if k.weight() != opt {
        return Err(Error::precondition(format!(
            "polyplex weight {} is not the optimum {}",
            k.weight(),
            opt
        )));
    }
    let supp = a.support_flats();
    let mut vectors = Vec::new();
    for i in 1..=a.d() {
        for j in 1..=a.n() {
            if k.hyperplane_sum(i, j) == Rat::one() {
                let v: Vec<Rat> = supp
                    .iter()
                    .map(|&f| {
                        if a.index_of_flat(f).coords()[i - 1] == j {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect();
                vectors.push(v);
            }
        }
    }
    let count = vectors.len();
    Ok(rational_rank(vectors) == count)
}

/// Sufficient uniqueness certificate from the table alone: true when every
/// upper index is covered with weight exactly 1. An index is upper when it is
/// covered with weight at least 1 and every index it strictly dominates
/// entry-wise (with a different weight sum) is covered with weight below 1.
pub fn check_upper_indices(cover: &CoverTable) -> bool {
    let probe = BinaryTensor::zeros(cover.d(), cover.n()).expect("valid shape");
    let all: Vec<(Index, Rat)> = probe
        .indices()
        .map(|idx| {
            let w = cover.weight_at(&idx).expect("in range");
            (idx, w)
        })
        .collect();
    for (alpha, w_alpha) in &all {
        if *w_alpha < Rat::one() {
            continue;
        }
        let mut is_upper = true;
        for (beta, w_beta) in &all {
            let entrywise_le = beta
                .coords()
                .iter()
                .zip(alpha.coords())
                .enumerate()
                .all(|(i, (&cb, &ca))| {
                    cover.get(i + 1, cb).expect("in range")
                        <= cover.get(i + 1, ca).expect("in range")
                });
            if entrywise_le && w_beta != w_alpha && *w_beta >= Rat::one() {
                is_upper = false;
                break;
            }
        }
        if is_upper && *w_alpha != Rat::one() {
            return false;
        }
    }
    true
}

/// One structural necessary condition on an optimal cover of an extremal
/// matrix.
#[derive(Clone, Debug)]
pub struct StructuralCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub passed: bool,
    pub detail: Option<String>,
}

/// The battery of structural necessary conditions. All applicable checks
/// pass when the matrix is extremal; any failure certifies non-extremality.
#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub checks: Vec<StructuralCheck>,
}

impl StructuralReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }
}

/// Runs the structural battery for an optimal cover `cover` of `a` with
/// deficiency `delta`. Errors when `cover` does not cover `a` or its weight
/// is not `n - delta` (i.e. it cannot be an optimal cover of an extremal
/// matrix with that deficiency).
pub fn structural_checks(
    a: &BinaryTensor,
    cover: &CoverTable,
    delta: &Rat,
) -> Result<StructuralReport> {
    cover.validate_covers(a)?;
    let n_rat = Rat::from_integer(a.n().into());
    if cover.weight() != &n_rat - delta {
        return Err(Error::precondition(format!(
            "cover weight {} does not match n - delta = {}",
            cover.weight(),
            &n_rat - delta
        )));
    }
    let mut checks = Vec::new();

    // each row contains at least one zero entry
    let mut detail = None;
    for i in 1..=a.d() {
        if !cover.row(i).iter().any(|w| w.is_zero()) {
            detail = Some(format!("row {i} has no zero entry"));
            break;
        }
    }
    checks.push(StructuralCheck {
        name: "zero-in-every-row",
        applicable: true,
        passed: detail.is_none(),
        detail,
    });

    // when delta < 1, every hyperplane holds a cell covered with weight
    // exactly 1
    let applicable = *delta < Rat::one();
    let mut detail = None;
    if applicable {
        'outer: for i in 1..=a.d() {
            for j in 1..=a.n() {
                let hit = a.indices().any(|idx| {
                    idx.coords()[i - 1] == j
                        && cover.weight_at(&idx).expect("in range") == Rat::one()
                });
                if !hit {
                    detail = Some(format!("hyperplane ({i},{j}) has no weight-1 cell"));
                    break 'outer;
                }
            }
        }
    }
    checks.push(StructuralCheck {
        name: "weight-one-in-every-hyperplane",
        applicable,
        passed: detail.is_none(),
        detail,
    });

    // no cell is covered with weight strictly between 1 - delta and 1
    let lower = Rat::one() - delta;
    let mut detail = None;
    for idx in a.indices() {
        let w = cover.weight_at(&idx)?;
        if w > lower && w < Rat::one() {
            detail = Some(format!("cell {idx} covered with weight {w}"));
            break;
        }
    }
    checks.push(StructuralCheck {
        name: "no-cover-weights-in-gap",
        applicable: true,
        passed: detail.is_none(),
        detail,
    });

    // unequal entries of one row differ by at least delta
    let mut detail = None;
    'rows: for i in 1..=a.d() {
        let row = cover.row(i);
        for x in row {
            for y in row {
                if x != y && (x - y).abs() < *delta {
                    detail = Some(format!("row {i} entries {x} and {y} differ by less than {delta}"));
                    break 'rows;
                }
            }
        }
    }
    checks.push(StructuralCheck {
        name: "row-gaps-at-least-deficiency",
        applicable: true,
        passed: detail.is_none(),
        detail,
    });

    // entries other than 0 and 1 lie in [delta, 1 - delta]
    let upper = Rat::one() - delta;
    let mut detail = None;
    for (i, j, w) in cover.entries() {
        if !w.is_zero() && !w.is_one() && (w < delta || *w > upper) {
            detail = Some(format!("entry ({i},{j}) = {w} outside [{delta}, {upper}]"));
            break;
        }
    }
    checks.push(StructuralCheck {
        name: "fractional-entries-within-bounds",
        applicable: true,
        passed: detail.is_none(),
        detail,
    });

    // fewer than n entries exceed 1/2
    let half = rat(1, 2);
    let big = cover.entries().filter(|(_, _, w)| **w > half).count();
    checks.push(StructuralCheck {
        name: "fewer-than-n-big-entries",
        applicable: true,
        passed: big < a.n(),
        detail: (big >= a.n()).then(|| format!("{big} entries exceed 1/2")),
    });

    Ok(StructuralReport { checks })
}

/// Classification of covers by deficiency: deficiencies in the open
/// intervals (1/3, 1/2) and (1/2, 1) cannot belong to extremal matrices, and
/// for deficiencies 1, 1/2, 1/3 the cover entries are confined to fixed
/// value sets.
#[derive(Clone, Debug)]
pub struct DeficiencyClassReport {
    /// False when the deficiency lies in a forbidden open interval (or
    /// outside (0, 1]).
    pub deficiency_admissible: bool,
    /// For deficiencies 1, 1/2, 1/3: whether all entries lie in the
    /// predicted value set. `None` when the deficiency pins no value set.
    pub entries_in_value_class: Option<bool>,
    pub detail: Option<String>,
}

pub fn classify_big_deficiency(delta: &Rat, cover: &CoverTable) -> DeficiencyClassReport {
    let one = Rat::one();
    let half = rat(1, 2);
    let third = rat(1, 3);
    let admissible = delta.is_positive()
        && *delta <= one
        && !(*delta > half && *delta < one)
        && !(*delta > third && *delta < half);
    if !admissible {
        return DeficiencyClassReport {
            deficiency_admissible: false,
            entries_in_value_class: None,
            detail: Some(format!("deficiency {delta} is impossible for an extremal matrix")),
        };
    }
    let allowed: Option<Vec<Rat>> = if *delta == one {
        Some(vec![Rat::zero(), one.clone()])
    } else if *delta == half {
        Some(vec![Rat::zero(), half.clone(), one.clone()])
    } else if *delta == third {
        Some(vec![Rat::zero(), third.clone(), rat(2, 3), one.clone()])
    } else {
        None
    };
    match allowed {
        None => DeficiencyClassReport {
            deficiency_admissible: true,
            entries_in_value_class: None,
            detail: None,
        },
        Some(set) => {
            let offender = cover
                .entries()
                .find(|(_, _, w)| !set.contains(w))
                .map(|(i, j, w)| format!("entry ({i},{j}) = {w} outside the value set"));
            DeficiencyClassReport {
                deficiency_admissible: true,
                entries_in_value_class: Some(offender.is_none()),
                detail: offender,
            }
        }
    }
}
