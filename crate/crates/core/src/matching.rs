//! Optimal polyplexes (fractional matchings) and integer diagonals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::covers::CoverTable;
use crate::lp::{Goal, LpProblem, Sense};
use crate::rat::{parse_rat, Rat};
use crate::tensor::{parse_usize, tokenize, BinaryTensor, Index};
use crate::{Error, Result};

/// A sparse nonnegative tensor whose every hyperplane sums to at most 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyplex {
    d: usize,
    n: usize,
    entries: BTreeMap<Vec<usize>, Rat>,
}

impl Polyplex {
    pub fn new(d: usize, n: usize) -> Self {
        Polyplex {
            d,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inserts a positive entry; zero values are dropped.
    pub fn set(&mut self, index: &Index, value: Rat) {
        if value.is_zero() {
            self.entries.remove(index.coords());
        } else {
            self.entries.insert(index.coords().to_vec(), value);
        }
    }

    pub fn get(&self, index: &Index) -> Rat {
        self.entries
            .get(index.coords())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Index, &Rat)> {
        self.entries
            .iter()
            .map(|(c, v)| (Index::new(c.clone()), v))
    }

    pub fn weight(&self) -> Rat {
        self.entries.values().fold(Rat::zero(), |a, v| a + v)
    }

    pub fn hyperplane_sum(&self, direction: usize, position: usize) -> Rat {
        self.entries
            .iter()
            .filter(|(c, _)| c[direction - 1] == position)
            .fold(Rat::zero(), |a, (_, v)| a + v)
    }

    /// Checks the polyplex axioms and containment in `host`.
    pub fn validate_in(&self, host: &BinaryTensor) -> Result<()> {
        if self.d != host.d() || self.n != host.n() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}^{}", host.n(), host.d()),
                got: format!("{}^{}", self.n, self.d),
            });
        }
        for (idx, v) in self.entries() {
            host.check_index(&idx)?;
            if v <= &Rat::zero() {
                return Err(Error::precondition(format!(
                    "polyplex entry at {idx} is not positive"
                )));
            }
            if !host.get(&idx)? {
                return Err(Error::precondition(format!(
                    "polyplex entry at {idx} lies outside the support"
                )));
            }
        }
        for i in 1..=self.d {
            for j in 1..=self.n {
                if self.hyperplane_sum(i, j) > Rat::one() {
                    return Err(Error::precondition(format!(
                        "hyperplane ({i},{j}) sums above 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parses `polyplex <d> <n>` followed by `<i1> .. <id> <value>` lines.
    pub fn parse_text(text: &str) -> Result<Polyplex> {
        let mut tokens = tokenize(text).peekable();
        let (header, line) = tokens
            .next()
            .ok_or_else(|| Error::parse(1, "empty polyplex file"))?;
        if header != "polyplex" {
            return Err(Error::parse(line, format!("expected `polyplex`, got {header:?}")));
        }
        let d = parse_usize(&mut tokens, "dimension")?;
        let n = parse_usize(&mut tokens, "order")?;
        let mut p = Polyplex::new(d, n);
        while tokens.peek().is_some() {
            let mut coords = Vec::with_capacity(d);
            for _ in 0..d {
                coords.push(parse_usize(&mut tokens, "coordinate")?);
            }
            let (tok, line) = tokens
                .next()
                .ok_or_else(|| Error::parse(0, "missing polyplex entry value"))?;
            let v = parse_rat(tok, line)?;
            if coords.iter().any(|&c| c < 1 || c > n) {
                return Err(Error::parse(line, format!("coordinates out of range in entry")));
            }
            p.set(&Index::new(coords), v);
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("polyplex {} {}\n", self.d, self.n);
        for (coords, v) in &self.entries {
            let cs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{} {}\n", cs.join(" "), v));
        }
        out
    }
}

impl fmt::Display for Polyplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// n cells meeting every hyperplane exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    cells: Vec<Index>,
}

impl Diagonal {
    pub fn cells(&self) -> &[Index] {
        &self.cells
    }

    /// As a polyplex of weight n (every entry 1).
    pub fn to_polyplex(&self, d: usize, n: usize) -> Polyplex {
        let mut p = Polyplex::new(d, n);
        for c in &self.cells {
            p.set(c, Rat::one());
        }
        p
    }
}

/// The maximum-weight-polyplex linear program restricted to the support.
/// Columns are support cells in flat order; rows are hyperplanes in
/// (direction, position) order.
pub(crate) fn polyplex_lp(a: &BinaryTensor) -> (LpProblem, Vec<usize>) {
    let supp = a.support_flats();
    let mut p = LpProblem::new(vec![Rat::one(); supp.len()]);
    for dir in 1..=a.d() {
        for pos in 1..=a.n() {
            let coeffs: Vec<Rat> = supp
                .iter()
                .map(|&f| {
                    if a.index_of_flat(f).coords()[dir - 1] == pos {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            p.push_row(coeffs, Sense::Le, Rat::one()).expect("width");
        }
    }
    (p, supp)
}

/// Solves the polyplex program once and reads off both optima: the primal
/// basic solution (an optimal polyplex) and the dual shadow prices (an
/// optimal hyperplane cover).
pub(crate) fn solve_primal_dual(a: &BinaryTensor) -> (Rat, Polyplex, CoverTable) {
    let (lp, supp) = polyplex_lp(a);
    if supp.is_empty() {
        return (Rat::zero(), Polyplex::new(a.d(), a.n()), CoverTable::zero(a.d(), a.n()));
    }
    let sol = lp.solve(Goal::Maximize).expect("well-formed polyplex LP");
    debug_assert!(sol.is_optimal(), "polyplex LP is always feasible and bounded");
    let mut k = Polyplex::new(a.d(), a.n());
    for (col, &f) in supp.iter().enumerate() {
        if !sol.values[col].is_zero() {
            k.set(&a.index_of_flat(f), sol.values[col].clone());
        }
    }
    let mut cover = CoverTable::zero(a.d(), a.n());
    let mut row = 0;
    for dir in 1..=a.d() {
        for pos in 1..=a.n() {
            cover.set(dir, pos, sol.duals[row].clone()).expect("in range");
            row += 1;
        }
    }
    (sol.objective_value, k, cover)
}

/// Maximum-weight polyplex contained in `a`, as `(weight, vertex solution)`.
pub fn max_polyplex(a: &BinaryTensor) -> (Rat, Polyplex) {
    let (w, k, _) = solve_primal_dual(a);
    (w, k)
}

/// True when the optimal polyplex weight equals the order exactly.
pub fn has_polydiagonal(a: &BinaryTensor) -> bool {
    // a diagonal is a polydiagonal; the backtracking search is much cheaper
    // than the LP when it succeeds
    if find_diagonal(a).is_some() {
        return true;
    }
    max_polyplex(a).0 == Rat::from_integer(a.n().into())
}

/// Exhaustive backtracking search for a diagonal of 1-cells: positions of
/// direction 1 are filled most-constrained-first, keeping the chosen cells'
/// coordinates partial permutations in every other direction.
pub fn find_diagonal(a: &BinaryTensor) -> Option<Diagonal> {
    let n = a.n();
    let d = a.d();
    // candidate cells per direction-1 position
    let mut cells_by_pos: Vec<Vec<Index>> = vec![Vec::new(); n + 1];
    for idx in a.support() {
        cells_by_pos[idx.coords()[0]].push(idx);
    }
    if cells_by_pos[1..].iter().any(|v| v.is_empty()) {
        return None;
    }
    // used[i][j]: position j of direction i+2 is taken
    let mut used = vec![vec![false; n + 1]; d.saturating_sub(1)];
    let mut filled = vec![false; n + 1];
    let mut chosen: Vec<Index> = Vec::with_capacity(n);

    fn admissible(idx: &Index, used: &[Vec<bool>]) -> bool {
        idx.coords()[1..]
            .iter()
            .enumerate()
            .all(|(i, &c)| !used[i][c])
    }

    fn search(
        cells_by_pos: &[Vec<Index>],
        used: &mut Vec<Vec<bool>>,
        filled: &mut Vec<bool>,
        chosen: &mut Vec<Index>,
        n: usize,
    ) -> bool {
        // most constrained unfilled position
        let mut best: Option<(usize, usize)> = None;
        for j in 1..=n {
            if filled[j] {
                continue;
            }
            let count = cells_by_pos[j]
                .iter()
                .filter(|idx| admissible(idx, used))
                .count();
            if count == 0 {
                return false;
            }
            if best.map_or(true, |(_, c)| count < c) {
                best = Some((j, count));
            }
        }
        let Some((j, _)) = best else {
            return true; // all filled
        };
        filled[j] = true;
        for idx in &cells_by_pos[j] {
            if !admissible(idx, used) {
                continue;
            }
            for (i, &c) in idx.coords()[1..].iter().enumerate() {
                used[i][c] = true;
            }
            chosen.push(idx.clone());
            if search(cells_by_pos, used, filled, chosen, n) {
                return true;
            }
            chosen.pop();
            for (i, &c) in idx.coords()[1..].iter().enumerate() {
                used[i][c] = false;
            }
        }
        filled[j] = false;
        false
    }

    if search(&cells_by_pos, &mut used, &mut filled, &mut chosen, n) {
        chosen.sort_by(|a, b| a.coords().cmp(b.coords()));
        Some(Diagonal { cells: chosen })
    } else {
        None
    }
}

/// One complementary-slackness violation.
#[derive(Clone, Debug)]
pub enum SlacknessViolation {
    /// `k_α > 0` but α is covered with weight other than 1.
    EntryNotCoveredExactly { index: Index, cover_weight: Rat },
    /// `λ_{i,j} > 0` but the polyplex sums to something other than 1 on the
    /// hyperplane.
    HyperplaneNotTight {
        direction: usize,
        position: usize,
        polyplex_sum: Rat,
    },
}

impl fmt::Display for SlacknessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlacknessViolation::EntryNotCoveredExactly { index, cover_weight } => {
                write!(f, "entry {index} has positive weight but cover weight {cover_weight}")
            }
            SlacknessViolation::HyperplaneNotTight {
                direction,
                position,
                polyplex_sum,
            } => write!(
                f,
                "hyperplane ({direction},{position}) has positive cover weight but polyplex sum {polyplex_sum}"
            ),
        }
    }
}

/// Joint-optimality certificate for a (polyplex, cover) pair.
#[derive(Clone, Debug)]
pub struct SlacknessReport {
    pub polyplex_weight: Rat,
    pub cover_weight: Rat,
    pub violations: Vec<SlacknessViolation>,
}

impl SlacknessReport {
    /// An empty report certifies that both sides are optimal: the slackness
    /// identities force the two weights to agree.
    pub fn certifies_optimality(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both complementary-slackness families for a feasible pair.
/// Errors when `k` is not a polyplex contained in `a` or `cover` does not
/// cover `a`.
pub fn verify_slackness(
    a: &BinaryTensor,
    k: &Polyplex,
    cover: &CoverTable,
) -> Result<SlacknessReport> {
    k.validate_in(a)?;
    cover.validate_covers(a)?;
    let mut violations = Vec::new();
    for (idx, v) in k.entries() {
        debug_assert!(v > &Rat::zero());
        let w = cover.weight_at(&idx)?;
        if w != Rat::one() {
            violations.push(SlacknessViolation::EntryNotCoveredExactly {
                index: idx,
                cover_weight: w,
            });
        }
    }
    for dir in 1..=a.d() {
        for pos in 1..=a.n() {
            if cover.get(dir, pos)?.is_zero() {
                continue;
            }
            let s = k.hyperplane_sum(dir, pos);
            if s != Rat::one() {
                violations.push(SlacknessViolation::HyperplaneNotTight {
                    direction: dir,
                    position: pos,
                    polyplex_sum: s,
                });
            }
        }
    }
    Ok(SlacknessReport {
        polyplex_weight: k.weight(),
        cover_weight: cover.weight(),
        violations,
    })
}
