//! Dense d-dimensional (0,1)-matrices of order n.
//!
//! Cells are addressed by 1-based coordinate tuples. Internally the cells are
//! stored row-major with the last coordinate varying fastest, matching the
//! text format. All values are immutable after construction; every operation
//! returns a fresh tensor.

use std::fmt;

use crate::{Error, Result};

/// A cell address: d coordinates, each in `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(Vec<usize>);

impl Index {
    pub fn new(coords: Vec<usize>) -> Self {
        Index(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate-wise complement `3 - c` (order-2 tensors only).
    pub fn antipode(&self) -> Index {
        Index(self.0.iter().map(|c| 3 - c).collect())
    }

    /// Parses a comma-separated coordinate list such as `2,1,2`.
    pub fn parse(text: &str) -> Result<Index> {
        let coords = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("bad coordinate {t:?} in index {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::parse(1, "empty index"));
        }
        Ok(Index(coords))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// The hyperplane `Γ_{direction, position}`: the (d-1)-dimensional slice
/// fixing coordinate `direction` to `position`. Both fields are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Hyperplane {
    pub direction: usize,
    pub position: usize,
}

impl Hyperplane {
    pub fn new(direction: usize, position: usize) -> Self {
        Hyperplane { direction, position }
    }
}

/// Dense d-dimensional (0,1)-matrix of order n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryTensor {
    d: usize,
    n: usize,
    cells: Vec<bool>,
}

/// Default work ceiling for [`BinaryTensor::canonical_form`]: number of
/// group elements `d! * (n!)^d` that brute-force canonicalization may visit.
pub const DEFAULT_CANONICAL_GUARD: u128 = 20_000_000;

impl BinaryTensor {
    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDimension(d));
        }
        if n == 0 {
            return Err(Error::BadOrder(n));
        }
        let len = n.checked_pow(d as u32).ok_or(Error::GuardExceeded {
            estimate: u128::MAX,
            limit: usize::MAX as u128,
        })?;
        Ok(BinaryTensor {
            d,
            n,
            cells: vec![false; len],
        })
    }

    pub fn ones(d: usize, n: usize) -> Result<Self> {
        let mut t = Self::zeros(d, n)?;
        t.cells.iter_mut().for_each(|c| *c = true);
        Ok(t)
    }

    /// Builds a tensor from flat cells ordered with coordinate d fastest.
    pub fn from_cells(d: usize, n: usize, cells: Vec<bool>) -> Result<Self> {
        let mut t = Self::zeros(d, n)?;
        if cells.len() != t.cells.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} cells", t.cells.len()),
                got: format!("{}", cells.len()),
            });
        }
        t.cells = cells;
        Ok(t)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub(crate) fn check_index(&self, index: &Index) -> Result<()> {
        if index.dim() != self.d || index.coords().iter().any(|&c| c < 1 || c > self.n) {
            return Err(Error::IndexOutOfRange {
                index: index.to_string(),
                d: self.d,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Flat offset of `index` (coordinate d fastest). The index must be valid.
    pub fn flat_of(&self, index: &Index) -> usize {
        let mut f = 0;
        for &c in index.coords() {
            f = f * self.n + (c - 1);
        }
        f
    }

    /// The 1-based index whose flat offset is `flat`.
    pub fn index_of_flat(&self, mut flat: usize) -> Index {
        let mut coords = vec![0; self.d];
        for i in (0..self.d).rev() {
            coords[i] = flat % self.n + 1;
            flat /= self.n;
        }
        Index(coords)
    }

    pub fn get(&self, index: &Index) -> Result<bool> {
        self.check_index(index)?;
        Ok(self.cells[self.flat_of(index)])
    }

    pub fn get_flat(&self, flat: usize) -> bool {
        self.cells[flat]
    }

    /// A copy with one cell overwritten.
    pub fn with_cell(&self, index: &Index, value: bool) -> Result<Self> {
        self.check_index(index)?;
        let mut t = self.clone();
        let f = t.flat_of(index);
        t.cells[f] = value;
        Ok(t)
    }

    pub fn indices(&self) -> impl Iterator<Item = Index> + '_ {
        (0..self.cells.len()).map(|f| self.index_of_flat(f))
    }

    /// Flat offsets of all 1-cells, in ascending order.
    pub fn support_flats(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&f| self.cells[f]).collect()
    }

    pub fn support(&self) -> Vec<Index> {
        self.support_flats()
            .into_iter()
            .map(|f| self.index_of_flat(f))
            .collect()
    }

    pub fn ones_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// True when `self` is entry-wise contained in `other`.
    pub fn contained_in(&self, other: &BinaryTensor) -> bool {
        self.d == other.d
            && self.n == other.n
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(&a, &b)| !a || b)
    }

    fn check_hyperplane(&self, h: Hyperplane) -> Result<()> {
        if h.direction < 1 || h.direction > self.d || h.position < 1 || h.position > self.n {
            return Err(Error::HyperplaneOutOfRange {
                direction: h.direction,
                position: h.position,
                d: self.d,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The (d-1)-dimensional slice fixing coordinate `h.direction` to
    /// `h.position`.
    pub fn slice(&self, h: Hyperplane) -> Result<BinaryTensor> {
        self.check_hyperplane(h)?;
        if self.d == 1 {
            return Err(Error::DimensionOne);
        }
        let mut out = BinaryTensor::zeros(self.d - 1, self.n)?;
        let dir = h.direction - 1;
        for f in 0..out.cells.len() {
            let sub = out.index_of_flat(f);
            let mut coords = sub.coords().to_vec();
            coords.insert(dir, h.position);
            out.cells[f] = self.cells[self.flat_of(&Index(coords))];
        }
        Ok(out)
    }

    /// Deletes the d hyperplanes through `index`: the order-(n-1) submatrix
    /// `A_index`. Requires n >= 2.
    pub fn delete_around(&self, index: &Index) -> Result<BinaryTensor> {
        self.check_index(index)?;
        if self.n == 1 {
            return Err(Error::OrderOne);
        }
        let mut out = BinaryTensor::zeros(self.d, self.n - 1)?;
        for f in 0..out.cells.len() {
            let sub = out.index_of_flat(f);
            let coords: Vec<usize> = sub
                .coords()
                .iter()
                .zip(index.coords())
                .map(|(&b, &a)| if b < a { b } else { b + 1 })
                .collect();
            out.cells[f] = self.cells[self.flat_of(&Index(coords))];
        }
        Ok(out)
    }

    /// True when `a_α != a_ᾱ` for every antipodal pair. Order 2 only.
    pub fn is_antipodal(&self) -> Result<bool> {
        if self.n != 2 {
            return Err(Error::NotOrderTwo(self.n));
        }
        let top = self.cells.len() - 1;
        Ok((0..self.cells.len()).all(|f| self.cells[f] != self.cells[top - f]))
    }

    /// True when for every direction the hyperplanes are entry-wise weakly
    /// decreasing as the position grows; equivalently the support is a
    /// down-set of the coordinate order.
    pub fn is_stepped(&self) -> bool {
        for f in 0..self.cells.len() {
            if !self.cells[f] {
                continue;
            }
            // stride of coordinate i is n^(d-1-i)
            let mut stride = 1;
            let mut rem = f;
            for _ in 0..self.d {
                let digit = rem % self.n;
                rem /= self.n;
                // predecessor along this coordinate must also be 1
                if digit > 0 && !self.cells[f - stride] {
                    return false;
                }
                stride *= self.n;
            }
        }
        true
    }

    /// Applies an equivalence transformation: output axis `k` reads input
    /// axis `axes[k]`, and output position `b` on that axis reads input
    /// position `positions[k][b]` (all 0-based permutations).
    pub fn relabel(&self, axes: &[usize], positions: &[Vec<usize>]) -> Result<BinaryTensor> {
        let perm_ok = |p: &[usize], len: usize| {
            let mut seen = vec![false; len];
            p.len() == len && p.iter().all(|&x| x < len && !std::mem::replace(&mut seen[x], true))
        };
        if !perm_ok(axes, self.d)
            || positions.len() != self.d
            || positions.iter().any(|p| !perm_ok(p, self.n))
        {
            return Err(Error::ShapeMismatch {
                expected: format!("axis permutation of {} and {} position permutations of {}", self.d, self.d, self.n),
                got: "invalid permutation".into(),
            });
        }
        let strides = self.strides();
        let mut out = BinaryTensor::zeros(self.d, self.n)?;
        let digits = digit_table(self.d, self.n);
        for f in 0..out.cells.len() {
            let mut src = 0;
            for k in 0..self.d {
                src += strides[axes[k]] * positions[k][digits[f][k]];
            }
            out.cells[f] = self.cells[src];
        }
        Ok(out)
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.d];
        for i in (0..self.d.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.n;
        }
        s
    }

    /// Canonical representative of the equivalence class of `self` under
    /// permutations of hyperplanes within each direction and permutations of
    /// directions: the lexicographically minimal flattened bit string over
    /// the whole group. Two tensors are equivalent iff their canonical forms
    /// are equal. Brute force with first-differing-bit pruning; guarded by
    /// [`DEFAULT_CANONICAL_GUARD`].
    pub fn canonical_form(&self) -> Result<BinaryTensor> {
        self.canonical_form_with_guard(DEFAULT_CANONICAL_GUARD)
    }

    pub fn canonical_form_with_guard(&self, guard: u128) -> Result<BinaryTensor> {
        let estimate = group_size(self.d, self.n);
        if estimate > guard {
            return Err(Error::GuardExceeded {
                estimate,
                limit: guard,
            });
        }
        let strides = self.strides();
        let digits = digit_table(self.d, self.n);
        let axis_perms = permutations(self.d);
        let pos_perms = permutations(self.n);
        let len = self.cells.len();

        let mut best = self.cells.clone();
        // scaled[k][perm][digit] = source-stride contribution of output
        // axis k under the given position permutation; rebuilt per axis map.
        let mut scaled: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.d];
        for axes in &axis_perms {
            for (k, &axis) in axes.iter().enumerate() {
                scaled[k] = pos_perms
                    .iter()
                    .map(|p| p.iter().map(|&x| x * strides[axis]).collect())
                    .collect();
            }
            // iterate over all (n!)^d position-permutation combinations
            let mut choice = vec![0usize; self.d];
            loop {
                let source = |f: usize| -> usize {
                    let mut src = 0;
                    for k in 0..self.d {
                        src += scaled[k][choice[k]][digits[f][k]];
                    }
                    src
                };
                // compare candidate against best, cell by cell
                let mut better = false;
                for f in 0..len {
                    let bit = self.cells[source(f)];
                    if bit != best[f] {
                        better = !bit; // candidate has 0 where best has 1
                        break;
                    }
                }
                if better {
                    for (f, slot) in best.iter_mut().enumerate() {
                        *slot = self.cells[source(f)];
                    }
                }
                // next combination
                let mut k = 0;
                loop {
                    if k == self.d {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < pos_perms.len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == self.d {
                    break;
                }
            }
        }
        BinaryTensor::from_cells(self.d, self.n, best)
    }

    /// True when the two tensors lie in the same equivalence class.
    pub fn equivalent_to(&self, other: &BinaryTensor) -> Result<bool> {
        if self.d != other.d || self.n != other.n {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Parses the tensor text format: a `tensor <d> <n>` header followed by
    /// `n^d` whitespace-separated values in `{0,1}`, coordinate d fastest.
    /// Lines starting with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<BinaryTensor> {
        let mut tokens = tokenize(text);
        let (header, line) = tokens
            .next()
            .ok_or_else(|| Error::parse(1, "empty tensor file"))?;
        if header != "tensor" {
            return Err(Error::parse(line, format!("expected `tensor`, got {header:?}")));
        }
        let d = parse_usize(&mut tokens, "dimension")?;
        let n = parse_usize(&mut tokens, "order")?;
        let mut t = BinaryTensor::zeros(d, n)?;
        for f in 0..t.cells.len() {
            let (tok, line) = tokens
                .next()
                .ok_or_else(|| Error::parse(0, format!("expected {} cells, got {f}", t.cells.len())))?;
            t.cells[f] = match tok {
                "0" => false,
                "1" => true,
                other => return Err(Error::parse(line, format!("expected 0 or 1, got {other:?}"))),
            };
        }
        if let Some((tok, line)) = tokens.next() {
            return Err(Error::parse(line, format!("unexpected trailing token {tok:?}")));
        }
        Ok(t)
    }

    /// Renders the tensor text format (inverse of [`BinaryTensor::parse_text`]).
    pub fn to_text(&self) -> String {
        let mut out = format!("tensor {} {}\n", self.d, self.n);
        let rows = self.cells.len() / self.n;
        for r in 0..rows {
            let row: Vec<&str> = (0..self.n)
                .map(|j| if self.cells[r * self.n + j] { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BinaryTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `d! * (n!)^d` with saturation.
pub fn group_size(d: usize, n: usize) -> u128 {
    let fact = |k: usize| -> u128 {
        (1..=k as u128).fold(1u128, |a, b| a.saturating_mul(b))
    };
    let mut est = fact(d);
    for _ in 0..d {
        est = est.saturating_mul(fact(n));
    }
    est
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// digits[f][k] = k-th coordinate digit (0-based) of flat offset f.
fn digit_table(d: usize, n: usize) -> Vec<Vec<usize>> {
    let len = n.pow(d as u32);
    let mut out = vec![vec![0; d]; len];
    for (f, row) in out.iter_mut().enumerate() {
        let mut rem = f;
        for k in (0..d).rev() {
            row[k] = rem % n;
            rem /= n;
        }
    }
    out
}

/// Tokenizer that strips `#` comments and tracks line numbers.
pub(crate) fn tokenize(text: &str) -> impl Iterator<Item = (&str, usize)> {
    text.lines().enumerate().flat_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        body.split_whitespace().map(move |t| (t, i + 1))
    })
}

pub(crate) fn parse_usize<'a>(
    tokens: &mut impl Iterator<Item = (&'a str, usize)>,
    what: &str,
) -> Result<usize> {
    let (tok, line) = tokens
        .next()
        .ok_or_else(|| Error::parse(0, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("bad {what}: {tok:?}")))
}
