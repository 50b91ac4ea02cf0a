//! Signed matrices, columns, faces, and chain templates.
//!
//! A `SignedMatrix` is a k x (m+1) matrix with entries in {±1,...,±n}; it is
//! the combinatorial stand-in for a singular m-simplex into the Stiefel
//! manifold. Forgetting column order gives a `Face` of the abstract complex.
//! A `ChainTemplate` is a matrix with fixed, free (`~`, both signs) and
//! dependent (`!`, sign forced by validity) slots; it expands to a GF(2)
//! chain of faces.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{Chain, Mode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("a signed index cannot be zero")]
    ZeroIndex,
    #[error("entry {value} has magnitude larger than n = {n}")]
    MagnitudeOutOfRange { value: i32, n: u32 },
    #[error("column {0} and column {1} are equal")]
    DuplicateColumn(usize, usize),
    #[error("matrix has no columns")]
    EmptyMatrix,
    #[error("column {col} has {len} entries, expected k = {k}")]
    RaggedColumn { col: usize, len: usize, k: usize },
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },
    #[error("dependent slots admit {found} valid completions (expected exactly 1) for free assignment {assignment:#b}")]
    AmbiguousDep { assignment: u64, found: usize },
    #[error("validity oracle could not decide a matrix needed by template expansion")]
    OracleUnresolved,
}

/// A nonzero entry ±i with magnitude in {1,...,n}.
///
/// Ordered by (magnitude, sign), with the positive sign first, so that
/// 1 < -1 < 2 < -2 < ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedIndex(i32);

impl SignedIndex {
    pub fn new(value: i32) -> Result<Self, MatrixError> {
        if value == 0 {
            return Err(MatrixError::ZeroIndex);
        }
        Ok(SignedIndex(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn magnitude(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn negated(self) -> Self {
        SignedIndex(-self.0)
    }

    pub fn with_sign(magnitude: u32, negative: bool) -> Self {
        debug_assert!(magnitude >= 1);
        SignedIndex(if negative {
            -(magnitude as i32)
        } else {
            magnitude as i32
        })
    }
}

impl Ord for SignedIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.magnitude(), self.is_negative()).cmp(&(other.magnitude(), other.is_negative()))
    }
}

impl PartialOrd for SignedIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One column of a signed matrix: an ordered k-tuple of signed indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Column(pub Vec<SignedIndex>);

impl Column {
    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn entry(&self, row: usize) -> SignedIndex {
        self.0[row]
    }

    /// A column is a valid 0-face iff its entry magnitudes are pairwise distinct.
    pub fn has_distinct_magnitudes(&self) -> bool {
        let mut mags: Vec<u32> = self.0.iter().map(|e| e.magnitude()).collect();
        mags.sort_unstable();
        mags.windows(2).all(|w| w[0] != w[1])
    }

    /// Negates the last entry (the involution on columns).
    pub fn tau(&self) -> Column {
        let mut entries = self.0.clone();
        let last = entries.len() - 1;
        entries[last] = entries[last].negated();
        Column(entries)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A k x (m+1) matrix over {±1,...,±n} with ordered columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMatrix {
    n: u32,
    k: usize,
    cols: Vec<Column>,
}

impl SignedMatrix {
    pub fn new(n: u32, cols: Vec<Column>) -> Result<Self, MatrixError> {
        if cols.is_empty() {
            return Err(MatrixError::EmptyMatrix);
        }
        let k = cols[0].k();
        for (j, col) in cols.iter().enumerate() {
            if col.k() != k {
                return Err(MatrixError::RaggedColumn {
                    col: j,
                    len: col.k(),
                    k,
                });
            }
            for e in &col.0 {
                if e.magnitude() < 1 || e.magnitude() > n {
                    return Err(MatrixError::MagnitudeOutOfRange { value: e.value(), n });
                }
            }
        }
        Ok(SignedMatrix { n, k, cols })
    }

    /// Parses the text grammar, rejecting free/dep slots.
    pub fn parse(text: &str, n: u32) -> Result<Self, MatrixError> {
        let t = ChainTemplate::parse(text, n)?;
        t.as_matrix()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of columns, m + 1.
    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn dim(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> SignedIndex {
        self.cols[col].0[row]
    }

    pub fn has_distinct_columns(&self) -> bool {
        self.duplicate_columns().is_none()
    }

    fn duplicate_columns(&self) -> Option<(usize, usize)> {
        for i in 0..self.cols.len() {
            for j in i + 1..self.cols.len() {
                if self.cols[i] == self.cols[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Drops column `j`.
    pub fn without_column(&self, j: usize) -> SignedMatrix {
        let mut cols = self.cols.clone();
        cols.remove(j);
        SignedMatrix {
            n: self.n,
            k: self.k,
            cols,
        }
    }

    /// Keeps only the given rows, in order.
    pub fn restrict_rows(&self, rows: &[usize]) -> SignedMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| Column(rows.iter().map(|&i| c.0[i]).collect()))
            .collect();
        SignedMatrix {
            n: self.n,
            k: rows.len(),
            cols,
        }
    }

    pub fn sort_columns(&mut self) {
        self.cols.sort();
    }

    /// Row-major comparison under the fixed total order on entries.
    pub fn row_major_cmp(&self, other: &SignedMatrix) -> Ordering {
        debug_assert_eq!(self.k, other.k);
        debug_assert_eq!(self.cols.len(), other.cols.len());
        for i in 0..self.k {
            for j in 0..self.cols.len() {
                match self.entry(i, j).cmp(&other.entry(i, j)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for SignedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.k)
            .map(|i| {
                (0..self.cols.len())
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(" ; "))
    }
}

/// An element of the abstract complex X(n,k): an unordered set of columns.
///
/// Columns are stored sorted so set equality is structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    n: u32,
    k: usize,
    cols: Vec<Column>,
}

impl Face {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    /// The matrix whose columns are this face's columns in sorted order.
    pub fn matrix(&self) -> SignedMatrix {
        SignedMatrix {
            n: self.n,
            k: self.k,
            cols: self.cols.clone(),
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix())
    }
}

/// Forgets column order; errors if two columns coincide.
pub fn face_of(a: &SignedMatrix) -> Result<Face, MatrixError> {
    if let Some((i, j)) = a.duplicate_columns() {
        return Err(MatrixError::DuplicateColumn(i, j));
    }
    let mut cols = a.cols.clone();
    cols.sort();
    Ok(Face {
        n: a.n,
        k: a.k,
        cols,
    })
}

/// An elementary signed row operation. Each has determinant -1 as a signed
/// permutation matrix, so even-length words are exactly the rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOp {
    NegateRow(usize),
    SwapRows(usize, usize),
}

impl RowOp {
    pub fn apply(&self, a: &SignedMatrix) -> SignedMatrix {
        let mut cols = a.cols.clone();
        match *self {
            RowOp::NegateRow(i) => {
                for c in &mut cols {
                    c.0[i] = c.0[i].negated();
                }
            }
            RowOp::SwapRows(i, j) => {
                for c in &mut cols {
                    c.0.swap(i, j);
                }
            }
        }
        SignedMatrix {
            n: a.n,
            k: a.k,
            cols,
        }
    }
}

/// A signed permutation of the rows: row i of the image is
/// sign[i] * (row perm[i] of the source).
#[derive(Debug, Clone)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub negate: Vec<bool>,
}

impl SignedPerm {
    pub fn determinant(&self) -> i32 {
        let mut seen = vec![false; self.perm.len()];
        let mut sign = 1i32;
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        for &neg in &self.negate {
            if neg {
                sign = -sign;
            }
        }
        sign
    }

    pub fn apply(&self, a: &SignedMatrix) -> SignedMatrix {
        let cols = a
            .cols
            .iter()
            .map(|c| {
                Column(
                    (0..a.k)
                        .map(|i| {
                            let e = c.0[self.perm[i]];
                            if self.negate[i] {
                                e.negated()
                            } else {
                                e
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        SignedMatrix {
            n: a.n,
            k: a.k,
            cols,
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    fn heap(items: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
        if m == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..m {
            heap(items, m - 1, out);
            if m % 2 == 0 {
                items.swap(i, m - 1);
            } else {
                items.swap(0, m - 1);
            }
        }
    }
    heap(&mut items, k, &mut out);
    out
}

/// All signed row permutations of determinant +1 ("rotations" of the frame).
pub fn signed_rotations(k: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for perm in permutations(k) {
        for mask in 0u32..(1 << k) {
            let negate: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
            let g = SignedPerm {
                perm: perm.clone(),
                negate,
            };
            if g.determinant() == 1 {
                out.push(g);
            }
        }
    }
    out
}

/// The minimum of the orbit of `a` under determinant-+1 signed row
/// permutations, with columns sorted. Constant on orbits and idempotent.
pub fn canonical_form(a: &SignedMatrix) -> SignedMatrix {
    let mut best: Option<SignedMatrix> = None;
    for g in signed_rotations(a.k()) {
        let mut b = g.apply(a);
        b.sort_columns();
        match &best {
            None => best = Some(b),
            Some(cur) => {
                if b.row_major_cmp(cur) == Ordering::Less {
                    best = Some(b);
                }
            }
        }
    }
    best.expect("nonempty group")
}

/// True iff the two matrices descend to the same singular simplex in the
/// Grassmannian, i.e. differ by an even word of row negations and swaps.
pub fn rotation_equivalent(a: &SignedMatrix, b: &SignedMatrix) -> Result<bool, MatrixError> {
    if a.k() != b.k() || a.num_cols() != b.num_cols() || a.n() != b.n() {
        return Err(MatrixError::ShapeMismatch(
            a.k(),
            a.num_cols(),
            b.k(),
            b.num_cols(),
        ));
    }
    Ok(canonical_form(a) == canonical_form(b))
}

/// One slot of a chain template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Slot {
    /// A fixed entry, written `3` or `-3`.
    Fixed {
        v: SignedIndex,
    },
    /// A free sign (the paper's ±), written `~3`.
    Free {
        pm: u32,
    },
    /// A dependent sign (the paper's ∓), written `!3`; its sign is the unique
    /// one making the whole matrix valid given the free assignment.
    Dep {
        mp: u32,
    },
}

impl Slot {
    pub fn fixed(value: i32) -> Slot {
        Slot::Fixed {
            v: SignedIndex::new(value).expect("nonzero"),
        }
    }

    pub fn free(magnitude: u32) -> Slot {
        Slot::Free { pm: magnitude }
    }

    pub fn dep(magnitude: u32) -> Slot {
        Slot::Dep { mp: magnitude }
    }

    pub fn magnitude(&self) -> u32 {
        match *self {
            Slot::Fixed { v } => v.magnitude(),
            Slot::Free { pm } => pm,
            Slot::Dep { mp } => mp,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Slot::Fixed { v } => write!(f, "{}", v),
            Slot::Free { pm } => write!(f, "~{}", pm),
            Slot::Dep { mp } => write!(f, "!{}", mp),
        }
    }
}

/// A matrix of slots; expands to the GF(2) sum of 2^(#free) valid matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTemplate {
    pub n: u32,
    pub k: usize,
    /// Row-major grid: `rows[i][j]` is the slot in row i, column j.
    pub rows: Vec<Vec<Slot>>,
}

fn parse_magnitude(text: &str, row: usize, col: usize) -> Result<u32, MatrixError> {
    let value: u32 = text.parse().map_err(|_| MatrixError::Parse {
        row,
        col,
        msg: format!("expected positive magnitude, found {text:?}"),
    })?;
    if value == 0 {
        return Err(MatrixError::Parse {
            row,
            col,
            msg: "magnitude cannot be zero".into(),
        });
    }
    Ok(value)
}

impl ChainTemplate {
    pub fn new(n: u32, rows: Vec<Vec<Slot>>) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::EmptyMatrix);
        }
        let k = rows.len();
        let m1 = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m1 {
                return Err(MatrixError::RaggedColumn {
                    col: i,
                    len: row.len(),
                    k: m1,
                });
            }
            for slot in row {
                let mag = slot.magnitude();
                if mag < 1 || mag > n {
                    return Err(MatrixError::MagnitudeOutOfRange {
                        value: mag as i32,
                        n,
                    });
                }
            }
        }
        Ok(ChainTemplate { n, k, rows })
    }

    /// Parses the text grammar: entries are decimal integers with optional
    /// leading `-`; free slots `~3`, dependent slots `!3`; columns separated
    /// by spaces, rows by `;`.
    pub fn parse(text: &str, n: u32) -> Result<Self, MatrixError> {
        let mut rows = Vec::new();
        for (i, row_text) in text.split(';').enumerate() {
            let mut row = Vec::new();
            for (j, tok) in row_text.split_whitespace().enumerate() {
                let slot = if let Some(rest) = tok.strip_prefix('~') {
                    Slot::free(parse_magnitude(rest, i, j)?)
                } else if let Some(rest) = tok.strip_prefix('!') {
                    Slot::dep(parse_magnitude(rest, i, j)?)
                } else {
                    let value: i32 = tok.parse().map_err(|_| MatrixError::Parse {
                        row: i,
                        col: j,
                        msg: format!("expected integer, found {tok:?}"),
                    })?;
                    if value == 0 {
                        return Err(MatrixError::Parse {
                            row: i,
                            col: j,
                            msg: "entry cannot be zero".into(),
                        });
                    }
                    Slot::fixed(value)
                };
                row.push(slot);
            }
            if row.is_empty() {
                return Err(MatrixError::Parse {
                    row: i,
                    col: 0,
                    msg: "empty row".into(),
                });
            }
            rows.push(row);
        }
        ChainTemplate::new(n, rows)
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn dim(&self) -> usize {
        self.num_cols() - 1
    }

    pub fn free_slots(&self) -> Vec<(usize, usize)> {
        self.slots_matching(|s| matches!(s, Slot::Free { .. }))
    }

    pub fn dep_slots(&self) -> Vec<(usize, usize)> {
        self.slots_matching(|s| matches!(s, Slot::Dep { .. }))
    }

    fn slots_matching(&self, pred: impl Fn(&Slot) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, slot) in row.iter().enumerate() {
                if pred(slot) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Converts a template with no free or dependent slots into a matrix.
    pub fn as_matrix(&self) -> Result<SignedMatrix, MatrixError> {
        let m1 = self.num_cols();
        let mut cols = Vec::with_capacity(m1);
        for j in 0..m1 {
            let mut entries = Vec::with_capacity(self.k);
            for i in 0..self.k {
                match self.rows[i][j] {
                    Slot::Fixed { v } => entries.push(v),
                    other => {
                        return Err(MatrixError::Parse {
                            row: i,
                            col: j,
                            msg: format!("slot {other} is not a fixed entry"),
                        })
                    }
                }
            }
            cols.push(Column(entries));
        }
        SignedMatrix::new(self.n, cols)
    }

    fn instantiate(&self, signs: &[(usize, usize, bool)]) -> SignedMatrix {
        let m1 = self.num_cols();
        let mut cols = Vec::with_capacity(m1);
        for j in 0..m1 {
            let mut entries = Vec::with_capacity(self.k);
            for i in 0..self.k {
                let e = match self.rows[i][j] {
                    Slot::Fixed { v } => v,
                    Slot::Free { pm } | Slot::Dep { mp: pm } => {
                        let neg = signs
                            .iter()
                            .find(|&&(si, sj, _)| si == i && sj == j)
                            .map(|&(_, _, neg)| neg)
                            .expect("sign assigned for every non-fixed slot");
                        SignedIndex::with_sign(pm, neg)
                    }
                };
                entries.push(e);
            }
            cols.push(Column(entries));
        }
        SignedMatrix {
            n: self.n,
            k: self.k,
            cols,
        }
    }
}

impl fmt::Display for ChainTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(" ; "))
    }
}

/// What a validity oracle may say about one matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Valid,
    Invalid,
    Unresolved,
}

/// Expands a template to the GF(2) chain of its 2^(#free) matrices.
///
/// For each assignment of the free signs, the dependent slots receive the
/// unique sign completion that the oracle accepts; zero or several acceptable
/// completions is an `AmbiguousDep` error.
pub fn expand_template<F>(
    t: &ChainTemplate,
    mode: Mode,
    mut oracle: F,
) -> Result<Chain, MatrixError>
where
    F: FnMut(&SignedMatrix) -> OracleAnswer,
{
    let free = t.free_slots();
    let dep = t.dep_slots();
    assert!(free.len() < 63 && dep.len() < 63, "template too large");
    let mut faces = Vec::with_capacity(1 << free.len());
    for assignment in 0u64..(1 << free.len()) {
        let mut signs: Vec<(usize, usize, bool)> = free
            .iter()
            .enumerate()
            .map(|(b, &(i, j))| (i, j, assignment & (1 << b) != 0))
            .collect();
        let mut chosen: Option<SignedMatrix> = None;
        let mut found = 0usize;
        for completion in 0u64..(1 << dep.len()) {
            signs.truncate(free.len());
            for (b, &(i, j)) in dep.iter().enumerate() {
                signs.push((i, j, completion & (1 << b) != 0));
            }
            let candidate = t.instantiate(&signs);
            let answer = if candidate.has_distinct_columns() {
                oracle(&candidate)
            } else {
                OracleAnswer::Invalid
            };
            match answer {
                OracleAnswer::Valid => {
                    found += 1;
                    chosen = Some(candidate);
                }
                OracleAnswer::Invalid => {}
                OracleAnswer::Unresolved => return Err(MatrixError::OracleUnresolved),
            }
        }
        if found != 1 {
            return Err(MatrixError::AmbiguousDep { assignment, found });
        }
        faces.push(face_of(&chosen.expect("found == 1"))?);
    }
    Ok(Chain::from_faces(t.n, t.k, t.dim(), mode, faces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validity;

    fn m(text: &str, n: u32) -> SignedMatrix {
        SignedMatrix::parse(text, n).unwrap()
    }

    fn k2_oracle(a: &SignedMatrix) -> OracleAnswer {
        match validity::is_valid_k2(a) {
            Ok(v) if v.is_valid() => OracleAnswer::Valid,
            Ok(_) => OracleAnswer::Invalid,
            Err(_) => OracleAnswer::Invalid,
        }
    }

    #[test]
    fn face_of_forgets_column_order() {
        let a = m("1 1 ; 2 3", 3);
        let b = m("1 1 ; 3 2", 3);
        let fa = face_of(&a).unwrap();
        let fb = face_of(&b).unwrap();
        assert_eq!(fa, fb);
        assert_eq!(fa.dim(), 1);
    }

    #[test]
    fn face_of_rejects_duplicate_columns() {
        let a = m("1 1 ; 2 2", 2);
        assert!(matches!(face_of(&a), Err(MatrixError::DuplicateColumn(0, 1))));
    }

    #[test]
    fn canonical_form_identifies_rotated_frames() {
        // Example 3.5: [2; -1] and [1; 2] determine the same oriented plane.
        let a = m("2 ; -1", 3);
        let b = m("1 ; 2", 3);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(rotation_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn single_swap_is_not_a_rotation() {
        let a = m("2 ; 1", 3);
        let b = m("1 ; 2", 3);
        assert!(!rotation_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn double_negation_is_a_rotation() {
        let a = m("-1 -1 ; -2 -3", 3);
        let b = m("1 1 ; 2 3", 3);
        assert!(rotation_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let a = m("-3 1 ; 2 -2", 3);
        let c = canonical_form(&a);
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn expand_all_free_signs() {
        let t = ChainTemplate::parse("1 1 ; ~2 ~3", 3).unwrap();
        let chain = expand_template(&t, Mode::Stiefel, k2_oracle).unwrap();
        assert_eq!(chain.faces().len(), 4);
        for text in ["1 1 ; 2 3", "1 1 ; 2 -3", "1 1 ; -2 3", "1 1 ; -2 -3"] {
            let f = face_of(&m(text, 3)).unwrap();
            assert!(chain.faces().contains(&f), "missing {text}");
        }
    }

    #[test]
    fn expand_dep_avoids_row_conflict() {
        let t = ChainTemplate::parse("1 2 ; ~3 !3", 3).unwrap();
        let chain = expand_template(&t, Mode::Stiefel, k2_oracle).unwrap();
        assert_eq!(chain.faces().len(), 2);
        for text in ["1 2 ; 3 3", "1 2 ; -3 -3"] {
            let f = face_of(&m(text, 3)).unwrap();
            assert!(chain.faces().contains(&f), "missing {text}");
        }
    }

    #[test]
    fn expand_dep_avoids_circuits() {
        // The paper's twist example: [1 ±2; ±2 ∓1].
        let t = ChainTemplate::parse("1 ~2 ; ~2 !1", 2).unwrap();
        let chain = expand_template(&t, Mode::Stiefel, k2_oracle).unwrap();
        assert_eq!(chain.faces().len(), 4);
        for text in ["1 2 ; 2 -1", "1 2 ; -2 1", "1 -2 ; 2 1", "1 -2 ; -2 -1"] {
            let f = face_of(&m(text, 2)).unwrap();
            assert!(chain.faces().contains(&f), "missing {text}");
        }
        for text in ["1 2 ; 2 1", "1 -2 ; -2 1", "1 2 ; -2 -1", "1 -2 ; 2 -1"] {
            let f = face_of(&m(text, 2)).unwrap();
            assert!(!chain.faces().contains(&f), "should exclude {text}");
        }
    }

    #[test]
    fn expand_without_free_slots_is_singleton() {
        let t = ChainTemplate::parse("1 1 ; 2 3", 3).unwrap();
        let chain = expand_template(&t, Mode::Stiefel, k2_oracle).unwrap();
        assert_eq!(chain.faces().len(), 1);
    }

    #[test]
    fn template_json_mirror() {
        let t = ChainTemplate::parse("1 1 ; ~2 ~3", 3).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"k":2,"rows":[[{"v":1},{"v":1}],[{"pm":2},{"pm":3}]]}"#
        );
        let back: ChainTemplate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn text_grammar_round_trip() {
        let t = ChainTemplate::parse("1 -1 ; ~2 !3", 3).unwrap();
        assert_eq!(t.to_string(), "1 -1 ; ~2 !3");
    }

    #[test]
    fn orbit_has_at_most_two_canonical_classes() {
        let a = m("1 2 ; 3 -1", 3);
        let mut classes = std::collections::HashSet::new();
        for perm in permutations(2) {
            for mask in 0u32..4 {
                let g = SignedPerm {
                    perm: perm.clone(),
                    negate: (0..2).map(|i| mask & (1 << i) != 0).collect(),
                };
                classes.insert(canonical_form(&g.apply(&a)));
            }
        }
        assert!(classes.len() <= 2);
    }
}
