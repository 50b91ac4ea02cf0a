//! GF(2) chain algebra over faces: the boundary operator, the involution τ
//! that negates the last row, invariant-chain splitting, the inductive index
//! ν, and constructors for the named chains used throughout.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{
    canonical_form, expand_template, face_of, ChainTemplate, Face, MatrixError, OracleAnswer,
    SignedMatrix, Slot,
};
use crate::validity::{self, CertifyOptions, Verdict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain is not invariant under the involution")]
    NotInvariant,
    #[error("chain is not a cycle")]
    NotCycle,
    #[error("boundary of a dimension-zero chain")]
    DimZero,
    #[error("involution fixes the face {0}")]
    FixedFace(String),
    #[error("unknown chain name {0:?}")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Whether faces are taken literally or up to determinant-+1 signed row
/// permutations (the oriented-plane quotient).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Stiefel,
    Grassmann,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Stiefel => write!(f, "stiefel"),
            Mode::Grassmann => write!(f, "grassmann"),
        }
    }
}

/// Reduces a face to its stored representative: identity in Stiefel mode,
/// canonical form in Grassmann mode.
pub fn reduce_face(face: &Face, mode: Mode) -> Face {
    match mode {
        Mode::Stiefel => face.clone(),
        Mode::Grassmann => face_of(&canonical_form(&face.matrix()))
            .expect("row rotations preserve distinct columns"),
    }
}

/// A GF(2) formal sum of faces of one dimension: presence means
/// coefficient 1, addition is symmetric difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    n: u32,
    k: usize,
    dim: usize,
    mode: Mode,
    faces: BTreeSet<Face>,
}

impl Chain {
    pub fn empty(n: u32, k: usize, dim: usize, mode: Mode) -> Chain {
        Chain {
            n,
            k,
            dim,
            mode,
            faces: BTreeSet::new(),
        }
    }

    /// Sums the given faces mod 2, reducing each to its representative
    /// first; in Grassmann mode identified faces cancel automatically.
    pub fn from_faces(
        n: u32,
        k: usize,
        dim: usize,
        mode: Mode,
        faces: impl IntoIterator<Item = Face>,
    ) -> Chain {
        let mut c = Chain::empty(n, k, dim, mode);
        for f in faces {
            c.toggle(f);
        }
        c
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_zero(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.faces.contains(&reduce_face(face, self.mode))
    }

    /// Adds one face mod 2 (after reduction).
    pub fn toggle(&mut self, face: Face) {
        assert_eq!(face.n(), self.n, "face n mismatch");
        assert_eq!(face.k(), self.k, "face k mismatch");
        assert_eq!(face.dim(), self.dim, "face dimension mismatch");
        let f = reduce_face(&face, self.mode);
        if !self.faces.remove(&f) {
            self.faces.insert(f);
        }
    }

    /// GF(2) sum of two chains of the same shape and mode.
    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!((self.n, self.k, self.dim), (other.n, other.k, other.dim));
        assert_eq!(self.mode, other.mode);
        let mut out = self.clone();
        for f in &other.faces {
            out.toggle(f.clone());
        }
        out
    }

    /// One face per line in the matrix text grammar.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            out.push_str(&f.matrix().to_string());
            out.push('\n');
        }
        out
    }
}

/// Parses a chain from one matrix per line; k and dimension are taken from
/// the first line.
pub fn chain_from_text(text: &str, n: u32, mode: Mode) -> Result<Chain, ChainError> {
    let mut faces = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        faces.push(face_of(&SignedMatrix::parse(line, n)?)?);
    }
    let first = faces
        .first()
        .ok_or_else(|| ChainError::BadParams("empty chain".into()))?;
    let (k, dim) = (first.k(), first.dim());
    for f in &faces {
        if f.k() != k || f.dim() != dim {
            return Err(ChainError::BadParams(
                "faces of mixed shape in one chain".into(),
            ));
        }
    }
    Ok(Chain::from_faces(n, k, dim, mode, faces))
}

fn tau_matrix(a: &SignedMatrix) -> SignedMatrix {
    let cols = a.columns().iter().map(|c| c.tau()).collect();
    SignedMatrix::new(a.n(), cols).expect("negating the last row preserves shape")
}

/// The τ-image of a single face, reduced to its stored representative.
pub fn tau_face(f: &Face, mode: Mode) -> Face {
    let image = face_of(&tau_matrix(&f.matrix())).expect("tau preserves distinct columns");
    reduce_face(&image, mode)
}

/// Negates the last entry of every column of every face.
pub fn tau(c: &Chain) -> Chain {
    Chain::from_faces(
        c.n(),
        c.k(),
        c.dim(),
        c.mode(),
        c.faces().iter().map(|f| tau_face(f, c.mode())),
    )
}

/// Sum over faces of all column-deleted subfaces, mod 2.
pub fn boundary(c: &Chain) -> Result<Chain, ChainError> {
    if c.dim() == 0 {
        return Err(ChainError::DimZero);
    }
    let mut out = Chain::empty(c.n(), c.k(), c.dim() - 1, c.mode());
    for f in c.faces() {
        let a = f.matrix();
        for j in 0..a.num_cols() {
            let sub = face_of(&a.without_column(j))?;
            out.toggle(sub);
        }
    }
    Ok(out)
}

/// One half of an invariant chain: c = d + τ(d) with d and τ(d) disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub d: Chain,
}

/// Splits an invariant chain with the deterministic choice: the
/// lexicographically smaller member of each τ-orbit goes into d.
pub fn split_invariant(c: &Chain) -> Result<Splitting, ChainError> {
    split_invariant_with(c, &mut |_, _| true)
}

/// Splits with a caller-supplied orbit-representative choice; `pick` receives
/// each orbit as (smaller, larger) and returns true to put the smaller member
/// in d. Used to test that ν does not depend on the splitting.
pub fn split_invariant_with(
    c: &Chain,
    pick: &mut impl FnMut(&Face, &Face) -> bool,
) -> Result<Splitting, ChainError> {
    let mut d = Chain::empty(c.n(), c.k(), c.dim(), c.mode());
    let mut seen: BTreeSet<Face> = BTreeSet::new();
    for f in c.faces() {
        if seen.contains(f) {
            continue;
        }
        let tf = tau_face(f, c.mode());
        if &tf == f {
            return Err(ChainError::FixedFace(f.matrix().to_string()));
        }
        if !c.faces().contains(&tf) {
            return Err(ChainError::NotInvariant);
        }
        let keep = if pick(f, &tf) { f.clone() } else { tf.clone() };
        d.toggle(keep);
        seen.insert(f.clone());
        seen.insert(tf);
    }
    Ok(Splitting { d })
}

fn nu_with(c: &Chain, pick: &mut impl FnMut(&Face, &Face) -> bool) -> Result<u8, ChainError> {
    if c.is_zero() {
        return Ok(0);
    }
    let d = split_invariant_with(c, pick)?.d;
    if c.dim() == 0 {
        return Ok((d.len() % 2) as u8);
    }
    nu_with(&boundary(&d)?, pick)
}

/// The inductive index ν of an invariant cycle: the parity of |d| in
/// dimension zero, otherwise ν(∂d) for a splitting c = d + τ(d).
pub fn yang_index_of_chain(c: &Chain) -> Result<u8, ChainError> {
    yang_index_with_splitting(c, &mut |_, _| true)
}

/// ν computed with a custom orbit-representative choice at every level of
/// the recursion; the result must not depend on it.
pub fn yang_index_with_splitting(
    c: &Chain,
    pick: &mut impl FnMut(&Face, &Face) -> bool,
) -> Result<u8, ChainError> {
    if tau(c) != *c {
        return Err(ChainError::NotInvariant);
    }
    if c.dim() >= 1 && !boundary(c)?.is_zero() {
        return Err(ChainError::NotCycle);
    }
    nu_with(c, pick)
}

/// The default validity oracle for template expansion, dispatching on k.
pub fn validity_oracle(a: &SignedMatrix) -> OracleAnswer {
    match validity::decide_validity(a, CertifyOptions::default()) {
        Ok(Verdict::Valid(_)) => OracleAnswer::Valid,
        Ok(Verdict::Invalid(_)) => OracleAnswer::Invalid,
        Ok(Verdict::Unresolved { .. }) => OracleAnswer::Unresolved,
        Err(_) => OracleAnswer::Invalid,
    }
}

fn fixed1(count: usize) -> Vec<Slot> {
    vec![Slot::fixed(1); count]
}

fn template(n: u32, row1: Vec<Slot>, row2: Vec<Slot>) -> Result<ChainTemplate, ChainError> {
    Ok(ChainTemplate::new(n, vec![row1, row2])?)
}

/// The τ-invariant chain of k×(n−k+1) matrices whose first k−1 rows are
/// constant and whose last row carries every sign pattern on k..n.
fn named_top_chain(n: u32, k: usize) -> Result<Vec<ChainTemplate>, ChainError> {
    if k == 0 || k as u32 > n {
        return Err(ChainError::BadParams(format!(
            "need 1 <= k <= n, got n={n} k={k}"
        )));
    }
    let cols = n as usize - k + 1;
    let mut rows: Vec<Vec<Slot>> = (1..k).map(|i| vec![Slot::fixed(i as i32); cols]).collect();
    rows.push((k as u32..=n).map(Slot::free).collect());
    Ok(vec![ChainTemplate::new(n, rows)?])
}

/// The pair of 2×3 templates whose sixteen matrices represent the
/// fundamental class of the quotient at (n,k) = (3,2).
fn named_g32_chain() -> Result<Vec<ChainTemplate>, ChainError> {
    Ok(vec![
        ChainTemplate::parse("1 1 ~2 ; ~2 ~3 !3", 3)?,
        ChainTemplate::parse("1 ~2 !2 ; ~2 !1 ~3", 3)?,
    ])
}

fn check_odd_params(name: &str, n: u32, k: usize, min_n: u32) -> Result<(), ChainError> {
    if k != 2 {
        return Err(ChainError::BadParams(format!("{name} requires k = 2")));
    }
    if n < min_n || n % 2 == 0 {
        return Err(ChainError::BadParams(format!(
            "{name} requires odd n >= {min_n}, got n={n}"
        )));
    }
    Ok(())
}

/// The invariant 2×n cycle of the quotient for odd n: the sum of n+1
/// template summands, one per pivot position plus four closing terms.
fn named_quotient_cycle(n: u32, k: usize) -> Result<Vec<ChainTemplate>, ChainError> {
    check_odd_params("thm1.3_c", n, k, 3)?;
    if n == 3 {
        // The n = 3 instance is the sixteen-matrix fundamental-class chain.
        return named_g32_chain();
    }
    let nn = n as usize;
    let mut out = Vec::with_capacity(nn + 1);
    for i in 3..=nn - 1 {
        let mut row1 = fixed1(i);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - i - 1]);
        let mut row2: Vec<Slot> = (2..=i as u32).map(Slot::free).collect();
        row2.push(Slot::free(n));
        row2.push(Slot::dep(i as u32));
        row2.extend((i as u32 + 1..=n - 1).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(2);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::free(2), Slot::free(n), Slot::dep(1)];
        row2.extend((3..n).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(2);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::dep(n - 1), Slot::free(n), Slot::free(1)];
        row2.extend((3..n).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(2);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::free(n - 1), Slot::dep(n), Slot::free(1)];
        row2.extend((3..=n - 2).map(Slot::free));
        row2.push(Slot::free(n));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(1);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 2]);
        let mut row2 = vec![Slot::dep(n - 1), Slot::free(1)];
        row2.extend((3..=n).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    Ok(out)
}

/// One admissible half d of the quotient cycle: the last-row n entries are
/// pinned positive, so d and τ(d) partition the cycle.
fn named_quotient_half(n: u32, k: usize) -> Result<Vec<ChainTemplate>, ChainError> {
    check_odd_params("thm1.3_d", n, k, 5)?;
    let nn = n as usize;
    let mut out = Vec::with_capacity(nn + 1);
    for i in 3..=nn - 1 {
        let mut row1 = fixed1(i);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - i - 1]);
        let mut row2: Vec<Slot> = (2..i as u32).map(Slot::free).collect();
        row2.push(Slot::dep(i as u32));
        row2.push(Slot::fixed(n as i32));
        row2.push(Slot::free(i as u32));
        row2.extend((i as u32 + 1..=n - 1).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(2);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::free(2), Slot::fixed(n as i32), Slot::dep(1)];
        row2.extend((3..n).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(2);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::dep(n - 1), Slot::fixed(n as i32), Slot::free(1)];
        row2.extend((3..n).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(2);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::free(n - 1), Slot::fixed(n as i32), Slot::free(1)];
        row2.extend((3..=n - 2).map(Slot::free));
        row2.push(Slot::fixed(n as i32));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(1);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 2]);
        let mut row2 = vec![Slot::dep(n - 1), Slot::free(1)];
        row2.extend((3..n).map(Slot::free));
        row2.push(Slot::fixed(n as i32));
        out.push(template(n, row1, row2)?);
    }
    Ok(out)
}

/// The boundary of the half-chain, written out: n−2 pivot summands plus two
/// closing terms, each with n−1 columns.
fn named_quotient_half_boundary(n: u32, k: usize) -> Result<Vec<ChainTemplate>, ChainError> {
    check_odd_params("thm1.3_bd", n, k, 5)?;
    let nn = n as usize;
    let mut out = Vec::with_capacity(nn - 1);
    for i in 3..=nn - 1 {
        let mut row1 = fixed1(i - 1);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - i - 1]);
        let mut row2: Vec<Slot> = (2..i as u32).map(Slot::free).collect();
        row2.push(Slot::dep(i as u32));
        row2.push(Slot::free(i as u32));
        row2.extend((i as u32 + 1..=n - 1).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = fixed1(1);
        row1.push(Slot::free(2));
        row1.extend(vec![Slot::dep(2); nn - 3]);
        let mut row2 = vec![Slot::free(2), Slot::dep(1)];
        row2.extend((3..n).map(Slot::free));
        out.push(template(n, row1, row2)?);
    }
    {
        let mut row1 = vec![Slot::free(2)];
        row1.extend(vec![Slot::dep(2); nn - 2]);
        let mut row2 = vec![Slot::free(1)];
        row2.extend((3..n).map(Slot::free));
        row2.push(Slot::fixed(n as i32));
        out.push(template(n, row1, row2)?);
    }
    Ok(out)
}

/// Looks up a named chain and returns its template summands.
pub fn build_named_chain(name: &str, n: u32, k: usize) -> Result<Vec<ChainTemplate>, ChainError> {
    match name {
        "thm1.1" => named_top_chain(n, k),
        "thm1.3_c" => named_quotient_cycle(n, k),
        "thm1.3_d" => named_quotient_half(n, k),
        "thm1.3_bd" => named_quotient_half_boundary(n, k),
        "example_g32" => {
            if n != 3 || k != 2 {
                return Err(ChainError::BadParams(
                    "example_g32 requires (n,k) = (3,2)".into(),
                ));
            }
            named_g32_chain()
        }
        other => Err(ChainError::UnknownName(other.to_string())),
    }
}

/// Expands every summand of a named chain and sums them mod 2.
pub fn expand_named(name: &str, n: u32, k: usize, mode: Mode) -> Result<Chain, ChainError> {
    let templates = build_named_chain(name, n, k)?;
    let mut total: Option<Chain> = None;
    for t in &templates {
        let part = expand_template(t, mode, validity_oracle)?;
        total = Some(match total {
            None => part,
            Some(acc) => acc.add(&part),
        });
    }
    total.ok_or_else(|| ChainError::BadParams("no summands".into()))
}
