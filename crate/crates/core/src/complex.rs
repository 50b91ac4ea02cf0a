//! Enumeration of the complexes of valid faces, invariant cycle spaces over
//! GF(2), and index lower bounds computed from them.
//!
//! Faces are enumerated dimension by dimension in the Stiefel complex
//! (columns ordered, each face extended only by columns greater than its
//! maximum) and reduced to canonical classes afterwards in Grassmann mode.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::chain::{
    self, boundary, reduce_face, split_invariant, tau, tau_face, yang_index_of_chain, Chain,
    ChainError, Mode,
};
use crate::matrix::{
    expand_template, face_of, ChainTemplate, Column, Face, MatrixError, SignedIndex, SignedMatrix,
};
use crate::validity::{self, CertifyOptions, Verdict};

/// Bumped whenever the validity engine changes in a way that could alter
/// enumeration results; part of the cache key.
pub const ENGINE_VERSION: &str = "k2-circuits+bernstein-1";

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("face budget exceeded: {have} faces at dimension {dim}, budget {budget}")]
    BudgetExceeded {
        dim: usize,
        have: usize,
        budget: usize,
    },
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache format: {0}")]
    CacheFormat(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// All valid faces up to a dimension cap, closed under subfaces and τ.
#[derive(Debug, Clone)]
pub struct ValidComplex {
    n: u32,
    k: usize,
    mode: Mode,
    max_dim: usize,
    faces_by_dim: Vec<BTreeSet<Face>>,
    unresolved_by_dim: Vec<usize>,
}

impl ValidComplex {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn faces(&self, dim: usize) -> &BTreeSet<Face> {
        &self.faces_by_dim[dim]
    }

    /// Candidates the validity engine could not decide, per dimension;
    /// they are excluded from the complex.
    pub fn unresolved(&self) -> &[usize] {
        &self.unresolved_by_dim
    }

    /// Structural audit: closure under subfaces and under τ.
    pub fn audit(&self) -> bool {
        for m in 1..=self.max_dim {
            for f in &self.faces_by_dim[m] {
                let a = f.matrix();
                for j in 0..a.num_cols() {
                    let sub = reduce_face(&face_of(&a.without_column(j)).unwrap(), self.mode);
                    if !self.faces_by_dim[m - 1].contains(&sub) {
                        return false;
                    }
                }
            }
        }
        for m in 0..=self.max_dim {
            for f in &self.faces_by_dim[m] {
                if !self.faces_by_dim[m].contains(&tau_face(f, self.mode)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Search limits for enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub certify: CertifyOptions,
    /// Cap on the face count of any single dimension.
    pub face_budget: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            certify: CertifyOptions::default(),
            face_budget: None,
        }
    }
}

/// All signed columns of height k over {±1,…,±n} with distinct magnitudes,
/// in sorted order.
fn all_columns(n: u32, k: usize) -> Vec<Column> {
    let mut out = Vec::new();
    let mut entries: Vec<SignedIndex> = Vec::with_capacity(k);
    fn rec(n: u32, k: usize, entries: &mut Vec<SignedIndex>, out: &mut Vec<Column>) {
        if entries.len() == k {
            out.push(Column(entries.clone()));
            return;
        }
        for mag in 1..=n {
            if entries.iter().any(|e| e.magnitude() == mag) {
                continue;
            }
            for neg in [false, true] {
                entries.push(SignedIndex::with_sign(mag, neg));
                rec(n, k, entries, out);
                entries.pop();
            }
        }
    }
    rec(n, k, &mut entries, &mut out);
    out.sort();
    out
}

fn matrix_of(n: u32, cols: &[Column]) -> SignedMatrix {
    SignedMatrix::new(n, cols.to_vec()).expect("enumeration builds well-formed matrices")
}

/// True, false, or undecided within budget.
fn accept(a: &SignedMatrix, opts: &EnumerateOptions) -> Option<bool> {
    match validity::decide_validity(a, opts.certify) {
        Ok(Verdict::Valid(_)) => Some(true),
        Ok(Verdict::Invalid(_)) => Some(false),
        Ok(Verdict::Unresolved { .. }) => None,
        Err(_) => Some(false),
    }
}

/// Enumerates every valid face of dimension ≤ max_dim.
pub fn enumerate_valid_faces(n: u32, k: usize, max_dim: usize, mode: Mode) -> ValidComplex {
    enumerate_valid_faces_with(n, k, max_dim, mode, EnumerateOptions::default())
        .expect("no budget set")
}

pub fn enumerate_valid_faces_with(
    n: u32,
    k: usize,
    max_dim: usize,
    mode: Mode,
    opts: EnumerateOptions,
) -> Result<ValidComplex, ComplexError> {
    assert!(k >= 1 && k as u32 <= n, "need 1 <= k <= n");
    let columns = all_columns(n, k);
    // Stiefel-level enumeration: faces as sorted column lists, each extended
    // only by strictly larger columns so every face is generated once.
    let mut by_dim: Vec<Vec<Vec<Column>>> = Vec::with_capacity(max_dim + 1);
    let mut unresolved_by_dim = vec![0usize; max_dim + 1];

    let vertices: Vec<Vec<Column>> = columns.iter().map(|c| vec![c.clone()]).collect();
    by_dim.push(vertices);

    for m in 1..=max_dim {
        let prev: BTreeSet<&[Column]> = by_dim[m - 1].iter().map(|f| f.as_slice()).collect();
        let mut next: Vec<Vec<Column>> = Vec::new();
        for base in &by_dim[m - 1] {
            let last = base.last().expect("faces are nonempty");
            for col in columns.iter().filter(|c| *c > last) {
                let mut cand = base.clone();
                cand.push(col.clone());
                // Heredity pruning: all subfaces must already be present.
                let hereditary = (0..cand.len() - 1).all(|drop| {
                    let sub: Vec<Column> = cand
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, c)| c.clone())
                        .collect();
                    prev.contains(sub.as_slice())
                });
                if !hereditary {
                    continue;
                }
                match accept(&matrix_of(n, &cand), &opts) {
                    Some(true) => next.push(cand),
                    Some(false) => {}
                    None => unresolved_by_dim[m] += 1,
                }
            }
        }
        if let Some(budget) = opts.face_budget {
            if next.len() > budget {
                return Err(ComplexError::BudgetExceeded {
                    dim: m,
                    have: next.len(),
                    budget,
                });
            }
        }
        by_dim.push(next);
    }

    let faces_by_dim: Vec<BTreeSet<Face>> = by_dim
        .iter()
        .map(|faces| {
            faces
                .iter()
                .map(|cols| {
                    let f = face_of(&matrix_of(n, cols)).expect("distinct columns by construction");
                    reduce_face(&f, mode)
                })
                .collect()
        })
        .collect();

    Ok(ValidComplex {
        n,
        k,
        mode,
        max_dim,
        faces_by_dim,
        unresolved_by_dim,
    })
}

/// Basis of the τ-invariant cycle space Z_m over GF(2).
#[derive(Debug, Clone)]
pub struct InvariantCycleBasis {
    pub dim: usize,
    pub chains: Vec<Chain>,
}

/// One face per τ-orbit, paired with its image.
fn orbits(complex: &ValidComplex, m: usize) -> Vec<(Face, Face)> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<Face> = BTreeSet::new();
    for f in complex.faces(m) {
        if seen.contains(f) {
            continue;
        }
        let tf = tau_face(f, complex.mode());
        assert!(
            tf != *f,
            "the involution fixes the face {}; the quotient is not free here",
            f.matrix()
        );
        seen.insert(f.clone());
        seen.insert(tf.clone());
        out.push((f.clone(), tf));
    }
    out
}

/// Kernel basis of a GF(2) matrix given as rows of column-index sets.
fn gf2_kernel(cols: usize, rows: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let words = cols.div_ceil(64);
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for &j in r {
                bits[j / 64] |= 1 << (j % 64);
            }
            bits
        })
        .collect();
    let get = |row: &[u64], j: usize| row[j / 64] >> (j % 64) & 1 == 1;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for j in 0..cols {
        let Some(p) = (rank..mat.len()).find(|&r| get(&mat[r], j)) else {
            continue;
        };
        mat.swap(rank, p);
        let pivot_row = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != rank && get(row, j) {
                for (w, pw) in row.iter_mut().zip(&pivot_row) {
                    *w ^= pw;
                }
            }
        }
        pivot_of_col[j] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for j in 0..cols {
        if pivot_of_col[j].is_some() {
            continue;
        }
        // Free column j: x_j = 1, pivot columns take the entries of column j.
        let mut support = vec![j];
        for (jc, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                if get(&mat[*r], j) {
                    support.push(jc);
                }
            }
        }
        support.sort_unstable();
        basis.push(support);
    }
    basis
}

/// Computes a basis of the space of invariant m-cycles: one GF(2) generator
/// per τ-orbit of m-faces, boundary matrix into the (m−1)-orbit space,
/// kernel by bitset elimination.
pub fn invariant_cycle_basis(complex: &ValidComplex, m: usize) -> InvariantCycleBasis {
    assert!(m <= complex.max_dim());
    let gens = orbits(complex, m);
    let gen_chain = |support: &[usize]| {
        let faces = support
            .iter()
            .flat_map(|&g| [gens[g].0.clone(), gens[g].1.clone()]);
        Chain::from_faces(complex.n(), complex.k(), m, complex.mode(), faces)
    };
    if m == 0 {
        let chains = (0..gens.len()).map(|g| gen_chain(&[g])).collect();
        return InvariantCycleBasis { dim: 0, chains };
    }
    let lower = orbits(complex, m - 1);
    let lower_index: BTreeMap<&Face, usize> = lower
        .iter()
        .enumerate()
        .flat_map(|(i, (f, tf))| [(f, i), (tf, i)])
        .collect();
    // Row r of the boundary matrix lists the generators whose boundary hits
    // the r-th lower orbit.
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); lower.len()];
    for (g, _) in gens.iter().enumerate() {
        let b = boundary(&gen_chain(&[g])).expect("m >= 1");
        let mut orbit_hits: BTreeMap<usize, usize> = BTreeMap::new();
        for f in b.faces() {
            let r = *lower_index
                .get(f)
                .expect("boundary faces are in the complex by closure");
            *orbit_hits.entry(r).or_insert(0) += 1;
        }
        for (r, count) in orbit_hits {
            // An invariant chain hits a full orbit an even number of times
            // per orbit-coefficient; odd pair-count means coefficient 1.
            if (count / 2) % 2 == 1 {
                rows[r].insert(g);
            }
        }
    }
    let chains = gf2_kernel(gens.len(), &rows)
        .into_iter()
        .map(|support| gen_chain(&support))
        .collect();
    InvariantCycleBasis { dim: m, chains }
}

/// Outcome of the top-dimension scan.
#[derive(Debug, Clone)]
pub struct YangIndexReport {
    /// Largest dimension carrying an invariant cycle with ν = 1, if any.
    pub index: Option<usize>,
    pub witness: Option<Chain>,
    /// Whether any candidate face was undecided (the bound is then only
    /// valid for the enumerated subcomplex).
    pub unresolved: usize,
}

/// Scans dimensions from the top down for an invariant cycle with ν = 1.
pub fn yang_index_of_complex(complex: &ValidComplex) -> YangIndexReport {
    let unresolved = complex.unresolved().iter().sum();
    for m in (0..=complex.max_dim()).rev() {
        let basis = invariant_cycle_basis(complex, m);
        for c in basis.chains {
            if yang_index_of_chain(&c) == Ok(1) {
                return YangIndexReport {
                    index: Some(m),
                    witness: Some(c),
                    unresolved,
                };
            }
        }
    }
    YangIndexReport {
        index: None,
        witness: None,
        unresolved,
    }
}

/// Pass/fail record for one chain: validity of every face, invariance,
/// vanishing boundary, and ν when the first three hold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainReport {
    pub n: u32,
    pub k: usize,
    pub dim: usize,
    pub mode: Mode,
    pub faces: usize,
    pub invalid_faces: Vec<String>,
    pub unresolved_faces: Vec<String>,
    pub tau_invariant: bool,
    pub boundary_zero: bool,
    pub nu: Option<u8>,
    pub pass: bool,
}

/// Verifies a chain end to end; ν is computed only if every face is valid,
/// the chain is invariant, and its boundary vanishes.
pub fn verify_chain_report(c: &Chain, certify: CertifyOptions) -> ChainReport {
    let mut invalid = Vec::new();
    let mut unresolved = Vec::new();
    for f in c.faces() {
        match validity::decide_validity(&f.matrix(), certify) {
            Ok(Verdict::Valid(_)) => {}
            Ok(Verdict::Invalid(_)) | Err(_) => invalid.push(f.matrix().to_string()),
            Ok(Verdict::Unresolved { .. }) => unresolved.push(f.matrix().to_string()),
        }
    }
    let tau_invariant = tau(c) == *c;
    let boundary_zero = if c.dim() == 0 {
        true
    } else {
        boundary(c).map(|b| b.is_zero()).unwrap_or(false)
    };
    let nu = if invalid.is_empty() && unresolved.is_empty() && tau_invariant && boundary_zero {
        yang_index_of_chain(c).ok()
    } else {
        None
    };
    let pass = nu.is_some();
    ChainReport {
        n: c.n(),
        k: c.k(),
        dim: c.dim(),
        mode: c.mode(),
        faces: c.len(),
        invalid_faces: invalid,
        unresolved_faces: unresolved,
        tau_invariant,
        boundary_zero,
        nu,
        pass,
    }
}

/// Expands a template (with the standard oracle) and verifies the result.
pub fn verify_template_report(
    t: &ChainTemplate,
    mode: Mode,
    certify: CertifyOptions,
) -> Result<ChainReport, ComplexError> {
    let c = expand_template(t, mode, chain::validity_oracle)?;
    Ok(verify_chain_report(&c, certify))
}

/// Default cache directory: $YANG_CACHE_DIR, else the platform cache dir
/// plus `yang-index-lab`.
pub fn default_cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("YANG_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    let base = std::env::var("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .unwrap_or_else(|_| {
            let home = std::env::var("HOME").unwrap_or_else(|_| ".".into());
            Path::new(&home).join(".cache")
        });
    base.join("yang-index-lab")
}

fn cache_file(dir: &Path, n: u32, k: usize, m: usize, mode: Mode) -> PathBuf {
    dir.join(format!("faces_n{n}_k{k}_m{m}_{mode}_{ENGINE_VERSION}.jsonl"))
}

fn save_dim(
    dir: &Path,
    complex: &ValidComplex,
    m: usize,
) -> Result<(), ComplexError> {
    fs::create_dir_all(dir)?;
    let mut out = String::new();
    let header = json!({
        "n": complex.n(),
        "k": complex.k(),
        "m": m,
        "mode": complex.mode().to_string(),
        "engine": ENGINE_VERSION,
        "unresolved": complex.unresolved()[m],
    });
    out.push_str(&header.to_string());
    out.push('\n');
    for f in complex.faces(m) {
        out.push_str(&json!(f.matrix().to_string()).to_string());
        out.push('\n');
    }
    fs::write(cache_file(dir, complex.n(), complex.k(), m, complex.mode()), out)?;
    Ok(())
}

fn load_dim(
    dir: &Path,
    n: u32,
    k: usize,
    m: usize,
    mode: Mode,
) -> Result<Option<(BTreeSet<Face>, usize)>, ComplexError> {
    let path = cache_file(dir, n, k, m, mode);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(
        lines
            .next()
            .ok_or_else(|| ComplexError::CacheFormat("empty cache file".into()))?,
    )
    .map_err(|e| ComplexError::CacheFormat(e.to_string()))?;
    if header["n"] != json!(n)
        || header["k"] != json!(k)
        || header["m"] != json!(m)
        || header["mode"] != json!(mode.to_string())
        || header["engine"] != json!(ENGINE_VERSION)
    {
        return Err(ComplexError::CacheFormat("header mismatch".into()));
    }
    let unresolved = header["unresolved"].as_u64().unwrap_or(0) as usize;
    let mut faces = BTreeSet::new();
    for line in lines {
        let text: String =
            serde_json::from_str(line).map_err(|e| ComplexError::CacheFormat(e.to_string()))?;
        faces.insert(face_of(&SignedMatrix::parse(&text, n)?)?);
    }
    Ok(Some((faces, unresolved)))
}

/// Like [`enumerate_valid_faces_with`], but reads every dimension from the
/// cache when present and writes back what it computes.
pub fn enumerate_cached(
    n: u32,
    k: usize,
    max_dim: usize,
    mode: Mode,
    opts: EnumerateOptions,
    cache_dir: Option<&Path>,
) -> Result<ValidComplex, ComplexError> {
    if let Some(dir) = cache_dir {
        let mut faces_by_dim = Vec::with_capacity(max_dim + 1);
        let mut unresolved_by_dim = Vec::with_capacity(max_dim + 1);
        let mut complete = true;
        for m in 0..=max_dim {
            match load_dim(dir, n, k, m, mode)? {
                Some((faces, unresolved)) => {
                    faces_by_dim.push(faces);
                    unresolved_by_dim.push(unresolved);
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return Ok(ValidComplex {
                n,
                k,
                mode,
                max_dim,
                faces_by_dim,
                unresolved_by_dim,
            });
        }
        let complex = enumerate_valid_faces_with(n, k, max_dim, mode, opts)?;
        for m in 0..=max_dim {
            save_dim(dir, &complex, m)?;
        }
        return Ok(complex);
    }
    enumerate_valid_faces_with(n, k, max_dim, mode, opts)
}

/// Splits an invariant cycle and reports nothing beyond what the chains
/// module exposes; re-exported here for callers that have a complex in hand.
pub fn check_invariant_cycle(c: &Chain) -> Result<(), ChainError> {
    split_invariant(c)?;
    if c.dim() >= 1 && !boundary(c)?.is_zero() {
        return Err(ChainError::NotCycle);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedral_circle() {
        let c = enumerate_valid_faces(2, 1, 1, Mode::Stiefel);
        assert_eq!(c.faces(0).len(), 4);
        assert_eq!(c.faces(1).len(), 4);
        assert!(c.audit());
        let basis = invariant_cycle_basis(&c, 1);
        assert_eq!(basis.chains.len(), 1);
        assert_eq!(basis.chains[0].len(), 4);
        let report = yang_index_of_complex(&c);
        assert_eq!(report.index, Some(1));
    }

    #[test]
    fn vertex_count_n3_k2() {
        let c = enumerate_valid_faces(3, 2, 0, Mode::Stiefel);
        assert_eq!(c.faces(0).len(), 24);
    }

    #[test]
    fn cross_polytope_face_counts() {
        // (n,1): C(n, m+1) * 2^(m+1) faces of dimension m.
        let c = enumerate_valid_faces(3, 1, 2, Mode::Stiefel);
        assert_eq!(c.faces(0).len(), 6);
        assert_eq!(c.faces(1).len(), 12);
        assert_eq!(c.faces(2).len(), 8);
        assert!(c.audit());
    }

    #[test]
    fn sphere_index_n3() {
        let c = enumerate_valid_faces(3, 1, 2, Mode::Stiefel);
        let report = yang_index_of_complex(&c);
        assert_eq!(report.index, Some(2));
    }

    #[test]
    fn dim_zero_basis_spans_all_orbits() {
        let c = enumerate_valid_faces(2, 1, 1, Mode::Stiefel);
        let basis = invariant_cycle_basis(&c, 0);
        assert_eq!(basis.chains.len(), 2);
    }

    #[test]
    fn orbit_count_is_half_the_faces_in_stiefel_mode() {
        let c = enumerate_valid_faces(3, 2, 1, Mode::Stiefel);
        for m in 0..=1 {
            assert_eq!(orbits(&c, m).len() * 2, c.faces(m).len());
        }
    }

    #[test]
    fn report_for_the_top_chain() {
        let c = chain::expand_named("thm1.1", 4, 2, Mode::Stiefel).unwrap();
        let report = verify_chain_report(&c, CertifyOptions::default());
        assert!(report.pass);
        assert_eq!(report.nu, Some(1));
        assert!(report.tau_invariant && report.boundary_zero);
    }

    #[test]
    fn report_flags_a_boundary_failure() {
        let ts = chain::build_named_chain("thm1.3_c", 5, 2).unwrap();
        let mut total: Option<Chain> = None;
        for t in &ts {
            let part = expand_template(t, Mode::Stiefel, chain::validity_oracle).unwrap();
            total = Some(match total {
                None => part,
                Some(acc) => acc.add(&part),
            });
        }
        let report = verify_chain_report(&total.unwrap(), CertifyOptions::default());
        assert!(!report.pass);
        assert!(!report.boundary_zero);
        assert!(report.invalid_faces.is_empty());
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("yang-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let opts = EnumerateOptions::default();
        let a = enumerate_cached(2, 1, 1, Mode::Stiefel, opts, Some(&dir)).unwrap();
        let b = enumerate_cached(2, 1, 1, Mode::Stiefel, opts, Some(&dir)).unwrap();
        assert_eq!(a.faces(1), b.faces(1));
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = EnumerateOptions {
            face_budget: Some(3),
            ..Default::default()
        };
        let err = enumerate_valid_faces_with(3, 1, 2, Mode::Stiefel, opts).unwrap_err();
        assert!(matches!(err, ComplexError::BudgetExceeded { .. }));
    }
}
