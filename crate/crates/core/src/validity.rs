//! Deciding validity of signed matrices.
//!
//! For k = 2 validity has an exact combinatorial characterization: a matrix
//! with distinct columns is invalid iff some row contains a number and its
//! negative, or it contains a circuit or anti-circuit. For general k we
//! certify the positive side by showing the Gram determinant polynomial is
//! strictly positive on the simplex (Bernstein coefficients under simplex
//! bisection) and the negative side by an exact rational point witness
//! (b, t) with M(A,b)·t = 0. A third verdict, `Unresolved`, is reported when
//! neither certificate is found within budget; no floating point ever enters
//! a verdict.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::lp;
use crate::matrix::SignedMatrix;
use crate::poly::{rat_frac, BernsteinNet, MPoly, NetStatus, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidityError {
    #[error("operation requires k = 2, got k = {0}")]
    WrongK(usize),
    #[error("matrix has duplicate columns")]
    DuplicateColumn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitKind {
    Circuit,
    AntiCircuit,
}

/// Distinct rows (i0, i1) and distinct columns j1,...,jp with
/// a[i1][j_a] = ±a[i0][j_{a+1}] cyclically (+ for a circuit, - for an
/// anti-circuit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitWitness {
    pub rows: (usize, usize),
    pub cols: Vec<usize>,
    pub kind: CircuitKind,
}

impl CircuitWitness {
    pub fn length(&self) -> usize {
        self.cols.len()
    }
}

/// Exact rationals b and t with M(A,b)·t = 0 and t in the standard simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointWitness {
    pub b: Vec<Rat>,
    pub t: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidWitness {
    /// Row `row` contains both `magnitude` and its negative.
    RowPair { row: usize, magnitude: u32 },
    Circuit(CircuitWitness),
    Point(PointWitness),
}

/// Summary of a successful Bernstein positivity certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinCert {
    pub cells: usize,
    pub depth: u32,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid(Option<BernsteinCert>),
    Invalid(InvalidWitness),
    Unresolved { depth: u32 },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid(_))
    }

    pub fn is_unresolved(&self) -> bool {
        matches!(self, Verdict::Unresolved { .. })
    }
}

/// Search budgets for the general-k decision procedure.
#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub max_depth: u32,
    pub b_samples: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            max_depth: 12,
            b_samples: 512,
        }
    }
}

/// Scans each row for a magnitude appearing with both signs.
pub fn row_with_opposite_pair(a: &SignedMatrix) -> Option<(usize, u32)> {
    for i in 0..a.k() {
        for j1 in 0..a.num_cols() {
            for j2 in j1 + 1..a.num_cols() {
                let e1 = a.entry(i, j1);
                let e2 = a.entry(i, j2);
                if e1 == e2.negated() {
                    return Some((i, e1.magnitude()));
                }
            }
        }
    }
    None
}

/// Exhaustive search for a circuit or anti-circuit over all row pairs.
pub fn find_circuit(a: &SignedMatrix, kind: CircuitKind) -> Option<CircuitWitness> {
    for i0 in 0..a.k() {
        for i1 in 0..a.k() {
            if i0 == i1 {
                continue;
            }
            if let Some(cols) = find_cycle(a, i0, i1, kind) {
                return Some(CircuitWitness {
                    rows: (i0, i1),
                    cols,
                    kind,
                });
            }
        }
    }
    None
}

/// Directed cycle in the graph on columns with an edge u -> v whenever
/// a[i1][u] = ±a[i0][v].
fn find_cycle(a: &SignedMatrix, i0: usize, i1: usize, kind: CircuitKind) -> Option<Vec<usize>> {
    let m1 = a.num_cols();
    let edge = |u: usize, v: usize| -> bool {
        let lhs = a.entry(i1, u);
        let rhs = a.entry(i0, v);
        match kind {
            CircuitKind::Circuit => lhs == rhs,
            CircuitKind::AntiCircuit => lhs == rhs.negated(),
        }
    };
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; m1];
    let mut stack: Vec<usize> = Vec::new();

    fn dfs(
        u: usize,
        edge: &impl Fn(usize, usize) -> bool,
        color: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        color[u] = 1;
        stack.push(u);
        for v in 0..color.len() {
            if !edge(u, v) {
                continue;
            }
            if color[v] == 1 {
                let start = stack.iter().position(|&x| x == v).expect("on stack");
                return Some(stack[start..].to_vec());
            }
            if color[v] == 0 {
                if let Some(cycle) = dfs(v, edge, color, stack) {
                    return Some(cycle);
                }
            }
        }
        stack.pop();
        color[u] = 2;
        None
    }

    for start in 0..m1 {
        if color[start] == 0 {
            if let Some(cycle) = dfs(start, &edge, &mut color, &mut stack) {
                return Some(cycle);
            }
        }
    }
    None
}

/// The exact combinatorial validity test for k = 2.
pub fn is_valid_k2(a: &SignedMatrix) -> Result<Verdict, ValidityError> {
    if a.k() != 2 {
        return Err(ValidityError::WrongK(a.k()));
    }
    if !a.has_distinct_columns() {
        return Err(ValidityError::DuplicateColumn);
    }
    if let Some((row, magnitude)) = row_with_opposite_pair(a) {
        return Ok(Verdict::Invalid(InvalidWitness::RowPair { row, magnitude }));
    }
    for kind in [CircuitKind::Circuit, CircuitKind::AntiCircuit] {
        if let Some(w) = find_circuit(a, kind) {
            return Ok(Verdict::Invalid(InvalidWitness::Circuit(w)));
        }
    }
    Ok(Verdict::Valid(None))
}

/// Sound-but-incomplete invalidity filter for k >= 2: a row-pair scan plus
/// the k = 2 circuit tests on every pair of rows.
pub fn invalid_submatrix_filter(a: &SignedMatrix) -> Option<Verdict> {
    if let Some((row, magnitude)) = row_with_opposite_pair(a) {
        return Some(Verdict::Invalid(InvalidWitness::RowPair { row, magnitude }));
    }
    for kind in [CircuitKind::Circuit, CircuitKind::AntiCircuit] {
        if let Some(w) = find_circuit(a, kind) {
            return Some(Verdict::Invalid(InvalidWitness::Circuit(w)));
        }
    }
    None
}

/// The induced matrix M(A, b): column j is the sum over rows p of
/// b_p s_{p,j} e_{I_{p,j}}, as an n x (m+1) exact rational matrix.
pub fn induced_matrix(a: &SignedMatrix, b: &[Rat]) -> Vec<Vec<Rat>> {
    assert_eq!(b.len(), a.k());
    let n = a.n() as usize;
    let m1 = a.num_cols();
    let mut m = vec![vec![Rat::zero(); m1]; n];
    for j in 0..m1 {
        for p in 0..a.k() {
            let e = a.entry(p, j);
            let axis = e.magnitude() as usize - 1;
            if e.is_negative() {
                m[axis][j] -= &b[p];
            } else {
                m[axis][j] += &b[p];
            }
        }
    }
    m
}

/// The k frame vectors l_{A_p}(t) in Q^n at barycentric point t.
pub fn frame_vectors(a: &SignedMatrix, t: &[Rat]) -> Vec<Vec<Rat>> {
    assert_eq!(t.len(), a.num_cols());
    let n = a.n() as usize;
    (0..a.k())
        .map(|p| {
            let mut v = vec![Rat::zero(); n];
            for j in 0..a.num_cols() {
                let e = a.entry(p, j);
                let axis = e.magnitude() as usize - 1;
                if e.is_negative() {
                    v[axis] -= &t[j];
                } else {
                    v[axis] += &t[j];
                }
            }
            v
        })
        .collect()
}

/// det of the k x k Gram matrix of the frame vectors at t; nonnegative, and
/// zero exactly when the frame degenerates at t.
pub fn gram_determinant(a: &SignedMatrix, t: &[Rat]) -> Rat {
    let vs = frame_vectors(a, t);
    let k = a.k();
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|p| {
            (0..k)
                .map(|q| vs[p].iter().zip(&vs[q]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    lp::determinant(&gram)
}

/// The Gram determinant as a homogeneous degree-2k polynomial in the
/// barycentric coordinates, with integer coefficients.
pub fn gram_polynomial(a: &SignedMatrix) -> MPoly {
    let k = a.k();
    let m1 = a.num_cols();
    let entries: Vec<Vec<MPoly>> = (0..k)
        .map(|p| {
            (0..k)
                .map(|q| {
                    let mut g = MPoly::zero(m1);
                    for j in 0..m1 {
                        for j2 in 0..m1 {
                            let ep = a.entry(p, j);
                            let eq = a.entry(q, j2);
                            if ep.magnitude() != eq.magnitude() {
                                continue;
                            }
                            let sign = if ep.is_negative() == eq.is_negative() {
                                Rat::one()
                            } else {
                                -Rat::one()
                            };
                            g = g.add(&MPoly::quad_term(m1, j, j2, sign));
                        }
                    }
                    g
                })
                .collect()
        })
        .collect();
    lp_det_poly(&entries)
}

fn lp_det_poly(entries: &[Vec<MPoly>]) -> MPoly {
    crate::poly::poly_determinant(entries)
}

enum PositivityOutcome {
    Positive(BernsteinCert),
    ZeroAt(Vec<Rat>),
    NegativeAt,
    Inconclusive,
}

/// Certifies strict positivity of a homogeneous polynomial on the standard
/// simplex by Bernstein coefficients with degree raising and longest-edge
/// bisection, or finds an exact rational vertex where it vanishes.
fn certify_positive(p: &MPoly, max_depth: u32) -> PositivityOutcome {
    let root = BernsteinNet::from_homogeneous(p);
    let base_degree = root.degree();
    let raise_cap = base_degree + 4;
    let mut queue = vec![(root, 0u32)];
    let mut cells = 0usize;
    let mut deepest = 0u32;
    let mut top_degree = base_degree;
    let mut exhausted = false;
    while let Some((mut net, depth)) = queue.pop() {
        cells += 1;
        deepest = deepest.max(depth);
        let mut status = net.status();
        while status == NetStatus::Inconclusive && net.degree() < raise_cap {
            net = net.raise_degree();
            status = net.status();
        }
        top_degree = top_degree.max(net.degree());
        match status {
            NetStatus::AllPositive => {}
            NetStatus::ZeroVertex(t) => return PositivityOutcome::ZeroAt(t),
            NetStatus::NegativeVertex(_) => return PositivityOutcome::NegativeAt,
            NetStatus::Inconclusive => {
                if depth >= max_depth {
                    exhausted = true;
                    continue;
                }
                let (r, s) = net.longest_edge();
                let (left, right) = net.subdivide(r, s);
                queue.push((left, depth + 1));
                queue.push((right, depth + 1));
            }
        }
    }
    if exhausted {
        PositivityOutcome::Inconclusive
    } else {
        PositivityOutcome::Positive(BernsteinCert {
            cells,
            depth: deepest,
            degree: top_degree,
        })
    }
}

/// Verifies M(A,b)·t = 0 in exact arithmetic.
pub fn check_point_witness(a: &SignedMatrix, w: &PointWitness) -> bool {
    if w.b.iter().all(|x| x.is_zero()) {
        return false;
    }
    let sum: Rat = w.t.iter().cloned().sum();
    if !sum.is_one() || w.t.iter().any(|x| x.is_negative()) {
        return false;
    }
    let m = induced_matrix(a, &w.b);
    m.iter().all(|row| {
        row.iter()
            .zip(&w.t)
            .map(|(x, y)| x * y)
            .sum::<Rat>()
            .is_zero()
    })
}

/// Converts a combinatorial invalidity witness into an exact point witness,
/// following the k = 2 characterization proof: b = (1, ±1) on the two rows
/// involved and t uniform on the participating columns.
fn point_witness_from(a: &SignedMatrix, w: &InvalidWitness) -> Option<PointWitness> {
    let k = a.k();
    let m1 = a.num_cols();
    let (b, cols) = match w {
        InvalidWitness::RowPair { row, magnitude } => {
            let mut b = vec![Rat::zero(); k];
            b[*row] = Rat::one();
            let mut cols = Vec::new();
            for want_neg in [false, true] {
                let j = (0..m1).find(|&j| {
                    let e = a.entry(*row, j);
                    e.magnitude() == *magnitude && e.is_negative() == want_neg
                })?;
                cols.push(j);
            }
            (b, cols)
        }
        InvalidWitness::Circuit(c) => {
            let mut b = vec![Rat::zero(); k];
            b[c.rows.0] = Rat::one();
            b[c.rows.1] = match c.kind {
                CircuitKind::Circuit => -Rat::one(),
                CircuitKind::AntiCircuit => Rat::one(),
            };
            (b, c.cols.clone())
        }
        InvalidWitness::Point(p) => return Some(p.clone()),
    };
    let mut t = vec![Rat::zero(); m1];
    let share = rat_frac(1, cols.len() as i64);
    for j in cols {
        t[j] = share.clone();
    }
    let witness = PointWitness { b, t };
    check_point_witness(a, &witness).then_some(witness)
}

/// Candidate b directions: all sign patterns in {-1,0,1}^k first, then an
/// expanding integer grid, antipodes deduplicated, up to `limit` directions.
fn b_directions(k: usize, limit: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut radius = 1i64;
    while out.len() < limit && radius <= 16 {
        let mut v = vec![0i64; k];
        collect_directions(&mut v, 0, radius, &mut out, limit);
        radius += 1;
    }
    out
}

fn collect_directions(v: &mut Vec<i64>, at: usize, radius: i64, out: &mut Vec<Vec<i64>>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if at == v.len() {
        if v.iter().map(|x| x.abs()).max() != Some(radius) {
            return; // only new vectors at this radius
        }
        if v.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(true) {
            return; // zero vector or antipode of one already listed
        }
        let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
        if g != 1 {
            return;
        }
        out.push(v.clone());
        return;
    }
    for x in -radius..=radius {
        v[at] = x;
        collect_directions(v, at + 1, radius, out, limit);
    }
    v[at] = 0;
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The general-k decision procedure of the validity engine.
///
/// Pipeline: combinatorial filters, a shallow Bernstein pass, exact LP
/// feasibility over sampled b directions, then the full-depth Bernstein pass.
pub fn certify_valid_general(
    a: &SignedMatrix,
    opts: CertifyOptions,
) -> Result<Verdict, ValidityError> {
    if !a.has_distinct_columns() {
        return Err(ValidityError::DuplicateColumn);
    }
    if let Some((row, magnitude)) = row_with_opposite_pair(a) {
        let w = InvalidWitness::RowPair { row, magnitude };
        let p = point_witness_from(a, &w).expect("row-pair witness always converts");
        return Ok(Verdict::Invalid(InvalidWitness::Point(p)));
    }
    if a.k() >= 2 {
        for kind in [CircuitKind::Circuit, CircuitKind::AntiCircuit] {
            if let Some(w) = find_circuit(a, kind) {
                let w = InvalidWitness::Circuit(w);
                let p = point_witness_from(a, &w).expect("circuit witness always converts");
                return Ok(Verdict::Invalid(InvalidWitness::Point(p)));
            }
        }
    }

    let poly = gram_polynomial(a);
    let shallow = certify_positive(&poly, opts.max_depth.min(4));
    match shallow {
        PositivityOutcome::Positive(cert) => return Ok(Verdict::Valid(Some(cert))),
        PositivityOutcome::ZeroAt(t) => {
            if let Some(v) = zero_to_witness(a, &t) {
                return Ok(Verdict::Invalid(InvalidWitness::Point(v)));
            }
        }
        PositivityOutcome::NegativeAt => {
            debug_assert!(false, "Gram determinant cannot be negative");
        }
        PositivityOutcome::Inconclusive => {}
    }

    for b_int in b_directions(a.k(), opts.b_samples) {
        let b: Vec<Rat> = b_int
            .iter()
            .map(|&x| Rat::from_integer(BigInt::from(x)))
            .collect();
        let m = induced_matrix(a, &b);
        if let Some(t) = lp::simplex_point_in_kernel(&m) {
            let witness = PointWitness { b, t };
            if check_point_witness(a, &witness) {
                return Ok(Verdict::Invalid(InvalidWitness::Point(witness)));
            }
        }
    }

    if opts.max_depth > 4 {
        match certify_positive(&poly, opts.max_depth) {
            PositivityOutcome::Positive(cert) => return Ok(Verdict::Valid(Some(cert))),
            PositivityOutcome::ZeroAt(t) => {
                if let Some(v) = zero_to_witness(a, &t) {
                    return Ok(Verdict::Invalid(InvalidWitness::Point(v)));
                }
            }
            _ => {}
        }
    }
    Ok(Verdict::Unresolved {
        depth: opts.max_depth,
    })
}

/// At a rational t where the Gram determinant vanishes, the frame vectors
/// are dependent; their dependence coefficients are the b of a point witness.
fn zero_to_witness(a: &SignedMatrix, t: &[Rat]) -> Option<PointWitness> {
    let vs = frame_vectors(a, t);
    let n = a.n() as usize;
    // Matrix with the frame vectors as columns.
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|i| vs.iter().map(|v| v[i].clone()).collect())
        .collect();
    let b = lp::kernel_vector(&m)?;
    let witness = PointWitness {
        b,
        t: t.to_vec(),
    };
    check_point_witness(a, &witness).then_some(witness)
}

/// Dispatches on k: exact rules for k = 1 and 2, certification for k >= 3.
pub fn decide_validity(a: &SignedMatrix, opts: CertifyOptions) -> Result<Verdict, ValidityError> {
    if !a.has_distinct_columns() {
        return Err(ValidityError::DuplicateColumn);
    }
    match a.k() {
        1 => Ok(match row_with_opposite_pair(a) {
            Some((row, magnitude)) => Verdict::Invalid(InvalidWitness::RowPair { row, magnitude }),
            None => Verdict::Valid(None),
        }),
        2 => is_valid_k2(a),
        _ => {
            if let Some(v) = invalid_submatrix_filter(a) {
                return Ok(v);
            }
            certify_valid_general(a, opts)
        }
    }
}

fn rat_json(x: &Rat) -> serde_json::Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

/// The JSON wire format for verdicts.
pub fn verdict_to_json(v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::Valid(cert) => {
            let mut obj = json!({ "verdict": "valid" });
            if let Some(c) = cert {
                obj["certificate"] = json!({
                    "cells": c.cells,
                    "depth": c.depth,
                    "degree": c.degree,
                });
            }
            obj
        }
        Verdict::Invalid(w) => {
            let witness = match w {
                InvalidWitness::RowPair { row, magnitude } => {
                    json!({ "rowpair": { "row": row, "magnitude": magnitude } })
                }
                InvalidWitness::Circuit(c) => json!({
                    "rows": [c.rows.0, c.rows.1],
                    "cols": c.cols,
                    "kind": match c.kind {
                        CircuitKind::Circuit => "circuit",
                        CircuitKind::AntiCircuit => "anticircuit",
                    },
                }),
                InvalidWitness::Point(p) => json!({
                    "b": p.b.iter().map(rat_json).collect::<Vec<_>>(),
                    "t": p.t.iter().map(rat_json).collect::<Vec<_>>(),
                }),
            };
            json!({ "verdict": "invalid", "witness": witness })
        }
        Verdict::Unresolved { depth } => json!({ "verdict": "unresolved", "depth": depth }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(text: &str, n: u32) -> SignedMatrix {
        SignedMatrix::parse(text, n).unwrap()
    }

    #[test]
    fn row_pair_is_invalid() {
        let v = is_valid_k2(&m("1 -1 ; 2 3", 3)).unwrap();
        assert_eq!(
            v,
            Verdict::Invalid(InvalidWitness::RowPair {
                row: 0,
                magnitude: 1
            })
        );
    }

    #[test]
    fn circuit_examples() {
        let w = find_circuit(&m("1 2 ; 2 1", 2), CircuitKind::Circuit).unwrap();
        assert_eq!(w.length(), 2);
        let v = is_valid_k2(&m("1 2 ; 2 1", 2)).unwrap();
        assert!(matches!(
            v,
            Verdict::Invalid(InvalidWitness::Circuit(CircuitWitness {
                kind: CircuitKind::Circuit,
                ..
            }))
        ));

        let w = find_circuit(&m("1 2 ; -2 -1", 2), CircuitKind::AntiCircuit).unwrap();
        assert_eq!(w.length(), 2);

        // A column with the same entry twice is a length-one circuit.
        let w = find_circuit(&m("1 2 ; 1 3", 3), CircuitKind::Circuit).unwrap();
        assert_eq!(w.length(), 1);
    }

    #[test]
    fn valid_k2_member() {
        assert!(is_valid_k2(&m("1 1 ; 2 3", 3)).unwrap().is_valid());
    }

    #[test]
    fn wrong_k_is_an_error() {
        assert_eq!(
            is_valid_k2(&m("1 2", 2)),
            Err(ValidityError::WrongK(1))
        );
    }

    #[test]
    fn induced_matrix_of_anticircuit() {
        // A = [1 2; -2 -1] with b = (1,1): columns e1 - e2 and e2 - e1.
        let a = m("1 2 ; -2 -1", 2);
        let b = vec![rat(1), rat(1)];
        let ind = induced_matrix(&a, &b);
        assert_eq!(ind, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(1)]]);
        let t = vec![rat_frac(1, 2), rat_frac(1, 2)];
        let w = PointWitness { b, t };
        assert!(check_point_witness(&a, &w));
    }

    #[test]
    fn induced_matrix_of_circuit() {
        let a = m("1 2 ; 2 1", 2);
        let b = vec![rat(1), rat(-1)];
        let t = vec![rat_frac(1, 2), rat_frac(1, 2)];
        let w = PointWitness { b, t };
        assert!(check_point_witness(&a, &w));
    }

    #[test]
    fn gram_determinant_examples() {
        // Single row [1 2] at the first vertex: unit vector.
        let a = m("1 2", 2);
        let v = gram_determinant(&a, &[rat(1), rat(0)]);
        assert_eq!(v, rat(1));

        // [1 -1] degenerates at the midpoint.
        let a = m("1 -1", 1);
        let v = gram_determinant(&a, &[rat_frac(1, 2), rat_frac(1, 2)]);
        assert_eq!(v, rat(0));

        // [1 1; 2 3] at the midpoint: det Gram(e1, (e2+e3)/2) = 1/2.
        let a = m("1 1 ; 2 3", 3);
        let v = gram_determinant(&a, &[rat_frac(1, 2), rat_frac(1, 2)]);
        assert_eq!(v, rat_frac(1, 2));
    }

    #[test]
    fn certify_valid_k1_cases() {
        let v = certify_valid_general(&m("1 2", 2), CertifyOptions::default()).unwrap();
        assert!(v.is_valid());

        let v = certify_valid_general(&m("1 -1", 1), CertifyOptions::default()).unwrap();
        match v {
            Verdict::Invalid(InvalidWitness::Point(p)) => {
                assert_eq!(p.t, vec![rat_frac(1, 2), rat_frac(1, 2)]);
            }
            other => panic!("expected point witness, got {other:?}"),
        }
    }

    #[test]
    fn filter_catches_embedded_circuit() {
        // Rows 0 and 2 form the circuit [1 2; 2 1].
        let a = m("1 2 ; 3 4 ; 2 1", 4);
        let v = invalid_submatrix_filter(&a).unwrap();
        assert!(v.is_invalid());
    }

    #[test]
    fn filter_passes_thm_member() {
        let a = m("1 1 1 ; 2 2 2 ; 3 4 5", 5);
        assert!(invalid_submatrix_filter(&a).is_none());
    }

    #[test]
    fn verdict_json_shape() {
        let v = is_valid_k2(&m("1 2 ; 2 1", 2)).unwrap();
        let j = verdict_to_json(&v);
        assert_eq!(j["verdict"], "invalid");
        assert_eq!(j["witness"]["kind"], "circuit");
        assert_eq!(j["witness"]["rows"].as_array().unwrap().len(), 2);
    }
}
