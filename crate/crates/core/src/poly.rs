//! Multivariate polynomials over exact rationals and Bernstein nets on
//! simplices, used to certify strict positivity of Gram determinants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial in `vars` variables with rational coefficients, keyed by
/// exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: usize,
    terms: BTreeMap<Vec<u8>, Rat>,
}

impl MPoly {
    pub fn zero(vars: usize) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u8>, coeff: Rat) {
        debug_assert_eq!(exps.len(), self.vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The monomial coeff * x_i * x_j.
    pub fn quad_term(vars: usize, i: usize, j: usize, coeff: Rat) -> Self {
        let mut exps = vec![0u8; vars];
        exps[i] += 1;
        exps[j] += 1;
        let mut p = MPoly::zero(vars);
        p.add_term(exps, coeff);
        p
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = MPoly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as u32).sum::<u32>() == d)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(point.len(), self.vars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Determinant of a square matrix of polynomials by permutation expansion.
pub fn poly_determinant(entries: &[Vec<MPoly>]) -> MPoly {
    let k = entries.len();
    let vars = entries[0][0].vars();
    let mut det = MPoly::zero(vars);
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, &mut |perm, sign| {
        let mut prod = {
            let mut one = MPoly::zero(vars);
            one.add_term(vec![0u8; vars], Rat::one());
            one
        };
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&entries[i][j]);
        }
        if sign {
            det = det.sub(&prod);
        } else {
            det = det.add(&prod);
        }
    });
    det
}

fn permute(perm: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize], bool)) {
    fn go(perm: &mut Vec<usize>, at: usize, odd: bool, visit: &mut impl FnMut(&[usize], bool)) {
        if at == perm.len() {
            visit(perm, odd);
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            go(perm, at + 1, odd ^ (i != at), visit);
            perm.swap(at, i);
        }
    }
    go(perm, at, false, visit);
}

fn multinomial(d: u32, exps: &[u8]) -> BigInt {
    let mut num = BigInt::one();
    for i in 2..=d as u64 {
        num *= i;
    }
    for &e in exps {
        for i in 2..=e as u64 {
            num /= i;
        }
    }
    num
}

/// Enumerates all exponent vectors of total degree `d` in `vars` variables.
pub fn compositions(d: u32, vars: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; vars];
    fn go(d: u32, at: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if at == cur.len() - 1 {
            cur[at] = d as u8;
            out.push(cur.clone());
            return;
        }
        for x in 0..=d {
            cur[at] = x as u8;
            go(d - x, at + 1, cur, out);
        }
    }
    go(d, 0, &mut cur, &mut out);
    out
}

/// The Bernstein control net of a homogeneous polynomial restricted to a
/// subsimplex of the standard simplex. If every coefficient is positive the
/// polynomial is strictly positive on the subsimplex; the coefficient at
/// `degree * e_j` is the exact value at vertex j.
#[derive(Debug, Clone)]
pub struct BernsteinNet {
    degree: u32,
    vars: usize,
    coeffs: BTreeMap<Vec<u8>, Rat>,
    /// Barycentric coordinates of the subsimplex vertices in the original simplex.
    vertices: Vec<Vec<Rat>>,
}

/// What inspecting one net's coefficients tells us.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetStatus {
    AllPositive,
    /// A vertex where the polynomial vanishes exactly (original coordinates).
    ZeroVertex(Vec<Rat>),
    /// A vertex with a strictly negative value (original coordinates).
    NegativeVertex(Vec<Rat>),
    Inconclusive,
}

impl BernsteinNet {
    /// Builds the net of a homogeneous polynomial on the standard simplex.
    pub fn from_homogeneous(p: &MPoly) -> BernsteinNet {
        assert!(p.is_homogeneous(), "polynomial must be homogeneous");
        let degree = p.total_degree();
        let vars = p.vars();
        let mut coeffs = BTreeMap::new();
        for exps in compositions(degree, vars) {
            coeffs.insert(exps, Rat::zero());
        }
        for (e, c) in p.terms() {
            let denom = multinomial(degree, e);
            coeffs.insert(e.clone(), c / Rat::from_integer(denom));
        }
        let vertices = (0..vars)
            .map(|i| {
                (0..vars)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        BernsteinNet {
            degree,
            vars,
            coeffs,
            vertices,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn status(&self) -> NetStatus {
        let mut all_positive = true;
        for (e, c) in &self.coeffs {
            if c.is_positive() {
                continue;
            }
            all_positive = false;
            // A coefficient at degree*e_j is the value at vertex j.
            if let Some(j) = (0..self.vars).find(|&j| e[j] as u32 == self.degree) {
                if c.is_zero() {
                    return NetStatus::ZeroVertex(self.vertices[j].clone());
                }
                return NetStatus::NegativeVertex(self.vertices[j].clone());
            }
        }
        if all_positive {
            NetStatus::AllPositive
        } else {
            NetStatus::Inconclusive
        }
    }

    /// Degree elevation: the same polynomial with control net of degree + 1.
    pub fn raise_degree(&self) -> BernsteinNet {
        let d1 = self.degree + 1;
        let mut coeffs = BTreeMap::new();
        for exps in compositions(d1, self.vars) {
            let mut acc = Rat::zero();
            for i in 0..self.vars {
                if exps[i] == 0 {
                    continue;
                }
                let mut lower = exps.clone();
                lower[i] -= 1;
                let c = self.coeffs.get(&lower).expect("complete net");
                acc += Rat::new(BigInt::from(exps[i]), BigInt::from(d1)) * c;
            }
            coeffs.insert(exps, acc);
        }
        BernsteinNet {
            degree: d1,
            vars: self.vars,
            coeffs,
            vertices: self.vertices.clone(),
        }
    }

    /// The squared Euclidean edge lengths (in barycentric coordinates) of the
    /// longest edge, returned as (r, s).
    pub fn longest_edge(&self) -> (usize, usize) {
        let mut best = (0, 1);
        let mut best_len = Rat::zero();
        for r in 0..self.vars {
            for s in r + 1..self.vars {
                let mut len = Rat::zero();
                for i in 0..self.vars {
                    let d = &self.vertices[r][i] - &self.vertices[s][i];
                    len += &d * &d;
                }
                if len > best_len {
                    best_len = len;
                    best = (r, s);
                }
            }
        }
        best
    }

    /// Bisects the subsimplex at the midpoint of edge (r, s) via de Casteljau.
    pub fn subdivide(&self, r: usize, s: usize) -> (BernsteinNet, BernsteinNet) {
        let midpoint: Vec<Rat> = (0..self.vars)
            .map(|i| (&self.vertices[r][i] + &self.vertices[s][i]) * rat_frac(1, 2))
            .collect();
        let half = rat_frac(1, 2);

        // de Casteljau levels at local barycentric point (e_r + e_s)/2.
        let mut levels: Vec<BTreeMap<Vec<u8>, Rat>> = vec![self.coeffs.clone()];
        for l in 1..=self.degree {
            let mut next = BTreeMap::new();
            for exps in compositions(self.degree - l, self.vars) {
                let mut er = exps.clone();
                er[r] += 1;
                let mut es = exps.clone();
                es[s] += 1;
                let v = (&levels[l as usize - 1][&er] + &levels[l as usize - 1][&es]) * &half;
                next.insert(exps, v);
            }
            levels.push(next);
        }

        let child = |replaced: usize| -> BernsteinNet {
            let mut coeffs = BTreeMap::new();
            for exps in compositions(self.degree, self.vars) {
                let l = exps[replaced] as u32;
                let mut rest = exps.clone();
                rest[replaced] = 0;
                let v = levels[l as usize][&rest].clone();
                coeffs.insert(exps, v);
            }
            let mut vertices = self.vertices.clone();
            vertices[replaced] = midpoint.clone();
            BernsteinNet {
                degree: self.degree,
                vars: self.vars,
                coeffs,
                vertices,
            }
        };
        (child(r), child(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_squares(vars: usize) -> MPoly {
        let mut p = MPoly::zero(vars);
        for i in 0..vars {
            p = p.add(&MPoly::quad_term(vars, i, i, Rat::one()));
        }
        p
    }

    #[test]
    fn eval_matches_terms() {
        // t0^2 + t1^2 at (1/2, 1/2) = 1/2.
        let p = sum_of_squares(2);
        let v = p.eval(&[rat_frac(1, 2), rat_frac(1, 2)]);
        assert_eq!(v, rat_frac(1, 2));
    }

    #[test]
    fn degree_raising_certifies_sum_of_squares() {
        let p = sum_of_squares(2);
        let net = BernsteinNet::from_homogeneous(&p);
        // c_(1,1) = 0, so the raw net is inconclusive.
        assert_eq!(net.status(), NetStatus::Inconclusive);
        assert_eq!(net.raise_degree().status(), NetStatus::AllPositive);
    }

    #[test]
    fn subdivision_preserves_values_at_vertices() {
        let p = sum_of_squares(3);
        let net = BernsteinNet::from_homogeneous(&p);
        let (a, b) = net.subdivide(0, 1);
        for child in [a, b] {
            for (j, vertex) in child.vertices.iter().enumerate() {
                let mut e = vec![0u8; 3];
                e[j] = child.degree as u8;
                assert_eq!(child.coeffs[&e], p.eval(vertex));
            }
        }
    }

    #[test]
    fn zero_vertex_detected_after_subdivision() {
        // (t0 - t1)^2 vanishes at the midpoint of edge (0, 1).
        let vars = 2;
        let mut p = MPoly::zero(vars);
        p.add_term(vec![2, 0], rat(1));
        p.add_term(vec![1, 1], rat(-2));
        p.add_term(vec![0, 2], rat(1));
        let net = BernsteinNet::from_homogeneous(&p);
        let (a, _) = net.subdivide(0, 1);
        match a.status() {
            NetStatus::ZeroVertex(t) => {
                assert_eq!(t, vec![rat_frac(1, 2), rat_frac(1, 2)]);
            }
            other => panic!("expected zero vertex, got {other:?}"),
        }
    }

    #[test]
    fn determinant_of_identity_like_matrix() {
        // det [[t0, 0], [0, t1]] = t0 * t1.
        let vars = 2;
        let mut t0 = MPoly::zero(vars);
        t0.add_term(vec![1, 0], rat(1));
        let mut t1 = MPoly::zero(vars);
        t1.add_term(vec![0, 1], rat(1));
        let zero = MPoly::zero(vars);
        let det = poly_determinant(&[vec![t0, zero.clone()], vec![zero, t1]]);
        let mut expect = MPoly::zero(vars);
        expect.add_term(vec![1, 1], rat(1));
        assert_eq!(det, expect);
    }
}
