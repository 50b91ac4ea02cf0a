//! End-to-end acceptance checks. Each test covers one numbered criterion
//! and prints a single pass line (visible with `--nocapture`); a panic in
//! a test is the corresponding fail line.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use yang_lab::bounds::{self, Quantity, SpaceId};
use yang_lab::chain::{self, Chain, Mode};
use yang_lab::complex::{self, ValidComplex};
use yang_lab::matrix::SignedMatrix;
use yang_lab::validity::{self, CertifyOptions};

const SEED: u64 = 0x5EED;

fn pass(criterion: usize, detail: &str, t0: Instant) {
    println!(
        "criterion {criterion}: pass — {detail} ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_1_top_chain_is_an_invariant_cycle_with_index_one() {
    let t0 = Instant::now();
    for n in 1u32..=7 {
        for k in 1..=n as usize {
            let c = chain::expand_named("thm1.1", n, k, Mode::Stiefel).unwrap();
            let expected = 1usize << (n as usize - k + 1);
            assert_eq!(c.len(), expected, "thm1.1({n},{k}) face count");
            assert_eq!(chain::tau(&c), c, "thm1.1({n},{k}) not invariant");
            if c.dim() >= 1 {
                assert!(
                    chain::boundary(&c).unwrap().is_zero(),
                    "thm1.1({n},{k}) boundary nonzero"
                );
            }
            assert_eq!(
                chain::yang_index_of_chain(&c).unwrap(),
                1,
                "thm1.1({n},{k}) nu != 1"
            );
        }
    }
    assert!(t0.elapsed().as_secs() < 10, "over the 10 s budget");
    pass(1, "thm1.1(n,k) for 1 <= k <= n <= 7", t0);
}

#[test]
fn criterion_2_quotient_cycle_exists_downstairs_but_not_upstairs() {
    let t0 = Instant::now();
    for n in [3u32, 5, 7, 9] {
        let c = chain::expand_named("thm1.3_c", n, 2, Mode::Grassmann).unwrap();
        for f in c.faces() {
            assert!(
                validity::is_valid_k2(&f.matrix()).unwrap().is_valid(),
                "invalid face in thm1.3_c({n}): {}",
                f.matrix()
            );
        }
        assert_eq!(chain::tau(&c), c, "thm1.3_c({n}) not invariant");
        assert!(
            chain::boundary(&c).unwrap().is_zero(),
            "thm1.3_c({n}) has nonzero quotient boundary"
        );
        assert_eq!(chain::yang_index_of_chain(&c).unwrap(), 1, "n={n}");

        let upstairs = chain::expand_named("thm1.3_c", n, 2, Mode::Stiefel).unwrap();
        assert!(
            !chain::boundary(&upstairs).unwrap().is_zero(),
            "thm1.3_c({n}) unexpectedly a cycle upstairs"
        );
    }
    assert!(t0.elapsed().as_secs() < 30, "over the 30 s budget");
    pass(2, "thm1.3_c(n) for n in {3,5,7,9}", t0);
}

#[test]
fn criterion_3_half_chain_boundary_matches_the_recursion() {
    let t0 = Instant::now();
    for n in [5u32, 7] {
        let c = chain::expand_named("thm1.3_c", n, 2, Mode::Grassmann).unwrap();
        let d = chain::expand_named("thm1.3_d", n, 2, Mode::Grassmann).unwrap();
        assert_eq!(d.add(&chain::tau(&d)), c, "n={n}: d + tau(d) != c");
        let bd = chain::boundary(&d).unwrap();
        let display = chain::expand_named("thm1.3_bd", n, 2, Mode::Grassmann).unwrap();
        assert_eq!(bd, display, "n={n}: boundary of d mismatch");
        // The telescoped recursion resolves to 1 regardless of n.
        assert_eq!(chain::yang_index_of_chain(&c).unwrap(), 1, "n={n}");
    }
    pass(3, "boundary of thm1.3_d matches thm1.3_bd, nu = 1", t0);
}

#[test]
fn criterion_4_sixteen_matrix_cycle_and_planar_quotient_index() {
    let t0 = Instant::now();
    let ex = chain::expand_named("example_g32", 3, 2, Mode::Grassmann).unwrap();
    assert_eq!(ex.len(), 16);
    assert_eq!(chain::tau(&ex), ex);
    assert!(chain::boundary(&ex).unwrap().is_zero());
    assert_eq!(chain::yang_index_of_chain(&ex).unwrap(), 1);

    let c = complex::enumerate_valid_faces(3, 2, 2, Mode::Grassmann);
    assert!(c.audit());
    for f in ex.faces() {
        assert!(c.faces(2).contains(f), "cycle face missing from complex");
    }
    let report = complex::yang_index_of_complex(&c);
    assert_eq!(report.index, Some(2));
    assert!(t0.elapsed().as_secs() < 5, "over the 5 s budget");
    pass(4, "16-matrix cycle has nu = 1; quotient complex index 2", t0);
}

#[test]
fn criterion_5_one_row_complex_is_an_octahedral_sphere() {
    let t0 = Instant::now();
    for n in [2u32, 3] {
        let max_dim = n as usize - 1;
        let c = complex::enumerate_valid_faces(n, 1, max_dim, Mode::Stiefel);
        let report = complex::yang_index_of_complex(&c);
        assert_eq!(report.index, Some(max_dim), "n={n}");
    }
    pass(5, "one-row complexes have index n-1 for n = 2, 3", t0);
}

#[test]
fn criterion_6_interval_tables_match_the_embedded_references() {
    let t0 = Instant::now();
    let table = bounds::solve(9, &[], &[], None).unwrap();
    let diffs = bounds::diff_against_reference(&table);
    assert!(diffs.is_empty(), "nonempty diff: {diffs:?}");

    let cell = |s, q| {
        let c = table.cell(s, q).unwrap();
        (c.lo, c.hi)
    };
    assert_eq!(cell(SpaceId::g(4, 2), Quantity::Nu), (2, 2));
    assert_eq!(cell(SpaceId::st(8, 2), Quantity::Nu), (6, 6));
    assert_eq!(cell(SpaceId::g(9, 4), Quantity::Nu), (6, 20));
    assert!(t0.elapsed().as_millis() < 1000, "over the 1 s budget");
    pass(6, "G and St tables reproduce with an empty diff", t0);
}

#[test]
fn criterion_7_exact_and_certified_oracles_agree_exhaustively() {
    let t0 = Instant::now();
    let opts = CertifyOptions {
        max_depth: 12,
        b_samples: 512,
    };
    let mut checked = 0usize;
    for n in 1u32..=3 {
        let mut entries: Vec<i64> = Vec::new();
        for v in 1..=n as i64 {
            entries.push(v);
            entries.push(-v);
        }
        let mut columns: Vec<String> = Vec::new();
        for &a in &entries {
            for &b in &entries {
                columns.push(format!("{a} {b}"));
            }
        }
        // Validity is invariant under column order, and both oracles treat
        // columns symmetrically, so one ordering per column set suffices.
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for i in 0..columns.len() {
            for j in (i + 1)..columns.len() {
                sets.push(vec![i, j]);
                for l in (j + 1)..columns.len() {
                    sets.push(vec![i, j, l]);
                }
            }
        }
        for set in sets {
            let text: Vec<String> = (0..2)
                .map(|row| {
                    set.iter()
                        .map(|&ci| {
                            columns[ci].split(' ').nth(row).unwrap().to_string()
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let a = SignedMatrix::parse(&text.join(" ; "), n).unwrap();
            if !a.has_distinct_columns() {
                continue;
            }
            let exact = validity::is_valid_k2(&a).unwrap();
            let certified = validity::certify_valid_general(&a, opts).unwrap();
            assert!(
                !certified.is_unresolved(),
                "unresolved at depth 12: {}",
                a
            );
            assert_eq!(
                exact.is_valid(),
                certified.is_valid(),
                "oracle disagreement on {}",
                a
            );
            checked += 1;
        }
    }
    assert!(t0.elapsed().as_secs() < 60, "over the 60 s budget");
    pass(
        7,
        &format!("oracles agree on {checked} matrices, none unresolved"),
        t0,
    );
}

/// A pool of valid faces to draw random chains from, grouped by dimension.
struct Pool {
    complex: ValidComplex,
    by_dim: Vec<Vec<yang_lab::matrix::Face>>,
}

impl Pool {
    fn new() -> Pool {
        let complex = complex::enumerate_valid_faces(4, 2, 3, Mode::Stiefel);
        let by_dim = (0..=3)
            .map(|m| complex.faces(m).iter().cloned().collect())
            .collect();
        Pool { complex, by_dim }
    }

    fn random_chain(&self, rng: &mut ChaCha8Rng, dim: usize) -> Chain {
        let faces = &self.by_dim[dim];
        let size = rng.gen_range(1..=6);
        let mut c = Chain::empty(4, 2, dim, Mode::Stiefel);
        for _ in 0..size {
            c.toggle(faces[rng.gen_range(0..faces.len())].clone());
        }
        c
    }

    /// A random invariant chain f + tau(f).
    fn random_invariant(&self, rng: &mut ChaCha8Rng, dim: usize) -> Chain {
        let f = self.random_chain(rng, dim);
        f.add(&chain::tau(&f))
    }

    /// A random invariant cycle: the boundary of a random invariant chain,
    /// optionally shifted by a known index-one cycle of the same shape.
    fn random_cycle(&self, rng: &mut ChaCha8Rng, with_generator: bool) -> Chain {
        let z = chain::boundary(&self.random_invariant(rng, 3)).unwrap();
        if with_generator {
            z.add(&chain::expand_named("thm1.1", 4, 2, Mode::Stiefel).unwrap())
        } else {
            z
        }
    }
}

#[test]
fn criterion_8_property_suites() {
    let t0 = Instant::now();
    let pool = Pool::new();
    let cases = 1000usize;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let dim = rng.gen_range(2..=3);
        let c = pool.random_chain(&mut rng, dim);
        let bb = chain::boundary(&chain::boundary(&c).unwrap()).unwrap();
        assert!(bb.is_zero(), "boundary of boundary nonzero");
    }
    println!("criterion 8a: pass — boundary twice vanishes ({cases} cases)");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let dim = rng.gen_range(0..=3);
        let c = pool.random_chain(&mut rng, dim);
        assert_eq!(chain::tau(&chain::tau(&c)), c, "tau not an involution");
    }
    println!("criterion 8b: pass — tau squared is the identity ({cases} cases)");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let dim = rng.gen_range(1..=3);
        let c = pool.random_chain(&mut rng, dim);
        assert_eq!(
            chain::tau(&chain::boundary(&c).unwrap()),
            chain::boundary(&chain::tau(&c)).unwrap(),
            "tau and boundary do not commute"
        );
    }
    println!("criterion 8c: pass — tau commutes with the boundary ({cases} cases)");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let with_generator = rng.gen_bool(0.5);
        let z = pool.random_cycle(&mut rng, with_generator);
        let reference = chain::yang_index_of_chain(&z).unwrap();
        for _ in 0..32 {
            let resplit =
                chain::yang_index_with_splitting(&z, &mut |_, _| rng.gen_bool(0.5)).unwrap();
            assert_eq!(resplit, reference, "nu depends on the splitting");
        }
    }
    println!("criterion 8d: pass — nu survives 32 resplits per cycle ({cases} cases)");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let g1 = rng.gen_bool(0.5);
        let z1 = pool.random_cycle(&mut rng, g1);
        let g2 = rng.gen_bool(0.5);
        let z2 = pool.random_cycle(&mut rng, g2);
        let lhs = chain::yang_index_of_chain(&z1.add(&z2)).unwrap();
        let rhs =
            chain::yang_index_of_chain(&z1).unwrap() ^ chain::yang_index_of_chain(&z2).unwrap();
        assert_eq!(lhs, rhs, "nu not additive");
    }
    println!("criterion 8e: pass — nu is additive on invariant cycles ({cases} cases)");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let dim = rng.gen_range(1..=3);
        let e = pool.random_invariant(&mut rng, dim);
        let z = chain::boundary(&e).unwrap();
        assert_eq!(
            chain::yang_index_of_chain(&z).unwrap(),
            0,
            "boundary of an invariant chain has nonzero nu"
        );
    }
    println!("criterion 8f: pass — nu vanishes on invariant boundaries ({cases} cases)");

    // Heredity: audit is exhaustive over every face of every complex up to
    // (4,2,3); the random spot checks exercise the same property through
    // the public column-deletion path.
    assert!(pool.complex.audit());
    for (n, k, m) in [(2u32, 1usize, 1usize), (3, 1, 2), (3, 2, 2), (4, 1, 3)] {
        assert!(
            complex::enumerate_valid_faces(n, k, m, Mode::Stiefel).audit(),
            "heredity fails for ({n},{k},{m})"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let dim = rng.gen_range(1..=3);
        let faces = &pool.by_dim[dim];
        let f = &faces[rng.gen_range(0..faces.len())];
        let a = f.matrix();
        let sub = yang_lab::matrix::face_of(&a.without_column(rng.gen_range(0..a.num_cols())))
            .unwrap();
        assert!(
            pool.complex.faces(dim - 1).contains(&sub),
            "face of a complex member missing from the complex"
        );
    }
    println!("criterion 8g: pass — heredity of validity up to (4,2,3) ({cases} cases)");

    pass(8, "all property suites", t0);
}
