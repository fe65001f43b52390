//! Acceptance gate: one test per criterion, exact dimension equality
//! everywhere. Each test is self-contained and names its matrix inline,
//! so one pass/fail line below corresponds to one criterion.

use std::collections::BTreeMap;

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bartor::algebra::{self, GradedAlgebra};
use bartor::bar::{BarComplex, Limits, WordOrder};
use bartor::gfp;
use bartor::oracle::{self, OracleFault};
use bartor::thh::{hh1_dimension, ramification, LocalKind, Session};
use bartor::tor::tor;
use bartor::tower::{run_tower, TowerSpec, TowerStart};
use bartor::verify::{self, VerifyConfig};

const SEEDS: [u64; 3] = [11, 42, 1337];

/// Criterion 1: one Tor step of a polynomial algebra is exterior on the
/// suspended generator, and a second step gives divided powers; checked as
/// exact series for p in {2, 3, 5} and |x| in {2, 4, 6, 10} through cap 30.
#[test]
fn acceptance_01_polynomial_tor_steps_are_exterior_then_divided_powers() {
    let limits = Limits::default();
    let cap = 30usize;
    for p in [2u32, 3, 5] {
        for d in [2u32, 4, 6, 10] {
            let base = algebra::polynomial(p, d, cap).unwrap();
            let first = tor(&base, cap, limits).unwrap();
            let mut expect = vec![0u64; cap + 1];
            expect[0] = 1;
            expect[(d + 1) as usize] = 1;
            assert_eq!(first.total_series().dims, expect, "Tor of F_{p}[x_{d}]");

            let second = tor(first.as_algebra(), cap, limits).unwrap();
            let mut expect = vec![0u64; cap + 1];
            let mut t = 0;
            while t <= cap {
                expect[t] = 1;
                t += (d + 2) as usize;
            }
            assert_eq!(second.total_series().dims, expect, "Tor^2 of F_{p}[x_{d}]");
        }
    }
}

/// Criterion 2: the level-one series for Z equals the expansion of
/// F_p[x_2p] ⊗ Λ(z_2p-1), every degree through 6p, for p in {2, 3, 5}.
#[test]
fn acceptance_02_level_one_series_of_z() {
    let session = Session::default();
    for p in [2u32, 3, 5] {
        let cap = 6 * p as usize;
        let engine = session.thh_z(1, p, cap).unwrap();
        let poly = algebra::polynomial(p, 2 * p, cap).unwrap().poincare();
        let ext = algebra::exterior(p, 2 * p - 1, cap).unwrap().poincare();
        let expected = poly.convolve(&ext).unwrap();
        assert_eq!(engine.series, expected, "p = {p}");
    }
}

/// Criterion 3: the level-two series for Z equals the expansion of
/// Γ(a_2p) ⊗ Λ(y_2p+1), every degree through 6p, for p in {2, 3}.
#[test]
fn acceptance_03_level_two_series_of_z() {
    let session = Session::default();
    for p in [2u32, 3] {
        let cap = 6 * p as usize;
        let engine = session.thh_z(2, p, cap).unwrap();
        let divided = algebra::divided_power(p, 2 * p, cap).unwrap().poincare();
        let ext = algebra::exterior(p, 2 * p + 1, cap).unwrap().poincare();
        let expected = divided.convolve(&ext).unwrap();
        assert_eq!(engine.series, expected, "p = {p}");
    }
}

/// Criterion 4: the homology engine's convolution B^n(x_2p) ⊗ B^(n+1)(y_2p-2)
/// agrees with the closed-form recursion degree by degree; p = 2 with
/// n in {1, 2, 3} at cap 24, p = 3 with n in {1, 2} at cap 30.
#[test]
fn acceptance_04_tower_convolutions_match_the_closed_form() {
    let session = Session::default();
    let matrix: [(u32, &[u32], usize); 2] = [(2, &[1, 2, 3], 24), (3, &[1, 2], 30)];
    for (p, levels, cap) in matrix {
        for &n in levels {
            let engine = session.thh_z(n, p, cap).unwrap();
            let x_spec = TowerSpec {
                p,
                start: TowerStart::Polynomial { degree: 2 * p },
                iterations: (n - 1) as usize,
                cap,
            };
            let y_spec = TowerSpec {
                p,
                start: TowerStart::Polynomial { degree: 2 * p - 2 },
                iterations: n as usize,
                cap,
            };
            let xs = oracle::predict_series(&x_spec).unwrap();
            let ys = oracle::predict_series(&y_spec).unwrap();
            let predicted =
                xs[(n - 1) as usize].convolve(&ys[n as usize]).unwrap();
            for t in 0..=cap {
                assert_eq!(
                    engine.series.dims[t], predicted.dims[t],
                    "p = {p}, n = {n}, degree {t}"
                );
            }
        }
    }
}

/// Criterion 5: the ramified local series matches the closed-form convolution
/// of the |x| = 2 tower with the tower started at an exterior generator of
/// degree 1, for n in {1, 2, 3} at cap 12; at n = 1 the series is all ones.
#[test]
fn acceptance_05_ramified_local_series() {
    let session = Session::default();
    let cap = 12usize;
    for p in [2u32, 3] {
        for n in [1u32, 2, 3] {
            let engine = session
                .thh_local(n, LocalKind::Ramified, p, p as u64, cap)
                .unwrap();
            let x_spec = TowerSpec {
                p,
                start: TowerStart::Polynomial { degree: 2 },
                iterations: (n - 1) as usize,
                cap,
            };
            let y_spec = TowerSpec {
                p,
                start: TowerStart::Exterior { degree: 1 },
                iterations: (n - 1) as usize,
                cap,
            };
            let xs = oracle::predict_series(&x_spec).unwrap();
            let ys = oracle::predict_series(&y_spec).unwrap();
            let predicted =
                xs[(n - 1) as usize].convolve(&ys[(n - 1) as usize]).unwrap();
            assert_eq!(engine.series, predicted, "p = {p}, n = {n}");
            if n == 1 {
                assert_eq!(engine.series.dims, vec![1u64; cap + 1], "p = {p}");
            }
        }
    }
}

/// Criterion 6: the unramified local series serializes to exactly the same
/// bytes as the series for Z, across the whole matrix of levels and residue
/// field sizes.
#[test]
fn acceptance_06_unramified_series_byte_equals_the_series_for_z() {
    let session = Session::default();
    let cap = 12usize;
    let matrix: [(u32, &[u32]); 2] = [(2, &[1, 2, 3]), (3, &[1, 2])];
    for (p, levels) in matrix {
        for &n in levels {
            for f in 1..=3u32 {
                let q = (p as u64).pow(f);
                let local = session
                    .thh_local(n, LocalKind::Unramified, p, q, cap)
                    .unwrap();
                let global = session.thh_z(n, p, cap).unwrap();
                let a = serde_json::to_vec(&local.series).unwrap();
                let b = serde_json::to_vec(&global.series).unwrap();
                assert_eq!(a, b, "p = {p}, n = {n}, q = {q}");
            }
        }
    }
}

/// Criterion 7: factorization fixtures. x^2 - 2 ramifies at 2; x^2 + 1
/// splits at 5 into two unramified primes; HH_1 over the residue field is
/// one-dimensional at a ramified prime and zero otherwise.
#[test]
fn acceptance_07_ramification_fixtures() {
    let sqrt_two = ramification(&[-2, 0, 1], 2).unwrap();
    assert!(sqrt_two.ramified);
    assert_eq!(sqrt_two.factors.len(), 1);
    assert_eq!(sqrt_two.factors[0].multiplicity, 2);
    assert!(sqrt_two.factors[0].ramified);

    let gauss = ramification(&[1, 0, 1], 5).unwrap();
    assert!(!gauss.ramified);
    assert_eq!(gauss.factors.len(), 2);
    assert!(gauss.factors.iter().all(|f| f.multiplicity == 1 && !f.ramified));

    assert_eq!(hh1_dimension(&[-2, 0, 1], 2, 0).unwrap(), 1);
    assert_eq!(hh1_dimension(&[1, 0, 1], 5, 0).unwrap(), 0);
    assert_eq!(hh1_dimension(&[1, 0, 1], 5, 1).unwrap(), 0);
}

/// Bases whose bar complexes the property suites exercise: polynomial,
/// exterior, divided power, truncated, and a mixed-parity tensor.
fn property_bases(cap: usize) -> Vec<GradedAlgebra> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        out.push(algebra::polynomial(p, 2, cap).unwrap());
        out.push(algebra::exterior(p, 3, cap).unwrap());
        out.push(algebra::divided_power(p, 2, cap).unwrap());
        out.push(algebra::truncated_polynomial(p, 2, p, cap).unwrap());
        let ext = algebra::exterior(p, 3, cap).unwrap();
        let div = algebra::divided_power(p, 4, cap).unwrap();
        out.push(algebra::tensor(&ext, &div).unwrap());
    }
    out
}

fn apply_differential(
    cols: &[Vec<(u32, u32)>],
    v: &[(u32, u32)],
    p: u32,
) -> Vec<(u32, u32)> {
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    for &(idx, c) in v {
        for &(row, d) in &cols[idx as usize] {
            let e = acc.entry(row).or_insert(0);
            *e = gfp::add_mod(*e, gfp::mul_mod(c, d, p), p);
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn sparse_combine(
    a: &[(u32, u32)],
    b: &[(u32, u32)],
    b_scale: u32,
    p: u32,
) -> Vec<(u32, u32)> {
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    for &(i, c) in a {
        let e = acc.entry(i).or_insert(0);
        *e = gfp::add_mod(*e, c, p);
    }
    for &(i, c) in b {
        let e = acc.entry(i).or_insert(0);
        *e = gfp::add_mod(*e, gfp::mul_mod(c, b_scale, p), p);
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Criterion 8: property suites, each run with the three seeds {11, 42,
/// 1337}. (a) d∘d = 0 on every bidegree of every constructed bar complex,
/// under seed-shuffled word orders. (b) The Leibniz rule on 500 random word
/// pairs per base and seed. (c) The Euler identity: the signed column sums
/// of Tor match the inverse Hilbert series on every fully enumerated
/// internal degree. (d) Truncation stability across caps {8, 16, 24}.
/// (e) Graded-algebra invariants on every stage of a tower matrix.
#[test]
fn acceptance_08_property_suites() {
    let limits = Limits::default();
    let cap = 12usize;

    // (a) d∘d = 0 everywhere, independent of word order.
    for seed in SEEDS {
        for base in property_bases(cap) {
            let bar =
                BarComplex::build_with_order(&base, cap, limits, WordOrder::Shuffled(seed))
                    .unwrap();
            for (s, t) in bar.bidegree_list() {
                if s < 2 {
                    continue;
                }
                let upper = bar.differential_columns(s, t).unwrap();
                let lower = bar.differential_columns(s - 1, t).unwrap();
                for col in &upper {
                    let composed = apply_differential(&lower, col, bar.p());
                    assert!(
                        composed.is_empty(),
                        "d∘d != 0 at ({s}, {t}) with seed {seed}"
                    );
                }
            }
        }
    }

    // (b) Leibniz: d(a*b) = da*b + (-1)^(|a|) a*db on random word pairs.
    for seed in SEEDS {
        for base in property_bases(cap) {
            let bar = BarComplex::build(&base, cap, limits).unwrap();
            let p = bar.p();
            let mut diff_cache: BTreeMap<(u32, u32), Vec<Vec<(u32, u32)>>> = BTreeMap::new();
            let mut cols = |bar: &BarComplex, s: u32, t: u32| -> Vec<Vec<(u32, u32)>> {
                diff_cache
                    .entry((s, t))
                    .or_insert_with(|| bar.differential_columns(s, t).unwrap())
                    .clone()
            };
            let positive: Vec<(u32, u32)> = bar
                .bidegree_list()
                .into_iter()
                .filter(|&(s, t)| s >= 1 && !bar.words(s, t).is_empty())
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0usize;
            let mut attempts = 0usize;
            while checked < 500 && attempts < 50_000 {
                attempts += 1;
                let &(s1, t1) = positive.choose(&mut rng).unwrap();
                let &(s2, t2) = positive.choose(&mut rng).unwrap();
                if (s1 + s2 + t1 + t2) as usize > cap {
                    continue;
                }
                let i1 = rng.random_range(0..bar.words(s1, t1).len()) as u32;
                let i2 = rng.random_range(0..bar.words(s2, t2).len()) as u32;
                let a = vec![(i1, 1u32)];
                let b = vec![(i2, 1u32)];

                let product = bar.shuffle((s1, t1), &a, (s2, t2), &b).unwrap();
                let lhs =
                    apply_differential(&cols(&bar, s1 + s2, t1 + t2), &product, p);

                let da = cols(&bar, s1, t1)[i1 as usize].clone();
                let db = cols(&bar, s2, t2)[i2 as usize].clone();
                let da_b = bar.shuffle((s1 - 1, t1), &da, (s2, t2), &b).unwrap();
                let a_db = bar.shuffle((s1, t1), &a, (s2 - 1, t2), &db).unwrap();
                let sign = if (s1 + t1) % 2 == 0 { 1 } else { p - 1 };
                let rhs = sparse_combine(&da_b, &a_db, sign, p);

                assert_eq!(lhs, rhs, "Leibniz failed with seed {seed}");
                checked += 1;
            }
            assert_eq!(checked, 500, "not enough usable pairs");
        }
    }

    // (c) Euler identity against the inverse Hilbert series.
    for base in property_bases(cap) {
        let t = tor(&base, cap, limits).unwrap();
        t.euler_check(&base).unwrap();
    }

    // (d) Truncation stability: a bigger cap restricts to the smaller one.
    for (p, d, exterior) in [(2u32, 2u32, false), (3, 3, true), (3, 2, false)] {
        let build = |cap: usize| -> GradedAlgebra {
            if exterior {
                algebra::exterior(p, d, cap).unwrap()
            } else {
                algebra::polynomial(p, d, cap).unwrap()
            }
        };
        let runs: Vec<_> = [8usize, 16, 24]
            .iter()
            .map(|&cap| (cap, tor(&build(cap), cap, limits).unwrap()))
            .collect();
        for small in &runs {
            for big in &runs {
                if small.0 >= big.0 {
                    continue;
                }
                for (&(s, t), &dim) in big.1.bidims() {
                    if (s + t) as usize <= small.0 {
                        assert_eq!(
                            small.1.bidim(s, t),
                            dim,
                            "caps {} vs {} at ({s}, {t})",
                            small.0,
                            big.0
                        );
                    }
                }
                for (&(s, t), &dim) in small.1.bidims() {
                    assert_eq!(big.1.bidim(s, t), dim, "extra class at ({s}, {t})");
                }
            }
        }
    }

    // (e) Multiplication-table invariants on every stage of a tower matrix.
    let towers = [
        TowerSpec { p: 2, start: TowerStart::Polynomial { degree: 2 }, iterations: 3, cap: 12 },
        TowerSpec { p: 2, start: TowerStart::Exterior { degree: 1 }, iterations: 3, cap: 10 },
        TowerSpec { p: 3, start: TowerStart::Polynomial { degree: 4 }, iterations: 2, cap: 20 },
        TowerSpec { p: 5, start: TowerStart::Polynomial { degree: 2 }, iterations: 2, cap: 12 },
    ];
    for spec in towers {
        let stages = run_tower(&spec, limits).unwrap();
        for (k, stage) in stages.iter().enumerate() {
            for seed in SEEDS {
                stage
                    .check_invariants(seed)
                    .unwrap_or_else(|e| panic!("stage {} of {spec:?}: {e}", k + 1));
            }
        }
    }
}

/// Criterion 9: a deliberately perturbed recursion rule is caught, and the
/// report names the first divergent (stage, degree); the honest rule passes
/// the same matrix.
#[test]
fn acceptance_09_perturbed_oracle_is_caught_and_located() {
    let fault = VerifyConfig {
        fault: Some(OracleFault::ShiftPolynomialSuspension),
        ..VerifyConfig::default()
    };
    let report = verify::run(&fault).unwrap();
    let d = report.divergence.expect("the perturbed rule must diverge");
    assert_eq!((d.stage, d.degree), (2, 5));
    let line = d.to_string();
    assert!(line.contains("stage 2"), "{line}");
    assert!(line.contains("degree 5"), "{line}");

    let clean = verify::run(&VerifyConfig::default()).unwrap();
    assert!(clean.divergence.is_none(), "{:?}", clean.divergence);
    assert!(clean.comparisons > 0);
}

/// Larger matrix for unattended runs; several minutes.
#[test]
#[ignore]
fn stress_wider_matrix() {
    let session = Session::default();
    for p in [2u32, 3, 5] {
        let engine = session.thh_z(2, p, 40).unwrap();
        let divided = algebra::divided_power(p, 2 * p, 40).unwrap().poincare();
        let ext = algebra::exterior(p, 2 * p + 1, 40).unwrap().poincare();
        assert_eq!(engine.series, divided.convolve(&ext).unwrap(), "p = {p}");
    }
    let config = VerifyConfig {
        primes: vec![2, 3, 5],
        iterations: 3,
        cap: 30,
        ..VerifyConfig::default()
    };
    let report = verify::run(&config).unwrap();
    assert!(report.divergence.is_none(), "{:?}", report.divergence);
}
