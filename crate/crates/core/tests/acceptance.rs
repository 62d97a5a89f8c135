//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every
//! comparison is bit-exact rational equality.

use std::collections::BTreeSet;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyplex_core::constructions::{gale_ryser_exists, young_diagrams};
use polyplex_core::covers::{check_licq, check_upper_indices, cover_is_unique, deficiency, min_cover};
use polyplex_core::extremal::{is_diagonally_extremal, is_extremal};
use polyplex_core::lp::{Goal, LpProblem, Sense};
use polyplex_core::matching::{max_polyplex, verify_slackness};
use polyplex_core::rat::{rat, rint, Rat};
use polyplex_core::search::{
    construction_corpus, enumerate_stepped_raw, extremal_stepped_classes, load_fixtures,
    run_conjecture_harness, SweepConfig, SweepMode,
};
use polyplex_core::tensor::BinaryTensor;
use polyplex_core::CoverTable;
use polyplex_core::Polyplex;

fn pass(criterion: usize, message: &str) {
    println!("criterion {criterion}: PASS - {message}");
}

/// Independent route to the minimum cover weight: the covering program
/// solved as a primal minimization (exercising the two-phase path), not the
/// shadow prices of the packing program.
fn cover_weight_by_primal_lp(a: &BinaryTensor) -> Rat {
    let d = a.d();
    let n = a.n();
    let mut lp = LpProblem::new(vec![Rat::one(); d * n]);
    for idx in a.support() {
        let mut coeffs = vec![Rat::from_integer(0.into()); d * n];
        for (i, &c) in idx.coords().iter().enumerate() {
            coeffs[i * n + (c - 1)] = Rat::one();
        }
        lp.push_row(coeffs, Sense::Ge, Rat::one()).unwrap();
    }
    let sol = lp.solve(Goal::Minimize).unwrap();
    assert!(sol.is_optimal());
    sol.objective_value
}

#[test]
fn criterion_01_fixture_gate() {
    let set = load_fixtures().unwrap();
    assert_eq!(set.core.len(), 25);
    for f in set.core.iter().chain(std::iter::once(&set.b_order5)) {
        assert_eq!(deficiency(&f.tensor), f.deficiency, "{}: deficiency", f.name);
        let (weight, cover) = min_cover(&f.tensor);
        assert_eq!(
            weight,
            rint(f.tensor.n() as i64) - &f.deficiency,
            "{}: cover weight",
            f.name
        );
        assert_eq!(cover, f.cover, "{}: cover table", f.name);
    }
    pass(1, "all 25 catalogued matrices (plus the order-5 host) reproduce their deficiency and cover exactly");
}

#[test]
fn criterion_02_duality() {
    // every 2-dimensional order-3 matrix
    for bits in 0u32..(1 << 9) {
        let cells: Vec<bool> = (0..9).map(|i| bits >> i & 1 == 1).collect();
        let a = BinaryTensor::from_cells(2, 3, cells).unwrap();
        let (w, _) = max_polyplex(&a);
        assert_eq!(w, cover_weight_by_primal_lp(&a), "d2n3 bits={bits}");
    }
    // 500 seeded random 3-dimensional order-3 matrices
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..500 {
        let cells: Vec<bool> = (0..27).map(|_| rng.gen_bool(0.5)).collect();
        let a = BinaryTensor::from_cells(3, 3, cells).unwrap();
        let (w, _) = max_polyplex(&a);
        assert_eq!(w, cover_weight_by_primal_lp(&a), "d3n3 trial={trial}");
    }
    pass(2, "max polyplex weight equals min cover weight on 512 exhaustive and 500 random instances");
}

#[test]
fn criterion_03_two_dimensional_characterization() {
    for n in 1..=4usize {
        let sweep = extremal_stepped_classes(2, n, 1 << 20).unwrap();
        // expected: k full rows plus l full columns with k + l = n - 1, up
        // to equivalence (swapping the roles of rows and columns)
        let mut expected = BTreeSet::new();
        for k in 0..n {
            let l = n - 1 - k;
            let mut cells = vec![false; n * n];
            for r in 0..k {
                for c in 0..n {
                    cells[r * n + c] = true;
                }
            }
            for c in 0..l {
                for r in 0..n {
                    cells[r * n + c] = true;
                }
            }
            let t = BinaryTensor::from_cells(2, n, cells).unwrap();
            expected.insert(t.canonical_form().unwrap().cells().to_vec());
        }
        let found: BTreeSet<Vec<bool>> = sweep
            .findings
            .iter()
            .map(|f| f.canonical.cells().to_vec())
            .collect();
        assert_eq!(found, expected, "n={n}");
        for f in &sweep.findings {
            assert_eq!(f.verdict.deficiency, rint(1), "n={n}");
        }
        // closed form: unordered splits {k, n-1-k}
        let splits: BTreeSet<(usize, usize)> = (0..n)
            .map(|k| {
                let l = n - 1 - k;
                (k.min(l), k.max(l))
            })
            .collect();
        assert_eq!(sweep.findings.len(), splits.len(), "n={n}");
    }
    pass(3, "2-dimensional extremal matrices are exactly the row/column patterns with deficiency 1, in the right count");
}

#[test]
fn criterion_04_order_two_characterization() {
    let mut deficiencies = BTreeSet::new();
    for d in 2..=4usize {
        let cells_count = 1usize << d;
        for bits in 0u64..(1 << cells_count) {
            let cells: Vec<bool> = (0..cells_count).map(|i| bits >> i & 1 == 1).collect();
            let a = BinaryTensor::from_cells(d, 2, cells).unwrap();
            let antipodal = a.is_antipodal().unwrap();
            let v = is_extremal(&a);
            let expected = antipodal && !v.has_polydiagonal;
            assert_eq!(
                v.is_extremal, expected,
                "d={d} bits={bits:b}: extremal iff antipodal without polydiagonal"
            );
            if v.is_extremal {
                deficiencies.insert(v.deficiency.clone());
            }
        }
    }
    let allowed: BTreeSet<Rat> = [rint(1), rat(1, 2), rat(1, 3)].into_iter().collect();
    assert!(deficiencies.is_subset(&allowed), "found {deficiencies:?}");
    pass(4, "exhaustive order-2 sweep (d <= 4): extremal iff antipodal without polydiagonal; deficiencies within {1, 1/2, 1/3}");
}

#[test]
fn criterion_05_construction_soundness() {
    let fixtures = load_fixtures().unwrap();
    let corpus = construction_corpus(&fixtures, Some(100));
    assert_eq!(corpus.len(), 100, "the generators yield at least 100 matrices");
    for g in &corpus {
        let v = is_extremal(&g.tensor);
        assert!(v.is_extremal, "{} not extremal", g.name);
        assert_eq!(v.deficiency, g.predicted_deficiency, "{} deficiency", g.name);
        let diag = is_diagonally_extremal(&g.tensor).unwrap();
        assert!(diag.holds, "{} not diagonally extremal", g.name);
        let uniq = cover_is_unique(&g.tensor);
        assert!(uniq.unique, "{} cover not unique", g.name);
        if let Some(cover) = &g.predicted_cover {
            assert_eq!(&min_cover(&g.tensor).1, cover, "{} cover", g.name);
        }
    }
    pass(5, "100 generated matrices are extremal with the predicted deficiency, diagonally extremal, with unique covers");
}

#[test]
fn criterion_06_non_reversibility_regression() {
    let set = load_fixtures().unwrap();
    let induced = set.reduced_cover.induced_matrix();
    let v = is_extremal(&induced);
    assert!(!v.is_extremal, "the reduced table's matrix must not be extremal");
    let host = set.order4_host();
    assert!(induced.contained_in(&host.tensor));
    assert!(induced != host.tensor, "containment must be strict");

    let b = &set.b_order5;
    assert_eq!(deficiency(&b.tensor), rat(1, 5));
    let (w, cover) = min_cover(&b.tensor);
    assert_eq!(w, rat(24, 5));
    assert_eq!(cover, b.cover);
    pass(6, "the reduced-table matrix is not extremal and sits strictly inside the order-4 host; the order-5 host has its printed cover and deficiency 1/5");
}

#[test]
fn criterion_07_six_dimensional_counterexample() {
    let set = load_fixtures().unwrap();
    assert!(set.six_dim.is_antipodal().unwrap());
    let (w, k) = max_polyplex(&set.six_dim);
    assert_eq!(w, rint(2), "polydiagonal weight");
    k.validate_in(&set.six_dim).unwrap();
    let v = is_extremal(&set.six_dim);
    assert!(v.has_polydiagonal && !v.is_extremal);
    pass(7, "the 6-dimensional antipodal matrix has a polydiagonal of weight exactly 2 and is excluded from extremality");
}

#[test]
fn criterion_08_young_diagram_count() {
    for (d, n) in [(3usize, 4usize), (2, 4)] {
        let sweep = extremal_stepped_classes(d, n, 1 << 20).unwrap();
        let found = sweep
            .findings
            .iter()
            .filter(|f| f.verdict.deficiency == rint(1))
            .count();
        let expected = young_diagrams(n - 1, d, n - 1).len();
        assert_eq!(found, expected, "(d,n)=({d},{n})");
    }
    pass(8, "deficiency-1 classes match the partition counts: 3 for (d=3,n=4), 2 for (d=2,n=4)");
}

#[test]
fn criterion_09_property_suites() {
    // (a) complementary slackness for independently computed optimal pairs
    let set = load_fixtures().unwrap();
    let mut corpus: Vec<BinaryTensor> = set.core.iter().map(|f| f.tensor.clone()).collect();
    corpus.push(set.b_order5.tensor.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let d: usize = rng.gen_range(2..=3);
        let n: usize = rng.gen_range(2..=3);
        let cells: Vec<bool> = (0..n.pow(d as u32)).map(|_| rng.gen_bool(0.6)).collect();
        corpus.push(BinaryTensor::from_cells(d, n, cells).unwrap());
    }
    for a in &corpus {
        let (_, k) = max_polyplex(a);
        let (_, cover) = min_cover(a);
        let report = verify_slackness(a, &k, &cover).unwrap();
        assert!(report.certifies_optimality());
        assert_eq!(report.polyplex_weight, report.cover_weight);
    }

    // (b) the sufficient certificates never contradict the exact probe
    let mut extremal_corpus: Vec<(String, BinaryTensor)> = set
        .core
        .iter()
        .map(|f| (f.name.to_string(), f.tensor.clone()))
        .collect();
    for f in extremal_stepped_classes(3, 3, 1 << 20).unwrap().findings {
        extremal_corpus.push(("stepped_d3n3".into(), f.canonical));
    }
    for (name, a) in &extremal_corpus {
        let (_, k) = max_polyplex(a);
        let licq = check_licq(a, &k).unwrap();
        let upper = check_upper_indices(&min_cover(a).1);
        let unique = cover_is_unique(a).unique;
        assert!(!licq || unique, "{name}: independence certificate vs probe");
        assert!(!upper || unique, "{name}: upper-index certificate vs probe");
    }

    // (c) Gale-Ryser against brute force over all 0/1 matrices up to 4x4
    for rows_n in 1..=4usize {
        for cols_n in 1..=4usize {
            let mut realizable: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
            for bits in 0u64..(1 << (rows_n * cols_n)) {
                let mut r = vec![0usize; rows_n];
                let mut s = vec![0usize; cols_n];
                for i in 0..rows_n {
                    for j in 0..cols_n {
                        if bits >> (i * cols_n + j) & 1 == 1 {
                            r[i] += 1;
                            s[j] += 1;
                        }
                    }
                }
                r.sort_unstable_by(|a, b| b.cmp(a));
                s.sort_unstable_by(|a, b| b.cmp(a));
                realizable.insert((r, s));
            }
            // all nonincreasing candidate pairs with equal sums
            let candidates = |len: usize, max: usize| -> Vec<Vec<usize>> {
                let mut out: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..len {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            let cap = prefix.last().copied().unwrap_or(max);
                            (0..=cap).map(move |v| {
                                let mut next = prefix.clone();
                                next.push(v);
                                next
                            })
                        })
                        .collect();
                }
                out
            };
            for r in candidates(rows_n, cols_n) {
                for s in candidates(cols_n, rows_n) {
                    if r.iter().sum::<usize>() != s.iter().sum::<usize>() {
                        continue;
                    }
                    let expected = realizable.contains(&(r.clone(), s.clone()));
                    assert_eq!(
                        gale_ryser_exists(&r, &s).unwrap(),
                        expected,
                        "r={r:?} s={s:?}"
                    );
                }
            }
        }
    }
    pass(9, "slackness certified on every computed pair; certificates consistent with probing; degree-sequence test matches brute force up to 4x4");
}

#[test]
fn criterion_10_conjecture_harness() {
    let witness_dir = std::env::temp_dir().join("polyplex_witnesses");
    let _ = std::fs::create_dir_all(&witness_dir);

    // fixtures + constructions
    let corpus_cfg = SweepConfig {
        witness_dir: Some(witness_dir.clone()),
        ..SweepConfig::corpus_only()
    };
    let corpus_report = run_conjecture_harness(&corpus_cfg).unwrap();
    assert!(
        corpus_report.headline_clean(),
        "corpus run:\n{}",
        corpus_report.render()
    );
    assert!(corpus_report.extremal_instances >= 100);

    // exhaustive small stepped sweeps
    let stepped_cfg = SweepConfig {
        mode: SweepMode::SteppedExhaustive,
        witness_dir: Some(witness_dir.clone()),
        ..SweepConfig::empty().with_ranges((2, 3), (2, 3))
    };
    let stepped_report = run_conjecture_harness(&stepped_cfg).unwrap();
    assert!(
        stepped_report.headline_clean(),
        "stepped run:\n{}",
        stepped_report.render()
    );

    // exhaustive antipodal order-2 sweeps
    let antipodal_cfg = SweepConfig {
        mode: SweepMode::AntipodalOrder2,
        witness_dir: Some(witness_dir),
        ..SweepConfig::empty().with_ranges((2, 4), (2, 2))
    };
    let antipodal_report = run_conjecture_harness(&antipodal_cfg).unwrap();
    assert!(
        antipodal_report.headline_clean(),
        "antipodal run:\n{}",
        antipodal_report.render()
    );

    for report in [&corpus_report, &stepped_report, &antipodal_report] {
        assert!(report.witness_files.is_empty(), "no witnesses expected");
        assert!(report.unique_cover.clean());
        assert!(report.deficiency_reciprocal.clean());
        assert!(report.cover_multiples_of_deficiency.clean());
        assert!(report.diagonal_extremality.clean());
    }
    pass(10, "zero counterexamples across fixtures, constructions, and exhaustive small sweeps");
}

/// The sweep of 3-dimensional order-3 stepped matrices finds exactly the
/// catalogued classes plus construction-reachable ones.
#[test]
fn d3n3_sweep_accounts_for_every_class() {
    let set = load_fixtures().unwrap();
    let sweep = extremal_stepped_classes(3, 3, 1 << 20).unwrap();
    let found: BTreeSet<Vec<bool>> = sweep
        .findings
        .iter()
        .map(|f| f.canonical.cells().to_vec())
        .collect();

    // the two catalogued 3-dimensional order-3 matrices are present
    let mut accounted = BTreeSet::new();
    for f in set.core.iter().filter(|f| f.tensor.d() == 3 && f.tensor.n() == 3) {
        let c = f.tensor.canonical_form().unwrap().cells().to_vec();
        assert!(found.contains(&c), "{} missing from the sweep", f.name);
        accounted.insert(c);
    }
    // every other class is construction-reachable: a two-value cover
    for g in construction_corpus(&set, None) {
        if g.tensor.d() == 3 && g.tensor.n() == 3 {
            accounted.insert(g.tensor.canonical_form().unwrap().cells().to_vec());
        }
    }
    assert_eq!(found, accounted, "unexplained extremal classes in the d=3, n=3 sweep");
}

/// Round-trip stability of the witness formats used by the harness.
#[test]
fn witness_formats_reparse() {
    let set = load_fixtures().unwrap();
    let f = &set.core[0];
    assert_eq!(
        BinaryTensor::parse_text(&f.tensor.to_text()).unwrap(),
        f.tensor
    );
    assert_eq!(CoverTable::parse_text(&f.cover.to_text()).unwrap(), f.cover);
    let (_, k) = max_polyplex(&f.tensor);
    assert_eq!(Polyplex::parse_text(&k.to_text()).unwrap(), k);
}
