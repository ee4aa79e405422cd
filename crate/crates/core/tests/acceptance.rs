//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use klab_core::closed_forms::{self, Variant};
use klab_core::graph::FamilySpec;
use klab_core::invariants;
use klab_core::rational::{int, rat, Scalar};
use klab_core::spectral::{self, analytic, MirrorPairing};
use klab_core::sweep;

fn assert_criterion(number: u32, description: &str, ok: bool, detail: String) {
    println!(
        "criterion {number} ({description}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} ({description}) failed: {detail}");
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn criterion_1_intact_kirchhoff_and_tree_count() {
    let mut failures = Vec::new();
    for n in 2..=12usize {
        let graph = FamilySpec::intact(n).unwrap().build();
        let kf = invariants::kirchhoff_index(&graph).unwrap();
        let kf_formula = closed_forms::kf_full(n).unwrap();
        if kf != kf_formula {
            failures.push(format!("kf n={n}: oracle {kf} formula {kf_formula}"));
        }
        let tau = invariants::spanning_trees(&graph);
        let tau_formula = closed_forms::tau_full(n).unwrap();
        if tau != tau_formula {
            failures.push(format!("tau n={n}: oracle {tau} formula {tau_formula}"));
        }
        if n == 2 && (kf != int(5) || tau != BigInt::from(4)) {
            failures.push(format!("spot n=2: kf {kf} tau {tau}"));
        }
        if n == 3 && (kf != rat(71, 5) || tau != BigInt::from(15)) {
            failures.push(format!("spot n=3: kf {kf} tau {tau}"));
        }
    }
    assert_criterion(
        1,
        "intact-prism Kirchhoff and tree count, exact, n = 2..12",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_2_intact_mult_deg_kirchhoff() {
    let mut failures = Vec::new();
    for n in 2..=12usize {
        let graph = FamilySpec::intact(n).unwrap().build();
        let oracle = invariants::mult_deg_kirchhoff_index(&graph).unwrap();
        let formula = closed_forms::kfstar_full(n).unwrap();
        if oracle != formula {
            failures.push(format!("kf* n={n}: oracle {oracle} formula {formula}"));
        }
        if n == 2 && oracle != int(20) {
            failures.push(format!("spot n=2: kf* {oracle}"));
        }
        // Spectral route. Exact through the analytic spectrum, floating
        // through the numeric normalized Laplacian within 1e-8 relative.
        let exact_route =
            invariants::kfstar_from_spectrum(&analytic::star_prism_normalized(n).unwrap(), graph.edge_count())
                .unwrap();
        if exact_route != Scalar::Exact(oracle.clone()) {
            failures.push(format!("exact spectral route n={n}: {exact_route:?}"));
        }
        let numeric = spectral::normalized_laplacian(&graph)
            .unwrap()
            .numeric_spectrum(1e-9)
            .unwrap();
        let float_route = invariants::kfstar_from_spectrum(&numeric, graph.edge_count()).unwrap();
        if !float_route.agrees_with(&Scalar::Exact(oracle.clone()), 1e-8) {
            failures.push(format!("float spectral route n={n}: {float_route:?} vs {oracle}"));
        }
    }
    assert_criterion(
        2,
        "intact-prism multiplicative degree-Kirchhoff, n = 2..12",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_3_deleted_family_exhaustive() {
    let mut failures = Vec::new();
    let mut instances = 0usize;
    for n in 2..=10usize {
        for r in 0..n {
            for deleted in sweep::subsets_exhaustive(n, r) {
                let spec = FamilySpec::new(n, deleted).unwrap();
                let center_deleted = spec.center_deleted();
                let graph = spec.build();
                instances += 1;

                let kf = invariants::kirchhoff_index(&graph).unwrap();
                let kf_formula = closed_forms::kf_deleted(n, r, center_deleted, Variant::Corrected).unwrap();
                if kf != kf_formula {
                    failures.push(format!("kf {spec:?}: {kf} vs {kf_formula}"));
                }

                let tau = invariants::spanning_trees(&graph);
                let tau_formula =
                    closed_forms::tau_deleted(n, r, center_deleted, Variant::Corrected).unwrap();
                if tau != tau_formula {
                    failures.push(format!("tau {spec:?}: {tau} vs {tau_formula}"));
                }

                let wiener = invariants::wiener_index(&graph).unwrap();
                let wiener_formula =
                    closed_forms::wiener_deleted(n, r, center_deleted, Variant::Corrected).unwrap();
                if wiener != wiener_formula {
                    failures.push(format!("wiener {spec:?}: {wiener} vs {wiener_formula}"));
                }

                // Spot values. The two single-rung deletions of the 2-prism
                // both leave the 4-path; at n = 4, r = 2 the class with the
                // center rung cut carries (134/3, 6) and the kept-center
                // class (46, 4), as the oracle dictates.
                if n == 2 && r == 1 && (kf != int(10) || tau != BigInt::from(1)) {
                    failures.push(format!("spot (2,1): kf {kf} tau {tau}"));
                }
                if n == 4 && r == 2 {
                    let expected = if center_deleted {
                        (rat(134, 3), BigInt::from(6))
                    } else {
                        (int(46), BigInt::from(4))
                    };
                    if kf != expected.0 || tau != expected.1 {
                        failures.push(format!("spot (4,2,{center_deleted}): kf {kf} tau {tau}"));
                    }
                }
            }
        }
    }
    // Formula equality across every subset of a class is exactly the claim
    // that the invariants depend only on (r, center status).
    assert_criterion(
        3,
        "deleted family Kf/tau/W vs corrected closed forms, exhaustive n = 2..10",
        failures.is_empty() && instances == 2035,
        format!("{instances} instances; {}", failures.join("; ")),
    );
}

#[test]
fn criterion_4_statement_variant_rejected() {
    // The published kept-center case formulas evaluated at n = 2, r = 1.
    let kf_statement = closed_forms::kf_deleted(2, 1, false, Variant::Statement).unwrap();
    let tau_statement = closed_forms::tau_deleted(2, 1, false, Variant::Statement).unwrap();

    let graph = FamilySpec::new(2, [2]).unwrap().build();
    let kf_oracle = invariants::kirchhoff_index(&graph).unwrap();
    let tau_oracle = invariants::spanning_trees(&graph);

    let ok = kf_statement == int(-30)
        && tau_statement == BigInt::from(81)
        && kf_oracle == int(10)
        && tau_oracle == BigInt::from(1)
        && kf_statement != kf_oracle
        && tau_statement != tau_oracle;
    assert_criterion(
        4,
        "statement-variant kept-center formulas disagree with the oracle at (2,1)",
        ok,
        format!("statement ({kf_statement}, {tau_statement}) oracle ({kf_oracle}, {tau_oracle})"),
    );
}

#[test]
fn criterion_5_mirror_decomposition() {
    let mut failures = Vec::new();
    for n in 2..=10usize {
        for r in 0..n {
            for deleted in sweep::subsets_sampled(n, r, 5, 0xC0FFEE) {
                let spec = FamilySpec::new(n, deleted).unwrap();
                let graph = spec.build();
                let lap = spectral::laplacian(&graph);
                let full = spectral::numeric_spectrum(&lap, 1e-9).unwrap().to_floats();
                let (sum, diff) = spectral::mirror_split(&lap, &MirrorPairing::new(n)).unwrap();
                let mut union = spectral::numeric_spectrum(&sum, 1e-9).unwrap().to_floats();
                union.extend(spectral::numeric_spectrum(&diff, 1e-9).unwrap().to_floats());
                union.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let gap = max_gap(&full, &union);
                if gap > 1e-9 {
                    failures.push(format!("{spec:?}: gap {gap}"));
                }
            }
        }
    }
    assert_criterion(
        5,
        "mirror split spectra union equals full spectrum, n = 2..10",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_6_analytic_spectra_and_traces() {
    let mut failures = Vec::new();
    for n in 2..=12usize {
        let graph = FamilySpec::intact(n).unwrap().build();

        let lap_analytic = analytic::star_prism_laplacian(n).unwrap();
        let lap_numeric = spectral::numeric_spectrum(&spectral::laplacian(&graph), 1e-9).unwrap();
        let gap = max_gap(&lap_analytic.to_floats(), &lap_numeric.to_floats());
        if gap > 1e-9 {
            failures.push(format!("laplacian n={n}: gap {gap}"));
        }

        let nl_analytic = analytic::star_prism_normalized(n).unwrap();
        let nl_numeric = spectral::normalized_laplacian(&graph)
            .unwrap()
            .numeric_spectrum(1e-9)
            .unwrap();
        let gap = max_gap(&nl_analytic.to_floats(), &nl_numeric.to_floats());
        if gap > 1e-9 {
            failures.push(format!("normalized n={n}: gap {gap}"));
        }

        // Exact trace identities on the analytic spectra.
        let edge_sum = lap_analytic.exact_sum().unwrap();
        if edge_sum != int(2 * (3 * n as i64 - 2)) {
            failures.push(format!("laplacian trace n={n}: {edge_sum}"));
        }
        let vertex_sum = nl_analytic.exact_sum().unwrap();
        if vertex_sum != int(2 * n as i64) {
            failures.push(format!("normalized trace n={n}: {vertex_sum}"));
        }
    }
    assert_criterion(
        6,
        "analytic spectra match numeric spectra and exact traces, n = 2..12",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_7_asymptotic_ratios() {
    let mut failures = Vec::new();
    let kf_limit = rat(8, 15);
    let kfstar_limit = rat(16, 33);
    for n in [10usize, 100, 1000, 10000] {
        let envelope = BigRational::new(BigInt::from(2), BigInt::from(n as u64));
        for (r, center_deleted) in [(0, false), (1, false), (1, true), (3, false), (3, true)] {
            let ratio = closed_forms::ratio_kf_wiener(n, r, center_deleted).unwrap();
            let err = (&ratio - &kf_limit).abs();
            if err > envelope {
                failures.push(format!("kf/w n={n} r={r} cd={center_deleted}: err {err}"));
            }
        }
        let envelope = BigRational::new(BigInt::from(4), BigInt::from(n as u64));
        let ratio = closed_forms::ratio_kfstar_gutman(n).unwrap();
        let err = (&ratio - &kfstar_limit).abs();
        if err > envelope {
            failures.push(format!("kf*/gut n={n}: err {err}"));
        }
    }
    // Both ratios within one percent of their limits at n = 1000.
    let one_percent = rat(1, 100);
    let ratio = closed_forms::ratio_kf_wiener(1000, 0, false).unwrap();
    if (&ratio - &kf_limit).abs() / &kf_limit > one_percent {
        failures.push(format!("kf/w at 1000 off by more than 1%: {ratio}"));
    }
    let ratio = closed_forms::ratio_kfstar_gutman(1000).unwrap();
    if (&ratio - &kfstar_limit).abs() / &kfstar_limit > one_percent {
        failures.push(format!("kf*/gut at 1000 off by more than 1%: {ratio}"));
    }
    assert_criterion(
        7,
        "ratio envelopes |Kf/W - 8/15| <= 2/n and |Kf*/Gut - 16/33| <= 4/n",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_8_oracle_self_consistency() {
    let mut failures = Vec::new();
    let mut corpus = Vec::new();
    for n in 2..=6usize {
        for r in 0..n {
            for deleted in sweep::subsets_exhaustive(n, r) {
                corpus.push(FamilySpec::new(n, deleted).unwrap());
            }
        }
    }
    assert!(corpus.len() >= 100, "corpus has {} instances", corpus.len());

    for spec in &corpus {
        let graph = spec.build();
        let order = graph.vertex_count();
        let grounded = invariants::resistance_matrix(&graph).unwrap();
        let pseudo = invariants::resistance_matrix_pseudoinverse(&graph).unwrap();
        if grounded != pseudo {
            failures.push(format!("routes differ for {spec:?}"));
        }

        let dist = graph.distance_matrix().unwrap();
        for i in 0..order {
            if !grounded.entry(i, i).is_zero() {
                failures.push(format!("nonzero diagonal for {spec:?}"));
            }
            for j in 0..order {
                if grounded.entry(i, j) != grounded.entry(j, i) {
                    failures.push(format!("asymmetry for {spec:?}"));
                }
                if i != j {
                    let r_ij = grounded.entry(i, j);
                    if !r_ij.is_positive() || r_ij > &int(dist[i][j] as i64) {
                        failures.push(format!("bound violated at ({i},{j}) for {spec:?}"));
                    }
                }
                for k in 0..order {
                    if grounded.entry(i, k) > &(grounded.entry(i, j) + grounded.entry(j, k)) {
                        failures.push(format!("triangle violated at ({i},{j},{k}) for {spec:?}"));
                    }
                }
            }
        }

        let reference = invariants::spanning_trees_grounded(&graph, 0);
        for k in 1..order {
            if invariants::spanning_trees_grounded(&graph, k) != reference {
                failures.push(format!("row choice changed tau for {spec:?}"));
            }
        }
    }

    // Tree equality: resistance equals distance on trees.
    for tree in (2..=10).map(|n| klab_core::star(n).unwrap()).chain(
        (2..=10).map(|n| klab_core::Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()),
    ) {
        let r = invariants::resistance_matrix(&tree).unwrap();
        let dist = tree.distance_matrix().unwrap();
        for i in 0..tree.vertex_count() {
            for j in 0..tree.vertex_count() {
                if r.entry(i, j) != &int(dist[i][j] as i64) {
                    failures.push(format!("tree inequality at ({i},{j})"));
                }
            }
        }
    }

    assert_criterion(
        8,
        "oracle self-consistency over the n <= 6 corpus",
        failures.is_empty(),
        failures.join("; "),
    );
}
