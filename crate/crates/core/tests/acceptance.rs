//! Acceptance suite: one test per criterion, each printing a PASS line when
//! it holds (run with `--nocapture` to see the report). Every tolerance is
//! exact integer or structural equality.

use num::BigUint;

use ukd_core::counting::{
    build_transfer_graph, count_bruteforce, count_via_transfer, factorial, series,
    TransferVariant,
};
use ukd_core::determinacy::{is_uniquely_determined, key_bijection, key_bijection_inverse, window_path};
use ukd_core::gf::{fit_rational_gf, gf_reference_k3};
use ukd_core::overlap::realize_path;
use ukd_core::path_scheme::{bounds, enumerate_hamiltonian_paths, phi, phi_inverse, PathScheme};
use ukd_core::perm::all_permutations;
use ukd_core::poset::{m_distribution, m_index, poset_from_permutation};
use ukd_core::prohibitions::{extension_witness, find_crucial, generate_prohibitions};
use ukd_core::{Limits, Permutation};

fn limits() -> Limits {
    Limits::default()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Known counts of uniquely k-determined n-permutations, rows k = 2..=8,
/// columns n = 1..=9.
const KNOWN_COUNTS: [[u64; 9]; 7] = [
    [1, 2, 2, 2, 2, 2, 2, 2, 2],
    [1, 2, 6, 12, 20, 34, 56, 88, 136],
    [1, 2, 6, 24, 72, 180, 428, 1042, 2512],
    [1, 2, 6, 24, 120, 480, 1632, 5124, 15860],
    [1, 2, 6, 24, 120, 720, 3600, 15600, 61872],
    [1, 2, 6, 24, 120, 720, 5040, 30240, 159840],
    [1, 2, 6, 24, 120, 720, 5040, 40320, 282240],
];

#[test]
fn criterion_01_known_count_table() {
    let limits = limits();
    for (row, counts) in KNOWN_COUNTS.iter().enumerate() {
        let k = row + 2;
        for (col, &expected) in counts.iter().enumerate() {
            let n = col + 1;
            assert_eq!(
                count_bruteforce(k, n, &limits).unwrap(),
                big(expected),
                "count mismatch at k={k}, n={n}"
            );
        }
    }
    println!("criterion 01 (count table reproduction, k=2..8, n=1..9): PASS");
}

#[test]
fn criterion_02_three_engine_agreement() {
    let limits = limits();
    for k in 2..=4usize {
        for n in 1..=14usize {
            let by_paths = count_bruteforce(k, n, &limits).unwrap();
            let by_nodes = count_via_transfer(k, n, TransferVariant::NodeBased, &limits).unwrap();
            let by_arcs = count_via_transfer(k, n, TransferVariant::ArcLabeled, &limits).unwrap();
            assert_eq!(by_paths, by_nodes, "node-based transfer at k={k}, n={n}");
            assert_eq!(by_paths, by_arcs, "arc-labeled transfer at k={k}, n={n}");
        }
    }
    println!("criterion 02 (three-engine agreement, k=2..4, n<=14): PASS");
}

#[test]
fn criterion_03_closed_form_gf() {
    let reference = gf_reference_k3();
    let expansion = reference.series(10);
    assert_eq!(expansion[0], 1.into());
    for n in 1..=9usize {
        assert_eq!(
            expansion[n],
            KNOWN_COUNTS[1][n - 1].into(),
            "reference series at n={n}"
        );
    }

    let table = series(3, 24, &limits()).unwrap();
    assert_eq!(table.counts().len(), 25);
    let fitted = fit_rational_gf(table.counts(), 11).unwrap();
    assert_eq!(fitted, reference, "fit must reduce to the closed form");
    println!("criterion 03 (closed-form generating function for k=3): PASS");
}

#[test]
fn criterion_04_pruned_graph_facts() {
    let graph = build_transfer_graph(3, TransferVariant::ArcLabeled, &limits()).unwrap();
    let mut expected: Vec<Permutation> = [
        "1234", "4321", "1324", "4231", "1243", "4312", "3421", "2134", "1423", "4132", "3241",
        "2314",
    ]
    .iter()
    .map(|s| perm(s))
    .collect();
    expected.sort();
    assert_eq!(graph.nodes(), expected.as_slice());
    assert_eq!(graph.arc_count(), 20);
    assert!(!graph.reachable(&perm("1243"), &perm("3241")).unwrap());
    println!("criterion 04 (pruned order-4 graph: 12 listed nodes, 20 arcs, broken reachability): PASS");
}

#[test]
fn criterion_05_prohibition_lengths() {
    let limits = limits();
    for k in 2..=4usize {
        let set = generate_prohibitions(k, &limits).unwrap();
        assert!(
            set.max_length() < 2 * k,
            "a prohibition for k={k} exceeds length {}",
            2 * k - 1
        );
        println!(
            "criterion 05 report: k={k} length bound 2k-1={} attained: {}",
            2 * k - 1,
            set.attains_length_bound()
        );
    }
    let set3 = generate_prohibitions(3, &limits).unwrap();
    assert_eq!(set3.by_length().get(&4).copied(), Some(12));
    let ukd4 = all_permutations(4)
        .filter(|p| is_uniquely_determined(p, 3))
        .count();
    assert_eq!(ukd4, 24 - 12);
    println!("criterion 05 (prohibition length bound and k=3 census): PASS");
}

#[test]
fn criterion_06_no_crucial_permutations() {
    let limits = limits();
    for k in 2..=4usize {
        for n in 1..=9usize {
            assert_eq!(
                find_crucial(k, n, &limits).unwrap(),
                None,
                "unexpected crucial permutation at k={k}, n={n}"
            );
        }
    }
    for k in 2..=4usize {
        for n in 0..=8usize {
            for p in all_permutations(n).filter(|p| is_uniquely_determined(p, k)) {
                let v = extension_witness(&p, k).unwrap();
                let extended = p.extend_right(v).unwrap();
                assert!(
                    is_uniquely_determined(&extended, k),
                    "extension of {p} by {v} fails for k={k}"
                );
            }
        }
    }
    println!("criterion 06 (no crucial permutations; constructive extension validates): PASS");
}

#[test]
fn criterion_07_hamiltonian_path_bijection() {
    for k in 3..=4usize {
        for n in 1..=8usize {
            let band = PathScheme::band(k, n).unwrap();
            let mut image = Vec::new();
            for path in enumerate_hamiltonian_paths(&band) {
                let p = phi_inverse(&path, k).unwrap();
                assert_eq!(phi(&p, k).unwrap(), path, "round trip at k={k}, n={n}");
                image.push(p);
            }
            image.sort();
            let filtered: Vec<Permutation> = all_permutations(n)
                .filter(|p| is_uniquely_determined(p, k))
                .collect();
            assert_eq!(image, filtered, "image mismatch at k={k}, n={n}");
        }
    }
    println!("criterion 07 (Hamiltonian path bijection, k=3..4, n<=8): PASS");
}

#[test]
fn criterion_08_poset_example() {
    let limits = limits();
    let poset = poset_from_permutation(&perm("134265"), 3).unwrap();
    assert_eq!(
        poset.incomparable_pairs(),
        vec![(1, 2), (1, 5), (3, 5), (4, 5)]
    );
    assert_eq!(poset.count_linear_extensions(&limits).unwrap(), big(7));

    assert_eq!(m_index(&perm("13542"), 3, &limits).unwrap(), big(3));
    let path = window_path(&perm("13542"), 3).unwrap();
    let realization = realize_path(&path, &limits).unwrap();
    assert_eq!(
        realization.permutations(),
        &[perm("12543"), perm("13542"), perm("23541")]
    );
    println!("criterion 08 (window poset example and shared-path class): PASS");
}

#[test]
fn criterion_09_partition_property() {
    let limits = limits();
    for n in 3..=7usize {
        let histogram = m_distribution(n, 3, &limits).unwrap();
        let total: u64 = histogram.values().sum();
        assert_eq!(total, (1..=n as u64).product::<u64>(), "partition at n={n}");
        for (&m, &count) in &histogram {
            assert_eq!(count % m, 0, "class count at m={m} not divisible, n={n}");
        }
    }
    println!("criterion 09 (window paths partition S_n, class counts divisible by m): PASS");
}

#[test]
fn criterion_10_explicit_bounds() {
    let limits = limits();
    for k in 3..=5usize {
        for n in 2 * k - 1..=9 {
            let (lower, upper) = bounds(k, n).unwrap();
            let count = count_bruteforce(k, n, &limits).unwrap();
            assert!(lower < count, "lower bound not strict at k={k}, n={n}");
            assert!(count < upper, "upper bound not strict at k={k}, n={n}");
        }
    }
    println!("criterion 10 (strict count bounds for k=3..5, 2k-1<=n<=9): PASS");
}

#[test]
fn criterion_11_predetermined_pair_identity() {
    let limits = limits();
    let expected = [0u64, 2, 12, 72, 480, 3600, 30240];
    for (i, &value) in expected.iter().enumerate() {
        let n = i + 1;
        assert_eq!(
            count_bruteforce(n, n + 1, &limits).unwrap(),
            big(value),
            "identity at n={n}"
        );
        assert_eq!(
            factorial(n) * BigUint::from(n as u64 - 1),
            big(value),
            "n!(n-1) at n={n}"
        );
    }

    let image = key_bijection(&perm("134526"), 2, 4).unwrap();
    assert_eq!(image, perm("514263"));
    assert!(is_uniquely_determined(&image, 5));
    assert_eq!(key_bijection_inverse(&image, 2, 4).unwrap(), perm("134526"));
    println!("criterion 11 (n!(n-1) identity and the worked key bijection): PASS");
}
