mod common;

use common::*;
use morsetree::linalg::{gf2_solve, Gf2Matrix};
use morsetree::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn all_core_checks(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 10);
        prop_assert_eq!(check_complex(&n, &mut rng), Ok(()));
    }

    #[test]
    fn rank_invariant_under_column_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 10);
        prop_assert_eq!(check_rank_invariance(&n, &mut rng, 20), Ok(()));
    }

    #[test]
    fn complexes_are_downward_closed(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 12);
        for k in 1..n.dim_count() {
            for s in n.simplices(k) {
                for f in s.faces() {
                    prop_assert!(n.index_of(&f).is_some());
                }
            }
        }
        let rebuilt = explicit_complex(n.simplices(n.dim_count().saturating_sub(1)));
        if n.dim_count() > 0 && n.count(0) == rebuilt.count(0) {
            for k in 0..rebuilt.dim_count() {
                for s in rebuilt.simplices(k) {
                    prop_assert!(n.index_of(s).is_some());
                }
            }
        }
    }

    #[test]
    fn equal_value_reordering_keeps_barcode(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 9);
        let values = random_monotone_values(&n, &mut rng);
        let order = FiltrationOrder::from_values(&values).unwrap();
        // Shuffle within runs of equal value, then restore face order by
        // stable-sorting on (value, dimension).
        let mut entries = order.entries().to_vec();
        entries.shuffle(&mut rng);
        entries.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.dim.cmp(&b.0.dim)));
        let shuffled = FiltrationOrder::new(entries).unwrap();
        let triples = |b: &Barcode| {
            let mut t: Vec<(usize, u64, Option<u64>)> = b.bars.iter()
                .map(|x| (x.dim, x.birth.to_bits(), x.death.map(f64::to_bits)))
                .collect();
            t.sort_unstable();
            t
        };
        let a = persistence_pairs(&n, &order).unwrap();
        let b = persistence_pairs(&n, &shuffled).unwrap();
        prop_assert_eq!(triples(&a), triples(&b));
    }

    #[test]
    fn morse_bars_are_critical_births(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 10);
        let d = classify(&n).unwrap();
        let f = assign_morse(&n, &d).unwrap();
        let barcode = persistence_pairs(&n, &order_from_morse(&f)).unwrap();
        if f.promotions().is_empty() {
            prop_assert!(barcode.bars.iter().all(Bar::is_infinite));
            let mut births: Vec<usize> = barcode.bars.iter().map(|b| b.birth as usize).collect();
            births.sort_unstable();
            let crit: Vec<usize> = f.critical().iter().map(|c| c.0).collect();
            prop_assert_eq!(births, crit);
        }
        let text = f.to_text(&n);
        let (_, back) = parse_morse_text(&text, Some(&n)).unwrap();
        prop_assert_eq!(back.steps(), f.steps());
    }

    #[test]
    fn cavity_solution_independent_of_row_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 10);
        let d = classify(&n).unwrap();
        for k in 1..n.dim_count() {
            let cycles = solve_cavities(&n, &d, k).unwrap();
            let b = &boundary_matrix(&n, k).unwrap().binary;
            let mut perm: Vec<u32> = (0..b.n_rows() as u32).collect();
            perm.shuffle(&mut rng);
            let permute = |cols: &[u32]| -> Gf2Matrix {
                Gf2Matrix::from_columns(
                    b.n_rows(),
                    cols.iter().map(|&c| b.column(c as usize).iter().map(|&r| perm[r as usize]).collect()).collect(),
                )
            };
            let t = permute(&d.tree[k]);
            let c = permute(&d.generators[k]);
            let x = gf2_solve(&t, &c).unwrap();
            for (j, cyc) in cycles.iter().enumerate() {
                let mut members: Vec<u32> = x.column(j).iter().map(|&i| d.tree[k][i as usize]).collect();
                members.push(d.generators[k][j]);
                members.sort_unstable();
                prop_assert_eq!(members.as_slice(), cyc.members.members());
                // one generator, the rest tree simplices
                let non_tree = cyc.members.members().iter().filter(|m| d.tree[k].binary_search(m).is_err()).count();
                prop_assert_eq!(non_tree, 1);
            }
        }
    }

    #[test]
    fn shortening_never_lengthens(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 11);
        let d = classify(&n).unwrap();
        let basis = solve_basis(&n, &d).unwrap();
        for k in 1..n.dim_count() {
            let (short, moves) = shorten_basis(&n, &basis, k, 10).unwrap();
            for (a, b) in basis.lengths(k).iter().zip(short.lengths(k)) {
                prop_assert!(b <= *a);
            }
            prop_assert!(moves.iter().all(|m| m.after < m.before));
            prop_assert!(validate_basis(&n, &short).is_valid());
        }
    }

    #[test]
    fn boundary_moves_keep_validity(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 10);
        let d = classify(&n).unwrap();
        let mut basis = solve_basis(&n, &d).unwrap();
        if n.dim_count() >= 3 && !basis.dim(1).is_empty() && n.count(2) > 0 {
            let t = rng.gen_range(0..n.count(2)) as u32;
            let bd = apply_boundary(&n, &Chain::new(2, vec![t]));
            let c = &mut basis.cycles[1][0];
            c.members = c.members.add(&bd);
            prop_assert!(validate_basis(&n, &basis).is_valid());
        }
    }

    #[test]
    fn minimal_cycles_no_longer_than_tree_cycles(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = random_clique_complex(&mut rng, 11);
        let d = classify(&n).unwrap();
        let basis = solve_basis(&n, &d).unwrap();
        let minimal = minimal_one_cavities(&n, &d).unwrap();
        if n.dim_count() >= 2 {
            for (a, b) in basis.lengths(1).iter().zip(minimal.lengths(1)) {
                prop_assert!(b <= *a);
            }
            let mut full = basis.clone();
            full.cycles[1] = minimal.cycles[1].clone();
            prop_assert!(validate_basis(&n, &full).is_valid());
        }
    }

    #[test]
    fn distance_filtration_is_monotone(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let count = rng.gen_range(1..14);
        let pts: Vec<Vec<f64>> = (0..count).map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let cloud = PointCloud::new(pts).unwrap();
        let eps = rng.gen_range(0.0..1.5);
        let (n, f) = vr_complex(&cloud, eps, Some(3));
        for k in 1..n.dim_count() {
            for i in 0..n.count(k) {
                for &face in n.faces_of(k, i) {
                    prop_assert!(f.values[k - 1][face as usize] <= f.values[k][i]);
                }
                prop_assert!(f.values[k][i] <= eps);
            }
        }
        prop_assert!(persistence_pairs(&n, &f.order().unwrap()).is_ok());
    }
}

#[test]
fn vr_at_infinity_is_full_clique() {
    let mut rng = rng(3);
    for size in 1..8 {
        let pts: Vec<Vec<f64>> = (0..size).map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect();
        let (n, _) = vr_complex(&PointCloud::new(pts).unwrap(), f64::INFINITY, None);
        assert_eq!(n, clique_complex(&Graph::complete(size), None));
    }
}
