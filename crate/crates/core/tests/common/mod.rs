//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use morsetree::*;
use std::result::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn torus() -> SimplicialNetwork {
    parse_simplex_list(&read_data("torus.txt")).unwrap()
}

pub fn seven_node() -> SimplicialNetwork {
    parse_simplex_list(&read_data("seven_node.txt")).unwrap()
}

/// Labels of the listed simplices, as `(a,b,...)` strings.
pub fn names(n: &SimplicialNetwork, k: usize, idx: &[u32]) -> Vec<String> {
    idx.iter().map(|&i| n.display(k, i as usize)).collect()
}

pub fn cycle_names(n: &SimplicialNetwork, c: &RepresentativeCycle) -> Vec<String> {
    names(n, c.dim, c.members.members())
}

/// Chain from labeled simplices listed one per line.
pub fn chain_from_lines(n: &SimplicialNetwork, text: &str) -> Chain {
    let mut dim = 0;
    let members = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let labels: Vec<u64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            let (k, i) = n.find_labeled(&labels).unwrap_or_else(|| panic!("{l} not in network"));
            dim = k;
            i as u32
        })
        .collect();
    Chain::new(dim, members)
}

/// Clique complex of a G(n, p) graph with `n ≤ max_n` and random p.
pub fn random_clique_complex(rng: &mut ChaCha8Rng, max_n: usize) -> SimplicialNetwork {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.15..0.7);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    clique_complex(&Graph::with_vertices(n, edges), None)
}

/// Row echelon rank on dense 0/1 rows, written independently of the library.
pub fn dense_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..n_cols {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] == 1 {
                    for j in 0..n_cols {
                        rows[r][j] ^= rows[rank][j];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Boundary of a set of k-simplices computed from vertex tuples, returned as
/// a bitmask over (k−1)-simplices. Needs `m_{k-1} ≤ 64`.
fn boundary_mask(n: &SimplicialNetwork, k: usize, subset: u64) -> u128 {
    let mut mask = 0u128;
    for i in 0..n.count(k) {
        if subset >> i & 1 == 1 {
            let s = n.simplex(k, i);
            for p in 0..=k {
                let face = s.face_without(p);
                let j = n.index_of(&face).expect("face present");
                mask ^= 1u128 << j;
            }
        }
    }
    mask
}

/// β_k by listing every k-chain and every boundary when both spaces are
/// small enough, else by dense elimination of boundary matrices built from
/// vertex tuples. Returns `(β, enumerated)`.
pub fn brute_force_betti(n: &SimplicialNetwork, k: usize) -> (usize, bool) {
    let m_k = n.count(k);
    let m_up = n.count(k + 1);
    let m_down = if k == 0 { 0 } else { n.count(k - 1) };
    if m_k <= 16 && m_up <= 16 && m_down <= 128 {
        let mut cycles = 0usize;
        for s in 0u64..(1 << m_k) {
            if k == 0 || boundary_mask(n, k, s) == 0 {
                cycles += 1;
            }
        }
        let mut boundaries = std::collections::HashSet::new();
        for s in 0u64..(1 << m_up) {
            boundaries.insert(boundary_mask(n, k + 1, s));
        }
        let z = cycles.trailing_zeros() as usize;
        let b = boundaries.len().trailing_zeros() as usize;
        return (z - b, true);
    }
    let dense = |dim: usize| -> Vec<Vec<u8>> {
        let rows = n.count(dim - 1);
        let mut out = vec![vec![0u8; n.count(dim)]; rows];
        for (c, s) in n.simplices(dim).iter().enumerate() {
            for p in 0..=dim {
                out[n.index_of(&s.face_without(p)).unwrap()][c] = 1;
            }
        }
        out
    };
    let r_k = if k == 0 || m_k == 0 { 0 } else { dense_rank(dense(k)) };
    let r_up = if m_up == 0 { 0 } else { dense_rank(dense(k + 1)) };
    (m_k - r_k - r_up, false)
}

/// The unique subset S of `tree` with ∂(S ∪ {g}) = 0, found by trying every
/// subset. Needs `|tree| ≤ 14` and `m_{k−1} ≤ 128`.
pub fn exhaustive_tree_cycle(n: &SimplicialNetwork, k: usize, tree: &[u32], g: u32) -> Vec<u32> {
    let bd = |i: u32| -> u128 {
        let s = n.simplex(k, i as usize);
        (0..=k).fold(0u128, |m, p| m ^ 1u128 << n.index_of(&s.face_without(p)).unwrap())
    };
    let target = bd(g);
    let tree_bd: Vec<u128> = tree.iter().map(|&t| bd(t)).collect();
    let mut found = Vec::new();
    for s in 0u32..(1 << tree.len()) {
        let sum = (0..tree.len()).filter(|&i| s >> i & 1 == 1).fold(0u128, |m, i| m ^ tree_bd[i]);
        if sum == target {
            found.push(s);
        }
    }
    assert_eq!(found.len(), 1, "expected a unique tree completion, found {}", found.len());
    let mut members: Vec<u32> = (0..tree.len()).filter(|&i| found[0] >> i & 1 == 1).map(|i| tree[i]).collect();
    members.push(g);
    members.sort_unstable();
    members
}

/// Random monotone filtration: every simplex gets a value at least that of
/// its faces.
pub fn random_monotone_values(n: &SimplicialNetwork, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut values: Vec<Vec<f64>> = Vec::new();
    for k in 0..n.dim_count() {
        let vals = (0..n.count(k))
            .map(|i| {
                let base = if k == 0 {
                    0.0
                } else {
                    n.faces_of(k, i).iter().map(|&f| values[k - 1][f as usize]).fold(0.0, f64::max)
                };
                // Integer steps so equal values are common.
                base + f64::from(rng.gen_range(0..3u8))
            })
            .collect();
        values.push(vals);
    }
    values
}

/// Every property check for one complex; returns a description of the
/// first failure.
pub fn check_complex(n: &SimplicialNetwork, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let dims = n.dim_count();
    // ∂∂ = 0 for every simplex
    for k in 2..dims {
        for i in 0..n.count(k) {
            let c = Chain::new(k, vec![i as u32]);
            let dd = apply_boundary(n, &apply_boundary(n, &c));
            if !dd.is_empty() {
                return Err(format!("boundary of boundary of {} nonzero", n.display(k, i)));
            }
        }
    }
    let bv = betti_numbers(n);
    for k in 0..dims {
        let (b, _) = brute_force_betti(n, k);
        if b != bv.betti[k] {
            return Err(format!("beta_{k}: rank formula {} vs oracle {b}", bv.betti[k]));
        }
        let h = hodge_betti(n, k);
        if h != bv.betti[k] {
            return Err(format!("beta_{k}: rank formula {} vs hodge {h}", bv.betti[k]));
        }
    }
    if alternating_sum(&bv.betti) != euler_characteristic(n) {
        return Err("Euler characteristic mismatch".into());
    }

    let d = classify(n).map_err(|e| e.to_string())?;
    let f = assign_morse(n, &d).map_err(|e| e.to_string())?;
    let rep = validate_morse(n, &f);
    if !rep.is_valid() {
        return Err(format!("validate_morse: {:?}", rep.violations));
    }
    if !rep.bounds_hold() || !rep.euler_consistent() {
        return Err(format!("critical counts {:?} vs beta {:?}", rep.c, rep.betti));
    }
    if f.promotions().is_empty() && rep.c != bv.betti {
        return Err(format!("no promotions but c = {:?}, beta = {:?}", rep.c, bv.betti));
    }

    let barcode = persistence_pairs(n, &order_from_morse(&f)).map_err(|e| e.to_string())?;
    if barcode.infinite_counts(dims) != bv.betti {
        return Err("Morse barcode infinite bars differ from beta".into());
    }
    let values = random_monotone_values(n, rng);
    let order = FiltrationOrder::from_values(&values).map_err(|e| e.to_string())?;
    let barcode = persistence_pairs(n, &order).map_err(|e| e.to_string())?;
    if barcode.infinite_counts(dims) != bv.betti {
        return Err("random filtration infinite bars differ from beta".into());
    }

    let basis = solve_basis(n, &d).map_err(|e| e.to_string())?;
    let report = validate_basis(n, &basis);
    if !report.is_valid() {
        return Err(format!("validate_basis: {:?}", report.failures));
    }
    for k in 1..dims {
        let cycles = basis.dim(k);
        if d.tree[k].len() <= 14 && n.count(k - 1) <= 128 {
            for c in cycles {
                let oracle = exhaustive_tree_cycle(n, k, &d.tree[k], c.generator);
                if oracle != c.members.members() {
                    return Err(format!("cycle of {} differs from exhaustive oracle", n.display(k, c.generator as usize)));
                }
            }
        }
        match solve_cavities_oriented(n, &d, k) {
            Ok(oriented) => {
                if oriented != cycles {
                    return Err(format!("oriented cycles differ in dimension {k}"));
                }
            }
            Err(Error::OrientedReductionUndefined { .. }) => {}
            Err(e) => return Err(format!("oriented path failed: {e}")),
        }
    }
    Ok(())
}

pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// Rank of every boundary matrix under `perms` random column orders.
pub fn check_rank_invariance(n: &SimplicialNetwork, rng: &mut ChaCha8Rng, perms: usize) -> Result<(), String> {
    for k in 1..n.dim_count() {
        let b = &boundary_matrix(n, k).map_err(|e| e.to_string())?.binary;
        let mut order: Vec<usize> = (0..b.n_cols()).collect();
        let base = linalg::gf2_reduce(b, &order).rank;
        for _ in 0..perms {
            order.shuffle(rng);
            let r = linalg::gf2_reduce(b, &order).rank;
            if r != base {
                return Err(format!("B_{k}: rank {r} under a permutation, {base} in order"));
            }
        }
    }
    Ok(())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
