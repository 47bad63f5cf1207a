//! Representative cycles for every cavity.
//!
//! Each generator g of dimension k is completed to a cycle by the unique set of
//! k-tree simplices whose boundaries sum to the boundary of g. Over GF(2) this
//! is a solve against the tree columns of `B_k`; the oriented variant solves
//! the normal equations of the signed system exactly and reduces mod 2.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::boundary::{apply_boundary, boundary_matrix, is_cycle, Chain};
use crate::complex::SimplicialNetwork;
use crate::error::{Error, Result};
use crate::linalg::{gf2_reduce, rational_solve, Gf2Matrix, RationalMatrix};
use crate::morse::TreeDecomposition;

/// A cycle representing one cavity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeCycle {
    pub dim: usize,
    /// The cavity-generating simplex the cycle was built from.
    pub generator: u32,
    pub members: Chain,
}

impl RepresentativeCycle {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One list of representative cycles per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CavityBasis {
    pub cycles: Vec<Vec<RepresentativeCycle>>,
}

impl CavityBasis {
    pub fn dim(&self, k: usize) -> &[RepresentativeCycle] {
        self.cycles.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn lengths(&self, k: usize) -> Vec<usize> {
        self.dim(k).iter().map(RepresentativeCycle::len).collect()
    }

    pub fn total_length(&self, k: usize) -> usize {
        self.dim(k).iter().map(RepresentativeCycle::len).sum()
    }
}

fn check_dim(network: &SimplicialNetwork, k: usize) -> Result<()> {
    let top = network.top_dim().unwrap_or(0);
    if k == 0 || k > top {
        return Err(Error::Dimension { dim: k, min: 1, max: top });
    }
    Ok(())
}

/// Cycles for all k-generators over GF(2), in generator order.
pub fn solve_cavities(
    network: &SimplicialNetwork,
    decomp: &TreeDecomposition,
    k: usize,
) -> Result<Vec<RepresentativeCycle>> {
    check_dim(network, k)?;
    let gens = decomp.generators.get(k).map_or(&[][..], Vec::as_slice);
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let b = &boundary_matrix(network, k)?.binary;
    let owned;
    let red = match decomp.tree_reduction(k) {
        Some(r) => r,
        None => {
            let order: Vec<usize> = (0..b.n_cols()).collect();
            owned = gf2_reduce(b, &order);
            &owned
        }
    };
    gens.iter()
        .enumerate()
        .map(|(j, &g)| {
            let combo = red.solve_column(b.column(g as usize)).ok_or(Error::NotInSpan { column: j })?;
            let mut members = combo;
            members.push(g);
            Ok(RepresentativeCycle { dim: k, generator: g, members: Chain::new(k, members) })
        })
        .collect()
}

/// The spanning-tree basis for every dimension; dimension 0 holds one root per
/// connected component.
pub fn solve_basis(network: &SimplicialNetwork, decomp: &TreeDecomposition) -> Result<CavityBasis> {
    let mut cycles = Vec::with_capacity(network.dim_count());
    if network.dim_count() > 0 {
        cycles.push(
            decomp
                .roots
                .iter()
                .map(|&r| RepresentativeCycle { dim: 0, generator: r, members: Chain::new(0, vec![r]) })
                .collect(),
        );
    }
    for k in 1..network.dim_count() {
        cycles.push(solve_cavities(network, decomp, k)?);
    }
    Ok(CavityBasis { cycles })
}

/// Cycles from the exact solution of `(TᵀT)x = TᵀC` with the signed boundary
/// matrices, each entry reduced mod 2.
///
/// Fails with [`Error::OrientedReductionUndefined`] if an entry has an even
/// denominator or the rational solution does not satisfy `Tx = C` exactly.
pub fn solve_cavities_oriented(
    network: &SimplicialNetwork,
    decomp: &TreeDecomposition,
    k: usize,
) -> Result<Vec<RepresentativeCycle>> {
    check_dim(network, k)?;
    let gens = decomp.generators.get(k).map_or(&[][..], Vec::as_slice);
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let signed = &boundary_matrix(network, k)?.oriented;
    let tree = &decomp.tree[k];
    let r = tree.len();
    let dot = |a: u32, b: u32| -> i64 {
        let (ca, cb) = (signed.column(a as usize), signed.column(b as usize));
        let (mut i, mut j, mut s) = (0, 0, 0i64);
        while i < ca.len() && j < cb.len() {
            match ca[i].0.cmp(&cb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += i64::from(ca[i].1) * i64::from(cb[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    };
    let mut normal = RationalMatrix::zeros(r, r);
    let mut rhs = RationalMatrix::zeros(r, gens.len());
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    for (i, &ti) in tree.iter().enumerate() {
        for (j, &tj) in tree.iter().enumerate().skip(i) {
            let v = dot(ti, tj);
            if v != 0 {
                normal.set(i, j, int(v));
                normal.set(j, i, int(v));
            }
        }
        for (j, &g) in gens.iter().enumerate() {
            let v = dot(ti, g);
            if v != 0 {
                rhs.set(i, j, int(v));
            }
        }
    }
    let x = rational_solve(&normal, &rhs)?;

    let mut out = Vec::with_capacity(gens.len());
    for (j, &g) in gens.iter().enumerate() {
        // Check T·x = C exactly before reducing.
        let mut residual = vec![BigRational::zero(); network.count(k - 1)];
        for &(row, s) in signed.column(g as usize) {
            residual[row as usize] += int(i64::from(s));
        }
        let mut members = vec![g];
        for (i, &t) in tree.iter().enumerate() {
            let xi = x.get(i, j);
            if xi.is_zero() {
                continue;
            }
            for &(row, s) in signed.column(t as usize) {
                residual[row as usize] -= xi * int(i64::from(s));
            }
            if xi.denom().is_even() {
                return Err(Error::OrientedReductionUndefined { dim: k });
            }
            if xi.numer().is_odd() {
                members.push(t);
            }
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return Err(Error::OrientedReductionUndefined { dim: k });
        }
        out.push(RepresentativeCycle { dim: k, generator: g, members: Chain::new(k, members) });
    }
    Ok(out)
}

/// Outcome of [`validate_basis`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisReport {
    /// Cycles per dimension.
    pub counts: Vec<usize>,
    /// `β_k` per dimension.
    pub expected: Vec<usize>,
    pub failures: Vec<String>,
}

impl BasisReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every cycle is closed, that each dimension has `β_k` cycles,
/// and that they stay independent modulo boundaries.
pub fn validate_basis(network: &SimplicialNetwork, basis: &CavityBasis) -> BasisReport {
    let dims = network.dim_count();
    let mut report = BasisReport::default();
    if basis.cycles.len() > dims {
        report.failures.push(format!("basis has {} dimensions, network {dims}", basis.cycles.len()));
    }
    for k in 0..dims {
        let cycles = basis.dim(k);
        let m_k = network.count(k);
        for (i, c) in cycles.iter().enumerate() {
            if c.dim != k || c.members.dim != k {
                report.failures.push(format!("dimension {k} cycle {i} has dimension {}", c.members.dim));
            } else if c.members.members().iter().any(|&s| s as usize >= m_k) {
                report.failures.push(format!("dimension {k} cycle {i} references a missing simplex"));
            } else if c.is_empty() {
                report.failures.push(format!("dimension {k} cycle {i} is empty"));
            } else if !is_cycle(network, &c.members) {
                report.failures.push(format!(
                    "dimension {k} cycle {i} has nonzero boundary of size {}",
                    apply_boundary(network, &c.members).len()
                ));
            }
        }
        if report.failures.iter().any(|f| f.starts_with(&format!("dimension {k} "))) {
            report.counts.push(cycles.len());
            report.expected.push(0);
            continue;
        }
        let upper: Vec<Vec<u32>> = if k + 1 < dims {
            boundary_matrix(network, k + 1).expect("dimension in range").binary.columns().to_vec()
        } else {
            Vec::new()
        };
        let n_upper = upper.len();
        let mut cols = upper;
        cols.extend(cycles.iter().map(|c| c.members.members().to_vec()));
        let m = Gf2Matrix::from_columns(m_k, cols);
        let order: Vec<usize> = (0..m.n_cols()).collect();
        let red = gf2_reduce(&m, &order);
        let upper_rank = red.pivot_cols.iter().filter(|&&c| c < n_upper).count();
        let new_rank = red.rank - upper_rank;
        let lower_rank = if k >= 1 {
            let b = &boundary_matrix(network, k).expect("dimension in range").binary;
            gf2_reduce(b, &(0..b.n_cols()).collect::<Vec<_>>()).rank
        } else {
            0
        };
        let beta = m_k - lower_rank - upper_rank;
        if new_rank < cycles.len() {
            report.failures.push(format!(
                "dimension {k}: {} of {} cycles dependent modulo boundaries",
                cycles.len() - new_rank,
                cycles.len()
            ));
        }
        if cycles.len() != beta {
            report.failures.push(format!("dimension {k}: {} cycles but beta = {beta}", cycles.len()));
        }
        report.counts.push(cycles.len());
        report.expected.push(beta);
    }
    report
}

#[derive(Serialize)]
struct CycleDoc {
    generator: Vec<u64>,
    length: usize,
    simplices: Vec<Vec<u64>>,
}

/// JSON document: `{"dimensions": [{"dim": k, "cycles": [...]}, ...]}`.
pub fn basis_to_json(network: &SimplicialNetwork, basis: &CavityBasis) -> serde_json::Value {
    let dims: Vec<serde_json::Value> = basis
        .cycles
        .iter()
        .enumerate()
        .map(|(k, cycles)| {
            let docs: Vec<CycleDoc> = cycles
                .iter()
                .map(|c| CycleDoc {
                    generator: network.labeled(k, c.generator as usize),
                    length: c.len(),
                    simplices: c.members.members().iter().map(|&s| network.labeled(k, s as usize)).collect(),
                })
                .collect();
            serde_json::json!({ "dim": k, "cycles": docs })
        })
        .collect();
    serde_json::json!({ "dimensions": dims })
}

/// One line per cycle: `k <generator> : <simplex>;<simplex>;...`.
pub fn basis_to_text(network: &SimplicialNetwork, basis: &CavityBasis) -> String {
    let mut out = String::new();
    for (k, cycles) in basis.cycles.iter().enumerate() {
        for c in cycles {
            let members: Vec<String> =
                c.members.members().iter().map(|&s| network.display(k, s as usize)).collect();
            writeln!(out, "{k} {} : {}", network.display(k, c.generator as usize), members.join(";"))
                .expect("string write");
        }
    }
    out
}

/// Number of cycles of each length, ascending by length.
pub fn length_histogram(cycles: &[RepresentativeCycle]) -> Vec<(usize, usize)> {
    let mut map = std::collections::BTreeMap::new();
    for c in cycles {
        *map.entry(c.len()).or_insert(0usize) += 1;
    }
    map.into_iter().collect()
}
