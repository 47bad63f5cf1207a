//! Boundary matrices, chains, and the Hodge Laplacian.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::SimplicialNetwork;
use crate::error::{Error, Result};
use crate::linalg::{rational_rank, Gf2Matrix, RationalMatrix};

/// A GF(2) chain: a set of simplices of one dimension, by registry index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub dim: usize,
    members: Vec<u32>,
}

impl Chain {
    /// Builds a chain; indices listed an even number of times cancel.
    pub fn new(dim: usize, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(members.len());
        for m in members {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Chain { dim, members: out }
    }

    pub fn zero(dim: usize) -> Self {
        Chain { dim, members: Vec::new() }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// GF(2) sum: the symmetric difference of the two member sets.
    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.dim, other.dim, "adding chains of different dimension");
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Chain { dim: self.dim, members: out }
    }

    /// Number of members shared with `other`.
    pub fn overlap(&self, other: &Chain) -> usize {
        let (a, b) = (&self.members, &other.members);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }
}

/// An integer matrix with entries in {−1, 0, +1}, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix {
    n_rows: usize,
    cols: Vec<Vec<(u32, i8)>>,
}

impl SignedMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(u32, i8)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.cols[c]
            .iter()
            .find(|&&(row, _)| row as usize == r)
            .map_or(0, |&(_, s)| s)
    }

    /// Integer product `self · other`, as sparse `(row, value)` columns.
    pub fn mul(&self, other: &SignedMatrix) -> Vec<Vec<(u32, i64)>> {
        assert_eq!(self.n_cols(), other.n_rows, "shape mismatch");
        other
            .cols
            .iter()
            .map(|oc| {
                let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
                for &(k, s) in oc {
                    for &(r, t) in &self.cols[k as usize] {
                        *acc.entry(r).or_default() += i64::from(s) * i64::from(t);
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }

    /// Dense rational copy of the columns listed in `which`.
    pub fn to_rational(&self, which: &[usize]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n_rows, which.len());
        for (j, &c) in which.iter().enumerate() {
            for &(r, s) in &self.cols[c] {
                m.set(r as usize, j, BigRational::from_integer(BigInt::from(s)));
            }
        }
        m
    }
}

/// Binary and oriented boundary matrices between dimensions `k−1` and `k`.
#[derive(Clone, Debug)]
pub struct BoundaryMatrixBundle {
    pub k: usize,
    /// Rows are `(k−1)`-simplices, columns `k`-simplices.
    pub binary: Gf2Matrix,
    /// Entry for the face obtained by deleting vertex position `p` is `(−1)^p`.
    pub oriented: SignedMatrix,
}

/// The boundary matrices `B_k` and `B_[k]`, built once per network and `k`.
pub fn boundary_matrix(network: &SimplicialNetwork, k: usize) -> Result<&BoundaryMatrixBundle> {
    let top = network.top_dim().unwrap_or(0);
    if k == 0 || k > top {
        return Err(Error::Dimension { dim: k, min: 1, max: top });
    }
    Ok(network.boundary_cache[k].get_or_init(|| build_bundle(network, k)))
}

fn build_bundle(network: &SimplicialNetwork, k: usize) -> BoundaryMatrixBundle {
    let n_rows = network.count(k - 1);
    let mut bin = Vec::with_capacity(network.count(k));
    let mut ori = Vec::with_capacity(network.count(k));
    for i in 0..network.count(k) {
        let faces = network.faces_of(k, i);
        let mut col: Vec<(u32, i8)> = faces
            .iter()
            .enumerate()
            .map(|(p, &f)| (f, if p % 2 == 0 { 1 } else { -1 }))
            .collect();
        col.sort_unstable_by_key(|&(r, _)| r);
        bin.push(col.iter().map(|&(r, _)| r).collect());
        ori.push(col);
    }
    BoundaryMatrixBundle {
        k,
        binary: Gf2Matrix::from_columns(n_rows, bin),
        oriented: SignedMatrix { n_rows, cols: ori },
    }
}

/// The GF(2) boundary of a chain. The boundary of a 0-chain is zero,
/// returned as an empty chain.
pub fn apply_boundary(network: &SimplicialNetwork, chain: &Chain) -> Chain {
    if chain.dim == 0 {
        return Chain::zero(0);
    }
    let faces = chain
        .members
        .iter()
        .flat_map(|&i| network.faces_of(chain.dim, i as usize).iter().copied())
        .collect();
    Chain::new(chain.dim - 1, faces)
}

/// A chain is a cycle when its boundary vanishes.
pub fn is_cycle(network: &SimplicialNetwork, chain: &Chain) -> bool {
    apply_boundary(network, chain).is_empty()
}

/// The Hodge Laplacian `L_k = B_[k]ᵀ B_[k] + B_[k+1] B_[k+1]ᵀ` as an exact
/// integer-valued matrix. Missing boundary maps count as zero.
pub fn hodge_laplacian(network: &SimplicialNetwork, k: usize) -> RationalMatrix {
    let m = network.count(k);
    let mut dense = vec![0i64; m * m];
    if k >= 1 && k < network.dim_count() {
        // Down part: two k-simplices interact through each shared (k−1)-face.
        let mut by_face: Vec<Vec<(u32, i8)>> = vec![Vec::new(); network.count(k - 1)];
        for i in 0..m {
            for (p, &f) in network.faces_of(k, i).iter().enumerate() {
                by_face[f as usize].push((i as u32, if p % 2 == 0 { 1 } else { -1 }));
            }
        }
        for list in &by_face {
            accumulate_outer(&mut dense, m, list);
        }
    }
    if k + 1 < network.dim_count() {
        for j in 0..network.count(k + 1) {
            let list: Vec<(u32, i8)> = network
                .faces_of(k + 1, j)
                .iter()
                .enumerate()
                .map(|(p, &f)| (f, if p % 2 == 0 { 1 } else { -1 }))
                .collect();
            accumulate_outer(&mut dense, m, &list);
        }
    }
    let mut out = RationalMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            let v = dense[r * m + c];
            if v != 0 {
                out.set(r, c, BigRational::from_integer(BigInt::from(v)));
            }
        }
    }
    out
}

fn accumulate_outer(dense: &mut [i64], m: usize, list: &[(u32, i8)]) {
    for &(a, s) in list {
        for &(b, t) in list {
            dense[a as usize * m + b as usize] += i64::from(s) * i64::from(t);
        }
    }
}

/// Betti number from the Laplacian kernel: `m_k − rank_Q(L_k)`.
pub fn hodge_betti(network: &SimplicialNetwork, k: usize) -> usize {
    let m = network.count(k);
    if m == 0 {
        return 0;
    }
    m - rational_rank(&hodge_laplacian(network, k))
}
