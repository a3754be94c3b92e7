//! Exact kernels via fraction-free Bareiss elimination.
//!
//! The column set is first split into connected components of the sparsity
//! graph (columns sharing a row). Components are eliminated independently and
//! in parallel; within a component the pivot is the leftmost column with a
//! nonzero entry, taken from the first such row.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::sparse::SparseMat;
use crate::rational::{lcm_denoms, Q};

struct Component {
    cols: Vec<usize>,
    rows: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn components(m: &SparseMat) -> Vec<Component> {
    let n = m.cols();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..m.rows() {
        let row = m.row(i);
        if let Some((first, _)) = row.first() {
            let mut a = find(&mut parent, *first);
            for (j, _) in &row[1..] {
                let b = find(&mut parent, *j);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                    a = lo;
                }
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Component> = Vec::new();
    for c in 0..n {
        let r = find(&mut parent, c);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Component { cols: Vec::new(), rows: Vec::new() });
        }
        comps[slot[r]].cols.push(c);
    }
    for i in 0..m.rows() {
        if let Some((first, _)) = m.row(i).first() {
            let r = find(&mut parent, *first);
            comps[slot[r]].rows.push(i);
        }
    }
    comps
}

/// Integer row-echelon form; returns the reduced rows and pivot columns.
fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pr = &top[r];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                for j in c + 1..ncols {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * &pr[c] / &prev;
                    }
                }
            } else {
                for j in c + 1..ncols {
                    let v = &pr[c] * &row[j] - &row[c] * &pr[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn integer_rows(m: &SparseMat, comp: &Component) -> Vec<Vec<BigInt>> {
    let mut pos = std::collections::HashMap::new();
    for (k, &c) in comp.cols.iter().enumerate() {
        pos.insert(c, k);
    }
    comp.rows
        .iter()
        .map(|&i| {
            let row = m.row(i);
            let l = Q::from_integer(lcm_denoms(row.iter().map(|(_, v)| v)));
            let mut dense = vec![BigInt::zero(); comp.cols.len()];
            for (j, v) in row {
                dense[pos[j]] = (v * &l).to_integer();
            }
            dense
        })
        .collect()
}

/// Kernel vectors of one component, as `(free column, global vector)`.
fn component_kernel(m: &SparseMat, comp: &Component) -> Vec<(usize, Vec<(usize, Q)>)> {
    let n = comp.cols.len();
    let (u, pivots) = bareiss(integer_rows(m, comp), n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut x = vec![Q::zero(); n];
        x[f] = Q::one();
        for (k, &p) in pivots.iter().enumerate().rev() {
            let row = &u[k];
            let mut s = Q::zero();
            for j in p + 1..n {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += Q::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = -s / Q::from_integer(row[p].clone());
        }
        let v = x
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (comp.cols[k], v))
            .collect();
        out.push((comp.cols[f], v));
    }
    out
}

/// Exact kernel basis, ordered by free column.
pub fn nullspace(m: &SparseMat) -> Vec<Vec<Q>> {
    let comps = components(m);
    let mut parts: Vec<(usize, Vec<(usize, Q)>)> = comps
        .par_iter()
        .map(|c| component_kernel(m, c))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    parts.sort_by_key(|(f, _)| *f);
    parts
        .into_iter()
        .map(|(_, sv)| {
            let mut v = vec![Q::zero(); m.cols()];
            for (j, x) in sv {
                v[j] = x;
            }
            v
        })
        .collect()
}

pub fn rank(m: &SparseMat) -> usize {
    components(m)
        .par_iter()
        .map(|c| bareiss(integer_rows(m, c), c.cols.len()).1.len())
        .sum()
}

pub fn rank_of_rows(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&SparseMat::from_dense(vectors))
}

/// Whether every vector of `vs` lies in the span of `span`.
pub fn span_contains(span: &[Vec<Q>], vs: &[Vec<Q>]) -> bool {
    let all: Vec<Vec<Q>> = span.iter().chain(vs).cloned().collect();
    rank_of_rows(&all) == rank_of_rows(span)
}
