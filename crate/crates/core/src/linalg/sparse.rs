//! Row-major sparse rational matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{to_f64, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    // each row sorted by column, no explicit zeros
    data: Vec<Vec<(usize, Q)>>,
}

fn push_nonzero(row: &mut Vec<(usize, Q)>, map: BTreeMap<usize, Q>) {
    row.extend(map.into_iter().filter(|(_, v)| !v.is_zero()));
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Q::one())
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for (i, row) in m.data.iter_mut().enumerate() {
                row.push((i, c.clone()));
            }
        }
        m
    }

    /// Duplicate entries are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut maps: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "triplet ({i},{j}) out of bounds");
            *maps[i].entry(j).or_insert_with(Q::zero) += v;
        }
        let mut m = Self::zeros(rows, cols);
        for (row, map) in m.data.iter_mut().zip(maps) {
            push_nonzero(row, map);
        }
        m
    }

    pub fn from_dense(d: &[Vec<Q>]) -> Self {
        let cols = d.first().map_or(0, Vec::len);
        Self::from_triplets(
            d.len(),
            cols,
            d.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn scale(&self, c: &Q) -> SparseMat {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseMat, c: &Q) -> SparseMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let mut map: BTreeMap<usize, Q> = self.data[i].iter().cloned().collect();
            for (j, v) in &other.data[i] {
                *map.entry(*j).or_insert_with(Q::zero) += v * c;
            }
            push_nonzero(&mut out.data[i], map);
        }
        out
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.add_scaled(other, &-Q::one())
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut map: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, a) in &self.data[i] {
                for (j, b) in &other.data[*k] {
                    *map.entry(*j).or_insert_with(Q::zero) += a * b;
                }
            }
            push_nonzero(&mut out.data[i], map);
        }
        out
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &SparseMat) -> SparseMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &SparseMat) -> SparseMat {
        self.mul(other).add(&other.mul(self))
    }

    /// Kronecker product; index `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &SparseMat) -> SparseMat {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for k in 0..other.rows {
                let row = &mut out.data[i * other.rows + k];
                for (j, a) in &self.data[i] {
                    for (l, b) in &other.data[k] {
                        row.push((j * other.cols + l, a * b));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out.data[*j].push((i, v.clone()));
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !v[*j].is_zero())
                    .fold(Q::zero(), |acc, (j, a)| acc + a * &v[*j])
            })
            .collect()
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).fold(Q::zero(), |a, b| a + b)
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(parts: &[SparseMat]) -> SparseMat {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        for p in parts {
            assert_eq!(p.cols, cols, "column mismatch in vstack");
            data.extend(p.data.iter().cloned());
        }
        SparseMat { rows: data.len(), cols, data }
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMat {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (k, &r) in rows.iter().enumerate() {
            let mut row: Vec<(usize, Q)> = self.data[r]
                .iter()
                .filter(|(j, _)| pos[*j] != usize::MAX)
                .map(|(j, v)| (pos[*j], v.clone()))
                .collect();
            row.sort_by_key(|(j, _)| *j);
            out.data[k] = row;
        }
        out
    }

    pub fn to_f64_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = to_f64(v);
        }
        d
    }
}
