//! Exact linear algebra over the rationals: incremental sparse echelon forms
//! (rank, kernels, solving) and small dense matrices.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// `acc += c * v`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Q, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let e = acc.entry(k.clone()).or_insert_with(Q::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

struct Row<K> {
    v: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Echelon basis built one vector at a time. Each pivot row is normalized so
/// that its largest key has coefficient one; optionally tracks how every row
/// was formed from the inserted vectors.
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, Row<K>>,
    track: bool,
    inserted: usize,
}

pub enum Insert {
    Independent,
    /// The inserted vector (tag = its insertion index) depends on earlier ones;
    /// the combination of inserted vectors listed here vanishes.
    Dependent(SparseVec<usize>),
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    pub fn tracking() -> Self {
        Echelon {
            track: true,
            ..Echelon::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Top-reduce `v` against the current rows: the residual is zero exactly
    /// when `v` lies in the span, and otherwise its largest key is not a pivot.
    /// Also returns (when tracking) the combination that was subtracted.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut combo = SparseVec::new();
        while let Some((k, c)) = v.iter().next_back() {
            let Some(row) = self.rows.get(k) else { break };
            let c = c.clone();
            axpy(&mut v, &-c.clone(), &row.v);
            if self.track {
                axpy(&mut combo, &-c, &row.combo);
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    pub fn insert(&mut self, v: SparseVec<K>) -> Insert {
        let tag = self.inserted;
        self.inserted += 1;
        let (mut r, mut combo) = self.reduce(v);
        if self.track {
            combo.insert(tag, Q::one());
        }
        let lead = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone()));
        match lead {
            None => Insert::Dependent(combo),
            Some((k, c)) => {
                let inv = Q::one() / c;
                for x in r.values_mut() {
                    *x *= &inv;
                }
                if self.track {
                    for x in combo.values_mut() {
                        *x *= &inv;
                    }
                }
                self.rows.insert(k, Row { v: r, combo });
                Insert::Independent
            }
        }
    }
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Dense integer labels for the coordinates of a large sparse system.
pub struct Interner<K> {
    ids: HashMap<K, u32>,
}

impl<K: Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Interner { ids: HashMap::new() }
    }

    pub fn id(&mut self, k: &K) -> u32 {
        if let Some(&i) = self.ids.get(k) {
            return i;
        }
        let i = self.ids.len() as u32;
        self.ids.insert(k.clone(), i);
        i
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

impl<K: Hash + Eq + Clone> Default for Interner<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Sparse vector over interned coordinates, sorted by coordinate.
pub type PackedVec = Vec<(u32, Q)>;

fn sub_scaled(v: &[(u32, Q)], c: &Q, r: &[(u32, Q)]) -> PackedVec {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < r.len() {
        if j == r.len() || (i < v.len() && v[i].0 < r[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || r[j].0 < v[i].0 {
            out.push((r[j].0, -(c * &r[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &r[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank-only echelon form over packed vectors; much cheaper than [`Echelon`]
/// for systems with tens of thousands of rows.
#[derive(Default)]
pub struct PackedEchelon {
    rows: HashMap<u32, PackedVec>,
}

impl PackedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots_below(&self, bound: u32) -> usize {
        self.rows.keys().filter(|&&k| k < bound).count()
    }

    /// Returns whether `v` was independent of the rows so far.
    pub fn insert(&mut self, mut v: PackedVec) -> bool {
        loop {
            let Some((k, c)) = v.last().cloned() else { return false };
            match self.rows.get(&k) {
                Some(r) => v = sub_scaled(&v, &c, r),
                None => {
                    let inv = Q::one() / c;
                    for x in &mut v {
                        x.1 *= &inv;
                    }
                    self.rows.insert(k, v);
                    return true;
                }
            }
        }
    }
}

pub fn rank<K: Ord + Clone, I: IntoIterator<Item = SparseVec<K>>>(vs: I) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{z : sum_i z_i columns[i] = 0}`.
pub fn kernel<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::tracking();
    let mut out = vec![];
    for c in columns {
        if let Insert::Dependent(z) = e.insert(c.clone()) {
            out.push(z);
        }
    }
    out
}

/// A solution of `sum_i z_i columns[i] = rhs`, if one exists.
pub fn solve<K: Ord + Clone>(columns: &[SparseVec<K>], rhs: &SparseVec<K>) -> Option<SparseVec<usize>> {
    let mut e = Echelon::tracking();
    for c in columns {
        e.insert(c.clone());
    }
    let (res, combo) = e.reduce(rhs.clone());
    if !res.is_empty() {
        return None;
    }
    let mut z = SparseVec::new();
    axpy(&mut z, &-Q::one(), &combo);
    Some(z)
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m[(i, j)] = Q::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| crate::q(x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&Q, &Q) -> Q) -> Result<Matrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Entries as a sparse vector keyed by row-major position.
    pub fn to_sparse(&self) -> SparseVec<usize> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }

    pub fn from_sparse(rows: usize, cols: usize, v: &SparseVec<usize>) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for (&i, x) in v {
            m.data[i] = x.clone();
        }
        m
    }

    pub fn column(&self, j: usize) -> SparseVec<usize> {
        (0..self.rows)
            .filter(|&i| !self[(i, j)].is_zero())
            .map(|i| (i, self[(i, j)].clone()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank((0..self.cols).map(|j| self.column(j)))
    }

    /// Basis of the right null space as column vectors.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let cols: Vec<_> = (0..self.cols).map(|j| self.column(j)).collect();
        kernel(&cols)
            .into_iter()
            .map(|z| (0..self.cols).map(|j| z.get(&j).cloned().unwrap_or_else(Q::zero)).collect())
            .collect()
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                for j in 0..n {
                    let t = a[(p, j)].clone();
                    a[(p, j)] = a[(c, j)].clone();
                    a[(c, j)] = t;
                }
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &a[(r, c)] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &a[(c, j)] * &f;
                    a[(r, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or_else(|| Error::Invalid("matrix is singular".into()))?;
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
            let piv = Q::one() / &a[(c, c)];
            for j in 0..n {
                a[(c, j)] *= &piv;
                inv[(c, j)] *= &piv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = &a[(c, j)] * &f;
                    a[(r, j)] -= t;
                    let t = &inv[(c, j)] * &f;
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec<usize> {
        pairs.iter().map(|&(k, v)| (k, q(v))).collect()
    }

    #[test]
    fn rank_and_kernel_agree() {
        let cols = vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(2, 1)])];
        assert_eq!(rank(cols.clone()), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        let mut acc = SparseVec::new();
        for (i, c) in &k[0] {
            axpy(&mut acc, c, &cols[*i]);
        }
        assert!(acc.is_empty());
    }

    #[test]
    fn solve_finds_combination() {
        let cols = vec![sv(&[(0, 1)]), sv(&[(0, 1), (1, 1)])];
        let z = solve(&cols, &sv(&[(0, 3), (1, 2)])).unwrap();
        assert_eq!(z.get(&0), Some(&q(1)));
        assert_eq!(z.get(&1), Some(&q(2)));
        assert!(solve(&cols, &sv(&[(5, 1)])).is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det().unwrap(), q(1));
        let i = m.inverse().unwrap();
        assert_eq!(m.mul(&i).unwrap(), Matrix::identity(2));
    }
}
