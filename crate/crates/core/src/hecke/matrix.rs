//! Square matrices stored by rows, sparse, plus dense Gaussian elimination
//! for kernels, ranks and inverses.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Square sparse matrix; each row holds (column, value) pairs sorted by
/// column with no stored zeros.
#[derive(Clone, Debug)]
pub struct SMat<F> {
    n: usize,
    rows: Vec<Vec<(usize, F)>>,
}

impl<F: Field> PartialEq for SMat<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                a.len() == b.len() && a.iter().zip(b).all(|((i, x), (j, y))| i == j && x.close(y))
            })
    }
}

impl<F: Field> SMat<F> {
    pub fn zeros(n: usize) -> Self {
        SMat {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag((0..n).map(|_| F::one()).collect())
    }

    pub fn diag(d: Vec<F>) -> Self {
        let n = d.len();
        let rows = d
            .into_iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { vec![] } else { vec![(i, x)] })
            .collect();
        SMat { n, rows }
    }

    pub fn scalar(n: usize, x: F) -> Self {
        Self::diag(vec![x; n])
    }

    pub fn from_dense(d: &[Vec<F>]) -> Self {
        let n = d.len();
        let rows = d
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SMat { n, rows }
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); n];
        for (i, j, x) in entries {
            let slot = acc[i].entry(j).or_insert_with(F::zero);
            *slot = slot.clone() + x;
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        SMat { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        let row = &mut self.rows[i];
        row.retain(|(c, _)| *c != j);
        if !x.is_zero() {
            row.push((j, x));
            row.sort_by_key(|(c, _)| *c);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.n]; self.n];
        for (i, j, x) in self.entries() {
            d[i][j] = x.clone();
        }
        d
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SMat<G> {
        SMat::from_entries(self.n, self.entries().map(|(i, j, x)| (i, j, f(x))))
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "dimension mismatch");
        SMat::from_entries(
            self.n,
            self.entries()
                .chain(o.entries())
                .map(|(i, j, x)| (i, j, x.clone())),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, F> = BTreeMap::new();
                for (k, x) in r {
                    for (j, y) in &o.rows[*k] {
                        let slot = acc.entry(*j).or_insert_with(F::zero);
                        *slot = slot.clone() + x.clone() * y.clone();
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SMat { n: self.n, rows }
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(n: usize, ms: &[&Self]) -> Self {
        ms.iter().fold(Self::identity(n), |acc, m| acc.mul(m))
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(F::zero(), |acc, (j, x)| acc + x.clone() * v[*j].clone())
            })
            .collect()
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|(_, _, x)| x.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries()
            .map(|(_, _, x)| x.magnitude())
            .fold(0.0, f64::max)
    }

    /// Connected components of the graph with an edge i–j whenever (i,j)
    /// or (j,i) is a stored entry.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (i, j, _) in self.entries() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Inverse, computed block by block over the connected components.
    pub fn inverse(&self) -> Result<Self> {
        let mut entries = Vec::new();
        for block in self.blocks() {
            let m = block.len();
            let mut local = vec![vec![F::zero(); m]; m];
            let pos: BTreeMap<usize, usize> =
                block.iter().enumerate().map(|(a, &g)| (g, a)).collect();
            for (a, &g) in block.iter().enumerate() {
                for (j, x) in &self.rows[g] {
                    local[a][pos[j]] = x.clone();
                }
            }
            let inv = dense_inverse(&local)?;
            for (a, row) in inv.into_iter().enumerate() {
                for (b, x) in row.into_iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((block[a], block[b], x));
                    }
                }
            }
        }
        Ok(SMat::from_entries(self.n, entries))
    }
}

impl<F: Field + Serialize> Serialize for SMat<F> {
    /// Dense row-major form.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for row in self.to_dense() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // partial pivoting by magnitude for the float backend
        let best = if F::EXACT {
            (r..rows).find(|&i| !m[i][c].is_zero())
        } else {
            (r..rows).filter(|&i| !m[i][c].is_zero()).max_by(|&a, &b| {
                m[a][c]
                    .magnitude()
                    .partial_cmp(&m[b][c].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        };
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the null space {x : Mx = 0} of an r×n matrix.
pub fn kernel<F: Field>(m: &[Vec<F>], n: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn dense_inverse<F: Field>(m: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::DivisionByZero);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn multiply_and_invert() {
        let a = SMat::from_dense(&[
            vec![s(1), s(2), s(0)],
            vec![s(3), s(4), s(0)],
            vec![s(0), s(0), s(5)],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), SMat::identity(3));
        assert_eq!(inv.get(2, 2), Scalar::frac(1, 5));
        assert_eq!(a.pow(-1).unwrap(), inv);
        assert_eq!(a.pow(2).unwrap(), a.mul(&a));
        let singular = SMat::from_dense(&[vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert_eq!(singular.inverse().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Scalar = m[0]
                .iter()
                .zip(v)
                .fold(Scalar::zero(), |a, (x, y)| a + x * y);
            assert!(dot.is_zero());
        }
    }

    proptest! {
        #[test]
        fn block_inverse_matches_dense(vals in prop::collection::vec(-4i64..5, 16)) {
            let d: Vec<Vec<Scalar>> = vals.chunks(4).map(|r| r.iter().map(|&x| s(x)).collect()).collect();
            let m = SMat::from_dense(&d);
            match dense_inverse(&d) {
                Ok(inv) => prop_assert_eq!(m.inverse().unwrap(), SMat::from_dense(&inv)),
                Err(_) => prop_assert!(m.inverse().is_err()),
            }
        }
    }
}
