//! Dense matrices over an exact field and Gaussian elimination.

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> DenseMatrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        DenseMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        DenseMatrix {
            field,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &K::Elem) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(&self.data[k], v);
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| {
                        self.field.add(&acc, &self.field.mul(a, b))
                    })
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Pivots are the first nonzero entry at or below the current row, which
    /// is exact for the rationals and prime fields.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : M x = 0}`, returned in reduced row echelon form with
    /// vectors ordered by pivot position.
    pub fn nullspace(&self) -> Vec<Vec<K::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<K::Elem>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect();
        if raw.is_empty() {
            return raw;
        }
        let mut basis = DenseMatrix::from_rows(f.clone(), raw);
        let rank = basis.rref().len();
        (0..rank).map(|i| basis.row(i).to_vec()).collect()
    }
}
