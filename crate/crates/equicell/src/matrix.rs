//! Dense matrices over arbitrary-precision integers and their Smith normal
//! form. Everything downstream (boundary operators, homology, commutator
//! reduction) runs through this module, so all arithmetic is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row-major matrix over `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from integer rows; panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row in matrix literal");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        let idx = i * self.cols + j;
        self.data[idx] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Keep the rows/columns whose indices are listed, in the given order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(row_idx.len(), col_idx.len());
        for (i, &ri) in row_idx.iter().enumerate() {
            for (j, &cj) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(ri, cj).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[t * self.cols + j] * q;
            self.data[i * self.cols + j] -= v;
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + t] * q;
            self.data[i * self.cols + j] -= v;
        }
    }

    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j].clone();
            self.data[t * self.cols + j] += v;
        }
    }

    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank
    }

    /// Smith normal form by repeated pivoting on a minimal-magnitude entry.
    /// Returns the diagonal, positive, each entry dividing the next.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut a = self.clone();
        let bound = a.rows.min(a.cols);
        let mut diag = Vec::with_capacity(bound);
        let mut t = 0;
        while t < bound {
            let Some((pi, pj)) = a.min_nonzero_from(t) else {
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            loop {
                // clear column t with Euclidean steps
                let mut dirty = false;
                for i in t + 1..a.rows {
                    if !a.get(i, t).is_zero() {
                        let q = a.get(i, t) / a.get(t, t);
                        a.row_sub(i, t, &q);
                        if !a.get(i, t).is_zero() {
                            a.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // clear row t
                for j in t + 1..a.cols {
                    if !a.get(t, j).is_zero() {
                        let q = a.get(t, j) / a.get(t, t);
                        a.col_sub(j, t, &q);
                        if !a.get(t, j).is_zero() {
                            a.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the remaining block for the divisibility chain
                match a.nondivisible_from(t) {
                    Some(i) => {
                        a.row_add(t, i);
                    }
                    None => break,
                }
            }
            if a.get(t, t).is_negative() {
                for j in 0..a.cols {
                    let idx = t * a.cols + j;
                    let v = -a.data[idx].clone();
                    a.data[idx] = v;
                }
            }
            diag.push(a.get(t, t).clone());
            t += 1;
        }
        SmithForm { rank: diag.len(), factors: diag }
    }

    fn min_nonzero_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs: Option<BigInt> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best_abs.as_ref().is_none_or(|b| a < *b) {
                    if a.is_one() {
                        return Some((i, j));
                    }
                    best_abs = Some(a);
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Row index below t holding an entry not divisible by the pivot.
    fn nondivisible_from(&self, t: usize) -> Option<usize> {
        let p = self.get(t, t);
        if p.is_one() {
            return None;
        }
        for i in t + 1..self.rows {
            for j in t + 1..self.cols {
                if !(self.get(i, j) % p).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Diagonal of the Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors bigger than one, i.e. the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}
