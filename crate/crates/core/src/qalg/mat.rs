use super::ring::Ring;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
///
/// A prototype zero is stored so empty products and fresh matrices can be
/// built without a separate context argument.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        let zero = zero.zero_like();
        Mat { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let mut m = Self::zeros(n, n, proto);
        let one = proto.one_like();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn scalar(n: usize, x: &T) -> Self {
        let mut m = Self::zeros(n, n, x);
        for i in 0..n {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, proto: &T) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Ok(Mat { rows: r, cols: c, data, zero: proto.zero_like() })
    }

    pub fn from_fn(rows: usize, cols: usize, proto: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data, zero: proto.zero_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: self.zero.clone() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose with respect to the ring involution.
    pub fn star(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).conj())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale_left(&self, s: &T) -> Self {
        self.map(|x| s.mul(x))
    }

    pub fn scale_right(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        *x == x.one_like()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(factors: &[&Self]) -> Result<Self> {
        let mut it = factors.iter();
        let first = it.next().ok_or_else(|| Error::Shape("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in it {
            acc = acc.try_mul(f)?;
        }
        Ok(acc)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, &self.zero, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Select rows and columns by index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn block_diag(blocks: &[&Self], proto: &T) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c, proto);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            m.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    /// Inverse by Gauss-Jordan elimination with left row operations,
    /// valid over any division ring.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, &self.zero);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let pinv = a.get(col, col).inv().expect("nonzero pivot is invertible");
            a.left_scale_row(col, &pinv);
            inv.left_scale_row(col, &pinv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn left_scale_row(&mut self, i: usize, s: &T) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            self.data[idx] = s.mul(&self.data[idx]);
        }
    }

    /// row_r <- row_r - f * row_src
    fn sub_row_multiple(&mut self, r: usize, src: usize, f: &T) {
        for c in 0..self.cols {
            let v = f.mul(self.get(src, c));
            let idx = r * self.cols + c;
            self.data[idx] = self.data[idx].sub(&v);
        }
    }

    /// Determinant by Gaussian elimination; only meaningful
    /// over a commutative ring.
    pub fn det_commutative(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.zero.one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(self.zero.clone());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).mul(&pinv);
                a.sub_row_multiple(r, col, &f);
            }
        }
        Ok(det)
    }

    pub fn trace(&self) -> T {
        let mut t = self.zero.clone();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }
}
