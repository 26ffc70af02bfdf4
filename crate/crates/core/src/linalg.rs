//! Dense exact linear algebra over the rational-function field: products,
//! reduced row echelon form, null spaces, solving, inversion. Matrices here
//! are small (weight-space blocks), so dense storage with zero-skip is fine.

use crate::scalars::RatFunc;

pub type Vector = Vec<RatFunc>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RatFunc>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = RatFunc::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn scaled(&self, c: &RatFunc) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)] = &out[(i, j)] + &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vector {
        assert_eq!(self.cols, v.len());
        let mut out = vec![RatFunc::zero(); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() || v[k].is_zero() {
                    continue;
                }
                out[i] = &out[i] + &(a * &v[k]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[RatFunc]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self[(row, col)].inv().expect("pivot is nonzero");
            for j in col..self.cols {
                self[(row, j)] = &self[(row, j)] * &inv;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let sub = &factor * &self[(row, j)];
                    self[(r, j)] = &self[(r, j)] - &sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Echelonized basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![RatFunc::zero(); self.cols];
            v[free] = RatFunc::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = b; None when inconsistent. If the system is
    /// underdetermined, free variables are set to zero.
    pub fn solve(&self, b: &[RatFunc]) -> Option<Vector> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![RatFunc::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = RatFunc::one();
        }
        let pivots = aug.rref();
        // invertible iff every pivot lands in the left block
        if pivots.len() != n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = RatFunc;
    fn index(&self, (i, j): (usize, usize)) -> &RatFunc {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RatFunc {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental echelon span tracker for homogeneous vectors, used when
/// generating submodules weight space by weight space.
#[derive(Clone, Default, Debug)]
pub struct EchelonSpan {
    /// rows in echelon form, each paired with its pivot position
    rows: Vec<(usize, Vector)>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the span; returns the residual.
    pub fn reduce(&self, v: &[RatFunc]) -> Vector {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let sub = &c * r;
                *x = &*x - &sub;
            }
        }
        v
    }

    /// Insert v if independent of the current span. Returns true on insert.
    pub fn insert(&mut self, v: &[RatFunc]) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].inv().expect("pivot nonzero");
        let normalized: Vector = r.iter().map(|x| x * &inv).collect();
        self.rows.push((pivot, normalized));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    pub fn contains(&self, v: &[RatFunc]) -> bool {
        self.reduce(v).iter().all(RatFunc::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::LaurentPoly;

    fn rf(c: i64) -> RatFunc {
        RatFunc::from_int(c)
    }

    fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    #[test]
    fn mul_identity() {
        let mut a = Mat::zero(2, 2);
        a[(0, 0)] = q();
        a[(0, 1)] = rf(3);
        a[(1, 1)] = RatFunc::q_pow(-2);
        assert_eq!(a.mul(&Mat::identity(2)), a);
    }

    #[test]
    fn inverse_round_trip() {
        let mut a = Mat::zero(2, 2);
        a[(0, 0)] = q();
        a[(0, 1)] = rf(1);
        a[(1, 0)] = rf(1);
        a[(1, 1)] = RatFunc::q_pow(-1);
        // det = 1 - 1 = 0: singular
        assert!(a.inverse().is_none());
        a[(1, 1)] = q();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert_eq!(inv.mul(&a), Mat::identity(2));
    }

    #[test]
    fn nullspace_of_rank_one() {
        // [q, q^2] has null space spanned by (q, -1) up to scaling
        let mut a = Mat::zero(1, 2);
        a[(0, 0)] = q();
        a[(0, 1)] = RatFunc::q_pow(2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let lhs = &(&a[(0, 0)] * &v[0]) + &(&a[(0, 1)] * &v[1]);
        assert!(lhs.is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut a = Mat::zero(2, 2);
        a[(0, 0)] = rf(1);
        a[(0, 1)] = q();
        a[(1, 0)] = rf(2);
        a[(1, 1)] = &q() + &q();
        // rank 1: b must be proportional
        assert!(a.solve(&[rf(1), rf(2)]).is_some());
        assert!(a.solve(&[rf(1), rf(3)]).is_none());
        let x = a.solve(&[q(), &q() + &q()]).unwrap();
        let b0 = &(&a[(0, 0)] * &x[0]) + &(&a[(0, 1)] * &x[1]);
        assert_eq!(b0, q());
    }

    #[test]
    fn echelon_span_tracks_independence() {
        let mut span = EchelonSpan::new();
        let one = RatFunc::one();
        let z = RatFunc::zero();
        assert!(span.insert(&[one.clone(), q(), z.clone()]));
        assert!(!span.insert(&[&one + &one, &q() + &q(), z.clone()]));
        assert!(span.insert(&[z.clone(), one.clone(), one.clone()]));
        assert_eq!(span.dim(), 2);
        let sd = RatFunc::from_poly(LaurentPoly::q_pow(0));
        assert!(span.contains(&[sd, q(), z]));
    }
}
