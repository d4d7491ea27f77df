use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

macro_rules! dense_common {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self {
                    rows,
                    cols,
                    data: vec![<$elem>::zero(); rows * cols],
                }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = <$elem>::one();
                }
                m
            }

            pub fn from_rows(rows: Vec<Vec<$elem>>) -> Self {
                let r = rows.len();
                let c = rows.first().map_or(0, |row| row.len());
                assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
                Self {
                    rows: r,
                    cols: c,
                    data: rows.into_iter().flatten().collect(),
                }
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

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn to_rows(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[(j, i)] = self[(i, j)].clone();
                    }
                }
                t
            }

            pub fn is_symmetric(&self) -> bool {
                self.is_square()
                    && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
            }

            pub fn mul(&self, rhs: &Self) -> Self {
                assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
                let mut out = Self::zeros(self.rows, rhs.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..rhs.cols {
                            let b = &rhs[(k, j)];
                            if !b.is_zero() {
                                out[(i, j)] += a * b;
                            }
                        }
                    }
                }
                out
            }

            pub fn swap_rows(&mut self, a: usize, b: usize) {
                if a != b {
                    for j in 0..self.cols {
                        self.data.swap(a * self.cols + j, b * self.cols + j);
                    }
                }
            }

            pub fn swap_cols(&mut self, a: usize, b: usize) {
                if a != b {
                    for i in 0..self.rows {
                        self.data.swap(i * self.cols + a, i * self.cols + b);
                    }
                }
            }

            /// Block-diagonal sum.
            pub fn direct_sum(&self, other: &Self) -> Self {
                let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        out[(i, j)] = self[(i, j)].clone();
                    }
                }
                for i in 0..other.rows {
                    for j in 0..other.cols {
                        out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
                    }
                }
                out
            }

            pub fn is_diagonal(&self) -> bool {
                (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
            }
        }

        impl Index<(usize, usize)> for $ty {
            type Output = $elem;
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                &self.data[i * self.cols + j]
            }
        }

        impl IndexMut<(usize, usize)> for $ty {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                &mut self.data[i * self.cols + j]
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for i in 0..self.rows {
                    let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                    writeln!(f, "[{}]", row.join(", "))?;
                }
                Ok(())
            }
        }
    };
}

dense_common!(IntMatrix, BigInt);
dense_common!(RatMatrix, Rational);

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().cloned().map(Rational::from_integer).collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Quadratic form `x^T A y` with rational vectors.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if !a.is_zero() && !y[j].is_zero() {
                    row += &y[j] * Rational::from_integer(a.clone());
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// `A * x` for a rational column vector.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !x[j].is_zero() {
                        acc += &x[j] * Rational::from_integer(self[(i, j)].clone());
                    }
                }
                acc
            })
            .collect()
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Diagonal entries (up to the shorter side).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }
}

impl RatMatrix {
    /// Rows of `self` times `rhs`, treating `self` rows as coordinate vectors.
    pub fn mul_int(&self, rhs: &IntMatrix) -> RatMatrix {
        self.mul(&rhs.to_rational())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += xi * a;
                }
            }
        }
        out
    }

    /// Converts to an integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }

    /// General exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(ExactError::DegenerateGram)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let da = &f * &a[(col, j)];
                    a[(r, j)] -= da;
                    let di = &f * &inv[(col, j)];
                    inv[(r, j)] -= di;
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for j in col..n {
                    let d = &f * &a[(col, j)];
                    a[(r, j)] -= d;
                }
            }
        }
        det
    }
}

/// Result of a Smith normal form computation: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `d`, nonnegative, each dividing the next (zeros last).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the entry of smallest absolute value in the active block,
/// scanned row by row, is moved to the pivot position.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the active block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[(bi, bj)].abs() <= d[(i, j)].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let pivot = d[(t, t)].clone();
            let offending =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Row Hermite normal form: same row space, echelon shape, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows last.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // gcd-combine column c over rows r..m into row r
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[(b, c)].abs() <= h[(i, c)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&p);
            h.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    h
}

/// Exact inverse of a nondegenerate symmetric integer matrix.
pub fn invert_symmetric(g: &IntMatrix) -> Result<RatMatrix, ExactError> {
    if !g.is_symmetric() {
        return Err(ExactError::Dimension("matrix is not symmetric".into()));
    }
    g.to_rational().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn a2() -> IntMatrix {
        IntMatrix::from_i64(&[&[-2, 1], &[1, -2]])
    }

    #[test]
    fn snf_one_by_one() {
        let s = snf(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(s.d, IntMatrix::from_i64(&[&[2]]));
    }

    #[test]
    fn snf_a2_gram() {
        let s = snf(&a2());
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(s.u.mul(&a2()).mul(&s.v), s.d);
    }

    #[test]
    fn snf_zero_matrix() {
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(snf(&z).d, z);
    }

    #[test]
    fn snf_rectangular() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12]]);
        let s = snf(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn hnf_examples() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(hnf(&a), a);
        let b = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(hnf(&b), IntMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        let c = IntMatrix::from_i64(&[&[3, -6, 9], &[1, -2, 3]]);
        assert_eq!(hnf(&c), IntMatrix::from_i64(&[&[1, -2, 3], &[0, 0, 0]]));
    }

    #[test]
    fn inverse_examples() {
        let inv = invert_symmetric(&IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(inv[(0, 0)], rat(1, 2));
        let inv = invert_symmetric(&a2()).unwrap();
        let expect = RatMatrix::from_rows(vec![
            vec![rat(-2, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(-2, 3)],
        ]);
        assert_eq!(inv, expect);
        assert_eq!(invert_symmetric(&IntMatrix::identity(3)).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn singular_is_degenerate() {
        let s = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(invert_symmetric(&s), Err(ExactError::DegenerateGram));
    }

    #[test]
    fn determinants_agree() {
        let a = IntMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), BigInt::from(18));
        assert_eq!(a.to_rational().det(), rat(18, 1));
    }
}
