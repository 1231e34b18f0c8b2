//! Dense matrices over `Z/m` with `m < 2^63`.

use std::fmt;

/// Row-major square or rectangular matrix with entries in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from signed rows, reducing each entry mod `modulus`.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m.set_signed(i, j, x);
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

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.modulus;
    }

    pub fn set_signed(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x.rem_euclid(self.modulus as i64) as u64;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(columns: &[Vec<u64>], modulus: u64) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, modulus);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let m = self.modulus as u128;
        let mut out = Self::zeros(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u128 * other.get(k, j) as u128) % m;
                }
                out.data[i * out.cols + j] = acc as u64;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let m = self.modulus as u128;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u128, |acc, k| {
                    (acc + self.get(i, k) as u128 * (v[k] % self.modulus) as u128) % m
                }) as u64
            })
            .collect()
    }

    pub fn scale(&self, s: i64) -> Self {
        let s = s.rem_euclid(self.modulus as i64) as u128;
        let m = self.modulus as u128;
        Self {
            data: self
                .data
                .iter()
                .map(|&x| (x as u128 * s % m) as u64)
                .collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> u64 {
        let my = self.mul_vec(y);
        let m = self.modulus as u128;
        x.iter().zip(&my).fold(0u128, |acc, (&a, &b)| {
            (acc + (a % self.modulus) as u128 * b as u128) % m
        }) as u64
    }

    /// `Aᵀ = −A` with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| {
            self.get(i, i) == 0
                && (0..self.rows)
                    .all(|j| (self.get(i, j) + self.get(j, i)).is_multiple_of(self.modulus))
        })
    }

    /// Entries reduced into `Z/q` for a divisor `q` of the modulus.
    pub fn reduce(&self, q: u64) -> Self {
        assert_eq!(self.modulus % q, 0, "{q} does not divide {}", self.modulus);
        Self {
            rows: self.rows,
            cols: self.cols,
            modulus: q,
            data: self.data.iter().map(|&x| x % q).collect(),
        }
    }

    /// Rank over `F_p` of the reduction mod a prime `p` dividing the modulus.
    pub fn rank_mod_prime(&self, p: u64) -> usize {
        let mut a = self.reduce(p);
        let inv = |x: u64| crate::arithmetic::pow_mod(x, p - 2, p);
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| a.get(r, col) != 0) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(rank * a.cols + j, pivot * a.cols + j);
            }
            let s = inv(a.get(rank, col));
            let mulp = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
            for j in 0..a.cols {
                let x = mulp(a.get(rank, j), s);
                a.set(rank, j, x);
            }
            for r in 0..a.rows {
                if r != rank && a.get(r, col) != 0 {
                    let factor = a.get(r, col);
                    for j in 0..a.cols {
                        let x = (a.get(r, j) + p - mulp(factor, a.get(rank, j))) % p;
                        a.set(r, j, x);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the right kernel of the reduction mod `p`.
    pub fn kernel_dim_mod_prime(&self, p: u64) -> usize {
        self.cols - self.rank_mod_prime(p)
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        assert_eq!(a.modulus, b.modulus, "modulus mismatch");
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols, a.modulus);
        out.paste(a, 0, 0);
        out.paste(b, a.rows, a.cols);
        out
    }

    /// `[[0, upper], [lower, 0]]`.
    pub fn block_antidiag(upper: &Self, lower: &Self) -> Self {
        assert_eq!(upper.modulus, lower.modulus, "modulus mismatch");
        let mut out = Self::zeros(
            upper.rows + lower.rows,
            lower.cols + upper.cols,
            upper.modulus,
        );
        out.paste(upper, 0, lower.cols);
        out.paste(lower, upper.rows, 0);
        out
    }

    fn paste(&mut self, block: &Self, r0: usize, c0: usize) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_transpose() {
        let a = ModMatrix::from_rows(&[vec![1, 2], vec![3, 4]], 7);
        let b = ModMatrix::from_rows(&[vec![0, -1], vec![1, 0]], 7);
        assert_eq!(
            a.mul(&b),
            ModMatrix::from_rows(&[vec![2, -1], vec![4, -3]], 7)
        );
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&ModMatrix::identity(2, 7)), a);
        assert_eq!(a.bilinear(&[1, 0], &[0, 1]), 2);
    }

    #[test]
    fn rank_over_prime_field() {
        let m = ModMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 5]], 125);
        assert_eq!(m.rank_mod_prime(5), 1);
        assert_eq!(m.kernel_dim_mod_prime(5), 2);
        assert_eq!(ModMatrix::identity(4, 27).rank_mod_prime(3), 4);
        assert_eq!(ModMatrix::zeros(3, 3, 9).rank_mod_prime(3), 0);
    }

    #[test]
    fn block_shapes() {
        let a = ModMatrix::from_rows(&[vec![1, 2], vec![3, 4]], 11);
        let z = ModMatrix::zeros(2, 2, 11);
        let d = ModMatrix::block_diag(&a, &a);
        assert_eq!(d.get(2, 3), 2);
        assert_eq!(d.get(0, 2), 0);
        let s = ModMatrix::block_antidiag(&a, &z);
        assert_eq!(s.get(0, 2), 1);
        assert_eq!(s.get(2, 0), 0);
        let sq = ModMatrix::block_antidiag(&a, &a).mul(&ModMatrix::block_antidiag(&a, &a));
        assert_eq!(sq, ModMatrix::block_diag(&a.mul(&a), &a.mul(&a)));
    }

    #[test]
    fn alternating_check() {
        assert!(ModMatrix::from_rows(&[vec![0, 1], vec![-1, 0]], 5).is_alternating());
        assert!(!ModMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 5).is_alternating());
        assert!(!ModMatrix::from_rows(&[vec![1, 0], vec![0, 0]], 5).is_alternating());
    }
}
