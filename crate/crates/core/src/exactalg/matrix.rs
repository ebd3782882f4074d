use std::fmt;

use super::field::{FpElement, PrimeField};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Panics if rows are ragged.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| field.reduce(v)));
        }
        FpMatrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    pub fn diagonal(field: PrimeField, diag: &[u64]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Companion matrix of a monic polynomial; its characteristic polynomial
    /// is the polynomial itself.
    pub fn companion(poly: &UPoly) -> Self {
        let f = poly.field();
        let monic = poly.monic();
        let n = monic.degree().expect("nonzero polynomial");
        let mut m = Self::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(monic.coeff(i)));
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn elem(&self, i: usize, j: usize) -> FpElement {
        self.field.elem(self.get(i, j))
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = self.field;
        FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// `v^T M w`.
    pub fn bilinear(&self, v: &[u64], w: &[u64]) -> u64 {
        let f = self.field;
        v.iter()
            .zip(self.mul_vec(w))
            .fold(0, |acc, (&a, b)| f.add(acc, f.mul(a, b)))
    }

    /// Rank by fraction-free elimination: rows are combined as
    /// `pivot * row - factor * pivot_row`, so no inverses are taken.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    a.swap(piv * cols + j, rank * cols + j);
                }
            }
            let pv = a[rank * cols + col];
            for r in rank + 1..rows {
                let factor = a[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for j in col..cols {
                    let v = f.sub(f.mul(pv, a[r * cols + j]), f.mul(factor, a[rank * cols + j]));
                    a[r * cols + j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return Ok(0);
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv)?;
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        Ok(det)
    }

    /// Monic characteristic polynomial `det(tI - M)`, via reduction to upper
    /// Hessenberg form followed by the standard three-term recurrence.
    pub fn charpoly(&self) -> Result<UPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut h = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        for m in 1..n.saturating_sub(1) {
            let Some(piv) = (m..n).find(|&i| h[at(i, m - 1)] != 0) else {
                continue;
            };
            if piv != m {
                for j in 0..n {
                    h.swap(at(piv, j), at(m, j));
                }
                for i in 0..n {
                    h.swap(at(i, piv), at(i, m));
                }
            }
            let inv = f.inv(h[at(m, m - 1)])?;
            for i in m + 1..n {
                let u = f.mul(h[at(i, m - 1)], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    h[at(i, j)] = f.sub(h[at(i, j)], f.mul(u, h[at(m, j)]));
                }
                for r in 0..n {
                    h[at(r, m)] = f.add(h[at(r, m)], f.mul(u, h[at(r, i)]));
                }
            }
        }
        // p_k is the charpoly of the leading k x k block.
        let mut polys: Vec<UPoly> = vec![UPoly::constant(f, 1)];
        for k in 1..=n {
            let diag = h[at(k - 1, k - 1)];
            let mut pk = polys[k - 1].mul(&UPoly::new(f, vec![f.neg(diag), 1]));
            let mut t = 1u64;
            for i in (1..k).rev() {
                t = f.mul(t, h[at(i, i - 1)]);
                let coef = f.mul(h[at(i - 1, k - 1)], t);
                pk = pk.sub(&polys[i - 1].scale(coef));
            }
            polys.push(pk);
        }
        Ok(polys.pop().expect("nonempty"))
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Prng;

    fn random_matrix(field: PrimeField, rng: &mut Prng, r: usize, c: usize) -> FpMatrix {
        let rows: Vec<Vec<u64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.below(field.modulus())).collect())
            .collect();
        FpMatrix::from_rows(field, &rows)
    }

    /// Low-rank matrices: product of random r x k and k x c factors.
    fn random_low_rank(field: PrimeField, rng: &mut Prng, r: usize, c: usize, k: usize) -> FpMatrix {
        random_matrix(field, rng, r, k).mul(&random_matrix(field, rng, k, c))
    }

    fn det_by_cofactors(m: &FpMatrix) -> u64 {
        let f = m.field();
        let n = m.rows();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for j in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let rows: Vec<usize> = (1..n).collect();
            let minor = det_by_cofactors(&m.submatrix(&rows, &rest));
            let term = f.mul(m.get(0, j), minor);
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Rank as the largest size of a nonvanishing square minor.
    fn rank_by_minors(m: &FpMatrix) -> usize {
        let max = m.rows().min(m.cols());
        (1..=max)
            .rev()
            .find(|&k| {
                subsets(m.rows(), k).iter().any(|rs| {
                    subsets(m.cols(), k)
                        .iter()
                        .any(|cs| det_by_cofactors(&m.submatrix(rs, cs)) != 0)
                })
            })
            .unwrap_or(0)
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(FpMatrix::diagonal(f, &[1, 1, 1, 0]).rank(), 3);
        assert_eq!(FpMatrix::zeros(f, 4, 4).rank(), 0);
        assert_eq!(FpMatrix::identity(f, 4).rank(), 4);
    }

    #[test]
    fn rank_matches_minor_oracle() {
        let f = PrimeField::new(11).unwrap();
        let mut rng = Prng::new(77);
        for trial in 0..200 {
            let (r, c) = (1 + rng.below(4) as usize, 1 + rng.below(4) as usize);
            let m = if trial % 2 == 0 {
                random_matrix(f, &mut rng, r, c)
            } else {
                let k = 1 + rng.below(3) as usize;
                random_low_rank(f, &mut rng, r, c, k)
            };
            assert_eq!(m.rank(), rank_by_minors(&m), "{m}");
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let f = PrimeField::new(32003).unwrap();
        let mut rng = Prng::new(3);
        for n in 1..6 {
            for _ in 0..20 {
                let m = random_matrix(f, &mut rng, n, n);
                assert_eq!(m.det().unwrap(), det_by_cofactors(&m));
            }
        }
        assert!(matches!(
            FpMatrix::zeros(f, 2, 3).det(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn charpoly_examples() {
        let f = PrimeField::new(7).unwrap();
        let id = FpMatrix::identity(f, 2);
        assert_eq!(id.charpoly().unwrap(), UPoly::from_i64(f, &[1, -2, 1]));
        let target = UPoly::from_i64(f, &[5, 2, 0, 1]);
        assert_eq!(FpMatrix::companion(&target).charpoly().unwrap(), target);
        assert!(matches!(
            FpMatrix::zeros(f, 2, 3).charpoly(),
            Err(Error::NonSquare { .. })
        ));
        assert_eq!(FpMatrix::zeros(f, 0, 0).charpoly().unwrap(), UPoly::constant(f, 1));
    }

    /// det(tI - M) expanded by cofactors with polynomial entries.
    fn charpoly_by_cofactors(m: &FpMatrix) -> UPoly {
        let f = m.field();
        let n = m.rows();
        let entries: Vec<Vec<UPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = f.neg(m.get(i, j));
                        UPoly::new(f, if i == j { vec![c, 1] } else { vec![c] })
                    })
                    .collect()
            })
            .collect();
        fn det(f: PrimeField, e: &[Vec<UPoly>], rows: &[usize], cols: &[usize]) -> UPoly {
            if rows.is_empty() {
                return UPoly::constant(f, 1);
            }
            let mut acc = UPoly::zero(f);
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = e[rows[0]][c].mul(&det(f, e, &rows[1..], &rest));
                acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        det(f, &entries, &idx, &idx)
    }

    #[test]
    fn charpoly_matches_cofactor_oracle() {
        let f = PrimeField::new(32003).unwrap();
        let mut rng = Prng::new(55);
        for n in 1..=5 {
            for _ in 0..10 {
                let m = random_matrix(f, &mut rng, n, n);
                assert_eq!(m.charpoly().unwrap(), charpoly_by_cofactors(&m));
            }
        }
        // Sparse and structured inputs exercise the pivot-free Hessenberg branches.
        let m = FpMatrix::from_i64_rows(
            f,
            &[vec![0, 0, 1, 0, 0], vec![0, 0, 0, 0, 0], vec![1, 0, 0, 0, 0], vec![0, 3, 0, 0, 1], vec![0, 0, 0, 2, 0]],
        );
        assert_eq!(m.charpoly().unwrap(), charpoly_by_cofactors(&m));
    }

    #[test]
    fn cayley_hamilton_up_to_size_six() {
        for p in [7u64, 101, 32003] {
            let f = PrimeField::new(p).unwrap();
            let mut rng = Prng::new(p);
            for n in 1..=6 {
                for trial in 0..10 {
                    let m = if trial % 3 == 0 {
                        random_low_rank(f, &mut rng, n, n, 1 + (trial % n))
                    } else {
                        random_matrix(f, &mut rng, n, n)
                    };
                    let cp = m.charpoly().unwrap();
                    assert_eq!(cp.degree(), Some(n));
                    assert_eq!(cp.leading(), 1);
                    assert!(cp.eval_matrix(&m).is_zero(), "p={p} n={n}\n{m}");
                }
            }
        }
    }
}
