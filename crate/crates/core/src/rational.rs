//! Exact scalars and exact symmetric matrices.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in canonical form.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Formats as `p/q` (or `p` for integers).
pub fn format(q: &Rational) -> String {
    q.to_string()
}

pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Square root of a rational if it is a perfect square.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Dense symmetric matrix with exact entries. Setting `(i, j)` also sets `(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Matrix with every entry equal to one.
    pub fn ones(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![Rational::one(); n * n],
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds from a closure evaluated on the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Fails if `rows` is not square or not symmetric.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::invalid("matrix is not square"));
            }
            data.extend(row.iter().cloned());
        }
        let m = SymMatrix { n, data };
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::invalid(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v.clone();
        self.data[j * self.n + i] = v;
    }

    /// Adds `v` to `(i, j)` and, off the diagonal, to `(j, i)`.
    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    /// `P M P^T` where row `k` of the result is row `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        self.principal(perm)
    }

    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.n {
                row += self.get(i, j) * &v[j];
            }
            acc += &v[i] * row;
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| to_f64(self.get(i, j))).collect())
            .collect()
    }

    /// One row per line, exact `p/q` cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format(self.get(i, j))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Schur complement `M / M[keep_out, keep_out]` onto the index set `keep`.
    ///
    /// Returns `M_kk - M_ko M_oo^{-1} M_ok`. An empty `eliminate` set returns the
    /// principal block unchanged.
    pub fn schur_complement(&self, keep: &[usize], eliminate: &[usize]) -> Result<SymMatrix> {
        let a = self.principal(keep);
        if eliminate.is_empty() {
            return Ok(a);
        }
        let m22: Vec<Vec<Rational>> = eliminate
            .iter()
            .map(|&i| eliminate.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        let m21: Vec<Vec<Rational>> = eliminate
            .iter()
            .map(|&i| keep.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        let x = solve(m22, m21)?;
        // a - M12 X, with M12 = M21^T
        Ok(SymMatrix::from_fn(keep.len(), |i, j| {
            let mut acc = a.get(i, j).clone();
            for (r, &e) in eliminate.iter().enumerate() {
                let c = self.get(keep[i], e);
                if !c.is_zero() {
                    acc -= c * &x[r][j];
                }
            }
            acc
        }))
    }
}

/// Solves `A X = B` exactly by Gauss-Jordan elimination.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Vec<Rational>>) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let cols = b.first().map_or(0, Vec::len);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for v in b[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            for c in 0..cols {
                let d = &f * &b[col][c];
                b[r][c] -= d;
            }
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert_eq!(format(&frac(-3, 2)), "-3/2");
        assert_eq!(format(&int(4)), "4");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(exact_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }

    #[test]
    fn schur_of_two_by_two() {
        // [[2,1],[1,2]] / [2] = 2 - 1/2
        let m = SymMatrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]).unwrap();
        let s = m.schur_complement(&[0], &[1]).unwrap();
        assert_eq!(s.get(0, 0), &frac(3, 2));
        let z = SymMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(0)]]).unwrap();
        assert!(matches!(z.schur_complement(&[0], &[1]), Err(Error::Singular(_))));
    }

    #[test]
    fn rejects_asymmetric_rows() {
        assert!(SymMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(1)]]).is_err());
    }
}
