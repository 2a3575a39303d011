//! Symmetric eigenproblems by cyclic Jacobi rotations.

/// Off-diagonal Frobenius norm at which the sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

impl Eigen {
    pub fn min(&self) -> Option<(f64, &[f64])> {
        self.values.first().map(|&v| (v, self.vectors[0].as_slice()))
    }
}

fn off_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of a symmetric matrix (only the upper triangle is read).
pub fn symmetric_eigen(input: &[Vec<f64>]) -> Eigen {
    let n = input.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if j >= i { input[i][j] } else { input[j][i] }).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < JACOBI_TOLERANCE {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    Eigen {
        values: order.iter().map(|&k| a[k][k]).collect(),
        vectors: order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect(),
    }
}

pub fn eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    symmetric_eigen(a).values
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &[Vec<f64>], lambda: f64, v: &[f64]) -> f64 {
        (0..a.len())
            .map(|i| {
                let av: f64 = (0..a.len()).map(|j| a[i][j] * v[j]).sum();
                (av - lambda * v[i]).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn two_by_two() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let e = symmetric_eigen(&a);
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!((e.values[1] - 3.0).abs() < 1e-12);
        assert!(residual(&a, e.values[0], &e.vectors[0]) < 1e-12);
    }

    #[test]
    fn complete_graph_laplacian() {
        // -Laplacian of K_5: eigenvalues 0, 5, 5, 5, 5
        let n = 5;
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 4.0 } else { -1.0 }).collect())
            .collect();
        let e = symmetric_eigen(&a);
        assert!(e.values[0].abs() < 1e-10);
        assert!(e.values[1..].iter().all(|x| (x - 5.0).abs() < 1e-10));
        for k in 0..n {
            assert!(residual(&a, e.values[k], &e.vectors[k]) < 1e-9);
            let norm: f64 = e.vectors[k].iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_and_empty() {
        let e = symmetric_eigen(&[vec![3.0, 0.0], vec![0.0, -1.0]]);
        assert_eq!(e.values, vec![-1.0, 3.0]);
        assert!(symmetric_eigen(&[]).values.is_empty());
    }
}
