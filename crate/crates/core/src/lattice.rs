//! Fincke–Pohst enumeration of integer points in an ellipsoid.
//!
//! The float decomposition only prunes; callers confirm every leaf exactly.

/// Quadratic form `x ↦ xᵀAx` in Fincke–Pohst normal form
/// `Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    n: usize,
    q: Vec<Vec<f64>>,
}

/// Relative slack on the float bound so that boundary points are never lost.
const SLACK: f64 = 1e-7;

impl Ellipsoid {
    /// `None` unless `a` is symmetric positive definite.
    pub fn new(a: &[Vec<f64>]) -> Option<Self> {
        let n = a.len();
        let mut q: Vec<Vec<f64>> = a.to_vec();
        for i in 0..n {
            if q[i][i] <= 0.0 || !q[i][i].is_finite() {
                return None;
            }
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        Some(Ellipsoid { n, q })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Visits every integer `x` with `(x−c)ᵀA(x−c) ≤ bound` (up to float slack).
    ///
    /// Coordinates are fixed from the last index down. After fixing coordinate `i`
    /// the callback `prune(i, x)` sees `x[i..]` set and may return `false` to cut
    /// the branch. `leaf` receives each complete candidate.
    pub fn enumerate<P, L>(&self, center: &[f64], bound: f64, mut prune: P, mut leaf: L)
    where
        P: FnMut(usize, &[i64]) -> bool,
        L: FnMut(&[i64]),
    {
        if bound < -SLACK * (1.0 + bound.abs()) || self.n == 0 {
            if self.n == 0 && bound >= 0.0 {
                leaf(&[]);
            }
            return;
        }
        let eps = SLACK * (1.0 + bound.abs());
        let mut x = vec![0i64; self.n];
        self.descend(self.n - 1, bound.max(0.0), eps, center, &mut x, &mut prune, &mut leaf);
    }

    /// Candidate values of the last coordinate, for splitting work across threads.
    pub fn top_range(&self, center: &[f64], bound: f64) -> std::ops::RangeInclusive<i64> {
        let i = self.n - 1;
        let eps = SLACK * (1.0 + bound.abs());
        let radius = ((bound.max(0.0) + eps) / self.q[i][i]).sqrt();
        (center[i] - radius).ceil() as i64..=(center[i] + radius).floor() as i64
    }

    /// [`enumerate`](Self::enumerate) restricted to points whose last coordinate is `top`.
    pub fn enumerate_with_top<P, L>(&self, top: i64, center: &[f64], bound: f64, mut prune: P, mut leaf: L)
    where
        P: FnMut(usize, &[i64]) -> bool,
        L: FnMut(&[i64]),
    {
        let i = self.n - 1;
        let eps = SLACK * (1.0 + bound.abs());
        let d = top as f64 - center[i];
        let rest = bound - self.q[i][i] * d * d;
        if rest < -eps {
            return;
        }
        let mut x = vec![0i64; self.n];
        x[i] = top;
        if !prune(i, &x) {
            return;
        }
        if i == 0 {
            leaf(&x);
        } else {
            self.descend(i - 1, rest.max(0.0), eps, center, &mut x, &mut prune, &mut leaf);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<P, L>(
        &self,
        i: usize,
        budget: f64,
        eps: f64,
        c: &[f64],
        x: &mut [i64],
        prune: &mut P,
        leaf: &mut L,
    ) where
        P: FnMut(usize, &[i64]) -> bool,
        L: FnMut(&[i64]),
    {
        let qi = &self.q[i];
        let mut shift = 0.0;
        for j in i + 1..self.n {
            shift += qi[j] * (x[j] as f64 - c[j]);
        }
        let mid = c[i] - shift;
        let radius = ((budget + eps) / qi[i]).max(0.0).sqrt();
        let lo = (mid - radius).ceil() as i64;
        let hi = (mid + radius).floor() as i64;
        for v in lo..=hi {
            let d = v as f64 - mid;
            let rest = budget - qi[i] * d * d;
            if rest < -eps {
                continue;
            }
            x[i] = v;
            if !prune(i, x) {
                continue;
            }
            if i == 0 {
                leaf(x);
            } else {
                self.descend(i - 1, rest.max(0.0), eps, c, x, prune, leaf);
            }
        }
        x[i] = 0;
    }
}

/// Exact value of `xᵀGx` for an integer matrix.
pub fn quad_value(g: &[Vec<i64>], x: &[i64]) -> i128 {
    let mut s: i128 = 0;
    for (i, row) in g.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let mut t: i128 = 0;
        for (j, &gij) in row.iter().enumerate() {
            t += gij as i128 * x[j] as i128;
        }
        s += x[i] as i128 * t;
    }
    s
}

/// Minimizer `z` and minimum of `xᵀAx + lᵀx` over ℝⁿ, for positive definite `A`.
pub fn complete_square(a: &[Vec<f64>], l: &[f64]) -> (Vec<f64>, f64) {
    let n = a.len();
    // Solve 2Az = −l by Gaussian elimination with partial pivoting.
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r: Vec<f64> = a[i].iter().map(|v| 2.0 * v).collect();
            r.push(-l[i]);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&p, &q| m[p][col].abs().partial_cmp(&m[q][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                if f != 0.0 {
                    for k in col..=n {
                        m[r][k] -= f * m[col][k];
                    }
                }
            }
        }
    }
    let z: Vec<f64> = (0..n).map(|i| m[i][n] / m[i][i]).collect();
    let mut min = 0.0;
    for i in 0..n {
        min += 0.5 * l[i] * z[i];
    }
    (z, min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_points_of_z2_disc() {
        let e = Ellipsoid::new(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let mut n = 0;
        e.enumerate(&[0.0, 0.0], 1.0, |_, _| true, |_| n += 1);
        assert_eq!(n, 5);
    }

    #[test]
    fn shifted_center() {
        let e = Ellipsoid::new(&[vec![1.0]]).unwrap();
        let mut pts = Vec::new();
        e.enumerate(&[0.5], 0.25, |_, _| true, |x| pts.push(x[0]));
        assert_eq!(pts, vec![0, 1]);
    }

    #[test]
    fn square_completion() {
        // x² + 2x has minimum −1 at x = −1.
        let (z, m) = complete_square(&[vec![1.0]], &[2.0]);
        assert!((z[0] + 1.0).abs() < 1e-12 && (m + 1.0).abs() < 1e-12);
    }

    #[test]
    fn split_matches_whole() {
        let a = vec![vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]];
        let e = Ellipsoid::new(&a).unwrap();
        let c = [0.3, -0.2, 0.1];
        let mut whole = Vec::new();
        e.enumerate(&c, 6.0, |_, _| true, |x| whole.push(x.to_vec()));
        let mut split = Vec::new();
        for t in e.top_range(&c, 6.0) {
            e.enumerate_with_top(t, &c, 6.0, |_, _| true, |x| split.push(x.to_vec()));
        }
        whole.sort();
        split.sort();
        assert_eq!(whole, split);
    }

    #[test]
    fn rejects_indefinite() {
        assert!(Ellipsoid::new(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_none());
    }
}
