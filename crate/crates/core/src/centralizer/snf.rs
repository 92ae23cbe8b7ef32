//! Smith normal form over ℤ with unimodular certificates.

pub type IntMatrix = Vec<Vec<i64>>;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal entries of `D`, in order.
    pub invariants: Vec<i64>,
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

struct State {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= q·row_j
    fn row_sub(&mut self, i: usize, j: usize, q: i64) {
        for k in 0..self.cols {
            self.a[i][k] -= q * self.a[j][k];
        }
        for k in 0..self.rows {
            self.u[i][k] -= q * self.u[j][k];
        }
    }

    /// col_i -= q·col_j
    fn col_sub(&mut self, i: usize, j: usize, q: i64) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] -= q * row[j];
        }
        // V ← V·E with E = I - q e_{j,i}; V⁻¹ ← E⁻¹·V⁻¹, i.e. row_j += q·row_i.
        for k in 0..self.cols {
            self.v_inv[j][k] += q * self.v_inv[i][k];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -*x;
        }
    }
}

pub fn smith(m: &IntMatrix, cols: usize) -> Smith {
    let rows = m.len();
    let mut s = State { a: m.clone(), u: identity(rows), v: identity(cols), v_inv: identity(cols), rows, cols };
    let mut invariants = Vec::new();
    for t in 0..rows.min(cols) {
        let pick = |s: &State| {
            (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| s.a[i][j] != 0)
                .min_by_key(|&(i, j)| (s.a[i][j].abs(), i, j))
        };
        let Some((pi, pj)) = pick(&s) else {
            break;
        };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = s.a[i][t].div_euclid(s.a[t][t]);
                if q != 0 {
                    s.row_sub(i, t, q);
                }
                if s.a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = s.a[t][j].div_euclid(s.a[t][t]);
                if q != 0 {
                    s.col_sub(j, t, q);
                }
                if s.a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                let p = s.a[t][t];
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| s.a[i][j] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        s.row_sub(t, i, -1);
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let best_row = (t + 1..rows).filter(|&i| s.a[i][t] != 0).min_by_key(|&i| s.a[i][t].abs());
            let best_col = (t + 1..cols).filter(|&j| s.a[t][j] != 0).min_by_key(|&j| s.a[t][j].abs());
            match (best_row, best_col) {
                (Some(i), Some(j)) if s.a[t][j].abs() < s.a[i][t].abs() => s.swap_cols(t, j),
                (Some(i), _) => s.swap_rows(t, i),
                (None, Some(j)) => s.swap_cols(t, j),
                (None, None) => {}
            }
        }
        if s.a[t][t] < 0 {
            s.negate_row(t);
        }
        invariants.push(s.a[t][t]);
    }
    Smith { u: s.u, v: s.v, v_inv: s.v_inv, d: s.a, invariants }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    fn det(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    }

    /// Invariant factors from determinantal divisors (gcd of k×k minors).
    fn oracle(m: &IntMatrix, cols: usize) -> Vec<i64> {
        let mut out = Vec::new();
        let mut prev = 1;
        for k in 1..=m.len().min(cols) {
            let mut g = 0;
            for rs in subsets(m.len(), k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    g = gcd(g, det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g / prev);
            prev = g;
        }
        out
    }

    fn check(m: &IntMatrix, cols: usize) {
        let s = smith(m, cols);
        let udv = mat_mul(&mat_mul(&s.u, m, m.len()), &s.v, cols);
        assert_eq!(udv, s.d);
        assert_eq!(mat_mul(&s.v, &s.v_inv, cols), identity(cols));
        assert_eq!(det(&s.u).abs(), 1);
        for (i, row) in s.d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j {
                    assert_eq!(x, 0);
                }
            }
        }
        for w in s.invariants.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(s.invariants, oracle(m, cols));
    }

    #[test]
    fn examples() {
        check(&vec![vec![0, 0, 0, 2]], 4);
        assert_eq!(smith(&vec![vec![0, 0, 0, 2]], 4).invariants, vec![2]);
        assert_eq!(smith(&vec![vec![1, -1]], 2).invariants, vec![1]);
        check(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(smith(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).invariants, vec![2, 6, 12]);
        check(&vec![], 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn smith_matches_determinantal_divisors(rows in 1usize..4, cols in 1usize..5, seed in prop::collection::vec(-6i64..=6, 16)) {
            let m: IntMatrix = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            check(&m, cols);
        }
    }
}
