//! Integer linear algebra by diagonalization with unimodular transforms.

/// `U A V = diag(d)` with `U`, `V` unimodular; nonzero entries of `d` come first.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub d: Vec<i128>,
    pub rank: usize,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn diagonalize(a: &[Vec<i64>], ncols: usize) -> Diagonal {
    let m = a.len();
    let n = ncols;
    let mut x: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if x[i][j] != 0 && best.is_none_or(|(bi, bj)| x[i][j].abs() < x[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        x.swap(t, pi);
        u.swap(t, pi);
        for row in x.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in (t + 1)..m {
            let f = x[i][t] / x[t][t];
            if f != 0 {
                for j in 0..n {
                    x[i][j] -= f * x[t][j];
                }
                for j in 0..m {
                    u[i][j] -= f * u[t][j];
                }
            }
            if x[i][t] != 0 {
                clean = false;
            }
        }
        for j in (t + 1)..n {
            let f = x[t][j] / x[t][t];
            if f != 0 {
                for i in 0..m {
                    x[i][j] -= f * x[i][t];
                }
                for i in 0..n {
                    v[i][j] -= f * v[i][t];
                }
            }
            if x[t][j] != 0 {
                clean = false;
            }
        }
        if clean {
            t += 1;
        }
    }
    let d = (0..m.min(n)).map(|i| x[i][i]).collect::<Vec<_>>();
    let rank = d.iter().take_while(|&&e| e != 0).count();
    Diagonal { u, v, d, rank }
}

/// An integer solution of `a x = b`, if any.
pub fn solve_integer(a: &[Vec<i64>], ncols: usize, b: &[i64]) -> Option<Vec<i64>> {
    let dg = diagonalize(a, ncols);
    let ub: Vec<i128> = dg.u.iter().map(|row| row.iter().zip(b).map(|(x, &y)| x * y as i128).sum()).collect();
    let mut y = vec![0i128; ncols];
    for (i, &c) in ub.iter().enumerate() {
        if i < dg.rank {
            if c % dg.d[i] != 0 {
                return None;
            }
            y[i] = c / dg.d[i];
        } else if c != 0 {
            return None;
        }
    }
    Some(
        dg.v.iter()
            .map(|row| row.iter().zip(&y).map(|(p, q)| p * q).sum::<i128>() as i64)
            .collect(),
    )
}

/// A basis of the integer kernel `{x ∈ Z^n : a x = 0}`.
pub fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let dg = diagonalize(a, ncols);
    (dg.rank..ncols).map(|j| dg.v.iter().map(|row| row[j] as i64).collect()).collect()
}

/// Elementary divisors (absolute values of the nonzero diagonal entries after full reduction).
pub fn elementary_divisors(a: &[Vec<i64>], ncols: usize) -> Vec<i64> {
    // the diagonal form need not satisfy divisibility; the product of invariant factors
    // and the rank are what callers use
    let dg = diagonalize(a, ncols);
    dg.d[..dg.rank].iter().map(|x| x.abs() as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_detects_obstructions() {
        let a = vec![vec![2, 4], vec![6, 8]];
        let x = solve_integer(&a, 2, &[2, 6]).unwrap();
        assert_eq!((2 * x[0] + 4 * x[1], 6 * x[0] + 8 * x[1]), (2, 6));
        assert!(solve_integer(&vec![vec![2, 4]], 2, &[3]).is_none());
    }

    #[test]
    fn kernel_basis() {
        let a = vec![vec![1, 1, 1]];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        assert!(integer_kernel(&[], 0).is_empty());
    }

    #[test]
    fn divisors_of_index_two_lattice() {
        // span of 2α+β and β in Z²
        let a = vec![vec![2, 0], vec![1, 1]];
        let d = elementary_divisors(&a, 2);
        assert_eq!(d.iter().product::<i64>(), 2);
    }
}
