//! Chevalley basis of the `G2` Lie algebra over `Z`, its divided powers, and the subalgebra
//! `g_s` generated by the short root vectors modulo 3.

use std::collections::HashMap;

use super::field::Field;
use crate::lattice::solve_integer;
use crate::root_data::{pair, RootDatum, RootLength};

/// Basis indices: the twelve roots in the order of the root datum, then `h_α`, `h_β`.
pub const DIM: usize = 14;
pub const H_SHORT: usize = 12;
pub const H_LONG: usize = 13;

/// Structure constants `N_{r,s}` on positive pairs, with `N_{−r,−s} = −N_{r,s}`. With this
/// convention the root groups act on `V` by exactly the familiar formulas, e.g.
/// `x_β(t) v_α = v_α + t v_{α+β}` and `x_α(t) v_β = v_β − t³ v_{3α+β}`.
const POSITIVE_PAIRS: [([i64; 2], [i64; 2], i64); 5] = [
    ([1, 0], [0, 1], -1),
    ([1, 0], [1, 1], -2),
    ([1, 0], [2, 1], -3),
    ([0, 1], [3, 1], 1),
    ([1, 1], [2, 1], -3),
];

#[derive(Clone, Debug)]
pub struct Chevalley {
    pub datum: RootDatum,
    /// `bracket[a][b]`: coordinates of `[e_a, e_b]`.
    pub bracket: Vec<Vec<Vec<i64>>>,
    /// `divided[γ][k]`: the matrix of `ad(x_γ)^k / k!` for `k = 0..=3`.
    pub divided: Vec<Vec<Vec<Vec<i64>>>>,
    /// Basis indices spanning `g_s`.
    pub gs: Vec<usize>,
}

fn squared_length(d: &RootDatum, k: usize) -> i64 {
    match d.lengths[k] {
        RootLength::Short => 1,
        RootLength::Long => 3,
    }
}

fn structure_constants(d: &RootDatum) -> HashMap<(usize, usize), i64> {
    let idx = |v: &[i64]| d.root_index(v).expect("root");
    let mut n: HashMap<(usize, usize), i64> = HashMap::new();
    for (r, s, c) in POSITIVE_PAIRS {
        let (r, s) = (idx(&r), idx(&s));
        let (nr, ns) = (d.negation[r], d.negation[s]);
        n.insert((r, s), c);
        n.insert((s, r), -c);
        n.insert((nr, ns), -c);
        n.insert((ns, nr), c);
    }
    // for r + s + t = 0: N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)
    let m = d.num_roots();
    loop {
        let mut changed = false;
        for r in 0..m {
            for s in 0..m {
                let sum: Vec<i64> = d.roots[r].iter().zip(&d.roots[s]).map(|(a, b)| a + b).collect();
                let Some(rs) = d.root_index(&sum) else { continue };
                if n.contains_key(&(r, s)) {
                    continue;
                }
                let t = d.negation[rs];
                let (lr, ls, lt) = (squared_length(d, r), squared_length(d, s), squared_length(d, t));
                let value = if let Some(v) = n.get(&(s, t)) {
                    Some((lt * v, lr))
                } else if let Some(v) = n.get(&(t, r)) {
                    Some((lt * v, ls))
                } else {
                    n.get(&(s, r)).map(|v| (-v, 1))
                };
                if let Some((num, den)) = value {
                    assert_eq!(num % den, 0, "structure constants are integral");
                    n.insert((r, s), num / den);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    n
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

impl Chevalley {
    pub fn new() -> Self {
        let d = RootDatum::preset("G2").expect("preset");
        let n = structure_constants(&d);
        let m = d.num_roots();
        // coroot of each root in the basis of simple coroots
        let simple_coroots: Vec<Vec<i64>> =
            (0..2).map(|j| (0..2).map(|i| d.simple_coroot(i)[j]).collect()).collect();
        let hcoords: Vec<Vec<i64>> =
            (0..m).map(|k| solve_integer(&simple_coroots, 2, &d.coroots[k]).expect("integral coroot")).collect();
        let mut bracket = vec![vec![vec![0i64; DIM]; DIM]; DIM];
        for r in 0..m {
            for s in 0..m {
                if s == d.negation[r] {
                    bracket[r][s][H_SHORT] = hcoords[r][0];
                    bracket[r][s][H_LONG] = hcoords[r][1];
                } else if let Some(c) = n.get(&(r, s)) {
                    let sum: Vec<i64> = d.roots[r].iter().zip(&d.roots[s]).map(|(a, b)| a + b).collect();
                    bracket[r][s][d.root_index(&sum).unwrap()] = *c;
                }
            }
            for (i, h) in [H_SHORT, H_LONG].into_iter().enumerate() {
                let w = pair(&d.roots[r], d.simple_coroot(i));
                bracket[h][r][r] = w;
                bracket[r][h][r] = -w;
            }
        }
        let ad = |a: usize| -> Vec<Vec<i64>> { (0..DIM).map(|c| (0..DIM).map(|b| bracket[a][b][c]).collect()).collect() };
        let divided = (0..m)
            .map(|g| {
                let a = ad(g);
                let mut out = vec![(0..DIM).map(|i| (0..DIM).map(|j| i64::from(i == j)).collect()).collect::<Vec<Vec<i64>>>()];
                let mut power = out[0].clone();
                for k in 1..=4 {
                    power = matmul(&a, &power);
                    let fact: i64 = (1..=k).product();
                    assert!(power.iter().flatten().all(|x| x % fact == 0), "divided powers are integral");
                    if k == 4 {
                        assert!(power.iter().flatten().all(|&x| x == 0), "ad is nilpotent of order 4");
                    } else {
                        out.push(power.iter().map(|r| r.iter().map(|x| x / fact).collect()).collect());
                    }
                }
                out
            })
            .collect();
        let mut ch = Chevalley { datum: d, bracket, divided, gs: Vec::new() };
        ch.gs = ch.short_closure();
        ch
    }

    /// Smallest subspace mod 3 that contains the short root vectors and is stable under every
    /// `ad(e_a)`; it is spanned by basis vectors, whose indices are returned.
    fn short_closure(&self) -> Vec<usize> {
        let f3 = Field::new(3).unwrap();
        let unit = |i: usize| -> Vec<u8> { (0..DIM).map(|j| u8::from(i == j)).collect() };
        let mut span: Vec<Vec<u8>> = Vec::new();
        let mut queue: Vec<Vec<u8>> =
            (0..12).filter(|&k| self.datum.lengths[k] == RootLength::Short).map(unit).collect();
        while let Some(v) = queue.pop() {
            let mut cand = span.clone();
            cand.push(v.clone());
            if f3.rank(&cand) == span.len() {
                continue;
            }
            span.push(v.clone());
            for a in 0..DIM {
                queue.push(self.bracket_mod3(a, &v));
            }
        }
        let support: Vec<usize> = (0..DIM).filter(|&i| span.iter().any(|v| v[i] != 0)).collect();
        assert_eq!(support.len(), span.len(), "g_s is spanned by basis vectors");
        support
    }

    fn bracket_mod3(&self, a: usize, v: &[u8]) -> Vec<u8> {
        (0..DIM)
            .map(|c| {
                let s: i64 = (0..DIM).map(|b| i64::from(v[b]) * self.bracket[a][b][c]).sum();
                s.rem_euclid(3) as u8
            })
            .collect()
    }

    pub fn jacobi_holds(&self) -> bool {
        let br = |x: &[i64], y: &[i64]| -> Vec<i64> {
            let mut out = vec![0; DIM];
            for (a, xa) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
                for (b, yb) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                    for (o, c) in out.iter_mut().zip(&self.bracket[a][b]) {
                        *o += xa * yb * c;
                    }
                }
            }
            out
        };
        let e = |i: usize| -> Vec<i64> { (0..DIM).map(|j| i64::from(i == j)).collect() };
        (0..DIM).all(|a| {
            (0..DIM).all(|b| {
                (0..DIM).all(|c| {
                    let x = br(&e(a), &br(&e(b), &e(c)));
                    let y = br(&e(b), &br(&e(c), &e(a)));
                    let z = br(&e(c), &br(&e(a), &e(b)));
                    x.iter().zip(&y).zip(&z).all(|((p, q), r)| p + q + r == 0)
                })
            })
        })
    }

    pub fn is_in_gs(&self, i: usize) -> bool {
        self.gs.contains(&i)
    }
}

impl Default for Chevalley {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_identity() {
        assert!(Chevalley::new().jacobi_holds());
    }

    #[test]
    fn antisymmetry() {
        let c = Chevalley::new();
        for a in 0..DIM {
            for b in 0..DIM {
                let s: Vec<i64> = c.bracket[a][b].iter().zip(&c.bracket[b][a]).map(|(x, y)| x + y).collect();
                assert!(s.iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn short_subalgebra_has_dimension_seven() {
        let c = Chevalley::new();
        let mut expected: Vec<usize> = (0..12).filter(|&k| c.datum.lengths[k] == RootLength::Short).collect();
        expected.push(H_SHORT);
        assert_eq!(c.gs, expected);
    }
}
