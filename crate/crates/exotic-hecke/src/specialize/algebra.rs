//! Finite-dimensional algebras over `Q` and the count of their simple modules.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{nullspace, rank, Span};
use crate::rational::Q;
use crate::{Error, Result};

/// Row-major square matrix; `m[i][j]` is the `i`-th coordinate of `m · e_j`.
pub type Mat = Vec<Vec<Q>>;

pub fn mat_vec(m: &Mat, v: &[Q]) -> Vec<Q> {
    crate::linalg::mat_vec(m, v)
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

pub trait Algebra {
    fn dim(&self) -> usize;

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q>;

    fn unit(&self) -> Vec<Q>;

    /// Elements generating the algebra; the basis unless overridden.
    fn generators(&self) -> Vec<Vec<Q>> {
        (0..self.dim()).map(|i| unit_vector(self.dim(), i)).collect()
    }

    /// `τ_k = tr(x ↦ e_k x)`.
    fn traces(&self) -> Vec<Q> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let ek = unit_vector(n, k);
                (0..n).map(|i| self.mul(&ek, &unit_vector(n, i))[i].clone()).sum()
            })
            .collect()
    }

    /// `t(e_i, e_j) = τ(e_i e_j)`.
    fn trace_form(&self) -> Mat {
        let n = self.dim();
        let tau = self.traces();
        (0..n)
            .map(|i| {
                let ei = unit_vector(n, i);
                (0..n).map(|j| dot(&tau, &self.mul(&ei, &unit_vector(n, j)))).collect()
            })
            .collect()
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// An algebra given by dense structure constants `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    pub labels: Vec<String>,
    pub constants: Vec<Vec<Vec<Q>>>,
    unit: Vec<Q>,
}

impl FiniteDimAlgebra {
    /// The unit is found by solving `u e_j = e_j = e_j u`; panics if there is none.
    pub fn new(labels: Vec<String>, constants: Vec<Vec<Vec<Q>>>) -> Self {
        let mut a = FiniteDimAlgebra { labels, constants, unit: Vec::new() };
        a.unit = a.find_unit().expect("algebra has a unit");
        a
    }

    fn find_unit(&self) -> Option<Vec<Q>> {
        let n = self.constants.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.constants[i][j][k].clone()).collect::<Vec<_>>());
                rhs.push(Q::from_integer(i64::from(j == k).into()));
                rows.push((0..n).map(|i| self.constants[j][i][k].clone()).collect::<Vec<_>>());
                rhs.push(Q::from_integer(i64::from(j == k).into()));
            }
        }
        crate::linalg::solve(&rows, &rhs)
    }

    /// Structure constants of any algebra, by multiplying all basis pairs.
    pub fn from_algebra(a: &impl Algebra, labels: Vec<String>) -> Self {
        let n = a.dim();
        let constants =
            (0..n).map(|i| (0..n).map(|j| a.mul(&unit_vector(n, i), &unit_vector(n, j))).collect()).collect();
        FiniteDimAlgebra::new(labels, constants)
    }

    /// Matrix algebra `M_n(Q)` with basis `E_{ij}`.
    pub fn matrix_algebra(n: usize) -> Self {
        let d = n * n;
        let mut c = vec![vec![vec![Q::zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    c[i * n + j][j * n + l][i * n + l] = Q::one();
                }
            }
        }
        let labels = (0..d).map(|k| format!("E{}{}", k / n, k % n)).collect();
        FiniteDimAlgebra::new(labels, c)
    }

    /// `Q[x]/(f)` for monic `f` given by its coefficients `[f_0, .., f_{n-1}]` (leading 1 omitted).
    pub fn truncated_polynomial(f: &[Q]) -> Self {
        let n = f.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                // x^{i+j} reduced mod f
                let mut v = vec![Q::zero(); 2 * n];
                v[i + j] = Q::one();
                for d in (n..2 * n).rev() {
                    let lead = v[d].clone();
                    if !lead.is_zero() {
                        for (k, fk) in f.iter().enumerate() {
                            let t = &lead * fk;
                            v[d - n + k] -= t;
                        }
                        v[d] = Q::zero();
                    }
                }
                c[i][j] = v[..n].to_vec();
            }
        }
        FiniteDimAlgebra::new((0..n).map(|k| format!("x^{k}")).collect(), c)
    }

    /// The same algebra in the basis `e'_i = e_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let constants = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let old = &self.constants[perm[i]][perm[j]];
                        (0..n).map(|k| old[perm[k]].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        FiniteDimAlgebra::new(labels, constants)
    }
}

impl Algebra for FiniteDimAlgebra {
    fn dim(&self) -> usize {
        self.constants.len()
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, s) in out.iter_mut().zip(&self.constants[i][j]) {
                    if !s.is_zero() {
                        *o += &c * s;
                    }
                }
            }
        }
        out
    }

    fn unit(&self) -> Vec<Q> {
        self.unit.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleCount {
    pub dim: usize,
    pub radical_dim: usize,
    /// `dim A − dim([A,A] + rad A)`.
    pub simple_count: usize,
    /// `dim Z(A/rad A)`, computed independently through the trace form.
    pub center_count: usize,
}

/// Checks `(gh)k = g(hk)` on all triples of generators.
pub fn check_associative(a: &impl Algebra) -> Result<()> {
    let gens = a.generators();
    for g in &gens {
        for h in &gens {
            let gh = a.mul(g, h);
            for k in &gens {
                if a.mul(&gh, k) != a.mul(g, &a.mul(h, k)) {
                    return Err(Error::NonAssociative("generator triple".into()));
                }
            }
        }
    }
    let u = a.unit();
    for g in &gens {
        if &a.mul(&u, g) != g || &a.mul(g, &u) != g {
            return Err(Error::NonAssociative("unit".into()));
        }
    }
    Ok(())
}

/// Number of simple modules over the algebraic closure. The radical is the kernel of the trace
/// form, valid in characteristic zero.
pub fn count_simples<A: Algebra + Sync>(a: &A) -> Result<SimpleCount> {
    check_associative(a)?;
    let n = a.dim();
    let t = a.trace_form();
    let radical = nullspace(&t, n);
    let gens = a.generators();
    // [A,A] = Σ_g [g, A] for generators g
    let commutators: Vec<Vec<Q>> = gens
        .iter()
        .flat_map(|g| (0..n).map(move |i| (g, i)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(g, i)| {
            let e = unit_vector(n, i);
            sub(&a.mul(g, &e), &a.mul(&e, g))
        })
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let mut comm = Span::new(n);
    for c in &commutators {
        comm.insert(c);
    }
    // z is central mod rad iff t(z, c) = 0 for every commutator c
    let functionals: Vec<Vec<Q>> = comm.basis().par_iter().map(|c| crate::linalg::mat_vec(&t, c)).collect();
    let centralizer = n - rank(&functionals);
    let mut total = comm;
    for r in &radical {
        total.insert(r);
    }
    Ok(SimpleCount {
        dim: n,
        radical_dim: radical.len(),
        simple_count: n - total.dim(),
        center_count: centralizer - radical.len(),
    })
}
