//! `A[X*]/I_a`, where `I_a` is generated by `O − χ_a(O)` for Weyl orbit sums `O`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use super::algebra::{FiniteDimAlgebra, Mat};
use super::poly::{groebner, normal_form, Mono, Poly};
use crate::character::RationalPoint;
use crate::laurent::Laurent;
use crate::rational::{q, Q};
use crate::root_data::{pair, RootDatum, Weight};
use crate::{Error, Result};

/// The Laurent ring `Q[X*]` is presented as `Q[u, x_1..x_r]/(u x_1⋯x_r − 1)`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub rank: usize,
    /// Orbit representatives `λ` used as invariants, with the value `χ_a(O_λ)`.
    pub invariants: Vec<(Weight, Q)>,
    pub groebner: Vec<Poly>,
    /// Standard monomials; the first one is `1`.
    pub basis: Vec<Mono>,
    /// The weight `λ` with `e^λ` equal to each standard monomial.
    pub basis_weights: Vec<Weight>,
    index: HashMap<Mono, usize>,
    /// `mult[b]`: multiplication by the `b`-th basis monomial.
    mult: Vec<Mat>,
}

/// `e^λ ↦ u^k x^{λ + k(1,..,1)}` with the least `k ≥ 0` making the exponent nonnegative.
pub fn laurent_monomial(lambda: &[i64]) -> Mono {
    let k = lambda.iter().map(|&x| -x).max().unwrap_or(0).max(0);
    let mut e = vec![k as u32];
    e.extend(lambda.iter().map(|&x| (x + k) as u32));
    Mono(e)
}

fn weight_of(m: &Mono) -> Weight {
    let k = i64::from(m.0[0]);
    m.0[1..].iter().map(|&e| i64::from(e) - k).collect()
}

fn rabinowitsch(rank: usize) -> Poly {
    let mut p = Poly::term(Mono(vec![1; rank + 1]), q(1));
    p.add_term(Mono::one(rank + 1), q(-1));
    p
}

/// `e^{K·1} (Σ_{μ ∈ Wλ} e^μ − c)` as a polynomial in `x` alone.
fn orbit_generator(datum: &RootDatum, lambda: &[i64], c: &Q) -> Poly {
    let orbit = datum.weyl_orbit(lambda);
    let k = orbit.iter().flat_map(|mu| mu.iter().map(|&x| -x)).max().unwrap_or(0).max(0);
    let n = datum.rank + 1;
    let mut p = Poly::zero(n);
    let shift = |mu: &[i64]| -> Mono {
        let mut e = vec![0u32];
        e.extend(mu.iter().map(|&x| (x + k) as u32));
        Mono(e)
    };
    for mu in &orbit {
        p.add_term(shift(mu), q(1));
    }
    p.add_term(shift(&vec![0; datum.rank]), -c.clone());
    p
}

/// Standard monomials of a zero-dimensional ideal, or `None` past `limit`.
fn standard_monomials(g: &[Poly], nvars: usize, limit: usize) -> Option<Vec<Mono>> {
    let leads: Vec<&Mono> = g.iter().map(|p| p.lead().unwrap().0).collect();
    let is_standard = |m: &Mono| !leads.iter().any(|l| l.divides(m));
    let mut seen: BTreeSet<Mono> = BTreeSet::new();
    let start = Mono::one(nvars);
    if !is_standard(&start) {
        return Some(Vec::new());
    }
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(m) = queue.pop_front() {
        for v in 0..nvars {
            let next = m.mul(&Mono::var(nvars, v));
            if is_standard(&next) && seen.insert(next.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Dominant weights ordered by size, used when the initial invariants are not enough.
fn extra_dominant_weights(datum: &RootDatum, bound: i64) -> Vec<Weight> {
    let r = datum.rank;
    let mut all: Vec<Weight> = vec![vec![]];
    for _ in 0..r {
        all = all
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut dom: Vec<Weight> = all
        .into_iter()
        .filter(|w| w.iter().any(|&x| x != 0))
        .filter(|w| (0..datum.num_simple()).all(|i| pair(w, datum.simple_coroot(i)) >= 0))
        .collect();
    dom.sort_by_key(|w| (w.iter().map(|x| x.abs()).sum::<i64>(), w.clone()));
    dom
}

impl QuotientRing {
    fn build(datum: &RootDatum, invariants: Vec<(Weight, Q)>, limit: usize) -> Option<Self> {
        let r = datum.rank;
        let mut gens: Vec<Poly> = invariants.iter().map(|(l, c)| orbit_generator(datum, l, c)).collect();
        gens.push(rabinowitsch(r));
        let g = groebner(&gens);
        let basis = standard_monomials(&g, r + 1, limit)?;
        let index: HashMap<Mono, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let basis_weights = basis.iter().map(weight_of).collect();
        let mut ring = QuotientRing { rank: r, invariants, groebner: g, basis, basis_weights, index, mult: Vec::new() };
        let n = ring.basis.len();
        ring.mult = (0..n)
            .map(|b| {
                let cols: Vec<Vec<Q>> = (0..n)
                    .map(|c| ring.reduce_poly(&Poly::term(ring.basis[b].mul(&ring.basis[c]), q(1))))
                    .collect();
                transpose(&cols)
            })
            .collect();
        Some(ring)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the normal form of `p`.
    pub fn reduce_poly(&self, p: &Poly) -> Vec<Q> {
        let nf = normal_form(p, &self.groebner);
        let mut v = vec![Q::zero(); self.basis.len()];
        for (m, c) in nf.terms {
            v[self.index[&m]] = c;
        }
        v
    }

    pub fn weight_vector(&self, lambda: &[i64]) -> Vec<Q> {
        self.reduce_poly(&Poly::term(laurent_monomial(lambda), q(1)))
    }

    /// Image of a Laurent polynomial with rational coefficients.
    pub fn reduce_laurent(&self, f: &Laurent) -> Result<Vec<Q>> {
        let mut p = Poly::zero(self.rank + 1);
        for (m, c) in f.terms() {
            if m.qexp.iter().any(|&e| e != 0) {
                return Err(Error::InvalidParameters("coefficients must be specialized".into()));
            }
            p.add_term(laurent_monomial(&m.weight), c.clone());
        }
        Ok(self.reduce_poly(&p))
    }

    /// Matrix of multiplication by the element with coordinates `v`.
    pub fn mult_matrix(&self, v: &[Q]) -> Mat {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (row, brow) in m.iter_mut().zip(&self.mult[b]) {
                for (x, y) in row.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *x += c * y;
                    }
                }
            }
        }
        m
    }

    pub fn basis_mult(&self, b: usize) -> &Mat {
        &self.mult[b]
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        super::algebra::mat_vec(&self.mult_matrix(a), b)
    }

    /// The quotient as a commutative algebra with structure constants.
    pub fn to_algebra(&self) -> FiniteDimAlgebra {
        let n = self.dim();
        let constants = (0..n)
            .map(|i| (0..n).map(|j| self.mult[i].iter().map(|row| row[j].clone()).collect()).collect())
            .collect();
        let labels = self.basis_weights.iter().map(|w| format!("e{w:?}")).collect();
        FiniteDimAlgebra::new(labels, constants)
    }
}

fn transpose(cols: &[Vec<Q>]) -> Mat {
    let n = cols.first().map_or(0, |c| c.len());
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// `A[X*]/I_a` with orbit sums of the fundamental weights (or of a basis of `X*` when these are
/// not weights), enlarged by further dominant orbit sums until the dimension is `|W|`.
pub fn quotient_basis(datum: &RootDatum, point: &RationalPoint) -> Result<QuotientRing> {
    let order = datum.weyl.order();
    let value = |l: &[i64]| -> Q { datum.weyl_orbit(l).iter().map(|mu| point.eval(mu)).sum() };
    let initial: Vec<Weight> = datum.fundamental_weights().unwrap_or_else(|| {
        (0..datum.rank)
            .map(|i| (0..datum.rank).map(|j| i64::from(i == j)).collect())
            .collect()
    });
    let mut invariants: Vec<(Weight, Q)> = initial.iter().map(|l| (l.clone(), value(l))).collect();
    let mut extras = extra_dominant_weights(datum, 3).into_iter();
    let mut last_dim = None;
    for _ in 0..=12 {
        if let Some(ring) = QuotientRing::build(datum, invariants.clone(), 8 * order) {
            match ring.dim().cmp(&order) {
                std::cmp::Ordering::Equal => return Ok(ring),
                std::cmp::Ordering::Less => {
                    return Err(Error::QuotientDimension { found: ring.dim(), expected: order })
                }
                std::cmp::Ordering::Greater => last_dim = Some(ring.dim()),
            }
        }
        let next = extras.find(|w| !invariants.iter().any(|(l, _)| l == w));
        let Some(next) = next else { break };
        let v = value(&next);
        invariants.push((next, v));
    }
    Err(Error::QuotientDimension { found: last_dim.unwrap_or(usize::MAX), expected: order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn point(s: &[i64], t: &[i64]) -> RationalPoint {
        RationalPoint { s: s.iter().map(|&x| q(x)).collect(), t: t.iter().map(|&x| q(x)).collect() }
    }

    #[test]
    fn a1_at_identity() {
        let d = RootDatum::preset("A1").unwrap();
        let r = quotient_basis(&d, &point(&[1], &[1])).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.basis_weights, vec![vec![0], vec![1]]);
        // x^{-1} = 2 - x
        assert_eq!(r.weight_vector(&[-1]), vec![q(2), q(-1)]);
    }

    #[test]
    fn g2_dimension_is_twelve() {
        let d = RootDatum::preset("G2").unwrap();
        for (s, t) in [(vec![1, 2], vec![2, 2]), (vec![1, 1], vec![1, 1]), (vec![2, 3], vec![2, 3])] {
            assert_eq!(quotient_basis(&d, &point(&s, &t)).unwrap().dim(), 12);
        }
    }

    #[test]
    fn a2_regular_point_is_reduced() {
        let d = RootDatum::preset("A2").unwrap();
        let p = RationalPoint { s: vec![q(2), qf(1, 3)], t: vec![q(1)] };
        let r = quotient_basis(&d, &p).unwrap();
        assert_eq!(r.dim(), 6);
        // evaluation at each Weyl translate of s is a ring map; together they separate the basis
        let evals: Vec<Vec<Q>> =
            d.weyl.elements.iter().map(|w| r.basis_weights.iter().map(|l| p.eval(&w.apply(l))).collect()).collect();
        assert_eq!(crate::linalg::rank(&evals), 6);
    }

    #[test]
    fn reduction_respects_products() {
        let d = RootDatum::preset("G2").unwrap();
        let r = quotient_basis(&d, &point(&[1, 2], &[2, 2])).unwrap();
        let a = r.weight_vector(&[2, -1]);
        let b = r.weight_vector(&[-3, 1]);
        assert_eq!(r.mul(&a, &b), r.weight_vector(&[-1, 0]));
        let v = r.weight_vector(&[5, -4]);
        assert_eq!(r.reduce_poly(&{
            let mut p = Poly::zero(3);
            for (i, c) in v.iter().enumerate() {
                p.add_term(r.basis[i].clone(), c.clone());
            }
            p
        }), v);
    }
}
