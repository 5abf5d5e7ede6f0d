//! `H_a = H ⊗_Z C_a` with basis `T_w e^{λ_b}` for `b` running over the quotient basis.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::algebra::{dot, mat_vec, unit_vector, Algebra, Mat};
use super::quotient::{quotient_basis, QuotientRing};
use crate::character::CentralCharacter;
use crate::hecke::{HeckeContext, HeckeElement};
use crate::laurent::{Laurent, ParameterFunction};
use crate::rational::Q;
use crate::root_data::RootDatum;
use crate::{Error, Result};

type Sparse = Vec<(usize, Q)>;

pub struct SpecializedHecke {
    pub ctx: Arc<HeckeContext>,
    pub quotient: QuotientRing,
    /// `T_w T_y = Σ_z h[w][y] T_z`.
    h: Vec<Vec<Sparse>>,
    /// `e^{λ_b} T_w = Σ_y T_y c_y`; stored as multiplication matrices of `c_y` in the quotient.
    moves: Vec<Vec<Vec<(usize, Mat)>>>,
    /// Quotient coordinates of `e^{±ε_j}`.
    coordinate_units: Vec<Vec<Q>>,
}

fn constant_term(f: &Laurent) -> Q {
    let mut c = Q::zero();
    for (m, v) in f.terms() {
        debug_assert!(m.weight.iter().all(|&x| x == 0));
        c += v;
    }
    c
}

impl SpecializedHecke {
    pub fn new(ctx: Arc<HeckeContext>, quotient: QuotientRing) -> Result<Self> {
        if ctx.values.is_none() {
            return Err(Error::InvalidParameters("context must be specialized".into()));
        }
        let d = &ctx.datum;
        let nw = d.weyl.order();
        let np = ctx.nparams();
        let h: Vec<Vec<Sparse>> = (0..nw)
            .map(|w| {
                (0..nw)
                    .map(|y| {
                        let p = HeckeElement::basis(&ctx, w, ctx.laurent_one()).mul_t_right(y);
                        p.coords().iter().map(|(z, f)| (*z, constant_term(f))).filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let moves = quotient
            .basis_weights
            .par_iter()
            .map(|lambda| {
                (0..nw)
                    .map(|w| {
                        let p = HeckeElement::basis(&ctx, 0, Laurent::e(lambda, np)).mul_t_right(w);
                        p.coords()
                            .iter()
                            .map(|(y, f)| Ok((*y, quotient.mult_matrix(&quotient.reduce_laurent(f)?))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut coordinate_units = Vec::new();
        for j in 0..d.rank {
            for sign in [1, -1] {
                let mut e = vec![0; d.rank];
                e[j] = sign;
                coordinate_units.push(quotient.weight_vector(&e));
            }
        }
        Ok(SpecializedHecke { ctx, quotient, h, moves, coordinate_units })
    }

    pub fn nb(&self) -> usize {
        self.quotient.dim()
    }

    pub fn nw(&self) -> usize {
        self.h.len()
    }

    pub fn labels(&self) -> Vec<String> {
        let weyl = &self.ctx.datum.weyl;
        let mut out = Vec::new();
        for w in 0..self.nw() {
            for l in &self.quotient.basis_weights {
                out.push(format!("T{:?} e{:?}", weyl.elements[w].word, l));
            }
        }
        out
    }

    /// Coordinates of `Σ_w T_w f_w` for a right-normal-form Hecke element.
    pub fn embed(&self, x: &HeckeElement) -> Result<Vec<Q>> {
        let nb = self.nb();
        let mut v = vec![Q::zero(); self.nw() * nb];
        for (w, f) in x.coords() {
            let c = self.quotient.reduce_laurent(f)?;
            v[w * nb..(w + 1) * nb].clone_from_slice(&c);
        }
        Ok(v)
    }

    fn block<'a>(&self, v: &'a [Q], w: usize) -> &'a [Q] {
        let nb = self.nb();
        &v[w * nb..(w + 1) * nb]
    }
}

impl Algebra for SpecializedHecke {
    fn dim(&self) -> usize {
        self.nw() * self.nb()
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let (nw, nb) = (self.nw(), self.nb());
        let mut out = vec![Q::zero(); nw * nb];
        let yblocks: Vec<Option<&[Q]>> = (0..nw)
            .map(|w| {
                let b = self.block(y, w);
                b.iter().any(|c| !c.is_zero()).then_some(b)
            })
            .collect();
        for w in 0..nw {
            for b in 0..nb {
                let xc = &x[w * nb + b];
                if xc.is_zero() {
                    continue;
                }
                for (w2, yb) in yblocks.iter().enumerate() {
                    let Some(yb) = yb else { continue };
                    for (yy, m) in &self.moves[b][w2] {
                        let u = mat_vec(m, yb);
                        for (z, hc) in &self.h[w][*yy] {
                            let c = xc * hc;
                            for (o, ui) in out[z * nb..(z + 1) * nb].iter_mut().zip(&u) {
                                if !ui.is_zero() {
                                    *o += &c * ui;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn unit(&self) -> Vec<Q> {
        unit_vector(self.dim(), 0)
    }

    /// `T_{s_i}` and `e^{±ε_j}`.
    fn generators(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let nb = self.nb();
        let weyl = &self.ctx.datum.weyl;
        let mut gens: Vec<Vec<Q>> =
            (0..self.ctx.datum.num_simple()).map(|i| unit_vector(n, weyl.simple(i) * nb)).collect();
        for c in &self.coordinate_units {
            let mut v = vec![Q::zero(); n];
            v[..nb].clone_from_slice(c);
            gens.push(v);
        }
        gens
    }

    fn traces(&self) -> Vec<Q> {
        let (nw, nb) = (self.nw(), self.nb());
        let mut tau = Vec::with_capacity(nw * nb);
        for w in 0..nw {
            for b in 0..nb {
                let mut t = Q::zero();
                for w2 in 0..nw {
                    for (y, m) in &self.moves[b][w2] {
                        let hz = self.h[w][*y].iter().find(|(z, _)| *z == w2);
                        if let Some((_, c)) = hz {
                            let tr: Q = (0..nb).map(|i| m[i][i].clone()).sum();
                            t += c * tr;
                        }
                    }
                }
                tau.push(t);
            }
        }
        tau
    }

    /// `t((w,b),(w',b')) = Σ_y (σ_{w,y}ᵀ M_{b,w',y})_{b'}` with `σ_{w,y} = Σ_z h^z_{w,y} τ_z`.
    fn trace_form(&self) -> Mat {
        let (nw, nb) = (self.nw(), self.nb());
        let tau = self.traces();
        let sigma: Vec<Vec<Vec<Q>>> = (0..nw)
            .map(|w| {
                (0..nw)
                    .map(|y| {
                        let mut s = vec![Q::zero(); nb];
                        for (z, c) in &self.h[w][y] {
                            for (si, ti) in s.iter_mut().zip(&tau[z * nb..(z + 1) * nb]) {
                                *si += c * ti;
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<Q>> = (0..nw * nb)
            .into_par_iter()
            .map(|i| {
                let (w, b) = (i / nb, i % nb);
                let mut row = vec![Q::zero(); nw * nb];
                for w2 in 0..nw {
                    for (y, m) in &self.moves[b][w2] {
                        let s = &sigma[w][*y];
                        for b2 in 0..nb {
                            let col: Vec<Q> = m.iter().map(|r| r[b2].clone()).collect();
                            row[w2 * nb + b2] += dot(s, &col);
                        }
                    }
                }
                row
            })
            .collect();
        rows
    }
}

/// Rational values of `s` and of the parameters `q_i = t_i` obtained by assigning the generators.
pub fn build_specialized(
    datum: Arc<RootDatum>,
    params: ParameterFunction,
    a: &CentralCharacter,
    values: &[Q],
) -> Result<SpecializedHecke> {
    let point = a.specialize(values)?;
    let quotient = quotient_basis(&datum, &point)?;
    let ctx = HeckeContext::specialized(datum, params, point.t.clone())?;
    SpecializedHecke::new(ctx, quotient)
}

impl SpecializedHecke {
    /// `1 · x = x` for every basis vector.
    pub fn unit_acts_trivially(&self) -> bool {
        let n = self.dim();
        let u = self.unit();
        (0..n).all(|i| {
            let e = unit_vector(n, i);
            self.mul(&u, &e) == e && self.mul(&e, &u) == e
        })
    }

    pub fn is_one(&self, v: &[Q]) -> bool {
        v.first().is_some_and(|x| x.is_one()) && v[1..].iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::CharacterValue;
    use crate::rational::q;
    use num_rational::Rational64;

    fn positive(free_s: &[&[i64]], free_t: &[&[i64]], m: usize) -> CentralCharacter {
        let v = |f: &[i64]| CharacterValue::new(Rational64::zero(), f.to_vec());
        CentralCharacter {
            generators: (0..m).map(|i| format!("g{i}")).collect(),
            s: free_s.iter().map(|f| v(f)).collect(),
            t: free_t.iter().map(|f| v(f)).collect(),
        }
    }

    #[test]
    fn a1_algebra() {
        let d = Arc::new(RootDatum::preset("A1").unwrap());
        let p = ParameterFunction::preset(&d);
        let a = positive(&[&[0]], &[&[1]], 1);
        let h = build_specialized(d, p, &a, &[q(2)]).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(h.unit_acts_trivially());
        let dense = super::super::algebra::FiniteDimAlgebra::from_algebra(&h, h.labels());
        assert_eq!(dense.trace_form(), h.trace_form());
        assert_eq!(dense.traces(), h.traces());
    }

    #[test]
    fn quadratic_relation_survives() {
        let d = Arc::new(RootDatum::preset("G2").unwrap());
        let p = ParameterFunction::preset(&d);
        let a = positive(&[&[0], &[1]], &[&[1], &[1]], 1);
        let h = build_specialized(d, p, &a, &[q(2)]).unwrap();
        assert_eq!(h.dim(), 144);
        let n = h.dim();
        let ts = unit_vector(n, h.ctx.datum.weyl.simple(0) * h.nb());
        let lhs = h.mul(&ts, &ts);
        let rhs: Vec<Q> = ts.iter().zip(&h.unit()).map(|(x, u)| x * q(1) + u * q(2)).collect();
        assert_eq!(lhs, rhs);
    }
}

