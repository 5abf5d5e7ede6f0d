//! The affine Hecke algebra `H = H^aff_q` in the normal form `Σ_w T_w f_w`.
//!
//! Defining rules, for `α` simple and `q(α)` the parameter of its orbit:
//! `T_s² = (q−1)T_s + q`, `T_w T_{w'} = T_{ww'}` when lengths add, and the
//! Bernstein relation `e^λ T_s − T_s e^{s(λ)} = (q−1)(e^λ − e^{s(λ)})/(1−e^{−α})`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::laurent::{bernstein_quotient, Laurent, ParameterFunction};
use crate::rational::Q;
use crate::root_data::RootDatum;
use crate::{Error, Result};

/// A root datum with a parameter function, optionally specialized to rational values.
#[derive(Debug)]
pub struct HeckeContext {
    pub datum: Arc<RootDatum>,
    pub params: ParameterFunction,
    pub values: Option<Vec<Q>>,
    /// `q(α_i)` for each simple root, as an element of `A[X*]`.
    qs: Vec<Laurent>,
}

impl HeckeContext {
    pub fn new(datum: Arc<RootDatum>, params: ParameterFunction) -> Arc<Self> {
        let (r, m) = (datum.rank, params.len());
        let qs = (0..datum.num_simple()).map(|i| Laurent::param(r, m, params.of_simple(&datum, i))).collect();
        Arc::new(HeckeContext { datum, params, values: None, qs })
    }

    /// Context in which each `q_i` is the given nonzero rational.
    pub fn specialized(datum: Arc<RootDatum>, params: ParameterFunction, values: Vec<Q>) -> Result<Arc<Self>> {
        if values.len() != params.len() {
            return Err(Error::InvalidParameters("wrong number of parameter values".into()));
        }
        if let Some(i) = values.iter().position(num_traits::Zero::is_zero) {
            return Err(Error::ZeroParameter(params.names[i].clone()));
        }
        let (r, m) = (datum.rank, params.len());
        let qs = (0..datum.num_simple())
            .map(|i| Laurent::constant(r, m, values[params.of_simple(&datum, i)].clone()))
            .collect();
        Ok(Arc::new(HeckeContext { datum, params, values: Some(values), qs }))
    }

    pub fn q_simple(&self, i: usize) -> &Laurent {
        &self.qs[i]
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn laurent_zero(&self) -> Laurent {
        Laurent::zero(self.rank(), self.nparams())
    }

    pub fn laurent_one(&self) -> Laurent {
        Laurent::one(self.rank(), self.nparams())
    }
}

#[derive(Clone, Debug)]
pub struct HeckeElement {
    ctx: Arc<HeckeContext>,
    /// Weyl element index ↦ right coefficient.
    coords: BTreeMap<usize, Laurent>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.coords == other.coords
    }
}

impl HeckeElement {
    pub fn zero(ctx: &Arc<HeckeContext>) -> Self {
        HeckeElement { ctx: ctx.clone(), coords: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<HeckeContext>) -> Self {
        Self::basis(ctx, 0, ctx.laurent_one())
    }

    /// `T_w f`.
    pub fn basis(ctx: &Arc<HeckeContext>, w: usize, f: Laurent) -> Self {
        let mut h = Self::zero(ctx);
        h.add_term(w, &f);
        h
    }

    pub fn t_simple(ctx: &Arc<HeckeContext>, i: usize) -> Self {
        Self::basis(ctx, ctx.datum.weyl.simple(i), ctx.laurent_one())
    }

    /// `T_e e^λ`.
    pub fn theta(ctx: &Arc<HeckeContext>, lambda: &[i64]) -> Self {
        Self::basis(ctx, 0, Laurent::e(lambda, ctx.nparams()))
    }

    pub fn context(&self) -> &Arc<HeckeContext> {
        &self.ctx
    }

    pub fn coords(&self) -> &BTreeMap<usize, Laurent> {
        &self.coords
    }

    pub fn coeff(&self, w: usize) -> Laurent {
        self.coords.get(&w).cloned().unwrap_or_else(|| self.ctx.laurent_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, w: usize, f: &Laurent) {
        if f.is_zero() {
            return;
        }
        let e = self.coords.entry(w).or_insert_with(|| Laurent::zero(f.rank(), f.nparams()));
        e.add_assign_ref(f);
        if e.is_zero() {
            self.coords.remove(&w);
        }
    }

    fn add_owned(&mut self, w: usize, f: Laurent) {
        if f.is_zero() {
            return;
        }
        match self.coords.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&f);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::MismatchedContext)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut r = self.clone();
        for (w, f) in &other.coords {
            r.add_term(*w, f);
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = Self::zero(&self.ctx);
        for (w, f) in &self.coords {
            r.add_term(*w, &f.scale(c));
        }
        r
    }

    /// `h · f` for `f ∈ A[X*]`.
    pub fn mul_laurent_right(&self, f: &Laurent) -> Self {
        let mut r = Self::zero(&self.ctx);
        for (w, g) in &self.coords {
            r.add_term(*w, &g.mul(f));
        }
        r
    }

    /// `h · T_{s_i}`, moving each right coefficient past `T_s` with the Bernstein relation
    /// `g T_s = T_s s(g) + (q−1) Δ(g)`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let d = &self.ctx.datum;
        let weyl = &d.weyl;
        let s = weyl.simple(i);
        let q = self.ctx.q_simple(i);
        let qm1 = q.sub(&self.ctx.laurent_one());
        let mut r = Self::zero(&self.ctx);
        for (&y, g) in &self.coords {
            let sg = g.map_weights(|x| d.simple_reflect(i, x));
            let ys = weyl.mult[y][s];
            if weyl.elements[ys].length() > weyl.elements[y].length() {
                r.add_owned(ys, sg);
            } else {
                r.add_owned(y, qm1.mul(&sg));
                r.add_owned(ys, q.mul(&sg));
            }
            let delta = bernstein_quotient(d, i, g);
            if !delta.is_zero() {
                r.add_owned(y, qm1.mul(&delta));
            }
        }
        r
    }

    /// `h · T_w` along the reduced word of `w`.
    pub fn mul_t_right(&self, w: usize) -> Self {
        let mut r = self.clone();
        for &i in &self.ctx.datum.weyl.elements[w].word {
            r = r.mul_simple_right(i);
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let weyl = &self.ctx.datum.weyl;
        // h1 · T_w for all w in breadth-first order, each from its prefix
        let mut prefix: Vec<Option<HeckeElement>> = vec![None; weyl.order()];
        let needed_max = other.coords.keys().max().copied();
        let mut r = Self::zero(&self.ctx);
        let Some(needed_max) = needed_max else { return Ok(r) };
        prefix[0] = Some(self.clone());
        for w in 1..=needed_max {
            let word = &weyl.elements[w].word;
            let parent = weyl.find_word(&word[..word.len() - 1]);
            let p = prefix[parent].as_ref().expect("prefix computed earlier");
            prefix[w] = Some(p.mul_simple_right(*word.last().unwrap()));
        }
        for (w, g) in &other.coords {
            let p = prefix[*w].as_ref().unwrap();
            for (y, f) in &p.coords {
                r.add_owned(*y, f.mul(g));
            }
        }
        Ok(r)
    }

    /// `T_s · (f T_y)` with the left form `Σ f_y T_y`, using `T_s e^μ = e^{sμ} T_s − (q−1) Δ(e^{sμ})`.
    fn left_mul_simple_left_form(ctx: &HeckeContext, i: usize, left: &BTreeMap<usize, Laurent>) -> BTreeMap<usize, Laurent> {
        let d = &ctx.datum;
        let weyl = &d.weyl;
        let s = weyl.simple(i);
        let q = ctx.q_simple(i);
        let qm1 = q.sub(&ctx.laurent_one());
        let mut out: BTreeMap<usize, Laurent> = BTreeMap::new();
        let mut put = |w: usize, f: Laurent| {
            if f.is_zero() {
                return;
            }
            let e = out.entry(w).or_insert_with(|| Laurent::zero(f.rank(), f.nparams()));
            e.add_assign_ref(&f);
            if e.is_zero() {
                out.remove(&w);
            }
        };
        for (&y, f) in left {
            let sf = f.map_weights(|x| d.simple_reflect(i, x));
            let sy = weyl.mult[s][y];
            if weyl.elements[sy].length() > weyl.elements[y].length() {
                put(sy, sf.clone());
            } else {
                put(y, sf.mul(&qm1));
                put(sy, sf.mul(q));
            }
            let delta = bernstein_quotient(d, i, &sf);
            put(y, delta.mul(&qm1).neg());
        }
        out
    }

    /// Left coefficients: the unique `f_w` with `h = Σ_w f_w T_w`.
    pub fn to_left_coeffs(&self) -> BTreeMap<usize, Laurent> {
        let weyl = &self.ctx.datum.weyl;
        let mut total: BTreeMap<usize, Laurent> = BTreeMap::new();
        for (&w, g) in &self.coords {
            let mut cur: BTreeMap<usize, Laurent> = BTreeMap::new();
            cur.insert(0, g.clone());
            for &i in weyl.elements[w].word.iter().rev() {
                cur = Self::left_mul_simple_left_form(&self.ctx, i, &cur);
            }
            for (y, f) in cur {
                let e = total.entry(y).or_insert_with(|| self.ctx.laurent_zero());
                e.add_assign_ref(&f);
            }
        }
        total.retain(|_, f| !f.is_zero());
        total
    }

    /// `Σ_w f_w T_w` in the right normal form.
    pub fn from_left_coeffs(ctx: &Arc<HeckeContext>, left: &BTreeMap<usize, Laurent>) -> Self {
        let mut r = Self::zero(ctx);
        for (&w, f) in left {
            let h = Self::basis(ctx, 0, f.clone()).mul_t_right(w);
            for (y, g) in &h.coords {
                r.add_term(*y, g);
            }
        }
        r
    }

    /// Substitutes `q_i ↦ values[i]`, landing in the specialized context `target`.
    pub fn specialize(&self, target: &Arc<HeckeContext>) -> Result<Self> {
        let values = target
            .values
            .as_ref()
            .ok_or_else(|| Error::InvalidParameters("target context is not specialized".into()))?;
        if target.params != self.ctx.params || target.datum.roots != self.ctx.datum.roots {
            return Err(Error::MismatchedContext);
        }
        let mut r = Self::zero(target);
        for (w, f) in &self.coords {
            r.add_term(*w, &f.specialize(values)?);
        }
        Ok(r)
    }

    /// Whether every coefficient is integral.
    pub fn is_integral(&self) -> bool {
        self.coords.values().all(|f| f.is_integral())
    }
}

/// `Σ_{μ ∈ W·λ} T_e e^μ`, a central element.
pub fn center_orbit_sum(ctx: &Arc<HeckeContext>, lambda: &[i64]) -> HeckeElement {
    let mut f = ctx.laurent_zero();
    for mu in ctx.datum.weyl_orbit(lambda) {
        f.add_assign_ref(&Laurent::e(&mu, ctx.nparams()));
    }
    HeckeElement::basis(ctx, 0, f)
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let weyl = &self.ctx.datum.weyl;
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(w, g)| {
                let word: Vec<String> = weyl.elements[*w].word.iter().map(|i| i.to_string()).collect();
                format!("T[{}] * ({})", word.join(","), g)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ctx(name: &str) -> Arc<HeckeContext> {
        let d = Arc::new(RootDatum::preset(name).unwrap());
        let p = ParameterFunction::preset(&d);
        HeckeContext::new(d, p)
    }

    #[test]
    fn quadratic_relation() {
        let c = ctx("G2");
        for i in 0..2 {
            let t = HeckeElement::t_simple(&c, i);
            let lhs = t.mul(&t).unwrap();
            let qv = c.q_simple(i).clone();
            let rhs = t.mul_laurent_right(&qv.sub(&c.laurent_one())).add(&HeckeElement::basis(&c, 0, qv)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn a1_bernstein_example() {
        let c = ctx("A1");
        let t = HeckeElement::t_simple(&c, 0);
        let lhs = HeckeElement::theta(&c, &[1]).mul(&t).unwrap().sub(&t.mul(&HeckeElement::theta(&c, &[-1])).unwrap()).unwrap();
        let qm1 = c.q_simple(0).sub(&c.laurent_one());
        let rhs = HeckeElement::basis(&c, 0, qm1.mul(&Laurent::e(&[1], 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lengths_add() {
        let c = ctx("G2");
        let w = &c.datum.weyl;
        for a in 0..w.order() {
            for b in 0..w.order() {
                let ab = w.mult[a][b];
                if w.elements[ab].length() == w.elements[a].length() + w.elements[b].length() {
                    let ta = HeckeElement::basis(&c, a, c.laurent_one());
                    let tb = HeckeElement::basis(&c, b, c.laurent_one());
                    assert_eq!(ta.mul(&tb).unwrap(), HeckeElement::basis(&c, ab, c.laurent_one()));
                }
            }
        }
    }

    #[test]
    fn orbit_sums_are_central() {
        let c = ctx("A1");
        let z = center_orbit_sum(&c, &[1]);
        assert_eq!(z.coeff(0), Laurent::e(&[1], 1).add(&Laurent::e(&[-1], 1)));
        let t = HeckeElement::t_simple(&c, 0);
        assert_eq!(z.mul(&t).unwrap(), t.mul(&z).unwrap());
        let g = ctx("G2");
        let z = center_orbit_sum(&g, &[1, 0]);
        assert_eq!(z.coeff(0).len(), 6);
        for i in 0..2 {
            let t = HeckeElement::t_simple(&g, i);
            assert_eq!(z.mul(&t).unwrap(), t.mul(&z).unwrap());
        }
        assert_eq!(center_orbit_sum(&g, &[0, 0]), HeckeElement::one(&g));
    }

    #[test]
    fn specialize_examples() {
        let d = Arc::new(RootDatum::preset("A1").unwrap());
        let p = ParameterFunction::preset(&d);
        let c = HeckeContext::new(d.clone(), p.clone());
        let t = HeckeElement::t_simple(&c, 0);
        let tt = t.mul(&t).unwrap();
        let c1 = HeckeContext::specialized(d.clone(), p.clone(), vec![q(1)]).unwrap();
        assert_eq!(tt.specialize(&c1).unwrap(), HeckeElement::one(&c1));
        let c2 = HeckeContext::specialized(d.clone(), p.clone(), vec![q(2)]).unwrap();
        let expect = HeckeElement::t_simple(&c2, 0).add(&HeckeElement::one(&c2).scale(&q(2))).unwrap();
        assert_eq!(tt.specialize(&c2).unwrap(), expect);
        assert!(HeckeContext::specialized(d, p, vec![q(0)]).is_err());
    }

    #[test]
    fn mismatched_context_rejected() {
        let a = ctx("A1");
        let b = ctx("A1");
        assert!(HeckeElement::one(&a).mul(&HeckeElement::one(&b)).is_err());
    }

    #[test]
    fn left_form_round_trip() {
        let c = ctx("G2");
        let h = HeckeElement::basis(&c, 5, Laurent::e(&[1, -2], 2)).add(&HeckeElement::basis(&c, 2, Laurent::e(&[0, 1], 2))).unwrap();
        let left = h.to_left_coeffs();
        assert_eq!(HeckeElement::from_left_coeffs(&c, &left), h);
    }

    #[test]
    fn display_form() {
        let c = ctx("A1");
        let h = HeckeElement::t_simple(&c, 0).add(&HeckeElement::theta(&c, &[2])).unwrap();
        assert_eq!(h.to_string(), "T[] * (e[2]) + T[0] * (e[0])");
    }
}
