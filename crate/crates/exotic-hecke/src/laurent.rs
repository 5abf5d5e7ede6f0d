//! The group algebra `A[X*]` over `A = Z[q_i^{±1}]`, with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, parse_q, pow_q, q, Q};
use crate::root_data::{pair, RootDatum, WeylElement};
use crate::{Error, Result};

/// `e^weight · Π q_i^{qexp_i}`. Ordered by `(qexp, weight)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub qexp: Vec<i64>,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    rank: usize,
    nparams: usize,
    terms: BTreeMap<Monomial, Q>,
}

pub type Laurent = GroupAlgebraElement;

impl GroupAlgebraElement {
    pub fn zero(rank: usize, nparams: usize) -> Self {
        GroupAlgebraElement { rank, nparams, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, nparams: usize, c: Q) -> Self {
        let mut f = Self::zero(rank, nparams);
        f.add_term(Monomial { qexp: vec![0; nparams], weight: vec![0; rank] }, c);
        f
    }

    pub fn one(rank: usize, nparams: usize) -> Self {
        Self::constant(rank, nparams, Q::one())
    }

    pub fn monomial(weight: Vec<i64>, qexp: Vec<i64>, c: Q) -> Self {
        let mut f = Self::zero(weight.len(), qexp.len());
        f.add_term(Monomial { qexp, weight }, c);
        f
    }

    /// `e^λ`.
    pub fn e(weight: &[i64], nparams: usize) -> Self {
        Self::monomial(weight.to_vec(), vec![0; nparams], Q::one())
    }

    /// The parameter `q_i` as an element.
    pub fn param(rank: usize, nparams: usize, i: usize) -> Self {
        let mut qexp = vec![0; nparams];
        qexp[i] = 1;
        Self::monomial(vec![0; rank], qexp, Q::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.weight.len(), self.rank);
        debug_assert_eq!(m.qexp.len(), self.nparams);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!((self.rank, self.nparams), (other.rank, other.nparams), "group algebra shapes differ");
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.check_shape(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign_ref(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.check_shape(other);
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.nparams);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        GroupAlgebraElement { rank: self.rank, nparams: self.nparams, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut r = Self::zero(self.rank, self.nparams);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = Monomial {
                    qexp: m1.qexp.iter().zip(&m2.qexp).map(|(a, b)| a + b).collect(),
                    weight: m1.weight.iter().zip(&m2.weight).map(|(a, b)| a + b).collect(),
                };
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    /// Multiplication by the monomial `e^λ`.
    pub fn shift(&self, lambda: &[i64]) -> Self {
        self.map_weights(|w| w.iter().zip(lambda).map(|(a, b)| a + b).collect())
    }

    /// Applies `f` to every weight (a group endomorphism of `X*` gives a ring map).
    pub fn map_weights(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let mut r = Self::zero(self.rank, self.nparams);
        for (m, c) in &self.terms {
            r.add_term(Monomial { qexp: m.qexp.clone(), weight: f(&m.weight) }, c.clone());
        }
        r
    }

    /// Substitutes `q_i ↦ values[i]`; the result has all q-exponents zero.
    pub fn specialize(&self, values: &[Q]) -> Result<Self> {
        if values.len() != self.nparams {
            return Err(Error::InvalidParameters("wrong number of parameter values".into()));
        }
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroParameter(format!("q{}", i + 1)));
        }
        let mut r = Self::zero(self.rank, self.nparams);
        for (m, c) in &self.terms {
            let f = m.qexp.iter().zip(values).fold(c.clone(), |acc, (&e, v)| acc * pow_q(v, e));
            r.add_term(Monomial { qexp: vec![0; self.nparams], weight: m.weight.clone() }, f);
        }
        Ok(r)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn has_params(&self) -> bool {
        self.terms.keys().any(|m| m.qexp.iter().any(|&e| e != 0))
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            rank: self.rank,
            nparams: self.nparams,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { weight: m.weight.clone(), qexp: m.qexp.clone(), coeff: fmt_q(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        let mut f = Self::zero(j.rank, j.nparams);
        for t in &j.terms {
            if t.weight.len() != j.rank || t.qexp.len() != j.nparams {
                return Err(Error::Parse("term has wrong shape".into()));
            }
            f.add_term(Monomial { qexp: t.qexp.clone(), weight: t.weight.clone() }, parse_q(&t.coeff)?);
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub weight: Vec<i64>,
    pub qexp: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaurentJson {
    pub rank: usize,
    pub nparams: usize,
    pub terms: Vec<TermJson>,
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupAlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        GroupAlgebraElement::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let ws: Vec<String> = m.weight.iter().map(|x| x.to_string()).collect();
            let mut factors = Vec::new();
            if !a.is_one() {
                factors.push(fmt_q(&a));
            }
            factors.push(format!("e[{}]", ws.join(",")));
            for (i, &e) in m.qexp.iter().enumerate() {
                if e != 0 {
                    factors.push(format!("q{}^{}", i + 1, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Assignment of a parameter `q_i` to every W-orbit of roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterFunction {
    pub names: Vec<String>,
    /// Parameter index of each W-orbit of roots (orbit labels of the datum).
    pub orbit_param: Vec<usize>,
}

impl ParameterFunction {
    /// One parameter per W-orbit of roots, numbered by first simple root: for G2, short ↦ q1, long ↦ q2.
    pub fn preset(datum: &RootDatum) -> Self {
        let n = datum.num_orbits();
        ParameterFunction { names: (1..=n).map(|i| format!("q{i}")).collect(), orbit_param: (0..n).collect() }
    }

    /// All roots share `q1`.
    pub fn equal(datum: &RootDatum) -> Self {
        ParameterFunction { names: vec!["q1".into()], orbit_param: vec![0; datum.num_orbits()] }
    }

    /// From parameter names per simple root; rejects assignments that are not W-orbit constant.
    pub fn from_simple_names(datum: &RootDatum, per_simple: &[String]) -> Result<Self> {
        if per_simple.len() != datum.num_simple() {
            return Err(Error::InvalidParameters(format!(
                "expected {} parameter names, got {}",
                datum.num_simple(),
                per_simple.len()
            )));
        }
        let mut names: Vec<String> = Vec::new();
        for n in per_simple {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        let mut orbit_param = vec![usize::MAX; datum.num_orbits()];
        for (i, n) in per_simple.iter().enumerate() {
            let o = datum.orbit[datum.simple[i]];
            let p = names.iter().position(|x| x == n).unwrap();
            if orbit_param[o] != usize::MAX && orbit_param[o] != p {
                return Err(Error::InvalidParameters(format!(
                    "simple roots in one W-orbit carry different parameters ({} and {})",
                    names[orbit_param[o]], n
                )));
            }
            orbit_param[o] = p;
        }
        Ok(ParameterFunction { names, orbit_param })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn of_root(&self, datum: &RootDatum, root: usize) -> usize {
        self.orbit_param[datum.orbit[root]]
    }

    pub fn of_simple(&self, datum: &RootDatum, i: usize) -> usize {
        self.of_root(datum, datum.simple[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).or_else(|| (self.names.len() == 1 && name == "q").then_some(0))
    }
}

/// `D_α(e^λ) = (e^λ − e^{s_α(λ)−α})/(1−e^{−α})` by the closed geometric sum.
pub fn demazure(datum: &RootDatum, i: usize, f: &Laurent) -> Laurent {
    let alpha = datum.simple_root(i);
    let cor = datum.simple_coroot(i);
    let mut r = Laurent::zero(f.rank, f.nparams);
    for (m, c) in f.terms() {
        let n = pair(&m.weight, cor);
        let step = |k: i64| -> Vec<i64> { m.weight.iter().zip(alpha).map(|(x, a)| x + k * a).collect() };
        if n >= 0 {
            for k in 0..=n {
                r.add_term(Monomial { qexp: m.qexp.clone(), weight: step(-k) }, c.clone());
            }
        } else {
            for k in 1..=(-n - 1) {
                r.add_term(Monomial { qexp: m.qexp.clone(), weight: step(k) }, -c.clone());
            }
        }
    }
    r
}

/// `Δ_α(f) = (f − s_α f)/(1 − e^{−α})`, the coefficient in the Bernstein relation.
pub fn bernstein_quotient(datum: &RootDatum, i: usize, f: &Laurent) -> Laurent {
    let alpha = datum.simple_root(i);
    let cor = datum.simple_coroot(i);
    let mut r = Laurent::zero(f.rank, f.nparams);
    for (m, c) in f.terms() {
        let n = pair(&m.weight, cor);
        let step = |k: i64| -> Vec<i64> { m.weight.iter().zip(alpha).map(|(x, a)| x + k * a).collect() };
        if n > 0 {
            for k in 0..n {
                r.add_term(Monomial { qexp: m.qexp.clone(), weight: step(-k) }, c.clone());
            }
        } else {
            for k in 1..=(-n) {
                r.add_term(Monomial { qexp: m.qexp.clone(), weight: step(k) }, -c.clone());
            }
        }
    }
    r
}

/// Exact quotient `f / (1 − e^{−α})` by long division, or `None` when it does not divide.
pub fn divide_one_minus_neg(f: &Laurent, alpha: &[i64], coroot: &[i64]) -> Option<Laurent> {
    // leading term: largest pairing with the coroot (α pairs to 2 > 0)
    let mut rem = f.clone();
    let mut quot = Laurent::zero(f.rank, f.nparams);
    let floor = f.terms().map(|(m, _)| pair(&m.weight, coroot)).min();
    while let Some((m, c)) = rem
        .terms()
        .max_by(|(a, _), (b, _)| {
            pair(&a.weight, coroot).cmp(&pair(&b.weight, coroot)).then_with(|| a.cmp(b))
        })
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        if pair(&m.weight, coroot) < floor.unwrap() {
            return None;
        }
        let lower: Vec<i64> = m.weight.iter().zip(alpha).map(|(x, a)| x - a).collect();
        rem.add_term(m.clone(), -c.clone());
        rem.add_term(Monomial { qexp: m.qexp.clone(), weight: lower }, c.clone());
        quot.add_term(m, c);
    }
    Some(quot)
}

/// `λ∨(M) = Π (1 − e^{−λ} q^{−ε})` over the multiset `M` of `(λ, ε)`.
pub fn lambda_vee(weights: &[(Vec<i64>, Vec<i64>)], rank: usize, nparams: usize) -> Laurent {
    let mut r = Laurent::one(rank, nparams);
    for (w, e) in weights {
        let mut factor = Laurent::one(rank, nparams);
        factor.add_term(
            Monomial { qexp: e.iter().map(|x| -x).collect(), weight: w.iter().map(|x| -x).collect() },
            -q(1),
        );
        r = r.mul(&factor);
    }
    r
}

/// `e^λ ↦ e^{w(λ)}`.
pub fn w_act(w: &WeylElement, f: &Laurent) -> Laurent {
    f.map_weights(|x| w.apply(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> RootDatum {
        RootDatum::preset("G2").unwrap()
    }

    #[test]
    fn demazure_examples() {
        let g = g2();
        let one = Laurent::e(&[0, 0], 2);
        assert_eq!(demazure(&g, 0, &one), one);
        assert_eq!(demazure(&g, 0, &Laurent::e(&[-1, 0], 2)), one.neg());
        let expect = Laurent::e(&[1, 0], 2).add(&one).add(&Laurent::e(&[-1, 0], 2));
        assert_eq!(demazure(&g, 0, &Laurent::e(&[1, 0], 2)), expect);
    }

    #[test]
    fn division_matches_closed_form() {
        let g = g2();
        for i in 0..2 {
            let a = g.simple_root(i).clone();
            let c = g.simple_coroot(i).clone();
            for x in -3..=3 {
                for y in -3..=3 {
                    let lam = vec![x, y];
                    let s = g.simple_reflect(i, &lam);
                    let target: Vec<i64> = s.iter().zip(&a).map(|(p, q)| p - q).collect();
                    let num = Laurent::e(&lam, 0).sub(&Laurent::e(&target, 0));
                    let d = divide_one_minus_neg(&num, &a, &c).expect("exact");
                    assert_eq!(d, demazure(&g, i, &Laurent::e(&lam, 0)));
                }
            }
        }
        // 1 is not divisible by (1 − e^{−α})
        assert!(divide_one_minus_neg(&Laurent::e(&[0, 0], 0), &[1, 0], &[2, -3]).is_none());
    }

    #[test]
    fn lambda_vee_examples() {
        assert_eq!(lambda_vee(&[], 2, 2), Laurent::one(2, 2));
        let f = lambda_vee(&[(vec![-1, 0], vec![-1, 0])], 2, 2);
        let mut expect = Laurent::one(2, 2);
        expect.add_term(Monomial { qexp: vec![1, 0], weight: vec![1, 0] }, q(-1));
        assert_eq!(f, expect);
        let g = lambda_vee(&[(vec![-1, 0], vec![0, 0]), (vec![0, -1], vec![0, 0])], 2, 2);
        let a = Laurent::one(2, 2).sub(&Laurent::e(&[1, 0], 2));
        let b = Laurent::one(2, 2).sub(&Laurent::e(&[0, 1], 2));
        assert_eq!(g, a.mul(&b));
    }

    #[test]
    fn w_act_examples() {
        let g = g2();
        let s = &g.weyl.elements[g.weyl.simple(0)];
        assert_eq!(w_act(s, &Laurent::e(&[0, 1], 1)), Laurent::e(&[3, 1], 1));
        let e = &g.weyl.elements[0];
        let f = Laurent::e(&[2, -1], 1).add(&Laurent::param(2, 1, 0));
        assert_eq!(w_act(e, &f), f);
    }

    #[test]
    fn display_and_json() {
        let mut f = Laurent::zero(2, 2);
        f.add_term(Monomial { qexp: vec![0, 0], weight: vec![0, 0] }, q(-1));
        f.add_term(Monomial { qexp: vec![2, 0], weight: vec![1, 0] }, q(3));
        assert_eq!(f.to_string(), "-e[0,0] + 3*e[1,0]*q1^2");
        let text = serde_json::to_string(&f).unwrap();
        let back: Laurent = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn parameter_function_validation() {
        let a2 = RootDatum::preset("A2").unwrap();
        assert!(ParameterFunction::from_simple_names(&a2, &["q1".into(), "q2".into()]).is_err());
        assert!(ParameterFunction::from_simple_names(&a2, &["q".into(), "q".into()]).is_ok());
        let g = g2();
        let p = ParameterFunction::preset(&g);
        assert_eq!(p.names, vec!["q1", "q2"]);
        assert_eq!(p.of_simple(&g, 0), 0);
        assert_eq!(p.of_simple(&g, 1), 1);
        assert_eq!(p.of_root(&g, 3), 0); // 2α+β is short
        assert_eq!(p.of_root(&g, 5), 1); // 3α+2β is long
    }

    #[test]
    fn specialization() {
        let f = Laurent::param(1, 1, 0).sub(&Laurent::one(1, 1));
        assert_eq!(f.specialize(&[q(2)]).unwrap(), Laurent::one(1, 1));
        assert!(f.specialize(&[q(0)]).is_err());
    }
}
