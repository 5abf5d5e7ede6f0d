//! Multivariate polynomials over `Q` in degree-reverse-lexicographic order, and Buchberger's
//! algorithm.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, Q};

/// Exponent vector, ordered degrevlex with the first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let (da, db) = (self.degree(), o.degree());
        if da != db {
            return da.cmp(&db);
        }
        for (a, b) in self.0.iter().zip(&o.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn term(m: Mono, c: Q) -> Self {
        let mut p = Poly::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn lead(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    /// `self −= c · m · g`.
    pub fn sub_scaled(&mut self, c: &Q, m: &Mono, g: &Poly) {
        for (gm, gc) in &g.terms {
            self.add_term(m.mul(gm), -(c * gc));
        }
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, c)) = self.lead() {
            let inv = c.recip();
            for v in self.terms.values_mut() {
                *v *= &inv;
            }
        }
        self
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(a.mul(b), ca * cb);
            }
        }
        r
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = (0..self.nvars).map(|i| if i == 0 { "u".into() } else { format!("x{i}") }).collect();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let body = if factors.is_empty() {
                fmt_q(&abs)
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", fmt_q(&abs), factors.join("*"))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Full normal form of `f` modulo `g` (every term reduced).
pub fn normal_form(f: &Poly, g: &[Poly]) -> Poly {
    let mut f = f.clone();
    let mut rem = Poly::zero(f.nvars);
    while let Some((m, c)) = f.lead().map(|(m, c)| (m.clone(), c.clone())) {
        match g.iter().find(|p| p.lead().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(p) => {
                let (lm, lc) = p.lead().unwrap();
                f.sub_scaled(&(c / lc), &lm.quotient_of(&m), p);
            }
            None => {
                f.terms.remove(&m);
                rem.terms.insert(m, c);
            }
        }
    }
    rem
}

fn s_poly(a: &Poly, b: &Poly) -> Poly {
    let (la, ca) = a.lead().unwrap();
    let (lb, cb) = b.lead().unwrap();
    let l = la.lcm(lb);
    let mut r = Poly::zero(a.nvars);
    r.sub_scaled(&-(ca.recip()), &la.quotient_of(&l), a);
    r.sub_scaled(&cb.recip(), &lb.quotient_of(&l), b);
    r
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading monomial.
pub fn groebner(gens: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = Vec::new();
    for p in gens {
        let r = normal_form(p, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while !pairs.is_empty() {
        // normal selection strategy
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = g[a.0].lead().unwrap().0.lcm(g[a.1].lead().unwrap().0);
                let lb = g[b.0].lead().unwrap().0.lcm(g[b.1].lead().unwrap().0);
                la.cmp(&lb)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(k);
        let (li, lj) = (g[i].lead().unwrap().0, g[j].lead().unwrap().0);
        if li.coprime(lj) {
            continue;
        }
        let r = normal_form(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            g.push(r.monic());
            let n = g.len() - 1;
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    // minimal, then reduced
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lp = p.lead().unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.lead().unwrap().0;
            j != i && lq.divides(lp) && (lq != lp || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<Poly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let (lm, lc) = minimal[i].lead().unwrap();
            let mut tail = minimal[i].clone();
            tail.terms.remove(lm);
            let mut r = normal_form(&tail, &others);
            r.add_term(lm.clone(), lc.clone());
            r.monic()
        })
        .collect();
    reduced.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(n: usize, terms: &[(&[u32], i64)]) -> Poly {
        let mut r = Poly::zero(n);
        for (e, c) in terms {
            r.add_term(Mono(e.to_vec()), q(*c));
        }
        r
    }

    #[test]
    fn degrevlex_order() {
        assert!(Mono(vec![1, 0]) > Mono(vec![0, 1]));
        assert!(Mono(vec![0, 2]) > Mono(vec![1, 0]));
        // x1 x3 < x2^2 in degrevlex
        assert!(Mono(vec![1, 0, 1]) < Mono(vec![0, 2, 0]));
    }

    #[test]
    fn laurent_a1_at_identity() {
        // u = x^{-1}: ideal (x^2 - 2x + 1, ux - 1)
        let g = groebner(&[p(2, &[(&[0, 2], 1), (&[0, 1], -2), (&[0, 0], 1)]), p(2, &[(&[1, 1], 1), (&[0, 0], -1)])]);
        let leads: Vec<Mono> = g.iter().map(|f| f.lead().unwrap().0.clone()).collect();
        assert_eq!(leads, vec![Mono(vec![1, 0]), Mono(vec![0, 2])]);
        assert_eq!(g[0].to_string(), "u + x1 - 2");
    }

    #[test]
    fn normal_form_is_idempotent_and_zero_on_ideal() {
        let gens = [p(3, &[(&[0, 2, 0], 1), (&[0, 0, 1], -1)]), p(3, &[(&[0, 1, 1], 1), (&[0, 0, 0], -1)])];
        let g = groebner(&gens);
        for f in &gens {
            assert!(normal_form(f, &g).is_zero());
        }
        let h = p(3, &[(&[2, 3, 1], 5), (&[0, 4, 0], -1), (&[1, 0, 0], 2)]);
        let n1 = normal_form(&h, &g);
        assert_eq!(normal_form(&n1, &g), n1);
        let prod = h.mul(&gens[0]).mul(&p(3, &[(&[1, 0, 0], 1), (&[0, 0, 0], 3)]));
        assert!(normal_form(&prod, &g).is_zero());
    }
}
