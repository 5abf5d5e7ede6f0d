//! The representation `V = g_s ⊕ g/g_s` over `F_{3^k}` with its root group, torus and Lie
//! algebra actions.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::chevalley::{Chevalley, DIM, H_LONG, H_SHORT};
use super::field::{Elt, Field};
use crate::root_data::{pair, RootDatum, RootLength};
use crate::{Error, Result};

/// Coefficients on `v_γ` (twelve roots, datum order), `h_s` and `h_l`.
pub type G2Vector = Vec<Elt>;

const TANGENT_SAMPLES: usize = 12;
const SAMPLE_LENGTH: usize = 10;

/// A factor of a group element: `x_γ(t)` or the torus element with `α(t) = a`, `β(t) = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Root(usize, Elt),
    Torus(Elt, Elt),
}

pub const REP_NAMES: [&str; 6] = ["va", "vb", "vab", "v2ab", "v3ab", "v3a2b"];

#[derive(Clone, Debug)]
pub struct G2Space {
    pub field: Field,
    pub chevalley: Arc<Chevalley>,
    /// `dk[γ][k]`: `ad(x_γ)^k/k!` induced on `V`, entries in `F_3`, for `k = 1..=3`.
    dk: Vec<Vec<Vec<Vec<u8>>>>,
}

impl G2Space {
    pub fn new(field: Field) -> Self {
        Self::with_chevalley(field, Arc::new(Chevalley::new()))
    }

    pub fn with_chevalley(field: Field, chevalley: Arc<Chevalley>) -> Self {
        let gs = chevalley.gs.clone();
        let dk = chevalley
            .divided
            .iter()
            .map(|powers| {
                powers[1..]
                    .iter()
                    .map(|m| {
                        // column j: image of basis vector j; outside g_s take the class mod g_s
                        (0..DIM)
                            .map(|i| {
                                (0..DIM)
                                    .map(|j| {
                                        if !gs.contains(&j) && gs.contains(&i) {
                                            0
                                        } else {
                                            m[i][j].rem_euclid(3) as u8
                                        }
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let space = G2Space { field, chevalley, dk };
        debug_assert!(space.gs_is_stable());
        space
    }

    fn gs_is_stable(&self) -> bool {
        let gs = &self.chevalley.gs;
        self.dk.iter().flatten().all(|m| (0..DIM).all(|i| (0..DIM).all(|j| !(gs.contains(&j) && !gs.contains(&i)) || m[i][j] == 0)))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.chevalley.datum
    }

    pub fn q(&self) -> usize {
        self.field.q
    }

    pub fn zero(&self) -> G2Vector {
        vec![0; DIM]
    }

    pub fn basis_vector(&self, i: usize) -> G2Vector {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// Borel roots: the span of `α, β` with nonnegative coefficients. These index the root
    /// groups generating `U` and the lines of `V^-`.
    pub fn borel_roots(&self) -> Vec<usize> {
        self.datum().positive.clone()
    }

    pub fn is_borel_vector(&self, v: &[Elt]) -> bool {
        let d = self.datum();
        v.iter().enumerate().all(|(i, &c)| c == 0 || (i < 12 && d.is_positive(i)))
    }

    fn apply_matrix(&self, m: &[Vec<u8>], v: &[Elt]) -> G2Vector {
        let f = &self.field;
        m.iter()
            .map(|row| {
                row.iter().zip(v).fold(0, |acc, (&a, &x)| if a == 0 || x == 0 { acc } else { f.add(acc, f.mul(a, x)) })
            })
            .collect()
    }

    /// `D_k(γ) v`, the `t^k` coefficient of `x_γ(t) v`, for `k = 1..=3`.
    pub fn divided_power(&self, root: usize, k: usize, v: &[Elt]) -> G2Vector {
        self.apply_matrix(&self.dk[root][k - 1], v)
    }

    /// `x_γ(t) v = Σ_k t^k D_k(γ) v`.
    pub fn act_root_group(&self, root: usize, t: Elt, v: &[Elt]) -> G2Vector {
        let f = &self.field;
        let mut out = v.to_vec();
        if t == 0 {
            return out;
        }
        let mut tk = 1;
        for k in 1..=3 {
            tk = f.mul(tk, t);
            let d = self.divided_power(root, k, v);
            for (o, x) in out.iter_mut().zip(d) {
                if x != 0 {
                    *o = f.add(*o, f.mul(tk, x));
                }
            }
        }
        out
    }

    /// Whether `x_γ(t)` fixes `v` for every `t`.
    pub fn root_group_fixes(&self, root: usize, v: &[Elt]) -> bool {
        (1..=3).all(|k| self.divided_power(root, k, v).iter().all(|&x| x == 0))
    }

    /// The torus element with `α(t) = a`, `β(t) = b`.
    pub fn act_torus(&self, a: Elt, b: Elt, v: &[Elt]) -> G2Vector {
        let f = &self.field;
        let d = self.datum();
        v.iter()
            .enumerate()
            .map(|(i, &x)| {
                if i >= 12 || x == 0 {
                    x
                } else {
                    let c = &d.root_coords[i];
                    f.mul(x, f.mul(f.pow(a, c[0]), f.pow(b, c[1])))
                }
            })
            .collect()
    }

    /// Action of the Chevalley generator `e_a` (root vector or `h_α`, `h_β`) on `V`.
    pub fn lie_action(&self, a: usize, v: &[Elt]) -> G2Vector {
        if a < 12 {
            return self.divided_power(a, 1, v);
        }
        let f = &self.field;
        let i = a - H_SHORT;
        let d = self.datum();
        v.iter()
            .enumerate()
            .map(|(j, &x)| if j >= 12 { 0 } else { f.mul(x, f.from_int(pair(&d.roots[j], d.simple_coroot(i)))) })
            .collect()
    }

    /// Leading coefficient vector of `s ↦ α_i∨(1+s) v − v`.
    fn torus_leading(&self, i: usize, v: &[Elt]) -> Option<G2Vector> {
        let f = &self.field;
        let d = self.datum();
        (1..=9).find_map(|k| {
            let w: G2Vector = v
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    if j >= 12 || x == 0 {
                        return 0;
                    }
                    let n = pair(&d.roots[j], d.simple_coroot(i));
                    f.mul(x, f.from_int(binomial(n, k)))
                })
                .collect();
            w.iter().any(|&x| x != 0).then_some(w)
        })
    }

    fn root_leading(&self, root: usize, v: &[Elt]) -> Option<G2Vector> {
        (1..=3).map(|k| self.divided_power(root, k, v)).find(|w| w.iter().any(|&x| x != 0))
    }

    /// Dimension of the stabilizer of `v` in the subgroup generated by the torus and the root
    /// groups of `roots`. Leading terms of curves in the (smooth) orbit are tangent vectors, and
    /// they see the directions of inseparable curves such as `t ↦ x_α(t) v_β`; the tangent space
    /// at `v` is spanned by `h·ℓ` for leading vectors `ℓ` of the one-parameter curves through
    /// `h⁻¹v`, over a fixed sample of group elements `h`.
    pub fn restricted_stabilizer_dim(&self, roots: &[usize], v: &[Elt]) -> usize {
        let mut rows = self.leading_vectors(roots, v);
        let (h, y) = self.descend(roots, v);
        for l in self.leading_vectors(roots, &y) {
            rows.push(self.apply_inverse(&h, &l));
        }
        for h in self.sample_elements(roots) {
            let y = self.apply_inverse(&h, v);
            for l in self.leading_vectors(roots, &y) {
                rows.push(self.apply(&h, &l));
            }
        }
        2 + roots.len() - self.field.rank(&rows)
    }

    /// Greedily moves `v` by products of at most two root group elements to a point of smaller
    /// support. Returns `h` and `h·v`; sparse orbit points are where one-parameter curves see the
    /// whole tangent space.
    pub fn descend(&self, roots: &[usize], v: &[Elt]) -> (Vec<Factor>, G2Vector) {
        let weight = |w: &[Elt]| w.iter().filter(|&&x| x != 0).count();
        let moves: Vec<(usize, Elt)> = roots
            .iter()
            .flat_map(|&g| self.field.units().map(move |t| (g, t)))
            .collect();
        let step = |y: &G2Vector| -> Option<(Factor, G2Vector)> {
            moves
                .iter()
                .map(|&(g, t)| (Factor::Root(g, t), self.act_root_group(g, t, y)))
                .min_by_key(|(_, w)| weight(w))
                .filter(|(_, w)| weight(w) < weight(y))
        };
        let mut h = Vec::new();
        let mut y = v.to_vec();
        loop {
            if let Some((f, w)) = step(&y) {
                h.insert(0, f);
                y = w;
                continue;
            }
            let pair = moves.iter().find_map(|&(g, t)| {
                let w = self.act_root_group(g, t, &y);
                step(&w)
                    .filter(|(_, w2)| weight(w2) < weight(&y))
                    .map(|(f2, w2)| (Factor::Root(g, t), f2, w2))
            });
            match pair {
                Some((f1, f2, w)) => {
                    h.insert(0, f1);
                    h.insert(0, f2);
                    y = w;
                }
                None => return (h, y),
            }
        }
    }

    fn leading_vectors(&self, roots: &[usize], v: &[Elt]) -> Vec<G2Vector> {
        let mut rows: Vec<G2Vector> = roots.iter().filter_map(|&g| self.root_leading(g, v)).collect();
        rows.extend((0..2).filter_map(|i| self.torus_leading(i, v)));
        rows
    }

    /// Deterministic sample of products of root group and torus elements.
    pub fn sample_elements(&self, roots: &[usize]) -> Vec<Vec<Factor>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6732);
        let units: Vec<Elt> = self.field.units().collect();
        (0..TANGENT_SAMPLES)
            .map(|_| {
                (0..SAMPLE_LENGTH)
                    .map(|_| {
                        if roots.is_empty() || rng.gen_bool(0.2) {
                            Factor::Torus(*units.choose(&mut rng).unwrap(), *units.choose(&mut rng).unwrap())
                        } else {
                            Factor::Root(*roots.choose(&mut rng).unwrap(), *units.choose(&mut rng).unwrap())
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `h·v` for `h` the product of the factors, the last factor acting first.
    pub fn apply(&self, h: &[Factor], v: &[Elt]) -> G2Vector {
        h.iter().rev().fold(v.to_vec(), |acc, f| match *f {
            Factor::Root(g, t) => self.act_root_group(g, t, &acc),
            Factor::Torus(a, b) => self.act_torus(a, b, &acc),
        })
    }

    pub fn apply_inverse(&self, h: &[Factor], v: &[Elt]) -> G2Vector {
        let f = &self.field;
        h.iter().fold(v.to_vec(), |acc, x| match *x {
            Factor::Root(g, t) => self.act_root_group(g, f.neg(t), &acc),
            Factor::Torus(a, b) => self.act_torus(f.inv(a), f.inv(b), &acc),
        })
    }

    pub fn stabilizer_dim(&self, v: &[Elt]) -> usize {
        let all: Vec<usize> = (0..12).collect();
        self.restricted_stabilizer_dim(&all, v)
    }

    /// `14 − rank{X · v : X a Chevalley generator}`, the dimension of the Lie algebra stabilizer.
    pub fn lie_stabilizer_dim(&self, v: &[Elt]) -> usize {
        let rows: Vec<G2Vector> = (0..DIM).map(|a| self.lie_action(a, v)).collect();
        DIM - self.field.rank(&rows)
    }

    /// Stabilizer of `v` in the Lie subalgebra spanned by `h_α`, `h_β` and the root vectors of
    /// `roots`. Equivariant under the subgroup these generate, so constant along its orbits.
    pub fn restricted_lie_stabilizer_dim(&self, roots: &[usize], v: &[Elt]) -> usize {
        let rows: Vec<G2Vector> = roots
            .iter()
            .copied()
            .chain([H_SHORT, H_LONG])
            .map(|a| self.lie_action(a, v))
            .collect();
        2 + roots.len() - self.field.rank(&rows)
    }

    /// Whether `v` has a nonzero component in `g_s`, resp. in `g/g_s`.
    pub fn support_pattern(&self, v: &[Elt]) -> (bool, bool) {
        let gs = &self.chevalley.gs;
        let short = v.iter().enumerate().any(|(i, &x)| x != 0 && gs.contains(&i));
        let long = v.iter().enumerate().any(|(i, &x)| x != 0 && !gs.contains(&i));
        (short, long)
    }

    pub fn line_name(&self, i: usize) -> String {
        match i {
            H_SHORT => "hs".into(),
            H_LONG => "hl".into(),
            _ => {
                let d = self.datum();
                let c = &d.root_coords[i];
                let base = REP_NAMES[d.positive.iter().position(|&p| d.root_coords[p] == c.iter().map(|x| x.abs()).collect::<Vec<_>>()).unwrap()];
                if d.is_positive(i) {
                    base.to_string()
                } else {
                    format!("-{base}")
                }
            }
        }
    }

    pub fn line_index(&self, name: &str) -> Option<usize> {
        (0..DIM).find(|&i| self.line_name(i) == name)
    }

    /// Parses `v2ab+vb`, `2*va+z*vb`, or `0`.
    pub fn parse_vector(&self, s: &str) -> Result<G2Vector> {
        let mut v = self.zero();
        let s = s.trim();
        if s == "0" {
            return Ok(v);
        }
        for term in s.split('+') {
            let (coef, name) = match term.rsplit_once('*') {
                Some((c, n)) => (self.field.parse(c)?, n.trim()),
                None => (1, term.trim()),
            };
            let i = self.line_index(name).ok_or_else(|| Error::Parse(format!("unknown line '{name}'")))?;
            v[i] = self.field.add(v[i], coef);
        }
        Ok(v)
    }

    pub fn format_vector(&self, v: &[Elt]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { self.line_name(i) } else { format!("{}*{}", self.field.format(c), self.line_name(i)) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Coefficient map for reports.
    pub fn vector_json(&self, v: &[Elt]) -> VectorJson {
        VectorJson {
            name: self.format_vector(v),
            coefficients: v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (self.line_name(i), self.field.format(c))).collect(),
        }
    }

    pub fn is_short(&self, root: usize) -> bool {
        self.datum().lengths[root] == RootLength::Short
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VectorJson {
    pub name: String,
    pub coefficients: std::collections::BTreeMap<String, String>,
}

/// `binom(n, k)` for any integer `n`, so that `(1+s)^n = Σ_k binom(n,k) s^k`.
pub fn binomial(n: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i64 {
        num *= i128::from(n - i);
        den *= i128::from(i + 1);
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(q: usize) -> G2Space {
        G2Space::new(Field::new(q).unwrap())
    }

    #[test]
    fn names_round_trip() {
        let s = space(9);
        for i in 0..DIM {
            assert_eq!(s.line_index(&s.line_name(i)), Some(i));
        }
        let v = s.parse_vector("v2ab+2*vb+z*va").unwrap();
        assert_eq!(s.parse_vector(&s.format_vector(&v)).unwrap(), v);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(-3, 2), 6);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn generic_stabilizers() {
        let s = space(3);
        assert_eq!(s.stabilizer_dim(&s.zero()), 14);
        assert_eq!(s.lie_stabilizer_dim(&s.zero()), 14);
    }
}
