//! Central characters `a = (s, (t_i))`, with `C^×` modelled as `(Q/Z) ⊕ Z^m` over a
//! declared list of multiplicatively independent positive generators.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{integer_kernel, solve_integer};
use crate::laurent::ParameterFunction;
use crate::rational::{parse_q, pow_q, Q};
use crate::root_data::RootDatum;
use crate::{Error, Result};

/// `exp(2πi·torsion) · Π g_k^{free_k}`; the group law is addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterValue {
    pub torsion: Rational64,
    pub free: Vec<i64>,
}

fn reduce_mod_one(x: Rational64) -> Rational64 {
    let f = x - Rational64::from_integer(x.floor().to_integer());
    if f < Rational64::zero() {
        f + Rational64::one()
    } else {
        f
    }
}

impl CharacterValue {
    pub fn one(m: usize) -> Self {
        CharacterValue { torsion: Rational64::zero(), free: vec![0; m] }
    }

    pub fn new(torsion: Rational64, free: Vec<i64>) -> Self {
        CharacterValue { torsion: reduce_mod_one(torsion), free }
    }

    pub fn add(&self, other: &Self) -> Self {
        CharacterValue::new(
            self.torsion + other.torsion,
            self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn times(&self, n: i64) -> Self {
        CharacterValue::new(self.torsion * Rational64::from_integer(n), self.free.iter().map(|x| x * n).collect())
    }

    pub fn is_one(&self) -> bool {
        self.torsion.is_zero() && self.free.iter().all(|&x| x == 0)
    }

    pub fn to_json(&self, generators: &[String]) -> ValueJson {
        ValueJson {
            tors: format!("{}", self.torsion),
            free: generators.iter().cloned().zip(self.free.iter().copied()).filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn from_json(j: &ValueJson, generators: &[String]) -> Result<Self> {
        let t = parse_q(&j.tors)?;
        let torsion = Rational64::new(
            t.numer().try_into().map_err(|_| Error::InvalidCharacter("torsion too large".into()))?,
            t.denom().try_into().map_err(|_| Error::InvalidCharacter("torsion too large".into()))?,
        );
        let mut free = vec![0; generators.len()];
        for (name, e) in &j.free {
            let k = generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::InvalidCharacter(format!("undeclared generator '{name}'")))?;
            free[k] = *e;
        }
        Ok(CharacterValue::new(torsion, free))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValueJson {
    #[serde(default = "zero_string")]
    pub tors: String,
    #[serde(default)]
    pub free: BTreeMap<String, i64>,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterJson {
    pub generators: Vec<String>,
    pub s: BTreeMap<String, ValueJson>,
    pub t: Vec<ValueJson>,
    /// Optional default rational values of the generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub generators: Vec<String>,
    /// Values on the basis of `X*`.
    pub s: Vec<CharacterValue>,
    /// Values `t_i`, one per parameter.
    pub t: Vec<CharacterValue>,
}

impl CentralCharacter {
    pub fn from_json_value(j: &CharacterJson, datum: &RootDatum, nparams: usize) -> Result<Self> {
        let g = &j.generators;
        let mut s = Vec::new();
        for name in &datum.basis_names {
            let v = j
                .s
                .get(name)
                .ok_or_else(|| Error::InvalidCharacter(format!("missing value of s on '{name}'")))?;
            s.push(CharacterValue::from_json(v, g)?);
        }
        if let Some(extra) = j.s.keys().find(|k| !datum.basis_names.contains(k)) {
            return Err(Error::InvalidCharacter(format!("unknown basis vector '{extra}'")));
        }
        if j.t.len() != nparams {
            return Err(Error::InvalidCharacter(format!("expected {nparams} values t_i, got {}", j.t.len())));
        }
        let t = j.t.iter().map(|v| CharacterValue::from_json(v, g)).collect::<Result<_>>()?;
        Ok(CentralCharacter { generators: g.clone(), s, t })
    }

    pub fn from_json(text: &str, datum: &RootDatum, nparams: usize) -> Result<Self> {
        let j: CharacterJson = serde_json::from_str(text)?;
        Self::from_json_value(&j, datum, nparams)
    }

    pub fn to_json(&self, datum: &RootDatum) -> CharacterJson {
        CharacterJson {
            generators: self.generators.clone(),
            s: datum
                .basis_names
                .iter()
                .cloned()
                .zip(self.s.iter().map(|v| v.to_json(&self.generators)))
                .collect(),
            t: self.t.iter().map(|v| v.to_json(&self.generators)).collect(),
            values: None,
        }
    }

    pub fn m(&self) -> usize {
        self.generators.len()
    }

    /// `(λ, ε)(a) = Π s_j^{λ_j} · Π t_i^{ε_i}`.
    pub fn eval(&self, lambda: &[i64], eps: &[i64]) -> CharacterValue {
        let mut v = CharacterValue::one(self.m());
        for (x, sv) in lambda.iter().zip(&self.s) {
            v = v.add(&sv.times(*x));
        }
        for (e, tv) in eps.iter().zip(&self.t) {
            v = v.add(&tv.times(*e));
        }
        v
    }

    pub fn is_positive_real(&self) -> bool {
        self.s.iter().chain(&self.t).all(|v| v.torsion.is_zero())
    }

    /// Whether `⟨t_i⟩` is torsion-free: every integer relation among the free parts
    /// must also kill the torsion parts.
    pub fn t_torsion_free(&self) -> bool {
        let ni = self.t.len();
        if ni == 0 {
            return true;
        }
        let f: Vec<Vec<i64>> = (0..self.m()).map(|k| self.t.iter().map(|v| v.free[k]).collect()).collect();
        let kernel = integer_kernel(&f, ni);
        kernel.iter().all(|n| {
            let tors = n.iter().zip(&self.t).fold(Rational64::zero(), |acc, (c, v)| acc + v.torsion * Rational64::from_integer(*c));
            tors.is_integer()
        })
    }

    /// Whether `v ∈ ⟨t_i⟩`.
    pub fn in_t_subgroup(&self, v: &CharacterValue) -> bool {
        let ni = self.t.len();
        let den = self.t.iter().chain(std::iter::once(v)).fold(1i64, |acc, x| acc.lcm(x.torsion.denom()));
        // unknowns (n_1..n_I, k): F n = f_v and Σ n_i a_i − den·k = a_v
        let mut rows: Vec<Vec<i64>> = (0..self.m())
            .map(|k| {
                let mut r: Vec<i64> = self.t.iter().map(|x| x.free[k]).collect();
                r.push(0);
                r
            })
            .collect();
        let mut last: Vec<i64> = self.t.iter().map(|x| (x.torsion * Rational64::from_integer(den)).to_integer()).collect();
        last.push(-den);
        rows.push(last);
        let mut rhs: Vec<i64> = v.free.clone();
        rhs.push((v.torsion * Rational64::from_integer(den)).to_integer());
        solve_integer(&rows, ni + 1, &rhs).is_some()
    }

    /// Rational values on the `X*` basis and of the `t_i` after assigning the generators.
    pub fn specialize(&self, values: &[Q]) -> Result<RationalPoint> {
        if values.len() != self.m() {
            return Err(Error::NotRational("a value is needed for every generator".into()));
        }
        if !self.is_positive_real() {
            return Err(Error::NotRational("character has nonzero torsion parts".into()));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::NotRational("generator values must be nonzero".into()));
        }
        let ev = |c: &CharacterValue| c.free.iter().zip(values).fold(Q::one(), |acc, (e, v)| acc * pow_q(v, *e));
        Ok(RationalPoint { s: self.s.iter().map(ev).collect(), t: self.t.iter().map(ev).collect() })
    }
}

/// A central character with rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoint {
    pub s: Vec<Q>,
    pub t: Vec<Q>,
}

impl RationalPoint {
    pub fn eval(&self, lambda: &[i64]) -> Q {
        lambda.iter().zip(&self.s).fold(Q::one(), |acc, (e, v)| acc * pow_q(v, *e))
    }
}

/// A line of `V`: a root line in summand `summand`, or the `k`-th zero-weight line of that summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Line {
    Root { root: usize, summand: usize },
    Zero { summand: usize, k: usize },
}

/// The rooted representation attached to a parameter function: the root `γ` spans a line in
/// summand `q(γ)`, and summand `i` has one zero-weight line per simple root with parameter `q_i`.
pub fn rooted_lines(datum: &RootDatum, params: &ParameterFunction) -> Vec<Line> {
    let mut lines: Vec<Line> =
        (0..datum.num_roots()).map(|k| Line::Root { root: k, summand: params.of_root(datum, k) }).collect();
    for i in 0..params.len() {
        let n = (0..datum.num_simple()).filter(|&j| params.of_simple(datum, j) == i).count();
        for k in 0..n {
            lines.push(Line::Zero { summand: i, k });
        }
    }
    lines
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Lines fixed by `T̂_a`: `γ(s) = t_i` for root lines, `t_i = 1` for zero-weight lines.
pub fn fixed_support(datum: &RootDatum, params: &ParameterFunction, a: &CentralCharacter) -> Vec<Line> {
    let np = params.len();
    rooted_lines(datum, params)
        .into_iter()
        .filter(|l| match l {
            Line::Root { root, summand } => {
                let eps: Vec<i64> = unit(np, *summand).iter().map(|x| -x).collect();
                a.eval(&datum.roots[*root], &eps).is_one()
            }
            Line::Zero { summand, .. } => a.t[*summand].is_one(),
        })
        .collect()
}

/// Roots with `γ(s) = 1`.
pub fn centralizer_roots(datum: &RootDatum, a: &CentralCharacter) -> Vec<usize> {
    (0..datum.num_roots()).filter(|&k| a.eval(&datum.roots[k], &[]).is_one()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionPair {
    /// Roots `γ` with `γ(s) ∈ ⟨t_i⟩`.
    pub roots: Vec<usize>,
    pub is_full: bool,
    /// Lines of `V^{S_a}`.
    pub support: Vec<Line>,
}

pub fn reduction_pair(datum: &RootDatum, params: &ParameterFunction, a: &CentralCharacter) -> ReductionPair {
    let roots: Vec<usize> = (0..datum.num_roots()).filter(|&k| a.in_t_subgroup(&a.eval(&datum.roots[k], &[]))).collect();
    let support = rooted_lines(datum, params)
        .into_iter()
        .filter(|l| match l {
            Line::Root { root, .. } => roots.contains(root),
            Line::Zero { .. } => true,
        })
        .collect();
    ReductionPair { is_full: roots.len() == datum.num_roots(), roots, support }
}

/// Simple roots (indices into the datum) of a closed root subsystem.
pub fn subsystem_simple_roots(datum: &RootDatum, roots: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = roots.iter().copied().collect();
    let pos: Vec<usize> = roots.iter().copied().filter(|&k| datum.is_positive(k)).collect();
    pos.iter()
        .copied()
        .filter(|&k| {
            !pos.iter().any(|&a| {
                let rest: Vec<i64> = datum.roots[k].iter().zip(&datum.roots[a]).map(|(x, y)| x - y).collect();
                datum.root_index(&rest).is_some_and(|b| set.contains(&b) && datum.is_positive(b))
            })
        })
        .collect()
}

/// Whether a closed subsystem is a product of type A systems (the empty system included).
pub fn is_type_a(datum: &RootDatum, roots: &[usize]) -> bool {
    let simple = subsystem_simple_roots(datum, roots);
    let n = simple.len();
    let mut degree = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let aij = crate::root_data::pair(&datum.roots[simple[j]], &datum.coroots[simple[i]]);
            let aji = crate::root_data::pair(&datum.roots[simple[i]], &datum.coroots[simple[j]]);
            match aij * aji {
                0 => {}
                1 => degree[i] += 1,
                _ => return false,
            }
        }
    }
    degree.iter().all(|&d| d <= 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Finite,
    Infinite,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessReport {
    pub verdict: Verdict,
    pub t_torsion_free: bool,
    pub centralizer_dim: usize,
    pub fixed_root_lines: usize,
    /// Largest number of fixed root lines inside one positive system.
    pub fixed_nilpotent_dim: usize,
    pub reduction_full: bool,
    pub reduction_type_a: bool,
}

pub fn finiteness(datum: &RootDatum, params: &ParameterFunction, a: &CentralCharacter) -> FinitenessReport {
    let fixed = fixed_support(datum, params, a);
    let fixed_roots: Vec<usize> = fixed
        .iter()
        .filter_map(|l| match l {
            Line::Root { root, .. } => Some(*root),
            _ => None,
        })
        .collect();
    let weyl = &datum.weyl;
    let fixed_nilpotent_dim = (0..weyl.order())
        .map(|w| {
            let winv = weyl.inverse[w];
            fixed_roots.iter().filter(|&&g| datum.is_positive(weyl.root_perm[winv][g])).count()
        })
        .max()
        .unwrap_or(0);
    let centralizer_dim = datum.rank + centralizer_roots(datum, a).len();
    let torsion_free = a.t_torsion_free();
    let red = reduction_pair(datum, params, a);
    let type_a = is_type_a(datum, &red.roots);
    let verdict = if centralizer_dim < fixed_nilpotent_dim {
        Verdict::Infinite
    } else if torsion_free && (datum.is_g2() || type_a) {
        Verdict::Finite
    } else {
        Verdict::Unknown
    };
    FinitenessReport {
        verdict,
        t_torsion_free: torsion_free,
        centralizer_dim,
        fixed_root_lines: fixed_roots.len(),
        fixed_nilpotent_dim,
        reduction_full: red.is_full,
        reduction_type_a: type_a,
    }
}

pub fn finiteness_verdict(datum: &RootDatum, params: &ParameterFunction, a: &CentralCharacter) -> Verdict {
    finiteness(datum, params, a).verdict
}

/// Exhaustive test that the Weyl elements acting trivially on `X*(T̂)/X*_a` are generated by
/// the reflections in the centralizer roots.
pub fn is_connected_centralizer(datum: &RootDatum, a: &CentralCharacter) -> bool {
    let weyl = &datum.weyl;
    let n = datum.rank;
    let stabilizer: BTreeSet<usize> = (0..weyl.order())
        .filter(|&w| {
            (0..n).all(|j| {
                let e = unit(n, j);
                let we = weyl.elements[w].apply(&e);
                let diff: Vec<i64> = we.iter().zip(&e).map(|(x, y)| x - y).collect();
                a.eval(&diff, &[]).is_one()
            })
        })
        .collect();
    let gens: Vec<usize> = centralizer_roots(datum, a)
        .into_iter()
        .map(|g| {
            let m: Vec<Vec<i64>> = (0..n)
                .map(|row| (0..n).map(|col| i64::from(row == col) - datum.roots[g][row] * datum.coroots[g][col]).collect())
                .collect();
            weyl.index_of_matrix(&m).expect("reflection lies in W")
        })
        .collect();
    let mut generated: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(w) = frontier.pop() {
        for &g in &gens {
            let x = weyl.mult[w][g];
            if generated.insert(x) {
                frontier.push(x);
            }
        }
    }
    generated == stabilizer
}

/// Readable name of a root from its simple-root coordinates (`3a+2b`, `-a1-a2`, ...).
pub fn root_label(datum: &RootDatum, k: usize) -> String {
    let r = datum.num_simple();
    let sym = |i: usize| -> String {
        if r == 2 {
            ["a", "b"][i].to_string()
        } else if r == 1 {
            "a".to_string()
        } else {
            format!("a{}", i + 1)
        }
    };
    let mut s = String::new();
    for (i, &c) in datum.root_coords[k].iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&sym(i));
    }
    s
}

pub fn line_label(datum: &RootDatum, l: &Line) -> String {
    match l {
        Line::Root { root, .. } => root_label(datum, *root),
        Line::Zero { summand, k } => format!("h{}_{}", summand + 1, k + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> (RootDatum, ParameterFunction) {
        let d = RootDatum::preset("G2").unwrap();
        let p = ParameterFunction::preset(&d);
        (d, p)
    }

    fn val(t: (i64, i64), free: &[i64]) -> CharacterValue {
        CharacterValue::new(Rational64::new(t.0, t.1), free.to_vec())
    }

    /// α(s)=1, β(s)=q, t=(q,q).
    fn example1() -> CentralCharacter {
        CentralCharacter {
            generators: vec!["q".into()],
            s: vec![val((0, 1), &[0]), val((0, 1), &[1])],
            t: vec![val((0, 1), &[1]), val((0, 1), &[1])],
        }
    }

    /// α(s)=ζ₃, β(s)=q, t=(ζ₃q, q).
    fn example2() -> CentralCharacter {
        CentralCharacter {
            generators: vec!["q".into()],
            s: vec![val((1, 3), &[0]), val((0, 1), &[1])],
            t: vec![val((1, 3), &[1]), val((0, 1), &[1])],
        }
    }

    fn trivial() -> CentralCharacter {
        CentralCharacter {
            generators: vec![],
            s: vec![CharacterValue::one(0); 2],
            t: vec![CharacterValue::one(0); 2],
        }
    }

    fn labels(d: &RootDatum, lines: &[Line]) -> Vec<String> {
        lines.iter().map(|l| line_label(d, l)).collect()
    }

    #[test]
    fn evaluations() {
        let (d, _) = g2();
        assert!(example1().eval(&[0, 0], &[0, 0]).is_one());
        assert_eq!(example1().eval(&d.roots[2], &[]), val((0, 1), &[1]));
        assert_eq!(example2().eval(&[3, 1], &[]), val((0, 1), &[1]));
    }

    #[test]
    fn fixed_supports() {
        let (d, p) = g2();
        assert_eq!(labels(&d, &fixed_support(&d, &p, &example1())), vec!["b", "a+b", "2a+b", "3a+b"]);
        assert_eq!(labels(&d, &fixed_support(&d, &p, &example2())), vec!["b", "a+b", "3a+b"]);
        assert_eq!(fixed_support(&d, &p, &trivial()).len(), 14);
    }

    #[test]
    fn centralizers() {
        let (d, _) = g2();
        let c: Vec<String> = centralizer_roots(&d, &example1()).iter().map(|&k| root_label(&d, k)).collect();
        assert_eq!(c, vec!["a", "-a"]);
        assert!(centralizer_roots(&d, &example2()).is_empty());
        assert_eq!(centralizer_roots(&d, &trivial()).len(), 12);
    }

    #[test]
    fn torsion_and_verdicts() {
        let (d, p) = g2();
        assert!(!example2().t_torsion_free());
        let r = finiteness(&d, &p, &example2());
        assert_eq!((r.centralizer_dim, r.fixed_nilpotent_dim, r.verdict), (2, 3, Verdict::Infinite));
        assert_eq!(finiteness_verdict(&d, &p, &example1()), Verdict::Finite);
        assert_eq!(finiteness_verdict(&d, &p, &trivial()), Verdict::Finite);
        assert!(example1().is_positive_real());
        assert!(!example2().is_positive_real());
    }

    #[test]
    fn reduction_pairs() {
        let (d, p) = g2();
        let generic = CentralCharacter {
            generators: vec!["2".into(), "3".into()],
            s: vec![val((0, 1), &[1, 0]), val((0, 1), &[0, 1])],
            t: vec![val((0, 1), &[1, 0]), val((0, 1), &[0, 1])],
        };
        let r = reduction_pair(&d, &p, &generic);
        assert!(r.is_full);
        assert_eq!(r.support.len(), 14);
        assert!(reduction_pair(&d, &p, &trivial()).is_full);
    }

    #[test]
    fn connected_centralizers() {
        let (d, _) = g2();
        for a in [example1(), example2(), trivial()] {
            assert!(is_connected_centralizer(&d, &a));
        }
    }

    #[test]
    fn json_round_trip() {
        let (d, _) = g2();
        let a = example2();
        let text = serde_json::to_string(&a.to_json(&d)).unwrap();
        assert_eq!(CentralCharacter::from_json(&text, &d, 2).unwrap(), a);
    }
}
