//! Root data and their Weyl groups.
//!
//! Weights are integer vectors in a fixed basis of `X*`, coweights integer
//! vectors in the dual basis of `X_*`, so the pairing is the dot product.
//! The Cartan matrix follows `a[i][j] = <α_j, α_i∨>`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::rational::{is_integral, q, Q};
use crate::{Error, Result};

const MAX_ROOTS: usize = 1000;
const MAX_WEYL: usize = 60_000;

pub type Weight = Vec<i64>;

pub fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootLength {
    Short,
    Long,
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Lexicographically least reduced word; `[i1,..,ik]` means `s_{i1} ⋯ s_{ik}`.
    pub word: Vec<usize>,
    /// Action on `X*` coordinates (column vectors).
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, v: &[i64]) -> Weight {
        self.matrix.iter().map(|row| pair(row, v)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    /// `mult[a][b]` is the index of `w_a w_b`.
    pub mult: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    /// `root_perm[w][γ]` is the index of `w(γ)`.
    pub root_perm: Vec<Vec<usize>>,
    index: HashMap<Vec<Vec<i64>>, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        // breadth-first enumeration puts the simple reflections right after e, in generator order
        1 + i
    }

    /// Index of the product `s_{i1} ⋯ s_{ik}`.
    pub fn find_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &i| self.mult[w][self.simple(i)])
    }

    pub fn index_of_matrix(&self, m: &[Vec<i64>]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    /// `Σ_w q^{l(w)}` as a coefficient list.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let top = self.elements.last().map_or(0, |e| e.length());
        let mut c = vec![0u64; top + 1];
        for e in &self.elements {
            c[e.length()] += 1;
        }
        c
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub basis_names: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    /// Roots in `X*` coordinates; positives first (by height), then their negatives in the same order.
    pub roots: Vec<Weight>,
    pub coroots: Vec<Weight>,
    /// Roots in the basis of simple roots.
    pub root_coords: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    pub positive: Vec<usize>,
    pub negation: Vec<usize>,
    pub lengths: Vec<RootLength>,
    /// W-orbit label per root; orbits are numbered by their first simple root.
    pub orbit: Vec<usize>,
    pub weyl: WeylGroup,
    index: HashMap<Weight, usize>,
}

/// On-disk description of a root datum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDatumSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    pub simple_roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub simple_coroots: Option<Vec<Vec<i64>>>,
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub lengths: Option<HashMap<String, RootLength>>,
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidDatum(msg.into()))
}

fn check_cartan(a: &[Vec<i64>]) -> Result<()> {
    let r = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != r {
            return invalid("Cartan matrix is not square");
        }
        if row[i] != 2 {
            return invalid("Cartan diagonal must be 2");
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return invalid("positive off-diagonal Cartan entry");
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return invalid("Cartan matrix zero pattern is not symmetric");
            }
            if a[i][j] * a[j][i] > 3 {
                return invalid("Cartan matrix is not of finite type");
            }
        }
    }
    Ok(())
}

impl RootDatum {
    pub fn preset(name: &str) -> Result<RootDatum> {
        match name {
            "A1" => RootDatum::new("A1", vec!["omega".into()], vec![vec![2]], vec![vec![2]], None),
            "A2" => RootDatum::new(
                "A2",
                vec!["omega1".into(), "omega2".into()],
                vec![vec![2, -1], vec![-1, 2]],
                vec![vec![2, -1], vec![-1, 2]],
                None,
            ),
            "G2" => RootDatum::new(
                "G2",
                vec!["alpha".into(), "beta".into()],
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![2, -3], vec![-1, 2]],
                None,
            ),
            other => invalid(format!("unknown preset '{other}'")),
        }
    }

    pub fn from_spec(spec: &RootDatumSpec) -> Result<RootDatum> {
        let basis = spec
            .basis
            .clone()
            .unwrap_or_else(|| (1..=spec.rank).map(|i| format!("e{i}")).collect());
        if basis.len() != spec.rank {
            return invalid("basis names do not match rank");
        }
        let d = RootDatum::new(
            spec.name.as_deref().unwrap_or("custom"),
            basis,
            spec.simple_roots.clone(),
            spec.cartan.clone(),
            spec.simple_coroots.clone(),
        )?;
        if let Some(lengths) = &spec.lengths {
            for (key, want) in lengths {
                let i: usize = key
                    .parse()
                    .ok()
                    .or_else(|| d.basis_names.iter().position(|n| n == key))
                    .ok_or_else(|| Error::InvalidDatum(format!("unknown simple root '{key}'")))?;
                if i >= d.simple.len() || d.lengths[d.simple[i]] != *want {
                    return invalid(format!("declared length of simple root {key} is inconsistent"));
                }
            }
        }
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<RootDatum> {
        let spec: RootDatumSpec = serde_json::from_str(text)?;
        RootDatum::from_spec(&spec)
    }

    pub fn to_spec(&self) -> RootDatumSpec {
        RootDatumSpec {
            name: Some(self.name.clone()),
            rank: self.rank,
            basis: Some(self.basis_names.clone()),
            simple_roots: self.simple.iter().map(|&i| self.roots[i].clone()).collect(),
            simple_coroots: Some(self.simple.iter().map(|&i| self.coroots[i].clone()).collect()),
            cartan: self.cartan.clone(),
            lengths: Some(
                self.simple
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| (k.to_string(), self.lengths[i]))
                    .collect(),
            ),
        }
    }

    pub fn new(
        name: &str,
        basis_names: Vec<String>,
        simple_roots: Vec<Weight>,
        cartan: Vec<Vec<i64>>,
        simple_coroots: Option<Vec<Weight>>,
    ) -> Result<RootDatum> {
        let n = basis_names.len();
        let r = simple_roots.len();
        if n == 0 {
            return invalid("rank must be positive");
        }
        if cartan.len() != r {
            return invalid("Cartan matrix size differs from the number of simple roots");
        }
        if simple_roots.iter().any(|a| a.len() != n) {
            return invalid("simple root has wrong length");
        }
        check_cartan(&cartan)?;

        let simple_coroots = match simple_coroots {
            Some(c) => c,
            None => solve_coroots(&simple_roots, &cartan, n)?,
        };
        if simple_coroots.len() != r || simple_coroots.iter().any(|c| c.len() != n) {
            return invalid("simple coroots have wrong shape");
        }
        for i in 0..r {
            for j in 0..r {
                if pair(&simple_roots[j], &simple_coroots[i]) != cartan[i][j] {
                    return invalid("simple roots and coroots do not realize the Cartan matrix");
                }
            }
        }

        // close under simple reflections, tracking coroots and simple-root coordinates
        let mut roots: Vec<Weight> = Vec::new();
        let mut coroots: Vec<Weight> = Vec::new();
        let mut coords: Vec<Vec<i64>> = Vec::new();
        let mut parent: Vec<usize> = Vec::new();
        let mut seen: HashMap<Weight, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            if seen.contains_key(&simple_roots[i]) {
                return invalid("repeated simple root");
            }
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(simple_roots[i].clone(), roots.len());
            roots.push(simple_roots[i].clone());
            coroots.push(simple_coroots[i].clone());
            coords.push(e);
            parent.push(i);
            queue.push_back(i);
        }
        let mut uf: Vec<usize> = (0..r).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..r {
                let c = pair(&roots[k], &simple_coroots[i]);
                let new: Weight = roots[k].iter().zip(&simple_roots[i]).map(|(x, a)| x - c * a).collect();
                let d = pair(&simple_roots[i], &coroots[k]);
                let newc: Weight = coroots[k].iter().zip(&simple_coroots[i]).map(|(x, a)| x - d * a).collect();
                let mut newco = coords[k].clone();
                newco[i] -= c;
                match seen.get(&new) {
                    Some(&idx) => {
                        if coroots[idx] != newc {
                            return invalid("coroot assignment is not well defined");
                        }
                        let (a, b) = (find(&mut uf, parent[idx]), find(&mut uf, parent[k]));
                        uf[a.max(b)] = a.min(b);
                    }
                    None => {
                        if roots.len() >= MAX_ROOTS {
                            return invalid("root system is not finite");
                        }
                        seen.insert(new.clone(), roots.len());
                        roots.push(new);
                        coroots.push(newc);
                        coords.push(newco);
                        parent.push(parent[k]);
                        queue.push_back(roots.len() - 1);
                    }
                }
            }
        }
        for (k, co) in coords.iter().enumerate() {
            if pair(&roots[k], &coroots[k]) != 2 {
                return invalid("root/coroot pairing differs from 2");
            }
            if !(co.iter().all(|&x| x >= 0) || co.iter().all(|&x| x <= 0)) {
                return invalid("root is neither positive nor negative");
            }
            if co.iter().all(|&x| x == 0) {
                return invalid("zero root");
            }
        }

        // order: positives by height (ties: larger coordinates first), then negatives alike
        let mut pos: Vec<usize> = (0..roots.len()).filter(|&k| coords[k].iter().all(|&x| x >= 0)).collect();
        pos.sort_by(|&a, &b| {
            let ha: i64 = coords[a].iter().sum();
            let hb: i64 = coords[b].iter().sum();
            ha.cmp(&hb).then_with(|| coords[b].cmp(&coords[a]))
        });
        let m = pos.len();
        if 2 * m != roots.len() {
            return invalid("roots do not come in ± pairs");
        }
        let mut order = pos.clone();
        for &p in &pos {
            let neg: Weight = roots[p].iter().map(|x| -x).collect();
            match seen.get(&neg) {
                Some(&k) => order.push(k),
                None => return invalid("roots do not come in ± pairs"),
            }
        }
        let sorted_roots: Vec<Weight> = order.iter().map(|&k| roots[k].clone()).collect();
        let sorted_coroots: Vec<Weight> = order.iter().map(|&k| coroots[k].clone()).collect();
        let sorted_coords: Vec<Vec<i64>> = order.iter().map(|&k| coords[k].clone()).collect();
        let mut orbit: Vec<usize> = order.iter().map(|&k| find(&mut uf, parent[k])).collect();
        // renumber orbits by first simple root
        let mut labels: Vec<usize> = Vec::new();
        for o in orbit.iter_mut() {
            let l = match labels.iter().position(|x| x == o) {
                Some(p) => p,
                None => {
                    labels.push(*o);
                    labels.len() - 1
                }
            };
            *o = l;
        }
        // relabel so orbit ids follow simple-root order
        let simple: Vec<usize> = (0..r)
            .map(|i| sorted_roots.iter().position(|x| *x == simple_roots[i]).unwrap())
            .collect();
        let mut relabel = vec![usize::MAX; labels.len()];
        let mut next = 0;
        for &s in &simple {
            if relabel[orbit[s]] == usize::MAX {
                relabel[orbit[s]] = next;
                next += 1;
            }
        }
        let orbit: Vec<usize> = orbit.iter().map(|&o| relabel[o]).collect();

        let index: HashMap<Weight, usize> =
            sorted_roots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let negation: Vec<usize> = (0..2 * m).map(|k| if k < m { k + m } else { k - m }).collect();
        let lengths: Vec<RootLength> = (0..2 * m)
            .map(|k| {
                let long = (0..2 * m)
                    .filter(|&d| d != k && d != negation[k])
                    .all(|d| pair(&sorted_roots[d], &sorted_coroots[k]).abs() <= 1);
                if long {
                    RootLength::Long
                } else {
                    RootLength::Short
                }
            })
            .collect();

        let mut datum = RootDatum {
            name: name.to_string(),
            rank: n,
            basis_names,
            cartan,
            roots: sorted_roots,
            coroots: sorted_coroots,
            root_coords: sorted_coords,
            simple,
            positive: (0..m).collect(),
            negation,
            lengths,
            orbit,
            weyl: WeylGroup {
                elements: vec![],
                mult: vec![],
                inverse: vec![],
                root_perm: vec![],
                index: HashMap::new(),
            },
            index,
        };
        datum.weyl = datum.build_weyl()?;
        Ok(datum)
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.roots[self.simple[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &Weight {
        &self.coroots[self.simple[i]]
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit.iter().max().map_or(0, |m| m + 1)
    }

    /// `s_γ(λ) = λ − <λ, γ∨> γ`.
    pub fn reflect(&self, root: usize, lambda: &[i64]) -> Result<Weight> {
        if root >= self.roots.len() {
            return Err(Error::UnknownRoot(root));
        }
        Ok(self.reflect_unchecked(root, lambda))
    }

    fn reflect_unchecked(&self, root: usize, lambda: &[i64]) -> Weight {
        let c = pair(lambda, &self.coroots[root]);
        lambda.iter().zip(&self.roots[root]).map(|(x, a)| x - c * a).collect()
    }

    pub fn simple_reflect(&self, i: usize, lambda: &[i64]) -> Weight {
        self.reflect_unchecked(self.simple[i], lambda)
    }

    fn simple_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let a = self.simple_root(i);
        let c = self.simple_coroot(i);
        (0..self.rank)
            .map(|row| (0..self.rank).map(|col| i64::from(row == col) - a[row] * c[col]).collect())
            .collect()
    }

    fn build_weyl(&self) -> Result<WeylGroup> {
        let n = self.rank;
        let ident: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let gens: Vec<Vec<Vec<i64>>> = (0..self.num_simple()).map(|i| self.simple_matrix(i)).collect();
        let mut elements = vec![WeylElement { word: vec![], matrix: ident.clone() }];
        let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        index.insert(ident, 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &w in &level {
                for (i, g) in gens.iter().enumerate() {
                    let m = matmul(&elements[w].matrix, g);
                    if index.contains_key(&m) {
                        continue;
                    }
                    if elements.len() >= MAX_WEYL {
                        return invalid("Weyl group too large");
                    }
                    let mut word = elements[w].word.clone();
                    word.push(i);
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement { word, matrix: m });
                }
            }
            level = next;
        }
        let size = elements.len();
        let mut mult = vec![vec![0usize; size]; size];
        for a in 0..size {
            for b in 0..size {
                let m = matmul(&elements[a].matrix, &elements[b].matrix);
                mult[a][b] = index[&m];
            }
        }
        let inverse: Vec<usize> = (0..size).map(|a| (0..size).find(|&b| mult[a][b] == 0).unwrap()).collect();
        let root_perm: Vec<Vec<usize>> = elements
            .iter()
            .map(|e| self.roots.iter().map(|g| self.index[&e.apply(g)]).collect())
            .collect();
        Ok(WeylGroup { elements, mult, inverse, root_perm, index })
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.positive.iter().filter(|&&p| !self.is_positive(self.weyl.root_perm[w][p])).count()
    }

    pub fn weyl_orbit(&self, lambda: &[i64]) -> BTreeSet<Weight> {
        self.weyl.elements.iter().map(|e| e.apply(lambda)).collect()
    }

    /// Fundamental weights, when they lie in `X*` (semisimple, simply connected part).
    pub fn fundamental_weights(&self) -> Option<Vec<Weight>> {
        let r = self.num_simple();
        if r != self.rank {
            return None;
        }
        let m: Vec<Vec<Q>> = (0..r).map(|i| self.simple_coroot(i).iter().map(|&x| q(x)).collect()).collect();
        let mut out = Vec::new();
        for i in 0..r {
            let b: Vec<Q> = (0..r).map(|j| q(i64::from(i == j))).collect();
            let x = linalg::solve(&m, &b)?;
            if !x.iter().all(is_integral) {
                return None;
            }
            out.push(x.iter().map(|v| v.to_integer().try_into().unwrap()).collect());
        }
        Some(out)
    }

    /// Whether the Cartan matrix is of type `G2`.
    pub fn is_g2(&self) -> bool {
        self.num_simple() == 2 && self.cartan[0][1] * self.cartan[1][0] == 3
    }

    pub fn height(&self, k: usize) -> i64 {
        self.root_coords[k].iter().sum()
    }
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn solve_coroots(simple: &[Weight], cartan: &[Vec<i64>], n: usize) -> Result<Vec<Weight>> {
    if simple.len() != n {
        return invalid("simple_coroots are required when the number of simple roots differs from the rank");
    }
    let s: Vec<Vec<Q>> = simple.iter().map(|a| a.iter().map(|&x| q(x)).collect()).collect();
    let mut out = Vec::new();
    for row in cartan {
        let b: Vec<Q> = row.iter().map(|&x| q(x)).collect();
        let c = linalg::solve(&s, &b).ok_or_else(|| Error::InvalidDatum("simple roots are dependent".into()))?;
        if !c.iter().all(is_integral) {
            return invalid("coroots are not integral in the dual basis");
        }
        if c.iter().all(|x| x.is_zero()) {
            return invalid("zero coroot");
        }
        out.push(c.iter().map(|v| v.to_integer().try_into().unwrap()).collect());
    }
    Ok(out)
}
