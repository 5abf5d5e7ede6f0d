//! Classification of the `F_q`-points of `V^{T̂_a} ∩ V^-` by orbit invariants.

use std::cmp::Reverse;
use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::field::Elt;
use super::fibers::fiber_point_count;
use super::space::{G2Space, G2Vector, VectorJson};
use crate::character::{centralizer_roots, finiteness, fixed_support, CentralCharacter, Line, Verdict};
use crate::laurent::ParameterFunction;
use crate::{Error, Result};

/// Largest fixed-space dimension that is enumerated.
pub const MAX_FIXED_DIM: usize = 6;
/// Largest number of points that is enumerated.
pub const MAX_POINTS: usize = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    /// Stabilizer dimension in the Lie algebra of the centralizer of `T̂_a`.
    pub stabilizer_dim: usize,
    pub short_part: bool,
    pub long_part: bool,
    pub fiber_points: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureClass {
    pub signature: Signature,
    pub representative: VectorJson,
    pub points: usize,
    /// Connected pieces of the class under the generators of the centralizer.
    pub orbit_pieces: usize,
    #[serde(skip)]
    pub rep_vector: G2Vector,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub field_size: usize,
    pub fixed_lines: Vec<String>,
    pub centralizer_roots: Vec<String>,
    pub points: usize,
    pub classes: Vec<SignatureClass>,
}

/// Preference order for representatives: fewer terms, then higher roots, then smaller coefficients.
fn rep_key(v: &[Elt]) -> (usize, Vec<Reverse<usize>>, Vec<Elt>) {
    let support: Vec<Reverse<usize>> = (0..v.len()).rev().filter(|&i| v[i] != 0).map(Reverse).collect();
    (support.len(), support, v.iter().rev().copied().collect())
}

struct PointSet {
    lines: Vec<usize>,
    q: usize,
}

impl PointSet {
    fn len(&self) -> usize {
        self.q.pow(self.lines.len() as u32)
    }

    fn point(&self, mut code: usize) -> G2Vector {
        let mut v = vec![0; 14];
        for &l in &self.lines {
            v[l] = (code % self.q) as Elt;
            code /= self.q;
        }
        v
    }

    fn code(&self, v: &[Elt]) -> Option<usize> {
        if v.iter().enumerate().any(|(i, &c)| c != 0 && !self.lines.contains(&i)) {
            return None;
        }
        Some(self.lines.iter().rev().fold(0, |acc, &l| acc * self.q + v[l] as usize))
    }
}

/// Root lines of `V^-` fixed by `T̂_a`.
pub fn fixed_borel_lines(space: &G2Space, a: &CentralCharacter) -> Vec<usize> {
    let d = space.datum();
    let params = ParameterFunction::preset(d);
    fixed_support(d, &params, a)
        .into_iter()
        .filter_map(|l| match l {
            Line::Root { root, .. } if d.is_positive(root) => Some(root),
            _ => None,
        })
        .collect()
}

fn signature_with(space: &G2Space, cent: &[usize], v: &[Elt], fiber_points: u64) -> Signature {
    let (short_part, long_part) = space.support_pattern(v);
    Signature { stabilizer_dim: space.restricted_lie_stabilizer_dim(cent, v), short_part, long_part, fiber_points }
}

/// Signature of a single point of `V^-` for the centralizer of `a`.
pub fn point_signature(space: &G2Space, a: &CentralCharacter, v: &[Elt]) -> Result<Signature> {
    let cent = centralizer_roots(space.datum(), a);
    Ok(signature_with(space, &cent, v, fiber_point_count(space, v)?))
}

pub fn fixed_space_classify(space: &G2Space, a: &CentralCharacter) -> Result<Classification> {
    let d = space.datum();
    let params = ParameterFunction::preset(d);
    let report = finiteness(d, &params, a);
    if report.verdict != Verdict::Finite {
        return Err(Error::NotFinite(format!("{:?}", report.verdict)));
    }
    let lines = fixed_borel_lines(space, a);
    let too_many = (space.q() as f64).powi(lines.len() as i32) > MAX_POINTS as f64;
    if lines.len() > MAX_FIXED_DIM || too_many {
        return Err(Error::EnumerationBound(lines.len()));
    }
    let cent = centralizer_roots(d, a);
    let set = PointSet { lines: lines.clone(), q: space.q() };
    let n = set.len();

    // pieces of orbits: connected components under root group and torus generators
    let f = &space.field;
    let z = f.primitive;
    let moves = |v: &G2Vector| -> Vec<G2Vector> {
        let mut out = vec![space.act_torus(z, 1, v), space.act_torus(1, z, v)];
        for &g in &cent {
            for c in f.prime_basis() {
                out.push(space.act_root_group(g, c, v));
            }
        }
        out
    };
    let mut piece = vec![usize::MAX; n];
    let mut pieces = 0;
    for start in 0..n {
        if piece[start] != usize::MAX {
            continue;
        }
        piece[start] = pieces;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for w in moves(&set.point(c)) {
                if let Some(code) = set.code(&w) {
                    if piece[code] == usize::MAX {
                        piece[code] = pieces;
                        queue.push_back(code);
                    }
                }
            }
        }
        pieces += 1;
    }
    let mut first_of_piece = vec![usize::MAX; pieces];
    for (code, &p) in piece.iter().enumerate().rev() {
        first_of_piece[p] = code;
    }
    let fibers: Vec<u64> = first_of_piece
        .par_iter()
        .map(|&code| fiber_point_count(space, &set.point(code)))
        .collect::<Result<_>>()?;
    let signatures: Vec<Signature> =
        (0..n).into_par_iter().map(|code| signature_with(space, &cent, &set.point(code), fibers[piece[code]])).collect();

    let mut classes: BTreeMap<Signature, (G2Vector, usize, std::collections::BTreeSet<usize>)> = BTreeMap::new();
    for code in 0..n {
        let v = set.point(code);
        let e = classes.entry(signatures[code].clone()).or_insert_with(|| (v.clone(), 0, Default::default()));
        if rep_key(&v) < rep_key(&e.0) {
            e.0 = v;
        }
        e.1 += 1;
        e.2.insert(piece[code]);
    }
    let mut classes: Vec<SignatureClass> = classes
        .into_iter()
        .map(|(signature, (rep, points, ps))| SignatureClass {
            signature,
            representative: space.vector_json(&rep),
            points,
            orbit_pieces: ps.len(),
            rep_vector: rep,
        })
        .collect();
    classes.sort_by_key(|a| rep_key(&a.rep_vector));
    Ok(Classification {
        field_size: space.q(),
        fixed_lines: lines.iter().map(|&l| space.line_name(l)).collect(),
        centralizer_roots: cent.iter().map(|&g| space.line_name(g)).collect(),
        points: n,
        classes,
    })
}
