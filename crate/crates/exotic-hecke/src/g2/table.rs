//! Nilpotent orbit representatives and their stabilizers in the Borel subgroup.

use num_rational::Rational64;
use serde::Serialize;

use super::field::Elt;
use super::space::{G2Space, VectorJson};
use crate::lattice::diagonalize;
use crate::{Error, Result};

/// Representatives of the six nilpotent orbits.
pub const TABLE_REPS: [&str; 6] = ["0", "va", "vb", "vab+vb", "v2ab+vb", "va+vb"];
/// Published stabilizer dimensions of the representatives.
pub const TABLE_STABILIZER_DIMS: [usize; 6] = [14, 8, 8, 6, 4, 2];
/// Published component group orders of the representatives.
pub const TABLE_COMPONENT_ORDERS: [usize; 6] = [1, 1, 1, 1, 2, 1];

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub representative: VectorJson,
    pub stabilizer_dim: usize,
    pub lie_stabilizer_dim: usize,
    /// Order of the finite part of the torus stabilizer; the unipotent stabilizer is connected.
    pub component_group_order: usize,
}

pub fn orbit_table(space: &G2Space) -> Result<Vec<OrbitRecord>> {
    TABLE_REPS
        .iter()
        .map(|name| {
            let x = space.parse_vector(name)?;
            let b = b_stabilizer_solve(space, &x)?;
            Ok(OrbitRecord {
                representative: space.vector_json(&x),
                stabilizer_dim: space.stabilizer_dim(&x),
                lie_stabilizer_dim: space.lie_stabilizer_dim(&x),
                component_group_order: b.torus_torsion.iter().map(|g| g.order).product(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusTorsion {
    pub order: usize,
    /// `t` with `α(t) = exp(2πi·alpha)`, `β(t) = exp(2πi·beta)`.
    pub alpha: String,
    pub beta: String,
    /// The same element over the working field, when it exists there.
    pub alpha_value: Option<String>,
    pub beta_value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BStabilizer {
    /// `#{u ∈ U(F_q) : u·x = x}`.
    pub unipotent_points: u64,
    pub unipotent_dim: Option<u32>,
    /// Borel root groups fixing `x` pointwise.
    pub fixing_root_groups: Vec<String>,
    /// Whether the fixing root groups alone account for the unipotent stabilizer.
    pub factors_generate: bool,
    pub torus_rank: usize,
    pub torus_torsion: Vec<TorusTorsion>,
}

fn exact_log(n: u64, q: u64) -> Option<u32> {
    let mut k = 0;
    let mut p = 1u64;
    while p < n {
        p *= q;
        k += 1;
    }
    (p == n).then_some(k)
}

struct Fixer<'a> {
    space: &'a G2Space,
    roots: Vec<usize>,
    target: Vec<Elt>,
}

impl Fixer<'_> {
    fn count(&self, i: usize, v: &[Elt]) -> u64 {
        let d = self.space.datum();
        let final_height = self.roots.get(i).map_or(i64::MAX, |&g| d.height(g));
        let settled = (0..12).filter(|&g| d.is_positive(g) && d.height(g) <= final_height);
        if settled.into_iter().any(|g| v[g] != self.target[g]) {
            return 0;
        }
        if i == self.roots.len() {
            return 1;
        }
        let g = self.roots[i];
        if self.space.root_group_fixes(g, v) {
            return self.space.q() as u64 * self.count(i + 1, v);
        }
        self.space.field.elements().map(|t| self.count(i + 1, &self.space.act_root_group(g, t, v))).sum()
    }
}

/// Solves `u·x = x` over `U = Π_γ U_γ` (borel roots by height) and `t·x = x` over the torus.
pub fn b_stabilizer_solve(space: &G2Space, x: &[Elt]) -> Result<BStabilizer> {
    if !space.is_borel_vector(x) {
        return Err(Error::NotInBorelPart);
    }
    let d = space.datum();
    let mut roots = space.borel_roots();
    roots.sort_by_key(|&g| (d.height(g), g));
    let fixer = Fixer { space, roots: roots.clone(), target: x.to_vec() };
    let points = fixer.count(0, x);
    let q = space.q() as u64;
    let fixing: Vec<usize> = roots.iter().copied().filter(|&g| space.root_group_fixes(g, x)).collect();
    let dim = exact_log(points, q);

    let support: Vec<Vec<i64>> = (0..12).filter(|&g| x[g] != 0).map(|g| d.root_coords[g].clone()).collect();
    let diag = diagonalize(&support, 2);
    let torus_rank = 2 - diag.rank;
    let f = &space.field;
    let torus_torsion = (0..diag.rank)
        .filter(|&i| diag.d[i].abs() > 1)
        .map(|i| {
            let n = diag.d[i].unsigned_abs() as i64;
            let theta: Vec<Rational64> =
                (0..2).map(|r| reduce(Rational64::new(diag.v[r][i] as i64, n))).collect();
            let value = |t: &Rational64| -> Option<String> {
                let qm1 = (f.q - 1) as i64;
                let e = *t * Rational64::from_integer(qm1);
                e.is_integer().then(|| f.format(f.pow(f.primitive, e.to_integer())))
            };
            TorusTorsion {
                order: n as usize,
                alpha: theta[0].to_string(),
                beta: theta[1].to_string(),
                alpha_value: value(&theta[0]),
                beta_value: value(&theta[1]),
            }
        })
        .collect();
    Ok(BStabilizer {
        unipotent_points: points,
        unipotent_dim: dim,
        fixing_root_groups: fixing.iter().map(|&g| space.line_name(g).replacen('v', "U", 1)).collect(),
        factors_generate: dim == Some(fixing.len() as u32),
        torus_rank,
        torus_torsion,
    })
}

fn reduce(x: Rational64) -> Rational64 {
    x - Rational64::from_integer(x.floor().to_integer())
}

#[cfg(test)]
mod tests {
    use super::super::field::Field;
    use super::*;

    #[test]
    fn zero_is_stabilized_by_all_of_b() {
        let s = G2Space::new(Field::new(3).unwrap());
        let b = b_stabilizer_solve(&s, &s.zero()).unwrap();
        assert_eq!((b.unipotent_dim, b.torus_rank, b.fixing_root_groups.len()), (Some(6), 2, 6));
    }

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log(81, 3), Some(4));
        assert_eq!(exact_log(1, 9), Some(0));
        assert_eq!(exact_log(10, 3), None);
    }
}
