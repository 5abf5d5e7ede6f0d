//! Springer fibers `{gB : g⁻¹x ∈ V^-}` counted over `F_{3^k}` cell by cell.

use serde::Serialize;

use super::field::Elt;
use super::space::G2Space;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CellCount {
    /// Reduced word of `w`.
    pub word: Vec<usize>,
    pub cell_dim: usize,
    pub points: u64,
}

/// Root groups of `U_w = Π_{γ ∈ N_w} U_γ` with `N_w = {γ borel : w⁻¹γ ∉ borel}`, by height.
fn cell_roots(space: &G2Space, w: usize) -> Vec<usize> {
    let d = space.datum();
    let winv = d.weyl.inverse[w];
    let mut roots: Vec<usize> =
        space.borel_roots().into_iter().filter(|&g| !d.is_positive(d.weyl.root_perm[winv][g])).collect();
    roots.sort_by_key(|&g| (d.height(g), g));
    roots
}

struct CellSearch<'a> {
    space: &'a G2Space,
    roots: Vec<usize>,
    /// Positions of `N_w` whose final value is known after the first `i` variables.
    checks: Vec<Vec<usize>>,
}

impl CellSearch<'_> {
    /// Counts `u = x_{γ_m}(t_m)⋯x_{γ_1}(t_1)` in `U_w` with `(u·x)_γ = 0` on `N_w`; the root
    /// groups are applied in increasing height, after which the lower components are final.
    fn count(&self, i: usize, v: &[Elt]) -> u64 {
        if self.checks[i].iter().any(|&g| v[g] != 0) {
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

pub fn fiber_cells(space: &G2Space, x: &[Elt]) -> Result<Vec<CellCount>> {
    if !space.is_borel_vector(x) {
        return Err(Error::NotInBorelPart);
    }
    let d = space.datum();
    Ok((0..d.weyl.order())
        .map(|w| {
            let roots = cell_roots(space, w);
            let checks = (0..=roots.len())
                .map(|i| {
                    let final_height = roots.get(i).map_or(i64::MAX, |&g| d.height(g));
                    roots.iter().copied().filter(|&g| d.height(g) <= final_height).collect()
                })
                .collect();
            let search = CellSearch { space, roots: roots.clone(), checks };
            CellCount { word: d.weyl.elements[w].word.clone(), cell_dim: roots.len(), points: search.count(0, x) }
        })
        .collect())
}

pub fn fiber_point_count(space: &G2Space, x: &[Elt]) -> Result<u64> {
    Ok(fiber_cells(space, x)?.iter().map(|c| c.points).sum())
}

/// Reads a count as a polynomial in `q` with coefficients in `0..9` from its value at `q = 9`,
/// accepted only if it reproduces the value at `q = 3`.
pub fn fit_polynomial(at3: u64, at9: u64) -> Option<Vec<u64>> {
    let mut coeffs = Vec::new();
    let mut n = at9;
    while n > 0 {
        coeffs.push(n % 9);
        n /= 9;
    }
    let value3: u64 = coeffs.iter().rev().fold(0, |acc, c| acc * 3 + c);
    (value3 == at3).then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::super::field::Field;
    use super::*;

    #[test]
    fn zero_fiber_is_the_flag_variety() {
        let s = G2Space::new(Field::new(3).unwrap());
        assert_eq!(fiber_point_count(&s, &s.zero()).unwrap(), 1456);
    }

    #[test]
    fn rejects_non_borel_vectors() {
        let s = G2Space::new(Field::new(3).unwrap());
        assert!(fiber_point_count(&s, &s.basis_vector(6)).is_err());
    }

    #[test]
    fn polynomial_fit() {
        assert_eq!(fit_polynomial(7, 19), Some(vec![1, 2]));
        assert_eq!(fit_polynomial(8, 19), None);
    }
}
