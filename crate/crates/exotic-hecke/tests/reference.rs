//! Published values and independently derived checks for the G2 data.

mod common;

use common::*;
use exotic_hecke::character::{finiteness, fixed_support, reduction_pair, Verdict};
use exotic_hecke::g2::{
    b_stabilizer_solve, fiber_cells, fiber_point_count, fit_polynomial, orbit_table, Field, G2Space,
    TABLE_COMPONENT_ORDERS, TABLE_REPS, TABLE_STABILIZER_DIMS,
};
use exotic_hecke::laurent::ParameterFunction;
use exotic_hecke::root_data::RootDatum;

fn spaces() -> (G2Space, G2Space) {
    let s3 = G2Space::new(Field::new(3).unwrap());
    let s9 = G2Space::with_chevalley(Field::new(9).unwrap(), s3.chevalley.clone());
    (s3, s9)
}

#[test]
fn weyl_group_of_g2() {
    let d = g2();
    assert_eq!(d.weyl.order(), 12);
    assert_eq!(d.num_roots(), 12);
    assert_eq!(d.weyl.poincare_polynomial(), vec![1, 2, 2, 2, 2, 2, 1]);
    assert_eq!(weyl_class_count(&d), 6);
    assert_eq!(weyl_class_count(&RootDatum::preset("A2").unwrap()), 3);
}

#[test]
fn full_flag_variety_matches_poincare_polynomial() {
    let (s3, s9) = spaces();
    let poincare = g2().weyl.poincare_polynomial();
    for s in [&s3, &s9] {
        let expected: u64 = poincare.iter().enumerate().map(|(k, &c)| c * (s.q() as u64).pow(k as u32)).sum();
        assert_eq!(fiber_point_count(s, &s.zero()).unwrap(), expected);
    }
    assert_eq!(fiber_point_count(&s3, &s3.zero()).unwrap(), 1456);
    assert_eq!(fiber_point_count(&s9, &s9.zero()).unwrap(), 664_300);
}

#[test]
fn subregular_fiber_has_seven_points() {
    let (s3, s9) = spaces();
    let x3 = s3.parse_vector("v2ab+vb").unwrap();
    let cells = fiber_cells(&s3, &x3).unwrap();
    let nonempty: Vec<(usize, u64)> = cells.iter().filter(|c| c.points > 0).map(|c| (c.cell_dim, c.points)).collect();
    assert_eq!(nonempty, vec![(0, 1), (1, 3), (2, 3)]);
    let n9 = fiber_point_count(&s9, &s9.parse_vector("v2ab+vb").unwrap()).unwrap();
    assert_eq!(fit_polynomial(7, n9), Some(vec![1, 2]));
}

#[test]
fn regular_fiber_is_a_point() {
    let (s3, s9) = spaces();
    for s in [&s3, &s9] {
        assert_eq!(fiber_point_count(s, &s.parse_vector("va+vb").unwrap()).unwrap(), 1);
    }
}

#[test]
fn fiber_counts_are_polynomial() {
    let (s3, s9) = spaces();
    for r in TABLE_REPS {
        let (a, b) = (
            fiber_point_count(&s3, &s3.parse_vector(r).unwrap()).unwrap(),
            fiber_point_count(&s9, &s9.parse_vector(r).unwrap()).unwrap(),
        );
        let c = fit_polynomial(a, b).unwrap_or_else(|| panic!("{r}: {a}, {b}"));
        assert_eq!(c[0], 1, "{r}");
    }
}

#[test]
fn orbit_table_over_both_fields() {
    let (s3, s9) = spaces();
    for s in [&s3, &s9] {
        let t = orbit_table(s).unwrap();
        let dims: Vec<usize> = t.iter().map(|r| r.stabilizer_dim).collect();
        let comps: Vec<usize> = t.iter().map(|r| r.component_group_order).collect();
        assert_eq!(dims, TABLE_STABILIZER_DIMS);
        assert_eq!(comps, TABLE_COMPONENT_ORDERS);
    }
}

#[test]
fn lie_stabilizers_exceed_group_stabilizers() {
    let (s3, _) = spaces();
    let lie: Vec<usize> = orbit_table(&s3).unwrap().iter().map(|r| r.lie_stabilizer_dim).collect();
    assert_eq!(lie, vec![14, 8, 10, 6, 5, 4]);
}

#[test]
fn borel_stabilizers() {
    let (_, s9) = spaces();
    let stab = |r: &str| b_stabilizer_solve(&s9, &s9.parse_vector(r).unwrap()).unwrap();
    let zero = stab("0");
    assert_eq!((zero.unipotent_dim, zero.torus_rank), (Some(6), 2));
    let reg = stab("va+vb");
    assert_eq!((reg.unipotent_dim, reg.torus_rank), (Some(2), 0));
    let sub = stab("v2ab+vb");
    assert_eq!((sub.unipotent_dim, sub.torus_rank), (Some(4), 0));
    assert!(sub.torus_torsion.iter().any(|t| t.order == 2));
}

#[test]
fn chevalley_basis() {
    let (_, s9) = spaces();
    assert!(s9.chevalley.jacobi_holds());
    let f = &s9.field;
    let va = s9.parse_vector("va").unwrap();
    let vb = s9.parse_vector("vb").unwrap();
    let (ia, ib, iab, i3ab) = (0, 1, 2, 4);
    for t in f.units() {
        // x_β(t) v_α = v_α ± t v_{α+β}
        let w = s9.act_root_group(ib, t, &va);
        assert_eq!(w[ia], 1);
        assert!(w[iab] == t || w[iab] == f.neg(t));
        // x_α(t) v_β = v_β ± t³ v_{3α+β}: the linear and quadratic terms vanish mod 3
        let w = s9.act_root_group(ia, t, &vb);
        let cube = f.pow(t, 3);
        assert!(w[i3ab] == cube || w[i3ab] == f.neg(cube));
        assert_eq!(w.iter().filter(|&&c| c != 0).count(), 2);
    }
    assert!(s9.root_group_fixes(ia, &va));
}

#[test]
fn example_supports_and_finiteness() {
    let d = g2();
    let p = ParameterFunction::preset(&d);
    let e1 = character("example1");
    let r1 = finiteness(&d, &p, &e1);
    assert!(r1.t_torsion_free);
    assert_eq!(r1.verdict, Verdict::Finite);
    assert_eq!(fixed_support(&d, &p, &e1).len(), 4);
    let red = reduction_pair(&d, &p, &e1);
    assert!(red.is_full && red.roots.len() == 12);
    let e2 = character("example2");
    assert_eq!(finiteness(&d, &p, &e2).verdict, Verdict::Infinite);
    let triv = finiteness(&d, &p, &character("trivial"));
    assert_eq!((triv.verdict, triv.centralizer_dim, triv.fixed_nilpotent_dim), (Verdict::Finite, 14, 6));
    let generic = finiteness(&d, &p, &character("generic"));
    assert_eq!((generic.verdict, generic.fixed_root_lines), (Verdict::Finite, 2));
}

#[test]
fn stabilizers_agree_with_fiber_dimensions() {
    // dim G_x = rank + 2 dim B_x, with dim B_x the degree of the fiber count polynomial
    let (s3, s9) = spaces();
    for r in TABLE_REPS {
        let (x3, x9) = (s3.parse_vector(r).unwrap(), s9.parse_vector(r).unwrap());
        let poly = fit_polynomial(fiber_point_count(&s3, &x3).unwrap(), fiber_point_count(&s9, &x9).unwrap()).unwrap();
        assert_eq!(s9.stabilizer_dim(&x9), 2 + 2 * (poly.len() - 1), "{r}");
    }
}
