#![allow(dead_code)]

use std::sync::Arc;

use exotic_hecke::character::CentralCharacter;
use exotic_hecke::hecke::{HeckeContext, HeckeElement};
use exotic_hecke::laurent::{Laurent, Monomial, ParameterFunction};
use exotic_hecke::rational::q;
use exotic_hecke::root_data::RootDatum;
use rand::Rng;

pub fn datum(name: &str) -> Arc<RootDatum> {
    Arc::new(RootDatum::preset(name).unwrap())
}

pub fn g2() -> Arc<RootDatum> {
    datum("G2")
}

pub fn character(file: &str) -> CentralCharacter {
    let text = std::fs::read_to_string(format!("{}/data/{file}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    CentralCharacter::from_json(&text, &g2(), 2).unwrap()
}

pub fn formal_context(name: &str) -> Arc<HeckeContext> {
    let d = datum(name);
    let p = ParameterFunction::preset(&d);
    HeckeContext::new(d, p)
}

pub fn random_laurent(rng: &mut impl Rng, rank: usize, nparams: usize, terms: usize, radius: i64) -> Laurent {
    let mut f = Laurent::zero(rank, nparams);
    for _ in 0..terms {
        let weight = (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect();
        let qexp = (0..nparams).map(|_| rng.gen_range(-1..=1)).collect();
        f.add_term(Monomial { qexp, weight }, q(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    f
}

pub fn random_hecke(rng: &mut impl Rng, ctx: &Arc<HeckeContext>, terms: usize) -> HeckeElement {
    let mut x = HeckeElement::zero(ctx);
    let order = ctx.datum.weyl.order();
    for _ in 0..terms {
        let w = rng.gen_range(0..order);
        let f = random_laurent(rng, ctx.rank(), ctx.nparams(), 1, 2);
        x = x.add(&HeckeElement::basis(ctx, w, f)).unwrap();
    }
    x
}

/// Number of conjugacy classes of the Weyl group, from its multiplication table.
pub fn weyl_class_count(d: &RootDatum) -> usize {
    let w = &d.weyl;
    let n = w.order();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        classes += 1;
        for g in 0..n {
            seen[w.mult[w.mult[g][x]][w.inverse[g]]] = true;
        }
    }
    classes
}
