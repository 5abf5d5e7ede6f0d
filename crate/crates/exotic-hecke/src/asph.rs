//! The antispherical module `M = H ⊗_{H_f} sgn`, realized on `A[X*]` via `e^λ ⊗ 1 ↦ e^λ`.
//!
//! `act_t` comes from the Bernstein relation (`T_s e^μ = e^{sμ} T_s − (q−1)Δ(e^{sμ})` and
//! `T_s ↦ −1`); `act_k` is the convolution operator `(1 − q e^α) D'_α`. The identity
//! `act_k = −(act_t + q e^α)` ties the two together.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hecke::{HeckeContext, HeckeElement};
use crate::laurent::{bernstein_quotient, demazure, divide_one_minus_neg, Laurent, Monomial};
use crate::rational::{q, Q};

pub struct AsphModel {
    pub ctx: Arc<HeckeContext>,
}

impl AsphModel {
    pub fn new(ctx: Arc<HeckeContext>) -> Self {
        AsphModel { ctx }
    }

    fn q_e_alpha(&self, i: usize) -> Laurent {
        self.ctx.q_simple(i).shift(self.ctx.datum.simple_root(i))
    }

    pub fn act_theta(&self, lambda: &[i64], m: &Laurent) -> Laurent {
        m.shift(lambda)
    }

    pub fn act_t(&self, i: usize, m: &Laurent) -> Laurent {
        let d = &self.ctx.datum;
        let sm = m.map_weights(|x| d.simple_reflect(i, x));
        let qm1 = self.ctx.q_simple(i).sub(&self.ctx.laurent_one());
        sm.neg().sub(&qm1.mul(&bernstein_quotient(d, i, &sm)))
    }

    /// `D'_α(e^λ) = (e^λ − e^{s_α(λ)−α})/(1−e^{−α})` computed by exact long division.
    pub fn demazure_shifted(&self, i: usize, m: &Laurent) -> Laurent {
        let d = &self.ctx.datum;
        let alpha = d.simple_root(i);
        let mut out = self.ctx.laurent_zero();
        for (mono, c) in m.terms() {
            let s = d.simple_reflect(i, &mono.weight);
            let target: Vec<i64> = s.iter().zip(alpha).map(|(x, a)| x - a).collect();
            let mut num = Laurent::zero(m.rank(), m.nparams());
            num.add_term(mono.clone(), c.clone());
            num.add_term(Monomial { qexp: mono.qexp.clone(), weight: target }, -c.clone());
            let quot = divide_one_minus_neg(&num, alpha, d.simple_coroot(i))
                .unwrap_or_else(|| panic!("non-exact Demazure division at weight {:?}", mono.weight));
            out.add_assign_ref(&quot);
        }
        out
    }

    pub fn act_k(&self, i: usize, m: &Laurent) -> Laurent {
        let one_minus = self.ctx.laurent_one().sub(&self.q_e_alpha(i));
        one_minus.mul(&self.demazure_shifted(i, m))
    }

    /// `−q e^α m − (1 − q e^α) D_α(m)`, the explicit formula with the closed-form Demazure operator.
    pub fn act_t_explicit(&self, i: usize, m: &Laurent) -> Laurent {
        let qa = self.q_e_alpha(i);
        let one_minus = self.ctx.laurent_one().sub(&qa);
        qa.mul(m).neg().sub(&one_minus.mul(&demazure(&self.ctx.datum, i, m)))
    }

    /// Action of `T_{i1} ⋯ T_{ik}` (rightmost factor first).
    pub fn act_word(&self, word: &[usize], m: &Laurent) -> Laurent {
        word.iter().rev().fold(m.clone(), |acc, &i| self.act_t(i, &acc))
    }

    /// Action of a Hecke element `Σ_w T_w f_w`.
    pub fn action(&self, h: &HeckeElement, m: &Laurent) -> Laurent {
        let weyl = &self.ctx.datum.weyl;
        let mut out = self.ctx.laurent_zero();
        for (w, f) in h.coords() {
            out.add_assign_ref(&self.act_word(&weyl.elements[*w].word, &f.mul(m)));
        }
        out
    }
}

/// Order of `s_i s_j` from the Cartan matrix.
pub fn braid_order(a: &[Vec<i64>], i: usize, j: usize) -> usize {
    match a[i][j] * a[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => unreachable!("finite type checked at load time"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResult {
    pub relation: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub datum: String,
    pub seed: u64,
    pub box_radius: i64,
    pub exhaustive: bool,
    pub relations: Vec<RelationResult>,
    pub passed: bool,
}

fn random_element(rng: &mut ChaCha8Rng, rank: usize, nparams: usize, radius: i64, formal: bool) -> Laurent {
    let mut f = Laurent::zero(rank, nparams);
    let n = rng.gen_range(1..=4);
    for _ in 0..n {
        let weight = (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect();
        let qexp = (0..nparams).map(|_| if formal { rng.gen_range(-1..=1) } else { 0 }).collect();
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        f.add_term(Monomial { qexp, weight }, q(c));
    }
    f
}

struct Checker {
    results: Vec<RelationResult>,
}

impl Checker {
    fn record(&mut self, name: &str, input: &Laurent, lhs: Laurent, rhs: Laurent) {
        let entry = match self.results.iter_mut().find(|r| r.relation == name) {
            Some(e) => e,
            None => {
                self.results.push(RelationResult { relation: name.to_string(), trials: 0, failures: vec![] });
                self.results.last_mut().unwrap()
            }
        };
        entry.trials += 1;
        if lhs != rhs {
            entry.failures.push(Failure { input: input.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }
}

fn check_all(model: &AsphModel, inputs: &[(Laurent, Vec<i64>, Vec<i64>)], checker: &mut Checker) {
    let d = &model.ctx.datum;
    let r = d.num_simple();
    let one = model.ctx.laurent_one();
    for (m, lam, mu) in inputs {
        for i in 0..r {
            let qv = model.ctx.q_simple(i);
            let qm1 = qv.sub(&one);
            let t = model.act_t(i, m);
            let tt = model.act_t(i, &t);
            checker.record(&format!("quadratic[{i}]"), m, tt, qm1.mul(&t).add(&qv.mul(m)));

            let slam = d.simple_reflect(i, lam);
            let lhs = model.act_theta(lam, &t).sub(&model.act_t(i, &model.act_theta(&slam, m)));
            let coeff = qm1.mul(&bernstein_quotient(d, i, &Laurent::e(lam, m.nparams())));
            checker.record(&format!("bernstein[{i}]"), m, lhs, coeff.mul(m));

            let k = model.act_k(i, m);
            let qa = qv.shift(d.simple_root(i));
            checker.record(&format!("geometric_generator[{i}]"), m, k, t.add(&qa.mul(m)).neg());

            checker.record(&format!("explicit_formula[{i}]"), m, t.clone(), model.act_t_explicit(i, m));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                let n = braid_order(&d.cartan, i, j);
                let w1: Vec<usize> = (0..n).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let w2: Vec<usize> = (0..n).map(|k| if k % 2 == 0 { j } else { i }).collect();
                checker.record(&format!("braid[{i},{j}]"), m, model.act_word(&w1, m), model.act_word(&w2, m));
            }
        }
        let sum: Vec<i64> = lam.iter().zip(mu).map(|(a, b)| a + b).collect();
        checker.record(
            "theta_composition",
            m,
            model.act_theta(lam, &model.act_theta(mu, m)),
            model.act_theta(&sum, m),
        );
    }
}

/// Samples `trials` random inputs with weights in `[−radius, radius]^r` and checks every relation.
pub fn verify_realization(ctx: &Arc<HeckeContext>, trials: usize, radius: i64, seed: u64) -> RealizationReport {
    let model = AsphModel::new(ctx.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rank, np) = (ctx.rank(), ctx.nparams());
    let formal = ctx.values.is_none();
    let inputs: Vec<(Laurent, Vec<i64>, Vec<i64>)> = (0..trials)
        .map(|_| {
            let m = random_element(&mut rng, rank, np, radius, formal);
            let lam = (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect();
            let mu = (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect();
            (m, lam, mu)
        })
        .collect();
    let mut checker = Checker { results: vec![] };
    check_all(&model, &inputs, &mut checker);
    finish(ctx, seed, radius, false, checker)
}

/// Checks every relation on each monomial `e^λ` of the box (operators are A-linear).
pub fn verify_realization_exhaustive(ctx: &Arc<HeckeContext>, radius: i64) -> RealizationReport {
    let model = AsphModel::new(ctx.clone());
    let (rank, np) = (ctx.rank(), ctx.nparams());
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        points = points
            .into_iter()
            .flat_map(|p| (-radius..=radius).map(move |x| {
                let mut p = p.clone();
                p.push(x);
                p
            }))
            .collect();
    }
    let small: Vec<Vec<i64>> = points.iter().filter(|p| p.iter().all(|x| x.abs() <= 2)).cloned().collect();
    let mut inputs = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let lam = small[k % small.len()].clone();
        let mu = small[(k * 7 + 3) % small.len()].clone();
        inputs.push((Laurent::e(p, np), lam, mu));
    }
    let mut checker = Checker { results: vec![] };
    check_all(&model, &inputs, &mut checker);
    finish(ctx, 0, radius, true, checker)
}

fn finish(ctx: &Arc<HeckeContext>, seed: u64, radius: i64, exhaustive: bool, checker: Checker) -> RealizationReport {
    let passed = checker.results.iter().all(|r| r.failures.is_empty());
    RealizationReport {
        datum: ctx.datum.name.clone(),
        seed,
        box_radius: radius,
        exhaustive,
        relations: checker.results,
        passed,
    }
}

/// Coefficient of `e^0` as a plain rational, for tests.
pub fn constant_term(f: &Laurent) -> Q {
    f.coeff(&Monomial { qexp: vec![0; f.nparams()], weight: vec![0; f.rank()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ParameterFunction;
    use crate::root_data::RootDatum;

    fn model(name: &str) -> AsphModel {
        let d = Arc::new(RootDatum::preset(name).unwrap());
        let p = ParameterFunction::preset(&d);
        AsphModel::new(HeckeContext::new(d, p))
    }

    #[test]
    fn sign_on_one() {
        let m = model("G2");
        let one = m.ctx.laurent_one();
        for i in 0..2 {
            assert_eq!(m.act_t(i, &one), one.neg());
        }
    }

    #[test]
    fn act_k_on_one() {
        let m = model("G2");
        let one = m.ctx.laurent_one();
        let expect = one.sub(&m.ctx.q_simple(0).shift(&[1, 0]));
        assert_eq!(m.act_k(0, &one), expect);
    }

    #[test]
    fn long_root_geometric_generator() {
        let m = model("G2");
        let eb = Laurent::e(&[0, 1], 2);
        let q2 = Laurent::param(2, 2, 1);
        let expect = m.ctx.laurent_one().sub(&q2.shift(&[0, 1])).mul(&demazure(&m.ctx.datum, 1, &eb));
        assert_eq!(m.act_k(1, &eb), expect);
    }

    #[test]
    fn theta_examples() {
        let m = model("G2");
        let eb = Laurent::e(&[0, 1], 2);
        assert_eq!(m.act_theta(&[0, 0], &eb), eb);
        assert_eq!(m.act_theta(&[1, 0], &eb), Laurent::e(&[1, 1], 2));
    }

    #[test]
    fn small_reports_pass() {
        for name in ["A1", "A2", "G2"] {
            let m = model(name);
            let rep = verify_realization(&m.ctx, 10, 4, 7);
            assert!(rep.passed, "{name}: {:?}", rep.relations.iter().filter(|r| !r.failures.is_empty()).collect::<Vec<_>>());
        }
    }
}
