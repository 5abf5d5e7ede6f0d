//! Resolved run configurations and the JSON reports of the command line tool.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::asph::{verify_realization, RealizationReport};
use crate::character::{
    centralizer_roots, finiteness, fixed_support, line_label, reduction_pair, root_label, subsystem_simple_roots,
    CentralCharacter, CharacterJson, FinitenessReport, Verdict,
};
use crate::g2::{
    b_stabilizer_solve, fiber_cells, fit_polynomial, fixed_space_classify, orbit_table, BStabilizer, CellCount,
    Classification, Field, G2Space, OrbitRecord, TABLE_COMPONENT_ORDERS, TABLE_REPS, TABLE_STABILIZER_DIMS,
};
use crate::hecke::HeckeContext;
use crate::laurent::ParameterFunction;
use crate::rational::{fmt_q, parse_q, Q};
use crate::root_data::{RootDatum, RootDatumSpec};
use crate::specialize::{build_specialized, count_simples, SimpleCount};
use crate::{Error, Result};

/// Values given to free generators that have no value on the command line or in the file.
pub const DEFAULT_GENERATOR_VALUES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// Everything a command depends on, after defaults are applied.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    /// Preset name or path of a root datum file.
    pub datum: String,
    /// Parameter name per simple root; `None` gives one parameter per W-orbit of roots.
    pub param_map: Option<Vec<String>>,
    pub set: BTreeMap<String, String>,
    pub character: Option<String>,
    pub fields: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub radius: i64,
    pub rep: Option<String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.into(),
            datum: "G2".into(),
            param_map: None,
            set: BTreeMap::new(),
            character: None,
            fields: vec![],
            trials: 200,
            seed: 0x5eed,
            radius: 3,
            rep: None,
        }
    }

    fn fields_or(&self, default: &[usize]) -> Vec<usize> {
        if self.fields.is_empty() {
            default.to_vec()
        } else {
            self.fields.clone()
        }
    }
}

/// A finished command: the report body and whether everything it checked agreed.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub ok: bool,
    pub result: serde_json::Value,
    #[serde(skip)]
    pub summary: Vec<String>,
}

pub fn load_datum(name: &str) -> Result<RootDatum> {
    match RootDatum::preset(name) {
        Ok(d) => Ok(d),
        Err(e) if !Path::new(name).exists() => Err(e),
        Err(_) => {
            let spec: RootDatumSpec = serde_json::from_str(&std::fs::read_to_string(name)?)?;
            RootDatum::from_spec(&spec)
        }
    }
}

pub fn load_params(datum: &RootDatum, map: Option<&[String]>) -> Result<ParameterFunction> {
    match map {
        None => Ok(ParameterFunction::preset(datum)),
        Some(names) => ParameterFunction::from_simple_names(datum, names),
    }
}

fn load_character(cfg: &RunConfig, datum: &RootDatum, params: &ParameterFunction) -> Result<(CentralCharacter, CharacterJson)> {
    let path = cfg.character.as_ref().ok_or_else(|| Error::InvalidCharacter("no character file given".into()))?;
    let text = std::fs::read_to_string(path)?;
    let j: CharacterJson = serde_json::from_str(&text)?;
    let a = CentralCharacter::from_json_value(&j, datum, params.len())?;
    Ok((a, j))
}

/// Generator values: `--set` first, then the file's `values`, then [`DEFAULT_GENERATOR_VALUES`].
pub fn generator_values(a: &CentralCharacter, file: &CharacterJson, set: &BTreeMap<String, String>) -> Result<Vec<Q>> {
    if let Some(k) = set.keys().find(|k| !a.generators.contains(k)) {
        return Err(Error::InvalidCharacter(format!("'{k}' is not a generator of the character")));
    }
    a.generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let given = set.get(g).or_else(|| file.values.as_ref().and_then(|v| v.get(g)));
            match given {
                Some(s) => parse_q(s),
                None => DEFAULT_GENERATOR_VALUES
                    .get(i)
                    .map(|&p| crate::rational::q(p))
                    .ok_or_else(|| Error::InvalidCharacter(format!("no value for generator '{g}'"))),
            }
        })
        .collect()
}

fn to_value<T: Serialize>(x: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(x)?)
}

// ---------------------------------------------------------------------------------------------
// relations

pub fn relations(cfg: &RunConfig) -> Result<Report> {
    let datum = Arc::new(load_datum(&cfg.datum)?);
    let params = load_params(&datum, cfg.param_map.as_deref())?;
    let ctx = if cfg.set.is_empty() {
        HeckeContext::new(datum.clone(), params)
    } else {
        if let Some(k) = cfg.set.keys().find(|k| params.index_of(k).is_none()) {
            return Err(Error::InvalidParameters(format!("unknown parameter '{k}'")));
        }
        let values = params
            .names
            .iter()
            .map(|n| {
                cfg.set.get(n).map_or_else(|| Err(Error::InvalidParameters(format!("no value for '{n}'"))), |s| parse_q(s))
            })
            .collect::<Result<Vec<_>>>()?;
        HeckeContext::specialized(datum.clone(), params, values)?
    };
    let r: RealizationReport = verify_realization(&ctx, cfg.trials, cfg.radius, cfg.seed);
    let summary = r
        .relations
        .iter()
        .map(|x| format!("{:<24} {:>4} trials  {}", x.relation, x.trials, if x.failures.is_empty() { "ok" } else { "FAILED" }))
        .collect();
    Ok(Report { config: cfg.clone(), ok: r.passed, result: to_value(&r)?, summary })
}

// ---------------------------------------------------------------------------------------------
// count-simples

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub generator_values: BTreeMap<String, String>,
    pub hecke_parameters: BTreeMap<String, String>,
    pub invariants: Vec<String>,
    /// Reduced Gröbner basis of the central quotient in `Q[u, x1, ..]`, degrevlex with `u > x1 > ..`.
    pub groebner_basis: Vec<String>,
    pub dim: usize,
    pub radical_dim: usize,
    pub simple_count: usize,
    pub center_count: usize,
}

fn run_count(datum: Arc<RootDatum>, params: &ParameterFunction, a: &CentralCharacter, values: &[Q]) -> Result<CountReport> {
    let alg = build_specialized(datum.clone(), params.clone(), a, values)?;
    let SimpleCount { dim, radical_dim, simple_count, center_count } = count_simples(&alg)?;
    let point = a.specialize(values)?;
    Ok(CountReport {
        generator_values: a.generators.iter().cloned().zip(values.iter().map(fmt_q)).collect(),
        hecke_parameters: params.names.iter().cloned().zip(point.t.iter().map(fmt_q)).collect(),
        invariants: alg
            .quotient
            .invariants
            .iter()
            .map(|(w, v)| format!("O{:?} = {}", w, fmt_q(v)))
            .collect(),
        groebner_basis: alg.quotient.groebner.iter().map(|p| p.to_string()).collect(),
        dim,
        radical_dim,
        simple_count,
        center_count,
    })
}

pub fn count(cfg: &RunConfig) -> Result<Report> {
    let datum = Arc::new(load_datum(&cfg.datum)?);
    let params = load_params(&datum, cfg.param_map.as_deref())?;
    let (a, file) = load_character(cfg, &datum, &params)?;
    let values = generator_values(&a, &file, &cfg.set)?;
    let r = run_count(datum, &params, &a, &values)?;
    let summary = vec![
        format!("dim {}  radical {}  simple modules {}", r.dim, r.radical_dim, r.simple_count),
        format!("center of the semisimple quotient: {}", r.center_count),
    ];
    Ok(Report { config: cfg.clone(), ok: r.simple_count == r.center_count, result: to_value(&r)?, summary })
}

// ---------------------------------------------------------------------------------------------
// classify

#[derive(Clone, Debug, Serialize)]
pub struct ReductionJson {
    pub roots: Vec<String>,
    pub simple_roots: Vec<String>,
    pub is_full: bool,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stability {
    pub field_size: usize,
    pub classes: Option<usize>,
    pub stable: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub fixed_support: Vec<String>,
    pub centralizer_roots: Vec<String>,
    pub reduction: ReductionJson,
    pub finiteness: FinitenessReport,
    pub classification: Option<Classification>,
    pub stability: Option<Stability>,
    pub simple_count: Option<CountReport>,
    pub class_count: Option<usize>,
    /// Classes and simple modules agree in number; `None` when either side is unavailable.
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub notes: Vec<String>,
}

pub fn classify(cfg: &RunConfig) -> Result<Report> {
    let datum = Arc::new(load_datum(&cfg.datum)?);
    let params = load_params(&datum, cfg.param_map.as_deref())?;
    let (a, file) = load_character(cfg, &datum, &params)?;
    let fields = cfg.fields_or(&[9]);
    let mut notes = Vec::new();

    let red = reduction_pair(&datum, &params, &a);
    let reduction = ReductionJson {
        roots: red.roots.iter().map(|&k| root_label(&datum, k)).collect(),
        simple_roots: subsystem_simple_roots(&datum, &red.roots).iter().map(|&k| root_label(&datum, k)).collect(),
        is_full: red.is_full,
        lines: red.support.iter().map(|l| line_label(&datum, l)).collect(),
    };
    let fin = finiteness(&datum, &params, &a);
    let mut classification = None;
    let mut stability = None;
    if fin.verdict != Verdict::Finite {
        notes.push(format!("verdict {:?}: orbit classification skipped", fin.verdict));
    } else if !datum.is_g2() {
        notes.push("orbit classification is implemented for G2 only".into());
    } else {
        let q = fields[0];
        let space = G2Space::new(Field::new(q)?);
        let c = fixed_space_classify(&space, &a)?;
        let next = q * 3;
        stability = Some(match Field::new(next) {
            Err(_) => Stability { field_size: next, classes: None, stable: None, note: Some("field too large".into()) },
            Ok(f) => match fixed_space_classify(&G2Space::with_chevalley(f, space.chevalley.clone()), &a) {
                Ok(c2) => Stability {
                    field_size: next,
                    classes: Some(c2.classes.len()),
                    stable: Some(c2.classes.len() == c.classes.len()),
                    note: None,
                },
                Err(Error::EnumerationBound(d)) => Stability {
                    field_size: next,
                    classes: None,
                    stable: None,
                    note: Some(format!("{d}-dimensional fixed space not enumerated over F_{next}")),
                },
                Err(e) => return Err(e),
            },
        });
        classification = Some(c);
    }

    let simple_count = if a.is_positive_real() {
        let values = generator_values(&a, &file, &cfg.set)?;
        Some(run_count(datum.clone(), &params, &a, &values)?)
    } else {
        notes.push("character has torsion: no rational specialization, simple modules not counted".into());
        None
    };
    let class_count = classification.as_ref().map(|c| c.classes.len());
    let matches = match (class_count, &simple_count) {
        (Some(c), Some(s)) => Some(c == s.simple_count),
        _ => None,
    };
    let r = ClassifyReport {
        fixed_support: fixed_support(&datum, &params, &a).iter().map(|l| line_label(&datum, l)).collect(),
        centralizer_roots: centralizer_roots(&datum, &a).iter().map(|&k| root_label(&datum, k)).collect(),
        reduction,
        finiteness: fin,
        classification,
        stability,
        simple_count,
        class_count,
        matches,
        notes,
    };
    let mut summary = vec![
        format!("fixed support: {}", r.fixed_support.join(", ")),
        format!("centralizer roots: {}", r.centralizer_roots.join(", ")),
        format!("verdict: {:?}", r.finiteness.verdict),
    ];
    if let Some(c) = &r.classification {
        summary.push(format!("{} signature classes over F_{}:", c.classes.len(), c.field_size));
        for cl in &c.classes {
            summary.push(format!(
                "  {:<16} stab {:>2}  fiber {:>8}  points {}",
                cl.representative.name, cl.signature.stabilizer_dim, cl.signature.fiber_points, cl.points
            ));
        }
    }
    if let Some(s) = &r.simple_count {
        summary.push(format!("simple modules: {}", s.simple_count));
    }
    if let Some(m) = r.matches {
        summary.push(format!("match: {m}"));
    }
    summary.extend(r.notes.iter().cloned());
    let ok = r.matches != Some(false) && r.stability.as_ref().and_then(|s| s.stable) != Some(false);
    Ok(Report { config: cfg.clone(), ok, result: to_value(&r)?, summary })
}

// ---------------------------------------------------------------------------------------------
// orbits, fibers, tables

fn require_g2(cfg: &RunConfig) -> Result<()> {
    let d = load_datum(&cfg.datum)?;
    if d.is_g2() {
        Ok(())
    } else {
        Err(Error::InvalidDatum(format!("'{}' is not G2; this command needs G2", cfg.datum)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub record: OrbitRecord,
    pub expected_stabilizer_dim: usize,
    pub expected_component_group_order: usize,
    pub b_stabilizer: BStabilizer,
}

fn orbit_entries(space: &G2Space) -> Result<Vec<OrbitEntry>> {
    orbit_table(space)?
        .into_iter()
        .zip(TABLE_REPS)
        .enumerate()
        .map(|(i, (record, name))| {
            Ok(OrbitEntry {
                record,
                expected_stabilizer_dim: TABLE_STABILIZER_DIMS[i],
                expected_component_group_order: TABLE_COMPONENT_ORDERS[i],
                b_stabilizer: b_stabilizer_solve(space, &space.parse_vector(name)?)?,
            })
        })
        .collect()
}

fn entries_agree(e: &[OrbitEntry]) -> bool {
    e.iter().all(|x| {
        x.record.stabilizer_dim == x.expected_stabilizer_dim
            && x.record.component_group_order == x.expected_component_group_order
    })
}

fn orbit_lines(e: &[OrbitEntry]) -> Vec<String> {
    e.iter()
        .map(|x| {
            format!(
                "{:<10} dim G_x {:>2} (table {:>2})  Lie {:>2}  A(x) {} (table {})",
                x.record.representative.name,
                x.record.stabilizer_dim,
                x.expected_stabilizer_dim,
                x.record.lie_stabilizer_dim,
                x.record.component_group_order,
                x.expected_component_group_order
            )
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitsReport {
    pub field_size: usize,
    pub orbits: Vec<OrbitEntry>,
}

pub fn orbits(cfg: &RunConfig) -> Result<Report> {
    require_g2(cfg)?;
    let q = cfg.fields_or(&[9])[0];
    let space = G2Space::new(Field::new(q)?);
    let orbits = orbit_entries(&space)?;
    let ok = entries_agree(&orbits);
    let summary = orbit_lines(&orbits);
    Ok(Report { config: cfg.clone(), ok, result: to_value(&OrbitsReport { field_size: q, orbits })?, summary })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberCount {
    pub field_size: usize,
    pub points: u64,
    pub cells: Vec<CellCount>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub representative: String,
    pub counts: Vec<FiberCount>,
    /// Coefficients in `q`, constant term first, when counts over `F_3` and `F_9` fit one.
    pub polynomial: Option<Vec<u64>>,
}

fn fiber_report(chevalley: &Arc<crate::g2::chevalley::Chevalley>, rep: &str, fields: &[usize]) -> Result<FiberReport> {
    let mut counts = Vec::new();
    for &q in fields {
        let space = G2Space::with_chevalley(Field::new(q)?, chevalley.clone());
        let x = space.parse_vector(rep)?;
        let cells = fiber_cells(&space, &x)?;
        counts.push(FiberCount { field_size: q, points: cells.iter().map(|c| c.points).sum(), cells });
    }
    let at = |q: usize| counts.iter().find(|c| c.field_size == q).map(|c| c.points);
    let polynomial = match (at(3), at(9)) {
        (Some(a), Some(b)) => fit_polynomial(a, b),
        _ => None,
    };
    Ok(FiberReport { representative: rep.into(), counts, polynomial })
}

fn fiber_line(f: &FiberReport) -> String {
    let counts: Vec<String> = f.counts.iter().map(|c| format!("F_{}: {}", c.field_size, c.points)).collect();
    let poly = match &f.polynomial {
        Some(c) => format!("{c:?}"),
        None => "none".into(),
    };
    format!("{:<10} {}  polynomial {poly}", f.representative, counts.join("  "))
}

pub fn fibers(cfg: &RunConfig) -> Result<Report> {
    require_g2(cfg)?;
    let rep = cfg.rep.clone().ok_or_else(|| Error::Parse("--rep is required".into()))?;
    let fields = cfg.fields_or(&[3, 9]);
    let chevalley = Arc::new(crate::g2::chevalley::Chevalley::new());
    let f = fiber_report(&chevalley, &rep, &fields)?;
    let ok = f.polynomial.is_some() || !(fields.contains(&3) && fields.contains(&9));
    let summary = vec![fiber_line(&f)];
    Ok(Report { config: cfg.clone(), ok, result: to_value(&f)?, summary })
}

#[derive(Clone, Debug, Serialize)]
pub struct TablesReport {
    pub field_size: usize,
    pub orbits: Vec<OrbitEntry>,
    pub fibers: Vec<FiberReport>,
}

pub fn tables(cfg: &RunConfig) -> Result<Report> {
    require_g2(cfg)?;
    let fields = cfg.fields_or(&[3, 9]);
    let q = *fields.iter().max().unwrap();
    let space = G2Space::new(Field::new(q)?);
    let orbits = orbit_entries(&space)?;
    let fibers = TABLE_REPS
        .iter()
        .map(|rep| fiber_report(&space.chevalley, rep, &fields))
        .collect::<Result<Vec<_>>>()?;
    let fits = !(fields.contains(&3) && fields.contains(&9)) || fibers.iter().all(|f| f.polynomial.is_some());
    let ok = entries_agree(&orbits) && fits;
    let mut summary = orbit_lines(&orbits);
    summary.extend(fibers.iter().map(fiber_line));
    Ok(Report { config: cfg.clone(), ok, result: to_value(&TablesReport { field_size: q, orbits, fibers })?, summary })
}

/// Runs the command named in the configuration.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    match cfg.command.as_str() {
        "relations" => relations(cfg),
        "classify" => classify(cfg),
        "count-simples" => count(cfg),
        "orbits" => orbits(cfg),
        "fibers" => fibers(cfg),
        "tables" => tables(cfg),
        other => Err(Error::Parse(format!("unknown command '{other}'"))),
    }
}
