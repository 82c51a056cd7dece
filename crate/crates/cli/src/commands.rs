use std::collections::BTreeSet;

use binedge_core::algebra::{binomial_edge_ideal, MonomialIdeal, VarNames};
use binedge_core::families::{enumerate_recipes, is_net_free_generalized_caterpillar, recognize, Family, GraphRecipe};
use binedge_core::fsplit::{verify_sfr_conditions, verify_symbolic_fsplit, FSplitCertificate, FsplitError, SfrCertificate};
use binedge_core::graph::Graph;
use binedge_core::groebner::{buchberger, enumerate_admissible_paths, groebner_basis_edge, initial_ideal, Budget, GroebnerError};
use binedge_core::primes::{minimal_primes, minimal_primes_exhaustive, PrimesError};
use binedge_core::symbolic::{
    check_pendant_power_equality, facet_complex, find_special_odd_cycle, powers_equal_named, CycleReport, SymbolicError,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{family_recipe, ideal_of, labeled_graph_of, recipe_of};
use crate::report::{CliError, RunReport};

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExhausted(m) => CliError::Budget(m),
            other => CliError::invalid(other),
        }
    }
}

impl From<FsplitError> for CliError {
    fn from(e: FsplitError) -> Self {
        match e {
            FsplitError::BoundExceeded(_) => CliError::Budget(e.to_string()),
            FsplitError::Groebner(g) => g.into(),
            other => CliError::invalid(other),
        }
    }
}

impl From<PrimesError> for CliError {
    fn from(e: PrimesError) -> Self {
        CliError::invalid(e)
    }
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        CliError::invalid(e)
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Recipes of a family with at most `max_n` vertices, one per isomorphism
/// class of the built graph as seen by the recognizer.
pub fn sweep_recipes(family: Family, max_n: usize) -> Vec<GraphRecipe> {
    let all = enumerate_recipes(family, max_n, max_n, max_n);
    let keys: Vec<String> = all
        .par_iter()
        .map(|r| {
            let g = r.build().expect("enumerated recipes build").graph;
            recognize(&g, family).map(|rec| rec.recipe.canonical().to_json()).unwrap_or_else(|| r.to_json())
        })
        .collect();
    let mut seen = BTreeSet::new();
    all.into_iter().zip(keys).filter(|(_, k)| seen.insert(k.clone())).map(|(r, _)| r).collect()
}

pub fn gbasis(report: &mut RunReport, doc: &Value, oracle_bound: usize) -> Result<(), CliError> {
    let g = labeled_graph_of(doc)?;
    let n = g.n();
    let names = VarNames::binomial(n);
    let basis = groebner_basis_edge(&g);
    let rendered = basis.render(&names);
    report.result = json!({
        "paths": enumerate_admissible_paths(&g),
        "basis": rendered,
        "initial": initial_ideal(&g).generators().iter().map(|m| names.render_monomial(m)).collect::<Vec<_>>(),
    });
    if n <= oracle_bound {
        let bb = buchberger(&binomial_edge_ideal(&g), Budget::default())?.render(&names);
        let ours: BTreeSet<&String> = rendered.iter().collect();
        let theirs: BTreeSet<&String> = bb.iter().collect();
        let agree = ours == theirs;
        report.verdict("admissible-path basis equals Buchberger basis", agree);
        if !agree {
            report.witness(json!({
                "only_admissible": ours.difference(&theirs).collect::<Vec<_>>(),
                "only_buchberger": theirs.difference(&ours).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(())
}

pub fn initial(report: &mut RunReport, doc: &Value) -> Result<(), CliError> {
    let g = labeled_graph_of(doc)?;
    let names = VarNames::binomial(g.n());
    let init = initial_ideal(&g);
    let squarefree = init.is_squarefree();
    report.result = json!({
        "initial": init.generators().iter().map(|m| names.render_monomial(m)).collect::<Vec<_>>(),
        "squarefree": squarefree,
    });
    report.verdict("initial ideal is squarefree", squarefree);
    if !squarefree {
        let bad: Vec<String> = init.generators().iter().filter(|m| !m.is_squarefree()).map(|m| names.render_monomial(m)).collect();
        report.witness(bad);
    }
    Ok(())
}

pub fn primes(report: &mut RunReport, doc: &Value, oracle_bound: usize) -> Result<(), CliError> {
    let g = labeled_graph_of(doc)?;
    let found = minimal_primes(&g)?;
    report.result = json!({ "n": g.n(), "minimal_primes": found });
    for p in &found {
        let expected = p.u.len() + g.n() - g.component_count(p.u);
        if p.height != expected {
            report.witness(json!({ "U": p.u, "height": p.height, "expected": expected }));
        }
    }
    report.verdict("heights equal |U| + n - c(U)", report.witnesses.is_empty());
    if g.n() <= oracle_bound {
        let agree = minimal_primes_exhaustive(&g)? == found;
        report.verdict("agrees with exhaustive subset enumeration", agree);
    }
    Ok(())
}

fn socp_ideal(report: &mut RunReport, ideal: &MonomialIdeal, names: &VarNames) -> Result<(), CliError> {
    if !ideal.is_squarefree() {
        report.verdict("ideal is squarefree", false);
        report.witness(ideal.generators().iter().filter(|m| !m.is_squarefree()).map(|m| names.render_monomial(m)).collect::<Vec<_>>());
        report.result = json!({ "ideal": ideal.render(names) });
        return Ok(());
    }
    let delta = facet_complex(ideal)?;
    let cycle = find_special_odd_cycle(&delta).map(|c| CycleReport::new(&c, &delta, names));
    report.result = json!({ "ideal": ideal.render(names), "facets": delta.render(names), "special_odd_cycle": cycle });
    report.verdict("no special odd cycle", cycle.is_none());
    if let Some(c) = cycle {
        report.witness(c);
    }
    Ok(())
}

pub fn socp(report: &mut RunReport, doc: &Value, is_ideal: bool) -> Result<(), CliError> {
    if is_ideal {
        let (ideal, names) = ideal_of(doc)?;
        return socp_ideal(report, &ideal, &names);
    }
    let g = labeled_graph_of(doc)?;
    socp_ideal(report, &initial_ideal(&g), &VarNames::binomial(g.n()))
}

pub fn powers(report: &mut RunReport, doc: &Value, is_ideal: bool, t_max: u32) -> Result<(), CliError> {
    if t_max == 0 {
        return Err(CliError::Invalid("--tmax must be at least 1".into()));
    }
    let (ideal, names) = if is_ideal {
        ideal_of(doc)?
    } else if doc.get("recipe").is_some() || doc.get("path_len").is_some() {
        let recipe = recipe_of(doc)?;
        if recipe.is_in(Family::PendantCliques) {
            let rep = check_pendant_power_equality(&recipe, t_max)?;
            report.verdict("initial ideal is squarefree", rep.squarefree);
            report.verdict("no special odd cycle", rep.special_odd_cycle.is_none());
            report.verdict(format!("symbolic powers equal ordinary powers for t <= {t_max}"), rep.power_equality.ok);
            if let Some(c) = &rep.special_odd_cycle {
                report.witness(c);
            }
            if !rep.power_equality.ok {
                report.witness(&rep.power_equality);
            }
            report.result = json(&rep);
            return Ok(());
        }
        let g = recipe.build().map_err(CliError::invalid)?.labeled_graph();
        (initial_ideal(&g), VarNames::binomial(g.n()))
    } else {
        let g = labeled_graph_of(doc)?;
        (initial_ideal(&g), VarNames::binomial(g.n()))
    };
    if !ideal.is_squarefree() {
        return Err(CliError::Invalid("symbolic powers need a squarefree monomial ideal".into()));
    }
    let cmp = powers_equal_named(&ideal, t_max, &names)?;
    report.verdict(format!("symbolic powers equal ordinary powers for t <= {t_max}"), cmp.ok);
    if !cmp.ok {
        report.witness(&cmp);
    }
    report.result = json!({ "ideal": ideal.render(&names), "comparison": cmp });
    Ok(())
}

pub fn powers_sweep(report: &mut RunReport, max_n: usize, t_max: u32) -> Result<(), CliError> {
    let recipes = sweep_recipes(Family::PendantCliques, max_n);
    let reps = recipes.par_iter().map(|r| check_pendant_power_equality(r, t_max)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for rep in &reps {
        if !rep.passed() {
            report.witness(rep);
        }
        rows.push(json!({ "recipe": rep.recipe, "passed": rep.passed() }));
    }
    report.verdict(format!("{} pendant cliques graphs pass for t <= {t_max}", reps.len()), report.witnesses.is_empty());
    report.result = json!({ "count": reps.len(), "graphs": rows });
    Ok(())
}

fn fsplit_one(recipe: &GraphRecipe, p: u32, oracle_bound: usize) -> Result<Result<FSplitCertificate, String>, CliError> {
    match verify_symbolic_fsplit(recipe, p, oracle_bound) {
        Ok(c) => Ok(Ok(c)),
        Err(FsplitError::Inconsistent(m)) => Ok(Err(m)),
        Err(e) => Err(e.into()),
    }
}

fn record_fsplit(report: &mut RunReport, recipe: &GraphRecipe, p: u32, outcome: &Result<FSplitCertificate, String>) -> Value {
    match outcome {
        Ok(cert) => {
            let oracle_ok = cert.entries.iter().all(|e| e.oracle != Some(false));
            if !cert.passed || !oracle_ok {
                report.witness(json!({ "recipe": recipe, "p": p, "transcript": cert.transcript() }));
            }
            json!({ "recipe": recipe, "p": p, "passed": cert.passed && oracle_ok })
        }
        Err(m) => {
            report.witness(json!({ "recipe": recipe, "p": p, "inconsistency": m }));
            json!({ "recipe": recipe, "p": p, "passed": false })
        }
    }
}

pub fn fsplit(report: &mut RunReport, doc: &Value, ps: &[u32], oracle_bound: usize) -> Result<(), CliError> {
    let recipe = family_recipe(doc, Family::GeneralizedPendantCliques)?;
    let mut certs = Vec::new();
    for &p in ps {
        let outcome = fsplit_one(&recipe, p, oracle_bound)?;
        record_fsplit(report, &recipe, p, &outcome);
        report.verdict(format!("symbolic F-split certificate for p = {p}"), outcome.as_ref().is_ok_and(|c| c.passed));
        if let Ok(c) = &outcome {
            if c.entries.iter().any(|e| e.oracle.is_some()) {
                report.verdict(format!("membership oracle confirms every prime for p = {p}"), c.entries.iter().all(|e| e.oracle != Some(false)));
            }
        }
        certs.push(match outcome {
            Ok(c) => json(&c),
            Err(m) => json!({ "p": p, "inconsistency": m }),
        });
    }
    report.result = json!({ "certificates": certs });
    Ok(())
}

pub fn fsplit_sweep(report: &mut RunReport, max_n: usize, ps: &[u32], oracle_bound: usize) -> Result<(), CliError> {
    let recipes: Vec<GraphRecipe> = sweep_recipes(Family::GeneralizedPendantCliques, max_n).into_iter().filter(|r| r.vertex_count() >= 2).collect();
    let tasks: Vec<(&GraphRecipe, u32)> = ps.iter().flat_map(|&p| recipes.iter().map(move |r| (r, p))).collect();
    let outcomes = tasks.par_iter().map(|&(r, p)| fsplit_one(r, p, oracle_bound)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Value> = tasks.iter().zip(&outcomes).map(|(&(r, p), o)| record_fsplit(report, r, p, o)).collect();
    report.verdict(format!("{} certificates over {} graphs", rows.len(), recipes.len()), report.witnesses.is_empty());
    report.result = json!({ "count": rows.len(), "certificates": rows });
    Ok(())
}

fn sfr_recipe(doc: &Value) -> Result<GraphRecipe, CliError> {
    if doc.get("recipe").is_some() || doc.get("path_len").is_some() {
        return recipe_of(doc);
    }
    let g: Graph = crate::input::graph_of(doc)?;
    [Family::PendantCliques, Family::GeneralizedCaterpillar]
        .into_iter()
        .find_map(|f| recognize(&g, f).map(|rec| rec.recipe))
        .ok_or_else(|| CliError::Invalid("graph is neither pendant cliques nor a generalized caterpillar".into()))
}

fn sfr_one(recipe: &GraphRecipe, p: u32, oracle_bound: usize) -> Result<Result<SfrCertificate, String>, CliError> {
    match verify_sfr_conditions(recipe, p, oracle_bound) {
        Ok(c) => Ok(Ok(c)),
        Err(FsplitError::Inconsistent(m)) => Ok(Err(m)),
        Err(e) => Err(e.into()),
    }
}

fn record_sfr(report: &mut RunReport, recipe: &GraphRecipe, p: u32, outcome: &Result<SfrCertificate, String>) -> Value {
    match outcome {
        Ok(cert) => {
            if !cert.passed {
                report.witness(json!({ "recipe": recipe, "p": p, "transcript": cert.transcript() }));
            }
            let branches: BTreeSet<String> = cert.entries.iter().map(|e| format!("{:?}", e.branch)).collect();
            json!({ "recipe": recipe, "p": p, "route": cert.route, "branches": branches, "passed": cert.passed })
        }
        Err(m) => {
            report.witness(json!({ "recipe": recipe, "p": p, "inconsistency": m }));
            json!({ "recipe": recipe, "p": p, "passed": false })
        }
    }
}

pub fn sfr(report: &mut RunReport, doc: &Value, ps: &[u32], oracle_bound: usize) -> Result<(), CliError> {
    let recipe = sfr_recipe(doc)?;
    let mut certs = Vec::new();
    for &p in ps {
        let outcome = sfr_one(&recipe, p, oracle_bound)?;
        record_sfr(report, &recipe, p, &outcome);
        report.verdict(format!("q membership and Fedder nonvanishing for p = {p}"), outcome.as_ref().is_ok_and(|c| c.passed));
        certs.push(match outcome {
            Ok(c) => json(&c),
            Err(m) => json!({ "p": p, "inconsistency": m }),
        });
    }
    report.result = json!({ "certificates": certs });
    Ok(())
}

pub fn sfr_sweep(report: &mut RunReport, max_n: usize, ps: &[u32], oracle_bound: usize) -> Result<(), CliError> {
    let mut recipes = sweep_recipes(Family::PendantCliques, max_n);
    recipes.extend(
        sweep_recipes(Family::GeneralizedCaterpillar, max_n)
            .into_iter()
            .filter(|r| is_net_free_generalized_caterpillar(&r.build().expect("enumerated recipes build").graph)),
    );
    recipes.retain(|r| r.vertex_count() >= 2);
    let tasks: Vec<(&GraphRecipe, u32)> = ps.iter().flat_map(|&p| recipes.iter().map(move |r| (r, p))).collect();
    let outcomes = tasks.par_iter().map(|&(r, p)| sfr_one(r, p, oracle_bound)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Value> = tasks.iter().zip(&outcomes).map(|(&(r, p), o)| record_sfr(report, r, p, o)).collect();
    report.verdict(format!("{} certificates over {} graphs", rows.len(), recipes.len()), report.witnesses.is_empty());
    report.result = json!({ "count": rows.len(), "certificates": rows });
    Ok(())
}
