//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use binedge_core::algebra::{binomial_edge_ideal, parse_monomial, MonomialIdeal, VarNames};
use binedge_core::families::{enumerate_recipes, fixtures, is_net_free_generalized_caterpillar, random_recipe, recognize, Family, GraphRecipe};
use binedge_core::fsplit::{central_form, verify_sfr_conditions, verify_symbolic_fsplit, SfrBranch, DEFAULT_ORACLE_BOUND};
use binedge_core::graph::{connected_graphs_up_to_iso, Graph, VertexSet};
use binedge_core::groebner::{buchberger, groebner_basis_edge, ideal_member, Budget};
use binedge_core::primes::{count_components_formula, minimal_primes, minimal_primes_exhaustive, prime_pu};
use binedge_core::symbolic::{check_pendant_power_equality, powers_equal_named};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Distinct graphs among built recipes, keyed by the central recipe.
fn distinct(recipes: Vec<GraphRecipe>, family: Family) -> Vec<GraphRecipe> {
    let mut seen = BTreeSet::new();
    recipes
        .into_iter()
        .filter(|r| {
            let g = r.build().unwrap().graph;
            let key = recognize(&g, family).map(|rec| rec.recipe.canonical().to_json()).unwrap_or_else(|| r.to_json());
            seen.insert(key)
        })
        .collect()
}

fn groebner_oracle_equivalence() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        for g in connected_graphs_up_to_iso(n) {
            let ours = groebner_basis_edge(&g);
            let bb = buchberger(&binomial_edge_ideal(&g), Budget::default()).map_err(|e| e.to_string())?;
            let names = VarNames::binomial(n);
            let a: BTreeSet<String> = ours.render(&names).into_iter().collect();
            let b: BTreeSet<String> = bb.render(&names).into_iter().collect();
            ensure(a == b && bb.is_reduced(), || format!("graph {:?}: admissible {a:?} vs Buchberger {b:?}", g.edges()))?;
            count += 1;
        }
    }
    Ok(format!("{count} connected graphs on <= 5 vertices"))
}

/// `P_T ⊆ P_S`: `T ⊆ S` and any two vertices outside `S` sharing a component
/// of `G - T` share a component of `G - S`.
fn prime_contained(g: &Graph, t: VertexSet, s: VertexSet) -> bool {
    if !t.is_subset(s) {
        return false;
    }
    let fine = g.connected_components(s);
    g.connected_components(t).iter().all(|c| {
        let rest = c.difference(s);
        rest.is_empty() || fine.iter().any(|f| rest.is_subset(*f))
    })
}

/// Inclusion-minimal primes among all `P_S`, with duplicates collapsed to the
/// smallest `S`.
fn inclusion_minimal(g: &Graph) -> Vec<VertexSet> {
    let all: Vec<VertexSet> = (0u64..1 << g.n()).map(|mask| (1..=g.n()).filter(|v| mask >> (v - 1) & 1 == 1).collect()).collect();
    let mut out: Vec<VertexSet> = all
        .iter()
        .copied()
        .filter(|&s| all.iter().all(|&t| t == s || !prime_contained(g, t, s) || prime_contained(g, s, t)))
        .collect();
    out.sort_by_key(|u| (u.len(), u.to_vec()));
    out
}

fn minimal_primes_and_heights() -> Outcome {
    let (mut graphs, mut primes) = (0, 0);
    for n in 1..=6 {
        for g in connected_graphs_up_to_iso(n) {
            let fast = minimal_primes(&g).map_err(|e| e.to_string())?;
            let full = minimal_primes_exhaustive(&g).map_err(|e| e.to_string())?;
            ensure(fast == full, || format!("graph {:?}: restricted enumeration differs", g.edges()))?;
            let sets: Vec<VertexSet> = fast.iter().map(|p| p.u).collect();
            ensure(sets == inclusion_minimal(&g), || format!("graph {:?}: cut-point filter differs from inclusion-minimal primes", g.edges()))?;
            let j = binomial_edge_ideal(&g);
            for p in &fast {
                let (_, ideal) = prime_pu(&g, p.u);
                for f in j.generators() {
                    let inside = ideal_member(f, &ideal, Budget::default()).map_err(|e| e.to_string())?;
                    ensure(inside, || format!("graph {:?}: {f} not in p_U for U = {:?}", g.edges(), p.u.to_vec()))?;
                }
                let c = g.component_count(p.u);
                ensure(p.height == p.u.len() + n - c, || format!("graph {:?}: height mismatch at U = {:?}", g.edges(), p.u.to_vec()))?;
                primes += 1;
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs, {primes} minimal primes"))
}

fn power_equality_pipeline() -> Outcome {
    let recipes = distinct(enumerate_recipes(Family::PendantCliques, 8, 5, 4), Family::PendantCliques);
    for r in &recipes {
        let rep = check_pendant_power_equality(r, 3).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{}: {}", r.to_json(), serde_json::to_string(&rep).unwrap()))?;
    }
    let names = VarNames::Custom(vec!["a".into(), "b".into(), "c".into()]);
    let tri = MonomialIdeal::new(3, ["a*b", "b*c", "a*c"].iter().map(|s| parse_monomial(s, &names).unwrap()));
    let cmp = powers_equal_named(&tri, 2, &names).map_err(|e| e.to_string())?;
    ensure(!cmp.ok && cmp.failing_t == Some(2) && cmp.witness.as_deref() == Some("a*b*c"), || format!("triangle control: {cmp:?}"))?;
    Ok(format!("{} pendant cliques graphs at t <= 3; triangle control fails at t = 2 with a*b*c", recipes.len()))
}

fn component_formula() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut pairs = 0;
    while pairs < 10_000 {
        let recipe = random_recipe(&mut rng, Family::GeneralizedPendantCliques, 20, 6);
        if recipe.vertex_count() < 3 {
            continue;
        }
        let c = central_form(&recipe).map_err(|e| e.to_string())?;
        let n = c.graph.n();
        let interior: Vec<usize> = c.path.iter().copied().filter(|&v| v != 1 && v != n).collect();
        let s: Vec<usize> = interior.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
        if s.is_empty() {
            continue;
        }
        let (count, _) = count_components_formula(&c.recipe, &s).map_err(|e| e.to_string())?;
        let removed: VertexSet = s.iter().copied().collect();
        let direct = c.graph.component_count(removed);
        ensure(count == direct, || format!("{} S = {s:?}: formula {count}, search {direct}", c.recipe.to_json()))?;
        pairs += 1;
    }
    Ok(format!("{pairs} random (recipe, cut set) pairs with n <= 20"))
}

fn fsplit_certificates() -> Outcome {
    let recipes: Vec<GraphRecipe> = distinct(enumerate_recipes(Family::GeneralizedPendantCliques, 8, 8, 8), Family::GeneralizedPendantCliques)
        .into_iter()
        .filter(|r| r.vertex_count() >= 2)
        .collect();
    let mut oracle_checks = 0;
    for p in [2, 3, 5] {
        for r in &recipes {
            let bound = if p == 2 { DEFAULT_ORACLE_BOUND } else { 0 };
            let cert = verify_symbolic_fsplit(r, p, bound).map_err(|e| format!("{}: {e}", r.to_json()))?;
            ensure(cert.passed, || cert.transcript())?;
            if cert.n <= DEFAULT_ORACLE_BOUND && p == 2 {
                ensure(cert.entries.iter().all(|e| e.oracle == Some(true)), || cert.transcript())?;
                oracle_checks += cert.entries.len();
            }
        }
    }
    Ok(format!("{} generalized pendant cliques graphs, p in {{2,3,5}}, {oracle_checks} oracle memberships", recipes.len()))
}

fn routing() -> Outcome {
    let pc = fixtures::get("pendant-cliques").unwrap();
    ensure(recognize(&pc.graph, Family::PendantCliques).is_some(), || "pendant cliques fixture not recognized".into())?;
    let gc = fixtures::get("generalized-caterpillar").unwrap();
    ensure(recognize(&gc.graph, Family::GeneralizedCaterpillar).is_some(), || "caterpillar fixture not recognized".into())?;
    let mut caterpillars = 0;
    for r in enumerate_recipes(Family::PendantCliques, 8, 8, 2) {
        if r.vertex_count() < 2 {
            continue;
        }
        let cert = verify_symbolic_fsplit(&r, 2, 0).map_err(|e| e.to_string())?;
        ensure(cert.passed, || cert.transcript())?;
        caterpillars += 1;
    }
    ensure(fixtures::get("net").unwrap().graph.contains_induced_net().is_some(), || "net not detected".into())?;
    ensure(Graph::complete(6).contains_induced_net().is_none(), || "net found in K6".into())?;
    ensure(Graph::path(6).contains_induced_net().is_none(), || "net found in P6".into())?;
    Ok(format!("fixtures routed, {caterpillars} caterpillars certified, net detection correct"))
}

fn sfr_premises() -> Outcome {
    let mut recipes = distinct(enumerate_recipes(Family::PendantCliques, 8, 8, 8), Family::PendantCliques);
    let gc: Vec<GraphRecipe> = distinct(enumerate_recipes(Family::GeneralizedCaterpillar, 8, 8, 8), Family::GeneralizedCaterpillar)
        .into_iter()
        .filter(|r| is_net_free_generalized_caterpillar(&r.build().unwrap().graph))
        .collect();
    let gc_count = gc.len();
    recipes.extend(gc);
    recipes.retain(|r| r.vertex_count() >= 2);
    let mut branches = BTreeSet::new();
    for p in [2, 3] {
        for r in &recipes {
            let cert = verify_sfr_conditions(r, p, if p == 2 { DEFAULT_ORACLE_BOUND } else { 0 }).map_err(|e| format!("{}: {e}", r.to_json()))?;
            ensure(cert.passed, || cert.transcript())?;
            branches.extend(cert.entries.iter().map(|e| format!("{:?}", e.branch)));
        }
    }
    for b in [SfrBranch::FirstCutAtTwo, SfrBranch::FirstCutBeyondTwo] {
        ensure(branches.contains(&format!("{b:?}")), || format!("branch {b:?} never exercised"))?;
    }
    Ok(format!("{} recipes ({gc_count} net-free generalized caterpillars), p in {{2,3}}, branches {branches:?}", recipes.len()))
}

fn report_batch() -> String {
    let mut out = Vec::new();
    for f in fixtures::all() {
        out.push(serde_json::to_string(&f).unwrap());
        if let Some(r) = &f.recipe {
            if r.is_in(Family::GeneralizedPendantCliques) {
                out.push(serde_json::to_string(&verify_symbolic_fsplit(r, 3, 0).unwrap()).unwrap());
            }
            if r.is_in(Family::PendantCliques) {
                out.push(serde_json::to_string(&check_pendant_power_equality(r, 2).unwrap()).unwrap());
                out.push(serde_json::to_string(&verify_sfr_conditions(r, 2, 0).unwrap()).unwrap());
            }
        }
        out.push(serde_json::to_string(&minimal_primes(&f.graph).unwrap()).unwrap());
    }
    out.join("\n")
}

fn determinism() -> Outcome {
    let runs: Vec<String> = [1, 4, 1]
        .iter()
        .map(|&threads| rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(report_batch))
        .collect();
    ensure(runs.windows(2).all(|w| w[0] == w[1]), || "reports differ between runs".into())?;
    Ok(format!("3 runs (1, 4, 1 workers), {} bytes identical", runs[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("groebner oracle equivalence", groebner_oracle_equivalence),
        ("minimal primes and heights", minimal_primes_and_heights),
        ("power equality pipeline", power_equality_pipeline),
        ("component count formula", component_formula),
        ("symbolic F-split certificates", fsplit_certificates),
        ("family routing", routing),
        ("strong F-regularity premises", sfr_premises),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
