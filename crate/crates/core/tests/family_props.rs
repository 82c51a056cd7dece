use std::path::PathBuf;

use binedge_core::families::{fixtures, is_net_free_generalized_caterpillar, random_recipe, recognize, Attach, Family, GraphRecipe};
use binedge_core::fsplit::central_form;
use binedge_core::graph::Graph;
use binedge_core::primes::{components_c1_to_c4, minimal_primes, ComponentTag};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn maps_onto(built: &Graph, g: &Graph, map: &[usize]) -> bool {
    let mut image = map.to_vec();
    image.sort_unstable();
    image == (1..=g.n()).collect::<Vec<_>>()
        && built.edge_count() == g.edge_count()
        && built.edges().into_iter().all(|(a, b)| g.has_edge(map[a - 1], map[b - 1]))
}

#[test]
fn recognition_round_trip() {
    let mut rng = StdRng::seed_from_u64(11);
    for family in Family::ALL {
        for _ in 0..300 {
            let recipe = random_recipe(&mut rng, family, 14, 5);
            let g = recipe.build().unwrap().graph;
            let rec = recognize(&g, family).unwrap_or_else(|| panic!("{} not recognized as {}", recipe.to_json(), family.name()));
            assert!(rec.recipe.is_in(family));
            assert!(rec.recipe.path_len >= recipe.path_len);
            assert!(maps_onto(&rec.recipe.build().unwrap().graph, &g, &rec.map), "{}", recipe.to_json());
        }
    }
}

#[test]
fn block_labelings_respect_clique_order() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..500 {
        let recipe = random_recipe(&mut rng, Family::GeneralizedPendantCliques, 16, 5);
        let built = recipe.build().unwrap();
        let l = &built.labeling;
        let mut labels = l.as_slice().to_vec();
        labels.sort_unstable();
        assert_eq!(labels, (1..=built.n()).collect::<Vec<_>>());
        let r = recipe.path_len;
        for a in &built.attachments {
            let lab: Vec<usize> = a.members.iter().map(|&v| l.label(v)).collect();
            let (lo, hi) = (*lab.iter().min().unwrap(), *lab.iter().max().unwrap());
            // Each clique occupies a contiguous block of labels.
            assert_eq!(hi + 1 - lo, lab.len());
            match a.at {
                Attach::Vertex { pos, .. } => {
                    assert!(l.label(pos) < lo);
                    if pos < r {
                        assert!(hi < l.label(pos + 1));
                    }
                    for b in &built.attachments {
                        if let Attach::Edge { pos: e } = b.at {
                            if e == pos {
                                assert!(b.members.iter().all(|&w| l.label(w) > hi));
                            }
                        }
                    }
                }
                Attach::Edge { pos } => assert!(l.label(pos) < lo && hi < l.label(pos + 1)),
                Attach::CliqueWhisker { .. } => {}
            }
        }
    }
}

#[test]
fn pendant_cliques_graphs_are_generalized_pendant_cliques() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..300 {
        let recipe = random_recipe(&mut rng, Family::PendantCliques, 14, 5);
        let g = recipe.build().unwrap().graph;
        assert!(recognize(&g, Family::GeneralizedPendantCliques).is_some(), "{}", recipe.to_json());
    }
}

#[test]
fn last_interval_is_never_empty() {
    let mut rng = StdRng::seed_from_u64(14);
    let mut checked = 0;
    for _ in 0..400 {
        let recipe = random_recipe(&mut rng, Family::GeneralizedPendantCliques, 16, 5);
        if recipe.vertex_count() < 2 {
            continue;
        }
        let c = central_form(&recipe).unwrap();
        let n = c.graph.n();
        let interior: Vec<usize> = c.path.iter().copied().filter(|&v| v != 1 && v != n).collect();
        if interior.is_empty() {
            continue;
        }
        let s: Vec<usize> = interior.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if s.is_empty() {
            continue;
        }
        let comps = components_c1_to_c4(&c.recipe, &s).unwrap();
        let last = comps.iter().find(|t| t.tag == ComponentTag::C4).unwrap();
        assert!(!last.vertices.is_empty());
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn minimal_primes_stay_inside_the_central_path() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..200 {
        let recipe = random_recipe(&mut rng, Family::GeneralizedPendantCliques, 11, 4);
        if recipe.vertex_count() < 2 {
            continue;
        }
        let c = central_form(&recipe).unwrap();
        let n = c.graph.n();
        for p in minimal_primes(&c.graph).unwrap() {
            assert!(p.u.iter().all(|v| c.path.contains(&v) && v != 1 && v != n), "{} U={:?}", recipe.to_json(), p.u.to_vec());
        }
    }
}

#[test]
fn net_free_caterpillars_and_generalized_pendant_cliques() {
    // Observed containment, reported rather than assumed.
    let mut rng = StdRng::seed_from_u64(16);
    let (mut net_free, mut also_gpc) = (0, 0);
    for _ in 0..300 {
        let recipe = random_recipe(&mut rng, Family::GeneralizedCaterpillar, 14, 5);
        let g = recipe.build().unwrap().graph;
        if is_net_free_generalized_caterpillar(&g) {
            net_free += 1;
            also_gpc += usize::from(recognize(&g, Family::GeneralizedPendantCliques).is_some());
        }
    }
    println!("net-free generalized caterpillars: {net_free}, recognized as generalized pendant cliques: {also_gpc}");
    assert!(net_free > 0);
}

#[test]
fn shipped_fixture_files_match_the_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for f in fixtures::all() {
        let text = std::fs::read_to_string(dir.join(format!("{}.json", f.name))).unwrap();
        let on_disk: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(on_disk, serde_json::to_value(&f).unwrap(), "{}", f.name);
        if let Some(r) = &f.recipe {
            let parsed = GraphRecipe::from_json(&serde_json::to_string(&on_disk["recipe"]).unwrap()).unwrap();
            assert_eq!(&parsed, r);
        }
    }
}
