use binedge_core::families::{random_recipe, Family};
use binedge_core::fsplit::central_form;
use binedge_core::graph::{connected_graphs_up_to_iso, VertexSet};
use binedge_core::primes::{components_c1_to_c4, count_components_formula, height, ComponentTag};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn formula_matches_component_search() {
    let mut rng = StdRng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 1000 {
        let recipe = random_recipe(&mut rng, Family::GeneralizedPendantCliques, 18, 5);
        if recipe.vertex_count() < 3 {
            continue;
        }
        let c = central_form(&recipe).unwrap();
        let n = c.graph.n();
        let interior: Vec<usize> = c.path.iter().copied().filter(|&v| v != 1 && v != n).collect();
        let s: Vec<usize> = interior.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
        if s.is_empty() {
            continue;
        }
        let (count, _) = count_components_formula(&c.recipe, &s).unwrap();
        let removed: VertexSet = s.iter().copied().collect();
        assert_eq!(count, c.graph.component_count(removed), "{} S={s:?}", c.recipe.to_json());
        let comps = components_c1_to_c4(&c.recipe, &s).unwrap();
        let mut union = VertexSet::empty();
        for t in &comps {
            assert!(union.intersection(t.vertices).is_empty());
            union = union.union(t.vertices);
            if t.tag == ComponentTag::C3 {
                assert!(c.graph.is_clique(t.vertices));
            }
        }
        assert_eq!(union, c.graph.vertices().difference(removed));
        checked += 1;
    }
}

#[test]
fn heights_of_the_empty_cut_set() {
    for n in 1..=6 {
        for g in connected_graphs_up_to_iso(n) {
            assert_eq!(height(&g, VertexSet::empty()), n - 1);
            let u: VertexSet = [1].into_iter().collect();
            assert_eq!(height(&g, u), 1 + n - g.component_count(u));
        }
    }
}
