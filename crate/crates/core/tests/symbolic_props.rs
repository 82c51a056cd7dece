use binedge_core::algebra::{binomial_edge_ideal, Monomial, MonomialIdeal};
use binedge_core::families::{enumerate_recipes, Family};
use binedge_core::graph::connected_graphs_up_to_iso;
use binedge_core::groebner::{initial_ideal, power_member, LinearBudget};
use binedge_core::primes::{minimal_primes, prime_pu};
use binedge_core::symbolic::{
    facet_complex, find_special_odd_cycle, monomial_minimal_primes, powers_equal_monomial, special_cycles, symbolic_power_monomial, FacetComplex,
};
use proptest::prelude::*;

const NV: usize = 6;

/// Shortest special odd cycle length by backtracking over alternating
/// vertex/facet sequences with explicit facet choices.
fn brute_shortest_special_odd(delta: &FacetComplex) -> Option<usize> {
    let facets = delta.facets();
    let nv = delta.nvars();
    fn special(facets: &[Vec<usize>], vs: &[usize]) -> bool {
        facets.iter().all(|f| f.iter().filter(|v| vs.contains(v)).count() <= 2)
    }
    fn rec(facets: &[Vec<usize>], vs: &mut Vec<usize>, used: &mut Vec<usize>, len: usize, nv: usize) -> bool {
        let last = *vs.last().unwrap();
        if vs.len() == len {
            let first = vs[0];
            return special(facets, vs) && (0..facets.len()).any(|k| !used.contains(&k) && facets[k].contains(&last) && facets[k].contains(&first));
        }
        for w in 0..nv {
            if vs.contains(&w) || w < vs[0] {
                continue;
            }
            for k in 0..facets.len() {
                if used.contains(&k) || !facets[k].contains(&last) || !facets[k].contains(&w) {
                    continue;
                }
                vs.push(w);
                used.push(k);
                let ok = rec(facets, vs, used, len, nv);
                vs.pop();
                used.pop();
                if ok {
                    return true;
                }
            }
        }
        false
    }
    (3..=nv).step_by(2).find(|&len| (0..nv).any(|s| rec(&facets, &mut vec![s], &mut Vec::new(), len, nv)))
}

fn is_bipartite(nv: usize, edges: &[Vec<usize>]) -> bool {
    let mut color = vec![None; nv];
    for s in 0..nv {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for e in edges.iter().filter(|e| e.contains(&v)) {
                let w = if e[0] == v { e[1] } else { e[0] };
                match color[w] {
                    None => {
                        color[w] = Some(!color[v].unwrap());
                        stack.push(w);
                    }
                    Some(c) if c == color[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn arb_facets(min: usize, max: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0..NV, min..=max).prop_map(|s| s.into_iter().collect::<Vec<_>>()), 1..7)
}

fn squarefree_ideal(facets: &[Vec<usize>], nv: usize) -> MonomialIdeal {
    MonomialIdeal::new(nv, facets.iter().map(|f| Monomial::from_support(nv, f.iter().copied())))
}

fn p_degree(m: &Monomial, p: &[usize]) -> u32 {
    p.iter().map(|&v| m.exponent(v)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cycle_search_matches_brute_force(facets in arb_facets(2, 3)) {
        let delta = FacetComplex::from_facets(NV, &facets).unwrap();
        let found = find_special_odd_cycle(&delta);
        if let Some(c) = &found {
            prop_assert!(c.is_valid_special(&delta));
            prop_assert!(c.len() % 2 == 1);
        }
        prop_assert_eq!(found.map(|c| c.len()), brute_shortest_special_odd(&delta));
    }

    #[test]
    fn graph_complexes_reduce_to_bipartiteness(edges in prop::collection::vec((0..NV, 0..NV), 1..10)) {
        let edges: Vec<Vec<usize>> = edges.into_iter().filter(|(a, b)| a != b).map(|(a, b)| vec![a.min(b), a.max(b)]).collect();
        prop_assume!(!edges.is_empty());
        let delta = FacetComplex::from_facets(NV, &edges).unwrap();
        prop_assert_eq!(find_special_odd_cycle(&delta).is_none(), is_bipartite(NV, &edges));
    }

    #[test]
    fn symbolic_power_generators_are_exact(facets in arb_facets(1, 3), m in 1u32..4) {
        let i = squarefree_ideal(&facets, NV);
        let primes = monomial_minimal_primes(&i).unwrap();
        for p in &primes {
            prop_assert!(i.generators().iter().all(|g| p_degree(g, p) >= 1));
        }
        let s = symbolic_power_monomial(&i, m).unwrap();
        prop_assert!(s.contains_ideal(&i.power(m).unwrap()));
        for g in s.generators() {
            prop_assert!(primes.iter().all(|p| p_degree(g, p) >= m));
            for v in g.support() {
                let mut e = g.exponents().to_vec();
                e[v] -= 1;
                let smaller = Monomial::from_exponents(e);
                prop_assert!(primes.iter().any(|p| p_degree(&smaller, p) < m));
            }
        }
    }

    #[test]
    fn failing_witness_replays(facets in arb_facets(2, 3)) {
        let i = squarefree_ideal(&facets, NV);
        let cmp = powers_equal_monomial(&i, 3).unwrap();
        if let (Some(t), Some(w)) = (cmp.failing_t, cmp.witness_monomial.as_ref()) {
            prop_assert!(!cmp.ok);
            prop_assert!(symbolic_power_monomial(&i, t).unwrap().contains(w));
            prop_assert!(!i.power(t).unwrap().contains(w));
            for k in 1..t {
                prop_assert_eq!(symbolic_power_monomial(&i, k).unwrap(), i.power(k).unwrap());
            }
        } else {
            prop_assert!(cmp.ok);
        }
    }
}

#[test]
fn special_cycles_stay_on_one_side_of_path_vertices() {
    let mut checked = 0;
    for recipe in enumerate_recipes(Family::PendantCliques, 7, 5, 4) {
        let labeling = recipe.pendant_labeling().unwrap();
        let built = recipe.build().unwrap();
        let g = labeling.apply(&built.graph);
        let n = g.n();
        let init = initial_ideal(&g);
        let delta = facet_complex(&init).unwrap();
        let path: Vec<usize> = built.path.iter().map(|&v| labeling.label(v)).collect();
        let vertex_of = |var: usize| if var < n { var + 1 } else { var - n + 1 };
        for c in special_cycles(&delta, 8) {
            checked += 1;
            for &j in &path {
                let below = c.vertices.iter().any(|&v| vertex_of(v) < j);
                let above = c.vertices.iter().any(|&v| vertex_of(v) > j);
                assert!(!(below && above), "cycle {:?} crosses path vertex {j} in {}", c.vertices, recipe.to_json());
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn squares_of_edge_ideals_lie_in_every_squared_minimal_prime() {
    let mut checked = 0;
    for n in 2..=5 {
        for g in connected_graphs_up_to_iso(n) {
            let gens = binomial_edge_ideal(&g).generators().to_vec();
            let primes: Vec<_> = minimal_primes(&g).unwrap().into_iter().map(|p| prime_pu(&g, p.u).1).collect();
            for a in 0..gens.len() {
                for b in a..gens.len() {
                    let f = gens[a].mul(&gens[b]).unwrap();
                    for p in &primes {
                        assert!(power_member(&f, p, 2, LinearBudget::default()).unwrap(), "{:?}", g.edges());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}
