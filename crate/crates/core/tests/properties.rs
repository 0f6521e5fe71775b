mod common;

use std::collections::BTreeSet;

use common::{boundary_squares_vanish, brute_force_chromatic, brute_force_holonomy, chains, random_complex, random_strip, s, std};
use homcx::chain::betti_mod_p;
use homcx::collapse::DEFAULT_BUDGET;
use homcx::projectivity::{fibre, restriction, DualGraph};
use homcx::{
    chain_map_of, chromatic_number, find_shelling, holonomy_group, homology, induced_on_homology, induced_precompose, is_tree_like,
    simplicial_chains, verify_collapse_equivalence, HomComplex, IntegralHomology, Projectivity, SearchOutcome, SimplicialComplex, Standard,
    VertexMap,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn targets() -> Vec<SimplicialComplex> {
    vec![
        std(Standard::Complete(3)),
        std(Standard::Complete(4)),
        std(Standard::BoundarySimplex(4)),
        std(Standard::Cycle(5)),
        std(Standard::Simplex(4)),
    ]
}

/// `None` when the Hom-complex is too big for a property test.
fn random_hom(seed: u64) -> Option<HomComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let k = random_complex(&mut rng, n, m, 3);
    let ts = targets();
    match HomComplex::build(&k, &ts[rng.gen_range(0..ts.len())], Some(20_000)) {
        Err(homcx::Error::CapExceeded { .. }) => None,
        other => Some(other.unwrap()),
    }
}

fn even_torsion(t: &[u64]) -> usize {
    t.iter().filter(|&&x| x % 2 == 0).count()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn boundary_squares_vanish_on_random_hom(seed in any::<u64>()) {
        let Some(h) = random_hom(seed) else { return Ok(()) };
        prop_assert!(boundary_squares_vanish(&chains(&h)));
        prop_assert!(boundary_squares_vanish(&simplicial_chains(h.source())));
    }

    #[test]
    fn euler_characteristic_from_homology(seed in any::<u64>()) {
        let Some(h) = random_hom(seed) else { return Ok(()) };
        let hg = homology(&chains(&h), false);
        let from_betti: i64 = hg.dims.iter().map(|x| if x.dim % 2 == 0 { x.betti as i64 } else { -(x.betti as i64) }).sum();
        prop_assert_eq!(from_betti, h.euler_characteristic());
    }

    #[test]
    fn universal_coefficients_mod_2(seed in any::<u64>()) {
        let Some(h) = random_hom(seed) else { return Ok(()) };
        let c = chains(&h);
        let hg = homology(&c, false);
        let b2 = betti_mod_p::<2>(&c, false);
        for (d, &b) in b2.iter().enumerate() {
            let below = if d == 0 { 0 } else { even_torsion(hg.torsion(d - 1)) };
            prop_assert_eq!(b, hg.betti(d) + even_torsion(hg.torsion(d)) + below);
        }
    }

    #[test]
    fn restrictions_are_chain_maps(seed in any::<u64>()) {
        let Some(h) = random_hom(seed) else { return Ok(()) };
        let c = chains(&h);
        for f in h.source().facets() {
            let fib = fibre(h.target(), f.len(), None).unwrap();
            let m = chain_map_of(&restriction(&h, f, &fib).unwrap()).unwrap();
            prop_assert!(m.commutes(&c, &chains(&fib)));
        }
    }

    #[test]
    fn hom_json_round_trip(seed in any::<u64>()) {
        let Some(h) = random_hom(seed) else { return Ok(()) };
        let back = HomComplex::from_json(&h.to_json(), None).unwrap();
        prop_assert_eq!(back.counts(), h.counts());
        prop_assert_eq!(back.to_json(), h.to_json());
        let k = SimplicialComplex::from_json(&h.source().to_json()).unwrap();
        prop_assert_eq!(&k, h.source());
    }

    #[test]
    fn chromatic_number_matches_exhaustive_colouring(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(1..=7), rng.gen_range(1..=9));
        let k = random_complex(&mut rng, n, m, 4);
        let (chi, col) = chromatic_number(&k).unwrap();
        prop_assert!(col.is_proper(&k));
        prop_assert_eq!(chi, brute_force_chromatic(&k));
    }

    #[test]
    fn holonomy_contains_enumerated_loops(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (tri, n) = (rng.gen_range(2..=6), rng.gen_range(4..=7));
        let k = random_strip(&mut rng, tri, n);
        let sigma = k.facets()[0].clone();
        let g = holonomy_group(&k, &sigma).unwrap();
        let elements: BTreeSet<Vec<usize>> = g.elements().iter().cloned().collect();
        prop_assert!(brute_force_holonomy(&k, &sigma, 5).is_subset(&elements));
        for e in g.elements() {
            let pairs: Vec<(usize, usize)> = sigma.vertices().iter().enumerate().map(|(i, &x)| (x, sigma.vertices()[e[i]])).collect();
            let p = g.realize(&pairs).unwrap();
            prop_assert_eq!(p.pairs(), pairs);
            prop_assert_eq!(p.source(), &sigma);
            prop_assert_eq!(p.target(), &sigma);
        }
    }

    #[test]
    fn projectivity_inverse_and_composition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (tri, n) = (rng.gen_range(2..=6), rng.gen_range(4..=7));
        let k = random_strip(&mut rng, tri, n);
        let g = DualGraph::new(&k, 2);
        let mut walk = vec![g.nodes()[0].clone()];
        let mut cur = 0;
        for _ in 0..rng.gen_range(1..=6) {
            let nb = g.neighbours(cur);
            if nb.is_empty() {
                break;
            }
            cur = nb[rng.gen_range(0..nb.len())];
            walk.push(g.nodes()[cur].clone());
        }
        let p = Projectivity::along_in(&k, &walk).unwrap();
        prop_assert!(p.then(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().then(&p).unwrap().is_identity());
        // splitting the walk anywhere composes back to the same map
        let cut = rng.gen_range(0..walk.len());
        let a = Projectivity::along(&walk[..=cut]).unwrap();
        let b = Projectivity::along(&walk[cut..]).unwrap();
        prop_assert!(a.then(&b).unwrap().same_map(&p));
    }

    #[test]
    fn shellings_and_collapses_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (tri, n) = (rng.gen_range(2..=5), rng.gen_range(4..=7));
        let k = random_strip(&mut rng, tri, n);
        if let SearchOutcome::Found(order) = find_shelling(&k, DEFAULT_BUDGET).unwrap() {
            prop_assert!(order.verify(&k));
        }
        if let SearchOutcome::Found(seq) = is_tree_like(&k, DEFAULT_BUDGET).unwrap() {
            prop_assert!(seq.verify(&k));
            prop_assert!(seq.to_shelling().verify(&k));
            let (stages, _) = seq.stages(&k).unwrap();
            let (stage, step) = &stages[0];
            verify_collapse_equivalence(stage, Some(step), &std(Standard::BoundarySimplex(4)), None).unwrap();
        }
    }
}

#[test]
fn fold_and_inclusion_are_inverse_on_chains() {
    let k = SimplicialComplex::from_facets(4, [vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
    let l = std(Standard::Simplex(4));
    let rho = homcx::fold_map(&k, 2, 3).unwrap();
    let gamma = homcx::collapse::deletion_inclusion(&k, 2).unwrap();
    let (hk, hkp) = (HomComplex::build(&k, &l, None).unwrap(), HomComplex::build(rho.target(), &l, None).unwrap());
    let g = chain_map_of(&induced_precompose(&hk, &gamma, &hkp).unwrap()).unwrap();
    let r = chain_map_of(&induced_precompose(&hkp, &rho, &hk).unwrap()).unwrap();
    assert!(r.commutes(&chains(&hkp), &chains(&hk)));
    assert!(g.commutes(&chains(&hk), &chains(&hkp)));
    assert_eq!(r.then(&g).unwrap(), homcx::ChainMap::identity(&chains(&hkp)));
}

#[test]
fn path_restrictions_have_degree_one() {
    // Hom(L3, K4) restricted to either edge lands in the 2-sphere Hom(K2, K4)
    let k4 = std(Standard::Complete(4));
    let l3 = std(Standard::Path(3));
    let h = HomComplex::build(&l3, &k4, None).unwrap();
    let fib = fibre(&k4, 2, None).unwrap();
    let hh = IntegralHomology::compute(&chains(&h), true);
    let hf = IntegralHomology::compute(&chains(&fib), true);
    assert!(hf.groups().is_sphere(2));
    for e in [s(&[0, 1]), s(&[1, 2])] {
        let m = chain_map_of(&restriction(&h, &e, &fib).unwrap()).unwrap();
        let on_h2 = induced_on_homology(&m, &hh, &hf, 2).unwrap();
        assert!(matches!(on_h2.degree(), Some(1) | Some(-1)), "{on_h2:?}");
    }
}

#[test]
fn precomposition_is_contravariant() {
    // Hom(-, K4) applied to the composite of two automorphisms of C5
    let c5 = std(Standard::Cycle(5));
    let k4 = std(Standard::Complete(4));
    let h = HomComplex::build(&c5, &k4, None).unwrap();
    let rot = VertexMap::new(&c5, &c5, vec![1, 2, 3, 4, 0]).unwrap();
    let refl = VertexMap::new(&c5, &c5, vec![0, 4, 3, 2, 1]).unwrap();
    let both = rot.then(&refl).unwrap();
    let m = |f: &VertexMap| chain_map_of(&induced_precompose(&h, f, &h).unwrap()).unwrap();
    assert_eq!(m(&both), m(&refl).then(&m(&rot)).unwrap());
}
