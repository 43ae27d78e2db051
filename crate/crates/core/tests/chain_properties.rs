//! Chain-level properties that cut across modules: locality nesting of
//! observable algebras, dimension bounds, and schedule independence of the
//! law shuffles on longer chains.

use weakwreath::algebra::Demimonad;
use weakwreath::bialgebra::{
    canonical_lambda, cyclic_group_table, dual, group_algebra, pair_groupoid_algebra,
};
use weakwreath::field::FieldDesc;
use weakwreath::linmap::LinMap;
use weakwreath::spinchain::{build_spin_chain, observable_algebra, SpinChainSpec};
use weakwreath::wdl::{check_monad_morphism, weak_wreath, Carrier, MonadMorphism};
use weakwreath::wdln::{build_cube, iterated_wreath};

const Q: FieldDesc = FieldDesc::Rational;

fn m2_spec(n: usize) -> SpinChainSpec {
    SpinChainSpec::new(pair_groupoid_algebra(2, Q), n)
}

#[test]
fn observable_algebras_nest_along_the_chain() {
    // the embedding of the interval [0,m] into [0,n] is the edge composite
    // of the cube, and must be a monad morphism
    let chain = build_spin_chain(&m2_spec(2)).unwrap();
    let cube = build_cube(&chain).unwrap();
    for m in 0..2u32 {
        let small_mask = (1 << (m + 1)) - 1;
        let embed = cube.phi_composite(small_mask, cube.full_mask() & !small_mask);
        let morphism = MonadMorphism::new(
            cube.vertex(cube.full_mask()).clone(),
            cube.vertex(small_mask).clone(),
            Carrier::trivial(Q),
            embed,
        );
        let r = check_monad_morphism(&morphism);
        assert!(r.passed(), "nesting [0,{m}] ⊂ [0,2] fails:\n{r}");
    }
}

#[test]
fn weak_dimension_never_exceeds_the_strict_bound() {
    let h = pair_groupoid_algebra(2, Q);
    for n in 1..=3 {
        let (_, dim) = observable_algebra(&SpinChainSpec::new(h.clone(), n)).unwrap();
        let strict_bound = h.dim().pow(n as u32 + 1);
        assert!(dim <= strict_bound, "n={n}: {dim} > {strict_bound}");
    }
}

#[test]
fn wreath_idempotent_rank_bounds() {
    for n in 1..=3 {
        let chain = build_spin_chain(&m2_spec(n)).unwrap();
        let wreath = iterated_wreath(&chain).unwrap();
        let rank = wreath.idem().matrix().rank();
        assert!(rank >= 1 && rank <= chain.total_space().dim());
    }
}

#[test]
fn four_site_shuffles_are_schedule_independent() {
    // full reversal of the four chain sites: compare the canonical bubble
    // schedule against hand-picked reduced schedules
    let chain = build_spin_chain(&m2_spec(3)).unwrap();
    let seq = vec![3usize, 2, 1, 0];
    let canonical = chain.shuffle_to_sorted(&seq);
    // positions chosen so every step fixes an inversion
    let alternatives: Vec<Vec<usize>> = vec![
        vec![0, 1, 2, 0, 1, 0],
        vec![2, 1, 0, 2, 1, 2],
        vec![0, 2, 1, 0, 2, 1],
        vec![2, 1, 2, 0, 1, 2],
    ];
    for schedule in alternatives {
        let map = chain
            .apply_schedule(&seq, &schedule)
            .expect("schedule is reduced");
        assert!(map.same_map(&canonical), "schedule {schedule:?} disagrees");
    }
}

#[test]
fn binary_cube_edges_are_the_wreath_projections() {
    // for two monads the cube is the factorization square and its two
    // upper edges are exactly the canonical projection structure maps
    let pair = dual(&pair_groupoid_algebra(2, Q)).unwrap();
    let h = Demimonad::from_algebra(pair.h.algebra());
    let hat = Demimonad::from_algebra(pair.hat.algebra());
    let chain = build_spin_chain(&m2_spec(1)).unwrap();
    let cube = build_cube(&chain).unwrap();
    let law = chain.pair_law(0, 1);
    let (_, proj_t, proj_s) = weak_wreath(&law).unwrap();
    // site 0 carries H = s (left tensor factor), site 1 carries Ĥ = t
    assert_eq!(h.dim(), 4);
    assert_eq!(hat.dim(), 4);
    assert!(cube.edge(0b01, 1).same_map(proj_s.xi()));
    assert!(cube.edge(0b10, 0).same_map(proj_t.xi()));
    // bottom edges are the units normalized by the monad idempotents
    assert!(cube.edge(0, 0).same_map(chain.monad(0).unit()));
    assert!(cube.edge(0, 1).same_map(chain.monad(1).unit()));
}

#[test]
fn strict_four_site_chain_is_order_independent() {
    let z2 = group_algebra(&cyclic_group_table(2), Q).unwrap();
    let chain = build_spin_chain(&SpinChainSpec::new(z2, 3)).unwrap();
    let r = weakwreath::wdln::check_associativity(&chain).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.items().len() / 3, 6);
}

#[test]
fn group_algebra_lambda_is_a_permutation_for_strict_input() {
    // strict case: the canonical law of a group algebra permutes basis
    // vectors, and its wreath recovers the full smash product dimension
    let z3 = group_algebra(&cyclic_group_table(3), Q).unwrap();
    let pair = dual(&z3).unwrap();
    let lam = canonical_lambda(&pair);
    assert_eq!(lam.matrix().rank(), 9);
    let law = weakwreath::wdl::WeakDistributiveLaw::new(
        Demimonad::from_algebra(pair.h.algebra()),
        Demimonad::from_algebra(pair.hat.algebra()),
        lam,
    )
    .unwrap();
    let (wreath, _, _) = weak_wreath(&law).unwrap();
    assert!(wreath.idem().same_map(&LinMap::identity(wreath.space(), Q)));
}
