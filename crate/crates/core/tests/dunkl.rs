use cmcells::characters::irr_characters;
use cmcells::dunkl::{
    c_from_k_formula, c_from_trace, check_bracket, dunkl_commute, euler_consistency, euler_on_verma,
    lowest_weight_killed, restriction_multiplicity,
};
use cmcells::params::{kappa, ParamK};
use cmcells::{Cyclotomic, ParamC, ReflectionGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ab(g: &ReflectionGroup, a: i64, b: i64) -> ParamC {
    let s = g.reflection_of(g.element_by_name("s").unwrap()).unwrap().class;
    let mut v = vec![Cyclotomic::zero(); 2];
    v[s] = Cyclotomic::from_int(a);
    v[1 - s] = Cyclotomic::from_int(b);
    ParamC::new(g, v).unwrap()
}

#[test]
fn b2_class_names_follow_generators() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let s = g.reflection_of(g.element_by_name("s").unwrap()).unwrap().class;
    assert_eq!(g.class_names[s], "a");
}

#[test]
fn bracket_b2_and_cyclic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [ReflectionGroup::weyl_b2().unwrap(), ReflectionGroup::cyclic(5).unwrap()] {
        let c = ParamC::random(&g, &mut rng);
        for t in [Cyclotomic::zero(), Cyclotomic::one()] {
            let r = check_bracket(&g, &c, 6, &t).unwrap();
            assert!(r.passed(), "{:?}", r.witnesses);
            assert_eq!(r.max_degree, 6);
        }
    }
}

#[test]
fn bracket_rejects_small_cap_and_zero_parameter_commutes() {
    let g = ReflectionGroup::cyclic(3).unwrap();
    assert!(check_bracket(&g, &ParamC::zero(&g), 1, &Cyclotomic::zero()).is_err());
    let r = check_bracket(&g, &ParamC::zero(&g), 3, &Cyclotomic::zero()).unwrap();
    assert!(r.passed());
}

#[test]
fn dunkl_on_linear_function_rank_one() {
    let g = ReflectionGroup::cyclic(2).unwrap();
    let c = ParamC::new(&g, vec![Cyclotomic::from_int(3)]).unwrap();
    let slice =
        cmcells::dunkl::VermaSlice::new(&g, &c, Cyclotomic::zero(), cmcells::reps::Representation::regular(&g), 2)
            .unwrap();
    let x = cmcells::dunkl::VermaVector::basis(1, 0);
    let y = [Cyclotomic::one()];
    let out = slice.dunkl_act(&y, &x).unwrap();
    // y·(x ⊗ e_1) = −ε c ⟨y,α⟩ (s(x) − x)/α ⊗ e_s = −(−1)(3)(1)(−2) ⊗ e_s = −6 ⊗ e_s
    assert_eq!(out.terms.len(), 1);
    let ((m, i), v) = out.terms.iter().next().unwrap();
    assert_eq!((*m, *i), (0, g.element_by_name("s").unwrap()));
    assert_eq!(*v, Cyclotomic::from_int(-6));
}

#[test]
fn dunkl_commutation_all_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in [
        ReflectionGroup::dihedral(3).unwrap(),
        ReflectionGroup::dihedral(5).unwrap(),
        ReflectionGroup::weyl_b2().unwrap(),
    ] {
        let c = ParamC::random(&g, &mut rng);
        assert!(dunkl_commute(&g, &c, 5, &Cyclotomic::zero()).unwrap());
        assert!(dunkl_commute(&g, &c, 5, &Cyclotomic::one()).unwrap());
        assert!(lowest_weight_killed(&g, &c).unwrap());
    }
}

#[test]
fn b2_euler_values_match_table() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let (a, b) = (3, -5);
    let c = ab(&g, a, b);
    let expect = [-2 * (b + a), -2 * (b - a), 2 * (b - a), 2 * (b + a), 0];
    for (chi, e) in t.irr.iter().zip(expect) {
        assert_eq!(euler_on_verma(&g, &t, chi, &c).unwrap(), Cyclotomic::from_int(e), "{}", chi.name);
        assert_eq!(c_from_trace(&g, &t, chi, &c), Cyclotomic::from_int(e));
        assert_eq!(euler_consistency(&g, &t, chi, &c).unwrap(), Cyclotomic::from_int(e));
    }
}

#[test]
fn b2_k_formula_examples() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let k = ParamK::new(
        &g,
        vec![
            vec![Cyclotomic::from_int(2), Cyclotomic::from_int(-2)],
            vec![Cyclotomic::from_frac(1, 3), Cyclotomic::from_frac(-1, 3)],
        ],
    )
    .unwrap();
    let triv = t.index_of("1").unwrap();
    let chi = t.index_of("chi").unwrap();
    let expect = &(&Cyclotomic::from_int(4) * &k.values[0][0]) + &(&Cyclotomic::from_int(4) * &k.values[1][0]);
    assert_eq!(c_from_k_formula(&g, &t, &t.irr[triv], &k), expect);
    assert_eq!(c_from_k_formula(&g, &t, &t.irr[chi], &k), Cyclotomic::zero());
    for a in 0..2 {
        assert_eq!(restriction_multiplicity(&g, &t, &t.irr[triv], a, 0), Cyclotomic::one());
        assert_eq!(restriction_multiplicity(&g, &t, &t.irr[triv], a, 1), Cyclotomic::zero());
        assert_eq!(restriction_multiplicity(&g, &t, &t.irr[chi], a, 1), Cyclotomic::one());
    }
}

#[test]
fn cyclic_euler_is_d_times_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for d in 2..=6u32 {
        let g = ReflectionGroup::cyclic(d).unwrap();
        let t = irr_characters(&g).unwrap();
        let k = ParamK::random(&g, &mut rng);
        let c = cmcells::params::kappa_inverse(&g, &k);
        assert_eq!(kappa(&g, &c), k);
        for i in 0..d as usize {
            let idx = i;
            let want = &Cyclotomic::from_int(d as i64) * &k.values[0][(d as usize - i) % d as usize];
            assert_eq!(euler_consistency(&g, &t, &t.irr[idx], &c).unwrap(), want, "d={d} i={i}");
        }
    }
}

#[test]
fn euler_vanishes_at_zero() {
    for g in [
        ReflectionGroup::weyl_b2().unwrap(),
        ReflectionGroup::dihedral(6).unwrap(),
        ReflectionGroup::cyclic(4).unwrap(),
    ] {
        let t = irr_characters(&g).unwrap();
        for chi in &t.irr {
            assert!(euler_consistency(&g, &t, chi, &ParamC::zero(&g)).unwrap().is_zero());
        }
    }
}
