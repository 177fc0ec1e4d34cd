use cmcells::characters::irr_characters;
use cmcells::families::{cm_families, essential_hyperplanes, euler_partition};
use cmcells::params::{kappa_inverse, ParamK};
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

fn sorted(blocks: &[&[&str]]) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = blocks
        .iter()
        .map(|b| {
            let mut x: Vec<String> = b.iter().map(|s| s.to_string()).collect();
            x.sort();
            x
        })
        .collect();
    v.sort();
    v
}

#[test]
fn b2_regimes() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let cases: [((i64, i64), &[&[&str]]); 7] = [
        ((0, 0), &[&["1", "eps_s", "eps_t", "eps", "chi"]]),
        ((0, 3), &[&["1", "eps_s"], &["eps_t", "eps"], &["chi"]]),
        ((-2, 0), &[&["1", "eps_t"], &["eps_s", "eps"], &["chi"]]),
        ((1, 1), &[&["1"], &["eps"], &["eps_s", "eps_t", "chi"]]),
        ((1, -1), &[&["eps_s"], &["eps_t"], &["1", "eps", "chi"]]),
        ((1, 2), &[&["1"], &["eps_s"], &["eps_t"], &["eps"], &["chi"]]),
        ((-3, 5), &[&["1"], &["eps_s"], &["eps_t"], &["eps"], &["chi"]]),
    ];
    for ((a, b), expect) in cases {
        let p = cm_families(&g, &t, &ab(&g, a, b)).unwrap();
        assert!(p.exact);
        assert_eq!(p.named(&t), sorted(expect), "a={a} b={b}");
        assert!(p.refines(&euler_partition(&g, &t, &ab(&g, a, b)).unwrap()));
    }
}

#[test]
fn b2_euler_partition_examples() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let p = euler_partition(&g, &t, &ab(&g, 1, 1)).unwrap();
    assert!(!p.exact);
    assert_eq!(p.named(&t), sorted(&[&["1"], &["eps"], &["eps_s", "eps_t", "chi"]]));
    assert_eq!(euler_partition(&g, &t, &ab(&g, 1, 2)).unwrap().blocks.len(), 5);
    let chi = t.index_of("chi").unwrap();
    let fam = cm_families(&g, &t, &ab(&g, 1, 1)).unwrap();
    let blk = &fam.blocks[fam.block_of(chi)];
    assert_eq!(blk.sum_dim_sq, 6);
    assert_eq!(t.irr[blk.min_b].name, "chi");
}

#[test]
fn cyclic_k_fibers() {
    let g = ReflectionGroup::cyclic(3).unwrap();
    let t = irr_characters(&g).unwrap();
    let k = ParamK::new(&g, vec![[1, 1, -2].iter().map(|&x| Cyclotomic::from_int(x)).collect()]).unwrap();
    let p = cm_families(&g, &t, &kappa_inverse(&g, &k)).unwrap();
    assert!(p.exact);
    assert_eq!(p.named(&t), sorted(&[&["1", "eps^2"], &["eps"]]));
    let big = &p.blocks[p.block_of(0)];
    assert_eq!(t.irr[big.min_b].name, "1");
}

#[test]
fn zero_parameter_is_one_family() {
    for g in [
        ReflectionGroup::weyl_b2().unwrap(),
        ReflectionGroup::cyclic(5).unwrap(),
        ReflectionGroup::dihedral(5).unwrap(),
    ] {
        let t = irr_characters(&g).unwrap();
        let p = cm_families(&g, &t, &ParamC::zero(&g)).unwrap();
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].sum_dim_sq, g.order());
    }
}

#[test]
fn dihedral_is_flagged_coarse() {
    let g = ReflectionGroup::dihedral(6).unwrap();
    let t = irr_characters(&g).unwrap();
    let c = ParamC::new(&g, vec![Cyclotomic::from_int(1), Cyclotomic::from_int(2)]).unwrap();
    let p = cm_families(&g, &t, &c).unwrap();
    assert!(!p.exact);
    assert_eq!(p.blocks.iter().map(|b| b.sum_dim_sq).sum::<usize>(), 12);
}

#[test]
fn hyperplanes_b2_and_cyclic() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let hs = essential_hyperplanes(&g, &t);
    let one = t.index_of("1").unwrap();
    let eps = t.index_of("eps").unwrap();
    let h = hs.iter().find(|h| (h.first, h.second) == (one.min(eps), one.max(eps))).unwrap();
    // C_1 − C_ε = −4(A + B)
    assert_eq!(h.eval(&ab(&g, 2, 5)), Cyclotomic::from_int(if one < eps { -28 } else { 28 }));
    assert!(hs.iter().all(|h| h.eval(&ParamC::zero(&g)).is_zero()));
    // Off every hyperplane all five characters are separated.
    let c = ab(&g, 2, 5);
    assert!(hs.iter().all(|h| !h.eval(&c).is_zero()));
    assert_eq!(cm_families(&g, &t, &c).unwrap().blocks.len(), 5);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in 2..=6u32 {
        let g = ReflectionGroup::cyclic(d).unwrap();
        let t = irr_characters(&g).unwrap();
        let hs = essential_hyperplanes(&g, &t);
        assert_eq!(hs.len(), (d * (d - 1) / 2) as usize);
        let k = ParamK::random(&g, &mut rng);
        let c = kappa_inverse(&g, &k);
        for h in &hs {
            // C_{ε^i} − C_{ε^j} = d (K_{−i} − K_{−j})
            let (i, j) = (h.first, h.second);
            let di = (d as usize - i) % d as usize;
            let dj = (d as usize - j) % d as usize;
            let want = &Cyclotomic::from_int(d as i64) * &(&k.values[0][di] - &k.values[0][dj]);
            assert_eq!(h.eval(&c), want);
        }
    }
}

#[test]
fn linear_characters_are_alone_off_hyperplanes() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let hs = essential_hyperplanes(&g, &t);
    for (a, b) in [(1, 2), (0, 3), (1, 1), (2, -2), (3, 0)] {
        let c = ab(&g, a, b);
        let fam = cm_families(&g, &t, &c).unwrap();
        for lin in (0..t.irr.len()).filter(|&i| t.degree(i) == 1) {
            let avoids = hs.iter().filter(|h| h.first == lin || h.second == lin).all(|h| !h.eval(&c).is_zero());
            if avoids {
                assert_eq!(fam.blocks[fam.block_of(lin)].chars.len(), 1);
            }
        }
    }
}
