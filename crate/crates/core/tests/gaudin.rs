use cmcells::characters::{irr_characters, CharacterTable};
use cmcells::gaudin::{
    cellular_characters, commutation_defect, euler_minpoly_check, left_cells, right_cells, track_spectrum,
    two_sided_candidate, CellPartition, GaudinData, GaudinPoint, PathSpec, Side,
};
use cmcells::params::{kappa_inverse, ParamK};
use cmcells::{Cyclotomic, Error, ParamC, ReflectionGroup};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

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

/// Cellular characters as sorted lists of `name` or `m·name` summands.
fn char_multiset(table: &CharacterTable, mults: &[Vec<u64>]) -> Vec<String> {
    let names = table.names();
    let mut out: Vec<String> = mults
        .iter()
        .map(|m| {
            let mut parts: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{k}{}", names[i]) })
                .collect();
            parts.sort();
            parts.join("+")
        })
        .collect();
    out.sort();
    out
}

fn expect_chars(list: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = list.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

/// Cellular characters add up to the regular character, and each has the
/// dimension of its block.
fn check_sum_rules(table: &CharacterTable, p: &CellPartition, order: usize) {
    let total: usize = p.blocks.iter().map(|b| b.elements.len()).sum();
    assert_eq!(total, order);
    let mut seen = vec![false; order];
    for b in &p.blocks {
        for &w in &b.elements {
            assert!(!seen[w], "element {w} in two blocks");
            seen[w] = true;
        }
    }
    for (b, cc) in p.blocks.iter().zip(&p.cellular) {
        assert_eq!(cc.dimension(table), b.elements.len());
    }
    for i in 0..table.irr.len() {
        let s: u64 = p.cellular.iter().map(|cc| cc.mults[i]).sum();
        assert_eq!(s as usize, table.degree(i), "Σ_C mult_C,χ = χ(1) fails for {}", table.irr[i].name);
    }
}

#[test]
fn rank_one_matrices_are_explicit() {
    let g = ReflectionGroup::cyclic(2).unwrap();
    let data = GaudinData::new(&g, Side::Left);
    let (c, v, vs) = (3.0, 2.0, 5.0);
    let ms =
        data.matrices(&GaudinPoint { c: vec![cx(c, 0.0)], v: vec![cx(v, 0.0)], vstar: vec![cx(vs, 0.0)] }).unwrap();
    let (one, s) = (g.identity(), 1 - g.identity());
    let (m, gg) = (vs, c / v);
    let m0 = &ms[0];
    assert!((m0[(one, one)] - cx(m, 0.0)).norm() < 1e-12);
    assert!((m0[(s, s)] - cx(-m, 0.0)).norm() < 1e-12);
    assert!((m0[(s, one)] - cx(-gg, 0.0)).norm() < 1e-12);
    assert!((m0[(one, s)] - cx(-gg, 0.0)).norm() < 1e-12);

    let err = data.matrices(&GaudinPoint { c: vec![cx(c, 0.0)], v: vec![cx(0.0, 0.0)], vstar: vec![cx(vs, 0.0)] });
    assert!(matches!(err, Err(Error::InvalidArgument(_))));
}

#[test]
fn degenerate_points_have_diagonal_or_zero_diagonal() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let data = GaudinData::new(&g, Side::Left);
    let v = vec![cx(3.0, 0.0), cx(1.0, 0.0)];
    let ms = data
        .matrices(&GaudinPoint { c: vec![cx(1.0, 0.0), cx(2.0, 0.0)], v: v.clone(), vstar: vec![cx(0.0, 0.0); 2] })
        .unwrap();
    for m in &ms {
        for w in 0..8 {
            assert_eq!(m[(w, w)], cx(0.0, 0.0));
        }
    }
    let vs = vec![cx(0.5, 0.0), cx(-1.25, 0.0)];
    let ms = data.matrices(&GaudinPoint { c: vec![cx(0.0, 0.0); 2], v, vstar: vs }).unwrap();
    for m in &ms {
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(m[(i, j)], cx(0.0, 0.0));
                }
            }
        }
    }
}

#[test]
fn operators_commute_and_are_right_equivariant() {
    let mut groups = vec![ReflectionGroup::weyl_b2().unwrap(), ReflectionGroup::dihedral(5).unwrap()];
    groups.extend((2..=5).map(|d| ReflectionGroup::cyclic(d).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in &groups {
        for side in [Side::Left, Side::Dual] {
            let data = GaudinData::new(g, side);
            let c = ParamC::random(g, &mut rng).to_complex();
            let v: Vec<Complex64> = g.regular_vector(3).iter().map(|q| cx(cmcells::groups::rat_f64(q), 0.0)).collect();
            let vs: Vec<Complex64> = (0..g.dim).map(|i| cx(0.7 - 0.3 * i as f64, 0.2 + 0.1 * i as f64)).collect();
            let ms = data.matrices(&GaudinPoint { c: c.clone(), v: v.clone(), vstar: vs }).unwrap();
            assert!(commutation_defect(g, &ms, false) <= 1e-9, "{} {side:?}", g.kind.label());
            let ms0 = data.matrices(&GaudinPoint { c, v, vstar: vec![cx(0.0, 0.0); g.dim] }).unwrap();
            assert!(commutation_defect(g, &ms0, true) <= 1e-9, "{} {side:?} at v* = 0", g.kind.label());
        }
    }
}

#[test]
fn rank_one_paths_follow_the_closed_form() {
    let g = ReflectionGroup::cyclic(2).unwrap();
    let data = GaudinData::new(&g, Side::Left);
    let (c, v, m) = (3.0, 2.0, 5.0);
    let gg = c / v;
    let spec = PathSpec::straight(vec![cx(v, 0.0)], vec![cx(m, 0.0)], vec![cx(c, 0.0)]);
    let tr = track_spectrum(&data, &spec, 1).unwrap();
    assert_eq!(tr.retries, 0);
    for p in &tr.paths {
        let sign = if p.label == g.identity() { 1.0 } else { -1.0 };
        for (t, rho) in &p.samples {
            let want = sign * (((1.0 - t) * m).powi(2) + (t * gg).powi(2)).sqrt();
            assert!((rho[0] - cx(want, 0.0)).norm() < 1e-8, "t = {t}: {} vs {want}", rho[0]);
        }
        assert!((p.terminal[0] - cx(sign * gg, 0.0)).norm() < 1e-9);
    }
}

#[test]
fn zero_parameter_paths_are_constant_then_vanish() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let data = GaudinData::new(&g, Side::Left);
    let spec =
        PathSpec::straight(vec![cx(3.0, 0.0), cx(1.0, 0.0)], vec![cx(-0.5, 0.0), cx(-2.0, 0.0)], vec![cx(0.0, 0.0); 2]);
    let tr = track_spectrum(&data, &spec, 1).unwrap();
    assert_eq!(tr.clustering.clusters.len(), 1);
    for p in &tr.paths {
        assert!(p.terminal.iter().all(|z| z.norm() < 1e-12));
    }
}

#[test]
fn b2_path_has_six_terminal_values() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let l = left_cells(&g, &t, &ab(&g, 1, 2), 7).unwrap();
    assert_eq!(l.blocks.len(), 6);
    let mut ts: Vec<Vec<Complex64>> = l.blocks.iter().map(|b| b.terminal.clone()).collect();
    ts.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < 1e-6));
    assert_eq!(ts.len(), 6);
}

#[test]
fn b2_cells_at_one_two() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let c = ab(&g, 1, 2);
    let l = left_cells(&g, &t, &c, 7).unwrap();
    assert_eq!(l.named(&g), sorted(&[&["1"], &["s"], &["tst"], &["stst"], &["t", "st"], &["ts", "sts"]]));
    assert!(l.margin >= 10.0);
    check_sum_rules(&t, &l, 8);
    let lm: Vec<Vec<u64>> = l.cellular.iter().map(|c| c.mults.clone()).collect();
    assert_eq!(char_multiset(&t, &lm), expect_chars(&["1", "eps_s", "eps_t", "eps", "chi", "chi"]));
    // Blocks of size two carry χ.
    for (b, cc) in l.blocks.iter().zip(&l.cellular) {
        if b.elements.len() == 2 {
            assert_eq!(cc.mults[t.index_of("chi").unwrap()], 1);
        }
    }

    let r = right_cells(&g, &t, &c, 7).unwrap();
    assert_eq!(r.sizes(), vec![1, 1, 1, 1, 2, 2]);
    check_sum_rules(&t, &r, 8);
    let inverted: Vec<Vec<usize>> = {
        let mut v: Vec<Vec<usize>> = l
            .partition()
            .iter()
            .map(|b| {
                let mut x: Vec<usize> = b.iter().map(|&w| g.inv(w)).collect();
                x.sort_unstable();
                x
            })
            .collect();
        v.sort();
        v
    };
    assert_eq!(r.partition(), inverted);
    // The right cell C^{-1} carries the cellular character of the left cell C.
    for (b, cc) in r.blocks.iter().zip(&r.cellular) {
        let li = l.block_of(g.inv(b.elements[0]));
        assert_eq!(cc.mults, l.cellular[li].mults);
    }

    let two = two_sided_candidate(&g, &t, &c, 7).unwrap();
    assert_eq!(two.named(&g), sorted(&[&["1"], &["s"], &["tst"], &["stst"], &["t", "st", "ts", "sts"]]));
    assert_eq!(two.exact, Some(true));
    check_sum_rules(&t, &two, 8);

    let cc = cellular_characters(&g, &t, &c, 7).unwrap();
    let m: Vec<Vec<u64>> = cc.iter().map(|c| c.mults.clone()).collect();
    assert_eq!(char_multiset(&t, &m), expect_chars(&["1", "eps_s", "eps_t", "eps", "chi", "chi"]));
}

#[test]
fn b2_cells_at_equal_parameters() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let c = ab(&g, 1, 1);
    let l = left_cells(&g, &t, &c, 7).unwrap();
    assert_eq!(l.named(&g), sorted(&[&["1"], &["stst"], &["s", "ts", "sts"], &["t", "st", "tst"]]));
    check_sum_rules(&t, &l, 8);
    let lm: Vec<Vec<u64>> = l.cellular.iter().map(|c| c.mults.clone()).collect();
    assert_eq!(char_multiset(&t, &lm), expect_chars(&["1", "eps", "chi+eps_s", "chi+eps_t"]));
    let two = two_sided_candidate(&g, &t, &c, 7).unwrap();
    assert_eq!(two.sizes(), vec![1, 1, 6]);
    let cc = cellular_characters(&g, &t, &c, 7).unwrap();
    let m: Vec<Vec<u64>> = cc.iter().map(|c| c.mults.clone()).collect();
    assert_eq!(char_multiset(&t, &m), expect_chars(&["1", "eps", "chi+eps_s", "chi+eps_t"]));
}

#[test]
fn b2_opposite_parameters_give_sizes_one_one_six() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let two = two_sided_candidate(&g, &t, &ab(&g, 1, -1), 7).unwrap();
    assert_eq!(two.sizes(), vec![1, 1, 6]);
    check_sum_rules(&t, &two, 8);
}

#[test]
fn zero_parameter_gives_one_cell() {
    let mut groups = vec![ReflectionGroup::weyl_b2().unwrap(), ReflectionGroup::dihedral(3).unwrap()];
    groups.extend((2..=4).map(|d| ReflectionGroup::cyclic(d).unwrap()));
    for g in &groups {
        let t = irr_characters(g).unwrap();
        let c = ParamC::zero(g);
        for p in [
            left_cells(g, &t, &c, 1).unwrap(),
            right_cells(g, &t, &c, 1).unwrap(),
            two_sided_candidate(g, &t, &c, 1).unwrap(),
        ] {
            assert_eq!(p.blocks.len(), 1, "{}", g.kind.label());
            assert_eq!(p.blocks[0].elements.len(), g.order());
            check_sum_rules(&t, &p, g.order());
        }
        let cc = cellular_characters(g, &t, &c, 1).unwrap();
        assert_eq!(cc.len(), 1);
        let degrees: Vec<u64> = (0..t.irr.len()).map(|i| t.degree(i) as u64).collect();
        assert_eq!(cc[0].mults, degrees);
    }
}

/// The `k`-fibres `{i : k_i = k_j}` as sorted index sets; the element `s^i`
/// has index `i`.
fn k_fibres(k: &ParamK) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..k.values[0].len() {
        match out.iter_mut().find(|b| k.values[0][b[0]] == k.values[0][i]) {
            Some(b) => b.push(i),
            None => out.push(vec![i]),
        }
    }
    out.sort();
    out
}

#[test]
fn cyclic_cells_are_k_fibres() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 2..=8u32 {
        let g = ReflectionGroup::cyclic(d).unwrap();
        let t = irr_characters(&g).unwrap();
        let n = d as usize;
        for _ in 0..6 {
            let k = ParamK::random(&g, &mut rng);
            let c = kappa_inverse(&g, &k);
            let fibres = k_fibres(&k);
            let l = left_cells(&g, &t, &c, 5).unwrap();
            let r = right_cells(&g, &t, &c, 5).unwrap();
            let two = two_sided_candidate(&g, &t, &c, 5).unwrap();
            assert_eq!(l.partition(), fibres, "left, d = {d}");
            assert_eq!(r.partition(), fibres, "right, d = {d}");
            assert_eq!(two.partition(), fibres, "two-sided, d = {d}");
            assert_eq!(two.exact, Some(true));
            for p in [&l, &r] {
                check_sum_rules(&t, p, n);
                for (b, cc) in p.blocks.iter().zip(&p.cellular) {
                    let mut want = vec![0u64; n];
                    for &i in &b.elements {
                        want[(n - i) % n] += 1;
                    }
                    assert_eq!(cc.mults, want, "d = {d}, block {:?}", b.elements);
                    let ki = k.values[0][b.elements[0]].embed_complex() * d as f64;
                    assert!((b.euler_limit - ki).norm() < 1e-6 * ki.norm().max(1.0), "Euler limit d·K_i");
                }
            }
        }
    }
}

#[test]
fn cyclic_three_example() {
    let g = ReflectionGroup::cyclic(3).unwrap();
    let t = irr_characters(&g).unwrap();
    let k = ParamK::new(&g, vec![[1, 1, -2].iter().map(|&x| Cyclotomic::from_int(x)).collect()]).unwrap();
    let c = kappa_inverse(&g, &k);
    let cc = cellular_characters(&g, &t, &c, 1).unwrap();
    let m: Vec<Vec<u64>> = cc.iter().map(|c| c.mults.clone()).collect();
    assert_eq!(char_multiset(&t, &m), expect_chars(&["1+eps^2", "eps"]));
}

#[test]
fn partitions_do_not_depend_on_the_seed() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    for (a, b) in [(1, 2), (1, 1), (2, -3)] {
        let c = ab(&g, a, b);
        let l0 = left_cells(&g, &t, &c, 0).unwrap().partition();
        let r0 = right_cells(&g, &t, &c, 0).unwrap().partition();
        for seed in 1..10 {
            assert_eq!(left_cells(&g, &t, &c, seed).unwrap().partition(), l0, "({a},{b}) seed {seed}");
            assert_eq!(right_cells(&g, &t, &c, seed).unwrap().partition(), r0, "({a},{b}) seed {seed}");
        }
    }
    let g = ReflectionGroup::cyclic(5).unwrap();
    let t = irr_characters(&g).unwrap();
    let c = kappa_inverse(&g, &ParamK::random(&g, &mut ChaCha8Rng::seed_from_u64(9)));
    let l0 = left_cells(&g, &t, &c, 0).unwrap().partition();
    for seed in 1..10 {
        assert_eq!(left_cells(&g, &t, &c, seed).unwrap().partition(), l0);
    }
}

#[test]
fn same_seed_is_bitwise_reproducible() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    let t = irr_characters(&g).unwrap();
    let c = ab(&g, 1, 2);
    let a = serde_json::to_string(&left_cells(&g, &t, &c, 4).unwrap().report(&g, &t)).unwrap();
    let b = serde_json::to_string(&left_cells(&g, &t, &c, 4).unwrap().report(&g, &t)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn dihedral_cells_satisfy_sum_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in 3..=6 {
        let g = ReflectionGroup::dihedral(m).unwrap();
        let t = irr_characters(&g).unwrap();
        for _ in 0..2 {
            let c = ParamC::random(&g, &mut rng);
            let l = left_cells(&g, &t, &c, 2).unwrap();
            check_sum_rules(&t, &l, g.order());
            let two = two_sided_candidate(&g, &t, &c, 2).unwrap();
            check_sum_rules(&t, &two, g.order());
        }
    }
}

#[test]
fn euler_polynomial_matches_closed_forms() {
    let g = ReflectionGroup::weyl_b2().unwrap();
    for c in [ab(&g, 1, 2), ab(&g, 1, 1), ab(&g, -3, 5), ParamC::zero(&g)] {
        let rep = euler_minpoly_check(&g, &c, 20, 1).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..=6 {
        let g = ReflectionGroup::cyclic(d).unwrap();
        for _ in 0..3 {
            let c = ParamC::random(&g, &mut rng);
            let rep = euler_minpoly_check(&g, &c, 20, 2).unwrap();
            assert!(rep.passed, "d = {d}: {rep:?}");
        }
    }
    let g = ReflectionGroup::dihedral(5).unwrap();
    assert!(matches!(euler_minpoly_check(&g, &ParamC::zero(&g), 1, 1), Err(Error::Unsupported(_))));
}

/// Two eigenvalue paths pass within a degree of crossing on the second leg
/// here; the cells are singletons either way, but a swap shows up in the
/// cellular characters and Euler limits.
#[test]
fn near_crossing_keeps_labels() {
    let g = ReflectionGroup::cyclic(5).unwrap();
    let t = irr_characters(&g).unwrap();
    let ks = [(1, 2), (-1, 2), (0, 1), (1, 1), (-1, 1)];
    let k = ParamK::new(&g, vec![ks.iter().map(|&(p, q)| Cyclotomic::from_frac(p, q)).collect()]).unwrap();
    let c = kappa_inverse(&g, &k);
    for seed in 0..5 {
        let l = left_cells(&g, &t, &c, seed).unwrap();
        for (b, cc) in l.blocks.iter().zip(&l.cellular) {
            let i = b.elements[0];
            assert_eq!(cc.mults[(5 - i) % 5], 1, "seed {seed}, element {i}");
            let want = k.values[0][i].embed_complex() * 5.0;
            assert!((b.euler_limit - want).norm() < 1e-6, "seed {seed}, element {i}: {}", b.euler_limit);
        }
    }
}
