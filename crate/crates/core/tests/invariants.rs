use wkit_core::invariants::{
    capelli_rdet, gl_algebra, non_commuting_generators, o_algebra, omega_k, subsets, IndexSet,
    PfaffianContext,
};
use wkit_core::liealg::casimir2;
use wkit_core::ncalg::NcPoly;
use wkit_core::scalar::{frac, int};

#[test]
fn capelli_elements_are_central() {
    for n in 2..=3 {
        let alg = gl_algebra(n).unwrap();
        let cs = capelli_rdet(&alg).unwrap();
        assert_eq!(cs.len(), n);
        for (i, c) in cs.iter().enumerate() {
            assert!(non_commuting_generators(&alg, c).unwrap().is_empty(), "gl{n} c{}", i + 1);
        }
        for a in &cs {
            for b in &cs {
                assert!(alg.commutator(a, b).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn power_traces() {
    let alg = gl_algebra(3).unwrap();
    for k in 1..=3 {
        let w = omega_k(&alg, k).unwrap();
        assert!(non_commuting_generators(&alg, &w).unwrap().is_empty(), "Omega_{k}");
    }
    // Omega_2 = sum E_ij E_ji is 2n times the Casimir of the form 2n tr
    for n in 2..=3 {
        let alg = gl_algebra(n).unwrap();
        let w2 = omega_k(&alg, 2).unwrap();
        let cas = casimir2(&alg).unwrap();
        assert_eq!(w2, cas.scale(&int(2 * n as i64)), "gl{n}");
    }
}

fn set(v: &[usize], n: usize) -> IndexSet {
    IndexSet::new(v.to_vec(), n).unwrap()
}

#[test]
fn four_index_pfaffian_by_matchings() {
    let alg = o_algebra(4).unwrap();
    let mut ctx = PfaffianContext::new(&alg).unwrap();
    let f = |i, j| ctx.f(i, j).unwrap();
    let sym = |a: NcPoly, b: NcPoly| &alg.multiply(&a, &b).unwrap() + &alg.multiply(&b, &a).unwrap();
    let expected = (&(&sym(f(1, 2), f(3, 4)) - &sym(f(1, 3), f(2, 4))) + &sym(f(1, 4), f(2, 3))).scale(&frac(1, 2));
    let pf = ctx.pfaffian(&set(&[1, 2, 3, 4], 4)).unwrap();
    assert_eq!(pf, expected);

    let swapped = ctx.pfaffian_of_sequence(&[2, 1, 3, 4]).unwrap();
    assert_eq!(swapped, -&pf);
    let cycled = ctx.pfaffian_of_sequence(&[2, 3, 4, 1]).unwrap();
    assert_eq!(cycled, -&pf);
    let sq = alg.multiply(&pf, &pf).unwrap();
    assert_eq!(alg.multiply(&swapped, &swapped).unwrap(), sq);
    assert_eq!(alg.multiply(&cycled, &cycled).unwrap(), sq);
}

#[test]
fn orthogonal_capelli_elements_are_central() {
    for (n, ks) in [(3usize, vec![2usize]), (4, vec![2, 4]), (5, vec![2])] {
        let alg = o_algebra(n).unwrap();
        let mut ctx = PfaffianContext::new(&alg).unwrap();
        for k in ks {
            let c = ctx.capelli(k).unwrap();
            assert!(non_commuting_generators(&alg, &c).unwrap().is_empty(), "o{n} C{k}");
        }
    }
    let alg = o_algebra(4).unwrap();
    let mut ctx = PfaffianContext::new(&alg).unwrap();
    assert!(ctx.capelli(3).is_err());
    assert!(ctx.capelli(6).is_err());
}

#[test]
fn generator_pfaffian_brackets_exhaustive() {
    for n in 3..=4 {
        let alg = o_algebra(n).unwrap();
        let mut ctx = PfaffianContext::new(&alg).unwrap();
        for k in (2..=n).step_by(2) {
            for s in subsets(n, k) {
                let s = set(&s, n);
                for i in 1..=n {
                    for j in i + 1..=n {
                        let r = ctx.pf_bracket(i, j, &s).unwrap();
                        assert!(r.equal, "o{n} F[{i},{j}] on {}", s.label());
                    }
                }
            }
        }
    }
}

#[test]
fn generator_pfaffian_bracket_in_o5() {
    let alg = o_algebra(5).unwrap();
    let mut ctx = PfaffianContext::new(&alg).unwrap();
    let r = ctx.pf_bracket(4, 5, &set(&[1, 2, 3, 4], 5)).unwrap();
    assert!(r.equal);
    let keys: Vec<Vec<usize>> = r.action.keys().map(|s| s.indices().to_vec()).collect();
    assert_eq!(keys, [vec![1, 2, 3, 5]]);
    assert!(!r.left.is_zero());
}

#[test]
fn pfaffian_pfaffian_probe() {
    let alg = o_algebra(4).unwrap();
    let mut ctx = PfaffianContext::new(&alg).unwrap();
    let p = ctx.pf_pf_bracket_probe(&set(&[1, 2], 4), &set(&[1, 2], 4)).unwrap();
    assert!(p.left.is_zero());

    let alg5 = o_algebra(5).unwrap();
    let mut ctx5 = PfaffianContext::new(&alg5).unwrap();
    let p = ctx5.pf_pf_bracket_probe(&set(&[1, 2], 5), &set(&[3, 4], 5)).unwrap();
    assert!(p.left.is_zero());

    // for |I| = 2 the split reading reduces to the generator relation
    let p = ctx.pf_pf_bracket_probe(&set(&[1, 3], 4), &set(&[1, 2], 4)).unwrap();
    assert!(!p.left.is_zero());
    assert!(p.matching().contains(&"split-signed"));

    let p = ctx.pf_pf_bracket_probe(&set(&[1, 2], 4), &set(&[1, 2, 3, 4], 4)).unwrap();
    assert!(p.left.is_zero());
    assert_eq!(p.matching().len(), 4);

    // Pf F_{1234} is central in o4: only the reversed factor order gives 0
    let p = ctx.pf_pf_bracket_probe(&set(&[1, 2, 3, 4], 4), &set(&[1, 3], 4)).unwrap();
    assert!(p.left.is_zero());
    assert_eq!(p.matching(), ["split-signed-reversed"]);
}

#[test]
fn pfaffian_pfaffian_relation_with_reversed_factors() {
    for n in 4..=5 {
        let alg = o_algebra(n).unwrap();
        let mut ctx = PfaffianContext::new(&alg).unwrap();
        for ki in [2, 4] {
            for kj in [2, 4] {
                for a in subsets(n, ki) {
                    for b in subsets(n, kj) {
                        let p = ctx.pf_pf_bracket_probe(&set(&a, n), &set(&b, n)).unwrap();
                        assert!(p.matching().contains(&"split-signed-reversed"), "o{n} {a:?} {b:?}");
                    }
                }
            }
        }
    }
}
