use proptest::prelude::*;
use wkit_core::error::Error;
use wkit_core::invariants::omega_k;
use wkit_core::liealg::{self, FormKind, LieAlgebraSpec};
use wkit_core::ncalg::NcPoly;
use wkit_core::quantumw::{build_whittaker, whittaker_dynkin, RdetShift, WhittakerData};
use wkit_core::scalar::{frac, int, Scalar};
use wkit_core::sl2kit::{self, jm_from_partition, jm_regular_gl, Sl2Triple};

fn gl(n: usize, form: FormKind) -> LieAlgebraSpec {
    liealg::build_with_form("gl", n, form).unwrap()
}

fn principal(n: usize, form: FormKind) -> WhittakerData {
    let spec = gl(n, form);
    let triple = jm_regular_gl(n).in_spec(&spec).unwrap();
    whittaker_dynkin(spec, triple).unwrap()
}

fn unit(wd: &WhittakerData, i: usize, j: usize) -> NcPoly {
    let idx = wd.spec().index_of(&format!("E[{i},{j}]")).unwrap();
    wd.algebra().generator(idx).unwrap()
}

fn c(wd: &WhittakerData, x: Scalar) -> NcPoly {
    wd.algebra().constant(x)
}

/// `e + a h^2 + b h` in gl2 with `h = E11 - E22`.
fn gl2_candidate(wd: &WhittakerData, a: Scalar, b: Scalar) -> NcPoly {
    let alg = wd.algebra();
    let h = &unit(wd, 1, 1) - &unit(wd, 2, 2);
    let h2 = alg.multiply(&h, &h).unwrap();
    &(&unit(wd, 1, 2) + &h2.scale(&a)) + &h.scale(&b)
}

#[test]
fn gl2_whittaker_data() {
    let wd = principal(2, FormKind::Trace);
    let spec = wd.spec();
    let labels = |v: &[usize]| v.iter().map(|&i| spec.label(i).to_string()).collect::<Vec<_>>();
    assert_eq!(labels(wd.m_basis()), ["E[2,1]"]);
    assert_eq!(labels(wd.v_basis()), ["E[1,1]", "E[1,2]", "E[2,2]"]);
    let f = spec.index_of("E[2,1]").unwrap();
    assert_eq!(wd.chi(f), &int(1));

    let stored = principal(2, FormKind::Standard);
    assert_eq!(stored.chi(f), &int(4));

    let zero = {
        let spec = gl(2, FormKind::Standard);
        let t = Sl2Triple::zero(&spec);
        whittaker_dynkin(spec, t).unwrap()
    };
    assert!(zero.m_basis().is_empty());
    assert_eq!(zero.v_basis().len(), 4);
}

#[test]
fn gl3_principal_character() {
    let wd = principal(3, FormKind::Standard);
    let spec = wd.spec();
    let chi = |i: usize, j: usize| wd.chi(spec.index_of(&format!("E[{i},{j}]")).unwrap()).clone();
    assert_eq!(chi(2, 1), int(6));
    assert_eq!(chi(3, 2), int(6));
    assert_eq!(chi(3, 1), int(0));
    let trace = principal(3, FormKind::Trace);
    assert_eq!(trace.chi(spec.index_of("E[2,1]").unwrap()), &int(1));
}

#[test]
fn projection_examples() {
    let wd = principal(2, FormKind::Standard);
    let alg = wd.algebra();
    let f = unit(&wd, 2, 1);
    let e = unit(&wd, 1, 2);
    let h = &unit(&wd, 1, 1) - &unit(&wd, 2, 2);
    let chi = wd.chi(wd.m_basis()[0]).clone();
    assert!(wd.pr_chi(&(&f - &c(&wd, chi.clone()))).unwrap().is_zero());
    assert_eq!(wd.pr_chi(&alg.one()).unwrap(), alg.one());
    let ef = alg.multiply(&e, &f).unwrap();
    assert_eq!(wd.pr_chi(&ef).unwrap(), e.scale(&chi));
    let fe = alg.multiply(&f, &e).unwrap();
    assert_eq!(wd.pr_chi(&fe).unwrap(), &e.scale(&chi) - &h);
    assert_eq!(wd.kazhdan_degree(&e), Some(4));
    assert_eq!(wd.kazhdan_degree(&alg.multiply(&h, &h).unwrap()), Some(4));
    assert_eq!(wd.kazhdan_degree(&ef), Some(4));
    assert!(wd.kazhdan_degree(&wd.pr_chi(&ef).unwrap()) <= Some(4));
}

#[test]
fn gl2_generators_with_trace_form() {
    let wd = principal(2, FormKind::Trace);
    let alg = wd.algebra();
    let z = &unit(&wd, 1, 1) + &unit(&wd, 2, 2);
    let w = gl2_candidate(&wd, frac(1, 4), frac(-1, 2));
    assert!(wd.in_w(&z).unwrap());
    assert!(wd.in_w(&w).unwrap());
    assert!(!wd.in_w(&unit(&wd, 1, 1)).unwrap());
    assert!(alg.commutator(&z, &w).unwrap().is_zero());
    assert_eq!(wd.in_w(&unit(&wd, 2, 1)), Err(Error::NotInV));
}

#[test]
fn gl2_generator_depends_on_character_scale() {
    // with chi(f) = 4 the printed element fails and the rescaled one passes
    let wd = principal(2, FormKind::Standard);
    assert!(!wd.in_w(&gl2_candidate(&wd, frac(1, 4), frac(-1, 2))).unwrap());
    assert!(wd.in_w(&gl2_candidate(&wd, frac(1, 16), frac(-1, 8))).unwrap());
}

#[test]
fn zero_nilpotent_gives_everything() {
    let spec = gl(2, FormKind::Standard);
    let t = Sl2Triple::zero(&spec);
    let wd = whittaker_dynkin(spec, t).unwrap();
    let alg = wd.algebra();
    let x = alg.multiply(&unit(&wd, 1, 2), &unit(&wd, 2, 1)).unwrap();
    assert!(wd.in_w(&x).unwrap());
    let e12 = wd.spec().basis_element(wd.spec().index_of("E[1,2]").unwrap());
    assert_eq!(wd.theta_lift(&e12).unwrap(), unit(&wd, 1, 2));
    // F_j U(gl2) has dimension binom(4 + j/2, 4) for even j
    let dims = wd.w_basis_dims(4).unwrap();
    let computed: Vec<usize> = dims.iter().map(|d| d.computed).collect();
    assert_eq!(computed, [1, 1, 5, 5, 15]);
    assert!(dims.iter().all(|d| d.computed == d.expected));
}

#[test]
fn filtered_dimensions_match_centralizer_counts() {
    let wd = principal(2, FormKind::Trace);
    let dims = wd.w_basis_dims(8).unwrap();
    assert_eq!(dims[2].computed, 2);
    assert_eq!(dims[4].computed, 4);
    for d in &dims {
        assert_eq!(d.computed, d.expected, "gl2 degree {}", d.degree);
    }
    let stored = principal(2, FormKind::Standard);
    assert_eq!(stored.w_basis_dims(8).unwrap(), dims);

    let wd = principal(3, FormKind::Trace);
    for d in wd.w_basis_dims(6).unwrap() {
        assert_eq!(d.computed, d.expected, "gl3 degree {}", d.degree);
    }

    let spec = gl(4, FormKind::Standard);
    let triple = jm_from_partition(&[2, 2]).unwrap().in_spec(&spec).unwrap();
    let wd = whittaker_dynkin(spec, triple).unwrap();
    for d in wd.w_basis_dims(4).unwrap() {
        assert_eq!(d.computed, d.expected, "gl4 (2,2) degree {}", d.degree);
    }
}

#[test]
fn theta_lifts() {
    let wd = principal(2, FormKind::Trace);
    let spec = wd.spec();
    let z = &spec.basis_element(spec.index_of("E[1,1]").unwrap()) + &spec.basis_element(spec.index_of("E[2,2]").unwrap());
    let lz = wd.theta_lift(&z).unwrap();
    assert_eq!(lz, &unit(&wd, 1, 1) + &unit(&wd, 2, 2));

    let e = wd.triple().e.clone();
    let le = wd.theta_lift(&e).unwrap();
    assert!(wd.in_w(&le).unwrap());
    assert_eq!(wd.kazhdan_degree(&le), Some(4));
    // the printed representative differs from the lift by an element of W
    // of lower Kazhdan degree
    let printed = gl2_candidate(&wd, frac(1, 4), frac(-1, 2));
    let diff = &le - &printed;
    assert!(wd.in_w(&diff).unwrap());
    assert!(wd.kazhdan_degree(&diff) < Some(4));

    let gens = wd.generators().unwrap();
    assert_eq!(gens.len(), 2);
    assert!(gens.iter().all(|g| wd.in_w(g).unwrap()));

    let wd = principal(3, FormKind::Standard);
    let gens = wd.generators().unwrap();
    assert_eq!(gens.len(), 3);
    for g in &gens {
        assert!(wd.in_w(g).unwrap());
    }
    assert!(wd.symbols_independent(&gens));
}

#[test]
fn row_determinant_generators() {
    let wd = principal(2, FormKind::Trace);
    let alg = wd.algebra();
    let w = wd.w_rdet_generators(RdetShift::Increasing).unwrap();
    let e11 = unit(&wd, 1, 1);
    let e22 = unit(&wd, 2, 2);
    assert_eq!(w[0], &(&e11 + &e22) + &c(&wd, int(3)));
    let w2 = &alg
        .multiply(&(&e11 + &c(&wd, int(1))), &(&e22 + &c(&wd, int(2))))
        .unwrap()
        - &unit(&wd, 1, 2);
    assert_eq!(w[1], w2);
    assert!(w.iter().all(|x| wd.in_w(x).unwrap()));
    assert!(alg.commutator(&w[0], &w[1]).unwrap().is_zero());

    // the printed diagonal shifts u-1, u-2 give an element outside W
    let printed = wd.w_rdet_generators(RdetShift::Decreasing).unwrap();
    assert!(wd.in_w(&printed[0]).unwrap());
    assert!(!wd.in_w(&printed[1]).unwrap());

    for form in [FormKind::Trace, FormKind::Standard] {
        let wd = principal(3, form);
        let w = wd.w_rdet_generators(RdetShift::Increasing).unwrap();
        for x in &w {
            assert!(wd.in_w(x).unwrap());
        }
        for (_, _, comm) in wd.commutator_table(&w).unwrap() {
            assert!(comm.is_zero());
        }
        assert!(wd.symbols_independent(&w));
        let printed = wd.w_rdet_generators(RdetShift::Decreasing).unwrap();
        assert!(!printed.iter().all(|x| wd.in_w(x).unwrap()));
    }
}

#[test]
fn kostant_check() {
    for (n, ks) in [(2usize, vec![1usize, 2]), (3, vec![1, 2, 3])] {
        let wd = principal(n, FormKind::Trace);
        let images: Vec<NcPoly> = ks
            .iter()
            .map(|&k| wd.pr_chi(&omega_k(wd.algebra(), k).unwrap()).unwrap())
            .collect();
        for p in &images {
            assert!(wd.in_w(p).unwrap(), "gl{n}");
        }
        for (_, _, comm) in wd.commutator_table(&images).unwrap() {
            assert!(comm.is_zero(), "gl{n}");
        }
        assert!(wd.symbols_independent(&images), "gl{n}");
    }
}

#[test]
fn rejects_odd_and_bad_gradings() {
    let spec = gl(3, FormKind::Standard);
    let triple = jm_from_partition(&[2, 1]).unwrap().in_spec(&spec).unwrap();
    assert!(matches!(whittaker_dynkin(spec, triple), Err(Error::BadGrading(_))));

    let spec = gl(2, FormKind::Standard);
    let triple = jm_regular_gl(2).in_spec(&spec).unwrap();
    let stretched = sl2kit::grading_by_diagonal(&spec, &[int(2), int(-2)]).unwrap();
    assert!(matches!(build_whittaker(spec, triple, stretched), Err(Error::BadGrading(_))));
}

fn gl2_w_element() -> impl Strategy<Value = Vec<(u8, i64)>> {
    prop::collection::vec((0u8..3, -3i64..=3), 1..4)
}

/// Products of the gl2 generators z and `e + h^2/4 - h/2` with constants.
fn w_element(wd: &WhittakerData, spec: &[(u8, i64)]) -> NcPoly {
    let alg = wd.algebra();
    let z = &unit(wd, 1, 1) + &unit(wd, 2, 2);
    let w = gl2_candidate(wd, frac(1, 4), frac(-1, 2));
    let mut acc = alg.zero();
    for (shape, coef) in spec {
        let term = match shape {
            0 => z.clone(),
            1 => w.clone(),
            _ => alg.multiply(&w, &z).unwrap(),
        };
        acc = &acc + &term.scale(&int(*coef));
    }
    acc
}

fn word(dim: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..dim, -2i64..=2), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn w_is_closed_under_products(a in gl2_w_element(), b in gl2_w_element()) {
        let wd = principal(2, FormKind::Trace);
        let x = w_element(&wd, &a);
        let y = w_element(&wd, &b);
        let alg = wd.algebra();
        prop_assert!(wd.in_w(&alg.multiply(&x, &y).unwrap()).unwrap());
        prop_assert!(wd.in_w(&alg.commutator(&x, &y).unwrap()).unwrap());
    }

    #[test]
    fn projection_kills_the_ideal(terms in word(9), a in 0usize..3) {
        let wd = principal(3, FormKind::Standard);
        let alg = wd.algebra();
        let x = terms.iter().fold(alg.one(), |acc, (g, k)| {
            let factor = &alg.generator(*g).unwrap() + &alg.constant(int(*k));
            alg.multiply(&acc, &factor).unwrap()
        });
        let m = wd.m_basis()[a];
        let gen = &alg.generator(m).unwrap() - &alg.constant(wd.chi(m).clone());
        let in_ideal = alg.multiply(&x, &gen).unwrap();
        prop_assert!(wd.pr_chi(&in_ideal).unwrap().is_zero());
        let p = wd.pr_chi(&x).unwrap();
        prop_assert!(wd.in_v(&p));
        prop_assert_eq!(wd.pr_chi(&p).unwrap(), p.clone());
        let doubled = wd.pr_chi(&(&x + &x)).unwrap();
        prop_assert_eq!(doubled, p.scale(&int(2)));
    }
}
