use std::collections::BTreeMap;

use proptest::prelude::*;
use wkit_core::emit::Style;
use wkit_core::psido::agd::{agd_bracket, LocalBracket};
use wkit_core::psido::diff::{self, euler, field, is_total_derivative, jet, Alphabet, DiffPoly};
use wkit_core::psido::{field_flows, fractional_plus, nth_root, time_derivative, PsiDO};
use wkit_core::scalar::{frac, int, Scalar};

const U: u16 = 0;
const V: u16 = 1;

fn kdv_operator() -> PsiDO {
    PsiDO::exact([(2, DiffPoly::one()), (0, field(U))])
}

fn boussinesq_operator() -> PsiDO {
    PsiDO::exact([(3, DiffPoly::one()), (1, field(U)), (0, field(V))])
}

fn primary_operator() -> PsiDO {
    PsiDO::exact([
        (3, DiffPoly::one()),
        (1, field(U).scale(&int(2))),
        (0, &jet(U, 1) + &field(V)),
    ])
}

fn kernel_of(terms: &[(u32, DiffPoly)]) -> BTreeMap<u32, DiffPoly> {
    terms.iter().cloned().filter(|(_, p)| !p.is_zero()).collect()
}

/// `sum_m P_m d^m q`.
fn apply_kernel(kernel: &BTreeMap<u32, DiffPoly>, q: &DiffPoly) -> DiffPoly {
    kernel
        .iter()
        .fold(DiffPoly::zero(), |acc, (m, p)| &acc + &(p * &diff::d_n(q, *m)))
}

/// `u_t = {u, H}` with `H = (n/k) Tr L^(k/n)`.
fn hamiltonian_flow(bracket: &LocalBracket, l: &PsiDO, n: usize, k: u32, f: u16) -> DiffPoly {
    let power = nth_root(l, n, -(k as i32) - 4)
        .unwrap()
        .power(k, -2)
        .unwrap();
    let density = power.res().unwrap().scale(&frac(n as i64, k as i64));
    bracket.fields.iter().fold(DiffPoly::zero(), |acc, &g| {
        &acc + &apply_kernel(&bracket.kernel(f, g), &euler(&density, g))
    })
}

#[test]
fn compose_examples() {
    let u = field(U);
    let left = PsiDO::partial(1).compose(&PsiDO::function(u.clone()), -4).unwrap();
    assert_eq!(left, PsiDO::exact([(1, u.clone()), (0, jet(U, 1))]));

    let inv = PsiDO::partial(-1).compose(&PsiDO::partial(1), -4).unwrap();
    assert!(inv.agrees_with(&PsiDO::one()));

    let series = PsiDO::partial(-1).compose(&PsiDO::function(u.clone()), -4).unwrap();
    let expected = PsiDO::exact([
        (-1, u.clone()),
        (-2, -jet(U, 1)),
        (-3, jet(U, 2)),
        (-4, -jet(U, 3)),
    ])
    .truncated(-4);
    assert_eq!(series, expected);
    assert_eq!(series.res().unwrap(), u);
}

#[test]
fn kdv_root_and_plus_part() {
    let a = Alphabet::from_strs(&["u"]);
    let root = nth_root(&kdv_operator(), 2, -3).unwrap();
    assert_eq!(root.coeff(1), DiffPoly::one());
    assert_eq!(root.coeff(0), DiffPoly::zero());
    assert_eq!(root.coeff(-1), field(U).scale(&frac(1, 2)));
    assert_eq!(root.coeff(-2), jet(U, 1).scale(&frac(-1, 4)));

    let plus = fractional_plus(&kdv_operator(), 3, -6).unwrap();
    assert_eq!(plus.render(&a, Style::Text), "d^3 + 3/2*u*d + 3/4*u'");
}

#[test]
fn boussinesq_root_and_plus_part() {
    let a = Alphabet::from_strs(&["u", "v"]);
    let root = nth_root(&boussinesq_operator(), 3, -3).unwrap();
    assert_eq!(root.coeff(-1), field(U).scale(&frac(1, 3)));
    let plus = fractional_plus(&boussinesq_operator(), 2, -6).unwrap();
    assert_eq!(plus.render(&a, Style::Text), "d^2 + 2/3*u");
}

#[test]
fn translation_and_trivial_flows() {
    let flows = field_flows(&kdv_operator(), 1, -6).unwrap();
    assert_eq!(flows[&U], jet(U, 1));
    let trivial = field_flows(&kdv_operator(), 2, -6).unwrap();
    assert!(trivial.values().all(DiffPoly::is_zero));
}

#[test]
fn kdv_and_boussinesq_flows() {
    let a = Alphabet::from_strs(&["u", "v"]);
    let kdv = field_flows(&kdv_operator(), 3, -6).unwrap();
    assert_eq!(a.text(&kdv[&U].scale(&int(4))), "u''' + 6*u*u'");

    let flows = field_flows(&boussinesq_operator(), 2, -6).unwrap();
    assert_eq!(a.text(&flows[&U]), "2*v' - u''");
    assert_eq!(a.text(&flows[&V]), "v'' - 2/3*u''' - 2/3*u*u'");

    let utt = time_derivative(&flows[&U], &flows).unwrap();
    let u = field(U);
    let expected = &jet(U, 4).scale(&frac(-1, 3)) + &diff::d(&(&u * &jet(U, 1))).scale(&frac(-4, 3));
    assert_eq!(utt, expected);
}

#[test]
fn virasoro_kernel() {
    let bracket = agd_bracket(&kdv_operator(), -10).unwrap();
    let u = field(U);
    let expected = kernel_of(&[
        (3, DiffPoly::constant(frac(1, 2))),
        (1, u.scale(&int(2))),
        (0, jet(U, 1)),
    ]);
    assert_eq!(bracket.kernel(U, U), expected);
    assert!(bracket.antisymmetry_moments(3).iter().all(|m| m.vanishes));
}

#[test]
fn third_order_table() {
    let bracket = agd_bracket(&primary_operator(), -10).unwrap();
    let u = field(U);
    let v = field(V);
    let half = frac(1, 2);
    let uu = kernel_of(&[
        (3, DiffPoly::constant(half.clone())),
        (1, u.clone()),
        (0, jet(U, 1).scale(&half)),
    ]);
    assert_eq!(bracket.kernel(U, U), uu);
    let uv = kernel_of(&[(1, v.scale(&frac(3, 2))), (0, jet(V, 1))]);
    assert_eq!(bracket.kernel(U, V), uv);

    let sixth = frac(-1, 6);
    let vv = kernel_of(&[
        (5, DiffPoly::constant(sixth.clone())),
        (3, u.scale(&frac(-10, 6))),
        (2, jet(U, 1).scale(&frac(-15, 6))),
        (1, &jet(U, 2).scale(&frac(-9, 6)) + &(&u * &u).scale(&frac(-16, 6))),
        (0, &jet(U, 3).scale(&frac(-2, 6)) + &(&u * &jet(U, 1)).scale(&frac(-16, 6))),
    ]);
    assert_eq!(bracket.kernel(V, V), vv);
    assert!(bracket.antisymmetry_moments(3).iter().all(|m| m.vanishes));
}

#[test]
fn flows_are_hamiltonian() {
    let kdv = kdv_operator();
    let bracket = agd_bracket(&kdv, -10).unwrap();
    for k in [1, 3, 5] {
        let flows = field_flows(&kdv, k, -12).unwrap();
        assert_eq!(hamiltonian_flow(&bracket, &kdv, 2, k, U), flows[&U], "k = {k}");
    }

    let bous = boussinesq_operator();
    let bracket = agd_bracket(&bous, -12).unwrap();
    for k in [1, 2, 4] {
        let flows = field_flows(&bous, k, -12).unwrap();
        for f in [U, V] {
            assert_eq!(hamiltonian_flow(&bracket, &bous, 3, k, f), flows[&f], "k = {k}");
        }
    }
}

fn coefficient() -> impl Strategy<Value = DiffPoly> {
    prop_oneof![
        Just(DiffPoly::one()),
        Just(field(U)),
        Just(jet(U, 1)),
        Just(field(V)),
    ]
}

fn operator() -> impl Strategy<Value = PsiDO> {
    prop::collection::vec((-3i32..=3, coefficient(), -2i64..=2), 1..4).prop_map(|terms| {
        PsiDO::exact(
            terms
                .into_iter()
                .map(|(k, c, s)| (k, c.scale(&Scalar::from_integer(s.into())))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compose_is_associative(a in operator(), b in operator(), c in operator()) {
        let tops = [a.top_order(), b.top_order(), c.top_order()];
        prop_assume!(tops.iter().all(Option::is_some));
        let t = tops.iter().flatten().sum::<i32>().min(-6);
        let left = a.compose(&b, -12).unwrap().compose(&c, t).unwrap();
        let right = a.compose(&b.compose(&c, -12).unwrap(), t).unwrap();
        prop_assert!(left.agrees_with(&right));
        prop_assert_eq!(left.truncated(t), right.truncated(t));
    }

    #[test]
    fn residue_of_commutator_is_exact(a in operator(), b in operator()) {
        let comm = a.commutator(&b, -8).unwrap();
        let r = comm.res().unwrap();
        prop_assert!(is_total_derivative(&r));
        let q = diff::integrate(&r).unwrap();
        prop_assert_eq!(diff::d(&q), r);
    }
}

#[test]
fn root_round_trips() {
    for (l, n) in [(kdv_operator(), 2usize), (boussinesq_operator(), 3)] {
        let root = nth_root(&l, n, -6 - n as i32).unwrap();
        let back = root.power(n as u32, -6).unwrap();
        assert!(back.agrees_with(&l), "n = {n}");
        assert_eq!(back.truncated(-6), l.truncated(-6));
    }
    let exact = nth_root(&PsiDO::partial(2), 2, -6).unwrap();
    assert_eq!(exact.truncated(-6), PsiDO::partial(1).truncated(-6));
}
