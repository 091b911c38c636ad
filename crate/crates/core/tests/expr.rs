use proptest::prelude::*;
use wkit_core::expr::{self, eval_integer, eval_psido, eval_scalar, Expr, NcContext};
use wkit_core::invariants::gl_algebra;
use wkit_core::psido::diff::Alphabet;
use wkit_core::psido::PsiDO;
use wkit_core::scalar::{frac, int};
use wkit_core::Error;

#[test]
fn scalars() {
    assert_eq!(eval_scalar(&expr::parse("1/2 + 3*2^-1").unwrap()).unwrap(), int(2));
    assert_eq!(eval_integer(&expr::parse("-(2 + 3)").unwrap()).unwrap(), -5);
    assert!(matches!(eval_scalar(&expr::parse("1/0").unwrap()), Err(Error::Evaluation(_))));
}

#[test]
fn enveloping_algebra_expressions() {
    let alg = gl_algebra(2).unwrap();
    let ctx = NcContext::new(&alg);
    let c = ctx.eval(&expr::parse("[E[1,2], E[2,1]]").unwrap()).unwrap();
    let h = ctx.eval(&expr::parse("E[1,1] - E[2,2]").unwrap()).unwrap();
    assert_eq!(c, h);
    let lhs = ctx.eval(&expr::parse("E[2,1]*E[1,2]").unwrap()).unwrap();
    let rhs = ctx.eval(&expr::parse("E[1,2]*E[2,1] - E[1,1] + E[2,2]").unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert!(matches!(ctx.eval(&expr::parse("E[3,1]").unwrap()), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(ctx.eval(&expr::parse("q").unwrap()), Err(Error::UnknownSymbol(_))));

    let mut ctx = NcContext::new(&alg);
    ctx.named.insert("e".into(), ctx.eval(&expr::parse("E[1,2]").unwrap()).unwrap());
    assert_eq!(ctx.eval(&expr::parse("2*e/4").unwrap()).unwrap(), ctx.named["e"].scale(&frac(1, 2)));
}

#[test]
fn operator_expressions() {
    let e = expr::parse("d^2 + u").unwrap();
    assert_eq!(e.field_names(), ["u"]);
    let alphabet = Alphabet::new(e.field_names());
    let l = eval_psido(&e, &alphabet, -4).unwrap();
    assert_eq!(l.top_order(), Some(2));
    let du = eval_psido(&expr::parse("d*u").unwrap(), &alphabet, -4).unwrap();
    let expected = eval_psido(&expr::parse("u*d + u'").unwrap(), &alphabet, -4).unwrap();
    assert!(du.agrees_with(&expected));
    let inv = eval_psido(&expr::parse("d^-1*d").unwrap(), &alphabet, -4).unwrap();
    assert!(inv.agrees_with(&PsiDO::one()));
    assert!(eval_psido(&expr::parse("{u, u}").unwrap(), &alphabet, -4).is_err());
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..20).prop_map(|n| Expr::Num(int(n as i64))),
        ("[a-e]", prop::collection::vec(1usize..4, 0..3), 0u32..3)
            .prop_map(|(name, indices, primes)| Expr::Sym { name, indices, primes }),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            (inner.clone(), -3i64..4).prop_map(move |(x, k)| Expr::Pow(b(x), k)),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Commutator(b(x), b(y))),
            (inner.clone(), inner).prop_map(move |(x, y)| Expr::Poisson(b(x), b(y))),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(e in arb_expr()) {
        let text = e.to_string();
        let parsed = expr::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &e, "{}", text);
        prop_assert_eq!(parsed.to_string(), text);
    }
}
