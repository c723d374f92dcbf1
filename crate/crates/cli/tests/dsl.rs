use proptest::prelude::*;
use spbw_cli::corpus::{corpus, CORPUS};
use spbw_cli::dsl::{eval_in, parse_presentation, render_presentation, Code};
use spbw_core::{CoeffPoly, Scalar, SkewPoly};

#[test]
fn corpus_round_trips() {
    for (name, src) in CORPUS {
        let doc = parse_presentation(src).unwrap();
        let text = render_presentation(&doc);
        let again = parse_presentation(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(again, doc, "{name}");
        assert_eq!(render_presentation(&again), text, "{name}");
    }
}

#[test]
fn weyl_snapshot() {
    let doc = corpus().into_iter().find(|d| d.name == "weyl").unwrap();
    assert_eq!(doc.algebra.ngens(), 2);
    let rel = doc.algebra.presentation().relation(1, 0);
    assert_eq!(rel.d, CoeffPoly::one());
    assert_eq!(rel.r0, CoeffPoly::from_int(-1));
    assert!(rel.r.iter().all(|c| c.is_zero()));
    assert_eq!(render_presentation(&doc), "name weyl\ngens x1 x2\nrel x2 x1 = x1*x2 - 1\ncalculus theorem\n");
}

#[test]
fn aq_relations_follow_the_twist() {
    let doc = corpus().into_iter().find(|d| d.name == "aq").unwrap();
    let alg = &doc.algebra;
    let (x, y, z) = (alg.coord(0), alg.coord(1), alg.coord(2));
    let s2 = SkewPoly::scalar(Scalar::param(0).pow(2).unwrap());
    // xz = q zy, yz = zx
    assert_eq!(alg.mul(&x, &z), alg.mul_all(&[s2, z.clone(), y.clone()]));
    assert_eq!(alg.mul(&y, &z), alg.mul(&z, &x));
}

fn diag(text: &str) -> spbw_cli::dsl::Diagnostic {
    parse_presentation(text).unwrap_err()
}

#[test]
fn diagnostics_are_distinct_and_located() {
    let order = diag("gens x1 x2\nrel x1 x2 = x2 x1\n");
    assert_eq!((order.code, order.line, order.column), (Code::RelationOrder, 2, 5));
    assert_eq!(order.message, "relation must have higher generator first");
    let undeclared = diag("gens x1 x2\nrel x2 x1 = q*x1 x2\n");
    assert_eq!((undeclared.code, undeclared.line, undeclared.column), (Code::Undeclared, 2, 13));
    assert!(undeclared.message.starts_with("undeclared parameter"));
    let zero = diag("params q\ngens x1 x2\nrel x2 x1 = (q - q)*x1 x2\n");
    assert_eq!(zero.code, Code::ZeroCoefficient);
    let shape = diag("gens x1 x2\nrel x2 x1 = x1 x1\n");
    assert_eq!(shape.code, Code::RelationShape);
    let syntax = diag("gens x1 x2\nrel x2 x1 = x1 +\n");
    assert_eq!(syntax.code, Code::Syntax);
    let reserved = diag("gens z\ninvertible z\n");
    assert_eq!(reserved.code, Code::Reserved);
    let codes = [order.code, undeclared.code, zero.code, shape.code, syntax.code, reserved.code];
    for (i, a) in codes.iter().enumerate() {
        assert!(codes[i + 1..].iter().all(|b| b != a));
    }
    assert!(diag("gens x\nrel x x = 1\n").message.contains("higher generator"));
    assert_eq!(diag("gens x\ncalculus flat\nwedge dx dx = 2\n").code, Code::Invalid);
    assert_eq!(diag("params q\ngens x\ncalculus flat\ntwist dx: x -> x/0\n").code, Code::Invalid);
}

fn render_parse(name: &str) -> impl Fn(SkewPoly) -> Result<(), TestCaseError> {
    let doc = corpus().into_iter().find(|d| d.name == name).unwrap();
    move |f| {
        let alg = &doc.algebra;
        let text = alg.render(&f);
        let back = eval_in(alg, &text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, f, "{}", text);
        Ok(())
    }
}

fn element(ncoords: usize, nparams: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64, usize)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, ncoords), -4i64..5, 1i64..4, 0..=nparams), 0..4)
}

fn build(terms: Vec<(Vec<u32>, i64, i64, usize)>, m: usize) -> SkewPoly {
    let trim = spbw_core::exponents::trim;
    let mut f = SkewPoly::zero();
    for (e, n, d, p) in terms {
        let mut c = Scalar::ratio(n, d);
        if p > 0 {
            c = &c * &(&Scalar::param(p - 1) + &Scalar::one()).inv().unwrap();
        }
        f = &f + &SkewPoly::basis(trim(e[..m].to_vec()), trim(e[m..].to_vec()), c);
    }
    f
}

proptest! {
    #[test]
    fn rendered_elements_parse_back_qaffine3(terms in element(3, 3)) {
        render_parse("qaffine3")(build(terms, 0))?;
    }

    #[test]
    fn rendered_elements_parse_back_aq(terms in element(3, 1)) {
        render_parse("aq")(build(terms, 2))?;
    }
}
