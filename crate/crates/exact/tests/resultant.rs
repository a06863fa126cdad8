use hyperc_exact::{
    gcd, resultant, resultant_bareiss, resultant_bi, squarefree, BiPoly, BigInt, Error, IntPoly,
    Poly, Ring, Var,
};
use proptest::prelude::*;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn arithmetic_examples() {
    assert_eq!(p(&[-1, 1]).mul(&p(&[1, 1])), p(&[-1, 0, 1]));
    let f = p(&[0, 9, 6]);
    assert_eq!(f.content(), int(3));
    assert_eq!(f.primitive_part(), p(&[0, 3, 2]));
    assert_eq!(
        p(&[-1, 0, 1]).exact_divide(&p(&[1, 1])).unwrap(),
        p(&[-1, 1])
    );
    assert!(matches!(
        p(&[1, 0, 1]).exact_divide(&p(&[1, 1])),
        Err(Error::Divisibility(_))
    ));
    assert_eq!(p(&[5, 3, 0, 2]).derivative(), p(&[3, 0, 6]));
    assert_eq!(p(&[1, 2]).scalar_mul(&int(-3)), p(&[-3, -6]));
    assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
    assert!(IntPoly::new(vec![int(0)]).is_zero());
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])).unwrap(), int(3));
    let f = p(&[3, -1, 4, 1]);
    assert_eq!(resultant(&f, &f).unwrap(), int(0));
    assert!(matches!(
        resultant(&IntPoly::zero(), &f),
        Err(Error::Input(_))
    ));
}

/// `x − a` and `x − b` with `a`, `b` symbolic: the resultant is `a − b`.
#[test]
fn symbolic_linear_resultant() {
    // Coefficients live in Z[a][b].
    type Ab = Poly<IntPoly>;
    let one: Ab = Ab::one();
    let a: Ab = Poly::constant(p(&[0, 1]));
    let b: Ab = Poly::monomial(p(&[1]), 1);
    let f = Poly::new(vec![a.neg(), one.clone()]);
    let g = Poly::new(vec![b.neg(), one]);
    let r = resultant(&f, &g).unwrap();
    assert_eq!(r, a.sub(&b));
    for (x, y) in [(2, 5), (-3, 7), (4, 4)] {
        let val = r.eval(&p(&[y])).eval(&int(x));
        assert_eq!(val, int(x - y));
    }
}

#[test]
fn bivariate_elimination_vanishes_at_common_root() {
    // u² + v² − 5 and u − v − 1 meet at (2, 1) and (−1, −2).
    let c = |v: &[i64]| p(v);
    let circle: BiPoly = Poly::new(vec![c(&[-5, 0, 1]), c(&[0]), c(&[1])]);
    let line: BiPoly = Poly::new(vec![c(&[-1, -1]), c(&[1])]);
    let rv = resultant_bi(&circle, &line, Var::U).unwrap();
    assert_eq!(rv.eval(&int(1)), int(0));
    assert_eq!(rv.eval(&int(-2)), int(0));
    let ru = resultant_bi(&circle, &line, Var::V).unwrap();
    assert_eq!(ru.eval(&int(2)), int(0));
    assert_eq!(ru.eval(&int(-1)), int(0));
}

#[test]
fn squarefree_drops_repeated_factors() {
    let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 0, 1])).scalar_mul(&int(6));
    assert_eq!(squarefree(&f), p(&[-1, 1]).mul(&p(&[2, 0, 1])));
    assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1])), p(&[1, 1]));
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
        .prop_map(|c| p(&c))
        .prop_filter("nonconstant", |f| f.degree().unwrap_or(0) >= 1)
}

proptest! {
    #[test]
    fn resultant_is_multiplicative(f in small_poly(4), g in small_poly(4), h in small_poly(4)) {
        let lhs = resultant(&f.mul(&g), &h).unwrap();
        let rhs = resultant(&f, &h).unwrap().mul(&resultant(&g, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_is_antisymmetric(f in small_poly(4), g in small_poly(4)) {
        let df = f.degree().unwrap();
        let dg = g.degree().unwrap();
        let fg = resultant(&f, &g).unwrap();
        let gf = resultant(&g, &f).unwrap();
        prop_assert_eq!(fg, if df * dg % 2 == 1 { gf.neg() } else { gf });
    }

    #[test]
    fn prs_matches_bareiss(f in small_poly(12), g in small_poly(12)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), resultant_bareiss(&f, &g, 24).unwrap());
    }

    #[test]
    fn prs_matches_bareiss_over_polynomials(
        f in prop::collection::vec(small_poly(2), 2..5),
        g in prop::collection::vec(small_poly(2), 2..5),
    ) {
        let f: BiPoly = Poly::new(f);
        let g: BiPoly = Poly::new(g);
        prop_assume!(f.degree().unwrap_or(0) >= 1 && g.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(resultant(&f, &g).unwrap(), resultant_bareiss(&f, &g, 24).unwrap());
    }

    #[test]
    fn exact_divide_inverts_mul(f in small_poly(5), g in small_poly(5)) {
        prop_assert_eq!(f.mul(&g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn gcd_divides_both(f in small_poly(4), g in small_poly(4), h in small_poly(3)) {
        let a = f.mul(&h);
        let b = g.mul(&h);
        let d = gcd(&a, &b);
        prop_assert!(a.exact_divide(&d).is_ok());
        prop_assert!(b.exact_divide(&d).is_ok());
        prop_assert!(d.degree() >= h.degree());
    }
}
