use num_integer::Integer;

use crate::poly::{transpose, IntPoly, Poly};
use crate::ring::Ring;

/// Gcd over Z[x] by the primitive remainder sequence, with positive leading
/// coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().scalar_mul(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scalar_mul(&a.content());
    }
    let c = a.content().gcd(&b.content());
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b).primitive_part();
        a = b;
        b = r;
    }
    if a.degree() == Some(0) {
        IntPoly::constant(c)
    } else {
        a.scalar_mul(&c)
    }
}

/// Primitive squarefree part `f / gcd(f, f')`.
pub fn squarefree(f: &IntPoly) -> IntPoly {
    let f = f.primitive_part();
    if f.degree().unwrap_or(0) < 2 {
        return f;
    }
    let g = gcd(&f, &f.derivative());
    if g.degree() == Some(0) {
        return f;
    }
    f.exact_div(&g)
        .expect("a polynomial is divisible by its gcd with its derivative")
        .primitive_part()
}

/// Split `p` (outer variable over Z[inner]) into `(content, p / content)`
/// where the content is the gcd in Z[inner] of all outer coefficients.
pub fn inner_content(p: &Poly<IntPoly>) -> (IntPoly, Poly<IntPoly>) {
    let g = p.coeffs().iter().fold(IntPoly::zero(), |g, c| gcd(&g, c));
    if g.is_zero() || g == IntPoly::one() {
        return (IntPoly::one(), p.clone());
    }
    let q = p.map(|c| c.exact_div(&g).expect("content divides every coefficient"));
    (g, q)
}

/// Remove factors of `p` that depend on the outer variable only.
pub fn strip_outer_content(p: &Poly<IntPoly>) -> (IntPoly, Poly<IntPoly>) {
    let (g, q) = inner_content(&transpose(p));
    (g, transpose(&q))
}
