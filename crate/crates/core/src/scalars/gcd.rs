//! Multivariate polynomial gcd via subresultant pseudo-remainder sequences.
//!
//! Laurent inputs are handled by splitting off their invertible monomial
//! content first; the recursive core works on ordinary polynomials with the
//! lowest-index variable as the main variable and contents/primitive parts
//! over the remaining ones.
//!
//! The result is *unit-normal*: free of monomial content and monic in the lex
//! leading coefficient, so it is the canonical representative of the gcd up to
//! units of the Laurent ring.

use super::poly::{LaurentMonomial, LaurentPoly, Var};

/// Unit-normal gcd of two Laurent polynomials.
///
/// By convention `poly_gcd(0, 0) = 1`; the canonicalization code never asks
/// for it, and `1` keeps the "divide both sides by the gcd" usage safe.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() && b.is_zero() {
        return LaurentPoly::one();
    }
    if a.is_zero() {
        return unit_normal(b);
    }
    if b.is_zero() {
        return unit_normal(a);
    }
    let a0 = a.mul_monomial(&a.content_monomial().inv());
    let b0 = b.mul_monomial(&b.content_monomial().inv());
    unit_normal(&gcd_nonneg(&a0, &b0))
}

/// Strips monomial content and rescales to a monic leading coefficient.
pub fn unit_normal(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let q = p.mul_monomial(&p.content_monomial().inv());
    let lc = q.leading().unwrap().1.clone();
    q.scale(&lc.recip())
}

/// Dense univariate view in a chosen main variable: `coeffs[k]` is the
/// coefficient of `x^k`, a polynomial in the remaining variables. Invariant:
/// empty, or the last entry is nonzero.
type Uni = Vec<LaurentPoly>;

fn gcd_nonneg(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return LaurentPoly::one();
    }
    let used_a = a.vars_used();
    let used_b = b.vars_used();
    let v = Var::ALL
        .iter()
        .copied()
        .find(|v| used_a[v.index()] || used_b[v.index()])
        .expect("non-constant polynomial uses a variable");

    let ua = to_uni(a, v);
    let ub = to_uni(b, v);
    let ca = uni_content(&ua);
    let cb = uni_content(&ub);
    let cg = poly_gcd(&ca, &cb);
    let pa = uni_exact_div(&ua, &ca);
    let pb = uni_exact_div(&ub, &cb);

    // If either argument is free of the main variable, every common divisor
    // is too, so only the contents contribute.
    if pa.len() == 1 || pb.len() == 1 {
        return cg;
    }

    let (mut big, mut small) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    let mut g = LaurentPoly::one();
    let mut h = LaurentPoly::one();
    loop {
        let delta = (big.len() - small.len()) as u32;
        let rem = prem(&big, &small);
        if rem.is_empty() {
            let cs = uni_content(&small);
            let pp = uni_exact_div(&small, &cs);
            return cg.mul(&from_uni(&pp, v));
        }
        if rem.len() == 1 {
            // Nonzero remainder free of the main variable: the primitive
            // parts are coprime.
            return cg;
        }
        let divisor = g.mul(&h.pow(delta));
        let next: Uni = rem
            .iter()
            .map(|c| {
                c.exact_div(&divisor)
                    .expect("subresultant pseudo-remainder division is exact")
            })
            .collect();
        g = small.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant leading-coefficient division is exact"),
        };
        big = small;
        small = next;
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b`, eliminating the
/// main variable's leading terms without coefficient-field division.
fn prem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Uni {
    let d = b.last().expect("divisor is nonzero");
    let db = b.len() - 1;
    let mut r: Uni = a.to_vec();
    let mut e = (a.len() - db) as i64; // deg a - deg b + 1
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        let mut nr: Uni = r.iter().map(|c| c.mul(d)).collect();
        for (i, bc) in b.iter().enumerate() {
            nr[i + k] = nr[i + k].sub(&bc.mul(&lr));
        }
        trim(&mut nr);
        r = nr;
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = d.pow(e as u32);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    r
}

fn trim(u: &mut Uni) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn to_uni(p: &LaurentPoly, v: Var) -> Uni {
    let mut out: Uni = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponent(v);
        debug_assert!(e >= 0, "univariate view requires nonnegative exponents");
        let e = e as usize;
        let rest = m.mul(&LaurentMonomial::var(v, -(e as i32)));
        if out.len() <= e {
            out.resize(e + 1, LaurentPoly::zero());
        }
        out[e] = out[e].add(&LaurentPoly::term(rest, c.clone()));
    }
    trim(&mut out);
    out
}

fn from_uni(u: &[LaurentPoly], v: Var) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in u.iter().enumerate() {
        out = out.add(&c.mul_monomial(&LaurentMonomial::var(v, e as i32)));
    }
    out
}

/// Gcd of all coefficients (the content over the remaining variables).
fn uni_content(u: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for c in u {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn uni_exact_div(u: &[LaurentPoly], d: &LaurentPoly) -> Uni {
    u.iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    type Rational = super::super::poly::Rational;

    fn r() -> LaurentPoly {
        LaurentPoly::var(Var::R)
    }
    fn s() -> LaurentPoly {
        LaurentPoly::var(Var::S)
    }
    fn rp() -> LaurentPoly {
        LaurentPoly::var(Var::Rp)
    }
    fn int(n: i64) -> LaurentPoly {
        LaurentPoly::from_int(n)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = r().mul(&r()).sub(&s().mul(&s()));
        let b = r().sub(&s());
        assert_eq!(poly_gcd(&a, &b), r().sub(&s()));
    }

    #[test]
    fn gcd_is_monic_and_ignores_rational_scaling() {
        let common = r().add(&s());
        let a = common.mul(&r().sub(&s())).scale(&Rational::from(BigInt::from(2)));
        let b = common.mul(&s()).scale(&Rational::from(BigInt::from(-4)));
        // s is a unit in the Laurent ring, so only r + s survives.
        assert_eq!(poly_gcd(&a, &b), common);
    }

    #[test]
    fn gcd_of_coprime_polynomials_is_one() {
        let a = r().add(&int(1));
        let b = s().add(&int(1));
        assert!(poly_gcd(&a, &b).is_one());
        assert!(poly_gcd(&r().sub(&s()), &r().add(&s())).is_one());
    }

    #[test]
    fn monomials_are_units() {
        let a = LaurentPoly::monomial(LaurentMonomial::var(Var::R, 2).mul(&LaurentMonomial::var(Var::S, 1)));
        let b = LaurentPoly::monomial(LaurentMonomial::var(Var::R, 1).mul(&LaurentMonomial::var(Var::S, 2)));
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn laurent_inputs_are_normalized() {
        // r^-1 - s = r^-1 (1 - r s), so up to units the gcd with 1 - r s is
        // the monic representative r s - 1.
        let a = LaurentPoly::monomial(LaurentMonomial::var(Var::R, -1)).sub(&s());
        let b = int(1).sub(&r().mul(&s()));
        let expected = r().mul(&s()).sub(&int(1));
        assert_eq!(poly_gcd(&a, &b), expected);
    }

    #[test]
    fn gcd_across_three_variables() {
        let c = r().sub(&s());
        let a = c.mul(&rp().add(&int(1)));
        let b = c.mul(&rp().sub(&int(1)));
        assert_eq!(poly_gcd(&a, &b), c);
    }

    #[test]
    fn content_in_secondary_variable_is_found() {
        let c = s().add(&int(1));
        let a = c.mul(&r().add(&s()));
        let b = c.mul(&r().sub(&s()));
        assert_eq!(poly_gcd(&a, &b), c);
    }

    #[test]
    fn zero_arguments() {
        let a = r().sub(&s()).scale(&Rational::from(BigInt::from(3)));
        assert_eq!(poly_gcd(&a, &LaurentPoly::zero()), r().sub(&s()));
        assert_eq!(poly_gcd(&LaurentPoly::zero(), &a), r().sub(&s()));
        assert!(poly_gcd(&LaurentPoly::zero(), &LaurentPoly::zero()).is_one());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        let term = (
            -2i32..=2,
            -2i32..=2,
            0i32..=1,
            prop_oneof![Just(0i64), -4i64..=4],
        )
            .prop_map(|(er, es, erp, c)| {
                let m = LaurentMonomial::var(Var::R, er)
                    .mul(&LaurentMonomial::var(Var::S, es))
                    .mul(&LaurentMonomial::var(Var::Rp, erp));
                (m, Rational::from(BigInt::from(c)))
            });
        proptest::collection::vec(term, 1..=3).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gcd_divides_both_and_contains_common_factor(
            a in small_poly(),
            b in small_poly(),
            c in small_poly(),
        ) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let ac = a.mul(&c);
            let bc = b.mul(&c);
            let g = poly_gcd(&ac, &bc);
            prop_assert!(ac.exact_div(&g).is_some());
            prop_assert!(bc.exact_div(&g).is_some());
            prop_assert!(g.exact_div(&unit_normal(&c)).is_some());
        }

        #[test]
        fn gcd_with_self_is_unit_normal(a in small_poly()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(poly_gcd(&a, &a), unit_normal(&a));
        }
    }
}
