//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! Everything downstream (rational-function scalars, structure constants,
//! straightening, pairings) rests on two types:
//!
//! * [`LaurentMonomial`] — an exponent vector over the fixed, ordered variable
//!   universe `r, s, rp, q` (exponents may be negative);
//! * [`LaurentPoly`] — a finite ℚ-linear combination of monomials, stored as a
//!   term list sorted descending under the lexicographic order on exponents.
//!
//! The variable universe is a fixed superset; each algebra instance declares
//! which variables it actually uses and enforces that at its boundaries. The
//! types here are agnostic.

use num::{BigInt, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational number (arbitrary precision, always in lowest terms with a
/// positive denominator).
pub type Rational = num::BigRational;

/// Number of variables in the fixed universe.
pub const NVARS: usize = 4;

/// A parameter variable. The universe is fixed and ordered `r < s < rp < q`;
/// the ordering doubles as the precedence used by the lexicographic monomial
/// order, so `r`-exponents are compared first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    R = 0,
    S = 1,
    /// The auxiliary parameter `r'` (printed `rp`) used by twist contexts.
    Rp = 2,
    /// The one-parameter specialization variable.
    Q = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::R, Var::S, Var::Rp, Var::Q];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::R => "r",
            Var::S => "s",
            Var::Rp => "rp",
            Var::Q => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "r" => Some(Var::R),
            "s" => Some(Var::S),
            "rp" => Some(Var::Rp),
            "q" => Some(Var::Q),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Laurent monomial: one integer exponent per universe variable.
///
/// The derived `Ord` is the lexicographic order on the exponent vector, i.e.
/// lex on (r, s, rp, q); it is total and multiplicative, so it serves as the
/// term order for leading-term selection and canonical printing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LaurentMonomial {
    exp: [i32; NVARS],
}

impl LaurentMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.exp == [0; NVARS]
    }

    /// The monomial `v^e`.
    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Self::default();
        m.exp[v.index()] = e;
        m
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.exp[v.index()]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exp = [0; NVARS];
        for (k, e) in exp.iter_mut().enumerate() {
            *e = self.exp[k] + other.exp[k];
        }
        Self { exp }
    }

    pub fn inv(&self) -> Self {
        let mut exp = [0; NVARS];
        for (k, e) in exp.iter_mut().enumerate() {
            *e = -self.exp[k];
        }
        Self { exp }
    }

    pub fn pow(&self, k: i32) -> Self {
        let mut exp = [0; NVARS];
        for (j, e) in exp.iter_mut().enumerate() {
            *e = self.exp[j] * k;
        }
        Self { exp }
    }

    /// Componentwise minimum; used to split off invertible monomial content.
    pub fn component_min(&self, other: &Self) -> Self {
        let mut exp = [0; NVARS];
        for (k, e) in exp.iter_mut().enumerate() {
            *e = self.exp[k].min(other.exp[k]);
        }
        Self { exp }
    }

    /// `self / other` when the quotient has only nonnegative exponents.
    pub fn try_div(&self, other: &Self) -> Option<Self> {
        let mut exp = [0; NVARS];
        for (k, e) in exp.iter_mut().enumerate() {
            let d = self.exp[k] - other.exp[k];
            if d < 0 {
                return None;
            }
            *e = d;
        }
        Some(Self { exp })
    }

    pub fn vars_used(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.iter().copied().filter(|v| self.exp[v.index()] != 0)
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp[v.index()];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// A sparse Laurent polynomial: finitely many `(monomial, coefficient)` terms,
/// sorted descending by the lex term order, with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: Vec<(LaurentMonomial, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(LaurentMonomial::one(), c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(LaurentMonomial::var(v, 1))
    }

    pub fn monomial(m: LaurentMonomial) -> Self {
        Self {
            terms: vec![(m, Rational::one())],
        }
    }

    pub fn term(m: LaurentMonomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// prunes zeros.
    pub fn from_terms(terms: Vec<(LaurentMonomial, Rational)>) -> Self {
        let mut acc: BTreeMap<LaurentMonomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += &c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Self {
            terms: acc.into_iter().rev().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    /// Greatest term under the lex order, if any.
    pub fn leading(&self) -> Option<(&LaurentMonomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// `Some(c)` iff the polynomial is the constant `c` (zero gives `Some(0)`).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// `Some((m, c))` iff the polynomial has exactly one term.
    pub fn as_single_term(&self) -> Option<(&LaurentMonomial, &Rational)> {
        if self.terms.len() == 1 {
            self.leading()
        } else {
            None
        }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) != 0)
    }

    pub fn vars_used(&self) -> [bool; NVARS] {
        let mut used = [false; NVARS];
        for (m, _) in &self.terms {
            for v in Var::ALL {
                used[v.index()] |= m.exponent(v) != 0;
            }
        }
        used
    }

    /// Componentwise-minimum exponent vector over all terms: the invertible
    /// monomial content. Returns the unit monomial for the zero polynomial.
    pub fn content_monomial(&self) -> LaurentMonomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return LaurentMonomial::one();
        };
        it.fold(*first, |acc, (m, _)| acc.component_min(m))
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Self { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies by a single term; preserves sortedness.
    pub fn mul_term(&self, m: &LaurentMonomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &LaurentMonomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, tc)| (*m, tc * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<LaurentMonomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += &c;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Self {
            terms: acc.into_iter().rev().collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; `None` when `other` does not divide `self` (or is zero).
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Shift both to nonnegative exponents so that monomial-divisibility
        // tests make the leading-term cancellation loop terminate.
        let sa = self.content_monomial();
        let sb = other.content_monomial();
        let a = self.mul_monomial(&sa.inv());
        let b = other.mul_monomial(&sb.inv());
        let q = a.exact_div_nonneg(&b)?;
        Some(q.mul_monomial(&sa.mul(&sb.inv())))
    }

    fn exact_div_nonneg(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = {
            let (m, c) = d.leading()?;
            (*m, c.clone())
        };
        let mut rem = self.clone();
        let mut q_terms = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (*m, c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            q_terms.push((qm, qc));
        }
        Some(Self::from_terms(q_terms))
    }

    /// Evaluates at a (partial) point; `Err(v)` when a needed variable is
    /// unassigned, and `None`-like failure is impossible because assignments
    /// are validated nonzero at construction.
    pub fn eval(&self, values: &[Option<Rational>; NVARS]) -> Result<Rational, Var> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let val = values[v.index()].as_ref().ok_or(v)?;
                term *= rational_pow(val, e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes a Laurent monomial for each variable. `Err(v)` when a
    /// variable occurring in `self` has no image.
    pub fn substitute_monomials(
        &self,
        images: &[Option<LaurentMonomial>; NVARS],
    ) -> Result<Self, Var> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = LaurentMonomial::one();
            for v in Var::ALL {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let img = images[v.index()].as_ref().ok_or(v)?;
                nm = nm.mul(&img.pow(e));
            }
            out.push((nm, c.clone()));
        }
        Ok(Self::from_terms(out))
    }
}

/// `x^e` for a nonzero rational `x` and any integer `e`.
///
/// Callers guarantee `x != 0` when `e < 0`; assignments reject zero values at
/// construction, which is what makes that guarantee hold throughout.
pub fn rational_pow(x: &Rational, e: i32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let k = e.unsigned_abs();
    let p = Rational::new(x.numer().pow(k), x.denom().pow(k));
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> LaurentPoly {
        LaurentPoly::var(Var::R)
    }
    fn s() -> LaurentPoly {
        LaurentPoly::var(Var::S)
    }

    #[test]
    fn monomial_order_is_lex_on_r_then_s() {
        let rs = LaurentMonomial::var(Var::R, 1).mul(&LaurentMonomial::var(Var::S, 1));
        let r2 = LaurentMonomial::var(Var::R, 2);
        let s3 = LaurentMonomial::var(Var::S, 3);
        assert!(r2 > rs);
        assert!(rs > s3);
        assert!(LaurentMonomial::var(Var::R, -1) < LaurentMonomial::one());
    }

    #[test]
    fn add_merges_and_prunes() {
        let p = r().add(&s()).add(&r().neg());
        assert_eq!(p, s());
        assert!(r().sub(&r()).is_zero());
    }

    #[test]
    fn mul_expands_difference_of_squares() {
        let lhs = r().add(&s()).mul(&r().sub(&s()));
        let rhs = r().mul(&r()).sub(&s().mul(&s()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_div_recovers_factor() {
        let prod = r().add(&s()).mul(&r().sub(&s()));
        let q = prod.exact_div(&r().sub(&s())).unwrap();
        assert_eq!(q, r().add(&s()));
        assert!(prod.add(&LaurentPoly::one()).exact_div(&r().sub(&s())).is_none());
    }

    #[test]
    fn exact_div_handles_laurent_shifts() {
        // (r^-1 - s) / (1 - r*s) = r^-1  since r^-1 - s = r^-1 (1 - r s).
        let a = LaurentPoly::monomial(LaurentMonomial::var(Var::R, -1)).sub(&s());
        let b = LaurentPoly::one().sub(&r().mul(&s()));
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, LaurentPoly::monomial(LaurentMonomial::var(Var::R, -1)));
    }

    #[test]
    fn eval_reports_missing_variable() {
        let mut values: [Option<Rational>; NVARS] = Default::default();
        values[Var::R.index()] = Some(Rational::from(BigInt::from(2)));
        let p = r().add(&s());
        assert_eq!(p.eval(&values), Err(Var::S));
        values[Var::S.index()] = Some(Rational::from(BigInt::from(3)));
        assert_eq!(p.eval(&values).unwrap(), Rational::from(BigInt::from(5)));
    }

    #[test]
    fn eval_handles_negative_exponents() {
        let mut values: [Option<Rational>; NVARS] = Default::default();
        values[Var::R.index()] = Some(Rational::new(BigInt::from(2), BigInt::from(3)));
        let p = LaurentPoly::monomial(LaurentMonomial::var(Var::R, -2));
        assert_eq!(
            p.eval(&values).unwrap(),
            Rational::new(BigInt::from(9), BigInt::from(4))
        );
    }

    #[test]
    fn substitution_merges_colliding_terms() {
        // r + s under {r -> q, s -> q} collapses to 2q.
        let mut images: [Option<LaurentMonomial>; NVARS] = Default::default();
        images[Var::R.index()] = Some(LaurentMonomial::var(Var::Q, 1));
        images[Var::S.index()] = Some(LaurentMonomial::var(Var::Q, 1));
        let p = r().add(&s()).substitute_monomials(&images).unwrap();
        assert_eq!(p, LaurentPoly::var(Var::Q).scale(&Rational::from(BigInt::from(2))));
    }

    #[test]
    fn display_is_stable_and_readable() {
        let p = r().mul(&r()).sub(&s().scale(&Rational::from(BigInt::from(2)))).add(&LaurentPoly::one());
        assert_eq!(p.to_string(), "r^2 - 2*s + 1");
        let m = LaurentPoly::monomial(LaurentMonomial::var(Var::S, -1).mul(&LaurentMonomial::var(Var::R, 1)));
        assert_eq!(m.to_string(), "r*s^-1");
    }
}
