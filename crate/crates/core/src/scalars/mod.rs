//! Exact scalar arithmetic.
//!
//! A [`Scalar`] is an element of the rational-function field of the parameter
//! variables, held as a canonical fraction of [`LaurentPoly`]s so that
//! equality is structural and zero is recognizable by construction:
//!
//! * zero is `0/1`;
//! * the denominator is `1`, or a gcd-free, monomial-content-free polynomial
//!   (minimum exponent zero in every variable) with monic lex leading
//!   coefficient;
//! * numerator and denominator are coprime.
//!
//! Units of the Laurent ring (rational multiples of monomials) therefore live
//! entirely in the numerator, which keeps the common case — scalars that are
//! Laurent polynomials — on a fast path that never runs a gcd.
//!
//! The module also provides quantum integers, factorials and binomials (used
//! by the quantum Serre relations and the derivation calculus), parameter
//! substitution maps, and evaluation at rational points.

mod gcd;
pub mod poly;

pub use poly::{LaurentMonomial, LaurentPoly, Rational, Var, NVARS};

use num::{BigInt, One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(&'static str),
    #[error("denominator factor {factor} vanishes at the assignment")]
    DenominatorVanishes { factor: String },
    #[error("variable {0} has no image under the parameter map")]
    UnmappedVariable(&'static str),
    #[error("assignment values must be nonzero rationals")]
    ZeroAssignment,
}

/// A canonical fraction of Laurent polynomials. See the module docs for the
/// exact normal form; `PartialEq`/`Hash` are sound because the form is unique.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    pub fn monomial(m: LaurentMonomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// Builds `num/den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // A single-term side makes the gcd a unit; skip the expensive call.
        if num.as_single_term().is_some() || den.as_single_term().is_some() {
            return Ok(Self::normalized(num, den));
        }
        let g = gcd::poly_gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::normalized(num, den));
        }
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        Ok(Self::normalized(num, den))
    }

    /// Final unit bookkeeping for a nonzero, already-coprime fraction: folds
    /// the denominator's invertible monomial content and leading coefficient
    /// into the numerator.
    fn normalized(mut num: LaurentPoly, mut den: LaurentPoly) -> Self {
        let m = den.content_monomial();
        if !m.is_one() {
            den = den.mul_monomial(&m.inv());
            num = num.mul_monomial(&m.inv());
        }
        if let Some(c) = den.as_constant() {
            return Self {
                num: num.scale(&c.recip()),
                den: LaurentPoly::one(),
            };
        }
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(c)` iff the scalar is the rational constant `c`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self {
                num: self.num.add(&other.num),
                den: LaurentPoly::one(),
            };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("product of nonzero denominators is nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self {
                num: self.num.mul(&other.num),
                den: LaurentPoly::one(),
            };
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators is nonzero")
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // num and den are already coprime, so no gcd is needed.
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Nonnegative power.
    pub fn pow_u(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Integer power; negative exponents require a nonzero scalar.
    pub fn powi(&self, e: i32) -> Result<Self, ScalarError> {
        if e < 0 {
            Ok(self.inv()?.pow_u(e.unsigned_abs()))
        } else {
            Ok(self.pow_u(e as u32))
        }
    }

    /// Evaluates at a rational point. Every variable occurring in the scalar
    /// must be assigned; a vanishing denominator reports the offending factor.
    pub fn specialize(&self, at: &Assignment) -> Result<Rational, ScalarError> {
        let num = self
            .num
            .eval(&at.values)
            .map_err(|v| ScalarError::UnassignedVariable(v.name()))?;
        if self.den.is_one() {
            return Ok(num);
        }
        let den = self
            .den
            .eval(&at.values)
            .map_err(|v| ScalarError::UnassignedVariable(v.name()))?;
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes {
                factor: self.den.to_string(),
            });
        }
        Ok(num / den)
    }

    /// Applies a monomial substitution to every variable occurring in the
    /// scalar. Fails if a used variable has no image, or if the image of the
    /// denominator collapses to zero (the map is then not a field map).
    pub fn map_parameters(&self, map: &ParamMap) -> Result<Self, ScalarError> {
        let num = self
            .num
            .substitute_monomials(&map.images)
            .map_err(|v| ScalarError::UnmappedVariable(v.name()))?;
        let den = self
            .den
            .substitute_monomials(&map.images)
            .map_err(|v| ScalarError::UnmappedVariable(v.name()))?;
        Self::new(num, den)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Monomial images for the parameter variables, used for parameter-flipping
/// algebra maps and for embedding one parameter family into another.
#[derive(Clone, Debug, Default)]
pub struct ParamMap {
    images: [Option<LaurentMonomial>; NVARS],
}

impl ParamMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_image(mut self, v: Var, image: LaurentMonomial) -> Self {
        self.images[v.index()] = Some(image);
        self
    }

    pub fn set(&mut self, v: Var, image: LaurentMonomial) {
        self.images[v.index()] = Some(image);
    }

    pub fn image(&self, v: Var) -> Option<&LaurentMonomial> {
        self.images[v.index()].as_ref()
    }
}

/// A rational point for specialization. Values are required to be nonzero so
/// that Laurent monomials (negative exponents) always evaluate.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: [Option<Rational>; NVARS],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: Var, value: Rational) -> Result<(), ScalarError> {
        if value.is_zero() {
            return Err(ScalarError::ZeroAssignment);
        }
        self.values[v.index()] = Some(value);
        Ok(())
    }

    pub fn with(mut self, v: Var, value: Rational) -> Result<Self, ScalarError> {
        self.set(v, value)?;
        Ok(self)
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.values[v.index()].as_ref()
    }

    /// Convenience constructor from integer values.
    pub fn from_ints(pairs: &[(Var, i64)]) -> Result<Self, ScalarError> {
        let mut a = Self::new();
        for (v, n) in pairs {
            a.set(*v, Rational::from(BigInt::from(*n)))?;
        }
        Ok(a)
    }
}

/// The quantum integer `(n)_v = 1 + v + … + v^(n-1)`, with `(0)_v = 0`.
pub fn qnumber(n: u32, v: &Scalar) -> Scalar {
    let mut sum = Scalar::zero();
    let mut p = Scalar::one();
    for k in 0..n {
        if k > 0 {
            p = p.mul(v);
        }
        sum = sum.add(&p);
    }
    sum
}

/// The quantum factorial `(n)_v! = (1)_v (2)_v … (n)_v`.
pub fn qfactorial(n: u32, v: &Scalar) -> Scalar {
    let mut out = Scalar::one();
    for k in 1..=n {
        out = out.mul(&qnumber(k, v));
    }
    out
}

/// The quantum binomial coefficient, computed by the Pascal recurrence
/// `binom(n,k)_v = binom(n-1,k-1)_v + v^k binom(n-1,k)_v`, which involves no
/// division and therefore stays defined at every parameter value.
///
/// Returns zero when `k > n`, matching the vanishing of the factorial ratio.
pub fn qbinom(n: u32, k: u32, v: &Scalar) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut row = vec![Scalar::one()];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(Scalar::one());
        for j in 1..row.len() {
            next.push(row[j - 1].add(&v.pow_u(j as u32).mul(&row[j])));
        }
        next.push(Scalar::one());
        row = next;
    }
    row[k as usize].clone()
}
