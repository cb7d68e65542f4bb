//! Bicharacter (2-cocycle) twists of the root-lattice-graded algebra.
//!
//! A bicharacter `ψ(μ,ν) = t^{⟨μ,ν⟩}` on the root lattice deforms the
//! product of a graded algebra into `x*y = ψ(wt x, wt y)·xy` without
//! disturbing associativity.  When two parameter pairs `(r,s)` and
//! `(r′,s′)` share the ratio `r s⁻¹ = r′ s′⁻¹` (case I) or satisfy the
//! reciprocal relation `r s⁻¹ = r′⁻¹ s′` (case II), the twisted quantum
//! Serre combinations of the first presentation land in the Serre ideal of
//! the second, so the two half quantum groups are cocycle deformations of
//! each other.  This module builds the twisted products, expands the
//! starred Serre combinations with their accumulated `ψ`-factors, and
//! reduces them in the target algebra to certify the deformation claims.

use std::fmt;

use crate::cartan::{CartanDatum, Weight};
use crate::freealg::Element;
use crate::freealg::Word;
use crate::scalars::{Assignment, LaurentMonomial, ParamMap, Scalar, Var};
use crate::urs::{SerreContext, Sign, UrsAlgebra, UrsError};

/// A bicharacter `ψ(μ,ν) = t^{⟨μ,ν⟩}` built from an invertible base scalar
/// and the Euler form of a Cartan datum.  Bicharacters are automatically
/// 2-cocycles of the root lattice, which is what makes the twisted product
/// associative.
#[derive(Clone, Debug)]
pub struct Bicharacter<'a> {
    cartan: &'a CartanDatum,
    base: Scalar,
}

impl<'a> Bicharacter<'a> {
    /// A bicharacter with the given base; the base must be invertible.
    pub fn new(cartan: &'a CartanDatum, base: Scalar) -> Result<Self, UrsError> {
        if base.is_zero() {
            return Err(UrsError::DegenerateParameters(
                "a bicharacter base must be invertible".into(),
            ));
        }
        Ok(Self { cartan, base })
    }

    /// The base scalar `t`.
    pub fn base(&self) -> &Scalar {
        &self.base
    }

    /// The Cartan datum whose Euler form drives the exponents.
    pub fn cartan(&self) -> &CartanDatum {
        self.cartan
    }

    /// `ψ(μ,ν) = t^{⟨μ,ν⟩}`.
    pub fn value(&self, mu: &Weight, nu: &Weight) -> Scalar {
        let e = self.cartan.euler(mu, nu);
        let e = i32::try_from(e).expect("desk-scale Euler exponents fit in i32");
        self.base.powi(e).expect("bicharacter bases are invertible")
    }
}

/// The twisted product `x*y = ψ(wt x, wt y)·xy`, extended bilinearly from
/// homogeneous components.
pub fn twist_product(x: &Element, y: &Element, psi: &Bicharacter<'_>) -> Element {
    twist_product_with(x, y, psi.cartan.rank(), |mu, nu| psi.value(mu, nu))
}

/// Twisted product for an arbitrary user-supplied 2-cocycle on the root
/// lattice.  Associativity of the result is the caller's responsibility
/// (it holds exactly when `psi` satisfies the cocycle condition).
pub fn twist_product_with<F>(x: &Element, y: &Element, rank: usize, psi: F) -> Element
where
    F: Fn(&Weight, &Weight) -> Scalar,
{
    let mut out = Element::zero();
    for mu in x.weights(rank) {
        let xc = x.graded_component(rank, &mu);
        for nu in y.weights(rank) {
            let yc = y.graded_component(rank, &nu);
            out = out.add(&xc.mul(&yc).scale(&psi(&mu, &nu)));
        }
    }
    out
}

/// The scalar a word picks up when its letters are multiplied together with
/// the twisted product, left to right: each letter contributes
/// `ψ(weight of the prefix so far, weight of the letter)`.
fn twisted_word_scale<F>(w: &Word, rank: usize, psi: &F) -> Scalar
where
    F: Fn(&Weight, &Weight) -> Scalar,
{
    let mut prefix = Weight::zero(rank);
    let mut scale = Scalar::one();
    for (idx, g) in w.gens().iter().enumerate() {
        let step = g.weight(rank);
        if idx > 0 {
            scale = scale.mul(&psi(&prefix, &step));
        }
        prefix = prefix.add(&step);
    }
    scale
}

/// As [`twisted_word_scale`], but with the `ψ`-arguments mirrored:
/// `ψ(weight of the letter, weight of the prefix)`.  This is the product
/// induced on the lowering half by the order-reversing involution, and the
/// resulting fold of a lowering word equals that involution applied to the
/// fold of the mirrored raising word.
fn twisted_word_scale_mirror<F>(w: &Word, rank: usize, psi: &F) -> Scalar
where
    F: Fn(&Weight, &Weight) -> Scalar,
{
    let mut prefix = Weight::zero(rank);
    let mut scale = Scalar::one();
    for (idx, g) in w.gens().iter().enumerate() {
        let step = g.weight(rank);
        if idx > 0 {
            scale = scale.mul(&psi(&step, &prefix));
        }
        prefix = prefix.add(&step);
    }
    scale
}

/// Which parameter constraint ties the source pair to the target pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum TwistCase {
    /// Same ratio: `r s⁻¹ = r′ s′⁻¹`, so `s′ = r′ s r⁻¹`; the twist base is
    /// `t = r⁻¹ r′`.
    I,
    /// Reciprocal ratio: `r s⁻¹ = r′⁻¹ s′`, so `s′ = r′ r s⁻¹`; the twist
    /// base is `t = r′ s⁻¹`.
    II,
}

impl fmt::Display for TwistCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistCase::I => f.write_str("I"),
            TwistCase::II => f.write_str("II"),
        }
    }
}

/// `s′` expressed through the other three parameters by the case constraint.
fn eliminated_target_s(
    case: TwistCase,
    r: &LaurentMonomial,
    s: &LaurentMonomial,
    rp: &LaurentMonomial,
) -> LaurentMonomial {
    match case {
        TwistCase::I => rp.mul(s).mul(&r.inv()),
        TwistCase::II => rp.mul(r).mul(&s.inv()),
    }
}

/// The bicharacter base `t` attached to the case.
fn twist_base_monomial(
    case: TwistCase,
    r: &LaurentMonomial,
    s: &LaurentMonomial,
    rp: &LaurentMonomial,
) -> LaurentMonomial {
    match case {
        TwistCase::I => r.inv().mul(rp),
        TwistCase::II => rp.mul(&s.inv()),
    }
}

/// A source algebra, a target algebra whose dependent parameter has been
/// eliminated through the case constraint, and the bicharacter base of the
/// twist that deforms one presentation onto the other.
pub struct TwistContext {
    case: TwistCase,
    source: UrsAlgebra,
    target: UrsAlgebra,
    twist_base: Scalar,
}

impl TwistContext {
    /// The generic three-variable context: source pair `(r, s)`, target
    /// pair `(r′, s′)` with `s′` eliminated by the constraint, everything
    /// symbolic over the rationals in `r`, `s`, `r′`.
    pub fn new(cartan: CartanDatum, case: TwistCase) -> Result<Self, UrsError> {
        Self::with_parameters(
            cartan,
            case,
            LaurentMonomial::var(Var::R, 1),
            LaurentMonomial::var(Var::S, 1),
            LaurentMonomial::var(Var::Rp, 1),
        )
    }

    /// A context with caller-chosen monomials for `r`, `s` and the free
    /// target parameter `r′`; `s′` is eliminated by the constraint.
    pub fn with_parameters(
        cartan: CartanDatum,
        case: TwistCase,
        r: LaurentMonomial,
        s: LaurentMonomial,
        rp: LaurentMonomial,
    ) -> Result<Self, UrsError> {
        let sp = eliminated_target_s(case, &r, &s, &rp);
        Self::assemble(cartan, case, r, s, rp, sp, None)
    }

    /// A context with all four parameters given explicitly.  The quadruple
    /// must satisfy the case constraint exactly; inconsistent parameters
    /// are rejected.
    pub fn with_explicit_target(
        cartan: CartanDatum,
        case: TwistCase,
        r: LaurentMonomial,
        s: LaurentMonomial,
        rp: LaurentMonomial,
        sp: LaurentMonomial,
    ) -> Result<Self, UrsError> {
        let expected = eliminated_target_s(case, &r, &s, &rp);
        if sp != expected {
            return Err(UrsError::ConstraintViolated(format!(
                "case {case} forces s' = {expected}, but s' = {sp} was supplied"
            )));
        }
        Self::assemble(cartan, case, r, s, rp, sp, None)
    }

    /// A numerically specialized context (the fast verification mode): the
    /// same parameter monomials, evaluated at the assignment.  Both the
    /// source and the eliminated target pair must be nondegenerate at the
    /// chosen point.
    pub fn with_specialization(
        cartan: CartanDatum,
        case: TwistCase,
        r: LaurentMonomial,
        s: LaurentMonomial,
        rp: LaurentMonomial,
        at: Assignment,
    ) -> Result<Self, UrsError> {
        let sp = eliminated_target_s(case, &r, &s, &rp);
        Self::assemble(cartan, case, r, s, rp, sp, Some(at))
    }

    fn assemble(
        cartan: CartanDatum,
        case: TwistCase,
        r: LaurentMonomial,
        s: LaurentMonomial,
        rp: LaurentMonomial,
        sp: LaurentMonomial,
        at: Option<Assignment>,
    ) -> Result<Self, UrsError> {
        let t = twist_base_monomial(case, &r, &s, &rp);
        let (source, target, twist_base) = match at {
            None => (
                UrsAlgebra::with_parameters(cartan.clone(), r, s)?,
                UrsAlgebra::with_parameters(cartan, rp, sp)?,
                Scalar::monomial(t),
            ),
            Some(at) => {
                let base = Scalar::from_rational(Scalar::monomial(t).specialize(&at)?);
                (
                    UrsAlgebra::with_specialization(cartan.clone(), r, s, at.clone())?,
                    UrsAlgebra::with_specialization(cartan, rp, sp, at)?,
                    base,
                )
            }
        };
        Ok(Self {
            case,
            source,
            target,
            twist_base,
        })
    }

    /// Which constraint the context was built under.
    pub fn case(&self) -> TwistCase {
        self.case
    }

    /// The algebra whose presentation is being twisted.
    pub fn source(&self) -> &UrsAlgebra {
        &self.source
    }

    /// The algebra in whose Serre ideal the twisted combinations reduce.
    pub fn target(&self) -> &UrsAlgebra {
        &self.target
    }

    /// The bicharacter base `t` of the twist.
    pub fn twist_base(&self) -> &Scalar {
        &self.twist_base
    }

    /// The bicharacter of the twist.
    pub fn bicharacter(&self) -> Bicharacter<'_> {
        Bicharacter::new(self.source.cartan(), self.twist_base.clone())
            .expect("twist bases are monomials, hence invertible")
    }

    /// The quantum Serre combination of the source presentation with every
    /// product taken in the twisted sense, expanded into an ordinary
    /// element with the accumulated `ψ`-factors.  The raising side folds
    /// the twisted product directly; the lowering side folds the mirrored
    /// product induced by the order-reversing involution, so the two sides
    /// are that involution's images of each other.
    pub fn starred_serre_element(
        &self,
        sign: Sign,
        i: usize,
        j: usize,
    ) -> Result<Element, UrsError> {
        let plain = self.source.serre_element(sign, i, j)?;
        let rank = self.source.rank();
        let psi = self.bicharacter();
        let value = |mu: &Weight, nu: &Weight| psi.value(mu, nu);
        let mut out = Element::zero();
        for (w, c) in plain.terms() {
            let fac = match sign {
                Sign::Plus => twisted_word_scale(w, rank, &value),
                Sign::Minus => twisted_word_scale_mirror(w, rank, &value),
            };
            out.add_term(w.clone(), c.mul(&fac));
        }
        Ok(out)
    }

    /// Reduces both twisted Serre combinations for the ordered pair
    /// `(i, j)` in the target algebra's Serre ideal and returns the two
    /// remainders (raising side, lowering side).  The deformation claim for
    /// the pair holds exactly when both remainders are zero.  The supplied
    /// reduction context must be over the target algebra.
    pub fn twisted_serre_check(
        &self,
        ctx: &SerreContext<'_>,
        i: usize,
        j: usize,
    ) -> Result<(Element, Element), UrsError> {
        self.ensure_target_context(ctx)?;
        let plus = self.starred_serre_element(Sign::Plus, i, j)?;
        let minus = self.starred_serre_element(Sign::Minus, i, j)?;
        Ok((ctx.reduce_plus(&plus)?, ctx.reduce_minus(&minus)?))
    }

    /// One-shot check for a single ordered pair: builds a reduction context
    /// of the given height bound over the target algebra and tests that
    /// both twisted combinations vanish.
    pub fn check_serre_pair(&self, i: usize, j: usize, max_height: i64) -> Result<bool, UrsError> {
        let ctx = SerreContext::new(&self.target, max_height);
        let (p, m) = self.twisted_serre_check(&ctx, i, j)?;
        Ok(p.is_zero() && m.is_zero())
    }

    fn ensure_target_context(&self, ctx: &SerreContext<'_>) -> Result<(), UrsError> {
        let a = ctx.algebra();
        if a.rank() != self.target.rank()
            || a.r_monomial() != self.target.r_monomial()
            || a.s_monomial() != self.target.s_monomial()
        {
            return Err(UrsError::ConstraintViolated(
                "the reduction context must be over the twist target algebra".into(),
            ));
        }
        Ok(())
    }
}

/// The twist relating `(r, s)` to the reciprocal-swapped pair `(s⁻¹, r⁻¹)`
/// (the associated object of the algebra).  That pair shares the ratio of
/// the source, so this is a same-ratio twist with `r′ = s⁻¹`.
pub fn associated_object_context(cartan: CartanDatum) -> Result<TwistContext, UrsError> {
    TwistContext::with_parameters(
        cartan,
        TwistCase::I,
        LaurentMonomial::var(Var::R, 1),
        LaurentMonomial::var(Var::S, 1),
        LaurentMonomial::var(Var::S, -1),
    )
}

/// The chain of twists through the one-parameter specializations: a source
/// pair with ratio `r s⁻¹ = q²` deforms onto both `(q², 1)` and
/// `(q, q⁻¹)`.  Returns the two contexts in that order.
pub fn q_family_contexts(cartan: CartanDatum) -> Result<(TwistContext, TwistContext), UrsError> {
    let r = LaurentMonomial::var(Var::R, 1);
    let s = r.mul(&LaurentMonomial::var(Var::Q, -2));
    let one_param = TwistContext::with_parameters(
        cartan.clone(),
        TwistCase::I,
        r,
        s,
        LaurentMonomial::var(Var::Q, 2),
    )?;
    let symmetric = TwistContext::with_parameters(
        cartan,
        TwistCase::I,
        r,
        s,
        LaurentMonomial::var(Var::Q, 1),
    )?;
    Ok((one_param, symmetric))
}

/// Compares the quantum Serre coefficients of the pair `(r, s)` with those
/// of the reciprocal-swapped pair `(s⁻¹, r⁻¹)`.  Returns whether all
/// raising-side Serre elements agree generically, and whether they agree
/// once `rs = 1` is imposed by substituting `s = r⁻¹`.  The expected answer
/// is (false, true): the presentations coincide exactly on the `rs = 1`
/// locus.
pub fn reciprocal_presentations_coincide(
    cartan: &CartanDatum,
) -> Result<(bool, bool), UrsError> {
    let direct = UrsAlgebra::new(cartan.clone());
    let swapped = UrsAlgebra::with_parameters(
        cartan.clone(),
        LaurentMonomial::var(Var::S, -1),
        LaurentMonomial::var(Var::R, -1),
    )?;
    let impose = ParamMap::new()
        .with_image(Var::R, LaurentMonomial::var(Var::R, 1))
        .with_image(Var::S, LaurentMonomial::var(Var::R, -1));
    let mut generically = true;
    let mut under_constraint = true;
    for i in 1..=cartan.rank() {
        for j in 1..=cartan.rank() {
            if i == j {
                continue;
            }
            let a = direct.serre_element(Sign::Plus, i, j)?;
            let b = swapped.serre_element(Sign::Plus, i, j)?;
            if a != b {
                generically = false;
            }
            let am = a.try_map_coefficients(|c| c.map_parameters(&impose))?;
            let bm = b.try_map_coefficients(|c| c.map_parameters(&impose))?;
            if am != bm {
                under_constraint = false;
            }
        }
    }
    Ok((generically, under_constraint))
}
