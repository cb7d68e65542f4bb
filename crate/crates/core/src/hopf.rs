//! The Hopf-algebra structure maps: comultiplication, counit, and antipode.
//!
//! On generators they act by
//!
//! - `Δ(e_i) = e_i ⊗ 1 + ω_i ⊗ e_i`, `Δ(f_i) = 1 ⊗ f_i + f_i ⊗ ω′_i`,
//!   group-likes are sent to their own tensor square;
//! - `ε(e_i) = ε(f_i) = 0`, `ε(ω_μ) = ε(ω′_ν) = 1`;
//! - `S(e_i) = −ω_i⁻¹ e_i`, `S(f_i) = −f_i ω′_i⁻¹`, `S(ω_μ) = ω_{−μ}`,
//!   `S(ω′_ν) = ω′_{−ν}`,
//!
//! extended multiplicatively (anti-multiplicatively for the antipode) to
//! words and linearly to elements.  [`reduce_tensor_square`] reduces a
//! tensor-square element factor by factor, which is how relation membership
//! is tested in the tensor square of the quotient algebra.

use crate::cartan::Weight;
use crate::freealg::{Element, Generator, MapVariant, Tensor3Element, TensorElement, Word};
use crate::scalars::Scalar;
use crate::urs::{SerreContext, UrsAlgebra, UrsError};

/// The comultiplication, counit, and antipode of an ambient algebra.
pub struct HopfMaps<'a> {
    alg: &'a UrsAlgebra,
}

impl<'a> HopfMaps<'a> {
    /// Hopf maps of `alg`.
    pub fn new(alg: &'a UrsAlgebra) -> Self {
        Self { alg }
    }

    /// The ambient algebra.
    pub fn algebra(&self) -> &UrsAlgebra {
        self.alg
    }

    fn generator_coproduct(&self, g: &Generator) -> TensorElement {
        let rank = self.alg.rank();
        match g {
            Generator::E(i) => {
                let omega = Generator::Omega(Weight::simple(rank, *i));
                TensorElement::from_term(
                    Word::single(Generator::E(*i)),
                    Word::empty(),
                    Scalar::one(),
                )
                .add(&TensorElement::from_term(
                    Word::single(omega),
                    Word::single(Generator::E(*i)),
                    Scalar::one(),
                ))
            }
            Generator::F(i) => {
                let omega_prime = Generator::OmegaPrime(Weight::simple(rank, *i));
                TensorElement::from_term(
                    Word::empty(),
                    Word::single(Generator::F(*i)),
                    Scalar::one(),
                )
                .add(&TensorElement::from_term(
                    Word::single(Generator::F(*i)),
                    Word::single(omega_prime),
                    Scalar::one(),
                ))
            }
            group_like => TensorElement::from_term(
                Word::single(group_like.clone()),
                Word::single(group_like.clone()),
                Scalar::one(),
            ),
        }
    }

    /// The comultiplication `Δ`, an algebra homomorphism into the tensor
    /// square (componentwise word products, no braiding).
    pub fn coproduct(&self, x: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            let mut t = TensorElement::one();
            for g in w.gens() {
                t = t.mul(&self.generator_coproduct(g));
            }
            out = out.add(&t.scale(c));
        }
        out
    }

    /// The counit `ε`: kills every word containing a raising or lowering
    /// letter, and is 1 on purely group-like words.
    pub fn counit(&self, x: &Element) -> Scalar {
        let mut out = Scalar::zero();
        for (w, c) in x.terms() {
            let group_like = w
                .gens()
                .iter()
                .all(|g| matches!(g, Generator::Omega(_) | Generator::OmegaPrime(_)));
            if group_like {
                out = out.add(c);
            }
        }
        out
    }

    /// The antipode `S`, the anti-homomorphism extending the generator
    /// images.  The result is a free-algebra element; straighten it to
    /// compare with normal forms.
    pub fn antipode(&self, x: &Element) -> Element {
        let rank = self.alg.rank();
        let images = |g: &Generator| -> Element {
            match g {
                Generator::E(i) => {
                    let inv = Generator::Omega(Weight::simple(rank, *i).neg());
                    Element::from_word(Word::new(vec![inv, Generator::E(*i)])).neg()
                }
                Generator::F(i) => {
                    let inv = Generator::OmegaPrime(Weight::simple(rank, *i).neg());
                    Element::from_word(Word::new(vec![Generator::F(*i), inv])).neg()
                }
                Generator::Omega(mu) => Element::from_gen(Generator::Omega(mu.neg())),
                Generator::OmegaPrime(nu) => Element::from_gen(Generator::OmegaPrime(nu.neg())),
            }
        };
        x.apply_map(images, MapVariant::AntiHomomorphism, None)
            .expect("no coefficient action")
    }

    /// `(Δ ⊗ id)` applied to a tensor-square element.
    pub fn coproduct_left(&self, t: &TensorElement) -> Tensor3Element {
        let mut out = Tensor3Element::zero();
        for ((a, b), c) in t.terms() {
            let inner = self.coproduct(&Element::from_word(a.clone()));
            for ((a1, a2), ca) in inner.terms() {
                out.add_term(a1.clone(), a2.clone(), b.clone(), c.mul(ca));
            }
        }
        out
    }

    /// `(id ⊗ Δ)` applied to a tensor-square element.
    pub fn coproduct_right(&self, t: &TensorElement) -> Tensor3Element {
        let mut out = Tensor3Element::zero();
        for ((a, b), c) in t.terms() {
            let inner = self.coproduct(&Element::from_word(b.clone()));
            for ((b1, b2), cb) in inner.terms() {
                out.add_term(a.clone(), b1.clone(), b2.clone(), c.mul(cb));
            }
        }
        out
    }
}

/// Normalizes a tensor-square element factor by factor: each side of every
/// term is put into reduced triangular form and the results are re-expanded.
/// The outcome is zero exactly when the input lies in the two-sided ideal
/// generated by the defining relations on either tensor factor.
pub fn reduce_tensor_square(
    ctx: &SerreContext,
    t: &TensorElement,
) -> Result<TensorElement, UrsError> {
    let mut out = TensorElement::zero();
    for ((a, b), c) in t.terms() {
        let ra = ctx.reduce_normal(&Element::from_word(a.clone()))?;
        let rb = ctx.reduce_normal(&Element::from_word(b.clone()))?;
        out = out.add(&TensorElement::tensor(&ra, &rb).scale(c));
    }
    Ok(out)
}
