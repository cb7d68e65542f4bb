//! The free layer: words in the generators and their linear combinations.
//!
//! Elements here carry **no** relations — multiplication is concatenation,
//! extended bilinearly. The straightening and reduction machinery lives on
//! top of this layer.
//!
//! One structural choice is made at the level of symbols: the group-like
//! generators are indexed by arbitrary root-lattice elements, so
//! `Omega(μ)` stands for the (commuting, invertible) product
//! `ω_1^(c_1) ⋯ ω_n^(c_n)` with `μ = Σ c_i α_i`, and likewise for
//! `OmegaPrime`. The torus relations (commutativity, inverses, the trivial
//! word) are therefore structural: a zero-weight group-like *is* the empty
//! word, and merging adjacent group-likes is a single lattice addition.

use crate::cartan::Weight;
use crate::scalars::{ParamMap, Scalar, ScalarError};
use std::collections::BTreeMap;
use std::fmt;

/// A generator symbol. `E(i)`/`F(i)` use 1-based indices.
///
/// The triangular normal form orders letter classes as
/// `F < E < Omega < OmegaPrime`: negative-part letters first, then
/// positive-part letters, then the group-likes pushed all the way right.
/// This matches the base-case shapes `(e-word)·ω_μ` used by the skew Hopf
/// pairing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    F(usize),
    Omega(Weight),
    OmegaPrime(Weight),
    E(usize),
}

impl Generator {
    /// Normal-form class: `F = 0 < E = 1 < Omega = 2 < OmegaPrime = 3`.
    pub fn class(&self) -> u8 {
        match self {
            Generator::F(_) => 0,
            Generator::E(_) => 1,
            Generator::Omega(_) => 2,
            Generator::OmegaPrime(_) => 3,
        }
    }

    /// Degree in the root lattice: `E(i)` counts `+α_i`, `F(i)` counts
    /// `-α_i`, group-likes are neutral.
    pub fn weight(&self, rank: usize) -> Weight {
        match self {
            Generator::E(i) => Weight::simple(rank, *i),
            Generator::F(i) => Weight::simple(rank, *i).neg(),
            Generator::Omega(_) | Generator::OmegaPrime(_) => Weight::zero(rank),
        }
    }

    /// Is this a group-like of weight zero (i.e. the identity)?
    fn is_trivial(&self) -> bool {
        match self {
            Generator::Omega(mu) | Generator::OmegaPrime(mu) => mu.is_zero(),
            _ => false,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::Omega(mu) => match mu.as_simple() {
                Some(i) => write!(f, "w{i}"),
                None => write!(f, "w[{mu}]"),
            },
            Generator::OmegaPrime(mu) => match mu.as_simple() {
                Some(i) => write!(f, "wp{i}"),
                None => write!(f, "wp[{mu}]"),
            },
        }
    }
}

/// A word in the generators. Zero-weight group-likes are filtered out at
/// construction, so the empty word is the unique representation of 1 among
/// words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(gens: Vec<Generator>) -> Self {
        Word(gens.into_iter().filter(|g| !g.is_trivial()).collect())
    }

    pub fn single(g: Generator) -> Self {
        Self::new(vec![g])
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut gens = Vec::with_capacity(self.0.len() + other.0.len());
        gens.extend_from_slice(&self.0);
        gens.extend_from_slice(&other.0);
        Word(gens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for g in &self.0 {
            w = w.add(&g.weight(rank));
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Whether a generator-defined map multiplies images in word order or in
/// reversed order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapVariant {
    Homomorphism,
    AntiHomomorphism,
}

/// A finite linear combination of words with [`Scalar`] coefficients, stored
/// canonically (sorted word keys, no zero coefficients).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, Scalar::one())
    }

    pub fn from_gen(g: Generator) -> Self {
        Self::from_word(Word::single(g))
    }

    pub fn from_term(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_scalar(c: Scalar) -> Self {
        Self::from_term(Word::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c·w` in place, merging and pruning zeros.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Free multiplication: bilinear extension of concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul(cb));
            }
        }
        out
    }

    /// The common weight of all words, if the element is homogeneous. The
    /// zero element counts as homogeneous of weight zero.
    pub fn weight(&self, rank: usize) -> Option<Weight> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Some(Weight::zero(rank));
        };
        let w = first.weight(rank);
        for word in it {
            if word.weight(rank) != w {
                return None;
            }
        }
        Some(w)
    }

    /// The part of the element lying in the given weight component.
    pub fn graded_component(&self, rank: usize, mu: &Weight) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| &w.weight(rank) == mu)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// All weights occurring in the element, without multiplicity.
    pub fn weights(&self, rank: usize) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.terms.keys().map(|w| w.weight(rank)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    /// Applies the linear map defined by generator images: each word maps to
    /// the ordered (or reversed, for anti-homomorphisms) product of the
    /// images of its letters, and each coefficient through the optional
    /// parameter map.
    pub fn apply_map<F>(
        &self,
        images: F,
        variant: MapVariant,
        scalar_action: Option<&ParamMap>,
    ) -> Result<Self, ScalarError>
    where
        F: Fn(&Generator) -> Element,
    {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let c = match scalar_action {
                Some(map) => c.map_parameters(map)?,
                None => c.clone(),
            };
            let mut prod = Self::one();
            match variant {
                MapVariant::Homomorphism => {
                    for g in w.gens() {
                        prod = prod.mul(&images(g));
                    }
                }
                MapVariant::AntiHomomorphism => {
                    for g in w.gens().iter().rev() {
                        prod = prod.mul(&images(g));
                    }
                }
            }
            out = out.add(&prod.scale(&c));
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`, dropping terms that map to zero.
    pub fn try_map_coefficients<F>(&self, f: F) -> Result<Self, ScalarError>
    where
        F: Fn(&Scalar) -> Result<Scalar, ScalarError>,
    {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

/// A linear combination of two-fold tensors of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_term(Word::empty(), Word::empty(), Scalar::one())
    }

    pub fn from_term(a: Word, b: Word, c: Scalar) -> Self {
        let mut t = Self::zero();
        t.add_term(a, b, c);
        t
    }

    /// The tensor product of two elements.
    pub fn tensor(a: &Element, b: &Element) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                out.add_term(wa.clone(), wb.clone(), ca.mul(cb));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Factorwise multiplication: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.concat(a2), b1.concat(b2), c1.mul(c2));
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{a} (x) {b}")?;
            } else {
                write!(f, "({c})*{a} (x) {b}")?;
            }
        }
        Ok(())
    }
}

/// A linear combination of three-fold tensors of words (used by the
/// coassociativity checks).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tensor3Element {
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl Tensor3Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Word, x: Scalar) {
        if x.is_zero() {
            return;
        }
        match self.terms.entry((a, b, c)) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&x);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(x);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b, c), x) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone(), x.neg());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{LaurentPoly, Var};
    use proptest::prelude::*;

    fn e(i: usize) -> Element {
        Element::from_gen(Generator::E(i))
    }
    fn f(i: usize) -> Element {
        Element::from_gen(Generator::F(i))
    }
    fn sc(v: Var) -> Scalar {
        Scalar::var(v)
    }

    #[test]
    fn trivial_group_likes_vanish_from_words() {
        let w = Word::new(vec![
            Generator::E(1),
            Generator::Omega(Weight::zero(2)),
            Generator::F(2),
        ]);
        assert_eq!(w.len(), 2);
        assert_eq!(
            Word::single(Generator::OmegaPrime(Weight::zero(2))),
            Word::empty()
        );
    }

    #[test]
    fn multiplication_is_bilinear_concatenation() {
        let x = e(1).add(&f(1).scale(&sc(Var::R)));
        let y = e(2);
        let p = x.mul(&y);
        let mut expected = Element::zero();
        expected.add_term(
            Word::new(vec![Generator::E(1), Generator::E(2)]),
            Scalar::one(),
        );
        expected.add_term(
            Word::new(vec![Generator::F(1), Generator::E(2)]),
            sc(Var::R),
        );
        assert_eq!(p, expected);
        assert!(x.sub(&x).is_zero());
        // 1 is the unit.
        assert_eq!(Element::one().mul(&x), x);
        assert_eq!(x.mul(&Element::one()), x);
    }

    #[test]
    fn weights_add_along_words() {
        let w = Word::new(vec![
            Generator::E(1),
            Generator::Omega(Weight::simple(2, 2)),
            Generator::F(2),
            Generator::E(1),
        ]);
        assert_eq!(w.weight(2), Weight(vec![2, -1]));

        let x = e(1).add(&f(2));
        assert_eq!(x.weight(2), None);
        assert_eq!(
            x.graded_component(2, &Weight::simple(2, 1)),
            e(1)
        );
        assert_eq!(x.weights(2).len(), 2);
        assert_eq!(Element::zero().weight(2), Some(Weight::zero(2)));
    }

    #[test]
    fn generator_defined_homomorphisms() {
        // Identity map.
        let x = e(1).mul(&e(2)).add(&f(1).scale(&sc(Var::S)));
        let id = x
            .apply_map(|g| Element::from_gen(g.clone()), MapVariant::Homomorphism, None)
            .unwrap();
        assert_eq!(id, x);

        // An anti-homomorphism swapping e and f reverses words; applying it
        // twice is the identity.
        let swap = |g: &Generator| -> Element {
            Element::from_gen(match g {
                Generator::E(i) => Generator::F(*i),
                Generator::F(i) => Generator::E(*i),
                other => other.clone(),
            })
        };
        let once = x
            .apply_map(swap, MapVariant::AntiHomomorphism, None)
            .unwrap();
        let e12_image = Word::new(vec![Generator::F(2), Generator::F(1)]);
        assert_eq!(once.coefficient(&e12_image), Scalar::one());
        let twice = once
            .apply_map(swap, MapVariant::AntiHomomorphism, None)
            .unwrap();
        assert_eq!(twice, x);
    }

    #[test]
    fn scalar_action_applies_to_coefficients() {
        let flip = ParamMap::new()
            .with_image(Var::R, crate::scalars::LaurentMonomial::var(Var::S, -1))
            .with_image(Var::S, crate::scalars::LaurentMonomial::var(Var::R, -1));
        let x = e(1).scale(&Scalar::from_poly(LaurentPoly::var(Var::R)));
        let y = x
            .apply_map(
                |g| Element::from_gen(g.clone()),
                MapVariant::Homomorphism,
                Some(&flip),
            )
            .unwrap();
        assert_eq!(
            y,
            e(1).scale(&Scalar::monomial(crate::scalars::LaurentMonomial::var(Var::S, -1)))
        );
    }

    #[test]
    fn tensors_multiply_factorwise() {
        let t = TensorElement::tensor(&e(1), &Element::one());
        let u = TensorElement::tensor(&Element::one(), &e(2));
        let p = t.mul(&u);
        assert_eq!(p, TensorElement::tensor(&e(1), &e(2)));
        assert!(t.sub(&t).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let x = e(1).mul(&f(2)).add(&Element::one().scale(&sc(Var::R)));
        assert_eq!(x.to_string(), "(r) + e1*f2");
        let w = Word::new(vec![
            Generator::Omega(Weight::simple(2, 1)),
            Generator::OmegaPrime(Weight(vec![1, 1])),
        ]);
        assert_eq!(w.to_string(), "w1*wp[a1+a2]");
    }

    fn small_word() -> impl Strategy<Value = Word> {
        let gen = prop_oneof![
            (1usize..=2).prop_map(Generator::E),
            (1usize..=2).prop_map(Generator::F),
            (-1i64..=1, -1i64..=1).prop_map(|(a, b)| Generator::Omega(Weight(vec![a, b]))),
            (-1i64..=1, -1i64..=1).prop_map(|(a, b)| Generator::OmegaPrime(Weight(vec![a, b]))),
        ];
        proptest::collection::vec(gen, 0..=3).prop_map(Word::new)
    }

    fn small_element() -> impl Strategy<Value = Element> {
        proptest::collection::vec((small_word(), -3i64..=3), 1..=3).prop_map(|terms| {
            let mut e = Element::zero();
            for (w, c) in terms {
                e.add_term(w, Scalar::from_int(c));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multiplication_is_associative(
            a in small_element(),
            b in small_element(),
            c in small_element(),
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn word_weights_are_additive(u in small_word(), v in small_word()) {
            prop_assert_eq!(
                u.concat(&v).weight(2),
                u.weight(2).add(&v.weight(2))
            );
        }
    }
}
