//! The two-parameter quantized enveloping algebra attached to a Cartan
//! datum.
//!
//! [`UrsAlgebra`] bundles the Cartan datum with the parameter pair `(r, s)`
//! and provides:
//!
//! - [`UrsAlgebra::straighten`]: rewriting of arbitrary words into the
//!   triangular normal form `f-word · e-word · ω_μ ω′_ν` using the defining
//!   commutation relations, producing a [`NormalElement`];
//! - [`UrsAlgebra::serre_element`]: the quantum Serre elements for either
//!   sign;
//! - [`UrsAlgebra::phi`] / [`UrsAlgebra::psi`]: the standard homomorphism
//!   that exchanges raising and lowering generators (with the parameter
//!   substitution `r ↦ s⁻¹`, `s ↦ r⁻¹`) and the coefficient-fixing
//!   anti-involution;
//! - [`SerreContext`]: per-weight row-reduced models of the quantum Serre
//!   ideal, used to reduce elements of either nilpotent half (and, via the
//!   triangular form, of the whole algebra) to canonical representatives.
//!
//! Parameters may be abstract (`r`, `s` as independent transcendentals), an
//! arbitrary pair of Laurent monomials in the ambient variables (so one-
//! and two-parameter specializations like `(q, q⁻¹)` are expressible), or
//! numerically specialized through an [`Assignment`], in which case every
//! structure constant is evaluated on the spot.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::cartan::{monomial_power, CartanDatum, ConjugationKind, Weight};
use crate::freealg::{Element, Generator, MapVariant, Word};
use crate::scalars::{qbinom, Assignment, LaurentMonomial, ParamMap, Scalar, ScalarError, Var};

/// Errors from algebra construction and normal-form computations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum UrsError {
    /// The parameter pair does not generate a usable coefficient domain
    /// (equal monomials, or numeric values of equal absolute value, would
    /// make the commutator denominators or quantum integers vanish).
    #[error("degenerate parameter pair: {0}")]
    DegenerateParameters(String),
    /// Quantum Serre data needs two distinct node indices.
    #[error("node indices must be distinct")]
    EqualIndices,
    /// An argument lies outside the subalgebra an operation is defined on.
    #[error("element outside the expected subalgebra: {0}")]
    NotInHalf(String),
    /// A weight is taller than the configured reduction bound.
    #[error("weight height {got} exceeds the configured bound {bound}")]
    HeightExceeded { got: i64, bound: i64 },
    /// The operation needs symbolic parameters but the algebra is
    /// numerically specialized.
    #[error("operation requires symbolic parameters: {0}")]
    RequiresSymbolic(&'static str),
    /// A parameter constraint required by an operation does not hold.
    #[error("parameter constraint violated: {0}")]
    ConstraintViolated(String),
    /// A straightened result does not have the shape an extraction expects
    /// (indicates an internal inconsistency rather than bad input).
    #[error("unexpected normal-form shape: {0}")]
    UnexpectedShape(String),
    /// A coefficient-level failure (unassigned variable, vanishing
    /// denominator, ...).
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which nilpotent half a quantum Serre element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    /// Raising generators `e_i`.
    Plus,
    /// Lowering generators `f_i`.
    Minus,
}

/// Which out-of-order adjacent pair `straighten` eliminates first.  Both
/// choices produce the same normal form; exposing the choice lets tests
/// exercise that confluence.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum RewriteStrategy {
    /// Always rewrite the leftmost out-of-order pair.
    #[default]
    Leftmost,
    /// Always rewrite the rightmost out-of-order pair.
    Rightmost,
}

/// Index data of one triangular monomial: a lowering word, a raising word,
/// and the weights of the two group-like factors.  The represented word is
/// `f_{k_1}···f_{k_a} · e_{l_1}···e_{l_b} · ω_μ · ω′_ν` (absent group-like
/// factors are recorded as the zero weight).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalKey {
    /// Indices of the lowering letters, in word order.
    pub f_word: Vec<usize>,
    /// Indices of the raising letters, in word order.
    pub e_word: Vec<usize>,
    /// Weight of the `ω` factor (zero when absent).
    pub omega: Weight,
    /// Weight of the `ω′` factor (zero when absent).
    pub omega_prime: Weight,
}

impl NormalKey {
    /// The free-algebra word this key stands for.
    pub fn word(&self) -> Word {
        let mut gens: Vec<Generator> = self.f_word.iter().map(|&i| Generator::F(i)).collect();
        gens.extend(self.e_word.iter().map(|&i| Generator::E(i)));
        gens.push(Generator::Omega(self.omega.clone()));
        gens.push(Generator::OmegaPrime(self.omega_prime.clone()));
        Word::new(gens)
    }

    /// True when both letter words are empty (a purely group-like term).
    pub fn is_group_like(&self) -> bool {
        self.f_word.is_empty() && self.e_word.is_empty()
    }
}

impl fmt::Display for NormalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// A finite linear combination of triangular monomials; the output form of
/// [`UrsAlgebra::straighten`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalElement {
    terms: BTreeMap<NormalKey, Scalar>,
}

impl NormalElement {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// True when there are no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(key, coefficient)` pairs in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&NormalKey, &Scalar)> {
        self.terms.iter()
    }

    /// The coefficient of `key` (zero when absent).
    pub fn coefficient(&self, key: &NormalKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c` to the coefficient of `key`, dropping the term if the sum
    /// vanishes.
    pub fn add_term(&mut self, key: NormalKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Re-embeds the normal form into the free algebra, spelling every key
    /// out as the word `f-part · e-part · ω_μ · ω′_ν`.
    pub fn embed(&self) -> Element {
        let mut out = Element::zero();
        for (key, c) in &self.terms {
            out.add_term(key.word(), c.clone());
        }
        out
    }
}

impl fmt::Display for NormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.embed())
    }
}

/// The two-parameter quantized enveloping algebra: a Cartan datum together
/// with the parameter pair and an optional numeric specialization.
#[derive(Clone, Debug)]
pub struct UrsAlgebra {
    cartan: CartanDatum,
    r: LaurentMonomial,
    s: LaurentMonomial,
    assignment: Option<Assignment>,
}

impl UrsAlgebra {
    /// The algebra over `ℚ(r, s)` with `r`, `s` independent transcendentals.
    pub fn new(cartan: CartanDatum) -> Self {
        Self {
            cartan,
            r: LaurentMonomial::var(Var::R, 1),
            s: LaurentMonomial::var(Var::S, 1),
            assignment: None,
        }
    }

    /// The algebra with an arbitrary Laurent-monomial parameter pair, e.g.
    /// `(q, q⁻¹)`.  The two monomials must differ, otherwise the commutator
    /// denominators `r_i − s_i` would vanish identically.
    pub fn with_parameters(
        cartan: CartanDatum,
        r: LaurentMonomial,
        s: LaurentMonomial,
    ) -> Result<Self, UrsError> {
        if r == s {
            return Err(UrsError::DegenerateParameters(format!(
                "the parameter monomials coincide ({r})"
            )));
        }
        Ok(Self {
            cartan,
            r,
            s,
            assignment: None,
        })
    }

    /// The algebra with numerically specialized parameters.  Every scalar
    /// produced by the algebra is evaluated at `at` immediately.  The values
    /// of the two parameter monomials must have distinct absolute values,
    /// which keeps all commutator denominators and quantum integers nonzero.
    pub fn with_specialization(
        cartan: CartanDatum,
        r: LaurentMonomial,
        s: LaurentMonomial,
        at: Assignment,
    ) -> Result<Self, UrsError> {
        use num::Signed;
        let rv = Scalar::monomial(r).specialize(&at)?;
        let sv = Scalar::monomial(s).specialize(&at)?;
        if rv.abs() == sv.abs() {
            return Err(UrsError::DegenerateParameters(format!(
                "parameter values {rv} and {sv} have equal absolute value"
            )));
        }
        Ok(Self {
            cartan,
            r,
            s,
            assignment: Some(at),
        })
    }

    /// The underlying Cartan datum.
    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    /// Number of nodes.
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// The first parameter as a Laurent monomial.
    pub fn r_monomial(&self) -> &LaurentMonomial {
        &self.r
    }

    /// The second parameter as a Laurent monomial.
    pub fn s_monomial(&self) -> &LaurentMonomial {
        &self.s
    }

    /// The numeric specialization, when one is installed.
    pub fn assignment(&self) -> Option<&Assignment> {
        self.assignment.as_ref()
    }

    /// Evaluates an internally produced scalar under the specialization, if
    /// any.  Internal scalars are Laurent monomials in the parameters,
    /// quantum binomials, and inverses of `r_i − s_i`; the constructor
    /// validation guarantees all of these evaluate.
    fn resolve(&self, x: Scalar) -> Scalar {
        match &self.assignment {
            None => x,
            Some(at) => Scalar::from_rational(
                x.specialize(at)
                    .expect("structure constants evaluate at a validated assignment"),
            ),
        }
    }

    /// The scalar `r^re · s^se` (with `r`, `s` the algebra's parameter
    /// monomials), evaluated under the specialization when one is set.
    pub fn param_power(&self, re: i64, se: i64) -> Scalar {
        self.resolve(Scalar::monomial(
            monomial_power(&self.r, re).mul(&monomial_power(&self.s, se)),
        ))
    }

    /// `r_i = r^{d_i}`.
    pub fn r_i(&self, i: usize) -> Scalar {
        self.param_power(self.cartan.d(i), 0)
    }

    /// `s_i = s^{d_i}`.
    pub fn s_i(&self, i: usize) -> Scalar {
        self.param_power(0, self.cartan.d(i))
    }

    /// The scalar `1/(r_i − s_i)` appearing in the mixed commutator of
    /// `e_i` and `f_i`.
    pub fn commutator_scale(&self, i: usize) -> Scalar {
        let d = self.cartan.d(i);
        let diff = self.param_power(d, 0).sub(&self.param_power(0, d));
        diff.inv()
            .expect("r_i - s_i is nonzero for a nondegenerate parameter pair")
    }

    /// The conjugation factor by which a group-like of weight `mu` scales
    /// the letter of the given kind and index when moved past it.
    pub fn conjugation_scalar(&self, kind: ConjugationKind, j: usize, mu: &Weight) -> Scalar {
        self.resolve(Scalar::monomial(
            self.cartan.conjugation_factor(kind, j, mu, &self.r, &self.s),
        ))
    }

    /// Single-letter element builders.
    pub fn e(&self, i: usize) -> Element {
        assert!(
            i >= 1 && i <= self.rank(),
            "node index {i} out of range 1..={}",
            self.rank()
        );
        Element::from_gen(Generator::E(i))
    }

    /// See [`UrsAlgebra::e`].
    pub fn f(&self, i: usize) -> Element {
        assert!(
            i >= 1 && i <= self.rank(),
            "node index {i} out of range 1..={}",
            self.rank()
        );
        Element::from_gen(Generator::F(i))
    }

    /// The group-like element `ω_μ`.
    pub fn omega(&self, mu: &Weight) -> Element {
        assert_eq!(mu.rank(), self.rank(), "weight rank mismatch");
        Element::from_gen(Generator::Omega(mu.clone()))
    }

    /// The group-like element `ω′_ν`.
    pub fn omega_prime(&self, nu: &Weight) -> Element {
        assert_eq!(nu.rank(), self.rank(), "weight rank mismatch");
        Element::from_gen(Generator::OmegaPrime(nu.clone()))
    }

    /// The quantum Serre element for the ordered node pair `(i, j)`:
    /// for the raising sign
    /// `Σ_k (−1)^k binom(m, k)_{r_i s_i⁻¹} c_ij^(k) e_i^{m−k} e_j e_i^k`
    /// with `m = 1 − a_ij`, and the mirror word placement
    /// `f_i^k f_j f_i^{m−k}` (same coefficients) for the lowering sign.
    pub fn serre_element(&self, sign: Sign, i: usize, j: usize) -> Result<Element, UrsError> {
        if i == j {
            return Err(UrsError::EqualIndices);
        }
        let m = (1 - self.cartan.a(i, j)) as u32;
        let di = self.cartan.d(i);
        let v = self.param_power(di, -di);
        let mut out = Element::zero();
        for k in 0..=m {
            let mut c = qbinom(m, k, &v);
            c = c.mul(&self.resolve(Scalar::monomial(
                self.cartan.serre_coefficient(i, j, k, &self.r, &self.s),
            )));
            if k % 2 == 1 {
                c = c.neg();
            }
            let mut gens = Vec::with_capacity(m as usize + 1);
            match sign {
                Sign::Plus => {
                    gens.extend(std::iter::repeat_n(Generator::E(i), (m - k) as usize));
                    gens.push(Generator::E(j));
                    gens.extend(std::iter::repeat_n(Generator::E(i), k as usize));
                }
                Sign::Minus => {
                    gens.extend(std::iter::repeat_n(Generator::F(i), k as usize));
                    gens.push(Generator::F(j));
                    gens.extend(std::iter::repeat_n(Generator::F(i), (m - k) as usize));
                }
            }
            out.add_term(Word::new(gens), c);
        }
        Ok(out)
    }

    /// Rewrites an element into triangular normal form, always eliminating
    /// the leftmost out-of-order adjacent pair.
    pub fn straighten(&self, x: &Element) -> NormalElement {
        self.straighten_with(x, RewriteStrategy::Leftmost)
    }

    /// [`UrsAlgebra::straighten`] with an explicit choice of which
    /// out-of-order pair to eliminate first.  The result is independent of
    /// the choice.
    pub fn straighten_with(&self, x: &Element, strategy: RewriteStrategy) -> NormalElement {
        let mut out = NormalElement::zero();
        let mut work: Vec<(Word, Scalar)> = x
            .terms()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match Self::find_rewrite(&w, strategy) {
                None => out.add_term(self.normal_key(&w), c),
                Some(idx) => self.rewrite_at(&w, idx, &c, &mut work),
            }
        }
        out
    }

    /// True when the adjacent pair `(a, b)` must be rewritten: either the
    /// letters are out of class order, or they are group-likes of the same
    /// kind awaiting a merge.
    fn needs_rewrite(a: &Generator, b: &Generator) -> bool {
        a.class() > b.class()
            || matches!(
                (a, b),
                (Generator::Omega(_), Generator::Omega(_))
                    | (Generator::OmegaPrime(_), Generator::OmegaPrime(_))
            )
    }

    fn find_rewrite(w: &Word, strategy: RewriteStrategy) -> Option<usize> {
        let g = w.gens();
        if g.len() < 2 {
            return None;
        }
        let mut range = 0..g.len() - 1;
        match strategy {
            RewriteStrategy::Leftmost => range.find(|&i| Self::needs_rewrite(&g[i], &g[i + 1])),
            RewriteStrategy::Rightmost => {
                range.rev().find(|&i| Self::needs_rewrite(&g[i], &g[i + 1]))
            }
        }
    }

    /// Replaces the adjacent pair at `idx` by the right-hand side of the
    /// matching defining relation, pushing the resulting terms on the
    /// worklist.  Each step strictly decreases (word length, number of
    /// out-of-order pairs) lexicographically, so the rewriting terminates.
    fn rewrite_at(&self, w: &Word, idx: usize, coeff: &Scalar, work: &mut Vec<(Word, Scalar)>) {
        use ConjugationKind::*;
        use Generator::*;
        let g = w.gens();
        let (prefix, rest) = g.split_at(idx);
        let (pair, suffix) = rest.split_at(2);
        let mk = |mid: &[Generator]| -> Word {
            let mut v = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
            v.extend_from_slice(prefix);
            v.extend_from_slice(mid);
            v.extend_from_slice(suffix);
            Word::new(v)
        };
        match (&pair[0], &pair[1]) {
            // e_i f_j = f_j e_i + δ_ij (ω_i − ω′_i)/(r_i − s_i)
            (E(i), F(j)) => {
                work.push((mk(&[F(*j), E(*i)]), coeff.clone()));
                if i == j {
                    let kappa = self.commutator_scale(*i);
                    let alpha = Weight::simple(self.rank(), *i);
                    work.push((mk(&[Omega(alpha.clone())]), coeff.mul(&kappa)));
                    work.push((mk(&[OmegaPrime(alpha)]), coeff.mul(&kappa).neg()));
                }
            }
            // group-likes move right past letters, paying the conjugation
            // factor of the matching defining relation
            (Omega(mu), E(j)) => {
                let factor = self.conjugation_scalar(EByOmega, *j, mu);
                work.push((mk(&[E(*j), Omega(mu.clone())]), coeff.mul(&factor)));
            }
            (Omega(mu), F(j)) => {
                let factor = self.conjugation_scalar(FByOmega, *j, mu);
                work.push((mk(&[F(*j), Omega(mu.clone())]), coeff.mul(&factor)));
            }
            (OmegaPrime(nu), E(j)) => {
                let factor = self.conjugation_scalar(EByOmegaPrime, *j, nu);
                work.push((mk(&[E(*j), OmegaPrime(nu.clone())]), coeff.mul(&factor)));
            }
            (OmegaPrime(nu), F(j)) => {
                let factor = self.conjugation_scalar(FByOmegaPrime, *j, nu);
                work.push((mk(&[F(*j), OmegaPrime(nu.clone())]), coeff.mul(&factor)));
            }
            // the torus is commutative; same-kind neighbours merge
            (OmegaPrime(nu), Omega(mu)) => {
                work.push((mk(&[Omega(mu.clone()), OmegaPrime(nu.clone())]), coeff.clone()));
            }
            (Omega(m1), Omega(m2)) => {
                work.push((mk(&[Omega(m1.add(m2))]), coeff.clone()));
            }
            (OmegaPrime(n1), OmegaPrime(n2)) => {
                work.push((mk(&[OmegaPrime(n1.add(n2))]), coeff.clone()));
            }
            _ => unreachable!("pair in class order needs no rewrite"),
        }
    }

    /// Splits an already-normal word into its key.
    fn normal_key(&self, w: &Word) -> NormalKey {
        let rank = self.rank();
        let mut key = NormalKey {
            f_word: Vec::new(),
            e_word: Vec::new(),
            omega: Weight::zero(rank),
            omega_prime: Weight::zero(rank),
        };
        for g in w.gens() {
            match g {
                Generator::F(i) => key.f_word.push(*i),
                Generator::E(i) => key.e_word.push(*i),
                Generator::Omega(mu) => key.omega = key.omega.add(mu),
                Generator::OmegaPrime(nu) => key.omega_prime = key.omega_prime.add(nu),
            }
        }
        key
    }

    /// The algebra homomorphism determined by `e_i ↦ f_i`,
    /// `f_i ↦ r_i s_i e_i`, `ω_μ ↦ ω′_μ`, `ω′_ν ↦ ω_ν` together with the
    /// coefficient substitution `r ↦ s⁻¹`, `s ↦ r⁻¹`.  It is defined on
    /// symbolic algebras only: a numeric specialization discards the
    /// information the substitution acts on, so apply the map first and
    /// specialize afterwards.
    pub fn phi(&self, x: &Element) -> Result<Element, UrsError> {
        if self.assignment.is_some() {
            return Err(UrsError::RequiresSymbolic(
                "the parameter-swapping homomorphism; apply it before specializing",
            ));
        }
        let flip = ParamMap::new()
            .with_image(Var::R, LaurentMonomial::var(Var::S, -1))
            .with_image(Var::S, LaurentMonomial::var(Var::R, -1));
        let images = |g: &Generator| -> Element {
            match g {
                Generator::E(i) => Element::from_gen(Generator::F(*i)),
                Generator::F(i) => {
                    let d = self.cartan.d(*i);
                    Element::from_gen(Generator::E(*i)).scale(&self.param_power(d, d))
                }
                Generator::Omega(mu) => Element::from_gen(Generator::OmegaPrime(mu.clone())),
                Generator::OmegaPrime(nu) => Element::from_gen(Generator::Omega(nu.clone())),
            }
        };
        Ok(x.apply_map(images, MapVariant::Homomorphism, Some(&flip))?)
    }

    /// The coefficient-fixing anti-involution `e_i ↔ f_i`, identity on
    /// group-likes; words are reversed.
    pub fn psi(&self, x: &Element) -> Element {
        let images = |g: &Generator| -> Element {
            match g {
                Generator::E(i) => Element::from_gen(Generator::F(*i)),
                Generator::F(i) => Element::from_gen(Generator::E(*i)),
                other => Element::from_gen(other.clone()),
            }
        };
        x.apply_map(images, MapVariant::AntiHomomorphism, None)
            .expect("coefficient-fixing map cannot fail")
    }

    /// All defining relations, as labelled free-algebra elements that
    /// normalize to zero (straightening handles the commutation relations;
    /// the quantum Serre elements additionally need ideal reduction).
    pub fn defining_relations(&self) -> Vec<(String, Element)> {
        use Generator::*;
        let n = self.rank();
        let mut out = Vec::new();
        for i in 1..=n {
            let ai = Weight::simple(n, i);
            let w = Word::new(vec![
                Omega(ai.clone()),
                Omega(ai.neg()),
                OmegaPrime(ai.clone()),
                OmegaPrime(ai.neg()),
            ]);
            out.push((
                format!("group-inverse({i})"),
                Element::from_word(w).sub(&Element::one()),
            ));
        }
        for i in 1..=n {
            let ai = Weight::simple(n, i);
            for j in 1..=n {
                let aj = Weight::simple(n, j);
                out.push((
                    format!("group-commute({i},{j})"),
                    Element::from_word(Word::new(vec![Omega(ai.clone()), OmegaPrime(aj.clone())]))
                        .sub(&Element::from_word(Word::new(vec![
                            OmegaPrime(aj.clone()),
                            Omega(ai.clone()),
                        ]))),
                ));
                let conj = |label: &str, kind: ConjugationKind, letter: Generator| {
                    let group: Generator = match kind {
                        ConjugationKind::EByOmega | ConjugationKind::FByOmega => {
                            Omega(ai.clone())
                        }
                        _ => OmegaPrime(ai.clone()),
                    };
                    let inverse = match &group {
                        Omega(mu) => Omega(mu.neg()),
                        OmegaPrime(nu) => OmegaPrime(nu.neg()),
                        _ => unreachable!(),
                    };
                    let lhs = Element::from_word(Word::new(vec![
                        group,
                        letter.clone(),
                        inverse,
                    ]));
                    let rhs = Element::from_gen(letter)
                        .scale(&self.conjugation_scalar(kind, j, &ai));
                    (format!("{label}({i},{j})"), lhs.sub(&rhs))
                };
                out.push(conj("we", ConjugationKind::EByOmega, E(j)));
                out.push(conj("wpe", ConjugationKind::EByOmegaPrime, E(j)));
                out.push(conj("wf", ConjugationKind::FByOmega, F(j)));
                out.push(conj("wpf", ConjugationKind::FByOmegaPrime, F(j)));
                let mut rel = Element::from_word(Word::new(vec![E(i), F(j)]))
                    .sub(&Element::from_word(Word::new(vec![F(j), E(i)])));
                if i == j {
                    let kappa = self.commutator_scale(i);
                    rel = rel
                        .sub(&self.omega(&ai).scale(&kappa))
                        .add(&self.omega_prime(&ai).scale(&kappa));
                }
                out.push((format!("ef({i},{j})"), rel));
                if i != j {
                    out.push((
                        format!("serre-plus({i},{j})"),
                        self.serre_element(Sign::Plus, i, j).expect("i != j"),
                    ));
                    out.push((
                        format!("serre-minus({i},{j})"),
                        self.serre_element(Sign::Minus, i, j).expect("i != j"),
                    ));
                }
            }
        }
        out
    }
}

/// A row-reduced spanning set of one weight component of the quantum Serre
/// ideal, kept as a reduced echelon over the scalar field.  Rows are monic
/// at their pivot (the lexicographically largest monomial they touch) and
/// mutually reduced, so the stored form is canonical for the span.
#[derive(Default)]
struct Echelon {
    /// `(pivot index, row)`, sorted by pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn is_pivot(&self, idx: usize) -> bool {
        self.rows.iter().any(|(p, _)| *p == idx)
    }

    /// Subtracts the projection onto the span, returning the canonical
    /// representative of `v` modulo the rows.
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.sub(&c.mul(y));
            }
        }
        v
    }

    /// Inserts a vector, returning whether the rank grew.
    fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().rposition(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot entry is nonzero");
        let row: Vec<Scalar> = v.iter().map(|c| c.mul(&inv)).collect();
        for (_, existing) in &mut self.rows {
            if existing[p].is_zero() {
                continue;
            }
            let c = existing[p].clone();
            for (x, y) in existing.iter_mut().zip(&row) {
                *x = x.sub(&c.mul(y));
            }
        }
        self.rows.push((p, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }
}

/// One cached weight component: its monomial basis (lexicographically
/// ascending raising words) and the echelon of the Serre ideal inside it.
struct WeightSpace {
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    ech: Echelon,
}

/// All raising words of the given nonnegative weight, in ascending
/// lexicographic order with `e_1 < e_2 < …`.
pub(crate) fn monomials_of_weight(mu: &Weight) -> Vec<Vec<usize>> {
    fn rec(counts: &mut [i64], remaining: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i + 1);
                rec(counts, remaining - 1, cur, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut counts = mu.0.clone();
    let total: i64 = counts.iter().sum();
    let mut out = Vec::new();
    rec(&mut counts, total, &mut Vec::new(), &mut out);
    out
}

/// All ordered splittings `target = left + right` into nonnegative weights.
fn weight_splits(target: &Weight) -> Vec<(Weight, Weight)> {
    let n = target.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        let left = Weight(cur.clone());
        let right = target.sub(&left);
        out.push((left, right));
        let mut k = 0;
        while k < n {
            if cur[k] < target.0[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out
}

/// Per-weight reduction modulo the quantum Serre ideal, with a cache of
/// row-reduced weight components.  Regenerating a component yields an
/// identical echelon, so cached and fresh answers agree.
pub struct SerreContext<'a> {
    alg: &'a UrsAlgebra,
    max_height: i64,
    plus: RefCell<HashMap<Weight, WeightSpace>>,
}

impl<'a> SerreContext<'a> {
    /// A context reducing weights of height at most `max_height`.
    pub fn new(alg: &'a UrsAlgebra, max_height: i64) -> Self {
        Self {
            alg,
            max_height,
            plus: RefCell::new(HashMap::new()),
        }
    }

    /// The ambient algebra.
    pub fn algebra(&self) -> &UrsAlgebra {
        self.alg
    }

    /// The configured height bound.
    pub fn max_height(&self) -> i64 {
        self.max_height
    }

    /// Drops all cached weight components.
    pub fn clear_cache(&self) {
        self.plus.borrow_mut().clear();
    }

    fn check_height(&self, mu: &Weight) -> Result<(), UrsError> {
        let got = mu.height();
        if got > self.max_height {
            return Err(UrsError::HeightExceeded {
                got,
                bound: self.max_height,
            });
        }
        Ok(())
    }

    /// Runs `f` on the (possibly freshly built) weight component of `mu`.
    fn with_space<T>(
        &self,
        mu: &Weight,
        f: impl FnOnce(&WeightSpace) -> T,
    ) -> Result<T, UrsError> {
        assert_eq!(mu.rank(), self.alg.rank(), "weight rank mismatch");
        self.check_height(mu)?;
        if !self.plus.borrow().contains_key(mu) {
            let ws = self.build_space(mu);
            self.plus.borrow_mut().insert(mu.clone(), ws);
        }
        let map = self.plus.borrow();
        Ok(f(map.get(mu).expect("just inserted")))
    }

    /// Builds the spanning set `{u · S · v}` of the ideal's weight
    /// component, over all quantum Serre elements `S` and all monomial
    /// sandwiches of complementary weight, and row-reduces it.
    fn build_space(&self, mu: &Weight) -> WeightSpace {
        let rank = self.alg.rank();
        let monomials = monomials_of_weight(mu);
        let index: HashMap<Vec<usize>, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let mut ech = Echelon::default();
        for i in 1..=rank {
            for j in 1..=rank {
                if i == j {
                    continue;
                }
                let serre = self
                    .alg
                    .serre_element(Sign::Plus, i, j)
                    .expect("distinct indices");
                let mut beta = Weight::zero(rank);
                beta.0[i - 1] = 1 - self.alg.cartan().a(i, j);
                beta.0[j - 1] += 1;
                let rem = mu.sub(&beta);
                if rem.0.iter().any(|&c| c < 0) {
                    continue;
                }
                for (left, right) in weight_splits(&rem) {
                    for u in monomials_of_weight(&left) {
                        for w in monomials_of_weight(&right) {
                            let mut vec = vec![Scalar::zero(); monomials.len()];
                            for (word, c) in serre.terms() {
                                let mut m = u.clone();
                                m.extend(word.gens().iter().map(|g| match g {
                                    Generator::E(t) => *t,
                                    _ => unreachable!("Serre elements are raising words"),
                                }));
                                m.extend_from_slice(&w);
                                let idx = index[&m];
                                vec[idx] = vec[idx].add(c);
                            }
                            ech.insert(vec);
                        }
                    }
                }
            }
        }
        WeightSpace {
            monomials,
            index,
            ech,
        }
    }

    /// Dimension of the weight component of the raising half modulo the
    /// Serre ideal: number of monomials minus the rank of the ideal's
    /// spanning set.  Weights outside the positive cone have dimension 0.
    pub fn dim_plus(&self, mu: &Weight) -> Result<usize, UrsError> {
        if mu.0.iter().any(|&c| c < 0) {
            return Ok(0);
        }
        if mu.is_zero() {
            return Ok(1);
        }
        self.with_space(mu, |ws| ws.monomials.len() - ws.ech.rank())
    }

    /// The canonical monomial basis of the reduced weight component: the
    /// non-pivot monomials, in ascending lexicographic order.
    pub fn complement_monomials(&self, mu: &Weight) -> Result<Vec<Vec<usize>>, UrsError> {
        if mu.0.iter().any(|&c| c < 0) {
            return Ok(Vec::new());
        }
        if mu.is_zero() {
            return Ok(vec![Vec::new()]);
        }
        self.with_space(mu, |ws| {
            ws.monomials
                .iter()
                .enumerate()
                .filter(|(k, _)| !ws.ech.is_pivot(*k))
                .map(|(_, m)| m.clone())
                .collect()
        })
    }

    /// Reduces a raising-only element to its canonical representative
    /// modulo the quantum Serre ideal, weight component by weight
    /// component.  The map is linear and a projection.
    pub fn reduce_plus(&self, x: &Element) -> Result<Element, UrsError> {
        for (w, _) in x.terms() {
            if w.gens().iter().any(|g| !matches!(g, Generator::E(_))) {
                return Err(UrsError::NotInHalf(
                    "reduction modulo the raising Serre ideal needs raising letters only".into(),
                ));
            }
        }
        let rank = self.alg.rank();
        let mut out = Element::zero();
        for mu in x.weights(rank) {
            let comp = x.graded_component(rank, &mu);
            if mu.is_zero() {
                out = out.add(&comp);
                continue;
            }
            let reduced = self.with_space(&mu, |ws| {
                let mut v = vec![Scalar::zero(); ws.monomials.len()];
                for (w, c) in comp.terms() {
                    let m: Vec<usize> = w
                        .gens()
                        .iter()
                        .map(|g| match g {
                            Generator::E(t) => *t,
                            _ => unreachable!("checked raising-only above"),
                        })
                        .collect();
                    let idx = ws.index[&m];
                    v[idx] = v[idx].add(c);
                }
                let v = ws.ech.reduce(v);
                let mut el = Element::zero();
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        let gens: Vec<Generator> =
                            ws.monomials[k].iter().map(|&t| Generator::E(t)).collect();
                        el.add_term(Word::new(gens), c);
                    }
                }
                el
            })?;
            out = out.add(&reduced);
        }
        Ok(out)
    }

    /// The lowering-side mirror of [`SerreContext::reduce_plus`], computed
    /// through the coefficient-fixing anti-involution.
    pub fn reduce_minus(&self, x: &Element) -> Result<Element, UrsError> {
        for (w, _) in x.terms() {
            if w.gens().iter().any(|g| !matches!(g, Generator::F(_))) {
                return Err(UrsError::NotInHalf(
                    "reduction modulo the lowering Serre ideal needs lowering letters only".into(),
                ));
            }
        }
        Ok(self.alg.psi(&self.reduce_plus(&self.alg.psi(x))?))
    }

    /// Full normalization: straighten to triangular form, then reduce the
    /// lowering and raising factors of every term modulo their Serre
    /// ideals and recombine.
    pub fn reduce_normal(&self, x: &Element) -> Result<Element, UrsError> {
        use Generator::*;
        let normal = self.alg.straighten(x);
        let mut out = Element::zero();
        for (key, c) in normal.terms() {
            let f_half = if key.f_word.is_empty() {
                Element::one()
            } else {
                let gens: Vec<Generator> = key.f_word.iter().map(|&t| F(t)).collect();
                self.reduce_minus(&Element::from_word(Word::new(gens)))?
            };
            let e_half = if key.e_word.is_empty() {
                Element::one()
            } else {
                let gens: Vec<Generator> = key.e_word.iter().map(|&t| E(t)).collect();
                self.reduce_plus(&Element::from_word(Word::new(gens)))?
            };
            let tail = Element::from_word(Word::new(vec![
                Omega(key.omega.clone()),
                OmegaPrime(key.omega_prime.clone()),
            ]));
            out = out.add(&f_half.mul(&e_half).mul(&tail).scale(c));
        }
        Ok(out)
    }

    /// Whether `x` normalizes to zero.
    pub fn is_zero_element(&self, x: &Element) -> Result<bool, UrsError> {
        Ok(self.reduce_normal(x)?.is_zero())
    }
}
