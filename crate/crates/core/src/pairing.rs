//! The skew Hopf pairing between the lower and upper Borel subalgebras.
//!
//! The pairing `(·,·)` takes a left argument from the span of
//! `f-word · ω′_ν` and a right argument from the span of `e-word · ω_μ`,
//! and is determined by the base cases
//!
//! - `(f_i, e_j ω_μ) = δ_ij / (s_i − r_i)` (independent of `μ`),
//! - `(ω′_ν, ω_μ) = r^{⟨ν,μ⟩} s^{−⟨μ,ν⟩}`,
//! - `(ω′_ν, x ω_μ) = 0` when `x` is a nonempty raising word, and
//!   `(f_i, ω_μ) = 0`,
//!
//! together with the splitting rule `(y y′, x) = Σ (y, x₍₁₎) (y′, x₍₂₎)`
//! over the comultiplication of `x`, with the tensor convention
//! `(a ⊗ b, c ⊗ d) = (a, c)(b, d)`.  Values are memoized per pair of
//! triangular keys; clearing the memo table never changes an answer.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::cartan::Weight;
use crate::freealg::{Element, Generator, Word};
use crate::hopf::HopfMaps;
use crate::scalars::Scalar;
use crate::urs::{NormalKey, SerreContext, UrsAlgebra, UrsError};

/// Evaluator for the skew Hopf pairing, with a memo table keyed by pairs of
/// triangular monomials.
pub struct PairingEngine<'a> {
    alg: &'a UrsAlgebra,
    hopf: HopfMaps<'a>,
    memo: RefCell<HashMap<(NormalKey, NormalKey), Scalar>>,
}

impl<'a> PairingEngine<'a> {
    /// A pairing evaluator for `alg` with an empty memo table.
    pub fn new(alg: &'a UrsAlgebra) -> Self {
        Self {
            alg,
            hopf: HopfMaps::new(alg),
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// The ambient algebra.
    pub fn algebra(&self) -> &UrsAlgebra {
        self.alg
    }

    /// Drops all memoized values.
    pub fn clear_memo(&self) {
        self.memo.borrow_mut().clear();
    }

    /// Number of memoized entries.
    pub fn memo_len(&self) -> usize {
        self.memo.borrow().len()
    }

    /// `(f_i, e_i) = 1/(s_i − r_i)`, the normalization of the single-letter
    /// base case.
    pub fn letter_scale(&self, i: usize) -> Scalar {
        self.alg.commutator_scale(i).neg()
    }

    /// Evaluates the pairing.  Both arguments are straightened first; `y`
    /// must lie in the span of `f-word · ω′_ν` and `x` in the span of
    /// `e-word · ω_μ`.
    pub fn pair(&self, y: &Element, x: &Element) -> Result<Scalar, UrsError> {
        let ny = self.alg.straighten(y);
        let nx = self.alg.straighten(x);
        let mut out = Scalar::zero();
        for (ky, cy) in ny.terms() {
            if !ky.e_word.is_empty() || !ky.omega.is_zero() {
                return Err(UrsError::NotInHalf(
                    "left pairing argument must combine lowering words and ω′-symbols".into(),
                ));
            }
            for (kx, cx) in nx.terms() {
                if !kx.f_word.is_empty() || !kx.omega_prime.is_zero() {
                    return Err(UrsError::NotInHalf(
                        "right pairing argument must combine raising words and ω-symbols".into(),
                    ));
                }
                let v = self.pair_keys(ky, kx)?;
                out = out.add(&cy.mul(cx).mul(&v));
            }
        }
        Ok(out)
    }

    /// Evaluates `(y_left · y_right, x)` through the splitting rule
    /// `Σ (y_left, x₍₁₎)(y_right, x₍₂₎)` at element granularity.  Agrees
    /// with [`PairingEngine::pair`] of the product however the product is
    /// associated.
    pub fn pair_split(
        &self,
        y_left: &Element,
        y_right: &Element,
        x: &Element,
    ) -> Result<Scalar, UrsError> {
        let nx = self.alg.straighten(x);
        let mut out = Scalar::zero();
        for (kx, cx) in nx.terms() {
            let delta = self.hopf.coproduct(&Element::from_word(kx.word()));
            for ((x1, x2), c) in delta.terms() {
                let left = self.pair(y_left, &Element::from_word(x1.clone()))?;
                if left.is_zero() {
                    continue;
                }
                let right = self.pair(y_right, &Element::from_word(x2.clone()))?;
                out = out.add(&cx.mul(c).mul(&left).mul(&right));
            }
        }
        Ok(out)
    }

    /// The pairing on a pair of triangular monomials, memoized.
    fn pair_keys(&self, ky: &NormalKey, kx: &NormalKey) -> Result<Scalar, UrsError> {
        let memo_key = (ky.clone(), kx.clone());
        if let Some(v) = self.memo.borrow().get(&memo_key) {
            return Ok(v.clone());
        }
        let value = if ky.f_word.is_empty() {
            // (ω′_ν, e-word · ω_μ): zero unless the raising word is empty,
            // in which case the group-like bicharacter value applies.
            if kx.e_word.is_empty() {
                let re = self.alg.cartan().euler(&ky.omega_prime, &kx.omega);
                let se = self.alg.cartan().euler(&kx.omega, &ky.omega_prime);
                self.alg.param_power(re, -se)
            } else {
                Scalar::zero()
            }
        } else {
            // Peel the first lowering letter: (f_i · Y, x) =
            // Σ (f_i, x₍₁₎)(Y, x₍₂₎) over Δ(x).
            let i = ky.f_word[0];
            let rest = NormalKey {
                f_word: ky.f_word[1..].to_vec(),
                e_word: Vec::new(),
                omega: Weight::zero(self.alg.rank()),
                omega_prime: ky.omega_prime.clone(),
            };
            let delta = self.hopf.coproduct(&Element::from_word(kx.word()));
            let mut acc = Scalar::zero();
            for ((x1, x2), c) in delta.terms() {
                let head = self.pair_letter(i, x1)?;
                if head.is_zero() {
                    continue;
                }
                let tail_terms = self.alg.straighten(&Element::from_word(x2.clone()));
                for (k2, c2) in tail_terms.terms() {
                    let tail = self.pair_keys(&rest, k2)?;
                    acc = acc.add(&c.mul(c2).mul(&head).mul(&tail));
                }
            }
            acc
        };
        self.memo.borrow_mut().insert(memo_key, value.clone());
        Ok(value)
    }

    /// `(f_i, a)` for a word `a` in raising letters and ω-symbols: nonzero
    /// exactly when `a` straightens to (a multiple of) `e_i · ω_μ`.
    fn pair_letter(&self, i: usize, a: &Word) -> Result<Scalar, UrsError> {
        let na = self.alg.straighten(&Element::from_word(a.clone()));
        let mut out = Scalar::zero();
        for (key, c) in na.terms() {
            if key.e_word == [i] {
                out = out.add(&c.mul(&self.letter_scale(i)));
            }
        }
        Ok(out)
    }

    /// The Gram matrix of the pairing on the weight-`β` graded piece:
    /// entry `(a, b)` pairs the lowering mirror of the `a`-th canonical
    /// basis monomial against the `b`-th one.  Rows and columns are indexed
    /// by [`SerreContext::complement_monomials`] of `β`.
    pub fn gram(
        &self,
        beta: &Weight,
        ctx: &SerreContext,
    ) -> Result<Vec<Vec<Scalar>>, UrsError> {
        let basis = ctx.complement_monomials(beta)?;
        let mut rows = Vec::with_capacity(basis.len());
        for m_a in &basis {
            let mirror: Vec<Generator> = m_a.iter().rev().map(|&t| Generator::F(t)).collect();
            let y = Element::from_word(Word::new(mirror));
            let mut row = Vec::with_capacity(basis.len());
            for m_b in &basis {
                let x = Element::from_word(Word::new(
                    m_b.iter().map(|&t| Generator::E(t)).collect(),
                ));
                row.push(self.pair(&y, &x)?);
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::scalars::Var;
    use crate::urs::{monomials_of_weight, Sign};
    use proptest::prelude::*;

    fn a2() -> UrsAlgebra {
        UrsAlgebra::new(CartanDatum::named("A2").unwrap())
    }

    fn r() -> Scalar {
        Scalar::var(Var::R)
    }

    fn s() -> Scalar {
        Scalar::var(Var::S)
    }

    fn f_word(alg: &UrsAlgebra, idx: &[usize]) -> Element {
        let _ = alg;
        Element::from_word(Word::new(idx.iter().map(|&i| Generator::F(i)).collect()))
    }

    fn e_word(alg: &UrsAlgebra, idx: &[usize]) -> Element {
        let _ = alg;
        Element::from_word(Word::new(idx.iter().map(|&i| Generator::E(i)).collect()))
    }

    #[test]
    fn single_letter_base_cases() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let kappa = s().sub(&r()).inv().unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let got = engine.pair(&alg.f(i), &alg.e(j)).unwrap();
                let expected = if i == j { kappa.clone() } else { Scalar::zero() };
                assert_eq!(got, expected, "(f{i}, e{j})");
            }
        }
    }

    #[test]
    fn group_like_base_cases() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let mu = Weight(vec![1, -1]);
        let nu = Weight(vec![0, 2]);
        let re = alg.cartan().euler(&mu, &nu);
        let se = alg.cartan().euler(&nu, &mu);
        assert_eq!(
            engine
                .pair(&alg.omega_prime(&mu), &alg.omega(&nu))
                .unwrap(),
            alg.param_power(re, -se)
        );
        assert_eq!(
            engine.pair(&alg.omega_prime(&mu), &alg.e(1)).unwrap(),
            Scalar::zero()
        );
        assert_eq!(
            engine.pair(&alg.f(1), &alg.omega(&nu)).unwrap(),
            Scalar::zero()
        );
        // The single-letter case ignores a trailing group-like factor.
        assert_eq!(
            engine
                .pair(&alg.f(1), &alg.e(1).mul(&alg.omega(&nu)))
                .unwrap(),
            s().sub(&r()).inv().unwrap()
        );
    }

    #[test]
    fn rank_two_pairing_value() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let got = engine
            .pair(&f_word(&alg, &[1, 2]), &e_word(&alg, &[1, 2]))
            .unwrap();
        let expected = s().sub(&r()).inv().unwrap().pow_u(2);
        assert_eq!(got, expected);
    }

    #[test]
    fn pairing_vanishes_across_distinct_weights() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        for (y, x) in [
            (vec![1], vec![2]),
            (vec![1, 2], vec![1, 1]),
            (vec![1, 1, 2], vec![1, 2]),
            (vec![2], vec![]),
        ] {
            let got = engine
                .pair(&f_word(&alg, &y), &e_word(&alg, &x))
                .unwrap();
            assert!(got.is_zero(), "({y:?}, {x:?}) should vanish");
        }
    }

    #[test]
    fn splitting_rule_is_association_independent() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let y1 = f_word(&alg, &[1]);
        let y2 = f_word(&alg, &[2]);
        let y3 = f_word(&alg, &[1]);
        let x = e_word(&alg, &[1, 1, 2]);
        let direct = engine.pair(&y1.mul(&y2).mul(&y3), &x).unwrap();
        let left = engine.pair_split(&y1.mul(&y2), &y3, &x).unwrap();
        let right = engine.pair_split(&y1, &y2.mul(&y3), &x).unwrap();
        assert_eq!(direct, left);
        assert_eq!(direct, right);
        assert!(!direct.is_zero());
    }

    #[test]
    fn pairing_annihilates_serre_elements() {
        for name in ["A2", "B2"] {
            let alg = UrsAlgebra::new(CartanDatum::named(name).unwrap());
            let engine = PairingEngine::new(&alg);
            for (i, j) in [(1, 2), (2, 1)] {
                let plus = alg.serre_element(Sign::Plus, i, j).unwrap();
                let minus = alg.serre_element(Sign::Minus, i, j).unwrap();
                let m = 1 - alg.cartan().a(i, j);
                let mut beta = Weight::zero(2);
                beta.0[i - 1] = m;
                beta.0[j - 1] += 1;
                for mono in monomials_of_weight(&beta) {
                    let y: Vec<usize> = mono.iter().rev().cloned().collect();
                    let got = engine.pair(&f_word(&alg, &y), &plus).unwrap();
                    assert!(got.is_zero(), "{name}: (f-word {y:?}, serre+({i},{j}))");
                    let got = engine.pair(&minus, &e_word(&alg, &mono)).unwrap();
                    assert!(got.is_zero(), "{name}: (serre-({i},{j}), e-word {mono:?})");
                }
            }
        }
    }

    #[test]
    fn memoization_is_transparent() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let y = f_word(&alg, &[1, 2, 1]);
        let x = e_word(&alg, &[1, 1, 2]);
        let first = engine.pair(&y, &x).unwrap();
        assert!(engine.memo_len() > 0);
        engine.clear_memo();
        assert_eq!(engine.memo_len(), 0);
        let second = engine.pair(&y, &x).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn gram_matrix_on_a_simple_root_is_the_base_case() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let ctx = SerreContext::new(&alg, 6);
        let g = engine.gram(&Weight::simple(2, 1), &ctx).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0][0], s().sub(&r()).inv().unwrap());
    }

    #[test]
    fn gram_matrix_in_rank_two_is_nondegenerate() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        let ctx = SerreContext::new(&alg, 6);
        let g = engine.gram(&Weight(vec![1, 1]), &ctx).unwrap();
        assert_eq!(g.len(), 2);
        // Rows mirror the column monomials {e1e2, e2e1}, so row 0 is f2f1
        // and row 1 is f1f2.
        let unit = s().sub(&r()).inv().unwrap().pow_u(2);
        assert_eq!(g[1][0], unit, "the (f1f2, e1e2) entry");
        assert_eq!(g[0][0], unit.mul(&s()), "the (f2f1, e1e2) entry");
        let det = g[0][0].mul(&g[1][1]).sub(&g[0][1].mul(&g[1][0]));
        assert!(!det.is_zero());
    }

    #[test]
    fn arguments_outside_the_borel_halves_are_rejected() {
        let alg = a2();
        let engine = PairingEngine::new(&alg);
        assert!(matches!(
            engine.pair(&alg.e(1), &alg.e(1)),
            Err(UrsError::NotInHalf(_))
        ));
        assert!(matches!(
            engine.pair(&alg.f(1), &alg.f(1)),
            Err(UrsError::NotInHalf(_))
        ));
        let a1 = Weight::simple(2, 1);
        assert!(matches!(
            engine.pair(&alg.omega(&a1).mul(&alg.f(1)), &alg.e(1)),
            Err(UrsError::NotInHalf(_))
        ));
        assert!(matches!(
            engine.pair(&alg.f(1), &alg.omega_prime(&a1)),
            Err(UrsError::NotInHalf(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn prop_weight_orthogonality(
            y in prop::collection::vec(1usize..=2, 0..=3),
            x in prop::collection::vec(1usize..=2, 0..=3),
        ) {
            let mut ys = y.clone();
            let mut xs = x.clone();
            ys.sort_unstable();
            xs.sort_unstable();
            prop_assume!(ys != xs);
            let alg = a2();
            let engine = PairingEngine::new(&alg);
            let got = engine.pair(&f_word(&alg, &y), &e_word(&alg, &x)).unwrap();
            prop_assert!(got.is_zero());
        }
    }
}
