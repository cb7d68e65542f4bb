//! Verification suites over the core kernel: each suite checks one family
//! of identities (defining relations, Hopf axioms, the skew pairing, twist
//! equivalences, skew derivations) and emits one [`CaseRecord`] per named
//! property, in a deterministic order.
//!
//! Every suite runs either symbolically over the generic parameters
//! (`exact` mode) or at seeded random rational parameter points
//! (`specialize` mode).  Case identifiers are mode-independent so that the
//! two modes can be compared record by record.  A few structural cases
//! compare presentations as symbolic objects and therefore always run
//! symbolically; they are marked as such in their `inputs` description.

use std::time::Instant;

use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tpqg_core::cartan::{CartanDatum, Weight};
use tpqg_core::cocycle::{
    associated_object_context, q_family_contexts, reciprocal_presentations_coincide, TwistCase,
    TwistContext,
};
use tpqg_core::freealg::{Element, Generator, Word};
use tpqg_core::hopf::{reduce_tensor_square, HopfMaps};
use tpqg_core::kashiwara::{
    alternating_qbinomial_sum, commutator_extract, del, delp, derive, derivations_descend,
    inner_cancellation_sums, left_multiplication_commutation_sides, mixed_commutation_sides,
    power_quantum_integer, probe_words, serre_operator_on_probe, DerivationFlavor,
};
use tpqg_core::pairing::PairingEngine;
use tpqg_core::scalars::{Assignment, LaurentMonomial, Rational, Scalar, Var};
use tpqg_core::urs::{RewriteStrategy, SerreContext, Sign, UrsAlgebra, UrsError};

use crate::report::{CaseRecord, CaseStatus, Report};

/// Hard ceiling on the height bound accepted by any suite.
pub const MAX_HEIGHT_LIMIT: i64 = 7;

/// Number of parameter points sampled in specialize mode.
pub const SPECIALIZE_POINTS: usize = 3;

/// Which suite to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteKind {
    Relations,
    Hopf,
    Pairing,
    Cocycle,
    Kashiwara,
    All,
}

impl SuiteKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "relations" => Some(Self::Relations),
            "hopf" => Some(Self::Hopf),
            "pairing" => Some(Self::Pairing),
            "cocycle" => Some(Self::Cocycle),
            "kashiwara" => Some(Self::Kashiwara),
            "all" => Some(Self::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Relations => "relations",
            Self::Hopf => "hopf",
            Self::Pairing => "pairing",
            Self::Cocycle => "cocycle",
            Self::Kashiwara => "kashiwara",
            Self::All => "all",
        }
    }

    fn components(self) -> Vec<SuiteKind> {
        match self {
            Self::All => vec![
                Self::Relations,
                Self::Hopf,
                Self::Pairing,
                Self::Cocycle,
                Self::Kashiwara,
            ],
            one => vec![one],
        }
    }
}

/// Symbolic or sampled parameters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParamMode {
    Exact,
    Specialize,
}

impl ParamMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(Self::Exact),
            "specialize" => Some(Self::Specialize),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Specialize => "specialize",
        }
    }
}

/// Which twist constraints the cocycle suite exercises.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseFilter {
    I,
    II,
    Both,
}

impl CaseFilter {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "I" | "i" => Some(Self::I),
            "II" | "ii" => Some(Self::II),
            "both" => Some(Self::Both),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::I => "I",
            Self::II => "II",
            Self::Both => "both",
        }
    }

    fn includes(self, case: TwistCase) -> bool {
        matches!(
            (self, case),
            (Self::Both, _) | (Self::I, TwistCase::I) | (Self::II, TwistCase::II)
        )
    }
}

/// Full configuration of a suite run.
#[derive(Clone)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub cartan: CartanDatum,
    pub type_label: String,
    pub max_height: i64,
    pub mode: ParamMode,
    pub seed: u64,
    pub case: CaseFilter,
}

impl SuiteConfig {
    pub fn new(suite: SuiteKind, cartan: CartanDatum, type_label: impl Into<String>) -> Self {
        Self {
            suite,
            cartan,
            type_label: type_label.into(),
            max_height: 4,
            mode: ParamMode::Exact,
            seed: 0,
            case: CaseFilter::Both,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.max_height < 1 {
            return Err(format!("height bound {} must be positive", self.max_height));
        }
        if self.max_height > MAX_HEIGHT_LIMIT {
            return Err(format!(
                "height bound {} exceeds maximum {MAX_HEIGHT_LIMIT}",
                self.max_height
            ));
        }
        Ok(())
    }
}

/// Runs the configured suite and assembles the report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, String> {
    cfg.validate()?;
    let mut cases = Vec::new();
    for component in cfg.suite.components() {
        let recs = match component {
            SuiteKind::Relations => relations_cases(cfg),
            SuiteKind::Hopf => hopf_cases(cfg),
            SuiteKind::Pairing => pairing_cases(cfg),
            SuiteKind::Cocycle => cocycle_cases(cfg),
            SuiteKind::Kashiwara => kashiwara_cases(cfg),
            SuiteKind::All => unreachable!("components() never yields All"),
        };
        cases.extend(recs);
    }
    Ok(Report::new(
        cfg.suite.name(),
        &cfg.type_label,
        cfg.mode.name(),
        cases,
    ))
}

// ---------------------------------------------------------------------------
// Parameter points and instances
// ---------------------------------------------------------------------------

fn draw_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mag: i64 = rng.gen_range(1..=100);
    let num = if rng.gen_bool(0.5) { -mag } else { mag };
    let den: i64 = rng.gen_range(1..=100);
    Rational::new(num.into(), den.into())
}

/// Deterministic nondegenerate parameter points: all four variables are
/// assigned nonzero rationals with numerators and denominators of magnitude
/// at most 100, subject to `|r| ≠ |s|` (so every structure constant,
/// commutator denominator, and quantum integer of the algebra and of any
/// twist target stays finite and nonzero) and `|q| ≠ 1`.
pub fn sample_assignments(seed: u64, n: usize) -> Vec<Assignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let r = draw_rational(&mut rng);
        let s = draw_rational(&mut rng);
        let rp = draw_rational(&mut rng);
        let q = draw_rational(&mut rng);
        if r.abs() == s.abs() || q.abs() == Rational::from_integer(1.into()) {
            continue;
        }
        let at = Assignment::new()
            .with(Var::R, r)
            .and_then(|a| a.with(Var::S, s))
            .and_then(|a| a.with(Var::Rp, rp))
            .and_then(|a| a.with(Var::Q, q))
            .expect("sampled values are nonzero");
        out.push(at);
    }
    out
}

struct Instance {
    label: String,
    alg: UrsAlgebra,
}

fn instances(cfg: &SuiteConfig) -> Result<Vec<Instance>, UrsError> {
    match cfg.mode {
        ParamMode::Exact => Ok(vec![Instance {
            label: "generic parameters".into(),
            alg: UrsAlgebra::new(cfg.cartan.clone()),
        }]),
        ParamMode::Specialize => sample_assignments(cfg.seed, SPECIALIZE_POINTS)
            .into_iter()
            .enumerate()
            .map(|(k, at)| {
                let label = format!(
                    "point {k}: r = {}, s = {}",
                    at.get(Var::R).expect("assigned"),
                    at.get(Var::S).expect("assigned")
                );
                let alg = UrsAlgebra::with_specialization(
                    cfg.cartan.clone(),
                    LaurentMonomial::var(Var::R, 1),
                    LaurentMonomial::var(Var::S, 1),
                    at,
                )?;
                Ok(Instance { label, alg })
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Case plumbing
// ---------------------------------------------------------------------------

type CaseResult = Result<Option<String>, UrsError>;

fn push_case(
    records: &mut Vec<CaseRecord>,
    id: impl Into<String>,
    inputs: impl Into<String>,
    body: impl FnOnce() -> CaseResult,
) {
    let start = Instant::now();
    let (status, witness) = match body() {
        Ok(None) => (CaseStatus::Pass, None),
        Ok(Some(w)) => (CaseStatus::Fail, Some(w)),
        Err(e) => (CaseStatus::Error, Some(e.to_string())),
    };
    records.push(CaseRecord {
        id: id.into(),
        inputs: inputs.into(),
        status,
        witness,
        wall_ms: start.elapsed().as_millis() as u64,
    });
}

fn setup_failure(records: &mut Vec<CaseRecord>, suite: &str, e: impl ToString) {
    records.push(CaseRecord {
        id: format!("{suite}:setup"),
        inputs: "algebra construction".into(),
        status: CaseStatus::Error,
        witness: Some(e.to_string()),
        wall_ms: 0,
    });
}

/// The tallest quantum Serre element of the type (letter count `2 − a_ij`),
/// the minimum context height for ideal reduction of the relations.
fn serre_height(cartan: &CartanDatum) -> i64 {
    let n = cartan.rank();
    let mut h = 2;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                h = h.max(2 - cartan.a(i, j));
            }
        }
    }
    h
}

/// Expands a triangular normal form back into a plain element.
pub fn normal_to_element(n: &tpqg_core::urs::NormalElement) -> Element {
    let mut out = Element::zero();
    for (key, c) in n.terms() {
        out = out.add(&Element::from_word(key.word()).scale(c));
    }
    out
}

/// All `e_i`, `f_i`, `ω_i`, `ω′_i` letters of the algebra.
fn mixed_alphabet(rank: usize) -> Vec<Generator> {
    let mut out = Vec::with_capacity(4 * rank);
    for i in 1..=rank {
        out.push(Generator::E(i));
        out.push(Generator::F(i));
        out.push(Generator::Omega(Weight::simple(rank, i)));
        out.push(Generator::OmegaPrime(Weight::simple(rank, i)));
    }
    out
}

fn words_of_length(alphabet: &[Generator], len: usize) -> Vec<Word> {
    let mut layer: Vec<Vec<Generator>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for base in &layer {
            for g in alphabet {
                let mut w = base.clone();
                w.push(g.clone());
                next.push(w);
            }
        }
        layer = next;
    }
    layer.into_iter().map(Word::new).collect()
}

/// All index sequences of length `0..=max_len` over `1..=rank`.
fn index_words(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for base in &layer {
            for i in 1..=rank {
                let mut w = base.clone();
                w.push(i);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn e_word(ls: &[usize]) -> Element {
    Element::from_word(Word::new(ls.iter().map(|&i| Generator::E(i)).collect()))
}

fn f_word(ls: &[usize]) -> Element {
    Element::from_word(Word::new(ls.iter().map(|&i| Generator::F(i)).collect()))
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

fn relations_cases(cfg: &SuiteConfig) -> Vec<CaseRecord> {
    let mut records = Vec::new();
    let insts = match instances(cfg) {
        Ok(v) => v,
        Err(e) => {
            setup_failure(&mut records, "relations", e);
            return records;
        }
    };
    let rank = cfg.cartan.rank();
    let alphabet = mixed_alphabet(rank);
    let len_cap = cfg.max_height.min(5) as usize;

    for len in 1..=len_cap {
        let words = words_of_length(&alphabet, len);
        let count = words.len();
        push_case(
            &mut records,
            format!("relations:straighten-words-len{len}"),
            format!(
                "idempotence and split-product consistency on all {count} words of length {len} \
                 over the {}-letter mixed alphabet",
                alphabet.len()
            ),
            || {
                for inst in &insts {
                    for w in &words {
                        let x = Element::from_word(w.clone());
                        let normal = inst.alg.straighten(&x);
                        let again = inst.alg.straighten(&normal_to_element(&normal));
                        if again != normal {
                            return Ok(Some(format!(
                                "straightening of {w} is not idempotent ({})",
                                inst.label
                            )));
                        }
                        if len >= 2 {
                            let gens = w.gens();
                            let (u, v) = gens.split_at(len / 2);
                            let su = inst.alg.straighten(&Element::from_word(Word::new(u.to_vec())));
                            let sv = inst.alg.straighten(&Element::from_word(Word::new(v.to_vec())));
                            let merged = inst
                                .alg
                                .straighten(&normal_to_element(&su).mul(&normal_to_element(&sv)));
                            if merged != normal {
                                return Ok(Some(format!(
                                    "split product of {w} straightens differently ({})",
                                    inst.label
                                )));
                            }
                        }
                    }
                }
                Ok(None)
            },
        );
    }

    let h = cfg.max_height.max(serre_height(&cfg.cartan));
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            push_case(
                &mut records,
                format!("relations:serre-reduction-{i}-{j}"),
                "both quantum Serre elements reduce to zero in the ideal".to_string(),
                || {
                    for inst in &insts {
                        let ctx = SerreContext::new(&inst.alg, h);
                        let plus = inst.alg.serre_element(Sign::Plus, i, j)?;
                        if !ctx.reduce_plus(&plus)?.is_zero() {
                            return Ok(Some(format!(
                                "raising Serre element ({i},{j}) has nonzero remainder ({})",
                                inst.label
                            )));
                        }
                        let minus = inst.alg.serre_element(Sign::Minus, i, j)?;
                        if !ctx.reduce_minus(&minus)?.is_zero() {
                            return Ok(Some(format!(
                                "lowering Serre element ({i},{j}) has nonzero remainder ({})",
                                inst.label
                            )));
                        }
                    }
                    Ok(None)
                },
            );
        }
    }

    push_case(
        &mut records,
        "relations:rewrite-order-independence".to_string(),
        "leftmost and rightmost rewriting agree on 50 seeded random words".to_string(),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5257_4f52);
            for inst in &insts {
                for _ in 0..50 {
                    let len = rng.gen_range(1..=len_cap.max(2));
                    let gens = (0..len)
                        .map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone())
                        .collect();
                    let x = Element::from_word(Word::new(gens));
                    let left = inst.alg.straighten_with(&x, RewriteStrategy::Leftmost);
                    let right = inst.alg.straighten_with(&x, RewriteStrategy::Rightmost);
                    if left != right {
                        return Ok(Some(format!(
                            "rewriting orders disagree on {x} ({})",
                            inst.label
                        )));
                    }
                }
            }
            Ok(None)
        },
    );

    records
}

// ---------------------------------------------------------------------------
// hopf
// ---------------------------------------------------------------------------

fn hopf_cases(cfg: &SuiteConfig) -> Vec<CaseRecord> {
    let mut records = Vec::new();
    let insts = match instances(cfg) {
        Ok(v) => v,
        Err(e) => {
            setup_failure(&mut records, "hopf", e);
            return records;
        }
    };
    let rank = cfg.cartan.rank();
    let alphabet = mixed_alphabet(rank);
    let mut probes: Vec<Word> = vec![Word::empty()];
    probes.extend(words_of_length(&alphabet, 1));
    probes.extend(words_of_length(&alphabet, 2));
    let h = cfg.max_height.max(serre_height(&cfg.cartan));

    push_case(
        &mut records,
        "hopf:coassociativity".to_string(),
        format!("(Δ⊗id)Δ = (id⊗Δ)Δ exactly on all {} words of length ≤ 2", probes.len()),
        || {
            for inst in &insts {
                let hopf = HopfMaps::new(&inst.alg);
                for w in &probes {
                    let t = hopf.coproduct(&Element::from_word(w.clone()));
                    if hopf.coproduct_left(&t) != hopf.coproduct_right(&t) {
                        return Ok(Some(format!("coassociativity fails on {w} ({})", inst.label)));
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "hopf:counit".to_string(),
        "(ε⊗id)Δ = id = (id⊗ε)Δ exactly on all words of length ≤ 2".to_string(),
        || {
            for inst in &insts {
                let hopf = HopfMaps::new(&inst.alg);
                for w in &probes {
                    let x = Element::from_word(w.clone());
                    let t = hopf.coproduct(&x);
                    let mut left = Element::zero();
                    let mut right = Element::zero();
                    for ((a, b), c) in t.terms() {
                        let ea = hopf.counit(&Element::from_word(a.clone()));
                        left = left.add(&Element::from_word(b.clone()).scale(&c.mul(&ea)));
                        let eb = hopf.counit(&Element::from_word(b.clone()));
                        right = right.add(&Element::from_word(a.clone()).scale(&c.mul(&eb)));
                    }
                    if left != x || right != x {
                        return Ok(Some(format!("counit axiom fails on {w} ({})", inst.label)));
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "hopf:antipode".to_string(),
        "m(S⊗id)Δ = ε·1 = m(id⊗S)Δ modulo the relations, words of length ≤ 2".to_string(),
        || {
            for inst in &insts {
                let hopf = HopfMaps::new(&inst.alg);
                let ctx = SerreContext::new(&inst.alg, h);
                for w in &probes {
                    let x = Element::from_word(w.clone());
                    let t = hopf.coproduct(&x);
                    let target = Element::from_scalar(hopf.counit(&x));
                    let mut left = Element::zero();
                    let mut right = Element::zero();
                    for ((a, b), c) in t.terms() {
                        let ae = Element::from_word(a.clone());
                        let be = Element::from_word(b.clone());
                        left = left.add(&hopf.antipode(&ae).mul(&be).scale(c));
                        right = right.add(&ae.mul(&hopf.antipode(&be)).scale(c));
                    }
                    if !ctx.is_zero_element(&left.sub(&target))? {
                        return Ok(Some(format!(
                            "left antipode axiom fails on {w} ({})",
                            inst.label
                        )));
                    }
                    if !ctx.is_zero_element(&right.sub(&target))? {
                        return Ok(Some(format!(
                            "right antipode axiom fails on {w} ({})",
                            inst.label
                        )));
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "hopf:coproduct-of-relations".to_string(),
        "Δ of every defining relation reduces to zero factorwise".to_string(),
        || {
            for inst in &insts {
                let hopf = HopfMaps::new(&inst.alg);
                let ctx = SerreContext::new(&inst.alg, h);
                for (name, rel) in inst.alg.defining_relations() {
                    let t = hopf.coproduct(&rel);
                    if !reduce_tensor_square(&ctx, &t)?.is_zero() {
                        return Ok(Some(format!(
                            "Δ({name}) does not reduce to zero ({})",
                            inst.label
                        )));
                    }
                }
            }
            Ok(None)
        },
    );

    records
}

// ---------------------------------------------------------------------------
// pairing
// ---------------------------------------------------------------------------

fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Scalar::zero();
    for j in 0..n {
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Weights with coordinates in `{-1, 0, 1}` (rank capped at 3 to keep the
/// grid small; higher ranks use the simple roots and their negatives).
fn small_weights(rank: usize) -> Vec<Weight> {
    if rank <= 3 {
        let mut out = vec![Weight::zero(rank)];
        let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..rank {
            let mut next = Vec::new();
            for base in &layer {
                for c in [-1i64, 0, 1] {
                    let mut v = base.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            layer = next;
        }
        out.clear();
        out.extend(layer.into_iter().map(Weight));
        out
    } else {
        let mut out = vec![Weight::zero(rank)];
        for i in 1..=rank {
            out.push(Weight::simple(rank, i));
            out.push(Weight::simple(rank, i).neg());
        }
        out
    }
}

fn pairing_cases(cfg: &SuiteConfig) -> Vec<CaseRecord> {
    let mut records = Vec::new();
    let insts = match instances(cfg) {
        Ok(v) => v,
        Err(e) => {
            setup_failure(&mut records, "pairing", e);
            return records;
        }
    };
    let rank = cfg.cartan.rank();

    push_case(
        &mut records,
        "pairing:letter-base-case".to_string(),
        "(f_i, e_j) = δ_ij/(s_i − r_i) for all node pairs".to_string(),
        || {
            for inst in &insts {
                let engine = PairingEngine::new(&inst.alg);
                for i in 1..=rank {
                    for j in 1..=rank {
                        let got = engine.pair(&inst.alg.f(i), &inst.alg.e(j))?;
                        let expected = if i == j {
                            inst.alg.s_i(i).sub(&inst.alg.r_i(i)).inv()?
                        } else {
                            Scalar::zero()
                        };
                        if got != expected {
                            return Ok(Some(format!(
                                "(f{i}, e{j}) = {got}, expected {expected} ({})",
                                inst.label
                            )));
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "pairing:group-like-base-case".to_string(),
        "(ω′_ν, ω_μ) = r^{⟨ν,μ⟩} s^{−⟨μ,ν⟩} on a grid of small weights".to_string(),
        || {
            let grid = small_weights(rank);
            for inst in &insts {
                let engine = PairingEngine::new(&inst.alg);
                for nu in &grid {
                    for mu in &grid {
                        let y = Element::from_word(Word::single(Generator::OmegaPrime(nu.clone())));
                        let x = Element::from_word(Word::single(Generator::Omega(mu.clone())));
                        let got = engine.pair(&y, &x)?;
                        let re = cfg.cartan.euler(nu, mu);
                        let se = cfg.cartan.euler(mu, nu);
                        let expected = inst.alg.param_power(re, -se);
                        if got != expected {
                            return Ok(Some(format!(
                                "(ω′[{nu}], ω[{mu}]) = {got}, expected {expected} ({})",
                                inst.label
                            )));
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    let wh = cfg.max_height.min(3) as usize;
    push_case(
        &mut records,
        "pairing:weight-orthogonality".to_string(),
        format!("(f-word, e-word) = 0 whenever the weights differ, heights ≤ {wh}"),
        || {
            let seqs = index_words(rank, wh);
            for inst in &insts {
                let engine = PairingEngine::new(&inst.alg);
                for fs in &seqs {
                    let mut fsort = fs.clone();
                    fsort.sort_unstable();
                    for es in &seqs {
                        let mut esort = es.clone();
                        esort.sort_unstable();
                        if fsort == esort {
                            continue;
                        }
                        let got = engine.pair(&f_word(fs), &e_word(es))?;
                        if !got.is_zero() {
                            return Ok(Some(format!(
                                "(f-word {fs:?}, e-word {es:?}) = {got} ≠ 0 ({})",
                                inst.label
                            )));
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "pairing:association-consistency".to_string(),
        "(y₁y₂, x) = Σ (y₁, x₍₁₎)(y₂, x₍₂₎) on 100 seeded random triples".to_string(),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5041_4952);
            let sample_f = |rng: &mut ChaCha8Rng| {
                let len = rng.gen_range(0..=2);
                let ls: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=rank)).collect();
                let mut y = f_word(&ls);
                if rng.gen_bool(0.3) {
                    let nu = Weight::simple(rank, rng.gen_range(1..=rank));
                    y = y.mul(&Element::from_word(Word::single(Generator::OmegaPrime(nu))));
                }
                y
            };
            for inst in &insts {
                let engine = PairingEngine::new(&inst.alg);
                for _ in 0..100 {
                    let y1 = sample_f(&mut rng);
                    let y2 = sample_f(&mut rng);
                    let len = rng.gen_range(0..=3);
                    let ls: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=rank)).collect();
                    let mut x = e_word(&ls);
                    if rng.gen_bool(0.3) {
                        let mu = Weight::simple(rank, rng.gen_range(1..=rank));
                        x = x.mul(&Element::from_word(Word::single(Generator::Omega(mu))));
                    }
                    let split = engine.pair_split(&y1, &y2, &x)?;
                    let direct = engine.pair(&y1.mul(&y2), &x)?;
                    if split != direct {
                        return Ok(Some(format!(
                            "splitting disagrees on y₁ = {y1}, y₂ = {y2}, x = {x} ({})",
                            inst.label
                        )));
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "pairing:gram-nondegenerate".to_string(),
        format!("Gram matrices at positive weights of height ≤ {wh} have nonzero determinant"),
        || {
            for inst in &insts {
                let ctx = SerreContext::new(&inst.alg, cfg.max_height.max(serre_height(&cfg.cartan)));
                let engine = PairingEngine::new(&inst.alg);
                for ls in index_words(rank, wh) {
                    if ls.is_empty() {
                        continue;
                    }
                    let mut beta = Weight::zero(rank);
                    for &i in &ls {
                        beta = beta.add(&Weight::simple(rank, i));
                    }
                    if beta.height() as usize != ls.len() {
                        continue;
                    }
                    let gram = engine.gram(&beta, &ctx)?;
                    let expected_dim = ctx.dim_plus(&beta)?;
                    if gram.len() != expected_dim {
                        return Ok(Some(format!(
                            "Gram matrix at {beta} has size {} but the graded piece has dimension \
                             {expected_dim} ({})",
                            gram.len(),
                            inst.label
                        )));
                    }
                    if det(&gram).is_zero() {
                        return Ok(Some(format!(
                            "Gram matrix at {beta} is singular ({})",
                            inst.label
                        )));
                    }
                }
            }
            Ok(None)
        },
    );

    records
}

// ---------------------------------------------------------------------------
// cocycle
// ---------------------------------------------------------------------------

fn cocycle_cases(cfg: &SuiteConfig) -> Vec<CaseRecord> {
    let mut records = Vec::new();
    let rank = cfg.cartan.rank();
    let h = cfg.max_height.max(serre_height(&cfg.cartan));

    for case in [TwistCase::I, TwistCase::II] {
        if !cfg.case.includes(case) {
            continue;
        }
        let contexts: Result<Vec<(String, TwistContext)>, UrsError> = match cfg.mode {
            ParamMode::Exact => TwistContext::new(cfg.cartan.clone(), case)
                .map(|c| vec![("generic parameters".to_string(), c)]),
            ParamMode::Specialize => sample_assignments(cfg.seed, SPECIALIZE_POINTS)
                .into_iter()
                .enumerate()
                .map(|(k, at)| {
                    let label = format!(
                        "point {k}: r = {}, s = {}, r' = {}",
                        at.get(Var::R).expect("assigned"),
                        at.get(Var::S).expect("assigned"),
                        at.get(Var::Rp).expect("assigned")
                    );
                    let ctx = TwistContext::with_specialization(
                        cfg.cartan.clone(),
                        case,
                        LaurentMonomial::var(Var::R, 1),
                        LaurentMonomial::var(Var::S, 1),
                        LaurentMonomial::var(Var::Rp, 1),
                        at,
                    )?;
                    Ok((label, ctx))
                })
                .collect(),
        };
        let contexts = match contexts {
            Ok(v) => v,
            Err(e) => {
                setup_failure(&mut records, "cocycle", e);
                continue;
            }
        };
        for i in 1..=rank {
            for j in 1..=rank {
                if i == j {
                    continue;
                }
                push_case(
                    &mut records,
                    format!("cocycle:case-{case}-pair-{i}-{j}"),
                    format!(
                        "twisted Serre combinations for ({i},{j}) vanish in the case-{case} target"
                    ),
                    || {
                        for (label, ctx) in &contexts {
                            if !ctx.check_serre_pair(i, j, h)? {
                                return Ok(Some(format!(
                                    "twisted combination survives reduction ({label})"
                                )));
                            }
                        }
                        Ok(None)
                    },
                );
            }
        }
    }

    push_case(
        &mut records,
        "cocycle:associated-object".to_string(),
        "the reciprocal parameter pair is a same-ratio twist (always symbolic)".to_string(),
        || {
            let ctx = associated_object_context(cfg.cartan.clone())?;
            for i in 1..=rank {
                for j in 1..=rank {
                    if i != j && !ctx.check_serre_pair(i, j, h)? {
                        return Ok(Some(format!("pair ({i},{j}) fails")));
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "cocycle:q-family".to_string(),
        "the equal-ratio family twists onto (q²,1) and (q,q⁻¹) (always symbolic)".to_string(),
        || {
            let (one_param, symmetric) = q_family_contexts(cfg.cartan.clone())?;
            for (name, ctx) in [("(q²,1)", &one_param), ("(q,q⁻¹)", &symmetric)] {
                for i in 1..=rank {
                    for j in 1..=rank {
                        if i != j && !ctx.check_serre_pair(i, j, h)? {
                            return Ok(Some(format!("pair ({i},{j}) fails for the {name} target")));
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "cocycle:reciprocal-coincidence".to_string(),
        "reciprocal presentations differ generically and coincide exactly on the unit-product \
         locus (always symbolic)"
            .to_string(),
        || {
            let (generic, on_locus) = reciprocal_presentations_coincide(&cfg.cartan)?;
            if generic {
                return Ok(Some(
                    "presentations already coincide at generic parameters".into(),
                ));
            }
            if !on_locus {
                return Ok(Some(
                    "presentations differ even after imposing the unit product".into(),
                ));
            }
            Ok(None)
        },
    );

    records
}

// ---------------------------------------------------------------------------
// kashiwara
// ---------------------------------------------------------------------------

fn kashiwara_cases(cfg: &SuiteConfig) -> Vec<CaseRecord> {
    let mut records = Vec::new();
    let insts = match instances(cfg) {
        Ok(v) => v,
        Err(e) => {
            setup_failure(&mut records, "kashiwara", e);
            return records;
        }
    };
    let rank = cfg.cartan.rank();
    let flavors = [DerivationFlavor::Unprimed, DerivationFlavor::Primed];
    let h = cfg.max_height.max(serre_height(&cfg.cartan));
    let probe_h = cfg.max_height.min(4) as usize;
    let op_probe_h = cfg.max_height.min(5) as usize;

    push_case(
        &mut records,
        "kashiwara:power-formula".to_string(),
        "∂_i and ∂′_i on e_i^m match the quantum-integer formula for m ≤ 6".to_string(),
        || {
            for inst in &insts {
                for i in 1..=rank {
                    for m in 1..=6u32 {
                        let power = e_word(&vec![i; m as usize]);
                        let lower = e_word(&vec![i; (m - 1) as usize]);
                        for flavor in flavors {
                            let got = derive(&inst.alg, flavor, i, &power)?;
                            let expected =
                                lower.scale(&power_quantum_integer(&inst.alg, flavor, i, m));
                            if got != expected {
                                return Ok(Some(format!(
                                    "power formula fails at node {i}, m = {m}, {flavor:?} ({})",
                                    inst.label
                                )));
                            }
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "kashiwara:mixed-commutation".to_string(),
        format!("∂_i ∂′_j commutation on all raising words of height ≤ {probe_h}"),
        || {
            for inst in &insts {
                for probe in probe_words(rank, probe_h) {
                    let x = Element::from_word(probe.clone());
                    for i in 1..=rank {
                        for j in 1..=rank {
                            let (lhs, rhs) = mixed_commutation_sides(&inst.alg, i, j, &x)?;
                            if lhs != rhs {
                                return Ok(Some(format!(
                                    "∂_{i} ∂′_{j} commutation fails on {probe} ({})",
                                    inst.label
                                )));
                            }
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    let lm_h = cfg.max_height.min(3) as usize;
    push_case(
        &mut records,
        "kashiwara:left-multiplication-commutation".to_string(),
        format!("∂^m past left multiplication, m ≤ 3, probes of height ≤ {lm_h}"),
        || {
            for inst in &insts {
                for probe in probe_words(rank, lm_h) {
                    let x = Element::from_word(probe.clone());
                    for flavor in flavors {
                        for i in 1..=rank {
                            for j in 1..=rank {
                                for m in 1..=3u32 {
                                    let (lhs, rhs) = left_multiplication_commutation_sides(
                                        &inst.alg, flavor, i, m, j, &x,
                                    )?;
                                    if lhs != rhs {
                                        return Ok(Some(format!(
                                            "{flavor:?} commutation past e{j} fails on {probe}, \
                                             m = {m} ({})",
                                            inst.label
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "kashiwara:extraction-matches-recursions".to_string(),
        format!(
            "mixed-commutator extraction equals (∂_i, ∂′_i) modulo the ideal, heights ≤ {probe_h}"
        ),
        || {
            for inst in &insts {
                let ctx = SerreContext::new(&inst.alg, h);
                for probe in probe_words(rank, probe_h) {
                    let p = Element::from_word(probe.clone());
                    for i in 1..=rank {
                        let (l, r) = commutator_extract(&inst.alg, &p, i)?;
                        let dl = del(&inst.alg, i, &p)?;
                        let dr = delp(&inst.alg, i, &p)?;
                        if !ctx.reduce_plus(&l.sub(&dl))?.is_zero() {
                            return Ok(Some(format!(
                                "ω-column of [{probe}, f{i}] disagrees with ∂_{i} ({})",
                                inst.label
                            )));
                        }
                        if !ctx.reduce_plus(&r.sub(&dr))?.is_zero() {
                            return Ok(Some(format!(
                                "ω′-column of [{probe}, f{i}] disagrees with ∂′_{i} ({})",
                                inst.label
                            )));
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "kashiwara:serre-operator-annihilates".to_string(),
        format!(
            "the alternating derivation combination kills all probes of height ≤ {op_probe_h} \
             modulo the ideal"
        ),
        || {
            for inst in &insts {
                let ctx = SerreContext::new(&inst.alg, h.max(op_probe_h as i64));
                for flavor in flavors {
                    for i in 1..=rank {
                        for j in 1..=rank {
                            if i == j {
                                continue;
                            }
                            for probe in probe_words(rank, op_probe_h) {
                                let (reduced, _) = serre_operator_on_probe(
                                    &inst.alg, &ctx, flavor, i, j, &probe,
                                )?;
                                if !reduced.is_zero() {
                                    return Ok(Some(format!(
                                        "{flavor:?} combination ({i},{j}) survives on {probe} ({})",
                                        inst.label
                                    )));
                                }
                            }
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "kashiwara:delta-branch-cancellation".to_string(),
        "the two quantum-integer remainder sums cancel termwise and on probes".to_string(),
        || {
            for inst in &insts {
                for i in 1..=rank {
                    for j in 1..=rank {
                        if i == j {
                            continue;
                        }
                        let (first, second) = inner_cancellation_sums(&inst.alg, i, j)?;
                        for (a, b) in first.terms().iter().zip(second.terms()) {
                            if a.1 != b.1 || a.0 != b.0.neg() {
                                return Ok(Some(format!(
                                    "remainder sums for ({i},{j}) fail to cancel termwise ({})",
                                    inst.label
                                )));
                            }
                        }
                        for probe in probe_words(rank, lm_h) {
                            let x = Element::from_word(probe.clone());
                            let total =
                                first.apply(&inst.alg, &x)?.add(&second.apply(&inst.alg, &x)?);
                            if !total.is_zero() {
                                return Ok(Some(format!(
                                    "remainder sums for ({i},{j}) do not cancel on {probe} ({})",
                                    inst.label
                                )));
                            }
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "kashiwara:alternating-qbinomial".to_string(),
        "Σ (−1)^k binom(m,k)_v v^{k(k−1)/2} = 0 for m ≤ 6 at every node ratio".to_string(),
        || {
            for inst in &insts {
                for i in 1..=rank {
                    let d = inst.alg.cartan().d(i);
                    let v = inst.alg.param_power(d, -d);
                    for m in 1..=6 {
                        if !alternating_qbinomial_sum(m, &v).is_zero() {
                            return Ok(Some(format!(
                                "sum is nonzero at node {i}, m = {m} ({})",
                                inst.label
                            )));
                        }
                    }
                }
            }
            Ok(None)
        },
    );

    push_case(
        &mut records,
        "kashiwara:derivations-descend".to_string(),
        "both derivations annihilate every raising Serre element after reduction".to_string(),
        || {
            for inst in &insts {
                let ctx = SerreContext::new(&inst.alg, h);
                for i in 1..=rank {
                    if !derivations_descend(&inst.alg, &ctx, i)? {
                        return Ok(Some(format!(
                            "a Serre element survives a derivation at node {i} ({})",
                            inst.label
                        )));
                    }
                }
            }
            Ok(None)
        },
    );

    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn config(suite: SuiteKind, name: &str, height: i64) -> SuiteConfig {
        let mut cfg = SuiteConfig::new(suite, CartanDatum::named(name).unwrap(), name);
        cfg.max_height = height;
        cfg
    }

    #[test]
    fn names_round_trip() {
        for kind in [
            SuiteKind::Relations,
            SuiteKind::Hopf,
            SuiteKind::Pairing,
            SuiteKind::Cocycle,
            SuiteKind::Kashiwara,
            SuiteKind::All,
        ] {
            assert_eq!(SuiteKind::parse(kind.name()), Some(kind));
        }
        for mode in [ParamMode::Exact, ParamMode::Specialize] {
            assert_eq!(ParamMode::parse(mode.name()), Some(mode));
        }
        for filter in [CaseFilter::I, CaseFilter::II, CaseFilter::Both] {
            assert_eq!(CaseFilter::parse(filter.name()), Some(filter));
        }
        assert_eq!(SuiteKind::parse("bogus"), None);
    }

    #[test]
    fn height_bounds_are_enforced() {
        let mut cfg = config(SuiteKind::Relations, "A2", 99);
        assert!(cfg.validate().unwrap_err().contains("exceeds maximum"));
        cfg.max_height = 0;
        assert!(cfg.validate().is_err());
        cfg.max_height = MAX_HEIGHT_LIMIT;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn sampled_points_are_deterministic_and_nondegenerate() {
        let a = sample_assignments(42, 3);
        let b = sample_assignments(42, 3);
        assert_eq!(a.len(), 3);
        for (x, y) in a.iter().zip(&b) {
            for v in [Var::R, Var::S, Var::Rp, Var::Q] {
                assert_eq!(x.get(v), y.get(v));
                let val = x.get(v).unwrap();
                assert!(!val.is_zero());
                assert!(val.numer().abs() <= 100.into());
                assert!(*val.denom() <= 100.into());
            }
            assert_ne!(x.get(Var::R).unwrap().abs(), x.get(Var::S).unwrap().abs());
        }
        let c = sample_assignments(43, 3);
        assert_ne!(
            a[0].get(Var::R),
            c[0].get(Var::R),
            "different seeds should give different points"
        );
    }

    #[test]
    fn relations_suite_passes_in_both_modes() {
        let mut cfg = config(SuiteKind::Relations, "A2", 2);
        let exact = run_suite(&cfg).unwrap();
        assert!(exact.all_passed(), "{}", exact.render_text());
        cfg.mode = ParamMode::Specialize;
        cfg.seed = 11;
        let spec = run_suite(&cfg).unwrap();
        assert!(spec.all_passed(), "{}", spec.render_text());
        let ids: Vec<&str> = exact.cases.iter().map(|c| c.id.as_str()).collect();
        let ids2: Vec<&str> = spec.cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ids2, "case identifiers must be mode-independent");
    }

    #[test]
    fn combined_suite_collects_every_component_deterministically() {
        let cfg = config(SuiteKind::All, "A2", 2);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert!(a.all_passed(), "{}", a.render_text());
        assert_eq!(a.to_json(), b.to_json(), "reports must be byte-identical");
        for prefix in ["relations:", "hopf:", "pairing:", "cocycle:", "kashiwara:"] {
            assert!(
                a.cases.iter().any(|c| c.id.starts_with(prefix)),
                "missing {prefix} cases"
            );
        }
        assert_eq!(a.suite, "all");
    }

    #[test]
    fn cocycle_filter_limits_the_twist_cases() {
        let mut cfg = config(SuiteKind::Cocycle, "A2", 2);
        cfg.case = CaseFilter::II;
        let report = run_suite(&cfg).unwrap();
        assert!(report.all_passed(), "{}", report.render_text());
        assert!(report.cases.iter().any(|c| c.id.contains("case-II")));
        assert!(!report.cases.iter().any(|c| c.id.contains("case-I-")));
        // One record per ordered node pair and per structural check.
        let pair_records = report
            .cases
            .iter()
            .filter(|c| c.id.contains("pair-"))
            .count();
        assert_eq!(pair_records, 2);
    }
}
