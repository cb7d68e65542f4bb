//! Cartan data of finite type and the structure constants it induces.
//!
//! A [`CartanDatum`] is a symmetrizable Cartan matrix `A = (a_ij)` together
//! with the minimal positive symmetrizers `d = (d_i)`, restricted to finite
//! type (the symmetrized matrix is positive definite). On top of it sits the
//! asymmetric bilinear *Euler form* on the root lattice,
//!
//! ```text
//! <i, j> = d_i a_ij  (i < j),   <i, i> = d_i,   <i, j> = 0  (i > j),
//! ```
//!
//! extended bilinearly to arbitrary lattice elements. It satisfies
//! `<i,j> + <j,i> = d_i a_ij` and is the single source of every structure
//! constant in the presentation: the conjugation factors of group-likes
//! acting on the generators, and the coefficients of the quantum Serre
//! relations.
//!
//! Indices are 1-based throughout the public API: `I = {1, …, rank}`.

use crate::scalars::LaurentMonomial;
use num::Integer;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("Cartan matrix must be square and nonempty")]
    NotSquare,
    #[error("Cartan matrix must have 2 on the diagonal (row {0})")]
    BadDiagonal(usize),
    #[error("off-diagonal entries must be nonpositive (at ({0}, {1}))")]
    PositiveOffDiagonal(usize, usize),
    #[error("entry ({0}, {1}) vanishes but its transpose does not")]
    AsymmetricZero(usize, usize),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("matrix is not of finite type (symmetrization is not positive definite)")]
    NotFiniteType,
    #[error("invalid symmetrizers: {0}")]
    BadSymmetrizers(String),
    #[error("unknown type {0:?} (expected A1.., B2.., C2.., D4.., E6, E7, E8, F4, G2)")]
    UnknownType(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// An element of the root lattice, stored by its coordinates in the simple
/// roots: `Weight(c)` is `Σ c[i] α_(i+1)`. Coordinates may be negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The simple root `α_i` (1-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "simple root index out of range");
        let mut c = vec![0; rank];
        c[i - 1] = 1;
        Weight(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `Some(i)` iff this is exactly the simple root `α_i`.
    pub fn as_simple(&self) -> Option<usize> {
        let mut found = None;
        for (k, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(k + 1),
                _ => return None,
            }
        }
        found
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "weight rank mismatch");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "weight rank mismatch");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.iter().map(|&a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|&a| k * a).collect())
    }

    /// Sum of the coordinates (the height for nonnegative weights).
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                f.write_str("+")?;
            }
            if c == -1 {
                f.write_str("-")?;
            } else if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", k + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Which generator kind is conjugated by which group-like: the scalar λ in
/// `g x g^(-1) = λ x` for `g` the group-like of the given weight.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjugationKind {
    /// `ω_μ e_j ω_μ^(-1)`
    EByOmega,
    /// `ω'_ν e_j ω'_ν^(-1)`
    EByOmegaPrime,
    /// `ω_μ f_j ω_μ^(-1)`
    FByOmega,
    /// `ω'_ν f_j ω'_ν^(-1)`
    FByOmegaPrime,
}

/// A validated symmetrizable Cartan matrix of finite type with its minimal
/// positive symmetrizers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanDatum {
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl CartanDatum {
    /// Validates a Cartan matrix, computes the minimal positive symmetrizers,
    /// and checks finite type.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let d = Self::solve_symmetrizers(&a)?;
        Self::with_symmetrizers(a, d)
    }

    /// Like [`CartanDatum::new`], but with caller-supplied symmetrizers
    /// (positive integers `d_i` with `d_i a_ij = d_j a_ji`).
    pub fn with_symmetrizers(a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, CartanError> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) {
            return Err(CartanError::NotSquare);
        }
        for (i, row) in a.iter().enumerate() {
            if row[i] != 2 {
                return Err(CartanError::BadDiagonal(i + 1));
            }
            for (j, &e) in row.iter().enumerate() {
                if i != j {
                    if e > 0 {
                        return Err(CartanError::PositiveOffDiagonal(i + 1, j + 1));
                    }
                    if (e == 0) != (a[j][i] == 0) {
                        return Err(CartanError::AsymmetricZero(i + 1, j + 1));
                    }
                }
            }
        }
        if d.len() != n {
            return Err(CartanError::BadSymmetrizers(format!(
                "expected {} symmetrizers, got {}",
                n,
                d.len()
            )));
        }
        if let Some(k) = d.iter().position(|&x| x <= 0) {
            return Err(CartanError::BadSymmetrizers(format!(
                "d_{} = {} is not positive",
                k + 1,
                d[k]
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(CartanError::BadSymmetrizers(format!(
                        "d_{} a_{}{} != d_{} a_{}{}",
                        i + 1,
                        i + 1,
                        j + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let datum = CartanDatum { a, d };
        if !datum.symmetrization_is_positive_definite() {
            return Err(CartanError::NotFiniteType);
        }
        Ok(datum)
    }

    /// Builds one of the built-in finite types from its name: `A1`, `A2`, …,
    /// `B2`, …, `C2`, …, `D4`, …, `E6`, `E7`, `E8`, `F4`, `G2`.
    ///
    /// Orientation conventions: `B2` puts the short root first (`a_12 = -2`,
    /// `d = (1, 2)`), so `B2` and `C2` coincide. For `n >= 3`, `B_n` has its
    /// short root last (`d = (2, …, 2, 1)`) and `C_n` its long root last
    /// (`d = (1, …, 1, 2)`). `G2` has `a_12 = -3`, `d = (1, 3)`; `F4` has the
    /// long roots first, `d = (2, 2, 1, 1)`.
    pub fn named(name: &str) -> Result<Self, CartanError> {
        let err = || CartanError::UnknownType(name.to_string());
        let name = name.trim();
        let (family, digits) = name.split_at(name.len().min(1));
        let rank: usize = digits.parse().map_err(|_| err())?;
        let chain = |n: usize| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; n]; n];
            for i in 0..n {
                m[i][i] = 2;
                if i + 1 < n {
                    m[i][i + 1] = -1;
                    m[i + 1][i] = -1;
                }
            }
            m
        };
        let m = match (family, rank) {
            ("A", n) if n >= 1 => chain(n),
            ("B", 2) | ("C", 2) => vec![vec![2, -2], vec![-1, 2]],
            ("B", n) if n >= 3 => {
                let mut m = chain(n);
                m[n - 1][n - 2] = -2;
                m
            }
            ("C", n) if n >= 3 => {
                let mut m = chain(n);
                m[n - 2][n - 1] = -2;
                m
            }
            ("D", n) if n >= 4 => {
                // Chain 1-2-…-(n-1), with node n forking off node n-2.
                let mut m = chain(n - 1);
                for row in &mut m {
                    row.push(0);
                }
                let mut last = vec![0; n];
                last[n - 1] = 2;
                m.push(last);
                m[n - 1][n - 3] = -1;
                m[n - 3][n - 1] = -1;
                m
            }
            ("E", n @ 6..=8) => {
                // Nodes follow the standard numbering: a chain
                // 1-3-4-5-6(-7)(-8) with node 2 attached to node 4.
                let edges: &[(usize, usize)] =
                    &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
                let mut m = vec![vec![0i64; n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for &(u, v) in edges {
                    if u <= n && v <= n {
                        m[u - 1][v - 1] = -1;
                        m[v - 1][u - 1] = -1;
                    }
                }
                m
            }
            ("F", 4) => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ],
            ("G", 2) => vec![vec![2, -3], vec![-1, 2]],
            _ => return Err(err()),
        };
        Self::new(m)
    }

    /// Names of all built-in types at desk-scale ranks, for exhaustive sweeps.
    pub fn builtin_names() -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for n in 1..=4 {
            names.push(format!("A{n}"));
        }
        for n in 2..=4 {
            names.push(format!("B{n}"));
            names.push(format!("C{n}"));
        }
        names.push("D4".into());
        names.push("E6".into());
        names.push("F4".into());
        names.push("G2".into());
        names
    }

    fn solve_symmetrizers(a: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) {
            return Err(CartanError::NotSquare);
        }
        // Propagate the ratios d_j / d_i = a_ij / a_ji along nonzero entries,
        // one connected component at a time, then clear denominators to the
        // minimal positive integer solution.
        type Ratio = num::rational::Ratio<i64>;
        let mut val: Vec<Option<Ratio>> = vec![None; n];
        for start in 0..n {
            if val[start].is_some() {
                continue;
            }
            val[start] = Some(Ratio::from_integer(1));
            let mut stack = vec![start];
            let mut component = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i == j || a[i][j] == 0 {
                        continue;
                    }
                    if a[j][i] == 0 {
                        return Err(CartanError::AsymmetricZero(j + 1, i + 1));
                    }
                    let next = val[i].unwrap() * Ratio::new(a[i][j], a[j][i]);
                    match val[j] {
                        None => {
                            val[j] = Some(next);
                            stack.push(j);
                            component.push(j);
                        }
                        Some(existing) => {
                            if existing != next {
                                return Err(CartanError::NotSymmetrizable);
                            }
                        }
                    }
                }
            }
            // Scale this component to coprime positive integers.
            let lcm_den = component
                .iter()
                .fold(1i64, |acc, &k| acc.lcm(val[k].unwrap().denom()));
            let mut ints: Vec<i64> = component
                .iter()
                .map(|&k| (val[k].unwrap() * Ratio::from_integer(lcm_den)).to_integer())
                .collect();
            if ints.iter().any(|&x| x <= 0) {
                return Err(CartanError::NotSymmetrizable);
            }
            let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            for x in &mut ints {
                *x /= g;
            }
            for (&k, &x) in component.iter().zip(&ints) {
                val[k] = Some(Ratio::from_integer(x));
            }
        }
        let d: Vec<i64> = val.into_iter().map(|x| x.unwrap().to_integer()).collect();
        // Full verification (catches inconsistent cycles not seen by the
        // spanning tree walk).
        for i in 0..n {
            for j in 0..n {
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(CartanError::NotSymmetrizable);
                }
            }
        }
        Ok(d)
    }

    /// Sylvester's criterion on the symmetrization `(d_i a_ij)`, with
    /// fraction-free integer determinants.
    fn symmetrization_is_positive_definite(&self) -> bool {
        let n = self.rank();
        for k in 1..=n {
            let minor: Vec<Vec<i128>> = (0..k)
                .map(|i| (0..k).map(|j| (self.d[i] * self.a[i][j]) as i128).collect())
                .collect();
            if bareiss_det(minor) <= 0 {
                return false;
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Cartan matrix entry `a_ij` (1-based).
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.check_index(i);
        self.check_index(j);
        self.a[i - 1][j - 1]
    }

    /// Symmetrizer `d_i` (1-based).
    pub fn d(&self, i: usize) -> i64 {
        self.check_index(i);
        self.d[i - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    fn check_index(&self, i: usize) {
        assert!(
            (1..=self.rank()).contains(&i),
            "index {} out of range for rank {}",
            i,
            self.rank()
        );
    }

    /// The Euler form on basis elements (1-based indices).
    pub fn euler_basis(&self, i: usize, j: usize) -> i64 {
        self.check_index(i);
        self.check_index(j);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.d[i - 1] * self.a[i - 1][j - 1],
            std::cmp::Ordering::Equal => self.d[i - 1],
            std::cmp::Ordering::Greater => 0,
        }
    }

    /// The Euler form, extended bilinearly to the root lattice.
    pub fn euler(&self, mu: &Weight, nu: &Weight) -> i64 {
        assert_eq!(mu.rank(), self.rank(), "weight rank mismatch");
        assert_eq!(nu.rank(), self.rank(), "weight rank mismatch");
        let mut total = 0;
        for (i, &ci) in mu.0.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &cj) in nu.0.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                total += ci * cj * self.euler_basis(i + 1, j + 1);
            }
        }
        total
    }

    /// The symmetric form `(α_i, α_j) = d_i a_ij = <i,j> + <j,i>`.
    pub fn sym(&self, i: usize, j: usize) -> i64 {
        self.d(i) * self.a(i, j)
    }

    /// The scalar `λ` in `g x_j g^(-1) = λ x_j`, where `g` is the group-like
    /// attached to `mu` and `x_j` the generator selected by `kind`, expressed
    /// as a monomial in the algebra's parameter pair `(r, s)`.
    ///
    /// * `ω_μ e_j ω_μ^(-1) = r^<j,μ> s^(-<μ,j>) e_j`
    /// * `ω'_μ e_j ω'_μ^(-1) = r^(-<μ,j>) s^<j,μ> e_j`
    /// * `ω_μ f_j ω_μ^(-1) = r^(-<j,μ>) s^<μ,j> f_j`
    /// * `ω'_μ f_j ω'_μ^(-1) = r^<μ,j> s^(-<j,μ>) f_j`
    pub fn conjugation_factor(
        &self,
        kind: ConjugationKind,
        j: usize,
        mu: &Weight,
        r: &LaurentMonomial,
        s: &LaurentMonomial,
    ) -> LaurentMonomial {
        self.check_index(j);
        let alpha_j = Weight::simple(self.rank(), j);
        let jm = self.euler(&alpha_j, mu);
        let mj = self.euler(mu, &alpha_j);
        let (re, se) = match kind {
            ConjugationKind::EByOmega => (jm, -mj),
            ConjugationKind::EByOmegaPrime => (-mj, jm),
            ConjugationKind::FByOmega => (-jm, mj),
            ConjugationKind::FByOmegaPrime => (mj, -jm),
        };
        monomial_power(r, re).mul(&monomial_power(s, se))
    }

    /// The coefficient `c_ij^(k) = (r_i s_i^(-1))^(k(k-1)/2) r^(k<j,i>)
    /// s^(-k<i,j>)` from the quantum Serre relations, as a monomial in the
    /// algebra's parameter pair.
    pub fn serre_coefficient(
        &self,
        i: usize,
        j: usize,
        k: u32,
        r: &LaurentMonomial,
        s: &LaurentMonomial,
    ) -> LaurentMonomial {
        self.check_index(i);
        self.check_index(j);
        assert_ne!(i, j, "Serre coefficients need distinct indices");
        let k = k as i64;
        let di = self.d(i);
        let tri = di * k * (k - 1) / 2;
        let ji = self.euler_basis(j, i);
        let ij = self.euler_basis(i, j);
        monomial_power(r, tri + k * ji).mul(&monomial_power(s, -tri - k * ij))
    }
}

/// `m^e` for an `i64` exponent (desk-scale exponents fit in `i32`).
pub(crate) fn monomial_power(m: &LaurentMonomial, e: i64) -> LaurentMonomial {
    m.pow(i32::try_from(e).expect("exponent fits in i32"))
}

/// Fraction-free determinant (Bareiss); consumes its argument.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&p| m[p][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Var;

    fn r() -> LaurentMonomial {
        LaurentMonomial::var(Var::R, 1)
    }
    fn s() -> LaurentMonomial {
        LaurentMonomial::var(Var::S, 1)
    }

    #[test]
    fn symmetrizers_of_named_types() {
        assert_eq!(CartanDatum::named("A2").unwrap().symmetrizers(), &[1, 1]);
        assert_eq!(CartanDatum::named("G2").unwrap().symmetrizers(), &[1, 3]);
        let b2 = CartanDatum::named("B2").unwrap();
        assert_eq!(b2.a(1, 2), -2);
        assert_eq!(b2.a(2, 1), -1);
        assert_eq!(b2.symmetrizers(), &[1, 2]);
        assert_eq!(CartanDatum::named("B3").unwrap().symmetrizers(), &[2, 2, 1]);
        assert_eq!(CartanDatum::named("C3").unwrap().symmetrizers(), &[1, 1, 2]);
        assert_eq!(CartanDatum::named("F4").unwrap().symmetrizers(), &[2, 2, 1, 1]);
        assert_eq!(CartanDatum::named("D4").unwrap().symmetrizers(), &[1, 1, 1, 1]);
        assert_eq!(CartanDatum::named("E6").unwrap().rank(), 6);
    }

    #[test]
    fn non_symmetrizable_matrix_is_rejected() {
        // Zero entry paired with a nonzero transpose entry.
        let err = CartanDatum::new(vec![vec![2, -1], vec![0, 2]]).unwrap_err();
        assert!(matches!(err, CartanError::AsymmetricZero(..)));
    }

    #[test]
    fn non_finite_type_is_rejected() {
        // The affine 2x2 matrix is symmetrizable but its symmetrization is
        // singular.
        let err = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]]).unwrap_err();
        assert_eq!(err, CartanError::NotFiniteType);
        let err = CartanDatum::new(vec![vec![2, -4], vec![-1, 2]]).unwrap_err();
        assert_eq!(err, CartanError::NotFiniteType);
    }

    #[test]
    fn explicit_symmetrizers_are_checked() {
        let m = vec![vec![2, -2], vec![-1, 2]];
        assert!(CartanDatum::with_symmetrizers(m.clone(), vec![1, 2]).is_ok());
        assert!(matches!(
            CartanDatum::with_symmetrizers(m.clone(), vec![1, 1]),
            Err(CartanError::BadSymmetrizers(_))
        ));
        assert!(matches!(
            CartanDatum::with_symmetrizers(m, vec![1, -2]),
            Err(CartanError::BadSymmetrizers(_))
        ));
    }

    #[test]
    fn unknown_names_are_rejected() {
        for bad in ["A0", "B1", "D3", "E9", "F3", "G3", "H2", "", "A"] {
            assert!(CartanDatum::named(bad).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn euler_form_on_a2() {
        let c = CartanDatum::named("A2").unwrap();
        assert_eq!(c.euler_basis(1, 2), -1);
        assert_eq!(c.euler_basis(2, 1), 0);
        assert_eq!(c.euler_basis(1, 1), 1);
        let a1 = Weight::simple(2, 1);
        let a2 = Weight::simple(2, 2);
        assert_eq!(c.euler(&a1.add(&a2), &a1), 1);
        assert_eq!(c.euler(&a1, &a1.add(&a2)), 0);
    }

    #[test]
    fn euler_form_sums_to_symmetric_form() {
        for name in CartanDatum::builtin_names() {
            let c = CartanDatum::named(&name).unwrap();
            for i in 1..=c.rank() {
                for j in 1..=c.rank() {
                    assert_eq!(
                        c.euler_basis(i, j) + c.euler_basis(j, i),
                        c.sym(i, j),
                        "{name} ({i},{j})"
                    );
                    assert_eq!(c.sym(i, j), c.sym(j, i), "{name} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn euler_form_is_bilinear() {
        let c = CartanDatum::named("G2").unwrap();
        let w = |a, b| Weight(vec![a, b]);
        for (mu, nu, xi) in [
            (w(1, 0), w(0, 1), w(1, 1)),
            (w(2, -1), w(1, 3), w(-1, 2)),
            (w(0, 0), w(5, 1), w(1, -4)),
        ] {
            assert_eq!(
                c.euler(&mu.add(&nu), &xi),
                c.euler(&mu, &xi) + c.euler(&nu, &xi)
            );
            assert_eq!(
                c.euler(&xi, &mu.add(&nu)),
                c.euler(&xi, &mu) + c.euler(&xi, &nu)
            );
        }
    }

    #[test]
    fn serre_coefficients_on_a2() {
        let c = CartanDatum::named("A2").unwrap();
        // k = 0 is always 1.
        assert!(c.serre_coefficient(1, 2, 0, &r(), &s()).is_one());
        // (i,j,k) = (1,2,1): r^<2,1> s^(-<1,2>) = s.
        assert_eq!(c.serre_coefficient(1, 2, 1, &r(), &s()), s());
        // (i,j,k) = (2,1,1): r^<1,2> s^(-<2,1>) = r^(-1).
        assert_eq!(
            c.serre_coefficient(2, 1, 1, &r(), &s()),
            LaurentMonomial::var(Var::R, -1)
        );
        // (i,j,k) = (1,2,2): (r s^-1)^1 r^0 s^(-2·(-1)) = r s.
        assert_eq!(c.serre_coefficient(1, 2, 2, &r(), &s()), r().mul(&s()));
    }

    #[test]
    fn conjugation_factors_on_a2() {
        let c = CartanDatum::named("A2").unwrap();
        let a1 = Weight::simple(2, 1);
        // ω_(α1) e_2 ω_(α1)^(-1) = r^<2,1> s^(-<1,2>) e_2 = s e_2.
        assert_eq!(
            c.conjugation_factor(ConjugationKind::EByOmega, 2, &a1, &r(), &s()),
            s()
        );
        // The matching factor on f_2 is the inverse.
        assert_eq!(
            c.conjugation_factor(ConjugationKind::FByOmega, 2, &a1, &r(), &s()),
            s().inv()
        );
        // Zero weight conjugates trivially.
        let zero = Weight::zero(2);
        for kind in [
            ConjugationKind::EByOmega,
            ConjugationKind::EByOmegaPrime,
            ConjugationKind::FByOmega,
            ConjugationKind::FByOmegaPrime,
        ] {
            assert!(c.conjugation_factor(kind, 1, &zero, &r(), &s()).is_one());
        }
    }

    #[test]
    fn omega_conjugation_factors_are_mutually_inverse() {
        for name in ["A2", "B2", "G2", "A3"] {
            let c = CartanDatum::named(name).unwrap();
            let rank = c.rank();
            for j in 1..=rank {
                for i in 1..=rank {
                    let mu = Weight::simple(rank, i);
                    for (ek, fk) in [
                        (ConjugationKind::EByOmega, ConjugationKind::FByOmega),
                        (ConjugationKind::EByOmegaPrime, ConjugationKind::FByOmegaPrime),
                    ] {
                        let e = c.conjugation_factor(ek, j, &mu, &r(), &s());
                        let f = c.conjugation_factor(fk, j, &mu, &r(), &s());
                        assert!(e.mul(&f).is_one(), "{name} j={j} mu=a{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_is_additive_in_the_weight() {
        let c = CartanDatum::named("B2").unwrap();
        let mu = Weight(vec![2, -1]);
        let nu = Weight(vec![0, 3]);
        for kind in [ConjugationKind::EByOmega, ConjugationKind::EByOmegaPrime] {
            let lhs = c.conjugation_factor(kind, 1, &mu.add(&nu), &r(), &s());
            let rhs = c
                .conjugation_factor(kind, 1, &mu, &r(), &s())
                .mul(&c.conjugation_factor(kind, 1, &nu, &r(), &s()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn weights_behave_as_lattice_elements() {
        let mu = Weight(vec![1, -2, 0]);
        let nu = Weight(vec![0, 2, 1]);
        assert_eq!(mu.add(&nu), Weight(vec![1, 0, 1]));
        assert_eq!(mu.add(&mu.neg()), Weight::zero(3));
        assert_eq!(Weight::simple(3, 2).as_simple(), Some(2));
        assert_eq!(Weight(vec![1, 1, 0]).as_simple(), None);
        assert_eq!(Weight(vec![0, 2, 0]).as_simple(), None);
        assert_eq!(mu.height(), -1);
        assert_eq!(Weight::simple(3, 1).to_string(), "a1");
        assert_eq!(Weight(vec![1, 0, -2]).to_string(), "a1-2a3");
        assert_eq!(Weight::zero(2).to_string(), "0");
    }
}
