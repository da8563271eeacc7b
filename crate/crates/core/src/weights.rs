//! Truncated weight models of the discrete series D_n^± and the principal
//! and complementary series H_μ, with exact ladder matrices over Q(i).
//!
//! The compact generator H₀ is diagonal with integer weights; the ladders
//! satisfy H₊v_k = v_{k+1} (discrete series, non-unitary scaling) and
//! H₋v_k = d_k v_{k−1} with d_{k+1} = d_k + 2k forced by [H₊,H₋] = −2H₀.
//! For D_n^+ the lowest weight pins d_n = 0, so d_k = k(k−1) − n(n−1); for
//! H_μ the Casimir eigenvalue pins d_k = k(k−1) − 2μ. The noncompact basis
//! is recovered from E = (H₋ − H₊ + 2iH₀)/4, H = (H₊ + H₋)/(2√2 i),
//! F = E − iH₀. No truncated inverse of π(E) is ever formed.

use crate::identities::VerificationResult;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("discrete series index must satisfy n ≥ 1, got {0}")]
    BadIndex(i64),
    #[error("top weight {top} too small for index {n}: need top ≥ n + 4")]
    WindowTooSmall { n: i64, top: i64 },
    #[error("window width {0} too small: need at least 8")]
    NarrowWindow(i64),
    #[error("1 + 8μ = {0} is not the square of a rational")]
    NotASquare(BigRational),
    #[error("window does not separate the functional solutions")]
    FunctionalsUnresolved,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepTag {
    /// Holomorphic discrete series, weights ≥ n.
    DiscretePlus(i64),
    /// Antiholomorphic discrete series, weights ≤ −n.
    DiscreteMinus(i64),
    /// Principal or complementary series with Casimir parameter μ.
    Principal,
}

/// A truncated weight model: basis v_k for k in [w_lo, w_hi].
pub struct WeightModel {
    pub tag: RepTag,
    pub mu: Option<BigRational>,
    pub w_lo: i64,
    pub w_hi: i64,
    pub h0: Matrix,
    pub h_plus: Matrix,
    pub h_minus: Matrix,
    pub e: Matrix,
    pub h: Matrix,
    pub f: Matrix,
}

impl std::fmt::Debug for WeightModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "WeightModel({:?}, weights {}..={})",
            self.tag, self.w_lo, self.w_hi
        )
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Exact square root of a rational, if it exists.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    let candidate = BigRational::new(num, den);
    if &(&candidate * &candidate) == x {
        Some(candidate)
    } else {
        None
    }
}

impl WeightModel {
    pub fn dim(&self) -> usize {
        (self.w_hi - self.w_lo + 1) as usize
    }

    pub fn index_of_weight(&self, k: i64) -> usize {
        assert!((self.w_lo..=self.w_hi).contains(&k));
        (k - self.w_lo) as usize
    }

    /// Columns on which a single application of any generator is exact.
    pub fn interior(&self, margin: i64) -> Vec<i64> {
        let lo = match self.tag {
            // Genuine lowest (resp. highest) weight: that edge is exact.
            RepTag::DiscretePlus(_) => self.w_lo,
            _ => self.w_lo + margin,
        };
        let hi = match self.tag {
            RepTag::DiscreteMinus(_) => self.w_hi,
            _ => self.w_hi - margin,
        };
        (lo..=hi).collect()
    }

    fn ladder_coefficient(&self, k: i64) -> BigRational {
        // d_k for the H₋-ladder of D_n^+ / the H₊-ladder mirror of D_n^−.
        match self.tag {
            RepTag::DiscretePlus(n) => rational(k * (k - 1) - n * (n - 1)),
            RepTag::DiscreteMinus(n) => rational(k * (k - 1) - n * (n - 1)),
            RepTag::Principal => {
                let mu = self.mu.as_ref().expect("principal parameter");
                rational(k * (k - 1)) - mu * rational(2)
            }
        }
    }
}

/// Builds the exact matrices for one truncation.
pub fn build_model(
    tag: RepTag,
    mu: Option<BigRational>,
    window: i64,
) -> Result<WeightModel, ModelError> {
    let (w_lo, w_hi) = match tag {
        RepTag::DiscretePlus(n) => {
            if n < 1 {
                return Err(ModelError::BadIndex(n));
            }
            if window < n + 4 {
                return Err(ModelError::WindowTooSmall { n, top: window });
            }
            (n, window)
        }
        RepTag::DiscreteMinus(n) => {
            if n < 1 {
                return Err(ModelError::BadIndex(n));
            }
            if window < n + 4 {
                return Err(ModelError::WindowTooSmall { n, top: window });
            }
            (-window, -n)
        }
        RepTag::Principal => {
            if window < 4 {
                return Err(ModelError::NarrowWindow(2 * window));
            }
            let mu_val = mu.clone().expect("principal parameter required");
            let disc = rational(1) + &mu_val * rational(8);
            if rational_sqrt(&disc).is_none() {
                return Err(ModelError::NotASquare(disc));
            }
            (-window, window)
        }
    };
    let dim = (w_hi - w_lo + 1) as usize;
    let mut model = WeightModel {
        tag,
        mu,
        w_lo,
        w_hi,
        h0: Matrix::zero(dim, dim),
        h_plus: Matrix::zero(dim, dim),
        h_minus: Matrix::zero(dim, dim),
        e: Matrix::zero(dim, dim),
        h: Matrix::zero(dim, dim),
        f: Matrix::zero(dim, dim),
    };
    for k in w_lo..=w_hi {
        let idx = model.index_of_weight(k);
        let up = if k < w_hi {
            Some(model.index_of_weight(k + 1))
        } else {
            None
        };
        let down = if k > w_lo {
            Some(model.index_of_weight(k - 1))
        } else {
            None
        };
        let ladder_up = Scalar::from_rational(model.ladder_coefficient(-k));
        let ladder_down = Scalar::from_rational(model.ladder_coefficient(k));
        model.h0[(idx, idx)] = Scalar::from_rational(rational(k));
        match tag {
            RepTag::DiscreteMinus(_) => {
                // Mirror ladder: H₊v_k = d_{−k} v_{k+1}, H₋v_k = v_{k−1}.
                if let Some(u) = up {
                    model.h_plus[(u, idx)] = ladder_up;
                }
                if let Some(d) = down {
                    model.h_minus[(d, idx)] = Scalar::one();
                }
            }
            _ => {
                if let Some(u) = up {
                    model.h_plus[(u, idx)] = Scalar::one();
                }
                if let Some(d) = down {
                    model.h_minus[(d, idx)] = ladder_down;
                }
            }
        }
    }
    // E = (H₋ − H₊ + 2iH₀)/4, H = (H₊ + H₋)/(2√2 i), F = E − iH₀.
    let quarter = Scalar::from_ratio(1, 4);
    let two_i = Scalar::from_int(2) * Scalar::i();
    model.e = (&(&model.h_minus - &model.h_plus) + &model.h0.scale(&two_i)).scale(&quarter);
    let inv_2r2i = (Scalar::from_int(2) * Scalar::sqrt2() * Scalar::i())
        .inv()
        .expect("nonzero");
    model.h = (&model.h_plus + &model.h_minus).scale(&inv_2r2i);
    model.f = &model.e - &model.h0.scale(&Scalar::i());
    Ok(model)
}

/// Checks the bracket relations of (H₀, H₊, H₋) and (E, H, F) on the interior
/// columns with margin 1.
pub fn bracket_checks(m: &WeightModel) -> VerificationResult {
    let start = Instant::now();
    let mut mismatches = 0usize;
    let commutator = |a: &Matrix, b: &Matrix| -> Matrix { &(a * b) - &(b * a) };
    let pairs: Vec<(Matrix, Matrix)> = vec![
        // [H₀, H₊] = H₊
        (commutator(&m.h0, &m.h_plus), m.h_plus.clone()),
        // [H₀, H₋] = −H₋
        (
            commutator(&m.h0, &m.h_minus),
            m.h_minus.scale(&-Scalar::one()),
        ),
        // [H₊, H₋] = −2H₀
        (
            commutator(&m.h_plus, &m.h_minus),
            m.h0.scale(&Scalar::from_int(-2)),
        ),
        // [H, E] = (1/√2)E, [H, F] = −(1/√2)F, [E, F] = (1/√2)H
        (commutator(&m.h, &m.e), m.e.scale(&Scalar::inv_sqrt2())),
        (commutator(&m.h, &m.f), m.f.scale(&-Scalar::inv_sqrt2())),
        (commutator(&m.e, &m.f), m.h.scale(&Scalar::inv_sqrt2())),
    ];
    for k in m.interior(1) {
        let col = m.index_of_weight(k);
        for (lhs, rhs) in &pairs {
            for row_k in m.w_lo..=m.w_hi {
                let row = m.index_of_weight(row_k);
                if lhs[(row, col)] != rhs[(row, col)] {
                    mismatches += 1;
                }
            }
        }
    }
    VerificationResult::from_flag(
        "weight-bracket-relations",
        mismatches == 0,
        mismatches,
        start,
    )
}

/// (2EF + H² − (1/√2)H) v_k = scalar · v_k on the margin-2 interior; returns
/// the scalar alongside the check.
pub fn casimir_check(m: &WeightModel) -> (VerificationResult, Option<Scalar>) {
    let start = Instant::now();
    let omega = &(&(&m.e * &m.f).scale(&Scalar::from_int(2)) + &(&m.h * &m.h))
        - &m.h.scale(&Scalar::inv_sqrt2());
    let expected = match m.tag {
        RepTag::DiscretePlus(n) | RepTag::DiscreteMinus(n) => {
            Scalar::from_rational(rational(n * (n - 1)) / rational(2))
        }
        RepTag::Principal => Scalar::from_rational(m.mu.clone().expect("parameter")),
    };
    let mut mismatches = 0usize;
    for k in m.interior(2) {
        let col = m.index_of_weight(k);
        for row_k in m.w_lo..=m.w_hi {
            let row = m.index_of_weight(row_k);
            let want = if row == col {
                expected.clone()
            } else {
                Scalar::zero()
            };
            if omega[(row, col)] != want {
                mismatches += 1;
            }
        }
    }
    let result =
        VerificationResult::from_flag("weight-casimir-scalar", mismatches == 0, mismatches, start);
    (
        result,
        if mismatches == 0 {
            Some(expected)
        } else {
            None
        },
    )
}

/// A row-vector functional over the weight window.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub w_lo: i64,
    pub entries: Vec<Scalar>,
}

impl Functional {
    pub fn entry(&self, k: i64) -> &Scalar {
        &self.entries[(k - self.w_lo) as usize]
    }
}

/// Basis of solutions of φ∘π(E) = 0 on the interior columns, together with
/// the eigenvalue ε with φ∘π(H) = ε·φ on a margin-2 sub-window. Discrete
/// series give one solution, the principal window two.
pub fn invariant_functionals(m: &WeightModel) -> Result<Vec<(Functional, Scalar)>, ModelError> {
    let dim = m.dim();
    // Constraint columns: where π(E)'s truncated column is exact.
    let cols: Vec<usize> = m
        .interior(1)
        .iter()
        .map(|&k| m.index_of_weight(k))
        .collect();
    // φ · E = 0 on those columns: unknowns are the φ entries.
    let mut system = Matrix::zero(cols.len(), dim);
    for (r, &c) in cols.iter().enumerate() {
        for j in 0..dim {
            system[(r, j)] = m.e[(j, c)].clone();
        }
    }
    let kernel = system.kernel_basis();
    let expected = match m.tag {
        RepTag::Principal => 2,
        _ => 1,
    };
    if kernel.len() != expected {
        return Err(ModelError::FunctionalsUnresolved);
    }
    // Candidate eigenvalues from the parameter.
    let eigenvalues: Vec<Scalar> = match m.tag {
        RepTag::DiscretePlus(n) | RepTag::DiscreteMinus(n) => {
            vec![Scalar::from_rational(rational(n)) * Scalar::inv_sqrt2()]
        }
        RepTag::Principal => {
            let mu = m.mu.clone().expect("parameter");
            let root = rational_sqrt(&(rational(1) + &mu * rational(8)))
                .expect("validated at construction");
            let half = Scalar::from_ratio(1, 2) * Scalar::inv_sqrt2();
            vec![
                Scalar::from_rational(rational(1) + root.clone()) * half.clone(),
                Scalar::from_rational(rational(1) - root) * half,
            ]
        }
    };
    // For each eigenvalue, solve (φ∘π(H) − ε·φ)|sub-window = 0 within the
    // kernel: the sub-window drops margin 2 at truncated ends.
    let sub_cols: Vec<usize> = m
        .interior(2)
        .iter()
        .map(|&k| m.index_of_weight(k))
        .collect();
    let mut out = Vec::new();
    for eps in eigenvalues {
        let mut sys = Matrix::zero(sub_cols.len(), kernel.len());
        for (r, &c) in sub_cols.iter().enumerate() {
            for (j, phi) in kernel.iter().enumerate() {
                // (φ·H)_c − ε φ_c
                let mut acc = Scalar::zero();
                for row in 0..dim {
                    if !phi[row].is_zero() && !m.h[(row, c)].is_zero() {
                        acc += &phi[row] * &m.h[(row, c)];
                    }
                }
                sys[(r, j)] = acc - &eps * &phi[c];
            }
        }
        let solutions = sys.kernel_basis();
        if solutions.len() != 1 {
            return Err(ModelError::FunctionalsUnresolved);
        }
        let coeffs = &solutions[0];
        let mut entries = vec![Scalar::zero(); dim];
        for (j, phi) in kernel.iter().enumerate() {
            for (slot, e) in entries.iter_mut().enumerate() {
                *e += &coeffs[j] * &phi[slot];
            }
        }
        // Normalize at the nonzero entry of smallest |weight| (positive side
        // first), which is independent of the truncation window.
        let mut weights: Vec<i64> = (m.w_lo..=m.w_hi).collect();
        weights.sort_by_key(|&k| (k.abs(), -k));
        let pivot = weights
            .into_iter()
            .map(|k| m.index_of_weight(k))
            .find(|&idx| !entries[idx].is_zero())
            .ok_or(ModelError::FunctionalsUnresolved)?;
        let inv = entries[pivot].inv().expect("nonzero pivot");
        for e in entries.iter_mut() {
            *e = &*e * &inv;
        }
        out.push((
            Functional {
                w_lo: m.w_lo,
                entries,
            },
            eps,
        ));
    }
    Ok(out)
}

/// The inverse-free lowest-weight identities of a discrete-series model:
/// the annihilating ladder kills the extreme vector, and
/// (π(H) − (n/√2)) h = π(E)(s√2i·h) for exactly one sign s, which is
/// returned.
pub fn lowest_weight_checks(m: &WeightModel) -> (VerificationResult, Option<i8>) {
    let start = Instant::now();
    let n = match m.tag {
        RepTag::DiscretePlus(n) => n,
        RepTag::DiscreteMinus(n) => n,
        RepTag::Principal => {
            return (
                VerificationResult::from_flag("weight-lowest-vector", false, 1, start),
                None,
            )
        }
    };
    let extreme_weight = match m.tag {
        RepTag::DiscretePlus(_) => m.w_lo,
        _ => m.w_hi,
    };
    let idx = m.index_of_weight(extreme_weight);
    let mut h_vec = vec![Scalar::zero(); m.dim()];
    h_vec[idx] = Scalar::one();
    // Annihilation by the inward-pointing compact ladder.
    let annihilator = match m.tag {
        RepTag::DiscretePlus(_) => &m.h_minus,
        _ => &m.h_plus,
    };
    let killed = annihilator.apply(&h_vec);
    let mut mismatches = usize::from(!killed.iter().all(Scalar::is_zero));
    // (π(H) − n/√2) h = π(E)(s √2 i h).
    let lhs = {
        let mut v = m.h.apply(&h_vec);
        let shift = Scalar::from_rational(rational(n)) * Scalar::inv_sqrt2();
        v[idx] = v[idx].clone() - shift;
        v
    };
    let mut found_sign = None;
    for sign in [1i8, -1i8] {
        let s = if sign > 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let rhs =
            m.e.apply(&h_vec)
                .into_iter()
                .map(|x| x * s.clone() * Scalar::i_sqrt2())
                .collect::<Vec<_>>();
        if lhs == rhs {
            found_sign = Some(sign);
        }
    }
    if found_sign.is_none() {
        mismatches += 1;
    }
    (
        VerificationResult::from_flag("weight-lowest-vector", mismatches == 0, mismatches, start),
        found_sign,
    )
}

/// π(E) restricted to the interior columns has full column rank.
pub fn e_injectivity(m: &WeightModel) -> VerificationResult {
    let start = Instant::now();
    let cols: Vec<usize> = m
        .interior(1)
        .iter()
        .map(|&k| m.index_of_weight(k))
        .collect();
    let rows: Vec<usize> = (0..m.dim()).collect();
    let sub = m.e.submatrix(&rows, &cols);
    VerificationResult::from_flag(
        "weight-e-injective",
        sub.rank() == cols.len(),
        cols.len() - sub.rank(),
        start,
    )
}

/// All reported quantities agree between a truncation and a larger one on
/// the shared window (margin 2 at truncated ends).
pub fn window_stability(m1: &WeightModel, m2: &WeightModel) -> VerificationResult {
    let start = Instant::now();
    assert_eq!(m1.tag, m2.tag);
    assert_eq!(m1.mu, m2.mu);
    let mut mismatches = 0usize;
    let (c1, s1) = casimir_check(m1);
    let (c2, s2) = casimir_check(m2);
    if !c1.pass || !c2.pass || s1 != s2 {
        mismatches += 1;
    }
    match (invariant_functionals(m1), invariant_functionals(m2)) {
        (Ok(f1), Ok(f2)) => {
            if f1.len() != f2.len() {
                mismatches += 1;
            } else {
                let lo = (m1.w_lo + 2).max(m2.w_lo + 2);
                let hi = (m1.w_hi - 2).min(m2.w_hi - 2);
                for ((phi1, e1), (phi2, e2)) in f1.iter().zip(&f2) {
                    if e1 != e2 {
                        mismatches += 1;
                    }
                    for k in lo..=hi {
                        if phi1.entry(k) != phi2.entry(k) {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
        _ => mismatches += 1,
    }
    if matches!(m1.tag, RepTag::DiscretePlus(_) | RepTag::DiscreteMinus(_)) {
        let (r1, sign1) = lowest_weight_checks(m1);
        let (r2, sign2) = lowest_weight_checks(m2);
        if !r1.pass || !r2.pass || sign1 != sign2 {
            mismatches += 1;
        }
    }
    VerificationResult::from_flag(
        "weight-window-stability",
        mismatches == 0,
        mismatches,
        start,
    )
}

/// Matrix forms of the inverse-free rewrite consequences, checked on the
/// model: the commutation (π(H)+ν)π(E) = π(E)π(H) behind S·π(E) = π(H)+ν+1/√2,
/// the functional identities behind the rank-one rules, and the
/// lowest-weight substitution.
pub fn rewrite_consistency(m: &WeightModel) -> VerificationResult {
    let start = Instant::now();
    let n = match m.tag {
        RepTag::DiscretePlus(n) | RepTag::DiscreteMinus(n) => n,
        RepTag::Principal => {
            return VerificationResult::from_flag("weight-rewrite-consistency", false, 1, start)
        }
    };
    let nu = -(Scalar::from_rational(rational(n)) * Scalar::inv_sqrt2());
    let mut mismatches = 0usize;
    let interior: Vec<usize> = m
        .interior(2)
        .iter()
        .map(|&k| m.index_of_weight(k))
        .collect();
    // (π(H) + ν)π(E) = π(E)π(H) on interior columns.
    let lhs = &(&m.h + &Matrix::identity(m.dim()).scale(&nu)) * &m.e;
    let rhs = &m.e * &m.h;
    for &c in &interior {
        for r in 0..m.dim() {
            if lhs[(r, c)] != rhs[(r, c)] {
                mismatches += 1;
            }
        }
    }
    // Functional identities: φ∘π(E) = 0 and φ∘π(H) = (n/√2)φ on the interior.
    if let Ok(functionals) = invariant_functionals(m) {
        let (phi, eps) = &functionals[0];
        for &c in &interior {
            let mut phi_e = Scalar::zero();
            let mut phi_h = Scalar::zero();
            for r in 0..m.dim() {
                phi_e += &phi.entries[r] * &m.e[(r, c)];
                phi_h += &phi.entries[r] * &m.h[(r, c)];
            }
            if !phi_e.is_zero() {
                mismatches += 1;
            }
            if phi_h != eps * &phi.entries[c] {
                mismatches += 1;
            }
        }
        // h − φ(h)h = 0 for the extreme vector normalized by φ(h) = 1.
        let extreme = match m.tag {
            RepTag::DiscretePlus(_) => m.w_lo,
            _ => m.w_hi,
        };
        let idx = m.index_of_weight(extreme);
        if phi.entries[idx].is_zero() {
            mismatches += 1;
        }
    } else {
        mismatches += 1;
    }
    // π(H)h = (1/√2)h + s√2i·π(E)h with the recorded sign.
    let (lw, sign) = lowest_weight_checks(m);
    if !lw.pass || sign.is_none() {
        mismatches += 1;
    }
    VerificationResult::from_flag(
        "weight-rewrite-consistency",
        mismatches == 0,
        mismatches,
        start,
    )
}

/// The functional recurrence identity on interior weights: the eigen-relation
/// and the kernel recurrence combine to 2 d_k φ_{k−1} = 2i(n−k) φ_k.
pub fn functional_recurrence_consistency(m: &WeightModel) -> VerificationResult {
    let start = Instant::now();
    let RepTag::DiscretePlus(n) = m.tag else {
        return VerificationResult::from_flag("weight-recurrence-consistency", false, 1, start);
    };
    let Ok(functionals) = invariant_functionals(m) else {
        return VerificationResult::from_flag("weight-recurrence-consistency", false, 1, start);
    };
    let (phi, _) = &functionals[0];
    let mut mismatches = 0usize;
    let two_i = Scalar::from_int(2) * Scalar::i();
    for k in (m.w_lo + 1)..=(m.w_hi - 2) {
        let d_k = Scalar::from_rational(m.ladder_coefficient(k));
        // φ_{k+1} = d_k φ_{k−1} + 2ik φ_k  (kernel recurrence)
        let rec = d_k.clone() * phi.entry(k - 1).clone()
            + two_i.clone() * Scalar::from_int(k) * phi.entry(k).clone();
        if &rec != phi.entry(k + 1) {
            mismatches += 1;
        }
        // φ_{k+1} + d_k φ_{k−1} = 2in φ_k  (eigen-relation)
        let eig = phi.entry(k + 1).clone() + d_k.clone() * phi.entry(k - 1).clone();
        if eig != two_i.clone() * Scalar::from_int(n) * phi.entry(k).clone() {
            mismatches += 1;
        }
        // Their combination: 2 d_k φ_{k−1} = 2i(n−k) φ_k.
        let lhs = Scalar::from_int(2) * d_k * phi.entry(k - 1).clone();
        let rhs = two_i.clone() * Scalar::from_int(n - k) * phi.entry(k).clone();
        if lhs != rhs {
            mismatches += 1;
        }
    }
    VerificationResult::from_flag(
        "weight-recurrence-consistency",
        mismatches == 0,
        mismatches,
        start,
    )
}
