//! Multiplicity and dimension bookkeeping: the L²-decomposition table, the
//! classification of twisting parameters by cohomological type, and the
//! genus-parametrized dimension tables with their block-sum cross-checks.

use crate::identities::VerificationResult;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("genus must be at least 2, got {0}")]
    BadGenus(u64),
    #[error("spectrum eigenvalues must be positive and distinct")]
    BadSpectrum,
    #[error("multiplicities must be at least 1")]
    BadMultiplicity,
}

/// User-supplied positive Laplace eigenvalues with multiplicities; the zero
/// eigenvalue is implicit with multiplicity one.
#[derive(Clone, Debug)]
pub struct SpectrumTable {
    pub genus: u64,
    pub entries: Vec<(BigRational, u64)>,
}

impl SpectrumTable {
    pub fn new(genus: u64, entries: Vec<(BigRational, u64)>) -> Result<Self, TableError> {
        if genus < 2 {
            return Err(TableError::BadGenus(genus));
        }
        for (nu, m) in &entries {
            if !nu.is_positive() {
                return Err(TableError::BadSpectrum);
            }
            if *m < 1 {
                return Err(TableError::BadMultiplicity);
            }
        }
        let mut seen = entries.iter().map(|(nu, _)| nu.clone()).collect::<Vec<_>>();
        seen.sort();
        seen.dedup();
        if seen.len() != entries.len() {
            return Err(TableError::BadSpectrum);
        }
        Ok(SpectrumTable { genus, entries })
    }

    /// A synthetic example table used when no spectrum file is supplied.
    pub fn synthetic(genus: u64) -> Self {
        SpectrumTable::new(
            genus,
            vec![
                (BigRational::new(BigInt::from(2), BigInt::from(9)), 2),
                (BigRational::new(BigInt::from(1), BigInt::from(4)), 3),
                (BigRational::from(BigInt::from(5)), 1),
            ],
        )
        .expect("valid synthetic table")
    }

    pub fn multiplicity(&self, nu: &BigRational) -> Option<u64> {
        self.entries.iter().find(|(x, _)| x == nu).map(|(_, m)| *m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CoefficientTag {
    /// One-dimensional twist C_λ.
    Lambda(String),
    /// The adjoint representation of an (complexified).
    AnAdjoint,
    /// The adjoint representation of sl2 restricted to an (complexified).
    Sl2Adjoint,
}

/// The cohomological type of a twisting parameter λ.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaClass {
    /// λ = 0, the untwisted case.
    Trivial,
    /// λ = n/√2 for an integer n ≤ 1, n ≠ 0.
    HalfInteger(i64),
    /// λ matches a listed eigenvalue: λ² − λ/√2 = −ν/2 for (ν, m) in the
    /// table; `branch` records which root λ is.
    Spectral {
        nu: BigRational,
        multiplicity: u64,
        branch: SpectralBranch,
    },
    /// Every other value, including n/√2 with n ≥ 2: vanishing cohomology.
    ZeroCohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SpectralBranch {
    Plus,
    Minus,
}

/// Whether the two roots (1 ± √(1−4ν))/(2√2) for a table entry lie in
/// Q(i,√2); when they do not, dimension queries at those roots cannot be
/// posed exactly and are reported as requiring an irrational comparison.
pub fn spectral_lambdas(nu: &BigRational) -> Option<(Scalar, Scalar)> {
    let disc = BigRational::from(BigInt::from(1)) - nu * BigRational::from(BigInt::from(4));
    let half = Scalar::from_ratio(1, 2) * Scalar::inv_sqrt2();
    // 1 − 4ν = q²  or  2q²  (root q√2) on the real side; on the imaginary
    // side 4ν − 1 = q² or 2q².
    let root: Option<Scalar> = if disc.is_negative() {
        let neg = -disc.clone();
        if let Some(q) = exact_sqrt(&neg) {
            Some(Scalar::from_rational(q) * Scalar::i())
        } else {
            exact_sqrt(&(neg / BigRational::from(BigInt::from(2))))
                .map(|q| Scalar::from_rational(q) * Scalar::i_sqrt2())
        }
    } else if let Some(q) = exact_sqrt(&disc) {
        Some(Scalar::from_rational(q))
    } else {
        exact_sqrt(&(disc / BigRational::from(BigInt::from(2))))
            .map(|q| Scalar::from_rational(q) * Scalar::sqrt2())
    };
    root.map(|r| {
        (
            (Scalar::one() + r.clone()) * half.clone(),
            (Scalar::one() - r) * half,
        )
    })
}

fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    let c = BigRational::new(num, den);
    if &(&c * &c) == x {
        Some(c)
    } else {
        None
    }
}

/// The L² multiplicity table: the trivial representation once, the two
/// lowest discrete series with multiplicity g each, the higher discrete
/// series with multiplicity (2n−1)(g−1) each, and one principal or
/// complementary block of multiplicity m_ν per listed eigenvalue.
pub fn l2_multiplicities(st: &SpectrumTable, max_n: u64) -> Vec<(String, u64)> {
    let g = st.genus;
    let mut rows = vec![("trivial".to_string(), 1)];
    rows.push(("D1+".into(), g));
    rows.push(("D1-".into(), g));
    for n in 2..=max_n {
        let m = (2 * n - 1) * (g - 1);
        rows.push((format!("D{n}+"), m));
        rows.push((format!("D{n}-"), m));
    }
    for (nu, m) in &st.entries {
        rows.push((format!("H(-{nu}/2)"), *m));
    }
    rows
}

/// Classifies a field element: the classification is a function of the value
/// alone and of the supplied spectrum table.
pub fn classify_lambda(lambda: &Scalar, st: &SpectrumTable) -> LambdaClass {
    if lambda.is_zero() {
        return LambdaClass::Trivial;
    }
    // λ = n/√2 ⟺ λ·√2 is a rational integer n.
    let scaled = lambda.clone() * Scalar::sqrt2();
    if let Some(q) = scaled.as_rational() {
        if q.is_integer() {
            let n: BigInt = q.numer().clone();
            if let Ok(n) = i64::try_from(&n) {
                if n <= 1 && n != 0 {
                    return LambdaClass::HalfInteger(n);
                }
                if n >= 2 {
                    return LambdaClass::ZeroCohomology;
                }
            }
        }
    }
    // Spectral test: ν = √2λ − 2λ² must be a positive rational in the table.
    let nu_scalar =
        Scalar::sqrt2() * lambda.clone() - Scalar::from_int(2) * lambda.clone() * lambda.clone();
    if let Some(nu) = nu_scalar.as_rational() {
        if nu.is_positive() {
            if let Some(m) = st.multiplicity(nu) {
                // Which root: λ = (1 ± √(1−4ν))/(2√2); the plus branch is the
                // one with 2√2·λ − 1 equal to +√(1−4ν).
                let shifted =
                    Scalar::from_int(2) * Scalar::sqrt2() * lambda.clone() - Scalar::one();
                let branch = branch_of(&shifted);
                return LambdaClass::Spectral {
                    nu: nu.clone(),
                    multiplicity: m,
                    branch,
                };
            }
        }
    }
    LambdaClass::ZeroCohomology
}

/// Sign convention for the square root 2√2λ − 1 = ±√(1−4ν): positive real
/// part (or positive imaginary part when purely imaginary) is the plus
/// branch.
fn branch_of(shifted: &Scalar) -> SpectralBranch {
    let (a, b, c, d) = shifted.coords();
    let real_positive = a.is_positive() || (a.is_zero() && b.is_positive());
    if !a.is_zero() || !b.is_zero() {
        if real_positive {
            SpectralBranch::Plus
        } else {
            SpectralBranch::Minus
        }
    } else if c.is_positive() || (c.is_zero() && d.is_positive()) {
        SpectralBranch::Plus
    } else {
        SpectralBranch::Minus
    }
}

/// Dimension triple of the leafwise cohomology in degrees 0, 1, 2, plus a
/// flag marking the spectral case, where the dimensions carry no
/// codifferential construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimReport {
    pub dims: [u64; 3],
    pub no_decomposition: bool,
}

pub fn foliation_cohomology_dims(
    tag: &CoefficientTag,
    lambda: Option<&Scalar>,
    st: &SpectrumTable,
) -> DimReport {
    let g = st.genus;
    match tag {
        CoefficientTag::AnAdjoint => DimReport {
            dims: [0, 2 * g, 2 * g],
            no_decomposition: false,
        },
        CoefficientTag::Sl2Adjoint => DimReport {
            dims: [0, 8 * g - 6, 8 * g - 6],
            no_decomposition: false,
        },
        CoefficientTag::Lambda(_) => {
            let lambda = lambda.expect("λ required for one-dimensional twists");
            match classify_lambda(lambda, st) {
                LambdaClass::Trivial => DimReport {
                    dims: [1, 2 * g + 1, 2 * g],
                    no_decomposition: false,
                },
                LambdaClass::HalfInteger(1) => DimReport {
                    dims: [0, 1, 1],
                    no_decomposition: false,
                },
                LambdaClass::HalfInteger(n) => {
                    // n ≤ −1: dims 2(1−2n)(g−1) in degrees 1 and 2.
                    let k = u64::try_from(1 - 2 * n).expect("positive");
                    DimReport {
                        dims: [0, 2 * k * (g - 1), 2 * k * (g - 1)],
                        no_decomposition: false,
                    }
                }
                LambdaClass::Spectral { multiplicity, .. } => DimReport {
                    dims: [0, multiplicity, multiplicity],
                    no_decomposition: true,
                },
                LambdaClass::ZeroCohomology => DimReport {
                    dims: [0, 0, 0],
                    no_decomposition: false,
                },
            }
        }
    }
}

/// Per-block cohomology dimensions of one irreducible summand against a
/// twist class, from the irreducible-coefficient table: a block contributes
/// (0,1,1) exactly at its own parameter.
fn block_dims_lambda(lambda_class: &LambdaClass, block: &str) -> [u64; 3] {
    // λ = m/√2 for the classes with a half-integer parameter; the D_n^±
    // block contributes exactly at λ = (1−n)/√2, i.e. m = 1 − n.
    let m_of_class: Option<i64> = match lambda_class {
        LambdaClass::Trivial => Some(0),
        LambdaClass::HalfInteger(m) => Some(*m),
        _ => None,
    };
    match (lambda_class, block) {
        (LambdaClass::Trivial, "trivial") => [1, 1, 0],
        (LambdaClass::HalfInteger(1), "trivial") => [0, 1, 1],
        (_, b) if b.starts_with('D') && m_of_class.is_some() => {
            let n: i64 = b[1..b.len() - 1].parse().expect("block index");
            if m_of_class == Some(1 - n) {
                [0, 1, 1]
            } else {
                [0, 0, 0]
            }
        }
        (LambdaClass::Spectral { nu, .. }, b)
            if b.starts_with("H(")
            // The H_{−ν/2} block contributes at both roots for its own ν.
            && b == format!("H(-{nu}/2)") =>
        {
            [0, 1, 1]
        }
        _ => [0, 0, 0],
    }
}

/// Recomputes every closed-form table entry by summing per-block
/// contributions weighted by the L² multiplicities; the adjoint rows use the
/// projection-image dimensions of the lowest discrete series and the long
/// exact sequence with vanishing connecting maps.
pub fn assembly_crosscheck(st: &SpectrumTable, max_n: u64) -> VerificationResult {
    let start = Instant::now();
    let mut mismatches = 0usize;
    let mult = l2_multiplicities(st, max_n);
    let weighted_sum = |class: &LambdaClass| -> [u64; 3] {
        let mut acc = [0u64; 3];
        for (label, m) in &mult {
            let dims = block_dims_lambda(class, label);
            for i in 0..3 {
                acc[i] += m * dims[i];
            }
        }
        acc
    };

    // λ = 0 and λ = 1/√2.
    let c0 = foliation_cohomology_dims(
        &CoefficientTag::Lambda("0".into()),
        Some(&Scalar::zero()),
        st,
    );
    if weighted_sum(&LambdaClass::Trivial) != c0.dims {
        mismatches += 1;
    }
    let c_half = foliation_cohomology_dims(
        &CoefficientTag::Lambda("1/2*r2".into()),
        Some(&Scalar::inv_sqrt2()),
        st,
    );
    if weighted_sum(&LambdaClass::HalfInteger(1)) != c_half.dims {
        mismatches += 1;
    }
    // λ = m/√2 for m ≤ −1 (blocks D_{1−m}^±).
    for m in -((max_n as i64) - 1)..=-1 {
        let lambda = Scalar::from_int(m) * Scalar::inv_sqrt2();
        let closed = foliation_cohomology_dims(
            &CoefficientTag::Lambda(format!("{lambda}")),
            Some(&lambda),
            st,
        );
        if weighted_sum(&LambdaClass::HalfInteger(m)) != closed.dims {
            mismatches += 1;
        }
    }
    // Spectral rows for each table entry.
    for (nu, m) in &st.entries {
        let class = LambdaClass::Spectral {
            nu: nu.clone(),
            multiplicity: *m,
            branch: SpectralBranch::Plus,
        };
        let expected = [0, *m, *m];
        if weighted_sum(&class) != expected {
            mismatches += 1;
        }
        // When the roots are representable, the closed form applies to them.
        if let Some((plus, minus)) = spectral_lambdas(nu) {
            for lambda in [plus, minus] {
                let closed = foliation_cohomology_dims(
                    &CoefficientTag::Lambda(format!("{lambda}")),
                    Some(&lambda),
                    st,
                );
                if closed.dims != expected || !closed.no_decomposition {
                    mismatches += 1;
                }
            }
        }
    }
    // an-adjoint: only the D_1^± blocks contribute, one line in each of
    // degrees 1 and 2 (projection image), weighted by g each.
    let g = st.genus;
    let an = foliation_cohomology_dims(&CoefficientTag::AnAdjoint, None, st);
    if an.dims != [0, 2 * g, 2 * g] {
        mismatches += 1;
    }
    let d1_blocks = 2 * g; // D1+ and D1-, multiplicity g each
    if an.dims[1] != d1_blocks || an.dims[2] != d1_blocks {
        mismatches += 1;
    }
    // sl2-adjoint via the long exact sequence with zero connecting maps:
    // dims(an-adjoint) + dims(C_{−1/√2}).
    let sl2 = foliation_cohomology_dims(&CoefficientTag::Sl2Adjoint, None, st);
    let minus_half = foliation_cohomology_dims(
        &CoefficientTag::Lambda("-1/2*r2".into()),
        Some(&-Scalar::inv_sqrt2()),
        st,
    );
    for i in 0..3 {
        if sl2.dims[i] != an.dims[i] + minus_half.dims[i] {
            mismatches += 1;
        }
    }
    if sl2.dims != [0, 8 * g - 6, 8 * g - 6] {
        mismatches += 1;
    }
    // Euler consistency of every closed form with its block decomposition is
    // implied by the equalities above; check alternating sums explicitly.
    for report in [&c0, &c_half, &an, &sl2] {
        let euler = report.dims[0] as i64 - report.dims[1] as i64 + report.dims[2] as i64;
        let expected = match report.dims {
            [1, _, _] => 0,
            _ => 0,
        };
        if report.dims[0] == 1 {
            // trivial coefficients: 1 − (2g+1) + 2g = 0
            if euler != expected {
                mismatches += 1;
            }
        } else if euler != 0 {
            mismatches += 1;
        }
    }
    VerificationResult::from_flag("assembly-crosscheck", mismatches == 0, mismatches, start)
}

/// Degree-2 comparison of the total-space and leafwise cohomologies: both
/// have dimension 2g, so the restriction hypothesis of the minimality
/// criterion is satisfied.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub genus: u64,
    pub total_space_dims: [u64; 4],
    pub leafwise_dims: [u64; 3],
    pub degree2_equal: bool,
    pub degree0_equal: bool,
}

pub fn restriction_report(genus: u64) -> Result<RestrictionReport, TableError> {
    if genus < 2 {
        return Err(TableError::BadGenus(genus));
    }
    let total = [1, 2 * genus, 2 * genus, 1];
    let leaf = [1, 2 * genus + 1, 2 * genus];
    Ok(RestrictionReport {
        genus,
        total_space_dims: total,
        leafwise_dims: leaf,
        degree2_equal: total[2] == leaf[2],
        degree0_equal: total[0] == leaf[0],
    })
}
