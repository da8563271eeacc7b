//! Exact arithmetic in the field Q(i, √2).
//!
//! Every scalar appearing in the operator calculus lives in this field: the
//! structure constants contribute 1/√2, the lowest-weight relations of the
//! discrete series contribute ±√2 i, and the twisting parameters λ are taken
//! from the same field. An element is stored as four rational coordinates
//! over the basis {1, √2, i, i√2}.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An element a + b√2 + c·i + d·i√2 of Q(i, √2), coordinates in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

fn rat(n: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(den))
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(rat(num, den))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            c: BigRational::zero(),
            d: BigRational::zero(),
        }
    }

    /// √2.
    pub fn sqrt2() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::one(),
            c: BigRational::zero(),
            d: BigRational::zero(),
        }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: rat(1, 2),
            c: BigRational::zero(),
            d: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            c: BigRational::one(),
            d: BigRational::zero(),
        }
    }

    /// i√2.
    pub fn i_sqrt2() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            c: BigRational::zero(),
            d: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Coordinates (a, b, c, d) over the basis {1, √2, i, i√2}.
    pub fn coords(&self) -> (&BigRational, &BigRational, &BigRational, &BigRational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// The field automorphism √2 ↦ −√2.
    pub fn conj_sqrt2(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// The field automorphism i ↦ −i (complex conjugation).
    pub fn conj_i(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Multiplicative inverse, computed from the product of the three
    /// nontrivial Galois conjugates divided by the rational norm.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let conj_prod = self.conj_i() * self.conj_sqrt2() * self.conj_i().conj_sqrt2();
        let norm = self.clone() * conj_prod.clone();
        let norm = norm
            .as_rational()
            .expect("norm of a field element is rational")
            .clone();
        debug_assert!(!norm.is_zero());
        let inv_norm = BigRational::one() / norm;
        Ok(Scalar {
            a: conj_prod.a * &inv_norm,
            b: conj_prod.b * &inv_norm,
            c: conj_prod.c * &inv_norm,
            d: conj_prod.d * &inv_norm,
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc *= self.clone();
        }
        acc
    }

    /// Parses the textual scalar syntax: terms joined by `+`/`-`, each term a
    /// `*`-separated product of rational literals and the symbols `r2`, `i`.
    /// Examples: `1/2*r2`, `-1 + 2*i*r2`, `i`, `0`.
    pub fn parse(input: &str) -> Result<Self, ScalarError> {
        let bytes = input.as_bytes();
        let mut pos = 0usize;
        let mut total = Scalar::zero();
        let mut saw_term = false;
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos >= bytes.len() {
                break;
            }
            let mut sign = 1i64;
            loop {
                match bytes.get(pos) {
                    Some(b'+') => pos += 1,
                    Some(b'-') => {
                        sign = -sign;
                        pos += 1;
                    }
                    Some(b) if b.is_ascii_whitespace() => pos += 1,
                    _ => break,
                }
            }
            if pos >= bytes.len() {
                return Err(ScalarError::Parse {
                    pos,
                    msg: "dangling sign".into(),
                });
            }
            let (term, next) = parse_term(input, pos)?;
            pos = next;
            total += if sign < 0 { -term } else { term };
            saw_term = true;
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            match bytes.get(pos) {
                None => break,
                Some(b'+') | Some(b'-') => continue,
                Some(_) => {
                    return Err(ScalarError::Parse {
                        pos,
                        msg: "expected '+' or '-' between terms".into(),
                    })
                }
            }
        }
        if !saw_term {
            return Err(ScalarError::Parse {
                pos: 0,
                msg: "empty scalar".into(),
            });
        }
        Ok(total)
    }
}

/// One term: factors separated by `*`, each a rational literal, `r2` or `i`.
fn parse_term(input: &str, mut pos: usize) -> Result<(Scalar, usize), ScalarError> {
    let bytes = input.as_bytes();
    let mut value = Scalar::one();
    let mut saw_factor = false;
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        if pos >= bytes.len() {
            break;
        }
        let b = bytes[pos];
        if b == b'r' && input[pos..].starts_with("r2") {
            value *= Scalar::sqrt2();
            pos += 2;
        } else if b == b'i' {
            value *= Scalar::i();
            pos += 1;
        } else if b.is_ascii_digit() {
            let mut end = pos;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let num: BigInt = input[pos..end].parse().map_err(|_| ScalarError::Parse {
                pos,
                msg: "bad integer".into(),
            })?;
            pos = end;
            let mut den = BigInt::one();
            if bytes.get(pos) == Some(&b'/') {
                pos += 1;
                let dstart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == dstart {
                    return Err(ScalarError::Parse {
                        pos,
                        msg: "expected denominator".into(),
                    });
                }
                den = input[dstart..pos].parse().map_err(|_| ScalarError::Parse {
                    pos: dstart,
                    msg: "bad denominator".into(),
                })?;
                if den.is_zero() {
                    return Err(ScalarError::Parse {
                        pos: dstart,
                        msg: "zero denominator".into(),
                    });
                }
            }
            value *= Scalar::from_rational(BigRational::new(num, den));
        } else {
            return Err(ScalarError::Parse {
                pos,
                msg: format!("unexpected character {:?}", b as char),
            });
        }
        debug_assert!(pos > start);
        saw_factor = true;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if bytes.get(pos) == Some(&b'*') {
            pos += 1;
            continue;
        }
        break;
    }
    if !saw_factor {
        return Err(ScalarError::Parse {
            pos,
            msg: "empty term".into(),
        });
    }
    Ok((value, pos))
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c + rhs.c,
            d: self.d + rhs.d,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.a += rhs.a;
        self.b += rhs.b;
        self.c += rhs.c;
        self.d += rhs.d;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            c: self.c - rhs.c,
            d: self.d - rhs.d,
        }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.a -= rhs.a;
        self.b -= rhs.b;
        self.c -= rhs.c;
        self.d -= rhs.d;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    // (√2)² = 2, i² = −1, (i√2)² = −2.
    fn mul(self, rhs: &Scalar) -> Scalar {
        // Rational factors scale coordinatewise.
        if self.is_rational() {
            if self.a.is_zero() {
                return Scalar::zero();
            }
            return Scalar {
                a: &self.a * &rhs.a,
                b: &self.a * &rhs.b,
                c: &self.a * &rhs.c,
                d: &self.a * &rhs.d,
            };
        }
        if rhs.is_rational() {
            return rhs * self;
        }
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let two = BigRational::from(BigInt::from(2));
        Scalar {
            a: a1 * a2 + &two * (b1 * b2) - c1 * c2 - &two * (d1 * d2),
            b: a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            c: a1 * c2 + c1 * a2 + &two * (b1 * d2) + &two * (d1 * b2),
            d: a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        }
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = &*self * &rhs;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // field division is multiplication by the inverse
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero")
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coord, suffix) in [
            (&self.a, ""),
            (&self.b, "*r2"),
            (&self.c, "*i"),
            (&self.d, "*i*r2"),
        ] {
            if coord.is_zero() {
                continue;
            }
            if first {
                if coord.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coord.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_rat(f, &coord.abs())?;
            write!(f, "{suffix}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn additive_identities() {
        let x = Scalar::one() + Scalar::sqrt2();
        assert_eq!(x.clone() + Scalar::zero(), x);
        assert_eq!(
            Scalar::from_ratio(1, 2) * Scalar::sqrt2() + Scalar::from_ratio(1, 2) * Scalar::sqrt2(),
            Scalar::sqrt2()
        );
    }

    #[test]
    fn basis_reductions() {
        assert_eq!(
            (Scalar::one() + Scalar::sqrt2()) * (Scalar::from_int(-1) + Scalar::sqrt2()),
            Scalar::one()
        );
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(Scalar::i_sqrt2() * Scalar::i_sqrt2(), Scalar::from_int(-2));
    }

    #[test]
    fn inverses() {
        assert_eq!(
            Scalar::sqrt2().inv().unwrap(),
            Scalar::from_ratio(1, 2) * Scalar::sqrt2()
        );
        assert_eq!(Scalar::i().inv().unwrap(), -Scalar::i());
        assert_eq!(
            (Scalar::one() + Scalar::i()).inv().unwrap(),
            Scalar::from_ratio(1, 2) * (Scalar::one() - Scalar::i())
        );
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Scalar::parse("1/2*r2").unwrap(), Scalar::inv_sqrt2());
        assert_eq!(
            Scalar::parse("-1 + 2*i*r2").unwrap(),
            Scalar::from_int(-1) + Scalar::from_int(2) * Scalar::i_sqrt2()
        );
        assert_eq!(Scalar::parse("  0 ").unwrap(), Scalar::zero());
        assert_eq!(Scalar::parse("i*r2").unwrap(), Scalar::i_sqrt2());
        assert_eq!(Scalar::parse("r2*1/2").unwrap(), Scalar::inv_sqrt2());
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("2x").is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        let coord = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d));
        (coord.clone(), coord.clone(), coord.clone(), coord)
            .prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
            prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            prop_assert_eq!(
                x.clone() * (y.clone() + z.clone()),
                x.clone() * y.clone() + x.clone() * z.clone()
            );
        }

        #[test]
        fn inverse_axiom(x in arb_scalar()) {
            if !x.is_zero() {
                prop_assert_eq!(x.inv().unwrap() * x.clone(), Scalar::one());
            }
        }

        #[test]
        fn conjugations_are_ring_maps(x in arb_scalar(), y in arb_scalar()) {
            prop_assert_eq!((&x * &y).conj_sqrt2(), &x.conj_sqrt2() * &y.conj_sqrt2());
            prop_assert_eq!((&x * &y).conj_i(), &x.conj_i() * &y.conj_i());
            prop_assert_eq!((x.clone() + y.clone()).conj_sqrt2(), x.conj_sqrt2() + y.conj_sqrt2());
            prop_assert_eq!((x.clone() + y.clone()).conj_i(), x.conj_i() + y.conj_i());
        }

        #[test]
        fn display_parse_round_trip(x in arb_scalar()) {
            let printed = x.to_string();
            prop_assert_eq!(Scalar::parse(&printed).unwrap(), x);
        }
    }
}
