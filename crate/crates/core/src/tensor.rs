//! The tensor algebras in which the canonical operator identities live:
//! Clifford(an⊕an*) ⊗ U(sl2) ⊗ U(an), Clifford(sl2⊕sl2*) ⊗ U(sl2) ⊗ U(sl2)
//! and Clifford(an⊕an*) ⊗ U(sl2) ⊗ U(an)/I.
//!
//! Multiplication is componentwise in the three factors; there are no
//! Koszul signs.

use crate::clifford::{CliffMono, CliffordAlgebra};
use crate::pbw::{EnvAlgebra, PbwElement, PbwMono};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ambient {
    /// Clifford(an⊕an*) ⊗ U(sl2) ⊗ U(an)
    An,
    /// Clifford(sl2⊕sl2*) ⊗ U(sl2) ⊗ U(sl2)
    Sl2,
    /// Clifford(an⊕an*) ⊗ U(sl2) ⊗ U(an)/I
    AnAdjoint,
}

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("ambient algebras do not match")]
    AmbientMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone)]
pub struct TensorAlgebra {
    ambient: Ambient,
    cliff: CliffordAlgebra,
    u1: EnvAlgebra,
    u2: EnvAlgebra,
}

pub type TensorMono = (CliffMono, PbwMono, PbwMono);

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    ambient: Ambient,
    terms: BTreeMap<TensorMono, Scalar>,
}

impl TensorAlgebra {
    pub fn an_case() -> Self {
        TensorAlgebra {
            ambient: Ambient::An,
            cliff: CliffordAlgebra::an(),
            u1: EnvAlgebra::USl2,
            u2: EnvAlgebra::UAn,
        }
    }

    pub fn sl2_case() -> Self {
        TensorAlgebra {
            ambient: Ambient::Sl2,
            cliff: CliffordAlgebra::sl2(),
            u1: EnvAlgebra::USl2,
            u2: EnvAlgebra::USl2,
        }
    }

    pub fn an_adjoint_case() -> Self {
        TensorAlgebra {
            ambient: Ambient::AnAdjoint,
            cliff: CliffordAlgebra::an(),
            u1: EnvAlgebra::USl2,
            u2: EnvAlgebra::UAnModI,
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn clifford(&self) -> &CliffordAlgebra {
        &self.cliff
    }

    pub fn left_env(&self) -> EnvAlgebra {
        self.u1
    }

    pub fn right_env(&self) -> EnvAlgebra {
        self.u2
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            ambient: self.ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(&self) -> AlgebraElement {
        let mut e = self.zero();
        e.add_term((0, PbwMono::UNIT, PbwMono::UNIT), Scalar::one());
        e
    }

    /// c ⊗ u ⊗ v for already-normalized factors.
    pub fn triple(
        &self,
        c: &crate::clifford::CliffordElement,
        u: &PbwElement,
        v: &PbwElement,
    ) -> AlgebraElement {
        assert_eq!(u.algebra(), self.u1);
        assert_eq!(v.algebra(), self.u2);
        let mut out = self.zero();
        for (&cm, cc) in c.terms() {
            for (um, uc) in u.terms() {
                for (vm, vc) in v.terms() {
                    out.add_term((cm, *um, *vm), &(cc * uc) * vc);
                }
            }
        }
        out
    }

    pub fn from_clifford(&self, c: &crate::clifford::CliffordElement) -> AlgebraElement {
        self.triple(c, &PbwElement::unit(self.u1), &PbwElement::unit(self.u2))
    }

    pub fn from_left(&self, u: &PbwElement) -> AlgebraElement {
        self.triple(&self.cliff.unit(), u, &PbwElement::unit(self.u2))
    }

    pub fn from_right(&self, v: &PbwElement) -> AlgebraElement {
        self.triple(&self.cliff.unit(), &PbwElement::unit(self.u1), v)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        assert_eq!(a.ambient, self.ambient, "ambient mismatch");
        assert_eq!(b.ambient, self.ambient, "ambient mismatch");
        let mut out = self.zero();
        for (&(ca, ua, va), sa) in &a.terms {
            let cliff_a = self.cliff.element(vec![(ca, Scalar::one())]);
            for (&(cb, ub, vb), sb) in &b.terms {
                let coeff = sa * sb;
                let cliff_b = self.cliff.element(vec![(cb, Scalar::one())]);
                let cprod = self.cliff.mul(&cliff_a, &cliff_b);
                if cprod.is_zero() {
                    continue;
                }
                let uprod = {
                    let mut x = PbwElement::zero(self.u1);
                    x.add_term(ua, Scalar::one());
                    let mut y = PbwElement::zero(self.u1);
                    y.add_term(ub, Scalar::one());
                    x.mul(&y)
                };
                if uprod.is_zero() {
                    continue;
                }
                let vprod = {
                    let mut x = PbwElement::zero(self.u2);
                    x.add_term(va, Scalar::one());
                    let mut y = PbwElement::zero(self.u2);
                    y.add_term(vb, Scalar::one());
                    x.mul(&y)
                };
                if vprod.is_zero() {
                    continue;
                }
                for (&cm, cc) in cprod.terms() {
                    for (um, uc) in uprod.terms() {
                        for (vm, vc) in vprod.terms() {
                            out.add_term((cm, *um, *vm), &(&coeff * cc) * &(uc * vc));
                        }
                    }
                }
            }
        }
        out
    }

    /// The derivation ad(R), R = E−F, on the sl2 ambient: the commutator with
    /// L̂_R ⊗ 1 ⊗ 1 + 1 ⊗ R ⊗ 1 + 1 ⊗ 1 ⊗ R.
    pub fn ad_r(&self, x: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.ambient, Ambient::Sl2, "ad R lives in the sl2 ambient");
        let e = self.cliff.lie().index_of("E").unwrap();
        let f = self.cliff.lie().index_of("F").unwrap();
        let lr = self
            .cliff
            .lie_derivative_hat(e)
            .minus(&self.cliff.lie_derivative_hat(f));
        let r_env = PbwElement::named(self.u1, "E").minus(&PbwElement::named(self.u1, "F"));
        let big = self
            .from_clifford(&lr)
            .plus(&self.from_left(&r_env))
            .plus(&self.from_right(&r_env));
        self.mul(&big, x).minus(&self.mul(x, &big))
    }

    pub fn print(&self, a: &AlgebraElement) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(c, u, v), coeff)) in a.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!(
                "({}) {} ⊗ {} ⊗ {}",
                coeff,
                self.cliff_mono_name(c),
                pbw_mono_name(self.u1, u),
                pbw_mono_name(self.u2, v)
            ));
        }
        out
    }

    fn cliff_mono_name(&self, mono: CliffMono) -> String {
        if mono == 0 {
            return "1".to_string();
        }
        let n = self.cliff.rank();
        let names = self.cliff.lie().names();
        let mut parts = Vec::new();
        for g in 0..self.cliff.generators() {
            if mono >> g & 1 == 1 {
                if g < n {
                    parts.push(names[g].clone());
                } else {
                    parts.push(format!("θ_{}", names[g - n]));
                }
            }
        }
        parts.join(" ")
    }

    /// Parses the exact format produced by `print`.
    pub fn parse(&self, input: &str) -> Result<AlgebraElement, TensorError> {
        let trimmed = input.trim();
        if trimmed == "0" {
            return Ok(self.zero());
        }
        let mut out = self.zero();
        for term in split_top_level(trimmed) {
            let term = term.trim();
            let Some(rest) = term.strip_prefix('(') else {
                return Err(TensorError::Parse(format!("expected '(' in {term:?}")));
            };
            let close = rest
                .find(')')
                .ok_or_else(|| TensorError::Parse("unclosed coefficient".into()))?;
            let coeff = Scalar::parse(&rest[..close])
                .map_err(|e| TensorError::Parse(format!("bad coefficient: {e}")))?;
            let mono_part = rest[close + 1..].trim();
            let groups: Vec<&str> = mono_part.split('⊗').map(str::trim).collect();
            if groups.len() != 3 {
                return Err(TensorError::Parse(format!(
                    "expected three tensor factors in {term:?}"
                )));
            }
            let cliff = self.parse_cliff_group(groups[0])?;
            let u = parse_pbw_group(self.u1, groups[1])?;
            let v = parse_pbw_group(self.u2, groups[2])?;
            let elem = self.triple(&cliff, &u, &v).scaled(&coeff);
            out = out.plus(&elem);
        }
        Ok(out)
    }

    fn parse_cliff_group(
        &self,
        group: &str,
    ) -> Result<crate::clifford::CliffordElement, TensorError> {
        let mut acc = self.cliff.unit();
        if group == "1" {
            return Ok(acc);
        }
        for token in group.split_whitespace() {
            let gen = if let Some(name) = token.strip_prefix("θ_") {
                self.cliff.dual(
                    self.cliff
                        .lie()
                        .index_of(name)
                        .map_err(|e| TensorError::Parse(e.to_string()))?,
                )
            } else {
                self.cliff.vector(
                    self.cliff
                        .lie()
                        .index_of(token)
                        .map_err(|e| TensorError::Parse(e.to_string()))?,
                )
            };
            acc = self.cliff.mul(&acc, &gen);
        }
        Ok(acc)
    }
}

fn pbw_mono_name(alg: EnvAlgebra, m: PbwMono) -> String {
    let names: &[&str] = match alg {
        EnvAlgebra::USl2 => &["F", "H", "E"],
        EnvAlgebra::UAn | EnvAlgebra::UAnModI => &["H", "E"],
    };
    let mut out = String::new();
    for (pos, &exp) in m.0.iter().enumerate().take(names.len()) {
        if exp == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        if exp == 1 {
            out.push_str(names[pos]);
        } else {
            out.push_str(&format!("{}^{}", names[pos], exp));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn parse_pbw_group(alg: EnvAlgebra, group: &str) -> Result<PbwElement, TensorError> {
    let mut acc = PbwElement::unit(alg);
    if group == "1" {
        return Ok(acc);
    }
    for token in group.split_whitespace() {
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<u32>()
                    .map_err(|_| TensorError::Parse(format!("bad exponent {e:?}")))?,
            ),
            None => (token, 1),
        };
        let letter = PbwElement::named(alg, name);
        acc = acc.mul(&letter.pow(exp));
    }
    Ok(acc)
}

/// Splits on " + " at parenthesis depth zero.
fn split_top_level(input: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '(' {
            depth += 1;
        } else if c == ')' {
            depth = depth.saturating_sub(1);
        }
        if depth == 0
            && c == ' '
            && i + 2 < chars.len()
            && chars[i + 1] == '+'
            && chars[i + 2] == ' '
        {
            parts.push(current.clone());
            current.clear();
            i += 3;
            continue;
        }
        current.push(c);
        i += 1;
    }
    if !current.is_empty() {
        parts.push(current);
    }
    parts
}

impl AlgebraElement {
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &BTreeMap<TensorMono, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, mono: TensorMono, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn plus(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.ambient, other.ambient);
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.ambient, other.ambient);
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, -c.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement {
            ambient: self.ambient,
            terms: BTreeMap::new(),
        };
        for (&m, c) in &self.terms {
            out.add_term(m, factor * c);
        }
        out
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({} terms)", self.terms.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn componentwise_product() {
        let alg = TensorAlgebra::an_case();
        let cl = alg.clifford();
        // (θ_H ⊗ H ⊗ 1)(H ⊗ 1 ⊗ H) = θ_H H ⊗ H ⊗ H
        let a = alg.triple(
            &cl.dual_named("H"),
            &PbwElement::named(EnvAlgebra::USl2, "H"),
            &PbwElement::unit(EnvAlgebra::UAn),
        );
        let b = alg.triple(
            &cl.vector_named("H"),
            &PbwElement::unit(EnvAlgebra::USl2),
            &PbwElement::named(EnvAlgebra::UAn, "H"),
        );
        let prod = alg.mul(&a, &b);
        let expected = alg.triple(
            &cl.mul(&cl.dual_named("H"), &cl.vector_named("H")),
            &PbwElement::named(EnvAlgebra::USl2, "H"),
            &PbwElement::named(EnvAlgebra::UAn, "H"),
        );
        assert_eq!(prod, expected);
        // unit law
        assert_eq!(alg.mul(&a, &alg.unit()), a);
    }

    #[test]
    fn commutator_in_middle_factor() {
        let alg = TensorAlgebra::an_case();
        // (1⊗E⊗1)(1⊗F⊗1) = 1⊗(FE + (1/√2)H)⊗1
        let e = alg.from_left(&PbwElement::named(EnvAlgebra::USl2, "E"));
        let f = alg.from_left(&PbwElement::named(EnvAlgebra::USl2, "F"));
        let prod = alg.mul(&e, &f);
        let fe =
            PbwElement::named(EnvAlgebra::USl2, "F").mul(&PbwElement::named(EnvAlgebra::USl2, "E"));
        let expected = alg.from_left(
            &fe.plus(&PbwElement::named(EnvAlgebra::USl2, "H").scaled(&Scalar::inv_sqrt2())),
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn ad_r_on_clifford_generators() {
        let alg = TensorAlgebra::sl2_case();
        let cl = alg.clifford();
        // (ad R)E = (1/√2)H, (ad R)H = −(1/√2)(E+F) on the Clifford factor.
        let e = alg.from_clifford(&cl.vector_named("E"));
        let h = alg.from_clifford(&cl.vector_named("H"));
        let f = alg.from_clifford(&cl.vector_named("F"));
        assert_eq!(alg.ad_r(&e), h.scaled(&Scalar::inv_sqrt2()));
        assert_eq!(alg.ad_r(&h), e.plus(&f).scaled(&-Scalar::inv_sqrt2()));
        assert!(alg.ad_r(&alg.unit()).is_zero());
    }

    #[test]
    fn print_parse_round_trip() {
        let alg = TensorAlgebra::an_case();
        let cl = alg.clifford();
        let elem = alg
            .triple(
                &cl.mul(&cl.dual_named("H"), &cl.vector_named("E")),
                &PbwElement::casimir(),
                &PbwElement::named(EnvAlgebra::UAn, "H"),
            )
            .scaled(&(Scalar::inv_sqrt2() + Scalar::i()));
        let printed = alg.print(&elem);
        let reparsed = alg.parse(&printed).unwrap();
        assert_eq!(reparsed, elem);
    }

    #[test]
    fn associativity_sample() {
        let alg = TensorAlgebra::sl2_case();
        let cl = alg.clifford();
        let xs = [
            alg.from_clifford(&cl.vector_named("E").plus(&cl.dual_named("F"))),
            alg.from_left(&PbwElement::named(EnvAlgebra::USl2, "H")),
            alg.from_right(&PbwElement::named(EnvAlgebra::USl2, "F")),
        ];
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    assert_eq!(alg.mul(&alg.mul(a, b), c), alg.mul(a, &alg.mul(b, c)));
                }
            }
        }
    }
}
