//! Poincaré–Birkhoff–Witt normal forms for U(sl(2,R)), U(an) and the
//! three-dimensional quotient U(an)/I acting faithfully on the adjoint
//! representation of an.
//!
//! Variable orders: F < H < E for U(sl2), so the Casimir normal form is
//! 2FE + H² + (1/√2)H as displayed; H < E for U(an). The quotient is
//! realized directly by its closed multiplication table
//! H² = (1/√2)H, E² = 0, HE = (1/√2)E, EH = 0.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnvAlgebra {
    USl2,
    UAn,
    UAnModI,
}

/// Exponent tuple in the fixed variable order of the algebra:
/// (F, H, E) for U(sl2), (H, E) for U(an) and U(an)/I.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct PbwMono(pub [u32; 3]);

impl PbwMono {
    pub const UNIT: PbwMono = PbwMono([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    alg: EnvAlgebra,
    terms: BTreeMap<PbwMono, Scalar>,
}

/// Letters in ascending variable order per algebra.
fn letter_names(alg: EnvAlgebra) -> &'static [&'static str] {
    match alg {
        EnvAlgebra::USl2 => &["F", "H", "E"],
        EnvAlgebra::UAn | EnvAlgebra::UAnModI => &["H", "E"],
    }
}

/// [X_a, X_b] for letters a < b, as coefficients over the letters.
fn letter_bracket(alg: EnvAlgebra, a: usize, b: usize) -> Vec<(usize, Scalar)> {
    let r = Scalar::inv_sqrt2();
    match alg {
        EnvAlgebra::USl2 => match (a, b) {
            // [F,H] = (1/√2)F, [F,E] = −(1/√2)H, [H,E] = (1/√2)E
            (0, 1) => vec![(0, r)],
            (0, 2) => vec![(1, -r)],
            (1, 2) => vec![(2, r)],
            _ => unreachable!(),
        },
        EnvAlgebra::UAn | EnvAlgebra::UAnModI => match (a, b) {
            (0, 1) => vec![(1, r)],
            _ => unreachable!(),
        },
    }
}

impl PbwElement {
    pub fn zero(alg: EnvAlgebra) -> Self {
        PbwElement {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(alg: EnvAlgebra) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(PbwMono::UNIT, Scalar::one());
        e
    }

    /// Single letter by position in the algebra's variable order.
    pub fn letter(alg: EnvAlgebra, idx: usize) -> Self {
        assert!(idx < letter_names(alg).len());
        let mut exps = [0u32; 3];
        exps[idx] = 1;
        let mut e = Self::zero(alg);
        e.add_term(PbwMono(exps), Scalar::one());
        e
    }

    pub fn named(alg: EnvAlgebra, name: &str) -> Self {
        let idx = letter_names(alg)
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("unknown generator {name}"));
        Self::letter(alg, idx)
    }

    pub fn algebra(&self) -> EnvAlgebra {
        self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &BTreeMap<PbwMono, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, mono: PbwMono, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        if self.alg == EnvAlgebra::UAnModI {
            debug_assert!(mono.degree() <= 1, "quotient basis is {{1, H, E}}");
        }
        let entry = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add_scaled(&mut self, other: &PbwElement, factor: &Scalar) {
        assert_eq!(self.alg, other.alg, "algebra mismatch");
        for (m, c) in &other.terms {
            self.add_term(*m, factor * c);
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> PbwElement {
        let mut out = Self::zero(self.alg);
        out.add_scaled(self, factor);
        out
    }

    pub fn plus(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn mul(&self, other: &PbwElement) -> PbwElement {
        assert_eq!(self.alg, other.alg, "algebra mismatch");
        let mut out = Self::zero(self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let coeff = ca * cb;
                match self.alg {
                    EnvAlgebra::UAnModI => {
                        for (m, c) in quotient_product(*ma, *mb) {
                            out.add_term(m, &coeff * &c);
                        }
                    }
                    _ => {
                        let word = mono_word(self.alg, *ma)
                            .into_iter()
                            .chain(mono_word(self.alg, *mb))
                            .collect::<Vec<_>>();
                        straighten(self.alg, &word, &coeff, &mut out);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> PbwElement {
        let mut acc = Self::unit(self.alg);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Casimir Ω = 2FE + H² + (1/√2)H of U(sl2) in normal form.
    pub fn casimir() -> PbwElement {
        let f = Self::named(EnvAlgebra::USl2, "F");
        let h = Self::named(EnvAlgebra::USl2, "H");
        let e = Self::named(EnvAlgebra::USl2, "E");
        f.mul(&e)
            .scaled(&Scalar::from_int(2))
            .plus(&h.mul(&h))
            .plus(&h.scaled(&Scalar::inv_sqrt2()))
    }

    pub fn print(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = letter_names(self.alg);
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mut mono = String::new();
            for (pos, &exp) in m.0.iter().enumerate().take(names.len()) {
                if exp == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push(' ');
                }
                if exp == 1 {
                    mono.push_str(names[pos]);
                } else {
                    mono.push_str(&format!("{}^{}", names[pos], exp));
                }
            }
            if mono.is_empty() {
                mono.push('1');
            }
            out.push_str(&format!("({}) {}", c, mono));
        }
        out
    }
}

/// Expands a normal monomial into its letter word (ascending positions).
fn mono_word(alg: EnvAlgebra, m: PbwMono) -> Vec<usize> {
    let nletters = letter_names(alg).len();
    let mut word = Vec::new();
    for pos in 0..nletters {
        for _ in 0..m.0[pos] {
            word.push(pos);
        }
    }
    word
}

/// Straightens an arbitrary word into the normal-form basis, accumulating
/// into `out` with the given coefficient.
fn straighten(alg: EnvAlgebra, word: &[usize], coeff: &Scalar, out: &mut PbwElement) {
    // Find the leftmost descent.
    let descent = word.windows(2).position(|w| w[0] > w[1]);
    match descent {
        None => {
            let nletters = letter_names(alg).len();
            let mut exps = [0u32; 3];
            for &l in word {
                exps[l] += 1;
            }
            debug_assert!(word.iter().all(|&l| l < nletters));
            out.add_term(PbwMono(exps), coeff.clone());
        }
        Some(i) => {
            // x y = y x + [x, y] with x > y
            let (x, y) = (word[i], word[i + 1]);
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            straighten(alg, &swapped, coeff, out);
            for (letter, c) in letter_bracket(alg, y, x) {
                // [x,y] = −[y,x]
                let mut shorter = word[..i].to_vec();
                shorter.push(letter);
                shorter.extend_from_slice(&word[i + 2..]);
                straighten(alg, &shorter, &-(coeff * &c), out);
            }
        }
    }
}

/// The closed multiplication table of U(an)/I on the basis {1, H, E}.
fn quotient_product(a: PbwMono, b: PbwMono) -> Vec<(PbwMono, Scalar)> {
    let unit = PbwMono::UNIT;
    let h = PbwMono([1, 0, 0]);
    let e = PbwMono([0, 1, 0]);
    if a == unit {
        return vec![(b, Scalar::one())];
    }
    if b == unit {
        return vec![(a, Scalar::one())];
    }
    match (a, b) {
        (x, y) if x == h && y == h => vec![(h, Scalar::inv_sqrt2())],
        (x, y) if x == h && y == e => vec![(e, Scalar::inv_sqrt2())],
        (x, y) if x == e && y == h => vec![],
        (x, y) if x == e && y == e => vec![],
        _ => panic!("monomial outside the {{1, H, E}} basis"),
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.print())
    }
}
