//! Clifford algebras C(g ⊕ g*) for the duality pairing, their spin
//! representation on ∧*g*, and the transpose antiautomorphism.
//!
//! Generators are ordered vectors-first, duals-second in the order of the
//! underlying Lie basis, e.g. H < E < θ_H < θ_E for `an` and
//! E < H < F < θ_E < θ_H < θ_F for `sl2`. A normal-form monomial is a
//! square-free strictly increasing product, stored as a bitmask.

use crate::lie::LieAlgebra;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Bitmask monomial: bit g set means generator g occurs; factors are read in
/// increasing bit order.
pub type CliffMono = u32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordAlgebra {
    lie: LieAlgebra,
}

#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    dim: usize,
    terms: BTreeMap<CliffMono, Scalar>,
}

impl CliffordAlgebra {
    pub fn new(lie: LieAlgebra) -> Self {
        CliffordAlgebra { lie }
    }

    pub fn an() -> Self {
        Self::new(LieAlgebra::an())
    }

    pub fn sl2() -> Self {
        Self::new(LieAlgebra::sl2())
    }

    /// C(p ⊕ p*) for the 2-dimensional space p spanned by H and (E+F)/√2.
    /// Only the duality pairing matters here, so the bracket data is zero.
    pub fn p_model() -> Self {
        let z = Scalar::zero();
        let lie = LieAlgebra::new(
            vec!["H".into(), "B".into()],
            vec![
                vec![vec![z.clone(), z.clone()], vec![z.clone(), z.clone()]],
                vec![vec![z.clone(), z.clone()], vec![z.clone(), z.clone()]],
            ],
        )
        .expect("abelian plane");
        Self::new(lie)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    /// Dimension of the underlying Lie algebra.
    pub fn rank(&self) -> usize {
        self.lie.dim()
    }

    /// Number of generators (vectors plus duals).
    pub fn generators(&self) -> usize {
        2 * self.rank()
    }

    /// Dimension of the Clifford algebra as a vector space.
    pub fn dimension(&self) -> usize {
        1 << self.generators()
    }

    /// 2·(g_a | g_b) for the duality form: 1 exactly when {a, b} pairs a
    /// vector with its own dual.
    fn pairing2(&self, a: usize, b: usize) -> Scalar {
        let n = self.rank();
        if a + n == b || b + n == a {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    pub fn zero(&self) -> CliffordElement {
        CliffordElement {
            dim: self.generators(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(&self) -> CliffordElement {
        self.element(vec![(0, Scalar::one())])
    }

    pub fn element(&self, terms: Vec<(CliffMono, Scalar)>) -> CliffordElement {
        let mut e = self.zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// The generator X_i (vector side).
    pub fn vector(&self, i: usize) -> CliffordElement {
        assert!(i < self.rank());
        self.element(vec![(1 << i, Scalar::one())])
    }

    /// The generator θ_i (dual side).
    pub fn dual(&self, i: usize) -> CliffordElement {
        assert!(i < self.rank());
        self.element(vec![(1 << (self.rank() + i), Scalar::one())])
    }

    pub fn vector_named(&self, name: &str) -> CliffordElement {
        self.vector(self.lie.index_of(name).expect("generator"))
    }

    pub fn dual_named(&self, name: &str) -> CliffordElement {
        self.dual(self.lie.index_of(name).expect("generator"))
    }

    /// A vector-side element with the given Lie coefficients.
    pub fn vector_combo(&self, coeffs: &[Scalar]) -> CliffordElement {
        let mut e = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                e.add_term(1 << i, c.clone());
            }
        }
        e
    }

    /// Multiplies a sorted monomial by a single generator on the right.
    fn mono_times_gen(&self, mono: CliffMono, g: usize) -> Vec<(CliffMono, Scalar)> {
        let gens: Vec<usize> = (0..self.generators())
            .filter(|b| mono >> b & 1 == 1)
            .collect();
        self.list_times_gen(&gens, g)
            .into_iter()
            .map(|(list, c)| {
                let mut m = 0u32;
                for b in list {
                    m |= 1 << b;
                }
                (m, c)
            })
            .collect()
    }

    fn list_times_gen(&self, list: &[usize], g: usize) -> Vec<(Vec<usize>, Scalar)> {
        match list.last() {
            None => vec![(vec![g], Scalar::one())],
            Some(&x) if x < g => {
                let mut l = list.to_vec();
                l.push(g);
                vec![(l, Scalar::one())]
            }
            Some(&x) if x == g => Vec::new(), // isotropic square
            Some(&x) => {
                // x·g = 2(x|g) − g·x
                let mut out = Vec::new();
                let head = &list[..list.len() - 1];
                let pair = self.pairing2(x, g);
                if !pair.is_zero() {
                    out.push((head.to_vec(), pair));
                }
                for (mut l, c) in self.list_times_gen(head, g) {
                    l.push(x);
                    out.push((l, -c));
                }
                out
            }
        }
    }

    pub fn mul(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        assert_eq!(a.dim, self.generators(), "ambient mismatch");
        assert_eq!(b.dim, self.generators(), "ambient mismatch");
        let mut out = self.zero();
        for (&mb, cb) in &b.terms {
            let factors: Vec<usize> = (0..self.generators())
                .filter(|g| mb >> g & 1 == 1)
                .collect();
            for (&ma, ca) in &a.terms {
                // Insert the right factors one at a time.
                let mut partial: Vec<(CliffMono, Scalar)> = vec![(ma, ca * cb)];
                for &g in &factors {
                    let mut next = Vec::new();
                    for (m, c) in partial {
                        for (m2, c2) in self.mono_times_gen(m, g) {
                            next.push((m2, &c * &c2));
                        }
                    }
                    partial = next;
                }
                for (m, c) in partial {
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    /// The involutive antiautomorphism with X_i^⊤ = θ_i and θ_i^⊤ = X_i.
    pub fn transpose(&self, a: &CliffordElement) -> CliffordElement {
        let n = self.rank();
        let mut out = self.zero();
        for (&m, c) in &a.terms {
            let gens: Vec<usize> = (0..self.generators()).filter(|g| m >> g & 1 == 1).collect();
            let mut acc = self.unit();
            for &g in gens.iter().rev() {
                let swapped = if g < n { g + n } else { g - n };
                let gen_elem = self.element(vec![(1 << swapped, Scalar::one())]);
                acc = self.mul(&acc, &gen_elem);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Matrix of the spin representation σ(a) on ∧*g*, in the wedge basis
    /// indexed by subsets of dual generators as bitmask integers.
    pub fn spin(&self, a: &CliffordElement) -> Matrix {
        let n = self.rank();
        let dim = 1 << n;
        let mut out = Matrix::zero(dim, dim);
        for (&m, c) in &a.terms {
            let gens: Vec<usize> = (0..self.generators()).filter(|g| m >> g & 1 == 1).collect();
            let mut mat = Matrix::identity(dim);
            for &g in &gens {
                mat = &mat * &self.spin_gen(g);
            }
            out = &out + &mat.scale(c);
        }
        out
    }

    fn spin_gen(&self, g: usize) -> Matrix {
        let n = self.rank();
        let dim = 1 << n;
        let mut mat = Matrix::zero(dim, dim);
        for s in 0u32..(dim as u32) {
            if g < n {
                // contraction by X_g
                if s >> g & 1 == 1 {
                    let before = (s & ((1 << g) - 1)).count_ones();
                    let sign = if before.is_multiple_of(2) {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    mat[((s ^ (1 << g)) as usize, s as usize)] = sign;
                }
            } else {
                // exterior multiplication by θ_{g−n}
                let i = g - n;
                if s >> i & 1 == 0 {
                    let before = (s & ((1 << i) - 1)).count_ones();
                    let sign = if before.is_multiple_of(2) {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    mat[((s | (1 << i)) as usize, s as usize)] = sign;
                }
            }
        }
        mat
    }

    /// Embedding j : ∧*g* → C(g ⊕ g*), identity on g*.
    pub fn wedge_embed(&self, subset: u32, coeff: Scalar) -> CliffordElement {
        let n = self.rank();
        let mut mono = 0u32;
        for i in 0..n {
            if subset >> i & 1 == 1 {
                mono |= 1 << (n + i);
            }
        }
        self.element(vec![(mono, coeff)])
    }

    /// The Chevalley–Eilenberg differential of C*(g; R) as a matrix on the
    /// full wedge space in the bitmask basis.
    pub fn ce_differential_trivial(&self) -> Matrix {
        let n = self.rank();
        let dim = 1 << n;
        let mut mat = Matrix::zero(dim, dim);
        for target in 0u32..(dim as u32) {
            let t: Vec<usize> = (0..n).filter(|b| target >> b & 1 == 1).collect();
            if t.len() < 2 {
                continue;
            }
            // (dφ)(X_T) = Σ_{k<l, 1-based} (−1)^{k+l} φ([X_{t_k}, X_{t_l}], X_{T∖{t_k,t_l}})
            for k in 0..t.len() {
                for l in (k + 1)..t.len() {
                    let sign = if (k + l) % 2 == 0 {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    let bracket = self.lie.bracket_basis(t[k], t[l]);
                    let rest: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(idx, _)| idx != k && idx != l)
                        .map(|(_, &b)| b)
                        .collect();
                    for (m, c) in bracket.iter().enumerate() {
                        if c.is_zero() || rest.contains(&m) {
                            continue;
                        }
                        // Sort (m, rest...) into a subset and pick up the sign.
                        let pos = rest.iter().filter(|&&b| b < m).count();
                        let perm_sign = if pos % 2 == 0 {
                            Scalar::one()
                        } else {
                            -Scalar::one()
                        };
                        let mut src = 0u32;
                        for &b in &rest {
                            src |= 1 << b;
                        }
                        src |= 1 << m;
                        let contribution = &(&sign * c) * &perm_sign;
                        mat[(target as usize, src as usize)] =
                            mat[(target as usize, src as usize)].clone() + contribution;
                    }
                }
            }
        }
        mat
    }

    /// The unique Clifford element representing the trivial-coefficient
    /// differential: σ(d̂_⋆) = d_⋆. Solved exactly from the spin matrices.
    pub fn dstar(&self) -> CliffordElement {
        let target = self.ce_differential_trivial();
        self.solve_spin(&target)
            .expect("σ is onto End(∧*g*), so d_⋆ has a preimage")
    }

    /// Solves σ(x) = m for x, exploiting that σ is a linear isomorphism.
    pub fn solve_spin(&self, m: &Matrix) -> Option<CliffordElement> {
        let total = self.dimension();
        let wedge = 1 << self.rank();
        let mut columns = Matrix::zero(wedge * wedge, total);
        for mono in 0..total as u32 {
            let basis_elem = self.element(vec![(mono, Scalar::one())]);
            let mat = self.spin(&basis_elem);
            for r in 0..wedge {
                for c in 0..wedge {
                    columns[(r * wedge + c, mono as usize)] = mat[(r, c)].clone();
                }
            }
        }
        let mut rhs = Vec::with_capacity(wedge * wedge);
        for r in 0..wedge {
            for c in 0..wedge {
                rhs.push(m[(r, c)].clone());
            }
        }
        let x = columns.solve(&rhs)?;
        Some(
            self.element(
                x.into_iter()
                    .enumerate()
                    .map(|(mono, c)| (mono as u32, c))
                    .collect(),
            ),
        )
    }

    /// L̂_X for a basis generator X, from L̂_X = −Σ_i θ_i [X, X_i].
    pub fn lie_derivative_hat(&self, x: usize) -> CliffordElement {
        let n = self.rank();
        let mut out = self.zero();
        for i in 0..n {
            let bracket = self.lie.bracket_basis(x, i);
            let theta = self.dual(i);
            let vec = self.vector_combo(bracket);
            let prod = self.mul(&theta, &vec);
            out.add_scaled(&prod, &-Scalar::one());
        }
        out
    }

    /// The coadjoint Lie derivative L_X on ∧*g* as a matrix (the spin-side
    /// oracle for `lie_derivative_hat`).
    pub fn lie_derivative_matrix(&self, x: usize) -> Matrix {
        let n = self.rank();
        let dim = 1 << n;
        let mut mat = Matrix::zero(dim, dim);
        // L_X θ_j = −Σ_m θ_j([X, X_m]) θ_m, extended as a derivation.
        for s in 0u32..(dim as u32) {
            let members: Vec<usize> = (0..n).filter(|b| s >> b & 1 == 1).collect();
            for &j in &members {
                for m in 0..n {
                    let coeff = -self.lie.bracket_basis(x, m)[j].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    // Replace θ_j by θ_m in the wedge, if m is free.
                    if members.contains(&m) && m != j {
                        continue;
                    }
                    let without = s ^ (1 << j);
                    if without >> m & 1 == 1 {
                        continue;
                    }
                    let target = without | (1 << m);
                    // Sign of moving θ_m into θ_j's slot.
                    let pos_j = (s & ((1 << j) - 1)).count_ones();
                    let pos_m = (target & ((1 << m) - 1)).count_ones();
                    let sign = if (pos_j + pos_m) % 2 == 0 {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    mat[(target as usize, s as usize)] =
                        mat[(target as usize, s as usize)].clone() + &sign * &coeff;
                }
            }
        }
        mat
    }

    pub fn print(&self, a: &CliffordElement) -> String {
        a.format(|mono| self.mono_name(mono))
    }

    fn mono_name(&self, mono: CliffMono) -> String {
        if mono == 0 {
            return "1".to_string();
        }
        let n = self.rank();
        let mut parts = Vec::new();
        for g in 0..self.generators() {
            if mono >> g & 1 == 1 {
                if g < n {
                    parts.push(self.lie.names()[g].clone());
                } else {
                    parts.push(format!("θ_{}", self.lie.names()[g - n]));
                }
            }
        }
        parts.join(" ")
    }
}

impl CliffordElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &BTreeMap<CliffMono, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, mono: CliffMono, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add_scaled(&mut self, other: &CliffordElement, factor: &Scalar) {
        assert_eq!(self.dim, other.dim);
        for (&m, c) in &other.terms {
            self.add_term(m, factor * c);
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> CliffordElement {
        let mut out = CliffordElement {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        out.add_scaled(self, factor);
        out
    }

    pub fn plus(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    fn format(&self, name: impl Fn(CliffMono) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({}) {}", c, name(m)));
        }
        out
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(|m| format!("m{:b}", m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn an() -> CliffordAlgebra {
        CliffordAlgebra::an()
    }

    #[test]
    fn anticommutation_with_pairing() {
        let cl = an();
        let h = cl.vector_named("H");
        let th = cl.dual_named("H");
        // θ_H·H + H·θ_H = 2(H|θ_H) = 1
        let lhs = cl.mul(&th, &h).plus(&cl.mul(&h, &th));
        assert_eq!(lhs, cl.unit());
    }

    #[test]
    fn isotropic_square_and_anticommuting_duals() {
        let cl = an();
        let e = cl.vector_named("E");
        assert!(cl.mul(&e, &e).is_zero());
        let th = cl.dual_named("H");
        let te = cl.dual_named("E");
        let lhs = cl.mul(&te, &th);
        let rhs = cl.mul(&th, &te).scaled(&-Scalar::one());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_examples() {
        let cl = an();
        let h = cl.vector_named("H");
        let th = cl.dual_named("H");
        assert_eq!(cl.transpose(&h), th);
        assert_eq!(cl.transpose(&cl.unit()), cl.unit());
        // (θ_H θ_E E)^⊤ = θ_E E H normalized; frozen from the spin-adjoint oracle.
        let te = cl.dual_named("E");
        let e = cl.vector_named("E");
        let x = cl.mul(&cl.mul(&th, &te), &e);
        let expected = cl.mul(&cl.mul(&te, &e), &h);
        assert_eq!(cl.transpose(&x), expected);
    }

    #[test]
    fn spin_is_isomorphism() {
        for cl in [CliffordAlgebra::an(), CliffordAlgebra::sl2()] {
            let total = cl.dimension();
            let wedge = 1usize << cl.rank();
            let mut columns = Matrix::zero(wedge * wedge, total);
            for mono in 0..total as u32 {
                let mat = cl.spin(&cl.element(vec![(mono, Scalar::one())]));
                for r in 0..wedge {
                    for c in 0..wedge {
                        columns[(r * wedge + c, mono as usize)] = mat[(r, c)].clone();
                    }
                }
            }
            assert_eq!(columns.rank(), total);
        }
    }

    #[test]
    fn spin_multiplicativity_and_adjoint() {
        let cl = an();
        let samples = [
            cl.mul(&cl.vector_named("H"), &cl.dual_named("E")),
            cl.dstar(),
            cl.mul(&cl.dual_named("H"), &cl.dual_named("E")),
            cl.vector_named("E").plus(&cl.unit()),
        ];
        for a in &samples {
            for b in &samples {
                let prod = cl.mul(a, b);
                assert_eq!(cl.spin(&prod), &cl.spin(a) * &cl.spin(b));
            }
            assert_eq!(cl.spin(&cl.transpose(a)), cl.spin(a).transpose());
        }
    }

    #[test]
    fn dstar_matches_display() {
        let cl = an();
        // d̂_⋆ = −(1/√2) θ_H θ_E E
        let expected = cl
            .mul(
                &cl.mul(&cl.dual_named("H"), &cl.dual_named("E")),
                &cl.vector_named("E"),
            )
            .scaled(&-Scalar::inv_sqrt2());
        assert_eq!(cl.dstar(), expected);
        let d = cl.dstar();
        assert!(cl.mul(&d, &d).is_zero());
    }

    #[test]
    fn dstar_sl2_squares_to_zero() {
        let cl = CliffordAlgebra::sl2();
        let d = cl.dstar();
        assert!(cl.mul(&d, &d).is_zero());
        assert!(cl.spin(&d).rank() > 0);
        // dθ_E has θ_H∧θ_E coefficient −1/√2, i.e. +1/√2 in the θ_E∧θ_H basis.
        let mat = cl.ce_differential_trivial();
        let e = cl.lie().index_of("E").unwrap();
        let h = cl.lie().index_of("H").unwrap();
        let src = 1u32 << e;
        let dst = (1u32 << e) | (1u32 << h);
        assert_eq!(mat[(dst as usize, src as usize)], Scalar::inv_sqrt2());
    }

    #[test]
    fn lie_derivative_formulas() {
        let cl = an();
        let h = cl.lie().index_of("H").unwrap();
        let e = cl.lie().index_of("E").unwrap();
        // L̂_H = −(1/√2) θ_E E and L̂_E = (1/√2) θ_H E
        let te_e = cl.mul(&cl.dual_named("E"), &cl.vector_named("E"));
        assert_eq!(cl.lie_derivative_hat(h), te_e.scaled(&-Scalar::inv_sqrt2()));
        let th_e = cl.mul(&cl.dual_named("H"), &cl.vector_named("E"));
        assert_eq!(cl.lie_derivative_hat(e), th_e.scaled(&Scalar::inv_sqrt2()));
    }

    #[test]
    fn lie_derivative_spin_oracle() {
        for cl in [CliffordAlgebra::an(), CliffordAlgebra::sl2()] {
            for x in 0..cl.rank() {
                assert_eq!(
                    cl.spin(&cl.lie_derivative_hat(x)),
                    cl.lie_derivative_matrix(x)
                );
            }
        }
    }

    #[test]
    fn cartan_formula_in_clifford() {
        // d̂_⋆ X + X d̂_⋆ = L̂_X for X in the Lie basis.
        for cl in [CliffordAlgebra::an(), CliffordAlgebra::sl2()] {
            let d = cl.dstar();
            for x in 0..cl.rank() {
                let xe = cl.vector(x);
                let lhs = cl.mul(&d, &xe).plus(&cl.mul(&xe, &d));
                assert_eq!(lhs, cl.lie_derivative_hat(x));
            }
        }
    }

    #[test]
    fn dphi_embedding_formula() {
        // d̂_⋆ φ + φ d̂_⋆ = j(d_⋆ φ) for φ ∈ g*.
        let cl = an();
        let d = cl.dstar();
        let th = cl.dual_named("H");
        let lhs_h = cl.mul(&d, &th).plus(&cl.mul(&th, &d));
        assert!(lhs_h.is_zero());
        let te = cl.dual_named("E");
        let lhs_e = cl.mul(&d, &te).plus(&cl.mul(&te, &d));
        let h = cl.lie().index_of("H").unwrap();
        let e = cl.lie().index_of("E").unwrap();
        let wedge_he = (1u32 << h) | (1u32 << e);
        assert_eq!(lhs_e, cl.wedge_embed(wedge_he, -Scalar::inv_sqrt2()));
    }

    #[test]
    fn spin_basis_actions() {
        let cl = an();
        // σ(θ_H) on the empty wedge gives θ_H.
        let th = cl.spin(&cl.dual_named("H"));
        let h = cl.lie().index_of("H").unwrap();
        assert_eq!(th[(1usize << h, 0)], Scalar::one());
        // σ(H) contracts θ_H∧θ_E to θ_E.
        let sh = cl.spin(&cl.vector_named("H"));
        let e = cl.lie().index_of("E").unwrap();
        let he = (1usize << h) | (1usize << e);
        assert_eq!(sh[(1usize << e, he)], Scalar::one());
    }

    #[test]
    fn normal_form_basis_count() {
        assert_eq!(CliffordAlgebra::an().dimension(), 16);
        assert_eq!(CliffordAlgebra::sl2().dimension(), 64);
    }
}
