//! The spectral sequence of the subalgebra filtration of a Chevalley–
//! Eilenberg complex, computed literally from the cycle/boundary quotients
//!
//!   Z_r^{p,q} = ker(d : F^pC^{p+q} → C^{p+q+1}/F^{p+r}C^{p+q+1}),
//!   B_r^{p,q} = im(d : F^{p−r+1}C^{p+q−1} → C^{p+q}) ∩ F^pC^{p+q},
//!   E_r^{p,q} = Z_r^{p,q} / (B_r^{p,q} + Z_{r−1}^{p+1,q−1}),
//!
//! with d_r : E_r^{p,q} → E_r^{p+r,q−r+1} induced by d. Filtration degree p
//! counts the legs outside the subalgebra.

use crate::complex::{
    build_complex, sub_lie, wedge_subsets, ChainComplex, ComplexError, ModuleSpec,
};
use crate::identities::VerificationResult;
use crate::lie::LieAlgebra;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::time::Instant;

pub struct FilteredComplex {
    pub g: LieAlgebra,
    pub h_indices: Vec<usize>,
    pub complex: ChainComplex,
    module_dim: usize,
}

impl FilteredComplex {
    pub fn codim(&self) -> usize {
        self.g.dim() - self.h_indices.len()
    }

    /// F^p C^n as a coordinate subspace: wedge monomials with at most
    /// n − p legs inside the subalgebra.
    pub fn filtration(&self, p: i64, n: i64) -> Subspace {
        let gdim = self.g.dim() as i64;
        if !(0..=gdim).contains(&n) {
            return Subspace::zero(0);
        }
        let dim = self.complex.dims[n as usize];
        if p <= 0 {
            return Subspace::full(dim);
        }
        if p > n {
            return Subspace::zero(dim);
        }
        let subsets = wedge_subsets(self.g.dim(), n as usize);
        let mut vectors = Vec::new();
        for (si, &s) in subsets.iter().enumerate() {
            let h_legs = self.h_indices.iter().filter(|&&i| s >> i & 1 == 1).count() as i64;
            if h_legs <= n - p {
                for m in 0..self.module_dim {
                    let mut v = vec![Scalar::zero(); dim];
                    v[si * self.module_dim + m] = Scalar::one();
                    vectors.push(v);
                }
            }
        }
        Subspace::from_spanning(dim, &vectors)
    }

    fn differential_from(&self, n: i64) -> Matrix {
        let gdim = self.g.dim() as i64;
        if !(0..gdim).contains(&n) {
            let src = if (0..=gdim).contains(&n) {
                self.complex.dims[n as usize]
            } else {
                0
            };
            return Matrix::zero(0, src);
        }
        self.complex.d[n as usize].clone()
    }

    /// Z_r^{p,q} = {x ∈ F^pC^{p+q} : dx ∈ F^{p+r}C^{p+q+1}}.
    pub fn cycles(&self, r: i64, p: i64, q: i64) -> Subspace {
        let n = p + q;
        let fp = self.filtration(p, n);
        if fp.ambient() == 0 {
            return fp;
        }
        let d = self.differential_from(n);
        if d.rows() == 0 {
            return fp;
        }
        let target = self.filtration(p + r, n + 1);
        fp.intersection(&target.preimage(&d))
    }

    /// B_r^{p,q} = d(F^{p−r+1}C^{p+q−1}) ∩ F^pC^{p+q}.
    pub fn boundaries(&self, r: i64, p: i64, q: i64) -> Subspace {
        let n = p + q;
        let gdim = self.g.dim() as i64;
        if !(0..=gdim).contains(&n) {
            return Subspace::zero(0);
        }
        let dim = self.complex.dims[n as usize];
        if n == 0 {
            return Subspace::zero(dim);
        }
        let src = self.filtration(p - r + 1, n - 1);
        if src.ambient() == 0 {
            return Subspace::zero(dim);
        }
        let d = self.differential_from(n - 1);
        src.image(&d).intersection(&self.filtration(p, n))
    }

    /// The denominator B_r^{p,q} + Z_{r−1}^{p+1,q−1} inside Z_r^{p,q}.
    fn denominator(&self, r: i64, p: i64, q: i64) -> Subspace {
        self.boundaries(r, p, q)
            .sum(&self.cycles(r - 1, p + 1, q - 1))
    }
}

#[derive(Clone, Debug)]
pub struct SheetEntry {
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

pub struct SpectralSheet {
    pub r: i64,
    pub entries: BTreeMap<(i64, i64), SheetEntry>,
    /// d_r at (p,q), a matrix from E_r^{p,q} to E_r^{p+r,q−r+1}.
    pub differentials: BTreeMap<(i64, i64), Matrix>,
}

impl SpectralSheet {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.entries.get(&(p, q)).map_or(0, |e| e.dim)
    }

    pub fn total(&self, n: i64) -> usize {
        self.entries
            .iter()
            .filter(|(&(p, q), _)| p + q == n)
            .map(|(_, e)| e.dim)
            .sum()
    }

    /// Text rendering with q increasing upward and p increasing rightward.
    pub fn render(&self) -> String {
        let pmax = self.entries.keys().map(|&(p, _)| p).max().unwrap_or(0);
        let qmax = self.entries.keys().map(|&(_, q)| q).max().unwrap_or(0);
        let mut out = String::new();
        for q in (0..=qmax).rev() {
            out.push_str(&format!("q={q} |"));
            for p in 0..=pmax {
                out.push_str(&format!(" {:>3}", self.dim(p, q)));
            }
            out.push('\n');
        }
        out.push_str("      ");
        for p in 0..=pmax {
            out.push_str(&format!(" p={p}"));
        }
        out.push('\n');
        out
    }
}

pub fn build_filtration(
    g: &LieAlgebra,
    h_indices: &[usize],
    v: &ModuleSpec,
) -> Result<FilteredComplex, ComplexError> {
    g.check_subalgebra(h_indices)?;
    let complex = build_complex(g, v);
    Ok(FilteredComplex {
        g: g.clone(),
        h_indices: h_indices.to_vec(),
        complex,
        module_dim: v.dim,
    })
}

/// Computes the full sheet E_r with its induced differentials.
pub fn sheet(fc: &FilteredComplex, r: i64) -> SpectralSheet {
    let gdim = fc.g.dim() as i64;
    let codim = fc.codim() as i64;
    let mut entries = BTreeMap::new();
    let mut reps_at: BTreeMap<(i64, i64), (Subspace, Vec<Vec<Scalar>>)> = BTreeMap::new();
    for p in 0..=codim {
        for q in 0..=gdim {
            if p + q > gdim {
                continue;
            }
            let z = fc.cycles(r, p, q);
            let den = fc.denominator(r, p, q);
            let reps = den.complement_in(&z);
            entries.insert(
                (p, q),
                SheetEntry {
                    dim: reps.len(),
                    representatives: reps.clone(),
                },
            );
            reps_at.insert((p, q), (den, reps));
        }
    }
    let mut differentials = BTreeMap::new();
    for (&(p, q), entry) in &entries {
        let tp = p + r;
        let tq = q - r + 1;
        let target_dim = entries.get(&(tp, tq)).map_or(0, |e| e.dim);
        let mut mat = Matrix::zero(target_dim, entry.dim);
        if entry.dim > 0 && target_dim > 0 {
            let n = p + q;
            let d = fc.differential_from(n);
            let (target_den, target_reps) = &reps_at[&(tp, tq)];
            for (j, rep) in entry.representatives.iter().enumerate() {
                let image = d.apply(rep);
                let coords = target_den
                    .coords_with_reps(target_reps, &image)
                    .expect("d maps E_r cycles into the target cycles");
                for i in 0..target_dim {
                    mat[(i, j)] = coords[target_den.dim() + i].clone();
                }
            }
        }
        differentials.insert((p, q), mat);
    }
    SpectralSheet {
        r,
        entries,
        differentials,
    }
}

/// The quotient module g/h as an h-module (basis: the complement generators
/// in g's order), acting via the bracket followed by projection.
pub fn quotient_module(g: &LieAlgebra, h_indices: &[usize]) -> ModuleSpec {
    let complement: Vec<usize> = (0..g.dim()).filter(|i| !h_indices.contains(i)).collect();
    let dim = complement.len();
    let actions = h_indices
        .iter()
        .map(|&hi| {
            Matrix::from_fn(dim, dim, |r, c| {
                g.bracket_basis(hi, complement[c])[complement[r]].clone()
            })
        })
        .collect();
    ModuleSpec {
        name: "g/h".into(),
        dim,
        actions,
    }
}

/// The p-th wedge power of a module (derivation action on subsets).
pub fn wedge_power(v: &ModuleSpec, p: usize, n_generators: usize) -> ModuleSpec {
    let subsets = wedge_subsets(v.dim, p);
    let dim = subsets.len();
    let actions = (0..n_generators)
        .map(|gen| {
            let mut m = Matrix::zero(dim, dim);
            for (si, &s) in subsets.iter().enumerate() {
                let members: Vec<usize> = (0..v.dim).filter(|b| s >> b & 1 == 1).collect();
                for &j in &members {
                    for target in 0..v.dim {
                        let coeff = v.actions[gen][(target, j)].clone();
                        if coeff.is_zero() {
                            continue;
                        }
                        if target != j && members.contains(&target) {
                            continue;
                        }
                        let without = s ^ (1 << j);
                        if without >> target & 1 == 1 {
                            continue;
                        }
                        let t = without | (1 << target);
                        let pos_j = (s & ((1u32 << j) - 1)).count_ones();
                        let pos_t = (t & ((1u32 << target) - 1)).count_ones();
                        let sign = if (pos_j + pos_t).is_multiple_of(2) {
                            Scalar::one()
                        } else {
                            -Scalar::one()
                        };
                        let ti = subsets.iter().position(|&x| x == t).expect("subset");
                        m[(ti, si)] = m[(ti, si)].clone() + &sign * &coeff;
                    }
                }
            }
            m
        })
        .collect();
    ModuleSpec {
        name: format!("∧^{p}({})", v.name),
        dim,
        actions,
    }
}

/// E_1^{p,q} ≅ H^q(h; ∧^p(g/h)* ⊗ V), checked dimension-wise for all (p,q).
pub fn check_e1_isomorphism(
    g: &LieAlgebra,
    h_indices: &[usize],
    v: &ModuleSpec,
) -> Result<VerificationResult, ComplexError> {
    let start = Instant::now();
    let fc = build_filtration(g, h_indices, v)?;
    let e1 = sheet(&fc, 1);
    let h = sub_lie(g, h_indices)?;
    let vh = v.restrict(h_indices, &v.name);
    let quot = quotient_module(g, h_indices);
    let quot_dual = dual_as_h_module(&quot);
    let mut mismatches = 0usize;
    for p in 0..=fc.codim() as i64 {
        let wedge = wedge_power(&quot_dual, p as usize, h_indices.len());
        let coeff = wedge.tensor(&vh, &h);
        let dims = build_complex(&h, &coeff).cohomology_dims();
        for q in 0..=h.dim() as i64 {
            let lhs = e1.dim(p, q);
            let rhs = dims.get(q as usize).copied().unwrap_or(0);
            if lhs != rhs {
                mismatches += 1;
            }
        }
    }
    Ok(VerificationResult::from_flag(
        "first-sheet-subalgebra-cohomology",
        mismatches == 0,
        mismatches,
        start,
    ))
}

fn dual_as_h_module(v: &ModuleSpec) -> ModuleSpec {
    ModuleSpec {
        name: format!("{}^*", v.name),
        dim: v.dim,
        actions: v
            .actions
            .iter()
            .map(|a| a.transpose().scale(&-Scalar::one()))
            .collect(),
    }
}

/// Stabilized sheet: E_r for r beyond every possible differential.
pub fn infinity_sheet(fc: &FilteredComplex) -> SpectralSheet {
    sheet(fc, fc.g.dim() as i64 + 1)
}

/// Σ_p dim E_∞^{p,n−p} = dim H^n(g;V) for every n.
pub fn check_convergence(
    g: &LieAlgebra,
    h_indices: &[usize],
    v: &ModuleSpec,
) -> Result<VerificationResult, ComplexError> {
    let start = Instant::now();
    let fc = build_filtration(g, h_indices, v)?;
    let einf = infinity_sheet(&fc);
    let dims = fc.complex.cohomology_dims();
    let mut mismatches = 0usize;
    for n in 0..dims.len() as i64 {
        if einf.total(n) != dims[n as usize] {
            mismatches += 1;
        }
    }
    Ok(VerificationResult::from_flag(
        "spectral-convergence",
        mismatches == 0,
        mismatches,
        start,
    ))
}

/// dim H(E_r) at (p,q) computed from the d_r matrices, for comparison with
/// E_{r+1}.
pub fn homology_of_sheet(s: &SpectralSheet, p: i64, q: i64) -> usize {
    let here = s.dim(p, q);
    if here == 0 {
        return 0;
    }
    let out_rank = s.differentials.get(&(p, q)).map_or(0, Matrix::rank);
    let in_rank = s
        .differentials
        .get(&(p - s.r, q + s.r - 1))
        .map_or(0, Matrix::rank);
    here - out_rank - in_rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn sl2_with_an() -> (LieAlgebra, Vec<usize>) {
        let sl2 = LieAlgebra::sl2();
        let h = sl2.index_of("H").unwrap();
        let e = sl2.index_of("E").unwrap();
        (sl2, vec![h, e])
    }

    fn trivial_sl2_module(sl2: &LieAlgebra) -> ModuleSpec {
        ModuleSpec::new(
            sl2,
            "C",
            vec![Matrix::zero(1, 1), Matrix::zero(1, 1), Matrix::zero(1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn filtration_examples() {
        let an = LieAlgebra::an();
        let v = ModuleSpec::c_lambda(&an, &Scalar::zero());
        // (an, n = span{E}, C): F¹C¹ = span{θ_H}, F²C¹ = 0.
        let e = an.index_of("E").unwrap();
        let fc = build_filtration(&an, &[e], &v).unwrap();
        let f1c1 = fc.filtration(1, 1);
        assert_eq!(f1c1.dim(), 1);
        // θ_H is the basis vector at the H-subset slot.
        let subsets = wedge_subsets(2, 1);
        let h_slot = subsets
            .iter()
            .position(|&s| s == 1 << an.index_of("H").unwrap())
            .unwrap();
        let mut theta_h = vec![Scalar::zero(); 2];
        theta_h[h_slot] = Scalar::one();
        assert!(f1c1.contains(&theta_h));
        assert_eq!(fc.filtration(2, 1).dim(), 0);
        // Boundary conventions.
        assert_eq!(fc.filtration(0, 1).dim(), 2);
        assert_eq!(fc.filtration(-3, 2).dim(), 1);

        // (sl2, an, C): F¹C² has dimension 2.
        let (sl2, an_idx) = sl2_with_an();
        let triv = trivial_sl2_module(&sl2);
        let fc2 = build_filtration(&sl2, &an_idx, &triv).unwrap();
        assert_eq!(fc2.filtration(1, 2).dim(), 2);
        // (g, g, V): F^1 C^n = 0 for n ≥ 1.
        let fc3 = build_filtration(&sl2, &[0, 1, 2], &triv).unwrap();
        assert_eq!(fc3.filtration(1, 2).dim(), 0);
    }

    #[test]
    fn sl2_an_trivial_first_sheet() {
        let (sl2, an_idx) = sl2_with_an();
        let triv = trivial_sl2_module(&sl2);
        let fc = build_filtration(&sl2, &an_idx, &triv).unwrap();
        let e1 = sheet(&fc, 1);
        // Column p=0: H^q(an;C) = (1,1,0); column p=1: H^q(an;C_{1/√2}) = (0,1,1).
        assert_eq!(e1.dim(0, 0), 1);
        assert_eq!(e1.dim(0, 1), 1);
        assert_eq!(e1.dim(0, 2), 0);
        assert_eq!(e1.dim(1, 0), 0);
        assert_eq!(e1.dim(1, 1), 1);
        assert_eq!(e1.dim(1, 2), 1);
        // The differential out of (0,1) is nontrivial.
        assert_eq!(e1.differentials[&(0, 1)].rank(), 1);
        // E_∞ totals (1, 0, 0, 1).
        let einf = infinity_sheet(&fc);
        assert_eq!(
            (0..4).map(|n| einf.total(n)).collect::<Vec<_>>(),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn first_sheet_isomorphism_cases() {
        let (sl2, an_idx) = sl2_with_an();
        let triv = trivial_sl2_module(&sl2);
        assert!(check_e1_isomorphism(&sl2, &an_idx, &triv).unwrap().pass);
        let an = LieAlgebra::an();
        let e = an.index_of("E").unwrap();
        for lambda in [Scalar::zero(), Scalar::inv_sqrt2(), Scalar::from_int(2)] {
            let v = ModuleSpec::c_lambda(&an, &lambda);
            assert!(check_e1_isomorphism(&an, &[e], &v).unwrap().pass);
        }
        // (g, g, V): E_1^{0,q} = H^q(g;V).
        assert!(check_e1_isomorphism(&sl2, &[0, 1, 2], &triv).unwrap().pass);
    }

    #[test]
    fn generic_twist_second_sheet_vanishes() {
        let an = LieAlgebra::an();
        let e = an.index_of("E").unwrap();
        let v = ModuleSpec::c_lambda(&an, &Scalar::from_int(2));
        let fc = build_filtration(&an, &[e], &v).unwrap();
        let e2 = sheet(&fc, 2);
        for entry in e2.entries.values() {
            assert_eq!(entry.dim, 0);
        }
    }

    #[test]
    fn convergence_and_sheet_homology() {
        let (sl2, an_idx) = sl2_with_an();
        let an = LieAlgebra::an();
        let e = an.index_of("E").unwrap();
        let modules_sl2: Vec<ModuleSpec> =
            vec![trivial_sl2_module(&sl2), ModuleSpec::adjoint(&sl2)];
        for v in &modules_sl2 {
            assert!(check_convergence(&sl2, &an_idx, v).unwrap().pass);
            // H(E_r) ≅ E_{r+1} dimension-wise up to stabilization.
            let fc = build_filtration(&sl2, &an_idx, v).unwrap();
            for r in 1..=3 {
                let er = sheet(&fc, r);
                let next = sheet(&fc, r + 1);
                for &(p, q) in er.entries.keys() {
                    assert_eq!(
                        homology_of_sheet(&er, p, q),
                        next.dim(p, q),
                        "at r={r} (p,q)=({p},{q})"
                    );
                }
            }
        }
        for lambda in [Scalar::zero(), Scalar::inv_sqrt2(), Scalar::from_int(3)] {
            let v = ModuleSpec::c_lambda(&an, &lambda);
            assert!(check_convergence(&an, &[e], &v).unwrap().pass);
        }
        let adj = ModuleSpec::adjoint(&an);
        assert!(check_convergence(&an, &[e], &adj).unwrap().pass);
    }

    #[test]
    fn codim_one_degenerates_at_e2() {
        let an = LieAlgebra::an();
        let e = an.index_of("E").unwrap();
        for v in [
            ModuleSpec::c_lambda(&an, &Scalar::inv_sqrt2()),
            ModuleSpec::adjoint(&an),
        ] {
            let fc = build_filtration(&an, &[e], &v).unwrap();
            let e2 = sheet(&fc, 2);
            let einf = infinity_sheet(&fc);
            for (&(p, q), entry) in &e2.entries {
                assert_eq!(entry.dim, einf.dim(p, q));
                assert!(e2.differentials[&(p, q)].is_zero());
            }
        }
    }

    #[test]
    fn ideal_pair_second_sheet() {
        // For the ideal n ⊂ an with 1-dimensional quotient:
        // E_2^{p,q} ≅ H^p(an/n; H^q(n;V)).
        let an = LieAlgebra::an();
        let h_idx = an.index_of("H").unwrap();
        let e = an.index_of("E").unwrap();
        for v in [
            ModuleSpec::c_lambda(&an, &Scalar::zero()),
            ModuleSpec::c_lambda(&an, &Scalar::inv_sqrt2()),
            ModuleSpec::adjoint(&an),
        ] {
            let fc = build_filtration(&an, &[e], &v).unwrap();
            let e2 = sheet(&fc, 2);
            // H^q(n; V) with the induced action of H, then kernel/cokernel.
            let n_line = sub_lie(&an, &[e]).unwrap();
            let vn = v.restrict(&[e], &v.name);
            let small = build_complex(&n_line, &vn);
            for q in 0..=1i64 {
                let reps = small.cohomology_basis(q as usize);
                // L_H on C^q(n;V): ρ(H) on coefficients, −ad(H) on the leg.
                let dim = small.dims[q as usize];
                let mut lh = Matrix::zero(dim, dim);
                for c in 0..dim {
                    for r in 0..dim {
                        lh[(r, c)] = v.actions[h_idx][(r, c)].clone();
                    }
                }
                if q == 1 {
                    // One n-leg: subtract the eigenvalue of ad(H) on E.
                    let eig = an.bracket_basis(h_idx, e)[e].clone();
                    for i in 0..dim {
                        lh[(i, i)] = lh[(i, i)].clone() - eig.clone();
                    }
                }
                // Action on cohomology classes.
                let ker = if (q as usize) < small.d.len() {
                    crate::matrix::kernel_subspace(&small.d[q as usize])
                } else {
                    Subspace::full(dim)
                };
                let im = if q == 0 {
                    Subspace::zero(dim)
                } else {
                    crate::matrix::image_subspace(&small.d[0])
                };
                let mut action = Matrix::zero(reps.len(), reps.len());
                for (j, rep) in reps.iter().enumerate() {
                    let img = lh.apply(rep);
                    assert!(ker.contains(&img));
                    let coords = im.coords_with_reps(&reps, &img).unwrap();
                    for i in 0..reps.len() {
                        action[(i, j)] = coords[im.dim() + i].clone();
                    }
                }
                let kernel_dim = reps.len() - action.rank();
                let coker_dim = reps.len() - action.rank();
                assert_eq!(e2.dim(0, q), kernel_dim, "module {} q={q}", v.name);
                assert_eq!(e2.dim(1, q), coker_dim, "module {} q={q}", v.name);
            }
        }
    }
}
