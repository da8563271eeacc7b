//! Chevalley–Eilenberg complexes of finite-dimensional representations over
//! Q(i,√2): exact differentials, cohomology ranks, restriction maps and the
//! finite-dimensional Hodge families (δ, p) with
//! dδ + δd = id − p, p² = p, dp = pd = δp = pδ = 0, δ² = 0.

use crate::lie::{LieAlgebra, LieError};
use crate::matrix::{image_subspace, kernel_subspace, Matrix, Subspace};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("module action of {0} has wrong shape")]
    ActionShape(String),
    #[error("bracket compatibility fails on generators ({0}, {1})")]
    BracketCompat(String, String),
    #[error("complex dimension {0} exceeds the solver bound {1}")]
    TooLarge(usize, usize),
    #[error("hodge system is infeasible")]
    Infeasible,
    #[error("hodge solution variety is not an affine family")]
    NonAffine,
}

/// A finite-dimensional representation: one matrix per Lie generator.
#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub name: String,
    pub dim: usize,
    pub actions: Vec<Matrix>,
}

impl ModuleSpec {
    pub fn new(g: &LieAlgebra, name: &str, actions: Vec<Matrix>) -> Result<Self, ComplexError> {
        assert_eq!(actions.len(), g.dim());
        let dim = actions.first().map_or(0, Matrix::rows);
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(ComplexError::ActionShape(g.names()[i].clone()));
            }
        }
        let spec = ModuleSpec {
            name: name.to_string(),
            dim,
            actions,
        };
        spec.check_brackets(g)?;
        Ok(spec)
    }

    fn check_brackets(&self, g: &LieAlgebra) -> Result<(), ComplexError> {
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let commutator =
                    &(&self.actions[i] * &self.actions[j]) - &(&self.actions[j] * &self.actions[i]);
                let mut bracket_action = Matrix::zero(self.dim, self.dim);
                for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        bracket_action = &bracket_action + &self.actions[k].scale(c);
                    }
                }
                if commutator != bracket_action {
                    return Err(ComplexError::BracketCompat(
                        g.names()[i].clone(),
                        g.names()[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The 1-dimensional module of `an` with H ↦ λ, E ↦ 0.
    pub fn c_lambda(g: &LieAlgebra, lambda: &Scalar) -> Self {
        assert_eq!(g.dim(), 2);
        let mut actions = Vec::new();
        let mut mh = Matrix::zero(1, 1);
        mh[(0, 0)] = lambda.clone();
        actions.push(mh);
        actions.push(Matrix::zero(1, 1));
        ModuleSpec::new(g, &format!("C_{lambda}"), actions).expect("abelian quotient action")
    }

    /// The adjoint representation of g on itself.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let actions = (0..g.dim()).map(|i| g.ad_matrix(i)).collect();
        ModuleSpec::new(g, "adjoint", actions).expect("adjoint is a representation")
    }

    /// Restriction of a g-module along a basis-indexed subalgebra h ⊆ g.
    pub fn restrict(&self, h_indices: &[usize], name: &str) -> Self {
        ModuleSpec {
            name: name.to_string(),
            dim: self.dim,
            actions: h_indices.iter().map(|&i| self.actions[i].clone()).collect(),
        }
    }

    /// an acting on sl2 via the adjoint action (h_indices selects the an
    /// generators inside sl2).
    pub fn sl2_as_an_module(sl2: &LieAlgebra, an: &LieAlgebra) -> Self {
        let h = sl2.index_of("H").expect("H");
        let e = sl2.index_of("E").expect("E");
        let spec = ModuleSpec {
            name: "sl2-adjoint-restricted".into(),
            dim: 3,
            actions: vec![sl2.ad_matrix(h), sl2.ad_matrix(e)],
        };
        debug_assert!(spec.check_brackets(an).is_ok());
        spec
    }

    /// The dual module: ρ*(X) = −ρ(X)ᵀ.
    pub fn dual(&self, g: &LieAlgebra) -> Self {
        let actions = self
            .actions
            .iter()
            .map(|a| a.transpose().scale(&-Scalar::one()))
            .collect();
        ModuleSpec::new(g, &format!("{}^*", self.name), actions).expect("dual representation")
    }

    /// Tensor product of two modules of the same algebra.
    pub fn tensor(&self, other: &ModuleSpec, g: &LieAlgebra) -> Self {
        let dim = self.dim * other.dim;
        let mut actions = Vec::new();
        for idx in 0..g.dim() {
            let mut m = Matrix::zero(dim, dim);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if !self.actions[idx][(i, j)].is_zero() {
                        for k in 0..other.dim {
                            m[(i * other.dim + k, j * other.dim + k)] =
                                m[(i * other.dim + k, j * other.dim + k)].clone()
                                    + self.actions[idx][(i, j)].clone();
                        }
                    }
                }
            }
            for k in 0..other.dim {
                for l in 0..other.dim {
                    if !other.actions[idx][(k, l)].is_zero() {
                        for i in 0..self.dim {
                            m[(i * other.dim + k, i * other.dim + l)] =
                                m[(i * other.dim + k, i * other.dim + l)].clone()
                                    + other.actions[idx][(k, l)].clone();
                        }
                    }
                }
            }
            actions.push(m);
        }
        ModuleSpec::new(g, &format!("{}⊗{}", self.name, other.name), actions)
            .expect("tensor representation")
    }

    /// Direct sum of two modules of the same algebra.
    pub fn direct_sum(&self, other: &ModuleSpec, g: &LieAlgebra) -> Self {
        let dim = self.dim + other.dim;
        let actions = (0..g.dim())
            .map(|idx| {
                Matrix::from_fn(dim, dim, |r, c| {
                    if r < self.dim && c < self.dim {
                        self.actions[idx][(r, c)].clone()
                    } else if r >= self.dim && c >= self.dim {
                        other.actions[idx][(r - self.dim, c - self.dim)].clone()
                    } else {
                        Scalar::zero()
                    }
                })
            })
            .collect();
        ModuleSpec::new(g, &format!("{}⊕{}", self.name, other.name), actions)
            .expect("direct sum representation")
    }

    /// The dual-side two-dimensional module at the boundary Casimir value:
    /// H ↦ −(1/(2√2))[[1,0],[1,1]], E ↦ 0.
    pub fn c2_sharp(g: &LieAlgebra) -> Self {
        let c = -(Scalar::inv_sqrt2() * Scalar::from_ratio(1, 2));
        let mut mh = Matrix::zero(2, 2);
        mh[(0, 0)] = c.clone();
        mh[(1, 0)] = c.clone();
        mh[(1, 1)] = c;
        ModuleSpec::new(g, "C2#", vec![mh, Matrix::zero(2, 2)]).expect("nilpotent shift")
    }

    /// The homology-side module: H ↦ (1/(2√2))[[1,1],[0,1]], E ↦ 0.
    pub fn c2_flat(g: &LieAlgebra) -> Self {
        let c = Scalar::inv_sqrt2() * Scalar::from_ratio(1, 2);
        let mut mh = Matrix::zero(2, 2);
        mh[(0, 0)] = c.clone();
        mh[(0, 1)] = c.clone();
        mh[(1, 1)] = c;
        ModuleSpec::new(g, "C2b", vec![mh, Matrix::zero(2, 2)]).expect("nilpotent shift")
    }

    /// The cohomology-side module: H ↦ [[−1/(2√2), 1/(2√2)],[0, −1/(2√2)]],
    /// E ↦ 0.
    pub fn c2_natural(g: &LieAlgebra) -> Self {
        let c = Scalar::inv_sqrt2() * Scalar::from_ratio(1, 2);
        let mut mh = Matrix::zero(2, 2);
        mh[(0, 0)] = -c.clone();
        mh[(0, 1)] = c.clone();
        mh[(1, 1)] = -c;
        ModuleSpec::new(g, "C2n", vec![mh, Matrix::zero(2, 2)]).expect("nilpotent shift")
    }
}

/// A finite cochain complex with exact differential matrices.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    /// d[i] maps degree i to degree i+1.
    pub d: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, d: Vec<Matrix>) -> Self {
        assert_eq!(d.len() + 1, dims.len());
        for (i, m) in d.iter().enumerate() {
            assert_eq!(m.cols(), dims[i]);
            assert_eq!(m.rows(), dims[i + 1]);
        }
        for i in 0..d.len().saturating_sub(1) {
            assert!((&d[i + 1] * &d[i]).is_zero(), "d² ≠ 0 at degree {i}");
        }
        ChainComplex { dims, d }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differential(&self, i: usize) -> Matrix {
        if i < self.d.len() {
            self.d[i].clone()
        } else {
            Matrix::zero(0, *self.dims.get(i).unwrap_or(&0))
        }
    }

    /// dim H^i = dim ker d_i − rank d_{i−1} per degree.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| {
                let ker = if i < self.d.len() {
                    self.dims[i] - self.d[i].rank()
                } else {
                    self.dims[i]
                };
                let im = if i == 0 { 0 } else { self.d[i - 1].rank() };
                ker - im
            })
            .collect()
    }

    /// Representatives of H^i: lexicographically first kernel vectors that
    /// extend the image.
    pub fn cohomology_basis(&self, i: usize) -> Vec<Vec<Scalar>> {
        let ker = if i < self.d.len() {
            kernel_subspace(&self.d[i])
        } else {
            Subspace::full(self.dims[i])
        };
        let im = if i == 0 {
            Subspace::zero(self.dims[i])
        } else {
            image_subspace(&self.d[i - 1])
        };
        im.complement_in(&ker)
    }

    pub fn euler_characteristic_consistent(&self) -> bool {
        let spaces: i64 = self
            .dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let cohom: i64 = self
            .cohomology_dims()
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        spaces == cohom
    }
}

/// Index of a wedge subset paired with a module basis index; wedge-major.
pub(crate) fn wedge_subsets(n: usize, p: usize) -> Vec<u32> {
    (0u32..(1 << n))
        .filter(|s| s.count_ones() as usize == p)
        .collect()
}

/// The Chevalley–Eilenberg complex C*(g; V) with the standard differential.
pub fn build_complex(g: &LieAlgebra, v: &ModuleSpec) -> ChainComplex {
    let n = g.dim();
    let dims: Vec<usize> = (0..=n).map(|p| wedge_subsets(n, p).len() * v.dim).collect();
    let mut diffs = Vec::new();
    for p in 0..n {
        let sources = wedge_subsets(n, p);
        let targets = wedge_subsets(n, p + 1);
        let mut m = Matrix::zero(targets.len() * v.dim, sources.len() * v.dim);
        for (ti, &t) in targets.iter().enumerate() {
            let t_list: Vec<usize> = (0..n).filter(|b| t >> b & 1 == 1).collect();
            // Action terms: Σ_k (−1)^{k} ρ(X_{t_k}) φ(X_{T∖t_k}) with k 0-based.
            for (k, &gen) in t_list.iter().enumerate() {
                let src = t ^ (1 << gen);
                let si = sources.iter().position(|&s| s == src).expect("subset");
                let sign = if k % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                for r in 0..v.dim {
                    for c in 0..v.dim {
                        let val = &v.actions[gen][(r, c)] * &sign;
                        if !val.is_zero() {
                            m[(ti * v.dim + r, si * v.dim + c)] =
                                m[(ti * v.dim + r, si * v.dim + c)].clone() + val;
                        }
                    }
                }
            }
            // Bracket terms: Σ_{k<l} (−1)^{k+l} φ([X_{t_k}, X_{t_l}], rest),
            // with 1-based signs (−1)^{k+l} = (−1)^{(k0+1)+(l0+1)}.
            for k in 0..t_list.len() {
                for l in (k + 1)..t_list.len() {
                    let sign = if (k + l) % 2 == 0 {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    let rest: Vec<usize> = t_list
                        .iter()
                        .enumerate()
                        .filter(|&(idx, _)| idx != k && idx != l)
                        .map(|(_, &b)| b)
                        .collect();
                    let bracket = g.bracket_basis(t_list[k], t_list[l]);
                    for (b, coeff) in bracket.iter().enumerate() {
                        if coeff.is_zero() || rest.contains(&b) {
                            continue;
                        }
                        let pos = rest.iter().filter(|&&x| x < b).count();
                        let perm = if pos % 2 == 0 {
                            Scalar::one()
                        } else {
                            -Scalar::one()
                        };
                        let mut src = 1u32 << b;
                        for &x in &rest {
                            src |= 1 << x;
                        }
                        let si = sources.iter().position(|&s| s == src).expect("subset");
                        let total = &(&sign * coeff) * &perm;
                        for r in 0..v.dim {
                            m[(ti * v.dim + r, si * v.dim + r)] =
                                m[(ti * v.dim + r, si * v.dim + r)].clone() + total.clone();
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(dims, diffs)
}

/// Kernel and cokernel dimensions of ρ(H) + λ on V (the degree-separating
/// map of the two-step filtration).
pub fn lh_kernel_cokernel(v: &ModuleSpec, h_index: usize, lambda: &Scalar) -> (usize, usize) {
    let mut m = v.actions[h_index].clone();
    for i in 0..v.dim {
        m[(i, i)] = m[(i, i)].clone() + lambda.clone();
    }
    let r = m.rank();
    (v.dim - r, v.dim - r)
}

/// The restriction map H^i(g;V) → H^i(h;V|_h) for a basis-indexed subalgebra,
/// as matrices between the chosen cohomology bases.
pub fn restriction_map(
    g: &LieAlgebra,
    h_indices: &[usize],
    v: &ModuleSpec,
) -> Result<Vec<Matrix>, ComplexError> {
    g.check_subalgebra(h_indices)?;
    let h = sub_lie(g, h_indices)?;
    let vh = v.restrict(h_indices, &format!("{}|h", v.name));
    let big = build_complex(g, v);
    let small = build_complex(&h, &vh);
    let n = g.dim();
    let m = h_indices.len();
    let mut out = Vec::new();
    for degree in 0..=m {
        let big_basis = big.cohomology_basis(degree);
        let small_basis = small.cohomology_basis(degree);
        // Restriction on cochains: keep wedge subsets inside h, re-index.
        let restrict = restriction_cochain_matrix(n, h_indices, degree, v.dim);
        let small_ker = if degree < small.d.len() {
            kernel_subspace(&small.d[degree])
        } else {
            Subspace::full(small.dims[degree])
        };
        let small_im = if degree == 0 {
            Subspace::zero(small.dims[degree])
        } else {
            image_subspace(&small.d[degree - 1])
        };
        let mut mat = Matrix::zero(small_basis.len(), big_basis.len());
        for (j, rep) in big_basis.iter().enumerate() {
            let image = restrict.apply(rep);
            debug_assert!(small_ker.contains(&image));
            let coords = small_im
                .coords_with_reps(&small_basis, &image)
                .expect("restriction lands in the small kernel");
            for i in 0..small_basis.len() {
                mat[(i, j)] = coords[small_im.dim() + i].clone();
            }
        }
        out.push(mat);
    }
    Ok(out)
}

/// The cochain-level restriction C^p(g;V) → C^p(h;V), with the permutation
/// sign from reordering the subset into h's own basis order.
fn restriction_cochain_matrix(n: usize, h_indices: &[usize], p: usize, vdim: usize) -> Matrix {
    let sources = wedge_subsets(n, p);
    let targets = wedge_subsets(h_indices.len(), p);
    let mut m = Matrix::zero(targets.len() * vdim, sources.len() * vdim);
    for (si, &s) in sources.iter().enumerate() {
        let members: Vec<usize> = (0..n).filter(|b| s >> b & 1 == 1).collect();
        // Positions within h, in g's subset order.
        let Some(positions) = members
            .iter()
            .map(|&b| h_indices.iter().position(|&hi| hi == b))
            .collect::<Option<Vec<usize>>>()
        else {
            continue;
        };
        // Sign of sorting `positions` ascending.
        let mut sorted = positions.clone();
        let mut sign = Scalar::one();
        for i in 0..sorted.len() {
            for j in (i + 1)..sorted.len() {
                if sorted[i] > sorted[j] {
                    sorted.swap(i, j);
                    sign = -sign;
                }
            }
        }
        let mut target_mask = 0u32;
        for &pos in &sorted {
            target_mask |= 1 << pos;
        }
        let ti = targets
            .iter()
            .position(|&t| t == target_mask)
            .expect("subset");
        for r in 0..vdim {
            m[(ti * vdim + r, si * vdim + r)] = sign.clone();
        }
    }
    m
}

/// The subalgebra spanned by the listed basis indices as a Lie algebra in its
/// own right (basis order = listed order).
pub fn sub_lie(g: &LieAlgebra, indices: &[usize]) -> Result<LieAlgebra, ComplexError> {
    g.check_subalgebra(indices)?;
    let m = indices.len();
    let names = indices.iter().map(|&i| g.names()[i].clone()).collect();
    let mut brackets = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            let full = g.bracket_basis(i, j);
            for (c, &k) in indices.iter().enumerate() {
                brackets[a][b][c] = full[k].clone();
            }
        }
    }
    Ok(LieAlgebra::new(names, brackets)?)
}

/// An affine family of Hodge pairs (δ, p): every parameter choice yields
/// matrices satisfying all seven identities, and p is determined by
/// p = id − dδ − δd.
pub struct HodgeFamily {
    complex: ChainComplex,
    /// Base point, as one δ-matrix per positive degree (δ_{i+1} maps i+1 → i).
    base: Vec<Matrix>,
    /// Directions spanning the family.
    directions: Vec<Vec<Matrix>>,
}

impl HodgeFamily {
    pub fn parameter_count(&self) -> usize {
        self.directions.len()
    }

    /// Instantiates δ at the given parameters and derives p.
    pub fn instantiate(&self, params: &[Scalar]) -> (Vec<Matrix>, Vec<Matrix>) {
        assert_eq!(params.len(), self.directions.len());
        let mut deltas = self.base.clone();
        for (dir, t) in self.directions.iter().zip(params) {
            for (d, extra) in deltas.iter_mut().zip(dir) {
                *d = &*d + &extra.scale(t);
            }
        }
        let ps = self.projections(&deltas);
        (deltas, ps)
    }

    fn projections(&self, deltas: &[Matrix]) -> Vec<Matrix> {
        let c = &self.complex;
        (0..c.dims.len())
            .map(|i| {
                let mut p = Matrix::identity(c.dims[i]);
                if i > 0 {
                    p = &p - &(&c.d[i - 1] * &deltas[i - 1]);
                }
                if i < c.d.len() {
                    p = &p - &(&deltas[i] * &c.d[i]);
                }
                p
            })
            .collect()
    }

    /// Checks all seven identities exactly for one instance.
    pub fn verify_instance(&self, deltas: &[Matrix], ps: &[Matrix]) -> bool {
        verify_hodge_pair(&self.complex, deltas, ps)
    }

    /// Solves for the parameters that produce the given δ, if it lies in the
    /// family.
    pub fn locate(&self, deltas: &[Matrix]) -> Option<Vec<Scalar>> {
        let mut rows = 0usize;
        for d in &self.base {
            rows += d.rows() * d.cols();
        }
        let mut a = Matrix::zero(rows, self.directions.len());
        let mut b = Vec::with_capacity(rows);
        let mut row = 0usize;
        for (idx, base) in self.base.iter().enumerate() {
            for r in 0..base.rows() {
                for c in 0..base.cols() {
                    for (j, dir) in self.directions.iter().enumerate() {
                        a[(row, j)] = dir[idx][(r, c)].clone();
                    }
                    b.push(deltas[idx][(r, c)].clone() - base[(r, c)].clone());
                    row += 1;
                }
            }
        }
        a.solve(&b)
    }
}

/// Checks dδ + δd = id − p, p² = p, dp = pd = 0, δp = pδ = 0, δ² = 0.
pub fn verify_hodge_pair(c: &ChainComplex, deltas: &[Matrix], ps: &[Matrix]) -> bool {
    let degrees = c.dims.len();
    for i in 0..degrees {
        let mut lap = Matrix::zero(c.dims[i], c.dims[i]);
        if i > 0 {
            lap = &lap + &(&c.d[i - 1] * &deltas[i - 1]);
        }
        if i < c.d.len() {
            lap = &lap + &(&deltas[i] * &c.d[i]);
        }
        let target = &Matrix::identity(c.dims[i]) - &ps[i];
        if lap != target {
            return false;
        }
        if &ps[i] * &ps[i] != ps[i] {
            return false;
        }
        if i < c.d.len() && !(&c.d[i] * &ps[i]).is_zero() {
            return false;
        }
        if i > 0 && !(&ps[i] * &c.d[i - 1]).is_zero() {
            return false;
        }
        if i > 0 && !(&ps[i - 1] * &deltas[i - 1]).is_zero() {
            return false;
        }
        if i > 0 && !(&deltas[i - 1] * &ps[i]).is_zero() {
            return false;
        }
        if i > 1 && !(&deltas[i - 2] * &deltas[i - 1]).is_zero() {
            return false;
        }
    }
    true
}

/// Solves for the affine family of all Hodge pairs on a complex.
///
/// Every solution corresponds to a choice, per degree, of a complement A of
/// ker d inside the cochain space and a complement H of im d inside ker d;
/// δ inverts d from A onto im d and kills H ⊕ A, and p projects onto H.
/// The family is affine exactly when these choices enter without
/// interaction, which holds whenever at most one of the two choices is free
/// in each linked pair of degrees; this is verified by sampling and a
/// `NonAffine` error is returned otherwise.
pub fn solve_hodge_family(
    c: &ChainComplex,
    dimension_bound: usize,
) -> Result<HodgeFamily, ComplexError> {
    let total: usize = c.dims.iter().sum();
    if total > dimension_bound {
        return Err(ComplexError::TooLarge(total, dimension_bound));
    }
    let degrees = c.dims.len();
    // Fixed subspaces per degree.
    let kernels: Vec<Subspace> = (0..degrees)
        .map(|i| {
            if i < c.d.len() {
                kernel_subspace(&c.d[i])
            } else {
                Subspace::full(c.dims[i])
            }
        })
        .collect();
    let images: Vec<Subspace> = (0..degrees)
        .map(|i| {
            if i == 0 {
                Subspace::zero(c.dims[i])
            } else {
                image_subspace(&c.d[i - 1])
            }
        })
        .collect();
    // Canonical complements.
    let a_bases: Vec<Vec<Vec<Scalar>>> = (0..degrees)
        .map(|i| kernels[i].complement_in(&Subspace::full(c.dims[i])))
        .collect();
    let h_bases: Vec<Vec<Vec<Scalar>>> = (0..degrees)
        .map(|i| images[i].complement_in(&kernels[i]))
        .collect();

    // Parameters: φ_i ∈ Hom(A_i⁰, K_i) and ψ_i ∈ Hom(H_i⁰, B_i).
    #[derive(Clone, Copy)]
    enum Param {
        Phi {
            degree: usize,
            a_idx: usize,
            k_row: usize,
        },
        Psi {
            degree: usize,
            h_idx: usize,
            b_row: usize,
        },
    }
    let mut params = Vec::new();
    for i in 0..degrees {
        let kdim = kernels[i].dim();
        for a_idx in 0..a_bases[i].len() {
            for k_row in 0..kdim {
                params.push(Param::Phi {
                    degree: i,
                    a_idx,
                    k_row,
                });
            }
        }
        let bdim = images[i].dim();
        for h_idx in 0..h_bases[i].len() {
            for b_row in 0..bdim {
                params.push(Param::Psi {
                    degree: i,
                    h_idx,
                    b_row,
                });
            }
        }
    }

    let build = |values: &[Scalar]| -> Vec<Matrix> {
        // Assemble A_i(φ) and H_i(ψ) bases.
        let mut a_cols: Vec<Vec<Vec<Scalar>>> = a_bases.clone();
        let mut h_cols: Vec<Vec<Vec<Scalar>>> = h_bases.clone();
        for (param, value) in params.iter().zip(values) {
            if value.is_zero() {
                continue;
            }
            match *param {
                Param::Phi {
                    degree,
                    a_idx,
                    k_row,
                } => {
                    let kvec = kernels[degree].basis_vectors()[k_row].clone();
                    for (slot, x) in a_cols[degree][a_idx].iter_mut().enumerate() {
                        *x = x.clone() + value * &kvec[slot];
                    }
                }
                Param::Psi {
                    degree,
                    h_idx,
                    b_row,
                } => {
                    let bvec = images[degree].basis_vectors()[b_row].clone();
                    for (slot, x) in h_cols[degree][h_idx].iter_mut().enumerate() {
                        *x = x.clone() + value * &bvec[slot];
                    }
                }
            }
        }
        // δ_{i+1} : C^{i+1} → C^i kills H(ψ) ⊕ A(φ) at degree i+1 and maps
        // B_{i+1} back through d restricted to A_i(φ).
        let mut deltas = Vec::new();
        for i in 0..degrees - 1 {
            let src_dim = c.dims[i + 1];
            let mut delta = Matrix::zero(c.dims[i], src_dim);
            // Basis of C^{i+1}: B ⊕ H(ψ) ⊕ A(φ) columns.
            let b_cols = images[i + 1].basis_vectors();
            let h1 = &h_cols[i + 1];
            let a1 = &a_cols[i + 1];
            let mut basis_cols: Vec<Vec<Scalar>> = Vec::new();
            basis_cols.extend(b_cols.iter().cloned());
            basis_cols.extend(h1.iter().cloned());
            basis_cols.extend(a1.iter().cloned());
            if basis_cols.is_empty() {
                deltas.push(delta);
                continue;
            }
            let change = Matrix::from_rows(basis_cols.clone()).transpose();
            // Images under δ: lift b through d|_{A_i(φ)}, zero on H and A.
            let a0 = &a_cols[i];
            let mut delta_images: Vec<Vec<Scalar>> = Vec::new();
            for b in &b_cols {
                // Solve d_i (Σ t_j a0_j) = b.
                let mut sys = Matrix::zero(c.dims[i + 1], a0.len());
                for (j, a) in a0.iter().enumerate() {
                    let img = c.d[i].apply(a);
                    for r in 0..c.dims[i + 1] {
                        sys[(r, j)] = img[r].clone();
                    }
                }
                let t = sys.solve(b).expect("image vector lifts through d");
                let mut lift = vec![Scalar::zero(); c.dims[i]];
                for (j, a) in a0.iter().enumerate() {
                    for r in 0..c.dims[i] {
                        lift[r] = lift[r].clone() + &t[j] * &a[r];
                    }
                }
                delta_images.push(lift);
            }
            for _ in 0..h1.len() + a1.len() {
                delta_images.push(vec![Scalar::zero(); c.dims[i]]);
            }
            // delta = images ∘ change⁻¹: solve change · x = e_col per column.
            for col in 0..src_dim {
                let mut e = vec![Scalar::zero(); src_dim];
                e[col] = Scalar::one();
                let coords = change.solve(&e).expect("basis of the degree");
                for r in 0..c.dims[i] {
                    let mut acc = Scalar::zero();
                    for (j, img) in delta_images.iter().enumerate() {
                        if !coords[j].is_zero() {
                            acc += &coords[j] * &img[r];
                        }
                    }
                    delta[(r, col)] = acc;
                }
            }
            deltas.push(delta);
        }
        deltas
    };

    let zero_params = vec![Scalar::zero(); params.len()];
    let base = build(&zero_params);
    let mut directions = Vec::new();
    for j in 0..params.len() {
        let mut unit = zero_params.clone();
        unit[j] = Scalar::one();
        let at_unit = build(&unit);
        let dir: Vec<Matrix> = at_unit.iter().zip(&base).map(|(u, b)| u - b).collect();
        directions.push(dir);
    }

    let family = HodgeFamily {
        complex: c.clone(),
        base,
        directions,
    };

    // Affineness check: a structural instance at mixed parameter values must
    // agree with the affine combination, and every sampled member must
    // satisfy the seven identities.
    let sample: Vec<Scalar> = (0..params.len())
        .map(|j| Scalar::from_ratio(j as i64 % 3 - 1, 1 + (j as i64 % 2)))
        .collect();
    let structural = build(&sample);
    let (affine, ps) = family.instantiate(&sample);
    if structural != affine {
        return Err(ComplexError::NonAffine);
    }
    if !family.verify_instance(&affine, &ps) {
        return Err(ComplexError::Infeasible);
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn an() -> LieAlgebra {
        LieAlgebra::an()
    }

    #[test]
    fn an_trivial_complex_matrices() {
        let g = an();
        let v = ModuleSpec::c_lambda(&g, &Scalar::zero());
        let c = build_complex(&g, &v);
        assert_eq!(c.dims, vec![1, 2, 1]);
        assert!(c.d[0].is_zero());
        // d_1 = (0, −1/√2) in the (θ_H, θ_E) basis.
        assert_eq!(c.d[1][(0, 0)], Scalar::zero());
        assert_eq!(c.d[1][(0, 1)], -Scalar::inv_sqrt2());
        assert_eq!(c.cohomology_dims(), vec![1, 1, 0]);
    }

    #[test]
    fn an_half_twist_complex_matrices() {
        let g = an();
        let v = ModuleSpec::c_lambda(&g, &Scalar::inv_sqrt2());
        let c = build_complex(&g, &v);
        assert_eq!(c.d[0][(0, 0)], Scalar::inv_sqrt2());
        assert_eq!(c.d[0][(1, 0)], Scalar::zero());
        assert!(c.d[1].is_zero());
        assert_eq!(c.cohomology_dims(), vec![0, 1, 1]);
    }

    #[test]
    fn cohomology_tables() {
        let g = an();
        let sl2 = LieAlgebra::sl2();
        // (sl2, C) → [1, 0, 0, 1]
        let triv3 = ModuleSpec::new(
            &sl2,
            "C",
            vec![Matrix::zero(1, 1), Matrix::zero(1, 1), Matrix::zero(1, 1)],
        )
        .unwrap();
        assert_eq!(
            build_complex(&sl2, &triv3).cohomology_dims(),
            vec![1, 0, 0, 1]
        );
        // (an, C ⊗ an-adjoint) → [0, 0, 0]
        let adj = ModuleSpec::adjoint(&g);
        assert_eq!(build_complex(&g, &adj).cohomology_dims(), vec![0, 0, 0]);
        // λ outside {0, 1/√2} kills everything.
        for lambda in [
            Scalar::from_int(2),
            Scalar::from_int(-1),
            Scalar::sqrt2(),
            Scalar::i(),
        ] {
            let v = ModuleSpec::c_lambda(&g, &lambda);
            assert_eq!(build_complex(&g, &v).cohomology_dims(), vec![0, 0, 0]);
        }
        // Euler characteristic consistency.
        assert!(build_complex(&g, &adj).euler_characteristic_consistent());
    }

    #[test]
    fn kernel_cokernel_instances() {
        let g = an();
        let h = 0;
        // C²-natural at λ = 1/(2√2) → (1, 1); at λ = 0 → (0, 0).
        let c2n = ModuleSpec::c2_natural(&g);
        let half = Scalar::inv_sqrt2() * Scalar::from_ratio(1, 2);
        assert_eq!(lh_kernel_cokernel(&c2n, h, &half), (1, 1));
        assert_eq!(lh_kernel_cokernel(&c2n, h, &Scalar::zero()), (0, 0));
        // One-dimensional C_{−1/√2}-style module at matching λ.
        let v = ModuleSpec::c_lambda(&g, &-Scalar::inv_sqrt2());
        assert_eq!(lh_kernel_cokernel(&v, h, &Scalar::inv_sqrt2()), (1, 1));
        assert_eq!(lh_kernel_cokernel(&v, h, &Scalar::zero()), (0, 0));
        // The boundary-case companions.
        let sharp = ModuleSpec::c2_sharp(&g);
        let flat = ModuleSpec::c2_flat(&g);
        assert_eq!(lh_kernel_cokernel(&sharp, h, &half), (1, 1));
        assert_eq!(lh_kernel_cokernel(&flat, h, &-half), (1, 1));
    }

    #[test]
    fn hodge_family_trivial_coefficients() {
        let g = an();
        let v = ModuleSpec::c_lambda(&g, &Scalar::zero());
        let c = build_complex(&g, &v);
        let family = solve_hodge_family(&c, 64).unwrap();
        assert_eq!(family.parameter_count(), 1);
        // The displayed family: δ_1 = 0, δ_2 = (a, −√2)ᵀ,
        // p_0 = 1, p_1 = [[1, a/√2],[0,0]], p_2 = 0, for a ∈ {0, 1, i}.
        for a in [Scalar::zero(), Scalar::one(), Scalar::i()] {
            let mut d1 = Matrix::zero(1, 2);
            d1[(0, 0)] = Scalar::zero();
            let mut d2 = Matrix::zero(2, 1);
            d2[(0, 0)] = a.clone();
            d2[(1, 0)] = -Scalar::sqrt2();
            let deltas = vec![d1, d2];
            let params = family.locate(&deltas).expect("displayed instance in family");
            let (inst_d, inst_p) = family.instantiate(&params);
            assert_eq!(inst_d, deltas);
            assert!(family.verify_instance(&inst_d, &inst_p));
            assert_eq!(inst_p[0], Matrix::identity(1));
            let mut p1 = Matrix::zero(2, 2);
            p1[(0, 0)] = Scalar::one();
            p1[(0, 1)] = a.clone() * Scalar::inv_sqrt2();
            assert_eq!(inst_p[1], p1);
            assert!(inst_p[2].is_zero());
        }
    }

    #[test]
    fn hodge_family_half_twist() {
        let g = an();
        let v = ModuleSpec::c_lambda(&g, &Scalar::inv_sqrt2());
        let c = build_complex(&g, &v);
        let family = solve_hodge_family(&c, 64).unwrap();
        assert_eq!(family.parameter_count(), 1);
        // Displayed family: δ_1 = (√2, a), δ_2 = 0, p_0 = 0,
        // p_1 = [[0, −a/√2],[0,1]], p_2 = 1.
        for a in [Scalar::zero(), Scalar::one(), Scalar::i()] {
            let mut d1 = Matrix::zero(1, 2);
            d1[(0, 0)] = Scalar::sqrt2();
            d1[(0, 1)] = a.clone();
            let deltas = vec![d1, Matrix::zero(2, 1)];
            let params = family.locate(&deltas).expect("displayed instance in family");
            let (inst_d, inst_p) = family.instantiate(&params);
            assert_eq!(inst_d, deltas);
            assert!(family.verify_instance(&inst_d, &inst_p));
            assert!(inst_p[0].is_zero());
            let mut p1 = Matrix::zero(2, 2);
            p1[(0, 1)] = -(a.clone() * Scalar::inv_sqrt2());
            p1[(1, 1)] = Scalar::one();
            assert_eq!(inst_p[1], p1);
            assert_eq!(inst_p[2], Matrix::identity(1));
        }
    }

    #[test]
    fn hodge_family_adjoint_coefficients() {
        let g = an();
        let adj = ModuleSpec::adjoint(&g);
        let c = build_complex(&g, &adj);
        let family = solve_hodge_family(&c, 64).unwrap();
        assert_eq!(family.parameter_count(), 4);
        // Displayed family (basis 1⊗H, 1⊗E; θ_H⊗H, θ_H⊗E, θ_E⊗H, θ_E⊗E;
        // θ_H∧θ_E⊗H, θ_H∧θ_E⊗E):
        // δ_1 = [[a,0,b,−√2],[c,√2,e,0]], δ_2 = [[0,√2],[e,−c],[−√2,0],[−b,a]].
        let displayed_delta = |a: &Scalar, b: &Scalar, cc: &Scalar, e: &Scalar| {
            let mut d1 = Matrix::zero(2, 4);
            d1[(0, 0)] = a.clone();
            d1[(0, 2)] = b.clone();
            d1[(0, 3)] = -Scalar::sqrt2();
            d1[(1, 0)] = cc.clone();
            d1[(1, 1)] = Scalar::sqrt2();
            d1[(1, 2)] = e.clone();
            let mut d2 = Matrix::zero(4, 2);
            d2[(0, 1)] = Scalar::sqrt2();
            d2[(1, 0)] = e.clone();
            d2[(1, 1)] = -cc.clone();
            d2[(2, 0)] = -Scalar::sqrt2();
            d2[(3, 0)] = -b.clone();
            d2[(3, 1)] = a.clone();
            vec![d1, d2]
        };
        for (a, b, cc, e) in [
            (
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ),
            (
                Scalar::one(),
                Scalar::from_int(2),
                Scalar::from_int(3),
                Scalar::from_int(5),
            ),
            (
                Scalar::i(),
                Scalar::zero(),
                Scalar::inv_sqrt2(),
                Scalar::one(),
            ),
        ] {
            let deltas = displayed_delta(&a, &b, &cc, &e);
            let params = family.locate(&deltas).expect("displayed instance in family");
            let (inst_d, inst_p) = family.instantiate(&params);
            assert_eq!(inst_d, deltas);
            assert!(family.verify_instance(&inst_d, &inst_p));
            // Acyclic complex: the projection vanishes.
            assert!(inst_p.iter().all(Matrix::is_zero));
        }
    }

    #[test]
    fn hodge_family_members_project_onto_cohomology() {
        let g = an();
        for lambda in [Scalar::zero(), Scalar::inv_sqrt2()] {
            let v = ModuleSpec::c_lambda(&g, &lambda);
            let c = build_complex(&g, &v);
            let family = solve_hodge_family(&c, 64).unwrap();
            let params: Vec<Scalar> = (0..family.parameter_count())
                .map(|k| Scalar::from_int(k as i64 + 2) * Scalar::i() + Scalar::sqrt2())
                .collect();
            let (d, p) = family.instantiate(&params);
            assert!(family.verify_instance(&d, &p));
            for (i, pi) in p.iter().enumerate() {
                assert_eq!(pi.rank(), c.cohomology_dims()[i]);
            }
        }
    }

    #[test]
    fn restriction_sl2_to_an() {
        let sl2 = LieAlgebra::sl2();
        let h = sl2.index_of("H").unwrap();
        let e = sl2.index_of("E").unwrap();
        let triv = ModuleSpec::new(
            &sl2,
            "C",
            vec![Matrix::zero(1, 1), Matrix::zero(1, 1), Matrix::zero(1, 1)],
        )
        .unwrap();
        let maps = restriction_map(&sl2, &[h, e], &triv).unwrap();
        // H^0 rank 1; H^1 rank 0 (domain vanishes); H^2 rank 0 (domain 0).
        assert_eq!(maps[0].rank(), 1);
        assert_eq!(maps[1].rank(), 0);
        assert_eq!(maps[2].rank(), 0);
        // an → an is the identity in every degree.
        let an = LieAlgebra::an();
        let v = ModuleSpec::c_lambda(&an, &Scalar::zero());
        let self_maps = restriction_map(&an, &[0, 1], &v).unwrap();
        for (i, m) in self_maps.iter().enumerate() {
            assert_eq!(m, &Matrix::identity(m.rows()), "degree {i}");
        }
    }
}
