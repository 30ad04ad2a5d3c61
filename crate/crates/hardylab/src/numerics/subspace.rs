//! Subspace computations: orthonormalization, null spaces, Jordan's lemma
//! block decomposition, and constrained extremal eigenproblems.

use crate::error::{Error, Result};
use crate::numerics::eigen::hermitian_eigen;
use crate::numerics::matrix::{c64, ComplexMatrix, Ket};
use crate::tol::{PIVOT, TOL_HERM};

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Returns an orthonormal basis of the span of `vs`; vectors whose residual
/// after projection falls below the pivot threshold are dropped, so the
/// result size equals the numerical rank.
pub fn orthonormal_span(vs: &[Ket]) -> Result<Vec<Ket>> {
    let dim = match vs.first() {
        Some(v) => v.dim(),
        None => return Ok(Vec::new()),
    };
    let mut basis: Vec<Ket> = Vec::new();
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "kets of dimension {} and {} in one span",
                dim,
                v.dim()
            )));
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let coeff = b.inner(&w);
                w = w.sub(&b.scale(coeff));
            }
        }
        if w.norm() > PIVOT {
            basis.push(w.normalized()?);
        }
    }
    Ok(basis)
}

/// Numerical rank of a list of kets.
pub fn rank(vs: &[Ket]) -> Result<usize> {
    Ok(orthonormal_span(vs)?.len())
}

/// Orthonormal basis of the orthogonal complement of `span(vs)`.
///
/// The returned kets are mutually orthonormal and orthogonal to every input;
/// their count is `d - rank(vs)`.
pub fn null_space(vs: &[Ket]) -> Result<Vec<Ket>> {
    let dim = vs
        .first()
        .map(Ket::dim)
        .ok_or_else(|| Error::DimensionMismatch("null_space of an empty list is ambiguous".into()))?;
    null_space_in_dim(vs, dim)
}

/// Null space with an explicit ambient dimension, allowing an empty `vs`
/// (in which case the whole space comes back as the standard basis).
pub fn null_space_in_dim(vs: &[Ket], dim: usize) -> Result<Vec<Ket>> {
    let mut basis = orthonormal_span(vs)?;
    if basis.first().map(Ket::dim).unwrap_or(dim) != dim {
        return Err(Error::DimensionMismatch("ambient dimension does not match inputs".into()));
    }
    let span_rank = basis.len();
    let mut complement = Vec::with_capacity(dim - span_rank);
    for i in 0..dim {
        if complement.len() == dim - span_rank {
            break;
        }
        let mut w = Ket::basis_state(dim, i);
        for _ in 0..2 {
            for b in basis.iter().chain(complement.iter()) {
                let coeff = b.inner(&w);
                w = w.sub(&b.scale(coeff));
            }
        }
        if w.norm() > PIVOT {
            complement.push(w.normalized()?);
        }
    }
    basis.truncate(span_rank);
    Ok(complement)
}

/// Orthonormal basis of the column space of a Hermitian positive semidefinite
/// matrix, i.e. of its range.
pub fn psd_range(m: &ComplexMatrix) -> Result<Vec<Ket>> {
    let cols: Vec<Ket> = (0..m.cols()).map(|j| m.column(j)).collect();
    // Columns of a PSD matrix can have very uneven norms; scale each to unit
    // length before rank detection so the pivot threshold acts on direction.
    let scaled: Vec<Ket> = cols
        .into_iter()
        .filter(|c| c.norm() > PIVOT)
        .map(|c| c.normalized())
        .collect::<Result<_>>()?;
    orthonormal_span(&scaled)
}

/// One invariant subspace from Jordan's lemma: dimension 1 or 2.
#[derive(Debug, Clone)]
pub struct JordanBlock {
    basis: Vec<Ket>,
}

impl JordanBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Ket] {
        &self.basis
    }
}

/// Decompose the space into subspaces of dimension at most 2 that are
/// invariant under both projectors `p` and `q`.
///
/// The construction diagonalizes the restriction of `q` to `ran(p)`: an
/// eigenvector `u` with eigenvalue strictly between 0 and 1 pairs with
/// `(q - c²)u` into a two-dimensional block, eigenvalues 0 and 1 give
/// one-dimensional blocks, and whatever remains lies in `ker(p)` where `q`
/// restricts to a projector and splits into one-dimensional eigenspaces.
pub fn jordan_blocks(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<Vec<JordanBlock>> {
    for m in [p, q] {
        let res = m.projector_residual();
        if res > TOL_HERM {
            return Err(Error::NotProjector(res));
        }
    }
    if p.rows() != q.rows() {
        return Err(Error::DimensionMismatch("projectors act on different spaces".into()));
    }
    let dim = p.rows();
    let split_tol = 1e-12;

    let range_p = psd_range(p)?;
    let mut blocks: Vec<JordanBlock> = Vec::new();

    if !range_p.is_empty() {
        let r = range_p.len();
        // Restriction of q to ran(p).
        let mut m = ComplexMatrix::zeros(r, r);
        for i in 0..r {
            let qj = q.apply(&range_p[i]);
            for k in 0..r {
                m.set(k, i, range_p[k].inner(&qj));
            }
        }
        let (vals, vecs) = hermitian_eigen(&m)?;
        for (c2, w) in vals.iter().zip(vecs.iter()) {
            // Lift the eigenvector back to the ambient space.
            let mut u = Ket::basis_state(dim, 0).scale(c64(0.0, 0.0));
            for (k, b) in range_p.iter().enumerate() {
                u = u.add(&b.scale(w.get(k)));
            }
            let u = u.normalized()?;
            if *c2 >= 1.0 - split_tol || *c2 <= split_tol {
                blocks.push(JordanBlock { basis: vec![u] });
            } else {
                let qu = q.apply(&u);
                let w = qu.sub(&u.scale(c64(*c2, 0.0)));
                let w = w.normalized()?;
                blocks.push(JordanBlock { basis: vec![u, w] });
            }
        }
    }

    // Leftover: orthogonal complement of everything collected so far. It is
    // invariant under both projectors (p annihilates it) and q restricts to a
    // projector there, so its eigenvectors give one-dimensional blocks.
    let collected: Vec<Ket> = blocks.iter().flat_map(|b| b.basis.clone()).collect();
    let leftover = null_space_in_dim(&collected, dim)?;
    if !leftover.is_empty() {
        let l = leftover.len();
        let mut m = ComplexMatrix::zeros(l, l);
        for i in 0..l {
            let qj = q.apply(&leftover[i]);
            for k in 0..l {
                m.set(k, i, leftover[k].inner(&qj));
            }
        }
        let (_, vecs) = hermitian_eigen(&m)?;
        for w in vecs {
            let mut u = Ket::basis_state(dim, 0).scale(c64(0.0, 0.0));
            for (k, b) in leftover.iter().enumerate() {
                u = u.add(&b.scale(w.get(k)));
            }
            blocks.push(JordanBlock { basis: vec![u.normalized()?] });
        }
    }
    Ok(blocks)
}

/// Residual of block-diagonality: ‖Σ_i B_i M B_i − M‖ where B_i projects onto
/// the i-th block.
pub fn block_diagonal_residual(m: &ComplexMatrix, blocks: &[JordanBlock]) -> Result<f64> {
    let mut sum = ComplexMatrix::zeros(m.rows(), m.cols());
    for b in blocks {
        let pb = crate::numerics::matrix::projector_onto_span(b.basis())?;
        sum = sum.add(&pb.mul(m).mul(&pb));
    }
    Ok(sum.sub(m).frobenius_norm())
}

/// Largest value of 〈ψ|objective|ψ〉 over unit vectors ψ lying in the joint
/// kernel of the positive semidefinite `zero_ops`, together with a maximizer.
///
/// Returns `None` when the joint kernel is trivial. Vectors in the kernel
/// make every zero-operator expectation vanish identically, which is how the
/// equality constraints of a Hardy-type argument are enforced exactly.
pub fn max_expectation_on_kernel(
    objective: &ComplexMatrix,
    zero_ops: &[ComplexMatrix],
) -> Result<Option<(f64, Ket)>> {
    let mut forbidden: Vec<Ket> = Vec::new();
    for z in zero_ops {
        forbidden.extend(psd_range(z)?);
    }
    max_expectation_orthogonal_to(objective, &forbidden)
}

/// Largest value of 〈ψ|objective|ψ〉 over unit ψ orthogonal to all
/// `forbidden` kets: the top eigenpair of the objective restricted to the
/// orthogonal complement.
pub fn max_expectation_orthogonal_to(
    objective: &ComplexMatrix,
    forbidden: &[Ket],
) -> Result<Option<(f64, Ket)>> {
    let dim = objective.rows();
    let kernel = null_space_in_dim(forbidden, dim)?;
    if kernel.is_empty() {
        return Ok(None);
    }
    let k = kernel.len();
    let mut m = ComplexMatrix::zeros(k, k);
    for j in 0..k {
        let oj = objective.apply(&kernel[j]);
        for i in 0..k {
            m.set(i, j, kernel[i].inner(&oj));
        }
    }
    let (vals, vecs) = hermitian_eigen(&m)?;
    let mut best = Ket::basis_state(dim, 0).scale(c64(0.0, 0.0));
    for (i, b) in kernel.iter().enumerate() {
        best = best.add(&b.scale(vecs[0].get(i)));
    }
    Ok(Some((vals[0], best.normalized()?)))
}

/// Specialization of [`max_expectation_on_kernel`] for a rank-one objective
/// |t〉〈t| with the kernel described by a list of forbidden kets: the optimum
/// is the squared norm of the projection of `t` onto the kernel.
pub fn max_overlap_orthogonal_to(target: &Ket, forbidden: &[Ket]) -> Result<Option<(f64, Ket)>> {
    let kernel = null_space_in_dim(forbidden, target.dim())?;
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut proj = Ket::basis_state(target.dim(), 0).scale(c64(0.0, 0.0));
    for b in &kernel {
        proj = proj.add(&b.scale(b.inner(target)));
    }
    let value = proj.norm_sqr();
    let state = if value > 1e-28 { proj.normalized()? } else { kernel[0].clone() };
    Ok(Some((value, state)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::projector;

    fn rand_ket(dim: usize, seed: &mut u64) -> Ket {
        let mut next = || {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((*seed >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        Ket::new((0..dim).map(|_| c64(next(), next())).collect())
            .unwrap()
            .normalized()
            .unwrap()
    }

    #[test]
    fn null_space_of_three_basis_vectors() {
        let vs: Vec<Ket> = (0..3).map(|i| Ket::basis_state(4, i)).collect();
        let ns = null_space(&vs).unwrap();
        assert_eq!(ns.len(), 1);
        assert!((ns[0].overlap_sqr(&Ket::basis_state(4, 3)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_space_of_full_span_is_empty() {
        let vs = vec![
            Ket::from_real(&[1.0, 0.0]).unwrap(),
            Ket::from_real(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap(),
        ];
        assert!(null_space(&vs).unwrap().is_empty());
    }

    #[test]
    fn null_space_orthogonality_oracle() {
        // Three independent random kets in C^4 leave a single orthogonal ket.
        let mut seed = 7u64;
        let vs: Vec<Ket> = (0..3).map(|_| rand_ket(4, &mut seed)).collect();
        let ns = null_space(&vs).unwrap();
        assert_eq!(ns.len(), 1);
        for v in &vs {
            assert!(v.inner(&ns[0]).norm() < 1e-10);
        }
    }

    #[test]
    fn rank_plus_nullity_is_dimension() {
        let mut seed = 99u64;
        for n_inputs in 1..6 {
            let vs: Vec<Ket> = (0..n_inputs).map(|_| rand_ket(5, &mut seed)).collect();
            let r = rank(&vs).unwrap();
            let ns = null_space(&vs).unwrap();
            assert_eq!(r + ns.len(), 5);
        }
    }

    #[test]
    fn jordan_commuting_projectors_give_one_dim_blocks() {
        let p = projector(&Ket::basis_state(2, 0)).unwrap();
        let blocks = jordan_blocks(&p, &p).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.dim() == 1));
    }

    #[test]
    fn jordan_tilted_pair_gives_one_two_dim_block() {
        let p = projector(&Ket::basis_state(2, 0)).unwrap();
        let plus = Ket::from_real(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap();
        let q = projector(&plus).unwrap();
        let blocks = jordan_blocks(&p, &q).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim(), 2);
    }

    #[test]
    fn jordan_random_rank_two_projectors_on_c4() {
        let mut seed = 1234u64;
        for _ in 0..20 {
            let (a, b) = (rand_ket(4, &mut seed), rand_ket(4, &mut seed));
            let frame_p = orthonormal_span(&[a, b]).unwrap();
            let (c, d) = (rand_ket(4, &mut seed), rand_ket(4, &mut seed));
            let frame_q = orthonormal_span(&[c, d]).unwrap();
            let p = crate::numerics::matrix::projector_onto_span(&frame_p).unwrap();
            let q = crate::numerics::matrix::projector_onto_span(&frame_q).unwrap();
            let blocks = jordan_blocks(&p, &q).unwrap();
            let total: usize = blocks.iter().map(JordanBlock::dim).sum();
            assert_eq!(total, 4);
            assert!(blocks.iter().all(|b| b.dim() <= 2));
            assert!(block_diagonal_residual(&p, &blocks).unwrap() < 1e-10);
            assert!(block_diagonal_residual(&q, &blocks).unwrap() < 1e-10);
        }
    }

    #[test]
    fn jordan_rejects_non_projector() {
        let m = ComplexMatrix::new(2, 2, vec![c64(0.5, 0.0), c64(0.4, 0.0), c64(0.4, 0.0), c64(0.5, 0.0)])
            .unwrap();
        // Hermitian but not idempotent.
        assert!(matches!(jordan_blocks(&m, &m), Err(Error::NotProjector(_))));
    }

    #[test]
    fn constrained_overlap_matches_projection() {
        let target = Ket::from_real(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        let forbidden = vec![Ket::basis_state(4, 0)];
        let (value, state) = max_overlap_orthogonal_to(&target, &forbidden)
            .unwrap()
            .unwrap();
        assert!((value - 0.75).abs() < 1e-12);
        assert!(state.inner(&forbidden[0]).norm() < 1e-12);
    }
}
