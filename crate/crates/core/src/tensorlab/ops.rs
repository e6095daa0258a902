use super::{ComplexMatrix, DensityMatrix, Label, MultipartiteShape};
use crate::error::{invalid, Result};

fn check_dims(m: &ComplexMatrix, shape: &MultipartiteShape) -> Result<()> {
    let d = shape.dim();
    if m.rows() != d || m.cols() != d {
        return invalid(format!(
            "matrix is {}x{} but shape {shape} has dimension {d}",
            m.rows(),
            m.cols()
        ));
    }
    Ok(())
}

/// Reorders tensor factors so that they follow `perm`.
///
/// Entry `(r, c)` of the result is the entry of `m` at the basis states that
/// carry the same per-label digits.
pub fn permute_subsystems(
    m: &ComplexMatrix,
    shape: &MultipartiteShape,
    perm: &[Label],
) -> Result<ComplexMatrix> {
    check_dims(m, shape)?;
    let target = shape.permuted(perm)?;
    let old_pos = shape.positions_of(perm)?;
    let old_strides = shape.strides();
    let d = shape.dim();
    let map: Vec<usize> = (0..d)
        .map(|new| {
            target
                .digits(new)
                .iter()
                .zip(&old_pos)
                .map(|(&digit, &p)| digit * old_strides[p])
                .sum()
        })
        .collect();
    Ok(ComplexMatrix::from_fn(d, d, |r, c| m[(map[r], map[c])]))
}

/// Splits every basis index into the part carried by `subset` and the rest.
fn split_indices(shape: &MultipartiteShape, subset: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let strides = shape.strides();
    let d = shape.dim();
    let mut sub = vec![0; d];
    let mut rest = vec![0; d];
    for i in 0..d {
        let digits = shape.digits(i);
        let s: usize = subset.iter().map(|&p| digits[p] * strides[p]).sum();
        sub[i] = s;
        rest[i] = i - s;
    }
    (sub, rest)
}

/// Partial trace of a raw matrix; returns the reduced matrix and its shape.
/// Kept factors retain their order in `shape`.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    shape: &MultipartiteShape,
    keep: &[Label],
) -> Result<(ComplexMatrix, MultipartiteShape)> {
    check_dims(m, shape)?;
    if keep.is_empty() {
        return invalid("partial trace must keep at least one subsystem");
    }
    let kept_shape = shape.restricted(keep)?;
    let kept_pos: Vec<usize> = kept_shape
        .labels()
        .iter()
        .map(|&l| shape.position(l).unwrap())
        .collect();
    let traced_pos: Vec<usize> = (0..shape.len()).filter(|p| !kept_pos.contains(p)).collect();
    let traced_shape =
        MultipartiteShape::new(traced_pos.iter().map(|&p| shape.factors()[p]).collect())?;
    let strides = shape.strides();

    let offsets = |pos: &[usize], sub: &MultipartiteShape| -> Vec<usize> {
        (0..sub.dim())
            .map(|i| {
                sub.digits(i)
                    .iter()
                    .zip(pos)
                    .map(|(&dg, &p)| dg * strides[p])
                    .sum()
            })
            .collect()
    };
    let kept_off = offsets(&kept_pos, &kept_shape);
    let traced_off = offsets(&traced_pos, &traced_shape);

    let dk = kept_shape.dim();
    let out = ComplexMatrix::from_fn(dk, dk, |r, c| {
        traced_off
            .iter()
            .map(|&t| m[(kept_off[r] + t, kept_off[c] + t)])
            .sum()
    });
    Ok((out, kept_shape))
}

/// Reduced state on `keep`, in the input's factor order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Label]) -> Result<DensityMatrix> {
    let (m, shape) = partial_trace_matrix(rho.matrix(), rho.shape(), keep)?;
    Ok(DensityMatrix::from_trusted(m.hermitian_part(), shape))
}

/// Transposes the indices of the factors in `subset`, leaving the others alone.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    shape: &MultipartiteShape,
    subset: &[Label],
) -> Result<ComplexMatrix> {
    check_dims(m, shape)?;
    let pos = shape.positions_of(subset)?;
    let (sub, rest) = split_indices(shape, &pos);
    let d = shape.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            out[(rest[r] + sub[c], rest[c] + sub[r])] = m[(r, c)];
        }
    }
    Ok(out)
}

pub fn partial_transpose(rho: &DensityMatrix, subset: &[Label]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.shape(), subset)
}
