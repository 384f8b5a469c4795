//! Locality and Fitting tests for algebras of square matrices.

use super::field::{Field, FieldElem};
use super::mat::{span_basis, Mat};

/// How a single endomorphism behaves under Fitting's lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FittingKind {
    Nilpotent,
    Invertible,
    /// `φ^n` is neither zero nor invertible: ker φ^n ⊕ im φ^n is a proper splitting.
    Splits { stable_rank: usize },
}

pub fn fitting_kind(phi: &Mat) -> FittingKind {
    let n = phi.rows();
    if n == 0 {
        return FittingKind::Nilpotent;
    }
    let stable = phi.pow(n as u64);
    let r = stable.rank();
    if r == 0 {
        FittingKind::Nilpotent
    } else if r == n {
        FittingKind::Invertible
    } else {
        FittingKind::Splits { stable_rank: r }
    }
}

/// Largest field size for which [`splitting_shift`] scans every eigenvalue.
pub const EIGENVALUE_SCAN_LIMIT: u32 = 1 << 16;

/// Some `λ` for which `φ − λ` splits under Fitting's lemma. Scans `F_p`
/// when `p` is at most [`EIGENVALUE_SCAN_LIMIT`], otherwise tries `λ = 0`.
pub fn splitting_shift(phi: &Mat) -> Option<FieldElem> {
    let f = phi.field();
    let n = phi.rows();
    let candidates: Box<dyn Iterator<Item = FieldElem>> = if f.p() <= EIGENVALUE_SCAN_LIMIT {
        Box::new(f.elements())
    } else {
        Box::new(std::iter::once(0))
    };
    for lambda in candidates {
        let shifted = phi.sub(&Mat::scalar(f, n, lambda));
        if shifted.determinant() != 0 {
            continue;
        }
        if let FittingKind::Splits { .. } = fitting_kind(&shifted) {
            return Some(lambda);
        }
    }
    None
}

/// The unique `λ` with `m - λ·1` nilpotent, if one exists.
pub fn scalar_part(m: &Mat) -> Option<FieldElem> {
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Some(0);
    }
    let trace = (0..n).fold(0, |acc, i| f.add(acc, m.get(i, i)));
    let shifted = |lambda: FieldElem| m.sub(&Mat::scalar(f, n, lambda));
    if (n as u64) % f.p() as u64 != 0 {
        let lambda = f.div(trace, f.from_i64(n as i64));
        return shifted(lambda).is_nilpotent().then_some(lambda);
    }
    f.elements().find(|&lambda| shifted(lambda).is_nilpotent())
}

/// Decides whether the algebra generated (as a vector space, together with
/// the identity) by `spanning` is local with residue field F_p, i.e. equal
/// to `k·1 ⊕ N` with `N` a nilpotent ideal.
///
/// `spanning` must span a subalgebra once the identity is added; every
/// element must be `n × n`.
pub fn is_split_local(field: Field, n: usize, spanning: &[Mat]) -> bool {
    if n == 0 {
        return false;
    }
    let mut radical = Vec::with_capacity(spanning.len());
    for m in spanning {
        let Some(lambda) = scalar_part(m) else {
            return false;
        };
        radical.push(m.sub(&Mat::scalar(field, n, lambda)).data().to_vec());
    }
    let dim = n * n;
    let rad = span_basis(field, dim, &radical);
    if rad.is_empty() {
        return true;
    }
    let as_mat = |v: &Vec<FieldElem>| Mat::from_vec(field, n, n, v.clone()).expect("square");
    let rad_mats: Vec<Mat> = rad.iter().map(as_mat).collect();

    // closure: N·N ⊆ N
    let mut products = Vec::new();
    for a in &rad_mats {
        for b in &rad_mats {
            products.push(a.mul(b).data().to_vec());
        }
    }
    let mut joint = rad.clone();
    joint.extend(products.iter().cloned());
    if span_basis(field, dim, &joint).len() != rad.len() {
        return false;
    }

    // nilpotency of the ideal: N ⊋ N² ⊋ ... ⊋ 0
    let mut power = rad_mats.clone();
    let mut last_dim = rad.len();
    loop {
        let mut next = Vec::new();
        for a in &power {
            for b in &rad_mats {
                next.push(a.mul(b).data().to_vec());
            }
        }
        let basis = span_basis(field, dim, &next);
        if basis.is_empty() {
            return true;
        }
        if basis.len() >= last_dim {
            return false;
        }
        last_dim = basis.len();
        power = basis.iter().map(as_mat).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn shift_splits_diagonal_matrices() {
        let f = Field::new(101).unwrap();
        let d = Mat::from_rows(f, &[[3, 0], [0, 5]]).unwrap();
        let lambda = splitting_shift(&d).unwrap();
        assert!(lambda == 3 || lambda == 5);
        assert_eq!(splitting_shift(&Mat::scalar(f, 2, 4)), None);
        let j = Mat::from_rows(f, &[[2, 1], [0, 2]]).unwrap();
        assert_eq!(splitting_shift(&j), None);
    }

    #[test]
    fn truncated_polynomial_ring_is_local() {
        // k[x]/(x^3) acting on itself
        let field = f(5);
        let x = Mat::from_rows(field, &[[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
        let x2 = x.mul(&x);
        assert!(is_split_local(field, 3, &[Mat::identity(field, 3), x, x2]));
    }

    #[test]
    fn diagonal_pair_is_not_local() {
        let field = f(3);
        let e = Mat::from_rows(field, &[[1, 0], [0, 0]]).unwrap();
        assert!(!is_split_local(field, 2, &[Mat::identity(field, 2), e.clone()]));
        assert_eq!(fitting_kind(&e), FittingKind::Splits { stable_rank: 1 });
    }

    #[test]
    fn irreducible_companion_is_not_split_local() {
        // x^2 + 1 is irreducible over F_3: the span is F_9, local but not split.
        let field = f(3);
        let c = Mat::from_rows(field, &[[0, 2], [1, 0]]).unwrap();
        assert!(!is_split_local(field, 2, &[c.clone()]));
        assert_eq!(fitting_kind(&c), FittingKind::Invertible);
    }

    #[test]
    fn full_matrix_algebra_is_not_local() {
        let field = f(2);
        let e12 = Mat::from_rows(field, &[[0, 1], [0, 0]]).unwrap();
        let e21 = e12.transpose();
        assert!(!is_split_local(field, 2, &[e12, e21]));
    }

    #[test]
    fn scalar_part_of_jordan_block() {
        let field = f(101);
        let j = Mat::from_rows(field, &[[7, 1], [0, 7]]).unwrap();
        assert_eq!(scalar_part(&j), Some(7));
        let d = Mat::from_rows(field, &[[1, 0], [0, 2]]).unwrap();
        assert_eq!(scalar_part(&d), None);
    }
}
