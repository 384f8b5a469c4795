use super::complex::{check_square_zero, ProjComplex};
use super::invariants::cohomology;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// Removes contractible summands `P_v --unit--> P_v` by Gaussian
/// elimination until every differential entry lies in the radical.
pub fn minimize(alg: &Algebra, y: &ProjComplex) -> Result<ProjComplex> {
    check_square_zero(alg, y)?;
    let before = cohomology(alg, y).h;
    let mut x = y.clone();
    while let Some((i, k, l)) = find_unit(alg, &x) {
        x = eliminate(alg, &x, i, k, l);
    }
    let after = cohomology(alg, &x).h;
    if before != after {
        return Err(Error::InvariantViolation(format!(
            "minimization changed cohomology from {before:?} to {after:?}"
        )));
    }
    Ok(x)
}

fn find_unit(alg: &Algebra, x: &ProjComplex) -> Option<(usize, usize, usize)> {
    x.diffs()
        .iter()
        .enumerate()
        .find_map(|(i, d)| d.first_unit_entry(alg).map(|(k, l)| (i, k, l)))
}

/// Eliminates the unit entry `c = d^i(k, l)`: the new `d^i` is
/// `δ − γ c⁻¹ β` on the remaining summands, neighbours are restricted.
fn eliminate(alg: &Algebra, x: &ProjComplex, i: usize, k: usize, l: usize) -> ProjComplex {
    let m = x.m();
    let d = x.diff(i);
    let v = d.src()[k];
    let cinv = alg.corner_inverse(d.entry(k, l), v).expect("unit entry");
    let keep_src: Vec<usize> = (0..d.src().len()).filter(|&a| a != k).collect();
    let keep_tgt: Vec<usize> = (0..d.tgt().len()).filter(|&b| b != l).collect();

    let mut new_d = d.restrict(&keep_src, &keep_tgt);
    for (a, &ka) in keep_src.iter().enumerate() {
        let gamma = d.entry(ka, l);
        if gamma.iter().all(|&c| c == 0) {
            continue;
        }
        let cg = alg.mul(&cinv, gamma);
        for (b, &lb) in keep_tgt.iter().enumerate() {
            let beta = d.entry(k, lb);
            if beta.iter().all(|&c| c == 0) {
                continue;
            }
            let mut e = new_d.entry(a, b).to_vec();
            alg.add_scaled(&mut e, &alg.mul(beta, &cg), alg.field().neg(1));
            new_d.set(a, b, e);
        }
    }

    let mut mults = x.terms().to_vec();
    mults[i] = keep_src.iter().map(|&a| d.src()[a]).collect();
    mults[i + 1] = keep_tgt.iter().map(|&b| d.tgt()[b]).collect();
    let mut diffs = x.diffs().to_vec();
    diffs[i] = new_d;
    if i > 0 {
        let prev = x.diff(i - 1);
        let all: Vec<usize> = (0..prev.src().len()).collect();
        diffs[i - 1] = prev.restrict(&all, &keep_src);
    }
    if i + 1 < m {
        let next = x.diff(i + 1);
        let all: Vec<usize> = (0..next.tgt().len()).collect();
        diffs[i + 1] = next.restrict(&keep_tgt, &all);
    }
    debug_assert!(diffs.iter().enumerate().all(|(j, d)| d.src() == mults[j].as_slice()));
    ProjComplex::from_parts_unchecked(m, mults, diffs)
}
