use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::Range;

use super::quiver::{PathWord, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldElem};

/// Path spaces larger than this are refused.
const MAX_PATH_SPACE: usize = 50_000;

/// An element of the algebra in normal-form coordinates (length = `dim A`).
pub type AlgElem = Vec<FieldElem>;

/// The truncated path space `kQ_{≤ cap}` together with an echelon basis of
/// the ideal inside it. Columns are ordered longest path first, so pivots
/// land on long paths and the surviving normal forms are short.
#[derive(Clone, Debug)]
struct PathSpace {
    paths: Vec<PathWord>,
    index: HashMap<(usize, Vec<usize>), usize>,
    ideal: BTreeMap<usize, Vec<FieldElem>>,
}

impl PathSpace {
    fn enumerate(q: &Quiver, cap: usize) -> Result<Self> {
        let mut paths: Vec<PathWord> = (0..q.vertex_count()).map(PathWord::trivial).collect();
        let mut frontier = paths.clone();
        for _ in 0..cap {
            let mut next = Vec::new();
            for p in &frontier {
                for a in q.out_arrows(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(PathWord {
                        source: p.source,
                        target: q.arrow(a).target,
                        arrows,
                    });
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > MAX_PATH_SPACE {
                return Err(Error::BudgetExceeded(format!(
                    "more than {MAX_PATH_SPACE} paths of length ≤ {cap}"
                )));
            }
            frontier = next;
        }
        paths.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| b.arrows.cmp(&a.arrows))
                .then_with(|| b.source.cmp(&a.source))
        });
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        Ok(Self {
            paths,
            index,
            ideal: BTreeMap::new(),
        })
    }

    fn col(&self, p: &PathWord) -> Option<usize> {
        self.index.get(&(p.source, p.arrows.clone())).copied()
    }

    fn vector(&self, field: Field, terms: &[(FieldElem, PathWord)]) -> Vec<FieldElem> {
        let mut v = vec![0; self.paths.len()];
        for (c, u) in terms {
            if let Some(i) = self.col(u) {
                v[i] = field.add(v[i], *c);
            }
        }
        v
    }

    fn reduce(&self, field: Field, v: &mut [FieldElem]) {
        for (&pivot, row) in &self.ideal {
            let c = v[pivot];
            if c == 0 {
                continue;
            }
            let neg = field.neg(c);
            for (j, &r) in row.iter().enumerate().skip(pivot) {
                if r != 0 {
                    v[j] = field.mul_add(v[j], neg, r);
                }
            }
        }
    }

    /// Adds `v` to the ideal span; returns the reduced vector if it was new.
    fn insert(&mut self, field: Field, mut v: Vec<FieldElem>) -> Option<Vec<FieldElem>> {
        self.reduce(field, &mut v);
        let pivot = v.iter().position(|&x| x != 0)?;
        let inv = field.inv(v[pivot]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.ideal.insert(pivot, v.clone());
        Some(v)
    }

    /// Left-multiplies (`left = true`) or right-multiplies a vector by an arrow.
    fn times_arrow(&self, q: &Quiver, v: &[FieldElem], arrow: usize, left: bool) -> Vec<FieldElem> {
        let mut out = vec![0; v.len()];
        let a = q.arrow(arrow);
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = &self.paths[i];
            let mut arrows;
            let key = if left {
                if a.target != p.source {
                    continue;
                }
                arrows = vec![arrow];
                arrows.extend_from_slice(&p.arrows);
                (a.source, arrows)
            } else {
                if p.target != a.source {
                    continue;
                }
                arrows = p.arrows.clone();
                arrows.push(arrow);
                (p.source, arrows)
            };
            if let Some(&j) = self.index.get(&key) {
                out[j] = c;
            }
        }
        out
    }
}

/// A finite-dimensional bound quiver algebra with an explicit normal-form
/// basis and structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    pres: Presentation,
    basis: Vec<PathWord>,
    corners: Vec<Range<usize>>,
    mult: Vec<Vec<(usize, FieldElem)>>,
    space: PathSpace,
    path_to_basis: Vec<Option<usize>>,
}

impl Algebra {
    pub fn build(pres: Presentation) -> Result<Self> {
        let q = &pres.quiver;
        let field = pres.field;
        let cap = pres.length_cap.max(1);
        if !q.is_connected() {
            return Err(Error::NotConnected);
        }
        let mut space = PathSpace::enumerate(q, cap)?;

        let mut queue: VecDeque<Vec<FieldElem>> = pres
            .relations
            .iter()
            .map(|r| space.vector(field, &r.terms))
            .collect();
        while let Some(v) = queue.pop_front() {
            if let Some(added) = space.insert(field, v) {
                for a in 0..q.arrows().len() {
                    for left in [true, false] {
                        let w = space.times_arrow(q, &added, a, left);
                        if w.iter().any(|&x| x != 0) {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }

        // admissibility: every path of length `cap` lies in the ideal
        for p in space.paths.iter().filter(|p| p.len() == cap) {
            let mut v = space.vector(field, &[(1, p.clone())]);
            space.reduce(field, &mut v);
            if v.iter().any(|&x| x != 0) {
                return Err(Error::NotAdmissible {
                    cap,
                    detail: format!("path {} survives", p.label(q)),
                });
            }
        }

        let mut basis: Vec<PathWord> = space
            .paths
            .iter()
            .enumerate()
            .filter(|(i, _)| !space.ideal.contains_key(i))
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort_by(|a, b| {
            (a.source, a.target, a.len(), &a.arrows).cmp(&(b.source, b.target, b.len(), &b.arrows))
        });
        let n = q.vertex_count();
        let mut corners = vec![0..0; n * n];
        let mut start = 0;
        for a in 0..n {
            for b in 0..n {
                let end = start
                    + basis[start..]
                        .iter()
                        .take_while(|p| p.source == a && p.target == b)
                        .count();
                corners[a * n + b] = start..end;
                start = end;
            }
        }
        let mut path_to_basis = vec![None; space.paths.len()];
        for (i, p) in basis.iter().enumerate() {
            path_to_basis[space.col(p).expect("basis path is enumerated")] = Some(i);
        }

        let mut alg = Self {
            pres,
            basis,
            corners,
            mult: Vec::new(),
            space,
            path_to_basis,
        };
        let d = alg.basis.len();
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = match alg.basis[i].concat(&alg.basis[j]) {
                    Some(p) => sparse(&alg.reduce_path(&p)),
                    None => Vec::new(),
                };
                mult.push(prod);
            }
        }
        alg.mult = mult;
        Ok(alg)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn quiver(&self) -> &Quiver {
        &self.pres.quiver
    }

    pub fn field(&self) -> Field {
        self.pres.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.pres.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> String {
        self.basis[i].label(self.quiver())
    }

    /// Index range of the basis of `e_a A e_b` (paths from `a` to `b`).
    pub fn corner(&self, a: usize, b: usize) -> Range<usize> {
        self.corners[a * self.vertex_count() + b].clone()
    }

    pub fn corner_dim(&self, a: usize, b: usize) -> usize {
        self.corner(a, b).len()
    }

    pub fn corner_basis(&self, a: usize, b: usize) -> &[PathWord] {
        &self.basis[self.corner(a, b)]
    }

    /// Basis indices of `e_a A`, i.e. of the indecomposable projective `P_a`.
    pub fn projective_range(&self, a: usize) -> Range<usize> {
        let n = self.vertex_count();
        self.corners[a * n].start..self.corners[a * n + n - 1].end
    }

    pub fn projective_dim(&self, a: usize) -> usize {
        self.projective_range(a).len()
    }

    /// Basis indices of `A e_b`.
    pub fn injective_dim(&self, b: usize) -> usize {
        (0..self.vertex_count()).map(|a| self.corner_dim(a, b)).sum()
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        // the trivial path sorts first in its corner
        let r = self.corner(v, v);
        debug_assert!(self.basis[r.start].is_trivial());
        r.start
    }

    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_trivial()).collect()
    }

    pub fn zero(&self) -> AlgElem {
        vec![0; self.dim()]
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn idempotent(&self, v: usize) -> AlgElem {
        self.basis_elem(self.trivial_index(v))
    }

    pub fn one(&self) -> AlgElem {
        let mut v = self.zero();
        for a in 0..self.vertex_count() {
            v[self.trivial_index(a)] = 1;
        }
        v
    }

    /// Sparse product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, FieldElem)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> AlgElem {
        let f = self.field();
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.mul_basis(i, j) {
                    out[k] = f.mul_add(out[k], ab, c);
                }
            }
        }
        out
    }

    /// `x += c * y`
    pub fn add_scaled(&self, x: &mut [FieldElem], y: &[FieldElem], c: FieldElem) {
        let f = self.field();
        for (a, &b) in x.iter_mut().zip(y) {
            *a = f.mul_add(*a, b, c);
        }
    }

    /// Normal form of a single path; paths longer than the cap are zero.
    pub fn reduce_path(&self, p: &PathWord) -> AlgElem {
        self.reduce_terms(&[(1, p.clone())])
    }

    pub fn reduce_terms(&self, terms: &[(FieldElem, PathWord)]) -> AlgElem {
        let f = self.field();
        let mut v = self.space.vector(f, terms);
        self.space.reduce(f, &mut v);
        let mut out = self.zero();
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let b = self.path_to_basis[i].expect("reduced vector is supported on normal forms");
                out[b] = c;
            }
        }
        out
    }

    pub fn in_ideal(&self, terms: &[(FieldElem, PathWord)]) -> bool {
        self.reduce_terms(terms).iter().all(|&c| c == 0)
    }

    pub fn relation_in_ideal(&self, r: &Relation) -> bool {
        self.in_ideal(&r.terms)
    }

    /// Coefficient of the trivial path `e_v` in `x`.
    pub fn trivial_coeff(&self, x: &[FieldElem], v: usize) -> FieldElem {
        x[self.trivial_index(v)]
    }

    pub fn is_radical(&self, x: &[FieldElem]) -> bool {
        (0..self.vertex_count()).all(|v| self.trivial_coeff(x, v) == 0)
    }

    /// Whether `x` is supported in the corner `e_a A e_b`.
    pub fn in_corner(&self, x: &[FieldElem], a: usize, b: usize) -> bool {
        let r = self.corner(a, b);
        x.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || r.contains(&i))
    }

    /// Element from corner coordinates.
    pub fn from_corner(&self, a: usize, b: usize, coeffs: &[FieldElem]) -> Result<AlgElem> {
        let r = self.corner(a, b);
        if coeffs.len() != r.len() {
            return Err(Error::DimensionMismatch(format!(
                "corner ({}, {}) has dimension {}, got {} coefficients",
                self.quiver().vertex_id(a),
                self.quiver().vertex_id(b),
                r.len(),
                coeffs.len()
            )));
        }
        let mut v = self.zero();
        for (i, &c) in r.zip(coeffs) {
            v[i] = c % self.field().p();
        }
        Ok(v)
    }

    pub fn to_corner(&self, x: &[FieldElem], a: usize, b: usize) -> Vec<FieldElem> {
        x[self.corner(a, b)].to_vec()
    }

    /// Inverse of a unit of the local ring `e_v A e_v`.
    pub fn corner_inverse(&self, x: &[FieldElem], v: usize) -> Option<AlgElem> {
        let f = self.field();
        let c = self.trivial_coeff(x, v);
        if c == 0 || !self.in_corner(x, v, v) {
            return None;
        }
        // x = c(e - n) with n nilpotent, so x^{-1} = c^{-1} Σ n^k
        let cinv = f.inv(c);
        let e = self.idempotent(v);
        let mut n = e.clone();
        self.add_scaled(&mut n, x, f.neg(cinv));
        let mut sum = e.clone();
        let mut power = e;
        for _ in 0..self.dim() {
            power = self.mul(&power, &n);
            if power.iter().all(|&z| z == 0) {
                break;
            }
            self.add_scaled(&mut sum, &power, 1);
        }
        Some(sum.into_iter().map(|z| f.mul(z, cinv)).collect())
    }

    /// Checks `(xy)z = x(yz)` on every basis triple.
    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_elem_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_elem(k));
                    let jk = self.basis_elem_product(j, k);
                    let right = self.mul(&self.basis_elem(i), &jk);
                    if left != right {
                        return Err(Error::InvariantViolation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.label(i),
                            self.label(j),
                            self.label(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn basis_elem_product(&self, i: usize, j: usize) -> AlgElem {
        let mut v = self.zero();
        for &(k, c) in self.mul_basis(i, j) {
            v[k] = c;
        }
        v
    }

    /// Human-readable rendering of an element.
    pub fn format_elem(&self, x: &[FieldElem]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.label(i)
                } else {
                    format!("{}·{}", c, self.label(i))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn sparse(v: &[FieldElem]) -> Vec<(usize, FieldElem)> {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn loop_with_square_zero() {
        let alg = Algebra::build(fixtures::l2()).unwrap();
        assert_eq!(alg.dim(), 2);
        let labels: Vec<_> = (0..2).map(|i| alg.label(i)).collect();
        assert_eq!(labels, ["e_v", "alpha"]);
        assert_eq!(alg.radical_basis(), vec![1]);
        alg.check_associativity().unwrap();
    }

    #[test]
    fn a2_and_kronecker_dims() {
        let a2 = Algebra::build(fixtures::a2()).unwrap();
        assert_eq!(a2.dim(), 3);
        assert_eq!(a2.corner_dim(1, 0), 0);
        assert_eq!(a2.corner_dim(0, 1), 1);
        let k = Algebra::build(fixtures::kronecker()).unwrap();
        assert_eq!(k.dim(), 4);
        let labels: Vec<_> = k.corner(0, 1).map(|i| k.label(i)).collect();
        assert_eq!(labels, ["a", "b"]);
    }

    #[test]
    fn commutative_square_identifies_paths() {
        let sq = Algebra::build(fixtures::square_commutative()).unwrap();
        // e1..e4, a, b, c, d, one length-2 path
        assert_eq!(sq.dim(), 9);
        assert_eq!(sq.corner_dim(0, 3), 1);
        let q = sq.quiver();
        let ab = sq.reduce_path(&q.path(&["a", "b"]).unwrap());
        let cd = sq.reduce_path(&q.path(&["c", "d"]).unwrap());
        assert_eq!(ab, cd);
        sq.check_associativity().unwrap();
        let sq0 = Algebra::build(fixtures::square_free()).unwrap();
        assert_eq!(sq0.dim(), 10);
    }

    #[test]
    fn rejects_non_admissible_and_disconnected() {
        let q = Quiver::new(["v"], vec![("x".into(), "v".into(), "v".into())]).unwrap();
        let free_loop = Presentation::new(q, vec![], Field::new(7).unwrap());
        assert!(matches!(Algebra::build(free_loop), Err(Error::NotAdmissible { .. })));
        let q = Quiver::new(["1", "2"], Vec::new()).unwrap();
        let disc = Presentation::new(q, vec![], Field::new(7).unwrap());
        assert!(matches!(Algebra::build(disc), Err(Error::NotConnected)));
    }

    #[test]
    fn corner_inverse_in_truncated_polynomials() {
        let alg = Algebra::build(fixtures::truncated_polynomial(3)).unwrap();
        let f = alg.field();
        // u = 2 + x + x^2
        let u = vec![2, 1, 1];
        let inv = alg.corner_inverse(&u, 0).unwrap();
        assert_eq!(alg.mul(&u, &inv), alg.one());
        assert!(alg.corner_inverse(&[0, 1, 0], 0).is_none());
        assert_eq!(f.p(), 101);
    }
}
