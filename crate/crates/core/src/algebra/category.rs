use std::ops::Range;

use serde::Serialize;

use super::basis::Algebra;
use crate::error::{Error, Result};
use crate::exactla::local::is_split_local;
use crate::exactla::{Field, FieldElem, Mat};

/// A finite k-linear category given by hom-space bases and composition
/// constants.
///
/// Basis elements are numbered globally and grouped by hom space; the
/// product of basis elements `i: x → y` and `j: y → z` is `i` *then* `j`,
/// matching path concatenation.
#[derive(Clone, Debug)]
pub struct BoundedCategory {
    field: Field,
    objects: Vec<String>,
    labels: Vec<String>,
    ends: Vec<(usize, usize)>,
    homs: Vec<Range<usize>>,
    mult: Vec<Vec<(usize, FieldElem)>>,
    identities: Vec<Vec<FieldElem>>,
}

/// Summary of the locally-bounded checks.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CategoryCheck {
    pub objects: usize,
    pub hom_dims: Vec<Vec<usize>>,
    pub local_endomorphisms: bool,
    pub pairwise_non_isomorphic: bool,
    pub associative: bool,
}

impl BoundedCategory {
    /// `basis` lists `(label, source, target)` grouped so that each hom space
    /// is contiguous in `(source, target)` order. `product(i, j)` returns the
    /// product of basis elements when they compose. `identities[x]` is the
    /// identity of `x` in global coordinates.
    pub fn new<F>(
        field: Field,
        objects: Vec<String>,
        basis: Vec<(String, usize, usize)>,
        identities: Vec<Vec<FieldElem>>,
        mut product: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<(usize, FieldElem)>,
    {
        let n = objects.len();
        let d = basis.len();
        let mut homs = vec![0..0; n * n];
        let mut start = 0;
        for x in 0..n {
            for y in 0..n {
                let len = basis[start..]
                    .iter()
                    .take_while(|(_, s, t)| *s == x && *t == y)
                    .count();
                homs[x * n + y] = start..start + len;
                start += len;
            }
        }
        if start != d {
            return Err(Error::InvalidInput("hom bases are not grouped by (source, target)".into()));
        }
        if identities.len() != n || identities.iter().any(|e| e.len() != d) {
            return Err(Error::DimensionMismatch("identity elements".into()));
        }
        let ends: Vec<(usize, usize)> = basis.iter().map(|(_, s, t)| (*s, *t)).collect();
        let labels = basis.into_iter().map(|(l, _, _)| l).collect();
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                if ends[i].1 == ends[j].0 {
                    mult.push(product(i, j));
                } else {
                    mult.push(Vec::new());
                }
            }
        }
        Ok(Self {
            field,
            objects,
            labels,
            ends,
            homs,
            mult,
            identities,
        })
    }

    pub fn from_algebra(alg: &Algebra) -> Self {
        let q = alg.quiver();
        let n = q.vertex_count();
        let basis = alg
            .basis()
            .iter()
            .map(|p| (p.label(q), p.source, p.target))
            .collect();
        let identities = (0..n).map(|v| alg.idempotent(v)).collect();
        Self::new(
            alg.field(),
            q.vertices().to_vec(),
            basis,
            identities,
            |i, j| alg.mul_basis(i, j).to_vec(),
        )
        .expect("algebra basis is grouped by corner")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    pub fn hom(&self, x: usize, y: usize) -> Range<usize> {
        self.homs[x * self.objects.len() + y].clone()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).len()
    }

    pub fn hom_dims(&self) -> Vec<Vec<usize>> {
        let n = self.object_count();
        (0..n).map(|x| (0..n).map(|y| self.hom_dim(x, y)).collect()).collect()
    }

    pub fn identity(&self, x: usize) -> &[FieldElem] {
        &self.identities[x]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, FieldElem)] {
        &self.mult[i * self.dim() + j]
    }

    /// `f` then `g`, both in global coordinates.
    pub fn compose(&self, f: &[FieldElem], g: &[FieldElem]) -> Vec<FieldElem> {
        let fld = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = fld.mul(a, b);
                for &(k, c) in self.mul_basis(i, j) {
                    out[k] = fld.mul_add(out[k], ab, c);
                }
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<FieldElem> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Matrix of `g ↦ f·g` on `End(x)` for each basis element `f` of `End(x)`.
    fn left_regular(&self, x: usize, f: &[FieldElem]) -> Mat {
        let r = self.hom(x, x);
        let columns: Vec<Vec<FieldElem>> = r
            .clone()
            .map(|j| self.compose(f, &self.basis_vec(j))[r.clone()].to_vec())
            .collect();
        Mat::from_columns(self.field, r.len(), &columns)
    }

    pub fn is_local_endomorphism_ring(&self, x: usize) -> bool {
        let r = self.hom(x, x);
        let mats: Vec<Mat> = r
            .clone()
            .map(|i| self.left_regular(x, &self.basis_vec(i)))
            .collect();
        is_split_local(self.field, r.len(), &mats)
    }

    /// Whether `x ≅ y`; valid when `End(x)` is local.
    pub fn objects_isomorphic(&self, x: usize, y: usize) -> bool {
        for i in self.hom(x, y) {
            for j in self.hom(y, x) {
                let fg = self.compose(&self.basis_vec(i), &self.basis_vec(j));
                if self.left_regular(x, &fg).is_invertible() {
                    return true;
                }
            }
        }
        false
    }

    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.ends[i].1 != self.ends[j].0 {
                    continue;
                }
                let ij = self.compose(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..d {
                    if self.ends[j].1 != self.ends[k].0 {
                        continue;
                    }
                    let left = self.compose(&ij, &self.basis_vec(k));
                    let jk = self.compose(&self.basis_vec(j), &self.basis_vec(k));
                    let right = self.compose(&self.basis_vec(i), &jk);
                    if left != right {
                        return Err(Error::InvariantViolation(format!(
                            "composition is not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<()> {
        for x in 0..self.object_count() {
            let e = self.identity(x);
            for i in (0..self.object_count()).flat_map(|y| self.hom(x, y)) {
                if self.compose(e, &self.basis_vec(i)) != self.basis_vec(i) {
                    return Err(Error::InvariantViolation(format!(
                        "identity of {} is not a left unit on {}",
                        self.objects[x], self.labels[i]
                    )));
                }
            }
            for i in (0..self.object_count()).flat_map(|y| self.hom(y, x)) {
                if self.compose(&self.basis_vec(i), e) != self.basis_vec(i) {
                    return Err(Error::InvariantViolation(format!(
                        "identity of {} is not a right unit on {}",
                        self.objects[x], self.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Verifies the locally-bounded conditions (restricted to finitely many
    /// objects) together with unit and associativity laws.
    pub fn verify(&self) -> Result<CategoryCheck> {
        self.check_identities()?;
        self.check_associativity()?;
        let n = self.object_count();
        let local = (0..n).all(|x| self.is_local_endomorphism_ring(x));
        if !local {
            return Err(Error::InvariantViolation("an endomorphism ring is not local".into()));
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.objects_isomorphic(x, y) {
                    return Err(Error::InvariantViolation(format!(
                        "objects {} and {} are isomorphic",
                        self.objects[x], self.objects[y]
                    )));
                }
            }
        }
        Ok(CategoryCheck {
            objects: n,
            hom_dims: self.hom_dims(),
            local_endomorphisms: true,
            pairwise_non_isomorphic: true,
            associative: true,
        })
    }
}

impl Algebra {
    pub fn as_bounded_category(&self) -> Result<BoundedCategory> {
        let c = BoundedCategory::from_algebra(self);
        c.verify()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::Algebra;
    use crate::fixtures;

    #[test]
    fn bounded_category_of_small_algebras() {
        let l2 = Algebra::build(fixtures::l2()).unwrap().as_bounded_category().unwrap();
        assert_eq!(l2.object_count(), 1);
        assert_eq!(l2.hom_dim(0, 0), 2);
        assert!(l2.is_local_endomorphism_ring(0));

        let a2 = Algebra::build(fixtures::a2()).unwrap().as_bounded_category().unwrap();
        assert_eq!(a2.hom_dims(), vec![vec![1, 1], vec![0, 1]]);

        let k = Algebra::build(fixtures::kronecker()).unwrap().as_bounded_category().unwrap();
        assert_eq!(k.hom_dims(), vec![vec![1, 2], vec![0, 1]]);
    }
}
