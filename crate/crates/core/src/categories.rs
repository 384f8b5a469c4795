//! Linear functors between bounded categories, restriction and extension
//! along them, the cleaving retraction test, the `A_n^l` family and finite
//! slices of the repetitive category.

use serde::Serialize;

use crate::algebra::{Algebra, BoundedCategory, Presentation};
use crate::complexes::{minimize, ProjComplex, ProjMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldElem, Mat, Solution, DEFAULT_PRIME};
use crate::fixtures;
use crate::modules::Representation;

/// A k-linear functor given on objects and on hom-space bases. `images[i]`
/// is the image of source basis element `i` in target global coordinates.
#[derive(Clone, Debug)]
pub struct LinearFunctor {
    source: BoundedCategory,
    target: BoundedCategory,
    objects: Vec<usize>,
    images: Vec<Vec<FieldElem>>,
}

impl LinearFunctor {
    pub fn new(
        source: BoundedCategory,
        target: BoundedCategory,
        objects: Vec<usize>,
        images: Vec<Vec<FieldElem>>,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::InvalidFunctor("source and target fields differ".into()));
        }
        if objects.len() != source.object_count() {
            return Err(Error::InvalidFunctor("object map has the wrong length".into()));
        }
        if let Some(&o) = objects.iter().find(|&&o| o >= target.object_count()) {
            return Err(Error::InvalidFunctor(format!("object {o} is not in the target")));
        }
        if images.len() != source.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::InvalidFunctor("hom images have the wrong shape".into()));
        }
        for (i, img) in images.iter().enumerate() {
            let (x, y) = source.ends(i);
            let allowed = target.hom(objects[x], objects[y]);
            if img.iter().enumerate().any(|(k, &c)| c != 0 && !allowed.contains(&k)) {
                return Err(Error::InvalidFunctor(format!(
                    "image of {} leaves hom({}, {})",
                    source.label(i),
                    target.objects()[objects[x]],
                    target.objects()[objects[y]]
                )));
            }
        }
        Ok(Self {
            source,
            target,
            objects,
            images,
        })
    }

    pub fn identity(cat: &BoundedCategory) -> Self {
        let images = (0..cat.dim()).map(|i| cat.basis_vec(i)).collect();
        Self {
            source: cat.clone(),
            target: cat.clone(),
            objects: (0..cat.object_count()).collect(),
            images,
        }
    }

    /// The functor between path categories determined by vertex and arrow
    /// images; basis paths go to the product of their arrow images.
    pub fn from_arrow_images(
        source: &Algebra,
        target: &Algebra,
        objects: Vec<usize>,
        arrows: &[Vec<FieldElem>],
    ) -> Result<Self> {
        let q = source.quiver();
        if arrows.len() != q.arrows().len() {
            return Err(Error::InvalidFunctor("one image per arrow is required".into()));
        }
        if objects.len() != q.vertex_count() || objects.iter().any(|&o| o >= target.vertex_count()) {
            return Err(Error::InvalidFunctor("bad object map".into()));
        }
        for (a, img) in arrows.iter().enumerate() {
            let arr = q.arrow(a);
            if img.len() != target.dim() || !target.in_corner(img, objects[arr.source], objects[arr.target]) {
                return Err(Error::InvalidFunctor(format!("image of arrow {} has the wrong ends", arr.id)));
            }
        }
        let images = source
            .basis()
            .iter()
            .map(|p| {
                p.arrows
                    .iter()
                    .fold(target.idempotent(objects[p.source]), |acc, &a| target.mul(&acc, &arrows[a]))
            })
            .collect();
        Self::new(
            BoundedCategory::from_algebra(source),
            BoundedCategory::from_algebra(target),
            objects,
            images,
        )
    }

    pub fn source(&self) -> &BoundedCategory {
        &self.source
    }

    pub fn target(&self) -> &BoundedCategory {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn image(&self, i: usize) -> &[FieldElem] {
        &self.images[i]
    }

    /// Image of a source element in global coordinates.
    pub fn apply(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        let f = self.target.field();
        let mut out = vec![0; self.target.dim()];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                for (o, &v) in out.iter_mut().zip(&self.images[i]) {
                    *o = f.mul_add(*o, c, v);
                }
            }
        }
        out
    }

    /// Matrix of `F: hom(x, y) → hom(Fx, Fy)` in hom-space bases.
    pub fn hom_map(&self, x: usize, y: usize) -> Mat {
        let t = self.target.hom(self.objects[x], self.objects[y]);
        let cols: Vec<Vec<FieldElem>> = self
            .source
            .hom(x, y)
            .map(|i| self.images[i][t.clone()].to_vec())
            .collect();
        Mat::from_columns(self.target.field(), t.len(), &cols)
    }
}

/// Verifies preservation of identities and of composition on basis pairs.
pub fn check_functor(f: &LinearFunctor) -> Result<()> {
    let (s, t) = (&f.source, &f.target);
    for x in 0..s.object_count() {
        if f.apply(s.identity(x)) != t.identity(f.objects[x]) {
            return Err(Error::InvalidFunctor(format!(
                "identity of {} is not sent to an identity",
                s.objects()[x]
            )));
        }
    }
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            if s.ends(i).1 != s.ends(j).0 {
                continue;
            }
            let lhs = f.apply(&s.compose(&s.basis_vec(i), &s.basis_vec(j)));
            let rhs = t.compose(&f.images[i], &f.images[j]);
            if lhs != rhs {
                return Err(Error::InvalidFunctor(format!(
                    "composition of ({}, {}) is not preserved",
                    s.label(i),
                    s.label(j)
                )));
            }
        }
    }
    Ok(())
}

fn check_over(cat: &BoundedCategory, alg: &Algebra, side: &str) -> Result<()> {
    if cat.object_count() != alg.vertex_count() || cat.dim() != alg.dim() {
        return Err(Error::InvalidFunctor(format!("{side} category does not match the algebra")));
    }
    Ok(())
}

/// Precomposition `M ∘ F` of a target module.
pub fn restrict_module(
    f: &LinearFunctor,
    source: &Algebra,
    target: &Algebra,
    m: &Representation,
) -> Result<Representation> {
    check_over(&f.source, source, "source")?;
    check_over(&f.target, target, "target")?;
    let q = source.quiver();
    let dims: Vec<usize> = f.objects.iter().map(|&o| m.dims()[o]).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let i = source.reduce_path(&crate::algebra::PathWord {
                source: arr.source,
                target: arr.target,
                arrows: vec![a],
            });
            let img = f.apply(&i);
            m.element_matrix(target, &img, f.objects[arr.source], f.objects[arr.target])
        })
        .collect();
    Representation::new(source, dims, maps)
}

/// Replaces each `P_b` by `P_{Fb}`, maps differential entries through `F`
/// and minimizes.
pub fn extend_complex(f: &LinearFunctor, source: &Algebra, target: &Algebra, x: &ProjComplex) -> Result<ProjComplex> {
    check_over(&f.source, source, "source")?;
    check_over(&f.target, target, "target")?;
    let terms: Vec<Vec<usize>> = x
        .terms()
        .iter()
        .map(|t| t.iter().map(|&b| f.objects[b]).collect())
        .collect();
    let mut diffs = Vec::with_capacity(x.m());
    for (i, d) in x.diffs().iter().enumerate() {
        let mut out = ProjMap::zero(target, terms[i].clone(), terms[i + 1].clone());
        for k in 0..d.src().len() {
            for l in 0..d.tgt().len() {
                let e = d.entry(k, l);
                if e.iter().any(|&c| c != 0) {
                    out.set(k, l, f.apply(e));
                }
            }
        }
        diffs.push(out);
    }
    let y = ProjComplex::new(target, x.m(), terms, diffs)?;
    minimize(target, &y)
}

/// A retraction family `r_{b,b'}` keyed by source object pairs, each matrix
/// mapping `hom(Fb, Fb')` to `hom(b, b')` in hom-space bases.
#[derive(Clone, Debug, Serialize)]
pub struct Retraction {
    pub pairs: Vec<(usize, usize)>,
    pub maps: Vec<Mat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CleavingReport {
    pub holds: bool,
    pub hom_maps_injective: bool,
    pub unknowns: usize,
    pub equations: usize,
    pub retraction: Option<Retraction>,
}

/// Solves for a natural retraction of every hom map of `F`:
/// `r(F u) = u` and `r(F u · x · F v) = u · r(x) · v` on basis elements.
pub fn is_cleaving_cond1(f: &LinearFunctor) -> Result<CleavingReport> {
    check_functor(f)?;
    let (s, t) = (&f.source, &f.target);
    let fld = s.field();
    let n = s.object_count();
    let injective = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .all(|(x, y)| f.hom_map(x, y).kernel_dim() == 0);

    // unknown layout: r_{b,b'}[row][col], row in hom(b,b'), col in hom(Fb,Fb')
    let mut offset = vec![0usize; n * n];
    let mut total = 0;
    for b in 0..n {
        for c in 0..n {
            offset[b * n + c] = total;
            total += s.hom_dim(b, c) * t.hom_dim(f.objects[b], f.objects[c]);
        }
    }
    let var = |b: usize, c: usize, row: usize, col: usize| {
        let tc = t.hom_dim(f.objects[b], f.objects[c]);
        offset[b * n + c] + row * tc + col
    };
    let local = |cat: &BoundedCategory, x: &[FieldElem], a: usize, b: usize| -> Vec<FieldElem> { x[cat.hom(a, b)].to_vec() };

    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    let mut rhs: Vec<FieldElem> = Vec::new();
    // retraction
    for b in 0..n {
        for c in 0..n {
            let (fb, fc) = (f.objects[b], f.objects[c]);
            for (ui, u) in s.hom(b, c).enumerate() {
                let img = local(t, &f.images[u], fb, fc);
                for row in 0..s.hom_dim(b, c) {
                    let mut eq = vec![0; total];
                    for (col, &v) in img.iter().enumerate() {
                        eq[var(b, c, row, col)] = v;
                    }
                    rows.push(eq);
                    rhs.push((row == ui) as FieldElem);
                }
            }
        }
    }
    // naturality: u: a → b, x ∈ hom(Fb, Fc), v: c → d
    for b in 0..n {
        for c in 0..n {
            let (fb, fc) = (f.objects[b], f.objects[c]);
            for (xi, xg) in t.hom(fb, fc).enumerate() {
                for a in 0..n {
                    for u in s.hom(a, b) {
                        let ux = t.compose(&f.images[u], &t.basis_vec(xg));
                        for d in 0..n {
                            for v in s.hom(c, d) {
                                let y = t.compose(&ux, &f.images[v]);
                                let y = local(t, &y, f.objects[a], f.objects[d]);
                                for row in 0..s.hom_dim(a, d) {
                                    let mut eq = vec![0; total];
                                    for (col, &yc) in y.iter().enumerate() {
                                        if yc != 0 {
                                            let k = var(a, d, row, col);
                                            eq[k] = fld.add(eq[k], yc);
                                        }
                                    }
                                    // − Σ_k r_{b,c}[k][x] (u e_k v)[row]
                                    for (k, e) in s.hom(b, c).enumerate() {
                                        let uev = s.compose(&s.compose(&s.basis_vec(u), &s.basis_vec(e)), &s.basis_vec(v));
                                        let coeff = uev[s.hom(a, d)][row];
                                        if coeff != 0 {
                                            let j = var(b, c, k, xi);
                                            eq[j] = fld.sub(eq[j], coeff);
                                        }
                                    }
                                    if eq.iter().any(|&e| e != 0) {
                                        rows.push(eq);
                                        rhs.push(0);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let equations = rows.len();
    let retraction = if total == 0 {
        rhs.iter().all(|&r| r == 0).then(|| vec![])
    } else if rows.is_empty() {
        Some(vec![0; total])
    } else {
        let system = Mat::from_columns(fld, total, &rows).transpose();
        match system.solve(&rhs)? {
            Solution::Solved { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    };
    let retraction = retraction.map(|sol| {
        let mut pairs = Vec::new();
        let mut maps = Vec::new();
        for b in 0..n {
            for c in 0..n {
                let (sr, tc) = (s.hom_dim(b, c), t.hom_dim(f.objects[b], f.objects[c]));
                if sr == 0 && tc == 0 {
                    continue;
                }
                let mut m = Mat::zeros(fld, sr, tc);
                for row in 0..sr {
                    for col in 0..tc {
                        m.set(row, col, sol.get(var(b, c, row, col)).copied().unwrap_or(0));
                    }
                }
                pairs.push((b, c));
                maps.push(m);
            }
        }
        Retraction { pairs, maps }
    });
    Ok(CleavingReport {
        holds: retraction.is_some(),
        hom_maps_injective: injective,
        unknowns: total,
        equations,
        retraction,
    })
}

/// Linear quiver `n → n−1 → ⋯ → 1` with arrows `alpha_j: j+1 → j` and all
/// paths of length `l` as relations.
pub fn build_an_l(n: usize, l: usize) -> Result<Presentation> {
    build_an_l_over(n, l, DEFAULT_PRIME)
}

pub fn build_an_l_over(n: usize, l: usize, p: u32) -> Result<Presentation> {
    if n == 0 || l < 2 {
        return Err(Error::InvalidInput(format!("A_n^l needs n >= 1 and l >= 2, got n = {n}, l = {l}")));
    }
    Field::new(p)?;
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (1..n)
        .map(|j| (format!("alpha_{j}"), (j + 1).to_string(), j.to_string()))
        .collect();
    // a path of length l from s runs alpha_{s-1}, …, alpha_{s-l}
    let relations: Vec<Vec<String>> = (l + 1..=n)
        .map(|s| (1..=l).map(|k| format!("alpha_{}", s - k)).collect())
        .collect();
    let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let a: Vec<(&str, &str, &str)> = arrows.iter().map(|(x, y, z)| (x.as_str(), y.as_str(), z.as_str())).collect();
    let rel_paths: Vec<Vec<&str>> = relations.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let rel_terms: Vec<[(i64, &[&str]); 1]> = rel_paths.iter().map(|r| [(1, r.as_slice())]).collect();
    let rels: Vec<&[(i64, &[&str])]> = rel_terms.iter().map(|t| t.as_slice()).collect();
    Ok(fixtures::presentation(&v, &a, &rels, p))
}

/// The functor `A_n^l → k[x]/(x^l)` with `F(i) = a` and `F(alpha_j) = x`.
pub fn an_l_to_truncated(source: &Algebra, target: &Algebra) -> Result<LinearFunctor> {
    let x = target.quiver().arrow_by_id("x")?;
    let x_path = target.reduce_path(&crate::algebra::PathWord {
        source: 0,
        target: 0,
        arrows: vec![x],
    });
    let arrows = vec![x_path; source.quiver().arrows().len()];
    LinearFunctor::from_arrow_images(source, target, vec![0; source.vertex_count()], &arrows)
}

/// Objects `(a, i)` for `i ∈ [lo, hi]` of the repetitive category of `A`.
#[derive(Clone, Debug)]
pub struct RepetitiveSlice {
    pub lo: i64,
    pub hi: i64,
    pub vertex_count: usize,
    pub category: BoundedCategory,
}

impl RepetitiveSlice {
    pub fn object(&self, a: usize, i: i64) -> Option<usize> {
        (a < self.vertex_count && (self.lo..=self.hi).contains(&i)).then(|| (i - self.lo) as usize * self.vertex_count + a)
    }

    pub fn hom_dim(&self, (a, i): (usize, i64), (b, j): (usize, i64)) -> usize {
        match (self.object(a, i), self.object(b, j)) {
            (Some(x), Some(y)) => self.category.hom_dim(x, y),
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SliceElem {
    /// A basis path of `A` at level `i`.
    Path { path: usize },
    /// The dual of a basis path, raising the level by one.
    Dual { path: usize },
}

/// Builds the slice and verifies it as a bounded category.
pub fn repetitive_slice(alg: &Algebra, lo: i64, hi: i64) -> Result<RepetitiveSlice> {
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty window [{lo}, {hi}]")));
    }
    let n = alg.vertex_count();
    let levels = (hi - lo + 1) as usize;
    let q = alg.quiver();
    let objects: Vec<String> = (0..levels)
        .flat_map(|l| (0..n).map(move |a| (l, a)))
        .map(|(l, a)| format!("({},{})", q.vertex_id(a), lo + l as i64))
        .collect();
    let mut basis = Vec::new();
    let mut elems = Vec::new();
    for x in 0..objects.len() {
        let (lx, a) = (x / n, x % n);
        for y in 0..objects.len() {
            let (ly, b) = (y / n, y % n);
            if ly == lx {
                for p in alg.corner(a, b) {
                    basis.push((format!("{}@{}", alg.label(p), lo + lx as i64), x, y));
                    elems.push(SliceElem::Path { path: p });
                }
            } else if ly == lx + 1 {
                for p in alg.corner(b, a) {
                    basis.push((format!("D({})@{}", alg.label(p), lo + lx as i64), x, y));
                    elems.push(SliceElem::Dual { path: p });
                }
            }
        }
    }
    let d = basis.len();
    let identities: Vec<Vec<FieldElem>> = (0..objects.len())
        .map(|x| {
            let t = alg.trivial_index(x % n);
            let mut v = vec![0; d];
            let k = (0..d)
                .find(|&k| basis[k].1 == x && basis[k].2 == x && elems[k] == SliceElem::Path { path: t })
                .expect("identity basis element");
            v[k] = 1;
            v
        })
        .collect();
    let index = |e: SliceElem, x: usize, y: usize| -> usize {
        (0..d)
            .find(|&k| elems[k] == e && basis[k].1 == x && basis[k].2 == y)
            .expect("basis element")
    };
    let ends: Vec<(usize, usize)> = basis.iter().map(|(_, s, t)| (*s, *t)).collect();
    let coeff = |x: &[FieldElem], p: usize| x[p];
    let product = |i: usize, j: usize| -> Vec<(usize, FieldElem)> {
        let (x, _) = ends[i];
        let (_, z) = ends[j];
        let (a, c) = (x % n, z % n);
        match (elems[i], elems[j]) {
            (SliceElem::Path { path: f }, SliceElem::Path { path: g }) => alg
                .mul_basis(f, g)
                .iter()
                .map(|&(k, v)| (index(SliceElem::Path { path: k }, x, z), v))
                .collect(),
            // (f·φ)(y) = φ(y f) for y ∈ A(c, a)
            (SliceElem::Path { path: f }, SliceElem::Dual { path: k }) => alg
                .corner(c, a)
                .filter_map(|y| {
                    let v = coeff(&alg.mul(&alg.basis_elem(y), &alg.basis_elem(f)), k);
                    (v != 0).then(|| (index(SliceElem::Dual { path: y }, x, z), v))
                })
                .collect(),
            // (φ·g)(y) = φ(g y) for y ∈ A(c, a)
            (SliceElem::Dual { path: k }, SliceElem::Path { path: g }) => alg
                .corner(c, a)
                .filter_map(|y| {
                    let v = coeff(&alg.mul(&alg.basis_elem(g), &alg.basis_elem(y)), k);
                    (v != 0).then(|| (index(SliceElem::Dual { path: y }, x, z), v))
                })
                .collect(),
            (SliceElem::Dual { .. }, SliceElem::Dual { .. }) => Vec::new(),
        }
    };
    let category = BoundedCategory::new(alg.field(), objects, basis.clone(), identities, product)?;
    category.verify()?;
    Ok(RepetitiveSlice {
        lo,
        hi,
        vertex_count: n,
        category,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceDimVector {
    /// `(vertex, level, dim)` for every object of the window.
    pub entries: Vec<(String, i64, usize)>,
    pub total: usize,
    pub truncated: bool,
}

/// Dimension vector of the projective `Â((a, i), −)` restricted to the
/// window.
pub fn slice_projective_dimvec(slice: &RepetitiveSlice, a: usize, i: i64) -> Result<SliceDimVector> {
    let x = slice
        .object(a, i)
        .ok_or_else(|| Error::InvalidInput(format!("object ({a}, {i}) is outside the window")))?;
    let n = slice.vertex_count;
    let entries: Vec<(String, i64, usize)> = (0..slice.category.object_count())
        .map(|y| {
            let name = &slice.category.objects()[y];
            let vertex = name.trim_start_matches('(').split(',').next().unwrap_or_default().to_string();
            (vertex, slice.lo + (y / n) as i64, slice.category.hom_dim(x, y))
        })
        .collect();
    Ok(SliceDimVector {
        total: entries.iter().map(|e| e.2).sum(),
        entries,
        truncated: i + 1 > slice.hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{cohomology, validate};
    use crate::modules::{hom_space, Representation};

    fn build(p: Presentation) -> Algebra {
        Algebra::build(p).unwrap()
    }

    fn arrow_elem(alg: &Algebra, id: &str) -> Vec<FieldElem> {
        let a = alg.quiver().arrow_by_id(id).unwrap();
        let arr = alg.quiver().arrow(a);
        alg.reduce_path(&crate::algebra::PathWord {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        })
    }

    fn a2_to_l2(a2: &Algebra, l2: &Algebra) -> LinearFunctor {
        LinearFunctor::from_arrow_images(a2, l2, vec![0, 0], &[arrow_elem(l2, "alpha")]).unwrap()
    }

    #[test]
    fn functor_checks() {
        let a2 = build(fixtures::a2());
        let l2 = build(fixtures::l2());
        let id = LinearFunctor::identity(&BoundedCategory::from_algebra(&a2));
        assert!(check_functor(&id).is_ok());
        assert!(check_functor(&a2_to_l2(&a2, &l2)).is_ok());

        // alpha ↦ x sends the relation alpha^2 to x^2 ≠ 0 in k[x]/(x^3)
        let t3 = build(fixtures::truncated_polynomial(3));
        let f = LinearFunctor::from_arrow_images(&l2, &t3, vec![0], &[arrow_elem(&t3, "x")]).unwrap();
        assert!(matches!(check_functor(&f), Err(Error::InvalidFunctor(_))));

        // an image in the wrong corner is rejected up front
        let k = build(fixtures::kronecker());
        let a = arrow_elem(&k, "a");
        assert!(LinearFunctor::from_arrow_images(&a2, &k, vec![1, 0], &[a]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let a2 = build(fixtures::a2());
        let l2 = build(fixtures::l2());
        let f = a2_to_l2(&a2, &l2);
        let reg = Representation::projective(&l2, 0);
        let r = restrict_module(&f, &a2, &l2, &reg).unwrap();
        assert_eq!(r.dims(), &[2, 2]);

        // along A_2^2 → L2 the restriction keeps dim 2 at every vertex
        let an = build(build_an_l(2, 2).unwrap());
        let g = LinearFunctor::from_arrow_images(&an, &l2, vec![0, 0], &[arrow_elem(&l2, "alpha")]).unwrap();
        let r = restrict_module(&g, &an, &l2, &reg).unwrap();
        assert_eq!(r.dims(), &[2, 2]);
        assert_eq!(r.map(0).rank(), 1);

        let id = LinearFunctor::identity(&BoundedCategory::from_algebra(&a2));
        let s = Representation::simple(&a2, 1);
        assert_eq!(restrict_module(&id, &a2, &a2, &s).unwrap(), s);
        assert!(restrict_module(&f, &a2, &l2, &Representation::zero(&l2)).unwrap().is_zero());
    }

    #[test]
    fn extension_examples() {
        let a2 = build(fixtures::a2());
        let l2 = build(fixtures::l2());
        let f = a2_to_l2(&a2, &l2);
        let stalk = ProjComplex::stalk(&a2, 0, 0, vec![0]).unwrap();
        let e = extend_complex(&f, &a2, &l2, &stalk).unwrap();
        assert_eq!(e.term(0), &[0]);
        assert_eq!(e.dim(&l2), 2);

        let a = arrow_elem(&a2, "a");
        let d = ProjMap::from_entries(&a2, vec![1], vec![0], vec![a]).unwrap();
        let x = ProjComplex::two_term(&a2, d).unwrap();
        let y = extend_complex(&f, &a2, &l2, &x).unwrap();
        assert!(validate(&l2, &y).is_ok());
        assert_eq!(y.diff(0).entry(0, 0), arrow_elem(&l2, "alpha").as_slice());
        assert_eq!(cohomology(&l2, &y).h, vec![1, 1]);

        let id = LinearFunctor::identity(&BoundedCategory::from_algebra(&a2));
        assert_eq!(extend_complex(&id, &a2, &a2, &x).unwrap(), x);
    }

    #[test]
    fn extension_restriction_adjunction_on_stalks() {
        let a2 = build(fixtures::a2());
        let l2 = build(fixtures::l2());
        let f = a2_to_l2(&a2, &l2);
        let modules = [
            Representation::projective(&l2, 0),
            Representation::simple(&l2, 0),
            Representation::projective(&l2, 0).direct_sum(&Representation::simple(&l2, 0)),
        ];
        for m in &modules {
            let r = restrict_module(&f, &a2, &l2, m).unwrap();
            for b in 0..2 {
                let pb = Representation::projective(&a2, b);
                let pfb = Representation::projective(&l2, f.object(b));
                assert_eq!(hom_space(&a2, &pb, &r).len(), hom_space(&l2, &pfb, m).len());
            }
        }
    }

    #[test]
    fn cleaving_examples() {
        let a2 = build(fixtures::a2());
        let id = LinearFunctor::identity(&BoundedCategory::from_algebra(&a2));
        let rep = is_cleaving_cond1(&id).unwrap();
        assert!(rep.holds && rep.hom_maps_injective);

        let an = build(build_an_l(3, 3).unwrap());
        let t3 = build(fixtures::truncated_polynomial(3));
        let f = an_l_to_truncated(&an, &t3).unwrap();
        let rep = is_cleaving_cond1(&f).unwrap();
        assert!(rep.holds);
        assert!(rep.hom_maps_injective);
        let r = rep.retraction.unwrap();
        for ((b, c), m) in r.pairs.iter().zip(&r.maps) {
            let prod = m.mul(&f.hom_map(*b, *c));
            assert_eq!(prod, Mat::identity(prod.field(), prod.rows()));
        }

        let l2 = build(fixtures::l2());
        let zero = LinearFunctor::from_arrow_images(&a2, &l2, vec![0, 0], &[l2.zero()]).unwrap();
        let rep = is_cleaving_cond1(&zero).unwrap();
        assert!(!rep.holds && !rep.hom_maps_injective);
    }

    #[test]
    fn an_l_dimensions() {
        let dim = |n, l| build(build_an_l(n, l).unwrap()).dim();
        assert_eq!(dim(2, 2), 3);
        assert_eq!(dim(3, 2), 5);
        assert_eq!(dim(3, 3), 6);
        assert_eq!(dim(5, 3), 5 + 4 + 3);
        assert!(build_an_l(0, 2).is_err());
        assert!(build_an_l(3, 1).is_err());
    }

    #[test]
    fn repetitive_slice_a2() {
        let a2 = build(fixtures::a2());
        let s = repetitive_slice(&a2, 0, 1).unwrap();
        assert_eq!(s.category.object_count(), 4);
        assert_eq!(s.hom_dim((0, 0), (1, 0)), 1);
        assert_eq!(s.hom_dim((1, 0), (0, 1)), 1);
        assert_eq!(s.hom_dim((0, 0), (0, 1)), 1);
        assert_eq!(s.hom_dim((0, 0), (1, 1)), 0);
        let p1 = slice_projective_dimvec(&s, 0, 0).unwrap();
        let p2 = slice_projective_dimvec(&s, 1, 0).unwrap();
        assert_eq!((p1.total, p2.total), (3, 3));
        assert!(!p1.truncated);
        assert!(slice_projective_dimvec(&s, 0, 1).unwrap().truncated);

        let wide = repetitive_slice(&a2, -1, 2).unwrap();
        for i in -1..=2 {
            for j in -1..=2 {
                if j - i >= 2 || j < i {
                    for a in 0..2 {
                        for b in 0..2 {
                            assert_eq!(wide.hom_dim((a, i), (b, j)), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn repetitive_slice_l2() {
        let l2 = build(fixtures::l2());
        let s = repetitive_slice(&l2, 0, 0).unwrap();
        assert_eq!(s.category.hom_dim(0, 0), 2);
        let s = repetitive_slice(&l2, 0, 1).unwrap();
        assert_eq!(slice_projective_dimvec(&s, 0, 0).unwrap().total, 4);
        assert!(repetitive_slice(&l2, 1, 0).is_err());
    }

    #[test]
    fn repetitive_slice_dims_match_corners() {
        for p in [fixtures::a3(), fixtures::kronecker(), fixtures::n2(), fixtures::square_commutative()] {
            let alg = build(p);
            let s = repetitive_slice(&alg, 0, 1).unwrap();
            for a in 0..alg.vertex_count() {
                let v = slice_projective_dimvec(&s, a, 0).unwrap();
                assert_eq!(v.total, alg.projective_dim(a) + alg.injective_dim(a));
                for b in 0..alg.vertex_count() {
                    assert_eq!(s.hom_dim((a, 0), (b, 0)), alg.corner_dim(a, b));
                    assert_eq!(s.hom_dim((a, 0), (b, 1)), alg.corner_dim(b, a));
                }
            }
        }
    }
}
