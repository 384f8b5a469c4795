//! JSON file formats for algebras, modules, complexes and functors.
//!
//! ```json
//! {
//!   "prime": 101,
//!   "vertices": ["1", "2"],
//!   "arrows": [{ "id": "a", "from": "1", "to": "2" }],
//!   "relations": [[{ "coeff": 1, "path": ["a", "b"] }]]
//! }
//! ```
//!
//! Algebra elements are lists of `{coeff, path}` terms; an empty path is the
//! trivial path of the vertex implied by context.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, Algebra, PathWord, Presentation, Quiver, Relation, DEFAULT_LENGTH_CAP};
use crate::categories::LinearFunctor;
use crate::complexes::{ProjComplex, ProjMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldElem, Mat};
use crate::gentle::{HomotopyBand, Letter};
use crate::modules::Representation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub prime: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_cap: Option<usize>,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::InvalidInput(format!("{what}: {e} (line {}, column {})", e.line(), e.column()))
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Field element printed in the symmetric range.
fn signed(field: Field, c: FieldElem) -> i64 {
    let p = field.p() as i64;
    let c = c as i64;
    if c > p / 2 {
        c - p
    } else {
        c
    }
}

fn path_ids<'a>(q: &Quiver, ids: &'a [String]) -> Result<Vec<&'a str>> {
    ids.iter()
        .map(|s| q.arrow_by_id(s).map(|_| s.as_str()))
        .collect()
}

pub fn presentation_from_file(f: &AlgebraFile) -> Result<Presentation> {
    let field = Field::new(f.prime)?;
    let quiver = Quiver::new(
        f.vertices.iter().cloned(),
        f.arrows.iter().map(|a| (a.id.clone(), a.from.clone(), a.to.clone())),
    )?;
    let relations = f
        .relations
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            let terms = terms
                .iter()
                .map(|t| {
                    let ids = path_ids(&quiver, &t.path)?;
                    Ok((field.from_i64(t.coeff), quiver.path(&ids)?))
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::InvalidInput(format!("relations[{i}]: {e}")))?;
            Relation::new(terms).map_err(|e| Error::InvalidInput(format!("relations[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Presentation::new(quiver, relations, field).with_length_cap(f.length_cap.unwrap_or(DEFAULT_LENGTH_CAP)))
}

pub fn presentation_to_file(p: &Presentation) -> AlgebraFile {
    let q = &p.quiver;
    AlgebraFile {
        prime: p.field.p(),
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowFile {
                id: a.id.clone(),
                from: q.vertex_id(a.source).to_string(),
                to: q.vertex_id(a.target).to_string(),
            })
            .collect(),
        relations: p
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, u)| TermFile {
                        coeff: signed(p.field, *c),
                        path: u.arrow_ids(q).into_iter().map(String::from).collect(),
                    })
                    .collect()
            })
            .collect(),
        length_cap: (p.length_cap != DEFAULT_LENGTH_CAP).then_some(p.length_cap),
    }
}

pub fn parse_algebra(text: &str) -> Result<Presentation> {
    presentation_from_file(&parse_json(text, "algebra file")?)
}

pub fn write_algebra(p: &Presentation) -> String {
    to_json(&presentation_to_file(p))
}

pub fn read_algebra(path: &Path) -> Result<Presentation> {
    parse_algebra(&read_text(path)?).map_err(|e| prefix(path, e))
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::InvalidInput(s) => Error::InvalidInput(format!("{}: {s}", path.display())),
        other => other,
    }
}

/// Parses terms into an element of `e_a A e_b`.
pub fn element_from_terms(alg: &Algebra, terms: &[TermFile], a: usize, b: usize) -> Result<AlgElem> {
    let q = alg.quiver();
    let field = alg.field();
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let path = if t.path.is_empty() {
            if a != b {
                return Err(Error::InvalidInput(format!(
                    "trivial path between distinct vertices {} and {}",
                    q.vertex_id(a),
                    q.vertex_id(b)
                )));
            }
            PathWord::trivial(a)
        } else {
            q.path(&path_ids(q, &t.path)?)?
        };
        if path.source != a || path.target != b {
            return Err(Error::InvalidInput(format!(
                "path {} does not run from {} to {}",
                path.label(q),
                q.vertex_id(a),
                q.vertex_id(b)
            )));
        }
        parsed.push((field.from_i64(t.coeff), path));
    }
    Ok(alg.reduce_terms(&parsed))
}

pub fn element_to_terms(alg: &Algebra, x: &[FieldElem]) -> Vec<TermFile> {
    let q = alg.quiver();
    x.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| TermFile {
            coeff: signed(alg.field(), c),
            path: alg.basis()[i].arrow_ids(q).into_iter().map(String::from).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub source: usize,
    pub target: usize,
    pub value: Vec<TermFile>,
}

/// Nonzero entries of each differential; `terms[i]` lists the vertices of
/// the summands in degree `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub m: usize,
    pub terms: Vec<Vec<String>>,
    pub diffs: Vec<Vec<EntryFile>>,
}

pub fn complex_from_file(alg: &Algebra, f: &ComplexFile) -> Result<ProjComplex> {
    let q = alg.quiver();
    if f.terms.len() != f.m + 1 {
        return Err(Error::InvalidInput(format!("terms: expected {} degrees, found {}", f.m + 1, f.terms.len())));
    }
    if f.diffs.len() != f.m {
        return Err(Error::InvalidInput(format!("diffs: expected {} maps, found {}", f.m, f.diffs.len())));
    }
    let terms: Vec<Vec<usize>> = f
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.iter()
                .map(|v| q.vertex(v))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::InvalidInput(format!("terms[{i}]: {e}")))
        })
        .collect::<Result<_>>()?;
    let mut diffs = Vec::with_capacity(f.m);
    for (i, entries) in f.diffs.iter().enumerate() {
        let mut d = ProjMap::zero(alg, terms[i].clone(), terms[i + 1].clone());
        for (j, e) in entries.iter().enumerate() {
            let ctx = |msg: String| Error::InvalidInput(format!("diffs[{i}][{j}]: {msg}"));
            if e.source >= terms[i].len() || e.target >= terms[i + 1].len() {
                return Err(ctx("summand index out of range".into()));
            }
            let (s, t) = (terms[i][e.source], terms[i + 1][e.target]);
            let x = element_from_terms(alg, &e.value, t, s).map_err(|err| ctx(err.to_string()))?;
            d.set(e.source, e.target, x);
        }
        diffs.push(d);
    }
    ProjComplex::new(alg, f.m, terms, diffs)
}

pub fn complex_to_file(alg: &Algebra, x: &ProjComplex) -> ComplexFile {
    let q = alg.quiver();
    ComplexFile {
        m: x.m(),
        terms: x
            .terms()
            .iter()
            .map(|t| t.iter().map(|&v| q.vertex_id(v).to_string()).collect())
            .collect(),
        diffs: x
            .diffs()
            .iter()
            .map(|d| {
                let mut out = Vec::new();
                for k in 0..d.src().len() {
                    for l in 0..d.tgt().len() {
                        let e = d.entry(k, l);
                        if e.iter().any(|&c| c != 0) {
                            out.push(EntryFile {
                                source: k,
                                target: l,
                                value: element_to_terms(alg, e),
                            });
                        }
                    }
                }
                out
            })
            .collect(),
    }
}

pub fn parse_complex(alg: &Algebra, text: &str) -> Result<ProjComplex> {
    complex_from_file(alg, &parse_json(text, "complex file")?)
}

pub fn write_complex(alg: &Algebra, x: &ProjComplex) -> String {
    to_json(&complex_to_file(alg, x))
}

pub fn read_complex(alg: &Algebra, path: &Path) -> Result<ProjComplex> {
    parse_complex(alg, &read_text(path)?).map_err(|e| prefix(path, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowMatrix {
    pub arrow: String,
    pub matrix: Vec<Vec<i64>>,
}

/// Dimensions in vertex order and one matrix per arrow (rows index the
/// target space).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dims: Vec<usize>,
    pub maps: Vec<ArrowMatrix>,
}

fn matrix_from_rows(field: Field, rows: usize, cols: usize, data: &[Vec<i64>], what: &str) -> Result<Mat> {
    if rows == 0 || cols == 0 {
        if data.iter().any(|r| !r.is_empty()) {
            return Err(Error::InvalidInput(format!("{what}: expected an empty {rows}x{cols} matrix")));
        }
        return Ok(Mat::zeros(field, rows, cols));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    Mat::from_rows(field, data)
}

pub fn module_from_file(alg: &Algebra, f: &ModuleFile) -> Result<Representation> {
    let q = alg.quiver();
    if f.dims.len() != q.vertex_count() {
        return Err(Error::InvalidInput(format!("dims: expected {} entries", q.vertex_count())));
    }
    let mut maps: Vec<Option<Mat>> = vec![None; q.arrows().len()];
    for (i, am) in f.maps.iter().enumerate() {
        let a = q.arrow_by_id(&am.arrow).map_err(|e| Error::InvalidInput(format!("maps[{i}]: {e}")))?;
        let arr = q.arrow(a);
        let what = format!("maps[{i}] ({})", am.arrow);
        maps[a] = Some(matrix_from_rows(alg.field(), f.dims[arr.target], f.dims[arr.source], &am.matrix, &what)?);
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(a, m)| {
            let arr = q.arrow(a);
            m.unwrap_or_else(|| Mat::zeros(alg.field(), f.dims[arr.target], f.dims[arr.source]))
        })
        .collect();
    Representation::new(alg, f.dims.clone(), maps)
}

pub fn module_to_file(alg: &Algebra, m: &Representation) -> ModuleFile {
    let q = alg.quiver();
    ModuleFile {
        dims: m.dims().to_vec(),
        maps: q
            .arrows()
            .iter()
            .zip(m.maps())
            .map(|(a, mat)| ArrowMatrix {
                arrow: a.id.clone(),
                matrix: mat
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|c| signed(alg.field(), c)).collect())
                    .collect(),
            })
            .collect(),
    }
}

pub fn parse_module(alg: &Algebra, text: &str) -> Result<Representation> {
    module_from_file(alg, &parse_json(text, "module file")?)
}

pub fn write_module(alg: &Algebra, m: &Representation) -> String {
    to_json(&module_to_file(alg, m))
}

/// An algebra given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowImage {
    pub arrow: String,
    pub image: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomMatrix {
    pub from: String,
    pub to: String,
    /// Columns index the source hom basis, rows the target hom basis.
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    /// `[source vertex, target vertex]` pairs.
    pub objects: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<ArrowImage>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<HomMatrix>>,
}

/// A parsed functor together with its source and target algebras.
pub struct FunctorInput {
    pub source: Algebra,
    pub target: Algebra,
    pub functor: LinearFunctor,
}

fn resolve(r: &AlgebraRef, base: &Path) -> Result<Presentation> {
    match r {
        AlgebraRef::Inline(f) => presentation_from_file(f),
        AlgebraRef::Path(p) => {
            let path: PathBuf = base.join(p);
            read_algebra(&path)
        }
    }
}

pub fn functor_from_file(f: &FunctorFile, base: &Path) -> Result<FunctorInput> {
    let source = Algebra::build(resolve(&f.source, base)?)?;
    let target = Algebra::build(resolve(&f.target, base)?)?;
    let (sq, tq) = (source.quiver(), target.quiver());
    let mut objects = vec![None; sq.vertex_count()];
    for (i, (a, b)) in f.objects.iter().enumerate() {
        let ctx = |e: Error| Error::InvalidInput(format!("objects[{i}]: {e}"));
        objects[sq.vertex(a).map_err(ctx)?] = Some(tq.vertex(b).map_err(ctx)?);
    }
    let objects: Vec<usize> = objects
        .into_iter()
        .enumerate()
        .map(|(v, o)| o.ok_or_else(|| Error::InvalidInput(format!("objects: vertex {} is not mapped", sq.vertex_id(v)))))
        .collect::<Result<_>>()?;
    let functor = match (&f.arrows, &f.homs) {
        (Some(arrows), None) => {
            let mut images: Vec<Option<AlgElem>> = vec![None; sq.arrows().len()];
            for (i, ai) in arrows.iter().enumerate() {
                let ctx = |e: Error| Error::InvalidInput(format!("arrows[{i}]: {e}"));
                let a = sq.arrow_by_id(&ai.arrow).map_err(ctx)?;
                let arr = sq.arrow(a);
                images[a] = Some(
                    element_from_terms(&target, &ai.image, objects[arr.source], objects[arr.target]).map_err(ctx)?,
                );
            }
            let images: Vec<AlgElem> = images.into_iter().map(|x| x.unwrap_or_else(|| target.zero())).collect();
            LinearFunctor::from_arrow_images(&source, &target, objects, &images)?
        }
        (None, Some(homs)) => {
            let sc = crate::algebra::BoundedCategory::from_algebra(&source);
            let tc = crate::algebra::BoundedCategory::from_algebra(&target);
            let mut images = vec![vec![0; tc.dim()]; sc.dim()];
            let mut seen = vec![false; sc.dim()];
            for (i, h) in homs.iter().enumerate() {
                let ctx = |e: Error| Error::InvalidInput(format!("homs[{i}]: {e}"));
                let (x, y) = (sq.vertex(&h.from).map_err(ctx)?, sq.vertex(&h.to).map_err(ctx)?);
                let (sr, tr) = (sc.hom(x, y), tc.hom(objects[x], objects[y]));
                let m = matrix_from_rows(target.field(), tr.len(), sr.len(), &h.matrix, &format!("homs[{i}]"))?;
                for (col, i_src) in sr.clone().enumerate() {
                    for (row, i_tgt) in tr.clone().enumerate() {
                        images[i_src][i_tgt] = m.get(row, col);
                    }
                    seen[i_src] = true;
                }
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidInput(format!("homs: no matrix covers {}", sc.label(i))));
            }
            LinearFunctor::new(sc, tc, objects, images)?
        }
        _ => return Err(Error::InvalidInput("functor file needs exactly one of `arrows` and `homs`".into())),
    };
    Ok(FunctorInput {
        source,
        target,
        functor,
    })
}

pub fn read_functor(path: &Path) -> Result<FunctorInput> {
    let f: FunctorFile = parse_json(&read_text(path)?, "functor file").map_err(|e| prefix(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    functor_from_file(&f, base).map_err(|e| prefix(path, e))
}

/// Parses `a b^-1` or `(a*b)^-1 c`: whitespace-separated letters, each a
/// `*`-joined path with an optional `^-1`.
pub fn parse_band(alg: &Algebra, text: &str) -> Result<HomotopyBand> {
    let q = alg.quiver();
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (body, inverse) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let ids: Vec<&str> = body.split('*').collect();
        let path = q.path(&ids)?;
        let x = alg.reduce_path(&path);
        let nonzero: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
        match nonzero.as_slice() {
            [i] if x[*i] == 1 && alg.basis()[*i] == path => letters.push(Letter { path: *i, inverse }),
            _ => return Err(Error::InvalidBand(format!("`{body}` is not a nonzero basis path"))),
        }
    }
    HomotopyBand::new(alg, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_round_trip() {
        for p in [fixtures::a2(), fixtures::l2(), fixtures::square_commutative(), fixtures::cycle3()] {
            let text = write_algebra(&p);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, p);
            assert_eq!(write_algebra(&back), text);
        }
    }

    #[test]
    fn algebra_diagnostics() {
        let err = parse_algebra("{\"prime\": 101,\n \"vertices\": [\"1\"], \"arrows\": 3}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_algebra(r#"{"prime": 4, "vertices": ["1"], "arrows": []}"#).unwrap_err();
        assert_eq!(err, Error::InvalidPrime(4));
        let err = parse_algebra(
            r#"{"prime": 5, "vertices": ["1"], "arrows": [{"id": "x", "from": "1", "to": "1"}],
                "relations": [[{"coeff": 1, "path": ["y"]}]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("relations[0]"), "{err}");
    }

    #[test]
    fn complex_round_trip() {
        let alg = Algebra::build(fixtures::kronecker()).unwrap();
        let text = r#"{"m": 1, "terms": [["2"], ["1"]],
            "diffs": [[{"source": 0, "target": 0, "value": [{"coeff": 1, "path": ["a"]}, {"coeff": -2, "path": ["b"]}]}]]}"#;
        let x = parse_complex(&alg, text).unwrap();
        assert_eq!(alg.to_corner(x.diff(0).entry(0, 0), 0, 1), vec![1, 99]);
        let out = write_complex(&alg, &x);
        assert_eq!(parse_complex(&alg, &out).unwrap(), x);
        assert_eq!(write_complex(&alg, &parse_complex(&alg, &out).unwrap()), out);

        let bad = r#"{"m": 1, "terms": [["1"], ["2"]], "diffs": [[{"source": 0, "target": 0, "value": [{"coeff": 1, "path": ["a"]}]}]]}"#;
        assert!(parse_complex(&alg, bad).unwrap_err().to_string().contains("diffs[0][0]"));
    }

    #[test]
    fn module_round_trip() {
        let alg = Algebra::build(fixtures::kronecker()).unwrap();
        let text = r#"{"dims": [1, 1], "maps": [{"arrow": "a", "matrix": [[1]]}, {"arrow": "b", "matrix": [[3]]}]}"#;
        let m = parse_module(&alg, text).unwrap();
        assert_eq!(m.map(1).get(0, 0), 3);
        assert_eq!(parse_module(&alg, &write_module(&alg, &m)).unwrap(), m);
        assert!(parse_module(&alg, r#"{"dims": [1, 1], "maps": [{"arrow": "a", "matrix": [[1, 2]]}]}"#).is_err());
    }

    #[test]
    fn band_parsing() {
        let alg = Algebra::build(fixtures::kronecker()).unwrap();
        let b = parse_band(&alg, "a b^-1").unwrap();
        assert_eq!(b.label(&alg), "a b^-1");
        assert_eq!(parse_band(&alg, "b^-1 a").unwrap(), b);
        assert!(parse_band(&alg, "a a^-1").is_err());
        assert!(parse_band(&alg, "z").is_err());
        let l2 = Algebra::build(fixtures::l2()).unwrap();
        assert!(matches!(parse_band(&l2, "(alpha*alpha)^-1 alpha"), Err(Error::InvalidBand(_))));
    }

    #[test]
    fn inline_functor() {
        let a2 = write_algebra(&fixtures::a2());
        let l2 = write_algebra(&fixtures::l2());
        let text = format!(
            r#"{{"source": {a2}, "target": {l2}, "objects": [["1", "v"], ["2", "v"]],
                "arrows": [{{"arrow": "a", "image": [{{"coeff": 1, "path": ["alpha"]}}]}}]}}"#
        );
        let f: FunctorFile = parse_json(&text, "functor").unwrap();
        let input = functor_from_file(&f, Path::new(".")).unwrap();
        assert!(crate::categories::check_functor(&input.functor).is_ok());

        let text = format!(
            r#"{{"source": {a2}, "target": {l2}, "objects": [["1", "v"], ["2", "v"]],
                "homs": [{{"from": "1", "to": "1", "matrix": [[1], [0]]}},
                         {{"from": "1", "to": "2", "matrix": [[0], [1]]}},
                         {{"from": "2", "to": "2", "matrix": [[1], [0]]}}]}}"#
        );
        let f: FunctorFile = parse_json(&text, "functor").unwrap();
        let by_homs = functor_from_file(&f, Path::new(".")).unwrap();
        for i in 0..3 {
            assert_eq!(by_homs.functor.image(i), input.functor.image(i));
        }
    }
}
