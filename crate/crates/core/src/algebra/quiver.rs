use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactla::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// `arrows` are `(id, from, to)` triples referring to vertex ids.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut out = Vec::new();
        let mut arrow_index = HashMap::new();
        for (id, from, to) in arrows {
            let source = *vertex_index
                .get(&from)
                .ok_or_else(|| Error::UnknownVertex(from.clone()))?;
            let target = *vertex_index
                .get(&to)
                .ok_or_else(|| Error::UnknownVertex(to.clone()))?;
            if vertex_index.contains_key(&id) || arrow_index.insert(id.clone(), out.len()).is_some() {
                return Err(Error::InvalidInput(format!("duplicate id `{id}`")));
            }
            out.push(Arrow { id, source, target });
        }
        Ok(Self {
            vertices,
            arrows: out,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_by_id(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                for a in &self.arrows {
                    let next = if a.source == v {
                        a.target
                    } else if a.target == v {
                        a.source
                    } else {
                        continue;
                    };
                    if !seen[next] {
                        seen[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.component_count() == 1
    }

    /// First Betti number of the underlying graph.
    pub fn betti_number(&self) -> usize {
        self.arrows.len() + self.component_count() - self.vertices.len()
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        queue.push_back(a.target);
                    }
                }
            }
        }
        removed < n
    }

    /// Parses a path given as arrow ids. Empty paths are rejected because
    /// their endpoint is ambiguous; use [`PathWord::trivial`].
    pub fn path(&self, ids: &[&str]) -> Result<PathWord> {
        let arrows = ids
            .iter()
            .map(|id| self.arrow_by_id(id))
            .collect::<Result<Vec<_>>>()?;
        PathWord::from_arrows(self, arrows)
    }
}

/// A path in the quiver, composed left to right: `a*b` traverses `a` then `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let (first, last) = match (arrows.first(), arrows.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::InvalidInput("empty arrow sequence".into())),
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::InvalidInput(format!(
                    "arrows `{}` and `{}` do not compose",
                    q.arrow(w[0]).id,
                    q.arrow(w[1]).id
                )));
            }
        }
        Ok(Self {
            source: q.arrow(first).source,
            target: q.arrow(last).target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if they compose.
    pub fn concat(&self, other: &PathWord) -> Option<PathWord> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(PathWord {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn is_parallel(&self, other: &PathWord) -> bool {
        self.source == other.source && self.target == other.target
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_id(self.source));
        }
        let mut s = String::new();
        for (i, &a) in self.arrows.iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let _ = write!(s, "{}", q.arrow(a).id);
        }
        s
    }

    pub fn arrow_ids<'q>(&self, q: &'q Quiver) -> Vec<&'q str> {
        self.arrows.iter().map(|&a| q.arrow(a).id.as_str()).collect()
    }
}

/// A relation `Σ c_i u_i` with pairwise distinct parallel paths of length ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(FieldElem, PathWord)>,
}

impl Relation {
    pub fn new(terms: Vec<(FieldElem, PathWord)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| *c != 0).collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidInput("relation has no nonzero terms".into()));
        };
        for (i, (_, u)) in terms.iter().enumerate() {
            if u.len() < 2 {
                return Err(Error::InvalidInput("relation paths must have length ≥ 2".into()));
            }
            if !u.is_parallel(first) {
                return Err(Error::InvalidInput("relation paths must be parallel".into()));
            }
            if terms[..i].iter().any(|(_, v)| v == u) {
                return Err(Error::InvalidInput("relation paths must be distinct".into()));
            }
        }
        Ok(Self { terms })
    }

    pub fn monomial(path: PathWord) -> Result<Self> {
        Self::new(vec![(1, path)])
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, u)| u.len()).min().unwrap_or(0)
    }

    pub fn label(&self, q: &Quiver, field: Field) -> String {
        let mut s = String::new();
        for (i, (c, u)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            if *c != 1 {
                let _ = write!(s, "{}", field.from_i64(*c as i64));
                s.push('·');
            }
            s.push_str(&u.label(q));
        }
        s
    }
}

/// Default bound on path length used to saturate the ideal.
pub const DEFAULT_LENGTH_CAP: usize = 12;

/// A bound quiver `kQ/I` over a prime field, before its basis is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field: Field,
    pub length_cap: usize,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: Field) -> Self {
        Self {
            quiver,
            relations,
            field,
            length_cap: DEFAULT_LENGTH_CAP,
        }
    }

    pub fn with_length_cap(mut self, cap: usize) -> Self {
        self.length_cap = cap;
        self
    }

    /// The same presentation over another prime; coefficients are reduced and
    /// relations whose reduction degenerates are rejected.
    pub fn with_field(&self, field: Field) -> Result<Self> {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms: Vec<_> = r
                    .terms
                    .iter()
                    .map(|(c, u)| (*c % field.p(), u.clone()))
                    .collect();
                Relation::new(terms)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            quiver: self.quiver.clone(),
            relations,
            field,
            length_cap: self.length_cap,
        })
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
        list.iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect()
    }

    #[test]
    fn rejects_unknown_vertex_and_duplicates() {
        assert!(matches!(
            Quiver::new(["1"], arrows(&[("a", "1", "2")])),
            Err(Error::UnknownVertex(_))
        ));
        assert!(Quiver::new(["1", "1"], Vec::new()).is_err());
        assert!(Quiver::new(["1", "2"], arrows(&[("a", "1", "2"), ("a", "2", "1")])).is_err());
    }

    #[test]
    fn betti_numbers() {
        let k = Quiver::new(["1", "2"], arrows(&[("a", "1", "2"), ("b", "1", "2")])).unwrap();
        assert_eq!(k.betti_number(), 1);
        let a3 = Quiver::new(["1", "2", "3"], arrows(&[("a", "1", "2"), ("b", "2", "3")])).unwrap();
        assert_eq!(a3.betti_number(), 0);
        assert!(!a3.has_oriented_cycle());
        let loop_q = Quiver::new(["v"], arrows(&[("x", "v", "v")])).unwrap();
        assert_eq!(loop_q.betti_number(), 1);
        assert!(loop_q.has_oriented_cycle());
    }

    #[test]
    fn paths_must_compose() {
        let q = Quiver::new(["1", "2"], arrows(&[("a", "1", "2"), ("b", "1", "2")])).unwrap();
        assert!(q.path(&["a", "b"]).is_err());
        assert_eq!(q.path(&["a"]).unwrap().label(&q), "a");
    }

    #[test]
    fn relation_validation() {
        let q = Quiver::new(["1", "2", "3"], arrows(&[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")])).unwrap();
        let ab = q.path(&["a", "b"]).unwrap();
        let c = q.path(&["c"]).unwrap();
        assert!(Relation::new(vec![(1, ab.clone()), (1, c)]).is_err());
        assert!(Relation::new(vec![(1, ab.clone()), (2, ab.clone())]).is_err());
        assert!(Relation::new(vec![(0, ab)]).is_err());
    }
}
