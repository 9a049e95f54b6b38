//! Triangulated diagram spaces: ordered simplicial complexes whose simplices
//! carry orbit labels and facet restriction maps, together with their
//! validation, Euler class, barycentric subdivision, orbit-point and
//! total-space extraction, and simplicial equivariant self-maps.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fincat::{compose_nat, enumerate_nat_trans, NatTrans};
use crate::matrix::IntMatrix;
use crate::orbits::{Orbit, OrbitCategory, OrbitError, UDVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate simplex id `{0}`")]
    DuplicateSimplex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("simplex `{id}` has {got} vertices but lives in dimension {dim}")]
    WrongVertexCount { id: String, dim: usize, got: usize },
    #[error("simplex `{0}` repeats a vertex or is not in increasing vertex order")]
    TupleNotIncreasing(String),
    #[error("two simplices span the same vertices: `{0}` and `{1}`")]
    DuplicateTuple(String, String),
    #[error("vertex `{0}` has no 0-simplex carrying its orbit label")]
    MissingVertexSimplex(String),
    #[error("simplex `{id}` is missing its facet opposite vertex position {facet}")]
    MissingFace { id: String, facet: usize },
    #[error("simplex `{id}` carries {got} restriction maps, expected {expected}")]
    WrongRestrictionCount { id: String, expected: usize, got: usize },
    #[error("restriction {facet} of simplex `{id}` is `{mor}`, which does not map its orbit to the facet orbit")]
    RestrictionEndpoints { id: String, facet: usize, mor: String },
    #[error("restrictions of simplex `{id}` do not commute over the face dropping positions {i} and {j}")]
    InconsistentRestrictions { id: String, i: usize, j: usize },
    #[error("map sends simplex `{0}` onto a vertex set that spans no simplex")]
    NonSimplicialImage(String),
    #[error("map component at simplex `{id}` is `{mor}`, which does not map its orbit to the carrier orbit")]
    ComponentEndpoints { id: String, mor: String },
    #[error("map fails to commute with the restriction of `{id}` at facet {facet}")]
    MapSquare { id: String, facet: usize },
    #[error("map components missing for simplex `{0}`")]
    MissingComponent(String),
    #[error("vertex map is not total: no image for `{0}`")]
    PartialVertexMap(String),
    #[error("orbit `{0}` lives over a different base category than the space")]
    ForeignOrbit(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// (dimension, index) of a simplex inside its complex.
pub type SimplexRef = (usize, usize);

#[derive(Debug, Clone)]
pub struct Simplex {
    pub id: String,
    /// Global vertex indices, strictly increasing.
    pub vertices: Vec<usize>,
    /// Orbit label, an orbit id of the ambient orbit category.
    pub orbit: usize,
    /// Flat morphism ids of the orbit category; entry `i` restricts to the
    /// facet obtained by dropping the vertex at position `i`. Empty in
    /// dimension zero.
    pub restrictions: Vec<usize>,
}

/// A finite ordered simplicial complex with orbit labels and facet
/// restrictions: the combinatorial form of a triangulated diagram of spaces.
#[derive(Debug)]
pub struct LabeledComplex {
    pub oc: Arc<OrbitCategory>,
    pub vertices: Vec<String>,
    simplices: Vec<Vec<Simplex>>,
    by_tuple: HashMap<Vec<usize>, SimplexRef>,
}

impl LabeledComplex {
    /// Validates and assembles a complex from index-level data. Reports the
    /// first violated invariant: closure, vertex order, label endpoints and
    /// the commutation of restriction maps over codimension-two faces.
    pub fn from_parts(
        oc: Arc<OrbitCategory>,
        vertices: Vec<String>,
        mut simplices: Vec<Vec<Simplex>>,
    ) -> Result<Self, SpaceError> {
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        let mut seen_vertices = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen_vertices.insert(v.clone(), i).is_some() {
                return Err(SpaceError::DuplicateVertex(v.clone()));
            }
        }
        let mut by_tuple: HashMap<Vec<usize>, SimplexRef> = HashMap::new();
        let mut seen_ids: HashMap<String, SimplexRef> = HashMap::new();
        for (dim, level) in simplices.iter().enumerate() {
            for (idx, s) in level.iter().enumerate() {
                if seen_ids.insert(s.id.clone(), (dim, idx)).is_some() {
                    return Err(SpaceError::DuplicateSimplex(s.id.clone()));
                }
                if s.vertices.len() != dim + 1 {
                    return Err(SpaceError::WrongVertexCount {
                        id: s.id.clone(),
                        dim,
                        got: s.vertices.len(),
                    });
                }
                if s.vertices.iter().any(|&v| v >= vertices.len()) {
                    return Err(SpaceError::UnknownVertex(format!("#{} in `{}`", s.vertices.len(), s.id)));
                }
                if !s.vertices.windows(2).all(|w| w[0] < w[1]) {
                    return Err(SpaceError::TupleNotIncreasing(s.id.clone()));
                }
                if let Some(&other) = by_tuple.get(&s.vertices) {
                    let other_id = simplices[other.0][other.1].id.clone();
                    return Err(SpaceError::DuplicateTuple(other_id, s.id.clone()));
                }
                by_tuple.insert(s.vertices.clone(), (dim, idx));
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if !by_tuple.contains_key(&vec![i]) {
                return Err(SpaceError::MissingVertexSimplex(v.clone()));
            }
        }

        let complex = LabeledComplex { oc, vertices, simplices, by_tuple };
        complex.validate()?;
        Ok(complex)
    }

    fn validate(&self) -> Result<(), SpaceError> {
        for (dim, level) in self.simplices.iter().enumerate() {
            for s in level {
                let expected_restrictions = if dim == 0 { 0 } else { dim + 1 };
                if s.restrictions.len() != expected_restrictions {
                    return Err(SpaceError::WrongRestrictionCount {
                        id: s.id.clone(),
                        expected: expected_restrictions,
                        got: s.restrictions.len(),
                    });
                }
                for i in 0..s.restrictions.len() {
                    let facet_tuple = drop_position(&s.vertices, i);
                    let Some(&fref) = self.by_tuple.get(&facet_tuple) else {
                        return Err(SpaceError::MissingFace { id: s.id.clone(), facet: i });
                    };
                    let facet = self.simplex(fref);
                    let mor = self.oc.morphism(s.restrictions[i]);
                    if mor.src != s.orbit || mor.tgt != facet.orbit {
                        return Err(SpaceError::RestrictionEndpoints {
                            id: s.id.clone(),
                            facet: i,
                            mor: mor.name.clone(),
                        });
                    }
                }
                // codimension two: both facet chains must give the same map
                for j in 1..if dim >= 2 { s.restrictions.len() } else { 0 } {
                    for i in 0..j {
                        let tau_j = self.face_ref((dim, self.index_of(s)), j);
                        let tau_i = self.face_ref((dim, self.index_of(s)), i);
                        let via_j = self
                            .oc
                            .compose(self.simplex(tau_j).restrictions[i], s.restrictions[j]);
                        let via_i = self
                            .oc
                            .compose(self.simplex(tau_i).restrictions[j - 1], s.restrictions[i]);
                        if via_j != via_i || via_j.is_none() {
                            return Err(SpaceError::InconsistentRestrictions {
                                id: s.id.clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn index_of(&self, s: &Simplex) -> usize {
        self.by_tuple[&s.vertices].1
    }

    /// Number of stored dimensions (top dimension plus one); zero when empty.
    pub fn dims(&self) -> usize {
        self.simplices.len()
    }

    pub fn level(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, r: SimplexRef) -> &Simplex {
        &self.simplices[r.0][r.1]
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn find_by_tuple(&self, tuple: &[usize]) -> Option<SimplexRef> {
        self.by_tuple.get(tuple).copied()
    }

    /// The facet of `r` opposite the vertex at position `i`.
    pub fn face_ref(&self, r: SimplexRef, i: usize) -> SimplexRef {
        let tuple = drop_position(&self.simplex(r).vertices, i);
        self.by_tuple[&tuple]
    }

    /// Alternating sum of the orbit classes over all simplices.
    pub fn euler_class(&self) -> UDVector {
        let mut v = self.oc.zero_vector();
        for (dim, level) in self.simplices.iter().enumerate() {
            let sign = if dim % 2 == 0 { 1 } else { -1 };
            for s in level {
                v.entries[self.oc.class_of(s.orbit)] += sign;
            }
        }
        v
    }

    /// The restriction from `from` to an arbitrary face with the given vertex
    /// tuple, composed along facet steps. Well defined by the validated
    /// commutation of restriction squares.
    pub fn composed_restriction(&self, from: SimplexRef, to_tuple: &[usize]) -> usize {
        let mut cur = from;
        let mut acc = self.oc.identity(self.simplex(from).orbit);
        while self.simplex(cur).vertices.len() > to_tuple.len() {
            let pos = self
                .simplex(cur)
                .vertices
                .iter()
                .rposition(|v| !to_tuple.contains(v))
                .expect("target must be a proper subset while descending");
            let step = self.simplex(cur).restrictions[pos];
            acc = self.oc.compose(step, acc).expect("restriction endpoints are validated");
            cur = self.face_ref(cur, pos);
        }
        debug_assert_eq!(self.simplex(cur).vertices, to_tuple);
        acc
    }

    /// Barycentric subdivision. New vertices are the barycenters of the old
    /// simplices (ordered by dimension, then index), new simplices are the
    /// strict chains of old faces, each labeled by the orbit of its top
    /// simplex. Restrictions drop to the identity inside a carrier and to the
    /// composed old restriction when the top of the chain is dropped.
    pub fn subdivide(&self) -> LabeledComplex {
        self.subdivide_with_tops().0
    }

    /// Subdivision together with, per new simplex, the old simplex whose
    /// interior carries it (the top of its chain).
    pub fn subdivide_with_tops(&self) -> (LabeledComplex, Vec<Vec<SimplexRef>>) {
        let mut used_names: HashMap<String, ()> = HashMap::new();
        let mut vertex_name_of: HashMap<SimplexRef, usize> = HashMap::new();
        let mut new_vertices = Vec::new();
        for (dim, level) in self.simplices.iter().enumerate() {
            for (idx, s) in level.iter().enumerate() {
                let base = if dim == 0 {
                    self.vertices[s.vertices[0]].clone()
                } else {
                    format!("b({})", s.id)
                };
                let mut name = base;
                while used_names.contains_key(&name) {
                    name.push('\'');
                }
                used_names.insert(name.clone(), ());
                vertex_name_of.insert((dim, idx), new_vertices.len());
                new_vertices.push(name);
            }
        }

        // all strict chains in the face order, grouped by length
        let mut chains: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
        let mut chains_to: HashMap<SimplexRef, Vec<Vec<SimplexRef>>> = HashMap::new();
        for (dim, level) in self.simplices.iter().enumerate() {
            for (idx, s) in level.iter().enumerate() {
                let mut here: Vec<Vec<SimplexRef>> = vec![vec![(dim, idx)]];
                for sub in proper_subtuples(&s.vertices) {
                    let face = self.by_tuple[&sub];
                    for c in &chains_to[&face] {
                        let mut longer = c.clone();
                        longer.push((dim, idx));
                        here.push(longer);
                    }
                }
                for c in &here {
                    let k = c.len() - 1;
                    while chains.len() <= k {
                        chains.push(Vec::new());
                    }
                    chains[k].push(c.clone());
                }
                chains_to.insert((dim, idx), here);
            }
        }

        let mut used_ids: HashMap<String, ()> = HashMap::new();
        let mut new_levels: Vec<Vec<Simplex>> = Vec::new();
        let mut tops: Vec<Vec<SimplexRef>> = Vec::new();
        for (k, level) in chains.iter().enumerate() {
            let mut simplices = Vec::new();
            let mut level_tops = Vec::new();
            for chain in level {
                let mut tuple: Vec<usize> = chain.iter().map(|r| vertex_name_of[r]).collect();
                tuple.sort_unstable();
                let top = *chain.last().expect("chains are nonempty");
                let top_simplex = self.simplex(top);
                let mut id = chain
                    .iter()
                    .map(|&r| self.simplex(r).id.clone())
                    .collect::<Vec<_>>()
                    .join("|");
                while used_ids.contains_key(&id) {
                    id.push('\'');
                }
                used_ids.insert(id.clone(), ());
                let restrictions = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k)
                        .map(|j| {
                            if j < k {
                                self.oc.identity(top_simplex.orbit)
                            } else {
                                let lower = self.simplex(chain[k - 1]);
                                self.composed_restriction(top, &lower.vertices)
                            }
                        })
                        .collect()
                };
                simplices.push(Simplex {
                    id,
                    vertices: tuple,
                    orbit: top_simplex.orbit,
                    restrictions,
                });
                level_tops.push(top);
            }
            new_levels.push(simplices);
            tops.push(level_tops);
        }

        let subdivided = LabeledComplex::from_parts(Arc::clone(&self.oc), new_vertices, new_levels)
            .expect("barycentric subdivision preserves validity");
        (subdivided, tops)
    }

    /// The colimit complex: the plain ordered simplicial complex underneath
    /// the labels.
    pub fn underlying_delta(&self) -> DeltaComplex {
        let cells = self
            .simplices
            .iter()
            .map(|level| level.iter().map(|s| s.id.clone()).collect())
            .collect();
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for (dim, level) in self.simplices.iter().enumerate().skip(1) {
            faces.push(
                level
                    .iter()
                    .enumerate()
                    .map(|(idx, _)| (0..=dim).map(|i| self.face_ref((dim, idx), i).1).collect())
                    .collect(),
            );
        }
        DeltaComplex { cells, faces }
    }

    /// The value of the diagram at an object: cells are pairs of a simplex
    /// and an element of its orbit at that object, faces follow the
    /// restriction maps.
    pub fn total_space(&self, object: &str) -> Result<DeltaComplex, SpaceError> {
        let d = self
            .oc
            .base
            .object_id(object)
            .map_err(OrbitError::Fincat)?;
        let mut offsets: HashMap<SimplexRef, usize> = HashMap::new();
        let mut cells: Vec<Vec<String>> = Vec::new();
        for (dim, level) in self.simplices.iter().enumerate() {
            let mut names = Vec::new();
            for (idx, s) in level.iter().enumerate() {
                offsets.insert((dim, idx), names.len());
                for elem in self.oc.orbit(s.orbit).functor.set(d) {
                    names.push(format!("{}:{}", s.id, elem));
                }
            }
            cells.push(names);
        }
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for (dim, level) in self.simplices.iter().enumerate().skip(1) {
            let mut level_faces = Vec::new();
            for (idx, s) in level.iter().enumerate() {
                let count = self.oc.orbit(s.orbit).functor.set(d).len();
                for t in 0..count {
                    let mut cell_faces = Vec::with_capacity(dim + 1);
                    for i in 0..=dim {
                        let fref = self.face_ref((dim, idx), i);
                        let r = self.oc.morphism(s.restrictions[i]);
                        let image = r.nat.components[d][t];
                        cell_faces.push(offsets[&fref] + image);
                    }
                    level_faces.push(cell_faces);
                }
            }
            faces.push(level_faces);
        }
        Ok(DeltaComplex { cells, faces })
    }

    /// Cells of the orbit-point space at a named orbit of the ambient orbit
    /// category: pairs of a simplex and a map from the orbit into its label,
    /// faces by post-composition with the restrictions.
    pub fn orbit_point(&self, orbit: &str) -> Result<DeltaComplex, SpaceError> {
        let id = self.oc.orbit_id(orbit)?;
        self.orbit_point_of(self.oc.orbit(id))
    }

    /// Same as [`orbit_point`](Self::orbit_point) for an arbitrary orbit over
    /// the same base category, not necessarily one of the ambient ones. Used
    /// for evaluating at free orbits.
    pub fn orbit_point_of(&self, orbit: &Orbit) -> Result<DeltaComplex, SpaceError> {
        if !std::sync::Arc::ptr_eq(&orbit.functor.base, &self.oc.base) {
            return Err(SpaceError::ForeignOrbit(orbit.name.clone()));
        }
        let n_orbits = self.oc.orbits().len();
        let mut homs: Vec<Option<(Vec<NatTrans>, HashMap<NatTrans, usize>)>> = vec![None; n_orbits];
        for level in &self.simplices {
            for s in level {
                if homs[s.orbit].is_none() {
                    let list = enumerate_nat_trans(&orbit.functor, &self.oc.orbit(s.orbit).functor)
                        .expect("orbits share the base category");
                    let index =
                        list.iter().cloned().enumerate().map(|(k, n)| (n, k)).collect();
                    homs[s.orbit] = Some((list, index));
                }
            }
        }

        let mut offsets: HashMap<SimplexRef, usize> = HashMap::new();
        let mut cells: Vec<Vec<String>> = Vec::new();
        for (dim, level) in self.simplices.iter().enumerate() {
            let mut names = Vec::new();
            for (idx, s) in level.iter().enumerate() {
                offsets.insert((dim, idx), names.len());
                let count = homs[s.orbit].as_ref().unwrap().0.len();
                for k in 0..count {
                    names.push(format!("{}:#{}", s.id, k));
                }
            }
            cells.push(names);
        }
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for (dim, level) in self.simplices.iter().enumerate().skip(1) {
            let mut level_faces = Vec::new();
            for (idx, s) in level.iter().enumerate() {
                let (list, _) = homs[s.orbit].as_ref().unwrap();
                for g in list {
                    let mut cell_faces = Vec::with_capacity(dim + 1);
                    for i in 0..=dim {
                        let fref = self.face_ref((dim, idx), i);
                        let facet_orbit = self.simplex(fref).orbit;
                        let r = &self.oc.morphism(s.restrictions[i]).nat;
                        let composite = compose_nat(r, g).expect("component shapes agree");
                        let (_, index) = homs[facet_orbit].as_ref().unwrap();
                        let k = index[&composite];
                        cell_faces.push(offsets[&fref] + k);
                    }
                    level_faces.push(cell_faces);
                }
            }
            faces.push(level_faces);
        }
        Ok(DeltaComplex { cells, faces })
    }
}

pub(crate) fn drop_position(tuple: &[usize], i: usize) -> Vec<usize> {
    let mut out = tuple.to_vec();
    out.remove(i);
    out
}

/// All nonempty proper subsets of a strictly increasing tuple, ordered by
/// size and then lexicographically.
fn proper_subtuples(tuple: &[usize]) -> Vec<Vec<usize>> {
    let n = tuple.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..((1 << n) - 1) {
        let sub: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).map(|k| tuple[k]).collect();
        out.push(sub);
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// An unlabeled ordered cell complex: cell names per dimension and, for each
/// cell of positive dimension, the ordered list of its facet cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    pub cells: Vec<Vec<String>>,
    /// faces[n][cell][i] is the index of the i-th facet, n >= 1.
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl DeltaComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler(&self) -> BigInt {
        let mut chi = BigInt::from(0);
        for (dim, level) in self.cells.iter().enumerate() {
            let term = BigInt::from(level.len());
            if dim % 2 == 0 {
                chi += term;
            } else {
                chi -= term;
            }
        }
        chi
    }

    /// Boundary operators with alternating signs; entry (r, c) accumulates
    /// over coinciding faces.
    pub fn boundary_matrices(&self) -> Vec<IntMatrix> {
        let mut out = Vec::new();
        for n in 1..self.cells.len() {
            let mut m = IntMatrix::zeros(self.cells[n - 1].len(), self.cells[n].len());
            for (c, cell_faces) in self.faces[n].iter().enumerate() {
                for (i, &f) in cell_faces.iter().enumerate() {
                    let sign = if i % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                    m.add_to(f, c, &sign);
                }
            }
            out.push(m);
        }
        out
    }

    /// Integral homology per degree: Betti number and torsion coefficients.
    pub fn homology(&self) -> Vec<(usize, Vec<BigInt>)> {
        let boundaries = self.boundary_matrices();
        let dims: Vec<usize> = self.counts();
        let mut out = Vec::new();
        for n in 0..dims.len() {
            let rank_in = if n == 0 { 0 } else { boundaries[n - 1].smith_normal_form().rank };
            let (rank_out, torsion) = if n < boundaries.len() {
                let snf = boundaries[n].smith_normal_form();
                (snf.rank, snf.torsion())
            } else {
                (0, Vec::new())
            };
            out.push((dims[n] - rank_in - rank_out, torsion));
        }
        out
    }
}

/// Compares the orbit-point space at the free orbit of the given object with
/// the total space at that object, through the bijection sending a map from
/// the free orbit to its value on the identity. Returns an error description
/// on the first mismatch.
pub fn check_free_orbit_point(x: &LabeledComplex, object: &str) -> Result<(), String> {
    let free = crate::orbits::free_orbit(&x.oc.base, object).map_err(|e| e.to_string())?;
    let op = x.orbit_point_of(&free).map_err(|e| e.to_string())?;
    let total = x.total_space(object).map_err(|e| e.to_string())?;
    if op.counts() != total.counts() {
        return Err(format!(
            "cell counts differ at {object}: {:?} vs {:?}",
            op.counts(),
            total.counts()
        ));
    }
    let d = x.oc.base.object_id(object).map_err(|e| e.to_string())?;
    let id_position = free
        .functor
        .set(d)
        .iter()
        .position(|name| *name == x.oc.base.morphisms()[x.oc.base.identity(d)].name)
        .expect("the identity belongs to its own hom set");

    // translate orbit-point cells to total-space cells dimension by dimension
    let mut translation: Vec<Vec<usize>> = Vec::new();
    for (dim, level) in x.simplices.iter().enumerate() {
        let mut map = Vec::with_capacity(op.cells[dim].len());
        let mut total_offset = 0;
        for s in level {
            let homs = enumerate_nat_trans(&free.functor, &x.oc.orbit(s.orbit).functor)
                .map_err(|e| e.to_string())?;
            let fiber = x.oc.orbit(s.orbit).functor.set(d).len();
            for g in &homs {
                map.push(total_offset + g.components[d][id_position]);
            }
            total_offset += fiber;
        }
        if map.len() != op.cells[dim].len() {
            return Err(format!("translation size mismatch in dimension {dim}"));
        }
        let mut hit = vec![false; total.cells[dim].len()];
        for &t in &map {
            if std::mem::replace(&mut hit[t], true) {
                return Err(format!("translation is not a bijection in dimension {dim}"));
            }
        }
        translation.push(map);
    }
    for n in 1..op.faces.len() {
        for (c, cell_faces) in op.faces[n].iter().enumerate() {
            for (i, &f) in cell_faces.iter().enumerate() {
                let lhs = translation[n - 1][f];
                let rhs = total.faces[n][translation[n][c]][i];
                if lhs != rhs {
                    return Err(format!(
                        "face {i} of cell {c} in dimension {n} disagrees: {lhs} vs {rhs}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Where a simplex lands under a simplicial self-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub target: SimplexRef,
    /// True when the image spans a simplex of strictly lower dimension.
    pub degenerate: bool,
    /// Parity of the vertex permutation when nondegenerate, else zero.
    pub sign: i64,
}

/// A simplicial equivariant self-map: a vertex map carrying simplices into
/// simplices and, per simplex, a morphism from its orbit to the orbit of its
/// image carrier, commuting with all restrictions.
#[derive(Debug, Clone)]
pub struct EquivariantSelfMap {
    pub space: Arc<LabeledComplex>,
    pub vertex_map: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl EquivariantSelfMap {
    pub fn identity(space: Arc<LabeledComplex>) -> EquivariantSelfMap {
        let vertex_map = (0..space.vertices.len()).collect();
        let components = space
            .simplices
            .iter()
            .map(|level| level.iter().map(|s| space.oc.identity(s.orbit)).collect())
            .collect();
        EquivariantSelfMap { space, vertex_map, components }
    }

    /// Validates and assembles a self-map from index-level data.
    pub fn from_parts(
        space: Arc<LabeledComplex>,
        vertex_map: Vec<usize>,
        components: Vec<Vec<usize>>,
    ) -> Result<EquivariantSelfMap, SpaceError> {
        let map = EquivariantSelfMap { space, vertex_map, components };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<(), SpaceError> {
        let space = &self.space;
        let oc = &space.oc;
        if self.vertex_map.len() != space.vertices.len()
            || self.vertex_map.iter().any(|&v| v >= space.vertices.len())
        {
            let missing = space
                .vertices
                .get(self.vertex_map.len())
                .cloned()
                .unwrap_or_else(|| "out of range".into());
            return Err(SpaceError::PartialVertexMap(missing));
        }
        for (dim, level) in space.simplices.iter().enumerate() {
            let comps = self.components.get(dim);
            for (idx, s) in level.iter().enumerate() {
                let Some(&u) = comps.and_then(|c| c.get(idx)) else {
                    return Err(SpaceError::MissingComponent(s.id.clone()));
                };
                let Some(carrier) = self.carrier_of(s) else {
                    return Err(SpaceError::NonSimplicialImage(s.id.clone()));
                };
                let mor = oc.morphism(u);
                let carrier_orbit = space.simplex(carrier.target).orbit;
                if mor.src != s.orbit || mor.tgt != carrier_orbit {
                    return Err(SpaceError::ComponentEndpoints {
                        id: s.id.clone(),
                        mor: mor.name.clone(),
                    });
                }
                // each facet square must commute
                for i in 0..s.restrictions.len() {
                    let fref = space.face_ref((dim, idx), i);
                    let facet = space.simplex(fref);
                    let u_facet = self.components[dim - 1][fref.1];
                    let lhs = oc.compose(u_facet, s.restrictions[i]);
                    let facet_carrier = self
                        .carrier_of(facet)
                        .expect("faces of simplicial images are simplicial");
                    let down = space.composed_restriction(
                        carrier.target,
                        &space.simplex(facet_carrier.target).vertices,
                    );
                    let rhs = oc.compose(down, u);
                    if lhs != rhs || lhs.is_none() {
                        return Err(SpaceError::MapSquare { id: s.id.clone(), facet: i });
                    }
                }
            }
        }
        Ok(())
    }

    fn carrier_of(&self, s: &Simplex) -> Option<Carrier> {
        let image: Vec<usize> = s.vertices.iter().map(|&v| self.vertex_map[v]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let target = self.space.find_by_tuple(&sorted)?;
        if sorted.len() < image.len() {
            return Some(Carrier { target, degenerate: true, sign: 0 });
        }
        let mut inversions = 0;
        for a in 0..image.len() {
            for b in a + 1..image.len() {
                if image[a] > image[b] {
                    inversions += 1;
                }
            }
        }
        Some(Carrier {
            target,
            degenerate: false,
            sign: if inversions % 2 == 0 { 1 } else { -1 },
        })
    }

    pub fn carrier(&self, r: SimplexRef) -> Carrier {
        self.carrier_of(self.space.simplex(r))
            .expect("validated maps are simplicial")
    }

    pub fn component(&self, r: SimplexRef) -> usize {
        self.components[r.0][r.1]
    }

    /// The same self-map on the barycentric subdivision of its space: each
    /// barycenter goes to the barycenter of its image carrier and a chain
    /// inherits the component of its top simplex.
    pub fn subdivide(&self) -> Result<(Arc<LabeledComplex>, EquivariantSelfMap), SpaceError> {
        let space = &self.space;
        let (subdivided, tops) = space.subdivide_with_tops();

        let barycenter_number = |r: SimplexRef| -> usize {
            let mut number = 0;
            for d in 0..r.0 {
                number += space.simplices[d].len();
            }
            number + r.1
        };
        let mut vertex_map = Vec::with_capacity(subdivided.vertices.len());
        for (dim, level) in space.simplices.iter().enumerate() {
            for (idx, _) in level.iter().enumerate() {
                vertex_map.push(barycenter_number(self.carrier((dim, idx)).target));
            }
        }
        let components = tops
            .iter()
            .map(|level| level.iter().map(|&top| self.component(top)).collect())
            .collect();
        let subdivided = Arc::new(subdivided);
        let map = EquivariantSelfMap::from_parts(Arc::clone(&subdivided), vertex_map, components)?;
        Ok((subdivided, map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn zigzag_validates_and_counts() {
        let z = samples::zigzag_space();
        assert_eq!(z.dims(), 2);
        assert_eq!(z.level(0).len(), 2);
        assert_eq!(z.level(1).len(), 1);
    }

    #[test]
    fn zigzag_euler_class() {
        let z = samples::zigzag_space();
        let chi = z.euler_class();
        assert_eq!(chi, UDVector::from_i64(vec!["T2".into(), "T3".into()], vec![2, -1]));
    }

    #[test]
    fn empty_complex_has_zero_euler_class() {
        let oc = samples::standard_orbit_category();
        let x = LabeledComplex::from_parts(oc, vec![], vec![]).unwrap();
        assert!(x.euler_class().is_zero());
        assert!(x.subdivide().euler_class().is_zero());
    }

    #[test]
    fn single_vertex_euler_class_is_a_unit() {
        let x = samples::single_vertex_space("T3");
        assert_eq!(x.euler_class(), UDVector::from_i64(vec!["T2".into(), "T3".into()], vec![0, 1]));
    }

    #[test]
    fn wrong_restriction_orbit_rejected() {
        // the edge restriction must land in the vertex label; aim it at T3
        let oc = samples::standard_orbit_category();
        let t2 = oc.orbit_id("T2").unwrap();
        let t3 = oc.orbit_id("T3").unwrap();
        let bad = oc.hom(t3, t3)[0];
        let good = oc.hom(t3, t2)[0];
        let err = LabeledComplex::from_parts(
            Arc::clone(&oc),
            vec!["v1".into(), "v2".into()],
            vec![
                vec![
                    Simplex { id: "v1".into(), vertices: vec![0], orbit: t2, restrictions: vec![] },
                    Simplex { id: "v2".into(), vertices: vec![1], orbit: t2, restrictions: vec![] },
                ],
                vec![Simplex {
                    id: "e".into(),
                    vertices: vec![0, 1],
                    orbit: t3,
                    restrictions: vec![bad, good],
                }],
            ],
        )
        .unwrap_err();
        assert!(matches!(err, SpaceError::RestrictionEndpoints { .. }));
    }

    #[test]
    fn missing_face_rejected() {
        let oc = samples::standard_orbit_category();
        let t2 = oc.orbit_id("T2").unwrap();
        let t3 = oc.orbit_id("T3").unwrap();
        let r = oc.hom(t3, t2)[0];
        let err = LabeledComplex::from_parts(
            Arc::clone(&oc),
            vec!["v1".into(), "v2".into()],
            vec![
                vec![Simplex { id: "v1".into(), vertices: vec![0], orbit: t2, restrictions: vec![] }],
                vec![Simplex {
                    id: "e".into(),
                    vertices: vec![0, 1],
                    orbit: t3,
                    restrictions: vec![r, r],
                }],
            ],
        )
        .unwrap_err();
        assert!(matches!(err, SpaceError::MissingVertexSimplex(_)));
    }

    #[test]
    fn inconsistent_codim_two_squares_rejected() {
        let err = samples::broken_triangle_space().unwrap_err();
        assert!(matches!(err, SpaceError::InconsistentRestrictions { .. }));
    }

    #[test]
    fn zigzag_subdivision_matches_hand_computation() {
        let z = samples::zigzag_space();
        let s = z.subdivide();
        assert_eq!(s.level(0).len(), 3);
        assert_eq!(s.level(1).len(), 2);
        let labels: Vec<&str> = s
            .level(0)
            .iter()
            .map(|v| s.oc.orbit(v.orbit).name.as_str())
            .collect();
        assert_eq!(labels, vec!["T2", "T2", "T3"]);
        for e in s.level(1) {
            assert_eq!(s.oc.orbit(e.orbit).name, "T3");
        }
        assert_eq!(s.euler_class(), z.euler_class());
    }

    #[test]
    fn single_vertex_subdivides_to_itself() {
        let x = samples::single_vertex_space("T2");
        let s = x.subdivide();
        assert_eq!(s.level(0).len(), 1);
        assert_eq!(s.dims(), 1);
        assert_eq!(s.vertices, x.vertices);
    }

    #[test]
    fn triangle_subdivision_counts() {
        let x = samples::labeled_triangle_space();
        let s = x.subdivide();
        // 7 barycenters, 2 chains per edge + 6 through the face, 6 faces
        assert_eq!(s.level(0).len(), 7);
        assert_eq!(s.level(1).len(), 12);
        assert_eq!(s.level(2).len(), 6);
        assert_eq!(s.euler_class(), x.euler_class());
        let ss = s.subdivide();
        assert_eq!(ss.euler_class(), x.euler_class());
    }

    #[test]
    fn total_space_of_the_zigzag() {
        let z = samples::zigzag_space();
        let at0 = z.total_space("d0").unwrap();
        assert_eq!(at0.counts(), vec![4, 3]);
        // a connected zigzag: one component, no loops
        assert_eq!(at0.homology(), vec![(1, vec![]), (0, vec![])]);
        let at1 = z.total_space("d1").unwrap();
        assert_eq!(at1.counts(), vec![2, 1]);
        assert!(z.total_space("d7").is_err());
    }

    #[test]
    fn total_space_of_a_vertex_is_its_orbit_value() {
        let x = samples::single_vertex_space("T3");
        assert_eq!(x.total_space("d0").unwrap().counts(), vec![3]);
        assert_eq!(x.total_space("d1").unwrap().counts(), vec![1]);
    }

    #[test]
    fn orbit_point_cell_counts() {
        let z = samples::zigzag_space();
        let at_t3 = z.orbit_point("T3").unwrap();
        assert_eq!(at_t3.counts()[1], 27);
        let at_t2 = z.orbit_point("T2").unwrap();
        assert_eq!(at_t2.counts(), vec![8, 9]);
        assert!(z.orbit_point("T9").is_err());
    }

    #[test]
    fn orbit_point_at_free_orbits_matches_total_space() {
        let z = samples::zigzag_space();
        check_free_orbit_point(&z, "d0").unwrap();
        check_free_orbit_point(&z, "d1").unwrap();
    }

    #[test]
    fn fibers_over_simplices_recover_the_labels() {
        let z = samples::zigzag_space();
        for object in ["d0", "d1"] {
            let d = z.oc.base.object_id(object).unwrap();
            let total = z.total_space(object).unwrap();
            for (dim, level) in [z.level(0), z.level(1)].into_iter().enumerate() {
                for s in level {
                    let prefix = format!("{}:", s.id);
                    let fiber =
                        total.cells[dim].iter().filter(|c| c.starts_with(&prefix)).count();
                    assert_eq!(fiber, z.oc.orbit(s.orbit).functor.set(d).len());
                }
            }
        }
    }

    #[test]
    fn identity_map_validates() {
        let z = Arc::new(samples::zigzag_space());
        let id = EquivariantSelfMap::identity(Arc::clone(&z));
        assert!(id.validate().is_ok());
        let e_carrier = id.carrier((1, 0));
        assert_eq!(e_carrier.sign, 1);
        assert!(!e_carrier.degenerate);
    }

    #[test]
    fn end_swap_validates_and_reverses_the_edge() {
        let (z, swap) = samples::zigzag_with_end_swap();
        let carrier = swap.carrier((1, 0));
        assert_eq!(carrier.target, (1, 0));
        assert_eq!(carrier.sign, -1);
        let v_carrier = swap.carrier((0, 0));
        assert_eq!(v_carrier.target, (0, 1));
        let _ = z;
    }

    #[test]
    fn non_simplicial_vertex_map_rejected() {
        // two disjoint vertices: sending the edge endpoints onto a non-edge
        let oc = samples::standard_orbit_category();
        let t2 = oc.orbit_id("T2").unwrap();
        let x = Arc::new(
            LabeledComplex::from_parts(
                Arc::clone(&oc),
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    vec![
                        Simplex { id: "a".into(), vertices: vec![0], orbit: t2, restrictions: vec![] },
                        Simplex { id: "b".into(), vertices: vec![1], orbit: t2, restrictions: vec![] },
                        Simplex { id: "c".into(), vertices: vec![2], orbit: t2, restrictions: vec![] },
                    ],
                    vec![Simplex {
                        id: "e".into(),
                        vertices: vec![0, 1],
                        orbit: t2,
                        restrictions: vec![oc.identity(t2), oc.identity(t2)],
                    }],
                ],
            )
            .unwrap(),
        );
        let components = vec![vec![oc.identity(t2); 3], vec![oc.identity(t2)]];
        let err =
            EquivariantSelfMap::from_parts(Arc::clone(&x), vec![0, 2, 1], components).unwrap_err();
        assert!(matches!(err, SpaceError::NonSimplicialImage(_)));
    }

    #[test]
    fn composed_restriction_descends_through_faces() {
        let x = samples::labeled_triangle_space();
        let top = (2usize, 0usize);
        let vertex_tuple = vec![0usize];
        let direct = x.composed_restriction(top, &vertex_tuple);
        // both facet chains from the triangle to the vertex give this value
        let tau = x.face_ref(top, 1);
        let step1 = x.simplex(top).restrictions[1];
        let step2 = x.simplex(tau).restrictions[1];
        assert_eq!(x.oc.compose(step2, step1), Some(direct));
    }
}
