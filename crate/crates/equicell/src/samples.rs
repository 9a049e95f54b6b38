//! Canonical small categories, orbits and labeled spaces used by tests, the
//! randomized harnesses and the bundled documents, plus seeded random
//! generators for spaces and equivariant self-maps.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::dspace::{EquivariantSelfMap, LabeledComplex, Simplex, SpaceError};
use crate::fincat::{FinCategory, FinFunctor, NatTrans};
use crate::orbits::{Orbit, OrbitCategory};

/// The arrow category d0 -> d1 (two objects, one non-identity morphism `f`).
pub fn arrow_category() -> Arc<FinCategory> {
    static CELL: OnceLock<Arc<FinCategory>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| {
        FinCategory::new(
            vec!["d0".into(), "d1".into()],
            vec![("f".into(), "d0".into(), "d1".into())],
            vec![],
        )
        .expect("the arrow category is valid")
    }))
}

/// One object, identities only.
pub fn point_category() -> Arc<FinCategory> {
    static CELL: OnceLock<Arc<FinCategory>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| {
        FinCategory::new(vec!["pt".into()], vec![], vec![]).expect("the point category is valid")
    }))
}

/// d0 -> d1 -> d2 with the composite filled in: morphisms a, b and c = b∘a.
pub fn chain_category() -> Arc<FinCategory> {
    static CELL: OnceLock<Arc<FinCategory>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| {
        FinCategory::new(
            vec!["d0".into(), "d1".into(), "d2".into()],
            vec![
                ("a".into(), "d0".into(), "d1".into()),
                ("b".into(), "d1".into(), "d2".into()),
                ("c".into(), "d0".into(), "d2".into()),
            ],
            vec![("a".into(), "b".into(), "c".into())],
        )
        .expect("the chain category is valid")
    }))
}

/// The arrow-category diagram with `k` points over one: x1..xk at d0, a
/// single point p at d1, everything collapsing under `f`.
pub fn j_orbit_functor(k: usize) -> FinFunctor {
    let base = arrow_category();
    let level0: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let mut action = HashMap::new();
    action.insert(
        "f".to_string(),
        level0.iter().map(|e| (e.clone(), "p".to_string())).collect::<HashMap<_, _>>(),
    );
    FinFunctor::new(base, vec![level0, vec!["p".into()]], &action)
        .expect("collapse diagrams are functorial")
}

pub fn j_orbit(k: usize) -> Orbit {
    Orbit { name: format!("T{k}"), functor: j_orbit_functor(k) }
}

/// The orbit category {T2, T3} over the arrow category.
pub fn standard_orbit_category() -> Arc<OrbitCategory> {
    OrbitCategory::build(arrow_category(), vec![j_orbit(2), j_orbit(3)])
        .expect("the standard orbit category is valid")
}

/// The one-point orbit over the point category.
pub fn point_orbit() -> Orbit {
    let base = point_category();
    let functor = FinFunctor::new(base, vec![vec!["*".into()]], &HashMap::new())
        .expect("a single point is functorial");
    Orbit { name: "P".into(), functor }
}

pub fn point_orbit_category() -> Arc<OrbitCategory> {
    OrbitCategory::build(point_category(), vec![point_orbit()])
        .expect("the point orbit category is valid")
}

/// Morphism id for given component index maps, looked up in the cached homs.
fn mor(oc: &OrbitCategory, src: &str, tgt: &str, components: Vec<Vec<usize>>) -> usize {
    let s = oc.orbit_id(src).expect("known orbit");
    let t = oc.orbit_id(tgt).expect("known orbit");
    oc.find_morphism(s, t, &NatTrans { components })
        .expect("the components must form a natural transformation")
}

/// An interval whose two endpoints carry T2 and whose edge carries T3. The
/// two endpoint restrictions differ, so the total space over d0 is a zigzag
/// path with four vertices and three edges.
pub fn zigzag_space() -> LabeledComplex {
    let oc = standard_orbit_category();
    let t2 = oc.orbit_id("T2").unwrap();
    let t3 = oc.orbit_id("T3").unwrap();
    // drop position 0 lands on (v2), drop position 1 on (v1)
    let to_v2 = mor(&oc, "T3", "T2", vec![vec![0, 0, 1], vec![0]]);
    let to_v1 = mor(&oc, "T3", "T2", vec![vec![0, 1, 1], vec![0]]);
    LabeledComplex::from_parts(
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
                restrictions: vec![to_v2, to_v1],
            }],
        ],
    )
    .expect("the zigzag space is valid")
}

/// The zigzag together with the flip that swaps its endpoints, reverses the
/// edge and reverses the zigzag fiberwise.
pub fn zigzag_with_end_swap() -> (Arc<LabeledComplex>, EquivariantSelfMap) {
    let space = Arc::new(zigzag_space());
    let oc = &space.oc;
    let swap_t2 = mor(oc, "T2", "T2", vec![vec![1, 0], vec![0]]);
    let reverse_t3 = mor(oc, "T3", "T3", vec![vec![2, 1, 0], vec![0]]);
    let map = EquivariantSelfMap::from_parts(
        Arc::clone(&space),
        vec![1, 0],
        vec![vec![swap_t2, swap_t2], vec![reverse_t3]],
    )
    .expect("the end swap is equivariant");
    (space, map)
}

/// One vertex carrying the named orbit of the standard orbit category.
pub fn single_vertex_space(orbit: &str) -> LabeledComplex {
    let oc = standard_orbit_category();
    let t = oc.orbit_id(orbit).unwrap();
    LabeledComplex::from_parts(
        Arc::clone(&oc),
        vec!["v".into()],
        vec![vec![Simplex { id: "v".into(), vertices: vec![0], orbit: t, restrictions: vec![] }]],
    )
    .expect("a single labeled vertex is valid")
}

/// A filled triangle: T3 on the face and edges, T2 on the vertices, with one
/// restriction map per dimension step so all squares commute.
pub fn labeled_triangle_space() -> LabeledComplex {
    let oc = standard_orbit_category();
    let t2 = oc.orbit_id("T2").unwrap();
    let t3 = oc.orbit_id("T3").unwrap();
    let down = mor(&oc, "T3", "T3", vec![vec![0, 0, 2], vec![0]]);
    let to_vertex = mor(&oc, "T3", "T2", vec![vec![1, 0, 0], vec![0]]);
    let vertex = |i: usize| Simplex {
        id: format!("u{i}"),
        vertices: vec![i],
        orbit: t2,
        restrictions: vec![],
    };
    let edge = |id: &str, a: usize, b: usize| Simplex {
        id: id.into(),
        vertices: vec![a, b],
        orbit: t3,
        restrictions: vec![to_vertex, to_vertex],
    };
    LabeledComplex::from_parts(
        Arc::clone(&oc),
        vec!["u0".into(), "u1".into(), "u2".into()],
        vec![
            vec![vertex(0), vertex(1), vertex(2)],
            vec![edge("e01", 0, 1), edge("e02", 0, 2), edge("e12", 1, 2)],
            vec![Simplex {
                id: "t".into(),
                vertices: vec![0, 1, 2],
                orbit: t3,
                restrictions: vec![down, down, down],
            }],
        ],
    )
    .expect("the labeled triangle is valid")
}

/// A triangle whose face restrictions disagree over a codimension-two
/// vertex; construction fails validation.
pub fn broken_triangle_space() -> Result<LabeledComplex, SpaceError> {
    let oc = standard_orbit_category();
    let t2 = oc.orbit_id("T2").unwrap();
    let t3 = oc.orbit_id("T3").unwrap();
    let id2 = oc.identity(t2);
    let r0 = mor(&oc, "T3", "T2", vec![vec![0, 0, 0], vec![0]]);
    let r1 = mor(&oc, "T3", "T2", vec![vec![1, 1, 1], vec![0]]);
    let vertex = |i: usize| Simplex {
        id: format!("u{i}"),
        vertices: vec![i],
        orbit: t2,
        restrictions: vec![],
    };
    let edge = |id: &str, a: usize, b: usize| Simplex {
        id: id.into(),
        vertices: vec![a, b],
        orbit: t2,
        restrictions: vec![id2, id2],
    };
    LabeledComplex::from_parts(
        Arc::clone(&oc),
        vec!["u0".into(), "u1".into(), "u2".into()],
        vec![
            vec![vertex(0), vertex(1), vertex(2)],
            vec![edge("e01", 0, 1), edge("e02", 0, 2), edge("e12", 1, 2)],
            vec![Simplex {
                id: "t".into(),
                vertices: vec![0, 1, 2],
                orbit: t3,
                restrictions: vec![r0, r1, r0],
            }],
        ],
    )
}

/// A triangulated circle with `n` vertices over the point category.
pub fn circle_space(n: usize) -> LabeledComplex {
    assert!(n >= 3, "a triangulated circle needs at least three vertices");
    let oc = point_orbit_category();
    let p = oc.orbit_id("P").unwrap();
    let idp = oc.identity(p);
    let vertices: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let vertex_simplices: Vec<Simplex> = (0..n)
        .map(|i| Simplex { id: format!("w{i}"), vertices: vec![i], orbit: p, restrictions: vec![] })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n - 1 {
        edges.push(Simplex {
            id: format!("c{i}"),
            vertices: vec![i, i + 1],
            orbit: p,
            restrictions: vec![idp, idp],
        });
    }
    edges.push(Simplex {
        id: format!("c{}", n - 1),
        vertices: vec![0, n - 1],
        orbit: p,
        restrictions: vec![idp, idp],
    });
    LabeledComplex::from_parts(Arc::clone(&oc), vertices, vec![vertex_simplices, edges])
        .expect("the circle is valid")
}

/// The six-vertex triangulation of the projective plane over the point
/// category; its first homology is pure two-torsion.
pub fn projective_plane_space() -> LabeledComplex {
    let oc = point_orbit_category();
    let p = oc.orbit_id("P").unwrap();
    let idp = oc.identity(p);
    let faces: [[usize; 3]; 10] = [
        [0, 1, 3],
        [0, 1, 4],
        [0, 2, 3],
        [0, 2, 5],
        [0, 4, 5],
        [1, 2, 4],
        [1, 2, 5],
        [1, 3, 5],
        [2, 3, 4],
        [3, 4, 5],
    ];
    let vertices: Vec<String> = (0..6).map(|i| format!("p{i}")).collect();
    let vertex_simplices: Vec<Simplex> = (0..6)
        .map(|i| Simplex { id: format!("p{i}"), vertices: vec![i], orbit: p, restrictions: vec![] })
        .collect();
    let mut edge_set: Vec<Vec<usize>> = Vec::new();
    for f in &faces {
        for pair in [[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]] {
            let pair = pair.to_vec();
            if !edge_set.contains(&pair) {
                edge_set.push(pair);
            }
        }
    }
    edge_set.sort();
    let edges: Vec<Simplex> = edge_set
        .iter()
        .map(|pair| Simplex {
            id: format!("q{}{}", pair[0], pair[1]),
            vertices: pair.clone(),
            orbit: p,
            restrictions: vec![idp, idp],
        })
        .collect();
    let triangles: Vec<Simplex> = faces
        .iter()
        .map(|f| Simplex {
            id: format!("f{}{}{}", f[0], f[1], f[2]),
            vertices: f.to_vec(),
            orbit: p,
            restrictions: vec![idp, idp, idp],
        })
        .collect();
    LabeledComplex::from_parts(Arc::clone(&oc), vertices, vec![vertex_simplices, edges, triangles])
        .expect("the projective plane triangulation is valid")
}

/// Rotation of the `n`-gon by `k` steps, with identity components.
pub fn circle_rotation(space: &Arc<LabeledComplex>, k: usize) -> EquivariantSelfMap {
    let n = space.vertices.len();
    let oc = &space.oc;
    let p = oc.orbit_id("P").unwrap();
    let idp = oc.identity(p);
    let vertex_map: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
    let components = vec![vec![idp; n], vec![idp; n]];
    EquivariantSelfMap::from_parts(Arc::clone(space), vertex_map, components)
        .expect("rotations of the circle are simplicial")
}
