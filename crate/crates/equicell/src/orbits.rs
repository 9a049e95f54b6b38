//! Orbits (set-valued diagrams with one-point colimit), the finite orbit
//! category they span, isomorphism classes of orbits and integer vectors
//! indexed by those classes.
//!
//! Orbits here take finite discrete values, so homotopy classes of maps
//! between them coincide with the maps themselves and hom-sets are never
//! quotiented.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::fincat::{
    colimit, compose_nat, enumerate_nat_trans, is_iso, FinCategory, FinFunctor, FincatError,
    NatTrans, UnionFind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("functor is empty, its colimit has no points")]
    EmptyColimit,
    #[error("colimit has {classes} points (expected one); class sizes {sizes:?}")]
    DisconnectedColimit { classes: usize, sizes: Vec<usize> },
    #[error("duplicate orbit name `{0}`")]
    DuplicateOrbit(String),
    #[error("unknown orbit `{0}`")]
    UnknownOrbit(String),
    #[error("orbit `{0}` lives over a different base category")]
    BaseMismatch(String),
    #[error(transparent)]
    Fincat(#[from] FincatError),
}

/// A named diagram of finite sets whose colimit is a single point.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub name: String,
    pub functor: FinFunctor,
}

/// Ok exactly when the colimit is one point; the failing partition is
/// reported otherwise.
pub fn validate_orbit(o: &Orbit) -> Result<(), OrbitError> {
    let col = colimit(&o.functor);
    match col.classes.len() {
        0 => Err(OrbitError::EmptyColimit),
        1 => Ok(()),
        n => Err(OrbitError::DisconnectedColimit {
            classes: n,
            sizes: col.classes.iter().map(Vec::len).collect(),
        }),
    }
}

/// The representable orbit hom(d, ·), named `F^<d>`, with the action given
/// by post-composition.
pub fn free_orbit(base: &Arc<FinCategory>, object: &str) -> Result<Orbit, OrbitError> {
    let d = base.object_id(object)?;
    let sets: Vec<Vec<String>> = (0..base.objects().len())
        .map(|d2| base.hom(d, d2).iter().map(|&m| base.morphisms()[m].name.clone()).collect())
        .collect();
    let mut action = Vec::with_capacity(base.morphisms().len());
    for (f, _) in base.morphisms().iter().enumerate() {
        let mor = &base.morphisms()[f];
        let dom_hom = base.hom(d, mor.dom);
        let cod_hom = base.hom(d, mor.cod);
        let images = dom_hom
            .iter()
            .map(|&g| {
                let fg = base.compose(f, g).expect("composable by construction");
                cod_hom.iter().position(|&h| h == fg).expect("hom sets are exhaustive")
            })
            .collect();
        action.push(images);
    }
    let functor = FinFunctor::from_parts(Arc::clone(base), sets, action)?;
    let orbit = Orbit { name: format!("F^{object}"), functor };
    validate_orbit(&orbit)?;
    Ok(orbit)
}

/// A morphism of the orbit category, i.e. a natural transformation between
/// two of its orbits, with a generated stable name.
#[derive(Debug, Clone)]
pub struct OrbitMorphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub nat: NatTrans,
}

/// One isomorphism class of orbits.
#[derive(Debug, Clone)]
pub struct IsoClass {
    /// Lexicographically smallest orbit name in the class.
    pub representative: String,
    /// Member orbit ids, in declaration order.
    pub members: Vec<usize>,
}

/// The full subcategory spanned by a finite list of orbits: every hom-set is
/// enumerated and cached, composition is tabulated, and orbits are
/// partitioned into isomorphism classes.
#[derive(Debug)]
pub struct OrbitCategory {
    pub base: Arc<FinCategory>,
    orbits: Vec<Orbit>,
    orbit_index: HashMap<String, usize>,
    mors: Vec<OrbitMorphism>,
    hom_ids: Vec<Vec<Vec<usize>>>,
    mor_lookup: HashMap<(usize, usize, NatTrans), usize>,
    identity_mor: Vec<usize>,
    compose_table: Vec<Vec<Option<usize>>>,
    class_of: Vec<usize>,
    classes: Vec<IsoClass>,
}

impl OrbitCategory {
    pub fn build(base: Arc<FinCategory>, orbits: Vec<Orbit>) -> Result<Arc<Self>, OrbitError> {
        let mut orbit_index = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            if !Arc::ptr_eq(&o.functor.base, &base) {
                return Err(OrbitError::BaseMismatch(o.name.clone()));
            }
            validate_orbit(o)?;
            if orbit_index.insert(o.name.clone(), i).is_some() {
                return Err(OrbitError::DuplicateOrbit(o.name.clone()));
            }
        }

        let n = orbits.len();
        let mut mors: Vec<OrbitMorphism> = Vec::new();
        let mut hom_ids: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
        let mut identity_mor = vec![0usize; n];
        for src in 0..n {
            for tgt in 0..n {
                let nats = enumerate_nat_trans(&orbits[src].functor, &orbits[tgt].functor)?;
                for (k, nat) in nats.into_iter().enumerate() {
                    let is_identity = src == tgt && nat == NatTrans::identity(&orbits[src].functor);
                    let name = if is_identity {
                        format!("id_{}", orbits[src].name)
                    } else {
                        format!("{}->{}#{}", orbits[src].name, orbits[tgt].name, k)
                    };
                    if is_identity {
                        identity_mor[src] = mors.len();
                    }
                    hom_ids[src][tgt].push(mors.len());
                    mors.push(OrbitMorphism { name, src, tgt, nat });
                }
            }
        }

        let mor_lookup: HashMap<(usize, usize, NatTrans), usize> = mors
            .iter()
            .enumerate()
            .map(|(i, m)| ((m.src, m.tgt, m.nat.clone()), i))
            .collect();

        let total = mors.len();
        let mut compose_table = vec![vec![None; total]; total];
        for f in 0..total {
            for g in 0..total {
                if mors[g].tgt != mors[f].src {
                    continue;
                }
                let nat = compose_nat(&mors[f].nat, &mors[g].nat)?;
                let h = mor_lookup
                    .get(&(mors[g].src, mors[f].tgt, nat))
                    .copied()
                    .expect("hom sets are closed under composition");
                compose_table[f][g] = Some(h);
            }
        }

        // isomorphism classes, witnessed by invertible transformations
        let mut uf = UnionFind::new(n);
        for src in 0..n {
            for tgt in src + 1..n {
                let witnessed = hom_ids[src][tgt]
                    .iter()
                    .any(|&m| is_iso(&orbits[src].functor, &orbits[tgt].functor, &mors[m].nat));
                if witnessed {
                    uf.union(src, tgt);
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<IsoClass> = Vec::new();
        for o in 0..n {
            let root = uf.find(o);
            let class = match (0..o).find(|&p| uf.find(p) == root) {
                Some(p) => class_of[p],
                None => {
                    classes.push(IsoClass { representative: String::new(), members: Vec::new() });
                    classes.len() - 1
                }
            };
            class_of[o] = class;
            classes[class].members.push(o);
        }
        for c in &mut classes {
            c.representative = c
                .members
                .iter()
                .map(|&o| orbits[o].name.clone())
                .min()
                .expect("classes are nonempty");
        }

        Ok(Arc::new(OrbitCategory {
            base,
            orbits,
            orbit_index,
            mors,
            hom_ids,
            mor_lookup,
            identity_mor,
            compose_table,
            class_of,
            classes,
        }))
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_id(&self, name: &str) -> Result<usize, OrbitError> {
        self.orbit_index
            .get(name)
            .copied()
            .ok_or_else(|| OrbitError::UnknownOrbit(name.to_string()))
    }

    pub fn orbit(&self, id: usize) -> &Orbit {
        &self.orbits[id]
    }

    pub fn morphisms(&self) -> &[OrbitMorphism] {
        &self.mors
    }

    pub fn morphism(&self, id: usize) -> &OrbitMorphism {
        &self.mors[id]
    }

    /// Hom-set src -> tgt as flat morphism ids, in enumeration order.
    pub fn hom(&self, src: usize, tgt: usize) -> &[usize] {
        &self.hom_ids[src][tgt]
    }

    pub fn identity(&self, orbit: usize) -> usize {
        self.identity_mor[orbit]
    }

    /// f∘g when the endpoints match.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose_table[f][g]
    }

    /// Flat id of a transformation given by components, if it matches one of
    /// the cached morphisms (it always does when the components are natural).
    pub fn find_morphism(&self, src: usize, tgt: usize, nat: &NatTrans) -> Option<usize> {
        self.mor_lookup.get(&(src, tgt, nat.clone())).copied()
    }

    pub fn is_iso_morphism(&self, id: usize) -> bool {
        let m = &self.mors[id];
        is_iso(&self.orbits[m.src].functor, &self.orbits[m.tgt].functor, &m.nat)
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    pub fn class_of(&self, orbit: usize) -> usize {
        self.class_of[orbit]
    }

    pub fn class_labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.representative.clone()).collect()
    }

    pub fn zero_vector(&self) -> UDVector {
        UDVector {
            labels: self.class_labels(),
            entries: vec![BigInt::zero(); self.classes.len()],
        }
    }

    /// Standard basis vector of the class containing the named orbit.
    pub fn euler_unit(&self, orbit: &str) -> Result<UDVector, OrbitError> {
        let id = self.orbit_id(orbit)?;
        let mut v = self.zero_vector();
        v.entries[self.class_of[id]] = BigInt::from(1);
        Ok(v)
    }
}

/// An integer vector indexed by the isomorphism classes of orbits, in order
/// of first appearance in the orbit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UDVector {
    pub labels: Vec<String>,
    pub entries: Vec<BigInt>,
}

impl UDVector {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn add_assign(&mut self, other: &UDVector) {
        assert_eq!(self.labels, other.labels, "vectors over different class sets");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &UDVector) {
        assert_eq!(self.labels, other.labels, "vectors over different class sets");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
    }

    pub fn scaled(&self, k: i64) -> UDVector {
        UDVector {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn from_i64(labels: Vec<String>, entries: Vec<i64>) -> UDVector {
        UDVector { labels, entries: entries.into_iter().map(BigInt::from).collect() }
    }
}

impl fmt::Display for UDVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&self.entries)
            .map(|(l, e)| format!("{l}: {e}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn t2_is_an_orbit() {
        assert!(validate_orbit(&samples::j_orbit(2)).is_ok());
        assert!(validate_orbit(&samples::j_orbit(3)).is_ok());
    }

    #[test]
    fn disjoint_union_is_rejected_with_partition() {
        let c = samples::arrow_category();
        let mut action = std::collections::HashMap::new();
        action.insert(
            "f".to_string(),
            std::collections::HashMap::from([
                ("a".to_string(), "p".to_string()),
                ("b".to_string(), "q".to_string()),
            ]),
        );
        let f = FinFunctor::new(
            c,
            vec![vec!["a".into(), "b".into()], vec!["p".into(), "q".into()]],
            &action,
        )
        .unwrap();
        let err = validate_orbit(&Orbit { name: "X".into(), functor: f }).unwrap_err();
        assert_eq!(err, OrbitError::DisconnectedColimit { classes: 2, sizes: vec![2, 2] });
    }

    #[test]
    fn free_orbits_over_the_arrow() {
        let c = samples::arrow_category();
        let f1 = free_orbit(&c, "d1").unwrap();
        assert!(f1.functor.set(0).is_empty());
        assert_eq!(f1.functor.set(1), ["id_d1"]);
        let f0 = free_orbit(&c, "d0").unwrap();
        assert_eq!(f0.functor.set(0), ["id_d0"]);
        assert_eq!(f0.functor.set(1), ["f"]);
        assert!(free_orbit(&c, "nope").is_err());
    }

    #[test]
    fn free_orbit_over_one_object() {
        let c = crate::fincat::FinCategory::new(vec!["pt".into()], vec![], vec![]).unwrap();
        let f = free_orbit(&c, "pt").unwrap();
        assert_eq!(f.functor.total_elements(), 1);
    }

    #[test]
    fn orbit_category_hom_counts() {
        let oc = samples::standard_orbit_category();
        let t2 = oc.orbit_id("T2").unwrap();
        let t3 = oc.orbit_id("T3").unwrap();
        assert_eq!(oc.hom(t3, t2).len(), 8);
        assert_eq!(oc.hom(t2, t3).len(), 9);
        assert_eq!(oc.hom(t2, t2).len(), 4);
        assert_eq!(oc.hom(t3, t3).len(), 27);
        assert_eq!(oc.classes().len(), 2);
    }

    #[test]
    fn renamed_copy_shares_class() {
        let c = samples::arrow_category();
        let t2 = samples::j_orbit(2);
        let mut t2r = samples::j_orbit(2);
        t2r.name = "T2r".into();
        let t3 = samples::j_orbit(3);
        let oc = OrbitCategory::build(c, vec![t2, t3, t2r]).unwrap();
        assert_eq!(oc.classes().len(), 2);
        assert_eq!(oc.class_of(0), oc.class_of(2));
        // basis vector of the renamed copy lands on the shared class
        let v = oc.euler_unit("T2r").unwrap();
        assert_eq!(v.entries, vec![BigInt::from(1), BigInt::from(0)]);
        assert_eq!(v.labels, vec!["T2".to_string(), "T3".to_string()]);
    }

    #[test]
    fn single_orbit_single_class() {
        let c = samples::arrow_category();
        let oc = OrbitCategory::build(c, vec![samples::j_orbit(2)]).unwrap();
        assert_eq!(oc.classes().len(), 1);
    }

    #[test]
    fn euler_unit_basis_vectors() {
        let oc = samples::standard_orbit_category();
        assert_eq!(
            oc.euler_unit("T2").unwrap().entries,
            vec![BigInt::from(1), BigInt::from(0)]
        );
        assert_eq!(
            oc.euler_unit("T3").unwrap().entries,
            vec![BigInt::from(0), BigInt::from(1)]
        );
        assert!(oc.euler_unit("T9").is_err());
    }

    #[test]
    fn iso_classes_form_an_equivalence() {
        // reflexive / symmetric / transitive, witnessed on three copies
        let c = samples::arrow_category();
        let mut a = samples::j_orbit(2);
        a.name = "A".into();
        let mut b = samples::j_orbit(2);
        b.name = "B".into();
        let mut d = samples::j_orbit(2);
        d.name = "C".into();
        let oc = OrbitCategory::build(c, vec![a, b, d]).unwrap();
        assert_eq!(oc.classes().len(), 1);
        assert_eq!(oc.classes()[0].representative, "A");
        for src in 0..3 {
            for tgt in 0..3 {
                let has_iso = oc.hom(src, tgt).iter().any(|&m| oc.is_iso_morphism(m));
                assert!(has_iso);
            }
        }
    }

    #[test]
    fn free_orbits_always_validate() {
        for cat in [samples::arrow_category(), samples::chain_category()] {
            for obj in cat.objects().to_vec() {
                let orbit = free_orbit(&cat, &obj).unwrap();
                assert!(validate_orbit(&orbit).is_ok(), "F^{obj} must be an orbit");
            }
        }
    }

    #[test]
    fn composition_closure_via_identity_laws() {
        let oc = samples::standard_orbit_category();
        for (i, m) in oc.morphisms().iter().enumerate() {
            assert_eq!(oc.compose(i, oc.identity(m.src)), Some(i));
            assert_eq!(oc.compose(oc.identity(m.tgt), i), Some(i));
        }
    }
}
