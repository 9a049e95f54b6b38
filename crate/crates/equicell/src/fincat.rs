//! Finite categories given by total composition tables, finite-set-valued
//! functors, natural transformations and colimits.
//!
//! Objects, morphisms and set elements are named by strings at the interface;
//! internally everything is an index. All enumeration orders follow the
//! declared orders of objects and elements so results are deterministic.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FincatError {
    #[error("duplicate object name `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism name `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("non-composable pair: `{g}` then `{f}` (cod {g_cod} != dom {f_dom})")]
    NonComposablePair { g: String, f: String, g_cod: String, f_dom: String },
    #[error("duplicate composition entry for `{g}` then `{f}`")]
    DuplicateComposite { g: String, f: String },
    #[error("missing composition entry for `{g}` then `{f}`")]
    MissingComposite { g: String, f: String },
    #[error("composite of `{g}` then `{f}` is `{h}`, which has the wrong endpoints")]
    BadCompositeEndpoints { g: String, f: String, h: String },
    #[error("identity law fails: composing `{f}` with `id_{obj}` gives `{got}`")]
    IdentityLaw { f: String, obj: String, got: String },
    #[error("associativity fails on the triple `{h}`, `{g}`, `{f}`")]
    Associativity { h: String, g: String, f: String },
    #[error("functor value for `{elem}` under `{mor}` is not in the codomain set")]
    BadAction { mor: String, elem: String },
    #[error("duplicate element `{elem}` in the set at `{obj}`")]
    DuplicateElement { obj: String, elem: String },
    #[error("unknown element `{elem}` at object `{obj}`")]
    UnknownElement { obj: String, elem: String },
    #[error("action missing or not total for morphism `{0}`")]
    PartialAction(String),
    #[error("functoriality fails: action of `{g}` then `{f}` disagrees with the composite")]
    ActionComposition { g: String, f: String },
    #[error("action of `id_{0}` is not the identity")]
    ActionIdentity(String),
    #[error("functors live over different base categories")]
    BaseMismatch,
    #[error("natural transformation components do not fit between the given functors")]
    ComponentShape,
    #[error("naturality square fails at morphism `{0}`")]
    NotNatural(String),
    #[error("transformations are not composable: component sizes disagree at object index {0}")]
    NonComposableNat(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category: named objects and morphisms plus a total composition
/// table on composable pairs. Identities are the distinguished morphisms
/// named `id_<object>`; they are inserted automatically when absent.
#[derive(Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // compose[f][g] = f∘g, defined when dom(f) == cod(g)
    compose: Vec<Vec<Option<usize>>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

impl FinCategory {
    /// Validates and builds a category. `composition` entries read
    /// "(g, f) composes to h", meaning h = f∘g with g applied first.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        composition: Vec<(String, String, String)>,
    ) -> Result<Arc<FinCategory>, FincatError> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(FincatError::DuplicateObject(o.clone()));
            }
        }

        let mut mors: Vec<Morphism> = Vec::new();
        let mut morphism_index = HashMap::new();
        let push_mor = |mors: &mut Vec<Morphism>,
                            morphism_index: &mut HashMap<String, usize>,
                            m: Morphism|
         -> Result<usize, FincatError> {
            if morphism_index.contains_key(&m.name) {
                return Err(FincatError::DuplicateMorphism(m.name));
            }
            morphism_index.insert(m.name.clone(), mors.len());
            mors.push(m);
            Ok(mors.len() - 1)
        };

        for (name, dom, cod) in morphisms {
            let dom = *object_index
                .get(&dom)
                .ok_or(FincatError::UnknownObject(dom.clone()))?;
            let cod = *object_index
                .get(&cod)
                .ok_or(FincatError::UnknownObject(cod.clone()))?;
            push_mor(&mut mors, &mut morphism_index, Morphism { name, dom, cod })?;
        }

        let mut identities = Vec::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            let id_name = format!("id_{o}");
            let id = match morphism_index.get(&id_name) {
                Some(&m) => {
                    if mors[m].dom != i || mors[m].cod != i {
                        return Err(FincatError::IdentityLaw {
                            f: id_name.clone(),
                            obj: o.clone(),
                            got: "non-endomorphism identity".into(),
                        });
                    }
                    m
                }
                None => push_mor(
                    &mut mors,
                    &mut morphism_index,
                    Morphism { name: id_name, dom: i, cod: i },
                )?,
            };
            identities.push(id);
        }

        let n = mors.len();
        let mut compose: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        for (g, f, h) in composition {
            let g = *morphism_index
                .get(&g)
                .ok_or(FincatError::UnknownMorphism(g.clone()))?;
            let f = *morphism_index
                .get(&f)
                .ok_or(FincatError::UnknownMorphism(f.clone()))?;
            let h = *morphism_index
                .get(&h)
                .ok_or(FincatError::UnknownMorphism(h.clone()))?;
            if mors[g].cod != mors[f].dom {
                return Err(FincatError::NonComposablePair {
                    g: mors[g].name.clone(),
                    f: mors[f].name.clone(),
                    g_cod: objects[mors[g].cod].clone(),
                    f_dom: objects[mors[f].dom].clone(),
                });
            }
            if compose[f][g].is_some() {
                return Err(FincatError::DuplicateComposite {
                    g: mors[g].name.clone(),
                    f: mors[f].name.clone(),
                });
            }
            compose[f][g] = Some(h);
        }

        // identity composites are forced
        for m in 0..n {
            let (dom, cod) = (mors[m].dom, mors[m].cod);
            compose[m][identities[dom]].get_or_insert(m);
            compose[identities[cod]][m].get_or_insert(m);
        }

        let cat = FinCategory {
            objects,
            morphisms: mors,
            identities,
            compose,
            object_index,
            morphism_index,
        };
        cat.check_axioms()?;
        Ok(Arc::new(cat))
    }

    /// Totality, closure, identity and associativity laws; reports the first
    /// violation in declaration order.
    fn check_axioms(&self) -> Result<(), FincatError> {
        let n = self.morphisms.len();
        for g in 0..n {
            for f in 0..n {
                if self.morphisms[g].cod != self.morphisms[f].dom {
                    continue;
                }
                let Some(h) = self.compose[f][g] else {
                    return Err(FincatError::MissingComposite {
                        g: self.morphisms[g].name.clone(),
                        f: self.morphisms[f].name.clone(),
                    });
                };
                if self.morphisms[h].dom != self.morphisms[g].dom
                    || self.morphisms[h].cod != self.morphisms[f].cod
                {
                    return Err(FincatError::BadCompositeEndpoints {
                        g: self.morphisms[g].name.clone(),
                        f: self.morphisms[f].name.clone(),
                        h: self.morphisms[h].name.clone(),
                    });
                }
            }
        }
        for m in 0..n {
            let dom_id = self.identities[self.morphisms[m].dom];
            let cod_id = self.identities[self.morphisms[m].cod];
            for (got, obj) in [
                (self.compose[m][dom_id], self.morphisms[m].dom),
                (self.compose[cod_id][m], self.morphisms[m].cod),
            ] {
                if got != Some(m) {
                    return Err(FincatError::IdentityLaw {
                        f: self.morphisms[m].name.clone(),
                        obj: self.objects[obj].clone(),
                        got: got.map_or("nothing".into(), |h| self.morphisms[h].name.clone()),
                    });
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                if self.morphisms[h].cod != self.morphisms[g].dom {
                    continue;
                }
                for f in 0..n {
                    if self.morphisms[g].cod != self.morphisms[f].dom {
                        continue;
                    }
                    let gh = self.compose[g][h].unwrap();
                    let fg = self.compose[f][g].unwrap();
                    if self.compose[f][gh] != self.compose[fg][h] {
                        return Err(FincatError::Associativity {
                            h: self.morphisms[h].name.clone(),
                            g: self.morphisms[g].name.clone(),
                            f: self.morphisms[f].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_id(&self, name: &str) -> Result<usize, FincatError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| FincatError::UnknownObject(name.to_string()))
    }

    pub fn morphism_id(&self, name: &str) -> Result<usize, FincatError> {
        self.morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| FincatError::UnknownMorphism(name.to_string()))
    }

    pub fn identity(&self, obj: usize) -> usize {
        self.identities[obj]
    }

    /// f∘g when dom(f) = cod(g).
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f][g]
    }

    /// Morphisms d -> d' in declaration order.
    pub fn hom(&self, dom: usize, cod: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].dom == dom && self.morphisms[m].cod == cod)
            .collect()
    }
}

/// Standalone validation entry point mirroring the construction checks;
/// convenient for callers holding raw data.
pub fn validate_category(
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    composition: Vec<(String, String, String)>,
) -> Result<Arc<FinCategory>, FincatError> {
    FinCategory::new(objects, morphisms, composition)
}

/// A functor to finite sets: one finite list of named elements per object and
/// a total action per morphism.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    pub base: Arc<FinCategory>,
    sets: Vec<Vec<String>>,
    // action[m][i] = index in sets[cod(m)] of the image of sets[dom(m)][i]
    action: Vec<Vec<usize>>,
    element_index: Vec<HashMap<String, usize>>,
}

impl FinFunctor {
    /// `action` maps morphism names to per-element images; identity actions
    /// may be omitted. Functoriality is verified.
    pub fn new(
        base: Arc<FinCategory>,
        sets: Vec<Vec<String>>,
        action: &HashMap<String, HashMap<String, String>>,
    ) -> Result<FinFunctor, FincatError> {
        assert_eq!(sets.len(), base.objects().len(), "one element list per object");
        let mut element_index = Vec::with_capacity(sets.len());
        for (obj, elems) in sets.iter().enumerate() {
            let mut idx = HashMap::new();
            for (i, e) in elems.iter().enumerate() {
                if idx.insert(e.clone(), i).is_some() {
                    return Err(FincatError::DuplicateElement {
                        obj: base.objects()[obj].clone(),
                        elem: e.clone(),
                    });
                }
            }
            element_index.push(idx);
        }

        for name in action.keys() {
            base.morphism_id(name)?;
        }

        let mut act = Vec::with_capacity(base.morphisms().len());
        for (m, mor) in base.morphisms().iter().enumerate() {
            let table = action.get(&mor.name);
            let mut images = Vec::with_capacity(sets[mor.dom].len());
            for elem in &sets[mor.dom] {
                let image = match table.and_then(|t| t.get(elem)) {
                    Some(target) => *element_index[mor.cod].get(target).ok_or_else(|| {
                        FincatError::BadAction { mor: mor.name.clone(), elem: elem.clone() }
                    })?,
                    None if m == base.identity(mor.dom) => element_index[mor.dom][elem],
                    None => return Err(FincatError::PartialAction(mor.name.clone())),
                };
                images.push(image);
            }
            act.push(images);
        }

        let f = FinFunctor { base, sets, action: act, element_index };
        f.check_functorial()?;
        Ok(f)
    }

    /// Internal constructor for already-resolved index data.
    pub(crate) fn from_parts(
        base: Arc<FinCategory>,
        sets: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<FinFunctor, FincatError> {
        let element_index = sets
            .iter()
            .map(|elems| {
                elems
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), i))
                    .collect::<HashMap<_, _>>()
            })
            .collect();
        let f = FinFunctor { base, sets, action, element_index };
        f.check_functorial()?;
        Ok(f)
    }

    fn check_functorial(&self) -> Result<(), FincatError> {
        let base = &self.base;
        for (obj, _) in base.objects().iter().enumerate() {
            let id = base.identity(obj);
            if self.action[id].iter().enumerate().any(|(i, &j)| i != j) {
                return Err(FincatError::ActionIdentity(base.objects()[obj].clone()));
            }
        }
        let n = base.morphisms().len();
        for g in 0..n {
            for f in 0..n {
                let Some(h) = base.compose(f, g) else { continue };
                let ok = (0..self.sets[base.morphisms()[g].dom].len())
                    .all(|i| self.action[h][i] == self.action[f][self.action[g][i]]);
                if !ok {
                    return Err(FincatError::ActionComposition {
                        g: base.morphisms()[g].name.clone(),
                        f: base.morphisms()[f].name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn set(&self, obj: usize) -> &[String] {
        &self.sets[obj]
    }

    pub fn action(&self, mor: usize) -> &[usize] {
        &self.action[mor]
    }

    pub fn element_id(&self, obj: usize, name: &str) -> Result<usize, FincatError> {
        self.element_index[obj].get(name).copied().ok_or_else(|| FincatError::UnknownElement {
            obj: self.base.objects()[obj].clone(),
            elem: name.to_string(),
        })
    }

    pub fn total_elements(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    fn same_base(&self, other: &FinFunctor) -> bool {
        Arc::ptr_eq(&self.base, &other.base)
    }
}

/// Components of a natural transformation, one function per object; the
/// source and target functors are supplied by context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn identity(f: &FinFunctor) -> NatTrans {
        NatTrans {
            components: f.sets.iter().map(|s| (0..s.len()).collect()).collect(),
        }
    }
}

pub fn is_natural(src: &FinFunctor, tgt: &FinFunctor, n: &NatTrans) -> bool {
    if n.components.len() != src.sets.len() {
        return false;
    }
    for (obj, comp) in n.components.iter().enumerate() {
        if comp.len() != src.sets[obj].len() || comp.iter().any(|&v| v >= tgt.sets[obj].len()) {
            return false;
        }
    }
    src.base.morphisms().iter().enumerate().all(|(m, mor)| {
        (0..src.sets[mor.dom].len())
            .all(|i| tgt.action[m][n.components[mor.dom][i]] == n.components[mor.cod][src.action[m][i]])
    })
}

/// Every natural transformation src => tgt, in lexicographic order over the
/// declared object and element orders.
pub fn enumerate_nat_trans(src: &FinFunctor, tgt: &FinFunctor) -> Result<Vec<NatTrans>, FincatError> {
    if !src.same_base(tgt) {
        return Err(FincatError::BaseMismatch);
    }
    // flatten the candidate component functions into one odometer
    let slots: Vec<(usize, usize)> = src
        .sets
        .iter()
        .enumerate()
        .flat_map(|(obj, elems)| (0..elems.len()).map(move |i| (obj, i)))
        .collect();
    for (obj, elems) in src.sets.iter().enumerate() {
        if !elems.is_empty() && tgt.sets[obj].is_empty() {
            return Ok(Vec::new());
        }
    }
    let mut digits = vec![0usize; slots.len()];
    let mut out = Vec::new();
    loop {
        let mut n = NatTrans {
            components: src.sets.iter().map(|s| vec![0; s.len()]).collect(),
        };
        for (k, &(obj, i)) in slots.iter().enumerate() {
            n.components[obj][i] = digits[k];
        }
        if is_natural(src, tgt, &n) {
            out.push(n);
        }
        // advance, least-significant slot last so the order is lexicographic
        let mut k = slots.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            let (obj, _) = slots[k];
            digits[k] += 1;
            if digits[k] < tgt.sets[obj].len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// f∘g, objectwise. The caller guarantees that g's target is f's source;
/// component shapes are still checked.
pub fn compose_nat(f: &NatTrans, g: &NatTrans) -> Result<NatTrans, FincatError> {
    if f.components.len() != g.components.len() {
        return Err(FincatError::NonComposableNat(0));
    }
    let mut components = Vec::with_capacity(f.components.len());
    for (obj, (fc, gc)) in f.components.iter().zip(&g.components).enumerate() {
        let mut comp = Vec::with_capacity(gc.len());
        for &v in gc {
            let Some(&w) = fc.get(v) else {
                return Err(FincatError::NonComposableNat(obj));
            };
            comp.push(w);
        }
        components.push(comp);
    }
    Ok(NatTrans { components })
}

/// True iff every component is a bijection.
pub fn is_iso(src: &FinFunctor, tgt: &FinFunctor, n: &NatTrans) -> bool {
    n.components.iter().enumerate().all(|(obj, comp)| {
        if comp.len() != tgt.sets[obj].len() {
            return false;
        }
        let mut seen = vec![false; tgt.sets[obj].len()];
        comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }) && is_natural(src, tgt, n)
}

/// Coequalizer of ⊔_d F(d) under x ~ F(f)(x), by union-find.
#[derive(Debug, Clone)]
pub struct Colimit {
    /// Equivalence classes, each a sorted list of (object, element) indices.
    pub classes: Vec<Vec<(usize, usize)>>,
    /// projections[obj][elem] = class index
    pub projections: Vec<Vec<usize>>,
}

pub fn colimit(f: &FinFunctor) -> Colimit {
    let mut offsets = Vec::with_capacity(f.sets.len());
    let mut total = 0;
    for s in &f.sets {
        offsets.push(total);
        total += s.len();
    }
    let mut uf = UnionFind::new(total);
    for (m, mor) in f.base.morphisms().iter().enumerate() {
        for (i, &j) in f.action[m].iter().enumerate() {
            uf.union(offsets[mor.dom] + i, offsets[mor.cod] + j);
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut projections = Vec::with_capacity(f.sets.len());
    for (obj, s) in f.sets.iter().enumerate() {
        let mut proj = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let root = uf.find(offsets[obj] + i);
            let class = *class_of_root.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[class].push((obj, i));
            proj.push(class);
        }
        projections.push(proj);
    }
    Colimit { classes, projections }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller root so class numbering is stable
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn arrow_category_validates() {
        let c = samples::arrow_category();
        assert_eq!(c.objects().len(), 2);
        assert_eq!(c.morphisms().len(), 3);
        let f = c.morphism_id("f").unwrap();
        let id0 = c.identity(c.object_id("d0").unwrap());
        assert_eq!(c.compose(f, id0), Some(f));
    }

    #[test]
    fn one_object_category_validates() {
        let c = FinCategory::new(vec!["pt".into()], vec![], vec![]).unwrap();
        assert_eq!(c.morphisms().len(), 1);
    }

    #[test]
    fn self_composite_of_noncomposable_arrow_rejected() {
        let err = FinCategory::new(
            vec!["d0".into(), "d1".into()],
            vec![("f".into(), "d0".into(), "d1".into())],
            vec![("f".into(), "f".into(), "f".into())],
        )
        .unwrap_err();
        assert!(matches!(err, FincatError::NonComposablePair { .. }));
    }

    #[test]
    fn missing_composite_detected() {
        let err = FinCategory::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("f".into(), "a".into(), "b".into()),
                ("g".into(), "b".into(), "c".into()),
            ],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, FincatError::MissingComposite { .. }));
    }

    #[test]
    fn bad_associativity_detected() {
        // one object, two non-identity arrows; t∘(t∘t) = t while (t∘t)∘t = s
        let err = FinCategory::new(
            vec!["x".into()],
            vec![("s".into(), "x".into(), "x".into()), ("t".into(), "x".into(), "x".into())],
            vec![
                ("s".into(), "s".into(), "s".into()),
                ("t".into(), "s".into(), "s".into()),
                ("s".into(), "t".into(), "t".into()),
                ("t".into(), "t".into(), "s".into()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, FincatError::Associativity { .. }));
    }

    #[test]
    fn colimit_of_two_points_over_one() {
        let t2 = samples::j_orbit_functor(2);
        let col = colimit(&t2);
        assert_eq!(col.classes.len(), 1);
        assert_eq!(col.projections[0], vec![0, 0]);
    }

    #[test]
    fn colimit_of_empty_functor_is_empty() {
        let c = samples::arrow_category();
        let f = FinFunctor::new(c, vec![vec![], vec![]], &HashMap::new()).unwrap();
        assert!(colimit(&f).classes.is_empty());
    }

    #[test]
    fn colimit_with_two_classes() {
        // F(d0)={a}, F(d1)={p,q}, a↦p: hand union-find gives {a,p} and {q}
        let c = samples::arrow_category();
        let mut action = HashMap::new();
        action.insert("f".to_string(), HashMap::from([("a".to_string(), "p".to_string())]));
        let f = FinFunctor::new(
            c,
            vec![vec!["a".into()], vec!["p".into(), "q".into()]],
            &action,
        )
        .unwrap();
        let col = colimit(&f);
        assert_eq!(col.classes.len(), 2);
        assert_eq!(col.projections[0], vec![0]);
        assert_eq!(col.projections[1], vec![0, 1]);
    }

    #[test]
    fn nat_trans_counts_match_brute_force() {
        let t2 = samples::j_orbit_functor(2);
        let t3 = samples::j_orbit_functor(3);
        assert_eq!(enumerate_nat_trans(&t2, &t2).unwrap().len(), 4);
        assert_eq!(enumerate_nat_trans(&t3, &t2).unwrap().len(), 8);
        assert_eq!(enumerate_nat_trans(&t2, &t3).unwrap().len(), 9);
        assert_eq!(enumerate_nat_trans(&t3, &t3).unwrap().len(), 27);
    }

    #[test]
    fn hom_into_empty_functor_is_empty() {
        let c = samples::arrow_category();
        let t2 = samples::j_orbit_functor(2);
        let empty = FinFunctor::new(c, vec![vec![], vec![]], &HashMap::new()).unwrap();
        assert!(enumerate_nat_trans(&t2, &empty).unwrap().is_empty());
        // and there is exactly one transformation out of the empty functor
        assert_eq!(enumerate_nat_trans(&empty, &t2).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_lexicographic_and_duplicate_free() {
        let t3 = samples::j_orbit_functor(3);
        let all = enumerate_nat_trans(&t3, &t3).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
    }

    #[test]
    fn compose_nat_identity_laws() {
        let t3 = samples::j_orbit_functor(3);
        let t2 = samples::j_orbit_functor(2);
        let id = NatTrans::identity(&t2);
        for g in enumerate_nat_trans(&t3, &t2).unwrap() {
            assert_eq!(compose_nat(&id, &g).unwrap(), g);
        }
        let id3 = NatTrans::identity(&t3);
        for g in enumerate_nat_trans(&t3, &t2).unwrap() {
            assert_eq!(compose_nat(&g, &id3).unwrap(), g);
        }
    }

    #[test]
    fn compose_nat_specific_values() {
        let t3 = samples::j_orbit_functor(3);
        let t2 = samples::j_orbit_functor(2);
        let g = NatTrans { components: vec![vec![0, 1, 1], vec![0]] }; // T3 -> T2
        let f = NatTrans { components: vec![vec![1, 0], vec![0]] }; // T2 -> T2
        let fg = compose_nat(&f, &g).unwrap();
        assert!(is_natural(&t3, &t2, &fg));
        assert_eq!(fg.components[0], vec![1, 0, 0]);
    }

    #[test]
    fn iso_detection() {
        let t2 = samples::j_orbit_functor(2);
        let t3 = samples::j_orbit_functor(3);
        assert!(is_iso(&t2, &t2, &NatTrans::identity(&t2)));
        let swap = NatTrans { components: vec![vec![1, 0], vec![0]] };
        assert!(is_iso(&t2, &t2, &swap));
        for n in enumerate_nat_trans(&t3, &t2).unwrap() {
            assert!(!is_iso(&t3, &t2, &n));
        }
    }

    #[test]
    fn compose_nat_associative_on_hom_sets() {
        let t2 = samples::j_orbit_functor(2);
        let t3 = samples::j_orbit_functor(3);
        let ab = enumerate_nat_trans(&t3, &t2).unwrap();
        let bc = enumerate_nat_trans(&t2, &t3).unwrap();
        let cd = enumerate_nat_trans(&t3, &t2).unwrap();
        for a in &ab {
            for b in &bc {
                for c in &cd {
                    let left = compose_nat(&compose_nat(c, b).unwrap(), a).unwrap();
                    let right = compose_nat(c, &compose_nat(b, a).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn functoriality_violation_rejected() {
        // action of f doesn't respect the composite g∘f in a 3-chain category
        let c = FinCategory::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("f".into(), "a".into(), "b".into()),
                ("g".into(), "b".into(), "c".into()),
                ("h".into(), "a".into(), "c".into()),
            ],
            vec![("f".into(), "g".into(), "h".into())],
        )
        .unwrap();
        let mut action = HashMap::new();
        action.insert("f".to_string(), HashMap::from([("x".to_string(), "y".to_string())]));
        action.insert("g".to_string(), HashMap::from([("y".to_string(), "z1".to_string())]));
        action.insert("h".to_string(), HashMap::from([("x".to_string(), "z2".to_string())]));
        let err = FinFunctor::new(
            c,
            vec![vec!["x".into()], vec!["y".into()], vec!["z1".into(), "z2".into()]],
            &action,
        )
        .unwrap_err();
        assert!(matches!(err, FincatError::ActionComposition { .. }));
    }
}
