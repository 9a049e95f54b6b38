//! Equivariant Lefschetz numbers, invariant-orbit reports and the vanishing
//! criterion: a class coordinate of the Lefschetz number can only be nonzero
//! when some simplex of that orbit class meets its own image.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chains::{
    alternating_hs_trace, build_chain_complex, induced_chain_map, ChainError, CoefficientSystem,
};
use crate::dspace::EquivariantSelfMap;
use crate::orbits::UDVector;

/// Fixed-orbit data of a self-map, per isomorphism class of orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub class: String,
    /// Ids of setwise-invariant simplices carrying an orbit of this class.
    pub invariant_simplices: Vec<String>,
    /// True when every simplex of this class is vertex-disjoint from its
    /// image carrier; this certifies that the class coordinate of the
    /// Lefschetz number vanishes.
    pub disjoint_certificate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    pub lambda: UDVector,
    pub classes: Vec<ClassReport>,
}

impl LefschetzReport {
    /// Classes whose certificate holds but whose coordinate is nonzero.
    /// Always empty; a nonempty result witnesses an implementation bug.
    pub fn violations(&self) -> Vec<String> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(k, report)| {
                report.disjoint_certificate && !self.lambda.entries[*k].is_zero()
            })
            .map(|(_, report)| report.class.clone())
            .collect()
    }
}

/// The equivariant Lefschetz number: the alternating sum of the
/// Hattori-Stallings traces of the induced chain maps with universal
/// coefficients, pushed to the group of orbit classes.
pub fn lefschetz_number(f: &EquivariantSelfMap) -> Result<UDVector, ChainError> {
    let space = &f.space;
    let system = CoefficientSystem::zeta(Arc::clone(&space.oc));
    let complex = build_chain_complex(space, &system)?;
    let induced = induced_chain_map(f, &complex)?;
    alternating_hs_trace(&complex, &induced)
}

/// The classical Lefschetz number of the induced map on the colimit,
/// computed from the constant-coefficient chain complex.
pub fn ordinary_lefschetz(f: &EquivariantSelfMap) -> Result<BigInt, ChainError> {
    let space = &f.space;
    let system = CoefficientSystem::constant(Arc::clone(&space.oc));
    let complex = build_chain_complex(space, &system)?;
    let induced = induced_chain_map(f, &complex)?;
    let mut total = BigInt::zero();
    for (n, m) in induced.z.iter().enumerate() {
        let mut tr = BigInt::zero();
        for i in 0..m.rows() {
            tr += m.get(i, i);
        }
        if n % 2 == 0 {
            total += tr;
        } else {
            total -= tr;
        }
    }
    Ok(total)
}

/// Lists the setwise-invariant simplices per orbit class and computes the
/// per-class disjoint-image certificates alongside the Lefschetz number.
pub fn invariant_orbit_report(f: &EquivariantSelfMap) -> Result<LefschetzReport, ChainError> {
    let space = &f.space;
    let oc = &space.oc;
    let lambda = lefschetz_number(f)?;
    let n_classes = oc.classes().len();
    let mut invariant: Vec<Vec<String>> = vec![Vec::new(); n_classes];
    let mut certificate = vec![true; n_classes];
    for dim in 0..space.dims() {
        for (idx, s) in space.level(dim).iter().enumerate() {
            let class = oc.class_of(s.orbit);
            let carrier = f.carrier((dim, idx));
            if carrier.target == (dim, idx) {
                invariant[class].push(s.id.clone());
            }
            let image = space.simplex(carrier.target);
            let overlaps = s.vertices.iter().any(|v| image.vertices.contains(v));
            if overlaps {
                certificate[class] = false;
            }
        }
    }
    let classes = oc
        .classes()
        .iter()
        .enumerate()
        .map(|(k, c)| ClassReport {
            class: c.representative.clone(),
            invariant_simplices: invariant[k].clone(),
            disjoint_certificate: certificate[k],
        })
        .collect();
    Ok(LefschetzReport { lambda, classes })
}

/// Asserts the vanishing criterion on one map: every class with a disjoint
/// image certificate has Lefschetz coordinate zero. Returns the report; the
/// violation list is empty unless the implementation is wrong.
pub fn theorem_check(f: &EquivariantSelfMap) -> Result<LefschetzReport, ChainError> {
    invariant_orbit_report(f)
}
