//! Equivariant cellular chain complexes. A coefficient system assigns a
//! finitely generated free abelian group to each orbit and an integer matrix
//! to each orbit morphism; a labeled complex then yields one chain group per
//! dimension (a block per simplex) with the boundary assembled from the
//! restriction maps with alternating signs. For the universal system the
//! boundary also exists one level up, as a matrix over the isotropy ring
//! whose entries are signed restriction morphisms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::dspace::{EquivariantSelfMap, LabeledComplex, SimplexRef, SpaceError};
use crate::isotropy::{
    abelianization, hs_rank, hs_trace, CellLabel, IsotropyElement, IsotropyError, MatrixOverI,
    zeta_component_by_id,
};
use crate::matrix::IntMatrix;
use crate::orbits::{OrbitCategory, OrbitError, UDVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("coefficient system map for `{0}` has the wrong shape")]
    MapShape(String),
    #[error("coefficient system action of `id_{0}` is not the identity")]
    NotIdentity(String),
    #[error("coefficient system is not functorial on `{g}` then `{f}`")]
    NotFunctorial { g: String, f: String },
    #[error("coefficient system was built over a different orbit category")]
    SystemMismatch,
    #[error("operation requires the universal coefficient system")]
    WrongSystem,
    #[error("map and complex live on different spaces")]
    SpaceMismatch,
    #[error("induced map fails to commute with the boundary in degree {0}")]
    NotAChainMap(usize),
    #[error(transparent)]
    Isotropy(#[from] IsotropyError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Rank one everywhere, every morphism acting as the identity.
    Constant,
    /// The universal system: the ideal summand of morphisms into each orbit,
    /// morphisms acting by left multiplication.
    ZetaI,
    Custom,
}

/// A functor from the orbit category to finitely generated free abelian
/// groups, given by ranks and integer matrices.
#[derive(Debug)]
pub struct CoefficientSystem {
    pub kind: SystemKind,
    pub oc: Arc<OrbitCategory>,
    ranks: Vec<usize>,
    maps: Vec<IntMatrix>,
    /// For the universal system: per orbit, the morphism ids forming the
    /// basis of its value (all morphisms with that codomain).
    zeta_basis: Option<Vec<Vec<usize>>>,
}

impl CoefficientSystem {
    /// The constant system with value the integers.
    pub fn constant(oc: Arc<OrbitCategory>) -> CoefficientSystem {
        let ranks = vec![1; oc.orbits().len()];
        let maps = vec![IntMatrix::identity(1); oc.morphisms().len()];
        CoefficientSystem { kind: SystemKind::Constant, oc, ranks, maps, zeta_basis: None }
    }

    /// The universal system: the value at an orbit is spanned by all
    /// morphisms into it, and a morphism acts by composition.
    pub fn zeta(oc: Arc<OrbitCategory>) -> CoefficientSystem {
        let n = oc.orbits().len();
        let basis: Vec<Vec<usize>> = (0..n).map(|t| zeta_component_by_id(&oc, t)).collect();
        let position: Vec<std::collections::HashMap<usize, usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, &m)| (m, k)).collect())
            .collect();
        let mut maps = Vec::with_capacity(oc.morphisms().len());
        for f in 0..oc.morphisms().len() {
            let (src, tgt) = (oc.morphism(f).src, oc.morphism(f).tgt);
            let mut m = IntMatrix::zeros(basis[tgt].len(), basis[src].len());
            for (col, &g) in basis[src].iter().enumerate() {
                let fg = oc.compose(f, g).expect("codomain of g is the domain of f");
                m.set(position[tgt][&fg], col, BigInt::from(1));
            }
            maps.push(m);
        }
        let system = CoefficientSystem {
            kind: SystemKind::ZetaI,
            oc,
            ranks: basis.iter().map(Vec::len).collect(),
            maps,
            zeta_basis: Some(basis),
        };
        debug_assert!(system.check_functorial().is_ok());
        system
    }

    /// A user-supplied system; functoriality is verified.
    pub fn new(
        oc: Arc<OrbitCategory>,
        ranks: Vec<usize>,
        maps: Vec<IntMatrix>,
    ) -> Result<CoefficientSystem, ChainError> {
        let system = CoefficientSystem { kind: SystemKind::Custom, oc, ranks, maps, zeta_basis: None };
        system.check_functorial()?;
        Ok(system)
    }

    fn check_functorial(&self) -> Result<(), ChainError> {
        let oc = &self.oc;
        for (f, mor) in oc.morphisms().iter().enumerate() {
            let m = &self.maps[f];
            if m.rows() != self.ranks[mor.tgt] || m.cols() != self.ranks[mor.src] {
                return Err(ChainError::MapShape(mor.name.clone()));
            }
        }
        for orbit in 0..oc.orbits().len() {
            if self.maps[oc.identity(orbit)] != IntMatrix::identity(self.ranks[orbit]) {
                return Err(ChainError::NotIdentity(oc.orbit(orbit).name.clone()));
            }
        }
        for f in 0..oc.morphisms().len() {
            for g in 0..oc.morphisms().len() {
                let Some(h) = oc.compose(f, g) else { continue };
                if self.maps[h] != self.maps[f].mul(&self.maps[g]) {
                    return Err(ChainError::NotFunctorial {
                        g: oc.morphism(g).name.clone(),
                        f: oc.morphism(f).name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self, orbit: usize) -> usize {
        self.ranks[orbit]
    }

    pub fn map(&self, mor: usize) -> &IntMatrix {
        &self.maps[mor]
    }

    pub fn zeta_basis(&self) -> Option<&Vec<Vec<usize>>> {
        self.zeta_basis.as_ref()
    }
}

/// One generator block of a chain group.
#[derive(Debug, Clone)]
pub struct ChainCell {
    pub simplex: SimplexRef,
    pub id: String,
    pub orbit: usize,
}

#[derive(Debug)]
pub struct ChainDegree {
    pub cells: Vec<ChainCell>,
    offsets: Vec<usize>,
    pub total_rank: usize,
}

impl ChainDegree {
    pub fn offset(&self, cell: usize) -> usize {
        self.offsets[cell]
    }
}

/// The cellular chain complex of a labeled complex with coefficients in a
/// system. Boundaries square to zero; this is asserted at construction both
/// on the integer matrices and, for the universal system, on the ring-level
/// matrices.
#[derive(Debug)]
pub struct ChainComplex<'a> {
    pub space: &'a LabeledComplex,
    pub system: &'a CoefficientSystem,
    degrees: Vec<ChainDegree>,
    boundaries_z: Vec<IntMatrix>,
    boundaries_i: Option<Vec<MatrixOverI>>,
}

pub fn build_chain_complex<'a>(
    space: &'a LabeledComplex,
    system: &'a CoefficientSystem,
) -> Result<ChainComplex<'a>, ChainError> {
    if !Arc::ptr_eq(&space.oc, &system.oc) {
        return Err(ChainError::SystemMismatch);
    }
    let oc = &space.oc;
    let mut degrees = Vec::with_capacity(space.dims());
    for dim in 0..space.dims() {
        let mut cells = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for (idx, s) in space.level(dim).iter().enumerate() {
            cells.push(ChainCell { simplex: (dim, idx), id: s.id.clone(), orbit: s.orbit });
            offsets.push(total);
            total += system.rank(s.orbit);
        }
        degrees.push(ChainDegree { cells, offsets, total_rank: total });
    }

    let mut boundaries_z = Vec::new();
    let mut boundaries_i: Option<Vec<MatrixOverI>> =
        matches!(system.kind, SystemKind::ZetaI).then(Vec::new);
    for dim in 1..space.dims() {
        let rows = degrees[dim - 1].total_rank;
        let cols = degrees[dim].total_rank;
        let mut z = IntMatrix::zeros(rows, cols);
        let mut i_level = boundaries_i.as_ref().map(|_| {
            MatrixOverI::new(
                degrees[dim - 1]
                    .cells
                    .iter()
                    .map(|c| CellLabel { id: c.id.clone(), orbit: c.orbit })
                    .collect(),
                degrees[dim]
                    .cells
                    .iter()
                    .map(|c| CellLabel { id: c.id.clone(), orbit: c.orbit })
                    .collect(),
            )
        });
        for (idx, s) in space.level(dim).iter().enumerate() {
            let col0 = degrees[dim].offset(idx);
            for (face_pos, &restriction) in s.restrictions.iter().enumerate() {
                let fref = space.face_ref((dim, idx), face_pos);
                let row0 = degrees[dim - 1].offset(fref.1);
                let block = system.map(restriction);
                let negative = face_pos % 2 == 1;
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = block.get(r, c);
                        if v.is_zero() {
                            continue;
                        }
                        let signed = if negative { -v.clone() } else { v.clone() };
                        z.add_to(row0 + r, col0 + c, &signed);
                    }
                }
                if let Some(mi) = i_level.as_mut() {
                    let sign = if negative { -1 } else { 1 };
                    let entry = IsotropyElement::with_coefficient(restriction, BigInt::from(sign));
                    mi.add(oc, fref.1, idx, &entry)?;
                }
            }
        }
        boundaries_z.push(z);
        if let (Some(list), Some(mi)) = (boundaries_i.as_mut(), i_level) {
            list.push(mi);
        }
    }

    for n in 1..boundaries_z.len() {
        assert!(
            boundaries_z[n - 1].mul(&boundaries_z[n]).is_zero(),
            "integer boundaries must square to zero (degree {n})"
        );
    }
    if let Some(list) = &boundaries_i {
        for n in 1..list.len() {
            assert!(
                list[n - 1].mul(oc, &list[n]).is_zero(),
                "ring-level boundaries must square to zero (degree {n})"
            );
        }
    }

    Ok(ChainComplex { space, system, degrees, boundaries_z, boundaries_i })
}

impl ChainComplex<'_> {
    pub fn degree_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, n: usize) -> Option<&ChainDegree> {
        self.degrees.get(n)
    }

    /// The boundary C_n -> C_{n-1} on the integer level, for n >= 1.
    pub fn boundary_z(&self, n: usize) -> Option<&IntMatrix> {
        if n == 0 {
            return None;
        }
        self.boundaries_z.get(n - 1)
    }

    /// The ring-level boundary for the universal system.
    pub fn boundary_i(&self, n: usize) -> Option<&MatrixOverI> {
        if n == 0 {
            return None;
        }
        self.boundaries_i.as_ref()?.get(n - 1)
    }

    /// Per degree, the list of (orbit, multiplicity) of its cell blocks.
    fn degree_module_spec(&self, n: usize) -> Vec<(String, usize)> {
        let mut counts: Vec<usize> = vec![0; self.space.oc.orbits().len()];
        for cell in &self.degrees[n].cells {
            counts[cell.orbit] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(orbit, &c)| (self.space.oc.orbit(orbit).name.clone(), c))
            .collect()
    }

    /// Domain-orbit grading of the integer basis in degree n: for each basis
    /// column, the orbit at which its basis morphism starts. Only for the
    /// universal system.
    fn domain_grading(&self, n: usize) -> Option<Vec<usize>> {
        let basis = self.system.zeta_basis()?;
        let oc = &self.space.oc;
        let mut grading = Vec::with_capacity(self.degrees[n].total_rank);
        for cell in &self.degrees[n].cells {
            for &m in &basis[cell.orbit] {
                grading.push(oc.morphism(m).src);
            }
        }
        Some(grading)
    }
}

/// Graded integral homology: Betti numbers and torsion coefficients, plus
/// the domain-orbit grading for the universal system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    /// For the universal system: (orbit name, Betti, torsion) of the
    /// subcomplex of basis morphisms starting at that orbit.
    pub by_domain: Option<Vec<(String, usize, Vec<BigInt>)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
}

/// Smith normal form homology of the complex, degree by degree.
pub fn homology(c: &ChainComplex) -> HomologyResult {
    let n_degrees = c.degree_count();
    let mut out = Vec::with_capacity(n_degrees);
    let snfs: Vec<_> = (1..n_degrees)
        .map(|n| c.boundary_z(n).expect("boundary exists").smith_normal_form())
        .collect();
    for n in 0..n_degrees {
        let rank_in = if n == 0 { 0 } else { snfs[n - 1].rank };
        let (rank_out, torsion) = if n + 1 < n_degrees {
            (snfs[n].rank, snfs[n].torsion())
        } else {
            (0, Vec::new())
        };
        let betti = c.degrees[n].total_rank - rank_in - rank_out;

        let by_domain = c.domain_grading(n).map(|grading| {
            let oc = &c.space.oc;
            let mut parts = Vec::new();
            for orbit in 0..oc.orbits().len() {
                let cols: Vec<usize> =
                    (0..grading.len()).filter(|&i| grading[i] == orbit).collect();
                let sub_rank_in = if n == 0 {
                    0
                } else {
                    let upper = c.domain_grading(n - 1).expect("graded in every degree");
                    let rows: Vec<usize> =
                        (0..upper.len()).filter(|&i| upper[i] == orbit).collect();
                    c.boundary_z(n).unwrap().submatrix(&rows, &cols).smith_normal_form().rank
                };
                let (sub_rank_out, sub_torsion) = if n + 1 < n_degrees {
                    let lower = c.domain_grading(n + 1).expect("graded in every degree");
                    let lower_cols: Vec<usize> =
                        (0..lower.len()).filter(|&i| lower[i] == orbit).collect();
                    let snf = c
                        .boundary_z(n + 1)
                        .unwrap()
                        .submatrix(&cols, &lower_cols)
                        .smith_normal_form();
                    (snf.rank, snf.torsion())
                } else {
                    (0, Vec::new())
                };
                parts.push((
                    oc.orbit(orbit).name.clone(),
                    cols.len() - sub_rank_in - sub_rank_out,
                    sub_torsion,
                ));
            }
            parts
        });
        if let Some(parts) = &by_domain {
            let total: usize = parts.iter().map(|(_, b, _)| b).sum();
            debug_assert_eq!(total, betti, "domain grading must refine the Betti number");
        }
        out.push(DegreeHomology { betti, torsion, by_domain });
    }
    HomologyResult { degrees: out }
}

/// Chain-level Euler characteristic through the trace machinery: the
/// alternating sum of the ranks of the chain modules, pushed down to the
/// group of orbit classes by the augmentation.
pub fn chain_chi_hs(c: &ChainComplex) -> Result<UDVector, ChainError> {
    if !matches!(c.system.kind, SystemKind::ZetaI) {
        return Err(ChainError::WrongSystem);
    }
    let oc = &c.space.oc;
    let ab = abelianization(oc);
    let mut rep = IsotropyElement::zero();
    for n in 0..c.degree_count() {
        let class = hs_rank(oc, &ab, &c.degree_module_spec(n))?;
        let signed = if n % 2 == 0 {
            class.representative
        } else {
            class.representative.neg()
        };
        rep = rep.add(&signed);
    }
    Ok(crate::isotropy::augmentation(oc, &rep))
}

/// The matrices a self-map induces on the chain complex, degree by degree.
#[derive(Debug)]
pub struct InducedChainMap {
    pub z: Vec<IntMatrix>,
    pub i_level: Option<Vec<MatrixOverI>>,
}

pub fn induced_chain_map(
    f: &EquivariantSelfMap,
    c: &ChainComplex,
) -> Result<InducedChainMap, ChainError> {
    if !std::ptr::eq(Arc::as_ptr(&f.space), c.space as *const _) {
        return Err(ChainError::SpaceMismatch);
    }
    let oc = &c.space.oc;
    let mut z_maps = Vec::with_capacity(c.degree_count());
    let mut i_maps = c.boundaries_i.as_ref().map(|_| Vec::with_capacity(c.degree_count()));
    for n in 0..c.degree_count() {
        let degree = &c.degrees[n];
        let mut z = IntMatrix::zeros(degree.total_rank, degree.total_rank);
        let labels: Vec<CellLabel> = degree
            .cells
            .iter()
            .map(|cell| CellLabel { id: cell.id.clone(), orbit: cell.orbit })
            .collect();
        let mut mi = i_maps.as_ref().map(|_| MatrixOverI::new(labels.clone(), labels));
        for (idx, cell) in degree.cells.iter().enumerate() {
            let carrier = f.carrier(cell.simplex);
            if carrier.degenerate {
                continue;
            }
            let (tdim, tidx) = carrier.target;
            debug_assert_eq!(tdim, n);
            let u = f.component(cell.simplex);
            let block = c.system.map(u);
            let col0 = degree.offset(idx);
            let row0 = degree.offset(tidx);
            for r in 0..block.rows() {
                for col in 0..block.cols() {
                    let v = block.get(r, col);
                    if !v.is_zero() {
                        let signed = if carrier.sign < 0 { -v.clone() } else { v.clone() };
                        z.add_to(row0 + r, col0 + col, &signed);
                    }
                }
            }
            if let Some(mi) = mi.as_mut() {
                let entry = IsotropyElement::with_coefficient(u, BigInt::from(carrier.sign));
                mi.add(oc, tidx, idx, &entry)?;
            }
        }
        z_maps.push(z);
        if let (Some(list), Some(mi)) = (i_maps.as_mut(), mi) {
            list.push(mi);
        }
    }

    // the squares with the boundaries must commute
    for n in 1..c.degree_count() {
        let boundary = c.boundary_z(n).unwrap();
        if boundary.mul(&z_maps[n]) != z_maps[n - 1].mul(boundary) {
            return Err(ChainError::NotAChainMap(n));
        }
    }
    if let Some(list) = &i_maps {
        for n in 1..c.degree_count() {
            let boundary = c.boundary_i(n).unwrap();
            let lhs = boundary.mul(oc, &list[n]);
            let rhs = list[n - 1].mul(oc, boundary);
            let mut diff_ok = true;
            for row in 0..lhs.row_labels.len() {
                for col in 0..lhs.col_labels.len() {
                    if lhs.entry(row, col) != rhs.entry(row, col) {
                        diff_ok = false;
                    }
                }
            }
            if !diff_ok {
                return Err(ChainError::NotAChainMap(n));
            }
        }
    }

    Ok(InducedChainMap { z: z_maps, i_level: i_maps })
}

/// Alternating sum of the ring-level traces of an induced map, pushed to the
/// group of orbit classes: the trace side of the Euler/Lefschetz formulas.
pub fn alternating_hs_trace(
    c: &ChainComplex,
    induced: &InducedChainMap,
) -> Result<UDVector, ChainError> {
    let oc = &c.space.oc;
    let ab = abelianization(oc);
    let list = induced.i_level.as_ref().ok_or(ChainError::WrongSystem)?;
    let mut rep = IsotropyElement::zero();
    for (n, m) in list.iter().enumerate() {
        let class = hs_trace(&ab, m)?;
        let signed = if n % 2 == 0 {
            class.representative
        } else {
            class.representative.neg()
        };
        rep = rep.add(&signed);
    }
    Ok(crate::isotropy::augmentation(oc, &rep))
}
