//! The Yamada polynomial `R[g]` of a diagram: the state sum over all spin
//! states, and the closed formulas for cycles, thetas and bouquets of beads.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::diagram::{Convention, DiagramError, NodeId, SpatialDiagram, SpinState};
use crate::hpoly::{two_vertex_join, HCache};
use crate::ring::{LaurentPoly, RingError};

/// Default cap on the number of crossings the state sum accepts.
pub const DEFAULT_MAX_CROSSINGS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YamadaError {
    #[error("diagram has {crossings} crossings, limit is {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("family size must be at least 1")]
    EmptyFamily,
    #[error("closed formula did not clear to a Laurent polynomial")]
    InexactClearing,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `R[d]` by summing over all `3^c` spin states.
pub fn r_state_sum(d: &SpatialDiagram) -> Result<LaurentPoly, YamadaError> {
    r_state_sum_with(d, DEFAULT_MAX_CROSSINGS, Convention::Standard)
}

pub fn r_state_sum_with(
    d: &SpatialDiagram,
    max_crossings: usize,
    convention: Convention,
) -> Result<LaurentPoly, YamadaError> {
    let c = d.crossing_count();
    if c > max_crossings {
        return Err(YamadaError::TooManyCrossings { crossings: c, limit: max_crossings });
    }
    let mut cache = HCache::new();
    r_state_sum_range(d, 0..state_count(d), convention, &mut cache)
}

/// Number of spin states, `3^c`.
pub fn state_count(d: &SpatialDiagram) -> u64 {
    3u64.pow(d.crossing_count() as u32)
}

/// Partial state sum over the state indices in `range`. Summing the
/// results over any partition of `0..state_count(d)` gives `R[d]`.
pub fn r_state_sum_range(
    d: &SpatialDiagram,
    range: Range<u64>,
    convention: Convention,
    cache: &mut HCache,
) -> Result<LaurentPoly, YamadaError> {
    let crossings: Vec<NodeId> = d.crossings();
    let mut total = LaurentPoly::zero();
    for i in range {
        let s = SpinState::from_index(&crossings, i);
        let (g, w) = d.resolve_with(&s, convention)?;
        let h = cache.h(&g);
        if !h.is_zero() {
            total += &w * &h;
        }
    }
    Ok(total)
}

/// `R[g1 : g2]` for diagrams sharing two vertices, from `R[g_i]` and
/// `R[k_i]` where `k_i` is `g_i` with the two vertices identified.
pub fn r_two_vertex_join(
    r_g1: &LaurentPoly,
    r_k1: &LaurentPoly,
    r_g2: &LaurentPoly,
    r_k2: &LaurentPoly,
) -> Result<LaurentPoly, YamadaError> {
    Ok(two_vertex_join(r_g1, r_k1, r_g2, r_k2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Cycle,
    Theta,
    Bouquet,
}

/// A two-terminal diagram placed on each edge of a family graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bead {
    InfPlus,
    InfMinus,
    Diagram(SpatialDiagram),
}

impl Bead {
    pub fn diagram(&self) -> SpatialDiagram {
        match self {
            Bead::InfPlus => SpatialDiagram::inf_plus(),
            Bead::InfMinus => SpatialDiagram::inf_minus(),
            Bead::Diagram(d) => d.clone(),
        }
    }

    /// `(R[g], R[g'])`, where `g'` closes the terminals. The two calibration
    /// beads use their known values without a state sum.
    pub fn values(&self) -> Result<(LaurentPoly, LaurentPoly), YamadaError> {
        match self {
            Bead::InfPlus => Ok((LaurentPoly::sigma().shift(-2), LaurentPoly::sigma())),
            Bead::InfMinus => Ok((LaurentPoly::sigma().shift(2), LaurentPoly::sigma())),
            Bead::Diagram(d) => {
                let closed = d.close_terminals()?;
                Ok((r_state_sum(d)?, r_state_sum(&closed)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: FamilyKind,
    pub size: u32,
    pub bead: Bead,
}

impl FamilySpec {
    pub fn new(family: FamilyKind, size: u32, bead: Bead) -> Self {
        Self { family, size, bead }
    }
}

/// Closed formula for a family whose `i`-th edge carries a bead with
/// values `beads[i] = (R[g_i], R[g_i'])`.
pub fn r_replace(
    family: FamilyKind,
    beads: &[(LaurentPoly, LaurentPoly)],
) -> Result<LaurentPoly, YamadaError> {
    let n = beads.len();
    if n == 0 {
        return Err(YamadaError::EmptyFamily);
    }
    let s = LaurentPoly::sigma();
    let s_pow = s.pow(n as u32 - 1);
    match family {
        FamilyKind::Cycle => {
            // ∏(-R) + σ ∏((R + R')/σ), over the common denominator σ^(n-1).
            let neg: LaurentPoly = beads.iter().map(|(r, _)| -r).product();
            let sums: LaurentPoly = beads.iter().map(|(r, rp)| r + rp).product();
            let num = &(&neg * &s_pow) + &sums;
            num.div_exact(&s_pow).ok_or(YamadaError::InexactClearing)
        }
        FamilyKind::Theta => {
            let s1 = &s + &LaurentPoly::one();
            let primes: LaurentPoly = beads.iter().map(|(_, rp)| rp.clone()).product();
            let mixed: LaurentPoly = beads.iter().map(|(r, rp)| &(&s1 * r) + rp).product();
            let signed = if n.is_multiple_of(2) { primes } else { -&primes };
            let num = &(&signed * &s_pow) + &mixed;
            num.div_exact(&(&s_pow * &s1)).ok_or(YamadaError::InexactClearing)
        }
        FamilyKind::Bouquet => {
            let p: LaurentPoly = beads.iter().map(|(_, rp)| rp.clone()).product();
            Ok(if n % 2 == 1 { p } else { -&p })
        }
    }
}

/// [`r_replace`] with the same bead on every edge.
pub fn r_uniform(spec: &FamilySpec) -> Result<LaurentPoly, YamadaError> {
    if spec.size == 0 {
        return Err(YamadaError::EmptyFamily);
    }
    let v = spec.bead.values()?;
    r_replace(spec.family, &vec![v; spec.size as usize])
}

/// The family graph's edges as vertex pairs, and its vertex count.
fn family_pattern(family: FamilyKind, size: u32) -> (u32, Vec<(NodeId, NodeId)>) {
    match family {
        FamilyKind::Cycle => (size, (0..size).map(|i| (i, (i + 1) % size)).collect()),
        FamilyKind::Theta => (2, vec![(0, 1); size as usize]),
        FamilyKind::Bouquet => (1, vec![(0, 0); size as usize]),
    }
}

/// The explicit diagram of `spec`: `size` copies of the bead glued along
/// the family graph.
pub fn build_replaced_diagram(spec: &FamilySpec) -> Result<SpatialDiagram, YamadaError> {
    let bead = spec.bead.diagram();
    let beads = vec![bead; spec.size as usize];
    build_replaced_diagram_mixed(spec.family, &beads)
}

/// Like [`build_replaced_diagram`] with a separate bead per edge. A theta
/// keeps its two hubs as terminals.
pub fn build_replaced_diagram_mixed(
    family: FamilyKind,
    beads: &[SpatialDiagram],
) -> Result<SpatialDiagram, YamadaError> {
    if beads.is_empty() {
        return Err(YamadaError::EmptyFamily);
    }
    let (hubs, edges) = family_pattern(family, beads.len() as u32);
    let nodes = (0..hubs).map(|i| (i, crate::diagram::NodeKind::Vertex { degree: 0 })).collect();
    let mut d = SpatialDiagram::new(nodes, Default::default(), None)?;
    for (&(x, y), bead) in edges.iter().zip(beads) {
        let (u, v) = bead.terminals().ok_or(DiagramError::MissingTerminals)?;
        let (joined, map) = d.disjoint_union(bead);
        d = joined.identify_vertices(x, map[&u])?;
        d = d.identify_vertices(y, map[&v])?;
    }
    let terminals = (family == FamilyKind::Theta).then_some((0, 1));
    Ok(d.with_terminals(terminals)?)
}
