//! Flow and chain polynomials of edge-labelled multigraphs, and the bridge
//! from the chain polynomial to `H` of graphs whose edges were replaced by
//! two-terminal parts.
//!
//! The chain polynomial is never expanded symbolically. It is evaluated at
//! concrete values of a commutative ring: either [`LaurentPoly`] or its
//! fraction field [`RationalFunction`]. Moving between the two is always an
//! explicit conversion.

use alloc::collections::BTreeMap;
use alloc::string::String;

use num_bigint::BigInt;

use crate::graph::{EdgeId, GraphError, MultiGraph, VertexId};
use crate::hpoly::{self, HCache};
use crate::ring::{LaurentPoly, RationalFunction, RingError};

pub const DEFAULT_MAX_SUBSET_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("edge {0} has no label")]
    UnlabelledEdge(EdgeId),
    #[error("no value assigned to label `{0}`")]
    MissingLabel(String),
    #[error("graph has {edges} edges, above the subset-sum limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("replacement part is not connected")]
    DisconnectedPart,
    #[error("beta coefficient vanishes, gamma is undefined")]
    BetaZero,
    #[error("replacement coefficients violate their defining identities")]
    InconsistentReplacement,
    #[error("composition did not clear to a Laurent polynomial")]
    NonPolynomial,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Commutative ring with unity in which chain polynomials are evaluated.
pub trait CommRing: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(c: &BigInt) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl CommRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn from_int(c: &BigInt) -> Self {
        LaurentPoly::constant(c.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl CommRing for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_int(c: &BigInt) -> Self {
        RationalFunction::from(c.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

/// Flow polynomial `F_G(q)` as an integer polynomial in `q`:
/// edgeless ⇒ 1, isthmus ⇒ 0, loop ⇒ `(q - 1) F(G - e)`,
/// otherwise `F(G/e) - F(G - e)`.
pub fn flow_poly(g: &MultiGraph) -> LaurentPoly {
    let Some((e, edge)) = g.edges().next() else {
        return LaurentPoly::one();
    };
    if edge.is_loop() {
        let q_minus_1 = LaurentPoly::from_coeffs(0, &[-1, 1]);
        return &q_minus_1 * &flow_poly(&g.delete_edge(e).unwrap());
    }
    if g.is_isthmus(e).unwrap() {
        return LaurentPoly::zero();
    }
    &flow_poly(&g.contract_edge(e).unwrap()) - &flow_poly(&g.delete_edge(e).unwrap())
}

/// Horner evaluation of an ordinary integer polynomial at a ring element.
pub fn eval_poly<R: CommRing>(f: &LaurentPoly, x: &R) -> R {
    assert!(f.min_exp().unwrap_or(0) >= 0, "expected an ordinary polynomial");
    let hi = f.max_exp().unwrap_or(0);
    let mut acc = R::zero();
    for k in (0..=hi).rev() {
        acc = acc.mul(x).add(&R::from_int(&f.coeff(k)));
    }
    acc
}

fn label_of(g: &MultiGraph, e: EdgeId) -> Result<&str, ChainError> {
    g.edge(e)?.label.as_deref().ok_or(ChainError::UnlabelledEdge(e))
}

fn check_labels<R>(g: &MultiGraph, assign: &BTreeMap<String, R>) -> Result<(), ChainError> {
    for e in g.edge_ids() {
        let l = label_of(g, e)?;
        if !assign.contains_key(l) {
            return Err(ChainError::MissingLabel(l.into()));
        }
    }
    Ok(())
}

/// `Ch(G)` by the recursive rules: edgeless ⇒ 1, loop `a` ⇒ `(a - w) Ch(G - a)`,
/// non-loop `a` ⇒ `(a - 1) Ch(G - a) + Ch(G / a)`.
pub fn chain_recursive<R: CommRing>(
    g: &MultiGraph,
    assign: &BTreeMap<String, R>,
    w: &R,
) -> Result<R, ChainError> {
    chain_recursive_by(g, assign, w, &mut |g: &MultiGraph| {
        g.edges()
            .find(|(_, e)| e.is_loop())
            .or_else(|| g.edges().next())
            .map(|(id, _)| id)
            .unwrap()
    })
}

/// [`chain_recursive`] with a caller-chosen pivot edge at every step.
pub fn chain_recursive_by<R, F>(
    g: &MultiGraph,
    assign: &BTreeMap<String, R>,
    w: &R,
    pick: &mut F,
) -> Result<R, ChainError>
where
    R: CommRing,
    F: FnMut(&MultiGraph) -> EdgeId,
{
    check_labels(g, assign)?;
    Ok(chain_rec(g, assign, w, pick))
}

fn chain_rec<R, F>(g: &MultiGraph, assign: &BTreeMap<String, R>, w: &R, pick: &mut F) -> R
where
    R: CommRing,
    F: FnMut(&MultiGraph) -> EdgeId,
{
    if g.q() == 0 {
        return R::one();
    }
    let e = pick(g);
    let edge = g.edge(e).expect("pivot must be an edge of the graph");
    let a = &assign[edge.label.as_deref().unwrap()];
    let minus = g.delete_edge(e).unwrap();
    if edge.is_loop() {
        return a.sub(w).mul(&chain_rec(&minus, assign, w, pick));
    }
    let contracted = g.contract_edge(e).unwrap();
    let a_minus_1 = a.sub(&R::one());
    a_minus_1
        .mul(&chain_rec(&minus, assign, w, pick))
        .add(&chain_rec(&contracted, assign, w, pick))
}

/// `Ch(G) = Σ_{Y ⊆ E} F_{G-Y}(1 - w) Π_{a ∈ Y} a`, summed over every subset.
pub fn chain_definition<R: CommRing>(
    g: &MultiGraph,
    assign: &BTreeMap<String, R>,
    w: &R,
) -> Result<R, ChainError> {
    chain_definition_bounded(g, assign, w, DEFAULT_MAX_SUBSET_EDGES)
}

pub fn chain_definition_bounded<R: CommRing>(
    g: &MultiGraph,
    assign: &BTreeMap<String, R>,
    w: &R,
    max_edges: usize,
) -> Result<R, ChainError> {
    let q = g.q();
    if q > max_edges || q >= 63 {
        return Err(ChainError::TooManyEdges { edges: q, limit: max_edges });
    }
    check_labels(g, assign)?;
    let ids = g.edge_ids();
    let values: alloc::vec::Vec<&R> = ids
        .iter()
        .map(|&e| &assign[label_of(g, e).unwrap()])
        .collect();
    let one_minus_w = R::one().sub(w);
    let mut total = R::zero();
    for mask in 0u64..(1u64 << q) {
        let mut rest = g.clone();
        let mut prod = R::one();
        for (i, &e) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rest = rest.delete_edge(e).unwrap();
                prod = prod.mul(values[i]);
            }
        }
        let f = flow_poly(&rest);
        if f.is_zero() || prod.is_zero() {
            continue;
        }
        let fv = eval_poly(&f, &one_minus_w);
        total = total.add(&fv.mul(&prod));
    }
    Ok(total)
}

/// Coefficients describing a two-terminal replacement part `K` with
/// terminals `u, v`; `K'` is `K` with `u, v` identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementData {
    pub alpha: RationalFunction,
    pub beta: RationalFunction,
    pub gamma: RationalFunction,
    pub h_k: LaurentPoly,
    pub h_kprime: LaurentPoly,
}

impl ReplacementData {
    /// From the pair `H(K)`, `H(K')`:
    /// `α = ((σ+1)H(K) + H(K'))/σ`, `β = (H(K) + H(K'))/σ`, `γ = 1 - α/β`.
    pub fn from_h(h_k: LaurentPoly, h_kprime: LaurentPoly) -> Result<Self, ChainError> {
        let s = LaurentPoly::sigma();
        let s1 = &s + &LaurentPoly::one();
        let alpha = RationalFunction::new(&(&s1 * &h_k) + &h_kprime, s.clone())?;
        let beta = RationalFunction::new(&h_k + &h_kprime, s)?;
        if beta.is_zero() {
            return Err(ChainError::BetaZero);
        }
        let gamma = &RationalFunction::one() - &(&alpha / &beta)?;
        let data = Self { alpha, beta, gamma, h_k, h_kprime };
        data.check()?;
        Ok(data)
    }

    /// Re-asserts `H(K') = (σ+1)β - α`, `H(K) = α - β` and `γ = 1 - α/β`.
    pub fn check(&self) -> Result<(), ChainError> {
        let s1 = RationalFunction::from(&LaurentPoly::sigma() + &LaurentPoly::one());
        let kp = &(&s1 * &self.beta) - &self.alpha;
        let k = &self.alpha - &self.beta;
        let g = &RationalFunction::one() - &(&self.alpha / &self.beta)?;
        if kp != RationalFunction::from(self.h_kprime.clone())
            || k != RationalFunction::from(self.h_k.clone())
            || g != self.gamma
        {
            return Err(ChainError::InconsistentReplacement);
        }
        Ok(())
    }

    /// The plain edge: `α = β = 1`, `γ = 0`.
    pub fn plain_edge() -> Self {
        Self::from_h(LaurentPoly::zero(), LaurentPoly::sigma()).expect("edge data is well defined")
    }
}

/// Replacement coefficients of the connected two-terminal graph `(K, u, v)`.
pub fn replacement_data(k: &MultiGraph, u: VertexId, v: VertexId) -> Result<ReplacementData, ChainError> {
    let closed = k.identify_vertices(u, v)?;
    if !k.is_connected() {
        return Err(ChainError::DisconnectedPart);
    }
    let mut cache = HCache::new();
    ReplacementData::from_h(cache.h(k), cache.h(&closed))
}

/// `H(G̃)` for `G` with every edge `a` replaced by the part recorded under
/// its label, computed as `Π β_a · (-1)^{p-q} · Ch(G)` evaluated at
/// `w = -σ` and `a = γ_a`.
pub fn compose_h_via_chain(
    g: &MultiGraph,
    replacements: &BTreeMap<String, ReplacementData>,
) -> Result<LaurentPoly, ChainError> {
    let gammas: BTreeMap<String, RationalFunction> = replacements
        .iter()
        .map(|(l, r)| (l.clone(), r.gamma.clone()))
        .collect();
    let w = RationalFunction::from(-LaurentPoly::sigma());
    let ch = chain_recursive(g, &gammas, &w)?;
    let mut acc = ch;
    for e in g.edge_ids() {
        let data = &replacements[label_of(g, e)?];
        if data.beta.is_zero() {
            return Err(ChainError::BetaZero);
        }
        acc = &acc * &data.beta;
    }
    if (g.p() + g.q()) % 2 == 1 {
        acc = -&acc;
    }
    acc.to_poly().ok_or(ChainError::NonPolynomial)
}

/// Builds `G̃` explicitly, for checking [`compose_h_via_chain`] against a
/// direct `H` computation.
pub fn build_replaced_graph(
    g: &MultiGraph,
    parts: &BTreeMap<String, (MultiGraph, VertexId, VertexId)>,
) -> Result<MultiGraph, ChainError> {
    check_labels(g, parts)?;
    Ok(g.substitute_edges(|_, e| {
        let (k, u, v) = &parts[e.label.as_deref().unwrap()];
        (k, *u, *v)
    })?)
}

/// `(-1)^{p - q} H(G)`, the flow polynomial image of `H` at `q = A + 2 + A^-1`.
pub fn h_as_flow(g: &MultiGraph) -> LaurentPoly {
    let h = hpoly::h_delcon(g);
    if (g.p() + g.q()) % 2 == 1 {
        -h
    } else {
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use alloc::string::ToString;
    use alloc::vec::Vec;

    fn sigma() -> LaurentPoly {
        LaurentPoly::sigma()
    }

    fn labelled(kind: Family, k: u32) -> (MultiGraph, Vec<String>) {
        let base = MultiGraph::family(kind, k);
        let mut g = MultiGraph::new();
        for v in base.vertices() {
            g.add_vertex(v);
        }
        let mut labels = Vec::new();
        for (i, (_, e)) in base.edges().enumerate() {
            let l = alloc::format!("a{}", i + 1);
            g.add_labelled_edge(e.u, e.v, Some(l.clone())).unwrap();
            labels.push(l);
        }
        (g, labels)
    }

    fn q_poly(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, c)
    }

    #[test]
    fn flow_examples() {
        for n in 1..6 {
            assert_eq!(flow_poly(&MultiGraph::family(Family::Cycle, n)), q_poly(&[-1, 1]));
        }
        assert!(flow_poly(&MultiGraph::family(Family::Tree, 3)).is_zero());
        assert_eq!(flow_poly(&MultiGraph::family(Family::Bouquet, 2)), q_poly(&[-1, 1]).pow(2));
    }

    #[test]
    fn cycle_chain_is_product_minus_w() {
        let (g, labels) = labelled(Family::Cycle, 4);
        let vals = [2i64, -3, 5, 7];
        let assign: BTreeMap<String, LaurentPoly> = labels
            .iter()
            .zip(vals)
            .map(|(l, v)| (l.clone(), LaurentPoly::constant(v)))
            .collect();
        let w = LaurentPoly::var();
        let expected = &LaurentPoly::constant(2 * -3 * 5 * 7) - &w;
        assert_eq!(chain_recursive(&g, &assign, &w).unwrap(), expected);
        assert_eq!(chain_definition(&g, &assign, &w).unwrap(), expected);
    }

    #[test]
    fn single_loop() {
        let (g, labels) = labelled(Family::Bouquet, 1);
        let a = sigma();
        let w = LaurentPoly::monomial(3, 2);
        let assign: BTreeMap<_, _> = [(labels[0].clone(), a.clone())].into();
        assert_eq!(chain_recursive(&g, &assign, &w).unwrap(), &a - &w);
    }

    #[test]
    fn theta_chain_example() {
        for s in 1..5u32 {
            let (g, labels) = labelled(Family::Theta, s);
            let vals: Vec<RationalFunction> = (0..s)
                .map(|i| RationalFunction::from(LaurentPoly::from_coeffs(-1, &[i as i64 + 1, 2, -1])))
                .collect();
            let assign: BTreeMap<String, RationalFunction> =
                labels.iter().cloned().zip(vals.iter().cloned()).collect();
            let w = RationalFunction::from(LaurentPoly::from_coeffs(0, &[3, 1]));
            let one = RationalFunction::one();
            let mut p1 = one.clone();
            let mut p2 = one.clone();
            for a in &vals {
                p1 = &p1 * &(a - &w);
                p2 = &p2 * &(a - &one);
            }
            let expected = (&(&p1 - &(&w * &p2)) / &(&one - &w)).unwrap();
            assert_eq!(chain_recursive(&g, &assign, &w).unwrap(), expected);
            assert_eq!(chain_definition(&g, &assign, &w).unwrap(), expected);
        }
    }

    #[test]
    fn bouquet_chain_is_product() {
        let (g, labels) = labelled(Family::Bouquet, 3);
        let assign: BTreeMap<String, LaurentPoly> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), LaurentPoly::monomial(i as i64 + 2, 1)))
            .collect();
        let w = sigma();
        let expected: LaurentPoly = assign.values().map(|a| a - &w).product();
        assert_eq!(chain_definition(&g, &assign, &w).unwrap(), expected);
    }

    #[test]
    fn edgeless_chain_is_one() {
        let g = MultiGraph::with_vertices(3);
        let assign: BTreeMap<String, LaurentPoly> = BTreeMap::new();
        assert!(chain_definition(&g, &assign, &sigma()).unwrap().is_one());
    }

    #[test]
    fn digon_with_twos() {
        let (g, labels) = labelled(Family::Cycle, 2);
        let assign: BTreeMap<String, LaurentPoly> =
            labels.iter().map(|l| (l.clone(), LaurentPoly::constant(2))).collect();
        let got = chain_definition(&g, &assign, &LaurentPoly::zero()).unwrap();
        assert_eq!(got, LaurentPoly::constant(4));
    }

    #[test]
    fn missing_and_unlabelled() {
        let (g, _) = labelled(Family::Cycle, 2);
        let assign: BTreeMap<String, LaurentPoly> = [("a1".to_string(), LaurentPoly::one())].into();
        assert_eq!(
            chain_recursive(&g, &assign, &LaurentPoly::zero()),
            Err(ChainError::MissingLabel("a2".into()))
        );
        let bare = MultiGraph::family(Family::Cycle, 2);
        assert_eq!(
            chain_definition(&bare, &assign, &LaurentPoly::zero()),
            Err(ChainError::UnlabelledEdge(0))
        );
    }

    #[test]
    fn replacement_data_examples() {
        let one = RationalFunction::one();
        let edge = replacement_data(&MultiGraph::family(Family::Tree, 1), 0, 1).unwrap();
        assert_eq!((edge.alpha.clone(), edge.beta.clone()), (one.clone(), one.clone()));
        assert!(edge.gamma.is_zero());

        let path = replacement_data(&MultiGraph::family(Family::Path, 3), 0, 2).unwrap();
        assert_eq!(path.alpha, one);
        assert_eq!(path.beta, one);
        assert!(path.gamma.is_zero());

        let t2 = replacement_data(&MultiGraph::family(Family::Theta, 2), 0, 1).unwrap();
        assert_eq!(t2.alpha, one);
        assert_eq!(t2.beta, RationalFunction::from(&LaurentPoly::one() - &sigma()));
        let expected_gamma =
            RationalFunction::new(sigma(), &sigma() - &LaurentPoly::one()).unwrap();
        assert_eq!(t2.gamma, expected_gamma);
    }

    #[test]
    fn beta_zero_rejected() {
        // An edge with a pendant vertex hanging off u: H(K) = H(K') = 0.
        let mut k = MultiGraph::family(Family::Tree, 1);
        let x = k.add_fresh_vertex();
        k.add_edge(0, x).unwrap();
        assert_eq!(replacement_data(&k, 0, 1), Err(ChainError::BetaZero));
    }

    #[test]
    fn digon_of_thetas_is_theta_four() {
        let (g, labels) = labelled(Family::Cycle, 2);
        let t2 = replacement_data(&MultiGraph::family(Family::Theta, 2), 0, 1).unwrap();
        let reps: BTreeMap<String, ReplacementData> =
            labels.iter().map(|l| (l.clone(), t2.clone())).collect();
        let s = sigma();
        let expected = &s * &(&(&s.pow(2) - &s) + &LaurentPoly::one());
        assert_eq!(compose_h_via_chain(&g, &reps).unwrap(), expected);
    }

    #[test]
    fn cycle_of_plain_edges() {
        for n in 1..6 {
            let (g, labels) = labelled(Family::Cycle, n);
            let reps: BTreeMap<String, ReplacementData> =
                labels.iter().map(|l| (l.clone(), ReplacementData::plain_edge())).collect();
            assert_eq!(compose_h_via_chain(&g, &reps).unwrap(), sigma());
        }
    }

    #[test]
    fn mixed_triangle_matches_explicit_graph() {
        let (g, labels) = labelled(Family::Cycle, 3);
        let edge = (MultiGraph::family(Family::Tree, 1), 0, 1);
        let t2 = (MultiGraph::family(Family::Theta, 2), 0, 1);
        let parts: BTreeMap<String, (MultiGraph, VertexId, VertexId)> = [
            (labels[0].clone(), edge.clone()),
            (labels[1].clone(), edge),
            (labels[2].clone(), t2),
        ]
        .into();
        let reps: BTreeMap<String, ReplacementData> = parts
            .iter()
            .map(|(l, (k, u, v))| (l.clone(), replacement_data(k, *u, *v).unwrap()))
            .collect();
        let explicit = build_replaced_graph(&g, &parts).unwrap();
        assert_eq!(compose_h_via_chain(&g, &reps).unwrap(), hpoly::h_delcon(&explicit));
    }

    #[test]
    fn flow_matches_signed_h() {
        let y = LaurentPoly::from_coeffs(-1, &[1, 2, 1]);
        for g in [
            MultiGraph::family(Family::Theta, 4),
            MultiGraph::family(Family::Cycle, 3),
            MultiGraph::family(Family::Bouquet, 2),
            MultiGraph::with_vertices(2),
        ] {
            let f = eval_poly(&flow_poly(&g), &y);
            assert_eq!(f, h_as_flow(&g));
        }
    }
}
