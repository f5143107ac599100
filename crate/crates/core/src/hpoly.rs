//! The Yamada polynomial `H(G)` of an abstract multigraph.
//!
//! Two independent routes are provided: [`h_definition`] sums over every
//! edge subset, and [`h_delcon`] runs the deletion–contraction recursion
//! with loop, isthmus, component and cut-vertex shortcuts. The closed forms
//! for trees, cycles, bouquets and theta graphs and the two-vertex gluing
//! formula sit on top.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::graph::{EdgeId, Family, GraphError, MultiGraph, VertexId};
use crate::ring::{LaurentPoly, RingError};

pub const DEFAULT_MAX_SUBSET_EDGES: usize = 24;

/// Graphs up to this many vertices are memoised by canonical form.
pub const MEMO_MAX_VERTICES: usize = 8;
const MEMO_MAX_RELABELINGS: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HError {
    #[error("graph has {edges} edges, above the subset-sum limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("closed form requires a positive size")]
    ZeroSize,
    #[error("inconsistent inputs: {0}")]
    Inexact(#[from] RingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `y = -(A + 2 + A^-1)`, the second argument of `h(G)(x, y)` at `x = -1`.
fn y_value() -> LaurentPoly {
    LaurentPoly::from_coeffs(-1, &[-1, -2, -1])
}

fn minus_sigma() -> LaurentPoly {
    -LaurentPoly::sigma()
}

/// `H(G)` straight from the subset expansion
/// `h(G)(x, y) = Σ_F (-x)^{-|F|} x^{μ(G-F)} y^{β(G-F)}` at `x = -1`,
/// `y = -A - 2 - A^-1`. Every subset, including `∅` and `E`, is summed.
pub fn h_definition(g: &MultiGraph) -> Result<LaurentPoly, HError> {
    h_definition_bounded(g, DEFAULT_MAX_SUBSET_EDGES)
}

pub fn h_definition_bounded(g: &MultiGraph, max_edges: usize) -> Result<LaurentPoly, HError> {
    let q = g.q();
    if q > max_edges || q >= 63 {
        return Err(HError::TooManyEdges { edges: q, limit: max_edges });
    }
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let ends: Vec<(usize, usize)> = g.edges().map(|(_, e)| (index[&e.u], index[&e.v])).collect();
    let p = g.p();

    // Signed count of kept-edge subsets by Betti number.
    let mut by_beta: Vec<i64> = alloc::vec![0; q + 1];
    let mut parent: Vec<usize> = alloc::vec![0; p];
    for mask in 0u64..(1u64 << q) {
        for (i, x) in parent.iter_mut().enumerate() {
            *x = i;
        }
        let mut mu = p;
        let mut kept = 0;
        for (i, &(a, b)) in ends.iter().enumerate() {
            if mask >> i & 1 == 1 {
                continue; // edge i is in F, deleted
            }
            kept += 1;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                mu -= 1;
            }
        }
        let beta = kept + mu - p;
        by_beta[beta] += if mu.is_multiple_of(2) { 1 } else { -1 };
    }

    let y = y_value();
    let mut acc = LaurentPoly::zero();
    let mut y_pow = LaurentPoly::one();
    for &c in &by_beta {
        if c != 0 {
            acc += &y_pow.scale(&BigInt::from(c));
        }
        y_pow = &y_pow * &y;
    }
    Ok(acc)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `H(G)` by deletion–contraction with the default heuristic and a fresh
/// memo table.
pub fn h_delcon(g: &MultiGraph) -> LaurentPoly {
    HCache::new().h(g)
}

/// Memoising evaluator for `H`.
///
/// Keys are canonical forms of connected, loop-free, isthmus-checked
/// subproblems with at most [`MEMO_MAX_VERTICES`] vertices.
#[derive(Debug, Default, Clone)]
pub struct HCache {
    memo: BTreeMap<Vec<u32>, LaurentPoly>,
    enabled: bool,
    hits: u64,
}

impl HCache {
    pub fn new() -> Self {
        Self { memo: BTreeMap::new(), enabled: true, hits: 0 }
    }

    pub fn without_memo() -> Self {
        Self { memo: BTreeMap::new(), enabled: false, hits: 0 }
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn h(&mut self, g: &MultiGraph) -> LaurentPoly {
        // Loops: H(G) = -σ H(G - e).
        let mut g = g.clone();
        let loops: Vec<EdgeId> = g.edges().filter(|(_, e)| e.is_loop()).map(|(id, _)| id).collect();
        for &e in &loops {
            g = g.delete_edge(e).expect("loop edge exists");
        }
        let mut factor = minus_sigma().pow(loops.len() as u32);

        // Isolated vertices contribute H(·) = -1 each.
        let isolated: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 0).collect();
        for &v in &isolated {
            g = g.remove_vertex(v);
        }
        if isolated.len() % 2 == 1 {
            factor = -factor;
        }
        if g.q() == 0 {
            return factor;
        }

        let comps = g.components();
        if comps.len() > 1 {
            let mut acc = factor;
            for c in &comps {
                let hc = self.h(c);
                if hc.is_zero() {
                    return LaurentPoly::zero();
                }
                acc = &acc * &hc;
            }
            return acc;
        }
        &factor * &self.h_connected(&g)
    }

    /// Connected, loop-free graph with at least one edge.
    fn h_connected(&mut self, g: &MultiGraph) -> LaurentPoly {
        let key = if self.enabled {
            g.canonical_key(MEMO_MAX_VERTICES, MEMO_MAX_RELABELINGS)
        } else {
            None
        };
        if let Some(k) = &key {
            if let Some(v) = self.memo.get(k) {
                self.hits += 1;
                return v.clone();
            }
        }
        let value = self.h_connected_uncached(g);
        if let Some(k) = key {
            self.memo.insert(k, value.clone());
        }
        value
    }

    fn h_connected_uncached(&mut self, g: &MultiGraph) -> LaurentPoly {
        if g.has_isthmus() {
            return LaurentPoly::zero();
        }
        // One-point unions: H(G1 · G2) = -H(G1) H(G2).
        if let Some((v, pieces)) = g.cut_vertex() {
            let mut acc = LaurentPoly::one();
            for mut piece in pieces {
                piece.insert(v);
                let block = g.induced(&piece);
                let hb = self.h(&block);
                if hb.is_zero() {
                    return hb;
                }
                acc = -(&acc * &hb);
            }
            return -acc;
        }
        let e = pick_from_largest_parallel_class(g);
        let contracted = g.contract_edge(e).expect("non-loop edge");
        let deleted = g.delete_edge(e).expect("edge exists");
        &self.h(&contracted) + &self.h(&deleted)
    }
}

fn pick_from_largest_parallel_class(g: &MultiGraph) -> EdgeId {
    let mut classes: BTreeMap<(VertexId, VertexId), (usize, EdgeId)> = BTreeMap::new();
    for (id, e) in g.edges() {
        let slot = classes.entry((e.u.min(e.v), e.u.max(e.v))).or_insert((0, id));
        slot.0 += 1;
    }
    classes
        .values()
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|&(_, id)| id)
        .expect("graph has an edge")
}

/// Plain deletion–contraction where `pick` chooses the pivot edge at every
/// step; only properties (1)–(3) and (6) are used. Any pivot order must give
/// the same polynomial.
pub fn h_delcon_by<F>(g: &MultiGraph, pick: &mut F) -> LaurentPoly
where
    F: FnMut(&MultiGraph) -> EdgeId,
{
    if g.q() == 0 {
        return if g.p().is_multiple_of(2) { LaurentPoly::one() } else { -LaurentPoly::one() };
    }
    let e = pick(g);
    let edge = g.edge(e).expect("pivot must be an edge of the graph");
    if edge.is_loop() {
        return &minus_sigma() * &h_delcon_by(&g.delete_edge(e).unwrap(), pick);
    }
    if g.is_isthmus(e).unwrap() {
        return LaurentPoly::zero();
    }
    let c = h_delcon_by(&g.contract_edge(e).unwrap(), pick);
    let d = h_delcon_by(&g.delete_edge(e).unwrap(), pick);
    &c + &d
}

/// Closed forms for the four standard families.
pub fn h_closed(kind: Family, k: u32) -> Result<LaurentPoly, HError> {
    if k == 0 {
        return Err(HError::ZeroSize);
    }
    let s = LaurentPoly::sigma();
    Ok(match kind {
        Family::Tree => LaurentPoly::zero(),
        Family::Cycle => s,
        Family::Bouquet => {
            let p = s.pow(k);
            if k.is_multiple_of(2) {
                -p
            } else {
                p
            }
        }
        Family::Theta => {
            // (σ + (-σ)^k) / (σ + 1), always exact.
            let num = &s + &minus_sigma().pow(k);
            let den = &s + &LaurentPoly::one();
            num.try_div(&den)?
        }
        Family::Path => {
            if k == 1 {
                -LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        }
    })
}

/// `H(G1 : G2)` for two graphs sharing exactly the vertices `u, v`, from
/// `H(G_i)` and `H(K_i)` where `K_i` is `G_i` with `u, v` identified:
/// `(1/σ)[H(K1)H(K2) + (σ+1)H(G1)H(G2) + H(K1)H(G2) + H(K2)H(G1)]`.
pub fn h_two_vertex_join(
    h_g1: &LaurentPoly,
    h_k1: &LaurentPoly,
    h_g2: &LaurentPoly,
    h_k2: &LaurentPoly,
) -> Result<LaurentPoly, HError> {
    Ok(two_vertex_join(h_g1, h_k1, h_g2, h_k2)?)
}

pub(crate) fn two_vertex_join(
    g1: &LaurentPoly,
    k1: &LaurentPoly,
    g2: &LaurentPoly,
    k2: &LaurentPoly,
) -> Result<LaurentPoly, RingError> {
    let s = LaurentPoly::sigma();
    let s1 = &s + &LaurentPoly::one();
    let num = &(&(k1 * k2) + &(&s1 * &(g1 * g2))) + &(&(k1 * g2) + &(k2 * g1));
    num.try_div(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> LaurentPoly {
        LaurentPoly::sigma()
    }

    fn both(g: &MultiGraph) -> LaurentPoly {
        let a = h_definition(g).unwrap();
        let b = h_delcon(g);
        assert_eq!(a, b);
        b
    }

    #[test]
    fn single_vertex_is_minus_one() {
        assert_eq!(both(&MultiGraph::with_vertices(1)), -LaurentPoly::one());
    }

    #[test]
    fn cycle_is_sigma() {
        assert_eq!(both(&MultiGraph::family(Family::Cycle, 3)), sigma());
    }

    #[test]
    fn bouquet_two() {
        assert_eq!(both(&MultiGraph::family(Family::Bouquet, 2)), -sigma().pow(2));
    }

    #[test]
    fn trees_vanish() {
        for q in 1..6 {
            assert!(both(&MultiGraph::family(Family::Tree, q)).is_zero());
        }
    }

    #[test]
    fn theta_three() {
        let expected = &sigma() * &(&LaurentPoly::one() - &sigma());
        assert_eq!(both(&MultiGraph::family(Family::Theta, 3)), expected);
    }

    #[test]
    fn disjoint_cycles_multiply() {
        let (g, _) = MultiGraph::family(Family::Cycle, 3).disjoint_union(&MultiGraph::family(Family::Cycle, 4));
        assert_eq!(both(&g), sigma().pow(2));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(h_closed(Family::Theta, 2).unwrap(), sigma());
        assert!(h_closed(Family::Theta, 1).unwrap().is_zero());
        assert_eq!(h_closed(Family::Bouquet, 3).unwrap(), sigma().pow(3));
        assert_eq!(h_closed(Family::Cycle, 0), Err(HError::ZeroSize));
    }

    #[test]
    fn subset_guard() {
        let g = MultiGraph::family(Family::Bouquet, 5);
        assert_eq!(h_definition_bounded(&g, 4), Err(HError::TooManyEdges { edges: 5, limit: 4 }));
    }

    #[test]
    fn join_of_two_edges_is_digon() {
        let zero = LaurentPoly::zero();
        let s = sigma();
        assert_eq!(h_two_vertex_join(&zero, &s, &zero, &s).unwrap(), s);
    }

    #[test]
    fn join_theta_two_with_edge() {
        let t2 = h_closed(Family::Theta, 2).unwrap();
        let b2 = h_closed(Family::Bouquet, 2).unwrap();
        let got = h_two_vertex_join(&t2, &b2, &LaurentPoly::zero(), &sigma()).unwrap();
        assert_eq!(got, h_delcon(&MultiGraph::family(Family::Theta, 3)));
    }

    #[test]
    fn join_with_bare_pair_is_identity() {
        // G2 = two isolated terminals: H(G2) = 1, H(K2) = -1.
        let mut g1 = MultiGraph::family(Family::Theta, 2);
        let x = g1.add_fresh_vertex();
        g1.add_edge(0, x).unwrap();
        g1.add_edge(x, 1).unwrap();
        let hg1 = h_delcon(&g1);
        let hk1 = h_delcon(&g1.identify_vertices(0, 1).unwrap());
        let one = LaurentPoly::one();
        assert_eq!(h_two_vertex_join(&hg1, &hk1, &one, &-one.clone()).unwrap(), hg1);
    }

    #[test]
    fn inconsistent_join_inputs_rejected() {
        let one = LaurentPoly::one();
        assert!(h_two_vertex_join(&one, &one, &one, &one).is_err());
    }

    #[test]
    fn memo_gets_hits_on_symmetric_graphs() {
        let mut cache = HCache::new();
        let k4 = {
            let mut g = MultiGraph::with_vertices(4);
            for a in 0..4 {
                for b in a + 1..4 {
                    g.add_edge(a, b).unwrap();
                }
            }
            g
        };
        let with = cache.h(&k4);
        assert!(cache.hits() > 0);
        assert_eq!(with, HCache::without_memo().h(&k4));
        assert_eq!(with, h_definition(&k4).unwrap());
    }
}
