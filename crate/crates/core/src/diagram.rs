//! Planar diagrams of spatial graphs: vertex nodes, four-port crossings and
//! the arcs joining their ports.
//!
//! Crossing ports are numbered 0..3 counterclockwise; the strand through
//! ports 0 and 2 passes over the strand through ports 1 and 3.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::graph::{MultiGraph, VertexId};
use crate::ring::LaurentPoly;

pub type NodeId = u32;
pub type ArcId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("arc {arc} refers to unknown node {node}")]
    UnknownNode { arc: ArcId, node: NodeId },
    #[error("arc {arc} uses port {port} of node {node}, which has only {ports} ports")]
    PortOutOfRange { arc: ArcId, node: NodeId, port: u32, ports: u32 },
    #[error("port {node}.{port} is used by more than one arc")]
    PortReused { node: NodeId, port: u32 },
    #[error("port {node}.{port} is not met by any arc")]
    PortUnmatched { node: NodeId, port: u32 },
    #[error("terminal {0} is not a vertex node")]
    TerminalNotVertex(NodeId),
    #[error("diagram has no terminals")]
    MissingTerminals,
    #[error("crossing {0} has no spin assigned")]
    UnassignedCrossing(NodeId),
    #[error("node {0} is not a vertex node")]
    NotAVertex(NodeId),
    #[error("cannot identify node {0} with itself")]
    IdenticalVertices(NodeId),
    #[error("duplicate node id {0}")]
    DuplicateNode(NodeId),
    #[error("duplicate arc id {0}")]
    DuplicateArc(ArcId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Vertex { degree: u32 },
    Crossing,
}

impl NodeKind {
    pub fn ports(self) -> u32 {
        match self {
            NodeKind::Vertex { degree } => degree,
            NodeKind::Crossing => 4,
        }
    }
}

/// One end of an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub node: NodeId,
    pub port: u32,
}

impl Port {
    pub fn new(node: NodeId, port: u32) -> Self {
        Self { node, port }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Plus,
    Minus,
    Zero,
}

/// Which smoothing a plus spin selects. `Standard` is the calibrated
/// convention; `Flipped` exchanges the two smoothings and exists so tests
/// can check that the calibration actually matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    Flipped,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpinState {
    spins: BTreeMap<NodeId, Spin>,
}

impl SpinState {
    pub fn new() -> Self {
        Self::default()
    }

    /// State number `index` in base 3 over `crossings` (least significant
    /// digit first): digit 0 is plus, 1 is minus, 2 is zero.
    pub fn from_index(crossings: &[NodeId], mut index: u64) -> Self {
        let mut spins = BTreeMap::new();
        for &c in crossings {
            let spin = match index % 3 {
                0 => Spin::Plus,
                1 => Spin::Minus,
                _ => Spin::Zero,
            };
            spins.insert(c, spin);
            index /= 3;
        }
        Self { spins }
    }

    pub fn set(&mut self, crossing: NodeId, spin: Spin) {
        self.spins.insert(crossing, spin);
    }

    pub fn get(&self, crossing: NodeId) -> Option<Spin> {
        self.spins.get(&crossing).copied()
    }
}

/// A spatial graph diagram. Validated on construction, immutable after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialDiagram {
    nodes: BTreeMap<NodeId, NodeKind>,
    arcs: BTreeMap<ArcId, (Port, Port)>,
    terminals: Option<(NodeId, NodeId)>,
}

impl SpatialDiagram {
    pub fn new(
        nodes: BTreeMap<NodeId, NodeKind>,
        arcs: BTreeMap<ArcId, (Port, Port)>,
        terminals: Option<(NodeId, NodeId)>,
    ) -> Result<Self, DiagramError> {
        let d = Self { nodes, arcs, terminals };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut used = BTreeSet::new();
        for (&id, &(a, b)) in &self.arcs {
            for end in [a, b] {
                let kind = self
                    .nodes
                    .get(&end.node)
                    .ok_or(DiagramError::UnknownNode { arc: id, node: end.node })?;
                if end.port >= kind.ports() {
                    return Err(DiagramError::PortOutOfRange {
                        arc: id,
                        node: end.node,
                        port: end.port,
                        ports: kind.ports(),
                    });
                }
                if !used.insert(end) {
                    return Err(DiagramError::PortReused { node: end.node, port: end.port });
                }
            }
        }
        for (&node, kind) in &self.nodes {
            for port in 0..kind.ports() {
                if !used.contains(&Port { node, port }) {
                    return Err(DiagramError::PortUnmatched { node, port });
                }
            }
        }
        if let Some((u, v)) = self.terminals {
            for t in [u, v] {
                if !matches!(self.nodes.get(&t), Some(NodeKind::Vertex { .. })) {
                    return Err(DiagramError::TerminalNotVertex(t));
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, NodeKind)> + '_ {
        self.nodes.iter().map(|(&id, &k)| (id, k))
    }

    pub fn node(&self, id: NodeId) -> Option<NodeKind> {
        self.nodes.get(&id).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (ArcId, Port, Port)> + '_ {
        self.arcs.iter().map(|(&id, &(a, b))| (id, a, b))
    }

    pub fn terminals(&self) -> Option<(NodeId, NodeId)> {
        self.terminals
    }

    /// Crossing ids in ascending order; the order state indices refer to.
    pub fn crossings(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|(_, k)| matches!(k, NodeKind::Crossing))
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.values().filter(|k| matches!(k, NodeKind::Crossing)).count()
    }

    pub fn with_terminals(&self, terminals: Option<(NodeId, NodeId)>) -> Result<Self, DiagramError> {
        Self::new(self.nodes.clone(), self.arcs.clone(), terminals)
    }

    /// The abstract graph and weight of the state `s`, using the calibrated
    /// smoothing convention.
    pub fn resolve(&self, s: &SpinState) -> Result<(MultiGraph, LaurentPoly), DiagramError> {
        self.resolve_with(s, Convention::Standard)
    }

    pub fn resolve_with(
        &self,
        s: &SpinState,
        convention: Convention,
    ) -> Result<(MultiGraph, LaurentPoly), DiagramError> {
        let mut spins = BTreeMap::new();
        let mut weight_exp = 0i64;
        for c in self.crossings() {
            let spin = s.get(c).ok_or(DiagramError::UnassignedCrossing(c))?;
            match spin {
                Spin::Plus => weight_exp += 1,
                Spin::Minus => weight_exp -= 1,
                Spin::Zero => {}
            }
            spins.insert(c, spin);
        }

        // Port partner across a smoothed crossing, or None if the node is a
        // vertex of the resolved graph.
        let through = |p: Port| -> Option<Port> {
            let spin = *spins.get(&p.node)?;
            let plus_pairing = match (spin, convention) {
                (Spin::Zero, _) => return None,
                (Spin::Plus, Convention::Standard) | (Spin::Minus, Convention::Flipped) => true,
                _ => false,
            };
            let partner = if plus_pairing { p.port ^ 1 } else { 3 - p.port };
            Some(Port { node: p.node, port: partner })
        };

        let mut end_of: BTreeMap<Port, (ArcId, Port)> = BTreeMap::new();
        for (&id, &(a, b)) in &self.arcs {
            end_of.insert(a, (id, b));
            end_of.insert(b, (id, a));
        }

        let mut g = MultiGraph::new();
        for (&id, kind) in &self.nodes {
            let is_vertex = match kind {
                NodeKind::Vertex { .. } => true,
                NodeKind::Crossing => spins[&id] == Spin::Zero,
            };
            if is_vertex {
                g.add_vertex(id);
            }
        }

        let mut seen: BTreeSet<ArcId> = BTreeSet::new();
        let starts: Vec<Port> = end_of.keys().copied().filter(|p| through(*p).is_none()).collect();
        for start in starts {
            let (first, _) = end_of[&start];
            if seen.contains(&first) {
                continue;
            }
            let mut cur = start;
            loop {
                let (arc, far) = end_of[&cur];
                seen.insert(arc);
                match through(far) {
                    Some(next) => cur = next,
                    None => {
                        g.add_edge(start.node, far.node).expect("endpoints are graph vertices");
                        break;
                    }
                }
            }
        }

        // Whatever is left forms closed curves through smoothed crossings.
        let mut fresh = self.nodes.keys().next_back().map_or(0, |&m| m + 1);
        let arc_ids: Vec<ArcId> = self.arcs.keys().copied().collect();
        for id in arc_ids {
            if seen.contains(&id) {
                continue;
            }
            let (start, _) = self.arcs[&id];
            let mut cur = start;
            loop {
                let (arc, far) = end_of[&cur];
                seen.insert(arc);
                cur = through(far).expect("closed curves only pass smoothed crossings");
                if cur == start {
                    break;
                }
            }
            g.add_vertex(fresh);
            g.add_edge(fresh, fresh).expect("fresh vertex exists");
            fresh += 1;
        }

        Ok((g, LaurentPoly::monomial(1, weight_exp)))
    }

    /// The graph obtained by making every crossing a vertex; for a
    /// crossing-free diagram this is the underlying abstract graph.
    pub fn underlying_graph(&self) -> MultiGraph {
        let mut s = SpinState::new();
        for c in self.crossings() {
            s.set(c, Spin::Zero);
        }
        self.resolve(&s).expect("every crossing assigned").0
    }

    /// Mirror image. Each crossing is relabelled as seen in a reflected
    /// plane (port `k` becomes `-k mod 4`), which exchanges the two
    /// smoothings just as swapping over and under does, and is an exact
    /// involution on the port data.
    pub fn mirror(&self) -> Self {
        let rotate = |p: Port| match self.nodes[&p.node] {
            NodeKind::Crossing => Port { node: p.node, port: (4 - p.port) % 4 },
            NodeKind::Vertex { .. } => p,
        };
        Self {
            nodes: self.nodes.clone(),
            arcs: self.arcs.iter().map(|(&id, &(a, b))| (id, (rotate(a), rotate(b)))).collect(),
            terminals: self.terminals,
        }
    }

    /// Merges vertex node `b` into vertex node `a`; the ports of `b` are
    /// appended after those of `a`. Terminals naming `b` are redirected to
    /// `a`, and dropped if they would coincide.
    pub fn identify_vertices(&self, a: NodeId, b: NodeId) -> Result<Self, DiagramError> {
        if a == b {
            return Err(DiagramError::IdenticalVertices(a));
        }
        let da = match self.nodes.get(&a) {
            Some(NodeKind::Vertex { degree }) => *degree,
            _ => return Err(DiagramError::NotAVertex(a)),
        };
        let db = match self.nodes.get(&b) {
            Some(NodeKind::Vertex { degree }) => *degree,
            _ => return Err(DiagramError::NotAVertex(b)),
        };
        let mut nodes = self.nodes.clone();
        nodes.remove(&b);
        nodes.insert(a, NodeKind::Vertex { degree: da + db });
        let moved = |p: Port| {
            if p.node == b {
                Port { node: a, port: da + p.port }
            } else {
                p
            }
        };
        let arcs = self.arcs.iter().map(|(&id, &(x, y))| (id, (moved(x), moved(y)))).collect();
        let terminals = self.terminals.and_then(|(u, v)| {
            let u = if u == b { a } else { u };
            let v = if v == b { a } else { v };
            (u != v).then_some((u, v))
        });
        Ok(Self { nodes, arcs, terminals })
    }

    /// Identifies the two terminals. The result has no terminals.
    pub fn close_terminals(&self) -> Result<Self, DiagramError> {
        let (u, v) = self.terminals.ok_or(DiagramError::MissingTerminals)?;
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        let mut d = self.identify_vertices(a, b)?;
        d.terminals = None;
        Ok(d)
    }

    /// Places `other` beside `self`, renumbering its nodes and arcs past
    /// ours. Returns the node renumbering. Terminals of `self` are kept.
    pub fn disjoint_union(&self, other: &Self) -> (Self, BTreeMap<NodeId, NodeId>) {
        let node_base = self.nodes.keys().next_back().map_or(0, |&m| m + 1);
        let arc_base = self.arcs.keys().next_back().map_or(0, |&m| m + 1);
        let map: BTreeMap<NodeId, NodeId> =
            other.nodes.keys().enumerate().map(|(i, &id)| (id, node_base + i as u32)).collect();
        let mut nodes = self.nodes.clone();
        for (&id, &k) in &other.nodes {
            nodes.insert(map[&id], k);
        }
        let mut arcs = self.arcs.clone();
        for (i, &(a, b)) in other.arcs.values().enumerate() {
            let re = |p: Port| Port { node: map[&p.node], port: p.port };
            arcs.insert(arc_base + i as u32, (re(a), re(b)));
        }
        (Self { nodes, arcs, terminals: self.terminals }, map)
    }

    /// Joins `other` to `self` at one vertex: `self_vertex` absorbs
    /// `other_vertex`.
    pub fn one_point_union(
        &self,
        self_vertex: NodeId,
        other: &Self,
        other_vertex: NodeId,
    ) -> Result<Self, DiagramError> {
        if !other.nodes.contains_key(&other_vertex) {
            return Err(DiagramError::NotAVertex(other_vertex));
        }
        let (d, map) = self.disjoint_union(other);
        d.identify_vertices(self_vertex, map[&other_vertex])
    }

    /// Crossing-free drawing of `g`: every edge becomes one arc and every
    /// graph vertex a vertex node with the same id. Ports are assigned in
    /// edge order.
    pub fn from_graph(g: &MultiGraph) -> Self {
        let mut next_port: BTreeMap<VertexId, u32> = g.vertices().map(|v| (v, 0)).collect();
        let mut take = |v: VertexId| {
            let slot = next_port.get_mut(&v).expect("edge endpoint is a vertex");
            let p = Port { node: v, port: *slot };
            *slot += 1;
            p
        };
        let mut arcs = BTreeMap::new();
        for (id, e) in g.edges() {
            let a = take(e.u);
            let b = take(e.v);
            arcs.insert(id, (a, b));
        }
        let nodes = next_port.into_iter().map(|(v, d)| (v, NodeKind::Vertex { degree: d })).collect();
        Self { nodes, arcs, terminals: None }
    }

    /// A single arc between two degree-one terminals.
    pub fn edge() -> Self {
        let nodes = [(0, NodeKind::Vertex { degree: 1 }), (1, NodeKind::Vertex { degree: 1 })];
        let arcs = [(0, (Port::new(0, 0), Port::new(1, 0)))];
        Self {
            nodes: nodes.into_iter().collect(),
            arcs: arcs.into_iter().collect(),
            terminals: Some((0, 1)),
        }
    }

    /// Two terminals `u = 0`, `v = 1` joined by two arcs that cross once,
    /// at crossing 2. Calibrated so that `R = A^-2 σ`.
    pub fn inf_plus() -> Self {
        let nodes = [
            (0, NodeKind::Vertex { degree: 2 }),
            (1, NodeKind::Vertex { degree: 2 }),
            (2, NodeKind::Crossing),
        ];
        let arcs = [
            (0, (Port::new(0, 0), Port::new(2, 0))),
            (1, (Port::new(0, 1), Port::new(2, 3))),
            (2, (Port::new(2, 1), Port::new(1, 0))),
            (3, (Port::new(2, 2), Port::new(1, 1))),
        ];
        Self {
            nodes: nodes.into_iter().collect(),
            arcs: arcs.into_iter().collect(),
            terminals: Some((0, 1)),
        }
    }

    /// Mirror image of [`inf_plus`](Self::inf_plus).
    pub fn inf_minus() -> Self {
        Self::inf_plus().mirror()
    }

    /// A circle with one kink, drawn with a single crossing whose ports are
    /// joined in pairs. The positive kink has `R = A^2 σ`, the negative one
    /// `A^-2 σ`.
    pub fn kinked_circle(positive: bool) -> Self {
        let (a, b) = if positive {
            ((Port::new(0, 0), Port::new(0, 1)), (Port::new(0, 2), Port::new(0, 3)))
        } else {
            ((Port::new(0, 0), Port::new(0, 3)), (Port::new(0, 1), Port::new(0, 2)))
        };
        Self {
            nodes: [(0, NodeKind::Crossing)].into_iter().collect(),
            arcs: [(0, a), (1, b)].into_iter().collect(),
            terminals: None,
        }
    }

    /// A crossing-free circle: one degree-two vertex with a loop arc.
    pub fn circle() -> Self {
        let mut g = MultiGraph::with_vertices(1);
        g.add_edge(0, 0).expect("vertex 0 exists");
        Self::from_graph(&g)
    }
}
