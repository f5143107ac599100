//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yamada_core::diagram::{NodeKind, Port, SpatialDiagram};
use yamada_core::graph::MultiGraph;
use yamada_core::LaurentPoly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multigraph on 1..=max_vertices vertices with exactly `edges` edges,
/// loops and parallel edges allowed. Edge `i` is labelled `a{i}`.
pub fn random_multigraph(rng: &mut impl Rng, max_vertices: u32, edges: usize) -> MultiGraph {
    let p = rng.gen_range(1..=max_vertices);
    let mut g = MultiGraph::with_vertices(p);
    for i in 0..edges {
        let u = rng.gen_range(0..p);
        let v = if rng.gen_bool(0.15) { u } else { rng.gen_range(0..p) };
        g.add_labelled_edge(u, v, Some(format!("a{i}"))).unwrap();
    }
    g
}

pub fn random_laurent(rng: &mut impl Rng, terms: usize, span: i64, bound: i64) -> LaurentPoly {
    (0..terms)
        .map(|_| (rng.gen_range(-span..=span), BigInt::from(rng.gen_range(-bound..=bound))))
        .collect()
}

/// A valid diagram with up to `max_crossings` crossings and a few graph
/// vertices, arcs forming a uniformly random pairing of all ports. When
/// there are at least two vertices the first two are marked as terminals.
pub fn random_diagram(rng: &mut impl Rng, max_crossings: u32) -> SpatialDiagram {
    let crossings = rng.gen_range(0..=max_crossings);
    let vertices = rng.gen_range(0..=3u32);
    let mut nodes = BTreeMap::new();
    let mut ports = Vec::new();
    let mut degrees: Vec<u32> = (0..vertices).map(|_| rng.gen_range(2..=4)).collect();
    if degrees.iter().sum::<u32>() % 2 == 1 {
        degrees[0] += 1;
    }
    for (v, &degree) in (0..).zip(&degrees) {
        nodes.insert(v, NodeKind::Vertex { degree });
        ports.extend((0..degree).map(|k| Port::new(v, k)));
    }
    for c in vertices..vertices + crossings {
        nodes.insert(c, NodeKind::Crossing);
        ports.extend((0..4).map(|k| Port::new(c, k)));
    }
    if ports.is_empty() {
        nodes.insert(0, NodeKind::Vertex { degree: 0 });
    }
    ports.shuffle(rng);
    let arcs: BTreeMap<u32, (Port, Port)> =
        ports.chunks(2).enumerate().map(|(i, pair)| (i as u32, (pair[0], pair[1]))).collect();
    let terminals = (vertices >= 2).then_some((0, 1));
    SpatialDiagram::new(nodes, arcs, terminals).expect("generated diagram is valid")
}
