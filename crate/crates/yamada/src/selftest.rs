//! Pinned values of the library, checked end to end. Each check prints one
//! `PASS`, `FAIL` or `SKIP` line.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use yamada_core::chainpoly::{chain_definition_bounded, chain_recursive};
use yamada_core::diagram::{Convention, SpatialDiagram};
use yamada_core::graph::{EdgeKind, Family, MultiGraph};
use yamada_core::hpoly::{h_closed, h_definition_bounded, h_delcon};
use yamada_core::yamada::{build_replaced_diagram, r_uniform, Bead, FamilyKind, FamilySpec};
use yamada_core::zeros::{bkw_residual, ScanFamily};
use yamada_core::{LaurentPoly, RationalFunction};

use crate::config::Config;
use crate::parallel;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {}", self.name),
            Outcome::Fail(why) => write!(f, "FAIL {}: {why}", self.name),
            Outcome::Skip(why) => write!(f, "SKIP {}: {why}", self.name),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SelftestOptions {
    pub max_crossings: usize,
    pub max_subset_edges: usize,
    /// Crossing convention used by every state sum. Only the standard one
    /// reproduces the pinned values; the other exists to see checks fail.
    pub convention: Convention,
}

impl SelftestOptions {
    pub fn from_config(config: &Config) -> Self {
        Self {
            max_crossings: config.max_crossings,
            max_subset_edges: config.max_subset_edges,
            convention: Convention::Standard,
        }
    }
}

enum Failure {
    Fail(String),
    Skip(String),
}

fn skip(e: impl fmt::Display) -> Failure {
    Failure::Skip(e.to_string())
}

type CheckFn = fn(&SelftestOptions) -> Result<(), Failure>;

fn sigma() -> LaurentPoly {
    LaurentPoly::sigma()
}

fn expect<T: PartialEq + fmt::Display>(what: &str, got: &T, want: &T) -> Result<(), Failure> {
    if got == want {
        Ok(())
    } else {
        Err(Failure::Fail(format!("{what}: got {got}, expected {want}")))
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Fail(what()))
    }
}

fn state_sum(d: &SpatialDiagram, opts: &SelftestOptions) -> Result<LaurentPoly, Failure> {
    if d.crossing_count() > opts.max_crossings {
        return Err(Failure::Skip(format!(
            "{} crossings exceed the limit of {}",
            d.crossing_count(),
            opts.max_crossings
        )));
    }
    parallel::r_state_sum(d, opts.max_crossings, opts.convention).map_err(skip)
}

/// `H(g)` by deletion–contraction, after checking it against the subset sum.
fn h_both(g: &MultiGraph, opts: &SelftestOptions) -> Result<LaurentPoly, Failure> {
    let fast = h_delcon(g);
    let slow = h_definition_bounded(g, opts.max_subset_edges).map_err(skip)?;
    expect("subset sum against deletion-contraction", &slow, &fast)?;
    Ok(fast)
}

fn inf_plus_cycle(n: u32) -> LaurentPoly {
    let s = sigma();
    let a2 = LaurentPoly::monomial(1, -2);
    &(-&(&a2 * &s)).pow(n) + &(&s * &(&a2 + &LaurentPoly::one()).pow(n))
}

fn same_shape(a: &MultiGraph, b: &MultiGraph) -> bool {
    a.canonical_key(8, 720) == b.canonical_key(8, 720)
}

fn graph_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("sigma-coefficients", |_| expect("sigma", &sigma(), &LaurentPoly::from_coeffs(-1, &[1, 1, 1]))),
        ("theta-closure-is-bouquet", |_| {
            for s in 1..=6 {
                let closed = MultiGraph::family(Family::Theta, s).identify_vertices(0, 1).map_err(skip)?;
                ensure(same_shape(&closed, &MultiGraph::family(Family::Bouquet, s)), || format!("s = {s}"))?;
            }
            Ok(())
        }),
        ("tree-edges-are-isthmuses", |_| {
            let t = MultiGraph::family(Family::Tree, 5);
            for e in t.edge_ids() {
                let kind = t.classify_edge(e).map_err(skip)?;
                ensure(kind == EdgeKind::Isthmus, || format!("edge {e} is {kind:?}"))?;
            }
            Ok(())
        }),
        ("theta-3-shape", |_| {
            let g = MultiGraph::family(Family::Theta, 3);
            ensure(g.p() == 2 && g.edge_multiset() == vec![(0, 1); 3], || format!("{g:?}"))
        }),
        ("h-single-vertex", |o| expect("H", &h_both(&MultiGraph::with_vertices(1), o)?, &LaurentPoly::from(-1))),
        ("h-cycle-3", |o| expect("H(C3)", &h_both(&MultiGraph::family(Family::Cycle, 3), o)?, &sigma())),
        ("h-bouquet-2", |o| {
            let want = -&(&sigma() * &sigma());
            expect("H(B2)", &h_both(&MultiGraph::family(Family::Bouquet, 2), o)?, &want)
        }),
        ("h-trees-vanish", |o| {
            for q in 1..=8 {
                expect(&format!("H(T{q})"), &h_both(&MultiGraph::family(Family::Tree, q), o)?, &LaurentPoly::zero())?;
            }
            Ok(())
        }),
        ("h-disjoint-union", |o| {
            let (g, _) = MultiGraph::family(Family::Cycle, 3).disjoint_union(&MultiGraph::family(Family::Cycle, 4));
            expect("H(C3 + C4)", &h_both(&g, o)?, &(&sigma() * &sigma()))
        }),
        ("h-closed-bouquet-3", |_| expect("H(B3)", &h_closed(Family::Bouquet, 3).map_err(skip)?, &sigma().pow(3))),
    ]
}

fn labelled(kind: Family, k: u32) -> (MultiGraph, BTreeMap<String, RationalFunction>) {
    let base = MultiGraph::family(kind, k);
    let mut g = MultiGraph::new();
    for v in base.vertices() {
        g.add_vertex(v);
    }
    let mut assign = BTreeMap::new();
    for (i, (_, e)) in base.edges().enumerate() {
        let label = format!("a{i}");
        g.add_labelled_edge(e.u, e.v, Some(label.clone())).unwrap();
        // Arbitrary but fixed sample values.
        let value = LaurentPoly::from_coeffs(-1, &[i as i64 + 2, -1, 3 - i as i64]);
        assign.insert(label, RationalFunction::from(value));
    }
    (g, assign)
}

fn chain_sample_w() -> RationalFunction {
    RationalFunction::from(LaurentPoly::from_coeffs(0, &[-2, 0, 1]))
}

fn product(assign: &BTreeMap<String, RationalFunction>, f: impl Fn(&RationalFunction) -> RationalFunction) -> RationalFunction {
    assign.values().fold(RationalFunction::one(), |acc, a| &acc * &f(a))
}

fn chain_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("chain-cycle", |o| {
            let w = chain_sample_w();
            for n in 1..=5 {
                let (g, assign) = labelled(Family::Cycle, n);
                let want = &product(&assign, |a| a.clone()) - &w;
                expect(&format!("recursive C{n}"), &chain_recursive(&g, &assign, &w).map_err(skip)?, &want)?;
                let def = chain_definition_bounded(&g, &assign, &w, o.max_subset_edges).map_err(skip)?;
                expect(&format!("subset sum C{n}"), &def, &want)?;
            }
            Ok(())
        }),
        ("chain-theta", |_| {
            let w = chain_sample_w();
            let one = RationalFunction::one();
            for s in 1..=4 {
                let (g, assign) = labelled(Family::Theta, s);
                let num = &product(&assign, |a| a - &w) - &(&w * &product(&assign, |a| a - &one));
                let want = (&num / &(&one - &w)).map_err(skip)?;
                expect(&format!("theta {s}"), &chain_recursive(&g, &assign, &w).map_err(skip)?, &want)?;
            }
            Ok(())
        }),
        ("chain-bouquet", |o| {
            let w = chain_sample_w();
            for q in 1..=5 {
                let (g, assign) = labelled(Family::Bouquet, q);
                let want = product(&assign, |a| a - &w);
                let got = chain_definition_bounded(&g, &assign, &w, o.max_subset_edges).map_err(skip)?;
                expect(&format!("B{q}"), &got, &want)?;
            }
            Ok(())
        }),
        ("chain-edgeless", |_| {
            let got = chain_recursive(&MultiGraph::with_vertices(3), &BTreeMap::new(), &chain_sample_w()).map_err(skip)?;
            expect("Ch", &got, &RationalFunction::one())
        }),
    ]
}

fn diagram_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("mirror-of-inf-plus", |_| {
            ensure(SpatialDiagram::inf_plus().mirror() == SpatialDiagram::inf_minus(), || {
                "mirror differs from the inf- diagram".into()
            })
        }),
        ("r-inf-plus", |o| {
            let want = &LaurentPoly::monomial(1, -2) * &sigma();
            expect("R[inf+]", &state_sum(&SpatialDiagram::inf_plus(), o)?, &want)
        }),
        ("r-inf-plus-closed", |o| {
            let closed = SpatialDiagram::inf_plus().close_terminals().map_err(skip)?;
            expect("R[inf+']", &state_sum(&closed, o)?, &sigma())
        }),
        ("crossing-free-theta-closes-to-bouquet", |_| {
            for s in 1..=5 {
                let d = SpatialDiagram::from_graph(&MultiGraph::family(Family::Theta, s))
                    .with_terminals(Some((0, 1)))
                    .and_then(|d| d.close_terminals())
                    .map_err(skip)?;
                ensure(same_shape(&d.underlying_graph(), &MultiGraph::family(Family::Bouquet, s)), || {
                    format!("s = {s}")
                })?;
            }
            Ok(())
        }),
        ("r-circle", |o| expect("R[circle]", &state_sum(&SpatialDiagram::circle(), o)?, &sigma())),
        ("r-cycle-of-inf-plus", |o| {
            for n in 1..=6 {
                check_family(FamilyKind::Cycle, n, &inf_plus_cycle(n), o)?;
            }
            Ok(())
        }),
        ("r-theta-of-inf-plus", |o| {
            let s1 = &sigma() + &LaurentPoly::one();
            let inner = &(&s1 * &LaurentPoly::monomial(1, -2)) + &LaurentPoly::one();
            for s in 1..=6 {
                let num = &(-sigma()).pow(s) + &(&sigma() * &inner.pow(s));
                let want = num.div_exact(&s1).ok_or_else(|| Failure::Fail(format!("s = {s}: inexact division")))?;
                check_family(FamilyKind::Theta, s, &want, o)?;
            }
            Ok(())
        }),
        ("r-bouquet-of-inf-plus", |o| {
            for q in 1..=6 {
                let sign = if q % 2 == 1 { 1 } else { -1 };
                check_family(FamilyKind::Bouquet, q, &(&sigma().pow(q) * &LaurentPoly::from(sign)), o)?;
            }
            Ok(())
        }),
    ]
}

/// The closed form of a family of `∞₊` beads, and for small sizes the state
/// sum of the explicit diagram.
fn check_family(kind: FamilyKind, size: u32, want: &LaurentPoly, o: &SelftestOptions) -> Result<(), Failure> {
    let spec = FamilySpec::new(kind, size, Bead::InfPlus);
    expect(&format!("{kind:?} {size} closed form"), &r_uniform(&spec).map_err(skip)?, want)?;
    if size <= 3 {
        let d = build_replaced_diagram(&spec).map_err(skip)?;
        expect(&format!("{kind:?} {size} state sum"), &state_sum(&d, o)?, want)?;
    }
    Ok(())
}

/// Signed equal-modulus gap `|1 + σGˢ| - |1 - Gˢ|` for plain thetas.
fn signed_gap(s: u32, z: Complex64) -> f64 {
    let sigma = z + z.inv() + 1.0;
    let gs = (-sigma.inv()).powi(s as i32);
    (sigma * gs + 1.0).norm() - (-gs + 1.0).norm()
}

fn zeros_checks() -> Vec<(&'static str, CheckFn)> {
    vec![("bkw-vanishes-on-the-curve", |_| {
        // Find a point of the equal-modulus curve on a circle by bisection,
        // then evaluate the library's residual there.
        let s = 3;
        let at = |t: f64| Complex64::from_polar(1.5, t);
        let steps = 720;
        let dt = std::f64::consts::PI / steps as f64;
        let k = (0..steps)
            .find(|&k| signed_gap(s, at(k as f64 * dt)) * signed_gap(s, at((k + 1) as f64 * dt)) < 0.0)
            .ok_or_else(|| Failure::Fail("no sign change on the search circle".into()))?;
        let (mut lo, mut hi) = (k as f64 * dt, (k + 1) as f64 * dt);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if signed_gap(s, at(lo)) * signed_gap(s, at(mid)) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let z = at(0.5 * (lo + hi));
        let r = bkw_residual(ScanFamily::Theta, s, z).map_err(skip)?;
        ensure(r < 1e-12, || format!("residual {r:e} at {z}"))
    })]
}

pub fn run(opts: &SelftestOptions) -> Vec<CheckResult> {
    let checks: Vec<(&'static str, CheckFn)> =
        [graph_checks(), chain_checks(), diagram_checks(), zeros_checks()].into_iter().flatten().collect();
    checks
        .into_iter()
        .map(|(name, check)| {
            let outcome = match check(opts) {
                Ok(()) => Outcome::Pass,
                Err(Failure::Fail(why)) => Outcome::Fail(why),
                Err(Failure::Skip(why)) => Outcome::Skip(why),
            };
            CheckResult { name, outcome }
        })
        .collect()
}
