mod common;

use std::collections::{HashSet, VecDeque};

use hetdss::rational::int;
use hetdss::{
    build_flow_graph, capacity, capacity_via_flow, enumerate_sequences, fixtures, max_flow,
    sequence_value, FlowGraph, SurvivingSequence, Vertex, Weight,
};

fn reaches_sink_without(g: &FlowGraph, removed: &HashSet<(Vertex, Vertex)>) -> bool {
    let s = g.source().unwrap();
    let t = g.sink().unwrap();
    let mut seen = vec![false; g.vertices.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for e in g.edges.iter().filter(|e| e.from == v) {
            if removed.contains(&(g.vertices[e.from], g.vertices[e.to])) || seen[e.to] {
                continue;
            }
            seen[e.to] = true;
            queue.push_back(e.to);
        }
    }
    seen[t]
}

#[test]
fn graph_shape_and_weights() {
    let spec = fixtures::six_node();
    for seq in enumerate_sequences(&spec) {
        let g = build_flow_graph(&spec, &seq).unwrap();
        assert_eq!(g.vertices.len(), 18);
        assert!(g.is_acyclic());
        for e in &g.edges {
            let (from, to) = (g.vertices[e.from], g.vertices[e.to]);
            match (from, to) {
                (Vertex::Source, Vertex::In(_)) | (Vertex::RepairedOut(_), Vertex::Sink) => {
                    assert!(e.weight.is_unbounded())
                }
                (Vertex::In(i), Vertex::Out(o)) => {
                    assert_eq!(i, o);
                    assert_eq!(
                        e.weight,
                        Weight::Finite(spec.node(i).unwrap().alpha.clone())
                    );
                }
                (Vertex::RepairedIn(a), Vertex::RepairedOut(b)) => {
                    assert_eq!(a, b);
                    let id = seq.entries[a - 1].node;
                    assert_eq!(
                        e.weight,
                        Weight::Finite(spec.node(id).unwrap().alpha.clone())
                    );
                }
                (_, Vertex::RepairedIn(_)) => assert_eq!(e.weight, Weight::Finite(int(1))),
                other => panic!("unexpected edge {other:?}"),
            }
        }
    }
}

#[test]
fn earlier_helper_feeds_from_repaired_copy() {
    let spec = fixtures::six_node();
    // U2 first, then U1 repaired from {U2, U6}
    let seq = SurvivingSequence::from_pairs(&[(2, 0), (1, 1)]);
    let g = build_flow_graph(&spec, &seq).unwrap();
    let into_second: Vec<Vertex> = g
        .edges
        .iter()
        .filter(|e| g.vertices[e.to] == Vertex::RepairedIn(2))
        .map(|e| g.vertices[e.from])
        .collect();
    assert_eq!(into_second, vec![Vertex::RepairedOut(1), Vertex::Out(6)]);
}

#[test]
fn k_one_flow_is_single_node_term() {
    let mut spec = fixtures::six_node();
    spec.k = 1;
    for seq in enumerate_sequences(&spec) {
        let node = spec.node(seq.entries[0].node).unwrap();
        let d = node.repair_degree() as i64;
        let expected = node.alpha.clone().min(&spec.beta * int(d));
        let flow = max_flow(&build_flow_graph(&spec, &seq).unwrap()).unwrap();
        assert_eq!(flow.flow_value, expected);
    }
}

#[test]
fn certificates_are_sound() {
    for seed in 0..60 {
        let spec = common::random_spec(seed, 5, 3);
        for seq in enumerate_sequences(&spec).take(40) {
            let g = build_flow_graph(&spec, &seq).unwrap();
            assert!(g.is_acyclic());
            assert_eq!(g.vertices.len(), 2 + 2 * spec.n + 2 * spec.k);
            let cert = max_flow(&g).unwrap();
            assert_eq!(cert.cut_weight(), cert.flow_value);
            assert!(cert.source_side.contains(&Vertex::Source));
            assert!(cert.sink_side.contains(&Vertex::Sink));
            let removed: HashSet<_> = cert.cut_edges.iter().map(|e| (e.from, e.to)).collect();
            assert!(!reaches_sink_without(&g, &removed));
        }
    }
}

#[test]
fn flow_never_exceeds_cut_formula() {
    for seed in 0..120 {
        let spec = common::random_spec(seed, 5, 3);
        for seq in enumerate_sequences(&spec) {
            let flow = max_flow(&build_flow_graph(&spec, &seq).unwrap())
                .unwrap()
                .flow_value;
            let value = sequence_value(&spec, &seq).unwrap().value;
            assert!(
                flow <= value,
                "seed {seed} {seq}: flow {flow} > cut value {value}"
            );
            if common::helpers_not_bottleneck(&spec, &seq) {
                assert_eq!(flow, value, "seed {seed} {seq}");
            }
        }
    }
}

#[test]
fn flow_capacity_matches_enumerated_capacity() {
    assert_eq!(capacity_via_flow(&fixtures::six_node()).unwrap(), int(3));
    assert_eq!(
        capacity_via_flow(&fixtures::homogeneous_all_subsets(4, 2, 3, int(2), int(1))).unwrap(),
        int(4)
    );
    assert_eq!(
        capacity_via_flow(&fixtures::six_node().with_beta(int(0))).unwrap(),
        int(0)
    );
    for seed in 0..150 {
        let spec = common::random_spec(seed, 5, 3);
        assert_eq!(
            capacity_via_flow(&spec).unwrap(),
            capacity(&spec).unwrap().capacity,
            "seed {seed}"
        );
    }
}

#[test]
fn dot_export_lists_every_edge() {
    let spec = fixtures::six_node();
    let g = build_flow_graph(&spec, &SurvivingSequence::from_pairs(&[(2, 0), (1, 1)])).unwrap();
    let dot = g.to_dot();
    assert!(dot.starts_with("digraph flow {"));
    assert!(dot.contains("\"Out'1\" -> \"In'2\" [label=\"1\"];"));
    assert!(dot.contains("\"s\" -> \"In1\" [label=\"inf\"];"));
    assert_eq!(dot.matches("->").count(), g.edges.len());
}
