mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use srs_core::graph::Graph;
use srs_core::mesh::io;
use srs_core::model::{self, SpecNode, Tail, TreeSpec};
use srs_core::moves::{self, Logged, MoveRecord};
use srs_core::rigidity;
use srs_core::seeds::{self, Surface};
use srs_core::sparsity;

fn small_graph() -> impl Strategy<Value = Graph> {
    (3u32..9).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()).prop_map(move |e| Graph::new(0..n, e))
    })
}

fn surface() -> impl Strategy<Value = Surface> {
    prop_oneof![Just(Surface::Sphere), Just(Surface::Torus), Just(Surface::Projective)]
}

/// Brute force over all subsets with at least three vertices.
fn brute_deficiency(g: &Graph) -> i64 {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|m| m.count_ones() >= 3)
        .map(|m| {
            let set: BTreeSet<u32> = (0..n).filter(|i| m & (1 << i) != 0).map(|i| g.id(i)).collect();
            g.induced_edge_count(&set) as i64 - 3 * set.len() as i64 + 6
        })
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_matches_exhaustive(g in small_graph()) {
        let exact = sparsity::check_exhaustive(&g).unwrap();
        let flow = sparsity::check_flow(&g);
        prop_assert_eq!(exact.status, flow.status);
        prop_assert_eq!(exact.deficiency, flow.deficiency);
        prop_assert_eq!(exact.deficiency, Some(brute_deficiency(&g)));
        let witness: BTreeSet<u32> = flow.witness.iter().copied().collect();
        prop_assert_eq!(sparsity::set_value(&g, &witness), flow.deficiency.unwrap());
    }

    #[test]
    fn rank_is_monotone_and_label_free(g in small_graph(), a in 0u32..8, b in 0u32..8, shift in 1u32..50) {
        let r = rigidity::generic_rank(&g, 1, 3).rank;
        prop_assert!(r <= g.edge_count().min(rigidity::max_rank(g.vertex_count())));
        let n = g.vertex_count() as u32;
        let bigger = g.with_edge(a % n, b % n);
        prop_assert!(rigidity::generic_rank(&bigger, 1, 3).rank >= r);
        let moved = g.relabeled(|v| (v * 7 + shift) % 1000 + 1000);
        prop_assert_eq!(rigidity::generic_rank(&moved, 2, 3).rank, r);
    }

    #[test]
    fn random_moves_keep_tightness(seed in any::<u64>(), start in 0usize..7, steps in 1usize..5) {
        let mut rng = common::rng(seed);
        let (_, mut mesh) = common::tight_starts().swap_remove(start);
        for _ in 0..steps {
            let next = match seed.wrapping_add(steps as u64) % 3 {
                0 => common::random_zero_extension(&mesh, &mut rng),
                1 => common::random_split(&mesh, &mut rng),
                _ => common::random_barycentric(&mesh, &mut rng),
            };
            if let Some(m) = next {
                prop_assert_eq!(m.maxwell_count(), 6);
                m.validate().unwrap();
                mesh = m;
            }
        }
        prop_assert!(sparsity::check(&mesh.graph()).is_tight());
        prop_assert!(mesh.invariants().is_ok());
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), start in 0usize..7) {
        let mut rng = common::rng(seed);
        let (_, mesh) = common::tight_starts().swap_remove(start);
        let mesh = common::random_split(&mesh, &mut rng).unwrap_or(mesh);
        let text = io::to_json(&mesh);
        let back = io::from_json(&text).unwrap();
        prop_assert_eq!(io::to_json(&back), text);
        prop_assert_eq!(back.invariants().unwrap(), mesh.invariants().unwrap());
    }

    #[test]
    fn vertex_switching_preserves_faces(start in 0usize..7, pick in any::<prop::sample::Index>()) {
        let (_, mesh) = common::tight_starts().swap_remove(start);
        let v = *pick.get(mesh.vertices());
        let switched = mesh.switch_vertex(v);
        let lengths = |m: &srs_core::mesh::SurfaceMesh| {
            let mut l: Vec<usize> = m.faces().iter().map(|w| w.len()).collect();
            l.sort_unstable();
            l
        };
        prop_assert_eq!(lengths(&switched), lengths(&mesh));
        prop_assert_eq!(switched.is_orientable(), mesh.is_orientable());
        prop_assert_eq!(switched.hole_lengths(), mesh.hole_lengths());
    }

    #[test]
    fn classify_ignores_unrolling(core in prop::collection::vec(surface(), 0..4), unit in prop::collection::vec(surface(), 1..4)) {
        let spec = TreeSpec::path(&core, &unit).unwrap();
        let summary = |s: &TreeSpec| {
            let c = model::classify(s);
            let flags: BTreeSet<(bool, bool)> = c.end_flags.iter().map(|f| (f.planar, f.orientable)).collect();
            (c.genus, c.orientability, c.ends, flags)
        };
        prop_assert_eq!(summary(&spec), summary(&spec.unrolled()));
        let json = spec.to_json();
        prop_assert_eq!(TreeSpec::from_json(&json).unwrap(), spec);
    }

    #[test]
    fn ray_towers_follow_the_length_law(unit in prop::collection::vec(surface(), 1..3)) {
        let tower = model::build_tower(&TreeSpec::ray(&unit).unwrap(), 3).unwrap();
        for k in 1..tower.stages.len() {
            let step = 3 * unit[(k - 1) % unit.len()].reduced_genus().twice() as usize;
            prop_assert_eq!(tower.stages[k].frontier[0].length, tower.stages[k - 1].frontier[0].length + step);
            prop_assert!(model::nests(&tower.stages[k - 1].mesh, &tower.stages[k].mesh));
        }
    }
}

#[test]
fn move_log_round_trips() {
    let mut logged = Logged::new(seeds::disc());
    let face = common::triangles(&logged.mesh)[0];
    let verts = logged.mesh.face_walk(face).unwrap().vertices();
    logged
        .apply(MoveRecord::ZeroExtension {
            face,
            anchors: [verts[0], verts[1], verts[2]],
        })
        .unwrap();
    let edge = common::interior_edges(&logged.mesh)[0];
    logged.apply(MoveRecord::Barycentric { edge }).unwrap();
    let hole = common::holes(&logged.mesh)[0];
    logged.apply(MoveRecord::Collar { hole }).unwrap();
    let text = moves::MoveLog::new(logged.log.clone()).to_json();
    let log = moves::MoveLog::from_json(&text).unwrap();
    let replayed = moves::replay(&seeds::disc(), &log.moves).unwrap();
    assert_eq!(io::to_json(&replayed), io::to_json(&logged.mesh));
}

#[test]
fn tree_spec_errors_are_named() {
    let cyclic = TreeSpec {
        format: model::SPEC_FORMAT.into(),
        root: 0,
        nodes: vec![
            SpecNode {
                id: 0,
                label: Surface::Sphere,
                children: vec![1],
                tail: None,
            },
            SpecNode {
                id: 1,
                label: Surface::Torus,
                children: vec![0],
                tail: None,
            },
        ],
    };
    assert!(cyclic.validate().is_err());
    let branching_torus = TreeSpec {
        format: model::SPEC_FORMAT.into(),
        root: 0,
        nodes: vec![
            SpecNode {
                id: 0,
                label: Surface::Sphere,
                children: vec![1],
                tail: None,
            },
            SpecNode {
                id: 1,
                label: Surface::Torus,
                children: vec![2, 3],
                tail: None,
            },
            SpecNode {
                id: 2,
                label: Surface::Sphere,
                children: vec![],
                tail: Some(Tail::FullBinary),
            },
            SpecNode {
                id: 3,
                label: Surface::Sphere,
                children: vec![],
                tail: Some(Tail::FullBinary),
            },
        ],
    };
    assert!(matches!(branching_torus.validate(), Err(srs_core::SpecError::BranchNotSphere(1))));
}
