mod common;

use std::collections::BTreeSet;

use common::{build, random_generic_plane, rng, section_battery};
use facelab::generators::GeneratorSpec;
use facelab::section::{cuts_face, section};

fn bases() -> Vec<GeneratorSpec> {
    vec![
        GeneratorSpec::cube(3),
        GeneratorSpec::cross(3),
        GeneratorSpec::cyclic(7, 4),
        GeneratorSpec::cube(4),
        GeneratorSpec::random(8, 3, 5, 10),
        GeneratorSpec::random(7, 4, 6, 8),
        GeneratorSpec::prism(GeneratorSpec::simplex(3)),
    ]
}

#[test]
fn random_sections_are_poset_isomorphisms() {
    let mut r = rng(2024);
    for spec in bases() {
        let q = build(&spec);
        for _ in 0..6 {
            let h = random_generic_plane(&q, &mut r);
            let s = section(&q, &h).unwrap();
            section_battery(&s).unwrap_or_else(|e| panic!("{spec:?} / {h}: {e}"));
        }
    }
}

#[test]
fn cuts_face_agrees_with_edge_crossing() {
    let mut r = rng(99);
    for spec in bases() {
        let q = build(&spec);
        let l = &q.lattice;
        for _ in 0..4 {
            let h = random_generic_plane(&q, &mut r);
            let crossed: Vec<&Vec<usize>> = l
                .faces_of_dim(1)
                .unwrap()
                .map(|e| &l.face(e).vertices)
                .filter(|e| {
                    let a = h.side(q.geometry.vertex(e[0])).unwrap();
                    let b = h.side(q.geometry.vertex(e[1])).unwrap();
                    a != b
                })
                .collect();
            for face in l.faces() {
                let oracle = crossed.iter().any(|e| common::is_subset(e, &face.vertices));
                assert_eq!(cuts_face(&h, face, &q.geometry).unwrap(), oracle);
            }
        }
    }
}

#[test]
fn lift_is_injective() {
    let mut r = rng(7);
    for spec in bases() {
        let q = build(&spec);
        let h = random_generic_plane(&q, &mut r);
        let s = section(&q, &h).unwrap();
        let slice = &s.sliced().lattice;
        let lifted: Vec<_> = (1..slice.len()).map(|x| s.lift(x).unwrap()).collect();
        let distinct: BTreeSet<_> = lifted.iter().collect();
        assert_eq!(distinct.len(), lifted.len());
    }
}

#[test]
fn sections_of_sections() {
    let mut r = rng(31);
    let q = build(&GeneratorSpec::cube(4));
    for _ in 0..5 {
        let h1 = random_generic_plane(&q, &mut r);
        let s1 = section(&q, &h1).unwrap();
        let h2 = random_generic_plane(s1.sliced(), &mut r);
        let Ok(s2) = section(s1.sliced(), &h2) else {
            continue;
        };
        section_battery(&s2).unwrap();
        assert_eq!(s2.sliced().dim(), 2);
    }
}
