use eqlines::exactlin::rat;
use eqlines::lattice::{
    embedding_obstruction, isometry, lattice_from_seidel, IsometryOptions, IsometryOutcome,
    Obstruction,
};
use eqlines::seidel::{witt_two_graph_276, Graph, SeidelMatrix, SwitchingOp};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn witt_lattice_has_minimum_norm_five() {
    let l = lattice_from_seidel(&witt_two_graph_276()).unwrap();
    assert_eq!(l.generators(), 276);
    assert_eq!(l.rank(), 23);
    assert_eq!(l.first_inconsistency(), None);
    let m = l.min_norm(None).unwrap();
    assert_eq!(m.norm, 5);
    assert_eq!(m.bound_completed, 5);
    // the minimal vectors are exactly the 276 generators up to sign
    let list = l.short_vectors(&rat(5), None).unwrap();
    let mut gens: Vec<Vec<i64>> = (0..276)
        .map(|g| {
            let c = l.gen_coords(g).to_vec();
            let last = *c.iter().rev().find(|&&x| x != 0).unwrap();
            if last < 0 {
                c.iter().map(|x| -x).collect()
            } else {
                c
            }
        })
        .collect();
    gens.sort();
    gens.dedup();
    let mut found: Vec<Vec<i64>> = list.vectors.into_iter().map(|v| v.coords).collect();
    found.sort();
    assert_eq!(found, gens);
}

#[test]
fn switched_witt_copy_is_isometric() {
    let s = witt_two_graph_276();
    let mut rng = ChaCha8Rng::seed_from_u64(276);
    let mut perm: Vec<usize> = (0..276).collect();
    perm.shuffle(&mut rng);
    let signs: Vec<i8> = (0..276)
        .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    let t = SwitchingOp::new(signs, perm).unwrap().apply(&s).unwrap();
    let (l1, l2) = (
        lattice_from_seidel(&s).unwrap(),
        lattice_from_seidel(&t).unwrap(),
    );
    match isometry(&l1, &l2, &IsometryOptions::default()).unwrap() {
        IsometryOutcome::Certificate(c) => assert!(c.verify(l1.basis_gram(), l2.basis_gram())),
        other => panic!("{other:?}"),
    }
}

#[test]
fn norm_four_vectors_obstruct_embedding() {
    // scan random six-line systems for one with a vector shorter than the generators
    let mut found = None;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let mut g = Graph::new(6);
        for i in 0..6 {
            for j in i + 1..6 {
                if rng.gen_bool(0.5) {
                    g.add_edge(i, j);
                }
            }
        }
        let l = lattice_from_seidel(&SeidelMatrix::from_graph(&g)).unwrap();
        if l.min_norm(None).unwrap().norm < 5 {
            found = Some(l);
            break;
        }
    }
    let small = found.expect("some six-line system has a vector shorter than 5");
    let w = lattice_from_seidel(&witt_two_graph_276()).unwrap();
    assert!(matches!(
        embedding_obstruction(&small, &w, None).unwrap(),
        Obstruction::Obstructed { super_min: 5, .. }
    ));
    assert!(matches!(
        embedding_obstruction(&w, &w, None).unwrap(),
        Obstruction::NoObstructionFound {
            sub_min: 5,
            super_min: 5
        }
    ));
}
