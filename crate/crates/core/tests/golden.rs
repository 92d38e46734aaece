//! Worked examples with known answers.

use webvac::matching::{
    is_standard_rectangular, ncm_from_rotated_tableau, ncm_from_tableau, reflect_ncm,
    tableau_from_ncm, Arc, MulticoloredNcm,
};
use webvac::render::{render_web, Format, Kind, RenderSpec};
use webvac::tableau::{
    complement, enumerate_syt, evacuate, evacuate_fast, jdt_slide_path, rotate180, validate,
    Cell, Shape, Slot, StandardTableau, DEFAULT_BUDGET,
};
use webvac::verify::{check_conventions_34, check_right_square, Outcome};
use webvac::web::{
    apply_convention_34, check_flow, flip_edges, reflect_web, single_arc_interior_edges,
    web_equal_anchored, web_from_tableau, Anchored, CompareMode, EdgeId, Mismatch, Point2,
    VertexId, WebEdge, WebGraph,
};

fn syt(grid: &[&[u32]]) -> StandardTableau {
    validate(&grid.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn ncm(n: u32, size: u32, layers: &[&[(u32, u32)]]) -> MulticoloredNcm {
    let layers = layers
        .iter()
        .map(|l| l.iter().map(|&(i, j)| Arc::new(i, j)).collect())
        .collect();
    MulticoloredNcm::new(n, size, layers).unwrap()
}

fn four_by_three() -> StandardTableau {
    syt(&[&[1, 3, 5], &[2, 4, 8], &[6, 9, 10], &[7, 11, 12]])
}

fn intro() -> StandardTableau {
    syt(&[&[1, 2], &[3, 4], &[5, 7], &[6, 8], &[9, 10]])
}

fn sl3_example() -> StandardTableau {
    syt(&[&[1, 2, 3], &[4, 5, 8], &[6, 7, 9]])
}

#[test]
fn evacuation_examples() {
    assert_eq!(
        evacuate(&syt(&[&[1, 3], &[2, 4], &[5, 6]])),
        syt(&[&[1, 2], &[3, 5], &[4, 6]])
    );
    assert_eq!(
        evacuate(&four_by_three()),
        syt(&[&[1, 2, 6], &[3, 4, 7], &[5, 9, 11], &[8, 10, 12]])
    );
    assert_eq!(
        evacuate(&intro()),
        syt(&[&[1, 2], &[3, 5], &[4, 6], &[7, 8], &[9, 10]])
    );
    assert_eq!(evacuate_fast(&syt(&[&[1, 2], &[3, 4]])), syt(&[&[1, 2], &[3, 4]]));
}

#[test]
fn first_slide_of_small_tableau() {
    let (state, path) = jdt_slide_path(&syt(&[&[1, 3], &[2, 4], &[5, 6]]));
    assert_eq!(
        path,
        vec![Cell::new(1, 1), Cell::new(2, 1), Cell::new(2, 2), Cell::new(3, 2)]
    );
    // [[2,3],[4,6],[5,hole]]
    assert_eq!(state.get(Cell::new(2, 2)), Slot::Live(6));
    assert_eq!(state.get(Cell::new(3, 1)), Slot::Live(5));
    assert_eq!(state.get(Cell::new(3, 2)), Slot::Hole);
}

#[test]
fn rotation_and_complement_of_four_by_three() {
    let t = four_by_three();
    let rho = rotate180(&t);
    assert_eq!(
        rho,
        vec![vec![12, 11, 7], vec![10, 9, 6], vec![8, 4, 2], vec![5, 3, 1]]
    );
    assert_eq!(
        complement(&rho, 12),
        vec![vec![1, 2, 6], vec![3, 4, 7], vec![5, 9, 11], vec![8, 10, 12]]
    );
}

#[test]
fn matchings_from_tableaux() {
    assert_eq!(
        ncm_from_tableau(&four_by_three()).unwrap(),
        ncm(4, 12, &[&[(1, 2), (3, 4), (5, 8)], &[(2, 10), (4, 6), (8, 9)], &[(6, 7), (9, 12), (10, 11)]])
    );
    assert_eq!(
        ncm_from_tableau(&intro()).unwrap(),
        ncm(5, 10, &[&[(1, 4), (2, 3)], &[(3, 7), (4, 5)], &[(5, 6), (7, 8)], &[(6, 10), (8, 9)]])
    );
    assert_eq!(
        ncm_from_tableau(&sl3_example()).unwrap(),
        ncm(3, 9, &[&[(1, 8), (2, 5), (3, 4)], &[(4, 7), (5, 6), (8, 9)]])
    );
}

#[test]
fn rotated_matching_reverses_colors() {
    let t = four_by_three();
    let rho = ncm_from_rotated_tableau(&rotate180(&t)).unwrap();
    assert_eq!(
        rho,
        ncm(4, 12, &[&[(6, 7), (9, 12), (10, 11)], &[(2, 10), (4, 6), (8, 9)], &[(1, 2), (3, 4), (5, 8)]])
    );
}

#[test]
fn reflected_matching() {
    let m = ncm_from_tableau(&four_by_three()).unwrap();
    let phi = reflect_ncm(&m);
    assert_eq!(
        phi,
        ncm(4, 12, &[&[(1, 4), (2, 3), (6, 7)], &[(3, 11), (4, 5), (7, 9)], &[(5, 8), (9, 10), (11, 12)]])
    );
    assert_eq!(reflect_ncm(&phi), m);
    is_standard_rectangular(&phi).unwrap();
}

#[test]
fn reconstruction_examples() {
    let m = ncm_from_tableau(&four_by_three()).unwrap();
    assert_eq!(tableau_from_ncm(&m).unwrap(), four_by_three());
    assert_eq!(
        tableau_from_ncm(&ncm(2, 4, &[&[(1, 2), (3, 4)]])).unwrap(),
        syt(&[&[1, 3], &[2, 4]])
    );
    for t in enumerate_syt(Shape::new(2, 4).unwrap(), DEFAULT_BUDGET).unwrap() {
        assert_eq!(tableau_from_ncm(&ncm_from_tableau(&t).unwrap()).unwrap(), t);
    }
}

#[test]
fn crossing_figure_is_standard() {
    let m = ncm(4, 8, &[&[(1, 4), (2, 3)], &[(3, 7), (4, 5)], &[(5, 6), (7, 8)]]);
    assert!(is_standard_rectangular(&m).is_ok());
}

#[test]
fn intro_left_square() {
    let t = intro();
    let phi = reflect_ncm(&ncm_from_tableau(&t).unwrap());
    assert_eq!(phi, ncm_from_tableau(&evacuate(&t)).unwrap());
}

#[test]
fn intro_reflection_differs_before_flips() {
    let t = intro();
    let w = web_from_tableau(&t).unwrap();
    let phi = reflect_web(&w);
    let w_e = web_from_tableau(&evacuate(&t)).unwrap();
    assert!(web_equal_anchored(&phi, &w_e, CompareMode::UndirectedUnweighted)
        .unwrap()
        .is_equal());
    let exact = web_equal_anchored(&phi, &w_e, CompareMode::Exact).unwrap();
    let Anchored::Unequal(Mismatch::EdgeAttributes { edge }) = exact else {
        panic!("expected an edge-level mismatch, got {exact:?}");
    };
    let e_t = single_arc_interior_edges(&w).unwrap();
    assert!(e_t.contains(&edge), "witness {edge} is not a single-arc interior edge");

    let flipped = flip_edges(&phi, &e_t).unwrap();
    assert!(web_equal_anchored(&flipped, &w_e, CompareMode::Exact).unwrap().is_equal());
}

#[test]
fn intro_flow_at_mixed_vertex() {
    // in {1, 4}, out {2, 3} balances mod 5
    let w = WebGraph::from_parts(
        5,
        4,
        vec![Point2::new(10, 4)],
        vec![
            edge(0, 4, 1),
            edge(1, 4, 4),
            edge(4, 2, 2),
            edge(4, 3, 3),
        ],
    )
    .unwrap();
    assert!(check_flow(&w).is_ok());
}

fn edge(tail: usize, head: usize, weight: u32) -> WebEdge {
    WebEdge {
        tail: VertexId(tail),
        head: VertexId(head),
        weight,
        undirected: false,
        provenance: vec![],
    }
}

#[test]
fn unbalanced_vertex_is_reported() {
    let w = WebGraph::from_parts(
        3,
        3,
        vec![Point2::new(8, 4)],
        vec![edge(0, 3, 1), edge(3, 1, 1), edge(3, 2, 1)],
    )
    .unwrap();
    let v = check_flow(&w).unwrap_err();
    assert_eq!((v.vertex, v.net), (VertexId(3), -1));
}

#[test]
fn sl4_flip_turns_one_into_three() {
    let w = web_from_tableau(&four_by_three()).unwrap();
    let e = w
        .edge_ids()
        .find(|&e| w.edge(e).weight == 1 && !w.is_boundary(w.edge(e).tail))
        .expect("an interior weight-1 edge");
    let f = flip_edges(&w, &[e]).unwrap();
    assert_eq!(f.edge(e).weight, 3);
    assert_eq!((f.edge(e).tail, f.edge(e).head), (w.edge(e).head, w.edge(e).tail));
    assert_eq!(flip_edges(&f, &[e]).unwrap(), w);
    assert!(flip_edges(&w, &[EdgeId(999)]).is_err());
}

#[test]
fn sl3_example_conventions() {
    let t = sl3_example();
    assert_eq!(check_conventions_34(&t), Outcome::Pass);
    let w = apply_convention_34(&web_from_tableau(&t).unwrap()).unwrap();
    assert_eq!(w.interior_count(), 5);
    assert!(w.edges().iter().all(|e| e.weight == 1 && !e.undirected));
    let svg = render_web(&w, &RenderSpec::new(Kind::Web, Format::Svg)).unwrap();
    assert_eq!(svg.matches("<circle ").count(), 5);
    assert_eq!(svg.matches("<text ").count(), 9 + w.edges().len());
}

#[test]
fn self_evacuating_tableaux_flip_back_to_themselves() {
    let fixed: Vec<_> = enumerate_syt(Shape::new(3, 3).unwrap(), DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|t| evacuate(t) == *t)
        .collect();
    assert!(!fixed.is_empty());
    for t in fixed {
        let w = web_from_tableau(&t).unwrap();
        let e_t = single_arc_interior_edges(&w).unwrap();
        let back = flip_edges(&reflect_web(&w), &e_t).unwrap();
        assert!(web_equal_anchored(&back, &w, CompareMode::Exact).unwrap().is_equal(), "{t}");
        assert_eq!(check_right_square(&t).strong, Outcome::Pass);
    }
}

#[test]
fn sl2_needs_no_flips() {
    for t in enumerate_syt(Shape::new(2, 4).unwrap(), DEFAULT_BUDGET).unwrap() {
        let w = web_from_tableau(&t).unwrap();
        assert!(single_arc_interior_edges(&w).unwrap().is_empty());
        let w_e = web_from_tableau(&evacuate(&t)).unwrap();
        assert!(web_equal_anchored(&reflect_web(&w), &w_e, CompareMode::Exact)
            .unwrap()
            .is_equal());
    }
}
