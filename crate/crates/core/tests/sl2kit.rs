use wkit_core::liealg::{self, LieAlgebraSpec};
use wkit_core::linalg::Matrix;
use wkit_core::scalar::int;
use wkit_core::sl2kit::{
    check_good, degree_matrix, dynkin_grading, grading_by_diagonal, is_even, jm_from_partition,
    jm_regular_gl, Sl2Triple,
};

fn minimal_gl3() -> (LieAlgebraSpec, Sl2Triple) {
    let spec = liealg::build("gl", 3).unwrap();
    let unit = |i, j| spec.element_of(&Matrix::unit(3, i, j)).unwrap();
    let h = spec.element_of(&Matrix::diagonal(&[int(1), int(0), int(-1)])).unwrap();
    let triple = Sl2Triple::new(&spec, unit(0, 2), unit(2, 0), h).unwrap();
    (spec, triple)
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn dynkin_grading_of_the_minimal_nilpotent() {
    let (spec, triple) = minimal_gl3();
    let g = dynkin_grading(&spec, &triple).unwrap();
    assert_eq!(degree_matrix(&spec, &g).unwrap(), [[0, 1, 2], [-1, 0, 1], [-2, -1, 0]]);
    assert!(check_good(&spec, &g, &triple.e).all());
    assert!(!is_even(&g));
}

#[test]
fn non_dynkin_good_grading() {
    let (spec, triple) = minimal_gl3();
    let g = grading_by_diagonal(&spec, &[int(1), int(1), int(-1)]).unwrap();
    assert_eq!(degree_matrix(&spec, &g).unwrap(), [[0, 0, 2], [0, 0, 2], [-2, -2, 0]]);
    assert!(check_good(&spec, &g, &triple.e).all());
    assert!(is_even(&g));
}

#[test]
fn stretched_grading_moves_e_out_of_degree_two() {
    let (spec, triple) = minimal_gl3();
    let g = grading_by_diagonal(&spec, &[int(2), int(0), int(-2)]).unwrap();
    let report = check_good(&spec, &g, &triple.e);
    assert!(!report.e_in_degree_two);
    assert!(!report.all());
}

#[test]
fn regular_gradings() {
    for n in 2..=4 {
        let spec = liealg::build("gl", n).unwrap();
        let triple = jm_regular_gl(n).in_spec(&spec).unwrap();
        let g = dynkin_grading(&spec, &triple).unwrap();
        assert!(check_good(&spec, &g, &triple.e).all(), "gl{n}");
        assert!(is_even(&g));
    }
}

#[test]
fn dynkin_gradings_of_all_small_partitions() {
    for n in 2..=4 {
        let spec = liealg::build("gl", n).unwrap();
        for parts in partitions(n) {
            let triple = jm_from_partition(&parts).unwrap().in_spec(&spec).unwrap();
            let g = dynkin_grading(&spec, &triple).unwrap();
            let dims = g.dimensions();
            for (j, d) in &dims {
                assert_eq!(dims.get(&-j), Some(d), "{parts:?} degree {j}");
            }
            if !triple.is_zero() {
                let report = check_good(&spec, &g, &triple.e);
                assert!(report.centralizer_nonnegative, "{parts:?}");
                assert!(report.all(), "{parts:?}");
            }
        }
    }
}
