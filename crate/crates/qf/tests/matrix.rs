//! Matrix layer checked against independent semantics: Boolean matrices
//! acting as relations, one-by-one matrices collapsing to the base, and
//! the endomorphism description of free modules recomputed entrywise.

use qf::catalog;
use qf::error::Error;
use qf::iso::quantale_iso;
use qf::matrix::{matrix_action, matrix_endo_iso, matrix_quantale, Matrix};

const BUDGET: usize = 20000;

#[test]
fn boolean_matrices_compose_like_relations() {
    let rel = catalog::rel2();
    let mats = catalog::mat2_two();
    let two = &mats.base;
    // A pair mask becomes the matrix with a unit entry at each pair.
    let as_matrix = |mask: usize| -> Matrix {
        let entries: Vec<usize> = (0..4).map(|p| mask >> p & 1).collect();
        Matrix::new(two.clone(), 2, 2, entries).unwrap()
    };
    for a in 0..rel.n() {
        for b in 0..rel.n() {
            let composed = as_matrix(a).compose(&as_matrix(b)).unwrap();
            assert_eq!(
                composed.entries(),
                as_matrix(rel.mul(a, b)).entries(),
                "matrix product of {a} and {b}"
            );
            assert_eq!(
                rel.lattice().leq(a, b),
                as_matrix(a).leq(&as_matrix(b)).unwrap()
            );
        }
    }
    assert_eq!(
        as_matrix(rel.unit()).entries(),
        Matrix::identity(two, 2).entries()
    );
    // The same correspondence read through element codes.
    for a in 0..rel.n() {
        let code = mats.elem_of(&as_matrix(a)).unwrap();
        assert_eq!(mats.matrix_of(code).entries(), as_matrix(a).entries());
        for b in 0..rel.n() {
            let other = mats.elem_of(&as_matrix(b)).unwrap();
            assert_eq!(
                mats.quantale.mul(code, other),
                mats.elem_of(&as_matrix(rel.mul(a, b))).unwrap()
            );
        }
    }
    assert!(quantale_iso(&rel, &mats.quantale).is_some());
}

#[test]
fn one_by_one_matrices_recover_the_base() {
    for (name, q) in catalog::catalog_quantales() {
        if q.n() > 16 {
            continue;
        }
        let mats = matrix_quantale(&q, 1, BUDGET).unwrap();
        assert_eq!(mats.quantale.n(), q.n());
        for e in 0..q.n() {
            assert_eq!(mats.matrix_of(e).entry(0, 0), e);
            for f in 0..q.n() {
                assert_eq!(mats.quantale.mul(e, f), q.mul(e, f), "products in {name}");
                assert_eq!(
                    mats.quantale.lattice().leq(e, f),
                    q.lattice().leq(e, f),
                    "order in {name}"
                );
            }
        }
        assert_eq!(mats.quantale.unit(), q.unit());
    }
}

#[test]
fn constants_and_units_encode_as_expected() {
    let mats = catalog::mat2_two();
    let q = &mats.quantale;
    assert_eq!(
        mats.elem_of(&Matrix::zero(&mats.base, 2, 2)).unwrap(),
        q.lattice().bottom()
    );
    assert_eq!(
        mats.elem_of(&Matrix::top(&mats.base, 2, 2)).unwrap(),
        q.n() - 1
    );
    assert_eq!(
        mats.elem_of(&Matrix::identity(&mats.base, 2)).unwrap(),
        q.unit()
    );
    for i in 0..2 {
        for j in 0..2 {
            let m = Matrix::unit_at(&mats.base, 2, i, j);
            let nonzero: Vec<(usize, usize)> = (0..2)
                .flat_map(|x| (0..2).map(move |y| (x, y)))
                .filter(|&(x, y)| m.entry(x, y) != mats.base.lattice().bottom())
                .collect();
            assert_eq!(nonzero, vec![(i, j)]);
            assert_eq!(m.entry(i, j), mats.base.unit());
        }
    }
    // Unit matrices multiply by index matching.
    let e11 = Matrix::unit_at(&mats.base, 2, 0, 0);
    let e12 = Matrix::unit_at(&mats.base, 2, 0, 1);
    assert_eq!(e11.compose(&e12).unwrap().entries(), e12.entries());
    assert_eq!(
        e12.compose(&e11).unwrap().entries(),
        Matrix::zero(&mats.base, 2, 2).entries()
    );

    for a in 0..q.n() {
        for b in 0..q.n() {
            let (ma, mb) = (mats.matrix_of(a), mats.matrix_of(b));
            assert_eq!(q.lattice().leq(a, b), ma.leq(&mb).unwrap());
            assert_eq!(
                mats.elem_of(&ma.join(&mb).unwrap()).unwrap(),
                q.lattice().join2(a, b)
            );
        }
    }
}

#[test]
fn free_module_endomorphisms_are_matrices() {
    let cases = [
        (catalog::two_quantale(), 2usize),
        (catalog::two_quantale(), 3),
        (catalog::chain_locale(3), 2),
    ];
    for (base, k) in cases {
        let iso = matrix_endo_iso(&base, k, BUDGET).unwrap();
        let mq = &iso.matrices.quantale;
        assert_eq!(mq.n(), iso.endos.n());
        assert_eq!(iso.forward.map.apply(mq.unit()), iso.endos.unit());
        for a in 0..mq.n() {
            assert_eq!(iso.backward.map.apply(iso.forward.map.apply(a)), a);
            assert_eq!(
                iso.homs.table_of(iso.forward.map.apply(a)),
                matrix_action(&iso.free, &iso.matrices.matrix_of(a))
                    .unwrap()
                    .as_slice(),
                "the image endomap applies the matrix"
            );
            for b in 0..mq.n() {
                assert_eq!(
                    iso.forward.map.apply(mq.mul(a, b)),
                    iso.endos
                        .mul(iso.forward.map.apply(a), iso.forward.map.apply(b))
                );
            }
        }
    }
}

#[test]
fn rectangular_shapes_compose_and_mismatches_fail() {
    let two = catalog::two_quantale();
    let row = Matrix::new(two.clone(), 1, 2, vec![1, 0]).unwrap();
    let col = Matrix::new(two.clone(), 2, 1, vec![1, 1]).unwrap();
    let dot = row.compose(&col).unwrap();
    assert_eq!((dot.rows, dot.cols), (1, 1));
    assert_eq!(dot.entry(0, 0), 1);
    let outer = col.compose(&row).unwrap();
    assert_eq!(outer.entries(), &[1, 0, 1, 0]);
    assert!(matches!(row.compose(&row), Err(Error::ShapeMismatch)));
    let c3 = catalog::chain_locale(3);
    let other = Matrix::zero(&c3, 2, 1);
    assert!(matches!(row.compose(&other), Err(Error::QuantaleMismatch)));
    assert!(matches!(
        Matrix::new(two.clone(), 2, 2, vec![0, 1]),
        Err(Error::ShapeMismatch)
    ));
}
