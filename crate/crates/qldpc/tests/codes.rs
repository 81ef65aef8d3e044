use proptest::prelude::*;
use qldpc::code::{builtin, load_alist, load_css_json, save_alist, save_css_json, toy_code};
use qldpc::{Gf2Vector, SparseGf2Matrix, TannerGraph};

fn matrix() -> impl Strategy<Value = SparseGf2Matrix> {
    (1usize..=15, 1usize..=30)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0u8..=1, c), r))
        .prop_map(|rows| SparseGf2Matrix::from_dense(&rows).unwrap())
}

fn check_graph(h: &SparseGf2Matrix) {
    let g = TannerGraph::new(h).unwrap();
    g.validate().unwrap();
    assert_eq!((g.num_checks(), g.num_vars(), g.num_edges()), (h.rows(), h.cols(), h.nnz()));
    for m in 0..g.num_checks() {
        assert_eq!(g.check_neighbors(m), h.row(m));
        for e in g.check_edges(m) {
            assert_eq!(g.edge(e).0, m);
        }
    }
    for n in 0..g.num_vars() {
        assert_eq!(g.var_neighbors(n), h.col(n));
        let slots = g.var_slots(n);
        assert_eq!(slots.len(), g.var_edges(n).len());
        for (slot, &e) in slots.zip(g.var_edges(n)) {
            assert_eq!(g.edge_var(e), n);
            assert_eq!(g.var_slot(e), slot);
        }
    }
}

#[test]
fn alist_round_trip_fixed_matrices() {
    let bb72 = builtin::code("bb72").unwrap();
    for h in [toy_code(), SparseGf2Matrix::identity(7), bb72.hx().clone(), bb72.hz().clone()] {
        assert_eq!(load_alist(&save_alist(&h)).unwrap(), h);
    }
}

#[test]
fn alist_rejects_inconsistent_files() {
    // 3 columns, 2 rows; the row list disagrees with the column list
    let bad = "3 2\n1 2\n1 1 1\n2 1\n1\n1\n2\n1 3\n2\n";
    let good = "3 2\n1 2\n1 1 1\n2 1\n1\n1\n2\n1 2\n3\n";
    assert_eq!(load_alist(good).unwrap().row(0), &[0, 1]);
    assert!(load_alist(bad).is_err());
    assert!(load_alist("3 2\n").is_err());
}

#[test]
fn builtin_graphs_are_consistent() {
    for code in builtin::all().unwrap() {
        check_graph(code.hx());
        check_graph(code.hz());
        let combined = code.combined_graph();
        combined.validate().unwrap();
        assert_eq!(combined.blocks().len(), 2);
        assert_eq!(combined.num_vars(), 2 * code.n());
        assert!(code.hx().rows_orthogonal_to(code.hz()).unwrap(), "{}", code.name());
    }
}

#[test]
fn builtin_codes_have_weight_six_checks() {
    for code in builtin::all().unwrap() {
        let g = code.x_error_graph();
        assert!(g.check_degrees().iter().all(|&d| d == 6), "{}", code.name());
        assert!(g.var_degrees().iter().all(|&d| d == 3), "{}", code.name());
    }
}

#[test]
fn json_descriptor_round_trip() {
    for code in builtin::all().unwrap() {
        let back = load_css_json(&save_css_json(&code), None).unwrap();
        assert_eq!(back.hx(), code.hx());
        assert_eq!(back.hz(), code.hz());
        assert_eq!(back.params(), code.params());
    }
}

#[test]
fn unit_errors_flag_their_columns() {
    let code = builtin::code("bb72").unwrap();
    for q in [0, 35, 36, 71] {
        let e = Gf2Vector::unit(code.n(), q);
        assert_eq!(code.x_syndrome(&e).unwrap(), code.hz().col_vector(q));
        assert_eq!(code.z_syndrome(&e).unwrap(), code.hx().col_vector(q));
    }
}

proptest! {
    #[test]
    fn alist_round_trip_random(h in matrix()) {
        prop_assert_eq!(load_alist(&save_alist(&h)).unwrap(), h);
    }

    #[test]
    fn graph_invariants_random(h in matrix()) {
        check_graph(&h);
    }
}
