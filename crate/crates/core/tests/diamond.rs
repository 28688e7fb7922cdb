use netfunc_core::bounds::{all_bounds, OptConfig, SearchConfig};
use netfunc_core::chargraph;
use netfunc_core::codesim::{cut_coloring_check, diamond_scheme, diamond_scheme_split, evaluate, huffman_transform};
use netfunc_core::entropy::{clique_entropy, Method};
use netfunc_core::equiv::CutContext;
use netfunc_core::fixtures::diamond;

fn log2(x: f64) -> f64 {
    x.log2()
}

#[test]
fn basic_and_fixed_length_bounds() {
    let m = diamond();
    let s = all_bounds(&m, &SearchConfig::default(), None).unwrap();
    assert!((s.basic.value - (1.75 - 0.375 * log2(3.0))).abs() <= 1e-12, "{}", s.basic.value);
    assert_eq!(s.basic.method, Method::ExactDecomposition);
    assert_eq!(s.basic.witness.key, "{e5,e6}|{{e5},{e6}}");
    assert!((s.fixed_length.value - (1.0 + log2(3.0)) / 2.0).abs() <= 1e-12);
    let w = s.pairs.iter().find(|p| p.key == s.fixed_length.witness.key).unwrap();
    assert_eq!(w.n_c, 6);
    assert_eq!(w.omega, Some(6));
}

#[test]
fn improved_bound_matches_optimum() {
    let m = diamond();
    let search = SearchConfig::default();
    let cfg = OptConfig { grid_oracle: true, ..Default::default() };
    let s = all_bounds(&m, &search, Some(&cfg)).unwrap();
    let imp = s.improved.unwrap();
    assert!((imp.value - 0.5 * log2(5.0)).abs() < 1e-4, "{}", imp.value);
    let opt = imp.optimum.unwrap();
    let expect = [0.1, 0.15, 0.1, 0.15, 0.15, 0.1, 0.15, 0.1];
    for (p, e) in opt.point.iter().zip(expect) {
        assert!((p - e).abs() < 1e-3, "{:?}", opt.point);
    }
    let grid = opt.grid.unwrap();
    assert!((grid.objective - opt.objective).abs() < 1e-3);
    for p in &s.pairs {
        assert!(p.basic <= p.improved.unwrap() + 1e-6);
        assert!(p.improved.unwrap() <= p.fixed_length + 1e-6, "{}", p.key);
    }
}

#[test]
fn class_restricted_entropies() {
    let m = diamond();
    let p = m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap();
    let cg = chargraph::build(&m, &p, 1).unwrap();
    let whole = clique_entropy(&cg.graph).unwrap();
    assert!((whole.value - (3.5 - 0.75 * log2(3.0))).abs() < 1e-12);
    let ctx = CutContext::new(&m, &p, 1).unwrap();
    let classes = ctx.classes(0);
    assert_eq!(classes.len(), 4);
    let vals: Vec<f64> = (0..classes.len())
        .map(|c| {
            let vs: Vec<usize> = (0..cg.graph.n()).filter(|&v| cg.layers[v].cl == c).collect();
            clique_entropy(&cg.graph.project(&vs).unwrap()).unwrap().value
        })
        .collect();
    assert_eq!(vals[0], 0.0);
    assert!((vals[1] - 2.0 / 3.0).abs() < 1e-12 && (vals[2] - 2.0 / 3.0).abs() < 1e-12, "{vals:?}");
    assert_eq!(vals[3], 0.0);
}

#[test]
fn scheme_codes_meet_rate_guarantees() {
    let m = diamond();
    for k in [2, 4] {
        let code = huffman_transform(&m, &diamond_scheme(&m, k).unwrap()).unwrap();
        let r = evaluate(&m, &code).unwrap();
        assert!(r.admissible && r.non_ud_edges.is_empty());
        let kf = k as f64;
        assert!(r.rate <= 1.25 + 1.0 / kf + 1e-12, "{}", r.rate);
        let e1 = r.edge("e1").unwrap().rate;
        assert_eq!(e1, r.edge("e4").unwrap().rate);
        assert!(e1 <= 1.0 + 1.0 / kf);
        assert!(r.edge("e2").unwrap().rate <= 0.5 + 1.0 / kf);
    }
}

#[test]
fn scheme_codes_color_the_k_fold_graph() {
    let m = diamond();
    let cut = m.analyze_cut_ids(&["e5", "e6"]).unwrap();
    let parts = m.enumerate_strong_partitions(&cut).unwrap();
    let k1 = huffman_transform(&m, &diamond_scheme_split(&m, 1, 1).unwrap()).unwrap();
    let k2 = huffman_transform(&m, &diamond_scheme(&m, 2).unwrap()).unwrap();
    for p in &parts {
        assert!(cut_coloring_check(&m, &k1, p).unwrap().holds);
        assert!(cut_coloring_check(&m, &k2, p).unwrap().holds);
    }
}
