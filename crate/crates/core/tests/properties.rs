use netfunc_core::chargraph::{self, sandwich_check};
use netfunc_core::entropy::{
    chromatic_entropy, clique_entropy, clique_entropy_product_check, graph_entropy, kappa, shannon_entropy,
};
use netfunc_core::netmodel::EdgeSet;
use netfunc_core::random::{planted_module, positive_dist, random_graph, random_model, ModelShape};
use netfunc_core::ProbGraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn same_graph(a: &ProbGraph, b: &ProbGraph) -> bool {
    a.labels() == b.labels() && a.edges() == b.edges() && a.dist() == b.dist()
}

/// Replace the vertices with the given labels by one vertex.
fn replace_labels(g: &ProbGraph, members: &[String], label: &str) -> ProbGraph {
    let us: Vec<usize> = members.iter().map(|l| g.index_of_label(l).unwrap()).collect();
    g.replace(&us, label).unwrap()
}

/// Graph on `n` vertices with `t` disjoint planted autonomous sets, built by
/// substituting random graphs into the vertices of a random quotient.
fn planted_sets(r: &mut ChaCha8Rng, n: usize, t: usize) -> (ProbGraph, Vec<Vec<usize>>) {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, r.gen_range(0..=i));
    }
    // Owner of every vertex in the quotient: sets 0..t, then singletons.
    let mut owner = vec![0usize; n];
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); t];
    let mut next = t;
    for (pos, &v) in order.iter().enumerate() {
        if pos < 2 * t {
            owner[v] = pos / 2;
            sets[pos / 2].push(v);
        } else if pos < n && r.gen_bool(0.3) && t > 0 {
            let j = r.gen_range(0..t);
            owner[v] = j;
            sets[j].push(v);
        } else {
            owner[v] = next;
            next += 1;
        }
    }
    let quotient: Vec<Vec<bool>> = (0..next).map(|_| (0..next).map(|_| r.gen_bool(0.5)).collect()).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (owner[u].min(owner[v]), owner[u].max(owner[v]));
            let on = if a == b { r.gen_bool(0.5) } else { quotient[a][b] };
            if on {
                edges.push((u, v));
            }
        }
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    let labels = (0..n).map(|v| format!("v{v}")).collect();
    (ProbGraph::new(labels, &edges, positive_dist(r, n)).unwrap(), sets)
}

fn pair_graph(r: &mut ChaCha8Rng, max: usize) -> ProbGraph {
    let n = r.gen_range(1..=max);
    let p = r.gen_range(0.2..0.8);
    random_graph(r, n, p)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn cut_analysis_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_model(&mut r, &ModelShape::default());
        let e = m.num_edges() as u32;
        let c = r.gen_range(0..1u32 << e);
        let bigger = c | r.gen_range(0..1u32 << e);
        let a = m.analyze_cut(EdgeSet(c)).unwrap();
        let b = m.analyze_cut(EdgeSet(bigger)).unwrap();
        prop_assert!(a.i.is_subset(b.i));
        prop_assert!(a.k.is_subset(b.k));
    }

    #[test]
    fn complement_is_an_involution(seed in any::<u64>()) {
        let g = pair_graph(&mut rng(seed), 9);
        prop_assert!(same_graph(&g.complement().complement(), &g));
    }

    #[test]
    fn complement_of_and_is_or_of_complements(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let gs: Vec<ProbGraph> = (0..k).map(|_| pair_graph(&mut r, 3)).collect();
        let lhs = ProbGraph::and_product(&gs).unwrap().complement();
        let comps: Vec<ProbGraph> = gs.iter().map(|g| g.complement()).collect();
        let rhs = ProbGraph::or_product(&comps).unwrap();
        prop_assert_eq!(lhs.edges(), rhs.edges());
        let and = ProbGraph::and_product(&gs).unwrap();
        let or = ProbGraph::or_product(&gs).unwrap();
        for (u, v) in and.edges() {
            prop_assert!(or.adjacent(u, v));
        }
    }

    #[test]
    fn replacement_order_does_not_matter(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(5..=8);
        let t = r.gen_range(2..=(n / 2).min(3));
        let (g, sets) = planted_sets(&mut r, n, t);
        let named: Vec<Vec<String>> = sets.iter().map(|s| s.iter().map(|&v| g.label(v).to_string()).collect()).collect();
        let apply = |order: &[usize]| {
            order.iter().fold(g.clone(), |h, &j| replace_labels(&h, &named[j], &format!("u{j}")))
        };
        let forward: Vec<usize> = (0..t).collect();
        let backward: Vec<usize> = (0..t).rev().collect();
        let a = apply(&forward);
        let b = apply(&backward);
        prop_assert_eq!(a.labels(), b.labels());
        prop_assert_eq!(a.edges(), b.edges());
        for (x, y) in a.dist().iter().zip(b.dist()) {
            prop_assert!((x - y).abs() < 1e-15);
        }
        prop_assert!((a.dist().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grouping_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=8);
        let size = r.gen_range(1..=n);
        let (g, u) = planted_module(&mut r, n, size, 0.5);
        let h = shannon_entropy(g.dist()).unwrap();
        let merged = shannon_entropy(g.replace(&u, "u").unwrap().dist()).unwrap();
        let mass: f64 = u.iter().map(|&v| g.dist()[v]).sum();
        let inner = shannon_entropy(g.project(&u).unwrap().dist()).unwrap();
        prop_assert!((h - merged - mass * inner).abs() < 1e-12);
        let p = g.project(&u).unwrap();
        prop_assert!((p.dist().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn split_blocks_are_autonomous(seed in any::<u64>()) {
        let g = pair_graph(&mut rng(seed), 9);
        let split = g.autonomous_split();
        for b in &split.blocks {
            prop_assert!(g.is_autonomous(b));
        }
    }
}

#[test]
fn substitution_of_planted_sets() {
    let mut r = rng(7);
    for trial in 0..120 {
        let n = r.gen_range(3..=8);
        let h = |g: &ProbGraph| clique_entropy(g).unwrap().value;
        if trial % 2 == 0 {
            let size = r.gen_range(2..=n);
            let (g, u) = planted_module(&mut r, n, size, 0.5);
            let lhs = h(&g);
            let mass: f64 = u.iter().map(|&v| g.dist()[v]).sum();
            let rhs = h(&g.replace(&u, "u").unwrap()) + mass * h(&g.project(&u).unwrap());
            assert!((lhs - rhs).abs() < 1e-5, "{lhs} {rhs}");
        } else if n >= 4 {
            let (g, sets) = planted_sets(&mut r, n, 2);
            let mut reduced = g.clone();
            let mut rhs = 0.0;
            for (j, s) in sets.iter().enumerate() {
                let labels: Vec<String> = s.iter().map(|&v| g.label(v).to_string()).collect();
                reduced = replace_labels(&reduced, &labels, &format!("u{j}"));
                let mass: f64 = s.iter().map(|&v| g.dist()[v]).sum();
                rhs += mass * h(&g.project(s).unwrap());
            }
            rhs += h(&reduced);
            let lhs = h(&g);
            assert!((lhs - rhs).abs() < 1e-5, "{lhs} {rhs}");
        }
    }
}

#[test]
fn entropy_identities_and_chain() {
    let mut r = rng(8);
    for _ in 0..150 {
        let n = r.gen_range(1..=8);
        let p = r.gen_range(0.1..0.9);
        let g = random_graph(&mut r, n, p);
        let hz = shannon_entropy(g.dist()).unwrap();
        let w = clique_entropy(&g).unwrap().value;
        let kappa_c = kappa::solve(&g.complement(), 1e-9).unwrap().value;
        assert!((kappa_c + w - hz).abs() < 2e-6, "{kappa_c} {w} {hz}");
        let k = graph_entropy(&g).unwrap().value;
        let chi = chromatic_entropy(&g).unwrap().value;
        assert!(w <= k + 1e-5 && k <= chi + 1e-5, "{w} {k} {chi}");
        let omega = g.clique_number().unwrap() as f64;
        assert!(w <= omega.log2() + 1e-9);
        assert!(w >= 0.0 && w <= (n as f64).log2() + 1e-12);
    }
}

#[test]
fn and_additivity_of_clique_entropy() {
    let mut r = rng(9);
    for _ in 0..40 {
        let a = pair_graph(&mut r, 4);
        let b = pair_graph(&mut r, 4);
        let c = clique_entropy_product_check(&[a, b]).unwrap();
        assert!(c.discrepancy < 1e-5, "{c:?}");
    }
    let e = ProbGraph::empty(vec![0.5, 0.5]).unwrap();
    let k = ProbGraph::complete(vec![0.25, 0.75]).unwrap();
    let c = clique_entropy_product_check(&[e, k.clone()]).unwrap();
    assert!((c.product - shannon_entropy(k.dist()).unwrap()).abs() < 1e-12);
}

#[test]
fn or_additivity_of_graph_entropy() {
    let mut r = rng(10);
    for _ in 0..30 {
        let a = pair_graph(&mut r, 4);
        let b = pair_graph(&mut r, 3);
        let prod = ProbGraph::or_product(&[a.clone(), b.clone()]).unwrap();
        let lhs = graph_entropy(&prod).unwrap().value;
        let rhs = graph_entropy(&a).unwrap().value + graph_entropy(&b).unwrap().value;
        assert!((lhs - rhs).abs() < 2e-6, "{lhs} {rhs}");
    }
}

/// Minimum of `I(W;Z)` over `W` supported on maximal cliques containing
/// `Z`, by alternating minimisation.
fn mutual_information_oracle(g: &ProbGraph) -> f64 {
    let n = g.n();
    let is_clique = |s: u32| (0..n).all(|u| (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || g.adjacent(u, v)));
    let cliques: Vec<u32> = (1u32..1 << n)
        .filter(|&s| is_clique(s) && (0..n).all(|v| s >> v & 1 == 1 || !is_clique(s | 1 << v)))
        .collect();
    let p = g.dist();
    let mut q = vec![1.0 / cliques.len() as f64; cliques.len()];
    let mut value = f64::INFINITY;
    for _ in 0..20_000 {
        let mut next = vec![0.0; cliques.len()];
        let mut info = 0.0;
        for (z, &pz) in p.iter().enumerate().take(n) {
            let norm: f64 = cliques.iter().zip(&q).filter(|(c, _)| *c >> z & 1 == 1).map(|(_, w)| w).sum();
            info += pz * -(norm.log2());
            for (i, c) in cliques.iter().enumerate() {
                if c >> z & 1 == 1 {
                    next[i] += pz * q[i] / norm;
                }
            }
        }
        value = info;
        q = next;
    }
    value
}

#[test]
fn clique_entropy_matches_alternating_minimisation() {
    let mut r = rng(11);
    for _ in 0..40 {
        let n = r.gen_range(2..=6);
        let g = random_graph(&mut r, n, 0.5);
        let expect = shannon_entropy(g.dist()).unwrap() - mutual_information_oracle(&g);
        let got = clique_entropy(&g).unwrap().value;
        assert!((got - expect).abs() < 1e-4, "{got} {expect}");
    }
}

#[test]
fn exact_on_empty_and_complete() {
    let mut r = rng(12);
    for n in 1..=8 {
        let d = positive_dist(&mut r, n);
        let e = ProbGraph::empty(d.clone()).unwrap();
        let k = ProbGraph::complete(d.clone()).unwrap();
        assert_eq!(clique_entropy(&e).unwrap().value, 0.0);
        assert_eq!(clique_entropy(&k).unwrap().value, shannon_entropy(&d).unwrap());
    }
}

#[test]
fn sandwich_on_random_models() {
    let mut r = rng(13);
    let mut checked = 0;
    while checked < 20 {
        let m = random_model(&mut r, &ModelShape::default());
        for c in m.enumerate_cut_sets(m.num_edges(), m.num_edges()).unwrap() {
            for p in m.enumerate_strong_partitions(&c).unwrap() {
                if m.alphabet().pow(2 * p.cut.i.union(p.cut.j).len() as u32) > 256 {
                    continue;
                }
                let s = sandwich_check(&m, &p, 2).unwrap();
                assert!(s.holds(), "{} {:?}", m.format_pair(&p), s.counterexample);
                let cg = chargraph::build(&m, &p, 2).unwrap();
                assert!(chargraph::verify_layers(&m, &cg).unwrap().ok());
            }
        }
        checked += 1;
    }
}
