use netfunc_core::codesim::{
    cut_coloring_check, diamond_scheme, diamond_scheme_split, evaluate, fixed_length_transform, huffman, huffman_transform,
    sardinas_patterson, CodeSpec, EncoderEntry, UDCode,
};
use netfunc_core::entropy::clique_entropy;
use netfunc_core::fixtures::diamond;
use netfunc_core::{chargraph, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of ways to split `s` into codewords, capped at 2.
fn parses(s: &str, code: &[String]) -> usize {
    let n = s.len();
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for i in 0..n {
        if ways[i] == 0 {
            continue;
        }
        for w in code {
            if s[i..].starts_with(w.as_str()) {
                ways[i + w.len()] = (ways[i + w.len()] + ways[i]).min(2);
            }
        }
    }
    ways[n]
}

/// Whether some binary string of length at most `max` has two parses.
fn ambiguous_up_to(code: &[String], max: usize) -> bool {
    (1..=max).any(|len| (0..1u32 << len).any(|x| parses(&format!("{x:0len$b}"), code) > 1))
}

#[test]
fn sardinas_patterson_agrees_with_double_parsing() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut seen = [0usize; 2];
    for _ in 0..400 {
        let n = rng.gen_range(2..=4);
        let mut code: Vec<String> = (0..n)
            .map(|_| {
                let len = rng.gen_range(1..=3);
                (0..len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect()
            })
            .collect();
        code.sort();
        code.dedup();
        let ud = sardinas_patterson(&code).unwrap();
        assert_eq!(ud, !ambiguous_up_to(&code, 12), "{code:?}");
        seen[ud as usize] += 1;
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
    assert!(!ambiguous_up_to(&["0".into(), "10".into(), "110".into()], 8));
    assert!(ambiguous_up_to(&["1".into(), "10".into(), "01".into()], 8));
    assert_eq!(sardinas_patterson(&["0", ""]), Err(Error::EmptyWord));
}

#[test]
fn huffman_codes_are_uniquely_decodable_and_near_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        let p = netfunc_core::random::positive_dist(&mut rng, n);
        let words = huffman::codewords(&p);
        assert!(sardinas_patterson(&words).unwrap());
        let h: f64 = p.iter().map(|x| -x * x.log2()).sum();
        let avg: f64 = p.iter().zip(&words).map(|(x, w)| x * w.len() as f64).sum();
        if n == 1 {
            assert_eq!(avg, 1.0);
        } else {
            assert!(avg < h + 1.0 && avg + 1e-12 >= h);
        }
    }
    assert_eq!(huffman::codewords(&[0.25; 4]).iter().map(|w| w.len()).collect::<Vec<_>>(), vec![2; 4]);
}

#[test]
fn truncated_code_fails_coloring() {
    let m = diamond();
    let code = fixed_length_transform(&m, &diamond_scheme_split(&m, 1, 1).unwrap()).unwrap();
    let mut spec: CodeSpec = code.to_spec(&m);
    // e5 carries x1 + x2 as 00, 01, 10; merge the sums 1 and 2.
    for e in spec.encoders.get_mut("e5").unwrap() {
        if let EncoderEntry::Received { output, .. } = e {
            if output == "10" {
                *output = "01".into();
            }
        }
    }
    spec.decoder.retain(|d| d.received[0] != "10");
    let broken = UDCode::from_spec(&m, &spec).unwrap();
    let p = m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap();
    let check = cut_coloring_check(&m, &broken, &p).unwrap();
    assert!(!check.holds && check.monochromatic_edges > 0);
    let r = evaluate(&m, &broken).unwrap();
    assert!(!r.admissible);
    assert!(cut_coloring_check(&m, &code, &p).unwrap().holds);
    let trivial = m.strong_partition(&[vec!["e5", "e6"]]).unwrap();
    assert!(cut_coloring_check(&m, &code, &trivial).unwrap().holds);
}

#[test]
fn rates_dominate_the_cut_bound() {
    let m = diamond();
    for k in [1usize, 2, 4] {
        let scheme = if k == 1 { diamond_scheme_split(&m, 1, 1) } else { diamond_scheme(&m, k) }.unwrap();
        let r = evaluate(&m, &huffman_transform(&m, &scheme).unwrap()).unwrap();
        assert!(r.admissible);
        for c in m.enumerate_cut_sets(6, 6).unwrap() {
            let sum: f64 = c.cut.indices().iter().map(|&e| r.edges[e].rate).sum();
            for p in m.enumerate_strong_partitions(&c).unwrap() {
                let h = clique_entropy(&chargraph::build(&m, &p, 1).unwrap().graph).unwrap().value;
                assert!(sum >= h - 1e-9, "k={k} {} {sum} {h}", m.format_pair(&p));
            }
        }
        assert!(r.rate >= 1.75 - 0.375 * 3f64.log2() - 1e-9);
    }
}

#[test]
fn all_zero_input_decodes_to_zero() {
    let m = diamond();
    let code = huffman_transform(&m, &diamond_scheme(&m, 2).unwrap()).unwrap();
    let ids = code.run(&m, &[0; 6]).unwrap();
    assert_eq!(code.decode(&m, &ids).unwrap(), &[0, 0]);
    let buf = [0, 1, 1, 1, 1, 0];
    let ids = code.run(&m, &buf).unwrap();
    assert_eq!(code.decode(&m, &ids).unwrap(), &[2, 2]);
}
