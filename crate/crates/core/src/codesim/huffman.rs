//! Binary Huffman codes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(PartialEq)]
struct Node {
    weight: f64,
    /// Least symbol in the subtree, for deterministic tie-breaking.
    key: usize,
    symbols: Vec<usize>,
}

impl Eq for Node {}

impl Ord for Node {
    // Reversed so the max-heap pops the lightest node first.
    fn cmp(&self, o: &Self) -> Ordering {
        o.weight.total_cmp(&self.weight).then(o.key.cmp(&self.key))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Codeword lengths of a Huffman code. A single symbol gets length 1.
pub fn lengths(probs: &[f64]) -> Vec<usize> {
    let n = probs.len();
    if n <= 1 {
        return vec![1; n];
    }
    let mut len = vec![0usize; n];
    let mut heap: BinaryHeap<Node> =
        probs.iter().enumerate().map(|(i, &w)| Node { weight: w, key: i, symbols: vec![i] }).collect();
    while heap.len() > 1 {
        let a = heap.pop().unwrap();
        let b = heap.pop().unwrap();
        for &s in a.symbols.iter().chain(&b.symbols) {
            len[s] += 1;
        }
        let mut symbols = a.symbols;
        symbols.extend(b.symbols);
        heap.push(Node { weight: a.weight + b.weight, key: a.key.min(b.key), symbols });
    }
    len
}

/// Canonical prefix code for the given lengths, assigned in order of
/// (length, symbol).
pub fn canonical_codewords(lengths: &[usize]) -> Vec<String> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&s| (lengths[s], s));
    let mut out = vec![String::new(); lengths.len()];
    // Current codeword as bits, most significant first.
    let mut code: Vec<u8> = Vec::new();
    for (i, &s) in order.iter().enumerate() {
        let l = lengths[s];
        if i > 0 {
            // Binary increment; a complete code never overflows.
            for b in code.iter_mut().rev() {
                if *b == 0 {
                    *b = 1;
                    break;
                }
                *b = 0;
            }
        }
        code.resize(l, 0);
        out[s] = code.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    }
    out
}

/// Huffman codewords for a distribution over symbols.
pub fn codewords(probs: &[f64]) -> Vec<String> {
    canonical_codewords(&lengths(probs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_and_degenerate() {
        assert_eq!(lengths(&[0.25; 4]), vec![2; 4]);
        assert_eq!(codewords(&[1.0]), vec!["0"]);
        assert_eq!(codewords(&[0.75, 0.25]), vec!["0", "1"]);
        let l = lengths(&[0.5, 0.25, 0.125, 0.125]);
        assert_eq!(l, vec![1, 2, 3, 3]);
        assert_eq!(canonical_codewords(&l), vec!["0", "10", "110", "111"]);
    }

    #[test]
    fn kraft_equality() {
        let p = [0.3, 0.2, 0.2, 0.1, 0.1, 0.05, 0.05];
        let l = lengths(&p);
        let kraft: f64 = l.iter().map(|&x| 0.5f64.powi(x as i32)).sum();
        assert!((kraft - 1.0).abs() < 1e-15);
        let h: f64 = p.iter().map(|x| -x * x.log2()).sum();
        let avg: f64 = p.iter().zip(&l).map(|(x, &n)| x * n as f64).sum();
        assert!(avg >= h && avg < h + 1.0);
    }
}
