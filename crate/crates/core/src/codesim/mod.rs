//! k-shot network function-computing codes: execution, admissibility,
//! expected rates, Huffman transformation of fixed-length schemes, and the
//! split-and-partial-sum scheme for the diamond network.

pub mod huffman;
pub mod sardinas;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::chargraph;
use crate::error::{Error, Result};
use crate::netmodel::{NetworkModel, SourceSet, StrongPartition};
use crate::space::{function_values, prob_k, MessageSpace};

pub use sardinas::sardinas_patterson;

/// Local encoder of one edge.
#[derive(Clone, Debug, PartialEq)]
pub enum EncoderTable {
    /// Out-edge of a source: codeword id per k-shot message of that source.
    Source(Vec<u32>),
    /// Any other edge: codeword id per tuple of codeword ids received on the
    /// tail's in-edges (in edge-index order).
    Relay(HashMap<Vec<u32>, u32>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeEncoder {
    pub codebook: Vec<String>,
    pub table: EncoderTable,
}

/// A k-shot code: one encoder per edge and a decoder at the sink.
#[derive(Clone, Debug, PartialEq)]
pub struct UDCode {
    pub k: usize,
    pub encoders: Vec<EdgeEncoder>,
    /// Output per tuple of codeword ids on the sink's in-edges.
    pub decoder: HashMap<Vec<u32>, Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EncoderEntry {
    Message { message: Vec<u8>, output: String },
    Received { received: Vec<String>, output: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DecoderEntry {
    pub received: Vec<String>,
    pub output: Vec<i64>,
}

/// JSON form of a code. Source out-edges list `message` entries, other edges
/// list `received` entries keyed by the codewords on the tail's in-edges.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub k: usize,
    pub encoders: BTreeMap<String, Vec<EncoderEntry>>,
    pub decoder: Vec<DecoderEntry>,
}

fn mismatch(msg: String) -> Error {
    Error::DomainMismatch(msg)
}

fn intern(book: &mut Vec<String>, w: &str) -> u32 {
    match book.iter().position(|x| x == w) {
        Some(i) => i as u32,
        None => {
            book.push(w.to_string());
            (book.len() - 1) as u32
        }
    }
}

impl UDCode {
    pub fn from_spec(model: &NetworkModel, spec: &CodeSpec) -> Result<Self> {
        let k = spec.k;
        if k == 0 {
            return Err(mismatch("k must be at least 1".into()));
        }
        let q = model.alphabet();
        let mut encoders = Vec::with_capacity(model.num_edges());
        for edge in model.edges() {
            let entries = spec
                .encoders
                .get(&edge.id)
                .ok_or_else(|| mismatch(format!("no encoder for edge {}", edge.id)))?;
            let mut codebook = Vec::new();
            let table = match model.source_position(edge.tail) {
                Some(i) => {
                    let sp = MessageSpace::new(SourceSet::singleton(i), k, q)?;
                    let mut t = vec![u32::MAX; sp.size()];
                    for e in entries {
                        let EncoderEntry::Message { message, output } = e else {
                            return Err(mismatch(format!("edge {} leaves a source and needs message entries", edge.id)));
                        };
                        if message.len() != k || message.iter().any(|&x| x as usize >= q) {
                            return Err(mismatch(format!("bad message {message:?} on edge {}", edge.id)));
                        }
                        let idx = message.iter().fold(0, |a, &x| a * q + x as usize);
                        t[idx] = intern(&mut codebook, output);
                    }
                    if t.contains(&u32::MAX) {
                        return Err(mismatch(format!("encoder of edge {} is not total", edge.id)));
                    }
                    EncoderTable::Source(t)
                }
                None => {
                    if entries.iter().any(|e| !matches!(e, EncoderEntry::Received { .. })) {
                        return Err(mismatch(format!("edge {} needs received entries", edge.id)));
                    }
                    // Filled once upstream codebooks are known.
                    EncoderTable::Relay(HashMap::new())
                }
            };
            encoders.push(EdgeEncoder { codebook, table });
        }
        let mut code = UDCode { k, encoders, decoder: HashMap::new() };
        code.resolve_relays(model, spec)?;
        for d in &spec.decoder {
            let key = code.key_for(model, &model.in_edges(model.sink()), &d.received)?;
            if d.output.len() != k {
                return Err(mismatch("decoder outputs must have k entries".into()));
            }
            code.decoder.insert(key, d.output.clone());
        }
        Ok(code)
    }

    /// Fill relay tables, translating received codewords to ids in the
    /// upstream codebooks.
    fn resolve_relays(&mut self, model: &NetworkModel, spec: &CodeSpec) -> Result<()> {
        for &ei in model.topo_edges() {
            let edge = &model.edges()[ei];
            if model.source_position(edge.tail).is_some() {
                continue;
            }
            let ins = model.in_edges(edge.tail);
            let mut table = HashMap::new();
            let mut codebook = Vec::new();
            for e in &spec.encoders[&edge.id] {
                if let EncoderEntry::Received { received, output } = e {
                    let key = self.key_for(model, &ins, received)?;
                    table.insert(key, intern(&mut codebook, output));
                }
            }
            self.encoders[ei] = EdgeEncoder { codebook, table: EncoderTable::Relay(table) };
        }
        Ok(())
    }

    fn key_for(&self, model: &NetworkModel, ins: &[usize], words: &[String]) -> Result<Vec<u32>> {
        if words.len() != ins.len() {
            return Err(mismatch(format!("expected {} received words, got {}", ins.len(), words.len())));
        }
        ins.iter()
            .zip(words)
            .map(|(&e, w)| {
                self.encoders[e].codebook.iter().position(|x| x == w).map(|i| i as u32).ok_or_else(|| {
                    mismatch(format!("word {w} is not a codeword of edge {}", model.edges()[e].id))
                })
            })
            .collect()
    }

    pub fn to_spec(&self, model: &NetworkModel) -> CodeSpec {
        let q = model.alphabet();
        let mut encoders = BTreeMap::new();
        for (ei, edge) in model.edges().iter().enumerate() {
            let enc = &self.encoders[ei];
            let entries = match &enc.table {
                EncoderTable::Source(t) => t
                    .iter()
                    .enumerate()
                    .map(|(idx, &c)| {
                        let sp = MessageSpace::new(SourceSet::singleton(0), self.k, q).unwrap();
                        EncoderEntry::Message { message: sp.digits(idx), output: enc.codebook[c as usize].clone() }
                    })
                    .collect(),
                EncoderTable::Relay(t) => {
                    let ins = model.in_edges(edge.tail);
                    let mut rows: Vec<EncoderEntry> = t
                        .iter()
                        .map(|(key, &c)| EncoderEntry::Received {
                            received: key
                                .iter()
                                .zip(&ins)
                                .map(|(&w, &e)| self.encoders[e].codebook[w as usize].clone())
                                .collect(),
                            output: enc.codebook[c as usize].clone(),
                        })
                        .collect();
                    rows.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
                    rows
                }
            };
            encoders.insert(edge.id.clone(), entries);
        }
        let ins = model.in_edges(model.sink());
        let mut decoder: Vec<DecoderEntry> = self
            .decoder
            .iter()
            .map(|(key, out)| DecoderEntry {
                received: key.iter().zip(&ins).map(|(&w, &e)| self.encoders[e].codebook[w as usize].clone()).collect(),
                output: out.clone(),
            })
            .collect();
        decoder.sort_by(|a, b| a.received.cmp(&b.received));
        CodeSpec { k: self.k, encoders, decoder }
    }

    /// Codeword id on every edge for one full k-shot input buffer.
    pub fn run(&self, model: &NetworkModel, buf: &[u8]) -> Result<Vec<u32>> {
        let q = model.alphabet();
        let mut ids = vec![u32::MAX; model.num_edges()];
        for &ei in model.topo_edges() {
            let edge = &model.edges()[ei];
            ids[ei] = match &self.encoders[ei].table {
                EncoderTable::Source(t) => {
                    let i = model.source_position(edge.tail).ok_or_else(|| mismatch(format!("edge {} is not a source edge", edge.id)))?;
                    let idx = (0..self.k).fold(0, |a, j| a * q + buf[i * self.k + j] as usize);
                    t[idx]
                }
                EncoderTable::Relay(t) => {
                    let key: Vec<u32> = model.in_edges(edge.tail).iter().map(|&e| ids[e]).collect();
                    *t.get(&key).ok_or_else(|| mismatch(format!("edge {} has no codeword for input {key:?}", edge.id)))?
                }
            };
        }
        Ok(ids)
    }

    /// Sink output for one full input buffer.
    pub fn decode(&self, model: &NetworkModel, ids: &[u32]) -> Result<&[i64]> {
        let key: Vec<u32> = model.in_edges(model.sink()).iter().map(|&e| ids[e]).collect();
        self.decoder
            .get(&key)
            .map(|v| v.as_slice())
            .ok_or_else(|| mismatch(format!("decoder has no entry for {key:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeRate {
    pub edge: String,
    /// Expected codeword length `L_e` in bits per k-shot use.
    pub expected_length: f64,
    /// `R_e = L_e / k`.
    pub rate: f64,
    pub image_size: usize,
    pub uniquely_decodable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub k: usize,
    pub edges: Vec<EdgeRate>,
    /// `R = max_e R_e`.
    pub rate: f64,
    pub admissible: bool,
    pub wrong_outputs: usize,
    pub non_ud_edges: Vec<String>,
}

impl RateReport {
    pub fn edge(&self, id: &str) -> Option<&EdgeRate> {
        self.edges.iter().find(|e| e.edge == id)
    }
}

/// Run the code on every input, check zero-error computation and compute the
/// expected rate of every edge under the i.i.d. k-extension.
pub fn evaluate(model: &NetworkModel, code: &UDCode) -> Result<RateReport> {
    let k = code.k;
    if code.encoders.len() != model.num_edges() {
        return Err(mismatch(format!("{} encoders for {} edges", code.encoders.len(), model.num_edges())));
    }
    let full = MessageSpace::new(model.all_sources(), k, model.alphabet())?;
    let mut buf = vec![0u8; model.num_sources() * k];
    let mut expected = vec![0.0; model.num_edges()];
    let mut used: Vec<Vec<bool>> = code.encoders.iter().map(|e| vec![false; e.codebook.len()]).collect();
    let mut wrong = 0;
    for x in 0..full.size() {
        full.write_into(x, &mut buf);
        let ids = code.run(model, &buf)?;
        let out = code.decode(model, &ids)?;
        if out != function_values(model, &buf, k).as_slice() {
            wrong += 1;
        }
        let p = prob_k(model, &buf, k);
        for (e, &c) in ids.iter().enumerate() {
            expected[e] += p * code.encoders[e].codebook[c as usize].len() as f64;
            used[e][c as usize] = true;
        }
    }
    let mut edges = Vec::with_capacity(model.num_edges());
    let mut non_ud = Vec::new();
    for (e, edge) in model.edges().iter().enumerate() {
        let image: Vec<&String> =
            code.encoders[e].codebook.iter().zip(&used[e]).filter(|(_, &u)| u).map(|(w, _)| w).collect();
        let ud = sardinas_patterson(&image)?;
        if !ud {
            non_ud.push(edge.id.clone());
        }
        edges.push(EdgeRate {
            edge: edge.id.clone(),
            expected_length: expected[e],
            rate: expected[e] / k as f64,
            image_size: image.len(),
            uniquely_decodable: ud,
        });
    }
    let rate = edges.iter().map(|e| e.rate).fold(0.0, f64::max);
    Ok(RateReport { k, edges, rate, admissible: wrong == 0, wrong_outputs: wrong, non_ud_edges: non_ud })
}

/// A function `ḡ_e` of the k-shot source matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeFunction {
    /// Value id for every full input, in the order of the full k-shot space.
    pub values: Vec<u32>,
    /// Vector carried by each value id.
    pub labels: Vec<Vec<i64>>,
}

impl EdgeFunction {
    /// Intern vectors computed per input; ids follow the sorted order of the
    /// distinct vectors.
    pub fn from_vectors(vectors: Vec<Vec<i64>>) -> Self {
        let mut labels = vectors.clone();
        labels.sort();
        labels.dedup();
        let values = vectors.iter().map(|v| labels.binary_search(v).unwrap() as u32).collect();
        EdgeFunction { values, labels }
    }
}

pub type Decoder = fn(&[&[i64]]) -> Vec<i64>;

/// Fixed-length scheme: one function of the sources per edge plus an optional
/// explicit decoder over the vectors on the sink's in-edges.
#[derive(Clone, Debug)]
pub struct FixedScheme {
    pub k: usize,
    pub edges: Vec<EdgeFunction>,
    pub decoder: Option<Decoder>,
}

fn edge_distributions(model: &NetworkModel, scheme: &FixedScheme) -> Result<Vec<Vec<f64>>> {
    let k = scheme.k;
    let full = MessageSpace::new(model.all_sources(), k, model.alphabet())?;
    if scheme.edges.len() != model.num_edges() || scheme.edges.iter().any(|e| e.values.len() != full.size()) {
        return Err(mismatch("scheme does not cover every edge and input".into()));
    }
    let mut buf = vec![0u8; model.num_sources() * k];
    let mut dists: Vec<Vec<f64>> = scheme.edges.iter().map(|e| vec![0.0; e.labels.len()]).collect();
    for x in 0..full.size() {
        full.write_into(x, &mut buf);
        let p = prob_k(model, &buf, k);
        for (e, f) in scheme.edges.iter().enumerate() {
            dists[e][f.values[x] as usize] += p;
        }
    }
    Ok(dists)
}

/// Turn a fixed scheme into a code with the given codebook per edge, deriving
/// local encoders and the decoder. Fails if some `ḡ_e` is not a function of
/// what the edge's tail receives, or the decoder is ambiguous.
fn realize(model: &NetworkModel, scheme: &FixedScheme, books: Vec<Vec<String>>) -> Result<UDCode> {
    let k = scheme.k;
    let q = model.alphabet();
    let full = MessageSpace::new(model.all_sources(), k, q)?;
    let mut tables: Vec<EncoderTable> = model
        .edges()
        .iter()
        .map(|e| match model.source_position(e.tail) {
            Some(_) => EncoderTable::Source(vec![u32::MAX; q.pow(k as u32)]),
            None => EncoderTable::Relay(HashMap::new()),
        })
        .collect();
    let sink_ins = model.in_edges(model.sink());
    let mut decoder: HashMap<Vec<u32>, Vec<i64>> = HashMap::new();
    let mut buf = vec![0u8; model.num_sources() * k];
    let ins: Vec<Vec<usize>> = model.edges().iter().map(|e| model.in_edges(e.tail)).collect();
    for x in 0..full.size() {
        full.write_into(x, &mut buf);
        for (ei, edge) in model.edges().iter().enumerate() {
            let v = scheme.edges[ei].values[x];
            match &mut tables[ei] {
                EncoderTable::Source(t) => {
                    let i = model.source_position(edge.tail).unwrap();
                    let idx = (0..k).fold(0, |a, j| a * q + buf[i * k + j] as usize);
                    if t[idx] != u32::MAX && t[idx] != v {
                        return Err(mismatch(format!("edge {} is not a function of its source", edge.id)));
                    }
                    t[idx] = v;
                }
                EncoderTable::Relay(t) => {
                    let key: Vec<u32> = ins[ei].iter().map(|&e| scheme.edges[e].values[x]).collect();
                    if let Some(&old) = t.get(&key) {
                        if old != v {
                            return Err(mismatch(format!("edge {} is not a function of its inputs", edge.id)));
                        }
                    }
                    t.insert(key, v);
                }
            }
        }
        let key: Vec<u32> = sink_ins.iter().map(|&e| scheme.edges[e].values[x]).collect();
        let out = match scheme.decoder {
            Some(dec) => {
                let labels: Vec<&[i64]> =
                    sink_ins.iter().map(|&e| scheme.edges[e].labels[key_of(&scheme.edges[e], x)].as_slice()).collect();
                dec(&labels)
            }
            None => function_values(model, &buf, k),
        };
        if let Some(old) = decoder.get(&key) {
            if *old != out {
                return Err(mismatch("sink cannot decode: equal inputs need different outputs".into()));
            }
        }
        decoder.insert(key, out);
    }
    let encoders = tables
        .into_iter()
        .zip(books)
        .map(|(table, codebook)| EdgeEncoder { codebook, table })
        .collect();
    Ok(UDCode { k, encoders, decoder })
}

fn key_of(f: &EdgeFunction, x: usize) -> usize {
    f.values[x] as usize
}

/// Replace every edge function by a Huffman code over its image distribution.
/// Constant functions get the single codeword `0`.
pub fn huffman_transform(model: &NetworkModel, scheme: &FixedScheme) -> Result<UDCode> {
    let books = edge_distributions(model, scheme)?.iter().map(|d| huffman::codewords(d)).collect();
    realize(model, scheme, books)
}

/// Fixed-length binary codewords of `max(1, ⌈log2 |image|⌉)` bits per edge.
pub fn fixed_length_transform(model: &NetworkModel, scheme: &FixedScheme) -> Result<UDCode> {
    let books = scheme
        .edges
        .iter()
        .map(|f| {
            let n = f.labels.len();
            let bits = (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize;
            (0..n).map(|v| format!("{v:0bits$b}")).collect()
        })
        .collect();
    realize(model, scheme, books)
}

fn sum_decoder(parts: &[&[i64]]) -> Vec<i64> {
    parts[0].iter().zip(parts[1]).map(|(a, b)| a + b).collect()
}

/// The split-and-partial-sum scheme on the diamond network for even `k`.
pub fn diamond_scheme(model: &NetworkModel, k: usize) -> Result<FixedScheme> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    diamond_scheme_split(model, k, k / 2)
}

/// The same construction with the first `h` rows routed through `e5` as
/// partial sums and the remaining rows through `e6`; any `1 ≤ h ≤ k` gives an
/// admissible scheme, including `k = 1, h = 1`.
pub fn diamond_scheme_split(model: &NetworkModel, k: usize, h: usize) -> Result<FixedScheme> {
    if k == 0 || h > k {
        return Err(Error::InvalidArgument(format!("need 0 < k and h ≤ k, got k={k}, h={h}")));
    }
    let ids = ["e1", "e2", "e3", "e4", "e5", "e6"];
    let idx: Vec<usize> = ids.iter().map(|id| model.edge_index(id)).collect::<Result<_>>()?;
    if model.num_edges() != 6 || model.num_sources() != 3 || model.in_edges(model.sink()) != vec![idx[4], idx[5]] {
        return Err(mismatch("model is not the diamond network".into()));
    }
    let full = MessageSpace::new(model.all_sources(), k, model.alphabet())?;
    let mut buf = vec![0u8; 3 * k];
    let mut vecs: Vec<Vec<Vec<i64>>> = (0..6).map(|_| Vec::with_capacity(full.size())).collect();
    for x in 0..full.size() {
        full.write_into(x, &mut buf);
        let row = |s: usize, j: usize| buf[s * k + j] as i64;
        let x1: Vec<i64> = (0..k).map(|j| row(0, j)).collect();
        let x2: Vec<i64> = (0..k).map(|j| row(1, j)).collect();
        let x3: Vec<i64> = (0..k).map(|j| row(2, j)).collect();
        let e5 = (0..k).map(|j| if j < h { x1[j] + x2[j] } else { x1[j] }).collect();
        let e6 = (0..k).map(|j| if j < h { x3[j] } else { x2[j] + x3[j] }).collect();
        vecs[0].push(x1);
        vecs[1].push(x2[..h].to_vec());
        vecs[2].push(x2[h..].to_vec());
        vecs[3].push(x3);
        vecs[4].push(e5);
        vecs[5].push(e6);
    }
    let mut edges = vec![None; 6];
    for (slot, v) in vecs.into_iter().enumerate() {
        edges[idx[slot]] = Some(EdgeFunction::from_vectors(v));
    }
    Ok(FixedScheme { k, edges: edges.into_iter().map(Option::unwrap).collect(), decoder: Some(sum_decoder) })
}

/// Result of checking that the codewords on a cut color the k-fold
/// characteristic graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColoringCheck {
    pub holds: bool,
    pub edges_checked: usize,
    pub monochromatic_edges: usize,
    pub example: Option<(String, String)>,
}

pub fn cut_coloring_check(model: &NetworkModel, code: &UDCode, partition: &StrongPartition) -> Result<ColoringCheck> {
    let k = code.k;
    let cg = chargraph::build(model, partition, k)?;
    let cut = partition.cut.cut.indices();
    let mut buf = vec![0u8; model.num_sources() * k];
    let mut colors: Vec<Vec<u32>> = Vec::with_capacity(cg.graph.n());
    for v in 0..cg.graph.n() {
        buf.iter_mut().for_each(|b| *b = 0);
        cg.space().write_into(v, &mut buf);
        let ids = code.run(model, &buf)?;
        colors.push(cut.iter().map(|&e| ids[e]).collect());
    }
    let edges = cg.graph.edges();
    let bad: Vec<&(usize, usize)> = edges.iter().filter(|(u, v)| colors[*u] == colors[*v]).collect();
    Ok(ColoringCheck {
        holds: bad.is_empty(),
        edges_checked: edges.len(),
        monochromatic_edges: bad.len(),
        example: bad.first().map(|&&(u, v)| (cg.graph.label(u).to_string(), cg.graph.label(v).to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{diamond, single_edge};

    #[test]
    fn scheme_hand_trace() {
        let m = diamond();
        let s = diamond_scheme(&m, 2).unwrap();
        let full = MessageSpace::new(m.all_sources(), 2, 2).unwrap();
        // x1 = (0,1), x2 = (1,1), x3 = (1,0).
        let x = full.index_of(&[0, 1, 1, 1, 1, 0]);
        let e5 = &s.edges[4];
        let e6 = &s.edges[5];
        assert_eq!(e5.labels[e5.values[x] as usize], vec![1, 1]);
        assert_eq!(e6.labels[e6.values[x] as usize], vec![1, 1]);
        assert!(matches!(diamond_scheme(&m, 3), Err(Error::OddK(3))));
    }

    #[test]
    fn fixed_length_diamond_is_admissible() {
        let m = diamond();
        let code = fixed_length_transform(&m, &diamond_scheme(&m, 2).unwrap()).unwrap();
        let r = evaluate(&m, &code).unwrap();
        assert!(r.admissible);
        assert_eq!(r.edge("e1").unwrap().rate, 1.0);
    }

    #[test]
    fn huffman_single_edge_biased() {
        let m = single_edge(&[0.75, 0.25]);
        let scheme = FixedScheme {
            k: 1,
            edges: vec![EdgeFunction::from_vectors(vec![vec![0], vec![1]])],
            decoder: None,
        };
        let code = huffman_transform(&m, &scheme).unwrap();
        let r = evaluate(&m, &code).unwrap();
        assert!(r.admissible);
        assert_eq!(r.edges[0].expected_length, 1.0);
    }

    #[test]
    fn silent_edge_is_not_admissible() {
        let m = single_edge(&[0.5, 0.5]);
        let text = r#"{"k":1,"encoders":{"e":[{"message":[0],"output":"0"},{"message":[1],"output":"0"}]},
            "decoder":[{"received":["0"],"output":[0]}]}"#;
        let spec: CodeSpec = serde_json::from_str(text).unwrap();
        let code = UDCode::from_spec(&m, &spec).unwrap();
        let r = evaluate(&m, &code).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.wrong_outputs, 1);
    }

    #[test]
    fn spec_round_trip() {
        let m = diamond();
        let code = huffman_transform(&m, &diamond_scheme(&m, 2).unwrap()).unwrap();
        let spec = code.to_spec(&m);
        let back = UDCode::from_spec(&m, &spec).unwrap();
        assert_eq!(evaluate(&m, &back).unwrap(), evaluate(&m, &code).unwrap());
    }
}
