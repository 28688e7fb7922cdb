//! Sardinas–Patterson test for unique decodability.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Whether the finite set of binary codewords is uniquely decodable.
///
/// The set of dangling suffixes is closed under the usual step; the code is
/// uniquely decodable iff no dangling suffix is itself a codeword.
pub fn sardinas_patterson<S: AsRef<str>>(codewords: &[S]) -> Result<bool> {
    let code: BTreeSet<&str> = codewords.iter().map(|w| w.as_ref()).collect();
    if code.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWord);
    }
    if let Some(w) = code.iter().find(|w| w.bytes().any(|b| b != b'0' && b != b'1')) {
        return Err(Error::InvalidArgument(format!("codeword {w:?} is not binary")));
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut frontier: Vec<String> = Vec::new();
    for a in &code {
        for b in &code {
            if a != b {
                if let Some(rest) = b.strip_prefix(a) {
                    frontier.push(rest.to_string());
                }
            }
        }
    }
    while let Some(s) = frontier.pop() {
        if code.contains(s.as_str()) {
            return Ok(false);
        }
        if !seen.insert(s.clone()) {
            continue;
        }
        for c in &code {
            if let Some(rest) = s.strip_prefix(c) {
                if !rest.is_empty() {
                    frontier.push(rest.to_string());
                }
            }
            if let Some(rest) = c.strip_prefix(s.as_str()) {
                if !rest.is_empty() {
                    frontier.push(rest.to_string());
                }
            }
        }
    }
    Ok(true)
}
