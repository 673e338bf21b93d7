//! Reduced-word enumeration over a generator alphabet.
//!
//! Words are freely reduced only (no relator normalization); geometric
//! duplicates are removed downstream. Enumeration is a depth-first walk
//! in letter order, i.e. lexicographic in the word, so output order is
//! deterministic.

use alloc::vec::Vec;

use crate::moebius::MoebiusTransform;

/// A letter index: generator i maps to index 2i, its inverse to 2i+1.
pub type Letter = usize;

fn is_inverse_pair(x: Letter, y: Letter) -> bool {
    x / 2 == y / 2 && x != y
}

struct Walker<'a, F> {
    alphabet: &'a [MoebiusTransform],
    visit: F,
}

impl<F> Walker<'_, F>
where
    F: FnMut(&MoebiusTransform) -> bool,
{
    fn walk(&mut self, depth_left: usize, last: Option<Letter>, current: &MoebiusTransform) -> bool {
        if depth_left == 0 {
            return true;
        }
        for (letter, g) in self.alphabet.iter().enumerate() {
            if let Some(last) = last {
                if is_inverse_pair(last, letter) {
                    continue;
                }
            }
            let prod = current.compose(g);
            if !(self.visit)(&prod) {
                return false;
            }
            if !self.walk(depth_left - 1, Some(letter), &prod) {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` for every freely reduced word of length 1..=max_len over
/// the given generators, in lexicographic order. Returns false if `visit`
/// aborted the walk.
pub fn for_each_reduced_word<F>(
    generators: &[MoebiusTransform],
    max_len: usize,
    visit: F,
) -> bool
where
    F: FnMut(&MoebiusTransform) -> bool,
{
    let mut alphabet = Vec::with_capacity(generators.len() * 2);
    for g in generators {
        alphabet.push(*g);
        alphabet.push(g.inverse());
    }
    let mut walker = Walker {
        alphabet: &alphabet,
        visit,
    };
    walker.walk(max_len, None, &MoebiusTransform::identity())
}

/// Collects the matrices of all reduced words of length 1..=max_len,
/// deduplicated as PSL elements within `tol`.
pub fn reduced_word_elements(
    generators: &[MoebiusTransform],
    max_len: usize,
    tol: f64,
) -> Vec<MoebiusTransform> {
    let mut out: Vec<MoebiusTransform> = Vec::new();
    for_each_reduced_word(generators, max_len, |m| {
        if !out.iter().any(|e| e.approx_eq(m, tol)) {
            out.push(*m);
        }
        true
    });
    out
}
