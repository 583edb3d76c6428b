//! Eventually periodic two-sided sequences.
//!
//! A [`BiSequence`] reads `... left left middle right right ...`. An empty
//! `left` (or `right`) block means the sequence stops there, so a plain finite
//! sequence has both blocks empty. A purely periodic sequence `c` is stored as
//! `left = right = c` with an empty middle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiSequence<T> {
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<T>,
    #[serde(default = "Vec::new")]
    pub middle: Vec<T>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<T>,
}

pub type SolutionSeq = BiSequence<SimplexId>;

impl<T> BiSequence<T> {
    pub fn finite(items: Vec<T>) -> Self {
        Self {
            left: Vec::new(),
            middle: items,
            right: Vec::new(),
        }
    }

    pub fn new(left: Vec<T>, middle: Vec<T>, right: Vec<T>) -> Self {
        Self {
            left,
            middle,
            right,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.middle.is_empty() && self.right.is_empty()
    }

    pub fn is_bi_infinite(&self) -> bool {
        !self.left.is_empty() && !self.right.is_empty()
    }

    /// A finite stretch containing every consecutive pair of the sequence:
    /// two copies of each periodic block around the middle.
    pub fn window(&self) -> Vec<&T> {
        self.left
            .iter()
            .chain(&self.left)
            .chain(&self.middle)
            .chain(&self.right)
            .chain(&self.right)
            .collect()
    }

    /// Replaces each entry by a list of entries, looking at its predecessor.
    ///
    /// The first copy of `right` follows the middle rather than `right`, so it
    /// is unrolled into the middle before mapping.
    pub fn flat_map_with_pred<U>(
        &self,
        mut f: impl FnMut(Option<&T>, &T) -> Vec<U>,
    ) -> BiSequence<U> {
        let cyclic = |block: &[T], f: &mut dyn FnMut(Option<&T>, &T) -> Vec<U>| -> Vec<U> {
            let n = block.len();
            (0..n)
                .flat_map(|i| f(Some(&block[(i + n - 1) % n]), &block[i]))
                .collect()
        };
        let left = cyclic(&self.left, &mut f);
        let mut middle = Vec::new();
        let mut prev = self.left.last();
        for x in self.middle.iter().chain(&self.right) {
            middle.extend(f(prev, x));
            prev = Some(x);
        }
        let right = cyclic(&self.right, &mut f);
        BiSequence {
            left,
            middle,
            right,
        }
    }

    /// Replaces each entry by a list of entries, looking at its successor.
    pub fn flat_map_with_succ<U>(
        &self,
        mut f: impl FnMut(&T, Option<&T>) -> Vec<U>,
    ) -> BiSequence<U> {
        let cyclic = |block: &[T], f: &mut dyn FnMut(&T, Option<&T>) -> Vec<U>| -> Vec<U> {
            let n = block.len();
            (0..n)
                .flat_map(|i| f(&block[i], Some(&block[(i + 1) % n])))
                .collect()
        };
        let left = cyclic(&self.left, &mut f);
        let body: Vec<&T> = self.left.iter().chain(&self.middle).collect();
        let mut middle = Vec::new();
        for (i, x) in body.iter().enumerate() {
            let next = body.get(i + 1).copied().or(self.right.first());
            middle.extend(f(x, next));
        }
        let right = cyclic(&self.right, &mut f);
        BiSequence {
            left,
            middle,
            right,
        }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> BiSequence<U> {
        BiSequence {
            left: self.left.iter().map(&mut f).collect(),
            middle: self.middle.iter().map(&mut f).collect(),
            right: self.right.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<BiSequence<U>, E> {
        Ok(BiSequence {
            left: self.left.iter().map(&mut f).collect::<Result<_, E>>()?,
            middle: self.middle.iter().map(&mut f).collect::<Result<_, E>>()?,
            right: self.right.iter().map(&mut f).collect::<Result<_, E>>()?,
        })
    }
}

fn primitive_root<T: PartialEq + Clone>(block: &[T]) -> Vec<T> {
    let n = block.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| block[i] == block[i - p]) {
            return block[..p].to_vec();
        }
    }
    block.to_vec()
}

impl<T: PartialEq + Clone> BiSequence<T> {
    /// Canonical presentation of the same sequence: periodic blocks reduced to
    /// their primitive period and middle entries absorbed into the tails.
    pub fn normalized(&self) -> Self {
        let mut left = primitive_root(&self.left);
        let mut right = primitive_root(&self.right);
        let mut middle = self.middle.clone();
        if !left.is_empty() {
            let mut start = 0;
            while start < middle.len() && middle[start] == left[0] {
                left.rotate_left(1);
                start += 1;
            }
            middle.drain(..start);
        }
        if !right.is_empty() {
            while let Some(last) = middle.last() {
                if *last != right[right.len() - 1] {
                    break;
                }
                middle.pop();
                right.rotate_right(1);
            }
        }
        Self {
            left,
            middle,
            right,
        }
    }
}

impl BiSequence<SimplexId> {
    pub fn display(&self, k: &SimplicialComplex) -> String {
        let block = |b: &[SimplexId]| b.iter().map(|&s| k.name(s)).collect::<Vec<_>>().join(";");
        let mut parts = Vec::new();
        if !self.left.is_empty() && self.middle.is_empty() && self.left == self.right {
            return format!("({})*", block(&self.left));
        }
        if !self.left.is_empty() {
            parts.push(format!("({})*", block(&self.left)));
        }
        if !self.middle.is_empty() {
            parts.push(block(&self.middle));
        }
        if !self.right.is_empty() {
            parts.push(format!("({})*", block(&self.right)));
        }
        parts.join(";")
    }

    /// Parses `a;b;c`, `(a;b)*`, or `(a)*;b;c;(d)*`. A periodic block in first
    /// position repeats to the left, in last position to the right; a lone
    /// periodic block repeats both ways.
    pub fn parse(k: &SimplicialComplex, input: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::Syntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut rest = input.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ';' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            if let Some(inner) = rest.strip_prefix('(') {
                let close = inner
                    .find(')')
                    .ok_or_else(|| syntax("unbalanced parenthesis"))?;
                let body = &inner[..close];
                let after = inner[close + 1..].trim_start();
                let after = after
                    .strip_prefix('*')
                    .ok_or_else(|| syntax("periodic block must be written as (...)*"))?;
                pieces.push((true, body.to_string()));
                rest = after;
            } else {
                let end = rest.find(['(', ';']).unwrap_or(rest.len());
                if rest[end..].starts_with('(') {
                    return Err(syntax("periodic block must be separated by ';'"));
                }
                pieces.push((false, rest[..end].to_string()));
                rest = &rest[end..];
            }
        }
        if pieces.is_empty() {
            return Err(syntax("empty sequence"));
        }
        let last = pieces.len() - 1;
        let mut seq = BiSequence::finite(Vec::new());
        for (i, (periodic, body)) in pieces.iter().enumerate() {
            if *periodic {
                let items = k.parse_list(body)?;
                if items.is_empty() {
                    return Err(syntax("empty periodic block"));
                }
                if i == 0 && last == 0 {
                    seq.left = items.clone();
                    seq.right = items;
                } else if i == 0 {
                    seq.left = items;
                } else if i == last {
                    seq.right = items;
                } else {
                    return Err(syntax("periodic blocks may only appear at the ends"));
                }
            } else {
                seq.middle.push(k.parse_simplex(body)?);
            }
        }
        Ok(seq)
    }
}

impl fmt::Display for BiSequence<usize> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}*{:?}{:?}*", self.left, self.middle, self.right)
    }
}
