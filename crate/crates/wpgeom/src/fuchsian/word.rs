//! Words over a surface-group generating set.
//!
//! A letter is a nonzero i32: +k is generator k−1, −k its inverse. Words are
//! kept freely reduced; conjugacy classes get a canonical cyclic form.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Word {
        Word(vec![index as i32 + 1])
    }

    pub fn inverse_generator(index: usize) -> Word {
        Word(vec![-(index as i32 + 1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter with free reduction.
    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        if self.0.last() == Some(&-letter) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    /// Freely reduced concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// Cyclic reduction: strips matching first/last inverse pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.0.clone();
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    /// Canonical representative of the unoriented conjugacy class: the
    /// lexicographically least cyclic rotation among the reduced word and its
    /// inverse.
    pub fn conjugacy_canonical(&self) -> Word {
        let core = self.cyclically_reduced();
        if core.is_empty() {
            return core;
        }
        let mut best: Option<Vec<i32>> = None;
        for w in [&core, &core.inverse()] {
            let n = w.0.len();
            for s in 0..n {
                let rot: Vec<i32> = (0..n).map(|k| w.0[(s + k) % n]).collect();
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap())
    }

    /// Renders with generator names, e.g. "a.B.t1" where uppercase is inverse.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&l| {
                let idx = (l.abs() - 1) as usize;
                let name = names.get(idx).cloned().unwrap_or_else(|| format!("g{idx}"));
                if l > 0 {
                    name
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_on_push() {
        let mut w = Word::identity();
        w.push(1);
        w.push(-1);
        assert!(w.is_empty());
        w.push(2);
        w.push(1);
        w.push(-1);
        assert_eq!(w.0, vec![2]);
    }

    #[test]
    fn conjugacy_canonical_identifies_rotations_and_inverse() {
        let w = Word(vec![1, 2, -3]);
        let rot = Word(vec![2, -3, 1]);
        let inv = w.inverse();
        assert_eq!(w.conjugacy_canonical(), rot.conjugacy_canonical());
        assert_eq!(w.conjugacy_canonical(), inv.conjugacy_canonical());
    }

    #[test]
    fn conjugate_word_canonicalizes_to_core() {
        // g w g^{-1} has the same canonical form as w.
        let w = Word(vec![1, 2]);
        let conj = Word(vec![3]).concat(&w).concat(&Word(vec![-3]));
        assert_eq!(w.conjugacy_canonical(), conj.conjugacy_canonical());
    }
}
