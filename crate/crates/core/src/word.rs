//! Freely reduced words in a free group with numbered generators.

use std::fmt;

/// A freely reduced word: runs of (generator index, nonzero exponent) with
/// adjacent runs on distinct generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    runs: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn generator(idx: usize) -> Self {
        Word {
            runs: vec![(idx, 1)],
        }
    }

    pub fn from_runs(runs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in runs {
            w.push_run(g, e);
        }
        w
    }

    pub fn runs(&self) -> &[(usize, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Word length as a count of letters (sum of |exponents|).
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    fn push_run(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((g, e)),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.runs {
            w.push_run(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 {
            return Word::identity();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Commutator u v u^{-1} v^{-1}.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Total exponent of each generator (abelianized image in Z^q).
    pub fn exponent_vector(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for &(g, e) in &self.runs {
            v[g] += e;
        }
        v
    }

    /// Render with the given generator names, e.g. "x1*x2^-1".
    pub fn display(&self, names: &[String]) -> String {
        if self.runs.is_empty() {
            return "1".to_string();
        }
        self.runs
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("g{g}")
                } else {
                    format!("g{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
