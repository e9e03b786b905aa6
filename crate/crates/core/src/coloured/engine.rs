//! Depth-first enumeration of a grounded family, from the tail outwards.
//!
//! Termination: parts are only added while the running weight plus a lower
//! bound on any continuation stays within the weight limit. The bound comes
//! from a shortest-path computation over `(size, colour)` states near the
//! floor, so negative parts (which exist for some multi-grounds) are
//! accounted for. A negative cycle in the difference table, or a
//! continuation of zero total weight that returns to a state already on the
//! current path (past the tail's non-repetition window), means the family is
//! infinite at some weight; both are reported as specification errors.

use std::collections::HashSet;

use super::{ColouredPart, GroundedFamily, RelationKind};
use crate::error::{Error, Result};

/// Lower bound on the total size of any sequence of parts that can still be
/// added to the left of a part `(k, c)`.
struct FutureBound {
    lo: i64,
    hi: i64,
    table: Vec<Vec<i64>>,
    reachable: Vec<Vec<bool>>,
    global: i64,
}

impl FutureBound {
    fn at(&self, k: i64, c: usize) -> i64 {
        if k > self.hi {
            0
        } else if k < self.lo || !self.reachable[(k - self.lo) as usize][c] {
            self.global
        } else {
            self.table[(k - self.lo) as usize][c]
        }
    }

    fn compute(fam: &GroundedFamily) -> Result<Self> {
        let rel = fam.relation();
        let n = rel.colours();
        // dist[a][b]: least total gap of a chain leading from colour a to colour b
        // (b further left), over chains of length >= 1.
        let mut dist: Vec<Vec<i64>> = (0..n)
            .map(|a| (0..n).map(|b| rel.diff(b, a)).collect())
            .collect();
        for via in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let d = dist[a][via] + dist[via][b];
                    if d < dist[a][b] {
                        dist[a][b] = d;
                    }
                }
            }
        }
        if (0..n).any(|a| dist[a][a] < 0) {
            return Err(Error::Spec("difference table has a negative cycle".into()));
        }
        let descent = dist
            .iter()
            .flatten()
            .copied()
            .min()
            .unwrap_or(0)
            .min(0)
            .abs();
        let lo = fam.floor();
        let hi = descent + 1;
        let step = match rel.kind() {
            RelationKind::Exact => None,
            RelationKind::AtLeast { step } => Some(step),
        };
        let width = (hi - lo + 1) as usize;
        let idx = |k: i64| (k - lo) as usize;
        let successors = |k: i64, c: usize| {
            let mut out = Vec::new();
            for c2 in 0..n {
                let mut k2 = k + rel.diff(c2, c);
                if k2 < lo {
                    match step {
                        Some(s) => k2 += (lo - k2 + s - 1) / s * s,
                        None => continue,
                    }
                }
                while k2 <= hi {
                    out.push((k2, c2));
                    match step {
                        Some(s) => k2 += s,
                        None => break,
                    }
                }
            }
            out
        };
        // Only states reachable from the tail matter; unreachable window states
        // may carry spurious negative cycles. A state entered from above `hi`
        // has a non-negative future, so `global` is a safe bound there.
        let mut reachable = vec![vec![false; n]; width];
        let start = fam.tail()[0];
        let mut stack = Vec::new();
        if start.size <= hi {
            reachable[idx(start.size)][start.colour] = true;
            stack.push((start.size, start.colour));
        }
        while let Some((k, c)) = stack.pop() {
            for (k2, c2) in successors(k, c) {
                if !reachable[idx(k2)][c2] {
                    reachable[idx(k2)][c2] = true;
                    stack.push((k2, c2));
                }
            }
        }
        let states: Vec<(i64, usize)> = (lo..=hi)
            .flat_map(|k| (0..n).map(move |c| (k, c)))
            .filter(|&(k, c)| reachable[idx(k)][c])
            .collect();
        let edges: Vec<Vec<(i64, usize)>> = states.iter().map(|&(k, c)| successors(k, c)).collect();
        let mut table = vec![vec![0i64; n]; width];
        let mut converged = false;
        for _ in 0..=states.len() {
            let mut changed = false;
            for (&(k, c), succ) in states.iter().zip(&edges) {
                let best = succ
                    .iter()
                    .map(|&(k2, c2)| k2 + table[idx(k2)][c2])
                    .fold(table[idx(k)][c], i64::min);
                if best < table[idx(k)][c] {
                    table[idx(k)][c] = best;
                    changed = true;
                }
            }
            if !changed {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Spec(
                "family admits continuations of unbounded negative weight".into(),
            ));
        }
        let global = table.iter().flatten().copied().min().unwrap_or(0).min(0);
        Ok(FutureBound {
            lo,
            hi,
            table,
            reachable,
            global,
        })
    }
}

pub(super) struct Engine<'a> {
    fam: &'a GroundedFamily,
    max_weight: i64,
    bound: FutureBound,
    /// Non-positive states `(size, colour, weight)` on the current path, from
    /// depth `2t` on. Beyond that depth the admissible continuations of a
    /// state no longer depend on its position, so a repeat is a genuine cycle.
    seen: HashSet<(i64, usize, i64)>,
}

impl<'a> Engine<'a> {
    pub(super) fn new(fam: &'a GroundedFamily, max_weight: i64) -> Result<Self> {
        Ok(Engine {
            fam,
            max_weight,
            bound: FutureBound::compute(fam)?,
            seen: HashSet::new(),
        })
    }

    pub(super) fn run(mut self, mut visitor: impl FnMut(&[ColouredPart], i64)) -> Result<()> {
        let mut rev: Vec<ColouredPart> = self.fam.tail().iter().rev().copied().collect();
        let w = rev.iter().map(|p| p.size).sum();
        self.dfs(&mut rev, w, &mut visitor)
    }

    fn dfs(
        &mut self,
        rev: &mut Vec<ColouredPart>,
        w: i64,
        visitor: &mut impl FnMut(&[ColouredPart], i64),
    ) -> Result<()> {
        if w <= self.max_weight && rev.len().is_multiple_of(self.fam.parts_multiple()) {
            visitor(rev, w);
        }
        let rel = self.fam.relation();
        let last = *rev.last().expect("tail is non-empty");
        let t = self.fam.tail().len();
        let floor = self.fam.floor();
        for c2 in 0..rel.colours() {
            let mut k2 = last.size + rel.diff(c2, last.colour);
            let step = match rel.kind() {
                RelationKind::Exact => None,
                RelationKind::AtLeast { step } => Some(step),
            };
            if k2 < floor {
                match step {
                    Some(s) => k2 += (floor - k2 + s - 1) / s * s,
                    None => continue,
                }
            }
            loop {
                let w2 = w + k2;
                if w2 + self.bound.global > self.max_weight {
                    break;
                }
                let part = ColouredPart::new(k2, c2);
                rev.push(part);
                let repeats_tail = rev.len() == 2 * t && rev[t..] == rev[..t];
                if !repeats_tail && w2 + self.bound.at(k2, c2) <= self.max_weight {
                    let tracked = k2 <= 0 && rev.len() >= 2 * t;
                    if tracked && !self.seen.insert((k2, c2, w2)) {
                        return Err(Error::Spec(format!(
                            "zero-weight cycle through {part} (family is infinite)"
                        )));
                    }
                    let r = self.dfs(rev, w2, visitor);
                    if tracked {
                        self.seen.remove(&(k2, c2, w2));
                    }
                    r?;
                }
                rev.pop();
                match step {
                    Some(s) => k2 += s,
                    None => break,
                }
            }
        }
        Ok(())
    }
}
