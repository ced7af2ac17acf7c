//! Independent face-lattice oracle.
//!
//! Builds the flag graph of a mix directly: a flag is a tuple of elements,
//! one in each leaf's full Coxeter group (taken from its regular coset
//! table), reachable from the identity tuple by applying the generators
//! `ρ_i` componentwise. Faces are components of the graph with one
//! adjacency removed. No rotation subgroup, stabilizer chain or section
//! formula is involved.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coset::enumerate;
use crate::error::{Error, Result};
use crate::mixer::{MixExpression, Mixer};
use crate::presentation::coxeter_presentation;

pub const DEFAULT_MAX_FLAGS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct FlagGraph {
    rank: usize,
    /// `adjacency[i][f]` is the `i`-adjacent flag of `f`.
    adjacency: Vec<Vec<u32>>,
}

impl FlagGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flag_count(&self) -> usize {
        self.adjacency[0].len()
    }

    pub fn adjacent(&self, i: usize, f: usize) -> usize {
        self.adjacency[i][f] as usize
    }

    /// Every adjacency is a fixed-point-free involution and `i`, `j`
    /// commute for `|i - j| >= 2`.
    pub fn is_thin_graph(&self) -> bool {
        let n = self.rank;
        (0..self.flag_count()).all(|f| {
            (0..n).all(|i| {
                let g = self.adjacent(i, f);
                g != f
                    && self.adjacent(i, g) == f
                    && (i + 2..n).all(|j| {
                        self.adjacent(j, self.adjacent(i, f)) == self.adjacent(i, self.adjacent(j, f))
                    })
            })
        })
    }

    /// Components under all adjacencies whose rank is not in `skip`.
    fn components(&self, skip: &[usize]) -> (Vec<u32>, usize) {
        let count = self.flag_count();
        let mut label = vec![u32::MAX; count];
        let mut next = 0u32;
        let keep: Vec<usize> = (0..self.rank).filter(|i| !skip.contains(i)).collect();
        let mut stack: Vec<u32> = Vec::new();
        for start in 0..count {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start as u32);
            while let Some(f) = stack.pop() {
                for &i in &keep {
                    let g = self.adjacency[i][f as usize];
                    if label[g as usize] == u32::MAX {
                        label[g as usize] = next;
                        stack.push(g);
                    }
                }
            }
            next += 1;
        }
        (label, next as usize)
    }

    /// `labels[k][f]`: the k-face containing flag `f`.
    pub fn face_labels(&self) -> Vec<Vec<u32>> {
        (0..self.rank).map(|k| self.components(&[k]).0).collect()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        (0..self.rank).map(|k| self.components(&[k]).1).collect()
    }

    /// `face_labels` and `face_counts` together.
    fn faces(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        (0..self.rank).map(|k| self.components(&[k])).unzip()
    }
}

/// Mixed-radix codes of coset tuples.
struct Codec {
    radix: Vec<u64>,
}

impl Codec {
    fn decode(&self, mut code: u64, out: &mut [usize]) {
        for (slot, &r) in out.iter_mut().zip(&self.radix) {
            *slot = (code % r) as usize;
            code /= r;
        }
    }

    fn encode(&self, tuple: &[usize]) -> u64 {
        tuple
            .iter()
            .zip(&self.radix)
            .rev()
            .fold(0u64, |acc, (&c, &r)| acc * r + c as u64)
    }
}

/// Codes below this use a bitset with rank queries instead of a hash map.
const DENSE_CODE_LIMIT: u128 = 1 << 32;

/// Flag graph of the mix, or `TooLarge` when it would exceed `max_flags`.
pub fn build_flag_graph(mixer: &Mixer, expr: &MixExpression, max_flags: usize) -> Result<FlagGraph> {
    let leaves = expr.canonical_leaves();
    let expected = mixer.mix_order(&leaves)? * 2u32;
    if expected > BigUint::from(max_flags) {
        return Err(Error::TooLarge {
            flags: expected.to_string(),
            max_flags,
        });
    }
    let n = expr.rank();
    let tables = leaves
        .iter()
        .map(|s| enumerate(&coxeter_presentation(s), &[], mixer.budget()))
        .collect::<Result<Vec<_>>>()?;
    let radix: Vec<u64> = tables.iter().map(|t| t.coset_count() as u64).collect();
    let space: u128 = radix.iter().map(|&r| r as u128).product();
    if space > u64::MAX as u128 {
        return Err(Error::TooLarge {
            flags: format!("code space {space}"),
            max_flags,
        });
    }
    let codec = Codec { radix };
    let neighbours = |code: u64, tuple: &mut Vec<usize>, moved: &mut Vec<usize>, out: &mut Vec<u64>| {
        codec.decode(code, tuple);
        out.clear();
        for i in 0..n {
            for ((m, &c), t) in moved.iter_mut().zip(tuple.iter()).zip(&tables) {
                *m = t.act(c, i);
            }
            out.push(codec.encode(moved));
        }
    };
    let m = tables.len();
    let (mut tuple, mut moved, mut out) = (vec![0; m], vec![0; m], Vec::with_capacity(n));
    let too_many = || Error::TooLarge {
        flags: format!(">{max_flags}"),
        max_flags,
    };

    let adjacency = if space <= DENSE_CODE_LIMIT {
        let words = (space as usize).div_ceil(64);
        let mut seen = vec![0u64; words];
        let mut count = 1usize;
        seen[0] = 1;
        let mut stack = vec![0u64];
        while let Some(code) = stack.pop() {
            neighbours(code, &mut tuple, &mut moved, &mut out);
            for &c in &out {
                let (w, b) = ((c / 64) as usize, c % 64);
                if seen[w] >> b & 1 == 0 {
                    seen[w] |= 1 << b;
                    count += 1;
                    stack.push(c);
                }
            }
            if count > max_flags {
                return Err(too_many());
            }
        }
        // Flag index of a code: number of reached codes below it.
        let mut before = Vec::with_capacity(words);
        let mut total = 0u32;
        for w in &seen {
            before.push(total);
            total += w.count_ones();
        }
        let rank = |c: u64| -> u32 {
            let (w, b) = ((c / 64) as usize, c % 64);
            before[w] + (seen[w] & ((1u64 << b) - 1)).count_ones()
        };
        let mut adjacency = vec![Vec::with_capacity(count); n];
        for (w, &bits) in seen.iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                let code = w as u64 * 64 + bits.trailing_zeros() as u64;
                bits &= bits - 1;
                neighbours(code, &mut tuple, &mut moved, &mut out);
                for (adj, &c) in adjacency.iter_mut().zip(&out) {
                    adj.push(rank(c));
                }
            }
        }
        adjacency
    } else {
        let mut index: HashMap<u64, u32> = HashMap::from([(0, 0)]);
        let mut codes: Vec<u64> = vec![0];
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut next = 0usize;
        while next < codes.len() {
            neighbours(codes[next], &mut tuple, &mut moved, &mut out);
            for (adj, &c) in adjacency.iter_mut().zip(&out) {
                let g = *index.entry(c).or_insert_with(|| {
                    codes.push(c);
                    (codes.len() - 1) as u32
                });
                adj.push(g);
            }
            if codes.len() > max_flags {
                return Err(too_many());
            }
            next += 1;
        }
        adjacency
    };
    let flags = adjacency[0].len();
    if BigUint::from(flags) != expected {
        return Err(Error::Table(format!(
            "flag graph has {flags} flags, rotation order predicts {expected}"
        )));
    }
    Ok(FlagGraph { rank: n, adjacency })
}

/// A section through the base flag that is not flag-connected: flags
/// sharing the base's faces of ranks `fixed` versus the part of them
/// reachable without changing those faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionWitness {
    pub fixed: Vec<usize>,
    pub flags_through_faces: usize,
    pub reachable: usize,
    /// A flag through the same faces that cannot be reached.
    pub unreachable_flag: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub flags: usize,
    pub faces: Vec<usize>,
    pub thin: bool,
    pub diamond: bool,
    pub witness: Option<SectionWitness>,
}

impl OracleReport {
    pub fn is_polytope(&self) -> bool {
        self.thin && self.diamond && self.witness.is_none()
    }
}

/// Diamond condition and strong flag-connectivity, checked at the base
/// flag. The automorphism group is transitive on flags, so every chain of
/// faces lies in an image of the base flag.
pub fn check_polytope(graph: &FlagGraph) -> OracleReport {
    let n = graph.rank();
    let (labels, faces) = graph.faces();
    let base = 0usize;
    let through = |fixed: &[usize], f: usize| fixed.iter().all(|&k| labels[k][f] == labels[k][base]);

    let diamond = (0..n).all(|i| {
        let fixed: Vec<usize> = [i.checked_sub(1), Some(i + 1)]
            .into_iter()
            .flatten()
            .filter(|&k| k < n)
            .collect();
        let middle: HashSet<u32> = (0..graph.flag_count())
            .filter(|&f| through(&fixed, f))
            .map(|f| labels[i][f])
            .collect();
        middle.len() == 2
    });

    let mut fixed_sets: Vec<Vec<usize>> = vec![Vec::new()];
    fixed_sets.extend((0..n).map(|j| vec![j]));
    fixed_sets.extend((0..n).flat_map(|j| (j + 1..n).map(move |k| vec![j, k])));
    let mut witness = None;
    for fixed in fixed_sets {
        let (component, _) = graph.components(&fixed);
        let (mut members, mut reachable, mut stray) = (0usize, 0usize, None);
        for f in (0..graph.flag_count()).filter(|&f| through(&fixed, f)) {
            members += 1;
            if component[f] == component[base] {
                reachable += 1;
            } else {
                stray.get_or_insert(f);
            }
        }
        if let Some(unreachable_flag) = stray {
            witness = Some(SectionWitness {
                fixed,
                flags_through_faces: members,
                reachable,
                unreachable_flag,
            });
            break;
        }
    }

    OracleReport {
        flags: graph.flag_count(),
        faces,
        thin: graph.is_thin_graph(),
        diamond,
        witness,
    }
}

pub fn run_oracle(mixer: &Mixer, expr: &MixExpression, max_flags: usize) -> Result<OracleReport> {
    Ok(check_polytope(&build_flag_graph(mixer, expr, max_flags)?))
}
