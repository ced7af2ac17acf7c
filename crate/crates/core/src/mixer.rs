//! Mixes and comixes of regular convex polytopes at the level of rotation
//! groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::coset::{self, DEFAULT_COSET_BUDGET};
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::presentation::{comix_presentation, rotation_presentation, Presentation, SchlafliSymbol, Word};

/// Whether `s` is the Schläfli symbol of a regular convex polytope.
pub fn is_convex_seed(s: &SchlafliSymbol) -> bool {
    let e = s.entries();
    match e.len() {
        1 => e[0] >= 3,
        2 => matches!(e, [3, 3] | [3, 4] | [4, 3] | [3, 5] | [5, 3]),
        3 => matches!(
            e,
            [3, 3, 3] | [3, 3, 4] | [4, 3, 3] | [3, 4, 3] | [3, 3, 5] | [5, 3, 3]
        ),
        _ => {
            let simplex = e.iter().all(|&p| p == 3);
            let cube = e[0] == 4 && e[1..].iter().all(|&p| p == 3);
            let cross = e[e.len() - 1] == 4 && e[..e.len() - 1].iter().all(|&p| p == 3);
            simplex || cube || cross
        }
    }
}

/// The regular convex polytopes of rank 3 and above, in a fixed order.
pub fn catalog(rank: usize) -> Vec<SchlafliSymbol> {
    let raw: Vec<Vec<u64>> = match rank {
        3 => vec![vec![3, 3], vec![3, 4], vec![3, 5], vec![4, 3], vec![5, 3]],
        4 => vec![
            vec![3, 3, 3],
            vec![3, 3, 4],
            vec![3, 3, 5],
            vec![3, 4, 3],
            vec![4, 3, 3],
            vec![5, 3, 3],
        ],
        n if n >= 5 => vec![simplex(n), cube(n), cross_polytope(n)]
            .into_iter()
            .map(|s| s.entries().to_vec())
            .collect(),
        _ => Vec::new(),
    };
    raw.into_iter()
        .map(|e| SchlafliSymbol::new(e).expect("valid"))
        .collect()
}

/// `T^n = {3^{n-1}}`.
pub fn simplex(n: usize) -> SchlafliSymbol {
    SchlafliSymbol::new(vec![3; n - 1]).expect("n >= 2")
}

/// `B^n = {4, 3^{n-2}}`.
pub fn cube(n: usize) -> SchlafliSymbol {
    let mut e = vec![3; n - 1];
    e[0] = 4;
    SchlafliSymbol::new(e).expect("n >= 2")
}

/// `C^n = {3^{n-2}, 4}`.
pub fn cross_polytope(n: usize) -> SchlafliSymbol {
    let mut e = vec![3; n - 1];
    e[n - 2] = 4;
    SchlafliSymbol::new(e).expect("n >= 2")
}

/// A mix of regular convex polytopes of one rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MixExpression {
    Leaf(SchlafliSymbol),
    Mix(Box<MixExpression>, Box<MixExpression>),
}

impl MixExpression {
    pub fn leaf(symbol: SchlafliSymbol) -> Result<Self> {
        if symbol.rank() < 2 || !is_convex_seed(&symbol) {
            return Err(Error::NotConvexSeed(symbol.to_string()));
        }
        Ok(Self::Leaf(symbol))
    }

    pub fn mix(a: MixExpression, b: MixExpression) -> Result<Self> {
        if a.rank() != b.rank() {
            return Err(Error::RankMismatch(a.rank(), b.rank()));
        }
        Ok(Self::Mix(Box::new(a), Box::new(b)))
    }

    /// Left fold of the mix over `leaves`.
    pub fn from_leaves(leaves: impl IntoIterator<Item = SchlafliSymbol>) -> Result<Self> {
        let mut it = leaves.into_iter();
        let first = it.next().ok_or(Error::EmptySymbol)?;
        let mut acc = Self::leaf(first)?;
        for s in it {
            acc = Self::mix(acc, Self::leaf(s)?)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        match self {
            Self::Leaf(s) => s.rank(),
            Self::Mix(a, _) => a.rank(),
        }
    }

    /// Leaves in written order.
    pub fn leaves(&self) -> Vec<&SchlafliSymbol> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a SchlafliSymbol>) {
        match self {
            Self::Leaf(s) => out.push(s),
            Self::Mix(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Sorted, deduplicated leaves; the mix depends only on this set.
    pub fn canonical_leaves(&self) -> Vec<SchlafliSymbol> {
        let mut v: Vec<SchlafliSymbol> = self.leaves().into_iter().cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Same tree with every leaf replaced by `f(leaf)`.
    pub fn map_leaves(&self, f: &impl Fn(&SchlafliSymbol) -> SchlafliSymbol) -> Self {
        match self {
            Self::Leaf(s) => Self::Leaf(f(s)),
            Self::Mix(a, b) => Self::Mix(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
        }
    }
}

impl fmt::Display for MixExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(s) => write!(f, "{s}"),
            Self::Mix(a, b) => {
                write!(f, "{a}*")?;
                if matches!(**b, Self::Mix(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

/// The mix `⟨β_1, ..., β_{n-1}⟩` together with its components.
#[derive(Clone, Debug)]
pub struct MixedGroup {
    pub group: GeneratedGroup,
    pub components: Vec<Arc<GeneratedGroup>>,
    pub rank: usize,
}

impl MixedGroup {
    pub fn order(&self) -> &BigUint {
        self.group.order()
    }

    /// Starting point of each component's block in the mixed domain.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.components
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.degree();
                o
            })
            .collect()
    }

    /// Checks `(β_i ... β_j)^2 = ε` for all `i < j`.
    pub fn satisfies_string_relations(&self) -> bool {
        let m = self.rank - 1;
        (0..m).all(|i| {
            (i + 1..m).all(|j| {
                self.group
                    .evaluate(&Word::run(i, j).pow(2))
                    .map(|p| p.is_identity())
                    .unwrap_or(false)
            })
        })
    }
}

/// Builds mixes from cached leaf realizations.
#[derive(Debug)]
pub struct Mixer {
    budget: usize,
    leaves: RwLock<HashMap<SchlafliSymbol, Arc<GeneratedGroup>>>,
}

impl Default for Mixer {
    fn default() -> Self {
        Self::new(DEFAULT_COSET_BUDGET)
    }
}

impl Mixer {
    pub fn new(budget: usize) -> Self {
        Self {
            budget,
            leaves: RwLock::new(HashMap::new()),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Rotation group of a single polytope, realized on cosets.
    pub fn leaf_group(&self, symbol: &SchlafliSymbol) -> Result<Arc<GeneratedGroup>> {
        if let Some(g) = self.leaves.read().expect("poisoned").get(symbol) {
            return Ok(g.clone());
        }
        let g = Arc::new(coset::permutation_realization(
            &rotation_presentation(symbol),
            self.budget,
        )?);
        self.leaves
            .write()
            .expect("poisoned")
            .entry(symbol.clone())
            .or_insert(g.clone());
        Ok(g)
    }

    /// Mix following the tree structure of `expr`.
    pub fn build(&self, expr: &MixExpression) -> Result<MixedGroup> {
        match expr {
            MixExpression::Leaf(s) => {
                let g = self.leaf_group(s)?;
                Ok(MixedGroup {
                    group: (*g).clone(),
                    components: vec![g],
                    rank: s.rank(),
                })
            }
            MixExpression::Mix(a, b) => {
                let a = self.build(a)?;
                let b = self.build(b)?;
                let group = a.group.diagonal_mix(&b.group)?;
                let mut components = a.components;
                components.extend(b.components);
                Ok(MixedGroup {
                    group,
                    components,
                    rank: a.rank,
                })
            }
        }
    }

    /// Left fold over the given leaves; repeated leaves are mixed once since
    /// `P ⋄ P = P`.
    pub fn build_leaves(&self, leaves: &[SchlafliSymbol]) -> Result<MixedGroup> {
        let mut distinct: Vec<&SchlafliSymbol> = Vec::new();
        for s in leaves {
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        let expr = MixExpression::from_leaves(distinct.into_iter().cloned())?;
        self.build(&expr)
    }

    pub fn mix_order(&self, leaves: &[SchlafliSymbol]) -> Result<BigUint> {
        Ok(self.build_leaves(leaves)?.order().clone())
    }

    pub fn comix_order(&self, a: &SchlafliSymbol, b: &SchlafliSymbol) -> Result<usize> {
        if a.rank() != b.rank() {
            return Err(Error::RankMismatch(a.rank(), b.rank()));
        }
        comix_order_of(&rotation_presentation(a), &rotation_presentation(b), self.budget)
    }

    /// `|mix| · |comix| = |Γ⁺(a)| · |Γ⁺(b)|`, exactly.
    pub fn size_identity_check(&self, a: &SchlafliSymbol, b: &SchlafliSymbol) -> Result<bool> {
        let mix = self.mix_order(&[a.clone(), b.clone()])?;
        let comix = BigUint::from(self.comix_order(a, b)?);
        let lhs = mix * comix;
        let rhs = self.leaf_group(a)?.order() * self.leaf_group(b)?.order();
        Ok(lhs == rhs)
    }

    /// Whether `p` covers `q`: mixing `q` into `p` does not enlarge the group.
    pub fn covers(&self, p: &MixExpression, q: &MixExpression) -> Result<bool> {
        if p.rank() != q.rank() {
            return Err(Error::RankMismatch(p.rank(), q.rank()));
        }
        let mut leaves = p.canonical_leaves();
        let own = self.mix_order(&leaves)?;
        leaves.extend(q.canonical_leaves());
        Ok(self.mix_order(&leaves)? == own)
    }
}

/// Order of the comix of two presentations on the same generators.
pub fn comix_order_of(a: &Presentation, b: &Presentation, budget: usize) -> Result<usize> {
    coset::group_order(&comix_presentation(a, b)?, budget)
}

/// Whether every `gcd(p_i, q_i)` is odd and at least one is 1, in which case
/// the comix is trivial and the mix is the direct product.
pub fn gcd_trivial_comix(a: &SchlafliSymbol, b: &SchlafliSymbol) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let gcds: Vec<u64> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(p, q)| p.gcd(q))
        .collect();
    gcds.iter().all(|g| g % 2 == 1) && gcds.contains(&1)
}

/// Entrywise lcm of the leaves' Schläfli symbols.
pub fn lcm_type(leaves: &[&SchlafliSymbol]) -> SchlafliSymbol {
    let m = leaves[0].entries().len();
    let entries = (0..m)
        .map(|i| leaves.iter().fold(1u64, |acc, s| acc.lcm(&s.entries()[i])))
        .collect();
    SchlafliSymbol::unchecked(entries)
}

/// Product of the leaves' rotation-group orders.
pub fn product_order(mixer: &Mixer, leaves: &[SchlafliSymbol]) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for s in leaves {
        acc *= mixer.leaf_group(s)?.order();
    }
    Ok(acc)
}
