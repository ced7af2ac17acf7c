//! Structure of a mix: Schläfli type, flag and face counts, and a
//! polytopality decision.
//!
//! Polytopality is decided by a cascade of sufficient (or, for the medial
//! section test, necessary and sufficient) conditions, applied to every
//! binary grouping of the leaves, before falling back to computing the
//! intersection `⟨β_1..β_{n-2}⟩ ∩ ⟨β_2..β_{n-1}⟩` explicitly.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixer::{lcm_type, MixExpression, Mixer};
use crate::presentation::SchlafliSymbol;

pub const DEFAULT_ELEMENT_CAP: usize = 20_000_000;

/// Which rule settled a polytopality question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Rank at most 3: every mix of polyhedra is a polyhedron.
    Polyhedra,
    /// A single regular convex polytope.
    ConvexSeed,
    /// Facets of a polytopal side cover the facets of the other side.
    FacetsCover,
    /// Vertex-figures of a polytopal side cover those of the other side.
    VertexFiguresCover,
    /// Entrywise coprime Schläfli types.
    RelativelyPrimeType,
    /// Facet and vertex-figure mixes are direct products; the verdict is
    /// whether the medial sections mix as a direct product.
    MedialDirectProduct,
    /// Explicit intersection of the facet and vertex-figure subgroups.
    Intersection,
    /// Face-lattice oracle.
    Oracle,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Polyhedra => "polyhedra",
            Rule::ConvexSeed => "convex-seed",
            Rule::FacetsCover => "facets-cover",
            Rule::VertexFiguresCover => "vertex-figures-cover",
            Rule::RelativelyPrimeType => "relatively-prime-type",
            Rule::MedialDirectProduct => "medial-direct-product",
            Rule::Intersection => "intersection",
            Rule::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Yes(Rule),
    No(Rule),
    Undecided,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No(_) => Some(false),
            Verdict::Undecided => None,
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            Verdict::Yes(r) | Verdict::No(r) => Some(*r),
            Verdict::Undecided => None,
        }
    }

    /// `Y`, `N` or `?`.
    pub fn letter(&self) -> char {
        match self {
            Verdict::Yes(_) => 'Y',
            Verdict::No(_) => 'N',
            Verdict::Undecided => '?',
        }
    }
}

/// A verdict plus the grouping `(P, Q)` of leaves it was applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub grouping: Option<(Vec<SchlafliSymbol>, Vec<SchlafliSymbol>)>,
}

impl Decision {
    fn plain(verdict: Verdict) -> Self {
        Self {
            verdict,
            grouping: None,
        }
    }

    fn grouped(verdict: Verdict, a: &[SchlafliSymbol], b: &[SchlafliSymbol]) -> Self {
        Self {
            verdict,
            grouping: Some((a.to_vec(), b.to_vec())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionKind {
    /// The section `F_k / F_{-1}` (rank `k`).
    Face,
    /// The section `F_n / F_k` (rank `n - 1 - k`).
    CoFace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    Point,
    Segment,
    Mix(MixExpression),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDescriptor {
    pub rank: usize,
    pub section: Section,
}

/// k-face of a single polytope: rank `k`, the first `k - 1` entries.
fn face_symbol(s: &SchlafliSymbol, k: usize) -> SchlafliSymbol {
    SchlafliSymbol::unchecked(s.entries()[..k.saturating_sub(1)].to_vec())
}

/// Co-k-face of a single polytope: rank `n - 1 - k`, the entries after `p_{k+1}`.
fn coface_symbol(s: &SchlafliSymbol, k: usize) -> SchlafliSymbol {
    let e = s.entries();
    SchlafliSymbol::unchecked(e[(k + 1).min(e.len())..].to_vec())
}

pub fn section_expression(expr: &MixExpression, kind: SectionKind, k: usize) -> Result<SectionDescriptor> {
    let n = expr.rank();
    if k >= n {
        return Err(Error::RankMismatch(k, n));
    }
    let rank = match kind {
        SectionKind::Face => k,
        SectionKind::CoFace => n - 1 - k,
    };
    let section = match rank {
        0 => Section::Point,
        1 => Section::Segment,
        _ => Section::Mix(match kind {
            SectionKind::Face => expr.map_leaves(&|s| face_symbol(s, k)),
            SectionKind::CoFace => expr.map_leaves(&|s| coface_symbol(s, k)),
        }),
    };
    Ok(SectionDescriptor { rank, section })
}

pub fn dual(expr: &MixExpression) -> MixExpression {
    expr.map_leaves(&SchlafliSymbol::reversed)
}

/// Entrywise lcm of the leaf types.
pub fn schlafli_of_mix(expr: &MixExpression) -> SchlafliSymbol {
    lcm_type(&expr.leaves())
}

/// Everything the tables record about one mix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub expression: MixExpression,
    pub leaves: Vec<SchlafliSymbol>,
    pub schlafli: SchlafliSymbol,
    pub rank: usize,
    pub flags: BigUint,
    pub faces: Vec<BigUint>,
    pub decision: Decision,
}

fn canonical(mut v: Vec<SchlafliSymbol>) -> Vec<SchlafliSymbol> {
    v.sort();
    v.dedup();
    v
}

fn faces_of(leaves: &[SchlafliSymbol], k: usize) -> Vec<SchlafliSymbol> {
    canonical(leaves.iter().map(|s| face_symbol(s, k)).collect())
}

fn cofaces_of(leaves: &[SchlafliSymbol], k: usize) -> Vec<SchlafliSymbol> {
    canonical(leaves.iter().map(|s| coface_symbol(s, k)).collect())
}

/// Medial sections `F_{n-1} / F_0`.
fn medials_of(leaves: &[SchlafliSymbol]) -> Vec<SchlafliSymbol> {
    canonical(
        leaves
            .iter()
            .map(|s| {
                let e = s.entries();
                SchlafliSymbol::unchecked(e[1..e.len() - 1].to_vec())
            })
            .collect(),
    )
}

fn union(a: &[SchlafliSymbol], b: &[SchlafliSymbol]) -> Vec<SchlafliSymbol> {
    canonical(a.iter().chain(b).cloned().collect())
}

fn coprime_types(a: &SchlafliSymbol, b: &SchlafliSymbol) -> bool {
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(p, q)| p.gcd(q) == 1)
}

/// Analyzer with memoized mix orders and verdicts, keyed by the canonical
/// leaf set.
#[derive(Debug)]
pub struct Analyzer {
    mixer: Mixer,
    element_cap: usize,
    orders: Mutex<HashMap<Vec<SchlafliSymbol>, BigUint>>,
    decisions: Mutex<HashMap<Vec<SchlafliSymbol>, Decision>>,
}

impl Default for Analyzer {
    fn default() -> Self {
        Self::new(Mixer::default(), DEFAULT_ELEMENT_CAP)
    }
}

impl Analyzer {
    pub fn new(mixer: Mixer, element_cap: usize) -> Self {
        Self {
            mixer,
            element_cap,
            orders: Mutex::new(HashMap::new()),
            decisions: Mutex::new(HashMap::new()),
        }
    }

    pub fn mixer(&self) -> &Mixer {
        &self.mixer
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    /// Order of the rotation group of the mix of `leaves`. Rank 1 sections
    /// have rotation group of order 1.
    fn order(&self, leaves: &[SchlafliSymbol]) -> Result<BigUint> {
        let key = canonical(leaves.to_vec());
        if key[0].entries().is_empty() {
            return Ok(BigUint::one());
        }
        if let Some(o) = self.orders.lock().expect("poisoned").get(&key) {
            return Ok(o.clone());
        }
        let o = self.mixer.mix_order(&key)?;
        self.orders
            .lock()
            .expect("poisoned")
            .insert(key, o.clone());
        Ok(o)
    }

    pub fn mix_order(&self, expr: &MixExpression) -> Result<BigUint> {
        self.order(&expr.canonical_leaves())
    }

    /// Flags of the mix: twice the rotation group's order.
    pub fn flags(&self, expr: &MixExpression) -> Result<BigUint> {
        Ok(self.mix_order(expr)? * 2u32)
    }

    pub fn section_flags(&self, desc: &SectionDescriptor) -> Result<BigUint> {
        match &desc.section {
            Section::Point => Ok(BigUint::one()),
            Section::Segment => Ok(BigUint::from(2u32)),
            Section::Mix(e) => self.flags(e),
        }
    }

    /// `f_k = g / (g(k-face) · g(co-k-face))`, exactly.
    pub fn face_vector(&self, expr: &MixExpression) -> Result<Vec<BigUint>> {
        let g = self.flags(expr)?;
        (0..expr.rank())
            .map(|k| {
                let lower = self.section_flags(&section_expression(expr, SectionKind::Face, k)?)?;
                let upper = self.section_flags(&section_expression(expr, SectionKind::CoFace, k)?)?;
                let d = lower * upper;
                let (q, r) = g.div_rem(&d);
                if !r.is_zero() {
                    return Err(Error::NonIntegralFaceCount {
                        k,
                        numerator: g.to_string(),
                        denominator: d.to_string(),
                    });
                }
                Ok(q)
            })
            .collect()
    }

    /// Orders of the generators `β_i` of the built mix, as a symbol.
    pub fn measured_type(&self, expr: &MixExpression) -> Result<SchlafliSymbol> {
        let g = self.mixer.build_leaves(&expr.canonical_leaves())?;
        Ok(SchlafliSymbol::unchecked(
            g.group.generators().iter().map(|p| p.order()).collect(),
        ))
    }

    pub fn polytopality(&self, expr: &MixExpression) -> Result<Decision> {
        self.decide(&expr.canonical_leaves())
    }

    fn decide(&self, leaves: &[SchlafliSymbol]) -> Result<Decision> {
        let key = canonical(leaves.to_vec());
        if let Some(d) = self.decisions.lock().expect("poisoned").get(&key) {
            return Ok(d.clone());
        }
        let d = self.decide_uncached(&key)?;
        self.decisions
            .lock()
            .expect("poisoned")
            .insert(key, d.clone());
        Ok(d)
    }

    fn decide_uncached(&self, leaves: &[SchlafliSymbol]) -> Result<Decision> {
        let n = leaves[0].rank();
        if n <= 3 {
            return Ok(Decision::plain(Verdict::Yes(Rule::Polyhedra)));
        }
        if leaves.len() == 1 {
            return Ok(Decision::plain(Verdict::Yes(Rule::ConvexSeed)));
        }
        let facets = faces_of(leaves, n - 1);
        let vertex_figures = cofaces_of(leaves, 0);
        if !self.decide(&facets)?.verdict.is_yes() || !self.decide(&vertex_figures)?.verdict.is_yes() {
            // Non-polytopal sections do not settle the question either way.
            return Ok(Decision::plain(Verdict::Undecided));
        }

        let m = leaves.len();
        let splits: Vec<(Vec<SchlafliSymbol>, Vec<SchlafliSymbol>)> = (1..(1u32 << m) - 1)
            .map(|mask| {
                let (a, b): (Vec<_>, Vec<_>) = leaves
                    .iter()
                    .enumerate()
                    .partition(|(i, _)| mask & (1 << i) != 0);
                (
                    a.into_iter().map(|(_, s)| s.clone()).collect(),
                    b.into_iter().map(|(_, s)| s.clone()).collect(),
                )
            })
            .collect();

        for (a, b) in &splits {
            if !self.decide(a)?.verdict.is_yes() {
                continue;
            }
            // Only the polytopal side's sections may do the covering: `b`
            // need not be a polytope, and the reverse cover does not
            // force the intersection property. Both orientations of each
            // split are visited, so two polytopal sides are tried both ways.
            if self.covers(&faces_of(a, n - 1), &faces_of(b, n - 1))? {
                return Ok(Decision::grouped(Verdict::Yes(Rule::FacetsCover), a, b));
            }
            if self.covers(&cofaces_of(a, 0), &cofaces_of(b, 0))? {
                return Ok(Decision::grouped(Verdict::Yes(Rule::VertexFiguresCover), a, b));
            }
            if self.decide(b)?.verdict.is_yes() {
                let ta = lcm_type(&a.iter().collect::<Vec<_>>());
                let tb = lcm_type(&b.iter().collect::<Vec<_>>());
                if coprime_types(&ta, &tb) {
                    return Ok(Decision::grouped(Verdict::Yes(Rule::RelativelyPrimeType), a, b));
                }
            }
        }

        for (a, b) in &splits {
            if !self.decide(a)?.verdict.is_yes() || !self.decide(b)?.verdict.is_yes() {
                continue;
            }
            let (ka, kb) = (faces_of(a, n - 1), faces_of(b, n - 1));
            let (la, lb) = (cofaces_of(a, 0), cofaces_of(b, 0));
            let (k, l) = (union(&ka, &kb), union(&la, &lb));
            if !self.decide(&k)?.verdict.is_yes() || !self.decide(&l)?.verdict.is_yes() {
                continue;
            }
            if self.order(&k)? != self.order(&ka)? * self.order(&kb)?
                || self.order(&l)? != self.order(&la)? * self.order(&lb)?
            {
                continue;
            }
            let (ma, mb) = (medials_of(a), medials_of(b));
            let direct = self.order(&union(&ma, &mb))? == self.order(&ma)? * self.order(&mb)?;
            let verdict = if direct {
                Verdict::Yes(Rule::MedialDirectProduct)
            } else {
                Verdict::No(Rule::MedialDirectProduct)
            };
            return Ok(Decision::grouped(verdict, a, b));
        }

        Ok(Decision::plain(self.intersection_verdict_leaves(leaves)?))
    }

    /// `p` covers `q` (both given as leaf sets of one rank).
    fn covers(&self, p: &[SchlafliSymbol], q: &[SchlafliSymbol]) -> Result<bool> {
        Ok(self.order(&union(p, q))? == self.order(p)?)
    }

    /// Checks `⟨β_1..β_{n-2}⟩ ∩ ⟨β_2..β_{n-1}⟩ = ⟨β_2..β_{n-2}⟩` in the built
    /// group. Assumes polytopal facets and vertex-figures. `Undecided` when
    /// the smaller subgroup is over the element cap.
    pub fn intersection_verdict(&self, expr: &MixExpression) -> Result<Verdict> {
        self.intersection_verdict_leaves(&expr.canonical_leaves())
    }

    fn intersection_verdict_leaves(&self, leaves: &[SchlafliSymbol]) -> Result<Verdict> {
        let n = leaves[0].rank();
        if n <= 3 {
            return Ok(Verdict::Yes(Rule::Polyhedra));
        }
        let mixed = self.mixer.build_leaves(leaves)?;
        let g = &mixed.group;
        let facet = g.generator_subgroup(0..n - 2);
        let vertex = g.generator_subgroup(1..n - 1);
        let medial = g.generator_subgroup(1..n - 2);
        match facet.intersection(&vertex, self.element_cap) {
            Ok(i) if i.order() == medial.order() => Ok(Verdict::Yes(Rule::Intersection)),
            Ok(_) => Ok(Verdict::No(Rule::Intersection)),
            Err(Error::CapExceeded { .. }) => Ok(Verdict::Undecided),
            Err(e) => Err(e),
        }
    }

    pub fn analyze(&self, expr: &MixExpression) -> Result<StructureReport> {
        let schlafli = schlafli_of_mix(expr);
        let measured = self.measured_type(expr)?;
        if measured != schlafli {
            return Err(Error::Table(format!(
                "generator orders {measured} disagree with lcm type {schlafli}"
            )));
        }
        Ok(StructureReport {
            expression: expr.clone(),
            leaves: expr.canonical_leaves(),
            schlafli,
            rank: expr.rank(),
            flags: self.flags(expr)?,
            faces: self.face_vector(expr)?,
            decision: self.polytopality(expr)?,
        })
    }
}
