//! Families built from tournaments.
//!
//! Given a tournament `G` on vertices `0..m` and a uniformity `n`, assign each
//! vertex `i` a block `K_i` of `n - outdeg(i)` fresh elements. The class of
//! vertex `i` consists of every n-set formed by `K_i` plus exactly one element
//! from each block `K_j` with an arc `i -> j`; the family is the union of all
//! classes. Such families are always n-uniform and intersecting, and their
//! minimal covers have a rigid block structure (`covers_by_shape`).

use std::sync::atomic::{AtomicU64, Ordering};

use num::traits::One;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{ElementSet, MAX_GROUND};
use crate::transversal::{
    enumerate_minimal_covers, is_minimal_cover, CoverFamily, EnumerationLimits,
};
use crate::weight::{lambda_pow_neg, rational_usize, Rational};

pub const MAX_VERTICES: usize = 24;

/// A complete orientation of the edges of `K_m` over vertices `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    m: usize,
    out: Vec<u32>,
}

impl Tournament {
    pub fn new(m: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::pre(format!(
                "tournament on {m} vertices exceeds the supported {MAX_VERTICES}"
            )));
        }
        let mut out = vec![0u32; m];
        for &(i, j) in arcs {
            if i >= m || j >= m {
                return Err(Error::pre(format!("arc ({i}, {j}) out of range for {m} vertices")));
            }
            if i == j {
                return Err(Error::pre(format!("self-arc at vertex {i}")));
            }
            if out[i] & (1 << j) != 0 || out[j] & (1 << i) != 0 {
                return Err(Error::pre(format!("pair {{{i}, {j}}} oriented twice")));
            }
            out[i] |= 1 << j;
        }
        let t = Tournament { m, out };
        for i in 0..m {
            for j in (i + 1)..m {
                if !t.has_arc(i, j) && !t.has_arc(j, i) {
                    return Err(Error::pre(format!("pair {{{i}, {j}}} is unoriented")));
                }
            }
        }
        Ok(t)
    }

    /// The transitive tournament: arc `i -> j` whenever `i < j`.
    pub fn linear(m: usize) -> Result<Self> {
        let mut arcs = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                arcs.push((i, j));
            }
        }
        Tournament::new(m, &arcs)
    }

    /// Decode one of the `2^(m choose 2)` tournaments from an orientation
    /// index: pairs `(i, j)` with `i < j` in lexicographic order, bit set
    /// meaning `i -> j`.
    pub fn from_index(m: usize, index: u64) -> Result<Self> {
        let pairs = Self::pair_count(m);
        assert!(pairs < 64, "orientation index exceeds u64");
        if index >= (1u64 << pairs) {
            return Err(Error::pre(format!(
                "orientation index {index} out of range for {m} vertices"
            )));
        }
        let mut arcs = Vec::with_capacity(pairs);
        let mut bit = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                if index & (1 << bit) != 0 {
                    arcs.push((i, j));
                } else {
                    arcs.push((j, i));
                }
                bit += 1;
            }
        }
        Tournament::new(m, &arcs)
    }

    pub fn pair_count(m: usize) -> usize {
        m * (m - 1) / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i] & (1 << j) != 0
    }

    pub fn outdegree(&self, i: usize) -> usize {
        self.out[i].count_ones() as usize
    }

    /// Ascending list of arc targets from `i`.
    pub fn out_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.m).filter(|&j| self.has_arc(i, j)).collect()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                if self.has_arc(i, j) {
                    arcs.push((i, j));
                }
            }
        }
        arcs
    }
}

/// A tournament together with a uniformity, fixing the block layout: block
/// `K_i` of vertex `i` occupies `n - outdeg(i)` consecutive element ids.
#[derive(Debug, Clone)]
pub struct DigraphConstruction {
    tournament: Tournament,
    n: usize,
    offsets: Vec<usize>,
    ground: usize,
}

impl DigraphConstruction {
    pub fn new(tournament: Tournament, n: usize) -> Result<Self> {
        let m = tournament.vertex_count();
        if m == 0 {
            return Err(Error::pre("construction needs at least one vertex"));
        }
        let max_out = (0..m).map(|i| tournament.outdegree(i)).max().unwrap();
        if n <= max_out {
            return Err(Error::pre(format!(
                "uniformity {n} leaves an empty block: max outdegree is {max_out}"
            )));
        }
        let mut offsets = Vec::with_capacity(m);
        let mut ground = 0usize;
        for i in 0..m {
            offsets.push(ground);
            ground += n - tournament.outdegree(i);
        }
        if ground > MAX_GROUND {
            return Err(Error::GroundTooLarge(ground));
        }
        Ok(DigraphConstruction { tournament, n, offsets, ground })
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    pub fn uniformity(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.tournament.vertex_count()
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn block_size(&self, i: usize) -> usize {
        self.n - self.tournament.outdegree(i)
    }

    /// The deficiency `a_i = n - |K_i|`, which equals the outdegree.
    pub fn deficiency(&self, i: usize) -> usize {
        self.tournament.outdegree(i)
    }

    pub fn deficiencies(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|i| self.deficiency(i)).collect()
    }

    pub fn block(&self, i: usize) -> ElementSet {
        let start = self.offsets[i];
        ElementSet::from_elements(start..start + self.block_size(i))
            .expect("blocks fit the ground cap by construction")
    }

    /// Which vertex's block an element belongs to.
    pub fn block_of_element(&self, e: usize) -> usize {
        debug_assert!(e < self.ground);
        match self.offsets.binary_search(&e) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    /// Expected class size: product of the out-neighbor block sizes.
    pub fn class_size(&self, i: usize) -> u128 {
        self.tournament
            .out_neighbors(i)
            .iter()
            .map(|&j| self.block_size(j) as u128)
            .product()
    }

    /// Member index ranges `(start, len)` of each class in the built family.
    pub fn class_bounds(&self) -> Vec<(usize, usize)> {
        let mut bounds = Vec::new();
        let mut start = 0usize;
        for i in 0..self.vertex_count() {
            let len = self.class_size(i) as usize;
            bounds.push((start, len));
            start += len;
        }
        bounds
    }

    /// Build the family: classes in vertex order, members of a class in
    /// lexicographic choice order (later out-neighbors vary fastest).
    pub fn build_family(&self) -> Result<SetFamily> {
        let m = self.vertex_count();
        let mut sets = Vec::new();
        for i in 0..m {
            let base = self.block(i);
            let choice_blocks: Vec<Vec<usize>> = self
                .tournament
                .out_neighbors(i)
                .iter()
                .map(|&j| self.block(j).to_vec())
                .collect();
            let mut picks = vec![0usize; choice_blocks.len()];
            loop {
                let mut member = base;
                for (b, &p) in choice_blocks.iter().zip(&picks) {
                    member = member.with(b[p]);
                }
                sets.push(member);
                // Odometer over the choice blocks; empty choice list yields
                // exactly the single bare-block member.
                let mut pos = picks.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    picks[pos] += 1;
                    if picks[pos] < choice_blocks[pos].len() {
                        break;
                    }
                    picks[pos] = 0;
                }
                if picks.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
        let family = SetFamily::new(self.ground, sets, Some(self.n))?;
        if !family.is_intersecting() {
            return Err(Error::internal("digraph family is not intersecting"));
        }
        let expected: u128 = (0..m).map(|i| self.class_size(i)).sum();
        if family.len() as u128 != expected {
            return Err(Error::internal(format!(
                "class sizes predict {expected} members, built {}",
                family.len()
            )));
        }
        Ok(family)
    }

    /// Block trace of a cover: `|C ∩ K_i|` per vertex.
    pub fn trace(&self, cover: ElementSet) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|i| cover.intersection(self.block(i)).len())
            .collect()
    }

    /// Minimal covers only ever meet a block in 0, 1, or all of its elements.
    pub fn trace_conforms(&self, cover: ElementSet) -> bool {
        (0..self.vertex_count()).all(|i| {
            let t = cover.intersection(self.block(i)).len();
            t == 0 || t == 1 || t == self.block_size(i)
        })
    }
}

/// The transitive-tournament family: block sizes `1, 2, .., n`, member count
/// `sum over i of n!/i!`.
pub fn example1_linear(n: usize) -> Result<DigraphConstruction> {
    if n < 2 {
        return Err(Error::pre("linear-order construction needs n >= 2"));
    }
    DigraphConstruction::new(Tournament::linear(n)?, n)
}

/// The rotational construction for even uniformity `n = 2t`: cyclic vertices
/// `0..2t-1` with arcs to the next `t-1` positions, plus a dominating vertex
/// (index `2t-1`) beating everyone. Block sizes `t+1` (cyclic) and `1`.
pub fn example2_cyclic(t: usize) -> Result<DigraphConstruction> {
    if t < 2 {
        return Err(Error::pre("rotational construction needs t >= 2"));
    }
    let c = 2 * t - 1;
    let v = c;
    let mut arcs = Vec::new();
    for i in 0..c {
        for step in 1..t {
            arcs.push((i, (i + step) % c));
        }
    }
    for j in 0..c {
        arcs.push((v, j));
    }
    DigraphConstruction::new(Tournament::new(c + 1, &arcs)?, 2 * t)
}

/// The edge design of the complete graph `K_v`: one member per vertex holding
/// its `v-1` incident edges. Pairwise intersections are single edges, any
/// three members meet in nothing, and every element has degree exactly 2.
pub fn pair_design(v: usize) -> Result<SetFamily> {
    if v < 2 {
        return Err(Error::pre("pair design needs at least 2 vertices"));
    }
    let edges = v * (v - 1) / 2;
    if edges > MAX_GROUND {
        return Err(Error::GroundTooLarge(edges));
    }
    let mut edge_id = vec![vec![0usize; v]; v];
    let mut next = 0usize;
    for i in 0..v {
        for j in (i + 1)..v {
            edge_id[i][j] = next;
            edge_id[j][i] = next;
            next += 1;
        }
    }
    let sets: Vec<ElementSet> = (0..v)
        .map(|i| {
            ElementSet::from_elements((0..v).filter(|&j| j != i).map(|j| edge_id[i][j]))
                .expect("edge ids fit the ground cap")
        })
        .collect();
    SetFamily::new(edges, sets, Some(v - 1))
}

/// A minimal cover's block structure: vertices met in exactly one element
/// (`singleton_vertices`, only meaningful for blocks of size >= 2) and
/// vertices whose whole block is taken (`full_vertices`; size-1 blocks that
/// are hit always classify here).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverShape {
    pub singleton_vertices: u32,
    pub full_vertices: u32,
}

/// Result of enumerating minimal covers via their block shapes, cross-checked
/// against the branching engine.
#[derive(Debug, Clone)]
pub struct ShapeEnumeration {
    pub covers: CoverFamily,
    pub shapes: Vec<CoverShape>,
    pub engine_cover_count: usize,
    pub engine_agrees: bool,
    pub all_traces_conform: bool,
    pub first_mismatch: Option<ElementSet>,
}

/// Enumerate minimal covers of a digraph family by generating every candidate
/// of block-shape form — vertices in `A` contribute one block element each,
/// vertices in `B` their full block, and the candidate covers the family iff
/// `A ∪ B ∪ N_in(B)` is all vertices — then filtering by exact minimality.
///
/// The result is compared against the independent branching engine with the
/// cap set to the whole ground (every minimal cover, no size restriction);
/// both routes must agree, and every engine cover must have a conforming
/// trace.
pub fn covers_by_shape(
    d: &DigraphConstruction,
    limits: &EnumerationLimits,
) -> Result<ShapeEnumeration> {
    let family = d.build_family()?;
    let m = d.vertex_count();
    let all: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let budget = AtomicU64::new(0);

    let mut found: Vec<(ElementSet, CoverShape)> = Vec::new();
    for b_mask in 0..=all {
        // In-neighborhood of B: vertices with an arc into B.
        let mut covered = b_mask;
        for v in 0..m {
            if d.tournament.out_neighbors(v).iter().any(|&j| b_mask & (1 << j) != 0) {
                covered |= 1 << v;
            }
        }
        // A ranges over subsets of the remaining vertices whose blocks have
        // at least two elements (size-1 blocks always classify as full).
        let mut a_pool: u32 = 0;
        for v in 0..m {
            if b_mask & (1 << v) == 0 && d.block_size(v) >= 2 {
                a_pool |= 1 << v;
            }
        }
        let needed = all & !covered;
        if needed & !a_pool != 0 {
            continue; // some vertex can never be covered under this B
        }
        // Iterate subsets of a_pool that include everything still uncovered.
        let optional = a_pool & !needed;
        let mut opt_subset = optional;
        loop {
            let a_mask = needed | opt_subset;
            if budget.fetch_add(1, Ordering::Relaxed) >= limits.node_budget {
                return Err(Error::BudgetExceeded {
                    limit: limits.node_budget,
                    nodes: budget.load(Ordering::Relaxed),
                    covers_found: found.len(),
                });
            }
            expand_shape(d, &family, a_mask, b_mask, &mut found);
            if opt_subset == 0 {
                break;
            }
            opt_subset = (opt_subset - 1) & optional;
        }
    }

    found.sort_by(|x, y| x.0.cmp(&y.0));
    let covers: Vec<ElementSet> = found.iter().map(|(c, _)| *c).collect();
    let shapes: Vec<CoverShape> = found.iter().map(|(_, s)| *s).collect();
    let shape_covers = CoverFamily::from_parts(covers, d.ground_size(), family.fingerprint())?;

    let engine = enumerate_minimal_covers(&family, d.ground_size(), limits)?;
    let engine_agrees = shape_covers.covers() == engine.covers();
    let first_mismatch = if engine_agrees {
        None
    } else {
        engine
            .covers()
            .iter()
            .find(|c| !shape_covers.covers().contains(c))
            .or_else(|| {
                shape_covers
                    .covers()
                    .iter()
                    .find(|c| !engine.covers().contains(c))
            })
            .copied()
    };
    let all_traces_conform = engine.covers().iter().all(|&c| d.trace_conforms(c));

    Ok(ShapeEnumeration {
        covers: shape_covers,
        shapes,
        engine_cover_count: engine.len(),
        engine_agrees,
        all_traces_conform,
        first_mismatch,
    })
}

fn expand_shape(
    d: &DigraphConstruction,
    family: &SetFamily,
    a_mask: u32,
    b_mask: u32,
    out: &mut Vec<(ElementSet, CoverShape)>,
) {
    let shape = CoverShape { singleton_vertices: a_mask, full_vertices: b_mask };
    let mut base = ElementSet::EMPTY;
    for v in 0..d.vertex_count() {
        if b_mask & (1 << v) != 0 {
            base = base.union(d.block(v));
        }
    }
    let a_blocks: Vec<Vec<usize>> = (0..d.vertex_count())
        .filter(|&v| a_mask & (1 << v) != 0)
        .map(|v| d.block(v).to_vec())
        .collect();
    let mut picks = vec![0usize; a_blocks.len()];
    loop {
        let mut candidate = base;
        for (b, &p) in a_blocks.iter().zip(&picks) {
            candidate = candidate.with(b[p]);
        }
        if is_minimal_cover(candidate, family) {
            out.push((candidate, shape));
        }
        let mut pos = picks.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < a_blocks[pos].len() {
                break;
            }
            picks[pos] = 0;
        }
        if picks.iter().all(|&p| p == 0) {
            break;
        }
    }
}

/// Report for the closed-form transversal lower bound `n^{-n} * prod |K_i|`
/// against the exact `c_n` of the built family.
#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub formula: Rational,
    pub c_n: Rational,
    pub tau: usize,
    /// The bound's derivation counts one-per-block transversals as minimal
    /// covers, which requires tau = n; when tau < n the comparison is moot.
    pub applicable: bool,
    pub holds: bool,
}

/// Evaluate the lower-bound formula for a conjecture-shaped construction
/// (vertex count equal to the uniformity) and verify it against exact
/// enumeration.
pub fn lower_bound_weight(
    d: &DigraphConstruction,
    limits: &EnumerationLimits,
) -> Result<LowerBoundReport> {
    let n = d.uniformity();
    if d.vertex_count() != n {
        return Err(Error::pre(format!(
            "lower bound needs vertex count = uniformity, got {} vs {n}",
            d.vertex_count()
        )));
    }
    let mut formula = lambda_pow_neg(&rational_usize(n), n);
    for i in 0..n {
        formula *= rational_usize(d.block_size(i));
    }
    let family = d.build_family()?;
    let t = crate::transversal::tau(&family, limits)?;
    let covers = enumerate_minimal_covers(&family, n, limits)?;
    let c_n = covers.weight(&rational_usize(n))?.into_inner();
    let applicable = t == n;
    let holds = formula <= c_n;
    if applicable && !holds {
        return Err(Error::internal(format!(
            "transversal lower bound {} exceeds exact c_n {}",
            formula, c_n
        )));
    }
    Ok(LowerBoundReport { formula, c_n, tau: t, applicable, holds })
}

/// Is `x` one or the border values of a block trace? Helper for reports.
pub fn trace_classes(d: &DigraphConstruction, cover: ElementSet) -> Vec<(usize, usize, usize)> {
    (0..d.vertex_count())
        .map(|i| (i, cover.intersection(d.block(i)).len(), d.block_size(i)))
        .collect()
}

/// Sum of `lambda^{-|C|}` over an explicit list (used by shape reports that
/// need weights without rebuilding a `CoverFamily`).
pub fn weight_of_covers(covers: &[ElementSet], lambda: &Rational) -> Rational {
    let mut total = Rational::one() - Rational::one();
    for c in covers {
        total += lambda_pow_neg(lambda, c.len());
    }
    total
}
