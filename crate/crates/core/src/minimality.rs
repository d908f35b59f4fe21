//! Decomposition of small-weight codewords into hyperplanes, the hole
//! adjacency refinement of the term set, and minimality verdicts.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundContext, RegimeFlag};
use crate::codes::{partial_combination, Codeword, CodewordJson, Decomposition};
use crate::error::{Error, Result};
use crate::ff::{MatrixModP, PrimeField};
use crate::geometry::{Hyperplane, Point, ProjectiveSpace};

/// Default cap on p^m for the exhaustive oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 100_000_000;

// ---------------------------------------------------------------------------
// decomposition

/// One subtraction step of the peeling decomposer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peel {
    pub hyperplane: Hyperplane,
    pub value: u32,
    /// Points of the hyperplane carrying `value` when it was chosen.
    pub count: u32,
    /// Other (hyperplane, value) pairs reaching the same count.
    pub tied_with: Vec<(Hyperplane, u32)>,
}

#[derive(Debug, Clone, Default)]
pub struct DecomposeOptions {
    /// Overrides the default peel budget.
    pub peel_limit: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Decomposed {
    pub decomposition: Decomposition,
    pub peels: Vec<Peel>,
    pub flags: Vec<RegimeFlag>,
    /// The input was outside the regime and the guarantee does not apply.
    pub best_effort: bool,
    /// ceil(wt / theta(n-1)).
    pub expected_terms: usize,
}

impl Decomposed {
    pub fn term_count_matches(&self) -> bool {
        self.decomposition.m() == self.expected_terms
    }

    pub fn had_ties(&self) -> bool {
        self.peels.iter().any(|p| !p.tied_with.is_empty())
    }
}

/// Recovers the hyperplane terms of `c` by repeated majority peeling.
pub fn decompose(space: &ProjectiveSpace, c: &Codeword) -> Result<Decomposed> {
    decompose_with(space, c, &DecomposeOptions::default())
}

const MAX_RECORDED_TIES: usize = 16;

pub fn decompose_with(space: &ProjectiveSpace, c: &Codeword, opts: &DecomposeOptions) -> Result<Decomposed> {
    if c.len() != space.num_points() {
        return Err(Error::LengthMismatch {
            got: c.len(),
            expected: space.num_points(),
        });
    }
    let ctx = BoundContext::of(space);
    let wt = c.weight();
    let flags = ctx.codeword_flags(wt);
    let best_effort = !flags.is_empty();
    let half = space.theta(space.n() as isize - 1);
    let expected_terms = wt.div_ceil(half as usize);
    // outside the regime every majority peel still shrinks the weight, so
    // wt peels always suffice for termination
    let limit = opts.peel_limit.unwrap_or(if best_effort {
        wt
    } else {
        ctx.delta(ctx.n).map(|d| d as usize).unwrap_or(0).saturating_sub(1)
    });

    let p = space.p();
    let slots = (p - 1) as usize;
    let mut residual = c.values().to_vec();
    let mut counts = initial_counts(space, &residual, slots);
    let mut weight = wt;
    let mut peels: Vec<Peel> = Vec::new();

    while weight > 0 && peels.len() < limit {
        let (best, count) = counts
            .iter()
            .enumerate()
            .fold((0usize, 0u32), |acc, (i, &k)| if k > acc.1 { (i, k) } else { acc });
        if 2 * count as u64 <= half {
            break;
        }
        let hyperplane = Hyperplane((best / slots) as u32);
        let value = (best % slots) as u32 + 1;
        let tied_with = counts
            .iter()
            .enumerate()
            .filter(|&(i, &k)| k == count && i != best)
            .take(MAX_RECORDED_TIES)
            .map(|(i, _)| (Hyperplane((i / slots) as u32), (i % slots) as u32 + 1))
            .collect();
        peels.push(Peel {
            hyperplane,
            value,
            count,
            tied_with,
        });

        // subtract value * f_H, updating the counters of every hyperplane
        // through each changed point
        let mut changed = Vec::with_capacity(half as usize);
        space.for_each_orthogonal(space.hyperplane_coords(hyperplane), |i| changed.push(i));
        for i in changed {
            let old = residual[i as usize] as u32;
            let new = (old + p - value) % p;
            residual[i as usize] = new as u8;
            weight = weight + (new != 0) as usize - (old != 0) as usize;
            space.for_each_orthogonal(space.point_coords(Point(i)), |h| {
                let base = h as usize * slots;
                if old != 0 {
                    counts[base + old as usize - 1] -= 1;
                }
                if new != 0 {
                    counts[base + new as usize - 1] += 1;
                }
            });
        }
    }

    if weight > 0 {
        return Err(Error::NoDecomposition {
            residual_weight: weight,
            peels: peels.len(),
        });
    }
    let mut merged: BTreeMap<Hyperplane, u32> = BTreeMap::new();
    for peel in &peels {
        let e = merged.entry(peel.hyperplane).or_insert(0);
        *e = (*e + peel.value) % p;
    }
    merged.retain(|_, a| *a != 0);
    Ok(Decomposed {
        decomposition: Decomposition::new(p, merged)?,
        peels,
        flags,
        best_effort,
        expected_terms,
    })
}

/// counts[H * (p-1) + v - 1] = number of points of H with value v.
fn initial_counts(space: &ProjectiveSpace, values: &[u8], slots: usize) -> Vec<u32> {
    let support: Vec<u32> = (0..values.len() as u32).filter(|&i| values[i as usize] != 0).collect();
    let len = space.num_hyperplanes() * slots;
    let workers = rayon::current_num_threads().max(1);
    let chunk = support.len().div_ceil(workers).max(1);
    support
        .par_chunks(chunk)
        .map(|pts| {
            let mut counts = vec![0u32; len];
            for &i in pts {
                let v = values[i as usize] as usize - 1;
                space.for_each_orthogonal(space.point_coords(Point(i)), |h| counts[h as usize * slots + v] += 1);
            }
            counts
        })
        .reduce(
            || vec![0u32; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

// ---------------------------------------------------------------------------
// partitions and the adjacency graph

/// A partition of the decomposition's hyperplanes. Blocks are sorted
/// internally and ordered by their smallest hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplanePartition {
    pub blocks: Vec<Vec<Hyperplane>>,
    pub generation: usize,
}

impl HyperplanePartition {
    pub fn singletons(d: &Decomposition) -> Self {
        Self {
            blocks: d.hyperplanes().into_iter().map(|h| vec![h]).collect(),
            generation: 0,
        }
    }

    pub fn new(d: &Decomposition, blocks: Vec<Vec<Hyperplane>>, generation: usize) -> Result<Self> {
        let mut seen: Vec<Hyperplane> = blocks.iter().flatten().copied().collect();
        let total = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != total || seen != d.hyperplanes() || blocks.iter().any(Vec::is_empty) {
            return Err(Error::MalformedPartition);
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks, generation })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &HyperplanePartition) -> bool {
        self.blocks
            .iter()
            .all(|b| coarser.blocks.iter().any(|cb| b.iter().all(|h| cb.contains(h))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdjacencyEdge {
    pub a: usize,
    pub b: usize,
    /// Lowest-index hole witnessing the adjacency.
    pub witness: Point,
}

/// Graph on the blocks of a partition; vertices are block positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyGraph {
    pub vertices: usize,
    pub edges: Vec<AdjacencyEdge>,
}

/// The holes of c lying on some term hyperplane, grouped by which terms
/// pass through them.
#[derive(Debug, Clone)]
pub struct CoveredHoles {
    terms: Vec<(Hyperplane, u32)>,
    p: u32,
    /// (term positions, holes with exactly that incidence), by lowest hole.
    groups: Vec<(Vec<u16>, Vec<Point>)>,
}

impl CoveredHoles {
    pub fn new(space: &ProjectiveSpace, d: &Decomposition) -> Result<Self> {
        let terms: Vec<(Hyperplane, u32)> = d.terms().iter().map(|(&h, &a)| (h, a)).collect();
        if terms.len() > u16::MAX as usize {
            return Err(Error::ResourceCap {
                what: "decomposition term",
                count: terms.len() as u128,
                cap: u16::MAX as u128,
            });
        }
        let p = space.p();
        let mut on: BTreeMap<u32, Vec<u16>> = BTreeMap::new();
        for (j, &(h, _)) in terms.iter().enumerate() {
            space.hyperplane(h.0 as u64)?;
            space.for_each_orthogonal(space.hyperplane_coords(h), |i| on.entry(i).or_default().push(j as u16));
        }
        let mut by_pattern: BTreeMap<Vec<u16>, Vec<Point>> = BTreeMap::new();
        for (i, pattern) in on {
            let value = pattern.iter().map(|&j| terms[j as usize].1).sum::<u32>() % p;
            if value == 0 {
                by_pattern.entry(pattern).or_default().push(Point(i));
            }
        }
        let mut groups: Vec<_> = by_pattern.into_iter().collect();
        groups.sort_unstable_by_key(|(_, pts)| pts[0]);
        Ok(Self { terms, p, groups })
    }

    pub fn holes(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self.groups.iter().flat_map(|(_, pts)| pts.iter().copied()).collect();
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|(_, pts)| pts.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Distinct incidence patterns of the covered holes, as term positions.
    pub fn patterns(&self) -> impl Iterator<Item = &[u16]> {
        self.groups.iter().map(|(pat, _)| pat.as_slice())
    }

    fn block_of(&self, partition: &HyperplanePartition) -> Result<Vec<usize>> {
        let mut block = vec![usize::MAX; self.terms.len()];
        for (b, hs) in partition.blocks.iter().enumerate() {
            for h in hs {
                let j = self
                    .terms
                    .binary_search_by_key(h, |&(t, _)| t)
                    .map_err(|_| Error::MalformedPartition)?;
                block[j] = b;
            }
        }
        if block.contains(&usize::MAX) {
            return Err(Error::MalformedPartition);
        }
        Ok(block)
    }

    /// c|_B(P) for every block B, for a hole with the given pattern.
    fn block_values(&self, pattern: &[u16], block: &[usize], nblocks: usize) -> Vec<u32> {
        let mut vals = vec![0u32; nblocks];
        for &j in pattern {
            let b = block[j as usize];
            vals[b] = (vals[b] + self.terms[j as usize].1) % self.p;
        }
        vals
    }

    pub fn adjacency(&self, partition: &HyperplanePartition) -> Result<AdjacencyGraph> {
        let block = self.block_of(partition)?;
        let nblocks = partition.len();
        let mut edges: BTreeMap<(usize, usize), Point> = BTreeMap::new();
        for (pattern, pts) in &self.groups {
            let vals = self.block_values(pattern, &block, nblocks);
            let mut nz = vals.iter().enumerate().filter(|(_, &v)| v != 0).map(|(b, _)| b);
            if let (Some(a), Some(b), None) = (nz.next(), nz.next(), nz.next()) {
                let w = edges.entry((a, b)).or_insert(pts[0]);
                *w = (*w).min(pts[0]);
            }
        }
        Ok(AdjacencyGraph {
            vertices: nblocks,
            edges: edges
                .into_iter()
                .map(|((a, b), witness)| AdjacencyEdge { a, b, witness })
                .collect(),
        })
    }

    /// Holes at which some block of `partition` has a nonzero partial sum.
    pub fn exceptional(&self, partition: &HyperplanePartition) -> Result<Vec<Point>> {
        let block = self.block_of(partition)?;
        let mut out: Vec<Point> = Vec::new();
        for (pattern, pts) in &self.groups {
            if self.block_values(pattern, &block, partition.len()).iter().any(|&v| v != 0) {
                out.extend(pts);
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Checks the three adjacency conditions for an edge directly from
/// incidences, independently of [`CoveredHoles`].
pub fn edge_is_valid(
    space: &ProjectiveSpace,
    d: &Decomposition,
    partition: &HyperplanePartition,
    edge: &AdjacencyEdge,
) -> bool {
    let p = space.p();
    let eval = |hs: &[Hyperplane]| -> u32 {
        hs.iter()
            .filter(|&&h| space.incident(edge.witness, h))
            .map(|&h| d.coefficient(h))
            .sum::<u32>()
            % p
    };
    let all: Vec<Hyperplane> = d.hyperplanes();
    if eval(&all) != 0 || edge.a >= partition.len() || edge.b >= partition.len() || edge.a == edge.b {
        return false;
    }
    partition.blocks.iter().enumerate().all(|(i, b)| {
        let v = eval(b);
        if i == edge.a || i == edge.b {
            v != 0
        } else {
            v == 0
        }
    })
}

pub fn build_adjacency(
    space: &ProjectiveSpace,
    d: &Decomposition,
    partition: &HyperplanePartition,
) -> Result<AdjacencyGraph> {
    CoveredHoles::new(space, d)?.adjacency(partition)
}

#[derive(Debug, Clone)]
pub struct Refinement {
    pub fixpoint: HyperplanePartition,
    /// Every generation from the singletons up to and including the fixpoint.
    pub history: Vec<HyperplanePartition>,
    /// The adjacency graph of each generation in `history`.
    pub graphs: Vec<AdjacencyGraph>,
}

fn merge_components(partition: &HyperplanePartition, graph: &AdjacencyGraph) -> HyperplanePartition {
    let mut uf = UnionFind::<usize>::new(partition.len());
    for e in &graph.edges {
        uf.union(e.a, e.b);
    }
    let mut comps: BTreeMap<usize, Vec<Hyperplane>> = BTreeMap::new();
    for (b, hs) in partition.blocks.iter().enumerate() {
        comps.entry(uf.find(b)).or_default().extend(hs);
    }
    let mut blocks: Vec<Vec<Hyperplane>> = comps.into_values().collect();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    HyperplanePartition {
        blocks,
        generation: partition.generation + 1,
    }
}

pub(crate) fn refine_with(holes: &CoveredHoles, d: &Decomposition) -> Result<Refinement> {
    let mut current = HyperplanePartition::singletons(d);
    let mut history = Vec::new();
    let mut graphs = Vec::new();
    loop {
        let graph = holes.adjacency(&current)?;
        let next = merge_components(&current, &graph);
        history.push(current.clone());
        graphs.push(graph);
        if next.len() == current.len() {
            return Ok(Refinement {
                fixpoint: current,
                history,
                graphs,
            });
        }
        current = next;
    }
}

/// Iterates component merging from the singleton partition to its fixpoint.
pub fn refine_to_fixpoint(space: &ProjectiveSpace, d: &Decomposition) -> Result<Refinement> {
    refine_with(&CoveredHoles::new(space, d)?, d)
}

pub fn exceptional_holes(
    space: &ProjectiveSpace,
    d: &Decomposition,
    fixpoint: &HyperplanePartition,
) -> Result<Vec<Point>> {
    CoveredHoles::new(space, d)?.exceptional(fixpoint)
}

// ---------------------------------------------------------------------------
// witness

#[derive(Debug, Clone)]
pub struct Witness {
    pub codeword: Codeword,
    /// Scalar applied to each fixpoint block, in block order.
    pub block_coefficients: Vec<u32>,
}

/// Builds c' = sum alpha_j c|_{B_j} vanishing on every exceptional hole,
/// with alpha not constant.
pub fn build_witness(
    space: &ProjectiveSpace,
    d: &Decomposition,
    fixpoint: &HyperplanePartition,
    holes: &[Point],
) -> Result<Witness> {
    let k = fixpoint.len();
    if holes.len() + 2 > k {
        return Err(Error::WitnessPrecondition {
            holes: holes.len(),
            blocks: k,
        });
    }
    let p = space.p();
    let field = PrimeField::new(p)?;
    let mut entries = Vec::with_capacity(holes.len() * k);
    for &pt in holes {
        for block in &fixpoint.blocks {
            let v = block
                .iter()
                .filter(|&&h| space.incident(pt, h))
                .map(|&h| d.coefficient(h))
                .sum::<u32>()
                % p;
            entries.push(v);
        }
    }
    let system = MatrixModP::new(field, holes.len(), k, entries)?;
    let alpha = system
        .nullspace()
        .into_iter()
        .find(|v| v.iter().any(|&x| x != v[0]))
        .ok_or(Error::Internal("null space lies on the all-ones line"))?;

    let c = d.codeword(space)?;
    let mut witness = Codeword::zero(space)?;
    for (block, &a) in fixpoint.blocks.iter().zip(&alpha) {
        if a != 0 {
            witness.add_scaled(&partial_combination(space, d, block)?, a);
        }
    }
    if !witness.support_subset_of(&c) {
        return Err(Error::Internal("witness support escapes supp(c)"));
    }
    if witness.is_multiple_of(&c) {
        return Err(Error::Internal("witness is a multiple of c"));
    }
    Ok(Witness {
        codeword: witness,
        block_coefficients: alpha,
    })
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub minimal: bool,
    pub combinations_checked: u64,
    /// Combinations whose support lies inside supp(c), including zero.
    pub support_contained: u64,
    /// Lowest-index combination that is support-contained but not a multiple.
    pub counterexample: Option<Vec<(Hyperplane, u32)>>,
    /// Outside the weight regime the scan covers only the span of the terms.
    pub heuristic: bool,
}

const ORACLE_CHUNK: u64 = 1 << 12;

/// Exhaustive scan of every F_p-combination of the decomposition's terms.
pub fn oracle_minimal(space: &ProjectiveSpace, d: &Decomposition, cap: u64) -> Result<OracleResult> {
    let p = space.p() as u64;
    let m = d.m();
    let total = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::ResourceCap {
            what: "oracle combination",
            count: total,
            cap: cap as u128,
        });
    }
    let total = total as u64;
    let c = d.codeword(space)?;
    let heuristic = !BoundContext::of(space).codeword_flags(c.weight()).is_empty();
    let holes = CoveredHoles::new(space, d)?;
    let patterns: Vec<&[u16]> = holes.patterns().collect();
    let terms: Vec<(Hyperplane, u32)> = d.terms().iter().map(|(&h, &a)| (h, a)).collect();
    let field = PrimeField::new(p as u32)?;
    let alpha_inv = terms.first().map(|&(_, a)| field.inv(a).expect("nonzero coefficient"));

    let decode = |mut k: u64, out: &mut [u32]| {
        for x in out.iter_mut() {
            *x = (k % p) as u32;
            k /= p;
        }
    };
    let proportional = |beta: &[u32]| -> bool {
        let Some(inv) = alpha_inv else { return true };
        let lambda = field.mul(beta[0], inv);
        terms.iter().zip(beta).all(|(&(_, a), &b)| field.mul(lambda, a) == b)
    };
    let is_counterexample = |beta: &[u32]| -> bool {
        let mut cw = Codeword::zero(space).expect("space already validated");
        for (&(h, _), &b) in terms.iter().zip(beta) {
            cw.add_hyperplane(space, h, b);
        }
        !cw.is_multiple_of(&c)
    };

    let chunks: Vec<u64> = (0..total.div_ceil(ORACLE_CHUNK)).collect();
    let (contained, first) = chunks
        .par_iter()
        .map(|&chunk| {
            let mut beta = vec![0u32; m];
            let mut contained = 0u64;
            let mut first: Option<u64> = None;
            for k in chunk * ORACLE_CHUNK..((chunk + 1) * ORACLE_CHUNK).min(total) {
                decode(k, &mut beta);
                let vanishes = patterns
                    .iter()
                    .all(|pat| pat.iter().map(|&j| beta[j as usize] as u64).sum::<u64>() % p == 0);
                if !vanishes {
                    continue;
                }
                contained += 1;
                if first.is_none() && !proportional(&beta) && is_counterexample(&beta) {
                    first = Some(k);
                }
            }
            (contained, first)
        })
        .reduce(
            || (0, None),
            |(c1, f1), (c2, f2)| {
                let f = match (f1, f2) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (c1 + c2, f)
            },
        );

    let counterexample = first.map(|k| {
        let mut beta = vec![0u32; m];
        decode(k, &mut beta);
        terms
            .iter()
            .zip(beta)
            .filter(|&(_, b)| b != 0)
            .map(|(&(h, _), b)| (h, b))
            .collect()
    });
    Ok(OracleResult {
        minimal: counterexample.is_none(),
        combinations_checked: total,
        support_contained: contained,
        counterexample,
        heuristic,
    })
}

// ---------------------------------------------------------------------------
// verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Minimal,
    NotMinimal,
    Undetermined,
}

/// Where the resolved verdict came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictSource {
    Theorem,
    Oracle,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportNote {
    /// The zero codeword: minimal by convention.
    DegenerateZero,
    /// Some peel had a tie at its maximal count.
    PeelTies,
    /// The decomposition ran outside the regime.
    BestEffortDecomposition,
    /// The number of terms differs from ceil(wt / theta(n-1)).
    TermCountMismatch,
    /// A one-block fixpoint outside the regime proves nothing.
    SingleBlockOutsideRegime,
    /// Two fixpoint blocks with exceptional holes (only possible outside the regime).
    TwoBlocksWithExceptionalHoles,
    /// The decomposition was supplied by the caller.
    DecompositionSupplied,
    /// The oracle was requested but p^m exceeded its cap.
    OracleCapExceeded,
    /// The not-minimal witness was constructed outside the regime; it is
    /// still a verified counterexample.
    WitnessOutsideRegime,
}

#[derive(Debug, Clone)]
pub struct VerdictOptions {
    pub oracle: bool,
    pub oracle_cap: u64,
    pub peel_limit: Option<usize>,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        Self {
            oracle: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
            peel_limit: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub weight: usize,
    pub decomposition: Decomposition,
    pub partition_history: Vec<Vec<Vec<Hyperplane>>>,
    pub adjacency_history: Vec<Vec<AdjacencyEdge>>,
    pub fixpoint: Vec<Vec<Hyperplane>>,
    pub exceptional_holes: Vec<Point>,
    /// Verdict derived from the structural theorems alone.
    pub verdict: Verdict,
    pub witness: Option<CodewordJson>,
    pub witness_block_coefficients: Option<Vec<u32>>,
    pub oracle: Option<OracleResult>,
    /// The theorem verdict if determined, otherwise the oracle's.
    pub resolved_verdict: Verdict,
    pub resolved_by: VerdictSource,
    pub regime_flags: Vec<RegimeFlag>,
    pub notes: Vec<ReportNote>,
}

/// Full minimality analysis of `c`.
pub fn verdict(space: &ProjectiveSpace, c: &Codeword, opts: &VerdictOptions) -> Result<MinimalityReport> {
    let dec = decompose_with(
        space,
        c,
        &DecomposeOptions {
            peel_limit: opts.peel_limit,
        },
    )?;
    let mut notes = Vec::new();
    if dec.had_ties() {
        notes.push(ReportNote::PeelTies);
    }
    if dec.best_effort {
        notes.push(ReportNote::BestEffortDecomposition);
    }
    if !dec.term_count_matches() {
        notes.push(ReportNote::TermCountMismatch);
    }
    report_for(space, c, dec.decomposition, dec.flags, notes, opts)
}

/// Runs the graph machinery on a decomposition given by the caller rather
/// than recovered by peeling, e.g. when peeling fails outside the regime.
pub fn verdict_for_decomposition(
    space: &ProjectiveSpace,
    d: &Decomposition,
    opts: &VerdictOptions,
) -> Result<MinimalityReport> {
    let c = d.codeword(space)?;
    let flags = BoundContext::of(space).codeword_flags(c.weight());
    report_for(space, &c, d.clone(), flags, vec![ReportNote::DecompositionSupplied], opts)
}

fn report_for(
    space: &ProjectiveSpace,
    c: &Codeword,
    d: Decomposition,
    flags: Vec<RegimeFlag>,
    mut notes: Vec<ReportNote>,
    opts: &VerdictOptions,
) -> Result<MinimalityReport> {
    let in_regime = flags.is_empty();
    let holes = CoveredHoles::new(space, &d)?;
    let refinement = refine_with(&holes, &d)?;
    let fixpoint = &refinement.fixpoint;
    let exceptional = holes.exceptional(fixpoint)?;
    let blocks = fixpoint.len();

    let mut witness = None;
    let theorem = if c.is_zero() {
        notes.push(ReportNote::DegenerateZero);
        Verdict::Minimal
    } else if blocks == 1 {
        if in_regime {
            Verdict::Minimal
        } else {
            notes.push(ReportNote::SingleBlockOutsideRegime);
            Verdict::Undetermined
        }
    } else if exceptional.len() + 2 <= blocks {
        if !in_regime {
            notes.push(ReportNote::WitnessOutsideRegime);
        }
        witness = Some(build_witness(space, &d, fixpoint, &exceptional)?);
        Verdict::NotMinimal
    } else {
        Verdict::Undetermined
    };
    if blocks == 2 && !exceptional.is_empty() {
        notes.push(ReportNote::TwoBlocksWithExceptionalHoles);
    }

    let oracle = if opts.oracle {
        match oracle_minimal(space, &d, opts.oracle_cap) {
            Ok(r) => Some(r),
            Err(Error::ResourceCap { .. }) => {
                notes.push(ReportNote::OracleCapExceeded);
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let (resolved_verdict, resolved_by) = match (theorem, &oracle) {
        (Verdict::Undetermined, Some(o)) => (
            if o.minimal { Verdict::Minimal } else { Verdict::NotMinimal },
            VerdictSource::Oracle,
        ),
        (Verdict::Undetermined, None) => (Verdict::Undetermined, VerdictSource::None),
        (v, _) => (v, VerdictSource::Theorem),
    };
    notes.sort_unstable();
    notes.dedup();

    Ok(MinimalityReport {
        weight: c.weight(),
        decomposition: d,
        partition_history: refinement.history.iter().map(|p| p.blocks.clone()).collect(),
        adjacency_history: refinement.graphs.iter().map(|g| g.edges.clone()).collect(),
        fixpoint: fixpoint.blocks.clone(),
        exceptional_holes: exceptional,
        verdict: theorem,
        witness_block_coefficients: witness.as_ref().map(|w| w.block_coefficients.clone()),
        witness: witness.map(|w| w.codeword.to_json()),
        oracle,
        resolved_verdict,
        resolved_by,
        regime_flags: flags,
        notes,
    })
}

// ---------------------------------------------------------------------------
// fixtures

/// A named configuration with the choices made while building it.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub codeword: Codeword,
    pub terms: Vec<(Hyperplane, u32)>,
    pub lines: Vec<(&'static str, Hyperplane)>,
    pub points: Vec<(&'static str, Point)>,
}

impl Fixture {
    pub fn line(&self, name: &str) -> Hyperplane {
        self.lines.iter().find(|(n, _)| *n == name).map(|&(_, h)| h).expect("known label")
    }

    pub fn point(&self, name: &str) -> Point {
        self.points.iter().find(|(n, _)| *n == name).map(|&(_, p)| p).expect("known label")
    }
}

fn fixture_from(
    space: &ProjectiveSpace,
    lines: Vec<(&'static str, Hyperplane, u32)>,
    points: Vec<(&'static str, Point)>,
) -> Result<Fixture> {
    let terms: Vec<(Hyperplane, u32)> = lines.iter().map(|&(_, h, a)| (h, a)).collect();
    let codeword = crate::codes::combine(space, &terms)?.codeword;
    Ok(Fixture {
        codeword,
        terms,
        lines: lines.into_iter().map(|(n, h, _)| (n, h)).collect(),
        points,
    })
}

fn lowest_lines_through(space: &ProjectiveSpace, pt: Point, avoid: &[Hyperplane], k: usize) -> Vec<Hyperplane> {
    space
        .hyperplanes_through(pt)
        .into_iter()
        .filter(|h| !avoid.contains(h))
        .take(k)
        .collect()
}

/// c = r1 + r2 - r' + s1 + s2 - s' - t in a plane of characteristic p > 3.
/// t is line 0, R < S its two lowest points, and r1 < r2 < r' (resp.
/// s1 < s2 < s') the three lowest other lines through R (resp. S).
pub fn szonyi_example(space: &ProjectiveSpace) -> Result<Fixture> {
    if space.n() != 2 || space.p() <= 3 {
        return Err(Error::FixtureParameters("n = 2 and p > 3"));
    }
    let p = space.p();
    let t = Hyperplane(0);
    let on_t = space.points_on(t);
    let (r, s) = (on_t[0], on_t[1]);
    let rs = lowest_lines_through(space, r, &[t], 3);
    let ss = lowest_lines_through(space, s, &[t], 3);
    fixture_from(
        space,
        vec![
            ("r1", rs[0], 1),
            ("r2", rs[1], 1),
            ("r'", rs[2], p - 1),
            ("s1", ss[0], 1),
            ("s2", ss[1], 1),
            ("s'", ss[2], p - 1),
            ("t", t, p - 1),
        ],
        vec![("R", r), ("S", s)],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum P2Kind {
    /// Three lines through a common point.
    Pencil,
    /// A line l = line 0 with no holes: two lines through each of two of
    /// its points.
    NoHoleLine,
}

pub fn p2_fixture(space: &ProjectiveSpace, kind: P2Kind) -> Result<Fixture> {
    if space.n() != 2 || space.p() != 2 {
        return Err(Error::FixtureParameters("n = 2 and p = 2"));
    }
    match kind {
        P2Kind::Pencil => {
            let centre = Point(0);
            let ls = lowest_lines_through(space, centre, &[], 3);
            fixture_from(
                space,
                vec![("l1", ls[0], 1), ("l2", ls[1], 1), ("l3", ls[2], 1)],
                vec![("centre", centre)],
            )
        }
        P2Kind::NoHoleLine => {
            let l = Hyperplane(0);
            let on = space.points_on(l);
            let (q1, q2) = (on[0], on[1]);
            let a = lowest_lines_through(space, q1, &[l], 2);
            let b = lowest_lines_through(space, q2, &[l], 2);
            fixture_from(
                space,
                vec![("l", l, 1), ("m1", a[0], 1), ("m2", a[1], 1), ("m3", b[0], 1), ("m4", b[1], 1)],
                vec![("Q1", q1), ("Q2", q2)],
            )
        }
    }
}
