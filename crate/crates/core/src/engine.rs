//! Generic group interface and exact enumeration: breadth-first balls with
//! canonical-form deduplication, conjugacy class counts via a complete
//! invariant or via a bounded-conjugator oracle, and growth series.

use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("element cap {cap} exceeded; last completed radius {last_completed}")]
    CapExceeded { cap: usize, last_completed: u32 },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

/// A finitely generated group given by exact normal forms.
///
/// Elements are required to be canonical: two values compare equal iff they
/// represent the same group element. `canonical_key` therefore defaults to
/// the element itself; it exists so that implementations with redundant
/// representations could substitute a separate key.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type ConjKey: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    /// Generators in declared order, including inverses. BFS expands in
    /// exactly this order, which fixes all tie-breaking.
    fn generators(&self) -> Vec<(String, Self::Elem)>;

    fn canonical_key(&self, e: &Self::Elem) -> Self::Elem {
        e.clone()
    }

    /// Conjugacy invariant: conjugate elements must receive equal keys.
    fn conjugacy_key(&self, _e: &Self::Elem) -> Option<Self::ConjKey> {
        None
    }

    /// True when equal keys also imply conjugacy (complete invariant).
    fn conjugacy_key_complete(&self) -> bool {
        false
    }

    /// Rendering for output files.
    fn display(&self, e: &Self::Elem) -> String;
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Cap on deduplicated elements held by any single enumeration.
    pub element_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            element_cap: 5_000_000,
        }
    }
}

/// Frontiers below this size are expanded sequentially; above it the level
/// is mapped in parallel. Candidate order is identical either way.
const PAR_THRESHOLD: usize = 1024;

/// The ball of a given radius: exact word lengths for every element.
#[derive(Debug, Clone)]
pub struct Ball<E: Clone + Eq + Hash> {
    pub radius: u32,
    dist: HashMap<E, u32>,
    /// Elements grouped by exact length, each level in discovery order.
    levels: Vec<Vec<E>>,
}

impl<E: Clone + Eq + Ord + Hash> Ball<E> {
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.dist.contains_key(e)
    }

    pub fn distance(&self, e: &E) -> Option<u32> {
        self.dist.get(e).copied()
    }

    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut sizes: Vec<u64> = self.levels.iter().map(|l| l.len() as u64).collect();
        sizes.resize(self.radius as usize + 1, 0);
        sizes
    }

    /// |B(n)| for each n up to the radius.
    pub fn cumulative_sizes(&self) -> Vec<u64> {
        let mut acc = 0;
        self.sphere_sizes()
            .iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect()
    }

    /// Iterate in discovery order (deterministic).
    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.levels.iter().flatten()
    }

    pub fn levels(&self) -> &[Vec<E>] {
        &self.levels
    }

    /// Elements sorted by canonical order, for reproducible files.
    pub fn sorted_elements(&self) -> Vec<E> {
        let mut v: Vec<E> = self.iter().cloned().collect();
        v.sort_unstable();
        v
    }
}

fn bfs_ball<G: Group>(
    group: &G,
    radius: u32,
    cfg: &EngineConfig,
) -> (Ball<G::Elem>, Option<u32>) {
    let gens: Vec<G::Elem> = group.generators().into_iter().map(|(_, e)| e).collect();
    let identity = group.identity();
    let mut dist: HashMap<G::Elem, u32> = HashMap::new();
    dist.insert(identity.clone(), 0);
    let mut levels: Vec<Vec<G::Elem>> = vec![vec![identity]];
    for r in 1..=radius {
        let frontier = &levels[(r - 1) as usize];
        let candidates: Vec<G::Elem> = if frontier.len() >= PAR_THRESHOLD {
            frontier
                .par_iter()
                .map(|e| {
                    gens.iter()
                        .map(|s| group.multiply(e, s))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        } else {
            frontier
                .iter()
                .flat_map(|e| gens.iter().map(move |s| group.multiply(e, s)))
                .collect()
        };
        let mut level = Vec::new();
        for cand in candidates {
            if !dist.contains_key(&cand) {
                if dist.len() >= cfg.element_cap {
                    // drop the partial level: report last completed radius
                    for e in &level {
                        dist.remove(e);
                    }
                    let ball = Ball {
                        radius: r - 1,
                        dist,
                        levels,
                    };
                    return (ball, Some(r - 1));
                }
                dist.insert(cand.clone(), r);
                level.push(cand);
            }
        }
        if level.is_empty() {
            break; // the group is exhausted; remaining spheres are empty
        }
        levels.push(level);
    }
    (
        Ball {
            radius,
            dist,
            levels,
        },
        None,
    )
}

/// Exactly the set `{ g : |g| <= radius }` with exact word lengths.
pub fn enumerate_ball<G: Group>(
    group: &G,
    radius: u32,
    cfg: &EngineConfig,
) -> Result<Ball<G::Elem>, EngineError> {
    let (ball, truncated) = bfs_ball(group, radius, cfg);
    match truncated {
        None => Ok(ball),
        Some(last_completed) => Err(EngineError::CapExceeded {
            cap: cfg.element_cap,
            last_completed,
        }),
    }
}

/// Number of conjugacy classes meeting `ball`, by complete invariant.
pub fn conjugacy_count_exact_over<G: Group>(
    group: &G,
    ball: &Ball<G::Elem>,
) -> Result<u64, EngineError> {
    if !group.conjugacy_key_complete() {
        return Err(EngineError::Unsupported(
            "group does not expose a complete conjugacy invariant".into(),
        ));
    }
    let mut keys = std::collections::HashSet::new();
    for e in ball.iter() {
        let k = group
            .conjugacy_key(e)
            .ok_or_else(|| EngineError::Unsupported("missing conjugacy key".into()))?;
        keys.insert(k);
    }
    Ok(keys.len() as u64)
}

/// g_c(n): conjugacy classes meeting the radius-n ball, exact.
pub fn conjugacy_count_exact<G: Group>(
    group: &G,
    radius: u32,
    cfg: &EngineConfig,
) -> Result<u64, EngineError> {
    let ball = enumerate_ball(group, radius, cfg)?;
    conjugacy_count_exact_over(group, &ball)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new() -> UnionFind {
        UnionFind { parent: Vec::new() }
    }

    fn push(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // root choice is irrelevant to the partition
            self.parent[rb.max(ra) as usize] = rb.min(ra);
        }
    }
}

/// Partitions the radius-n ball by conjugation with conjugators from the
/// radius-R ball, transitively closed. The partition refines true
/// conjugacy, so the block count is an upper bound on g_c(n), nonincreasing
/// in R, and equal to g_c(n) once R covers every needed conjugator.
///
/// Implementation: union-find over the conjugate closure. Seeds are the
/// ball elements; R rounds of conjugation by single generators reach
/// exactly the conjugates `g^-1 x g` for `g` in B(R) without materializing
/// B(R) itself, and intermediate conjugates may leave the ball.
pub fn conjugacy_count_oracle<G: Group>(
    group: &G,
    radius: u32,
    conj_radius: u32,
    cfg: &EngineConfig,
) -> Result<u64, EngineError> {
    let ball = enumerate_ball(group, radius, cfg)?;
    conjugacy_count_oracle_over(group, &ball, conj_radius, cfg)
}

pub fn conjugacy_count_oracle_over<G: Group>(
    group: &G,
    ball: &Ball<G::Elem>,
    conj_radius: u32,
    cfg: &EngineConfig,
) -> Result<u64, EngineError> {
    let partition = oracle_partition(group, ball, conj_radius, cfg)?;
    let mut roots = std::collections::HashSet::new();
    for &r in &partition {
        roots.insert(r);
    }
    Ok(roots.len() as u64)
}

/// Block labels (canonicalized union-find roots) for the ball elements in
/// discovery order.
pub fn oracle_partition<G: Group>(
    group: &G,
    ball: &Ball<G::Elem>,
    conj_radius: u32,
    cfg: &EngineConfig,
) -> Result<Vec<u32>, EngineError> {
    let gens: Vec<G::Elem> = group.generators().into_iter().map(|(_, e)| e).collect();
    let inv_gens: Vec<G::Elem> = gens.iter().map(|s| group.invert(s)).collect();
    let mut index: HashMap<G::Elem, u32> = HashMap::new();
    let mut elems: Vec<G::Elem> = Vec::new();
    let mut uf = UnionFind::new();
    for e in ball.iter() {
        index.insert(e.clone(), uf.push());
        elems.push(e.clone());
    }
    let seed_count = elems.len();
    let mut frontier: Vec<u32> = (0..seed_count as u32).collect();
    for _round in 0..conj_radius {
        if frontier.is_empty() {
            break;
        }
        let conjugates: Vec<Vec<G::Elem>> = if frontier.len() >= PAR_THRESHOLD {
            frontier
                .par_iter()
                .map(|&i| {
                    let x = &elems[i as usize];
                    gens.iter()
                        .zip(&inv_gens)
                        .map(|(s, si)| group.multiply(&group.multiply(si, x), s))
                        .collect()
                })
                .collect()
        } else {
            frontier
                .iter()
                .map(|&i| {
                    let x = &elems[i as usize];
                    gens.iter()
                        .zip(&inv_gens)
                        .map(|(s, si)| group.multiply(&group.multiply(si, x), s))
                        .collect()
                })
                .collect()
        };
        let mut next = Vec::new();
        for (&i, cs) in frontier.iter().zip(conjugates) {
            for c in cs {
                let j = match index.get(&c) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= cfg.element_cap {
                            return Err(EngineError::CapExceeded {
                                cap: cfg.element_cap,
                                last_completed: ball.radius,
                            });
                        }
                        let j = uf.push();
                        index.insert(c.clone(), j);
                        elems.push(c);
                        next.push(j);
                        j
                    }
                };
                uf.union(i, j);
            }
        }
        frontier = next;
    }
    // canonical labels: smallest seed index in each block
    let mut label: HashMap<u32, u32> = HashMap::new();
    let mut out = Vec::with_capacity(seed_count);
    for i in 0..seed_count as u32 {
        let root = uf.find(i);
        let l = *label.entry(root).or_insert(i);
        out.push(l);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    BallSize,
    ConjExact,
    ConjLowerBound,
    ConjUpperBound,
}

impl SeriesKind {
    pub fn label(&self) -> &'static str {
        match self {
            SeriesKind::BallSize => "ball",
            SeriesKind::ConjExact => "exact",
            SeriesKind::ConjLowerBound => "lower",
            SeriesKind::ConjUpperBound => "upper",
        }
    }
}

/// Exact nonnegative integer sequence indexed by radius 0..=N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    pub kind: SeriesKind,
    /// values[n] is the count at radius n; index 0 is the trivial ball.
    pub values: Vec<u64>,
    /// Set when enumeration hit the element cap after this radius.
    pub truncated_after: Option<u32>,
}

impl GrowthSeries {
    pub fn max_radius(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ball,
    Invariant,
    Oracle { conj_radius: u32 },
}

/// Growth series g(0..=N) for the chosen method; partial series carry an
/// explicit truncation marker when the element cap interferes.
pub fn growth_series<G: Group>(
    group: &G,
    max_radius: u32,
    method: Method,
    cfg: &EngineConfig,
) -> Result<GrowthSeries, EngineError> {
    let (ball, truncated) = bfs_ball(group, max_radius, cfg);
    let reached = ball.radius;
    match method {
        Method::Ball => Ok(GrowthSeries {
            kind: SeriesKind::BallSize,
            values: ball.cumulative_sizes(),
            truncated_after: truncated,
        }),
        Method::Invariant => {
            if !group.conjugacy_key_complete() {
                return Err(EngineError::Unsupported(
                    "group does not expose a complete conjugacy invariant".into(),
                ));
            }
            let mut keys = std::collections::HashSet::new();
            let mut values = Vec::with_capacity(reached as usize + 1);
            for level in ball.levels() {
                for e in level {
                    let k = group.conjugacy_key(e).ok_or_else(|| {
                        EngineError::Unsupported("missing conjugacy key".into())
                    })?;
                    keys.insert(k);
                }
                values.push(keys.len() as u64);
            }
            Ok(GrowthSeries {
                kind: SeriesKind::ConjExact,
                values,
                truncated_after: truncated,
            })
        }
        Method::Oracle { conj_radius } => {
            let mut values = Vec::with_capacity(reached as usize + 1);
            for n in 0..=reached {
                values.push(conjugacy_count_oracle(group, n, conj_radius, cfg)?);
            }
            Ok(GrowthSeries {
                kind: SeriesKind::ConjUpperBound,
                values,
                truncated_after: truncated,
            })
        }
    }
}

/// Exact word length of `target` by bidirectional sphere expansion; `None`
/// when the length exceeds `max_radius`.
pub fn word_length<G: Group>(
    group: &G,
    target: &G::Elem,
    max_radius: u32,
    cfg: &EngineConfig,
) -> Result<Option<u32>, EngineError> {
    let identity = group.identity();
    if *target == identity {
        return Ok(Some(0));
    }
    let gens: Vec<G::Elem> = group.generators().into_iter().map(|(_, e)| e).collect();
    let mut side_a: HashMap<G::Elem, u32> = HashMap::new();
    let mut side_b: HashMap<G::Elem, u32> = HashMap::new();
    side_a.insert(identity.clone(), 0);
    side_b.insert(target.clone(), 0);
    let mut frontier_a = vec![identity];
    let mut frontier_b = vec![target.clone()];
    let mut ra = 0u32;
    let mut rb = 0u32;
    let mut best: Option<u32> = None;
    loop {
        if let Some(b) = best {
            if ra + rb + 1 >= b {
                return Ok(Some(b));
            }
        }
        if ra + rb >= max_radius || (frontier_a.is_empty() && frontier_b.is_empty()) {
            return Ok(best.filter(|&b| b <= max_radius));
        }
        // expand the smaller live frontier
        let expand_a = !frontier_a.is_empty()
            && (frontier_b.is_empty() || frontier_a.len() <= frontier_b.len());
        let (dist, other, frontier, r) = if expand_a {
            ra += 1;
            (&mut side_a, &side_b, &mut frontier_a, ra)
        } else {
            rb += 1;
            (&mut side_b, &side_a, &mut frontier_b, rb)
        };
        let mut next = Vec::new();
        for e in frontier.iter() {
            for s in &gens {
                let t = group.multiply(e, s);
                if !dist.contains_key(&t) {
                    if dist.len() + other.len() >= cfg.element_cap {
                        return Err(EngineError::CapExceeded {
                            cap: cfg.element_cap,
                            last_completed: r - 1,
                        });
                    }
                    if let Some(&d) = other.get(&t) {
                        let total = r + d;
                        if best.map_or(true, |b| total < b) {
                            best = Some(total);
                        }
                    }
                    dist.insert(t.clone(), r);
                    next.push(t);
                }
            }
        }
        *frontier = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::free::FreeGroup;

    #[test]
    fn free_group_ball_sizes() {
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig::default();
        let b1 = enumerate_ball(&f2, 1, &cfg).unwrap();
        assert_eq!(b1.len(), 5);
        let b3 = enumerate_ball(&f2, 3, &cfg).unwrap();
        assert_eq!(b3.len(), 53); // 2 * 3^n - 1
        // naive cross-check: all products of <= 3 generators
        let gens: Vec<_> = f2.generators().into_iter().map(|(_, e)| e).collect();
        let mut naive = std::collections::HashSet::new();
        naive.insert(f2.identity());
        let mut frontier = vec![f2.identity()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for e in &frontier {
                for s in &gens {
                    let t = f2.multiply(e, s);
                    if naive.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(naive.len(), b3.len());
        for e in b3.iter() {
            assert!(naive.contains(e));
        }
    }

    #[test]
    fn ball_nesting_and_spheres() {
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig::default();
        let b4 = enumerate_ball(&f2, 4, &cfg).unwrap();
        let b3 = enumerate_ball(&f2, 3, &cfg).unwrap();
        for e in b3.iter() {
            assert!(b4.contains(e));
            assert_eq!(b3.distance(e), b4.distance(e));
        }
        let sizes = b4.sphere_sizes();
        assert_eq!(sizes.iter().sum::<u64>(), b4.len() as u64);
        assert_eq!(sizes[0], 1);
        assert_eq!(sizes[1], 4);
        assert_eq!(sizes[2], 12);
    }

    #[test]
    fn cap_reports_last_completed_radius() {
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig { element_cap: 20 };
        match enumerate_ball(&f2, 3, &cfg) {
            Err(EngineError::CapExceeded {
                cap,
                last_completed,
            }) => {
                assert_eq!(cap, 20);
                assert_eq!(last_completed, 2);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        let series = growth_series(&f2, 3, Method::Ball, &cfg).unwrap();
        assert_eq!(series.truncated_after, Some(2));
        assert_eq!(series.values, vec![1, 5, 17]);
    }

    #[test]
    fn oracle_free_group_radius_one() {
        // a and a^-1 are not conjugate in a free group: no merges at all
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig::default();
        let count = conjugacy_count_oracle(&f2, 1, 3, &cfg).unwrap();
        assert_eq!(count, 5);
        assert_eq!(conjugacy_count_oracle(&f2, 0, 5, &cfg).unwrap(), 1);
    }

    #[test]
    fn oracle_matches_exact_on_free_group() {
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig::default();
        // cyclic-reduction classes in B(2): 1 + 4 + 8 = 13
        assert_eq!(conjugacy_count_exact(&f2, 2, &cfg).unwrap(), 13);
        assert_eq!(conjugacy_count_oracle(&f2, 2, 2, &cfg).unwrap(), 13);
        // oracle is nonincreasing in R and bounded below by the exact count
        let mut prev = u64::MAX;
        for r in 0..=4 {
            let c = conjugacy_count_oracle(&f2, 3, r, &cfg).unwrap();
            assert!(c <= prev);
            assert!(c >= conjugacy_count_exact(&f2, 3, &cfg).unwrap());
            prev = c;
        }
    }

    #[test]
    fn growth_series_flags() {
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig::default();
        let s = growth_series(&f2, 3, Method::Ball, &cfg).unwrap();
        assert_eq!(s.kind, SeriesKind::BallSize);
        assert_eq!(s.values, vec![1, 5, 17, 53]);
        assert!(s.is_nondecreasing());
        let s = growth_series(&f2, 2, Method::Invariant, &cfg).unwrap();
        assert_eq!(s.kind, SeriesKind::ConjExact);
        assert_eq!(s.values, vec![1, 5, 13]);
        let s = growth_series(&f2, 2, Method::Oracle { conj_radius: 2 }, &cfg).unwrap();
        assert_eq!(s.kind, SeriesKind::ConjUpperBound);
        assert_eq!(s.values, vec![1, 5, 13]);
    }

    #[test]
    fn word_length_bidirectional() {
        let f2 = FreeGroup::new(2);
        let cfg = EngineConfig::default();
        let b6 = enumerate_ball(&f2, 6, &cfg).unwrap();
        for e in b6.iter() {
            let d = b6.distance(e).unwrap();
            assert_eq!(word_length(&f2, e, 6, &cfg).unwrap(), Some(d));
        }
        // beyond the max radius returns None
        let deep = f2.from_str_word("abababab").unwrap();
        assert_eq!(word_length(&f2, &deep, 3, &cfg).unwrap(), None);
    }
}
