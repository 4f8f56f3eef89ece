//! Online traversal of a world and the checks run on the resulting trace.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::hilbert::{node_count, GridCell, NodeIndex};
use crate::nonuniform::plan_nonuniform;
use crate::trace::Trace;
use crate::world::{Occupancy, OccupancyOracle, World};

/// Runs the agent through `world`. The agent sees the world only through a
/// [`SensorView`](crate::sensor::SensorView) that moves with it. Worlds with
/// a resolution map are covered leaf by leaf.
pub fn simulate(world: &World) -> Result<Trace> {
    plan_nonuniform(&world.leaves()?, world)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub all_free_visited: bool,
    pub missed: Vec<NodeIndex>,
    /// Steps that end in, or pass through the interior of, a blocked cell.
    pub incursions: Vec<NodeIndex>,
    pub revisits: usize,
    /// Consecutive steps that are neither one king move apart nor a tree edge.
    pub adjacency_violations: Vec<(NodeIndex, NodeIndex)>,
    pub starts_at_first_leaf: bool,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.all_free_visited
            && self.incursions.is_empty()
            && self.adjacency_violations.is_empty()
            && self.starts_at_first_leaf
    }

    fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.missed.is_empty() {
            let cells: Vec<String> = self.missed.iter().map(|n| n.to_string()).collect();
            parts.push(format!("missed {}", cells.join(" ")));
        }
        if !self.incursions.is_empty() {
            let cells: Vec<String> = self.incursions.iter().map(|n| n.to_string()).collect();
            parts.push(format!("entered blocked cells at {}", cells.join(" ")));
        }
        for (a, b) in &self.adjacency_violations {
            parts.push(format!("jump {a} -> {b}"));
        }
        if !self.starts_at_first_leaf {
            parts.push("wrong start".into());
        }
        parts.join("; ")
    }
}

/// Checks a finished trace against the ground truth of `world`.
pub fn verify_coverage(trace: &Trace, world: &World) -> Result<CoverageReport> {
    let free = world.free_leaves()?;
    let visited: HashSet<NodeIndex> = trace.nodes().collect();
    let missed: Vec<NodeIndex> = free
        .iter()
        .copied()
        .filter(|n| !visited.contains(n))
        .collect();

    let mut incursions = Vec::new();
    let mut adjacency_violations = Vec::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let prev = i.checked_sub(1).map(|p| trace.steps[p].node);
        let crosses = prev.is_some_and(|p| crosses_obstacle(world, p.cell(), step.cell));
        if world.occupancy(step.node) == Occupancy::Blocked || crosses {
            incursions.push(step.node);
        }
        if let Some(p) = prev {
            let tree_edge = p.parent() == Some(step.node) || step.node.parent() == Some(p);
            let legal =
                p.cell().king_adjacent(step.cell) || (tree_edge && world.allows_tree_moves());
            if !legal {
                adjacency_violations.push((p, step.node));
            }
        }
    }

    let mut seen = HashSet::new();
    let revisits = trace.steps.iter().filter(|s| !seen.insert(s.cell)).count();

    Ok(CoverageReport {
        all_free_visited: missed.is_empty(),
        missed,
        incursions,
        revisits,
        adjacency_violations,
        starts_at_first_leaf: trace.steps.first().map(|s| s.node) == free.first().copied(),
    })
}

/// Whether the straight move between two cell centers passes through the
/// open interior of an obstacle. Exact, on the world's finest grid.
fn crosses_obstacle(world: &World, a: GridCell, b: GridCell) -> bool {
    let scale = world.order() + 1;
    let center = |c: GridCell| {
        let s = scale - c.order;
        (
            ((2 * c.i + 1) << (s - 1)) as i128,
            ((2 * c.j + 1) << (s - 1)) as i128,
        )
    };
    let (p0, p1) = (center(a), center(b));
    world.obstacles().iter().any(|o| {
        let c = o.cell();
        let s = scale - c.order;
        let x = ((c.i << s) as i128, ((c.i + 1) << s) as i128);
        let y = ((c.j << s) as i128, ((c.j + 1) << s) as i128);
        segment_meets_open_box(p0, p1, x, y)
    })
}

/// A fraction `num / den` with `den > 0`.
#[derive(Clone, Copy)]
struct Frac(i128, i128);

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        if den < 0 {
            Frac(-num, -den)
        } else {
            Frac(num, den)
        }
    }

    fn lt(self, o: Frac) -> bool {
        self.0 * o.1 < o.0 * self.1
    }
}

/// Parameter interval (open) on which `p0 + u (p1 - p0)` lies strictly
/// between `lo` and `hi` along one axis; `None` when it never does.
fn open_slab(p0: i128, p1: i128, (lo, hi): (i128, i128)) -> Option<(Frac, Frac)> {
    let d = p1 - p0;
    if d == 0 {
        return (lo < p0 && p0 < hi).then_some((Frac(-1, 1), Frac(2, 1)));
    }
    let (u0, u1) = (Frac::new(lo - p0, d), Frac::new(hi - p0, d));
    Some(if u0.lt(u1) { (u0, u1) } else { (u1, u0) })
}

fn segment_meets_open_box(
    p0: (i128, i128),
    p1: (i128, i128),
    x: (i128, i128),
    y: (i128, i128),
) -> bool {
    let (Some((ax, bx)), Some((ay, by))) = (open_slab(p0.0, p1.0, x), open_slab(p0.1, p1.1, y))
    else {
        return false;
    };
    let lo = if ax.lt(ay) { ay } else { ax };
    let hi = if bx.lt(by) { bx } else { by };
    lo.lt(hi) && lo.lt(Frac(1, 1)) && Frac(0, 1).lt(hi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub obstacles: Vec<NodeIndex>,
    pub reason: String,
}

/// Outcome of running and checking a family of worlds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub order: u32,
    pub mode: String,
    pub worlds: usize,
    pub passes: usize,
    pub failures: usize,
    /// Obstacle sets rejected by the filter, not run.
    pub excluded: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

/// Simulates and checks one obstacle set; `Err` carries the failure reason.
pub fn check_world(order: u32, obstacles: &[NodeIndex]) -> std::result::Result<(), String> {
    let world = World::new(order, obstacles.iter().copied()).map_err(|e| e.to_string())?;
    let trace = simulate(&world).map_err(|e| e.to_string())?;
    let report = verify_coverage(&trace, &world).map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(())
    } else {
        Err(report.summary())
    }
}

fn run_campaign(
    order: u32,
    mode: &str,
    sets: Vec<Vec<NodeIndex>>,
    excluded: usize,
) -> CampaignReport {
    let outcomes: Vec<_> = sets
        .into_par_iter()
        .map(|obstacles| {
            let outcome = check_world(order, &obstacles);
            (obstacles, outcome)
        })
        .collect();
    let worlds = outcomes.len();
    let counterexamples: Vec<Counterexample> = outcomes
        .into_iter()
        .filter_map(|(obstacles, outcome)| {
            outcome
                .err()
                .map(|reason| Counterexample { obstacles, reason })
        })
        .collect();
    CampaignReport {
        order,
        mode: mode.into(),
        worlds,
        passes: worlds - counterexamples.len(),
        failures: counterexamples.len(),
        excluded,
        counterexamples,
    }
}

fn interior_nodes(order: u32) -> Vec<NodeIndex> {
    (1..node_count(order) - 1)
        .map(|r| NodeIndex::new(order, r).expect("rank in range"))
        .collect()
}

/// Every world with one blocked cell that is neither the first nor the last node.
pub fn verify_single(order: u32) -> CampaignReport {
    let sets = interior_nodes(order).into_iter().map(|n| vec![n]).collect();
    run_campaign(order, "single", sets, 0)
}

/// The multi-obstacle condition: no two obstacles share an edge.
pub fn no_shared_edge(a: NodeIndex, b: NodeIndex) -> bool {
    !a.cell().shares_edge(b.cell())
}

/// Every set of `arity` interior cells whose members pairwise satisfy `filter`.
pub fn verify_multi_obstacle(
    order: u32,
    arity: usize,
    filter: impl Fn(NodeIndex, NodeIndex) -> bool,
) -> CampaignReport {
    let nodes = interior_nodes(order);
    let mut sets = Vec::new();
    let mut excluded = 0;
    let mut combo = Vec::with_capacity(arity);
    combinations(&nodes, arity, 0, &mut combo, &mut |set| {
        let ok = set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| filter(a, b)));
        if ok {
            sets.push(set.to_vec());
        } else {
            excluded += 1;
        }
    });
    let mode = match arity {
        2 => "pairs".to_string(),
        3 => "triples".to_string(),
        k => format!("{k}-sets"),
    };
    run_campaign(order, &mode, sets, excluded)
}

fn combinations(
    items: &[NodeIndex],
    k: usize,
    start: usize,
    combo: &mut Vec<NodeIndex>,
    emit: &mut dyn FnMut(&[NodeIndex]),
) {
    if combo.len() == k {
        emit(combo);
        return;
    }
    for i in start..items.len() {
        combo.push(items[i]);
        combinations(items, k, i + 1, combo, emit);
        combo.pop();
    }
}
