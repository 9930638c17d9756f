//! Zig-zag sweep over the side edges of a cylindrical drawing whose two
//! cycles are monochromatic in different colors.
//!
//! The active subdrawing `H` grows one side edge at a time by walking the
//! rotation of the current rotation vertex. Whenever the walked edge has the
//! color opposite to the rotation vertex's cycle, the sweep hops to its other
//! endpoint and reverses direction. A round ends when the walk leaves the
//! block of side edges; the next round restarts from the last rotation vertex
//! in the reverse direction with `H` cleared.

use std::collections::BTreeSet;
use std::fmt;

use crate::drawing::{bfs_spanning_tree, CrossingTable, Drawing, Edge, EdgeSet};
use crate::report::{InvariantCheck, SolveReport, Status};

use super::layout::{rotation_order_check, Circle, CylindricalLayout};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Decreasing angle.
    Clockwise,
    Counterclockwise,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Clockwise => Direction::Counterclockwise,
            Direction::Counterclockwise => Direction::Clockwise,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Clockwise => "cw",
            Direction::Counterclockwise => "ccw",
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOptions {
    /// Check J1, J2 and the caterpillar shape after every added edge, and
    /// the rotation order at every vertex before starting.
    pub assert_invariants: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepState {
    pub h: EdgeSet,
    pub h_prev: EdgeSet,
    pub v_cur: usize,
    pub direction: Direction,
    pub e_cur: Edge,
    /// 1-based index of the current round.
    pub round: usize,
    /// Rotation vertices of the current round, in visiting order.
    pub backbone: Vec<usize>,
    pub trace: Vec<String>,
}

/// Monochromatic state of one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleColor {
    /// Fewer than two vertices: no cycle edge.
    Colorless,
    Mono(usize),
    Mixed,
}

pub fn cycle_color(l: &CylindricalLayout, circle: Circle) -> CycleColor {
    let colors: BTreeSet<usize> = l
        .cycle_edges(circle)
        .into_iter()
        .map(|e| l.coloring().color(e))
        .collect();
    match colors.len() {
        0 => CycleColor::Colorless,
        1 => CycleColor::Mono(*colors.iter().next().unwrap()),
        _ => CycleColor::Mixed,
    }
}

/// Colors of the inner and outer cycle when both circles are nonempty and
/// the cycles are monochromatic in different colors. A colorless
/// cycle takes the color opposite the other one; when both are colorless
/// the inner cycle is 0 and the outer 1.
pub fn step1_cycle_colors(l: &CylindricalLayout) -> Result<[usize; 2], String> {
    if l.n_inner() == 0 || l.n_outer() == 0 {
        return Err("one circle has no vertices".into());
    }
    match (cycle_color(l, Circle::Inner), cycle_color(l, Circle::Outer)) {
        (CycleColor::Mono(a), CycleColor::Mono(b)) if a != b => Ok([a, b]),
        (CycleColor::Mono(a), CycleColor::Colorless) => Ok([a, 1 - a]),
        (CycleColor::Colorless, CycleColor::Mono(b)) => Ok([1 - b, b]),
        (CycleColor::Colorless, CycleColor::Colorless) => Ok([0, 1]),
        (a, b) => Err(format!("cycles are not monochromatic in distinct colors: inner {a:?}, outer {b:?}")),
    }
}

/// A failed runtime assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFailure {
    pub invariant: &'static str,
    pub detail: String,
}

#[derive(Debug, Default)]
struct CheckLog {
    entries: Vec<(&'static str, usize)>,
}

impl CheckLog {
    fn pass(&mut self, name: &'static str) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some((_, count)) => *count += 1,
            None => self.entries.push((name, 1)),
        }
    }

    fn into_checks(self, failure: Option<&InvariantFailure>) -> Vec<InvariantCheck> {
        let mut out: Vec<InvariantCheck> = self
            .entries
            .into_iter()
            .map(|(name, count)| InvariantCheck::new(name, true, format!("{count} checks")))
            .collect();
        if let Some(f) = failure {
            out.push(InvariantCheck::new(f.invariant, false, f.detail.clone()));
        }
        out
    }
}

/// Solver context for one compiled layout.
pub struct Sweep<'a> {
    l: &'a CylindricalLayout,
    rotations: &'a [Vec<usize>],
    /// `slot[v][w]`: index of `w` in the rotation of `v`.
    slot: Vec<Vec<usize>>,
    cycle_colors: [usize; 2],
    cycles: EdgeSet,
    table: CrossingTable,
    opts: SweepOptions,
    log: CheckLog,
}

impl<'a> Sweep<'a> {
    /// Fails with a not-applicable report when a circle is empty or the cycles
    /// are not monochromatic in distinct colors.
    pub fn new(
        d: &'a Drawing,
        l: &'a CylindricalLayout,
        opts: SweepOptions,
    ) -> Result<Self, SolveReport> {
        let cycle_colors = step1_cycle_colors(l).map_err(SolveReport::not_applicable)?;
        let rotations = d
            .rotations()
            .ok_or_else(|| SolveReport::not_applicable("drawing has no rotation system"))?;
        let n = l.n();
        let mut slot = vec![vec![usize::MAX; n]; n];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                slot[v][w] = i;
            }
        }
        let cycles = l
            .cycle_edges(Circle::Inner)
            .into_iter()
            .chain(l.cycle_edges(Circle::Outer))
            .collect();
        let mut sweep = Sweep {
            l,
            rotations,
            slot,
            cycle_colors,
            cycles,
            table: CrossingTable::new(d),
            opts,
            log: CheckLog::default(),
        };
        if opts.assert_invariants {
            for v in 0..n {
                if let Err(detail) = rotation_order_check(d, v) {
                    let failure = InvariantFailure { invariant: "rotation-order", detail };
                    return Err(sweep.fail_report(&failure, None));
                }
                sweep.log.pass("rotation-order");
            }
        }
        Ok(sweep)
    }

    pub fn cycle_color_of(&self, v: usize) -> usize {
        match self.l.circle(v) {
            Circle::Inner => self.cycle_colors[0],
            Circle::Outer => self.cycle_colors[1],
        }
    }

    fn color(&self, e: Edge) -> usize {
        self.l.coloring().color(e)
    }

    fn is_side(&self, e: Edge) -> bool {
        self.l.is_side_edge(e)
    }

    /// The edge after `e` in the rotation of `v`, walking in `dir`.
    pub fn next_edge(&self, v: usize, e: Edge, dir: Direction) -> Edge {
        let rot = &self.rotations[v];
        let i = self.slot[v][e.other(v)];
        let len = rot.len();
        let j = match dir {
            Direction::Counterclockwise => (i + 1) % len,
            Direction::Clockwise => (i + len - 1) % len,
        };
        Edge::new(v, rot[j])
    }

    /// The side edge of `v` that the walk in `dir` enters first after the
    /// block of same-circle edges.
    pub fn first_side_edge(&self, v: usize, dir: Direction) -> Edge {
        let rot = &self.rotations[v];
        let len = rot.len();
        let side = |i: usize| self.is_side(Edge::new(v, rot[i]));
        let entry = (0..len).find(|&i| {
            let before = match dir {
                Direction::Counterclockwise => (i + len - 1) % len,
                Direction::Clockwise => (i + 1) % len,
            };
            side(i) && !side(before)
        });
        let i = entry.unwrap_or(match dir {
            Direction::Counterclockwise => 0,
            Direction::Clockwise => len - 1,
        });
        Edge::new(v, rot[i])
    }

    fn covers_opposite(&self, h: &EdgeSet, v_cur: usize) -> bool {
        let opposite = self.l.circle(v_cur).opposite();
        let covered = h.vertices();
        self.l
            .circle_vertices(opposite)
            .all(|w| covered.contains(&w))
    }

    /// Phase 0: empty `H`, lowest-index inner vertex, clockwise.
    pub fn phase0(&self) -> SweepState {
        let v = 0;
        let dir = Direction::Clockwise;
        let e = self.first_side_edge(v, dir);
        SweepState {
            h: EdgeSet::new(),
            h_prev: EdgeSet::new(),
            v_cur: v,
            direction: dir,
            e_cur: e,
            round: 1,
            backbone: vec![v],
            trace: vec![format!("round 1: start at {v} {dir}, first edge {e}")],
        }
    }

    /// Phase 1: walk and add side edges until the walk leaves the side
    /// block or `H` covers the cycle opposite the rotation vertex.
    pub fn phase1(&mut self, s: &mut SweepState) -> Result<(), InvariantFailure> {
        let bound = self.l.n_inner() * self.l.n_outer() + 1;
        let mut steps = 0;
        while self.is_side(s.e_cur) && !self.covers_opposite(&s.h, s.v_cur) {
            steps += 1;
            if steps > bound {
                return Err(InvariantFailure {
                    invariant: "phase1-progress",
                    detail: format!("round {} exceeded {bound} steps", s.round),
                });
            }
            let e = s.e_cur;
            if !s.h.insert(e) {
                return Err(InvariantFailure {
                    invariant: "caterpillar",
                    detail: format!("edge {e} added twice in round {}", s.round),
                });
            }
            let c = self.color(e);
            let switched = c != self.cycle_color_of(s.v_cur);
            if switched {
                s.v_cur = e.other(s.v_cur);
                s.direction = s.direction.reversed();
                s.backbone.push(s.v_cur);
            }
            s.e_cur = self.next_edge(s.v_cur, e, s.direction);
            s.trace.push(format!(
                "add {e} color {c}{}; next {} at {} {}",
                if switched { ", switch" } else { "" },
                s.e_cur,
                s.v_cur,
                s.direction
            ));
            if self.opts.assert_invariants {
                self.check_step(s)?;
            }
        }
        Ok(())
    }

    fn check_step(&mut self, s: &SweepState) -> Result<(), InvariantFailure> {
        let mut union = s.h.clone();
        union.extend(self.cycles.iter().copied());
        if !self.table.is_plane(&union) {
            return Err(InvariantFailure {
                invariant: "J1",
                detail: format!("H plus cycles is not plane; H = {}", s.h),
            });
        }
        self.log.pass("J1");

        for x in s.h.vertices() {
            if x == s.v_cur {
                continue;
            }
            let own = self.cycle_color_of(x);
            if !s.h.iter().any(|e| e.contains(x) && self.color(*e) != own) {
                return Err(InvariantFailure {
                    invariant: "J2",
                    detail: format!("vertex {x} has no opposite-colored edge in H = {}", s.h),
                });
            }
        }
        self.log.pass("J2");

        let verts = s.h.vertices();
        let is_tree = s.h.len() + 1 == verts.len() && {
            let index: Vec<usize> = verts.iter().copied().collect();
            let local = s.h.relabel(&{
                let mut map = vec![0; self.l.n()];
                for (i, &v) in index.iter().enumerate() {
                    map[v] = i;
                }
                map
            });
            crate::drawing::is_spanning_tree(index.len(), &local)
        };
        let on_backbone = s
            .h
            .iter()
            .all(|e| s.backbone.contains(&e.u()) || s.backbone.contains(&e.v()));
        if !is_tree || !on_backbone {
            return Err(InvariantFailure {
                invariant: "caterpillar",
                detail: format!("H = {} with backbone {:?}", s.h, s.backbone),
            });
        }
        self.log.pass("caterpillar");
        Ok(())
    }

    /// Phase 3: restart from the last rotation vertex in reverse.
    pub fn phase3(&self, s: &mut SweepState) {
        s.h_prev = std::mem::take(&mut s.h);
        s.direction = s.direction.reversed();
        s.e_cur = self.first_side_edge(s.v_cur, s.direction);
        s.round += 1;
        s.backbone = vec![s.v_cur];
        s.trace.push(format!(
            "round {}: restart at {} {}, first edge {}",
            s.round, s.v_cur, s.direction, s.e_cur
        ));
    }

    fn check_j3(&mut self, s: &SweepState) -> Result<(), InvariantFailure> {
        if s.round < 2 {
            return Ok(());
        }
        let now = s.h.vertices();
        let before = s.h_prev.vertices();
        let grew = now.is_superset(&before) && now.len() > before.len();
        if grew || self.covers_opposite(&s.h, s.v_cur) {
            self.log.pass("J3");
            Ok(())
        } else {
            Err(InvariantFailure {
                invariant: "J3",
                detail: format!("round {}: V(H) = {now:?}, V(H_prev) = {before:?}", s.round),
            })
        }
    }

    fn fail_report(&mut self, f: &InvariantFailure, s: Option<&SweepState>) -> SolveReport {
        let mut witness = format!("{} violated: {}", f.invariant, f.detail);
        if let Some(s) = s {
            witness.push('\n');
            witness.push_str(&s.trace.join("\n"));
        }
        let log = std::mem::take(&mut self.log);
        SolveReport::counterexample(witness).with_checks(log.into_checks(Some(f)))
    }

    /// Phases 0 to 3, then extraction of the monochromatic plane spanning
    /// subdrawing and a breadth-first spanning tree of it.
    pub fn run(mut self) -> SolveReport {
        let mut s = self.phase0();
        let round_bound = self.l.n() + 2;
        loop {
            if let Err(f) = self.phase1(&mut s).and_then(|_| self.check_j3(&s)) {
                return self.fail_report(&f, Some(&s));
            }
            if self.covers_opposite(&s.h, s.v_cur) {
                break;
            }
            if s.round >= round_bound {
                let f = InvariantFailure {
                    invariant: "J3",
                    detail: format!("no termination after {round_bound} rounds"),
                };
                return self.fail_report(&f, Some(&s));
            }
            self.phase3(&mut s);
        }
        self.extract(&s)
    }

    fn extract(mut self, s: &SweepState) -> SolveReport {
        let home = self.l.circle(s.v_cur);
        let color = self.cycle_color_of(s.v_cur);
        let mut sub: EdgeSet = self.l.cycle_edges(home).into_iter().collect();
        sub.extend(s.h.iter().copied().filter(|&e| self.color(e) == color));
        let Some(tree) = bfs_spanning_tree(self.l.n(), &sub) else {
            let f = InvariantFailure {
                invariant: "spanning",
                detail: format!("color-{color} part of H plus cycle is disconnected: {sub}"),
            };
            return self.fail_report(&f, Some(s));
        };
        if !self.table.is_plane(&sub) {
            let f = InvariantFailure {
                invariant: "J1",
                detail: format!("extracted subdrawing is not plane: {sub}"),
            };
            return self.fail_report(&f, Some(s));
        }
        let mut report = SolveReport::found(tree, self.l.coloring());
        report.status = Status::TreeFound;
        report.witness = Some(format!(
            "rounds={} last_rotation_vertex={} H={}",
            s.round, s.v_cur, s.h
        ));
        let log = std::mem::take(&mut self.log);
        report.with_checks(log.into_checks(None))
    }
}

/// Phase 0 as a free function; not-applicable under the same conditions as
/// [`Sweep::new`].
pub fn sweep_phase0(d: &Drawing, l: &CylindricalLayout) -> Result<SweepState, SolveReport> {
    Ok(Sweep::new(d, l, SweepOptions::default())?.phase0())
}

/// One run of Phase 1 on `state` with invariants asserted.
pub fn sweep_phase1(
    state: &mut SweepState,
    d: &Drawing,
    l: &CylindricalLayout,
) -> Result<(), InvariantFailure> {
    let mut sweep = Sweep::new(d, l, SweepOptions { assert_invariants: true }).map_err(|r| {
        InvariantFailure {
            invariant: "precondition",
            detail: r.witness.unwrap_or_default(),
        }
    })?;
    sweep.phase1(state)
}

/// The full Step 1 sweep.
pub fn sweep_run(d: &Drawing, l: &CylindricalLayout, opts: SweepOptions) -> SolveReport {
    match Sweep::new(d, l, opts) {
        Ok(sweep) => sweep.run(),
        Err(report) => report,
    }
}
