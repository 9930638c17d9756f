//! Solver results.

use std::collections::BTreeSet;
use std::fmt;

use crate::drawing::{is_plane, is_spanning_tree, Drawing, EdgeColoring, EdgeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    TreeFound,
    Counterexample,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::TreeFound => "tree-found",
            Status::Counterexample => "counterexample",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// Outcome of one named runtime assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl InvariantCheck {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        InvariantCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub status: Status,
    pub tree: EdgeSet,
    /// Color of the tree when it is monochromatic.
    pub color: Option<usize>,
    pub avoided_colors: BTreeSet<usize>,
    pub checked_invariants: Vec<InvariantCheck>,
    pub witness: Option<String>,
}

impl SolveReport {
    pub fn found(tree: EdgeSet, c: &EdgeColoring) -> Self {
        let used = c.colors_of(&tree);
        let color = (used.len() == 1).then(|| *used.iter().next().unwrap());
        SolveReport {
            status: Status::TreeFound,
            tree,
            color,
            avoided_colors: (0..c.k()).filter(|x| !used.contains(x)).collect(),
            checked_invariants: Vec::new(),
            witness: None,
        }
    }

    pub fn counterexample(witness: impl Into<String>) -> Self {
        SolveReport {
            status: Status::Counterexample,
            tree: EdgeSet::new(),
            color: None,
            avoided_colors: BTreeSet::new(),
            checked_invariants: Vec::new(),
            witness: Some(witness.into()),
        }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        SolveReport {
            status: Status::NotApplicable,
            witness: Some(reason.into()),
            ..Self::counterexample("")
        }
    }

    pub fn with_checks(mut self, checks: Vec<InvariantCheck>) -> Self {
        self.checked_invariants.extend(checks);
        self
    }

    pub fn is_found(&self) -> bool {
        self.status == Status::TreeFound
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checked_invariants.iter().filter(|c| !c.passed)
    }

    /// Re-checks the output contract of a found tree against the instance:
    /// spanning, plane, and disjoint from every avoided color.
    pub fn output_violations(&self, d: &Drawing, c: &EdgeColoring) -> Vec<String> {
        let mut out = Vec::new();
        if self.status != Status::TreeFound {
            return out;
        }
        if !is_spanning_tree(d.n(), &self.tree) {
            out.push(format!("not a spanning tree: {}", self.tree));
        }
        if !is_plane(d, &self.tree) {
            out.push(format!("not plane: {}", self.tree));
        }
        let used = c.colors_of(&self.tree);
        if let Some(x) = self.avoided_colors.iter().find(|x| used.contains(x)) {
            out.push(format!("uses avoided color {x}"));
        }
        if let Some(color) = self.color {
            if used.iter().any(|&u| u != color) {
                out.push(format!("claims color {color} but uses {used:?}"));
            }
        }
        out
    }

    /// Line-oriented `key=value` rendering, followed by `edge u v` lines.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "status={}", self.status);
        if let Some(c) = self.color {
            let _ = writeln!(s, "color={c}");
        }
        let avoided: Vec<String> = self.avoided_colors.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "avoided={}", avoided.join(","));
        for check in &self.checked_invariants {
            let verdict = if check.passed { "ok" } else { "FAILED" };
            if check.detail.is_empty() {
                let _ = writeln!(s, "check.{}={}", check.name, verdict);
            } else {
                let _ = writeln!(s, "check.{}={} {}", check.name, verdict, check.detail);
            }
        }
        if let Some(w) = &self.witness {
            if !w.is_empty() {
                let _ = writeln!(s, "witness={}", w.replace('\n', " | "));
            }
        }
        let _ = writeln!(s, "tree_edges={}", self.tree.len());
        for e in &self.tree {
            let _ = writeln!(s, "edge {} {}", e.u(), e.v());
        }
        s
    }
}
