//! Text and Graphviz renderings of games and tournaments.

use std::collections::HashMap;
use std::fmt::Write;

use super::board::{Branch, Checkerboard};
use super::tournament::{game_chains, EdgeKind, Tournament};
use crate::error::Result;

fn dot_label(board: &Checkerboard) -> String {
    board.render().replace('\n', "\\l")
}

fn edge_label(kind: &EdgeKind) -> String {
    match kind {
        EdgeKind::Move { case, branch } => match branch {
            Branch::Only => case.label(),
            Branch::Stay => format!("{} stay", case.label()),
            Branch::Swap => format!("{} swap", case.label()),
        },
        EdgeKind::Splice => "splice".to_string(),
    }
}

/// Graphviz digraph of a pruned tournament. Nodes are labelled by their
/// boards and edges by the move case.
pub fn tournament_to_dot(t: &Tournament) -> String {
    let mut out = String::from("digraph tournament {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (id, node) in t.nodes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  n{id} [label=\"level {} stage {}\\n{}\"];",
            node.level,
            node.board.stage(),
            dot_label(&node.board)
        );
    }
    for (id, node) in t.nodes.iter().enumerate() {
        for e in &node.children {
            let _ = writeln!(out, "  n{id} -> n{} [label=\"{}\"];", e.child, edge_label(&e.kind));
        }
    }
    out.push_str("}\n");
    out
}

/// Graphviz tree of a single game, drawn without merging identical boards.
pub fn game_to_dot(root: &Checkerboard) -> Result<String> {
    let mut out = String::from("digraph game {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let _ = writeln!(out, "  g0 [label=\"{}\"];", dot_label(root));
    ids.insert(Vec::new(), 0);
    for chain in game_chains(root)? {
        let mut path = Vec::new();
        let mut parent = 0;
        for (depth, child) in chain.iter().enumerate() {
            path.push(child.branch as usize + 3 * depth);
            let next = ids.len();
            let id = *ids.entry(path.clone()).or_insert(next);
            if id == next {
                let kind = EdgeKind::Move {
                    case: child.case,
                    branch: child.branch,
                };
                let _ = writeln!(out, "  g{id} [label=\"{}\"];", dot_label(&child.board));
                let _ = writeln!(out, "  g{parent} -> g{id} [label=\"{}\"];", edge_label(&kind));
            }
            parent = id;
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Plain-text summary of a tournament, one block per level.
pub fn tournament_to_text(t: &Tournament) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Gr({},{}) with {} conditions, {} levels",
        t.k,
        t.n,
        t.brackets.len(),
        t.levels()
    );
    for level in 0..t.levels() {
        let roots: Vec<String> = t
            .level_nodes(level)
            .filter(|&i| t.nodes[i].is_game_root())
            .map(|i| {
                let (a, b) = t.game_brackets(i);
                format!("{a}x{b}")
            })
            .collect();
        let size = t.level_nodes(level).count();
        let _ = writeln!(out, "level {level}: {size} nodes, games {}", roots.join(" "));
    }
    let _ = writeln!(out, "solutions: {}", t.count());
    out
}
