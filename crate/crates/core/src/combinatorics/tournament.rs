//! The checkerboard tournament: checkerboard games stacked level by level,
//! with identical nodes merged within a level, pruned to the single final
//! leaf, and chain counts in exact integers.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::board::{initial_checkerboard, Branch, Checkerboard, Child, MoveCase};
use super::bracket::{is_schubert_problem, Bracket};
use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// A move inside one checkerboard game.
    Move { case: MoveCase, branch: Branch },
    /// From a game leaf to the root of the game on the next level.
    Splice,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub child: NodeId,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug)]
pub struct TournamentNode {
    pub level: usize,
    pub board: Checkerboard,
    pub children: Vec<Edge>,
    /// Saturated chains from this node to the final leaf.
    pub chains: BigUint,
}

impl TournamentNode {
    pub fn is_game_root(&self) -> bool {
        self.board.stage() == 0
    }

    pub fn is_game_leaf(&self) -> bool {
        self.board.is_final()
    }
}

/// Pruned tournament of a Schubert problem.
///
/// Conditions of codimension zero are dropped first. With fewer than three
/// remaining conditions there is no game and only `base_count` is set.
#[derive(Clone, Debug)]
pub struct Tournament {
    pub k: usize,
    pub n: usize,
    /// The conditions that impose a constraint, in input order.
    pub brackets: Vec<Bracket>,
    pub nodes: Vec<TournamentNode>,
    pub root: Option<NodeId>,
    pub leaf: Option<NodeId>,
    base_count: BigUint,
}

impl Tournament {
    pub fn levels(&self) -> usize {
        self.brackets.len().saturating_sub(2)
    }

    pub fn count(&self) -> BigUint {
        match self.root {
            Some(r) => self.nodes[r].chains.clone(),
            None => self.base_count.clone(),
        }
    }

    /// Node ids of one level, in creation order.
    pub fn level_nodes(&self, level: usize) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(move |&i| self.nodes[i].level == level)
    }

    /// The bracket pair `(α, β)` whose game a level-`level` root plays.
    pub fn game_brackets(&self, root: NodeId) -> (Bracket, Bracket) {
        let node = &self.nodes[root];
        assert!(node.is_game_root());
        let k = self.k;
        let reds = node.board.reds();
        let alpha = (0..k).map(|i| reds[k - 1 - i].1).collect();
        let beta = (0..k).map(|i| reds[i].0).collect();
        (
            Bracket::new(alpha, self.n).unwrap(),
            Bracket::new(beta, self.n).unwrap(),
        )
    }

    /// Per-level node counts.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.levels()];
        for node in &self.nodes {
            sizes[node.level] += 1;
        }
        sizes
    }
}

/// Builds the pruned tournament of `brackets`.
pub fn build_tournament(brackets: &[Bracket]) -> Result<Tournament> {
    let first = brackets
        .first()
        .ok_or_else(|| Error::InvalidProblem("no conditions".into()))?;
    let (k, n) = (first.k(), first.n());
    if !is_schubert_problem(brackets, k, n)? {
        return Err(Error::InvalidProblem("codimensions do not sum to k(n-k)".into()));
    }
    let conds: Vec<Bracket> = brackets.iter().filter(|b| b.codim() > 0).cloned().collect();
    let mut t = Tournament {
        k,
        n,
        brackets: conds.clone(),
        nodes: Vec::new(),
        root: None,
        leaf: None,
        base_count: BigUint::zero(),
    };
    match conds.len() {
        0 => unreachable!("k(n-k) > 0"),
        1 => {
            t.base_count = BigUint::one();
            return Ok(t);
        }
        2 => {
            if conds[1] == conds[0].dual() {
                t.base_count = BigUint::one();
            }
            return Ok(t);
        }
        _ => {}
    }

    let levels = conds.len() - 2;
    let target = conds.last().unwrap().dual();
    let mut nodes: Vec<TournamentNode> = Vec::new();
    let Some(root_board) = initial_checkerboard(&conds[0], &conds[1]) else {
        return Ok(t);
    };
    nodes.push(TournamentNode {
        level: 0,
        board: root_board,
        children: Vec::new(),
        chains: BigUint::zero(),
    });
    let mut frontier: Vec<NodeId> = vec![0];
    let mut final_leaf = None;
    for level in 0..levels {
        let mut index: HashMap<(usize, Vec<(usize, usize)>), NodeId> = HashMap::new();
        for &id in &frontier {
            let b = &nodes[id].board;
            index.insert((b.stage(), b.reds().to_vec()), id);
        }
        let mut current = frontier;
        loop {
            let mut next = Vec::new();
            for &id in &current {
                if nodes[id].board.is_final() {
                    continue;
                }
                let kids: Vec<Child> = nodes[id].board.children()?;
                for child in kids {
                    let key = (child.board.stage(), child.board.reds().to_vec());
                    let cid = *index.entry(key).or_insert_with(|| {
                        nodes.push(TournamentNode {
                            level,
                            board: child.board.clone(),
                            children: Vec::new(),
                            chains: BigUint::zero(),
                        });
                        next.push(nodes.len() - 1);
                        nodes.len() - 1
                    });
                    nodes[id].children.push(Edge {
                        child: cid,
                        kind: EdgeKind::Move {
                            case: child.case,
                            branch: child.branch,
                        },
                    });
                }
            }
            if next.is_empty() {
                break;
            }
            current = next;
        }
        let leaves: Vec<NodeId> = (0..nodes.len())
            .filter(|&i| nodes[i].level == level && nodes[i].board.is_final())
            .collect();
        frontier = Vec::new();
        if level + 1 == levels {
            final_leaf = leaves
                .into_iter()
                .find(|&i| nodes[i].board.leaf_bracket().unwrap() == target);
            break;
        }
        let beta = &conds[level + 2];
        for leaf in leaves {
            let gamma = nodes[leaf].board.leaf_bracket()?;
            if let Some(board) = initial_checkerboard(&gamma, beta) {
                nodes.push(TournamentNode {
                    level: level + 1,
                    board,
                    children: Vec::new(),
                    chains: BigUint::zero(),
                });
                let rid = nodes.len() - 1;
                nodes[leaf].children.push(Edge {
                    child: rid,
                    kind: EdgeKind::Splice,
                });
                frontier.push(rid);
            }
        }
    }

    let Some(final_leaf) = final_leaf else {
        return Ok(t);
    };
    // Children always carry larger ids than their parents.
    nodes[final_leaf].chains = BigUint::one();
    for id in (0..nodes.len()).rev() {
        if id == final_leaf {
            continue;
        }
        let total = nodes[id]
            .children
            .iter()
            .fold(BigUint::zero(), |acc, e| acc + &nodes[e.child].chains);
        nodes[id].chains = total;
    }
    if nodes[0].chains.is_zero() {
        return Ok(t);
    }

    let mut remap = vec![usize::MAX; nodes.len()];
    let mut kept = Vec::new();
    for (id, node) in nodes.iter().enumerate() {
        if !node.chains.is_zero() {
            remap[id] = kept.len();
            kept.push(id);
        }
    }
    t.nodes = kept
        .iter()
        .map(|&id| {
            let mut node = nodes[id].clone();
            node.children = node
                .children
                .into_iter()
                .filter(|e| remap[e.child] != usize::MAX)
                .map(|e| Edge {
                    child: remap[e.child],
                    kind: e.kind,
                })
                .collect();
            node
        })
        .collect();
    t.root = Some(0);
    t.leaf = Some(remap[final_leaf]);
    Ok(t)
}

pub fn count_chains(t: &Tournament) -> BigUint {
    t.count()
}

/// Every root-to-leaf sequence of moves of one game, without merging.
pub fn game_chains(root: &Checkerboard) -> Result<Vec<Vec<Child>>> {
    if root.is_final() {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for child in root.children()? {
        for mut tail in game_chains(&child.board)? {
            tail.insert(0, child.clone());
            out.push(tail);
        }
    }
    Ok(out)
}

/// Counts solutions of a Schubert problem combinatorially.
pub fn count_solutions(brackets: &[Bracket]) -> Result<BigUint> {
    Ok(build_tournament(brackets)?.count())
}
