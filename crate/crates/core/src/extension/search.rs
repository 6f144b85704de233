//! Depth-first expansion of potential extensions.
//!
//! Each node is a finite uniquely-Wilf class. Its children are the classes
//! obtained from its monotone-containing potential extensions, expanded in
//! decreasing size so the full extension comes first. A node's status is a
//! function of the multiset of its children's statuses, so sibling subtrees
//! may be explored in any order or in parallel.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{extend, potential_extensions_unchecked, SearchOptions};
use crate::class::{ClassFile, FiniteClass};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::wilf::WilfMetrics;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// Every branch reached a size with no monotone-containing extension.
    Dead,
    /// Along the explored levels the only surviving branch is the full
    /// extension every time.
    UniqueFull,
    Unresolved,
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeStatus {
    Dead,
    UniqueFull,
    Unresolved,
    /// Not expanded because the branch cap was reached.
    Frontier,
    BudgetExhausted,
    /// The node sits at the search horizon and was not expanded.
    Horizon,
}

impl NodeStatus {
    fn is_pending(self) -> bool {
        matches!(self, NodeStatus::Frontier | NodeStatus::BudgetExhausted)
    }
}

/// Status of a node from `(is_full_extension, child_status)` pairs.
fn combine(children: impl IntoIterator<Item = (bool, NodeStatus)>) -> NodeStatus {
    let alive: Vec<(bool, NodeStatus)> = children
        .into_iter()
        .filter(|&(_, s)| s != NodeStatus::Dead)
        .collect();
    if alive.is_empty() {
        return NodeStatus::Dead;
    }
    let off_chain_survivor = alive.iter().any(|&(full, s)| !full && !s.is_pending());
    let full_unresolved = alive
        .iter()
        .any(|&(full, s)| full && s == NodeStatus::Unresolved);
    if off_chain_survivor || full_unresolved {
        NodeStatus::Unresolved
    } else if alive.iter().any(|&(_, s)| s.is_pending()) {
        NodeStatus::BudgetExhausted
    } else {
        NodeStatus::UniqueFull
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRecord {
    pub members: Vec<Perm>,
    pub size: usize,
    pub orbit_size: usize,
    pub full: bool,
    pub child: SearchNode,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchNode {
    pub max_size: usize,
    pub level_counts: Vec<usize>,
    pub status: NodeStatus,
    /// Potential extensions found here, counting whole orbits.
    pub extensions_found: usize,
    /// The expanded representatives, full extension first.
    pub extensions: Vec<ExtensionRecord>,
}

impl SearchNode {
    /// Largest class horizon anywhere in this subtree.
    pub fn deepest_size(&self) -> usize {
        self.extensions
            .iter()
            .map(|e| e.child.deepest_size())
            .max()
            .unwrap_or(self.max_size)
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a SearchNode)) {
        f(self);
        for e in &self.extensions {
            e.child.walk(f);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelLog {
    /// Size of the extensions computed at this level.
    pub size: usize,
    pub nodes: usize,
    pub extensions_found: usize,
    pub expanded: usize,
}

/// An unexpanded node left behind when the branch cap is reached.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub class: ClassFile,
    /// Whether every extension on the path from the root was the full one.
    pub on_full_chain: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResolution {
    pub status: SearchStatus,
    pub max_size: usize,
    pub branch_cap: usize,
    pub nodes_expanded: usize,
    pub levels: Vec<LevelLog>,
    pub frontier: Vec<FrontierEntry>,
    pub roots: Vec<SearchNode>,
}

struct Driver<'o> {
    opts: &'o SearchOptions,
    expanded: AtomicUsize,
    frontier: Mutex<Vec<(Vec<usize>, FrontierEntry)>>,
}

impl Driver<'_> {
    fn node(&self, class: FiniteClass, path: Vec<usize>, on_full_chain: bool) -> Result<SearchNode> {
        let mut node = SearchNode {
            max_size: class.max_size(),
            level_counts: class.level_counts(),
            status: NodeStatus::Horizon,
            extensions_found: 0,
            extensions: Vec::new(),
        };
        if class.max_size() >= self.opts.max_size {
            return Ok(node);
        }
        if self.expanded.fetch_add(1, Ordering::SeqCst) >= self.opts.branch_cap {
            self.expanded.fetch_sub(1, Ordering::SeqCst);
            node.status = NodeStatus::Frontier;
            self.frontier.lock().unwrap().push((
                path,
                FrontierEntry {
                    class: class.to_file(),
                    on_full_chain,
                },
            ));
            return Ok(node);
        }
        let set = potential_extensions_unchecked(&class, self.opts)?;
        node.extensions_found = set.total;

        let expand = |(i, ext): (usize, &super::PotentialExtension)| -> Result<ExtensionRecord> {
            let full = ext.members.is_full();
            let mut child_path = path.clone();
            child_path.push(i);
            let child = self.node(
                extend(&class, &ext.members)?,
                child_path,
                on_full_chain && full,
            )?;
            Ok(ExtensionRecord {
                members: ext.members.members(),
                size: ext.members.count(),
                orbit_size: ext.orbit_size,
                full,
                child,
            })
        };
        node.extensions = if self.opts.threads > 1 {
            set.extensions.par_iter().enumerate().map(expand).collect::<Result<_>>()?
        } else {
            set.extensions.iter().enumerate().map(expand).collect::<Result<_>>()?
        };
        node.status = combine(node.extensions.iter().map(|e| (e.full, e.child.status)));
        Ok(node)
    }
}

fn level_logs(roots: &[SearchNode]) -> Vec<LevelLog> {
    let mut logs: Vec<LevelLog> = Vec::new();
    for root in roots {
        root.walk(&mut |n| {
            if matches!(n.status, NodeStatus::Horizon | NodeStatus::Frontier) {
                return;
            }
            let size = n.max_size + 1;
            let log = match logs.iter_mut().find(|l| l.size == size) {
                Some(l) => l,
                None => {
                    logs.push(LevelLog {
                        size,
                        ..Default::default()
                    });
                    logs.last_mut().unwrap()
                }
            };
            log.nodes += 1;
            log.extensions_found += n.extensions_found;
            log.expanded += n.extensions.len();
        });
    }
    logs.sort_by_key(|l| l.size);
    logs
}

fn run(starts: Vec<(FiniteClass, bool)>, opts: &SearchOptions) -> Result<SearchResolution> {
    let opts = SearchOptions {
        require_monotone: true,
        ..opts.clone()
    };
    let driver = Driver {
        opts: &opts,
        expanded: AtomicUsize::new(0),
        frontier: Mutex::new(Vec::new()),
    };
    let explore = || -> Result<Vec<SearchNode>> {
        starts
            .into_iter()
            .enumerate()
            .map(|(i, (class, on_chain))| driver.node(class, vec![i], on_chain))
            .collect()
    };
    let roots = if opts.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(explore)?
    } else {
        explore()?
    };

    let flags: Vec<bool> = roots.iter().map(|r| r.status != NodeStatus::Horizon).collect();
    let status = if flags.iter().all(|&f| !f) {
        NodeStatus::Unresolved
    } else {
        combine(roots.iter().map(|r| (true, r.status)))
    };
    let status = match status {
        NodeStatus::Dead => SearchStatus::Dead,
        NodeStatus::UniqueFull => SearchStatus::UniqueFull,
        NodeStatus::Unresolved | NodeStatus::Horizon => SearchStatus::Unresolved,
        NodeStatus::Frontier | NodeStatus::BudgetExhausted => SearchStatus::BudgetExhausted,
    };
    let mut frontier = driver.frontier.into_inner().unwrap();
    frontier.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SearchResolution {
        status,
        max_size: opts.max_size,
        branch_cap: opts.branch_cap,
        nodes_expanded: driver.expanded.load(Ordering::SeqCst),
        levels: level_logs(&roots),
        frontier: frontier.into_iter().map(|(_, e)| e).collect(),
        roots,
    })
}

/// Explores extensions of `class` up to `opts.max_size`.
///
/// Only monotone-containing extensions are followed, whatever
/// `opts.require_monotone` says. Results are deterministic; with more than
/// one thread only the contents of the frontier may vary, and only when the
/// branch cap is hit.
pub fn search(class: &FiniteClass, opts: &SearchOptions) -> Result<SearchResolution> {
    if class.max_size() == 0 || !WilfMetrics::new(class).is_uniquely_wilf(class.max_size())? {
        return Err(Error::Precondition(format!(
            "class is not uniquely-Wilf through size {}",
            class.max_size()
        )));
    }
    run(vec![(class.clone(), true)], opts)
}

/// Continues a search from a previously emitted frontier.
///
/// The status covers the resumed subtrees only: frontier entries off the
/// full chain count as non-full branches.
pub fn resume(frontier: &[FrontierEntry], opts: &SearchOptions) -> Result<SearchResolution> {
    if frontier.is_empty() {
        return Err(Error::Domain("empty frontier".into()));
    }
    let starts = frontier
        .iter()
        .map(|e| Ok((e.class.clone().into_class()?, e.on_full_chain)))
        .collect::<Result<Vec<_>>>()?;
    let mut res = run(starts, opts)?;
    let statuses: Vec<(bool, NodeStatus)> = frontier
        .iter()
        .zip(&res.roots)
        .map(|(e, r)| (e.on_full_chain, r.status))
        .collect();
    if statuses.iter().any(|&(_, s)| s != NodeStatus::Horizon) {
        res.status = match combine(statuses) {
            NodeStatus::Dead => SearchStatus::Dead,
            NodeStatus::UniqueFull | NodeStatus::Horizon => SearchStatus::UniqueFull,
            NodeStatus::Unresolved => SearchStatus::Unresolved,
            NodeStatus::Frontier | NodeStatus::BudgetExhausted => SearchStatus::BudgetExhausted,
        };
    }
    Ok(res)
}
