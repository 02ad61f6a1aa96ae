//! Reachability on the one-step letter graph `a → b iff b ∈ Lett(σ(a))`.

use std::collections::VecDeque;

use crate::word::{Letter, LetterSet};

/// Transitive closure with paths of length at least one: `closure[a]` holds
/// every `b` with `b ∈ Lett(σⁿ(a))` for some `n ≥ 1`.
pub fn transitive_closure(succ: &[LetterSet]) -> Vec<LetterSet> {
    let mut reach = succ.to_vec();
    loop {
        let mut changed = false;
        for a in 0..reach.len() {
            let mut acc = reach[a];
            for b in reach[a].iter() {
                acc = acc.union(reach[b.index()]);
            }
            if acc != reach[a] {
                reach[a] = acc;
                changed = true;
            }
        }
        if !changed {
            return reach;
        }
    }
}

/// Breadth-first order of the letters reachable from `start` in zero or more steps.
pub fn bfs_order(succ: &[LetterSet], start: Letter) -> Vec<Letter> {
    let mut seen = LetterSet::singleton(start);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for b in succ[a.index()].iter() {
            if !seen.contains(b) {
                seen.insert(b);
                order.push(b);
                queue.push_back(b);
            }
        }
    }
    order
}

/// Length of the shortest cycle through `a`, if any.
pub fn shortest_cycle(succ: &[LetterSet], a: Letter) -> Option<usize> {
    let mut frontier = succ[a.index()];
    let mut seen = frontier;
    let mut len = 1;
    while !frontier.is_empty() {
        if frontier.contains(a) {
            return Some(len);
        }
        let next = frontier
            .iter()
            .fold(LetterSet::EMPTY, |acc, b| acc.union(succ[b.index()]));
        frontier = next.difference(seen);
        seen = seen.union(next);
        len += 1;
    }
    None
}
