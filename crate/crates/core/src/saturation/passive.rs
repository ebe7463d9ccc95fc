use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::clause::ClauseId;

/// Passive clauses, picked alternately by weight and by age.
#[derive(Debug)]
pub struct Passive {
    by_weight: BinaryHeap<Reverse<(usize, ClauseId)>>,
    by_age: BinaryHeap<Reverse<ClauseId>>,
    taken: BTreeSet<ClauseId>,
    live: usize,
    /// Weight picks per age pick.
    ratio: usize,
    count: usize,
}

impl Passive {
    pub fn new(ratio: usize) -> Passive {
        Passive {
            by_weight: BinaryHeap::new(),
            by_age: BinaryHeap::new(),
            taken: BTreeSet::new(),
            live: 0,
            ratio,
            count: 0,
        }
    }

    pub fn push(&mut self, id: ClauseId, weight: usize) {
        self.by_weight.push(Reverse((weight, id)));
        self.by_age.push(Reverse(id));
        self.live += 1;
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn pop(&mut self) -> Option<ClauseId> {
        if self.live == 0 {
            return None;
        }
        self.count += 1;
        let by_age = self.count.is_multiple_of(self.ratio + 1);
        let id = loop {
            let id = if by_age {
                self.by_age.pop().map(|Reverse(id)| id)
            } else {
                self.by_weight.pop().map(|Reverse((_, id))| id)
            }
            .expect("live entries remain");
            if self.taken.insert(id) {
                break id;
            }
        };
        self.live -= 1;
        Some(id)
    }
}

/// Infinite ArgCong sequences, visited round-robin: each visit yields the
/// next index of the stream at the front and moves it to the back.
#[derive(Debug, Default)]
pub struct ScheduledSet {
    queue: VecDeque<(ClauseId, usize, usize)>,
}

impl ScheduledSet {
    /// Schedules the sequence for literal `lit` of clause `id`, from index 1.
    pub fn add(&mut self, id: ClauseId, lit: usize) {
        self.queue.push_back((id, lit, 1));
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    /// `(clause, literal, index)` of the next instance.
    pub fn pop(&mut self) -> Option<(ClauseId, usize, usize)> {
        let (id, lit, k) = self.queue.pop_front()?;
        self.queue.push_back((id, lit, k + 1));
        Some((id, lit, k))
    }

    pub fn remove_clause(&mut self, id: ClauseId) {
        self.queue.retain(|s| s.0 != id);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pick {
    Clause,
    Scheduled,
}

/// Interleaves one scheduled inference per `k` clause picks; falls back to
/// whichever source is nonempty.
#[derive(Debug)]
pub struct Scheduler {
    k: usize,
    since: usize,
}

impl Scheduler {
    pub fn new(k: usize) -> Scheduler {
        Scheduler { k: k.max(1), since: 0 }
    }

    pub fn next(&mut self, have_clause: bool, have_scheduled: bool) -> Option<Pick> {
        match (have_clause, have_scheduled) {
            (false, false) => None,
            (true, false) => Some(Pick::Clause),
            (false, true) => Some(Pick::Scheduled),
            (true, true) => {
                if self.since >= self.k {
                    self.since = 0;
                    Some(Pick::Scheduled)
                } else {
                    self.since += 1;
                    Some(Pick::Clause)
                }
            }
        }
    }
}
