//! Node storage, stable handles and intrusive doubly-linked sets.
//!
//! Every element lives in a slot of a [`NodeArena`] for its whole lifetime.
//! A [`Handle`] names the slot plus a generation counter, so a handle that
//! outlives its element is detected instead of silently aliasing whatever
//! reuses the slot. [`LinkedSet`]s thread through the arena via index links;
//! moving a node between sets or concatenating two sets never relocates the
//! node, which is what keeps handles stable across restructuring.

use crate::error::HeapError;
use crate::key::Key;
use crate::meter::CostMeter;

pub(crate) const NIL: u32 = u32::MAX;

/// Stable reference to one stored element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Handle {
    pub(crate) idx: u32,
    pub(crate) gen: u32,
}

impl Handle {
    pub(crate) fn new(idx: u32, gen: u32) -> Self {
        Handle { idx, gen }
    }

    /// Raw slot index; unique among live handles of one heap.
    pub fn slot(&self) -> u32 {
        self.idx
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Node<K> {
    pub key: Key<K>,
    pub prev: u32,
    pub next: u32,
    pub gen: u32,
    pub alive: bool,
}

/// Slab of nodes plus the cost meter charged by list operations.
#[derive(Debug, Clone)]
pub struct NodeArena<K> {
    nodes: Vec<Node<K>>,
    free: Vec<u32>,
    pub(crate) meter: CostMeter,
}

impl<K: Copy> Default for NodeArena<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Copy> NodeArena<K> {
    pub fn new() -> Self {
        NodeArena {
            nodes: Vec::new(),
            free: Vec::new(),
            meter: CostMeter::new(),
        }
    }

    pub(crate) fn alloc(&mut self, key: Key<K>) -> Handle {
        if let Some(idx) = self.free.pop() {
            let node = &mut self.nodes[idx as usize];
            node.key = key;
            node.prev = NIL;
            node.next = NIL;
            node.alive = true;
            Handle::new(idx, node.gen)
        } else {
            let idx = u32::try_from(self.nodes.len()).expect("arena exceeds u32 slots");
            assert!(idx != NIL, "arena exceeds u32 slots");
            self.nodes.push(Node {
                key,
                prev: NIL,
                next: NIL,
                gen: 0,
                alive: true,
            });
            Handle::new(idx, 0)
        }
    }

    /// Retires a detached node; its handle becomes dead.
    pub(crate) fn release(&mut self, idx: u32) {
        let node = &mut self.nodes[idx as usize];
        debug_assert!(node.alive);
        debug_assert!(node.prev == NIL && node.next == NIL);
        node.alive = false;
        node.gen = node.gen.wrapping_add(1);
        self.free.push(idx);
    }

    pub(crate) fn resolve(&self, h: Handle) -> Result<u32, HeapError> {
        match self.nodes.get(h.idx as usize) {
            Some(n) if n.alive && n.gen == h.gen => Ok(h.idx),
            _ => Err(HeapError::DeadHandle),
        }
    }

    #[inline]
    pub(crate) fn key(&self, idx: u32) -> Key<K> {
        self.nodes[idx as usize].key
    }

    #[inline]
    pub(crate) fn set_key(&mut self, idx: u32, key: Key<K>) {
        self.nodes[idx as usize].key = key;
    }

    #[inline]
    pub(crate) fn node(&self, idx: u32) -> &Node<K> {
        &self.nodes[idx as usize]
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn meter_mut(&mut self) -> &mut CostMeter {
        &mut self.meter
    }

    /// Total slots ever allocated (live or free).
    pub fn capacity(&self) -> usize {
        self.nodes.len()
    }
}

/// Unordered bucket of nodes stored as a doubly-linked list with an explicit
/// size counter. `head`/`tail` are `NIL` for the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedSet {
    head: u32,
    tail: u32,
    len: usize,
}

impl Default for LinkedSet {
    fn default() -> Self {
        Self::new()
    }
}

impl LinkedSet {
    pub const fn new() -> Self {
        LinkedSet {
            head: NIL,
            tail: NIL,
            len: 0,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn append<K: Copy>(&mut self, arena: &mut NodeArena<K>, idx: u32) {
        {
            let node = &mut arena.nodes[idx as usize];
            debug_assert!(node.prev == NIL && node.next == NIL, "node already linked");
            node.prev = self.tail;
            node.next = NIL;
        }
        if self.tail == NIL {
            self.head = idx;
        } else {
            arena.nodes[self.tail as usize].next = idx;
        }
        self.tail = idx;
        self.len += 1;
        arena.meter.moved(1);
        arena.meter.linked(3);
    }

    /// Unlinks `idx`, which must belong to this set.
    pub(crate) fn remove<K: Copy>(&mut self, arena: &mut NodeArena<K>, idx: u32) {
        debug_assert!(self.len > 0);
        let (prev, next) = {
            let n = &arena.nodes[idx as usize];
            (n.prev, n.next)
        };
        if prev == NIL {
            debug_assert_eq!(self.head, idx, "node not in this set");
            self.head = next;
        } else {
            arena.nodes[prev as usize].next = next;
        }
        if next == NIL {
            debug_assert_eq!(self.tail, idx, "node not in this set");
            self.tail = prev;
        } else {
            arena.nodes[next as usize].prev = prev;
        }
        let n = &mut arena.nodes[idx as usize];
        n.prev = NIL;
        n.next = NIL;
        self.len -= 1;
        arena.meter.moved(1);
        arena.meter.linked(2);
    }

    /// Appends all of `other` after the elements of `self` in O(1).
    pub(crate) fn concat<K: Copy>(&mut self, arena: &mut NodeArena<K>, other: LinkedSet) {
        if other.is_empty() {
            return;
        }
        if self.is_empty() {
            *self = other;
            return;
        }
        arena.nodes[self.tail as usize].next = other.head;
        arena.nodes[other.head as usize].prev = self.tail;
        self.tail = other.tail;
        self.len += other.len;
        arena.meter.linked(2);
    }

    /// Empties the set and returns its former contents.
    pub(crate) fn take(&mut self) -> LinkedSet {
        std::mem::take(self)
    }

    pub fn iter<'a, K: Copy>(&self, arena: &'a NodeArena<K>) -> SetIter<'a, K> {
        SetIter {
            arena,
            cur: self.head,
        }
    }

    /// Counts nodes by walking the links, stopping after `limit` steps.
    pub(crate) fn traversed_len<K: Copy>(&self, arena: &NodeArena<K>, limit: usize) -> usize {
        let mut n = 0;
        let mut cur = self.head;
        while cur != NIL && n <= limit {
            n += 1;
            cur = arena.nodes[cur as usize].next;
        }
        n
    }

    #[cfg(test)]
    pub(crate) fn corrupt_len(&mut self, len: usize) {
        self.len = len;
    }
}

/// Iterator over the node indices of one set.
pub struct SetIter<'a, K> {
    arena: &'a NodeArena<K>,
    cur: u32,
}

impl<K> Iterator for SetIter<'_, K> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.cur == NIL {
            return None;
        }
        let idx = self.cur;
        self.cur = self.arena.nodes[idx as usize].next;
        Some(idx)
    }
}

/// Allocates one node per key and links them into a new set, in order.
pub fn set_from_keys<K: Copy>(
    arena: &mut NodeArena<K>,
    keys: impl IntoIterator<Item = Key<K>>,
) -> (LinkedSet, Vec<Handle>) {
    let mut set = LinkedSet::new();
    let mut handles = Vec::new();
    for k in keys {
        let h = arena.alloc(k);
        set.append(arena, h.idx);
        handles.push(h);
    }
    (set, handles)
}
