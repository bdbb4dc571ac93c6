//! Breadth-first closure of a generating set.
//!
//! Products are computed in parallel one frontier chunk at a time and then
//! committed sequentially in (element, generator) order, so the resulting
//! indexing is identical for any number of worker threads.

use hashbrown::{DefaultHashBuilder, HashTable};
use rayon::prelude::*;
use std::hash::BuildHasher;

use super::packed::{left_mul, right_mul, Layout, Scratch, Sparse};
use super::GroupError;

const CHUNK: usize = 1 << 13;

/// Packed element storage with hash lookup.
pub(crate) struct Arena {
    pub layout: Layout,
    data: Vec<i32>,
    hashes: Vec<u64>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl Arena {
    pub fn new(layout: Layout) -> Self {
        Arena {
            layout,
            data: Vec::new(),
            hashes: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.hashes.len()
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[i32] {
        let s = self.layout.stride;
        &self.data[i * s..(i + 1) * s]
    }

    #[inline]
    pub fn hash(&self, e: &[i32]) -> u64 {
        self.hasher.hash_one(e)
    }

    #[inline]
    pub fn find_hashed(&self, e: &[i32], h: u64) -> Option<u32> {
        self.table.find(h, |&i| self.get(i as usize) == e).copied()
    }

    pub fn find(&self, e: &[i32]) -> Option<u32> {
        self.find_hashed(e, self.hash(e))
    }

    pub fn push(&mut self, e: &[i32], h: u64) -> u32 {
        let idx = self.hashes.len() as u32;
        self.data.extend_from_slice(e);
        self.hashes.push(h);
        let hashes = &self.hashes;
        self.table.insert_unique(h, idx, |&i| hashes[i as usize]);
        idx
    }
}

pub(crate) struct Closure {
    pub arena: Arena,
    /// `left[x * ngens + g]` is the index of `gen_g * x`.
    pub left: Vec<u32>,
    pub parent: Vec<u32>,
    pub parent_gen: Vec<u16>,
}

pub(crate) fn close(layout: Layout, gens: &[Sparse], cap: usize) -> Result<Closure, GroupError> {
    let ng = gens.len();
    let stride = layout.stride;
    let mut arena = Arena::new(layout);
    let id = arena.layout.identity();
    let h = arena.hash(&id);
    arena.push(&id, h);
    let mut left: Vec<u32> = Vec::new();
    let mut parent = vec![0u32];
    let mut parent_gen = vec![u16::MAX];
    let mut cursor = 0usize;
    let mut buf: Vec<i32> = Vec::new();
    let mut found: Vec<(u64, Option<u32>)> = Vec::new();
    while cursor < arena.len() {
        let end = arena.len().min(cursor + CHUNK);
        let count = (end - cursor) * ng;
        buf.resize(count * stride, 0);
        found.resize(count, (0, None));
        {
            let a = &arena;
            buf.par_chunks_mut(stride).zip(found.par_iter_mut()).enumerate().try_for_each_init(
                || Scratch::new(&a.layout),
                |s, (k, (out, slot))| {
                    let x = cursor + k / ng;
                    left_mul(&a.layout, &gens[k % ng], a.get(x), out, s)?;
                    let h = a.hash(out);
                    *slot = (h, a.find_hashed(out, h));
                    Ok::<(), GroupError>(())
                },
            )?;
        }
        left.reserve(count);
        for k in 0..count {
            let (h, hit) = found[k];
            let y = match hit {
                Some(y) => y,
                None => {
                    let e = &buf[k * stride..(k + 1) * stride];
                    match arena.find_hashed(e, h) {
                        Some(y) => y,
                        None => {
                            if arena.len() >= cap {
                                return Err(GroupError::ClosureExceedsCap(cap));
                            }
                            parent.push((cursor + k / ng) as u32);
                            parent_gen.push((k % ng) as u16);
                            arena.push(e, h)
                        }
                    }
                }
            };
            left.push(y);
        }
        cursor = end;
    }
    Ok(Closure { arena, left, parent, parent_gen })
}

/// `table[x]` is the index of `x * g` for every element `x`.
pub(crate) fn right_table(arena: &Arena, g: &Sparse) -> Result<Vec<u32>, GroupError> {
    let l = &arena.layout;
    (0..arena.len())
        .into_par_iter()
        .map_init(
            || (Scratch::new(l), vec![0i32; l.stride]),
            |(s, out), x| {
                right_mul(l, arena.get(x), g, out, s)?;
                arena.find(out).ok_or(GroupError::NotClosed)
            },
        )
        .collect()
}
