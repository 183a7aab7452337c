use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use super::Matrix;
use crate::multiindex::MultiIndex;

pub const DEFAULT_CACHE_BUDGET: usize = 100_000;

struct Slot<S> {
    matrix: Arc<Matrix<S>>,
    last_used: AtomicU64,
}

/// Memo table `α ↦ T^α` shared by every evaluation on one tuple.
///
/// Readers take a shared lock; entries are inserted fully built under the
/// write lock, so a lookup never sees a partial matrix. Past `budget`
/// entries the least recently used tenth is evicted; the zero index is
/// never evicted.
pub struct MonomialCache<S> {
    slots: RwLock<HashMap<MultiIndex, Slot<S>>>,
    budget: usize,
    clock: AtomicU64,
}

impl<S> MonomialCache<S> {
    pub fn new(budget: usize) -> Self {
        MonomialCache {
            slots: RwLock::new(HashMap::new()),
            budget: budget.max(1),
            clock: AtomicU64::new(0),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.slots.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<Arc<Matrix<S>>> {
        let slots = self.slots.read().expect("cache lock poisoned");
        slots.get(alpha).map(|slot| {
            slot.last_used.store(self.tick(), Ordering::Relaxed);
            Arc::clone(&slot.matrix)
        })
    }

    /// Inserts `matrix` unless another thread got there first; returns the
    /// entry that ended up in the table.
    pub fn insert(&self, alpha: MultiIndex, matrix: Arc<Matrix<S>>) -> Arc<Matrix<S>> {
        let mut slots = self.slots.write().expect("cache lock poisoned");
        if let Some(slot) = slots.get(&alpha) {
            return Arc::clone(&slot.matrix);
        }
        if slots.len() >= self.budget {
            evict(&mut slots, self.budget);
        }
        let stamp = self.tick();
        slots.insert(alpha, Slot { matrix: Arc::clone(&matrix), last_used: AtomicU64::new(stamp) });
        matrix
    }

    fn tick(&self) -> u64 {
        self.clock.fetch_add(1, Ordering::Relaxed)
    }
}

fn evict<S>(slots: &mut HashMap<MultiIndex, Slot<S>>, budget: usize) {
    let drop_count = (budget / 10).max(1);
    let mut stamps: Vec<(u64, MultiIndex)> = slots
        .iter()
        .filter(|(k, _)| !k.is_zero())
        .map(|(k, s)| (s.last_used.load(Ordering::Relaxed), k.clone()))
        .collect();
    stamps.sort();
    for (_, k) in stamps.into_iter().take(drop_count) {
        slots.remove(&k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn evicts_least_recently_used() {
        let cache: MonomialCache<f64> = MonomialCache::new(3);
        let m = Arc::new(Matrix::<f64>::identity(1));
        cache.insert(mi(&[0]), Arc::clone(&m));
        cache.insert(mi(&[1]), Arc::clone(&m));
        cache.insert(mi(&[2]), Arc::clone(&m));
        cache.get(&mi(&[1]));
        cache.insert(mi(&[3]), Arc::clone(&m));
        assert_eq!(cache.len(), 3);
        assert!(cache.get(&mi(&[0])).is_some(), "zero index is pinned");
        assert!(cache.get(&mi(&[2])).is_none());
        assert!(cache.get(&mi(&[1])).is_some());
    }

    #[test]
    fn first_insert_wins() {
        let cache: MonomialCache<f64> = MonomialCache::new(10);
        let a = Arc::new(Matrix::<f64>::identity(2));
        let b = Arc::new(Matrix::<f64>::zeros(2, 2));
        cache.insert(mi(&[1, 0]), a);
        let kept = cache.insert(mi(&[1, 0]), b);
        assert!(!kept.is_zero());
    }
}
