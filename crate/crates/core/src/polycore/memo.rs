use std::collections::HashMap;
use std::sync::atomic::{AtomicI64, AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

const DENSE_LIMIT: usize = 12;
const UNSET: i64 = i64::MIN;

/// Per-oracle value cache. Dense for small ground sets, a locked map otherwise.
/// Values are computed outside any lock; a race only duplicates work.
pub(crate) struct Memo {
    n: usize,
    dense: OnceLock<Box<[AtomicI64]>>,
    sparse: Mutex<HashMap<u64, i64>>,
    queries: AtomicU64,
}

impl Memo {
    pub(crate) fn new(n: usize) -> Memo {
        Memo {
            n,
            dense: OnceLock::new(),
            sparse: Mutex::new(HashMap::new()),
            queries: AtomicU64::new(0),
        }
    }

    pub(crate) fn get_or(&self, key: u64, compute: impl FnOnce() -> i64) -> i64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        if self.n <= DENSE_LIMIT {
            let table = self
                .dense
                .get_or_init(|| (0..1usize << self.n).map(|_| AtomicI64::new(UNSET)).collect());
            let slot = &table[key as usize];
            let v = slot.load(Ordering::Relaxed);
            if v != UNSET {
                return v;
            }
            let v = compute();
            slot.store(v, Ordering::Relaxed);
            v
        } else {
            if let Some(&v) = self.sparse.lock().expect("memo lock poisoned").get(&key) {
                return v;
            }
            let v = compute();
            self.sparse.lock().expect("memo lock poisoned").insert(key, v);
            v
        }
    }

    pub(crate) fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}
