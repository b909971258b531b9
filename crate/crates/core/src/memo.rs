use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Thread-safe cache of pure computations. Values are computed outside the lock, so
/// recursive lookups are fine; a racing duplicate computation just overwrites an equal value.
pub(crate) struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K: Hash + Eq + Clone, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo(RwLock::new(HashMap::new()))
    }

    pub(crate) fn get_or(&self, k: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.0.read().expect("memo lock").get(k) {
            return v.clone();
        }
        let v = f();
        self.0.write().expect("memo lock").insert(k.clone(), v.clone());
        v
    }
}
