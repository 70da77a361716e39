use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::{ThreadPool, ThreadPoolBuilder};

/// Environment variable capping the number of worker threads.
pub const MAX_THREADS_ENV: &str = "SIMPLEX_MAX_THREADS";

/// Thread cap from [`MAX_THREADS_ENV`], if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(MAX_THREADS_ENV).ok()?.trim().parse().ok().filter(|&c| c > 0)
}

fn pools() -> &'static Mutex<HashMap<usize, Arc<ThreadPool>>> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    POOLS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Pool backing `k` logical workers. Pools are built once per thread count.
pub(crate) fn pool_for(k: usize) -> Arc<ThreadPool> {
    let threads = match thread_cap() {
        Some(cap) => k.clamp(1, cap),
        None => k.max(1),
    };
    let mut map = pools().lock().unwrap_or_else(|e| e.into_inner());
    map.entry(threads)
        .or_insert_with(|| {
            Arc::new(
                ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .thread_name(move |i| format!("simplex-{threads}-{i}"))
                    .build()
                    .expect("failed to build worker pool"),
            )
        })
        .clone()
}

/// Run `op` inside the pool for `k` workers.
pub(crate) fn install<R: Send>(k: usize, op: impl FnOnce() -> R + Send) -> R {
    pool_for(k).install(op)
}
