//! Serial or thread-pool execution for range scans and enumeration.
//!
//! Work is split into fixed-size chunks and merged in input order, so the
//! result never depends on the thread count.

use rayon::prelude::*;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "AVOID_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Serial,
    Parallel {
        threads: usize,
    },
}

impl Exec {
    pub fn parallel(threads: usize) -> Exec {
        if threads <= 1 {
            Exec::Serial
        } else {
            Exec::Parallel { threads }
        }
    }

    /// `AVOID_THREADS` if set and valid, otherwise the machine's parallelism.
    pub fn from_env() -> Exec {
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            });
        Exec::parallel(threads)
    }

    pub fn threads(&self) -> usize {
        match self {
            Exec::Serial => 1,
            Exec::Parallel { threads } => *threads,
        }
    }

    /// Apply `f` to every item, preserving order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Serial => items.iter().map(f).collect(),
            Exec::Parallel { threads } => pool(*threads).install(|| {
                items
                    .par_chunks(chunk_len(items.len(), *threads))
                    .map(|chunk| chunk.iter().map(&f).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }),
        }
    }

    /// Apply `f` to every integer of `lo..=hi`, preserving order.
    pub fn map_range<R, F>(&self, lo: u64, hi: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        if lo > hi {
            return Vec::new();
        }
        match self {
            Exec::Serial => (lo..=hi).map(f).collect(),
            Exec::Parallel { threads } => {
                let len = hi - lo + 1;
                let chunk = chunk_len(len as usize, *threads) as u64;
                let starts: Vec<u64> = (0..len.div_ceil(chunk)).map(|i| lo + i * chunk).collect();
                pool(*threads).install(|| {
                    starts
                        .par_iter()
                        .map(|&start| {
                            let end = (start + chunk - 1).min(hi);
                            (start..=end).map(&f).collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>()
                        .into_iter()
                        .flatten()
                        .collect()
                })
            }
        }
    }
}

fn chunk_len(len: usize, threads: usize) -> usize {
    // a few chunks per worker for balance
    len.div_ceil(threads * 4).max(1)
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}
