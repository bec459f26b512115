use critset_core::optimize::Executor;

/// Runs work units on up to `workers` scoped threads, each taking one
/// contiguous block of units. Results come back in unit order.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    workers: usize,
}

impl Threaded {
    pub fn new(workers: usize) -> Self {
        Threaded {
            workers: workers.max(1),
        }
    }
}

impl Executor for Threaded {
    fn map<T, F>(&self, units: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        if self.workers == 1 || units <= 1 {
            return (0..units).map(f).collect();
        }
        let block = units.div_ceil(self.workers);
        let f = &f;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..units)
                .step_by(block)
                .map(|start| {
                    let end = (start + block).min(units);
                    scope.spawn(move || (start..end).map(f).collect::<Vec<T>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker thread panicked"))
                .collect()
        })
    }
}
