//! Multi-threaded sweeps.
//!
//! The configuration space splits by the first element of the reading
//! order; workers pull partitions from a shared counter and the parts are
//! merged in partition order, so the record (including which configuration
//! is reported as argmin/argmax) does not depend on scheduling.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use grasstope_core::census::{
    check_budget, merge, sweep_partition, CensusRecord, SweepOptions, TopeSet,
};
use grasstope_core::matroid::Chirotope;
use grasstope_core::Result;

pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

pub fn sweep_topes(
    topes: &TopeSet,
    options: &SweepOptions,
    threads: usize,
) -> Result<CensusRecord> {
    let n = topes.n();
    check_budget(n, options)?;
    let workers = threads.clamp(1, n.max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<CensusRecord>>>> =
        Mutex::new((0..n).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let first = next.fetch_add(1, Ordering::Relaxed);
                if first >= n {
                    break;
                }
                let part = sweep_partition(topes, first, options);
                slots.lock().expect("no worker panicked")[first] = Some(part);
            });
        }
    });
    let parts = slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|p| p.expect("every partition ran"))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(parts).expect("at least one partition"))
}

pub fn sweep(c: &Chirotope, options: &SweepOptions, threads: usize) -> Result<CensusRecord> {
    sweep_topes(&TopeSet::from_chirotope(c)?, options, threads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use grasstope_core::census;

    #[test]
    fn matches_the_sequential_sweep() {
        let c = Chirotope::alternating(3, 6).unwrap();
        let options = SweepOptions {
            record_all: true,
            ..SweepOptions::default()
        };
        let serial = census::sweep(&c, &options).unwrap();
        for threads in [1, 2, 3, 8] {
            assert_eq!(
                sweep(&c, &options, threads).unwrap(),
                serial,
                "{threads} threads"
            );
        }
        assert_eq!((serial.min, serial.max), (10, 16));
    }

    #[test]
    fn budget_is_checked_before_spawning() {
        let c = Chirotope::alternating(3, 8).unwrap();
        assert!(sweep(&c, &SweepOptions::default(), 4).is_err());
    }
}
