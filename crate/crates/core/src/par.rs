//! Data-parallel helpers. With the `parallel` feature (default) these run on
//! the rayon pool; without it, or with `Exec::Sequential`, they run inline.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// Order-preserving flat map.
pub fn flat_map<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Vec<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().flat_map_iter(f).collect();
    }
    let _ = exec;
    items.into_iter().flat_map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Exec::Parallel, xs.clone(), |x| x * x);
        let b = map(Exec::Sequential, xs.clone(), |x| x * x);
        assert_eq!(a, b);
        let c = flat_map(Exec::Parallel, xs.clone(), |x| vec![x; (x % 3) as usize]);
        let d = flat_map(Exec::Sequential, xs, |x| vec![x; (x % 3) as usize]);
        assert_eq!(c, d);
    }
}
