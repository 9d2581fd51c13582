//! Index-ordered map over independent work items. With the `parallel`
//! feature the work fans out over rayon; results always come back in input
//! order, so callers see identical output either way.

#[cfg(feature = "parallel")]
pub fn map_indexed<U, F>(count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U, F>(count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..count).map(f).collect()
}

/// True when this build dispatches work over rayon.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
