/// Runs `f` on a thread with a large stack; the recursive searches in the
/// decomposition can go as deep as the vertex count.
#[cfg(not(target_arch = "wasm32"))]
pub fn run_with_stack<T: Send, F: FnOnce() -> T + Send>(f: F) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 30)
            .spawn_scoped(s, f)
            .expect("spawn worker thread")
            .join()
            .expect("worker thread panicked")
    })
}

#[cfg(target_arch = "wasm32")]
pub fn run_with_stack<T, F: FnOnce() -> T>(f: F) -> T {
    f()
}
