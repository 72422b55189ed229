fn main() {
    // Deeply nested corpus terms need more stack than the default main thread.
    let child = std::thread::Builder::new()
        .stack_size(512 * 1024 * 1024)
        .spawn(|| {
            let args: Vec<String> = std::env::args().collect();
            let mut out = std::io::stdout();
            wkernel::cli::run(&args, &mut out)
        })
        .expect("spawn main thread");
    let code = child.join().unwrap_or(101);
    std::process::exit(code);
}
