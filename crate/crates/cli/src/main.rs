use std::io::Write;

fn main() {
    if let Some(threads) = std::env::var("FINTOP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Ignore the error if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = fintop_cli::run(std::env::args_os(), &mut std::io::stdin(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
