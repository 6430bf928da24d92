fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (code, out) = cubic_mirror::cli::dispatch(&args);
    print!("{out}");
    std::process::exit(code);
}
