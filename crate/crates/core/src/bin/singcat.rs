fn main() {
    let (code, out) = singcat::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
