fn main() {
    std::process::exit(quatmodp::cli::run(std::env::args_os()));
}
