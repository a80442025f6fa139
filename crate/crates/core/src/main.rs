fn main() {
    std::process::exit(etf::cli::run(std::env::args_os()));
}
