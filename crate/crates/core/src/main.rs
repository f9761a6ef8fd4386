fn main() {
    std::process::exit(meandist::cli::run(std::env::args_os()));
}
