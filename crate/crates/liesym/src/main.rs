fn main() {
    std::process::exit(liesym::cli::run_cli(std::env::args()));
}
