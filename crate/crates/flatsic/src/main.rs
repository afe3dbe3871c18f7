fn main() {
    std::process::exit(flatsic::cli::run(std::env::args_os()));
}
