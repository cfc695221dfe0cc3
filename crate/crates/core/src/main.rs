fn main() {
    std::process::exit(geophase::cli::run(std::env::args_os()));
}
