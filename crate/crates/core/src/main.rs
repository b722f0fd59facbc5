fn main() {
    std::process::exit(tilepot::cli::run(std::env::args_os()));
}
