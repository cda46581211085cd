fn main() {
    std::process::exit(ncbound::cli::run(std::env::args_os()));
}
