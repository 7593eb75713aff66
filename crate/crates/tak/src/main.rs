fn main() {
    std::process::exit(tak::cli::run(std::env::args_os()));
}
