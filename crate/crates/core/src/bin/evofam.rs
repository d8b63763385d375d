fn main() {
    std::process::exit(evofam::cli::run(std::env::args_os()));
}
