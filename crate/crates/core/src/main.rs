fn main() {
    std::process::exit(randsurf::cli::run(std::env::args_os()));
}
