fn main() {
    std::process::exit(binact::cli::run(std::env::args_os()));
}
