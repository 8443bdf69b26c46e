fn main() {
    std::process::exit(twoit::cli::run(std::env::args_os()));
}
