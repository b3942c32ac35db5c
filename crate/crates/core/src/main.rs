fn main() {
    std::process::exit(qcopy::cli::run(std::env::args_os()));
}
