fn main() {
    std::process::exit(tailsurf::cli::main_with_args(std::env::args_os()));
}
