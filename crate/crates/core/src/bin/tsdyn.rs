fn main() {
    std::process::exit(tsdyn::cli::main_with_args(std::env::args_os()));
}
