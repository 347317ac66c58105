fn main() {
    std::process::exit(leo_core::cli::main_with(std::env::args_os()));
}
