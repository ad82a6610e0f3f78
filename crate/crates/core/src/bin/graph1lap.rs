fn main() {
    std::process::exit(graph1lap::cli::main_with(std::env::args_os()));
}
