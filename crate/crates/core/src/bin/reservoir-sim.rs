fn main() {
    std::process::exit(reservoir_entanglement::cli::cli_main(std::env::args_os()));
}
