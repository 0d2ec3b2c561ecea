fn main() {
    std::process::exit(benney::cli::cli_main(std::env::args_os()));
}
