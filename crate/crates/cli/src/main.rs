fn main() {
    std::process::exit(qlem_cli::run(std::env::args_os()));
}
