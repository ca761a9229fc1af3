fn main() {
    std::process::exit(synalg::cli::run(std::env::args_os()));
}
