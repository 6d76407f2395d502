fn main() {
    std::process::exit(heun_ghf_cli::run(std::env::args_os()));
}
