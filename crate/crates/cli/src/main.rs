fn main() {
    let code = stochwave_cli::run(
        std::env::args_os(),
        std::env::var(stochwave_cli::SEED_ENV).ok(),
    );
    std::process::exit(code);
}
