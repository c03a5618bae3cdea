fn main() {
    env_logger::init();
    let code = kmetric_cli::main_with(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
