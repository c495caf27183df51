fn main() {
    env_logger::init();
    let code = arcrystal::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
