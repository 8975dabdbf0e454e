fn main() {
    env_logger::init();
    std::process::exit(coauthnet::cli::run(std::env::args_os()));
}
