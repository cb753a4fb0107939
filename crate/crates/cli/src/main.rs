fn main() {
    std::process::exit(lm_shotgun_cli::run(std::env::args_os()));
}
