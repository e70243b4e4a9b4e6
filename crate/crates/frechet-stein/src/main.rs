fn main() {
    std::process::exit(frechet_stein::cli::run(std::env::args_os()));
}
