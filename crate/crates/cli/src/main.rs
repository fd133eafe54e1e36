fn main() {
    std::process::exit(radial_bm_cli::run(std::env::args_os()));
}
