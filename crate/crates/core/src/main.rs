fn main() {
    std::process::exit(ws_spectra::cli::run(std::env::args_os()));
}
