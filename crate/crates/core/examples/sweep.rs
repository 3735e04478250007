//! Parameter sweep through the CLI entry point. The same call from a shell:
//!
//! ```text
//! ws-spectra sweep --variant pt --beta 0.5:4:8 --gamma 0,0.1 --n-max 2 --format csv
//! ```

fn main() {
    let args = [
        "ws-spectra",
        "sweep",
        "--variant",
        "pt",
        "--beta",
        "0.5:4:8",
        "--gamma",
        "0,0.1",
        "--n-max",
        "2",
        "--format",
        "csv",
    ];
    std::process::exit(ws_spectra::cli::run(args));
}
