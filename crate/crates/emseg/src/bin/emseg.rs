fn main() {
    let mut out = std::io::stdout();
    let code = emseg::cli::run_with(std::env::args_os(), &mut out);
    std::process::exit(code);
}
