fn main() {
    let outcome = matroid_charset_cli::run(std::env::args());
    if let Err(e) = outcome.emit() {
        eprintln!("cannot write output: {e}");
        std::process::exit(2);
    }
    std::process::exit(outcome.exit_code);
}
