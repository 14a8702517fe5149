use std::io;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = spinsolve_cli::run(
        &argv,
        io::stdin().lock(),
        io::stdout().lock(),
        io::stderr().lock(),
    );
    std::process::exit(code);
}
