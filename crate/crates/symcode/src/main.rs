use std::io::Write;

fn main() {
    let mut out = std::io::stdout().lock();
    let code = symcode::cli::run(std::env::args(), &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
