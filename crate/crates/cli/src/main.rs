use std::io::Write;

fn main() {
    let (code, text) = qadhm_cli::main_with_args(std::env::args_os());
    let _ = writeln!(std::io::stdout(), "{text}");
    std::process::exit(code);
}
