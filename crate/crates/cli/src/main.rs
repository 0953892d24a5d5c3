use std::io::Write;

fn main() {
    let result = lcy_cli::run(std::env::args_os());
    let out = result.render();
    if !out.is_empty() {
        // A closed pipe (e.g. `lcy ... | head`) is not an error worth reporting.
        let _ = writeln!(std::io::stdout().lock(), "{}", out.trim_end());
    }
    std::process::exit(result.exit_code);
}
