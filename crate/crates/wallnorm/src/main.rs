use std::io::Write;

fn main() {
    let max_enum = std::env::var(wallnorm::cli::MAX_ENUM_VAR).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = wallnorm::cli::run(std::env::args_os(), max_enum.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
